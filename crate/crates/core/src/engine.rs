//! Scenario evaluation: aggregate interference, SINR, distance sweeps and
//! minimum separation distance.
//!
//! Every function here is pure. A [`Scenario`] fixes everything except the
//! ES-to-UE distance, so SINR is a scalar function of distance that rises
//! monotonically toward the interference-free ceiling `rsrp - noise`.

use std::num::NonZeroU32;

use crate::error::{Error, Result};
use crate::linkbudget::{
    es_eirp_dbm, fspl_db, fspl_distance_m, thermal_noise_dbm, CarrierSpec, EsClass, Lobe,
};
use crate::parallel;
use crate::rfmath::{apply_loss, dbm_to_mw, mw_to_dbm, PowerDbm, PowerMilliwatt, PowerRatioDb};

/// Lower edge of the bisection bracket, m.
pub const BISECTION_MIN_M: f64 = 1.0e-3;
/// Upper edge of the bisection bracket, m.
pub const BISECTION_MAX_M: f64 = 1.0e7;
/// Bisection stops once the bracket is narrower than this, m.
pub const BISECTION_WIDTH_M: f64 = 1.0e-3;
pub const BISECTION_MAX_ITER: usize = 200;

/// The 5G UE receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VictimUe {
    rsrp: PowerDbm,
    noise_temperature_k: f64,
    noise_figure: PowerRatioDb,
}

impl VictimUe {
    pub fn new(rsrp: PowerDbm, noise_temperature_k: f64, noise_figure: PowerRatioDb) -> Result<Self> {
        if !rsrp.value().is_finite() {
            return Err(Error::Domain(format!("RSRP {} must be finite", rsrp.value())));
        }
        if !(noise_temperature_k > 0.0 && noise_temperature_k.is_finite()) {
            return Err(Error::Domain(format!(
                "noise temperature {noise_temperature_k} K must be > 0"
            )));
        }
        if !noise_figure.value().is_finite() {
            return Err(Error::Domain("noise figure must be finite".into()));
        }
        Ok(Self { rsrp, noise_temperature_k, noise_figure })
    }

    pub fn rsrp(&self) -> PowerDbm {
        self.rsrp
    }

    pub fn noise_temperature_k(&self) -> f64 {
        self.noise_temperature_k
    }

    pub fn noise_figure(&self) -> PowerRatioDb {
        self.noise_figure
    }
}

impl Default for VictimUe {
    /// -80 dBm RSRP, 290 K, 0 dB noise figure.
    fn default() -> Self {
        Self {
            rsrp: PowerDbm::new(-80.0),
            noise_temperature_k: 290.0,
            noise_figure: PowerRatioDb::ZERO,
        }
    }
}

/// A group of `count` identical earth stations, all at the same distance
/// from the victim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EsEmitter {
    pub class: EsClass,
    pub lobe: Lobe,
    pub count: NonZeroU32,
}

impl EsEmitter {
    pub fn new(class: EsClass, lobe: Lobe, count: u32) -> Result<Self> {
        let count = NonZeroU32::new(count)
            .ok_or_else(|| Error::Argument("emitter count must be at least 1".into()))?;
        Ok(Self { class, lobe, count })
    }

    pub fn single(class: EsClass, lobe: Lobe) -> Self {
        Self { class, lobe, count: NonZeroU32::MIN }
    }

    /// Aggregation gain `10·log10(count)` for identical equidistant emitters.
    pub fn aggregation_gain(&self) -> PowerRatioDb {
        PowerRatioDb::new(10.0 * f64::from(self.count.get()).log10())
    }
}

impl Default for EsEmitter {
    fn default() -> Self {
        Self::single(EsClass::Class1, Lobe::Mainlobe)
    }
}

/// One victim, one emitter group and a carrier.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Scenario {
    pub victim: VictimUe,
    pub emitter: EsEmitter,
    pub carrier: CarrierSpec,
}

impl Scenario {
    pub fn new(victim: VictimUe, emitter: EsEmitter, carrier: CarrierSpec) -> Self {
        Self { victim, emitter, carrier }
    }

    pub fn with_emitter(mut self, emitter: EsEmitter) -> Self {
        self.emitter = emitter;
        self
    }

    pub fn noise_dbm(&self) -> Result<PowerDbm> {
        thermal_noise_dbm(&self.carrier, self.victim.noise_temperature_k, self.victim.noise_figure)
    }

    /// In-band EIRP summed over all emitters in the group.
    pub fn total_eirp_dbm(&self) -> PowerDbm {
        es_eirp_dbm(self.emitter.class, self.emitter.lobe, &self.carrier) + self.emitter.aggregation_gain()
    }

    /// Interference-free SINR, `rsrp - noise`.
    pub fn snr_ceiling(&self) -> Result<PowerRatioDb> {
        Ok(self.victim.rsrp.ratio_to(self.noise_dbm()?))
    }
}

/// Aggregate interference power at the victim.
pub fn interference_dbm(scenario: &Scenario, distance_m: f64) -> Result<PowerDbm> {
    let loss = fspl_db(distance_m, scenario.carrier.frequency_hz())?;
    Ok(apply_loss(scenario.total_eirp_dbm(), loss))
}

/// SINR at the victim, with interference and noise summed in milliwatts.
pub fn sinr_db(scenario: &Scenario, distance_m: f64) -> Result<PowerRatioDb> {
    let interference = interference_dbm(scenario, distance_m)?;
    let noise = scenario.noise_dbm()?;
    let denominator = mw_to_dbm(dbm_to_mw(interference) + dbm_to_mw(noise))?;
    Ok(scenario.victim.rsrp.ratio_to(denominator))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSample {
    pub distance_m: f64,
    pub sinr: PowerRatioDb,
}

/// SINR sampled along an increasing distance grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSeries {
    pub scenario: Scenario,
    pub samples: Vec<SweepSample>,
}

impl SweepSeries {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// `d_start, d_start + step, ...` up to `d_stop`, with `d_stop` appended
/// when the grid does not land on it.
pub fn distance_grid(d_start: f64, d_stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(d_start > 0.0 && d_start.is_finite()) {
        return Err(Error::Argument(format!("d_start {d_start} must be > 0")));
    }
    if !(d_stop > d_start && d_stop.is_finite()) {
        return Err(Error::Argument(format!("d_stop {d_stop} must exceed d_start {d_start}")));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Argument(format!("step {step} must be > 0")));
    }
    let span = (d_stop - d_start) / step;
    // absorb rounding so 1..5 step 1 yields exactly five points
    let n = (span + 1e-9).floor() as usize;
    let tol = step * 1e-9;
    let mut grid: Vec<f64> = (0..=n)
        .map(|i| d_start + i as f64 * step)
        .filter(|&d| d < d_stop - tol)
        .collect();
    grid.push(d_stop);
    Ok(grid)
}

fn sample(scenario: &Scenario, distance_m: f64) -> Result<SweepSample> {
    Ok(SweepSample { distance_m, sinr: sinr_db(scenario, distance_m)? })
}

/// Sweep on the current thread.
pub fn sweep_sequential(scenario: &Scenario, d_start: f64, d_stop: f64, step: f64) -> Result<SweepSeries> {
    let grid = distance_grid(d_start, d_stop, step)?;
    let samples = grid.iter().map(|&d| sample(scenario, d)).collect::<Result<Vec<_>>>()?;
    Ok(SweepSeries { scenario: *scenario, samples })
}

/// Sweep with grid points evaluated across the rayon pool. Output order
/// matches the grid.
#[cfg(feature = "parallel")]
pub fn sweep_parallel(scenario: &Scenario, d_start: f64, d_stop: f64, step: f64) -> Result<SweepSeries> {
    use rayon::prelude::*;
    let grid = distance_grid(d_start, d_stop, step)?;
    let samples = grid.par_iter().map(|&d| sample(scenario, d)).collect::<Result<Vec<_>>>()?;
    Ok(SweepSeries { scenario: *scenario, samples })
}

/// Sweep SINR over `[d_start, d_stop]`. Parallel when the `parallel`
/// feature is enabled; results are identical either way.
pub fn sweep(scenario: &Scenario, d_start: f64, d_stop: f64, step: f64) -> Result<SweepSeries> {
    #[cfg(feature = "parallel")]
    {
        sweep_parallel(scenario, d_start, d_stop, step)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sweep_sequential(scenario, d_start, d_stop, step)
    }
}

/// Minimum ES-to-UE distance meeting a SINR threshold.
///
/// `distance_m` is infinite when `attainable` is false.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationResult {
    pub distance_m: f64,
    pub threshold: PowerRatioDb,
    pub attainable: bool,
}

impl SeparationResult {
    fn unattainable(threshold: PowerRatioDb) -> Self {
        Self { distance_m: f64::INFINITY, threshold, attainable: false }
    }

    pub fn distance(&self) -> Option<f64> {
        self.attainable.then_some(self.distance_m)
    }
}

/// Closed-form separation distance.
///
/// The largest tolerable interference is `S / threshold - N` (linear); the
/// distance follows by inverting free-space loss from the total EIRP down to
/// that level. No distance suffices when the threshold is at or above the
/// interference-free ceiling.
pub fn separation_distance(scenario: &Scenario, threshold: PowerRatioDb) -> Result<SeparationResult> {
    let noise = scenario.noise_dbm()?;
    if scenario.victim.rsrp.ratio_to(noise) <= threshold {
        return Ok(SeparationResult::unattainable(threshold));
    }
    let i_max = dbm_to_mw(scenario.victim.rsrp).value() / threshold.to_linear() - dbm_to_mw(noise).value();
    if !(i_max > 0.0) {
        return Ok(SeparationResult::unattainable(threshold));
    }
    let i_max_dbm = mw_to_dbm(PowerMilliwatt::new(i_max)?)?;
    let loss = scenario.total_eirp_dbm().ratio_to(i_max_dbm);
    let distance_m = fspl_distance_m(loss, scenario.carrier.frequency_hz())?;
    Ok(SeparationResult { distance_m, threshold, attainable: true })
}

/// Separation distance by bisection on [`sinr_db`] over
/// `[BISECTION_MIN_M, BISECTION_MAX_M]`.
///
/// Serves as an independent check on [`separation_distance`]. Reports
/// unattainable when the threshold is not met even at the far edge of the
/// bracket, and returns the near edge when it is already met there.
pub fn bisect_separation(scenario: &Scenario, threshold: PowerRatioDb) -> Result<SeparationResult> {
    let meets = |d: f64| -> Result<bool> { Ok(sinr_db(scenario, d)? >= threshold) };
    let (mut lo, mut hi) = (BISECTION_MIN_M, BISECTION_MAX_M);
    if !meets(hi)? {
        return Ok(SeparationResult::unattainable(threshold));
    }
    if meets(lo)? {
        return Ok(SeparationResult { distance_m: lo, threshold, attainable: true });
    }
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= BISECTION_WIDTH_M {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if meets(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(SeparationResult { distance_m: 0.5 * (lo + hi), threshold, attainable: true })
}

/// One cell of a class × lobe separation table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationCell {
    pub class: EsClass,
    pub lobe: Lobe,
    pub result: SeparationResult,
}

/// Separation distances for every class and lobe, with the victim, count
/// and carrier of `base`. Rows are ordered class-major, mainlobe first.
pub fn separation_table(base: &Scenario, threshold: PowerRatioDb) -> Result<Vec<SeparationCell>> {
    let cells: Vec<(EsClass, Lobe)> = EsClass::ALL
        .iter()
        .flat_map(|&c| Lobe::ALL.iter().map(move |&l| (c, l)))
        .collect();
    parallel::map(&cells, |&(class, lobe)| {
        let scenario = base.with_emitter(EsEmitter { class, lobe, count: base.emitter.count });
        Ok(SeparationCell { class, lobe, result: separation_distance(&scenario, threshold)? })
    })
    .into_iter()
    .collect()
}
