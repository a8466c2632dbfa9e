//! Free-space path loss, thermal noise and the earth-station EIRP classes.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rfmath::{PowerDbm, PowerRatioDb};

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Boltzmann constant, J/K (exact since the 2019 SI redefinition).
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Sidelobe attenuation relative to the mainlobe.
pub const SIDELOBE_ATTENUATION: PowerRatioDb = PowerRatioDb::new(30.0);

const REFERENCE_BANDWIDTH_HZ: f64 = 1.0e9;

/// FSS earth-station EIRP class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EsClass {
    Class1,
    Class2,
    Class3,
}

impl EsClass {
    pub const ALL: [EsClass; 3] = [EsClass::Class1, EsClass::Class2, EsClass::Class3];

    /// Mainlobe EIRP density in dBm/GHz.
    pub fn mainlobe_density_dbm_per_ghz(self) -> f64 {
        match self {
            EsClass::Class1 => 42.2,
            EsClass::Class2 => 54.1,
            EsClass::Class3 => 78.0,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            EsClass::Class1 => 1,
            EsClass::Class2 => 2,
            EsClass::Class3 => 3,
        }
    }
}

impl fmt::Display for EsClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Class {}", self.number())
    }
}

impl FromStr for EsClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(EsClass::Class1),
            "2" => Ok(EsClass::Class2),
            "3" => Ok(EsClass::Class3),
            other => Err(Error::Argument(format!("unknown ES class {other:?}, expected 1, 2 or 3"))),
        }
    }
}

/// Which part of the ES antenna pattern points at the victim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lobe {
    Mainlobe,
    Sidelobe,
}

impl Lobe {
    pub const ALL: [Lobe; 2] = [Lobe::Mainlobe, Lobe::Sidelobe];

    /// Attenuation relative to the mainlobe.
    pub fn attenuation(self) -> PowerRatioDb {
        match self {
            Lobe::Mainlobe => PowerRatioDb::ZERO,
            Lobe::Sidelobe => SIDELOBE_ATTENUATION,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Lobe::Mainlobe => "mainlobe",
            Lobe::Sidelobe => "sidelobe",
        }
    }
}

impl fmt::Display for Lobe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lobe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mainlobe" => Ok(Lobe::Mainlobe),
            "sidelobe" => Ok(Lobe::Sidelobe),
            other => Err(Error::Argument(format!(
                "unknown lobe {other:?}, expected mainlobe or sidelobe"
            ))),
        }
    }
}

/// Carrier frequency and victim bandwidth, both in Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierSpec {
    frequency_hz: f64,
    bandwidth_hz: f64,
}

impl CarrierSpec {
    pub fn new(frequency_hz: f64, bandwidth_hz: f64) -> Result<Self> {
        if !(frequency_hz > 0.0 && frequency_hz.is_finite()) {
            return Err(Error::Domain(format!("carrier frequency {frequency_hz} Hz must be > 0")));
        }
        if !(bandwidth_hz > 0.0 && bandwidth_hz.is_finite()) {
            return Err(Error::Domain(format!("bandwidth {bandwidth_hz} Hz must be > 0")));
        }
        Ok(Self { frequency_hz, bandwidth_hz })
    }

    pub fn frequency_hz(&self) -> f64 {
        self.frequency_hz
    }

    pub fn bandwidth_hz(&self) -> f64 {
        self.bandwidth_hz
    }
}

impl Default for CarrierSpec {
    /// 28 GHz carrier, 1 GHz bandwidth.
    fn default() -> Self {
        Self { frequency_hz: 28.0e9, bandwidth_hz: 1.0e9 }
    }
}

/// Free-space path loss `20·log10(4π·d·f/c)`.
pub fn fspl_db(distance_m: f64, frequency_hz: f64) -> Result<PowerRatioDb> {
    if !(distance_m > 0.0) || !(frequency_hz > 0.0) {
        return Err(Error::Domain(format!(
            "FSPL undefined at or below zero (d = {distance_m} m, f = {frequency_hz} Hz)"
        )));
    }
    Ok(PowerRatioDb::new(
        20.0 * (4.0 * PI * distance_m * frequency_hz / SPEED_OF_LIGHT).log10(),
    ))
}

/// Distance at which free-space loss equals `loss`; the inverse of [`fspl_db`].
pub fn fspl_distance_m(loss: PowerRatioDb, frequency_hz: f64) -> Result<f64> {
    if !(frequency_hz > 0.0) {
        return Err(Error::Domain(format!("frequency {frequency_hz} Hz must be > 0")));
    }
    Ok(SPEED_OF_LIGHT / (4.0 * PI * frequency_hz) * 10f64.powf(loss.value() / 20.0))
}

/// Receiver noise floor `kTB` (referred to 1 mW) plus noise figure.
pub fn thermal_noise_dbm(
    carrier: &CarrierSpec,
    temperature_k: f64,
    noise_figure: PowerRatioDb,
) -> Result<PowerDbm> {
    if !(temperature_k > 0.0 && temperature_k.is_finite()) {
        return Err(Error::Domain(format!("noise temperature {temperature_k} K must be > 0")));
    }
    if !(carrier.bandwidth_hz > 0.0) {
        return Err(Error::Domain(format!("bandwidth {} Hz must be > 0", carrier.bandwidth_hz)));
    }
    let ktb_mw = BOLTZMANN * temperature_k * carrier.bandwidth_hz * 1.0e3;
    Ok(PowerDbm::new(10.0 * ktb_mw.log10()) + noise_figure)
}

/// Tabulated EIRP density in dBm/GHz for a class and lobe.
pub fn es_eirp_density_dbm_per_ghz(class: EsClass, lobe: Lobe) -> f64 {
    class.mainlobe_density_dbm_per_ghz() - lobe.attenuation().value()
}

/// Total EIRP falling in the victim bandwidth, treating the tabulated
/// figure as a flat density.
pub fn es_eirp_dbm(class: EsClass, lobe: Lobe, carrier: &CarrierSpec) -> PowerDbm {
    let density = es_eirp_density_dbm_per_ghz(class, lobe);
    if carrier.bandwidth_hz == REFERENCE_BANDWIDTH_HZ {
        return PowerDbm::new(density);
    }
    PowerDbm::new(density + 10.0 * (carrier.bandwidth_hz / REFERENCE_BANDWIDTH_HZ).log10())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const LOG2_20: f64 = 6.020_599_913_279_624;

    // 32.45 + 20log10(f_MHz) + 20log10(d_km) with the exact constant
    // 20log10(4π·1e9/c) in place of the rounded 32.45.
    fn fspl_oracle(d_m: f64, f_hz: f64) -> f64 {
        let k = 20.0 * (4.0 * PI * 1.0e3 * 1.0e6 / SPEED_OF_LIGHT).log10();
        k + 20.0 * (f_hz / 1.0e6).log10() + 20.0 * (d_m / 1.0e3).log10()
    }

    #[test]
    fn fspl_examples() {
        let l1 = fspl_db(1000.0, 28.0e9).unwrap().value();
        assert!((l1 - fspl_oracle(1000.0, 28.0e9)).abs() < 1e-9);
        assert!((l1 - 121.39).abs() < 0.005, "{l1}");

        let l2 = fspl_db(2000.0, 28.0e9).unwrap().value();
        assert!((l2 - 127.41).abs() < 0.005, "{l2}");
        assert!((l2 - l1 - LOG2_20).abs() < 1e-9);

        let f = 28.0e9;
        let unit = SPEED_OF_LIGHT / (4.0 * PI * f);
        assert!(fspl_db(unit, f).unwrap().value().abs() < 1e-9);
    }

    #[test]
    fn fspl_rejects_non_positive() {
        assert!(matches!(fspl_db(0.0, 28e9), Err(Error::Domain(_))));
        assert!(matches!(fspl_db(-1.0, 28e9), Err(Error::Domain(_))));
        assert!(matches!(fspl_db(10.0, 0.0), Err(Error::Domain(_))));
        assert!(fspl_db(f64::NAN, 28e9).is_err());
    }

    #[test]
    fn thermal_noise_examples() {
        let c1g = CarrierSpec::default();
        let c1 = CarrierSpec::new(28e9, 1.0).unwrap();
        // direct kTB: 1.380649e-23 * 290 = 4.00388e-21 W/Hz = 4.00388e-18 mW/Hz
        let per_hz = 10.0 * (1.380649e-23f64 * 290.0 / 1.0e-3).log10();
        assert!((per_hz + 173.975).abs() < 0.001);

        let n1 = thermal_noise_dbm(&c1, 290.0, PowerRatioDb::ZERO).unwrap().value();
        assert!((n1 - per_hz).abs() < 1e-9);
        assert!((n1 + 173.98).abs() < 0.01);

        let n = thermal_noise_dbm(&c1g, 290.0, PowerRatioDb::ZERO).unwrap().value();
        assert!((n - (per_hz + 90.0)).abs() < 1e-9);
        assert!((n + 83.98).abs() < 0.01);

        let n10 = thermal_noise_dbm(&c1g, 290.0, PowerRatioDb::new(10.0)).unwrap().value();
        assert!((n10 - n - 10.0).abs() < 1e-9);
        assert!((n10 + 73.98).abs() < 0.01);
    }

    #[test]
    fn thermal_noise_rejects_bad_temperature() {
        let c = CarrierSpec::default();
        assert!(thermal_noise_dbm(&c, 0.0, PowerRatioDb::ZERO).is_err());
        assert!(thermal_noise_dbm(&c, -10.0, PowerRatioDb::ZERO).is_err());
    }

    #[test]
    fn carrier_rejects_non_positive() {
        assert!(CarrierSpec::new(0.0, 1e9).is_err());
        assert!(CarrierSpec::new(28e9, 0.0).is_err());
        assert!(CarrierSpec::new(28e9, -1.0).is_err());
        let d = CarrierSpec::default();
        assert_eq!((d.frequency_hz(), d.bandwidth_hz()), (28.0e9, 1.0e9));
    }

    #[test]
    fn eirp_table_values() {
        let c = CarrierSpec::default();
        let expect = [
            (EsClass::Class1, 42.2, 12.2),
            (EsClass::Class2, 54.1, 24.1),
            (EsClass::Class3, 78.0, 48.0),
        ];
        for (class, main, side) in expect {
            assert_eq!(es_eirp_dbm(class, Lobe::Mainlobe, &c).value(), main);
            let s = es_eirp_dbm(class, Lobe::Sidelobe, &c).value();
            assert!((s - side).abs() < 1e-12, "{class}: {s}");
            assert_eq!(s, main - 30.0);
        }
    }

    #[test]
    fn eirp_scales_with_bandwidth() {
        let c = CarrierSpec::new(28e9, 100.0e6).unwrap();
        let e = es_eirp_dbm(EsClass::Class2, Lobe::Mainlobe, &c).value();
        assert!((e - (54.1 - 10.0)).abs() < 1e-9);
    }

    #[test]
    fn eirp_increases_across_classes() {
        let c = CarrierSpec::default();
        for lobe in Lobe::ALL {
            let v: Vec<f64> = EsClass::ALL.iter().map(|&k| es_eirp_dbm(k, lobe, &c).value()).collect();
            assert!(v[0] < v[1] && v[1] < v[2]);
        }
    }

    #[test]
    fn parse_class_and_lobe() {
        assert_eq!("3".parse::<EsClass>().unwrap(), EsClass::Class3);
        assert!("4".parse::<EsClass>().is_err());
        assert_eq!("Sidelobe".parse::<Lobe>().unwrap(), Lobe::Sidelobe);
        assert!("backlobe".parse::<Lobe>().is_err());
    }

    proptest! {
        #[test]
        fn fspl_doubling_distance(d in 1e-2f64..1e7, f in 1e8f64..1e11) {
            let diff = fspl_db(2.0 * d, f).unwrap().value() - fspl_db(d, f).unwrap().value();
            prop_assert!((diff - LOG2_20).abs() < 1e-9);
        }

        #[test]
        fn fspl_doubling_frequency(d in 1e-2f64..1e7, f in 1e8f64..1e11) {
            let diff = fspl_db(d, 2.0 * f).unwrap().value() - fspl_db(d, f).unwrap().value();
            prop_assert!((diff - LOG2_20).abs() < 1e-9);
        }

        #[test]
        fn fspl_inverse(d in 1e-3f64..1e7, f in 1e8f64..1e11) {
            let back = fspl_distance_m(fspl_db(d, f).unwrap(), f).unwrap();
            prop_assert!(((back - d) / d).abs() < 1e-12);
        }

        #[test]
        fn noise_per_decade_of_bandwidth(b in 1.0f64..1e10, nf in 0.0f64..20.0) {
            let c1 = CarrierSpec::new(28e9, b).unwrap();
            let c10 = CarrierSpec::new(28e9, 10.0 * b).unwrap();
            let n1 = thermal_noise_dbm(&c1, 290.0, PowerRatioDb::new(nf)).unwrap().value();
            let n10 = thermal_noise_dbm(&c10, 290.0, PowerRatioDb::new(nf)).unwrap().value();
            let n0 = thermal_noise_dbm(&c1, 290.0, PowerRatioDb::ZERO).unwrap().value();
            prop_assert!((n10 - n1 - 10.0).abs() < 1e-9);
            prop_assert!((n1 - n0 - nf).abs() < 1e-9);
        }

        #[test]
        fn sidelobe_is_thirty_below(b in 1e3f64..1e10) {
            let c = CarrierSpec::new(28e9, b).unwrap();
            for class in EsClass::ALL {
                let m = es_eirp_dbm(class, Lobe::Mainlobe, &c).value();
                let s = es_eirp_dbm(class, Lobe::Sidelobe, &c).value();
                prop_assert!((m - s - 30.0).abs() < 1e-9);
            }
        }
    }
}
