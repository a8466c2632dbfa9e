//! Logarithmic and linear power algebra.
//!
//! Absolute levels ([`PowerDbm`]) and relative gains/losses ([`PowerRatioDb`])
//! are separate types. The only arithmetic defined between them is the one
//! that makes physical sense: an absolute level shifted by a ratio. Two
//! absolute dBm levels cannot be added; to combine powers, convert to
//! [`PowerMilliwatt`] and sum there.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

/// Absolute power level in dBm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PowerDbm(f64);

/// Relative gain or loss in dB.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct PowerRatioDb(f64);

/// Linear power in milliwatts. Zero is allowed and means "no power".
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct PowerMilliwatt(f64);

impl PowerDbm {
    pub const fn new(dbm: f64) -> Self {
        Self(dbm)
    }

    pub const fn value(self) -> f64 {
        self.0
    }

    /// Difference between two absolute levels, which is a ratio.
    pub fn ratio_to(self, reference: PowerDbm) -> PowerRatioDb {
        PowerRatioDb(self.0 - reference.0)
    }
}

impl PowerRatioDb {
    pub const ZERO: Self = Self(0.0);

    pub const fn new(db: f64) -> Self {
        Self(db)
    }

    pub const fn value(self) -> f64 {
        self.0
    }

    /// Linear power ratio, 10^(dB/10).
    pub fn to_linear(self) -> f64 {
        10f64.powf(self.0 / 10.0)
    }

    /// `10·log10(ratio)`; `ratio` must be positive.
    pub fn from_linear(ratio: f64) -> Result<Self> {
        if ratio > 0.0 && ratio.is_finite() {
            Ok(Self(10.0 * ratio.log10()))
        } else {
            Err(Error::Domain(format!(
                "ratio {ratio} has no logarithmic representation"
            )))
        }
    }
}

impl PowerMilliwatt {
    pub const ZERO: Self = Self(0.0);

    /// Rejects negative or non-finite values.
    pub fn new(mw: f64) -> Result<Self> {
        if mw >= 0.0 && mw.is_finite() {
            Ok(Self(mw))
        } else {
            Err(Error::Domain(format!("linear power {mw} mW must be finite and >= 0")))
        }
    }

    pub const fn value(self) -> f64 {
        self.0
    }
}

/// `10^(p/10)` milliwatts.
pub fn dbm_to_mw(p: PowerDbm) -> PowerMilliwatt {
    PowerMilliwatt(10f64.powf(p.0 / 10.0))
}

/// `10·log10(p)` dBm. Zero has no logarithmic representation.
pub fn mw_to_dbm(p: PowerMilliwatt) -> Result<PowerDbm> {
    if p.0 > 0.0 {
        Ok(PowerDbm(10.0 * p.0.log10()))
    } else {
        Err(Error::Domain(format!(
            "{} mW has no logarithmic representation",
            p.0
        )))
    }
}

/// Link-budget subtraction: a positive loss lowers the level, a negative one raises it.
pub fn apply_loss(p: PowerDbm, loss: PowerRatioDb) -> PowerDbm {
    PowerDbm(p.0 - loss.0)
}

impl Add<PowerRatioDb> for PowerDbm {
    type Output = PowerDbm;
    fn add(self, rhs: PowerRatioDb) -> PowerDbm {
        PowerDbm(self.0 + rhs.0)
    }
}

impl Sub<PowerRatioDb> for PowerDbm {
    type Output = PowerDbm;
    fn sub(self, rhs: PowerRatioDb) -> PowerDbm {
        apply_loss(self, rhs)
    }
}

impl Add for PowerRatioDb {
    type Output = PowerRatioDb;
    fn add(self, rhs: PowerRatioDb) -> PowerRatioDb {
        PowerRatioDb(self.0 + rhs.0)
    }
}

impl Sub for PowerRatioDb {
    type Output = PowerRatioDb;
    fn sub(self, rhs: PowerRatioDb) -> PowerRatioDb {
        PowerRatioDb(self.0 - rhs.0)
    }
}

impl Neg for PowerRatioDb {
    type Output = PowerRatioDb;
    fn neg(self) -> PowerRatioDb {
        PowerRatioDb(-self.0)
    }
}

impl Add for PowerMilliwatt {
    type Output = PowerMilliwatt;
    fn add(self, rhs: PowerMilliwatt) -> PowerMilliwatt {
        PowerMilliwatt(self.0 + rhs.0)
    }
}

impl Sum for PowerMilliwatt {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(PowerMilliwatt::ZERO, Add::add)
    }
}

impl fmt::Display for PowerDbm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} dBm", self.0)
    }
}

impl fmt::Display for PowerRatioDb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} dB", self.0)
    }
}

impl fmt::Display for PowerMilliwatt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mW", self.0)
    }
}
