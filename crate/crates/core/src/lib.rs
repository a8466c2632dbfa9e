//! Interference from 28 GHz FSS earth-station uplinks into a 5G UE receiver.
//!
//! * [`rfmath`]: unit-safe dBm / dB / milliwatt algebra
//! * [`linkbudget`]: free-space path loss, thermal noise, ES EIRP classes
//! * [`engine`]: aggregate interference, SINR, sweeps, separation distance
//! * [`config`], [`output`], [`commands`]: the `coexsim` command line
//!
//! ```
//! use coexsim::engine::{separation_distance, EsEmitter, Scenario};
//! use coexsim::linkbudget::{EsClass, Lobe};
//! use coexsim::rfmath::PowerRatioDb;
//!
//! let scenario = Scenario::default().with_emitter(EsEmitter::single(EsClass::Class3, Lobe::Sidelobe));
//! let sep = separation_distance(&scenario, PowerRatioDb::ZERO).unwrap();
//! assert!(sep.attainable && (sep.distance_m - 2763.9).abs() < 0.1);
//! ```

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod engine;
mod error;
pub mod linkbudget;
pub mod output;
pub mod parallel;
pub mod rfmath;

pub use error::{Error, Result};
