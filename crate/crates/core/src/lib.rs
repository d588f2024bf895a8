//! Exact evaluation of convergent geometric event sequences.
//!
//! The central example is the race between a fast runner and a slow one with a
//! head start: every time the pursuer reaches the leader's previous position the
//! leader has moved on, producing infinitely many catch-up steps whose times
//! nevertheless sum to a finite catch-up instant.
//!
//! * [`rational`] is the exact number type every computation runs on.
//! * [`race`] holds the step recurrence, its closed forms and the catch-up limit.
//! * [`process`] generalizes the race to any geometric event process, with the
//!   halving-distance runner and the bouncing ball as instances.
//! * [`float`] evaluates the same partial sums in binary64 and audits the result
//!   against the exact value.

pub mod error;
pub mod float;
pub mod process;
pub mod race;
pub mod rational;

pub use error::{Error, Result};
pub use float::{error_sweep, FloatReport, SumMethod};
pub use process::{BounceConfig, DichotomyConfig, GeometricEventProcess};
pub use race::{CatchUp, RaceConfig, StepEvent, MAX_STEPS};
pub use rational::{ParseRationalError, Rational};
