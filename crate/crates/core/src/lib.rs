//! Exact binary signals, relative and absolute inertia, and deterministic
//! delay models.
//!
//! Times are exact rationals, so every comparison at a window boundary is
//! decided without rounding.

#![no_std]

extern crate alloc;

pub mod delay;
pub mod envelope;
pub mod error;
pub mod inertia;
#[cfg(feature = "sampling")]
pub mod sampling;
pub mod signal;
pub mod time;

pub use delay::{
    check_delay_on, check_non_anticipation_on, check_time_invariance_on, CheckReport, Corpus, DelayModel, Failure,
    FailureDetail, Transducer,
};
pub use envelope::{dominating_window, fit_ri, Dominance, FitError, FitMode, Infeasibility, InstantSet, Span};
pub use error::Error;
pub use inertia::{
    ai_member, combine_members, is_ri_member, ri_member, AIParams, Combination, Membership, Property, RIParams,
    Violation, ZenoWitness,
};
pub use signal::{Edge, EdgeKind, PulseWidths, Run, Signal, Window};
pub use time::{ParseTimeError, Time};
