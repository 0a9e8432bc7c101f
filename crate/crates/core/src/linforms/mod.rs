//! Certified evaluation of the linear-forms-in-logarithms bounds: Matveev's
//! theorem, the three-logarithm "kit", Laurent's two-logarithm theorem, and
//! the numeric bound chains built on them.
//!
//! Every quantity is an [`Interval`] computed with outward rounding. Constants
//! that a published derivation displays in decimal are used only as targets
//! for [`BoundCertificate`]s; the chains recompute everything from the
//! definitions and thread their own results forward.

mod chains;
mod kit;
mod laurent;
mod matveev;
mod solve;

pub use chains::{
    euler1_input, euler2_input, euler_case_bounds, euler_case_bounds_at, euler_case_bounds_with, euler_laurent,
    prop1_chain, prop1_chain_at, prop2_chain, prop2_chain_at, prop2_chain_with, prop2_pass, EulerLaurentInput,
    EulerLaurentResult, PassInput, Prop1Result, Prop2Pass, PROP2_PASSES,
};
pub use kit::{kit_condition_holds, kit_main_bound, KitCheck, KitParams};
pub use laurent::{laurent_lower_bound, LaurentConstants, LaurentParams};
pub use matveev::{
    lambda1_matveev_coefficient, matveev_bound, matveev_c0, matveev_c_n, matveev_constant, matveev_w0_factor,
};
pub use solve::{last_crossing, solve_self_referential};

use crate::real::Interval;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Working precision of the chains, in bits.
pub const PREC: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinformsError {
    #[error("parameter precondition violated: {0}")]
    Precondition(String),
    #[error("hypothesis not certified: {0}")]
    Hypothesis(String),
    #[error("no fixed point below 1e300")]
    Divergence,
    #[error("no crossing found: {0}")]
    NoCrossing(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A recomputed upper bound set against a published figure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub name: String,
    pub claimed: f64,
    pub recomputed_lo: f64,
    pub recomputed_hi: f64,
    /// Relative slack allowed over `claimed`.
    pub tolerance: f64,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

impl BoundCertificate {
    /// Upper-bound claim: passes iff the certified upper end does not exceed
    /// `claimed · (1 + tolerance)`.
    pub fn upper(name: &str, claimed: f64, value: &Interval, tolerance: f64) -> Self {
        let hi = value.hi_f64();
        let ok = hi <= claimed * (1.0 + tolerance);
        BoundCertificate {
            name: name.to_string(),
            claimed,
            recomputed_lo: value.lo_f64(),
            recomputed_hi: hi,
            tolerance,
            status: if ok { Status::Pass } else { Status::Fail },
            notes: None,
        }
    }

    /// Two-sided match within `tolerance` of `claimed`.
    pub fn close(name: &str, claimed: f64, value: &Interval, tolerance: f64) -> Self {
        let mut c = Self::upper(name, claimed, value, tolerance);
        let ok = (c.recomputed_lo - claimed).abs() <= claimed.abs() * tolerance
            && (c.recomputed_hi - claimed).abs() <= claimed.abs() * tolerance;
        c.status = if ok { Status::Pass } else { Status::Fail };
        c
    }

    /// A yes/no fact (condition certified, hypothesis met).
    pub fn check(name: &str, ok: bool) -> Self {
        BoundCertificate {
            name: name.to_string(),
            claimed: 1.0,
            recomputed_lo: if ok { 1.0 } else { 0.0 },
            recomputed_hi: if ok { 1.0 } else { 0.0 },
            tolerance: 0.0,
            status: if ok { Status::Pass } else { Status::Fail },
            notes: None,
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.notes = Some(note.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn all_pass(certs: &[BoundCertificate]) -> bool {
    certs.iter().all(BoundCertificate::passed)
}

pub(crate) fn dec(prec: u32, s: &str) -> Interval {
    Interval::from_decimal(prec, s)
}

pub(crate) fn num(prec: u32, x: f64) -> Interval {
    Interval::from_f64(prec, x)
}
