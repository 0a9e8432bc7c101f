//! Baker-Davenport reduction with certified continued fractions.
//!
//! Given enclosures of `κ, μ, A, B` and a cap `M`, find a convergent `p/q` of
//! `κ` with `q > 6M` and a rigorous lower bound on
//! `η = ‖μq‖ − M‖κq‖`. If it is positive, no `J` with
//! `log(Aq/η)/log B ≤ J ≤ M` solves `0 < Jκ − K + μ < A·B^{−J}`.

use crate::real::Interval;
use crate::tuple::{DiophantineTriple, TupleError};
use rug::float::Round;
use rug::{Complete, Integer, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Further convergents tried after the first one when `η ≤ 0`.
pub const EXTRA_CONVERGENTS: usize = 20;
pub const MAX_PRECISION: u32 = 8192;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("continued fraction of the enclosure is ambiguous before q exceeds {0}")]
    AmbiguousExpansion(Integer),
    #[error("eta <= 0 for {0} successive convergents")]
    EtaNonPositive(usize),
    #[error("precision cap of {0} bits reached")]
    PrecisionExhausted(u32),
    #[error(transparent)]
    Tuple(#[from] TupleError),
}

#[derive(Debug, Clone)]
pub struct ReductionProblem {
    pub kappa: Interval,
    pub mu: Interval,
    pub a: Interval,
    pub b: Interval,
    pub m: Integer,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionOutcome {
    /// Largest `J` the reduction does not exclude, clamped at zero.
    pub j_threshold: u64,
    pub convergent_q: Integer,
    /// A lower bound on `η`, rounded down to `f64`.
    pub eta: f64,
    /// Convergents examined, counting the successful one.
    pub attempts: usize,
    pub precision: u32,
}

/// Convergents `p/q` shared by every real between the two rationals, starting
/// at the first with `q > q_min`.
///
/// The expansions of both endpoints are run in lockstep; a convergent is
/// emitted only while the partial quotients agree and neither endpoint has
/// terminated (unless the endpoints coincide, in which case the whole finite
/// expansion is valid).
pub fn convergents_between(
    lo: &Rational,
    hi: &Rational,
    q_min: &Integer,
) -> Result<Vec<(Integer, Integer)>, ReductionError> {
    let exact = lo == hi;
    let (mut n1, mut d1) = lo.clone().into_numer_denom();
    let (mut n2, mut d2) = hi.clone().into_numer_denom();
    // (p, q) holds the previous convergent, (p_prev, q_prev) the one before.
    let (mut p_prev, mut q_prev) = (Integer::from(0), Integer::from(1));
    let (mut p, mut q) = (Integer::from(1), Integer::from(0));
    let mut out = Vec::new();
    loop {
        let (a1, r1) = n1.div_rem_floor_ref(&d1).complete();
        let (a2, r2) = n2.div_rem_floor_ref(&d2).complete();
        if a1 != a2 {
            break;
        }
        if !exact && (r1 == 0 || r2 == 0) {
            break;
        }
        let p_next = (&a1 * &p).complete() + &p_prev;
        let q_next = (&a1 * &q).complete() + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        if q > *q_min {
            out.push((p.clone(), q.clone()));
        }
        if r1 == 0 {
            break;
        }
        n1 = std::mem::replace(&mut d1, r1);
        n2 = std::mem::replace(&mut d2, r2);
    }
    if out.is_empty() {
        Err(ReductionError::AmbiguousExpansion(q_min.clone()))
    } else {
        Ok(out)
    }
}

/// Convergents certified for every point of `x`.
pub fn convergents(x: &Interval, q_min: &Integer) -> Result<Vec<(Integer, Integer)>, ReductionError> {
    let (lo, hi) = x.rational_bounds();
    convergents_between(&lo, &hi, q_min)
}

/// Initial working precision `2·log2(6M) + 96` bits.
pub fn initial_precision(m: &Integer) -> u32 {
    let six_m = (m * 6u32).complete();
    2 * six_m.significant_bits() + 96
}

/// One pass at the problem's precision, no escalation.
pub fn baker_davenport(p: &ReductionProblem) -> Result<ReductionOutcome, ReductionError> {
    let prec = p.kappa.prec();
    let six_m = (&p.m * 6u32).complete();
    let convs = convergents(&p.kappa, &six_m)?;
    let m_iv = Interval::from_int(prec, &p.m);
    let ln_b = p.b.ln();
    assert!(ln_b.is_positive(), "B must exceed 1");
    for (i, (_, q)) in convs.iter().take(EXTRA_CONVERGENTS + 1).enumerate() {
        let q_iv = Interval::from_int(prec, q);
        let mu_q = (&p.mu * &q_iv).dist_to_nearest_int();
        let kappa_q = (&p.kappa * &q_iv).dist_to_nearest_int();
        // Lower end is lo‖μq‖ − M·hi‖κq‖, rounded down.
        let eta_lo = (&mu_q - &(&m_iv * &kappa_q)).lo().clone();
        if eta_lo <= 0 {
            continue;
        }
        let eta = Interval::from_bounds(eta_lo.clone(), eta_lo.clone());
        let x = (&(&p.a * &q_iv) / &eta).ln() / &ln_b;
        let j = x.ceil_hi() - 1u32;
        let j_threshold = if j < 0 { 0 } else { j.to_u64().expect("threshold fits in u64") };
        return Ok(ReductionOutcome {
            j_threshold,
            convergent_q: q.clone(),
            eta: eta_lo.to_f64_round(Round::Down),
            attempts: i + 1,
            precision: prec,
        });
    }
    if convs.len() > EXTRA_CONVERGENTS {
        Err(ReductionError::EtaNonPositive(EXTRA_CONVERGENTS + 1))
    } else {
        // Not enough certified convergents to exhaust the retry budget.
        Err(ReductionError::AmbiguousExpansion(convs.last().unwrap().1.clone()))
    }
}

/// The `Λ₁` instance for a triple `a < b < c`:
/// `κ = log α1 / log α2`, `μ = log α3 / log α2`, `A = 1/log α2`, `B = α1²` with
/// `α1 = r + √(ab)`, `α2 = s + √(ac)`, `α3 = √c(√a+√b) / (√b(√a+√c))`.
pub fn lambda1_problem(t: &DiophantineTriple, m: &Integer, prec: u32) -> ReductionProblem {
    let iv = |n: &Integer| Interval::from_int(prec, n);
    let (a, b, c) = (iv(t.a()), iv(t.b()), iv(t.c()));
    let (sa, sb, sc) = (a.sqrt(), b.sqrt(), c.sqrt());
    let alpha1 = &iv(t.r()) + &(&a * &b).sqrt();
    let alpha2 = &iv(t.s()) + &(&a * &c).sqrt();
    let alpha3 = &(&sc * &(&sa + &sb)) / &(&sb * &(&sa + &sc));
    let (l1, l2, l3) = (alpha1.ln(), alpha2.ln(), alpha3.ln());
    ReductionProblem { kappa: &l1 / &l2, mu: &l3 / &l2, a: l2.recip(), b: alpha1.powi(2), m: m.clone() }
}

pub fn lambda1_problem_u64(a: u64, b: u64, c: u64, m: &Integer) -> Result<ReductionProblem, ReductionError> {
    let t = DiophantineTriple::from_u64(a, b, c)?;
    Ok(lambda1_problem(&t, m, initial_precision(m)))
}

/// Builds and reduces `Λ₁`, doubling precision on ambiguity or `η ≤ 0`.
pub fn reduce_triple(t: &DiophantineTriple, m: &Integer) -> Result<ReductionOutcome, ReductionError> {
    reduce_with(m, |prec| lambda1_problem(t, m, prec))
}

/// Escalation ladder shared by every caller: start at [`initial_precision`],
/// double until success or [`MAX_PRECISION`].
pub fn reduce_with(
    m: &Integer,
    mut build: impl FnMut(u32) -> ReductionProblem,
) -> Result<ReductionOutcome, ReductionError> {
    let mut prec = initial_precision(m);
    let guard = initial_precision(m) - 32;
    loop {
        let p = build(prec);
        let wide = [&p.kappa, &p.mu]
            .iter()
            .any(|x| x.width() > rug::Float::with_val(64, rug::Float::i_exp(1, -(guard as i32))));
        if !wide {
            match baker_davenport(&p) {
                Ok(o) => return Ok(o),
                Err(ReductionError::AmbiguousExpansion(_)) | Err(ReductionError::EtaNonPositive(_)) => {}
                Err(e) => return Err(e),
            }
        }
        if prec >= MAX_PRECISION {
            return Err(ReductionError::PrecisionExhausted(MAX_PRECISION));
        }
        prec = (prec * 2).min(MAX_PRECISION);
    }
}
