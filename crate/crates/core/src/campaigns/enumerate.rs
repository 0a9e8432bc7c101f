//! Per-unit enumeration: one driving root `r` (or `R`) in, candidate triples out.

use super::{CampaignKind, CampaignSpec};
use crate::pell::{divisor_pairs_u64, PellProblem, SpfSieve};
use crate::tuple::{d_plus_of, DiophantineTriple};
use rug::{Complete, Integer};
use std::collections::BTreeMap;

/// A triple ready for reduction, with its raw orbit multiplicity and whether
/// it came from the degenerate third element `C = 0`.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub triple: DiophantineTriple,
    pub raw: u64,
    pub degenerate: bool,
}

#[derive(Debug, Default, Clone)]
pub struct UnitCandidates {
    pub pairs: u64,
    pub cases: Vec<Candidate>,
    /// Internal consistency problems (invalid sets, sandwich violations).
    pub problems: Vec<String>,
}

/// `d₊` of three nonnegative integers, checking the sandwich
/// `4xyz + max < d₊ < 4xyz + 4·max` when all three are positive.
fn extend(x: &Integer, y: &Integer, z: &Integer, problems: &mut Vec<String>) -> Option<Integer> {
    let Some(d) = d_plus_of(x, y, z) else {
        problems.push(format!("{{{x}, {y}, {z}}} is not a Diophantine set"));
        return None;
    };
    if *x > 0 && *y > 0 && *z > 0 {
        let m = x.max(y).max(z).clone();
        let p4 = ((x * y).complete() * z) * 4u32;
        let lo = (&p4 + &m).complete();
        let hi = p4 + m * 4u32;
        if !(lo < d && d < hi) {
            problems.push(format!("sandwich fails for d+({x}, {y}, {z}) = {d}"));
        }
    }
    Some(d)
}

fn push_triple(out: &mut UnitCandidates, a: Integer, b: Integer, c: Integer, raw: u64, degenerate: bool) {
    match DiophantineTriple::new(a.clone(), b.clone(), c.clone()) {
        Ok(t) => out.cases.push(Candidate { triple: t, raw, degenerate }),
        Err(e) => out.problems.push(format!("({a}, {b}, {c}) rejected: {e}")),
    }
}

pub fn euler_unit(r: u64, sieve: Option<&SpfSieve>) -> UnitCandidates {
    let mut out = UnitCandidates::default();
    for (a, b) in divisor_pairs_u64(r, sieve) {
        out.pairs += 1;
        let (a, b) = (Integer::from(a), Integer::from(b));
        let c = (&a + &b).complete() + Integer::from(r) * 2u32;
        push_triple(&mut out, a, b, c, 1, false);
    }
    out
}

/// Both signs of `d₋₁ = a + b ± 2r`; `d₋₁ = 0` (when `b = a + 2`) is kept and
/// yields the Euler triple itself.
pub fn degree1_unit(r: u64, spec: &CampaignSpec, sieve: Option<&SpfSieve>) -> UnitCandidates {
    let mut out = UnitCandidates::default();
    let n = r as u128 * r as u128 - 1;
    for (a, b) in divisor_pairs_u64(r, sieve) {
        if spec.a_max.is_some_and(|m| a > m) || spec.ab_max.is_some_and(|m| n > m as u128) {
            continue;
        }
        out.pairs += 1;
        let (ai, bi, ri) = (Integer::from(a), Integer::from(b), Integer::from(r));
        for plus in [true, false] {
            let base = (&ai + &bi).complete();
            let d1 = if plus { base + (&ri * 2u32).complete() } else { base - (&ri * 2u32).complete() };
            if let Some(c) = extend(&ai, &d1, &bi, &mut out.problems) {
                push_triple(&mut out, ai.clone(), bi.clone(), c, 1, d1 == 0);
            }
        }
    }
    out
}

pub fn case5_unit(r: u64) -> UnitCandidates {
    let mut out = UnitCandidates::default();
    let n = r * r - 1;
    for a in 1..=3u64 {
        if !n.is_multiple_of(a) {
            continue;
        }
        out.pairs += 1;
        let (ai, bi, ri) = (Integer::from(a), Integer::from(n / a), Integer::from(r));
        for plus in [true, false] {
            let base = (&ai + &bi).complete();
            let d2 = if plus { base + (&ri * 2u32).complete() } else { base - (&ri * 2u32).complete() };
            let Some(d1) = extend(&ai, &d2, &bi, &mut out.problems) else { continue };
            let Some(c) = extend(&ai, &bi, &d1, &mut out.problems) else { continue };
            push_triple(&mut out, ai.clone(), bi.clone(), c, 1, d2 == 0);
        }
    }
    out
}

/// Cases I-IV: Pell enumeration over `(A, B)` from the divisors of `R² − 1`,
/// both role assignments, third element `C = (U² − 1)/A` for `U < u_cap`.
pub fn pell_case_unit(r: u64, spec: &CampaignSpec, sieve: Option<&SpfSieve>) -> UnitCandidates {
    let mut out = UnitCandidates::default();
    let n = r as u128 * r as u128 - 1;
    if spec.ad_max.is_some_and(|m| n > m as u128) {
        return out;
    }
    let u_max = Integer::from(spec.u_cap.expect("Pell cases need a U cap")) - 1u32;
    for (a0, b0) in divisor_pairs_u64(r, sieve) {
        out.pairs += 2;
        let p = PellProblem::from_u64(a0, b0).expect("divisor pair");
        let mut raw: BTreeMap<Integer, u64> = BTreeMap::new();
        for u in p.raw_orbit_terms(&u_max) {
            *raw.entry(u).or_default() += 1;
        }
        for (c_val, u) in p.thirds(&u_max) {
            let mult = raw.get(&u).copied().unwrap_or(1);
            let degenerate = c_val == 0;
            for (a, d) in [(p.a(), p.b()), (p.b(), p.a())] {
                if let Some((x, y, z)) = build_case(spec.kind, a, d, &c_val, &mut out.problems) {
                    push_triple(&mut out, x, y, z, mult, degenerate);
                }
            }
        }
    }
    out
}

/// The case-specific chain from `(a, d, C)` to `(a, b, c)`; `None` when the
/// chain degenerates into something that is not a triple.
fn build_case(
    kind: CampaignKind,
    a: &Integer,
    d: &Integer,
    c_val: &Integer,
    problems: &mut Vec<String>,
) -> Option<(Integer, Integer, Integer)> {
    match kind {
        CampaignKind::CaseI => {
            // d₋₁ = d, b = C, c = d₊(a, d₋₁, b)
            if *c_val == 0 {
                return None;
            }
            let c = extend(a, d, c_val, problems)?;
            Some((a.clone(), c_val.clone(), c))
        }
        CampaignKind::CaseII => {
            // d₋₂ = d, d₋₁ = C, b = d₊(a, d₋₁, d₋₂), c = d₊(a, b, d₋₁)
            let b = extend(a, c_val, d, problems)?;
            let c = extend(a, &b, c_val, problems)?;
            Some((a.clone(), b, c))
        }
        CampaignKind::CaseIII => {
            // d₋₂ = d, b = C, d₋₁ = d₊(a, d₋₂, b), c = d₊(a, b, d₋₁)
            if *c_val == 0 {
                return None;
            }
            let d1 = extend(a, d, c_val, problems)?;
            let c = extend(a, c_val, &d1, problems)?;
            Some((a.clone(), c_val.clone(), c))
        }
        CampaignKind::CaseIV => {
            // d₋₃ = d, d₋₂ = C, b = d₊(a, d₋₃, d₋₂), d₋₁ = d₊(a, d₋₂, b), c = d₊(a, b, d₋₁)
            let b = extend(a, d, c_val, problems)?;
            let d1 = extend(a, c_val, &b, problems)?;
            let c = extend(a, &b, &d1, problems)?;
            Some((a.clone(), b, c))
        }
        _ => unreachable!("not a Pell case"),
    }
}

pub fn unit_candidates(spec: &CampaignSpec, r: u64, sieve: Option<&SpfSieve>) -> UnitCandidates {
    match spec.kind {
        CampaignKind::Euler => euler_unit(r, sieve),
        CampaignKind::Degree1 => degree1_unit(r, spec, sieve),
        CampaignKind::CaseV => case5_unit(r),
        CampaignKind::CaseI | CampaignKind::CaseII | CampaignKind::CaseIII | CampaignKind::CaseIV => {
            pell_case_unit(r, spec, sieve)
        }
        CampaignKind::BruteForce => UnitCandidates::default(),
    }
}
