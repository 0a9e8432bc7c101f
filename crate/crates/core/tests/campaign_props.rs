use dioph::campaigns::enumerate::unit_candidates;
use dioph::campaigns::{merge_reports, run_campaign, CampaignError, RunOptions};
use dioph::{CampaignKind, CampaignSpec, Integer};
use proptest::prelude::*;
use rug::Complete;
use std::collections::BTreeSet;

const PELL_CASES: [CampaignKind; 4] =
    [CampaignKind::CaseI, CampaignKind::CaseII, CampaignKind::CaseIII, CampaignKind::CaseIV];

fn small(kind: CampaignKind) -> CampaignSpec {
    let spec = CampaignSpec::full(kind);
    match kind {
        CampaignKind::Euler => spec.with_range(2, 300),
        CampaignKind::Degree1 => spec.with_range(2, 120),
        CampaignKind::CaseV => spec.with_range(2, 150),
        _ => spec.with_range(2, 30),
    }
}

fn all_kinds() -> Vec<CampaignKind> {
    let mut k = vec![CampaignKind::Euler, CampaignKind::Degree1, CampaignKind::CaseV];
    k.extend(PELL_CASES);
    k
}

#[test]
fn shard_counts_merge_identically() {
    let opts = RunOptions { chunk: 7, ..Default::default() };
    for kind in all_kinds() {
        let spec = small(kind);
        let whole = run_campaign(&spec, &opts).unwrap();
        for s in [1u32, 2, 4, 8] {
            // shards handed over in reverse to exercise the sort
            let parts: Vec<_> =
                (0..s).rev().map(|i| run_campaign(&spec.clone().with_shard(i, s), &opts).unwrap()).collect();
            let merged = merge_reports(&parts).unwrap();
            assert_eq!(merged.to_json(), whole.to_json(), "{kind:?} with {s} shards");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn resume_after_kill(kind_ix in 0usize..7, stop in 1u64..60, chunk in 1usize..9) {
        let kind = all_kinds()[kind_ix];
        let spec = small(kind);
        let straight = run_campaign(&spec, &RunOptions::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.json");
        let opts = RunOptions { checkpoint: Some(path.clone()), chunk, stop_after: Some(stop), ..Default::default() };
        // kill repeatedly until the run completes
        let resumed = loop {
            match run_campaign(&spec, &opts) {
                Ok(r) => break r,
                Err(CampaignError::Interrupted(_)) => continue,
                Err(e) => panic!("{e}"),
            }
        };
        prop_assert_eq!(resumed.to_json(), straight.to_json());
    }
}

#[test]
fn checkpoint_of_other_campaign_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp.json");
    let opts = RunOptions { checkpoint: Some(path), stop_after: Some(5), chunk: 2, ..Default::default() };
    let spec = small(CampaignKind::Euler);
    assert!(matches!(run_campaign(&spec, &opts), Err(CampaignError::Interrupted(_))));
    let other = small(CampaignKind::Degree1);
    assert!(matches!(run_campaign(&other, &opts), Err(CampaignError::CheckpointMismatch)));
}

/// Number of divisors of `n` below `√n`, by trial division.
fn divisors_below_root(n: u64) -> u64 {
    (1..).take_while(|d| d * d < n).filter(|d| n.is_multiple_of(*d)).count() as u64
}

#[test]
fn euler_pairs_match_divisor_count() {
    let spec = CampaignSpec::full(CampaignKind::Euler).with_range(2, 1000);
    let rep = run_campaign(&spec, &RunOptions::default()).unwrap();
    let expect: u64 = (2..=1000u64).map(|r| divisors_below_root(r * r - 1)).sum();
    assert_eq!(rep.pairs_checked, expect);
    assert_eq!(rep.triples_checked, expect);
    assert!(rep.success());
}

/// `x + y + z + 2xyz + 2√((xy+1)(xz+1)(yz+1))`, one square root of the product.
fn oracle_d_plus(x: &Integer, y: &Integer, z: &Integer) -> Option<Integer> {
    let one = |p: &Integer, q: &Integer| (p * q).complete() + 1u32;
    let prod = one(x, y) * one(x, z) * one(y, z);
    let root = prod.clone().sqrt();
    if (&root * &root).complete() != prod {
        return None;
    }
    Some((x + y).complete() + z + (x * y).complete() * z * 2u32 + root * 2u32)
}

fn key(mut v: [Integer; 3]) -> Option<[Integer; 3]> {
    v.sort();
    (v[0] > 0 && v[0] != v[1] && v[1] != v[2]).then_some(v)
}

fn emitted(spec: &CampaignSpec, r: u64) -> BTreeSet<[Integer; 3]> {
    let c = unit_candidates(spec, r, None);
    assert!(c.problems.is_empty(), "{:?}", c.problems);
    c.cases.iter().map(|x| x.triple.elements().map(|e| e.clone())).collect()
}

fn naive_pairs(r: u64) -> Vec<(u64, u64)> {
    let n = r * r - 1;
    (1..).take_while(|a| a * a < n).filter(|a| n.is_multiple_of(*a)).map(|a| (a, n / a)).collect()
}

#[test]
fn degree1_matches_oracle() {
    let spec = CampaignSpec::full(CampaignKind::Degree1).with_range(2, 500);
    for r in 2..=500u64 {
        let mut want = BTreeSet::new();
        for (a, b) in naive_pairs(r) {
            let (a, b) = (Integer::from(a), Integer::from(b));
            for d in [(&a + &b).complete() + 2 * r, (&a + &b).complete() - 2 * r] {
                let c = oracle_d_plus(&a, &b, &d).unwrap();
                want.extend(key([a.clone(), b.clone(), c]));
            }
        }
        assert_eq!(emitted(&spec, r), want, "r = {r}");
    }
}

/// Pell thirds by scanning every `U < u_cap`.
fn scanned_thirds(a: u64, b: u64, u_cap: u64) -> Vec<Integer> {
    let mut out = Vec::new();
    for u in 1..u_cap {
        let n = b as u128 * u as u128 * u as u128 + a as u128 - b as u128;
        if !n.is_multiple_of(a as u128) {
            continue;
        }
        let v2 = n / a as u128;
        let v = v2.isqrt();
        if v * v == v2 {
            let c = (u as u128 * u as u128 - 1) / a as u128;
            if (u as u128 * u as u128 - 1).is_multiple_of(a as u128) {
                out.push(Integer::from(c));
            }
        }
    }
    out
}

fn oracle_case(kind: CampaignKind, a: &Integer, d: &Integer, c: &Integer) -> Option<[Integer; 3]> {
    let p = oracle_d_plus;
    let t = match kind {
        CampaignKind::CaseI => {
            if *c == 0 {
                return None;
            }
            [a.clone(), c.clone(), p(a, d, c)?]
        }
        CampaignKind::CaseII => {
            let b = p(a, c, d)?;
            let cc = p(a, &b, c)?;
            [a.clone(), b, cc]
        }
        CampaignKind::CaseIII => {
            if *c == 0 {
                return None;
            }
            let d1 = p(a, d, c)?;
            [a.clone(), c.clone(), p(a, c, &d1)?]
        }
        CampaignKind::CaseIV => {
            let b = p(a, d, c)?;
            let d1 = p(a, c, &b)?;
            let cc = p(a, &b, &d1)?;
            [a.clone(), b, cc]
        }
        _ => unreachable!(),
    };
    key(t)
}

#[test]
fn pell_cases_match_scanning_oracle() {
    let u_cap = 20_000u64;
    for kind in PELL_CASES {
        let hi = if kind == CampaignKind::CaseI { 10 } else { 50 };
        let mut spec = CampaignSpec::full(kind).with_range(2, hi);
        spec.u_cap = Some(u_cap);
        for r in 2..=hi {
            let mut want = BTreeSet::new();
            for (x, y) in naive_pairs(r) {
                for c in scanned_thirds(x, y, u_cap) {
                    let (x, y) = (Integer::from(x), Integer::from(y));
                    for (a, d) in [(&x, &y), (&y, &x)] {
                        want.extend(oracle_case(kind, a, d, &c));
                    }
                }
            }
            assert_eq!(emitted(&spec, r), want, "{kind:?}, R = {r}");
        }
    }
}

#[test]
fn case5_matches_oracle() {
    let spec = CampaignSpec::full(CampaignKind::CaseV).with_range(2, 2000);
    for r in 2..=2000u64 {
        let n = r * r - 1;
        let mut want = BTreeSet::new();
        for a in (1..=3u64).filter(|a| n % a == 0) {
            let (a, b) = (Integer::from(a), Integer::from(n / a));
            for d2 in [(&a + &b).complete() + 2 * r, (&a + &b).complete() - 2 * r] {
                let d1 = oracle_d_plus(&a, &d2, &b).unwrap();
                let c = oracle_d_plus(&a, &b, &d1).unwrap();
                want.extend(key([a.clone(), b.clone(), c]));
            }
        }
        assert_eq!(emitted(&spec, r), want, "r = {r}");
    }
}

#[test]
fn small_reports_succeed() {
    for kind in all_kinds() {
        let rep = run_campaign(&small(kind), &RunOptions::default()).unwrap();
        assert!(rep.failures.is_empty(), "{kind:?}: {:?}", rep.failures);
        assert!(rep.max_j_threshold < rep.contradiction_threshold);
    }
}
