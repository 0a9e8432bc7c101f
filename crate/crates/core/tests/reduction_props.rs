use dioph::reduction::{
    baker_davenport, convergents, initial_precision, lambda1_problem, reduce_with, ReductionProblem,
};
use dioph::{DiophantineTriple, Integer, Interval};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Complete, Rational};

const SCAN_PREC: u32 = 256;

fn iv(prec: u32, n: u64) -> Interval {
    Interval::from_u64(prec, n)
}

/// `κ = log x/log z`, `μ = log y/log z`, with `A`, `B` small rationals.
fn generic_problem(prec: u32, x: u64, y: u64, z: u64, a: (u64, u64), b: (u64, u64), m: u64) -> ReductionProblem {
    let lz = iv(prec, z).ln();
    ReductionProblem {
        kappa: &iv(prec, x).ln() / &lz,
        mu: &iv(prec, y).ln() / &lz,
        a: &iv(prec, a.0) / &iv(prec, a.1),
        b: &iv(prec, b.0) / &iv(prec, b.1),
        m: Integer::from(m),
    }
}

/// Every `(J, K)` with `j < J ≤ M` that is not certainly outside
/// `0 < Jκ − K + μ < A·B^{−J}`.
fn admissible_above(p: &ReductionProblem, j: u64) -> Option<(u64, Integer)> {
    let m = p.m.to_u64().unwrap();
    let ln_a = p.a.ln().hi_f64();
    let ln_b = p.b.ln().lo_f64();
    for jj in j + 1..=m {
        let lin = &(&p.kappa * &iv(p.kappa.prec(), jj)) + &p.mu;
        let rhs_ln = ln_a - jj as f64 * ln_b;
        // K from ⌊Jκ + μ − A B^{−J}⌋ to ⌊Jκ + μ⌋
        let spread = if rhs_ln > 0.0 { rhs_ln.exp().ceil() as u64 + 1 } else { 1 };
        let top = lin.floor_lo() + 1u32;
        for dk in 0..=spread {
            let k = (&top - dk).complete();
            let x = &lin - &Interval::from_int(p.kappa.prec(), &k);
            if x.hi_f64() <= 0.0 {
                continue;
            }
            let lo = x.lo_f64();
            if lo <= 0.0 || lo.ln() < rhs_ln + 1e-9 {
                return Some((jj, k));
            }
        }
    }
    None
}

#[test]
fn sound_against_exhaustive_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut reduced = 0;
    // instances where the scan does see a solution at or below the threshold
    let mut witnessed = 0;
    for i in 0..1000 {
        let m = rng.gen_range(10..=10_000u64);
        let prec = initial_precision(&Integer::from(m)).max(SCAN_PREC);
        let p = if i % 2 == 0 {
            let (x, y, z) = (rng.gen_range(2..1000u64), rng.gen_range(2..1000u64), rng.gen_range(1000..100_000u64));
            let a = (rng.gen_range(1..50u64), rng.gen_range(1..10u64));
            let b = (rng.gen_range(11..500u64), 10);
            generic_problem(prec, x, y, z, a, b, m)
        } else {
            let r = rng.gen_range(2..400u64);
            let pairs = dioph::pell::divisor_pairs_u64(r, None);
            let (a, b) = pairs[rng.gen_range(0..pairs.len())];
            let t = DiophantineTriple::from_u64(a, b, a + b + 2 * r).unwrap();
            let t = DiophantineTriple::new(t.a().clone(), t.b().clone(), t.d_plus()).unwrap();
            lambda1_problem(&t, &Integer::from(m), prec)
        };
        let Ok(o) = baker_davenport(&p) else { continue };
        reduced += 1;
        if let Some((j, k)) = admissible_above(&p, o.j_threshold) {
            panic!("instance {i}: (J, K) = ({j}, {k}) survives above {}", o.j_threshold);
        }
        let below = ReductionProblem { m: Integer::from(o.j_threshold), ..p };
        if admissible_above(&below, 0).is_some() {
            witnessed += 1;
        }
    }
    assert!(reduced >= 900, "only {reduced} instances reduced");
    assert!(witnessed >= 50, "scan saw only {witnessed} solutions");
}

#[test]
fn doubling_precision_never_raises_threshold() {
    let m = Integer::from(19) * Integer::from(10u64.pow(15));
    for (a, b, c) in [(1u64, 3, 8), (1, 3, 120), (2, 4, 12), (1, 8, 15), (3, 5, 16), (4, 12, 420), (5, 7, 24)] {
        let Ok(t) = DiophantineTriple::from_u64(a, b, c) else { continue };
        let prec = initial_precision(&m);
        let base = baker_davenport(&lambda1_problem(&t, &m, prec));
        let Ok(base) = base else { continue };
        let fine = baker_davenport(&lambda1_problem(&t, &m, 2 * prec)).unwrap();
        assert!(fine.j_threshold <= base.j_threshold, "{t}: {fine:?} vs {base:?}");
        let ladder = reduce_with(&m, |pr| lambda1_problem(&t, &m, pr)).unwrap();
        assert!(ladder.j_threshold <= base.j_threshold);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn convergents_are_good_approximations(n in 2u64..100_000, prec in 64u32..600) {
        prop_assume!((n as f64).sqrt().fract() != 0.0);
        let x = iv(prec, n).sqrt();
        let (lo, hi) = x.rational_bounds();
        if let Ok(cs) = convergents(&x, &Integer::from(1)) {
            for (p, q) in cs {
                let pq = Rational::from((p, q.clone()));
                let bound = Rational::from((1, (&q * &q).complete()));
                prop_assert!((&lo - &pq).complete().abs() < bound);
                prop_assert!((&hi - &pq).complete().abs() < bound);
            }
        }
    }
}
