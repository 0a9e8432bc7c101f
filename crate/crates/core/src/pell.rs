//! Pell equations `A V² − B U² = A − B` with `AB + 1 = R²`.
//!
//! Fundamental solutions come from an exhaustive scan of the admissible `U0`
//! range; every solution is then generated by repeated multiplication with the
//! unit `R + √(AB)`, unrolled as the recurrence `X_{q+2} = 2R X_{q+1} − X_q`.

use crate::tuple::{isqrt_exact, TupleError};
use rug::{Complete, Integer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PellError {
    #[error("need 0 < A < B, got A={0}, B={1}")]
    Order(Integer, Integer),
    #[error(transparent)]
    Tuple(#[from] TupleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PellProblem {
    a: Integer,
    b: Integer,
    r: Integer,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FundamentalSolution {
    pub v0: Integer,
    pub u0: Integer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    pub v: Integer,
    pub u: Integer,
    pub q: u32,
    pub origin: FundamentalSolution,
}

impl PellProblem {
    pub fn new(a: Integer, b: Integer) -> Result<Self, PellError> {
        if a <= 0 || b <= a {
            return Err(PellError::Order(a, b));
        }
        let n = (&a * &b).complete() + 1u32;
        let r = isqrt_exact(&n).ok_or_else(|| TupleError::NotSquare(a.clone(), b.clone()))?;
        Ok(Self { a, b, r })
    }

    pub fn from_u64(a: u64, b: u64) -> Result<Self, PellError> {
        Self::new(Integer::from(a), Integer::from(b))
    }

    pub fn a(&self) -> &Integer {
        &self.a
    }
    pub fn b(&self) -> &Integer {
        &self.b
    }
    pub fn r(&self) -> &Integer {
        &self.r
    }

    pub fn satisfies(&self, v: &Integer, u: &Integer) -> bool {
        let lhs = &self.a * (v * v).complete() - &self.b * (u * u).complete();
        lhs == (&self.a - &self.b).complete()
    }

    /// Multiply `(V√A + U√B)` by `R + √(AB)` once.
    pub fn step(&self, v: &Integer, u: &Integer) -> (Integer, Integer) {
        let v1 = (&self.r * v).complete() + (&self.b * u).complete();
        let u1 = (&self.a * v).complete() + (&self.r * u).complete();
        (v1, u1)
    }

    /// Every `(±V0, U0)` with `2(R−1)U0² ≤ A(B−A)`, before orbit deduplication.
    /// `(1, 1)` is always among them.
    pub fn fundamental_candidates(&self) -> Vec<FundamentalSolution> {
        let lim = &self.a * (&self.b - &self.a).complete();
        let two_r1 = (&self.r - 1u32).complete() * 2u32;
        let mut out = Vec::new();
        let mut u0 = Integer::from(1);
        loop {
            let sq = (&u0 * &u0).complete();
            if u0 > 1 && (&two_r1 * &sq).complete() > lim {
                break;
            }
            let n = (&self.a - &self.b).complete() + (&self.b * &sq).complete();
            if n.is_divisible(&self.a) {
                if let Some(v0) = isqrt_exact(&(n / &self.a)) {
                    if v0 != 0 {
                        out.push(FundamentalSolution { v0: -v0.clone(), u0: u0.clone() });
                    }
                    out.push(FundamentalSolution { v0, u0: u0.clone() });
                }
            }
            u0 += 1u32;
        }
        out
    }

    /// Fundamental solutions with overlapping orbits removed: a candidate whose
    /// first step lands on another candidate contributes nothing new once
    /// `|V|` is taken, so it is dropped.
    pub fn fundamental_solutions(&self) -> Vec<FundamentalSolution> {
        let cands = self.fundamental_candidates();
        cands
            .iter()
            .filter(|f| {
                let (v1, u1) = self.step(&f.v0, &f.u0);
                !(f.v0 < 0 && cands.iter().any(|g| g.v0 == v1 && g.u0 == u1))
            })
            .cloned()
            .collect()
    }

    /// Walks one orbit while `U ≤ u_max`, calling `f(v, u, q)`.
    fn walk(&self, f0: &FundamentalSolution, u_max: &Integer, mut f: impl FnMut(&Integer, &Integer, u32)) {
        if f0.u0 > *u_max {
            return;
        }
        f(&f0.v0, &f0.u0, 0);
        let (mut v_prev, mut u_prev) = (f0.v0.clone(), f0.u0.clone());
        let (mut v, mut u) = self.step(&f0.v0, &f0.u0);
        let two_r = (&self.r * 2u32).complete();
        let mut q = 1;
        while u <= *u_max {
            f(&v, &u, q);
            let v_next = (&two_r * &v).complete() - &v_prev;
            let u_next = (&two_r * &u).complete() - &u_prev;
            v_prev = std::mem::replace(&mut v, v_next);
            u_prev = std::mem::replace(&mut u, u_next);
            q += 1;
        }
    }

    /// All solutions with `U ≤ u_max`, `V` reported as `|V|`, one entry per
    /// distinct `(V, U)`, sorted by `U`.
    pub fn solutions_up_to(&self, u_max: &Integer) -> Vec<PellSolution> {
        let mut out: Vec<PellSolution> = Vec::new();
        for f0 in self.fundamental_solutions() {
            self.walk(&f0, u_max, |v, u, q| {
                debug_assert!(self.satisfies(v, u));
                out.push(PellSolution { v: v.clone().abs(), u: u.clone(), q, origin: f0.clone() });
            });
        }
        out.sort_by(|x, y| x.u.cmp(&y.u).then(x.q.cmp(&y.q)));
        out.dedup_by(|x, y| x.u == y.u && x.v == y.v);
        out
    }

    /// Every `U ≤ u_max` from every `(±V0, U0)` candidate orbit, without
    /// deduplication; a value reached by two orbits appears twice.
    pub fn raw_orbit_terms(&self, u_max: &Integer) -> Vec<Integer> {
        let mut us = Vec::new();
        for f0 in self.fundamental_candidates() {
            self.walk(&f0, u_max, |_, u, _| us.push(u.clone()));
        }
        us.sort();
        us
    }

    /// Third elements `C = (U²−1)/A` with `C > B`, each giving a Diophantine
    /// triple `{A, B, C}`.
    pub fn third_elements(&self, u_max: &Integer) -> Vec<(Integer, Integer)> {
        self.thirds(u_max).into_iter().filter(|(c, _)| *c > self.b).collect()
    }

    /// Every `C = (U²−1)/A ≥ 0` over the deduplicated solutions, including the
    /// degenerate `C = 0` from `U = 1`.
    pub fn thirds(&self, u_max: &Integer) -> Vec<(Integer, Integer)> {
        let mut out = Vec::new();
        for s in self.solutions_up_to(u_max) {
            if let Some(c) = c_from_u(&self.a, &s.u) {
                out.push((c, s.u));
            }
        }
        out
    }
}

/// `(U²−1)/A` when exact.
pub fn c_from_u(a: &Integer, u: &Integer) -> Option<Integer> {
    let n = (u * u).complete() - 1u32;
    if n.is_divisible(a) {
        Some(n / a)
    } else {
        None
    }
}

/// Prime factorisation by trial division; fine for the `u64` range used here.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Smallest-prime-factor table for repeated factorisation up to `n`.
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    pub fn new(n: u64) -> Self {
        let n = n as usize + 1;
        let mut spf = vec![0u32; n.max(2)];
        for i in 2..n {
            if spf[i] == 0 {
                let mut j = i;
                while j < n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Self { spf }
    }

    pub fn limit(&self) -> u64 {
        self.spf.len() as u64 - 1
    }

    pub fn factor(&self, mut n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            n /= p;
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

fn merge_factors(mut x: Vec<(u64, u32)>, y: Vec<(u64, u32)>) -> Vec<(u64, u32)> {
    for (p, e) in y {
        match x.iter_mut().find(|(q, _)| *q == p) {
            Some((_, f)) => *f += e,
            None => x.push((p, e)),
        }
    }
    x.sort();
    x
}

fn divisors_from(factors: &[(u64, u32)]) -> Vec<u64> {
    let mut ds = vec![1u64];
    for &(p, e) in factors {
        let len = ds.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// Divisors of `R² − 1`, from the factorisations of `R − 1` and `R + 1`.
pub fn divisors_r2m1(r: u64, sieve: Option<&SpfSieve>) -> Vec<u64> {
    let f = |n: u64| match sieve {
        Some(s) if n <= s.limit() => s.factor(n),
        _ => factor_u64(n),
    };
    divisors_from(&merge_factors(f(r - 1), f(r + 1)))
}

/// Pairs `(A, B) = (d, (R²−1)/d)` with `d ≤ R` and `A < B`, ascending in `A`.
pub fn divisor_pairs_u64(r: u64, sieve: Option<&SpfSieve>) -> Vec<(u64, u64)> {
    assert!(r >= 2, "R must be at least 2");
    let n = r * r - 1;
    divisors_r2m1(r, sieve).into_iter().take_while(|&d| d <= r).filter(|&d| d < n / d).map(|d| (d, n / d)).collect()
}

pub fn divisor_pairs(r: u64) -> Vec<PellProblem> {
    divisor_pairs_u64(r, None)
        .into_iter()
        .map(|(a, b)| PellProblem::from_u64(a, b).expect("divisor pair is a Diophantine pair"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(v0: i64, u0: i64) -> FundamentalSolution {
        FundamentalSolution { v0: v0.into(), u0: u0.into() }
    }

    #[test]
    fn fundamentals_small() {
        let p = PellProblem::from_u64(1, 3).unwrap();
        assert_eq!(p.fundamental_solutions(), vec![fs(1, 1)]);
        assert_eq!(p.fundamental_candidates(), vec![fs(-1, 1), fs(1, 1)]);
        let p = PellProblem::from_u64(1, 8).unwrap();
        assert!(p.fundamental_solutions().contains(&fs(1, 1)));
        // U0 ≤ √(4·8/12) = 1.63, so only U0 = 1 is scanned.
        let p = PellProblem::from_u64(4, 12).unwrap();
        assert_eq!(p.r(), &Integer::from(7));
        let f = p.fundamental_solutions();
        assert!(f.iter().all(|s| s.u0 == 1));
        assert!(f.contains(&fs(1, 1)));
    }

    #[test]
    fn solutions_small() {
        let p = PellProblem::from_u64(1, 3).unwrap();
        let s = p.solutions_up_to(&Integer::from(10));
        assert_eq!((s[0].v.clone(), s[0].u.clone(), s[0].q), (1.into(), 1.into(), 0));
        assert!(s.iter().any(|x| x.v == 5 && x.u == 3 && x.q == 1));
        let s = p.solutions_up_to(&Integer::from(2));
        assert_eq!(s.len(), 1);

        let p = PellProblem::from_u64(1, 8).unwrap();
        let s = p.solutions_up_to(&Integer::from(100));
        for w in s.windows(2) {
            assert!(w[1].u > w[0].u);
        }
        for x in &s {
            assert!(p.satisfies(&x.v, &x.u));
        }
        // Orbit of (1,1): U = 1, 4, 23, 134, ...; the ratio tends to 3+√8.
        let s = p.solutions_up_to(&Integer::from(1000));
        let us: Vec<_> = s.iter().filter(|x| x.origin == fs(1, 1)).map(|x| x.u.to_f64()).collect();
        assert!((us[3] / us[2] - (3.0 + 8f64.sqrt())).abs() < 0.01);
    }

    #[test]
    fn thirds_small() {
        let p = PellProblem::from_u64(1, 3).unwrap();
        assert_eq!(p.third_elements(&Integer::from(10)), vec![(Integer::from(8), Integer::from(3))]);
        assert!(p.third_elements(&Integer::from(2)).is_empty());
        let p = PellProblem::from_u64(2, 4).unwrap();
        let t = p.third_elements(&Integer::from(100));
        assert!(!t.is_empty());
        for (c, _) in t {
            let v = [Integer::from(2), Integer::from(4), c];
            assert!(crate::tuple::is_diophantine_tuple(&v).unwrap());
        }
    }

    #[test]
    fn divisor_pairs_small() {
        let ab = |r| divisor_pairs_u64(r, None);
        assert_eq!(ab(2), vec![(1, 3)]);
        assert_eq!(ab(3), vec![(1, 8), (2, 4)]);
        assert_eq!(ab(7), vec![(1, 48), (2, 24), (3, 16), (4, 12), (6, 8)]);
        let sieve = SpfSieve::new(1000);
        for r in 2..900 {
            assert_eq!(divisor_pairs_u64(r, Some(&sieve)), ab(r));
        }
    }

    #[test]
    fn rejects_bad_problems() {
        assert!(PellProblem::from_u64(3, 1).is_err());
        assert!(PellProblem::from_u64(1, 2).is_err());
        assert!(PellProblem::from_u64(0, 3).is_err());
    }
}
