//! Exhaustive small-scale search, used as a sanity oracle and as the triple
//! corpus for property checks.

use crate::pell::{divisor_pairs_u64, SpfSieve};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadruple {
    pub elements: [u64; 4],
    /// `d = d₊(a, b, c)`, equivalently `(a+b−c−d)² = 4(ab+1)(cd+1)`.
    pub regular: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub limit: u64,
    pub pairs: u64,
    pub triples: Vec<[u64; 3]>,
    pub quadruples: Vec<Quadruple>,
    pub quintuples: Vec<[u64; 5]>,
}

pub fn is_square_u128(n: u128) -> bool {
    let r = n.isqrt();
    r * r == n
}

fn pair(x: u64, y: u64) -> bool {
    is_square_u128(x as u128 * y as u128 + 1)
}

/// `lower[b]` lists every `a < b` with `ab + 1` a square, for `b ≤ limit`.
/// Each pair has `ab = r² − 1` with `r ≤ limit`, so the divisors of `r² − 1`
/// cover them all.
pub fn lower_partners(limit: u64) -> Vec<Vec<u32>> {
    assert!(limit < u32::MAX as u64);
    let mut lower = vec![Vec::new(); limit as usize + 1];
    if limit < 3 {
        return lower;
    }
    let sieve = SpfSieve::new(limit + 1);
    for r in 2..=limit {
        for (a, b) in divisor_pairs_u64(r, Some(&sieve)) {
            if b <= limit {
                lower[b as usize].push(a as u32);
            }
        }
    }
    for l in &mut lower {
        l.sort_unstable();
    }
    lower
}

/// `(a+b−c−d)² = 4(ab+1)(cd+1)`, in exact 128-bit arithmetic.
pub fn is_regular_quadruple(e: [u64; 4]) -> bool {
    let [a, b, c, d] = e.map(|x| x as i128);
    let lhs = (a + b - c - d) * (a + b - c - d);
    lhs == 4 * (a * b + 1) * (c * d + 1)
}

/// All triples `a < b < c ≤ limit`, ordered by `c` then `a` then `b`.
pub fn triples_up_to(limit: u64) -> Vec<[u64; 3]> {
    let lower = lower_partners(limit);
    let mut out = Vec::new();
    for (c, s) in lower.iter().enumerate() {
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i + 1..] {
                if pair(a as u64, b as u64) {
                    out.push([a as u64, b as u64, c as u64]);
                }
            }
        }
    }
    out
}

/// Every Diophantine triple, quadruple and quintuple with largest element at
/// most `limit`. Tuples are grown by largest element: all smaller elements lie
/// in the partner list of the maximum, so the search is a clique enumeration
/// inside each list.
pub fn brute_force_search(limit: u64) -> SearchResult {
    let lower = lower_partners(limit);
    let mut res = SearchResult { limit, ..Default::default() };
    for (m, s) in lower.iter().enumerate() {
        let m = m as u64;
        res.pairs += s.len() as u64;
        for (i, &a) in s.iter().enumerate() {
            let a = a as u64;
            for (j, &b) in s.iter().enumerate().skip(i + 1) {
                let b = b as u64;
                if !pair(a, b) {
                    continue;
                }
                res.triples.push([a, b, m]);
                for (k, &c) in s.iter().enumerate().skip(j + 1) {
                    let c = c as u64;
                    if !(pair(a, c) && pair(b, c)) {
                        continue;
                    }
                    let e = [a, b, c, m];
                    res.quadruples.push(Quadruple { elements: e, regular: is_regular_quadruple(e) });
                    for &d in &s[k + 1..] {
                        let d = d as u64;
                        if pair(a, d) && pair(b, d) && pair(c, d) {
                            res.quintuples.push([a, b, c, d, m]);
                        }
                    }
                }
            }
        }
    }
    res
}
