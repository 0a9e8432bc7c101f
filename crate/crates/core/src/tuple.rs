//! Exact algebra of Diophantine pairs and triples.
//!
//! Everything here is big-integer arithmetic. Triples are only built through
//! validating constructors, so a `DiophantineTriple` in hand always satisfies
//! `a < b < c` and carries the exact roots of `ab+1`, `ac+1`, `bc+1`.

use rug::{Complete, Integer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TupleError {
    #[error("element {0} is not positive")]
    NonPositive(Integer),
    #[error("duplicate element {0}")]
    Duplicate(Integer),
    #[error("{0}*{1}+1 is not a perfect square")]
    NotSquare(Integer, Integer),
    #[error("{{{0}, {1}, {2}}} is an Euler triple; the operator is undefined there")]
    EulerTriple(Integer, Integer, Integer),
}

/// Exact square root: `Some(k)` iff `k*k == n`.
pub fn isqrt_exact(n: &Integer) -> Option<Integer> {
    if *n < 0 {
        return None;
    }
    let (root, rem) = n.sqrt_rem_ref().complete();
    if rem == 0 {
        Some(root)
    } else {
        None
    }
}

/// Root of `x*y+1` if it is a perfect square.
pub fn pair_root(x: &Integer, y: &Integer) -> Option<Integer> {
    let n = (x * y).complete() + 1u32;
    isqrt_exact(&n)
}

/// Checks that every pairwise product plus one is a square.
pub fn is_diophantine_tuple(elements: &[Integer]) -> Result<bool, TupleError> {
    for (i, x) in elements.iter().enumerate() {
        if *x <= 0 {
            return Err(TupleError::NonPositive(x.clone()));
        }
        if elements[..i].contains(x) {
            return Err(TupleError::Duplicate(x.clone()));
        }
    }
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            if pair_root(&elements[i], &elements[j]).is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `d₊` for any three nonnegative integers with square pairwise products plus
/// one. Zero is allowed so degenerate chains (`d₊(a, 0, b) = a + b + 2r`) can
/// be expressed without a special case.
pub fn d_plus_of(x: &Integer, y: &Integer, z: &Integer) -> Option<Integer> {
    let (r, s, t) = (pair_root(x, y)?, pair_root(x, z)?, pair_root(y, z)?);
    Some(sum_part(x, y, z) + ((r * s) * t) * 2u32)
}

/// `d₋` counterpart of [`d_plus_of`]; may be zero, never negative for valid input.
pub fn d_minus_of(x: &Integer, y: &Integer, z: &Integer) -> Option<Integer> {
    let (r, s, t) = (pair_root(x, y)?, pair_root(x, z)?, pair_root(y, z)?);
    Some(sum_part(x, y, z) - ((r * s) * t) * 2u32)
}

fn sum_part(x: &Integer, y: &Integer, z: &Integer) -> Integer {
    let xyz = (x * y).complete() * z;
    (x + y).complete() + z + xyz * 2u32
}

fn sorted3(x: Integer, y: Integer, z: Integer) -> [Integer; 3] {
    let mut v = [x, y, z];
    v.sort();
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiophantinePair {
    a: Integer,
    b: Integer,
    r: Integer,
}

impl DiophantinePair {
    /// Accepts the two elements in any order.
    pub fn new(x: Integer, y: Integer) -> Result<Self, TupleError> {
        for v in [&x, &y] {
            if *v <= 0 {
                return Err(TupleError::NonPositive(v.clone()));
            }
        }
        if x == y {
            return Err(TupleError::Duplicate(x));
        }
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        let r = pair_root(&a, &b).ok_or_else(|| TupleError::NotSquare(a.clone(), b.clone()))?;
        Ok(Self { a, b, r })
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

    /// The Euler extension `a + b + 2r`.
    pub fn euler_third(&self) -> Integer {
        (&self.a + &self.b).complete() + (&self.r * 2u32).complete()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiophantineTriple {
    a: Integer,
    b: Integer,
    c: Integer,
    r: Integer,
    s: Integer,
    t: Integer,
}

impl DiophantineTriple {
    /// Sorts the elements and validates them.
    pub fn new(x: Integer, y: Integer, z: Integer) -> Result<Self, TupleError> {
        let [a, b, c] = sorted3(x, y, z);
        if a <= 0 {
            return Err(TupleError::NonPositive(a));
        }
        if a == b || b == c {
            return Err(TupleError::Duplicate(b));
        }
        let r = pair_root(&a, &b).ok_or_else(|| TupleError::NotSquare(a.clone(), b.clone()))?;
        let s = pair_root(&a, &c).ok_or_else(|| TupleError::NotSquare(a.clone(), c.clone()))?;
        let t = pair_root(&b, &c).ok_or_else(|| TupleError::NotSquare(b.clone(), c.clone()))?;
        Ok(Self { a, b, c, r, s, t })
    }

    pub fn from_u64(a: u64, b: u64, c: u64) -> Result<Self, TupleError> {
        Self::new(Integer::from(a), Integer::from(b), Integer::from(c))
    }

    pub fn a(&self) -> &Integer {
        &self.a
    }
    pub fn b(&self) -> &Integer {
        &self.b
    }
    pub fn c(&self) -> &Integer {
        &self.c
    }
    pub fn r(&self) -> &Integer {
        &self.r
    }
    pub fn s(&self) -> &Integer {
        &self.s
    }
    pub fn t(&self) -> &Integer {
        &self.t
    }

    pub fn elements(&self) -> [&Integer; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn product(&self) -> Integer {
        (&self.a * &self.b).complete() * &self.c
    }

    fn rst2(&self) -> Integer {
        ((&self.r * &self.s).complete() * &self.t) * 2u32
    }

    pub fn d_plus(&self) -> Integer {
        sum_part(&self.a, &self.b, &self.c) + self.rst2()
    }

    pub fn d_minus(&self) -> Integer {
        sum_part(&self.a, &self.b, &self.c) - self.rst2()
    }

    /// `c = a + b + 2r`.
    pub fn is_euler(&self) -> bool {
        self.c == (&self.a + &self.b).complete() + (&self.r * 2u32).complete()
    }

    /// `{a, b, d₋}` re-sorted, with roots recomputed from scratch.
    pub fn partial(&self) -> Result<DiophantineTriple, TupleError> {
        if self.is_euler() {
            return Err(TupleError::EulerTriple(self.a.clone(), self.b.clone(), self.c.clone()));
        }
        DiophantineTriple::new(self.a.clone(), self.b.clone(), self.d_minus())
    }

    /// Walks the operator down to the generating Euler triple.
    pub fn classify(&self) -> TripleClassification {
        let mut chain = vec![self.clone()];
        let mut d_minus_values = vec![self.d_minus()];
        while !chain.last().unwrap().is_euler() {
            let next = chain.last().unwrap().partial().expect("non-Euler triple has a valid image");
            d_minus_values.push(next.d_minus());
            chain.push(next);
        }
        TripleClassification { degree: chain.len() - 1, chain, d_minus_values }
    }

    pub fn extend_regular(&self) -> RegularQuadruple {
        let d = self.d_plus();
        let x = (&self.a * &self.t).complete() + (&self.r * &self.s).complete();
        let y = (&self.b * &self.s).complete() + (&self.r * &self.t).complete();
        let z = (&self.c * &self.r).complete() + (&self.s * &self.t).complete();
        for (e, root) in [(&self.a, &x), (&self.b, &y), (&self.c, &z)] {
            let n = (e * &d).complete() + 1u32;
            assert_eq!(isqrt_exact(&n).as_ref(), Some(root), "closed-form root disagrees with exact square root");
        }
        RegularQuadruple { triple: self.clone(), d, x, y, z }
    }
}

impl std::fmt::Display for DiophantineTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}, {}, {}}}", self.a, self.b, self.c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleClassification {
    pub degree: usize,
    /// Input first, Euler triple last.
    pub chain: Vec<DiophantineTriple>,
    /// `d₋` of each chain element; the last one is zero.
    pub d_minus_values: Vec<Integer>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularQuadruple {
    pub triple: DiophantineTriple,
    pub d: Integer,
    pub x: Integer,
    pub y: Integer,
    pub z: Integer,
}

/// Free-function forms mirroring the methods.
pub fn d_plus(t: &DiophantineTriple) -> Integer {
    t.d_plus()
}
pub fn d_minus(t: &DiophantineTriple) -> Integer {
    t.d_minus()
}
pub fn is_euler_triple(t: &DiophantineTriple) -> bool {
    t.is_euler()
}
pub fn partial_operator(t: &DiophantineTriple) -> Result<DiophantineTriple, TupleError> {
    t.partial()
}
pub fn classify(t: &DiophantineTriple) -> TripleClassification {
    t.classify()
}
pub fn extend_regular(t: &DiophantineTriple) -> RegularQuadruple {
    t.extend_regular()
}
