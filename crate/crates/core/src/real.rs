//! Closed intervals with MPFR endpoints and outward rounding.
//!
//! Every operation rounds the lower endpoint toward −∞ and the upper toward
//! +∞, so the true value of any expression built from exact inputs lies inside
//! the result. Precision is carried by the endpoints; binary operations use the
//! larger of the two.

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

fn down<T>(prec: u32, v: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, v, Round::Down).0
}

fn up<T>(prec: u32, v: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, v, Round::Up).0
}

impl Interval {
    /// Exact point when representable, otherwise the tightest enclosure at `prec`.
    pub fn from_int(prec: u32, n: &Integer) -> Self {
        Self { lo: down(prec, n), hi: up(prec, n) }
    }

    pub fn from_u64(prec: u32, n: u64) -> Self {
        Self { lo: down(prec, n), hi: up(prec, n) }
    }

    /// Exact point; `prec ≥ 53` keeps every `f64` exact.
    pub fn from_f64(prec: u32, x: f64) -> Self {
        assert!(x.is_finite(), "non-finite point");
        Self { lo: down(prec, x), hi: up(prec, x) }
    }

    pub fn from_rational(prec: u32, q: &Rational) -> Self {
        Self { lo: down(prec, q), hi: up(prec, q) }
    }

    /// Decimal literal such as `"6.77e25"` or `"0.46"`.
    pub fn from_decimal(prec: u32, s: &str) -> Self {
        let parsed = || Float::parse(s).unwrap_or_else(|_| panic!("bad decimal literal {s}"));
        Self { lo: down(prec, parsed()), hi: up(prec, parsed()) }
    }

    pub fn from_bounds(lo: Float, hi: Float) -> Self {
        assert!(lo <= hi, "inverted interval");
        Self { lo, hi }
    }

    /// Hull of two intervals.
    pub fn hull(&self, other: &Self) -> Self {
        let p = self.prec().max(other.prec());
        Self { lo: down(p, self.lo.clone().min(&other.lo)), hi: up(p, self.hi.clone().max(&other.hi)) }
    }

    pub fn e(prec: u32) -> Self {
        Self::from_u64(prec, 1).exp()
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }
    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64_round(Round::Down)
    }
    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64_round(Round::Up)
    }
    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo.to_f64() + self.hi.to_f64())
    }

    pub fn width(&self) -> Float {
        up(self.prec(), &self.hi - &self.lo)
    }

    pub fn contains(&self, x: &Float) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Certainly `self < other`.
    pub fn lt(&self, other: &Self) -> bool {
        self.hi < other.lo
    }
    pub fn gt(&self, other: &Self) -> bool {
        self.lo > other.hi
    }
    pub fn le(&self, other: &Self) -> bool {
        self.hi <= other.lo
    }
    pub fn is_positive(&self) -> bool {
        self.lo > 0
    }

    pub fn sqrt(&self) -> Self {
        assert!(self.lo >= 0, "sqrt of possibly negative interval");
        let p = self.prec();
        Self { lo: down(p, self.lo.sqrt_ref()), hi: up(p, self.hi.sqrt_ref()) }
    }

    pub fn ln(&self) -> Self {
        assert!(self.lo > 0, "log of possibly nonpositive interval");
        let p = self.prec();
        Self { lo: down(p, self.lo.ln_ref()), hi: up(p, self.hi.ln_ref()) }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        Self { lo: down(p, self.lo.exp_ref()), hi: up(p, self.hi.exp_ref()) }
    }

    pub fn recip(&self) -> Self {
        assert!(self.lo > 0 || self.hi < 0, "reciprocal of interval containing zero");
        let p = self.prec();
        Self { lo: down(p, 1 / &self.hi), hi: up(p, 1 / &self.lo) }
    }

    /// Integer power, `n ≥ 0`; exact monotone handling for nonnegative bases.
    pub fn powi(&self, n: u32) -> Self {
        let p = self.prec();
        if self.lo >= 0 || n % 2 == 1 {
            Self { lo: down(p, (&self.lo).pow(n)), hi: up(p, (&self.hi).pow(n)) }
        } else if self.hi <= 0 {
            Self { lo: down(p, (&self.hi).pow(n)), hi: up(p, (&self.lo).pow(n)) }
        } else {
            let m = self.lo.clone().abs().max(&self.hi.clone().abs());
            Self { lo: Float::with_val(p, 0), hi: up(p, m.pow(n)) }
        }
    }

    /// `self^y` for a positive base via `exp(y ln self)`.
    pub fn powf(&self, y: &Self) -> Self {
        (&self.ln() * y).exp()
    }

    pub fn abs(&self) -> Self {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            -self
        } else {
            let p = self.prec();
            let m = self.lo.clone().abs().max(&self.hi);
            Self { lo: Float::with_val(p, 0), hi: m }
        }
    }

    pub fn max(&self, other: &Self) -> Self {
        let p = self.prec().max(other.prec());
        Self { lo: down(p, self.lo.clone().max(&other.lo)), hi: up(p, self.hi.clone().max(&other.hi)) }
    }

    pub fn min(&self, other: &Self) -> Self {
        let p = self.prec().max(other.prec());
        Self { lo: down(p, self.lo.clone().min(&other.lo)), hi: up(p, self.hi.clone().min(&other.hi)) }
    }

    pub fn scale_u(&self, k: u64) -> Self {
        let k = Interval::from_u64(self.prec(), k);
        self * &k
    }

    /// Smallest integer `≥` every point of the interval.
    pub fn ceil_hi(&self) -> Integer {
        self.hi.clone().ceil().to_integer().expect("finite bound")
    }

    /// Largest integer `≤` every point of the interval.
    pub fn floor_lo(&self) -> Integer {
        self.lo.clone().floor().to_integer().expect("finite bound")
    }

    /// Interval of floors, `[⌊lo⌋, ⌊hi⌋]`.
    pub fn floor(&self) -> Self {
        let p = self.prec();
        Self { lo: self.lo.clone().floor(), hi: up(p, self.hi.clone().floor()) }
    }

    /// Both endpoints as exact rationals.
    pub fn rational_bounds(&self) -> (Rational, Rational) {
        (self.lo.to_rational().expect("finite bound"), self.hi.to_rational().expect("finite bound"))
    }

    /// Enclosure of the distance to the nearest integer over the interval:
    /// the lower end is 0 if an integer is inside, the upper end is 1/2 if a
    /// half-integer is inside. Decided on the exact rational endpoints.
    pub fn dist_to_nearest_int(&self) -> Self {
        let p = self.prec();
        let (lo, hi) = self.rational_bounds();
        let half = Rational::from((1, 2));
        let fl = |x: &Rational| x.clone().floor();
        let dist = |x: &Rational| {
            let f = fl(x);
            let d1 = x.clone() - &f;
            let d2 = Rational::from(1) - &d1;
            d1.min(d2)
        };
        let integer_inside = fl(&lo) != fl(&hi) || lo.is_integer();
        let lo_h = lo.clone() - &half;
        let half_inside = fl(&lo_h) != fl(&(hi.clone() - &half)) || lo_h.is_integer();
        let (dl, dh) = (dist(&lo), dist(&hi));
        let out_lo = if integer_inside { Rational::new() } else { dl.clone().min(dh.clone()) };
        let out_hi = if half_inside { half } else { dl.max(dh) };
        Self { lo: down(p, &out_lo), hi: up(p, &out_hi) }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12e}, {:.12e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        let p = self.prec().max(o.prec());
        Interval { lo: down(p, &self.lo + &o.lo), hi: up(p, &self.hi + &o.hi) }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        let p = self.prec().max(o.prec());
        Interval { lo: down(p, &self.lo - &o.hi), hi: up(p, &self.hi - &o.lo) }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let p = self.prec().max(o.prec());
        if self.lo >= 0 && o.lo >= 0 {
            return Interval { lo: down(p, &self.lo * &o.lo), hi: up(p, &self.hi * &o.hi) };
        }
        let pairs = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let mut lo = down(p, pairs[0].0 * pairs[0].1);
        let mut hi = up(p, pairs[0].0 * pairs[0].1);
        for (x, y) in &pairs[1..] {
            lo = lo.min(&down(p, *x * *y));
            hi = hi.max(&up(p, *x * *y));
        }
        Interval { lo, hi }
    }
}

impl Div for &Interval {
    type Output = Interval;
    fn div(self, o: &Interval) -> Interval {
        let p = self.prec().max(o.prec());
        assert!(o.lo > 0 || o.hi < 0, "division by interval containing zero");
        if self.lo >= 0 && o.lo > 0 {
            return Interval { lo: down(p, &self.lo / &o.hi), hi: up(p, &self.hi / &o.lo) };
        }
        let pairs = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let mut lo = down(p, pairs[0].0 / pairs[0].1);
        let mut hi = up(p, pairs[0].0 / pairs[0].1);
        for (x, y) in &pairs[1..] {
            lo = lo.min(&down(p, *x / *y));
            hi = hi.max(&up(p, *x / *y));
        }
        Interval { lo, hi }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Interval> for Interval {
            type Output = Interval;
            fn $m(self, o: Interval) -> Interval {
                (&self).$m(&o)
            }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, o: &Interval) -> Interval {
                (&self).$m(o)
            }
        }
        impl $tr<Interval> for &Interval {
            type Output = Interval;
            fn $m(self, o: Interval) -> Interval {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}
