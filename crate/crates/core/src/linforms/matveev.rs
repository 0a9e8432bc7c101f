//! Matveev's lower bound for linear forms in `N` logarithms, totally real case.

use super::PREC;
use crate::real::Interval;

/// `C(N) = 8/(N−1)! · (N+2)(2N+3)(4e(N+1))^{N+1}`.
pub fn matveev_c_n(prec: u32, n: u32) -> Interval {
    assert!(n >= 2, "N must be at least 2");
    let fact: u64 = (1..n as u64).product();
    let e = Interval::e(prec);
    let base = e.scale_u(4 * (n as u64 + 1));
    let lead = Interval::from_u64(prec, 8 * (n as u64 + 2) * (2 * n as u64 + 3)) / Interval::from_u64(prec, fact);
    lead * base.powi(n + 1)
}

/// `C₀ = log(e^{4.4N+7} N^{5.5} D² log(eD))`, expanded so no huge exponentials
/// are formed.
pub fn matveev_c0(prec: u32, n: u32, d: u32) -> Interval {
    let nn = Interval::from_u64(prec, n as u64);
    let dd = Interval::from_u64(prec, d as u64);
    let one = Interval::from_u64(prec, 1);
    let lin = &Interval::from_decimal(prec, "4.4").scale_u(n as u64) + &Interval::from_u64(prec, 7);
    lin + Interval::from_decimal(prec, "5.5") * nn.ln() + dd.ln().scale_u(2) + (&one + &dd.ln()).ln()
}

/// `C(N)·C₀·D²`, the part of the bound that depends only on `N` and `D`.
pub fn matveev_constant(n: u32, d: u32) -> Interval {
    matveev_constant_at(PREC, n, d)
}

pub(crate) fn matveev_constant_at(prec: u32, n: u32, d: u32) -> Interval {
    assert!(d >= 1, "D must be positive");
    let dd = Interval::from_u64(prec, d as u64);
    matveev_c_n(prec, n) * matveev_c0(prec, n, d) * dd.powi(2)
}

/// `1.5·e·D·log(eD)`, the factor multiplying `E` inside `W₀`. For `D = 4`
/// this is the `38.92` in `W₀ ≤ log(38.92h)`.
pub fn matveev_w0_factor(d: u32) -> Interval {
    matveev_w0_factor_at(PREC, d)
}

pub(crate) fn matveev_w0_factor_at(prec: u32, d: u32) -> Interval {
    let dd = Interval::from_u64(prec, d as u64);
    let one = Interval::from_u64(prec, 1);
    Interval::from_decimal(prec, "1.5") * Interval::e(prec) * &dd * (&one + &dd.ln())
}

/// Magnitude of Matveev's bound, `C(N)C₀D²·W₀·A₁⋯A_N` with
/// `W₀ = log(1.5eD log(eD)·E)`, so that `log|Λ| > −matveev_bound(…)`.
pub fn matveev_bound(d: u32, heights: &[Interval], e: &Interval) -> Interval {
    let prec = e.prec();
    let n = heights.len() as u32;
    let w0 = (&matveev_w0_factor_at(prec, d) * e).ln();
    let omega = heights.iter().fold(Interval::from_u64(prec, 1), |acc, a| &acc * a);
    &(&matveev_constant_at(prec, n, d) * &w0) * &omega
}

/// Coefficient of `W₀·log α₁·log α₂·log c` for `Λ₁`: `N = 3`, `D = 4` and
/// `Ω = A₁A₂A₃ = (2 log α₁)(2 log α₂)(4 log c)`.
pub fn lambda1_matveev_coefficient() -> Interval {
    lambda1_matveev_coefficient_at(PREC)
}

pub(crate) fn lambda1_matveev_coefficient_at(prec: u32) -> Interval {
    matveev_constant_at(prec, 3, 4).scale_u(16)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda1_coefficient() {
        let c = lambda1_matveev_coefficient();
        assert!((c.mid_f64() / 4.928e12 - 1.0).abs() < 0.002, "{c}");
    }

    #[test]
    fn w0_factor() {
        let w = matveev_w0_factor(4);
        assert!(w.hi_f64() <= 38.92 && w.lo_f64() > 38.91);
    }

    #[test]
    fn monotone_in_degree() {
        assert!(matveev_constant(3, 1).lt(&matveev_constant(3, 4)));
        let two = matveev_constant(2, 2);
        assert!(two.is_positive() && two.hi_f64().is_finite());
    }
}
