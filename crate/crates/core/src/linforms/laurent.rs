//! Laurent's lower bound for linear forms in two logarithms.

use super::{num, LinformsError};
use crate::real::Interval;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaurentParams {
    pub varrho: f64,
    pub mu: f64,
}

/// Upper bounds for `ω`, `θ`, `C`, `C′`, valid for every `H ≥ h_big` and
/// `a₁′ ≥ a1`, `a₂′ ≥ a2` (all four decrease in `H`, `C` and `C′` also in the
/// `aᵢ′`).
#[derive(Debug, Clone)]
pub struct LaurentConstants {
    pub sigma: Interval,
    pub lambda: Interval,
    pub h_big: Interval,
    pub omega: Interval,
    pub theta: Interval,
    pub c: Interval,
    pub c_prime: Interval,
}

impl LaurentParams {
    pub fn validate(&self) -> Result<(), LinformsError> {
        if self.varrho <= 1.0 {
            return Err(LinformsError::Precondition(format!("ϱ = {} ≤ 1", self.varrho)));
        }
        if !(1.0 / 3.0..=1.0).contains(&self.mu) {
            return Err(LinformsError::Precondition(format!("μ = {} outside [1/3, 1]", self.mu)));
        }
        Ok(())
    }

    /// `σ = (1 + 2μ − μ²)/2`.
    pub fn sigma(&self, prec: u32) -> Interval {
        let mu = num(prec, self.mu);
        (&(&num(prec, 1.0) + &mu.scale_u(2)) - &mu.powi(2)) / num(prec, 2.0)
    }

    /// `λ′ = σ log ϱ`.
    pub fn lambda_prime(&self, prec: u32) -> Interval {
        self.sigma(prec) * num(prec, self.varrho).ln()
    }

    /// For `D = 4`: the part of `h′ ≥ 4(log(b₁/a₂′ + b₂/a₁′) + log λ′ + 1.75) + 0.06`
    /// that does not depend on the `bᵢ`.
    pub fn h_prime_offset(&self, prec: u32) -> Interval {
        (self.lambda_prime(prec).ln() + super::dec(prec, "1.75")).scale_u(4) + super::dec(prec, "0.06")
    }

    pub fn constants(&self, h_big: &Interval, a1: &Interval, a2: &Interval) -> Result<LaurentConstants, LinformsError> {
        self.validate()?;
        let p = h_big.prec();
        let sigma = self.sigma(p);
        let lambda = self.lambda_prime(p);
        let one = num(p, 1.0);
        let root = (&one + &h_big.powi(2).scale_u(4).recip()).sqrt();
        let omega = (&one + &root).scale_u(2);
        let theta = &root + &h_big.scale_u(2).recip();
        let quarter = num(p, 0.25);
        let t2 = &(&(&lambda.scale_u(8) * &omega.powf(&num(p, 1.25))) * &theta.powf(&quarter))
            / (&(a1 * a2).sqrt().scale_u(3) * &h_big.sqrt());
        let t3 = &(&(&a1.recip() + &a2.recip()) * &(&lambda * &omega)).scale_u(4) / &h_big.scale_u(3);
        let inner = (&(&omega.powi(2) / &num(p, 9.0)) + &t2) + t3;
        let bracket = &(&omega / &num(p, 6.0)) + &(inner.sqrt() / num(p, 2.0));
        let mu = num(p, self.mu);
        let c = &(&mu / &(&lambda.powi(3) * &sigma)) * &bracket.powi(2);
        let c_prime = (&(&(&c * &sigma) * &omega) * &theta / (&lambda.powi(3) * &mu)).sqrt();
        Ok(LaurentConstants { sigma, lambda, h_big: h_big.clone(), omega, theta, c, c_prime })
    }
}

impl LaurentConstants {
    /// `h′ + λ′/σ`.
    pub fn t(&self, h_prime: &Interval) -> Interval {
        h_prime + &(&self.lambda / &self.sigma)
    }
}

/// `−C T² a₁′a₂′ − √(ωθ) T − log(C′ T² a₁′a₂′)` with `T = h′ + λ′/σ`, after
/// checking `h′ ≥ λ′`, `h′ ≥ 2 log 2`, `aᵢ′ ≥ 1` and `a₁′a₂′ ≥ λ′²`.
pub fn laurent_lower_bound(
    k: &LaurentConstants,
    h_prime: &Interval,
    a1: &Interval,
    a2: &Interval,
) -> Result<Interval, LinformsError> {
    let p = h_prime.prec();
    let hyp = |ok: bool, what: &str| if ok { Ok(()) } else { Err(LinformsError::Hypothesis(what.to_string())) };
    hyp(k.lambda.le(h_prime), "h′ ≥ λ′")?;
    hyp(h_prime.gt(&num(p, 2.0).ln().scale_u(2)), "h′ ≥ 2 log 2")?;
    hyp(a1.gt(&num(p, 1.0)) && a2.gt(&num(p, 1.0)), "aᵢ′ ≥ 1")?;
    let prod = a1 * a2;
    hyp(prod.gt(&k.lambda.powi(2)), "a₁′a₂′ ≥ λ′²")?;
    let t = k.t(h_prime);
    let main = &(&k.c * &t.powi(2)) * &prod;
    let mid = &(&k.omega * &k.theta).sqrt() * &t;
    let log = (&(&k.c_prime * &t.powi(2)) * &prod).ln();
    Ok(-(main + mid + log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linforms::PREC;

    #[test]
    fn sigma_closed_forms() {
        let p = LaurentParams { varrho: 61.0, mu: 0.7 };
        assert!((p.sigma(PREC).mid_f64() - 0.955).abs() < 1e-12);
        assert!(p.lambda_prime(PREC).hi_f64() < 3.93);
        let one = LaurentParams { varrho: 2.0, mu: 1.0 };
        assert!((one.sigma(PREC).mid_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_mu() {
        let p = LaurentParams { varrho: 2.0, mu: 0.2 };
        assert!(p.validate().is_err());
    }
}
