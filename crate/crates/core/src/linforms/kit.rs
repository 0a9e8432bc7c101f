//! The three-logarithm "kit" lower bound, applied to `Λ₁` with
//! `b₁ = 2h`, `b₂ = 2j`, `b₃ = 1` and `𝒟 = 4`.

use super::{num, LinformsError};
use crate::real::Interval;
use serde::{Deserialize, Serialize};

pub const KIT_D: u64 = 4;
/// `log α₃ < log(1 + √(1/3)) < 0.46`.
pub const LOG_ALPHA3_CAP: &str = "0.46";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KitParams {
    pub rho: f64,
    pub chi: f64,
    pub l: u64,
    pub m: f64,
}

/// Every derived quantity of the kit at one point `(log α₁, log α₂, log c)`.
#[derive(Debug, Clone)]
pub struct KitCheck {
    pub a: [Interval; 3],
    pub omega: Interval,
    pub k: Interval,
    pub c: [Interval; 3],
    pub c0: Interval,
    pub g: Interval,
    pub b_prime: Interval,
    pub b_tilde: Interval,
    /// (i) left side.
    pub lhs: Interval,
    /// (ii) `(𝒟+1) log L + 2 log K`.
    pub log_terms: Interval,
    /// (iii) `3gL²c₀Ω`.
    pub g_term: Interval,
    /// (iv) `𝒟(K−1) log b̃`.
    pub b_term: Interval,
    pub holds: bool,
    /// `𝓜 = χ𝓥` dominates the other three candidates.
    pub calm_is_chi_v: bool,
    pub r1s1t1: [Interval; 3],
}

impl KitParams {
    pub fn validate(&self) -> Result<(), LinformsError> {
        let bad = |m: String| Err(LinformsError::Precondition(m));
        if self.l < 4 + KIT_D {
            return bad(format!("L = {} < 4 + 𝒟", self.l));
        }
        if self.m < 3.0 {
            return bad(format!("M = {} < 3", self.m));
        }
        if self.rho < std::f64::consts::E {
            return bad(format!("ρ = {} < e", self.rho));
        }
        if !(self.chi > 0.0 && self.chi <= 2.0) {
            return bad(format!("χ = {} outside (0, 2]", self.chi));
        }
        Ok(())
    }

    pub fn lambda(&self, prec: u32) -> Interval {
        num(prec, self.rho).ln()
    }

    /// `a₁ = (ρ+3) log α₁`, `a₂ = (ρ+3) log α₂`, `a₃ = 0.46(ρ−1) + 8 log c`.
    pub fn a_values(&self, la1: &Interval, la2: &Interval, lc: &Interval) -> [Interval; 3] {
        let p = la1.prec();
        let r3 = num(p, self.rho + 3.0);
        let a3 = super::dec(p, LOG_ALPHA3_CAP) * num(p, self.rho - 1.0) + lc.scale_u(2 * KIT_D);
        [&r3 * la1, &r3 * la2, a3]
    }

    /// `c₁`, `c₂`, `c₃` for a given lower bound on `A = min aᵢ`.
    pub fn c_values(&self, a_min: &Interval) -> [Interval; 3] {
        let p = a_min.prec();
        let (m, l) = (num(p, self.m), Interval::from_u64(p, self.l));
        let two_thirds = num(p, 2.0) / num(p, 3.0);
        let ml = &m * &l;
        let c1 = (&num(p, self.chi) * &ml).powf(&two_thirds).max(&(ml.scale_u(2) / a_min).sqrt());
        let c2 =
            (num(p, 2.0).powf(&(num(p, 1.0) / num(p, 3.0))) * ml.powf(&two_thirds)).max(&((&m / a_min).sqrt() * &l));
        let c3 = (m.powi(2).scale_u(6)).powf(&(num(p, 1.0) / num(p, 3.0))) * &l;
        [c1, c2, c3]
    }

    /// Evaluates the kit at one point with `b′` bounded through `h ≤ h_cap`:
    /// `b′ < (4h+2)(2h+2)/(a₂a₃)`.
    pub fn evaluate(
        &self,
        la1: &Interval,
        la2: &Interval,
        lc: &Interval,
        h_cap: &Interval,
    ) -> Result<KitCheck, LinformsError> {
        self.validate()?;
        let p = la1.prec();
        let a = self.a_values(la1, la2, lc);
        let omega = &(&a[0] * &a[1]) * &a[2];
        let a_min = a[0].min(&a[1]).min(&a[2]);
        if !omega.gt(&super::dec(p, "2.5")) || !a_min.gt(&super::dec(p, "0.62")) {
            return Err(LinformsError::Precondition("Ω ≥ 2.5 and A ≥ 0.62 not certified".into()));
        }
        let l = Interval::from_u64(p, self.l);
        let m = num(p, self.m);
        let k = (&(&m * &omega) * &l).floor();
        let c = self.c_values(&a_min);
        let prods = [&a[1] * &a[2], &a[0] * &a[2], &a[0] * &a[1]];
        // rows: R, S, T; columns: c₁, c₂, c₃
        let mut sums = Vec::new();
        let mut firsts = Vec::new();
        for pr in &prods {
            let parts: Vec<Interval> = c.iter().map(|ci| (ci * pr).floor()).collect();
            firsts.push(parts[0].clone());
            sums.push(&(&(&parts[0] + &parts[1]) + &parts[2]) + &num(p, 1.0));
        }
        let c0 = (0..3).map(|i| &sums[i] / &(&l * &prods[i])).reduce(|x, y| x.max(&y)).unwrap();
        let rst = &(&sums[0] * &sums[1]) * &sums[2];
        let g = num(p, 0.25) - &(&k.powi(2) * &l) / &rst.scale_u(12);
        let two_h = h_cap.scale_u(2);
        let b_prime = &(&two_h.scale_u(2) + &num(p, 2.0)) * &(&two_h + &num(p, 2.0)) / (&a[1] * &a[2]);
        let b_tilde = &(&(&Interval::from_u64(p, 3).exp() * &c0.powi(2)) * &omega.powi(2)) * &l.powi(2)
            / k.powi(2).scale_u(4)
            * &b_prime;
        let lambda = self.lambda(p);
        let kl = &k * &l;
        let lhs_inner = &(&(&kl / &num(p, 2.0) + &(&l / &num(p, 4.0))) - &num(p, 1.0)) - &(k.scale_u(2) / l.scale_u(3));
        let lhs = &lhs_inner * &lambda + super::dec(p, "1.36").ln().scale_u(2 * KIT_D);
        let log_terms = l.ln().scale_u(KIT_D + 1) + k.ln().scale_u(2);
        let g_term = &(&g.scale_u(3) * &l.powi(2)) * &(&c0 * &omega);
        let b_term = (&k - &num(p, 1.0)).scale_u(KIT_D) * b_tilde.ln();
        let rhs = &(&log_terms + &g_term) + &b_term;
        let holds = lhs.lo() >= rhs.hi();
        let f1: Vec<Interval> = firsts.iter().map(|x| x + &num(p, 1.0)).collect();
        let v = (&(&f1[0] * &f1[1]) * &f1[2]).sqrt();
        let chi_v = &num(p, self.chi) * &v;
        let pair_max = (&firsts[0] + &firsts[1]).max(&(&firsts[1] + &firsts[2])).max(&(&firsts[0] + &firsts[2]));
        let calm_is_chi_v = chi_v.gt(&(&pair_max + &num(p, 1.0)));
        Ok(KitCheck {
            a,
            omega,
            k,
            c,
            c0,
            g,
            b_prime,
            b_tilde,
            lhs,
            log_terms,
            g_term,
            b_term,
            holds,
            calm_is_chi_v,
            r1s1t1: [firsts[0].clone(), firsts[1].clone(), firsts[2].clone()],
        })
    }
}

/// Whether condition (i) ≥ (ii) + (iii) + (iv) is certified at the point.
pub fn kit_condition_holds(
    p: &KitParams,
    log_alpha1: &Interval,
    log_alpha2: &Interval,
    log_c: &Interval,
    h_cap: &Interval,
) -> Result<bool, LinformsError> {
    Ok(p.evaluate(log_alpha1, log_alpha2, log_c, h_cap)?.holds)
}

/// Certified coefficient `κ` in `log|Λ₁| > −κ·log α₁·log α₂·log c`, valid for
/// all `log c ≥ log_c_min` and `log α₁·log α₂·log c ≥ x_min`.
///
/// From `(KL + log(3KL))λ ≤ (ML²Ω + log(3ML²Ω))λ` with
/// `Ω = 8(ρ+3)²·X·(1 + 0.0575(ρ−1)/log c)`, `X = log α₁ log α₂ log c`.
pub fn kit_main_bound(p: &KitParams, log_c_min: &Interval, x_min: &Interval) -> Result<Interval, LinformsError> {
    p.validate()?;
    let prec = log_c_min.prec();
    let shift = super::dec(prec, LOG_ALPHA3_CAP) * num(prec, p.rho - 1.0) / num(prec, 8.0);
    let omega_per_x = num(prec, 8.0 * (p.rho + 3.0) * (p.rho + 3.0)) * (&num(prec, 1.0) + &(&shift / log_c_min));
    let ml2 = num(prec, p.m) * Interval::from_u64(prec, p.l).powi(2);
    let main = &ml2 * &omega_per_x;
    let omega_min = &omega_per_x * x_min;
    let log_part = (&ml2 * &omega_min).scale_u(3).ln() / x_min;
    Ok((main + log_part) * p.lambda(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linforms::{dec, PREC};

    fn first() -> KitParams {
        KitParams { rho: 10.0, chi: 2.0, l: 625, m: 12.1 }
    }

    #[test]
    fn c_values_match_displayed() {
        let a_min = num(PREC, 13.0) * num(PREC, 1e6).sqrt().ln();
        let c = first().c_values(&a_min);
        assert!((c[0].mid_f64() - 611.59452).abs() < 1e-4);
        assert!((c[1].mid_f64() - 485.42289).abs() < 1e-4);
        assert!((c[2].mid_f64() - 5985.77903).abs() < 1e-4);
    }

    #[test]
    fn main_bound_first_parameters() {
        let lc = num(PREC, 1e6).ln();
        let x = &(&num(PREC, 10.0).ln() * &num(PREC, 2e4).ln()) * &lc;
        let k = kit_main_bound(&first(), &lc, &x).unwrap();
        assert!((k.hi_f64() / 1.52656e10 - 1.0).abs() < 1e-3, "{k}");
        let mut doubled = first();
        doubled.m *= 2.0;
        assert!(kit_main_bound(&doubled, &lc, &x).unwrap().gt(&k));
    }

    #[test]
    fn condition_at_a_point() {
        let (l1, l2, lc) = (num(PREC, 5.0), num(PREC, 20.0), num(PREC, 25.0));
        assert!(kit_condition_holds(&first(), &l1, &l2, &lc, &dec(PREC, "1.55e17")).unwrap());
    }

    #[test]
    fn small_l_rejected() {
        let p = KitParams { l: 4, ..first() };
        let one = num(PREC, 3.0);
        assert!(matches!(kit_condition_holds(&p, &one, &one, &one, &one), Err(LinformsError::Precondition(_))));
    }
}
