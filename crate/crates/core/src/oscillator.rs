//! Harmonic oscillator `h0 = -d^2/dx^2 + x^2/4 - 1/2` with `E_n = n`, and
//! closed-form references for its double transformations over `{k, k+1}`.

use num::{BigInt, Zero};

use crate::darboux::{build_transform, crum_krein_apply, LevelSelection};
use crate::error::{Error, Result};
use crate::gaussfun::GaussFun;
use crate::model::SolvableModel;
use crate::polycore::{factorial, hermite_he, int, rat, signum, NormValue, Poly, RatFun, Rational};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Oscillator;

fn gaussian_weight() -> Rational {
    int(-1)
}

fn factorial_q(n: u32) -> Rational {
    Rational::from_integer(factorial(n))
}

impl SolvableModel for Oscillator {
    fn name(&self) -> &str {
        "oscillator"
    }

    fn potential(&self) -> RatFun {
        RatFun::from_poly(Poly::new(vec![rat(-1, 2), int(0), rat(1, 4)]))
    }

    fn eigenvalue(&self, level: u32) -> Rational {
        int(level as i64)
    }

    fn eigenfunction(&self, level: u32) -> GaussFun {
        phi_unnormalized(level).0
    }

    fn squared_norm(&self, level: u32) -> NormValue {
        phi_unnormalized(level).1
    }
}

/// `He_n(x) exp(-x^2/4)` with its squared norm `n! sqrt(2 pi)`.
pub fn phi_unnormalized(n: u32) -> (GaussFun, NormValue) {
    (
        GaussFun::from_poly(hermite_he(n), gaussian_weight()),
        NormValue::new(factorial_q(n), 1),
    )
}

/// `J_k = sum_{i=0}^{k} (k!/i!) He_i^2`, the Wronskian of `He_k, He_{k+1}`.
pub fn jk_polynomial(k: u32) -> Poly {
    let k_fact = factorial(k);
    (0..=k).fold(Poly::zero(), |acc, i| {
        let weight = Rational::from_integer(&k_fact / factorial(i));
        let he = hermite_he(i);
        &acc + &(&he * &he).scale(&weight)
    })
}

/// `V_2 = x^2/4 + 3/2 - 2 J_k''/J_k + 2 (J_k'/J_k)^2`.
pub fn v2_closed_form(k: u32) -> RatFun {
    let j = RatFun::from_poly(jk_polynomial(k));
    let j1 = j.derivative();
    let j2 = j1.derivative();
    let base = RatFun::from_poly(Poly::new(vec![rat(3, 2), int(0), rat(1, 4)]));
    let ratio = &j1 / &j;
    let correction = &(&j2 / &j).scale(&int(-2)) + &(&ratio * &ratio).scale(&int(2));
    &base + &correction
}

/// `f_kn = He_k He_{n+1} - He_n He_{k+1}`.
pub fn f_kn(k: u32, n: u32) -> Poly {
    &(&hermite_he(k) * &hermite_he(n + 1)) - &(&hermite_he(n) * &hermite_he(k + 1))
}

/// Closed-form partner eigenfunction for the pair `{k, k+1}`.
#[derive(Clone, Debug)]
pub struct PsiClosedForm {
    pub k: u32,
    pub n: u32,
    /// `[(n-k) He_n + f_kn He_{k+1} / J_k] exp(-x^2/4)`.
    pub bracket: GaussFun,
    /// Squared norm of the bracket, `sqrt(2 pi) n! (n-k)(n-k-1)`.
    pub squared_norm: NormValue,
}

impl PsiClosedForm {
    /// Constant that normalizes the bracket to unit L2 norm.
    pub fn normalization(&self) -> f64 {
        self.squared_norm
            .inv_sqrt_f64()
            .expect("(n-k)(n-k-1) > 0 off the deleted pair")
    }

    pub fn eval_normalized(&self, x: f64) -> f64 {
        self.normalization() * self.bracket.eval_f64(x)
    }
}

pub fn psi_closed_form(k: u32, n: u32) -> Result<PsiClosedForm> {
    if n == k || n == k + 1 {
        return Err(Error::ForbiddenLevel { k, n });
    }
    let shift = n as i64 - k as i64;
    let j = RatFun::from_poly(jk_polynomial(k));
    let tail = &RatFun::from_poly(&f_kn(k, n) * &hermite_he(k + 1)) / &j;
    let r = &RatFun::from_poly(hermite_he(n).scale(&int(shift))) + &tail;
    let squared_norm = NormValue::new(factorial_q(n) * int(shift * (shift - 1)), 1);
    Ok(PsiClosedForm {
        k,
        n,
        bracket: GaussFun::new(r, gaussian_weight()),
        squared_norm,
    })
}

/// Comparison of the engine's `L phi_n` with the closed-form bracket.
#[derive(Clone, Debug)]
pub struct PsiComparison {
    pub n: u32,
    /// `c` with `L phi_n = c * bracket`, when proportional.
    pub ratio: Option<Rational>,
    /// Square of the ratio between the unit-normalized functions.
    pub normalized_ratio_squared: Option<Rational>,
}

impl PsiComparison {
    /// Relative phase `+1`/`-1` between the engine and the closed form.
    pub fn sign(&self) -> Option<i32> {
        self.ratio.as_ref().map(signum)
    }

    pub fn matches(&self) -> bool {
        self.ratio.as_ref().is_some_and(|c| !c.is_zero()) && self.normalized_ratio_squared.as_ref() == Some(&int(1))
    }
}

#[derive(Clone, Debug)]
pub struct GoldenReport {
    pub k: u32,
    /// `c` with `W = c J_k exp(-x^2/2)`, when proportional.
    pub wronskian_ratio: Option<Rational>,
    pub potential_matches: bool,
    pub psi: Vec<PsiComparison>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.wronskian_ratio.is_some() && self.potential_matches && self.psi.iter().all(PsiComparison::matches)
    }
}

/// Checks the engine's transform over `{k, k+1}` against the closed forms.
pub fn golden_cross_check(k: u32, n_max: u32) -> Result<GoldenReport> {
    let model = Oscillator;
    let sel = LevelSelection::new(&model, vec![k, k + 1])?;
    let tr = build_transform(&model, &sel)?;

    let j = GaussFun::from_poly(jk_polynomial(k), int(-2));
    let wronskian_ratio = j.proportionality_to(&tr.wronskian);
    let potential_matches = tr.vn == v2_closed_form(k);

    let mut psi = Vec::new();
    for n in (0..=n_max).filter(|&n| n != k && n != k + 1) {
        let engine = crum_krein_apply(&tr, &model.eigenfunction(n))?;
        let closed = psi_closed_form(k, n)?;
        let ratio = closed.bracket.proportionality_to(&engine);
        let engine_norm = sel
            .alphas()
            .iter()
            .fold(model.squared_norm(n), |acc, a| acc.scale(&(model.eigenvalue(n) - a)));
        let normalized_ratio_squared = ratio.as_ref().map(|c| {
            debug_assert_eq!(engine_norm.m, closed.squared_norm.m);
            c * c * &closed.squared_norm.q / &engine_norm.q
        });
        psi.push(PsiComparison {
            n,
            ratio,
            normalized_ratio_squared,
        });
    }
    Ok(GoldenReport {
        k,
        wronskian_ratio,
        potential_matches,
        psi,
    })
}

/// Exact factorial ratio `k!/i!` as an integer.
pub fn gamma_ratio(k: u32, i: u32) -> BigInt {
    factorial(k) / factorial(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::sturm_real_root_count;

    #[test]
    fn phi_examples() {
        let (f0, n0) = phi_unnormalized(0);
        assert_eq!(f0, GaussFun::from_poly(Poly::one(), int(-1)));
        assert_eq!(n0, NormValue::new(int(1), 1));
        let (f2, n2) = phi_unnormalized(2);
        assert_eq!(f2, GaussFun::from_poly(Poly::from_ints(&[-1, 0, 1]), int(-1)));
        assert_eq!(n2, NormValue::new(int(2), 1));
    }

    #[test]
    fn eigen_identity_pins_convention() {
        let h0 = crate::gaussfun::DiffOp::hamiltonian(&Oscillator.potential());
        for n in 0..=10 {
            let phi = Oscillator.eigenfunction(n);
            assert_eq!(h0.apply(&phi).unwrap(), phi.scale(&int(n as i64)), "n = {n}");
        }
    }

    #[test]
    fn jk_examples() {
        assert_eq!(jk_polynomial(0), Poly::one());
        assert_eq!(jk_polynomial(1), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(jk_polynomial(2), Poly::from_ints(&[3, 0, 0, 0, 1]));
    }

    #[test]
    fn jk_is_positive() {
        for k in 0..=6 {
            let j = jk_polynomial(k);
            assert_eq!(j.degree(), Some(2 * k as usize));
            assert_eq!(sturm_real_root_count(&j).unwrap(), 0);
            assert!(j.eval(&int(0)) > int(0));
        }
    }

    #[test]
    fn v2_examples() {
        assert_eq!(
            v2_closed_form(0),
            RatFun::from_poly(Poly::new(vec![rat(3, 2), int(0), rat(1, 4)]))
        );
        assert_eq!(v2_closed_form(1).eval(&int(0)), Some(rat(-5, 2)));
        assert!(sturm_real_root_count(v2_closed_form(3).den()).unwrap() == 0);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(f_kn(1, 0), Poly::one());
        assert_eq!(f_kn(1, 3), Poly::from_ints(&[0, 0, 0, -2]));
        let psi = psi_closed_form(1, 0).unwrap();
        let expected = GaussFun::new(
            RatFun::reduce(Poly::from_ints(&[-2]), Poly::from_ints(&[1, 0, 1])).unwrap(),
            int(-1),
        );
        assert_eq!(psi.bracket, expected);
        // -2 / sqrt(2 sqrt(2 pi))
        let oracle = -2.0 / (2.0 * (2.0 * std::f64::consts::PI).sqrt()).sqrt();
        assert!((psi.eval_normalized(0.0) - oracle).abs() < 1e-12);
        assert!((psi.eval_normalized(0.0) + 0.893244).abs() < 1e-6);
    }

    #[test]
    fn forbidden_levels() {
        assert!(matches!(psi_closed_form(2, 2), Err(Error::ForbiddenLevel { .. })));
        assert!(matches!(psi_closed_form(2, 3), Err(Error::ForbiddenLevel { .. })));
    }

    #[test]
    fn golden_low_pairs() {
        for k in 0..=2 {
            let report = golden_cross_check(k, 5).unwrap();
            assert!(report.passed(), "{report:?}");
        }
        let r1 = golden_cross_check(1, 5).unwrap();
        assert_eq!(r1.wronskian_ratio, Some(int(1)));
        assert_eq!(r1.psi[0].n, 0);
        assert_eq!(r1.psi[0].sign(), Some(-1));
    }

    #[test]
    fn gamma_ratio_is_integer() {
        assert_eq!(gamma_ratio(5, 2), BigInt::from(60));
    }
}
