use std::fmt;

use num::Zero;

use super::det::{det_bareiss, det_cofactor};
use crate::error::{Error, Result};
use crate::polycore::{rat, rational_to_f64, Poly, RatFun, Rational};

/// `r(x) * exp(s * x^2 / 4)` with `r` a canonical rational function.
///
/// The zero function always carries weight `s = 0`, so structural equality
/// is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussFun {
    r: RatFun,
    s: Rational,
}

impl GaussFun {
    pub fn new(r: RatFun, s: Rational) -> Self {
        if r.is_zero() {
            return GaussFun::zero();
        }
        GaussFun { r, s }
    }

    pub fn zero() -> Self {
        GaussFun {
            r: RatFun::zero(),
            s: Rational::zero(),
        }
    }

    /// `p(x) exp(s x^2 / 4)`.
    pub fn from_poly(p: Poly, s: Rational) -> Self {
        GaussFun::new(RatFun::from_poly(p), s)
    }

    pub fn ratfun(&self) -> &RatFun {
        &self.r
    }

    pub fn weight(&self) -> &Rational {
        &self.s
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> GaussFun {
        GaussFun::new(self.r.scale(c), self.s.clone())
    }

    pub fn mul_ratfun(&self, a: &RatFun) -> GaussFun {
        GaussFun::new(&self.r * a, self.s.clone())
    }

    pub fn mul(&self, other: &GaussFun) -> GaussFun {
        GaussFun::new(&self.r * &other.r, &self.s + &other.s)
    }

    /// Quotient; `None` when dividing by zero.
    pub fn div(&self, other: &GaussFun) -> Option<GaussFun> {
        let inv = other.r.recip().ok()?;
        Some(GaussFun::new(&self.r * &inv, &self.s - &other.s))
    }

    pub fn add(&self, other: &GaussFun) -> Result<GaussFun> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GaussFun) -> Result<GaussFun> {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &GaussFun, op: impl Fn(&RatFun, &RatFun) -> RatFun) -> Result<GaussFun> {
        let s = match (self.is_zero(), other.is_zero()) {
            (true, _) => other.s.clone(),
            (_, true) => self.s.clone(),
            _ if self.s == other.s => self.s.clone(),
            _ => return Err(Error::MixedWeights(self.s.to_string(), other.s.to_string())),
        };
        Ok(GaussFun::new(op(&self.r, &other.r), s))
    }

    pub fn derivative(&self) -> GaussFun {
        gauss_derivative(self)
    }

    pub fn nth_derivative(&self, order: usize) -> GaussFun {
        (0..order).fold(self.clone(), |f, _| f.derivative())
    }

    /// If `other = c * self` for a rational constant `c`, returns `c`.
    ///
    /// The candidate constant is the ratio of canonical leading numerator
    /// coefficients; no point evaluation is involved.
    pub fn proportionality_to(&self, other: &GaussFun) -> Option<Rational> {
        if self.is_zero() {
            return other.is_zero().then(Rational::zero);
        }
        let c = other.r.num().leading_coeff() / self.r.num().leading_coeff();
        (self.scale(&c) == *other).then_some(c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        self.r.eval_f64(x) * (rational_to_f64(&self.s) * x * x / 4.0).exp()
    }
}

impl fmt::Debug for GaussFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] exp(({}) x^2/4)", self.r, self.s)
    }
}

/// `(r' + s x r / 2) exp(s x^2 / 4)`.
pub fn gauss_derivative(f: &GaussFun) -> GaussFun {
    if f.is_zero() {
        return GaussFun::zero();
    }
    let half_sx = RatFun::from_poly(Poly::monomial(&f.s * rat(1, 2), 1));
    let r = &f.r.derivative() + &(&half_sx * &f.r);
    GaussFun::new(r, f.s.clone())
}

/// Common weight of a family, ignoring zero members.
pub(crate) fn common_weight(fs: &[GaussFun]) -> Result<Rational> {
    let mut weight: Option<&Rational> = None;
    for f in fs.iter().filter(|f| !f.is_zero()) {
        match weight {
            None => weight = Some(&f.s),
            Some(w) if *w != f.s => {
                return Err(Error::MixedWeights(w.to_string(), f.s.to_string()));
            }
            _ => {}
        }
    }
    Ok(weight.cloned().unwrap_or_else(Rational::zero))
}

/// Rational parts of the derivative rows: entry `(i, j)` is the rational
/// factor of the `i`-th derivative of `fs[j]`, for `rows` rows.
///
/// All entries share the family's weight, so any minor of the full
/// derivative matrix is `det(minor) * exp(size * s * x^2 / 4)`.
pub fn wronskian_matrix(fs: &[GaussFun], rows: usize) -> Result<(Vec<Vec<RatFun>>, Rational)> {
    let s = common_weight(fs)?;
    let mut matrix = vec![Vec::with_capacity(fs.len()); rows];
    for f in fs {
        let mut d = f.clone();
        for row in matrix.iter_mut() {
            row.push(d.r.clone());
            d = d.derivative();
        }
    }
    Ok((matrix, s))
}

/// Wronskian `det[f_j^(i)]` of a common-weight family.
pub fn wronskian(fs: &[GaussFun]) -> Result<GaussFun> {
    if fs.is_empty() {
        return Err(Error::EmptyInput("wronskian needs at least one function"));
    }
    let n = fs.len();
    let (matrix, s) = wronskian_matrix(fs, n)?;
    let det = if n <= 2 {
        det_cofactor(&matrix)
    } else {
        det_bareiss(&matrix)
    };
    Ok(GaussFun::new(det, s * Rational::from_integer((n as i64).into())))
}
