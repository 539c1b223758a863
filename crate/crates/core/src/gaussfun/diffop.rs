use std::fmt;

use super::gauss::GaussFun;
use crate::error::Result;
use crate::polycore::{int, Poly, RatFun, Rational};

/// Linear differential operator `sum_j a_j(x) d^j/dx^j` with rational
/// function coefficients, `coeffs[j] = a_j`.
///
/// Trailing zero coefficients are trimmed; the zero operator has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffOp {
    coeffs: Vec<RatFun>,
}

impl DiffOp {
    pub fn new(mut coeffs: Vec<RatFun>) -> Self {
        while coeffs.last().is_some_and(RatFun::is_zero) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    pub fn zero() -> Self {
        DiffOp { coeffs: Vec::new() }
    }

    pub fn identity() -> Self {
        DiffOp::multiplication(RatFun::one())
    }

    /// `d/dx`.
    pub fn d() -> Self {
        DiffOp::new(vec![RatFun::zero(), RatFun::one()])
    }

    pub fn multiplication(a: RatFun) -> Self {
        DiffOp::new(vec![a])
    }

    /// Schrodinger operator `-d^2/dx^2 + V(x)`.
    pub fn hamiltonian(potential: &RatFun) -> Self {
        DiffOp::new(vec![potential.clone(), RatFun::zero(), RatFun::constant(int(-1))])
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> RatFun {
        self.coeffs.get(j).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order of the operator; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> RatFun {
        self.coeffs.last().cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(other.coeffs.len());
        DiffOp::new((0..n).map(|j| &self.coeff(j) + &other.coeff(j)).collect())
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(other.coeffs.len());
        DiffOp::new((0..n).map(|j| &self.coeff(j) - &other.coeff(j)).collect())
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        DiffOp::new(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// `self - c` for a constant `c` (shift of the zeroth coefficient).
    pub fn shift(&self, c: &Rational) -> DiffOp {
        self.sub(&DiffOp::multiplication(RatFun::constant(c.clone())))
    }

    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        diffop_compose(self, other)
    }

    pub fn adjoint(&self) -> DiffOp {
        diffop_adjoint(self)
    }

    pub fn apply(&self, f: &GaussFun) -> Result<GaussFun> {
        diffop_apply(self, f)
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{a}] d^{j}")?;
        }
        Ok(())
    }
}

fn binomials(n: usize) -> Vec<Rational> {
    let mut row = vec![int(1)];
    for k in 0..n {
        let next = &row[k] * int((n - k) as i64) / int((k + 1) as i64);
        row.push(next);
    }
    row
}

/// `sum_j a_j f^(j)`, exact.
pub fn diffop_apply(op: &DiffOp, f: &GaussFun) -> Result<GaussFun> {
    let mut acc = GaussFun::zero();
    let mut deriv = f.clone();
    for (j, a) in op.coeffs.iter().enumerate() {
        if j > 0 {
            deriv = deriv.derivative();
        }
        if !a.is_zero() {
            acc = acc.add(&deriv.mul_ratfun(a))?;
        }
    }
    Ok(acc)
}

/// `a o b`, expanded with the Leibniz rule
/// `d^i o (b_j d^j) = sum_m C(i, m) b_j^(i-m) d^(m+j)`.
pub fn diffop_compose(a: &DiffOp, b: &DiffOp) -> DiffOp {
    if a.is_zero() || b.is_zero() {
        return DiffOp::zero();
    }
    let order = a.coeffs.len() + b.coeffs.len() - 1;
    let mut out = vec![RatFun::zero(); order];
    for (j, bj) in b.coeffs.iter().enumerate() {
        if bj.is_zero() {
            continue;
        }
        // derivatives of b_j up to the order of a
        let mut derivs = Vec::with_capacity(a.coeffs.len());
        let mut cur = bj.clone();
        for _ in 0..a.coeffs.len() {
            let next = cur.derivative();
            derivs.push(std::mem::replace(&mut cur, next));
        }
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (m, c) in binomials(i).iter().enumerate() {
                let term = &derivs[i - m];
                if term.is_zero() {
                    continue;
                }
                let contribution = (ai * term).scale(c);
                out[m + j] = &out[m + j] + &contribution;
            }
        }
    }
    DiffOp::new(out)
}

/// Formal adjoint `sum_j (-1)^j d^j o a_j`, expanded to
/// `sum_m [sum_j (-1)^j C(j, m) a_j^(j-m)] d^m`.
pub fn diffop_adjoint(op: &DiffOp) -> DiffOp {
    let mut out = vec![RatFun::zero(); op.coeffs.len()];
    for (j, aj) in op.coeffs.iter().enumerate() {
        if aj.is_zero() {
            continue;
        }
        let sign = if j % 2 == 0 { int(1) } else { int(-1) };
        let mut derivs = Vec::with_capacity(j + 1);
        let mut cur = aj.clone();
        for _ in 0..=j {
            let next = cur.derivative();
            derivs.push(std::mem::replace(&mut cur, next));
        }
        for (m, c) in binomials(j).iter().enumerate() {
            let term = &derivs[j - m];
            if term.is_zero() {
                continue;
            }
            out[m] = &out[m] + &term.scale(&(c * &sign));
        }
    }
    DiffOp::new(out)
}

/// Product `prod_i (h - alpha_i)` as a single operator.
pub(crate) fn operator_polynomial(h: &DiffOp, roots: &[Rational]) -> DiffOp {
    roots
        .iter()
        .fold(DiffOp::identity(), |acc, alpha| acc.compose(&h.shift(alpha)))
}

impl From<Poly> for DiffOp {
    fn from(p: Poly) -> Self {
        DiffOp::multiplication(RatFun::from_poly(p))
    }
}
