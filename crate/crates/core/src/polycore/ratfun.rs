use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Reduced rational function `num / den` with a monic denominator.
///
/// Canonical form makes structural equality coincide with equality of
/// functions: `gcd(num, den) = 1`, `den` monic, and zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn reduce(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce_unchecked(num, den))
    }

    fn reduce_unchecked(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFun::zero();
        }
        let lc = den.leading_coeff().recip();
        if den.is_constant() {
            return RatFun {
                num: num.scale(&lc),
                den: Poly::one(),
            };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lc = den.leading_coeff().recip();
        RatFun {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn x() -> Self {
        RatFun::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The rational value when this is a constant function.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<RatFun> {
        RatFun::reduce(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> RatFun {
        if self.den.is_constant() {
            return RatFun::from_poly(self.num.derivative());
        }
        // (n/d)' = (n' d - n d') / d^2
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFun::reduce_unchecked(num, &self.den * &self.den)
    }

    pub fn nth_derivative(&self, order: usize) -> RatFun {
        (0..order).fold(self.clone(), |f, _| f.derivative())
    }

    /// Exact value at `x`; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    fn combine(&self, rhs: &RatFun, sign: bool) -> RatFun {
        let op = |a: &Poly, b: &Poly| if sign { a + b } else { a - b };
        if self.den == rhs.den {
            return RatFun::reduce_unchecked(op(&self.num, &rhs.num), self.den.clone());
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign { rhs.clone() } else { -rhs };
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        let left = rhs.den.div_exact(&g);
        let right = self.den.div_exact(&g);
        let num = op(&(&self.num * &left), &(&rhs.num * &right));
        RatFun::reduce_unchecked(num, &self.den * &left)
    }
}

impl Default for RatFun {
    fn default() -> Self {
        RatFun::zero()
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        self.combine(rhs, true)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self.combine(rhs, false)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel before multiplying to keep degrees down
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let num = &self.num.div_exact(&g1) * &rhs.num.div_exact(&g2);
        let den = &self.den.div_exact(&g2) * &rhs.den.div_exact(&g1);
        let lc = den.leading_coeff().recip();
        RatFun {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    /// Panics on division by the zero function.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RatFun) -> RatFun {
        self * &rhs.recip().expect("division by the zero rational function")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

impl From<Rational> for RatFun {
    fn from(c: Rational) -> Self {
        RatFun::constant(c)
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{int, rat};

    fn rf(num: &[i64], den: &[i64]) -> RatFun {
        RatFun::reduce(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let a = rf(&[0, 0, 2], &[2]);
        assert_eq!(a.num(), &Poly::from_ints(&[0, 0, 1]));
        assert_eq!(a.den(), &Poly::one());

        let b = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(b, RatFun::from_poly(Poly::from_ints(&[1, 1])));

        // (-4 + 4x^2) / (1 + x^2)^2 is already coprime
        let c = rf(&[-4, 0, 4], &[1, 0, 2, 0, 1]);
        assert_eq!(c.num(), &Poly::from_ints(&[-4, 0, 4]));
        assert_eq!(c.den(), &Poly::from_ints(&[1, 0, 2, 0, 1]));
        for x in [rat(1, 3), int(2), rat(-7, 5)] {
            let direct = (int(4) * &x * &x - int(4)) / (int(1) + &x * &x).pow(2);
            assert_eq!(c.eval(&x).unwrap(), direct);
        }
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RatFun::reduce(Poly::one(), Poly::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn denominators_become_monic() {
        let f = rf(&[1], &[0, -2]);
        assert_eq!(f.den(), &Poly::x());
        assert_eq!(f.num(), &Poly::constant(rat(-1, 2)));
        assert_eq!(rf(&[0], &[3, 1]), RatFun::zero());
    }

    #[test]
    fn arithmetic_round_trip() {
        let a = rf(&[1, 1], &[1, 0, 1]);
        let b = rf(&[0, 2], &[-1, 1]);
        let sum = &a + &b;
        assert_eq!(&sum - &b, a);
        assert_eq!(&(&a * &b) / &b, a);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn quotient_rule() {
        // (1/(1+x^2))' = -2x/(1+x^2)^2
        let f = rf(&[1], &[1, 0, 1]);
        assert_eq!(f.derivative(), rf(&[0, -2], &[1, 0, 2, 0, 1]));
    }
}
