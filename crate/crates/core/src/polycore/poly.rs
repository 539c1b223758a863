use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};

use super::{int, rational_to_f64, Rational};

/// Dense univariate polynomial over the rationals, lowest degree first.
///
/// The zero polynomial is the empty coefficient vector; every other value
/// has a nonzero last coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Scaled to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading_coeff();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.recip())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d_deg = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        let Some(n_deg) = self.degree().filter(|&n| n >= d_deg) else {
            return (Poly::zero(), self.clone());
        };
        let mut quot = vec![Rational::zero(); n_deg - d_deg + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d_deg] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(d_deg);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return if a.is_zero() { b.monic() } else { a.monic() };
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        let (pa, pb) = (primitive_integer(a), primitive_integer(b));
        match heuristic_gcd(&pa, &pb) {
            Some(g) => g.monic(),
            None => Poly::euclid_gcd(a, b),
        }
    }

    fn euclid_gcd(a: &Poly, b: &Poly) -> Poly {
        let mut a = a.monic();
        let mut b = b.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

/// `c * p` with integer coefficients whose gcd is one, as a rational poly.
fn primitive_integer(p: &Poly) -> Poly {
    let den_lcm = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(den_lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    Poly::new(ints.into_iter().map(|c| Rational::from_integer(c / &content)).collect())
}

fn max_norm(p: &Poly) -> BigInt {
    p.coeffs.iter().map(|c| c.numer().abs()).max().unwrap_or_default()
}

/// Heuristic gcd of primitive integer polynomials: evaluate at a large
/// integer, take the integer gcd, and read the polynomial back off its
/// balanced base-`xi` digits. A candidate that divides both inputs is the
/// gcd as long as `xi > 2 min(|a|, |b|) + 1`; `None` asks for a fallback.
fn heuristic_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let mut xi = BigInt::from(2) * max_norm(a).min(max_norm(b)) + BigInt::from(29);
    for _ in 0..6 {
        let eval = |p: &Poly| {
            p.coeffs
                .iter()
                .rev()
                .fold(BigInt::zero(), |acc, c| acc * &xi + c.numer())
        };
        let mut gamma = eval(a).gcd(&eval(b));
        let half = &xi / 2;
        let mut digits = Vec::new();
        while !gamma.is_zero() {
            let mut d = gamma.mod_floor(&xi);
            if d > half {
                d -= &xi;
            }
            gamma = (gamma - &d) / &xi;
            digits.push(Rational::from_integer(d));
        }
        let g = Poly::new(digits);
        if !g.is_zero() {
            let g = primitive_integer(&g);
            if a.div_rem(&g).1.is_zero() && b.div_rem(&g).1.is_zero() {
                return Some(g);
            }
        }
        xi = xi * BigInt::from(73794) / BigInt::from(27011);
    }
    None
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
