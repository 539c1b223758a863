//! Exact arithmetic: rationals, dense polynomials, reduced rational
//! functions, Hermite polynomials and Sturm root counting.

mod hermite;
mod norm;
mod poly;
mod ratfun;
mod sturm;

pub use hermite::hermite_he;
pub use norm::NormValue;
pub use poly::Poly;
pub use ratfun::RatFun;
pub use sturm::{sturm_real_root_count, sturm_root_count_in};

use num::{BigInt, BigRational, One, Zero};

/// Arbitrary-precision rational; always stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.numer().sign() == num::bigint::Sign::Minus {
        -1
    } else {
        1
    }
}

/// Exact rational value of a finite `f64`.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}
