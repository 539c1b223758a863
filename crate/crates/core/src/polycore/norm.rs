use std::f64::consts::PI;
use std::fmt;

use num::Zero;

use super::{rational_to_f64, signum, Rational};

/// The value `q * (2 pi)^(m/2)`, kept symbolic so squared norms stay exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NormValue {
    pub q: Rational,
    pub m: i32,
}

impl NormValue {
    pub fn new(q: Rational, m: i32) -> Self {
        NormValue { q, m }
    }

    pub fn is_positive(&self) -> bool {
        signum(&self.q) > 0
    }

    pub fn scale(&self, c: &Rational) -> NormValue {
        NormValue::new(&self.q * c, self.m)
    }

    pub fn mul(&self, other: &NormValue) -> NormValue {
        NormValue::new(&self.q * &other.q, self.m + other.m)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.q) * (2.0 * PI).powf(self.m as f64 / 2.0)
    }

    /// `1 / sqrt(value)`, the constant that normalizes a function whose
    /// squared norm is this value. `None` unless positive.
    pub fn inv_sqrt_f64(&self) -> Option<f64> {
        if self.q.is_zero() || !self.is_positive() {
            return None;
        }
        Some(1.0 / self.to_f64().sqrt())
    }
}

impl fmt::Debug for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * (2pi)^({}/2)", self.q, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::int;

    #[test]
    fn gaussian_norm_value() {
        let n = NormValue::new(int(2), 1);
        assert!((n.to_f64() - 2.0 * (2.0 * PI).sqrt()).abs() < 1e-14);
        let c = n.inv_sqrt_f64().unwrap();
        assert!((c * c * n.to_f64() - 1.0).abs() < 1e-14);
        assert!(NormValue::new(int(0), 1).inv_sqrt_f64().is_none());
        assert_eq!(n.mul(&NormValue::new(int(3), -1)), NormValue::new(int(6), 0));
    }
}
