use num::Zero;

use super::{signum, Poly, Rational};
use crate::error::{Error, Result};

/// Sturm chain of the square-free part of `p`.
fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let g = Poly::gcd(p, &p.derivative());
    let sq_free = p.div_exact(&g);
    let mut chain = vec![sq_free.clone(), sq_free.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign_at_pos_inf(p: &Poly) -> i32 {
    signum(&p.leading_coeff())
}

fn sign_at_neg_inf(p: &Poly) -> i32 {
    let s = signum(&p.leading_coeff());
    match p.degree() {
        Some(d) if d % 2 == 1 => -s,
        _ => s,
    }
}

/// Number of distinct real roots of `p` on the whole real line.
pub fn sturm_real_root_count(p: &Poly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let chain = sturm_chain(p);
    let at_neg = sign_changes(chain.iter().map(sign_at_neg_inf));
    let at_pos = sign_changes(chain.iter().map(sign_at_pos_inf));
    Ok(at_neg - at_pos)
}

/// Number of distinct real roots of `p` in the closed interval `[a, b]`.
pub fn sturm_root_count_in(p: &Poly, a: &Rational, b: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a > b {
        return Ok(0);
    }
    let chain = sturm_chain(p);
    let changes_at = |x: &Rational| sign_changes(chain.iter().map(|q| signum(&q.eval(x))));
    // Sturm's theorem counts roots in (a, b]; add a root sitting at a.
    let endpoint = usize::from(p.eval(a).is_zero());
    Ok(changes_at(a) - changes_at(b) + endpoint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{int, rat};

    #[test]
    fn documented_examples() {
        assert_eq!(sturm_real_root_count(&Poly::from_ints(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(sturm_real_root_count(&Poly::from_ints(&[-1, 0, 1])).unwrap(), 2);
        // x^4 + 3
        assert_eq!(sturm_real_root_count(&Poly::from_ints(&[3, 0, 0, 0, 1])).unwrap(), 0);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            sturm_real_root_count(&Poly::zero()),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn constants_and_repeated_roots() {
        assert_eq!(sturm_real_root_count(&Poly::from_ints(&[5])).unwrap(), 0);
        // (x-1)^3 (x+2)^2 has two distinct roots
        let p = &Poly::from_ints(&[-1, 1]).pow(3) * &Poly::from_ints(&[2, 1]).pow(2);
        assert_eq!(sturm_real_root_count(&p).unwrap(), 2);
    }

    #[test]
    fn interval_counts() {
        // (x-1)(x-2)(x+3)
        let p = &(&Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[-2, 1])) * &Poly::from_ints(&[3, 1]);
        assert_eq!(sturm_root_count_in(&p, &int(0), &int(5)).unwrap(), 2);
        assert_eq!(sturm_root_count_in(&p, &int(1), &int(1)).unwrap(), 1);
        assert_eq!(sturm_root_count_in(&p, &int(-3), &rat(1, 2)).unwrap(), 1);
        assert_eq!(sturm_root_count_in(&p, &int(-10), &int(10)).unwrap(), 3);
        assert_eq!(sturm_root_count_in(&p, &rat(3, 2), &rat(7, 4)).unwrap(), 0);
    }
}
