use super::{int, Poly};

/// Probabilists' Hermite polynomial `He_n`, orthogonal under `exp(-x^2/2)`.
///
/// Built from `He_{n+1} = x He_n - n He_{n-1}`.
pub fn hermite_he(n: u32) -> Poly {
    let mut prev = Poly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = Poly::x();
    for k in 1..n {
        let next = &(&Poly::x() * &cur) - &prev.scale(&int(k as i64));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}
