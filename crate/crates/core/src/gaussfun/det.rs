use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};

/// Minimal field interface for determinants over rationals and rational
/// functions.
pub trait Field: Clone + Zero + One + Neg<Output = Self>
where
    for<'a> &'a Self: Add<&'a Self, Output = Self>
        + Sub<&'a Self, Output = Self>
        + Mul<&'a Self, Output = Self>
        + Div<&'a Self, Output = Self>,
{
}

impl<T> Field for T
where
    T: Clone + Zero + One + Neg<Output = T>,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T> + Div<&'a T, Output = T>,
{
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
///
/// Every division in the elimination is exact, which keeps intermediate
/// entries the size of minors of the input.
pub fn det_bareiss<T: Field>(matrix: &[Vec<T>]) -> T
where
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T> + Div<&'a T, Output = T>,
{
    let n = matrix.len();
    if n == 0 {
        return T::one();
    }
    assert!(matrix.iter().all(|row| row.len() == n), "matrix must be square");
    let mut m: Vec<Vec<T>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return T::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let cross = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = &cross / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Determinant by Laplace expansion along the first row. Exponential cost;
/// meant for small matrices and as an independent cross-check.
pub fn det_cofactor<T: Field>(matrix: &[Vec<T>]) -> T
where
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T> + Div<&'a T, Output = T>,
{
    let n = matrix.len();
    match n {
        0 => T::one(),
        1 => matrix[0][0].clone(),
        2 => &(&matrix[0][0] * &matrix[1][1]) - &(&matrix[0][1] * &matrix[1][0]),
        _ => {
            let mut total = T::zero();
            for col in 0..n {
                if matrix[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<T>> = matrix[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &matrix[0][col] * &det_cofactor(&minor);
                total = if col % 2 == 0 { &total + &term } else { &total - &term };
            }
            total
        }
    }
}
