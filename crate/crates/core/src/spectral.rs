//! Floating-point cross-checks: finite-difference Hamiltonians on a uniform
//! grid, a Sturm-bisection tridiagonal eigensolver, inverse iteration and
//! Simpson quadrature.
//!
//! Nothing here reimplements the exact layer; exact objects are only
//! sampled.

use rayon::prelude::*;
use serde::Serialize;

use crate::darboux::{crum_krein_apply, TransformResult};
use crate::error::{Error, Result};
use crate::gaussfun::GaussFun;
use crate::model::SolvableModel;
use crate::polycore::{rational_from_f64, rational_to_f64, sturm_root_count_in, RatFun};

pub const REFERENCE_X_MIN: f64 = -12.0;
pub const REFERENCE_X_MAX: f64 = 12.0;
pub const REFERENCE_POINTS: usize = 2401;
/// Absolute eigenvalue tolerance budgeted for the reference grid.
pub const EIGENVALUE_TOLERANCE: f64 = 5e-3;
pub const BISECTION_TOLERANCE: f64 = 1e-10;
/// Relative tolerance for `||L phi_n||^2 = prod (E_n - alpha_i)`.
pub const NORM_TRANSPORT_TOLERANCE: f64 = 1e-6;
const INVERSE_ITERATION_CAP: usize = 100;

/// Uniform grid including both endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::InvalidGrid(format!(
                "need x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < 3 {
            return Err(Error::InvalidGrid(format!("need at least 3 points, got {n_points}")));
        }
        Ok(Grid { x_min, x_max, n_points })
    }

    /// `[-12, 12]` with 2401 points, `h = 0.01`.
    pub fn reference() -> Self {
        Grid {
            x_min: REFERENCE_X_MIN,
            x_max: REFERENCE_X_MAX,
            n_points: REFERENCE_POINTS,
        }
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.spacing()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|i| self.x(i))
    }
}

/// Samples aligned with a [`Grid`].
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    pub samples: Vec<f64>,
}

impl GridFunction {
    pub fn new(samples: Vec<f64>) -> Self {
        GridFunction { samples }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> GridFunction {
        GridFunction::new(self.samples.iter().map(|&v| f(v)).collect())
    }

    pub fn mul(&self, other: &GridFunction) -> GridFunction {
        GridFunction::new(self.samples.iter().zip(&other.samples).map(|(a, b)| a * b).collect())
    }

    pub fn dot(&self, other: &GridFunction) -> f64 {
        self.samples.iter().zip(&other.samples).map(|(a, b)| a * b).sum()
    }

    pub fn max_abs_diff(&self, other: &GridFunction) -> f64 {
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Something that can be evaluated pointwise on a grid.
pub trait Sampleable {
    /// Denominator whose real roots are poles.
    fn pole_polynomial(&self) -> &crate::polycore::Poly;
    fn eval_f64(&self, x: f64) -> f64;
}

impl Sampleable for RatFun {
    fn pole_polynomial(&self) -> &crate::polycore::Poly {
        self.den()
    }
    fn eval_f64(&self, x: f64) -> f64 {
        RatFun::eval_f64(self, x)
    }
}

impl Sampleable for GaussFun {
    fn pole_polynomial(&self) -> &crate::polycore::Poly {
        self.ratfun().den()
    }
    fn eval_f64(&self, x: f64) -> f64 {
        GaussFun::eval_f64(self, x)
    }
}

/// Pointwise evaluation after certifying, by an exact Sturm count, that
/// the function has no pole on `[x_min, x_max]`.
pub fn sample<F: Sampleable + ?Sized>(f: &F, grid: &Grid) -> Result<GridFunction> {
    let den = f.pole_polynomial();
    if !den.is_constant() {
        let a = rational_from_f64(grid.x_min).ok_or_else(|| Error::InvalidGrid("x_min".into()))?;
        let b = rational_from_f64(grid.x_max).ok_or_else(|| Error::InvalidGrid("x_max".into()))?;
        if sturm_root_count_in(den, &a, &b)? > 0 {
            return Err(Error::PoleOnGrid {
                x_min: grid.x_min,
                x_max: grid.x_max,
            });
        }
    }
    Ok(GridFunction::new(grid.points().map(|x| f.eval_f64(x)).collect()))
}

/// Symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagMatrix {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
}

impl TridiagMatrix {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Self {
        assert_eq!(
            off_diagonal.len() + 1,
            diagonal.len(),
            "off-diagonal must have n - 1 entries"
        );
        TridiagMatrix { diagonal, off_diagonal }
    }

    pub fn size(&self) -> usize {
        self.diagonal.len()
    }

    /// Infinity norm.
    pub fn norm(&self) -> f64 {
        (0..self.size())
            .map(|i| {
                let left = if i > 0 { self.off_diagonal[i - 1].abs() } else { 0.0 };
                let right = self.off_diagonal.get(i).map_or(0.0, |v| v.abs());
                self.diagonal[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.size();
        (0..n)
            .map(|i| {
                let mut acc = self.diagonal[i] * v[i];
                if i > 0 {
                    acc += self.off_diagonal[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc += self.off_diagonal[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }

    /// Number of eigenvalues strictly below `lambda`, from the signs of the
    /// LDL^T pivots of `T - lambda I`.
    pub fn count_below(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.size() {
            let coupling = if i == 0 {
                0.0
            } else {
                self.off_diagonal[i - 1].powi(2) / d
            };
            d = self.diagonal[i] - lambda - coupling;
            if d == 0.0 {
                d = -f64::EPSILON * (self.diagonal[i].abs() + lambda.abs()).max(f64::MIN_POSITIVE);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.size();
        (0..n).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
            let left = if i > 0 { self.off_diagonal[i - 1].abs() } else { 0.0 };
            let right = self.off_diagonal.get(i).map_or(0.0, |v| v.abs());
            let r = left + right;
            (lo.min(self.diagonal[i] - r), hi.max(self.diagonal[i] + r))
        })
    }
}

/// Discretizes `-d^2/dx^2 + V` on the interior points with Dirichlet ends.
pub fn build_hamiltonian(potential: &GridFunction, grid: &Grid) -> TridiagMatrix {
    assert_eq!(
        potential.samples.len(),
        grid.n_points,
        "potential does not match the grid"
    );
    let h2 = grid.spacing().powi(2);
    let interior = &potential.samples[1..grid.n_points - 1];
    let diagonal = interior.iter().map(|v| 2.0 / h2 + v).collect();
    let off_diagonal = vec![-1.0 / h2; interior.len() - 1];
    TridiagMatrix::new(diagonal, off_diagonal)
}

fn bisect_eigenvalue(t: &TridiagMatrix, index: usize, lo: f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > BISECTION_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if t.count_below(mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The `k_lowest` smallest eigenvalues, ascending, by Sturm-count bisection.
pub fn eigenvalues_bisection(t: &TridiagMatrix, k_lowest: usize) -> Vec<f64> {
    assert!(k_lowest <= t.size(), "asked for more eigenvalues than the matrix has");
    let (lo, hi) = t.gershgorin_bounds();
    let pad = 1e-12 * (lo.abs() + hi.abs() + 1.0);
    (0..k_lowest)
        .into_par_iter()
        .map(|i| bisect_eigenvalue(t, i, lo - pad, hi + pad))
        .collect()
}

/// Solves `(T - mu I) x = rhs` by tridiagonal LU with partial pivoting.
fn solve_shifted(t: &TridiagMatrix, mu: f64, rhs: &[f64]) -> Vec<f64> {
    let n = t.size();
    let tiny = f64::EPSILON * t.norm().max(1.0);
    let mut d: Vec<f64> = t.diagonal.iter().map(|v| v - mu).collect();
    let mut dl = t.off_diagonal.clone();
    let mut du = t.off_diagonal.clone();
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    let mut swapped = vec![false; n.saturating_sub(1)];
    for i in 0..n - 1 {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let fact = dl[i] / d[i];
            dl[i] = fact;
            d[i + 1] -= fact * du[i];
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = fact;
            let temp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = temp - fact * d[i + 1];
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] *= -fact;
            }
            swapped[i] = true;
        }
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    let mut b = rhs.to_vec();
    for i in 0..n - 1 {
        if swapped[i] {
            let temp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = temp - dl[i] * b[i];
        } else {
            b[i + 1] -= dl[i] * b[i];
        }
    }
    b[n - 1] /= d[n - 1];
    if n > 1 {
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
    b
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
}

/// Unit eigenvector for the eigenvalue near `lambda`.
///
/// Convergence is judged on `||T v - rho v|| <= 1e-8 ||T||` with `rho` the
/// Rayleigh quotient. The sign is fixed so that the first component larger
/// than `1e-8` in magnitude is positive.
pub fn eigenvector_inverse_iteration(t: &TridiagMatrix, lambda: f64) -> Result<GridFunction> {
    let n = t.size();
    let tolerance = 1e-8 * t.norm();
    // deterministic start with no parity
    let mut v: Vec<f64> = (0..n)
        .map(|i| 1.0 + 0.5 * ((i as f64) * 0.618_033_988_75).sin())
        .collect();
    normalize(&mut v);
    for _ in 0..INVERSE_ITERATION_CAP {
        v = solve_shifted(t, lambda, &v);
        if v.iter().any(|x| !x.is_finite()) {
            break;
        }
        normalize(&mut v);
        let tv = t.mul_vec(&v);
        let rho: f64 = tv.iter().zip(&v).map(|(a, b)| a * b).sum();
        let residual = tv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - rho * b).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= tolerance {
            if let Some(first) = v.iter().find(|x| x.abs() > 1e-8) {
                if *first < 0.0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
            }
            return Ok(GridFunction::new(v));
        }
    }
    Err(Error::NonConvergence {
        lambda,
        iterations: INVERSE_ITERATION_CAP,
    })
}

/// Embeds an interior vector into the full grid with zero boundary values.
pub fn with_dirichlet_ends(interior: &GridFunction) -> GridFunction {
    let mut samples = Vec::with_capacity(interior.samples.len() + 2);
    samples.push(0.0);
    samples.extend_from_slice(&interior.samples);
    samples.push(0.0);
    GridFunction::new(samples)
}

/// Composite Simpson rule; an even number of points gets a trapezoid on the
/// last interval.
pub fn quadrature_simpson(f: &GridFunction, grid: &Grid) -> f64 {
    let y = &f.samples;
    let h = grid.spacing();
    let n = y.len();
    let simpson_end = if n % 2 == 1 { n } else { n - 1 };
    let mut total = 0.0;
    if simpson_end >= 3 {
        let mut acc = y[0] + y[simpson_end - 1];
        for (i, v) in y.iter().enumerate().take(simpson_end - 1).skip(1) {
            acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
        }
        total += acc * h / 3.0;
    }
    if simpson_end < n {
        total += 0.5 * h * (y[n - 2] + y[n - 1]);
    }
    total
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumRow {
    pub level: u32,
    pub exact: f64,
    pub h0: f64,
    /// `None` for a deleted level.
    pub hn: Option<f64>,
    pub abs_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub grid: Grid,
    pub rows: Vec<SpectrumRow>,
    pub max_abs_error: f64,
    pub tolerance: f64,
}

impl SpectrumReport {
    pub fn passed(&self) -> bool {
        self.max_abs_error <= self.tolerance
    }
}

/// Lowest numeric eigenvalues of `-d^2/dx^2 + V` on `grid`.
pub fn numeric_spectrum(potential: &RatFun, grid: &Grid, count: usize) -> Result<Vec<f64>> {
    let v = sample(potential, grid)?;
    Ok(eigenvalues_bisection(&build_hamiltonian(&v, grid), count))
}

/// Compares numeric spectra of `h0` and `h_N` with the exact prediction:
/// `h0` has every level up to `n_max`, `h_N` the same minus the selection.
pub fn verify_spectrum<M: SolvableModel + ?Sized>(
    model: &M,
    tr: &TransformResult,
    n_max: u32,
    grid: &Grid,
) -> Result<SpectrumReport> {
    let levels: Vec<u32> = (0..=n_max).collect();
    let kept: Vec<u32> = levels.iter().copied().filter(|&l| !tr.selection.contains(l)).collect();
    let h0_values = numeric_spectrum(&tr.v0, grid, levels.len())?;
    let hn_values = numeric_spectrum(&tr.vn, grid, kept.len())?;

    let mut rows = Vec::with_capacity(levels.len());
    for (i, &level) in levels.iter().enumerate() {
        let exact = rational_to_f64(&model.eigenvalue(level));
        let h0 = h0_values[i];
        let hn = kept.iter().position(|&l| l == level).map(|j| hn_values[j]);
        let abs_error = hn.map_or(0.0, |v| (v - exact).abs()).max((h0 - exact).abs());
        rows.push(SpectrumRow {
            level,
            exact,
            h0,
            hn,
            abs_error,
        });
    }
    let max_abs_error = rows.iter().map(|r| r.abs_error).fold(0.0, f64::max);
    Ok(SpectrumReport {
        grid: *grid,
        rows,
        max_abs_error,
        tolerance: EIGENVALUE_TOLERANCE,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NormTransport {
    pub level: u32,
    /// `||L phi_n||^2` with `phi_n` normalized numerically.
    pub measured: f64,
    /// `prod_i (E_n - alpha_i)`.
    pub predicted: f64,
    pub relative_error: f64,
}

pub fn norm_transport<M: SolvableModel + ?Sized>(
    model: &M,
    tr: &TransformResult,
    level: u32,
    grid: &Grid,
) -> Result<NormTransport> {
    let phi = model.eigenfunction(level);
    let image = crum_krein_apply(tr, &phi)?;
    let phi_s = sample(&phi, grid)?;
    let image_s = sample(&image, grid)?;
    let phi_norm = quadrature_simpson(&phi_s.mul(&phi_s), grid);
    let measured = quadrature_simpson(&image_s.mul(&image_s), grid) / phi_norm;
    let energy = model.eigenvalue(level);
    let predicted = tr
        .selection
        .alphas()
        .iter()
        .map(|a| rational_to_f64(&(&energy - a)))
        .product::<f64>();
    let relative_error = if predicted == 0.0 {
        measured.abs()
    } else {
        ((measured - predicted) / predicted).abs()
    };
    Ok(NormTransport {
        level,
        measured,
        predicted,
        relative_error,
    })
}

/// Max pointwise gap between the numeric `h_N` eigenvector at `level` and the
/// sampled exact `L phi_level`, both normalized to unit L2 norm on the grid
/// and sign-aligned.
pub fn eigenvector_deviation<M: SolvableModel + ?Sized>(
    model: &M,
    tr: &TransformResult,
    level: u32,
    grid: &Grid,
) -> Result<f64> {
    let exact = sample(&crum_krein_apply(tr, &model.eigenfunction(level))?, grid)?;
    let v = sample(&tr.vn, grid)?;
    let t = build_hamiltonian(&v, grid);
    let numeric = with_dirichlet_ends(&eigenvector_inverse_iteration(
        &t,
        rational_to_f64(&model.eigenvalue(level)),
    )?);
    let unit = |f: &GridFunction| {
        let norm = quadrature_simpson(&f.mul(f), grid).sqrt();
        f.map(|x| x / norm)
    };
    let exact = unit(&exact);
    let mut numeric = unit(&numeric);
    if numeric.dot(&exact) < 0.0 {
        numeric = numeric.map(|x| -x);
    }
    Ok(numeric.max_abs_diff(&exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::darboux::{build_transform, LevelSelection};
    use crate::oscillator::{psi_closed_form, Oscillator};
    use crate::polycore::{Poly, RatFun};

    fn laplacian3() -> TridiagMatrix {
        build_hamiltonian(&GridFunction::new(vec![0.0; 5]), &Grid::new(0.0, 4.0, 5).unwrap())
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::new(1.0, 0.0, 10).is_err());
        assert!(Grid::new(0.0, 1.0, 2).is_err());
        assert!((Grid::reference().spacing() - 0.01).abs() < 1e-15);
    }

    #[test]
    fn sample_examples() {
        let g = Grid::new(-2.0, 2.0, 5).unwrap();
        let ones = sample(&RatFun::one(), &g).unwrap();
        assert!(ones.samples.iter().all(|&v| v == 1.0));

        let v2 = crate::oscillator::v2_closed_form(1);
        assert!((sample(&v2, &g).unwrap().samples[2] + 2.5).abs() < 1e-15);

        let gauss = GaussFun::from_poly(Poly::one(), crate::polycore::int(-1));
        assert!((sample(&gauss, &g).unwrap().samples[4] - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn pole_on_grid_rejected() {
        let f = RatFun::reduce(Poly::one(), Poly::from_ints(&[-1, 1])).unwrap();
        let g = Grid::new(-2.0, 2.0, 11).unwrap();
        assert!(matches!(sample(&f, &g), Err(Error::PoleOnGrid { .. })));
        assert!(sample(&f, &Grid::new(1.0, 3.0, 11).unwrap()).is_err());
        assert!(sample(&f, &Grid::new(0.5, 3.0, 4).unwrap()).is_err());
        assert!(sample(&f, &Grid::new(1.5, 3.0, 11).unwrap()).is_ok());
    }

    #[test]
    fn laplacian_structure_and_spectrum() {
        let t = laplacian3();
        assert_eq!(t.diagonal, vec![2.0, 2.0, 2.0]);
        assert_eq!(t.off_diagonal, vec![-1.0, -1.0]);
        let ev = eigenvalues_bisection(&t, 3);
        let s2 = std::f64::consts::SQRT_2;
        for (got, want) in ev.iter().zip([2.0 - s2, 2.0, 2.0 + s2]) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn laplacian_middle_eigenvector() {
        let v = eigenvector_inverse_iteration(&laplacian3(), 2.0).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(v.max_abs_diff(&GridFunction::new(vec![r, 0.0, -r])) < 1e-8);
    }

    #[test]
    fn simpson_examples() {
        let g = Grid::new(0.0, 1.0, 11).unwrap();
        assert!((quadrature_simpson(&GridFunction::new(vec![1.0; 11]), &g) - 1.0).abs() < 1e-14);
        let even = Grid::new(0.0, 1.0, 10).unwrap();
        assert!((quadrature_simpson(&GridFunction::new(vec![1.0; 10]), &even) - 1.0).abs() < 1e-14);
        let g = Grid::new(-12.0, 12.0, 2401).unwrap();
        let f = GridFunction::new(g.points().map(|x| (-x * x / 2.0).exp()).collect());
        assert!((quadrature_simpson(&f, &g) - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn oscillator_ground_state_eigenvector() {
        let g = Grid::reference();
        let v = sample(&Oscillator.potential(), &g).unwrap();
        let t = build_hamiltonian(&v, &g);
        let ev = eigenvalues_bisection(&t, 1);
        assert!(ev[0].abs() < 1e-3);
        let vec = with_dirichlet_ends(&eigenvector_inverse_iteration(&t, ev[0]).unwrap());
        let phi0 = sample(&Oscillator.eigenfunction(0), &g).unwrap();
        let cos = vec.dot(&phi0) / (vec.dot(&vec).sqrt() * phi0.dot(&phi0).sqrt());
        assert!(cos > 0.9999);
        assert!(vec.samples.iter().all(|&x| x >= -1e-12));
    }

    #[test]
    fn normalized_closed_form_has_unit_norm() {
        let g = Grid::reference();
        let psi = psi_closed_form(1, 0).unwrap();
        let s = sample(&psi.bracket, &g).unwrap().map(|x| x * psi.normalization());
        assert!((quadrature_simpson(&s.mul(&s), &g) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn spectrum_of_ground_pair_is_shifted() {
        let sel = LevelSelection::new(&Oscillator, vec![0, 1]).unwrap();
        let tr = build_transform(&Oscillator, &sel).unwrap();
        let report = verify_spectrum(&Oscillator, &tr, 5, &Grid::reference()).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.rows[0].hn.is_none() && report.rows[1].hn.is_none());
        assert!((report.rows[2].hn.unwrap() - 2.0).abs() < 5e-3);
    }
}
