//! Strategies and property bodies shared by the acceptance harness and the
//! property test suite. Every runner is seeded so failures reproduce.

#![allow(dead_code)]

use darboux::darboux::{build_transform, krein_admissible, LevelSelection, TransformResult};
use darboux::gaussfun::{wronskian, DiffOp, GaussFun};
use darboux::oscillator::Oscillator;
use darboux::polycore::{int, rat, Poly, RatFun};
use darboux::spectral::{
    build_hamiltonian, eigenvalues_bisection, numeric_spectrum, Grid, GridFunction, TridiagMatrix,
};
use darboux::SolvableModel;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 0..=max_len)
        .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

pub fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(3), poly(3).prop_filter("nonzero denominator", |d| !d.is_zero()))
        .prop_map(|(n, d)| RatFun::reduce(n, d).unwrap())
}

pub fn diffop(max_order: usize) -> impl Strategy<Value = DiffOp> {
    prop::collection::vec(ratfun(), 1..=max_order + 1).prop_map(DiffOp::new)
}

pub fn gaussfun() -> impl Strategy<Value = GaussFun> {
    (ratfun(), -2i64..=2).prop_map(|(r, s)| GaussFun::new(r, int(s)))
}

/// Krein-admissible subsets of `{0..6}` with at most four levels.
pub fn admissible_selection() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::btree_set(0u32..=6, 1..=4)
        .prop_map(|s| s.into_iter().collect::<Vec<_>>())
        .prop_filter("Krein admissible", |levels| krein_admissible(levels))
}

pub fn transform(levels: &[u32]) -> TransformResult {
    let sel = LevelSelection::new(&Oscillator, levels.to_vec()).unwrap();
    build_transform(&Oscillator, &sel).unwrap()
}

/// Operator coefficients from the Wronskian minors against the bordered
/// Wronskian `W(u_1..u_N, phi) / W(u_1..u_N)`.
pub fn bordered_matches_operator(cases: u32) -> Result<(), String> {
    run(cases, (admissible_selection(), 0u32..=9), |(levels, n)| {
        let tr = transform(&levels);
        let phi = Oscillator.eigenfunction(n);
        let mut family = tr.u.clone();
        family.push(phi.clone());
        let bordered = wronskian(&family).unwrap().div(&tr.wronskian).unwrap();
        prop_assert_eq!(
            bordered,
            tr.operator.apply(&phi).unwrap(),
            "selection {:?}, level {}",
            levels,
            n
        );
        Ok(())
    })
}

pub fn adjoint_involution(cases: u32) -> Result<(), String> {
    run(cases, diffop(3), |a| {
        prop_assert_eq!(a.adjoint().adjoint(), a);
        Ok(())
    })
}

pub fn adjoint_anti_homomorphism(cases: u32) -> Result<(), String> {
    run(cases, (diffop(2), diffop(2)), |(a, b)| {
        prop_assert_eq!(a.compose(&b).adjoint(), b.adjoint().compose(&a.adjoint()));
        Ok(())
    })
}

pub fn compose_apply_associative(cases: u32) -> Result<(), String> {
    run(cases, (diffop(2), diffop(2), gaussfun()), |(a, b, f)| {
        let lhs = a.compose(&b).apply(&f).unwrap();
        let rhs = a.apply(&b.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn tridiagonal(n: usize) -> impl Strategy<Value = TridiagMatrix> {
    (
        prop::collection::vec(-10.0f64..10.0, n),
        prop::collection::vec(-5.0f64..5.0, n - 1),
    )
        .prop_map(|(d, e)| TridiagMatrix::new(d, e))
}

/// All eigenvalues from a dense symmetric solver, ascending.
pub fn dense_eigenvalues(t: &TridiagMatrix) -> Vec<f64> {
    let n = t.size();
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            t.diagonal[i]
        } else if i.abs_diff(j) == 1 {
            t.off_diagonal[i.min(j)]
        } else {
            0.0
        }
    });
    let mut values: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

pub fn bisection_matches_dense(cases: u32, n: usize, tol: f64) -> Result<(), String> {
    run(cases, tridiagonal(n), |t| {
        let ours = eigenvalues_bisection(&t, n);
        let oracle = dense_eigenvalues(&t);
        for (a, b) in ours.iter().zip(&oracle) {
            prop_assert!((a - b).abs() <= tol, "bisection {} vs dense {}", a, b);
        }
        Ok(())
    })
}

/// Ratio of oscillator eigenvalue errors on `[-12, 12]` between a grid and
/// one with half the spacing, per level.
pub fn h_halving_ratios(coarse_points: usize, levels: usize) -> Vec<f64> {
    let fine_points = 2 * coarse_points - 1;
    let v0 = Oscillator.potential();
    let errors = |points: usize| {
        let grid = Grid::new(-12.0, 12.0, points).unwrap();
        numeric_spectrum(&v0, &grid, levels)
            .unwrap()
            .iter()
            .enumerate()
            .map(|(n, e)| (e - n as f64).abs())
            .collect::<Vec<_>>()
    };
    let (coarse, fine) = (errors(coarse_points), errors(fine_points));
    coarse.iter().zip(&fine).map(|(c, f)| c / f).collect()
}

/// Free particle on `[0, L]` with Dirichlet ends: FD eigenvalues are
/// `(4/h^2) sin^2(k pi h / 2L)`.
pub fn free_particle_exact(grid: &Grid, k: usize) -> f64 {
    let h = grid.spacing();
    let len = grid.x_max - grid.x_min;
    let s = (k as f64 * std::f64::consts::PI * h / (2.0 * len)).sin();
    4.0 / (h * h) * s * s
}

pub fn free_particle_matrix(grid: &Grid) -> TridiagMatrix {
    build_hamiltonian(&GridFunction::new(vec![0.0; grid.n_points]), grid)
}
