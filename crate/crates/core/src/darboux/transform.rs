use num::Zero;

use super::selection::{krein_violation, LevelSelection};
use crate::error::{Error, Result};
use crate::gaussfun::{det_bareiss, det_cofactor, wronskian, wronskian_matrix, DiffOp, GaussFun};
use crate::model::SolvableModel;
use crate::polycore::{int, rat, sturm_real_root_count, NormValue, Poly, RatFun, Rational};

/// Everything produced by one N-th order transformation.
#[derive(Clone, Debug)]
pub struct TransformResult {
    pub selection: LevelSelection,
    /// Transformation functions `u_i`, one per selected level.
    pub u: Vec<GaussFun>,
    pub wronskian: GaussFun,
    /// `A_N = V_N - V_0 = -2 (log W)''`.
    pub potential_difference: RatFun,
    pub v0: RatFun,
    pub vn: RatFun,
    /// The intertwining operator `L`, normalized to leading coefficient one.
    pub operator: DiffOp,
}

impl TransformResult {
    pub fn order(&self) -> usize {
        self.selection.order()
    }

    pub fn h0(&self) -> DiffOp {
        DiffOp::hamiltonian(&self.v0)
    }

    pub fn hn(&self) -> DiffOp {
        DiffOp::hamiltonian(&self.vn)
    }

    /// Copy with `V_N` shifted by `delta`. Breaks `V_N = V_0 + A_N` on
    /// purpose; used as a negative control for the verification suite.
    pub fn with_shifted_potential(&self, delta: &Rational) -> TransformResult {
        let mut out = self.clone();
        out.vn = &out.vn + &RatFun::constant(delta.clone());
        out
    }
}

/// `-2 (log W)''` for `W = r exp(s x^2/4)`, i.e. `-2 [(r'/r)' + s/2]`.
fn log_second_derivative_term(w: &GaussFun) -> RatFun {
    let r = w.ratfun();
    let log_deriv = &r.derivative() / r;
    let inner = &log_deriv.derivative() + &RatFun::constant(w.weight() * rat(1, 2));
    inner.scale(&int(-2))
}

fn real_root_count(r: &RatFun) -> Result<usize> {
    let num_roots = sturm_real_root_count(r.num())?;
    let den_roots = sturm_real_root_count(r.den())?;
    Ok(num_roots + den_roots)
}

/// Real zeros and poles of the rational part of the Wronskian of the
/// selected eigenfunctions, computed without consulting the Krein test.
pub fn wronskian_root_count<M: SolvableModel + ?Sized>(model: &M, levels: &[u32]) -> Result<usize> {
    let u: Vec<GaussFun> = levels.iter().map(|&k| model.eigenfunction(k)).collect();
    let w = wronskian(&u)?;
    if w.is_zero() {
        return Err(Error::DegenerateTransformationFunctions);
    }
    real_root_count(w.ratfun())
}

/// Builds the transformation for an admissible selection.
///
/// Both admissibility views run: the Krein integer scan gates the
/// construction and a Sturm count certifies the Wronskian is node-free.
pub fn build_transform<M: SolvableModel + ?Sized>(model: &M, selection: &LevelSelection) -> Result<TransformResult> {
    if let Some(failing_k) = krein_violation(selection.levels()) {
        return Err(Error::InadmissibleSelection {
            levels: selection.levels().to_vec(),
            failing_k,
        });
    }
    let u: Vec<GaussFun> = selection.levels().iter().map(|&k| model.eigenfunction(k)).collect();
    let w = wronskian(&u)?;
    if w.is_zero() {
        return Err(Error::DegenerateTransformationFunctions);
    }
    let roots = real_root_count(w.ratfun())?;
    if roots > 0 {
        return Err(Error::NodefulWronskian {
            levels: selection.levels().to_vec(),
            roots,
        });
    }
    let potential_difference = log_second_derivative_term(&w);
    let v0 = model.potential();
    let vn = &v0 + &potential_difference;
    let operator = crum_krein_operator(&u, &w)?;
    Ok(TransformResult {
        selection: selection.clone(),
        u,
        wronskian: w,
        potential_difference,
        v0,
        vn,
        operator,
    })
}

/// The operator `W^-1 det[[u_1 .. u_N 1], [u_1' .. u_N' d], ..., [u_1^(N) .. u_N^(N) d^N]]`,
/// expanded along the last column with the function coefficients placed
/// before the derivatives.
///
/// The coefficient of `d^j` is `(-1)^(j+N) M_j / W` where `M_j` is the minor
/// that deletes row `j` and the last column.
pub fn crum_krein_operator(u: &[GaussFun], w: &GaussFun) -> Result<DiffOp> {
    if u.is_empty() {
        return Err(Error::EmptyInput("transformation needs at least one function"));
    }
    if w.is_zero() {
        return Err(Error::DegenerateTransformationFunctions);
    }
    let n = u.len();
    let (rows, s) = wronskian_matrix(u, n + 1)?;
    let minor_weight = &s * int(n as i64);
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let minor: Vec<Vec<RatFun>> = rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, row)| row.clone())
            .collect();
        let det = if n <= 2 {
            det_cofactor(&minor)
        } else {
            det_bareiss(&minor)
        };
        let minor = GaussFun::new(det, minor_weight.clone());
        let signed = if (j + n).is_multiple_of(2) {
            minor
        } else {
            minor.scale(&int(-1))
        };
        let coeff = signed.div(w).ok_or(Error::DegenerateTransformationFunctions)?;
        if !coeff.is_zero() && !coeff.weight().is_zero() {
            return Err(Error::ExponentialMismatch(j));
        }
        coeffs.push(coeff.ratfun().clone());
    }
    let op = DiffOp::new(coeffs);
    debug_assert!(op.leading_coeff() == RatFun::one());
    Ok(op)
}

/// `L phi` in bordered-Wronskian form `W(u_1, .., u_N, phi) / W(u_1, .., u_N)`.
pub fn crum_krein_apply(tr: &TransformResult, phi: &GaussFun) -> Result<GaussFun> {
    let mut family = tr.u.clone();
    family.push(phi.clone());
    let bordered = wronskian(&family)?;
    let out = bordered
        .div(&tr.wronskian)
        .ok_or(Error::DegenerateTransformationFunctions)?;
    debug_assert_eq!(
        out,
        tr.operator.apply(phi)?,
        "bordered Wronskian and operator paths disagree"
    );
    Ok(out)
}

/// `L phi_n` together with its exact squared norm
/// `||phi_n||^2 prod_i (E_n - alpha_i)`. Fails for a selected level, whose
/// image vanishes.
pub fn partner_eigenfunction<M: SolvableModel + ?Sized>(
    model: &M,
    tr: &TransformResult,
    level: u32,
) -> Result<(GaussFun, NormValue)> {
    if tr.selection.contains(level) {
        return Err(Error::InvalidSelection(format!(
            "level {level} is deleted by the transformation"
        )));
    }
    let energy = model.eigenvalue(level);
    let squared_norm = tr
        .selection
        .alphas()
        .iter()
        .fold(model.squared_norm(level), |acc, a| acc.scale(&(&energy - a)));
    Ok((crum_krein_apply(tr, &model.eigenfunction(level))?, squared_norm))
}

/// `v_k = W^(k) / W`, where `W^(k)` omits `u_k`. These span the kernel of
/// the adjoint operator; `v_k` has energy `alpha_k` under `h_N`.
pub fn kernel_functions(tr: &TransformResult) -> Result<Vec<GaussFun>> {
    (0..tr.u.len())
        .map(|k| {
            let rest: Vec<GaussFun> =
                tr.u.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != k)
                    .map(|(_, f)| f.clone())
                    .collect();
            let minor = if rest.is_empty() {
                GaussFun::from_poly(Poly::one(), Rational::zero())
            } else {
                wronskian(&rest)?
            };
            minor.div(&tr.wronskian).ok_or(Error::DegenerateTransformationFunctions)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::Oscillator;

    fn transform(levels: &[u32]) -> Result<TransformResult> {
        let sel = LevelSelection::new(&Oscillator, levels.to_vec())?;
        build_transform(&Oscillator, &sel)
    }

    fn rf(num: Poly, den: &[i64]) -> RatFun {
        RatFun::reduce(num, Poly::from_ints(den)).unwrap()
    }

    #[test]
    fn ground_pair_shifts_the_oscillator() {
        let tr = transform(&[0, 1]).unwrap();
        assert_eq!(tr.potential_difference, RatFun::constant(int(2)));
        assert_eq!(tr.vn, RatFun::from_poly(Poly::new(vec![rat(3, 2), int(0), rat(1, 4)])));
    }

    #[test]
    fn pair_one_two_at_origin() {
        let tr = transform(&[1, 2]).unwrap();
        assert_eq!(tr.potential_difference.eval(&int(0)), Some(int(-2)));
        assert_eq!(tr.vn.eval(&int(0)), Some(rat(-5, 2)));
        assert_eq!(tr.wronskian.ratfun(), &RatFun::from_poly(Poly::from_ints(&[1, 0, 1])));
    }

    #[test]
    fn single_excited_level_is_inadmissible() {
        match transform(&[1]) {
            Err(Error::InadmissibleSelection { failing_k, .. }) => assert_eq!(failing_k, 0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_selection_rejected() {
        assert!(matches!(transform(&[]), Err(Error::InvalidSelection(_))));
    }

    #[test]
    fn operator_examples() {
        let ground = GaussFun::from_poly(Poly::one(), int(-1));
        let first = GaussFun::from_poly(Poly::x(), int(-1));
        let w = wronskian(std::slice::from_ref(&ground)).unwrap();
        let l1 = crum_krein_operator(std::slice::from_ref(&ground), &w).unwrap();
        assert_eq!(
            l1,
            DiffOp::new(vec![
                RatFun::from_poly(Poly::new(vec![int(0), rat(1, 2)])),
                RatFun::one()
            ])
        );

        let pair = [ground, first];
        let w2 = wronskian(&pair).unwrap();
        let l2 = crum_krein_operator(&pair, &w2).unwrap();
        let expected = DiffOp::new(vec![
            RatFun::from_poly(Poly::new(vec![rat(1, 2), int(0), rat(1, 4)])),
            RatFun::x(),
            RatFun::one(),
        ]);
        assert_eq!(l2, expected);
    }

    #[test]
    fn leading_coefficient_is_one() {
        for levels in [&[0][..], &[1, 2], &[2, 3], &[0, 1, 2], &[1, 2, 5, 6]] {
            let tr = transform(levels).unwrap();
            assert_eq!(tr.operator.order(), Some(levels.len()));
            assert_eq!(tr.operator.leading_coeff(), RatFun::one());
        }
    }

    #[test]
    fn kernel_of_operator_is_the_selection() {
        let tr = transform(&[1, 2]).unwrap();
        for u in &tr.u {
            assert!(crum_krein_apply(&tr, u).unwrap().is_zero());
        }
    }

    #[test]
    fn bordered_ground_state_image() {
        let tr = transform(&[1, 2]).unwrap();
        let psi = crum_krein_apply(&tr, &Oscillator.eigenfunction(0)).unwrap();
        let shape = GaussFun::new(rf(Poly::one(), &[1, 0, 1]), int(-1));
        assert!(shape.proportionality_to(&psi).is_some_and(|c| !c.is_zero()));
    }

    #[test]
    fn kernel_function_examples() {
        let tr = transform(&[1, 2]).unwrap();
        let v = kernel_functions(&tr).unwrap();
        assert_eq!(
            v[0],
            GaussFun::new(rf(Poly::from_ints(&[-1, 0, 1]), &[1, 0, 1]), int(1))
        );
        assert_eq!(v[1], GaussFun::new(rf(Poly::x(), &[1, 0, 1]), int(1)));

        let tr0 = transform(&[0]).unwrap();
        let v0 = kernel_functions(&tr0).unwrap();
        assert_eq!(v0, vec![GaussFun::from_poly(Poly::one(), int(1))]);
    }

    #[test]
    fn ground_pair_partner_eigenfunction() {
        let tr = transform(&[0, 1]).unwrap();
        let psi = crum_krein_apply(&tr, &Oscillator.eigenfunction(2)).unwrap();
        assert!(!psi.is_zero());
        let residual = tr.hn().shift(&int(2)).apply(&psi).unwrap();
        assert!(residual.is_zero());
    }
}
