use super::transform::{crum_krein_apply, kernel_functions, TransformResult};
use crate::error::Result;
use crate::gaussfun::{operator_polynomial, DiffOp, GaussFun};
use crate::model::SolvableModel;

/// Both sides of `L^+ L = prod (h0 - alpha_i)` and `L L^+ = prod (h_N - alpha_i)`
/// with their differences.
#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub l_dagger_l: DiffOp,
    pub h0_product: DiffOp,
    pub h0_residual: DiffOp,
    pub l_l_dagger: DiffOp,
    pub hn_product: DiffOp,
    pub hn_residual: DiffOp,
}

impl FactorizationReport {
    pub fn h0_identity_holds(&self) -> bool {
        self.h0_residual.is_zero()
    }

    pub fn hn_identity_holds(&self) -> bool {
        self.hn_residual.is_zero()
    }

    pub fn holds(&self) -> bool {
        self.h0_identity_holds() && self.hn_identity_holds()
    }
}

pub fn factorization_identity_check(tr: &TransformResult) -> FactorizationReport {
    let l = &tr.operator;
    let l_dag = l.adjoint();
    let alphas = tr.selection.alphas();

    let l_dagger_l = l_dag.compose(l);
    let h0_product = operator_polynomial(&tr.h0(), alphas);
    let h0_residual = l_dagger_l.sub(&h0_product);

    let l_l_dagger = l.compose(&l_dag);
    let hn_product = operator_polynomial(&tr.hn(), alphas);
    let hn_residual = l_l_dagger.sub(&hn_product);

    FactorizationReport {
        l_dagger_l,
        h0_product,
        h0_residual,
        l_l_dagger,
        hn_product,
        hn_residual,
    }
}

/// Kernel identities: `L u_i = 0`, `L^+ v_k = 0` and `(h_N - alpha_k) v_k = 0`.
#[derive(Clone, Debug)]
pub struct KernelReport {
    pub operator_on_u: Vec<GaussFun>,
    pub adjoint_on_v: Vec<GaussFun>,
    pub eigen_on_v: Vec<GaussFun>,
}

impl KernelReport {
    pub fn operator_kernel_holds(&self) -> bool {
        self.operator_on_u.iter().all(GaussFun::is_zero)
    }

    pub fn adjoint_kernel_holds(&self) -> bool {
        self.adjoint_on_v.iter().all(GaussFun::is_zero)
    }

    pub fn kernel_eigen_holds(&self) -> bool {
        self.eigen_on_v.iter().all(GaussFun::is_zero)
    }

    pub fn holds(&self) -> bool {
        self.operator_kernel_holds() && self.adjoint_kernel_holds() && self.kernel_eigen_holds()
    }
}

pub fn kernel_identity_check(tr: &TransformResult) -> Result<KernelReport> {
    let operator_on_u = tr.u.iter().map(|u| tr.operator.apply(u)).collect::<Result<Vec<_>>>()?;
    let adjoint = tr.operator.adjoint();
    let hn = tr.hn();
    let v = kernel_functions(tr)?;
    let adjoint_on_v = v.iter().map(|vk| adjoint.apply(vk)).collect::<Result<Vec<_>>>()?;
    let eigen_on_v = v
        .iter()
        .zip(tr.selection.alphas())
        .map(|(vk, alpha)| hn.shift(alpha).apply(vk))
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelReport {
        operator_on_u,
        adjoint_on_v,
        eigen_on_v,
    })
}

/// `(h_N - E_n) L phi_n`; exactly zero when the intertwining holds.
pub fn eigen_residual<M: SolvableModel + ?Sized>(model: &M, tr: &TransformResult, level: u32) -> Result<GaussFun> {
    let psi = crum_krein_apply(tr, &model.eigenfunction(level))?;
    tr.hn().shift(&model.eigenvalue(level)).apply(&psi)
}
