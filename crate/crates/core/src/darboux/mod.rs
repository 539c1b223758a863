//! N-th order Darboux (Crum-Krein) transformations built from discrete
//! eigenfunctions of a solvable model.

mod identities;
mod selection;
mod transform;

pub use identities::{
    eigen_residual, factorization_identity_check, kernel_identity_check, FactorizationReport, KernelReport,
};
pub use selection::{krein_admissible, krein_violation, LevelSelection};
pub use transform::{
    build_transform, crum_krein_apply, crum_krein_operator, kernel_functions, partner_eigenfunction,
    wronskian_root_count, TransformResult,
};
