//! Gaussian-weighted rational functions `r(x) exp(s x^2 / 4)` and
//! differential operators with rational-function coefficients.

mod det;
mod diffop;
mod gauss;

pub use det::{det_bareiss, det_cofactor};
pub(crate) use diffop::operator_polynomial;
pub use diffop::{diffop_adjoint, diffop_apply, diffop_compose, DiffOp};
pub use gauss::{gauss_derivative, wronskian, wronskian_matrix, GaussFun};
