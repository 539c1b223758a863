use crate::gaussfun::GaussFun;
use crate::polycore::{NormValue, RatFun, Rational};

/// An exactly solvable base Hamiltonian `h0 = -d^2/dx^2 + V0(x)` whose
/// discrete eigenfunctions are Gaussian-weighted rational functions.
///
/// Levels are enumerated by their number of zeros.
pub trait SolvableModel: Send + Sync {
    fn name(&self) -> &str;

    fn potential(&self) -> RatFun;

    fn eigenvalue(&self, level: u32) -> Rational;

    /// Unnormalized eigenfunction at `level`.
    fn eigenfunction(&self, level: u32) -> GaussFun;

    /// Exact squared L2 norm of [`SolvableModel::eigenfunction`].
    fn squared_norm(&self, level: u32) -> NormValue;
}
