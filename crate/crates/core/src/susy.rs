//! Supercharges built from the intertwining operator and the spectrum of
//! the super-Hamiltonian `diag(h0, h_N)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::darboux::{build_transform, LevelSelection, TransformResult};
use crate::error::{Error, Result};
use crate::gaussfun::GaussFun;
use crate::model::SolvableModel;
use crate::polycore::Rational;

/// Two-component state: `upper` lives in the `h0` sector, `lower` in the
/// `h_N` sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Doublet {
    pub upper: GaussFun,
    pub lower: GaussFun,
    pub energy: Option<Rational>,
}

impl Doublet {
    pub fn upper(f: GaussFun, energy: Option<Rational>) -> Self {
        Doublet {
            upper: f,
            lower: GaussFun::zero(),
            energy,
        }
    }

    pub fn lower(f: GaussFun, energy: Option<Rational>) -> Self {
        Doublet {
            upper: GaussFun::zero(),
            lower: f,
            energy,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.upper.is_zero() && self.lower.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Doublet {
        Doublet {
            upper: self.upper.scale(c),
            lower: self.lower.scale(c),
            energy: self.energy.clone(),
        }
    }

    fn add(&self, other: &Doublet) -> Result<Doublet> {
        Ok(Doublet {
            upper: self.upper.add(&other.upper)?,
            lower: self.lower.add(&other.lower)?,
            energy: self.energy.clone().or_else(|| other.energy.clone()),
        })
    }

    /// Same components, ignoring the energy label.
    pub fn same_state(&self, other: &Doublet) -> bool {
        self.upper == other.upper && self.lower == other.lower
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `Q = [[0, 0], [L, 0]]`.
    Q,
    /// `Q^+ = [[0, L^+], [0, 0]]`.
    QDagger,
}

/// `Q: (phi, psi) -> (0, L phi)`, `Q^+: (phi, psi) -> (L^+ psi, 0)`.
pub fn supercharge_apply(side: Side, tr: &TransformResult, state: &Doublet) -> Result<Doublet> {
    Ok(match side {
        Side::Q => Doublet::lower(tr.operator.apply(&state.upper)?, state.energy.clone()),
        Side::QDagger => Doublet::upper(tr.operator.adjoint().apply(&state.lower)?, state.energy.clone()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Degeneracy {
    /// Eigenfunctions exist in both sectors.
    Doublet,
    /// Only the `h0` sector has an eigenfunction; annihilated by both
    /// supercharges.
    Singlet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelTag {
    pub level: u32,
    pub energy: String,
    pub tag: Degeneracy,
}

#[derive(Clone, Debug)]
pub struct SusyClassification {
    pub n0: BTreeSet<u32>,
    pub vacuum_level: u32,
    pub vacuum_energy: Rational,
    pub tags: Vec<LevelTag>,
    /// Levels whose energy lies strictly below the vacuum.
    pub below_vacuum: BTreeSet<u32>,
}

impl SusyClassification {
    pub fn singlets(&self) -> BTreeSet<u32> {
        self.levels_tagged(Degeneracy::Singlet)
    }

    pub fn doublets(&self) -> BTreeSet<u32> {
        self.levels_tagged(Degeneracy::Doublet)
    }

    fn levels_tagged(&self, tag: Degeneracy) -> BTreeSet<u32> {
        self.tags.iter().filter(|t| t.tag == tag).map(|t| t.level).collect()
    }
}

/// Classifies levels `0..=n_max` by rule (singlet iff selected) and
/// confirms each tag constructively: `L phi_i` vanishes exactly for the
/// singlets and nowhere else.
pub fn classify<M: SolvableModel + ?Sized>(model: &M, sel: &LevelSelection, n_max: u32) -> Result<SusyClassification> {
    let tr = build_transform(model, sel)?;
    classify_transform(model, &tr, n_max)
}

pub fn classify_transform<M: SolvableModel + ?Sized>(
    model: &M,
    tr: &TransformResult,
    n_max: u32,
) -> Result<SusyClassification> {
    let sel = &tr.selection;
    if n_max < sel.max_level() {
        return Err(Error::InvalidSelection(format!(
            "n_max = {n_max} is below the highest selected level {}",
            sel.max_level()
        )));
    }
    let n0: BTreeSet<u32> = sel.levels().iter().copied().collect();
    let vacuum_level = sel.min_level();
    let vacuum_energy = model.eigenvalue(vacuum_level);

    let mut tags = Vec::new();
    let mut below_vacuum = BTreeSet::new();
    for level in 0..=n_max {
        let by_rule = if n0.contains(&level) {
            Degeneracy::Singlet
        } else {
            Degeneracy::Doublet
        };
        let image = tr.operator.apply(&model.eigenfunction(level))?;
        let constructive = if image.is_zero() {
            Degeneracy::Singlet
        } else {
            Degeneracy::Doublet
        };
        if by_rule != constructive {
            return Err(Error::ClassificationMismatch(level));
        }
        let energy = model.eigenvalue(level);
        if energy < vacuum_energy {
            below_vacuum.insert(level);
        }
        tags.push(LevelTag {
            level,
            energy: energy.to_string(),
            tag: by_rule,
        });
    }
    Ok(SusyClassification {
        n0,
        vacuum_level,
        vacuum_energy,
        tags,
        below_vacuum,
    })
}

/// One line of the superalgebra check at a given level.
#[derive(Clone, Debug)]
pub struct AnticommutatorEntry {
    pub level: u32,
    pub energy: Rational,
    /// `prod_i (E - alpha_i)`.
    pub factor: Rational,
    /// `{Q, Q^+} - factor` on `(phi_E, 0)`.
    pub upper_residual: Doublet,
    /// `{Q, Q^+} - factor` on `(0, L phi_E)`; absent for singlets.
    pub lower_residual: Option<Doublet>,
    /// `(h_N - E) L phi_E`, i.e. `[Q, H]` evaluated on the state.
    pub commutator_residual: GaussFun,
}

impl AnticommutatorEntry {
    pub fn holds(&self) -> bool {
        self.upper_residual.is_zero()
            && self.lower_residual.as_ref().is_none_or(Doublet::is_zero)
            && self.commutator_residual.is_zero()
    }
}

fn anticommutator(tr: &TransformResult, state: &Doublet) -> Result<Doublet> {
    let q_qd = supercharge_apply(Side::Q, tr, &supercharge_apply(Side::QDagger, tr, state)?)?;
    let qd_q = supercharge_apply(Side::QDagger, tr, &supercharge_apply(Side::Q, tr, state)?)?;
    q_qd.add(&qd_q)
}

/// Verifies `{Q, Q^+} = prod_i (H - alpha_i)` on eigen-doublets at the given
/// levels, and that `Q` maps `h0` eigenstates to `h_N` eigenstates.
pub fn anticommutator_check<M: SolvableModel + ?Sized>(
    model: &M,
    tr: &TransformResult,
    levels: &[u32],
) -> Result<Vec<AnticommutatorEntry>> {
    let neg_one = Rational::from_integer((-1).into());
    levels
        .iter()
        .map(|&level| {
            let energy = model.eigenvalue(level);
            let factor = tr
                .selection
                .alphas()
                .iter()
                .fold(Rational::from_integer(1.into()), |acc, a| acc * (&energy - a));
            let phi = model.eigenfunction(level);
            let upper = Doublet::upper(phi.clone(), Some(energy.clone()));
            let upper_residual = anticommutator(tr, &upper)?.add(&upper.scale(&factor).scale(&neg_one))?;

            let psi = tr.operator.apply(&phi)?;
            let lower_residual = if psi.is_zero() {
                None
            } else {
                let lower = Doublet::lower(psi.clone(), Some(energy.clone()));
                Some(anticommutator(tr, &lower)?.add(&lower.scale(&factor).scale(&neg_one))?)
            };
            let commutator_residual = tr.hn().shift(&energy).apply(&psi)?;
            Ok(AnticommutatorEntry {
                level,
                energy,
                factor,
                upper_residual,
                lower_residual,
                commutator_residual,
            })
        })
        .collect()
}
