use crate::error::{Error, Result};
use crate::model::SolvableModel;
use crate::polycore::Rational;

/// Levels `k_1 < ... < k_N` whose eigenfunctions become the transformation
/// functions, together with their eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSelection {
    levels: Vec<u32>,
    alphas: Vec<Rational>,
}

impl LevelSelection {
    /// Sorts `levels`; rejects empty and repeated selections.
    pub fn new<M: SolvableModel + ?Sized>(model: &M, mut levels: Vec<u32>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidSelection(
                "selection must contain at least one level".into(),
            ));
        }
        levels.sort_unstable();
        if let Some(w) = levels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSelection(format!("level {} repeated", w[0])));
        }
        let alphas = levels.iter().map(|&k| model.eigenvalue(k)).collect();
        Ok(LevelSelection { levels, alphas })
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    pub fn order(&self) -> usize {
        self.levels.len()
    }

    pub fn contains(&self, level: u32) -> bool {
        self.levels.binary_search(&level).is_ok()
    }

    pub fn max_level(&self) -> u32 {
        *self.levels.last().expect("selection is nonempty")
    }

    pub fn min_level(&self) -> u32 {
        self.levels[0]
    }
}

/// First integer `k >= 0` at which `prod_i (k - k_i) < 0`, if any.
///
/// Past the largest level every factor is positive, so scanning
/// `0..=max(levels)` is exhaustive.
pub fn krein_violation(levels: &[u32]) -> Option<u32> {
    let max = levels.iter().copied().max()?;
    (0..=max).find(|&k| {
        if levels.contains(&k) {
            return false;
        }
        let negatives = levels.iter().filter(|&&ki| k < ki).count();
        negatives % 2 == 1
    })
}

/// Krein's sign condition `prod_i (k - k_i) >= 0` for all `k = 0, 1, 2, ...`.
pub fn krein_admissible(levels: &[u32]) -> bool {
    krein_violation(levels).is_none()
}
