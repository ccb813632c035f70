//! Kleene star `A* = I ⊕ A ⊕ A² ⊕ …` by an all-pairs longest-path sweep.

use crate::error::{Error, Result};
use crate::matrix::{KernelMatrix, Matrix};
use crate::value::{oplus, otimes, Finite, MaxPlusValue, EQ_TOL};

#[derive(Clone, Debug, PartialEq)]
pub struct StarMatrix {
    entries: Matrix,
    kernel: KernelMatrix,
    infinite_entries: Vec<(usize, usize)>,
}

impl StarMatrix {
    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// The (normalized) one-step kernel this star was computed from.
    pub fn kernel(&self) -> &KernelMatrix {
        &self.kernel
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn basepoint(&self) -> usize {
        self.kernel.basepoint()
    }

    pub fn get(&self, x: usize, y: usize) -> MaxPlusValue {
        self.entries[(x, y)]
    }

    /// Entries equal to -∞. Non-empty means the finiteness hypothesis of the
    /// Martin construction fails for this kernel.
    pub fn infinite_entries(&self) -> &[(usize, usize)] {
        &self.infinite_entries
    }

    pub fn is_finite(&self) -> bool {
        self.infinite_entries.is_empty()
    }

    pub fn require_finite(&self) -> Result<()> {
        match self.infinite_entries.first() {
            None => Ok(()),
            Some(&(x, y)) => Err(Error::AssumptionViolated(format!(
                "A*<{},{}> = -inf ({} infinite entries)",
                self.kernel.states()[x],
                self.kernel.states()[y],
                self.infinite_entries.len()
            ))),
        }
    }

    /// Finite entry as a float. Callers must have checked [`Self::require_finite`].
    pub(crate) fn fin(&self, x: usize, y: usize) -> f64 {
        self.entries[(x, y)].finite().expect("star entry checked finite")
    }
}

/// Kleene star of a kernel whose cycles all have nonpositive weight.
///
/// Returns [`Error::PositiveCycle`] when some cycle has positive weight, since
/// the supremum would then be +∞. Entries equal to -∞ are accepted and listed
/// in [`StarMatrix::infinite_entries`].
pub fn kleene_star(a: &KernelMatrix) -> Result<StarMatrix> {
    let n = a.dim();
    let mut s = Matrix::identity(n).oplus(a.matrix())?;
    if s.iter().any(|v| matches!(v, MaxPlusValue::PosInf)) {
        return Err(Error::InvalidArgument("kernel entries must not be +inf".into()));
    }
    for k in 0..n {
        for i in 0..n {
            let sik = s[(i, k)];
            if sik.is_neg_inf() {
                continue;
            }
            for j in 0..n {
                let cand = otimes(sik, s[(k, j)]);
                s[(i, j)] = oplus(s[(i, j)], cand);
            }
        }
        if let Some(state) = (0..n).find(|&i| s[(i, i)] > Finite(EQ_TOL)) {
            return Err(Error::PositiveCycle { state });
        }
    }
    for i in 0..n {
        // absorb float noise from zero-mean cycles
        s[(i, i)] = MaxPlusValue::ZERO;
    }
    let infinite_entries = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| s[(i, j)].is_neg_inf())
        .collect();
    Ok(StarMatrix { entries: s, kernel: a.clone(), infinite_entries })
}
