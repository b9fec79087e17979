use crate::error::{Error, Result};

use super::MAX_CUTOFF;

/// Two-mode Fock kets `|n_a, n_b⟩` with `n_a + n_b <= cutoff`, in
/// lexicographic order of `(n_a, n_b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasis {
    max_total_photons: usize,
    kets: Vec<(usize, usize)>,
}

impl FockBasis {
    pub fn max_total_photons(&self) -> usize {
        self.max_total_photons
    }

    pub fn dimension(&self) -> usize {
        self.kets.len()
    }

    pub fn kets(&self) -> &[(usize, usize)] {
        &self.kets
    }

    /// Index of `|n_a, n_b⟩`, or `None` if it lies above the cutoff.
    pub fn index(&self, n_a: usize, n_b: usize) -> Option<usize> {
        let c = self.max_total_photons;
        if n_a + n_b > c {
            return None;
        }
        // rows n_a' < n_a hold c - n_a' + 1 kets each
        Some(n_a * (c + 1) - n_a * (n_a.saturating_sub(1)) / 2 + n_b)
    }

    pub fn vacuum(&self) -> usize {
        0
    }
}

pub fn build_basis(max_total_photons: usize) -> Result<FockBasis> {
    if max_total_photons > MAX_CUTOFF {
        return Err(Error::CutoffTooLarge(max_total_photons));
    }
    let kets = (0..=max_total_photons)
        .flat_map(|a| (0..=max_total_photons - a).map(move |b| (a, b)))
        .collect();
    Ok(FockBasis {
        max_total_photons,
        kets,
    })
}
