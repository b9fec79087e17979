use std::collections::BTreeMap;

use num_complex::Complex64;

use super::basis::FockBasis;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Lower,
    Raise,
}

/// Sparse operator on a truncated two-mode Fock basis, stored row by row.
/// Components pushed above the cutoff are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeOperator {
    basis: FockBasis,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl ModeOperator {
    fn from_map(basis: &FockBasis, map: BTreeMap<(usize, usize), Complex64>) -> Self {
        let mut rows = vec![Vec::new(); basis.dimension()];
        for ((r, c), z) in map {
            if z != Complex64::new(0.0, 0.0) {
                rows[r].push((c, z));
            }
        }
        Self {
            basis: basis.clone(),
            rows,
        }
    }

    pub fn zero(basis: &FockBasis) -> Self {
        Self::from_map(basis, BTreeMap::new())
    }

    /// Single-mode ladder operator with elements `√n`.
    pub fn ladder(basis: &FockBasis, mode: Mode, ladder: Ladder) -> Self {
        let mut map = BTreeMap::new();
        for (col, &(na, nb)) in basis.kets().iter().enumerate() {
            let n = match mode {
                Mode::A => na,
                Mode::B => nb,
            };
            let (target, amplitude) = match ladder {
                Ladder::Lower if n == 0 => continue,
                Ladder::Lower => (shift(mode, na, nb, -1), (n as f64).sqrt()),
                Ladder::Raise => (shift(mode, na, nb, 1), ((n + 1) as f64).sqrt()),
            };
            if let Some(row) = basis.index(target.0, target.1) {
                map.insert((row, col), Complex64::new(amplitude, 0.0));
            }
        }
        Self::from_map(basis, map)
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn element(&self, row: usize, col: usize) -> Complex64 {
        self.rows[row]
            .iter()
            .find(|(c, _)| *c == col)
            .map(|(_, z)| *z)
            .unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `Σ cᵢ Opᵢ`; all terms must share this operator's basis.
    pub fn linear_combination(basis: &FockBasis, terms: &[(Complex64, &ModeOperator)]) -> Self {
        let mut map = BTreeMap::new();
        for (scale, op) in terms {
            assert_eq!(op.basis, *basis, "operators on different bases");
            for (r, row) in op.rows.iter().enumerate() {
                for &(c, z) in row {
                    *map.entry((r, c)).or_insert_with(Complex64::default) += scale * z;
                }
            }
        }
        Self::from_map(basis, map)
    }

    pub fn adjoint(&self) -> Self {
        let mut map = BTreeMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, z) in row {
                map.insert((c, r), z.conj());
            }
        }
        Self::from_map(&self.basis, map)
    }

    /// Matrix product `self · rhs`.
    pub fn product(&self, rhs: &ModeOperator) -> Self {
        assert_eq!(self.basis, rhs.basis, "operators on different bases");
        let mut map = BTreeMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            for &(k, a) in row {
                for &(c, b) in &rhs.rows[k] {
                    *map.entry((r, c)).or_insert_with(Complex64::default) += a * b;
                }
            }
        }
        Self::from_map(&self.basis, map)
    }

    pub fn apply(&self, state: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(state.len(), self.rows.len(), "state dimension mismatch");
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(c, z)| z * state[c]).sum())
            .collect()
    }
}

fn shift(mode: Mode, na: usize, nb: usize, by: isize) -> (usize, usize) {
    let step = |n: usize| (n as isize + by) as usize;
    match mode {
        Mode::A => (step(na), nb),
        Mode::B => (na, step(nb)),
    }
}
