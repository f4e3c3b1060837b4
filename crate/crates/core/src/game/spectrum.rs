//! Passive and anti-passive energies of a block.
//!
//! For a fixed spectrum `λ` and block energies `E`, the minimum of
//! `tr(H U ρ U†)` over unitaries pairs `λ` sorted decreasing with `E` sorted
//! increasing; the maximum pairs both decreasing.

use crate::error::{Error, Result};
use crate::hamiltonian::LocalHamiltonian;

/// Energies of a block's product basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumTable {
    sites: Vec<usize>,
    /// Energy of each block basis state, in basis order.
    levels: Vec<f64>,
    /// Basis indices ordered by nondecreasing energy; ties keep index order.
    ascending: Vec<usize>,
}

impl SpectrumTable {
    pub fn for_block(hamiltonian: &LocalHamiltonian, sites: &[usize]) -> Self {
        Self::from_levels(sites.to_vec(), hamiltonian.block_levels(sites))
    }

    /// `n` qubits under `Σ σ^z`: level `n - 2k` with multiplicity `C(n, k)`.
    pub fn qubits(n: usize) -> Self {
        let sites: Vec<usize> = (0..n).collect();
        Self::for_block(&LocalHamiltonian::pauli_z(n), &sites)
    }

    pub fn from_levels(sites: Vec<usize>, levels: Vec<f64>) -> Self {
        let mut ascending: Vec<usize> = (0..levels.len()).collect();
        ascending.sort_by(|&a, &b| levels[a].total_cmp(&levels[b]));
        Self { sites, levels, ascending }
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Energies sorted nondecreasing, degeneracies expanded.
    pub fn energies(&self) -> Vec<f64> {
        self.ascending.iter().map(|&i| self.levels[i]).collect()
    }

    /// Basis indices from lowest to highest energy.
    pub fn ascending_order(&self) -> &[usize] {
        &self.ascending
    }

    /// Basis indices from highest to lowest energy; ties keep index order.
    pub fn descending_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.levels.len()).collect();
        order.sort_by(|&a, &b| self.levels[b].total_cmp(&self.levels[a]));
        order
    }
}

fn sorted_desc(eigenvalues: &[f64], table: &SpectrumTable) -> Result<Vec<f64>> {
    if eigenvalues.len() > table.len() {
        return Err(Error::DimensionMismatch { expected: table.len(), got: eigenvalues.len() });
    }
    let mut lam = eigenvalues.to_vec();
    lam.sort_by(|a, b| b.total_cmp(a));
    Ok(lam)
}

/// `Σ λ↓_i E↑_i`: the lowest block energy reachable by a unitary.
pub fn passive_energy(eigenvalues: &[f64], table: &SpectrumTable) -> Result<f64> {
    let lam = sorted_desc(eigenvalues, table)?;
    Ok(lam.iter().zip(table.ascending_order()).map(|(l, &i)| l * table.levels[i]).sum())
}

/// `Σ λ↓_i E↓_i`: the highest block energy reachable by a unitary.
pub fn antipassive_energy(eigenvalues: &[f64], table: &SpectrumTable) -> Result<f64> {
    let lam = sorted_desc(eigenvalues, table)?;
    Ok(lam.iter().zip(table.descending_order()).map(|(l, i)| l * table.levels[i]).sum())
}
