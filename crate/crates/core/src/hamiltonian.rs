use crate::error::{Error, Result};
use crate::register::Register;
use crate::state::{MixedState, State};

/// A Hamiltonian that is a sum of diagonal single-site terms.
///
/// `spectra[s][x]` is the energy of level `x` on site `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalHamiltonian {
    spectra: Vec<Vec<f64>>,
}

impl LocalHamiltonian {
    pub fn new(spectra: Vec<Vec<f64>>) -> Result<Self> {
        if spectra.is_empty() || spectra.iter().any(|s| s.len() < 2) {
            return Err(Error::InvalidParameter("every site needs at least two levels".into()));
        }
        Ok(Self { spectra })
    }

    /// `Σ_n σ^z_n` with `σ^z = diag(+1, -1)`, so `|0⟩` has energy +1.
    pub fn pauli_z(n: usize) -> Self {
        Self { spectra: vec![vec![1.0, -1.0]; n] }
    }

    pub fn uniform(n: usize, spectrum: &[f64]) -> Result<Self> {
        Self::new(vec![spectrum.to_vec(); n])
    }

    /// Five-level sites with `diag(E2, E1, 0, -E1, -E2)`.
    pub fn five_level(n: usize, e1: f64, e2: f64) -> Self {
        Self { spectra: vec![vec![e2, e1, 0.0, -e1, -e2]; n] }
    }

    pub fn negated(&self) -> Self {
        Self { spectra: self.spectra.iter().map(|s| s.iter().map(|e| -e).collect()).collect() }
    }

    pub fn num_sites(&self) -> usize {
        self.spectra.len()
    }

    pub fn site_spectrum(&self, site: usize) -> &[f64] {
        &self.spectra[site]
    }

    /// Energies of the block's product basis, in block basis order.
    pub fn block_levels(&self, sites: &[usize]) -> Vec<f64> {
        let mut levels = vec![0.0];
        for &s in sites {
            levels = levels
                .iter()
                .flat_map(|&base| self.spectra[s].iter().map(move |&e| base + e))
                .collect();
        }
        levels
    }

    pub fn check_register(&self, register: &Register) -> Result<()> {
        if register.len() != self.spectra.len() {
            return Err(Error::DimensionMismatch { expected: self.spectra.len(), got: register.len() });
        }
        for (&d, s) in register.dims().iter().zip(&self.spectra) {
            if d != s.len() {
                return Err(Error::DimensionMismatch { expected: s.len(), got: d });
            }
        }
        Ok(())
    }

    /// `tr(H ρ)`; the Hamiltonian is diagonal, so only populations matter.
    pub fn energy(&self, state: &State) -> Result<f64> {
        self.check_register(state.register())?;
        let all: Vec<usize> = (0..self.num_sites()).collect();
        let levels = self.block_levels(&all);
        Ok(state.populations().iter().zip(&levels).map(|(p, e)| p * e).sum())
    }

    /// Energy of a reduced state living on `sites` under the block's terms.
    pub fn block_energy(&self, reduced: &MixedState, sites: &[usize]) -> f64 {
        let levels = self.block_levels(sites);
        reduced.matrix().diagonal().iter().zip(&levels).map(|(p, e)| p.re * e).sum()
    }
}

/// Convenience wrapper matching the library's free-function style.
pub fn energy_expectation(state: &State, hamiltonian: &LocalHamiltonian) -> Result<f64> {
    hamiltonian.energy(state)
}
