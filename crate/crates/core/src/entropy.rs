use crate::error::{Error, Result};
use crate::linalg::{EIGEN_CUTOFF, NEGATIVE_CLAMP};
use crate::state::{MixedState, PureState};

/// Eigenvalues of a reduced state across a bipartition.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtSpectrum {
    /// Nonincreasing, nonnegative.
    pub eigenvalues: Vec<f64>,
    /// Number of eigenvalues above [`EIGEN_CUTOFF`].
    pub rank: usize,
}

impl SchmidtSpectrum {
    pub fn from_eigenvalues(raw: &[f64]) -> Result<Self> {
        let eigenvalues = clamp_eigenvalues(raw)?;
        let rank = eigenvalues.iter().filter(|&&l| l > EIGEN_CUTOFF).count();
        Ok(Self { eigenvalues, rank })
    }

    pub fn entropy(&self, log_base: f64) -> f64 {
        entropy_of(&self.eigenvalues, log_base)
    }
}

/// Spectrum of the reduced state of `state` on `subsystem`.
pub fn schmidt_spectrum(state: &PureState, subsystem: &[usize]) -> Result<SchmidtSpectrum> {
    SchmidtSpectrum::from_eigenvalues(&state.partial_trace(subsystem)?.eigenvalues())
}

/// `-Σ λ log_b λ` with `0 log 0 = 0`.
pub fn von_neumann_entropy(state: &MixedState, log_base: f64) -> Result<f64> {
    if log_base < 2.0 {
        return Err(Error::InvalidParameter(format!("log base {log_base} is below 2")));
    }
    Ok(entropy_of(&clamp_eigenvalues(&state.eigenvalues())?, log_base))
}

/// Entropy of an already-clean probability vector.
pub fn entropy_of(eigenvalues: &[f64], log_base: f64) -> f64 {
    let ln_b = log_base.ln();
    -eigenvalues
        .iter()
        .filter(|&&l| l > EIGEN_CUTOFF)
        .map(|&l| l * l.ln())
        .sum::<f64>()
        / ln_b
}

/// Sorts nonincreasing and clamps small negative eigenvalues to zero.
pub fn clamp_eigenvalues(raw: &[f64]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(raw.len());
    for &l in raw {
        if l < -NEGATIVE_CLAMP {
            return Err(Error::NegativeEigenvalue(l));
        }
        out.push(l.max(0.0));
    }
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}
