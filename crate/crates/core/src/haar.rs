//! Haar-random unitaries and the entanglement they generate on four qubits.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};
use crate::register::Register;
use crate::rng::{map_indexed, stream_rng};
use crate::search::{mean_entropy, EntropyLossSpec};
use crate::state::{product_plus_state, PureState};

/// Gaussian matrix orthonormalized column by column (modified Gram-Schmidt,
/// applied twice). Every diagonal entry of the implied triangular factor is
/// real and positive, which makes the result Haar distributed.
pub fn sample_haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    assert!(dim >= 1, "dimension must be positive");
    let mut m = CMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    for j in 0..dim {
        for _ in 0..2 {
            for i in 0..j {
                let proj: C64 = m.column(i).dotc(&m.column(j));
                let qi = m.column(i).clone_owned();
                m.column_mut(j).axpy(-proj, &qi, C64::new(1.0, 0.0));
            }
        }
        let norm = m.column(j).norm();
        m.column_mut(j).unscale_mut(norm);
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaarInitial {
    /// `|0…0⟩`.
    Zero,
    /// `|+⟩^⊗N`.
    Plus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HaarSampleReport {
    pub n: usize,
    pub seed: u64,
    /// Mean entropy (bits) over complementary pairs, one entry per sample.
    pub entropies: Vec<f64>,
    pub mean: f64,
    /// Sample standard deviation.
    pub std: f64,
    pub max: f64,
    /// Mean over every (sample, subsystem) entropy pooled together.
    pub pooled_mean: f64,
}

impl HaarSampleReport {
    pub fn samples(&self) -> usize {
        self.entropies.len()
    }

    pub fn standard_error(&self) -> f64 {
        self.std / (self.samples() as f64).sqrt()
    }
}

pub const MAX_HAAR_SITES: usize = 6;

/// Applies `samples` independent Haar unitaries on the full `2^n` space to
/// `initial` and records the mean `⌊n/2⌋`-site entropy of each result.
///
/// Sample `i` draws from stream `i` of `seed`.
pub fn haar_entropy_statistics(n: usize, samples: usize, seed: u64, initial: HaarInitial) -> Result<HaarSampleReport> {
    if !(2..=MAX_HAAR_SITES).contains(&n) {
        return Err(Error::Guard(format!("Haar statistics support 2..={MAX_HAAR_SITES} qubits, got {n}")));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let register = Register::qubits(n)?;
    let start = match initial {
        HaarInitial::Zero => PureState::zero(register.clone()),
        HaarInitial::Plus => product_plus_state(&register)?,
    };
    let spec = EntropyLossSpec::new(n)?;
    let per_sample = map_indexed(samples, |i| -> Result<f64> {
        let mut rng = stream_rng(seed, i as u64);
        let u = sample_haar_unitary(register.total_dim(), &mut rng);
        let amps: CVector = &u * start.amplitudes();
        let state = PureState::from_unnormalized(register.clone(), amps)?;
        mean_entropy(&state, &spec)
    });
    let entropies = per_sample.into_iter().collect::<Result<Vec<_>>>()?;
    let count = entropies.len() as f64;
    let mean = entropies.iter().sum::<f64>() / count;
    let var = if entropies.len() > 1 {
        entropies.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (count - 1.0)
    } else {
        0.0
    };
    let max = entropies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // every sample averages the same number of subsystems, so pooling
    // reproduces the mean of means up to rounding
    let subsets = spec.subsets().len() as f64;
    let pooled_mean = entropies.iter().map(|e| e * subsets).sum::<f64>() / (count * subsets);
    Ok(HaarSampleReport { n, seed, entropies, mean, std: var.sqrt(), max, pooled_mean })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unitarity_deviation;

    #[test]
    fn samples_are_unitary() {
        let mut rng = stream_rng(1, 0);
        for dim in [1, 2, 5, 16] {
            let u = sample_haar_unitary(dim, &mut rng);
            assert!(unitarity_deviation(&u) < 1e-10);
        }
        let s = sample_haar_unitary(1, &mut rng);
        assert!((s[(0, 0)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn report_is_consistent() {
        let r = haar_entropy_statistics(4, 50, 3, HaarInitial::Zero).unwrap();
        assert_eq!(r.samples(), 50);
        assert!(r.max >= r.mean && r.std >= 0.0);
        assert!(r.entropies.iter().all(|&e| (0.0..=2.0).contains(&e)));
        assert!((r.pooled_mean - r.mean).abs() < 1e-12);
        assert_eq!(r, haar_entropy_statistics(4, 50, 3, HaarInitial::Zero).unwrap());
    }
}
