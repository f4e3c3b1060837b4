//! Checks that a maximally entangled pair shrugs off single-site unitaries.

use crate::error::Result;
use crate::haar::sample_haar_unitary;
use crate::hamiltonian::{energy_expectation, LocalHamiltonian};
use crate::rng::stream_rng;
use crate::state::{PureState, State};
use crate::unitary::BlockUnitary;

#[derive(Clone, Debug, PartialEq)]
pub struct DefenceReport {
    pub trials: usize,
    pub initial_energy: f64,
    /// Largest `|E(U ψ) - E(ψ)|` over the trials.
    pub max_delta: f64,
}

/// Applies `trials` Haar unitaries to single sites of `state`, alternating
/// between sites, and records the largest energy change. Trial `i` draws from
/// stream `i` of `seed`.
pub fn perfect_defence_check(state: &PureState, h: &LocalHamiltonian, trials: usize, seed: u64) -> Result<DefenceReport> {
    let register = state.register();
    let start = State::from(state.clone());
    let initial_energy = energy_expectation(&start, h)?;
    let mut max_delta: f64 = 0.0;
    for i in 0..trials {
        let site = i % register.len();
        let mut rng = stream_rng(seed, i as u64);
        let u = BlockUnitary::new(vec![site], sample_haar_unitary(register.dims()[site], &mut rng))?;
        let e = energy_expectation(&start.apply(&u)?, h)?;
        max_delta = max_delta.max((e - initial_energy).abs());
    }
    Ok(DefenceReport { trials, initial_energy, max_delta })
}
