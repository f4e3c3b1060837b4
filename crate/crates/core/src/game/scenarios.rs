//! Defensive states used by the worked scenarios.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::register::Register;
use super::partition::BlockPartition;
use super::response::{best_response_energy, Objective, PartitionMode};
use crate::hamiltonian::LocalHamiltonian;
use crate::state::{bell_state, ghz_state, PureState, State};

/// `√λ₁|000⟩ + √(1-λ₁)|111⟩`: every 2|1 cut has Schmidt coefficients
/// `(λ₁, 1-λ₁)`, so the responder gains nothing by choosing another pair.
pub fn three_qubit_lambda_state(lambda1: f64) -> Result<PureState> {
    if !(0.0..=1.0).contains(&lambda1) {
        return Err(Error::InvalidParameter(format!("lambda1 = {lambda1} outside [0, 1]")));
    }
    let mut amps = CVector::zeros(8);
    amps[0] = C64::new(lambda1.sqrt(), 0.0);
    amps[7] = C64::new((1.0 - lambda1).sqrt(), 0.0);
    PureState::new(Register::qubits(3)?, amps)
}

/// GHZ on sites 0..3 and a Bell pair on sites 3, 4.
pub fn ghz3_bell_state() -> PureState {
    ghz_state(3)
        .and_then(|g| g.tensor(&bell_state()))
        .expect("five qubits fit every cap")
}

/// `m` Bell pairs linking block sites `0..m` to sites `nb..nb+m`, with block
/// sites `m..nb` in `|0⟩`. The block's reduced state is uniform of rank `2^m`.
pub fn bell_pair_construction(nb: usize, m: usize) -> Result<PureState> {
    if nb == 0 || m > nb {
        return Err(Error::InvalidParameter(format!("need 1 <= nb and m <= nb, got nb={nb} m={m}")));
    }
    let register = Register::qubits(nb + m)?;
    let mut amps = CVector::zeros(register.total_dim());
    let a = C64::new((1u64 << m) as f64, 0.0).sqrt().inv();
    for bits in 0..(1usize << m) {
        let mut digits = vec![0; nb + m];
        for j in 0..m {
            let b = (bits >> (m - 1 - j)) & 1;
            digits[j] = b;
            digits[nb + j] = b;
        }
        amps[register.index_of(&digits)] = a;
    }
    PureState::new(register, amps)
}

/// Responder minimum on [`bell_pair_construction`] with the block `0..nb`
/// fixed and every other site a singleton.
pub fn bell_pair_block_minimum(nb: usize, m: usize) -> Result<f64> {
    let state = State::from(bell_pair_construction(nb, m)?);
    let n = nb + m;
    let partition = BlockPartition::completed(vec![(0..nb).collect()], n, nb)?;
    let h = LocalHamiltonian::pauli_z(n);
    Ok(best_response_energy(&state, &h, nb, Objective::Minimize, &PartitionMode::Fixed(partition))?.energy)
}

/// Energy of [`three_qubit_lambda_state`] after a responder with pairs picks
/// its best partition.
pub fn three_qubit_lambda_minimum(lambda1: f64) -> Result<f64> {
    let state = State::from(three_qubit_lambda_state(lambda1)?);
    let h = LocalHamiltonian::pauli_z(3);
    Ok(best_response_energy(&state, &h, 2, Objective::Minimize, &PartitionMode::Optimize)?.energy)
}
