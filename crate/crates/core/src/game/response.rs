//! Optimal responses over block partitions.

use std::collections::HashMap;

use num_complex::Complex64 as C64;

use super::partition::{enumerate_partitions, BlockPartition};
use super::spectrum::{antipassive_energy, passive_energy, SpectrumTable};
use crate::entropy::clamp_eigenvalues;
use crate::error::{Error, Result};
use crate::hamiltonian::LocalHamiltonian;
use crate::linalg::{hermitian_eigen, CMatrix};
use crate::state::State;
use crate::unitary::BlockUnitary;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionMode {
    /// Search every legal partition.
    Optimize,
    Fixed(BlockPartition),
}

#[derive(Clone, Debug)]
pub struct GameOutcome {
    pub energy: f64,
    pub per_site_energy: f64,
    pub partition: BlockPartition,
    pub responder_unitaries: Option<Vec<BlockUnitary>>,
}

impl GameOutcome {
    pub(crate) fn new(energy: f64, n: usize, partition: BlockPartition, unitaries: Option<Vec<BlockUnitary>>) -> Self {
        Self { energy, per_site_energy: energy / n as f64, partition, responder_unitaries: unitaries }
    }
}

// Energies closer than this count as ties; the earlier partition wins.
const TIE_TOL: f64 = 1e-12;

/// Best energy a responder with blocks of at most `max_block` sites can reach.
///
/// Each block is driven to its passive (minimize) or anti-passive (maximize)
/// state. The achieving unitaries are synthesized for the winning partition.
pub fn best_response_energy(
    state: &State,
    hamiltonian: &LocalHamiltonian,
    max_block: usize,
    objective: Objective,
    mode: &PartitionMode,
) -> Result<GameOutcome> {
    hamiltonian.check_register(state.register())?;
    let n = state.num_sites();
    if max_block == 0 || max_block > n {
        return Err(Error::InvalidParameter(format!("max_block {max_block} outside 1..={n}")));
    }
    let candidates = match mode {
        PartitionMode::Optimize => enumerate_partitions(n, max_block)?,
        PartitionMode::Fixed(p) => {
            if p.num_sites() != n {
                return Err(Error::InvalidSites(format!("partition {p} does not cover {n} sites")));
            }
            if p.blocks().iter().any(|b| b.len() > max_block) {
                return Err(Error::IllegalMove(format!("partition {p} exceeds capability {max_block}")));
            }
            vec![p.clone()]
        }
    };

    let mut cache: HashMap<Vec<usize>, f64> = HashMap::new();
    let mut best: Option<(f64, &BlockPartition)> = None;
    for partition in &candidates {
        let mut total = 0.0;
        for block in partition.blocks() {
            let e = match cache.get(block) {
                Some(&e) => e,
                None => {
                    let e = block_optimum(state, hamiltonian, block, objective)?;
                    cache.insert(block.clone(), e);
                    e
                }
            };
            total += e;
        }
        let better = match best {
            None => true,
            Some((b, _)) => match objective {
                Objective::Minimize => total < b - TIE_TOL,
                Objective::Maximize => total > b + TIE_TOL,
            },
        };
        if better {
            best = Some((total, partition));
        }
    }
    let (energy, partition) = best.expect("at least one partition");
    let unitaries = partition
        .blocks()
        .iter()
        .map(|b| response_unitary(state, hamiltonian, b, objective))
        .collect::<Result<Vec<_>>>()?;
    Ok(GameOutcome::new(energy, n, partition.clone(), Some(unitaries)))
}

fn block_optimum(state: &State, hamiltonian: &LocalHamiltonian, block: &[usize], objective: Objective) -> Result<f64> {
    let reduced = state.partial_trace(block)?;
    let lam = clamp_eigenvalues(&reduced.eigenvalues())?;
    let table = SpectrumTable::for_block(hamiltonian, block);
    match objective {
        Objective::Minimize => passive_energy(&lam, &table),
        Objective::Maximize => antipassive_energy(&lam, &table),
    }
}

/// The unitary sending the `m`-th eigenvector of the block's reduced state
/// (eigenvalues decreasing) to the `m`-th energy eigenstate (increasing for
/// minimize, decreasing for maximize).
pub fn response_unitary(
    state: &State,
    hamiltonian: &LocalHamiltonian,
    block: &[usize],
    objective: Objective,
) -> Result<BlockUnitary> {
    let reduced = state.partial_trace(block)?;
    let (_, vectors) = hermitian_eigen(reduced.matrix());
    let table = SpectrumTable::for_block(hamiltonian, block);
    let targets: Vec<usize> = match objective {
        Objective::Minimize => table.ascending_order().to_vec(),
        Objective::Maximize => table.descending_order(),
    };
    let dim = table.len();
    let mut u = CMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    for (m, &target) in targets.iter().enumerate() {
        for j in 0..dim {
            u[(target, j)] = vectors[(j, m)].conj();
        }
    }
    BlockUnitary::new(block.to_vec(), u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{bell_state, ghz_state};

    #[test]
    fn bell_defeats_single_qubit_responder() {
        let s: State = bell_state().into();
        let h = LocalHamiltonian::pauli_z(2);
        let out = best_response_energy(&s, &h, 1, Objective::Minimize, &PartitionMode::Optimize).unwrap();
        assert!(out.energy.abs() < 1e-12);
        let out = best_response_energy(&s, &h, 2, Objective::Maximize, &PartitionMode::Optimize).unwrap();
        assert!((out.energy - 2.0).abs() < 1e-12);
    }

    #[test]
    fn synthesized_unitaries_achieve_prediction() {
        let s: State = ghz_state(3).unwrap().into();
        let h = LocalHamiltonian::pauli_z(3);
        for obj in [Objective::Minimize, Objective::Maximize] {
            let out = best_response_energy(&s, &h, 2, obj, &PartitionMode::Optimize).unwrap();
            let mut after = s.clone();
            for u in out.responder_unitaries.as_ref().unwrap() {
                after = after.apply(u).unwrap();
            }
            assert!((h.energy(&after).unwrap() - out.energy).abs() < 1e-12);
        }
    }

    #[test]
    fn fixed_partition_must_respect_capability() {
        let s: State = ghz_state(3).unwrap().into();
        let h = LocalHamiltonian::pauli_z(3);
        let p = BlockPartition::new(vec![vec![0, 1, 2]], 3, 3).unwrap();
        assert!(best_response_energy(&s, &h, 2, Objective::Minimize, &PartitionMode::Fixed(p)).is_err());
        assert!(best_response_energy(&s, &h, 4, Objective::Minimize, &PartitionMode::Optimize).is_err());
    }
}
