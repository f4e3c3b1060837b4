//! Payoff tables: closed-form curves and best responses against searched
//! maximally entangled states.

use super::cache::StateRecord;
use super::{search_max_entropy_state, AnsatzKind, MAX_SEARCH_SITES};
use crate::error::{Error, Result};
use crate::game::{best_response_energy, closed_form_min_energy, Objective, PartitionMode};
use crate::hamiltonian::LocalHamiltonian;
use crate::state::State;

/// Block sizes of the closed-form curves.
pub const FIG2A_BLOCK_SIZES: [u32; 4] = [5, 10, 15, 20];

#[derive(Clone, Debug, PartialEq)]
pub struct Fig2aRow {
    pub nb: u32,
    pub m: u32,
    pub m_over_nb: f64,
    /// Total energy divided by `nb + m`.
    pub energy_per_site: f64,
}

/// Closed-form rows for every `m` in `0..=nb`.
pub fn fig2a_rows(block_sizes: &[u32]) -> Vec<Fig2aRow> {
    let mut rows = Vec::new();
    for &nb in block_sizes {
        for m in 0..=nb {
            let energy = closed_form_min_energy(nb, m);
            rows.push(Fig2aRow {
                nb,
                m,
                m_over_nb: m as f64 / nb as f64,
                energy_per_site: energy / (nb + m) as f64,
            });
        }
    }
    rows
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fig2Row {
    pub n: usize,
    pub nb: usize,
    /// Sites outside a `nb`-block, capped at `nb`: the most qubits of
    /// entanglement a block of B can carry.
    pub m: usize,
    pub m_over_nb: f64,
    pub mean_entropy: f64,
    pub energy: f64,
    pub energy_per_site: f64,
}

/// Ansatz used for A's defence on `n` qubits.
pub fn defence_ansatz(n: usize) -> AnsatzKind {
    if n == 4 {
        AnsatzKind::Symmetric4
    } else {
        AnsatzKind::Generic
    }
}

/// B's best partition-optimized minimum against A's searched state, for every
/// `n` in `ns` and every `nb <= n` in `nbs`.
///
/// `state_for(n)` supplies A's state, e.g. from a [`super::StateCache`].
pub fn fig2bc_min_energies(
    ns: &[usize],
    nbs: &[usize],
    mut state_for: impl FnMut(usize) -> Result<StateRecord>,
) -> Result<Vec<Fig2Row>> {
    let mut rows = Vec::new();
    for &n in ns {
        if n > MAX_SEARCH_SITES {
            return Err(Error::Guard(format!("payoff tables need searched states, N <= {MAX_SEARCH_SITES}, got {n}")));
        }
        if !nbs.iter().any(|&nb| nb >= 1 && nb <= n) {
            continue;
        }
        let record = state_for(n)?;
        if record.n != n {
            return Err(Error::DimensionMismatch { expected: n, got: record.n });
        }
        let state = State::from(record.state);
        let h = LocalHamiltonian::pauli_z(n);
        for &nb in nbs {
            if nb == 0 || nb > n {
                continue;
            }
            let out = best_response_energy(&state, &h, nb, Objective::Minimize, &PartitionMode::Optimize)?;
            let m = (n - nb).min(nb);
            rows.push(Fig2Row {
                n,
                nb,
                m,
                m_over_nb: m as f64 / nb as f64,
                mean_entropy: record.mean_entropy,
                energy: out.energy,
                energy_per_site: out.per_site_energy,
            });
        }
    }
    Ok(rows)
}

/// Searches each state afresh, without a cache.
pub fn fig2bc_searched(ns: &[usize], nbs: &[usize], restarts: usize, seed: u64) -> Result<Vec<Fig2Row>> {
    fig2bc_min_energies(ns, nbs, |n| {
        let ansatz = defence_ansatz(n);
        let out = search_max_entropy_state(n, ansatz, restarts, seed)?;
        Ok(StateRecord { n, ansatz, seed, mean_entropy: out.mean_entropy, state: out.state })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{bell_state, ghz_state};

    #[test]
    fn fig2a_shape() {
        let rows = fig2a_rows(&FIG2A_BLOCK_SIZES);
        assert_eq!(rows.len(), 6 + 11 + 16 + 21);
        for nb in FIG2A_BLOCK_SIZES {
            let curve: Vec<_> = rows.iter().filter(|r| r.nb == nb).collect();
            assert_eq!(curve.last().unwrap().energy_per_site, 0.0);
            assert_eq!(curve[0].energy_per_site, -1.0);
        }
        let small = fig2a_rows(&[2]);
        assert!((small[1].energy_per_site + 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn known_states_give_known_minima() {
        let known = |n: usize| -> Result<StateRecord> {
            let state = if n == 2 { bell_state() } else { ghz_state(n)? };
            Ok(StateRecord { n, ansatz: AnsatzKind::Generic, seed: 0, mean_entropy: 1.0, state })
        };
        let rows = fig2bc_min_energies(&[2, 3], &[1, 2], known).unwrap();
        assert_eq!(rows.len(), 4);
        // Bell against one-site blocks is a perfect defence
        assert!(rows[0].energy.abs() < 1e-12);
        // GHZ against two-site blocks: the pair is a rank-2 classical mixture
        assert!((rows[3].energy + 1.0).abs() < 1e-10, "{:?}", rows[3]);
    }
}
