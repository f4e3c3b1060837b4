//! One round of the sequential game: the first mover acts, then the second.

use std::fmt;

use super::partition::BlockPartition;
use super::response::{best_response_energy, GameOutcome, Objective, PartitionMode};
use crate::error::{Error, Result};
use crate::hamiltonian::LocalHamiltonian;
use crate::state::{PureState, State};
use crate::unitary::{preparation_unitary, BlockUnitary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    /// Maximizes the energy.
    A,
    /// Minimizes the energy.
    B,
}

impl Player {
    pub fn objective(self) -> Objective {
        match self {
            Player::A => Objective::Maximize,
            Player::B => Objective::Minimize,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::A => "A",
            Player::B => "B",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveOrder {
    AFirst,
    BFirst,
}

impl MoveOrder {
    pub fn first(self) -> Player {
        match self {
            MoveOrder::AFirst => Player::A,
            MoveOrder::BFirst => Player::B,
        }
    }

    pub fn second(self) -> Player {
        match self {
            MoveOrder::AFirst => Player::B,
            MoveOrder::BFirst => Player::A,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameConfig {
    pub n: usize,
    /// Largest block player A may entangle.
    pub n_a: usize,
    /// Largest block player B may entangle.
    pub n_b: usize,
    pub order: MoveOrder,
    pub local_dim: usize,
}

impl GameConfig {
    pub fn new(n: usize, n_a: usize, n_b: usize, order: MoveOrder) -> Result<Self> {
        Self::with_local_dim(n, n_a, n_b, order, 2)
    }

    pub fn with_local_dim(n: usize, n_a: usize, n_b: usize, order: MoveOrder, local_dim: usize) -> Result<Self> {
        if !(1 <= n_b && n_b <= n_a && n_a <= n) {
            return Err(Error::InvalidParameter(format!(
                "capabilities must satisfy 1 <= N_B <= N_A <= N, got N={n} N_A={n_a} N_B={n_b}"
            )));
        }
        if local_dim < 2 {
            return Err(Error::SiteDimension(local_dim));
        }
        Ok(Self { n, n_a, n_b, order, local_dim })
    }

    pub fn capability(&self, player: Player) -> usize {
        match player {
            Player::A => self.n_a,
            Player::B => self.n_b,
        }
    }
}

/// How a player chooses a move.
#[derive(Clone, Debug)]
pub enum Strategy {
    /// Explicit unitaries on disjoint blocks; uncovered sites are untouched.
    Blocks(Vec<BlockUnitary>),
    /// Rotate the whole register onto a target pure state. Needs a capability
    /// covering every site.
    Prepare(PureState),
    /// Drive every block of the optimal partition to its (anti-)passive state.
    BestResponse,
    /// Best response restricted to one partition.
    BestResponseWithin(BlockPartition),
    Pass,
}

#[derive(Clone, Debug)]
pub struct PlayRecord {
    /// Energy measured after the first move.
    pub after_first: f64,
    /// Final energy, with the second mover's partition and unitaries.
    pub outcome: GameOutcome,
    pub final_state: State,
}

struct MoveResult {
    state: State,
    partition: BlockPartition,
    unitaries: Vec<BlockUnitary>,
}

/// Plays the first mover's strategy, then the second mover's.
pub fn play_sequential_game(
    config: &GameConfig,
    initial: &State,
    hamiltonian: &LocalHamiltonian,
    strategy_a: &Strategy,
    strategy_b: &Strategy,
) -> Result<PlayRecord> {
    if initial.num_sites() != config.n {
        return Err(Error::DimensionMismatch { expected: config.n, got: initial.num_sites() });
    }
    if initial.register().dims().iter().any(|&d| d != config.local_dim) {
        return Err(Error::InvalidParameter(format!("register is not made of {}-level sites", config.local_dim)));
    }
    hamiltonian.check_register(initial.register())?;
    let strategy_of = |p: Player| match p {
        Player::A => strategy_a,
        Player::B => strategy_b,
    };
    let first = config.order.first();
    let second = config.order.second();
    let m1 = make_move(config, initial, hamiltonian, first, strategy_of(first))?;
    let after_first = hamiltonian.energy(&m1.state)?;
    let m2 = make_move(config, &m1.state, hamiltonian, second, strategy_of(second))?;
    let energy = hamiltonian.energy(&m2.state)?;
    Ok(PlayRecord {
        after_first,
        outcome: GameOutcome::new(energy, config.n, m2.partition, Some(m2.unitaries)),
        final_state: m2.state,
    })
}

fn make_move(
    config: &GameConfig,
    state: &State,
    hamiltonian: &LocalHamiltonian,
    player: Player,
    strategy: &Strategy,
) -> Result<MoveResult> {
    let n = config.n;
    let cap = config.capability(player);
    match strategy {
        Strategy::Pass => Ok(MoveResult {
            state: state.clone(),
            partition: BlockPartition::singletons(n),
            unitaries: Vec::new(),
        }),
        Strategy::Blocks(unitaries) => {
            for u in unitaries {
                if u.sites().len() > cap {
                    return Err(Error::IllegalMove(format!(
                        "player {player} acts on {} sites, capability is {cap}",
                        u.sites().len()
                    )));
                }
            }
            let blocks: Vec<Vec<usize>> = unitaries.iter().map(|u| u.sites().to_vec()).collect();
            let partition = BlockPartition::completed(blocks, n, cap)
                .map_err(|e| Error::IllegalMove(format!("player {player}: {e}")))?;
            let mut next = state.clone();
            for u in unitaries {
                next = next.apply(u)?;
            }
            Ok(MoveResult { state: next, partition, unitaries: unitaries.clone() })
        }
        Strategy::Prepare(target) => {
            if cap < n {
                return Err(Error::IllegalMove(format!(
                    "player {player} cannot prepare an arbitrary {n}-site state with capability {cap}"
                )));
            }
            let State::Pure(current) = state else {
                return Err(Error::IllegalMove("a unitary cannot map a mixed state to a pure one".into()));
            };
            if target.register() != current.register() {
                return Err(Error::DimensionMismatch {
                    expected: current.register().total_dim(),
                    got: target.register().total_dim(),
                });
            }
            let u = preparation_unitary(current.amplitudes(), target.amplitudes())?;
            let u = BlockUnitary::new((0..n).collect(), u)?;
            let next = state.apply(&u)?;
            Ok(MoveResult {
                state: next,
                partition: BlockPartition::new(vec![(0..n).collect()], n, cap)?,
                unitaries: vec![u],
            })
        }
        Strategy::BestResponse | Strategy::BestResponseWithin(_) => {
            let mode = match strategy {
                Strategy::BestResponseWithin(p) => PartitionMode::Fixed(p.clone()),
                _ => PartitionMode::Optimize,
            };
            let out = best_response_energy(state, hamiltonian, cap, player.objective(), &mode)?;
            let unitaries = out.responder_unitaries.unwrap_or_default();
            let mut next = state.clone();
            for u in &unitaries {
                next = next.apply(u)?;
            }
            Ok(MoveResult { state: next, partition: out.partition, unitaries })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::register::Register;
    use crate::state::{bell_state, product_plus_state};
    use crate::unitary::gates;

    fn plus(n: usize) -> State {
        product_plus_state(&Register::qubits(n).unwrap()).unwrap().into()
    }

    #[test]
    fn bell_defence_then_best_response() {
        let cfg = GameConfig::new(2, 2, 1, MoveOrder::AFirst).unwrap();
        let h = LocalHamiltonian::pauli_z(2);
        let rec = play_sequential_game(&cfg, &plus(2), &h, &Strategy::Prepare(bell_state()), &Strategy::BestResponse).unwrap();
        assert!(rec.outcome.energy.abs() < 1e-12);
        assert!(rec.after_first.abs() < 1e-12);
    }

    #[test]
    fn second_mover_a_reaches_maximum() {
        let cfg = GameConfig::new(2, 2, 1, MoveOrder::BFirst).unwrap();
        let h = LocalHamiltonian::pauli_z(2);
        let x = BlockUnitary::new(vec![0], gates::hadamard()).unwrap();
        let rec = play_sequential_game(&cfg, &plus(2), &h, &Strategy::BestResponse, &Strategy::Blocks(vec![x])).unwrap();
        assert!((rec.outcome.energy - 2.0).abs() < 1e-12);
    }

    #[test]
    fn capability_is_enforced() {
        let cfg = GameConfig::new(2, 2, 1, MoveOrder::AFirst).unwrap();
        let h = LocalHamiltonian::pauli_z(2);
        let cnot = BlockUnitary::new(vec![0, 1], gates::cnot()).unwrap();
        let err = play_sequential_game(&cfg, &plus(2), &h, &Strategy::Pass, &Strategy::Blocks(vec![cnot])).unwrap_err();
        assert!(matches!(err, Error::IllegalMove(_)));
        let err = play_sequential_game(&cfg, &plus(2), &h, &Strategy::Pass, &Strategy::Prepare(bell_state())).unwrap_err();
        assert!(matches!(err, Error::IllegalMove(_)));
        assert!(GameConfig::new(3, 1, 2, MoveOrder::AFirst).is_err());
    }

    #[test]
    fn overlapping_blocks_rejected() {
        let cfg = GameConfig::new(3, 2, 2, MoveOrder::AFirst).unwrap();
        let h = LocalHamiltonian::pauli_z(3);
        let a = BlockUnitary::new(vec![0, 1], gates::cnot()).unwrap();
        let b = BlockUnitary::new(vec![1, 2], gates::cnot()).unwrap();
        assert!(play_sequential_game(&cfg, &plus(3), &h, &Strategy::Blocks(vec![a, b]), &Strategy::Pass).is_err());
    }
}
