//! The sequential game: legal moves, best responses over block partitions,
//! closed-form payoffs and scripted scenarios.

pub mod classical;
pub mod closed_form;
pub mod partition;
pub mod play;
pub mod response;
pub mod scenarios;
pub mod script;
pub mod spectrum;

pub use classical::{classical_baseline, ClassicalOutcome};
pub use closed_form::{closed_form_min_energy, closed_form_per_site};
pub use partition::{enumerate_partitions, BlockPartition};
pub use play::{play_sequential_game, GameConfig, MoveOrder, Player, PlayRecord, Strategy};
pub use response::{best_response_energy, response_unitary, GameOutcome, Objective, PartitionMode};
pub use spectrum::{antipassive_energy, passive_energy, SpectrumTable};
pub use scenarios::{bell_pair_block_minimum, three_qubit_lambda_minimum};
pub use script::{parse_script, GameScript};
