//! Simulation and analysis of the sequential two-player unitary game on a
//! many-site quantum register.
//!
//! Player A maximizes and player B minimizes the expectation of a local
//! diagonal Hamiltonian; each may entangle blocks of at most a fixed number
//! of sites.

pub mod entropy;
pub mod game;
pub mod error;
pub mod export;
pub mod haar;
pub mod hamiltonian;
pub mod linalg;
pub mod optimize;
pub mod qudit;
pub mod register;
pub mod rng;
pub mod search;
pub mod state;
pub mod unitary;

pub use entropy::{schmidt_spectrum, von_neumann_entropy, SchmidtSpectrum};
pub use error::{Error, Result};
pub use hamiltonian::{energy_expectation, LocalHamiltonian};
pub use register::Register;
pub use state::{bell_state, ghz_state, product_plus_state, psi_plus, MixedState, PureState, State};
pub use search::{search_max_entropy_state, AnsatzKind, SearchOutcome, StateCache};
pub use unitary::BlockUnitary;
