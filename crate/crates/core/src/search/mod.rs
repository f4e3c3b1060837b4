//! Multi-start search for pure states with maximal mean subsystem entropy.
//!
//! For qubits, a state reaching mean entropy `⌊N/2⌋` bits is absolutely
//! maximally entangled; the searched states are player A's defences.

pub mod ansatz;
pub mod cache;
pub mod fig2;
pub mod loss;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::optimize::{maximize, AscentOptions, AscentResult, FiniteDifference, Landscape};
use crate::register::Register;
use crate::rng::{map_indexed, stream_rng};
use crate::state::PureState;

pub use ansatz::{AnsatzKind, SymmetricAnsatz4};
pub use cache::{StateCache, StateRecord};
pub use fig2::{fig2a_rows, fig2bc_min_energies, fig2bc_searched, Fig2Row, Fig2aRow};
pub use loss::{mean_entropy, mean_entropy_loss, EntropyLossSpec};

pub const MAX_SEARCH_SITES: usize = 8;
pub const DEFAULT_RESTARTS: usize = 32;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub restarts: usize,
    pub seed: u64,
    pub ascent: AscentOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            restarts: DEFAULT_RESTARTS,
            seed: 0,
            ascent: AscentOptions { max_iters: 3000, grad_tol: 1e-8, value_tol: 1e-11, ..Default::default() },
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub state: PureState,
    /// Mean entropy in bits over the `⌊N/2⌋`-site subsets.
    pub mean_entropy: f64,
    pub ansatz: AnsatzKind,
    pub seed: u64,
    /// Index of the winning start.
    pub restart: usize,
    /// Enabled amplitude groups, for the symmetric ansatz.
    pub flags: Option<[bool; 3]>,
}

/// Searches with default options, `restarts` starts and `seed`.
pub fn search_max_entropy_state(n: usize, kind: AnsatzKind, restarts: usize, seed: u64) -> Result<SearchOutcome> {
    search_with(n, kind, &SearchOptions { restarts, seed, ..Default::default() })
}

pub fn search_with(n: usize, kind: AnsatzKind, opts: &SearchOptions) -> Result<SearchOutcome> {
    if !(2..=MAX_SEARCH_SITES).contains(&n) {
        return Err(Error::Guard(format!("entropy search supports 2..={MAX_SEARCH_SITES} qubits, got {n}")));
    }
    if opts.restarts == 0 {
        return Err(Error::InvalidParameter("need at least one restart".into()));
    }
    let spec = EntropyLossSpec::new(n)?;
    let k = spec.k() as f64;
    let mut ascent = opts.ascent.clone();
    // nothing beats k bits
    ascent.target = Some(k - 1e-12);
    match kind {
        AnsatzKind::Generic => {
            let register = Register::qubits(n)?;
            let field = loss::EntropyField::new(&register, spec)?;
            let landscape = AnalyticEntropy(&field);
            let runs = map_indexed(opts.restarts, |r| {
                let mut rng = stream_rng(opts.seed, r as u64);
                let x0: Vec<f64> = (0..field.num_params()).map(|_| rng.sample(StandardNormal)).collect();
                maximize(&landscape, x0, &ascent)
            });
            let (restart, best) = pick_best(&runs);
            let state = PureState::new(register, field.amplitudes(&best.params))?;
            Ok(SearchOutcome {
                mean_entropy: best.value,
                state,
                ansatz: kind,
                seed: opts.seed,
                restart,
                flags: None,
            })
        }
        AnsatzKind::Symmetric4 => {
            if n != 4 {
                return Err(Error::InvalidParameter(format!("symmetric ansatz is defined for 4 qubits, got {n}")));
            }
            let patterns = SymmetricAnsatz4::all();
            let register = Register::qubits(4)?;
            let field = loss::EntropyField::new(&register, spec)?;
            let runs = map_indexed(patterns.len() * opts.restarts, |job| {
                let pattern = patterns[job / opts.restarts];
                let mut rng = stream_rng(opts.seed, job as u64);
                let mut x0: Vec<f64> =
                    (0..16).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
                x0.extend((0..3).map(|_| rng.random_range(0.5..1.5)));
                let objective = FiniteDifference::new(|p: &[f64]| {
                    let amps = pattern.amplitudes(p);
                    let x: Vec<f64> = amps.iter().flat_map(|c| [c.re, c.im]).collect();
                    field.value(&x)
                });
                maximize(&objective, x0, &ascent)
            });
            let (job, best) = pick_best(&runs);
            let pattern = patterns[job / opts.restarts];
            Ok(SearchOutcome {
                state: pattern.state(&best.params)?,
                mean_entropy: best.value,
                ansatz: kind,
                seed: opts.seed,
                restart: job,
                flags: Some(pattern.flags()),
            })
        }
    }
}

struct AnalyticEntropy<'a>(&'a loss::EntropyField);

impl Landscape for AnalyticEntropy<'_> {
    fn value(&self, x: &[f64]) -> f64 {
        self.0.value(x)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        self.0.value_and_gradient(x).1
    }
}

/// Highest value; ties go to the lowest index.
fn pick_best(runs: &[AscentResult]) -> (usize, &AscentResult) {
    let mut best = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.value > runs[best].value {
            best = i;
        }
    }
    (best, &runs[best])
}
