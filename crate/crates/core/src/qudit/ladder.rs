//! Symmetric two-qudit unitary ladder that drives one site's marginal toward
//! the maximally mixed state.
//!
//! Each layer acts on the same two adjacent levels of both qudits with
//! `exp(-i Σ_g α_g G_g)`, where `G_g` runs over `σ_a ⊗ σ_a` and
//! `σ_a ⊗ σ_b + σ_b ⊗ σ_a` for `a, b ∈ {0, x, y, z}`, excluding `(0, 0)`.
//! `σ_0` is the identity on the two levels.

use num_complex::Complex64 as C64;
use rand::Rng;

use super::QuditSpec;
use crate::entropy::entropy_of;
use crate::linalg::{expm_neg_i_hermitian, hermitian_eigenvalues, kron, CMatrix};
use crate::optimize::{maximize, AscentOptions, FiniteDifference};
use crate::rng::{map_indexed, stream_rng};
use crate::unitary::gates;

const LEVELS: usize = 5;
const DIM: usize = LEVELS * LEVELS;

/// Level pairs of the seven layers, in application order.
pub const LADDER_LEVELS: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 3), (1, 2), (0, 1)];
pub const GENERATORS_PER_LAYER: usize = 9;

fn generators() -> Vec<CMatrix> {
    let sigma = [CMatrix::identity(2, 2), gates::pauli_x(), gates::pauli_y(), gates::pauli_z()];
    let mut out = Vec::with_capacity(GENERATORS_PER_LAYER);
    for a in 0..4 {
        for b in a..4 {
            if a == 0 && b == 0 {
                continue;
            }
            let g = if a == b {
                kron(&sigma[a], &sigma[a])
            } else {
                kron(&sigma[a], &sigma[b]) + kron(&sigma[b], &sigma[a])
            };
            out.push(g);
        }
    }
    out
}

/// `7 × 9` real coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderParams {
    coeffs: Vec<f64>,
}

impl LadderParams {
    pub const LEN: usize = LADDER_LEVELS.len() * GENERATORS_PER_LAYER;

    pub fn zeros() -> Self {
        Self { coeffs: vec![0.0; Self::LEN] }
    }

    pub fn from_vec(coeffs: Vec<f64>) -> Option<Self> {
        (coeffs.len() == Self::LEN).then_some(Self { coeffs })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Self {
        Self { coeffs: (0..Self::LEN).map(|_| rng.random_range(-scale..scale)).collect() }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn layer(&self, l: usize) -> &[f64] {
        &self.coeffs[l * GENERATORS_PER_LAYER..(l + 1) * GENERATORS_PER_LAYER]
    }

    /// The 25 × 25 operator, site 0 as the most significant digit.
    pub fn unitary(&self) -> CMatrix {
        let gens = generators();
        let mut total = CMatrix::identity(DIM, DIM);
        for l in 0..LADDER_LEVELS.len() {
            let (block, idx) = layer_block(&gens, l, self.layer(l));
            let mut full = CMatrix::identity(DIM, DIM);
            for (r, &i) in idx.iter().enumerate() {
                for (c, &j) in idx.iter().enumerate() {
                    full[(i, j)] = block[(r, c)];
                }
            }
            total = full * total;
        }
        total
    }
}

// The 4×4 layer unitary and the 25-dim indices it acts on.
fn layer_block(gens: &[CMatrix], l: usize, alpha: &[f64]) -> (CMatrix, [usize; 4]) {
    let (lo, hi) = LADDER_LEVELS[l];
    let mut h = CMatrix::zeros(4, 4);
    for (g, &a) in gens.iter().zip(alpha) {
        h += g * C64::new(a, 0.0);
    }
    let u = expm_neg_i_hermitian(&h);
    let idx = [lo * LEVELS + lo, lo * LEVELS + hi, hi * LEVELS + lo, hi * LEVELS + hi];
    (u, idx)
}

// ρ -> U ρ U† for a unitary that is the identity outside `idx`.
fn conjugate_in_place(rho: &mut CMatrix, u: &CMatrix, idx: &[usize; 4]) {
    let mut rows = [[C64::new(0.0, 0.0); DIM]; 4];
    for (r, row) in rows.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = (0..4).map(|k| u[(r, k)] * rho[(idx[k], j)]).sum();
        }
    }
    for (r, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            rho[(idx[r], j)] = v;
        }
    }
    let mut cols = [[C64::new(0.0, 0.0); DIM]; 4];
    for (c, col) in cols.iter_mut().enumerate() {
        for (i, slot) in col.iter_mut().enumerate() {
            *slot = (0..4).map(|k| rho[(i, idx[k])] * u[(c, k)].conj()).sum();
        }
    }
    for (c, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            rho[(i, idx[c])] = v;
        }
    }
}

/// The evolved two-qudit state for `params` acting on `ρ ⊗ ρ`.
pub fn evolved_state(spec: &QuditSpec, params: &LadderParams) -> CMatrix {
    Evolver::new(spec).state(params.as_slice())
}

/// Base-5 entropy of site 0 after the ladder.
pub fn site_entropy(spec: &QuditSpec, params: &LadderParams) -> f64 {
    Evolver::new(spec).entropy(params.as_slice())
}

struct Evolver {
    initial: CMatrix,
    gens: Vec<CMatrix>,
}

impl Evolver {
    fn new(spec: &QuditSpec) -> Self {
        let p = spec.populations();
        let diag: Vec<C64> = (0..DIM).map(|i| C64::new(p[i / LEVELS] * p[i % LEVELS], 0.0)).collect();
        Self { initial: CMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag)), gens: generators() }
    }

    fn state(&self, coeffs: &[f64]) -> CMatrix {
        let mut rho = self.initial.clone();
        for l in 0..LADDER_LEVELS.len() {
            let alpha = &coeffs[l * GENERATORS_PER_LAYER..(l + 1) * GENERATORS_PER_LAYER];
            if alpha.iter().all(|&a| a == 0.0) {
                continue;
            }
            let (u, idx) = layer_block(&self.gens, l, alpha);
            conjugate_in_place(&mut rho, &u, &idx);
        }
        rho
    }

    fn entropy(&self, coeffs: &[f64]) -> f64 {
        let rho = self.state(coeffs);
        let mut site = CMatrix::zeros(LEVELS, LEVELS);
        for a in 0..LEVELS {
            for b in 0..LEVELS {
                site[(a, b)] = (0..LEVELS).map(|k| rho[(a * LEVELS + k, b * LEVELS + k)]).sum();
            }
        }
        let eig: Vec<f64> = hermitian_eigenvalues(&site).into_iter().map(|v| v.max(0.0)).collect();
        entropy_of(&eig, LEVELS as f64)
    }
}

#[derive(Clone, Debug)]
pub struct LadderAscent {
    /// Base-5 entropy of site 0.
    pub entropy: f64,
    pub params: LadderParams,
    /// Best value after each accepted step of the winning start.
    pub history: Vec<f64>,
    /// Index of the winning start.
    pub start: usize,
}

/// Entropy values within this of 1 count as converged.
pub const LADDER_TOL: f64 = 1e-6;

/// Maximizes the base-5 entropy of one site over the ladder parameters.
///
/// Every start optimizes layer by layer, then all 63 coefficients jointly.
/// Start 0 uses `init` when given; the others are drawn from stream `i` of
/// `seed`. The best start wins, ties going to the lowest index.
pub fn entropy_ascent_two_qudits(spec: &QuditSpec, init: Option<&LadderParams>, starts: usize, seed: u64) -> LadderAscent {
    let evolver = Evolver::new(spec);
    let opts = AscentOptions {
        max_iters: 400,
        grad_tol: 1e-10,
        value_tol: 1e-10,
        target: Some(1.0 - LADDER_TOL),
        ..Default::default()
    };
    let runs = map_indexed(starts.max(1), |s| {
        let mut x = match (s, init) {
            (0, Some(p)) => p.as_slice().to_vec(),
            _ => LadderParams::random(&mut stream_rng(seed, s as u64), 1.0).coeffs,
        };
        let mut history = vec![evolver.entropy(&x)];
        for l in 0..LADDER_LEVELS.len() {
            let range = l * GENERATORS_PER_LAYER..(l + 1) * GENERATORS_PER_LAYER;
            let base = x.clone();
            let f = FiniteDifference::new(|p: &[f64]| {
                let mut full = base.clone();
                full[range.clone()].copy_from_slice(p);
                evolver.entropy(&full)
            });
            let r = maximize(&f, x[range.clone()].to_vec(), &opts);
            x[range.clone()].copy_from_slice(&r.params);
            history.extend_from_slice(&r.history[1..]);
        }
        let f = FiniteDifference::new(|p: &[f64]| evolver.entropy(p));
        let r = maximize(&f, x, &AscentOptions { max_iters: 2000, ..opts.clone() });
        history.extend_from_slice(&r.history[1..]);
        (r.value, r.params, history)
    });
    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.0 > runs[best].0 {
            best = i;
        }
    }
    let (entropy, params, history) = runs.into_iter().nth(best).expect("at least one start");
    LadderAscent { entropy, params: LadderParams { coeffs: params }, history, start: best }
}
