//! Dense pure and mixed states over a [`Register`].

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, hermiticity_deviation, CMatrix, CVector, VALIDATION_TOL};
use crate::register::{Register, SiteSplit};
use crate::unitary::BlockUnitary;

#[derive(Clone, Debug)]
pub struct PureState {
    register: Register,
    amplitudes: CVector,
}

#[derive(Clone, Debug)]
pub struct MixedState {
    register: Register,
    matrix: CMatrix,
}

/// Either kind of state; the game engine works with both.
#[derive(Clone, Debug)]
pub enum State {
    Pure(PureState),
    Mixed(MixedState),
}

impl PureState {
    /// Wraps normalized amplitudes; the norm must be 1 within 1e-10.
    pub fn new(register: Register, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != register.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: register.total_dim(),
                got: amplitudes.len(),
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > VALIDATION_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { register, amplitudes })
    }

    /// Normalizes `amplitudes` first; rejects the zero vector.
    pub fn from_unnormalized(register: Register, amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        Self::new(register, amplitudes.unscale(norm))
    }

    pub fn basis(register: Register, digits: &[usize]) -> Result<Self> {
        if digits.len() != register.len() || digits.iter().zip(register.dims()).any(|(&x, &d)| x >= d) {
            return Err(Error::InvalidParameter(format!("basis digits {digits:?} do not fit register")));
        }
        let mut amps = CVector::zeros(register.total_dim());
        amps[register.index_of(digits)] = C64::new(1.0, 0.0);
        Ok(Self { register, amplitudes: amps })
    }

    pub fn zero(register: Register) -> Self {
        let mut amps = CVector::zeros(register.total_dim());
        amps[0] = C64::new(1.0, 0.0);
        Self { register, amplitudes: amps }
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amplitudes
    }

    pub fn num_sites(&self) -> usize {
        self.register.len()
    }

    pub fn inner(&self, other: &PureState) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|self⟩ ⊗ |other⟩`, with `self`'s sites first.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let mut dims = self.register.dims().to_vec();
        dims.extend_from_slice(other.register.dims());
        let register = Register::new(dims)?;
        let amps = self.amplitudes.kronecker(&other.amplitudes);
        Ok(Self { register, amplitudes: amps })
    }

    /// Reorders tensor factors: new site `i` is old site `order[i]`.
    pub fn permute_sites(&self, order: &[usize]) -> Result<PureState> {
        if order.len() != self.num_sites() {
            return Err(Error::InvalidSites(format!("permutation of length {}", order.len())));
        }
        self.register.check_sites(order)?;
        let register = self.register.select(order)?;
        let mut amps = CVector::zeros(register.total_dim());
        for (old_index, &a) in self.amplitudes.iter().enumerate() {
            let old = self.register.digits(old_index);
            let new: Vec<usize> = order.iter().map(|&s| old[s]).collect();
            amps[register.index_of(&new)] = a;
        }
        Ok(Self { register, amplitudes: amps })
    }

    pub fn to_mixed(&self) -> MixedState {
        let v = &self.amplitudes;
        MixedState { register: self.register.clone(), matrix: v * v.adjoint() }
    }

    /// Applies `u` on its sites, identity elsewhere.
    pub fn apply(&self, u: &BlockUnitary) -> Result<PureState> {
        let split = u.split_for(&self.register)?;
        let mut out = self.amplitudes.clone();
        apply_to_vector(u.matrix(), &split, &self.amplitudes, &mut out);
        Ok(Self { register: self.register.clone(), amplitudes: out })
    }

    /// Reduced density matrix on `keep`; the result's sites follow `keep`'s order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<MixedState> {
        let split = SiteSplit::new(&self.register, keep)?;
        let (db, dr) = (split.block_dim(), split.rest_dim());
        let mut m = CMatrix::zeros(db, dr);
        for b in 0..db {
            for r in 0..dr {
                m[(b, r)] = self.amplitudes[split.full(b, r)];
            }
        }
        Ok(MixedState { register: self.register.select(keep)?, matrix: &m * m.adjoint() })
    }
}

impl MixedState {
    /// Validates hermiticity, unit trace and positivity (all within 1e-10).
    pub fn new(register: Register, matrix: CMatrix) -> Result<Self> {
        let dim = register.total_dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: matrix.nrows() });
        }
        let herm = hermiticity_deviation(&matrix);
        if herm > VALIDATION_TOL {
            return Err(Error::NotDensityMatrix(format!("hermiticity deviation {herm:e}")));
        }
        let trace = matrix.trace();
        if (trace - C64::new(1.0, 0.0)).norm() > VALIDATION_TOL {
            return Err(Error::NotDensityMatrix(format!("trace {trace}")));
        }
        let min = hermitian_eigenvalues(&matrix).last().copied().unwrap_or(0.0);
        if min < -VALIDATION_TOL {
            return Err(Error::NegativeEigenvalue(min));
        }
        Ok(Self { register, matrix })
    }

    /// Diagonal state with the given populations.
    pub fn diagonal(register: Register, populations: &[f64]) -> Result<Self> {
        if populations.len() != register.total_dim() {
            return Err(Error::DimensionMismatch { expected: register.total_dim(), got: populations.len() });
        }
        let diag = CVector::from_iterator(populations.len(), populations.iter().map(|&p| C64::new(p, 0.0)));
        Self::new(register, CMatrix::from_diagonal(&diag))
    }

    pub fn maximally_mixed(register: Register) -> Self {
        let d = register.total_dim();
        let matrix = CMatrix::identity(d, d).unscale(d as f64);
        Self { register, matrix }
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn num_sites(&self) -> usize {
        self.register.len()
    }

    /// `ρ ⊗ σ`, with `self`'s sites first.
    pub fn tensor(&self, other: &MixedState) -> Result<MixedState> {
        let mut dims = self.register.dims().to_vec();
        dims.extend_from_slice(other.register.dims());
        Ok(Self { register: Register::new(dims)?, matrix: self.matrix.kronecker(&other.matrix) })
    }

    /// Eigenvalues sorted nonincreasing.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    pub fn apply(&self, u: &BlockUnitary) -> Result<MixedState> {
        let split = u.split_for(&self.register)?;
        let dim = self.register.total_dim();
        // Ũ ρ, column by column
        let mut left = self.matrix.clone();
        for j in 0..dim {
            let col = self.matrix.column(j).clone_owned();
            let mut out = col.clone();
            apply_to_vector(u.matrix(), &split, &col, &mut out);
            left.set_column(j, &out);
        }
        // (Ũ (Ũ ρ)†)† = Ũ ρ Ũ†
        let left_adj = left.adjoint();
        let mut right = left_adj.clone();
        for j in 0..dim {
            let col = left_adj.column(j).clone_owned();
            let mut out = col.clone();
            apply_to_vector(u.matrix(), &split, &col, &mut out);
            right.set_column(j, &out);
        }
        Ok(Self { register: self.register.clone(), matrix: right.adjoint() })
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<MixedState> {
        let split = SiteSplit::new(&self.register, keep)?;
        let (db, dr) = (split.block_dim(), split.rest_dim());
        let mut out = DMatrix::zeros(db, db);
        for a in 0..db {
            for b in 0..db {
                let mut acc = C64::new(0.0, 0.0);
                for r in 0..dr {
                    acc += self.matrix[(split.full(a, r), split.full(b, r))];
                }
                out[(a, b)] = acc;
            }
        }
        Ok(MixedState { register: self.register.select(keep)?, matrix: out })
    }
}

impl State {
    pub fn register(&self) -> &Register {
        match self {
            State::Pure(p) => p.register(),
            State::Mixed(m) => m.register(),
        }
    }

    pub fn num_sites(&self) -> usize {
        self.register().len()
    }

    pub fn apply(&self, u: &BlockUnitary) -> Result<State> {
        Ok(match self {
            State::Pure(p) => State::Pure(p.apply(u)?),
            State::Mixed(m) => State::Mixed(m.apply(u)?),
        })
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<MixedState> {
        match self {
            State::Pure(p) => p.partial_trace(keep),
            State::Mixed(m) => m.partial_trace(keep),
        }
    }

    /// Diagonal of the density matrix in the computational basis.
    pub fn populations(&self) -> Vec<f64> {
        match self {
            State::Pure(p) => p.amplitudes().iter().map(|a| a.norm_sqr()).collect(),
            State::Mixed(m) => m.matrix().diagonal().iter().map(|a| a.re).collect(),
        }
    }
}

impl From<PureState> for State {
    fn from(p: PureState) -> Self {
        State::Pure(p)
    }
}

impl From<MixedState> for State {
    fn from(m: MixedState) -> Self {
        State::Mixed(m)
    }
}

fn apply_to_vector(u: &CMatrix, split: &SiteSplit, input: &CVector, out: &mut CVector) {
    let db = split.block_dim();
    let mut chunk = CVector::zeros(db);
    for r in 0..split.rest_dim() {
        for b in 0..db {
            chunk[b] = input[split.full(b, r)];
        }
        let moved = u * &chunk;
        for b in 0..db {
            out[split.full(b, r)] = moved[b];
        }
    }
}

/// `⊗_l (|0⟩ + |1⟩)/√2` on a qubit register.
pub fn product_plus_state(register: &Register) -> Result<PureState> {
    if !register.is_qubits() {
        return Err(Error::NotQubits);
    }
    let d = register.total_dim();
    let a = C64::new((d as f64).sqrt().recip(), 0.0);
    Ok(PureState { register: register.clone(), amplitudes: CVector::from_element(d, a) })
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn bell_state() -> PureState {
    ghz_state(2).expect("two qubits fit every cap")
}

/// `(|0…0⟩ + |1…1⟩)/√2` on `n ≥ 2` qubits.
pub fn ghz_state(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("GHZ state needs n >= 2, got {n}")));
    }
    let register = Register::qubits(n)?;
    let d = register.total_dim();
    let mut amps = CVector::zeros(d);
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[0] = h;
    amps[d - 1] = h;
    Ok(PureState { register, amplitudes: amps })
}

/// `(1/√l) Σ_i |i⟩|i⟩` on two `l`-level sites.
pub fn psi_plus(l: usize) -> Result<PureState> {
    if l < 2 {
        return Err(Error::InvalidParameter(format!("psi_plus needs l >= 2, got {l}")));
    }
    let register = Register::new(vec![l, l])?;
    let mut amps = CVector::zeros(l * l);
    let a = C64::new((l as f64).sqrt().recip(), 0.0);
    for i in 0..l {
        amps[i * l + i] = a;
    }
    Ok(PureState { register, amplitudes: amps })
}
