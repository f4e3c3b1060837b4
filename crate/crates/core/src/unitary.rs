use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{unitarity_deviation, CMatrix, CVector, VALIDATION_TOL};
use crate::register::{Register, SiteSplit};

/// A unitary acting on an ordered list of sites, identity elsewhere.
///
/// The first listed site is the most significant factor of the matrix.
#[derive(Clone, Debug)]
pub struct BlockUnitary {
    sites: Vec<usize>,
    matrix: CMatrix,
}

impl BlockUnitary {
    pub fn new(sites: Vec<usize>, matrix: CMatrix) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::InvalidSites("block unitary needs at least one site".into()));
        }
        let mut sorted = sites.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSites(format!("repeated site in {sites:?}")));
        }
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.nrows(), got: matrix.ncols() });
        }
        let dev = unitarity_deviation(&matrix);
        if dev > VALIDATION_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self { sites, matrix })
    }

    pub fn identity(sites: Vec<usize>, dim: usize) -> Result<Self> {
        Self::new(sites, CMatrix::identity(dim, dim))
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub(crate) fn split_for(&self, register: &Register) -> Result<SiteSplit> {
        register.check_sites(&self.sites)?;
        let expected = register.dim_of(&self.sites);
        if expected != self.dim() {
            return Err(Error::DimensionMismatch { expected, got: self.dim() });
        }
        SiteSplit::new(register, &self.sites)
    }
}

/// A unitary mapping the unit vector `from` onto the unit vector `to`.
///
/// Householder reflection with the phase fixed so that the image is exactly
/// `to`, not `to` up to a global phase.
pub fn preparation_unitary(from: &CVector, to: &CVector) -> Result<CMatrix> {
    if from.len() != to.len() {
        return Err(Error::DimensionMismatch { expected: from.len(), got: to.len() });
    }
    for v in [from, to] {
        let n = v.norm();
        if (n - 1.0).abs() > VALIDATION_TOL {
            return Err(Error::NotNormalized(n));
        }
    }
    let dim = from.len();
    let overlap = to.dotc(from);
    let phase = if overlap.norm() > 1e-14 { overlap / overlap.norm() } else { C64::new(1.0, 0.0) };
    // ⟨phase·to|from⟩ is now real and nonnegative
    let target = to.scale(1.0) * phase;
    let w = from - &target;
    let wn = w.norm_squared();
    let reflection = if wn < 1e-28 {
        CMatrix::identity(dim, dim)
    } else {
        CMatrix::identity(dim, dim) - (&w * w.adjoint()).scale(2.0 / wn)
    };
    Ok(reflection * phase.conj())
}

pub mod gates {
    //! Fixed gates used by scenarios and the move-file parser.

    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn m(dim: usize, entries: &[f64]) -> CMatrix {
        CMatrix::from_row_iterator(dim, dim, entries.iter().map(|&x| C64::new(x, 0.0)))
    }

    pub fn hadamard() -> CMatrix {
        m(2, &[1.0, 1.0, 1.0, -1.0]).scale(FRAC_1_SQRT_2)
    }

    pub fn pauli_x() -> CMatrix {
        m(2, &[0.0, 1.0, 1.0, 0.0])
    }

    pub fn pauli_y() -> CMatrix {
        CMatrix::from_row_slice(
            2,
            2,
            &[C64::new(0.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
        )
    }

    pub fn pauli_z() -> CMatrix {
        m(2, &[1.0, 0.0, 0.0, -1.0])
    }

    /// Control on the first factor.
    pub fn cnot() -> CMatrix {
        m(
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0,
            ],
        )
    }

    /// Circuit taking `|0…0⟩` to the GHZ state on `n` qubits: a Hadamard on
    /// the first qubit followed by a CNOT chain.
    pub fn ghz_preparation(n: usize) -> Result<CMatrix> {
        if n < 1 {
            return Err(Error::InvalidParameter("ghz preparation needs n >= 1".into()));
        }
        let dim = 1usize << n;
        let reg = Register::qubits(n)?;
        let mut u = CMatrix::identity(dim, dim);
        let h = BlockUnitary::new(vec![0], hadamard())?;
        u = embed(&reg, &h)? * u;
        for q in 1..n {
            let c = BlockUnitary::new(vec![q - 1, q], cnot())?;
            u = embed(&reg, &c)? * u;
        }
        Ok(u)
    }

    /// `CNOT · (H ⊗ I)`, mapping `|00⟩` to the Bell state.
    pub fn bell_preparation() -> CMatrix {
        ghz_preparation(2).expect("two qubits")
    }

    /// Full-register matrix of a block unitary.
    pub fn embed(register: &Register, u: &BlockUnitary) -> Result<CMatrix> {
        let split = u.split_for(register)?;
        let dim = register.total_dim();
        let mut out = CMatrix::zeros(dim, dim);
        for r in 0..split.rest_dim() {
            for a in 0..split.block_dim() {
                for b in 0..split.block_dim() {
                    out[(split.full(a, r), split.full(b, r))] = u.matrix()[(a, b)];
                }
            }
        }
        Ok(out)
    }
}
