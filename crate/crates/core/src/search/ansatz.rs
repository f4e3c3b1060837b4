use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::register::Register;
use crate::state::PureState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnsatzKind {
    /// Every amplitude free: `2·d^N` real parameters.
    Generic,
    /// The permutation-symmetric four-qubit family.
    Symmetric4,
}

impl fmt::Display for AnsatzKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AnsatzKind::Generic => "generic",
            AnsatzKind::Symmetric4 => "symmetric4",
        })
    }
}

impl FromStr for AnsatzKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(AnsatzKind::Generic),
            "symmetric4" => Ok(AnsatzKind::Symmetric4),
            other => Err(Error::InvalidParameter(format!("unknown ansatz '{other}'"))),
        }
    }
}

/// Basis states of the symmetric family in phase order `θ_0 … θ_15`, each
/// tagged with its amplitude group (0: weight 0/4, 1: weight 1/3, 2: weight 2).
const SYMMETRIC_TERMS: [(usize, usize); 16] = [
    (0, 0b0000),
    (0, 0b1111),
    (1, 0b0001),
    (1, 0b0010),
    (1, 0b0100),
    (1, 0b1000),
    (1, 0b0111),
    (1, 0b1011),
    (1, 0b1101),
    (1, 0b1110),
    (2, 0b0011),
    (2, 0b0110),
    (2, 0b1100),
    (2, 0b0101),
    (2, 0b1010),
    (2, 0b1001),
];

/// `a_0 (e^{iθ_0}|0000⟩ + e^{iθ_1}|1111⟩) + a_1 (…weight 1 and 3…) + a_2 (…weight 2…)`.
///
/// `flags` switches each group on or off. Parameters are the sixteen phases
/// followed by one magnitude per group; magnitudes of disabled groups are
/// ignored and the state is normalized on evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetricAnsatz4 {
    flags: [bool; 3],
}

impl SymmetricAnsatz4 {
    pub const NUM_PARAMS: usize = 19;

    pub fn new(flags: [bool; 3]) -> Result<Self> {
        if !flags.iter().any(|&f| f) {
            return Err(Error::InvalidParameter("at least one amplitude group must be enabled".into()));
        }
        Ok(Self { flags })
    }

    /// The seven nonzero flag patterns, `(a_0, a_1, a_2)` read as binary 001…111.
    pub fn all() -> Vec<Self> {
        (1u8..8)
            .map(|bits| Self { flags: [bits & 4 != 0, bits & 2 != 0, bits & 1 != 0] })
            .collect()
    }

    pub fn flags(&self) -> [bool; 3] {
        self.flags
    }

    pub fn amplitudes(&self, params: &[f64]) -> CVector {
        debug_assert_eq!(params.len(), Self::NUM_PARAMS);
        let mut amps = CVector::zeros(16);
        for (t, &(group, index)) in SYMMETRIC_TERMS.iter().enumerate() {
            if self.flags[group] {
                amps[index] = C64::from_polar(params[16 + group], params[t]);
            }
        }
        let norm = amps.norm();
        amps.unscale(norm)
    }

    pub fn state(&self, params: &[f64]) -> Result<PureState> {
        PureState::from_unnormalized(Register::qubits(4)?, self.amplitudes(params))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::loss::{mean_entropy, EntropyLossSpec};
    use std::f64::consts::PI;

    #[test]
    fn seven_patterns() {
        let all = SymmetricAnsatz4::all();
        assert_eq!(all.len(), 7);
        assert!(SymmetricAnsatz4::new([false; 3]).is_err());
    }

    #[test]
    fn terms_cover_sixteen_basis_states_once() {
        let mut seen = [false; 16];
        for (group, index) in SYMMETRIC_TERMS {
            assert!(!seen[index]);
            seen[index] = true;
            let weight = index.count_ones();
            let expected = match weight {
                0 | 4 => 0,
                1 | 3 => 1,
                _ => 2,
            };
            assert_eq!(group, expected);
        }
    }

    #[test]
    fn weight_two_group_contains_the_four_qubit_optimum() {
        // phases 1, ω, ω² on complementary pairs
        let w = 2.0 * PI / 3.0;
        let mut p = vec![0.0; SymmetricAnsatz4::NUM_PARAMS];
        // order 0011, 0110, 1100, 0101, 1010, 1001
        p[10] = 0.0;
        p[12] = 0.0;
        p[11] = w;
        p[15] = w;
        p[13] = 2.0 * w;
        p[14] = 2.0 * w;
        p[16..].copy_from_slice(&[1.0, 1.0, 1.0]);
        let s = SymmetricAnsatz4::new([false, false, true]).unwrap().state(&p).unwrap();
        let e = mean_entropy(&s, &EntropyLossSpec::new(4).unwrap()).unwrap();
        // each 2|2 marginal has spectrum (1/2, 1/6, 1/6, 1/6)
        let expected = 0.5 + 0.5 * 6f64.log2();
        assert!((e - expected).abs() < 1e-12, "{e}");
    }
}
