//! Mean subsystem entropy over all `⌊N/2⌋`-site subsets.

use num_complex::Complex64 as C64;

use crate::entropy::{clamp_eigenvalues, entropy_of};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, hermitian_eigenvalues, CMatrix, CVector};
use crate::register::{Register, SiteSplit};
use crate::state::PureState;

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyLossSpec {
    n: usize,
    k: usize,
    subsets: Vec<Vec<usize>>,
    log_base: f64,
}

impl EntropyLossSpec {
    /// Subsets of size `⌊n/2⌋`; for even `n` only those containing site 0,
    /// one per complementary pair. Entropies in bits.
    pub fn new(n: usize) -> Result<Self> {
        let mut spec = Self::all_subsets(n)?;
        if n % 2 == 0 {
            spec.subsets.retain(|s| s[0] == 0);
        }
        Ok(spec)
    }

    /// Every subset of size `⌊n/2⌋`, without complementary halving.
    pub fn all_subsets(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("entropy loss needs n >= 2, got {n}")));
        }
        let k = n / 2;
        Ok(Self { n, k, subsets: combinations(n, k), log_base: 2.0 })
    }

    pub fn with_log_base(mut self, base: f64) -> Self {
        self.log_base = base;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn log_base(&self) -> f64 {
        self.log_base
    }
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for s in start..n {
            current.push(s);
            rec(s + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Mean entropy of the reduced states on the subsets listed in `spec`.
pub fn mean_entropy(state: &PureState, spec: &EntropyLossSpec) -> Result<f64> {
    if state.num_sites() != spec.n {
        return Err(Error::DimensionMismatch { expected: spec.n, got: state.num_sites() });
    }
    let mut total = 0.0;
    for subset in &spec.subsets {
        let eig = clamp_eigenvalues(&state.partial_trace(subset)?.eigenvalues())?;
        total += entropy_of(&eig, spec.log_base);
    }
    Ok(total / spec.subsets.len() as f64)
}

/// `-mean_entropy`; its minimum `-k` (in bits, for qubits) certifies an AME state.
pub fn mean_entropy_loss(state: &PureState, spec: &EntropyLossSpec) -> Result<f64> {
    mean_entropy(state, spec).map(|s| -s)
}

/// Mean entropy of `x / |x|` and its gradient with respect to the raw real
/// parameters `x = (re_0, im_0, re_1, im_1, …)`.
pub(crate) struct EntropyField {
    spec: EntropyLossSpec,
    splits: Vec<SiteSplit>,
    dim: usize,
}

// log floor for zero eigenvalues in the gradient
const LOG_FLOOR: f64 = 1e-16;

impl EntropyField {
    pub fn new(register: &Register, spec: EntropyLossSpec) -> Result<Self> {
        let splits = spec.subsets.iter().map(|s| SiteSplit::new(register, s)).collect::<Result<Vec<_>>>()?;
        Ok(Self { spec, splits, dim: register.total_dim() })
    }

    pub fn num_params(&self) -> usize {
        2 * self.dim
    }

    pub fn amplitudes(&self, x: &[f64]) -> CVector {
        let v = CVector::from_iterator(self.dim, x.chunks(2).map(|c| C64::new(c[0], c[1])));
        let n = v.norm();
        v.unscale(n)
    }

    fn coefficients(&self, psi: &CVector, split: &SiteSplit) -> CMatrix {
        let mut m = CMatrix::zeros(split.block_dim(), split.rest_dim());
        for b in 0..split.block_dim() {
            for r in 0..split.rest_dim() {
                m[(b, r)] = psi[split.full(b, r)];
            }
        }
        m
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        let psi = self.amplitudes(x);
        let mut total = 0.0;
        for split in &self.splits {
            let m = self.coefficients(&psi, split);
            let rho = &m * m.adjoint();
            let eig: Vec<f64> = hermitian_eigenvalues(&rho).into_iter().map(|l| l.max(0.0)).collect();
            total += entropy_of(&eig, self.spec.log_base);
        }
        total / self.splits.len() as f64
    }

    pub fn value_and_gradient(&self, x: &[f64]) -> (f64, Vec<f64>) {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let psi = self.amplitudes(x);
        let ln_b = self.spec.log_base.ln();
        let mut total = 0.0;
        // dS/dψ* accumulated over subsets
        let mut w = CVector::zeros(self.dim);
        for split in &self.splits {
            let m = self.coefficients(&psi, split);
            let rho = &m * m.adjoint();
            let (vals, vecs) = hermitian_eigen(&rho);
            let vals: Vec<f64> = vals.into_iter().map(|l| l.max(0.0)).collect();
            total += entropy_of(&vals, self.spec.log_base);
            let logs = CVector::from_iterator(
                vals.len(),
                vals.iter().map(|&l| C64::new(-(l.max(LOG_FLOOR)).ln() / ln_b, 0.0)),
            );
            let a = &vecs * CMatrix::from_diagonal(&logs) * vecs.adjoint();
            let am = a * &m;
            for b in 0..split.block_dim() {
                for rr in 0..split.rest_dim() {
                    w[split.full(b, rr)] += am[(b, rr)];
                }
            }
        }
        let count = self.splits.len() as f64;
        w.unscale_mut(count);
        // real gradient wrt (re, im) of ψ is 2(Re w, Im w); project out the
        // radial direction and rescale for the normalization x -> x/|x|
        let mut g: Vec<f64> = w.iter().flat_map(|c| [2.0 * c.re, 2.0 * c.im]).collect();
        let psi_real: Vec<f64> = psi.iter().flat_map(|c| [c.re, c.im]).collect();
        let radial: f64 = g.iter().zip(&psi_real).map(|(a, b)| a * b).sum();
        for (gi, pi) in g.iter_mut().zip(&psi_real) {
            *gi = (*gi - radial * pi) / r;
        }
        (total / count, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimize::finite_difference_gradient;
    use crate::state::{bell_state, ghz_state, product_plus_state};

    #[test]
    fn subset_counts() {
        assert_eq!(EntropyLossSpec::new(5).unwrap().subsets().len(), 10);
        assert_eq!(EntropyLossSpec::new(6).unwrap().subsets().len(), 10);
        assert_eq!(EntropyLossSpec::new(4).unwrap().subsets().len(), 3);
        assert_eq!(EntropyLossSpec::all_subsets(6).unwrap().subsets().len(), 20);
        assert_eq!(EntropyLossSpec::new(8).unwrap().subsets().len(), 35);
    }

    #[test]
    fn reference_losses() {
        let bell = mean_entropy_loss(&bell_state(), &EntropyLossSpec::new(2).unwrap()).unwrap();
        assert!((bell + 1.0).abs() < 1e-12);
        let ghz = mean_entropy_loss(&ghz_state(3).unwrap(), &EntropyLossSpec::new(3).unwrap()).unwrap();
        assert!((ghz + 1.0).abs() < 1e-12);
        let plus = product_plus_state(&Register::qubits(4).unwrap()).unwrap();
        assert!(mean_entropy_loss(&plus, &EntropyLossSpec::new(4).unwrap()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn analytic_gradient_matches_finite_differences() {
        let reg = Register::qubits(4).unwrap();
        let field = EntropyField::new(&reg, EntropyLossSpec::new(4).unwrap()).unwrap();
        let x: Vec<f64> = (0..field.num_params()).map(|i| ((i * 7919) % 23) as f64 / 7.0 - 1.3).collect();
        let (v, g) = field.value_and_gradient(&x);
        assert!((v - field.value(&x)).abs() < 1e-12);
        let fd = finite_difference_gradient(|p| field.value(p), &x, 1e-6);
        for (a, b) in g.iter().zip(&fd) {
            assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        }
    }
}
