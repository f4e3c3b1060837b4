//! Registers of finite-dimensional sites and the index bookkeeping needed to
//! split a basis index into a block part and a remainder.
//!
//! Site 0 is the leftmost tensor factor, i.e. the most significant digit of
//! the basis index. Every embedding and partial trace in the crate follows
//! this convention.

use crate::error::{Error, Result};

/// Default cap on the total Hilbert-space dimension of a register.
pub const DEFAULT_DIM_CAP: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Register {
    dims: Vec<usize>,
    total: usize,
}

impl Register {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        Self::with_cap(dims, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(dims: Vec<usize>, cap: usize) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidSites("register needs at least one site".into()));
        }
        let mut total: usize = 1;
        for &d in &dims {
            if d < 2 {
                return Err(Error::SiteDimension(d));
            }
            total = total
                .checked_mul(d)
                .filter(|&t| t <= cap)
                .ok_or(Error::DimensionCap { dim: total.saturating_mul(d), cap })?;
        }
        Ok(Self { dims, total })
    }

    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.total
    }

    pub fn is_qubits(&self) -> bool {
        self.dims.iter().all(|&d| d == 2)
    }

    /// Product of the dimensions of `sites`.
    pub fn dim_of(&self, sites: &[usize]) -> usize {
        sites.iter().map(|&s| self.dims[s]).product()
    }

    /// Sub-register made of `sites`, in the given order.
    pub fn select(&self, sites: &[usize]) -> Result<Register> {
        self.check_sites(sites)?;
        Register::new(sites.iter().map(|&s| self.dims[s]).collect())
    }

    /// Sites must be distinct and in range; an empty list is rejected.
    pub fn check_sites(&self, sites: &[usize]) -> Result<()> {
        if sites.is_empty() {
            return Err(Error::InvalidSites("empty site list".into()));
        }
        let mut seen = vec![false; self.len()];
        for &s in sites {
            if s >= self.len() {
                return Err(Error::InvalidSites(format!(
                    "site {s} out of range for {} sites",
                    self.len()
                )));
            }
            if seen[s] {
                return Err(Error::InvalidSites(format!("site {s} listed twice")));
            }
            seen[s] = true;
        }
        Ok(())
    }

    /// Mixed-radix digits of a basis index, site 0 first.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    pub fn index_of(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.dims).fold(0, |acc, (&x, &d)| acc * d + x)
    }

    /// Site strides: `index = sum(digit[s] * stride[s])`.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.len()];
        for s in (0..self.len().saturating_sub(1)).rev() {
            strides[s] = strides[s + 1] * self.dims[s + 1];
        }
        strides
    }
}

/// Decomposition of the full basis into `block ⊗ rest`.
///
/// `full = block_offset[b] + rest_offset[r]`, where `b` indexes the block
/// sites in the order given and `r` the remaining sites in ascending order.
#[derive(Clone, Debug)]
pub struct SiteSplit {
    pub block_sites: Vec<usize>,
    pub rest_sites: Vec<usize>,
    pub block_offset: Vec<usize>,
    pub rest_offset: Vec<usize>,
}

impl SiteSplit {
    pub fn new(register: &Register, block: &[usize]) -> Result<Self> {
        register.check_sites(block)?;
        let rest: Vec<usize> = (0..register.len()).filter(|s| !block.contains(s)).collect();
        let strides = register.strides();
        Ok(Self {
            block_offset: offsets(register, &strides, block),
            rest_offset: offsets(register, &strides, &rest),
            block_sites: block.to_vec(),
            rest_sites: rest,
        })
    }

    pub fn block_dim(&self) -> usize {
        self.block_offset.len()
    }

    pub fn rest_dim(&self) -> usize {
        self.rest_offset.len()
    }

    #[inline]
    pub fn full(&self, b: usize, r: usize) -> usize {
        self.block_offset[b] + self.rest_offset[r]
    }
}

fn offsets(register: &Register, strides: &[usize], sites: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &s in sites {
        let d = register.dims()[s];
        out = out
            .iter()
            .flat_map(|&base| (0..d).map(move |x| base + x * strides[s]))
            .collect();
    }
    out
}
