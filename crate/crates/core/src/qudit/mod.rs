//! Energy injection on five-level sites prepared in a diagonal mixed state.
//!
//! Each site holds `diag(p2, p1, p0, p1, p2)` against the local Hamiltonian
//! `diag(E2, E1, 0, -E1, -E2)`; the maximizing player may act on one site at a
//! time or on pairs.

pub mod defence;
pub mod ladder;

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::register::DEFAULT_DIM_CAP;

pub use defence::{perfect_defence_check, DefenceReport};
pub use ladder::{entropy_ascent_two_qudits, LadderAscent, LadderParams, LADDER_LEVELS};

const SPEC_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuditSpec {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    pub e1: f64,
    pub e2: f64,
}

impl QuditSpec {
    /// Requires `p0 + 2 p1 + 2 p2 = 1`, `0 <= p2 <= p1 <= p0` and
    /// `E2 > E1 > 0`. Equalities are allowed and reported by
    /// [`QuditSpec::is_degenerate`].
    pub fn new(p0: f64, p1: f64, p2: f64, e1: f64, e2: f64) -> Result<Self> {
        let sum = p0 + 2.0 * p1 + 2.0 * p2;
        if (sum - 1.0).abs() > SPEC_TOL {
            return Err(Error::InvalidParameter(format!("p0 + 2p1 + 2p2 = {sum}, expected 1")));
        }
        if !(p2 >= -SPEC_TOL && p2 <= p1 + SPEC_TOL && p1 <= p0 + SPEC_TOL) {
            return Err(Error::InvalidParameter(format!("need 0 <= p2 <= p1 <= p0, got ({p0}, {p1}, {p2})")));
        }
        if !(e2 > e1 && e1 > 0.0) {
            return Err(Error::InvalidParameter(format!("need E2 > E1 > 0, got E1={e1}, E2={e2}")));
        }
        Ok(Self { p0, p1, p2: p2.max(0.0), e1, e2 })
    }

    /// Fixes `p1` from the trace condition.
    pub fn from_p0_p2(p0: f64, p2: f64, e1: f64, e2: f64) -> Result<Self> {
        Self::new(p0, (1.0 - p0 - 2.0 * p2) / 2.0, p2, e1, e2)
    }

    /// True on the boundary of the ordering: `p2 = 0`, `p2 = p1` or `p1 = p0`.
    pub fn is_degenerate(&self) -> bool {
        self.p2 == 0.0 || self.p2 == self.p1 || self.p1 == self.p0
    }

    pub fn populations(&self) -> [f64; 5] {
        [self.p2, self.p1, self.p0, self.p1, self.p2]
    }

    pub fn energies(&self) -> [f64; 5] {
        [self.e2, self.e1, 0.0, -self.e1, -self.e2]
    }

    /// Which printed branch applies: `p0 p2 > p1²`.
    pub fn upper_branch(&self) -> bool {
        self.p0 * self.p2 > self.p1 * self.p1
    }
}

/// Best energy from unitaries on one site: `p0 E2 + p1 E1 - p2 (E1 + E2)`.
pub fn single_site_max_energy(spec: &QuditSpec) -> f64 {
    // expanded in level order so rounding matches the sorted pairing
    spec.p0 * spec.e2 + spec.p1 * spec.e1 - spec.p2 * spec.e1 - spec.p2 * spec.e2
}

/// Best total energy from a global unitary on the product of the given sites:
/// the joint eigenvalues and the joint energy levels, both sorted
/// nonincreasing, paired up.
pub fn max_energy_oracle(sites: &[QuditSpec]) -> Result<f64> {
    let dim = 5usize.checked_pow(sites.len() as u32).unwrap_or(usize::MAX);
    if sites.is_empty() || dim > DEFAULT_DIM_CAP {
        return Err(Error::DimensionCap { dim, cap: DEFAULT_DIM_CAP });
    }
    let mut probs = vec![1.0];
    let mut levels = vec![0.0];
    for s in sites {
        probs = probs.iter().flat_map(|p| s.populations().map(|q| p * q)).collect();
        levels = levels.iter().flat_map(|e| s.energies().map(|f| e + f)).collect();
    }
    probs.sort_by(|a, b| b.total_cmp(a));
    levels.sort_by(|a, b| b.total_cmp(a));
    Ok(probs.iter().zip(&levels).map(|(p, e)| p * e).sum())
}

/// The printed two-site expression for the maximal energy per site, both
/// branches evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrintedFormula {
    /// Branch for `p0 p2 <= p1²`.
    pub lower: f64,
    /// Branch for `p0 p2 > p1²`.
    pub upper: f64,
    pub upper_selected: bool,
}

impl PrintedFormula {
    pub fn selected(&self) -> f64 {
        if self.upper_selected {
            self.upper
        } else {
            self.lower
        }
    }
}

/// Evaluates the printed piecewise formula verbatim, including the last term
/// `(E1 + 5/2) p2²`. Kept for comparison with [`max_energy_oracle`], which it
/// does not match.
pub fn printed_two_site_formula(spec: &QuditSpec) -> PrintedFormula {
    let QuditSpec { p0, p1, p2, e1, e2 } = *spec;
    let shared = e2 * p0 * p0 + (e1 + 2.0 * e2) * p0 * p1 - (e1 + 1.5 * e2) * p1 * p2 - (e1 + 2.5) * p2 * p2;
    let lower = shared + (e2 - e1) * p1 * p1 + 2.0 * e1 * p0 * p2;
    let upper = shared + (e1 / 2.0 + e2) * p0 * p2 + e1 / 2.0 * p1 * p1;
    PrintedFormula { lower, upper, upper_selected: spec.upper_branch() }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub p2: f64,
    pub p1: f64,
    pub single_site: f64,
    /// Two-site oracle total divided by two.
    pub oracle_per_site: f64,
    pub formula: PrintedFormula,
}

impl SweepRow {
    pub fn formula_delta(&self) -> f64 {
        self.formula.selected() - self.oracle_per_site
    }
}

/// `points` evenly spaced values of `p2` in `[p2_min, p2_max]`.
pub fn ergotropy_sweep(p0: f64, p2_min: f64, p2_max: f64, points: usize, e1: f64, e2: f64) -> Result<Vec<SweepRow>> {
    if points < 2 {
        return Err(Error::InvalidParameter("a sweep needs at least two points".into()));
    }
    (0..points)
        .map(|i| {
            let p2 = p2_min + (p2_max - p2_min) * i as f64 / (points - 1) as f64;
            let spec = QuditSpec::from_p0_p2(p0, p2, e1, e2)?;
            Ok(SweepRow {
                p2,
                p1: spec.p1,
                single_site: single_site_max_energy(&spec),
                oracle_per_site: max_energy_oracle(&[spec, spec])? / 2.0,
                formula: printed_two_site_formula(&spec),
            })
        })
        .collect()
}

/// The default sweep: `p0 = 0.5`, `p2` in `[0, 0.12]`, `E1 = 1`, `E2 = 4`.
pub fn default_sweep() -> Result<Vec<SweepRow>> {
    ergotropy_sweep(0.5, 0.0, 0.12, 25, 1.0, 4.0)
}

/// `p2` where `p0 p2 = p1²` with `p1 = (1 - p0 - 2 p2)/2`, if it lies in
/// the valid range `p2 <= p1`.
pub fn branch_point(p0: f64) -> Option<f64> {
    // (c - 2 p2)² = 4 p0 p2 with c = 1 - p0
    let c = 1.0 - p0;
    let b = -(4.0 * c + 4.0 * p0);
    let disc = b * b - 16.0 * c * c;
    if disc < 0.0 {
        return None;
    }
    let root = (-b - disc.sqrt()) / 8.0;
    (root >= 0.0 && root <= (c - 2.0 * root) / 2.0).then_some(root)
}

/// Plain-text comparison of the printed formula against the oracle.
pub fn reconciliation_report(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    out.push_str("two-site energy per site: printed formula vs rearrangement oracle\n");
    out.push_str("p2\toracle\tformula\tbranch\tdelta\n");
    let mut worst: f64 = 0.0;
    for r in rows {
        let branch = if r.formula.upper_selected { "p0p2>p1^2" } else { "p0p2<=p1^2" };
        writeln!(out, "{:.4}\t{:.6}\t{:.6}\t{}\t{:+.6}", r.p2, r.oracle_per_site, r.formula.selected(), branch, r.formula_delta())
            .expect("writing to a String");
        worst = worst.max(r.formula_delta().abs());
    }
    writeln!(out, "max |delta| = {worst:.6}").expect("writing to a String");
    if worst > 1e-9 {
        out.push_str("the printed formula does not reproduce the oracle; the oracle is used for all reported maxima\n");
    }
    out
}
