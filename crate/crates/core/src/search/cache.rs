//! Text cache of searched states.
//!
//! Lines starting with `#` are comments. Every other line is one record of
//! whitespace-separated fields:
//!
//! ```text
//! N ansatz seed entropy re_0 im_0 re_1 im_1 … re_{2^N-1} im_{2^N-1}
//! ```
//!
//! `ansatz` is `generic` or `symmetric4`, `entropy` is the mean subsystem
//! entropy in bits and amplitudes follow the basis order with site 0 most
//! significant. Reals are written in shortest round-trip form.

use std::fmt::Write as _;
use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;

use super::{search_max_entropy_state, AnsatzKind};
use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::register::Register;
use crate::state::PureState;

#[derive(Clone, Debug)]
pub struct StateRecord {
    pub n: usize,
    pub ansatz: AnsatzKind,
    pub seed: u64,
    pub mean_entropy: f64,
    pub state: PureState,
}

impl StateRecord {
    fn key(&self) -> (usize, AnsatzKind, u64) {
        (self.n, self.ansatz, self.seed)
    }

    fn to_line(&self) -> String {
        let mut line = format!("{} {} {} {}", self.n, self.ansatz, self.seed, self.mean_entropy);
        for c in self.state.amplitudes().iter() {
            write!(line, " {} {}", c.re, c.im).expect("writing to a String");
        }
        line
    }

    fn parse(line: &str, lineno: usize) -> Result<Self> {
        let err = |msg: String| Error::Parse { line: lineno, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 4 {
            return Err(err(format!("expected at least 4 fields, got {}", fields.len())));
        }
        let n: usize = fields[0].parse().map_err(|e| err(format!("N: {e}")))?;
        let ansatz: AnsatzKind = fields[1].parse().map_err(|e: Error| err(e.to_string()))?;
        let seed: u64 = fields[2].parse().map_err(|e| err(format!("seed: {e}")))?;
        let mean_entropy: f64 = fields[3].parse().map_err(|e| err(format!("entropy: {e}")))?;
        let register = Register::qubits(n)?;
        let dim = register.total_dim();
        if fields.len() != 4 + 2 * dim {
            return Err(err(format!("expected {} amplitude reals, got {}", 2 * dim, fields.len() - 4)));
        }
        let reals = fields[4..]
            .iter()
            .map(|f| f.parse::<f64>().map_err(|e| err(format!("amplitude: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let amps = CVector::from_iterator(dim, reals.chunks(2).map(|c| C64::new(c[0], c[1])));
        let state = PureState::new(register, amps).map_err(|e| err(e.to_string()))?;
        Ok(Self { n, ansatz, seed, mean_entropy, state })
    }
}

/// Records loaded from and saved to one cache file.
#[derive(Debug)]
pub struct StateCache {
    path: PathBuf,
    records: Vec<StateRecord>,
}

const HEADER: &str = "# qgame state cache v1\n# fields: N ansatz seed entropy_bits re_0 im_0 re_1 im_1 ...\n";

impl StateCache {
    /// Loads `path`; a missing file gives an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => String::new(),
            Err(e) => return Err(e.into()),
        };
        let mut records = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            records.push(StateRecord::parse(line, i + 1)?);
        }
        Ok(Self { path, records })
    }

    pub fn records(&self) -> &[StateRecord] {
        &self.records
    }

    pub fn get(&self, n: usize, ansatz: AnsatzKind, seed: u64) -> Option<&StateRecord> {
        self.records.iter().find(|r| r.key() == (n, ansatz, seed))
    }

    /// Inserts or replaces the record with the same key.
    pub fn insert(&mut self, record: StateRecord) {
        match self.records.iter_mut().find(|r| r.key() == record.key()) {
            Some(slot) => *slot = record,
            None => self.records.push(record),
        }
    }

    pub fn save(&self) -> Result<()> {
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let mut text = String::from(HEADER);
        for r in &self.records {
            text.push_str(&r.to_line());
            text.push('\n');
        }
        fs::write(&self.path, text)?;
        Ok(())
    }

    /// Returns the cached record or runs the search, stores and saves it.
    pub fn load_or_search(&mut self, n: usize, ansatz: AnsatzKind, restarts: usize, seed: u64) -> Result<StateRecord> {
        if let Some(r) = self.get(n, ansatz, seed) {
            return Ok(r.clone());
        }
        let out = search_max_entropy_state(n, ansatz, restarts, seed)?;
        let record = StateRecord { n, ansatz, seed, mean_entropy: out.mean_entropy, state: out.state };
        self.insert(record.clone());
        self.save()?;
        Ok(record)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::ghz_state;

    fn temp_path(name: &str) -> PathBuf {
        std::env::temp_dir().join(format!("qgame-cache-{}-{name}", std::process::id()))
    }

    #[test]
    fn round_trip_is_exact() {
        let path = temp_path("rt.txt");
        let _ = fs::remove_file(&path);
        let mut cache = StateCache::open(&path).unwrap();
        assert!(cache.records().is_empty());
        let state = ghz_state(3).unwrap();
        cache.insert(StateRecord { n: 3, ansatz: AnsatzKind::Generic, seed: 9, mean_entropy: 1.0, state: state.clone() });
        cache.save().unwrap();
        let back = StateCache::open(&path).unwrap();
        let r = back.get(3, AnsatzKind::Generic, 9).unwrap();
        assert_eq!(r.state.amplitudes(), state.amplitudes());
        assert!(back.get(3, AnsatzKind::Generic, 10).is_none());
        fs::remove_file(&path).unwrap();
    }

    #[test]
    fn bad_record_reports_line() {
        let path = temp_path("bad.txt");
        fs::write(&path, "# header\n2 generic 1 1.0 0.5 0.0\n").unwrap();
        let err = StateCache::open(&path).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        fs::remove_file(&path).unwrap();
    }

    #[test]
    fn second_lookup_hits_the_cache() {
        let path = temp_path("hit.txt");
        let _ = fs::remove_file(&path);
        let mut cache = StateCache::open(&path).unwrap();
        let a = cache.load_or_search(2, AnsatzKind::Generic, 2, 5).unwrap();
        let mut reopened = StateCache::open(&path).unwrap();
        let b = reopened.load_or_search(2, AnsatzKind::Generic, 2, 5).unwrap();
        assert_eq!(a.state.amplitudes(), b.state.amplitudes());
        fs::remove_file(&path).unwrap();
    }
}
