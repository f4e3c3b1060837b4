//! Versioned CSV tables: one `#` metadata line, then a header row.

use std::io::Write;

use crate::error::Result;

pub const SCHEMA_VERSION: &str = "v1";

/// Writes `# experiment=<name> seed=<seed> schema=v1`, the column names and
/// the rows. A missing seed is written as `-`.
pub fn write_table<W: Write>(
    mut out: W,
    experiment: &str,
    seed: Option<u64>,
    columns: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<()> {
    let seed = seed.map_or_else(|| "-".to_string(), |s| s.to_string());
    writeln!(out, "# experiment={experiment} seed={seed} schema={SCHEMA_VERSION}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(columns)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}
