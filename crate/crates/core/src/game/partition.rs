use std::fmt;

use crate::error::{Error, Result};

/// Largest register for which partitions are enumerated exhaustively.
pub const MAX_PARTITION_SITES: usize = 10;

/// Disjoint blocks covering sites `0..n`, each no larger than `max_block`.
///
/// Blocks are stored canonically: each block ascending, blocks ordered by
/// their smallest site.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockPartition {
    blocks: Vec<Vec<usize>>,
    max_block: usize,
}

impl BlockPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>, n: usize, max_block: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidSites("empty block".into()));
            }
            if block.len() > max_block {
                return Err(Error::IllegalMove(format!(
                    "block {block:?} has {} sites, capability is {max_block}",
                    block.len()
                )));
            }
            block.sort_unstable();
            for &s in block.iter() {
                if s >= n {
                    return Err(Error::InvalidSites(format!("site {s} out of range for {n} sites")));
                }
                if seen[s] {
                    return Err(Error::InvalidSites(format!("site {s} appears in two blocks")));
                }
                seen[s] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&x| !x) {
            return Err(Error::InvalidSites(format!("site {missing} is not covered")));
        }
        blocks.sort();
        Ok(Self { blocks, max_block })
    }

    /// Completes the given disjoint blocks with singletons.
    pub fn completed(blocks: Vec<Vec<usize>>, n: usize, max_block: usize) -> Result<Self> {
        let mut covered = vec![false; n];
        for &s in blocks.iter().flatten() {
            if s < n {
                covered[s] = true;
            }
        }
        let mut all = blocks;
        all.extend((0..n).filter(|&s| !covered[s]).map(|s| vec![s]));
        Self::new(all, n, max_block.max(1))
    }

    pub fn singletons(n: usize) -> Self {
        Self { blocks: (0..n).map(|s| vec![s]).collect(), max_block: 1 }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn max_block(&self) -> usize {
        self.max_block
    }

    pub fn num_sites(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for BlockPartition {
    /// `{0,1}|{2}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            let inner: Vec<String> = block.iter().map(usize::to_string).collect();
            write!(f, "{{{}}}", inner.join(","))?;
        }
        Ok(())
    }
}

/// Every set partition of `0..n` with blocks of at most `max_block` sites,
/// in lexicographic order of canonical form.
pub fn enumerate_partitions(n: usize, max_block: usize) -> Result<Vec<BlockPartition>> {
    if n > MAX_PARTITION_SITES {
        return Err(Error::Guard(format!(
            "partition enumeration supports at most {MAX_PARTITION_SITES} sites, got {n}"
        )));
    }
    if n == 0 || max_block == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and max_block >= 1".into()));
    }
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    grow(0, n, max_block, &mut blocks, &mut out);
    out.sort();
    Ok(out)
}

// Restricted-growth recursion: site `next` joins an existing block or opens a new one.
fn grow(
    next: usize,
    n: usize,
    max_block: usize,
    blocks: &mut Vec<Vec<usize>>,
    out: &mut Vec<BlockPartition>,
) {
    if next == n {
        out.push(BlockPartition { blocks: blocks.clone(), max_block });
        return;
    }
    for i in 0..blocks.len() {
        if blocks[i].len() < max_block {
            blocks[i].push(next);
            grow(next + 1, n, max_block, blocks, out);
            blocks[i].pop();
        }
    }
    blocks.push(vec![next]);
    grow(next + 1, n, max_block, blocks, out);
    blocks.pop();
}
