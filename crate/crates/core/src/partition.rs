//! Canonical set partitions of `{0, ..., n-1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SctError};

/// Largest supported group order; blocks are stored as `u64` bitsets.
pub const MAX_N: u32 = 64;

/// A set partition of `Z_n` in canonical form: blocks ordered by their
/// minimum element, block ids equal to that order, elements ascending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PartitionJson", into = "PartitionJson")]
pub struct Partition {
    n: u32,
    block_of: Vec<u32>,
    blocks: Vec<Vec<u32>>,
    masks: Vec<u64>,
}

/// Interchange form `{"n": 6, "blocks": [[0],[3],[1,4],[2,5]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionJson {
    pub n: u32,
    pub blocks: Vec<Vec<u32>>,
}

impl TryFrom<PartitionJson> for Partition {
    type Error = SctError;

    fn try_from(raw: PartitionJson) -> Result<Self> {
        Partition::new(raw.n, raw.blocks)
    }
}

impl From<Partition> for PartitionJson {
    fn from(p: Partition) -> Self {
        PartitionJson {
            n: p.n,
            blocks: p.blocks,
        }
    }
}

fn check_size(n: u32) -> Result<()> {
    if n == 0 {
        return Err(SctError::MalformedPartition {
            n,
            reason: "group order must be positive".into(),
        });
    }
    if n > MAX_N {
        return Err(SctError::TooLarge { n, max: MAX_N });
    }
    Ok(())
}

impl Partition {
    /// Canonicalizes raw blocks; rejects overlaps, gaps and out-of-range
    /// residues.
    pub fn new<I, B>(n: u32, raw_blocks: I) -> Result<Self>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = u32>,
    {
        check_size(n)?;
        let mut labels = vec![u32::MAX; n as usize];
        for (id, block) in raw_blocks.into_iter().enumerate() {
            let mut empty = true;
            for g in block {
                empty = false;
                if g >= n {
                    return Err(SctError::MalformedPartition {
                        n,
                        reason: format!("residue {g} out of range"),
                    });
                }
                if labels[g as usize] != u32::MAX {
                    return Err(SctError::MalformedPartition {
                        n,
                        reason: format!("residue {g} appears twice"),
                    });
                }
                labels[g as usize] = id as u32;
            }
            if empty {
                return Err(SctError::MalformedPartition {
                    n,
                    reason: "empty block".into(),
                });
            }
        }
        Self::from_labels(n, &labels)
    }

    /// Builds the partition whose blocks are the fibres of `labels`.
    pub fn from_labels(n: u32, labels: &[u32]) -> Result<Self> {
        check_size(n)?;
        if labels.len() != n as usize {
            return Err(SctError::MalformedPartition {
                n,
                reason: format!("{} labels for {n} residues", labels.len()),
            });
        }
        if let Some(g) = labels.iter().position(|&l| l == u32::MAX) {
            return Err(SctError::MalformedPartition {
                n,
                reason: format!("residue {g} not covered"),
            });
        }
        let mut remap = std::collections::HashMap::new();
        let mut block_of = Vec::with_capacity(n as usize);
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        for (g, &l) in labels.iter().enumerate() {
            let id = *remap.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() as u32 - 1
            });
            block_of.push(id);
            blocks[id as usize].push(g as u32);
        }
        let masks = blocks
            .iter()
            .map(|b| b.iter().fold(0u64, |m, &g| m | (1u64 << g)))
            .collect();
        Ok(Partition {
            n,
            block_of,
            blocks,
            masks,
        })
    }

    /// Builds a partition from disjoint block bitmasks covering `Z_n`.
    pub fn from_masks(n: u32, masks: &[u64]) -> Result<Self> {
        Self::new(
            n,
            masks
                .iter()
                .map(|&m| (0..n).filter(move |&g| m >> g & 1 == 1)),
        )
    }

    /// All singletons.
    pub fn min(n: u32) -> Self {
        Self::from_labels(n, &(0..n).collect::<Vec<_>>()).expect("valid n")
    }

    /// `{0}` and everything else.
    pub fn max(n: u32) -> Self {
        let labels: Vec<u32> = (0..n).map(|g| u32::from(g != 0)).collect();
        Self::from_labels(n, &labels).expect("valid n")
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, g: u32) -> usize {
        self.block_of[g as usize] as usize
    }

    pub fn labels(&self) -> &[u32] {
        &self.block_of
    }

    pub fn block(&self, id: usize) -> &[u32] {
        &self.blocks[id]
    }

    /// True when `mask` is a union of blocks.
    pub fn is_union_of_blocks(&self, mask: u64) -> bool {
        self.masks.iter().all(|&b| b & mask == 0 || b & mask == b)
    }

    fn same_n(&self, other: &Partition) -> Result<()> {
        if self.n != other.n {
            return Err(SctError::IncompatibleGroups {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// True iff every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        self.same_n(other)?;
        Ok(self.refines_unchecked(other))
    }

    pub(crate) fn refines_unchecked(&self, other: &Partition) -> bool {
        self.blocks.iter().all(|b| {
            b.iter()
                .all(|&g| other.block_of[g as usize] == other.block_of[b[0] as usize])
        })
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.same_n(other)?;
        let mut parent: Vec<u32> = (0..self.n).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for p in [self, other] {
            for b in &p.blocks {
                let root = find(&mut parent, b[0]);
                for &g in &b[1..] {
                    let r = find(&mut parent, g);
                    if r != root {
                        parent[r as usize] = root;
                    }
                }
            }
        }
        let labels: Vec<u32> = (0..self.n).map(|g| find(&mut parent, g)).collect();
        Partition::from_labels(self.n, &labels)
    }

    /// Coarsest common refinement (blockwise intersections). Unlike
    /// [`Partition::join`], this need not be a supercharacter theory even
    /// when both inputs are.
    pub fn intersect(&self, other: &Partition) -> Result<Partition> {
        self.same_n(other)?;
        let labels: Vec<u32> = (0..self.n as usize)
            .map(|g| self.block_of[g] * self.n + other.block_of[g])
            .collect();
        Partition::from_labels(self.n, &labels)
    }

    /// Image under `g -> f(g)` for a map onto `Z_m`; used to transport blocks
    /// between isomorphic groups. Errors if `f` is not a bijection.
    pub fn relabel(&self, m: u32, f: impl Fn(u32) -> u32) -> Result<Partition> {
        if m != self.n {
            return Err(SctError::IncompatibleGroups {
                left: self.n,
                right: m,
            });
        }
        Partition::new(
            m,
            self.blocks
                .iter()
                .map(|b| b.iter().map(|&g| f(g)).collect::<Vec<_>>()),
        )
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition(n={}, {})", self.n, self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str("{")?;
            for (j, g) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{g}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}
