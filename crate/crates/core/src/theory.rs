//! Supercharacter theories of `Z_n`: the two validators, supercharacter
//! tables, normal subgroups and restriction.
//!
//! A partition of `Z_n` with `{0}` as a block is the superclass partition of
//! a supercharacter theory exactly when the span of its block sums is closed
//! under multiplication in the group algebra. Two independent checks decide
//! this:
//!
//! * [`structure_constants`] counts representations `g = a + b` for every
//!   pair of blocks and requires the count to be constant on each block;
//! * [`dual_pattern_classes`] groups the characters `a -> zeta^(a g)` by their
//!   exact values on every block sum; the partition is a theory iff there
//!   are exactly as many classes as blocks.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclic::{divisors, mul_mod, Subgroup};
use crate::cyclotomic::{CyclotomicContext, CyclotomicInt};
use crate::error::{Result, SctError};
use crate::partition::Partition;

/// Why a partition is not a supercharacter theory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Rejection {
    /// `{0}` is not a block.
    IdentityNotSingleton,
    /// The product of block sums `left * right` has coefficients that differ
    /// on two elements of `block`.
    NonConstant {
        left: usize,
        right: usize,
        block: usize,
        first: (u32, u32),
        second: (u32, u32),
    },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::IdentityNotSingleton => f.write_str("{0} is not a superclass"),
            Rejection::NonConstant {
                left,
                right,
                block,
                first,
                second,
            } => write!(
                f,
                "product of blocks {left} and {right} hits element {} of block {block} {} times \
                 but element {} {} times",
                first.0, first.1, second.0, second.1
            ),
        }
    }
}

/// `c[i][j][k]`: the coefficient of block `k`'s sum in the product of block
/// sums `i` and `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    blocks: usize,
    table: Vec<u32>,
}

impl StructureConstants {
    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.table[(i * self.blocks + j) * self.blocks + k]
    }
}

/// Block pairs `i <= j`, cheapest products first: ordered by
/// `(|T_i| * |T_j|, i, j)`.
pub fn scan_order(p: &Partition) -> Vec<(usize, usize)> {
    let b = p.num_blocks();
    let mut pairs: Vec<(usize, usize)> = (0..b).flat_map(|i| (i..b).map(move |j| (i, j))).collect();
    pairs.sort_by_key(|&(i, j)| (p.block(i).len() * p.block(j).len(), i, j));
    pairs
}

/// Computes the structure constants, or the first witness (in
/// [`scan_order`]) that some product is not constant on a block.
pub fn structure_constants(p: &Partition) -> std::result::Result<StructureConstants, Rejection> {
    let n = p.n();
    if p.block(0) != [0] {
        return Err(Rejection::IdentityNotSingleton);
    }
    let b = p.num_blocks();
    let mut table = vec![0u32; b * b * b];
    let mut counts = vec![0u32; n as usize];
    for (i, j) in scan_order(p) {
        counts.iter_mut().for_each(|c| *c = 0);
        for &x in p.block(i) {
            for &y in p.block(j) {
                counts[((x + y) % n) as usize] += 1;
            }
        }
        for k in 0..b {
            let block = p.block(k);
            let g0 = block[0];
            let c0 = counts[g0 as usize];
            if let Some(&g) = block[1..].iter().find(|&&g| counts[g as usize] != c0) {
                return Err(Rejection::NonConstant {
                    left: i,
                    right: j,
                    block: k,
                    first: (g0, c0),
                    second: (g, counts[g as usize]),
                });
            }
            table[(i * b + j) * b + k] = c0;
            table[(j * b + i) * b + k] = c0;
        }
    }
    Ok(StructureConstants { blocks: b, table })
}

/// Value pattern of character `a` on the block sums of `p`.
fn pattern(ctx: &CyclotomicContext, p: &Partition, a: u32) -> Vec<CyclotomicInt> {
    let n = p.n();
    p.blocks()
        .iter()
        .map(|block| ctx.root_sum(block.iter().map(|&g| mul_mod(a, g, n))))
        .collect()
}

/// Partition of the character indices `0..n` by identical value patterns on
/// the blocks of `p`.
pub fn dual_pattern_classes(p: &Partition) -> Partition {
    let ctx = CyclotomicContext::new(p.n());
    dual_with_context(&ctx, p)
}

fn dual_with_context(ctx: &CyclotomicContext, p: &Partition) -> Partition {
    let mut ids: HashMap<Vec<CyclotomicInt>, u32> = HashMap::new();
    let labels: Vec<u32> = (0..p.n())
        .map(|a| {
            let next = ids.len() as u32;
            *ids.entry(pattern(ctx, p, a)).or_insert(next)
        })
        .collect();
    Partition::from_labels(p.n(), &labels).expect("one label per character")
}

/// A validated supercharacter theory of `Z_n`.
#[derive(Clone)]
pub struct SCTheory {
    superclasses: Partition,
    dual: Partition,
    table: Vec<Vec<CyclotomicInt>>,
    constants: StructureConstants,
}

impl fmt::Debug for SCTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SCTheory(n={}, {})", self.n(), self.superclasses)
    }
}

impl fmt::Display for SCTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.superclasses.fmt(f)
    }
}

impl PartialEq for SCTheory {
    fn eq(&self, other: &Self) -> bool {
        self.superclasses == other.superclasses
    }
}

impl Eq for SCTheory {}

impl std::hash::Hash for SCTheory {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.superclasses.hash(state)
    }
}

impl Serialize for SCTheory {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.superclasses.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SCTheory {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = Partition::deserialize(d)?;
        validate(&p).map_err(serde::de::Error::custom)
    }
}

impl SCTheory {
    pub fn n(&self) -> u32 {
        self.superclasses.n()
    }

    pub fn superclasses(&self) -> &Partition {
        &self.superclasses
    }

    pub fn dual(&self) -> &Partition {
        &self.dual
    }

    /// Rows indexed by dual classes, columns by superclasses.
    pub fn table(&self) -> &[Vec<CyclotomicInt>] {
        &self.table
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.constants
    }

    /// Number of superclasses.
    pub fn len(&self) -> usize {
        self.superclasses.num_blocks()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn refines(&self, other: &SCTheory) -> Result<bool> {
        self.superclasses.refines(&other.superclasses)
    }
}

/// Validates `p` with both validators and builds the supercharacter table.
pub fn validate(p: &Partition) -> Result<SCTheory> {
    let constants = structure_constants(p).map_err(SctError::NotATheory)?;
    let ctx = CyclotomicContext::new(p.n());
    let dual = dual_with_context(&ctx, p);
    if dual.num_blocks() != p.num_blocks() {
        return Err(SctError::InternalInconsistency(format!(
            "structure constants accept {p} but it has {} dual classes for {} superclasses",
            dual.num_blocks(),
            p.num_blocks()
        )));
    }
    let n = p.n();
    let mut table = Vec::with_capacity(dual.num_blocks());
    for x in dual.blocks() {
        let sigma = |g: u32| ctx.root_sum(x.iter().map(|&a| mul_mod(a, g, n)));
        let mut row = Vec::with_capacity(p.num_blocks());
        for k in p.blocks() {
            let value = sigma(k[0]);
            if let Some(&g) = k[1..].iter().find(|&&g| sigma(g) != value) {
                return Err(SctError::InternalInconsistency(format!(
                    "supercharacter on dual class starting at {} is not constant on the \
                     superclass of {g}",
                    x[0]
                )));
            }
            row.push(value);
        }
        table.push(row);
    }
    Ok(SCTheory {
        superclasses: p.clone(),
        dual,
        table,
        constants,
    })
}

/// Subgroups of `Z_n` that are unions of superclasses, by ascending order.
pub fn normal_subgroups(t: &SCTheory) -> Vec<Subgroup> {
    let n = t.n();
    divisors(n)
        .into_iter()
        .map(|m| Subgroup::of_order(n, m).expect("divisor"))
        .filter(|s| t.superclasses.is_union_of_blocks(s.mask()))
        .collect()
}

/// The theory `t_N` of `N`, transported to `Z_{|N|}`.
pub fn restrict(t: &SCTheory, sub: &Subgroup) -> Result<SCTheory> {
    if sub.n() != t.n() {
        return Err(SctError::IncompatibleGroups {
            left: t.n(),
            right: sub.n(),
        });
    }
    let mask = sub.mask();
    if !t.superclasses.is_union_of_blocks(mask) {
        return Err(SctError::NotNormal { order: sub.order() });
    }
    let blocks: Vec<Vec<u32>> = t
        .superclasses
        .blocks()
        .iter()
        .filter(|b| sub.contains(b[0]))
        .map(|b| b.iter().map(|&g| sub.to_small(g)).collect())
        .collect();
    validate(&Partition::new(sub.order(), blocks)?)
}
