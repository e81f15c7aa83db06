//! Exhaustive enumeration of `Sup(Z_n)` by pruned backtracking.
//!
//! The search seals blocks in order of their least element. Candidate blocks
//! come from Schur's multiplier theorem: for every unit `u` and every
//! superclass `T`, `u*T` is again a superclass. Hence the superclass `T`
//! holding the least unassigned residue `f` has the shape
//!
//! ```text
//! T = f*H  ∪  x_1*H  ∪ ... ∪  x_k*H
//! ```
//!
//! where `H` is the stabilizer of `T` in `(Z/n)^*`, and the `x_i*H` are `H`-orbits
//! taken from distinct classes of elements of equal order. All images `u*T`
//! are sealed together with `T`. Each seal is followed by a partial
//! structure-constant test over all sealed blocks; every leaf is fully
//! validated.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclic::{divisors, element_order, mul_mod, unit_group, unit_subgroups};
use crate::error::{Result, SctError};
use crate::partition::{Partition, MAX_N};
use crate::theory::{validate, SCTheory};

/// Optional limits on a search. A search that hits a limit fails; it never
/// returns a partial set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

/// All supercharacter theories of one `Z_n`, deduplicated and sorted by
/// block count descending, then lexicographically by blocks: Min first and
/// Max last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheorySet {
    n: u32,
    theories: Vec<SCTheory>,
}

pub(crate) fn theory_order(a: &SCTheory, b: &SCTheory) -> std::cmp::Ordering {
    b.len()
        .cmp(&a.len())
        .then_with(|| a.superclasses().blocks().cmp(b.superclasses().blocks()))
}

impl TheorySet {
    /// Sorts and deduplicates; all theories must share `n`.
    pub fn new(n: u32, mut theories: Vec<SCTheory>) -> Result<Self> {
        if let Some(t) = theories.iter().find(|t| t.n() != n) {
            return Err(SctError::IncompatibleGroups {
                left: n,
                right: t.n(),
            });
        }
        theories.sort_by(theory_order);
        theories.dedup();
        Ok(TheorySet { n, theories })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn theories(&self) -> &[SCTheory] {
        &self.theories
    }

    pub fn len(&self) -> usize {
        self.theories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theories.is_empty()
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.theories
            .binary_search_by(|t| {
                p.num_blocks()
                    .cmp(&t.len())
                    .then_with(|| t.superclasses().blocks().cmp(p.blocks()))
            })
            .ok()
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.position(p).is_some()
    }

    pub fn into_theories(self) -> Vec<SCTheory> {
        self.theories
    }
}

/// Per-`n` tables shared by every search branch.
struct Tables {
    n: u32,
    full: u64,
    units: Vec<u32>,
    /// Order class of each residue (index into `classes`).
    class_of: Vec<usize>,
    /// Elements of each order, as masks; index follows `divisors(n)`.
    classes: Vec<u64>,
    subgroups: Vec<SubgroupInfo>,
}

struct SubgroupInfo {
    /// `admissible[c]`: the subgroup contains every unit that is 1 modulo the
    /// order of class `c`, so it can cut that class into orbits.
    admissible: Vec<bool>,
    /// `orbits[c]`: orbits of the subgroup on class `c`.
    orbits: Vec<Vec<u64>>,
}

impl Tables {
    fn new(n: u32) -> Self {
        let divs = divisors(n);
        let class_of: Vec<usize> = (0..n)
            .map(|g| {
                divs.binary_search(&element_order(n, g))
                    .expect("order divides n")
            })
            .collect();
        let mut classes = vec![0u64; divs.len()];
        for g in 0..n {
            classes[class_of[g as usize]] |= 1 << g;
        }
        let units = unit_group(n).elements().to_vec();
        let subgroups = unit_subgroups(n)
            .iter()
            .map(|h| {
                let admissible = divs
                    .iter()
                    .map(|&d| {
                        units
                            .iter()
                            .filter(|&&u| u % d == 1 % d)
                            .all(|&u| h.contains(u))
                    })
                    .collect();
                let orbits = classes
                    .iter()
                    .map(|&cls| {
                        let mut rest = cls;
                        let mut out = Vec::new();
                        while rest != 0 {
                            let g = rest.trailing_zeros();
                            let orbit = h.orbit_mask(g);
                            out.push(orbit);
                            rest &= !orbit;
                        }
                        out
                    })
                    .collect();
                SubgroupInfo { admissible, orbits }
            })
            .collect();
        Tables {
            n,
            full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            units,
            class_of,
            classes,
            subgroups,
        }
    }

    fn scale(&self, u: u32, mask: u64) -> u64 {
        let mut out = 0;
        let mut rest = mask;
        while rest != 0 {
            let g = rest.trailing_zeros();
            rest &= rest - 1;
            out |= 1u64 << mul_mod(u, g, self.n);
        }
        out
    }

    /// Distinct unit images of `t`, in ascending order of least element.
    fn images(&self, t: u64) -> Vec<u64> {
        let mut out: Vec<u64> = self.units.iter().map(|&u| self.scale(u, t)).collect();
        out.sort_by_key(|m| m.trailing_zeros());
        out.dedup();
        out
    }

    /// Every admissible block through the least unassigned residue `f`,
    /// expanded to the full set of its unit images.
    fn candidates(&self, assigned: u64) -> Vec<Vec<u64>> {
        let f = (!assigned & self.full).trailing_zeros();
        let home = self.class_of[f as usize];
        let free: Vec<usize> = (0..self.classes.len())
            .filter(|&c| c != home && self.classes[c] & assigned == 0)
            .collect();
        let mut out = Vec::new();
        for subset in 0u32..(1 << free.len()) {
            let chosen: Vec<usize> = (0..free.len())
                .filter(|i| subset >> i & 1 == 1)
                .map(|i| free[i])
                .collect();
            for info in &self.subgroups {
                if !info.admissible[home] || chosen.iter().any(|&c| !info.admissible[c]) {
                    continue;
                }
                let base = *info.orbits[home]
                    .iter()
                    .find(|&&o| o >> f & 1 == 1)
                    .expect("f lies in an orbit");
                let mut picks = vec![0usize; chosen.len()];
                loop {
                    let t = chosen
                        .iter()
                        .zip(&picks)
                        .fold(base, |acc, (&c, &k)| acc | info.orbits[c][k]);
                    out.push(self.images(t));
                    // odometer over orbit choices
                    let mut pos = 0;
                    while pos < chosen.len() {
                        picks[pos] += 1;
                        if picks[pos] < info.orbits[chosen[pos]].len() {
                            break;
                        }
                        picks[pos] = 0;
                        pos += 1;
                    }
                    if pos == chosen.len() {
                        break;
                    }
                }
            }
        }
        out
    }
}

fn elements(mask: u64) -> impl Iterator<Item = u32> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        (rest != 0).then(|| {
            let g = rest.trailing_zeros();
            rest &= rest - 1;
            g
        })
    })
}

/// Partial structure-constant test: every product of two sealed block sums
/// must have constant coefficients on every sealed block.
fn sealed_products_consistent(n: u32, sealed: &[u64], counts: &mut [u32]) -> bool {
    let lists: Vec<Vec<u32>> = sealed.iter().map(|&m| elements(m).collect()).collect();
    for i in 0..lists.len() {
        for j in i..lists.len() {
            counts.iter_mut().for_each(|c| *c = 0);
            for &x in &lists[i] {
                for &y in &lists[j] {
                    counts[((x + y) % n) as usize] += 1;
                }
            }
            for block in &lists {
                let c0 = counts[block[0] as usize];
                if block[1..].iter().any(|&g| counts[g as usize] != c0) {
                    return false;
                }
            }
        }
    }
    true
}

struct Search<'a> {
    tables: &'a Tables,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    nodes: &'a AtomicU64,
    aborted: &'a AtomicBool,
}

impl Search<'_> {
    fn tick(&self) -> bool {
        let seen = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over = self.max_nodes.is_some_and(|m| seen > m)
            || self.deadline.is_some_and(|d| Instant::now() > d);
        if over {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !over && !self.aborted.load(Ordering::Relaxed)
    }

    fn descend(&self, sealed: &mut Vec<u64>, assigned: u64, out: &mut Vec<Vec<u64>>) {
        if !self.tick() {
            return;
        }
        if assigned == self.tables.full {
            out.push(sealed.clone());
            return;
        }
        let mut counts = vec![0u32; self.tables.n as usize];
        for images in self.tables.candidates(assigned) {
            let before = sealed.len();
            sealed.extend_from_slice(&images);
            if sealed_products_consistent(self.tables.n, sealed, &mut counts) {
                let added = images.iter().fold(0, |m, &b| m | b);
                self.descend(sealed, assigned | added, out);
            }
            sealed.truncate(before);
        }
    }
}

/// Enumerates every supercharacter theory of `Z_n`.
pub fn enumerate_all(n: u32, budget: Option<Budget>) -> Result<TheorySet> {
    if n == 0 {
        return Err(SctError::MalformedPartition {
            n,
            reason: "group order must be positive".into(),
        });
    }
    if n > MAX_N {
        return Err(SctError::TooLarge { n, max: MAX_N });
    }
    if n == 1 {
        return TheorySet::new(1, vec![validate(&Partition::min(1))?]);
    }
    let budget = budget.unwrap_or_default();
    let tables = Tables::new(n);
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let search = Search {
        tables: &tables,
        max_nodes: budget.max_nodes,
        deadline: budget.time_limit.map(|d| Instant::now() + d),
        nodes: &nodes,
        aborted: &aborted,
    };
    // {0} is sealed first; branches on the next block run in parallel.
    let root = vec![1u64];
    let first = tables.candidates(1);
    let leaves: Vec<Vec<u64>> = first
        .into_par_iter()
        .map(|images| {
            let mut sealed = root.clone();
            sealed.extend_from_slice(&images);
            let mut out = Vec::new();
            let mut counts = vec![0u32; n as usize];
            if sealed_products_consistent(n, &sealed, &mut counts) {
                let assigned = sealed.iter().fold(0, |m, &b| m | b);
                search.descend(&mut sealed, assigned, &mut out);
            }
            out
        })
        .flatten()
        .collect();
    if aborted.load(Ordering::Relaxed) {
        return Err(SctError::ResourceLimit {
            n,
            nodes: nodes.load(Ordering::Relaxed),
        });
    }
    let theories = leaves
        .into_par_iter()
        .map(|masks| validate(&Partition::from_masks(n, &masks)?))
        .collect::<Result<Vec<_>>>()?;
    TheorySet::new(n, theories)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{full_automorphism_theory, max_theory, min_theory};

    #[test]
    fn c4_is_a_chain_of_three() {
        let set = enumerate_all(4, None).unwrap();
        let blocks: Vec<usize> = set.theories().iter().map(|t| t.len()).collect();
        assert_eq!(blocks, vec![4, 3, 2]);
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_all(1, None).unwrap().len(), 1);
        assert_eq!(enumerate_all(2, None).unwrap().len(), 1);
        assert_eq!(enumerate_all(5, None).unwrap().len(), 3);
        let c6 = enumerate_all(6, None).unwrap();
        assert_eq!(c6.theories()[0], min_theory(6));
        assert_eq!(c6.theories().last().unwrap(), &max_theory(6));
        assert!(c6.contains(full_automorphism_theory(6).superclasses()));
    }

    #[test]
    fn node_budget_fails_loudly() {
        let err = enumerate_all(
            24,
            Some(Budget {
                max_nodes: Some(5),
                time_limit: None,
            }),
        )
        .unwrap_err();
        assert!(matches!(err, SctError::ResourceLimit { n: 24, .. }));
    }

    #[test]
    fn position_lookup() {
        let set = enumerate_all(12, None).unwrap();
        for (i, t) in set.theories().iter().enumerate() {
            assert_eq!(set.position(t.superclasses()), Some(i));
        }
        assert_eq!(set.position(&Partition::min(11)), None);
    }
}
