//! The lattice `Sup(Z_n)` ordered by refinement: covers, joins, meets and
//! Birkhoff's semimodularity conditions.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::TheorySet;
use crate::error::{Result, SctError};
use crate::theory::SCTheory;

/// Largest lattice held as a dense comparability matrix.
pub const MAX_LATTICE: usize = 20_000;

#[derive(Debug, Clone)]
pub struct Lattice {
    set: TheorySet,
    /// `up[i]`: all `j` with `i <= j`.
    up: Vec<FixedBitSet>,
    /// `down[i]`: all `j` with `j <= i`.
    down: Vec<FixedBitSet>,
    /// `cover_bits[i]`: all `j` with `i ⋖ j`.
    cover_bits: Vec<FixedBitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Upper,
    Lower,
    Modular,
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Property::Upper => "upper",
            Property::Lower => "lower",
            Property::Modular => "modular",
        })
    }
}

/// A pair violating a semimodularity condition, with its join and meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: usize,
    pub b: usize,
    pub join: usize,
    pub meet: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemimodularityReport {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
}

/// The closed interval `[lower, upper]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lower: usize,
    pub upper: usize,
    pub members: Vec<usize>,
    /// Cover pairs `(i, j)` with both ends inside the interval.
    pub covers: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct LatticeJson<'a> {
    n: u32,
    nodes: &'a [SCTheory],
    covers: Vec<[usize; 2]>,
}

pub fn build_lattice(set: TheorySet) -> Result<Lattice> {
    let n = set.n();
    let size = set.len();
    if size > MAX_LATTICE {
        return Err(SctError::ResourceLimit {
            n,
            nodes: size as u64,
        });
    }
    if size == 0 {
        return Err(SctError::IncompleteSet {
            n,
            reason: "no theories".into(),
        });
    }
    let theories = set.theories();
    let up: Vec<FixedBitSet> = (0..size)
        .into_par_iter()
        .map(|i| {
            let mut row = FixedBitSet::with_capacity(size);
            for (j, t) in theories.iter().enumerate() {
                if theories[i]
                    .superclasses()
                    .refines_unchecked(t.superclasses())
                {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let mut down = vec![FixedBitSet::with_capacity(size); size];
    for (i, row) in up.iter().enumerate() {
        for j in row.ones() {
            down[j].insert(i);
        }
    }
    // i ⋖ j iff j is strictly above i and not strictly above any k > i.
    let cover_bits: Vec<FixedBitSet> = (0..size)
        .into_par_iter()
        .map(|i| {
            let mut strict = up[i].clone();
            strict.set(i, false);
            let mut covers = strict.clone();
            for k in strict.ones() {
                let mut above_k = up[k].clone();
                above_k.set(k, false);
                covers.difference_with(&above_k);
            }
            covers
        })
        .collect();
    let upper_covers: Vec<Vec<usize>> = cover_bits.iter().map(|r| r.ones().collect()).collect();
    let mut lower_covers = vec![Vec::new(); size];
    for (i, ups) in upper_covers.iter().enumerate() {
        for &j in ups {
            lower_covers[j].push(i);
        }
    }
    let lattice = Lattice {
        set,
        up,
        down,
        cover_bits,
        upper_covers,
        lower_covers,
    };
    lattice.check_bounds()?;
    lattice.check_join_closed()?;
    Ok(lattice)
}

impl Lattice {
    pub fn n(&self) -> u32 {
        self.set.n()
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn theories(&self) -> &[SCTheory] {
        self.set.theories()
    }

    pub fn theory_set(&self) -> &TheorySet {
        &self.set
    }

    pub fn theory(&self, id: usize) -> &SCTheory {
        &self.set.theories()[id]
    }

    pub fn id_of(&self, t: &SCTheory) -> Option<usize> {
        self.set.position(t.superclasses())
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `x ⋖ y`.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.cover_bits[x].contains(y)
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// All cover pairs `(finer, coarser)` in id order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.upper_covers
            .iter()
            .enumerate()
            .flat_map(|(i, ups)| ups.iter().map(move |&j| (i, j)))
            .collect()
    }

    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    fn check_bounds(&self) -> Result<()> {
        let n = self.n();
        let size = self.len();
        if self.up[0].count_ones(..) != size || self.down[size - 1].count_ones(..) != size {
            return Err(SctError::IncompleteSet {
                n,
                reason: "no bottom or top element".into(),
            });
        }
        if self.theory(0).len() != n as usize || self.theory(size - 1).len() != 2.min(n as usize) {
            return Err(SctError::IncompleteSet {
                n,
                reason: "bottom is not Min or top is not Max".into(),
            });
        }
        Ok(())
    }

    fn check_join_closed(&self) -> Result<()> {
        let size = self.len();
        (0..size)
            .into_par_iter()
            .try_for_each(|x| (x + 1..size).try_for_each(|y| self.join(x, y).map(|_| ())))
    }

    /// Least upper bound, computed as the join of set partitions.
    pub fn join(&self, x: usize, y: usize) -> Result<usize> {
        let joined = self
            .theory(x)
            .superclasses()
            .join(self.theory(y).superclasses())?;
        let z = self
            .set
            .position(&joined)
            .ok_or_else(|| SctError::IncompleteSet {
                n: self.n(),
                reason: format!("join {joined} of {x} and {y} missing"),
            })?;
        let mut bounds = self.up[x].clone();
        bounds.intersect_with(&self.up[y]);
        if !bounds.contains(z) || !bounds.is_subset(&self.up[z]) {
            return Err(SctError::InternalInconsistency(format!(
                "partition join of {x} and {y} is not their least upper bound"
            )));
        }
        Ok(z)
    }

    /// Greatest lower bound: the partition join of every common lower bound.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        let mut lower = self.down[x].clone();
        lower.intersect_with(&self.down[y]);
        let joined = lower
            .ones()
            .map(|i| self.theory(i).superclasses().clone())
            .reduce(|a, b| a.join(&b).expect("same n"))
            .expect("Min is a lower bound");
        let z = self
            .set
            .position(&joined)
            .expect("the lattice is join-closed");
        assert!(
            lower.contains(z) && lower.is_subset(&self.down[z]),
            "join of lower bounds of {x} and {y} is not their greatest lower bound"
        );
        z
    }

    /// Meet read off the order alone: the unique common lower bound whose
    /// down-set is the whole set of common lower bounds.
    pub fn meet_by_order(&self, x: usize, y: usize) -> usize {
        let mut lower = self.down[x].clone();
        lower.intersect_with(&self.down[y]);
        let count = lower.count_ones(..);
        lower
            .ones()
            .find(|&z| self.down[z].count_ones(..) == count)
            .expect("lattice has meets")
    }

    /// Join read off the order alone.
    pub fn join_by_order(&self, x: usize, y: usize) -> usize {
        let mut upper = self.up[x].clone();
        upper.intersect_with(&self.up[y]);
        let count = upper.count_ones(..);
        upper
            .ones()
            .find(|&z| self.up[z].count_ones(..) == count)
            .expect("lattice has joins")
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.upper_covers[self.bottom()].clone()
    }

    pub fn coatoms(&self) -> Vec<usize> {
        self.lower_covers[self.top()].clone()
    }

    /// Scans pairs `a < b` in id order and reports the first violation.
    pub fn check_semimodularity(&self, property: Property) -> SemimodularityReport {
        let witness = match property {
            Property::Upper => self.first_violation(true),
            Property::Lower => self.first_violation(false),
            Property::Modular => self
                .first_violation(true)
                .or_else(|| self.first_violation(false)),
        };
        SemimodularityReport {
            property,
            holds: witness.is_none(),
            witness,
        }
    }

    fn first_violation(&self, upper: bool) -> Option<Witness> {
        let size = self.len();
        let per_row: Vec<Option<Witness>> = (0..size)
            .into_par_iter()
            .map(|a| {
                (a + 1..size).find_map(|b| {
                    let meet = self.meet_by_order(a, b);
                    let join = self.join_by_order(a, b);
                    let violated = if upper {
                        self.covers(meet, a)
                            && self.covers(meet, b)
                            && !(self.covers(a, join) && self.covers(b, join))
                    } else {
                        self.covers(a, join)
                            && self.covers(b, join)
                            && !(self.covers(meet, a) && self.covers(meet, b))
                    };
                    violated.then_some(Witness { a, b, join, meet })
                })
            })
            .collect();
        per_row.into_iter().flatten().next()
    }

    /// All `z` with `lower <= z <= upper`.
    pub fn interval(&self, lower: usize, upper: usize) -> Result<Interval> {
        if !self.leq(lower, upper) {
            return Err(SctError::EmptyInterval { lower, upper });
        }
        let mut inside = self.up[lower].clone();
        inside.intersect_with(&self.down[upper]);
        let members: Vec<usize> = inside.ones().collect();
        let covers = members
            .iter()
            .flat_map(|&i| {
                self.upper_covers[i]
                    .iter()
                    .filter(|&&j| inside.contains(j))
                    .map(move |&j| (i, j))
            })
            .collect();
        Ok(Interval {
            lower,
            upper,
            members,
            covers,
        })
    }

    /// Graphviz rendering of the Hasse diagram, edges from finer to coarser.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph sup_{} {{", self.n()).unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        for (i, t) in self.theories().iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{i}:{}\"];", t.len()).unwrap();
        }
        for (i, j) in self.cover_pairs() {
            writeln!(out, "  n{i} -> n{j};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// `{"n": .., "nodes": [theories], "covers": [[i, j], ..]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&LatticeJson {
            n: self.n(),
            nodes: self.theories(),
            covers: self
                .cover_pairs()
                .into_iter()
                .map(|(i, j)| [i, j])
                .collect(),
        })
        .expect("lattice serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        full_automorphism_theory, inversion_theory, max_theory, min_theory, star_product,
    };
    use crate::cyclic::Subgroup;
    use crate::enumerate::enumerate_all;

    fn lattice(n: u32) -> Lattice {
        build_lattice(enumerate_all(n, None).unwrap()).unwrap()
    }

    fn star(n: u32, m: u32, inner: &SCTheory, outer: &SCTheory) -> SCTheory {
        star_product(n, &Subgroup::of_order(n, m).unwrap(), inner, outer).unwrap()
    }

    #[test]
    fn chain_of_four() {
        let l = lattice(4);
        assert_eq!(l.cover_pairs(), vec![(0, 1), (1, 2)]);
        for p in [Property::Upper, Property::Lower, Property::Modular] {
            assert!(l.check_semimodularity(p).holds);
        }
    }

    #[test]
    fn trivial_group() {
        let l = lattice(1);
        assert_eq!(l.len(), 1);
        assert!(l.cover_pairs().is_empty());
    }

    #[test]
    fn c6_atoms_and_coatoms() {
        let l = lattice(6);
        let mp = l
            .id_of(&star(6, 2, &min_theory(2), &min_theory(3)))
            .unwrap();
        let mq = l
            .id_of(&star(6, 3, &min_theory(3), &min_theory(2)))
            .unwrap();
        let atoms = l.atoms();
        assert!(atoms.contains(&mp) && atoms.contains(&mq));
        assert!(l.covers(0, mp) && l.covers(0, mq));
        let coatoms = l.coatoms();
        assert_eq!(coatoms.len(), 2);
        assert_eq!(l.join(coatoms[0], coatoms[1]).unwrap(), l.top());
        let meet = l.meet(coatoms[0], coatoms[1]);
        assert_eq!(l.theory(meet), &full_automorphism_theory(6));
        assert_eq!(l.theory(meet).len(), 4);
        assert!(!l.comparable(coatoms[0], coatoms[1]));
    }

    #[test]
    fn c9_join_with_inversion() {
        let l = lattice(9);
        let mm = l
            .id_of(&star(9, 3, &min_theory(3), &min_theory(3)))
            .unwrap();
        let inv = l.id_of(&inversion_theory(9)).unwrap();
        let ii = l
            .id_of(&star(9, 3, &inversion_theory(3), &inversion_theory(3)))
            .unwrap();
        assert_eq!(l.join(mm, inv).unwrap(), ii);
        assert_eq!(l.join(mm, 0).unwrap(), mm);
        assert_eq!(l.meet(mm, l.top()), mm);
    }

    #[test]
    fn c12_coatoms() {
        let l = lattice(12);
        let mut expected: Vec<usize> = [2, 3, 4, 6]
            .iter()
            .map(|&m| {
                l.id_of(&star(12, m, &max_theory(m), &max_theory(12 / m)))
                    .unwrap()
            })
            .collect();
        expected.sort();
        assert_eq!(l.coatoms(), expected);
    }

    #[test]
    fn inversion_is_an_atom() {
        for n in 3..=20 {
            let l = lattice(n);
            let inv = l.id_of(&inversion_theory(n)).unwrap();
            assert!(l.atoms().contains(&inv), "n = {n}");
        }
    }

    #[test]
    fn semimodularity_of_small_cases() {
        let l8 = lattice(8);
        let upper = l8.check_semimodularity(Property::Upper);
        let lower = l8.check_semimodularity(Property::Lower);
        assert!(!upper.holds && !lower.holds);
        let w = upper.witness.unwrap();
        assert!(l8.covers(w.meet, w.a) && l8.covers(w.meet, w.b));
        assert!(!(l8.covers(w.a, w.join) && l8.covers(w.b, w.join)));
        let w = lower.witness.unwrap();
        assert!(l8.covers(w.a, w.join) && l8.covers(w.b, w.join));
        assert!(!(l8.covers(w.meet, w.a) && l8.covers(w.meet, w.b)));

        let l15 = lattice(15);
        assert!(l15.check_semimodularity(Property::Lower).holds);
        assert!(!l15.check_semimodularity(Property::Upper).holds);
        assert!(!l15.check_semimodularity(Property::Modular).holds);
    }

    #[test]
    fn meets_and_joins_agree_across_routes() {
        for n in [6u32, 8, 12, 16, 18] {
            let l = lattice(n);
            for x in 0..l.len() {
                for y in 0..l.len() {
                    assert_eq!(l.meet(x, y), l.meet_by_order(x, y), "n={n} {x} {y}");
                    assert_eq!(l.join(x, y).unwrap(), l.join_by_order(x, y));
                }
            }
        }
    }

    #[test]
    fn covers_are_transitive_reduction() {
        for n in [8u32, 12, 24] {
            let l = lattice(n);
            // reachability through covers reproduces the order
            for x in 0..l.len() {
                let mut seen = vec![false; l.len()];
                let mut stack = vec![x];
                while let Some(v) = stack.pop() {
                    if !seen[v] {
                        seen[v] = true;
                        stack.extend_from_slice(l.upper_covers(v));
                    }
                }
                for (y, &s) in seen.iter().enumerate() {
                    assert_eq!(s, l.leq(x, y));
                }
                // no cover is implied by a longer path
                for &y in l.upper_covers(x) {
                    assert!(!l.upper_covers(x).iter().any(|&k| k != y && l.lt(k, y)));
                }
            }
        }
    }

    #[test]
    fn intervals() {
        let l = lattice(15);
        let whole = l.interval(0, l.top()).unwrap();
        assert_eq!(whole.members.len(), l.len());
        assert_eq!(whole.covers, l.cover_pairs());
        let a = l.id_of(&full_automorphism_theory(15)).unwrap();
        let below = l.interval(0, a).unwrap();
        assert!(below
            .members
            .iter()
            .all(|&z| !crate::constructions::is_nontrivial_star_product(l.theory(z))));
        assert_eq!(
            l.interval(l.top(), 0).unwrap_err(),
            SctError::EmptyInterval {
                lower: l.top(),
                upper: 0
            }
        );
    }

    #[test]
    fn exports() {
        let l = lattice(4);
        assert_eq!(
            l.to_dot(),
            "digraph sup_4 {\n  rankdir=BT;\n  n0 [label=\"0:4\"];\n  n1 [label=\"1:3\"];\n  \
             n2 [label=\"2:2\"];\n  n0 -> n1;\n  n1 -> n2;\n}\n"
        );
        assert_eq!(
            l.to_json(),
            r#"{"n":4,"nodes":[{"n":4,"blocks":[[0],[1],[2],[3]]},{"n":4,"blocks":[[0],[1,3],[2]]},{"n":4,"blocks":[[0],[1,2,3]]}],"covers":[[0,1],[1,2]]}"#
        );
    }

    #[test]
    fn incomplete_sets_are_refused() {
        let set = enumerate_all(6, None).unwrap();
        let coatoms: Vec<SCTheory> = {
            let l = build_lattice(set.clone()).unwrap();
            l.coatoms().iter().map(|&i| l.theory(i).clone()).collect()
        };
        let partial = TheorySet::new(
            6,
            vec![min_theory(6), coatoms[0].clone(), coatoms[1].clone()],
        )
        .unwrap();
        assert!(matches!(
            build_lattice(partial),
            Err(SctError::IncompleteSet { .. })
        ));
        let no_join = TheorySet::new(
            6,
            vec![
                min_theory(6),
                coatoms[0].clone(),
                coatoms[1].clone(),
                max_theory(6),
            ],
        )
        .unwrap();
        assert!(build_lattice(no_join).is_ok());
        let missing = TheorySet::new(
            6,
            set.theories()
                .iter()
                .filter(|t| **t != max_theory(6))
                .cloned()
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            build_lattice(missing),
            Err(SctError::IncompleteSet { .. })
        ));
    }
}
