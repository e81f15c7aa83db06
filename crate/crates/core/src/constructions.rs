//! Named constructions of supercharacter theories of cyclic groups.

use crate::cyclic::{gcd, mul_mod, orbit_partition, unit_group, Subgroup, UnitSubgroup};
use crate::error::{Result, SctError};
use crate::partition::Partition;
use crate::theory::{validate, SCTheory};

fn must_validate(p: &Partition, what: &str) -> Result<SCTheory> {
    validate(p).map_err(|e| match e {
        SctError::NotATheory(r) => {
            SctError::InternalInconsistency(format!("{what} produced a non-theory {p}: {r}"))
        }
        other => other,
    })
}

pub fn min_theory(n: u32) -> SCTheory {
    validate(&Partition::min(n)).expect("singletons form a theory")
}

pub fn max_theory(n: u32) -> SCTheory {
    validate(&Partition::max(n)).expect("{0} and the rest form a theory")
}

/// `(Min, Max)`; for `n = 1` both are `{{0}}`.
pub fn trivial_theories(n: u32) -> (SCTheory, SCTheory) {
    (min_theory(n), max_theory(n))
}

/// The theory whose superclasses are the orbits of `h`.
pub fn from_automorphisms(n: u32, h: &UnitSubgroup) -> Result<SCTheory> {
    must_validate(&orbit_partition(n, h)?, "orbit partition")
}

/// Orbits of `{1, -1}`.
pub fn inversion_theory(n: u32) -> SCTheory {
    let h = UnitSubgroup::new(n, [1 % n, (n - 1) % n]).expect("{1,-1} is a subgroup");
    from_automorphisms(n, &h).expect("orbit theory")
}

/// The theory of the full automorphism group, whose superclasses are the
/// elements of each order.
pub fn full_automorphism_theory(n: u32) -> SCTheory {
    from_automorphisms(n, &unit_group(n)).expect("orbit theory")
}

/// `inner * outer` over `sub`: `inner`'s blocks inside `sub`, and the
/// preimages of `outer`'s nonidentity blocks under `Z_n -> Z_n / sub`.
pub fn star_product(
    n: u32,
    sub: &Subgroup,
    inner: &SCTheory,
    outer: &SCTheory,
) -> Result<SCTheory> {
    if sub.n() != n {
        return Err(SctError::IncompatibleGroups {
            left: n,
            right: sub.n(),
        });
    }
    if inner.n() != sub.order() {
        return Err(SctError::IncompatibleGroups {
            left: sub.order(),
            right: inner.n(),
        });
    }
    if outer.n() != sub.index() {
        return Err(SctError::IncompatibleGroups {
            left: sub.index(),
            right: outer.n(),
        });
    }
    let quotient = sub.quotient();
    let mut blocks: Vec<Vec<u32>> = inner
        .superclasses()
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&k| sub.from_small(k)).collect())
        .collect();
    for b in &outer.superclasses().blocks()[1..] {
        blocks.push(b.iter().flat_map(|&x| quotient.preimage(x)).collect());
    }
    must_validate(&Partition::new(n, blocks)?, "star product")
}

/// The CRT isomorphism `Z_a x Z_b -> Z_ab` for coprime `a`, `b`.
#[derive(Debug, Clone, Copy)]
pub struct Crt {
    a: u32,
    b: u32,
}

impl Crt {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if gcd(a, b) != 1 {
            return Err(SctError::NotCoprime { a, b });
        }
        Ok(Crt { a, b })
    }

    /// The unique `z` in `Z_ab` with `z = x mod a` and `z = y mod b`.
    pub fn combine(&self, x: u32, y: u32) -> u32 {
        let n = self.a * self.b;
        (0..n)
            .step_by(self.a as usize)
            .map(|base| base + x)
            .find(|z| z % self.b == y)
            .expect("coprime moduli")
    }
}

/// Direct product over the CRT decomposition `Z_ab = Z_a x Z_b`.
pub fn direct_product(left: &SCTheory, right: &SCTheory) -> Result<SCTheory> {
    // Ascending modulus order makes the result independent of argument order.
    let (a_t, b_t) = if left.n() <= right.n() {
        (left, right)
    } else {
        (right, left)
    };
    let crt = Crt::new(a_t.n(), b_t.n())?;
    let mut blocks = Vec::new();
    for ka in a_t.superclasses().blocks() {
        for kb in b_t.superclasses().blocks() {
            blocks.push(
                ka.iter()
                    .flat_map(|&x| kb.iter().map(move |&y| crt.combine(x, y)))
                    .collect::<Vec<_>>(),
            );
        }
    }
    must_validate(
        &Partition::new(a_t.n() * b_t.n(), blocks)?,
        "direct product",
    )
}

/// A theory written as `inner * outer` over `sub`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarDecomposition {
    pub sub: Subgroup,
    pub inner: SCTheory,
    pub outer: SCTheory,
}

/// Lower bound `Min_N * Min_{G/N}`: elements of `N` are singletons, the
/// other `N`-cosets are blocks.
fn star_lower_bound(sub: &Subgroup) -> Partition {
    let n = sub.n();
    let m = sub.index();
    let labels: Vec<u32> = (0..n)
        .map(|g| if sub.contains(g) { g } else { n + g % m })
        .collect();
    Partition::from_labels(n, &labels).expect("labels cover Z_n")
}

/// Upper bound `Max_N * Max_{G/N}`: `{0}`, `N - {0}`, `G - N`.
fn star_upper_bound(sub: &Subgroup) -> Partition {
    let labels: Vec<u32> = (0..sub.n())
        .map(|g| match (g, sub.contains(g)) {
            (0, _) => 0,
            (_, true) => 1,
            (_, false) => 2,
        })
        .collect();
    Partition::from_labels(sub.n(), &labels).expect("labels cover Z_n")
}

/// Decomposes `t` as a `*`-product over `sub` when `t` lies between
/// `Min_N * Min_{G/N}` and `Max_N * Max_{G/N}`.
pub fn factor_star(t: &SCTheory, sub: &Subgroup) -> Option<StarDecomposition> {
    let n = t.n();
    if sub.n() != n || sub.order() == 1 || sub.order() == n {
        return None;
    }
    let p = t.superclasses();
    if !star_lower_bound(sub).refines_unchecked(p) || !p.refines_unchecked(&star_upper_bound(sub)) {
        return None;
    }
    let quotient = sub.quotient();
    let inner_blocks: Vec<Vec<u32>> = p
        .blocks()
        .iter()
        .filter(|b| sub.contains(b[0]))
        .map(|b| b.iter().map(|&g| sub.to_small(g)).collect())
        .collect();
    let mut outer_blocks: Vec<Vec<u32>> = vec![vec![0]];
    for b in p.blocks().iter().filter(|b| !sub.contains(b[0])) {
        let mut image: Vec<u32> = b.iter().map(|&g| quotient.apply(g)).collect();
        image.sort_unstable();
        image.dedup();
        outer_blocks.push(image);
    }
    let inner = validate(&Partition::new(sub.order(), inner_blocks).ok()?).ok()?;
    let outer = validate(&Partition::new(sub.index(), outer_blocks).ok()?).ok()?;
    Some(StarDecomposition {
        sub: sub.clone(),
        inner,
        outer,
    })
}

/// True when `t` is a `*`-product over some proper nontrivial subgroup.
pub fn is_nontrivial_star_product(t: &SCTheory) -> bool {
    crate::cyclic::CyclicGroup::new(t.n())
        .proper_subgroups()
        .iter()
        .any(|s| factor_star(t, s).is_some())
}

/// Units fixing every superclass setwise, and whether `t` is exactly the
/// orbit theory of that group.
pub fn automorphism_stabilizer(t: &SCTheory) -> (UnitSubgroup, bool) {
    let n = t.n();
    let p = t.superclasses();
    let fixes = |u: u32| {
        p.blocks().iter().all(|b| {
            let label = p.block_of(mul_mod(u, b[0], n));
            label == p.block_of(b[0]) && b.iter().all(|&g| p.block_of(mul_mod(u, g, n)) == label)
        })
    };
    let elements: Vec<u32> = unit_group(n)
        .elements()
        .iter()
        .copied()
        .filter(|&u| fixes(u))
        .collect();
    let h = UnitSubgroup::new(n, elements).expect("stabilizer is a subgroup");
    let comes_from = orbit_partition(n, &h).expect("valid subgroup") == *p;
    (h, comes_from)
}

pub fn comes_from_automorphisms(t: &SCTheory) -> bool {
    automorphism_stabilizer(t).1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, blocks: &[&[u32]]) -> Partition {
        Partition::new(n, blocks.iter().map(|b| b.to_vec())).unwrap()
    }

    fn sub(n: u32, m: u32) -> Subgroup {
        Subgroup::of_order(n, m).unwrap()
    }

    #[test]
    fn trivial() {
        let (min, max) = trivial_theories(4);
        assert_eq!((min.len(), max.len()), (4, 2));
        let (min, max) = trivial_theories(1);
        assert_eq!(min, max);
        assert_eq!(min.superclasses().blocks(), &[vec![0]]);
        let (min, max) = trivial_theories(8);
        assert_eq!((min.len(), max.len()), (8, 2));
    }

    #[test]
    fn automorphism_theories() {
        assert_eq!(
            from_automorphisms(7, &UnitSubgroup::new(7, [1]).unwrap()).unwrap(),
            min_theory(7)
        );
        assert_eq!(
            full_automorphism_theory(12).superclasses(),
            &p(
                12,
                &[&[0], &[6], &[4, 8], &[3, 9], &[2, 10], &[1, 5, 7, 11]]
            )
        );
        let h = UnitSubgroup::generated(9, &[4]).unwrap();
        assert_eq!(h.elements(), &[1, 4, 7]);
        let t = from_automorphisms(9, &h).unwrap();
        assert_eq!(
            t.superclasses(),
            &p(9, &[&[0], &[3], &[6], &[1, 4, 7], &[2, 5, 8]])
        );
        let star = star_product(9, &sub(9, 3), &min_theory(3), &min_theory(3)).unwrap();
        assert_eq!(t, star);
    }

    #[test]
    fn inversion() {
        assert_eq!(inversion_theory(2), min_theory(2));
        assert_eq!(
            inversion_theory(5).superclasses(),
            &p(5, &[&[0], &[1, 4], &[2, 3]])
        );
        assert_eq!(
            inversion_theory(9).superclasses(),
            &p(9, &[&[0], &[1, 8], &[2, 7], &[3, 6], &[4, 5]])
        );
    }

    #[test]
    fn star_products() {
        let t = star_product(6, &sub(6, 3), &min_theory(3), &min_theory(2)).unwrap();
        assert_eq!(t.superclasses(), &p(6, &[&[0], &[2], &[4], &[1, 3, 5]]));
        let t = star_product(4, &sub(4, 2), &max_theory(2), &max_theory(2)).unwrap();
        assert_eq!(t.superclasses(), &p(4, &[&[0], &[2], &[1, 3]]));
        let t = star_product(9, &sub(9, 3), &inversion_theory(3), &inversion_theory(3)).unwrap();
        assert_eq!(
            t.superclasses(),
            &p(9, &[&[0], &[3, 6], &[1, 2, 4, 5, 7, 8]])
        );
        let r = crate::theory::restrict(
            &star_product(12, &sub(12, 4), &max_theory(4), &max_theory(3)).unwrap(),
            &sub(12, 4),
        )
        .unwrap();
        assert_eq!(r, max_theory(4));
        assert!(star_product(6, &sub(6, 3), &min_theory(2), &min_theory(2)).is_err());
    }

    #[test]
    fn direct_products() {
        assert_eq!(
            direct_product(&min_theory(2), &min_theory(3)).unwrap(),
            min_theory(6)
        );
        let t = direct_product(&max_theory(2), &max_theory(3)).unwrap();
        assert_eq!(t.superclasses(), &p(6, &[&[0], &[3], &[2, 4], &[1, 5]]));
        assert_eq!(direct_product(&max_theory(3), &max_theory(2)).unwrap(), t);
        for (a, b) in [(2u32, 3u32), (3, 5), (4, 5), (3, 7), (5, 6)] {
            let t = direct_product(&max_theory(a), &max_theory(b)).unwrap();
            assert_eq!(t.len(), 4, "{a}x{b}");
        }
        assert_eq!(
            direct_product(&max_theory(2), &max_theory(4)).unwrap_err(),
            SctError::NotCoprime { a: 2, b: 4 }
        );
    }

    #[test]
    fn factoring() {
        let t = validate(&p(6, &[&[0], &[2], &[4], &[1, 3, 5]])).unwrap();
        let d = factor_star(&t, &sub(6, 3)).unwrap();
        assert_eq!(d.inner, min_theory(3));
        assert_eq!(d.outer, min_theory(2));
        for m in [2, 3] {
            assert!(factor_star(&max_theory(6), &sub(6, m)).is_none());
        }
        for m in [3, 5] {
            assert!(factor_star(&inversion_theory(15), &sub(15, m)).is_none());
        }
    }

    #[test]
    fn factor_inverts_star() {
        for n in [4u32, 6, 8, 9, 10, 12, 15] {
            for s in crate::cyclic::CyclicGroup::new(n).proper_subgroups() {
                let inners = crate::enumerate::enumerate_all(s.order(), None).unwrap();
                let outers = crate::enumerate::enumerate_all(s.index(), None).unwrap();
                for i in inners.theories() {
                    for o in outers.theories() {
                        let t = star_product(n, &s, i, o).unwrap();
                        let d = factor_star(&t, &s).unwrap();
                        assert_eq!((&d.inner, &d.outer), (i, o));
                    }
                }
            }
        }
    }

    #[test]
    fn stabilizers() {
        let (h, from) = automorphism_stabilizer(&full_automorphism_theory(12));
        assert_eq!(h.elements(), &[1, 5, 7, 11]);
        assert!(from);
        let (h, from) = automorphism_stabilizer(&max_theory(6));
        assert_eq!(h.elements(), &[1, 5]);
        assert!(!from);
        let (h, from) = automorphism_stabilizer(&min_theory(10));
        assert_eq!(h.elements(), &[1]);
        assert!(from);
    }
}
