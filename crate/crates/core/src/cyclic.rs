//! Arithmetic of the cyclic group `Z_n`, written additively on the residues
//! `0..n`, together with its unit group `(Z/n)^*` acting by multiplication.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SctError};
use crate::partition::Partition;

pub fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Ascending list of the divisors of `n`.
pub fn divisors(n: u32) -> Vec<u32> {
    assert!(n >= 1, "divisors of zero requested");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && divisors(n).len() == 2
}

/// Prime factorization as `(prime, exponent)` pairs, ascending.
pub fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u32) -> u32 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Order of `g` in `Z_n`: `n / gcd(g, n)`.
pub fn element_order(n: u32, g: u32) -> u32 {
    n / gcd(g % n, n)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicGroup {
    n: u32,
    divisors: Vec<u32>,
}

impl CyclicGroup {
    pub fn new(n: u32) -> Self {
        CyclicGroup {
            n,
            divisors: divisors(n),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn divisors(&self) -> &[u32] {
        &self.divisors
    }

    /// Proper nontrivial subgroups, by ascending order.
    pub fn proper_subgroups(&self) -> Vec<Subgroup> {
        self.divisors
            .iter()
            .filter(|&&m| m > 1 && m < self.n)
            .map(|&m| Subgroup::of_order(self.n, m).expect("divisor"))
            .collect()
    }
}

/// The unique subgroup of `Z_n` of a given order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    n: u32,
    order: u32,
    elements: Vec<u32>,
}

impl Subgroup {
    pub fn of_order(n: u32, m: u32) -> Result<Self> {
        if m == 0 || !n.is_multiple_of(m) {
            return Err(SctError::InvalidDivisor { n, m });
        }
        let step = n / m;
        Ok(Subgroup {
            n,
            order: m,
            elements: (0..m).map(|k| k * step).collect(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Index `n / |N|`, the order of the quotient.
    pub fn index(&self) -> u32 {
        self.n / self.order
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn contains(&self, g: u32) -> bool {
        g < self.n && g.is_multiple_of(self.index())
    }

    pub fn mask(&self) -> u64 {
        self.elements.iter().fold(0, |m, &g| m | (1u64 << g))
    }

    /// Isomorphism `N -> Z_{|N|}`, `k * (n/|N|) -> k`.
    pub fn to_small(&self, g: u32) -> u32 {
        debug_assert!(self.contains(g));
        g / self.index()
    }

    /// Inverse of [`Subgroup::to_small`].
    pub fn from_small(&self, k: u32) -> u32 {
        k * self.index()
    }

    pub fn quotient(&self) -> QuotientMap {
        QuotientMap {
            n: self.n,
            modulus: self.index(),
        }
    }
}

/// The projection `Z_n -> Z_n / N`, realized as `g -> g mod (n/|N|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuotientMap {
    n: u32,
    modulus: u32,
}

impl QuotientMap {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn apply(&self, g: u32) -> u32 {
        g % self.modulus
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::of_order(self.n, self.n / self.modulus).expect("modulus divides n")
    }

    /// All `g` in `Z_n` mapping to `x`.
    pub fn preimage(&self, x: u32) -> impl Iterator<Item = u32> + '_ {
        (x % self.modulus..self.n).step_by(self.modulus as usize)
    }
}

/// A subgroup of the unit group `(Z/n)^*`, identified with a subgroup of
/// `Aut(Z_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitSubgroup {
    n: u32,
    elements: Vec<u32>,
}

impl PartialOrd for UnitSubgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for UnitSubgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.elements.len(), &self.elements).cmp(&(
            other.n,
            other.elements.len(),
            &other.elements,
        ))
    }
}

impl UnitSubgroup {
    /// Checks that `elements` is a subgroup of `(Z/n)^*`.
    pub fn new(n: u32, elements: impl IntoIterator<Item = u32>) -> Result<Self> {
        let set: BTreeSet<u32> = elements.into_iter().map(|u| u % n.max(1)).collect();
        let err = |reason: String| SctError::InvalidSubgroup { n, reason };
        if !set.contains(&(1 % n)) {
            return Err(err("identity missing".into()));
        }
        for &u in &set {
            if gcd(u, n) != 1 {
                return Err(err(format!("{u} is not a unit")));
            }
            for &v in &set {
                let w = (u as u64 * v as u64 % n as u64) as u32;
                if !set.contains(&w) {
                    return Err(err(format!("{u}*{v} = {w} not in set")));
                }
            }
        }
        Ok(UnitSubgroup {
            n,
            elements: set.into_iter().collect(),
        })
    }

    /// Subgroup generated by `gens`.
    pub fn generated(n: u32, gens: &[u32]) -> Result<Self> {
        for &g in gens {
            if gcd(g % n, n) != 1 {
                return Err(SctError::InvalidSubgroup {
                    n,
                    reason: format!("{g} is not a unit"),
                });
            }
        }
        let mut set = BTreeSet::from([1 % n]);
        let mut frontier = vec![1 % n];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = mul_mod(x, g % n, n);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Ok(UnitSubgroup {
            n,
            elements: set.into_iter().collect(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, u: u32) -> bool {
        self.elements.binary_search(&u).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &UnitSubgroup) -> bool {
        self.n == other.n && self.elements.iter().all(|&u| other.contains(u))
    }

    /// Orbit of `g` under multiplication, as a bitmask over residues.
    pub fn orbit_mask(&self, g: u32) -> u64 {
        self.elements
            .iter()
            .fold(0u64, |m, &u| m | (1u64 << mul_mod(u, g, self.n)))
    }
}

pub(crate) fn mul_mod(a: u32, b: u32, n: u32) -> u32 {
    (a as u64 * b as u64 % n as u64) as u32
}

/// The full unit group `(Z/n)^*`.
pub fn unit_group(n: u32) -> UnitSubgroup {
    UnitSubgroup {
        n,
        elements: (0..n).filter(|&u| gcd(u, n) == 1).collect(),
    }
}

/// Every subgroup of `(Z/n)^*`, each exactly once, ordered by size and then
/// lexicographically.
pub fn unit_subgroups(n: u32) -> Vec<UnitSubgroup> {
    let units = unit_group(n);
    let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for &u in units.elements() {
        let h = UnitSubgroup::generated(n, &[u]).expect("unit");
        if found.insert(h.elements.clone()) {
            queue.push(h.elements);
        }
    }
    // Close under pairwise generation; every subgroup of a finite abelian
    // group is generated by cyclic subgroups, so this reaches all of them.
    let cyclic: Vec<Vec<u32>> = found.iter().cloned().collect();
    while let Some(h) = queue.pop() {
        for c in &cyclic {
            let mut gens = h.clone();
            gens.extend(c.iter().copied());
            let joined = UnitSubgroup::generated(n, &gens).expect("units");
            if found.insert(joined.elements.clone()) {
                queue.push(joined.elements);
            }
        }
    }
    let mut out: Vec<UnitSubgroup> = found
        .into_iter()
        .map(|elements| UnitSubgroup { n, elements })
        .collect();
    out.sort();
    out
}

/// Partition of `Z_n` into orbits of `h` acting by multiplication.
pub fn orbit_partition(n: u32, h: &UnitSubgroup) -> Result<Partition> {
    if h.n != n {
        return Err(SctError::IncompatibleGroups {
            left: n,
            right: h.n,
        });
    }
    // Revalidate: the fields are private but deserialization bypasses `new`.
    UnitSubgroup::new(n, h.elements.iter().copied())?;
    let mut labels = vec![u32::MAX; n as usize];
    let mut next = 0;
    for g in 0..n {
        if labels[g as usize] != u32::MAX {
            continue;
        }
        for &u in h.elements() {
            labels[mul_mod(u, g, n) as usize] = next;
        }
        next += 1;
    }
    Partition::from_labels(n, &labels)
}
