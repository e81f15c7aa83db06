//! Instance checks of the lattice-theoretic claims about `Sup(Z_n)`: each
//! check builds the relevant theories, compares them inside the enumerated
//! lattice and records the evidence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::cache::enumerate_cached;
use crate::constructions::{
    comes_from_automorphisms, direct_product, from_automorphisms, full_automorphism_theory,
    inversion_theory, is_nontrivial_star_product, max_theory, min_theory, star_product,
};
use crate::cyclic::{
    divisors, factorize, gcd, is_prime, unit_group, unit_subgroups, Subgroup, UnitSubgroup,
};
use crate::enumerate::Budget;
use crate::error::{Result, SctError};
use crate::lattice::{build_lattice, Lattice, Property};
use crate::partition::Partition;
use crate::theory::{
    normal_subgroups, restrict, structure_constants, validate, Rejection, SCTheory,
};

/// Every claim family the full run can emit.
pub const MANIFEST: &[&str] = &[
    "sup.superclass_products",
    "sup.duality_count",
    "sup.join_closed",
    "aut.lattice_iso",
    "prime.divisor_lattice",
    "prime.modular",
    "star.order",
    "star.interval_iso",
    "star.semimodular_transfer",
    "star.inheritance",
    "coatoms",
    "coatom_meet",
    "inversion.atom",
    "pq.star_atoms",
    "pq.incomparable",
    "pq.star_join_max",
    "pq.aut_vs_star",
    "pq.not_usm",
    "dp.bound",
    "dp.from_auts",
    "dp.restrict",
    "dp.unique_cover",
    "dp.covering",
    "pq.diamond",
    "p2.sublattice",
    "p2.not_semimodular",
    "c4.chain",
    "c8.not_semimodular",
    "pqr.nontheory",
    "pqr.meet",
    "classification",
    "classification.census",
    "thm.usm",
    "thm.lsm",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    /// `claim[params]`, unique within a run.
    pub id: String,
    pub claim: String,
    pub params: String,
    pub pass: bool,
    pub detail: String,
}

impl ClaimResult {
    fn new(claim: &str, params: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        let params = params.into();
        ClaimResult {
            id: format!("{claim}[{params}]"),
            claim: claim.to_string(),
            params,
            pass,
            detail: detail.into(),
        }
    }
}

/// Lattices shared between checks, built once per `n`.
#[derive(Default)]
pub struct Workbench {
    cache_dir: Option<PathBuf>,
    budget: Option<Budget>,
    lattices: Mutex<BTreeMap<u32, Arc<Lattice>>>,
}

impl Workbench {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache_dir(mut self, dir: Option<PathBuf>) -> Self {
        self.cache_dir = dir;
        self
    }

    pub fn with_budget(mut self, budget: Option<Budget>) -> Self {
        self.budget = budget;
        self
    }

    pub fn lattice(&self, n: u32) -> Result<Arc<Lattice>> {
        if let Some(l) = self.lattices.lock().expect("lock").get(&n) {
            return Ok(l.clone());
        }
        let set = enumerate_cached(n, self.budget, self.cache_dir.as_deref())?;
        let built = Arc::new(build_lattice(set)?);
        Ok(self
            .lattices
            .lock()
            .expect("lock")
            .entry(n)
            .or_insert(built)
            .clone())
    }
}

fn locate(l: &Lattice, t: &SCTheory) -> Result<usize> {
    l.id_of(t).ok_or_else(|| SctError::IncompleteSet {
        n: l.n(),
        reason: format!("{t} is missing"),
    })
}

fn subgroup(n: u32, m: u32) -> Subgroup {
    Subgroup::of_order(n, m).expect("divisor")
}

fn proper_divisors(n: u32) -> Vec<u32> {
    divisors(n)
        .into_iter()
        .filter(|&m| m > 1 && m < n)
        .collect()
}

fn star(n: u32, m: u32, inner: &SCTheory, outer: &SCTheory) -> Result<SCTheory> {
    star_product(n, &subgroup(n, m), inner, outer)
}

fn max_max(n: u32, m: u32) -> Result<SCTheory> {
    star(n, m, &max_theory(m), &max_theory(n / m))
}

fn min_min(n: u32, m: u32) -> Result<SCTheory> {
    star(n, m, &min_theory(m), &min_theory(n / m))
}

fn big_omega(n: u32) -> u32 {
    factorize(n).iter().map(|&(_, e)| e).sum()
}

fn is_pq(n: u32) -> Option<(u32, u32)> {
    match factorize(n).as_slice() {
        [(p, 1), (q, 1)] => Some((*p, *q)),
        _ => None,
    }
}

fn is_p_squared(n: u32) -> Option<u32> {
    match factorize(n).as_slice() {
        [(p, 2)] => Some(*p),
        _ => None,
    }
}

/// Transports a theory of `Q = subgroup of order q` (in its own coordinates)
/// to `G / P` through `Q -> G -> G / P`.
fn dot(n: u32, p: u32, s: &SCTheory) -> Result<SCTheory> {
    let q = s.n();
    let q_sub = subgroup(n, q);
    let quotient = subgroup(n, p).quotient();
    let moved = s
        .superclasses()
        .relabel(q, |k| quotient.apply(q_sub.from_small(k)))?;
    validate(&moved)
}

fn first_violation_on(l: &Lattice, members: &[usize], upper: bool) -> Option<(usize, usize)> {
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            let meet = l.meet_by_order(a, b);
            let join = l.join_by_order(a, b);
            let bad = if upper {
                l.covers(meet, a) && l.covers(meet, b) && !(l.covers(a, join) && l.covers(b, join))
            } else {
                l.covers(a, join) && l.covers(b, join) && !(l.covers(meet, a) && l.covers(meet, b))
            };
            if bad {
                return Some((a, b));
            }
        }
    }
    None
}

fn usm(l: &Lattice) -> bool {
    l.check_semimodularity(Property::Upper).holds
}

fn lsm(l: &Lattice) -> bool {
    l.check_semimodularity(Property::Lower).holds
}

fn verdict(failures: &[String], ok: impl Into<String>) -> (bool, String) {
    match failures.first() {
        None => (true, ok.into()),
        Some(f) => (false, format!("{} failure(s); first: {f}", failures.len())),
    }
}

fn n_param(n: u32) -> String {
    format!("n={n}")
}

// ---------------------------------------------------------------------------
// Claims holding for every n.

/// Products of superclass sums are nonnegative integer combinations of
/// superclass sums, recomputed by brute force, and superclasses are closed
/// under negation.
pub fn verify_superclass_products(wb: &Workbench, n: u32) -> Result<ClaimResult> {
    let l = wb.lattice(n)?;
    let mut failures = Vec::new();
    for (id, t) in l.theories().iter().enumerate() {
        let p = t.superclasses();
        let k = p.num_blocks();
        let sc = t.structure_constants();
        for i in 0..k {
            let neg = p.block_of((n - p.block(i)[0]) % n);
            if p.block(i).iter().any(|&g| p.block_of((n - g) % n) != neg) {
                failures.push(format!(
                    "theory {id}: block {i} is not closed under negation"
                ));
            }
            for j in 0..k {
                let mut hits = vec![0u32; n as usize];
                for &a in p.block(i) {
                    for &b in p.block(j) {
                        hits[((a + b) % n) as usize] += 1;
                    }
                }
                for (g, &h) in hits.iter().enumerate() {
                    if h != sc.get(i, j, p.block_of(g as u32)) {
                        failures.push(format!(
                            "theory {id}: blocks {i},{j} hit {g} {h} times, expected {}",
                            sc.get(i, j, p.block_of(g as u32))
                        ));
                    }
                }
            }
        }
    }
    let (pass, detail) = verdict(
        &failures,
        format!("{} theories; every product of superclass sums is a nonnegative integer combination of superclass sums", l.len()),
    );
    Ok(ClaimResult::new(
        "sup.superclass_products",
        n_param(n),
        pass,
        detail,
    ))
}

/// `|X| = |K|` and the table is square.
pub fn verify_duality_count(wb: &Workbench, n: u32) -> Result<ClaimResult> {
    let l = wb.lattice(n)?;
    let failures: Vec<String> = l
        .theories()
        .iter()
        .enumerate()
        .filter(|(_, t)| {
            t.dual().num_blocks() != t.len()
                || t.table().len() != t.len()
                || t.table().iter().any(|r| r.len() != t.len())
        })
        .map(|(id, t)| {
            format!(
                "theory {id}: {} superclasses, {} supercharacters",
                t.len(),
                t.dual().num_blocks()
            )
        })
        .collect();
    let (pass, detail) = verdict(&failures, format!("{} theories with |X| = |K|", l.len()));
    Ok(ClaimResult::new(
        "sup.duality_count",
        n_param(n),
        pass,
        detail,
    ))
}

/// The partition join of any two theories is a theory and is their least
/// upper bound.
pub fn verify_join_closed(wb: &Workbench, n: u32) -> Result<ClaimResult> {
    let l = wb.lattice(n)?;
    let size = l.len();
    let mut failures = Vec::new();
    for x in 0..size {
        for y in x + 1..size {
            match l.join(x, y) {
                Ok(z) if z == l.join_by_order(x, y) => {}
                Ok(z) => failures.push(format!("join({x},{y}) = {z} is not least")),
                Err(e) => failures.push(format!("join({x},{y}): {e}")),
            }
        }
    }
    let pairs = size * size.saturating_sub(1) / 2;
    let (pass, detail) = verdict(
        &failures,
        format!("{pairs} pairs; partition joins are theories"),
    );
    Ok(ClaimResult::new(
        "sup.join_closed",
        n_param(n),
        pass,
        detail,
    ))
}

/// `H -> orbit theory of H` is an order isomorphism from the subgroups of
/// the unit group onto the theories coming from automorphisms.
pub fn verify_aut_lattice_iso(wb: &Workbench, n: u32) -> Result<ClaimResult> {
    let l = wb.lattice(n)?;
    let subs = unit_subgroups(n);
    let ids: Vec<usize> = subs
        .iter()
        .map(|h| locate(&l, &from_automorphisms(n, h)?))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let image: BTreeSet<usize> = ids.iter().copied().collect();
    if image.len() != ids.len() {
        failures.push("two subgroups give the same theory".to_string());
    }
    let from_auts: BTreeSet<usize> = (0..l.len())
        .filter(|&i| comes_from_automorphisms(l.theory(i)))
        .collect();
    if image != from_auts {
        failures.push(format!(
            "image {image:?} differs from automorphism theories {from_auts:?}"
        ));
    }
    for (a, h) in subs.iter().enumerate() {
        for (b, k) in subs.iter().enumerate() {
            if h.is_subgroup_of(k) != l.leq(ids[a], ids[b]) {
                failures.push(format!(
                    "order not preserved between {:?} and {:?}",
                    h.elements(),
                    k.elements()
                ));
            }
            let gens: Vec<u32> = h.elements().iter().chain(k.elements()).copied().collect();
            let joined = UnitSubgroup::generated(n, &gens)?;
            let pos = subs.iter().position(|s| *s == joined).expect("listed");
            if ids[pos] != l.join(ids[a], ids[b])? {
                failures.push(format!(
                    "join not preserved for {:?}, {:?}",
                    h.elements(),
                    k.elements()
                ));
            }
        }
    }
    let (pass, detail) = verdict(
        &failures,
        format!("{} unit subgroups map bijectively and order-isomorphically onto the automorphism theories", subs.len()),
    );
    Ok(ClaimResult::new(
        "aut.lattice_iso",
        n_param(n),
        pass,
        detail,
    ))
}

/// For `n > 2` the inversion theory is an atom.
pub fn verify_inversion_atom(wb: &Workbench, n: u32) -> Result<ClaimResult> {
    if n <= 2 {
        return Err(SctError::Precondition(format!(
            "inversion is trivial for n = {n}"
        )));
    }
    let l = wb.lattice(n)?;
    let inv = locate(&l, &inversion_theory(n))?;
    let pass = l.covers(l.bottom(), inv);
    Ok(ClaimResult::new(
        "inversion.atom",
        n_param(n),
        pass,
        format!("inversion theory is element {inv}; atoms {:?}", l.atoms()),
    ))
}

// ---------------------------------------------------------------------------
// `*`-products.

struct StarGrid {
    m: u32,
    /// `ids[a][b]` = position of `A[a] * B[b]` in `Sup(Z_n)`.
    ids: Vec<Vec<usize>>,
    inner: Arc<Lattice>,
    outer: Arc<Lattice>,
}

fn star_grid(wb: &Workbench, n: u32, m: u32) -> Result<StarGrid> {
    let l = wb.lattice(n)?;
    let inner = wb.lattice(m)?;
    let outer = wb.lattice(n / m)?;
    let sub = subgroup(n, m);
    let ids = inner
        .theories()
        .iter()
        .map(|a| {
            outer
                .theories()
                .iter()
                .map(|b| locate(&l, &star_product(n, &sub, a, b)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(StarGrid {
        m,
        ids,
        inner,
        outer,
    })
}

/// `a1*b1 <= a2*b2` iff `a1 <= a2` and `b1 <= b2`, with equality iff both
/// coordinates are equal.
pub fn verify_star_order(wb: &Workbench, n: u32) -> Result<ClaimResult> {
    let l = wb.lattice(n)?;
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for m in proper_divisors(n) {
        let g = star_grid(wb, n, m)?;
        let cells: Vec<(usize, usize)> = (0..g.inner.len())
            .flat_map(|a| (0..g.outer.len()).map(move |b| (a, b)))
            .collect();
        for &(a1, b1) in &cells {
            for &(a2, b2) in &cells {
                pairs += 1;
                let (x, y) = (g.ids[a1][b1], g.ids[a2][b2]);
                let product = g.inner.leq(a1, a2) && g.outer.leq(b1, b2);
                if l.leq(x, y) != product || (x == y) != (a1 == a2 && b1 == b2) {
                    failures.push(format!("|N|={m}: ({a1},{b1}) vs ({a2},{b2})"));
                }
            }
        }
    }
    let (pass, detail) = verdict(
        &failures,
        format!(
            "{pairs} ordered pairs over {} subgroups",
            proper_divisors(n).len()
        ),
    );
    Ok(ClaimResult::new("star.order", n_param(n), pass, detail))
}

/// The interval between `Min_N*Min_{G/N}` and `Max_N*Max_{G/N}` is exactly
/// the set of `*`-products over `N`, and its covers are those of the direct
/// union: one coordinate covers, the other is equal.
pub fn verify_star_interval(wb: &Workbench, n: u32) -> Result<ClaimResult> {
    let l = wb.lattice(n)?;
    let mut failures = Vec::new();
    for m in proper_divisors(n) {
        let g = star_grid(wb, n, m)?;
        let lo = locate(&l, &min_min(n, m)?)?;
        let hi = locate(&l, &max_max(n, m)?)?;
        let interval = l.interval(lo, hi)?;
        let members: BTreeSet<usize> = interval.members.iter().copied().collect();
        let stars: BTreeSet<usize> = g.ids.iter().flatten().copied().collect();
        if members != stars {
            failures.push(format!(
                "|N|={m}: interval has {} members, {} star products",
                members.len(),
                stars.len()
            ));
            continue;
        }
        let coord: BTreeMap<usize, (usize, usize)> = g
            .ids
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().enumerate().map(move |(b, &id)| (id, (a, b))))
            .collect();
        for &x in &interval.members {
            for &y in &interval.members {
                let ((a1, b1), (a2, b2)) = (coord[&x], coord[&y]);
                let product_cover =
                    (a1 == a2 && g.outer.covers(b1, b2)) || (b1 == b2 && g.inner.covers(a1, a2));
                if l.covers(x, y) != product_cover {
                    failures.push(format!("|N|={m}: cover mismatch between {x} and {y}"));
                }
            }
        }
    }
    let (pass, detail) = verdict(
        &failures,
        format!(
            "{} subgroups; each interval is the direct union Sup(N) x Sup(G/N)",
            proper_divisors(n).len()
        ),
    );
    Ok(ClaimResult::new(
        "star.interval_iso",
        n_param(n),
        pass,
        detail,
    ))
}

/// The `*`-product interval over `N` is upper (lower) semimodular iff both
/// `Sup(N)` and `Sup(G/N)` are.
pub fn verify_star_semimodular_transfer(wb: &Workbench, n: u32) -> Result<ClaimResult> {
    let l = wb.lattice(n)?;
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for m in proper_divisors(n) {
        let g = star_grid(wb, n, m)?;
        let interval = l.interval(locate(&l, &min_min(n, m)?)?, locate(&l, &max_max(n, m)?)?)?;
        for upper in [true, false] {
            let here = first_violation_on(&l, &interval.members, upper).is_none();
            let parts = if upper {
                usm(&g.inner) && usm(&g.outer)
            } else {
                lsm(&g.inner) && lsm(&g.outer)
            };
            let which = if upper { "upper" } else { "lower" };
            if here != parts {
                failures.push(format!(
                    "|N|={}: interval {which}={here}, factors {which}={parts}",
                    g.m
                ));
            }
            notes.push(format!(
                "{m}:{}{}",
                &which[..1],
                if here { "+" } else { "-" }
            ));
        }
    }
    let (pass, detail) = verdict(
        &failures,
        format!("per |N| (u/l, +holds/-fails): {}", notes.join(" ")),
    );
    Ok(ClaimResult::new(
        "star.semimodular_transfer",
        n_param(n),
        pass,
        detail,
    ))
}

/// `Sup(N)` embeds as the convex sublattice `{a * Max_{G/N}}`, so upper or
/// lower semimodularity of `Sup(G)` passes to every `Sup(N)` and `Sup(G/N)`.
pub fn verify_inheritance(wb: &Workbench, n: u32) -> Result<ClaimResult> {
    let l = wb.lattice(n)?;
    let (g_usm, g_lsm) = (usm(&l), lsm(&l));
    let mut failures = Vec::new();
    for m in proper_divisors(n) {
        let g = star_grid(wb, n, m)?;
        let top_b = g.outer.top();
        let column: Vec<usize> = g.ids.iter().map(|row| row[top_b]).collect();
        let lo = column[g.inner.bottom()];
        let hi = column[g.inner.top()];
        let interval = l.interval(lo, hi)?;
        let mut sorted = column.clone();
        sorted.sort_unstable();
        if interval.members != sorted {
            failures.push(format!(
                "|N|={m}: a*Max(G/N) is not the interval [{lo},{hi}]"
            ));
        }
        for (a1, &x) in column.iter().enumerate() {
            for (a2, &y) in column.iter().enumerate() {
                if l.leq(x, y) != g.inner.leq(a1, a2) {
                    failures.push(format!("|N|={m}: order differs at ({a1},{a2})"));
                }
            }
        }
        let sub_lattices = [(m, &g.inner), (n / m, &g.outer)];
        for (order, sub) in sub_lattices {
            if g_usm && !usm(sub) {
                failures.push(format!(
                    "Sup(Z_{n}) upper semimodular but Sup(Z_{order}) is not"
                ));
            }
            if g_lsm && !lsm(sub) {
                failures.push(format!(
                    "Sup(Z_{n}) lower semimodular but Sup(Z_{order}) is not"
                ));
            }
        }
    }
    let (pass, detail) = verdict(
        &failures,
        format!(
            "Sup(N) embeds convexly for {} subgroups; upper={g_usm}, lower={g_lsm} consistent with every factor",
            proper_divisors(n).len()
        ),
    );
    Ok(ClaimResult::new(
        "star.inheritance",
        n_param(n),
        pass,
        detail,
    ))
}

// ---------------------------------------------------------------------------
// Coatoms.

fn require_composite(n: u32) -> Result<()> {
    if n < 4 || is_prime(n) {
        return Err(SctError::Precondition(format!("{n} is not composite")));
    }
    Ok(())
}

/// The coatoms are exactly `Max_N * Max_{G/N}` for `1 < N < G`.
pub fn verify_coatoms(wb: &Workbench, n: u32) -> Result<ClaimResult> {
    require_composite(n)?;
    let l = wb.lattice(n)?;
    let mut expected: Vec<usize> = proper_divisors(n)
        .into_iter()
        .map(|m| locate(&l, &max_max(n, m)?))
        .collect::<Result<_>>()?;
    expected.sort_unstable();
    expected.dedup();
    let coatoms = l.coatoms();
    let pass = coatoms == expected;
    Ok(ClaimResult::new(
        "coatoms",
        n_param(n),
        pass,
        format!(
            "{} coatoms {coatoms:?}; Max_N*Max_G/N are {expected:?}",
            coatoms.len()
        ),
    ))
}

/// The meet of all coatoms is the theory of the full automorphism group,
/// whose superclasses collect the elements of each order.
pub fn verify_coatom_meet(wb: &Workbench, n: u32) -> Result<ClaimResult> {
    require_composite(n)?;
    let l = wb.lattice(n)?;
    let meet = l
        .coatoms()
        .into_iter()
        .reduce(|a, b| l.meet(a, b))
        .expect("composite n has coatoms");
    let aut = locate(&l, &full_automorphism_theory(n))?;
    Ok(ClaimResult::new(
        "coatom_meet",
        n_param(n),
        meet == aut,
        format!(
            "meet is element {meet} with {} blocks; A(G) is element {aut}",
            l.theory(meet).len()
        ),
    ))
}

// ---------------------------------------------------------------------------
// Orders pq.

fn require_distinct_primes(p: u32, q: u32) -> Result<()> {
    if !is_prime(p) || !is_prime(q) || p == q {
        return Err(SctError::Precondition(format!(
            "{p} and {q} are not distinct primes"
        )));
    }
    Ok(())
}

fn star_ids(l: &Lattice, n: u32, m: u32, inner: &Lattice, outer: &Lattice) -> Result<Vec<usize>> {
    let mut ids = Vec::new();
    for a in inner.theories() {
        for b in outer.theories() {
            ids.push(locate(l, &star(n, m, a, b)?)?);
        }
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

/// Atom, incomparability, join and direct-product claims for `n = pq`.
pub fn verify_pq_structure(wb: &Workbench, p: u32, q: u32) -> Result<Vec<ClaimResult>> {
    require_distinct_primes(p, q)?;
    let n = p * q;
    let l = wb.lattice(n)?;
    let lp = wb.lattice(p)?;
    let lq = wb.lattice(q)?;
    let params = format!("n={n},p={},q={}", p.min(q), p.max(q));
    let mut out = Vec::new();

    let m_p = locate(&l, &min_min(n, p)?)?;
    let m_q = locate(&l, &min_min(n, q)?)?;
    let aut = locate(&l, &full_automorphism_theory(n))?;
    let atoms = l.atoms();
    out.push(ClaimResult::new(
        "pq.star_atoms",
        &params,
        atoms.contains(&m_p) && atoms.contains(&m_q),
        format!("Min_P*Min_G/P = {m_p}, Min_Q*Min_G/Q = {m_q}; atoms {atoms:?}"),
    ));
    let trio = [m_p, m_q, aut];
    let comparable: Vec<String> = trio
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| trio[i + 1..].iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| l.comparable(x, y))
        .map(|(x, y)| format!("{x} ~ {y}"))
        .collect();
    let (pass, detail) = verdict(
        &comparable,
        format!("{m_p}, {m_q}, A(G)={aut} pairwise incomparable"),
    );
    out.push(ClaimResult::new("pq.incomparable", &params, pass, detail));

    let stars_p = star_ids(&l, n, p, &lp, &lq)?;
    let stars_q = star_ids(&l, n, q, &lq, &lp)?;
    let mut failures = Vec::new();
    for &x in &stars_p {
        for &u in &stars_q {
            if l.comparable(x, u) {
                failures.push(format!("{x} and {u} comparable"));
            }
            let j = l.join(x, u)?;
            if j != l.top() {
                failures.push(format!("join({x},{u}) = {j} is not Max"));
            }
        }
    }
    let (pass, detail) = verdict(
        &failures,
        format!(
            "{} x {} products over P and Q: incomparable, joins are Max",
            stars_p.len(),
            stars_q.len()
        ),
    );
    out.push(ClaimResult::new("pq.star_join_max", &params, pass, detail));

    let auts: Vec<usize> = (0..l.len())
        .filter(|&i| comes_from_automorphisms(l.theory(i)))
        .collect();
    let mut failures = Vec::new();
    for &x in stars_p.iter().chain(&stars_q) {
        if auts.contains(&x) {
            failures.push(format!("*-product {x} comes from automorphisms"));
        }
        for &z in &auts {
            if l.leq(x, z) {
                failures.push(format!("automorphism theory {z} lies above *-product {x}"));
            }
        }
    }
    let (pass, detail) = verdict(
        &failures,
        format!(
            "{} automorphism theories, {} *-products: none shared, none above",
            auts.len(),
            stars_p.len() + stars_q.len()
        ),
    );
    out.push(ClaimResult::new("pq.aut_vs_star", &params, pass, detail));

    let join = l.join(m_p, m_q)?;
    let pass = l.meet(m_p, m_q) == l.bottom()
        && l.covers(l.bottom(), m_p)
        && l.covers(l.bottom(), m_q)
        && !(l.covers(m_p, join) && l.covers(m_q, join));
    out.push(ClaimResult::new(
        "pq.not_usm",
        &params,
        pass,
        format!("atoms {m_p}, {m_q} have join {join}, which does not cover both"),
    ));

    out.push(verify_dp_bound(wb, p, q)?);
    out.push(verify_dp_from_auts(wb, p, q)?);
    for (a, b) in [(p, q), (q, p)] {
        out.push(verify_dp_restrict(wb, a, b)?);
        out.push(verify_dp_unique_cover(wb, a, b)?);
    }
    out.push(verify_dp_covering(wb, p, q)?);
    Ok(out)
}

fn pq_params(p: u32, q: u32) -> String {
    format!("n={},p={},q={}", p * q, p.min(q), p.max(q))
}

/// Every automorphism theory `z` satisfies `z <= z_P x z_Q`.
fn verify_dp_bound(wb: &Workbench, p: u32, q: u32) -> Result<ClaimResult> {
    let n = p * q;
    let l = wb.lattice(n)?;
    let mut failures = Vec::new();
    let mut count = 0;
    for (z, t) in l.theories().iter().enumerate() {
        if !comes_from_automorphisms(t) {
            continue;
        }
        count += 1;
        let zp = restrict(t, &subgroup(n, p))?;
        let zq = restrict(t, &subgroup(n, q))?;
        let bound = locate(&l, &direct_product(&zp, &zq)?)?;
        if !l.leq(z, bound) {
            failures.push(format!("{z} is not below z_P x z_Q = {bound}"));
        }
    }
    let (pass, detail) = verdict(
        &failures,
        format!("{count} automorphism theories below z_P x z_Q"),
    );
    Ok(ClaimResult::new("dp.bound", pq_params(p, q), pass, detail))
}

/// `b x c` for `b`, `c` from `R`, `S` comes from the image of `R x S`.
fn verify_dp_from_auts(wb: &Workbench, p: u32, q: u32) -> Result<ClaimResult> {
    let n = p * q;
    wb.lattice(n)?;
    let mut failures = Vec::new();
    let (rs, ss) = (unit_subgroups(p), unit_subgroups(q));
    for r in &rs {
        for s in &ss {
            let image: Vec<u32> = unit_group(n)
                .elements()
                .iter()
                .copied()
                .filter(|u| r.contains(u % p) && s.contains(u % q))
                .collect();
            let h = UnitSubgroup::new(n, image)?;
            let dp = direct_product(&from_automorphisms(p, r)?, &from_automorphisms(q, s)?)?;
            if h.len() != r.len() * s.len() || dp != from_automorphisms(n, &h)? {
                failures.push(format!("R={:?}, S={:?}", r.elements(), s.elements()));
            }
        }
    }
    let (pass, detail) = verdict(&failures, format!("{} pairs (R, S)", rs.len() * ss.len()));
    Ok(ClaimResult::new(
        "dp.from_auts",
        pq_params(p, q),
        pass,
        detail,
    ))
}

/// `d <= b * c'` for an automorphism theory `d` forces `d_P <= b` and
/// `d_Q <= c`; `P` has order `p`.
fn verify_dp_restrict(wb: &Workbench, p: u32, q: u32) -> Result<ClaimResult> {
    let n = p * q;
    let l = wb.lattice(n)?;
    let (lp, lq) = (wb.lattice(p)?, wb.lattice(q)?);
    let mut failures = Vec::new();
    let mut checked = 0;
    for (bi, b) in lp.theories().iter().enumerate() {
        for (ci, c) in lq.theories().iter().enumerate() {
            let x = locate(&l, &star(n, p, b, &dot(n, p, c)?)?)?;
            for (d, t) in l.theories().iter().enumerate() {
                if !comes_from_automorphisms(t) || !l.leq(d, x) {
                    continue;
                }
                checked += 1;
                let dp = locate(&lp, &restrict(t, &subgroup(n, p))?)?;
                let dq = locate(&lq, &restrict(t, &subgroup(n, q))?)?;
                if !lp.leq(dp, bi) || !lq.leq(dq, ci) {
                    failures.push(format!("d={d} below b*c' with b={bi}, c={ci}"));
                }
            }
        }
    }
    let (pass, detail) = verdict(&failures, format!("{checked} triples (d, b, c)"));
    Ok(ClaimResult::new(
        "dp.restrict",
        format!("n={n},P={p}"),
        pass,
        detail,
    ))
}

/// `b x c` is covered by `b * c'` and is the only automorphism theory
/// covered by it.
fn verify_dp_unique_cover(wb: &Workbench, p: u32, q: u32) -> Result<ClaimResult> {
    let n = p * q;
    let l = wb.lattice(n)?;
    let (lp, lq) = (wb.lattice(p)?, wb.lattice(q)?);
    let mut failures = Vec::new();
    for b in lp.theories() {
        for c in lq.theories() {
            let x = locate(&l, &star(n, p, b, &dot(n, p, c)?)?)?;
            let dp = locate(&l, &direct_product(b, c)?)?;
            let covered: Vec<usize> = l
                .lower_covers(x)
                .iter()
                .copied()
                .filter(|&i| comes_from_automorphisms(l.theory(i)))
                .collect();
            if covered != [dp] {
                failures.push(format!(
                    "{x} covers automorphism theories {covered:?}, expected [{dp}]"
                ));
            }
        }
    }
    let (pass, detail) = verdict(&failures, format!("{} pairs (b, c)", lp.len() * lq.len()));
    Ok(ClaimResult::new(
        "dp.unique_cover",
        format!("n={n},P={p}"),
        pass,
        detail,
    ))
}

/// Covers in either factor give covers of direct products.
fn verify_dp_covering(wb: &Workbench, p: u32, q: u32) -> Result<ClaimResult> {
    let n = p * q;
    let l = wb.lattice(n)?;
    let (lp, lq) = (wb.lattice(p)?, wb.lattice(q)?);
    let mut failures = Vec::new();
    let mut checked = 0;
    for (b1, b2) in lp.cover_pairs() {
        for c in lq.theories() {
            checked += 1;
            let x = locate(&l, &direct_product(lp.theory(b1), c)?)?;
            let y = locate(&l, &direct_product(lp.theory(b2), c)?)?;
            if !l.covers(x, y) {
                failures.push(format!("{x} not covered by {y}"));
            }
        }
    }
    for (c1, c2) in lq.cover_pairs() {
        for b in lp.theories() {
            checked += 1;
            let x = locate(&l, &direct_product(b, lq.theory(c1))?)?;
            let y = locate(&l, &direct_product(b, lq.theory(c2))?)?;
            if !l.covers(x, y) {
                failures.push(format!("{x} not covered by {y}"));
            }
        }
    }
    let (pass, detail) = verdict(&failures, format!("{checked} covers lifted"));
    Ok(ClaimResult::new(
        "dp.covering",
        pq_params(p, q),
        pass,
        detail,
    ))
}

/// Checks the diamond `w = b1 x c1`, `x = b2 x c2`, `y = b1 * c1'`,
/// `z = b2 * c2'`; returns a failure description.
fn diamond(
    l: &Lattice,
    p: u32,
    q: u32,
    (b1, c1): (&SCTheory, &SCTheory),
    (b2, c2): (&SCTheory, &SCTheory),
) -> Result<Option<String>> {
    let n = p * q;
    let w = locate(l, &direct_product(b1, c1)?)?;
    let x = locate(l, &direct_product(b2, c2)?)?;
    let y = locate(l, &star(n, p, b1, &dot(n, p, c1)?)?)?;
    let z = locate(l, &star(n, p, b2, &dot(n, p, c2)?)?)?;
    let checks = [
        ("w<x", l.covers(w, x)),
        ("w<y", l.covers(w, y)),
        ("x<z", l.covers(x, z)),
        ("y<z", l.covers(y, z)),
        ("meet", l.meet(x, y) == w),
        ("join", l.join(x, y)? == z),
    ];
    Ok(checks
        .iter()
        .find(|(_, ok)| !ok)
        .map(|(what, _)| format!("w={w} x={x} y={y} z={z}: {what} fails")))
}

/// The diamond for one cover `r1 ⋖ r2` in `Sup(Z_p)` and one `s` in
/// `Sup(Z_q)`; `P` has order `p`.
pub fn verify_pq_diamond(
    wb: &Workbench,
    p: u32,
    q: u32,
    r1: &SCTheory,
    r2: &SCTheory,
    s: &SCTheory,
) -> Result<ClaimResult> {
    require_distinct_primes(p, q)?;
    if r1.n() != p || r2.n() != p || s.n() != q {
        return Err(SctError::Precondition(format!(
            "theories must live on Z_{p}, Z_{p}, Z_{q}"
        )));
    }
    let lp = wb.lattice(p)?;
    if !lp.covers(locate(&lp, r1)?, locate(&lp, r2)?) {
        return Err(SctError::Precondition(format!(
            "{r1} is not covered by {r2} in Sup(Z_{p})"
        )));
    }
    let l = wb.lattice(p * q)?;
    let failure = diamond(&l, p, q, (r1, s), (r2, s))?;
    Ok(ClaimResult::new(
        "pq.diamond",
        format!("n={},P={p},r1={r1},r2={r2},s={s}", p * q),
        failure.is_none(),
        failure.unwrap_or_else(|| "w⋖x, w⋖y, x⋖z, y⋖z, x∧y=w, x∨y=z".into()),
    ))
}

/// Every diamond with `P` of order `p`: covers in either coordinate against
/// every theory of the other.
pub fn verify_diamonds(wb: &Workbench, p: u32, q: u32) -> Result<ClaimResult> {
    require_distinct_primes(p, q)?;
    let l = wb.lattice(p * q)?;
    let (lp, lq) = (wb.lattice(p)?, wb.lattice(q)?);
    let mut failures = Vec::new();
    let mut count = 0;
    for (r1, r2) in lp.cover_pairs() {
        for s in lq.theories() {
            count += 1;
            if let Some(f) = diamond(&l, p, q, (lp.theory(r1), s), (lp.theory(r2), s))? {
                failures.push(f);
            }
        }
    }
    for (s1, s2) in lq.cover_pairs() {
        for r in lp.theories() {
            count += 1;
            if let Some(f) = diamond(&l, p, q, (r, lq.theory(s1)), (r, lq.theory(s2)))? {
                failures.push(f);
            }
        }
    }
    let (pass, detail) = verdict(&failures, format!("{count} diamonds"));
    Ok(ClaimResult::new(
        "pq.diamond",
        format!("n={},P={p}", p * q),
        pass,
        detail,
    ))
}

// ---------------------------------------------------------------------------
// Orders p^2, 4 and 8.

struct P2Sublattice {
    ids: [usize; 5],
}

const P2_NAMES: [&str; 5] = ["Min", "xinv", "Min*Min", "Min*xinv", "xinv*xinv"];
const P2_COVERS: [(usize, usize); 5] = [(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)];

fn p2_sublattice(wb: &Workbench, p: u32) -> Result<(Arc<Lattice>, P2Sublattice)> {
    if p == 2 || !is_prime(p) {
        return Err(SctError::Precondition(format!("{p} is not an odd prime")));
    }
    let n = p * p;
    let l = wb.lattice(n)?;
    let (min_p, inv_p) = (min_theory(p), inversion_theory(p));
    let ids = [
        locate(&l, &min_theory(n))?,
        locate(&l, &inversion_theory(n))?,
        locate(&l, &star(n, p, &min_p, &min_p)?)?,
        locate(&l, &star(n, p, &min_p, &inv_p)?)?,
        locate(&l, &star(n, p, &inv_p, &inv_p)?)?,
    ];
    Ok((l, P2Sublattice { ids }))
}

/// The five-element sublattice of `Sup(Z_{p^2})`: its Hasse edges in the
/// full lattice, the atoms, and `xinv ∨ Min*Min = xinv*xinv`.
pub fn verify_p2_sublattice(wb: &Workbench, p: u32) -> Result<ClaimResult> {
    let (l, fig) = p2_sublattice(wb, p)?;
    let ids = fig.ids;
    let mut failures = Vec::new();
    let distinct: BTreeSet<usize> = ids.iter().copied().collect();
    if distinct.len() != 5 {
        failures.push(format!("named theories coincide: {ids:?}"));
    }
    for i in 0..5 {
        for j in 0..5 {
            let drawn = P2_COVERS.contains(&(i, j));
            if l.covers(ids[i], ids[j]) != drawn {
                failures.push(format!(
                    "{} ⋖ {} is {}",
                    P2_NAMES[i],
                    P2_NAMES[j],
                    if drawn { "missing" } else { "unexpected" }
                ));
            }
            if !distinct.contains(&l.meet(ids[i], ids[j]))
                || !distinct.contains(&l.join(ids[i], ids[j])?)
            {
                failures.push(format!(
                    "{} and {} leave the sublattice",
                    P2_NAMES[i], P2_NAMES[j]
                ));
            }
        }
    }
    if l.join(ids[1], ids[2])? != ids[4] {
        failures.push("xinv ∨ Min*Min is not xinv*xinv".into());
    }
    let atoms = l.atoms();
    if !atoms.contains(&ids[1]) || !atoms.contains(&ids[2]) {
        failures.push(format!(
            "xinv={} or Min*Min={} is not an atom",
            ids[1], ids[2]
        ));
    }
    let (pass, detail) = verdict(
        &failures,
        format!(
            "elements {ids:?} ({}); 5 Hasse edges exact, xinv ∨ Min*Min = xinv*xinv, 2 atoms",
            P2_NAMES.join(", ")
        ),
    );
    Ok(ClaimResult::new(
        "p2.sublattice",
        format!("n={},p={p}", p * p),
        pass,
        detail,
    ))
}

/// The same five theories witness both semimodularity failures.
pub fn verify_p2_not_semimodular(wb: &Workbench, p: u32) -> Result<ClaimResult> {
    let (l, fig) = p2_sublattice(wb, p)?;
    let [m, inv, mm, mi, ii] = fig.ids;
    let usm_witness = l.meet(inv, mm) == m
        && l.covers(m, inv)
        && l.covers(m, mm)
        && l.join(inv, mm)? == ii
        && !l.covers(mm, ii);
    let lsm_witness = l.join(inv, mi)? == ii
        && l.covers(inv, ii)
        && l.covers(mi, ii)
        && l.meet(inv, mi) == m
        && !l.covers(m, mi);
    let pass = usm_witness && lsm_witness && !usm(&l) && !lsm(&l);
    Ok(ClaimResult::new(
        "p2.not_semimodular",
        format!("n={},p={p}", p * p),
        pass,
        format!("upper witness ({inv},{mm}) holds={usm_witness}; lower witness ({inv},{mi}) holds={lsm_witness}"),
    ))
}

pub fn verify_c4_chain(wb: &Workbench) -> Result<ClaimResult> {
    let l = wb.lattice(4)?;
    let chain = l.len() == 3 && (0..3).all(|i| (0..3).all(|j| l.comparable(i, j)));
    Ok(ClaimResult::new(
        "c4.chain",
        "n=4",
        chain && usm(&l) && lsm(&l),
        format!("{} elements, chain={chain}", l.len()),
    ))
}

pub fn verify_c8(wb: &Workbench) -> Result<ClaimResult> {
    let l = wb.lattice(8)?;
    let upper = l.check_semimodularity(Property::Upper);
    let lower = l.check_semimodularity(Property::Lower);
    Ok(ClaimResult::new(
        "c8.not_semimodular",
        "n=8",
        !upper.holds && !lower.holds,
        format!(
            "{} elements; upper witness {:?}; lower witness {:?}",
            l.len(),
            upper.witness,
            lower.witness
        ),
    ))
}

// ---------------------------------------------------------------------------
// Primes.

/// `Sup(Z_p)` is the divisor lattice of `p - 1` via `d -> orbits of the
/// subgroup of order d`.
pub fn verify_prime_divisor_lattice(wb: &Workbench, p: u32) -> Result<ClaimResult> {
    if !is_prime(p) {
        return Err(SctError::Precondition(format!("{p} is not prime")));
    }
    let l = wb.lattice(p)?;
    let ds = divisors(p - 1);
    let subs = unit_subgroups(p);
    let ids: Vec<usize> = ds
        .iter()
        .map(|&d| {
            let h = subs
                .iter()
                .find(|h| h.len() == d as usize)
                .expect("cyclic unit group");
            locate(&l, &from_automorphisms(p, h)?)
        })
        .collect::<Result<_>>()?;
    let bijective = ids.iter().collect::<BTreeSet<_>>().len() == l.len() && ds.len() == l.len();
    let order = ds.iter().enumerate().all(|(i, &d)| {
        ds.iter()
            .enumerate()
            .all(|(j, &e)| (e % d == 0) == l.leq(ids[i], ids[j]))
    });
    Ok(ClaimResult::new(
        "prime.divisor_lattice",
        format!("p={p}"),
        bijective && order,
        format!(
            "{} elements, d({}) = {}; bijective={bijective}, order-isomorphic={order}",
            l.len(),
            p - 1,
            ds.len()
        ),
    ))
}

pub fn verify_prime_modular(wb: &Workbench, p: u32) -> Result<ClaimResult> {
    if !is_prime(p) {
        return Err(SctError::Precondition(format!("{p} is not prime")));
    }
    let report = wb.lattice(p)?.check_semimodularity(Property::Modular);
    Ok(ClaimResult::new(
        "prime.modular",
        format!("p={p}"),
        report.holds,
        format!("modular={}, witness {:?}", report.holds, report.witness),
    ))
}

// ---------------------------------------------------------------------------
// Orders pqr.

fn coatom_over(n: u32, m: u32) -> Result<SCTheory> {
    max_max(n, m)
}

/// Pairs `p < q` of distinct primes with `n / pq` prime.
pub fn pqr_pairs(n: u32) -> Vec<(u32, u32)> {
    let primes: Vec<u32> = factorize(n).iter().map(|&(p, _)| p).collect();
    let mut out = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            if n.is_multiple_of(p * q) && is_prime(n / (p * q)) {
                out.push((p, q));
            }
        }
    }
    out
}

/// The partition `{0}`, order `p`, order `q`, everything else.
pub fn order_type_partition(n: u32, p: u32, q: u32) -> Result<Partition> {
    let labels: Vec<u32> = (0..n)
        .map(|g| match crate::cyclic::element_order(n, g) {
            1 => 0,
            o if o == p => 1,
            o if o == q => 2,
            _ => 3,
        })
        .collect();
    Partition::from_labels(n, &labels)
}

/// The partition meet of the coatoms over `P` and `Q` is the order-type
/// partition, which is not a theory; the rejection names the order-`p` and
/// order-`q` blocks.
pub fn verify_pqr_nontheory(n: u32, p: u32, q: u32) -> Result<ClaimResult> {
    if !pqr_pairs(n).contains(&(p, q)) {
        return Err(SctError::Precondition(format!(
            "{n} is not p*q*r for p={p}, q={q}"
        )));
    }
    let part = order_type_partition(n, p, q)?;
    let cp = coatom_over(n, p)?;
    let cq = coatom_over(n, q)?;
    let meet = cp.superclasses().intersect(cq.superclasses())?;
    let block_p = part.block_of(n / p);
    let block_q = part.block_of(n / q);
    let (pass, detail) = match structure_constants(&part) {
        Ok(_) => (false, format!("{part} was accepted")),
        Err(r) => {
            let names_pair = matches!(r, Rejection::NonConstant { left, right, .. }
                if (left, right) == (block_p, block_q) || (left, right) == (block_q, block_p));
            (
                names_pair && meet == part,
                format!(
                    "{part} rejected: {r}; partition meet of coatoms equal={}",
                    meet == part
                ),
            )
        }
    };
    Ok(ClaimResult::new(
        "pqr.nontheory",
        format!("n={n},p={p},q={q}"),
        pass,
        detail,
    ))
}

/// The lattice meet of those coatoms is `A(N) * Max(G/N)` with `N = PQ`,
/// which has five blocks and is covered by neither coatom.
pub fn verify_pqr_meet(wb: &Workbench, n: u32, p: u32, q: u32) -> Result<ClaimResult> {
    if !pqr_pairs(n).contains(&(p, q)) {
        return Err(SctError::Precondition(format!(
            "{n} is not p*q*r for p={p}, q={q}"
        )));
    }
    let l = wb.lattice(n)?;
    let cp = locate(&l, &coatom_over(n, p)?)?;
    let cq = locate(&l, &coatom_over(n, q)?)?;
    let meet = l.meet(cp, cq);
    let target = star(
        n,
        p * q,
        &full_automorphism_theory(p * q),
        &max_theory(n / (p * q)),
    )?;
    let target_id = locate(&l, &target)?;
    let blocks = l.theory(meet).len();
    let pass = meet == target_id && blocks == 5 && !l.covers(meet, cp) && !l.covers(meet, cq);
    Ok(ClaimResult::new(
        "pqr.meet",
        format!("n={n},p={p},q={q}"),
        pass,
        format!(
            "meet of coatoms {cp}, {cq} is {meet} = {}; A(N)*Max(G/N) is {target_id}",
            l.theory(meet)
        ),
    ))
}

// ---------------------------------------------------------------------------
// Classification.

fn is_direct_product(t: &SCTheory) -> bool {
    let n = t.n();
    let normal = normal_subgroups(t);
    proper_divisors(n).into_iter().any(|a| {
        let b = n / a;
        if gcd(a, b) != 1 || a > b {
            return false;
        }
        let (sa, sb) = (subgroup(n, a), subgroup(n, b));
        if !normal.contains(&sa) || !normal.contains(&sb) {
            return false;
        }
        match (restrict(t, &sa), restrict(t, &sb)) {
            (Ok(x), Ok(y)) => direct_product(&x, &y).map(|d| d == *t).unwrap_or(false),
            _ => false,
        }
    })
}

fn unclassified(l: &Lattice, with_direct: bool) -> Vec<usize> {
    (0..l.len())
        .into_par_iter()
        .filter(|&i| {
            let t = l.theory(i);
            !(i == l.top()
                || comes_from_automorphisms(t)
                || is_nontrivial_star_product(t)
                || (with_direct && is_direct_product(t)))
        })
        .collect()
}

/// For `n = pq` or `p^2`: every theory is Max, comes from automorphisms, or
/// is a nontrivial `*`-product.
pub fn verify_classification(wb: &Workbench, n: u32) -> Result<ClaimResult> {
    if is_pq(n).is_none() && is_p_squared(n).is_none() {
        return Err(SctError::Precondition(format!("{n} is neither pq nor p^2")));
    }
    let l = wb.lattice(n)?;
    let left = unclassified(&l, false);
    Ok(ClaimResult::new(
        "classification",
        n_param(n),
        left.is_empty(),
        format!("{} theories; unclassified {left:?}", l.len()),
    ))
}

/// For other composite orders: how many theories none of Max, automorphism,
/// `*`-product or direct-product constructions produce. Reported as data.
pub fn classification_census(wb: &Workbench, n: u32) -> Result<ClaimResult> {
    let l = wb.lattice(n)?;
    let left = unclassified(&l, true);
    Ok(ClaimResult::new(
        "classification.census",
        n_param(n),
        true,
        format!(
            "{} of {} theories unclassified by implemented constructions {left:?}",
            left.len(),
            l.len()
        ),
    ))
}

// ---------------------------------------------------------------------------
// Main theorems.

pub fn expected_usm(n: u32) -> bool {
    is_prime(n) || n == 4
}

pub fn expected_lsm(n: u32) -> bool {
    is_prime(n) || n == 4 || is_pq(n).is_some()
}

fn theorem_claims(wb: &Workbench, n: u32) -> Result<Vec<ClaimResult>> {
    let l = wb.lattice(n)?;
    let mut out = Vec::new();
    for (claim, property, expected) in [
        ("thm.usm", Property::Upper, expected_usm(n)),
        ("thm.lsm", Property::Lower, expected_lsm(n)),
    ] {
        let report = l.check_semimodularity(property);
        let witness = report
            .witness
            .map(|w| {
                format!(
                    "; witness ({}, {}) meet {} join {}",
                    w.a, w.b, w.meet, w.join
                )
            })
            .unwrap_or_default();
        out.push(ClaimResult::new(
            claim,
            n_param(n),
            report.holds == expected,
            format!(
                "{property} semimodular = {}, expected {expected}{witness}",
                report.holds
            ),
        ));
    }
    Ok(out)
}

/// Upper and lower semimodularity against the predicted orders, `2..=n_max`.
pub fn verify_main_theorems(wb: &Workbench, n_max: u32) -> Result<Vec<ClaimResult>> {
    let per_n: Vec<Vec<ClaimResult>> = (2..=n_max)
        .into_par_iter()
        .map(|n| theorem_claims(wb, n))
        .collect::<Result<_>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

/// Every claim applicable to `n`, in a fixed order.
pub fn claims_for(wb: &Workbench, n: u32) -> Result<Vec<ClaimResult>> {
    let mut out = vec![
        verify_superclass_products(wb, n)?,
        verify_duality_count(wb, n)?,
        verify_join_closed(wb, n)?,
        verify_aut_lattice_iso(wb, n)?,
    ];
    if n > 2 {
        out.push(verify_inversion_atom(wb, n)?);
    }
    if is_prime(n) {
        out.push(verify_prime_divisor_lattice(wb, n)?);
        out.push(verify_prime_modular(wb, n)?);
    } else {
        out.push(verify_star_order(wb, n)?);
        out.push(verify_star_interval(wb, n)?);
        out.push(verify_star_semimodular_transfer(wb, n)?);
        out.push(verify_inheritance(wb, n)?);
        out.push(verify_coatoms(wb, n)?);
        out.push(verify_coatom_meet(wb, n)?);
    }
    match n {
        4 => out.push(verify_c4_chain(wb)?),
        8 => out.push(verify_c8(wb)?),
        _ => {}
    }
    if let Some((p, q)) = is_pq(n) {
        out.extend(verify_pq_structure(wb, p, q)?);
        out.push(verify_diamonds(wb, p, q)?);
        out.push(verify_diamonds(wb, q, p)?);
    }
    if let Some(p) = is_p_squared(n).filter(|&p| p > 2) {
        out.push(verify_p2_sublattice(wb, p)?);
        out.push(verify_p2_not_semimodular(wb, p)?);
    }
    for (p, q) in pqr_pairs(n) {
        out.push(verify_pqr_nontheory(n, p, q)?);
        out.push(verify_pqr_meet(wb, n, p, q)?);
    }
    if is_pq(n).is_some() || is_p_squared(n).is_some() {
        out.push(verify_classification(wb, n)?);
    } else if !is_prime(n) && big_omega(n) >= 3 {
        out.push(classification_census(wb, n)?);
    }
    out.extend(theorem_claims(wb, n)?);
    Ok(out)
}

/// The full suite for `2..=max_n`; orders run in parallel, results are
/// ordered by `n`.
pub fn verify_all(wb: &Workbench, max_n: u32) -> Result<Vec<ClaimResult>> {
    let per_n: Vec<Vec<ClaimResult>> = (2..=max_n)
        .into_par_iter()
        .map(|n| claims_for(wb, n))
        .collect::<Result<_>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

pub fn render_text(results: &[ClaimResult]) -> String {
    let mut out = String::new();
    for r in results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        writeln!(out, "{status} {}: {}", r.id, r.detail).unwrap();
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    writeln!(
        out,
        "{} claims, {} passed, {failed} failed",
        results.len(),
        results.len() - failed
    )
    .unwrap();
    out
}

pub fn render_json(results: &[ClaimResult]) -> String {
    let mut out = serde_json::to_string_pretty(results).expect("claims serialize");
    out.push('\n');
    out
}
