//! Exact arithmetic in `Z[zeta_n]`, represented as integer polynomials
//! reduced modulo the `n`-th cyclotomic polynomial.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cyclic::{divisors, euler_phi};

fn checked(v: Option<i64>) -> i64 {
    v.expect("cyclotomic coefficient overflow")
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = checked(out[i + j].checked_add(checked(x.checked_mul(y))));
        }
    }
    out
}

/// Exact division by a monic polynomial; panics if the remainder is nonzero.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] = checked(rem[i + j].checked_sub(checked(c.checked_mul(d))));
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

/// Coefficients of `Phi_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let mut cache = BTreeMap::new();
    cyclotomic_cached(n, &mut cache)
}

fn cyclotomic_cached(n: u32, cache: &mut BTreeMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let mut x_n_minus_1 = vec![0i64; n as usize + 1];
    x_n_minus_1[0] = -1;
    x_n_minus_1[n as usize] = 1;
    let mut den = vec![1i64];
    for d in divisors(n) {
        if d < n {
            let phi_d = cyclotomic_cached(d, cache);
            den = poly_mul(&den, &phi_d);
        }
    }
    let phi = poly_div_exact(&x_n_minus_1, &den);
    cache.insert(n, phi.clone());
    phi
}

/// Holds `Phi_n` for reducing elements of `Z[zeta_n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicContext {
    n: u32,
    phi_coeffs: Vec<i64>,
}

/// An element of `Z[zeta_n]` in canonical form: a coefficient vector of
/// length `phi(n)` over the basis `1, zeta, ..., zeta^(phi(n)-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CyclotomicInt {
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Rational integer value, when the element lies in `Z`.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then(|| self.coeffs[0])
    }
}

impl CyclotomicContext {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1);
        let phi_coeffs = cyclotomic_polynomial(n);
        debug_assert_eq!(phi_coeffs.len() as u32 - 1, euler_phi(n));
        CyclotomicContext { n, phi_coeffs }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn phi_coeffs(&self) -> &[i64] {
        &self.phi_coeffs
    }

    pub fn degree(&self) -> usize {
        self.phi_coeffs.len() - 1
    }

    /// Reduces an arbitrary polynomial modulo `Phi_n` by synthetic division.
    pub fn reduce(&self, poly: &[i64]) -> CyclotomicInt {
        let deg = self.degree();
        let mut work = poly.to_vec();
        if work.len() < deg {
            work.resize(deg, 0);
        }
        for i in (deg..work.len()).rev() {
            let c = work[i];
            if c == 0 {
                continue;
            }
            // x^i = x^(i-deg) * (x^deg - Phi_n(x)), Phi_n monic
            for (j, &p) in self.phi_coeffs[..deg].iter().enumerate() {
                let k = i - deg + j;
                work[k] = checked(work[k].checked_sub(checked(c.checked_mul(p))));
            }
            work[i] = 0;
        }
        work.truncate(deg);
        CyclotomicInt { coeffs: work }
    }

    pub fn from_integer(&self, k: i64) -> CyclotomicInt {
        self.reduce(&[k])
    }

    /// `sum zeta^e` over the multiset of exponents (taken mod n).
    pub fn root_sum(&self, exponents: impl IntoIterator<Item = u32>) -> CyclotomicInt {
        let mut counts = vec![0i64; self.n as usize];
        for e in exponents {
            counts[(e % self.n) as usize] += 1;
        }
        self.reduce(&counts)
    }

    pub fn add(&self, a: &CyclotomicInt, b: &CyclotomicInt) -> CyclotomicInt {
        CyclotomicInt {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| checked(x.checked_add(y)))
                .collect(),
        }
    }

    pub fn mul(&self, a: &CyclotomicInt, b: &CyclotomicInt) -> CyclotomicInt {
        self.reduce(&poly_mul(&a.coeffs, &b.coeffs))
    }

    /// Complex value under `zeta -> exp(2 pi i / n)`, as `(re, im)`.
    pub fn evaluate(&self, a: &CyclotomicInt) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI / self.n as f64;
        a.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (k, &c)| {
                let angle = theta * k as f64;
                (re + c as f64 * angle.cos(), im + c as f64 * angle.sin())
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_one() {
        for n in 1..=40u32 {
            let prod = divisors(n).into_iter().fold(vec![1i64], |acc, d| {
                poly_mul(&acc, &cyclotomic_polynomial(d))
            });
            let mut expect = vec![0i64; n as usize + 1];
            expect[0] = -1;
            expect[n as usize] = 1;
            assert_eq!(prod, expect, "n = {n}");
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn root_sums() {
        let c3 = CyclotomicContext::new(3);
        assert_eq!(c3.root_sum([1, 2]), c3.from_integer(-1));
        let c4 = CyclotomicContext::new(4);
        assert!(c4.root_sum([0, 2]).is_zero());
        for n in 2..=30 {
            let ctx = CyclotomicContext::new(n);
            assert!(ctx.root_sum(0..n).is_zero(), "n = {n}");
        }
        let c1 = CyclotomicContext::new(1);
        assert_eq!(c1.root_sum([0]).as_integer(), Some(1));
    }

    fn float_root_sum(n: u32, exps: &[u32]) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI / n as f64;
        exps.iter().fold((0.0, 0.0), |(re, im), &e| {
            (re + (theta * e as f64).cos(), im + (theta * e as f64).sin())
        })
    }

    fn arb_multiset() -> impl Strategy<Value = (u32, Vec<u32>)> {
        (1u32..=30).prop_flat_map(|n| (Just(n), prop::collection::vec(0..n, 0..=n as usize)))
    }

    proptest! {
        #[test]
        fn root_sum_matches_floating_point((n, exps) in arb_multiset()) {
            let ctx = CyclotomicContext::new(n);
            let (re, im) = ctx.evaluate(&ctx.root_sum(exps.iter().copied()));
            let (fre, fim) = float_root_sum(n, &exps);
            prop_assert!((re - fre).abs() < 1e-9 && (im - fim).abs() < 1e-9);
        }

        #[test]
        fn ring_laws((n, a) in arb_multiset(), b in prop::collection::vec(0u32..30, 0..20),
                     c in prop::collection::vec(0u32..30, 0..20)) {
            let ctx = CyclotomicContext::new(n);
            let x = ctx.root_sum(a.iter().copied());
            let y = ctx.root_sum(b.iter().copied());
            let z = ctx.root_sum(c.iter().copied());
            prop_assert_eq!(ctx.add(&x, &y), ctx.add(&y, &x));
            prop_assert_eq!(ctx.mul(&x, &y), ctx.mul(&y, &x));
            prop_assert_eq!(ctx.add(&ctx.add(&x, &y), &z), ctx.add(&x, &ctx.add(&y, &z)));
            prop_assert_eq!(ctx.mul(&ctx.mul(&x, &y), &z), ctx.mul(&x, &ctx.mul(&y, &z)));
            prop_assert_eq!(ctx.reduce(x.coeffs()), x.clone());
            // multiplying root sums is convolution of exponents
            let conv: Vec<u32> = a.iter().flat_map(|&i| b.iter().map(move |&j| i + j)).collect();
            prop_assert_eq!(ctx.mul(&x, &y), ctx.root_sum(conv));
        }
    }
}
