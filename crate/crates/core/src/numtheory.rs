//! Exact integer number theory: factorization, Möbius, Euler totient,
//! Ramanujan sums and perfect-square detection.
//!
//! Inputs in this crate stay well below 10^6, so trial division is enough.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Canonical prime factorization, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFactorization {
    pub factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Factor `n` by trial division. `factorize(1)` is the empty product.
///
/// Panics if `n == 0`.
pub fn factorize(mut n: u64) -> PrimeFactorization {
    assert!(n >= 1, "factorize: n must be positive");
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    PrimeFactorization { factors }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).factors == [(n, 1)]
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n).factors {
        let current = divs.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            divs.extend(current.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if !f.is_squarefree() {
        0
    } else if f.factors.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .factors
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Sum of the `j`-th powers of the primitive `d`-th roots of unity.
///
/// Uses `c_d(j) = Σ_{e | gcd(d, j)} μ(d/e)·e` with `gcd(0, d) = d`.
pub fn ramanujan_sum(d: u64, j: i64) -> i64 {
    assert!(d >= 1, "ramanujan_sum: d must be positive");
    let g = j.unsigned_abs().gcd(&d);
    let g = if g == 0 { d } else { g };
    divisors(g)
        .into_iter()
        .map(|e| mobius(d / e) * e as i64)
        .sum()
}

/// Integer square root of a perfect square, `None` otherwise.
pub fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}
