//! Small finite fields. Elements are integers `0..q` whose base-p digits,
//! least significant first, are the coefficients of a polynomial in the
//! adjoined root.

use crate::numtheory::factorize;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("invalid field: {0}")]
    InvalidField(String),
}

/// Orders above this are refused; only small geometries are built.
pub const MAX_FIELD_ORDER: u64 = 256;

/// Default reduction polynomials, coefficients from the constant term up.
const DEFAULT_POLYS: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (7, 2, &[1, 0, 1]),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    e: u32,
    q: u64,
    /// Monic, degree `e`, constant term first. Empty for prime fields.
    poly: Vec<u64>,
    mul_table: Vec<u32>,
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::with_poly(p, 1, &[])
    }

    /// GF(p^e) with the shipped reduction polynomial.
    pub fn standard(p: u64, e: u32) -> Result<Self, FieldError> {
        if e == 1 {
            return Self::prime(p);
        }
        let poly = DEFAULT_POLYS
            .iter()
            .find(|(pp, ee, _)| *pp == p && *ee == e)
            .map(|(_, _, c)| *c)
            .ok_or_else(|| {
                FieldError::InvalidField(format!("no default polynomial for {p}^{e}; supply one"))
            })?;
        Self::with_poly(p, e, poly)
    }

    /// GF(p^e) as polynomials modulo `poly` (monic, constant term first).
    /// Irreducibility is checked by testing for zero divisors.
    pub fn with_poly(p: u64, e: u32, poly: &[u64]) -> Result<Self, FieldError> {
        let f = factorize(p);
        if p < 2 || f.factors.len() != 1 || f.factors[0].1 != 1 {
            return Err(FieldError::InvalidField(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(FieldError::InvalidField("degree must be positive".into()));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or_else(|| {
                FieldError::InvalidField(format!("order {p}^{e} exceeds {MAX_FIELD_ORDER}"))
            })?;
        let poly = if e == 1 {
            Vec::new()
        } else {
            if poly.len() != e as usize + 1 || poly[e as usize] != 1 || poly.iter().any(|&c| c >= p)
            {
                return Err(FieldError::InvalidField(format!(
                    "reduction polynomial must be monic of degree {e} with coefficients below {p}"
                )));
            }
            poly.to_vec()
        };
        let mut field = FiniteField {
            p,
            e,
            q,
            poly,
            mul_table: Vec::new(),
        };
        let n = q as usize;
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = field.slow_mul(a as u64, b as u64) as u32;
            }
        }
        field.mul_table = table;
        for a in 1..n {
            if (1..n).any(|b| field.mul(a, b) == 0) {
                return Err(FieldError::InvalidField(format!(
                    "{} is reducible over GF({p})",
                    field.poly_text()
                )));
            }
        }
        Ok(field)
    }

    fn digits(&self, a: u64) -> Vec<u64> {
        let mut out = vec![0; self.e as usize];
        let mut x = a;
        for d in out.iter_mut() {
            *d = x % self.p;
            x /= self.p;
        }
        out
    }

    fn compose(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            return a * b % self.p;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e - 1];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % self.p;
            }
        }
        for top in (e..prod.len()).rev() {
            let c = prod[top];
            if c != 0 {
                for (k, &pc) in self.poly.iter().enumerate().take(e) {
                    let idx = top - e + k;
                    prod[idx] = (prod[idx] + self.p * self.p - c * pc % self.p) % self.p;
                }
                prod[top] = 0;
            }
        }
        self.compose(&prod[..e])
    }

    fn poly_text(&self) -> String {
        self.poly
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Coefficients of an element, constant term first.
    pub fn coefficients(&self, a: usize) -> Vec<u64> {
        self.digits(a as u64)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a as u64), self.digits(b as u64));
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.compose(&s) as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        let s: Vec<u64> = self
            .digits(a as u64)
            .iter()
            .map(|u| (self.p - u) % self.p)
            .collect();
        self.compose(&s) as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_table[a * self.q as usize + b] as usize
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (1..self.q as usize).find(|&b| self.mul(a, b) == 1)
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn multiplicative_order(&self, a: usize) -> Option<u64> {
        if a == 0 {
            return None;
        }
        (1..self.q).find(|&k| self.pow(a, k) == 1)
    }

    /// The smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> usize {
        (1..self.q as usize)
            .find(|&a| self.multiplicative_order(a) == Some(self.q - 1))
            .expect("multiplicative group of a finite field is cyclic")
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})/{}", self.p, self.e, self.poly_text())
        }
    }
}

/// Accepts `q` (a prime or a prime power with a shipped polynomial),
/// `p^e`, or `p^e/c0,c1,...,ce` with the reduction polynomial given
/// constant term first.
impl FromStr for FiniteField {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::InvalidField(format!("cannot parse field '{s}'"));
        let (head, poly) = match s.trim().split_once('/') {
            Some((h, p)) => (h, Some(p)),
            None => (s.trim(), None),
        };
        let (p, e) = match head.split_once('^') {
            Some((p, e)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                e.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => {
                let q: u64 = head.parse().map_err(|_| bad())?;
                let f = factorize(q);
                if q < 2 || f.factors.len() != 1 {
                    return Err(FieldError::InvalidField(format!(
                        "{q} is not a prime power"
                    )));
                }
                f.factors[0]
            }
        };
        match poly {
            Some(text) => {
                let coeffs: Vec<u64> = text
                    .split(',')
                    .map(|c| c.trim().parse().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?;
                Self::with_poly(p, e, &coeffs)
            }
            None => Self::standard(p, e),
        }
    }
}
