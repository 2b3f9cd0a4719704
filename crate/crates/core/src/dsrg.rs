//! Directed strongly regular graphs: parameters, integer spectrum and the
//! defining matrix identities.

use crate::linalg::IntMatrix;
use crate::numtheory::exact_sqrt;
use crate::srg::{IntegerSpectrum, SrgError};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DsrgError {
    #[error("t = k = {k}: the graph is undirected, use the srg path")]
    UndirectedCase { k: u64 },
    #[error("D = {d} is not a positive perfect square (Hadamard case)")]
    HadamardCase { d: i64 },
    #[error("dsrg({v},{k},{t},{lambda},{mu}): {reason}")]
    InvalidParams {
        v: u64,
        k: u64,
        t: u64,
        lambda: u64,
        mu: u64,
        reason: &'static str,
    },
    #[error("matrix is {got}x{got}, parameters need {expected}x{expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Spectrum(#[from] SrgError),
}

/// Parameters `(v, k, t, lambda, mu)` of a directed strongly regular graph
/// that is neither undirected nor of Hadamard type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DsrgParams {
    v: u64,
    k: u64,
    t: u64,
    lambda: u64,
    mu: u64,
}

impl DsrgParams {
    pub fn new(v: u64, k: u64, t: u64, lambda: u64, mu: u64) -> Result<Self, DsrgError> {
        let invalid = |reason| DsrgError::InvalidParams {
            v,
            k,
            t,
            lambda,
            mu,
            reason,
        };
        if k == 0 || k + 1 >= v {
            return Err(invalid("valency must satisfy 0 < k < v - 1"));
        }
        if t > k {
            return Err(invalid("t must not exceed k"));
        }
        if t == k {
            return Err(DsrgError::UndirectedCase { k });
        }
        let p = DsrgParams {
            v,
            k,
            t,
            lambda,
            mu,
        };
        let d = p.discriminant();
        if d <= 0 || exact_sqrt(d).is_none() {
            return Err(DsrgError::HadamardCase { d });
        }
        // row sums of A^2 = tI + lambda A + mu (J - I - A)
        if (k * k) as i128
            != t as i128 + (lambda * k) as i128 + mu as i128 * (v as i128 - 1 - k as i128)
        {
            return Err(invalid("k^2 != t + lambda k + mu (v - k - 1)"));
        }
        Ok(p)
    }

    pub fn v(&self) -> u64 {
        self.v
    }
    pub fn k(&self) -> u64 {
        self.k
    }
    pub fn t(&self) -> u64 {
        self.t
    }
    pub fn lambda(&self) -> u64 {
        self.lambda
    }
    pub fn mu(&self) -> u64 {
        self.mu
    }

    /// `D = (lambda - mu)^2 + 4(t - mu)`.
    pub fn discriminant(&self) -> i64 {
        let d = self.lambda as i64 - self.mu as i64;
        d * d + 4 * (self.t as i64 - self.mu as i64)
    }
}

impl fmt::Display for DsrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dsrg({},{},{},{},{})",
            self.v, self.k, self.t, self.lambda, self.mu
        )
    }
}

pub fn dsrg_spectrum(params: &DsrgParams) -> Result<IntegerSpectrum, DsrgError> {
    let d = params.discriminant();
    let root = exact_sqrt(d).ok_or(DsrgError::HadamardCase { d })?;
    let lm = params.lambda as i64 - params.mu as i64;
    Ok(IntegerSpectrum::from_closed_form(
        params.v, params.k, lm, root,
    )?)
}

/// Checks `A^2 + (mu - lambda) A - (t - mu) I = mu J` and `AJ = JA = kJ` exactly.
pub fn dsrg_matrix_check(a: &IntMatrix, params: &DsrgParams) -> Result<bool, DsrgError> {
    let v = params.v as usize;
    if !a.is_square() || a.rows() != v {
        return Err(DsrgError::DimensionMismatch {
            expected: v,
            got: a.rows(),
        });
    }
    let k = params.k as i64;
    let row_ok = (0..v).all(|i| a.row(i).iter().sum::<i64>() == k);
    let col_ok = (0..v).all(|j| (0..v).map(|i| a[(i, j)]).sum::<i64>() == k);
    if !row_ok || !col_ok {
        return Ok(false);
    }
    let (t, lambda, mu) = (params.t as i64, params.lambda as i64, params.mu as i64);
    let lhs = a
        .mul(a)
        .add(&a.scale(mu - lambda))
        .add_scalar_identity(-(t - mu));
    Ok((0..v).all(|i| lhs.row(i).iter().all(|&x| x == mu)))
}
