//! Strongly regular graph parameters and their integer spectrum.

use crate::numtheory::exact_sqrt;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SrgError {
    #[error("srg({v},{k},{lambda},{mu}): valency must satisfy 0 < k < v - 1")]
    ValencyOutOfRange {
        v: u64,
        k: u64,
        lambda: u64,
        mu: u64,
    },
    #[error("srg({v},{k},{lambda},{mu}): k(k-lambda-1) != (v-k-1)mu")]
    IdentityFails {
        v: u64,
        k: u64,
        lambda: u64,
        mu: u64,
    },
    #[error("srg parameters have non-positive discriminant {delta}")]
    NonPositiveDiscriminant { delta: i64 },
    #[error(
        "conference graph on {v} vertices: v is not a perfect square, eigenvalues are irrational"
    )]
    ConferenceNonSquare { v: u64 },
    #[error("eigenvalues or multiplicities are not integral ({detail})")]
    NonIntegralSpectrum { detail: String },
}

/// Parameters `(v, k, lambda, mu)` of a strongly regular graph.
///
/// Construction enforces `0 < k < v - 1`, the counting identity
/// `k(k - lambda - 1) = (v - k - 1) mu`, and a positive discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSrgParams", into = "RawSrgParams")]
pub struct SrgParams {
    v: u64,
    k: u64,
    lambda: u64,
    mu: u64,
}

#[derive(Serialize, Deserialize)]
struct RawSrgParams {
    v: u64,
    k: u64,
    lambda: u64,
    mu: u64,
}

impl TryFrom<RawSrgParams> for SrgParams {
    type Error = SrgError;
    fn try_from(r: RawSrgParams) -> Result<Self, SrgError> {
        SrgParams::new(r.v, r.k, r.lambda, r.mu)
    }
}

impl From<SrgParams> for RawSrgParams {
    fn from(p: SrgParams) -> Self {
        RawSrgParams {
            v: p.v,
            k: p.k,
            lambda: p.lambda,
            mu: p.mu,
        }
    }
}

pub fn check_standard_identity(v: u64, k: u64, lambda: u64, mu: u64) -> bool {
    let lhs = k as i128 * (k as i128 - lambda as i128 - 1);
    let rhs = (v as i128 - k as i128 - 1) * mu as i128;
    lhs == rhs
}

impl SrgParams {
    pub fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Result<Self, SrgError> {
        if k == 0 || k + 1 >= v {
            return Err(SrgError::ValencyOutOfRange { v, k, lambda, mu });
        }
        if !check_standard_identity(v, k, lambda, mu) {
            return Err(SrgError::IdentityFails { v, k, lambda, mu });
        }
        let p = SrgParams { v, k, lambda, mu };
        if p.discriminant() <= 0 {
            return Err(SrgError::NonPositiveDiscriminant {
                delta: p.discriminant(),
            });
        }
        Ok(p)
    }

    pub fn v(&self) -> u64 {
        self.v
    }
    pub fn k(&self) -> u64 {
        self.k
    }
    pub fn lambda(&self) -> u64 {
        self.lambda
    }
    pub fn mu(&self) -> u64 {
        self.mu
    }

    /// `(lambda - mu)^2 + 4(k - mu)`.
    pub fn discriminant(&self) -> i64 {
        let d = self.lambda as i64 - self.mu as i64;
        d * d + 4 * (self.k as i64 - self.mu as i64)
    }

    pub fn is_conference(&self) -> bool {
        2 * self.k as i64 + (self.v as i64 - 1) * (self.lambda as i64 - self.mu as i64) == 0
    }

    /// Disconnected (`mu = 0`) or complete multipartite (`mu = k`).
    pub fn is_degenerate(&self) -> bool {
        self.mu == 0 || self.mu == self.k
    }

    pub fn advisory(&self) -> Option<&'static str> {
        if self.mu == 0 {
            Some("degenerate: mu = 0, the graph is a disjoint union of cliques")
        } else if self.mu == self.k {
            Some("degenerate: mu = k, the graph is complete multipartite")
        } else {
            None
        }
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "srg({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

/// Integer spectrum `k, theta2, theta3` with multiplicities `1, m2, m3`.
///
/// Shared by the undirected and directed paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerSpectrum {
    pub v: u64,
    pub k: i64,
    pub theta2: i64,
    pub theta3: i64,
    pub m2: i64,
    pub m3: i64,
    pub gap: i64,
}

impl IntegerSpectrum {
    /// Builds a spectrum from explicit values, checking the trace identities.
    pub fn new(
        v: u64,
        k: i64,
        theta2: i64,
        theta3: i64,
        m2: i64,
        m3: i64,
    ) -> Result<Self, SrgError> {
        let s = IntegerSpectrum {
            v,
            k,
            theta2,
            theta3,
            m2,
            m3,
            gap: theta2 - theta3,
        };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<(), SrgError> {
        let fail = |detail: String| Err(SrgError::NonIntegralSpectrum { detail });
        if self.gap <= 0 {
            return fail(format!(
                "theta2 {} must exceed theta3 {}",
                self.theta2, self.theta3
            ));
        }
        if self.m2 < 0 || self.m3 < 0 || 1 + self.m2 + self.m3 != self.v as i64 {
            return fail(format!(
                "multiplicities 1, {}, {} do not sum to v = {}",
                self.m2, self.m3, self.v
            ));
        }
        if self.k + self.m2 * self.theta2 + self.m3 * self.theta3 != 0 {
            return fail("adjacency trace is not zero".into());
        }
        Ok(())
    }

    /// Evaluate the closed forms for `(v, k, lambda - mu)` and a perfect-square discriminant root.
    pub(crate) fn from_closed_form(
        v: u64,
        k: u64,
        lambda_minus_mu: i64,
        root: i64,
    ) -> Result<Self, SrgError> {
        let (vi, ki) = (v as i64, k as i64);
        if (lambda_minus_mu + root) % 2 != 0 {
            return Err(SrgError::NonIntegralSpectrum {
                detail: format!(
                    "lambda - mu = {lambda_minus_mu} and root {root} have different parity"
                ),
            });
        }
        let theta2 = (lambda_minus_mu + root) / 2;
        let theta3 = (lambda_minus_mu - root) / 2;
        let skew = 2 * ki + (vi - 1) * lambda_minus_mu;
        if skew % root != 0 || (vi - 1 - skew / root) % 2 != 0 {
            return Err(SrgError::NonIntegralSpectrum {
                detail: format!("multiplicity ({} - {skew}/{root})/2 is fractional", vi - 1),
            });
        }
        let m2 = (vi - 1 - skew / root) / 2;
        let m3 = (vi - 1 + skew / root) / 2;
        IntegerSpectrum::new(v, ki, theta2, theta3, m2, m3)
    }

    /// Second power-sum identity `k^2 + m2 theta2^2 + m3 theta3^2 = v k`, true for
    /// any regular graph realising the spectrum.
    pub fn second_moment(&self) -> i64 {
        self.k * self.k + self.m2 * self.theta2 * self.theta2 + self.m3 * self.theta3 * self.theta3
    }
}

impl fmt::Display for IntegerSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} theta2={} theta3={} m2={} m3={} gap={}",
            self.k, self.theta2, self.theta3, self.m2, self.m3, self.gap
        )
    }
}

pub fn srg_spectrum(params: &SrgParams) -> Result<IntegerSpectrum, SrgError> {
    let delta = params.discriminant();
    let root = match exact_sqrt(delta) {
        Some(r) => r,
        None if params.is_conference() => {
            return Err(SrgError::ConferenceNonSquare { v: params.v })
        }
        None => {
            return Err(SrgError::NonIntegralSpectrum {
                detail: format!("discriminant {delta} is not a perfect square"),
            })
        }
    };
    let lm = params.lambda as i64 - params.mu as i64;
    IntegerSpectrum::from_closed_form(params.v, params.k, lm, root)
}
