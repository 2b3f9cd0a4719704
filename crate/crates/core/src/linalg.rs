//! Small dense exact linear algebra: integer matrices and rational
//! Gauss-Jordan elimination.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::ops::{Index, IndexMut};

/// Dense square-or-rectangular integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(l, j)];
                }
            }
        }
        out
    }

    /// `self + c·I`.
    pub fn add_scalar_identity(&self, c: i64) -> IntMatrix {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] += c;
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer value of a rational, if it is one and fits.
pub fn as_integer(q: &BigRational) -> Option<i64> {
    q.is_integer().then(|| q.to_integer().to_i64()).flatten()
}

/// Outcome of solving `A x = b` over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearSolution {
    Unique(Vec<BigRational>),
    /// Consistent with `rank < cols`; `free` lists the free columns.
    Underdetermined {
        rank: usize,
        free: Vec<usize>,
    },
    Inconsistent,
}

/// Gauss-Jordan elimination on an augmented system; accepts any number of
/// equations.
pub fn solve_exact(a: &[Vec<BigRational>], b: &[BigRational]) -> LinearSolution {
    assert_eq!(a.len(), b.len());
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..=cols {
                    let delta = factor.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }

    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return LinearSolution::Inconsistent;
    }
    if pivots.len() < cols {
        let free = (0..cols).filter(|c| !pivots.contains(c)).collect();
        return LinearSolution::Underdetermined {
            rank: pivots.len(),
            free,
        };
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = m[row][cols].clone();
    }
    LinearSolution::Unique(x)
}

/// Render a rational as `p` or `p/q`.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        let sign = if q.is_negative() { "-" } else { "" };
        format!("{sign}{}/{}", q.numer().abs(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigRational>> {
        v.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn unique_overdetermined() {
        // x + y = 3, x - y = 1, 2x = 4
        let a = rows(&[&[1, 1], &[1, -1], &[2, 0]]);
        let b = vec![rat(3), rat(1), rat(4)];
        assert_eq!(
            solve_exact(&a, &b),
            LinearSolution::Unique(vec![rat(2), rat(1)])
        );
    }

    #[test]
    fn fractional_solution() {
        let a = rows(&[&[3]]);
        assert_eq!(
            solve_exact(&a, &[rat(70)]),
            LinearSolution::Unique(vec![rat_frac(70, 3)])
        );
        assert_eq!(fmt_rational(&rat_frac(-7, 2)), "-7/2");
    }

    #[test]
    fn inconsistent_and_underdetermined() {
        let a = rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(
            solve_exact(&a, &[rat(1), rat(3)]),
            LinearSolution::Inconsistent
        );
        assert_eq!(
            solve_exact(&a, &[rat(1), rat(2)]),
            LinearSolution::Underdetermined {
                rank: 1,
                free: vec![1]
            }
        );
    }

    #[test]
    fn int_matrix_ops() {
        let a = IntMatrix::from_fn(2, 2, |i, j| (i * 2 + j) as i64);
        let i2 = IntMatrix::identity(2);
        assert_eq!(a.mul(&i2), a);
        assert_eq!(a.trace(), 3);
        assert_eq!(a.add_scalar_identity(-1).trace(), 1);
        assert!(a.add(&a.scale(-1)).is_zero());
    }
}
