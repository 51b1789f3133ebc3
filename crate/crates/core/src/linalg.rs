//! Dense matrices over `Q` with exact rank and kernel computations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        QMatrix {
            rows,
            cols,
            data: values
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Rows `start..start+len` as a new matrix.
    pub fn row_block(&self, start: usize, len: usize) -> QMatrix {
        QMatrix {
            rows: len,
            cols: self.cols,
            data: self.data[start * self.cols..(start + len) * self.cols].to_vec(),
        }
    }

    /// Columns `start..start+len` as a new matrix.
    pub fn col_block(&self, start: usize, len: usize) -> QMatrix {
        let mut out = QMatrix::zeros(self.rows, len);
        for r in 0..self.rows {
            for c in 0..len {
                out.set(r, c, self.get(r, start + c).clone());
            }
        }
        out
    }

    /// Horizontal concatenation; all blocks must share a row count.
    pub fn hstack(rows: usize, blocks: &[QMatrix]) -> QMatrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = QMatrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            for r in 0..rows {
                for c in 0..b.cols {
                    out.set(r, offset + c, b.get(r, c).clone());
                }
            }
            offset += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks must share a column count.
    pub fn vstack(cols: usize, blocks: &[QMatrix]) -> QMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend(b.data.iter().cloned());
        }
        QMatrix { rows, cols, data }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self * v = 0}` as the columns of the result.
    pub fn kernel(&self) -> QMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = QMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, BigRational::one());
            for (row, &p) in pivots.iter().enumerate() {
                basis.set(p, k, -r.get(row, f));
            }
        }
        basis
    }

    /// Entries reduced modulo a prime, or `None` if a denominator vanishes mod `p`.
    pub fn reduce_mod(&self, p: u64) -> Option<Vec<u64>> {
        let pb = BigInt::from(p);
        self.data
            .iter()
            .map(|q| {
                let num = mod_big(q.numer(), &pb);
                let den = mod_big(q.denom(), &pb);
                if den == 0 {
                    return None;
                }
                Some(num * inv_mod(den, p) % p)
            })
            .collect()
    }

    /// Entries as integers, if all of them are.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.data
            .iter()
            .map(|q| q.is_integer().then(|| q.numer().to_i64()).flatten())
            .collect()
    }

    pub fn max_abs_entry(&self) -> BigRational {
        self.data
            .iter()
            .map(|q| q.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

fn mod_big(x: &BigInt, p: &BigInt) -> u64 {
    let r = ((x % p) + p) % p;
    r.to_u64().unwrap()
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime via Fermat.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Rank of a row-major matrix over `F_p`.
pub fn rank_mod(rows: usize, cols: usize, data: &[u64], p: u64) -> usize {
    let mut m = data.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        for c in 0..cols {
            m.swap(rank * cols + c, piv * cols + c);
        }
        let inv = inv_mod(m[rank * cols + col], p);
        for c in 0..cols {
            m[rank * cols + c] = m[rank * cols + c] * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r * cols + col] != 0 {
                let f = m[r * cols + col];
                for c in 0..cols {
                    m[r * cols + c] = (m[r * cols + c] + p * p - f * m[rank * cols + c] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let m = QMatrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
        assert_eq!(QMatrix::identity(3).rank(), 3);
        assert_eq!(QMatrix::zeros(0, 4).kernel().cols(), 4);
    }

    #[test]
    fn modular_reduction() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut m = QMatrix::zeros(1, 1);
        m.set(0, 0, half);
        assert_eq!(m.reduce_mod(5), Some(vec![3]));
        assert_eq!(m.reduce_mod(2), None);
        assert_eq!(rank_mod(2, 2, &[1, 2, 2, 4], 7), 1);
        assert_eq!(rank_mod(2, 2, &[1, 2, 3, 4], 2), 1);
        assert_eq!(rank_mod(2, 2, &[1, 2, 3, 4], 7), 2);
    }
}
