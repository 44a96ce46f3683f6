//! Exact arbitrary-precision nonnegative integer matrices.
//!
//! Adjacency matrices of finite graphs are tiny, but their powers count paths
//! and grow geometrically, so all arithmetic is done in `BigUint` — there is
//! no overflow anywhere in the growth computations.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A square matrix of arbitrary-precision nonnegative integers, row-major.
/// Row index = source vertex, column index = range vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigUint>,
}

impl IntMatrix {
    /// The `n × n` zero matrix.
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            entries: vec![BigUint::zero(); n * n],
        }
    }

    /// The `n × n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigUint::one();
        }
        m
    }

    /// Builds a matrix from small integer rows (test/construction helper).
    ///
    /// # Panics
    /// Panics when the rows do not form a square matrix.
    pub fn from_rows(rows: &[&[u64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            entries: rows
                .iter()
                .flat_map(|r| r.iter().map(|&x| BigUint::from(x)))
                .collect(),
        }
    }

    /// Matrix order (number of rows).
    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry at `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &BigUint {
        &self.entries[row * self.n + col]
    }

    /// Sets the entry at `(row, col)`.
    pub fn set(&mut self, row: usize, col: usize, value: BigUint) {
        self.entries[row * self.n + col] = value;
    }

    /// Adds one to the entry at `(row, col)` (edge insertion).
    pub fn increment(&mut self, row: usize, col: usize) {
        self.entries[row * self.n + col] += 1u32;
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Exact matrix product.
    ///
    /// # Panics
    /// Panics on mismatched orders.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "order mismatch");
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Entrywise sum.
    ///
    /// # Panics
    /// Panics on mismatched orders.
    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "order mismatch");
        IntMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Transpose.
    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        out
    }

    /// Block-diagonal composition of two square matrices.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n + other.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.entries[i * n + j] = self.entries[i * self.n + j].clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                out.entries[(self.n + i) * n + (self.n + j)] =
                    other.entries[i * other.n + j].clone();
            }
        }
        out
    }

    /// The entrywise 1,1-norm `‖A‖₁,₁ = Σᵢⱼ aᵢⱼ` (entries are nonnegative, so
    /// no absolute values are involved). For `Aⁿ` this is the total number of
    /// paths of length `n`.
    pub fn norm_11(&self) -> BigUint {
        self.entries.iter().sum()
    }

    /// Column sums: `colsum_j = Σᵢ aᵢⱼ`. For `Aˢ`, column `j` counts paths of
    /// length `s` ending at vertex `j`.
    pub fn column_sums(&self) -> Vec<BigUint> {
        let n = self.n;
        let mut sums = vec![BigUint::zero(); n];
        for row in self.entries.chunks_exact(n.max(1)) {
            for (sum, a) in sums.iter_mut().zip(row) {
                *sum += a;
            }
        }
        sums
    }

    /// Row sums: `rowsum_i = Σⱼ aᵢⱼ` (out-degrees for an adjacency matrix).
    pub fn row_sums(&self) -> Vec<BigUint> {
        let n = self.n;
        self.entries
            .chunks_exact(n.max(1))
            .map(|row| row.iter().sum())
            .collect()
    }

    /// Row-vector times matrix: `v · A`.
    ///
    /// # Panics
    /// Panics when `v.len()` differs from the matrix order.
    pub fn vec_mul(&self, v: &[BigUint]) -> Vec<BigUint> {
        assert_eq!(v.len(), self.n, "vector length mismatch");
        let n = self.n;
        let mut out = vec![BigUint::zero(); n];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let row = &self.entries[i * n..(i + 1) * n];
            for (o, a) in out.iter_mut().zip(row) {
                if !a.is_zero() {
                    *o += vi * a;
                }
            }
        }
        out
    }
}

/// Exact `Aⁿ` by binary exponentiation; `A⁰` is the identity.
pub fn mat_pow(a: &IntMatrix, mut n: u64) -> IntMatrix {
    let mut result = IntMatrix::identity(a.order());
    let mut base = a.clone();
    while n > 0 {
        if n & 1 == 1 {
            result = result.mul(&base);
        }
        n >>= 1;
        if n > 0 {
            base = base.mul(&base);
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib() -> IntMatrix {
        IntMatrix::from_rows(&[&[0, 1], &[1, 1]])
    }

    #[test]
    fn power_of_fibonacci_matrix_gives_fibonacci_numbers() {
        // A^n = [[f_{n-1}, f_n], [f_n, f_{n+1}]] with f_1 = f_2 = 1.
        let a10 = mat_pow(&fib(), 10);
        assert_eq!(a10.get(0, 0), &BigUint::from(34u32)); // f_9
        assert_eq!(a10.get(0, 1), &BigUint::from(55u32)); // f_10
        assert_eq!(a10.get(1, 1), &BigUint::from(89u32)); // f_11
    }

    #[test]
    fn zeroth_power_is_identity() {
        assert_eq!(mat_pow(&fib(), 0), IntMatrix::identity(2));
        assert_eq!(mat_pow(&IntMatrix::zeros(0), 5), IntMatrix::zeros(0));
    }

    #[test]
    fn cycle_matrix_powers_have_constant_norm() {
        let c3 = IntMatrix::from_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        for m in 0..7 {
            assert_eq!(mat_pow(&c3, m).norm_11(), BigUint::from(3u32));
        }
    }

    #[test]
    fn rose_powers_grow_geometrically() {
        let r = IntMatrix::from_rows(&[&[3]]);
        assert_eq!(mat_pow(&r, 5).norm_11(), BigUint::from(243u32));
    }

    #[test]
    fn norm_and_sums() {
        let a = fib();
        assert_eq!(a.norm_11(), BigUint::from(3u32));
        assert_eq!(
            a.column_sums(),
            vec![BigUint::from(1u32), BigUint::from(2u32)]
        );
        assert_eq!(a.row_sums(), vec![BigUint::from(1u32), BigUint::from(2u32)]);
        assert!(IntMatrix::zeros(3).is_zero());
    }

    #[test]
    fn vec_mul_matches_full_product() {
        let a = fib();
        let ones = vec![BigUint::one(), BigUint::one()];
        let v = a.vec_mul(&ones);
        assert_eq!(v, mat_pow(&a, 1).column_sums());
        let v2 = a.vec_mul(&v);
        assert_eq!(v2, mat_pow(&a, 2).column_sums());
    }

    #[test]
    fn block_diag_and_transpose() {
        let a = IntMatrix::from_rows(&[&[2]]);
        let b = fib();
        let d = a.block_diag(&b);
        assert_eq!(d.order(), 3);
        assert_eq!(d.get(0, 0), &BigUint::from(2u32));
        assert_eq!(d.get(1, 2), &BigUint::one());
        assert_eq!(d.get(0, 1), &BigUint::zero());
        let t = fib().transpose();
        assert_eq!(t, fib()); // symmetric
        let line = IntMatrix::from_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(line.transpose(), IntMatrix::from_rows(&[&[0, 0], &[1, 0]]));
    }
}
