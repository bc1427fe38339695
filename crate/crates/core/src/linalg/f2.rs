//! Dense F2 matrices with 64-bit word rows.

use super::int::IntMat;
use alloc::vec;
use alloc::vec::Vec;

/// Row-major F2 matrix; each row is a run of 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMat {
    rows: usize,
    cols: usize,
    wpr: usize,
    data: Vec<u64>,
}

/// Reduced row echelon form with pivot bookkeeping.
pub struct F2Rref {
    /// The reduced matrix; row `i` has its leading 1 at `pivots[i]`.
    pub mat: BitMat,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl BitMat {
    /// Zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        let wpr = cols.div_ceil(64).max(1);
        BitMat {
            rows,
            cols,
            wpr,
            data: vec![0; rows * wpr],
        }
    }

    /// Reduction of an integer matrix mod 2.
    pub fn from_int(m: &IntMat) -> Self {
        let mut out = Self::zero(m.rows(), m.cols());
        for (j, col) in m.columns().iter().enumerate() {
            for &(i, v) in col {
                if v.rem_euclid(2) == 1 {
                    out.flip(i, j);
                }
            }
        }
        out
    }

    /// Builds from explicit rows given as index lists.
    pub fn from_rows(rows: usize, cols: usize, support: &[Vec<usize>]) -> Self {
        assert_eq!(support.len(), rows);
        let mut out = Self::zero(rows, cols);
        for (i, r) in support.iter().enumerate() {
            for &j in r {
                out.set(i, j, true);
            }
        }
        out
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry accessor.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.wpr + j / 64] & (1u64 << (j % 64)) != 0
    }

    /// Entry setter.
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.wpr + j / 64];
        let m = 1u64 << (j % 64);
        if v {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    fn flip(&mut self, i: usize, j: usize) {
        self.data[i * self.wpr + j / 64] ^= 1u64 << (j % 64);
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let (d, s) = (dst * self.wpr, src * self.wpr);
        // Split borrow: rows are disjoint slices of `data`.
        let (dst_row, src_row) = if d < s {
            let (a, b) = self.data.split_at_mut(s);
            (&mut a[d..d + self.wpr], &b[..self.wpr])
        } else {
            let (a, b) = self.data.split_at_mut(d);
            (&mut b[..self.wpr], &a[s..s + self.wpr])
        };
        for k in 0..dst_row.len() {
            dst_row[k] ^= src_row[k];
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.wpr {
            self.data.swap(a * self.wpr + k, b * self.wpr + k);
        }
    }

    /// ORs row `src` into row `dst`; used for reachability closures.
    pub fn or_rows(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let (d, s) = (dst * self.wpr, src * self.wpr);
        let (dst_row, src_row) = if d < s {
            let (a, b) = self.data.split_at_mut(s);
            (&mut a[d..d + self.wpr], &b[..self.wpr])
        } else {
            let (a, b) = self.data.split_at_mut(d);
            (&mut b[..self.wpr], &a[s..s + self.wpr])
        };
        for k in 0..dst_row.len() {
            dst_row[k] |= src_row[k];
        }
    }

    /// True iff row `i` is entirely zero.
    pub fn row_is_zero(&self, i: usize) -> bool {
        self.data[i * self.wpr..(i + 1) * self.wpr]
            .iter()
            .all(|&w| w == 0)
    }

    /// Reduced row echelon form; columns are scanned left to right and the
    /// first available row with a 1 becomes the pivot.
    pub fn rref(mut self) -> F2Rref {
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for j in 0..self.cols {
            let mut found = None;
            for i in next..self.rows {
                if self.get(i, j) {
                    found = Some(i);
                    break;
                }
            }
            let Some(pi) = found else { continue };
            self.swap_rows(next, pi);
            for i in 0..self.rows {
                if i != next && self.get(i, j) {
                    self.xor_rows(i, next);
                }
            }
            pivots.push(j);
            next += 1;
            if next == self.rows {
                break;
            }
        }
        F2Rref { mat: self, pivots }
    }

    /// Matrix rank.
    pub fn rank(&self) -> usize {
        self.clone().rref().pivots.len()
    }

    /// Basis of the null space `{x : Mx = 0}`; each returned row is one basis
    /// vector (length `cols`), indexed by the free columns in increasing
    /// order.
    pub fn kernel_basis(&self) -> BitMat {
        let r = self.clone().rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in r.pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&j| pivot_of_col[j].is_none()).collect();
        let mut out = BitMat::zero(free.len(), self.cols);
        for (bi, &fj) in free.iter().enumerate() {
            out.set(bi, fj, true);
            for (row, &col) in r.pivots.iter().enumerate() {
                if r.mat.get(row, fj) {
                    out.set(bi, col, true);
                }
            }
        }
        out
    }

    /// Transposed matrix.
    pub fn transpose(&self) -> BitMat {
        let mut out = BitMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for k in 0..self.wpr {
                let mut w = self.data[i * self.wpr + k];
                while w != 0 {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    out.set(64 * k + b, i, true);
                }
            }
        }
        out
    }

    /// Matrix product (for verification-grade sizes).
    pub fn mul(&self, rhs: &BitMat) -> BitMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = BitMat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for w in 0..rhs.wpr {
                        out.data[i * out.wpr + w] ^= rhs.data[k * rhs.wpr + w];
                    }
                }
            }
        }
        out
    }
}

impl F2Rref {
    /// Reduces `v` (support indices) against the row space; returns the
    /// residual support, empty iff `v` lies in the row space.
    pub fn reduce(&self, v: &[usize]) -> Vec<usize> {
        let mut acc = vec![0u64; self.mat.wpr];
        for &j in v {
            acc[j / 64] ^= 1u64 << (j % 64);
        }
        for (row, &col) in self.pivots.iter().enumerate() {
            if acc[col / 64] & (1u64 << (col % 64)) != 0 {
                for k in 0..self.mat.wpr {
                    acc[k] ^= self.mat.data[row * self.mat.wpr + k];
                }
            }
        }
        let mut out = Vec::new();
        for (k, &w) in acc.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                out.push(64 * k + b);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rank_identity_and_singular() {
        let mut m = BitMat::zero(3, 3);
        for i in 0..3 {
            m.set(i, i, true);
        }
        assert_eq!(m.rank(), 3);
        let mut s = BitMat::zero(2, 3);
        s.set(0, 0, true);
        s.set(0, 1, true);
        s.set(1, 0, true);
        s.set(1, 1, true);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn kernel_is_killed_by_matrix() {
        // 2x4 with dependent columns.
        let m = BitMat::from_rows(2, 4, &[vec![0, 1, 2], vec![1, 2, 3]]);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 4 - m.rank());
        // Check M * x^T = 0 for each kernel row.
        for b in 0..k.rows() {
            for i in 0..m.rows() {
                let mut dot = false;
                for j in 0..m.cols() {
                    dot ^= m.get(i, j) && k.get(b, j);
                }
                assert!(!dot);
            }
        }
    }

    #[test]
    fn reduce_detects_row_space_membership() {
        let m = BitMat::from_rows(2, 3, &[vec![0, 1], vec![1, 2]]);
        let r = m.rref();
        assert!(r.reduce(&[0, 2]).is_empty()); // (0,1)+(1,2) = (0,2)
        assert!(!r.reduce(&[0]).is_empty());
    }

    #[test]
    fn row_is_zero_sees_full_row() {
        let mut m = BitMat::zero(2, 100);
        m.set(1, 99, true);
        assert!(m.row_is_zero(0));
        assert!(!m.row_is_zero(1));
    }
}
