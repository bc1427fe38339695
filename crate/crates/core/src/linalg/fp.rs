//! Dense matrices over a prime field F_p, one byte per entry (p < 256).

use super::int::IntMat;
use alloc::vec;
use alloc::vec::Vec;

/// Row-major matrix over F_p with entries in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Reduced row echelon form over F_p.
pub struct FpRref {
    /// The reduced matrix with unit leading entries.
    pub mat: FpMat,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat; p is prime and a != 0 mod p.
    let mut r: u64 = 1;
    let mut b: u64 = u64::from(a % p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % u64::from(p);
        }
        b = b * b % u64::from(p);
        e >>= 1;
    }
    r as u32
}

impl FpMat {
    /// Zero matrix.
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        assert!(p >= 2 && p < 256, "field characteristic must fit in a byte");
        FpMat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Reduction of an integer matrix mod `p`.
    pub fn from_int(m: &IntMat, p: u32) -> Self {
        let mut out = Self::zero(p, m.rows(), m.cols());
        for (j, col) in m.columns().iter().enumerate() {
            for &(i, v) in col {
                let r = v.rem_euclid(i64::from(p)) as u32;
                out.set(i, j, r);
            }
        }
        out
    }

    /// Field characteristic.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry in `0..p`.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        u32::from(self.data[i * self.cols + j])
    }

    /// Sets an entry (reduced mod p).
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = (v % self.p) as u8;
    }

    /// Adds `v` into an entry.
    pub fn add_at(&mut self, i: usize, j: usize, v: u32) {
        let cur = self.get(i, j);
        self.set(i, j, (cur + v % self.p) % self.p);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row[dst] += c * row[src]
    fn add_mul_row(&mut self, dst: usize, src: usize, c: u32) {
        if c == 0 {
            return;
        }
        for j in 0..self.cols {
            let s = u32::from(self.data[src * self.cols + j]);
            if s != 0 {
                let d = u32::from(self.data[dst * self.cols + j]);
                self.data[dst * self.cols + j] = ((d + c * s) % self.p) as u8;
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: u32) {
        for j in 0..self.cols {
            let v = u32::from(self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = (v * c % self.p) as u8;
        }
    }

    /// Reduced row echelon form; canonical pivoting as in the F2 path.
    pub fn rref(mut self) -> FpRref {
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for j in 0..self.cols {
            let mut found = None;
            for i in next..self.rows {
                if self.get(i, j) != 0 {
                    found = Some(i);
                    break;
                }
            }
            let Some(pi) = found else { continue };
            self.swap_rows(next, pi);
            let inv = inv_mod(self.get(next, j), self.p);
            self.scale_row(next, inv);
            for i in 0..self.rows {
                if i != next {
                    let c = self.get(i, j);
                    if c != 0 {
                        self.add_mul_row(i, next, self.p - c);
                    }
                }
            }
            pivots.push(j);
            next += 1;
            if next == self.rows {
                break;
            }
        }
        FpRref { mat: self, pivots }
    }

    /// Matrix rank.
    pub fn rank(&self) -> usize {
        self.clone().rref().pivots.len()
    }

    /// Basis of the null space `{x : Mx = 0}`, one vector per row.
    pub fn kernel_basis(&self) -> FpMat {
        let r = self.clone().rref();
        let mut pivot_of_col = vec![None; self.cols];
        for (row, &col) in r.pivots.iter().enumerate() {
            pivot_of_col[col] = Some(row);
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| pivot_of_col[j].is_none()).collect();
        let mut out = FpMat::zero(self.p, free.len(), self.cols);
        for (bi, &fj) in free.iter().enumerate() {
            out.set(bi, fj, 1);
            for (row, &col) in r.pivots.iter().enumerate() {
                let c = r.mat.get(row, fj);
                if c != 0 {
                    out.set(bi, col, self.p - c);
                }
            }
        }
        out
    }

    /// Matrix product.
    pub fn mul(&self, rhs: &FpMat) -> FpMat {
        assert_eq!(self.cols, rhs.rows);
        assert_eq!(self.p, rhs.p);
        let mut out = FpMat::zero(self.p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    for j in 0..rhs.cols {
                        let b = rhs.get(k, j);
                        if b != 0 {
                            out.add_at(i, j, a * b % self.p);
                        }
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![0u32; self.rows];
        for i in 0..self.rows {
            let mut acc: u64 = 0;
            for j in 0..self.cols {
                acc += u64::from(self.get(i, j)) * u64::from(v[j] % self.p);
            }
            out[i] = (acc % u64::from(self.p)) as u32;
        }
        out
    }

    /// True iff every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&b| b == 0)
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Transposed copy.
    pub fn transpose(&self) -> FpMat {
        let mut out = FpMat::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if v != 0 {
                    out.set(j, i, v);
                }
            }
        }
        out
    }

    /// Inverse of a nonzero scalar mod the prime `p`.
    pub fn scalar_inverse(a: u32, p: u32) -> u32 {
        debug_assert!(a % p != 0);
        let mut acc = 1u64;
        let mut base = u64::from(a % p);
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % u64::from(p);
            }
            base = base * base % u64::from(p);
            e >>= 1;
        }
        acc as u32
    }
}

/// Repeated exact solving of `A c = w` for a fixed `A` over F_p.
///
/// Construction row-reduces the transpose augmented with an identity block,
/// so each query is one elimination pass that also recovers coefficients.
pub struct FpSolver {
    m: usize,
    k: usize,
    rref: FpRref,
}

impl FpSolver {
    /// Prepares a solver for the column space of `a`.
    pub fn new(a: &FpMat) -> FpSolver {
        let (m, k, p) = (a.rows, a.cols, a.p);
        let mut aug = FpMat::zero(p, k, m + k);
        for i in 0..k {
            for r in 0..m {
                aug.set(i, r, a.get(r, i));
            }
            aug.set(i, m + i, 1);
        }
        FpSolver {
            m,
            k,
            rref: aug.rref(),
        }
    }

    /// Finds `c` with `A c = w`, or `None` if `w` is outside the column
    /// space. When columns of `A` are dependent one valid solution is
    /// returned.
    pub fn solve(&self, w: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(w.len(), self.m, "target length mismatch");
        let p = self.rref.mat.p;
        let mut acc: Vec<u32> = w.iter().map(|&x| x % p).collect();
        let mut lambda: Vec<u32> = alloc::vec![0; self.rref.pivots.len()];
        for (row, &col) in self.rref.pivots.iter().enumerate() {
            // Rows whose pivot falls in the identity block have zero
            // left part and cannot reduce the target further.
            if col >= self.m {
                break;
            }
            let c = acc[col];
            if c != 0 {
                lambda[row] = c;
                for j in 0..self.m {
                    let s = self.rref.mat.get(row, j);
                    if s != 0 {
                        acc[j] = (acc[j] + (p - c) * s) % p;
                    }
                }
            }
        }
        if acc.iter().any(|&x| x != 0) {
            return None;
        }
        let mut out = alloc::vec![0u32; self.k];
        for (row, &l) in lambda.iter().enumerate() {
            if l != 0 {
                for j in 0..self.k {
                    let t = self.rref.mat.get(row, self.m + j);
                    if t != 0 {
                        out[j] = (out[j] + l * t) % p;
                    }
                }
            }
        }
        Some(out)
    }
}

impl FpRref {
    /// Reduces `v` against the row space; returns the residual, all-zero iff
    /// `v` lies in the row space.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.mat.p;
        let mut acc: Vec<u32> = v.iter().map(|&x| x % p).collect();
        for (row, &col) in self.pivots.iter().enumerate() {
            let c = acc[col];
            if c != 0 {
                for j in 0..self.mat.cols {
                    let s = self.mat.get(row, j);
                    if s != 0 {
                        acc[j] = (acc[j] + (p - c) * s) % p;
                    }
                }
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_table() {
        for p in [3u32, 5, 7, 251] {
            for a in 1..p.min(40) {
                assert_eq!(a * inv_mod(a, p) % p, 1, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn solver_finds_and_rejects() {
        // Columns (1,2,0), (0,1,1) over F_5.
        let mut a = FpMat::zero(5, 3, 2);
        a.set(0, 0, 1);
        a.set(1, 0, 2);
        a.set(1, 1, 1);
        a.set(2, 1, 1);
        let s = FpSolver::new(&a);
        // 3*(1,2,0) + 4*(0,1,1) = (3, 10, 4) = (3, 0, 4) mod 5.
        let c = s.solve(&[3, 0, 4]).unwrap();
        assert_eq!(c, vec![3, 4]);
        assert!(s.solve(&[1, 0, 0]).is_none());
        // Dependent columns still solve consistently.
        let mut b = FpMat::zero(5, 2, 3);
        b.set(0, 0, 1);
        b.set(0, 1, 2);
        b.set(1, 2, 1);
        let s2 = FpSolver::new(&b);
        let c2 = s2.solve(&[4, 3]).unwrap();
        assert_eq!((c2[0] + 2 * c2[1]) % 5, 4);
        assert_eq!(c2[2] % 5, 3);
    }

    #[test]
    fn rank_and_kernel_mod_3() {
        // Columns (1,1), (2,2), (1,0): rank 2 over F3.
        let mut m = FpMat::zero(3, 2, 3);
        m.set(0, 0, 1);
        m.set(1, 0, 1);
        m.set(0, 1, 2);
        m.set(1, 1, 2);
        m.set(0, 2, 1);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 1);
        for b in 0..k.rows() {
            let v: Vec<u32> = (0..k.cols()).map(|j| k.get(b, j)).collect();
            assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn rref_agrees_with_f2_on_mod2_input() {
        use super::super::f2::BitMat;
        let cols = alloc::vec![
            alloc::vec![(0usize, 1i64), (1, 1)],
            alloc::vec![(1, 1), (2, 1)],
            alloc::vec![(0, 1), (2, 1)],
        ];
        let m = IntMat::from_columns(3, cols);
        assert_eq!(FpMat::from_int(&m, 2).rank(), BitMat::from_int(&m).rank());
    }
}
