//! Exact linear algebra: F2 on bitset rows, general F_p on byte rows, and
//! integer matrices with arbitrary-precision Smith normal form.
//!
//! Pivoting is canonical everywhere (scan columns left to right, take the
//! first eligible row), so every rank, kernel basis, and normal form is a
//! deterministic function of the input.

mod f2;
mod fp;
mod int;

pub use f2::{BitMat, F2Rref};
pub use fp::{FpMat, FpRref, FpSolver};
pub use int::{bareiss_det, BigMat, IntMat, Snf};

use crate::error::Result;
use crate::limits::Limits;

/// Rank of an integer matrix reduced mod `p` (prime). Dispatches to the
/// bitset path for `p = 2`.
pub fn rank_mod(m: &IntMat, p: u32) -> usize {
    if p == 2 {
        BitMat::from_int(m).rank()
    } else {
        FpMat::from_int(m, p).rank()
    }
}

/// Kernel dimension of an integer matrix mod `p`.
pub fn nullity_mod(m: &IntMat, p: u32) -> usize {
    m.cols() - rank_mod(m, p)
}

/// Smith normal form through the configured size cap.
pub fn smith_normal_form(m: &IntMat, limits: &Limits) -> Result<Snf> {
    limits.check_snf(m.rows(), m.cols())?;
    Ok(int::smith(m))
}
