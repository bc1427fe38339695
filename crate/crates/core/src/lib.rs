//! Exact equivariant homology for finite groups at desk scale.
//!
//! Everything here is exact: F2 linear algebra on bitset rows, general F_p on
//! byte rows, integer work through arbitrary-precision Smith normal form. No
//! floats, no randomized algorithms in the computational path, and all
//! iteration orders are canonical so a given input always produces the same
//! output bytes.
//!
//! The main pipelines:
//!
//! * [`group`] / [`family`]: finite groups as multiplication tables (order at
//!   most 256), subgroup enumeration, Weyl groups, families closed under
//!   subgroups and conjugation, heights, and the gcd-of-indices vanishing
//!   certificate for groups that are not p-groups.
//! * [`poset`]: finite posets with a group action, order complexes, and
//!   monotone-retraction checks.
//! * [`chain`] / [`linalg`]: chain complexes with integer boundaries and
//!   homology over F_p, Z, and Z/m (Smith normal form with recorded
//!   unimodular transforms).
//! * [`modules`] / [`resolution`]: permutation and matrix modules over group
//!   algebras, minimal free resolutions, group homology, and Borel
//!   hyperhomology of a complex of modules.
//! * [`bredon`]: G-simplicial complexes, fixed-point subcomplexes, isotropy
//!   strata, Bredon homology of the constant coefficient system by two
//!   independent routes (orbit-category coend vs stratumwise coinvariants),
//!   Bredon cohomology via the quotient complex, and the isotropy filtration
//!   E1 table in both stratum and nerve forms, including the geometric
//!   fixed-point coefficient sequence `phi_coefficients`.
//! * [`gfp`]: presented graded rings for the geometric-fixed-point
//!   coefficients of cyclic groups of prime order, their localized models,
//!   Poincare series, and the Bockstein differential with its integral-form
//!   checks.
//! * [`extraspecial`]: extraspecial 2-groups built from a split quadratic
//!   form, decorated isotropic-subspace posets and their homology, the
//!   dimension recursion, and both sides of the degree-concentration
//!   statement for the multiplicative-sphere family.
//!
//! The crate is `no_std`-compatible (with `alloc`); the companion `equihom`
//! crate carries the CLI and file formats.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod bitset;
pub mod bredon;
pub mod chain;
pub mod error;
pub mod extraspecial;
pub mod family;
pub mod fixtures;
pub mod gfp;
pub mod group;
pub mod limits;
pub mod linalg;
pub mod modules;
pub mod poset;
pub mod resolution;

pub use error::{Error, Result};
pub use limits::Limits;
