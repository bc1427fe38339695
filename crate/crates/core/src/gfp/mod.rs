//! Coefficient rings of geometric fixed points for elementary abelian
//! groups, three independent views kept in agreement:
//!
//! * closed-form Poincare series ([`series`]),
//! * finite presentations with per-degree exact linear algebra
//!   ([`presentation`]), including the degree-raising Bockstein and the
//!   integral (kernel-of-Bockstein) forms,
//! * a localized polynomial model that certifies the presentations by
//!   clearing denominators ([`model`]).
//!
//! Every dimension is computed at least twice along routes that share no
//! code, which is the point: agreement is evidence, not tautology.

pub mod model;
pub mod presentation;
pub mod series;

pub use model::{verify_presentation_in_model, PolyExt};
pub use presentation::{PresentedGradedRing, RingForm};
pub use series::{poincare_integral, poincare_mod_p, PoincareSeries};
