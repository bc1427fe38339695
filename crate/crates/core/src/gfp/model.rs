//! Localized polynomial model for the mod-p presentations.
//!
//! The ambient ring is F_p[z_1..z_n] tensor an exterior algebra on
//! dz_1..dz_n (for p = 2 the exterior part is unused and z plays the
//! degree-one class). Every nonzero vector a of (Z/p)^n has linear forms
//! z_a and dz_a with coordinate coefficients, and the presented generators
//! map to fractions: t goes to 1/z_a, u goes to dz_a/z_a, y goes to 1/z_a.
//! Multiplying a degree-d monomial image by the common denominator (the
//! product of every line's z-form to the d-th power) lands in the
//! polynomial ring, so exactness of relations and linear independence can
//! be read off from honest polynomials.

use crate::error::{Error, Result};
use crate::gfp::presentation::{rank_rows, PresentedGradedRing, RingForm};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

/// An element of F_p[z_1..z_n] tensor Lambda[dz_1..dz_n]: terms keyed by
/// (exterior bitmask, z exponents), coefficients reduced mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyExt {
    p: u32,
    n: usize,
    terms: BTreeMap<(u64, Vec<u8>), u32>,
}

impl PolyExt {
    /// The zero element.
    pub fn zero(p: u32, n: usize) -> PolyExt {
        PolyExt {
            p,
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative unit.
    pub fn one(p: u32, n: usize) -> PolyExt {
        let mut e = PolyExt::zero(p, n);
        e.terms.insert((0, vec![0; n]), 1);
        e
    }

    /// The linear form with the given z coefficients.
    pub fn z_form(p: u32, coeffs: &[u32]) -> PolyExt {
        let n = coeffs.len();
        let mut e = PolyExt::zero(p, n);
        for (i, &c) in coeffs.iter().enumerate() {
            if c % p != 0 {
                let mut exps = vec![0u8; n];
                exps[i] = 1;
                e.terms.insert((0, exps), c % p);
            }
        }
        e
    }

    /// The linear form with the given dz coefficients.
    pub fn dz_form(p: u32, coeffs: &[u32]) -> PolyExt {
        let n = coeffs.len();
        let mut e = PolyExt::zero(p, n);
        for (i, &c) in coeffs.iter().enumerate() {
            if c % p != 0 {
                e.terms.insert((1u64 << i, vec![0; n]), c % p);
            }
        }
        e
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Whether this is the zero element.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of two elements.
    pub fn add(&self, rhs: &PolyExt) -> PolyExt {
        assert!(self.p == rhs.p && self.n == rhs.n, "mixed ambient rings");
        let mut out = self.clone();
        for (k, &c) in &rhs.terms {
            let e = out.terms.entry(k.clone()).or_insert(0);
            *e = (*e + c) % self.p;
        }
        out.terms.retain(|_, c| *c != 0);
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, c: u32) -> PolyExt {
        let c = c % self.p;
        let mut out = PolyExt::zero(self.p, self.n);
        if c == 0 {
            return out;
        }
        for (k, &v) in &self.terms {
            out.terms.insert(k.clone(), v * c % self.p);
        }
        out
    }

    /// Product, with the Koszul sign on merged exterior parts; a repeated
    /// dz kills the term.
    pub fn mul(&self, rhs: &PolyExt) -> PolyExt {
        assert!(self.p == rhs.p && self.n == rhs.n, "mixed ambient rings");
        let p = self.p;
        let mut out = PolyExt::zero(p, self.n);
        for ((ma, ea), &ca) in &self.terms {
            for ((mb, eb), &cb) in &rhs.terms {
                if ma & mb != 0 {
                    continue;
                }
                let mut inv = 0u32;
                let mut bits = *ma;
                while bits != 0 {
                    let i = bits.trailing_zeros();
                    bits &= bits - 1;
                    inv += (mb & ((1u64 << i) - 1)).count_ones();
                }
                let sign = if inv % 2 == 0 { 1 } else { p - 1 };
                let exps: Vec<u8> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                let key = (ma | mb, exps);
                let e = out.terms.entry(key).or_insert(0);
                *e = (*e + ca * cb % p * sign) % p;
            }
        }
        out.terms.retain(|_, c| *c != 0);
        out
    }

    /// Terms in a fixed order, for building coordinate vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&(u64, Vec<u8>), u32)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }
}

/// Coordinates of a nonzero vector index, least significant digit first.
fn digits(p: u32, n: usize, v: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(n);
    let mut v = v;
    for _ in 0..n {
        out.push((v % p as usize) as u32);
        v /= p as usize;
    }
    out
}

/// The image of one degree-d basis monomial after clearing denominators at
/// level d: every line's z-form is raised to d minus the exponent the
/// monomial actually uses on that line.
pub(super) fn cleared_monomial(
    ring: &PresentedGradedRing,
    reps: &[usize],
    mono: &(Vec<u8>, u64),
    d: usize,
) -> PolyExt {
    let (p, n) = (ring.p(), ring.n());
    let mut acc = PolyExt::one(p, n);
    let (poly, ext) = mono;
    if p == 2 {
        for (k, &rep) in reps.iter().enumerate() {
            let form = PolyExt::z_form(p, &digits(p, n, rep));
            let e = usize::from(poly[k]);
            for _ in 0..d - e {
                acc = acc.mul(&form);
            }
        }
    } else {
        // dz factors first, ascending line order, matching the exterior
        // normal form of the presentation.
        for (k, &rep) in reps.iter().enumerate() {
            if ext & (1u64 << k) != 0 {
                acc = acc.mul(&PolyExt::dz_form(p, &digits(p, n, rep)));
            }
        }
        for (k, &rep) in reps.iter().enumerate() {
            let form = PolyExt::z_form(p, &digits(p, n, rep));
            let used = usize::from(poly[k]) + usize::from(ext & (1u64 << k) != 0);
            for _ in 0..d - used {
                acc = acc.mul(&form);
            }
        }
    }
    acc
}

/// Checks the mod-p presentation against the localized model and reports
/// the model's graded dimensions.
///
/// Every instantiated relation must clear to the exact zero polynomial;
/// anything else is an internal error. The returned vector holds, for each
/// degree through `top`, the rank of the cleared monomial images, which
/// callers compare against the presented dimensions.
pub fn verify_presentation_in_model(
    ring: &PresentedGradedRing,
    top: usize,
) -> Result<Vec<usize>> {
    if ring.form() != RingForm::ModP {
        return Err(Error::precondition(
            "the localized model covers the mod-p form",
        ));
    }
    let p = ring.p();
    let reps: Vec<usize> = ring.line_representatives().to_vec();
    for rel in ring.canonical_relations() {
        let mut image = PolyExt::zero(p, ring.n());
        for (mono, c) in &rel.terms {
            image = image.add(&cleared_monomial(ring, &reps, mono, rel.degree).scale(*c));
        }
        if !image.is_zero() {
            return Err(Error::internal(
                "a relation does not clear to zero in the localized model",
            ));
        }
    }
    let mut dims = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let monos = ring.monomials(d);
        let images: Vec<PolyExt> = monos
            .iter()
            .map(|m| cleared_monomial(ring, &reps, m, d))
            .collect();
        let mut index: BTreeMap<(u64, Vec<u8>), usize> = BTreeMap::new();
        for img in &images {
            for (key, _) in img.terms() {
                let next = index.len();
                index.entry(key.clone()).or_insert(next);
            }
        }
        let rows: Vec<Vec<(usize, u32)>> = images
            .iter()
            .map(|img| img.terms().map(|(k, c)| (index[k], c)).collect())
            .collect();
        dims.push(rank_rows(p, index.len(), &rows));
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::presentation::{PresentedGradedRing, RingForm};

    #[test]
    fn exterior_part_anticommutes() {
        let a = PolyExt::dz_form(3, &[1, 0]);
        let b = PolyExt::dz_form(3, &[0, 1]);
        let ab = a.mul(&b);
        let ba = b.mul(&a);
        assert_eq!(ab.add(&ba).term_count(), 0);
        assert!(a.mul(&a).is_zero());
        // (dz1 + dz2)^2 = 0 as well.
        let s = a.add(&b);
        assert!(s.mul(&s).is_zero());
    }

    #[test]
    fn z_forms_add_coordinatewise() {
        let a = PolyExt::z_form(2, &[1, 0, 1]);
        let b = PolyExt::z_form(2, &[1, 1, 0]);
        let sum = a.add(&b);
        assert_eq!(sum, PolyExt::z_form(2, &[0, 1, 1]));
        let sq = sum.mul(&sum);
        // Freshman's dream over F_2.
        assert_eq!(sq.term_count(), 2);
    }

    #[test]
    fn model_ranks_match_presented_dimensions() {
        for (p, n) in [(2u32, 1usize), (2, 2), (3, 1), (3, 2)] {
            let ring = PresentedGradedRing::new(p, n, RingForm::ModP).unwrap();
            let model_dims = verify_presentation_in_model(&ring, 6).unwrap();
            assert_eq!(model_dims, ring.graded_dims_through(6), "p={} n={}", p, n);
        }
    }

    #[test]
    fn model_rejects_the_integral_form() {
        let ring = PresentedGradedRing::new(2, 2, RingForm::Integral).unwrap();
        assert!(matches!(
            verify_presentation_in_model(&ring, 3),
            Err(Error::Precondition(_))
        ));
    }
}
