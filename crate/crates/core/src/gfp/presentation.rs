//! Presented fixed-point coefficient rings and their graded dimensions.
//!
//! Generators are indexed by nonzero vectors of (Z/p)^n, one representative
//! per scalar line (for p = 2 every nonzero vector is its own line). Odd p
//! gives a polynomial generator t and an exterior generator u per line;
//! p = 2 gives polynomial y generators of degree one. Relations are
//! instantiated over all vector triples (a, b, a+b) with every member
//! nonzero, canonicalized through the line identifications, and
//! deduplicated. Dimensions come from per-degree linear algebra: monomial
//! count minus the rank of all relation multiples, never from a rewriting
//! system.
//!
//! The integral forms adjoin the paper's extra degree-one relation killing
//! the distinguished-line generator (and, for p = 2, the degree-two
//! generator playing the square of the distinguished y).

use crate::error::{Error, Result};
use crate::gfp::series::check_parameters;
use crate::linalg::{BitMat, F2Rref, FpMat, FpRref};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

/// Which coefficient ring a presentation describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingForm {
    /// Coefficients Z/p.
    ModP,
    /// Coefficients Z; characteristic p, described by kernel-of-Bockstein
    /// generators.
    Integral,
}

/// A monomial: polynomial exponents per polynomial generator, one bit per
/// exterior generator.
pub(super) type Monomial = (Vec<u8>, u64);

/// One side-condition of the ring: a homogeneous combination of monomials.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(super) struct Relation {
    pub(super) degree: usize,
    /// Sorted by monomial; leading coefficient normalized to 1.
    pub(super) terms: Vec<(Monomial, u32)>,
}

/// Componentwise sum of vector indices (digits base p).
fn vec_add(p: u32, n: usize, a: usize, b: usize) -> usize {
    let (p, mut out, mut pw) = (p as usize, 0usize, 1usize);
    let (mut a, mut b) = (a, b);
    for _ in 0..n {
        out += ((a + b) % p) * pw;
        a /= p;
        b /= p;
        pw *= p;
    }
    out
}

/// Scalar multiple of a vector index.
fn vec_scale(p: u32, n: usize, s: u32, a: usize) -> usize {
    let (p, s) = (p as usize, s as usize);
    let (mut out, mut pw, mut a) = (0usize, 1usize, a);
    for _ in 0..n {
        out += ((a % p) * s % p) * pw;
        a /= p;
        pw *= p;
    }
    out
}

/// A presented graded ring: p = 2 is polynomial on y generators; odd p is
/// polynomial on t generators tensor exterior on u generators.
#[derive(Debug, Clone)]
pub struct PresentedGradedRing {
    p: u32,
    n: usize,
    form: RingForm,
    /// Degree of each polynomial generator.
    poly_degrees: Vec<usize>,
    poly_names: Vec<String>,
    ext_names: Vec<String>,
    relations: Vec<Relation>,
    /// Line data: representative vector per line, and for every nonzero
    /// vector its (line, scalar) with vector = scalar * representative.
    line_reps: Vec<usize>,
    line_of: BTreeMap<usize, (usize, u32)>,
}

/// Scalar-line decomposition of the nonzero vectors.
fn lines(p: u32, n: usize) -> (Vec<usize>, BTreeMap<usize, (usize, u32)>) {
    let total = (p as usize).pow(n as u32);
    let mut reps = Vec::new();
    let mut line_of = BTreeMap::new();
    for v in 1..total {
        if line_of.contains_key(&v) {
            continue;
        }
        let idx = reps.len();
        reps.push(v);
        for s in 1..p {
            line_of.insert(vec_scale(p, n, s, v), (idx, s));
        }
    }
    (reps, line_of)
}

fn vec_name(p: u32, n: usize, v: usize) -> String {
    let mut digits = Vec::with_capacity(n);
    let mut v = v;
    for _ in 0..n {
        digits.push((v % p as usize).to_string());
        v /= p as usize;
    }
    digits.join("")
}

/// Raw factor of an instantiated relation term, before canonicalization.
/// `T`/`U`/`Y` take a nonzero vector index; `P` addresses a polynomial
/// generator slot directly.
#[derive(Clone, Copy)]
enum Factor {
    T(usize),
    U(usize),
    Y(usize),
    P(usize),
}

impl PresentedGradedRing {
    /// Builds the presentation for the given prime, rank, and form.
    pub fn new(p: u32, n: usize, form: RingForm) -> Result<PresentedGradedRing> {
        check_parameters(p, n)?;
        let (line_reps, line_of) = lines(p, n);
        let mut ring = if p == 2 {
            let m = line_reps.len();
            let mut poly_names: Vec<String> =
                (0..m).map(|i| format!("y{}", vec_name(p, n, i + 1))).collect();
            let mut poly_degrees = vec![1usize; m];
            if form == RingForm::Integral {
                for name in poly_names.iter_mut() {
                    name.insert(0, '~');
                }
                poly_names.push(String::from("t0"));
                poly_degrees.push(2);
            }
            PresentedGradedRing {
                p,
                n,
                form,
                poly_degrees,
                poly_names,
                ext_names: Vec::new(),
                relations: Vec::new(),
                line_reps,
                line_of,
            }
        } else {
            let m = line_reps.len();
            let poly_names = (0..m)
                .map(|i| format!("t{}", vec_name(p, n, line_reps[i])))
                .collect();
            let u_prefix = if form == RingForm::Integral { "~u" } else { "u" };
            let ext_names = (0..m)
                .map(|i| format!("{}{}", u_prefix, vec_name(p, n, line_reps[i])))
                .collect();
            PresentedGradedRing {
                p,
                n,
                form,
                poly_degrees: vec![2usize; m],
                poly_names,
                ext_names,
                relations: Vec::new(),
                line_reps,
                line_of,
            }
        };
        ring.instantiate_relations();
        Ok(ring)
    }

    /// Coefficient prime.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Rank of the elementary abelian group.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Which form this is.
    pub fn form(&self) -> RingForm {
        self.form
    }

    /// Polynomial generator names with degrees.
    pub fn polynomial_generators(&self) -> Vec<(String, usize)> {
        self.poly_names
            .iter()
            .cloned()
            .zip(self.poly_degrees.iter().copied())
            .collect()
    }

    /// Exterior generator names (all degree one).
    pub fn exterior_generators(&self) -> Vec<String> {
        self.ext_names.clone()
    }

    /// Number of distinct instantiated relations.
    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    /// Line representative vectors, in line order.
    pub(super) fn line_representatives(&self) -> &[usize] {
        &self.line_reps
    }

    /// The instantiated relations.
    pub(super) fn canonical_relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Relations rendered for reports, constant term first.
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| self.render(r)).collect()
    }

    fn render(&self, rel: &Relation) -> String {
        let mut out = String::new();
        for (i, ((poly, ext), c)) in rel.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            if *c != 1 {
                out.push_str(&format!("{}*", c));
            }
            let mut any = false;
            for (k, &e) in poly.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if any {
                    out.push('.');
                }
                any = true;
                out.push_str(&self.poly_names[k]);
                if e > 1 {
                    out.push_str(&format!("^{}", e));
                }
            }
            for (k, name) in self.ext_names.iter().enumerate() {
                if ext & (1u64 << k) != 0 {
                    if any {
                        out.push('.');
                    }
                    any = true;
                    out.push_str(name);
                }
            }
            if !any {
                out.push('1');
            }
        }
        out
    }

    /// Canonical term from raw factors: line identifications applied,
    /// exterior part sorted with its Koszul sign, zero on a repeated
    /// exterior generator.
    fn term_from_factors(&self, coeff: i64, factors: &[Factor]) -> Option<(Monomial, u32)> {
        let p = i64::from(self.p);
        let mut c = coeff.rem_euclid(p) as u32;
        let mut poly = vec![0u8; self.poly_degrees.len()];
        let mut ext_seq: Vec<usize> = Vec::new();
        for &f in factors {
            match f {
                Factor::T(v) => {
                    let &(line, s) = self.line_of.get(&v).expect("nonzero vector");
                    // t_{s a} = s^{-1} t_a.
                    c = (c * FpMat::scalar_inverse(s, self.p)) % self.p;
                    poly[line] += 1;
                }
                Factor::U(v) => {
                    let &(line, _) = self.line_of.get(&v).expect("nonzero vector");
                    ext_seq.push(line);
                }
                Factor::Y(v) => {
                    poly[v - 1] += 1;
                }
                Factor::P(k) => {
                    poly[k] += 1;
                }
            }
        }
        if c == 0 {
            return None;
        }
        // Sort the exterior sequence, tracking sign; a repeat kills the term.
        let mut sign = 1i64;
        for i in 1..ext_seq.len() {
            let mut j = i;
            while j > 0 && ext_seq[j - 1] > ext_seq[j] {
                ext_seq.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        let mut ext = 0u64;
        for &k in &ext_seq {
            if ext & (1u64 << k) != 0 {
                return None;
            }
            ext |= 1u64 << k;
        }
        let c = (i64::from(c) * sign).rem_euclid(p) as u32;
        Some(((poly, ext), c))
    }

    fn push_relation(
        &self,
        set: &mut BTreeSet<Relation>,
        raw: &[(i64, Vec<Factor>)],
    ) {
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (coeff, factors) in raw {
            if let Some((mono, c)) = self.term_from_factors(*coeff, factors) {
                let e = acc.entry(mono).or_insert(0);
                *e = (*e + c) % self.p;
            }
        }
        acc.retain(|_, c| *c != 0);
        if acc.is_empty() {
            return;
        }
        let degree = {
            let (poly, ext) = acc.keys().next().expect("nonempty");
            let pd: usize = poly
                .iter()
                .zip(&self.poly_degrees)
                .map(|(&e, &d)| e as usize * d)
                .sum();
            pd + ext.count_ones() as usize
        };
        // Normalize the leading coefficient to 1 so scalar multiples
        // deduplicate.
        let lead = *acc.values().next().expect("nonempty");
        let inv = FpMat::scalar_inverse(lead, self.p);
        let terms: Vec<(Monomial, u32)> = acc
            .into_iter()
            .map(|(m, c)| (m, c * inv % self.p))
            .collect();
        set.insert(Relation { degree, terms });
    }

    fn instantiate_relations(&mut self) {
        let total = (self.p as usize).pow(self.n as u32);
        let mut set: BTreeSet<Relation> = BTreeSet::new();
        if self.p == 2 {
            let m = self.line_reps.len();
            let integral = self.form == RingForm::Integral;
            if integral {
                // The distinguished generator is identified with zero.
                self.push_relation(&mut set, &[(1, vec![Factor::Y(1)])]);
            }
            for a in 1..total {
                for b in a + 1..total {
                    let g = vec_add(2, self.n, a, b);
                    if g == 0 || g <= b {
                        continue;
                    }
                    let mut raw = vec![
                        (1i64, vec![Factor::Y(a), Factor::Y(b)]),
                        (1, vec![Factor::Y(a), Factor::Y(g)]),
                        (1, vec![Factor::Y(b), Factor::Y(g)]),
                    ];
                    if integral {
                        // The degree-two generator sits past the y block.
                        raw.push((1, vec![Factor::P(m)]));
                    }
                    self.push_relation(&mut set, &raw);
                }
            }
        } else {
            for a in 1..total {
                for b in 1..total {
                    let ab = vec_add(self.p, self.n, a, b);
                    if ab == 0 {
                        continue;
                    }
                    // t_b t_{a+b} + t_a t_{a+b} - t_a t_b
                    self.push_relation(
                        &mut set,
                        &[
                            (1, vec![Factor::T(b), Factor::T(ab)]),
                            (1, vec![Factor::T(a), Factor::T(ab)]),
                            (-1, vec![Factor::T(a), Factor::T(b)]),
                        ],
                    );
                    // t_b u_{a+b} - t_{a+b} u_b + t_{a+b} u_a - t_b u_a
                    self.push_relation(
                        &mut set,
                        &[
                            (1, vec![Factor::T(b), Factor::U(ab)]),
                            (-1, vec![Factor::T(ab), Factor::U(b)]),
                            (1, vec![Factor::T(ab), Factor::U(a)]),
                            (-1, vec![Factor::T(b), Factor::U(a)]),
                        ],
                    );
                    // -u_b u_{a+b} + u_a u_{a+b} - u_a u_b
                    self.push_relation(
                        &mut set,
                        &[
                            (-1, vec![Factor::U(b), Factor::U(ab)]),
                            (1, vec![Factor::U(a), Factor::U(ab)]),
                            (-1, vec![Factor::U(a), Factor::U(b)]),
                        ],
                    );
                }
            }
            if self.form == RingForm::Integral {
                let rep0 = self.line_reps[0];
                self.push_relation(&mut set, &[(1, vec![Factor::U(rep0)])]);
            }
        }
        self.relations = set.into_iter().collect();
    }

    /// All monomials of one degree, in a fixed order.
    pub(super) fn monomials(&self, d: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let ext_count = self.ext_names.len();
        let mut masks: Vec<u64> = Vec::new();
        collect_masks(ext_count, d.min(ext_count), 0, 0, &mut masks);
        for mask in masks {
            let used = mask.count_ones() as usize;
            let mut exps = vec![0u8; self.poly_degrees.len()];
            self.fill_poly(d - used, 0, &mut exps, mask, &mut out);
        }
        out.sort();
        out
    }

    fn fill_poly(
        &self,
        remaining: usize,
        from: usize,
        exps: &mut Vec<u8>,
        mask: u64,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push((exps.clone(), mask));
            return;
        }
        if from == self.poly_degrees.len() {
            return;
        }
        let d = self.poly_degrees[from];
        let max = remaining / d;
        for e in 0..=max {
            exps[from] = e as u8;
            self.fill_poly(remaining - e * d, from + 1, exps, mask, out);
        }
        exps[from] = 0;
    }

    /// Number of degree-d monomials before relations.
    pub fn monomial_count(&self, d: usize) -> usize {
        self.monomials(d).len()
    }

    /// Product of a relation term with a monomial: `None` when the
    /// exterior parts collide; otherwise the combined monomial and the
    /// Koszul sign as a coefficient multiplier.
    fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, u32)> {
        if a.1 & b.1 != 0 {
            return None;
        }
        let poly: Vec<u8> = a.0.iter().zip(&b.0).map(|(&x, &y)| x + y).collect();
        // Inversions between the two ascending sequences.
        let mut inv = 0u32;
        let mut bits_a = a.1;
        while bits_a != 0 {
            let i = bits_a.trailing_zeros();
            bits_a &= bits_a - 1;
            inv += (b.1 & ((1u64 << i) - 1)).count_ones();
        }
        let sign = if inv % 2 == 0 { 1 } else { self.p - 1 };
        Some(((poly, a.1 | b.1), sign))
    }

    /// Rows spanning the degree-d relation subspace, over the degree-d
    /// monomial basis.
    pub(super) fn relation_rows(&self, d: usize) -> Vec<Vec<(usize, u32)>> {
        let index: BTreeMap<Monomial, usize> = self
            .monomials(d)
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut rows = Vec::new();
        for rel in &self.relations {
            if rel.degree > d {
                continue;
            }
            for mono in self.monomials(d - rel.degree) {
                let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
                for (tm, c) in &rel.terms {
                    if let Some((prod, sign)) = self.mul_monomials(tm, &mono) {
                        let col = index[&prod];
                        let e = acc.entry(col).or_insert(0);
                        *e = (*e + c * sign) % self.p;
                    }
                }
                acc.retain(|_, v| *v != 0);
                if !acc.is_empty() {
                    rows.push(acc.into_iter().collect());
                }
            }
        }
        rows
    }

    /// Dimension over F_p of the degree-d part of the presented ring.
    pub fn graded_dim(&self, d: usize) -> usize {
        let count = self.monomial_count(d);
        count - rank_rows(self.p, count, &self.relation_rows(d))
    }

    /// Dimensions in degrees `0..=top`.
    pub fn graded_dims_through(&self, top: usize) -> Vec<usize> {
        (0..=top).map(|d| self.graded_dim(d)).collect()
    }

    /// Bockstein image of one degree-d basis monomial, as a sparse vector
    /// over the degree-(d-1) monomial basis. Mod-p form only.
    pub fn bockstein_of_monomial(&self, d: usize, i: usize) -> Result<Vec<(usize, u32)>> {
        if self.form != RingForm::ModP {
            return Err(Error::precondition(
                "the Bockstein lives on the mod-p form",
            ));
        }
        if d == 0 {
            return Ok(Vec::new());
        }
        let monos = self.monomials(d);
        let below: BTreeMap<Monomial, usize> = self
            .monomials(d - 1)
            .into_iter()
            .enumerate()
            .map(|(k, m)| (m, k))
            .collect();
        let (poly, ext) = &monos[i];
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        if self.p == 2 {
            // beta(y) = 1 extended as a derivation; signs vanish mod 2.
            for (k, &e) in poly.iter().enumerate() {
                if e % 2 == 1 {
                    let mut dropped = poly.clone();
                    dropped[k] -= 1;
                    let col = below[&(dropped, *ext)];
                    let entry = acc.entry(col).or_insert(0);
                    *entry = (*entry + u32::from(e)) % 2;
                }
            }
        } else {
            // beta(t) = 0, beta(u) = 1; removing the r-th exterior factor
            // crosses r odd generators.
            let mut bits = *ext;
            let mut r = 0u32;
            while bits != 0 {
                let k = bits.trailing_zeros();
                bits &= bits - 1;
                let coeff = if r % 2 == 0 { 1 } else { self.p - 1 };
                let col = below[&(poly.clone(), ext & !(1u64 << k))];
                let entry = acc.entry(col).or_insert(0);
                *entry = (*entry + coeff) % self.p;
                r += 1;
            }
        }
        acc.retain(|_, v| *v != 0);
        Ok(acc.into_iter().collect())
    }

    /// Checks that the Bockstein of every relation lies back in the
    /// relation span; with the derivation rule this makes the induced map
    /// on the quotient well defined.
    pub fn bockstein_preserves_relations(&self) -> Result<()> {
        if self.form != RingForm::ModP {
            return Err(Error::precondition(
                "the Bockstein lives on the mod-p form",
            ));
        }
        for rel in &self.relations {
            if rel.degree == 0 {
                continue;
            }
            let d = rel.degree;
            let index: BTreeMap<Monomial, usize> = self
                .monomials(d)
                .into_iter()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect();
            let m_below = self.monomial_count(d - 1);
            let mut image: BTreeMap<usize, u32> = BTreeMap::new();
            for (mono, c) in &rel.terms {
                for (col, v) in self.bockstein_of_monomial(d, index[mono])? {
                    let e = image.entry(col).or_insert(0);
                    *e = (*e + c * v) % self.p;
                }
            }
            image.retain(|_, v| *v != 0);
            let vector: Vec<(usize, u32)> = image.into_iter().collect();
            let span = SpanChecker::new(self.p, m_below, &self.relation_rows(d - 1));
            if !span.contains(&vector) {
                return Err(Error::internal(format!(
                    "Bockstein leaves the relation span at degree {}",
                    d
                )));
            }
        }
        Ok(())
    }

    /// Rank data at one degree: (relation-span dimension, rank of the
    /// induced Bockstein out of the degree on the quotient).
    fn bockstein_degree_data(&self, d: usize) -> (usize, usize) {
        let count = self.monomial_count(d);
        let span_dim = rank_rows(self.p, count, &self.relation_rows(d));
        if d == 0 {
            return (span_dim, 0);
        }
        let m_below = self.monomial_count(d - 1);
        // Rank of (B(monomials) + V_{d-1}) / V_{d-1}.
        let mut rows = self.relation_rows(d - 1);
        let below_span = rank_rows(self.p, m_below, &rows);
        for i in 0..count {
            let img = self
                .bockstein_of_monomial(d, i)
                .expect("mod-p form enforced by callers");
            if !img.is_empty() {
                rows.push(img);
            }
        }
        let combined = rank_rows(self.p, m_below, &rows);
        (span_dim, combined - below_span)
    }

    /// Kernel dimensions of the induced Bockstein on the quotient ring,
    /// degrees `0..=top`.
    pub fn bockstein_kernel_dims(&self, top: usize) -> Result<Vec<usize>> {
        if self.form != RingForm::ModP {
            return Err(Error::precondition(
                "the Bockstein lives on the mod-p form",
            ));
        }
        let mut out = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let count = self.monomial_count(d);
            let (span_dim, rank_out) = self.bockstein_degree_data(d);
            out.push(count - rank_out - span_dim);
        }
        Ok(out)
    }

    /// Homology of the Bockstein on the quotient ring in degrees
    /// `0..=top`; the collapse statement says these all vanish.
    pub fn bockstein_homology_dims(&self, top: usize) -> Result<Vec<usize>> {
        if self.form != RingForm::ModP {
            return Err(Error::precondition(
                "the Bockstein lives on the mod-p form",
            ));
        }
        let mut out = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let count = self.monomial_count(d);
            let (span_dim, rank_out) = self.bockstein_degree_data(d);
            let kernel = count - rank_out - span_dim;
            let (_, rank_in) = self.bockstein_degree_data(d + 1);
            out.push(kernel - rank_in);
        }
        Ok(out)
    }

    /// Expands the image of one of this (integral) ring's monomials inside
    /// the mod-p ring, as a sparse vector over the mod-p monomial basis of
    /// the same degree. The substitution sends the shifted generators to
    /// differences against the distinguished line and the extra p = 2
    /// degree-two generator to the square of the distinguished y.
    fn integral_monomial_image(
        &self,
        modp: &PresentedGradedRing,
        mono: &Monomial,
        degree: usize,
    ) -> Vec<(usize, u32)> {
        let index: BTreeMap<Monomial, usize> = modp
            .monomials(degree)
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        // Accumulate as a map monomial -> coefficient, multiplying in one
        // generator image at a time.
        let width = modp.poly_degrees.len();
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        acc.insert((vec![0u8; width], 0u64), 1);
        let mul_in = |acc: &BTreeMap<Monomial, u32>,
                      image: &[(Monomial, u32)]|
         -> BTreeMap<Monomial, u32> {
            let mut next: BTreeMap<Monomial, u32> = BTreeMap::new();
            for (m1, c1) in acc {
                for (m2, c2) in image {
                    if let Some((prod, sign)) = modp.mul_monomials(m1, m2) {
                        let e = next.entry(prod).or_insert(0);
                        *e = (*e + c1 * c2 % modp.p * sign) % modp.p;
                    }
                }
            }
            next.retain(|_, v| *v != 0);
            next
        };
        let unit = |k: usize| -> Monomial {
            let mut e = vec![0u8; width];
            e[k] = 1;
            (e, 0)
        };
        let (poly, ext) = mono;
        for (k, &e) in poly.iter().enumerate() {
            for _ in 0..e {
                let image: Vec<(Monomial, u32)> = if self.p == 2 {
                    if k < self.line_reps.len() {
                        // ~y_a -> y_a + y_{a0}
                        vec![(unit(k), 1), (unit(0), 1)]
                    } else {
                        // t0 -> y_{a0}^2
                        let mut sq = vec![0u8; width];
                        sq[0] = 2;
                        vec![((sq, 0), 1)]
                    }
                } else {
                    // t passes through unchanged.
                    vec![(unit(k), 1)]
                };
                acc = mul_in(&acc, &image);
            }
        }
        let mut bits = *ext;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            // ~u_a -> u_a - u_{a0}
            let image = vec![
                ((vec![0u8; width], 1u64 << k), 1u32),
                ((vec![0u8; width], 1u64), self.p - 1),
            ];
            acc = mul_in(&acc, &image);
        }
        acc.into_iter().map(|(m, c)| (index[&m], c)).collect()
    }

    /// Verifies the integral presentation against the mod-p ring: every
    /// integral relation maps into the mod-p relation span, and every
    /// generator image has vanishing Bockstein on the quotient.
    pub fn verify_integral_images(&self, modp: &PresentedGradedRing) -> Result<()> {
        if self.form != RingForm::Integral
            || modp.form != RingForm::ModP
            || self.p != modp.p
            || self.n != modp.n
        {
            return Err(Error::precondition(
                "needs the integral form and its matching mod-p ring",
            ));
        }
        for rel in &self.relations {
            let d = rel.degree;
            let count = modp.monomial_count(d);
            let mut image: BTreeMap<usize, u32> = BTreeMap::new();
            for (mono, c) in &rel.terms {
                for (col, v) in self.integral_monomial_image(modp, mono, d) {
                    let e = image.entry(col).or_insert(0);
                    *e = (*e + c * v) % self.p;
                }
            }
            image.retain(|_, v| *v != 0);
            let vector: Vec<(usize, u32)> = image.into_iter().collect();
            let span = SpanChecker::new(self.p, count, &modp.relation_rows(d));
            if !span.contains(&vector) {
                return Err(Error::internal(format!(
                    "integral relation '{}' does not vanish in the mod-p ring",
                    self.render(rel)
                )));
            }
        }
        // Generator images: expand each generator as a degree-d monomial
        // image and push it through the Bockstein.
        let gen_monomials: Vec<(Monomial, usize)> = {
            let width = self.poly_degrees.len();
            let mut gens = Vec::new();
            for k in 0..width {
                let mut e = vec![0u8; width];
                e[k] = 1;
                gens.push(((e, 0u64), self.poly_degrees[k]));
            }
            for k in 0..self.ext_names.len() {
                gens.push(((vec![0u8; width], 1u64 << k), 1));
            }
            gens
        };
        for (mono, d) in gen_monomials {
            let image = self.integral_monomial_image(modp, &mono, d);
            if d == 0 {
                continue;
            }
            let m_below = modp.monomial_count(d - 1);
            let mut beta: BTreeMap<usize, u32> = BTreeMap::new();
            for (col, c) in &image {
                for (b, v) in modp.bockstein_of_monomial(d, *col)? {
                    let e = beta.entry(b).or_insert(0);
                    *e = (*e + c * v) % self.p;
                }
            }
            beta.retain(|_, v| *v != 0);
            let vector: Vec<(usize, u32)> = beta.into_iter().collect();
            let span = SpanChecker::new(self.p, m_below, &modp.relation_rows(d - 1));
            if !span.contains(&vector) {
                return Err(Error::internal(
                    "an integral generator image escapes the Bockstein kernel",
                ));
            }
        }
        Ok(())
    }
}

/// Subsets of `{0..count}` with at most `budget` elements, as bitmasks.
fn collect_masks(count: usize, budget: usize, from: usize, acc: u64, out: &mut Vec<u64>) {
    out.push(acc);
    if budget == 0 {
        return;
    }
    for k in from..count {
        collect_masks(count, budget - 1, k + 1, acc | (1u64 << k), out);
    }
}

/// Rank of a sparse row list over F_p; bit-packed for p = 2.
pub(super) fn rank_rows(p: u32, cols: usize, rows: &[Vec<(usize, u32)>]) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    if p == 2 {
        let support: Vec<Vec<usize>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .filter(|&&(_, c)| c % 2 == 1)
                    .map(|&(j, _)| j)
                    .collect()
            })
            .collect();
        BitMat::from_rows(rows.len(), cols, &support).rank()
    } else {
        let mut m = FpMat::zero(p, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for &(j, c) in row {
                m.add_at(i, j, c);
            }
        }
        m.rank()
    }
}

/// Row-span membership tests, bit-packed for p = 2. Queries arrive as
/// sparse coordinate vectors over the same column indexing as the rows.
pub(super) enum SpanChecker {
    F2 { rref: F2Rref },
    Fp { rref: FpRref, p: u32, cols: usize },
    Empty { p: u32 },
}

impl SpanChecker {
    pub(super) fn new(p: u32, cols: usize, rows: &[Vec<(usize, u32)>]) -> SpanChecker {
        if rows.is_empty() || cols == 0 {
            return SpanChecker::Empty { p };
        }
        if p == 2 {
            let support: Vec<Vec<usize>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .filter(|&&(_, c)| c % 2 == 1)
                        .map(|&(j, _)| j)
                        .collect()
                })
                .collect();
            SpanChecker::F2 {
                rref: BitMat::from_rows(rows.len(), cols, &support).rref(),
            }
        } else {
            let mut m = FpMat::zero(p, rows.len(), cols);
            for (i, row) in rows.iter().enumerate() {
                for &(j, c) in row {
                    m.add_at(i, j, c);
                }
            }
            SpanChecker::Fp {
                rref: m.rref(),
                p,
                cols,
            }
        }
    }

    pub(super) fn contains(&self, v: &[(usize, u32)]) -> bool {
        match self {
            SpanChecker::F2 { rref } => {
                let support: Vec<usize> = v
                    .iter()
                    .filter(|&&(_, c)| c % 2 == 1)
                    .map(|&(j, _)| j)
                    .collect();
                rref.reduce(&support).is_empty()
            }
            SpanChecker::Fp { rref, p, cols } => {
                let mut dense = vec![0u32; *cols];
                for &(j, c) in v {
                    dense[j] = (dense[j] + c) % p;
                }
                rref.reduce(&dense).iter().all(|&x| x == 0)
            }
            SpanChecker::Empty { p } => v.iter().all(|&(_, c)| c % p == 0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::series::{poincare_integral, poincare_mod_p};

    #[test]
    fn mod_two_generators_and_relations() {
        let ring = PresentedGradedRing::new(2, 2, RingForm::ModP).unwrap();
        let gens = ring.polynomial_generators();
        let names: Vec<&str> = gens.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["y10", "y01", "y11"]);
        assert!(gens.iter().all(|&(_, d)| d == 1));
        assert!(ring.exterior_generators().is_empty());
        assert_eq!(ring.relation_count(), 1);
        assert_eq!(ring.relation_strings()[0], "y01.y11 + y10.y11 + y10.y01");

        let integral = PresentedGradedRing::new(2, 2, RingForm::Integral).unwrap();
        let gens = integral.polynomial_generators();
        let names: Vec<&str> = gens.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["~y10", "~y01", "~y11", "t0"]);
        assert_eq!(gens[3].1, 2);
        // The distinguished generator dies, and the triple picks up t0.
        assert_eq!(integral.relation_count(), 2);

        let planes = PresentedGradedRing::new(2, 3, RingForm::ModP).unwrap();
        assert_eq!(planes.relation_count(), 7);
    }

    #[test]
    fn odd_prime_generators_collapse_to_lines() {
        let ring = PresentedGradedRing::new(3, 2, RingForm::ModP).unwrap();
        let gens = ring.polynomial_generators();
        let names: Vec<&str> = gens.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["t10", "t01", "t11", "t21"]);
        assert_eq!(ring.exterior_generators(), ["u10", "u01", "u11", "u21"]);

        // Rank one: every relation degenerates on a single line.
        let line = PresentedGradedRing::new(3, 1, RingForm::ModP).unwrap();
        assert_eq!(line.relation_count(), 0);
        let line_int = PresentedGradedRing::new(3, 1, RingForm::Integral).unwrap();
        assert_eq!(line_int.relation_count(), 1);
    }

    #[test]
    fn mod_p_dimensions_match_the_series() {
        for (p, n) in [(2u32, 1usize), (2, 2), (2, 3), (3, 1), (3, 2)] {
            let ring = PresentedGradedRing::new(p, n, RingForm::ModP).unwrap();
            let series = poincare_mod_p(p, n, 6).unwrap();
            let dims: Vec<u64> = ring
                .graded_dims_through(6)
                .into_iter()
                .map(|d| d as u64)
                .collect();
            assert_eq!(dims, series.coeffs(), "mod-{} rank {}", p, n);
        }
    }

    #[test]
    fn integral_dimensions_match_the_series() {
        for (p, n) in [(2u32, 1usize), (2, 2), (2, 3), (3, 1), (3, 2)] {
            let ring = PresentedGradedRing::new(p, n, RingForm::Integral).unwrap();
            let series = poincare_integral(p, n, 6).unwrap();
            let dims: Vec<u64> = ring
                .graded_dims_through(6)
                .into_iter()
                .map(|d| d as u64)
                .collect();
            assert_eq!(dims, series.coeffs(), "integral p={} rank {}", p, n);
        }
    }

    #[test]
    fn bockstein_squares_to_zero_on_every_monomial() {
        for (p, n) in [(2u32, 3usize), (3, 2)] {
            let ring = PresentedGradedRing::new(p, n, RingForm::ModP).unwrap();
            for d in 2..=5 {
                for i in 0..ring.monomial_count(d) {
                    let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
                    for (col, c) in ring.bockstein_of_monomial(d, i).unwrap() {
                        for (b, v) in ring.bockstein_of_monomial(d - 1, col).unwrap() {
                            let e = acc.entry(b).or_insert(0);
                            *e = (*e + c * v) % p;
                        }
                    }
                    acc.retain(|_, v| *v != 0);
                    assert!(acc.is_empty(), "p={} n={} d={} i={}", p, n, d, i);
                }
            }
        }
    }

    #[test]
    fn bockstein_keeps_relation_multiples_in_the_span() {
        for (p, n) in [(2u32, 2usize), (2, 3), (3, 2)] {
            let ring = PresentedGradedRing::new(p, n, RingForm::ModP).unwrap();
            ring.bockstein_preserves_relations().unwrap();
            for d in 1..=4 {
                let below =
                    SpanChecker::new(p, ring.monomial_count(d - 1), &ring.relation_rows(d - 1));
                for row in ring.relation_rows(d) {
                    let mut image: BTreeMap<usize, u32> = BTreeMap::new();
                    for (col, c) in row {
                        for (b, v) in ring.bockstein_of_monomial(d, col).unwrap() {
                            let e = image.entry(b).or_insert(0);
                            *e = (*e + c * v) % p;
                        }
                    }
                    image.retain(|_, v| *v != 0);
                    let vector: Vec<(usize, u32)> = image.into_iter().collect();
                    assert!(below.contains(&vector), "p={} n={} d={}", p, n, d);
                }
            }
        }
    }

    #[test]
    fn bockstein_kernel_is_the_integral_series_and_homology_vanishes() {
        for (p, n) in [(2u32, 1usize), (2, 2), (3, 1), (3, 2)] {
            let ring = PresentedGradedRing::new(p, n, RingForm::ModP).unwrap();
            let series = poincare_integral(p, n, 5).unwrap();
            let kernel: Vec<u64> = ring
                .bockstein_kernel_dims(5)
                .unwrap()
                .into_iter()
                .map(|d| d as u64)
                .collect();
            assert_eq!(kernel, series.coeffs(), "kernel p={} n={}", p, n);
            let homology = ring.bockstein_homology_dims(5).unwrap();
            assert_eq!(homology, alloc::vec![0; 6], "homology p={} n={}", p, n);
        }
    }

    #[test]
    fn integral_images_land_in_the_mod_p_ring() {
        for (p, n) in [(2u32, 1usize), (2, 2), (2, 3), (3, 1), (3, 2)] {
            let integral = PresentedGradedRing::new(p, n, RingForm::Integral).unwrap();
            let modp = PresentedGradedRing::new(p, n, RingForm::ModP).unwrap();
            integral.verify_integral_images(&modp).unwrap();
        }
    }

    #[test]
    fn form_preconditions_are_enforced() {
        let integral = PresentedGradedRing::new(2, 2, RingForm::Integral).unwrap();
        assert!(matches!(
            integral.bockstein_kernel_dims(3),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            integral.bockstein_of_monomial(2, 0),
            Err(Error::Precondition(_))
        ));
        let modp = PresentedGradedRing::new(2, 2, RingForm::ModP).unwrap();
        assert!(matches!(
            modp.verify_integral_images(&modp),
            Err(Error::Precondition(_))
        ));
        let other = PresentedGradedRing::new(3, 2, RingForm::ModP).unwrap();
        let integral_2 = PresentedGradedRing::new(2, 2, RingForm::Integral).unwrap();
        assert!(integral_2.verify_integral_images(&other).is_err());
    }

    #[test]
    fn monomial_counts_are_binomial_for_free_rings() {
        // Before relations, p = 2 rank 2 has three degree-one generators.
        let ring = PresentedGradedRing::new(2, 2, RingForm::ModP).unwrap();
        let counts: Vec<usize> = (0..5).map(|d| ring.monomial_count(d)).collect();
        assert_eq!(counts, [1, 3, 6, 10, 15]);
        // Odd p mixes degree-two t's with degree-one u's.
        let odd = PresentedGradedRing::new(3, 1, RingForm::ModP).unwrap();
        let counts: Vec<usize> = (0..5).map(|d| odd.monomial_count(d)).collect();
        assert_eq!(counts, [1, 1, 1, 1, 1]);
    }
}
