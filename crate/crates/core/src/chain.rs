//! Chain complexes with integer boundary matrices and exact homology.
//!
//! A complex stores integer matrices once; homology is then computed over
//! F_p (rank counting), over Z (Smith normal form: Betti numbers plus
//! invariant-factor torsion), or over Z/m for composite m (universal
//! coefficients applied to the integral answer).

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg::{rank_mod, smith_normal_form, IntMat};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Coefficient ring for homology reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coeff {
    /// The integers.
    Z,
    /// The cyclic ring Z/m, `m >= 2`.
    Mod(u64),
}

impl Coeff {
    /// True when the ring is a prime field that the byte-matrix path
    /// supports.
    pub fn as_prime_field(&self) -> Option<u32> {
        match *self {
            Coeff::Mod(m) if m < 256 && is_prime(m) => Some(m as u32),
            _ => None,
        }
    }
}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// One degree of a graded answer: a free rank and cyclic torsion orders in a
/// divisibility chain. Over a field the torsion list is empty and `rank` is
/// the dimension; over Z/m everything is torsion.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeGroup {
    /// Free rank (dimension over a field).
    pub rank: usize,
    /// Orders of cyclic torsion summands, each dividing the next.
    pub torsion: Vec<BigUint>,
}

impl DegreeGroup {
    /// True when the group is zero.
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Number of cyclic summands (free and torsion together).
    pub fn summands(&self) -> usize {
        self.rank + self.torsion.len()
    }
}

/// Graded groups indexed by integer degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedDims {
    entries: Vec<(i32, DegreeGroup)>,
}

impl GradedDims {
    /// Empty answer.
    pub fn new() -> Self {
        GradedDims::default()
    }

    /// Records the group in one degree (zero groups are dropped).
    pub fn set(&mut self, degree: i32, group: DegreeGroup) {
        self.entries.retain(|&(d, _)| d != degree);
        if !group.is_zero() {
            self.entries.push((degree, group));
            self.entries.sort_by_key(|&(d, _)| d);
        }
    }

    /// The group in one degree (zero if unrecorded).
    pub fn get(&self, degree: i32) -> DegreeGroup {
        self.entries
            .iter()
            .find(|&&(d, _)| d == degree)
            .map(|(_, g)| g.clone())
            .unwrap_or_default()
    }

    /// Dimension in one degree, meaningful over a field.
    pub fn dim(&self, degree: i32) -> usize {
        self.get(degree).rank
    }

    /// Nonzero degrees in increasing order.
    pub fn support(&self) -> Vec<i32> {
        self.entries.iter().map(|&(d, _)| d).collect()
    }

    /// All recorded `(degree, group)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &DegreeGroup)> {
        self.entries.iter().map(|(d, g)| (*d, g))
    }

    /// Dimensions in degrees `0..=top` as a vector.
    pub fn dims_through(&self, top: i32) -> Vec<usize> {
        (0..=top).map(|d| self.dim(d)).collect()
    }

    /// Pointwise direct sum.
    pub fn add(&self, other: &GradedDims) -> GradedDims {
        let mut out = GradedDims::new();
        let mut degrees: Vec<i32> = self.support();
        degrees.extend(other.support());
        degrees.sort_unstable();
        degrees.dedup();
        for d in degrees {
            let a = self.get(d);
            let b = other.get(d);
            let mut orders: Vec<BigUint> = a.torsion.clone();
            orders.extend(b.torsion.clone());
            out.set(
                d,
                DegreeGroup {
                    rank: a.rank + b.rank,
                    torsion: invariant_chain(orders),
                },
            );
        }
        out
    }
}

/// Rewrites a multiset of cyclic orders as an invariant-factor chain.
pub fn invariant_chain(orders: Vec<BigUint>) -> Vec<BigUint> {
    let mut v: Vec<BigUint> = orders.into_iter().filter(|o| !o.is_one()).collect();
    let n = v.len();
    if n <= 1 {
        return v;
    }
    // Replacing an adjacent pair (a, b) by (gcd, lcm) preserves the group
    // and sorts every prime's exponent vector one bubble step; n passes
    // therefore produce the divisibility chain without any factoring.
    for _ in 0..n {
        let mut changed = false;
        for i in 0..n - 1 {
            let g = v[i].gcd(&v[i + 1]);
            if g != v[i] {
                let l = &v[i] * &v[i + 1] / &g;
                v[i] = g;
                v[i + 1] = l;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    v.retain(|o| !o.is_one());
    v
}

/// A bounded chain complex of finitely generated free abelian groups.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    min_degree: i32,
    dims: Vec<usize>,
    /// `maps[k]` is the boundary `C_{min+k+1} -> C_{min+k}`.
    maps: Vec<IntMat>,
}

impl ChainComplex {
    /// Builds and validates: shapes must line up and consecutive boundaries
    /// must compose to zero.
    pub fn new(min_degree: i32, dims: Vec<usize>, maps: Vec<IntMat>) -> Result<Self> {
        if dims.is_empty() {
            return Ok(ChainComplex {
                min_degree,
                dims,
                maps,
            });
        }
        if maps.len() + 1 != dims.len() {
            return Err(Error::invalid(format!(
                "chain complex needs {} boundary maps for {} degrees, got {}",
                dims.len() - 1,
                dims.len(),
                maps.len()
            )));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.rows() != dims[k] || m.cols() != dims[k + 1] {
                return Err(Error::invalid(format!(
                    "boundary into degree {} has shape {}x{}, expected {}x{}",
                    min_degree + k as i32,
                    m.rows(),
                    m.cols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        for k in 0..maps.len().saturating_sub(1) {
            if !maps[k].mul(&maps[k + 1]).is_zero() {
                return Err(Error::invalid(format!(
                    "composite of boundaries from degree {} to degree {} is nonzero",
                    min_degree + k as i32 + 2,
                    min_degree + k as i32
                )));
            }
        }
        Ok(ChainComplex {
            min_degree,
            dims,
            maps,
        })
    }

    /// The empty complex.
    pub fn empty() -> Self {
        ChainComplex {
            min_degree: 0,
            dims: Vec::new(),
            maps: Vec::new(),
        }
    }

    /// Lowest degree carrying a chain group.
    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    /// Highest degree carrying a chain group (`min_degree - 1` when empty).
    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.dims.len() as i32 - 1
    }

    /// Rank of the chain group in one degree.
    pub fn dim(&self, degree: i32) -> usize {
        let k = degree - self.min_degree;
        if k < 0 || k as usize >= self.dims.len() {
            0
        } else {
            self.dims[k as usize]
        }
    }

    /// Total rank across degrees.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The boundary map `C_degree -> C_{degree-1}`, if both groups exist.
    pub fn boundary(&self, degree: i32) -> Option<&IntMat> {
        let k = degree - self.min_degree;
        if k <= 0 || k as usize > self.maps.len() {
            None
        } else {
            Some(&self.maps[k as usize - 1])
        }
    }

    /// Same complex with all degrees shifted up by `by`.
    pub fn shifted(&self, by: i32) -> ChainComplex {
        ChainComplex {
            min_degree: self.min_degree + by,
            dims: self.dims.clone(),
            maps: self.maps.clone(),
        }
    }

    fn rank_of_boundary_mod(&self, degree: i32, p: u32) -> usize {
        self.boundary(degree).map_or(0, |m| rank_mod(m, p))
    }

    /// Homology dimensions over the prime field F_p.
    pub fn homology_fp(&self, p: u32) -> GradedDims {
        let mut out = GradedDims::new();
        for d in self.min_degree..=self.max_degree() {
            let n = self.dim(d);
            if n == 0 {
                continue;
            }
            let r_in = self.rank_of_boundary_mod(d + 1, p);
            let r_out = self.rank_of_boundary_mod(d, p);
            out.set(
                d,
                DegreeGroup {
                    rank: n - r_in - r_out,
                    torsion: Vec::new(),
                },
            );
        }
        out
    }

    /// Integral homology: Betti numbers and invariant-factor torsion.
    pub fn homology_int(&self, limits: &Limits) -> Result<GradedDims> {
        let mut out = GradedDims::new();
        // Smith normal form of each boundary, reused for consecutive degrees.
        let mut snfs: Vec<Option<(usize, Vec<BigUint>)>> = vec![None; self.dims.len() + 1];
        for (k, m) in self.maps.iter().enumerate() {
            let s = smith_normal_form(m, limits)?;
            let tors: Vec<BigUint> = s
                .diag
                .iter()
                .filter(|d| !d.is_one())
                .map(|d| d.to_biguint().expect("SNF diagonal is positive"))
                .collect();
            snfs[k + 1] = Some((s.rank, tors));
        }
        for d in self.min_degree..=self.max_degree() {
            let k = (d - self.min_degree) as usize;
            let n = self.dims[k];
            let (r_out, _) = snfs[k].clone().unwrap_or((0, Vec::new()));
            let (r_in, tors) = snfs[k + 1].clone().unwrap_or((0, Vec::new()));
            let group = DegreeGroup {
                rank: n - r_out - r_in,
                torsion: invariant_chain(tors),
            };
            out.set(d, group);
        }
        Ok(out)
    }

    /// Homology with Z/m coefficients for arbitrary `m >= 2`. Prime moduli
    /// under 256 go through field linear algebra; otherwise the integral
    /// answer is converted by universal coefficients.
    pub fn homology_mod(&self, m: u64, limits: &Limits) -> Result<GradedDims> {
        if m < 2 {
            return Err(Error::precondition(String::from(
                "modulus must be at least 2",
            )));
        }
        if let Some(p) = (Coeff::Mod(m)).as_prime_field() {
            return Ok(self.homology_fp(p));
        }
        let integral = self.homology_int(limits)?;
        Ok(mod_m_from_integral(&integral, m))
    }

    /// Homology over the requested coefficient ring.
    pub fn homology(&self, coeff: Coeff, limits: &Limits) -> Result<GradedDims> {
        match coeff {
            Coeff::Z => self.homology_int(limits),
            Coeff::Mod(m) => self.homology_mod(m, limits),
        }
    }

    /// Cohomology over the requested ring, reported in cohomological degrees
    /// `min_degree..=max_degree`. Computed as homology of the transposed,
    /// reversed complex.
    pub fn cohomology(&self, coeff: Coeff, limits: &Limits) -> Result<GradedDims> {
        let n = self.dims.len();
        if n == 0 {
            return Ok(GradedDims::new());
        }
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let maps: Vec<IntMat> = self.maps.iter().rev().map(IntMat::transpose).collect();
        let dual = ChainComplex::new(0, dims, maps)?;
        let h = dual.homology(coeff, limits)?;
        let mut out = GradedDims::new();
        for (d, g) in h.iter() {
            out.set(self.max_degree() - d, g.clone());
        }
        Ok(out)
    }
}

/// Universal coefficients: `H_d(C; Z/m) = H_d(C) (x) Z/m  (+)  Tor(H_{d-1}(C), Z/m)`.
pub fn mod_m_from_integral(integral: &GradedDims, m: u64) -> GradedDims {
    let big_m = BigUint::from(m);
    let mut out = GradedDims::new();
    let degrees: Vec<i32> = {
        let mut v = integral.support();
        let shifted: Vec<i32> = v.iter().map(|&d| d + 1).collect();
        v.extend(shifted);
        v.sort_unstable();
        v.dedup();
        v
    };
    for d in degrees {
        let here = integral.get(d);
        let below = integral.get(d - 1);
        let mut orders: Vec<BigUint> = Vec::new();
        for _ in 0..here.rank {
            orders.push(big_m.clone());
        }
        for t in &here.torsion {
            orders.push(t.gcd(&big_m));
        }
        for t in &below.torsion {
            orders.push(t.gcd(&big_m));
        }
        out.set(
            d,
            DegreeGroup {
                rank: 0,
                torsion: invariant_chain(orders),
            },
        );
    }
    out
}

/// Checks the universal-coefficient relation between the integral homology
/// and the mod-p homology of `c` for the given primes; used as a
/// cross-route consistency test.
pub fn universal_coefficients_consistent(
    c: &ChainComplex,
    primes: &[u32],
    limits: &Limits,
) -> Result<bool> {
    let integral = c.homology_int(limits)?;
    for &p in primes {
        let modp = c.homology_fp(p);
        let big_p = BigUint::from(p);
        for d in c.min_degree()..=c.max_degree() {
            let here = integral.get(d);
            let below = integral.get(d - 1);
            let count_p = |g: &DegreeGroup| {
                g.torsion
                    .iter()
                    .filter(|t| (*t % &big_p).is_zero())
                    .count()
            };
            let expected = here.rank + count_p(&here) + count_p(&below);
            if modp.dim(d) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> ChainComplex {
        // One vertex, one loop edge: d = 0.
        ChainComplex::new(0, vec![1, 1], vec![IntMat::zero(1, 1)]).unwrap()
    }

    fn rp2_cell() -> ChainComplex {
        // CW structure of the projective plane: 1 cell in each degree,
        // d1 = 0, d2 = multiplication by 2.
        let d2 = IntMat::from_columns(1, vec![vec![(0, 2)]]);
        ChainComplex::new(0, vec![1, 1, 1], vec![IntMat::zero(1, 1), d2]).unwrap()
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = IntMat::from_columns(1, vec![vec![(0, 1)]]);
        let d2 = IntMat::from_columns(1, vec![vec![(0, 1)]]);
        assert!(ChainComplex::new(0, vec![1, 1, 1], vec![d1, d2]).is_err());
    }

    #[test]
    fn circle_homology() {
        let lim = Limits::default();
        let h = circle().homology_int(&lim).unwrap();
        assert_eq!(h.get(0).rank, 1);
        assert_eq!(h.get(1).rank, 1);
        assert_eq!(circle().homology_fp(5).dim(1), 1);
    }

    #[test]
    fn projective_plane_all_rings() {
        let lim = Limits::default();
        let c = rp2_cell();
        let hz = c.homology_int(&lim).unwrap();
        assert_eq!(hz.get(0).rank, 1);
        assert_eq!(hz.get(1).rank, 0);
        assert_eq!(hz.get(1).torsion, vec![BigUint::from(2u32)]);
        assert!(hz.get(2).is_zero());
        let h2 = c.homology_fp(2);
        assert_eq!(h2.dims_through(2), vec![1, 1, 1]);
        let h3 = c.homology_fp(3);
        assert_eq!(h3.dims_through(2), vec![1, 0, 0]);
        // Z/4: H_0 = Z/4, H_1 = Z/2, H_2 = Z/2 (Tor).
        let h4 = c.homology_mod(4, &lim).unwrap();
        assert_eq!(h4.get(0).torsion, vec![BigUint::from(4u32)]);
        assert_eq!(h4.get(1).torsion, vec![BigUint::from(2u32)]);
        assert_eq!(h4.get(2).torsion, vec![BigUint::from(2u32)]);
        assert!(universal_coefficients_consistent(&c, &[2, 3, 5], &lim).unwrap());
    }

    #[test]
    fn cohomology_of_projective_plane() {
        let lim = Limits::default();
        let c = rp2_cell();
        let hz = c.cohomology(Coeff::Z, &lim).unwrap();
        assert_eq!(hz.get(0).rank, 1);
        assert!(hz.get(1).is_zero());
        assert_eq!(hz.get(2).torsion, vec![BigUint::from(2u32)]);
        let h2 = c.cohomology(Coeff::Mod(2), &lim).unwrap();
        assert_eq!(h2.dims_through(2), vec![1, 1, 1]);
    }

    #[test]
    fn invariant_chain_merges() {
        let chain = invariant_chain(vec![
            BigUint::from(4u32),
            BigUint::from(6u32),
            BigUint::from(2u32),
        ]);
        assert_eq!(
            chain,
            vec![BigUint::from(2u32), BigUint::from(2u32), BigUint::from(12u32)]
        );
    }

    #[test]
    fn graded_add_merges_torsion() {
        let mut a = GradedDims::new();
        a.set(
            0,
            DegreeGroup {
                rank: 1,
                torsion: vec![BigUint::from(2u32)],
            },
        );
        let mut b = GradedDims::new();
        b.set(
            0,
            DegreeGroup {
                rank: 2,
                torsion: vec![BigUint::from(3u32)],
            },
        );
        let s = a.add(&b);
        assert_eq!(s.get(0).rank, 3);
        assert_eq!(s.get(0).torsion, vec![BigUint::from(6u32)]);
    }
}
