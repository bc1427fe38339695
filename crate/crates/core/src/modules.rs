//! Group actions on chain complexes and on F_p vector spaces.
//!
//! `PermComplex` is an integer chain complex whose basis is permuted, up to
//! sign, by a finite group commuting with the boundary. Coinvariants are
//! taken basis-orbit by basis-orbit, which stays a free complex exactly when
//! stabilizers act with sign +1; the free case is the one the stratum
//! decomposition relies on. `GroupModule` and `ModuleComplex` are the F_p
//! counterparts consumed by resolution machinery.

use crate::chain::ChainComplex;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{FpMat, FpSolver, IntMat};
use crate::poset::OrderComplex;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

/// Image of one basis element under one group element: target index and
/// sign.
pub type SignedImage = (u32, i8);

/// A chain complex with a signed permutation action of a finite group.
#[derive(Debug, Clone)]
pub struct PermComplex {
    group: FiniteGroup,
    complex: ChainComplex,
    /// `action[k][g][i]` is the signed image of basis element `i` in the
    /// k-th stored degree.
    action: Vec<Vec<Vec<SignedImage>>>,
}

fn signed_perm_matrix(dim_from: usize, images: &[SignedImage]) -> IntMat {
    let cols = images
        .iter()
        .map(|&(img, s)| vec![(img as usize, s as i64)])
        .collect();
    IntMat::from_columns(dim_from, cols)
}

impl PermComplex {
    /// Validates that every action row is a signed permutation, that the
    /// rows define a group homomorphism, and that the boundary is
    /// equivariant.
    pub fn new(
        group: &FiniteGroup,
        complex: ChainComplex,
        action: Vec<Vec<Vec<SignedImage>>>,
    ) -> Result<PermComplex> {
        let degrees = (complex.max_degree() - complex.min_degree() + 1).max(0) as usize;
        if action.len() != degrees {
            return Err(Error::invalid(format!(
                "action covers {} degrees, complex has {}",
                action.len(),
                degrees
            )));
        }
        for (k, per_degree) in action.iter().enumerate() {
            let degree = complex.min_degree() + k as i32;
            let dim = complex.dim(degree);
            if per_degree.len() != group.order() {
                return Err(Error::invalid(format!(
                    "degree {} action has {} rows, group order is {}",
                    degree,
                    per_degree.len(),
                    group.order()
                )));
            }
            for (g, images) in per_degree.iter().enumerate() {
                if images.len() != dim {
                    return Err(Error::invalid(format!(
                        "degree {} action of element {} has {} images, expected {}",
                        degree,
                        g,
                        images.len(),
                        dim
                    )));
                }
                let mut seen = vec![false; dim];
                for &(img, s) in images {
                    if img as usize >= dim || seen[img as usize] || (s != 1 && s != -1) {
                        return Err(Error::invalid(format!(
                            "degree {} action of element {} is not a signed permutation",
                            degree, g
                        )));
                    }
                    seen[img as usize] = true;
                }
            }
            for (i, &(img, s)) in per_degree[0].iter().enumerate() {
                if img as usize != i || s != 1 {
                    return Err(Error::invalid(format!(
                        "identity must act trivially in degree {}",
                        degree
                    )));
                }
            }
            for g in 0..group.order() {
                for h in 0..group.order() {
                    let gh = group.mul(g, h);
                    for i in 0..dim {
                        let (ih, sh) = per_degree[h][i];
                        let (igh, sgh) = per_degree[g][ih as usize];
                        let (expect, se) = per_degree[gh][i];
                        if igh != expect || i32::from(sh) * i32::from(sgh) != i32::from(se)
                        {
                            return Err(Error::invalid(format!(
                                "action fails to compose at degree {}, elements {}, {}",
                                degree, g, h
                            )));
                        }
                    }
                }
            }
        }
        // Equivariance: P_{k-1}(g) d = d P_k(g) for every boundary.
        for k in 1..degrees {
            let degree = complex.min_degree() + k as i32;
            let d = complex
                .boundary(degree)
                .expect("boundary exists between stored degrees");
            for g in 0..group.order() {
                let upper = signed_perm_matrix(complex.dim(degree), &action[k][g]);
                let lower =
                    signed_perm_matrix(complex.dim(degree - 1), &action[k - 1][g]);
                if lower.mul(d) != d.mul(&upper) {
                    return Err(Error::invalid(format!(
                        "boundary into degree {} is not equivariant for element {}",
                        degree - 1,
                        g
                    )));
                }
            }
        }
        Ok(PermComplex {
            group: group.clone(),
            complex,
            action,
        })
    }

    /// Unsigned action on the chains of an order complex.
    pub fn from_order_complex(oc: &OrderComplex) -> Result<PermComplex> {
        let complex = oc.chain_complex()?;
        let group = oc.poset().group().clone();
        let degrees = (complex.max_degree() + 1).max(0) as usize;
        let mut action = Vec::with_capacity(degrees);
        for k in 0..degrees {
            let mut per_degree = Vec::with_capacity(group.order());
            for g in 0..group.order() {
                per_degree.push(
                    oc.action_on_simplices(g, k)
                        .into_iter()
                        .map(|i| (i as u32, 1i8))
                        .collect(),
                );
            }
            action.push(per_degree);
        }
        PermComplex::new(&group, complex, action)
    }

    /// Augmented order-complex chains: one extra fixed generator in degree
    /// -1 receiving the augmentation.
    pub fn from_order_complex_augmented(oc: &OrderComplex) -> Result<PermComplex> {
        let complex = oc.augmented_complex()?;
        let group = oc.poset().group().clone();
        let mut action: Vec<Vec<Vec<SignedImage>>> =
            vec![vec![vec![(0, 1)]; group.order()]];
        let degrees = (complex.max_degree() + 1).max(0) as usize;
        for k in 0..degrees {
            let mut per_degree = Vec::with_capacity(group.order());
            for g in 0..group.order() {
                per_degree.push(
                    oc.action_on_simplices(g, k)
                        .into_iter()
                        .map(|i| (i as u32, 1i8))
                        .collect(),
                );
            }
            action.push(per_degree);
        }
        PermComplex::new(&group, complex, action)
    }

    /// The acting group.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// The underlying integer complex.
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    /// Signed image of a basis element.
    pub fn image(&self, degree: i32, g: usize, i: usize) -> SignedImage {
        let k = (degree - self.complex.min_degree()) as usize;
        self.action[k][g][i]
    }

    /// Degree shift, keeping the action.
    pub fn shifted(&self, by: i32) -> PermComplex {
        PermComplex {
            group: self.group.clone(),
            complex: self.complex.shifted(by),
            action: self.action.clone(),
        }
    }

    /// True when no nonidentity element fixes any basis index.
    pub fn is_basis_free(&self) -> bool {
        for per_degree in &self.action {
            for (g, images) in per_degree.iter().enumerate() {
                if g == 0 {
                    continue;
                }
                for (i, &(img, _)) in images.iter().enumerate() {
                    if img as usize == i {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Coinvariant complex: one generator per basis orbit. Fails when some
    /// stabilizer acts with sign -1, since that pinches the generator to
    /// torsion and the result would not be a free complex.
    pub fn coinvariants(&self) -> Result<ChainComplex> {
        let min = self.complex.min_degree();
        let degrees = self.action.len();
        let mut orbit_of: Vec<Vec<usize>> = Vec::with_capacity(degrees);
        let mut sign_to_rep: Vec<Vec<i64>> = Vec::with_capacity(degrees);
        let mut orbit_counts: Vec<usize> = Vec::with_capacity(degrees);
        for k in 0..degrees {
            let dim = self.complex.dim(min + k as i32);
            let mut orbit = vec![usize::MAX; dim];
            let mut sign = vec![0i64; dim];
            let mut count = 0;
            for i in 0..dim {
                if orbit[i] != usize::MAX {
                    continue;
                }
                let idx = count;
                count += 1;
                for g in 0..self.group.order() {
                    let (img, s) = self.action[k][g][i];
                    let (img, s) = (img as usize, i64::from(s));
                    if orbit[img] == usize::MAX {
                        orbit[img] = idx;
                        sign[img] = s;
                    } else if sign[img] != s {
                        return Err(Error::precondition(format!(
                            "coinvariants collapse a generator in degree {}: \
                             basis {} is reached with both signs",
                            min + k as i32,
                            img
                        )));
                    }
                }
            }
            orbit_of.push(orbit);
            sign_to_rep.push(sign);
            orbit_counts.push(count);
        }
        let mut maps = Vec::with_capacity(degrees.saturating_sub(1));
        for k in 1..degrees {
            let degree = min + k as i32;
            let d = self.complex.boundary(degree).expect("stored boundary");
            let dim = self.complex.dim(degree);
            let mut cols: Vec<Vec<(usize, i64)>> = vec![Vec::new(); orbit_counts[k]];
            // One column per orbit, taken at the smallest basis index,
            // which is the first to claim its orbit slot and has sign +1.
            let mut rep_seen = vec![false; orbit_counts[k]];
            for i in 0..dim {
                let o = orbit_of[k][i];
                if rep_seen[o] {
                    continue;
                }
                rep_seen[o] = true;
                let mut acc: Vec<(usize, i64)> = Vec::new();
                for &(r, v) in &d.columns()[i] {
                    let target = orbit_of[k - 1][r];
                    let signed = v * sign_to_rep[k - 1][r];
                    if let Some(e) = acc.iter_mut().find(|e| e.0 == target) {
                        e.1 += signed;
                    } else {
                        acc.push((target, signed));
                    }
                }
                acc.retain(|e| e.1 != 0);
                cols[o] = acc;
            }
            maps.push(IntMat::from_columns(orbit_counts[k - 1], cols));
        }
        ChainComplex::new(min, orbit_counts, maps)
    }

    /// Coinvariants under the precondition that the basis action is free;
    /// this is the form the stratum decomposition requires.
    pub fn coinvariants_free(&self) -> Result<ChainComplex> {
        if !self.is_basis_free() {
            return Err(Error::precondition(
                "coinvariants of a non-free basis action were requested".to_string(),
            ));
        }
        self.coinvariants()
    }

    /// Reduction of everything mod p as an equivariant module complex.
    pub fn to_module_complex(&self, p: u32) -> Result<ModuleComplex> {
        let min = self.complex.min_degree();
        let degrees = self.action.len();
        let mut modules = Vec::with_capacity(degrees);
        for k in 0..degrees {
            let dim = self.complex.dim(min + k as i32);
            let images: Vec<Vec<SignedImage>> = self.action[k].clone();
            modules.push(GroupModule::from_signed_permutation(
                &self.group, p, dim, &images,
            )?);
        }
        let maps: Vec<FpMat> = (1..degrees)
            .map(|k| {
                FpMat::from_int(
                    self.complex.boundary(min + k as i32).expect("stored boundary"),
                    p,
                )
            })
            .collect();
        ModuleComplex::new(&self.group, p, min, modules, maps)
    }
}

/// A finite-dimensional F_p representation of a finite group.
#[derive(Debug, Clone)]
pub struct GroupModule {
    group: FiniteGroup,
    p: u32,
    dim: usize,
    rho: Vec<FpMat>,
}

impl GroupModule {
    /// Validates that the matrices define a homomorphism.
    pub fn new(group: &FiniteGroup, p: u32, rho: Vec<FpMat>) -> Result<GroupModule> {
        if rho.len() != group.order() {
            return Err(Error::invalid(format!(
                "representation has {} matrices, group order is {}",
                rho.len(),
                group.order()
            )));
        }
        let dim = rho[0].rows();
        for (g, m) in rho.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim || m.p() != p {
                return Err(Error::invalid(format!(
                    "matrix for element {} has wrong shape or characteristic",
                    g
                )));
            }
        }
        if rho[0] != FpMat::identity(p, dim) {
            return Err(Error::invalid(
                "identity element must act as the identity matrix".to_string(),
            ));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if rho[g].mul(&rho[h]) != rho[group.mul(g, h)] {
                    return Err(Error::invalid(format!(
                        "representation fails to compose at elements {}, {}",
                        g, h
                    )));
                }
            }
        }
        Ok(GroupModule {
            group: group.clone(),
            p,
            dim,
            rho,
        })
    }

    /// The trivial representation of the given dimension.
    pub fn trivial(group: &FiniteGroup, p: u32, dim: usize) -> Result<GroupModule> {
        let rho = vec![FpMat::identity(p, dim); group.order()];
        GroupModule::new(group, p, rho)
    }

    /// Module with basis permuted up to sign.
    pub fn from_signed_permutation(
        group: &FiniteGroup,
        p: u32,
        dim: usize,
        images: &[Vec<SignedImage>],
    ) -> Result<GroupModule> {
        let mut rho = Vec::with_capacity(images.len());
        for per_g in images {
            if per_g.len() != dim {
                return Err(Error::invalid(
                    "permutation images do not match dimension".to_string(),
                ));
            }
            let mut m = FpMat::zero(p, dim, dim);
            for (i, &(img, s)) in per_g.iter().enumerate() {
                let v = if s >= 0 { 1 } else { p - 1 };
                m.set(img as usize, i, v);
            }
            rho.push(m);
        }
        GroupModule::new(group, p, rho)
    }

    /// The regular representation: basis indexed by group elements, acted
    /// on by left translation.
    pub fn regular(group: &FiniteGroup, p: u32) -> Result<GroupModule> {
        let n = group.order();
        let images: Vec<Vec<SignedImage>> = (0..n)
            .map(|g| (0..n).map(|x| (group.mul(g, x) as u32, 1i8)).collect())
            .collect();
        GroupModule::from_signed_permutation(group, p, n, &images)
    }

    /// The group acting.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Field characteristic.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Dimension over F_p.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Action matrix of one element.
    pub fn rho(&self, g: usize) -> &FpMat {
        &self.rho[g]
    }

    /// Applies one element to a vector.
    pub fn act(&self, g: usize, v: &[u32]) -> Vec<u32> {
        self.rho[g].mul_vec(v)
    }
}

/// A bounded complex of `GroupModule`s with equivariant differentials.
#[derive(Debug, Clone)]
pub struct ModuleComplex {
    group: FiniteGroup,
    p: u32,
    min_degree: i32,
    modules: Vec<GroupModule>,
    /// `maps[k]` is the differential from stored degree `k+1` to `k`.
    maps: Vec<FpMat>,
}

impl ModuleComplex {
    /// Validates shapes, equivariance, and that differentials square to
    /// zero.
    pub fn new(
        group: &FiniteGroup,
        p: u32,
        min_degree: i32,
        modules: Vec<GroupModule>,
        maps: Vec<FpMat>,
    ) -> Result<ModuleComplex> {
        if modules.is_empty() {
            return Ok(ModuleComplex {
                group: group.clone(),
                p,
                min_degree,
                modules,
                maps,
            });
        }
        if maps.len() + 1 != modules.len() {
            return Err(Error::invalid(format!(
                "module complex needs {} maps for {} degrees, got {}",
                modules.len() - 1,
                modules.len(),
                maps.len()
            )));
        }
        for (k, m) in modules.iter().enumerate() {
            if m.p() != p || m.group().order() != group.order() {
                return Err(Error::invalid(format!(
                    "module in stored degree {} disagrees on field or group",
                    k
                )));
            }
        }
        for (k, d) in maps.iter().enumerate() {
            if d.rows() != modules[k].dim() || d.cols() != modules[k + 1].dim() {
                return Err(Error::invalid(format!(
                    "map into stored degree {} has shape {}x{}, expected {}x{}",
                    k,
                    d.rows(),
                    d.cols(),
                    modules[k].dim(),
                    modules[k + 1].dim()
                )));
            }
            for g in 0..group.order() {
                if modules[k].rho(g).mul(d) != d.mul(modules[k + 1].rho(g)) {
                    return Err(Error::invalid(format!(
                        "map into stored degree {} is not equivariant at element {}",
                        k, g
                    )));
                }
            }
        }
        for k in 0..maps.len().saturating_sub(1) {
            if !maps[k].mul(&maps[k + 1]).is_zero() {
                return Err(Error::invalid(format!(
                    "module differentials fail to square to zero at stored degree {}",
                    k
                )));
            }
        }
        Ok(ModuleComplex {
            group: group.clone(),
            p,
            min_degree,
            modules,
            maps,
        })
    }

    /// A single module placed in degree 0.
    pub fn single(module: GroupModule) -> Result<ModuleComplex> {
        let group = module.group().clone();
        let p = module.p();
        ModuleComplex::new(&group, p, 0, vec![module], Vec::new())
    }

    /// The acting group.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Field characteristic.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Lowest stored degree.
    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    /// Highest stored degree.
    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.modules.len() as i32 - 1
    }

    /// Dimension of the module in one degree.
    pub fn dim(&self, degree: i32) -> usize {
        self.module(degree).map_or(0, |m| m.dim())
    }

    /// The module in one degree.
    pub fn module(&self, degree: i32) -> Option<&GroupModule> {
        let k = degree - self.min_degree;
        if k < 0 {
            None
        } else {
            self.modules.get(k as usize)
        }
    }

    /// The differential `M_degree -> M_{degree-1}`.
    pub fn map_from(&self, degree: i32) -> Option<&FpMat> {
        let k = degree - self.min_degree;
        if k <= 0 {
            None
        } else {
            self.maps.get(k as usize - 1)
        }
    }

    /// Degree shift.
    pub fn shifted(&self, by: i32) -> ModuleComplex {
        let mut out = self.clone();
        out.min_degree += by;
        out
    }
}

/// The homology of a `PermComplex` in one degree, mod p, as a module over
/// the acting group: cycle representatives are chosen modulo boundaries and
/// the action is re-expressed in that basis.
pub fn homology_module(pc: &PermComplex, p: u32, degree: i32) -> Result<GroupModule> {
    let group = pc.group().clone();
    let c = pc.complex();
    let dim = c.dim(degree);
    if dim == 0 {
        return GroupModule::trivial(&group, p, 0);
    }
    // Kernel vectors come back as rows; columns are wanted here.
    let cycles: FpMat = match c.boundary(degree) {
        Some(d) => FpMat::from_int(d, p).kernel_basis().transpose(),
        None => FpMat::identity(p, dim),
    };
    let b_cols: Vec<Vec<u32>> = match c.boundary(degree + 1) {
        Some(d) => {
            let dm = FpMat::from_int(d, p);
            (0..dm.cols())
                .map(|j| (0..dm.rows()).map(|i| dm.get(i, j)).collect())
                .collect()
        }
        None => Vec::new(),
    };
    // Echelon basis of the boundary space, then extend by cycle columns;
    // the cycles that enlarge the span represent a homology basis.
    let mut echelon: Vec<(usize, Vec<u32>)> = Vec::new();
    let insert = |v: Vec<u32>, echelon: &mut Vec<(usize, Vec<u32>)>| -> bool {
        let mut v = v;
        for (piv, row) in echelon.iter() {
            if v[*piv] != 0 {
                let c = v[*piv];
                let inv_lead = row[*piv];
                debug_assert_eq!(inv_lead, 1);
                for j in 0..v.len() {
                    v[j] = (v[j] + (p - c) * row[j]) % p;
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let lead = v[piv];
            let inv = mod_inverse(lead, p);
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            echelon.push((piv, v));
            echelon.sort_by_key(|e| e.0);
            true
        } else {
            false
        }
    };
    for col in b_cols {
        insert(col, &mut echelon);
    }
    let boundary_rank = echelon.len();
    // Snapshot the boundary basis now: later insertions re-sort the rows.
    let b_basis: Vec<Vec<u32>> = echelon.iter().map(|(_, r)| r.clone()).collect();
    let mut reps: Vec<Vec<u32>> = Vec::new();
    for j in 0..cycles.cols() {
        let z: Vec<u32> = (0..cycles.rows()).map(|i| cycles.get(i, j)).collect();
        if insert(z.clone(), &mut echelon) {
            reps.push(z);
        }
    }
    let h_dim = reps.len();
    debug_assert_eq!(echelon.len(), boundary_rank + h_dim);
    if h_dim == 0 {
        return GroupModule::trivial(&group, p, 0);
    }
    // Solver over [boundary basis | homology reps]; the boundary block
    // absorbs the coboundary part of each translated representative.
    let span_cols: Vec<Vec<u32>> = {
        let mut v = b_basis;
        v.extend(reps.iter().cloned());
        v
    };
    let mut a = FpMat::zero(p, dim, span_cols.len());
    for (j, col) in span_cols.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            a.set(i, j, x);
        }
    }
    let solver = FpSolver::new(&a);
    let mut rho = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let mut m = FpMat::zero(p, h_dim, h_dim);
        for (col_idx, z) in reps.iter().enumerate() {
            let mut w = vec![0u32; dim];
            for (i, &x) in z.iter().enumerate() {
                if x != 0 {
                    let (img, s) = pc.image(degree, g, i);
                    let v = if s >= 0 { x } else { (p - x) % p };
                    w[img as usize] = (w[img as usize] + v) % p;
                }
            }
            let c = solver
                .solve(&w)
                .ok_or_else(|| Error::internal("translated cycle left the span"))?;
            for r in 0..h_dim {
                m.set(r, col_idx, c[boundary_rank + r]);
            }
        }
        rho.push(m);
    }
    GroupModule::new(&group, p, rho)
}

fn mod_inverse(a: u32, p: u32) -> u32 {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::Coeff;
    use crate::group::{cyclic, FiniteGroup};
    use crate::limits::Limits;
    use crate::poset::GPoset;

    /// Z/2 swapping the two vertices of an interval (two vertices, one
    /// edge flipped with sign).
    fn flipped_interval() -> PermComplex {
        let g = cyclic(2).unwrap();
        let d1 = IntMat::from_columns(2, vec![vec![(0, -1), (1, 1)]]);
        let complex = ChainComplex::new(0, vec![2, 1], vec![d1]).unwrap();
        let action = vec![
            vec![vec![(0, 1), (1, 1)], vec![(1, 1), (0, 1)]],
            vec![vec![(0, 1)], vec![(0, -1)]],
        ];
        PermComplex::new(&g, complex, action).unwrap()
    }

    #[test]
    fn flipped_interval_validates_and_blocks_coinvariants() {
        let pc = flipped_interval();
        assert!(!pc.is_basis_free());
        // The edge is fixed with sign -1, so coinvariants must refuse.
        assert!(pc.coinvariants().is_err());
    }

    #[test]
    fn free_translation_circle_coinvariants() {
        // Z/4 translating a 4-gon: vertices i, edges i -> i+1. The
        // coinvariant complex is one vertex and one loop: a circle.
        let g = cyclic(4).unwrap();
        let d1 = IntMat::from_columns(
            4,
            (0..4).map(|i| vec![(i, -1), ((i + 1) % 4, 1)]).collect(),
        );
        let complex = ChainComplex::new(0, vec![4, 4], vec![d1]).unwrap();
        let mut action = vec![Vec::new(), Vec::new()];
        for g_el in 0..4 {
            action[0].push((0..4).map(|i| (((i + g_el) % 4) as u32, 1i8)).collect());
            action[1].push((0..4).map(|i| (((i + g_el) % 4) as u32, 1i8)).collect());
        }
        let pc = PermComplex::new(&g, complex, action).unwrap();
        assert!(pc.is_basis_free());
        let q = pc.coinvariants_free().unwrap();
        assert_eq!(q.dim(0), 1);
        assert_eq!(q.dim(1), 1);
        let h = q.homology(Coeff::Z, &Limits::default()).unwrap();
        assert_eq!(h.get(0).rank, 1);
        assert_eq!(h.get(1).rank, 1);
    }

    #[test]
    fn rejects_non_equivariant_boundary() {
        let g = cyclic(2).unwrap();
        let d1 = IntMat::from_columns(2, vec![vec![(0, -1), (1, 1)]]);
        let complex = ChainComplex::new(0, vec![2, 1], vec![d1]).unwrap();
        // Vertex swap but edge fixed with sign +1: boundary not preserved.
        let action = vec![
            vec![vec![(0, 1), (1, 1)], vec![(1, 1), (0, 1)]],
            vec![vec![(0, 1)], vec![(0, 1)]],
        ];
        assert!(PermComplex::new(&g, complex, action).is_err());
    }

    #[test]
    fn regular_module_and_trivial_module() {
        let g = cyclic(3).unwrap();
        let reg = GroupModule::regular(&g, 3).unwrap();
        assert_eq!(reg.dim(), 3);
        let t = GroupModule::trivial(&g, 3, 2).unwrap();
        assert_eq!(t.act(1, &[1, 2]), vec![1, 2]);
    }

    #[test]
    fn homology_module_of_swapped_circle_pair() {
        // Two disjoint loop circles swapped by Z/2: H_1 is the 2-dim
        // permutation module.
        let g = cyclic(2).unwrap();
        let complex =
            ChainComplex::new(0, vec![2, 2], vec![IntMat::zero(2, 2)]).unwrap();
        let swap = vec![vec![(0, 1), (1, 1)], vec![(1, 1), (0, 1)]];
        let action = vec![swap.clone(), swap];
        let pc = PermComplex::new(&g, complex, action).unwrap();
        let h1 = homology_module(&pc, 2, 1).unwrap();
        assert_eq!(h1.dim(), 2);
        // The swap exchanges the two homology generators.
        assert_eq!(h1.act(1, &[1, 0]), vec![0, 1]);
    }

    #[test]
    fn module_complex_validation() {
        let g = cyclic(2).unwrap();
        let m0 = GroupModule::trivial(&g, 2, 1).unwrap();
        let m1 = GroupModule::regular(&g, 2).unwrap();
        // Augmentation map from the regular module is equivariant.
        let mut d = FpMat::zero(2, 1, 2);
        d.set(0, 0, 1);
        d.set(0, 1, 1);
        let mc = ModuleComplex::new(&g, 2, 0, vec![m0.clone(), m1], vec![d]).unwrap();
        assert_eq!(mc.dim(0), 1);
        assert_eq!(mc.dim(1), 2);
        // A non-equivariant map is rejected.
        let m1b = GroupModule::regular(&g, 2).unwrap();
        let mut bad = FpMat::zero(2, 1, 2);
        bad.set(0, 0, 1);
        assert!(ModuleComplex::new(&g, 2, 0, vec![m0, m1b], vec![bad]).is_err());
    }

    #[test]
    fn perm_complex_from_diamond_order_complex() {
        let g: FiniteGroup = cyclic(2).unwrap();
        let action = vec![vec![0, 1, 2, 3], vec![1, 0, 2, 3]];
        let p = GPoset::new(&g, 4, &[(0, 2), (0, 3), (1, 2), (1, 3)], &action).unwrap();
        let oc = p.order_complex(&Limits::default()).unwrap();
        let pc = PermComplex::from_order_complex(&oc).unwrap();
        assert_eq!(pc.complex().dim(1), 4);
        let aug = PermComplex::from_order_complex_augmented(&oc).unwrap();
        assert_eq!(aug.complex().min_degree(), -1);
        let sus = aug.shifted(1);
        assert_eq!(sus.complex().min_degree(), 0);
        // Suspension of reduced chains of a circle: homology Z in degree 2.
        let h = sus
            .complex()
            .homology(Coeff::Z, &Limits::default())
            .unwrap();
        assert_eq!(h.get(2).rank, 1);
        assert!(h.get(1).is_zero());
        assert!(h.get(0).is_zero());
    }
}
