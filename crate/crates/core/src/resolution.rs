//! Free resolutions over the group algebra F_p[G] and the homology they
//! compute: group homology of a module and hyperhomology of an equivariant
//! complex (the homotopy-orbit, or Borel, construction).
//!
//! Resolutions resolve the trivial module, choosing few generators at each
//! step: for p-groups the radical criterion gives a genuinely minimal
//! resolution, otherwise a greedy submodule sweep is used. Correctness of
//! downstream homology only needs freeness and exactness, which hold either
//! way; generator counts just control matrix sizes.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{FpMat, FpSolver};
use crate::modules::{GroupModule, ModuleComplex};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// A free resolution `... -> P_1 -> P_0 -> F_p -> 0` of the trivial module,
/// with maps stored as full F_p matrices on the basis `(slot, group
/// element)`; index `slot * |G| + g`.
#[derive(Debug, Clone)]
pub struct FreeResolution {
    group: FiniteGroup,
    p: u32,
    /// Rank of `P_d` over the group algebra.
    ranks: Vec<usize>,
    /// `maps[d]` is `P_{d+1} -> P_d`.
    maps: Vec<FpMat>,
    /// The augmentation `P_0 -> F_p`.
    aug: FpMat,
}

fn free_action_matrix(group: &FiniteGroup, p: u32, rank: usize, g: usize) -> FpMat {
    let n = group.order();
    let mut m = FpMat::zero(p, rank * n, rank * n);
    for slot in 0..rank {
        for h in 0..n {
            m.set(slot * n + group.mul(g, h), slot * n + h, 1);
        }
    }
    m
}

/// Incremental echelon span over F_p used for generator selection.
struct Span {
    p: u32,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Span {
    fn new(p: u32) -> Span {
        Span { p, rows: Vec::new() }
    }

    fn contains(&self, v: &[u32]) -> bool {
        self.residual(v).is_none()
    }

    /// Reduces `v`; `None` when it lies in the span, otherwise the
    /// normalized residual with its pivot.
    fn residual(&self, v: &[u32]) -> Option<(usize, Vec<u32>)> {
        let p = self.p;
        let mut v: Vec<u32> = v.iter().map(|&x| x % p).collect();
        for (piv, row) in &self.rows {
            if v[*piv] != 0 {
                let c = v[*piv];
                for j in 0..v.len() {
                    v[j] = (v[j] + (p - c) * row[j]) % p;
                }
            }
        }
        let piv = v.iter().position(|&x| x != 0)?;
        let inv = crate::linalg::FpMat::scalar_inverse(v[piv], p);
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        Some((piv, v))
    }

    /// Inserts `v`, returning true when it enlarged the span.
    fn insert(&mut self, v: &[u32]) -> bool {
        if let Some(row) = self.residual(v) {
            self.rows.push(row);
            self.rows.sort_by_key(|r| r.0);
            true
        } else {
            false
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Picks module generators for `k`: lifts of a basis of `K / (rad) K` when
/// the group is a p-group in its own characteristic, otherwise a greedy
/// sweep adding any basis vector outside the submodule generated so far.
fn choose_generators(k: &GroupModule) -> Vec<Vec<u32>> {
    let p = k.p();
    let group = k.group();
    let dim = k.dim();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let nakayama = group.p_group_prime() == Some(u64::from(p));
    let mut span = Span::new(p);
    if nakayama {
        // Radical span: all g v - v.
        for g in 1..group.order() {
            for i in 0..dim {
                let mut v = k.rho(g).column(i);
                v[i] = (v[i] + p - 1) % p;
                span.insert(&v);
            }
        }
        for i in 0..dim {
            let mut e = vec![0u32; dim];
            e[i] = 1;
            if span.insert(&e) {
                gens.push(e);
            }
        }
    } else {
        for i in 0..dim {
            let mut e = vec![0u32; dim];
            e[i] = 1;
            if span.contains(&e) {
                continue;
            }
            gens.push(e.clone());
            for g in 0..group.order() {
                span.insert(&k.act(g, &e));
            }
        }
    }
    debug_assert_eq!(span.dim(), dim, "chosen generators fail to generate");
    gens
}

impl FreeResolution {
    /// The resolved group.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Coefficient prime.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Resolves the trivial F_p module of `group` with `length` maps, so
    /// terms `P_0 ... P_length` are available.
    pub fn of_trivial_module(
        group: &FiniteGroup,
        p: u32,
        length: usize,
    ) -> Result<FreeResolution> {
        let n = group.order();
        let mut ranks: Vec<usize> = Vec::new();
        let mut maps: Vec<FpMat> = Vec::new();
        let mut aug = FpMat::zero(p, 1, 0);
        // The module currently being covered, with its basis embedded in
        // the previous free term (or in F_p itself at the start).
        let mut k = GroupModule::trivial(group, p, 1)?;
        let mut emb = FpMat::identity(p, 1);
        for d in 0..=length {
            if k.dim() == 0 {
                ranks.push(0);
                let rows = ranks[d - 1] * n;
                if d > 0 {
                    maps.push(FpMat::zero(p, rows, 0));
                }
                k = GroupModule::trivial(group, p, 0)?;
                emb = FpMat::zero(p, 0, 0);
                continue;
            }
            let gens = choose_generators(&k);
            let rank = gens.len();
            ranks.push(rank);
            // phi: P_d -> K, column (slot, g) = g . gens[slot].
            let mut phi = FpMat::zero(p, k.dim(), rank * n);
            for (slot, gen) in gens.iter().enumerate() {
                for g in 0..n {
                    let img = k.act(g, gen);
                    for (r, &x) in img.iter().enumerate() {
                        phi.set(r, slot * n + g, x);
                    }
                }
            }
            if d == 0 {
                aug = emb.mul(&phi);
            } else {
                maps.push(emb.mul(&phi));
            }
            // Kernel vectors as columns in the coordinates of P_d.
            let kernel = phi.kernel_basis().transpose();
            let solver = FpSolver::new(&kernel);
            let mut rho = Vec::with_capacity(n);
            for g in 0..n {
                let free_g = free_action_matrix(group, p, rank, g);
                let mut m = FpMat::zero(p, kernel.cols(), kernel.cols());
                for j in 0..kernel.cols() {
                    let col = kernel.column(j);
                    let moved = free_g.mul_vec(&col);
                    let c = solver.solve(&moved).ok_or_else(|| {
                        Error::internal("kernel is not closed under the action")
                    })?;
                    for (r, &x) in c.iter().enumerate() {
                        m.set(r, j, x);
                    }
                }
                rho.push(m);
            }
            k = GroupModule::new(group, p, rho)?;
            emb = kernel;
        }
        let res = FreeResolution {
            group: group.clone(),
            p,
            ranks,
            maps,
            aug,
        };
        res.verify()?;
        Ok(res)
    }

    /// Group-algebra rank of `P_d`.
    pub fn rank(&self, d: usize) -> usize {
        self.ranks.get(d).copied().unwrap_or(0)
    }

    /// Number of available terms minus one.
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Exactness and composition checks across the stored range.
    pub fn verify(&self) -> Result<()> {
        let n = self.group.order();
        if !self.maps.is_empty() {
            let first = &self.maps[0];
            if !self.aug.mul(first).is_zero() {
                return Err(Error::internal("augmentation fails on the first map"));
            }
            let aug_null = self.ranks[0] * n - self.aug.rank();
            if first.rank() != aug_null {
                return Err(Error::internal("resolution not exact under P_0"));
            }
        }
        for i in 0..self.maps.len().saturating_sub(1) {
            if !self.maps[i].mul(&self.maps[i + 1]).is_zero() {
                return Err(Error::internal("resolution maps fail to compose to zero"));
            }
            let cols = self.ranks[i + 1] * n;
            let nullity = cols - self.maps[i].rank();
            if self.maps[i + 1].rank() != nullity {
                return Err(Error::internal(format!(
                    "resolution not exact at term {}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Group-ring coefficient of the map `P_{d+1} -> P_d`: the F_p weight
    /// of `(slot_to, g)` in the image of generator `slot_from`.
    fn coefficient(&self, d: usize, slot_to: usize, g: usize, slot_from: usize) -> u32 {
        let n = self.group.order();
        self.maps[d].get(slot_to * n + g, slot_from * n)
    }
}

/// Hyperhomology of the group action on a module complex, reported in
/// degrees `min_degree..=top`. Computed from the total complex of
/// (resolution) tensored over the group algebra with the complex.
pub fn borel_hyperhomology(mc: &ModuleComplex, top: i32) -> Result<crate::chain::GradedDims> {
    let group = mc.group().clone();
    let p = mc.p();
    let a = mc.min_degree();
    let b = mc.max_degree();
    let mut out = crate::chain::GradedDims::new();
    if mc.dim(a) == 0 && a == b {
        return Ok(out);
    }
    if top < a {
        return Ok(out);
    }
    // P_d is needed while d + a <= top + 1.
    let res_len = (top + 1 - a).max(0) as usize;
    let res = FreeResolution::of_trivial_module(&group, p, res_len)?;
    // Total-complex term in degree t: blocks (d, k) with d + k = t. Block
    // offset table per degree.
    let block_dim = |d: usize, k: i32| -> usize { res.rank(d) * mc.dim(k) };
    let term = |t: i32| -> Vec<(usize, i32, usize)> {
        // (d, k, offset) for blocks in degree t.
        let mut blocks = Vec::new();
        let mut off = 0;
        for d in 0..=res.length() {
            let k = t - d as i32;
            if k < a || k > b {
                continue;
            }
            let dim = block_dim(d, k);
            if dim > 0 {
                blocks.push((d, k, off));
                off += dim;
            }
        }
        blocks
    };
    let total_dim = |t: i32| -> usize {
        term(t).iter().map(|&(d, k, _)| block_dim(d, k)).sum()
    };
    // Differential T_t -> T_{t-1}.
    let differential = |t: i32| -> FpMat {
        let rows = total_dim(t - 1);
        let cols = total_dim(t);
        let mut m = FpMat::zero(p, rows, cols);
        let src_blocks = term(t);
        let dst_blocks = term(t - 1);
        let find_dst = |d: usize, k: i32| -> Option<usize> {
            dst_blocks
                .iter()
                .find(|&&(dd, kk, _)| dd == d && kk == k)
                .map(|&(_, _, off)| off)
        };
        for &(d, k, src_off) in &src_blocks {
            let ck = mc.dim(k);
            // Horizontal part: resolution direction, tensored down. A
            // generator (slot_from x m) maps to sum over (slot_to, g) of
            // coefficient * (slot_to x g^{-1} m).
            if d >= 1 {
                if let Some(dst_off) = find_dst(d - 1, k) {
                    let module = mc.module(k).expect("block degree in range");
                    for slot_from in 0..res.rank(d) {
                        for slot_to in 0..res.rank(d - 1) {
                            // Accumulate sum_g c * rho(g^{-1}).
                            let mut acc = FpMat::zero(p, ck, ck);
                            for g in 0..group.order() {
                                let c = res.coefficient(d - 1, slot_to, g, slot_from);
                                if c == 0 {
                                    continue;
                                }
                                let r = module.rho(group.inv(g));
                                for i in 0..ck {
                                    for j in 0..ck {
                                        let v = r.get(i, j);
                                        if v != 0 {
                                            acc.add_at(i, j, c * v);
                                        }
                                    }
                                }
                            }
                            for i in 0..ck {
                                for j in 0..ck {
                                    let v = acc.get(i, j);
                                    if v != 0 {
                                        m.set(
                                            dst_off + slot_to * ck + i,
                                            src_off + slot_from * ck + j,
                                            v,
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
            // Vertical part: complex direction with the Koszul sign (-1)^d.
            if k - 1 >= a {
                if let Some(dst_off) = find_dst(d, k - 1)
                {
                    let dmap = mc.map_from(k).expect("map exists inside range");
                    let sign_flip = d % 2 == 1;
                    let ck1 = mc.dim(k - 1);
                    for slot in 0..res.rank(d) {
                        for i in 0..ck1 {
                            for j in 0..ck {
                                let mut v = dmap.get(i, j);
                                if v != 0 {
                                    if sign_flip {
                                        v = (p - v) % p;
                                    }
                                    m.add_at(
                                        dst_off + slot * ck1 + i,
                                        src_off + slot * ck + j,
                                        v,
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        m
    };
    // d o d = 0 over the reported window is a cheap structural check.
    let mut prev: Option<FpMat> = None;
    let mut ranks_of_d: Vec<(i32, usize)> = Vec::new();
    for t in a..=(top + 1) {
        let d_t = differential(t);
        if let Some(ref d_prev) = prev {
            if d_t.cols() > 0 && d_prev.cols() > 0 && !d_prev.mul(&d_t).is_zero() {
                return Err(Error::internal(
                    "total-complex differential fails to square to zero",
                ));
            }
        }
        ranks_of_d.push((t, d_t.rank()));
        prev = Some(d_t);
    }
    for t in a..=top {
        let dim_t = total_dim(t);
        if dim_t == 0 {
            continue;
        }
        let r_out = ranks_of_d
            .iter()
            .find(|&&(tt, _)| tt == t)
            .map_or(0, |&(_, r)| r);
        let r_in = ranks_of_d
            .iter()
            .find(|&&(tt, _)| tt == t + 1)
            .map_or(0, |&(_, r)| r);
        out.set(
            t,
            crate::chain::DegreeGroup {
                rank: dim_t - r_out - r_in,
                torsion: Vec::new(),
            },
        );
    }
    Ok(out)
}

/// Dimensions of `H_i(G; M)` for `i` in `0..=top`.
pub fn group_homology(m: &GroupModule, top: i32) -> Result<Vec<usize>> {
    let mc = ModuleComplex::single(m.clone())?;
    let h = borel_hyperhomology(&mc, top)?;
    Ok((0..=top).map(|d| h.dim(d)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, elementary_abelian, quaternion, symmetric};
    use crate::modules::GroupModule;

    /// The bar resolution tensored down: an independent small-scale oracle
    /// for group homology. `B_d` is free on d-tuples of group elements.
    fn bar_homology(group: &FiniteGroup, p: u32, m: &GroupModule, top: usize) -> Vec<usize> {
        let n = group.order();
        // Tensored-down term: tuples x module basis.
        let tuples = |d: usize| -> Vec<Vec<usize>> {
            let mut out: Vec<Vec<usize>> = vec![Vec::new()];
            for _ in 0..d {
                let mut next = Vec::new();
                for t in &out {
                    for g in 0..n {
                        let mut t2 = t.clone();
                        t2.push(g);
                        next.push(t2);
                    }
                }
                out = next;
            }
            out
        };
        let dim_m = m.dim();
        let dims: Vec<usize> = (0..=top + 1).map(|d| n.pow(d as u32) * dim_m).collect();
        let index = |t: &[usize], d: usize| -> usize {
            let mut idx = 0;
            for &g in t {
                idx = idx * n + g;
            }
            let _ = d;
            idx
        };
        let mut maps: Vec<FpMat> = Vec::new();
        for d in 1..=top + 1 {
            let mut mat = FpMat::zero(p, dims[d - 1], dims[d]);
            for (ti, t) in tuples(d).iter().enumerate() {
                for v in 0..dim_m {
                    let col = ti * dim_m + v;
                    // Face 0 twists the module by the inverse of the
                    // leading element after tensoring down.
                    let rest = &t[1..];
                    let r0 = index(rest, d - 1);
                    let acted = m.rho(group.inv(t[0]));
                    for i in 0..dim_m {
                        let val = acted.get(i, v);
                        if val != 0 {
                            mat.add_at(r0 * dim_m + i, col, val);
                        }
                    }
                    // Middle faces multiply adjacent entries.
                    for f in 1..d {
                        let mut t2: Vec<usize> = Vec::new();
                        t2.extend_from_slice(&t[..f - 1]);
                        t2.push(group.mul(t[f - 1], t[f]));
                        t2.extend_from_slice(&t[f + 1..]);
                        let r = index(&t2, d - 1);
                        let val = if f % 2 == 0 { 1 } else { p - 1 };
                        mat.add_at(r * dim_m + v, col, val);
                    }
                    // Last face drops the trailing element.
                    let r_last = index(&t[..d - 1], d - 1);
                    let val = if d % 2 == 0 { 1 } else { p - 1 };
                    mat.add_at(r_last * dim_m + v, col, val);
                }
            }
            maps.push(mat);
        }
        for w in maps.windows(2) {
            assert!(w[0].mul(&w[1]).is_zero(), "bar differential squares to zero");
        }
        (0..=top)
            .map(|d| {
                let r_out = if d == 0 { 0 } else { maps[d - 1].rank() };
                let r_in = maps[d].rank();
                dims[d] - r_out - r_in
            })
            .collect()
    }

    use crate::group::FiniteGroup;

    #[test]
    fn cyclic_two_trivial_coefficients() {
        let g = cyclic(2).unwrap();
        let m = GroupModule::trivial(&g, 2, 1).unwrap();
        assert_eq!(group_homology(&m, 5).unwrap(), vec![1; 6]);
    }

    #[test]
    fn klein_four_trivial_coefficients() {
        let g = elementary_abelian(2, 2).unwrap();
        let m = GroupModule::trivial(&g, 2, 1).unwrap();
        // Polynomial growth: dim H_d = d + 1.
        assert_eq!(group_homology(&m, 4).unwrap(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn cyclic_three_at_two_vanishes() {
        let g = cyclic(3).unwrap();
        let m = GroupModule::trivial(&g, 2, 1).unwrap();
        assert_eq!(group_homology(&m, 3).unwrap(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn regular_module_is_acyclic() {
        for g in [cyclic(4).unwrap(), dihedral(4).unwrap()] {
            let m = GroupModule::regular(&g, 2).unwrap();
            assert_eq!(group_homology(&m, 3).unwrap(), vec![1, 0, 0, 0]);
        }
    }

    #[test]
    fn dihedral_and_quaternion_group_homology() {
        let d8 = dihedral(4).unwrap();
        let m = GroupModule::trivial(&d8, 2, 1).unwrap();
        // Mod-2 homology of the order-8 dihedral group grows linearly.
        assert_eq!(group_homology(&m, 3).unwrap(), vec![1, 2, 3, 4]);
        let q8 = quaternion().unwrap();
        let m = GroupModule::trivial(&q8, 2, 1).unwrap();
        // Quaternion: periodic of period 4 with pattern 1, 2, 2, 1.
        assert_eq!(group_homology(&m, 4).unwrap(), vec![1, 2, 2, 1, 1]);
    }

    #[test]
    fn matches_bar_resolution_on_small_groups() {
        let groups: Vec<FiniteGroup> = vec![
            cyclic(2).unwrap(),
            cyclic(4).unwrap(),
            elementary_abelian(2, 2).unwrap(),
            symmetric(3).unwrap(),
        ];
        for g in groups {
            for p in [2u32, 3] {
                let m = GroupModule::trivial(&g, p, 1).unwrap();
                let fast = group_homology(&m, 3).unwrap();
                let slow = bar_homology(&g, p, &m, 3);
                assert_eq!(fast, slow, "group {} at p={}", g.name(), p);
            }
        }
    }

    #[test]
    fn bar_matches_on_permutation_module() {
        // S3 acting on F_3^3 by permuting coordinates.
        let g = symmetric(3).unwrap();
        // Group elements are permutations of 0..3 in lexicographic order;
        // rebuild that correspondence for the module.
        let perms = [
            [0usize, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let images: Vec<Vec<(u32, i8)>> = perms
            .iter()
            .map(|p| (0..3).map(|i| (p[i] as u32, 1i8)).collect())
            .collect();
        let m = GroupModule::from_signed_permutation(&g, 3, 3, &images).unwrap();
        let fast = group_homology(&m, 2).unwrap();
        let slow = bar_homology(&g, 3, &m, 2);
        assert_eq!(fast, slow);
    }

    #[test]
    fn borel_of_two_step_complex() {
        // 0 -> F2 -> F2 -> 0 with zero differential over Z/2: homology of
        // the total complex stacks the two lines of group homology.
        let g = cyclic(2).unwrap();
        let t = GroupModule::trivial(&g, 2, 1).unwrap();
        let mc = ModuleComplex::new(
            &g,
            2,
            0,
            vec![t.clone(), t.clone()],
            vec![FpMat::zero(2, 1, 1)],
        )
        .unwrap();
        let h = borel_hyperhomology(&mc, 3).unwrap();
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dim(1), 2);
        assert_eq!(h.dim(2), 2);
        assert_eq!(h.dim(3), 2);
    }
}
