//! Finite G-simplicial complexes and their equivariant homology.
//!
//! Two independent computations of Bredon homology with constant
//! coefficients are provided. The direct route builds the orbit-category
//! chain presentation literally (one generator per subgroup-cell pair,
//! identifications from orbit-category morphisms) and eliminates it to a
//! free complex. The collapse route, valid for p-groups, sums stratumwise
//! coinvariant homology. Their agreement on every p-group input is the
//! engine's central cross-check, and the isotropy spectral sequence tables
//! are assembled from the same strata.
//!
//! Complexes are kept rigid: the stabilizer of a simplex fixes it
//! vertexwise. Any constructor input failing this is barycentrically
//! subdivided once, which always suffices; rigidity makes fixed-point sets
//! genuine subcomplexes and keeps all stabilizer signs positive.

use crate::bitset::ElemSet;
use crate::chain::{ChainComplex, Coeff, DegreeGroup, GradedDims};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::group::{FiniteGroup, Quotient, SubgroupLattice};
use crate::limits::Limits;
use crate::linalg::IntMat;
use crate::modules::{PermComplex, SignedImage};
use crate::poset::GPoset;
use crate::resolution::borel_hyperhomology;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Largest degree bound accepted by the nerve-form spectral sequence; the
/// free resolutions behind it are built to this length plus one.
pub const MAX_E1_DEGREE: i32 = 64;

/// Sorts a vertex list, returning the parity of the sort as a sign.
fn sort_sign(mut v: Vec<u32>) -> (Vec<u32>, i8) {
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    (v, sign)
}

/// A finite simplicial complex with a rigid action of a finite group.
///
/// Cells are sorted vertex lists grouped by dimension; every vertex is a
/// 0-cell. Constructors close the generating simplices under faces and
/// under the action, so the stored family is always a G-complex.
#[derive(Debug, Clone)]
pub struct GComplex {
    group: FiniteGroup,
    n_vertices: usize,
    cells: Vec<Vec<Vec<u32>>>,
    index: Vec<BTreeMap<Vec<u32>, usize>>,
    action: Vec<Vec<u32>>,
    stabilizers: Vec<Vec<ElemSet>>,
    subdivided: bool,
}

impl GComplex {
    /// Builds the complex generated by `simplices` under faces and the
    /// action. Subdivides once if the action is not rigid.
    pub fn new(
        group: &FiniteGroup,
        n_vertices: usize,
        simplices: &[Vec<u32>],
        action: &[Vec<u32>],
        limits: &Limits,
    ) -> Result<GComplex> {
        assemble(group, n_vertices, simplices, action, limits, true)
    }

    /// The acting group.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.n_vertices
    }

    /// Top dimension.
    pub fn dimension(&self) -> usize {
        self.cells.len() - 1
    }

    /// Cells of one dimension, sorted lexicographically.
    pub fn cells(&self, k: usize) -> &[Vec<u32>] {
        self.cells.get(k).map_or(&[], |c| c.as_slice())
    }

    /// Number of cells in one dimension.
    pub fn cell_count(&self, k: usize) -> usize {
        self.cells.get(k).map_or(0, |c| c.len())
    }

    /// Total number of cells.
    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(|c| c.len()).sum()
    }

    /// Whether construction needed a barycentric subdivision.
    pub fn was_subdivided(&self) -> bool {
        self.subdivided
    }

    /// Image of a vertex.
    pub fn act_vertex(&self, g: usize, v: u32) -> u32 {
        self.action[g][v as usize]
    }

    /// Image of a sorted cell with the orientation sign of the resort.
    pub fn simplex_image(&self, g: usize, cell: &[u32]) -> (Vec<u32>, i8) {
        let moved: Vec<u32> = cell.iter().map(|&v| self.action[g][v as usize]).collect();
        sort_sign(moved)
    }

    /// Index of a cell within its dimension.
    pub fn cell_index(&self, k: usize, cell: &[u32]) -> Option<usize> {
        self.index.get(k)?.get(cell).copied()
    }

    /// Setwise (equivalently, by rigidity, vertexwise) stabilizer.
    pub fn stabilizer(&self, k: usize, idx: usize) -> &ElemSet {
        &self.stabilizers[k][idx]
    }

    /// Full boundary matrix from dimension `k` to `k - 1`.
    fn boundary_matrix(&self, k: usize) -> IntMat {
        let rows = self.cell_count(k - 1);
        let cols = self
            .cells(k)
            .iter()
            .map(|cell| {
                let mut col = Vec::with_capacity(cell.len());
                for (i, _) in cell.iter().enumerate() {
                    let mut face = cell.clone();
                    face.remove(i);
                    let r = self.index[k - 1][&face];
                    col.push((r, if i % 2 == 0 { 1 } else { -1 }));
                }
                col.sort_by_key(|&(r, _)| r);
                col
            })
            .collect();
        IntMat::from_columns(rows, cols)
    }

    /// Plain cellular chain complex, action forgotten.
    pub fn chain_complex(&self) -> Result<ChainComplex> {
        let dims: Vec<usize> = (0..self.cells.len()).map(|k| self.cell_count(k)).collect();
        let maps: Vec<IntMat> = (1..self.cells.len()).map(|k| self.boundary_matrix(k)).collect();
        ChainComplex::new(0, dims, maps)
    }

    /// Cellular chains with the signed permutation action.
    pub fn perm_complex(&self) -> Result<PermComplex> {
        let cc = self.chain_complex()?;
        let mut action = Vec::with_capacity(self.cells.len());
        for k in 0..self.cells.len() {
            let mut per_g = Vec::with_capacity(self.group.order());
            for g in 0..self.group.order() {
                let images: Vec<SignedImage> = self
                    .cells(k)
                    .iter()
                    .map(|cell| {
                        let (img, sign) = self.simplex_image(g, cell);
                        (self.index[k][&img] as u32, sign)
                    })
                    .collect();
                per_g.push(images);
            }
            action.push(per_g);
        }
        PermComplex::new(&self.group, cc, action)
    }

    /// Cellular chain complex of the orbit space X/G.
    pub fn quotient_complex(&self) -> Result<ChainComplex> {
        self.perm_complex()?.coinvariants()
    }

    /// The subcomplex fixed vertexwise by a subgroup, as a complex over
    /// the Weyl group N(H)/H with the residual action.
    pub fn fixed_subcomplex(&self, h: &ElemSet, limits: &Limits) -> Result<GComplex> {
        if !self.group.is_subgroup(h) {
            return Err(Error::invalid("fixed subcomplex needs a subgroup"));
        }
        let weyl = self.group.weyl(h)?;
        let fixed: Vec<u32> = (0..self.n_vertices as u32)
            .filter(|&v| h.iter().all(|g| self.action[g][v as usize] == v))
            .collect();
        let remap: BTreeMap<u32, u32> = fixed
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new as u32))
            .collect();
        let mut seeds = Vec::new();
        for k in 0..self.cells.len() {
            for cell in self.cells(k) {
                if cell.iter().all(|v| remap.contains_key(v)) {
                    seeds.push(cell.iter().map(|v| remap[v]).collect::<Vec<u32>>());
                }
            }
        }
        let mut w_action = Vec::with_capacity(weyl.group.order());
        for w in 0..weyl.group.order() {
            let n = weyl.lift(w);
            let perm: Vec<u32> = fixed
                .iter()
                .map(|&v| remap[&self.action[n][v as usize]])
                .collect();
            w_action.push(perm);
        }
        if fixed.is_empty() {
            return Err(Error::invalid("fixed subcomplex is empty"));
        }
        assemble(&weyl.group, fixed.len(), &seeds, &w_action, limits, true)
    }

    /// Barycentric subdivision with the induced action; always rigid.
    pub fn barycentric_subdivision(&self, limits: &Limits) -> Result<GComplex> {
        let total = self.total_cells();
        limits.check_poset(total)?;
        // Global cell ids ordered by (dimension, index); inclusion raises
        // dimension, so chains are ascending in the global order.
        let mut offset = vec![0usize; self.cells.len() + 1];
        for k in 0..self.cells.len() {
            offset[k + 1] = offset[k] + self.cell_count(k);
        }
        let id_of = |k: usize, i: usize| offset[k] + i;
        let mut by_id: Vec<(usize, usize)> = Vec::with_capacity(total);
        for k in 0..self.cells.len() {
            for i in 0..self.cell_count(k) {
                by_id.push((k, i));
            }
        }
        let is_face = |a: &[u32], b: &[u32]| -> bool {
            a.len() < b.len() && a.iter().all(|v| b.binary_search(v).is_ok())
        };
        // Strict supersets of each cell, by global id.
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); total];
        for a in 0..total {
            let (ka, ia) = by_id[a];
            for b in a + 1..total {
                let (kb, ib) = by_id[b];
                if kb > ka && is_face(&self.cells[ka][ia], &self.cells[kb][ib]) {
                    above[a].push(b);
                }
            }
        }
        // Every chain in the face poset, found by extending past the top.
        let mut seeds: Vec<Vec<u32>> = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..total).map(|a| vec![a]).collect();
        while let Some(chain) = stack.pop() {
            if seeds.len() >= limits.max_cells {
                return Err(Error::SizeCap {
                    what: "cells of a barycentric subdivision".into(),
                    limit: limits.max_cells,
                    got: seeds.len() + 1,
                });
            }
            let last = *chain.last().expect("chains are nonempty");
            for &b in &above[last] {
                let mut longer = chain.clone();
                longer.push(b);
                stack.push(longer);
            }
            seeds.push(chain.iter().map(|&a| a as u32).collect());
        }
        let mut sd_action = Vec::with_capacity(self.group.order());
        for g in 0..self.group.order() {
            let perm: Vec<u32> = by_id
                .iter()
                .map(|&(k, i)| {
                    let (img, _) = self.simplex_image(g, &self.cells[k][i]);
                    id_of(k, self.index[k][&img]) as u32
                })
                .collect();
            sd_action.push(perm);
        }
        let mut out = assemble(&self.group, total, &seeds, &sd_action, limits, false)?;
        out.subdivided = true;
        Ok(out)
    }

    /// Join with another complex over the same group, diagonal action.
    /// Vertices of `other` are shifted past the vertices of `self`.
    pub fn join(&self, other: &GComplex, limits: &Limits) -> Result<GComplex> {
        if self.group != other.group {
            return Err(Error::invalid("join needs a common group"));
        }
        let shift = self.n_vertices as u32;
        let mut seeds: Vec<Vec<u32>> = Vec::new();
        let mut left: Vec<Vec<u32>> = vec![Vec::new()];
        for k in 0..self.cells.len() {
            left.extend(self.cells(k).iter().cloned());
        }
        let mut right: Vec<Vec<u32>> = vec![Vec::new()];
        for k in 0..other.cells.len() {
            right.extend(
                other
                    .cells(k)
                    .iter()
                    .map(|c| c.iter().map(|&v| v + shift).collect::<Vec<u32>>()),
            );
        }
        for a in &left {
            for b in &right {
                if a.is_empty() && b.is_empty() {
                    continue;
                }
                let mut s = a.clone();
                s.extend_from_slice(b);
                seeds.push(s);
            }
        }
        let n = self.n_vertices + other.n_vertices;
        let mut action = Vec::with_capacity(self.group.order());
        for g in 0..self.group.order() {
            let mut perm: Vec<u32> = self.action[g].clone();
            perm.extend(other.action[g].iter().map(|&v| v + shift));
            action.push(perm);
        }
        assemble(&self.group, n, &seeds, &action, limits, true)
    }

    /// Cone with a fixed apex appended as the last vertex.
    pub fn cone(&self, limits: &Limits) -> Result<GComplex> {
        let apex = self.n_vertices as u32;
        let mut seeds: Vec<Vec<u32>> = vec![vec![apex]];
        for k in 0..self.cells.len() {
            for cell in self.cells(k) {
                let mut s = cell.clone();
                s.push(apex);
                seeds.push(s);
            }
        }
        let mut action = Vec::with_capacity(self.group.order());
        for g in 0..self.group.order() {
            let mut perm = self.action[g].clone();
            perm.push(apex);
            action.push(perm);
        }
        assemble(&self.group, self.n_vertices + 1, &seeds, &action, limits, true)
    }

    /// Disjoint union, second summand shifted.
    pub fn disjoint_union(&self, other: &GComplex, limits: &Limits) -> Result<GComplex> {
        if self.group != other.group {
            return Err(Error::invalid("disjoint union needs a common group"));
        }
        let shift = self.n_vertices as u32;
        let mut seeds: Vec<Vec<u32>> = Vec::new();
        for k in 0..self.cells.len() {
            seeds.extend(self.cells(k).iter().cloned());
        }
        for k in 0..other.cells.len() {
            seeds.extend(
                other
                    .cells(k)
                    .iter()
                    .map(|c| c.iter().map(|&v| v + shift).collect::<Vec<u32>>()),
            );
        }
        let mut action = Vec::with_capacity(self.group.order());
        for g in 0..self.group.order() {
            let mut perm = self.action[g].clone();
            perm.extend(other.action[g].iter().map(|&v| v + shift));
            action.push(perm);
        }
        assemble(
            &self.group,
            self.n_vertices + other.n_vertices,
            &seeds,
            &action,
            limits,
            true,
        )
    }
}

fn assemble(
    group: &FiniteGroup,
    n_vertices: usize,
    simplices: &[Vec<u32>],
    action: &[Vec<u32>],
    limits: &Limits,
    allow_subdivide: bool,
) -> Result<GComplex> {
    if n_vertices == 0 {
        return Err(Error::invalid("a complex needs at least one vertex"));
    }
    if action.len() != group.order() {
        return Err(Error::invalid(format!(
            "action has {} rows for a group of order {}",
            action.len(),
            group.order()
        )));
    }
    for (g, perm) in action.iter().enumerate() {
        if perm.len() != n_vertices {
            return Err(Error::invalid(format!(
                "action row {} covers {} of {} vertices",
                g,
                perm.len(),
                n_vertices
            )));
        }
        let mut seen = vec![false; n_vertices];
        for &v in perm {
            let v = v as usize;
            if v >= n_vertices || seen[v] {
                return Err(Error::invalid(format!(
                    "action row {} is not a vertex permutation",
                    g
                )));
            }
            seen[v] = true;
        }
    }
    for v in 0..n_vertices {
        if action[0][v] != v as u32 {
            return Err(Error::invalid("identity element must act trivially"));
        }
    }
    for g in 0..group.order() {
        for h in 0..group.order() {
            let gh = group.mul(g, h);
            for v in 0..n_vertices {
                if action[g][action[h][v] as usize] != action[gh][v] {
                    return Err(Error::invalid(
                        "vertex action is not a group homomorphism",
                    ));
                }
            }
        }
    }
    // Close the generators under faces and the group action.
    let mut closed: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut work: Vec<Vec<u32>> = Vec::new();
    for v in 0..n_vertices as u32 {
        work.push(vec![v]);
    }
    for s in simplices {
        if s.is_empty() {
            return Err(Error::invalid("empty simplex"));
        }
        let mut sorted = s.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::invalid(format!("simplex repeats vertex {}", w[0])));
            }
        }
        if *sorted.last().expect("nonempty") as usize >= n_vertices {
            return Err(Error::invalid("simplex uses an undeclared vertex"));
        }
        work.push(sorted);
    }
    while let Some(cell) = work.pop() {
        if !closed.insert(cell.clone()) {
            continue;
        }
        limits.check_cells(closed.len())?;
        if cell.len() > 1 {
            for i in 0..cell.len() {
                let mut face = cell.clone();
                face.remove(i);
                if !closed.contains(&face) {
                    work.push(face);
                }
            }
        }
        for g in 1..group.order() {
            let (img, _) = {
                let moved: Vec<u32> = cell.iter().map(|&v| action[g][v as usize]).collect();
                sort_sign(moved)
            };
            if !closed.contains(&img) {
                work.push(img);
            }
        }
    }
    let top = closed.iter().map(|c| c.len() - 1).max().expect("vertices exist");
    let mut cells: Vec<Vec<Vec<u32>>> = vec![Vec::new(); top + 1];
    for cell in closed {
        cells[cell.len() - 1].push(cell);
    }
    let index: Vec<BTreeMap<Vec<u32>, usize>> = cells
        .iter()
        .map(|list| {
            list.iter()
                .enumerate()
                .map(|(i, c)| (c.clone(), i))
                .collect()
        })
        .collect();
    // Stabilizers and the rigidity check in one pass.
    let mut rigid = true;
    let mut stabilizers: Vec<Vec<ElemSet>> = Vec::with_capacity(cells.len());
    for list in cells.iter() {
        let mut per_cell = Vec::with_capacity(list.len());
        for cell in list {
            let mut stab = ElemSet::empty();
            for g in 0..group.order() {
                let moved: Vec<u32> = cell.iter().map(|&v| action[g][v as usize]).collect();
                let mut sorted = moved.clone();
                sorted.sort_unstable();
                if sorted == *cell {
                    stab.insert(g);
                    if moved != *cell {
                        rigid = false;
                    }
                }
            }
            per_cell.push(stab);
        }
        stabilizers.push(per_cell);
    }
    let complex = GComplex {
        group: group.clone(),
        n_vertices,
        cells,
        index,
        action: action.to_vec(),
        stabilizers,
        subdivided: false,
    };
    if rigid {
        return Ok(complex);
    }
    if !allow_subdivide {
        return Err(Error::internal(
            "complex is not rigid after one subdivision",
        ));
    }
    complex.barycentric_subdivision(limits)
}

/// The family of subgroups with nonempty fixed subcomplex.
pub fn isotropy_family(x: &GComplex, lattice: &SubgroupLattice) -> Result<Family> {
    let members: Vec<bool> = lattice
        .subgroups
        .iter()
        .map(|h| {
            (0..x.vertex_count()).any(|v| h.is_subset(x.stabilizer(0, v)))
        })
        .collect();
    Family::new(x.group(), lattice, members)
}

/// One isotropy stratum: the cells whose stabilizer is exactly the class
/// representative, with boundary faces of larger isotropy dropped, carrying
/// the free signed action of the Weyl group.
#[derive(Debug, Clone)]
pub struct StratumData {
    /// Conjugacy class index in the lattice.
    pub class: usize,
    /// Representative subgroup.
    pub rep: ElemSet,
    /// Height of the class within the isotropy family.
    pub height: usize,
    /// Weyl group N(H)/H with its coset data.
    pub weyl: Quotient,
    chains: PermComplex,
    cell_counts: Vec<usize>,
}

impl StratumData {
    /// Relative chains with the Weyl action.
    pub fn chains(&self) -> &PermComplex {
        &self.chains
    }

    /// Cells of exact isotropy per dimension.
    pub fn cell_counts(&self) -> &[usize] {
        &self.cell_counts
    }

    /// True when no cell has this exact isotropy.
    pub fn is_empty(&self) -> bool {
        self.cell_counts.iter().all(|&c| c == 0)
    }

    /// Chains of the free Weyl quotient.
    pub fn coinvariants(&self) -> Result<ChainComplex> {
        self.chains.coinvariants_free()
    }
}

/// One stratum per conjugacy class of the isotropy family, in class order.
pub fn strata(x: &GComplex, lattice: &SubgroupLattice) -> Result<Vec<StratumData>> {
    let family = isotropy_family(x, lattice)?;
    let group = x.group();
    let mut out = Vec::new();
    for class in family.member_classes(lattice) {
        let rep_idx = lattice.class_rep(class);
        let rep = lattice.subgroups[rep_idx];
        let weyl = group.weyl(&rep)?;
        // Exact-isotropy cells per dimension, with index lookup.
        let mut exact: Vec<Vec<usize>> = Vec::new();
        let mut exact_index: Vec<BTreeMap<usize, usize>> = Vec::new();
        for k in 0..=x.dimension() {
            let sel: Vec<usize> = (0..x.cell_count(k))
                .filter(|&i| *x.stabilizer(k, i) == rep)
                .collect();
            exact_index.push(sel.iter().enumerate().map(|(a, &i)| (i, a)).collect());
            exact.push(sel);
        }
        let dims: Vec<usize> = exact.iter().map(|s| s.len()).collect();
        let top = dims.iter().rposition(|&d| d > 0).map_or(0, |t| t);
        let dims: Vec<usize> = dims[..=top].to_vec();
        let mut maps = Vec::new();
        for k in 1..dims.len() {
            let cols = exact[k]
                .iter()
                .map(|&i| {
                    let cell = &x.cells(k)[i];
                    let mut col = Vec::new();
                    for (pos, _) in cell.iter().enumerate() {
                        let mut face = cell.clone();
                        face.remove(pos);
                        let fi = x.cell_index(k - 1, &face).expect("faces are cells");
                        // Faces absorbed into larger-isotropy parts vanish
                        // in the relative complex.
                        if let Some(&a) = exact_index[k - 1].get(&fi) {
                            col.push((a, if pos % 2 == 0 { 1i64 } else { -1 }));
                        }
                    }
                    col.sort_by_key(|&(r, _)| r);
                    col
                })
                .collect();
            maps.push(IntMat::from_columns(dims[k - 1], cols));
        }
        let cc = ChainComplex::new(0, dims.clone(), maps)?;
        let mut action = Vec::with_capacity(dims.len());
        for k in 0..dims.len() {
            let mut per_w = Vec::with_capacity(weyl.group.order());
            for w in 0..weyl.group.order() {
                let n = weyl.lift(w);
                let images: Vec<SignedImage> = exact[k]
                    .iter()
                    .map(|&i| {
                        let (img, sign) = x.simplex_image(n, &x.cells(k)[i]);
                        let gi = x.cell_index(k, &img).expect("action is cellular");
                        let a = exact_index[k]
                            .get(&gi)
                            .expect("conjugation preserves exact isotropy");
                        (*a as u32, sign)
                    })
                    .collect();
                per_w.push(images);
            }
            action.push(per_w);
        }
        let chains = PermComplex::new(&weyl.group, cc, action)?;
        if !chains.is_basis_free() {
            return Err(Error::internal(
                "stratum carries a non-free Weyl action; rigidity is broken",
            ));
        }
        out.push(StratumData {
            class,
            rep,
            height: family.height(rep_idx),
            weyl,
            chains,
            cell_counts: (0..=x.dimension())
                .map(|k| exact.get(k).map_or(0, |s| s.len()))
                .collect(),
        });
    }
    Ok(out)
}

/// Signed union-find over generator indices; an entry equals its sign
/// times its parent.
struct SignedUf {
    parent: Vec<usize>,
    sign: Vec<i8>,
}

impl SignedUf {
    fn new(n: usize) -> SignedUf {
        SignedUf {
            parent: (0..n).collect(),
            sign: vec![1; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, i8) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // Second pass recomputes cumulative signs root-ward.
        let mut acc = 1i8;
        for &node in path.iter().rev() {
            acc *= self.sign[node];
            self.parent[node] = root;
            self.sign[node] = acc;
        }
        (root, if x == root { 1 } else { self.sign[x] })
    }

    /// Records `a = s * b`; errors on an inconsistent sign loop.
    fn union(&mut self, a: usize, b: usize, s: i8) -> Result<()> {
        let (ra, sa) = self.find(a);
        let (rb, sb) = self.find(b);
        if ra == rb {
            if sa != s * sb {
                return Err(Error::internal(
                    "orientation-reversing identification of a cell with itself",
                ));
            }
            return Ok(());
        }
        self.parent[ra] = rb;
        self.sign[ra] = sa * s * sb;
        Ok(())
    }
}

/// One degree of the eliminated orbit-category presentation.
struct DirectDegree {
    /// Generators as (subgroup index, cell index).
    gens: Vec<(usize, usize)>,
    id_of: BTreeMap<(usize, usize), usize>,
    uf: SignedUf,
    /// Root substitutions `root = coeff * other_root` from index relations.
    subst: BTreeMap<usize, (i64, usize)>,
    /// Surviving roots in ascending order.
    basis: Vec<usize>,
    basis_index: BTreeMap<usize, usize>,
    /// All imposed relations `a = c * b`, kept for the boundary check.
    relations: Vec<(usize, i64, usize)>,
}

impl DirectDegree {
    /// Fully reduces a generator to a multiple of a basis root.
    fn resolve(&mut self, gen: usize) -> (i64, usize) {
        let (mut root, s) = self.uf.find(gen);
        let mut coeff = i64::from(s);
        while let Some(&(c, next)) = self.subst.get(&root) {
            coeff *= c;
            root = next;
        }
        (coeff, root)
    }
}

fn build_direct_degree(
    x: &GComplex,
    lattice: &SubgroupLattice,
    covers: &[(usize, usize)],
    conj_idx: &[Vec<usize>],
    k: usize,
) -> Result<DirectDegree> {
    let group = x.group();
    let mut gens: Vec<(usize, usize)> = Vec::new();
    for (s, sub) in lattice.subgroups.iter().enumerate() {
        for i in 0..x.cell_count(k) {
            if sub.is_subset(x.stabilizer(k, i)) {
                gens.push((s, i));
            }
        }
    }
    let id_of: BTreeMap<(usize, usize), usize> = gens
        .iter()
        .enumerate()
        .map(|(id, &key)| (key, id))
        .collect();
    let mut uf = SignedUf::new(gens.len());
    let mut relations: Vec<(usize, i64, usize)> = Vec::new();
    // Orbit-category isomorphisms: (H, s) = sign * (gHg^{-1}, g s).
    for (id, &(s, i)) in gens.iter().enumerate() {
        for g in 1..group.order() {
            let s2 = conj_idx[g][s];
            let (img, sign) = x.simplex_image(g, &x.cells(k)[i]);
            let i2 = x.cell_index(k, &img).expect("action is cellular");
            let other = id_of[&(s2, i2)];
            uf.union(id, other, sign)?;
            relations.push((id, i64::from(sign), other));
        }
    }
    // Index relations along covering inclusions: (H, s) = [K:H] (K, s)
    // whenever s is K-fixed. Processed with the smaller subgroup descending
    // so the pivot side is always unit.
    let mut index_rels: Vec<(usize, i64, usize)> = Vec::new();
    for &(h, kk) in covers {
        let c = (lattice.subgroups[kk].len() / lattice.subgroups[h].len()) as i64;
        for i in 0..x.cell_count(k) {
            if lattice.subgroups[kk].is_subset(x.stabilizer(k, i)) {
                index_rels.push((id_of[&(h, i)], c, id_of[&(kk, i)]));
            }
        }
    }
    index_rels.sort_by(|a, b| {
        let la = lattice.subgroups[gens[a.0].0].len();
        let lb = lattice.subgroups[gens[b.0].0].len();
        lb.cmp(&la)
    });
    let mut deg = DirectDegree {
        gens,
        id_of,
        uf,
        subst: BTreeMap::new(),
        basis: Vec::new(),
        basis_index: BTreeMap::new(),
        relations,
    };
    for &(a, c, b) in &index_rels {
        let (ca, ra) = deg.resolve(a);
        let (cb, rb) = deg.resolve(b);
        let rhs = c * cb;
        if ra == rb {
            if ca != rhs {
                return Err(Error::internal(
                    "index relation loops with unequal coefficients",
                ));
            }
            continue;
        }
        if ca.abs() == 1 {
            deg.subst.insert(ra, (rhs * ca, rb));
        } else if rhs.abs() == 1 {
            deg.subst.insert(rb, (ca * rhs, ra));
        } else {
            return Err(Error::internal("index relation without a unit pivot"));
        }
        deg.relations.push((a, c, b));
    }
    for id in 0..deg.gens.len() {
        let (root, _) = deg.uf.find(id);
        if root == id && !deg.subst.contains_key(&id) {
            deg.basis_index.insert(id, deg.basis.len());
            deg.basis.push(id);
        }
    }
    Ok(deg)
}

/// Boundary of one generator, resolved into the basis of the degree below.
fn resolved_boundary(
    x: &GComplex,
    lower: &mut DirectDegree,
    k: usize,
    gen: (usize, usize),
) -> BTreeMap<usize, i64> {
    let (s, i) = gen;
    let cell = &x.cells(k)[i];
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for (pos, _) in cell.iter().enumerate() {
        let mut face = cell.clone();
        face.remove(pos);
        let fi = x.cell_index(k - 1, &face).expect("faces are cells");
        let fid = lower.id_of[&(s, fi)];
        let (coeff, root) = lower.resolve(fid);
        let sign = if pos % 2 == 0 { 1i64 } else { -1 };
        let row = lower.basis_index[&root];
        *acc.entry(row).or_insert(0) += sign * coeff;
    }
    acc.retain(|_, v| *v != 0);
    acc
}

/// Bredon homology with constant coefficients via the orbit-category chain
/// presentation: generators over all subgroup-cell pairs, identifications
/// from conjugation and from index-weighted projections, eliminated to a
/// free integral complex whose homology is then taken in the requested
/// coefficients. This is the oracle route.
pub fn bredon_homology_direct(
    x: &GComplex,
    coeff: Coeff,
    limits: &Limits,
) -> Result<GradedDims> {
    let complex = direct_complex(x, limits)?;
    complex.homology(coeff, limits)
}

/// The eliminated free integral complex underlying the direct route.
pub fn direct_complex(x: &GComplex, limits: &Limits) -> Result<ChainComplex> {
    let lattice = x.group().subgroup_lattice()?;
    let n_sub = lattice.subgroups.len();
    // Covering pairs of the subgroup lattice.
    let mut covers: Vec<(usize, usize)> = Vec::new();
    for a in 0..n_sub {
        for b in 0..n_sub {
            if a == b || !lattice.subgroups[a].is_subset(&lattice.subgroups[b]) {
                continue;
            }
            let between = (0..n_sub).any(|m| {
                m != a
                    && m != b
                    && lattice.subgroups[a].is_subset(&lattice.subgroups[m])
                    && lattice.subgroups[m].is_subset(&lattice.subgroups[b])
            });
            if !between {
                covers.push((a, b));
            }
        }
    }
    let group = x.group();
    let mut conj_idx: Vec<Vec<usize>> = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        conj_idx.push(
            (0..n_sub)
                .map(|s| {
                    lattice
                        .find(&group.conjugate_subgroup(g, &lattice.subgroups[s]))
                        .expect("conjugates are enumerated")
                })
                .collect(),
        );
    }
    let mut degrees: Vec<DirectDegree> = Vec::with_capacity(x.dimension() + 1);
    for k in 0..=x.dimension() {
        degrees.push(build_direct_degree(x, &lattice, &covers, &conj_idx, k)?);
    }
    let dims: Vec<usize> = degrees.iter().map(|d| d.basis.len()).collect();
    let mut maps: Vec<IntMat> = Vec::new();
    for k in 1..=x.dimension() {
        let (lower_slice, upper_slice) = degrees.split_at_mut(k);
        let lower = &mut lower_slice[k - 1];
        let upper = &upper_slice[0];
        let cols: Vec<Vec<(usize, i64)>> = upper
            .basis
            .iter()
            .map(|&id| {
                resolved_boundary(x, lower, k, upper.gens[id])
                    .into_iter()
                    .collect()
            })
            .collect();
        maps.push(IntMat::from_columns(dims[k - 1], cols));
    }
    // Every imposed relation must have zero boundary after resolution;
    // otherwise the eliminated complex would not be well defined.
    for k in 1..=x.dimension() {
        let (lower_slice, upper_slice) = degrees.split_at_mut(k);
        let lower = &mut lower_slice[k - 1];
        let upper = &upper_slice[0];
        for &(a, c, b) in &upper.relations {
            let da = resolved_boundary(x, lower, k, upper.gens[a]);
            let db = resolved_boundary(x, lower, k, upper.gens[b]);
            let mut residue = da;
            for (row, v) in db {
                *residue.entry(row).or_insert(0) -= c * v;
            }
            if residue.values().any(|&v| v != 0) {
                return Err(Error::internal(
                    "a chain relation has nonzero boundary after elimination",
                ));
            }
        }
    }
    let _ = limits;
    ChainComplex::new(0, dims, maps)
}

/// Bredon homology over F_p for a p-group, summed stratum by stratum from
/// the homology of the free Weyl quotients. Must agree with the direct
/// route; that agreement is the collapse statement.
pub fn bredon_homology_collapse(x: &GComplex, p: u32, limits: &Limits) -> Result<GradedDims> {
    if x.group().p_group_prime() != Some(u64::from(p)) {
        return Err(Error::precondition(format!(
            "collapse route needs a p-group for p = {}; {} is not one",
            p,
            x.group().name()
        )));
    }
    let lattice = x.group().subgroup_lattice()?;
    let mut total = GradedDims::new();
    for stratum in strata(x, &lattice)? {
        if stratum.is_empty() {
            continue;
        }
        let quotient = stratum.coinvariants()?;
        total = total.add(&quotient.homology_fp(p));
    }
    let _ = limits;
    Ok(total)
}

/// Bredon cohomology with constant coefficients: simplicial cohomology of
/// the orbit space.
pub fn bredon_cohomology(x: &GComplex, coeff: Coeff, limits: &Limits) -> Result<GradedDims> {
    x.quotient_complex()?.cohomology(coeff, limits)
}

/// Which spectral-sequence table is being assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum E1Flavor {
    /// Converges to the unreduced homology of the complex.
    Unreduced,
    /// Converges to the reduced homology of the unreduced suspension;
    /// includes the point column and a degree shift by one.
    Based,
    /// Based flavor with strata replaced by suspended subgroup-poset
    /// nerves.
    Nerve,
}

/// First-page dimensions of the isotropy spectral sequence, indexed by
/// (filtration column, complementary degree).
#[derive(Debug, Clone)]
pub struct E1Table {
    flavor: E1Flavor,
    p: u32,
    entries: BTreeMap<(usize, i32), usize>,
}

impl E1Table {
    fn new(flavor: E1Flavor, p: u32) -> E1Table {
        E1Table {
            flavor,
            p,
            entries: BTreeMap::new(),
        }
    }

    fn add(&mut self, col: usize, q: i32, dim: usize) {
        if dim > 0 {
            *self.entries.entry((col, q)).or_insert(0) += dim;
        }
    }

    /// Table flavor.
    pub fn flavor(&self) -> E1Flavor {
        self.flavor
    }

    /// Coefficient prime.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Dimension at one position.
    pub fn entry(&self, col: usize, q: i32) -> usize {
        self.entries.get(&(col, q)).copied().unwrap_or(0)
    }

    /// Nonzero positions in order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, i32), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Largest populated column.
    pub fn max_column(&self) -> usize {
        self.entries.keys().map(|&(c, _)| c).max().unwrap_or(0)
    }

    /// Sum along one total degree.
    pub fn total_in_degree(&self, d: i32) -> usize {
        self.entries
            .iter()
            .filter(|&(&(c, q), _)| c as i32 + q == d)
            .map(|(_, &v)| v)
            .sum()
    }

    /// Totals for degrees `0..=top`.
    pub fn totals_through(&self, top: i32) -> Vec<usize> {
        (0..=top).map(|d| self.total_in_degree(d)).collect()
    }
}

/// First page from the isotropy strata of a complex: each conjugacy class
/// contributes the mod-p homology of its free Weyl quotient in its height
/// column. The based flavor shifts by one and adds the point column.
pub fn e1_from_strata(x: &GComplex, p: u32, flavor: E1Flavor) -> Result<E1Table> {
    if flavor == E1Flavor::Nerve {
        return Err(Error::invalid(
            "nerve flavor is computed from a family, not a complex",
        ));
    }
    let lattice = x.group().subgroup_lattice()?;
    let mut table = E1Table::new(flavor, p);
    if flavor == E1Flavor::Based {
        table.add(0, 0, 1);
    }
    for stratum in strata(x, &lattice)? {
        if stratum.is_empty() {
            continue;
        }
        let hom = stratum.coinvariants()?.homology_fp(p);
        let col = stratum.height;
        for (d, group) in hom.iter() {
            let dim = group.rank;
            match flavor {
                E1Flavor::Unreduced => table.add(col, d - col as i32, dim),
                E1Flavor::Based => table.add(col, d + 1 - col as i32, dim),
                E1Flavor::Nerve => unreachable!(),
            }
        }
    }
    Ok(table)
}

/// First page of the based sequence for the classifying space of a family,
/// with strata replaced by suspended reduced nerves of the above-H
/// subposets: the entry at (h, q) is the Weyl-group hyperhomology of those
/// suspended chains in degree h + q - 1, plus the point column.
pub fn e1_nerve(
    group: &FiniteGroup,
    lattice: &SubgroupLattice,
    family: &Family,
    p: u32,
    top_degree: i32,
    limits: &Limits,
) -> Result<E1Table> {
    if top_degree > MAX_E1_DEGREE {
        return Err(Error::Truncated(format!(
            "nerve table requested through degree {}, supported through {}",
            top_degree, MAX_E1_DEGREE
        )));
    }
    let mut table = E1Table::new(E1Flavor::Nerve, p);
    table.add(0, 0, 1);
    if top_degree < 1 {
        return Ok(table);
    }
    for class in family.member_classes(lattice) {
        let rep_idx = lattice.class_rep(class);
        let h_set = lattice.subgroups[rep_idx];
        let height = family.height(rep_idx);
        let weyl = group.weyl(&h_set)?;
        // The poset of family members strictly above H, with the Weyl
        // conjugation action.
        let elements: Vec<usize> = (0..lattice.subgroups.len())
            .filter(|&s| {
                family.contains(s)
                    && s != rep_idx
                    && h_set.is_subset(&lattice.subgroups[s])
            })
            .collect();
        let pos_of: BTreeMap<usize, usize> = elements
            .iter()
            .enumerate()
            .map(|(a, &s)| (s, a))
            .collect();
        let mut relations = Vec::new();
        for (a, &sa) in elements.iter().enumerate() {
            for (b, &sb) in elements.iter().enumerate() {
                if a != b && lattice.subgroups[sa].is_subset(&lattice.subgroups[sb]) {
                    relations.push((a, b));
                }
            }
        }
        let mut action: Vec<Vec<usize>> = Vec::with_capacity(weyl.group.order());
        for w in 0..weyl.group.order() {
            let n = weyl.lift(w);
            let perm: Vec<usize> = elements
                .iter()
                .map(|&s| {
                    let conj = group.conjugate_subgroup(n, &lattice.subgroups[s]);
                    let idx = lattice.find(&conj).expect("conjugates are enumerated");
                    pos_of[&idx]
                })
                .collect();
            action.push(perm);
        }
        let poset = GPoset::new(&weyl.group, elements.len(), &relations, &action)?;
        let oc = poset.order_complex(limits)?;
        let suspended = PermComplex::from_order_complex_augmented(&oc)?.shifted(1);
        let mc = suspended.to_module_complex(p)?;
        let borel = borel_hyperhomology(&mc, top_degree - 1)?;
        for (t, g) in borel.iter() {
            // Entry position from the evaluation degree h + q - 1 = t.
            table.add(height, t + 1 - height as i32, g.rank);
        }
    }
    Ok(table)
}

/// Graded dimensions of the geometric-fixed-point coefficients of a
/// p-group: column totals of the nerve-form first page for the family of
/// proper subgroups. Refused for non-p-groups, whose geometric fixed
/// points vanish; see the maximal-subgroup index gcd certificate.
pub fn phi_coefficients(
    group: &FiniteGroup,
    p: u32,
    top_degree: i32,
    limits: &Limits,
) -> Result<GradedDims> {
    if group.p_group_prime() != Some(u64::from(p)) {
        return Err(Error::precondition(format!(
            "{} is not a {}-group; its geometric fixed points vanish (index gcd certificate)",
            group.name(),
            p
        )));
    }
    let lattice = group.subgroup_lattice()?;
    let family = Family::proper(group, &lattice)?;
    let table = e1_nerve(group, &lattice, &family, p, top_degree, limits)?;
    let mut out = GradedDims::new();
    for d in 0..=top_degree {
        out.set(
            d,
            DegreeGroup {
                rank: table.total_in_degree(d),
                torsion: Vec::new(),
            },
        );
    }
    Ok(out)
}

/// N-fold join of a sphere model with the diagonal action; the join of a
/// free representation sphere stays free away from the empty join, and
/// homology of the result is stable through degree 2N - 2.
pub fn join_power(sphere: &GComplex, n: usize, limits: &Limits) -> Result<GComplex> {
    if n == 0 {
        return Err(Error::invalid("join power needs at least one factor"));
    }
    let mut acc = sphere.clone();
    for _ in 1..n {
        acc = acc.join(sphere, limits)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, elementary_abelian, symmetric};
    use num_bigint::BigUint;

    fn limits() -> Limits {
        Limits::default()
    }

    /// Circle with the reflection action of Z/2: two fixed poles, two
    /// swapped arcs subdivided once to be simplicial.
    fn sign_circle() -> GComplex {
        let g = cyclic(2).unwrap();
        GComplex::new(
            &g,
            4,
            &[vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3]],
            &[vec![0, 1, 2, 3], vec![0, 1, 3, 2]],
            &limits(),
        )
        .unwrap()
    }

    /// Two points swapped by Z/2.
    fn swapped_points() -> GComplex {
        let g = cyclic(2).unwrap();
        GComplex::new(&g, 2, &[], &[vec![0, 1], vec![1, 0]], &limits()).unwrap()
    }

    /// Octagon with the order-8 dihedral group: rotations act by steps of
    /// two, reflections through even vertices.
    fn dihedral_octagon() -> GComplex {
        let g = dihedral(4).unwrap();
        // dihedral(4) element i + 4j acts on Z/8 by k -> 2i + k for j = 0
        // and k -> 2i - k for j = 1.
        let mut action = Vec::new();
        for e in 0..8usize {
            let (i, j) = (e % 4, e / 4);
            let perm: Vec<u32> = (0..8u32)
                .map(|k| {
                    if j == 0 {
                        ((2 * i as u32) + k) % 8
                    } else {
                        ((2 * i as u32) + 16 - k) % 8
                    }
                })
                .collect();
            action.push(perm);
        }
        let edges: Vec<Vec<u32>> = (0..8u32).map(|k| vec![k, (k + 1) % 8]).collect();
        GComplex::new(&g, 8, &edges, &action, &limits()).unwrap()
    }

    fn fixture_point(g: &FiniteGroup) -> GComplex {
        let action: Vec<Vec<u32>> = (0..g.order()).map(|_| vec![0]).collect();
        GComplex::new(g, 1, &[], &action, &limits()).unwrap()
    }

    fn free_orbit(g: &FiniteGroup) -> GComplex {
        let n = g.order();
        let action: Vec<Vec<u32>> = (0..n)
            .map(|a| (0..n).map(|v| g.mul(a, v) as u32).collect())
            .collect();
        GComplex::new(g, n, &[], &action, &limits()).unwrap()
    }

    #[test]
    fn construction_closes_and_stays_rigid() {
        let x = sign_circle();
        assert!(!x.was_subdivided());
        assert_eq!(x.cell_count(0), 4);
        assert_eq!(x.cell_count(1), 4);
        assert_eq!(x.stabilizer(0, 0).len(), 2);
        assert_eq!(x.stabilizer(1, 0).len(), 1);
    }

    #[test]
    fn nonrigid_edge_is_subdivided() {
        let g = cyclic(2).unwrap();
        // A single edge whose endpoints are swapped: the stabilizer of the
        // edge reverses it, so one subdivision is forced.
        let x = GComplex::new(&g, 2, &[vec![0, 1]], &[vec![0, 1], vec![1, 0]], &limits())
            .unwrap();
        assert!(x.was_subdivided());
        assert_eq!(x.cell_count(0), 3);
        assert_eq!(x.cell_count(1), 2);
        let direct = bredon_homology_direct(&x, Coeff::Mod(2), &limits()).unwrap();
        let collapse = bredon_homology_collapse(&x, 2, &limits()).unwrap();
        assert_eq!(direct, collapse);
        assert_eq!(direct.dim(0), 1);
        assert_eq!(direct.dim(1), 0);
    }

    #[test]
    fn fixed_subcomplex_of_sign_circle_is_two_points() {
        let x = sign_circle();
        let g2 = x.group().full_set();
        let fixed = x.fixed_subcomplex(&g2, &limits()).unwrap();
        assert_eq!(fixed.vertex_count(), 2);
        assert_eq!(fixed.dimension(), 0);
        assert_eq!(fixed.group().order(), 1);
        let free = free_orbit(&cyclic(3).unwrap());
        let h = free.group().full_set();
        assert!(free.fixed_subcomplex(&h, &limits()).is_err());
    }

    #[test]
    fn isotropy_families() {
        let x = sign_circle();
        let lattice = x.group().subgroup_lattice().unwrap();
        let fam = isotropy_family(&x, &lattice).unwrap();
        assert_eq!(fam.members().len(), 2);
        assert_eq!(fam.max_height(), 2);

        let free = free_orbit(&cyclic(4).unwrap());
        let lat4 = free.group().subgroup_lattice().unwrap();
        let fam4 = isotropy_family(&free, &lat4).unwrap();
        assert_eq!(fam4.members(), vec![0]);
    }

    #[test]
    fn sign_circle_routes_agree_and_match_hand_values() {
        let x = sign_circle();
        let direct = bredon_homology_direct(&x, Coeff::Mod(2), &limits()).unwrap();
        assert_eq!(direct.dim(0), 2);
        assert_eq!(direct.dim(1), 1);
        let collapse = bredon_homology_collapse(&x, 2, &limits()).unwrap();
        assert_eq!(direct, collapse);
        // Integral form: degree zero is Z + Z/2, degree one vanishes.
        let integral = bredon_homology_direct(&x, Coeff::Z, &limits()).unwrap();
        let h0 = integral.get(0);
        assert_eq!(h0.rank, 1);
        assert_eq!(h0.torsion, vec![BigUint::from(2u32)]);
        assert!(integral.get(1).is_zero());
    }

    #[test]
    fn sign_circle_cohomology_is_asymmetric() {
        let x = sign_circle();
        let coh = bredon_cohomology(&x, Coeff::Mod(2), &limits()).unwrap();
        assert_eq!(coh.dim(0), 1);
        assert_eq!(coh.dim(1), 0);
        let hom = bredon_homology_direct(&x, Coeff::Mod(2), &limits()).unwrap();
        assert_eq!((hom.dim(0), hom.dim(1)), (2, 1));
    }

    #[test]
    fn point_and_free_orbit_bredon() {
        for g in [cyclic(4).unwrap(), dihedral(4).unwrap(), symmetric(3).unwrap()] {
            let pt = fixture_point(&g);
            let h = bredon_homology_direct(&pt, Coeff::Z, &limits()).unwrap();
            assert_eq!(h.get(0).rank, 1);
            assert!(h.get(0).torsion.is_empty());
            assert_eq!(h.support(), vec![0]);
            let orbit = free_orbit(&g);
            let h = bredon_homology_direct(&orbit, Coeff::Z, &limits()).unwrap();
            assert_eq!(h.get(0).rank, 1);
            assert_eq!(h.support(), vec![0]);
            let coh = bredon_cohomology(&orbit, Coeff::Z, &limits()).unwrap();
            assert_eq!(coh.get(0).rank, 1);
        }
    }

    #[test]
    fn point_strata_and_unreduced_table() {
        let g = cyclic(4).unwrap();
        let pt = fixture_point(&g);
        let lattice = g.subgroup_lattice().unwrap();
        let st = strata(&pt, &lattice).unwrap();
        // One stratum per subgroup class of the full family; only the
        // whole-group stratum is populated.
        assert_eq!(st.len(), 3);
        let populated: Vec<_> = st.iter().filter(|s| !s.is_empty()).collect();
        assert_eq!(populated.len(), 1);
        assert_eq!(populated[0].rep.len(), 4);
        assert_eq!(populated[0].height, 1);
        let table = e1_from_strata(&pt, 2, E1Flavor::Unreduced).unwrap();
        assert_eq!(table.entry(1, -1), 1);
        assert_eq!(table.totals_through(2), vec![1, 0, 0]);
    }

    #[test]
    fn sign_circle_tables() {
        let x = sign_circle();
        let un = e1_from_strata(&x, 2, E1Flavor::Unreduced).unwrap();
        assert_eq!(un.totals_through(1), vec![2, 1]);
        assert_eq!(un.entry(1, -1), 2);
        assert_eq!(un.entry(2, -1), 1);
        let based = e1_from_strata(&x, 2, E1Flavor::Based).unwrap();
        assert_eq!(based.entry(0, 0), 1);
        for d in 1..4 {
            assert_eq!(based.total_in_degree(d), un.total_in_degree(d - 1));
        }
    }

    #[test]
    fn octagon_and_its_join_square() {
        let x = dihedral_octagon();
        assert!(!x.was_subdivided());
        let lattice = x.group().subgroup_lattice().unwrap();
        let fam = isotropy_family(&x, &lattice).unwrap();
        // Trivial group plus four reflection subgroups in two classes.
        assert_eq!(fam.members().len(), 5);
        assert_eq!(fam.member_classes(&lattice).len(), 3);
        let st = strata(&x, &lattice).unwrap();
        assert_eq!(st.len(), 3);

        let square = x.join(&x, &limits()).unwrap();
        assert_eq!(square.total_cells(), 288);
        let st2 = strata(&square, &lattice).unwrap();
        assert_eq!(st2.len(), 3);
        let direct = bredon_homology_direct(&square, Coeff::Mod(2), &limits()).unwrap();
        let collapse = bredon_homology_collapse(&square, 2, &limits()).unwrap();
        assert_eq!(direct, collapse);
        // The square of the circle has no fixed points, so the based table
        // totals are the unreduced totals shifted by the suspension.
        let un = e1_from_strata(&square, 2, E1Flavor::Unreduced).unwrap();
        let based = e1_from_strata(&square, 2, E1Flavor::Based).unwrap();
        assert_eq!(based.total_in_degree(0), 1);
        for d in 1..6 {
            assert_eq!(based.total_in_degree(d), un.total_in_degree(d - 1));
        }
    }

    #[test]
    fn rotation_circle_collapse_matches_direct() {
        // Z/4 rotating a square: a free circle.
        let g = cyclic(4).unwrap();
        let action: Vec<Vec<u32>> = (0..4)
            .map(|a| (0..4u32).map(|k| (k + a as u32) % 4).collect())
            .collect();
        let edges: Vec<Vec<u32>> = (0..4u32).map(|k| vec![k, (k + 1) % 4]).collect();
        let x = GComplex::new(&g, 4, &edges, &action, &limits()).unwrap();
        let direct = bredon_homology_direct(&x, Coeff::Mod(2), &limits()).unwrap();
        let collapse = bredon_homology_collapse(&x, 2, &limits()).unwrap();
        assert_eq!(direct, collapse);
        assert_eq!(direct.dim(0), 1);
        assert_eq!(direct.dim(1), 1);
        let integral = bredon_homology_direct(&x, Coeff::Z, &limits()).unwrap();
        assert_eq!(integral.get(0).rank, 1);
        assert_eq!(integral.get(1).rank, 1);
    }

    #[test]
    fn join_powers_of_swapped_points() {
        let s0 = swapped_points();
        let p2 = join_power(&s0, 2, &limits()).unwrap();
        let lattice = p2.group().subgroup_lattice().unwrap();
        assert_eq!(isotropy_family(&p2, &lattice).unwrap().members(), vec![0]);
        let h = bredon_homology_direct(&p2, Coeff::Z, &limits()).unwrap();
        assert_eq!(h.get(0).rank, 1);
        assert_eq!(h.get(1).rank, 1);
        // Three factors give the antipodal two-sphere; its orbit homology
        // is the real projective plane.
        let p3 = join_power(&s0, 3, &limits()).unwrap();
        let h = bredon_homology_direct(&p3, Coeff::Z, &limits()).unwrap();
        assert_eq!(h.get(0).rank, 1);
        assert_eq!(h.get(1).rank, 0);
        assert_eq!(h.get(1).torsion, vec![BigUint::from(2u32)]);
        assert!(h.get(2).is_zero());
        let collapse = bredon_homology_collapse(&p3, 2, &limits()).unwrap();
        let direct = bredon_homology_direct(&p3, Coeff::Mod(2), &limits()).unwrap();
        assert_eq!(collapse, direct);
    }

    #[test]
    fn cone_is_contractible_for_bredon() {
        let g = cyclic(2).unwrap();
        let c = swapped_points().cone(&limits()).unwrap();
        assert_eq!(c.vertex_count(), 3);
        let h = bredon_homology_direct(&c, Coeff::Z, &limits()).unwrap();
        assert_eq!(h.get(0).rank, 1);
        assert_eq!(h.support(), vec![0]);
        let lattice = g.subgroup_lattice().unwrap();
        let fam = isotropy_family(&c, &lattice).unwrap();
        assert_eq!(fam.members().len(), 2);
    }

    #[test]
    fn nerve_table_for_klein_four() {
        let g = elementary_abelian(2, 2).unwrap();
        let lattice = g.subgroup_lattice().unwrap();
        let family = Family::proper(&g, &lattice).unwrap();
        let table = e1_nerve(&g, &lattice, &family, 2, 4, &limits()).unwrap();
        assert_eq!(table.totals_through(4), vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn nerve_table_for_order_two_and_four() {
        let g2 = cyclic(2).unwrap();
        let lat2 = g2.subgroup_lattice().unwrap();
        let fam2 = Family::proper(&g2, &lat2).unwrap();
        let t2 = e1_nerve(&g2, &lat2, &fam2, 2, 5, &limits()).unwrap();
        assert_eq!(t2.totals_through(5), vec![1, 1, 1, 1, 1, 1]);

        let g4 = cyclic(4).unwrap();
        let lat4 = g4.subgroup_lattice().unwrap();
        let fam4 = Family::proper(&g4, &lat4).unwrap();
        let t4 = e1_nerve(&g4, &lat4, &fam4, 2, 5, &limits()).unwrap();
        assert_eq!(t4.totals_through(5), t2.totals_through(5));
    }

    #[test]
    fn phi_values_and_refusal() {
        let phi2 = phi_coefficients(&cyclic(2).unwrap(), 2, 4, &limits()).unwrap();
        assert_eq!(phi2.dims_through(4), vec![1, 1, 1, 1, 1]);
        let phi22 = phi_coefficients(&elementary_abelian(2, 2).unwrap(), 2, 4, &limits())
            .unwrap();
        assert_eq!(phi22.dims_through(4), vec![1, 3, 5, 7, 9]);
        assert!(phi_coefficients(&symmetric(3).unwrap(), 2, 3, &limits()).is_err());
        assert!(phi_coefficients(&cyclic(2).unwrap(), 3, 3, &limits()).is_err());
    }

    #[test]
    fn column_sum_bound_against_direct() {
        // Unreduced table totals bound the direct dimensions, with
        // equality for p-groups.
        let x = dihedral_octagon();
        let table = e1_from_strata(&x, 2, E1Flavor::Unreduced).unwrap();
        let direct = bredon_homology_direct(&x, Coeff::Mod(2), &limits()).unwrap();
        for d in 0..3 {
            assert_eq!(table.total_in_degree(d), direct.dim(d));
        }
        // A non-p-group where the bound is strict: the symmetric group on
        // three letters rotating and reflecting a hexagon.
        let s3 = symmetric(3).unwrap();
        // Elements of symmetric(3) as permutation words over 0..3; realize
        // the hexagon as the Cayley graph layout: vertex = group element.
        let orbit = free_orbit(&s3);
        let t = e1_from_strata(&orbit, 2, E1Flavor::Unreduced).unwrap();
        let d = bredon_homology_direct(&orbit, Coeff::Mod(2), &limits()).unwrap();
        for deg in 0..2 {
            assert!(t.total_in_degree(deg) >= d.dim(deg));
        }
    }
}
