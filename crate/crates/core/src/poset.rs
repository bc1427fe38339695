//! Finite posets with an order-preserving group action, and their order
//! complexes.
//!
//! The order complex has one k-simplex per strictly increasing chain of
//! k+1 elements. Because the action preserves order, it permutes chains
//! without reordering their vertices, so the induced action on simplices
//! carries no signs.

use crate::chain::ChainComplex;
use crate::error::{Error, Result};
use crate::group::{cyclic, FiniteGroup};
use crate::limits::Limits;
use crate::linalg::{BitMat, IntMat};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

/// A finite poset carrying an action of a finite group by order-preserving
/// permutations.
#[derive(Debug, Clone)]
pub struct GPoset {
    group: FiniteGroup,
    n: usize,
    leq: BitMat,
    action: Vec<Vec<u32>>,
}

impl GPoset {
    /// Builds a poset on `n` elements from generating relations `(i, j)`
    /// meaning `i <= j`, closed reflexively and transitively, together with
    /// a group action given per group element as images of `0..n`.
    ///
    /// Fails if the closure violates antisymmetry or the action is not by
    /// order-preserving permutations.
    pub fn new(
        group: &FiniteGroup,
        n: usize,
        relations: &[(usize, usize)],
        action: &[Vec<usize>],
    ) -> Result<GPoset> {
        let limits = Limits::default();
        limits.check_poset(n)?;
        let mut leq = BitMat::zero(n, n);
        for i in 0..n {
            leq.set(i, i, true);
        }
        for &(i, j) in relations {
            if i >= n || j >= n {
                return Err(Error::invalid(format!(
                    "relation ({}, {}) out of range for {} elements",
                    i, j, n
                )));
            }
            leq.set(i, j, true);
        }
        // Warshall closure on bit rows.
        for k in 0..n {
            for i in 0..n {
                if leq.get(i, k) {
                    leq.or_rows(i, k);
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq.get(i, j) && leq.get(j, i) {
                    return Err(Error::invalid(format!(
                        "antisymmetry fails: {} <= {} and {} <= {}",
                        i, j, j, i
                    )));
                }
            }
        }
        if action.len() != group.order() {
            return Err(Error::invalid(format!(
                "action given for {} group elements, group has {}",
                action.len(),
                group.order()
            )));
        }
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(group.order());
        for (g, row) in action.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "action row for element {} has length {}, expected {}",
                    g,
                    row.len(),
                    n
                )));
            }
            let mut seen = vec![false; n];
            for &img in row {
                if img >= n || seen[img] {
                    return Err(Error::invalid(format!(
                        "action of element {} is not a permutation",
                        g
                    )));
                }
                seen[img] = true;
            }
            rows.push(row.iter().map(|&x| x as u32).collect());
        }
        for i in 0..n {
            if rows[0][i] as usize != i {
                return Err(Error::invalid(
                    "identity element must act trivially".to_string(),
                ));
            }
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                for i in 0..n {
                    if rows[g][rows[h][i] as usize] != rows[gh][i] {
                        return Err(Error::invalid(format!(
                            "action is not a homomorphism at elements {}, {}",
                            g, h
                        )));
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    if leq.get(i, j)
                        && !leq.get(rows[g][i] as usize, rows[g][j] as usize)
                    {
                        return Err(Error::invalid(format!(
                            "element {} does not preserve {} <= {}",
                            g, i, j
                        )));
                    }
                }
            }
        }
        Ok(GPoset {
            group: group.clone(),
            n,
            leq,
            action: rows,
        })
    }

    /// Poset with the trivial group acting.
    pub fn without_action(n: usize, relations: &[(usize, usize)]) -> Result<GPoset> {
        let trivial = cyclic(1)?;
        let action = vec![(0..n).collect::<Vec<usize>>()];
        GPoset::new(&trivial, n, relations, &action)
    }

    /// The acting group.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.n
    }

    /// True when the poset has no elements.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The order relation after closure.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq.get(i, j)
    }

    /// Image of element `i` under group element `g`.
    pub fn act(&self, g: usize, i: usize) -> usize {
        self.action[g][i] as usize
    }

    /// Number of strict relations `i < j`.
    pub fn strict_relation_count(&self) -> usize {
        let mut c = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.leq.get(i, j) {
                    c += 1;
                }
            }
        }
        c
    }

    /// Strict upper bounds of an element.
    pub fn strictly_above(&self, i: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&j| j != i && self.leq.get(i, j))
            .collect()
    }

    /// The order complex, capped by `limits.max_cells` total simplices.
    pub fn order_complex(&self, limits: &Limits) -> Result<OrderComplex> {
        let mut simplices: Vec<Vec<Vec<u32>>> = Vec::new();
        let mut total = 0usize;
        // DFS over ascending chains; extending only past the last element
        // visits each chain exactly once.
        let mut current: Vec<Vec<u32>> = (0..self.n as u32).map(|i| vec![i]).collect();
        while !current.is_empty() {
            total += current.len();
            limits.check_cells(total)?;
            let mut next: Vec<Vec<u32>> = Vec::new();
            for chain in &current {
                let last = *chain.last().unwrap() as usize;
                for j in self.strictly_above(last) {
                    let mut c = chain.clone();
                    c.push(j as u32);
                    next.push(c);
                }
            }
            simplices.push(core::mem::take(&mut current));
            current = next;
        }
        for level in &mut simplices {
            level.sort();
        }
        let index: Vec<BTreeMap<Vec<u32>, usize>> = simplices
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        Ok(OrderComplex {
            poset: self.clone(),
            simplices,
            index,
        })
    }

    /// Chain counts per dimension by dynamic programming, independent of
    /// the DFS enumeration; used as a cross-check in tests.
    pub fn chain_counts_by_dp(&self) -> Vec<u64> {
        let mut counts: Vec<u64> = Vec::new();
        // ending[j] = number of chains of the current length ending at j.
        let mut ending: Vec<u64> = vec![1; self.n];
        loop {
            let total: u64 = ending.iter().sum();
            if total == 0 {
                break;
            }
            counts.push(total);
            let mut next = vec![0u64; self.n];
            for j in 0..self.n {
                if ending[j] == 0 {
                    continue;
                }
                for k in self.strictly_above(j) {
                    next[k] += ending[j];
                }
            }
            ending = next;
        }
        counts
    }
}

/// The simplicial complex of chains of a `GPoset`, with the induced
/// unsigned action on simplices.
#[derive(Debug, Clone)]
pub struct OrderComplex {
    poset: GPoset,
    /// `simplices[k]` lists the k-simplices as ascending chains, sorted.
    simplices: Vec<Vec<Vec<u32>>>,
    index: Vec<BTreeMap<Vec<u32>, usize>>,
}

impl OrderComplex {
    /// The underlying poset.
    pub fn poset(&self) -> &GPoset {
        &self.poset
    }

    /// Largest simplex dimension, `None` when the poset is empty.
    pub fn top_dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    /// Number of k-simplices.
    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, |v| v.len())
    }

    /// Total number of simplices.
    pub fn total(&self) -> usize {
        self.simplices.iter().map(|v| v.len()).sum()
    }

    /// The k-simplices as chains.
    pub fn simplices(&self, k: usize) -> &[Vec<u32>] {
        self.simplices.get(k).map_or(&[], |v| v.as_slice())
    }

    /// Index of a chain among the k-simplices.
    pub fn simplex_index(&self, k: usize, chain: &[u32]) -> Option<usize> {
        self.index.get(k).and_then(|m| m.get(chain).copied())
    }

    /// Boundary matrix from k-simplices to (k-1)-simplices.
    fn boundary(&self, k: usize) -> IntMat {
        let rows = self.count(k - 1);
        let cols = self.count(k);
        let mut columns: Vec<Vec<(usize, i64)>> = Vec::with_capacity(cols);
        for s in self.simplices(k) {
            let mut col: Vec<(usize, i64)> = Vec::with_capacity(s.len());
            for (omit, _) in s.iter().enumerate() {
                let mut face: Vec<u32> = Vec::with_capacity(s.len() - 1);
                for (t, &v) in s.iter().enumerate() {
                    if t != omit {
                        face.push(v);
                    }
                }
                let r = self.index[k - 1][&face];
                let sign = if omit % 2 == 0 { 1 } else { -1 };
                col.push((r, sign));
            }
            columns.push(col);
        }
        IntMat::from_columns(rows, columns)
    }

    /// Simplicial chain complex in degrees `0..=top`.
    pub fn chain_complex(&self) -> Result<ChainComplex> {
        let dims: Vec<usize> = (0..self.simplices.len()).map(|k| self.count(k)).collect();
        let maps: Vec<IntMat> = (1..self.simplices.len())
            .map(|k| self.boundary(k))
            .collect();
        ChainComplex::new(0, dims, maps)
    }

    /// Augmented complex with one generator in degree -1 and the
    /// augmentation as its incoming boundary. Its homology in degree `d` is
    /// the reduced homology of the order complex; for the empty poset the
    /// single degree -1 survives.
    pub fn augmented_complex(&self) -> Result<ChainComplex> {
        if self.simplices.is_empty() {
            return ChainComplex::new(-1, vec![1], Vec::new());
        }
        let mut dims = vec![1usize];
        dims.extend((0..self.simplices.len()).map(|k| self.count(k)));
        let mut maps = vec![IntMat::from_columns(
            1,
            (0..self.count(0)).map(|_| vec![(0usize, 1i64)]).collect(),
        )];
        maps.extend((1..self.simplices.len()).map(|k| self.boundary(k)));
        ChainComplex::new(-1, dims, maps)
    }

    /// Induced permutation of k-simplices by one group element. Order
    /// preservation keeps chain vertices ascending, so no signs appear.
    pub fn action_on_simplices(&self, g: usize, k: usize) -> Vec<usize> {
        self.simplices(k)
            .iter()
            .map(|s| {
                let image: Vec<u32> = s
                    .iter()
                    .map(|&v| self.poset.act(g, v as usize) as u32)
                    .collect();
                self.index[k][&image]
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::Coeff;
    use crate::group::cyclic;

    fn diamond_circle() -> GPoset {
        // Two minima 0, 1 under two maxima 2, 3; order complex is a 4-gon.
        GPoset::without_action(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn chain_poset_is_contractible() {
        let p = GPoset::without_action(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2), "transitive closure");
        let oc = p.order_complex(&Limits::default()).unwrap();
        assert_eq!(oc.count(0), 3);
        assert_eq!(oc.count(1), 3);
        assert_eq!(oc.count(2), 1);
        let h = oc
            .augmented_complex()
            .unwrap()
            .homology(Coeff::Z, &Limits::default())
            .unwrap();
        assert!(h.support().is_empty(), "reduced homology vanishes");
    }

    #[test]
    fn diamond_is_a_circle() {
        let p = diamond_circle();
        let oc = p.order_complex(&Limits::default()).unwrap();
        assert_eq!(oc.count(0), 4);
        assert_eq!(oc.count(1), 4);
        assert_eq!(oc.top_dimension(), Some(1));
        let h = oc
            .chain_complex()
            .unwrap()
            .homology(Coeff::Z, &Limits::default())
            .unwrap();
        assert_eq!(h.get(0).rank, 1);
        assert_eq!(h.get(1).rank, 1);
    }

    #[test]
    fn dp_counts_match_enumeration() {
        for p in [
            diamond_circle(),
            GPoset::without_action(5, &[(0, 1), (1, 2), (0, 3), (3, 4), (1, 4)]).unwrap(),
        ] {
            let oc = p.order_complex(&Limits::default()).unwrap();
            let dp = p.chain_counts_by_dp();
            let enumerated: Vec<u64> =
                (0..dp.len()).map(|k| oc.count(k) as u64).collect();
            assert_eq!(dp, enumerated);
        }
    }

    #[test]
    fn empty_poset_augmented() {
        let p = GPoset::without_action(0, &[]).unwrap();
        let oc = p.order_complex(&Limits::default()).unwrap();
        assert_eq!(oc.total(), 0);
        let h = oc
            .augmented_complex()
            .unwrap()
            .homology(Coeff::Z, &Limits::default())
            .unwrap();
        assert_eq!(h.get(-1).rank, 1);
    }

    #[test]
    fn swap_action_on_diamond() {
        let g = cyclic(2).unwrap();
        let action = vec![vec![0, 1, 2, 3], vec![1, 0, 2, 3]];
        let p = GPoset::new(&g, 4, &[(0, 2), (0, 3), (1, 2), (1, 3)], &action).unwrap();
        let oc = p.order_complex(&Limits::default()).unwrap();
        let edge_perm = oc.action_on_simplices(1, 1);
        // Edges are [0,2],[0,3],[1,2],[1,3]; the swap exchanges pairs.
        assert_eq!(edge_perm, vec![2, 3, 0, 1]);
        // Identity fixes everything.
        assert_eq!(oc.action_on_simplices(0, 1), vec![0, 1, 2, 3]);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        // Antisymmetry violated through closure.
        let err = GPoset::without_action(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(err.is_err());
        // Non order-preserving action: swap a minimum with a maximum.
        let g = cyclic(2).unwrap();
        let bad = vec![vec![0, 1], vec![1, 0]];
        assert!(GPoset::new(&g, 2, &[(0, 1)], &bad).is_err());
    }
}
