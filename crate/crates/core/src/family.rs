//! Families of subgroups closed under subgroups and conjugation, with the
//! height filtration used to index isotropy strata.
//!
//! Height counts steps down from the top of the family: members with no
//! strictly larger member have height 1, and each strict descent adds one.
//! Height is constant on conjugacy classes.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubgroupLattice};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// A subconjugacy-closed set of subgroups, referenced by their indices in a
/// fixed `SubgroupLattice`.
#[derive(Debug, Clone)]
pub struct Family {
    members: Vec<bool>,
    heights: Vec<usize>,
    max_height: usize,
}

impl Family {
    /// Validates closure under passing to subgroups and under conjugation,
    /// then precomputes heights.
    pub fn new(
        group: &FiniteGroup,
        lattice: &SubgroupLattice,
        members: Vec<bool>,
    ) -> Result<Family> {
        let n = lattice.subgroups.len();
        if members.len() != n {
            return Err(Error::invalid(format!(
                "family flags cover {} subgroups, lattice has {}",
                members.len(),
                n
            )));
        }
        for i in 0..n {
            if !members[i] {
                continue;
            }
            for j in 0..n {
                if !members[j]
                    && lattice.subgroups[j].is_subset(&lattice.subgroups[i])
                {
                    return Err(Error::invalid(format!(
                        "family is not closed under subgroups: member {:?} \
                         has non-member subgroup {:?}",
                        lattice.subgroups[i], lattice.subgroups[j]
                    )));
                }
            }
            for g in 0..group.order() {
                let c = group.conjugate_subgroup(g, &lattice.subgroups[i]);
                let ci = lattice
                    .find(&c)
                    .ok_or_else(|| Error::internal("conjugate missing from lattice"))?;
                if !members[ci] {
                    return Err(Error::invalid(format!(
                        "family is not conjugation closed at {:?}",
                        lattice.subgroups[i]
                    )));
                }
            }
        }
        // Heights: process members from largest to smallest so every
        // strictly larger member is already settled.
        let mut order: Vec<usize> = (0..n).filter(|&i| members[i]).collect();
        order.sort_by_key(|&i| core::cmp::Reverse(lattice.subgroups[i].len()));
        let mut heights = vec![0usize; n];
        let mut max_height = 0;
        for &i in &order {
            let mut best = 0;
            for &j in &order {
                if j != i
                    && lattice.subgroups[i].is_subset(&lattice.subgroups[j])
                    && lattice.subgroups[i] != lattice.subgroups[j]
                {
                    best = best.max(heights[j]);
                }
            }
            heights[i] = best + 1;
            max_height = max_height.max(heights[i]);
        }
        // Conjugation is a poset automorphism preserving the family, so
        // height must be constant on classes.
        for class in &lattice.classes {
            let h0 = heights[class[0]];
            debug_assert!(class.iter().all(|&m| heights[m] == h0));
        }
        Ok(Family {
            members,
            heights,
            max_height,
        })
    }

    /// The family of all subgroups.
    pub fn all(group: &FiniteGroup, lattice: &SubgroupLattice) -> Result<Family> {
        Family::new(group, lattice, vec![true; lattice.subgroups.len()])
    }

    /// The family of proper subgroups.
    pub fn proper(group: &FiniteGroup, lattice: &SubgroupLattice) -> Result<Family> {
        let flags: Vec<bool> = lattice
            .subgroups
            .iter()
            .map(|s| s.len() < group.order())
            .collect();
        Family::new(group, lattice, flags)
    }

    /// Membership by subgroup index.
    pub fn contains(&self, subgroup: usize) -> bool {
        self.members[subgroup]
    }

    /// Height of a member (1 for maximal members), 0 for non-members.
    pub fn height(&self, subgroup: usize) -> usize {
        self.heights[subgroup]
    }

    /// Largest height occurring in the family.
    pub fn max_height(&self) -> usize {
        self.max_height
    }

    /// Indices of member subgroups, ascending.
    pub fn members(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&i| self.members[i]).collect()
    }

    /// Conjugacy classes entirely inside the family, by class index.
    pub fn member_classes(&self, lattice: &SubgroupLattice) -> Vec<usize> {
        (0..lattice.classes.len())
            .filter(|&c| self.members[lattice.classes[c][0]])
            .collect()
    }

    /// Member classes of the given height.
    pub fn classes_of_height(&self, lattice: &SubgroupLattice, h: usize) -> Vec<usize> {
        self.member_classes(lattice)
            .into_iter()
            .filter(|&c| self.heights[lattice.classes[c][0]] == h)
            .collect()
    }
}
