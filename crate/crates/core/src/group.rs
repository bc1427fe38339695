//! Finite groups as validated multiplication tables, with subgroup lattice
//! enumeration, conjugacy bookkeeping, quotients, and standard families.
//!
//! Elements are `0..order` with `0` the identity. Everything downstream
//! (posets, complexes, spectral sequences) identifies group elements by
//! these indices, so constructors here are strict: tables are checked for
//! associativity, identity placement, and invertibility up front.

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::limits::MAX_GROUP_ORDER;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    name: String,
}

/// Equality is by multiplication table; names are labels only.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from `table[a][b] = a * b`, requiring element 0 to be
    /// the identity. Associativity and invertibility are verified.
    pub fn from_table(table: &[Vec<usize>]) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::invalid("group must have at least one element".to_string()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::SizeCap {
                what: "group order".to_string(),
                limit: MAX_GROUP_ORDER,
                got: n,
            });
        }
        let mut flat = vec![0u16; n * n];
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "multiplication table row {} has length {}, expected {}",
                    a,
                    row.len(),
                    n
                )));
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::invalid(format!(
                        "table entry at ({}, {}) is {}, outside 0..{}",
                        a, b, v, n
                    )));
                }
                flat[a * n + b] = v as u16;
            }
        }
        for x in 0..n {
            if flat[x] as usize != x || flat[x * n] as usize != x {
                return Err(Error::invalid(
                    "element 0 must act as the identity".to_string(),
                ));
            }
        }
        // Latin-square check gives fast failure before the cubic pass.
        for a in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for b in 0..n {
                let r = flat[a * n + b] as usize;
                let c = flat[b * n + a] as usize;
                if seen_row[r] || seen_col[c] {
                    return Err(Error::invalid(format!(
                        "row or column {} of the table is not a permutation",
                        a
                    )));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b] as usize;
                for c in 0..n {
                    let bc = flat[b * n + c] as usize;
                    if flat[ab * n + c] != flat[a * n + bc] {
                        return Err(Error::invalid(format!(
                            "associativity fails at ({}, {}, {})",
                            a, b, c
                        )));
                    }
                }
            }
        }
        let mut inv = vec![0u16; n];
        for a in 0..n {
            let mut found = None;
            for b in 0..n {
                if flat[a * n + b] == 0 {
                    found = Some(b);
                    break;
                }
            }
            match found {
                Some(b) => inv[a] = b as u16,
                None => {
                    return Err(Error::invalid(format!("element {} has no inverse", a)));
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table: flat,
            inv,
            name: format!("order-{} group", n),
        })
    }

    /// Replaces the display name.
    pub fn named(mut self, name: &str) -> FiniteGroup {
        self.name = String::from(name);
        self
    }

    /// Display name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Product of two elements.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    /// Inverse of an element.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g x g^{-1}`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Counts elements of each multiplicative order.
    pub fn order_spectrum(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for a in 0..self.order {
            *out.entry(self.element_order(a)).or_insert(0) += 1;
        }
        out
    }

    /// True when the group is commutative.
    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order {
            for b in (a + 1)..self.order {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// The prime `p` when the order is a power `p^k` with `k >= 1`.
    pub fn p_group_prime(&self) -> Option<u64> {
        let mut n = self.order as u64;
        if n <= 1 {
            return None;
        }
        let mut p = 2;
        while n % p != 0 {
            p += 1;
        }
        while n % p == 0 {
            n /= p;
        }
        if n == 1 {
            Some(p)
        } else {
            None
        }
    }

    /// Primes dividing the group order.
    pub fn prime_divisors(&self) -> Vec<u64> {
        let mut n = self.order as u64;
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                out.push(p);
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// The whole group as an element set.
    pub fn full_set(&self) -> ElemSet {
        ElemSet::full(self.order)
    }

    /// Subgroup generated by the given elements.
    pub fn closure(&self, gens: &[usize]) -> ElemSet {
        let mut set = ElemSet::empty();
        let mut list: Vec<usize> = Vec::new();
        let push = |set: &mut ElemSet, list: &mut Vec<usize>, x: usize| {
            if !set.contains(x) {
                set.insert(x);
                list.push(x);
            }
        };
        push(&mut set, &mut list, 0);
        for &g in gens {
            push(&mut set, &mut list, g);
        }
        let mut i = 0;
        while i < list.len() {
            let mut j = 0;
            while j < list.len() {
                let p = self.mul(list[i], list[j]);
                push(&mut set, &mut list, p);
                let q = self.mul(list[j], list[i]);
                push(&mut set, &mut list, q);
                j += 1;
            }
            i += 1;
        }
        set
    }

    /// True when the set is closed under the group operations and contains
    /// the identity.
    pub fn is_subgroup(&self, s: &ElemSet) -> bool {
        if !s.contains(0) {
            return false;
        }
        for a in s.iter() {
            for b in s.iter() {
                if !s.contains(self.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// `g H g^{-1}` as a set.
    pub fn conjugate_subgroup(&self, g: usize, h: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty();
        for x in h.iter() {
            out.insert(self.conjugate(g, x));
        }
        out
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> ElemSet {
        let mut out = ElemSet::empty();
        for z in 0..self.order {
            if (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)) {
                out.insert(z);
            }
        }
        out
    }

    /// Normalizer of a subgroup.
    pub fn normalizer(&self, h: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty();
        for g in 0..self.order {
            if self.conjugate_subgroup(g, h) == *h {
                out.insert(g);
            }
        }
        out
    }

    /// True when the subgroup is normal in the whole group.
    pub fn is_normal(&self, h: &ElemSet) -> bool {
        self.normalizer(h).len() == self.order
    }

    /// Every subgroup, smallest first, with conjugacy classes. Capped at
    /// order 128: beyond that lattice sizes stop being desk scale.
    pub fn subgroup_lattice(&self) -> Result<SubgroupLattice> {
        if self.order > 128 {
            return Err(Error::SizeCap {
                what: "subgroup enumeration order".to_string(),
                limit: 128,
                got: self.order,
            });
        }
        let mut found: BTreeSet<ElemSet> = BTreeSet::new();
        found.insert(ElemSet::singleton(0));
        for g in 1..self.order {
            found.insert(self.closure(&[g]));
        }
        // Fixpoint over one-element extensions; every subgroup is reached
        // because a maximal chain refines to single-generator steps.
        loop {
            let snapshot: Vec<ElemSet> = found.iter().cloned().collect();
            let before = found.len();
            for s in &snapshot {
                if s.len() == self.order {
                    continue;
                }
                for g in 0..self.order {
                    if !s.contains(g) {
                        let mut gens: Vec<usize> = s.iter().collect();
                        gens.push(g);
                        found.insert(self.closure(&gens));
                    }
                }
            }
            if found.len() == before {
                break;
            }
        }
        let mut subgroups: Vec<ElemSet> = found.into_iter().collect();
        subgroups.sort_by_key(|s| (s.len(), s.clone()));
        let index_of: BTreeMap<ElemSet, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..subgroups.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut orbit: BTreeSet<usize> = BTreeSet::new();
            for g in 0..self.order {
                let c = self.conjugate_subgroup(g, &subgroups[i]);
                orbit.insert(index_of[&c]);
            }
            let class_idx = classes.len();
            let members: Vec<usize> = orbit.into_iter().collect();
            for &m in &members {
                class_of[m] = class_idx;
            }
            classes.push(members);
        }
        Ok(SubgroupLattice {
            subgroups,
            classes,
            class_of,
            index_of,
        })
    }

    /// Left coset decomposition of `n_set` by `h_set` with the group law on
    /// cosets; requires `h_set` normal in `n_set`.
    pub fn quotient(&self, n_set: &ElemSet, h_set: &ElemSet) -> Result<Quotient> {
        if !self.is_subgroup(n_set) || !self.is_subgroup(h_set) {
            return Err(Error::precondition(
                "quotient requires subgroups of the ambient group".to_string(),
            ));
        }
        if !h_set.is_subset(n_set) {
            return Err(Error::precondition(
                "kernel must be contained in the subgroup being divided".to_string(),
            ));
        }
        for g in n_set.iter() {
            if self.conjugate_subgroup(g, h_set) != *h_set {
                return Err(Error::precondition(format!(
                    "kernel is not normal: element {} moves it",
                    g
                )));
            }
        }
        let mut coset_of: Vec<Option<usize>> = vec![None; self.order];
        let mut reps: Vec<usize> = Vec::new();
        // Ascending scan makes every representative the least element of
        // its coset, and puts the kernel itself at index 0.
        for g in n_set.iter() {
            if coset_of[g].is_some() {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for h in h_set.iter() {
                coset_of[self.mul(g, h)] = Some(idx);
            }
        }
        let m = reps.len();
        let mut table = vec![vec![0usize; m]; m];
        for a in 0..m {
            for b in 0..m {
                table[a][b] = coset_of[self.mul(reps[a], reps[b])]
                    .expect("coset product stays in the subgroup");
            }
        }
        let group = FiniteGroup::from_table(&table)?
            .named(&format!("{} quotient of order {}", self.name, m));
        Ok(Quotient {
            group,
            reps,
            coset_of,
        })
    }

    /// Weyl group `N(H)/H` of a subgroup.
    pub fn weyl(&self, h: &ElemSet) -> Result<Quotient> {
        let n = self.normalizer(h);
        self.quotient(&n, h)
    }

    /// Direct product, indexed so `(a, b)` becomes `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let n1 = self.order;
        let n2 = other.order;
        let n = n1.checked_mul(n2).ok_or_else(|| {
            Error::invalid("direct product order overflows".to_string())
        })?;
        if n > MAX_GROUP_ORDER {
            return Err(Error::SizeCap {
                what: "group order".to_string(),
                limit: MAX_GROUP_ORDER,
                got: n,
            });
        }
        let mut table = vec![vec![0usize; n]; n];
        for a1 in 0..n1 {
            for b1 in 0..n2 {
                for a2 in 0..n1 {
                    for b2 in 0..n2 {
                        let x = a1 * n2 + b1;
                        let y = a2 * n2 + b2;
                        table[x][y] = self.mul(a1, a2) * n2 + other.mul(b1, b2);
                    }
                }
            }
        }
        FiniteGroup::from_table(&table)
            .map(|g| g.named(&format!("{} x {}", self.name, other.name)))
    }

    /// Proper subgroups maximal under inclusion.
    pub fn maximal_subgroups(&self, lattice: &SubgroupLattice) -> Vec<usize> {
        let n = lattice.subgroups.len();
        let mut out = Vec::new();
        for i in 0..n {
            if lattice.subgroups[i].len() == self.order {
                continue;
            }
            let mut maximal = true;
            for j in 0..n {
                if j != i
                    && lattice.subgroups[j].len() < self.order
                    && lattice.subgroups[i].is_subset(&lattice.subgroups[j])
                    && lattice.subgroups[i] != lattice.subgroups[j]
                {
                    maximal = false;
                    break;
                }
            }
            if maximal {
                out.push(i);
            }
        }
        out
    }

    /// Frattini subgroup: intersection of the maximal subgroups.
    pub fn frattini(&self, lattice: &SubgroupLattice) -> ElemSet {
        let maximals = self.maximal_subgroups(lattice);
        let mut out = self.full_set();
        for m in maximals {
            out = out.intersect(&lattice.subgroups[m]);
        }
        out
    }

    /// A subgroup of maximal `p`-power order.
    pub fn sylow(&self, p: u64, lattice: &SubgroupLattice) -> ElemSet {
        let mut best = ElemSet::singleton(0);
        for s in &lattice.subgroups {
            let mut n = s.len() as u64;
            while n % p == 0 {
                n /= p;
            }
            if n == 1 && s.len() > best.len() {
                best = s.clone();
            }
        }
        best
    }

    /// Greatest common divisor of the indices of the maximal subgroups,
    /// with one witness per prime: a maximal subgroup containing a full
    /// Sylow subgroup, whose index is therefore prime to that prime. The
    /// gcd is 1 exactly when the order has two distinct prime divisors.
    pub fn index_gcd_certificate(&self, lattice: &SubgroupLattice) -> IndexGcdCertificate {
        let maximals = self.maximal_subgroups(lattice);
        let mut gcd: u64 = 0;
        for &m in &maximals {
            let idx = (self.order / lattice.subgroups[m].len()) as u64;
            gcd = gcd.gcd(&idx);
        }
        if maximals.is_empty() {
            gcd = 1;
        }
        let mut witnesses = Vec::new();
        for p in self.prime_divisors() {
            let syl = self.sylow(p, lattice);
            if syl.len() == self.order {
                continue;
            }
            for &m in &maximals {
                if syl.is_subset(&lattice.subgroups[m]) {
                    witnesses.push(CertificateWitness {
                        prime: p,
                        maximal: lattice.subgroups[m].clone(),
                        index: (self.order / lattice.subgroups[m].len()) as u64,
                    });
                    break;
                }
            }
        }
        IndexGcdCertificate { gcd, witnesses }
    }
}

/// All subgroups of a group together with conjugacy data.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    /// Every subgroup, sorted by size then by element set.
    pub subgroups: Vec<ElemSet>,
    /// Conjugacy classes as sorted lists of subgroup indices, ordered by
    /// their smallest member.
    pub classes: Vec<Vec<usize>>,
    /// Class index of each subgroup.
    pub class_of: Vec<usize>,
    /// Reverse lookup from a subgroup's element set.
    pub index_of: BTreeMap<ElemSet, usize>,
}

impl SubgroupLattice {
    /// Index of a subgroup set, if enumerated.
    pub fn find(&self, s: &ElemSet) -> Option<usize> {
        self.index_of.get(s).copied()
    }

    /// Smallest-index subgroup in a class.
    pub fn class_rep(&self, class: usize) -> usize {
        self.classes[class][0]
    }
}

/// A quotient group together with its coset bookkeeping in the parent.
#[derive(Debug, Clone)]
pub struct Quotient {
    /// The quotient as a standalone group.
    pub group: FiniteGroup,
    /// Least-element representative of each coset.
    pub reps: Vec<usize>,
    /// Coset index of each parent element, `None` outside the subgroup.
    pub coset_of: Vec<Option<usize>>,
}

impl Quotient {
    /// Representative in the parent of a quotient element.
    pub fn lift(&self, q: usize) -> usize {
        self.reps[q]
    }

    /// Quotient element containing a parent element.
    pub fn project(&self, g: usize) -> Option<usize> {
        self.coset_of[g]
    }
}

/// Witness that a maximal subgroup has index prime to a given prime.
#[derive(Debug, Clone)]
pub struct CertificateWitness {
    /// The prime being avoided.
    pub prime: u64,
    /// A maximal subgroup containing a full Sylow subgroup for that prime.
    pub maximal: ElemSet,
    /// Its index in the group.
    pub index: u64,
}

/// Gcd of maximal-subgroup indices plus per-prime witnesses.
#[derive(Debug, Clone)]
pub struct IndexGcdCertificate {
    /// Gcd of the indices of all maximal subgroups.
    pub gcd: u64,
    /// One witness per prime divisor when the group is not a p-group.
    pub witnesses: Vec<CertificateWitness>,
}

/// Cyclic group of order `n`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::invalid("cyclic group order must be positive".to_string()));
    }
    let mut table = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            table[a][b] = (a + b) % n;
        }
    }
    FiniteGroup::from_table(&table).map(|g| g.named(&format!("C{}", n)))
}

/// Elementary abelian group of order `p^k`, elements as base-`p` digit
/// strings added coordinatewise.
pub fn elementary_abelian(p: usize, k: usize) -> Result<FiniteGroup> {
    if p < 2 || k == 0 {
        return Err(Error::invalid(
            "elementary abelian group needs p >= 2 and k >= 1".to_string(),
        ));
    }
    let mut n = 1usize;
    for _ in 0..k {
        n = n.checked_mul(p).ok_or_else(|| {
            Error::invalid("elementary abelian order overflows".to_string())
        })?;
        if n > MAX_GROUP_ORDER {
            return Err(Error::SizeCap {
                what: "group order".to_string(),
                limit: MAX_GROUP_ORDER,
                got: n,
            });
        }
    }
    let add = |a: usize, b: usize| -> usize {
        let mut out = 0;
        let mut mult = 1;
        let (mut x, mut y) = (a, b);
        for _ in 0..k {
            out += ((x % p + y % p) % p) * mult;
            x /= p;
            y /= p;
            mult *= p;
        }
        out
    };
    let mut table = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            table[a][b] = add(a, b);
        }
    }
    FiniteGroup::from_table(&table).map(|g| g.named(&format!("C{}^{}", p, k)))
}

/// Dihedral group of order `2n`: rotations `0..n`, then reflections.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(Error::invalid("dihedral parameter must be positive".to_string()));
    }
    let order = 2 * n;
    // Element i + n*j is r^i s^j; s r^k s = r^{-k}.
    let mut table = vec![vec![0usize; order]; order];
    for i in 0..n {
        for j in 0..2 {
            for k in 0..n {
                for l in 0..2 {
                    let rot = if j == 0 { (i + k) % n } else { (i + n - k % n) % n };
                    let refl = (j + l) % 2;
                    table[i + n * j][k + n * l] = rot + n * refl;
                }
            }
        }
    }
    FiniteGroup::from_table(&table).map(|g| g.named(&format!("D{}", order)))
}

/// Quaternion group of order 8: indices `2b + 4s` over basis `1, i, j, k`
/// with sign bit `s`.
pub fn quaternion() -> Result<FiniteGroup> {
    // basis multiplication: result basis index and sign flip.
    let basis_mul = |a: usize, b: usize| -> (usize, bool) {
        match (a, b) {
            (0, x) => (x, false),
            (x, 0) => (x, false),
            (1, 1) | (2, 2) | (3, 3) => (0, true),
            (1, 2) => (3, false),
            (2, 1) => (3, true),
            (2, 3) => (1, false),
            (3, 2) => (1, true),
            (3, 1) => (2, false),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    let mut table = vec![vec![0usize; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let (ba, sa) = (a % 4, a / 4 == 1);
            let (bb, sb) = (b % 4, b / 4 == 1);
            let (bc, flip) = basis_mul(ba, bb);
            let sc = sa ^ sb ^ flip;
            table[a][b] = bc + if sc { 4 } else { 0 };
        }
    }
    FiniteGroup::from_table(&table).map(|g| g.named("Q8"))
}

fn perms_group(perms: Vec<Vec<u8>>, name: &str) -> Result<FiniteGroup> {
    let mut sorted = perms;
    sorted.sort();
    sorted.dedup();
    let index: BTreeMap<Vec<u8>, usize> = sorted
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let n = sorted.len();
    let mut table = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            // (p q)(x) = p(q(x)).
            let composed: Vec<u8> = sorted[b].iter().map(|&x| sorted[a][x as usize]).collect();
            table[a][b] = *index
                .get(&composed)
                .ok_or_else(|| Error::invalid("permutation set is not closed".to_string()))?;
        }
    }
    FiniteGroup::from_table(&table).map(|g| g.named(name))
}

fn all_perms(n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in all_perms(n - 1) {
        for pos in 0..n {
            let mut p: Vec<u8> = rest.clone();
            p.insert(pos, (n - 1) as u8);
            out.push(p);
        }
    }
    out
}

fn perm_is_even(p: &[u8]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Symmetric group on `n` letters, `n <= 5`.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 5 {
        return Err(Error::invalid(
            "symmetric group supported for 1 <= n <= 5".to_string(),
        ));
    }
    perms_group(all_perms(n), &format!("S{}", n))
}

/// Alternating group on `n` letters, `3 <= n <= 5`.
pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if !(3..=5).contains(&n) {
        return Err(Error::invalid(
            "alternating group supported for 3 <= n <= 5".to_string(),
        ));
    }
    let evens: Vec<Vec<u8>> = all_perms(n).into_iter().filter(|p| perm_is_even(p)).collect();
    perms_group(evens, &format!("A{}", n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let g = cyclic(6).unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.element_order(1), 6);
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.element_order(3), 2);
        let lat = g.subgroup_lattice().unwrap();
        assert_eq!(lat.subgroups.len(), 4);
        assert_eq!(lat.classes.len(), 4);
        assert_eq!(g.p_group_prime(), None);
        assert_eq!(g.prime_divisors(), vec![2, 3]);
        assert_eq!(g.index_gcd_certificate(&lat).gcd, 1);
    }

    #[test]
    fn dihedral_8_lattice() {
        let g = dihedral(4).unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        assert_eq!(g.p_group_prime(), Some(2));
        let spectrum = g.order_spectrum();
        assert_eq!(spectrum.get(&1), Some(&1));
        assert_eq!(spectrum.get(&2), Some(&5));
        assert_eq!(spectrum.get(&4), Some(&2));
        let lat = g.subgroup_lattice().unwrap();
        assert_eq!(lat.subgroups.len(), 10);
        assert_eq!(lat.classes.len(), 8);
        let center = g.center();
        assert_eq!(center.len(), 2);
        assert_eq!(g.frattini(&lat), center);
        let maximals = g.maximal_subgroups(&lat);
        assert_eq!(maximals.len(), 3);
        for m in maximals {
            assert_eq!(lat.subgroups[m].len(), 4);
        }
        let cert = g.index_gcd_certificate(&lat);
        assert_eq!(cert.gcd, 2);
        assert!(cert.witnesses.is_empty());
    }

    #[test]
    fn dihedral_8_weyl_of_reflection() {
        let g = dihedral(4).unwrap();
        // Element 4 is the reflection s; its normalizer is {1, r^2, s, r^2 s}.
        let h = g.closure(&[4]);
        assert_eq!(h.len(), 2);
        let n = g.normalizer(&h);
        assert_eq!(n.len(), 4);
        let w = g.weyl(&h).unwrap();
        assert_eq!(w.group.order(), 2);
        assert_eq!(w.lift(0), 0);
    }

    #[test]
    fn quaternion_lattice() {
        let g = quaternion().unwrap();
        assert_eq!(g.order(), 8);
        let spectrum = g.order_spectrum();
        assert_eq!(spectrum.get(&2), Some(&1));
        assert_eq!(spectrum.get(&4), Some(&6));
        let lat = g.subgroup_lattice().unwrap();
        assert_eq!(lat.subgroups.len(), 6);
        // Every subgroup of Q8 is normal, so classes match subgroups.
        assert_eq!(lat.classes.len(), 6);
        assert_eq!(g.frattini(&lat), g.center());
        assert_eq!(g.index_gcd_certificate(&lat).gcd, 2);
    }

    #[test]
    fn symmetric_3_certificate() {
        let g = symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        let lat = g.subgroup_lattice().unwrap();
        assert_eq!(lat.subgroups.len(), 6);
        assert_eq!(lat.classes.len(), 4);
        let cert = g.index_gcd_certificate(&lat);
        assert_eq!(cert.gcd, 1);
        let primes: Vec<u64> = cert.witnesses.iter().map(|w| w.prime).collect();
        assert_eq!(primes, vec![2, 3]);
        for w in &cert.witnesses {
            assert_ne!(w.index % w.prime, 0);
        }
    }

    #[test]
    fn alternating_4_lattice() {
        let g = alternating(4).unwrap();
        assert_eq!(g.order(), 12);
        let lat = g.subgroup_lattice().unwrap();
        assert_eq!(lat.subgroups.len(), 10);
        assert_eq!(lat.classes.len(), 5);
        let cert = g.index_gcd_certificate(&lat);
        assert_eq!(cert.gcd, 1);
    }

    #[test]
    fn quotient_of_dihedral_by_center() {
        let g = dihedral(4).unwrap();
        let q = g.quotient(&g.full_set(), &g.center()).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.group.is_abelian());
        // Exponent 2: the quotient is the Klein four group.
        for a in 0..4 {
            assert_eq!(q.group.mul(a, a), 0);
        }
        assert_eq!(q.project(0), Some(0));
    }

    #[test]
    fn product_matches_elementary() {
        let c2 = cyclic(2).unwrap();
        let v4 = c2.direct_product(&c2).unwrap();
        let e4 = elementary_abelian(2, 2).unwrap();
        assert_eq!(v4.order(), 4);
        let lat_v = v4.subgroup_lattice().unwrap();
        let lat_e = e4.subgroup_lattice().unwrap();
        assert_eq!(lat_v.subgroups.len(), 5);
        assert_eq!(lat_e.subgroups.len(), 5);
    }

    #[test]
    fn elementary_eight_has_sixteen_subgroups() {
        let g = elementary_abelian(2, 3).unwrap();
        let lat = g.subgroup_lattice().unwrap();
        assert_eq!(lat.subgroups.len(), 16);
        assert_eq!(g.frattini(&lat), ElemSet::singleton(0));
    }

    #[test]
    fn rejects_bad_tables() {
        // Identity not at index 0.
        let t = vec![vec![1, 0], vec![0, 1]];
        assert!(FiniteGroup::from_table(&t).is_err());
        // Non-associative quasigroup on 5 elements (subtraction mod 5).
        let t: Vec<Vec<usize>> = (0..5)
            .map(|a| (0..5).map(|b| (a + 5 - b) % 5).collect())
            .collect();
        assert!(FiniteGroup::from_table(&t).is_err());
    }

    #[test]
    fn closure_and_normalizer() {
        let g = symmetric(3).unwrap();
        let full = g.closure(&[1, 2]);
        // Two distinct transpositions generate everything or a copy of S3.
        assert!(full.len() == 6 || full.len() == 2);
        let lat = g.subgroup_lattice().unwrap();
        for s in &lat.subgroups {
            assert!(g.is_subgroup(s));
            let n = g.normalizer(s);
            assert!(g.is_subgroup(&n));
            assert!(s.is_subset(&n));
        }
    }
}
