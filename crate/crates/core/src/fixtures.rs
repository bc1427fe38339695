//! Builtin groups and complexes, plus seeded random rigid complexes.
//!
//! Groups are named by a small grammar (`cyclic-4`, `elementary-2-2`,
//! `dihedral-8`, products joined with `x`), complexes either by name or by
//! recipe (`point:`, `orbit:`, `cone:`, `random:<group>:<seed>`). The
//! random generator seeds a ChaCha8 stream, so a (group, seed) pair names
//! one complex forever; the oracle suites rely on that.

use crate::bitset::ElemSet;
use crate::bredon::{join_power, GComplex};
use crate::error::{Error, Result};
use crate::group::{
    alternating, cyclic, dihedral, elementary_abelian, quaternion, symmetric, FiniteGroup,
};
use crate::limits::Limits;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Grammar summary for builtin group names, used in CLI errors.
pub const GROUP_GRAMMAR: &str = "trivial | cyclic-<n> | elementary-<p>-<k> | \
dihedral-<order> | quaternion | symmetric-<n> | alternating-<n> | \
extraspecial-<n>, products joined with 'x'";

/// Grammar summary for builtin complex names, used in CLI errors.
pub const COMPLEX_GRAMMAR: &str = "point:<group> | orbit:<group> | \
cone:<complex> | random:<group>:<seed> | reflection-circle | \
antipodal-<n> | rotation-circle-<n> | octagon | octagon-join-<n>";

fn parse_num(s: &str, what: &str) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::invalid(format!("{} must be a number, got '{}'", what, s)))
}

fn base_group(name: &str) -> Result<FiniteGroup> {
    if name == "trivial" {
        return Ok(cyclic(1)?.named("trivial"));
    }
    if name == "quaternion" {
        return quaternion();
    }
    if let Some(rest) = name.strip_prefix("cyclic-") {
        return cyclic(parse_num(rest, "cyclic order")?);
    }
    if let Some(rest) = name.strip_prefix("elementary-") {
        let (p, k) = rest
            .split_once('-')
            .ok_or_else(|| Error::invalid("elementary needs '<p>-<k>'"))?;
        return elementary_abelian(parse_num(p, "prime")?, parse_num(k, "rank")?);
    }
    if let Some(rest) = name.strip_prefix("dihedral-") {
        let order = parse_num(rest, "dihedral order")?;
        if order % 2 != 0 || order < 2 {
            return Err(Error::invalid(format!(
                "dihedral order must be even and positive, got {}",
                order
            )));
        }
        return dihedral(order / 2);
    }
    if let Some(rest) = name.strip_prefix("symmetric-") {
        return symmetric(parse_num(rest, "symmetric degree")?);
    }
    if let Some(rest) = name.strip_prefix("alternating-") {
        return alternating(parse_num(rest, "alternating degree")?);
    }
    if let Some(rest) = name.strip_prefix("extraspecial-") {
        let width = parse_num(rest, "extraspecial width")?;
        return Ok(crate::extraspecial::build_extraspecial(width)?.group().clone());
    }
    Err(Error::invalid(format!(
        "unknown group '{}'; expected {}",
        name, GROUP_GRAMMAR
    )))
}

/// Looks up a group by name; `x` joins direct factors, as in
/// `cyclic-2xcyclic-4`.
pub fn builtin_group(name: &str) -> Result<FiniteGroup> {
    let mut parts = name.split('x');
    let first = parts.next().expect("split yields at least one part");
    let mut acc = base_group(first)?;
    let mut label = String::from(first);
    for part in parts {
        acc = acc.direct_product(&base_group(part)?)?;
        label.push('x');
        label.push_str(part);
    }
    Ok(acc.named(&label))
}

/// A single fixed point.
pub fn point(group: &FiniteGroup, limits: &Limits) -> Result<GComplex> {
    let action: Vec<Vec<u32>> = (0..group.order()).map(|_| vec![0]).collect();
    GComplex::new(group, 1, &[], &action, limits)
}

/// The free orbit: vertices are the group elements under left translation.
pub fn free_orbit(group: &FiniteGroup, limits: &Limits) -> Result<GComplex> {
    let n = group.order();
    let action: Vec<Vec<u32>> = (0..n)
        .map(|a| (0..n).map(|v| group.mul(a, v) as u32).collect())
        .collect();
    GComplex::new(group, n, &[], &action, limits)
}

/// Coset enumeration for an arbitrary subgroup: representative elements
/// and the coset index of every group element.
fn cosets(group: &FiniteGroup, h: &ElemSet) -> (Vec<usize>, Vec<usize>) {
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(g);
        for x in h.iter() {
            coset_of[group.mul(g, x)] = c;
        }
    }
    (reps, coset_of)
}

/// The orbit G/H as a vertex set under left translation.
pub fn coset_orbit(group: &FiniteGroup, h: &ElemSet, limits: &Limits) -> Result<GComplex> {
    if !group.is_subgroup(h) {
        return Err(Error::invalid("coset orbit needs a subgroup"));
    }
    let (reps, coset_of) = cosets(group, h);
    let action: Vec<Vec<u32>> = (0..group.order())
        .map(|g| {
            reps.iter()
                .map(|&r| coset_of[group.mul(g, r)] as u32)
                .collect()
        })
        .collect();
    GComplex::new(group, reps.len(), &[], &action, limits)
}

/// Circle with the reflection action of the order-two group: two fixed
/// poles joined by two swapped arcs.
pub fn reflection_circle(limits: &Limits) -> Result<GComplex> {
    let g = cyclic(2)?;
    GComplex::new(
        &g,
        4,
        &[vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3]],
        &[vec![0, 1, 2, 3], vec![0, 1, 3, 2]],
        limits,
    )
}

/// Two points swapped by the order-two group.
pub fn swapped_points(limits: &Limits) -> Result<GComplex> {
    let g = cyclic(2)?;
    GComplex::new(&g, 2, &[], &[vec![0, 1], vec![1, 0]], limits)
}

/// The free (n-1)-sphere over the order-two group: n-fold join of a
/// swapped point pair, carrying the antipodal action.
pub fn antipodal_sphere(n: usize, limits: &Limits) -> Result<GComplex> {
    join_power(&swapped_points(limits)?, n, limits)
}

/// An n-gon rotated freely by the cyclic group of order n.
pub fn rotation_circle(n: usize, limits: &Limits) -> Result<GComplex> {
    if n < 3 {
        return Err(Error::invalid("rotation circle needs at least 3 vertices"));
    }
    let g = cyclic(n)?;
    let action: Vec<Vec<u32>> = (0..n)
        .map(|a| (0..n as u32).map(|k| (k + a as u32) % n as u32).collect())
        .collect();
    let edges: Vec<Vec<u32>> = (0..n as u32).map(|k| vec![k, (k + 1) % n as u32]).collect();
    GComplex::new(&g, n, &edges, &action, limits)
}

/// Octagon with the order-8 dihedral action: rotations step by two,
/// reflections fix opposite vertex pairs, edges move freely.
pub fn dihedral_octagon(limits: &Limits) -> Result<GComplex> {
    let g = dihedral(4)?;
    // Element i + 4j is r^i s^j acting by k -> 2i + (-1)^j k on Z/8.
    let mut action = Vec::with_capacity(8);
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
    GComplex::new(&g, 8, &edges, &action, limits)
}

/// N-fold join of the dihedral octagon: the sphere of N copies of the
/// reflection representation, fixed-point free for N >= 1 away from the
/// rotation subgroups.
pub fn octagon_join(n: usize, limits: &Limits) -> Result<GComplex> {
    join_power(&dihedral_octagon(limits)?, n, limits)
}

/// A seeded random rigid complex: vertices are one or two coset orbits of
/// random subgroups, simplices are a few random small seed sets closed
/// under the action, subdivided by the constructor if needed. The result
/// is a function of (group, seed) alone.
pub fn random_rigid_complex(
    group: &FiniteGroup,
    seed: u64,
    limits: &Limits,
) -> Result<GComplex> {
    let lattice = group.subgroup_lattice()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_orbits = rng.random_range(1..=2usize);
    let mut reps_blocks: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut n_vertices = 0usize;
    for _ in 0..n_orbits {
        let h = &lattice.subgroups[rng.random_range(0..lattice.subgroups.len())];
        let block = cosets(group, h);
        n_vertices += block.0.len();
        reps_blocks.push(block);
    }
    let mut action: Vec<Vec<u32>> = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let mut perm: Vec<u32> = Vec::with_capacity(n_vertices);
        let mut offset = 0u32;
        for (reps, coset_of) in &reps_blocks {
            perm.extend(
                reps.iter()
                    .map(|&r| offset + coset_of[group.mul(g, r)] as u32),
            );
            offset += reps.len() as u32;
        }
        action.push(perm);
    }
    let n_seeds = rng.random_range(1..=3usize);
    let mut seeds: Vec<Vec<u32>> = Vec::new();
    for _ in 0..n_seeds {
        let size = rng.random_range(2..=3usize).min(n_vertices);
        let mut simplex: Vec<u32> = Vec::new();
        while simplex.len() < size {
            let v = rng.random_range(0..n_vertices) as u32;
            if !simplex.contains(&v) {
                simplex.push(v);
            }
        }
        seeds.push(simplex);
    }
    GComplex::new(group, n_vertices, &seeds, &action, limits)
}

/// The menu of complexes on which the two Bredon routes are compared: a
/// handful of named shapes plus seeded random complexes up to `count`.
pub fn oracle_suite(
    group: &FiniteGroup,
    count: usize,
    limits: &Limits,
) -> Result<Vec<GComplex>> {
    let mut out = Vec::with_capacity(count);
    out.push(point(group, limits)?);
    let orbit = free_orbit(group, limits)?;
    out.push(orbit.cone(limits)?);
    out.push(orbit.join(&orbit, limits)?);
    out.push(orbit);
    let mut seed = 0u64;
    while out.len() < count {
        out.push(random_rigid_complex(group, seed, limits)?);
        seed += 1;
    }
    Ok(out)
}

/// Looks up a complex by name or recipe; see [`COMPLEX_GRAMMAR`].
pub fn builtin_complex(name: &str, limits: &Limits) -> Result<GComplex> {
    if let Some(rest) = name.strip_prefix("point:") {
        return point(&builtin_group(rest)?, limits);
    }
    if let Some(rest) = name.strip_prefix("orbit:") {
        return free_orbit(&builtin_group(rest)?, limits);
    }
    if let Some(rest) = name.strip_prefix("cone:") {
        return builtin_complex(rest, limits)?.cone(limits);
    }
    if let Some(rest) = name.strip_prefix("random:") {
        let (gname, seed) = rest
            .rsplit_once(':')
            .ok_or_else(|| Error::invalid("random needs '<group>:<seed>'"))?;
        let seed = seed
            .parse::<u64>()
            .map_err(|_| Error::invalid(format!("seed must be a number, got '{}'", seed)))?;
        return random_rigid_complex(&builtin_group(gname)?, seed, limits);
    }
    if name == "reflection-circle" {
        return reflection_circle(limits);
    }
    if let Some(rest) = name.strip_prefix("antipodal-") {
        return antipodal_sphere(parse_num(rest, "join count")?, limits);
    }
    if let Some(rest) = name.strip_prefix("rotation-circle-") {
        return rotation_circle(parse_num(rest, "vertex count")?, limits);
    }
    if name == "octagon" {
        return dihedral_octagon(limits);
    }
    if let Some(rest) = name.strip_prefix("octagon-join-") {
        return octagon_join(parse_num(rest, "join count")?, limits);
    }
    Err(Error::invalid(format!(
        "unknown complex '{}'; expected {}",
        name, COMPLEX_GRAMMAR
    )))
}

/// The five groups on which the collapse criterion is exercised.
pub fn collapse_criterion_groups() -> Result<Vec<FiniteGroup>> {
    Ok(vec![
        cyclic(2)?,
        cyclic(4)?,
        dihedral(4)?,
        quaternion()?,
        elementary_abelian(2, 2)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bredon::{bredon_homology_collapse, bredon_homology_direct};
    use crate::chain::Coeff;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn group_names_round_trip() {
        assert_eq!(builtin_group("trivial").unwrap().order(), 1);
        assert_eq!(builtin_group("cyclic-6").unwrap().order(), 6);
        assert_eq!(builtin_group("elementary-2-3").unwrap().order(), 8);
        assert_eq!(builtin_group("dihedral-8").unwrap().order(), 8);
        assert_eq!(builtin_group("quaternion").unwrap().order(), 8);
        assert_eq!(builtin_group("symmetric-3").unwrap().order(), 6);
        assert_eq!(builtin_group("cyclic-2xcyclic-4").unwrap().order(), 8);
        assert!(builtin_group("dihedral-7").is_err());
        assert!(builtin_group("frobnicate").is_err());
    }

    #[test]
    fn complex_names_build() {
        let l = limits();
        assert_eq!(builtin_complex("point:dihedral-8", &l).unwrap().total_cells(), 1);
        assert_eq!(builtin_complex("orbit:cyclic-3", &l).unwrap().total_cells(), 3);
        let cone = builtin_complex("cone:orbit:cyclic-2", &l).unwrap();
        assert_eq!(cone.total_cells(), 5);
        assert_eq!(builtin_complex("octagon", &l).unwrap().total_cells(), 16);
        assert_eq!(builtin_complex("octagon-join-2", &l).unwrap().total_cells(), 288);
        assert_eq!(
            builtin_complex("antipodal-2", &l).unwrap().dimension(),
            1
        );
        assert!(builtin_complex("seventeen", &l).is_err());
    }

    #[test]
    fn coset_orbit_has_conjugate_stabilizers() {
        let g = builtin_group("dihedral-8").unwrap();
        let lattice = g.subgroup_lattice().unwrap();
        // A non-normal order-2 subgroup: coset stabilizers sweep out the
        // whole conjugacy class.
        let idx = (0..lattice.subgroups.len())
            .find(|&i| lattice.subgroups[i].len() == 2 && !g.is_normal(&lattice.subgroups[i]))
            .unwrap();
        let x = coset_orbit(&g, &lattice.subgroups[idx], &limits()).unwrap();
        assert_eq!(x.vertex_count(), 4);
        for v in 0..4 {
            let stab = x.stabilizer(0, v);
            assert_eq!(stab.len(), 2);
            assert_eq!(lattice.class_of[lattice.find(stab).unwrap()], lattice.class_of[idx]);
        }
    }

    #[test]
    fn random_complexes_are_reproducible_and_rigid() {
        let g = builtin_group("dihedral-8").unwrap();
        for seed in 0..6 {
            let a = random_rigid_complex(&g, seed, &limits()).unwrap();
            let b = random_rigid_complex(&g, seed, &limits()).unwrap();
            assert_eq!(a.total_cells(), b.total_cells());
            for k in 0..=a.dimension() {
                assert_eq!(a.cells(k), b.cells(k));
            }
            // Rigidity: every cell stabilizer fixes the cell vertexwise.
            for k in 0..=a.dimension() {
                for (i, cell) in a.cells(k).iter().enumerate() {
                    for g_el in a.stabilizer(k, i).iter() {
                        let (img, sign) = a.simplex_image(g_el, cell);
                        assert_eq!(&img, cell);
                        assert_eq!(sign, 1);
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_suite_routes_agree_spot_check() {
        // The full five-group sweep lives in the acceptance suite; here one
        // group keeps the generator honest.
        let g = builtin_group("cyclic-4").unwrap();
        for x in oracle_suite(&g, 8, &limits()).unwrap() {
            let direct = bredon_homology_direct(&x, Coeff::Mod(2), &limits()).unwrap();
            let collapse = bredon_homology_collapse(&x, 2, &limits()).unwrap();
            assert_eq!(direct, collapse);
        }
    }
}
