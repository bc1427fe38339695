//! Subcommand implementations. Each builds its whole report as one string
//! (so output is written atomically and byte-identical across runs) and
//! flags whether any built-in verification failed.

use crate::formats::{graded_dims_tsv, load_complex, load_group};
use equihom_core::bitset::ElemSet;
use equihom_core::bredon::{
    bredon_homology_collapse, bredon_homology_direct, e1_from_strata, e1_nerve, phi_coefficients,
    E1Flavor,
};
use equihom_core::chain::Coeff;
use equihom_core::error::{Error, Result};
use equihom_core::extraspecial::{
    decorated_homology, dimension_recursion, enumerate_q_isotropic, final_theorem_lhs_oracle,
    final_theorem_rhs, tits_building_rank, v_formula_as_printed,
};
use equihom_core::family::Family;
use equihom_core::gfp::presentation::{PresentedGradedRing, RingForm};
use equihom_core::gfp::series::{poincare_integral, poincare_mod_p};
use equihom_core::limits::Limits;
use std::fmt::Write as _;

/// Output of one subcommand: the full report text and whether any
/// verification trailer says FAIL.
pub struct CommandOutput {
    /// Complete report, TSV lines.
    pub text: String,
    /// True when a verification performed by the command failed.
    pub failed: bool,
}

impl CommandOutput {
    fn clean(text: String) -> CommandOutput {
        CommandOutput { text, failed: false }
    }
}

/// Which Bredon route(s) to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Route {
    /// Orbit-category chain complex.
    Direct,
    /// Stratumwise coinvariants (p-groups, prime field).
    Collapse,
    /// Both, with an agreement check.
    Both,
}

/// Which first-page table to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Flavor {
    /// Strata of a concrete complex, unreduced form.
    Strata,
    /// Strata of a concrete complex, based (suspension) form.
    Based,
    /// Subgroup-poset nerves of a family; no complex involved.
    Nerve,
}

/// Which family of subgroups to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyKind {
    /// All proper subgroups.
    Proper,
    /// All subgroups.
    All,
}

/// Which coefficient form of the fixed-point ring to present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FormKind {
    /// Coefficients Z/p.
    Modp,
    /// Integral form, described through the Bockstein kernel.
    Integral,
}

/// Parses `z` or `z<m>` into a coefficient ring.
pub fn parse_coeff(s: &str) -> Result<Coeff> {
    if s == "z" {
        return Ok(Coeff::Z);
    }
    if let Some(rest) = s.strip_prefix('z') {
        let m: u64 = rest
            .parse()
            .map_err(|_| Error::Invalid(format!("coefficient '{}' is not z or z<m>", s)))?;
        if m < 2 {
            return Err(Error::Invalid("coefficient modulus must be at least 2".into()));
        }
        return Ok(Coeff::Mod(m));
    }
    Err(Error::Invalid(format!("coefficient '{}' is not z or z<m>", s)))
}

/// `group`: structural facts about one group, one `key<TAB>value` line
/// each.
pub fn group_report(spec: &str) -> Result<CommandOutput> {
    let g = load_group(spec)?;
    let lattice = g.subgroup_lattice()?;
    let abelian = (0..g.order()).all(|a| (0..g.order()).all(|b| g.mul(a, b) == g.mul(b, a)));
    let cert = g.index_gcd_certificate(&lattice);
    let mut out = String::new();
    let _ = writeln!(out, "name\t{}", g.name());
    let _ = writeln!(out, "order\t{}", g.order());
    let _ = writeln!(out, "abelian\t{}", abelian);
    let _ = writeln!(out, "center-order\t{}", g.center().len());
    let _ = writeln!(out, "subgroup-classes\t{}", lattice.classes.len());
    let spectrum: Vec<String> = g
        .order_spectrum()
        .into_iter()
        .map(|(o, c)| format!("{}:{}", o, c))
        .collect();
    let _ = writeln!(out, "order-spectrum\t{}", spectrum.join("\t"));
    match g.p_group_prime() {
        Some(p) => {
            let _ = writeln!(out, "p-group\t{}", p);
        }
        None => {
            let _ = writeln!(out, "p-group\t-");
        }
    }
    let _ = writeln!(out, "frattini-order\t{}", g.frattini(&lattice).len());
    let _ = writeln!(out, "index-gcd\t{}", cert.gcd);
    Ok(CommandOutput::clean(out))
}

/// `poset`: the subgroup family with heights, one row per conjugacy
/// class: `class<TAB>index<TAB>order<TAB>size<TAB>height`.
pub fn poset_report(spec: &str, kind: FamilyKind) -> Result<CommandOutput> {
    let g = load_group(spec)?;
    let lattice = g.subgroup_lattice()?;
    let family = match kind {
        FamilyKind::Proper => Family::proper(&g, &lattice)?,
        FamilyKind::All => Family::all(&g, &lattice)?,
    };
    let classes = family.member_classes(&lattice);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "family\t{}",
        match kind {
            FamilyKind::Proper => "proper",
            FamilyKind::All => "all",
        }
    );
    let _ = writeln!(out, "classes\t{}", classes.len());
    let _ = writeln!(out, "max-height\t{}", family.max_height());
    for &c in &classes {
        let rep = lattice.class_rep(c);
        let _ = writeln!(
            out,
            "class\t{}\t{}\t{}\t{}",
            c,
            lattice.subgroups[rep].len(),
            lattice.classes[c].len(),
            family.height(rep)
        );
    }
    Ok(CommandOutput::clean(out))
}

/// `bredon`: equivariant homology of a complex by one or both routes.
/// With `--route both` the report carries both tables and a PASS/FAIL
/// agreement trailer.
pub fn bredon_run(
    group: Option<&str>,
    complex: &str,
    coeff: &str,
    route: Route,
    limits: &Limits,
) -> Result<CommandOutput> {
    let x = load_complex(complex, group, limits)?;
    let coeff = parse_coeff(coeff)?;
    match route {
        Route::Direct => {
            let h = bredon_homology_direct(&x, coeff, limits)?;
            Ok(CommandOutput::clean(graded_dims_tsv(&h)))
        }
        Route::Collapse => {
            let p = require_prime_field(coeff)?;
            let h = bredon_homology_collapse(&x, p, limits)?;
            Ok(CommandOutput::clean(graded_dims_tsv(&h)))
        }
        Route::Both => {
            let p = require_prime_field(coeff)?;
            let direct = bredon_homology_direct(&x, coeff, limits)?;
            let collapse = bredon_homology_collapse(&x, p, limits)?;
            let agree = direct == collapse;
            let mut out = String::from("route\tdirect\n");
            out.push_str(&graded_dims_tsv(&direct));
            out.push_str("\nroute\tcollapse\n");
            out.push_str(&graded_dims_tsv(&collapse));
            out.push('\n');
            let _ = writeln!(out, "{}\troute-agreement", if agree { "PASS" } else { "FAIL" });
            Ok(CommandOutput { text: out, failed: !agree })
        }
    }
}

fn require_prime_field(coeff: Coeff) -> Result<u32> {
    coeff.as_prime_field().ok_or_else(|| {
        Error::Precondition("the collapse route needs prime-field coefficients z<p>".into())
    })
}

/// `e1`: first page of the isotropy spectral sequence. Rows are
/// `cell<TAB>column<TAB>q<TAB>dim` followed by per-degree totals.
pub fn e1_run(
    group: Option<&str>,
    complex: Option<&str>,
    family: FamilyKind,
    p: u32,
    max_degree: i32,
    flavor: Flavor,
    limits: &Limits,
) -> Result<CommandOutput> {
    let table = match flavor {
        Flavor::Nerve => {
            if complex.is_some() {
                return Err(Error::Invalid(
                    "the nerve flavor is built from the group's family; omit --complex".into(),
                ));
            }
            let Some(gspec) = group else {
                return Err(Error::Invalid("the nerve flavor needs --group".into()));
            };
            let g = load_group(gspec)?;
            let lattice = g.subgroup_lattice()?;
            let fam = match family {
                FamilyKind::Proper => Family::proper(&g, &lattice)?,
                FamilyKind::All => Family::all(&g, &lattice)?,
            };
            e1_nerve(&g, &lattice, &fam, p, max_degree, limits)?
        }
        Flavor::Strata | Flavor::Based => {
            let Some(cspec) = complex else {
                return Err(Error::Invalid("the strata flavors need --complex".into()));
            };
            let x = load_complex(cspec, group, limits)?;
            let f = if flavor == Flavor::Strata {
                E1Flavor::Unreduced
            } else {
                E1Flavor::Based
            };
            e1_from_strata(&x, p, f)?
        }
    };
    let mut out = String::new();
    let mut top = 0i32;
    for ((c, q), dim) in table.entries() {
        let _ = writeln!(out, "cell\t{}\t{}\t{}", c, q, dim);
        top = top.max(c as i32 + q);
    }
    if flavor == Flavor::Nerve {
        top = max_degree;
    }
    for (d, t) in table.totals_through(top).into_iter().enumerate() {
        let _ = writeln!(out, "total\t{}\t{}", d, t);
    }
    Ok(CommandOutput::clean(out))
}

/// `phi`: fixed-point coefficient dimensions of a p-group, with a
/// built-in cross-check that the answer only depends on the group modulo
/// its Frattini subgroup.
pub fn phi_run(spec: &str, p: u32, max_degree: i32, limits: &Limits) -> Result<CommandOutput> {
    if max_degree < 0 {
        return Err(Error::Invalid("degree bound must be nonnegative".into()));
    }
    let g = load_group(spec)?;
    let h = phi_coefficients(&g, p, max_degree, limits)?;
    let lattice = g.subgroup_lattice()?;
    let frattini = g.frattini(&lattice);
    let q = g.quotient(&ElemSet::full(g.order()), &frattini)?;
    let hq = phi_coefficients(&q.group, p, max_degree, limits)?;
    let agree = h == hq;
    let mut out = graded_dims_tsv(&h);
    let _ = writeln!(out, "{}\tfrattini-reduction", if agree { "PASS" } else { "FAIL" });
    Ok(CommandOutput { text: out, failed: !agree })
}

/// `hilbert`: graded dimensions of the presented fixed-point ring next to
/// its Poincare series, with optional model and Bockstein verification.
/// Columns: `degree<TAB>presentation-dim<TAB>series-coeff<TAB>model-rank`
/// (`-` when the model is not exercised).
pub fn hilbert_run(
    p: u32,
    n: usize,
    form: FormKind,
    max_degree: usize,
    verify_model: bool,
    verify_bockstein: bool,
) -> Result<CommandOutput> {
    if form == FormKind::Integral && (verify_model || verify_bockstein) {
        return Err(Error::Precondition(
            "model and Bockstein verification run on the mod-p form".into(),
        ));
    }
    let ring_form = match form {
        FormKind::Modp => RingForm::ModP,
        FormKind::Integral => RingForm::Integral,
    };
    let ring = PresentedGradedRing::new(p, n, ring_form)?;
    let dims = ring.graded_dims_through(max_degree);
    let series = match form {
        FormKind::Modp => poincare_mod_p(p, n, max_degree)?,
        FormKind::Integral => poincare_integral(p, n, max_degree)?,
    };
    let model = if verify_model {
        Some(equihom_core::gfp::model::verify_presentation_in_model(&ring, max_degree)?)
    } else {
        None
    };
    let mut out = String::new();
    let mut failed = false;
    for d in 0..=max_degree {
        let m = model
            .as_ref()
            .map_or("-".to_string(), |v| v[d].to_string());
        let _ = writeln!(out, "{}\t{}\t{}\t{}", d, dims[d], series.coeff(d), m);
    }
    let series_ok = (0..=max_degree).all(|d| dims[d] as u64 == series.coeff(d));
    failed |= !series_ok;
    let _ = writeln!(out, "{}\tpresentation-series", pass(series_ok));
    if let Some(v) = &model {
        let ok = (0..=max_degree).all(|d| v[d] == dims[d]);
        failed |= !ok;
        let _ = writeln!(out, "{}\tpresentation-model", pass(ok));
    }
    if verify_bockstein {
        let rel_ok = ring.bockstein_preserves_relations().is_ok();
        failed |= !rel_ok;
        let _ = writeln!(out, "{}\tbockstein-relations", pass(rel_ok));
        let sq_ok = bockstein_squares_to_zero(&ring, max_degree)?;
        failed |= !sq_ok;
        let _ = writeln!(out, "{}\tbockstein-squares", pass(sq_ok));
        let hom = ring.bockstein_homology_dims(max_degree)?;
        let hom_ok = hom[0] == 1 && hom[1..].iter().all(|&x| x == 0);
        failed |= !hom_ok;
        let _ = writeln!(out, "{}\tbockstein-homology", pass(hom_ok));
        let kernel = ring.bockstein_kernel_dims(max_degree)?;
        let integral_ring = PresentedGradedRing::new(p, n, RingForm::Integral)?;
        let integral_series = poincare_integral(p, n, max_degree)?;
        let ker_ok = (0..=max_degree).all(|d| {
            kernel[d] as u64 == integral_series.coeff(d)
                && kernel[d] == integral_ring.graded_dim(d)
        }) && integral_ring.verify_integral_images(&ring).is_ok();
        failed |= !ker_ok;
        let _ = writeln!(out, "{}\tbockstein-kernel", pass(ker_ok));
    }
    Ok(CommandOutput { text: out, failed })
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Applies the Bockstein twice to every monomial through `top` and checks
/// the result is zero, using only the public per-monomial map.
pub fn bockstein_squares_to_zero(ring: &PresentedGradedRing, top: usize) -> Result<bool> {
    let p = ring.p();
    for d in 0..=top {
        for i in 0..ring.monomial_count(d) {
            let mut acc = vec![0u32; ring.monomial_count(d + 2)];
            for (j, c) in ring.bockstein_of_monomial(d, i)? {
                for (k, c2) in ring.bockstein_of_monomial(d + 1, j)? {
                    acc[k] = (acc[k] + c * c2) % p;
                }
            }
            if acc.iter().any(|&x| x != 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Options for the `extraspecial` subcommand.
pub struct ExtraspecialOpts {
    /// Width of the group.
    pub n: usize,
    /// Report enumerated vs printed isotropic counts.
    pub counts: bool,
    /// Report decorated poset homology.
    pub poset_homology: bool,
    /// Report the building rank.
    pub tits: bool,
    /// Report the dimension recursion values.
    pub recursion: bool,
    /// Report the sphere assembly through `max_degree`.
    pub final_theorem: bool,
    /// Degree bound for the assembly.
    pub max_degree: Option<usize>,
    /// Unlock the width-three poset homology.
    pub deep: bool,
}

/// `extraspecial`: the selected reports in a fixed order (counts,
/// recursion, poset-homology, tits, final-theorem), each opened by a
/// `section` line.
pub fn extraspecial_run(opts: &ExtraspecialOpts, limits: &Limits) -> Result<CommandOutput> {
    if !(opts.counts || opts.poset_homology || opts.tits || opts.recursion || opts.final_theorem) {
        return Err(Error::Invalid(
            "pick at least one report: --counts, --recursion, --poset-homology, --tits, --final-theorem"
                .into(),
        ));
    }
    if opts.max_degree.is_some() && !opts.final_theorem {
        return Err(Error::Invalid("--max-degree applies to --final-theorem".into()));
    }
    let mut sections: Vec<String> = Vec::new();
    let mut failed = false;
    if opts.counts {
        let mut s = String::from("section\tcounts\n");
        let mut mismatches = Vec::new();
        for k in 1..=opts.n {
            let enumerated = enumerate_q_isotropic(opts.n, k)?.len() as u64;
            let printed = v_formula_as_printed(opts.n, k)?;
            let _ = writeln!(s, "{}\t{}\t{}", k, enumerated, printed);
            if enumerated != printed {
                mismatches.push(k);
            }
        }
        for k in mismatches {
            let _ = writeln!(s, "expected-mismatch\tk={}\tfactor={}", k, 1u64 << (k * (k - 1) / 2));
        }
        sections.push(s);
    }
    if opts.recursion {
        let mut s = String::from("section\trecursion\n");
        for m in 0..=opts.n {
            let _ = writeln!(s, "{}\t{}", m, dimension_recursion(m)?);
        }
        sections.push(s);
    }
    if opts.poset_homology {
        if opts.n >= 3 && !opts.deep {
            return Err(Error::Precondition(
                "width three poset homology runs under --deep".into(),
            ));
        }
        let h = decorated_homology(opts.n, limits)?;
        let mut s = String::from("section\tposet-homology\n");
        s.push_str(&graded_dims_tsv(h.dims()));
        let ok = h.concentrated();
        failed |= !ok;
        let _ = writeln!(s, "{}\tconcentration\tdegree={}", pass(ok), h.degree());
        sections.push(s);
    }
    if opts.tits {
        let rank = tits_building_rank(opts.n, limits)?;
        let mut s = String::from("section\ttits\n");
        let _ = writeln!(s, "rank\t{}", rank);
        let _ = writeln!(s, "concentrated-degree\t{}", opts.n - 1);
        sections.push(s);
    }
    if opts.final_theorem {
        let Some(top) = opts.max_degree else {
            return Err(Error::Invalid("--final-theorem needs --max-degree".into()));
        };
        let rhs = final_theorem_rhs(opts.n, top, limits)?;
        let mut s = String::from("section\tfinal-theorem\n");
        for (d, dim) in rhs.dims().iter().enumerate() {
            let _ = writeln!(s, "{}\t{}", d, dim);
        }
        for w in rhs.weyl_records() {
            let _ = writeln!(s, "weyl\t{}\t{}\t{}", w.k, w.order, w.predicted);
        }
        if opts.n == 1 && top <= 4 {
            let joins = (top + 2).div_ceil(2).max(2);
            let lhs = final_theorem_lhs_oracle(joins, top, limits)?;
            for (d, dim) in lhs.iter().enumerate() {
                let _ = writeln!(s, "oracle\t{}\t{}", d, dim);
            }
            let ok = lhs == rhs.dims();
            failed |= !ok;
            let _ = writeln!(s, "{}\tjoin-oracle-agreement", pass(ok));
        } else if opts.n == 1 {
            let _ = writeln!(s, "note\tjoin oracle skipped: degree bound outside the supported stable range");
        } else {
            let _ = writeln!(s, "note\tjoin oracle applies to width one");
        }
        sections.push(s);
    }
    Ok(CommandOutput { text: sections.join("\n"), failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coeff_strings_parse() {
        assert_eq!(parse_coeff("z").unwrap(), Coeff::Z);
        assert_eq!(parse_coeff("z2").unwrap(), Coeff::Mod(2));
        assert_eq!(parse_coeff("z12").unwrap(), Coeff::Mod(12));
        assert!(parse_coeff("q").is_err());
        assert!(parse_coeff("z1").is_err());
        assert!(parse_coeff("zz").is_err());
    }

    #[test]
    fn group_report_for_dihedral_eight() {
        let out = group_report("dihedral-8").unwrap();
        assert!(out.text.contains("order\t8\n"));
        assert!(out.text.contains("abelian\tfalse\n"));
        assert!(out.text.contains("center-order\t2\n"));
        assert!(out.text.contains("p-group\t2\n"));
        assert!(out.text.contains("index-gcd\t2\n"));
        assert!(!out.failed);
    }

    #[test]
    fn bredon_both_routes_agree_on_the_reflection_circle() {
        let limits = Limits::default();
        let out = bredon_run(None, "reflection-circle", "z2", Route::Both, &limits).unwrap();
        assert!(out.text.contains("PASS\troute-agreement"));
        assert!(out.text.contains("0\t2\n"));
        assert!(out.text.contains("1\t1\n"));
        assert!(!out.failed);
    }

    #[test]
    fn phi_matches_the_documented_elementary_abelian_values() {
        let limits = Limits::default();
        let out = phi_run("elementary-2-2", 2, 4, &limits).unwrap();
        assert_eq!(
            out.text,
            "0\t1\n1\t3\n2\t5\n3\t7\n4\t9\nPASS\tfrattini-reduction\n"
        );
        assert!(!out.failed);
    }

    #[test]
    fn hilbert_integral_width_one_is_the_even_series() {
        let out = hilbert_run(2, 1, FormKind::Integral, 4, false, false).unwrap();
        assert_eq!(
            out.text,
            "0\t1\t1\t-\n1\t0\t0\t-\n2\t1\t1\t-\n3\t0\t0\t-\n4\t1\t1\t-\nPASS\tpresentation-series\n"
        );
    }

    #[test]
    fn extraspecial_poset_homology_width_one() {
        let limits = Limits::default();
        let opts = ExtraspecialOpts {
            n: 1,
            counts: false,
            poset_homology: true,
            tits: false,
            recursion: false,
            final_theorem: false,
            max_degree: None,
            deep: false,
        };
        let out = extraspecial_run(&opts, &limits).unwrap();
        assert_eq!(out.text, "section\tposet-homology\n0\t3\nPASS\tconcentration\tdegree=0\n");
    }

    #[test]
    fn extraspecial_counts_flag_expected_mismatches() {
        let limits = Limits::default();
        let opts = ExtraspecialOpts {
            n: 2,
            counts: true,
            poset_homology: false,
            tits: false,
            recursion: false,
            final_theorem: false,
            max_degree: None,
            deep: false,
        };
        let out = extraspecial_run(&opts, &limits).unwrap();
        assert_eq!(
            out.text,
            "section\tcounts\n1\t9\t9\n2\t6\t12\nexpected-mismatch\tk=2\tfactor=2\n"
        );
        assert!(!out.failed);
    }

    #[test]
    fn extraspecial_width_three_homology_requires_deep() {
        let limits = Limits::default();
        let opts = ExtraspecialOpts {
            n: 3,
            counts: false,
            poset_homology: true,
            tits: false,
            recursion: false,
            final_theorem: false,
            max_degree: None,
            deep: false,
        };
        assert!(matches!(
            extraspecial_run(&opts, &limits),
            Err(Error::Precondition(_))
        ));
    }
}
