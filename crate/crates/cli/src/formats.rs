//! Text formats: group tables, complex descriptions, TSV rendering, and
//! atomic output.
//!
//! Everything is line oriented. `#` starts a comment, blank lines are
//! skipped, and parse errors always name the line number and the token
//! that failed, so a bad file points at itself.

use equihom_core::bredon::GComplex;
use equihom_core::chain::GradedDims;
use equihom_core::error::{Error, Result};
use equihom_core::fixtures::{builtin_complex, builtin_group, COMPLEX_GRAMMAR, GROUP_GRAMMAR};
use equihom_core::group::FiniteGroup;
use equihom_core::limits::Limits;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

fn bad_line(line_no: usize, msg: impl std::fmt::Display) -> Error {
    Error::Invalid(format!("line {}: {}", line_no, msg))
}

/// Content lines with their 1-based line numbers; comments and blanks
/// dropped.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|&(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn parse_usize(tok: &str, line_no: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| bad_line(line_no, format!("{} must be a number, got '{}'", what, tok)))
}

/// Parses a multiplication table file: a `group <order>` header followed
/// by `<order>` rows of `<order>` element indices. The table is validated
/// as a group with identity 0.
pub fn parse_group(text: &str, name: &str) -> Result<FiniteGroup> {
    let lines = content_lines(text);
    let Some(&(first_no, first)) = lines.first() else {
        return Err(Error::Invalid("empty group file".into()));
    };
    let mut toks = first.split_whitespace();
    match toks.next() {
        Some("group") => {}
        Some(other) => return Err(bad_line(first_no, format!("expected 'group', got '{}'", other))),
        None => return Err(bad_line(first_no, "expected 'group <order>'")),
    }
    let order = match toks.next() {
        Some(t) => parse_usize(t, first_no, "group order")?,
        None => return Err(bad_line(first_no, "expected 'group <order>'")),
    };
    if toks.next().is_some() {
        return Err(bad_line(first_no, "trailing tokens after the group order"));
    }
    let rows = &lines[1..];
    if rows.len() != order {
        return Err(Error::Invalid(format!(
            "expected {} table rows, found {}",
            order,
            rows.len()
        )));
    }
    let mut table = Vec::with_capacity(order);
    for &(no, line) in rows {
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|t| parse_usize(t, no, "table entry"))
            .collect::<Result<_>>()?;
        if row.len() != order {
            return Err(bad_line(no, format!("expected {} entries, got {}", order, row.len())));
        }
        table.push(row);
    }
    Ok(FiniteGroup::from_table(&table)?.named(name))
}

/// Renders a group back into the table format `parse_group` reads.
pub fn write_group(group: &FiniteGroup) -> String {
    let n = group.order();
    let mut out = format!("group {}\n", n);
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| group.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the complex description format:
///
/// ```text
/// gcomplex
/// vertex 0
/// vertex 1
/// simplex 0 1
/// act 0 0 1
/// act 1 1 0
/// ```
///
/// Vertices must be declared consecutively from 0; one `act` row per
/// group element gives the vertex images. Rigidity and closure checks
/// happen in the complex constructor.
pub fn parse_complex(text: &str, group: &FiniteGroup, limits: &Limits) -> Result<GComplex> {
    let lines = content_lines(text);
    let Some(&(first_no, first)) = lines.first() else {
        return Err(Error::Invalid("empty complex file".into()));
    };
    if first != "gcomplex" {
        return Err(bad_line(first_no, format!("expected 'gcomplex', got '{}'", first)));
    }
    let mut n_vertices = 0usize;
    let mut simplices: Vec<Vec<u32>> = Vec::new();
    let mut action: Vec<Option<(usize, Vec<u32>)>> = vec![None; group.order()];
    for &(no, line) in &lines[1..] {
        let mut toks = line.split_whitespace();
        let head = toks.next().expect("content lines are nonempty");
        match head {
            "vertex" => {
                let Some(t) = toks.next() else {
                    return Err(bad_line(no, "vertex needs an index"));
                };
                let i = parse_usize(t, no, "vertex index")?;
                if i != n_vertices {
                    return Err(bad_line(
                        no,
                        format!("vertices must be consecutive; expected {}, got {}", n_vertices, i),
                    ));
                }
                if toks.next().is_some() {
                    return Err(bad_line(no, "trailing tokens after the vertex index"));
                }
                n_vertices += 1;
            }
            "simplex" => {
                let verts: Vec<u32> = toks
                    .map(|t| parse_usize(t, no, "simplex vertex").map(|v| v as u32))
                    .collect::<Result<_>>()?;
                if verts.len() < 2 {
                    return Err(bad_line(no, "simplex needs at least two vertices"));
                }
                for &v in &verts {
                    if v as usize >= n_vertices {
                        return Err(bad_line(
                            no,
                            format!("simplex uses vertex {} before it is declared", v),
                        ));
                    }
                }
                simplices.push(verts);
            }
            "act" => {
                let Some(t) = toks.next() else {
                    return Err(bad_line(no, "act needs a group element index"));
                };
                let g = parse_usize(t, no, "group element")?;
                if g >= group.order() {
                    return Err(bad_line(
                        no,
                        format!("group element {} out of range for order {}", g, group.order()),
                    ));
                }
                let images: Vec<u32> = toks
                    .map(|t| parse_usize(t, no, "vertex image").map(|v| v as u32))
                    .collect::<Result<_>>()?;
                if images.len() != n_vertices {
                    return Err(bad_line(
                        no,
                        format!("act row needs {} vertex images, got {}", n_vertices, images.len()),
                    ));
                }
                if action[g].is_some() {
                    return Err(bad_line(no, format!("duplicate act row for element {}", g)));
                }
                action[g] = Some((no, images));
            }
            other => {
                return Err(bad_line(
                    no,
                    format!("unknown directive '{}'; expected vertex, simplex, or act", other),
                ));
            }
        }
    }
    let mut rows = Vec::with_capacity(group.order());
    for (g, slot) in action.into_iter().enumerate() {
        match slot {
            Some((_, images)) => rows.push(images),
            None => {
                return Err(Error::Invalid(format!("missing act row for element {}", g)));
            }
        }
    }
    GComplex::new(group, n_vertices, &simplices, &rows, limits)
}

/// Renders a complex back into the format `parse_complex` reads. Only the
/// top-dimensional description is needed for a round trip, but every
/// nonvertex simplex is written so the file is explicit.
pub fn write_complex(x: &GComplex) -> String {
    let mut out = String::from("gcomplex\n");
    for v in 0..x.vertex_count() {
        let _ = writeln!(out, "vertex {}", v);
    }
    for k in 1..=x.dimension() {
        for cell in x.cells(k) {
            let verts: Vec<String> = cell.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "simplex {}", verts.join(" "));
        }
    }
    for g in 0..x.group().order() {
        let images: Vec<String> = (0..x.vertex_count())
            .map(|v| x.act_vertex(g, v as u32).to_string())
            .collect();
        let _ = writeln!(out, "act {} {}", g, images.join(" "));
    }
    out
}

/// Resolves a group argument: an existing file path is parsed as a table,
/// anything else must be a builtin name.
pub fn load_group(spec: &str) -> Result<FiniteGroup> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read '{}': {}", spec, e)))?;
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("file-group");
        return parse_group(&text, stem);
    }
    builtin_group(spec).map_err(|e| match e {
        Error::Invalid(m) => Error::Invalid(format!("{} (and '{}' is not a file)", m, spec)),
        other => other,
    })
}

/// Resolves a complex argument. A file path needs the acting group from
/// `--group`; builtin names carry their own group, so `--group` must be
/// omitted for them.
pub fn load_complex(spec: &str, group: Option<&str>, limits: &Limits) -> Result<GComplex> {
    let path = Path::new(spec);
    if path.is_file() {
        let Some(gspec) = group else {
            return Err(Error::Invalid(
                "a complex file needs --group for the acting group".into(),
            ));
        };
        let g = load_group(gspec)?;
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read '{}': {}", spec, e)))?;
        return parse_complex(&text, &g, limits);
    }
    if group.is_some() {
        return Err(Error::Invalid(format!(
            "builtin complex '{}' carries its own group; omit --group (grammar: {})",
            spec, COMPLEX_GRAMMAR
        )));
    }
    builtin_complex(spec, limits).map_err(|e| match e {
        Error::Invalid(m) => Error::Invalid(format!("{} (and '{}' is not a file; groups: {})", m, spec, GROUP_GRAMMAR)),
        other => other,
    })
}

/// One TSV line per degree: `degree<TAB>rank` with a third comma-joined
/// column when torsion is present. Degrees run from the smaller of 0 and
/// the lowest recorded degree up to the highest recorded degree, so zero
/// groups inside the range are printed explicitly.
pub fn graded_dims_tsv(h: &GradedDims) -> String {
    let support = h.support();
    let lo = support.iter().copied().min().unwrap_or(0).min(0);
    let hi = support.iter().copied().max().unwrap_or(0).max(0);
    let mut out = String::new();
    for d in lo..=hi {
        let g = h.get(d);
        if g.torsion.is_empty() {
            let _ = writeln!(out, "{}\t{}", d, g.rank);
        } else {
            let t: Vec<String> = g.torsion.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{}\t{}\t{}", d, g.rank, t.join(","));
        }
    }
    out
}

/// Writes `content` to `path` atomically (write to a sibling temp file,
/// then rename into place), or to stdout when no path is given.
pub fn emit(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        None => {
            print!("{}", content);
            Ok(())
        }
        Some(p) => {
            let dir = p.parent().filter(|d| !d.as_os_str().is_empty());
            let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or_else(|| Path::new(".")))
                .map_err(|e| Error::Invalid(format!("cannot create temp file: {}", e)))?;
            tmp.write_all(content.as_bytes())
                .map_err(|e| Error::Invalid(format!("cannot write output: {}", e)))?;
            tmp.persist(p)
                .map_err(|e| Error::Invalid(format!("cannot replace '{}': {}", p.display(), e)))?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use equihom_core::chain::{Coeff, DegreeGroup};
    use equihom_core::fixtures::reflection_circle;
    use num_bigint::BigUint;

    #[test]
    fn group_table_round_trip() {
        let g = builtin_group("cyclic-6").unwrap();
        let text = write_group(&g);
        let back = parse_group(&text, "cyclic-6").unwrap();
        assert_eq!(back.order(), 6);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(back.mul(a, b), g.mul(a, b));
            }
        }
    }

    #[test]
    fn group_parse_errors_name_the_line() {
        let err = parse_group("group 2\n0 1\n1\n", "bad").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{}", err);
        let err = parse_group("grp 2\n", "bad").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{}", err);
    }

    #[test]
    fn complex_round_trip_preserves_homology() {
        let limits = Limits::default();
        let x = reflection_circle(&limits).unwrap();
        let text = write_complex(&x);
        let back = parse_complex(&text, x.group(), &limits).unwrap();
        let h0 = x.chain_complex().unwrap().homology(Coeff::Mod(2), &limits).unwrap();
        let h1 = back.chain_complex().unwrap().homology(Coeff::Mod(2), &limits).unwrap();
        assert_eq!(h0, h1);
    }

    #[test]
    fn complex_parse_errors_name_the_line() {
        let g = builtin_group("cyclic-2").unwrap();
        let limits = Limits::default();
        let bad = "gcomplex\nvertex 0\nvertex 2\n";
        let err = parse_complex(bad, &g, &limits).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{}", err);
        let bad = "gcomplex\nvertex 0\nvertex 1\nact 0 0 1\nact 1 1\n";
        let err = parse_complex(bad, &g, &limits).unwrap_err();
        assert!(err.to_string().contains("line 5"), "{}", err);
        let bad = "gcomplex\nvertex 0\nact 0 0\n";
        let err = parse_complex(bad, &g, &limits).unwrap_err();
        assert!(err.to_string().contains("missing act row"), "{}", err);
    }

    #[test]
    fn tsv_includes_interior_zeros_and_torsion() {
        let mut h = GradedDims::new();
        h.set(0, DegreeGroup { rank: 1, torsion: vec![BigUint::from(2u32)] });
        h.set(2, DegreeGroup { rank: 3, torsion: Vec::new() });
        assert_eq!(graded_dims_tsv(&h), "0\t1\t2\n1\t0\n2\t3\n");
    }
}
