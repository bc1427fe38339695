//! Argument parsing and dispatch. Exit codes: 0 for success, 1 when a
//! verification inside a report fails (or an internal invariant breaks),
//! 2 for usage and input errors, 3 when a size cap stops the run.
//!
//! `EQUIHOM_MAX_CELLS` raises or lowers the cell cap for every
//! subcommand. Reports for the same arguments are byte-identical across
//! runs; `--output` writes them atomically.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use equihom_core::error::{Error, Result};
use equihom_core::limits::Limits;

use crate::commands::{
    self, CommandOutput, ExtraspecialOpts, FamilyKind, Flavor, FormKind, Route,
};
use crate::formats;
use crate::verify;

#[derive(Debug, Parser)]
#[command(
    name = "equihom",
    version,
    about = "Exact Bredon homology and fixed-point invariants for finite groups"
)]
struct Cli {
    /// Write the report to this path (atomically) instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural report: order, center, lattice, index-gcd certificate.
    Group {
        /// Builtin name or path to a multiplication-table file.
        #[arg(long, value_name = "FILE|NAME")]
        group: String,
    },
    /// Conjugacy classes of an isotropy family with their heights.
    Poset {
        /// Builtin name or path to a multiplication-table file.
        #[arg(long, value_name = "FILE|NAME")]
        group: String,
        /// Family of subgroups to report.
        #[arg(long, value_enum, default_value = "proper")]
        family: FamilyKind,
    },
    /// Equivariant homology of a complex by one or both routes.
    Bredon {
        /// Group for the complex file; builtin complexes carry their own.
        #[arg(long, value_name = "FILE|NAME")]
        group: Option<String>,
        /// Builtin recipe or path to a complex file.
        #[arg(long, value_name = "FILE|NAME")]
        complex: String,
        /// z for the integers, z<m> for the integers mod m.
        #[arg(long, value_name = "RING")]
        coeff: String,
        /// Route(s) to run; both adds an agreement check.
        #[arg(long, value_enum, default_value = "both")]
        route: Route,
    },
    /// First page of the isotropy spectral sequence.
    E1 {
        /// Group, required by the nerve flavor.
        #[arg(long, value_name = "FILE|NAME")]
        group: Option<String>,
        /// Complex, required by the strata and based flavors.
        #[arg(long, value_name = "FILE|NAME")]
        complex: Option<String>,
        /// Family of subgroups for the nerve flavor.
        #[arg(long, value_enum, default_value = "proper")]
        family: FamilyKind,
        /// Field characteristic.
        #[arg(long)]
        p: u32,
        /// Top total degree to report.
        #[arg(long, value_name = "D")]
        max_degree: i32,
        /// Table flavor.
        #[arg(long, value_enum, default_value = "strata")]
        flavor: Flavor,
    },
    /// Fixed-point coefficient dimensions of a p-group.
    Phi {
        /// Builtin name or path to a multiplication-table file.
        #[arg(long, value_name = "FILE|NAME")]
        group: String,
        /// The group's defining prime.
        #[arg(long)]
        p: u32,
        /// Top degree to report.
        #[arg(long, value_name = "D")]
        max_degree: i32,
    },
    /// Graded dimensions of the fixed-point coefficient ring.
    Hilbert {
        /// Field characteristic.
        #[arg(long)]
        p: u32,
        /// Rank of the elementary abelian group.
        #[arg(long)]
        n: usize,
        /// Mod-p or integral form of the ring.
        #[arg(long, value_enum, default_value = "modp")]
        form: FormKind,
        /// Top degree to report.
        #[arg(long, value_name = "D")]
        max_degree: usize,
        /// Also check the presentation against the localized model.
        #[arg(long)]
        verify_model: bool,
        /// Also run the Bockstein checks.
        #[arg(long)]
        verify_bockstein: bool,
    },
    /// Reports on the extraspecial 2-group of the given width.
    Extraspecial {
        /// Width n; the group has order 2^(2n+1).
        #[arg(long)]
        n: usize,
        /// Enumerated vs printed-formula isotropic counts.
        #[arg(long)]
        counts: bool,
        /// Homology of the decorated isotropic poset.
        #[arg(long)]
        poset_homology: bool,
        /// Reduced rank of the undecorated poset.
        #[arg(long)]
        tits: bool,
        /// Dimension recursion values through the width.
        #[arg(long)]
        recursion: bool,
        /// Sphere assembly with Weyl bookkeeping.
        #[arg(long)]
        final_theorem: bool,
        /// Degree bound for --final-theorem.
        #[arg(long, value_name = "D")]
        max_degree: Option<usize>,
        /// Unlock the width-three poset homology (slow).
        #[arg(long)]
        deep: bool,
    },
    /// Run the acceptance suite, one PASS/FAIL line per criterion.
    VerifyAll {
        /// Include the slow width-three check in criterion 9.
        #[arg(long)]
        deep: bool,
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
    },
}

fn dispatch(command: &Command, limits: &Limits) -> Result<CommandOutput> {
    match command {
        Command::Group { group } => commands::group_report(group),
        Command::Poset { group, family } => commands::poset_report(group, *family),
        Command::Bredon { group, complex, coeff, route } => {
            commands::bredon_run(group.as_deref(), complex, coeff, *route, limits)
        }
        Command::E1 { group, complex, family, p, max_degree, flavor } => commands::e1_run(
            group.as_deref(),
            complex.as_deref(),
            *family,
            *p,
            *max_degree,
            *flavor,
            limits,
        ),
        Command::Phi { group, p, max_degree } => {
            commands::phi_run(group, *p, *max_degree, limits)
        }
        Command::Hilbert { p, n, form, max_degree, verify_model, verify_bockstein } => {
            commands::hilbert_run(*p, *n, *form, *max_degree, *verify_model, *verify_bockstein)
        }
        Command::Extraspecial {
            n,
            counts,
            poset_homology,
            tits,
            recursion,
            final_theorem,
            max_degree,
            deep,
        } => commands::extraspecial_run(
            &ExtraspecialOpts {
                n: *n,
                counts: *counts,
                poset_homology: *poset_homology,
                tits: *tits,
                recursion: *recursion,
                final_theorem: *final_theorem,
                max_degree: *max_degree,
                deep: *deep,
            },
            limits,
        ),
        Command::VerifyAll { deep, seed } => {
            let reports = verify::run_all(*deep, *seed, limits);
            let (text, all) = verify::render(&reports);
            Ok(CommandOutput { text, failed: !all })
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invalid(_) | Error::Precondition(_) | Error::Truncated(_) => 2,
        Error::SizeCap { .. } => 3,
        Error::Internal(_) => 1,
    }
}

/// Parses the environment cap, runs the chosen subcommand, emits its
/// report, and maps the outcome to an exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help and version land on stdout and succeed; real usage
            // errors go to stderr with the usage exit code.
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{}", e);
                return 0;
            }
            eprint!("{}", e);
            return 2;
        }
    };
    let mut limits = Limits::default();
    if let Ok(v) = std::env::var("EQUIHOM_MAX_CELLS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => limits.max_cells = n,
            _ => {
                eprintln!("EQUIHOM_MAX_CELLS must be a positive integer, got '{}'", v);
                return 2;
            }
        }
    }
    match dispatch(&cli.command, &limits) {
        Ok(out) => {
            if let Err(e) = formats::emit(cli.output.as_deref(), &out.text) {
                eprintln!("error: {}", e);
                return 1;
            }
            if out.failed {
                1
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subcommand_names_follow_the_documented_shape() {
        // The spelling "e1" (not "e-1") and "verify-all" are part of the
        // interface; a rename in the derive would break scripts.
        assert!(Cli::try_parse_from(["equihom", "e1", "--complex", "octagon", "--p", "2", "--max-degree", "3"]).is_ok());
        assert!(Cli::try_parse_from(["equihom", "verify-all"]).is_ok());
        assert!(Cli::try_parse_from(["equihom", "hilbert", "--p", "2", "--n", "1", "--max-degree", "4"]).is_ok());
    }

    #[test]
    fn defaults_match_the_documentation() {
        let cli = Cli::try_parse_from(["equihom", "verify-all"]).unwrap();
        match cli.command {
            Command::VerifyAll { deep, seed } => {
                assert!(!deep);
                assert_eq!(seed, verify::DEFAULT_SEED);
            }
            _ => panic!("parsed the wrong subcommand"),
        }
        let cli = Cli::try_parse_from([
            "equihom", "bredon", "--complex", "octagon", "--coeff", "z2",
        ])
        .unwrap();
        match cli.command {
            Command::Bredon { route, .. } => assert_eq!(route, Route::Both),
            _ => panic!("parsed the wrong subcommand"),
        }
    }

    #[test]
    fn usage_errors_are_distinguished_from_help() {
        let err = Cli::try_parse_from(["equihom", "nonsense"]).unwrap_err();
        assert!(!matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion));
        let err = Cli::try_parse_from(["equihom", "--help"]).unwrap_err();
        assert!(matches!(err.kind(), ErrorKind::DisplayHelp));
    }

    #[test]
    fn size_cap_errors_map_to_their_own_exit_code() {
        let cap = Error::SizeCap { what: "cells".into(), limit: 1, got: 2 };
        assert_eq!(exit_code(&cap), 3);
        assert_eq!(exit_code(&Error::Invalid("x".into())), 2);
        assert_eq!(exit_code(&Error::Internal("x".into())), 1);
    }
}
