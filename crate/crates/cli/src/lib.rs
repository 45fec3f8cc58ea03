//! Command-line front end. [`run`] does all the work so the binary and the
//! integration tests share one code path.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fqsym_scf::oracle::{self, FunctionKind, UtGroup};
use fqsym_scf::verify::{self, Suite, VerifyConfig};
use fqsym_scf::{Basis, Permutation, ScfElement};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Degree cap applied when `FQSYM_SCF_MAX_DEGREE` is unset.
pub const DEFAULT_DEGREE_CAP: usize = 8;
pub const DEGREE_CAP_VAR: &str = "FQSYM_SCF_MAX_DEGREE";

#[derive(Parser, Debug)]
#[command(name = "fqsym", version, about = "Supercharacter computations in FQSym")]
struct Cli {
    /// Emit human-readable text instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    plain: bool,
    /// Emit JSON (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for verification sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Product of two basis elements.
    Product {
        #[command(flatten)]
        basis: BasisArg,
        left: Permutation,
        right: Permutation,
    },
    /// Coproduct of a basis element.
    Coproduct {
        #[command(flatten)]
        basis: BasisArg,
        perm: Permutation,
    },
    /// Expand a basis element in the other basis.
    Convert {
        #[command(flatten)]
        basis: BasisArg,
        /// Target basis.
        #[arg(long, value_enum)]
        to: BasisName,
        perm: Permutation,
    },
    /// Image under the star involution.
    Star {
        #[command(flatten)]
        basis: BasisArg,
        perm: Permutation,
    },
    /// Image under the antipode.
    Antipode {
        #[command(flatten)]
        basis: BasisArg,
        perm: Permutation,
    },
    /// Supercharacter table of ut_n(F_q) as CSV.
    Table(GroupArgs),
    /// Run verification suites and emit one report per case.
    Verify {
        /// Suite to run; all suites when omitted.
        #[arg(long, value_enum)]
        suite: Option<SuiteName>,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        #[command(flatten)]
        group: GroupArgs,
        /// Random product pairs of total degree max-degree + 1.
        #[arg(long, default_value_t = 0)]
        sample_pairs: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Per-label data of ut_n(F_q): superclass sizes, pattern subgroup orders
    /// and supercharacter degrees.
    Oracle(GroupArgs),
}

#[derive(Args, Debug)]
struct BasisArg {
    #[arg(long, value_enum, default_value_t = BasisName::Sch)]
    basis: BasisName,
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    q: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisName {
    Sch,
    Pch,
}

impl From<BasisName> for Basis {
    fn from(b: BasisName) -> Self {
        match b {
            BasisName::Sch => Basis::Sch,
            BasisName::Pch => Basis::Pch,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteName {
    Perm,
    Lattice,
    Hopf,
    Pch,
    Oracle,
}

impl From<SuiteName> for Suite {
    fn from(s: SuiteName) -> Self {
        match s {
            SuiteName::Perm => Suite::Perm,
            SuiteName::Lattice => Suite::Lattice,
            SuiteName::Hopf => Suite::Hopf,
            SuiteName::Pch => Suite::Pch,
            SuiteName::Oracle => Suite::Oracle,
        }
    }
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

/// Runs the CLI on `argv` (including the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let cap = match degree_cap() {
        Ok(cap) => cap,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let result = match cli.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => {
                let mut buffer = Vec::new();
                let result = pool.install(|| execute(&cli, cap, &mut buffer));
                out.write_all(&buffer).map_err(Usage::from).and(result)
            }
            Err(e) => Err(Usage(e.to_string())),
        },
        None => execute(&cli, cap, out),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn degree_cap() -> Result<usize, Usage> {
    match std::env::var(DEGREE_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Usage(format!("{DEGREE_CAP_VAR} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_DEGREE_CAP),
    }
}

fn check_degree(what: &str, degree: usize, cap: usize) -> Result<(), Usage> {
    if degree > cap {
        return Err(Usage(format!("{what} {degree} exceeds the degree cap {cap} (set {DEGREE_CAP_VAR} to raise it)")));
    }
    Ok(())
}

fn execute(cli: &Cli, cap: usize, out: &mut dyn Write) -> Result<i32, Usage> {
    let plain = cli.plain;
    match &cli.command {
        Command::Product { basis, left, right } => {
            check_degree("total degree", left.degree() + right.degree(), cap)?;
            let basis = Basis::from(basis.basis);
            let x = ScfElement::basis_element(basis, left.clone());
            let y = ScfElement::basis_element(basis, right.clone());
            emit_element(out, &x.product(&y)?, plain)?;
        }
        Command::Coproduct { basis, perm } => {
            check_degree("degree", perm.degree(), cap)?;
            let x = ScfElement::basis_element(basis.basis.into(), perm.clone());
            let d = x.coproduct();
            if plain {
                writeln!(out, "{d}")?;
            } else {
                writeln!(out, "{}", serde_json::to_string(&d)?)?;
            }
        }
        Command::Convert { basis, to, perm } => {
            check_degree("degree", perm.degree(), cap)?;
            let x = ScfElement::basis_element(basis.basis.into(), perm.clone());
            emit_element(out, &x.to_basis((*to).into()), plain)?;
        }
        Command::Star { basis, perm } => {
            check_degree("degree", perm.degree(), cap)?;
            let x = ScfElement::basis_element(basis.basis.into(), perm.clone());
            emit_element(out, &x.star(), plain)?;
        }
        Command::Antipode { basis, perm } => {
            check_degree("degree", perm.degree(), cap)?;
            let basis = Basis::from(basis.basis);
            let x = ScfElement::basis_element(basis, perm.clone());
            emit_element(out, &x.to_sch().antipode()?.to_basis(basis), plain)?;
        }
        Command::Table(g) => {
            check_degree("n", g.n, cap)?;
            let group = UtGroup::new(g.n, g.q)?;
            let perms = fqsym_scf::perm::all_permutations(g.n);
            let header: Vec<String> = perms.iter().map(|w| format!("\"{w}\"")).collect();
            writeln!(out, "chi,{}", header.join(","))?;
            for (w, row) in oracle::supercharacter_table(&group)? {
                let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                writeln!(out, "\"{w}\",{}", cells.join(","))?;
            }
        }
        Command::Verify {
            suite,
            max_degree,
            group,
            sample_pairs,
            seed,
        } => {
            check_degree("max-degree", *max_degree, cap)?;
            check_degree("n", group.n, cap)?;
            let config = VerifyConfig {
                max_degree: *max_degree,
                n: group.n,
                q: group.q,
                sample_pairs: *sample_pairs,
                seed: *seed,
            };
            let suites: Vec<Suite> = match suite {
                Some(s) => vec![(*s).into()],
                None => Suite::ALL.to_vec(),
            };
            let mut ok = true;
            for s in suites {
                let reports = verify::run_suite(s, &config)?;
                ok &= verify::all_passed(&reports);
                for r in &reports {
                    if plain {
                        writeln!(out, "{r}")?;
                    } else {
                        writeln!(out, "{}", r.to_json())?;
                    }
                }
            }
            return Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED });
        }
        Command::Oracle(g) => {
            check_degree("n", g.n, cap)?;
            let group = UtGroup::new(g.n, g.q)?;
            let sizes = group.superclass_sizes();
            for w in fqsym_scf::perm::all_permutations(g.n) {
                let chi = oracle::basis_function(&group, FunctionKind::Chi, &w)?;
                let degree = chi.degree_value();
                if plain {
                    writeln!(
                        out,
                        "{w}: |Cl| = {}, |ut_w| = {}, chi(1) = {degree}",
                        sizes[&w],
                        group.pattern_order(&w)
                    )?;
                } else {
                    let line = serde_json::json!({
                        "perm": w.word(),
                        "superclass_size": sizes[&w],
                        "pattern_order": group.pattern_order(&w),
                        "chi_degree": degree.to_integer(),
                    });
                    writeln!(out, "{line}")?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn emit_element(out: &mut dyn Write, x: &ScfElement, plain: bool) -> Result<(), Usage> {
    if plain {
        writeln!(out, "{x}")?;
    } else {
        writeln!(out, "{}", serde_json::to_string(x)?)?;
    }
    Ok(())
}
