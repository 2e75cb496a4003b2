//! Command-line interface: quantum products, Schubert polynomials, named
//! polynomial families, curve-neighborhood permutations, multiplication
//! tables, and the verification suites.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails, 2 on usage
//! or validation errors.

use std::fs::File;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use qschubert::matrix::NamedPolys;
use qschubert::perm::{CurveDegree, Permutation, Space};
use qschubert::poly::Polynomial;
use qschubert::qprod::{general_product, multiplication_table_with_bound};
use qschubert::schubert::{quantum_schubert_poly, schubert_poly};
use qschubert::{curve_neighborhood, z_d};

use qschubert_cli::checks;

#[derive(Parser)]
#[command(
    name = "qschubert",
    version,
    about = "Exact quantum Schubert calculus for the complete flag variety and its smooth Schubert divisor"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    #[value(name = "Fl", alias = "fl", alias = "FL")]
    Fl,
    #[value(name = "X", alias = "x")]
    X,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Space {
        match s {
            SpaceArg::Fl => Space::FlagVariety,
            SpaceArg::X => Space::SchubertDivisorX,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    Relations,
    Lefschetz,
    Oracle,
    #[value(name = "zd-bound")]
    ZdBound,
    Transition,
}

#[derive(Subcommand)]
enum Command {
    /// Quantum product of two Schubert classes
    Product {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        space: SpaceArg,
        /// First class: one-line "1,4,2,3" or reduced word "s:3,2"
        #[arg(long)]
        u: String,
        /// Second class, same syntax
        #[arg(long)]
        v: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the default size guard (n <= 6)
        #[arg(long)]
        force: bool,
    },
    /// Full multiplication table over the basis classes of a space
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the default size guard (n <= 4)
        #[arg(long)]
        force: bool,
    },
    /// Classical or quantum Schubert polynomial of a permutation
    Qschubert {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: String,
        /// Print the classical polynomial instead of the quantum one
        #[arg(long)]
        classical: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the default size guard (n <= 6)
        #[arg(long)]
        force: bool,
    },
    /// Named polynomial families: E, Ehat, chi, e
    Poly {
        /// One of: E, Ehat, chi, e
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        /// Number of variables for E and e (defaults to n)
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the default size guard (n <= 8)
        #[arg(long)]
        force: bool,
    },
    /// Curve-neighborhood permutation z_d, optionally applied to a class
    Zd {
        #[arg(long)]
        n: usize,
        /// Degree vector, e.g. "1,0,2"
        #[arg(long)]
        d: String,
        /// Optional class u; prints the label of its degree-d neighborhood
        #[arg(long)]
        u: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verification suites over a rank range
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Rank or inclusive range, e.g. "4" or "3..6"
        #[arg(long)]
        n: String,
        /// Restrict the oracle suite to one space
        #[arg(long, value_enum)]
        space: Option<SpaceArg>,
        /// Degree cap for the zd-bound suite
        #[arg(long, default_value_t = 6)]
        maxdeg: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the per-suite size guards
        #[arg(long)]
        force: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn guard(n: usize, bound: usize, force: bool, what: &str) -> Result<()> {
    if n < 2 {
        bail!("rank must be at least 2, got {n}");
    }
    if n > bound && !force {
        bail!("{what} is guarded at n <= {bound} (got n = {n}); pass --force to override");
    }
    Ok(())
}

fn emit(out: Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        None => {
            println!("{content}");
            Ok(())
        }
        Some(path) => {
            let mut f =
                File::create(&path).with_context(|| format!("cannot create {}", path.display()))?;
            writeln!(f, "{content}")?;
            Ok(())
        }
    }
}

fn poly_json(extra: serde_json::Value, p: &Polynomial) -> String {
    let mut obj = extra;
    obj["terms"] = p.to_json_terms();
    serde_json::to_string_pretty(&obj).expect("valid JSON")
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().context("bad range start")?;
        let b: usize = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .context("bad range end")?;
        if a > b {
            bail!("empty range {s}");
        }
        Ok(a..=b)
    } else {
        let v: usize = s.trim().parse().context("bad rank")?;
        Ok(v..=v)
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Product {
            n,
            space,
            u,
            v,
            format,
            out,
            force,
        } => {
            guard(n, 6, force, "product")?;
            let space: Space = space.into();
            let u = Permutation::parse(&u, n)?;
            let v = Permutation::parse(&v, n)?;
            let e = general_product(&u, &v, space)?;
            let rendered = match format {
                Format::Text => e.to_string(),
                Format::Json => serde_json::to_string_pretty(&e.to_json())?,
                Format::Tsv => {
                    let mut rows = vec!["w\td\tc".to_string()];
                    for ((w, d), c) in e.terms() {
                        rows.push(format!("{w}\t{d}\t{c}"));
                    }
                    rows.join("\n")
                }
            };
            emit(out, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Table {
            n,
            space,
            format,
            out,
            force,
        } => {
            guard(n, 4, force, "table")?;
            let space: Space = space.into();
            let bound = if force { n } else { 4 };
            let table = multiplication_table_with_bound(space, n, bound)?;
            let mut buf: Vec<u8> = Vec::new();
            match format {
                Format::Tsv | Format::Text => table.write_tsv(&mut buf)?,
                Format::Json => table.write_json(&mut buf)?,
            }
            let rendered = String::from_utf8(buf)?;
            emit(out, rendered.trim_end())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Qschubert {
            n,
            w,
            classical,
            format,
            out,
            force,
        } => {
            guard(n, 6, force, "qschubert")?;
            let w = Permutation::parse(&w, n)?;
            let p = if classical {
                schubert_poly(&w)
            } else {
                quantum_schubert_poly(&w)
            };
            let rendered = match format {
                Format::Json => poly_json(
                    serde_json::json!({
                        "n": n,
                        "w": w.one_line(),
                        "kind": if classical { "classical" } else { "quantum" },
                    }),
                    &p,
                ),
                _ => p.to_string(),
            };
            emit(out, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Poly {
            name,
            n,
            i,
            k,
            format,
            out,
            force,
        } => {
            guard(n, 8, force, "poly")?;
            let k = k.unwrap_or(n);
            if k > n {
                bail!("k = {k} exceeds the rank n = {n}");
            }
            let named = NamedPolys::new(n);
            let p = match name.as_str() {
                "E" => {
                    if i > k {
                        bail!("index i = {i} out of range for E^{k}");
                    }
                    named.big_e(k, i).clone()
                }
                "e" => {
                    if i > k {
                        bail!("index i = {i} out of range for e^{k}");
                    }
                    named.e(k, i).clone()
                }
                "Ehat" => {
                    if n < 3 || i > n {
                        bail!("Ehat needs n >= 3 and i <= n");
                    }
                    named.ehat(i).clone()
                }
                "chi" => {
                    if n < 3 || i > n {
                        bail!("chi needs n >= 3 and i <= n");
                    }
                    named.chi(i).clone()
                }
                other => bail!("unknown polynomial family {other:?} (expected E, Ehat, chi, e)"),
            };
            let rendered = match format {
                Format::Json => poly_json(
                    serde_json::json!({ "name": name, "n": n, "k": k, "i": i }),
                    &p,
                ),
                _ => p.to_string(),
            };
            emit(out, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Zd {
            n,
            d,
            u,
            format,
            out,
        } => {
            guard(n, 12, false, "zd")?;
            let d = CurveDegree::parse(&d, n)?;
            let z = z_d(&d);
            let neighborhood = match u {
                None => None,
                Some(s) => {
                    let u = Permutation::parse(&s, n)?;
                    Some((u.clone(), curve_neighborhood(&u, &d)?))
                }
            };
            let rendered = match format {
                Format::Json => {
                    let mut obj = serde_json::json!({
                        "n": n,
                        "d": d.entries(),
                        "z": z.one_line(),
                        "length": z.length(),
                    });
                    if let Some((u, nb)) = &neighborhood {
                        obj["u"] = serde_json::json!(u.one_line());
                        obj["neighborhood"] = serde_json::json!(nb.one_line());
                    }
                    serde_json::to_string_pretty(&obj)?
                }
                _ => match &neighborhood {
                    None => format!("z_d = {z} (length {})", z.length()),
                    Some((u, nb)) => format!(
                        "z_d = {z} (length {})\nneighborhood of {u}: {nb}",
                        z.length()
                    ),
                },
            };
            emit(out, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            n,
            space,
            maxdeg,
            out,
            force,
        } => {
            let ns = parse_range(&n)?;
            let (lo, hi) = (*ns.start(), *ns.end());
            let (min, bound) = match suite {
                Suite::Relations | Suite::Lefschetz | Suite::ZdBound => (3, 6),
                Suite::Oracle => (2, 4),
                Suite::Transition => (2, 5),
            };
            if lo < min {
                bail!("this suite needs rank >= {min}, got {lo}");
            }
            if hi > bound && !force {
                bail!(
                    "this suite is guarded at n <= {bound} (got n = {hi}); pass --force to override"
                );
            }
            let results = match suite {
                Suite::Relations => checks::relations_suite(ns),
                Suite::Lefschetz => checks::lefschetz_suite(ns, 4),
                Suite::Oracle => {
                    let spaces: Vec<Space> = match space {
                        Some(s) => vec![s.into()],
                        None => vec![Space::FlagVariety, Space::SchubertDivisorX],
                    };
                    checks::oracle_suite(ns, &spaces)
                }
                Suite::ZdBound => checks::zd_bound_suite(ns, maxdeg),
                Suite::Transition => checks::transition_suite(ns),
            };
            let mut sorted = results;
            sorted.sort_by(|a, b| a.name.cmp(&b.name));
            let mut lines = Vec::new();
            for r in &sorted {
                match (&r.pass, &r.detail) {
                    (true, _) => lines.push(format!("PASS {}", r.name)),
                    (false, Some(d)) => lines.push(format!("FAIL {}: {d}", r.name)),
                    (false, None) => lines.push(format!("FAIL {}", r.name)),
                }
            }
            let ok = checks::all_pass(&sorted);
            lines.push(format!(
                "{}: {} checks, {} failed",
                if ok { "OK" } else { "FAILED" },
                sorted.len(),
                sorted.iter().filter(|r| !r.pass).count()
            ));
            emit(out, &lines.join("\n"))?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
