use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use pgph::catalog::{render_svg, resolve_catalog, resolve_group};
use pgph::coclass::{check_h2_splitting, tree_persistence, FamilyKind};
use pgph::group::Functor;
use pgph::homology::{bar_homology_fp, default_prime, homology_dims};
use pgph::persistence::{
    barcode, classify, integral_persistence_sequence, persistence_matrix, ClassificationReport,
};
use pgph::selftest::run_selftest;
use pgph::{Budget, Error};

#[derive(Parser)]
#[command(name = "pgph", version, about = "Persistent homology invariants of finite p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArgs {
    /// Group file, `catalog:ID`, bundled id or abelian label such as C2xC4.
    #[arg(long)]
    group: String,
    /// Normal series: L, Lp, D, Z or Zp.
    #[arg(long)]
    series: Functor,
}

#[derive(Subcommand)]
enum Command {
    /// Persistence matrix P_n of one group.
    Matrix {
        #[command(flatten)]
        target: GroupArgs,
        #[arg(long)]
        degree: usize,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Bar code of P_n as SVG or text.
    Barcode {
        #[command(flatten)]
        target: GroupArgs,
        #[arg(long)]
        degree: usize,
        #[arg(long, conflicts_with = "txt")]
        svg: Option<PathBuf>,
        #[arg(long)]
        txt: bool,
    },
    /// Classify a catalog by P_1, ..., P_t.
    Classify {
        /// Directory of group files, `bundled` or `bundledK`.
        #[arg(long)]
        catalog: String,
        /// A series, or `all` for one CSV row per series.
        #[arg(long)]
        series: String,
        #[arg(long)]
        max_degree: usize,
        /// Use integral persistence triples.
        #[arg(long)]
        integral: bool,
        /// Write the full report JSON here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the CSV summary here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Integral persistence matrices IP_1, ..., IP_t.
    Integral {
        #[command(flatten)]
        target: GroupArgs,
        #[arg(long)]
        max_degree: usize,
    },
    /// Persistent homology along the coclass tree of the 2-groups of coclass 1.
    Coclass {
        #[arg(long)]
        family: FamilyKind,
        /// Level window `a..b`; level l has order 2^l.
        #[arg(long, value_parser = parse_levels)]
        levels: (u32, u32),
        #[arg(long)]
        degree: usize,
    },
    /// Mod-p homology dimensions from a minimal resolution.
    Homology {
        #[arg(long)]
        group: String,
        #[arg(long)]
        max_degree: usize,
        /// Cross-check every degree against the bar complex.
        #[arg(long)]
        oracle: bool,
    },
    /// Invariant suites over the bundled catalog.
    Selftest {
        /// Only groups of order at most 16.
        #[arg(long)]
        quick: bool,
    },
}

fn parse_levels(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: u32 = a.parse().map_err(|_| format!("bad level {a:?}"))?;
    let b: u32 = b.trim_start_matches('=').parse().map_err(|_| format!("bad level {b:?}"))?;
    if a > b {
        return Err(format!("empty window {s}"));
    }
    Ok((a, b))
}

/// Failure with its exit status.
struct Exit(u8, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Exit {
        let code = match &e {
            Error::InvalidInput(_) => 2,
            e if e.is_budget() => 3,
            Error::Internal(_) => 1,
            _ => 4,
        };
        Exit(code, e.to_string())
    }
}

fn write(path: &Path, text: &str) -> Result<(), Exit> {
    fs::write(path, text).map_err(|e| Exit(4, format!("{}: {e}", path.display())))
}

fn resolve(selector: &str) -> Result<Arc<pgph::group::FiniteGroup>, Exit> {
    Ok(resolve_group(selector)?.group)
}

fn run(command: Command, budget: Budget) -> Result<(), Exit> {
    match command {
        Command::Matrix { target, degree, json } => {
            let g = resolve(&target.group)?;
            let m = persistence_matrix(&g, target.series, degree, budget)?;
            match json {
                Some(path) => {
                    write(&path, &(m.to_json() + "\n"))?;
                    print!("{m}");
                }
                None => println!("{}", m.to_json()),
            }
        }
        Command::Barcode { target, degree, svg, txt: _ } => {
            let g = resolve(&target.group)?;
            let b = barcode(&persistence_matrix(&g, target.series, degree, budget)?)?;
            match svg {
                Some(path) => write(&path, &render_svg(&b))?,
                None => print!("{b}"),
            }
        }
        Command::Classify {
            catalog,
            series,
            max_degree,
            integral,
            report,
            csv,
        } => {
            let functors: Vec<Functor> = if series == "all" {
                Functor::ALL.to_vec()
            } else {
                vec![series.parse()?]
            };
            let entries = resolve_catalog(&catalog)?;
            let groups: Vec<_> = entries.iter().map(|e| e.group.clone()).collect();
            let reports: Vec<ClassificationReport> = functors
                .iter()
                .map(|&f| classify(&groups, f, max_degree, integral, budget))
                .collect();
            let mut table = String::from(ClassificationReport::CSV_HEADER);
            table.push('\n');
            for r in &reports {
                println!("{}", r.summary_json());
                table.push_str(&r.csv_row());
                table.push('\n');
            }
            match csv {
                Some(path) => write(&path, &table)?,
                None => print!("{table}"),
            }
            if let Some(path) = report {
                let value = if reports.len() == 1 {
                    serde_json::to_value(&reports[0])
                } else {
                    serde_json::to_value(&reports)
                }
                .expect("report serializes");
                write(&path, &(serde_json::to_string_pretty(&value).expect("json") + "\n"))?;
            }
            if let Some(f) = reports.iter().flat_map(|r| &r.failures).next() {
                return Err(Exit(3, format!("partial classification: {}: {}", f.group, f.reason)));
            }
        }
        Command::Integral { target, max_degree } => {
            let g = resolve(&target.group)?;
            let ms = integral_persistence_sequence(&g, target.series, 1, max_degree, budget)?;
            println!("{}", serde_json::to_string_pretty(&ms).expect("matrices serialize"));
        }
        Command::Coclass { family, levels, degree } => {
            let (lo, hi) = levels;
            if family == FamilyKind::Dihedral {
                let report = tree_persistence(family, degree, lo, hi, budget)?;
                println!("{}", report.to_json());
            } else {
                if degree != 2 {
                    return Err(Exit(2, format!("the {family} family is checked through H_2 only")));
                }
                let report = check_h2_splitting(family, lo..=hi, budget)?;
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
                if !report.passed() {
                    return Err(Exit(1, "H_2 splitting check failed".into()));
                }
            }
        }
        Command::Homology { group, max_degree, oracle } => {
            let g = resolve(&group)?;
            let p = default_prime(&g);
            let dims = homology_dims(&g, p, max_degree, budget)?;
            let mut out = serde_json::json!({ "group": g.name(), "prime": p, "dims": dims });
            if oracle {
                let bar = (0..=max_degree)
                    .map(|n| if n == 0 { Ok(1) } else { bar_homology_fp(&g, p, n, &budget) })
                    .collect::<pgph::Result<Vec<usize>>>()?;
                let agree = bar == dims;
                out["oracle"] = serde_json::json!(bar);
                out["agree"] = serde_json::json!(agree);
                println!("{}", serde_json::to_string_pretty(&out).expect("json"));
                if !agree {
                    return Err(Exit(1, "minimal resolution and bar complex disagree".into()));
                }
            } else {
                println!("{}", serde_json::to_string_pretty(&out).expect("json"));
            }
        }
        Command::Selftest { quick } => {
            let checks = run_selftest(budget, quick);
            let failed = checks.iter().filter(|c| !c.passed).count();
            for c in &checks {
                let status = if c.passed { "ok" } else { "FAIL" };
                match &c.detail {
                    Some(d) => println!("{status} {} {}: {d}", c.suite, c.subject),
                    None => println!("{status} {} {}", c.suite, c.subject),
                }
            }
            println!("{} checks, {failed} failed", checks.len());
            if failed > 0 {
                return Err(Exit(1, format!("{failed} checks failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, Budget::from_env()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit(code, message)) => {
            eprintln!("pgph: {message}");
            ExitCode::from(code)
        }
    }
}
