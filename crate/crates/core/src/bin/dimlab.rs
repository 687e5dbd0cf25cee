use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dimlab::abelian::{format_invariants, parse_invariants, FgAbelian};
use dimlab::functors::apply_named;
use dimlab::magnus::parse_word;
use dimlab::verify::{
    exit_code, run_suite, CheckOptions, CheckReport, DimCheck, DimInput, FiniteGroupTable, FoxPart, FoxWitness, Job, Preset,
    PresentationSpec, RepTag,
};
use dimlab::{Error, Result};

#[derive(Parser)]
#[command(name = "dimlab", version, about = "Exact checks of dimension-subgroup identities over free presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one check: fg1, corfrf, l2, frcapf3, eqr, kkv, d3fr, d3r2, fsideal,
    /// fox, thdim, foxlimit, monoadd, limit or dimq.
    Check(CheckArgs),
    /// Run a preset collection of checks.
    Suite {
        #[arg(long, default_value = "smoke")]
        preset: String,
        /// Worker threads (defaults to all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the invariant factors of a functor value, e.g. `functor l1sp2 --group 2,4`.
    Functor {
        tag: String,
        #[arg(long, allow_hyphen_values = true)]
        group: String,
    },
    /// Compute a limit over the presentations of a group.
    Limit {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        pres: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct CheckArgs {
    id: String,
    #[arg(long)]
    rank: Option<usize>,
    /// Exponents `e_1,...,e_m` of the relators `x_i^{e_i}`.
    #[arg(long)]
    exponents: Option<String>,
    /// Presentation file.
    #[arg(long)]
    pres: Option<PathBuf>,
    /// Relator word (repeatable); requires --rank.
    #[arg(long)]
    relator: Vec<String>,
    /// Add all weight-two commutators as relators.
    #[arg(long)]
    gamma2: bool,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    class: Option<usize>,
    /// GEN_B, ISO_A or REMARK_TF for `fox`.
    #[arg(long)]
    part: Option<String>,
    /// Witness tuple `x; y; m; r_x; s_x; r_y; s_y` for `fox` (repeatable).
    #[arg(long)]
    witness: Vec<String>,
    /// Multiplication table file for `thdim` and `dimq`.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Representation tag for `monoadd` and `limit`.
    #[arg(long)]
    rep: Option<String>,
    #[arg(long)]
    report: Option<PathBuf>,
}

fn usage(msg: &str) -> Error {
    Error::InvalidConfig(msg.to_string())
}

impl CheckArgs {
    fn presentation(&self) -> Result<PresentationSpec> {
        let p = match (&self.pres, self.relator.is_empty()) {
            (Some(path), true) => PresentationSpec::load(path)?,
            (None, false) => {
                let rank = self.rank.ok_or_else(|| usage("--relator needs --rank"))?;
                let rels = self.relator.iter().map(|w| parse_word(w, rank)).collect::<Result<_>>()?;
                PresentationSpec::new(rank, rels)
            }
            (None, true) => {
                let rank = self.rank.ok_or_else(|| usage("give --pres FILE, or --rank with --relator words"))?;
                PresentationSpec::new(rank, Vec::new())
            }
            (Some(_), false) => return Err(usage("--pres and --relator are exclusive")),
        };
        Ok(if self.gamma2 { p.with_gamma2() } else { p })
    }

    fn dim_input(&self) -> Result<DimInput> {
        match &self.exponents {
            Some(list) => {
                let e = list.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent `{t}`")))).collect::<Result<Vec<_>>>()?;
                if self.rank.is_some_and(|r| r != e.len()) {
                    return Err(usage("--rank disagrees with the number of exponents"));
                }
                Ok(DimInput::Exponents(e))
            }
            None => Ok(DimInput::Presentation(self.presentation()?)),
        }
    }

    fn rep(&self) -> Result<RepTag> {
        self.rep.as_deref().ok_or_else(|| usage("--rep is required"))?.parse()
    }

    fn table(&self) -> Result<(String, FiniteGroupTable)> {
        let path = self.table.as_ref().ok_or_else(|| usage("--table is required"))?;
        Ok((stem(path), FiniteGroupTable::load(path)?))
    }

    fn job(&self) -> Result<Job> {
        let id = self.id.to_ascii_lowercase();
        Ok(match id.as_str() {
            "fox" => {
                let part: FoxPart = self.part.as_deref().ok_or_else(|| usage("--part is required for fox"))?.parse()?;
                let witnesses = if self.witness.is_empty() {
                    None
                } else {
                    Some(self.witness.iter().map(|w| w.parse()).collect::<Result<Vec<FoxWitness>>>()?)
                };
                Job::Fox { part, pres: self.presentation()?, witnesses }
            }
            "thdim" => Job::Thdim { pres: self.presentation()?, table: self.table()?.1 },
            "foxlimit" => Job::FoxLimit { pres: self.presentation()? },
            "monoadd" => Job::Monoadd { tag: self.rep()?, pres: self.presentation()? },
            "limit" => Job::Limit { tag: self.rep()?, pres: self.presentation()? },
            "dimq" => {
                let (name, table) = self.table()?;
                Job::DimQuotients { name, table }
            }
            _ => {
                let defaults = CheckOptions::default();
                let opts = CheckOptions { class: self.class.unwrap_or(defaults.class), max_degree: self.max_degree.unwrap_or(defaults.max_degree) };
                Job::Dim { id: id.parse::<DimCheck>()?, input: self.dim_input()?, opts }
            }
        })
    }
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

/// Writes the JSON array to `path` (stdout when absent) and a summary line per report to stderr.
fn emit(reports: &[CheckReport], path: Option<&Path>) -> Result<()> {
    for r in reports {
        eprintln!(
            "{:<9} {:<8} [{}] vs [{}] {}ms",
            r.check,
            r.status,
            format_invariants(&r.lhs_invariants),
            format_invariants(&r.rhs_invariants),
            r.millis
        );
    }
    let json = serde_json::to_string_pretty(reports).map_err(|e| Error::Io(e.to_string()))?;
    match path {
        Some(p) => std::fs::write(p, json + "\n")?,
        None => println!("{json}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Check(args) => {
            let report = args.job()?.run();
            let reports = [report];
            emit(&reports, args.report.as_deref())?;
            Ok(exit_code(&reports))
        }
        Command::Suite { preset, jobs, report } => {
            let reports = run_suite(&preset.parse::<Preset>()?.jobs()?, jobs)?;
            emit(&reports, report.as_deref())?;
            Ok(exit_code(&reports))
        }
        Command::Functor { tag, group } => {
            let a = FgAbelian::from_invariant_ints(&parse_invariants(&group)?);
            println!("{}", apply_named(&tag, &a)?.invariant_string());
            Ok(0)
        }
        Command::Limit { rep, pres, report } => {
            let r = Job::Limit { tag: rep.parse()?, pres: PresentationSpec::load(&pres)? }.run();
            println!("{}", format_invariants(&r.lhs_invariants));
            if let Some(path) = report {
                emit(std::slice::from_ref(&r), Some(&path))?;
            }
            Ok(exit_code(std::slice::from_ref(&r)))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("dimlab: {e}");
            ExitCode::from(2)
        }
    }
}
