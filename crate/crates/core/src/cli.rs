//! Command-line front end. [`run`] returns the process exit code.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::bernstein::{certify_upper_bound, replay_with, Policy, Region, SplitRule, SubProofRegistry, Verdict};
use crate::expected::Expected;
use crate::hankel::objectives::{build_bound_polys, ObjectiveSet, Variant};
use crate::hankel::theorems::q00_registry;
use crate::maminda::{extremal_function, phi_report, ExtremalKind, PhiSpec};
use crate::parallel::{with_workers, Execution};
use crate::poly::MultiPoly;
use crate::rational::{parse_rational, Rational};
use crate::reproduce::{computed_tables, extremal_check, reproduce};
use crate::tables::{render_latex, render_markdown};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_ESTABLISHED: i32 = 3;

pub const WORKERS_ENV: &str = "POLYCERT_WORKERS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    #[value(alias = "markdown")]
    Md,
    #[value(alias = "latex")]
    Tex,
}

#[derive(Debug, Parser)]
#[command(name = "polycert", version, about = "Exact Bernstein enclosure certificates and the Hankel bound reproduction")]
pub struct Cli {
    /// Worker threads for leaf evaluation (results do not depend on it).
    #[arg(long, global = true, env = WORKERS_ENV)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prove `poly <= bound` on a box and write the certificate.
    Certify(CertifyArgs),
    /// Re-check a certificate independently.
    Replay {
        cert: PathBuf,
    },
    /// Recompute every table and constant and diff against the embedded values.
    VerifyPaper {
        /// Alternative expected-values file.
        #[arg(long)]
        expected: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Property gates for `phi(z) = 1 + z + (m/n) z^2`.
    Phi {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Bernstein matrices of the bound objectives.
    Tables {
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the objective polynomials in interchange format.
    Objectives {
        #[arg(long, default_value = "derived")]
        variant: Variant,
        #[arg(long)]
        out: PathBuf,
    },
    /// Taylor data of an extremal function.
    Extremal {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = crate::series::DEFAULT_ORDER)]
        order: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    H2,
    H3,
}

impl From<KindArg> for ExtremalKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::H2 => ExtremalKind::H2,
            KindArg::H3 => ExtremalKind::H3,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub poly: PathBuf,
    /// Rational bound `N/D`.
    #[arg(long)]
    pub bound: String,
    /// Box as `lo:hi` per variable, comma separated; default is the unit cube.
    #[arg(long)]
    pub region: Option<String>,
    /// First-level uniform split, e.g. `8,8,1`.
    #[arg(long, value_delimiter = ',')]
    pub splits: Option<Vec<usize>>,
    #[arg(long, default_value_t = 12)]
    pub depth: usize,
    #[arg(long)]
    pub strict: bool,
    /// Named sub-proof allowed to discharge boxes (`q00-chain`).
    #[arg(long = "hand-chain")]
    pub hand_chain: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// What a command produced: text for stdout, files to write, and an exit code.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub files: Vec<(String, String)>,
    pub code: i32,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn parse_region(spec: &str, dim: usize) -> Result<Region, CliError> {
    let bounds = spec
        .split(',')
        .map(|iv| {
            let (lo, hi) = iv.split_once(':').ok_or_else(|| input(format!("interval {iv:?} is not lo:hi")))?;
            Ok((parse_rational(lo.trim()).map_err(input)?, parse_rational(hi.trim()).map_err(input)?))
        })
        .collect::<Result<Vec<(Rational, Rational)>, CliError>>()?;
    if bounds.len() != dim {
        return Err(input(format!("region has {} intervals, polynomial has {dim} variables", bounds.len())));
    }
    Region::from_bounds(bounds).map_err(input)
}

fn registry_for(names: &[String], exec: Execution) -> Result<SubProofRegistry, CliError> {
    let registry = q00_registry(exec).map_err(internal)?;
    for n in names {
        registry.get(n).map_err(input)?;
    }
    Ok(registry)
}

fn cmd_certify(a: &CertifyArgs, exec: Execution) -> Result<Output, CliError> {
    let poly = MultiPoly::from_json(&read(&a.poly)?).map_err(input)?;
    let bound = parse_rational(a.bound.trim()).map_err(input)?;
    let region = match &a.region {
        Some(s) => parse_region(s, poly.nvars())?,
        None => Region::unit(poly.nvars()),
    };
    let mut policy = Policy::adaptive(a.depth).strict(a.strict).with_exec(exec);
    if let Some(s) = &a.splits {
        if s.len() != poly.nvars() || s.contains(&0) {
            return Err(input(format!("--splits needs {} entries, each >= 1", poly.nvars())));
        }
        policy.schedule = vec![SplitRule::Uniform(s.clone())];
    }
    for h in &a.hand_chain {
        policy = policy.with_hand_chain(h);
    }
    let registry = registry_for(&a.hand_chain, exec)?;
    let cert = certify_upper_bound(&poly, &region, &bound, &policy, &registry).map_err(internal)?;
    let code = if cert.verdict == Verdict::Proved { EXIT_OK } else { EXIT_NOT_ESTABLISHED };
    let json = cert.to_json();
    let summary = {
        let leaves = cert.leaves().count();
        let mut s = format!(
            "verdict: {}\nbound: {}{}\nnodes: {}, leaves: {leaves}\n",
            cert.verdict,
            if cert.strict { "< " } else { "<= " },
            cert.bound,
            cert.nodes.len()
        );
        if let Some(w) = cert.worst {
            let n = &cert.nodes[w];
            s.push_str(&format!("worst box: {} with max beta {}\n", n.region, n.max_beta));
        }
        s
    };
    let stdout = match a.format {
        Format::Json => json.clone(),
        Format::Md => summary,
        Format::Tex => return Err(input("certify supports json and md output")),
    };
    let files = if a.out.is_some() { vec![("certificate.json".to_string(), json)] } else { Vec::new() };
    Ok(Output { stdout, files, code })
}

fn cmd_replay(path: &Path, exec: Execution) -> Result<Output, CliError> {
    let cert = crate::bernstein::Certificate::from_json(&read(path)?).map_err(input)?;
    let registry = q00_registry(exec).map_err(internal)?;
    match replay_with(&cert, &registry, exec) {
        Ok(v) => Ok(Output {
            stdout: format!("replay: {v}\n"),
            files: Vec::new(),
            code: if v == Verdict::Proved { EXIT_OK } else { EXIT_NOT_ESTABLISHED },
        }),
        Err(rej) => Err(input(format!("certificate rejected at {rej}"))),
    }
}

fn cmd_verify(expected: &Option<PathBuf>, format: Format, exec: Execution) -> Result<Output, CliError> {
    let expected = match expected {
        Some(p) => Expected::from_json(&read(p)?).map_err(input)?,
        None => Expected::embedded(),
    };
    let rep = reproduce(&expected, exec).map_err(internal)?;
    let (json, md) = (rep.to_json(), rep.to_markdown());
    let mut stdout = match format {
        Format::Json => json.clone(),
        Format::Md => md.clone(),
        Format::Tex => return Err(input("verify-paper supports json and md output")),
    };
    if let Some(m) = rep.first_mismatch() {
        stdout.push_str(&format!("\nfirst mismatch: {}: expected {}, got {}\n", m.item, m.expected, m.actual));
    }
    Ok(Output {
        stdout,
        files: vec![("report.json".into(), json), ("report.md".into(), md)],
        code: if rep.passed { EXIT_OK } else { EXIT_NOT_ESTABLISHED },
    })
}

fn cmd_phi(m: u64, n: u64, format: Format) -> Result<Output, CliError> {
    let spec = PhiSpec::new(m, n).map_err(input)?;
    let r = phi_report(&spec);
    let stdout = match format {
        Format::Json => serde_json::to_string_pretty(&r).map_err(internal)?,
        Format::Md => {
            let mut s = format!("phi(z) = 1 + z + ({}) z^2\n\n", spec.a);
            s.push_str(&format!("- 2m <= n: {}\n", r.admissible));
            s.push_str(&format!("- univalent: {}", r.univalence.univalent));
            if let Some(w) = &r.univalence.witness {
                s.push_str(&format!(" (phi({}) = phi({}) = {})", w.z1, w.z2, w.value));
            }
            s.push_str(&format!("\n- starlike with respect to 1: {}", r.starlike.starlike));
            if let Some(w) = &r.starlike.witness {
                s.push_str(&format!(" (real part {} at z = -{})", w.value, w.r));
            }
            s.push_str(&format!(
                "\n- Re phi > 0: {} (boundary minimum {} at cos = {}, 8a^2-8a+1 = {})\n",
                r.re_positivity.positive, r.re_positivity.minimum, r.re_positivity.argmin, r.re_positivity.threshold_sign
            ));
            s
        }
        Format::Tex => return Err(input("phi supports json and md output")),
    };
    Ok(Output {
        stdout,
        files: Vec::new(),
        code: EXIT_OK,
    })
}

fn cmd_tables(format: Format, exec: Execution) -> Result<Output, CliError> {
    let t = computed_tables(exec).map_err(internal)?;
    let all = t.matrices();
    let (md, tex) = (render_markdown(&all), render_latex(&all));
    let json = serde_json::to_string_pretty(&all).map_err(internal)?;
    let stdout = match format {
        Format::Json => json.clone(),
        Format::Md => md.clone(),
        Format::Tex => tex.clone(),
    };
    Ok(Output {
        stdout,
        files: vec![("tables.md".into(), md), ("tables.tex".into(), tex), ("tables.json".into(), json)],
        code: EXIT_OK,
    })
}

fn cmd_objectives(variant: Variant) -> Result<Output, CliError> {
    let set: ObjectiveSet = build_bound_polys(variant).map_err(internal)?;
    let mut files = Vec::new();
    for name in ObjectiveSet::NAMES {
        files.push((format!("{name}.json"), set.get(name).map_err(internal)?.to_json()));
    }
    Ok(Output {
        stdout: format!("{} objectives ({variant})\n", files.len()),
        files,
        code: EXIT_OK,
    })
}

fn cmd_extremal(kind: ExtremalKind, m: u64, n: u64, order: usize) -> Result<Output, CliError> {
    let spec = PhiSpec::new(m, n).map_err(input)?;
    let f = extremal_function(kind, &spec, order).map_err(input)?;
    let check = extremal_check(kind, &spec).map_err(internal)?;
    let value = serde_json::json!({
        "series": f.to_string(),
        "check": check,
    });
    Ok(Output {
        stdout: serde_json::to_string_pretty(&value).map_err(internal)?,
        files: Vec::new(),
        code: if check.holds { EXIT_OK } else { EXIT_NOT_ESTABLISHED },
    })
}

/// Executes a parsed command without touching the terminal.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let exec = Execution::Parallel;
    with_workers(cli.workers, || match &cli.command {
        Command::Certify(a) => cmd_certify(a, exec),
        Command::Replay { cert } => cmd_replay(cert, exec),
        Command::VerifyPaper { expected, format, .. } => cmd_verify(expected, *format, exec),
        Command::Phi { m, n, format } => cmd_phi(*m, *n, *format),
        Command::Tables { format, .. } => cmd_tables(*format, exec),
        Command::Objectives { variant, .. } => cmd_objectives(*variant),
        Command::Extremal { kind, m, n, order } => cmd_extremal((*kind).into(), *m, *n, *order),
    })
}

fn out_dir(cli: &Cli) -> Option<&Path> {
    match &cli.command {
        Command::Certify(a) => a.out.as_deref(),
        Command::VerifyPaper { out, .. } | Command::Tables { out, .. } => out.as_deref(),
        Command::Objectives { out, .. } => Some(out),
        _ => None,
    }
}

fn write_files(dir: &Path, files: &[(String, String)]) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| input(format!("{}: {e}", dir.display())))?;
    for (name, body) in files {
        let p = dir.join(name);
        fs::write(&p, body).map_err(|e| input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

/// Parses `args`, runs the command, prints, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = execute(&cli).and_then(|out| {
        if let Some(dir) = out_dir(&cli) {
            write_files(dir, &out.files)?;
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            if !out.stdout.ends_with('\n') {
                println!();
            }
            out.code
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("polycert").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn phi_output() {
        let out = execute(&parse(&["phi", "--m", "3", "--n", "4"])).unwrap();
        assert!(out.stdout.contains("univalent: false"));
        assert!(out.stdout.contains("Re phi > 0: true"));
        assert!(matches!(execute(&parse(&["phi", "--m", "0", "--n", "4"])), Err(CliError::Input(_))));
    }

    #[test]
    fn region_parsing() {
        let r = parse_region("0:1/2, 1/4:1", 2).unwrap();
        assert_eq!(r.interval(0).hi, crate::rational::rat(1, 2));
        assert!(parse_region("0:1", 2).is_err());
        assert!(parse_region("0-1,0:1", 2).is_err());
    }

    #[test]
    fn bad_arguments_are_input_errors() {
        assert_eq!(run(["polycert", "certify"]), EXIT_INPUT);
        assert_eq!(run(["polycert", "nonsense"]), EXIT_INPUT);
    }
}
