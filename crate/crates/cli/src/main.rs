//! `colorsuper`: verify, build and export color (super)algebras.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use colorsuper_core::algebra::clifford_as_color_algebra;
use colorsuper_core::envelope::{export_bf, verify_bf_relations, BfGenerator};
use colorsuper_core::grassmann::{monomial_count, vector_field, verify_representation};
use colorsuper_core::oracle::{
    check_bf_on_fock, check_gamma_relations, check_kappa_against_matrices, gamma_matrices,
    FockSpace, Matrix,
};
use colorsuper_core::tensor::build_color_super;
use colorsuper_core::{clifford, json, ColorAlgebra, PairingKind, Report, Signature, Superalgebra};
use serde::Serialize;
use serde_json::{json, Map, Value};

const FOCK_MARGIN: usize = 3;

#[derive(Parser)]
#[command(
    name = "colorsuper",
    version,
    about = "Exact checks for Z2^N graded color superalgebras"
)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for verification sweeps.
    #[arg(long, global = true, env = "COLORSUPER_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Clifford sign law and generic color algebra audits.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Construct algebras.
    #[command(subcommand)]
    Build(BuildCmd),
    /// The boson-fermion algebra bf(n).
    #[command(subcommand)]
    Bf(BfCmd),
    /// Vector field representation of bf(1).
    #[command(subcommand)]
    Rep(RepCmd),
    /// Explicit matrix cross-checks.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Blade products against κ, plus the Clifford color algebra audits.
    Clifford(SigArgs),
    /// Closure, antisymmetry and graded Jacobi for an algebra file.
    Colorjacobi {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum BuildCmd {
    /// Superalgebra ⊗ Cl(p,q).
    Tensor {
        /// Superalgebra JSON file.
        #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
        algebra: Option<PathBuf>,
        /// Catalog name: fermionic_heisenberg, osp(1|2), bf_source(n).
        #[arg(long)]
        builtin: Option<String>,
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        out: PathBuf,
        /// Run the three auditors before writing.
        #[arg(long)]
        audit: bool,
    },
}

#[derive(Subcommand)]
enum BfCmd {
    Verify {
        #[arg(long, default_value_t = 1)]
        modes: usize,
    },
    Export {
        #[arg(long, default_value_t = 1)]
        modes: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    Verify {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Print the operator for one generator, e.g. `A`, `adag`, `F`.
    Show { generator: String },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Gamma matrix anticommutators and κ against matrix products.
    Gamma {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// bf(n) relations on truncated Fock space.
    Fock {
        #[arg(long, default_value_t = 1)]
        modes: usize,
        #[arg(long, default_value_t = 8)]
        cutoff: usize,
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SigArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
}

impl SigArgs {
    fn signature(&self) -> anyhow::Result<Signature> {
        Ok(Signature::new(self.p, self.q)?)
    }

    fn params(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("p".into(), json!(self.p));
        m.insert("q".into(), json!(self.q));
        m
    }
}

#[derive(Serialize)]
struct Outcome {
    command: String,
    parameters: Map<String, Value>,
    #[serde(flatten)]
    report: Report,
    #[serde(skip)]
    notes: Vec<String>,
}

impl Outcome {
    fn new(command: &str, parameters: Map<String, Value>, report: Report) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            report,
            notes: Vec::new(),
        }
    }

    fn note(mut self, line: impl Into<String>) -> Self {
        self.notes.push(line.into());
        self
    }

    fn print(&self, as_json: bool) -> anyhow::Result<()> {
        if as_json {
            println!("{}", serde_json::to_string_pretty(self)?);
            return Ok(());
        }
        for n in &self.notes {
            println!("{n}");
        }
        println!(
            "{}: checked {}, violations {}",
            self.command,
            self.report.checked_count,
            self.report.violations.len()
        );
        for v in self.report.violations.iter().take(20) {
            println!("  {}  vs  {}  (residual {})", v.lhs, v.rhs, v.residual);
        }
        if self.report.violations.len() > 20 {
            println!("  ... {} more", self.report.violations.len() - 20);
        }
        Ok(())
    }
}

fn merged<I: IntoIterator<Item = Report>>(reports: I) -> Report {
    let mut out = Report::default();
    for r in reports {
        out.merge(r);
    }
    out
}

fn params<const K: usize>(pairs: [(&str, Value); K]) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn audit_report(alg: &ColorAlgebra) -> Report {
    let audit = alg.audit();
    merged(audit.reports().into_iter().map(|(_, r)| r.clone()))
}

fn write_matrices(path: &Path, mats: &[(String, &Matrix)]) -> anyhow::Result<()> {
    let doc: Vec<Value> = mats
        .iter()
        .map(|(name, m)| json!({ "name": name, "dim": m.dim(), "rows": m.to_string_rows() }))
        .collect();
    std::fs::write(path, serde_json::to_string_pretty(&doc)? + "\n")
        .with_context(|| format!("writing {}", path.display()))
}

fn run(cmd: Command) -> anyhow::Result<Outcome> {
    Ok(match cmd {
        Command::Verify(VerifyCmd::Clifford(sig)) => {
            let s = sig.signature()?;
            let sign_law = clifford::check_sign_law(s);
            let pairs = sign_law.checked_count;
            let mut report = sign_law;
            report.merge(audit_report(&clifford_as_color_algebra(
                s,
                PairingKind::Dot,
            )?));
            Outcome::new("verify clifford", sig.params(), report)
                .note(format!("Cl({},{}): {pairs} blade pairs", sig.p, sig.q))
        }
        Command::Verify(VerifyCmd::Colorjacobi { file }) => {
            let alg =
                json::read_algebra(&file).with_context(|| format!("reading {}", file.display()))?;
            let audit = alg.audit();
            let notes: Vec<String> = audit
                .reports()
                .iter()
                .map(|(name, r)| {
                    format!(
                        "{name}: {} checked, {} violations",
                        r.checked_count,
                        r.violations.len()
                    )
                })
                .collect();
            let report = merged(audit.reports().into_iter().map(|(_, r)| r.clone()));
            let mut out = Outcome::new(
                "verify colorjacobi",
                params([
                    ("file", json!(file.display().to_string())),
                    ("dim", json!(alg.dim())),
                ]),
                report,
            );
            out.notes = notes;
            out
        }
        Command::Build(BuildCmd::Tensor {
            algebra,
            builtin,
            sig,
            out,
            audit,
        }) => {
            let g = match (&algebra, &builtin) {
                (Some(path), _) => Superalgebra::load(path)
                    .with_context(|| format!("reading {}", path.display()))?,
                (None, Some(name)) => Superalgebra::builtin(name)?,
                (None, None) => bail!("one of --algebra or --builtin is required"),
            };
            let built = build_color_super(&g, sig.signature()?)?;
            let report = if audit {
                audit_report(&built)
            } else {
                Report::default()
            };
            let mut p = sig.params();
            p.insert("source".into(), json!(g.algebra().name()));
            p.insert("out".into(), json!(out.display().to_string()));
            p.insert("dim".into(), json!(built.dim()));
            p.insert("audited".into(), json!(audit));
            if report.passed() {
                json::write_algebra(&out, &built)
                    .with_context(|| format!("writing {}", out.display()))?;
            }
            Outcome::new("build tensor", p, report).note(format!(
                "{} (dim {})",
                built.name(),
                built.dim()
            ))
        }
        Command::Bf(BfCmd::Verify { modes }) => {
            let sectors = verify_bf_relations(modes)?;
            let alg = export_bf(modes)?;
            let report = merged([sectors, audit_report(&alg)]);
            Outcome::new("bf verify", params([("modes", json!(modes))]), report)
                .note(format!("bf({modes}): {} basis elements", alg.dim()))
        }
        Command::Bf(BfCmd::Export { modes, out }) => {
            let alg = export_bf(modes)?;
            json::write_algebra(&out, &alg)
                .with_context(|| format!("writing {}", out.display()))?;
            Outcome::new(
                "bf export",
                params([
                    ("modes", json!(modes)),
                    ("out", json!(out.display().to_string())),
                    ("dim", json!(alg.dim())),
                ]),
                Report::default(),
            )
            .note(format!(
                "wrote {} basis elements to {}",
                alg.dim(),
                out.display()
            ))
        }
        Command::Rep(RepCmd::Verify { max_degree }) => {
            let report = verify_representation(max_degree)?;
            let monomials = monomial_count(max_degree);
            Outcome::new(
                "rep verify",
                params([
                    ("max_degree", json!(max_degree)),
                    ("monomials", json!(monomials)),
                ]),
                report,
            )
            .note(format!("{monomials} monomials"))
        }
        Command::Rep(RepCmd::Show { generator }) => {
            let g: BfGenerator = generator.parse()?;
            let op = vector_field(g)?;
            Outcome::new(
                "rep show",
                params([
                    ("generator", json!(g.label())),
                    ("operator", json!(op.to_string())),
                ]),
                Report::default(),
            )
            .note(format!("{g} = {op}"))
        }
        Command::Oracle(OracleCmd::Gamma { sig, dump }) => {
            let s = sig.signature()?;
            let report = merged([check_gamma_relations(s)?, check_kappa_against_matrices(s)?]);
            if let Some(path) = &dump {
                let gammas = gamma_matrices(s)?;
                let named: Vec<(String, &Matrix)> = gammas
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (format!("g{}", i + 1), m))
                    .collect();
                write_matrices(path, &named)?;
            }
            Outcome::new("oracle gamma", sig.params(), report)
        }
        Command::Oracle(OracleCmd::Fock {
            modes,
            cutoff,
            dump,
        }) => {
            let report = check_bf_on_fock(modes, cutoff, FOCK_MARGIN)?;
            let space = FockSpace::new(modes, cutoff)?;
            if let Some(path) = &dump {
                let mats = space.bf_matrices()?;
                let named: Vec<(String, &Matrix)> =
                    mats.iter().map(|(g, m)| (g.label(), m)).collect();
                write_matrices(path, &named)?;
            }
            Outcome::new(
                "oracle fock",
                params([
                    ("modes", json!(modes)),
                    ("cutoff", json!(cutoff)),
                    ("margin", json!(FOCK_MARGIN)),
                    ("dim", json!(space.dim())),
                ]),
                report,
            )
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match run(cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = outcome.print(cli.json) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if outcome.report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
