//! `sft`: invariants, equivalence searches and certificate checking for nonnegative integer
//! matrices, plus a diagram evaluator.
//!
//! Exit codes: 0 success (equivalent, verified), 1 distinguished or failed verification,
//! 2 unknown within budget, 3 usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sft_core::algebra::{RingKind, ZMatrix};
use sft_core::format::{parse_matrix_document, render_matrix_rows};
use sft_core::invariants::{
    bowen_franks, budget_json, compare, invariant_report, periodic_point_count, periodic_point_series,
    render_report_text, zeta_poly, zeta_series, EquivVerdict, ReportOptions,
};
use sft_core::prop::{diagram_evaluator, parse_term};
use sft_core::shift::{flow_search, lift_to_polynomial, sse_search, verify_certificate, MoveCertificate, SearchBudget};
use sft_core::weighted::{count_fixed_points, interpret_matrix, registered_monoids, FiniteMonoid, MonoidHom, WeightedModel};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "sft", version, about = "Shifts of finite type: invariants, equivalence search, certificates")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    /// Coefficient ring of input matrices: zplus, z, zplus_t, z_t or fp:<p>.
    #[arg(long, global = true)]
    ring: Option<String>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, global = true, default_value_t = 4)]
    max_inner_dim: usize,
    #[arg(long, global = true, default_value_t = 3)]
    max_entry: u64,
    #[arg(long, global = true, default_value_t = 6)]
    max_size: usize,
    #[arg(long, global = true, default_value_t = 4)]
    max_steps: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget> {
        if self.max_inner_dim == 0 || self.max_size == 0 {
            bail!("--max-inner-dim and --max-size must be at least 1");
        }
        Ok(SearchBudget {
            max_inner_dim: self.max_inner_dim,
            max_entry: self.max_entry,
            max_size: self.max_size,
            max_steps: self.max_steps,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Relation {
    Sse,
    Flow,
}

impl Relation {
    fn name(self) -> &'static str {
        match self {
            Relation::Sse => "sse",
            Relation::Flow => "flow",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report for one matrix.
    Invariants {
        matrix: PathBuf,
        /// A registered monoid (z2, z3, z4, union2) or a monoid JSON file; repeatable.
        #[arg(long)]
        monoid: Vec<String>,
        /// Images of the homomorphism h, e.g. `0,2,1`; defaults to the file's or the identity.
        #[arg(long)]
        hom: Option<String>,
        #[arg(long)]
        modulus: Option<u64>,
        /// Field element; all of 𝔽_p when omitted.
        #[arg(long)]
        lambda: Option<u64>,
    },
    /// Separate by invariants, then search for a certificate.
    Compare {
        m: PathBuf,
        n: PathBuf,
        #[arg(long, value_enum, default_value = "sse")]
        relation: Relation,
        /// Where to write the certificate when one is found.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Bounded search for a strong shift equivalence.
    SseSearch {
        m: PathBuf,
        n: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Also emit the certificate re-read over Z+[t] on (tM, tN).
        #[arg(long)]
        lift: bool,
    },
    /// Bounded search for a flow equivalence.
    FlowSearch {
        m: PathBuf,
        n: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// det(I − tM) and the zeta series, checked against periodic point counts.
    Zeta {
        matrix: PathBuf,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// The Bowen–Franks group.
    Bf { matrix: PathBuf },
    /// Evaluate a diagram term (default ring zplus_t, where h is t).
    EvalDiagram { diagram: PathBuf },
    /// Solutions of h(Mx) = x over a finite monoid, computed two ways.
    FixedCount {
        matrix: PathBuf,
        #[arg(long, default_value = "z2")]
        monoid: String,
        #[arg(long)]
        hom: Option<String>,
    },
    /// Replay a certificate.
    Verify {
        certificate: PathBuf,
        /// Matrix file the certificate must start from.
        #[arg(long)]
        source: Option<PathBuf>,
        /// Matrix file the certificate must end at.
        #[arg(long)]
        target: Option<PathBuf>,
    },
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("values serialize")),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn ring(cli: &Cli, default: RingKind) -> Result<RingKind> {
    match &cli.ring {
        Some(r) => Ok(r.parse()?),
        None => Ok(default),
    }
}

/// Reads a matrix in the declared ring; every command but eval-diagram needs ℤ₊ entries.
fn read_matrix(cli: &Cli, path: &Path) -> Result<ZMatrix> {
    let ring = ring(cli, RingKind::ZPlus)?;
    let m = parse_matrix_document(&read(path)?, ring).with_context(|| format!("in {}", path.display()))?;
    let z = m
        .constant_part()
        .and_then(|z| z.to_natural().ok())
        .with_context(|| format!("{}: entries must be nonnegative integers", path.display()))?;
    z.require_square().with_context(|| path.display().to_string())?;
    Ok(z)
}

fn write_certificate(path: &Option<PathBuf>, cert: &MoveCertificate) -> Result<()> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(&cert.to_json())? + "\n";
        fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(())
}

fn resolve_monoid(spec: &str, hom: Option<&str>) -> Result<WeightedModel> {
    let (monoid, file_hom) = match registered_monoids().into_iter().find(|m| m.name() == spec) {
        Some(m) => (m, None),
        None => {
            let name = Path::new(spec).file_stem().map_or(spec.to_string(), |s| s.to_string_lossy().into_owned());
            FiniteMonoid::from_json(name, &read(Path::new(spec))?)?
        }
    };
    let h = match hom {
        Some(text) => MonoidHom::new(&monoid, parse_hom(text)?)?,
        None => file_hom.unwrap_or_else(|| MonoidHom::identity(&monoid)),
    };
    Ok(WeightedModel::new(monoid, h)?)
}

fn parse_hom(text: &str) -> Result<Vec<usize>> {
    text.trim_matches(|c| c == '[' || c == ']')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().with_context(|| format!("bad homomorphism image '{s}'")))
        .collect()
}

fn certificate_text(cert: &MoveCertificate) -> String {
    let mut out = format!("certificate: {} step(s), kind {}, ring {}\n", cert.steps.len(), cert.kind.name(), cert.ring.name());
    let v = cert.to_json();
    for step in v["steps"].as_array().into_iter().flatten() {
        out.push_str(&format!("  {}\n", step));
    }
    out
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Invariants { matrix, monoid, hom, modulus, lambda } => {
            let m = read_matrix(cli, matrix)?;
            let models = monoid.iter().map(|s| resolve_monoid(s, hom.as_deref())).collect::<Result<Vec<_>>>()?;
            let fields = match (modulus, lambda) {
                (Some(p), Some(l)) => vec![(*p, *l)],
                (Some(p), None) => (0..*p).map(|l| (*p, l)).collect(),
                (None, Some(_)) => bail!("--lambda needs --modulus"),
                (None, None) => Vec::new(),
            };
            let report = invariant_report(&m, &ReportOptions { models, fields })?;
            Ok(Output { text: render_report_text(&report), json: report, code: EXIT_OK })
        }
        Command::Compare { m, n, relation, certificate } => {
            let (a, b) = (read_matrix(cli, m)?, read_matrix(cli, n)?);
            let budget = cli.budget.budget()?;
            let verdict = compare(&a, &b, relation.name(), &budget)?;
            let mut text = format!("relation: {}\noutcome: {}\n", relation.name(), verdict.outcome());
            let code = match &verdict {
                EquivVerdict::Equivalent { certificate: cert, .. } => {
                    let v = verify_certificate(cert);
                    if !v.ok {
                        bail!("internal error: produced certificate fails replay: {}", v.message);
                    }
                    write_certificate(certificate, cert)?;
                    text.push_str(&certificate_text(cert));
                    EXIT_OK
                }
                EquivVerdict::Distinguished { invariant, on_m, on_n, .. } => {
                    text.push_str(&format!("separated by {invariant}: {on_m} vs {on_n}\n"));
                    EXIT_NEGATIVE
                }
                EquivVerdict::Unknown { .. } => {
                    text.push_str(&format!(
                        "no certificate within budget {}; no invariant separates the matrices\n",
                        budget_json(&budget)
                    ));
                    EXIT_UNKNOWN
                }
            };
            for row in verdict.table() {
                let show = |v: &std::result::Result<String, String>| match v {
                    Ok(s) => s.clone(),
                    Err(e) => format!("unavailable ({e})"),
                };
                text.push_str(&format!("  {}: {} | {}\n", row.name, show(&row.on_m), show(&row.on_n)));
            }
            Ok(Output { text, json: verdict.to_json(relation.name()), code })
        }
        Command::SseSearch { m, n, certificate, lift } => {
            let (a, b) = (read_matrix(cli, m)?, read_matrix(cli, n)?);
            let budget = cli.budget.budget()?;
            search_output(sse_search(&a, &b, &budget)?, certificate, *lift, &budget)
        }
        Command::FlowSearch { m, n, certificate } => {
            let (a, b) = (read_matrix(cli, m)?, read_matrix(cli, n)?);
            let budget = cli.budget.budget()?;
            search_output(flow_search(&a, &b, &budget)?, certificate, false, &budget)
        }
        Command::Zeta { matrix, order } => {
            let m = read_matrix(cli, matrix)?;
            let z = zeta_poly(&m)?;
            let series = zeta_series(&m, *order)?;
            if series != periodic_point_series(&m, *order)? {
                bail!("internal error: zeta series disagrees with periodic point counts");
            }
            let coeffs: Vec<String> = series.coeffs().iter().map(ToString::to_string).collect();
            let periodic = (1..=*order)
                .map(|k| periodic_point_count(&m, k as u32).map(|c| c.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            let text = format!(
                "zeta denominator: {z}\nseries through t^{order}: {}\nperiodic points: {}\n",
                coeffs.join(" "),
                periodic.join(" ")
            );
            let json = json!({ "schema": 1, "zeta": z.to_string(), "order": order, "series": coeffs, "periodic_points": periodic });
            Ok(Output { text, json, code: EXIT_OK })
        }
        Command::Bf { matrix } => {
            let g = bowen_franks(&read_matrix(cli, matrix)?)?;
            let torsion: Vec<String> = g.torsion.iter().map(ToString::to_string).collect();
            Ok(Output {
                text: format!("{g}\n"),
                json: json!({ "schema": 1, "bowen_franks": g.to_string(), "free_rank": g.free_rank, "torsion": torsion }),
                code: EXIT_OK,
            })
        }
        Command::EvalDiagram { diagram } => {
            let term = parse_term(&read(diagram)?).with_context(|| format!("in {}", diagram.display()))?;
            let out = diagram_evaluator(ring(cli, RingKind::ZPlusT)?)?.evaluate(&term)?;
            Ok(Output { text: out.render_text(), json: out.to_json(), code: EXIT_OK })
        }
        Command::FixedCount { matrix, monoid, hom } => {
            let m = read_matrix(cli, matrix)?;
            let model = resolve_monoid(monoid, hom.as_deref())?;
            let diagram = interpret_matrix(&m, &model)?;
            let direct = count_fixed_points(&m, &model)?;
            if diagram != direct {
                bail!("internal error: diagram value {diagram} but {direct} solutions");
            }
            let text = format!(
                "monoid {} (h = {})\ndiagram value: {diagram}\nsolutions: {direct}\n",
                model.monoid().name(),
                model.hom().label()
            );
            let json = json!({
                "schema": 1,
                "monoid": model.monoid().name(),
                "hom": model.hom().label(),
                "diagram_value": diagram.to_string(),
                "solutions": direct.to_string(),
            });
            Ok(Output { text, json, code: EXIT_OK })
        }
        Command::Verify { certificate, source, target } => {
            let v: Value = serde_json::from_str(&read(certificate)?).context("certificate is not JSON")?;
            let cert = MoveCertificate::from_json(&v)?;
            let result = verify_certificate(&cert);
            let mut problems = Vec::new();
            if !result.ok {
                problems.push(result.message.clone());
            }
            for (label, path, end) in [("source", source, &cert.source), ("target", target, &cert.target)] {
                if let Some(p) = path {
                    let expected = parse_matrix_document(&read(p)?, cert.ring)?;
                    if expected.to_signed() != end.to_signed() {
                        problems.push(format!("certificate {label} differs from {}", p.display()));
                    }
                }
            }
            let ok = problems.is_empty();
            let text = if ok { format!("ok: {}\n", result.message) } else { format!("failed: {}\n", problems.join("; ")) };
            let json = json!({ "schema": 1, "ok": ok, "failed_step": result.failed_step, "problems": problems });
            Ok(Output { text, json, code: if ok { EXIT_OK } else { EXIT_NEGATIVE } })
        }
    }
}

fn search_output(found: Option<MoveCertificate>, path: &Option<PathBuf>, lift: bool, budget: &SearchBudget) -> Result<Output> {
    let Some(cert) = found else {
        let text = format!(
            "unknown: no certificate within budget {}\nhint: `compare` checks whether an invariant separates the matrices\n",
            budget_json(budget)
        );
        return Ok(Output { text, json: json!({ "schema": 1, "outcome": "unknown", "budget": budget_json(budget) }), code: EXIT_UNKNOWN });
    };
    let v = verify_certificate(&cert);
    if !v.ok {
        bail!("internal error: produced certificate fails replay: {}", v.message);
    }
    write_certificate(path, &cert)?;
    let mut text = certificate_text(&cert);
    let mut json = json!({ "schema": 1, "outcome": "equivalent", "certificate": cert.to_json() });
    if lift {
        let lifted = lift_to_polynomial(&cert)?;
        let lv = verify_certificate(&lifted);
        if !lv.ok {
            bail!("internal error: lifted certificate fails replay: {}", lv.message);
        }
        text.push_str(&format!("lifted to Z+[t]: source {:?}, verified\n", render_matrix_rows(&lifted.source)));
        json["lifted"] = lifted.to_json();
    }
    Ok(Output { text, json, code: EXIT_OK })
}
