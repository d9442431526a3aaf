//! Command implementations behind the `mgbar-nef` binary.
//!
//! Every subcommand produces a [`CommandResult`]: a JSON payload, a human
//! rendering in the requested format, and an exit status (0 success, 1 a
//! check failed, 2 usage, parse or genus error).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use mgbar_nef::cone::{assess_face, extreme_rays_with_limit, fnef_cone, DEFAULT_DIMENSION_LIMIT};
use mgbar_nef::fcurves::{evaluate_uniform, render_formula};
use mgbar_nef::torelli::{pullback_rank, SemiampleStatus};
use mgbar_nef::{
    bpf_scan, enumerate_classes, enumerate_raw, intersect, is_fnef, pullback, semiample_status, AbelianDivisor,
    BpfGrid, Compactification, CompactificationModel, DivisorClass, Error, FCurve, Family, GenusContext, Rational,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Debug, Parser)]
#[command(
    name = "mgbar-nef",
    version,
    about = "Exact F-curve and nef cone computations on M_g-bar"
)]
pub struct Cli {
    #[arg(long, global = true)]
    pub genus: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// List F-curves with their intersection vectors against λ, δ_0, ...
    Fcurves {
        /// Merge tuples with equal intersection vectors.
        #[arg(long)]
        classes: bool,
    },
    /// The family-by-family pairing table with the λ and 12λ-δ_0 columns.
    Table,
    /// F-nef test, face classification and semi-ampleness catalog lookup.
    Check {
        #[arg(long)]
        divisor: String,
    },
    /// Certificate that λ and 12λ-δ_0 span a 2-dimensional extremal face.
    Certify,
    /// Extreme rays of the F-nef cone by double description.
    Rays {
        #[arg(long, default_value_t = DEFAULT_DIMENSION_LIMIT)]
        dim_limit: usize,
    },
    /// Pull a divisor on a compactification of A_g back to M_g-bar.
    Pullback {
        #[arg(long)]
        model: String,
        #[arg(long)]
        divisor: String,
    },
    /// Pair mD - K - Δ with every C3(i) over a grid of (m, α, β).
    Bpf {
        #[arg(long, default_value_t = 5)]
        m_max: u32,
        #[arg(long, default_value_t = 4)]
        alpha_max: u32,
        #[arg(long, default_value_t = 4)]
        beta_max: u32,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Fcurves { .. } => "fcurves",
            Command::Table => "table",
            Command::Check { .. } => "check",
            Command::Certify => "certify",
            Command::Rays { .. } => "rays",
            Command::Pullback { .. } => "pullback",
            Command::Bpf { .. } => "bpf",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub genus: Option<u32>,
    pub payload: Value,
    pub human: String,
    pub exit: i32,
}

impl CommandResult {
    fn error(command: &str, genus: Option<u32>, err: &Error) -> Self {
        let exit = match err {
            Error::CertificateFailure { .. } => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        };
        let mut payload = json!({ "error": err.to_string() });
        if let Error::Parse { pos, .. } = err {
            payload["position"] = json!(pos);
        }
        CommandResult {
            command: command.to_string(),
            genus,
            payload,
            human: format!("error: {err}\n"),
            exit,
        }
    }

    /// The text written to stdout or `--output`.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.payload).expect("payload is plain JSON");
                s.push('\n');
                s
            }
            Format::Text | Format::Latex => self.human.clone(),
        }
    }
}

struct Output {
    payload: Value,
    human: String,
    exit: i32,
}

pub fn run(cli: &Cli) -> CommandResult {
    let name = cli.command.name();
    let outcome = match cli.genus {
        None => Err(Error::Parse {
            pos: 0,
            msg: "--genus is required".into(),
        }),
        Some(_) if cli.format == Format::Latex && !matches!(cli.command, Command::Table) => Err(Error::Parse {
            pos: 0,
            msg: format!("latex output is only available for table, not {name}"),
        }),
        Some(g) => dispatch(&cli.command, g, cli.format),
    };
    match outcome {
        Ok(out) => CommandResult {
            command: name.to_string(),
            genus: cli.genus,
            payload: out.payload,
            human: out.human,
            exit: out.exit,
        },
        Err(e) => CommandResult::error(name, cli.genus, &e),
    }
}

fn dispatch(cmd: &Command, g: u32, format: Format) -> mgbar_nef::Result<Output> {
    GenusContext::with_basis(g)?;
    match cmd {
        Command::Fcurves { classes } => cmd_fcurves(g, *classes),
        Command::Table => cmd_table(g, format == Format::Latex),
        Command::Check { divisor } => cmd_check(g, divisor),
        Command::Certify => cmd_certify(g),
        Command::Rays { dim_limit } => cmd_rays(g, *dim_limit),
        Command::Pullback { model, divisor } => cmd_pullback(g, model, divisor),
        Command::Bpf {
            m_max,
            alpha_max,
            beta_max,
        } => cmd_bpf(g, &BpfGrid::integer_box(*m_max, *alpha_max, *beta_max)),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize to JSON")
}

fn vector_text(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(Rational::to_string).collect();
    format!("({})", parts.join(", "))
}

fn cmd_fcurves(g: u32, classes: bool) -> mgbar_nef::Result<Output> {
    let mut records = Vec::new();
    let mut human = String::new();
    if classes {
        for class in enumerate_classes(g)? {
            let mut rec = to_value(&class.representative);
            let aliases: Vec<String> = class.aliases.iter().map(FCurve::tag).collect();
            rec["aliases"] = json!(aliases);
            let _ = write!(
                human,
                "{:<16} {}",
                class.representative.tag(),
                vector_text(&class.vector)
            );
            if aliases.len() > 1 {
                let _ = write!(human, "  = {}", aliases[1..].join(" = "));
            }
            human.push('\n');
            records.push(rec);
        }
    } else {
        for c in enumerate_raw(g)? {
            let _ = writeln!(human, "{:<16} {}", c.tag(), vector_text(&c.intersection_vector()));
            records.push(to_value(&c));
        }
    }
    Ok(Output {
        payload: json!({ "genus": g, "classes": classes, "count": records.len(), "curves": records }),
        human,
        exit: EXIT_OK,
    })
}

fn family_label(f: Family, latex: bool) -> &'static str {
    match (f, latex) {
        (Family::C1, false) => "C1",
        (Family::C2, false) => "C2",
        (Family::C3, false) => "C3(i)",
        (Family::C4, false) => "C4(i)",
        (Family::C5, false) => "C5(i,j)",
        (Family::C6, false) => "C6(i,j,k,\u{2113})",
        (Family::C1, true) => "C_1",
        (Family::C2, true) => "C_2",
        (Family::C3, true) => "C^i_{3}",
        (Family::C4, true) => "C^i_{4}",
        (Family::C5, true) => "C^{ij}_{5}",
        (Family::C6, true) => "C^{ijk}_{6}=F_{i,j,k,\\ell}",
    }
}

fn latex_rational(q: &Rational) -> String {
    if q.is_integer() {
        return q.to_string();
    }
    let sign = if q.is_negative() { "-" } else { "" };
    let abs = q.abs();
    format!("{sign}\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
}

fn cmd_table(g: u32, latex: bool) -> mgbar_nef::Result<Output> {
    let genus = GenusContext::with_basis(g)?;
    let (zero, one, twelve) = (Rational::zero(), Rational::one(), Rational::integer(12));
    let rows: Vec<(Family, String, Rational, Rational)> = Family::ALL
        .iter()
        .map(|&f| {
            (
                f,
                render_formula(f, latex),
                evaluate_uniform(f, &one, &zero, &zero),
                evaluate_uniform(f, &twelve, &one, &zero),
            )
        })
        .collect();

    // The columns are genus-independent; confirm them against every curve.
    let lambda = DivisorClass::lambda(genus)?;
    let face = DivisorClass::twelve_lambda_minus_delta0(genus)?;
    let mut mismatches = Vec::new();
    for c in enumerate_raw(g)? {
        let (_, _, l, f) = rows.iter().find(|r| r.0 == c.family()).expect("every family has a row");
        if intersect(&lambda, &c)? != *l || intersect(&face, &c)? != *f {
            mismatches.push(c.tag());
        }
    }

    let mut human = String::new();
    if latex {
        human.push_str("\\begin{tabular}{llll}\n");
        human.push_str(
            "$C$ & $D\\cdot C$ & $\\lambda \\cdot C$ & $(12\\lambda - \\delta_0) \\cdot C$ \\\\\n\\hline\n\\hline\n",
        );
        for (f, formula, l, fc) in &rows {
            let _ = writeln!(
                human,
                "${}$ & ${}$ & ${}$ & ${}$ \\\\\n\\hline",
                family_label(*f, true),
                formula,
                latex_rational(l),
                latex_rational(fc)
            );
        }
        human.push_str("\\end{tabular}\n");
    } else {
        let width = rows.iter().map(|r| r.1.chars().count()).max().unwrap_or(0);
        let _ = writeln!(human, "{:<14} {:<width$}  {:<6} (12λ-δ0)·C", "C", "D·C", "λ·C");
        for (f, formula, l, fc) in &rows {
            let _ = writeln!(
                human,
                "{:<14} {:<width$}  {:<6} {}",
                family_label(*f, false),
                formula,
                l.to_string(),
                fc
            );
        }
    }

    let payload_rows: Vec<Value> = rows
        .iter()
        .map(|(f, formula, l, fc)| {
            json!({
                "family": f.name(),
                "formula": formula,
                "lambda": l,
                "twelve_lambda_minus_delta0": fc,
            })
        })
        .collect();
    let pass = mismatches.is_empty();
    Ok(Output {
        payload: json!({
            "genus": g,
            "rows": payload_rows,
            "checks": [{ "name": "columns_match_enumeration", "pass": pass, "detail": mismatches.join(", ") }],
        }),
        human,
        exit: if pass { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

fn semiample_text(s: &SemiampleStatus) -> String {
    format!("face class: {}\nsemi-ampleness: {}\n", s.class, s.reason)
}

fn cmd_check(g: u32, text: &str) -> mgbar_nef::Result<Output> {
    let genus = GenusContext::with_basis(g)?;
    let d = DivisorClass::parse(genus, text)?;
    let verdict = is_fnef(&d)?;
    let status = semiample_status(&d);
    let mut human = format!("divisor: {d}\nF-nef: {}\n", if verdict.fnef { "yes" } else { "no" });
    if let Some(w) = &verdict.witness {
        let _ = writeln!(
            human,
            "witness: {} (D·C = {}, {} violated classes)",
            w.curve.tag(),
            w.value,
            verdict.violations
        );
    }
    human.push_str(&semiample_text(&status));
    Ok(Output {
        payload: json!({
            "genus": g,
            "divisor": d,
            "fnef": verdict.fnef,
            "witness": verdict.witness,
            "violations": verdict.violations,
            "class": status.class,
            "semiample": status,
            "checks": [{ "name": "fnef", "pass": verdict.fnef }],
        }),
        human,
        exit: if verdict.fnef { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

fn cmd_certify(g: u32) -> mgbar_nef::Result<Output> {
    let genus = GenusContext::with_basis(g)?;
    let cert = assess_face(
        g,
        &DivisorClass::lambda(genus)?,
        &DivisorClass::twelve_lambda_minus_delta0(genus)?,
    )?;
    let mut human = format!(
        "face spanned by {} generators, dimension {}, active rank {}\n",
        cert.generators.len(),
        cert.face_dim,
        cert.active_rank
    );
    let _ = writeln!(human, "tight curves: {}", cert.active_curves.join(", "));
    let _ = writeln!(human, "lemma determinant: {}", cert.det);
    for c in &cert.checks {
        let _ = write!(human, "[{}] {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
        if !c.detail.is_empty() {
            let _ = write!(human, " ({})", c.detail);
        }
        human.push('\n');
    }
    Ok(Output {
        exit: if cert.passed() { EXIT_OK } else { EXIT_CHECK_FAILED },
        payload: to_value(&cert),
        human,
    })
}

fn cmd_rays(g: u32, limit: usize) -> mgbar_nef::Result<Output> {
    let cone = fnef_cone(g)?;
    let genus = GenusContext::with_basis(g)?;
    let d = cone.dim();
    let rays = extreme_rays_with_limit(&cone, limit)?;
    let lambda = DivisorClass::lambda(genus)?.coordinates();
    let face = DivisorClass::twelve_lambda_minus_delta0(genus)?.coordinates();

    let mut human = format!("{} extreme rays in dimension {d}\n", rays.len());
    let mut records = Vec::new();
    let mut all_extremal = true;
    for r in &rays {
        let active = cone.active_set(r);
        let rank = cone.rank_of(&active);
        all_extremal &= rank + 1 == d;
        let curves: Vec<String> = active
            .iter()
            .flat_map(|&i| cone.inequalities()[i].provenance.iter().cloned())
            .collect();
        let divisor = DivisorClass::from_coordinates(genus, r)?;
        let _ = writeln!(human, "{:<36} active rank {rank}", divisor.to_expression());
        records.push(json!({
            "vector": r,
            "divisor": divisor.to_expression(),
            "active_curves": curves,
            "active_rank": rank,
        }));
    }
    let has_lambda = rays.contains(&lambda);
    let has_face = rays.contains(&face);
    let checks = [
        ("rays_have_rank_d_minus_1", all_extremal),
        ("contains_lambda", has_lambda),
        ("contains_twelve_lambda_minus_delta0", has_face),
    ];
    let pass = checks.iter().all(|(_, p)| *p);
    Ok(Output {
        payload: json!({
            "genus": g,
            "dim": d,
            "inequalities": cone.inequalities().len(),
            "raw_inequalities": cone.raw_inequality_count(),
            "rays": records,
            "checks": checks.iter().map(|(n, p)| json!({ "name": n, "pass": p })).collect::<Vec<_>>(),
        }),
        human,
        exit: if pass { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

fn cmd_pullback(g: u32, model: &str, text: &str) -> mgbar_nef::Result<Output> {
    let kind: Compactification = model.parse()?;
    let model = CompactificationModel::new(kind);
    let d = AbelianDivisor::parse(kind, text)?;
    let nef = model.is_nef(&d)?;
    let pulled = pullback(&model, &d, g)?;
    let verdict = is_fnef(&pulled)?;
    let status = semiample_status(&pulled);
    let rank = pullback_rank(&model, g)?;
    // Nef divisors must pull back to F-nef ones.
    let pass = !nef || verdict.fnef;
    let mut human = format!(
        "{} on {}: {}\npullback: {pulled}\nF-nef: {}\n",
        d,
        kind.name(),
        if nef { "nef" } else { "not nef" },
        if verdict.fnef { "yes" } else { "no" }
    );
    human.push_str(&semiample_text(&status));
    Ok(Output {
        payload: json!({
            "genus": g,
            "model": kind,
            "divisor": d,
            "nef": nef,
            "pullback": pulled,
            "pullback_rank": rank,
            "fnef": verdict.fnef,
            "witness": verdict.witness,
            "class": status.class,
            "semiample": status,
            "checks": [{ "name": "nef_pulls_back_to_fnef", "pass": pass }],
        }),
        human,
        exit: if pass { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

fn cmd_bpf(g: u32, grid: &BpfGrid) -> mgbar_nef::Result<Output> {
    let report = bpf_scan(g, grid)?;
    let mut human = format!(
        "{} grid points, {} pairings with {}\n",
        report.points,
        report.evaluations,
        report.curves.join(", ")
    );
    if report.deviations.is_empty() {
        human.push_str("every pairing equals -1\n");
    }
    for dev in &report.deviations {
        let _ = writeln!(
            human,
            "deviation at m={} alpha={} beta={}: {} gives {}",
            dev.m, dev.alpha, dev.beta, dev.curve, dev.value
        );
    }
    for row in &report.symbolic {
        let _ = writeln!(
            human,
            "b_{} = {}*(m*alpha) + {}*(m*beta) + {}",
            row.index, row.lambda_part, row.face_part, row.constant_part
        );
    }
    let mut payload = to_value(&report);
    payload["passed"] = json!(report.passed());
    Ok(Output {
        payload,
        human,
        exit: if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}
