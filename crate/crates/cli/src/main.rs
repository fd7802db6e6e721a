//! `leavitt-k`: K-theory of Leavitt path algebras from quiver files.

mod check;
mod input;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use leavitt_core::verify::{predict_gamma, tower_dimensions, MatrixJson, Witness};
use leavitt_core::{
    classify, coker_ker, det, k_groups, one_minus_nt, parse_quiver, reduction_chain, samples, smith_normal_form,
    AbGroup, BigInt, FgAbGroup, IntMatrix, Quiver,
};
use serde_json::{json, Value};

use crate::check::Subject;
use crate::input::DegreeRange;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "leavitt-k", version, about = "K-theory of Leavitt path algebras of finite quivers")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Vertex and arrow counts, sinks, sources, cycle closure and det(1-N^t).
    Info {
        quiver: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// K-groups with coefficients from a table.
    Kgroups {
        quiver: PathBuf,
        /// Table file, or a built-in table name (f5, f7, integers, complex, complex_top, stable_cstar).
        #[arg(long)]
        ktable: String,
        #[arg(long, default_value = "0..1", allow_hyphen_values = true)]
        degrees: DegreeRange,
        #[arg(long)]
        json: bool,
        /// Append the supporting results to each group.
        #[arg(long)]
        cite: bool,
    },
    /// The reduction chain to the cycle closure, with each stage's matrix.
    Reduce {
        quiver: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the verification suite on quiver files.
    Check {
        quivers: Vec<PathBuf>,
        /// Check every .quiver file in this directory.
        #[arg(long)]
        all: Option<PathBuf>,
        /// Coefficients for the reduction check (default: integers).
        #[arg(long)]
        ktable: Option<String>,
        #[arg(long, default_value = "0..3", allow_hyphen_values = true)]
        degrees: DegreeRange,
        /// Also check a seeded batch of random quivers and matrices.
        #[arg(long)]
        seed: Option<u64>,
        /// Rerun the check recorded in a witness file.
        #[arg(long, conflicts_with_all = ["quivers", "all", "seed"])]
        replay: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Smith normal form of a matrix file, or of 1-N^t for a quiver file.
    Snf {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Predicted behavior of the comparison map to topological K-theory.
    Gamma {
        quiver: PathBuf,
        #[arg(long)]
        ktable: String,
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        degrees: DegreeRange,
        #[arg(long)]
        json: bool,
        /// Print the hypotheses that were checked.
        #[arg(long)]
        cite: bool,
    },
    /// Dimensions of the finite-dimensional subalgebras L_(0,n).
    Dims {
        quiver: PathBuf,
        #[arg(long, default_value = "0..6")]
        degrees: DegreeRange,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout, ignoring a closed pipe (`leavitt-k ... | head`).
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(json: bool, value: Value, text: String) {
    if json {
        let mut value = value;
        value["schema"] = json!(SCHEMA);
        out(&(serde_json::to_string_pretty(&value).expect("json") + "\n"));
    } else {
        out(&text);
    }
}

fn braces(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn run(verb: Verb) -> Result<ExitCode> {
    match verb {
        Verb::Info { quiver, json } => info(&input::load_quiver(&quiver)?, json)?,
        Verb::Kgroups { quiver, ktable, degrees, json, cite } => {
            let q = input::load_quiver(&quiver)?;
            let table = input::load_ktable(&ktable)?;
            let report = k_groups(&q, &table, degrees.range())?;
            emit(json, serde_json::to_value(&report)?, report.render_text(cite));
        }
        Verb::Reduce { quiver, json } => reduce(&input::load_quiver(&quiver)?, json)?,
        Verb::Check { quivers, all, ktable, degrees, seed, replay, json } => {
            return match replay {
                Some(path) => replay_witness(&path),
                None => run_checks(quivers, all, ktable, degrees, seed, json),
            };
        }
        Verb::Snf { input, json } => snf(&input, json)?,
        Verb::Gamma { quiver, ktable, degrees, json, cite } => {
            let q = input::load_quiver(&quiver)?;
            let p = predict_gamma(&q, &input::load_ktable(&ktable)?);
            let mut text = format!("{p}\n");
            for n in degrees.range() {
                let _ = writeln!(text, "gamma_{n}: {}", verdict_text(p.verdict(n)));
            }
            if cite {
                for step in &p.hypothesis_trail {
                    let _ = writeln!(text, "  because: {step}");
                }
            }
            let verdicts: serde_json::Map<String, Value> =
                degrees.range().map(|n| (n.to_string(), json!(p.verdict(n)))).collect();
            emit(json, json!({ "prediction": p, "summary": p.to_string(), "verdicts": verdicts }), text);
        }
        Verb::Dims { quiver, degrees, json } => {
            let q = input::load_quiver(&quiver)?;
            let start = usize::try_from(degrees.start).context("levels start at 0")?;
            let end = usize::try_from(degrees.end).context("levels start at 0")?;
            let dims = tower_dimensions(&q, end);
            let mut text = String::new();
            let mut levels = serde_json::Map::new();
            for (n, d) in dims.iter().enumerate().skip(start) {
                let _ = writeln!(text, "dim L_(0,{n}) = {d}");
                levels.insert(n.to_string(), json!(d.to_string()));
            }
            emit(json, json!({ "dimensions": levels }), text);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verdict_text(v: leavitt_core::verify::GammaVerdict) -> &'static str {
    use leavitt_core::verify::GammaVerdict::*;
    match v {
        Iso => "iso",
        ZeroMap => "zero map",
        NotIso => "not iso",
        Unknown => "unknown",
    }
}

fn info(q: &Quiver, json: bool) -> Result<()> {
    let c = classify(q);
    let tilde = c.on_or_after_cycle.clone();
    let det_value = (q.sink_count() == 0).then(|| det(&one_minus_nt::<BigInt>(q)).expect("square"));
    let mut text = format!(
        "vertices {}, edges {}, sinks {}, sources {}, tilde-E {}\n",
        q.vertex_count(),
        q.edge_count(),
        braces(&c.sinks),
        braces(&c.sources),
        if tilde.is_empty() { "empty".to_string() } else { braces(&tilde) },
    );
    if let Some(d) = &det_value {
        let _ = writeln!(text, "det(1-N^t) = {d}");
    }
    let value = json!({
        "vertices": q.vertex_count(),
        "edges": q.edge_count(),
        "sinks": c.sinks,
        "sources": c.sources,
        "tilde_e": tilde,
        "det": det_value.map(|d| d.to_string()),
    });
    emit(json, value, text);
    Ok(())
}

fn reduce(q: &Quiver, json: bool) -> Result<()> {
    let chain = reduction_chain(q);
    let names = |s: &Quiver| s.ordered_names().into_iter().map(str::to_string).collect::<Vec<_>>();
    let mut text =
        format!("tilde-E {}, ell = {}, {} additions\n", braces(&names(&chain.tilde)), chain.ell, chain.len());
    let mut stages = Vec::new();
    for (i, stage) in chain.stages.iter().enumerate() {
        let m = one_minus_nt::<BigInt>(stage);
        let added = i.checked_sub(1).map(|j| chain.added_vertex[j].clone());
        let _ = match &added {
            Some(v) => writeln!(text, "stage {i}: + {v}, vertices {}", braces(&names(stage))),
            None => writeln!(text, "stage 0: vertices {}", braces(&names(stage))),
        };
        let _ = writeln!(text, "  1-N^t = {m}");
        stages.push(json!({ "added": added, "vertices": names(stage), "one_minus_nt": MatrixJson::from(&m) }));
    }
    let value = json!({ "tilde_e": names(&chain.tilde), "ell": chain.ell, "stages": stages });
    emit(json, value, text);
    Ok(())
}

fn snf(path: &Path, json: bool) -> Result<()> {
    let text = input::read(path)?;
    let is_quiver = text.lines().any(|l| l.trim_start().starts_with("vertices:"));
    let a: IntMatrix = if is_quiver {
        one_minus_nt(&parse_quiver(&text).with_context(|| format!("{}", path.display()))?)
    } else {
        input::parse_matrix(&text).with_context(|| format!("{}", path.display()))?
    };
    let form = smith_normal_form(&a);
    let (coker, ker) = coker_ker(&a, &AbGroup::from(FgAbGroup::free(1)));
    let factors: Vec<String> = form.factors.iter().map(ToString::to_string).collect();
    let mut out = format!("shape {}x{}\nfactors {}\n", a.rows(), a.cols(), factors.join(" "));
    let _ = writeln!(out, "coker {coker}\nker {ker}\nU = {}\nD = {}\nV = {}", form.u, form.d, form.v);
    let value = json!({
        "input": MatrixJson::from(&a),
        "factors": factors,
        "coker": coker,
        "ker": ker,
        "u": MatrixJson::from(&form.u),
        "d": MatrixJson::from(&form.d),
        "v": MatrixJson::from(&form.v),
    });
    emit(json, value, out);
    Ok(())
}

fn run_checks(
    mut files: Vec<PathBuf>,
    all: Option<PathBuf>,
    ktable: Option<String>,
    degrees: DegreeRange,
    seed: Option<u64>,
    json: bool,
) -> Result<ExitCode> {
    if let Some(dir) = all {
        files.extend(check::corpus(&dir)?);
    }
    if files.is_empty() && seed.is_none() {
        anyhow::bail!("nothing to check: give quiver files, --all DIR, or --seed N");
    }
    let table = match &ktable {
        Some(name_or_path) => input::load_ktable(name_or_path)?,
        None => samples::load("integers").expect("built-in"),
    };
    let mut subjects = Vec::new();
    for f in &files {
        subjects.push(Subject {
            label: f.display().to_string(),
            quiver: Some(input::load_quiver(f)?),
            matrix: None,
            seed: None,
        });
    }
    if let Some(s) = seed {
        subjects.extend(check::random_subjects(s));
    }

    let mut text = String::new();
    if let Some(s) = seed {
        let _ = writeln!(text, "seed {s}");
    }
    let mut results = Vec::new();
    let (mut passed, mut failed) = (0usize, 0usize);
    for subject in &subjects {
        for o in check::suite(subject, &table, degrees)? {
            if o.passed {
                passed += 1;
                let _ = writeln!(text, "PASS {} {}: {}", o.name, subject.label, o.detail);
            } else {
                failed += 1;
                let w = o.witness.as_ref().expect("failures carry a witness");
                let path = check::save_witness(&subject.label, w)?;
                let _ = writeln!(text, "FAIL {} {}: {} (witness: {})", o.name, subject.label, o.detail, path.display());
            }
            results.push(check::outcome_json(&subject.label, &o));
        }
    }
    let _ = writeln!(text, "{passed} passed, {failed} failed");
    emit(json, json!({ "seed": seed, "results": results, "passed": passed, "failed": failed }), text);
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn replay_witness(path: &Path) -> Result<ExitCode> {
    let w: Witness = serde_json::from_str(&input::read(path)?).with_context(|| format!("{}", path.display()))?;
    let o = check::replay(&w)?;
    match &o.witness {
        Some(again) => {
            out(&(check::witness_json(again) + "\n"));
            Ok(ExitCode::from(1))
        }
        None => {
            out(&format!("PASS {}: {}\n", o.name, o.detail));
            Ok(ExitCode::SUCCESS)
        }
    }
}
