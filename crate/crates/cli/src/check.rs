//! The `check` verb: runs the verification suite and replays witnesses.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use leavitt_core::verify::{
    certify_smith_form, certify_snf, check_dimension_tower, check_myn, check_reduction_invariance, random_matrix,
    random_quiver, seeded_rng, CheckOutcome, Witness, CHECK_MYN, CHECK_REDUCTION, CHECK_SNF, CHECK_TOWER,
    DEFAULT_MODULI,
};
use leavitt_core::{one_minus_nt, parse_quiver, BigInt, KTable, Quiver, Smith};
use serde_json::json;

use crate::input::DegreeRange;

pub const TOWER_LEVELS: usize = 6;
const RANDOM_QUIVERS: usize = 25;
const RANDOM_MATRICES: usize = 25;

pub struct Subject {
    pub label: String,
    pub quiver: Option<Quiver>,
    pub matrix: Option<leavitt_core::IntMatrix>,
    pub seed: Option<u64>,
}

pub fn suite(subject: &Subject, table: &KTable, degrees: DegreeRange) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    if let Some(q) = &subject.quiver {
        out.push(check_myn(q, DEFAULT_MODULI));
        out.push(check_reduction_invariance(q, table, degrees.range())?);
        out.push(check_dimension_tower(q, TOWER_LEVELS));
        out.push(certify_snf(&one_minus_nt::<BigInt>(q)));
    }
    if let Some(m) = &subject.matrix {
        out.push(certify_snf(m));
    }
    Ok(match subject.seed {
        Some(seed) => out.into_iter().map(|o| o.with_seed(seed)).collect(),
        None => out,
    })
}

/// Quiver files directly inside `dir`, sorted by name.
pub fn corpus(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot read directory {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "quiver"));
    files.sort();
    Ok(files)
}

pub fn random_subjects(seed: u64) -> Vec<Subject> {
    let mut rng = seeded_rng(seed);
    let quivers = (0..RANDOM_QUIVERS).map(|i| Subject {
        label: format!("random-quiver-{i}"),
        quiver: Some(random_quiver(&mut rng, 6, 2, 0.3)),
        matrix: None,
        seed: Some(seed),
    });
    let quivers: Vec<Subject> = quivers.collect();
    let matrices = (0..RANDOM_MATRICES).map(|i| Subject {
        label: format!("random-matrix-{i}"),
        quiver: None,
        matrix: Some(random_matrix(&mut rng, 6, 6, 9)),
        seed: Some(seed),
    });
    quivers.into_iter().chain(matrices).collect()
}

pub fn witness_json(w: &Witness) -> String {
    serde_json::to_string_pretty(w).expect("witness serializes")
}

/// Writes the witness of a failed outcome and returns its path.
pub fn save_witness(label: &str, w: &Witness) -> Result<PathBuf> {
    let dir = std::env::temp_dir().join("leavitt-k-witnesses");
    fs::create_dir_all(&dir)?;
    let safe: String = label.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
    let path = dir.join(format!("{safe}.{}.json", w.check));
    fs::write(&path, witness_json(w) + "\n")?;
    Ok(path)
}

pub fn outcome_json(label: &str, o: &CheckOutcome) -> serde_json::Value {
    json!({ "subject": label, "check": o.name, "passed": o.passed, "detail": o.detail, "witness": o.witness })
}

/// Reruns the check recorded in a witness. A Smith witness is replayed
/// against its recorded certificate, so a bad certificate fails again.
pub fn replay(w: &Witness) -> Result<CheckOutcome> {
    let quiver = || -> Result<Quiver> {
        let text = w.quiver.as_deref().context("witness has no quiver")?;
        Ok(parse_quiver(text)?)
    };
    let param = |key: &str| w.params.get(key).with_context(|| format!("witness has no {key} parameter"));
    let matrix = |key: &str| {
        w.matrices.get(key).and_then(|m| m.to_matrix()).with_context(|| format!("witness has no valid matrix {key:?}"))
    };
    let outcome = match w.check.as_str() {
        CHECK_MYN => {
            let moduli = param("moduli")?
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u64>().with_context(|| format!("bad modulus {s:?}")))
                .collect::<Result<Vec<_>>>()?;
            check_myn(&quiver()?, &moduli)
        }
        CHECK_REDUCTION => {
            let table = KTable::parse(w.ktable.as_deref().context("witness has no ktable")?)?;
            let degrees: DegreeRange = param("degrees")?.parse().map_err(anyhow::Error::msg)?;
            check_reduction_invariance(&quiver()?, &table, degrees.range())?
        }
        CHECK_TOWER => {
            let n_max: usize = param("n_max")?.parse()?;
            check_dimension_tower(&quiver()?, n_max)
        }
        CHECK_SNF => {
            let a = matrix("input")?;
            match (matrix("u"), matrix("d"), matrix("v")) {
                (Ok(u), Ok(d), Ok(v)) => {
                    let factors = d.diagonal();
                    certify_smith_form(&a, &Smith { u, d, v, factors })
                }
                _ => certify_snf(&a),
            }
        }
        other => bail!("unknown check {other:?} in witness"),
    };
    Ok(match w.seed {
        Some(seed) => outcome.with_seed(seed),
        None => outcome,
    })
}
