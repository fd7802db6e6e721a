//! Loading quivers, coefficient tables and matrices from disk.

use std::fs;
use std::ops::RangeInclusive;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use leavitt_core::{parse_quiver, samples, BigInt, IntMatrix, KTable, Quiver};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn load_quiver(path: &Path) -> Result<Quiver> {
    let text = read(path)?;
    parse_quiver(&text).with_context(|| format!("{}", path.display()))
}

/// A table file, or the name of a built-in table such as `f5`.
pub fn load_ktable(name_or_path: &str) -> Result<KTable> {
    let path = Path::new(name_or_path);
    if path.exists() {
        let text = read(path)?;
        return KTable::parse(&text).with_context(|| format!("{}", path.display()));
    }
    match samples::load(name_or_path) {
        Some(t) => Ok(t),
        None => {
            let names: Vec<&str> = samples::ALL.iter().map(|(n, _)| *n).collect();
            bail!("no table file {name_or_path} and no built-in table of that name (built-ins: {})", names.join(", "))
        }
    }
}

/// Inclusive degree range written `a..b`, e.g. `-2..3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeRange {
    pub start: i64,
    pub end: i64,
}

impl DegreeRange {
    pub fn range(self) -> RangeInclusive<i64> {
        self.start..=self.end
    }
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
        let (start, end) = (parse(a)?, parse(b)?);
        if start > end {
            return Err(format!("empty range {s}"));
        }
        Ok(DegreeRange { start, end })
    }
}

/// Integer matrix file: one row per line, entries separated by whitespace,
/// `#` comments. A `shape R C` line is required when a dimension is zero and
/// checked otherwise.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut shape: Option<(usize, usize)> = None;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("shape") {
            let dims: Vec<usize> = rest
                .split_whitespace()
                .map(|t| t.parse().with_context(|| format!("line {}: bad dimension {t:?}", i + 1)))
                .collect::<Result<_>>()?;
            let [r, c] = dims[..] else { bail!("line {}: expected `shape ROWS COLS`", i + 1) };
            if shape.is_some() || !rows.is_empty() {
                bail!("line {}: shape must come first and only once", i + 1);
            }
            shape = Some((r, c));
            continue;
        }
        let row: Vec<BigInt> = line
            .split_whitespace()
            .map(|t| t.parse().with_context(|| format!("line {}: bad integer {t:?}", i + 1)))
            .collect::<Result<_>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                bail!("line {}: row has {} entries, expected {}", i + 1, row.len(), first.len());
            }
        }
        rows.push(row);
    }
    let found = (rows.len(), rows.first().map_or(0, Vec::len));
    let (r, c) = match shape {
        Some((r, c)) if r == 0 || c == 0 => {
            if !rows.is_empty() {
                bail!("shape {r} {c} has no entries, but rows were given");
            }
            (r, c)
        }
        Some(s) if s != found => bail!("shape {} {} does not match {} rows of {} entries", s.0, s.1, found.0, found.1),
        Some(s) => s,
        None if rows.is_empty() => bail!("empty matrix needs a `shape R C` line"),
        None => found,
    };
    Ok(IntMatrix::from_vec(r, c, rows.into_iter().flatten().collect()))
}
