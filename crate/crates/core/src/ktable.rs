//! Coefficient tables: the K-groups of the coefficient ring, degree by degree.
//!
//! File format, one directive per line (`#` comments, blank lines ignored):
//!
//! ```text
//! mode: K            # K | KH | Ktop
//! flags: field, pid  # optional
//! 0: Z
//! 1: Z/4
//! 2: 0
//! 3: sym:k*
//! default-: 0         # rule below the lowest entry: 0 | repeat-2
//! default+: repeat-2  # rule above the highest entry
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::group::{AbGroup, GroupParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Quillen (algebraic) K-theory.
    AlgebraicK,
    /// Weibel's homotopy K-theory.
    KH,
    /// Topological K-theory of C*-algebras.
    KTop,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::AlgebraicK => "K",
            Mode::KH => "KH",
            Mode::KTop => "Ktop",
        }
    }

    /// Prefix used when printing groups of the Leavitt algebra, e.g. `KH1`.
    pub fn group_prefix(self) -> &'static str {
        match self {
            Mode::AlgebraicK => "K",
            Mode::KH => "KH",
            Mode::KTop => "Ktop",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DefaultRule {
    Zero,
    /// `K_n = K_{n±2}`, continuing the nearest declared entry of the same parity.
    Repeat2,
}

impl DefaultRule {
    fn as_str(self) -> &'static str {
        match self {
            DefaultRule::Zero => "0",
            DefaultRule::Repeat2 => "repeat-2",
        }
    }
}

pub const KNOWN_FLAGS: &[&str] = &["pid", "regular-supercoherent", "stable-cstar", "field"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTableError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Group { line: usize, source: GroupParseError },
    #[error("unknown flag `{0}` (known: pid, regular-supercoherent, stable-cstar, field, field=<name>)")]
    UnknownFlag(String),
    #[error("Ktop tables must be 2-periodic: {0}")]
    NotPeriodic(String),
    #[error("degree {0} has no entry and no default rule covers it")]
    Undetermined(i64),
}

/// The value of a table at one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lookup {
    pub group: AbGroup,
    /// True when the degree was filled in by a default rule.
    pub from_default: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTable {
    pub mode: Mode,
    /// Flags exactly as declared.
    pub flags: Vec<String>,
    pub entries: BTreeMap<i64, AbGroup>,
    pub default_below: Option<DefaultRule>,
    pub default_above: Option<DefaultRule>,
}

impl KTable {
    pub fn new(mode: Mode) -> Self {
        KTable { mode, flags: Vec::new(), entries: BTreeMap::new(), default_below: None, default_above: None }
    }

    pub fn with_flag(mut self, flag: &str) -> Self {
        self.flags.push(flag.to_string());
        self
    }

    pub fn with_entry(mut self, degree: i64, group: impl Into<AbGroup>) -> Self {
        self.entries.insert(degree, group.into());
        self
    }

    pub fn with_defaults(mut self, below: Option<DefaultRule>, above: Option<DefaultRule>) -> Self {
        self.default_below = below;
        self.default_above = above;
        self
    }

    pub fn parse(text: &str) -> Result<Self, KTableError> {
        let mut mode = None;
        let mut flags = Vec::new();
        let mut entries = BTreeMap::new();
        let mut below = None;
        let mut above = None;

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: String| KTableError::Syntax { line, message };
            let (key, value) =
                content.split_once(':').ok_or_else(|| syntax(format!("expected `key: value`, found `{content}`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "mode" => {
                    mode = Some(match value {
                        "K" => Mode::AlgebraicK,
                        "KH" => Mode::KH,
                        "Ktop" => Mode::KTop,
                        other => return Err(syntax(format!("unknown mode `{other}`"))),
                    })
                }
                "flags" => flags.extend(
                    value.split(|c: char| c == ',' || c.is_whitespace()).filter(|f| !f.is_empty()).map(String::from),
                ),
                "default-" | "default+" => {
                    let rule = match value {
                        "0" => DefaultRule::Zero,
                        "repeat-2" => DefaultRule::Repeat2,
                        other => return Err(syntax(format!("unknown default rule `{other}`"))),
                    };
                    if key == "default-" {
                        below = Some(rule);
                    } else {
                        above = Some(rule);
                    }
                }
                degree => {
                    let n: i64 = degree.parse().map_err(|_| syntax(format!("unknown directive `{degree}`")))?;
                    let g: AbGroup = value.parse().map_err(|source| KTableError::Group { line, source })?;
                    if entries.insert(n, g).is_some() {
                        return Err(syntax(format!("degree {n} declared twice")));
                    }
                }
            }
        }

        let mode = mode.ok_or(KTableError::Syntax { line: 1, message: "missing `mode:` directive".into() })?;
        let table = KTable { mode, flags, entries, default_below: below, default_above: above };
        table.validate()?;
        Ok(table)
    }

    /// Checks flag names and, in Ktop mode, 2-periodicity.
    pub fn validate(&self) -> Result<(), KTableError> {
        for flag in &self.flags {
            let known =
                KNOWN_FLAGS.contains(&flag.as_str()) || flag.strip_prefix("field=").is_some_and(|v| !v.is_empty());
            if !known {
                return Err(KTableError::UnknownFlag(flag.clone()));
            }
        }
        if self.mode == Mode::KTop {
            for rule in [self.default_below, self.default_above].into_iter().flatten() {
                if rule != DefaultRule::Repeat2 {
                    return Err(KTableError::NotPeriodic(format!("default rule `{}` is not repeat-2", rule.as_str())));
                }
            }
            for (&n, g) in &self.entries {
                if let Some(h) = self.entries.get(&(n + 2)) {
                    if g != h {
                        return Err(KTableError::NotPeriodic(format!("degree {n} is {g} but degree {} is {h}", n + 2)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }

    /// The value of a `field=<name>` flag.
    pub fn field_name(&self) -> Option<&str> {
        self.flags.iter().find_map(|f| f.strip_prefix("field="))
    }

    pub fn is_field(&self) -> bool {
        self.has_flag("field") || self.field_name().is_some()
    }

    /// Declared PID; fields count.
    pub fn is_pid(&self) -> bool {
        self.has_flag("pid") || self.is_field()
    }

    /// Declared regular supercoherent; PIDs (hence fields) count.
    pub fn is_regular_supercoherent(&self) -> bool {
        self.has_flag("regular-supercoherent") || self.is_pid()
    }

    pub fn is_stable_cstar(&self) -> bool {
        self.has_flag("stable-cstar")
    }

    pub fn is_complex(&self) -> bool {
        self.field_name() == Some("complex")
    }

    fn effective_rules(&self) -> (Option<DefaultRule>, Option<DefaultRule>) {
        match self.mode {
            Mode::KTop => (
                Some(self.default_below.unwrap_or(DefaultRule::Repeat2)),
                Some(self.default_above.unwrap_or(DefaultRule::Repeat2)),
            ),
            _ => (self.default_below, self.default_above),
        }
    }

    /// The group in degree `n`, declared or derived from a default rule.
    pub fn entry(&self, n: i64) -> Result<Lookup, KTableError> {
        if let Some(g) = self.entries.get(&n) {
            return Ok(Lookup { group: g.clone(), from_default: false });
        }
        let (below, above) = self.effective_rules();
        let (lo, hi) = match (self.entries.keys().next(), self.entries.keys().next_back()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => {
                // No entries at all: only a zero rule can answer.
                let rule = if n < 0 { below.or(above) } else { above.or(below) };
                return match rule {
                    Some(DefaultRule::Zero) => Ok(Lookup { group: AbGroup::zero(), from_default: true }),
                    _ => Err(KTableError::Undetermined(n)),
                };
            }
        };
        let (rule, step) = if n < lo {
            (below, 2)
        } else if n > hi {
            (above, -2)
        } else {
            return Err(KTableError::Undetermined(n));
        };
        match rule {
            Some(DefaultRule::Zero) => Ok(Lookup { group: AbGroup::zero(), from_default: true }),
            Some(DefaultRule::Repeat2) => {
                let mut m = n + step;
                while (lo..=hi).contains(&m) || (step > 0 && m < lo) || (step < 0 && m > hi) {
                    if let Some(g) = self.entries.get(&m) {
                        return Ok(Lookup { group: g.clone(), from_default: true });
                    }
                    m += step;
                }
                Err(KTableError::Undetermined(n))
            }
            None => Err(KTableError::Undetermined(n)),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("mode: {}\n", self.mode);
        if !self.flags.is_empty() {
            let _ = writeln!(out, "flags: {}", self.flags.join(", "));
        }
        for (n, g) in &self.entries {
            let rendered = g.to_string();
            // Plain symbols need the declaration prefix to parse back unambiguously.
            let value = if g.fg_part().is_trivial() && g.symbolic_part().len() == 1 && g.symbolic_part()[0].1 == 1 {
                format!("sym:{rendered}")
            } else {
                rendered
            };
            let _ = writeln!(out, "{n}: {value}");
        }
        if let Some(r) = self.default_below {
            let _ = writeln!(out, "default-: {}", r.as_str());
        }
        if let Some(r) = self.default_above {
            let _ = writeln!(out, "default+: {}", r.as_str());
        }
        out
    }
}
