//! Abelian groups in canonical form.
//!
//! Finitely generated groups are stored as `Z^rank + Z/d1 + Z/d2 + ...` with
//! invariant factors `d1 | d2 | ...`, each at least 2. Groups that are not
//! finitely generated (the units of an infinite field, say) enter as named
//! symbols that only admit formal quotients `G/dG`, formal `d`-torsion
//! subgroups and direct powers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

/// A finitely generated abelian group in invariant-factor form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FgAbGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { rank, torsion: Vec::new() }
    }

    /// `Z/n`, with `Z/0 = Z` and `Z/1 = 0`.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders([n.into()])
    }

    /// The direct sum of `Z/n` over the given orders (order 0 meaning `Z`),
    /// brought into invariant-factor form.
    pub fn from_cyclic_orders(orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut rank = 0;
        let mut factors = Vec::new();
        for n in orders {
            let n = n.abs();
            if n.is_zero() {
                rank += 1;
            } else if !n.is_one() {
                factors.push(n);
            }
        }
        // Pairwise (gcd, lcm) exchange: after pass i, factors[i] divides
        // every later factor.
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                let g = factors[i].gcd(&factors[j]);
                let l = &factors[i] / &g * &factors[j];
                factors[i] = g;
                factors[j] = l;
            }
        }
        factors.retain(|d| !d.is_one());
        FgAbGroup { rank, torsion: factors }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Cyclic summands: `rank` zeros followed by the torsion factors.
    pub fn cyclic_orders(&self) -> impl Iterator<Item = BigInt> + '_ {
        std::iter::repeat_n(BigInt::zero(), self.rank).chain(self.torsion.iter().cloned())
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        Self::from_cyclic_orders(self.cyclic_orders().chain(other.cyclic_orders()))
    }

    pub fn power(&self, k: usize) -> FgAbGroup {
        Self::from_cyclic_orders((0..k).flat_map(|_| self.cyclic_orders()))
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        AbGroup::from(self.clone()).fmt(f)
    }
}

/// A formal operation applied to a named group `G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormalOp {
    /// `G/dG`, the cokernel of multiplication by `d`.
    Quotient(BigInt),
    /// `G[d]`, the kernel of multiplication by `d`.
    Torsion(BigInt),
}

/// A named abelian group that is not assumed finitely generated, with the
/// formal operations applied to it, innermost first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicGroup {
    pub name: String,
    pub formal_ops: Vec<FormalOp>,
}

impl SymbolicGroup {
    pub fn named(name: impl Into<String>) -> Self {
        SymbolicGroup { name: name.into(), formal_ops: Vec::new() }
    }

    pub fn with_op(&self, op: FormalOp) -> Self {
        let mut s = self.clone();
        s.formal_ops.push(op);
        s
    }
}

impl fmt::Display for SymbolicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for op in &self.formal_ops {
            match op {
                FormalOp::Quotient(d) => write!(f, "/({})^{}", self.name, d)?,
                FormalOp::Torsion(d) => write!(f, "[{}]", d)?,
            }
        }
        Ok(())
    }
}

/// A direct sum of a finitely generated group and formal symbolic summands.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbGroup {
    fg: FgAbGroup,
    symbolic: Vec<(SymbolicGroup, usize)>,
}

impl AbGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn symbol(name: impl Into<String>) -> Self {
        Self::from_parts(FgAbGroup::zero(), [(SymbolicGroup::named(name), 1)])
    }

    pub fn from_parts(fg: FgAbGroup, symbolic: impl IntoIterator<Item = (SymbolicGroup, usize)>) -> Self {
        let mut terms: Vec<(SymbolicGroup, usize)> = symbolic.into_iter().filter(|(_, m)| *m > 0).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(SymbolicGroup, usize)> = Vec::with_capacity(terms.len());
        for (g, m) in terms {
            match merged.last_mut() {
                Some((last, count)) if *last == g => *count += m,
                _ => merged.push((g, m)),
            }
        }
        AbGroup { fg, symbolic: merged }
    }

    pub fn fg_part(&self) -> &FgAbGroup {
        &self.fg
    }

    pub fn symbolic_part(&self) -> &[(SymbolicGroup, usize)] {
        &self.symbolic
    }

    /// The finitely generated value, when there are no symbolic summands.
    pub fn as_fg(&self) -> Option<&FgAbGroup> {
        self.symbolic.is_empty().then_some(&self.fg)
    }

    pub fn is_trivial(&self) -> bool {
        self.fg.is_trivial() && self.symbolic.is_empty()
    }

    /// Free abelian of finite rank (including 0). Symbolic summands are never
    /// assumed free.
    pub fn is_free(&self) -> bool {
        self.symbolic.is_empty() && self.fg.is_free()
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        AbGroup::from_parts(self.fg.direct_sum(&other.fg), self.symbolic.iter().chain(&other.symbolic).cloned())
    }

    pub fn power(&self, k: usize) -> AbGroup {
        AbGroup::from_parts(self.fg.power(k), self.symbolic.iter().map(|(g, m)| (g.clone(), m * k)))
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            text: self.to_string(),
            rank: self.fg.rank,
            torsion: self.fg.torsion.iter().map(ToString::to_string).collect(),
            symbolic: self
                .symbolic
                .iter()
                .map(|(g, m)| SymbolicJson { term: g.to_string(), name: g.name.clone(), multiplicity: *m })
                .collect(),
        }
    }
}

impl From<FgAbGroup> for AbGroup {
    fn from(fg: FgAbGroup) -> Self {
        AbGroup { fg, symbolic: Vec::new() }
    }
}

/// `Z^2 + Z/3 + Z/9 + k*^2 + k*/(k*)^3`; the trivial group is `0`.
impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        match self.fg.rank {
            0 => {}
            1 => terms.push("Z".into()),
            r => terms.push(format!("Z^{r}")),
        }
        terms.extend(self.fg.torsion.iter().map(|d| format!("Z/{d}")));
        for (g, m) in &self.symbolic {
            terms.push(match (*m, g.formal_ops.is_empty()) {
                (1, _) => g.to_string(),
                (m, true) => format!("{g}^{m}"),
                (m, false) => format!("({g})^{m}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupJson {
    pub text: String,
    pub rank: usize,
    pub torsion: Vec<String>,
    pub symbolic: Vec<SymbolicJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicJson {
    pub term: String,
    pub name: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse group term `{term}`: {reason}")]
pub struct GroupParseError {
    pub term: String,
    pub reason: String,
}

fn is_symbol_name(s: &str) -> bool {
    !s.is_empty()
        && s != "Z"
        && s != "0"
        && s.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '*' | '\'' | '.'))
}

fn parse_uint(s: &str) -> Option<BigInt> {
    (!s.is_empty() && s.chars().all(|c| c.is_ascii_digit())).then(|| s.parse().ok()).flatten()
}

/// Parses the canonical rendering (and the `sym:NAME` declaration form).
impl std::str::FromStr for AbGroup {
    type Err = GroupParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut orders = Vec::new();
        let mut symbolic = Vec::new();
        for raw in s.split('+') {
            let term = raw.trim();
            let err = |reason: &str| GroupParseError { term: term.to_string(), reason: reason.to_string() };
            if term == "0" {
                continue;
            }
            if term == "Z" {
                orders.push(BigInt::zero());
            } else if let Some(r) = term.strip_prefix("Z^") {
                let r = parse_uint(r).and_then(|r| usize::try_from(r).ok()).ok_or_else(|| err("bad rank"))?;
                orders.extend(std::iter::repeat_n(BigInt::zero(), r));
            } else if let Some(d) = term.strip_prefix("Z/") {
                let d = parse_uint(d).filter(|d| !d.is_zero()).ok_or_else(|| err("bad cyclic order"))?;
                orders.push(d);
            } else {
                let (g, m) = parse_symbolic_term(term.strip_prefix("sym:").unwrap_or(term)).ok_or_else(|| {
                    err("expected Z, Z^r, Z/d, 0, or a symbolic group such as k*, k*^2, k*/(k*)^3, k*[2]")
                })?;
                symbolic.push((g, m));
            }
        }
        Ok(AbGroup::from_parts(FgAbGroup::from_cyclic_orders(orders), symbolic))
    }
}

fn parse_symbolic_term(term: &str) -> Option<(SymbolicGroup, usize)> {
    if let Some(inner) = term.strip_prefix('(') {
        let close = inner.rfind(')')?;
        let m = parse_uint(inner[close + 1..].strip_prefix('^')?)?;
        let (g, one) = parse_symbolic_term(&inner[..close])?;
        if one != 1 {
            return None;
        }
        return Some((g, usize::try_from(m).ok()?));
    }
    let end = term.find(['/', '[', '^']).unwrap_or(term.len());
    let name = &term[..end];
    if !is_symbol_name(name) {
        return None;
    }
    let mut g = SymbolicGroup::named(name);
    let mut rest = &term[end..];
    let quotient_prefix = format!("/({name})^");
    loop {
        if rest.is_empty() {
            return Some((g, 1));
        }
        if let Some(r) = rest.strip_prefix(quotient_prefix.as_str()) {
            let digits = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            g = g.with_op(FormalOp::Quotient(parse_uint(&r[..digits])?));
            rest = &r[digits..];
        } else if let Some(r) = rest.strip_prefix('[') {
            let close = r.find(']')?;
            g = g.with_op(FormalOp::Torsion(parse_uint(&r[..close])?));
            rest = &r[close + 1..];
        } else {
            let r = rest.strip_prefix('^')?;
            if !g.formal_ops.is_empty() {
                return None;
            }
            let m = parse_uint(r)?;
            return Some((g, usize::try_from(m).ok()?));
        }
    }
}
