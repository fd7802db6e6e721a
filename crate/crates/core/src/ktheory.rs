//! K-groups of Leavitt path algebras from the cofiber of `1 - N^t`.
//!
//! In each degree `n` the Leavitt algebra's group sits in
//!
//! ```text
//! 0 -> coker(1 - N^t on K_n(R)) -> K_n(L) -> ker(1 - N^t on K_{n-1}(R)) -> 0
//! ```
//!
//! Both pieces are computed from the Smith form of `1 - N^t`; the extension
//! is resolved only when the kernel piece is free or the coefficient ring is
//! a declared PID in degrees 0 and 1.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cite;
use crate::group::{AbGroup, FgAbGroup, FormalOp};
use crate::ktable::{KTable, KTableError, Mode};
use crate::linalg::{smith_normal_form, Matrix};
use crate::matrices::one_minus_nt;
use crate::quiver::Quiver;
use crate::scalar::IntegerRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTheoryError {
    #[error(transparent)]
    Table(#[from] KTableError),
}

/// Shape and Smith factors of an integer matrix, enough to evaluate the
/// induced map on powers of any abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixAction {
    rows: usize,
    cols: usize,
    factors: Vec<BigInt>,
}

impl MatrixAction {
    pub fn new<T: IntegerRing>(a: &Matrix<T>) -> Self {
        let smith = smith_normal_form(&a.to_bigint());
        MatrixAction { rows: a.rows(), cols: a.cols(), factors: smith.factors }
    }

    fn nonzero(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().filter(|d| !d.is_zero())
    }

    fn rank(&self) -> usize {
        self.nonzero().count()
    }

    /// Cokernel and kernel of `g^cols -> g^rows`.
    pub fn coker_ker(&self, g: &AbGroup) -> (AbGroup, AbGroup) {
        let s = self.factors.len();
        let r = self.rank();
        let mut coker_orders: Vec<BigInt> = Vec::new();
        let mut ker_orders: Vec<BigInt> = Vec::new();
        for m in g.fg_part().cyclic_orders() {
            if m.is_zero() {
                coker_orders.extend(self.nonzero().cloned());
                coker_orders.extend(std::iter::repeat_n(BigInt::zero(), self.rows - r));
                ker_orders.extend(std::iter::repeat_n(BigInt::zero(), self.cols - r));
            } else {
                // Multiplication by d on Z/m has kernel and cokernel Z/gcd(d, m).
                for d in &self.factors {
                    coker_orders.push(d.gcd(&m));
                    ker_orders.push(d.gcd(&m));
                }
                coker_orders.extend(std::iter::repeat_n(m.clone(), self.rows - s));
                ker_orders.extend(std::iter::repeat_n(m.clone(), self.cols - s));
            }
        }

        let mut coker_sym = Vec::new();
        let mut ker_sym = Vec::new();
        for (sym, mult) in g.symbolic_part() {
            coker_sym.push((sym.clone(), mult * (self.rows - r)));
            ker_sym.push((sym.clone(), mult * (self.cols - r)));
            for d in self.nonzero().filter(|d| !d.is_one()) {
                coker_sym.push((sym.with_op(FormalOp::Quotient(d.clone())), *mult));
                ker_sym.push((sym.with_op(FormalOp::Torsion(d.clone())), *mult));
            }
        }

        (
            AbGroup::from_parts(FgAbGroup::from_cyclic_orders(coker_orders), coker_sym),
            AbGroup::from_parts(FgAbGroup::from_cyclic_orders(ker_orders), ker_sym),
        )
    }
}

/// Cokernel and kernel of the map `g^c -> g^b` induced by a `b x c` integer matrix.
pub fn coker_ker<T: IntegerRing>(a: &Matrix<T>, g: &AbGroup) -> (AbGroup, AbGroup) {
    MatrixAction::new(a).coker_ker(g)
}

/// [`coker_ker`] restricted to finitely generated coefficients.
pub fn coker_ker_fg<T: IntegerRing>(a: &Matrix<T>, g: &FgAbGroup) -> (FgAbGroup, FgAbGroup) {
    let (c, k) = coker_ker(a, &AbGroup::from(g.clone()));
    (c.fg_part().clone(), k.fg_part().clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitStatus {
    /// The kernel piece is free, so the extension splits.
    KerFree,
    /// Split by the direct-sum statement for principal ideal domains.
    Pid,
    /// The sequence does not determine the extension.
    Unresolved,
}

impl SplitStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SplitStatus::KerFree => "split (ker free)",
            SplitStatus::Pid => "split (PID)",
            SplitStatus::Unresolved => "unresolved-extension",
        }
    }
}

impl Serialize for SplitStatus {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl Serialize for AbGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: i64,
    /// Cokernel of `1 - N^t` on degree-`n` coefficients.
    pub coker: AbGroup,
    /// Kernel of `1 - N^t` on degree-`(n-1)` coefficients.
    pub ker: AbGroup,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total: Option<AbGroup>,
    pub split_status: SplitStatus,
    pub citations: Vec<&'static str>,
    /// Either coefficient group came from a table default rule.
    pub table_default: bool,
}

impl DegreeReport {
    /// Group data only, without citations; used to compare reports across
    /// modes and quivers.
    pub fn pieces(&self) -> (&AbGroup, &AbGroup, Option<&AbGroup>) {
        (&self.coker, &self.ker, self.total.as_ref())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KReport {
    pub mode: Mode,
    pub flags: Vec<String>,
    /// The `1 - N^t` matrix all pieces are computed from.
    pub matrix: Matrix<BigInt>,
    pub degrees: Vec<DegreeReport>,
    /// Present in algebraic K mode over coefficients not declared regular
    /// supercoherent: the computed groups are then only a direct summand.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nk_obstruction_note: Option<String>,
}

impl Serialize for Mode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl KReport {
    pub fn degree(&self, n: i64) -> Option<&DegreeReport> {
        self.degrees.iter().find(|d| d.degree == n)
    }

    /// Human-readable report, one line per degree, e.g. `K0 = Z/3`.
    pub fn render_text(&self, cite: bool) -> String {
        let prefix = self.mode.group_prefix();
        let mut out = String::new();
        for d in &self.degrees {
            let _ = match &d.total {
                Some(total) => write!(out, "{prefix}{} = {total}", d.degree),
                None => {
                    write!(out, "{prefix}{}: coker = {}, ker = {} (extension unresolved)", d.degree, d.coker, d.ker)
                }
            };
            if d.table_default {
                out.push_str(" (table default)");
            }
            if cite {
                let _ = write!(out, " [{}]", d.citations.join("; "));
            }
            out.push('\n');
        }
        if let Some(note) = &self.nk_obstruction_note {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}

/// Degree-wise cofiber pieces of `1 - N^t` with coefficients from `table`.
pub fn k_groups(q: &Quiver, table: &KTable, degrees: RangeInclusive<i64>) -> Result<KReport, KTheoryError> {
    table.validate()?;
    let matrix: Matrix<BigInt> = one_minus_nt(q);
    let action = MatrixAction::new(&matrix);

    let stable = table.is_stable_cstar();
    let regular = table.is_regular_supercoherent();
    let base_citation = match table.mode {
        Mode::AlgebraicK if stable => cite::STABLE_REGULAR,
        Mode::AlgebraicK if regular => cite::LES_REGULAR,
        Mode::AlgebraicK => cite::SPLIT_MONO,
        Mode::KH => cite::HOMOTOPY_K,
        Mode::KTop => cite::TOPOLOGICAL_K,
    };
    let nk_obstruction_note = (table.mode == Mode::AlgebraicK && !regular && !stable).then(|| {
        format!(
            "coefficients not declared regular-supercoherent: each group above is a direct summand of the \
             algebraic K-group; the complement is a pair of twisted nil-K terms, not computed [{}]",
            cite::NIL_TERMS
        )
    });

    let mut reports = Vec::new();
    for n in degrees {
        let here = table.entry(n)?;
        let below = table.entry(n - 1)?;
        let (coker, _) = action.coker_ker(&here.group);
        let (_, ker) = action.coker_ker(&below.group);

        let mut citations = vec![base_citation];
        let split_status = if ker.is_free() {
            SplitStatus::KerFree
        } else if table.mode == Mode::AlgebraicK && table.is_pid() && (0..=1).contains(&n) {
            SplitStatus::Pid
        } else {
            SplitStatus::Unresolved
        };
        if table.mode == Mode::AlgebraicK && table.is_pid() && (0..=1).contains(&n) {
            citations.push(cite::PID_COROLLARY);
        }
        let total = (split_status != SplitStatus::Unresolved).then(|| coker.direct_sum(&ker));
        reports.push(DegreeReport {
            degree: n,
            coker,
            ker,
            total,
            split_status,
            citations,
            table_default: here.from_default || below.from_default,
        });
    }

    Ok(KReport { mode: table.mode, flags: table.flags.clone(), matrix, degrees: reports, nk_obstruction_note })
}

/// `K_0` and `K_1` over a principal ideal domain with the given units group:
/// `K_0 = coker(1 - N^t)` and `K_1 = coker(1 - N^t on units) + ker(1 - N^t)`.
pub fn k0_k1_pid(q: &Quiver, units: &AbGroup) -> KReport {
    let table = KTable::new(Mode::AlgebraicK)
        .with_flag("pid")
        .with_entry(-1, AbGroup::zero())
        .with_entry(0, FgAbGroup::free(1))
        .with_entry(1, units.clone());
    k_groups(q, &table, 0..=1).expect("PID table covers degrees -1..=1")
}
