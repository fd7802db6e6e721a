//! Independent cross-checks of the computations in this crate.
//!
//! Each check returns a [`CheckOutcome`]; failures carry a [`Witness`] with
//! the quiver (in file format), the matrices involved, and both computed
//! sides, so the failure can be replayed from the command line.

mod gamma;
mod naive_smith;
mod random;

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::group::AbGroup;
use crate::ktable::KTable;
use crate::ktheory::{k_groups, KTheoryError, MatrixAction};
use crate::linalg::{det, smith_normal_form, Matrix, Smith};
use crate::matrices::{adjacency, edge_matrix, one_minus_nt, range_pullback, source_pushforward};
use crate::quiver::{is_complete_subquiver, path_counts, reduction_chain, Quiver};

pub use gamma::{predict_gamma, GammaPrediction, GammaRule, GammaVerdict};
pub use naive_smith::{leibniz_det, naive_invariant_factors, NAIVE_CAP};
pub use random::{exhaustive_quivers, random_matrix, random_quiver, seeded_rng};

pub const WITNESS_SCHEMA: u32 = 1;

/// Moduli used for finite-cyclic coefficient comparisons by default.
pub const DEFAULT_MODULI: &[u64] = &[2, 3, 4, 12];

/// A matrix in witness form: decimal-string entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl From<&Matrix<BigInt>> for MatrixJson {
    fn from(m: &Matrix<BigInt>) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect(),
        }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Option<Matrix<BigInt>> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return None;
        }
        let entries: Option<Vec<BigInt>> = self.entries.iter().flatten().map(|s| s.parse().ok()).collect();
        Some(Matrix::from_vec(self.rows, self.cols, entries?))
    }
}

/// Everything needed to reproduce a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub schema: u32,
    pub check: String,
    /// The quiver in file format, when the check is about a quiver.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub quiver: Option<String>,
    /// The coefficient table in file format, for checks that use one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ktable: Option<String>,
    /// Remaining inputs of the check, such as moduli or degree ranges.
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub params: BTreeMap<String, String>,
    pub matrices: BTreeMap<String, MatrixJson>,
    pub left: String,
    pub right: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckOutcome {
    fn pass(name: &str, detail: impl Into<String>) -> Self {
        CheckOutcome { name: name.to_string(), passed: true, detail: detail.into(), witness: None }
    }

    fn fail(name: &str, detail: impl Into<String>, witness: Witness) -> Self {
        CheckOutcome { name: name.to_string(), passed: false, detail: detail.into(), witness: Some(witness) }
    }

    fn with_param(mut self, key: &str, value: impl Into<String>) -> Self {
        if let Some(w) = self.witness.as_mut() {
            w.params.insert(key.to_string(), value.into());
        }
        self
    }

    fn with_ktable(mut self, table: &KTable) -> Self {
        if let Some(w) = self.witness.as_mut() {
            w.ktable = Some(table.to_text());
        }
        self
    }

    /// Attaches the random seed that produced the input, for reproduction.
    pub fn with_seed(mut self, seed: u64) -> Self {
        if let Some(w) = self.witness.as_mut() {
            w.seed = Some(seed);
        }
        self
    }
}

fn witness(
    check: &str,
    q: Option<&Quiver>,
    matrices: &[(&str, &Matrix<BigInt>)],
    left: String,
    right: String,
) -> Witness {
    Witness {
        schema: WITNESS_SCHEMA,
        check: check.to_string(),
        quiver: q.map(Quiver::to_file_text),
        ktable: None,
        params: BTreeMap::new(),
        matrices: matrices.iter().map(|(k, m)| (k.to_string(), MatrixJson::from(*m))).collect(),
        left,
        right,
        seed: None,
    }
}

pub const CHECK_MYN: &str = "myn";
pub const CHECK_REDUCTION: &str = "reduction-invariance";
pub const CHECK_SNF: &str = "certify-snf";
pub const CHECK_TOWER: &str = "dimension-tower";

/// Compares the vertex complex `1 - N'` with the arrow complex `1 - M`:
/// cokernels and kernels must agree over `Z` and over `Z/m` for each modulus,
/// and `N' = s_* r^*`, `M = r^* s_*` must hold as matrix identities.
pub fn check_myn(q: &Quiver, moduli: &[u64]) -> CheckOutcome {
    let list = moduli.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    check_myn_inner(q, moduli).with_param("moduli", list)
}

fn check_myn_inner(q: &Quiver, moduli: &[u64]) -> CheckOutcome {
    let n_prime: Matrix<BigInt> = adjacency(q);
    let m: Matrix<BigInt> = edge_matrix(q);
    let r_star: Matrix<BigInt> = range_pullback(q);
    let s_star: Matrix<BigInt> = source_pushforward(q);

    let s_r = &s_star * &r_star;
    if s_r != n_prime {
        return CheckOutcome::fail(
            CHECK_MYN,
            "N' != s_* r^*",
            witness(CHECK_MYN, Some(q), &[("N'", &n_prime), ("s_* r^*", &s_r)], n_prime.to_string(), s_r.to_string()),
        );
    }
    let r_s = &r_star * &s_star;
    if r_s != m {
        return CheckOutcome::fail(
            CHECK_MYN,
            "M != r^* s_*",
            witness(CHECK_MYN, Some(q), &[("M", &m), ("r^* s_*", &r_s)], m.to_string(), r_s.to_string()),
        );
    }

    let vertex_side = n_prime.one_minus();
    let arrow_side = m.one_minus();
    let a0 = MatrixAction::new(&vertex_side);
    let a1 = MatrixAction::new(&arrow_side);
    let coefficients = std::iter::once(AbGroup::from(crate::group::FgAbGroup::free(1)))
        .chain(moduli.iter().map(|&k| crate::group::FgAbGroup::cyclic(k).into()));
    for g in coefficients {
        let lhs = a0.coker_ker(&g);
        let rhs = a1.coker_ker(&g);
        if lhs != rhs {
            let show = |(c, k): &(AbGroup, AbGroup)| format!("coefficients {g}: coker = {c}, ker = {k}");
            return CheckOutcome::fail(
                CHECK_MYN,
                format!("homology of 1 - N' and 1 - M differ with coefficients {g}"),
                witness(CHECK_MYN, Some(q), &[("1-N'", &vertex_side), ("1-M", &arrow_side)], show(&lhs), show(&rhs)),
            );
        }
    }
    CheckOutcome::pass(CHECK_MYN, format!("agree over Z and Z/m for m in {moduli:?}"))
}

fn pieces_text(report: &crate::ktheory::KReport) -> String {
    report
        .degrees
        .iter()
        .map(|d| format!("n={}: coker = {}, ker = {}", d.degree, d.coker, d.ker))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Every stage of the reduction chain must give the same cofiber pieces, and
/// the base stage must split as the cycle closure plus one coefficient
/// summand per sink unreachable from a cycle.
pub fn check_reduction_invariance(
    q: &Quiver,
    table: &KTable,
    degrees: RangeInclusive<i64>,
) -> Result<CheckOutcome, KTheoryError> {
    let range = format!("{}..{}", degrees.start(), degrees.end());
    Ok(reduction_inner(q, table, degrees)?.with_param("degrees", range).with_ktable(table))
}

fn reduction_inner(q: &Quiver, table: &KTable, degrees: RangeInclusive<i64>) -> Result<CheckOutcome, KTheoryError> {
    let chain = reduction_chain(q);
    let pieces = |r: &crate::ktheory::KReport| -> Vec<(AbGroup, AbGroup)> {
        r.degrees.iter().map(|d| (d.coker.clone(), d.ker.clone())).collect()
    };

    let base_report = k_groups(chain.base(), table, degrees.clone())?;
    let base = pieces(&base_report);
    for (i, stage) in chain.stages.iter().enumerate() {
        let structural = is_complete_subquiver(stage, q).unwrap_or(false) && stage.sink_count() == q.sink_count();
        let report = k_groups(stage, table, degrees.clone())?;
        if !structural || pieces(&report) != base {
            let stage_matrix = one_minus_nt::<BigInt>(stage);
            return Ok(CheckOutcome::fail(
                CHECK_REDUCTION,
                if structural {
                    format!("stage {i} changes the K-data")
                } else {
                    format!("stage {i} is not a complete subquiver with the same sinks")
                },
                witness(
                    CHECK_REDUCTION,
                    Some(q),
                    &[("1-N^t (stage 0)", &base_report.matrix), (&format!("1-N^t (stage {i})"), &stage_matrix)],
                    pieces_text(&base_report),
                    pieces_text(&report),
                ),
            ));
        }
    }

    let tilde_report = k_groups(&chain.tilde, table, degrees.clone())?;
    let mut predicted = Vec::new();
    for d in &tilde_report.degrees {
        let coefficient = table.entry(d.degree)?.group;
        predicted.push((d.coker.direct_sum(&coefficient.power(chain.ell)), d.ker.clone()));
    }
    if predicted != base {
        let show = |v: &[(AbGroup, AbGroup)]| {
            v.iter().map(|(c, k)| format!("coker = {c}, ker = {k}")).collect::<Vec<_>>().join("; ")
        };
        return Ok(CheckOutcome::fail(
            CHECK_REDUCTION,
            format!("base stage differs from cycle closure plus {} sink summands", chain.ell),
            witness(
                CHECK_REDUCTION,
                Some(q),
                &[("1-N^t (base)", &base_report.matrix), ("1-N^t (tilde)", &tilde_report.matrix)],
                show(&base),
                show(&predicted),
            ),
        ));
    }
    Ok(CheckOutcome::pass(
        CHECK_REDUCTION,
        format!("{} stages agree; base = tilde + {} sink summands", chain.stages.len(), chain.ell),
    ))
}

/// Recomputes the Smith form and certifies it against the naive oracle.
pub fn certify_snf(a: &Matrix<BigInt>) -> CheckOutcome {
    certify_smith_form(a, &smith_normal_form(a))
}

/// Certifies a claimed Smith form of `a`: `u a v = d`, unimodular `u` and `v`,
/// a nonnegative divisibility chain equal to the naive oracle's factors, and
/// `prod d_j = |det a|` for square `a`.
pub fn certify_smith_form(a: &Matrix<BigInt>, form: &Smith<BigInt>) -> CheckOutcome {
    let fail = |detail: String, left: String, right: String| {
        CheckOutcome::fail(
            CHECK_SNF,
            detail.clone(),
            witness(CHECK_SNF, None, &[("input", a), ("u", &form.u), ("d", &form.d), ("v", &form.v)], left, right),
        )
    };
    let factors_text = |f: &[BigInt]| format!("{:?}", f.iter().map(ToString::to_string).collect::<Vec<_>>());

    let (m, n) = a.shape();
    if form.u.shape() != (m, m) || form.v.shape() != (n, n) || form.d.shape() != (m, n) {
        return fail("certificate has the wrong shape".into(), format!("{m}x{n}"), format!("{:?}", form.d.shape()));
    }
    let product = &(&form.u * a) * &form.v;
    if product != form.d {
        return fail("u * a * v != d".into(), product.to_string(), form.d.to_string());
    }
    if !form.d.is_diagonal() || form.d.diagonal() != form.factors {
        return fail(
            "d is not the diagonal of the reported factors".into(),
            form.d.to_string(),
            factors_text(&form.factors),
        );
    }
    if form.factors.iter().any(Signed::is_negative) {
        return fail("negative invariant factor".into(), factors_text(&form.factors), "nonnegative".into());
    }
    for w in form.factors.windows(2) {
        let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
        if !divides {
            return fail(
                "divisibility chain broken".into(),
                factors_text(&form.factors),
                format!("{} | {}", w[0], w[1]),
            );
        }
    }
    let small = m <= NAIVE_CAP && n <= NAIVE_CAP;
    let det_of = |x: &Matrix<BigInt>| if small { leibniz_det(x) } else { det(x).ok() };
    for (label, x) in [("u", &form.u), ("v", &form.v)] {
        let d = det_of(x).expect("square certificate");
        if d.abs() != BigInt::one() {
            return fail(format!("{label} is not unimodular"), d.to_string(), "+-1".into());
        }
    }
    if let Some(oracle) = naive_invariant_factors(a) {
        if oracle != form.factors {
            return fail(
                "factors disagree with the naive oracle".into(),
                factors_text(&form.factors),
                factors_text(&oracle),
            );
        }
    }
    if a.is_square() {
        let d = det_of(a).expect("square").abs();
        let prod: BigInt = form.factors.iter().product();
        if prod != d {
            return fail("product of factors != |det|".into(), prod.to_string(), d.to_string());
        }
    }
    let note = if small { "" } else { " (naive oracle skipped above 8x8)" };
    CheckOutcome::pass(CHECK_SNF, format!("{m}x{n} certified, factors {}{note}", factors_text(&form.factors)))
}

/// Counts paths by depth-first traversal: `tally[len][v]` for `len <= max_len`.
pub fn enumerate_paths(q: &Quiver, max_len: usize) -> Vec<Vec<u64>> {
    let n = q.vertex_count();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in q.edges() {
        out[e.source].push(e.target);
    }
    let mut tally = vec![vec![0u64; n]; max_len + 1];
    let mut stack: Vec<(usize, usize)> = (0..n).map(|v| (v, 0)).collect();
    while let Some((range, len)) = stack.pop() {
        tally[len][range] += 1;
        if len < max_len {
            stack.extend(out[range].iter().map(|&t| (t, len + 1)));
        }
    }
    tally
}

/// `dim L_{0,n}` from path counts: squared sizes of the matrix factors.
pub fn tower_dimension(q: &Quiver, counts: &crate::quiver::PathCountTable, n: usize) -> BigUint {
    let sinks: Vec<usize> = q.vertex_order()[..q.sink_count()].to_vec();
    let mut dim = BigUint::zero();
    for m in 0..n {
        for &i in &sinks {
            dim += counts.count(m, i) * counts.count(m, i);
        }
    }
    for i in 0..q.vertex_count() {
        dim += counts.count(n, i) * counts.count(n, i);
    }
    dim
}

/// `dim L_{0,n}` for `n = 0..=n_max`.
pub fn tower_dimensions(q: &Quiver, n_max: usize) -> Vec<BigUint> {
    let counts = path_counts(q, n_max);
    (0..=n_max).map(|n| tower_dimension(q, &counts, n)).collect()
}

/// Checks the path-count recursion against explicit enumeration, the block
/// embedding sizes of the transition maps, and the dimension of each level
/// `L_{0,n}` against a count of monomials `γν*` with `|γ| = |ν|` and a
/// common range that is either a sink or reached at full length `n`.
pub fn check_dimension_tower(q: &Quiver, n_max: usize) -> CheckOutcome {
    tower_inner(q, n_max).with_param("n_max", n_max.to_string())
}

fn tower_inner(q: &Quiver, n_max: usize) -> CheckOutcome {
    let counts = path_counts(q, n_max);
    let tally = enumerate_paths(q, n_max);
    let fail = |detail: String, left: String, right: String| {
        CheckOutcome::fail(CHECK_TOWER, detail, witness(CHECK_TOWER, Some(q), &[("N'", &adjacency(q))], left, right))
    };

    for len in 0..=n_max {
        for v in 0..q.vertex_count() {
            if *counts.count(len, v) != BigUint::from(tally[len][v]) {
                return fail(
                    format!("path count P({len}, {}) differs from enumeration", q.name(v)),
                    counts.count(len, v).to_string(),
                    tally[len][v].to_string(),
                );
            }
        }
    }

    // Each non-sink factor M_{P(n,i)} sits block-diagonally, n_ij times, in M_{P(n+1,j)}.
    for len in 0..n_max {
        for j in 0..q.vertex_count() {
            let mut filled = BigUint::zero();
            for i in (0..q.vertex_count()).filter(|&i| !q.is_sink(i)) {
                filled += counts.count(len, i) * BigUint::from(q.multiplicity(i, j));
            }
            if &filled != counts.count(len + 1, j) {
                return fail(
                    format!("transition blocks into vertex {} at level {} do not fill the factor", q.name(j), len + 1),
                    filled.to_string(),
                    counts.count(len + 1, j).to_string(),
                );
            }
        }
    }

    let mut previous: Option<BigUint> = None;
    for level in 0..=n_max {
        let formula = tower_dimension(q, &counts, level);
        let monomials: u64 = (0..=level)
            .flat_map(|m| (0..q.vertex_count()).map(move |i| (m, i)))
            .filter(|&(m, i)| m == level || q.is_sink(i))
            .map(|(m, i)| tally[m][i] * tally[m][i])
            .sum();
        if formula != BigUint::from(monomials) {
            return fail(
                format!("dim L_(0,{level}) disagrees with the monomial count"),
                formula.to_string(),
                monomials.to_string(),
            );
        }
        if let Some(p) = &previous {
            if &formula < p {
                return fail(format!("dim L_(0,{level}) decreases"), p.to_string(), formula.to_string());
            }
        }
        previous = Some(formula);
    }
    CheckOutcome::pass(CHECK_TOWER, format!("levels 0..={n_max} consistent"))
}
