//! K-theory of Leavitt path algebras and graph C*-algebras of finite quivers.
//!
//! Everything reduces to exact integer linear algebra on the rectangular
//! matrix `1 - N^t` of a quiver: its Smith form gives the cokernel and kernel
//! pieces of the long exact sequence in every degree, for any table of
//! coefficient K-groups.
//!
//! ```
//! use leavitt_core::{k0_k1_pid, parse_quiver, AbGroup, FgAbGroup};
//!
//! let q = parse_quiver("vertices: v\nedges:\nv v 4\n").unwrap();
//! let report = k0_k1_pid(&q, &FgAbGroup::cyclic(4).into());
//! assert_eq!(report.degree(0).unwrap().total.as_ref().unwrap().to_string(), "Z/3");
//! assert_eq!(report.degree(1).unwrap().total, Some(AbGroup::zero()));
//! ```
//!
//! The linear algebra is generic over [`IntegerRing`]; the aliases below fix
//! the scalar to arbitrary precision, which is what every quiver computation uses.

#![allow(clippy::needless_range_loop)]

pub mod cite;
pub mod group;
pub mod ktable;
pub mod ktheory;
pub mod linalg;
pub mod matrices;
pub mod quiver;
pub mod samples;
pub mod scalar;
pub mod verify;

pub use num_bigint::BigInt;

pub use group::{AbGroup, FgAbGroup, FormalOp, SymbolicGroup};
pub use ktable::{DefaultRule, KTable, KTableError, Mode};
pub use ktheory::{coker_ker, coker_ker_fg, k0_k1_pid, k_groups, DegreeReport, KReport, KTheoryError, SplitStatus};
pub use linalg::{det, rank, smith_normal_form, DetError, Matrix, Smith};
pub use matrices::{adjacency, edge_matrix, one_minus_nt, range_pullback, source_pushforward};
pub use quiver::{
    classify, is_complete_subquiver, parse_quiver, path_counts, reduction_chain, tilde_quiver, Edge, PathCountTable,
    Quiver, QuiverError, ReductionChain, VertexClassification,
};
pub use scalar::IntegerRing;

/// Arbitrary-precision integer matrix.
pub type IntMatrix = Matrix<BigInt>;
/// Smith form of an [`IntMatrix`] with its certificate.
pub type SmithForm = Smith<BigInt>;
/// Fixed-width variant for callers that know their entries stay small.
pub type SmallIntMatrix = Matrix<i64>;
