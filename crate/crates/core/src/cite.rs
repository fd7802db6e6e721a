//! Labels used in citation trails of reports and predictions.

pub const LES_REGULAR: &str = "Thm. rf-coh";
pub const SPLIT_MONO: &str = "Thm. row-finitecase";
pub const PID_COROLLARY: &str = "Cor. PID (after Thm. rf-coh)";
pub const HOMOTOPY_K: &str = "Thm. thm:kh";
pub const TOPOLOGICAL_K: &str = "Thm. thm:ktop";
pub const STABLE_REGULAR: &str = "Cor. cor:stablereg";
pub const NIL_TERMS: &str = "Remark rem:coker";
pub const GAMMA_DET: &str = "Thm. thm:sus";
pub const GAMMA_SINKS: &str = "Remark after Thm. thm:sus";
pub const GAMMA_STABLE: &str = "Thm. thm:stable";
