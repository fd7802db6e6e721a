//! When is the comparison map from algebraic K-theory of the Leavitt algebra
//! to topological K-theory of the graph C*-algebra an isomorphism?

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::cite;
use crate::ktable::KTable;
use crate::linalg::det;
use crate::matrices::one_minus_nt;
use crate::quiver::Quiver;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaVerdict {
    Iso,
    ZeroMap,
    NotIso,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaRule {
    /// Isomorphism in every degree.
    IsoAll,
    /// Isomorphism for `n >= 0`, zero map for `n <= -1`.
    IsoNonnegativeZeroNegative,
    /// Not an isomorphism for `n != 0`; degree 0 undecided.
    NotIsoAwayFromZero,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaPrediction {
    /// `det(1 - N^t)`, or `None` when the quiver has sinks.
    #[serde(serialize_with = "ser_det")]
    pub det_value: Option<BigInt>,
    pub rule: GammaRule,
    /// Hypotheses that were checked, ending with the result that applies.
    pub hypothesis_trail: Vec<String>,
}

fn ser_det<S: serde::Serializer>(d: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&det_text(d))
}

fn det_text(d: &Option<BigInt>) -> String {
    d.as_ref().map_or_else(|| "n/a (sinks present / not square)".to_string(), ToString::to_string)
}

impl GammaPrediction {
    pub fn verdict(&self, n: i64) -> GammaVerdict {
        match self.rule {
            GammaRule::IsoAll => GammaVerdict::Iso,
            GammaRule::IsoNonnegativeZeroNegative if n >= 0 => GammaVerdict::Iso,
            GammaRule::IsoNonnegativeZeroNegative => GammaVerdict::ZeroMap,
            GammaRule::NotIsoAwayFromZero if n != 0 => GammaVerdict::NotIso,
            GammaRule::NotIsoAwayFromZero | GammaRule::Unknown => GammaVerdict::Unknown,
        }
    }

    fn citation(&self) -> Option<&str> {
        match self.rule {
            GammaRule::Unknown => None,
            _ => self.hypothesis_trail.last().map(String::as_str),
        }
    }
}

/// `det(1-N^t) = -1; gamma_n: iso for n >= 0, zero map for n <= -1 [Thm. thm:sus]`
impl fmt::Display for GammaPrediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "det(1-N^t) = {}; gamma_n: ", det_text(&self.det_value))?;
        f.write_str(match self.rule {
            GammaRule::IsoAll => "iso for all n",
            GammaRule::IsoNonnegativeZeroNegative => "iso for n >= 0, zero map for n <= -1",
            GammaRule::NotIsoAwayFromZero => "not iso for n != 0",
            GammaRule::Unknown => "unknown",
        })?;
        if let Some(c) = self.citation() {
            write!(f, " [{c}]")?;
        }
        Ok(())
    }
}

pub fn predict_gamma(q: &Quiver, table: &KTable) -> GammaPrediction {
    let has_sinks = q.sink_count() > 0;
    let det_value = (!has_sinks).then(|| det(&one_minus_nt::<BigInt>(q)).expect("square without sinks"));
    let mut trail = Vec::new();

    let rule = if table.is_stable_cstar() {
        trail.push("coefficients: stable-cstar".to_string());
        trail.push(cite::GAMMA_STABLE.to_string());
        GammaRule::IsoAll
    } else if table.is_complex() {
        trail.push("coefficients: field=complex".to_string());
        match &det_value {
            None => {
                trail.push("quiver has sinks".to_string());
                trail.push(cite::GAMMA_SINKS.to_string());
                GammaRule::NotIsoAwayFromZero
            }
            Some(d) if !d.is_zero() => {
                trail.push("quiver finite and sink-free".to_string());
                trail.push(format!("det(1-N^t) = {d} != 0"));
                trail.push(cite::GAMMA_DET.to_string());
                GammaRule::IsoNonnegativeZeroNegative
            }
            Some(_) => {
                trail.push("det(1-N^t) = 0: no applicable result".to_string());
                GammaRule::Unknown
            }
        }
    } else {
        trail.push("coefficients neither complex nor stable: no applicable result".to_string());
        GammaRule::Unknown
    };

    GammaPrediction { det_value, rule, hypothesis_trail: trail }
}
