//! Versioned JSON document describing a designed filter: realization
//! order, stage coefficients, classified poles, and the derived
//! intermediates that produced them.
//!
//! Numbers serialize through the shortest decimal representation that
//! round-trips the underlying binary value, so serialize → parse →
//! serialize is the identity.

use fbwf::{
    CascadeFilter, ClassicalTF, CutoffRule, DesignReport, DesignSpec, PoleClass, RationalOrder,
    Stage, WPlaneTF, WPole,
};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterDocument {
    pub schema_version: String,
    pub order: RationalOrder,
    pub stages: Vec<StageDoc>,
    /// Classified poles per stage, parallel to `stages`.
    pub poles: Vec<Vec<PoleDoc>>,
    pub provenance: Provenance,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StageKind {
    Classical,
    Fractional,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageDoc {
    pub kind: StageKind,
    /// Commensurate order: 1 for classical stages.
    pub q: f64,
    /// Scalar numerator.
    pub num: f64,
    /// Denominator coefficients, ascending powers.
    pub den: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoleDoc {
    pub re: f64,
    pub im: f64,
    pub arg_abs: f64,
    pub class: PoleClass,
}

impl From<&WPole> for PoleDoc {
    fn from(pole: &WPole) -> Self {
        Self {
            re: pole.value.re,
            im: pole.value.im,
            arg_abs: pole.arg_abs,
            class: pole.class,
        }
    }
}

/// Input specification echo plus the derived design intermediates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub spec: DesignSpec,
    pub decimals: usize,
    pub cutoff_rule: CutoffRule,
    pub n_exact: f64,
    pub omega_c_int: Option<f64>,
    pub omega_c_frac: Option<f64>,
    pub omega_bar_c: Option<f64>,
}

impl FilterDocument {
    pub fn from_report(report: &DesignReport) -> Self {
        let stages = report
            .filter
            .stages
            .iter()
            .map(|stage| match stage {
                Stage::Classical(tf) => StageDoc {
                    kind: StageKind::Classical,
                    q: 1.0,
                    num: tf.num[0],
                    den: tf.den.clone(),
                },
                Stage::Fractional(tf) => StageDoc {
                    kind: StageKind::Fractional,
                    q: tf.q,
                    num: tf.num,
                    den: tf.den.clone(),
                },
            })
            .collect();
        let poles = report
            .stage_poles
            .iter()
            .map(|stage| stage.iter().map(PoleDoc::from).collect())
            .collect();
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            order: report.order,
            stages,
            poles,
            provenance: Provenance {
                spec: report.spec,
                decimals: report.decimals,
                cutoff_rule: report.cutoff_rule,
                n_exact: report.n_exact,
                omega_c_int: report.omega_c_int,
                omega_c_frac: report.omega_c_frac,
                omega_bar_c: report.omega_bar_c,
            },
            warnings: report.warnings.clone(),
        }
    }

    /// Rebuild the evaluatable cascade from the stored stages.
    pub fn to_cascade(&self) -> Result<CascadeFilter, String> {
        let stages = self
            .stages
            .iter()
            .map(|stage| match stage.kind {
                StageKind::Classical => Stage::Classical(ClassicalTF {
                    num: vec![stage.num],
                    den: stage.den.clone(),
                }),
                StageKind::Fractional => Stage::Fractional(WPlaneTF {
                    q: stage.q,
                    num: stage.num,
                    den: stage.den.clone(),
                }),
            })
            .collect();
        fbwf::cascade(stages).map_err(|e| e.to_string())
    }
}
