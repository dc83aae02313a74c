//! Declarative JSON ensemble descriptions (schema v1).
//!
//! A config lists VN and CN entries, each pairing a code spec with an edge
//! fraction:
//!
//! ```json
//! {
//!   "name": "example",
//!   "vn": [
//!     { "code": { "kind": "repetition", "q": 2 }, "lambda": 0.055646 },
//!     { "code": { "kind": "spc", "q": 7, "form": "cyclic" }, "lambda": 0.944354 }
//!   ],
//!   "cn": [
//!     { "code": { "kind": "hamming74" }, "rho": 0.965221 },
//!     { "code": { "kind": "spc", "q": 7 }, "rho": 0.034779 }
//!   ]
//! }
//! ```
//!
//! An optional `reference` block carries published values (design rate, C*V,
//! relative minimum distance) that report commands print side by side with
//! the computed quantities, flagging discrepancies.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::gf2::{BinaryLinearCode, SpcForm};

/// One component-code description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CodeSpec {
    Repetition {
        q: usize,
    },
    Spc {
        q: usize,
        #[serde(default = "default_spc_form")]
        form: SpcForm,
    },
    Hamming74,
    Explicit {
        rows: Vec<String>,
    },
}

fn default_spc_form() -> SpcForm {
    SpcForm::Cyclic
}

impl CodeSpec {
    pub fn build(&self) -> Result<BinaryLinearCode> {
        match self {
            CodeSpec::Repetition { q } => BinaryLinearCode::repetition(*q),
            CodeSpec::Spc { q, form } => BinaryLinearCode::spc(*q, *form),
            CodeSpec::Hamming74 => Ok(BinaryLinearCode::hamming_7_4()),
            CodeSpec::Explicit { rows } => BinaryLinearCode::explicit(rows),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VnEntry {
    pub code: CodeSpec,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CnEntry {
    pub code: CodeSpec,
    pub rho: f64,
}

/// Published values to compare against; all optional.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceValues {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cv: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_star: Option<f64>,
}

/// Schema v1 ensemble description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vn: Vec<VnEntry>,
    pub cn: Vec<CnEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<ReferenceValues>,
}

impl EnsembleConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Builds and validates the ensemble this config describes.
    pub fn to_ensemble(&self) -> Result<Ensemble> {
        let vns = self
            .vn
            .iter()
            .map(|e| Ok((e.code.build()?, e.lambda)))
            .collect::<Result<Vec<_>>>()?;
        let cns = self
            .cn
            .iter()
            .map(|e| Ok((e.code.build()?, e.rho)))
            .collect::<Result<Vec<_>>>()?;
        Ensemble::build(vns, cns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ENSEMBLE_1: &str = include_str!("../examples/ensemble1.json");
    const ENSEMBLE_2: &str = include_str!("../examples/ensemble2.json");
    const LDPC_3_6: &str = include_str!("../examples/ldpc_3_6.json");

    #[test]
    fn golden_configs_parse_and_build() {
        for (text, rate) in [(ENSEMBLE_1, 0.5), (ENSEMBLE_2, 0.5069), (LDPC_3_6, 0.5)] {
            let cfg = EnsembleConfig::from_json(text).unwrap();
            let ens = cfg.to_ensemble().unwrap();
            assert!((ens.rate() - rate).abs() < 1e-3, "rate {}", ens.rate());
        }
    }

    #[test]
    fn golden_matches_fixture() {
        let ens = EnsembleConfig::from_json(ENSEMBLE_1)
            .unwrap()
            .to_ensemble()
            .unwrap();
        let fixture = crate::fixtures::ensemble_1();
        assert_eq!(ens.rate(), fixture.rate());
        assert_eq!(ens.cv_product(), fixture.cv_product());
    }

    #[test]
    fn round_trip_preserves_derived_parameters() {
        let cfg = EnsembleConfig::from_json(ENSEMBLE_2).unwrap();
        let reparsed = EnsembleConfig::from_json(&cfg.to_json_pretty()).unwrap();
        assert_eq!(cfg, reparsed);
        let a = cfg.to_ensemble().unwrap();
        let b = reparsed.to_ensemble().unwrap();
        assert!((a.rate() - b.rate()).abs() < 1e-12);
        assert!((a.int_lambda() - b.int_lambda()).abs() < 1e-12);
        assert!((a.bits_per_vn() - b.bits_per_vn()).abs() < 1e-12);
        assert_eq!(a.cv_product(), b.cv_product());
    }

    #[test]
    fn unknown_code_kind_rejected() {
        let text = r#"{"vn":[{"code":{"kind":"turbo","q":3},"lambda":1.0}],
                       "cn":[{"code":{"kind":"spc","q":6},"rho":1.0}]}"#;
        let err = EnsembleConfig::from_json(text).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        assert!(err.to_string().contains("turbo"));
    }

    #[test]
    fn parse_error_reports_position() {
        let err = EnsembleConfig::from_json("{ not json").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line") && msg.contains("column"), "{msg}");
    }

    #[test]
    fn spc_form_defaults_to_cyclic() {
        let text = r#"{"vn":[{"code":{"kind":"spc","q":7},"lambda":1.0}],
                       "cn":[{"code":{"kind":"spc","q":7},"rho":1.0}]}"#;
        let cfg = EnsembleConfig::from_json(text).unwrap();
        match &cfg.vn[0].code {
            CodeSpec::Spc { form, .. } => assert_eq!(*form, SpcForm::Cyclic),
            other => panic!("unexpected spec {other:?}"),
        }
    }
}
