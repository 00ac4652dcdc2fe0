//! On-disk instance format and the report printed by solve/bounds/check.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use last_success::{BoundReport, ProblemInstance, Solution, Verdict};

/// Input file: either an explicit probability list or a homogeneous spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homogeneous: Option<HomogeneousFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomogeneousFile {
    pub p: f64,
    pub n: usize,
}

impl InstanceFile {
    /// Validate the exactly-one-form invariant and build the instance.
    pub fn instance(&self) -> Result<ProblemInstance, String> {
        match (&self.p, &self.homogeneous) {
            (Some(p), None) => ProblemInstance::new(p.clone()).map_err(|e| e.to_string()),
            (None, Some(h)) => ProblemInstance::homogeneous(h.p, h.n).map_err(|e| e.to_string()),
            (Some(_), Some(_)) => {
                Err("instance file sets both \"p\" and \"homogeneous\"".to_string())
            }
            (None, None) => Err("instance file needs either \"p\" or \"homogeneous\"".to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundJson {
    pub value: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleJson {
    pub dp_value: f64,
    pub sweep_argmax: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Full machine-readable result; sections absent when a command does not
/// produce them.  Round-trips losslessly through its own JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub n: usize,
    pub p: Vec<f64>,
    pub s: usize,
    #[serde(rename = "V")]
    pub value: f64,
    #[serde(rename = "V_star")]
    pub v_star: f64,
    #[serde(rename = "V_double_star")]
    pub v_double_star: f64,
    pub decision: String,
    #[serde(rename = "R1", with = "maybe_inf")]
    pub r1: f64,
    #[serde(rename = "Rs", with = "maybe_inf")]
    pub rs: f64,
    /// `|R_1 - 1| <= 1e-12`: the play/predict decision sits on a knife edge.
    pub r1_near_one: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bounds: BTreeMap<String, BoundJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
    pub meta: Meta,
}

impl ReportFile {
    pub fn from_solution(inst: &ProblemInstance, label: Option<String>, sol: &Solution) -> Self {
        ReportFile {
            label,
            n: inst.n(),
            p: inst.probs().to_vec(),
            s: sol.threshold,
            value: sol.value,
            v_star: sol.variant1_value,
            v_double_star: sol.variant2_value,
            decision: sol.variant2_decision.as_str().to_string(),
            r1: sol.r1,
            rs: sol.rs,
            r1_near_one: sol.r1.is_finite() && (sol.r1 - 1.0).abs() <= 1e-12,
            case: None,
            bounds: BTreeMap::new(),
            oracle: None,
            meta: Meta {
                version: env!("CARGO_PKG_VERSION").to_string(),
                seed: None,
            },
        }
    }

    pub fn with_bounds(mut self, report: &BoundReport) -> Self {
        self.case = Some(report.case_label.as_str().to_string());
        for b in report
            .standard_bounds
            .iter()
            .chain(report.variant1_bounds.iter())
        {
            self.bounds.insert(
                b.name.to_string(),
                BoundJson {
                    value: b.value,
                    gap: b.gap,
                },
            );
        }
        self
    }

    pub fn with_oracle(mut self, verdict: &Verdict) -> Self {
        self.oracle = Some(OracleJson {
            dp_value: verdict.dp_value,
            sweep_argmax: verdict.sweep_argmax.clone(),
            enumeration_value: verdict.enumeration_value,
        });
        self
    }
}

/// Simulation output: the tally, its frequency, and the exact value the
/// frequency is checked against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub game: String,
    pub threshold: usize,
    pub wins: u64,
    pub replicates: u64,
    pub frequency: f64,
    pub std_error: f64,
    pub exact: f64,
    pub z_score: f64,
    pub rejection_cap_hits: u64,
    pub meta: Meta,
}

/// `R_s` is `∞` exactly when `p_s = 1`; JSON numbers cannot carry that, so
/// it serializes as the string `"inf"`.
mod maybe_inf {
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(value: &f64, ser: S) -> Result<S::Ok, S::Error> {
        if value.is_finite() {
            ser.serialize_f64(*value)
        } else {
            ser.serialize_str("inf")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<f64, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = f64;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a real number or \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
                Ok(v)
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
                Ok(v as f64)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
                Ok(v as f64)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
                if v == "inf" {
                    Ok(f64::INFINITY)
                } else {
                    Err(E::custom(format!("unexpected string {v:?}")))
                }
            }
        }
        de.deserialize_any(V)
    }
}
