//! JSON file formats.
//!
//! Fans are read as `{"n": 4, "maximal_cones": [{"relations": [[i, j], ...]}]}`
//! where each cone may be given by any generating set of relations. Exports
//! add the ray generators of each cone and the fan's total ray count, and
//! are still readable as input.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::factorize::{FactorizationTrace, Orientation, Step};
use crate::fan::{Cone, Fan};
use crate::preposet::{Preposet, Relation};
use crate::quotient_lattice::LatticeVector;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("schema error: {0}")]
    Schema(Error),
    #[error("invalid fan: {0}")]
    Invalid(Error),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PreposetInput {
    pub n: usize,
    pub relations: Vec<Relation>,
}

impl PreposetInput {
    pub fn to_preposet(&self) -> Result<Preposet, Error> {
        Preposet::from_relations(self.n, self.relations.iter().copied())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeInput {
    pub relations: Vec<Relation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanInput {
    pub n: usize,
    pub maximal_cones: Vec<ConeInput>,
}

impl FanInput {
    pub fn to_fan(&self) -> Result<Fan, LoadError> {
        if self.n < 2 {
            return Err(LoadError::Schema(Error::InvalidDimension {
                n: self.n,
                min: 2,
                max: usize::MAX,
            }));
        }
        let labels = self
            .maximal_cones
            .iter()
            .map(|c| Preposet::from_relations(self.n, c.relations.iter().copied()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(LoadError::Schema)?;
        Fan::from_labels(self.n, labels).map_err(LoadError::Invalid)
    }
}

pub fn parse_fan(text: &str) -> Result<Fan, LoadError> {
    serde_json::from_str::<FanInput>(text)?.to_fan()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeExport {
    pub relations: Vec<Relation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<LatticeVector>>,
}

impl From<&Cone> for ConeExport {
    fn from(c: &Cone) -> Self {
        Self {
            relations: c.label().relations(),
            rays: c.rays().map(<[_]>::to_vec),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanExport {
    pub n: usize,
    pub maximal_cones: Vec<ConeExport>,
    pub ray_count: usize,
}

impl From<&Fan> for FanExport {
    fn from(f: &Fan) -> Self {
        Self {
            n: f.n(),
            maximal_cones: f.maximal().iter().map(ConeExport::from).collect(),
            ray_count: f.ray_set().len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepExport {
    pub center_cone: ConeExport,
    pub hub_class: Vec<usize>,
    pub orientation: Orientation,
    pub tau_rays: Vec<LatticeVector>,
    pub new_ray: LatticeVector,
    pub result_ray_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<FanExport>,
}

impl StepExport {
    fn new(step: &Step, verbose: bool) -> Self {
        Self {
            center_cone: ConeExport::from(&step.center.sigma),
            hub_class: step.center.hub.clone(),
            orientation: step.center.orientation,
            tau_rays: step.center.tau.rays().unwrap_or(&[]).to_vec(),
            new_ray: step.new_ray.clone(),
            result_ray_count: step.result.ray_set().len(),
            result: verbose.then(|| FanExport::from(&step.result)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceExport {
    pub n: usize,
    pub initial: FanExport,
    pub steps: Vec<StepExport>,
    #[serde(rename = "final")]
    pub final_fan: &'static str,
}

impl TraceExport {
    /// `verbose` includes every intermediate fan.
    pub fn new(trace: &FactorizationTrace, verbose: bool) -> Self {
        Self {
            n: trace.initial.n(),
            initial: FanExport::from(&trace.initial),
            steps: trace
                .steps
                .iter()
                .map(|s| StepExport::new(s, verbose))
                .collect(),
            final_fan: "braid",
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::braid_fan;
    use crate::fixtures;

    #[test]
    fn fan_export_reloads() {
        for fan in [
            fixtures::p2_fan(),
            braid_fan(4).unwrap(),
            fixtures::blowdown_fan_n4(),
        ] {
            let text = to_json(&FanExport::from(&fan));
            assert_eq!(parse_fan(&text).unwrap(), fan);
        }
    }

    #[test]
    fn preposet_output_form() {
        let p = fixtures::claw_poset();
        let v: serde_json::Value = serde_json::to_value(&p).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"n": 4, "classes": [[1], [2], [3], [4]], "covers": [[1, 0], [1, 2], [3, 1]]})
        );
        let input: PreposetInput =
            serde_json::from_str(r#"{"n": 4, "relations": [[4,2],[2,1],[2,3],[4,1]]}"#).unwrap();
        assert_eq!(input.to_preposet().unwrap(), p);
    }

    #[test]
    fn lattice_vector_json() {
        let v: LatticeVector = serde_json::from_str("[3, 2, 4]").unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), "[1,0,2]");
    }

    #[test]
    fn load_errors_are_classified() {
        assert!(matches!(parse_fan("{"), Err(LoadError::Parse(_))));
        assert!(matches!(
            parse_fan(r#"{"n": 3, "maximal_cones": [{"relations": [[1, 5]]}]}"#),
            Err(LoadError::Schema(_))
        ));
        assert!(matches!(
            parse_fan(r#"{"n": 3, "maximal_cones": [{"relations": [[1, 2]]}]}"#),
            Err(LoadError::Invalid(Error::Disconnected))
        ));
    }
}
