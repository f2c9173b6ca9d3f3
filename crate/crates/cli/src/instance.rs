//! Instance-file model: one TOML document naming a space, a scope, vectors,
//! and optional family parameters.

use greedylab_core::constants::InstanceFamily;
use greedylab_core::{CoeffVector, SpaceSpec};
use serde::Deserialize;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub scope: u32,
    pub space: SpaceSpec,
    #[serde(default)]
    pub vectors: Vec<NamedVector>,
    pub family: Option<InstanceFamily>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedVector {
    pub name: String,
    pub entries: CoeffVector,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        let instance: InstanceFile =
            toml::from_str(text).map_err(|e| format!("instance parse error: {e}"))?;
        instance.space.validate().map_err(|e| format!("space: {e}"))?;
        if instance.scope == 0 {
            return Err("scope: must be at least 1".into());
        }
        for v in &instance.vectors {
            if let Some(max) = v.entries.max_index() {
                if max > instance.scope {
                    return Err(format!(
                        "vectors.{}: index {max} exceeds scope {}",
                        v.name, instance.scope
                    ));
                }
            }
        }
        Ok(instance)
    }

    pub fn vector(&self, name: &str) -> Result<&CoeffVector, String> {
        self.vectors
            .iter()
            .find(|v| v.name == name)
            .map(|v| &v.entries)
            .ok_or_else(|| format!("vectors: no vector named '{name}'"))
    }

    /// Built-in instance used when no --in file is given.
    pub fn default_instance() -> Self {
        InstanceFile {
            scope: 8,
            space: SpaceSpec::Lp { p: 2.0 },
            vectors: vec![
                NamedVector {
                    name: "x".into(),
                    entries: CoeffVector::from_dense(&[3.0, 2.0, 1.0]).unwrap(),
                },
                NamedVector {
                    name: "alternating".into(),
                    entries: CoeffVector::from_dense(&[1.0, -1.0, 1.0, -1.0]).unwrap(),
                },
            ],
            family: Some(InstanceFamily::default()),
        }
    }
}

pub const SCHEMA_HELP: &str = r#"instance file schema (TOML):

  scope = 8                       # index universe 1..=scope

  [space]                         # one of:
  kind = "lp"                     #   { kind = "lp", p = 2.0 }
  p = 2.0                         #   { kind = "weighted_lp", p = 1.0, weights = [1.0, 0.5] }
                                  #   { kind = "hilbert" }
                                  #   { kind = "summing_c0" }

  [[vectors]]                     # optional, repeatable
  name = "x"
  entries = [[1, 3.0], [2, 2.0]]  # [index, coefficient]; write coefficients with a decimal point

  [family]                        # optional estimator family parameters
  universe = 8
  x_grid = [1.0, -1.0, 0.5, -0.5]
  y_grid = [1.0, -1.0, 0.5, -0.5, 2.0, -2.0]
  max_set_size = 3
  random_samples = 1000
  rng_seed = 42
"#;
