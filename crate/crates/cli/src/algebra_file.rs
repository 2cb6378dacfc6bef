//! The `AlgebraFile` input format (version 1).
//!
//! ```json
//! {
//!   "format": 1,
//!   "name": "M2",
//!   "ambient_dim": 2,
//!   "generators": [ [[[0,0],[1,0]], [[0,0],[0,0]]] ],
//!   "automorphism": [ [[[0,0],[-1,0]], [[0,0],[0,0]]] ]
//! }
//! ```
//!
//! The algebra is the unital *-algebra generated by `generators`; the
//! optional `automorphism` lists the image of each generator, in order.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use z2cross::crossed::{make_automorphism, OrderTwoAutomorphism};
use z2cross::{StarAlgebra, TolerancePolicy};

use crate::encode::{matrix_from_json, matrix_to_json};
use crate::error::CliError;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format: u64,
    #[serde(default)]
    pub name: Option<String>,
    pub ambient_dim: usize,
    pub generators: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphism: Option<Vec<Value>>,
}

#[derive(Clone, Debug)]
pub struct LoadedAlgebra {
    pub algebra: Arc<StarAlgebra>,
    pub sigma: Option<OrderTwoAutomorphism>,
}

impl AlgebraFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.display().to_string(),
            source,
        })
    }

    /// Encodes an algebra by its generators (or basis when it has none).
    pub fn from_parts(alg: &StarAlgebra, sigma: Option<&OrderTwoAutomorphism>) -> Self {
        let gens = if alg.generators().is_empty() {
            alg.basis()
        } else {
            alg.generators()
        };
        Self {
            format: FORMAT_VERSION,
            name: (!alg.name().is_empty()).then(|| alg.name().to_string()),
            ambient_dim: alg.ambient_dim(),
            generators: gens.iter().map(matrix_to_json).collect(),
            automorphism: sigma.map(|s| gens.iter().map(|g| matrix_to_json(&s.apply(g))).collect()),
        }
    }

    pub fn load(&self, tol: &TolerancePolicy) -> Result<LoadedAlgebra, CliError> {
        if self.format != FORMAT_VERSION {
            return Err(CliError::input(format!(
                "unsupported format {} (expected {FORMAT_VERSION})",
                self.format
            )));
        }
        let d = self.ambient_dim;
        if d == 0 {
            return Err(CliError::input("ambient_dim must be positive"));
        }
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(k, g)| matrix_from_json(g, d, &format!("generator {k}")))
            .collect::<Result<Vec<_>, _>>()?;
        let mut alg = StarAlgebra::generate(d, &gens, tol)?;
        if let Some(name) = &self.name {
            alg = alg.with_name(name.clone());
        }
        let algebra = Arc::new(alg);
        let sigma = match &self.automorphism {
            None => None,
            Some(images) if images.is_empty() => {
                Some(OrderTwoAutomorphism::identity(algebra.clone()))
            }
            Some(images) => {
                if images.len() != gens.len() {
                    return Err(CliError::input(format!(
                        "automorphism lists {} images for {} generators",
                        images.len(),
                        gens.len()
                    )));
                }
                let images = images
                    .iter()
                    .enumerate()
                    .map(|(k, g)| matrix_from_json(g, d, &format!("automorphism image {k}")))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(make_automorphism(algebra.clone(), &images, tol)?)
            }
        };
        Ok(LoadedAlgebra { algebra, sigma })
    }
}
