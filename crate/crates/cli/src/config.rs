//! Experiment configuration files.
//!
//! ```json
//! {
//!   "field": {"p": 2, "m": 4, "prim_poly": [1, 1, 0, 0, 1]},
//!   "code": {"simplex": 4},
//!   "helper": {"simplex": 8},
//!   "t": 44,
//!   "trials": 100,
//!   "seed": 1,
//!   "sweep": [40, 48]
//! }
//! ```
//!
//! A polytope is given as `{"simplex": a}`, `{"vertices": [[x, y], ...]}` or
//! an explicit exponent list `{"exponents": [[u1, .., ur], ...]}`.

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use toric_core::code::DEFAULT_DISTANCE_BUDGET;
use toric_core::decode::DistanceOverrides;
use toric_core::{
    ExponentSet, ExponentSource, FieldDescriptor, FieldSpec, LatticePolytope, PairOptions,
};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeSpec {
    #[serde(default)]
    pub simplex: Option<i64>,
    #[serde(default)]
    pub vertices: Option<Vec<[i64; 2]>>,
    #[serde(default)]
    pub exponents: Option<Vec<Vec<i64>>>,
}

impl PolytopeSpec {
    fn source(&self, name: &str) -> Result<ExponentSource> {
        match (self.simplex, &self.vertices, &self.exponents) {
            (Some(a), None, None) => {
                if a < 0 {
                    bail!("{name}.simplex: leg must be nonnegative, got {a}");
                }
                Ok(ExponentSource::Polytope(LatticePolytope::simplex(a)))
            }
            (None, Some(v), None) => Ok(ExponentSource::Polytope(
                LatticePolytope::from_points(v).with_context(|| format!("{name}.vertices"))?,
            )),
            (None, None, Some(e)) => {
                let r = e.first().map_or(2, Vec::len);
                Ok(ExponentSource::Exponents(
                    ExponentSet::new(r, e.clone()).with_context(|| format!("{name}.exponents"))?,
                ))
            }
            _ => bail!("{name}: give exactly one of `simplex`, `vertices` or `exponents`"),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub field: FieldDescriptor,
    pub code: PolytopeSpec,
    #[serde(default)]
    pub helper: Option<PolytopeSpec>,
    /// Decoding radius; defaults to the largest radius the pair supports.
    #[serde(default)]
    pub t: Option<usize>,
    #[serde(default)]
    pub trials: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Inclusive range of planted error weights for `simulate`.
    #[serde(default)]
    pub sweep: Option<[usize; 2]>,
    #[serde(default)]
    pub distances: DistanceOverrides,
    #[serde(default)]
    pub budget: Option<u64>,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

/// Validated configuration with the field built.
#[derive(Debug)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub field: Arc<FieldSpec>,
    pub code: ExponentSource,
    pub helper: Option<ExponentSource>,
}

pub fn parse(text: &str, origin: &str) -> Result<Experiment> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let config: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        anyhow::anyhow!("{origin}: field `{path}`: {}", e.into_inner())
    })?;
    let field = FieldSpec::from_descriptor(&config.field).with_context(|| format!("{origin}: field"))?;
    let code = config.code.source("code").with_context(|| origin.to_owned())?;
    let helper = config
        .helper
        .as_ref()
        .map(|h| h.source("helper"))
        .transpose()
        .with_context(|| origin.to_owned())?;
    if let Some([lo, hi]) = config.sweep {
        if lo > hi {
            bail!("{origin}: field `sweep`: empty range {lo}..={hi}");
        }
    }
    Ok(Experiment {
        config,
        field: Arc::new(field),
        code,
        helper,
    })
}

pub fn load(path: &Path) -> Result<Experiment> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text, &path.display().to_string())
}

impl Experiment {
    pub fn pair_options(&self) -> PairOptions {
        PairOptions {
            budget: self.config.budget.unwrap_or(DEFAULT_DISTANCE_BUDGET),
            overrides: self.config.distances,
        }
    }
}
