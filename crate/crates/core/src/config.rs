//! Runtime configuration: caps, parallelism, catalog/output paths and
//! per-run suite options.

use std::path::PathBuf;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Caps, DEFAULT_ELEMENT_CAP};
use crate::structure::Formation;

#[derive(Clone, Debug, Serialize)]
pub struct Config {
    /// Largest group order the catalog loader will accept.
    pub max_group_order: usize,
    /// Largest group order for exhaustive subgroup enumeration.
    pub max_lattice_order: usize,
    /// Largest group order for the completely-c-permutable double loop.
    pub max_ccp_order: usize,
    pub jobs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Formations checked by the Theorem A / corollary suites.
    pub formations: Vec<Formation>,
    /// Optional catalog filter: only groups of order <= max_order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_group_order: 2000,
            max_lattice_order: 400,
            max_ccp_order: 100,
            jobs: 1,
            catalog: None,
            output: None,
            formations: vec![Formation::Supersoluble, Formation::Soluble],
            max_order: None,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.max_group_order == 0
            || self.max_lattice_order == 0
            || self.max_ccp_order == 0
            || self.jobs == 0
        {
            return Err(Error::Parse("all caps must be at least 1".into()));
        }
        Ok(())
    }

    pub fn caps(&self) -> Caps {
        Caps {
            element_cap: DEFAULT_ELEMENT_CAP.max(self.max_group_order),
            lattice_cap: self.max_lattice_order,
            ccp_cap: self.max_ccp_order,
        }
    }
}
