use std::path::PathBuf;
use std::sync::Arc;

use crate::equidist::{DEFAULT_TOLERANCE_A, DEFAULT_TOLERANCE_B};
use crate::error::Result;
use crate::field::FieldSpec;
use crate::sums::DEFAULT_BUDGET;

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Field tables are read from and written to this directory when set.
    pub cache_dir: Option<PathBuf>,
    pub budget: u128,
    pub tolerance_a: f64,
    pub tolerance_b: f64,
    /// `None` lets rayon pick.
    pub threads: Option<usize>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cache_dir: None,
            budget: DEFAULT_BUDGET,
            tolerance_a: DEFAULT_TOLERANCE_A,
            tolerance_b: DEFAULT_TOLERANCE_B,
            threads: None,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn field(&self, p: u64, k: u32) -> Result<Arc<FieldSpec>> {
        let f = match &self.cache_dir {
            Some(dir) => FieldSpec::cached(p, k, dir)?,
            None => FieldSpec::new(p, k)?,
        };
        Ok(Arc::new(f))
    }
}
