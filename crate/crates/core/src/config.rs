use serde::{Deserialize, Serialize};

use crate::linalg::FieldSpec;

/// Knobs shared by the heavy computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub field: FieldSpec,
    /// Largest vertex count for which all `2^m` full subcomplexes are visited.
    pub vertex_limit: usize,
    /// Largest number of free GF(2) bits in an exhaustive Massey enumeration.
    pub massey_budget: usize,
    /// Truncation order of generating series.
    pub series_order: usize,
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config { field: FieldSpec::Rational, vertex_limit: 20, massey_budget: 16, series_order: 6, threads: None }
    }
}

impl Config {
    pub fn with_field(mut self, field: FieldSpec) -> Self {
        self.field = field;
        self
    }
}
