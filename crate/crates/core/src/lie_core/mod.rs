//! Chevalley basis of the nilpotent radical and irreducible highest-weight modules.

mod algebra;
mod module;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use algebra::{
    chevalley_constants, exterior_power_dims, exterior_table, extend_to_positive_roots, extraspecial_pair,
    NilpotentAlgebra,
};
pub use module::{
    bmodule_filtration, build_irreducible, character, ExportedWeight, HighestWeightModule, ModuleExport, WeightSpace,
};

/// Dimensions indexed by a grade and a cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims<K: Ord> {
    pub entries: BTreeMap<(K, i64), u64>,
    /// Truncation radius, when the data is a truncation.
    pub bound: Option<u32>,
    /// Degree shift relating the reported degrees to a normalized convention:
    /// normalized degree = reported degree - shift.
    pub shift: i64,
}

impl<K: Ord + Clone> GradedDims<K> {
    pub fn new() -> Self {
        GradedDims { entries: BTreeMap::new(), bound: None, shift: 0 }
    }

    pub fn get(&self, key: &K, degree: i64) -> u64 {
        self.entries.get(&(key.clone(), degree)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, key: K, degree: i64, dim: u64) {
        if dim > 0 {
            *self.entries.entry((key, degree)).or_insert(0) += dim;
        }
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Total dimension in each degree.
    pub fn by_degree(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for ((_, d), v) in &self.entries {
            *out.entry(*d).or_insert(0) += v;
        }
        out
    }
}

impl<K: Ord + Clone> Default for GradedDims<K> {
    fn default() -> Self {
        Self::new()
    }
}
