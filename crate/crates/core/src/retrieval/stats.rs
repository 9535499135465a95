use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::io::serialize_foon;
use crate::model::object_key;

use super::{Algorithm, TaskTree};

/// Size metrics of a retrieved tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetrievalStats {
    pub goal: String,
    pub algorithm: Algorithm,
    /// Lines of the canonical FOON text, shared delimiters included.
    pub output_lines: usize,
    pub unit_count: usize,
    pub motion_count: usize,
    pub distinct_object_count: usize,
}

pub fn tree_stats(tree: &TaskTree) -> RetrievalStats {
    let objects: BTreeSet<String> = tree
        .units
        .iter()
        .flat_map(|u| u.inputs().iter().chain(u.outputs()))
        .map(object_key)
        .collect();
    RetrievalStats {
        goal: tree.goal.label.clone(),
        algorithm: tree.algorithm,
        output_lines: serialize_foon(&tree.units).lines().count(),
        unit_count: tree.units.len(),
        motion_count: tree.units.len(),
        distinct_object_count: objects.len(),
    }
}
