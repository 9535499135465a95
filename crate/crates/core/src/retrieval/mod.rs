//! Task-tree retrieval: iterative deepening and greedy best-first search.

mod gbfs;
mod heuristics;
mod ids;
mod order;
mod search;
mod stats;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::io::{Kitchen, MotionProfile};
use crate::model::{fold, matches_spec, FunctionalUnit, ObjectNode, ObjectSpec};
use crate::network::Network;

pub use gbfs::{retrieve_gbfs, retrieve_gbfs_traced};
pub use heuristics::{h1_score, h2_score, rank_candidates, select_candidate, Objective};
pub use ids::retrieve_ids;
pub use order::order_units;
pub use search::CommitStep;
pub use stats::{tree_stats, RetrievalStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RetrievalError {
    #[error("goal not found: {0}")]
    GoalNotFound(String),
    #[error("unreachable goal: {0}")]
    Unreachable(String),
    #[error("no producer: empty candidate list")]
    NoProducer,
    #[error("configuration selects {0}, which this entry point does not run")]
    WrongAlgorithm(Algorithm),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "ids")]
    Ids,
    #[serde(rename = "gbfs-h1")]
    GbfsH1,
    #[serde(rename = "gbfs-h2")]
    GbfsH2,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Ids, Algorithm::GbfsH1, Algorithm::GbfsH2];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Ids => "ids",
            Algorithm::GbfsH1 => "gbfs-h1",
            Algorithm::GbfsH2 => "gbfs-h2",
        }
    }

    /// Column heading used in benchmark tables.
    pub fn short_name(self) -> &'static str {
        match self {
            Algorithm::Ids => "IDS",
            Algorithm::GbfsH1 => "H1",
            Algorithm::GbfsH2 => "H2",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ids" => Ok(Algorithm::Ids),
            "gbfs-h1" => Ok(Algorithm::GbfsH1),
            "gbfs-h2" => Ok(Algorithm::GbfsH2),
            other => Err(format!("unknown algorithm {other:?}")),
        }
    }
}

/// Upper bound on the IDS depth bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MaxDepth {
    /// The network's unit count.
    #[default]
    Auto,
    Limit(usize),
}

impl MaxDepth {
    pub fn limit(depth: usize) -> Option<Self> {
        (depth >= 1).then_some(MaxDepth::Limit(depth))
    }

    pub fn resolve(self, network: &Network) -> usize {
        match self {
            MaxDepth::Auto => network.len(),
            MaxDepth::Limit(depth) => depth,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RetrievalConfig {
    pub algorithm: Algorithm,
    pub max_depth: MaxDepth,
    /// Only consulted by [`Algorithm::GbfsH1`].
    pub motion_profile: MotionProfile,
}

impl RetrievalConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            max_depth: MaxDepth::Auto,
            motion_profile: MotionProfile::default(),
        }
    }

    pub fn with_profile(mut self, profile: MotionProfile) -> Self {
        self.motion_profile = profile;
        self
    }

    pub fn with_max_depth(mut self, max_depth: MaxDepth) -> Self {
        self.max_depth = max_depth;
        self
    }
}

/// Functional units in execution order that turn kitchen items into the goal.
#[derive(Debug, Clone, PartialEq)]
pub struct TaskTree {
    pub goal: ObjectSpec,
    pub algorithm: Algorithm,
    pub units: Vec<FunctionalUnit>,
    /// Network index of each unit in `units`.
    pub unit_indices: Vec<usize>,
    /// Bound at which IDS succeeded; `None` for greedy search.
    pub depth_reached: Option<usize>,
}

impl TaskTree {
    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }
}

/// A node is available if its label is a utensil, or a kitchen item has the
/// same label and supplies every state the node demands: plain state names
/// must be listed on the item, ingredient sets must be among its ingredients
/// and containers must equal its container.
pub fn available(node: &ObjectNode, kitchen: &Kitchen) -> bool {
    if kitchen.has_utensil(node.label()) {
        return true;
    }
    let label = fold(node.label());
    kitchen.items().iter().any(|item| {
        fold(&item.label) == label && {
            let states = item.folded_states();
            let ingredients = item.folded_ingredients();
            let container = item.container.as_deref().map(fold);
            node.states().iter().all(|tag| {
                if let Some(items) = tag.ingredients() {
                    items.iter().all(|i| ingredients.contains(&fold(i)))
                } else if let Some(c) = tag.container() {
                    container.as_deref() == Some(fold(c).as_str())
                } else {
                    states.contains(&fold(tag.name()))
                }
            })
        }
    })
}

/// Availability of a goal description: a utensil label, or a kitchen item
/// that satisfies every requirement of the spec.
pub fn available_spec(spec: &ObjectSpec, kitchen: &Kitchen) -> bool {
    if kitchen.has_utensil(&spec.label) {
        return true;
    }
    let label = fold(&spec.label);
    let wanted_states = spec.folded_states();
    let wanted_ingredients = spec.folded_ingredients();
    kitchen.items().iter().any(|item| {
        fold(&item.label) == label
            && wanted_states.is_subset(&item.folded_states())
            && wanted_ingredients.is_subset(&item.folded_ingredients())
            && match &spec.container {
                None => true,
                Some(c) => item.container.as_deref().map(fold) == Some(fold(c)),
            }
    })
}

/// Producers of `item`, ascending.
pub fn candidates(network: &Network, item: &ObjectSpec) -> Vec<usize> {
    network.producers_of(item)
}

/// Whether the goal appears among `unit`'s outputs.
pub fn produces_goal(unit: &FunctionalUnit, goal: &ObjectSpec) -> bool {
    unit.outputs().iter().any(|o| matches_spec(o, goal))
}

/// Runs the algorithm selected by `config`.
pub fn retrieve(
    network: &Network,
    goal: &ObjectSpec,
    kitchen: &Kitchen,
    config: &RetrievalConfig,
) -> Result<TaskTree, RetrievalError> {
    match config.algorithm {
        Algorithm::Ids => retrieve_ids(network, goal, kitchen, config),
        Algorithm::GbfsH1 | Algorithm::GbfsH2 => retrieve_gbfs(network, goal, kitchen, config),
    }
}
