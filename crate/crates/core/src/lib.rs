//! Functional object-oriented networks (FOON) for cooking task planning.
//!
//! * [`model`] holds objects, states, motions and functional units.
//! * [`network`] merges recipe subgraphs into one deduplicated network.
//! * [`io`] reads and writes the FOON text format, JSON documents and DOT.
//! * [`retrieval`] finds task trees with iterative deepening or greedy
//!   best-first search.

pub mod io;
pub mod model;
pub mod network;
pub mod retrieval;

pub use io::{
    export_dot, export_tree_document, parse_foon, parse_goal_list, parse_kitchen,
    parse_motion_profile, parse_tree_document, serialize_foon, DocumentError, EntryDiagnostic,
    Kitchen, MotionProfile, ParseDiagnostic, Severity,
};
pub use model::{
    matches_spec, nodes_equal, object_key, units_equal, Decoration, FunctionalUnit, ModelError,
    MotionNode, ObjectNode, ObjectSpec, StateTag,
};
pub use network::{merge, producers_of, Insertion, Network};
pub use retrieval::{
    available, retrieve, retrieve_gbfs, retrieve_ids, tree_stats, Algorithm, MaxDepth,
    RetrievalConfig, RetrievalError, RetrievalStats, TaskTree,
};
