//! Reading and writing FOON text, JSON documents and DOT graphs.

mod documents;
mod dot;
mod kitchen;
mod text;

use thiserror::Error;

pub use documents::{
    export_tree_document, parse_goal_list, parse_kitchen, parse_motion_profile,
    parse_tree_document, parse_utensils, EntryDiagnostic,
};
pub use dot::export_dot;
pub use kitchen::{Kitchen, MotionProfile, DEFAULT_MOTION_PROBABILITY};
pub use text::{parse_foon, serialize_foon, ParseDiagnostic, Severity};

/// Failure to read a whole JSON document.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("expected {expected} at top level")]
    Shape { expected: &'static str },
    #[error("motion {motion:?}: probability {value} is outside [0, 1]")]
    Probability { motion: String, value: f64 },
    #[error("motion {motion:?}: probability is not a number")]
    NotANumber { motion: String },
    #[error("invalid task tree document: {0}")]
    Tree(String),
}
