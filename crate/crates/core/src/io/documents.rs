//! JSON goal, kitchen, motion-profile and task-tree documents.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::model::{FunctionalUnit, MotionNode, ObjectNode, ObjectSpec, StateTag};
use crate::retrieval::{tree_stats, Algorithm, RetrievalStats, TaskTree};

use super::text::Severity;
use super::{DocumentError, Kitchen, MotionProfile};

/// A problem with one entry of a goal or kitchen document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryDiagnostic {
    /// 0-based position in the top-level array.
    pub index: usize,
    pub severity: Severity,
    pub message: String,
}

impl fmt::Display for EntryDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "entry {}: {}: {}", self.index, level, self.message)
    }
}

fn parse_json(document: &str) -> Result<Value, DocumentError> {
    if document.trim().is_empty() {
        return Ok(Value::Array(Vec::new()));
    }
    serde_json::from_str(document).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Parses a JSON array of `{"label", "states", "ingredients", "container"}`.
///
/// Entries without a usable label are rejected; unknown keys are reported as
/// warnings and otherwise ignored.
pub fn parse_goal_list(
    document: &str,
) -> Result<(Vec<ObjectSpec>, Vec<EntryDiagnostic>), DocumentError> {
    let Value::Array(entries) = parse_json(document)? else {
        return Err(DocumentError::Shape {
            expected: "an array of object specs",
        });
    };
    let mut specs = Vec::new();
    let mut diagnostics = Vec::new();
    for (index, entry) in entries.iter().enumerate() {
        match parse_spec(entry, index, &mut diagnostics) {
            Ok(spec) => specs.push(spec),
            Err(message) => diagnostics.push(EntryDiagnostic {
                index,
                severity: Severity::Error,
                message,
            }),
        }
    }
    Ok((specs, diagnostics))
}

fn parse_spec(
    entry: &Value,
    index: usize,
    diagnostics: &mut Vec<EntryDiagnostic>,
) -> Result<ObjectSpec, String> {
    let Value::Object(fields) = entry else {
        return Err("entry is not an object".into());
    };
    for key in fields.keys() {
        if !matches!(
            key.as_str(),
            "label" | "states" | "ingredients" | "container"
        ) {
            diagnostics.push(EntryDiagnostic {
                index,
                severity: Severity::Warning,
                message: format!("unknown field {key:?} ignored"),
            });
        }
    }
    let label = match fields.get("label") {
        Some(Value::String(label)) => label,
        Some(_) => return Err("\"label\" is not a string".into()),
        None => return Err("missing \"label\"".into()),
    };
    let spec = ObjectSpec::new(label).map_err(|e| e.to_string())?;
    let container = match fields.get("container") {
        None | Some(Value::Null) => None,
        Some(Value::String(c)) if !c.trim().is_empty() => Some(c.as_str()),
        Some(_) => return Err("\"container\" must be a nonempty string or null".into()),
    };
    Ok(spec
        .with_states(string_list(fields, "states")?)
        .with_ingredients(string_list(fields, "ingredients")?)
        .with_container(container))
}

fn string_list<'a>(fields: &'a Map<String, Value>, key: &str) -> Result<Vec<&'a str>, String> {
    match fields.get(key) {
        None | Some(Value::Null) => Ok(Vec::new()),
        Some(Value::Array(items)) => items
            .iter()
            .map(|item| match item {
                Value::String(s) if !s.trim().is_empty() => Ok(s.as_str()),
                _ => Err(format!("{key:?} must contain only nonempty strings")),
            })
            .collect(),
        Some(_) => Err(format!("{key:?} is not an array")),
    }
}

/// Kitchen items (same document shape as goals) plus a utensil list, one
/// label per line with `#` comments.
pub fn parse_kitchen(
    document: &str,
    utensils_text: &str,
) -> Result<(Kitchen, Vec<EntryDiagnostic>), DocumentError> {
    let (items, diagnostics) = parse_goal_list(document)?;
    Ok((
        Kitchen::new(items, parse_utensils(utensils_text)),
        diagnostics,
    ))
}

pub fn parse_utensils(text: &str) -> Vec<&str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

/// JSON object of motion label to success probability; `"default"` sets the
/// fallback.
pub fn parse_motion_profile(document: &str) -> Result<MotionProfile, DocumentError> {
    let value = if document.trim().is_empty() {
        Value::Object(Map::new())
    } else {
        parse_json(document)?
    };
    let Value::Object(fields) = value else {
        return Err(DocumentError::Shape {
            expected: "an object of motion probabilities",
        });
    };
    let mut profile = MotionProfile::new();
    if let Some(default) = fields.get("default") {
        let value = default.as_f64().ok_or_else(|| DocumentError::NotANumber {
            motion: "default".into(),
        })?;
        profile = MotionProfile::with_default(value)?;
    }
    for (motion, value) in fields.iter().filter(|(k, _)| k.as_str() != "default") {
        let value = value.as_f64().ok_or_else(|| DocumentError::NotANumber {
            motion: motion.clone(),
        })?;
        profile.insert(motion, value)?;
    }
    Ok(profile)
}

#[derive(Debug, Serialize, Deserialize)]
struct SpecDoc {
    label: String,
    states: Vec<String>,
    ingredients: Vec<String>,
    container: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct StateDoc {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ingredients: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    container: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct NodeDoc {
    label: String,
    states: Vec<StateDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct UnitDoc {
    index: usize,
    inputs: Vec<NodeDoc>,
    motion: String,
    outputs: Vec<NodeDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TreeDoc {
    goal: SpecDoc,
    algorithm: Algorithm,
    depth_reached: Option<usize>,
    units: Vec<UnitDoc>,
    stats: RetrievalStats,
}

impl From<&ObjectSpec> for SpecDoc {
    fn from(spec: &ObjectSpec) -> Self {
        Self {
            label: spec.label.clone(),
            states: spec.states.iter().cloned().collect(),
            ingredients: spec.ingredients.iter().cloned().collect(),
            container: spec.container.clone(),
        }
    }
}

impl From<&ObjectNode> for NodeDoc {
    fn from(node: &ObjectNode) -> Self {
        Self {
            label: node.label().to_owned(),
            states: node
                .states()
                .iter()
                .map(|s| StateDoc {
                    name: s.name().to_owned(),
                    ingredients: s.ingredients().map(<[String]>::to_vec),
                    container: s.container().map(str::to_owned),
                })
                .collect(),
        }
    }
}

fn node_from_doc(doc: NodeDoc) -> Result<ObjectNode, DocumentError> {
    let invalid = |e: crate::model::ModelError| DocumentError::Tree(e.to_string());
    let states = doc
        .states
        .into_iter()
        .map(|s| match (s.ingredients, s.container) {
            (None, None) => StateTag::plain(&s.name).map_err(invalid),
            (Some(items), None) => StateTag::with_ingredients(&s.name, items).map_err(invalid),
            (None, Some(c)) => StateTag::in_container(&s.name, &c).map_err(invalid),
            (Some(_), Some(_)) => Err(DocumentError::Tree(format!(
                "state {:?} has both ingredients and a container",
                s.name
            ))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    ObjectNode::new(&doc.label, states).map_err(invalid)
}

/// Pretty-printed JSON rendering of a task tree with its stats.
pub fn export_tree_document(tree: &TaskTree) -> String {
    let doc = TreeDoc {
        goal: SpecDoc::from(&tree.goal),
        algorithm: tree.algorithm,
        depth_reached: tree.depth_reached,
        units: tree
            .units
            .iter()
            .zip(&tree.unit_indices)
            .map(|(unit, &index)| UnitDoc {
                index,
                inputs: unit.inputs().iter().map(NodeDoc::from).collect(),
                motion: unit.motion().label().to_owned(),
                outputs: unit.outputs().iter().map(NodeDoc::from).collect(),
            })
            .collect(),
        stats: tree_stats(tree),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("tree document serializes");
    out.push('\n');
    out
}

/// Inverse of [`export_tree_document`].
pub fn parse_tree_document(document: &str) -> Result<TaskTree, DocumentError> {
    let doc: TreeDoc = serde_json::from_str(document).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let goal = ObjectSpec::new(&doc.goal.label)
        .map_err(|e| DocumentError::Tree(e.to_string()))?
        .with_states(doc.goal.states)
        .with_ingredients(doc.goal.ingredients)
        .with_container(doc.goal.container.as_deref());
    let mut units = Vec::new();
    let mut unit_indices = Vec::new();
    for unit in doc.units {
        unit_indices.push(unit.index);
        let inputs = unit
            .inputs
            .into_iter()
            .map(node_from_doc)
            .collect::<Result<Vec<_>, _>>()?;
        let outputs = unit
            .outputs
            .into_iter()
            .map(node_from_doc)
            .collect::<Result<Vec<_>, _>>()?;
        let motion =
            MotionNode::new(&unit.motion).map_err(|e| DocumentError::Tree(e.to_string()))?;
        units.push(
            FunctionalUnit::new(inputs, motion, outputs)
                .map_err(|e| DocumentError::Tree(e.to_string()))?,
        );
    }
    Ok(TaskTree {
        goal,
        algorithm: doc.algorithm,
        units,
        unit_indices,
        depth_reached: doc.depth_reached,
    })
}
