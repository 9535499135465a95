//! Object, state, motion and functional-unit types.
//!
//! Labels and state names keep their source spelling (whitespace collapsed)
//! but compare case-insensitively. Motion labels compare case-sensitively.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Invalid construction of a model value.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("empty {0}")]
    Empty(&'static str),
    #[error("{what} {text:?} contains forbidden character {ch:?}")]
    ForbiddenChar {
        what: &'static str,
        text: String,
        ch: char,
    },
    #[error("functional unit needs at least one {0}")]
    MissingSide(&'static str),
}

/// Trims and collapses internal whitespace runs to a single space.
pub fn tidy(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Comparison form of a label or state name.
pub fn fold(text: &str) -> String {
    tidy(text).to_lowercase()
}

fn checked(text: &str, what: &'static str, forbidden: &[char]) -> Result<String, ModelError> {
    let tidied = tidy(text);
    if tidied.is_empty() {
        return Err(ModelError::Empty(what));
    }
    if let Some(ch) = tidied
        .chars()
        .find(|c| c.is_control() || forbidden.contains(c))
    {
        return Err(ModelError::ForbiddenChar {
            what,
            text: tidied,
            ch,
        });
    }
    Ok(tidied)
}

const DECORATION_CHARS: [char; 4] = ['{', '}', '[', ']'];
const INGREDIENT_CHARS: [char; 5] = ['{', '}', '[', ']', ','];

/// Optional payload of a state line: `{a, b}` or `[container]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Decoration {
    Ingredients(Vec<String>),
    Container(String),
}

/// One `S` line attached to an object.
#[derive(Debug, Clone)]
pub struct StateTag {
    name: String,
    decoration: Option<Decoration>,
}

impl StateTag {
    pub fn plain(name: &str) -> Result<Self, ModelError> {
        Ok(Self {
            name: checked(name, "state name", &DECORATION_CHARS)?,
            decoration: None,
        })
    }

    pub fn with_ingredients<I, S>(name: &str, ingredients: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let ingredients = ingredients
            .into_iter()
            .map(|i| checked(i.as_ref(), "ingredient", &INGREDIENT_CHARS))
            .collect::<Result<Vec<_>, _>>()?;
        if ingredients.is_empty() {
            return Err(ModelError::Empty("ingredient set"));
        }
        Ok(Self {
            name: checked(name, "state name", &DECORATION_CHARS)?,
            decoration: Some(Decoration::Ingredients(ingredients)),
        })
    }

    pub fn in_container(name: &str, container: &str) -> Result<Self, ModelError> {
        Ok(Self {
            name: checked(name, "state name", &DECORATION_CHARS)?,
            decoration: Some(Decoration::Container(checked(
                container,
                "container",
                &DECORATION_CHARS,
            )?)),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn decoration(&self) -> Option<&Decoration> {
        self.decoration.as_ref()
    }

    /// Ingredient labels in source order, if this is a `{...}` tag.
    pub fn ingredients(&self) -> Option<&[String]> {
        match &self.decoration {
            Some(Decoration::Ingredients(items)) => Some(items),
            _ => None,
        }
    }

    pub fn container(&self) -> Option<&str> {
        match &self.decoration {
            Some(Decoration::Container(c)) => Some(c),
            _ => None,
        }
    }

    pub fn is_plain(&self) -> bool {
        self.decoration.is_none()
    }

    /// Order-insensitive, case-insensitive rendering used for identity.
    pub(crate) fn canonical(&self) -> String {
        let mut out = fold(&self.name);
        match &self.decoration {
            None => {}
            Some(Decoration::Ingredients(items)) => {
                let set: BTreeSet<String> = items.iter().map(|i| fold(i)).collect();
                out.push('{');
                out.push_str(&set.into_iter().collect::<Vec<_>>().join(","));
                out.push('}');
            }
            Some(Decoration::Container(c)) => {
                out.push('[');
                out.push_str(&fold(c));
                out.push(']');
            }
        }
        out
    }
}

impl PartialEq for StateTag {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for StateTag {}

/// Renders the payload of an `S` line, e.g. `in [cutting board]`.
impl fmt::Display for StateTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        match &self.decoration {
            None => Ok(()),
            Some(Decoration::Ingredients(items)) => write!(f, " {{{}}}", items.join(", ")),
            Some(Decoration::Container(c)) => write!(f, " [{c}]"),
        }
    }
}

/// An object label with its states. Equality ignores state order.
#[derive(Debug, Clone)]
pub struct ObjectNode {
    label: String,
    states: Vec<StateTag>,
}

impl ObjectNode {
    pub fn new(label: &str, states: Vec<StateTag>) -> Result<Self, ModelError> {
        Ok(Self {
            label: checked(label, "object label", &[])?,
            states,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn states(&self) -> &[StateTag] {
        &self.states
    }

    pub fn key(&self) -> String {
        object_key(self)
    }

    /// Whether any state tag carries this name.
    pub fn has_state(&self, name: &str) -> bool {
        let wanted = fold(name);
        self.states.iter().any(|s| fold(&s.name) == wanted)
    }

    /// Union of all `{...}` ingredient sets, folded.
    pub fn ingredient_set(&self) -> BTreeSet<String> {
        self.states
            .iter()
            .filter_map(StateTag::ingredients)
            .flatten()
            .map(|i| fold(i))
            .collect()
    }

    pub fn containers(&self) -> impl Iterator<Item = &str> {
        self.states.iter().filter_map(StateTag::container)
    }
}

impl PartialEq for ObjectNode {
    fn eq(&self, other: &Self) -> bool {
        nodes_equal(self, other)
    }
}

impl Eq for ObjectNode {}

impl std::hash::Hash for ObjectNode {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        object_key(self).hash(state);
    }
}

const KEY_SEP: char = '\u{1f}';

/// Canonical identity string: folded label followed by the sorted canonical
/// state renderings. Separator is a control character, which no label or
/// state may contain.
pub fn object_key(node: &ObjectNode) -> String {
    let mut tags: Vec<String> = node.states.iter().map(StateTag::canonical).collect();
    tags.sort();
    let mut key = fold(&node.label);
    for tag in tags {
        key.push(KEY_SEP);
        key.push_str(&tag);
    }
    key
}

pub fn nodes_equal(a: &ObjectNode, b: &ObjectNode) -> bool {
    fold(&a.label) == fold(&b.label) && {
        let mut sa: Vec<String> = a.states.iter().map(StateTag::canonical).collect();
        let mut sb: Vec<String> = b.states.iter().map(StateTag::canonical).collect();
        sa.sort();
        sb.sort();
        sa == sb
    }
}

/// The single action of a functional unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MotionNode {
    label: String,
}

impl MotionNode {
    pub fn new(label: &str) -> Result<Self, ModelError> {
        Ok(Self {
            label: checked(label, "motion label", &[])?,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Inputs, one motion, outputs.
#[derive(Debug, Clone)]
pub struct FunctionalUnit {
    inputs: Vec<ObjectNode>,
    motion: MotionNode,
    outputs: Vec<ObjectNode>,
}

impl FunctionalUnit {
    pub fn new(
        inputs: Vec<ObjectNode>,
        motion: MotionNode,
        outputs: Vec<ObjectNode>,
    ) -> Result<Self, ModelError> {
        if inputs.is_empty() {
            return Err(ModelError::MissingSide("input"));
        }
        if outputs.is_empty() {
            return Err(ModelError::MissingSide("output"));
        }
        Ok(Self {
            inputs,
            motion,
            outputs,
        })
    }

    pub fn inputs(&self) -> &[ObjectNode] {
        &self.inputs
    }

    pub fn motion(&self) -> &MotionNode {
        &self.motion
    }

    pub fn outputs(&self) -> &[ObjectNode] {
        &self.outputs
    }

    /// Number of directed edges this unit contributes to the graph.
    pub fn edge_count(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    pub(crate) fn key(&self) -> String {
        let side = |nodes: &[ObjectNode]| {
            let mut keys: Vec<String> = nodes.iter().map(object_key).collect();
            keys.sort();
            keys.join("\u{1e}")
        };
        format!(
            "{}\u{1d}{}\u{1d}{}",
            side(&self.inputs),
            self.motion.label,
            side(&self.outputs)
        )
    }
}

impl PartialEq for FunctionalUnit {
    fn eq(&self, other: &Self) -> bool {
        units_equal(self, other)
    }
}

impl Eq for FunctionalUnit {}

pub fn units_equal(a: &FunctionalUnit, b: &FunctionalUnit) -> bool {
    a.key() == b.key()
}

/// A terse goal or kitchen-item description.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ObjectSpec {
    pub label: String,
    pub states: BTreeSet<String>,
    pub ingredients: BTreeSet<String>,
    pub container: Option<String>,
}

impl ObjectSpec {
    pub fn new(label: &str) -> Result<Self, ModelError> {
        Ok(Self {
            label: checked(label, "label", &[])?,
            ..Self::default()
        })
    }

    pub fn with_states<I, S>(mut self, states: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.states = states.into_iter().map(|s| tidy(s.as_ref())).collect();
        self
    }

    pub fn with_ingredients<I, S>(mut self, ingredients: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.ingredients = ingredients.into_iter().map(|s| tidy(s.as_ref())).collect();
        self
    }

    pub fn with_container(mut self, container: Option<&str>) -> Self {
        self.container = container.map(tidy);
        self
    }

    /// The demand a node places on producers: every state name, the union of
    /// its ingredients, and its first container.
    pub fn from_node(node: &ObjectNode) -> Self {
        Self {
            label: node.label.clone(),
            states: node.states.iter().map(|s| s.name.clone()).collect(),
            ingredients: node
                .states
                .iter()
                .filter_map(StateTag::ingredients)
                .flatten()
                .cloned()
                .collect(),
            container: node.containers().next().map(str::to_owned),
        }
    }

    pub(crate) fn folded_states(&self) -> BTreeSet<String> {
        self.states.iter().map(|s| fold(s)).collect()
    }

    pub(crate) fn folded_ingredients(&self) -> BTreeSet<String> {
        self.ingredients.iter().map(|s| fold(s)).collect()
    }

    /// Identity used to memoize a goal during retrieval.
    pub(crate) fn key(&self) -> String {
        let join = |set: BTreeSet<String>| set.into_iter().collect::<Vec<_>>().join(",");
        format!(
            "goal\u{1f}{}\u{1f}{}\u{1f}{}\u{1f}{}",
            fold(&self.label),
            join(self.folded_states()),
            join(self.folded_ingredients()),
            self.container.as_deref().map(fold).unwrap_or_default()
        )
    }
}

impl From<&ObjectNode> for ObjectSpec {
    fn from(node: &ObjectNode) -> Self {
        Self::from_node(node)
    }
}

/// Subset match: every requirement of `spec` is present on `node`.
pub fn matches_spec(node: &ObjectNode, spec: &ObjectSpec) -> bool {
    if fold(&node.label) != fold(&spec.label) {
        return false;
    }
    if !spec.states.iter().all(|s| node.has_state(s)) {
        return false;
    }
    if !spec.ingredients.is_empty() && !spec.folded_ingredients().is_subset(&node.ingredient_set())
    {
        return false;
    }
    match &spec.container {
        None => true,
        Some(c) => {
            let wanted = fold(c);
            node.containers().any(|nc| fold(nc) == wanted)
        }
    }
}
