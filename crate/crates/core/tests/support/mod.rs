//! Test-only helpers: random networks, an exhaustive depth oracle, tree
//! replay and a DOT statement checker. Shared with the CLI acceptance suite.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use foon_core::retrieval::available_spec;
use foon_core::{
    available, matches_spec, object_key, parse_foon, FunctionalUnit, Kitchen, MotionNode, Network,
    ObjectNode, ObjectSpec, StateTag, TaskTree,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub const CUT_BLOCK: &str = "//  \nO cutting board  \nS contains {sweet potato}  \nO sweet potato  \nS peeled  \nS in [cutting board]  \nO knife  \nM cut  \nO sweet potato  \nS chopped  \nS in [cutting board]  \n//\n";

pub const SWEET_POTATO: &str = "\
//
O sweet potato
S whole
M pick-and-place
O sweet potato
S whole
S in [cutting board]
//
O sweet potato
S whole
S in [cutting board]
O peeler
M peel
O sweet potato
S peeled
S in [cutting board]
//
O cutting board
S contains {sweet potato}
O sweet potato
S peeled
S in [cutting board]
O knife
M cut
O sweet potato
S chopped
S in [cutting board]
//
";

pub fn network_from(text: &str) -> Network {
    let (units, diagnostics) = parse_foon(text);
    assert!(diagnostics.is_empty(), "{diagnostics:?}");
    Network::from_units(units)
}

pub fn sweet_potato_kitchen() -> Kitchen {
    Kitchen::new(
        vec![ObjectSpec::new("sweet potato")
            .unwrap()
            .with_states(["whole"])],
        ["knife", "peeler", "cutting board"],
    )
}

pub fn chopped_goal() -> ObjectSpec {
    ObjectSpec::new("sweet potato")
        .unwrap()
        .with_states(["chopped"])
        .with_container(Some("cutting board"))
}

const LABELS: [&str; 7] = ["egg", "milk", "flour", "batter", "pan", "bowl", "cake"];
const STATES: [&str; 3] = ["raw", "mixed", "hot"];
const MOTIONS: [&str; 5] = ["pour", "pick-and-place", "mix", "heat", "cut"];

fn random_node<R: Rng>(rng: &mut R, label: &str) -> ObjectNode {
    let states = if rng.gen_bool(0.6) {
        vec![StateTag::plain(STATES.choose(rng).unwrap()).unwrap()]
    } else {
        Vec::new()
    };
    ObjectNode::new(label, states).unwrap()
}

fn random_unit<R: Rng>(rng: &mut R, output_labels: &[&str]) -> FunctionalUnit {
    let inputs = (0..rng.gen_range(1..=3))
        .map(|_| {
            let label = *LABELS.choose(rng).unwrap();
            random_node(rng, label)
        })
        .collect();
    let outputs = output_labels.iter().map(|l| random_node(rng, l)).collect();
    FunctionalUnit::new(
        inputs,
        MotionNode::new(MOTIONS.choose(rng).unwrap()).unwrap(),
        outputs,
    )
    .unwrap()
}

/// A small retrieval problem.
pub struct Problem {
    pub network: Network,
    pub kitchen: Kitchen,
    pub goal: ObjectSpec,
}

fn random_kitchen<R: Rng>(rng: &mut R) -> Kitchen {
    let items = (0..rng.gen_range(1..=4))
        .map(|_| {
            let states: Vec<&str> = STATES
                .iter()
                .copied()
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            ObjectSpec::new(LABELS.choose(rng).unwrap())
                .unwrap()
                .with_states(states)
        })
        .collect();
    let utensils: Vec<&str> = if rng.gen_bool(0.5) {
        vec!["pan"]
    } else {
        vec![]
    };
    Kitchen::new(items, utensils)
}

fn goal_from<R: Rng>(rng: &mut R, network: &Network) -> ObjectSpec {
    if network.is_empty() {
        return ObjectSpec::new("cake").unwrap();
    }
    let unit = network.unit(rng.gen_range(0..network.len()));
    let node = unit.outputs().choose(rng).unwrap();
    ObjectSpec::from_node(node)
}

/// Up to `max_units` units over a small vocabulary; labels repeat, so
/// objects may have several producers and producers may form cycles.
pub fn random_problem<R: Rng>(rng: &mut R, max_units: usize) -> Problem {
    let count = rng.gen_range(1..=max_units);
    let units: Vec<FunctionalUnit> = (0..count)
        .map(|_| {
            let outputs: Vec<&str> = (0..rng.gen_range(1..=2))
                .map(|_| *LABELS.choose(rng).unwrap())
                .collect();
            random_unit(rng, &outputs)
        })
        .collect();
    let network = Network::from_units(units);
    let goal = goal_from(rng, &network);
    Problem {
        kitchen: random_kitchen(rng),
        goal,
        network,
    }
}

/// Every output label is produced by at most one unit, so every object has
/// at most one producer.
pub fn random_single_producer_problem<R: Rng>(rng: &mut R, max_units: usize) -> Problem {
    let mut labels: Vec<String> = (0..max_units * 2).map(|i| format!("item{i}")).collect();
    labels.shuffle(rng);
    let pool: Vec<String> = labels.clone();
    let count = rng.gen_range(1..=max_units);
    let mut units = Vec::new();
    for _ in 0..count {
        let outputs: Vec<String> = (0..rng.gen_range(1..=2))
            .filter_map(|_| labels.pop())
            .collect();
        if outputs.is_empty() {
            break;
        }
        let inputs: Vec<ObjectNode> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let label = pool.choose(rng).unwrap();
                random_node(rng, label)
            })
            .collect();
        let outputs = outputs.iter().map(|l| random_node(rng, l)).collect();
        units.push(
            FunctionalUnit::new(
                inputs,
                MotionNode::new(MOTIONS.choose(rng).unwrap()).unwrap(),
                outputs,
            )
            .unwrap(),
        );
    }
    let network = Network::from_units(units);
    let mut items = Vec::new();
    for label in &pool {
        let produced = !labels.contains(label);
        if produced && rng.gen_bool(0.3) {
            let states: Vec<&str> = STATES
                .iter()
                .copied()
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            items.push(ObjectSpec::new(label).unwrap().with_states(states));
        } else if !produced && rng.gen_bool(0.85) {
            items.push(ObjectSpec::new(label).unwrap().with_states(STATES));
        }
    }
    let goal = goal_from(rng, &network);
    Problem {
        network,
        kitchen: Kitchen::new(items, Vec::<&str>::new()),
        goal,
    }
}

/// Minimum height over every complete resolution tree of `goal`, by
/// exhaustive recursion over producer choices. A unit may not repeat along a
/// branch. `None` when no complete tree exists.
pub fn min_depth_oracle(network: &Network, kitchen: &Kitchen, goal: &ObjectSpec) -> Option<usize> {
    if available_spec(goal, kitchen) {
        return Some(0);
    }
    let mut memo = HashMap::new();
    producers(network, goal)
        .into_iter()
        .filter_map(|u| unit_height(network, kitchen, u, 1u64 << u, &mut memo))
        .min()
}

fn producers(network: &Network, spec: &ObjectSpec) -> Vec<usize> {
    (0..network.len())
        .filter(|&u| {
            network
                .unit(u)
                .outputs()
                .iter()
                .any(|o| matches_spec(o, spec))
        })
        .collect()
}

fn unit_height(
    network: &Network,
    kitchen: &Kitchen,
    unit: usize,
    path: u64,
    memo: &mut HashMap<(usize, u64), Option<usize>>,
) -> Option<usize> {
    if let Some(&known) = memo.get(&(unit, path)) {
        return known;
    }
    let mut height = 1;
    let mut complete = true;
    for input in network.unit(unit).inputs() {
        if available(input, kitchen) {
            continue;
        }
        let best = producers(network, &ObjectSpec::from_node(input))
            .into_iter()
            .filter(|&p| path & (1 << p) == 0)
            .filter_map(|p| unit_height(network, kitchen, p, path | (1 << p), memo))
            .min();
        match best {
            Some(h) => height = height.max(1 + h),
            None => {
                complete = false;
                break;
            }
        }
    }
    let result = complete.then_some(height);
    memo.insert((unit, path), result);
    result
}

/// Height of the tree when each input is taken from the shallowest earlier
/// unit that makes it, rebuilt from the emitted units alone.
pub fn tree_height(tree: &TaskTree, kitchen: &Kitchen) -> usize {
    let mut heights: Vec<usize> = Vec::new();
    for (i, unit) in tree.units.iter().enumerate() {
        let mut h = 1;
        for input in unit.inputs() {
            if available(input, kitchen) {
                continue;
            }
            let spec = ObjectSpec::from_node(input);
            if let Some(best) = (0..i)
                .filter(|&j| {
                    tree.units[j]
                        .outputs()
                        .iter()
                        .any(|o| matches_spec(o, &spec))
                })
                .map(|j| heights[j])
                .min()
            {
                h = h.max(1 + best);
            }
        }
        heights.push(h);
    }
    heights.last().copied().unwrap_or(0)
}

/// Executes the tree in order: each input must be in the kitchen or made by
/// an earlier unit, no unit repeats, and the last unit makes the goal.
pub fn replay(tree: &TaskTree, kitchen: &Kitchen) -> Result<(), String> {
    let mut produced: Vec<&ObjectNode> = Vec::new();
    let mut seen = HashSet::new();
    for (i, unit) in tree.units.iter().enumerate() {
        let unit_key: Vec<String> = unit
            .inputs()
            .iter()
            .chain(unit.outputs())
            .map(object_key)
            .chain([unit.motion().label().to_owned()])
            .collect();
        if !seen.insert(unit_key) {
            return Err(format!("unit {i} appears twice"));
        }
        for input in unit.inputs() {
            let spec = ObjectSpec::from_node(input);
            if !available(input, kitchen) && !produced.iter().any(|p| matches_spec(p, &spec)) {
                return Err(format!(
                    "unit {i} ({}) needs unavailable {}",
                    unit.motion().label(),
                    input.label()
                ));
            }
        }
        produced.extend(unit.outputs());
    }
    match tree.units.last() {
        None if available_spec(&tree.goal, kitchen) => Ok(()),
        None => Err("empty tree for a goal missing from the kitchen".into()),
        Some(last) if last.outputs().iter().any(|o| matches_spec(o, &tree.goal)) => Ok(()),
        Some(_) => Err("final unit does not produce the goal".into()),
    }
}

/// Checks the statement forms emitted by the DOT exporter against the DOT
/// grammar: `ID [a=v, ...];` and `ID -> ID;` inside `digraph ID { }`.
/// Returns (vertex count, edge count).
pub fn check_dot(text: &str) -> Result<(usize, usize), String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty document")?;
    let name = header
        .strip_prefix("digraph ")
        .and_then(|h| h.strip_suffix(" {"))
        .ok_or_else(|| format!("bad header {header:?}"))?;
    if !is_id(name) {
        return Err(format!("bad graph id {name:?}"));
    }
    if !text.ends_with("}\n") {
        return Err("missing closing brace".into());
    }
    let mut vertices = HashSet::new();
    let mut edges = 0;
    for line in lines {
        if line == "}" {
            continue;
        }
        let stmt = line
            .trim()
            .strip_suffix(';')
            .ok_or_else(|| format!("statement without ';': {line:?}"))?;
        if let Some((from, to)) = stmt.split_once(" -> ") {
            for end in [from, to] {
                if !vertices.contains(end) {
                    return Err(format!("edge to undeclared vertex {end:?}"));
                }
            }
            edges += 1;
        } else {
            let (id, attrs) = stmt
                .split_once(" [")
                .ok_or_else(|| format!("bad node statement {stmt:?}"))?;
            if !is_id(id) {
                return Err(format!("bad vertex id {id:?}"));
            }
            let attrs = attrs
                .strip_suffix(']')
                .ok_or_else(|| format!("unterminated attributes {stmt:?}"))?;
            check_attrs(attrs)?;
            if !vertices.insert(id.to_owned()) {
                return Err(format!("vertex {id:?} declared twice"));
            }
        }
    }
    Ok((vertices.len(), edges))
}

fn is_id(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_attrs(attrs: &str) -> Result<(), String> {
    let mut rest = attrs;
    loop {
        let (key, after) = rest
            .split_once('=')
            .ok_or_else(|| format!("attribute without '=' in {attrs:?}"))?;
        if !is_id(key.trim()) {
            return Err(format!("bad attribute name {key:?}"));
        }
        let after = after.trim_start();
        let consumed = if let Some(quoted) = after.strip_prefix('"') {
            let mut escaped = false;
            let end = quoted
                .char_indices()
                .find(|&(_, c)| {
                    let close = c == '"' && !escaped;
                    escaped = c == '\\' && !escaped;
                    close
                })
                .map(|(i, _)| i)
                .ok_or_else(|| format!("unterminated string in {attrs:?}"))?;
            1 + end + 1
        } else {
            let end = after.find(',').unwrap_or(after.len());
            if !is_id(after[..end].trim()) {
                return Err(format!("bad bare value in {attrs:?}"));
            }
            end
        };
        rest = after[consumed..].trim_start();
        if rest.is_empty() {
            return Ok(());
        }
        rest = rest
            .strip_prefix(',')
            .ok_or_else(|| format!("expected ',' in {attrs:?}"))?
            .trim_start();
    }
}
