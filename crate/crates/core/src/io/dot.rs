//! Graphviz export.

use std::collections::HashMap;
use std::fmt::Write;

use crate::model::{object_key, FunctionalUnit, ObjectNode};

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

fn object_label(node: &ObjectNode) -> String {
    let states: Vec<String> = node.states().iter().map(ToString::to_string).collect();
    format!(
        "{}\\n[{}]",
        escape(node.label()),
        escape(&states.join(", "))
    )
}

/// Renders units as a digraph: one green ellipse per distinct object, one red
/// box per unit, edges input -> motion -> output. Accepts a whole network's
/// units or a task tree's.
pub fn export_dot(units: &[FunctionalUnit]) -> String {
    let mut out = String::from("digraph foon {\n");
    let mut ids: HashMap<String, usize> = HashMap::new();

    for (index, unit) in units.iter().enumerate() {
        let mut vertex = |out: &mut String, node: &ObjectNode| -> usize {
            let next = ids.len();
            *ids.entry(object_key(node)).or_insert_with(|| {
                let _ = writeln!(
                    out,
                    "  o{next} [label=\"{}\", shape=ellipse, style=filled, fillcolor=green];",
                    object_label(node)
                );
                next
            })
        };
        let inputs: Vec<usize> = unit.inputs().iter().map(|n| vertex(&mut out, n)).collect();
        let _ = writeln!(
            out,
            "  m{index} [label=\"{}_{index}\", shape=box, style=filled, fillcolor=red];",
            escape(unit.motion().label())
        );
        let outputs: Vec<usize> = unit.outputs().iter().map(|n| vertex(&mut out, n)).collect();
        for input in inputs {
            let _ = writeln!(out, "  o{input} -> m{index};");
        }
        for output in outputs {
            let _ = writeln!(out, "  m{index} -> o{output};");
        }
    }
    out.push_str("}\n");
    out
}
