//! Synthetic layered networks for the benches.

use foon_core::{FunctionalUnit, Kitchen, MotionNode, Network, ObjectNode, ObjectSpec, StateTag};

const MOTIONS: [&str; 4] = ["pour", "mix", "cut", "pick-and-place"];

fn node(layer: usize, slot: usize) -> ObjectNode {
    let state = StateTag::plain(&format!("stage {layer}")).expect("valid state");
    ObjectNode::new(&format!("item {slot}"), vec![state]).expect("valid node")
}

/// `layers` layers of `width` objects. Every object above layer 0 has two
/// producers: one consuming two objects of the layer below and one consuming
/// three. Layer 0 is the kitchen.
pub struct Layered {
    pub network: Network,
    pub kitchen: Kitchen,
    pub goal: ObjectSpec,
}

pub fn layered(layers: usize, width: usize) -> Layered {
    assert!(layers >= 1 && width >= 3);
    let mut units = Vec::new();
    for layer in 1..=layers {
        for slot in 0..width {
            for (variant, arity) in [2usize, 3].into_iter().enumerate() {
                let inputs = (0..arity)
                    .map(|k| node(layer - 1, (slot + k + variant) % width))
                    .collect();
                let motion = MOTIONS[(slot + layer + variant) % MOTIONS.len()];
                units.push(
                    FunctionalUnit::new(
                        inputs,
                        MotionNode::new(motion).expect("valid motion"),
                        vec![node(layer, slot)],
                    )
                    .expect("nonempty sides"),
                );
            }
        }
    }
    let items = (0..width)
        .map(|slot| {
            ObjectSpec::new(&format!("item {slot}"))
                .expect("valid label")
                .with_states(["stage 0"])
        })
        .collect();
    Layered {
        network: Network::from_units(units),
        kitchen: Kitchen::new(items, Vec::<&str>::new()),
        goal: ObjectSpec::from_node(&node(layers, 0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use foon_core::{retrieve, Algorithm, RetrievalConfig};

    #[test]
    fn every_algorithm_reaches_the_top() {
        let problem = layered(4, 5);
        assert_eq!(problem.network.len(), 40);
        for algorithm in Algorithm::ALL {
            let tree = retrieve(
                &problem.network,
                &problem.goal,
                &problem.kitchen,
                &RetrievalConfig::new(algorithm),
            )
            .unwrap();
            assert!(!tree.is_empty());
        }
    }
}
