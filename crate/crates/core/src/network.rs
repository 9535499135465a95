//! The universal network: deduplicated functional units plus producer lookup.

use std::collections::{BTreeMap, HashMap};

use crate::model::{fold, matches_spec, object_key, FunctionalUnit, ObjectSpec};

/// Result of [`Network::add_unit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insertion {
    Inserted,
    Duplicate,
}

/// Units in first-seen order with an index from output identity to producers.
///
/// Built by a single writer, then shared read-only.
#[derive(Debug, Clone, Default)]
pub struct Network {
    units: Vec<FunctionalUnit>,
    producer_index: BTreeMap<String, Vec<usize>>,
    // folded label -> units with an output carrying that label
    label_index: HashMap<String, Vec<usize>>,
    unit_keys: HashMap<String, usize>,
}

impl Network {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_units<I: IntoIterator<Item = FunctionalUnit>>(units: I) -> Self {
        let mut network = Self::new();
        for unit in units {
            network.add_unit(unit);
        }
        network
    }

    pub fn units(&self) -> &[FunctionalUnit] {
        &self.units
    }

    pub fn unit(&self, index: usize) -> &FunctionalUnit {
        &self.units[index]
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn producer_index(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.producer_index
    }

    /// Appends `unit` unless an equal unit is already stored.
    pub fn add_unit(&mut self, unit: FunctionalUnit) -> (usize, Insertion) {
        let key = unit.key();
        if let Some(&existing) = self.unit_keys.get(&key) {
            return (existing, Insertion::Duplicate);
        }
        let index = self.units.len();
        for output in unit.outputs() {
            let producers = self.producer_index.entry(object_key(output)).or_default();
            if producers.last() != Some(&index) {
                producers.push(index);
            }
            let by_label = self.label_index.entry(fold(output.label())).or_default();
            if by_label.last() != Some(&index) {
                by_label.push(index);
            }
        }
        self.unit_keys.insert(key, index);
        self.units.push(unit);
        (index, Insertion::Inserted)
    }

    /// Producer index recomputed from the stored units alone.
    pub fn rebuild_producer_index(&self) -> BTreeMap<String, Vec<usize>> {
        let mut index: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (i, unit) in self.units.iter().enumerate() {
            for output in unit.outputs() {
                let producers = index.entry(object_key(output)).or_default();
                if producers.last() != Some(&i) {
                    producers.push(i);
                }
            }
        }
        index
    }

    /// Ascending indices of units with an output matching `spec`.
    pub fn producers_of(&self, spec: &ObjectSpec) -> Vec<usize> {
        let Some(candidates) = self.label_index.get(&fold(&spec.label)) else {
            return Vec::new();
        };
        candidates
            .iter()
            .copied()
            .filter(|&i| {
                self.units[i]
                    .outputs()
                    .iter()
                    .any(|o| matches_spec(o, spec))
            })
            .collect()
    }

    /// Directed edge count of the whole graph.
    pub fn edge_count(&self) -> usize {
        self.units.iter().map(FunctionalUnit::edge_count).sum()
    }
}

/// Free-function form of [`Network::producers_of`].
pub fn producers_of(network: &Network, spec: &ObjectSpec) -> Vec<usize> {
    network.producers_of(spec)
}

/// Combines networks in argument order, dropping duplicate units.
pub fn merge(networks: &[Network]) -> Network {
    let mut merged = Network::new();
    for network in networks {
        for unit in network.units() {
            merged.add_unit(unit.clone());
        }
    }
    merged
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::model::MotionNode;

    fn pick_and_place() -> FunctionalUnit {
        FunctionalUnit::new(
            vec![plain("sweet potato", &["whole"])],
            MotionNode::new("pick-and-place").unwrap(),
            vec![in_board("sweet potato", "whole")],
        )
        .unwrap()
    }

    fn peel() -> FunctionalUnit {
        FunctionalUnit::new(
            vec![in_board("sweet potato", "whole"), plain("peeler", &[])],
            MotionNode::new("peel").unwrap(),
            vec![in_board("sweet potato", "peeled")],
        )
        .unwrap()
    }

    fn fixture() -> Network {
        Network::from_units([pick_and_place(), peel(), cut_unit()])
    }

    #[test]
    fn add_to_empty_and_duplicate() {
        let mut network = Network::new();
        assert_eq!(network.add_unit(cut_unit()), (0, Insertion::Inserted));
        assert_eq!(network.add_unit(cut_unit()), (0, Insertion::Duplicate));
        assert_eq!(network.len(), 1);
    }

    #[test]
    fn fixture_producer_index() {
        let network = fixture();
        let chopped = object_key(&in_board("sweet potato", "chopped"));
        assert_eq!(network.producer_index()[&chopped], vec![2]);
        assert_eq!(network.producer_index(), &network.rebuild_producer_index());
        assert_eq!(network.edge_count(), 2 + 3 + 4);
    }

    #[test]
    fn producers_lookup() {
        let network = fixture();
        let spec = ObjectSpec::new("sweet potato")
            .unwrap()
            .with_states(["chopped"])
            .with_container(Some("cutting board"));
        assert_eq!(network.producers_of(&spec), vec![2]);
        assert!(Network::new().producers_of(&spec).is_empty());

        // the bare label matches every sweet potato output
        let any = ObjectSpec::new("sweet potato").unwrap();
        assert_eq!(producers_of(&network, &any), vec![0, 1, 2]);
    }

    #[test]
    fn two_alternative_producers() {
        let mut network = fixture();
        let alt = FunctionalUnit::new(
            vec![in_board("sweet potato", "whole"), plain("knife", &[])],
            MotionNode::new("peel").unwrap(),
            vec![in_board("sweet potato", "peeled")],
        )
        .unwrap();
        network.add_unit(alt);
        let spec = ObjectSpec::new("sweet potato")
            .unwrap()
            .with_states(["peeled"]);
        assert_eq!(network.producers_of(&spec), vec![1, 3]);
    }

    #[test]
    fn merge_cases() {
        assert!(merge(&[]).is_empty());

        let a = fixture();
        let twice = merge(&[a.clone(), a.clone()]);
        assert_eq!(twice.units(), a.units());

        // two 2-unit subgraphs sharing the pick-and-place unit
        let left = Network::from_units([pick_and_place(), peel()]);
        let right = Network::from_units([
            pick_and_place(),
            FunctionalUnit::new(
                vec![in_board("sweet potato", "whole"), plain("knife", &[])],
                MotionNode::new("slice").unwrap(),
                vec![in_board("sweet potato", "sliced")],
            )
            .unwrap(),
        ]);
        let merged = merge(&[left, right]);
        assert_eq!(merged.len(), 2 + 2 - 1);
        assert_eq!(merged.unit(2).motion().label(), "slice");
    }
}
