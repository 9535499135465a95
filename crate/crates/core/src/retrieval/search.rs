//! Bookkeeping shared by the retrieval algorithms: item lookup, the cycle
//! guard, commitments with an undo trail, and tree assembly.

use std::cell::OnceCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use crate::io::Kitchen;
use crate::model::{object_key, ObjectSpec};
use crate::network::Network;

use super::{available, available_spec, order_units, Algorithm, RetrievalError, TaskTree};

/// Something a retrieval must obtain: the goal, or one input of a unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Item {
    Goal,
    Input { unit: usize, slot: usize },
}

pub(crate) struct ItemInfo {
    pub key: String,
    pub available: bool,
    /// Ascending producer indices.
    pub candidates: Vec<usize>,
}

struct UnitKeys {
    inputs: Vec<String>,
    outputs: Vec<String>,
}

struct Commitment {
    deps: BTreeSet<usize>,
    height: usize,
}

enum Undo {
    Commit(usize),
    Resolve(String),
}

/// One candidate selection, recorded for inspection.
#[derive(Debug, Clone, PartialEq)]
pub struct CommitStep {
    /// Identity key of the item being resolved.
    pub item: String,
    pub chosen: usize,
    /// Admissible candidates still untried at this point, best first.
    pub alternatives: Vec<usize>,
}

pub(crate) struct Search<'a> {
    pub network: &'a Network,
    kitchen: &'a Kitchen,
    goal: &'a ObjectSpec,
    items: HashMap<Item, Rc<ItemInfo>>,
    unit_keys: Vec<OnceCell<UnitKeys>>,
    committed: BTreeMap<usize, Commitment>,
    resolved: HashMap<String, usize>,
    trail: Vec<Undo>,
    /// Keys of the items currently being resolved, outermost first.
    chain: Vec<String>,
    /// Units currently being expanded, outermost first.
    path: Vec<usize>,
    pub trace: Vec<CommitStep>,
}

impl<'a> Search<'a> {
    pub fn new(network: &'a Network, goal: &'a ObjectSpec, kitchen: &'a Kitchen) -> Self {
        Self {
            network,
            kitchen,
            goal,
            items: HashMap::new(),
            unit_keys: (0..network.len()).map(|_| OnceCell::new()).collect(),
            committed: BTreeMap::new(),
            resolved: HashMap::new(),
            trail: Vec::new(),
            chain: Vec::new(),
            path: Vec::new(),
            trace: Vec::new(),
        }
    }

    pub fn info(&mut self, item: Item) -> Rc<ItemInfo> {
        if let Some(info) = self.items.get(&item) {
            return Rc::clone(info);
        }
        let info = match item {
            Item::Goal => ItemInfo {
                key: self.goal.key(),
                available: available_spec(self.goal, self.kitchen),
                candidates: self.network.producers_of(self.goal),
            },
            Item::Input { unit, slot } => {
                let node = &self.network.unit(unit).inputs()[slot];
                ItemInfo {
                    key: object_key(node),
                    available: available(node, self.kitchen),
                    candidates: self.network.producers_of(&ObjectSpec::from_node(node)),
                }
            }
        };
        let info = Rc::new(info);
        self.items.insert(item, Rc::clone(&info));
        info
    }

    fn keys(&self, unit: usize) -> &UnitKeys {
        self.unit_keys[unit].get_or_init(|| {
            let u = self.network.unit(unit);
            UnitKeys {
                inputs: u.inputs().iter().map(object_key).collect(),
                outputs: u.outputs().iter().map(object_key).collect(),
            }
        })
    }

    pub fn input_count(&self, unit: usize) -> usize {
        self.network.unit(unit).inputs().len()
    }

    /// Cycle guard. A unit is out while it is being expanded, while one of
    /// its outputs is an item on the active chain, or when it consumes the
    /// item being resolved or any item on the chain.
    pub fn admissible(&self, unit: usize, item_key: &str) -> bool {
        if self.path.contains(&unit) {
            return false;
        }
        let keys = self.keys(unit);
        let on_chain = |k: &String| self.chain.iter().any(|c| c == k);
        !keys.outputs.iter().any(on_chain)
            && !keys.inputs.iter().any(|k| k == item_key || on_chain(k))
    }

    pub fn resolution(&self, key: &str) -> Option<usize> {
        self.resolved.get(key).copied()
    }

    pub fn is_committed(&self, unit: usize) -> bool {
        self.committed.contains_key(&unit)
    }

    pub fn height(&self, unit: usize) -> usize {
        self.committed[&unit].height
    }

    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    pub fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail longer than mark") {
                Undo::Commit(unit) => {
                    self.committed.remove(&unit);
                }
                Undo::Resolve(key) => {
                    self.resolved.remove(&key);
                }
            }
        }
    }

    pub fn enter(&mut self, key: String, unit: usize) {
        self.chain.push(key);
        self.path.push(unit);
    }

    pub fn leave(&mut self) -> (String, usize) {
        let key = self.chain.pop().expect("chain underflow");
        let unit = self.path.pop().expect("path underflow");
        (key, unit)
    }

    fn record_resolution(&mut self, key: &str, unit: usize) {
        if !self.resolved.contains_key(key) {
            self.resolved.insert(key.to_owned(), unit);
            self.trail.push(Undo::Resolve(key.to_owned()));
        }
    }

    /// Marks `key` as satisfied by an already committed unit.
    pub fn reuse(&mut self, key: &str, unit: usize) {
        self.record_resolution(key, unit);
    }

    /// Commits `unit` after all its inputs are resolved; it then satisfies
    /// the item `key`.
    pub fn commit(&mut self, unit: usize, key: &str) {
        let mut deps = BTreeSet::new();
        let mut height = 1;
        for slot in 0..self.input_count(unit) {
            let info = self.info(Item::Input { unit, slot });
            if info.available {
                continue;
            }
            let producer = self
                .resolution(&info.key)
                .expect("input resolved before its consumer commits");
            deps.insert(producer);
            height = height.max(1 + self.height(producer));
        }
        self.committed.insert(unit, Commitment { deps, height });
        self.trail.push(Undo::Commit(unit));
        self.record_resolution(key, unit);
    }

    pub fn into_tree(
        self,
        algorithm: Algorithm,
        depth_reached: Option<usize>,
    ) -> Result<TaskTree, RetrievalError> {
        let dependencies: BTreeMap<usize, BTreeSet<usize>> = self
            .committed
            .iter()
            .map(|(&u, c)| (u, c.deps.clone()))
            .collect();
        let order = order_units(&dependencies)?;
        Ok(TaskTree {
            goal: self.goal.clone(),
            algorithm,
            units: order
                .iter()
                .map(|&u| self.network.unit(u).clone())
                .collect(),
            unit_indices: order,
            depth_reached,
        })
    }
}
