//! Iterative deepening retrieval.
//!
//! Depth counts functional-unit hops from the goal. For each bound a
//! depth-first search with full backtracking runs over an agenda of pending
//! items; producers are tried in ascending unit index.

use crate::io::Kitchen;
use crate::model::ObjectSpec;
use crate::network::Network;

use super::search::{Item, Search};
use super::{Algorithm, RetrievalConfig, RetrievalError, TaskTree};

enum Task {
    Resolve { item: Item, depth: usize },
    Finish { unit: usize },
}

/// Pops and runs tasks until the agenda is empty. On failure the agenda and
/// search state are left exactly as they were on entry.
fn solve(search: &mut Search<'_>, agenda: &mut Vec<Task>, bound: usize) -> bool {
    let Some(task) = agenda.pop() else {
        return true;
    };
    let solved = match task {
        Task::Finish { unit } => {
            let mark = search.mark();
            let (key, _) = search.leave();
            search.commit(unit, &key);
            if solve(search, agenda, bound) {
                true
            } else {
                search.rollback(mark);
                search.enter(key, unit);
                false
            }
        }
        Task::Resolve { item, depth } => resolve(search, agenda, bound, item, depth),
    };
    if !solved {
        agenda.push(task);
    }
    solved
}

fn resolve(
    search: &mut Search<'_>,
    agenda: &mut Vec<Task>,
    bound: usize,
    item: Item,
    depth: usize,
) -> bool {
    let info = search.info(item);
    if info.available {
        return solve(search, agenda, bound);
    }
    if let Some(unit) = search.resolution(&info.key) {
        // a shared subtree must still fit under the bound from here
        return depth + search.height(unit) <= bound && solve(search, agenda, bound);
    }
    if depth >= bound {
        return false;
    }
    for &unit in &info.candidates {
        if !search.admissible(unit, &info.key) {
            continue;
        }
        if search.is_committed(unit) {
            if depth + search.height(unit) > bound {
                continue;
            }
            let mark = search.mark();
            search.reuse(&info.key, unit);
            if solve(search, agenda, bound) {
                return true;
            }
            search.rollback(mark);
            continue;
        }
        let base = agenda.len();
        search.enter(info.key.clone(), unit);
        agenda.push(Task::Finish { unit });
        for slot in (0..search.input_count(unit)).rev() {
            agenda.push(Task::Resolve {
                item: Item::Input { unit, slot },
                depth: depth + 1,
            });
        }
        if solve(search, agenda, bound) {
            return true;
        }
        agenda.truncate(base);
        search.leave();
    }
    false
}

pub fn retrieve_ids(
    network: &Network,
    goal: &ObjectSpec,
    kitchen: &Kitchen,
    config: &RetrievalConfig,
) -> Result<TaskTree, RetrievalError> {
    if config.algorithm != Algorithm::Ids {
        return Err(RetrievalError::WrongAlgorithm(config.algorithm));
    }
    let max_depth = config.max_depth.resolve(network);
    let mut search = Search::new(network, goal, kitchen);
    let info = search.info(Item::Goal);
    if info.available {
        return search.into_tree(Algorithm::Ids, Some(0));
    }
    if info.candidates.is_empty() {
        return Err(RetrievalError::GoalNotFound(goal.label.clone()));
    }
    for bound in 1..=max_depth {
        let mut agenda = vec![Task::Resolve {
            item: Item::Goal,
            depth: 0,
        }];
        if solve(&mut search, &mut agenda, bound) {
            return search.into_tree(Algorithm::Ids, Some(bound));
        }
    }
    Err(RetrievalError::Unreachable(goal.label.clone()))
}
