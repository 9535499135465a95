use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use super::RetrievalError;

/// Topological order of committed units. `dependencies[u]` lists the units
/// whose outputs `u` consumes. Independent units come out by ascending index.
pub fn order_units(
    dependencies: &BTreeMap<usize, BTreeSet<usize>>,
) -> Result<Vec<usize>, RetrievalError> {
    let mut pending: BTreeMap<usize, usize> = BTreeMap::new();
    let mut dependents: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&unit, deps) in dependencies {
        let known = deps.iter().filter(|d| dependencies.contains_key(d)).count();
        pending.insert(unit, known);
        for &dep in deps.iter().filter(|d| dependencies.contains_key(d)) {
            dependents.entry(dep).or_default().push(unit);
        }
    }

    let mut ready: BinaryHeap<Reverse<usize>> = pending
        .iter()
        .filter(|(_, &n)| n == 0)
        .map(|(&u, _)| Reverse(u))
        .collect();
    let mut order = Vec::with_capacity(dependencies.len());
    while let Some(Reverse(unit)) = ready.pop() {
        order.push(unit);
        for &next in dependents.get(&unit).into_iter().flatten() {
            let count = pending.get_mut(&next).expect("dependent is committed");
            *count -= 1;
            if *count == 0 {
                ready.push(Reverse(next));
            }
        }
    }
    if order.len() != dependencies.len() {
        return Err(RetrievalError::Internal(
            "dependency cycle among committed units".into(),
        ));
    }
    Ok(order)
}
