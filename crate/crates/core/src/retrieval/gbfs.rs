//! Greedy best-first retrieval.
//!
//! Each unresolved item commits to its best-scoring admissible producer. If
//! that producer's inputs cannot all be resolved, the commitment is undone
//! and the next-best producer for the same item is tried.

use crate::io::{Kitchen, MotionProfile};
use crate::model::ObjectSpec;
use crate::network::Network;

use super::heuristics::{h1_score, h2_score, rank_candidates, Objective};
use super::search::{CommitStep, Item, Search};
use super::{Algorithm, RetrievalConfig, RetrievalError, TaskTree};

enum Scoring<'p> {
    SuccessRate(&'p MotionProfile),
    FewestInputs,
}

impl Scoring<'_> {
    fn rank(&self, network: &Network, candidates: &[usize]) -> Vec<usize> {
        match self {
            Scoring::SuccessRate(profile) => {
                let scores: Vec<f64> = candidates
                    .iter()
                    .map(|&u| h1_score(network.unit(u), profile))
                    .collect();
                rank_candidates(candidates, &scores, Objective::Max)
            }
            Scoring::FewestInputs => {
                let scores: Vec<usize> = candidates
                    .iter()
                    .map(|&u| h2_score(network.unit(u)))
                    .collect();
                rank_candidates(candidates, &scores, Objective::Min)
            }
        }
    }
}

fn resolve(search: &mut Search<'_>, scoring: &Scoring<'_>, item: Item) -> bool {
    let info = search.info(item);
    if info.available || search.resolution(&info.key).is_some() {
        return true;
    }
    let admissible: Vec<usize> = info
        .candidates
        .iter()
        .copied()
        .filter(|&u| search.admissible(u, &info.key))
        .collect();
    let ranked = scoring.rank(search.network, &admissible);

    for (position, &unit) in ranked.iter().enumerate() {
        search.trace.push(CommitStep {
            item: info.key.clone(),
            chosen: unit,
            alternatives: ranked[position + 1..].to_vec(),
        });
        if search.is_committed(unit) {
            search.reuse(&info.key, unit);
            return true;
        }
        let mark = search.mark();
        search.enter(info.key.clone(), unit);
        let resolved = (0..search.input_count(unit))
            .all(|slot| resolve(search, scoring, Item::Input { unit, slot }));
        search.leave();
        if resolved {
            search.commit(unit, &info.key);
            return true;
        }
        search.rollback(mark);
    }
    false
}

/// Greedy best-first retrieval, also returning every candidate selection.
pub fn retrieve_gbfs_traced(
    network: &Network,
    goal: &ObjectSpec,
    kitchen: &Kitchen,
    config: &RetrievalConfig,
) -> Result<(TaskTree, Vec<CommitStep>), RetrievalError> {
    let scoring = match config.algorithm {
        Algorithm::GbfsH1 => Scoring::SuccessRate(&config.motion_profile),
        Algorithm::GbfsH2 => Scoring::FewestInputs,
        Algorithm::Ids => return Err(RetrievalError::WrongAlgorithm(config.algorithm)),
    };
    let mut search = Search::new(network, goal, kitchen);
    let info = search.info(Item::Goal);
    if !info.available && info.candidates.is_empty() {
        return Err(RetrievalError::GoalNotFound(goal.label.clone()));
    }
    if !resolve(&mut search, &scoring, Item::Goal) {
        return Err(RetrievalError::Unreachable(goal.label.clone()));
    }
    let trace = std::mem::take(&mut search.trace);
    Ok((search.into_tree(config.algorithm, None)?, trace))
}

pub fn retrieve_gbfs(
    network: &Network,
    goal: &ObjectSpec,
    kitchen: &Kitchen,
    config: &RetrievalConfig,
) -> Result<TaskTree, RetrievalError> {
    retrieve_gbfs_traced(network, goal, kitchen, config).map(|(tree, _)| tree)
}
