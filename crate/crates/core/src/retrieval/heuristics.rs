use std::cmp::Ordering;

use crate::io::MotionProfile;
use crate::model::FunctionalUnit;

use super::RetrievalError;

/// Motion success probability; higher is better.
pub fn h1_score(unit: &FunctionalUnit, profile: &MotionProfile) -> f64 {
    profile.probability(unit.motion().label())
}

/// Number of inputs; lower is better.
pub fn h2_score(unit: &FunctionalUnit) -> usize {
    unit.inputs().len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Max,
    Min,
}

/// Candidates sorted best-first under `objective`, ties by ascending index.
///
/// `scores[i]` belongs to `candidates[i]`.
pub fn rank_candidates<S: PartialOrd>(
    candidates: &[usize],
    scores: &[S],
    objective: Objective,
) -> Vec<usize> {
    assert_eq!(candidates.len(), scores.len(), "one score per candidate");
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&a, &b| {
        let by_score = scores[a].partial_cmp(&scores[b]).unwrap_or(Ordering::Equal);
        let by_score = match objective {
            Objective::Max => by_score.reverse(),
            Objective::Min => by_score,
        };
        by_score.then(candidates[a].cmp(&candidates[b]))
    });
    order.into_iter().map(|i| candidates[i]).collect()
}

/// The single best candidate; lowest unit index wins ties.
pub fn select_candidate<S: PartialOrd>(
    candidates: &[usize],
    scores: &[S],
    objective: Objective,
) -> Result<usize, RetrievalError> {
    rank_candidates(candidates, scores, objective)
        .first()
        .copied()
        .ok_or(RetrievalError::NoProducer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::{cut_unit, plain};
    use crate::model::MotionNode;

    fn unit(motion: &str, inputs: &[&str]) -> FunctionalUnit {
        FunctionalUnit::new(
            inputs.iter().map(|l| plain(l, &[])).collect(),
            MotionNode::new(motion).unwrap(),
            vec![plain("omelette", &["cooked"])],
        )
        .unwrap()
    }

    fn reference_profile() -> MotionProfile {
        MotionProfile::new()
            .with("pour", 0.90)
            .unwrap()
            .with("pick-and-place", 0.80)
            .unwrap()
    }

    #[test]
    fn h1_scores() {
        let profile = reference_profile();
        assert_eq!(h1_score(&unit("pour", &["egg"]), &profile), 0.90);
        assert_eq!(h1_score(&unit("pick-and-place", &["egg"]), &profile), 0.80);
        assert_eq!(h1_score(&unit("cut", &["egg"]), &MotionProfile::new()), 0.5);
    }

    #[test]
    fn h2_scores() {
        assert_eq!(h2_score(&cut_unit()), 3);
        assert_eq!(h2_score(&unit("fry", &["egg"])), 1);
        let with_onions = unit("fry", &["egg", "pan", "onion"]);
        let without = unit("fry", &["egg", "pan"]);
        assert!(h2_score(&with_onions) > h2_score(&without));
        let scores = [h2_score(&with_onions), h2_score(&without)];
        assert_eq!(
            select_candidate(&[0, 1], &scores, Objective::Min).unwrap(),
            1
        );
    }

    #[test]
    fn selection() {
        assert_eq!(
            select_candidate(&[4, 7], &[0.80, 0.90], Objective::Max).unwrap(),
            7
        );
        assert_eq!(
            select_candidate(&[3], &[1usize], Objective::Min).unwrap(),
            3
        );
        assert_eq!(
            select_candidate(&[9, 2], &[0.5, 0.5], Objective::Max).unwrap(),
            2
        );
        assert_eq!(
            select_candidate::<f64>(&[], &[], Objective::Max),
            Err(RetrievalError::NoProducer)
        );
    }

    #[test]
    fn ranking_is_total() {
        let ranked = rank_candidates(&[5, 1, 3, 0], &[2usize, 3, 2, 1], Objective::Min);
        assert_eq!(ranked, vec![0, 3, 5, 1]);
    }
}
