use std::collections::{BTreeMap, BTreeSet};

use crate::model::{fold, tidy, ObjectSpec};

use super::DocumentError;

/// Starting items plus utensils, which are always available.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Kitchen {
    items: Vec<ObjectSpec>,
    // folded labels
    utensils: BTreeSet<String>,
}

impl Kitchen {
    pub fn new<I, S>(items: Vec<ObjectSpec>, utensils: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self {
            items,
            utensils: utensils
                .into_iter()
                .map(|u| fold(u.as_ref()))
                .filter(|u| !u.is_empty())
                .collect(),
        }
    }

    pub fn items(&self) -> &[ObjectSpec] {
        &self.items
    }

    pub fn utensils(&self) -> &BTreeSet<String> {
        &self.utensils
    }

    pub fn has_utensil(&self, label: &str) -> bool {
        self.utensils.contains(&fold(label))
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty() && self.utensils.is_empty()
    }
}

pub const DEFAULT_MOTION_PROBABILITY: f64 = 0.5;

/// Success probability per motion label.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionProfile {
    probabilities: BTreeMap<String, f64>,
    default_probability: f64,
}

impl Default for MotionProfile {
    fn default() -> Self {
        Self {
            probabilities: BTreeMap::new(),
            default_probability: DEFAULT_MOTION_PROBABILITY,
        }
    }
}

fn check(motion: &str, value: f64) -> Result<f64, DocumentError> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(DocumentError::Probability {
            motion: motion.to_owned(),
            value,
        })
    }
}

impl MotionProfile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_default(default_probability: f64) -> Result<Self, DocumentError> {
        Ok(Self {
            probabilities: BTreeMap::new(),
            default_probability: check("default", default_probability)?,
        })
    }

    pub fn insert(&mut self, motion: &str, probability: f64) -> Result<(), DocumentError> {
        let probability = check(motion, probability)?;
        self.probabilities.insert(tidy(motion), probability);
        Ok(())
    }

    /// Builder form of [`MotionProfile::insert`].
    pub fn with(mut self, motion: &str, probability: f64) -> Result<Self, DocumentError> {
        self.insert(motion, probability)?;
        Ok(self)
    }

    pub fn probability(&self, motion: &str) -> f64 {
        self.probabilities
            .get(&tidy(motion))
            .copied()
            .unwrap_or(self.default_probability)
    }

    pub fn default_probability(&self) -> f64 {
        self.default_probability
    }

    pub fn probabilities(&self) -> &BTreeMap<String, f64> {
        &self.probabilities
    }
}
