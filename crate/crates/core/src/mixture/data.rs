//! Choice records and their compression into per-subject decision counts.
//!
//! A decision is identified by its game, the role it was taken in and the
//! chosen action. The chosen action is compared with the alternative by the
//! best veil strategy consistent with each, so a decision's likelihood
//! depends on the parameters only through that comparison.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::choice::ChoiceModel;
use super::games::{eval_affine, strategy_index, Affine, BinaryGame};
use crate::curve::PayoffCurve;
use crate::error::{Error, Result};
use crate::preferences::PreferenceParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Role {
    /// Proposer-side (first mover) decision.
    #[serde(rename = "P")]
    Proposer,
    /// Responder-side (second mover) decision.
    #[serde(rename = "R")]
    Responder,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Proposer => "P",
            Role::Responder => "R",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceRecord {
    pub subject_id: String,
    pub game_id: String,
    pub role: Role,
    pub action: usize,
}

/// One kind of decision: `(game, role, chosen action)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecisionKind {
    pub game: usize,
    pub role: Role,
    pub action: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Subject {
    pub id: String,
    /// `(decision kind index, count)`, sorted by kind.
    pub counts: Vec<(usize, u32)>,
}

impl Subject {
    pub fn decisions(&self) -> u32 {
        self.counts.iter().map(|c| c.1).sum()
    }
}

/// Validated choice data against a fixed list of games.
#[derive(Debug, Clone)]
pub struct ChoiceData {
    games: Vec<BinaryGame>,
    kinds: Vec<DecisionKind>,
    subjects: Vec<Subject>,
}

impl ChoiceData {
    /// Checks ids, actions and uniqueness of `(subject, game, role)`;
    /// subjects are ordered by id.
    pub fn new(games: Vec<BinaryGame>, records: &[ChoiceRecord]) -> Result<Self> {
        if games.is_empty() {
            return Err(Error::Empty("no games supplied".into()));
        }
        let mut game_index = HashMap::new();
        for (i, g) in games.iter().enumerate() {
            g.validate()?;
            if game_index.insert(g.id.as_str(), i).is_some() {
                return Err(Error::domain(format!("duplicate game id `{}`", g.id)));
            }
        }
        if records.is_empty() {
            return Err(Error::Empty("no choice records".into()));
        }
        let mut per_subject: BTreeMap<&str, BTreeMap<(usize, Role), usize>> = BTreeMap::new();
        for r in records {
            let g = *game_index
                .get(r.game_id.as_str())
                .ok_or_else(|| Error::domain(format!("record for subject `{}` names unknown game `{}`", r.subject_id, r.game_id)))?;
            if r.action > 1 {
                return Err(Error::domain(format!("action must be 0 or 1, got {}", r.action)));
            }
            let seen = per_subject.entry(r.subject_id.as_str()).or_default();
            if seen.insert((g, r.role), r.action).is_some() {
                return Err(Error::DuplicateId(format!("{} / {} / {}", r.subject_id, r.game_id, r.role.as_str())));
            }
        }
        let mut kinds: Vec<DecisionKind> =
            per_subject.values().flat_map(|m| m.iter().map(|(&(game, role), &action)| DecisionKind { game, role, action })).collect();
        kinds.sort();
        kinds.dedup();
        let kind_index: HashMap<DecisionKind, usize> = kinds.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let subjects = per_subject
            .into_iter()
            .map(|(id, m)| {
                let mut counts: Vec<(usize, u32)> =
                    m.into_iter().map(|((game, role), action)| (kind_index[&DecisionKind { game, role, action }], 1)).collect();
                counts.sort();
                Subject { id: id.to_string(), counts }
            })
            .collect();
        Ok(Self { games, kinds, subjects })
    }

    pub fn games(&self) -> &[BinaryGame] {
        &self.games
    }

    pub fn kinds(&self) -> &[DecisionKind] {
        &self.kinds
    }

    pub fn subjects(&self) -> &[Subject] {
        &self.subjects
    }

    pub fn n_subjects(&self) -> usize {
        self.subjects.len()
    }

    pub fn n_decisions(&self) -> usize {
        self.subjects.iter().map(|s| s.decisions() as usize).sum()
    }

    /// A data set made of the subjects at `indices`, repeats allowed.
    pub fn resample(&self, indices: &[usize]) -> Self {
        let subjects = indices
            .iter()
            .enumerate()
            .map(|(j, &i)| Subject { id: format!("{}#{j}", self.subjects[i].id), counts: self.subjects[i].counts.clone() })
            .collect();
        Self { games: self.games.clone(), kinds: self.kinds.clone(), subjects }
    }

    pub(crate) fn evaluator(&self, curve: PayoffCurve) -> KindEvaluator {
        KindEvaluator { coefs: self.games.iter().map(|g| g.affine_utilities(curve)).collect(), kinds: self.kinds.clone() }
    }
}

/// Utility pairs `(chosen, alternative)` for every decision kind.
#[derive(Debug, Clone)]
pub(crate) struct KindEvaluator {
    coefs: Vec<[Affine; 4]>,
    kinds: Vec<DecisionKind>,
}

impl KindEvaluator {
    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn utility_pairs(&self, p: &PreferenceParams, out: &mut Vec<(f64, f64)>) {
        let u: Vec<[f64; 4]> = self.coefs.iter().map(|c| eval_affine(c, p)).collect();
        out.clear();
        out.extend(self.kinds.iter().map(|k| best_pair(&u[k.game], k.role, k.action)));
    }

    /// `ln P(decision)` for every kind.
    pub fn log_probs(&self, model: ChoiceModel, p: &PreferenceParams) -> Vec<f64> {
        let mut pairs = Vec::with_capacity(self.len());
        self.utility_pairs(p, &mut pairs);
        pairs.iter().map(|&(c, o)| model.prob(p.lambda, c, o).ln()).collect()
    }
}

/// Best utility attainable with the chosen action against the best with the
/// other action, each maximized over the action in the other role.
pub(crate) fn best_pair(u: &[f64; 4], role: Role, action: usize) -> (f64, f64) {
    let best = |own: usize| match role {
        Role::Proposer => u[strategy_index(own, 0)].max(u[strategy_index(own, 1)]),
        Role::Responder => u[strategy_index(0, own)].max(u[strategy_index(1, own)]),
    };
    (best(action), best(1 - action))
}
