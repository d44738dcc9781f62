//! The behavioral-model abstraction: anything that maps a game and a
//! player index to a behavior.

use crate::aggregate::AggregateError;
use crate::elementary::{ElementaryError, ElementaryModel, PotentialFunction};
use crate::game::{Behavior, GameError, NormalFormGame};
use crate::strategic::StrategicError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Elementary(#[from] ElementaryError),
    #[error(transparent)]
    Strategic(#[from] StrategicError),
    #[error(transparent)]
    Aggregate(#[from] AggregateError),
}

/// A behavioral model: a prediction of one player's behavior in any game.
///
/// The classification hooks expose the structure probes can exploit:
/// elementary potentials yield targeted dominance counterexamples, and a
/// declared dictator certifies insensitivity to opponents' payoffs.
pub trait BehavioralModel: Send + Sync {
    /// Canonical spec string for reports and CLI round-trips.
    fn name(&self) -> String;

    fn behavior(&self, game: &NormalFormGame, player: usize) -> Result<Behavior, ModelError>;

    /// Potentials of the elementary components backing this model when
    /// evaluated for `player`; empty for non-elementary models.
    fn elementary_potentials(&self, _player: usize) -> Vec<PotentialFunction> {
        Vec::new()
    }

    /// Whether every backing potential declares the evaluated player as a
    /// dictator coordinate, certifying other-unresponsiveness.
    fn declares_dictatorial(&self) -> bool {
        false
    }

    /// A constructed game pair differing only in opponents' payoffs that
    /// this model is expected to separate, when the model's structure
    /// supports building one.
    fn targeted_other_witness(
        &self,
        _player: usize,
    ) -> Option<(NormalFormGame, NormalFormGame)> {
        None
    }
}

impl BehavioralModel for ElementaryModel {
    fn name(&self) -> String {
        ElementaryModel::name(self).to_string()
    }

    fn behavior(&self, game: &NormalFormGame, player: usize) -> Result<Behavior, ModelError> {
        Ok(crate::elementary::evaluate_elementary(self, game, player)?)
    }

    fn elementary_potentials(&self, player: usize) -> Vec<PotentialFunction> {
        vec![self.potential_for(player)]
    }

    fn declares_dictatorial(&self) -> bool {
        self.declares_dictator()
    }
}
