//! Finite normal-form games: representation, expected utility, dominance
//! analysis, and equilibrium verification.

use serde::Serialize;
use std::collections::HashSet;
use thiserror::Error;

/// Tie tolerance for best-response sets.
pub const EPS_TIE: f64 = 1e-9;
/// Two behaviors are declared different when they disagree by more than this.
pub const EPS_DIFF: f64 = 1e-6;
/// Two behaviors are declared equal when they agree within this.
pub const EPS_EQ: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GameError {
    #[error("game must have at least one player")]
    NoPlayers,
    #[error("player {player} has an empty action set")]
    EmptyActionSet { player: usize },
    #[error("player {player} has duplicate action label {label:?}")]
    DuplicateAction { player: usize, label: String },
    #[error("payoff table has {got} profiles, expected {expected}")]
    PayoffLength { got: usize, expected: usize },
    #[error("payoff tuple at profile {profile} has {got} entries, expected {expected}")]
    TupleArity {
        profile: usize,
        got: usize,
        expected: usize,
    },
    #[error("non-finite payoff for player {player} at profile {profile}")]
    NonFinitePayoff { profile: usize, player: usize },
    #[error("player index {player} out of range ({players} players)")]
    PlayerIndex { player: usize, players: usize },
    #[error("action index {action} out of range for player {player}")]
    ActionIndex { player: usize, action: usize },
    #[error("behavior has {got} entries, expected {expected}")]
    BehaviorShape { got: usize, expected: usize },
    #[error("probabilities must be finite, nonnegative, and sum to 1 (sum was {sum})")]
    InvalidDistribution { sum: f64 },
    #[error("profile has {got} behaviors, expected {expected}")]
    ProfileArity { got: usize, expected: usize },
    #[error("games must share shape and action names")]
    ShapeMismatch,
    #[error("actions must differ")]
    IdenticalActions,
    #[error("player {player} needs at least two actions, has {got}")]
    TooFewActions { player: usize, got: usize },
    #[error("precision must be finite and nonnegative, got {value}")]
    InvalidPrecision { value: f64 },
}

/// Iterates action profiles of a shape in row-major order (player 0 is the
/// most significant digit). This ordering is the one the file format and
/// all tensors in the crate use.
pub fn profiles(shape: &[usize]) -> ProfileIter {
    ProfileIter {
        shape: shape.to_vec(),
        current: vec![0; shape.len()],
        done: shape.iter().any(|&k| k == 0),
    }
}

/// Profiles of `shape` with coordinate `player` pinned to 0; callers
/// overwrite that slot to sweep one player's actions against all
/// opposing assignments.
pub fn opposing_profiles(shape: &[usize], player: usize) -> ProfileIter {
    let mut collapsed = shape.to_vec();
    collapsed[player] = 1;
    profiles(&collapsed)
}

pub struct ProfileIter {
    shape: Vec<usize>,
    current: Vec<usize>,
    done: bool,
}

impl Iterator for ProfileIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // odometer increment, least significant digit last
        let mut pos = self.shape.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.current[pos] += 1;
            if self.current[pos] < self.shape[pos] {
                break;
            }
            self.current[pos] = 0;
        }
        Some(out)
    }
}

/// A finite normal-form game: named action sets and a dense tensor of
/// finite payoff tuples, one tuple per action profile.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormGame {
    action_names: Vec<Vec<String>>,
    shape: Vec<usize>,
    /// Flat, profile-major: payoff of `player` at profile index `p` lives at
    /// `p * num_players + player`.
    payoffs: Vec<f64>,
}

impl NormalFormGame {
    /// Build a game from per-player action names and per-profile payoff
    /// tuples in row-major profile order.
    pub fn new(
        action_names: Vec<Vec<String>>,
        profile_payoffs: Vec<Vec<f64>>,
    ) -> Result<Self, GameError> {
        let n = action_names.len();
        if n == 0 {
            return Err(GameError::NoPlayers);
        }
        let mut shape = Vec::with_capacity(n);
        for (player, names) in action_names.iter().enumerate() {
            if names.is_empty() {
                return Err(GameError::EmptyActionSet { player });
            }
            let mut seen = HashSet::new();
            for label in names {
                if !seen.insert(label.as_str()) {
                    return Err(GameError::DuplicateAction {
                        player,
                        label: label.clone(),
                    });
                }
            }
            shape.push(names.len());
        }
        let expected: usize = shape.iter().product();
        if profile_payoffs.len() != expected {
            return Err(GameError::PayoffLength {
                got: profile_payoffs.len(),
                expected,
            });
        }
        let mut payoffs = Vec::with_capacity(expected * n);
        for (profile, tuple) in profile_payoffs.iter().enumerate() {
            if tuple.len() != n {
                return Err(GameError::TupleArity {
                    profile,
                    got: tuple.len(),
                    expected: n,
                });
            }
            for (player, &u) in tuple.iter().enumerate() {
                if !u.is_finite() {
                    return Err(GameError::NonFinitePayoff { profile, player });
                }
                payoffs.push(u);
            }
        }
        Ok(NormalFormGame {
            action_names,
            shape,
            payoffs,
        })
    }

    /// Convenience constructor for two-player games from row-major payoff
    /// matrices, one per player.
    pub fn two_player(
        row_actions: &[&str],
        col_actions: &[&str],
        row_payoffs: &[f64],
        col_payoffs: &[f64],
    ) -> Result<Self, GameError> {
        let names = vec![
            row_actions.iter().map(|s| s.to_string()).collect(),
            col_actions.iter().map(|s| s.to_string()).collect(),
        ];
        let cells = row_actions.len() * col_actions.len();
        if row_payoffs.len() != cells || col_payoffs.len() != cells {
            return Err(GameError::PayoffLength {
                got: row_payoffs.len().min(col_payoffs.len()),
                expected: cells,
            });
        }
        let tuples = row_payoffs
            .iter()
            .zip(col_payoffs)
            .map(|(&r, &c)| vec![r, c])
            .collect();
        NormalFormGame::new(names, tuples)
    }

    pub fn num_players(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn num_actions(&self, player: usize) -> usize {
        self.shape[player]
    }

    pub fn num_profiles(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn action_names(&self, player: usize) -> &[String] {
        &self.action_names[player]
    }

    pub fn all_action_names(&self) -> &[Vec<String>] {
        &self.action_names
    }

    pub fn profile_index(&self, profile: &[usize]) -> usize {
        debug_assert_eq!(profile.len(), self.shape.len());
        profile
            .iter()
            .zip(&self.shape)
            .fold(0, |acc, (&a, &k)| acc * k + a)
    }

    pub fn payoff(&self, profile: &[usize], player: usize) -> f64 {
        let n = self.num_players();
        self.payoffs[self.profile_index(profile) * n + player]
    }

    /// The full payoff tuple at a flat profile index.
    pub fn payoff_tuple(&self, profile_index: usize) -> &[f64] {
        let n = self.num_players();
        &self.payoffs[profile_index * n..(profile_index + 1) * n]
    }

    pub fn profiles(&self) -> ProfileIter {
        profiles(&self.shape)
    }

    /// A copy of this game with one player's payoff at one profile replaced.
    pub fn with_payoff(&self, profile: &[usize], player: usize, value: f64) -> Self {
        let mut out = self.clone();
        let n = out.num_players();
        let idx = out.profile_index(profile) * n + player;
        out.payoffs[idx] = value;
        out
    }

    /// A copy with the payoff tuple at one profile replaced wholesale.
    pub fn with_payoff_tuple(&self, profile: &[usize], tuple: &[f64]) -> Self {
        let mut out = self.clone();
        let n = out.num_players();
        let base = out.profile_index(profile) * n;
        out.payoffs[base..base + n].copy_from_slice(tuple);
        out
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.shape == other.shape && self.action_names == other.action_names
    }

    fn check_player(&self, player: usize) -> Result<(), GameError> {
        if player >= self.num_players() {
            return Err(GameError::PlayerIndex {
                player,
                players: self.num_players(),
            });
        }
        Ok(())
    }

    fn check_action(&self, player: usize, action: usize) -> Result<(), GameError> {
        if action >= self.shape[player] {
            return Err(GameError::ActionIndex { player, action });
        }
        Ok(())
    }

    /// Expected utility of a full behavior profile for one player:
    /// sum over profiles of the product of action probabilities times the
    /// payoff. Exact table lookup for degenerate profiles.
    pub fn expected_utility(
        &self,
        player: usize,
        profile: &BehaviorProfile,
    ) -> Result<f64, GameError> {
        self.check_player(player)?;
        profile.check_for(self)?;
        let n = self.num_players();
        let mut total = 0.0;
        for (pidx, assignment) in self.profiles().enumerate() {
            let mut weight = 1.0;
            for (j, &a) in assignment.iter().enumerate() {
                weight *= profile.get(j).prob(a);
            }
            total += weight * self.payoffs[pidx * n + player];
        }
        Ok(total)
    }

    /// Expected utility of each of `player`'s actions against the
    /// opponents' behaviors; `profile`'s entry for `player` is ignored.
    pub fn action_expected_utilities(
        &self,
        player: usize,
        profile: &BehaviorProfile,
    ) -> Result<Vec<f64>, GameError> {
        self.check_player(player)?;
        profile.check_for(self)?;
        let n = self.num_players();
        let mut eu = vec![0.0; self.shape[player]];
        for (pidx, assignment) in self.profiles().enumerate() {
            let mut weight = 1.0;
            for (j, &a) in assignment.iter().enumerate() {
                if j != player {
                    weight *= profile.get(j).prob(a);
                }
            }
            eu[assignment[player]] += weight * self.payoffs[pidx * n + player];
        }
        Ok(eu)
    }

    /// Actions within `EPS_TIE` of the maximal expected utility against the
    /// opponents' behaviors. Nonempty.
    pub fn best_response_set(
        &self,
        player: usize,
        opponents: &BehaviorProfile,
    ) -> Result<Vec<usize>, GameError> {
        let eu = self.action_expected_utilities(player, opponents)?;
        let best = eu.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Ok(eu
            .iter()
            .enumerate()
            .filter(|(_, &v)| v >= best - EPS_TIE)
            .map(|(a, _)| a)
            .collect())
    }

    /// Strict dominance of `action` over `other` for `player`: strictly
    /// greater payoff at every opposing pure profile. No tolerance.
    pub fn strictly_dominates(
        &self,
        player: usize,
        action: usize,
        other: usize,
    ) -> Result<bool, GameError> {
        self.check_player(player)?;
        self.check_action(player, action)?;
        self.check_action(player, other)?;
        if action == other {
            return Err(GameError::IdenticalActions);
        }
        for mut ctx in opposing_profiles(&self.shape, player) {
            ctx[player] = action;
            let ua = self.payoff(&ctx, player);
            ctx[player] = other;
            let ub = self.payoff(&ctx, player);
            if ua <= ub {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The action strictly dominating every other action of `player`, if one
    /// exists. Unique by strictness. Requires at least two actions.
    pub fn strictly_dominant_action(&self, player: usize) -> Result<Option<usize>, GameError> {
        self.check_player(player)?;
        let k = self.shape[player];
        if k < 2 {
            return Err(GameError::TooFewActions { player, got: k });
        }
        'candidates: for a in 0..k {
            for b in 0..k {
                if b != a && !self.strictly_dominates(player, a, b)? {
                    continue 'candidates;
                }
            }
            return Ok(Some(a));
        }
        Ok(None)
    }

    /// Nash verification: every action played with probability above `tol`
    /// must be a best response to the rest of the profile.
    pub fn verify_nash(&self, profile: &BehaviorProfile, tol: f64) -> Result<bool, GameError> {
        profile.check_for(self)?;
        for player in 0..self.num_players() {
            let brs = self.best_response_set(player, profile)?;
            for (a, &p) in profile.get(player).probs().iter().enumerate() {
                if p > tol && !brs.contains(&a) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Correlated-equilibrium verification via per-signal deviations: for
    /// every player and every recommended/deviation action pair, following
    /// the recommendation must be within `tol` of at least as good.
    pub fn verify_correlated_equilibrium(
        &self,
        sigma: &JointDistribution,
        tol: f64,
    ) -> Result<bool, GameError> {
        sigma.check_for(self)?;
        for player in 0..self.num_players() {
            let k = self.shape[player];
            for rec in 0..k {
                for dev in 0..k {
                    if dev == rec {
                        continue;
                    }
                    let mut gain = 0.0;
                    for mut ctx in opposing_profiles(&self.shape, player) {
                        ctx[player] = rec;
                        let w = sigma.value(&ctx);
                        let u_rec = self.payoff(&ctx, player);
                        ctx[player] = dev;
                        let u_dev = self.payoff(&ctx, player);
                        gain += w * (u_dev - u_rec);
                    }
                    if gain > tol {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Dominance reversal: an action strictly dominant in `g` that some other
/// action strictly dominates in `g_prime`. Returns the pair when found.
pub fn dominance_reversed_pair(
    g: &NormalFormGame,
    g_prime: &NormalFormGame,
    player: usize,
) -> Result<Option<(usize, usize)>, GameError> {
    if !g.same_shape(g_prime) {
        return Err(GameError::ShapeMismatch);
    }
    let Some(a) = g.strictly_dominant_action(player)? else {
        return Ok(None);
    };
    for b in 0..g.num_actions(player) {
        if b != a && g_prime.strictly_dominates(player, b, a)? {
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

/// A probability distribution over one player's actions.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Behavior {
    probs: Vec<f64>,
}

impl Behavior {
    pub fn new(probs: Vec<f64>) -> Result<Self, GameError> {
        if probs.is_empty() {
            return Err(GameError::BehaviorShape {
                got: 0,
                expected: 1,
            });
        }
        let mut sum = 0.0;
        for &p in &probs {
            if !p.is_finite() || p < 0.0 {
                return Err(GameError::InvalidDistribution { sum: p });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > EPS_EQ {
            return Err(GameError::InvalidDistribution { sum });
        }
        Ok(Behavior { probs })
    }

    pub fn uniform(len: usize) -> Self {
        Behavior {
            probs: vec![1.0 / len as f64; len],
        }
    }

    pub fn point_mass(len: usize, action: usize) -> Self {
        let mut probs = vec![0.0; len];
        probs[action] = 1.0;
        Behavior { probs }
    }

    /// Uniform over a nonempty set of qualifying actions, exact zeros
    /// elsewhere.
    pub fn uniform_over(len: usize, actions: &[usize]) -> Self {
        let mut probs = vec![0.0; len];
        let w = 1.0 / actions.len() as f64;
        for &a in actions {
            probs[a] = w;
        }
        Behavior { probs }
    }

    /// Convex combination of behaviors of equal length. Weights are not
    /// rescaled; they are expected to sum to 1.
    pub fn mixture(weights: &[f64], parts: &[Behavior]) -> Result<Self, GameError> {
        let len = parts[0].len();
        let mut probs = vec![0.0; len];
        for (w, b) in weights.iter().zip(parts) {
            if b.len() != len {
                return Err(GameError::BehaviorShape {
                    got: b.len(),
                    expected: len,
                });
            }
            for (acc, &p) in probs.iter_mut().zip(b.probs()) {
                *acc += w * p;
            }
        }
        Behavior::new(probs)
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, action: usize) -> f64 {
        self.probs[action]
    }

    pub fn max_norm_distance(&self, other: &Behavior) -> f64 {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Lowest-index action of minimal probability.
    pub fn argmin_index(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.probs.iter().enumerate() {
            if p < self.probs[best] {
                best = i;
            }
        }
        best
    }

    /// The action of strictly greatest probability, if one exists.
    pub fn strict_argmax(&self) -> Option<usize> {
        let mut best = 0;
        for (i, &p) in self.probs.iter().enumerate() {
            if p > self.probs[best] {
                best = i;
            }
        }
        for (i, &p) in self.probs.iter().enumerate() {
            if i != best && p >= self.probs[best] {
                return None;
            }
        }
        Some(best)
    }
}

/// Verdict of a float-robust behavior comparison: distances beyond
/// [`EPS_DIFF`] are different, within [`EPS_EQ`] equal, in between
/// inconclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BehaviorComparison {
    Equal,
    Different,
    Inconclusive,
}

pub fn compare_behaviors(a: &Behavior, b: &Behavior) -> (f64, BehaviorComparison) {
    let d = a.max_norm_distance(b);
    let verdict = if d > EPS_DIFF {
        BehaviorComparison::Different
    } else if d <= EPS_EQ {
        BehaviorComparison::Equal
    } else {
        BehaviorComparison::Inconclusive
    };
    (d, verdict)
}

/// One behavior per player.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct BehaviorProfile {
    behaviors: Vec<Behavior>,
}

impl BehaviorProfile {
    pub fn new(behaviors: Vec<Behavior>) -> Result<Self, GameError> {
        if behaviors.is_empty() {
            return Err(GameError::ProfileArity {
                got: 0,
                expected: 1,
            });
        }
        Ok(BehaviorProfile { behaviors })
    }

    pub fn uniform(game: &NormalFormGame) -> Self {
        BehaviorProfile {
            behaviors: game.shape().iter().map(|&k| Behavior::uniform(k)).collect(),
        }
    }

    pub fn check_for(&self, game: &NormalFormGame) -> Result<(), GameError> {
        if self.behaviors.len() != game.num_players() {
            return Err(GameError::ProfileArity {
                got: self.behaviors.len(),
                expected: game.num_players(),
            });
        }
        for (player, b) in self.behaviors.iter().enumerate() {
            if b.len() != game.num_actions(player) {
                return Err(GameError::BehaviorShape {
                    got: b.len(),
                    expected: game.num_actions(player),
                });
            }
        }
        Ok(())
    }

    pub fn get(&self, player: usize) -> &Behavior {
        &self.behaviors[player]
    }

    pub fn behaviors(&self) -> &[Behavior] {
        &self.behaviors
    }

    pub fn replace(&self, player: usize, behavior: Behavior) -> Self {
        let mut out = self.clone();
        out.behaviors[player] = behavior;
        out
    }

    pub fn max_norm_distance(&self, other: &BehaviorProfile) -> f64 {
        self.behaviors
            .iter()
            .zip(&other.behaviors)
            .map(|(a, b)| a.max_norm_distance(b))
            .fold(0.0, f64::max)
    }
}

/// A joint distribution over full action profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    shape: Vec<usize>,
    mass: Vec<f64>,
}

impl JointDistribution {
    pub fn new(shape: Vec<usize>, mass: Vec<f64>) -> Result<Self, GameError> {
        let expected: usize = shape.iter().product();
        if mass.len() != expected {
            return Err(GameError::PayoffLength {
                got: mass.len(),
                expected,
            });
        }
        let mut sum = 0.0;
        for &p in &mass {
            if !p.is_finite() || p < 0.0 {
                return Err(GameError::InvalidDistribution { sum: p });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > EPS_EQ {
            return Err(GameError::InvalidDistribution { sum });
        }
        Ok(JointDistribution { shape, mass })
    }

    pub fn uniform(shape: &[usize]) -> Self {
        let cells: usize = shape.iter().product();
        JointDistribution {
            shape: shape.to_vec(),
            mass: vec![1.0 / cells as f64; cells],
        }
    }

    /// The product distribution of an independent behavior profile.
    pub fn product_of(profile: &BehaviorProfile) -> Self {
        let shape: Vec<usize> = profile.behaviors().iter().map(Behavior::len).collect();
        let mut mass = Vec::with_capacity(shape.iter().product());
        for assignment in profiles(&shape) {
            let mut w = 1.0;
            for (j, &a) in assignment.iter().enumerate() {
                w *= profile.get(j).prob(a);
            }
            mass.push(w);
        }
        JointDistribution { shape, mass }
    }

    pub fn check_for(&self, game: &NormalFormGame) -> Result<(), GameError> {
        if self.shape != game.shape() {
            return Err(GameError::ShapeMismatch);
        }
        Ok(())
    }

    pub fn value(&self, profile: &[usize]) -> f64 {
        let idx = profile
            .iter()
            .zip(&self.shape)
            .fold(0, |acc, (&a, &k)| acc * k + a);
        self.mass[idx]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{matching_game, prisoners_dilemma};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn pd() -> NormalFormGame {
        prisoners_dilemma()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            NormalFormGame::new(vec![], vec![]),
            Err(GameError::NoPlayers)
        ));
        assert!(matches!(
            NormalFormGame::new(vec![vec!["a".into()], vec![]], vec![]),
            Err(GameError::EmptyActionSet { player: 1 })
        ));
        assert!(matches!(
            NormalFormGame::new(
                vec![vec!["a".into(), "a".into()]],
                vec![vec![0.0], vec![0.0]]
            ),
            Err(GameError::DuplicateAction { .. })
        ));
        assert!(matches!(
            NormalFormGame::new(vec![vec!["a".into(), "b".into()]], vec![vec![0.0]]),
            Err(GameError::PayoffLength { .. })
        ));
        assert!(matches!(
            NormalFormGame::new(
                vec![vec!["a".into(), "b".into()]],
                vec![vec![0.0], vec![f64::INFINITY]]
            ),
            Err(GameError::NonFinitePayoff { .. })
        ));
    }

    #[test]
    fn expected_utility_pure_profile_is_table_lookup() {
        let g = matching_game();
        let s = BehaviorProfile::new(vec![
            Behavior::point_mass(2, 0),
            Behavior::point_mass(2, 0),
        ])
        .unwrap();
        assert_eq!(g.expected_utility(0, &s).unwrap(), 1.0);
    }

    #[test]
    fn expected_utility_row_action_vs_uniform_column() {
        let g = matching_game();
        let uniform = BehaviorProfile::uniform(&g);
        let eu = g.action_expected_utilities(0, &uniform).unwrap();
        assert_eq!(eu, vec![0.5, 0.5]);
    }

    #[test]
    fn expected_utility_pd_defect_vs_uniform() {
        let g = pd();
        let uniform = BehaviorProfile::uniform(&g);
        let eu = g.action_expected_utilities(0, &uniform).unwrap();
        // hand sum: (4 + 1) / 2 and (3 + 0) / 2
        assert_eq!(eu[1], 2.5);
        assert_eq!(eu[0], 1.5);
    }

    #[test]
    fn best_response_examples() {
        let g = pd();
        let uniform = BehaviorProfile::uniform(&g);
        assert_eq!(g.best_response_set(0, &uniform).unwrap(), vec![1]);

        let m = matching_game();
        let u = BehaviorProfile::uniform(&m);
        assert_eq!(m.best_response_set(0, &u).unwrap(), vec![0, 1]);

        let single = NormalFormGame::new(
            vec![vec!["only".into()], vec!["l".into(), "r".into()]],
            vec![vec![1.0, 0.0], vec![2.0, 0.0]],
        )
        .unwrap();
        let prof = BehaviorProfile::new(vec![
            Behavior::point_mass(1, 0),
            Behavior::uniform(2),
        ])
        .unwrap();
        assert_eq!(single.best_response_set(0, &prof).unwrap(), vec![0]);
    }

    #[test]
    fn strict_dominance_examples() {
        let g = pd();
        assert!(g.strictly_dominates(0, 1, 0).unwrap());
        assert!(!g.strictly_dominates(0, 0, 1).unwrap());
        assert!(matches!(
            g.strictly_dominates(0, 1, 1),
            Err(GameError::IdenticalActions)
        ));

        let m = matching_game();
        assert!(!m.strictly_dominates(0, 0, 1).unwrap());

        // equal rows never dominate
        let flat =
            NormalFormGame::two_player(&["a", "b"], &["l", "r"], &[1.0, 2.0, 1.0, 2.0], &[0.0; 4])
                .unwrap();
        assert!(!flat.strictly_dominates(0, 0, 1).unwrap());
    }

    #[test]
    fn dominant_action_examples() {
        assert_eq!(pd().strictly_dominant_action(0).unwrap(), Some(1));
        assert_eq!(matching_game().strictly_dominant_action(0).unwrap(), None);

        let (g1, _g2) = crate::classify::theorem3_game_pair(&[1.0, 2.0], &[2.0, 1.0], 0).unwrap();
        assert_eq!(g1.strictly_dominant_action(0).unwrap(), Some(0));

        let single = NormalFormGame::new(vec![vec!["x".into()]], vec![vec![0.0]]).unwrap();
        assert!(matches!(
            single.strictly_dominant_action(0),
            Err(GameError::TooFewActions { .. })
        ));
    }

    #[test]
    fn dominance_reversal_examples() {
        let (g1, g2) = crate::classify::theorem3_game_pair(&[1.0, 2.0], &[2.0, 1.0], 0).unwrap();
        assert_eq!(dominance_reversed_pair(&g1, &g2, 0).unwrap(), Some((0, 1)));

        let g = pd();
        assert_eq!(dominance_reversed_pair(&g, &g, 0).unwrap(), None);

        let negated = NormalFormGame::two_player(
            &["C", "D"],
            &["C", "D"],
            &[-3.0, -0.0, -4.0, -1.0],
            &[3.0, 4.0, 0.0, 1.0],
        )
        .unwrap();
        assert_eq!(dominance_reversed_pair(&g, &negated, 0).unwrap(), Some((1, 0)));
    }

    #[test]
    fn nash_verification_examples() {
        let g = pd();
        let both_defect = BehaviorProfile::new(vec![
            Behavior::point_mass(2, 1),
            Behavior::point_mass(2, 1),
        ])
        .unwrap();
        assert!(g.verify_nash(&both_defect, 1e-9).unwrap());

        let both_cooperate = BehaviorProfile::new(vec![
            Behavior::point_mass(2, 0),
            Behavior::point_mass(2, 0),
        ])
        .unwrap();
        assert!(!g.verify_nash(&both_cooperate, 1e-9).unwrap());

        let m = matching_game();
        assert!(m.verify_nash(&BehaviorProfile::uniform(&m), 1e-9).unwrap());
    }

    #[test]
    fn correlated_equilibrium_examples() {
        let g = pd();
        let nash = BehaviorProfile::new(vec![
            Behavior::point_mass(2, 1),
            Behavior::point_mass(2, 1),
        ])
        .unwrap();
        assert!(g.verify_nash(&nash, 1e-9).unwrap());
        let sigma = JointDistribution::product_of(&nash);
        assert!(g.verify_correlated_equilibrium(&sigma, 1e-9).unwrap());

        let cc = JointDistribution::new(vec![2, 2], vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(!g.verify_correlated_equilibrium(&cc, 1e-9).unwrap());

        let m = matching_game();
        let u = JointDistribution::uniform(m.shape());
        assert!(m.verify_correlated_equilibrium(&u, 1e-9).unwrap());
    }

    fn random_profile(game: &NormalFormGame, rng: &mut ChaCha12Rng) -> BehaviorProfile {
        let behaviors = game
            .shape()
            .iter()
            .map(|&k| {
                let raw: Vec<f64> = (0..k).map(|_| rng.random::<f64>() + 1e-3).collect();
                let s: f64 = raw.iter().sum();
                Behavior::new(raw.iter().map(|v| v / s).collect()).unwrap()
            })
            .collect();
        BehaviorProfile::new(behaviors).unwrap()
    }

    #[test]
    fn dominant_action_is_unique_best_response() {
        let g = pd();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..100 {
            let prof = random_profile(&g, &mut rng);
            let brs = g.best_response_set(0, &prof).unwrap();
            assert_eq!(brs, vec![1]);
        }
    }

    #[test]
    fn nash_implies_correlated_equilibrium() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let mut verified = 0;
        for seed in 0..200u64 {
            let g = crate::doc::random_game(&[2, 3], seed);
            let prof = random_profile(&g, &mut rng);
            if g.verify_nash(&prof, 1e-9).unwrap() {
                verified += 1;
                let sigma = JointDistribution::product_of(&prof);
                assert!(g.verify_correlated_equilibrium(&sigma, 1e-9).unwrap());
            }
            // uniform profiles on degenerate games rarely verify; also check
            // pure equilibria found by scan
            for assignment in g.profiles() {
                let pure = BehaviorProfile::new(
                    assignment
                        .iter()
                        .zip(g.shape())
                        .map(|(&a, &k)| Behavior::point_mass(k, a))
                        .collect(),
                )
                .unwrap();
                if g.verify_nash(&pure, 1e-9).unwrap() {
                    verified += 1;
                    let sigma = JointDistribution::product_of(&pure);
                    assert!(g.verify_correlated_equilibrium(&sigma, 1e-9).unwrap());
                }
            }
        }
        assert!(verified > 0, "property vacuous: no verified profiles");
    }

    proptest! {
        // expected utility of a mixture equals the convex combination of the
        // parts, within 1e-12
        #[test]
        fn expected_utility_is_affine_in_own_mixture(
            t in 0.0f64..1.0,
            seed in 0u64..500,
        ) {
            let g = crate::doc::random_game(&[2, 2], seed);
            let uniform = BehaviorProfile::uniform(&g);
            let pure0 = uniform.replace(0, Behavior::point_mass(2, 0));
            let pure1 = uniform.replace(0, Behavior::point_mass(2, 1));
            let mixed = uniform.replace(
                0,
                Behavior::new(vec![t, 1.0 - t]).unwrap(),
            );
            let eu_mix = g.expected_utility(0, &mixed).unwrap();
            let eu_parts = t * g.expected_utility(0, &pure0).unwrap()
                + (1.0 - t) * g.expected_utility(0, &pure1).unwrap();
            prop_assert!((eu_mix - eu_parts).abs() <= 1e-12);
        }

        // best responses are invariant under positive affine transformation
        #[test]
        fn best_response_affine_invariance(
            scale in 0.1f64..10.0,
            shift in -20.0f64..20.0,
            seed in 0u64..500,
        ) {
            let g = crate::doc::random_game(&[3, 3], seed);
            let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0xabcd);
            let prof = random_profile(&g, &mut rng);
            let brs = g.best_response_set(0, &prof).unwrap();

            let tuples: Vec<Vec<f64>> = (0..g.num_profiles())
                .map(|p| {
                    let t = g.payoff_tuple(p);
                    vec![scale * t[0] + shift, t[1]]
                })
                .collect();
            let names: Vec<Vec<String>> =
                g.all_action_names().to_vec();
            let g2 = NormalFormGame::new(names, tuples).unwrap();
            let brs2 = g2.best_response_set(0, &prof).unwrap();
            prop_assert_eq!(brs, brs2);
        }
    }
}
