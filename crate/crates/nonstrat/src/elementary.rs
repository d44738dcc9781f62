//! Elementary behavioral models: rules that score every outcome of a game
//! with a single real potential and choose actions from the resulting map
//! alone. The aggregation step never sees the raw payoff tensor, which is
//! what keeps these rules nonstrategic.

use crate::game::{opposing_profiles, Behavior, GameError, NormalFormGame};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Acceptable residual when a collision is found by numeric search rather
/// than an algebraic generator.
pub const COLLISION_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ElementaryError {
    #[error("potential produced a non-finite value at profile {profile}")]
    NonFinitePotential { profile: usize },
    #[error("model {name:?} is not of the score-then-select family")]
    NotScoreable { name: String },
    #[error(transparent)]
    Game(#[from] GameError),
}

type Evaluator = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type CollisionGenerator =
    Arc<dyn Fn(usize, usize, u64) -> Option<(Vec<f64>, Vec<f64>)> + Send + Sync>;

/// A map from payoff tuples to a single real score, with optional
/// metadata: a declared dictator coordinate and a generator of exact
/// collision pairs.
#[derive(Clone)]
pub struct PotentialFunction {
    label: String,
    eval: Evaluator,
    dictator: Option<usize>,
    collision_gen: Option<CollisionGenerator>,
}

impl fmt::Debug for PotentialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PotentialFunction")
            .field("label", &self.label)
            .field("dictator", &self.dictator)
            .field("has_collision_gen", &self.collision_gen.is_some())
            .finish()
    }
}

impl PotentialFunction {
    pub fn new(label: impl Into<String>, eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        PotentialFunction {
            label: label.into(),
            eval: Arc::new(eval),
            dictator: None,
            collision_gen: None,
        }
    }

    pub fn with_dictator(mut self, coordinate: usize) -> Self {
        self.dictator = Some(coordinate);
        self
    }

    pub fn with_collision_generator(
        mut self,
        generator: impl Fn(usize, usize, u64) -> Option<(Vec<f64>, Vec<f64>)> + Send + Sync + 'static,
    ) -> Self {
        self.collision_gen = Some(Arc::new(generator));
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dictator(&self) -> Option<usize> {
        self.dictator
    }

    pub fn value(&self, tuple: &[f64]) -> f64 {
        (self.eval)(tuple)
    }

    /// A collision pair from the registered generator, validated: the two
    /// tuples differ in `coordinate` and the potentials agree exactly.
    pub fn collision_from_generator(
        &self,
        len: usize,
        coordinate: usize,
        seed: u64,
    ) -> Option<(Vec<f64>, Vec<f64>)> {
        let generator = self.collision_gen.as_ref()?;
        let (x, x_prime) = generator(len, coordinate, seed)?;
        debug_assert_eq!(x.len(), len);
        debug_assert_eq!(x_prime.len(), len);
        if x[coordinate] == x_prime[coordinate] || self.value(&x) != self.value(&x_prime) {
            debug_assert!(false, "registered generator produced an invalid pair");
            return None;
        }
        Some((x, x_prime))
    }

    /// Projection to one coordinate; dictatorial by construction.
    pub fn projection(coordinate: usize) -> Self {
        PotentialFunction::new(format!("own-payoff[{coordinate}]"), move |u: &[f64]| {
            u[coordinate]
        })
        .with_dictator(coordinate)
        .with_collision_generator(move |len, coord, seed| {
            if coord == coordinate {
                return None;
            }
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let x: Vec<f64> = (0..len).map(|_| rng.random_range(-8..=8) as f64).collect();
            let mut x_prime = x.clone();
            x_prime[coord] = x[coord] + 1.0 + rng.random_range(0..4) as f64;
            Some((x, x_prime))
        })
    }

    /// Sum of all coordinates, the welfare potential. Collisions come from
    /// swapping two coordinates of an integer-valued tuple, which keeps the
    /// floating-point sum exactly equal.
    pub fn sum() -> Self {
        PotentialFunction::new("welfare-sum", |u: &[f64]| u.iter().sum())
            .with_collision_generator(swap_collision)
    }

    /// Maximum pairwise difference (max minus min), the unfairness
    /// potential. Swapping coordinates preserves it exactly.
    pub fn spread() -> Self {
        PotentialFunction::new("payoff-spread", |u: &[f64]| {
            let max = u.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let min = u.iter().cloned().fold(f64::INFINITY, f64::min);
            max - min
        })
        .with_collision_generator(swap_collision)
    }

    /// The constant potential used by the uniform rule.
    pub fn constant() -> Self {
        PotentialFunction::new("constant", |_: &[f64]| 0.0)
            .with_dictator(0)
            .with_collision_generator(|len, coord, seed| {
                let mut rng = ChaCha12Rng::seed_from_u64(seed);
                let x: Vec<f64> = (0..len).map(|_| rng.random_range(-8..=8) as f64).collect();
                let mut x_prime = x.clone();
                x_prime[coord] = x[coord] + 1.0;
                Some((x, x_prime))
            })
    }
}

/// Integer-valued tuple with coordinate `coord` swapped against another
/// coordinate. Exact for any permutation-invariant potential.
fn swap_collision(len: usize, coord: usize, seed: u64) -> Option<(Vec<f64>, Vec<f64>)> {
    if len < 2 {
        return None;
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut x: Vec<f64> = (0..len).map(|_| rng.random_range(-8..=8) as f64).collect();
    let other = (coord + 1) % len;
    x[other] = x[coord] + 1.0 + rng.random_range(0..4) as f64;
    let mut x_prime = x.clone();
    x_prime.swap(coord, other);
    Some((x, x_prime))
}

/// The tensor of potential values, one per action profile.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialMap {
    shape: Vec<usize>,
    values: Vec<f64>,
}

impl PotentialMap {
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, profile: &[usize]) -> f64 {
        let idx = profile
            .iter()
            .zip(&self.shape)
            .fold(0, |acc, (&a, &k)| acc * k + a);
        self.values[idx]
    }
}

/// Apply a potential to every payoff tuple of a game.
pub fn potential_map(
    phi: &PotentialFunction,
    game: &NormalFormGame,
) -> Result<PotentialMap, ElementaryError> {
    let mut values = Vec::with_capacity(game.num_profiles());
    for profile in 0..game.num_profiles() {
        let v = phi.value(game.payoff_tuple(profile));
        if !v.is_finite() {
            return Err(ElementaryError::NonFinitePotential { profile });
        }
        values.push(v);
    }
    Ok(PotentialMap {
        shape: game.shape().to_vec(),
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Per-action statistic read off the potential map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileStat {
    /// Best potential reachable with the action (over opposing profiles).
    OpponentMax,
    /// Worst potential the action guarantees.
    OpponentMin,
    /// Largest shortfall versus the best action at each opposing profile.
    MaxRegret,
}

/// How a model turns the potential map into a behavior. Selection reads
/// only the map and the shape, never the game.
#[derive(Clone)]
enum SelectionRule {
    Uniform,
    Score {
        stat: ProfileStat,
        sense: Sense,
        /// `None` selects hard (uniform over exact optima); `Some(t)` is a
        /// logit weighting with precision `t`.
        precision: Option<f64>,
    },
}

fn action_scores(map: &PotentialMap, player: usize, stat: ProfileStat) -> Vec<f64> {
    let k = map.shape()[player];
    match stat {
        ProfileStat::OpponentMax | ProfileStat::OpponentMin => {
            let init = if stat == ProfileStat::OpponentMax {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            };
            let mut scores = vec![init; k];
            for mut ctx in opposing_profiles(map.shape(), player) {
                for a in 0..k {
                    ctx[player] = a;
                    let v = map.value(&ctx);
                    scores[a] = if stat == ProfileStat::OpponentMax {
                        scores[a].max(v)
                    } else {
                        scores[a].min(v)
                    };
                }
            }
            scores
        }
        ProfileStat::MaxRegret => {
            let mut scores = vec![f64::NEG_INFINITY; k];
            for mut ctx in opposing_profiles(map.shape(), player) {
                let mut col_best = f64::NEG_INFINITY;
                for a in 0..k {
                    ctx[player] = a;
                    col_best = col_best.max(map.value(&ctx));
                }
                for a in 0..k {
                    ctx[player] = a;
                    let regret = col_best - map.value(&ctx);
                    scores[a] = scores[a].max(regret);
                }
            }
            scores
        }
    }
}

impl SelectionRule {
    fn apply(&self, map: &PotentialMap, player: usize) -> Behavior {
        let k = map.shape()[player];
        match self {
            SelectionRule::Uniform => Behavior::uniform(k),
            SelectionRule::Score {
                stat,
                sense,
                precision,
            } => {
                let scores = action_scores(map, player, *stat);
                match precision {
                    None => {
                        let best = scores.iter().cloned().fold(
                            match sense {
                                Sense::Maximize => f64::NEG_INFINITY,
                                Sense::Minimize => f64::INFINITY,
                            },
                            match sense {
                                Sense::Maximize => f64::max,
                                Sense::Minimize => f64::min,
                            },
                        );
                        let qualifying: Vec<usize> = scores
                            .iter()
                            .enumerate()
                            .filter(|(_, &v)| v == best)
                            .map(|(a, _)| a)
                            .collect();
                        Behavior::uniform_over(k, &qualifying)
                    }
                    Some(t) => {
                        let sign = match sense {
                            Sense::Maximize => 1.0,
                            Sense::Minimize => -1.0,
                        };
                        let z: Vec<f64> = scores.iter().map(|&s| t * sign * s).collect();
                        let zmax = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                        let exps: Vec<f64> = z.iter().map(|&v| (v - zmax).exp()).collect();
                        let total: f64 = exps.iter().sum();
                        Behavior::new(exps.iter().map(|&e| e / total).collect())
                            .expect("softmax is a distribution")
                    }
                }
            }
        }
    }
}

/// An elementary behavioral model: a potential (built per evaluated player,
/// since several rules project onto that player's own payoff) plus a
/// selection rule over the resulting map.
#[derive(Clone)]
pub struct ElementaryModel {
    name: String,
    potential: Arc<dyn Fn(usize) -> PotentialFunction + Send + Sync>,
    rule: SelectionRule,
}

impl fmt::Debug for ElementaryModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ElementaryModel")
            .field("name", &self.name)
            .finish()
    }
}

impl ElementaryModel {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The potential this model applies when evaluated for `player`.
    pub fn potential_for(&self, player: usize) -> PotentialFunction {
        (self.potential)(player)
    }

    /// Whether the potential declares a dictator coordinate (for every
    /// player it can be evaluated for).
    pub fn declares_dictator(&self) -> bool {
        self.potential_for(0).dictator().is_some()
    }

    /// Natural optimization direction of the selection rule; `None` for
    /// the uniform rule.
    pub fn sense(&self) -> Option<Sense> {
        match &self.rule {
            SelectionRule::Uniform => None,
            SelectionRule::Score { sense, .. } => Some(*sense),
        }
    }
}

/// Evaluate an elementary model: build the potential map, then select.
pub fn evaluate_elementary(
    model: &ElementaryModel,
    game: &NormalFormGame,
    player: usize,
) -> Result<Behavior, ElementaryError> {
    if player >= game.num_players() {
        return Err(GameError::PlayerIndex {
            player,
            players: game.num_players(),
        }
        .into());
    }
    let phi = model.potential_for(player);
    let map = potential_map(&phi, game)?;
    Ok(model.rule.apply(&map, player))
}

/// Uniform randomization; ignores the potential map entirely.
pub fn make_uniform() -> ElementaryModel {
    ElementaryModel {
        name: "uniform".into(),
        potential: Arc::new(|player| PotentialFunction::constant().with_dictator(player)),
        rule: SelectionRule::Uniform,
    }
}

/// Uniform over the actions with the best best case of own payoff.
pub fn make_maxmax() -> ElementaryModel {
    ElementaryModel {
        name: "maxmax".into(),
        potential: Arc::new(PotentialFunction::projection),
        rule: SelectionRule::Score {
            stat: ProfileStat::OpponentMax,
            sense: Sense::Maximize,
            precision: None,
        },
    }
}

/// Uniform over the actions with the best worst-case guarantee.
pub fn make_maxmin() -> ElementaryModel {
    ElementaryModel {
        name: "maxmin".into(),
        potential: Arc::new(PotentialFunction::projection),
        rule: SelectionRule::Score {
            stat: ProfileStat::OpponentMin,
            sense: Sense::Maximize,
            precision: None,
        },
    }
}

/// Uniform over the actions whose maximum Savage regret is minimal.
pub fn make_minimax_regret() -> ElementaryModel {
    ElementaryModel {
        name: "mmr".into(),
        potential: Arc::new(PotentialFunction::projection),
        rule: SelectionRule::Score {
            stat: ProfileStat::MaxRegret,
            sense: Sense::Minimize,
            precision: None,
        },
    }
}

/// Uniform over the actions appearing in some welfare-maximizing profile.
pub fn make_max_welfare() -> ElementaryModel {
    ElementaryModel {
        name: "welfare".into(),
        potential: Arc::new(|_| PotentialFunction::sum()),
        rule: SelectionRule::Score {
            stat: ProfileStat::OpponentMax,
            sense: Sense::Maximize,
            precision: None,
        },
    }
}

/// Uniform over the actions appearing in some minimally unfair profile.
pub fn make_fair() -> ElementaryModel {
    ElementaryModel {
        name: "fair".into(),
        potential: Arc::new(|_| PotentialFunction::spread()),
        rule: SelectionRule::Score {
            stat: ProfileStat::OpponentMin,
            sense: Sense::Minimize,
            precision: None,
        },
    }
}

/// Replace a hard argmax/argmin rule with a logit weighting over the same
/// per-action scores. Precision 0 yields the uniform distribution.
pub fn make_soft_variant(
    base: &ElementaryModel,
    precision: f64,
    sense: Sense,
) -> Result<ElementaryModel, ElementaryError> {
    if !precision.is_finite() || precision < 0.0 {
        return Err(GameError::InvalidPrecision { value: precision }.into());
    }
    let SelectionRule::Score { stat, .. } = base.rule else {
        return Err(ElementaryError::NotScoreable {
            name: base.name.clone(),
        });
    };
    Ok(ElementaryModel {
        name: format!("soft:{}:{}", base.name, precision),
        potential: base.potential.clone(),
        rule: SelectionRule::Score {
            stat,
            sense,
            precision: Some(precision),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordinateVerdict {
    /// Every probed pair agreed; consistent with the coordinate dictating
    /// the output. A sampling verdict, not a proof.
    ConsistentWithDictatorial,
    Refuted,
}

#[derive(Debug, Clone)]
pub struct DictatorshipReport {
    pub verdicts: Vec<CoordinateVerdict>,
    pub declared: Option<usize>,
    /// Whether the declared dictator coordinate (if any) survived probing.
    pub declared_consistent: Option<bool>,
}

/// Randomized probe: for each coordinate, fix it across `samples` pairs and
/// resample all other coordinates; any output change refutes dictatorship
/// in that coordinate.
pub fn dictatorship_probe(
    phi: &PotentialFunction,
    len: usize,
    samples: usize,
    seed: u64,
) -> DictatorshipReport {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut verdicts = Vec::with_capacity(len);
    for coordinate in 0..len {
        let mut consistent = true;
        for _ in 0..samples {
            let pinned: f64 = rng.random_range(-10.0..10.0);
            let mut x: Vec<f64> = (0..len).map(|_| rng.random_range(-10.0..10.0)).collect();
            let mut y: Vec<f64> = (0..len).map(|_| rng.random_range(-10.0..10.0)).collect();
            x[coordinate] = pinned;
            y[coordinate] = pinned;
            if phi.value(&x) != phi.value(&y) {
                consistent = false;
                break;
            }
        }
        verdicts.push(if consistent {
            CoordinateVerdict::ConsistentWithDictatorial
        } else {
            CoordinateVerdict::Refuted
        });
    }
    let declared = phi.dictator();
    let declared_consistent =
        declared.map(|d| verdicts[d] == CoordinateVerdict::ConsistentWithDictatorial);
    DictatorshipReport {
        verdicts,
        declared,
        declared_consistent,
    }
}

const SEARCH_TRIALS: u64 = 200;
const GRID_POINTS: usize = 41;
const SEARCH_SEED: u64 = 0x636f_6c6c;

/// Search for tuples `x != x'` differing in `coordinate` with equal
/// potential: registered generator first, then coordinate swaps, then a
/// seeded random search with one-dimensional root bracketing on the free
/// coordinate. Absence after the budget is a report, not an error.
pub fn collision_witness(
    phi: &PotentialFunction,
    len: usize,
    coordinate: usize,
) -> Option<(Vec<f64>, Vec<f64>)> {
    assert!(len >= 2, "collision search needs at least two coordinates");
    assert!(coordinate < len);
    if let Some(pair) = phi.collision_from_generator(len, coordinate, SEARCH_SEED) {
        return Some(pair);
    }

    let mut rng = ChaCha12Rng::seed_from_u64(SEARCH_SEED);

    // coordinate swaps of integer tuples catch permutation-invariant maps
    for trial in 0..SEARCH_TRIALS {
        for other in 0..len {
            if other == coordinate {
                continue;
            }
            let mut x: Vec<f64> = if trial == 0 {
                (0..len).map(|v| v as f64).collect()
            } else {
                (0..len).map(|_| rng.random_range(-8..=8) as f64).collect()
            };
            if x[coordinate] == x[other] {
                x[other] += 1.0;
            }
            let mut x_prime = x.clone();
            x_prime.swap(coordinate, other);
            if phi.value(&x) == phi.value(&x_prime) {
                return Some((x, x_prime));
            }
        }
    }

    // random target plus root bracketing on the free coordinate
    for _ in 0..SEARCH_TRIALS {
        let target_point: Vec<f64> = (0..len).map(|_| rng.random_range(-4.0..4.0)).collect();
        let target = phi.value(&target_point);
        if !target.is_finite() {
            continue;
        }
        let base: Vec<f64> = (0..len).map(|_| rng.random_range(-4.0..4.0)).collect();
        let eval_at = |t: f64| {
            let mut v = base.clone();
            v[coordinate] = t;
            phi.value(&v) - target
        };
        let lo = -8.0;
        let hi = 8.0;
        let step = (hi - lo) / (GRID_POINTS - 1) as f64;
        let mut prev_t = lo;
        let mut prev_f = eval_at(prev_t);
        for g in 1..GRID_POINTS {
            let t = lo + g as f64 * step;
            let f = eval_at(t);
            let root = if prev_f.abs() <= COLLISION_TOL {
                Some(prev_t)
            } else if f.abs() <= COLLISION_TOL {
                Some(t)
            } else if prev_f.signum() != f.signum() {
                Some(bisect(&eval_at, prev_t, t))
            } else {
                None
            };
            if let Some(t_star) = root {
                if eval_at(t_star).abs() <= COLLISION_TOL && t_star != target_point[coordinate] {
                    let mut x = base.clone();
                    x[coordinate] = t_star;
                    if x != target_point {
                        return Some((x, target_point));
                    }
                }
            }
            prev_t = t;
            prev_f = f;
        }
    }
    None
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return mid;
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{matching_game, prisoners_dilemma};
    use crate::classify::theorem3_game_pair;

    fn g1_g2() -> (NormalFormGame, NormalFormGame) {
        theorem3_game_pair(&[1.0, 2.0], &[2.0, 1.0], 0).unwrap()
    }

    #[test]
    fn potential_map_examples() {
        let pd = prisoners_dilemma();
        let sums = potential_map(&PotentialFunction::sum(), &pd).unwrap();
        assert_eq!(sums.values(), &[6.0, 4.0, 4.0, 2.0]);

        let proj = potential_map(&PotentialFunction::projection(0), &pd).unwrap();
        assert_eq!(proj.values(), &[3.0, 0.0, 4.0, 1.0]);

        let spread = potential_map(&PotentialFunction::spread(), &matching_game()).unwrap();
        assert_eq!(spread.values(), &[0.0, 2.0, 2.0, 0.0]);
    }

    #[test]
    fn potential_map_rejects_non_finite() {
        let pd = prisoners_dilemma();
        let bad = PotentialFunction::new("log", |u: &[f64]| (u[0] - 10.0).ln());
        assert!(matches!(
            potential_map(&bad, &pd),
            Err(ElementaryError::NonFinitePotential { .. })
        ));
    }

    #[test]
    fn hard_rules_on_prisoners_dilemma() {
        let pd = prisoners_dilemma();
        let defect = Behavior::point_mass(2, 1);
        assert_eq!(evaluate_elementary(&make_maxmax(), &pd, 0).unwrap(), defect);
        assert_eq!(evaluate_elementary(&make_maxmin(), &pd, 0).unwrap(), defect);
        assert_eq!(
            evaluate_elementary(&make_minimax_regret(), &pd, 0).unwrap(),
            defect
        );
        assert_eq!(
            evaluate_elementary(&make_max_welfare(), &pd, 0).unwrap(),
            Behavior::point_mass(2, 0)
        );
        assert_eq!(
            evaluate_elementary(&make_fair(), &pd, 0).unwrap(),
            Behavior::uniform(2)
        );
    }

    #[test]
    fn uniform_rule_ignores_the_map() {
        let pd = prisoners_dilemma();
        assert_eq!(
            evaluate_elementary(&make_uniform(), &pd, 0).unwrap(),
            Behavior::uniform(2)
        );
        let wide = NormalFormGame::new(
            vec![
                vec!["a".into(), "b".into(), "c".into()],
                vec!["x".into(), "y".into()],
            ],
            (0..6).map(|i| vec![i as f64, -(i as f64)]).collect(),
        )
        .unwrap();
        assert_eq!(
            evaluate_elementary(&make_uniform(), &wide, 0).unwrap(),
            Behavior::uniform(3)
        );
        assert_eq!(
            evaluate_elementary(&make_uniform(), &matching_game(), 1).unwrap(),
            Behavior::uniform(2)
        );
    }

    #[test]
    fn maxmax_separates_collision_pair_games() {
        let (g1, g2) = g1_g2();
        assert_eq!(
            evaluate_elementary(&make_maxmax(), &g1, 0).unwrap(),
            Behavior::point_mass(2, 0)
        );
        assert_eq!(
            evaluate_elementary(&make_maxmax(), &g2, 0).unwrap(),
            Behavior::point_mass(2, 1)
        );
    }

    #[test]
    fn welfare_cannot_separate_collision_pair_games() {
        let (g1, g2) = g1_g2();
        let w1 = evaluate_elementary(&make_max_welfare(), &g1, 0).unwrap();
        let w2 = evaluate_elementary(&make_max_welfare(), &g2, 0).unwrap();
        assert_eq!(w1, Behavior::uniform(2));
        assert_eq!(w1, w2);
    }

    #[test]
    fn fair_on_matching_game() {
        let fair = evaluate_elementary(&make_fair(), &matching_game(), 0).unwrap();
        assert_eq!(fair, Behavior::uniform(2));
    }

    #[test]
    fn total_tie_gives_uniform() {
        let flat = NormalFormGame::two_player(
            &["a", "b"],
            &["x", "y"],
            &[5.0, 5.0, 5.0, 5.0],
            &[1.0, 2.0, 3.0, 4.0],
        )
        .unwrap();
        for model in [make_maxmax(), make_maxmin(), make_minimax_regret()] {
            assert_eq!(
                evaluate_elementary(&model, &flat, 0).unwrap(),
                Behavior::uniform(2),
                "{}",
                model.name()
            );
        }
    }

    #[test]
    fn soft_variants() {
        let pd = prisoners_dilemma();
        let soft0 = make_soft_variant(&make_maxmax(), 0.0, Sense::Maximize).unwrap();
        assert_eq!(
            evaluate_elementary(&soft0, &pd, 0).unwrap(),
            Behavior::uniform(2)
        );

        let sharp = make_soft_variant(&make_maxmax(), 200.0, Sense::Maximize).unwrap();
        let out = evaluate_elementary(&sharp, &pd, 0).unwrap();
        assert!((out.prob(1) - 1.0).abs() < 1e-12);

        let soft_welfare = make_soft_variant(&make_max_welfare(), 1.0, Sense::Maximize).unwrap();
        let out = evaluate_elementary(&soft_welfare, &pd, 0).unwrap();
        // scores (6, 4): logit gives e^2 / (1 + e^2) on the first action
        let expected = (2.0f64).exp() / (1.0 + (2.0f64).exp());
        assert!((out.prob(0) - expected).abs() < 1e-12);
        assert!((out.prob(1) - (1.0 - expected)).abs() < 1e-12);

        assert!(matches!(
            make_soft_variant(&make_uniform(), 1.0, Sense::Maximize),
            Err(ElementaryError::NotScoreable { .. })
        ));
        assert!(make_soft_variant(&make_maxmax(), -1.0, Sense::Maximize).is_err());
    }

    #[test]
    fn soft_mass_on_hard_support_is_monotone_in_precision() {
        let pd = prisoners_dilemma();
        let mut last = 0.0;
        for precision in [0.0, 0.5, 1.0, 2.0, 5.0, 30.0] {
            let soft = make_soft_variant(&make_maxmax(), precision, Sense::Maximize).unwrap();
            let mass = evaluate_elementary(&soft, &pd, 0).unwrap().prob(1);
            assert!(mass >= last);
            last = mass;
        }
        assert!(last > 1.0 - 1e-12);
    }

    #[test]
    fn dictatorship_probe_examples() {
        let proj = PotentialFunction::projection(0);
        let report = dictatorship_probe(&proj, 3, 100, 7);
        assert_eq!(
            report.verdicts[0],
            CoordinateVerdict::ConsistentWithDictatorial
        );
        assert_eq!(report.verdicts[1], CoordinateVerdict::Refuted);
        assert_eq!(report.verdicts[2], CoordinateVerdict::Refuted);
        assert_eq!(report.declared_consistent, Some(true));

        let sums = dictatorship_probe(&PotentialFunction::sum(), 2, 100, 7);
        assert!(sums
            .verdicts
            .iter()
            .all(|v| *v == CoordinateVerdict::Refuted));

        let constant = dictatorship_probe(&PotentialFunction::constant(), 3, 100, 7);
        assert!(constant
            .verdicts
            .iter()
            .all(|v| *v == CoordinateVerdict::ConsistentWithDictatorial));
    }

    #[test]
    fn collision_witness_examples() {
        let (x, x_prime) = collision_witness(&PotentialFunction::sum(), 2, 0).unwrap();
        assert_ne!(x[0], x_prime[0]);
        assert_eq!(x.iter().sum::<f64>(), x_prime.iter().sum::<f64>());

        let (y, y_prime) = collision_witness(&PotentialFunction::spread(), 2, 0).unwrap();
        assert_ne!(y[0], y_prime[0]);
        let spread = PotentialFunction::spread();
        assert_eq!(spread.value(&y), spread.value(&y_prime));

        // projection is dictatorial in its own coordinate: no witness there
        assert!(collision_witness(&PotentialFunction::projection(0), 2, 0).is_none());
        // but collides freely in the other coordinate
        assert!(collision_witness(&PotentialFunction::projection(0), 2, 1).is_some());
    }

    #[test]
    fn collision_witness_search_without_generator() {
        // sum without its registered generator: the swap phase finds it
        let bare_sum = PotentialFunction::new("bare-sum", |u: &[f64]| u.iter().sum());
        let (x, x_prime) = collision_witness(&bare_sum, 3, 1).unwrap();
        assert_ne!(x[1], x_prime[1]);
        assert!((bare_sum.value(&x) - bare_sum.value(&x_prime)).abs() <= COLLISION_TOL);

        // an asymmetric map that the bracketing phase must handle
        let warped = PotentialFunction::new("warped", |u: &[f64]| u[0] + 2.0 * u[1]);
        let (x, x_prime) = collision_witness(&warped, 2, 0).unwrap();
        assert_ne!(x[0], x_prime[0]);
        assert!((warped.value(&x) - warped.value(&x_prime)).abs() <= COLLISION_TOL);
    }

    #[test]
    fn aggregator_reads_only_the_potential_map() {
        // substituting a registered collision pair leaves outputs exactly
        // equal for the models built from that potential
        for (model, coord) in [(make_max_welfare(), 1), (make_fair(), 0)] {
            let phi = model.potential_for(0);
            for seed in 0..50 {
                let g = crate::doc::random_game(&[2, 3], seed);
                let (x, x_prime) = phi.collision_from_generator(2, coord, seed).unwrap();
                let site = vec![seed as usize % 2, seed as usize % 3];
                let ga = g.with_payoff_tuple(&site, &x);
                let gb = g.with_payoff_tuple(&site, &x_prime);
                let a = evaluate_elementary(&model, &ga, 0).unwrap();
                let b = evaluate_elementary(&model, &gb, 0).unwrap();
                assert_eq!(a, b, "{} seed {seed}", model.name());
            }
        }
    }

    #[test]
    fn dictatorial_models_ignore_opponents_payoffs() {
        for model in [
            make_maxmax(),
            make_maxmin(),
            make_minimax_regret(),
            make_uniform(),
        ] {
            for seed in 0..100u64 {
                let g = crate::doc::random_game(&[3, 2, 2], seed);
                let g_prime = crate::classify::resample_other_payoffs(&g, 0, seed ^ 0x5eed);
                let a = evaluate_elementary(&model, &g, 0).unwrap();
                let b = evaluate_elementary(&model, &g_prime, 0).unwrap();
                assert_eq!(a, b, "{} seed {seed}", model.name());
            }
        }
    }

    #[test]
    fn outputs_are_valid_behaviors_on_random_games() {
        let models = [
            make_uniform(),
            make_maxmax(),
            make_maxmin(),
            make_minimax_regret(),
            make_max_welfare(),
            make_fair(),
        ];
        for seed in 0..200u64 {
            let shape = match seed % 3 {
                0 => vec![2, 2],
                1 => vec![3, 4],
                _ => vec![2, 3, 2],
            };
            let g = crate::doc::random_game(&shape, seed);
            for model in &models {
                let b = evaluate_elementary(model, &g, 0).unwrap();
                let sum: f64 = b.probs().iter().sum();
                assert!((sum - 1.0).abs() <= 1e-12);
                assert!(b.probs().iter().all(|&p| p >= 0.0));
            }
        }
    }
}
