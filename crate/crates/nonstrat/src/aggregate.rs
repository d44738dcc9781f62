//! Finite aggregations of elementary models, joint collision analysis for
//! their stacked potentials, and the worked counterexample showing that a
//! mixture of elementary rules need not be elementary itself.

use crate::elementary::{ElementaryModel, PotentialFunction, COLLISION_TOL};
use crate::game::{Behavior, GameError, NormalFormGame, EPS_EQ};
use crate::model::{BehavioralModel, ModelError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AggregateError {
    #[error("aggregation needs at least one component")]
    Empty,
    #[error("{weights} weights for {components} components")]
    WeightCount { weights: usize, components: usize },
    #[error("convex weights must be nonnegative and sum to 1 (sum was {sum})")]
    WeightSum { sum: f64 },
    #[error("mixing weight must lie strictly between 0 and 1, got {value}")]
    AlphaRange { value: f64 },
    #[error("joint collision search needs tuples longer than the {components} stacked potentials, got {len}")]
    JointTupleTooShort { len: usize, components: usize },
    #[error(transparent)]
    Game(#[from] GameError),
}

type Combine = Arc<dyn Fn(&[Behavior]) -> Result<Behavior, GameError> + Send + Sync>;

#[derive(Clone)]
enum Combiner {
    Convex(Vec<f64>),
    Custom(Combine),
}

/// A finite aggregation of elementary models. The built-in combiner is the
/// convex combination; arbitrary combiners are accepted but sit outside
/// the joint-collision guarantees.
#[derive(Clone)]
pub struct AggregatedModel {
    name: String,
    components: Vec<ElementaryModel>,
    combiner: Combiner,
}

impl fmt::Debug for AggregatedModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AggregatedModel")
            .field("name", &self.name)
            .field("components", &self.components.len())
            .finish()
    }
}

impl AggregatedModel {
    /// Convex combination of elementary components.
    pub fn convex(
        components: Vec<ElementaryModel>,
        weights: Vec<f64>,
    ) -> Result<Self, AggregateError> {
        if components.is_empty() {
            return Err(AggregateError::Empty);
        }
        if weights.len() != components.len() {
            return Err(AggregateError::WeightCount {
                weights: weights.len(),
                components: components.len(),
            });
        }
        let mut sum = 0.0;
        for &w in &weights {
            if !w.is_finite() || w < 0.0 {
                return Err(AggregateError::WeightSum { sum: w });
            }
            sum += w;
        }
        if (sum - 1.0).abs() > EPS_EQ {
            return Err(AggregateError::WeightSum { sum });
        }
        let name = weights
            .iter()
            .zip(&components)
            .map(|(w, c)| format!("{w}*{}", c.name()))
            .collect::<Vec<_>>()
            .join("+");
        Ok(AggregatedModel {
            name: format!("mix:{name}"),
            components,
            combiner: Combiner::Convex(weights),
        })
    }

    /// Aggregation under an arbitrary combiner.
    pub fn with_combiner(
        name: impl Into<String>,
        components: Vec<ElementaryModel>,
        combiner: impl Fn(&[Behavior]) -> Result<Behavior, GameError> + Send + Sync + 'static,
    ) -> Result<Self, AggregateError> {
        if components.is_empty() {
            return Err(AggregateError::Empty);
        }
        Ok(AggregatedModel {
            name: name.into(),
            components,
            combiner: Combiner::Custom(Arc::new(combiner)),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> &[ElementaryModel] {
        &self.components
    }

    /// The stacked potentials of the components for one evaluated player.
    pub fn potentials_for(&self, player: usize) -> Vec<PotentialFunction> {
        self.components
            .iter()
            .map(|c| c.potential_for(player))
            .collect()
    }
}

/// Evaluate every component, then combine.
pub fn evaluate_aggregation(
    model: &AggregatedModel,
    game: &NormalFormGame,
    player: usize,
) -> Result<Behavior, ModelError> {
    let parts = model
        .components
        .iter()
        .map(|c| crate::elementary::evaluate_elementary(c, game, player))
        .collect::<Result<Vec<_>, _>>()?;
    let out = match &model.combiner {
        Combiner::Convex(weights) => {
            Behavior::mixture(weights, &parts).map_err(AggregateError::from)?
        }
        Combiner::Custom(f) => f(&parts).map_err(AggregateError::from)?,
    };
    Ok(out)
}

impl BehavioralModel for AggregatedModel {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn behavior(&self, game: &NormalFormGame, player: usize) -> Result<Behavior, ModelError> {
        evaluate_aggregation(self, game, player)
    }

    fn elementary_potentials(&self, player: usize) -> Vec<PotentialFunction> {
        self.potentials_for(player)
    }

    fn declares_dictatorial(&self) -> bool {
        self.components.iter().all(|c| c.declares_dictator())
    }
}

const JOINT_SEARCH_TRIALS: u64 = 400;
const JOINT_SEARCH_SEED: u64 = 0x6a6f_696e;

/// Search for tuples `x != x'` differing in `coordinate` on which *every*
/// stacked potential agrees: registered witnesses first, then shared
/// coordinate-swap candidates, then seeded random search. Requires tuples
/// longer than the number of stacked scalar potentials; shorter calls are
/// rejected rather than guessed at.
pub fn joint_collision_witness(
    phis: &[PotentialFunction],
    len: usize,
    coordinate: usize,
) -> Result<Option<(Vec<f64>, Vec<f64>)>, AggregateError> {
    if len <= phis.len() {
        return Err(AggregateError::JointTupleTooShort {
            len,
            components: phis.len(),
        });
    }
    assert!(coordinate < len);

    let collides_all = |x: &[f64], x_prime: &[f64]| {
        phis.iter()
            .all(|phi| (phi.value(x) - phi.value(x_prime)).abs() <= COLLISION_TOL)
    };

    // registered witnesses of any one component, validated against all
    for phi in phis {
        for seed in 0..8 {
            if let Some((x, x_prime)) =
                phi.collision_from_generator(len, coordinate, JOINT_SEARCH_SEED ^ seed)
            {
                if collides_all(&x, &x_prime) {
                    return Ok(Some((x, x_prime)));
                }
            }
        }
    }

    // shared symmetry candidates and random integer swaps
    let mut rng = ChaCha12Rng::seed_from_u64(JOINT_SEARCH_SEED);
    for trial in 0..JOINT_SEARCH_TRIALS {
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
            if collides_all(&x, &x_prime) {
                return Ok(Some((x, x_prime)));
            }
        }
        // free perturbation off the swap family
        let x: Vec<f64> = (0..len).map(|_| rng.random_range(-8..=8) as f64).collect();
        let mut x_prime: Vec<f64> = (0..len).map(|_| rng.random_range(-8..=8) as f64).collect();
        if x[coordinate] == x_prime[coordinate] {
            x_prime[coordinate] += 1.0;
        }
        if collides_all(&x, &x_prime) {
            return Ok(Some((x, x_prime)));
        }
    }
    Ok(None)
}

/// The constructive mixture counterexample: two games differing in a
/// single outcome whose payoff tuples collide under the welfare sum, on
/// which the maxmax/welfare mixture provably moves.
#[derive(Debug, Clone)]
pub struct AggregationCounterexample {
    pub model: AggregatedModel,
    pub g3: NormalFormGame,
    pub g4: NormalFormGame,
    pub expected_g3: Behavior,
    pub expected_g4: Behavior,
}

/// Instantiate the counterexample for `alpha * maxmax + (1-alpha) *
/// welfare`. The collision pair is (1,2)/(2,1) under the sum; the corner
/// outcome (1.25, 3) keeps welfare pinned away from the collision site
/// while maxmax flips with it.
pub fn aggregation_counterexample(
    alpha: f64,
) -> Result<AggregationCounterexample, AggregateError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(AggregateError::AlphaRange { value: alpha });
    }
    let model = AggregatedModel::convex(
        vec![crate::elementary::make_maxmax(), crate::elementary::make_max_welfare()],
        vec![alpha, 1.0 - alpha],
    )?;
    let x = [1.0, 2.0];
    let x_prime = [2.0, 1.0];
    let z = [0.0, 0.0];
    let y = [1.25, 3.0];
    let names = vec![
        vec!["U".to_string(), "D".to_string()],
        vec!["L".to_string(), "R".to_string()],
    ];
    let g3 = NormalFormGame::new(
        names.clone(),
        vec![x.to_vec(), z.to_vec(), z.to_vec(), y.to_vec()],
    )?;
    let g4 = NormalFormGame::new(
        names,
        vec![x_prime.to_vec(), z.to_vec(), z.to_vec(), y.to_vec()],
    )?;
    Ok(AggregationCounterexample {
        model,
        g3,
        g4,
        expected_g3: Behavior::new(vec![0.0, 1.0]).map_err(AggregateError::from)?,
        expected_g4: Behavior::new(vec![alpha, 1.0 - alpha]).map_err(AggregateError::from)?,
    })
}
