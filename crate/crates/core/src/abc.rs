//! Artificial bee colony search over vertex weight vectors.
//!
//! Each food source is a weight vector scored by decoding it with
//! [`crate::decoder`] and counting violating vertices. A cycle runs the
//! employed, onlooker and scout phases in that order. The search stops at the
//! first zero-penalty decode or when the evaluation budget is spent,
//! whichever comes first, even in the middle of a phase.
//!
//! Two scout policies are available: [`ScoutPolicy::Random`] replaces a
//! stagnant source with a fresh random one, [`ScoutPolicy::Rwde`] instead
//! walks from it along random unit directions (random walk with direction
//! exploitation).

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use rand_distr::StandardNormal;

use crate::decoder::{Decoder, Parent, Ranking, Trace, WeightVector};
use crate::error::ParamsError;
use crate::graph::{Coloring, Graph};
use crate::seed::{self, Rng};

/// Directions tried per RWDE scout event.
pub const RWDE_ATTEMPTS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScoutPolicy {
    Random,
    Rwde,
}

impl ScoutPolicy {
    pub const ALL: [ScoutPolicy; 2] = [ScoutPolicy::Random, ScoutPolicy::Rwde];

    pub fn name(self) -> &'static str {
        match self {
            ScoutPolicy::Random => "random",
            ScoutPolicy::Rwde => "rwde",
        }
    }
}

impl fmt::Display for ScoutPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScoutPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(ScoutPolicy::Random),
            "rwde" | "hybrid" => Ok(ScoutPolicy::Rwde),
            other => Err(format!("unknown variant `{other}` (expected random or rwde)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverParams {
    /// Number of food sources.
    pub np: usize,
    /// A source whose trial counter exceeds this becomes a scout.
    pub limit: u64,
    /// Maximum number of decoder evaluations.
    pub max_fes: u64,
    pub lb: f64,
    pub ub: f64,
    /// RWDE step length.
    pub lambda: f64,
    pub scout_policy: ScoutPolicy,
    pub seed: u64,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            np: 100,
            limit: 1000,
            max_fes: 300_000,
            lb: 0.0,
            ub: 1.0,
            lambda: 0.1,
            scout_policy: ScoutPolicy::Rwde,
            seed: 0,
        }
    }
}

impl SolverParams {
    pub fn validate(&self) -> Result<(), ParamsError> {
        if self.np < 2 {
            return Err(ParamsError::PopulationTooSmall(self.np));
        }
        if !(self.lb.is_finite() && self.ub.is_finite() && self.lb < self.ub) {
            return Err(ParamsError::EmptyBounds {
                lb: self.lb,
                ub: self.ub,
            });
        }
        if self.max_fes < self.np as u64 {
            return Err(ParamsError::BudgetBelowPopulation {
                max_fes: self.max_fes,
                np: self.np,
            });
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(ParamsError::InvalidStep(self.lambda));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FoodSource {
    pub weights: WeightVector,
    /// Penalty of the decoded weights.
    pub fitness: usize,
    /// Consecutive attempts that failed to improve this source.
    pub trial: u64,
    ranking: Ranking,
    /// The decode that produced `fitness`.
    trace: Trace,
}

impl FoodSource {
    /// A source with a fresh trial counter, from the evaluator's most
    /// recent complete decode. `ranking` must be the ranking of `weights`
    /// and `fitness` its decoded penalty.
    fn new(weights: WeightVector, ranking: Ranking, fitness: usize, eval: &Evaluator<'_>) -> Self {
        debug_assert_eq!(ranking, Ranking::of(&weights));
        FoodSource {
            weights,
            fitness,
            trial: 0,
            ranking,
            trace: eval
                .decoder
                .last_trace()
                .expect("source comes from a complete decode")
                .clone(),
        }
    }

    /// Vertex ranking of `weights`, kept in sync with them.
    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }
}

/// Result of evaluating a candidate against the source it may replace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Strictly lower penalty than the bound.
    Better(usize),
    NotBetter,
    /// No budget left; nothing was evaluated.
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub best_coloring: Coloring,
    pub best_fitness: usize,
    pub evals_used: u64,
    /// Evaluation count at the first zero-penalty decode.
    pub evals_to_solution: Option<u64>,
    pub success: bool,
}

/// Budgeted fitness evaluation with best-so-far bookkeeping.
///
/// Every call to [`Evaluator::evaluate`] that returns `Some` costs exactly
/// one evaluation.
#[derive(Debug)]
pub struct Evaluator<'g> {
    decoder: Decoder<'g>,
    max_fes: u64,
    evals: u64,
    best_fitness: usize,
    best_colors: Vec<u8>,
    evals_to_solution: Option<u64>,
}

impl<'g> Evaluator<'g> {
    pub fn new(graph: &'g Graph, max_fes: u64) -> Self {
        Evaluator {
            decoder: Decoder::new(graph),
            max_fes,
            evals: 0,
            best_fitness: usize::MAX,
            best_colors: Vec::new(),
            evals_to_solution: None,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.decoder.graph()
    }

    /// Penalty of `weights`, or `None` once the budget is spent.
    pub fn evaluate(&mut self, weights: &WeightVector) -> Option<usize> {
        self.evaluate_ranked(&Ranking::of(weights))
    }

    /// Penalty of the weight vector ranked by `ranking`, or `None` once the
    /// budget is spent.
    pub fn evaluate_ranked(&mut self, ranking: &Ranking) -> Option<usize> {
        if self.evals >= self.max_fes {
            return None;
        }
        let fitness = self
            .decoder
            .penalty_ranked(ranking)
            .expect("rankings are sized to the graph");
        self.evals += 1;
        self.record(fitness);
        Some(fitness)
    }

    /// Evaluates `parent`'s weights with `moved` set to `weight`, which only
    /// matters if its penalty is below `bound`. `bound` must not be below the
    /// best penalty seen so far. Costs one evaluation either way; decoding
    /// stops as soon as the candidate is known to be no better.
    pub fn evaluate_moved(
        &mut self,
        parent: Parent<'_>,
        moved: usize,
        weight: f64,
        bound: usize,
    ) -> Verdict {
        if self.evals >= self.max_fes {
            return Verdict::Exhausted;
        }
        debug_assert!(bound >= self.best_fitness || self.evals == 0);
        let fitness = self
            .decoder
            .penalty_moved(parent, moved, weight, bound)
            .expect("candidates are sized to the graph");
        self.evals += 1;
        match fitness {
            Some(f) => {
                self.record(f);
                Verdict::Better(f)
            }
            None => Verdict::NotBetter,
        }
    }

    fn record(&mut self, fitness: usize) {
        if fitness < self.best_fitness {
            self.best_fitness = fitness;
            self.best_colors.clear();
            self.best_colors.extend_from_slice(self.decoder.last_colors());
            if fitness == 0 {
                self.evals_to_solution = Some(self.evals);
            }
        }
    }

    /// Solved, or out of budget.
    pub fn is_done(&self) -> bool {
        self.evals_to_solution.is_some() || self.evals >= self.max_fes
    }

    pub fn evals_used(&self) -> u64 {
        self.evals
    }

    pub fn best_fitness(&self) -> Option<usize> {
        (self.evals > 0).then_some(self.best_fitness)
    }

    pub fn outcome(&self) -> SolveOutcome {
        assert!(self.evals > 0, "no evaluation has been made");
        SolveOutcome {
            best_coloring: Coloring::from_raw(self.best_colors.clone()),
            best_fitness: self.best_fitness,
            evals_used: self.evals,
            evals_to_solution: self.evals_to_solution,
            success: self.evals_to_solution.is_some(),
        }
    }
}

/// Uniform random weights in `[lb, ub]`.
pub fn random_position(n: usize, lb: f64, ub: f64, rng: &mut Rng) -> WeightVector {
    WeightVector::from_raw(
        (0..n)
            .map(|_| rng.random::<f64>() * (ub - lb) + lb)
            .collect(),
    )
}

/// `source` with dimension `dim` moved by `phi * (source[dim] - partner[dim])`
/// and clamped to `[lb, ub]`.
pub fn neighbor_position(
    source: &WeightVector,
    partner: &WeightVector,
    dim: usize,
    phi: f64,
    lb: f64,
    ub: f64,
) -> WeightVector {
    let mut candidate = source.clone();
    candidate.as_mut_slice()[dim] = neighbor_weight(
        source.as_slice()[dim],
        partner.as_slice()[dim],
        phi,
        lb,
        ub,
    );
    candidate
}

/// `x + phi * (x - partner)`, clamped to `[lb, ub]`.
pub fn neighbor_weight(x: f64, partner: f64, phi: f64, lb: f64, ub: f64) -> f64 {
    (x + phi * (x - partner)).clamp(lb, ub)
}

/// `source + lambda * direction`, clamped componentwise to `[lb, ub]`.
pub fn rwde_position(
    source: &WeightVector,
    direction: &[f64],
    lambda: f64,
    lb: f64,
    ub: f64,
) -> WeightVector {
    WeightVector::from_raw(
        source
            .as_slice()
            .iter()
            .zip(direction)
            .map(|(&x, &u)| (x + lambda * u).clamp(lb, ub))
            .collect(),
    )
}

/// A direction drawn uniformly from the unit sphere in `n` dimensions.
pub fn unit_direction(n: usize, rng: &mut Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.into_iter().map(|x| x / norm).collect();
        }
        if n == 0 {
            return v;
        }
    }
}

/// Roulette-wheel probabilities, `q_i = 1 / (1 + f_i)` normalized. Lower
/// penalty means higher probability.
pub fn selection_probabilities(sources: &[FoodSource]) -> Vec<f64> {
    let q: Vec<f64> = sources
        .iter()
        .map(|s| 1.0 / (1.0 + s.fitness as f64))
        .collect();
    let total: f64 = q.iter().sum();
    q.into_iter().map(|x| x / total).collect()
}

/// `np` fresh random sources, each evaluated once.
pub fn init_population(
    eval: &mut Evaluator<'_>,
    params: &SolverParams,
    rng: &mut Rng,
) -> Result<Vec<FoodSource>, ParamsError> {
    params.validate()?;
    let remaining = params.max_fes.saturating_sub(eval.evals_used());
    if remaining < params.np as u64 {
        return Err(ParamsError::BudgetBelowPopulation {
            max_fes: remaining,
            np: params.np,
        });
    }
    let n = eval.graph().n();
    let sources = (0..params.np)
        .map(|_| {
            let weights = random_position(n, params.lb, params.ub, rng);
            let ranking = Ranking::of(&weights);
            let fitness = eval.evaluate_ranked(&ranking).expect("budget checked above");
            FoodSource::new(weights, ranking, fitness, eval)
        })
        .collect();
    Ok(sources)
}

/// One neighborhood move on source `i` with greedy replacement.
fn forage(
    sources: &mut [FoodSource],
    i: usize,
    eval: &mut Evaluator<'_>,
    params: &SolverParams,
    rng: &mut Rng,
) {
    let n = sources[i].weights.len();
    let dim = rng.random_range(0..n);
    let mut k = rng.random_range(0..sources.len() - 1);
    if k >= i {
        k += 1;
    }
    let phi = rng.random_range(-1.0..=1.0);
    let source = &sources[i];
    let weight = neighbor_weight(
        source.weights.as_slice()[dim],
        sources[k].weights.as_slice()[dim],
        phi,
        params.lb,
        params.ub,
    );
    let parent = Parent {
        weights: source.weights.as_slice(),
        ranking: &source.ranking,
        trace: &source.trace,
    };
    match eval.evaluate_moved(parent, dim, weight, source.fitness) {
        Verdict::Better(fitness) => {
            let mut candidate = source.weights.clone();
            candidate.as_mut_slice()[dim] = weight;
            let ranking = source.ranking.moved(&candidate, dim);
            sources[i] = FoodSource::new(candidate, ranking, fitness, eval);
        }
        Verdict::NotBetter => sources[i].trial += 1,
        Verdict::Exhausted => {}
    }
}

pub fn employed_phase(
    sources: &mut [FoodSource],
    eval: &mut Evaluator<'_>,
    params: &SolverParams,
    rng: &mut Rng,
) {
    for i in 0..sources.len() {
        if eval.is_done() {
            return;
        }
        forage(sources, i, eval, params, rng);
    }
}

pub fn onlooker_phase(
    sources: &mut [FoodSource],
    eval: &mut Evaluator<'_>,
    params: &SolverParams,
    rng: &mut Rng,
) {
    let probabilities = selection_probabilities(sources);
    let last = sources.len() - 1;
    for _ in 0..sources.len() {
        if eval.is_done() {
            return;
        }
        let mut r: f64 = rng.random();
        let i = probabilities
            .iter()
            .position(|&p| {
                r -= p;
                r < 0.0
            })
            .unwrap_or(last);
        forage(sources, i, eval, params, rng);
    }
}

/// Handles the source with the largest trial counter if it exceeds the
/// limit. Returns whether a scout was sent.
pub fn scout_phase(
    sources: &mut [FoodSource],
    eval: &mut Evaluator<'_>,
    params: &SolverParams,
    rng: &mut Rng,
) -> bool {
    let Some((i, trial)) = sources
        .iter()
        .map(|s| s.trial)
        .enumerate()
        .rev()
        .max_by_key(|&(_, t)| t)
    else {
        return false;
    };
    if trial <= params.limit || eval.is_done() {
        return false;
    }
    let n = sources[i].weights.len();
    match params.scout_policy {
        ScoutPolicy::Random => {
            let weights = random_position(n, params.lb, params.ub, rng);
            let ranking = Ranking::of(&weights);
            if let Some(fitness) = eval.evaluate_ranked(&ranking) {
                sources[i] = FoodSource::new(weights, ranking, fitness, eval);
            }
        }
        ScoutPolicy::Rwde => {
            let mut best: Option<FoodSource> = None;
            for _ in 0..RWDE_ATTEMPTS {
                let direction = unit_direction(n, rng);
                let weights =
                    rwde_position(&sources[i].weights, &direction, params.lambda, params.lb, params.ub);
                let ranking = Ranking::of(&weights);
                let Some(fitness) = eval.evaluate_ranked(&ranking) else {
                    break;
                };
                let improved = fitness < sources[i].fitness;
                if improved || best.as_ref().is_none_or(|b| fitness < b.fitness) {
                    best = Some(FoodSource::new(weights, ranking, fitness, eval));
                }
                if improved || eval.is_done() {
                    break;
                }
            }
            if let Some(replacement) = best {
                sources[i] = replacement;
            }
        }
    }
    true
}

/// A running search: population, budget and random stream.
#[derive(Debug)]
pub struct Colony<'g> {
    params: SolverParams,
    rng: Rng,
    eval: Evaluator<'g>,
    sources: Vec<FoodSource>,
    cycles: u64,
    scout_events: u64,
}

impl<'g> Colony<'g> {
    /// Validates `params` and evaluates the initial population.
    pub fn new(graph: &'g Graph, params: SolverParams) -> Result<Self, ParamsError> {
        params.validate()?;
        let mut rng = seed::rng_from_seed(params.seed);
        let mut eval = Evaluator::new(graph, params.max_fes);
        let sources = init_population(&mut eval, &params, &mut rng)?;
        Ok(Colony {
            params,
            rng,
            eval,
            sources,
            cycles: 0,
            scout_events: 0,
        })
    }

    /// Runs one employed / onlooker / scout cycle, stopping early if the
    /// search finishes partway.
    pub fn cycle(&mut self) {
        let Colony {
            params,
            rng,
            eval,
            sources,
            ..
        } = self;
        if eval.is_done() {
            return;
        }
        employed_phase(sources, eval, params, rng);
        onlooker_phase(sources, eval, params, rng);
        if scout_phase(sources, eval, params, rng) {
            self.scout_events += 1;
        }
        self.cycles += 1;
    }

    pub fn is_done(&self) -> bool {
        self.eval.is_done()
    }

    pub fn run(mut self) -> SolveOutcome {
        while !self.is_done() {
            self.cycle();
        }
        self.eval.outcome()
    }

    pub fn sources(&self) -> &[FoodSource] {
        &self.sources
    }

    pub fn best_fitness(&self) -> usize {
        self.eval.best_fitness().expect("population is evaluated")
    }

    pub fn evals_used(&self) -> u64 {
        self.eval.evals_used()
    }

    pub fn cycles(&self) -> u64 {
        self.cycles
    }

    pub fn scout_events(&self) -> u64 {
        self.scout_events
    }

    pub fn outcome(&self) -> SolveOutcome {
        self.eval.outcome()
    }
}

/// Runs the colony to completion.
pub fn solve(graph: &Graph, params: &SolverParams) -> Result<SolveOutcome, ParamsError> {
    Ok(Colony::new(graph, *params)?.run())
}
