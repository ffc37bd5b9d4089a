//! Experiment execution: instance sweeps, repeated runs and their results.
//!
//! A plan expands to one solver run per `(family, p, instance seed, variant,
//! run index)`. Runs are independent and execute on a rayon pool; results
//! come back in that canonical nesting order regardless of scheduling.
//!
//! Both scout variants of the same `(instance, run)` receive the same solver
//! seed, so their searches coincide until the first scout event.

mod csv_io;
mod stats;

use std::time::{Duration, Instant};

use rayon::prelude::*;

pub use csv_io::{
    read_records, write_ablation, write_aggregate, write_records, AGGREGATE_HEADER, RECORD_HEADER,
};
pub use stats::{
    ablation_table, aggregate, relative_improvement, AblationRow, AblationTable, AggregateStats,
    FamilySummary,
};

use crate::abc::{solve, ScoutPolicy, SolverParams};
use crate::error::HarnessError;
use crate::generator::{generate, Family, InstanceSpec};
use crate::graph::Graph;
use crate::seed;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentPlan {
    pub families: Vec<Family>,
    pub n: usize,
    pub p_values: Vec<f64>,
    pub instance_seeds: Vec<u64>,
    pub runs_per_instance: usize,
    /// Template; `seed` and `scout_policy` are overridden per run.
    pub params: SolverParams,
    pub variants: Vec<ScoutPolicy>,
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let empty = |what: &str| Err(HarnessError::InvalidPlan(format!("no {what} given")));
        if self.families.is_empty() {
            return empty("families");
        }
        if self.p_values.is_empty() {
            return empty("edge probabilities");
        }
        if self.instance_seeds.is_empty() {
            return empty("instance seeds");
        }
        if self.variants.is_empty() {
            return empty("variants");
        }
        if self.runs_per_instance == 0 {
            return Err(HarnessError::InvalidPlan(
                "runs per instance must be at least 1".into(),
            ));
        }
        self.params.validate()?;
        Ok(())
    }

    pub fn total_runs(&self) -> usize {
        self.families.len()
            * self.p_values.len()
            * self.instance_seeds.len()
            * self.variants.len()
            * self.runs_per_instance
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub family: Family,
    pub n: usize,
    pub p: f64,
    pub instance_seed: u64,
    pub variant: ScoutPolicy,
    pub run_index: usize,
    pub success: bool,
    pub evals_to_solution: Option<u64>,
    pub best_fitness: usize,
    pub evals_used: u64,
    pub wall_time: Duration,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
    /// Measure wall time per run. When off every record reports zero,
    /// making the output byte-reproducible.
    pub record_wall_time: bool,
}

/// Solver seed for one run. Independent of the scout variant.
pub fn run_seed(family: Family, n: usize, p: f64, instance_seed: u64, run_index: usize) -> u64 {
    seed::mix(&[
        family as u64,
        n as u64,
        p.to_bits(),
        instance_seed,
        run_index as u64,
    ])
}

/// Evenly spaced edge probabilities from `from` to `to` inclusive, rounded
/// to nine decimals so that e.g. `0.008 + 5 * 0.001` prints as `0.013`.
pub fn p_sweep(from: f64, to: f64, step: f64) -> Result<Vec<f64>, HarnessError> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) || step <= 0.0 || to < from {
        return Err(HarnessError::InvalidPlan(format!(
            "empty sweep {from}..{to} step {step}"
        )));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| ((from + i as f64 * step) * 1e9).round() / 1e9)
        .collect())
}

struct Instance {
    family: Family,
    p: f64,
    seed: u64,
    graph: Graph,
}

struct Job {
    instance: usize,
    variant: ScoutPolicy,
    run_index: usize,
}

pub fn run_plan(
    plan: &ExperimentPlan,
    options: RunOptions,
) -> Result<Vec<RunRecord>, HarnessError> {
    plan.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = options.threads {
        builder = builder.num_threads(threads);
    }
    let pool = builder
        .build()
        .map_err(|e| HarnessError::InvalidPlan(format!("thread pool: {e}")))?;
    pool.install(|| execute(plan, options))
}

fn execute(plan: &ExperimentPlan, options: RunOptions) -> Result<Vec<RunRecord>, HarnessError> {
    let mut keys = Vec::new();
    for &family in &plan.families {
        for &p in &plan.p_values {
            for &seed in &plan.instance_seeds {
                keys.push((family, p, seed));
            }
        }
    }
    let instances = keys
        .into_par_iter()
        .map(|(family, p, seed)| {
            let wrap = |source| HarnessError::Instance {
                family: family.to_string(),
                n: plan.n,
                p,
                seed,
                source,
            };
            let spec = InstanceSpec::new(plan.n, family, p, seed).map_err(wrap)?;
            let graph = generate(&spec).map_err(wrap)?;
            Ok(Instance {
                family,
                p,
                seed,
                graph,
            })
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;

    let jobs: Vec<Job> = (0..instances.len())
        .flat_map(|instance| {
            plan.variants.iter().flat_map(move |&variant| {
                (0..plan.runs_per_instance).map(move |run_index| Job {
                    instance,
                    variant,
                    run_index,
                })
            })
        })
        .collect();

    jobs.par_iter()
        .map(|job| {
            let inst = &instances[job.instance];
            let params = SolverParams {
                scout_policy: job.variant,
                seed: run_seed(inst.family, plan.n, inst.p, inst.seed, job.run_index),
                ..plan.params
            };
            let started = Instant::now();
            let outcome = solve(&inst.graph, &params)?;
            let wall_time = if options.record_wall_time {
                started.elapsed()
            } else {
                Duration::ZERO
            };
            Ok(RunRecord {
                family: inst.family,
                n: plan.n,
                p: inst.p,
                instance_seed: inst.seed,
                variant: job.variant,
                run_index: job.run_index,
                success: outcome.success,
                evals_to_solution: outcome.evals_to_solution,
                best_fitness: outcome.best_fitness,
                evals_used: outcome.evals_used,
                wall_time,
            })
        })
        .collect()
}
