//! Success rate / average evaluations to solution, and the scout-policy
//! comparison table.

use std::collections::BTreeMap;

use super::RunRecord;
use crate::abc::ScoutPolicy;
use crate::error::HarnessError;
use crate::generator::Family;

#[derive(Clone, Debug, PartialEq)]
pub struct AggregateStats {
    pub family: Family,
    pub n: usize,
    pub p: f64,
    pub variant: ScoutPolicy,
    pub runs: usize,
    pub successes: usize,
    /// Fraction of successful runs.
    pub sr: f64,
    /// Mean evaluations to solution over successful runs only.
    pub aes: Option<f64>,
}

/// Positive floats order the same as their bit patterns.
type GroupKey = (Family, usize, u64, ScoutPolicy);

/// SR and AES per `(family, n, p, variant)`, sorted by that key.
pub fn aggregate(records: &[RunRecord]) -> Vec<AggregateStats> {
    let mut groups: BTreeMap<GroupKey, (usize, Vec<u64>)> = BTreeMap::new();
    for r in records {
        let entry = groups
            .entry((r.family, r.n, r.p.to_bits(), r.variant))
            .or_default();
        entry.0 += 1;
        if let Some(evals) = r.evals_to_solution {
            entry.1.push(evals);
        }
    }
    groups
        .into_iter()
        .map(|((family, n, p, variant), (runs, solved))| {
            let aes = (!solved.is_empty())
                .then(|| solved.iter().map(|&e| e as f64).sum::<f64>() / solved.len() as f64);
            AggregateStats {
                family,
                n,
                p: f64::from_bits(p),
                variant,
                runs,
                successes: solved.len(),
                sr: solved.len() as f64 / runs as f64,
                aes,
            }
        })
        .collect()
}

/// `(hybrid - random) / random` in percent; undefined when `random` is zero.
pub fn relative_improvement(random: f64, hybrid: f64) -> Option<f64> {
    (random != 0.0).then(|| (hybrid - random) / random * 100.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AblationRow {
    pub family: Family,
    pub n: usize,
    pub p: f64,
    pub sr_random: f64,
    pub sr_rwde: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilySummary {
    pub family: Family,
    pub n: usize,
    /// Mean SR over the family's rows, rounded to three decimals.
    pub avg_random: f64,
    pub avg_rwde: f64,
    /// Computed from the rounded averages, as they are reported.
    pub improvement_pct: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AblationTable {
    pub rows: Vec<AblationRow>,
    pub summaries: Vec<FamilySummary>,
    /// Mean of the defined per-family improvements.
    pub overall_improvement_pct: Option<f64>,
}

fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

/// Random-vs-RWDE success rates side by side. Every `(family, n, p)` group
/// must contain runs of both variants.
pub fn ablation_table(records: &[RunRecord]) -> Result<AblationTable, HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::NoRecords);
    }
    let mut cells: BTreeMap<(Family, usize, u64), [Option<f64>; 2]> = BTreeMap::new();
    for stat in aggregate(records) {
        let slot = match stat.variant {
            ScoutPolicy::Random => 0,
            ScoutPolicy::Rwde => 1,
        };
        cells
            .entry((stat.family, stat.n, stat.p.to_bits()))
            .or_default()[slot] = Some(stat.sr);
    }

    let mut rows = Vec::with_capacity(cells.len());
    for ((family, n, p), srs) in cells {
        let p = f64::from_bits(p);
        let missing = |variant: ScoutPolicy| HarnessError::MissingVariant {
            family: family.to_string(),
            n,
            p,
            variant: variant.to_string(),
        };
        rows.push(AblationRow {
            family,
            n,
            p,
            sr_random: srs[0].ok_or_else(|| missing(ScoutPolicy::Random))?,
            sr_rwde: srs[1].ok_or_else(|| missing(ScoutPolicy::Rwde))?,
        });
    }

    let mut summaries = Vec::new();
    for chunk in rows.chunk_by(|a, b| (a.family, a.n) == (b.family, b.n)) {
        let len = chunk.len() as f64;
        let avg_random = round3(chunk.iter().map(|r| r.sr_random).sum::<f64>() / len);
        let avg_rwde = round3(chunk.iter().map(|r| r.sr_rwde).sum::<f64>() / len);
        summaries.push(FamilySummary {
            family: chunk[0].family,
            n: chunk[0].n,
            avg_random,
            avg_rwde,
            improvement_pct: relative_improvement(avg_random, avg_rwde),
        });
    }
    let defined: Vec<f64> = summaries.iter().filter_map(|s| s.improvement_pct).collect();
    let overall_improvement_pct =
        (!defined.is_empty()).then(|| defined.iter().sum::<f64>() / defined.len() as f64);

    Ok(AblationTable {
        rows,
        summaries,
        overall_improvement_pct,
    })
}
