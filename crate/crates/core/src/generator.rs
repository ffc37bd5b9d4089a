//! Seeded random 3-colorable instances.
//!
//! Every instance hides a 3-coloring: vertices are split into three classes
//! and edges only ever join different classes.
//!
//! * `uniform`: each vertex picks its class independently and uniformly;
//!   each cross-class pair becomes an edge with probability `p`.
//! * `equipartite`: class sizes differ by at most one; edges as for uniform.
//! * `flat`: equipartite classes and exactly `round(p * n * (n - 1) / 2)`
//!   edges, added one at a time between a cross-class non-adjacent pair whose
//!   degree sum is currently minimal (ties broken uniformly at random). This
//!   keeps the degree spread small.
//!
//! The random stream for a spec is seeded from `mix([seed, n, family, p])`,
//! see [`crate::seed`].

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::SpecError;
use crate::graph::{Coloring, Graph};
use crate::seed::{self, Rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Uniform,
    Equipartite,
    Flat,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Uniform, Family::Equipartite, Family::Flat];

    pub fn name(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Equipartite => "equipartite",
            Family::Flat => "flat",
        }
    }

    fn tag(self) -> u64 {
        match self {
            Family::Uniform => 0,
            Family::Equipartite => 1,
            Family::Flat => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(Family::Uniform),
            "equipartite" | "equi-partite" => Ok(Family::Equipartite),
            "flat" => Ok(Family::Flat),
            other => Err(format!(
                "unknown family `{other}` (expected uniform, equipartite or flat)"
            )),
        }
    }
}

/// Parameters identifying one generated instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InstanceSpec {
    pub n: usize,
    pub family: Family,
    pub p: f64,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(n: usize, family: Family, p: f64, seed: u64) -> Result<Self, SpecError> {
        let spec = InstanceSpec { n, family, p, seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if self.n < 3 {
            return Err(SpecError::TooFewVertices(self.n));
        }
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(SpecError::ProbabilityOutOfRange(self.p));
        }
        Ok(())
    }

    fn rng(&self) -> Rng {
        seed::rng_from_seed(seed::mix(&[
            self.seed,
            self.n as u64,
            self.family.tag(),
            self.p.to_bits(),
        ]))
    }

    /// Edge count a flat instance of this spec will have.
    pub fn flat_edge_target(&self) -> usize {
        let pairs = (self.n * (self.n - 1) / 2) as f64;
        (self.p * pairs).round() as usize
    }
}

/// The hidden class of every vertex, as a coloring. It is proper on
/// `generate(spec)`.
pub fn hidden_classes(spec: &InstanceSpec) -> Result<Coloring, SpecError> {
    spec.validate()?;
    let mut rng = spec.rng();
    Ok(Coloring::from_raw(draw_classes(spec, &mut rng)))
}

pub fn generate(spec: &InstanceSpec) -> Result<Graph, SpecError> {
    spec.validate()?;
    let mut rng = spec.rng();
    let classes = draw_classes(spec, &mut rng);
    let edges = match spec.family {
        Family::Uniform | Family::Equipartite => bernoulli_edges(&classes, spec.p, &mut rng),
        Family::Flat => {
            let target = spec.flat_edge_target();
            let eligible = cross_class_pairs(&classes);
            if target > eligible {
                return Err(SpecError::FlatTargetUnreachable { target, eligible });
            }
            FlatBuilder::new(&classes).build(target, &mut rng)
        }
    };
    Ok(Graph::new(spec.n, edges).expect("generated endpoints are in range"))
}

fn draw_classes(spec: &InstanceSpec, rng: &mut Rng) -> Vec<u8> {
    match spec.family {
        Family::Uniform => (0..spec.n).map(|_| rng.random_range(1..=3u8)).collect(),
        Family::Equipartite | Family::Flat => {
            let mut classes: Vec<u8> = (0..spec.n).map(|i| (i % 3) as u8 + 1).collect();
            classes.shuffle(rng);
            classes
        }
    }
}

fn cross_class_pairs(classes: &[u8]) -> usize {
    let mut sizes = [0usize; 3];
    for &c in classes {
        sizes[c as usize - 1] += 1;
    }
    sizes[0] * sizes[1] + sizes[0] * sizes[2] + sizes[1] * sizes[2]
}

fn bernoulli_edges(classes: &[u8], p: f64, rng: &mut Rng) -> Vec<(usize, usize)> {
    let n = classes.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if classes[u] != classes[v] && rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Incremental state for flat generation.
///
/// Vertices are bucketed by `(degree, class)` so the number of cross-class
/// pairs with a given degree sum can be counted without touching every pair.
/// `sum_hist[s]` counts existing edges whose endpoint degrees sum to `s`;
/// subtracting it gives the number of *non-adjacent* pairs at that sum.
struct FlatBuilder<'a> {
    classes: &'a [u8],
    degree: Vec<usize>,
    /// `buckets[d][c]` holds the vertices of degree `d` in class `c`.
    buckets: Vec<[Vec<usize>; 3]>,
    /// Position of each vertex inside its bucket.
    slot: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
    edge_set: HashSet<(usize, usize)>,
    sum_hist: Vec<usize>,
}

/// A pair of buckets that can supply an edge, and how many pairs it holds.
#[derive(Clone, Copy)]
struct BucketPair {
    a: (usize, usize),
    b: (usize, usize),
    count: usize,
}

const FLAT_REJECTION_ATTEMPTS: usize = 64;

impl<'a> FlatBuilder<'a> {
    fn new(classes: &'a [u8]) -> Self {
        let n = classes.len();
        let mut buckets = vec![[Vec::new(), Vec::new(), Vec::new()]; n.max(1)];
        let mut slot = vec![0; n];
        for (v, &c) in classes.iter().enumerate() {
            let bucket = &mut buckets[0][c as usize - 1];
            slot[v] = bucket.len();
            bucket.push(v);
        }
        FlatBuilder {
            classes,
            degree: vec![0; n],
            buckets,
            slot,
            adjacency: vec![Vec::new(); n],
            edge_set: HashSet::new(),
            sum_hist: vec![0; 2 * n.max(1)],
        }
    }

    fn build(mut self, target: usize, rng: &mut Rng) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(target);
        for _ in 0..target {
            let (u, v) = self.pick(rng);
            self.add_edge(u, v);
            edges.push((u, v));
        }
        edges
    }

    fn class(&self, v: usize) -> usize {
        self.classes[v] as usize - 1
    }

    fn bucket_pairs(&self, sum: usize, d_min: usize, d_max: usize) -> Vec<BucketPair> {
        let mut pairs = Vec::new();
        let lo = d_min.max(sum.saturating_sub(d_max));
        for d1 in lo..=sum / 2 {
            let d2 = sum - d1;
            if d2 > d_max {
                continue;
            }
            for c1 in 0..3 {
                for c2 in 0..3 {
                    if c1 == c2 || (d1 == d2 && c1 > c2) {
                        continue;
                    }
                    let count = self.buckets[d1][c1].len() * self.buckets[d2][c2].len();
                    if count > 0 {
                        pairs.push(BucketPair {
                            a: (d1, c1),
                            b: (d2, c2),
                            count,
                        });
                    }
                }
            }
        }
        pairs
    }

    /// Uniform choice among non-adjacent cross-class pairs of minimal
    /// degree sum.
    fn pick(&self, rng: &mut Rng) -> (usize, usize) {
        let d_min = *self.degree.iter().min().unwrap();
        let d_max = *self.degree.iter().max().unwrap();
        for sum in 2 * d_min..=2 * d_max {
            let pairs = self.bucket_pairs(sum, d_min, d_max);
            let total: usize = pairs.iter().map(|p| p.count).sum();
            let free = total - self.sum_hist[sum];
            if free == 0 {
                continue;
            }
            for _ in 0..FLAT_REJECTION_ATTEMPTS {
                let mut r = rng.random_range(0..total);
                let chosen = pairs
                    .iter()
                    .find(|p| {
                        if r < p.count {
                            true
                        } else {
                            r -= p.count;
                            false
                        }
                    })
                    .unwrap();
                let a = &self.buckets[chosen.a.0][chosen.a.1];
                let b = &self.buckets[chosen.b.0][chosen.b.1];
                let (u, v) = (a[r / b.len()], b[r % b.len()]);
                let key = (u.min(v), u.max(v));
                if !self.edge_set.contains(&key) {
                    return key;
                }
            }
            // dense corner: enumerate the free pairs explicitly
            let mut candidates = Vec::with_capacity(free);
            for p in &pairs {
                for &u in &self.buckets[p.a.0][p.a.1] {
                    for &v in &self.buckets[p.b.0][p.b.1] {
                        let key = (u.min(v), u.max(v));
                        if !self.edge_set.contains(&key) {
                            candidates.push(key);
                        }
                    }
                }
            }
            debug_assert_eq!(candidates.len(), free);
            return candidates[rng.random_range(0..candidates.len())];
        }
        unreachable!("target was checked against the number of cross-class pairs")
    }

    fn move_to_degree(&mut self, v: usize, new_degree: usize) {
        let (old, c) = (self.degree[v], self.class(v));
        let bucket = &mut self.buckets[old][c];
        let at = self.slot[v];
        bucket.swap_remove(at);
        if let Some(&moved) = bucket.get(at) {
            self.slot[moved] = at;
        }
        let bucket = &mut self.buckets[new_degree][c];
        self.slot[v] = bucket.len();
        bucket.push(v);
        self.degree[v] = new_degree;
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        for x in [u, v] {
            for &w in &self.adjacency[x] {
                self.sum_hist[self.degree[x] + self.degree[w]] -= 1;
            }
        }
        self.move_to_degree(u, self.degree[u] + 1);
        self.move_to_degree(v, self.degree[v] + 1);
        for x in [u, v] {
            for &w in &self.adjacency[x] {
                self.sum_hist[self.degree[x] + self.degree[w]] += 1;
            }
        }
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        self.sum_hist[self.degree[u] + self.degree[v]] += 1;
        self.edge_set.insert((u, v));
    }
}
