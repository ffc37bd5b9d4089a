//! Weight-guided DSatur: turns a real-valued weight vector into a 3-coloring.
//!
//! Vertices are colored one at a time. The next vertex is the uncolored one
//! with the highest saturation degree (number of distinct colors among its
//! colored neighbors); ties go to the larger weight, then to the smaller
//! index. It receives the smallest color unused by its colored neighbors, or
//! when all three are used, the color shared with the fewest of them
//! (smallest color on ties).
//!
//! Only the relative order of weights matters, so many weight vectors decode
//! to the same coloring.

use std::cmp::Ordering;

use crate::error::GraphError;
use crate::graph::{Coloring, Graph, PALETTE};

const LEVELS: usize = PALETTE as usize + 1;

/// A vertex weight vector with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self, GraphError> {
        if let Some(i) = weights.iter().position(|w| !w.is_finite()) {
            return Err(GraphError::NonFiniteWeight(i));
        }
        Ok(WeightVector(weights))
    }

    /// Entries must be finite.
    pub(crate) fn from_raw(weights: Vec<f64>) -> Self {
        debug_assert!(weights.iter().all(|w| w.is_finite()));
        WeightVector(weights)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub coloring: Coloring,
    pub penalty: usize,
    /// Vertices in the order they were colored.
    pub order: Vec<usize>,
}

/// Vertices by descending weight, ascending index among equal weights.
/// This is the tie-break order the decoder uses between vertices of equal
/// saturation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranking(Vec<u32>);

/// Whether `a` with weight `wa` comes before `b` with weight `wb`.
fn outranks(wa: f64, a: u32, wb: f64, b: u32) -> bool {
    wa > wb || (wa == wb && a < b)
}

fn ranks_before(w: &[f64], a: u32, b: u32) -> Ordering {
    let (wa, wb) = (w[a as usize], w[b as usize]);
    wb.partial_cmp(&wa)
        .expect("weights are finite")
        .then(a.cmp(&b))
}

impl Ranking {
    pub fn of(weights: &WeightVector) -> Self {
        let mut ranking = Ranking(Vec::new());
        ranking.assign(weights);
        ranking
    }

    /// Recomputes `self` for `weights` from scratch.
    pub fn assign(&mut self, weights: &WeightVector) {
        let w = weights.as_slice();
        assert!(w.len() < u32::MAX as usize);
        self.0.clear();
        self.0.extend(0..w.len() as u32);
        self.0.sort_unstable_by(|&a, &b| ranks_before(w, a, b));
    }

    /// Sets `self` to the ranking of `weights` with `vertex` reweighted to
    /// `weight`, given that `parent` ranks `weights`. Linear time.
    pub fn assign_moved(&mut self, parent: &Ranking, weights: &[f64], vertex: usize, weight: f64) {
        let x = vertex as u32;
        let old = parent
            .0
            .partition_point(|&v| outranks(weights[v as usize], v, weights[vertex], x));
        debug_assert_eq!(parent.0[old], x);
        self.splice(parent, old, weights, x, weight, weight > weights[vertex]);
    }

    /// Ranking of `weights`, which must equal the vector ranked by `self`
    /// everywhere except at `vertex`.
    pub fn moved(&self, weights: &WeightVector, vertex: usize) -> Ranking {
        let x = vertex as u32;
        let old = self.0.iter().position(|&v| v == x).expect("vertex is ranked");
        let w = weights.as_slice();
        let up = old > 0 && outranks(w[vertex], x, w[self.0[old - 1] as usize], self.0[old - 1]);
        let mut out = Ranking(Vec::with_capacity(self.0.len()));
        out.splice(self, old, w, x, w[vertex], up);
        out
    }

    /// `parent` with `x`, found at `old`, moved towards the front (`up`) or
    /// the back to where `weight` puts it.
    fn splice(&mut self, parent: &Ranking, old: usize, weights: &[f64], x: u32, weight: f64, up: bool) {
        let p = &parent.0;
        let ahead = |v: &u32| outranks(weights[*v as usize], *v, weight, x);
        self.0.clear();
        if up {
            let at = p[..old].partition_point(ahead);
            self.0.extend_from_slice(&p[..at]);
            self.0.push(x);
            self.0.extend_from_slice(&p[at..old]);
            self.0.extend_from_slice(&p[old + 1..]);
        } else {
            let at = old + 1 + p[old + 1..].partition_point(ahead);
            self.0.extend_from_slice(&p[..old]);
            self.0.extend_from_slice(&p[old + 1..at]);
            self.0.push(x);
            self.0.extend_from_slice(&p[at..]);
        }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Decodes `weights` on `graph`.
pub fn decode(graph: &Graph, weights: &WeightVector) -> Result<DecodeResult, GraphError> {
    Decoder::new(graph).decode(weights)
}

/// A complete decode, step by step: enough to restart decoding a slightly
/// different weight vector part-way instead of from scratch.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    order: Vec<u32>,
    /// Inverse of `order`.
    position: Vec<u32>,
    colors: Vec<u8>,
    /// Saturation of the vertex colored at each step, which is the highest
    /// saturation among the uncolored vertices at that point.
    level: Vec<u8>,
    /// Penalty of the partial coloring before each step, and at the end.
    penalty_before: Vec<u32>,
}

impl Trace {
    fn with_len(n: usize) -> Self {
        Trace {
            order: Vec::with_capacity(n),
            position: vec![0; n],
            colors: vec![0; n],
            level: Vec::with_capacity(n),
            penalty_before: Vec::with_capacity(n + 1),
        }
    }

    fn is_complete(&self) -> bool {
        self.order.len() == self.colors.len() && self.penalty_before.len() == self.order.len() + 1
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn penalty(&self) -> usize {
        self.penalty_before.last().map_or(0, |&p| p as usize)
    }
}

/// A decoded weight vector, to decode small changes of it incrementally.
#[derive(Clone, Copy, Debug)]
pub struct Parent<'a> {
    pub weights: &'a [f64],
    /// Must be the ranking of `weights`.
    pub ranking: &'a Ranking,
    /// Must be the decode of `weights`.
    pub trace: &'a Trace,
}

/// Where decoding a reweighted [`Parent`] first departs from the parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Divergence {
    /// Identical decode.
    Never,
    /// The moved vertex is colored at this step, earlier than before.
    At(usize),
    /// The moved vertex, now ranked lower, may lose the step at which it was
    /// colored.
    Unless(usize),
}

/// Reusable decoder for one graph. Keeps its scratch buffers between calls,
/// so repeated decoding does not allocate.
#[derive(Clone, Debug)]
pub struct Decoder<'g> {
    graph: &'g Graph,
    /// CSR adjacency: neighbors of `v` are `targets[offsets[v]..offsets[v + 1]]`.
    offsets: Vec<u32>,
    targets: Vec<u32>,
    ranking: Ranking,
    rank: Vec<u32>,
    buckets: Buckets,
    saturation: Vec<u8>,
    /// Colored-neighbor count per color, indexed `[vertex][color - 1]`.
    /// Only meaningful for uncolored vertices.
    neighbor_colors: Vec<[u32; PALETTE as usize]>,
    violated: Vec<bool>,
    trace: Trace,
    /// Scratch: colored neighbors of the reweighted vertex, as (step, color).
    events: Vec<(u32, u8)>,
    /// Scratch: uncolored vertices next to a restored prefix.
    frontier: Vec<u32>,
}

impl<'g> Decoder<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let n = graph.n();
        assert!(n < u32::MAX as usize, "graph too large for the decoder");
        let words = n.div_ceil(64);
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(2 * graph.m());
        offsets.push(0);
        for v in 0..n {
            targets.extend(graph.neighbors(v).iter().map(|&u| u as u32));
            offsets.push(targets.len() as u32);
        }
        Decoder {
            graph,
            offsets,
            targets,
            ranking: Ranking(Vec::with_capacity(n)),
            rank: vec![0; n],
            buckets: Buckets {
                words,
                bits: vec![0; LEVELS * words],
                len: [0; LEVELS],
            },
            saturation: vec![0; n],
            neighbor_colors: vec![[0; PALETTE as usize]; n],
            violated: vec![false; n],
            trace: Trace::with_len(n),
            events: Vec::new(),
            frontier: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    fn check_len(&self, len: usize) -> Result<(), GraphError> {
        if len != self.graph.n() {
            return Err(GraphError::LengthMismatch {
                expected: self.graph.n(),
                actual: len,
            });
        }
        Ok(())
    }

    pub fn decode(&mut self, weights: &WeightVector) -> Result<DecodeResult, GraphError> {
        let penalty = self.penalty(weights)?;
        Ok(DecodeResult {
            coloring: Coloring::from_raw(self.trace.colors.clone()),
            penalty,
            order: self.trace.order.iter().map(|&v| v as usize).collect(),
        })
    }

    /// Decodes and returns only the penalty. The coloring stays available
    /// through [`Decoder::last_trace`] until the next call.
    pub fn penalty(&mut self, weights: &WeightVector) -> Result<usize, GraphError> {
        self.check_len(weights.len())?;
        let mut ranking = std::mem::replace(&mut self.ranking, Ranking(Vec::new()));
        ranking.assign(weights);
        let penalty = self.run(&ranking, usize::MAX, None);
        self.ranking = ranking;
        Ok(penalty.expect("unbounded decode completes"))
    }

    /// Decodes the weight vector whose [`Ranking`] is `ranking`.
    pub fn penalty_ranked(&mut self, ranking: &Ranking) -> Result<usize, GraphError> {
        self.check_len(ranking.len())?;
        Ok(self
            .run(ranking, usize::MAX, None)
            .expect("unbounded decode completes"))
    }

    /// Like [`Decoder::penalty_ranked`], but gives up and returns `None` as
    /// soon as the penalty is known to be at least `bound`, leaving the
    /// coloring incomplete.
    pub fn penalty_below(
        &mut self,
        ranking: &Ranking,
        bound: usize,
    ) -> Result<Option<usize>, GraphError> {
        self.check_len(ranking.len())?;
        if bound == 0 {
            return Ok(None);
        }
        Ok(self.run(ranking, bound, None))
    }

    /// [`Decoder::penalty_below`] for `parent`'s weights with vertex `moved`
    /// reweighted to `weight`. Decoding starts from the parent's state at the
    /// first step where the two can differ, and often finishes without
    /// decoding anything.
    pub fn penalty_moved(
        &mut self,
        parent: Parent<'_>,
        moved: usize,
        weight: f64,
        bound: usize,
    ) -> Result<Option<usize>, GraphError> {
        let n = self.graph.n();
        self.check_len(parent.weights.len())?;
        self.check_len(parent.ranking.len())?;
        self.check_len(parent.trace.colors.len())?;
        assert!(parent.trace.is_complete(), "parent trace is incomplete");
        if moved >= n {
            return Err(GraphError::VertexOutOfRange { vertex: moved, n });
        }
        if !weight.is_finite() {
            return Err(GraphError::NonFiniteWeight(moved));
        }
        if bound == 0 {
            return Ok(None);
        }
        let (start, watch) = match self.divergence(&parent, moved, weight) {
            Divergence::Never => return Ok(self.repeat(parent.trace, bound)),
            Divergence::At(step) => (step, None),
            Divergence::Unless(step) => (step, Some(moved)),
        };
        if parent.trace.penalty_before[start] as usize >= bound {
            return Ok(None);
        }
        let mut ranking = std::mem::replace(&mut self.ranking, Ranking(Vec::new()));
        ranking.assign_moved(parent.ranking, parent.weights, moved, weight);
        let penalty = self.run(&ranking, bound, Some((parent.trace, start, watch)));
        self.ranking = ranking;
        Ok(penalty)
    }

    /// The outcome of decoding to exactly `trace` again.
    fn repeat(&mut self, trace: &Trace, bound: usize) -> Option<usize> {
        if trace.penalty() >= bound {
            return None;
        }
        self.trace.clone_from(trace);
        Some(trace.penalty())
    }

    /// The most recent decode, if it ran to completion.
    pub fn last_trace(&self) -> Option<&Trace> {
        self.trace.is_complete().then_some(&self.trace)
    }

    /// Colors produced by the most recent completed decode.
    pub fn last_colors(&self) -> &[u8] {
        &self.trace.colors
    }

    /// Finds the first step at which decoding `p`'s reweighted vector can
    /// depart from `p`. Before the moved vertex `x` is colored, only steps
    /// where `x` has the top saturation can change; at such a step `x` wins
    /// exactly when it now outranks the parent's pick.
    fn divergence(&mut self, p: &Parent<'_>, x: usize, weight: f64) -> Divergence {
        let t = p.trace;
        let px = t.position[x] as usize;
        self.events.clear();
        for &u in &self.targets[self.offsets[x] as usize..self.offsets[x + 1] as usize] {
            let pu = t.position[u as usize];
            if (pu as usize) < px {
                self.events.push((pu, t.colors[u as usize]));
            }
        }
        self.events.sort_unstable();

        let outranks = |y: usize| {
            let wy = p.weights[y];
            outranks(weight, x as u32, wy, y as u32)
        };
        let mut seen = 0u8;
        let mut sat = 0u8;
        let mut next = 0;
        for s in 0..px {
            while next < self.events.len() && (self.events[next].0 as usize) < s {
                let bit = 1 << self.events[next].1;
                sat += u8::from(seen & bit == 0);
                seen |= bit;
                next += 1;
            }
            if t.level[s] == sat && outranks(t.order[s] as usize) {
                return Divergence::At(s);
            }
        }
        if weight >= p.weights[x] {
            Divergence::Never
        } else {
            Divergence::Unless(px)
        }
    }

    /// Empty coloring.
    fn reset(&mut self) {
        let n = self.graph.n();
        self.buckets.reset(n);
        self.saturation.fill(0);
        self.neighbor_colors.fill([0; PALETTE as usize]);
        self.violated.fill(false);
        let t = &mut self.trace;
        t.colors.fill(0);
        t.order.clear();
        t.level.clear();
        t.penalty_before.clear();
        t.penalty_before.push(0);
    }

    /// The state of `parent` after its first `steps` steps, with the current
    /// ranks. Only the colored prefix and its uncolored neighbors are
    /// visited individually.
    fn restore(&mut self, parent: &Trace, steps: usize) {
        let prefix = &parent.order[..steps];
        let t = &mut self.trace;
        t.order.clear();
        t.order.extend_from_slice(prefix);
        t.level.clear();
        t.level.extend_from_slice(&parent.level[..steps]);
        t.penalty_before.clear();
        t.penalty_before
            .extend_from_slice(&parent.penalty_before[..=steps]);
        t.colors.fill(0);
        self.neighbor_colors.fill([0; PALETTE as usize]);
        self.saturation.fill(0);
        self.violated.fill(false);
        self.buckets.reset(self.graph.n());

        for &v in prefix {
            let v = v as usize;
            t.colors[v] = parent.colors[v];
            t.position[v] = parent.position[v];
            self.buckets.remove(0, self.rank[v] as usize);
        }
        // saturation doubles as the "already collected" mark for the
        // frontier; every frontier vertex ends with saturation >= 1
        self.frontier.clear();
        for &v in prefix {
            let v = v as usize;
            let slot = t.colors[v] as usize - 1;
            for &u in &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize] {
                let u = u as usize;
                self.neighbor_colors[u][slot] += 1;
                if t.colors[u] == 0 && self.saturation[u] == 0 {
                    self.saturation[u] = 1;
                    self.frontier.push(u as u32);
                }
            }
        }
        for &v in prefix {
            let v = v as usize;
            self.violated[v] = self.neighbor_colors[v][t.colors[v] as usize - 1] > 0;
        }
        for &u in &self.frontier {
            let u = u as usize;
            let sat = self.neighbor_colors[u].iter().filter(|&&c| c > 0).count();
            self.saturation[u] = sat as u8;
            let r = self.rank[u] as usize;
            self.buckets.remove(0, r);
            self.buckets.insert(sat, r);
        }
        debug_assert_eq!(
            self.violated.iter().filter(|&&b| b).count(),
            parent.penalty_before[steps] as usize
        );
    }

    /// DSatur over `ranking`. The running penalty only grows, so the loop
    /// stops once it reaches `bound`.
    ///
    /// `from` resumes the decode recorded in a trace at a given step. If the
    /// watched vertex is then colored first, the result is that trace's.
    fn run(
        &mut self,
        ranking: &Ranking,
        bound: usize,
        from: Option<(&Trace, usize, Option<usize>)>,
    ) -> Option<usize> {
        let by_rank = ranking.vertices();
        for (r, &v) in by_rank.iter().enumerate() {
            self.rank[v as usize] = r as u32;
        }
        let (start, watch) = match from {
            None => {
                self.reset();
                (0, None)
            }
            Some((trace, start, watch)) => {
                self.restore(trace, start);
                (start, watch.map(|x| (trace, x)))
            }
        };
        let mut penalty = self.trace.penalty_before[start] as usize;

        for step in start..self.graph.n() {
            let (level, r) = self.buckets.pop_first();
            let v = by_rank[r] as usize;
            if step == start {
                if let Some((trace, x)) = watch {
                    if x == v {
                        return self.repeat(trace, bound);
                    }
                }
            }
            let neighbors = &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize];

            let counts = self.neighbor_colors[v];
            let slot = match counts.iter().position(|&c| c == 0) {
                Some(free) => free,
                None => (0..PALETTE as usize).min_by_key(|&c| counts[c]).unwrap(),
            };
            let color = slot as u8 + 1;
            let t = &mut self.trace;
            t.colors[v] = color;
            t.position[v] = step as u32;
            t.order.push(v as u32);
            t.level.push(level as u8);

            if counts[slot] > 0 {
                // v clashes with the neighbors already holding this color
                penalty += usize::from(!self.violated[v]);
                self.violated[v] = true;
                for &u in neighbors {
                    let u = u as usize;
                    if t.colors[u] == color && !self.violated[u] {
                        self.violated[u] = true;
                        penalty += 1;
                    }
                }
                if penalty >= bound {
                    return None;
                }
            }
            t.penalty_before.push(penalty as u32);

            for &u in neighbors {
                let u = u as usize;
                if t.colors[u] != 0 {
                    continue;
                }
                let count = &mut self.neighbor_colors[u][slot];
                *count += 1;
                if *count == 1 {
                    let s = self.saturation[u] as usize;
                    self.buckets.promote(s, self.rank[u] as usize);
                    self.saturation[u] += 1;
                }
            }
        }
        Some(penalty)
    }
}

/// One bitset over ranks per saturation level, stored level after level.
#[derive(Clone, Debug)]
struct Buckets {
    words: usize,
    bits: Vec<u64>,
    len: [usize; LEVELS],
}

impl Buckets {
    /// Every rank `0..n` at saturation 0.
    fn reset(&mut self, n: usize) {
        self.bits.fill(0);
        for (i, word) in self.bits[..self.words].iter_mut().enumerate() {
            let bits = n.saturating_sub(i * 64).min(64);
            *word = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        }
        self.len = [0; LEVELS];
        self.len[0] = n;
    }

    fn remove(&mut self, level: usize, r: usize) {
        self.bits[level * self.words + r / 64] &= !(1u64 << (r % 64));
        self.len[level] -= 1;
    }

    fn insert(&mut self, level: usize, r: usize) {
        self.bits[level * self.words + r / 64] |= 1u64 << (r % 64);
        self.len[level] += 1;
    }

    /// Removes the smallest rank at the highest non-empty level, returning
    /// the level and the rank.
    fn pop_first(&mut self) -> (usize, usize) {
        let level = (0..LEVELS).rev().find(|&l| self.len[l] > 0).unwrap();
        let start = level * self.words;
        let bits = &mut self.bits[start..start + self.words];
        let i = bits.iter().position(|&w| w != 0).unwrap();
        let r = i * 64 + bits[i].trailing_zeros() as usize;
        bits[i] &= bits[i] - 1;
        self.len[level] -= 1;
        (level, r)
    }

    /// Moves rank `r` from `level` to `level + 1`.
    fn promote(&mut self, level: usize, r: usize) {
        let at = level * self.words + r / 64;
        let mask = 1u64 << (r % 64);
        self.bits[at] &= !mask;
        self.bits[at + self.words] |= mask;
        self.len[level] -= 1;
        self.len[level + 1] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(w: &[f64]) -> WeightVector {
        WeightVector::new(w.to_vec()).unwrap()
    }

    #[test]
    fn triangle_trace() {
        let r = decode(&Graph::complete(3), &wv(&[0.9, 0.5, 0.1])).unwrap();
        assert_eq!(r.order, vec![0, 1, 2]);
        assert_eq!(r.coloring.as_slice(), &[1, 2, 3]);
        assert_eq!(r.penalty, 0);
    }

    #[test]
    fn k4_forced_conflict() {
        // 0,1,2 take colors 1,2,3; vertex 3 sees one of each and takes
        // the smallest least-shared color
        let r = decode(&Graph::complete(4), &wv(&[0.4, 0.3, 0.2, 0.1])).unwrap();
        assert_eq!(r.order, vec![0, 1, 2, 3]);
        assert_eq!(r.coloring.as_slice(), &[1, 2, 3, 1]);
        assert_eq!(r.penalty, 2);
    }

    #[test]
    fn edgeless_all_first_color() {
        let r = decode(&Graph::empty(5), &wv(&[0.3, 0.1, 0.9, 0.5, 0.2])).unwrap();
        assert_eq!(r.coloring.as_slice(), &[1; 5]);
        assert_eq!(r.penalty, 0);
        // no saturation ever, so pure weight order
        assert_eq!(r.order, vec![2, 3, 0, 4, 1]);
    }

    #[test]
    fn saturation_beats_weight() {
        // path 0-1-2 plus isolated 3 with the second largest weight:
        // after 0 is colored, 1 is saturated and must come before 3
        let g = Graph::new(4, [(0, 1), (1, 2)]).unwrap();
        let r = decode(&g, &wv(&[0.9, 0.1, 0.2, 0.8])).unwrap();
        assert_eq!(r.order, vec![0, 1, 2, 3]);
        assert_eq!(r.coloring.as_slice(), &[1, 2, 1, 1]);
    }

    #[test]
    fn equal_weights_break_by_index() {
        let r = decode(&Graph::empty(4), &wv(&[0.5; 4])).unwrap();
        assert_eq!(r.order, vec![0, 1, 2, 3]);
    }

    #[test]
    fn least_conflict_fallback_prefers_fewest() {
        // K5: the triangle 0,1,2 takes 1,2,3; vertex 3 sees one of each and
        // takes 1; vertex 4 then sees color 1 twice and 2, 3 once, so takes 2
        let r = decode(&Graph::complete(5), &wv(&[0.9, 0.8, 0.7, 0.6, 0.5])).unwrap();
        assert_eq!(r.order, vec![0, 1, 2, 3, 4]);
        assert_eq!(r.coloring.as_slice(), &[1, 2, 3, 1, 2]);
        assert_eq!(r.penalty, 4);
    }

    #[test]
    fn larger_than_one_word() {
        // 130 isolated vertices, weights descending by index
        let n = 130;
        let w: Vec<f64> = (0..n).map(|i| (n - i) as f64).collect();
        let r = decode(&Graph::empty(n), &wv(&w)).unwrap();
        assert_eq!(r.order, (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn length_mismatch() {
        assert_eq!(
            decode(&Graph::complete(3), &wv(&[0.1, 0.2])),
            Err(GraphError::LengthMismatch {
                expected: 3,
                actual: 2
            })
        );
    }

    #[test]
    fn rejects_non_finite() {
        assert_eq!(
            WeightVector::new(vec![0.0, f64::NAN]),
            Err(GraphError::NonFiniteWeight(1))
        );
    }

    #[test]
    fn decoder_reuse_matches_fresh() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let mut dec = Decoder::new(&g);
        for w in [[0.1, 0.2, 0.3, 0.4, 0.5], [0.5, 0.4, 0.3, 0.2, 0.1]] {
            let w = wv(&w);
            assert_eq!(dec.decode(&w).unwrap(), decode(&g, &w).unwrap());
        }
    }

    /// Restarting from a parent must agree with decoding from scratch.
    #[test]
    fn resumed_decode_matches_full_decode() {
        use crate::generator::{generate, Family, InstanceSpec};
        use crate::seed::rng_from_seed;
        use rand::Rng;

        let mut rng = rng_from_seed(7);
        let mut improved = 0;
        for (i, &(n, p)) in [(40, 0.12), (60, 0.08), (120, 0.05), (30, 0.3)].iter().enumerate() {
            let g = generate(&InstanceSpec::new(n, Family::Uniform, p, i as u64).unwrap()).unwrap();
            let mut fresh = Decoder::new(&g);
            let mut dec = Decoder::new(&g);
            for _ in 0..400 {
                let mut w: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
                if rng.random_bool(0.3) {
                    // coarse weights to exercise ties
                    w.iter_mut().for_each(|x| *x = (*x * 4.0).floor());
                }
                let parent_w = wv(&w);
                let parent_penalty = dec.penalty(&parent_w).unwrap();
                let parent_trace = dec.last_trace().unwrap().clone();
                let parent_ranking = Ranking::of(&parent_w);

                let moved = rng.random_range(0..n);
                let weight = match rng.random_range(0..3) {
                    0 => w[moved],
                    1 => w[rng.random_range(0..n)],
                    _ => rng.random::<f64>() * 4.0,
                };
                w[moved] = weight;
                let child_w = wv(&w);
                let ranking = parent_ranking.moved(&child_w, moved);
                assert_eq!(ranking, Ranking::of(&child_w));

                let full = fresh.decode(&child_w).unwrap();
                let parent = Parent {
                    weights: parent_w.as_slice(),
                    ranking: &parent_ranking,
                    trace: &parent_trace,
                };
                for bound in [parent_penalty, parent_penalty + 1, n + 1] {
                    let got = dec.penalty_moved(parent, moved, weight, bound).unwrap();
                    if full.penalty < bound {
                        improved += usize::from(full.penalty < parent_penalty);
                        assert_eq!(got, Some(full.penalty));
                        let trace = dec.last_trace().unwrap();
                        assert_eq!(trace.colors(), full.coloring.as_slice());
                        assert_eq!(trace, fresh.last_trace().unwrap());
                    } else {
                        assert_eq!(got, None);
                    }
                }
            }
        }
        assert!(improved > 50, "{improved}");
    }

    #[test]
    fn bounded_decode_gives_up() {
        let g = Graph::complete(5);
        let mut dec = Decoder::new(&g);
        let w = wv(&[0.9, 0.8, 0.7, 0.6, 0.5]);
        let ranking = Ranking::of(&w);
        assert_eq!(dec.penalty_below(&ranking, 5).unwrap(), Some(4));
        assert_eq!(dec.penalty_below(&ranking, 4).unwrap(), None);
        assert!(dec.last_trace().is_none());
        assert_eq!(dec.penalty_below(&ranking, 0).unwrap(), None);
    }
}
