//! Undirected simple graphs, 3-colorings and the violation-count fitness.

use std::fmt;

use crate::error::GraphError;

/// Number of colors in the palette. Colors are the integers `1..=PALETTE`.
pub const PALETTE: u8 = 3;

/// An undirected simple graph in canonical form.
///
/// Vertices are `0..n`. Edges are stored as `(u, v)` with `u < v`, sorted
/// lexicographically, and each adjacency list is sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an arbitrary edge list.
    ///
    /// Both orientations and repeated pairs collapse to a single edge.
    /// Self-loops and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut canonical = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            canonical.push((u.min(v), u.max(v)));
        }
        canonical.sort_unstable();
        canonical.dedup();
        Ok(Self::from_canonical(n, canonical))
    }

    /// `edges` must already be sorted, deduplicated and oriented `u < v`.
    pub(crate) fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adjacency,
        }
    }

    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_canonical(n, edges)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of `v`, sorted ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }
}

/// An assignment of one color in `1..=3` to every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring(Vec<u8>);

impl Coloring {
    pub fn new(colors: Vec<u8>) -> Result<Self, GraphError> {
        if let Some((vertex, &color)) = colors
            .iter()
            .enumerate()
            .find(|(_, &c)| c == 0 || c > PALETTE)
        {
            return Err(GraphError::InvalidColor { vertex, color });
        }
        Ok(Coloring(colors))
    }

    /// Caller guarantees every entry is in `1..=3`.
    pub(crate) fn from_raw(colors: Vec<u8>) -> Self {
        debug_assert!(colors.iter().all(|&c| (1..=PALETTE).contains(&c)));
        Coloring(colors)
    }

    /// Every vertex gets color 1.
    pub fn uniform(n: usize) -> Self {
        Coloring(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn color(&self, v: usize) -> u8 {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.0
    }
}

impl fmt::Display for Coloring {
    /// One color per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Number of vertices incident to at least one monochromatic edge.
///
/// This is the fitness being minimized: it is zero exactly when `coloring`
/// is proper, and never exceeds `n`.
pub fn penalty(graph: &Graph, coloring: &Coloring) -> Result<usize, GraphError> {
    if coloring.len() != graph.n() {
        return Err(GraphError::LengthMismatch {
            expected: graph.n(),
            actual: coloring.len(),
        });
    }
    let mut scratch = Vec::new();
    Ok(penalty_raw(graph, coloring.as_slice(), &mut scratch))
}

/// `colors.len() == graph.n()` is the caller's responsibility. `violated` is
/// reusable scratch space.
pub(crate) fn penalty_raw(graph: &Graph, colors: &[u8], violated: &mut Vec<bool>) -> usize {
    violated.clear();
    violated.resize(graph.n(), false);
    let mut count = 0;
    for &(u, v) in graph.edges() {
        if colors[u] == colors[v] {
            for w in [u, v] {
                if !violated[w] {
                    violated[w] = true;
                    count += 1;
                }
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coloring(c: &[u8]) -> Coloring {
        Coloring::new(c.to_vec()).unwrap()
    }

    #[test]
    fn canonicalizes_edges() {
        let g = Graph::new(4, [(2, 1), (1, 2), (0, 3), (3, 0), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 3), (1, 2)]);
        assert_eq!(g.neighbors(0), &[1, 3]);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.m(), 3);
        assert!(g.has_edge(3, 0));
        assert!(!g.has_edge(2, 3));
    }

    #[test]
    fn rejects_self_loop_and_range() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn complete_graph_edge_count() {
        assert_eq!(Graph::complete(5).m(), 10);
        assert_eq!(Graph::complete(1).m(), 0);
    }

    #[test]
    fn coloring_rejects_out_of_palette() {
        assert!(Coloring::new(vec![1, 2, 3]).is_ok());
        assert_eq!(
            Coloring::new(vec![1, 4]),
            Err(GraphError::InvalidColor {
                vertex: 1,
                color: 4
            })
        );
        assert!(Coloring::new(vec![0]).is_err());
    }

    #[test]
    fn single_edge_proper() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(penalty(&g, &coloring(&[1, 2])).unwrap(), 0);
        assert_eq!(penalty(&g, &coloring(&[2, 2])).unwrap(), 2);
    }

    #[test]
    fn monochromatic_triangle() {
        let g = Graph::complete(3);
        assert_eq!(penalty(&g, &coloring(&[1, 1, 1])).unwrap(), 3);
    }

    #[test]
    fn counts_vertices_not_edges() {
        // star centred on 0, every leaf shares the centre's color: 4 edges
        // violated but only 4 + 1 vertices
        let g = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(penalty(&g, &coloring(&[1, 1, 1, 1, 1])).unwrap(), 5);
        assert_eq!(penalty(&g, &coloring(&[1, 1, 2, 2, 2])).unwrap(), 2);
    }

    #[test]
    fn k4_minimum_is_two() {
        // all 81 colorings
        let g = Graph::complete(4);
        let mut best = usize::MAX;
        for code in 0..81u32 {
            let mut x = code;
            let colors: Vec<u8> = (0..4)
                .map(|_| {
                    let c = (x % 3) as u8 + 1;
                    x /= 3;
                    c
                })
                .collect();
            best = best.min(penalty(&g, &coloring(&colors)).unwrap());
        }
        assert_eq!(best, 2);
    }

    #[test]
    fn length_mismatch() {
        let g = Graph::complete(3);
        assert_eq!(
            penalty(&g, &coloring(&[1, 2])),
            Err(GraphError::LengthMismatch {
                expected: 3,
                actual: 2
            })
        );
    }

    #[test]
    fn coloring_display_one_per_line() {
        assert_eq!(coloring(&[1, 3, 2]).to_string(), "1\n3\n2\n");
    }
}
