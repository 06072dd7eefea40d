//! Simple undirected graphs with bit-vector adjacency.
//!
//! Vertices are dense 0-based integers. Edges carry a dense index in
//! canonical order (sorted by `(u, v)` with `u < v`), which fixes the
//! enumeration of the `2^m` orientation space.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bits::Bitset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("bad header: expected \"n m\", got {0:?}")]
    BadHeader(String),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("malformed edge line: {0:?}")]
    BadEdgeLine(String),
    #[error("edge endpoints not in increasing order: ({0}, {1})")]
    NonCanonicalEdge(usize, usize),
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("vertex count must be at least 1")]
    EmptyGraph,
}

#[derive(Debug, Error)]
#[error(
    "no graph with min degree >= {target} found in {tries} tries (best achieved: {best_achieved})"
)]
pub struct GeneratorExhausted {
    pub target: usize,
    pub tries: usize,
    pub best_achieved: usize,
}

/// Immutable simple undirected graph.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<Bitset>,
    /// Canonical edge list: sorted pairs `(u, v)` with `u < v`.
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an edge list, validating simplicity.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut adj = vec![Bitset::new(n); n];
        let mut canon: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if b >= n {
                return Err(GraphError::VertexOutOfRange { vertex: b, n });
            }
            if adj[a].contains(b) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            adj[a].insert(b);
            adj[b].insert(a);
            canon.push((a, b));
        }
        canon.sort_unstable();
        Ok(Graph {
            n,
            adj,
            edges: canon,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order; the position of a pair is its dense edge id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap()
    }

    /// |N(x) ∩ N(y)| for distinct x, y.
    pub fn codegree(&self, x: usize, y: usize) -> usize {
        assert_ne!(x, y, "codegree requires distinct vertices");
        self.adj[x].intersection_count(&self.adj[y])
    }

    /// BFS distances from `src`; `usize::MAX` marks unreachable.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        bfs(self.n, src, |v| &self.adj[v])
    }

    /// Max over ordered pairs of BFS distance; `None` if disconnected.
    pub fn underlying_diameter(&self) -> Option<usize> {
        let mut diam = 0;
        for s in 0..self.n {
            let dist = self.bfs_distances(s);
            for &d in &dist {
                if d == usize::MAX {
                    return None;
                }
                diam = diam.max(d);
            }
        }
        Some(diam)
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5)); // outer 5-cycle
            edges.push((i, i + 5)); // spokes
            edges.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
        }
        Graph::from_edges(10, &edges).unwrap()
    }
}

fn bfs<'a>(n: usize, src: usize, out: impl Fn(usize) -> &'a Bitset) -> Vec<usize> {
    let mut dist = vec![usize::MAX; n];
    dist[src] = 0;
    let mut frontier = vec![src];
    let mut next = Vec::new();
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        for &v in &frontier {
            for w in out(v).iter() {
                if dist[w] == usize::MAX {
                    dist[w] = d;
                    next.push(w);
                }
            }
        }
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
    }
    dist
}

/// Samples G(n, p) repeatedly until `min_degree >= delta_target`.
///
/// Deterministic for a fixed seed; each retry draws from the same stream.
pub fn random_graph_with_min_degree(
    n: usize,
    p: f64,
    delta_target: usize,
    seed: u64,
    max_tries: usize,
) -> Result<Graph, GeneratorExhausted> {
    assert!(p > 0.0 && p <= 1.0, "p must be in (0, 1]");
    assert!(delta_target < n, "delta_target must be at most n - 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..max_tries {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        let delta = g.min_degree();
        if delta >= delta_target {
            return Ok(g);
        }
        best = best.max(delta);
    }
    Err(GeneratorExhausted {
        target: delta_target,
        tries: max_tries,
        best_achieved: best,
    })
}

/// Parses the text format: header "n m", then m lines "u v" with u < v.
/// Lines starting with '#' are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| GraphError::BadHeader(String::new()))?;
    let mut parts = header.split_whitespace();
    let (n, m) = match (
        parts.next().and_then(|s| s.parse::<usize>().ok()),
        parts.next().and_then(|s| s.parse::<usize>().ok()),
        parts.next(),
    ) {
        (Some(n), Some(m), None) => (n, m),
        _ => return Err(GraphError::BadHeader(header.to_string())),
    };
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let mut parts = line.split_whitespace();
        let (u, v) = match (
            parts.next().and_then(|s| s.parse::<usize>().ok()),
            parts.next().and_then(|s| s.parse::<usize>().ok()),
            parts.next(),
        ) {
            (Some(u), Some(v), None) => (u, v),
            _ => return Err(GraphError::BadEdgeLine(line.to_string())),
        };
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if u > v {
            return Err(GraphError::NonCanonicalEdge(u, v));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(GraphError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    Graph::from_edges(n, &edges)
}

/// Canonical serialization: edges sorted lexicographically.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u, v));
    }
    out
}
