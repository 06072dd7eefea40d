//! Orientations of a graph and their directed-distance queries.

use thiserror::Error;

use crate::bits::Bitset;
use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrientationError {
    #[error("bad header: expected \"n m\", got {0:?}")]
    BadHeader(String),
    #[error("malformed arc line: {0:?}")]
    BadArcLine(String),
    #[error("arc ({0}, {1}) has no underlying edge")]
    NoSuchEdge(usize, usize),
    #[error("edge ({0}, {1}) oriented twice")]
    DoubleOriented(usize, usize),
    #[error("edge ({0}, {1}) left unoriented")]
    MissingEdge(usize, usize),
    #[error("header ({n}, {m}) does not match graph ({gn}, {gm})")]
    HeaderMismatch { n: usize, m: usize, gn: usize, gm: usize },
}

/// An assignment of one direction per edge of an underlying graph.
#[derive(Clone, Debug)]
pub struct Orientation {
    graph: Graph,
    out_adj: Vec<Bitset>,
    in_adj: Vec<Bitset>,
}

/// Per-orientation record of pairs lacking directed 2-paths (X-pairs)
/// and pairs at directed distance greater than two.
#[derive(Debug)]
pub struct ViolationReport {
    /// Ordered pairs (x, y) with no directed 2-path x→z→y; capped at `limit`.
    pub no_two_path_pairs: Vec<(usize, usize)>,
    /// Exact number of X-pairs, regardless of the cap.
    pub x_count: usize,
    /// Ordered pairs at directed distance > 2; capped at `limit`.
    pub far_pairs: Vec<(usize, usize)>,
    /// Exact number of far pairs.
    pub far_count: usize,
}

pub const DEFAULT_REPORT_LIMIT: usize = 1000;

impl Orientation {
    /// Directions in canonical edge order: `false` orients edge (u, v) as
    /// u→v, `true` as v→u.
    pub fn from_directions(graph: Graph, directions: &[bool]) -> Orientation {
        assert_eq!(directions.len(), graph.edge_count());
        let n = graph.vertex_count();
        let mut out_adj = vec![Bitset::new(n); n];
        let mut in_adj = vec![Bitset::new(n); n];
        for (&(u, v), &flip) in graph.edges().iter().zip(directions) {
            let (s, t) = if flip { (v, u) } else { (u, v) };
            out_adj[s].insert(t);
            in_adj[t].insert(s);
        }
        Orientation {
            graph,
            out_adj,
            in_adj,
        }
    }

    /// Builds from an explicit arc list, validating one arc per edge.
    pub fn from_arcs(graph: Graph, arcs: &[(usize, usize)]) -> Result<Orientation, OrientationError> {
        let mut directions = vec![None; graph.edge_count()];
        for &(s, t) in arcs {
            if s == t || s >= graph.vertex_count() || t >= graph.vertex_count() {
                return Err(OrientationError::NoSuchEdge(s, t));
            }
            let (u, v) = (s.min(t), s.max(t));
            let id = graph
                .edges()
                .binary_search(&(u, v))
                .map_err(|_| OrientationError::NoSuchEdge(s, t))?;
            if directions[id].is_some() {
                return Err(OrientationError::DoubleOriented(u, v));
            }
            directions[id] = Some(s > t);
        }
        let mut dirs = Vec::with_capacity(directions.len());
        for (id, d) in directions.iter().enumerate() {
            match d {
                Some(d) => dirs.push(*d),
                None => {
                    let (u, v) = graph.edges()[id];
                    return Err(OrientationError::MissingEdge(u, v));
                }
            }
        }
        Ok(Orientation::from_directions(graph, &dirs))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn out_neighbors(&self, v: usize) -> &Bitset {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &Bitset {
        &self.in_adj[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].contains(v)
    }

    /// Arcs in canonical edge order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.graph
            .edges()
            .iter()
            .map(|&(u, v)| if self.has_arc(u, v) { (u, v) } else { (v, u) })
            .collect()
    }

    /// BFS distance along arcs; `None` if unreachable.
    pub fn directed_distance(&self, u: usize, v: usize) -> Option<usize> {
        let d = self.distances_from(u)[v];
        (d != usize::MAX).then_some(d)
    }

    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        let n = self.graph.vertex_count();
        let mut dist = vec![usize::MAX; n];
        dist[src] = 0;
        let mut frontier = vec![src];
        let mut next = Vec::new();
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            for &v in &frontier {
                for w in self.out_adj[v].iter() {
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

    /// Max over ordered pairs of directed distance; `None` iff not strong.
    pub fn diameter(&self) -> Option<usize> {
        let mut diam = 0;
        for s in 0..self.graph.vertex_count() {
            for d in self.distances_from(s) {
                if d == usize::MAX {
                    return None;
                }
                diam = diam.max(d);
            }
        }
        Some(diam)
    }

    /// One forward and one backward reachability from vertex 0.
    pub fn is_strong(&self) -> bool {
        let n = self.graph.vertex_count();
        if self.distances_from(0).contains(&usize::MAX) {
            return false;
        }
        // backward reachability = forward reachability in the reverse
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for w in self.in_adj[v].iter() {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// True iff every ordered pair (x, y) has an arc x→y or a directed
    /// 2-path x→z→y. Equivalent to `diameter() <= 2`.
    pub fn check_diameter_two(&self) -> bool {
        let n = self.graph.vertex_count();
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                if !self.has_arc(x, y) && !self.out_adj[x].intersects(&self.in_adj[y]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn violation_report(&self, limit: usize) -> ViolationReport {
        let n = self.graph.vertex_count();
        let mut report = ViolationReport {
            no_two_path_pairs: Vec::new(),
            x_count: 0,
            far_pairs: Vec::new(),
            far_count: 0,
        };
        for x in 0..n {
            let dist = self.distances_from(x);
            for (y, &dist_y) in dist.iter().enumerate() {
                if x == y {
                    continue;
                }
                if !self.out_adj[x].intersects(&self.in_adj[y]) {
                    report.x_count += 1;
                    if report.no_two_path_pairs.len() < limit {
                        report.no_two_path_pairs.push((x, y));
                    }
                }
                if dist_y > 2 {
                    report.far_count += 1;
                    if report.far_pairs.len() < limit {
                        report.far_pairs.push((x, y));
                    }
                }
            }
        }
        report
    }

    /// Flips every arc.
    pub fn reverse(&self) -> Orientation {
        Orientation {
            graph: self.graph.clone(),
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
        }
    }
}

/// Parses an orientation file ("n m" header, then arc lines "u v" meaning
/// u→v) against its companion graph.
pub fn parse_orientation(graph: &Graph, text: &str) -> Result<Orientation, OrientationError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| OrientationError::BadHeader(String::new()))?;
    let mut parts = header.split_whitespace();
    let (n, m) = match (
        parts.next().and_then(|s| s.parse::<usize>().ok()),
        parts.next().and_then(|s| s.parse::<usize>().ok()),
        parts.next(),
    ) {
        (Some(n), Some(m), None) => (n, m),
        _ => return Err(OrientationError::BadHeader(header.to_string())),
    };
    if n != graph.vertex_count() || m != graph.edge_count() {
        return Err(OrientationError::HeaderMismatch {
            n,
            m,
            gn: graph.vertex_count(),
            gm: graph.edge_count(),
        });
    }
    let mut arcs = Vec::with_capacity(m);
    for line in lines {
        let mut parts = line.split_whitespace();
        match (
            parts.next().and_then(|s| s.parse::<usize>().ok()),
            parts.next().and_then(|s| s.parse::<usize>().ok()),
            parts.next(),
        ) {
            (Some(u), Some(v), None) => arcs.push((u, v)),
            _ => return Err(OrientationError::BadArcLine(line.to_string())),
        }
    }
    Orientation::from_arcs(graph.clone(), &arcs)
}

pub fn serialize_orientation(d: &Orientation) -> String {
    let mut out = format!("{} {}\n", d.graph().vertex_count(), d.graph().edge_count());
    for (s, t) in d.arcs() {
        out.push_str(&format!("{} {}\n", s, t));
    }
    out
}
