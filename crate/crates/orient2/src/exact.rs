//! Exhaustive search over the 2^m orientation space: existence of
//! diameter-two orientations, minimum oriented diameter, and exact
//! averages of the X-pair count. Ground truth for the probabilistic and
//! extremal modules on small instances.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::orientation::Orientation;

pub const DEFAULT_EDGE_BUDGET: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("graph has {edges} edges, over the budget of {budget}")]
pub struct BudgetExceeded {
    pub edges: usize,
    pub budget: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiameterValue {
    Finite(usize),
    Infinite,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    NoneExists,
    LimitReached,
}

#[derive(Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    /// The witnessing orientation, present iff status is Found.
    pub orientation: Option<Orientation>,
    /// Exact minimum over all orientations; set only by min-diameter mode
    /// after full exploration.
    pub min_diameter: Option<DiameterValue>,
    pub nodes_explored: u64,
    pub edge_budget: usize,
}

// Edge direction state during the DFS.
const UNDECIDED: u8 = 0;
const FORWARD: u8 = 1; // u → v for the canonical pair (u, v)
const BACKWARD: u8 = 2;

struct Searcher<'g> {
    g: &'g Graph,
    n: usize,
    /// edge id by (min, max) endpoint pair, usize::MAX if absent
    edge_id: Vec<usize>,
    dir: Vec<u8>,
    nodes: u64,
}

impl<'g> Searcher<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.vertex_count();
        let mut edge_id = vec![usize::MAX; n * n];
        for (id, &(u, v)) in g.edges().iter().enumerate() {
            edge_id[u * n + v] = id;
            edge_id[v * n + u] = id;
        }
        Searcher {
            g,
            n,
            edge_id,
            dir: vec![UNDECIDED; g.edge_count()],
            nodes: 0,
        }
    }

    #[inline]
    fn id(&self, a: usize, b: usize) -> usize {
        self.edge_id[a * self.n + b]
    }

    /// State of the arc a→b: (already present, still possible).
    #[inline]
    fn arc_state(&self, a: usize, b: usize) -> (bool, bool) {
        let id = self.id(a, b);
        if id == usize::MAX {
            return (false, false);
        }
        let want = if a < b { FORWARD } else { BACKWARD };
        match self.dir[id] {
            UNDECIDED => (false, true),
            d if d == want => (true, true),
            _ => (false, false),
        }
    }

    /// A pair (x, y) is dead when neither the arc x→y nor any 2-path
    /// x→z→y can still be completed; a branch containing a dead pair can
    /// never reach diameter two.
    fn has_dead_pair(&self) -> bool {
        for x in 0..self.n {
            for y in 0..self.n {
                if x == y {
                    continue;
                }
                let (arc_sat, arc_possible) = self.arc_state(x, y);
                if arc_sat {
                    continue;
                }
                let mut alive = arc_possible;
                for z in self.g.neighbors(x).iter() {
                    if z == y || !self.g.has_edge(z, y) {
                        continue;
                    }
                    let (s1, p1) = self.arc_state(x, z);
                    let (s2, p2) = self.arc_state(z, y);
                    if s1 && s2 {
                        alive = true;
                        break;
                    }
                    if p1 && p2 {
                        alive = true;
                        // keep scanning: a settled 2-path would end the pair
                    }
                }
                if !alive {
                    return true;
                }
            }
        }
        false
    }

    fn dfs_exists(&mut self, idx: usize, use_symmetry: bool) -> bool {
        if self.has_dead_pair() {
            return false;
        }
        if idx == self.dir.len() {
            return true;
        }
        // reversal symmetry: the first edge's direction can be fixed
        let choices: &[u8] = if idx == 0 && use_symmetry {
            &[FORWARD]
        } else {
            &[FORWARD, BACKWARD]
        };
        for &c in choices {
            self.dir[idx] = c;
            self.nodes += 1;
            if self.dfs_exists(idx + 1, use_symmetry) {
                return true;
            }
        }
        self.dir[idx] = UNDECIDED;
        false
    }

    /// BFS distances where decided arcs are one-way and undecided edges
    /// are usable in both directions; a lower bound on the distances of
    /// every completion of the partial orientation.
    fn relaxed_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[src] = 0;
        let mut frontier = vec![src];
        let mut next = Vec::new();
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            for &v in &frontier {
                for w in self.g.neighbors(v).iter() {
                    if dist[w] == usize::MAX && self.arc_state(v, w).1 {
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

    /// Max relaxed distance over ordered pairs; None if some pair is
    /// unreachable even with undecided edges free (no completion is
    /// strong).
    fn relaxed_diameter(&self) -> Option<usize> {
        let mut diam = 0;
        for s in 0..self.n {
            for d in self.relaxed_distances(s) {
                if d == usize::MAX {
                    return None;
                }
                diam = diam.max(d);
            }
        }
        Some(diam)
    }

    fn dfs_min(
        &mut self,
        idx: usize,
        best: &mut Option<(usize, Vec<u8>)>,
        global_lb: usize,
    ) -> bool {
        let lb = match self.relaxed_diameter() {
            None => return false, // no completion is strong
            Some(lb) => lb,
        };
        if let Some((b, _)) = best {
            if lb >= *b {
                return false;
            }
        }
        if idx == self.dir.len() {
            // all edges decided: the relaxed distances are exact
            *best = Some((lb, self.dir.clone()));
            return lb <= global_lb;
        }
        for c in [FORWARD, BACKWARD] {
            if idx == 0 && c == BACKWARD {
                continue; // reversal symmetry
            }
            self.dir[idx] = c;
            self.nodes += 1;
            if self.dfs_min(idx + 1, best, global_lb) {
                return true;
            }
        }
        self.dir[idx] = UNDECIDED;
        false
    }
}

fn limit_outcome(g: &Graph, edge_budget: usize) -> SearchOutcome {
    SearchOutcome {
        status: SearchStatus::LimitReached,
        orientation: None,
        min_diameter: None,
        nodes_explored: 0,
        edge_budget: edge_budget.min(g.edge_count()),
    }
}

pub fn exists_diam2_orientation(g: &Graph, edge_budget: usize) -> SearchOutcome {
    exists_diam2_orientation_opts(g, edge_budget, true)
}

/// As `exists_diam2_orientation`, with the reversal-symmetry reduction
/// switchable for cross-validation.
pub fn exists_diam2_orientation_opts(
    g: &Graph,
    edge_budget: usize,
    use_symmetry: bool,
) -> SearchOutcome {
    if g.edge_count() > edge_budget {
        return limit_outcome(g, edge_budget);
    }
    let mut s = Searcher::new(g);
    let found = s.dfs_exists(0, use_symmetry);
    let orientation = found.then(|| {
        let dirs: Vec<bool> = s.dir.iter().map(|&d| d == BACKWARD).collect();
        let d = Orientation::from_directions(g.clone(), &dirs);
        assert!(d.check_diameter_two());
        d
    });
    SearchOutcome {
        status: if found {
            SearchStatus::Found
        } else {
            SearchStatus::NoneExists
        },
        orientation,
        min_diameter: None,
        nodes_explored: s.nodes,
        edge_budget,
    }
}

/// Exact minimum diameter over all orientations (infinite when no strong
/// orientation exists), by branch-and-bound against the incumbent.
pub fn min_oriented_diameter(g: &Graph, edge_budget: usize) -> SearchOutcome {
    if g.edge_count() > edge_budget {
        return limit_outcome(g, edge_budget);
    }
    let n = g.vertex_count();
    // a strong digraph on >= 2 vertices has diameter >= 2 (no digons)
    let global_lb = match g.underlying_diameter() {
        None => {
            return SearchOutcome {
                status: SearchStatus::NoneExists,
                orientation: None,
                min_diameter: Some(DiameterValue::Infinite),
                nodes_explored: 0,
                edge_budget,
            }
        }
        Some(d) if n >= 2 => d.max(2),
        Some(d) => d,
    };
    let mut s = Searcher::new(g);
    let mut best: Option<(usize, Vec<u8>)> = None;
    s.dfs_min(0, &mut best, global_lb);
    let nodes = s.nodes;
    match best {
        Some((diam, dirs)) => {
            let dirs: Vec<bool> = dirs.iter().map(|&d| d == BACKWARD).collect();
            let d = Orientation::from_directions(g.clone(), &dirs);
            assert_eq!(d.diameter(), Some(diam));
            SearchOutcome {
                status: SearchStatus::Found,
                orientation: Some(d),
                min_diameter: Some(DiameterValue::Finite(diam)),
                nodes_explored: nodes,
                edge_budget,
            }
        }
        None => SearchOutcome {
            status: SearchStatus::NoneExists,
            orientation: None,
            min_diameter: Some(DiameterValue::Infinite),
            nodes_explored: nodes,
            edge_budget,
        },
    }
}

fn enumerate_x<F: FnMut(&[u64])>(g: &Graph, mut per_orientation: F) {
    let n = g.vertex_count();
    let m = g.edge_count();
    assert!(n <= 64, "enumeration path supports up to 64 vertices");
    let mut x_indicator = vec![0u64; n * n];
    for mask in 0u64..(1u64 << m) {
        let mut out = vec![0u64; n];
        let mut inc = vec![0u64; n];
        for (id, &(u, v)) in g.edges().iter().enumerate() {
            let (s, t) = if mask >> id & 1 == 0 { (u, v) } else { (v, u) };
            out[s] |= 1 << t;
            inc[t] |= 1 << s;
        }
        for x in 0..n {
            for y in 0..n {
                x_indicator[x * n + y] =
                    (x != y && out[x] & inc[y] == 0) as u64;
            }
        }
        per_orientation(&x_indicator);
    }
}

/// Number of orientations (out of 2^m) in which each ordered pair is an
/// X-pair, as a row-major n×n matrix.
pub fn x_pair_counts(g: &Graph, edge_budget: usize) -> Result<Vec<u64>, BudgetExceeded> {
    if g.edge_count() > edge_budget {
        return Err(BudgetExceeded {
            edges: g.edge_count(),
            budget: edge_budget,
        });
    }
    let n = g.vertex_count();
    let mut counts = vec![0u64; n * n];
    enumerate_x(g, |ind| {
        for (c, &i) in counts.iter_mut().zip(ind) {
            *c += i;
        }
    });
    Ok(counts)
}

/// Exact average of the X-pair count over all 2^m orientations.
pub fn exact_mean_x(g: &Graph, edge_budget: usize) -> Result<f64, BudgetExceeded> {
    if g.edge_count() > edge_budget {
        return Err(BudgetExceeded {
            edges: g.edge_count(),
            budget: edge_budget,
        });
    }
    let mut total: u64 = 0;
    enumerate_x(g, |ind| total += ind.iter().sum::<u64>());
    Ok(total as f64 / (1u64 << g.edge_count()) as f64)
}
