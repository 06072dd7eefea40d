//! The extremal family G_k: three cliques H1 (order N = C(3k, k)),
//! H2 (order 3k), H3 (order N), with each 2k-subset S of H2 wired to its
//! representative v_S in H1 and w_S in H3. No orientation of G_k has
//! diameter two; `find_witness` extracts a certified far pair from any
//! given orientation. The asymptotics table checks the log-domain
//! inequality chain relating the minimum degree gap to ln n_k.

use std::ops::Range;

use serde::Serialize;
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use crate::graph::Graph;
use crate::orientation::Orientation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GkError {
    #[error("k must be at least 1")]
    KTooSmall,
    #[error("k = {k} exceeds the instance cap {max_k}")]
    OverBudget { k: usize, max_k: usize },
}

pub const DEFAULT_MAX_K: usize = 4;

/// Exact binomial coefficient; None on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 1..=k {
        result = result.checked_mul((n - k + i) as u128)?;
        result /= i as u128;
    }
    Some(result)
}

/// Lexicographic rank of a sorted r-subset of [0, n).
pub fn subset_rank(n: usize, subset: &[usize]) -> usize {
    let r = subset.len();
    let mut rank = 0u128;
    for (i, &c) in subset.iter().enumerate() {
        let start = if i == 0 { 0 } else { subset[i - 1] + 1 };
        for j in start..c {
            rank += binomial((n - j - 1) as u64, (r - i - 1) as u64).unwrap();
        }
    }
    rank as usize
}

/// Inverse of `subset_rank`: the sorted r-subset of [0, n) at the given
/// lexicographic rank.
pub fn subset_unrank(n: usize, r: usize, mut rank: usize) -> Vec<usize> {
    let mut subset = Vec::with_capacity(r);
    let mut next = 0usize;
    for i in 0..r {
        let mut c = next;
        loop {
            let below = binomial((n - c - 1) as u64, (r - i - 1) as u64).unwrap() as usize;
            if below <= rank {
                rank -= below;
                c += 1;
            } else {
                subset.push(c);
                next = c + 1;
                break;
            }
        }
    }
    subset
}

/// Layout and subset convention for a built G_k instance.
#[derive(Debug, Clone, Serialize)]
pub struct GkDescriptor {
    pub k: usize,
    /// N = C(3k, k) = C(3k, 2k), the order of H1 and H3.
    pub n_subsets: usize,
    /// n_k = 2N + 3k.
    pub vertex_count: usize,
    pub h1_range: Range<usize>,
    pub h2_range: Range<usize>,
    pub h3_range: Range<usize>,
}

impl GkDescriptor {
    pub fn new(k: usize) -> GkDescriptor {
        let n = binomial(3 * k as u64, k as u64).unwrap() as usize;
        GkDescriptor {
            k,
            n_subsets: n,
            vertex_count: 2 * n + 3 * k,
            h1_range: 0..n,
            h2_range: n..n + 3 * k,
            h3_range: n + 3 * k..2 * n + 3 * k,
        }
    }

    /// H1 representative of the 2k-subset with the given rank.
    pub fn v_s(&self, rank: usize) -> usize {
        self.h1_range.start + rank
    }

    /// H3 representative of the 2k-subset with the given rank.
    pub fn w_s(&self, rank: usize) -> usize {
        self.h3_range.start + rank
    }

    /// Rank of a sorted set of H2 vertex ids.
    pub fn rank_of(&self, h2_vertices: &[usize]) -> usize {
        let local: Vec<usize> = h2_vertices
            .iter()
            .map(|&v| {
                assert!(self.h2_range.contains(&v));
                v - self.h2_range.start
            })
            .collect();
        subset_rank(3 * self.k, &local)
    }

    /// The sorted H2 vertex ids of the subset at the given rank.
    pub fn subset_at(&self, rank: usize) -> Vec<usize> {
        subset_unrank(3 * self.k, 2 * self.k, rank)
            .into_iter()
            .map(|i| self.h2_range.start + i)
            .collect()
    }
}

pub fn build_gk(k: usize) -> Result<(Graph, GkDescriptor), GkError> {
    build_gk_with_cap(k, DEFAULT_MAX_K)
}

pub fn build_gk_with_cap(k: usize, max_k: usize) -> Result<(Graph, GkDescriptor), GkError> {
    if k < 1 {
        return Err(GkError::KTooSmall);
    }
    if k > max_k {
        return Err(GkError::OverBudget { k, max_k });
    }
    let desc = GkDescriptor::new(k);
    let mut edges = Vec::new();
    for range in [&desc.h1_range, &desc.h2_range, &desc.h3_range] {
        for u in range.clone() {
            for v in u + 1..range.end {
                edges.push((u, v));
            }
        }
    }
    for rank in 0..desc.n_subsets {
        let v_s = desc.v_s(rank);
        let w_s = desc.w_s(rank);
        for s in desc.subset_at(rank) {
            edges.push((v_s.min(s), v_s.max(s)));
            edges.push((s.min(w_s), s.max(w_s)));
        }
    }
    let g = Graph::from_edges(desc.vertex_count, &edges).expect("construction is simple");
    Ok((g, desc))
}

/// Checks the closed-form degrees of G_k: N + 2k − 1 on H1/H3,
/// (4/3)N + 3k − 1 on H2, and min degree (n_k + k)/2 − 1, in exact
/// integer arithmetic.
pub fn degree_audit(g: &Graph, desc: &GkDescriptor) -> bool {
    let n = desc.n_subsets;
    let k = desc.k;
    assert_eq!(n % 3, 0, "C(3k, k) is divisible by 3");
    let h13_degree = n + 2 * k - 1;
    let h2_degree = 4 * n / 3 + 3 * k - 1;
    for v in desc.h1_range.clone().chain(desc.h3_range.clone()) {
        if g.degree(v) != h13_degree {
            return false;
        }
    }
    for v in desc.h2_range.clone() {
        if g.degree(v) != h2_degree {
            return false;
        }
    }
    assert_eq!((desc.vertex_count + k) % 2, 0);
    g.min_degree() == (desc.vertex_count + k) / 2 - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseDirection {
    /// Few out-neighbors in H2: the far pair is (v, w_S).
    Forward,
    /// Few in-neighbors in H2: the far pair is (w_S, v).
    Backward,
}

/// An ordered vertex pair certified at directed distance >= 3 in an
/// orientation of G_k, with the case data that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub source: usize,
    pub target: usize,
    pub case_direction: CaseDirection,
    /// Sorted H2 vertex ids of the chosen 2k-subset.
    pub chosen_s: Vec<usize>,
    /// BFS distance of (source, target); None when unreachable.
    pub verified_distance: Option<usize>,
}

/// Extracts a far pair from an arbitrary orientation of G_k.
///
/// The fixed H1 vertex `v` (default: first of H1) has exactly 2k
/// neighbors in H2, so one side of its in/out split has at most k; the
/// chosen 2k-subset S avoids that side, making a 2-path through the
/// common neighborhood impossible. Panics if the recomputed distance is
/// below 3, which would contradict the construction.
pub fn find_witness(d: &Orientation, desc: &GkDescriptor, v: Option<usize>) -> Witness {
    let v = v.unwrap_or(desc.h1_range.start);
    assert!(desc.h1_range.contains(&v), "witness vertex must lie in H1");
    let k = desc.k;
    let in_h2 = |x: &usize| desc.h2_range.contains(x);
    let out_side: Vec<usize> = d.out_neighbors(v).iter().filter(in_h2).collect();
    let in_side: Vec<usize> = d.in_neighbors(v).iter().filter(in_h2).collect();
    debug_assert_eq!(out_side.len() + in_side.len(), 2 * k);

    let (case, avoid) = if out_side.len() <= k {
        (CaseDirection::Forward, &out_side)
    } else {
        (CaseDirection::Backward, &in_side)
    };
    let chosen_s: Vec<usize> = desc
        .h2_range
        .clone()
        .filter(|x| !avoid.contains(x))
        .take(2 * k)
        .collect();
    assert_eq!(chosen_s.len(), 2 * k);
    let w_s = desc.w_s(desc.rank_of(&chosen_s));
    let (source, target) = match case {
        CaseDirection::Forward => (v, w_s),
        CaseDirection::Backward => (w_s, v),
    };
    let verified_distance = d.directed_distance(source, target);
    if let Some(dist) = verified_distance {
        assert!(
            dist >= 3,
            "pair ({source}, {target}) at distance {dist}; construction violated"
        );
    }
    Witness {
        source,
        target,
        case_direction: case,
        chosen_s,
        verified_distance,
    }
}

/// Comparison verdict with a "too close to call" band at relative
/// tolerance 1e-12.
fn strictly_less(lhs: f64, rhs: f64) -> (bool, bool) {
    let scale = 1f64.max(lhs.abs()).max(rhs.abs());
    let too_close = (rhs - lhs).abs() <= 1e-12 * scale;
    (lhs < rhs, too_close)
}

/// One row of the large-k inequality scan.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsRow {
    pub k: u64,
    pub ln_nk: f64,
    /// δ(G_k) − n_k/2 = k/2 − 1, exact.
    pub delta_minus_half_n: f64,
    /// ln n_k / (2 ln(27/4)), the logarithmic gap the theorem claims is
    /// exceeded for large k.
    pub rhs_thm2: f64,
    /// n_k < (3^{3/2}/2) (27/4)^k / sqrt(kπ)
    pub stirling_ok: bool,
    /// 2N + 3k <= 2.5 N
    pub intermediate_ok: bool,
    /// k/2 − 1 > ln n_k / (2 ln(27/4))
    pub gap_ok: bool,
    /// ln n_k < ln(3^{3/2}/(2√π)) + k ln(27/4) − ln(k)/2
    pub log_inequality_ok: bool,
    /// Some comparison fell inside the 1e-12 relative band.
    pub too_close: bool,
    pub gap_margin: f64,
}

fn ln_27_4() -> f64 {
    (27f64 / 4.0).ln()
}

/// ln C(3k, k) in log-gamma arithmetic.
fn ln_binomial_3k_k(k: u64) -> f64 {
    let k = k as f64;
    ln_gamma(3.0 * k + 1.0) - ln_gamma(k + 1.0) - ln_gamma(2.0 * k + 1.0)
}

/// ln n_k = ln(2 C(3k,k) + 3k), exact integers while representable and
/// log-sum-exp beyond.
pub fn ln_nk(k: u64) -> f64 {
    if let Some(n) = binomial(3 * k, k) {
        if let Some(nk) = n.checked_mul(2).and_then(|x| x.checked_add(3 * k as u128)) {
            return (nk as f64).ln();
        }
    }
    let a = 2f64.ln() + ln_binomial_3k_k(k);
    let b = (3.0 * k as f64).ln();
    a + (b - a).exp().ln_1p()
}

pub fn asymptotics_row(k: u64) -> AsymptoticsRow {
    let ln_nk_val = ln_nk(k);
    let kf = k as f64;
    let delta_minus_half_n = kf / 2.0 - 1.0;
    let rhs_thm2 = ln_nk_val / (2.0 * ln_27_4());

    let stirling_rhs =
        (3f64.powf(1.5) / 2.0).ln() + kf * ln_27_4() - 0.5 * (kf * std::f64::consts::PI).ln();
    let (stirling_ok, close_a) = strictly_less(ln_nk_val, stirling_rhs);

    // 2N + 3k <= 2.5 N  ⟺  6k <= N
    let (intermediate_ok, close_b) = match binomial(3 * k, k) {
        Some(n) => (6 * k as u128 <= n, false),
        None => {
            let (ok, close) = strictly_less((6.0 * kf).ln(), ln_binomial_3k_k(k));
            (ok, close)
        }
    };

    let (gap_lt, close_c) = strictly_less(rhs_thm2, delta_minus_half_n);
    let gap_ok = gap_lt;

    let log_rhs = (3f64.powf(1.5) / (2.0 * std::f64::consts::PI.sqrt())).ln()
        + kf * ln_27_4()
        - 0.5 * kf.ln();
    let (log_inequality_ok, close_d) = strictly_less(ln_nk_val, log_rhs);

    AsymptoticsRow {
        k,
        ln_nk: ln_nk_val,
        delta_minus_half_n,
        rhs_thm2,
        stirling_ok,
        intermediate_ok,
        gap_ok,
        log_inequality_ok,
        too_close: close_a || close_b || close_c || close_d,
        gap_margin: delta_minus_half_n - rhs_thm2,
    }
}

pub fn asymptotics_table(k_min: u64, k_max: u64, stride: u64) -> Vec<AsymptoticsRow> {
    assert!(k_min >= 1 && stride >= 1 && k_min <= k_max);
    (k_min..=k_max)
        .step_by(stride as usize)
        .map(asymptotics_row)
        .collect()
}

/// Smallest k with gap_ok, by upward scan; the gap margin is eventually
/// increasing in k.
pub fn minimal_gap_k(limit: u64) -> Option<u64> {
    (1..=limit).find(|&k| asymptotics_row(k).gap_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{derive_seed, random_orientation};

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 1), Some(3));
        assert_eq!(binomial(6, 2), Some(15));
        assert_eq!(binomial(9, 3), Some(84));
        assert_eq!(binomial(12, 4), Some(495));
        assert_eq!(binomial(4, 7), Some(0));
        // C(3k, 2k) = C(3k, k)
        for k in 1..=8u64 {
            assert_eq!(binomial(3 * k, k), binomial(3 * k, 2 * k));
        }
    }

    #[test]
    fn rank_unrank_roundtrip() {
        let n = 6;
        let r = 4;
        let total = binomial(n as u64, r as u64).unwrap() as usize;
        let mut last: Option<Vec<usize>> = None;
        for rank in 0..total {
            let s = subset_unrank(n, r, rank);
            assert_eq!(subset_rank(n, &s), rank);
            if let Some(prev) = &last {
                assert!(prev < &s, "lexicographic order");
            }
            last = Some(s);
        }
    }

    #[test]
    fn g1_shape() {
        let (g, desc) = build_gk(1).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 21);
        assert_eq!(g.min_degree(), 4);
        assert_eq!(desc.n_subsets, 3);
        assert_eq!(desc.h2_range, 3..6);
        // v_S and w_S for the same subset S share exactly S
        for rank in 0..3 {
            let s = desc.subset_at(rank);
            assert_eq!(g.codegree(desc.v_s(rank), desc.w_s(rank)), 2);
            for &x in &s {
                assert!(g.has_edge(desc.v_s(rank), x));
                assert!(g.has_edge(desc.w_s(rank), x));
            }
        }
        // no H1–H3 edges
        for u in desc.h1_range.clone() {
            for w in desc.h3_range.clone() {
                assert!(!g.has_edge(u, w));
            }
        }
        assert_eq!(g.underlying_diameter(), Some(2));
    }

    #[test]
    fn g2_shape() {
        let (g, desc) = build_gk(2).unwrap();
        assert_eq!(g.vertex_count(), 36);
        assert_eq!(g.min_degree(), 18);
        // each H2 vertex sees two thirds of H1 and of H3
        for v in desc.h2_range.clone() {
            let h1_n = desc
                .h1_range
                .clone()
                .filter(|&u| g.has_edge(u, v))
                .count();
            assert_eq!(h1_n, 10); // (2/3) * 15
            assert_eq!(g.degree(v), 25);
        }
    }

    #[test]
    fn degree_audits() {
        for k in 1..=3 {
            let (g, desc) = build_gk(k).unwrap();
            assert!(degree_audit(&g, &desc), "degree audit failed at k={k}");
        }
    }

    #[test]
    fn gk_errors() {
        assert_eq!(build_gk(0).unwrap_err(), GkError::KTooSmall);
        assert_eq!(
            build_gk(5).unwrap_err(),
            GkError::OverBudget { k: 5, max_k: 4 }
        );
    }

    #[test]
    fn witness_on_random_orientations_of_g1() {
        let (g, desc) = build_gk(1).unwrap();
        for i in 0..200 {
            let d = random_orientation(&g, derive_seed(11, i));
            let w = find_witness(&d, &desc, None);
            if let Some(dist) = w.verified_distance {
                assert!(dist >= 3);
            }
            assert_eq!(w.chosen_s.len(), 2);
        }
    }

    #[test]
    fn witness_forced_forward_case() {
        // orient every H2-incident edge at v inward: out-side empty
        let (g, desc) = build_gk(1).unwrap();
        let v = desc.h1_range.start;
        let arcs: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(a, b)| {
                let h2 = |x: usize| desc.h2_range.contains(&x);
                if a == v && h2(b) {
                    (b, a)
                } else {
                    (a, b) // (a, b) with b == v already points inward
                }
            })
            .collect();
        let d = Orientation::from_arcs(g.clone(), &arcs).unwrap();
        let w = find_witness(&d, &desc, Some(v));
        assert_eq!(w.case_direction, CaseDirection::Forward);
        assert_eq!(w.source, v);
        // S = the two smallest H2 vertices
        assert_eq!(w.chosen_s, vec![desc.h2_range.start, desc.h2_range.start + 1]);
        assert!(desc.h3_range.contains(&w.target));
    }

    #[test]
    fn asymptotics_k1_k2() {
        let r1 = asymptotics_row(1);
        assert!(r1.stirling_ok); // 9 < 9.895
        assert!(!r1.intermediate_ok); // 6 > 3
        assert!(!r1.gap_ok); // -0.5 < 0.575
        assert!((r1.delta_minus_half_n - -0.5).abs() < 1e-15);
        assert!((r1.rhs_thm2 - 0.5753).abs() < 1e-3);

        let r2 = asymptotics_row(2);
        assert!(r2.stirling_ok); // 36 < 47.2
        assert!(r2.intermediate_ok); // 12 <= 15
    }

    #[test]
    fn ln_nk_small_matches_exact() {
        assert!((ln_nk(1) - 9f64.ln()).abs() < 1e-12);
        assert!((ln_nk(2) - 36f64.ln()).abs() < 1e-12);
        assert!((ln_nk(3) - 177f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn ln_nk_large_no_overflow() {
        let v = ln_nk(1_000_000);
        assert!(v.is_finite());
        // dominated by k ln(27/4)
        assert!((v / (1_000_000.0 * (27f64 / 4.0).ln()) - 1.0).abs() < 1e-3);
    }
}
