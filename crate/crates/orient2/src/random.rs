//! Random orientations, the exact expectation functional, minimum-degree
//! thresholds, and the Las Vegas search loop.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::graph::Graph;
use crate::orientation::Orientation;

/// ln(4/3), taken as the exact negation of ln(0.75) (0.75 is an exact
/// binary float, so this is the correctly rounded value).
pub fn ln_4_3() -> f64 {
    -(0.75f64.ln())
}

/// Minimum-degree threshold data for order n: above
/// n/2 + ln n / ln(4/3), a diameter-two orientation always exists.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdReport {
    pub n: usize,
    pub f_n: f64,
    pub sufficient_threshold: f64,
    /// n² (3/4)^{2 f_n}; identically 1 at the exact threshold, up to
    /// float rounding.
    pub mu_bound: f64,
    /// Whether a supplied graph meets min_degree >= sufficient_threshold.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis_met: Option<bool>,
}

pub fn sufficient_threshold(n: usize) -> ThresholdReport {
    assert!(n >= 1);
    let ln_n = (n as f64).ln();
    let f_n = ln_n / ln_4_3();
    let sufficient_threshold = n as f64 / 2.0 + f_n;
    let mu_bound = (2.0 * (ln_n - f_n * ln_4_3())).exp();
    ThresholdReport {
        n,
        f_n,
        sufficient_threshold,
        mu_bound,
        hypothesis_met: None,
    }
}

pub fn threshold_for_graph(g: &Graph) -> ThresholdReport {
    let mut report = sufficient_threshold(g.vertex_count());
    report.hypothesis_met = Some(g.min_degree() as f64 >= report.sufficient_threshold);
    report
}

/// Exact expected number of ordered pairs without a directed 2-path under
/// the uniform random orientation: Σ_{x≠y} (3/4)^codegree(x, y).
pub fn expected_violations(g: &Graph) -> f64 {
    let n = g.vertex_count();
    let mut mu = 0.0;
    for x in 0..n {
        for y in 0..n {
            if x != y {
                mu += 0.75f64.powi(g.codegree(x, y) as i32);
            }
        }
    }
    mu
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Stream seed for a numbered sub-task, so that parallel and serial runs
/// draw identical randomness.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

/// Orients every edge independently with one unbiased bit, edges consumed
/// in canonical order. Deterministic per seed.
pub fn random_orientation(g: &Graph, seed: u64) -> Orientation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let directions: Vec<bool> = (0..g.edge_count()).map(|_| rng.random::<bool>()).collect();
    Orientation::from_directions(g.clone(), &directions)
}

#[derive(Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LasVegasResult {
    Found,
    Impossible { reason: String },
    Exhausted,
}

#[derive(Debug)]
pub struct LasVegasOutcome {
    pub result: LasVegasResult,
    /// The verified orientation, present iff result is Found.
    pub orientation: Option<Orientation>,
    pub attempts_used: usize,
    pub seed: u64,
}

pub const DEFAULT_MAX_ATTEMPTS: usize = 64;

/// Sample-verify-repeat loop. Skips sampling entirely when the underlying
/// graph already rules out a diameter-two orientation.
pub fn las_vegas_orient(g: &Graph, max_attempts: usize, seed: u64) -> LasVegasOutcome {
    assert!(max_attempts >= 1);
    match g.underlying_diameter() {
        None => {
            return LasVegasOutcome {
                result: LasVegasResult::Impossible {
                    reason: "graph is disconnected".to_string(),
                },
                orientation: None,
                attempts_used: 0,
                seed,
            }
        }
        Some(d) if d > 2 => {
            return LasVegasOutcome {
                result: LasVegasResult::Impossible {
                    reason: format!("underlying diameter is {d} > 2"),
                },
                orientation: None,
                attempts_used: 0,
                seed,
            }
        }
        Some(_) => {}
    }
    for attempt in 0..max_attempts {
        let d = random_orientation(g, derive_seed(seed, attempt as u64));
        if d.check_diameter_two() {
            debug_assert_eq!(d.diameter().map(|x| x <= 2), Some(true));
            return LasVegasOutcome {
                result: LasVegasResult::Found,
                orientation: Some(d),
                attempts_used: attempt + 1,
                seed,
            };
        }
    }
    LasVegasOutcome {
        result: LasVegasResult::Exhausted,
        orientation: None,
        attempts_used: max_attempts,
        seed,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloReport {
    pub trials: usize,
    pub success_rate_diam2: f64,
    pub mean_x: f64,
    pub stderr_x: f64,
    pub seed: u64,
}

/// Empirical success rate of the diameter-two condition and sample mean of
/// the X-pair count over seeded trials. Trials run in parallel with
/// per-trial derived seeds; aggregation is in trial order, so the result
/// does not depend on the worker count.
pub fn monte_carlo(g: &Graph, trials: usize, seed: u64) -> MonteCarloReport {
    assert!(trials >= 1);
    let samples: Vec<(bool, usize)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let d = random_orientation(g, derive_seed(seed, i as u64));
            let x = d.violation_report(0).x_count;
            (d.check_diameter_two(), x)
        })
        .collect();
    let successes = samples.iter().filter(|(ok, _)| *ok).count();
    let mean_x = samples.iter().map(|&(_, x)| x as f64).sum::<f64>() / trials as f64;
    let var = samples
        .iter()
        .map(|&(_, x)| (x as f64 - mean_x).powi(2))
        .sum::<f64>()
        / (trials.max(2) - 1) as f64;
    MonteCarloReport {
        trials,
        success_rate_diam2: successes as f64 / trials as f64,
        mean_x,
        stderr_x: (var / trials as f64).sqrt(),
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_n1() {
        let t = sufficient_threshold(1);
        assert_eq!(t.f_n, 0.0);
        assert_eq!(t.sufficient_threshold, 0.5);
        assert!((t.mu_bound - 1.0).abs() < 1e-12);
    }

    #[test]
    fn threshold_n100() {
        let t = sufficient_threshold(100);
        assert!((t.f_n - 100f64.ln() / ln_4_3()).abs() < 1e-12);
        assert!((t.sufficient_threshold - 66.008).abs() < 5e-3);
        assert!(t.mu_bound <= 1.0 + 1e-12);
    }

    #[test]
    fn expected_violations_small() {
        assert_eq!(
            expected_violations(&Graph::from_edges(2, &[(0, 1)]).unwrap()),
            2.0
        );
        assert!((expected_violations(&Graph::cycle(4)) - 10.25).abs() < 1e-12);
        assert!((expected_violations(&Graph::complete(5)) - 8.4375).abs() < 1e-12);
    }

    #[test]
    fn random_orientation_deterministic() {
        let g = Graph::petersen();
        let a = random_orientation(&g, 7);
        let b = random_orientation(&g, 7);
        assert_eq!(a.arcs(), b.arcs());
        let c = random_orientation(&g, 8);
        assert_ne!(a.arcs(), c.arcs());
    }

    #[test]
    fn random_orientation_unbiased_on_k2() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let forward = (0..10_000)
            .filter(|&s| random_orientation(&g, s).has_arc(0, 1))
            .count();
        let frac = forward as f64 / 10_000.0;
        assert!((frac - 0.5).abs() < 0.02, "fraction {frac}");
    }

    #[test]
    fn random_orientation_isolated_vertex() {
        let g = Graph::from_edges(1, &[]).unwrap();
        let d = random_orientation(&g, 0);
        assert!(d.arcs().is_empty());
        assert_eq!(d.diameter(), Some(0));
    }

    #[test]
    fn las_vegas_path_is_impossible() {
        let out = las_vegas_orient(&Graph::path(4), 10, 0);
        assert!(matches!(out.result, LasVegasResult::Impossible { .. }));
        assert_eq!(out.attempts_used, 0);
    }

    #[test]
    fn las_vegas_k2_exhausts() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let out = las_vegas_orient(&g, 8, 0);
        assert!(matches!(out.result, LasVegasResult::Exhausted));
        assert_eq!(out.attempts_used, 8);
    }

    #[test]
    fn las_vegas_k40_first_attempt() {
        let out = las_vegas_orient(&Graph::complete(40), 5, 1);
        assert!(matches!(out.result, LasVegasResult::Found));
        let d = out.orientation.unwrap();
        assert_eq!(d.diameter(), Some(2));
    }

    #[test]
    fn monte_carlo_k2() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let r = monte_carlo(&g, 100, 0);
        assert_eq!(r.success_rate_diam2, 0.0);
        assert_eq!(r.mean_x, 2.0);
    }
}
