//! End-to-end acceptance suite. Each test prints one PASS line on
//! success; a failing assertion marks the criterion as failed.

use orient2::exact::{
    exact_mean_x, exists_diam2_orientation, exists_diam2_orientation_opts, min_oriented_diameter,
    x_pair_counts, DiameterValue, SearchStatus,
};
use orient2::extremal::{
    asymptotics_row, build_gk, find_witness, degree_audit, minimal_gap_k, CaseDirection,
};
use orient2::graph::{random_graph_with_min_degree, Graph};
use orient2::orientation::Orientation;
use orient2::random::{
    derive_seed, expected_violations, las_vegas_orient, monte_carlo, random_orientation,
    sufficient_threshold, LasVegasResult,
};

/// Minimum oriented diameter of G_1, pinned by full exploration.
const G1_MIN_ORIENTED_DIAMETER: usize = 3;

/// Smallest k with k/2 - 1 > ln n_k / (2 ln(27/4)), pinned by scan.
const K_STAR: u64 = 1983;

fn corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("K2", Graph::from_edges(2, &[(0, 1)]).unwrap()),
        ("P3", Graph::path(3)),
        ("P4", Graph::path(4)),
        ("C4", Graph::cycle(4)),
        ("C5", Graph::cycle(5)),
        ("K4", Graph::complete(4)),
        ("K5", Graph::complete(5)),
        ("Petersen", Graph::petersen()),
    ]
}

#[test]
fn criterion_1_extremal_nonexistence() {
    let (g1, _) = build_gk(1).unwrap();
    assert_eq!(g1.edge_count(), 21);

    let out = exists_diam2_orientation(&g1, 24);
    assert!(
        matches!(out.status, SearchStatus::NoneExists),
        "G_1 must have no diameter-two orientation"
    );
    assert!(out.nodes_explored > 0);

    // the reduction-free search must agree
    let full = exists_diam2_orientation_opts(&g1, 24, false);
    assert!(matches!(full.status, SearchStatus::NoneExists));

    let min = min_oriented_diameter(&g1, 24);
    assert_eq!(
        min.min_diameter,
        Some(DiameterValue::Finite(G1_MIN_ORIENTED_DIAMETER))
    );
    assert_eq!(
        min.orientation.unwrap().diameter(),
        Some(G1_MIN_ORIENTED_DIAMETER)
    );
    println!(
        "PASS criterion 1: G_1 none_exists (nodes={}), min oriented diameter = {}",
        out.nodes_explored, G1_MIN_ORIENTED_DIAMETER
    );
}

fn validate_witness(d: &Orientation, desc: &orient2::extremal::GkDescriptor) {
    let w = find_witness(d, desc, None);
    let k = desc.k;
    // distance >= 3, via BFS
    if let Some(dist) = w.verified_distance {
        assert!(dist >= 3, "witness pair at distance {dist}");
    }
    // independent second route: the pair is non-adjacent and has no
    // directed 2-path
    assert!(!d.graph().has_edge(w.source, w.target));
    assert!(!d.has_arc(w.source, w.target));
    assert!(!d.out_neighbors(w.source).intersects(d.in_neighbors(w.target)));
    // case rule
    let v = desc.h1_range.start;
    let h2 = |x: &usize| desc.h2_range.contains(x);
    let out_side: Vec<usize> = d.out_neighbors(v).iter().filter(h2).collect();
    let in_side: Vec<usize> = d.in_neighbors(v).iter().filter(h2).collect();
    assert_eq!(out_side.len() + in_side.len(), 2 * k);
    assert_eq!(w.chosen_s.len(), 2 * k);
    assert!(w.chosen_s.iter().all(|x| desc.h2_range.contains(x)));
    match w.case_direction {
        CaseDirection::Forward => {
            assert_eq!(w.source, v);
            assert!(desc.h3_range.contains(&w.target));
            assert!(out_side.len() <= k);
            assert!(w.chosen_s.iter().all(|x| !out_side.contains(x)));
        }
        CaseDirection::Backward => {
            assert_eq!(w.target, v);
            assert!(desc.h3_range.contains(&w.source));
            assert!(out_side.len() > k, "backward only when forward fails");
            assert!(in_side.len() <= k);
            assert!(w.chosen_s.iter().all(|x| !in_side.contains(x)));
        }
    }
}

#[test]
fn criterion_2_witness_soundness() {
    let (g1, d1) = build_gk(1).unwrap();
    for i in 0..10_000u64 {
        let d = random_orientation(&g1, derive_seed(101, i));
        validate_witness(&d, &d1);
    }
    let (g2, d2) = build_gk(2).unwrap();
    for i in 0..1_000u64 {
        let d = random_orientation(&g2, derive_seed(102, i));
        validate_witness(&d, &d2);
    }
    println!("PASS criterion 2: 10000/10000 witnesses on G_1, 1000/1000 on G_2");
}

#[test]
fn criterion_3_expectation_exactness() {
    for (name, g) in corpus() {
        let exact = exact_mean_x(&g, 24).unwrap();
        let mu = expected_violations(&g);
        let rel = (exact - mu).abs() / mu.abs().max(f64::MIN_POSITIVE);
        assert!(rel <= 1e-9, "{name}: exact {exact} vs mu {mu} (rel {rel})");
    }
    println!("PASS criterion 3: exact_mean_X = expected_violations on the full corpus (rel <= 1e-9)");
}

#[test]
fn criterion_4_per_pair_law() {
    for (name, g) in corpus() {
        let m = g.edge_count();
        if m > 12 {
            continue;
        }
        let counts = x_pair_counts(&g, 24).unwrap();
        let n = g.vertex_count();
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let c = g.codegree(x, y);
                let expected = (1u64 << (m - 2 * c)) * 3u64.pow(c as u32);
                assert_eq!(
                    counts[x * n + y],
                    expected,
                    "{name}: pair ({x},{y}) with codegree {c}"
                );
            }
        }
    }
    println!("PASS criterion 4: X-pair orientation counts equal 2^(m-2c)*3^c on all corpus pairs");
}

#[test]
fn criterion_5_threshold_behavior() {
    // The mu_bound field evaluates n^2 (3/4)^{2 f_n} = n^2 n^{-2} = 1 in
    // floats; the tolerance covers the rounding of that exact identity.
    for n in 1..=1_000_000usize {
        let t = sufficient_threshold(n);
        assert!(
            t.mu_bound <= 1.0 + 1e-12,
            "mu_bound {} at n = {n}",
            t.mu_bound
        );
    }
    let threshold_100 = sufficient_threshold(100).sufficient_threshold;
    assert!(threshold_100 < 67.0);
    for seed in 0..20u64 {
        let g = random_graph_with_min_degree(100, 0.82, 67, seed, 200).unwrap();
        assert!(g.min_degree() >= 67);
        let mu = expected_violations(&g);
        assert!(mu <= 1.0, "mu = {mu} at seed {seed}");
        let out = las_vegas_orient(&g, 5, seed);
        assert!(
            matches!(out.result, LasVegasResult::Found),
            "las vegas failed at seed {seed}"
        );
        assert!(out.attempts_used <= 5);
        assert_eq!(out.orientation.unwrap().diameter().map(|d| d <= 2), Some(true));
    }
    println!("PASS criterion 5: mu_bound <= 1 on [1, 10^6]; 20 instances at n=100, delta>=67 all orient");
}

#[test]
fn criterion_6_las_vegas_success_rate() {
    let k40 = Graph::complete(40);
    let mu = expected_violations(&k40);
    assert!((mu - 1560.0 * 0.75f64.powi(38)).abs() < 1e-12);
    let successes = (0..200u64)
        .filter(|&s| {
            random_orientation(&k40, derive_seed(999, s)).check_diameter_two()
        })
        .count();
    assert!(successes >= 180, "only {successes}/200 first-attempt successes");
    println!("PASS criterion 6: K_40 first-attempt success {successes}/200 (>= 180)");
}

#[test]
fn criterion_7_degree_formula() {
    for k in 1..=4usize {
        let (g, desc) = build_gk(k).unwrap();
        assert!(degree_audit(&g, &desc), "degree audit failed at k = {k}");
        let n = desc.n_subsets;
        assert_eq!(g.min_degree(), (desc.vertex_count + k) / 2 - 1);
        for v in desc.h2_range.clone() {
            assert_eq!(g.degree(v), 4 * n / 3 + 3 * k - 1);
        }
        for v in desc.h1_range.clone().chain(desc.h3_range.clone()) {
            assert_eq!(g.degree(v), n + 2 * k - 1);
        }
    }
    println!("PASS criterion 7: degree audits for k in 1..=4");
}

#[test]
fn criterion_8_asymptotics() {
    for k in 1..=500u64 {
        let r = asymptotics_row(k);
        assert!(r.stirling_ok, "stirling fails at k = {k}");
        assert_eq!(r.intermediate_ok, k >= 2, "intermediate at k = {k}");
        assert!(!r.too_close, "tie band hit at k = {k}");
    }
    let k_star = minimal_gap_k(10_000).expect("gap threshold within scan limit");
    assert_eq!(k_star, K_STAR);
    assert!(!asymptotics_row(K_STAR - 1).gap_ok);
    // 100 evenly sampled k in [k*, 10^6]
    let hi = 1_000_000u64;
    for i in 0..100u64 {
        let k = K_STAR + (hi - K_STAR) * i / 99;
        let r = asymptotics_row(k);
        assert!(r.gap_ok, "gap fails at sampled k = {k}");
        assert!(!r.too_close, "tie band at sampled k = {k}");
    }
    println!("PASS criterion 8: stirling on [1,500], k* = {K_STAR}, gap holds on 100 samples to 10^6");
}

#[test]
fn criterion_9_cross_path_agreement() {
    let corpus = corpus();
    let mut checked = 0usize;
    for (round, (_, g)) in corpus.iter().cycle().enumerate().take(1000) {
        let d = random_orientation(g, derive_seed(77, round as u64));
        let by_pairs = d.check_diameter_two();
        let by_bfs = matches!(d.diameter(), Some(x) if x <= 2);
        assert_eq!(by_pairs, by_bfs);
        let rev = d.reverse();
        assert_eq!(d.diameter(), rev.diameter());
        assert_eq!(
            d.violation_report(0).x_count,
            rev.violation_report(0).x_count
        );
        checked += 1;
    }
    assert_eq!(checked, 1000);
    println!("PASS criterion 9: pairwise test = BFS diameter and reverse invariance on 1000 orientations");
}

#[test]
fn criterion_10_determinism_across_worker_counts() {
    let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let pool4 = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let g = Graph::petersen();
    let (g1, desc1) = build_gk(1).unwrap();

    let run = |pool: &rayon::ThreadPool| {
        pool.install(|| {
            let mc = monte_carlo(&g, 2000, 5);
            let lv = las_vegas_orient(&Graph::complete(40), 5, 5);
            let arcs = lv.orientation.as_ref().map(|d| d.arcs());
            let w = find_witness(&random_orientation(&g1, 5), &desc1, None);
            serde_json::to_string(&(
                serde_json::to_value(&mc).unwrap(),
                lv.attempts_used,
                arcs,
                serde_json::to_value(&w).unwrap(),
            ))
            .unwrap()
        })
    };
    let a = run(&pool1);
    let b = run(&pool4);
    assert_eq!(a, b, "reports differ across worker counts");
    println!("PASS criterion 10: byte-identical reports at 1 and 4 workers");
}
