//! Brute-force location of the peaks minimum, independent of the library's
//! implementation, and the optimizer checks that depend on it.

use metabench_core::{make_objective, mix_seed, peaks, run, Algorithm, ObjectiveKind, RunConfig};

/// Frozen output of [`oracle_minimum`].
const PEAKS_MIN: f64 = -6.551133332835841;
const PEAKS_ARGMIN: [f64; 2] = [0.22827891200378836, -1.625534958264689];

fn reference_peaks(x: f64, y: f64) -> f64 {
    let a = 3.0 * (1.0 - x) * (1.0 - x) * f64::exp(-(x * x) - (y + 1.0) * (y + 1.0));
    let b = 10.0 * (x / 5.0 - x * x * x - y * y * y * y * y) * f64::exp(-(x * x) - y * y);
    let c = f64::exp(-(x + 1.0) * (x + 1.0) - y * y) / 3.0;
    a - b - c
}

/// Grid over [-3, 3]^2 at step 1e-3, then compass search from the best node.
fn oracle_minimum() -> (f64, [f64; 2]) {
    let n = 6000;
    let mut best = (f64::INFINITY, [0.0, 0.0]);
    for i in 0..=n {
        let x = -3.0 + 6.0 * i as f64 / n as f64;
        for j in 0..=n {
            let y = -3.0 + 6.0 * j as f64 / n as f64;
            let v = reference_peaks(x, y);
            if v < best.0 {
                best = (v, [x, y]);
            }
        }
    }
    let (mut fbest, mut p) = best;
    let mut step = 1e-3;
    while step > 1e-14 {
        let mut moved = false;
        for (dx, dy) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let v = reference_peaks(p[0] + dx, p[1] + dy);
            if v < fbest {
                fbest = v;
                p = [p[0] + dx, p[1] + dy];
                moved = true;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    (fbest, p)
}

#[test]
fn oracle_matches_frozen_minimum() {
    let (v, p) = oracle_minimum();
    assert!((v - PEAKS_MIN).abs() < 1e-12, "oracle {v}");
    assert!((p[0] - PEAKS_ARGMIN[0]).abs() < 1e-5 && (p[1] - PEAKS_ARGMIN[1]).abs() < 1e-5, "{p:?}");
    // the library agrees with the reference formula at the minimizer
    assert!((peaks(p[0], p[1]) - v).abs() < 1e-9);
    assert!((peaks(PEAKS_ARGMIN[0], PEAKS_ARGMIN[1]) - PEAKS_MIN).abs() < 1e-9);
}

#[test]
fn library_peaks_matches_reference_formula() {
    for i in 0..=60 {
        for j in 0..=60 {
            let (x, y) = (-3.0 + 0.1 * i as f64, -3.0 + 0.1 * j as f64);
            assert!((peaks(x, y) - reference_peaks(x, y)).abs() < 1e-12);
        }
    }
}

fn final_bests(alg: Algorithm, pop: usize, gens: usize) -> Vec<f64> {
    (0..10)
        .map(|k| {
            let mut f = make_objective(ObjectiveKind::Peaks, 2, None).unwrap();
            run(&mut f, &RunConfig::new(alg, pop, gens, mix_seed(2020, k))).unwrap().final_best()
        })
        .collect()
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    0.5 * (v[(n - 1) / 2] + v[n / 2])
}

#[test]
fn de_reaches_peaks_minimum_for_most_seeds() {
    let hits = final_bests(Algorithm::De, 50, 200)
        .into_iter()
        .filter(|v| (v - PEAKS_MIN).abs() <= 1e-2)
        .count();
    assert!(hits >= 9, "{hits}/10 seeds within 1e-2");
}

#[test]
fn ga_median_is_near_peaks_minimum() {
    let m = median(final_bests(Algorithm::Ga, 50, 100));
    assert!((m - PEAKS_MIN).abs() <= 0.1, "median {m}");
}

fn median_crossing(alg: Algorithm) -> f64 {
    let gens: Vec<f64> = (0..10)
        .map(|k| {
            let mut f = make_objective(ObjectiveKind::Peaks, 2, None).unwrap();
            let t = run(&mut f, &RunConfig::new(alg, 50, 100, mix_seed(2020, k))).unwrap();
            t.first_generation_below(PEAKS_MIN + 0.1).map_or(f64::INFINITY, |g| g as f64)
        })
        .collect();
    median(gens)
}

#[test]
fn swarms_cross_before_ga() {
    let ga = median_crossing(Algorithm::Ga);
    for alg in [Algorithm::Pso, Algorithm::Gwo] {
        let c = median_crossing(alg);
        assert!(c <= ga, "{alg} crosses at {c}, ga at {ga}");
    }
}
