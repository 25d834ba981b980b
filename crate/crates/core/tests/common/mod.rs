//! Shared fixtures for the integration tests and the acceptance harness.
#![allow(dead_code)]

use blowup_core::euclid::SquaredDistanceMatrix;
use blowup_core::metric::validate_metric;
use blowup_core::rational::int;
use blowup_core::rng::Lcg;
use blowup_core::{BlowupSizes, Graph, MetricSpace, RationalMatrix};

pub const CORPUS_SEED: u64 = 2024;
pub const CORPUS_SIZE: usize = 200;

/// Random rational edge weights on `K_k`, closed under shortest paths.
pub fn random_metric(rng: &mut Lcg, k: usize) -> MetricSpace {
    let mut d = RationalMatrix::zeros(k, k);
    for i in 0..k {
        for j in i + 1..k {
            let w = rng.positive_rational(6, 4);
            d[(i, j)] = w.clone();
            d[(j, i)] = w;
        }
    }
    for m in 0..k {
        for i in 0..k {
            for j in 0..k {
                let via = &d[(i, m)] + &d[(m, j)];
                if via < d[(i, j)] {
                    d[(i, j)] = via;
                }
            }
        }
    }
    validate_metric(&d).expect("shortest-path closure is a metric")
}

/// Blowup sizes with entries in `1..=max`.
pub fn random_sizes(rng: &mut Lcg, k: usize, max: i64) -> BlowupSizes {
    BlowupSizes::new((0..k).map(|_| rng.range_i64(1, max) as usize).collect()).unwrap()
}

/// `CORPUS_SIZE` random metric spaces on 2 to 4 points.
pub fn metric_corpus() -> Vec<MetricSpace> {
    let mut rng = Lcg::new(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|_| {
            let k = rng.range_i64(2, 4) as usize;
            random_metric(&mut rng, k)
        })
        .collect()
}

/// The random corpus plus every connected graph on 2 to 5 vertices.
pub fn full_corpus() -> Vec<MetricSpace> {
    let mut out = metric_corpus();
    for k in 2..=5 {
        for g in blowup_core::catalog::connected_graphs(k).unwrap() {
            out.push(g.metric().unwrap());
        }
    }
    out
}

pub fn random_symmetric(rng: &mut Lcg, k: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            // a few zeros keep some principal minors singular
            let v = if rng.below(4) == 0 { int(0) } else { rng.rational_in(-3, 3, 3) };
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    m
}

/// `k` distinct lattice points in `[-2, 2]^dim`, as squared distances.
pub fn random_euclidean(rng: &mut Lcg, k: usize, dim: usize) -> SquaredDistanceMatrix {
    let mut pts: Vec<Vec<i64>> = Vec::new();
    while pts.len() < k {
        let p: Vec<i64> = (0..dim).map(|_| rng.range_i64(-2, 2)).collect();
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let m = RationalMatrix::from_fn(k, k, |i, j| {
        int(pts[i].iter().zip(&pts[j]).map(|(a, b)| (a - b) * (a - b)).sum())
    });
    SquaredDistanceMatrix::new(m).unwrap()
}

/// Six-vertex graph: triangle `0 1 2` with the path `2 3 4 5` attached.
pub fn graph_h() -> Graph {
    Graph::new(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap()
}

/// Six-vertex graph: fan on `0 | 1 2 3` with the path `3 4 5` attached.
pub fn graph_k() -> Graph {
    Graph::new(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap()
}

pub fn sizes_h() -> BlowupSizes {
    BlowupSizes::new(vec![2, 1, 1, 2, 1, 1]).unwrap()
}

pub fn sizes_k() -> BlowupSizes {
    BlowupSizes::new(vec![2, 1, 1, 1, 1, 2]).unwrap()
}

/// Shared univariate polynomial of both blowups, ascending.
pub const SHARED_U: [i64; 7] = [256, -2048, -1664, 10880, -10816, 3712, -320];

/// Seven-vertex graph on which both graph-derived set systems fail the
/// exchange axiom. Vertices: u=0, v1=1, v2=2, w1=3, w2=4, x=5, z=6.
pub fn exchange_counterexample() -> Graph {
    Graph::new(7, &[(0, 3), (0, 4), (3, 6), (4, 6), (6, 1), (6, 2), (2, 5), (5, 4)]).unwrap()
}
