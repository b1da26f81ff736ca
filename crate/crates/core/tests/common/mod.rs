#![allow(dead_code)]

use bundlekit::layout::{compute_layout, LayoutParams};
use bundlekit::{Drawing, Graph, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub struct Fixture {
    pub name: &'static str,
    pub graph: Graph,
    pub drawing: Drawing,
}

fn fixture(name: &'static str, graph: Graph, positions: Vec<Point>) -> Fixture {
    let drawing = Drawing::straight(&graph, positions).unwrap();
    Fixture { name, graph, drawing }
}

/// Unit square 0-1-2-3 with the diagonal (0, 2).
pub fn square() -> Fixture {
    let g = Graph::unweighted(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
    let pos = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
    fixture("square", g, pos.iter().map(|&(x, y)| Point::new(x, y)).collect())
}

pub fn grid(side: usize) -> Fixture {
    let id = |r: usize, c: usize| r * side + c;
    let mut pairs = vec![];
    for r in 0..side {
        for c in 0..side {
            if c + 1 < side {
                pairs.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < side {
                pairs.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    let g = Graph::unweighted(side * side, &pairs).unwrap();
    let pos = (0..side * side)
        .map(|v| Point::new((v % side) as f64, (v / side) as f64))
        .collect();
    fixture("grid", g, pos)
}

/// Two columns of six vertices joined by long, nearly parallel edges.
pub fn fans() -> Fixture {
    let mut pairs = vec![];
    for i in 0..6 {
        for k in 0..2 {
            pairs.push((i, 6 + (i + k) % 6));
        }
    }
    let g = Graph::unweighted(12, &pairs).unwrap();
    let pos = (0..12)
        .map(|v| Point::new(if v < 6 { 0.0 } else { 10.0 }, (v % 6) as f64 * 0.4))
        .collect();
    fixture("fans", g, pos)
}

pub fn complete_on_circle(n: usize) -> Fixture {
    let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let g = Graph::unweighted(n, &pairs).unwrap();
    let pos = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            Point::new(t.cos(), t.sin())
        })
        .collect();
    fixture("complete", g, pos)
}

/// Random spanning tree plus `extra` random chords, unit weights.
pub fn random_connected_pairs(n: usize, extra: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut set = BTreeSet::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        set.insert((u, v));
    }
    let mut tries = 0;
    while set.len() < n - 1 + extra && tries < 100 * (extra + 1) {
        tries += 1;
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        if u != v {
            set.insert((u.min(v), u.max(v)));
        }
    }
    set.into_iter().collect()
}

pub fn random_laid_out(n: usize, extra: usize, seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = Graph::unweighted(n, &random_connected_pairs(n, extra, &mut rng)).unwrap();
    let params = LayoutParams {
        iterations: 100,
        seed,
        ..Default::default()
    };
    let d = compute_layout(&g, &params, None).unwrap();
    Fixture {
        name: "random",
        graph: g,
        drawing: d,
    }
}

pub fn fixtures() -> Vec<Fixture> {
    vec![square(), grid(4), fans(), random_laid_out(30, 40, 3), complete_on_circle(8)]
}
