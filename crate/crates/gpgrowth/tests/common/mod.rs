//! Shared test fixtures and a small deterministic generator for the
//! randomized property suites. The seed is fixed; override with
//! GPGROWTH_TEST_SEED to explore.
#![allow(dead_code)] // each test binary uses its own subset

use gpgrowth::graph::{GraphProduct, PresentationGraph};
use gpgrowth::vertex::VertexGroup;

pub fn raag(labels: &[&str], edges: &[(u32, u32)]) -> GraphProduct {
    let graph =
        PresentationGraph::new(labels.iter().map(|s| s.to_string()).collect(), edges).unwrap();
    GraphProduct::new(graph, vec![VertexGroup::InfiniteCyclic; labels.len()]).unwrap()
}

pub fn racg(labels: &[&str], edges: &[(u32, u32)]) -> GraphProduct {
    let graph =
        PresentationGraph::new(labels.iter().map(|s| s.to_string()).collect(), edges).unwrap();
    let groups = labels
        .iter()
        .map(|_| VertexGroup::cyclic(2).unwrap())
        .collect();
    GraphProduct::new(graph, groups).unwrap()
}

/// Free group of rank 2.
pub fn f2() -> GraphProduct {
    raag(&["a", "b"], &[])
}

/// ℤ²: one edge.
pub fn z2() -> GraphProduct {
    raag(&["a", "b"], &[(0, 1)])
}

/// Path RAAG a-b-c.
pub fn p3() -> GraphProduct {
    raag(&["a", "b", "c"], &[(0, 1), (1, 2)])
}

/// Infinite dihedral C_2 * C_2.
pub fn c2c2() -> GraphProduct {
    racg(&["u", "v"], &[])
}

/// Pentagon right-angled Coxeter group.
pub fn pentagon() -> GraphProduct {
    racg(
        &["p", "q", "r", "s", "t"],
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
    )
}

/// Path a(ℤ) - m(C_3) - c(ℤ).
pub fn mixed() -> GraphProduct {
    let graph = PresentationGraph::new(vec!["a".into(), "m".into(), "c".into()], &[(0, 1), (1, 2)])
        .unwrap();
    GraphProduct::new(
        graph,
        vec![
            VertexGroup::InfiniteCyclic,
            VertexGroup::cyclic(3).unwrap(),
            VertexGroup::InfiniteCyclic,
        ],
    )
    .unwrap()
}

/// Complete bipartite K_{2,2} RAAG (≅ F_2 × F_2).
pub fn k22() -> GraphProduct {
    raag(&["u1", "u2", "v1", "v2"], &[(0, 2), (0, 3), (1, 2), (1, 3)])
}

/// Single-vertex S_3 with two transposition generators.
pub fn s3_single() -> GraphProduct {
    let graph = PresentationGraph::new(vec!["s".into()], &[]).unwrap();
    GraphProduct::new(graph, vec![VertexGroup::symmetric(3).unwrap()]).unwrap()
}

/// Small deterministic xorshift generator.
pub struct TestRng(u64);

impl TestRng {
    pub fn from_env(default_seed: u64) -> Self {
        let seed = std::env::var("GPGROWTH_TEST_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(default_seed);
        TestRng(seed.max(1))
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }

    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}
