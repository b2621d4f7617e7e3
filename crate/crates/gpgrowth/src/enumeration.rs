//! Breadth-first enumeration of balls and spheres in the Cayley graph,
//! commuting-pair counting, and support-filtered counts.
//!
//! The BFS works on canonical forms: every discovered word is normalized
//! before deduplication, so each group element is stored exactly once and
//! layer `d` holds precisely the elements of geodesic length `d`. Layers
//! are sorted canonically, which makes every downstream result independent
//! of the worker count.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::element::Element;
use crate::graph::GraphProduct;
use crate::par;

/// Default enumeration memory budget: 2 GiB.
pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

/// A fully enumerated ball: per-distance layers of canonical elements plus
/// a membership index.
#[derive(Debug, Clone)]
pub struct BallIndex {
    radius: u32,
    layers: Vec<Vec<Element>>,
    index: HashMap<Element, u32>,
}

impl BallIndex {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// Elements at geodesic distance exactly `d`, in canonical order.
    pub fn layer(&self, d: u32) -> &[Element] {
        &self.layers[d as usize]
    }

    pub fn distance(&self, e: &Element) -> Option<u32> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index.contains_key(e)
    }

    /// All elements with their distances, layer by layer.
    pub fn elements(&self) -> impl Iterator<Item = (&Element, u32)> {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(d, layer)| layer.iter().map(move |e| (e, d as u32)))
    }

    /// Sphere sizes `|S(0)|, ..., |S(radius)|`.
    pub fn sphere_sizes(&self) -> Vec<u64> {
        self.layers.iter().map(|l| l.len() as u64).collect()
    }

    /// Ball sizes: prefix sums of the sphere sizes.
    pub fn ball_sizes(&self) -> Vec<u64> {
        let mut acc = 0;
        self.sphere_sizes()
            .iter()
            .map(|&s| {
                acc += s;
                acc
            })
            .collect()
    }

    pub fn ball_size(&self, n: u32) -> u64 {
        self.layers[..=n as usize]
            .iter()
            .map(|l| l.len() as u64)
            .sum()
    }

    /// Interchange dump: one element per line, prefixed by its distance,
    /// sorted within each layer.
    pub fn dump(&self, gp: &GraphProduct) -> String {
        let mut out = String::new();
        for (d, layer) in self.layers.iter().enumerate() {
            for e in layer {
                let _ = writeln!(out, "{d}\t{}", gp.display_word(e));
            }
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("memory budget of {budget} bytes exceeded while filling radius {failed_radius}; largest completed radius is {}", .partial.radius())]
    BudgetExceeded {
        budget: u64,
        failed_radius: u32,
        /// Ball completed up to the largest affordable radius.
        partial: Box<BallIndex>,
    },
}

fn element_footprint(e: &Element) -> u64 {
    // stored once in a layer and once as an index key, plus map overhead
    96 + 32 * e.syllable_count() as u64
}

/// Exact BFS over the generators `X = ⊔ X(v)` starting at the identity.
pub fn enumerate_ball(
    gp: &GraphProduct,
    radius: u32,
    memory_budget: u64,
) -> Result<BallIndex, EnumerationError> {
    let generators: Vec<Element> = gp
        .generator_syllables()
        .into_iter()
        .map(|s| gp.normalize(&[s]).expect("generators are valid"))
        .collect();

    let mut index = HashMap::new();
    index.insert(Element::identity(), 0u32);
    let mut layers = vec![vec![Element::identity()]];
    let mut footprint = element_footprint(&Element::identity());

    for d in 1..=radius {
        let frontier = &layers[(d - 1) as usize];
        let candidate_lists: Vec<Vec<Element>> = par::map_collect(frontier, |e| {
            generators.iter().map(|g| gp.multiply(e, g)).collect()
        });
        let mut layer: Vec<Element> = Vec::new();
        let mut layer_footprint = 0u64;
        {
            let mut fresh: HashMap<&Element, ()> = HashMap::new();
            for cand in candidate_lists.iter().flatten() {
                if !index.contains_key(cand) && !fresh.contains_key(cand) {
                    layer_footprint += element_footprint(cand);
                    fresh.insert(cand, ());
                }
            }
            layer.extend(fresh.into_keys().cloned());
        }
        if footprint + layer_footprint > memory_budget {
            layers.truncate(d as usize);
            return Err(EnumerationError::BudgetExceeded {
                budget: memory_budget,
                failed_radius: d,
                partial: Box::new(BallIndex {
                    radius: d - 1,
                    layers,
                    index,
                }),
            });
        }
        footprint += layer_footprint;
        layer.sort_unstable();
        for e in &layer {
            index.insert(e.clone(), d);
        }
        layers.push(layer);
    }
    Ok(BallIndex {
        radius,
        layers,
        index,
    })
}

/// Sphere sizes of `gp` up to `radius` under the default budget.
pub fn sphere_sizes(gp: &GraphProduct, radius: u32) -> Result<Vec<u64>, EnumerationError> {
    Ok(enumerate_ball(gp, radius, DEFAULT_MEMORY_BUDGET)?.sphere_sizes())
}

/// Ball sizes of `gp` up to `radius` under the default budget.
pub fn ball_sizes(gp: &GraphProduct, radius: u32) -> Result<Vec<u64>, EnumerationError> {
    Ok(enumerate_ball(gp, radius, DEFAULT_MEMORY_BUDGET)?.ball_sizes())
}

/// Exact degree-of-commutativity sequence `d_0, ..., d_N`:
/// `d_n = |{(x, y) ∈ B(n)² : xy = yx}| / |B(n)|²`.
///
/// Each unordered pair is checked once and counted twice, and the diagonal
/// is added; the per-pair work is bucketed by `max(|x|, |y|)` so one pass
/// yields the whole sequence.
pub fn dc_sequence(gp: &GraphProduct, ball: &BallIndex) -> Vec<BigRational> {
    let flat: Vec<(&Element, u32)> = ball.elements().collect();
    let n_max = ball.radius() as usize;
    let indices: Vec<usize> = (0..flat.len()).collect();
    let buckets: Vec<Vec<u64>> = par::map_collect(&indices, |&i| {
        let mut local = vec![0u64; n_max + 1];
        let (x, dx) = flat[i];
        for &(y, dy) in &flat[i + 1..] {
            if gp.commutes(x, y) {
                local[dx.max(dy) as usize] += 1;
            }
        }
        local
    });
    let mut pair_counts = vec![0u64; n_max + 1];
    for local in &buckets {
        for (m, c) in local.iter().enumerate() {
            pair_counts[m] += c;
        }
    }
    let ball_sizes = ball.ball_sizes();
    let mut out = Vec::with_capacity(n_max + 1);
    let mut commuting = 0u64;
    for n in 0..=n_max {
        commuting += 2 * pair_counts[n];
        // the diagonal (x, x) always commutes
        let total = BigInt::from(commuting + ball_sizes[n]);
        let denom = BigInt::from(ball_sizes[n]) * BigInt::from(ball_sizes[n]);
        out.push(BigRational::new(total, denom));
    }
    out
}

/// Counts elements `g` of the ball whose canonical cyclic reduction
/// satisfies `supp(g̃) = a` and `|p_g| <= s`.
pub fn count_tilde_support(gp: &GraphProduct, ball: &BallIndex, a: &[u32], s: u32) -> u64 {
    let mut target: Vec<u32> = a.to_vec();
    target.sort_unstable();
    target.dedup();
    let flat: Vec<&Element> = ball.elements().map(|(e, _)| e).collect();
    par::sum_by(&flat, |e| {
        let r = gp.cyclically_reduce(e);
        (r.tilde.support() == target && gp.word_length(&r.conjugator) <= s) as u64
    })
}

/// Outcome of a submultiplicativity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubmultVerdict {
    Pass,
    /// First pair `(i, j)` in lexicographic order with `a(i+j) > a(i)·a(j)`.
    Violation {
        i: usize,
        j: usize,
    },
}

/// Checks `a(i+j) <= a(i)·a(j)` for all `i <= j` with `i + j` in range.
pub fn submultiplicativity_audit(seq: &[BigInt]) -> SubmultVerdict {
    use num_traits::Zero;
    assert!(
        seq.iter().all(|a| *a >= BigInt::zero()),
        "sequence entries must be nonnegative counts"
    );
    for i in 0..seq.len() {
        for j in i..seq.len() - i {
            if seq[i + j] > &seq[i] * &seq[j] {
                return SubmultVerdict::Violation { i, j };
            }
        }
    }
    SubmultVerdict::Pass
}

/// Convenience conversion for count sequences.
pub fn to_bigints(seq: &[u64]) -> Vec<BigInt> {
    seq.iter().map(|&x| BigInt::from(x)).collect()
}
