//! Structural centralisers in a graph product.
//!
//! For a nontrivial g with cyclic reduction g̃ and cyclically normal
//! conjugate ĝ, the centraliser of g̃ splits as a direct product over the
//! connected components A_1, ..., A_k of the complement graph on
//! A = supp(g̃):
//!
//!   C(g̃) = H_1 × ... × H_k × G_{link A}
//!
//! where a singleton component contributes the vertex-group centraliser
//! (the whole copy of ℤ for an infinite-cyclic vertex) and a component of
//! size >= 2 contributes the infinite cyclic group on the conjugated
//! primitive root of the component part of ĝ. Lengths add across factors,
//! so ball intersections are exact convolutions of per-factor length
//! distributions. Everything here is cross-validated against brute force
//! over enumerated balls.

use thiserror::Error;

use crate::element::{Element, Syllable};
use crate::enumeration::{enumerate_ball, BallIndex, EnumerationError};
use crate::graph::GraphProduct;
use crate::vertex::{Letter, VertexGroup, VgCentraliser};

#[derive(Debug, Error, PartialEq)]
pub enum CentraliserError {
    #[error("the centraliser of the identity is the whole group; callers must special-case it")]
    IdentityElement,
    #[error("primitive root extraction requires a cyclically normal element")]
    NotCyclicallyNormal,
    #[error(
        "primitive root extraction requires support of size >= 2 spanning a connected complement"
    )]
    BadSupport,
}

/// One direct factor of a structural centraliser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// Singleton component over a finite vertex group: the exact element
    /// set of `C_{H(v)}(g̃_i)`.
    Finite { vertex: u32, elements: Vec<Letter> },
    /// Infinite cyclic factor: the whole vertex copy of ℤ for a singleton
    /// component, or the conjugated primitive root for a component of
    /// size >= 2.
    Cyclic {
        generator: Element,
        /// Component conjugator p_i (the factor generator is
        /// p_i⁻¹ h_i p_i).
        conjugator: Element,
        /// Whether the component part ĝ_i was itself primitive (β = 1).
        primitive: bool,
        /// ĝ_i = h_i^β.
        beta: u32,
    },
}

/// Structural description of `C(g̃)` for `g = p_g⁻¹ g̃ p_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentraliserDescription {
    /// p_g from the cyclic reduction of g.
    pub conjugator: Element,
    /// The cyclic reduction g̃.
    pub tilde: Element,
    /// The cyclically normal conjugate ĝ = p̃ g̃ p̃⁻¹.
    pub normal: Element,
    /// p̃ from the cyclic normalization.
    pub tilde_conjugator: Element,
    /// Complement components A_1, ..., A_k of supp(g̃), canonical order.
    pub components: Vec<Vec<u32>>,
    /// One factor per component, in component order.
    pub factors: Vec<Factor>,
    /// link(supp g̃).
    pub link: Vec<u32>,
}

impl GraphProduct {
    /// Computes the structural centraliser description of a nontrivial
    /// element.
    pub fn centraliser_structure(
        &self,
        g: &Element,
    ) -> Result<CentraliserDescription, CentraliserError> {
        if g.is_identity() {
            return Err(CentraliserError::IdentityElement);
        }
        let reduction = self.cyclically_reduce(g);
        let tilde = reduction.tilde;
        let normalization = self
            .cyclically_normalize(&tilde)
            .expect("cyclic reduction output is reduced");
        let normal = normalization.normal;
        let p_tilde = normalization.conjugator;

        let support = tilde.support();
        let components = self.graph().complement_components(&support);
        let link = self.graph().link(&support);

        let mut factors = Vec::with_capacity(components.len());
        for comp in &components {
            let part = self.restrict_to(&normal, comp);
            let p_i = self.restrict_to(&p_tilde, comp);
            if comp.len() == 1 {
                let v = comp[0];
                debug_assert_eq!(part.syllable_count(), 1);
                let hat_letter = part.syllables()[0].letter;
                match self.group(v) {
                    VertexGroup::InfiniteCyclic => {
                        // the centraliser is the whole vertex copy of ℤ
                        let generator = self
                            .normalize(&[Syllable::new(v, Letter::Exp(1))])
                            .expect("vertex generator is valid");
                        factors.push(Factor::Cyclic {
                            generator,
                            conjugator: Element::identity(),
                            primitive: true,
                            beta: 1,
                        });
                    }
                    VertexGroup::Finite(f) => {
                        // g̃_i = p_i⁻¹ ĝ_i p_i inside H(v)
                        let p_letter = p_i
                            .syllables()
                            .first()
                            .map_or(Letter::Table(f.identity()), |s| s.letter);
                        let Letter::Table(x) = hat_letter else {
                            unreachable!()
                        };
                        let Letter::Table(pl) = p_letter else {
                            unreachable!()
                        };
                        let conj = f.mul(f.mul(f.inverse(pl), x), pl);
                        let cent = self.group(v).centraliser(Letter::Table(conj));
                        let VgCentraliser::Elements(ids) = cent else {
                            unreachable!()
                        };
                        factors.push(Factor::Finite {
                            vertex: v,
                            elements: ids.into_iter().map(Letter::Table).collect(),
                        });
                    }
                }
            } else {
                let (root, beta) = self.primitive_root(&part)?;
                let generator = self.multiply(&self.multiply(&self.inverse(&p_i), &root), &p_i);
                factors.push(Factor::Cyclic {
                    generator,
                    conjugator: p_i,
                    primitive: beta == 1,
                    beta,
                });
            }
        }

        Ok(CentraliserDescription {
            conjugator: reduction.conjugator,
            tilde,
            normal,
            tilde_conjugator: p_tilde,
            components,
            factors,
            link,
        })
    }

    /// The canonical element formed by the syllables of `e` lying in the
    /// vertex set `keep`. Only meaningful when `e` factors across `keep`
    /// and its complement (as component parts do).
    fn restrict_to(&self, e: &Element, keep: &[u32]) -> Element {
        let syls: Vec<Syllable> = e
            .syllables()
            .iter()
            .copied()
            .filter(|s| keep.contains(&s.vertex))
            .collect();
        self.normalize(&syls)
            .expect("syllables come from a valid element")
    }

    /// Maximal root of a cyclically normal element whose support spans a
    /// connected complement of size >= 2: returns (h, β) with h^β = ĝ and
    /// β maximal. Divisor prefixes of the canonical syllable sequence are
    /// the candidates, each verified by exponentiation; when none
    /// verifies, the element is its own primitive root.
    pub fn primitive_root(&self, hat: &Element) -> Result<(Element, u32), CentraliserError> {
        if !self.is_cyclically_normal(hat) {
            return Err(CentraliserError::NotCyclicallyNormal);
        }
        let support = hat.support();
        if support.len() < 2 || self.graph().complement_components(&support).len() != 1 {
            return Err(CentraliserError::BadSupport);
        }
        let n = hat.syllable_count();
        for d in 1..n {
            if !n.is_multiple_of(d) {
                continue;
            }
            let beta = (n / d) as u32;
            let candidate = self
                .normalize(&hat.syllables()[..d])
                .expect("prefix of a valid element");
            if self.power(&candidate, beta as i64) == *hat {
                return Ok((candidate, beta));
            }
        }
        Ok((hat.clone(), 1))
    }
}

/// Elements of a factor with length at most `n`, as (element, length)
/// pairs.
fn factor_members(gp: &GraphProduct, factor: &Factor, n: u32) -> Vec<(Element, u32)> {
    let mut out = Vec::new();
    match factor {
        Factor::Finite { vertex, elements } => {
            let vg = gp.group(*vertex);
            for &l in elements {
                let len = vg.length(l);
                if len <= n {
                    let e = if vg.is_identity(l) {
                        Element::identity()
                    } else {
                        gp.normalize(&[Syllable::new(*vertex, l)])
                            .expect("centraliser letters are valid")
                    };
                    out.push((e, len));
                }
            }
        }
        Factor::Cyclic {
            generator,
            conjugator,
            ..
        } => {
            out.push((Element::identity(), 0));
            // |t^γ| >= γ - 2|p_i|, so the loop below terminates
            let slack = 2 * gp.word_length(conjugator);
            let mut gamma = 1i64;
            loop {
                let p = gp.power(generator, gamma);
                let len = gp.word_length(&p);
                if len <= n {
                    out.push((gp.inverse(&p), len));
                    out.push((p, len));
                } else if gamma as u64 > (n + slack) as u64 {
                    break;
                }
                gamma += 1;
            }
        }
    }
    out
}

/// Per-factor length distribution to radius `n`: `counts[l]` is the number
/// of factor elements of length exactly `l`.
fn factor_length_counts(gp: &GraphProduct, factor: &Factor, n: u32) -> Vec<u64> {
    let mut counts = vec![0u64; n as usize + 1];
    for (_, len) in factor_members(gp, factor, n) {
        counts[len as usize] += 1;
    }
    counts
}

/// `|factor ∩ B(n)|` for n = 0..=radius.
pub fn factor_ball_counts(gp: &GraphProduct, factor: &Factor, radius: u32) -> Vec<u64> {
    factor_length_counts(gp, factor, radius)
        .iter()
        .scan(0u64, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect()
}

/// Exact `|C(g̃) ∩ B(n)|`, by convolving the per-factor length
/// distributions with the sphere sizes of the link special subgroup
/// (lengths add across factors).
pub fn centraliser_ball_count(
    gp: &GraphProduct,
    desc: &CentraliserDescription,
    n: u32,
    memory_budget: u64,
) -> Result<u64, EnumerationError> {
    let mut dist = vec![0u64; n as usize + 1];
    dist[0] = 1;
    for factor in &desc.factors {
        let counts = factor_length_counts(gp, factor, n);
        dist = convolve_counts(&dist, &counts);
    }
    let link_gp = gp.special_subgroup(&desc.link);
    let link_ball = enumerate_ball(&link_gp, n, memory_budget)?;
    dist = convolve_counts(&dist, &link_ball.sphere_sizes());
    Ok(dist.iter().sum())
}

fn convolve_counts(a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len();
    let mut out = vec![0u64; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Oracle: `{x ∈ B : [x, g] = 1}` by exhaustive check, in canonical order.
pub fn brute_force_centraliser(gp: &GraphProduct, ball: &BallIndex, g: &Element) -> Vec<Element> {
    let mut out: Vec<Element> = ball
        .elements()
        .filter(|(x, _)| gp.commutes(x, g))
        .map(|(x, _)| x.clone())
        .collect();
    out.sort_unstable();
    out
}

/// Expands the structural description of `C(g̃)` into the exact element
/// set within radius `n`: all products h_1 ... h_k c with lengths summing
/// to at most `n`.
pub fn expand_centraliser(
    gp: &GraphProduct,
    desc: &CentraliserDescription,
    n: u32,
    memory_budget: u64,
) -> Result<Vec<Element>, EnumerationError> {
    let mut acc: Vec<(Element, u32)> = vec![(Element::identity(), 0)];
    for factor in &desc.factors {
        let members = factor_members(gp, factor, n);
        let mut next = Vec::new();
        for (e, le) in &acc {
            for (f, lf) in &members {
                if le + lf <= n {
                    next.push((gp.multiply(e, f), le + lf));
                }
            }
        }
        acc = next;
    }
    let link_gp = gp.special_subgroup(&desc.link);
    let link_ball = enumerate_ball(&link_gp, n, memory_budget)?;
    let mut sorted_link = desc.link.clone();
    sorted_link.sort_unstable();
    let mut out = Vec::new();
    for (e, le) in &acc {
        for (c, lc) in link_ball.elements() {
            if le + lc > n {
                continue;
            }
            let mapped: Vec<Syllable> = c
                .syllables()
                .iter()
                .map(|s| Syllable::new(sorted_link[s.vertex as usize], s.letter))
                .collect();
            let child = gp
                .normalize(&mapped)
                .expect("link elements are valid in the parent");
            out.push(gp.multiply(e, &child));
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Exact element set of `C(g) ∩ B(n)` obtained by conjugating the
/// expansion of `C(g̃)` back by p_g.
pub fn expand_centraliser_of_g(
    gp: &GraphProduct,
    desc: &CentraliserDescription,
    n: u32,
    memory_budget: u64,
) -> Result<Vec<Element>, EnumerationError> {
    let s = gp.word_length(&desc.conjugator);
    let inner = expand_centraliser(gp, desc, n + 2 * s, memory_budget)?;
    let p_inv = gp.inverse(&desc.conjugator);
    let mut out: Vec<Element> = inner
        .into_iter()
        .map(|y| gp.multiply(&gp.multiply(&p_inv, &y), &desc.conjugator))
        .filter(|x| gp.word_length(x) <= n)
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Witness of a failed polynomial centraliser bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundViolation {
    pub factor_index: usize,
    pub radius: u32,
    pub count: u64,
    pub bound: u64,
}

/// Checks `counts[n] <= p * n^beta` for `1 <= n < counts.len()`.
pub fn check_poly_bound(counts: &[u64], p: u64, beta: u32) -> Result<(), (u32, u64, u64)> {
    for (n, &c) in counts.iter().enumerate().skip(1) {
        let bound = p.saturating_mul((n as u64).pow(beta));
        if c > bound {
            return Err((n as u32, c, bound));
        }
    }
    Ok(())
}

/// Verifies the small-centraliser bounds per factor: cyclic factors
/// satisfy `|H_i ∩ B(n)| <= 3n`, finite factors `<= order · n`.
pub fn small_centraliser_bounds_audit(
    gp: &GraphProduct,
    desc: &CentraliserDescription,
    horizon: u32,
) -> Result<(), BoundViolation> {
    for (idx, factor) in desc.factors.iter().enumerate() {
        let counts = factor_length_counts(gp, factor, horizon);
        let cumulative: Vec<u64> = counts
            .iter()
            .scan(0u64, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect();
        let (p, beta) = match factor {
            Factor::Cyclic { .. } => (3, 1),
            Factor::Finite { vertex, .. } => {
                let VertexGroup::Finite(f) = gp.group(*vertex) else {
                    unreachable!()
                };
                (f.order() as u64, 1)
            }
        };
        if let Err((radius, count, bound)) = check_poly_bound(&cumulative, p, beta) {
            return Err(BoundViolation {
                factor_index: idx,
                radius,
                count,
                bound,
            });
        }
    }
    Ok(())
}

/// Report of the conjugation bound `|C(g) ∩ B(n)| <= |C(g̃) ∩ B(n+2s)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugateBoundReport {
    pub s: u32,
    pub lhs: u64,
    pub rhs: u64,
    pub pass: bool,
}

pub fn conjugate_bound_audit(
    gp: &GraphProduct,
    desc: &CentraliserDescription,
    g: &Element,
    ball: &BallIndex,
    memory_budget: u64,
) -> Result<ConjugateBoundReport, EnumerationError> {
    let n = ball.radius();
    let s = gp.word_length(&desc.conjugator);
    let lhs = brute_force_centraliser(gp, ball, g).len() as u64;
    let rhs = centraliser_ball_count(gp, desc, n + 2 * s, memory_budget)?;
    Ok(ConjugateBoundReport {
        s,
        lhs,
        rhs,
        pass: lhs <= rhs,
    })
}
