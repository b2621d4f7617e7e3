//! Cyclic reduction and cyclic normalization.
//!
//! An element g factors as g = p⁻¹ g̃ p with |g| = 2|p| + |g̃| and |g̃|
//! minimal; g̃ is its cyclic reduction. Greedy single-generator
//! conjugation steps suffice to reach it: if a conjugator c of length k
//! strips the length equation exactly, the last generator of any geodesic
//! spelling of c already strips 2, so the greedy loop cannot get stuck.
//! Correctness is nevertheless enforced against a brute-force oracle in
//! the test suite rather than assumed.
//!
//! A cyclically reduced g̃ is further conjugated into *cyclically normal*
//! position: no normal form has its first and last syllables on the same
//! vertex. The conjugator is the product of the letters of all
//! back-shufflable syllables.

use thiserror::Error;

use crate::element::{Element, Syllable};
use crate::graph::GraphProduct;

/// Result of [`GraphProduct::cyclically_reduce`]: `g = conjugator⁻¹ · tilde · conjugator`
/// with `|g| = 2 |conjugator| + |tilde|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicReduction {
    pub conjugator: Element,
    pub tilde: Element,
}

/// Result of [`GraphProduct::cyclically_normalize`]:
/// `normal = conjugator · tilde · conjugator⁻¹` is cyclically normal with
/// the same support as `tilde`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicNormalization {
    pub conjugator: Element,
    pub normal: Element,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CyclicError {
    #[error("input is not cyclically reduced")]
    NotCyclicallyReduced,
}

impl GraphProduct {
    /// Greedy cyclic reduction. At each step the candidate conjugators are
    /// the generator letters of the support vertices, smallest vertex
    /// first; a step is taken exactly when it shortens the element by 2.
    pub fn cyclically_reduce(&self, g: &Element) -> CyclicReduction {
        let mut tilde = g.clone();
        let mut conjugator = Element::identity();
        'outer: loop {
            let len = self.word_length(&tilde);
            if len < 2 {
                break;
            }
            for v in tilde.support() {
                for letter in self.group(v).generator_letters() {
                    let c = self
                        .normalize(&[Syllable::new(v, letter)])
                        .expect("generator letters are valid");
                    let cand = self.conjugate(&c, &tilde);
                    if self.word_length(&cand) + 2 == len {
                        tilde = cand;
                        conjugator = self.multiply(&c, &conjugator);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        debug_assert_eq!(
            self.word_length(g),
            2 * self.word_length(&conjugator) + self.word_length(&tilde)
        );
        debug_assert_eq!(
            self.multiply(
                &self.multiply(&self.inverse(&conjugator), &tilde),
                &conjugator
            ),
            *g
        );
        CyclicReduction { conjugator, tilde }
    }

    /// True iff no normal form of `g` has its first and last syllables on
    /// the same vertex (always true when `ℓ_n(g) <= 1`). Decided by
    /// intersecting the front- and back-shufflable syllables.
    pub fn is_cyclically_normal(&self, g: &Element) -> bool {
        if g.syllable_count() <= 1 {
            return true;
        }
        let front = self.front_positions(g);
        let back = self.back_positions(g);
        for &i in &front {
            for &j in &back {
                if i != j && g.syllables()[i].vertex == g.syllables()[j].vertex {
                    return false;
                }
            }
        }
        true
    }

    /// Conjugates a cyclically reduced element into cyclically normal
    /// position. The conjugator is the product of the letters of all
    /// back-shufflable syllables (they pairwise commute and lie on
    /// distinct vertices).
    pub fn cyclically_normalize(
        &self,
        tilde: &Element,
    ) -> Result<CyclicNormalization, CyclicError> {
        if !self.cyclically_reduce(tilde).conjugator.is_identity() {
            return Err(CyclicError::NotCyclicallyReduced);
        }
        if tilde.syllable_count() <= 1 {
            return Ok(CyclicNormalization {
                conjugator: Element::identity(),
                normal: tilde.clone(),
            });
        }
        let back = self.back_positions(tilde);
        let tail_syllables: Vec<Syllable> = back.iter().map(|&i| tilde.syllables()[i]).collect();
        for (i, s) in tail_syllables.iter().enumerate() {
            for t in &tail_syllables[..i] {
                assert_ne!(
                    s.vertex, t.vertex,
                    "back-shufflable syllables lie on distinct vertices"
                );
            }
        }
        let conjugator = self
            .normalize(&tail_syllables)
            .expect("syllables come from a valid element");
        let normal = self.conjugate(&conjugator, tilde);
        assert!(
            self.is_cyclically_normal(&normal),
            "conjugation by the shufflable tail yields a cyclically normal element"
        );
        assert_eq!(normal.support(), tilde.support());
        Ok(CyclicNormalization { conjugator, normal })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GraphProduct, PresentationGraph};
    use crate::vertex::VertexGroup;

    fn raag(n: usize, edges: &[(u32, u32)]) -> GraphProduct {
        let labels: Vec<String> = (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        let graph = PresentationGraph::new(labels, edges).unwrap();
        GraphProduct::new(graph, vec![VertexGroup::InfiniteCyclic; n]).unwrap()
    }

    #[test]
    fn single_syllable_is_cyclically_reduced() {
        let f2 = raag(2, &[]);
        let g = f2.parse_word("a^3").unwrap();
        let r = f2.cyclically_reduce(&g);
        assert!(r.conjugator.is_identity());
        assert_eq!(r.tilde, g);
    }

    #[test]
    fn free_group_conjugate() {
        // F_2: a^-1 b a reduces to b with conjugator a
        let f2 = raag(2, &[]);
        let g = f2.parse_word("a^-1 b a").unwrap();
        let r = f2.cyclically_reduce(&g);
        assert_eq!(r.conjugator, f2.parse_word("a").unwrap());
        assert_eq!(r.tilde, f2.parse_word("b").unwrap());
        assert_eq!(
            f2.word_length(&g),
            2 * f2.word_length(&r.conjugator) + f2.word_length(&r.tilde)
        );
    }

    #[test]
    fn normalization_already_cancels_adjacent_conjugation() {
        // P_3 RAAG a-b-c: b^-1 (a c) b normalizes to a c, already reduced
        let p3 = raag(3, &[(0, 1), (1, 2)]);
        let g = p3.parse_word("b^-1 a c b").unwrap();
        assert_eq!(g, p3.parse_word("a c").unwrap());
        let r = p3.cyclically_reduce(&g);
        assert!(r.conjugator.is_identity());
        assert_eq!(r.tilde, g);
    }

    #[test]
    fn cyclically_normal_examples() {
        let p3 = raag(3, &[(0, 1), (1, 2)]);
        assert!(p3.is_cyclically_normal(&p3.parse_word("a").unwrap()));
        assert!(!p3.is_cyclically_normal(&p3.parse_word("a c a").unwrap()));

        let f2 = raag(2, &[]);
        assert!(f2.is_cyclically_normal(&f2.parse_word("a b").unwrap()));

        // ℤ²: a b has a single syllable per vertex, cyclically normal
        let z2 = raag(2, &[(0, 1)]);
        assert!(z2.is_cyclically_normal(&z2.parse_word("a b").unwrap()));
    }

    #[test]
    fn normalize_short_elements() {
        let f2 = raag(2, &[]);
        let g = f2.parse_word("a^4").unwrap();
        let n = f2.cyclically_normalize(&g).unwrap();
        assert!(n.conjugator.is_identity());
        assert_eq!(n.normal, g);
    }

    #[test]
    fn normalize_p3_example() {
        // P_3 RAAG: a c a has shufflable tail {a}, conjugating gives a² c
        let p3 = raag(3, &[(0, 1), (1, 2)]);
        let g = p3.parse_word("a c a").unwrap();
        let n = p3.cyclically_normalize(&g).unwrap();
        assert_eq!(n.conjugator, p3.parse_word("a").unwrap());
        assert_eq!(n.normal, p3.parse_word("a^2 c").unwrap());
        assert!(p3.is_cyclically_normal(&n.normal));
        assert_eq!(n.normal.support(), g.support());
    }

    #[test]
    fn normalize_postconditions_f2() {
        let f2 = raag(2, &[]);
        let g = f2.parse_word("a b").unwrap();
        let n = f2.cyclically_normalize(&g).unwrap();
        assert!(f2.is_cyclically_normal(&n.normal));
        assert_eq!(n.normal.support(), g.support());
        assert_eq!(n.normal, f2.conjugate(&n.conjugator, &g));
    }

    #[test]
    fn normalize_rejects_unreduced_input() {
        let f2 = raag(2, &[]);
        let g = f2.parse_word("a^-1 b a").unwrap();
        assert_eq!(
            f2.cyclically_normalize(&g),
            Err(CyclicError::NotCyclicallyReduced)
        );
    }
}
