//! Canonical normal forms and the group law of a graph product.
//!
//! An element is stored as a sequence of syllables (vertex, nontrivial
//! vertex-group element) which is *reduced* (no two syllables on the same
//! vertex are separated only by syllables commuting with that vertex) and
//! *canonical*: among all shuffle-equivalent reduced sequences, the
//! lexicographically least under the fixed vertex order. Structural
//! equality of sequences is then equality of group elements.
//!
//! Normalization is a right-to-left pile-up: each incoming syllable is
//! shuffled left past adjacent-vertex syllables and merged with a
//! same-vertex syllable when it reaches one (the pair is deleted when the
//! product is the identity). A final greedy topological sort picks the
//! canonical shuffle representative.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::GraphProduct;
use crate::vertex::{Letter, VertexGroup, VertexGroupError};

/// One syllable of a normal form: a nontrivial element of a single vertex
/// group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub vertex: u32,
    pub letter: Letter,
}

impl Syllable {
    pub fn new(vertex: u32, letter: Letter) -> Self {
        Syllable { vertex, letter }
    }
}

/// A group element in canonical reduced form.
///
/// The syllable sequence is only meaningful relative to the
/// [`GraphProduct`] that produced it; all operations take the group as
/// context.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    syllables: Vec<Syllable>,
}

impl Element {
    pub fn identity() -> Self {
        Element {
            syllables: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Normal form length `ℓ_n`: the number of syllables.
    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    /// Vertices contributing syllables, sorted.
    pub fn support(&self) -> Vec<u32> {
        let mut s: Vec<u32> = self.syllables.iter().map(|s| s.vertex).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// Errors raised while building or parsing words.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown vertex id {0}")]
    UnknownVertex(u32),
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error(transparent)]
    Letter(#[from] VertexGroupError),
    #[error("cannot parse token {0:?}")]
    BadToken(String),
    #[error("vertex {0:?} is a table group of order > 2: write {0}:<element-id>")]
    NeedsElementId(String),
    #[error("vertex {0:?} is infinite cyclic: write {0} or {0}^<exponent>")]
    NoElementId(String),
}

impl GraphProduct {
    /// Canonicalizes an arbitrary word. Identity letters are dropped;
    /// letters and vertex ids are validated.
    pub fn normalize(&self, word: &[Syllable]) -> Result<Element, WordError> {
        for s in word {
            if s.vertex as usize >= self.vertex_count() {
                return Err(WordError::UnknownVertex(s.vertex));
            }
            self.group(s.vertex).check_letter(s.letter)?;
        }
        let mut out = Vec::with_capacity(word.len());
        for &s in word {
            self.pileup_push(&mut out, s);
        }
        Ok(Element {
            syllables: self.canonical_sort(out),
        })
    }

    /// Appends one syllable to a reduced sequence, keeping it reduced.
    fn pileup_push(&self, out: &mut Vec<Syllable>, s: Syllable) {
        let vg = self.group(s.vertex);
        if vg.is_identity(s.letter) {
            return;
        }
        let mut k = out.len();
        while k > 0 {
            let t = out[k - 1];
            if t.vertex == s.vertex {
                match vg.mul(t.letter, s.letter) {
                    None => {
                        out.remove(k - 1);
                    }
                    Some(l) => out[k - 1].letter = l,
                }
                return;
            } else if self.adjacent(t.vertex, s.vertex) {
                k -= 1;
            } else {
                break;
            }
        }
        out.push(s);
    }

    /// Lexicographically least linear extension of the dependency order
    /// (same vertex, or non-adjacent vertices, must keep their relative
    /// order). Greedily taking the smallest available vertex yields the
    /// least shuffle representative.
    fn canonical_sort(&self, syls: Vec<Syllable>) -> Vec<Syllable> {
        let n = syls.len();
        if n <= 1 {
            return syls;
        }
        let mut preds = vec![0usize; n];
        let mut succs: Vec<Vec<usize>> = vec![Vec::new(); n];
        for j in 0..n {
            for i in 0..j {
                if syls[i].vertex == syls[j].vertex
                    || !self.adjacent(syls[i].vertex, syls[j].vertex)
                {
                    preds[j] += 1;
                    succs[i].push(j);
                }
            }
        }
        let mut heap = BinaryHeap::new();
        for (i, s) in syls.iter().enumerate() {
            if preds[i] == 0 {
                heap.push(Reverse((s.vertex, i)));
            }
        }
        let mut out = Vec::with_capacity(n);
        while let Some(Reverse((_, i))) = heap.pop() {
            out.push(syls[i]);
            for &j in &succs[i] {
                preds[j] -= 1;
                if preds[j] == 0 {
                    heap.push(Reverse((syls[j].vertex, j)));
                }
            }
        }
        debug_assert_eq!(out.len(), n);
        out
    }

    /// Canonical product of two canonical elements.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut out = a.syllables.clone();
        for &s in &b.syllables {
            self.pileup_push(&mut out, s);
        }
        Element {
            syllables: self.canonical_sort(out),
        }
    }

    /// Canonical inverse: reverse the syllables and invert each letter.
    pub fn inverse(&self, a: &Element) -> Element {
        let rev: Vec<Syllable> = a
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable::new(s.vertex, self.group(s.vertex).inverse(s.letter)))
            .collect();
        Element {
            syllables: self.canonical_sort(rev),
        }
    }

    /// `a^k` by square-and-multiply.
    pub fn power(&self, a: &Element, k: i64) -> Element {
        let mut base = if k < 0 { self.inverse(a) } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Element::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    /// Geodesic word length `|a|_X`: the sum of vertex-group geodesic
    /// lengths of the letters.
    pub fn word_length(&self, a: &Element) -> u32 {
        a.syllables
            .iter()
            .map(|s| self.group(s.vertex).length(s.letter))
            .sum()
    }

    pub fn commutes(&self, a: &Element, b: &Element) -> bool {
        self.multiply(a, b) == self.multiply(b, a)
    }

    /// Conjugate `c a c^-1`.
    pub fn conjugate(&self, c: &Element, a: &Element) -> Element {
        self.multiply(&self.multiply(c, a), &self.inverse(c))
    }

    /// Positions whose syllable can be shuffled to the front: every
    /// earlier syllable lies on an adjacent vertex.
    pub(crate) fn front_positions(&self, a: &Element) -> Vec<usize> {
        (0..a.syllables.len())
            .filter(|&i| {
                (0..i).all(|j| self.adjacent(a.syllables[j].vertex, a.syllables[i].vertex))
            })
            .collect()
    }

    /// Positions whose syllable can be shuffled to the back.
    pub(crate) fn back_positions(&self, a: &Element) -> Vec<usize> {
        let n = a.syllables.len();
        (0..n)
            .filter(|&i| {
                (i + 1..n).all(|j| self.adjacent(a.syllables[j].vertex, a.syllables[i].vertex))
            })
            .collect()
    }

    /// Generator syllables of the whole product, in vertex order.
    pub fn generator_syllables(&self) -> Vec<Syllable> {
        let mut out = Vec::new();
        for v in 0..self.vertex_count() as u32 {
            for l in self.group(v).generator_letters() {
                out.push(Syllable::new(v, l));
            }
        }
        out
    }

    /// Parses the word syntax: whitespace-separated syllables
    /// `vertex^exp` (infinite-cyclic vertices) or `vertex:elemId` (table
    /// vertices), e.g. `a^2 b^-3`. A bare table-vertex name is accepted
    /// when the group has order 2. The token `1` denotes the identity.
    pub fn parse_word(&self, input: &str) -> Result<Element, WordError> {
        let mut word = Vec::new();
        for token in input.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let exp: i64 = e
                        .parse()
                        .map_err(|_| WordError::BadToken(token.to_string()))?;
                    (n, exp)
                }
                None => (token, 1),
            };
            let (label, elem_id) = match name.split_once(':') {
                Some((l, id)) => {
                    let id: u32 = id
                        .parse()
                        .map_err(|_| WordError::BadToken(token.to_string()))?;
                    (l, Some(id))
                }
                None => (name, None),
            };
            let v = self
                .graph()
                .vertex_by_label(label)
                .ok_or_else(|| WordError::UnknownLabel(label.to_string()))?;
            let letter = match (self.group(v), elem_id) {
                (VertexGroup::InfiniteCyclic, None) => Letter::Exp(exp),
                (VertexGroup::InfiniteCyclic, Some(_)) => {
                    return Err(WordError::NoElementId(label.to_string()))
                }
                (VertexGroup::Finite(f), Some(id)) => {
                    if id as usize >= f.order() {
                        return Err(VertexGroupError::InvalidElement(id, f.order()).into());
                    }
                    table_power(f, id, exp)
                }
                (VertexGroup::Finite(f), None) => {
                    if f.order() == 2 {
                        table_power(f, 1 - f.identity(), exp)
                    } else {
                        return Err(WordError::NeedsElementId(label.to_string()));
                    }
                }
            };
            word.push(Syllable::new(v, letter));
        }
        self.normalize(&word)
    }

    /// Prints the canonical form in the word syntax; the identity prints
    /// as `1`.
    pub fn display_word(&self, a: &Element) -> String {
        if a.is_identity() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (i, s) in a.syllables.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let label = self.graph().label(s.vertex);
            match (self.group(s.vertex), s.letter) {
                (VertexGroup::InfiniteCyclic, Letter::Exp(e)) => {
                    if e == 1 {
                        out.push_str(label);
                    } else {
                        let _ = write!(out, "{label}^{e}");
                    }
                }
                (VertexGroup::Finite(f), Letter::Table(id)) => {
                    if f.order() == 2 {
                        out.push_str(label);
                    } else {
                        let _ = write!(out, "{label}:{id}");
                    }
                }
                _ => unreachable!("letter kind matches the vertex group"),
            }
        }
        out
    }
}

fn table_power(f: &crate::vertex::FiniteGroup, id: u32, exp: i64) -> Letter {
    let base = if exp < 0 { f.inverse(id) } else { id };
    let mut acc = f.identity();
    for _ in 0..exp.unsigned_abs() {
        acc = f.mul(acc, base);
    }
    Letter::Table(acc)
}
