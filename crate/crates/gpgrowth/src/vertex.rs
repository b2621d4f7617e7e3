//! Vertex groups of a graph product.
//!
//! A vertex group is either an infinite cyclic group (elements are integer
//! exponents, generating set `{x, x^-1}`) or a finite group given by an
//! explicit multiplication table together with a symmetric generating set
//! that excludes the identity. Working from tables keeps geodesic lengths,
//! centralisers and ball counts exact finite computations, with no word
//! problem machinery. [`VertexGroup`] is the extension point for further
//! vertex group kinds; anything beyond finite-by-table and ℤ needs its own
//! length and centraliser oracles.

use std::collections::VecDeque;

use thiserror::Error;

/// Largest finite vertex group order accepted; keeps the associativity
/// check (all triples) and per-element BFS cheap.
pub const MAX_FINITE_ORDER: usize = 200;

/// A nontrivial element of a vertex group, as carried by a syllable.
///
/// `Exp` is an exponent in an infinite cyclic group; `Table` is an element
/// id in a finite group. Identity values (`Exp(0)`, the identity id) are
/// accepted as user input but never survive normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// Exponent in an infinite cyclic vertex group.
    Exp(i64),
    /// Element id in a finite (table) vertex group.
    Table(u32),
}

/// Errors raised while validating a vertex group specification.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum VertexGroupError {
    #[error("vertex group must be nontrivial")]
    Trivial,
    #[error("order {0} exceeds supported maximum {MAX_FINITE_ORDER}")]
    OrderTooLarge(usize),
    #[error("multiplication table must be {order}x{order}, got row of length {got}")]
    BadTableShape { order: usize, got: usize },
    #[error("table entry {0} out of range for order {1}")]
    EntryOutOfRange(u32, usize),
    #[error("table has no identity element")]
    NoIdentity,
    #[error("table is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: u32, b: u32, c: u32 },
    #[error("element {0} has no inverse")]
    NoInverse(u32),
    #[error("generating set is empty")]
    EmptyGenerators,
    #[error("generator id {0} out of range for order {1}")]
    GeneratorOutOfRange(u32, usize),
    #[error("generating set contains the identity")]
    IdentityGenerator,
    #[error("generating set is not symmetric: inverse of {0} is missing")]
    AsymmetricGenerators(u32),
    #[error("generators do not generate: element {0} is unreachable")]
    NotGenerating(u32),
    #[error("invalid element id {0} for group of order {1}")]
    InvalidElement(u32, usize),
    #[error("letter kind does not match vertex group kind")]
    LetterKindMismatch,
}

/// A finite group given by a multiplication table, with derived inverse
/// and geodesic length tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    identity: u32,
    /// Row-major `order * order` table: `mult[a * order + b] = a * b`.
    mult: Vec<u32>,
    inv: Vec<u32>,
    /// Sorted, symmetric, identity-free, verified to generate.
    generators: Vec<u32>,
    /// Geodesic word length of each element over the generating set.
    lengths: Vec<u32>,
}

impl FiniteGroup {
    /// Validates a multiplication table and generating set and derives the
    /// identity, inverse and geodesic length tables.
    pub fn from_table(
        table: Vec<Vec<u32>>,
        generators: Vec<u32>,
    ) -> Result<Self, VertexGroupError> {
        let order = table.len();
        if order <= 1 {
            return Err(VertexGroupError::Trivial);
        }
        if order > MAX_FINITE_ORDER {
            return Err(VertexGroupError::OrderTooLarge(order));
        }
        let mut mult = Vec::with_capacity(order * order);
        for row in &table {
            if row.len() != order {
                return Err(VertexGroupError::BadTableShape {
                    order,
                    got: row.len(),
                });
            }
            for &x in row {
                if x as usize >= order {
                    return Err(VertexGroupError::EntryOutOfRange(x, order));
                }
                mult.push(x);
            }
        }
        let at = |a: u32, b: u32| mult[a as usize * order + b as usize];

        let identity = (0..order as u32)
            .find(|&e| (0..order as u32).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(VertexGroupError::NoIdentity)?;

        for a in 0..order as u32 {
            for b in 0..order as u32 {
                for c in 0..order as u32 {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(VertexGroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }

        let mut inv = vec![u32::MAX; order];
        for a in 0..order as u32 {
            match (0..order as u32).find(|&b| at(a, b) == identity && at(b, a) == identity) {
                Some(b) => inv[a as usize] = b,
                None => return Err(VertexGroupError::NoInverse(a)),
            }
        }

        if generators.is_empty() {
            return Err(VertexGroupError::EmptyGenerators);
        }
        let mut generators = generators;
        generators.sort_unstable();
        generators.dedup();
        for &g in &generators {
            if g as usize >= order {
                return Err(VertexGroupError::GeneratorOutOfRange(g, order));
            }
            if g == identity {
                return Err(VertexGroupError::IdentityGenerator);
            }
            if !generators.contains(&inv[g as usize]) {
                return Err(VertexGroupError::AsymmetricGenerators(g));
            }
        }

        // Geodesic lengths by BFS from the identity.
        let mut lengths = vec![u32::MAX; order];
        lengths[identity as usize] = 0;
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for &g in &generators {
                let y = at(x, g);
                if lengths[y as usize] == u32::MAX {
                    lengths[y as usize] = lengths[x as usize] + 1;
                    queue.push_back(y);
                }
            }
        }
        if let Some(u) = lengths.iter().position(|&d| d == u32::MAX) {
            return Err(VertexGroupError::NotGenerating(u as u32));
        }

        Ok(FiniteGroup {
            order,
            identity,
            mult,
            inv,
            generators,
            lengths,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.order + b as usize]
    }

    pub fn inverse(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn length(&self, a: u32) -> u32 {
        self.lengths[a as usize]
    }
}

/// Description of a centraliser inside a single vertex group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VgCentraliser {
    /// The centraliser is the whole (abelian) infinite cyclic group.
    WholeInfiniteCyclic,
    /// Exact element set `{h : hg = gh}` of a finite vertex group, sorted by id.
    Elements(Vec<u32>),
}

/// Witness for a failed small-centraliser bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPairViolation {
    /// Offending nontrivial element.
    pub element: Letter,
    /// Radius at which the bound first fails.
    pub radius: u32,
    /// `|C(g) ∩ B(radius)|` observed.
    pub count: u64,
    /// `P * radius^beta` allowed.
    pub bound: u64,
}

/// A vertex group: infinite cyclic, or finite by multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexGroup {
    InfiniteCyclic,
    Finite(FiniteGroup),
}

impl VertexGroup {
    /// Cyclic group of order `q >= 2` with generating set `{x, x^-1}`.
    pub fn cyclic(q: usize) -> Result<Self, VertexGroupError> {
        if q < 2 {
            return Err(VertexGroupError::Trivial);
        }
        let table: Vec<Vec<u32>> = (0..q)
            .map(|i| (0..q).map(|j| ((i + j) % q) as u32).collect())
            .collect();
        let mut gens = vec![1u32];
        if q > 2 {
            gens.push((q - 1) as u32);
        }
        Ok(VertexGroup::Finite(FiniteGroup::from_table(table, gens)?))
    }

    /// Dihedral group of order `2m` (`m >= 2`). Element ids: `i < m` is the
    /// rotation `r^i`, `m + i` is the reflection `s r^i`. Generating set
    /// `{r, r^-1, s}`.
    pub fn dihedral(m: usize) -> Result<Self, VertexGroupError> {
        if m < 2 {
            return Err(VertexGroupError::Trivial);
        }
        let order = 2 * m;
        let mut table = vec![vec![0u32; order]; order];
        for i in 0..m {
            for j in 0..m {
                // r^i r^j = r^(i+j); r^i (s r^j) = s r^(j-i);
                // (s r^i) r^j = s r^(i+j); (s r^i)(s r^j) = r^(j-i).
                table[i][j] = ((i + j) % m) as u32;
                table[i][m + j] = (m + (j + m - i) % m) as u32;
                table[m + i][j] = (m + (i + j) % m) as u32;
                table[m + i][m + j] = ((j + m - i) % m) as u32;
            }
        }
        let mut gens = vec![1u32, m as u32];
        if m > 2 {
            gens.push((m - 1) as u32);
        }
        Ok(VertexGroup::Finite(FiniteGroup::from_table(table, gens)?))
    }

    /// Symmetric group on `n in {3, 4}` points, generated by the adjacent
    /// transpositions. Element ids enumerate permutations of `0..n` in
    /// lexicographic one-line order; products compose right-to-left.
    pub fn symmetric(n: usize) -> Result<Self, VertexGroupError> {
        assert!(
            n == 3 || n == 4,
            "only S_3 and S_4 table builders are provided"
        );
        let perms = permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap() as u32;
        let order = perms.len();
        let mut table = vec![vec![0u32; order]; order];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                // (p * q)(x) = p(q(x))
                let prod: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                table[i][j] = index(&prod);
            }
        }
        let mut gens = Vec::new();
        for k in 0..n - 1 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(k, k + 1);
            gens.push(index(&t));
        }
        Ok(VertexGroup::Finite(FiniteGroup::from_table(table, gens)?))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, VertexGroup::Finite(_))
    }

    /// Checks that a letter is a syntactically valid element of this group
    /// (identity letters included).
    pub fn check_letter(&self, l: Letter) -> Result<(), VertexGroupError> {
        match (self, l) {
            (VertexGroup::InfiniteCyclic, Letter::Exp(_)) => Ok(()),
            (VertexGroup::Finite(f), Letter::Table(id)) => {
                if (id as usize) < f.order {
                    Ok(())
                } else {
                    Err(VertexGroupError::InvalidElement(id, f.order))
                }
            }
            _ => Err(VertexGroupError::LetterKindMismatch),
        }
    }

    pub fn is_identity(&self, l: Letter) -> bool {
        match (self, l) {
            (VertexGroup::InfiniteCyclic, Letter::Exp(e)) => e == 0,
            (VertexGroup::Finite(f), Letter::Table(id)) => id == f.identity,
            _ => panic!("letter kind does not match vertex group kind"),
        }
    }

    /// Geodesic word length of an element over the vertex generating set.
    pub fn length(&self, l: Letter) -> u32 {
        match (self, l) {
            (VertexGroup::InfiniteCyclic, Letter::Exp(e)) => e.unsigned_abs() as u32,
            (VertexGroup::Finite(f), Letter::Table(id)) => f.length(id),
            _ => panic!("letter kind does not match vertex group kind"),
        }
    }

    /// Product of two elements; `None` when the product is the identity.
    pub fn mul(&self, a: Letter, b: Letter) -> Option<Letter> {
        match (self, a, b) {
            (VertexGroup::InfiniteCyclic, Letter::Exp(x), Letter::Exp(y)) => {
                let s = x + y;
                (s != 0).then_some(Letter::Exp(s))
            }
            (VertexGroup::Finite(f), Letter::Table(x), Letter::Table(y)) => {
                let p = f.mul(x, y);
                (p != f.identity).then_some(Letter::Table(p))
            }
            _ => panic!("letter kind does not match vertex group kind"),
        }
    }

    pub fn inverse(&self, l: Letter) -> Letter {
        match (self, l) {
            (VertexGroup::InfiniteCyclic, Letter::Exp(e)) => Letter::Exp(-e),
            (VertexGroup::Finite(f), Letter::Table(id)) => Letter::Table(f.inverse(id)),
            _ => panic!("letter kind does not match vertex group kind"),
        }
    }

    /// Generator letters in canonical order.
    pub fn generator_letters(&self) -> Vec<Letter> {
        match self {
            VertexGroup::InfiniteCyclic => vec![Letter::Exp(-1), Letter::Exp(1)],
            VertexGroup::Finite(f) => f.generators.iter().map(|&g| Letter::Table(g)).collect(),
        }
    }

    /// All nontrivial elements, for finite groups.
    pub fn nontrivial_letters(&self) -> Vec<Letter> {
        match self {
            VertexGroup::InfiniteCyclic => panic!("infinite cyclic group has no element list"),
            VertexGroup::Finite(f) => (0..f.order as u32)
                .filter(|&x| x != f.identity)
                .map(Letter::Table)
                .collect(),
        }
    }

    /// Centraliser of a nontrivial element inside the vertex group.
    pub fn centraliser(&self, g: Letter) -> VgCentraliser {
        assert!(
            !self.is_identity(g),
            "centraliser of the identity is the whole group; callers must special-case it"
        );
        match (self, g) {
            (VertexGroup::InfiniteCyclic, Letter::Exp(_)) => VgCentraliser::WholeInfiniteCyclic,
            (VertexGroup::Finite(f), Letter::Table(x)) => {
                let elems = (0..f.order as u32)
                    .filter(|&h| f.mul(h, x) == f.mul(x, h))
                    .collect();
                VgCentraliser::Elements(elems)
            }
            _ => panic!("letter kind does not match vertex group kind"),
        }
    }

    /// `|{g : |g| <= n}|` inside the vertex group; `2n + 1` for ℤ.
    pub fn ball_count(&self, n: u32) -> u64 {
        match self {
            VertexGroup::InfiniteCyclic => 2 * n as u64 + 1,
            VertexGroup::Finite(f) => f.lengths.iter().filter(|&&d| d <= n).count() as u64,
        }
    }

    /// Verifies `|C(g) ∩ B(n)| <= P n^beta` for all nontrivial `g` and all
    /// `1 <= n <= horizon`; returns the first violating pair otherwise.
    ///
    /// Finite groups always pass with `P = order, beta = 1`; the infinite
    /// cyclic group passes with `P = 3, beta = 1` since `2n + 1 <= 3n`.
    pub fn rational_pair_audit(
        &self,
        p: u64,
        beta: u32,
        horizon: u32,
    ) -> Result<(), RationalPairViolation> {
        assert!(horizon >= 1);
        match self {
            VertexGroup::InfiniteCyclic => {
                for n in 1..=horizon {
                    let count = 2 * n as u64 + 1;
                    let bound = p.saturating_mul((n as u64).pow(beta));
                    if count > bound {
                        return Err(RationalPairViolation {
                            element: Letter::Exp(1),
                            radius: n,
                            count,
                            bound,
                        });
                    }
                }
                Ok(())
            }
            VertexGroup::Finite(f) => {
                for g in self.nontrivial_letters() {
                    let VgCentraliser::Elements(cent) = self.centraliser(g) else {
                        unreachable!()
                    };
                    for n in 1..=horizon {
                        let count = cent.iter().filter(|&&h| f.length(h) <= n).count() as u64;
                        let bound = p.saturating_mul((n as u64).pow(beta));
                        if count > bound {
                            return Err(RationalPairViolation {
                                element: g,
                                radius: n,
                                count,
                                bound,
                            });
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_lengths_and_balls() {
        let c2 = VertexGroup::cyclic(2).unwrap();
        assert_eq!(c2.length(Letter::Table(1)), 1);
        assert_eq!(c2.ball_count(0), 1);
        assert_eq!(c2.ball_count(3), 2);

        let z = VertexGroup::InfiniteCyclic;
        assert_eq!(z.length(Letter::Exp(-3)), 3);
        assert_eq!(z.ball_count(4), 9);
    }

    #[test]
    fn s3_two_transpositions() {
        let s3 = VertexGroup::symmetric(3).unwrap();
        let VertexGroup::Finite(f) = &s3 else {
            unreachable!()
        };
        assert_eq!(f.order(), 6);
        assert_eq!(f.generators().len(), 2);
        // a 3-cycle is a product of the two transpositions: length 2
        let three_cycles: Vec<u32> = (0..6)
            .filter(|&x| x != f.identity() && f.mul(x, x) != f.identity())
            .collect();
        assert_eq!(three_cycles.len(), 2);
        for c in three_cycles {
            assert_eq!(f.length(c), 2);
        }
        // whole group within radius 3
        assert_eq!(s3.ball_count(3), 6);
    }

    #[test]
    fn s3_centralisers() {
        let s3 = VertexGroup::symmetric(3).unwrap();
        let VertexGroup::Finite(f) = &s3 else {
            unreachable!()
        };
        for x in 0..6u32 {
            if x == f.identity() {
                continue;
            }
            let VgCentraliser::Elements(c) = s3.centraliser(Letter::Table(x)) else {
                unreachable!()
            };
            // transpositions have centraliser {1, t}, 3-cycles {1, c, c^2}
            if f.mul(x, x) == f.identity() {
                assert_eq!(c, vec![f.identity(), x]);
            } else {
                assert_eq!(c.len(), 3);
            }
            // closure under multiplication and inverse
            for &a in &c {
                assert!(c.contains(&f.inverse(a)));
                for &b in &c {
                    assert!(c.contains(&f.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn centraliser_contains_identity_element_and_inverse() {
        for vg in [
            VertexGroup::cyclic(4).unwrap(),
            VertexGroup::dihedral(4).unwrap(),
            VertexGroup::symmetric(4).unwrap(),
        ] {
            let VertexGroup::Finite(f) = &vg else {
                unreachable!()
            };
            for g in vg.nontrivial_letters() {
                let Letter::Table(x) = g else { unreachable!() };
                let VgCentraliser::Elements(c) = vg.centraliser(g) else {
                    unreachable!()
                };
                assert!(c.contains(&f.identity()));
                assert!(c.contains(&x));
                assert!(c.contains(&f.inverse(x)));
            }
        }
    }

    #[test]
    fn c4_is_abelian() {
        let c4 = VertexGroup::cyclic(4).unwrap();
        let VgCentraliser::Elements(c) = c4.centraliser(Letter::Table(2)) else {
            unreachable!()
        };
        assert_eq!(c, vec![0, 1, 2, 3]);
    }

    #[test]
    fn dihedral_table_is_a_group() {
        for m in 2..=6 {
            let d = VertexGroup::dihedral(m).unwrap();
            let VertexGroup::Finite(f) = &d else {
                unreachable!()
            };
            assert_eq!(f.order(), 2 * m);
        }
    }

    #[test]
    fn length_properties_finite() {
        for vg in [
            VertexGroup::cyclic(5).unwrap(),
            VertexGroup::dihedral(4).unwrap(),
            VertexGroup::symmetric(4).unwrap(),
        ] {
            let VertexGroup::Finite(f) = &vg else {
                unreachable!()
            };
            for a in 0..f.order() as u32 {
                assert_eq!(f.length(a), f.length(f.inverse(a)));
                for b in 0..f.order() as u32 {
                    assert!(f.length(f.mul(a, b)) <= f.length(a) + f.length(b));
                }
            }
            // ball counts nondecreasing, eventually the whole order
            let mut prev = 0;
            for n in 0..10 {
                let c = vg.ball_count(n);
                assert!(c >= prev);
                prev = c;
            }
            assert_eq!(prev, f.order() as u64);
        }
    }

    #[test]
    fn rational_pair_audits() {
        let c2 = VertexGroup::cyclic(2).unwrap();
        assert!(c2.rational_pair_audit(2, 1, 10).is_ok());

        let z = VertexGroup::InfiniteCyclic;
        assert!(z.rational_pair_audit(3, 1, 10).is_ok());
        let err = z.rational_pair_audit(1, 1, 10).unwrap_err();
        assert_eq!(err.radius, 1);
        assert_eq!(err.count, 3);
        assert_eq!(err.bound, 1);

        let s4 = VertexGroup::symmetric(4).unwrap();
        assert!(s4.rational_pair_audit(24, 1, 12).is_ok());
    }

    #[test]
    fn rejects_bad_tables() {
        // not associative / no identity: a 2x2 table with a constant row
        let bad = vec![vec![0, 0], vec![0, 0]];
        assert!(FiniteGroup::from_table(bad, vec![1]).is_err());
        // asymmetric generators in C_4: {1} alone (inverse 3 missing)
        let table: Vec<Vec<u32>> = (0..4)
            .map(|i| (0..4).map(|j| ((i + j) % 4) as u32).collect())
            .collect();
        assert_eq!(
            FiniteGroup::from_table(table.clone(), vec![1]),
            Err(VertexGroupError::AsymmetricGenerators(1))
        );
        // generators that do not generate: {2} in C_4
        assert_eq!(
            FiniteGroup::from_table(table, vec![2]),
            Err(VertexGroupError::NotGenerating(1))
        );
    }
}
