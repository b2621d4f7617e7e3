//! Dense univariate polynomials with exact rational coefficients.
//!
//! Just enough arithmetic for recurrence detection, partial fractions and
//! exact denominator factorization: ring operations, division with
//! remainder, gcd, Bezout coefficients, rational root extraction and
//! perfect-square detection.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients stored low degree first; the zero polynomial is an empty
/// vector. Invariant: no trailing zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, s: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, mut e: usize) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn divmod(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lead = div.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            if !factor.is_zero() {
                quot[k] = factor.clone();
                for (i, c) in div.coeffs.iter().enumerate() {
                    let idx = k + i;
                    let v = std::mem::replace(&mut rem[idx], BigRational::zero());
                    rem[idx] = v - &factor * c;
                }
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, div: &Poly) -> Poly {
        self.divmod(div).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, u, v)` with `u*self + v*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Poly::one(), Poly::zero());
        let (mut v0, mut v1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let u = u0.sub(&q.mul(&u1));
            u0 = std::mem::replace(&mut u1, u);
            let v = v0.sub(&q.mul(&v1));
            v0 = std::mem::replace(&mut v1, v);
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let lead = r0.coeffs.last().unwrap().clone();
        let inv = BigRational::one() / lead;
        (r0.scale(&inv), u0.scale(&inv), v0.scale(&inv))
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(lead) => {
                let inv = BigRational::one() / lead;
                self.scale(&inv)
            }
        }
    }

    /// Rational roots with multiplicities, found by the rational root
    /// theorem on the integer-scaled polynomial, together with the
    /// root-free quotient. Candidate divisors are enumerated by trial
    /// division; astronomically large constant/lead coefficients make the
    /// corresponding candidates silently unavailable (callers fall back to
    /// numeric isolation).
    pub fn rational_roots(&self) -> (Vec<(BigRational, usize)>, Poly) {
        let mut rest = self.clone();
        let mut roots: Vec<(BigRational, usize)> = Vec::new();
        while let Some(deg) = rest.degree() {
            if deg == 0 {
                break;
            }
            // strip t = 0 roots first
            if rest.coeff(0).is_zero() {
                let shifted = Poly::new(rest.coeffs[1..].to_vec());
                push_root(&mut roots, BigRational::zero());
                rest = shifted;
                continue;
            }
            let int = rest.to_integer_coeffs();
            let lead = int.last().unwrap().magnitude().clone();
            let cons = int.first().unwrap().magnitude().clone();
            let (Some(num_divs), Some(den_divs)) = (divisors(&cons), divisors(&lead)) else {
                break;
            };
            let mut found = None;
            'search: for u in &num_divs {
                for v in &den_divs {
                    for sign in [1i64, -1] {
                        let cand = BigRational::new(BigInt::from(sign) * u, v.clone());
                        if rest.eval(&cand).is_zero() {
                            found = Some(cand);
                            break 'search;
                        }
                    }
                }
            }
            match found {
                Some(r) => {
                    // divide out (t - r) as many times as it goes
                    let factor = Poly::new(vec![-r.clone(), BigRational::one()]);
                    loop {
                        let (q, rem) = rest.divmod(&factor);
                        if !rem.is_zero() {
                            break;
                        }
                        push_root(&mut roots, r.clone());
                        rest = q;
                        if rest.eval(&r) != BigRational::zero() {
                            break;
                        }
                    }
                }
                None => break,
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        (roots, rest)
    }

    /// Integer-scaled coefficients (multiplied by the lcm of denominators
    /// and divided by the gcd of numerators).
    fn to_integer_coeffs(&self) -> Vec<BigInt> {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * &lcm).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() || g.is_one() {
            ints
        } else {
            ints.into_iter().map(|c| c / &g).collect()
        }
    }
}

fn push_root(roots: &mut Vec<(BigRational, usize)>, r: BigRational) {
    match roots.iter_mut().find(|(x, _)| *x == r) {
        Some((_, m)) => *m += 1,
        None => roots.push((r, 1)),
    }
}

/// Positive divisors of `|n|` via trial division; `None` when `n` is too
/// large to enumerate cheaply.
fn divisors(n: &num_bigint::BigUint) -> Option<Vec<BigInt>> {
    use num_traits::ToPrimitive;
    let n = n.to_u64()?;
    if n == 0 {
        return None;
    }
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d != n / d {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out.sort();
    Some(out)
}

/// Exact square root of a nonnegative rational, when it exists.
pub fn sqrt_exact(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(BigInt::from(sn), BigInt::from(sd)))
    } else {
        None
    }
}

pub fn rat_i64(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
