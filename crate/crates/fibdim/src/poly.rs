//! Sparse multivariate polynomials and polynomial vectors over ℚ.
//!
//! Terms are kept in a `BTreeMap` keyed by monomial in graded
//! lexicographic order, which gives every polynomial one canonical form:
//! equality, hashing of monomials, serialization and leading-term access
//! all agree.  Exponent vectors are stored with trailing zeros trimmed, so
//! constants (and the zero polynomial) are independent of the ambient
//! variable count; the ambient n is validated at the module layer.
//!
//! The monomial order is used for canonicalization and exact division
//! only — nothing here performs Gröbner-style completion.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::IntegralDomain;
use crate::{Int, Rat};

/// Exponent vector of a monomial, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    /// Monomial with the given exponents; trailing zeros are removed.
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    /// The constant monomial 1.
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    /// The single variable z_i (0-indexed).
    pub fn var(i: usize) -> Self {
        let mut exps = vec![0; i + 1];
        exps[i] = 1;
        Monomial(exps)
    }

    /// Total degree.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// Exponent of variable i (0 beyond the stored length).
    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Stored exponents (trailing zeros trimmed).
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponents padded with zeros to length n.
    ///
    /// Panics if the monomial involves a variable with index ≥ n.
    pub fn dense(&self, n: usize) -> Vec<u32> {
        assert!(self.0.len() <= n, "monomial has more than {n} variables");
        let mut out = self.0.clone();
        out.resize(n, 0);
        out
    }

    /// True when every variable index used is < n.
    pub fn fits_vars(&self, n: usize) -> bool {
        self.0.len() <= n
    }

    /// Product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.0.len().max(other.0.len());
        Monomial::new((0..len).map(|i| self.exponent(i) + other.exponent(i)).collect())
    }

    /// Whether `self` divides `other` componentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e <= other.exponent(i))
    }

    /// Quotient `other / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial::new((0..other.0.len()).map(|i| other.exponent(i) - self.exponent(i)).collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: compare total degree first, then exponents
    /// variable by variable (a higher exponent on an earlier variable is
    /// greater).
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let len = self.0.len().max(other.0.len());
            for i in 0..len {
                let c = self.exponent(i).cmp(&other.exponent(i));
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{}", i + 1)?;
            } else {
                write!(f, "z{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Number of monomials of degree exactly d in n variables: C(d+n-1, n-1).
pub fn monomial_count(n: usize, d: usize) -> usize {
    binomial(d + n - 1, n - 1)
}

/// Binomial coefficient with a u128 accumulator; panics on overflow, which
/// cannot happen at the degree scales this crate works at.
pub fn binomial(a: usize, b: usize) -> usize {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial overflow")
}

/// All monomials of degree exactly d in n variables, in descending
/// lexicographic order (z1^d first, zn^d last).  Requires n ≥ 1.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    assert!(n >= 1, "need at least one variable");
    let mut out = Vec::with_capacity(monomial_count(n, d));
    let mut current = vec![0u32; n];
    fill_monomials(&mut current, 0, d, &mut out);
    out
}

fn fill_monomials(current: &mut Vec<u32>, pos: usize, remaining: usize, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining as u32;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e as u32;
        fill_monomials(current, pos + 1, remaining - e, out);
    }
}

/// Position of a degree-d monomial within `monomials_of_degree(n, d)`,
/// computed combinatorially (number of lexicographically larger monomials
/// of the same degree).
pub fn monomial_rank(m: &Monomial, n: usize) -> usize {
    debug_assert!(m.fits_vars(n));
    let d = m.degree();
    let mut rank = 0usize;
    let mut remaining = d;
    for i in 0..n.saturating_sub(1) {
        let e = m.exponent(i) as usize;
        // Larger monomials share the prefix and take a bigger exponent at
        // position i; summing the stars-and-bars counts telescopes to one
        // binomial via the hockey-stick identity.
        if remaining > e {
            rank += binomial(remaining - e - 1 + (n - i - 1), n - i - 1);
        }
        remaining -= e;
    }
    rank
}

/// Sparse polynomial in ℚ[z1, z2, …] with canonically ordered terms.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    /// Polynomial from (monomial, coefficient) pairs; duplicates are
    /// summed and zero coefficients dropped.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(iter: I) -> Self {
        let mut terms: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in iter {
            if c.is_zero() {
                continue;
            }
            match terms.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get() + &c;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        MultiPoly { terms }
    }

    /// Constant polynomial.
    pub fn constant(c: Rat) -> Self {
        Self::from_terms([(Monomial::unit(), c)])
    }

    /// Constant polynomial from an integer.
    pub fn constant_int(c: i64) -> Self {
        Self::constant(Rat::from_integer(BigInt::from(c)))
    }

    /// The variable z_i (0-indexed).
    pub fn variable(i: usize) -> Self {
        Self::from_terms([(Monomial::var(i), Rat::one())])
    }

    /// Single-term polynomial.
    pub fn term(m: Monomial, c: Rat) -> Self {
        Self::from_terms([(m, c)])
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Leading (graded-lex greatest) term.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// True when all terms share one total degree (the zero polynomial is
    /// homogeneous of every degree).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        match degrees.next() {
            None => true,
            Some(d0) => degrees.all(|d| d == d0),
        }
    }

    /// Split into homogeneous parts keyed by degree; no zero parts.
    pub fn homogeneous_components(&self) -> BTreeMap<usize, MultiPoly> {
        let mut out: BTreeMap<usize, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_default()
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Smallest variable count containing every variable used.
    pub fn min_vars(&self) -> usize {
        self.terms.keys().map(|m| m.exponents().len()).max().unwrap_or(0)
    }

    /// Evaluate at a rational point; the point must supply a coordinate
    /// for every variable that occurs.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = point
                    .get(i)
                    .unwrap_or_else(|| panic!("evaluation point has no coordinate {}", i + 1));
                for _ in 0..e {
                    v *= x;
                }
            }
            acc += v;
        }
        acc
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiply by a monomial (exponent shift).
    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// k-th power by repeated multiplication.
    pub fn pow(&self, k: usize) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute z_i ↦ z_i + offset_i for every variable.
    pub fn substitute_shift(&self, offset: &[Rat]) -> MultiPoly {
        if offset.iter().all(|c| c.is_zero()) {
            return self.clone();
        }
        let mut acc = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let shift = offset
                    .get(i)
                    .unwrap_or_else(|| panic!("shift vector has no coordinate {}", i + 1));
                let base = MultiPoly::variable(i) + MultiPoly::constant(shift.clone());
                term = &term * &base.pow(e as usize);
            }
            acc = acc + term;
        }
        acc
    }

    /// Clear denominators: returns (integer terms, common denominator d)
    /// with self·d having the returned integer coefficients.
    pub fn integer_scaled(&self) -> (Vec<(Monomial, Int)>, Int) {
        let mut denom = Int::one();
        for c in self.terms.values() {
            denom = num_integer::lcm(denom, c.denom().clone());
        }
        let scaled = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.numer() * (&denom / c.denom())))
            .collect();
        (scaled, denom)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get() + c;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        MultiPoly { terms }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self + (-rhs)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs.clone())
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut terms: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match terms.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get() + &c;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        MultiPoly { terms }
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(Rat::one())
    }
}

impl IntegralDomain for MultiPoly {
    /// Exact division by repeated leading-term elimination.  In a monomial
    /// order the leading term of a product is the product of leading
    /// terms, so when the quotient exists this loop never gets stuck.
    /// Panics on a non-divisible pair, which only a caller bug produces.
    fn exact_div(&self, rhs: &Self) -> Self {
        let (dm, dc) = rhs.leading().expect("polynomial division by zero");
        let mut remainder = self.clone();
        let mut quotient = MultiPoly::zero();
        while let Some((rm, rc)) = remainder.leading() {
            assert!(dm.divides(rm), "inexact polynomial division");
            let qm = dm.quotient_of(rm);
            let qc = rc / dc;
            let qterm = MultiPoly::term(qm, qc);
            remainder = &remainder - &(&qterm * rhs);
            quotient = quotient + qterm;
        }
        quotient
    }

    fn pivot_weight(&self) -> u64 {
        self.degree().unwrap_or(0) as u64
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Vector of polynomials: one element of a free module ℚ[z]^N.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVec {
    entries: Vec<MultiPoly>,
}

impl PolyVec {
    pub fn new(entries: Vec<MultiPoly>) -> Self {
        PolyVec { entries }
    }

    /// Zero vector with `len` entries.
    pub fn zero(len: usize) -> Self {
        PolyVec { entries: vec![MultiPoly::zero(); len] }
    }

    /// Number of entries N.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, k: usize) -> &MultiPoly {
        &self.entries[k]
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Max total degree over nonzero entries; `None` for the zero vector.
    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(|p| p.degree()).max()
    }

    /// Smallest variable count containing every variable used.
    pub fn min_vars(&self) -> usize {
        self.entries.iter().map(|p| p.min_vars()).max().unwrap_or(0)
    }

    /// Common degree when every nonzero entry is homogeneous of one shared
    /// degree; `Ok(None)` for the zero vector; `Err` otherwise.
    pub fn homogeneous_degree(&self) -> Result<Option<usize>> {
        let mut degree = None;
        for p in &self.entries {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return Err(Error::Inhomogeneous(format!("entry {p} has mixed degrees")));
            }
            let d = p.degree().expect("nonzero");
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 == d => {}
                Some(d0) => {
                    return Err(Error::Inhomogeneous(format!(
                        "entries of degree {d0} and {d} in one generator"
                    )))
                }
            }
        }
        Ok(degree)
    }

    /// Split into homogeneous parts keyed by degree; parts are full
    /// vectors with zero padding, and no part is entirely zero.
    pub fn homogeneous_components(&self) -> BTreeMap<usize, PolyVec> {
        let mut out: BTreeMap<usize, PolyVec> = BTreeMap::new();
        for (k, p) in self.entries.iter().enumerate() {
            for (d, part) in p.homogeneous_components() {
                out.entry(d)
                    .or_insert_with(|| PolyVec::zero(self.entries.len()))
                    .entries[k] = part;
            }
        }
        out
    }

    /// Evaluate every entry at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Vec<Rat> {
        self.entries.iter().map(|p| p.eval(point)).collect()
    }

    /// Multiply every entry by a polynomial.
    pub fn scale_poly(&self, p: &MultiPoly) -> PolyVec {
        PolyVec {
            entries: self.entries.iter().map(|e| e * p).collect(),
        }
    }

    /// Multiply every entry by a rational scalar.
    pub fn scale(&self, c: &Rat) -> PolyVec {
        PolyVec {
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    /// Substitute z ↦ z + offset in every entry.
    pub fn substitute_shift(&self, offset: &[Rat]) -> PolyVec {
        PolyVec {
            entries: self.entries.iter().map(|e| e.substitute_shift(offset)).collect(),
        }
    }
}

impl Add for &PolyVec {
    type Output = PolyVec;
    fn add(self, rhs: &PolyVec) -> PolyVec {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        PolyVec {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &PolyVec {
    type Output = PolyVec;
    fn sub(self, rhs: &PolyVec) -> PolyVec {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        PolyVec {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Display for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}
