//! Sparse multivariate polynomials over ℤ in the variables `x_1, x_2, …`.
//!
//! The monomial order used throughout is the *b-sequence order*: a monomial
//! `X^a` is rewritten as the weakly increasing index sequence `b(a)` with
//! `X_{b(a)} = X^a` (so `x_2 x_4^2 x_5` becomes `(2,4,4,5)`), higher total degree
//! wins, and equal degrees compare `b(a)` lexicographically with the larger
//! index winning. Termwise dominance `b ≤ b'` implies `X_b ≤ X_{b'}`, which is
//! what makes `X^{c(w)}` the leading monomial of every Schubert polynomial.
//! This is the single place the transition algorithm's determinism comes from.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;

use rustc_hash::FxHashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::perm::Code;

type Entries = SmallVec<[u16; 16]>;

/// An exponent vector `(a_1, a_2, …)` with trailing zeros stripped.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Exponent(Entries);

impl Exponent {
    pub fn new(entries: impl IntoIterator<Item = usize>) -> Self {
        let mut e: Entries = entries
            .into_iter()
            .map(|a| u16::try_from(a).expect("exponent exceeds u16"))
            .collect();
        strip(&mut e);
        Self(e)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `x_i` as an exponent (1-based).
    pub fn var(i: usize) -> Self {
        assert!(i >= 1, "variables are indexed from 1");
        let mut e = Entries::from_elem(0, i);
        e[i - 1] = 1;
        Self(e)
    }

    pub fn from_code(code: &Code) -> Self {
        Self::new(code.entries().iter().copied())
    }

    pub fn to_code(&self) -> Code {
        Code::new(self.entries())
    }

    pub fn entries(&self) -> Vec<usize> {
        self.0.iter().map(|&a| a as usize).collect()
    }

    /// `a_i` for a 1-based index, zero beyond the support.
    pub fn get(&self, i: usize) -> usize {
        self.0.get(i - 1).map_or(0, |&a| a as usize)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    /// Largest variable index with a nonzero exponent.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut e = long.0.clone();
        for (x, &y) in e.iter_mut().zip(short.0.iter()) {
            *x = x.checked_add(y).expect("exponent overflow");
        }
        Self(e)
    }

    /// Replace `a_i` (1-based).
    pub fn with(&self, i: usize, value: usize) -> Self {
        let mut e = self.0.clone();
        if e.len() < i {
            e.resize(i, 0);
        }
        e[i - 1] = u16::try_from(value).expect("exponent exceeds u16");
        strip(&mut e);
        Self(e)
    }

    /// The weakly increasing index sequence `b(a)` with `X_{b(a)} = X^a`.
    pub fn index_sequence(&self) -> IndexSequence {
        let mut b = Vec::with_capacity(self.degree());
        for (i, &a) in self.0.iter().enumerate() {
            b.extend(std::iter::repeat_n(i + 1, a as usize));
        }
        IndexSequence(b)
    }

    /// Comparison under the b-sequence order described in the module docs.
    pub fn order_cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            unequal => return unequal,
        }
        // With equal degree, the first index at which the exponents differ
        // decides: fewer copies of the small index means a larger b-sequence.
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            if a != b {
                return b.cmp(&a);
            }
        }
        Ordering::Equal
    }
}

fn strip(e: &mut Entries) {
    while e.last() == Some(&0) {
        e.pop();
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// A weakly increasing sequence of positive indices `b_1 ≤ … ≤ b_p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IndexSequence(Vec<usize>);

impl IndexSequence {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::InvalidIndex("indices are 1-based".into()));
        }
        if indices.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidIndex(format!(
                "{indices:?} is not weakly increasing"
            )));
        }
        Ok(Self(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn to_exponent(&self) -> Exponent {
        let n = self.0.last().copied().unwrap_or(0);
        let mut e = vec![0; n];
        for &b in &self.0 {
            e[b - 1] += 1;
        }
        Exponent::new(e)
    }
}

/// Whether `(b1, b2)` is a good pair: both weakly increasing, `b1 ≤ b2`
/// termwise, and increasing at exactly the same positions. With `bound = Some(n)`
/// every entry must also be at most `n` (a good-n pair).
pub fn good_pair_check(b1: &[usize], b2: &[usize], bound: Option<usize>) -> Result<bool> {
    if b1.len() != b2.len() {
        return Err(Error::LengthMismatch {
            left: b1.len(),
            right: b2.len(),
        });
    }
    let increasing = |b: &[usize]| b.windows(2).all(|w| w[0] <= w[1]);
    if !increasing(b1) || !increasing(b2) {
        return Ok(false);
    }
    if b1.iter().zip(b2).any(|(x, y)| x > y) {
        return Ok(false);
    }
    let similar = b1
        .windows(2)
        .zip(b2.windows(2))
        .all(|(x, y)| (x[0] < x[1]) == (y[0] < y[1]));
    if !similar {
        return Ok(false);
    }
    if let Some(n) = bound {
        if b1.iter().chain(b2).any(|&b| b > n) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A polynomial with integer coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: FxHashMap<Exponent, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(Exponent::zero(), c)
    }

    pub fn monomial(exp: Exponent, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = FxHashMap::default();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// The variable `x_i`.
    pub fn var(i: usize) -> Self {
        Self::monomial(Exponent::var(i), 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &Exponent) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    /// Terms sorted in descending b-sequence order.
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &BigInt)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.order_cmp(a.0));
        terms
    }

    pub fn add_term(&mut self, exp: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, other: &Self, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * factor);
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
        out
    }

    /// Exact product.
    pub fn multiply(&self, other: &Self) -> Self {
        if let Some(p) = self.multiply_small(other) {
            return p;
        }
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    /// Fast path accumulating in `i128`; `None` if any coefficient or partial
    /// sum leaves that range.
    fn multiply_small(&self, other: &Self) -> Option<Self> {
        fn small(p: &Polynomial) -> Option<Vec<(&Exponent, i128)>> {
            p.terms
                .iter()
                .map(|(e, c)| c.to_i64().map(|c| (e, c as i128)))
                .collect()
        }
        let a = small(self)?;
        let b = small(other)?;
        let mut acc: FxHashMap<Exponent, i128> = FxHashMap::default();
        acc.reserve(a.len().max(b.len()) * 4);
        for &(ea, ca) in &a {
            for &(eb, cb) in &b {
                let prod = ca.checked_mul(cb)?;
                let slot = acc.entry(ea.add(eb)).or_insert(0);
                *slot = slot.checked_add(prod)?;
            }
        }
        Some(Self {
            terms: acc
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(e, c)| (e, BigInt::from(c)))
                .collect(),
        })
    }

    /// `f(x_1, …, x_m, 0, 0, …)`.
    pub fn restrict(&self, m: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.support_len() <= m)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// The maximal exponent under the b-sequence order.
    pub fn leading_exponent(&self) -> Result<Exponent> {
        self.leading_term()
            .map(|(e, _)| e.clone())
            .ok_or(Error::EmptyPolynomial)
    }

    pub fn leading_term(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().max_by(|a, b| a.0.order_cmp(b.0))
    }

    /// The common degree of every term, `None` for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<usize>> {
        let mut degree = None;
        for e in self.terms.keys() {
            let d = e.degree();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(Error::NotHomogeneous(d0, d)),
                _ => {}
            }
        }
        Ok(degree)
    }

    /// Largest variable index that occurs.
    pub fn num_vars(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.support_len())
            .max()
            .unwrap_or(0)
    }

    /// Exchange `x_i` and `x_j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let (ai, aj) = (e.get(i), e.get(j));
                    (e.with(i, aj).with(j, ai), c.clone())
                })
                .collect(),
        }
    }

    /// JSON form: `[{"exp": [...], "coeff": c}, …]` in descending order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(e, c)| json!({ "exp": e.entries(), "coeff": bigint_json(c) }))
                .collect(),
        )
    }
}

/// Integers that fit in `i64` become JSON numbers; larger ones become strings.
pub fn bigint_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(c.to_string()),
    }
}

impl fmt::Display for Polynomial {
    /// `c*x1^a1*x2^a2` terms in descending order, e.g. `x2 + x1` for `S_132`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, a) in e.entries().into_iter().enumerate() {
                match a {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{a}", i + 1)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::one());
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigInt::one());
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.multiply(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-BigInt::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(&x(1) * &x(1), Polynomial::monomial(Exponent::new([2]), 1));
        let p = &(&x(1) + &x(3)) - &x(2);
        assert_eq!(&Polynomial::one() * &p, p);
        assert!((&Polynomial::zero() * &p).is_zero());
    }

    #[test]
    fn bigint_path_matches_small_path() {
        let big = BigInt::from(i64::MAX) * BigInt::from(4);
        let p = &Polynomial::monomial(Exponent::var(1), big.clone()) + &x(2);
        let q = &x(1) + &x(2);
        let prod = &p * &q;
        assert_eq!(prod.coeff(&Exponent::new([2])), big);
        assert_eq!(prod.coeff(&Exponent::new([1, 1])), &big + BigInt::one());
        assert_eq!(prod.coeff(&Exponent::new([0, 2])), BigInt::one());
    }

    #[test]
    fn restrict_examples() {
        assert_eq!((&x(1) + &x(3)).restrict(2), x(1));
        let p = &(&x(1) * &x(2)) + &Polynomial::constant(7);
        assert_eq!(p.restrict(0), Polynomial::constant(7));
    }

    #[test]
    fn leading_exponent_examples() {
        assert_eq!(
            (&x(1) + &x(2)).leading_exponent().unwrap(),
            Exponent::new([0, 1])
        );
        let single = Polynomial::monomial(Exponent::new([0, 3, 1]), 5);
        assert_eq!(single.leading_exponent().unwrap(), Exponent::new([0, 3, 1]));
        assert_eq!(
            Polynomial::zero().leading_exponent(),
            Err(Error::EmptyPolynomial)
        );
    }

    #[test]
    fn good_pair_examples() {
        assert!(good_pair_check(&[2, 4, 4, 5], &[2, 6, 6, 8], Some(8)).unwrap());
        assert!(!good_pair_check(&[2, 4, 4, 5], &[2, 6, 6, 8], Some(7)).unwrap());
        assert!(good_pair_check(&[1, 3, 3], &[1, 3, 3], None).unwrap());
        assert!(!good_pair_check(&[1, 2], &[2, 2], None).unwrap());
        assert!(good_pair_check(&[1], &[1, 2], None).is_err());
    }

    #[test]
    fn index_sequence_round_trip() {
        let e = Exponent::new([0, 1, 0, 2, 1]);
        let b = e.index_sequence();
        assert_eq!(b.indices(), &[2, 4, 4, 5]);
        assert_eq!(b.to_exponent(), e);
        assert!(IndexSequence::new(vec![3, 1]).is_err());
    }

    #[test]
    fn text_and_json_forms() {
        let p =
            &(&(&x(1) * &x(1)) + &(&x(1) * &x(2)).scale(&BigInt::from(2))) - &x(3).multiply(&x(3));
        assert_eq!(p.to_string(), "-x3^2 + 2*x1*x2 + x1^2");
        assert_eq!(Polynomial::one().to_string(), "1");
        assert_eq!(Polynomial::zero().to_string(), "0");
        let json = p.to_json();
        assert_eq!(json[0]["exp"], json!([0, 0, 2]));
        assert_eq!(json[0]["coeff"], json!(-1));
        assert_eq!(json[2]["exp"], json!([2]));
    }

    #[test]
    fn homogeneity() {
        assert_eq!((&x(1) + &x(2)).homogeneous_degree().unwrap(), Some(1));
        assert!((&x(1) + &Polynomial::one()).homogeneous_degree().is_err());
        assert_eq!(Polynomial::zero().homogeneous_degree().unwrap(), None);
    }

    mod props {
        use super::*;
        use proptest::collection::vec;
        use proptest::prelude::*;

        fn arb_exponent() -> impl Strategy<Value = Exponent> {
            vec(0usize..3, 0..5).prop_map(Exponent::new)
        }

        fn arb_poly() -> impl Strategy<Value = Polynomial> {
            vec((arb_exponent(), -5i64..6), 0..6).prop_map(|terms| {
                Polynomial::from_terms(terms.into_iter().map(|(e, c)| (e, BigInt::from(c))))
            })
        }

        fn b_sequence_cmp(a: &Exponent, b: &Exponent) -> Ordering {
            // literal definition: degree, then lexicographic b-sequences
            a.degree().cmp(&b.degree()).then_with(|| {
                a.index_sequence()
                    .indices()
                    .cmp(b.index_sequence().indices())
            })
        }

        proptest! {
            #[test]
            fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
                prop_assert_eq!(&p * &q, &q * &p);
                prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
                prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            }

            #[test]
            fn restriction_commutes_with_product(p in arb_poly(), q in arb_poly(), m in 0usize..5) {
                let lhs = (&p * &q).restrict(m);
                let rhs = (&p.restrict(m) * &q.restrict(m)).restrict(m);
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn order_matches_b_sequence_definition(a in arb_exponent(), b in arb_exponent()) {
                prop_assert_eq!(a.order_cmp(&b), b_sequence_cmp(&a, &b));
            }

            #[test]
            fn dominance_implies_order(a in arb_exponent(), b in arb_exponent()) {
                let (ba, bb) = (a.index_sequence(), b.index_sequence());
                if ba.indices().len() == bb.indices().len()
                    && a != b
                    && ba.indices().iter().zip(bb.indices()).all(|(x, y)| x <= y)
                {
                    prop_assert_eq!(b.order_cmp(&a), Ordering::Greater);
                }
            }
        }
    }
}
