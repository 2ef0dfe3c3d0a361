//! Schubert polynomials and expansions in the Schubert basis.
//!
//! Two independent constructions are provided: [`schubert_bjs`] sums over
//! reduced words and their compatible sequences, and [`schubert_dd`] applies
//! divided differences to `x_1^{n-1} x_2^{n-2} ⋯ x_{n-1}`. The transition
//! expansion [`expand_in_schubert`] repeatedly strips the leading monomial
//! `X^{c(v)}` and subtracts the matching multiple of `S_v`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::{bigint_json, Exponent, Polynomial};

/// A finite Schubert-basis expansion `Σ c_v S_v` with every `c_v > 0`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SchubertExpansion {
    terms: BTreeMap<Permutation, BigUint>,
}

impl SchubertExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{w: 1}`.
    pub fn single(w: Permutation) -> Self {
        let mut e = Self::new();
        e.add(w, BigUint::one());
        e
    }

    /// Adds `coeff · S_w`; zero coefficients are ignored.
    pub fn add(&mut self, w: Permutation, coeff: BigUint) {
        if coeff.is_zero() {
            return;
        }
        *self.terms.entry(w).or_default() += coeff;
    }

    pub fn coeff(&self, w: &Permutation) -> BigUint {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn contains(&self, w: &Permutation) -> bool {
        self.terms.contains_key(w)
    }

    /// Terms sorted by permutation word.
    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &BigUint)> {
        self.terms.iter()
    }

    pub fn perms(&self) -> impl Iterator<Item = &Permutation> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every coefficient equals one.
    pub fn is_multiplicity_free(&self) -> bool {
        self.terms.values().all(|c| c.is_one())
    }

    /// The common length of the indexing permutations.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Permutation::length)
    }

    /// `Σ c_v S_v` as a polynomial.
    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        for (v, c) in &self.terms {
            p.add_scaled(&schubert_bjs(v), &BigInt::from(c.clone()));
        }
        p
    }

    /// `{"terms": [{"perm": [...], "coeff": k}, …]}` sorted by permutation word.
    pub fn to_json(&self) -> Value {
        json!({ "terms": terms_json(&self.terms) })
    }

    pub(crate) fn into_map(self) -> BTreeMap<Permutation, BigUint> {
        self.terms
    }
}

pub(crate) fn terms_json(terms: &BTreeMap<Permutation, BigUint>) -> Value {
    Value::Array(
        terms
            .iter()
            .map(|(v, c)| json!({ "perm": v, "coeff": bigint_json(&BigInt::from(c.clone())) }))
            .collect(),
    )
}

pub(crate) fn fmt_terms(
    f: &mut fmt::Formatter<'_>,
    symbol: &str,
    terms: &BTreeMap<Permutation, BigUint>,
) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (k, (v, c)) in terms.iter().enumerate() {
        if k > 0 {
            f.write_str(" + ")?;
        }
        if !c.is_one() {
            write!(f, "{c}*")?;
        }
        write!(f, "{symbol}[{v}]")?;
    }
    Ok(())
}

impl fmt::Display for SchubertExpansion {
    /// `S[3241] + 2*S[…]`, compact words when every letter is a digit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, "S", &self.terms)
    }
}

impl fmt::Debug for SchubertExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SchubertExpansion({self})")
    }
}

impl FromIterator<(Permutation, u64)> for SchubertExpansion {
    fn from_iter<I: IntoIterator<Item = (Permutation, u64)>>(iter: I) -> Self {
        let mut e = Self::new();
        for (w, c) in iter {
            e.add(w, BigUint::from(c));
        }
        e
    }
}

fn cache() -> &'static RwLock<HashMap<Permutation, Arc<Polynomial>>> {
    static CACHE: OnceLock<RwLock<HashMap<Permutation, Arc<Polynomial>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Drops every memoized Schubert polynomial.
pub fn clear_cache() {
    cache().write().unwrap().clear();
}

/// `S_w = Σ_{a ∈ R(w)} Σ_{i ∈ K(a)} x_{i_1}⋯x_{i_p}`, memoized per permutation.
///
/// The double sum is evaluated by grouping each compatible pair by its value
/// of `i`: the letters `a_j` sharing one index `t` form a strictly decreasing
/// run of letters `≥ t`, so `S_w` is the sum over length-additive
/// factorizations `w = d_1 d_2 ⋯` into decreasing runs, with `d_t` using only
/// letters `≥ t` and contributing `x_t^{ℓ(d_t)}`.
pub fn schubert_bjs(w: &Permutation) -> Arc<Polynomial> {
    if let Some(hit) = cache().read().unwrap().get(w) {
        return hit.clone();
    }
    let p = match runs_from::<u64>(1, w, &mut RunMemo::default()) {
        Some(counts) => to_polynomial(&counts),
        None => to_polynomial(&runs_from::<BigInt>(1, w, &mut RunMemo::default()).unwrap()),
    };
    let p = Arc::new(p);
    cache().write().unwrap().insert(w.clone(), p.clone());
    p
}

/// Coefficient arithmetic for the factorization DP; `u64` reports overflow.
trait Count: Clone + Into<BigInt> {
    fn unit() -> Self;
    fn accumulate(&mut self, other: &Self) -> Option<()>;
}

impl Count for u64 {
    fn unit() -> Self {
        1
    }

    fn accumulate(&mut self, other: &Self) -> Option<()> {
        *self = self.checked_add(*other)?;
        Some(())
    }
}

impl Count for BigInt {
    fn unit() -> Self {
        BigInt::one()
    }

    fn accumulate(&mut self, other: &Self) -> Option<()> {
        *self += other;
        Some(())
    }
}

type Counts<C> = FxHashMap<Exponent, C>;
type RunMemo<C> = FxHashMap<(usize, Permutation), Rc<Counts<C>>>;

fn to_polynomial<C: Count>(counts: &Counts<C>) -> Polynomial {
    Polynomial::from_terms(counts.iter().map(|(e, c)| (e.clone(), c.clone().into())))
}

/// Sum over factorizations of `v` into decreasing runs `d_t d_{t+1} ⋯`.
fn runs_from<C: Count>(t: usize, v: &Permutation, memo: &mut RunMemo<C>) -> Option<Rc<Counts<C>>> {
    if v.is_identity() {
        return Some(Rc::new(Counts::from_iter([(Exponent::zero(), C::unit())])));
    }
    // every remaining letter must be ≥ t, i.e. v fixes 1..t-1
    if (1..t).any(|i| v.at(i) != i) {
        return Some(Rc::default());
    }
    if let Some(hit) = memo.get(&(t, v.clone())) {
        return Some(hit.clone());
    }
    let mut out = Counts::<C>::default();
    let mut factors = Vec::new();
    decreasing_left_factors(v, usize::MAX, t, 0, &mut factors);
    for (len, rest) in factors {
        let tail = runs_from(t + 1, &rest, memo)?;
        for (e, c) in tail.iter() {
            let e = if len == 0 { e.clone() } else { e.with(t, len) };
            match out.entry(e) {
                std::collections::hash_map::Entry::Occupied(mut o) => o.get_mut().accumulate(c)?,
                std::collections::hash_map::Entry::Vacant(slot) => {
                    slot.insert(c.clone());
                }
            }
        }
    }
    let out = Rc::new(out);
    memo.insert((t, v.clone()), out.clone());
    Some(out)
}

/// Every `(q, d⁻¹v)` where `d = s_{b_1}⋯s_{b_q}` with `b_1 > ⋯ > b_q ≥ t` and
/// `ℓ(d⁻¹v) = ℓ(v) − q`.
fn decreasing_left_factors(
    v: &Permutation,
    below: usize,
    t: usize,
    len: usize,
    out: &mut Vec<(usize, Permutation)>,
) {
    out.push((len, v.clone()));
    let top = below.min(v.size());
    for b in t..top {
        // b is a left descent iff b+1 appears before b
        if v.position_of(b) > v.position_of(b + 1) {
            decreasing_left_factors(&v.swap_values(b, b + 1), b, t, len + 1, out);
        }
    }
}

/// `S_w` through divided differences from `S_{w0} = x_1^{n-1}⋯x_{n-1}`.
pub fn schubert_dd(w: &Permutation, n: usize) -> Result<Polynomial> {
    let word = w.inverse().compose(&Permutation::longest(n)).reduced_word();
    schubert_dd_along(w, n, &word)
}

/// As [`schubert_dd`], but along a caller-chosen reduced word `(a_1, …, a_q)`
/// of `w⁻¹ w0`, applying `∂_{a_1} ∘ ⋯ ∘ ∂_{a_q}`.
pub fn schubert_dd_along(w: &Permutation, n: usize, word: &[usize]) -> Result<Polynomial> {
    if w.size() > n {
        return Err(Error::NotInSymmetricGroup {
            perm: w.to_string(),
            n,
        });
    }
    let target = w.inverse().compose(&Permutation::longest(n));
    let product = word.iter().fold(Permutation::identity(), |acc, &a| {
        acc.compose(&Permutation::simple(a))
    });
    if word.len() != target.length() || product != target {
        return Err(Error::InvalidIndex(format!(
            "{word:?} is not a reduced word of w^-1 w0 = {target}"
        )));
    }
    let top = Exponent::new((1..n).rev());
    let mut p = Polynomial::monomial(top, 1);
    for &a in word.iter().rev() {
        p = divided_difference(&p, a)?;
    }
    Ok(p)
}

/// `∂_i f = (f − s_i f) / (x_i − x_{i+1})`, with the division verified exact.
pub fn divided_difference(f: &Polynomial, i: usize) -> Result<Polynomial> {
    let mut q = Polynomial::zero();
    for (e, c) in f.iter() {
        let (p, r) = (e.get(i), e.get(i + 1));
        // (x_i^p x_{i+1}^r − x_i^r x_{i+1}^p)/(x_i − x_{i+1}) as a geometric sum
        let (hi, lo) = (p.max(r), p.min(r));
        let c = if p >= r { c.clone() } else { -c.clone() };
        for k in 0..hi - lo {
            q.add_term(e.with(i, hi - 1 - k).with(i + 1, lo + k), c.clone());
        }
    }
    let numerator = f - &f.swap_vars(i, i + 1);
    let denominator = &Polynomial::var(i) - &Polynomial::var(i + 1);
    if &q * &denominator != numerator {
        return Err(Error::Internal(format!(
            "divided difference ∂_{i} left a nonzero remainder"
        )));
    }
    Ok(q)
}

/// Expands a homogeneous, Schubert-positive polynomial in the Schubert basis.
pub fn expand_in_schubert(p: &Polynomial) -> Result<SchubertExpansion> {
    p.homogeneous_degree()?;
    let mut rest = p.clone();
    let mut out = SchubertExpansion::new();
    while let Some((lead, coeff)) = rest.leading_term() {
        let v = Permutation::from_code(&lead.to_code());
        if !coeff.is_positive() {
            return Err(Error::NotSchubertPositive {
                perm: v.to_commas(),
                coeff: coeff.to_string(),
            });
        }
        let coeff = coeff.clone();
        if out.contains(&v) {
            return Err(Error::Internal(format!(
                "leading monomial of S[{v}] reappeared during transition"
            )));
        }
        rest.add_scaled(&schubert_bjs(&v), &-coeff.clone());
        out.add(v, coeff.magnitude().clone());
    }
    Ok(out)
}

/// `S_w · S_{s_m}` by Monk's rule: `Σ S_{w t_{jk}}` over `j ≤ m < k` with
/// `ℓ(w t_{jk}) = ℓ(w) + 1`.
pub fn monk(w: &Permutation, m: usize) -> SchubertExpansion {
    assert!(m >= 1, "Monk's rule needs m ≥ 1");
    let len = w.length();
    let top = w.size().max(m) + 1;
    let mut out = SchubertExpansion::new();
    for j in 1..=m {
        for k in m + 1..=top {
            let v = w.swap_positions(j, k);
            if v.length() == len + 1 {
                out.add(v, BigUint::one());
            }
        }
    }
    out
}

/// The Schubert expansion of `S_{w_1} ⋯ S_{w_r}`; the empty product is `S_id`.
pub fn product_expand(ws: &[Permutation]) -> Result<SchubertExpansion> {
    let mut product = Polynomial::one();
    for w in ws {
        product = product.multiply(&schubert_bjs(w));
    }
    expand_in_schubert(&product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    /// Literal double sum over reduced words and compatible sequences.
    fn bjs_literal(w: &Permutation) -> Polynomial {
        fn compatible(
            a: &[usize],
            j: usize,
            prev: usize,
            seq: &mut Vec<usize>,
            out: &mut Polynomial,
        ) {
            if j == a.len() {
                let mut e = vec![0; seq.iter().copied().max().unwrap_or(0)];
                for &i in seq.iter() {
                    e[i - 1] += 1;
                }
                out.add_term(Exponent::new(e), BigInt::one());
                return;
            }
            let lo = if j > 0 && a[j - 1] < a[j] {
                prev + 1
            } else {
                prev.max(1)
            };
            for i in lo..=a[j] {
                seq.push(i);
                compatible(a, j + 1, i, seq, out);
                seq.pop();
            }
        }
        let mut out = Polynomial::zero();
        for a in w.reduced_words() {
            compatible(&a, 0, 1, &mut Vec::new(), &mut out);
        }
        out
    }

    #[test]
    fn bjs_examples() {
        assert_eq!(*schubert_bjs(&Permutation::identity()), Polynomial::one());
        assert_eq!(*schubert_bjs(&p("21")), x(1));
        assert_eq!(*schubert_bjs(&p("132")), &x(1) + &x(2));
        let s1432 = schubert_bjs(&p("1432"));
        assert_eq!(s1432.num_terms(), 5);
    }

    #[test]
    fn bjs_matches_literal_double_sum() {
        for n in 1..=5 {
            for w in Permutation::all(n) {
                assert_eq!(*schubert_bjs(&w), bjs_literal(&w), "w = {w}");
            }
        }
        for w in ["642135", "3215746", "2743156"] {
            assert_eq!(*schubert_bjs(&p(w)), bjs_literal(&p(w)), "w = {w}");
        }
    }

    #[test]
    fn dd_examples() {
        let w0 = Permutation::longest(3);
        assert_eq!(
            schubert_dd(&w0, 3).unwrap(),
            Polynomial::monomial(Exponent::new([2, 1]), 1)
        );
        assert_eq!(
            schubert_dd(&Permutation::identity(), 3).unwrap(),
            Polynomial::one()
        );
        assert_eq!(schubert_dd(&p("132"), 3).unwrap(), *schubert_bjs(&p("132")));
        assert!(schubert_dd(&p("2413"), 3).is_err());
    }

    #[test]
    fn dd_is_independent_of_reduced_word() {
        for w in Permutation::all(4) {
            let target = w.inverse().compose(&Permutation::longest(4));
            let expect = schubert_bjs(&w);
            for word in target.reduced_words() {
                assert_eq!(schubert_dd_along(&w, 4, &word).unwrap(), *expect);
            }
        }
        assert!(schubert_dd_along(&p("21"), 2, &[1]).is_err());
    }

    #[test]
    fn leading_monomial_is_code() {
        for n in 1..=6 {
            for w in Permutation::all(n) {
                let s = schubert_bjs(&w);
                let (lead, c) = s.leading_term().unwrap();
                assert_eq!(lead, &Exponent::from_code(&w.code()), "w = {w}");
                assert!(c.is_one());
            }
        }
    }

    fn weakly_increasing(len: usize, max: usize) -> Vec<Vec<usize>> {
        fn go(len: usize, lo: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            for b in lo..=max {
                cur.push(b);
                go(len, b, max, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(len, 1, max, &mut Vec::new(), &mut out);
        out
    }

    fn coeff_of(s: &Polynomial, b: &[usize]) -> BigInt {
        let e = crate::poly::IndexSequence::new(b.to_vec())
            .unwrap()
            .to_exponent();
        s.coeff(&e)
    }

    #[test]
    fn good_pairs_have_monotone_coefficients() {
        for w in Permutation::all(4) {
            let s = schubert_bjs(&w);
            let seqs = weakly_increasing(w.length(), 4);
            for b1 in &seqs {
                for b2 in &seqs {
                    if crate::poly::good_pair_check(b1, b2, None).unwrap() {
                        assert!(
                            coeff_of(&s, b1) >= coeff_of(&s, b2),
                            "w={w} b1={b1:?} b2={b2:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn good_n_pairs_have_equal_coefficients_after_embedding() {
        for n in 0..=2 {
            for u in Permutation::all(3) {
                let s = schubert_bjs(&u.shifted(n));
                if n == 0 {
                    continue;
                }
                let seqs = weakly_increasing(u.length(), n);
                for b1 in &seqs {
                    for b2 in &seqs {
                        if crate::poly::good_pair_check(b1, b2, Some(n)).unwrap() {
                            assert_eq!(coeff_of(&s, b1), coeff_of(&s, b2));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let e = product_expand(&[p("3241"), p("4312")]).unwrap();
        assert_eq!(e, SchubertExpansion::single(p("642135")));
        let e = product_expand(&[p("321"), p("2413")]).unwrap();
        assert_eq!(e, [(p("53124"), 1), (p("45123"), 1)].into_iter().collect());
        for w in Permutation::all(4) {
            assert_eq!(
                product_expand(std::slice::from_ref(&w)).unwrap(),
                SchubertExpansion::single(w.clone())
            );
            assert_eq!(
                expand_in_schubert(&schubert_bjs(&w)).unwrap(),
                SchubertExpansion::single(w)
            );
        }
        assert_eq!(
            product_expand(&[]).unwrap(),
            SchubertExpansion::single(Permutation::identity())
        );
    }

    #[test]
    fn expansion_rejects_bad_input() {
        let err = expand_in_schubert(&(&x(1) - &x(2))).unwrap_err();
        assert!(matches!(err, Error::NotSchubertPositive { .. }), "{err}");
        let err = expand_in_schubert(&(&x(1) + &Polynomial::one())).unwrap_err();
        assert!(matches!(err, Error::NotHomogeneous(..)));
        assert!(expand_in_schubert(&Polynomial::zero()).unwrap().is_empty());
    }

    #[test]
    fn products_reconstruct_and_stay_positive() {
        let s3 = Permutation::all(3);
        for w in &s3 {
            for u in &s3 {
                let prod = &*schubert_bjs(w) * &*schubert_bjs(u);
                let e = expand_in_schubert(&prod).unwrap();
                assert_eq!(e.to_polynomial(), prod);
                if let Some(d) = e.degree() {
                    assert!(e.perms().all(|v| v.length() == d));
                }
            }
        }
    }

    #[test]
    fn random_s4_products_are_positive() {
        use rand::{Rng, SeedableRng};
        let s4 = Permutation::all(4);
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        for _ in 0..50 {
            let w = &s4[rng.gen_range(0..s4.len())];
            let u = &s4[rng.gen_range(0..s4.len())];
            let prod = &*schubert_bjs(w) * &*schubert_bjs(u);
            let e = expand_in_schubert(&prod).unwrap();
            assert_eq!(e.to_polynomial(), prod, "{w} * {u}");
        }
    }

    #[test]
    fn embedding_keeps_old_terms_and_adds_new_ones_not_fixing_one() {
        let s3 = Permutation::all(3);
        for w in &s3 {
            for u in &s3 {
                let old = product_expand(&[w.clone(), u.clone()]).unwrap();
                let new = product_expand(&[w.shifted(1), u.shifted(1)]).unwrap();
                let shifted: BTreeSet<_> = old.perms().map(|v| v.shifted(1)).collect();
                for (v, c) in old.iter() {
                    assert_eq!(&new.coeff(&v.shifted(1)), c);
                }
                for v in new.perms().filter(|v| !shifted.contains(*v)) {
                    assert_ne!(v.at(1), 1, "{w} * {u}: {v}");
                }
            }
        }
    }

    #[test]
    fn monk_examples() {
        assert_eq!(
            monk(&Permutation::identity(), 1),
            SchubertExpansion::single(p("21"))
        );
        assert_eq!(monk(&p("21"), 1), SchubertExpansion::single(p("312")));
        let via_transition = expand_in_schubert(&(&*schubert_bjs(&p("21")) * &x(1))).unwrap();
        assert_eq!(monk(&p("21"), 1), via_transition);
    }

    #[test]
    fn monk_agrees_with_transition_on_s4() {
        for w in Permutation::all(4) {
            for m in 1..=3 {
                let prod = &*schubert_bjs(&w) * &*schubert_bjs(&Permutation::simple(m));
                assert_eq!(
                    monk(&w, m),
                    expand_in_schubert(&prod).unwrap(),
                    "w={w} m={m}"
                );
            }
        }
    }

    #[test]
    fn text_and_json() {
        let e: SchubertExpansion = [(p("3241"), 1), (p("2413"), 2)].into_iter().collect();
        assert_eq!(e.to_string(), "2*S[2413] + S[3241]");
        assert_eq!(
            e.to_json(),
            json!({"terms": [{"perm": [2,4,1,3], "coeff": 2}, {"perm": [3,2,4,1], "coeff": 1}]})
        );
        assert_eq!(SchubertExpansion::new().to_string(), "0");
    }
}
