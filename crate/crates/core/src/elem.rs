//! Elementary monomials `e_I = e_{i_1}^1 e_{i_2}^2 ⋯ e_{i_n}^n` and the
//! Schubert–Kostka matrix.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::{bigint_json, Exponent, Polynomial};
use crate::schubert::{expand_in_schubert, schubert_bjs, SchubertExpansion};
use crate::stanley::{LevelTracker, Terms};

/// Default for the `SCHUBERT_MAX_N` bound on Kostka computations.
pub const DEFAULT_MAX_N: usize = 6;

/// The configured bound: `SCHUBERT_MAX_N` if set and numeric, else 6.
pub fn max_n() -> usize {
    std::env::var("SCHUBERT_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

fn check_bound(n: usize) -> Result<()> {
    let bound = max_n();
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    Ok(())
}

/// An index `I = (i_1, …, i_n)` with `i_k ≤ k`; trailing zeros are dropped.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ElemIndex(Vec<usize>);

impl ElemIndex {
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        if let Some((k, &i)) = indices.iter().enumerate().find(|&(k, &i)| i > k + 1) {
            return Err(Error::VanishingFactor { i, k: k + 1 });
        }
        while indices.last() == Some(&0) {
            indices.pop();
        }
        Ok(Self(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// `(0^k, I)`.
    pub fn with_leading_zeros(&self, k: usize) -> Self {
        let mut v = vec![0; k];
        v.extend_from_slice(&self.0);
        Self::new(v).expect("prepending zeros keeps i_k ≤ k")
    }

    /// `I` with its first entry removed, if that entry is zero and the rest
    /// is again a valid index.
    pub fn drop_leading_zero(&self) -> Option<Self> {
        match self.0.first() {
            Some(0) => Self::new(self.0[1..].to_vec()).ok(),
            None => Some(Self::default()),
            _ => None,
        }
    }
}

impl fmt::Display for ElemIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "e[{}]", parts.join(","))
    }
}

impl fmt::Debug for ElemIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ElemIndex {
    type Err = Error;

    /// Accepts `e[1,2,0]`, `[1,2,0]`, `1,2,0` or the digit string `120`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix('e').unwrap_or(body);
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .unwrap_or(body)
            .trim();
        let parts: Vec<&str> = if body.is_empty() {
            Vec::new()
        } else if body.contains(',') {
            body.split(',').map(str::trim).collect()
        } else {
            body.split("").filter(|p| !p.is_empty()).collect()
        };
        let mut indices = Vec::with_capacity(parts.len());
        for (pos, part) in parts.iter().enumerate() {
            let i = part.parse().map_err(|_| {
                Error::InvalidIndex(format!(
                    "entry {} of {s:?} is not a nonnegative integer: {part:?}",
                    pos + 1
                ))
            })?;
            indices.push(i);
        }
        Self::new(indices)
    }
}

impl Serialize for ElemIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// `e_i(x_1, …, x_k)`.
pub fn elementary(i: usize, k: usize) -> Polynomial {
    fn subsets(start: usize, k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Polynomial) {
        if left == 0 {
            let mut e = vec![0; k];
            for &r in cur.iter() {
                e[r - 1] = 1;
            }
            out.add_term(Exponent::new(e), BigInt::one());
            return;
        }
        for r in start..=k + 1 - left {
            cur.push(r);
            subsets(r + 1, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Polynomial::zero();
    if i <= k {
        subsets(1, k, i, &mut Vec::new(), &mut out);
    }
    out
}

pub fn elem_poly(index: &ElemIndex) -> Polynomial {
    index
        .indices()
        .iter()
        .enumerate()
        .fold(Polynomial::one(), |acc, (k, &i)| {
            acc.multiply(&elementary(i, k + 1))
        })
}

pub fn elem_to_schubert(index: &ElemIndex) -> Result<SchubertExpansion> {
    expand_in_schubert(&elem_poly(index))
}

/// `e_r^k · S_w = Σ T_{i_1,j_1} ⋯ T_{i_r,j_r} S_w` over distinct `i`'s with
/// `i ≤ k < j` and `j_1 ≤ ⋯ ≤ j_r`; the rightmost operator acts first.
pub fn pieri(r: usize, k: usize, w: &Permutation) -> Result<SchubertExpansion> {
    if r == 0 || r > k {
        return Err(Error::InvalidIndex(format!(
            "pieri needs 1 ≤ r ≤ k, got r = {r}, k = {k}"
        )));
    }
    let top = w.size().max(k) + r;
    let mut out = SchubertExpansion::new();
    let mut used = vec![false; k + 1];
    pieri_chains(w, r, top, k, &mut used, &mut out);
    Ok(out)
}

fn pieri_chains(
    v: &Permutation,
    left: usize,
    j_max: usize,
    k: usize,
    used: &mut [bool],
    out: &mut SchubertExpansion,
) {
    if left == 0 {
        out.add(v.clone(), BigUint::one());
        return;
    }
    let len = v.length();
    for j in k + 1..=j_max {
        for i in 1..=k {
            if used[i] {
                continue;
            }
            let next = v.swap_positions(i, j);
            if next.length() == len + 1 {
                used[i] = true;
                pieri_chains(&next, left - 1, j, k, used, out);
                used[i] = false;
            }
        }
    }
}

/// The levels of `e_{(0^k, I)}` for `k = 0, 1, …`, against the predicted
/// last level `r = Σ i_k − n` and the predicted singleton `W_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongStability {
    pub levels: Vec<Terms>,
    /// Last level with new terms before the first empty level.
    pub last_new_level: Option<usize>,
    /// No new terms after the first empty level.
    pub gap_free: bool,
    pub predicted_last: isize,
    /// `W_r = {23⋯(r+n+1)1}` for the predicted `r`, when `r ≥ 0`.
    pub predicted_top: Option<Permutation>,
}

impl StrongStability {
    fn from_levels(
        levels: Vec<Terms>,
        predicted_last: isize,
        predicted_top: Option<Permutation>,
    ) -> Self {
        let first_empty = levels
            .iter()
            .skip(1)
            .position(BTreeMap::is_empty)
            .map(|i| i + 1);
        let gap_free = first_empty.is_none_or(|i| levels[i..].iter().all(BTreeMap::is_empty));
        Self {
            last_new_level: first_empty.map(|i| i - 1),
            gap_free,
            predicted_last,
            predicted_top,
            levels,
        }
    }

    pub fn last_level_agrees(&self) -> bool {
        self.last_new_level.map(|l| l as isize) == Some(self.predicted_last)
    }

    /// Whether the predicted level holds exactly the predicted singleton.
    pub fn top_agrees(&self) -> bool {
        match (&self.predicted_top, usize::try_from(self.predicted_last)) {
            (Some(top), Ok(r)) => self
                .levels
                .get(r)
                .is_some_and(|l| l.len() == 1 && l.contains_key(top)),
            _ => false,
        }
    }

    pub fn to_json(&self) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .enumerate()
            .map(|(n, t)| json!({ "n": n, "terms": crate::schubert::terms_json(t) }))
            .collect();
        json!({
            "levels": levels,
            "last_new_level": self.last_new_level,
            "gap_free": self.gap_free,
            "predicted_last": self.predicted_last,
            "predicted_top": self.predicted_top,
            "last_level_agrees": self.last_level_agrees(),
            "top_agrees": self.top_agrees(),
        })
    }
}

/// Expands `e_{(0^k, I)}` for `k = 0..=max(|I|, r) + 1`.
pub fn elem_stability(index: &ElemIndex) -> Result<StrongStability> {
    let n = index.indices().len();
    let predicted = index.degree() as isize - n as isize;
    let top = usize::try_from(predicted).ok().map(|r| {
        let mut word: Vec<usize> = (2..=r + n + 1).collect();
        word.push(1);
        Permutation::from_word(word).expect("cycle is a permutation")
    });
    let last = index.degree().max(predicted.max(0) as usize) + 1;
    let mut tracker = LevelTracker::new();
    for k in 0..=last {
        tracker.push(elem_to_schubert(&index.with_leading_zeros(k))?)?;
    }
    Ok(StrongStability::from_levels(
        tracker.into_levels(),
        predicted,
        top,
    ))
}

/// Levels of `e_i^{j+k} · S_{1^k×w}`, against the cutoff `i − m` where `m`
/// counts the adjacent moves that carry the letter 1 of `w` past position `j`.
pub fn pieri_stability(i: usize, j: usize, w: &Permutation) -> Result<StrongStability> {
    let moves = (j + 1).saturating_sub(w.one_position());
    let predicted = i as isize - moves as isize;
    let last = i + w.length() + 1;
    let mut tracker = LevelTracker::new();
    for k in 0..=last {
        let product = elementary(i, j + k).multiply(&schubert_bjs(&w.shifted(k)));
        tracker.push(expand_in_schubert(&product)?)?;
    }
    Ok(StrongStability::from_levels(
        tracker.into_levels(),
        predicted,
        None,
    ))
}

/// Exponents `a` with `a_k ≤ n − k`, in lexicographic order.
pub fn staircase(n: usize) -> Vec<Exponent> {
    fn go(k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Exponent>) {
        if k == n {
            out.push(Exponent::new(cur.iter().copied()));
            return;
        }
        for a in 0..=n - k {
            cur.push(a);
            go(k + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(1, n, &mut Vec::new(), &mut out);
    } else {
        out.push(Exponent::zero());
    }
    out
}

/// `K⁻¹_{a,u} = Σ_{σ ∈ S_n} sgn(σ) K_{w0 u, σ(ρ_n) − a}` for every `a`.
///
/// Each monomial `X^b` of `S_{w0 u}` contributes to `a = σ(ρ_n) − b`; only
/// staircase `a` are kept, written as length-`n` vectors.
pub fn kostka_inverse_column(u: &Permutation, n: usize) -> Result<BTreeMap<Vec<usize>, BigInt>> {
    check_bound(n)?;
    if u.size() > n {
        return Err(Error::NotInSymmetricGroup {
            perm: u.to_string(),
            n,
        });
    }
    let source = Permutation::longest(n).compose(u);
    let poly = schubert_bjs(&source);
    let rho: Vec<i64> = (0..n as i64).rev().collect();
    let mut out: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
    for sigma in Permutation::all(n) {
        let sign = if sigma.length() % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let moved: Vec<i64> = (1..=n).map(|i| rho[sigma.at(i) - 1]).collect();
        for (b, c) in poly.iter() {
            let a: Option<Vec<usize>> = (0..n)
                .map(|k| {
                    let d = moved[k] - b.get(k + 1) as i64;
                    (0..=(n - 1 - k) as i64).contains(&d).then_some(d as usize)
                })
                .collect();
            if let Some(a) = a {
                *out.entry(a).or_default() += &sign * c;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn padded(a: &Exponent, n: usize) -> Vec<usize> {
    (1..=n).map(|k| a.get(k)).collect()
}

/// The Schubert–Kostka matrix `K_{w,a}` on `S_n × staircase(n)` and its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KostkaMatrix {
    pub n: usize,
    pub perms: Vec<Permutation>,
    pub exponents: Vec<Exponent>,
    /// `forward[w][a]`.
    pub forward: Vec<Vec<BigInt>>,
    /// `inverse[a][u]`.
    pub inverse: Vec<Vec<BigInt>>,
}

pub fn kostka_matrix(n: usize) -> Result<KostkaMatrix> {
    check_bound(n)?;
    let perms = Permutation::all(n);
    let exponents = staircase(n);
    let forward: Vec<Vec<BigInt>> = perms
        .iter()
        .map(|w| {
            let s = schubert_bjs(w);
            exponents.iter().map(|a| s.coeff(a)).collect()
        })
        .collect();
    let mut inverse = vec![vec![BigInt::zero(); perms.len()]; exponents.len()];
    let position: BTreeMap<Vec<usize>, usize> = exponents
        .iter()
        .enumerate()
        .map(|(i, a)| (padded(a, n), i))
        .collect();
    for (col, u) in perms.iter().enumerate() {
        for (a, c) in kostka_inverse_column(u, n)? {
            inverse[position[&a]][col] = c;
        }
    }
    let k = KostkaMatrix {
        n,
        perms,
        exponents,
        forward,
        inverse,
    };
    if !k.is_inverse_pair() {
        return Err(Error::Internal(format!(
            "signed-sum inverse fails K·K⁻¹ = 1 for n = {n}"
        )));
    }
    Ok(k)
}

impl KostkaMatrix {
    /// `K · K⁻¹ = 1` over `S_n`.
    pub fn is_inverse_pair(&self) -> bool {
        let size = self.perms.len();
        if self.exponents.len() != size {
            return false;
        }
        let sparse: Vec<Vec<(usize, &BigInt)>> = self
            .forward
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        (0..size).all(|w| {
            (0..size).all(|u| {
                let dot: BigInt = sparse[w]
                    .iter()
                    .map(|&(a, c)| c * &self.inverse[a][u])
                    .sum();
                dot == if w == u {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            })
        })
    }

    pub fn to_json(&self) -> Value {
        let rows = |m: &Vec<Vec<BigInt>>| -> Value {
            m.iter()
                .map(|r| r.iter().map(bigint_json).collect::<Vec<_>>())
                .collect()
        };
        json!({
            "n": self.n,
            "perms": self.perms,
            "exponents": self.exponents.iter().map(|a| padded(a, self.n)).collect::<Vec<_>>(),
            "forward": rows(&self.forward),
            "inverse": rows(&self.inverse),
        })
    }
}

/// A signed elementary expansion `Σ b_J e_J`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ElemExpansion(pub BTreeMap<ElemIndex, BigInt>);

impl ElemExpansion {
    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        for (j, c) in &self.0 {
            p.add_scaled(&elem_poly(j), c);
        }
        p
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .0
            .iter()
            .map(|(j, c)| json!({ "index": j, "coeff": bigint_json(c) }))
            .collect();
        json!({ "terms": terms })
    }
}

impl fmt::Display for ElemExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (k, (j, c)) in self.0.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{j}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ElemExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElemExpansion({self})")
    }
}

/// `S_v = Σ b_J e_J` with `J_k = k − a_{n−k}` for `K⁻¹_{a,w}`, `w = v w0`.
pub fn schubert_to_elem(v: &Permutation, n: usize) -> Result<ElemExpansion> {
    if v.size() > n {
        return Err(Error::NotInSymmetricGroup {
            perm: v.to_string(),
            n,
        });
    }
    let w = v.compose(&Permutation::longest(n));
    let mut out = BTreeMap::new();
    for (a, c) in kostka_inverse_column(&w, n)? {
        let j: Vec<usize> = (1..n).map(|k| k - a[n - k - 1]).collect();
        out.insert(ElemIndex::new(j)?, c);
    }
    let e = ElemExpansion(out);
    if e.to_polynomial() != *schubert_bjs(v) {
        return Err(Error::Internal(format!(
            "elementary expansion of S[{v}] does not reconstruct it"
        )));
    }
    Ok(e)
}
