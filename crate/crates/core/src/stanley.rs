//! Stable expansions `F_w · F_u = Σ c^v F_v` of Stanley symmetric functions.
//!
//! The product `S_{1^n×w} · S_{1^n×u}` is expanded for `n = 0, 1, …, k` with
//! `k = ℓ(w) + ℓ(u)`. Every term at level `n − 1` reappears at level `n` with
//! one more leading fixed point and the same coefficient; the remaining terms
//! form `V_n` and never start with a fixed point.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::schubert::{fmt_terms, monk, product_expand, terms_json, SchubertExpansion};

pub type Terms = BTreeMap<Permutation, BigUint>;

/// Splits successive embedded expansions into the sets of new terms.
#[derive(Debug, Default)]
pub struct LevelTracker {
    previous: Option<SchubertExpansion>,
    levels: Vec<Terms>,
}

impl LevelTracker {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records the expansion at the next level and returns its new terms.
    ///
    /// Fails if a term of the previous level is missing, changed coefficient,
    /// or if a new term starts with a fixed point.
    pub fn push(&mut self, expansion: SchubertExpansion) -> Result<&Terms> {
        let mut fresh = expansion.clone().into_map();
        if let Some(prev) = &self.previous {
            for (t, c) in prev.iter() {
                let moved = t.shifted(1);
                match fresh.remove(&moved) {
                    Some(ref d) if d == c => {}
                    found => {
                        return Err(Error::Internal(format!(
                            "level {}: coefficient of {moved} is {} but was {c} one level down",
                            self.levels.len(),
                            found.unwrap_or_default()
                        )))
                    }
                }
            }
            if let Some(v) = fresh.keys().find(|v| v.at(1) == 1) {
                return Err(Error::Internal(format!(
                    "level {}: new term {v} starts with a fixed point",
                    self.levels.len()
                )));
            }
        }
        self.previous = Some(expansion);
        self.levels.push(fresh);
        Ok(self.levels.last().unwrap())
    }

    pub fn levels(&self) -> &[Terms] {
        &self.levels
    }

    pub fn into_levels(self) -> Vec<Terms> {
        self.levels
    }
}

/// Options for [`stable_expand_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct StableOptions {
    /// Stop at the first empty level instead of running to the bound.
    pub assume_no_gap: bool,
    /// Recompute level `k + 1` and require it to add nothing.
    pub verify: bool,
}

/// The level decomposition `V_0, V_1, …` of a stable expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableExpansion {
    factors: (Permutation, Permutation),
    levels: Vec<Terms>,
    bound_k: usize,
    verified: bool,
}

impl StableExpansion {
    pub(crate) fn from_levels(
        w: &Permutation,
        u: &Permutation,
        levels: Vec<Terms>,
        verified: bool,
    ) -> Self {
        Self {
            factors: (w.clone(), u.clone()),
            bound_k: w.length() + u.length(),
            levels,
            verified,
        }
    }

    pub fn factors(&self) -> (&Permutation, &Permutation) {
        (&self.factors.0, &self.factors.1)
    }

    /// `V_0, V_1, …` as computed; trailing levels may be empty.
    pub fn levels(&self) -> &[Terms] {
        &self.levels
    }

    /// Levels up to the last nonempty one.
    pub fn trimmed_levels(&self) -> &[Terms] {
        let end = self
            .levels
            .iter()
            .rposition(|l| !l.is_empty())
            .map_or(0, |i| i + 1);
        &self.levels[..end]
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(BTreeMap::len).collect()
    }

    /// `ℓ(w) + ℓ(u)`.
    pub fn bound_k(&self) -> usize {
        self.bound_k
    }

    /// Whether level `k + 1` was recomputed and found to add nothing.
    pub fn verified(&self) -> bool {
        self.verified
    }

    /// Whether every level up to the bound was computed.
    pub fn complete(&self) -> bool {
        self.levels.len() > self.bound_k
    }

    /// `Σ c^v F_v`, indexed by permutations with leading fixed points removed.
    pub fn flattened(&self) -> StanleyExpansion {
        let mut out = SchubertExpansion::new();
        for level in &self.levels {
            for (v, c) in level {
                out.add(v.strip_leading_fixed().1, c.clone());
            }
        }
        StanleyExpansion(out)
    }

    pub fn report(&self) -> StabilityReport {
        stability_report(self)
    }

    /// `{"levels": [{"n": 0, "terms": […]}, …], "stability_number": …, …}`.
    pub fn to_json(&self) -> Value {
        let report = self.report();
        let levels: Vec<Value> = self
            .levels
            .iter()
            .enumerate()
            .map(|(n, terms)| json!({ "n": n, "terms": terms_json(terms) }))
            .collect();
        json!({
            "levels": levels,
            "stability_number": report.stability_number,
            "conjecture_holds": report.conjecture_holds,
            "one_positions": report.one_positions,
        })
    }
}

/// A Stanley-basis expansion `Σ c^v F_v`; printed with `F[…]`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct StanleyExpansion(pub SchubertExpansion);

impl fmt::Display for StanleyExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, "F", &self.0.clone().into_map())
    }
}

impl fmt::Debug for StanleyExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StanleyExpansion({self})")
    }
}

/// The expansion of `S_{1^n×w} · S_{1^n×u}`.
pub fn embedded_product(w: &Permutation, u: &Permutation, n: usize) -> Result<SchubertExpansion> {
    product_expand(&[w.shifted(n), u.shifted(n)])
}

pub fn stable_expand(w: &Permutation, u: &Permutation) -> Result<StableExpansion> {
    stable_expand_with(w, u, StableOptions::default())
}

pub fn stable_expand_with(
    w: &Permutation,
    u: &Permutation,
    opts: StableOptions,
) -> Result<StableExpansion> {
    let k = w.length() + u.length();
    let mut tracker = LevelTracker::new();
    for n in 0..=k {
        let fresh = tracker.push(embedded_product(w, u, n)?)?;
        if opts.assume_no_gap && n > 0 && fresh.is_empty() {
            break;
        }
    }
    let mut verified = false;
    if opts.verify && tracker.levels().len() == k + 1 {
        if !tracker.push(embedded_product(w, u, k + 1)?)?.is_empty() {
            return Err(Error::Internal(format!(
                "{w} * {u}: new terms appeared past the bound k = {k}"
            )));
        }
        verified = true;
    }
    let mut levels = tracker.into_levels();
    levels.truncate(k + 1);
    Ok(StableExpansion::from_levels(w, u, levels, verified))
}

/// Closed form of `F_w · F_{s_m}`: the Monk terms at level 0, plus
/// `(1×w) t_{1,p+1}` at level 1 for every position `p > m` holding a
/// left-to-right minimum of `w`.
///
/// When `s = w⁻¹(1) > m` the level-1 terms include `(1×w) t_{1,s+1}`; the
/// other left-to-right minima between `m` and `s` contribute as well.
pub fn monk_stable(w: &Permutation, m: usize) -> StableExpansion {
    let mut levels = vec![monk(w, m).into_map(), Terms::new()];
    let lifted = w.shifted(1);
    let mut min = usize::MAX;
    for p in 1..=w.size() {
        if w.at(p) < min {
            min = w.at(p);
            if p > m {
                levels[1].insert(lifted.swap_positions(1, p + 1), BigUint::one());
            }
        }
    }
    StableExpansion::from_levels(w, &Permutation::simple(m), levels, false)
}

/// Stability diagnostics for a computed [`StableExpansion`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    /// The last level with new terms before the first empty level.
    pub stability_number: Option<usize>,
    /// No level after the first empty one adds terms.
    pub conjecture_holds: bool,
    /// The Grassmannian bound, checked only when a factor is Grassmannian.
    pub grassmannian_bound_ok: Option<bool>,
    /// `stability_number ≤ max(ℓ(c(w)), ℓ(c(u)))`, for any pair.
    pub code_bound_holds: Option<bool>,
    pub one_positions: Vec<usize>,
    pub one_positions_interval: bool,
}

pub fn stability_report(e: &StableExpansion) -> StabilityReport {
    let (w, u) = e.factors();
    let first_empty = e
        .levels
        .iter()
        .skip(1)
        .position(BTreeMap::is_empty)
        .map(|i| i + 1);
    let stability_number = match first_empty {
        Some(i) => Some(i - 1),
        None if e.verified => Some(e.bound_k),
        None => None,
    };
    let conjecture_holds = first_empty.is_none_or(|i| e.levels[i..].iter().all(BTreeMap::is_empty));
    let max_code = w.code().support_len().max(u.code().support_len());
    let code_bound_holds = stability_number.map(|s| s <= max_code);
    let grassmannian_bound_ok = if w.is_grassmannian() || u.is_grassmannian() {
        stability_number.map(|s| {
            let square = w == u && w.is_grassmannian() && !w.is_identity() && w.at(1) != 1;
            s <= max_code && (!square || s + 1 == w.one_position())
        })
    } else {
        None
    };
    let one_positions: BTreeSet<usize> = e
        .flattened()
        .0
        .perms()
        .map(Permutation::one_position)
        .collect();
    let one_positions_interval = match (one_positions.first(), one_positions.last()) {
        (Some(a), Some(b)) => b - a + 1 == one_positions.len(),
        _ => true,
    };
    StabilityReport {
        stability_number,
        conjecture_holds,
        grassmannian_bound_ok,
        code_bound_holds,
        one_positions: one_positions.into_iter().collect(),
        one_positions_interval,
    }
}
