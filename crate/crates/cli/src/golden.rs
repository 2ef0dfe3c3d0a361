//! Reference computations reproduced by `verify paper-examples`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde_json::{json, Value};

use schubert_core::{
    elementary, embedded_product, expand_in_schubert, kostka_matrix, max_transition, mt_tree,
    pieri, product_expand, schubert_bjs, schubert_dd, schubert_to_elem, stable_expand,
    stable_expand_with, stanley_via_mt, Permutation, Polynomial, SchubertExpansion, StableOptions,
};

pub struct Check {
    pub id: u8,
    pub title: &'static str,
    pub result: Result<String, String>,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.result.is_ok() && self.elapsed <= self.limit
    }

    fn detail(&self) -> String {
        match &self.result {
            Ok(d) if self.elapsed > self.limit => format!("{d}; too slow"),
            Ok(d) | Err(d) => d.clone(),
        }
    }
}

fn perm(s: &str) -> Permutation {
    s.parse().expect("literal permutations are valid")
}

fn perm_set(words: &[&str]) -> BTreeSet<Permutation> {
    words.iter().map(|w| perm(w)).collect()
}

fn words<'a>(ps: impl IntoIterator<Item = &'a Permutation>) -> String {
    ps.into_iter()
        .map(Permutation::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `v'` with `v = 1 × v'`.
fn unshift(v: &Permutation) -> Permutation {
    let word: Vec<usize> = v.word().iter().skip(1).map(|&x| x - 1).collect();
    Permutation::from_word(word).expect("v fixes 1")
}

fn all_ones(e: &SchubertExpansion) -> bool {
    e.iter().all(|(_, c)| *c == BigUint::from(1u8))
}

fn check_1() -> Result<String, String> {
    let e = product_expand(&[perm("3241"), perm("4312")]).map_err(|e| e.to_string())?;
    ensure(e == SchubertExpansion::single(perm("642135")), || {
        format!("got {e}")
    })?;
    Ok(e.to_string())
}

fn check_2() -> Result<String, String> {
    let e = product_expand(&[perm("3241").shifted(1), perm("4312").shifted(1)])
        .map_err(|e| e.to_string())?;
    let reference = perm_set(&[
        "1753246", "265314", "2743156", "356214", "364215", "365124", "462315", "561324",
    ]);
    let got: BTreeSet<Permutation> = e.perms().cloned().collect();
    ensure(all_ones(&e), || format!("coefficients other than 1 in {e}"))?;
    ensure(got == reference, || {
        format!("computed {}; reference {}", words(&got), words(&reference))
    })?;
    Ok(format!(
        "{} terms, computed list matches reference list including 2743156",
        got.len()
    ))
}

fn check_3() -> Result<String, String> {
    let s = stable_expand_with(
        &perm("3241"),
        &perm("4312"),
        StableOptions {
            assume_no_gap: false,
            verify: true,
        },
    )
    .map_err(|e| e.to_string())?;
    let flat = s.flattened();
    let sizes: Vec<usize> = s.trimmed_levels().iter().map(BTreeMap::len).collect();
    ensure(sizes == [1, 7, 3], || format!("level sizes {sizes:?}"))?;
    ensure(flat.0.len() == 11 && all_ones(&flat.0), || {
        format!("got {flat}")
    })?;
    ensure(s.complete() && s.verified(), || {
        "not checked up to the bound".into()
    })?;
    Ok(format!(
        "11 terms, levels 1/7/3, no new terms up to k = {}",
        s.bound_k() + 1
    ))
}

const REFERENCE_7: [&str; 7] = [
    "53124", "45123", "263145", "25413", "246135", "34512", "236415",
];

fn check_4() -> Result<String, String> {
    let (w, u) = (perm("321"), perm("2413"));
    let s = stable_expand(&w, &u).map_err(|e| e.to_string())?;
    let mt = stanley_via_mt(&w, &u).map_err(|e| e.to_string())?;
    let report = s.report();
    let flat = s.flattened();
    let mut notes = Vec::new();
    let mut ok = true;
    if report.stability_number == Some(2) {
        notes.push("stability_number 2".to_string());
    } else {
        ok = false;
        notes.push(format!("stability_number {:?}", report.stability_number));
    }
    if report.one_positions == [3, 4, 5] && report.one_positions_interval {
        notes.push("one-positions {3,4,5}".to_string());
    } else {
        ok = false;
        notes.push(format!("one-positions {:?}", report.one_positions));
    }
    if mt.expansion.trimmed_levels() == s.trimmed_levels() {
        notes.push("methods agree".to_string());
    } else {
        ok = false;
        notes.push(format!("mt gives {}", mt.expansion.flattened()));
    }
    let got: BTreeSet<Permutation> = flat.0.perms().cloned().collect();
    let reference = perm_set(&REFERENCE_7);
    if got == reference && all_ones(&flat.0) {
        notes.push("7 reference terms".to_string());
    } else {
        ok = false;
        let rw =
            |ps: &BTreeSet<Permutation>| ps.iter().map(|v| v.reduced_words().len()).sum::<usize>();
        let (a, b) = (w.length(), u.length());
        let binomial = (1..=a).fold(1, |acc, i| acc * (b + i) / i);
        let expected = w.reduced_words().len() * u.reduced_words().len() * binomial;
        notes.push(format!(
            "reduced-word count of F[321]*F[2413] is {expected}; computed terms give {}, reference terms give {}",
            rw(&got),
            rw(&reference)
        ));
        let extra: Vec<_> = got.difference(&reference).collect();
        let missing: Vec<_> = reference.difference(&got).collect();
        notes.push(format!(
            "computed {} terms vs 7 reference; extra [{}], missing [{}]",
            got.len(),
            words(extra),
            words(missing)
        ));
    }
    let detail = notes.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn check_5() -> Result<String, String> {
    let t = mt_tree(&Permutation::cross(&perm("321"), &perm("2413"), 2), 2);
    let good: BTreeSet<Permutation> = t.good_leaves().into_iter().cloned().collect();
    let bad: Vec<Permutation> = t.bad_leaves().into_iter().cloned().collect();
    ensure(good == perm_set(&["53124", "451236"]), || {
        format!("good leaves {}", words(&good))
    })?;
    ensure(
        bad.len() == 5
            && bad.iter().cloned().collect::<BTreeSet<_>>()
                == perm_set(&["324615", "42513", "34512", "52314", "35214"]),
        || format!("bad leaves {}", words(&bad)),
    )?;
    let t = mt_tree(&Permutation::cross(&perm("1432"), &perm("13524"), 3), 3);
    let good: BTreeSet<Permutation> = t.good_leaves().into_iter().cloned().collect();
    let bad: BTreeSet<Permutation> = t.bad_leaves().into_iter().cloned().collect();
    ensure(
        good == perm_set(&["164235", "156234", "263145", "25413", "246135", "34512"]),
        || format!("embedded good leaves {}", words(&good)),
    )?;
    ensure(bad == perm_set(&["243615"]), || {
        format!("embedded bad leaves {}", words(&bad))
    })?;
    Ok("2 good + 5 bad leaves; embedded tree 6 good + 1 bad".into())
}

fn check_6() -> Result<String, String> {
    for w in Permutation::all(5) {
        let dd = schubert_dd(&w, 5).map_err(|e| e.to_string())?;
        ensure(*schubert_bjs(&w) == dd, || format!("S[{w}] differs"))?;
    }
    Ok("120 polynomials agree".into())
}

fn check_7() -> Result<String, String> {
    let s3 = Permutation::all(3);
    let mut pairs = 0;
    for w in &s3 {
        for u in &s3 {
            let e = product_expand(&[w.clone(), u.clone()]).map_err(|e| e.to_string())?;
            let direct = schubert_bjs(w).multiply(&schubert_bjs(u));
            ensure(e.to_polynomial() == direct, || {
                format!("{w} * {u} does not reconstruct")
            })?;
            let k = w.length() + u.length();
            let mut prev = e;
            for n in 1..=k + 1 {
                let next = embedded_product(w, u, n).map_err(|e| e.to_string())?;
                for (v, c) in prev.iter() {
                    ensure(next.coeff(&v.shifted(1)) == *c, || {
                        format!("{w} * {u}: 1×{v} lost at n = {n}")
                    })?;
                }
                for (v, _) in next.iter() {
                    ensure(v.at(1) != 1 || prev.contains(&unshift(v)), || {
                        format!("{w} * {u}: new term {v} fixes 1 at n = {n}")
                    })?;
                }
                prev = next;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn check_8() -> Result<String, String> {
    let mut count = 0;
    for w in Permutation::all(4).into_iter().filter(|w| !w.is_identity()) {
        let t = max_transition(&w).map_err(|e| e.to_string())?;
        let mut rhs = Polynomial::var(t.r).multiply(&schubert_bjs(&t.u));
        for v in t.descendants.values() {
            rhs = &rhs + &*schubert_bjs(v);
        }
        ensure(*schubert_bjs(&w) == rhs, || format!("S[{w}]"))?;
        count += 1;
    }
    Ok(format!("{count} permutations"))
}

fn check_9() -> Result<String, String> {
    let mut count = 0;
    for w in Permutation::all(4) {
        for k in 1..=3 {
            for r in 1..=k {
                let rule = pieri(r, k, &w).map_err(|e| e.to_string())?;
                let oracle = expand_in_schubert(&elementary(r, k).multiply(&schubert_bjs(&w)))
                    .map_err(|e| e.to_string())?;
                ensure(rule == oracle, || format!("e_{r}^{k} * S[{w}]"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} products"))
}

fn check_10() -> Result<String, String> {
    for n in 3..=4 {
        let k = kostka_matrix(n).map_err(|e| e.to_string())?;
        ensure(k.is_inverse_pair(), || format!("n = {n}"))?;
    }
    Ok("n = 3, 4".into())
}

fn check_11() -> Result<String, String> {
    for w in Permutation::all(3) {
        let small = schubert_to_elem(&w, 3).map_err(|e| e.to_string())?.0;
        let big = schubert_to_elem(&w.shifted(1), 4)
            .map_err(|e| e.to_string())?
            .0;
        let restricted: BTreeMap<_, _> = big
            .into_iter()
            .filter_map(|(j, c)| j.drop_leading_zero().map(|i| (i, c)))
            .collect();
        ensure(restricted == small, || format!("w = {w}"))?;
    }
    Ok("6 permutations".into())
}

fn check_12() -> Result<String, String> {
    let w = perm("2413");
    let s = stable_expand(&w, &w).map_err(|e| e.to_string())?;
    let n = s.report().stability_number;
    ensure(n == Some(2) && w.one_position() - 1 == 2, || {
        format!("stability_number {n:?}")
    })?;
    Ok("stability_number 2 = 2413⁻¹(1) − 1".into())
}

type CheckFn = fn() -> Result<String, String>;

const CHECKS: [(u8, &str, CheckFn, u64); 12] = [
    (1, "product 3241 4312", check_1, 1),
    (2, "product 1x3241 1x4312", check_2, 5),
    (3, "stanley 3241 4312", check_3, 30),
    (4, "stanley 321 2413", check_4, 10),
    (5, "mt-tree 321 2413", check_5, 5),
    (6, "BJS vs divided differences on S_5", check_6, 60),
    (7, "transition expansion on S_3 x S_3", check_7, 60),
    (8, "maximal transition identity on S_4", check_8, 10),
    (9, "Pieri rule on S_4", check_9, 60),
    (10, "Kostka inverse for n = 3, 4", check_10, 60),
    (11, "zero-led elementary coefficients on S_3", check_11, 30),
    (12, "stanley 2413 2413", check_12, 10),
];

pub fn run_all() -> Vec<Check> {
    CHECKS
        .iter()
        .map(|&(id, title, f, secs)| {
            let start = Instant::now();
            let result = f();
            Check {
                id,
                title,
                result,
                elapsed: start.elapsed(),
                limit: Duration::from_secs(secs),
            }
        })
        .collect()
}

pub fn to_text(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        let tag = if c.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{tag} {:>2} {}: {}", c.id, c.title, c.detail());
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    let _ = writeln!(s, "{passed}/{} checks passed", checks.len());
    s
}

/// Timings are omitted so that the output is reproducible.
pub fn to_json(checks: &[Check]) -> Value {
    let items: Vec<Value> = checks
        .iter()
        .map(
            |c| json!({ "id": c.id, "title": c.title, "passed": c.passed(), "detail": c.detail() }),
        )
        .collect();
    json!({ "checks": items, "passed": checks.iter().filter(|c| c.passed()).count(), "total": checks.len() })
}
