use std::collections::BTreeMap;

use proptest::prelude::*;
use schubert_core::{
    elem_poly, elem_to_schubert, grassmannian_product, pieri, product_expand, schubert_bjs,
    schubert_to_elem, stable_expand, stable_expand_with, stanley_via_mt, ElemIndex, Permutation,
    Polynomial, StableOptions,
};

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|w| Permutation::from_word(w).unwrap())
}

fn arb_grassmannian(n: usize) -> impl Strategy<Value = Permutation> {
    arb_perm(n).prop_filter("at most one descent", Permutation::is_grassmannian)
}

fn arb_index(n: usize) -> impl Strategy<Value = ElemIndex> {
    (1..=n)
        .map(|k| 0..=k)
        .collect::<Vec<_>>()
        .prop_map(|v| ElemIndex::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn code_round_trip(w in arb_perm(8)) {
        prop_assert_eq!(Permutation::from_code(&w.code()), w.clone());
        prop_assert_eq!(w.code().sum(), w.length());
    }

    #[test]
    fn cross_adds_lengths(w in arb_perm(5), u in arb_perm(5), pad in 0usize..7) {
        prop_assert_eq!(Permutation::cross(&w, &u, pad).length(), w.length() + u.length());
    }

    #[test]
    fn product_reconstructs(w in arb_perm(4), u in arb_perm(4)) {
        let e = product_expand(&[w.clone(), u.clone()]).unwrap();
        prop_assert_eq!(e.to_polynomial(), schubert_bjs(&w).multiply(&schubert_bjs(&u)));
        prop_assert_eq!(e.degree(), Some(w.length() + u.length()));
    }

    #[test]
    fn leading_monomial_is_the_code(w in arb_perm(6)) {
        let s = schubert_bjs(&w);
        let (lead, c) = s.leading_term().unwrap();
        prop_assert_eq!(lead.to_code(), w.code());
        prop_assert_eq!(c.clone(), 1.into());
    }

    #[test]
    fn grassmannian_product_matches(w in arb_grassmannian(4), u in arb_grassmannian(4)) {
        match grassmannian_product(&w, &u) {
            Ok(e) => prop_assert_eq!(e, product_expand(&[w, u]).unwrap()),
            Err(e) => prop_assert!(matches!(e, schubert_core::Error::Unsupported(_)), "{e}"),
        }
    }

    #[test]
    fn pieri_matches_product(w in arb_perm(5), k in 1usize..5, r in 1usize..5) {
        prop_assume!(r <= k);
        let e = pieri(r, k, &w).unwrap();
        let oracle = elem_poly(&ElemIndex::new([vec![0; k - 1], vec![r]].concat()).unwrap());
        let rhs = oracle.multiply(&schubert_bjs(&w));
        prop_assert_eq!(e.to_polynomial(), rhs);
    }

    #[test]
    fn elementary_to_schubert_reconstructs(i in arb_index(4)) {
        prop_assert_eq!(elem_to_schubert(&i).unwrap().to_polynomial(), elem_poly(&i));
    }

    #[test]
    fn schubert_to_elem_reconstructs(v in arb_perm(5)) {
        let e = schubert_to_elem(&v, 5).unwrap();
        prop_assert_eq!(e.to_polynomial(), (*schubert_bjs(&v)).clone());
    }
}

#[test]
fn code_round_trip_on_s5() {
    for w in Permutation::all(5) {
        assert_eq!(Permutation::from_code(&w.code()), w);
        let counts = w.diagram().row_counts();
        let code: Vec<usize> = w.code().entries().to_vec();
        assert_eq!(counts[..code.len()], code[..]);
    }
}

/// Checks the level structure directly against the embedded products.
#[test]
fn stable_levels_on_s3() {
    for w in Permutation::all(3) {
        for u in Permutation::all(3) {
            let opts = StableOptions {
                assume_no_gap: false,
                verify: true,
            };
            let s = stable_expand_with(&w, &u, opts).unwrap();
            let k = s.bound_k();
            let r = s.report();
            assert!(r.conjecture_holds, "{w} * {u}");
            assert_eq!(
                s.levels()[0],
                product_expand(&[w.clone(), u.clone()])
                    .unwrap()
                    .iter()
                    .map(|(v, c)| (v.clone(), c.clone()))
                    .collect::<BTreeMap<_, _>>()
            );
            for (i, level) in s.levels().iter().enumerate().skip(1) {
                assert!(level.keys().all(|v| v.at(1) != 1), "{w} * {u}: level {i}");
            }
            for n in 0..=k + 2 {
                let e = product_expand(&[w.shifted(n), u.shifted(n)]).unwrap();
                let mut expected = BTreeMap::new();
                for (i, level) in s.levels().iter().enumerate().take(n + 1) {
                    for (v, c) in level {
                        expected.insert(v.shifted(n - i), c.clone());
                    }
                }
                let got: BTreeMap<_, _> = e.iter().map(|(v, c)| (v.clone(), c.clone())).collect();
                assert_eq!(got, expected, "{w} * {u} at n = {n}");
                for v in got.keys() {
                    let leading = v.code().entries().iter().take_while(|&&c| c == 0).count();
                    assert!(
                        leading + k >= n || v.is_identity(),
                        "{w} * {u}: {v} at n = {n}"
                    );
                }
            }
        }
    }
}

#[test]
fn no_gap_on_grassmannian_s4_pairs() {
    let grass: Vec<Permutation> = Permutation::all(4)
        .into_iter()
        .filter(|w| w.is_grassmannian() && w.length() <= 3)
        .collect();
    for w in &grass {
        for u in &grass {
            let full = stable_expand(w, u).unwrap();
            assert!(full.report().conjecture_holds, "{w} * {u}");
            let quick = stable_expand_with(
                w,
                u,
                StableOptions {
                    assume_no_gap: true,
                    verify: false,
                },
            )
            .unwrap();
            assert_eq!(quick.flattened(), full.flattened(), "{w} * {u}");
        }
    }
}

#[test]
fn tree_method_matches_transitions() {
    let grass: Vec<Permutation> = Permutation::all(4)
        .into_iter()
        .filter(|w| w.is_grassmannian() && w.length() <= 3)
        .collect();
    for w in Permutation::all(3) {
        for u in &grass {
            let mt = stanley_via_mt(&w, u).unwrap();
            let (a, b) = mt.expansion.factors();
            let direct = stable_expand(a, b).unwrap();
            assert_eq!(mt.expansion.flattened(), direct.flattened(), "{w} * {u}");
            if mt.padding == (0, 0) {
                assert_eq!(
                    mt.expansion.trimmed_levels(),
                    direct.trimmed_levels(),
                    "{w} * {u}"
                );
            }
        }
    }
}

#[test]
fn elementary_expansions_are_nonnegative() {
    fn indices(k: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<ElemIndex>) {
        if k > n {
            out.push(ElemIndex::new(cur.clone()).unwrap());
            return;
        }
        for i in 0..=k.min(left) {
            cur.push(i);
            indices(k + 1, n, left - i, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    indices(1, 5, 5, &mut Vec::new(), &mut all);
    for i in all {
        let e = elem_to_schubert(&i).unwrap();
        let p: Polynomial = e.to_polynomial();
        assert_eq!(p, elem_poly(&i), "{i}");
    }
}
