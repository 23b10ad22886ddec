use klatlas_core::affine::{affine_bruhat_leq, affine_bruhat_leq_rank, AffinePerm};
use klatlas_core::weyl::{all_perms, bruhat_leq, bruhat_leq_rank, Parabolic, Perm};
use proptest::prelude::*;

fn inversions(w: &Perm) -> usize {
    let n = w.rank();
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).filter(|&(i, j)| w.at(i) > w.at(j)).count()
}

#[test]
fn bruhat_order_is_a_graded_partial_order() {
    for n in 2..=4 {
        let ws = all_perms(n);
        for u in &ws {
            assert_eq!(u.length(), inversions(u));
            assert_eq!(u.reduced_word().len(), u.length());
            assert_eq!(Perm::from_word(&u.reduced_word(), n).unwrap(), *u);
            assert!(bruhat_leq(u, u));
            for w in &ws {
                let le = bruhat_leq(u, w);
                assert_eq!(le, bruhat_leq_rank(u, w), "{u} <= {w}");
                if le && bruhat_leq(w, u) {
                    assert_eq!(u, w);
                }
                if le {
                    assert!(u.length() <= w.length());
                }
            }
        }
    }
    let ws = all_perms(4);
    for a in &ws {
        for b in ws.iter().filter(|b| bruhat_leq(a, b)) {
            for c in ws.iter().filter(|c| bruhat_leq(b, c)) {
                assert!(bruhat_leq(a, c));
            }
        }
    }
}

#[test]
fn coset_factorization_is_length_additive() {
    for n in 2..=4 {
        for mask in 0u32..1 << (n - 1) {
            let j: Vec<usize> = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let par = Parabolic::new(n, &j).unwrap();
            for w in all_perms(n) {
                let (min, rest) = par.coset_factor(&w);
                assert!(par.is_min_rep(&min));
                assert!(par.in_wp(&rest));
                assert_eq!(min.mul(&rest), w);
                assert_eq!(min.length() + rest.length(), w.length());
            }
        }
    }
}

fn affine_word(n: usize, max: usize) -> impl Strategy<Value = AffinePerm> {
    prop::collection::vec(0..n, 0..=max).prop_map(move |w| AffinePerm::from_word(&w, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn affine_inverse_and_length(x in affine_word(3, 10), y in affine_word(3, 6)) {
        let id = AffinePerm::identity(3);
        prop_assert_eq!(x.mul(&x.inverse()), id.clone());
        prop_assert_eq!(x.inverse().length(), x.length());
        prop_assert!(x.mul(&y).length() <= x.length() + y.length());
        prop_assert_eq!(x.reduced_word().len(), x.length());
        prop_assert_eq!(AffinePerm::from_word(&x.reduced_word(), 3).unwrap(), x.clone());
        let (l, w) = x.decompose();
        prop_assert_eq!(AffinePerm::from_translation(&l).mul(&AffinePerm::from_finite(&w)), x);
    }

    #[test]
    fn affine_bruhat_matches_rank_criterion(x in affine_word(3, 8), y in affine_word(3, 8)) {
        prop_assert_eq!(affine_bruhat_leq(&x, &y), affine_bruhat_leq_rank(&x, &y));
    }

    #[test]
    fn prefixes_of_reduced_words_lie_below(x in affine_word(4, 10), cut in 0usize..10) {
        let word = x.reduced_word();
        let k = cut.min(word.len());
        let prefix = AffinePerm::from_word(&word[..k], 4).unwrap();
        prop_assert!(affine_bruhat_leq(&prefix, &x));
        prop_assert_eq!(prefix.length(), k);
    }

    #[test]
    fn window_parse_round_trips(x in affine_word(4, 12)) {
        prop_assert_eq!(AffinePerm::parse(&x.to_string()).unwrap(), x);
    }
}
