use commplex::decide::{decide_generates, DecideOptions};
use commplex::lang::act;
use commplex::{families, verify_generates, Alphabet, Language, Letter, Permutation, SimplicialComplex, Word};
use proptest::prelude::*;

fn language(n: usize, k: usize) -> impl Strategy<Value = Language> {
    prop::collection::vec(prop::collection::vec(0..k as Letter, n), 1..7)
        .prop_map(move |ws: Vec<Word>| Language::new(n, Alphabet::new(k).unwrap(), ws).unwrap())
}

fn complex(n: usize) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(0..1u32 << n, 0..4)
        .prop_map(move |sets| SimplicialComplex::from_maximal(n, &sets).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_vec(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relabelling_positions_keeps_verdict(
        (l, k, g) in (2usize..=4).prop_flat_map(|n| (language(n, 2), complex(n), permutation(n)))
    ) {
        let opts = DecideOptions::default();
        let a = decide_generates(&l, &k, &opts).unwrap();
        let b = decide_generates(&act(&g, &l).unwrap(), &k.permute(&g).unwrap(), &opts).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn adding_a_simplex_keeps_generation(
        (l, k, extra) in (2usize..=4).prop_flat_map(|n| (language(n, 2), complex(n), 0..1u32 << n))
    ) {
        let opts = DecideOptions::default();
        let bigger = k.union(&SimplicialComplex::from_maximal(l.n(), &[extra]).unwrap()).unwrap();
        if decide_generates(&l, &k, &opts).unwrap().generates() {
            prop_assert!(decide_generates(&l, &bigger, &opts).unwrap().generates());
        }
    }

    #[test]
    fn search_agrees_with_pipeline(
        (l, k) in (2usize..=3).prop_flat_map(|n| (language(n, 3), complex(n)))
    ) {
        let fast = decide_generates(&l, &k, &DecideOptions::default()).unwrap();
        let slow = decide_generates(&l, &k, &DecideOptions::search_only()).unwrap();
        prop_assert_eq!(fast.verdict, slow.verdict);
        if let Some(p) = &slow.witness {
            prop_assert!(verify_generates(p, &l, &k).unwrap());
        }
    }

    #[test]
    fn realizer_needs_every_simplex(k in complex(4), other in complex(4)) {
        prop_assume!(k.nonempty_simplices().len() <= 5);
        let l = families::realizer(&k).unwrap();
        let expected = k.nonempty_simplices().iter().all(|&s| other.contains(s));
        prop_assert_eq!(decide_generates(&l, &other, &DecideOptions::default()).unwrap().generates(), expected);
    }
}
