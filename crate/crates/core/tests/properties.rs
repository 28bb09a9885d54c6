use proptest::prelude::*;

use schubice::exactpoly::{rat, LaurentPoly, Monomial, RenderFormat, Variable};
use schubice::permutation::{Code, Permutation};
use schubice::schubert::{
    divided_difference, divided_difference_perm, divided_difference_word, newton_expand,
    SchubertCache,
};
use schubice::staircase::{all_columns, enumerate_predecessors, interleaves, Column};

fn variable() -> impl Strategy<Value = Variable> {
    prop_oneof![
        (1..=4u32).prop_map(Variable::x),
        (1..=3u32).prop_map(Variable::y),
        (1..=2u32).prop_map(Variable::z),
    ]
}

fn laurent(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    let term = (
        prop::collection::vec((variable(), -2i32..=3), 0..4),
        -6i64..=6,
        1i64..=3,
    );
    prop::collection::vec(term, 0..max_terms).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (pairs, num, den) in terms {
            p.add_term(Monomial::from_pairs(pairs), rat(num) / rat(den));
        }
        p
    })
}

/// Polynomials in x1..x4 and y1..y2 with nonnegative exponents.
fn polynomial() -> impl Strategy<Value = LaurentPoly> {
    let var = prop_oneof![
        (1..=4u32).prop_map(Variable::x),
        (1..=2u32).prop_map(Variable::y),
    ];
    let term = (prop::collection::vec((var, 0i32..=3), 0..4), -5i64..=5);
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (pairs, c) in terms {
            p.add_term(Monomial::from_pairs(pairs), rat(c));
        }
        p
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(a in laurent(5), b in laurent(5), c in laurent(5)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn render_parse_round_trip(a in laurent(6)) {
        let text = a.render(RenderFormat::Text);
        prop_assert_eq!(LaurentPoly::parse(&text).unwrap(), a);
    }

    #[test]
    fn serde_round_trip(a in laurent(6)) {
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&json).unwrap(), a);
    }

    #[test]
    fn swap_is_an_involution(a in laurent(6), i in 1..=3u32) {
        prop_assert_eq!(a.swap_x(i).swap_x(i), a);
    }

    #[test]
    fn divided_difference_squares_to_zero(f in polynomial(), i in 1..=3u32) {
        prop_assert!(divided_difference(&divided_difference(&f, i), i).is_zero());
    }

    #[test]
    fn braid_relation(f in polynomial(), i in 1..=2u32) {
        prop_assert_eq!(
            divided_difference_word(&f, &[i, i + 1, i]),
            divided_difference_word(&f, &[i + 1, i, i + 1])
        );
    }

    #[test]
    fn leibniz_rule(f in polynomial(), g in polynomial(), i in 1..=3u32) {
        let lhs = divided_difference(&(&f * &g), i);
        let rhs = &(&divided_difference(&f, i) * &g) + &(&f.swap_x(i) * &divided_difference(&g, i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divided_difference_of_symmetric_is_zero(f in polynomial(), i in 1..=3u32) {
        let sym = &f + &f.swap_x(i);
        prop_assert!(divided_difference(&(&sym * &sym), i).is_zero());
    }

    #[test]
    fn any_reduced_word_gives_the_same_operator(sigma in permutation(4), f in polynomial()) {
        // rebuild σ from a different reduced word: peel off right descents
        let mut word = Vec::new();
        let mut s = sigma.clone();
        while let Some(&d) = s.descents().last() {
            word.push(d as u32);
            s = s.times_simple(d as u32);
        }
        word.reverse();
        prop_assert_eq!(Permutation::from_word(&word), sigma.clone());
        prop_assert_eq!(divided_difference_word(&f, &word), divided_difference_perm(&f, &sigma));
    }

    #[test]
    fn code_round_trip(sigma in permutation(6)) {
        let code = sigma.code();
        prop_assert_eq!(code.sum(), sigma.length());
        prop_assert_eq!(Permutation::from_code(&code).unwrap(), sigma);
    }

    #[test]
    fn codes_are_realized(entries in prop::collection::vec(0u32..4, 0..5)) {
        let code = Code::new(entries);
        let sigma = Permutation::from_code(&code).unwrap();
        prop_assert_eq!(sigma.code(), code);
    }

    #[test]
    fn inverse_and_composition(a in permutation(5), b in permutation(5)) {
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.compose(&b).length() % 2, (a.length() + b.length()) % 2);
    }

    #[test]
    fn newton_round_trip(f in polynomial()) {
        let f = f.map_vars(|v| if v.family() == schubice::exactpoly::Family::X && v.index() > 3 {
            Variable::x(3)
        } else {
            v
        });
        let expansion = newton_expand(&f, 3).unwrap();
        let mut cache = SchubertCache::new();
        let back: LaurentPoly = expansion.iter().map(|(s, c)| c * &cache.get(s)).sum();
        prop_assert_eq!(back, f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn predecessors_interleave(n in 1..=7u32, pick in any::<prop::sample::Index>()) {
        let columns: Vec<Column> = all_columns(n).into_iter().filter(|c| c.len() < n as usize).collect();
        let u = &columns[pick.index(columns.len())];
        for v in enumerate_predecessors(u, n).unwrap() {
            prop_assert_eq!(v.len(), u.len() + 1);
            prop_assert!(interleaves(&v, u).unwrap());
        }
    }
}
