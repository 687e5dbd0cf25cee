mod common;

use common::*;
use dimlab::abelian::{ab_tor, smith_normal_form, FgAbelian, IntMatrix, Lattice};
use dimlab::functors::{derived_l1, koszul_derived, koszul_lsp2, l1sp2_closed, QuadTag};
use dimlab::magnus::{expand, hall_basis, witt_number, FreeWord};
use dimlab::verify::{limit_equalizer, monoadd_check, PresentationSpec, RepTag, Status};
use proptest::prelude::*;

fn orders() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![1 => Just(0i64), 6 => 1i64..=12], 1..=3)
}

fn word(rank: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((1..=rank, prop_oneof![-3i64..=-1, 1i64..=3]), 0..6)
        .prop_map(move |s| FreeWord::from_syllables(rank, &s).unwrap())
}

#[test]
fn oracles_agree_with_hand_values() {
    assert_eq!(invariants_of_cyclics(&[4, 6, 0, 1]), vec![2, 12, 0]);
    assert_eq!(l1sp2_oracle(&[2, 4, 4]), vec![2, 2, 4]);
    assert_eq!(l1sp2_oracle(&[2, 4, 0]), vec![2]);
    assert_eq!(tor_square_order(&[2, 4]), 32);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_form_is_a_unimodular_factorization(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 1..=4)) {
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(m.rows()));
        for w in s.diagonal.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
    }

    #[test]
    fn cyclic_decompositions_match_invariant_factors(o in orders()) {
        let a = FgAbelian::from_invariants(&o);
        prop_assert_eq!(invariants(&a), invariants_of_cyclics(&o));
        let mut shuffled = o.clone();
        shuffled.reverse();
        prop_assert_eq!(a, FgAbelian::from_invariants(&shuffled));
    }

    #[test]
    fn tor_is_symmetric_and_matches_gcds(o in orders(), p in orders()) {
        let (a, b) = (FgAbelian::from_invariants(&o), FgAbelian::from_invariants(&p));
        prop_assert_eq!(ab_tor(&a, &b), ab_tor(&b, &a));
        let gcds: Vec<i64> = o.iter().filter(|&&x| x > 0).flat_map(|&x| p.iter().filter(|&&y| y > 0).map(move |&y| gcd(x, y))).collect();
        prop_assert_eq!(invariants(&ab_tor(&a, &b)), invariants_of_cyclics(&gcds));
    }

    #[test]
    fn l1sp2_three_routes(o in orders()) {
        let a = FgAbelian::from_invariants(&o);
        let expected = l1sp2_oracle(&o);
        prop_assert_eq!(invariants(&derived_l1(QuadTag::Sp2, &a).unwrap().value), expected.clone());
        prop_assert_eq!(invariants(&l1sp2_closed(&a).value), expected.clone());
        prop_assert_eq!(invariants(&koszul_derived(&a).unwrap().value), expected);
    }

    #[test]
    fn koszul_sequence_is_exact(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 0..=3)) {
        let j = Lattice::from_vectors(3, rows.iter().map(|r| ints(r))).unwrap();
        let k = koszul_lsp2(3, &j).unwrap();
        prop_assert!(k.exact);
        prop_assert!(k.witnesses_generate);
        prop_assert_eq!(invariants(&k.l1), l1sp2_oracle(&invariants(&FgAbelian::from_lattice(&j))));
    }

    #[test]
    fn magnus_expansion_is_multiplicative(u in word(3), v in word(3)) {
        let n = 4;
        prop_assert_eq!(expand(&u.mul(&v).unwrap(), n), expand(&u, n).mul(&expand(&v, n)));
        prop_assert!(expand(&u.mul(&u.inv()).unwrap(), n).is_one());
    }

    #[test]
    fn commutators_start_in_degree_two(u in word(2), v in word(2)) {
        let c = expand(&u.comm(&v).unwrap(), 4).sub(&dimlab::magnus::TruncSeries::one(2, 4));
        prop_assert!(c.low_degree().is_none_or(|d| d >= 2));
    }
}

#[test]
fn hall_basis_sizes_follow_witt() {
    for rank in 1..=3 {
        let basis = hall_basis(rank, 4).unwrap();
        for k in 1..=4 {
            let count = (0..basis.len()).filter(|&i| basis.weight(i) == k).count();
            assert_eq!(count, witt_number(rank, k), "rank {rank} weight {k}");
        }
    }
    // Necklace counts computed by hand.
    assert_eq!([1, 2, 3, 4].map(|k| witt_number(2, k)), [2, 1, 2, 3]);
}

#[test]
fn limits_do_not_depend_on_the_presentation() {
    let a = PresentationSpec::from_words(2, &["x1^2", "x2^4"]).unwrap().with_gamma2();
    let b = PresentationSpec::from_words(2, &["x2^2", "x1^4"]).unwrap().with_gamma2();
    let c = PresentationSpec::from_words(3, &["x1^2", "x2^4", "x3 x1^-1 x2^-1"]).unwrap().with_gamma2();
    let values: Vec<FgAbelian> = [&a, &b, &c].iter().map(|p| limit_equalizer(RepTag::Gamma2Mod3, p).unwrap()).collect();
    assert!(values.iter().all(|v| invariants(v) == l1sp2_oracle(&[2, 4])));
}

#[test]
fn kernel_of_t_is_antidiagonal() {
    for words in [&["x1^2", "x2^2"][..], &["x1^2", "x2^4"]] {
        let p = PresentationSpec::from_words(2, words).unwrap().with_gamma2();
        let r = monoadd_check(RepTag::Gamma2Mod3, &p);
        assert_eq!(r.status, Status::Partial, "{r:?}");
        assert_eq!(r.lhs_invariants, r.rhs_invariants);
        assert_eq!(r.lhs_invariants, ints(&l1sp2_oracle(&invariants(&p.abelianization()))));
    }
}

#[test]
fn free_abelian_values_are_zero() {
    let z = FgAbelian::free(2);
    assert!(derived_l1(QuadTag::Sp2, &z).unwrap().value.is_trivial());
}
