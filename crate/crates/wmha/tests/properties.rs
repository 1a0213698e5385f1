//! Randomized structural invariants: the algebraic laws are stated on
//! basis elements elsewhere; here random ℚ(i)-linear combinations go
//! through the same identities, exercising bilinearity and exact
//! arithmetic (no tolerance anywhere).

use std::sync::OnceLock;

use proptest::prelude::*;

use wmha::cg::{build_cg, Cg};
use wmha::finvec::Elem;
use wmha::groupoid::{cyclic_group_table, one_object_group, pair_groupoid};
use wmha::integrals::{enumerate_left_integrals, is_left_invariant};
use wmha::kg::{build_kg, Kg};
use wmha::scalar::Scalar;
use wmha::wmha::{tensor_product, Functional, Wmha};

fn kg_pair2() -> &'static Kg {
    static INSTANCE: OnceLock<Kg> = OnceLock::new();
    INSTANCE.get_or_init(|| build_kg(pair_groupoid(2)).unwrap())
}

fn cg_z3() -> &'static Cg {
    static INSTANCE: OnceLock<Cg> = OnceLock::new();
    INSTANCE
        .get_or_init(|| build_cg(one_object_group(&cyclic_group_table(3)).unwrap()).unwrap())
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    // re = p/q, im = r/s with small exact numerators/denominators.
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(p, q, r, s)| {
        Scalar::from_ratio(p, q) + &(&Scalar::from_ratio(r, s) * &Scalar::i())
    })
}

fn elem_strategy(w: &'static dyn Wmha) -> impl Strategy<Value = Elem> {
    let basis = w.basis();
    proptest::collection::vec(scalar_strategy(), basis.len()).prop_map(move |coeffs| {
        Elem::from_terms(basis.iter().cloned().zip(coeffs))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn scalar_display_roundtrips(c in scalar_strategy()) {
        let parsed: Scalar = c.to_string().parse().unwrap();
        prop_assert_eq!(parsed, c);
    }

    #[test]
    fn scalar_field_laws(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(a.clone() + &b) * &c, (&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn product_is_associative_on_random_elements(
        a in elem_strategy(kg_pair2()),
        b in elem_strategy(kg_pair2()),
        c in elem_strategy(kg_pair2()),
    ) {
        let w = kg_pair2();
        prop_assert_eq!(
            w.product(&w.product(&a, &b), &c),
            w.product(&a, &w.product(&b, &c))
        );
    }

    #[test]
    fn antipode_is_anti_multiplicative_on_random_elements(
        a in elem_strategy(cg_z3()),
        b in elem_strategy(cg_z3()),
    ) {
        let w = cg_z3();
        prop_assert_eq!(
            w.antipode(&w.product(&a, &b)),
            w.product(&w.antipode(&b), &w.antipode(&a))
        );
    }

    #[test]
    fn coproduct_is_multiplicative_on_random_elements(
        a in elem_strategy(kg_pair2()),
        b in elem_strategy(kg_pair2()),
    ) {
        let w = kg_pair2();
        prop_assert_eq!(
            w.cop_full(&w.product(&a, &b)),
            tensor_product(w, &w.cop_full(&a), &w.cop_full(&b))
        );
    }

    #[test]
    fn counit_law_holds_on_random_elements(
        a in elem_strategy(cg_z3()),
        b in elem_strategy(cg_z3()),
    ) {
        let w = cg_z3();
        // (ε⊗ι)(Δ(a)(1⊗b)) = ab, evaluated through the covered slice.
        let t = w.cop_right(&a, &b);
        let sliced = wmha::finvec::slice_leg1(&t, |k| w.counit(&Elem::basis(k.clone())));
        prop_assert_eq!(sliced, w.product(&a, &b));
    }

    #[test]
    fn integral_space_is_closed_under_linear_combinations(
        c1 in scalar_strategy(),
        c2 in scalar_strategy(),
    ) {
        let w = kg_pair2();
        let lefts = enumerate_left_integrals(w);
        prop_assert!(lefts.len() >= 2);
        let combo = Functional(lefts[0].0.scale(&c1).add(&lefts[1].0.scale(&c2)));
        if !combo.is_zero() {
            prop_assert!(is_left_invariant(w, &combo));
        }
    }

    #[test]
    fn span_membership_is_exact(coeffs in proptest::collection::vec(scalar_strategy(), 2)) {
        let w = kg_pair2();
        let basis = w.basis();
        let set = vec![Elem::basis(basis[0].clone()), Elem::basis(basis[1].clone())];
        let v = set[0].scale(&coeffs[0]).add(&set[1].scale(&coeffs[1]));
        prop_assert!(wmha::solve::fin_in_span(&v, &set));
        // And something outside the span stays outside.
        let outside = v.add(&Elem::basis(basis[2].clone()));
        prop_assert!(!wmha::solve::fin_in_span(&outside, &set));
    }
}
