//! Property-based invariants over randomized inputs.

use kn_crystal::cartan::{
    bruhat_leq, reflect_weight, weyl_orbit_with_words, CartanType, Weight, WeylElement,
};
use kn_crystal::graph::{explore, tensor_apply, CrystalGraph, CrystalVertex, TensorElement};
use kn_crystal::sjdt::insert_word_c;
use kn_crystal::tableau::{
    apply, highest_weight_tableau, split_tableau, tableau_from_json, tableau_to_json, unsplit,
    CrystalOp, KNTableau, SpinShape,
};
use proptest::prelude::*;
use std::sync::OnceLock;

fn flagship() -> &'static CrystalGraph {
    static G: OnceLock<CrystalGraph> = OnceLock::new();
    G.get_or_init(|| {
        let hw =
            highest_weight_tableau(CartanType::b(2), &SpinShape::new(true, vec![1])).unwrap();
        explore(&CrystalVertex::Tableau(hw)).unwrap()
    })
}

fn c3_crystal() -> &'static CrystalGraph {
    static G: OnceLock<CrystalGraph> = OnceLock::new();
    G.get_or_init(|| {
        let hw =
            highest_weight_tableau(CartanType::c(3), &SpinShape::new(false, vec![2, 1])).unwrap();
        explore(&CrystalVertex::Tableau(hw)).unwrap()
    })
}

fn arb_weight(rank: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-6i64..=6, rank).prop_map(Weight::from_doubled)
}

fn arb_word(rank: usize, len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..=rank, 0..len)
}

proptest! {
    /// Simple reflections are involutive on any weight.
    #[test]
    fn reflect_is_involutive(doubled in arb_weight(3), i in 1usize..=3) {
        for t in [CartanType::b(3), CartanType::c(3)] {
            // Force the parity the type demands.
            let w = if t.family == kn_crystal::Family::C {
                Weight::from_doubled(doubled.doubled().iter().map(|d| d & !1).collect())
            } else {
                doubled.clone()
            };
            if w.check_parity(t).is_ok() {
                let r = reflect_weight(t, i, &w).unwrap();
                prop_assert_eq!(reflect_weight(t, i, &r).unwrap(), w);
            }
        }
    }

    /// Bruhat order is a partial order compatible with length, with the
    /// identity as bottom element.
    #[test]
    fn bruhat_is_a_partial_order(wu in arb_word(3, 7), wv in arb_word(3, 7)) {
        let u = WeylElement::from_word(3, &wu);
        let v = WeylElement::from_word(3, &wv);
        let e = WeylElement::identity(3);
        prop_assert!(bruhat_leq(&e, &v).unwrap());
        prop_assert!(bruhat_leq(&u, &u).unwrap());
        if bruhat_leq(&u, &v).unwrap() {
            prop_assert!(u.length() <= v.length() || u == v);
            if bruhat_leq(&v, &u).unwrap() {
                prop_assert_eq!(u, v);
            }
        }
    }

    /// Orbit size times stabilizer order equals the Weyl group order.
    #[test]
    fn orbit_stabilizer(parts in prop::collection::vec(0i64..=3, 2)) {
        let mut sorted = parts.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let lambda = Weight::from_ints(&sorted);
        let t = CartanType::c(2);
        let orbit = weyl_orbit_with_words(t, &lambda).unwrap();
        let stab = kn_crystal::cartan::all_weyl_elements(t)
            .into_iter()
            .filter(|g| g.act(&lambda) == lambda)
            .count();
        prop_assert_eq!(orbit.len() as u128 * stab as u128, t.weyl_order());
    }

    /// e undoes f and f undoes e at every vertex of the flagship crystal.
    #[test]
    fn crystal_operators_invert(v in 0usize..16, i in 1usize..=2) {
        let g = flagship();
        let t = g.vertex(v).as_tableau().unwrap();
        if let Some(ft) = apply(CrystalOp::F, i, t).unwrap() {
            let back = apply(CrystalOp::E, i, &ft).unwrap();
            prop_assert_eq!(back.as_ref(), Some(t));
        }
        if let Some(et) = apply(CrystalOp::E, i, t).unwrap() {
            let back = apply(CrystalOp::F, i, &et).unwrap();
            prop_assert_eq!(back.as_ref(), Some(t));
        }
    }

    /// Splitting doubles the weight and unsplitting inverts it.
    #[test]
    fn split_roundtrip(v in 0usize..16) {
        let g = flagship();
        let t = g.vertex(v).as_tableau().unwrap();
        let s = split_tableau(t).unwrap();
        prop_assert_eq!(s.weight(), t.weight().scale(2));
        prop_assert_eq!(&unsplit(&s, true).unwrap(), t);
    }

    /// JSON serialization round-trips on arbitrary crystal vertices.
    #[test]
    fn json_roundtrip(v in 0usize..16, w in 0usize..64) {
        let t = flagship().vertex(v).as_tableau().unwrap();
        prop_assert_eq!(&tableau_from_json(&tableau_to_json(t)).unwrap(), t);
        let c3 = c3_crystal();
        let u = c3.vertex(w % c3.len()).as_tableau().unwrap();
        prop_assert_eq!(&tableau_from_json(&tableau_to_json(u)).unwrap(), u);
    }

    /// Inserting a reading word recovers the tableau (C_3 component).
    #[test]
    fn insertion_recovers_vertices(w in 0usize..64) {
        let c3 = c3_crystal();
        let t = c3.vertex(w % c3.len()).as_tableau().unwrap();
        prop_assert_eq!(&insert_word_c(3, &t.reading_word()).unwrap(), t);
    }

    /// Operating on a tableau equals operating on its reading word viewed
    /// as a tensor of letters (type C, where every letter is a factor).
    #[test]
    fn word_tensor_matches_tableau_action(w in 0usize..64, i in 1usize..=3) {
        let c3 = c3_crystal();
        let t = c3.vertex(w % c3.len()).as_tableau().unwrap();
        let letters: Vec<CrystalVertex> = t
            .reading_word()
            .into_iter()
            .map(|e| {
                CrystalVertex::Tableau(KNTableau::new(
                    CartanType::c(3),
                    None,
                    vec![kn_crystal::tableau::Column::new(vec![e])],
                ))
            })
            .collect();
        let te = TensorElement::new(letters);
        let word_result = tensor_apply(CrystalOp::F, i, &te).unwrap();
        let tab_result = apply(CrystalOp::F, i, t).unwrap();
        match (word_result, tab_result) {
            (None, None) => {}
            (Some(wr), Some(tr)) => {
                let expect: Vec<i32> = tr.reading_word();
                let got: Vec<i32> = wr
                    .factors
                    .iter()
                    .map(|f| f.as_tableau().unwrap().columns[0].cells[0])
                    .collect();
                prop_assert_eq!(got, expect);
            }
            (l, r) => prop_assert!(false, "one side annihilated: {:?} vs {:?}", l, r),
        }
    }
}
