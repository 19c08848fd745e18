use proptest::prelude::*;

use knot_torsion::chain::{
    cell_chain, chain_of_loop, presentation_complex, ChainComplex, HomologyLift,
};
use knot_torsion::closed_form::{self, Laurent};
use knot_torsion::fox::{fox_derivative, GroupRingElement, Letter, Word};
use knot_torsion::linalg::{self, c, CMatrix, CVector, C64};
use knot_torsion::mayer_vietoris::tor_e;
use knot_torsion::presentation::cable_exterior_presentation;
use knot_torsion::representation::{adjoint_matrix, mat2, rep_build, Family, RepIndex, Vec3};
use knot_torsion::torsion::{reidemeister_torsion, sign_class_distance, BChoice, TorsionOptions};

const GENS: usize = 4;

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0..GENS, prop::bool::ANY), 0..14).prop_map(|letters| {
        Word::from_letters(
            letters
                .into_iter()
                .map(|(g, inv)| Letter::new(g, if inv { -1 } else { 1 })),
        )
    })
}

fn ring() -> impl Strategy<Value = GroupRingElement> {
    prop::collection::vec((word(), -3i64..=3), 1..4).prop_map(GroupRingElement::from_terms)
}

fn complex_number() -> impl Strategy<Value = C64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| c(re, im))
}

fn xi() -> impl Strategy<Value = C64> {
    (0.05f64..1.0, prop::bool::ANY, -1.0f64..1.0)
        .prop_map(|(re, neg, im)| c(if neg { -re } else { re }, im))
}

fn sl2() -> impl Strategy<Value = knot_torsion::representation::Mat2> {
    (complex_number(), complex_number(), complex_number()).prop_filter_map(
        "invertible corner",
        |(a, b, cc)| {
            if a.norm() < 0.2 {
                return None;
            }
            Some(mat2(a, b, cc, (c(1.0, 0.0) + b * cc) / a))
        },
    )
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(complex_number(), rows * cols)
        .prop_map(move |v| CMatrix::from_row_iterator(rows, cols, v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fox_product_rule(u in word(), v in word(), g in 0..GENS) {
        let lhs = fox_derivative(&(&u * &v), g);
        let rhs = &fox_derivative(&u, g) + &(&u * &fox_derivative(&v, g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fox_fundamental_identity(w in word()) {
        let mut lhs = GroupRingElement::zero();
        for g in 0..GENS {
            let gm1 = &GroupRingElement::from_word(Word::gen(g)) - &GroupRingElement::one();
            lhs = &lhs + &(&fox_derivative(&w, g) * &gm1);
        }
        prop_assert_eq!(lhs, &GroupRingElement::from_word(w) - &GroupRingElement::one());
    }

    #[test]
    fn word_inverse_cancels(w in word()) {
        prop_assert!((&w * &w.inverse()).is_empty());
        prop_assert_eq!(w.pow(-2), w.inverse().pow(2));
    }

    #[test]
    fn adjoint_is_anti_multiplicative(a in sl2(), b in sl2()) {
        let lhs = adjoint_matrix(&(a * b));
        let rhs = adjoint_matrix(&b) * adjoint_matrix(&a);
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + adjoint_matrix(&a).norm() * adjoint_matrix(&b).norm()));
    }

    #[test]
    fn ring_evaluation_is_anti_multiplicative(u in ring(), v in ring(), x in xi()) {
        let (p, _) = cable_exterior_presentation(1, 6).unwrap();
        let rep = rep_build(Family::AN, x, 1, 6, RepIndex::J(2)).unwrap();
        let (eu, ev) = (rep.evaluate_ring(&p, &u).unwrap(), rep.evaluate_ring(&p, &v).unwrap());
        let euv = rep.evaluate_ring(&p, &(&u * &v)).unwrap();
        prop_assert!((euv - ev * eu).norm() <= 1e-8 * (1.0 + eu.norm() * ev.norm()));
    }

    #[test]
    fn kernel_and_rank_are_consistent(m in matrix(3, 5)) {
        let r = linalg::rank(&m, 1e-9);
        let k = linalg::kernel_basis(&m, 1e-9);
        prop_assert_eq!(r + k.len(), 5);
        for v in &k {
            prop_assert!((&m * v).norm() <= 1e-9 * (1.0 + m.norm()));
        }
    }

    #[test]
    fn image_pivots_span_the_image(u in matrix(4, 2), v in matrix(2, 5)) {
        let m = &u * &v;
        let (piv, basis) = linalg::image_pivots(&m, 1e-9);
        prop_assert_eq!(piv.len(), linalg::rank(&m, 1e-9));
        let b = linalg::from_columns(&basis, 4);
        for j in 0..5 {
            let (_, res) = linalg::least_squares(&b, &m.column(j).into_owned(), 1e-9);
            prop_assert!(res <= 1e-8);
        }
    }

    #[test]
    fn basis_change_det_is_multiplicative(a in matrix(3, 3), s in complex_number()) {
        prop_assume!(linalg::rank(&a, 1e-6) == 3 && s.norm() > 0.1);
        let reference: Vec<CVector> = (0..3).map(|j| a.column(j).into_owned()).collect();
        let mut scaled = reference.clone();
        scaled[1] *= s;
        let d = linalg::basis_change_det(&reference, &scaled, 1e-9).unwrap();
        prop_assert!((d - s).norm() <= 1e-8 * s.norm().max(1.0));
    }

    #[test]
    fn acyclic_torsion_is_b_independent(a in matrix(3, 3), seed in any::<u64>()) {
        prop_assume!(linalg::rank(&a, 1e-6) == 3);
        let cx = ChainComplex::new(vec![3, 3], vec![a], vec![vec![], vec![]], 1e-9).unwrap();
        let base = reidemeister_torsion(&cx, &[], &TorsionOptions::default()).unwrap();
        let opts = TorsionOptions { b_choice: BChoice::Random(seed), ..Default::default() };
        let other = reidemeister_torsion(&cx, &[], &opts).unwrap();
        prop_assert!(sign_class_distance(other.value(), base.value()) <= 1e-8);
    }

    #[test]
    fn laurent_product_divides_back(p in prop::collection::vec(-4i64..=4, 1..6), q in prop::collection::vec(-4i64..=4, 1..5), lo in -3i64..3) {
        let p = Laurent::new(lo, p);
        let q = Laurent::new(0, q);
        prop_assume!(!q.is_zero() && !p.is_zero());
        let prod = p.mul(&q);
        prop_assert_eq!(prod.exact_div(&q), Some(p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn relator_loops_are_boundaries(x in xi(), j in 0i64..6, v in (complex_number(), complex_number(), complex_number())) {
        let (p, _) = cable_exterior_presentation(1, 6).unwrap();
        let rep = rep_build(Family::AN, x, 1, 6, RepIndex::J(j)).unwrap();
        let cx = presentation_complex(&p, &rep, 1e-9).unwrap();
        let v = Vec3::new(v.0, v.1, v.2);
        let d2 = cx.boundary(2);
        for (k, r) in p.relators.iter().enumerate() {
            let loop_chain = chain_of_loop(r, &v, &rep, &p).unwrap();
            let expected = &d2 * cell_chain(p.relators.len(), k, &v);
            prop_assert!((loop_chain - expected).norm() <= 1e-8 * (1.0 + d2.norm() * v.norm()));
        }
        prop_assert!(cx.square_zero_residual() <= 1e-9);
    }

    #[test]
    fn an_and_nn_torsion_do_not_depend_on_xi(x in xi(), y in xi()) {
        let opts = TorsionOptions::default();
        for (family, index, a, b) in [(Family::AN, RepIndex::J(3), 1, 6), (Family::NN, RepIndex::LM { l: 1, m: 0 }, 1, 9)] {
            let tx = tor_e(family, a, b, index, x, &opts).unwrap().value.value();
            let ty = tor_e(family, a, b, index, y, &opts).unwrap().value.value();
            prop_assert!(sign_class_distance(tx, ty) <= 1e-7);
        }
    }

    #[test]
    fn na_torsion_matches_closed_form(x in xi(), k in 0i64..2) {
        let g = tor_e(Family::NA, 2, 10, RepIndex::K(k), x, &TorsionOptions::default()).unwrap();
        let rhs = closed_form::exterior_torsion(Family::NA, 2, 10, RepIndex::K(k), x).unwrap().value;
        prop_assert!(sign_class_distance(g.value.value(), rhs) <= 1e-6);
    }

    #[test]
    fn lift_scaling_law(x in xi(), s in complex_number()) {
        prop_assume!(s.norm() > 0.1);
        let rep = rep_build(Family::NA, x, 1, 6, RepIndex::K(0)).unwrap();
        let data = knot_torsion::mayer_vietoris::mv_data(&rep, &TorsionOptions::default()).unwrap();
        let piece = &data.d;
        for (li, lift) in piece.lifts.iter().enumerate() {
            let mut scaled: Vec<HomologyLift> = piece.lifts.clone();
            scaled[li].chains[0] *= s;
            let t = reidemeister_torsion(&piece.complex, &scaled, &TorsionOptions::default()).unwrap();
            let factor = if lift.degree % 2 == 1 { s } else { s.inv() };
            prop_assert!(sign_class_distance(t.value(), piece.torsion.value() * factor) <= 1e-8);
        }
    }
}
