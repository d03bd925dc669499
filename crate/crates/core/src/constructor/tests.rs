use super::*;
use crate::canonical::{sl_class_reps, PolyF};
use crate::gf::make_field;
use proptest::prelude::*;

fn assert_valid(w: &Witness) {
    let rep = replay(w);
    assert!(rep.passed(), "{:?} for g = {}", rep.violations, w.g);
}

#[test]
fn partner_examples() {
    let f7 = make_field(7).unwrap();
    let g = Mat::diag(&f7, &[Felt(2), Felt(3)]);
    let h = find_partner(&g, &GroupSpec::gl(2, 7)).unwrap();
    assert_eq!(h, Mat::h(&f7, Felt::ONE));
    let f5 = make_field(5).unwrap();
    let minus = Mat::scalar(&f5, 2, Felt(4));
    assert_eq!(find_partner(&minus, &GroupSpec::sl(2, 5)), Err(ConstructError::Central));
    let h = find_partner(&Mat::h(&f5, Felt::ONE), &GroupSpec::sl(2, 5)).unwrap();
    assert_eq!(h, Mat::from_rows(&f5, &[&[1, 0], &[1, 1]]).unwrap());
}

#[test]
fn sl2_examples() {
    let f = make_field(5).unwrap();
    let w = sl2_witness(&Mat::h(&f, Felt::ONE)).unwrap();
    assert_eq!(w.len(), 3);
    assert_eq!(w.target, Mat::from_rows(&f, &[&[1, 1], &[3, 4]]).unwrap());
    assert_valid(&w);

    let r = Mat::from_rows(&f, &[&[0, 4], &[1, 0]]).unwrap();
    let w = sl2_witness(&r).unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(w.target, r);

    let w = sl2_witness(&Mat::diag(&f, &[Felt(2), Felt(3)])).unwrap();
    assert_eq!(w.len(), 6);
    assert_valid(&w);

    let f3 = make_field(3).unwrap();
    assert_eq!(sl2_witness(&Mat::h(&f3, Felt::ONE)), Err(ConstructError::FieldTooSmall(3)));
    assert_eq!(sl2_witness(&Mat::scalar(&f, 2, Felt(4))), Err(ConstructError::Central));
}

#[test]
fn block_examples() {
    let f3 = make_field(3).unwrap();
    let p = PolyF::new(&f3, alloc::vec![Felt(1), Felt(2), Felt(0), Felt(1)]);
    let g = p.companion();
    let w = block_case_witness(&g, Case::M1).unwrap();
    assert_valid(&w);
    assert!(w.steps.iter().all(|s| s.case_label.starts_with("m1-reduction")));
    // the four reduction conjugates reach I₁ ⊕ h(1)
    let red: Word = Word::from_pairs(&w.steps[..4].iter().map(|s| (s.conjugator.clone(), s.exponent)).collect::<Vec<_>>(), "");
    assert_eq!(red.eval(&g), Mat::transvection(&f3, 3, 1, 2, Felt::ONE));

    let f5 = make_field(5).unwrap();
    let j = crate::canonical::block_matrix(&PolyF::linear(&f5, Felt::ONE), 3);
    let w = block_case_witness(&j, Case::Mn).unwrap();
    assert_valid(&w);
    assert!(w.len() <= 12);
    let red = Word::from_pairs(&w.steps[..2].iter().map(|s| (s.conjugator.clone(), s.exponent)).collect::<Vec<_>>(), "");
    assert_eq!(red.eval(&j), Mat::transvection(&f5, 3, 1, 2, Felt::ONE));

    // x² + 2 over GF(5); det g = 4, so the witness lives in GL
    let q2 = PolyF::new(&f5, alloc::vec![Felt(2), Felt(0), Felt(1)]);
    let g = crate::canonical::block_matrix(&q2, 2);
    let w = block_case_witness(&g, Case::M2).unwrap();
    assert_valid(&w);
    assert!(w.len() <= 48);
    assert!(w.steps.iter().all(|s| s.case_label.starts_with("m2-residue")));
    let (terms, param) = repaired_t_four(&f5).unwrap();
    let t = |y: Felt| {
        let mut m = Mat::zero(&f5, 4);
        for &(i, j, l) in &terms {
            m.set(i - 1, j - 1, f5.add(m.get(i - 1, j - 1), l));
        }
        m.set(param.0 - 1, param.1 - 1, f5.add(m.get(param.0 - 1, param.1 - 1), y));
        m
    };
    let red = Word::from_pairs(&[(t(Felt::ZERO), 1), (t(Felt(4)), -1)], "");
    let c0i = f5.inv(Felt(2)).unwrap();
    let r = Mat::new(&f5, 2, alloc::vec![Felt::ONE, Felt::ONE, c0i, f5.add(Felt::ONE, c0i)]).unwrap();
    assert_eq!(red.eval(&g), r.embed(4, &[2, 3]));

    assert!(matches!(block_case_witness(&g, Case::M1), Err(ConstructError::Shape(_))));
}

#[test]
fn construct_examples() {
    let f4 = make_field(4).unwrap();
    let g = Mat::h(&f4, Felt::ONE);
    let w = construct_involution(&g, &GroupSpec::sl(2, 4)).unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(w.target, g);

    let f5 = make_field(5).unwrap();
    let g = Mat::from_rows(&f5, &[&[2, 1, 0], &[0, 1, 3], &[1, 0, 2]]).unwrap();
    assert_ne!(g.det(), Felt::ONE);
    let w = construct_involution(&g, &GroupSpec::gl(3, 5)).unwrap();
    assert_valid(&w);
    assert_eq!(w.net_exponent, 0);

    let g = Mat::diag(&f5, &[Felt(2), Felt(2), Felt(1)]);
    let w = construct_involution(&g, &GroupSpec::gl(3, 5)).unwrap();
    assert_valid(&w);
    assert!(w.len() <= 96);

    assert_eq!(construct_involution(&Mat::scalar(&f5, 3, Felt(2)), &GroupSpec::gl(3, 5)), Err(ConstructError::Central));
    assert_eq!(construct_involution(&g, &GroupSpec::sl(3, 5)), Err(ConstructError::NotInGroup));
}

#[test]
fn brute_examples() {
    let f3 = make_field(3).unwrap();
    let w = brute_force_witness(&Mat::h(&f3, Felt::ONE), &GroupSpec::sl(2, 3), 48).unwrap();
    assert_valid(&w);
    let f2 = make_field(2).unwrap();
    for g in sl_class_reps(&f2, 3) {
        let w = brute_force_witness(&g, &GroupSpec::sl(3, 2), 48).unwrap();
        assert_valid(&w);
    }
    // an element of order 7 in SL₃(2) is not a projective involution, and
    // no conjugate of it or its inverse is one either
    let c7 = PolyF::new(&f2, alloc::vec![Felt(1), Felt(1), Felt(0), Felt(1)]).companion();
    assert_eq!(brute_force_witness(&c7, &GroupSpec::sl(3, 2), 1), Err(ConstructError::CapExceeded { cap: 1 }));
}

#[test]
fn replay_flags_tampering() {
    let f = make_field(5).unwrap();
    let w = construct_involution(&Mat::diag(&f, &[Felt(2), Felt(3)]), &GroupSpec::sl(2, 5)).unwrap();
    assert_valid(&w);

    let mut bad = w.clone();
    // 2 is not a square mod 5; scaling one conjugator by it changes the determinant
    bad.steps[0].conjugator = bad.steps[0].conjugator.scale(Felt(2));
    assert!(replay(&bad).violations.iter().any(|v| matches!(v, Violation::ConjugatorDet { step: 0, .. })));

    let mut bad = w.clone();
    bad.target = Mat::h(&f, Felt::ONE);
    assert!(replay(&bad).violations.contains(&Violation::ProductMismatch));

    let mut bad = w.clone();
    bad.net_exponent += 1;
    assert!(matches!(replay(&bad).first(), Some(Violation::NetExponent { .. })));
}

#[test]
fn repaired_four_dimensional_template() {
    // the printed t(y) has E₂₁ twice with opposite signs
    let f = make_field(5).unwrap();
    let (terms, param) = repaired_t_four(&f).unwrap();
    assert_eq!(param, (3, 4));
    let printed = [(2, 1), (3, 3), (4, 4), (1, 4), (2, 1)];
    let changed: Vec<usize> = (0..5).filter(|&k| (terms[k].0, terms[k].1) != printed[k]).collect();
    assert_eq!(changed.len(), 1);
}

#[test]
fn sweep_small_sl() {
    for (n, q) in [(2, 4), (2, 5), (2, 7), (3, 3), (3, 5)] {
        let f = make_field(q).unwrap();
        for g in sl_class_reps(&f, n) {
            let w = construct_involution(&g, &GroupSpec::sl(n, q)).unwrap_or_else(|e| panic!("SL({n},{q}) {g}: {e}"));
            assert_valid(&w);
        }
    }
}

fn sl_matrix(q: u32, n: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(0..q, n * n).prop_filter_map("det 1 and non-central", move |v| {
        let f = make_field(q).unwrap();
        let m = Mat::new(&f, n, v.into_iter().map(|x| f.elem(x).unwrap()).collect()).ok()?;
        (m.det() == Felt::ONE && !m.is_scalar()).then_some(m)
    })
}

fn gl_matrix(q: u32, n: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(0..q, n * n).prop_filter_map("invertible and non-central", move |v| {
        let f = make_field(q).unwrap();
        let m = Mat::new(&f, n, v.into_iter().map(|x| f.elem(x).unwrap()).collect()).ok()?;
        (!m.det().is_zero() && !m.is_scalar()).then_some(m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn replay_sound_sl(g in prop_oneof![sl_matrix(5, 3), sl_matrix(7, 3), sl_matrix(3, 4), sl_matrix(4, 3), sl_matrix(2, 5), sl_matrix(5, 2)]) {
        let spec = GroupSpec::sl(g.n(), g.field().q());
        let w = construct_involution(&g, &spec).unwrap();
        let rep = replay(&w);
        prop_assert!(rep.passed(), "{:?}", rep.violations);
    }

    #[test]
    fn replay_sound_gl(g in prop_oneof![gl_matrix(5, 3), gl_matrix(7, 2), gl_matrix(4, 4), gl_matrix(3, 5)]) {
        let spec = GroupSpec::gl(g.n(), g.field().q());
        let w = construct_involution(&g, &spec).unwrap();
        let rep = replay(&w);
        prop_assert!(rep.passed(), "{:?}", rep.violations);
        prop_assert!(w.steps.iter().all(|s| s.conjugator.det() == Felt::ONE));
    }

    #[test]
    fn coordinate_covariance(g in sl_matrix(5, 3), x in sl_matrix(5, 3)) {
        let spec = GroupSpec::sl(3, 5);
        let g2 = g.conjugate(&x).unwrap();
        let w1 = construct_involution(&g, &spec).unwrap();
        let w2 = construct_involution(&g2, &spec).unwrap();
        let u1 = generalized_jordan(&g).unwrap().u;
        let u2 = generalized_jordan(&g2).unwrap().u;
        prop_assert_eq!(w1.target.conjugate(&u1).unwrap(), w2.target.conjugate(&u2).unwrap());
        prop_assert_eq!(w1.len(), w2.len());
    }
}
