use invwit_core::canonical::sl_class_reps;
use invwit_core::constructor::{construct_involution, replay};
use invwit_core::oracle::{build_group, class_product_count, classes, d_inv, dist_to_set, reported_classes, DEFAULT_ORDER_CAP};
use invwit_core::perm::{alt_partner, cycle_type_reps, Perm};
use invwit_core::{make_field, GroupSpec};

#[test]
fn witness_lengths_bound_bfs_distance_in_sl3_2_and_sl2_9() {
    for spec in [GroupSpec::sl(3, 2), GroupSpec::sl(2, 9), GroupSpec::sl(2, 8)] {
        let t = build_group(&spec, DEFAULT_ORDER_CAP).unwrap();
        let ct = classes(&t);
        for c in reported_classes(&t, &ct) {
            let g = t.element_mat(ct.reps[c as usize]).unwrap();
            let d = dist_to_set(&t, &ct, c, &|x| t.is_involution(x)).unwrap();
            let w = construct_involution(&g, &spec).unwrap();
            assert!(replay(&w).passed());
            assert!(w.len() >= d, "{spec} {g}: {} < {d}", w.len());
            let target = t.index_of_mat(&w.target).unwrap();
            assert!(t.is_involution(target));
        }
    }
}

#[test]
fn class_reps_match_oracle_class_count() {
    for (n, q) in [(2, 5), (2, 7), (3, 2), (3, 3)] {
        let f = make_field(q).unwrap();
        let reps = sl_class_reps(&f, n);
        let spec = GroupSpec::sl(n, q);
        let t = build_group(&spec, DEFAULT_ORDER_CAP).unwrap();
        let ct = classes(&t);
        assert_eq!(reps.len(), reported_classes(&t, &ct).len(), "{spec}");
        let mut seen: Vec<u32> = reps.iter().map(|g| ct.class_of[t.index_of_mat(g).unwrap() as usize]).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), reps.len(), "{spec}: two reps share a class");
    }
}

#[test]
fn partner_commutators_agree_with_oracle_involutions() {
    let t = build_group(&GroupSpec::alt(7), DEFAULT_ORDER_CAP).unwrap();
    for g in cycle_type_reps(7).into_iter().filter(|g| g.is_even() && !g.is_identity()) {
        let h = alt_partner(&g).unwrap();
        let x = t.index_of_perm(&g.commutator(&h)).unwrap();
        assert!(t.is_involution(x));
    }
}

#[test]
fn a5_distances_from_oracle() {
    let t = build_group(&GroupSpec::alt(5), DEFAULT_ORDER_CAP).unwrap();
    let ct = classes(&t);
    let r = d_inv(&t, &ct);
    assert_eq!(r.d_h, Some(3));
    let five = t.index_of_perm(&Perm::parse(5, "(1,2,3,4,5)").unwrap()).unwrap();
    let c = ct.class_of[five as usize];
    assert_eq!(r.per_class.iter().find(|x| x.class == c).unwrap().dist, Some(3));
}

#[test]
fn class_product_counts_sum_to_class_size_power() {
    // summed over every target, the count is |C|³
    let t = build_group(&GroupSpec::sl(2, 5), DEFAULT_ORDER_CAP).unwrap();
    let ct = classes(&t);
    let c = reported_classes(&t, &ct)[0];
    let size = ct.sizes[c as usize] as u128;
    let total: u128 = (0..t.order() as u32).map(|x| class_product_count(&t, &ct, &vec![vec![c]; 3], x)).sum();
    assert_eq!(total, size.pow(3));
}
