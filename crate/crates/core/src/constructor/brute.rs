//! Shortest witnesses by breadth-first search over products of C ∪ C⁻¹.
//!
//! The set of products of exactly k elements of C ∪ C⁻¹ is a union of
//! classes, so the search runs over classes: class K is reached at level
//! k + 1 when r_K·y⁻¹ lies in a class of level k for some y ∈ C ∪ C⁻¹.

use alloc::vec::Vec;

use crate::gf::Felt;
use crate::matrix::{GroupSpec, Mat};
use crate::oracle::{build_group, GroupTable};

use super::word::Word;
use super::{ConstructError, Partial};

struct Orbits {
    class_of: Vec<u32>,
    reps: Vec<u32>,
    /// (previous element, generator) with x = s·prev·s⁻¹; the rep points to itself
    parent: Vec<(u32, u32)>,
}

fn orbits(t: &GroupTable) -> Orbits {
    let n = t.order();
    let mut class_of = alloc::vec![u32::MAX; n];
    let mut parent = alloc::vec![(u32::MAX, u32::MAX); n];
    let mut reps = Vec::new();
    for x in 0..n as u32 {
        if class_of[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        class_of[x as usize] = id;
        parent[x as usize] = (x, u32::MAX);
        let mut queue = alloc::vec![x];
        let mut head = 0;
        while head < queue.len() {
            let y = queue[head];
            head += 1;
            for &s in t.generators() {
                let z = t.conj(s, y);
                if class_of[z as usize] == u32::MAX {
                    class_of[z as usize] = id;
                    parent[z as usize] = (y, s);
                    queue.push(z);
                }
            }
        }
    }
    Orbits { class_of, reps, parent }
}

impl Orbits {
    /// w with x = w·r·w⁻¹ for the rep r of x's class.
    fn transversal(&self, t: &GroupTable, x: u32) -> u32 {
        let mut w = t.identity();
        let mut cur = x;
        loop {
            let (prev, s) = self.parent[cur as usize];
            if s == u32::MAX {
                return w;
            }
            w = t.mul(w, s);
            cur = prev;
        }
    }
}

/// Shortest word over g reaching a projective involution, of length at most `cap`.
pub(crate) fn brute_partial(g: &Mat, cap: usize, order_cap: u64) -> Result<Partial, ConstructError> {
    let f = g.field().clone();
    let n = g.n();
    if g.det() != Felt::ONE {
        return Err(ConstructError::NotInGroup);
    }
    if g.is_scalar() {
        return Err(ConstructError::Central);
    }
    let spec = GroupSpec::sl(n, f.q());
    let t = build_group(&spec, order_cap)?;
    let orb = orbits(&t);
    let gi = t.index_of_mat(g).ok_or(ConstructError::NotInGroup)?;
    let gv = t.inv(gi);
    let (cg, cgi) = (orb.class_of[gi as usize], orb.class_of[gv as usize]);
    let nclass = orb.reps.len();
    let gens: Vec<u32> = (0..t.order() as u32).filter(|&x| orb.class_of[x as usize] == cg || orb.class_of[x as usize] == cgi).collect();
    let target_class: Vec<bool> = orb.reps.iter().map(|&r| t.is_involution(r)).collect();

    // levels[k][K] = Some((y, K')) when r_K = z·y with z ∈ K' at level k−1
    let mut levels: Vec<Vec<Option<(u32, u32)>>> = alloc::vec![(0..nclass).map(|c| (c == 0).then_some((u32::MAX, u32::MAX))).collect()];
    let mut seen_sets: Vec<Vec<bool>> = alloc::vec![levels[0].iter().map(Option::is_some).collect()];
    let hit = loop {
        let k = levels.len() - 1;
        if let Some(c) = (0..nclass).find(|&c| target_class[c] && levels[k][c].is_some()) {
            break c;
        }
        if k >= cap {
            return Err(ConstructError::CapExceeded { cap });
        }
        let prev = &levels[k];
        let next: Vec<Option<(u32, u32)>> = (0..nclass)
            .map(|c| {
                let r = orb.reps[c];
                gens.iter().find_map(|&y| {
                    let z = t.mul(r, t.inv(y));
                    let kz = orb.class_of[z as usize];
                    prev[kz as usize].map(|_| (y, kz))
                })
            })
            .collect();
        let set: Vec<bool> = next.iter().map(Option::is_some).collect();
        if seen_sets.contains(&set) {
            return Err(ConstructError::Unreachable);
        }
        seen_sets.push(set);
        levels.push(next);
    };

    let tg = orb.transversal(&t, gi);
    let tgv = orb.transversal(&t, gv);
    let mat = |x: u32| t.element_mat(x).unwrap();
    // word(k, K): exactly k conjugates multiplying to r_K
    let mut word = Word::empty();
    let mut k = levels.len() - 1;
    let mut class = hit as u32;
    // r_K = w·(word for K')·w⁻¹ · y, unrolled from the top
    let mut outer = t.identity();
    let mut tail: Vec<(u32, i8)> = Vec::new();
    while k > 0 {
        let (y, kp) = levels[k][class as usize].unwrap();
        let r = orb.reps[class as usize];
        let z = t.mul(r, t.inv(y));
        let w = orb.transversal(&t, z);
        // y = c·g^e·c⁻¹
        let (e, base_w) = if orb.class_of[y as usize] == cg { (1i8, tg) } else { (-1i8, tgv) };
        let c = t.mul(orb.transversal(&t, y), t.inv(base_w));
        tail.push((t.mul(outer, c), e));
        outer = t.mul(outer, w);
        class = kp;
        k -= 1;
    }
    for (c, e) in tail.into_iter().rev() {
        word.steps.push(super::word::Step { c: mat(c), e, label: "brute-force".into() });
    }
    let target = word.eval(g);
    debug_assert!(word.len() == levels.len() - 1);
    Ok(Partial { word, target })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::oracle::{classes, dist_to_set, DEFAULT_ORDER_CAP};

    #[test]
    fn lengths_match_bfs_distance() {
        for (n, q) in [(2, 3), (2, 5), (3, 2)] {
            let spec = GroupSpec::sl(n, q);
            let t = build_group(&spec, DEFAULT_ORDER_CAP).unwrap();
            let ct = classes(&t);
            for c in 0..ct.len() as u32 {
                let r = ct.reps[c as usize];
                if t.is_central(r) {
                    continue;
                }
                let g = t.element_mat(r).unwrap();
                let d = dist_to_set(&t, &ct, c, &|x| t.is_involution(x)).unwrap();
                let p = brute_partial(&g, 48, DEFAULT_ORDER_CAP).unwrap();
                assert_eq!(p.word.len(), d, "SL({n},{q}) {g}");
                assert!(p.target.is_projective_involution());
                assert!(p.word.steps.iter().all(|s| s.c.det() == Felt::ONE));
            }
        }
    }

    #[test]
    fn order_three_in_sl2_2_is_stuck() {
        let f = make_field(2).unwrap();
        let g = Mat::from_rows(&f, &[&[0, 1], &[1, 1]]).unwrap();
        assert!(matches!(brute_partial(&g, 48, DEFAULT_ORDER_CAP), Err(ConstructError::Unreachable)));
    }
}
