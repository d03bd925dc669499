use alloc::vec::Vec;

use super::GroupTable;

#[derive(Clone, Debug)]
pub struct ClassTable {
    pub class_of: Vec<u32>,
    pub reps: Vec<u32>,
    pub sizes: Vec<usize>,
    members: Vec<Vec<u32>>,
}

impl ClassTable {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn members(&self, c: u32) -> &[u32] {
        &self.members[c as usize]
    }

    /// The class of x⁻¹.
    pub fn inverse_class(&self, g: &GroupTable, c: u32) -> u32 {
        self.class_of[g.inv(self.reps[c as usize]) as usize]
    }
}

/// Classes as orbits under conjugation by the generators. Class 0 is the
/// identity; the others follow their smallest element index.
pub fn classes(g: &GroupTable) -> ClassTable {
    let n = g.order();
    let mut class_of = alloc::vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut members = Vec::new();
    for x in 0..n as u32 {
        if class_of[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        class_of[x as usize] = id;
        let mut orbit = alloc::vec![x];
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            for &s in g.generators() {
                let z = g.conj(s, y);
                if class_of[z as usize] == u32::MAX {
                    class_of[z as usize] = id;
                    orbit.push(z);
                }
            }
            head += 1;
        }
        orbit.sort_unstable();
        members.push(orbit);
    }
    let sizes = members.iter().map(Vec::len).collect();
    ClassTable { class_of, reps, sizes, members }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::GroupSpec;
    use crate::oracle::{build_group, DEFAULT_ORDER_CAP};

    #[test]
    fn class_examples() {
        let a5 = build_group(&GroupSpec::alt(5), DEFAULT_ORDER_CAP).unwrap();
        let ct = classes(&a5);
        let mut sizes = ct.sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, alloc::vec![1, 12, 12, 15, 20]);
        let sl23 = build_group(&GroupSpec::sl(2, 3), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(classes(&sl23).len(), 7);
        assert_eq!(classes(&build_group(&GroupSpec::sl(3, 2), DEFAULT_ORDER_CAP).unwrap()).len(), 6);
        assert_eq!(classes(&build_group(&GroupSpec::sym(5), DEFAULT_ORDER_CAP).unwrap()).len(), 7);
    }

    #[test]
    fn invariants() {
        let g = build_group(&GroupSpec::psl(2, 7), DEFAULT_ORDER_CAP).unwrap();
        let ct = classes(&g);
        assert_eq!(ct.sizes.iter().sum::<usize>(), g.order());
        assert_eq!(ct.sizes[0], 1);
        // conjugation by every element preserves classes
        for x in 0..g.order() as u32 {
            for s in [3u32, 50, 111] {
                assert_eq!(ct.class_of[g.conj(s, x) as usize], ct.class_of[x as usize]);
            }
        }
        for (c, &r) in ct.reps.iter().enumerate() {
            assert!(ct.members(c as u32).contains(&r));
        }
    }

    #[test]
    fn matches_class_rep_enumeration() {
        use crate::canonical::sl_class_reps;
        for (n, q) in [(2, 3), (2, 4), (2, 5), (2, 7), (2, 9), (3, 2), (3, 3)] {
            let g = build_group(&GroupSpec::sl(n, q), DEFAULT_ORDER_CAP).unwrap();
            let ct = classes(&g);
            let centre = (0..g.order() as u32).filter(|&x| g.is_central(x)).count();
            let reps = sl_class_reps(g.field().unwrap(), n);
            assert_eq!(reps.len(), ct.len() - centre, "SL({n},{q})");
            let mut hit: Vec<u32> = reps.iter().map(|m| ct.class_of[g.index_of_mat(m).unwrap() as usize]).collect();
            hit.sort_unstable();
            hit.dedup();
            assert_eq!(hit.len(), reps.len(), "SL({n},{q}) reps not pairwise non-conjugate");
        }
    }
}
