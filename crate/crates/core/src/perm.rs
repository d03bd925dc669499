//! Permutations of {1, …, n} and commutator partners in A_n.
//!
//! Composition is the right action: `(g·h)(x) = h(g(x))`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("malformed cycle notation: {0}")]
    Parse(String),
    #[error("point {0} outside 1..={1}")]
    OutOfRange(usize, usize),
    #[error("identity has no commutator partner")]
    Identity,
    #[error("5-cycles in A5 have no commutator partner; use a5_witness")]
    A5Exception,
    #[error("no even h with [g,h] of order 2 exists for g = {0}")]
    NoPartner(String),
    #[error("a5_witness needs a 5-cycle on 5 points")]
    NotA5FiveCycle,
}

/// Stored 0-based; text and [`Perm::images`] are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u8>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.iter().all(|c| c.len() == 1) {
            return f.write_str("()");
        }
        for c in cycles.iter().filter(|c| c.len() > 1) {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { img: (0..n as u8).collect() }
    }

    /// From 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        let mut img = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n {
                return Err(PermError::OutOfRange(x, n));
            }
            if core::mem::replace(&mut seen[x - 1], true) {
                return Err(PermError::Parse(alloc::format!("image {x} repeated")));
            }
            img.push((x - 1) as u8);
        }
        Ok(Perm { img })
    }

    /// From cycles of 0-based points.
    pub fn from_cycles0(n: usize, cycles: &[&[usize]]) -> Perm {
        let mut img: Vec<u8> = (0..n as u8).collect();
        for c in cycles {
            for (i, &a) in c.iter().enumerate() {
                img[a] = c[(i + 1) % c.len()] as u8;
            }
        }
        Perm { img }
    }

    /// Parses `(1,2,3)(4,5)` on n points; `()` is the identity.
    pub fn parse(n: usize, text: &str) -> Result<Perm, PermError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut img: Vec<u8> = (0..n as u8).collect();
        let mut moved = alloc::vec![false; n];
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(|| PermError::Parse(s.clone()))?;
            let close = inner.find(')').ok_or_else(|| PermError::Parse(s.clone()))?;
            let body = &inner[..close];
            rest = &inner[close + 1..];
            if body.is_empty() {
                continue;
            }
            let pts: Vec<usize> = body
                .split(',')
                .map(|t| t.parse::<usize>().map_err(|_| PermError::Parse(s.clone())))
                .collect::<Result<_, _>>()?;
            for &p in &pts {
                if p == 0 || p > n {
                    return Err(PermError::OutOfRange(p, n));
                }
                if core::mem::replace(&mut moved[p - 1], true) {
                    return Err(PermError::Parse(alloc::format!("point {p} repeated in {s}")));
                }
            }
            for (i, &p) in pts.iter().enumerate() {
                img[p - 1] = (pts[(i + 1) % pts.len()] - 1) as u8;
            }
        }
        Ok(Perm { img })
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&x| x as usize + 1).collect()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply0(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn images0(&self) -> &[u8] {
        &self.img
    }

    pub fn from_images0(img: Vec<u8>) -> Perm {
        Perm { img }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Apply self, then other.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "permutation degree mismatch");
        Perm { img: self.img.iter().map(|&x| other.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = alloc::vec![0u8; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u8;
        }
        Perm { img }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Perm::identity(self.degree()), |acc, _| acc.then(&base))
    }

    /// c·g·c⁻¹.
    pub fn conjugate(&self, c: &Perm) -> Perm {
        c.then(self).then(&c.inverse())
    }

    /// g⁻¹h⁻¹gh.
    pub fn commutator(&self, h: &Perm) -> Perm {
        self.inverse().then(&h.inverse()).then(self).then(h)
    }

    /// Cycles as 0-based points, each starting at its smallest point, ordered
    /// by that point; fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.img[x] as usize;
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths, descending, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles().iter().fold(1, |acc, c| {
            let l = c.len() as u64;
            acc / gcd(acc, l) * l
        })
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.then(self).is_identity()
    }
}

/// Panics on degree mismatch.
impl Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

/// Which row of the partner table was used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartnerRow {
    LongCycle,
    FourCycle,
    FiveCycleFixed,
    FiveCycleTwo,
    FiveCycleThree,
    FiveCycleFive,
    ThreeCycleFixed,
    ThreeCycleTwo,
    ThreeCycleThree,
    TwoTwo,
    TwoFixedFixed,
}

/// An even h with [g, h] of order 2, read off the cycle structure of g.
pub fn alt_partner(g: &Perm) -> Result<Perm, PermError> {
    alt_partner_row(g).map(|(h, _)| h)
}

/// [`alt_partner`] together with the table row that produced h.
pub fn alt_partner_row(g: &Perm) -> Result<(Perm, PartnerRow), PermError> {
    let n = g.degree();
    if g.is_identity() {
        return Err(PermError::Identity);
    }
    let cycles = g.cycles();
    let of_len = |k: usize| cycles.iter().filter(move |c| c.len() == k);
    let fixed: Vec<usize> = of_len(1).map(|c| c[0]).collect();
    let mk = |cs: &[&[usize]]| Perm::from_cycles0(n, cs);

    let longest = cycles.iter().filter(|c| c.len() >= 6).max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])));
    let (h, row) = if let Some(a) = longest {
        (mk(&[&[a[1], a[4]], &[a[2], a[5]]]), PartnerRow::LongCycle)
    } else if let Some(a) = of_len(4).next() {
        (mk(&[&[a[0], a[3]], &[a[1], a[2]]]), PartnerRow::FourCycle)
    } else if let Some(a) = of_len(5).next() {
        let other5 = of_len(5).nth(1);
        if let Some(&p) = fixed.first() {
            (mk(&[&[a[3], p, a[4]]]), PartnerRow::FiveCycleFixed)
        } else if let Some(b) = of_len(2).next() {
            (mk(&[&[a[4], b[1], b[0]]]), PartnerRow::FiveCycleTwo)
        } else if let Some(b) = of_len(3).next() {
            (mk(&[&[a[3], b[2]], &[a[4], b[0]]]), PartnerRow::FiveCycleThree)
        } else if let Some(b) = other5 {
            (mk(&[&[a[3], b[4]], &[a[4], b[0]]]), PartnerRow::FiveCycleFive)
        } else {
            return Err(PermError::A5Exception);
        }
    } else if let Some(a) = of_len(3).next() {
        let other3 = of_len(3).nth(1);
        if let Some(&p) = fixed.first() {
            (mk(&[&[a[1], p, a[2]]]), PartnerRow::ThreeCycleFixed)
        } else if let Some(b) = of_len(2).next() {
            (mk(&[&[a[0], a[2], a[1], b[1], b[0]]]), PartnerRow::ThreeCycleTwo)
        } else if let Some(b) = other3 {
            (mk(&[&[a[1], b[2]], &[a[2], b[0]]]), PartnerRow::ThreeCycleThree)
        } else {
            return Err(PermError::NoPartner(alloc::format!("{g}")));
        }
    } else {
        let twos: Vec<&Vec<usize>> = of_len(2).collect();
        if twos.len() >= 2 {
            let (a, b) = (twos[0], twos[1]);
            (mk(&[&[a[1], b[1], b[0]]]), PartnerRow::TwoTwo)
        } else if fixed.len() >= 2 {
            let a = twos[0];
            (mk(&[&[a[0], fixed[0]], &[a[1], fixed[1]]]), PartnerRow::TwoFixedFixed)
        } else {
            return Err(PermError::NoPartner(alloc::format!("{g}")));
        }
    };
    let c = g.commutator(&h);
    if !h.is_even() || !c.is_involution() {
        return Err(PermError::NoPartner(alloc::format!("{g} (table row {row:?} gave {h})")));
    }
    Ok((h, row))
}

/// A word of conjugates of g^{±1} in A₅ with involution product.
#[derive(Clone, Debug)]
pub struct A5Witness {
    pub word: Vec<(Perm, i8)>,
    pub product: Perm,
    /// No product of at most two conjugates of g^{±1} is an involution.
    pub no_shorter: bool,
}

/// Exhaustive search over A₅ for a 5-cycle g.
pub fn a5_witness(g: &Perm) -> Result<A5Witness, PermError> {
    if g.degree() != 5 || g.cycle_type() != alloc::vec![5] {
        return Err(PermError::NotA5FiveCycle);
    }
    let a5: Vec<Perm> = all_perms(5).into_iter().filter(Perm::is_even).collect();
    // C ∪ C⁻¹ with the first conjugator reaching each element
    let mut gens: Vec<(Perm, Perm, i8)> = Vec::new();
    for e in [1i8, -1] {
        let base = g.pow(e as i64);
        for c in &a5 {
            let x = base.conjugate(c);
            if !gens.iter().any(|(y, _, _)| *y == x) {
                gens.push((x, c.clone(), e));
            }
        }
    }
    let no_one = gens.iter().all(|(x, _, _)| !x.is_involution());
    let no_two = gens.iter().all(|(x, _, _)| gens.iter().all(|(y, _, _)| !x.then(y).is_involution()));
    for (x, cx, ex) in &gens {
        for (y, cy, ey) in &gens {
            let xy = x.then(y);
            for (z, cz, ez) in &gens {
                let p = xy.then(z);
                if p.is_involution() {
                    return Ok(A5Witness {
                        word: alloc::vec![(cx.clone(), *ex), (cy.clone(), *ey), (cz.clone(), *ez)],
                        product: p,
                        no_shorter: no_one && no_two,
                    });
                }
            }
        }
    }
    Err(PermError::NoPartner(alloc::format!("{g}")))
}

/// All permutations of n points in lexicographic order of images.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(Perm { img: cur.clone() });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// One permutation of each cycle type on n points, cycles filled with
/// consecutive points, longest first.
pub fn cycle_type_reps(n: usize) -> Vec<Perm> {
    fn parts(k: usize, max: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return alloc::vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in (1..=k.min(max)).rev() {
            for mut rest in parts(k - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    parts(n, n)
        .into_iter()
        .map(|lam| {
            let mut img: Vec<u8> = (0..n as u8).collect();
            let mut off = 0;
            for l in lam {
                for i in 0..l {
                    img[off + i] = (off + (i + 1) % l) as u8;
                }
                off += l;
            }
            Perm { img }
        })
        .collect()
}
