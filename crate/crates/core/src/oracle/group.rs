//! Fully enumerated small groups.

use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::gf::{make_field, Felt, Field, GfError};
use crate::matrix::{Family, GroupSpec, Mat};
use crate::perm::{all_perms, Perm};

use super::OracleError;

/// Default enumeration cap.
pub const DEFAULT_ORDER_CAP: u64 = 1_000_000;

/// Groups up to this order get a full multiplication table.
pub const TABLE_LIMIT: usize = 3000;

const MAX_ENTRIES: usize = 25;

type Raw = [u8; MAX_ENTRIES];

#[derive(Clone, Debug)]
enum Carrier {
    Perm { n: usize },
    Mat { field: Field, n: usize, scalars: Vec<Felt> },
}

/// A finite group with elements indexed 0.. and index 0 the identity.
#[derive(Clone, Debug)]
pub struct GroupTable {
    spec: GroupSpec,
    carrier: Carrier,
    raw: Vec<Raw>,
    index: HashMap<u128, u32>,
    inv: Vec<u32>,
    gens: Vec<u32>,
    table: Option<Vec<u32>>,
    central: Vec<bool>,
}

fn key(raw: &Raw, len: usize, bits: u32) -> u128 {
    raw[..len].iter().fold(0u128, |acc, &x| (acc << bits) | x as u128)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// |family(n, q)| from the usual product formulas.
pub fn group_order(spec: &GroupSpec) -> Option<u128> {
    let n = spec.n as u32;
    let fact = |k: u32| (1..=k as u128).product::<u128>();
    match spec.family {
        Family::Sym => Some(fact(n)),
        Family::Alt => Some(if n < 2 { 1 } else { fact(n) / 2 }),
        fam => {
            let q = spec.q? as u128;
            let gl: u128 = (0..n).map(|i| q.pow(n) - q.pow(i)).product();
            let d = gcd(spec.n as u64, q as u64 - 1) as u128;
            Some(match fam {
                Family::GL => gl,
                Family::SL | Family::PGL => gl / (q - 1),
                Family::PSL => gl / (q - 1) / d,
                _ => unreachable!(),
            })
        }
    }
}

impl GroupTable {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.raw.len()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    fn entries(&self) -> usize {
        match &self.carrier {
            Carrier::Perm { n } => *n,
            Carrier::Mat { n, .. } => n * n,
        }
    }

    fn bits(&self) -> u32 {
        match &self.carrier {
            Carrier::Perm { .. } => 4,
            Carrier::Mat { .. } => 5,
        }
    }

    fn mul_raw(&self, a: &Raw, b: &Raw) -> Raw {
        let mut r = [0u8; MAX_ENTRIES];
        match &self.carrier {
            Carrier::Perm { n } => {
                for i in 0..*n {
                    r[i] = b[a[i] as usize];
                }
            }
            Carrier::Mat { field, n, scalars } => {
                let n = *n;
                for i in 0..n {
                    for j in 0..n {
                        let mut s = Felt::ZERO;
                        for k in 0..n {
                            s = field.add(s, field.mul(Felt(a[i * n + k]), Felt(b[k * n + j])));
                        }
                        r[i * n + j] = s.0;
                    }
                }
                if scalars.len() > 1 {
                    r = self.canonical(&r, field, n, scalars);
                }
            }
        }
        r
    }

    fn canonical(&self, r: &Raw, field: &Field, n: usize, scalars: &[Felt]) -> Raw {
        let len = n * n;
        let mut best = *r;
        let mut best_key = key(r, len, 5);
        for &l in &scalars[1..] {
            let mut s = [0u8; MAX_ENTRIES];
            for i in 0..len {
                s[i] = field.mul(Felt(r[i]), l).0;
            }
            let k = key(&s, len, 5);
            if k < best_key {
                best_key = k;
                best = s;
            }
        }
        best
    }

    fn lookup(&self, r: &Raw) -> Option<u32> {
        self.index.get(&key(r, self.entries(), self.bits())).copied()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if let Some(t) = &self.table {
            return t[a as usize * self.raw.len() + b as usize];
        }
        let r = self.mul_raw(&self.raw[a as usize], &self.raw[b as usize]);
        self.lookup(&r).expect("group not closed under multiplication")
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// s·x·s⁻¹.
    pub fn conj(&self, s: u32, x: u32) -> u32 {
        self.mul(self.mul(s, x), self.inv(s))
    }

    pub fn pow(&self, x: u32, e: i64) -> u32 {
        let b = if e < 0 { self.inv(x) } else { x };
        (0..e.unsigned_abs()).fold(0, |acc, _| self.mul(acc, b))
    }

    pub fn is_central(&self, x: u32) -> bool {
        self.central[x as usize]
    }

    /// The involution predicate: x² = 1 and x ≠ 1 for permutation and
    /// projective groups; for GL and SL, a non-scalar matrix with square ±I.
    pub fn is_involution(&self, x: u32) -> bool {
        match (&self.carrier, self.spec.family) {
            (Carrier::Mat { .. }, Family::GL | Family::SL) => {
                if self.is_central(x) {
                    return false;
                }
                let sq = self.mul(x, x);
                sq == 0 || self.minus_one() == Some(sq)
            }
            _ => x != 0 && self.mul(x, x) == 0,
        }
    }

    fn minus_one(&self) -> Option<u32> {
        match &self.carrier {
            Carrier::Mat { field, n, .. } => self.index_of_mat(&Mat::scalar(field, *n, field.neg(Felt::ONE))),
            _ => None,
        }
    }

    pub fn element_order(&self, x: u32) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn field(&self) -> Option<&Field> {
        match &self.carrier {
            Carrier::Mat { field, .. } => Some(field),
            _ => None,
        }
    }

    /// The element as a matrix (the canonical representative for projective groups).
    pub fn element_mat(&self, x: u32) -> Option<Mat> {
        match &self.carrier {
            Carrier::Mat { field, n, .. } => {
                let r = &self.raw[x as usize];
                Some(Mat::new(field, *n, r[..n * n].iter().map(|&e| Felt(e)).collect()).unwrap())
            }
            _ => None,
        }
    }

    pub fn element_perm(&self, x: u32) -> Option<Perm> {
        match &self.carrier {
            Carrier::Perm { n } => Some(Perm::from_images0(self.raw[x as usize][..*n].to_vec())),
            _ => None,
        }
    }

    pub fn index_of_mat(&self, m: &Mat) -> Option<u32> {
        let Carrier::Mat { field, n, scalars } = &self.carrier else {
            return None;
        };
        if m.n() != *n || m.field() != field {
            return None;
        }
        let mut r = [0u8; MAX_ENTRIES];
        for (i, e) in m.entries().iter().enumerate() {
            r[i] = e.0;
        }
        if scalars.len() > 1 {
            r = self.canonical(&r, field, *n, scalars);
        }
        self.lookup(&r)
    }

    pub fn index_of_perm(&self, p: &Perm) -> Option<u32> {
        let Carrier::Perm { n } = &self.carrier else {
            return None;
        };
        if p.degree() != *n {
            return None;
        }
        let mut r = [0u8; MAX_ENTRIES];
        r[..*n].copy_from_slice(p.images0());
        self.lookup(&r)
    }

    /// Text form of an element: cycle notation or matrix text.
    pub fn element_text(&self, x: u32) -> alloc::string::String {
        use alloc::string::ToString;
        match &self.carrier {
            Carrier::Perm { .. } => self.element_perm(x).unwrap().to_string(),
            Carrier::Mat { .. } => self.element_mat(x).unwrap().to_string(),
        }
    }
}

fn raw_of_mat(m: &Mat) -> Raw {
    let mut r = [0u8; MAX_ENTRIES];
    for (i, e) in m.entries().iter().enumerate() {
        r[i] = e.0;
    }
    r
}

/// Enumerates `spec` if its order is at most `cap`.
pub fn build_group(spec: &GroupSpec, cap: u64) -> Result<GroupTable, OracleError> {
    let order = group_order(spec).ok_or(OracleError::Unsupported(*spec))?;
    if order > cap as u128 {
        return Err(OracleError::TooLarge { spec: *spec, order, cap });
    }
    let n = spec.n;
    let (carrier, gen_raw, elems): (Carrier, Vec<Raw>, Option<Vec<Raw>>) = match spec.family {
        Family::Sym | Family::Alt => {
            if n == 0 || n > 16 {
                return Err(OracleError::Unsupported(*spec));
            }
            let to_raw = |p: &Perm| {
                let mut r = [0u8; MAX_ENTRIES];
                r[..n].copy_from_slice(p.images0());
                r
            };
            let gens: Vec<Perm> = if spec.family == Family::Sym {
                let mut g = alloc::vec![Perm::from_cycles0(n, &[&[0, 1]])];
                let cyc: Vec<usize> = (0..n).collect();
                g.push(Perm::from_cycles0(n, &[&cyc]));
                g.retain(|p| !p.is_identity());
                g
            } else {
                (2..n).map(|i| Perm::from_cycles0(n, &[&[0, 1, i]])).collect()
            };
            let all: Vec<Raw> = all_perms(n)
                .iter()
                .filter(|p| spec.family == Family::Sym || p.is_even())
                .map(to_raw)
                .collect();
            (Carrier::Perm { n }, gens.iter().map(to_raw).collect(), Some(all))
        }
        fam => {
            let q = spec.q.ok_or(OracleError::Unsupported(*spec))?;
            if n == 0 || n * n > MAX_ENTRIES {
                return Err(OracleError::Unsupported(*spec));
            }
            let field = make_field(q).map_err(OracleError::Field)?;
            let omega = field.primitive();
            let scalars: Vec<Felt> = match fam {
                Family::PGL => field.units().collect(),
                Family::PSL => field.units().filter(|&l| field.pow(l, n as i64) == Ok(Felt::ONE)).collect(),
                _ => alloc::vec![Felt::ONE],
            };
            let mut gens = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for e in 0..field.k {
                        let l = field.pow(omega, e as i64).map_err(OracleError::Field)?;
                        gens.push(Mat::transvection(&field, n, i, j, l));
                    }
                }
            }
            if matches!(fam, Family::GL | Family::PGL) && q > 2 {
                let mut d = alloc::vec![Felt::ONE; n];
                d[0] = omega;
                gens.push(Mat::diag(&field, &d));
            }
            let scalars = {
                let mut s = scalars;
                s.sort();
                s.dedup();
                // identity scalar first
                s.retain(|&l| l != Felt::ONE);
                s.insert(0, Felt::ONE);
                s
            };
            (Carrier::Mat { field, n, scalars }, gens.iter().map(raw_of_mat).collect(), None)
        }
    };
    let mut g = GroupTable {
        spec: *spec,
        carrier,
        raw: Vec::new(),
        index: HashMap::new(),
        inv: Vec::new(),
        gens: Vec::new(),
        table: None,
        central: Vec::new(),
    };
    let (len, bits) = (g.entries(), g.bits());
    let gen_raw: Vec<Raw> = gen_raw
        .into_iter()
        .map(|r| match &g.carrier {
            Carrier::Mat { field, n, scalars } if scalars.len() > 1 => g.canonical(&r, field, *n, scalars),
            _ => r,
        })
        .collect();
    let identity: Raw = match &g.carrier {
        Carrier::Perm { n } => {
            let mut r = [0u8; MAX_ENTRIES];
            for (i, x) in r.iter_mut().enumerate().take(*n) {
                *x = i as u8;
            }
            r
        }
        Carrier::Mat { field, n, .. } => raw_of_mat(&Mat::identity(field, *n)),
    };
    match elems {
        Some(all) => {
            for r in all {
                let k = key(&r, len, bits);
                g.index.insert(k, g.raw.len() as u32);
                g.raw.push(r);
            }
            debug_assert_eq!(g.raw.first(), Some(&identity));
        }
        None => {
            // closure under right multiplication by generators
            g.index.insert(key(&identity, len, bits), 0);
            g.raw.push(identity);
            let mut head = 0;
            while head < g.raw.len() {
                let x = g.raw[head];
                for s in &gen_raw {
                    let y = g.mul_raw(&x, s);
                    let k = key(&y, len, bits);
                    if !g.index.contains_key(&k) {
                        g.index.insert(k, g.raw.len() as u32);
                        g.raw.push(y);
                        if g.raw.len() as u128 > order {
                            return Err(OracleError::Internal("enumeration exceeded the order formula"));
                        }
                    }
                }
                head += 1;
            }
        }
    }
    if g.raw.len() as u128 != order {
        return Err(OracleError::Internal("enumeration does not match the order formula"));
    }
    g.gens = gen_raw.iter().filter_map(|r| g.lookup(r)).collect();
    let size = g.raw.len();
    if size <= TABLE_LIMIT {
        let mut t = alloc::vec![0u32; size * size];
        for a in 0..size {
            for b in 0..size {
                t[a * size + b] = g.lookup(&g.mul_raw(&g.raw[a], &g.raw[b])).unwrap();
            }
        }
        g.table = Some(t);
    }
    g.inv = alloc::vec![u32::MAX; size];
    for a in 0..size as u32 {
        if g.inv[a as usize] != u32::MAX {
            continue;
        }
        let ai = match &g.carrier {
            Carrier::Perm { n } => {
                let mut r = [0u8; MAX_ENTRIES];
                for i in 0..*n {
                    r[g.raw[a as usize][i] as usize] = i as u8;
                }
                g.lookup(&r).unwrap()
            }
            Carrier::Mat { .. } => {
                let m = g.element_mat(a).unwrap().inverse().expect("group element is invertible");
                g.index_of_mat(&m).unwrap()
            }
        };
        g.inv[a as usize] = ai;
        g.inv[ai as usize] = a;
    }
    g.central = (0..size as u32).map(|x| g.gens.iter().all(|&s| g.mul(s, x) == g.mul(x, s))).collect();
    Ok(g)
}

impl From<GfError> for OracleError {
    fn from(e: GfError) -> Self {
        OracleError::Field(e)
    }
}
