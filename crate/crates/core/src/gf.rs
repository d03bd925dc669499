//! Finite fields GF(p^k) for the prime powers q ≤ 32.
//!
//! Elements are encoded as integers in `[0, q)`: the coefficient vector
//! `(c₀, …, c_{k−1})` of a polynomial in the adjoined root, written in base
//! `p` with `c₀` least significant. Each extension field uses a fixed monic
//! irreducible modulus so that encodings are reproducible:
//!
//! | q  | modulus       |
//! |----|---------------|
//! | 4  | x²+x+1        |
//! | 8  | x³+x+1        |
//! | 9  | x²+1          |
//! | 16 | x⁴+x+1        |
//! | 25 | x²+2          |
//! | 27 | x³+2x+1       |
//! | 32 | x⁵+x²+1       |

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::ops::Deref;

/// Largest field order supported by the modulus table.
pub const MAX_Q: u32 = 32;

/// Monic moduli, constant term first, leading coefficient included.
const MODULI: &[(u32, &[u32])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[1, 0, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 0, 1]),
    (27, &[1, 2, 0, 1]),
    (32, &[1, 0, 1, 0, 0, 1]),
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GfError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("GF({0}) is not in the modulus table (supported: prime powers up to 32)")]
    Unsupported(u32),
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("encoding {enc} is not an element of GF({q})")]
    NotInField { enc: u32, q: u32 },
    #[error("pick_alpha requires odd q, got q = {0}")]
    EvenCharacteristic(u32),
}

/// A field element, by encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Felt(pub(crate) u8);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    pub fn enc(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Binary and unary operations accepted by [`Field::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(i64),
}

/// Precomputed tables for one field.
#[derive(Debug)]
pub struct FieldCtx {
    pub q: u32,
    pub p: u32,
    pub k: u32,
    /// Monic modulus, constant term first; empty for prime fields.
    pub modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Cheaply clonable handle to a [`FieldCtx`]. Two handles are equal iff
/// they describe the same q.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.q == other.0.q
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.q.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

impl Deref for Field {
    type Target = FieldCtx;
    fn deref(&self) -> &FieldCtx {
        &self.0
    }
}

/// Returns `(p, k)` with `q = p^k`, or `None` if q is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// All prime powers `2 ≤ q ≤ bound`, ascending.
pub fn prime_powers_up_to(bound: u32) -> Vec<u32> {
    (2..=bound).filter(|&q| prime_power(q).is_some()).collect()
}

fn digits(mut x: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = alloc::vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        // x^deg = x^{deg-k} * x^k and x^k = -(modulus without leading term)
        for (i, &m) in modulus[..k].iter().enumerate() {
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + (p - m) * c) % p;
        }
        prod[deg] = 0;
    }
    prod.truncate(k);
    prod
}

/// Builds GF(q).
pub fn make_field(q: u32) -> Result<Field, GfError> {
    let (p, k) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
    if q > MAX_Q {
        return Err(GfError::Unsupported(q));
    }
    let modulus: Vec<u32> = if k == 1 {
        Vec::new()
    } else {
        MODULI
            .iter()
            .find(|(mq, _)| *mq == q)
            .map(|(_, m)| m.to_vec())
            .ok_or(GfError::Unsupported(q))?
    };
    let qs = q as usize;
    let mut add = alloc::vec![0u8; qs * qs];
    let mut mul = alloc::vec![0u8; qs * qs];
    let dig: Vec<Vec<u32>> = (0..q).map(|x| digits(x, p, k)).collect();
    for a in 0..qs {
        for b in 0..qs {
            let s: Vec<u32> = dig[a].iter().zip(&dig[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * qs + b] = undigits(&s, p) as u8;
            let m = if k == 1 {
                ((a * b) % qs) as u32
            } else {
                undigits(&poly_mul_mod(&dig[a], &dig[b], &modulus, p), p)
            };
            mul[a * qs + b] = m as u8;
        }
    }
    let mut neg = alloc::vec![0u8; qs];
    let mut inv = alloc::vec![0u8; qs];
    for a in 0..qs {
        neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8;
        if a != 0 {
            inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8;
        }
    }
    Ok(Field(Arc::new(FieldCtx { q, p, k, modulus, add, mul, neg, inv })))
}

impl Field {
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn order(&self) -> usize {
        self.0.q as usize
    }

    pub fn is_even(&self) -> bool {
        self.0.p == 2
    }

    pub fn zero(&self) -> Felt {
        Felt::ZERO
    }

    pub fn one(&self) -> Felt {
        Felt::ONE
    }

    /// The element with the given encoding.
    pub fn elem(&self, enc: u32) -> Result<Felt, GfError> {
        if enc < self.0.q {
            Ok(Felt(enc as u8))
        } else {
            Err(GfError::NotInField { enc, q: self.0.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Felt {
        Felt(n.rem_euclid(self.0.p as i64) as u8)
    }

    pub fn contains(&self, a: Felt) -> bool {
        a.enc() < self.0.q
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Felt> + Clone {
        (0..self.0.q as u8).map(Felt)
    }

    /// Nonzero elements in encoding order.
    pub fn units(&self) -> impl Iterator<Item = Felt> + Clone {
        (1..self.0.q as u8).map(Felt)
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        Felt(self.0.add[a.0 as usize * self.0.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        Felt(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        Felt(self.0.mul[a.0 as usize * self.0.q as usize + b.0 as usize])
    }

    pub fn inv(&self, a: Felt) -> Result<Felt, GfError> {
        if a.is_zero() {
            Err(GfError::ZeroInverse)
        } else {
            Ok(Felt(self.0.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer e; negative exponents need `a ≠ 0`.
    pub fn pow(&self, a: Felt, e: i64) -> Result<Felt, GfError> {
        let base = if e < 0 { self.inv(a)? } else { a };
        let mut e = e.unsigned_abs();
        let (mut acc, mut b) = (Felt::ONE, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Checked arithmetic. `b` is ignored by unary operations.
    pub fn arith(&self, a: Felt, b: Felt, op: Op) -> Result<Felt, GfError> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(GfError::NotInField { enc: x.enc(), q: self.0.q });
            }
        }
        match op {
            Op::Add => Ok(self.add(a, b)),
            Op::Sub => Ok(self.sub(a, b)),
            Op::Mul => Ok(self.mul(a, b)),
            Op::Div => self.div(a, b),
            Op::Neg => Ok(self.neg(a)),
            Op::Inv => self.inv(a),
            Op::Pow(e) => self.pow(a, e),
        }
    }

    /// The square root with the smaller encoding, if any.
    pub fn sqrt(&self, a: Felt) -> Option<Felt> {
        self.elements().find(|&r| self.mul(r, r) == a)
    }

    pub fn is_square(&self, a: Felt) -> bool {
        self.sqrt(a).is_some()
    }

    /// First nonzero square α in (−1, 2, −2), with β = 2/α read as an integer.
    pub fn pick_alpha(&self) -> Result<(Felt, i32), GfError> {
        if self.is_even() {
            return Err(GfError::EvenCharacteristic(self.0.q));
        }
        [(-1, -2), (2, 1), (-2, -1)]
            .into_iter()
            .map(|(a, b)| (self.from_int(a), b))
            .find(|&(a, _)| !a.is_zero() && self.is_square(a))
            .ok_or(GfError::EvenCharacteristic(self.0.q))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Felt) -> u32 {
        let mut x = a;
        let mut n = 1;
        while x != Felt::ONE {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Smallest-encoding generator of the unit group.
    pub fn primitive(&self) -> Felt {
        self.units().find(|&a| self.mult_order(a) == self.0.q - 1).unwrap()
    }
}
