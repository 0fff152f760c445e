//! Arithmetic in GF(q) for prime powers q up to 2^16.
//!
//! Elements are canonical integers in `[0, q)`. For prime fields this is the
//! residue mod p; for q = p^e with e > 1 the integer `sum c_i p^i` encodes the
//! polynomial `sum c_i x^i` reduced modulo a fixed irreducible polynomial.
//! Extension fields multiply through log/antilog tables and add through a
//! Zech logarithm table, so every operation is O(1).

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

const NONE: u32 = u32::MAX;

/// A canonical element of some GF(q), `value() < q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
enum Repr {
    Prime,
    Extension {
        /// exp[i] = g^i for i in [0, 2(q-1)), doubled so log sums need no reduction.
        exp: Vec<u32>,
        /// log[a] for a != 0; log[0] is unused.
        log: Vec<u32>,
        /// zech[n] = log(1 + g^n), or NONE when 1 + g^n = 0.
        zech: Vec<u32>,
    },
}

/// Immutable arithmetic context for GF(q).
#[derive(Clone)]
pub struct FieldContext {
    q: u32,
    p: u32,
    e: u32,
    /// Monic reduction polynomial, coefficients low to high (length e + 1).
    /// For prime fields this is `x`.
    modulus: Vec<u32>,
    repr: Repr,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for FieldContext {}

/// Returns `(p, e)` with `q = p^e` if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl FieldContext {
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let (q, p) = (q as u32, p as u32);
        if e == 1 {
            return Ok(FieldContext {
                q,
                p,
                e,
                modulus: vec![0, 1],
                repr: Repr::Prime,
            });
        }
        let modulus = lowest_irreducible(p, e);
        let repr = build_tables(q, p, e, &modulus)?;
        Ok(FieldContext { q, p, e, modulus, repr })
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Reduction polynomial, coefficients from constant term upwards.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    /// Checked conversion from an integer representative.
    pub fn elem(&self, value: u64) -> Result<FieldElement> {
        if value < self.q as u64 {
            Ok(FieldElement(value as u32))
        } else {
            Err(Error::ElementOutOfRange { value, q: self.q })
        }
    }

    /// All elements in increasing canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.repr {
            Repr::Prime => {
                let s = a.0 + b.0;
                FieldElement(if s >= self.q { s - self.q } else { s })
            }
            Repr::Extension { exp, log, zech } => {
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                // a + b = a (1 + b/a)
                let (la, lb) = (log[a.0 as usize], log[b.0 as usize]);
                let n = self.q - 1;
                let diff = if lb >= la { lb - la } else { lb + n - la };
                let z = zech[diff as usize];
                if z == NONE {
                    FieldElement::ZERO
                } else {
                    FieldElement(exp[(la + z) as usize])
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.0 == 0 {
            return a;
        }
        match &self.repr {
            Repr::Prime => FieldElement(self.q - a.0),
            Repr::Extension { exp, log, .. } => {
                if self.p == 2 {
                    a
                } else {
                    // -1 = g^((q-1)/2)
                    FieldElement(exp[(log[a.0 as usize] + (self.q - 1) / 2) as usize])
                }
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.repr {
            Repr::Prime => FieldElement(((a.0 as u64 * b.0 as u64) % self.q as u64) as u32),
            Repr::Extension { exp, log, .. } => {
                if a.0 == 0 || b.0 == 0 {
                    FieldElement::ZERO
                } else {
                    FieldElement(exp[(log[a.0 as usize] + log[b.0 as usize]) as usize])
                }
            }
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.repr {
            Repr::Prime => self.pow(a, (self.q - 2) as u64),
            Repr::Extension { exp, log, .. } => {
                let l = log[a.0 as usize];
                FieldElement(exp[((self.q - 1 - l) % (self.q - 1)) as usize])
            }
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.repr {
            Repr::Prime => {
                let m = self.q as u64;
                let (mut base, mut acc, mut k) = (a.0 as u64, 1u64, k);
                while k > 0 {
                    if k & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    k >>= 1;
                }
                FieldElement(acc as u32)
            }
            Repr::Extension { exp, log, .. } => {
                let n = (self.q - 1) as u64;
                let l = (log[a.0 as usize] as u64 * (k % n)) % n;
                FieldElement(exp[l as usize])
            }
        }
    }

    /// Dot product `sum a_i b_i`.
    pub fn dot(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        a.iter()
            .zip(b)
            .fold(FieldElement::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

// ---- polynomial helpers over GF(p), used only while building a context ----

fn digits(mut v: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo a monic `b`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let lead = *r.last().unwrap();
        for (i, &c) in b.iter().enumerate() {
            let idx = i + shift;
            r[idx] = (r[idx] + p - (lead * c) % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_rem(&out, m, p)
}

/// Monic polynomial of degree `deg` whose lower coefficients encode `code` in base p.
fn monic(code: u32, p: u32, deg: u32) -> Vec<u32> {
    let mut c = digits(code, p, deg);
    c.push(1);
    c
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = (f.len() - 1) as u32;
    for dd in 1..=deg / 2 {
        for code in 0..p.pow(dd) {
            let g = monic(code, p, dd);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lowest monic irreducible polynomial of degree `e` over GF(p), where
/// "lowest" orders lower coefficients as a base-p integer.
fn lowest_irreducible(p: u32, e: u32) -> Vec<u32> {
    (0..p.pow(e))
        .map(|code| monic(code, p, e))
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists for every degree")
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn build_tables(q: u32, p: u32, e: u32, modulus: &[u32]) -> Result<Repr> {
    let n = q - 1;
    let factors = prime_factors(n);
    let poly_pow = |base: &[u32], mut k: u32| {
        let mut acc = vec![1u32];
        let mut b = base.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                acc = poly_mulmod(&acc, &b, modulus, p);
            }
            b = poly_mulmod(&b, &b, modulus, p);
            k >>= 1;
        }
        acc
    };
    // smallest primitive element
    let g = (2..q)
        .map(|v| trim(digits(v, p, e)))
        .find(|g| factors.iter().all(|&f| poly_pow(g, n / f) != [1]))
        .ok_or(Error::NotPrimePower(q as u64))?;

    let mut exp = vec![0u32; 2 * n as usize];
    let mut log = vec![NONE; q as usize];
    let mut cur = vec![1u32];
    for i in 0..n {
        let mut ds = cur.clone();
        ds.resize(e as usize, 0);
        let v = undigits(&ds, p);
        if log[v as usize] != NONE {
            // not primitive after all; the modulus must be reducible
            return Err(Error::NotPrimePower(q as u64));
        }
        log[v as usize] = i;
        exp[i as usize] = v;
        exp[(i + n) as usize] = v;
        cur = poly_mulmod(&cur, &g, modulus, p);
    }

    let add_digits = |a: u32, b: u32| {
        let (da, db) = (digits(a, p, e), digits(b, p, e));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
        undigits(&s, p)
    };
    let zech = (0..n)
        .map(|k| {
            let s = add_digits(1, exp[k as usize]);
            if s == 0 {
                NONE
            } else {
                log[s as usize]
            }
        })
        .collect();
    Ok(Repr::Extension { exp, log, zech })
}
