//! Finite fields `F_{p^m}` for odd `p`.
//!
//! Elements are encoded as integers `0..q`: the coefficient vector of the
//! element in the polynomial basis `1, α, …, α^{m-1}` read as base-`p` digits.
//! The prime subfield is therefore exactly `0..p`. Multiplication goes through
//! log/antilog tables built from a primitive modulus, so `α` (the class of `x`)
//! is the fixed generator `g` used by the text encoding.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

pub struct GaloisField {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, constant term first. For `m = 1` this is `x - g`.
    modulus: Vec<u32>,
    /// `exp[k] = g^k`, doubled so that `exp[log a + log b]` never wraps.
    exp: Vec<u32>,
    log: Vec<u32>,
}

static REGISTRY: OnceLock<Mutex<HashMap<(u32, u32), &'static GaloisField>>> = OnceLock::new();

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl GaloisField {
    /// Returns the (interned) field with `p^m` elements.
    pub fn get(p: u32, m: u32) -> Result<&'static GaloisField> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p as u64) {
            return Err(Error::NotOddPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidInput("extension degree must be positive".into()));
        }
        let order = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if order > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge { p, m });
        }
        let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = registry.lock().expect("field registry poisoned");
        if let Some(f) = guard.get(&(p, m)) {
            return Ok(f);
        }
        let field: &'static GaloisField = Box::leak(Box::new(Self::build(p, m)));
        guard.insert((p, m), field);
        Ok(field)
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<&'static GaloisField> {
        Self::get(p, 1)
    }

    fn build(p: u32, m: u32) -> GaloisField {
        let q = p.pow(m);
        if m == 1 {
            for g in 1..p {
                if let Some(exp) = cycle(p, 1, q, &[p - g], g) {
                    return Self::from_cycle(p, m, q, vec![p - g, 1], exp);
                }
            }
            unreachable!("every prime field has a primitive root");
        }
        // Monic candidates of degree m with nonzero constant term, in
        // lexicographic order of (c_0, …, c_{m-1}) read as a base-p integer.
        for code in 1..q {
            let mut low = Vec::with_capacity(m as usize);
            let mut c = code;
            for _ in 0..m {
                low.push(c % p);
                c /= p;
            }
            if low[0] == 0 {
                continue;
            }
            if let Some(exp) = cycle(p, m, q, &low, p) {
                let mut modulus = low;
                modulus.push(1);
                return Self::from_cycle(p, m, q, modulus, exp);
            }
        }
        unreachable!("primitive polynomials exist in every degree");
    }

    fn from_cycle(p: u32, m: u32, q: u32, modulus: Vec<u32>, exp: Vec<u32>) -> GaloisField {
        let mut log = vec![0u32; q as usize];
        for (k, &v) in exp.iter().enumerate() {
            log[v as usize] = k as u32;
        }
        let mut doubled = exp.clone();
        doubled.extend_from_slice(&exp);
        GaloisField { p, m, q, modulus, exp: doubled, log }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus polynomial, constant coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&'static self) -> Fq {
        Fq { field: self, v: 0 }
    }

    pub fn one(&'static self) -> Fq {
        Fq { field: self, v: 1 }
    }

    /// The fixed multiplicative generator `g`.
    pub fn generator(&'static self) -> Fq {
        Fq { field: self, v: self.exp[1] }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&'static self, n: i64) -> Fq {
        Fq { field: self, v: n.rem_euclid(self.p as i64) as u32 }
    }

    /// Element with the given integer encoding (reduced mod `q`).
    pub fn from_encoding(&'static self, v: u32) -> Fq {
        Fq { field: self, v: v % self.q }
    }

    /// `g^k`.
    pub fn gen_pow(&'static self, k: u64) -> Fq {
        let k = (k % (self.q as u64 - 1)) as usize;
        Fq { field: self, v: self.exp[k] }
    }

    /// All elements in encoding order.
    pub fn elements(&'static self) -> impl Iterator<Item = Fq> + Clone {
        (0..self.q).map(move |v| Fq { field: self, v })
    }

    /// Parses an element in the canonical text form: an integer (taken mod
    /// `p`), `g`, or `g^k`.
    pub fn parse_element(&'static self, s: &str) -> Result<Fq> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('-') {
            return Ok(-self.parse_element(rest)?);
        }
        if s == "g" {
            return Ok(self.generator());
        }
        if let Some(k) = s.strip_prefix("g^") {
            let k: u64 = k.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?;
            return Ok(self.gen_pow(k));
        }
        let n: i64 = s.parse().map_err(|_| Error::Parse(format!("bad field element `{s}`")))?;
        Ok(self.from_int(n))
    }

    /// Extension field of relative degree `k`.
    pub fn extension(&self, k: u32) -> Result<&'static GaloisField> {
        GaloisField::get(self.p, self.m * k)
    }

    /// Field embedding `self -> to`; requires `self.degree()` to divide `to.degree()`.
    pub fn embedding_into(&'static self, to: &'static GaloisField) -> Result<Embedding> {
        if self.p != to.p || to.m % self.m != 0 {
            return Err(Error::FieldMismatch);
        }
        if self.m == 1 {
            return Ok(Embedding { from: self, to, table: (0..self.q).collect() });
        }
        // α must go to a root of the modulus inside the order-(q-1) subgroup.
        let step = (to.q as u64 - 1) / (self.q as u64 - 1);
        let image = (1..self.q as u64 - 1)
            .map(|j| to.gen_pow(j * step))
            .find(|&beta| {
                let mut acc = to.zero();
                for &c in self.modulus.iter().rev() {
                    acc = acc * beta + to.from_int(c as i64);
                }
                acc.is_zero()
            })
            .ok_or(Error::FieldMismatch)?;
        let table = (0..self.q)
            .map(|v| {
                let mut acc = to.zero();
                let mut power = to.one();
                let mut rest = v;
                for _ in 0..self.m {
                    acc += to.from_int((rest % self.p) as i64) * power;
                    power *= image;
                    rest /= self.p;
                }
                acc.v
            })
            .collect();
        Ok(Embedding { from: self, to, table })
    }

    fn add_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        if self.m == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..self.m {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    fn neg_raw(&self, a: u32) -> u32 {
        let p = self.p;
        if self.m == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        for _ in 0..self.m {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }
}

/// Multiplicative cycle of `gen` (encoded) modulo the monic polynomial with
/// low coefficients `low`; `Some(table)` iff `gen` has order exactly `q - 1`.
fn cycle(p: u32, m: u32, q: u32, low: &[u32], gen: u32) -> Option<Vec<u32>> {
    let m = m as usize;
    let n = (q - 1) as usize;
    let mut table = Vec::with_capacity(n);
    if m == 1 {
        let mut cur = 1u64;
        for k in 0..n {
            if k > 0 && cur == 1 {
                return None;
            }
            table.push(cur as u32);
            cur = cur * gen as u64 % p as u64;
        }
        return (cur == 1).then_some(table);
    }
    let mut cur = vec![0u32; m];
    cur[0] = 1;
    let encode = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &x| acc * p + x);
    for k in 0..n {
        let code = encode(&cur);
        if k > 0 && code == 1 {
            return None;
        }
        table.push(code);
        // multiply by x and reduce with x^m = -Σ low_i x^i
        let top = cur[m - 1];
        for i in (1..m).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..m {
                cur[i] = (cur[i] + (p - low[i] % p) * top) % p;
            }
        }
    }
    (encode(&cur) == 1).then_some(table)
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for GaloisField {}

impl Hash for GaloisField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.p, self.m).hash(state);
    }
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.m)
        }
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Embedding of one finite field into an extension of it.
#[derive(Clone)]
pub struct Embedding {
    from: &'static GaloisField,
    to: &'static GaloisField,
    table: Vec<u32>,
}

impl Embedding {
    pub fn source(&self) -> &'static GaloisField {
        self.from
    }

    pub fn target(&self) -> &'static GaloisField {
        self.to
    }

    pub fn apply(&self, a: Fq) -> Fq {
        debug_assert!(std::ptr::eq(a.field, self.from) || *a.field == *self.from);
        Fq { field: self.to, v: self.table[a.v as usize] }
    }
}

/// An element of `F_{p^m}`.
#[derive(Clone, Copy)]
pub struct Fq {
    field: &'static GaloisField,
    v: u32,
}

impl Fq {
    pub fn field(&self) -> &'static GaloisField {
        self.field
    }

    /// Integer encoding (base-`p` digits of the polynomial-basis coordinates).
    pub fn encoding(&self) -> u32 {
        self.v
    }

    pub fn is_zero(&self) -> bool {
        self.v == 0
    }

    pub fn is_one(&self) -> bool {
        self.v == 1
    }

    /// Whether the element lies in the prime subfield.
    pub fn is_prime_subfield(&self) -> bool {
        self.v < self.field.p
    }

    /// Discrete logarithm to base `g`; `None` for zero.
    pub fn log(&self) -> Option<u32> {
        (!self.is_zero()).then(|| self.field.log[self.v as usize])
    }

    pub fn inv(&self) -> Option<Fq> {
        let l = self.log()? as usize;
        let n = self.field.q as usize - 1;
        Some(Fq { field: self.field, v: self.field.exp[(n - l) % n] })
    }

    pub fn pow(&self, e: u64) -> Fq {
        if e == 0 {
            return self.field.one();
        }
        match self.log() {
            None => *self,
            Some(l) => {
                let n = self.field.q as u64 - 1;
                let k = (l as u64 * (e % n)) % n;
                Fq { field: self.field, v: self.field.exp[k as usize] }
            }
        }
    }

    /// Frobenius `x ↦ x^p`.
    pub fn frobenius(&self) -> Fq {
        self.pow(self.field.p as u64)
    }

    /// The unique `b` with `b^p = self`, namely `self^{p^{m-1}}`.
    pub fn pth_root(&self) -> Fq {
        self.pow((self.field.p as u64).pow(self.field.m - 1))
    }

    /// A square root in this field, if one exists.
    pub fn sqrt(&self) -> Option<Fq> {
        match self.log() {
            None => Some(*self),
            Some(l) if l % 2 == 0 => Some(Fq { field: self.field, v: self.field.exp[(l / 2) as usize] }),
            Some(_) => None,
        }
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && (std::ptr::eq(self.field, other.field) || *self.field == *other.field)
    }
}

impl Eq for Fq {}

impl Serialize for Fq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Hash for Fq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.field.m.hash(state);
        self.v.hash(state);
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v < self.field.p {
            write!(f, "{}", self.v)
        } else {
            write!(f, "g^{}", self.field.log[self.v as usize])
        }
    }
}

impl Add for Fq {
    type Output = Fq;
    fn add(self, rhs: Fq) -> Fq {
        debug_assert!(self.field == rhs.field, "field mismatch");
        Fq { field: self.field, v: self.field.add_raw(self.v, rhs.v) }
    }
}

impl Sub for Fq {
    type Output = Fq;
    fn sub(self, rhs: Fq) -> Fq {
        debug_assert!(self.field == rhs.field, "field mismatch");
        Fq { field: self.field, v: self.field.add_raw(self.v, self.field.neg_raw(rhs.v)) }
    }
}

impl Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        Fq { field: self.field, v: self.field.neg_raw(self.v) }
    }
}

impl Mul for Fq {
    type Output = Fq;
    fn mul(self, rhs: Fq) -> Fq {
        debug_assert!(self.field == rhs.field, "field mismatch");
        if self.v == 0 || rhs.v == 0 {
            return self.field.zero();
        }
        let f = self.field;
        let k = f.log[self.v as usize] + f.log[rhs.v as usize];
        Fq { field: f, v: f.exp[k as usize] }
    }
}

impl Div for Fq {
    type Output = Fq;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: Fq) -> Fq {
        self * rhs.inv().expect("division by zero in finite field")
    }
}

impl AddAssign for Fq {
    fn add_assign(&mut self, rhs: Fq) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fq {
    fn sub_assign(&mut self, rhs: Fq) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fq {
    fn mul_assign(&mut self, rhs: Fq) {
        *self = *self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_even_and_composite() {
        assert_eq!(GaloisField::get(2, 1).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(GaloisField::get(9, 1).unwrap_err(), Error::NotOddPrime(9));
        assert!(GaloisField::get(3, 40).is_err());
    }

    #[test]
    fn prime_field_tables() {
        let f = GaloisField::get(7, 1).unwrap();
        assert_eq!(f.generator().encoding(), 3);
        for a in f.elements().skip(1) {
            assert!((a * a.inv().unwrap()).is_one());
        }
        assert_eq!(f.from_int(-1).encoding(), 6);
    }

    #[test]
    fn frobenius_is_bijective_and_has_period_m() {
        for (p, m) in [(3, 1), (3, 2), (3, 4), (5, 2), (7, 2), (3, 3)] {
            let f = GaloisField::get(p, m).unwrap();
            let mut images: Vec<u32> = f.elements().map(|a| a.frobenius().encoding()).collect();
            images.sort_unstable();
            images.dedup();
            assert_eq!(images.len() as u32, f.order());
            for a in f.elements() {
                assert_eq!(a.pow(f.order() as u64), a);
            }
        }
    }

    #[test]
    fn pth_root_in_f9() {
        // in F_9 the p-th root is a ↦ a^{p^{m-1}} = a^3
        let f = GaloisField::get(3, 2).unwrap();
        for a in f.elements() {
            let r = a.pth_root();
            assert_eq!(r, a.pow(3));
            assert_eq!(r * r * r, a);
        }
        assert!(f.zero().pth_root().is_zero());
        assert!(f.one().pth_root().is_one());
    }

    #[test]
    fn pth_root_prime_field_is_identity() {
        let f = GaloisField::get(5, 1).unwrap();
        for a in f.elements() {
            assert_eq!(a.pth_root(), a);
        }
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let small = GaloisField::get(3, 2).unwrap();
        let big = GaloisField::get(3, 4).unwrap();
        let e = small.embedding_into(big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(e.apply(a * b), e.apply(a) * e.apply(b));
                assert_eq!(e.apply(a + b), e.apply(a) + e.apply(b));
            }
        }
        assert!(GaloisField::get(3, 3).unwrap().embedding_into(big).is_err());
    }

    #[test]
    fn squares_become_available_in_quadratic_extension() {
        let f = GaloisField::get(5, 1).unwrap();
        let f2 = f.extension(2).unwrap();
        let e = f.embedding_into(f2).unwrap();
        assert!(!f.from_int(2).is_square());
        for a in f.elements() {
            let r = e.apply(a).sqrt().expect("every F_p element is a square in F_p^2");
            assert_eq!(r * r, e.apply(a));
        }
    }

    #[test]
    fn text_round_trip() {
        let f = GaloisField::get(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.parse_element(&a.to_string()).unwrap(), a);
        }
        assert_eq!(f.parse_element("-1").unwrap(), f.from_int(2));
    }
}
