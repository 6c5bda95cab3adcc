//! Dense univariate polynomials over `F_{p^m}` (the variable is `t` or `s`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Fq, GaloisField};
use super::matrix::Matrix;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficients low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: &'static GaloisField,
    coeffs: Vec<Fq>,
}

impl UniPoly {
    pub fn zero(field: &'static GaloisField) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: &'static GaloisField) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Fq) -> Self {
        Self::new(c.field(), vec![c])
    }

    /// The variable itself.
    pub fn x(field: &'static GaloisField) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// `c * x^k`.
    pub fn monomial(c: Fq, k: usize) -> Self {
        let field = c.field();
        let mut v = vec![field.zero(); k + 1];
        v[k] = c;
        Self::new(field, v)
    }

    pub fn new(field: &'static GaloisField, mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    /// From prime-field integers, low degree first.
    pub fn from_ints(field: &'static GaloisField, ints: &[i64]) -> Self {
        Self::new(field, ints.iter().map(|&n| field.from_int(n)).collect())
    }

    pub fn field(&self) -> &'static GaloisField {
        self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Fq {
        self.coeffs.get(k).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0` (used by height formulas over nonzero tuples).
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn scale(&self, c: Fq) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn eval(&self, x: Fq) -> Fq {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.field,
            self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * self.field.from_int(k as i64)).collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Resultant via the Sylvester matrix of the actual degrees.
    pub fn resultant(&self, other: &UniPoly) -> Fq {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return self.field.zero();
        };
        if m + n == 0 {
            return self.field.one();
        }
        let size = m + n;
        let mut s = Matrix::zeros(&self.field, size, size);
        for r in 0..n {
            for (k, &c) in self.coeffs.iter().rev().enumerate() {
                s.set(r, r + k, c);
            }
        }
        for r in 0..m {
            for (k, &c) in other.coeffs.iter().rev().enumerate() {
                s.set(n + r, r + k, c);
            }
        }
        s.det()
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> UniPoly {
        self.squarefree_factorization().iter().fold(Self::one(self.field), |acc, (f, _)| &acc * f)
    }

    /// `(quotient, remainder)`; panics on division by zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv = d.leading().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k] * inv;
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] -= c * dc;
            }
        }
        (Self::new(self.field, quot), Self::new(self.field, rem))
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self(g)`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        self.coeffs.iter().rev().fold(Self::zero(self.field), |acc, &c| &(&acc * g) + &Self::constant(c))
    }

    /// `self(x^k)`.
    pub fn inflate(&self, k: usize) -> UniPoly {
        let mut v = vec![self.field.zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            v[j * k] = c;
        }
        Self::new(self.field, v)
    }

    /// Coefficientwise map into another field.
    pub fn map(&self, to: &'static GaloisField, f: impl Fn(Fq) -> Fq) -> UniPoly {
        UniPoly::new(to, self.coeffs.iter().map(|&c| f(c)).collect())
    }

    /// Roots in the coefficient field (brute force), without multiplicity.
    pub fn roots(&self) -> Vec<Fq> {
        if self.is_zero() {
            return Vec::new();
        }
        self.field.elements().filter(|&x| self.eval(x).is_zero()).collect()
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: Fq) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Self::new(self.field, vec![-a, self.field.one()]);
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(&lin) {
            cur = q;
            k += 1;
        }
        k
    }

    /// Square-free factorization `self = lc · Π f_i^{e_i}` with monic,
    /// square-free, pairwise coprime `f_i`; valid in characteristic `p`
    /// (factors that are `p`-th powers are handled through `p`-th roots).
    pub fn squarefree_factorization(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        sff(&self.monic(), 1, &mut out);
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.coeffs.len().cmp(&b.0.coeffs.len())));
        // merge factors with equal multiplicity
        let mut merged: Vec<(UniPoly, u32)> = Vec::new();
        for (f, e) in out {
            match merged.last_mut() {
                Some((g, k)) if *k == e => *g = &*g * &f,
                _ => merged.push((f, e)),
            }
        }
        merged
    }

    /// `p`-th root of a polynomial whose exponents are all multiples of `p`.
    fn pth_root_poly(&self) -> UniPoly {
        let p = self.field.characteristic() as usize;
        Self::new(self.field, self.coeffs.iter().step_by(p).map(|c| c.pth_root()).collect())
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            parts.push(match (k, c.is_one()) {
                (0, _) => c.to_string(),
                (_, true) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        parts.join("+")
    }

    /// Parses `c*t^k + …` in the given variable name.
    pub fn parse(field: &'static GaloisField, s: &str, var: &str) -> Result<UniPoly> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Self::zero(field);
        let mut term = String::new();
        let mut negative = false;
        let flush = |term: &mut String, negative: bool, out: &mut UniPoly| -> Result<()> {
            if term.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{s}`")));
            }
            let mut c = field.one();
            let mut k = 0usize;
            for factor in term.split('*') {
                if factor == var {
                    k += 1;
                } else if let Some(e) = factor.strip_prefix(var).and_then(|r| r.strip_prefix('^')) {
                    k += e.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent `{factor}`")))?;
                } else {
                    c *= field.parse_element(factor)?;
                }
            }
            if negative {
                c = -c;
            }
            *out = &*out + &UniPoly::monomial(c, k);
            term.clear();
            Ok(())
        };
        let mut prev = None;
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') {
                if !term.is_empty() {
                    flush(&mut term, negative, &mut out)?;
                } else if prev.is_some() {
                    return Err(Error::Parse(format!("dangling sign in `{s}`")));
                }
                negative = ch == '-';
            } else {
                term.push(ch);
            }
            prev = Some(ch);
        }
        flush(&mut term, negative, &mut out)?;
        Ok(out)
    }
}

fn sff(f: &UniPoly, mult: u32, out: &mut Vec<(UniPoly, u32)>) {
    let p = f.field.characteristic();
    let df = f.derivative();
    if df.is_zero() {
        // f is a p-th power
        sff(&f.pth_root_poly(), mult * p, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1u32;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_constant() {
            out.push((fac, i * mult));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_constant() {
        sff(&c.pth_root_poly(), mult * p, out);
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("t"))
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(self.field, (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(self.field, (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &'a UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut v = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(self.field, v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|&c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_division() {
        let f = GaloisField::get(5, 1).unwrap();
        let a = UniPoly::from_ints(f, &[-1, 0, 1]); // t^2 - 1
        let b = UniPoly::from_ints(f, &[1, 1]); // t + 1
        assert_eq!(a.gcd(&b), b);
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_ints(f, &[-1, 1]));
    }

    #[test]
    fn squarefree_in_characteristic_p() {
        let f = GaloisField::get(3, 1).unwrap();
        let t = UniPoly::x(f);
        let one = UniPoly::one(f);
        let tp1 = &t + &one;
        // t^3 (t+1)^2 (t+2): the t^3 factor has vanishing derivative
        let g = &(&t.pow(3) * &tp1.pow(2)) * &(&t + &UniPoly::constant(f.from_int(2)));
        let sff = g.squarefree_factorization();
        let rebuilt = sff.iter().fold(UniPoly::one(f), |acc, (h, e)| &acc * &h.pow(*e));
        assert_eq!(rebuilt, g.monic());
        let mults: Vec<u32> = sff.iter().map(|x| x.1).collect();
        assert_eq!(mults, vec![1, 2, 3]);
    }

    #[test]
    fn resultant_detects_common_roots() {
        let f = GaloisField::get(7, 1).unwrap();
        let a = UniPoly::from_ints(f, &[-1, 0, 1]);
        let b = UniPoly::from_ints(f, &[-1, 1]);
        assert!(a.resultant(&b).is_zero());
        let c = UniPoly::from_ints(f, &[2, 1]);
        assert!(!a.resultant(&c).is_zero());
        // Res(x^2 + 1, x - 2) = 2^2 + 1
        let d = UniPoly::from_ints(f, &[1, 0, 1]);
        let e = UniPoly::from_ints(f, &[-2, 1]);
        assert_eq!(d.resultant(&e), f.from_int(5));
    }

    #[test]
    fn parse_and_print() {
        let f = GaloisField::get(5, 1).unwrap();
        let p = UniPoly::parse(f, "t^2 + 4*t - 1", "t").unwrap();
        assert_eq!(p, UniPoly::from_ints(f, &[4, 4, 1]));
        assert_eq!(UniPoly::parse(f, &p.to_string(), "t").unwrap(), p);
        assert_eq!(p.root_multiplicity(f.from_int(1)), 0);
        assert_eq!(p.root_multiplicity(f.from_int(3)), 2);
        let sq = UniPoly::from_ints(f, &[1, 2, 1]);
        assert_eq!(sq.root_multiplicity(f.from_int(-1)), 2);
    }
}
