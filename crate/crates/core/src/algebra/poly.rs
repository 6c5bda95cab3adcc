//! Sparse multivariate polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::coeff::Coeff;
use super::field::{Fq, GaloisField};
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Polynomial in `nvars` variables: map from exponent vector to nonzero
/// coefficient. Terms are kept in grevlex order, so the leading term is the
/// last entry.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C: Coeff> {
    ctx: C::Ctx,
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(ctx: &C::Ctx, nvars: usize) -> Self {
        MultiPoly { ctx: ctx.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn one(ctx: &C::Ctx, nvars: usize) -> Self {
        Self::constant(C::one(ctx), nvars)
    }

    pub fn constant(c: C, nvars: usize) -> Self {
        let mut p = Self::zero(&c.ctx(), nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    /// The variable `x_i` (0-based).
    pub fn var(ctx: &C::Ctx, nvars: usize, i: usize) -> Self {
        Self::monomial(C::one(ctx), Monomial::var(nvars, i))
    }

    pub fn monomial(c: C, m: Monomial) -> Self {
        let mut p = Self::zero(&c.ctx(), m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(ctx: &C::Ctx, nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(ctx, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, &c);
        }
        p
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(|| C::zero(&self.ctx))
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.get(i)).max().unwrap_or(0)
    }

    /// Leading term in grevlex order.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                let s = e.plus(c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx, self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, a)| {
                let v = a.times(c);
                (!v.is_zero()).then(|| (m.clone(), v))
            })
            .collect();
        MultiPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }

    /// `self * c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx, self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(k, a)| {
                let v = a.times(c);
                (!v.is_zero()).then(|| (k.mul(m), v))
            })
            .collect();
        MultiPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }

    /// `self - c * m * other`, the reduction step.
    pub fn sub_mul_term(&mut self, other: &Self, m: &Monomial, c: &C) {
        let nc = c.negated();
        for (k, a) in &other.terms {
            self.add_term(k.mul(m), &a.times(&nc));
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.ctx, self.nvars);
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

    /// `∂/∂x_i`, with exponents reduced in the characteristic: `∂(x^p)/∂x = 0`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (m, c) in &self.terms {
            let e = m.get(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            let factor = C::from_int(&self.ctx, e as i64);
            out.add_term(Monomial::from_exponents(exps), &c.times(&factor));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars, "point arity");
        let mut acc = C::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t.times(x);
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Composition `self(g_1, …, g_n)`; the `g_i` share an arity.
    pub fn substitute(&self, values: &[MultiPoly<C>]) -> MultiPoly<C> {
        assert_eq!(values.len(), self.nvars, "substitution arity");
        let target = values.first().map(|v| v.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<MultiPoly<C>>> = values.iter().map(|v| vec![MultiPoly::one(&self.ctx, target), v.clone()]).collect();
        let mut out = MultiPoly::zero(&self.ctx, target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone(), target);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &values[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Terms of total degree `< r` (reduction modulo `𝔪^r`).
    pub fn truncate(&self, r: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() < r).map(|(m, c)| (m.clone(), c.clone())).collect();
        MultiPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect();
        MultiPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Sets variable `i` to one and drops it (dehomogenization on a chart).
    pub fn dehomogenize(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ctx, self.nvars - 1);
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            e.remove(i);
            out.add_term(Monomial::from_exponents(e), c);
        }
        out
    }

    /// Inserts a new variable at position `i` making every term degree `d`.
    pub fn homogenize(&self, i: usize, d: u32) -> Result<Self> {
        let mut out = Self::zero(&self.ctx, self.nvars + 1);
        for (m, c) in &self.terms {
            let deg = m.degree();
            if deg > d {
                return Err(Error::InvalidInput(format!("term of degree {deg} exceeds homogenization degree {d}")));
            }
            let mut e = m.exponents().to_vec();
            e.insert(i, d - deg);
            out.add_term(Monomial::from_exponents(e), c);
        }
        Ok(out)
    }

    /// Exponent of the largest power of `x_i` dividing every term.
    pub fn valuation_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.get(i)).min().unwrap_or(0)
    }

    /// Divides by `x_i^k`; the caller guarantees divisibility.
    pub fn div_var_power(&self, i: usize, k: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                assert!(e[i] >= k, "not divisible by x_{i}^{k}");
                e[i] -= k;
                (Monomial::from_exponents(e), c.clone())
            })
            .collect();
        MultiPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }

    pub fn map_coeffs<D: Coeff>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero(ctx, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// Same polynomial viewed in `nvars + extra` variables (new ones appended).
    pub fn extend_vars(&self, extra: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.extend(std::iter::repeat(0).take(extra));
                (Monomial::from_exponents(e), c.clone())
            })
            .collect();
        MultiPoly { ctx: self.ctx.clone(), nvars: self.nvars + extra, terms }
    }

    /// Divides every coefficient by the leading one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inverse().expect("leading coefficient is a unit")),
        }
    }

    /// Formats with the given variable names.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            let cs = c.to_string();
            let atomic = !cs.contains(['+', '/']) && !cs[1..].contains('-');
            let coeff_str = if atomic { cs } else { format!("({cs})") };
            if !m.is_one() && c.is_one() {
                // coefficient omitted
            } else {
                factors.push(coeff_str);
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join("+")
    }

    fn default_names(&self) -> Vec<String> {
        (1..=self.nvars).map(|i| format!("x{i}")).collect()
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.default_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.to_string_with(&refs))
    }
}

impl<C: Coeff> Serialize for MultiPoly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a, C: Coeff> Add<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: &'a MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        big
    }
}

impl<'a, C: Coeff> Sub<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &'a MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &c.negated());
        }
        out
    }
}

impl<'a, C: Coeff> Mul<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &'a MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = MultiPoly::zero(&self.ctx, self.nvars);
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.add_term(ma.mul(mb), &a.times(b));
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect();
        MultiPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl<C: Coeff> $tr for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $f(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// Parses the canonical text encoding: terms `c*x1^a1*x2^a2` joined by `+`
/// (or `-`). Variables are `x1..xn`; `coeff` parses any other factor.
pub fn parse_with<C: Coeff>(
    ctx: &C::Ctx,
    s: &str,
    nvars: Option<usize>,
    coeff: &dyn Fn(&str) -> Result<C>,
) -> Result<MultiPoly<C>> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let terms = split_top_level(&cleaned)?;
    let mut parsed: Vec<(Vec<(usize, u32)>, C)> = Vec::new();
    let mut max_var = 0usize;
    for (negative, term) in terms {
        let mut c = C::one(ctx);
        let mut vars = Vec::new();
        for factor in split_factors(&term)? {
            if let Some((idx, e)) = parse_var(&factor)? {
                max_var = max_var.max(idx + 1);
                vars.push((idx, e));
            } else {
                c = c.times(&coeff(&factor)?);
            }
        }
        if negative {
            c = c.negated();
        }
        parsed.push((vars, c));
    }
    let n = match nvars {
        Some(n) if n < max_var => return Err(Error::Parse(format!("variable x{max_var} exceeds arity {n}"))),
        Some(n) => n,
        None => max_var,
    };
    let mut out = MultiPoly::zero(ctx, n);
    for (vars, c) in parsed {
        let mut e = vec![0u32; n];
        for (i, k) in vars {
            e[i] += k;
        }
        out.add_term(Monomial::from_exponents(e), &c);
    }
    Ok(out)
}

fn split_top_level(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse("unbalanced parentheses".into()));
                }
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && !matches!(prev, Some('^') | Some('*')) => {
                if !cur.is_empty() {
                    out.push((negative, std::mem::take(&mut cur)));
                } else if prev.is_some() && ch == '+' {
                    return Err(Error::Parse(format!("dangling operator in `{s}`")));
                }
                negative = ch == '-';
            }
            _ => cur.push(ch),
        }
        prev = Some(ch);
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced parentheses".into()));
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("trailing operator in `{s}`")));
    }
    out.push((negative, cur));
    Ok(out)
}

fn split_factors(term: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in term.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '*' if depth == 0 => {
                if cur.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{term}`")));
                }
                out.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("empty factor in `{term}`")));
    }
    out.push(cur);
    Ok(out)
}

fn parse_var(factor: &str) -> Result<Option<(usize, u32)>> {
    let Some(rest) = factor.strip_prefix('x') else { return Ok(None) };
    let (idx, exp) = match rest.split_once('^') {
        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
        None => (rest, 1),
    };
    let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad variable `{factor}`")))?;
    if idx == 0 {
        return Err(Error::Parse("variables are numbered from x1".into()));
    }
    Ok(Some((idx - 1, exp)))
}

impl MultiPoly<Fq> {
    /// Parses a polynomial over `F_{p^m}` in the canonical encoding.
    pub fn parse(field: &'static GaloisField, s: &str, nvars: Option<usize>) -> Result<Self> {
        parse_with(&field, s, nvars, &|f: &str| field.parse_element(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> &'static GaloisField {
        GaloisField::get(5, 1).unwrap()
    }

    #[test]
    fn gradient_examples() {
        let f = f5();
        let q = MultiPoly::parse(f, "x1^2+x2^2", None).unwrap();
        let g = q.gradient();
        assert_eq!(g[0], MultiPoly::parse(f, "2*x1", Some(2)).unwrap());
        assert_eq!(g[1], MultiPoly::parse(f, "2*x2", Some(2)).unwrap());

        let pth = MultiPoly::parse(f, "x1^5", None).unwrap();
        assert!(pth.partial(0).is_zero());

        let h = MultiPoly::parse(f, "x1^2*x2+x2^3", None).unwrap();
        let g = h.gradient();
        assert_eq!(g[0], MultiPoly::parse(f, "2*x1*x2", Some(2)).unwrap());
        assert_eq!(g[1], MultiPoly::parse(f, "x1^2+3*x2^2", Some(2)).unwrap());
    }

    #[test]
    fn canonical_text_round_trip() {
        let f = GaloisField::get(3, 2).unwrap();
        let p = MultiPoly::parse(f, "g^3*x1^2*x2 + 2*x2 - 1 + g*x3", None).unwrap();
        let s = p.to_string();
        assert_eq!(MultiPoly::parse(f, &s, Some(3)).unwrap(), p);
        assert_eq!(MultiPoly::parse(f5(), "0", None).unwrap().to_string(), "0");
        assert_eq!(MultiPoly::parse(f5(), "x1-x1", Some(1)).unwrap().to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        assert!(MultiPoly::parse(f5(), "x0+1", None).is_err());
        assert!(MultiPoly::parse(f5(), "x1+", None).is_err());
        assert!(MultiPoly::parse(f5(), "x3", Some(2)).is_err());
        assert!(MultiPoly::parse(f5(), "", None).is_err());
    }

    #[test]
    fn substitution_and_homogenization() {
        let f = f5();
        let p = MultiPoly::parse(f, "x1^2+x2", None).unwrap();
        let h = p.homogenize(0, 2).unwrap();
        assert_eq!(h, MultiPoly::parse(f, "x2^2+x1*x3", Some(3)).unwrap());
        assert_eq!(h.dehomogenize(0), p);
        let s = p.substitute(&[MultiPoly::parse(f, "x1+x2", Some(2)).unwrap(), MultiPoly::parse(f, "x2", Some(2)).unwrap()]);
        assert_eq!(s, MultiPoly::parse(f, "x1^2+2*x1*x2+x2^2+x2", Some(2)).unwrap());
    }
}
