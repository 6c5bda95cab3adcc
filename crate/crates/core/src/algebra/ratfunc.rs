//! Rational functions `k(t)` over `k = F_{p^m}`.

use std::fmt;

use serde::{Serialize, Serializer};

use super::coeff::Coeff;
use super::field::{Fq, GaloisField};
use super::poly::{parse_with, MultiPoly};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return RatFunc { den: UniPoly::one(num.field()), num };
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading().inv().expect("nonzero denominator");
        RatFunc { num: num.scale(lc), den: den.scale(lc) }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        let den = UniPoly::one(p.field());
        RatFunc { num: p, den }
    }

    pub fn constant(c: Fq) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// The variable `t`.
    pub fn t(field: &'static GaloisField) -> Self {
        Self::from_poly(UniPoly::x(field))
    }

    pub fn field(&self) -> &'static GaloisField {
        self.num.field()
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Whether the function lies in `k`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Fq> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// `max(deg num, deg den)`: the degree of the map `P^1 -> P^1`.
    pub fn degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// The `p`-th root inside `k(t)`, when `self` lies in `k(t^p)`.
    pub fn pth_root_in_field(&self) -> Option<Self> {
        let p = self.field().characteristic() as usize;
        let root = |u: &UniPoly| -> Option<UniPoly> {
            let c = u.coeffs();
            if c.iter().enumerate().any(|(j, x)| j % p != 0 && !x.is_zero()) {
                return None;
            }
            Some(UniPoly::new(u.field(), c.iter().step_by(p).map(|x| x.pth_root()).collect()))
        };
        Some(Self::reduce(root(&self.num)?, root(&self.den)?))
    }

    /// `self(t^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        Self::reduce(self.num.inflate(k), self.den.inflate(k))
    }

    /// Value at `t = a`; `None` at a pole.
    pub fn eval(&self, a: Fq) -> Option<Fq> {
        let d = self.den.eval(a);
        (!d.is_zero()).then(|| self.num.eval(a) / d)
    }

    pub fn map_field(&self, to: &'static GaloisField, f: impl Fn(Fq) -> Fq + Copy) -> Self {
        Self::reduce(self.num.map(to, f), self.den.map(to, f))
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.to_string_var(var)
        } else {
            format!("({})/({})", self.num.to_string_var(var), self.den.to_string_var(var))
        }
    }

    /// Parses `num` or `num/den`, each optionally parenthesized.
    pub fn parse(field: &'static GaloisField, s: &str, var: &str) -> Result<Self> {
        let s = s.trim();
        let strip = |x: &str| {
            let x = x.trim();
            if x.starts_with('(') && x.ends_with(')') {
                x[1..x.len() - 1].to_string()
            } else {
                x.to_string()
            }
        };
        let mut depth = 0;
        let mut split = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => split = Some(i),
                _ => {}
            }
        }
        match split {
            Some(i) => Self::new(UniPoly::parse(field, &strip(&s[..i]), var)?, UniPoly::parse(field, &strip(&s[i + 1..]), var)?),
            None => Ok(Self::from_poly(UniPoly::parse(field, &strip(s), var)?)),
        }
    }
}

impl MultiPoly<RatFunc> {
    /// Parses a polynomial in `x1..xn` whose coefficients are rational
    /// functions in `var`, e.g. `(t^2+1)*x1^2 + t*x2`.
    pub fn parse_kt(field: &'static GaloisField, s: &str, nvars: Option<usize>, var: &str) -> Result<Self> {
        parse_with(&field, s, nvars, &|f: &str| RatFunc::parse(field, f, var))
    }
}

/// `p`-th root of `a(t^p)` in `k(s)`, `s^p = t`: the rational function
/// `b(s)` with `b(s)^p = a(s^p)`, obtained by taking `p`-th roots of the
/// coefficients of `a` (the input may be any element of `k(t)`).
pub fn ratfunc_pth_root(a: &RatFunc) -> RatFunc {
    let root = |p: &UniPoly| UniPoly::new(p.field(), p.coeffs().iter().map(|c| c.pth_root()).collect());
    RatFunc::reduce(root(&a.num), root(&a.den))
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("t"))
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Coeff for RatFunc {
    type Ctx = &'static GaloisField;

    fn ctx(&self) -> Self::Ctx {
        self.field()
    }
    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_poly(UniPoly::zero(ctx))
    }
    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_poly(UniPoly::one(ctx))
    }
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self {
        Self::constant(ctx.from_int(n))
    }
    fn characteristic(ctx: &Self::Ctx) -> u32 {
        ctx.characteristic()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::reduce(&self.num + &rhs.num, self.den.clone());
        }
        Self::reduce(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        Self::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
    fn negated(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
    fn inverse(&self) -> Option<Self> {
        (!self.num.is_zero()).then(|| Self::reduce(self.den.clone(), self.num.clone()))
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_with_monic_denominator() {
        let f = GaloisField::get(5, 1).unwrap();
        let r = RatFunc::new(UniPoly::from_ints(f, &[0, 2, 2]), UniPoly::from_ints(f, &[0, 3])).unwrap();
        // (2t^2+2t)/(3t) = (2t+2)/3 = 4t+4
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &UniPoly::from_ints(f, &[4, 4]));
        assert!(RatFunc::new(UniPoly::one(f), UniPoly::zero(f)).is_err());
    }

    #[test]
    fn pth_root_examples() {
        let f = GaloisField::get(3, 1).unwrap();
        // t -> s
        assert_eq!(ratfunc_pth_root(&RatFunc::t(f)), RatFunc::t(f));
        // t^2 + c -> s^2 + c in characteristic 3
        for c in 0..3 {
            let a = RatFunc::parse(f, &format!("t^2+{c}"), "t").unwrap();
            let b = ratfunc_pth_root(&a);
            assert_eq!(b, a);
            assert_eq!(b.pow(3), a.inflate(3));
        }
        assert!(ratfunc_pth_root(&RatFunc::one(&f)).is_one());
    }

    #[test]
    fn pth_root_over_extension() {
        let f = GaloisField::get(3, 2).unwrap();
        let a = RatFunc::parse(f, "(g*t^2+1)/(t+g^5)", "t").unwrap();
        let b = ratfunc_pth_root(&a);
        assert_eq!(b.pow(3), a.inflate(3));
    }

    #[test]
    fn parse_fraction() {
        let f = GaloisField::get(7, 1).unwrap();
        let r = RatFunc::parse(f, "(t^2-1)/(t-1)", "t").unwrap();
        assert_eq!(r, RatFunc::parse(f, "t+1", "t").unwrap());
        assert_eq!(r.eval(f.from_int(2)), Some(f.from_int(3)));
    }
}
