//! Sections `P^1 -> P^1` whose graphs avoid a finite set.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Fq, GaloisField, UniPoly};
use crate::error::Result;

/// Point of `P^1(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum P1Point {
    Finite(Fq),
    Infinity,
}

impl P1Point {
    /// From homogeneous coordinates `(x0 : x1)`, value `x1/x0`.
    pub fn from_pair(x0: Fq, x1: Fq) -> Option<Self> {
        match (x0.is_zero(), x1.is_zero()) {
            (true, true) => None,
            (true, false) => Some(P1Point::Infinity),
            _ => Some(P1Point::Finite(x1 / x0)),
        }
    }

    pub fn map_field(self, f: impl Fn(Fq) -> Fq) -> Self {
        match self {
            P1Point::Finite(a) => P1Point::Finite(f(a)),
            P1Point::Infinity => P1Point::Infinity,
        }
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(a) => write!(f, "{a}"),
            P1Point::Infinity => write!(f, "∞"),
        }
    }
}

/// The map `b ↦ (g0(b) : g1(b))` with coprime `g0, g1` and
/// `max(deg g0, deg g1) = degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub g0: UniPoly,
    pub g1: UniPoly,
    pub degree: u32,
}

impl Section {
    pub fn new(g0: UniPoly, g1: UniPoly) -> Option<Self> {
        if (g0.is_zero() && g1.is_zero()) || !g0.gcd(&g1).is_one() {
            return None;
        }
        let degree = g0.deg0().max(g1.deg0()) as u32;
        Some(Section { g0, g1, degree })
    }

    pub fn eval(&self, b: P1Point) -> P1Point {
        let (x0, x1) = match b {
            P1Point::Finite(a) => (self.g0.eval(a), self.g1.eval(a)),
            P1Point::Infinity => (self.g0.coeff(self.degree as usize), self.g1.coeff(self.degree as usize)),
        };
        P1Point::from_pair(x0, x1).expect("coprime pair has no common zero")
    }

    pub fn avoids(&self, w: &[(P1Point, P1Point)]) -> bool {
        w.iter().all(|&(b, q)| self.eval(b) != q)
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.g0, self.g1)
    }
}

/// Sections found by [`sections_avoiding`].
#[derive(Clone, Debug, Serialize)]
pub struct SectionSearch {
    pub degree: u32,
    /// Order of the field the sections are defined over.
    pub field_order: u32,
    pub enlarged: bool,
    pub exhaustive: bool,
    pub sections: Vec<Section>,
}

const EXHAUSTIVE_LIMIT: u64 = 1 << 20;
const RANDOM_ATTEMPTS: usize = 20_000;

fn decode(field: &'static GaloisField, mut idx: u64, len: usize) -> Vec<Fq> {
    let q = field.order() as u64;
    (0..len)
        .map(|_| {
            let c = field.from_encoding((idx % q) as u32);
            idx /= q;
            c
        })
        .collect()
}

/// Candidate normalized pairs: `g0` monic of degree `≤ m`, `g1` of degree
/// `≤ m`, plus `(0 : 1)` for `m = 0`.
fn candidate(field: &'static GaloisField, m: u32, g0_deg: usize, g0_idx: u64, g1_idx: u64) -> Option<Section> {
    let mut c0 = decode(field, g0_idx, g0_deg);
    c0.push(field.one());
    let g0 = UniPoly::new(field, c0);
    let g1 = UniPoly::new(field, decode(field, g1_idx, m as usize + 1));
    Section::new(g0, g1).filter(|s| s.degree == m)
}

/// Up to `limit` sections of degree `m` over `field` avoiding `w`. Small
/// search spaces are enumerated exhaustively in a fixed order; large ones
/// are sampled from a seeded generator. If nothing is found the field is
/// replaced by its quadratic extension.
pub fn sections_avoiding(
    w: &[(P1Point, P1Point)],
    m: u32,
    field: &'static GaloisField,
    limit: usize,
    seed: u64,
) -> Result<SectionSearch> {
    let mut field = field;
    let mut w: Vec<(P1Point, P1Point)> = w.to_vec();
    let mut enlarged = false;
    loop {
        let q = field.order() as u64;
        let mut sections = Vec::new();
        if m == 0 {
            let inf = Section::new(UniPoly::zero(field), UniPoly::one(field)).expect("(0:1)");
            if inf.avoids(&w) {
                sections.push(inf);
            }
        }
        let g1_space = q.checked_pow(m + 1);
        let total: Option<u64> = (0..=m).try_fold(0u64, |acc, d| Some(acc + q.checked_pow(d)?.checked_mul(g1_space?)?));
        let exhaustive = total.is_some_and(|t| t <= EXHAUSTIVE_LIMIT);
        if exhaustive {
            'outer: for d in 0..=m as usize {
                for i0 in 0..q.pow(d as u32) {
                    for i1 in 0..g1_space.expect("bounded") {
                        if sections.len() >= limit {
                            break 'outer;
                        }
                        if let Some(s) = candidate(field, m, d, i0, i1).filter(|s| s.avoids(&w)) {
                            sections.push(s);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..RANDOM_ATTEMPTS {
                if sections.len() >= limit {
                    break;
                }
                let d = rng.gen_range(0..=m as usize);
                let c0: Vec<Fq> = (0..d).map(|_| field.from_encoding(rng.gen_range(0..q as u32))).collect();
                let c1: Vec<Fq> = (0..=m).map(|_| field.from_encoding(rng.gen_range(0..q as u32))).collect();
                let mut c0 = c0;
                c0.push(field.one());
                if let Some(s) = Section::new(UniPoly::new(field, c0), UniPoly::new(field, c1)) {
                    if s.degree == m && s.avoids(&w) && !sections.contains(&s) {
                        sections.push(s);
                    }
                }
            }
        }
        if !sections.is_empty() || limit == 0 {
            return Ok(SectionSearch { degree: m, field_order: field.order(), enlarged, exhaustive, sections });
        }
        let bigger = field.extension(2)?;
        let emb = field.embedding_into(bigger)?;
        w = w.into_iter().map(|(b, q)| (b.map_field(|a| emb.apply(a)), q.map_field(|a| emb.apply(a)))).collect();
        field = bigger;
        enlarged = true;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_avoidance_set() {
        let f = GaloisField::get(3, 1).unwrap();
        let s = sections_avoiding(&[], 0, f, 100, 0).unwrap();
        assert_eq!(s.sections.len(), 4);
    }

    #[test]
    fn identity_avoids_zero_infinity() {
        let f = GaloisField::get(5, 1).unwrap();
        let id = Section::new(UniPoly::one(f), UniPoly::x(f)).unwrap();
        assert!(id.avoids(&[(P1Point::Finite(f.zero()), P1Point::Infinity)]));
        assert_eq!(id.eval(P1Point::Infinity), P1Point::Infinity);
    }

    #[test]
    fn linear_sections_over_f5() {
        let f = GaloisField::get(5, 1).unwrap();
        let w = [(P1Point::Finite(f.zero()), P1Point::Finite(f.zero())), (P1Point::Finite(f.one()), P1Point::Finite(f.one()))];
        let s = sections_avoiding(&w, 1, f, usize::MAX, 0).unwrap();
        assert!(s.exhaustive);
        let target = Section::new(UniPoly::one(f), UniPoly::from_ints(f, &[2, 1])).unwrap();
        assert!(s.sections.contains(&target));
        assert!(s.sections.iter().all(|g| g.avoids(&w) && g.degree == 1));
    }

    #[test]
    fn enlarges_when_blocked() {
        let f = GaloisField::get(3, 1).unwrap();
        let mut w = Vec::new();
        for q in f.elements().map(P1Point::Finite).chain([P1Point::Infinity]) {
            w.push((P1Point::Finite(f.zero()), q));
        }
        let s = sections_avoiding(&w, 0, f, 10, 0).unwrap();
        assert!(s.enlarged);
        assert_eq!(s.field_order, 9);
        assert!(!s.sections.is_empty());
    }
}
