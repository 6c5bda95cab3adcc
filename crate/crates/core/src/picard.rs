//! Divisor classes on `Y = P(O ⊕ L^n)` over `P^2` and its blow-ups at points,
//! adjunction for the desingularized cover, and isotriviality witnesses.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::algebra::{Coeff, Fq, GaloisField, Matrix, RatFunc};
use crate::error::{Error, Result};

/// Dimension of the base surface `X = P^2`.
pub const BASE_DIM: i64 = 2;

/// Integer class `a·ξ + b·H + Σ c_i E_i` with its lattice parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivClass {
    pub p: u32,
    pub d: u32,
    pub n: u32,
    pub xi: i64,
    pub h: i64,
    pub e: Vec<i64>,
}

impl DivClass {
    pub fn zero(p: u32, d: u32, n: u32, k: usize) -> Self {
        DivClass { p, d, n, xi: 0, h: 0, e: vec![0; k] }
    }

    pub fn k(&self) -> usize {
        self.e.len()
    }

    pub fn scale(&self, c: i64) -> Self {
        DivClass { xi: self.xi * c, h: self.h * c, e: self.e.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    /// `c·ΣE_i` in the same lattice.
    pub fn exceptional_sum(&self, c: i64) -> Self {
        DivClass { xi: 0, h: 0, e: vec![c; self.k()], ..self.clone() }
    }

    /// The common coefficient of the `E_i`, if they all agree.
    pub fn uniform_exceptional(&self) -> Option<i64> {
        match self.e.first() {
            None => Some(0),
            Some(&c) => self.e.iter().all(|&x| x == c).then_some(c),
        }
    }

    fn check(&self, o: &Self) {
        assert!(self.p == o.p && self.d == o.d && self.n == o.n && self.k() == o.k(), "classes from different lattices");
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, o: &DivClass) -> DivClass {
        self.check(o);
        DivClass { xi: self.xi + o.xi, h: self.h + o.h, e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect(), ..self.clone() }
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, o: &DivClass) -> DivClass {
        self + &(-o)
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        self.scale(-1)
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}ξ {:+}H", self.xi, self.h)?;
        for (i, c) in self.e.iter().enumerate() {
            if *c != 0 {
                write!(f, " {:+}E{}", c, i + 1)?;
            }
        }
        Ok(())
    }
}

/// `[Z_s] = p·ξ + npd·H`.
pub fn class_of_cover(p: u32, d: u32, n: u32) -> DivClass {
    class_of_cover_k(p, d, n, 0)
}

fn class_of_cover_k(p: u32, d: u32, n: u32, k: usize) -> DivClass {
    DivClass { xi: p as i64, h: (n * p * d) as i64, ..DivClass::zero(p, d, n, k) }
}

/// `K_Ỹ = -2ξ + (nd - 3)H + 2ΣE_i` after `k` point blow-ups of `Y`.
pub fn canonical_of_ambient(p: u32, d: u32, n: u32, k: usize) -> DivClass {
    DivClass { xi: -2, h: (n * d) as i64 - 3, e: vec![BASE_DIM; k], ..DivClass::zero(p, d, n, k) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Adjunction {
    /// `(p-2)ξ + (dn(p+1) - 3)H + (N-2)ΣE`.
    pub closed_form: DivClass,
    /// `K_Ỹ + [Z̃]`, with `[Z̃] = [Z_s] - 2ΣE`.
    pub summed: DivClass,
    pub agree: bool,
    pub exceptional_coefficient: Option<i64>,
}

/// `K_{Z̃_s} = (K_Ỹ + Z̃_s)|_{Z̃_s}` computed two ways.
pub fn adjunction_class(p: u32, d: u32, n: u32, k: usize) -> Adjunction {
    let (pi, di, ni) = (p as i64, d as i64, n as i64);
    let closed_form = DivClass { xi: pi - 2, h: di * ni * (pi + 1) - 3, e: vec![BASE_DIM - 2; k], ..DivClass::zero(p, d, n, k) };
    let ambient = canonical_of_ambient(p, d, n, k);
    let cover = class_of_cover_k(p, d, n, k);
    let strict = &cover - &cover.exceptional_sum(2);
    let summed = &ambient + &strict;
    let agree = closed_form == summed;
    Adjunction { exceptional_coefficient: summed.uniform_exceptional(), closed_form, summed, agree }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub n: u32,
    pub xi_coefficient: i64,
    pub h_coefficient: i64,
    pub criterion: String,
}

/// Least `n` for which the adjunction class is (big and nef) + effective by
/// the coefficient criterion `p - 2 ≥ 1`, `H`-coefficient `≥ 1`, `(N-2) ≥ 0`.
pub fn general_type_threshold(p: u32, d: u32) -> Result<Threshold> {
    if p < 3 {
        return Err(Error::EvenCharacteristic);
    }
    if d == 0 {
        return Err(Error::Param("d must be positive".into()));
    }
    let mut n = 1;
    loop {
        let a = adjunction_class(p, d, n, 0).closed_form;
        if a.xi >= 1 && a.h >= 1 {
            return Ok(Threshold {
                n,
                xi_coefficient: a.xi,
                h_coefficient: a.h,
                criterion: "xi-coefficient >= 1 and H-coefficient >= 1 (big and nef), exceptional part (N-2)E >= 0 (effective)".into(),
            });
        }
        n += 1;
    }
}

/// Ordered points of `P^N`, each scaled so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointConfig {
    dim: usize,
    points: Vec<Vec<Fq>>,
}

impl PointConfig {
    pub fn new(dim: usize, points: Vec<Vec<Fq>>) -> Result<Self> {
        let mut out = Vec::with_capacity(points.len());
        for pt in points {
            if pt.len() != dim + 1 {
                return Err(Error::InvalidInput(format!("point with {} coordinates in P^{dim}", pt.len())));
            }
            out.push(normalize_vector(&pt).ok_or(Error::ZeroPoint)?);
        }
        Ok(PointConfig { dim, points: out })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<Fq>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn field(&self) -> Option<&'static GaloisField> {
        self.points.first().map(|p| p[0].field())
    }

    /// Image under a projective transformation.
    pub fn transform(&self, m: &Matrix<Fq>) -> Result<Self> {
        PointConfig::new(self.dim, self.points.iter().map(|p| m.mul_vec(p)).collect())
    }
}

fn normalize_vector(v: &[Fq]) -> Option<Vec<Fq>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv()?;
    Some(v.iter().map(|x| *x * inv).collect())
}

fn proportional(a: &[Fq], b: &[Fq]) -> bool {
    normalize_vector(a) == normalize_vector(b)
}

/// Matrix sending `e_i ↦ a_i` (up to scalars) for `i ≤ N` and `(1,…,1) ↦ a_{N+1}`.
/// On failure returns the indices witnessing degeneracy.
fn frame_matrix(points: &[Vec<Fq>], dim: usize) -> std::result::Result<Matrix<Fq>, Vec<usize>> {
    let f = points[0][0].field();
    let cols = Matrix::from_rows(&f, (0..=dim).map(|r| (0..=dim).map(|c| points[c][r]).collect()).collect());
    let Some(lambda) = cols.solve(&points[dim + 1]) else {
        return Err((0..=dim).collect());
    };
    if cols.rank() <= dim {
        return Err((0..=dim).collect());
    }
    if let Some(i) = lambda.iter().position(|l| l.is_zero()) {
        return Err((0..=dim + 1).filter(|&j| j != i).collect());
    }
    let mut m = cols;
    for c in 0..=dim {
        for r in 0..=dim {
            let v = *m.get(r, c) * lambda[c];
            m.set(r, c, v);
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum PglVerdict {
    /// `witness · a_i ∝ b_i` for all `i`; first nonzero entry scaled to 1.
    Equivalent { witness: Matrix<Fq> },
    Inequivalent { first_mismatch: usize },
}

impl PglVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, PglVerdict::Equivalent { .. })
    }
}

/// Decides whether `B` lies in the `PGL(N+1)`-orbit of `A` (ordered matching).
pub fn pgl_equivalence(a: &PointConfig, b: &PointConfig) -> Result<PglVerdict> {
    if a.dim != b.dim || a.len() != b.len() {
        return Err(Error::InvalidInput("configurations differ in dimension or size".into()));
    }
    let dim = a.dim;
    if a.len() < dim + 2 {
        return Err(Error::InvalidInput(format!("need at least {} points in P^{dim}", dim + 2)));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let ma = frame_matrix(&a.points, dim).map_err(Error::GeneralPosition)?;
    let mb = match frame_matrix(&b.points, dim) {
        Ok(m) => m,
        Err(idx) => return Ok(PglVerdict::Inequivalent { first_mismatch: *idx.iter().max().unwrap_or(&0) }),
    };
    let t = mb.mul(&ma.inverse().expect("frame matrix is invertible"));
    for (i, (pa, pb)) in a.points.iter().zip(&b.points).enumerate() {
        if !proportional(&t.mul_vec(pa), pb) {
            return Ok(PglVerdict::Inequivalent { first_mismatch: i });
        }
    }
    Ok(PglVerdict::Equivalent { witness: normalize_matrix(&t) })
}

/// Scales a nonzero matrix so its first nonzero entry (row-major) is 1.
pub fn normalize_matrix(m: &Matrix<Fq>) -> Matrix<Fq> {
    let rows = m.to_rows();
    let flat: Vec<Fq> = rows.iter().flatten().copied().collect();
    match flat.iter().find(|x| !x.is_zero()) {
        Some(lead) => m.scale(&lead.inv().expect("nonzero")),
        None => m.clone(),
    }
}

/// Cross-ratio `(a, b; c, d)` of four points of `P^1` given as `(x0 : x1)`;
/// `None` when it is undefined (a repeated point).
pub fn cross_ratio(a: &[Fq], b: &[Fq], c: &[Fq], d: &[Fq]) -> Option<Fq> {
    let det = |u: &[Fq], v: &[Fq]| u[0] * v[1] - u[1] * v[0];
    let num = det(a, c) * det(b, d);
    let den = det(a, d) * det(b, c);
    (!den.is_zero()).then(|| num / den)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JInvariant {
    pub j: RatFunc,
    pub isotrivial: bool,
}

/// `j = 1728·4a^3 / (4a^3 + 27b^2)` for `y^2 z = x^3 + a x z^2 + b z^3`;
/// isotrivial exactly when `j` is constant.
pub fn j_invariant(a: &RatFunc, b: &RatFunc) -> Result<JInvariant> {
    let f = a.field();
    let p = f.characteristic();
    if p < 5 {
        return Err(Error::SmallCharacteristic(p));
    }
    if b.field() != f {
        return Err(Error::FieldMismatch);
    }
    let four_a3 = RatFunc::from_int(&f, 4).times(&a.pow(3));
    let disc = four_a3.plus(&RatFunc::from_int(&f, 27).times(&b.pow(2)));
    let inv = disc.inverse().ok_or(Error::SingularCubic)?;
    let j = RatFunc::from_int(&f, 1728).times(&four_a3).times(&inv);
    let isotrivial = j.is_constant();
    Ok(JInvariant { j, isotrivial })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cover_and_ambient_classes() {
        assert_eq!(class_of_cover(3, 1, 1), DivClass { xi: 3, h: 3, ..DivClass::zero(3, 1, 1, 0) });
        assert_eq!(class_of_cover(5, 1, 2), DivClass { xi: 5, h: 10, ..DivClass::zero(5, 1, 2, 0) });
        assert_eq!(class_of_cover(3, 2, 1), DivClass { xi: 3, h: 6, ..DivClass::zero(3, 2, 1, 0) });
        assert_eq!(canonical_of_ambient(3, 1, 5, 0), DivClass { xi: -2, h: 2, ..DivClass::zero(3, 1, 5, 0) });
        let k4 = canonical_of_ambient(3, 1, 5, 4);
        assert_eq!(k4.e, vec![2; 4]);
        assert_eq!(canonical_of_ambient(3, 1, 3, 0).h, 0);
    }

    #[test]
    fn adjunction_examples() {
        let a = adjunction_class(3, 1, 1, 3);
        assert!(a.agree);
        assert_eq!((a.closed_form.xi, a.closed_form.h), (1, 1));
        assert_eq!(a.exceptional_coefficient, Some(0));
        let b = adjunction_class(3, 1, 5, 2);
        assert!(b.agree);
        assert_eq!((b.summed.xi, b.summed.h), (1, 17));
    }

    #[test]
    fn thresholds() {
        assert_eq!(general_type_threshold(3, 1).unwrap().n, 1);
        assert_eq!(general_type_threshold(3, 3).unwrap().h_coefficient, 9);
        assert_eq!(general_type_threshold(5, 1).unwrap().n, 1);
    }

    #[test]
    fn cross_ratio_mismatch() {
        let f = GaloisField::get(7, 1).unwrap();
        let pt = |a: i64, b: i64| vec![f.from_int(a), f.from_int(b)];
        let a = PointConfig::new(1, vec![pt(1, 0), pt(1, 1), pt(0, 1), pt(1, 3)]).unwrap();
        let b = PointConfig::new(1, vec![pt(1, 0), pt(1, 1), pt(0, 1), pt(1, 4)]).unwrap();
        assert_eq!(pgl_equivalence(&a, &b).unwrap(), PglVerdict::Inequivalent { first_mismatch: 3 });
        match pgl_equivalence(&a, &a).unwrap() {
            PglVerdict::Equivalent { witness } => assert_eq!(witness, Matrix::identity(&f, 2)),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn degenerate_frame_reported() {
        let f = GaloisField::get(5, 1).unwrap();
        let pt = |v: [i64; 3]| v.iter().map(|&x| f.from_int(x)).collect::<Vec<_>>();
        let a = PointConfig::new(2, vec![pt([1, 0, 0]), pt([0, 1, 0]), pt([1, 1, 0]), pt([1, 1, 1])]).unwrap();
        assert!(matches!(pgl_equivalence(&a, &a), Err(Error::GeneralPosition(_))));
    }

    #[test]
    fn j_examples() {
        let f = GaloisField::get(7, 1).unwrap();
        let t = RatFunc::t(f);
        let zero = RatFunc::zero(&f);
        let one = RatFunc::one(&f);
        let j = j_invariant(&zero, &t).unwrap();
        assert!(j.isotrivial && j.j.is_zero());
        let j = j_invariant(&one, &zero).unwrap();
        assert_eq!(j.j.as_constant(), Some(f.from_int(1728)));
        let j = j_invariant(&t, &one).unwrap();
        assert!(!j.isotrivial);
        let expect = RatFunc::parse(f, "(6912*t^3)/(4*t^3+27)", "t").unwrap();
        assert_eq!(j.j, expect);
        let f3 = GaloisField::get(3, 1).unwrap();
        assert_eq!(j_invariant(&RatFunc::t(f3), &RatFunc::one(&f3)), Err(Error::SmallCharacteristic(3)));
        assert_eq!(j_invariant(&zero, &zero), Err(Error::SingularCubic));
    }
}
