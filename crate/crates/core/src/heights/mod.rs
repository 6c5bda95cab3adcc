//! Heights of points of `P^N` over `K = k(t)`.
//!
//! A point is stored as a primitive tuple of polynomials in `t`; its height
//! is the largest coordinate degree, which is the degree of the pulled back
//! hyperplane class along the associated section `P^1 -> P^N`.

mod northcott;
mod sections;
mod vojta;

use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::algebra::monomial::monomials_of_degree;
use crate::algebra::{Coeff, Fq, GaloisField, Matrix, Monomial, MultiPoly, RatFunc, UniPoly};
use crate::error::{Error, Result};

pub use northcott::{
    example1_constant_points, example2_blowup_config, example3_bounded_degree, Example1, Example2, Example3, FiberComparison,
};
pub use sections::{sections_avoiding, P1Point, Section, SectionSearch};
pub use vojta::{vojta_violation_demo, Violation, VojtaDemo, VojtaParams, VojtaPoint, VIOLATION_GRID};

/// Point of `P^N(k(t))` in normalized form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ProjPoint {
    coords: Vec<UniPoly>,
}

impl ProjPoint {
    /// Normalizes polynomial coordinates.
    pub fn new(coords: Vec<UniPoly>) -> Result<Self> {
        normalize(&coords.into_iter().map(RatFunc::from_poly).collect::<Vec<_>>())
    }

    pub fn from_constants(coords: &[Fq]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| UniPoly::constant(c)).collect())
    }

    pub fn coords(&self) -> &[UniPoly] {
        &self.coords
    }

    /// Ambient dimension `N`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn field(&self) -> &'static GaloisField {
        self.coords[0].field()
    }

    pub fn height(&self) -> u64 {
        weil_height(self)
    }

    pub fn is_constant(&self) -> bool {
        self.coords.iter().all(UniPoly::is_constant)
    }

    pub fn as_ratfuncs(&self) -> Vec<RatFunc> {
        self.coords.iter().cloned().map(RatFunc::from_poly).collect()
    }

    /// Specialization at `t = b`, a point of `P^N(k)`.
    pub fn fiber(&self, b: Fq) -> Vec<Fq> {
        self.coords.iter().map(|c| c.eval(b)).collect()
    }

    /// Specialization at `t = ∞`: coefficients of `t^h`.
    pub fn fiber_at_infinity(&self) -> Vec<Fq> {
        let h = self.height() as usize;
        self.coords.iter().map(|c| c.coeff(h)).collect()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Clears denominators, removes the content and makes the first nonzero
/// coordinate monic.
pub fn normalize(raw: &[RatFunc]) -> Result<ProjPoint> {
    let Some(first) = raw.first() else {
        return Err(Error::InvalidInput("a projective point needs at least one coordinate".into()));
    };
    let field = first.field();
    if raw.iter().any(|c| c.field() != field) {
        return Err(Error::FieldMismatch);
    }
    if raw.iter().all(Coeff::is_zero) {
        return Err(Error::ZeroPoint);
    }
    let mut lcm = UniPoly::one(field);
    for c in raw {
        let g = lcm.gcd(c.den());
        lcm = (&lcm * c.den()).div_exact(&g).expect("gcd divides");
    }
    let mut coords: Vec<UniPoly> =
        raw.iter().map(|c| c.num() * &lcm.div_exact(c.den()).expect("denominator divides the lcm")).collect();
    let content = coords.iter().fold(UniPoly::zero(field), |g, c| g.gcd(c));
    let lead = coords.iter().find(|c| !c.is_zero()).expect("nonzero coordinate").clone();
    let unit = lead.div_exact(&content).expect("content divides").leading().inv().expect("nonzero");
    for c in &mut coords {
        *c = c.div_exact(&content).expect("content divides").scale(unit);
    }
    Ok(ProjPoint { coords })
}

/// `max_i deg_t x_i` for a normalized point.
pub fn weil_height(point: &ProjPoint) -> u64 {
    point.coords.iter().filter(|c| !c.is_zero()).map(|c| c.deg0() as u64).max().unwrap_or(0)
}

/// Outcome of comparing `h(φ(P))` with `d·h(P)`.
#[derive(Clone, Debug, Serialize)]
pub struct FunctorialityReport {
    pub image: ProjPoint,
    pub source_height: u64,
    pub image_height: u64,
    pub degree: u32,
    /// Largest degree of a coefficient of the forms.
    pub constant: u64,
    /// `h(φ(P)) − d·h(P)`.
    pub difference: i64,
    pub bound_holds: bool,
}

/// Applies the morphism given by homogeneous forms of a common degree.
pub fn functoriality_check(forms: &[MultiPoly<RatFunc>], point: &ProjPoint) -> Result<FunctorialityReport> {
    let n = point.dim() + 1;
    let mut degree = None;
    for f in forms {
        if f.nvars() != n {
            return Err(Error::InvalidInput(format!("form in {} variables applied to a point of P^{}", f.nvars(), n - 1)));
        }
        if f.is_zero() {
            continue;
        }
        if !f.is_homogeneous() {
            return Err(Error::InvalidInput(format!("form {f} is not homogeneous")));
        }
        let d = f.degree().expect("nonzero");
        if degree.is_some_and(|e| e != d) {
            return Err(Error::InvalidInput("forms have different degrees".into()));
        }
        degree = Some(d);
    }
    let degree = degree.ok_or(Error::Undefined)?;
    let x = point.as_ratfuncs();
    let values: Vec<RatFunc> = forms.iter().map(|f| f.eval(&x)).collect();
    if values.iter().all(Coeff::is_zero) {
        return Err(Error::Undefined);
    }
    let image = normalize(&values)?;
    let constant = forms.iter().flat_map(|f| f.terms().map(|(_, c)| c.degree() as u64)).max().unwrap_or(0);
    let source_height = point.height();
    let image_height = image.height();
    let difference = image_height as i64 - degree as i64 * source_height as i64;
    let bound_holds = image_height <= degree as u64 * source_height + constant;
    Ok(FunctorialityReport { image, source_height, image_height, degree, constant, difference, bound_holds })
}

/// Result of testing whether a finite family lies on a hypersurface of
/// degree `D`.
#[derive(Clone, Debug, Serialize)]
pub enum Density {
    /// The evaluation matrix has full column rank.
    Dense { degree: u32, rank: usize, monomials: usize },
    /// A nonzero form of degree `D` vanishing on every point.
    VanishingForm { degree: u32, form: MultiPoly<RatFunc> },
}

impl Density {
    pub fn is_dense(&self) -> bool {
        matches!(self, Density::Dense { .. })
    }

    /// Re-evaluates a vanishing form at every point.
    pub fn verify(&self, points: &[ProjPoint]) -> bool {
        match self {
            Density::Dense { .. } => true,
            Density::VanishingForm { form, .. } => {
                !form.is_zero() && points.iter().all(|p| form.eval(&p.as_ratfuncs()).is_zero())
            }
        }
    }
}

/// Evaluates all degree-`D` monomials in `N+1` variables at the points and
/// computes the rank over `k(t)`.
pub fn density_check(field: &'static GaloisField, points: &[ProjPoint], n: usize, degree: u32) -> Result<Density> {
    if let Some(p) = points.iter().find(|p| p.dim() != n) {
        return Err(Error::InvalidInput(format!("point {p} is not in P^{n}")));
    }
    let monos = monomials_of_degree(n + 1, degree);
    let rows: Vec<Vec<RatFunc>> = points
        .iter()
        .map(|p| {
            let x = p.as_ratfuncs();
            monos.iter().map(|m| MultiPoly::monomial(RatFunc::one(&field), m.clone()).eval(&x)).collect()
        })
        .collect();
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(&field, rows.clone()).rank() };
    if rank == monos.len() {
        return Ok(Density::Dense { degree, rank, monomials: monos.len() });
    }
    let kernel = if rows.is_empty() {
        let mut v = vec![RatFunc::zero(&field); monos.len()];
        v[0] = RatFunc::one(&field);
        v
    } else {
        Matrix::from_rows(&field, rows).kernel().into_iter().next().expect("rank deficit gives a kernel vector")
    };
    let scale = kernel.iter().fold(UniPoly::one(field), |l, c| {
        let g = l.gcd(c.den());
        (&l * c.den()).div_exact(&g).expect("gcd divides")
    });
    let scale = RatFunc::from_poly(scale);
    let form = MultiPoly::from_terms(
        &field,
        n + 1,
        monos.into_iter().zip(kernel).map(|(m, c): (Monomial, RatFunc)| (m, c.times(&scale))),
    );
    Ok(Density::VanishingForm { degree, form })
}

/// `[L:K]`, genus of `B_L` and `d_L = (2g_L − 2)/[L:K]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantRecord {
    pub degree: u32,
    pub genus: i64,
    pub d: Rational64,
}

impl DiscriminantRecord {
    /// `L = K`, `B = P^1`.
    pub fn rational() -> Self {
        Self::new(1, 0)
    }

    pub fn new(degree: u32, genus: i64) -> Self {
        DiscriminantRecord { degree, genus, d: Rational64::new(2 * genus - 2, degree as i64) }
    }

    pub fn is_consistent(&self) -> bool {
        self.degree >= 1 && self.d == Rational64::new(2 * self.genus - 2, self.degree as i64)
    }
}

/// One point of a family together with its recorded invariants.
#[derive(Clone, Debug, Serialize)]
pub struct PointRecord {
    /// Coordinates over `K`, when the point is `K`-rational.
    pub point: Option<ProjPoint>,
    pub label: String,
    pub height: Rational64,
    pub disc: DiscriminantRecord,
    pub flags: Vec<String>,
}

impl PointRecord {
    pub fn rational(point: ProjPoint, label: impl Into<String>) -> Self {
        let height = Rational64::from_integer(point.height() as i64);
        PointRecord { point: Some(point), label: label.into(), height, disc: DiscriminantRecord::rational(), flags: Vec::new() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PointFamily {
    pub label: String,
    pub records: Vec<PointRecord>,
}

impl PointFamily {
    pub fn new(label: impl Into<String>) -> Self {
        PointFamily { label: label.into(), records: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        self.records.iter().filter_map(|r| r.point.clone()).collect()
    }

    pub fn max_height(&self) -> Option<Rational64> {
        self.records.iter().map(|r| r.height).max()
    }

    /// Recomputes heights of `K`-rational points and discriminant identities.
    pub fn verify(&self) -> bool {
        self.records.iter().all(|r| {
            let height_ok = match &r.point {
                Some(p) => {
                    let renorm = normalize(&p.as_ratfuncs()).map(|q| &q == p).unwrap_or(false);
                    renorm && r.height == Rational64::from_integer(p.height() as i64)
                }
                None => true,
            };
            height_ok && r.disc.is_consistent()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> &'static GaloisField {
        GaloisField::get(p, 1).unwrap()
    }

    fn rf(field: &'static GaloisField, s: &str) -> RatFunc {
        RatFunc::parse(field, s, "t").unwrap()
    }

    #[test]
    fn normalization_examples() {
        let k = f(5);
        let a = normalize(&[rf(k, "t^2"), rf(k, "t")]).unwrap();
        assert_eq!(a.coords(), &[UniPoly::parse(k, "t", "t").unwrap(), UniPoly::one(k)]);
        let b = normalize(&[rf(k, "1/t"), rf(k, "1")]).unwrap();
        assert_eq!(b.coords(), &[UniPoly::one(k), UniPoly::parse(k, "t", "t").unwrap()]);
        let c = normalize(&[rf(k, "2*t+2"), rf(k, "4")]).unwrap();
        assert_eq!(c.coords(), &[UniPoly::from_ints(k, &[1, 1]), UniPoly::from_ints(k, &[2])]);
        assert!(matches!(normalize(&[RatFunc::zero(&k), RatFunc::zero(&k)]), Err(Error::ZeroPoint)));
    }

    #[test]
    fn height_examples() {
        let k = f(7);
        assert_eq!(normalize(&[rf(k, "2"), rf(k, "3"), rf(k, "5")]).unwrap().height(), 0);
        assert_eq!(normalize(&[rf(k, "t"), rf(k, "1")]).unwrap().height(), 1);
        let p = normalize(&[rf(k, "t^2+1"), rf(k, "t^2-t"), rf(k, "1")]).unwrap();
        assert_eq!(p.height(), 2);
        // a generic hyperplane pulls back to a degree-2 polynomial
        let pulled = &(&p.coords()[0] + &p.coords()[1].scale(k.from_int(3))) + &p.coords()[2].scale(k.from_int(5));
        assert_eq!(pulled.deg0(), 2);
    }

    #[test]
    fn functoriality_examples() {
        let k = f(7);
        let pt = normalize(&[rf(k, "t"), rf(k, "1")]).unwrap();
        let id = [MultiPoly::parse_kt(k, "x1", Some(2), "t").unwrap(), MultiPoly::parse_kt(k, "x2", Some(2), "t").unwrap()];
        assert_eq!(functoriality_check(&id, &pt).unwrap().difference, 0);
        let sq = [MultiPoly::parse_kt(k, "x1^2", Some(2), "t").unwrap(), MultiPoly::parse_kt(k, "x2^2", Some(2), "t").unwrap()];
        let r = functoriality_check(&sq, &pt).unwrap();
        assert_eq!((r.image_height, r.difference), (2, 0));
        let cancel = [MultiPoly::parse_kt(k, "x1^2", Some(2), "t").unwrap(), MultiPoly::parse_kt(k, "x1*x2", Some(2), "t").unwrap()];
        let r = functoriality_check(&cancel, &pt).unwrap();
        assert_eq!(r.image, pt);
        assert_eq!((r.image_height, r.difference), (1, -1));
        assert!(r.bound_holds);
        let zero_at = normalize(&[rf(k, "0"), rf(k, "1")]).unwrap();
        let vanish = [MultiPoly::parse_kt(k, "x1^2", Some(2), "t").unwrap(), MultiPoly::parse_kt(k, "x1*x2", Some(2), "t").unwrap()];
        assert!(matches!(functoriality_check(&vanish, &zero_at), Err(Error::Undefined)));
    }

    #[test]
    fn density_examples() {
        let k = f(3);
        let pts: Vec<ProjPoint> = example1_constant_points(2, k).unwrap().family.points();
        assert_eq!(pts.len(), 13);
        let d = density_check(k, &pts, 2, 2).unwrap();
        assert!(matches!(d, Density::Dense { rank: 6, monomials: 6, .. }));
        let line: Vec<ProjPoint> =
            [[1, 0, 0], [0, 1, 0], [1, 1, 0]].iter().map(|c| ProjPoint::from_constants(&c.map(|x| k.from_int(x))).unwrap()).collect();
        let v = density_check(k, &line, 2, 1).unwrap();
        assert!(!v.is_dense());
        assert!(v.verify(&line));
        let empty = density_check(k, &[], 2, 1).unwrap();
        assert!(empty.verify(&[]));
    }

    #[test]
    fn discriminant_records() {
        let r = DiscriminantRecord::rational();
        assert_eq!(r.d, Rational64::from_integer(-2));
        assert!(DiscriminantRecord::new(2, 1).is_consistent());
        assert_eq!(DiscriminantRecord::new(2, 0).d, Rational64::from_integer(-1));
    }
}
