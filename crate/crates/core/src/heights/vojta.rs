//! Families of points of constant discriminant and unbounded canonical
//! height on a desingularized inseparable cover of `P^2`.
//!
//! The cover is `z^p = F(X)` for a form `F` of degree `ndp` over `k(t)`.
//! Over `K' = k(s)`, `s^p = t`, every `u ∈ P^2(K')` gives the point
//! `X = u^p`, `z = G(u)` where `G^p = F(T^p)`. Points are taken on the
//! image of a fixed line `ℓ ⊂ P^2` along sections `P^1 -> P^1` avoiding
//! the parameters where the point would meet the singular locus.

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{normalize, sections_avoiding, DiscriminantRecord, P1Point, ProjPoint, Section};
use crate::algebra::monomial::monomials_of_degree;
use crate::algebra::{Coeff, Fq, GaloisField, MultiPoly, RatFunc, UniPoly};
use crate::covers::{frobenius_factorization, Cover};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::picard::adjunction_class;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VojtaParams {
    pub p: u32,
    pub d: u32,
    pub n: u32,
    /// Largest section degree `M`.
    pub max_degree: u32,
    pub seed: u64,
    /// `k = F_{p^m}` with this `m`.
    pub field_degree: u32,
}

impl VojtaParams {
    pub fn standard() -> Self {
        VojtaParams { p: 3, d: 1, n: 5, max_degree: 10, seed: 0, field_degree: 3 }
    }
}

/// The point attached to the section of degree `m`.
#[derive(Clone, Debug, Serialize)]
pub struct VojtaPoint {
    pub m: u32,
    pub section: Section,
    /// `X = ℓ(g)^p` over `k(s)`.
    pub base_point: ProjPoint,
    /// `z = G(ℓ(g))`.
    pub z: RatFunc,
    /// `z^p = F(X)` with `t = s^p`.
    pub equation_holds: bool,
    /// The gradient of `F` does not vanish identically at `X`.
    pub avoids_singular_locus: bool,
    /// `H`-degree of the section: `h(X)`.
    pub h_degree: u64,
    /// `ξ`-degree of the section: `max(0, deg z - nd·h(X))`.
    pub xi_degree: u64,
    /// `K·C = (p-2)·ξ-degree + c_H·H-degree`.
    pub height: i64,
    pub disc: DiscriminantRecord,
}

/// A point violating `h ≤ A·d + c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub a: i64,
    pub c: i64,
    pub m: u32,
    pub height: i64,
    pub bound: Rational64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VojtaDemo {
    pub params: VojtaParams,
    pub field_order: u32,
    pub form: MultiPoly<RatFunc>,
    pub line: (Fq, Fq),
    pub cover_glues: bool,
    pub factorization_verified: bool,
    /// Parameters `(b, q)` over `k` where `ℓ(q)^p` is singular in the fiber `t = b^p`.
    pub avoided: Vec<(P1Point, P1Point)>,
    /// `H`-coefficient of `K_{Z̃}` from the closed adjunction formula.
    pub c_h: i64,
    /// `p·c_H` from the closed formula and from the summed classes.
    pub kappa_adjunction: i64,
    pub kappa_summed: i64,
    /// `(h_m - (p-2)·ξ_m)/m` for every `m`.
    pub kappa_direct: Vec<Rational64>,
    pub points: Vec<VojtaPoint>,
    pub violations: Vec<Violation>,
}

impl VojtaDemo {
    pub fn heights_increasing(&self) -> bool {
        self.points.windows(2).all(|w| w[0].height < w[1].height)
    }

    pub fn discriminant_constant(&self) -> bool {
        self.points.iter().all(|p| p.disc.d == Rational64::from_integer(-2) && p.disc.is_consistent())
    }

    pub fn kappa_consistent(&self) -> bool {
        self.kappa_adjunction == self.kappa_summed
            && self.kappa_direct.iter().all(|k| *k == Rational64::from_integer(self.kappa_adjunction))
    }

    pub fn all_points_valid(&self) -> bool {
        self.points.iter().all(|p| p.equation_holds && p.avoids_singular_locus)
    }

    /// Re-checks every row of the violation table against the point list.
    pub fn violations_hold(&self) -> bool {
        self.violations.iter().all(|v| {
            self.points.iter().any(|p| p.m == v.m && p.height == v.height && Rational64::from_integer(p.height) > v.bound)
                && v.bound == Rational64::from_integer(v.a) * Rational64::from_integer(-2) + Rational64::from_integer(v.c)
        })
    }
}

/// `(A, c)` pairs of the violation table.
pub const VIOLATION_GRID: [(i64, i64); 6] = [(1, 0), (1, 10), (2, 0), (2, 10), (5, 0), (5, 10)];

fn random_form(field: &'static GaloisField, deg: u32, rng: &mut ChaCha8Rng) -> MultiPoly<RatFunc> {
    let q = field.order();
    let terms: Vec<_> = monomials_of_degree(3, deg)
        .into_iter()
        .map(|m| {
            let a = field.from_encoding(rng.gen_range(0..q));
            let b = field.from_encoding(rng.gen_range(0..q));
            (m, RatFunc::from_poly(UniPoly::new(field, vec![a, b])))
        })
        .collect();
    MultiPoly::from_terms(&field, 3, terms)
}

/// Fiber of `F` at `t = b` (the top `t`-coefficient at `b = ∞`).
fn fiber(form: &MultiPoly<RatFunc>, b: P1Point) -> MultiPoly<Fq> {
    let field = *form.ctx();
    match b {
        P1Point::Finite(a) => form.map_coeffs(&field, |c| c.eval(a).expect("polynomial coefficient")),
        P1Point::Infinity => {
            let top = form.terms().map(|(_, c)| c.num().deg0()).max().unwrap_or(0);
            form.map_coeffs(&field, |c| c.num().coeff(top))
        }
    }
}

fn line_point(lambda: Fq, mu: Fq, q: P1Point) -> [Fq; 3] {
    let (q0, q1) = match q {
        P1Point::Finite(a) => (lambda.field().one(), a),
        P1Point::Infinity => (lambda.field().zero(), lambda.field().one()),
    };
    [q0, q1, lambda * q0 + mu * q1]
}

pub fn vojta_violation_demo(params: VojtaParams, exec: Exec) -> Result<VojtaDemo> {
    let VojtaParams { p, d, n, max_degree, seed, field_degree } = params;
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if d == 0 || n == 0 || max_degree == 0 {
        return Err(Error::Param("d, n and M must be positive".into()));
    }
    let field = GaloisField::get(p, field_degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let deg = n * d * p;
    let form = random_form(field, deg, &mut rng);
    let cover = Cover::projective(form.clone(), n * d)?;
    let cover_glues = cover.overlaps.iter().all(|o| o.sections_agree && o.differentials_agree);
    let fact = frobenius_factorization(&form);
    let factorization_verified = fact.verify();
    let q = field.order();
    let lambda = field.from_encoding(rng.gen_range(0..q));
    let mu = field.from_encoding(rng.gen_range(1..q));

    // parameters of P^1 x P^1 whose point lies on the singular locus of its fiber
    let p1: Vec<P1Point> = field.elements().map(P1Point::Finite).chain([P1Point::Infinity]).collect();
    let mut avoided = Vec::new();
    for &b in &p1 {
        let tb = match b {
            P1Point::Finite(a) => P1Point::Finite(a.pow(p as u64)),
            P1Point::Infinity => P1Point::Infinity,
        };
        let grad = fiber(&form, tb).gradient();
        for &qq in &p1 {
            let x = line_point(lambda, mu, qq).map(|c| c.pow(p as u64));
            if grad.iter().all(|g| g.eval(&x).is_zero()) {
                avoided.push((b, qq));
            }
        }
    }

    let adj = adjunction_class(p, d, n, 0);
    let c_h = adj.closed_form.h;
    let kappa_adjunction = c_h * p as i64;
    let kappa_summed = adj.summed.h * p as i64;
    let xi_coeff = adj.closed_form.xi;

    let form_s = form.map_coeffs(&field, |c| c.inflate(p as usize));
    let grad_s = form_s.gradient();
    let ms: Vec<u32> = (1..=max_degree).collect();
    let results = exec.map(ms, |m| -> Result<VojtaPoint> {
        let search = sections_avoiding(&avoided, m, field, 1, seed.wrapping_add(m as u64))?;
        if search.enlarged {
            return Err(Error::Param(format!("no section of degree {m} over F_{q} avoids the singular parameters")));
        }
        let section = search.sections[0].clone();
        let g0 = RatFunc::from_poly(section.g0.clone());
        let g1 = RatFunc::from_poly(section.g1.clone());
        let u = vec![g0.clone(), g1.clone(), g0.times(&RatFunc::constant(lambda)).plus(&g1.times(&RatFunc::constant(mu)))];
        let x: Vec<RatFunc> = u.iter().map(|c| c.pow(p)).collect();
        let z = fact.g.eval(&u);
        let equation_holds = z.pow(p) == form_s.eval(&x);
        let avoids_singular_locus = grad_s.iter().any(|g| !g.eval(&x).is_zero());
        let base_point = normalize(&x)?;
        let h_degree = base_point.height();
        let deg_z = z.num().deg0() as i64 - z.den().deg0() as i64;
        let xi_degree = (deg_z - (n * d) as i64 * h_degree as i64).max(0) as u64;
        let height = xi_coeff * xi_degree as i64 + c_h * h_degree as i64;
        Ok(VojtaPoint {
            m,
            section,
            base_point,
            z,
            equation_holds,
            avoids_singular_locus,
            h_degree,
            xi_degree,
            height,
            disc: DiscriminantRecord::rational(),
        })
    });
    let points = results.into_iter().collect::<Result<Vec<_>>>()?;
    let kappa_direct = points
        .iter()
        .map(|pt| Rational64::new(pt.height - xi_coeff * pt.xi_degree as i64, pt.m as i64))
        .collect();
    let disc = Rational64::from_integer(-2);
    let violations = VIOLATION_GRID
        .iter()
        .filter_map(|&(a, c)| {
            let bound = Rational64::from_integer(a) * disc + Rational64::from_integer(c);
            points
                .iter()
                .find(|pt| Rational64::from_integer(pt.height) > bound)
                .map(|pt| Violation { a, c, m: pt.m, height: pt.height, bound })
        })
        .collect();
    Ok(VojtaDemo {
        params,
        field_order: q,
        form,
        line: (lambda, mu),
        cover_glues,
        factorization_verified,
        avoided,
        c_h,
        kappa_adjunction,
        kappa_summed,
        kappa_direct,
        points,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_demo() {
        let params = VojtaParams { p: 3, d: 1, n: 1, max_degree: 3, seed: 1, field_degree: 2 };
        let demo = vojta_violation_demo(params, Exec::Sequential).unwrap();
        assert!(demo.cover_glues);
        assert!(demo.factorization_verified);
        assert!(demo.all_points_valid());
        assert!(demo.heights_increasing());
        assert!(demo.discriminant_constant());
        assert!(demo.kappa_consistent());
        assert_eq!(demo.violations.len(), VIOLATION_GRID.len());
        assert!(demo.violations_hold());
        // c_H = d·n·(p+1) - 3 = 1, κ = 3
        assert_eq!(demo.kappa_adjunction, 3);
    }

    #[test]
    fn violation_arithmetic() {
        // heights κ·m with κ = 51 exceed A·(-2) + c from m = 1 on
        for (a, c) in VIOLATION_GRID {
            let bound = -2 * a + c;
            let first = (1..).find(|m| 51 * m > bound).unwrap();
            assert_eq!(first, 1);
        }
        let bound = -2 * 10 + 100;
        assert_eq!((1..).find(|m| 51 * m > bound).unwrap(), 2);
    }
}
