//! Families of bounded height that are Zariski dense.

use num_rational::Rational64;
use serde::Serialize;

use super::{density_check, Density, DiscriminantRecord, PointFamily, PointRecord, ProjPoint};
use crate::algebra::{Fq, GaloisField, MultiPoly, RatFunc, UniPoly};
use crate::error::{Error, Result};
use crate::picard::{pgl_equivalence, PglVerdict, PointConfig};

/// Every point of `P^N(k)` viewed as a constant point of `P^N(k(t))`.
#[derive(Clone, Debug, Serialize)]
pub struct Example1 {
    pub n: usize,
    pub q: u32,
    pub family: PointFamily,
    pub density_degree2: Density,
    /// Largest `D` such that no form of degree `≤ D` vanishes on the family.
    pub dense_up_to: u32,
}

pub fn example1_constant_points(n: usize, field: &'static GaloisField) -> Result<Example1> {
    let q = field.order();
    let mut family = PointFamily::new("constant points");
    for lead in 0..=n {
        // points whose first nonzero coordinate is `lead`
        let free = n - lead;
        let count = (q as u64).pow(free as u32);
        for idx in 0..count {
            let mut coords = vec![field.zero(); n + 1];
            coords[lead] = field.one();
            let mut rest = idx;
            for c in coords.iter_mut().skip(lead + 1) {
                *c = field.from_encoding((rest % q as u64) as u32);
                rest /= q as u64;
            }
            let p = ProjPoint::from_constants(&coords)?;
            family.records.push(PointRecord::rational(p, "constant"));
        }
    }
    let points = family.points();
    let density_degree2 = density_check(field, &points, n, 2)?;
    let mut dense_up_to = 0;
    for d in 1..=q + 1 {
        if !density_check(field, &points, n, d)?.is_dense() {
            break;
        }
        dense_up_to = d;
    }
    Ok(Example1 { n, q, family, density_degree2, dense_up_to })
}

/// Comparison of two specialized configurations `{f_i(b)}` and `{f_i(b')}`.
#[derive(Clone, Debug, Serialize)]
pub struct FiberComparison {
    pub b: Fq,
    pub b_prime: Fq,
    pub fiber_b: Vec<Vec<Fq>>,
    pub fiber_b_prime: Vec<Vec<Fq>>,
    pub equivalent: bool,
    pub first_mismatch: Option<usize>,
}

/// Non-isotriviality test for the blow-up of `P^N` along sections
/// `f_1, …, f_r`.
#[derive(Clone, Debug, Serialize)]
pub struct Example2 {
    pub n: usize,
    pub r: usize,
    pub comparison: FiberComparison,
    /// `true` when the sampled fibers are not `PGL`-equivalent.
    pub non_isotrivial: bool,
    /// Height bound of the pulled back constant points for `π*O(1)`.
    pub pullback_height_bound: u64,
}

fn fiber_config(maps: &[ProjPoint], b: Fq) -> Result<PointConfig> {
    PointConfig::new(maps[0].dim(), maps.iter().map(|m| m.fiber(b)).collect())
}

fn frame_ok(config: &PointConfig) -> bool {
    // a configuration is usable when it is PGL-comparable with itself
    pgl_equivalence(config, config).is_ok()
}

/// Compares the fibers at `b` and `b'`; with `fibers = None` the first two
/// parameters of `k` whose fibers have a frame are used.
pub fn example2_blowup_config(maps: &[ProjPoint], fibers: Option<(Fq, Fq)>) -> Result<Example2> {
    let Some(first) = maps.first() else {
        return Err(Error::InvalidInput("no sections given".into()));
    };
    let n = first.dim();
    let r = maps.len();
    if maps.iter().any(|m| m.dim() != n) {
        return Err(Error::InvalidInput("sections live in different projective spaces".into()));
    }
    if r <= n + 4 {
        return Err(Error::InvalidInput(format!("need r > N+4 = {} sections, got {r}", n + 4)));
    }
    let field = first.field();
    let (b, b_prime) = match fibers {
        Some(pair) => pair,
        None => {
            let good: Vec<Fq> = field.elements().filter(|&b| fiber_config(maps, b).map(|c| frame_ok(&c)).unwrap_or(false)).take(2).collect();
            if good.len() < 2 {
                return Err(Error::GeneralPosition((0..n + 2).collect()));
            }
            (good[0], good[1])
        }
    };
    let ca = fiber_config(maps, b)?;
    let cb = fiber_config(maps, b_prime)?;
    let verdict = pgl_equivalence(&ca, &cb)?;
    let (equivalent, first_mismatch) = match verdict {
        PglVerdict::Equivalent { .. } => (true, None),
        PglVerdict::Inequivalent { first_mismatch } => (false, Some(first_mismatch)),
    };
    let comparison = FiberComparison {
        b,
        b_prime,
        fiber_b: ca.points().to_vec(),
        fiber_b_prime: cb.points().to_vec(),
        equivalent,
        first_mismatch,
    };
    // constant points of P^N have height 0 for the pulled back hyperplane class
    let pullback_height_bound = 0;
    Ok(Example2 { n, r, comparison, non_isotrivial: !equivalent, pullback_height_bound })
}

/// Points `(x_0, y_0)` of `y^2 = g(x)` with constant `x_0`.
#[derive(Clone, Debug, Serialize)]
pub struct Example3 {
    /// Maximal `t`-degree of the coefficients of `g`.
    pub a: u64,
    pub height_bound: Rational64,
    /// Bound on `d_L` from Hurwitz: `max(-2, (A-3)/2)`.
    pub discriminant_bound: Rational64,
    /// A parameter `t_0` with `g(x, t_0)` separable of full degree.
    pub squarefree_witness: Fq,
    pub family: PointFamily,
}

impl Example3 {
    pub fn all_bounded(&self) -> bool {
        self.family.records.iter().all(|r| r.disc.degree <= 2 && r.height <= self.height_bound && r.disc.d <= self.discriminant_bound)
    }
}

fn specialize(g: &MultiPoly<RatFunc>, t0: Fq) -> Option<UniPoly> {
    let field = t0.field();
    let deg = g.degree_in(0) as usize;
    let mut coeffs = vec![field.zero(); deg + 1];
    for (m, c) in g.terms() {
        coeffs[m.get(0) as usize] += c.eval(t0)?;
    }
    Some(UniPoly::new(field, coeffs))
}

/// `g` is a polynomial in `x1` with coefficients in `k[t]`; `xs` are the
/// sampled constants `x_0`.
pub fn example3_bounded_degree(g: &MultiPoly<RatFunc>, xs: &[Fq]) -> Result<Example3> {
    let field = *g.ctx();
    if field.characteristic() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if g.nvars() != 1 {
        return Err(Error::InvalidInput("g must be a polynomial in x1 alone".into()));
    }
    if g.terms().any(|(_, c)| !c.is_polynomial()) {
        return Err(Error::InvalidInput("coefficients of g must be polynomials in t".into()));
    }
    let deg = g.degree_in(0);
    if deg < 3 {
        return Err(Error::InvalidInput(format!("deg g = {deg} < 3")));
    }
    let squarefree_witness = field
        .elements()
        .find(|&t0| {
            specialize(g, t0).is_some_and(|s| s.deg0() == deg as usize && s.gcd(&s.derivative()).is_one())
        })
        .ok_or_else(|| Error::InvalidInput("g has no separable square-free specialization over k".into()))?;
    let a = g.terms().map(|(_, c)| c.num().deg0() as u64).max().unwrap_or(0);
    let height_bound = Rational64::from_integer(a as i64);
    let discriminant_bound = Rational64::new((a as i64 - 3).max(-4), 2);
    let mut family = PointFamily::new("constant x-coordinate");
    for &x0 in xs {
        if x0.field() != field {
            return Err(Error::FieldMismatch);
        }
        let gx = g.eval(&[RatFunc::constant(x0)]);
        let big_g = gx.num().clone();
        family.records.push(record_for(field, x0, &big_g)?);
    }
    Ok(Example3 { a, height_bound, discriminant_bound, squarefree_witness, family })
}

fn record_for(field: &'static GaloisField, x0: Fq, big_g: &UniPoly) -> Result<PointRecord> {
    let label = format!("x0 = {x0}, y0^2 = {big_g}");
    if big_g.is_zero() {
        let point = ProjPoint::from_constants(&[field.one(), x0, field.zero()])?;
        let mut rec = PointRecord::rational(point, label);
        rec.flags.push("ramified".into());
        return Ok(rec);
    }
    let height = Rational64::new(big_g.deg0() as i64, 2);
    // odd-multiplicity part of G decides whether y0 lies in k(t)
    let mut square_root = UniPoly::one(field);
    let mut odd = UniPoly::one(field);
    for (f, e) in big_g.squarefree_factorization() {
        square_root = &square_root * &f.pow(e / 2);
        if e % 2 == 1 {
            odd = &odd * &f;
        }
    }
    if odd.is_constant() {
        let lc = big_g.leading();
        let mut rec = match lc.sqrt() {
            Some(r) => PointRecord::rational(ProjPoint::new(vec![UniPoly::one(field), UniPoly::constant(x0), square_root.scale(r)])?, label),
            None => PointRecord {
                point: None,
                label,
                height,
                disc: DiscriminantRecord::rational(),
                flags: vec!["constant extension".into()],
            },
        };
        rec.height = height;
        return Ok(rec);
    }
    let s = odd.deg0() as i64;
    let branch = s + s % 2;
    let genus = (branch - 2) / 2;
    Ok(PointRecord {
        point: None,
        label,
        height,
        disc: DiscriminantRecord::new(2, genus),
        flags: vec![format!("{branch} branch points")],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_counts() {
        for (p, expect) in [(3u32, 13usize), (5, 31)] {
            let f = GaloisField::get(p, 1).unwrap();
            let e = example1_constant_points(2, f).unwrap();
            assert_eq!(e.family.len(), expect);
            assert!(e.family.records.iter().all(|r| r.height == Rational64::from_integer(0)));
            assert!(e.density_degree2.is_dense());
            assert_eq!(e.dense_up_to, p);
            assert!(e.family.verify());
        }
        let f3 = GaloisField::get(3, 1).unwrap();
        assert_eq!(example1_constant_points(1, f3).unwrap().family.len(), 4);
    }

    fn maps(f: &'static GaloisField, coords: &[[&str; 2]]) -> Vec<ProjPoint> {
        coords
            .iter()
            .map(|c| ProjPoint::new(c.iter().map(|s| UniPoly::parse(f, s, "t").unwrap()).collect()).unwrap())
            .collect()
    }

    #[test]
    fn example2_cross_ratio_mismatch() {
        let f = GaloisField::get(7, 1).unwrap();
        let m = maps(f, &[["1", "0"], ["0", "1"], ["1", "1"], ["1", "t"], ["1", "t^2"], ["1", "t+1"]]);
        let e = example2_blowup_config(&m, Some((f.from_int(2), f.from_int(3)))).unwrap();
        assert!(e.non_isotrivial);
        assert_eq!(e.comparison.first_mismatch, Some(3));
        let constant = maps(f, &[["1", "0"], ["0", "1"], ["1", "1"], ["1", "2"], ["1", "3"], ["1", "4"]]);
        assert!(!example2_blowup_config(&constant, None).unwrap().non_isotrivial);
        assert!(example2_blowup_config(&m[..5], None).is_err());
    }

    #[test]
    fn example3_square_root_of_t() {
        let f = GaloisField::get(7, 1).unwrap();
        let g = MultiPoly::<RatFunc>::parse_kt(f, "x1^3 + t", Some(1), "t").unwrap();
        let xs: Vec<Fq> = f.elements().collect();
        let e = example3_bounded_degree(&g, &xs).unwrap();
        assert_eq!(e.a, 1);
        let r0 = &e.family.records[0];
        assert_eq!(r0.disc.degree, 2);
        assert_eq!(r0.disc.genus, 0);
        assert_eq!(r0.height, Rational64::new(1, 2));
        assert!(e.all_bounded());
        assert!(e.family.verify());
        assert_eq!(e.family.len(), 7);
    }

    #[test]
    fn example3_isotrivial_and_ramified() {
        let f = GaloisField::get(5, 1).unwrap();
        let g = MultiPoly::<RatFunc>::parse_kt(f, "x1^3 - x1", Some(1), "t").unwrap();
        let xs: Vec<Fq> = f.elements().collect();
        let e = example3_bounded_degree(&g, &xs).unwrap();
        assert!(e.family.records.iter().all(|r| r.disc.degree == 1));
        let ramified = e.family.records.iter().filter(|r| r.flags.iter().any(|s| s == "ramified")).count();
        assert_eq!(ramified, 3);
        let sq = MultiPoly::<RatFunc>::parse_kt(f, "x1^4 + 2*x1^2 + 1", Some(1), "t").unwrap();
        assert!(example3_bounded_degree(&sq, &xs).is_err());
    }
}
