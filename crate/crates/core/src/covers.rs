//! Purely inseparable covers `z^p = f` glued from chart data, their singular
//! points, Frobenius factorization and lifts of rational points.

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::monomial::monomials_of_degree;
use crate::algebra::{
    groebner_basis, groebner_membership_one, hessian_at, ratfunc_pth_root, Coeff, Fq, GaloisField, GroebnerBasis, GroebnerConfig,
    Matrix, Membership, Monomial, MultiPoly, RatFunc, UniPoly,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::heights::{normalize, PointFamily, PointRecord, ProjPoint};

/// Coefficient fields in which one can decide whether an element is a
/// `p`-th power.
pub trait PthPowerRoot: Coeff {
    fn pth_root_in_field(&self) -> Option<Self>;
}

impl PthPowerRoot for Fq {
    fn pth_root_in_field(&self) -> Option<Self> {
        Some(self.pth_root())
    }
}

impl PthPowerRoot for RatFunc {
    fn pth_root_in_field(&self) -> Option<Self> {
        RatFunc::pth_root_in_field(self)
    }
}

/// `g` with `g^p = f`, if `f` is a `p`-th power of a polynomial.
pub fn polynomial_pth_root<C: PthPowerRoot>(f: &MultiPoly<C>) -> Option<MultiPoly<C>> {
    let p = C::characteristic(f.ctx());
    let mut out = MultiPoly::zero(f.ctx(), f.nvars());
    for (m, c) in f.terms() {
        if m.exponents().iter().any(|e| e % p != 0) {
            return None;
        }
        let e = m.exponents().iter().map(|e| e / p).collect();
        out.add_term(Monomial::from_exponents(e), &c.pth_root_in_field()?);
    }
    Some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Base {
    Affine { n: usize },
    /// `P^dim` with the standard charts `X_i ≠ 0`.
    Projective { dim: usize },
}

/// Chart `i` of the base with local equation `z^p = f`. On `P^N` the
/// coordinates of chart `i` are `X_k/X_i` for `k ≠ i`, in increasing `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverChart<C: Coeff> {
    pub index: usize,
    pub f: MultiPoly<C>,
}

/// Result of the gluing checks on the overlap of two charts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Overlap {
    pub i: usize,
    pub j: usize,
    /// `g_ij = (X_j/X_i)^e`.
    pub cocycle: String,
    pub sections_agree: bool,
    pub differentials_agree: bool,
}

/// A cover `z^p = s` for a section `s` of `O(e·p)` (projective base) or a
/// polynomial (affine base).
#[derive(Clone, Debug, Serialize)]
pub struct Cover<C: Coeff> {
    pub p: u32,
    pub base: Base,
    pub e: u32,
    pub charts: Vec<CoverChart<C>>,
    pub section: Option<MultiPoly<C>>,
    pub overlaps: Vec<Overlap>,
}

fn reject_pth_power<C: PthPowerRoot>(f: &MultiPoly<C>) -> Result<()> {
    if f.is_zero() {
        return Err(Error::InvalidInput("the zero section defines no cover".into()));
    }
    match polynomial_pth_root(f) {
        Some(g) => Err(Error::PthPower(g.to_string())),
        None => Ok(()),
    }
}

/// Position of the coordinate `X_k/X_i` among the variables of chart `i`.
fn chart_pos(i: usize, k: usize) -> usize {
    if k < i {
        k
    } else {
        k - 1
    }
}

/// `(X_from/X_to)^deg · h` in the coordinates of chart `to`, for `h` given
/// in the coordinates of chart `from` with `deg h ≤ deg`.
pub fn transport<C: Coeff>(h: &MultiPoly<C>, from: usize, to: usize, dim: usize, deg: u32) -> Result<MultiPoly<C>> {
    let mut out = MultiPoly::zero(h.ctx(), dim);
    for (m, c) in h.terms() {
        let total = m.degree();
        if total > deg {
            return Err(Error::InvalidInput(format!("degree {total} exceeds transport degree {deg}")));
        }
        let mut e = vec![0u32; dim];
        for k in (0..=dim).filter(|&k| k != from) {
            let a = m.get(chart_pos(from, k));
            if k != to {
                e[chart_pos(to, k)] += a;
            }
        }
        e[chart_pos(to, from)] += deg - total;
        out.add_term(Monomial::from_exponents(e), c);
    }
    Ok(out)
}

impl<C: PthPowerRoot> Cover<C> {
    /// Single affine chart `z^p = f`.
    pub fn affine(f: MultiPoly<C>) -> Result<Self> {
        let p = C::characteristic(f.ctx());
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        reject_pth_power(&f)?;
        let n = f.nvars();
        Ok(Cover { p, base: Base::Affine { n }, e: 0, charts: vec![CoverChart { index: 0, f }], section: None, overlaps: Vec::new() })
    }

    /// Cover of `P^dim` attached to a form `F` of degree `e·p`.
    pub fn projective(section: MultiPoly<C>, e: u32) -> Result<Self> {
        let p = C::characteristic(section.ctx());
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if section.nvars() < 2 {
            return Err(Error::InvalidInput("a projective base needs at least two homogeneous coordinates".into()));
        }
        reject_pth_power(&section)?;
        if !section.is_homogeneous() || section.degree() != Some(e * p) {
            return Err(Error::InvalidInput(format!("section must be homogeneous of degree e·p = {}", e * p)));
        }
        let dim = section.nvars() - 1;
        let charts = (0..=dim).map(|i| CoverChart { index: i, f: section.dehomogenize(i) }).collect();
        let mut cover = Cover { p, base: Base::Projective { dim }, e, charts, section: Some(section), overlaps: Vec::new() };
        cover.overlaps = cover.check_gluing()?;
        Ok(cover)
    }

    /// Cover of `P^dim` from explicit chart polynomials; fails on the first
    /// overlap whose data do not glue.
    pub fn from_charts(dim: usize, e: u32, charts: Vec<MultiPoly<C>>) -> Result<Self> {
        let Some(first) = charts.first() else {
            return Err(Error::InvalidInput("no charts".into()));
        };
        let p = C::characteristic(first.ctx());
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if charts.len() != dim + 1 || charts.iter().any(|f| f.nvars() != dim) {
            return Err(Error::InvalidInput(format!("P^{dim} needs {} charts in {dim} variables", dim + 1)));
        }
        for f in &charts {
            reject_pth_power(f)?;
        }
        let charts = charts.into_iter().enumerate().map(|(index, f)| CoverChart { index, f }).collect();
        let mut cover = Cover { p, base: Base::Projective { dim }, e, charts, section: None, overlaps: Vec::new() };
        cover.overlaps = cover.check_gluing()?;
        Ok(cover)
    }

    fn check_gluing(&self) -> Result<Vec<Overlap>> {
        let Base::Projective { dim } = self.base else { return Ok(Vec::new()) };
        let mut out = Vec::new();
        for i in 0..=dim {
            for j in 0..=dim {
                if i == j {
                    continue;
                }
                let sections_agree = self.cocycle_holds(i, j)?;
                let differentials_agree = sections_agree && self.differential_of_section(i, j)?;
                if !sections_agree || !differentials_agree {
                    return Err(Error::CocycleMismatch(i, j));
                }
                out.push(Overlap { i, j, cocycle: format!("(X{j}/X{i})^{}", self.e), sections_agree, differentials_agree });
            }
        }
        Ok(out)
    }
}

impl<C: Coeff> Cover<C> {
    pub fn chart_dim(&self) -> usize {
        match self.base {
            Base::Affine { n } => n,
            Base::Projective { dim } => dim,
        }
    }

    /// `f_i = g_ij^p · f_j`, checked as `f_i = (X_j/X_i)^{ep} f_j` written in
    /// the coordinates of chart `i`.
    pub fn cocycle_holds(&self, i: usize, j: usize) -> Result<bool> {
        let dim = self.chart_dim();
        let deg = self.e * self.p;
        Ok(transport(&self.charts[j].f, j, i, dim, deg)? == self.charts[i].f)
    }

    /// Checks `d f_i = g_ij^p · d f_j` on the overlap: the partials of `f_i`
    /// are compared with the chain rule applied to the partials of `f_j`,
    /// with denominators cleared.
    pub fn differential_of_section(&self, i: usize, j: usize) -> Result<bool> {
        let dim = self.chart_dim();
        let ep = self.e * self.p;
        if ep == 0 {
            return Ok(true);
        }
        let fi = &self.charts[i].f;
        let fj = &self.charts[j].f;
        // T_k = y_j^{ep-1} (∂f_j/∂w_k)(w(y)) for every coordinate X_k/X_j
        let t: Vec<(usize, MultiPoly<C>)> = (0..=dim)
            .filter(|&k| k != j)
            .map(|k| Ok((k, transport(&fj.partial(chart_pos(j, k)), j, i, dim, ep - 1)?)))
            .collect::<Result<_>>()?;
        let yj = MultiPoly::var(fi.ctx(), dim, chart_pos(i, j));
        for l in (0..=dim).filter(|&l| l != i) {
            let lhs = fi.partial(chart_pos(i, l));
            if l != j {
                let tl = &t.iter().find(|(k, _)| *k == l).expect("partial present").1;
                if &lhs != tl {
                    return Ok(false);
                }
            } else {
                let mut rhs = MultiPoly::zero(fi.ctx(), dim);
                for (k, tk) in &t {
                    if *k == i {
                        rhs = &rhs - tk;
                    } else {
                        let yk = MultiPoly::var(fi.ctx(), dim, chart_pos(i, *k));
                        rhs = &rhs - &(&yk * tk);
                    }
                }
                if &yj * &lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `d f_i` of every chart, as coefficient lists of `dx_1, …, dx_n`.
    pub fn differentials(&self) -> Vec<Vec<MultiPoly<C>>> {
        self.charts.iter().map(|c| c.f.gradient()).collect()
    }
}

/// Gradient zero of a chart polynomial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularPointRecord {
    pub chart: usize,
    pub point: Vec<Fq>,
    /// Homogeneous coordinates on a projective base, with `X_chart = 1`.
    pub projective: Option<Vec<Fq>>,
    pub degenerate: bool,
    pub hessian_det: Fq,
}

/// How the points found compare with the zeros of the gradient ideal over
/// the algebraic closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Completeness {
    /// The ideal has exactly as many distinct zeros as were found.
    Complete { zeros: usize },
    Incomplete { zeros: usize, found: usize },
    PositiveDimensional,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartSearch {
    pub chart: usize,
    pub found: usize,
    pub completeness: Completeness,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularSearch {
    pub field_order: u32,
    pub points: Vec<SingularPointRecord>,
    pub charts: Vec<ChartSearch>,
}

impl SingularSearch {
    pub fn is_complete(&self) -> bool {
        self.charts.iter().all(|c| matches!(c.completeness, Completeness::Complete { .. }))
    }
}

const MAX_SEARCH_POINTS: u64 = 2_000_000;

/// Number of distinct zeros over the algebraic closure of a zero-dimensional
/// ideal, via its radical `I + (sqfree(m_l(x_l)))`.
pub fn distinct_zero_count(gens: &[MultiPoly<Fq>], cfg: &GroebnerConfig) -> Result<Option<usize>> {
    let gb = groebner_basis(gens, cfg)?;
    if gb.is_unit() {
        return Ok(Some(0));
    }
    if !gb.is_zero_dimensional() {
        return Ok(None);
    }
    let n = gens[0].nvars();
    let field = *gens[0].ctx();
    let mut rad: Vec<MultiPoly<Fq>> = gb.polys().to_vec();
    for l in 0..n {
        let m = minimal_polynomial(&gb, l, field);
        let sq = m.squarefree_part();
        let mut poly = MultiPoly::zero(&field, n);
        for (k, c) in sq.coeffs().iter().enumerate() {
            let mut e = vec![0u32; n];
            e[l] = k as u32;
            poly.add_term(Monomial::from_exponents(e), c);
        }
        rad.push(poly);
    }
    let gb = groebner_basis(&rad, cfg)?;
    Ok(gb.quotient_dimension())
}

/// Minimal polynomial of `x_l` modulo a zero-dimensional ideal.
fn minimal_polynomial(gb: &GroebnerBasis<Fq>, l: usize, field: &'static GaloisField) -> UniPoly {
    let basis = gb.standard_monomials().expect("zero-dimensional");
    let n = gb.polys()[0].nvars();
    let x = MultiPoly::var(&field, n, l);
    let mut power = MultiPoly::one(&field, n);
    let mut columns: Vec<Vec<Fq>> = Vec::new();
    loop {
        let nf = gb.normal_form(&power);
        columns.push(basis.iter().map(|m| nf.coeff(m)).collect());
        let k = columns.len();
        let mat = Matrix::from_rows(&field, (0..basis.len()).map(|r| columns.iter().map(|c| c[r]).collect()).collect());
        if let Some(v) = mat.kernel().into_iter().next() {
            debug_assert!(!v[k - 1].is_zero());
            return UniPoly::new(field, v).monic();
        }
        power = &power * &x;
    }
}

/// Searches every chart over `F_{q^ext}` for zeros of the gradient and
/// compares the count with the radical of the gradient ideal.
pub fn singular_points(cover: &Cover<Fq>, ext: u32) -> Result<SingularSearch> {
    let base = *cover.charts[0].f.ctx();
    let field = base.extension(ext.max(1))?;
    let emb = base.embedding_into(field)?;
    let dim = cover.chart_dim();
    let q = field.order() as u64;
    let per_chart = q.checked_pow(dim as u32).filter(|&c| c.saturating_mul(cover.charts.len() as u64) <= MAX_SEARCH_POINTS);
    let Some(per_chart) = per_chart else {
        return Err(Error::Param(format!("search space {q}^{dim} per chart is too large")));
    };
    let projective = matches!(cover.base, Base::Projective { .. });
    let mut points = Vec::new();
    let mut charts = Vec::new();
    for chart in &cover.charts {
        let f = chart.f.map_coeffs(&field, |c| emb.apply(*c));
        let grad = f.gradient();
        let mut found = 0;
        for idx in 0..per_chart {
            let mut rest = idx;
            let x: Vec<Fq> = (0..dim)
                .map(|_| {
                    let c = field.from_encoding((rest % q) as u32);
                    rest /= q;
                    c
                })
                .collect();
            if !grad.iter().all(|g| g.eval(&x).is_zero()) {
                continue;
            }
            found += 1;
            // on P^N each point is reported in the first chart containing it
            if projective && x[..chart.index].iter().any(|c| !c.is_zero()) {
                continue;
            }
            let h = hessian_at(&f, &x)?;
            let proj = projective.then(|| {
                let mut v = x.clone();
                v.insert(chart.index, field.one());
                v
            });
            points.push(SingularPointRecord { chart: chart.index, point: x, projective: proj, degenerate: !h.nondegenerate, hessian_det: h.det });
        }
        let grad0 = chart.f.gradient();
        let completeness = if grad0.iter().all(MultiPoly::is_zero) {
            Completeness::PositiveDimensional
        } else {
            match distinct_zero_count(&grad0, &GroebnerConfig::default()) {
                Ok(Some(z)) if z == found => Completeness::Complete { zeros: z },
                Ok(Some(z)) => Completeness::Incomplete { zeros: z, found },
                Ok(None) => Completeness::PositiveDimensional,
                Err(Error::GroebnerBoundExhausted(_)) => Completeness::Undecided,
                Err(e) => return Err(e),
            }
        };
        charts.push(ChartSearch { chart: chart.index, found, completeness });
    }
    Ok(SingularSearch { field_order: field.order(), points, charts })
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
fn poly_det(m: &[Vec<MultiPoly<Fq>>]) -> MultiPoly<Fq> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(m[0][0].ctx(), m[0][0].nvars());
    for (c, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly<Fq>>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, x)| x.clone()).collect()).collect();
        let term = entry * &poly_det(&minor);
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Generators of the ideal of degenerate singular points of `z^p = f`:
/// the gradient and the Hessian determinant.
pub fn degeneracy_ideal(f: &MultiPoly<Fq>) -> Vec<MultiPoly<Fq>> {
    let grad = f.gradient();
    let hess: Vec<Vec<MultiPoly<Fq>>> = grad.iter().map(|g| g.gradient()).collect();
    let mut gens = grad;
    gens.push(poly_det(&hess));
    gens
}

/// Verdict on one chart: `Good` when `1` lies in the degeneracy ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChartVerdict {
    Good,
    Degenerate,
    Undecided,
}

pub fn chart_verdict(f: &MultiPoly<Fq>) -> Result<ChartVerdict> {
    Ok(match groebner_membership_one(&degeneracy_ideal(f))? {
        Membership::Unit(cert) => {
            debug_assert!(cert.verify());
            ChartVerdict::Good
        }
        Membership::NotMember { .. } => ChartVerdict::Degenerate,
        Membership::BoundExhausted { .. } => ChartVerdict::Undecided,
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct GenericityParams {
    /// Dimension `N` of the base `P^N`.
    pub dim: usize,
    pub d: u32,
    pub n: u32,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericityFailure {
    pub trial: usize,
    pub section: MultiPoly<Fq>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericityReport {
    pub params: GenericityParams,
    pub p: u32,
    pub field_order: u32,
    /// Degree `n·d·p` of the sampled forms.
    pub degree: u32,
    pub good: usize,
    pub failures: Vec<GenericityFailure>,
}

impl GenericityReport {
    pub fn fraction(&self) -> f64 {
        self.good as f64 / self.params.trials as f64
    }
}

/// Uniformly random form of degree `deg` in `nvars` variables from the
/// `trial`-th stream of `seed`.
pub fn random_form(field: &'static GaloisField, nvars: usize, deg: u32, seed: u64, trial: u64) -> MultiPoly<Fq> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let q = field.order();
    MultiPoly::from_terms(
        &field,
        nvars,
        monomials_of_degree(nvars, deg).into_iter().map(|m| (m, field.from_encoding(rng.gen_range(0..q)))).collect::<Vec<_>>(),
    )
}

/// Samples sections of `O(ndp)` on `P^N` and counts those whose cover has
/// only nondegenerate singular points over the algebraic closure.
pub fn genericity_sample(field: &'static GaloisField, params: GenericityParams, exec: Exec) -> Result<GenericityReport> {
    let p = field.characteristic();
    let GenericityParams { dim, d, n, trials, seed } = params;
    if dim == 0 || trials == 0 {
        return Err(Error::Param("need N ≥ 1 and at least one trial".into()));
    }
    let degree = n * d * p;
    if degree < 2 {
        return Err(Error::Param(format!("n·d·p = {degree} < 2")));
    }
    let outcomes = exec.map_range(trials, |trial| -> Result<Option<GenericityFailure>> {
        let form = random_form(field, dim + 1, degree, seed, trial as u64);
        let cover = match Cover::projective(form.clone(), n * d) {
            Ok(c) => c,
            Err(e) => return Ok(Some(GenericityFailure { trial, section: form, reason: e.to_string() })),
        };
        for chart in &cover.charts {
            match chart_verdict(&chart.f)? {
                ChartVerdict::Good => {}
                v => {
                    return Ok(Some(GenericityFailure { trial, section: form, reason: format!("chart {}: {v:?}", chart.index) }));
                }
            }
        }
        Ok(None)
    });
    let mut failures = Vec::new();
    for o in outcomes {
        if let Some(f) = o? {
            failures.push(f);
        }
    }
    Ok(GenericityReport { params, p, field_order: field.order(), degree, good: trials - failures.len(), failures })
}

/// Count of monic cubics `x^3 + a x^2 + b x + c` whose derivatives `f'`
/// and `f''` have a common root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubicCensus {
    pub field_order: u32,
    pub total: u64,
    /// Cubics with `Res(f', f'') = 0`.
    pub degenerate: u64,
    /// Closed form `q^2`: the condition is `b = a^2/3`.
    pub predicted: u64,
}

pub fn cubic_degeneracy_census(field: &'static GaloisField) -> Result<CubicCensus> {
    let p = field.characteristic();
    if p <= 3 {
        return Err(Error::SmallCharacteristic(p));
    }
    let q = field.order() as u64;
    let elems: Vec<Fq> = field.elements().collect();
    let mut degenerate = 0;
    for &a in &elems {
        for &b in &elems {
            let f1 = UniPoly::new(field, vec![b, a * field.from_int(2), field.from_int(3)]);
            let f2 = UniPoly::new(field, vec![a * field.from_int(2), field.from_int(6)]);
            if f1.resultant(&f2).is_zero() {
                // independent of the constant term
                degenerate += q;
            }
        }
    }
    Ok(CubicCensus { field_order: field.order(), total: q * q * q, degenerate, predicted: q * q })
}

/// `z = Σ b_I T^I` with `b_I^p = a_I(s^p)` for `h = Σ a_I x^I` over `k(t)`.
#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusFactorization {
    pub p: u32,
    /// The input over `K = k(t)`.
    pub h: MultiPoly<RatFunc>,
    /// The root over `K' = k(s)`, `s^p = t`.
    pub g: MultiPoly<RatFunc>,
}

impl FrobeniusFactorization {
    /// Expands `g^p` and compares it with `h(T^p)` after `t = s^p`.
    pub fn verify(&self) -> bool {
        let lhs = self.g.pow(self.p);
        let mut rhs = MultiPoly::zero(self.h.ctx(), self.h.nvars());
        for (m, a) in self.h.terms() {
            let e = m.exponents().iter().map(|e| e * self.p).collect();
            rhs.add_term(Monomial::from_exponents(e), &a.inflate(self.p as usize));
        }
        lhs == rhs
    }
}

pub fn frobenius_factorization(h: &MultiPoly<RatFunc>) -> FrobeniusFactorization {
    let field = *h.ctx();
    let p = field.characteristic();
    let g = MultiPoly::from_terms(&field, h.nvars(), h.terms().map(|(m, a)| (m.clone(), ratfunc_pth_root(a))).collect::<Vec<_>>());
    FrobeniusFactorization { p, h: h.clone(), g }
}

/// A point `x_j = u_j^p`, `z = Σ b_I u^I` of the cover.
#[derive(Clone, Debug, Serialize)]
pub struct LiftedPoint {
    /// Parameters `u_j ∈ k(s)`.
    pub params: Vec<RatFunc>,
    /// Base coordinates `x_j ∈ k(t)`.
    pub x: Vec<RatFunc>,
    /// `z ∈ k(s)`.
    pub z: RatFunc,
    /// `z^p = h(x)` after `t = s^p`.
    pub verified: bool,
    /// Height of `(1 : x : z)` over `K'`.
    pub height_k_prime: u64,
    /// The same height normalized by `[K':K] = p`.
    pub height_k: Rational64,
    pub constant_params: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub points: Vec<LiftedPoint>,
    pub family: PointFamily,
    /// Height bound over `K'` for lifts of constant parameters.
    pub constant_bound: u64,
}

impl LiftReport {
    pub fn all_verified(&self) -> bool {
        self.points.iter().all(|p| p.verified)
    }

    pub fn constant_lifts_bounded(&self) -> bool {
        self.points.iter().filter(|p| p.constant_params).all(|p| p.height_k_prime <= self.constant_bound)
    }
}

fn frobenius_coeffs(u: &RatFunc) -> RatFunc {
    u.map_field(u.field(), |c| c.frobenius())
}

pub fn lift_rational_points(fact: &FrobeniusFactorization, params: &[Vec<RatFunc>]) -> Result<LiftReport> {
    let field = *fact.h.ctx();
    let p = fact.p;
    let n = fact.h.nvars();
    let all_poly = fact.g.terms().all(|(_, b)| b.is_polynomial());
    let constant_bound = if all_poly {
        fact.g.terms().map(|(_, b)| b.degree() as u64).max().unwrap_or(0)
    } else {
        fact.g.terms().map(|(_, b)| b.degree() as u64).sum()
    };
    let mut points = Vec::new();
    let mut family = PointFamily::new("lifts of parameter tuples over k(s)");
    for u in params {
        if u.len() != n {
            return Err(Error::InvalidInput(format!("parameter tuple of length {} for {n} variables", u.len())));
        }
        let x: Vec<RatFunc> = u.iter().map(frobenius_coeffs).collect();
        let z = fact.g.eval(u);
        let hx = fact.h.eval(&x);
        let verified = z.pow(p) == hx.inflate(p as usize);
        let mut coords = vec![RatFunc::one(&field)];
        coords.extend(x.iter().map(|xi| xi.inflate(p as usize)));
        coords.push(z.clone());
        let point: ProjPoint = normalize(&coords)?;
        let height_k_prime = point.height();
        let height_k = Rational64::new(height_k_prime as i64, p as i64);
        let constant_params = u.iter().all(RatFunc::is_constant);
        let mut rec = PointRecord::rational(point, format!("u = ({})", u.iter().map(|c| c.to_string_var("s")).collect::<Vec<_>>().join(", ")));
        rec.flags.push("coordinates in k(s)".into());
        family.records.push(rec);
        points.push(LiftedPoint { params: u.clone(), x, z, verified, height_k_prime, height_k, constant_params });
    }
    Ok(LiftReport { points, family, constant_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> &'static GaloisField {
        GaloisField::get(p, 1).unwrap()
    }

    fn poly(f: &'static GaloisField, s: &str, n: usize) -> MultiPoly<Fq> {
        MultiPoly::parse(f, s, Some(n)).unwrap()
    }

    #[test]
    fn affine_cover_and_pth_power_rejection() {
        let f = fp(3);
        let c = Cover::affine(poly(f, "x1^2+x2^2", 2)).unwrap();
        assert_eq!(c.charts.len(), 1);
        match Cover::affine(poly(f, "x1^3", 1)) {
            Err(Error::PthPower(w)) => assert_eq!(w, "x1"),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn projective_line_cocycle() {
        for p in [3u32, 5, 7] {
            let f = fp(p);
            let s = poly(f, &format!("x1^{}*x2", p - 1), 2);
            let c = Cover::projective(s, 1).unwrap();
            assert_eq!(c.charts[0].f, poly(f, "x1", 1));
            assert_eq!(c.charts[1].f, poly(f, &format!("x1^{}", p - 1), 1));
            assert!(c.overlaps.iter().all(|o| o.sections_agree && o.differentials_agree));
        }
    }

    #[test]
    fn bad_cocycle_detected() {
        let f = fp(3);
        let charts = vec![poly(f, "x1", 1), poly(f, "x1^2+1", 1)];
        assert!(matches!(Cover::from_charts(1, 1, charts), Err(Error::CocycleMismatch(_, _))));
        let good = vec![poly(f, "x1", 1), poly(f, "x1^2", 1)];
        assert!(Cover::from_charts(1, 1, good).is_ok());
    }

    #[test]
    fn differential_of_pth_power_term() {
        let f = fp(5);
        let c = Cover::affine(poly(f, "x1^5+x1", 1)).unwrap();
        assert_eq!(c.differentials()[0], vec![poly(f, "1", 1)]);
    }

    #[test]
    fn singular_point_examples() {
        let f = fp(5);
        let s = singular_points(&Cover::affine(poly(f, "x1^2+x2^2", 2)).unwrap(), 1).unwrap();
        assert_eq!(s.points.len(), 1);
        assert!(!s.points[0].degenerate);
        assert!(s.is_complete());
        let lin = singular_points(&Cover::affine(poly(f, "x1", 1)).unwrap(), 1).unwrap();
        assert!(lin.points.is_empty());
        assert!(lin.is_complete());
        let cube = singular_points(&Cover::affine(poly(f, "x1^3", 1)).unwrap(), 1).unwrap();
        assert_eq!(cube.points.len(), 1);
        assert!(cube.points[0].degenerate);
    }

    #[test]
    fn completeness_needs_extension() {
        let f = fp(3);
        // derivative x1(x1^2 - 1): all zeros rational
        let g = poly(f, "x1^4+x1^2", 1);
        let s = singular_points(&Cover::affine(g.clone()).unwrap(), 1).unwrap();
        assert!(s.is_complete());
        // derivative x1(x1^2 + 1): two zeros only in F_9
        let h = poly(f, "x1^4+2*x1^2", 1);
        let s1 = singular_points(&Cover::affine(h.clone()).unwrap(), 1).unwrap();
        assert_eq!(s1.charts[0].completeness, Completeness::Incomplete { zeros: 3, found: 1 });
        let s2 = singular_points(&Cover::affine(h).unwrap(), 2).unwrap();
        assert_eq!(s2.charts[0].completeness, Completeness::Complete { zeros: 3 });
    }

    #[test]
    fn chart_verdicts() {
        let f = fp(5);
        assert_eq!(chart_verdict(&poly(f, "x1^2", 1)).unwrap(), ChartVerdict::Good);
        assert_eq!(chart_verdict(&poly(f, "x1^3", 1)).unwrap(), ChartVerdict::Degenerate);
    }

    #[test]
    fn cubic_census_over_f7() {
        let f = fp(7);
        let c = cubic_degeneracy_census(f).unwrap();
        assert_eq!(c.degenerate, 49);
        assert_eq!(c.degenerate, c.predicted);
        assert!(c.degenerate * 7 <= 3 * c.total);
    }

    #[test]
    fn genericity_small() {
        let f = GaloisField::get(3, 3).unwrap();
        let params = GenericityParams { dim: 1, d: 1, n: 1, trials: 20, seed: 7 };
        let r = genericity_sample(f, params, Exec::Sequential).unwrap();
        assert!(r.fraction() >= 0.9, "{r:?}");
        let bad = GenericityParams { dim: 1, d: 0, n: 1, trials: 1, seed: 0 };
        assert!(genericity_sample(f, bad, Exec::Sequential).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let f = fp(3);
        let h = MultiPoly::<RatFunc>::parse_kt(f, "t*x1", Some(1), "t").unwrap();
        let fact = frobenius_factorization(&h);
        assert_eq!(fact.g, h);
        assert!(fact.verify());
        let cube = MultiPoly::<RatFunc>::parse_kt(f, "x1^3", Some(1), "t").unwrap();
        assert!(frobenius_factorization(&cube).verify());
        let f9 = GaloisField::get(3, 2).unwrap();
        let a = f9.generator();
        let c = MultiPoly::constant(RatFunc::constant(a), 1);
        let fc = frobenius_factorization(&c);
        assert_eq!(fc.g, MultiPoly::constant(RatFunc::constant(a.pow(3)), 1));
        assert!(fc.verify());
    }

    #[test]
    fn lifting_examples() {
        let f = fp(3);
        let h = MultiPoly::<RatFunc>::parse_kt(f, "t*x1 + x2", Some(2), "t").unwrap();
        let fact = frobenius_factorization(&h);
        let s = RatFunc::t(f);
        let one = RatFunc::one(&f);
        let zero = RatFunc::zero(&f);
        let params = vec![vec![one.clone(), one.clone()], vec![zero.clone(), RatFunc::constant(f.from_int(2))], vec![s.clone(), zero]];
        let r = lift_rational_points(&fact, &params).unwrap();
        assert!(r.all_verified());
        assert_eq!(r.points[0].z, RatFunc::parse(f, "t+1", "t").unwrap());
        assert_eq!(r.points[1].height_k_prime, 0);
        assert_eq!(r.points[2].z, RatFunc::parse(f, "t^2", "t").unwrap());
        assert_eq!(r.points[2].height_k_prime, 3);
        assert_eq!(r.points[2].height_k, Rational64::from_integer(1));
        assert!(r.constant_lifts_bounded());
        assert!(r.family.verify());
    }
}
