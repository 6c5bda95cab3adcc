//! Blow-up resolution of `z^e = Σ x_i^2` at the origin.
//!
//! Variable 0 is `z`, variables `1..=n` are the `x_i`. Blowing up the origin
//! gives one chart per variable: in chart `v` the variable `v` is kept and
//! every other variable `w` is replaced by `w·x_v`. The resolution follows
//! the `z`-chart, where the equation becomes `z^{e-2} = Σ w_i^2`.

use serde::Serialize;

use crate::algebra::{groebner_membership_one, Fq, GaloisField, GroebnerConfig, IdealCertificate, Membership, Monomial, MultiPoly};
use crate::covers::distinct_zero_count;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// `z^e - Σ_{i=1}^n x_i^2` in `n + 1` variables.
pub fn model_equation(field: &'static GaloisField, e: u32, n: usize) -> MultiPoly<Fq> {
    let nv = n + 1;
    let mut f = MultiPoly::monomial(field.one(), pure(nv, 0, e));
    for i in 1..nv {
        f.add_term(pure(nv, i, 2), &-field.one());
    }
    f
}

fn pure(nv: usize, i: usize, e: u32) -> Monomial {
    Monomial::from_exponents((0..nv).map(|j| if j == i { e } else { 0 }).collect())
}

#[derive(Clone, Debug, Serialize)]
pub enum Smoothness {
    /// `1 ∈ (F, ∂F)`.
    Smooth(IdealCertificate<Fq>),
    /// `(F, ∂F)` is a proper ideal; a rational singular point if one was found.
    Singular { witness: Option<Vec<Fq>> },
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth(_))
    }

    pub fn certificate(&self) -> Option<&IdealCertificate<Fq>> {
        match self {
            Smoothness::Smooth(c) => Some(c),
            Smoothness::Singular { .. } => None,
        }
    }
}

fn jacobian_ideal(f: &MultiPoly<Fq>) -> Vec<MultiPoly<Fq>> {
    std::iter::once(f.clone()).chain(f.gradient()).filter(|g| !g.is_zero()).collect()
}

const WITNESS_SEARCH_LIMIT: u64 = 200_000;

/// Decides smoothness of `F = 0` over the algebraic closure.
pub fn smoothness_certificate(f: &MultiPoly<Fq>) -> Result<Smoothness> {
    let gens = jacobian_ideal(f);
    match groebner_membership_one(&gens)? {
        Membership::Unit(cert) => Ok(Smoothness::Smooth(cert)),
        Membership::NotMember { .. } => Ok(Smoothness::Singular { witness: rational_zero(&gens) }),
        Membership::BoundExhausted { pairs, .. } => Err(Error::GroebnerBoundExhausted(pairs)),
    }
}

fn rational_zero(gens: &[MultiPoly<Fq>]) -> Option<Vec<Fq>> {
    let field = *gens[0].ctx();
    let nv = gens[0].nvars();
    let origin = vec![field.zero(); nv];
    if gens.iter().all(|g| g.eval(&origin).is_zero()) {
        return Some(origin);
    }
    let q = field.order() as u64;
    let total = q.checked_pow(nv as u32).filter(|&t| t <= WITNESS_SEARCH_LIMIT)?;
    (0..total).find_map(|mut idx| {
        let pt: Vec<Fq> = (0..nv)
            .map(|_| {
                let c = field.from_encoding((idx % q) as u32);
                idx /= q;
                c
            })
            .collect();
        gens.iter().all(|g| g.eval(&pt).is_zero()).then_some(pt)
    })
}

/// One affine chart of a blow-up.
#[derive(Clone, Debug, Serialize)]
pub struct BlowupChart {
    /// The variable kept; its zero set is the exceptional divisor.
    pub variable: usize,
    /// Order of vanishing of the total transform along the exceptional divisor.
    pub mu: u32,
    pub strict: MultiPoly<Fq>,
    /// `total = x_v^μ · strict` was re-multiplied and compared.
    pub factorization_holds: bool,
    pub smoothness: Option<Smoothness>,
}

impl BlowupChart {
    pub fn label(&self) -> String {
        if self.variable == 0 {
            "z-chart".to_string()
        } else {
            format!("x{}-chart", self.variable)
        }
    }

    pub fn is_certified_smooth(&self) -> bool {
        self.smoothness.as_ref().and_then(Smoothness::certificate).is_some_and(IdealCertificate::verify)
    }
}

/// Total transform of `f` in chart `v`.
pub fn total_transform(f: &MultiPoly<Fq>, v: usize) -> MultiPoly<Fq> {
    let nv = f.nvars();
    let xv = MultiPoly::var(f.ctx(), nv, v);
    let subs: Vec<MultiPoly<Fq>> =
        (0..nv).map(|w| if w == v { xv.clone() } else { &MultiPoly::var(f.ctx(), nv, w) * &xv }).collect();
    f.substitute(&subs)
}

#[derive(Clone, Debug, Serialize)]
pub struct BlowupStep {
    pub index: usize,
    pub equation: MultiPoly<Fq>,
    pub charts: Vec<BlowupChart>,
}

impl BlowupStep {
    pub fn z_chart(&self) -> &BlowupChart {
        &self.charts[0]
    }
}

/// Blows up the origin of `F = 0`, which must be an isolated singular point.
///
/// Every chart other than the `z`-chart is certified smooth; the `z`-chart
/// is certified as well, so that a smooth result ends the resolution.
pub fn blowup_step(f: &MultiPoly<Fq>, index: usize, exec: Exec) -> Result<BlowupStep> {
    let nv = f.nvars();
    let field = *f.ctx();
    let origin = vec![field.zero(); nv];
    if !f.eval(&origin).is_zero() || f.gradient().iter().any(|g| !g.eval(&origin).is_zero()) {
        return Err(Error::CenterNotSingular);
    }
    if distinct_zero_count(&jacobian_ideal(f), &GroebnerConfig::default())? != Some(1) {
        return Err(Error::SingularLocusNotIsolated);
    }
    let charts = exec.map_range(nv, |v| -> Result<BlowupChart> {
        let total = total_transform(f, v);
        let mu = total.valuation_in(v);
        let strict = total.div_var_power(v, mu);
        let factorization_holds = &strict * &MultiPoly::monomial(field.one(), pure(nv, v, mu)) == total;
        let smoothness = Some(smoothness_certificate(&strict)?);
        Ok(BlowupChart { variable: v, mu, strict, factorization_holds, smoothness })
    });
    Ok(BlowupStep { index, equation: f.clone(), charts: charts.into_iter().collect::<Result<_>>()? })
}

/// `w_i^2 · S_x(1/w_i, w_i z, w_j/w_i)`, the `x_i`-chart strict transform
/// written in `z`-chart coordinates and cleared of the unit `w_i^2`.
pub fn overlap_transform(strict_x: &MultiPoly<Fq>, i: usize, mu: u32) -> Option<MultiPoly<Fq>> {
    let nv = strict_x.nvars();
    let mut out = MultiPoly::zero(strict_x.ctx(), nv);
    for (m, c) in strict_x.terms() {
        let a = m.get(0) as i64;
        let b = m.get(i) as i64;
        let others: i64 = (1..nv).filter(|&j| j != i).map(|j| m.get(j) as i64).sum();
        let wi = b - a - others + mu as i64;
        if wi < 0 {
            return None;
        }
        let e: Vec<u32> = (0..nv)
            .map(|j| match j {
                0 => b as u32,
                j if j == i => wi as u32,
                j => m.get(j),
            })
            .collect();
        out.add_term(Monomial::from_exponents(e), c);
    }
    Some(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerEntry {
    pub step: usize,
    /// `π^* F = E^μ · F̃` on the `z`-chart.
    pub mu: u32,
    pub holds: bool,
}

/// Pullback factorization `π^* F = E^μ F̃` along the resolution, recomputed
/// from each step's input equation.
#[derive(Clone, Debug, Serialize)]
pub struct PullbackLedger {
    pub entries: Vec<LedgerEntry>,
}

impl PullbackLedger {
    pub fn consistent(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn coefficients(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.mu).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Resolution {
    pub initial: MultiPoly<Fq>,
    pub steps: Vec<BlowupStep>,
    /// Strict transforms on overlaps agree up to the unit `w_i^2`.
    pub overlaps_consistent: bool,
}

impl Resolution {
    /// The `z`-chart equations after each step.
    pub fn z_chart_equations(&self) -> Vec<&MultiPoly<Fq>> {
        self.steps.iter().map(|s| &s.z_chart().strict).collect()
    }

    /// Charts that are not blown up again: every `x_i`-chart and the last
    /// `z`-chart.
    pub fn terminal_charts(&self) -> Vec<&BlowupChart> {
        let mut out: Vec<&BlowupChart> = self.steps.iter().flat_map(|s| s.charts.iter().skip(1)).collect();
        if let Some(last) = self.steps.last() {
            out.push(last.z_chart());
        }
        out
    }

    pub fn all_terminal_smooth(&self) -> bool {
        self.terminal_charts().iter().all(|c| c.is_certified_smooth())
    }

    pub fn pullback_ledger(&self) -> PullbackLedger {
        let entries = self
            .steps
            .iter()
            .map(|s| {
                let total = total_transform(&s.equation, 0);
                let z = s.z_chart();
                let field = *total.ctx();
                let e = MultiPoly::monomial(field.one(), pure(total.nvars(), 0, z.mu));
                LedgerEntry { step: s.index, mu: z.mu, holds: &e * &z.strict == total && z.mu == total.valuation_in(0) }
            })
            .collect();
        PullbackLedger { entries }
    }
}

/// Blows up the origin of the `z`-chart until it is smooth.
pub fn resolve(f: &MultiPoly<Fq>, exec: Exec) -> Result<Resolution> {
    let mut eq = f.clone();
    let mut steps: Vec<BlowupStep> = Vec::new();
    let limit = f.degree().unwrap_or(0) as usize + 1;
    loop {
        if smoothness_certificate(&eq)?.is_smooth() {
            break;
        }
        if steps.len() >= limit {
            return Err(Error::InvalidInput("resolution did not terminate".into()));
        }
        let step = blowup_step(&eq, steps.len() + 1, exec)?;
        eq = step.z_chart().strict.clone();
        steps.push(step);
    }
    let overlaps_consistent = steps.iter().all(|s| {
        let z = s.z_chart();
        s.charts.iter().skip(1).all(|c| overlap_transform(&c.strict, c.variable, z.mu).is_some_and(|g| g == z.strict))
    });
    Ok(Resolution { initial: f.clone(), steps, overlaps_consistent })
}

/// Resolves `z^p = Σ_{i=1}^n x_i^2` over `F_p`.
pub fn desingularize(p: u32, n: usize, exec: Exec) -> Result<Resolution> {
    let field = GaloisField::prime(p)?;
    if n == 0 {
        return Err(Error::InvalidInput("need at least one x variable".into()));
    }
    resolve(&model_equation(field, p, n), exec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_chart_strict_transform() {
        let f = GaloisField::prime(5).unwrap();
        let step = blowup_step(&model_equation(f, 5, 1), 1, Exec::Sequential).unwrap();
        let x = &step.charts[1];
        assert_eq!(x.mu, 2);
        assert_eq!(x.strict, MultiPoly::parse(f, "x1^5*x2^3 - 1", Some(2)).unwrap());
        assert!(x.factorization_holds && x.is_certified_smooth());
        let z = step.z_chart();
        assert_eq!(z.strict, model_equation(f, 3, 1));
        assert!(!z.smoothness.as_ref().unwrap().is_smooth());
    }

    #[test]
    fn resolution_of_z5() {
        let r = desingularize(5, 2, Exec::Sequential).unwrap();
        assert_eq!(r.steps.len(), 2);
        let f = GaloisField::prime(5).unwrap();
        assert_eq!(r.z_chart_equations(), vec![&model_equation(f, 3, 2), &model_equation(f, 1, 2)]);
        assert!(r.all_terminal_smooth());
        assert!(r.overlaps_consistent);
        let ledger = r.pullback_ledger();
        assert!(ledger.consistent());
        assert_eq!(ledger.coefficients(), vec![2, 2]);
    }

    #[test]
    fn smooth_input_needs_no_steps() {
        let f = GaloisField::prime(3).unwrap();
        let r = resolve(&model_equation(f, 1, 2), Exec::Sequential).unwrap();
        assert!(r.steps.is_empty());
        assert!(r.pullback_ledger().entries.is_empty());
    }

    #[test]
    fn bad_centers() {
        let f = GaloisField::prime(3).unwrap();
        let smooth = model_equation(f, 1, 1);
        assert_eq!(blowup_step(&smooth, 1, Exec::Sequential).unwrap_err(), Error::CenterNotSingular);
        let line = MultiPoly::parse(f, "x1^2", Some(2)).unwrap();
        assert_eq!(blowup_step(&line, 1, Exec::Sequential).unwrap_err(), Error::SingularLocusNotIsolated);
    }

    #[test]
    fn singular_witness_is_origin() {
        let f = GaloisField::prime(7).unwrap();
        match smoothness_certificate(&model_equation(f, 7, 2)).unwrap() {
            Smoothness::Singular { witness } => assert_eq!(witness, Some(vec![f.zero(); 3])),
            s => panic!("expected singular, got {s:?}"),
        }
    }
}
