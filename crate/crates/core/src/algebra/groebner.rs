//! Buchberger's algorithm in grevlex order, with optional cofactor tracking
//! so that `1 ∈ I` comes with a re-checkable witness.

use std::collections::{BTreeSet, HashSet};

use super::coeff::Coeff;
use super::monomial::Monomial;
use super::poly::MultiPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct GroebnerConfig {
    /// Maximum number of S-pairs reduced.
    pub max_pairs: usize,
    /// S-pairs whose lcm exceeds this total degree are not reduced.
    pub max_degree: u32,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { max_pairs: 20_000, max_degree: 96 }
    }
}

/// Witness that `1 = Σ c_i g_i`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct IdealCertificate<C: Coeff> {
    pub generators: Vec<MultiPoly<C>>,
    pub cofactors: Vec<MultiPoly<C>>,
}

impl<C: Coeff> IdealCertificate<C> {
    /// Expands `Σ c_i g_i` and compares with one.
    pub fn verify(&self) -> bool {
        if self.generators.len() != self.cofactors.len() || self.generators.is_empty() {
            return false;
        }
        let g0 = &self.generators[0];
        let mut sum = MultiPoly::zero(g0.ctx(), g0.nvars());
        for (c, g) in self.cofactors.iter().zip(&self.generators) {
            sum = &sum + &(c * g);
        }
        sum == MultiPoly::one(g0.ctx(), g0.nvars())
    }
}

#[derive(Clone, Debug)]
pub enum Membership<C: Coeff> {
    /// `1 ∈ I`, with cofactors.
    Unit(IdealCertificate<C>),
    /// The reduced basis was completed and contains no unit.
    NotMember { basis: GroebnerBasis<C> },
    /// A bound was hit before the basis was complete.
    BoundExhausted { pairs: usize, max_degree: u32 },
}

impl<C: Coeff> Membership<C> {
    pub fn certificate(&self) -> Option<&IdealCertificate<C>> {
        match self {
            Membership::Unit(c) => Some(c),
            _ => None,
        }
    }
}

/// Reduced Gröbner basis (monic, grevlex).
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<C: Coeff> {
    polys: Vec<MultiPoly<C>>,
    nvars: usize,
}

impl<C: Coeff> GroebnerBasis<C> {
    pub fn polys(&self) -> &[MultiPoly<C>] {
        &self.polys
    }

    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().filter_map(|g| g.leading().map(|(m, _)| m.clone())).collect()
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &MultiPoly<C>) -> MultiPoly<C> {
        let elems: Vec<Elem<C>> = self.polys.iter().map(|g| Elem { poly: g.clone(), cof: Vec::new() }).collect();
        reduce(Elem { poly: f.clone(), cof: Vec::new() }, &elems, false).poly
    }

    pub fn contains(&self, f: &MultiPoly<C>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Whether every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        self.pure_power_bounds().is_some()
    }

    fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        if self.is_unit() {
            return Some(vec![0; self.nvars]);
        }
        let mut bounds = vec![None; self.nvars];
        for m in self.leading_monomials() {
            if let Some(i) = m.pure_power_of() {
                let e = m.get(i);
                bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
            }
        }
        bounds.into_iter().collect()
    }

    /// Monomials outside the leading ideal; `None` if the ideal is not
    /// zero-dimensional.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let bounds = self.pure_power_bounds()?;
        if bounds.iter().any(|&b| b == 0) {
            return Some(Vec::new());
        }
        let lms = self.leading_monomials();
        let mut out = Vec::new();
        let mut e = vec![0u32; self.nvars];
        loop {
            let m = Monomial::from_exponents(e.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            let mut i = 0;
            loop {
                if i == self.nvars {
                    return Some(out);
                }
                e[i] += 1;
                if e[i] < bounds[i] {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
    }

    /// `dim_k k[x]/I` for zero-dimensional `I`.
    pub fn quotient_dimension(&self) -> Option<usize> {
        self.standard_monomials().map(|s| s.len())
    }
}

#[derive(Clone)]
struct Elem<C: Coeff> {
    poly: MultiPoly<C>,
    /// Coordinates in terms of the input generators (empty when untracked).
    cof: Vec<MultiPoly<C>>,
}

fn reduce<C: Coeff>(mut f: Elem<C>, basis: &[Elem<C>], track: bool) -> Elem<C> {
    let ctx = f.poly.ctx().clone();
    let mut rem = MultiPoly::zero(&ctx, f.poly.nvars());
    while let Some((lm, lc)) = f.poly.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis.iter().find(|b| b.poly.leading().is_some_and(|(bm, _)| bm.divides(&lm)));
        match divisor {
            Some(b) => {
                let (bm, bc) = b.poly.leading().expect("nonzero");
                let q = lm.div(bm).expect("divides");
                let c = lc.times(&bc.inverse().expect("unit"));
                f.poly.sub_mul_term(&b.poly, &q, &c);
                if track {
                    for (fc, bcof) in f.cof.iter_mut().zip(&b.cof) {
                        fc.sub_mul_term(bcof, &q, &c);
                    }
                }
            }
            None => {
                f.poly.add_term(lm.clone(), &lc.negated());
                rem.add_term(lm, &lc);
            }
        }
    }
    Elem { poly: rem, cof: f.cof }
}

fn make_monic<C: Coeff>(e: Elem<C>) -> Elem<C> {
    let inv = e.poly.leading().expect("nonzero").1.inverse().expect("unit");
    Elem { poly: e.poly.scale(&inv), cof: e.cof.iter().map(|c| c.scale(&inv)).collect() }
}

fn s_poly<C: Coeff>(a: &Elem<C>, b: &Elem<C>, track: bool) -> Elem<C> {
    let (am, _) = a.poly.leading().expect("nonzero");
    let (bm, _) = b.poly.leading().expect("nonzero");
    let l = am.lcm(bm);
    let qa = l.div(am).expect("divides");
    let qb = l.div(bm).expect("divides");
    let one = C::one(a.poly.ctx());
    let neg = one.negated();
    let poly = &a.poly.mul_term(&qa, &one) - &b.poly.mul_term(&qb, &one);
    let cof = if track {
        a.cof.iter().zip(&b.cof).map(|(ca, cb)| &ca.mul_term(&qa, &one) + &cb.mul_term(&qb, &neg)).collect()
    } else {
        Vec::new()
    };
    Elem { poly, cof }
}

enum Outcome<C: Coeff> {
    Unit(Elem<C>),
    Complete(Vec<Elem<C>>),
    Exhausted { pairs: usize },
}

fn buchberger<C: Coeff>(gens: &[MultiPoly<C>], cfg: &GroebnerConfig, track: bool) -> Outcome<C> {
    let k = gens.len();
    let ctx = gens[0].ctx().clone();
    let nvars = gens[0].nvars();
    let unit_cof = |i: usize| -> Vec<MultiPoly<C>> {
        if !track {
            return Vec::new();
        }
        (0..k).map(|j| if i == j { MultiPoly::one(&ctx, nvars) } else { MultiPoly::zero(&ctx, nvars) }).collect()
    };

    let mut basis: Vec<Elem<C>> = Vec::new();
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();

    let add = |basis: &mut Vec<Elem<C>>, pairs: &mut BTreeSet<(Monomial, usize, usize)>, e: Elem<C>| {
        let e = make_monic(e);
        let idx = basis.len();
        let lm = e.poly.leading().expect("nonzero").0.clone();
        for (j, b) in basis.iter().enumerate() {
            let bm = b.poly.leading().expect("nonzero").0;
            pairs.insert((lm.lcm(bm), j, idx));
        }
        basis.push(e);
    };

    for (i, g) in gens.iter().enumerate() {
        let e = reduce(Elem { poly: g.clone(), cof: unit_cof(i) }, &basis, track);
        if e.poly.is_zero() {
            continue;
        }
        if e.poly.is_constant() {
            return Outcome::Unit(make_monic(e));
        }
        add(&mut basis, &mut pairs, e);
    }

    let mut processed = 0usize;
    let mut skipped_degree = false;
    while let Some((l, i, j)) = pairs.pop_first() {
        done.insert((i, j));
        let mi = basis[i].poly.leading().expect("nonzero").0;
        let mj = basis[j].poly.leading().expect("nonzero").0;
        if mi.coprime(mj) {
            continue;
        }
        let chain = (0..basis.len()).any(|c| {
            c != i
                && c != j
                && basis[c].poly.leading().expect("nonzero").0.divides(&l)
                && done.contains(&(i.min(c), i.max(c)))
                && done.contains(&(j.min(c), j.max(c)))
        });
        if chain {
            continue;
        }
        if l.degree() > cfg.max_degree {
            skipped_degree = true;
            continue;
        }
        processed += 1;
        if processed > cfg.max_pairs {
            return Outcome::Exhausted { pairs: processed };
        }
        let s = s_poly(&basis[i], &basis[j], track);
        let r = reduce(s, &basis, track);
        if r.poly.is_zero() {
            continue;
        }
        if r.poly.is_constant() {
            return Outcome::Unit(make_monic(r));
        }
        add(&mut basis, &mut pairs, r);
    }
    if skipped_degree {
        return Outcome::Exhausted { pairs: processed };
    }
    Outcome::Complete(basis)
}

fn interreduce<C: Coeff>(basis: Vec<Elem<C>>, nvars: usize) -> GroebnerBasis<C> {
    let mut minimal: Vec<Elem<C>> = Vec::new();
    for (i, e) in basis.iter().enumerate() {
        let lm = e.poly.leading().expect("nonzero").0;
        let redundant = basis.iter().enumerate().any(|(j, o)| {
            let om = o.poly.leading().expect("nonzero").0;
            j != i && om.divides(lm) && (om != lm || j < i)
        });
        if !redundant {
            minimal.push(Elem { poly: e.poly.clone(), cof: Vec::new() });
        }
    }
    let mut polys = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Elem<C>> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, e)| e.clone()).collect();
        let (lm, lc) = minimal[i].poly.leading().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero");
        let mut tail = minimal[i].poly.clone();
        tail.add_term(lm.clone(), &lc.negated());
        let mut r = reduce(Elem { poly: tail, cof: Vec::new() }, &others, false).poly;
        r.add_term(lm, &lc);
        polys.push(r.monic());
    }
    polys.sort_by(|a, b| a.leading().map(|x| x.0).cmp(&b.leading().map(|x| x.0)));
    GroebnerBasis { polys, nvars }
}

fn check_gens<C: Coeff>(gens: &[MultiPoly<C>]) -> Result<()> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidInput("no generators".into()));
    };
    if gens.iter().any(|g| g.nvars() != first.nvars()) {
        return Err(Error::InvalidInput("generators have different arities".into()));
    }
    Ok(())
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis<C: Coeff>(gens: &[MultiPoly<C>], cfg: &GroebnerConfig) -> Result<GroebnerBasis<C>> {
    check_gens(gens)?;
    let nvars = gens[0].nvars();
    match buchberger(gens, cfg, false) {
        Outcome::Unit(_) => Ok(GroebnerBasis { polys: vec![MultiPoly::one(gens[0].ctx(), nvars)], nvars }),
        Outcome::Complete(b) => Ok(interreduce(b, nvars)),
        Outcome::Exhausted { .. } => Err(Error::GroebnerBoundExhausted(cfg.max_pairs)),
    }
}

/// Decides `1 ∈ (gens)`; on success the cofactors are returned.
pub fn groebner_membership_one<C: Coeff>(gens: &[MultiPoly<C>]) -> Result<Membership<C>> {
    groebner_membership_one_with(gens, &GroebnerConfig::default())
}

pub fn groebner_membership_one_with<C: Coeff>(gens: &[MultiPoly<C>], cfg: &GroebnerConfig) -> Result<Membership<C>> {
    check_gens(gens)?;
    let nvars = gens[0].nvars();
    Ok(match buchberger(gens, cfg, true) {
        Outcome::Unit(e) => Membership::Unit(IdealCertificate { generators: gens.to_vec(), cofactors: e.cof }),
        Outcome::Complete(b) => Membership::NotMember { basis: interreduce(b, nvars) },
        Outcome::Exhausted { pairs } => Membership::BoundExhausted { pairs, max_degree: cfg.max_degree },
    })
}
