//! Power series truncated at total degree `r`.

use super::coeff::Coeff;
use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// A polynomial read modulo `𝔪^r`: every stored monomial has degree `< r`.
#[derive(Clone, PartialEq, Debug)]
pub struct Jet<C: Coeff> {
    poly: MultiPoly<C>,
    order: u32,
}

impl<C: Coeff> Jet<C> {
    pub fn new(poly: &MultiPoly<C>, order: u32) -> Self {
        Jet { poly: poly.truncate(order), order }
    }

    pub fn poly(&self) -> &MultiPoly<C> {
        &self.poly
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn has_constant_term(&self) -> bool {
        !self.poly.constant_term().is_zero()
    }

    /// Identity substitution `x_i ↦ x_i` at order `r`.
    pub fn identity(ctx: &C::Ctx, nvars: usize, order: u32) -> Vec<Jet<C>> {
        (0..nvars).map(|i| Jet::new(&MultiPoly::var(ctx, nvars, i), order)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let r = self.order.min(other.order);
        Jet::new(&(&self.poly + &other.poly), r)
    }

    /// Product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let r = self.order.min(other.order);
        Jet { poly: truncated_product(&self.poly, &other.poly, r), order: r }
    }

    pub fn compose(&self, phi: &[Jet<C>], r: u32) -> Result<Jet<C>> {
        jet_compose(self, phi, r)
    }
}

fn truncated_product<C: Coeff>(a: &MultiPoly<C>, b: &MultiPoly<C>, r: u32) -> MultiPoly<C> {
    let mut out = MultiPoly::zero(a.ctx(), a.nvars());
    for (ma, ca) in a.terms() {
        let da = ma.degree();
        if da >= r {
            continue;
        }
        for (mb, cb) in b.terms() {
            if da + mb.degree() < r {
                out.add_term(ma.mul(mb), &ca.times(cb));
            }
        }
    }
    out
}

/// `f(φ_1, …, φ_n)` modulo `𝔪^r`.
///
/// Each `φ_i` must have zero constant term, so that only the `r`-jets of the
/// inputs matter. Products are truncated as they are formed.
pub fn jet_compose<C: Coeff>(f: &Jet<C>, phi: &[Jet<C>], r: u32) -> Result<Jet<C>> {
    if phi.len() != f.nvars() {
        return Err(Error::InvalidInput(format!("{} substitutions for {} variables", phi.len(), f.nvars())));
    }
    if let Some(i) = phi.iter().position(Jet::has_constant_term) {
        return Err(Error::ConstantTerm(i));
    }
    let ctx = f.poly.ctx().clone();
    let target = phi.first().map_or(0, Jet::nvars);
    if phi.iter().any(|g| g.nvars() != target) {
        return Err(Error::InvalidInput("substitutions have different arities".into()));
    }
    let r = r.min(f.order).min(phi.iter().map(Jet::order).min().unwrap_or(r));
    let phis: Vec<MultiPoly<C>> = phi.iter().map(|g| g.poly.truncate(r)).collect();
    let mut powers: Vec<Vec<MultiPoly<C>>> = phis.iter().map(|g| vec![MultiPoly::one(&ctx, target), g.clone()]).collect();
    let mut out = MultiPoly::zero(&ctx, target);
    for (m, c) in f.poly.terms() {
        if m.degree() >= r {
            continue;
        }
        let mut t = MultiPoly::constant(c.clone(), target);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = truncated_product(powers[i].last().expect("nonempty"), &phis[i], r);
                powers[i].push(next);
            }
            t = truncated_product(&t, &powers[i][e as usize], r);
        }
        out = &out + &t;
    }
    Ok(Jet { poly: out, order: r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Fq, GaloisField};

    fn p(f: &'static GaloisField, s: &str) -> MultiPoly<Fq> {
        MultiPoly::parse(f, s, Some(2)).unwrap()
    }

    #[test]
    fn compose_examples() {
        let f = GaloisField::get(7, 1).unwrap();
        let phi = vec![Jet::new(&p(f, "x1+x2^2"), 4), Jet::new(&p(f, "x2"), 4)];
        let a = jet_compose(&Jet::new(&p(f, "x1"), 3), &phi, 3).unwrap();
        assert_eq!(a.poly(), &p(f, "x1+x2^2"));
        let b = jet_compose(&Jet::new(&p(f, "x1^2"), 4), &phi, 4).unwrap();
        assert_eq!(b.poly(), &p(f, "x1^2+2*x1*x2^2"));
        let g = p(f, "3+x1^2*x2+x2^5+x1");
        let id = Jet::identity(&f, 2, 4);
        assert_eq!(jet_compose(&Jet::new(&g, 6), &id, 4).unwrap().poly(), &g.truncate(4));
    }

    #[test]
    fn constant_term_rejected() {
        let f = GaloisField::get(5, 1).unwrap();
        let phi = vec![Jet::new(&p(f, "1+x1"), 3), Jet::new(&p(f, "x2"), 3)];
        assert_eq!(jet_compose(&Jet::new(&p(f, "x1"), 3), &phi, 3), Err(Error::ConstantTerm(0)));
    }
}
