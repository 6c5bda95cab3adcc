//! Exact arithmetic: finite fields, polynomials, rational functions, jets,
//! matrices and a Gröbner engine.

pub mod coeff;
pub mod field;
pub mod groebner;
pub mod jet;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod ratfunc;
pub mod unipoly;

pub use coeff::Coeff;
pub use field::{Embedding, Fq, GaloisField};
pub use groebner::{groebner_basis, groebner_membership_one, groebner_membership_one_with, GroebnerBasis, GroebnerConfig, IdealCertificate, Membership};
pub use jet::{jet_compose, Jet};
pub use matrix::Matrix;
pub use monomial::{monomials_of_degree, monomials_up_to_degree, Monomial};
pub use poly::MultiPoly;
pub use ratfunc::{ratfunc_pth_root, RatFunc};
pub use unipoly::UniPoly;

use crate::error::{Error, Result};

/// The unique `b` with `b^p = a`.
pub fn pth_root(a: Fq) -> Fq {
    a.pth_root()
}

/// Second partials of `f` evaluated at `x`.
#[derive(Clone, Debug)]
pub struct Hessian<C: Coeff> {
    pub matrix: Matrix<C>,
    pub det: C,
    pub nondegenerate: bool,
}

pub fn hessian_at<C: Coeff>(f: &MultiPoly<C>, x: &[C]) -> Result<Hessian<C>> {
    let ctx = f.ctx();
    if C::characteristic(ctx) == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if x.len() != f.nvars() {
        return Err(Error::InvalidInput(format!("point has {} coordinates, polynomial has {} variables", x.len(), f.nvars())));
    }
    let n = f.nvars();
    let grad = f.gradient();
    let mut h = Matrix::zeros(ctx, n, n);
    for (i, gi) in grad.iter().enumerate() {
        for j in i..n {
            let v = gi.partial(j).eval(x);
            h.set(i, j, v.clone());
            h.set(j, i, v);
        }
    }
    let det = h.det();
    let nondegenerate = !det.is_zero();
    Ok(Hessian { matrix: h, det, nondegenerate })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hessian_examples() {
        let f = GaloisField::get(5, 1).unwrap();
        let zero = [f.zero(), f.zero()];
        let q = MultiPoly::parse(f, "x1^2+x2^2", None).unwrap();
        let h = hessian_at(&q, &[f.from_int(3), f.from_int(1)]).unwrap();
        assert_eq!(h.matrix, Matrix::diagonal(&f, &[f.from_int(2), f.from_int(2)]));
        assert!(h.nondegenerate && h.matrix.is_symmetric());

        let c = MultiPoly::parse(f, "x1^3", None).unwrap();
        let h = hessian_at(&c, &[f.zero()]).unwrap();
        assert!(!h.nondegenerate);

        let xy = MultiPoly::parse(f, "x1*x2", None).unwrap();
        let h = hessian_at(&xy, &zero).unwrap();
        assert_eq!(h.det, f.from_int(-1));
        assert!(h.nondegenerate);
    }

    #[test]
    fn pth_root_fixed_points() {
        let f = GaloisField::get(3, 2).unwrap();
        assert_eq!(pth_root(f.zero()), f.zero());
        assert_eq!(pth_root(f.one()), f.one());
        for a in f.elements() {
            assert_eq!(pth_root(a).pow(3), a);
        }
    }
}
