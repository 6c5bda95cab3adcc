//! Formal normal form `f = a_0 + Σ x_i^2 + O(𝔪^r)` at a nondegenerate
//! critical point.

use serde::Serialize;

use crate::algebra::{hessian_at, jet_compose, Embedding, Fq, GaloisField, Jet, Matrix, Monomial, MultiPoly};
use crate::error::{Error, Result};

/// `Cᵀ Q C = diag(1, …, 1)` over `field`, which is the base field or its
/// quadratic extension.
#[derive(Clone, Debug, Serialize)]
pub struct Diagonalization {
    /// Extension degree of `field` over the field of `Q`: 1 or 2.
    pub extension_degree: u32,
    #[serde(skip)]
    pub field: &'static GaloisField,
    /// `Pᵀ Q P = diag(diagonal)` over the base field.
    pub congruence: Matrix<Fq>,
    pub diagonal: Vec<Fq>,
    /// The full change of basis, over `field`.
    pub c: Matrix<Fq>,
}

impl Diagonalization {
    pub fn verify(&self, q: &Matrix<Fq>) -> bool {
        let emb = match q.ctx().embedding_into(self.field) {
            Ok(e) => e,
            Err(_) => return false,
        };
        let q = map_matrix(q, &emb);
        let d = self.c.transpose().mul(&q).mul(&self.c);
        d == Matrix::identity(&self.field, q.rows())
    }
}

fn map_matrix(m: &Matrix<Fq>, emb: &Embedding) -> Matrix<Fq> {
    let rows = m.to_rows().into_iter().map(|r| r.into_iter().map(|a| emb.apply(a)).collect()).collect();
    Matrix::from_rows(&emb.target(), rows)
}

fn map_poly(f: &MultiPoly<Fq>, emb: &Embedding) -> MultiPoly<Fq> {
    f.map_coeffs(&emb.target(), |a| emb.apply(*a))
}

/// Symmetric Gaussian elimination followed by rescaling with square roots.
pub fn diagonalize_quadratic(q: &Matrix<Fq>) -> Result<Diagonalization> {
    let field = *q.ctx();
    if field.characteristic() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !q.is_square() || !q.is_symmetric() {
        return Err(Error::InvalidInput("quadratic form must be a symmetric square matrix".into()));
    }
    if q.det().is_zero() {
        return Err(Error::DegenerateQuadric);
    }
    let n = q.rows();
    let mut a = q.clone();
    let mut p = Matrix::identity(&field, n);
    // column j += s·column k on both P and A, and the matching row operation on A
    let add = |a: &mut Matrix<Fq>, p: &mut Matrix<Fq>, j: usize, k: usize, s: Fq| {
        for r in 0..n {
            let v = *a.get(r, j) + s * *a.get(r, k);
            a.set(r, j, v);
            let v = *p.get(r, j) + s * *p.get(r, k);
            p.set(r, j, v);
        }
        for c in 0..n {
            let v = *a.get(j, c) + s * *a.get(k, c);
            a.set(j, c, v);
        }
    };
    for k in 0..n {
        if a.get(k, k).is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                add(&mut a, &mut p, k, j, field.one());
                if a.get(k, k).is_zero() {
                    // a_kk + 2a_kj + a_jj vanished; flip the sign of the step
                    add(&mut a, &mut p, k, j, -field.from_int(2));
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a.get(k, j).is_zero()) {
                add(&mut a, &mut p, k, j, field.one());
            } else {
                return Err(Error::DegenerateQuadric);
            }
        }
        let pivot = *a.get(k, k);
        for j in k + 1..n {
            let s = -(*a.get(k, j) / pivot);
            if !s.is_zero() {
                add(&mut a, &mut p, j, k, s);
            }
        }
    }
    debug_assert!(a.is_diagonal());
    let diagonal: Vec<Fq> = (0..n).map(|i| *a.get(i, i)).collect();
    let extension_degree = if diagonal.iter().all(Fq::is_square) { 1 } else { 2 };
    let big = field.extension(extension_degree)?;
    let emb = field.embedding_into(big)?;
    let scale: Vec<Fq> = diagonal
        .iter()
        .map(|&d| emb.apply(d).sqrt().and_then(|s| s.inv()).expect("every element is a square after extension"))
        .collect();
    let c = map_matrix(&p, &emb).mul(&Matrix::diagonal(&big, &scale));
    Ok(Diagonalization { extension_degree, field: big, congruence: p, diagonal, c })
}

/// One stage of the coordinate change.
#[derive(Clone, Debug, Serialize)]
pub enum Step {
    /// `z ↦ z - a_0`.
    Translation { a0: Fq },
    /// `x = C x̃`.
    Linear { matrix: Matrix<Fq> },
    /// `x_i = x̃_i + h_i` with each `h_i` homogeneous of degree `degree - 1`;
    /// it removes the degree-`degree` part.
    HigherOrder { degree: u32, shifts: Vec<MultiPoly<Fq>> },
}

/// Composite substitution `x = φ(x̃)` modulo `𝔪^order`.
#[derive(Clone, Debug, Serialize)]
pub struct CoordinateChange {
    pub nvars: usize,
    pub order: u32,
    pub steps: Vec<Step>,
    pub composed: Vec<MultiPoly<Fq>>,
}

impl CoordinateChange {
    /// Composes the recorded steps again from the identity.
    pub fn recompose(&self) -> Result<Vec<MultiPoly<Fq>>> {
        let field = self.field();
        let mut phi = Jet::identity(&field, self.nvars, self.order);
        for step in &self.steps {
            match step {
                Step::Translation { .. } => {}
                Step::Linear { matrix } => phi = linear_jets(matrix, self.order),
                Step::HigherOrder { shifts, .. } => {
                    let psi = shift_jets(shifts, self.order);
                    phi = phi.iter().map(|g| jet_compose(g, &psi, self.order)).collect::<Result<_>>()?;
                }
            }
        }
        Ok(phi.into_iter().map(|j| j.poly().clone()).collect())
    }

    pub fn field(&self) -> &'static GaloisField {
        self.composed.first().map_or_else(|| GaloisField::get(3, 1).expect("F3"), |g| *g.ctx())
    }

    /// Linear part of `φ`, the matrix with entries `∂φ_i/∂x̃_j(0)`.
    pub fn linear_part(&self) -> Matrix<Fq> {
        let field = self.field();
        let rows = self
            .composed
            .iter()
            .map(|g| (0..self.nvars).map(|j| g.coeff(&Monomial::var(self.nvars, j))).collect())
            .collect();
        Matrix::from_rows(&field, rows)
    }

    /// `φ` is invertible as a formal map exactly when its linear part is.
    pub fn is_invertible(&self) -> bool {
        self.composed.iter().all(|g| g.constant_term().is_zero()) && !self.linear_part().det().is_zero()
    }
}

fn linear_jets(m: &Matrix<Fq>, order: u32) -> Vec<Jet<Fq>> {
    let field = *m.ctx();
    let n = m.rows();
    (0..n)
        .map(|i| {
            let terms = (0..n).map(|j| (Monomial::var(n, j), *m.get(i, j)));
            Jet::new(&MultiPoly::from_terms(&field, n, terms), order)
        })
        .collect()
}

fn shift_jets(shifts: &[MultiPoly<Fq>], order: u32) -> Vec<Jet<Fq>> {
    let n = shifts.len();
    shifts
        .iter()
        .enumerate()
        .map(|(i, h)| Jet::new(&(&MultiPoly::var(h.ctx(), n, i) + h), order))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalForm {
    pub a0: Fq,
    /// Extension degree needed for the square roots: 1 or 2.
    pub extension_degree: u32,
    pub change: CoordinateChange,
    /// `(f - a_0)∘φ mod 𝔪^r`.
    pub jet: MultiPoly<Fq>,
    /// Whether `jet` equals `Σ x̃_i^2` truncated at `r`.
    pub certified: bool,
}

impl NormalForm {
    /// Recomposes `φ` from its steps and re-checks `(f - a_0)∘φ ≡ Σ x̃_i^2`.
    pub fn verify(&self, f: &MultiPoly<Fq>) -> Result<bool> {
        let phi = self.change.recompose()?;
        if phi != self.change.composed {
            return Ok(false);
        }
        let field = self.change.field();
        let emb = f.ctx().embedding_into(field)?;
        let r = self.change.order;
        let g = &map_poly(f, &emb) - &MultiPoly::constant(emb.apply(self.a0), f.nvars());
        let phi: Vec<Jet<Fq>> = phi.iter().map(|h| Jet::new(h, r)).collect();
        let out = jet_compose(&Jet::new(&g, r), &phi, r)?;
        Ok(out.poly() == &sum_of_squares(field, f.nvars()).truncate(r) && self.change.is_invertible())
    }
}

pub fn sum_of_squares(field: &'static GaloisField, n: usize) -> MultiPoly<Fq> {
    let mut s = MultiPoly::zero(&field, n);
    for i in 0..n {
        s.add_term(Monomial::from_exponents((0..n).map(|j| if j == i { 2 } else { 0 }).collect()), &field.one());
    }
    s
}

/// Quadratic-form matrix `A` of the degree-2 part, so that `f_2 = xᵀ A x`.
pub fn quadratic_part(f: &MultiPoly<Fq>) -> Result<Matrix<Fq>> {
    let n = f.nvars();
    let h = hessian_at(f, &vec![f.ctx().zero(); n])?;
    let half = f.ctx().from_int(2).inv().expect("odd characteristic");
    Ok(h.matrix.scale(&half))
}

/// Finds `φ` with `(f - a_0)∘φ ≡ Σ x̃_i^2 mod 𝔪^r`.
///
/// The origin must be a nondegenerate critical point. The degree-`r'` part
/// `Σ c_I x^I` is removed by `x_i ↦ x_i - (c_I/2) x^{I - e_i}` with `i` the
/// lowest index such that `I_i > 0`.
pub fn normal_form(f: &MultiPoly<Fq>, r: u32) -> Result<NormalForm> {
    let base = *f.ctx();
    if base.characteristic() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let n = f.nvars();
    if n == 0 {
        return Err(Error::InvalidInput("no variables".into()));
    }
    let origin = vec![base.zero(); n];
    if f.gradient().iter().any(|g| !g.eval(&origin).is_zero()) {
        return Err(Error::InvalidInput("origin is not a critical point".into()));
    }
    let a0 = f.constant_term();
    let diag = diagonalize_quadratic(&quadratic_part(f)?)?;
    let field = diag.field;
    let emb = base.embedding_into(field)?;
    let g0 = &map_poly(f, &emb) - &MultiPoly::constant(emb.apply(a0), n);
    let half = field.from_int(2).inv().expect("odd characteristic");

    let mut steps = vec![Step::Translation { a0 }, Step::Linear { matrix: diag.c.clone() }];
    let mut phi = linear_jets(&diag.c, r);
    let mut g = jet_compose(&Jet::new(&g0, r), &phi, r)?;
    for d in 3..r {
        let part = g.poly().homogeneous_part(d);
        if part.is_zero() {
            continue;
        }
        let mut shifts = vec![MultiPoly::zero(&field, n); n];
        for (m, c) in part.terms() {
            let i = (0..n).find(|&i| m.get(i) > 0).expect("positive degree");
            let rest = m.div(&Monomial::var(n, i)).expect("divisible");
            shifts[i].add_term(rest, &(-(*c * half)));
        }
        let psi = shift_jets(&shifts, r);
        g = jet_compose(&g, &psi, r)?;
        phi = phi.iter().map(|h| jet_compose(h, &psi, r)).collect::<Result<_>>()?;
        steps.push(Step::HigherOrder { degree: d, shifts });
    }
    let certified = g.poly() == &sum_of_squares(field, n).truncate(r);
    let change = CoordinateChange { nvars: n, order: r, steps, composed: phi.into_iter().map(|j| j.poly().clone()).collect() };
    Ok(NormalForm { a0, extension_degree: diag.extension_degree, change, jet: g.poly().clone(), certified })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &'static GaloisField, s: &str, n: usize) -> MultiPoly<Fq> {
        MultiPoly::parse(f, s, Some(n)).unwrap()
    }

    #[test]
    fn hyperbolic_plane_needs_extension_mod_5() {
        let f = GaloisField::get(5, 1).unwrap();
        let q = Matrix::from_rows(&f, vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]);
        let d = diagonalize_quadratic(&q).unwrap();
        assert_eq!(d.extension_degree, 2);
        assert_eq!(d.field.order(), 25);
        let pt = d.congruence.transpose().mul(&q).mul(&d.congruence);
        assert!(pt.is_diagonal());
        assert!(d.verify(&q));
    }

    #[test]
    fn squares_need_no_extension() {
        let f = GaloisField::get(11, 1).unwrap();
        let q = Matrix::diagonal(&f, &[f.from_int(4), f.from_int(9)]);
        let d = diagonalize_quadratic(&q).unwrap();
        assert_eq!(d.extension_degree, 1);
        assert!(d.verify(&q));
        assert!(d.c.is_diagonal());
        assert_eq!(*d.c.get(0, 0) * *d.c.get(0, 0), f.from_int(4).inv().unwrap());
    }

    #[test]
    fn degenerate_quadric_rejected() {
        let f = GaloisField::get(7, 1).unwrap();
        let q = Matrix::diagonal(&f, &[f.one(), f.zero()]);
        assert_eq!(diagonalize_quadratic(&q).unwrap_err(), Error::DegenerateQuadric);
        assert!(matches!(normal_form(&poly(f, "x1^2+x2^3", 2), 4), Err(Error::DegenerateQuadric)));
    }

    #[test]
    fn cubic_term_removed() {
        let f = GaloisField::get(7, 1).unwrap();
        let g = poly(f, "x1^2+x2^2+x1^2*x2", 2);
        let nf = normal_form(&g, 4).unwrap();
        assert!(nf.certified);
        assert!(nf.verify(&g).unwrap());
        assert_eq!(nf.extension_degree, 1);
        match &nf.change.steps[2] {
            Step::HigherOrder { degree, shifts } => {
                assert_eq!(*degree, 3);
                assert_eq!(shifts[0], poly(f, "3*x1*x2", 2));
                assert!(shifts[1].is_zero());
            }
            s => panic!("unexpected step {s:?}"),
        }
        // the next order sees the quartic -3/4 x1^2 x2^2 left behind
        let phi: Vec<Jet<Fq>> = nf.change.composed.iter().map(|h| Jet::new(h, 5)).collect();
        let out = jet_compose(&Jet::new(&g, 5), &phi, 5).unwrap();
        assert_eq!(out.poly().homogeneous_part(4), poly(f, "x1^2*x2^2", 2));
    }

    #[test]
    fn other_substitution_leaves_quartic_in_x() {
        // y = y' - x'^2/2 leaves -x'^4/4
        let f = GaloisField::get(7, 1).unwrap();
        let g = poly(f, "x1^2+x2^2+x1^2*x2", 2);
        let phi = vec![Jet::new(&poly(f, "x1", 2), 5), Jet::new(&poly(f, "x2+3*x1^2", 2), 5)];
        let out = jet_compose(&Jet::new(&g, 5), &phi, 5).unwrap();
        assert_eq!(out.poly(), &poly(f, "x1^2+x2^2+5*x1^4", 2));
    }

    #[test]
    fn constant_and_gradient() {
        let f = GaloisField::get(5, 1).unwrap();
        let g = poly(f, "3+x1*x2+x1^3", 2);
        let nf = normal_form(&g, 5).unwrap();
        assert_eq!(nf.a0, f.from_int(3));
        assert_eq!(nf.extension_degree, 1);
        assert!(nf.certified && nf.verify(&g).unwrap());
        assert!(normal_form(&poly(f, "x1+x2^2", 2), 3).is_err());
    }
}
