use std::fmt;

use super::field::{Fq, GaloisField};

/// Coefficient field for [`MultiPoly`](super::poly::MultiPoly), matrices and jets.
///
/// Implemented by [`Fq`] and by [`RatFunc`](super::ratfunc::RatFunc). The
/// context carries whatever is needed to build constants without an element
/// at hand.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;
    fn characteristic(ctx: &Self::Ctx) -> u32;

    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }
}

impl Coeff for Fq {
    type Ctx = &'static GaloisField;

    fn ctx(&self) -> Self::Ctx {
        self.field()
    }
    fn zero(ctx: &Self::Ctx) -> Self {
        ctx.zero()
    }
    fn one(ctx: &Self::Ctx) -> Self {
        ctx.one()
    }
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self {
        ctx.from_int(n)
    }
    fn characteristic(ctx: &Self::Ctx) -> u32 {
        ctx.characteristic()
    }
    fn is_zero(&self) -> bool {
        Fq::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn negated(&self) -> Self {
        -*self
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
    fn is_one(&self) -> bool {
        Fq::is_one(self)
    }
}
