//! K-theoretic Hall algebra products on Laurent polynomials in `z[i,a]`.
//!
//! The Euler class convention is `(1 - z'/z'')` per pair, mirroring the
//! cohomological `(x'' - x')` under the Chern character.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::coha::shuffle_sum;
use crate::error::{Error, Result};
use crate::poly::{Poly, Rational};
use crate::quiver::{is_invariant, AlphabetElement, BlockSplit, VarContext};

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentElement {
    ctx: Arc<VarContext>,
    poly: Poly,
}

impl LaurentElement {
    pub fn new(ctx: &Arc<VarContext>, poly: Poly) -> Result<Self> {
        if poly.nvars() != ctx.nvars() {
            return Err(Error::ContextMismatch);
        }
        Ok(LaurentElement { ctx: ctx.clone(), poly })
    }

    pub fn one(ctx: &Arc<VarContext>) -> Self {
        LaurentElement { ctx: ctx.clone(), poly: Poly::one(ctx.nvars()) }
    }

    pub fn constant(ctx: &Arc<VarContext>, c: Rational) -> Self {
        LaurentElement { ctx: ctx.clone(), poly: Poly::constant(ctx.nvars(), c) }
    }

    /// The monomial `z^exps`.
    pub fn monomial(ctx: &Arc<VarContext>, exps: Vec<i32>) -> Self {
        LaurentElement { ctx: ctx.clone(), poly: Poly::term(ctx.nvars(), exps, Rational::one()) }
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn scale(&self, s: &Rational) -> Self {
        LaurentElement { ctx: self.ctx.clone(), poly: self.poly.scale(s) }
    }

    pub fn add(&self, other: &LaurentElement) -> Result<Self> {
        if !self.ctx.same_as(&other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(LaurentElement { ctx: self.ctx.clone(), poly: self.poly.add(&other.poly) })
    }

    pub fn mul(&self, other: &LaurentElement) -> Result<Self> {
        if !self.ctx.same_as(&other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(LaurentElement { ctx: self.ctx.clone(), poly: self.poly.mul(&other.poly) })
    }
}

impl AlphabetElement for LaurentElement {
    fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }
    fn poly(&self) -> &Poly {
        &self.poly
    }
    fn rebuild(&self, ctx: Arc<VarContext>, poly: Poly) -> Self {
        LaurentElement { ctx, poly }
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::expr::format_poly(&self.ctx, &self.poly, 'z'))
    }
}

/// `1 - z_a z_b^{-1}` in `nvars` variables.
fn one_minus_ratio(nvars: usize, a: usize, b: usize) -> Poly {
    let mut e = vec![0; nvars];
    e[a] += 1;
    e[b] -= 1;
    Poly::one(nvars).sub(&Poly::term(nvars, e, Rational::one()))
}

/// `prod_{i,j} prod_{a,b} (1 - z'[i,a] / z''[j,b])^{a_ij}`.
pub fn euler_arrows_r(split: &BlockSplit) -> Poly {
    let q = split.quiver().clone();
    let n = split.joint().nvars();
    let (first, second) = (split.first_block(), split.second_block());
    let mut out = Poly::one(n);
    for i in 0..q.vertex_count() {
        for j in 0..q.vertex_count() {
            let a = q.arrows(i, j);
            if a == 0 {
                continue;
            }
            for &za in first.vars(i) {
                for &zb in second.vars(j) {
                    out = out.mul(&one_minus_ratio(n, za, zb).pow(a));
                }
            }
        }
    }
    out
}

/// `prod_i prod_{a <= gamma1^i < b} (1 - z[i,a] / z[i,b])`.
pub fn euler_gauge_r(split: &BlockSplit) -> Poly {
    let n = split.joint().nvars();
    let (first, second) = (split.first_block(), split.second_block());
    let mut out = Poly::one(n);
    for i in 0..split.quiver().vertex_count() {
        for &za in first.vars(i) {
            for &zb in second.vars(i) {
                out = out.mul(&one_minus_ratio(n, za, zb));
            }
        }
    }
    out
}

/// Torus-equivariant product: relabel and multiply by the arrow Euler class.
pub fn t_mult_r(f1: &LaurentElement, f2: &LaurentElement) -> Result<LaurentElement> {
    let split = BlockSplit::from_contexts(&f1.ctx, &f2.ctx)?;
    let poly = split.embed_first(&f1.poly).mul(&split.embed_second(&f2.poly)).mul(&euler_arrows_r(&split));
    Ok(LaurentElement { ctx: split.joint().clone(), poly })
}

/// Gauge-equivariant shuffle product
/// `sum_sigma sigma[ (f1 ._T f2) / e^R ]` for Weyl-invariant inputs.
///
/// Each gauge factor is rewritten as `1 / (1 - z'/z'') = z'' / (z'' - z')`,
/// so the shuffle sum runs over the same linear-form denominators as the
/// cohomological product.
pub fn g_mult_r(f1: &LaurentElement, f2: &LaurentElement) -> Result<LaurentElement> {
    if !is_invariant(f1) || !is_invariant(f2) {
        return Err(Error::NotInvariant);
    }
    let split = BlockSplit::from_contexts(&f1.ctx, &f2.ctx)?;
    let n = split.joint().nvars();
    let forms = crate::coha::gauge_forms(&split);
    let mut shift = vec![0; n];
    for f in &forms {
        // forms are z'' - z'; the positive variable is the z'' slot
        let (zb, _) = f.terms().iter().find(|(_, c)| c.is_one()).cloned().expect("difference form");
        shift[zb] += 1;
    }
    let numerator = split
        .embed_first(&f1.poly)
        .mul(&split.embed_second(&f2.poly))
        .mul(&euler_arrows_r(&split))
        .mul_monomial(&shift);
    let poly = shuffle_sum(&split, &numerator, &forms, None)?;
    Ok(LaurentElement { ctx: split.joint().clone(), poly })
}

/// Action of a Laurent scalar on an element of the same context.
pub fn scalar_action_r(t: &LaurentElement, f: &LaurentElement) -> Result<LaurentElement> {
    t.mul(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;
    use crate::quiver::{DimVector, Quiver};

    fn ctx(q: Quiver, d: &[u32]) -> Arc<VarContext> {
        VarContext::new(Arc::new(q), DimVector::new(d.to_vec())).unwrap()
    }

    fn ratio(n: usize, a: usize, b: usize) -> Poly {
        one_minus_ratio(n, a, b)
    }

    #[test]
    fn euler_classes() {
        let c = ctx(Quiver::jordan(), &[1]);
        let split = BlockSplit::from_contexts(&c, &c).unwrap();
        assert_eq!(euler_arrows_r(&split), ratio(2, 0, 1));
        assert_eq!(euler_gauge_r(&split), ratio(2, 0, 1));
        let e = ctx(Quiver::one_vertex(0), &[1]);
        assert_eq!(euler_arrows_r(&BlockSplit::from_contexts(&e, &e).unwrap()), Poly::one(2));
        let c2 = ctx(Quiver::jordan(), &[2]);
        let split = BlockSplit::from_contexts(&c2, &c).unwrap();
        assert_eq!(euler_gauge_r(&split), ratio(3, 0, 2).mul(&ratio(3, 1, 2)));
        let c0 = ctx(Quiver::jordan(), &[0]);
        assert_eq!(euler_gauge_r(&BlockSplit::from_contexts(&c2, &c0).unwrap()), Poly::one(2));
    }

    #[test]
    fn torus_products() {
        let c = ctx(Quiver::jordan(), &[1]);
        let one = LaurentElement::one(&c);
        assert_eq!(t_mult_r(&one, &one).unwrap().poly(), &ratio(2, 0, 1));
        let e = ctx(Quiver::one_vertex(0), &[1]);
        let one = LaurentElement::one(&e);
        assert_eq!(t_mult_r(&one, &one).unwrap().poly(), &Poly::one(2));
    }

    #[test]
    fn shuffle_products_closed_forms() {
        let c = ctx(Quiver::jordan(), &[1]);
        let one = LaurentElement::one(&c);
        assert_eq!(g_mult_r(&one, &one).unwrap().poly(), &Poly::constant(2, int(2)));
        let z = LaurentElement::monomial(&c, vec![1]);
        assert_eq!(g_mult_r(&z, &one).unwrap().poly(), &Poly::var(2, 0).add(&Poly::var(2, 1)));
        // 1/(1-w) + 1/(1-1/w) = 1
        let e = ctx(Quiver::one_vertex(0), &[1]);
        let one = LaurentElement::one(&e);
        assert_eq!(g_mult_r(&one, &one).unwrap().poly(), &Poly::one(2));
    }

    #[test]
    fn shuffle_product_of_negative_powers() {
        let e = ctx(Quiver::one_vertex(0), &[1]);
        let zinv = LaurentElement::monomial(&e, vec![-1]);
        let one = LaurentElement::one(&e);
        let p = g_mult_r(&zinv, &one).unwrap();
        // z2/(z1 (z2-z1)) - z1/(z2 (z2-z1)) = (z2^2 - z1^2)/(z1 z2 (z2 - z1)) = (z1+z2)/(z1 z2)
        let expected = Poly::term(2, vec![-1, 0], int(1)).add(&Poly::term(2, vec![0, -1], int(1)));
        assert_eq!(p.poly(), &expected);
    }

    #[test]
    fn rejects_non_invariant() {
        let c2 = ctx(Quiver::jordan(), &[2]);
        let c1 = ctx(Quiver::jordan(), &[1]);
        let f = LaurentElement::monomial(&c2, vec![1, 0]);
        assert_eq!(g_mult_r(&f, &LaurentElement::one(&c1)).unwrap_err(), Error::NotInvariant);
    }
}
