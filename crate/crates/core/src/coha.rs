//! Cohomological Hall algebra products.
//!
//! The torus-equivariant product multiplies the relabelled factors by the
//! arrow Euler class. The gauge-equivariant product additionally divides by
//! the gauge Euler class and sums over shuffles; that sum is assembled as a
//! [`FracElement`] over a common denominator of linear forms and finished by
//! exact division.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{LinearForm, Poly, Rational};
use crate::quiver::{enumerate_shuffles, is_invariant, AlphabetElement, BlockSplit, VarContext};
use crate::series::Series;

/// Element of the (torus- or gauge-equivariant) CoHA in the x-alphabet.
/// `order == None` marks an exact polynomial; `Some(n)` a series known
/// through degree `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CohElement {
    ctx: Arc<VarContext>,
    poly: Poly,
    order: Option<u32>,
}

impl CohElement {
    pub fn exact(ctx: &Arc<VarContext>, poly: Poly) -> Result<Self> {
        if poly.nvars() != ctx.nvars() {
            return Err(Error::ContextMismatch);
        }
        if !poly.is_polynomial() {
            return Err(Error::NegativeExponent);
        }
        Ok(CohElement { ctx: ctx.clone(), poly, order: None })
    }

    pub fn one(ctx: &Arc<VarContext>) -> Self {
        CohElement { ctx: ctx.clone(), poly: Poly::one(ctx.nvars()), order: None }
    }

    pub fn from_series(s: &Series) -> Self {
        CohElement { ctx: s.context().clone(), poly: s.poly().clone(), order: Some(s.order()) }
    }

    /// Truncate to a series; exact elements accept any order.
    pub fn to_series(&self, order: u32) -> Series {
        let order = self.order.map_or(order, |o| o.min(order));
        Series::from_poly(&self.ctx, self.poly.clone(), order).expect("polynomial element")
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    pub fn scale(&self, s: &Rational) -> Self {
        CohElement { poly: self.poly.scale(s), ..self.clone() }
    }
}

impl AlphabetElement for CohElement {
    fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }
    fn poly(&self) -> &Poly {
        &self.poly
    }
    fn rebuild(&self, ctx: Arc<VarContext>, poly: Poly) -> Self {
        CohElement { ctx, poly, order: self.order }
    }
}

impl fmt::Display for CohElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::expr::format_poly(&self.ctx, &self.poly, 'x'))
    }
}

fn min_order(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// `prod_{i,j} prod_{a <= gamma1^i} prod_{b <= gamma2^j} (x''[j,b] - x'[i,a])^{a_ij}`
/// in the joint alphabet.
pub fn euler_arrows_h(split: &BlockSplit) -> Poly {
    let q = split.quiver().clone();
    let joint = split.joint();
    let (first, second) = (split.first_block(), split.second_block());
    let mut out = Poly::one(joint.nvars());
    for i in 0..q.vertex_count() {
        for j in 0..q.vertex_count() {
            let a = q.arrows(i, j);
            if a == 0 {
                continue;
            }
            for &xa in first.vars(i) {
                for &xb in second.vars(j) {
                    out = out.mul(&LinearForm::difference(xb, xa).to_poly(joint.nvars()).pow(a));
                }
            }
        }
    }
    out
}

/// The linear forms `x''[i,b] - x'[i,a]` whose product is the gauge Euler
/// class.
pub fn gauge_forms(split: &BlockSplit) -> Vec<LinearForm> {
    let (first, second) = (split.first_block(), split.second_block());
    let mut forms = Vec::new();
    for i in 0..split.quiver().vertex_count() {
        for &xa in first.vars(i) {
            for &xb in second.vars(i) {
                forms.push(LinearForm::difference(xb, xa));
            }
        }
    }
    forms
}

/// `prod_i prod_{a <= gamma1^i < b <= gamma^i} (x[i,b] - x[i,a])`.
pub fn euler_gauge_h(split: &BlockSplit) -> Poly {
    let n = split.joint().nvars();
    gauge_forms(split).iter().fold(Poly::one(n), |acc, f| acc.mul(&f.to_poly(n)))
}

/// Torus-equivariant product: relabel into the joint alphabet and multiply
/// by the arrow Euler class.
pub fn t_mult_h(f1: &CohElement, f2: &CohElement) -> Result<CohElement> {
    let split = BlockSplit::from_contexts(&f1.ctx, &f2.ctx)?;
    let order = min_order(f1.order, f2.order);
    let euler = euler_arrows_h(&split);
    let lhs = split.embed_first(&f1.poly);
    let rhs = split.embed_second(&f2.poly);
    let poly = match order {
        Some(n) => lhs.mul_truncated(&rhs, n as i64).mul_truncated(&euler, n as i64),
        None => lhs.mul(&rhs).mul(&euler),
    };
    Ok(CohElement { ctx: split.joint().clone(), poly, order })
}

/// Action of a scalar class `t` on an element of the same context.
pub fn scalar_action(t: &CohElement, f: &CohElement) -> Result<CohElement> {
    if !t.ctx.same_as(&f.ctx) {
        return Err(Error::ContextMismatch);
    }
    let order = min_order(t.order, f.order);
    let poly = match order {
        Some(n) => t.poly.mul_truncated(&f.poly, n as i64),
        None => t.poly.mul(&f.poly),
    };
    Ok(CohElement { ctx: f.ctx.clone(), poly, order })
}

/// Gauge-equivariant shuffle product
/// `sum_{sigma in P(gamma1, gamma2)} sigma[ (f1 ._T f2) / e^H ]`.
///
/// Both inputs must be invariant under their Weyl groups. Truncated inputs
/// are treated as polynomial approximants: the product changes degree by
/// `delta = #arrow pairs - #gauge pairs`, so the output is known through
/// `min(order) + delta`, and only numerator components that can reach that
/// range are formed.
pub fn g_mult_h(f1: &CohElement, f2: &CohElement) -> Result<CohElement> {
    g_mult_h_upto(f1, f2, None)
}

/// [`g_mult_h`], computing the product only through degree `limit` when one
/// is given. Exact inputs then give a result truncated at `limit`.
pub fn g_mult_h_upto(f1: &CohElement, f2: &CohElement, limit: Option<u32>) -> Result<CohElement> {
    if !is_invariant(f1) || !is_invariant(f2) {
        return Err(Error::NotInvariant);
    }
    let split = BlockSplit::from_contexts(&f1.ctx, &f2.ctx)?;
    let delta = split.arrow_pair_count() - split.gauge_pair_count();
    let available = match min_order(f1.order, f2.order) {
        Some(n) => {
            let out = n as i64 + delta;
            if out < 0 {
                return Err(Error::InsufficientPrecision { available: n as i64, needed: -delta });
            }
            Some(out as u32)
        }
        None => None,
    };
    let order = match (available, limit) {
        (Some(a), Some(l)) => Some(a.min(l)),
        (a, l) => a.or(l),
    };
    let cap = order.map(|o| o as i64);
    let k_gauge = split.gauge_pair_count();
    let lhs = split.embed_first(&f1.poly);
    let rhs = split.embed_second(&f2.poly);
    let numerator = match cap {
        Some(c) => {
            let input_cap = c - delta;
            if input_cap < 0 {
                Poly::zero(split.joint().nvars())
            } else {
                lhs.mul_truncated(&rhs, input_cap).mul_truncated(&euler_arrows_h(&split), c + k_gauge)
            }
        }
        None => lhs.mul(&rhs).mul(&euler_arrows_h(&split)),
    };
    let poly = shuffle_sum(&split, &numerator, &gauge_forms(&split), cap)?;
    Ok(CohElement { ctx: split.joint().clone(), poly, order })
}

/// `sum_sigma sigma(numerator) / sigma(prod forms)`, reduced to a Laurent
/// polynomial by exact division. With a cap, only output degrees up to the cap
/// are computed; every denominator is a product of homogeneous linear forms,
/// so each homogeneous component divides separately.
pub(crate) fn shuffle_sum(
    split: &BlockSplit,
    numerator: &Poly,
    forms: &[LinearForm],
    cap: Option<i64>,
) -> Result<Poly> {
    let joint = split.joint();
    let shuffles = enumerate_shuffles(split.first().dim(), split.second().dim())?;
    let mut total = FracElement::zero(joint.nvars());
    for sh in &shuffles {
        let map = sh.permutation().global_map(joint);
        let num = numerator.remap(joint.nvars(), &map);
        let den: Vec<LinearForm> = forms.iter().map(|f| f.remap(&map)).collect();
        total = total.add(&FracElement::new(num, &den));
    }
    total.into_poly(cap)
}

/// A rational function `numerator / prod_k form_k^{m_k}` with sign-normalized,
/// pairwise distinct linear forms.
#[derive(Clone, Debug, PartialEq)]
pub struct FracElement {
    numerator: Poly,
    denominator: BTreeMap<LinearForm, u32>,
}

impl FracElement {
    pub fn zero(nvars: usize) -> Self {
        FracElement { numerator: Poly::zero(nvars), denominator: BTreeMap::new() }
    }

    pub fn from_poly(p: Poly) -> Self {
        FracElement { numerator: p, denominator: BTreeMap::new() }
    }

    pub fn new(numerator: Poly, forms: &[LinearForm]) -> Self {
        let mut negate = false;
        let mut denominator = BTreeMap::new();
        for f in forms {
            assert!(!f.is_zero(), "zero form in a denominator");
            let (g, flipped) = f.normalized();
            negate ^= flipped;
            *denominator.entry(g).or_insert(0) += 1;
        }
        let numerator = if negate { numerator.neg() } else { numerator };
        FracElement { numerator, denominator }
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &BTreeMap<LinearForm, u32> {
        &self.denominator
    }

    pub fn denominator_degree(&self) -> i64 {
        self.denominator.values().map(|&m| m as i64).sum()
    }

    /// Sum over the least common multiple of the two denominators.
    pub fn add(&self, other: &FracElement) -> FracElement {
        let n = self.numerator.nvars();
        if self.numerator.is_zero() && self.denominator.is_empty() {
            return other.clone();
        }
        let mut lcm = self.denominator.clone();
        for (f, &m) in &other.denominator {
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |fr: &FracElement| {
            let mut p = fr.numerator.clone();
            for (f, &m) in &lcm {
                let have = fr.denominator.get(f).copied().unwrap_or(0);
                for _ in have..m {
                    p = p.mul(&f.to_poly(n));
                }
            }
            p
        };
        FracElement { numerator: lift(self).add(&lift(other)), denominator: lcm }
    }

    /// Exact division of the numerator by every denominator form. A cap keeps
    /// only output degrees up to the cap.
    pub fn into_poly(self, cap: Option<i64>) -> Result<Poly> {
        let mut p = match cap {
            Some(c) => self.numerator.truncate(c + self.denominator_degree()),
            None => self.numerator,
        };
        for (f, &m) in &self.denominator {
            for _ in 0..m {
                p = p.div_linear(f).map_err(|r| Error::NonzeroRemainder { terms: r.len() })?;
            }
        }
        Ok(p)
    }
}

/// Scalar `c` as an exact element.
pub fn constant(ctx: &Arc<VarContext>, c: Rational) -> CohElement {
    CohElement { ctx: ctx.clone(), poly: Poly::constant(ctx.nvars(), c), order: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;
    use crate::quiver::{DimVector, Quiver};

    fn ctx(q: &Arc<Quiver>, d: &[u32]) -> Arc<VarContext> {
        VarContext::new(q.clone(), DimVector::new(d.to_vec())).unwrap()
    }

    fn x(c: &Arc<VarContext>, k: usize) -> CohElement {
        CohElement::exact(c, Poly::var(c.nvars(), k)).unwrap()
    }

    #[test]
    fn euler_classes() {
        let jordan = Arc::new(Quiver::jordan());
        let split = BlockSplit::new(&jordan, &DimVector::new(vec![1]), &DimVector::new(vec![1])).unwrap();
        let x2_minus_x1 = Poly::var(2, 1).sub(&Poly::var(2, 0));
        assert_eq!(euler_arrows_h(&split), x2_minus_x1);
        assert_eq!(euler_gauge_h(&split), x2_minus_x1);

        let split = BlockSplit::new(&jordan, &DimVector::new(vec![1]), &DimVector::new(vec![2])).unwrap();
        let expected = Poly::var(3, 1).sub(&Poly::var(3, 0)).mul(&Poly::var(3, 2).sub(&Poly::var(3, 0)));
        assert_eq!(euler_arrows_h(&split), expected);

        let split = BlockSplit::new(&jordan, &DimVector::new(vec![2]), &DimVector::new(vec![1])).unwrap();
        let expected = Poly::var(3, 2).sub(&Poly::var(3, 0)).mul(&Poly::var(3, 2).sub(&Poly::var(3, 1)));
        assert_eq!(euler_gauge_h(&split), expected);

        let empty = Arc::new(Quiver::one_vertex(0));
        let split = BlockSplit::new(&empty, &DimVector::new(vec![1]), &DimVector::new(vec![1])).unwrap();
        assert_eq!(euler_arrows_h(&split), Poly::one(2));
        let split = BlockSplit::new(&empty, &DimVector::new(vec![2]), &DimVector::new(vec![0])).unwrap();
        assert_eq!(euler_gauge_h(&split), Poly::one(2));
    }

    #[test]
    fn torus_product() {
        let jordan = Arc::new(Quiver::jordan());
        let c1 = ctx(&jordan, &[1]);
        let p = t_mult_h(&CohElement::one(&c1), &CohElement::one(&c1)).unwrap();
        assert_eq!(p.poly(), &Poly::var(2, 1).sub(&Poly::var(2, 0)));
        let empty = Arc::new(Quiver::one_vertex(0));
        let e1 = ctx(&empty, &[1]);
        let p = t_mult_h(&CohElement::one(&e1), &CohElement::one(&e1)).unwrap();
        assert_eq!(p.poly(), &Poly::one(2));
        let f = x(&c1, 0);
        let two_f = f.scale(&int(2));
        assert_eq!(t_mult_h(&two_f, &f).unwrap(), t_mult_h(&f, &f).unwrap().scale(&int(2)));
    }

    #[test]
    fn quiver_mismatch() {
        let a = ctx(&Arc::new(Quiver::jordan()), &[1]);
        let b = ctx(&Arc::new(Quiver::one_vertex(2)), &[1]);
        assert_eq!(t_mult_h(&CohElement::one(&a), &CohElement::one(&b)).unwrap_err(), Error::QuiverMismatch);
    }

    #[test]
    fn shuffle_products_closed_forms() {
        let jordan = Arc::new(Quiver::jordan());
        let c1 = ctx(&jordan, &[1]);
        let one = CohElement::one(&c1);
        assert_eq!(g_mult_h(&one, &one).unwrap().poly(), &Poly::constant(2, int(2)));
        let p = g_mult_h(&x(&c1, 0), &one).unwrap();
        assert_eq!(p.poly(), &Poly::var(2, 0).add(&Poly::var(2, 1)));

        let empty = Arc::new(Quiver::one_vertex(0));
        let e1 = ctx(&empty, &[1]);
        let one = CohElement::one(&e1);
        assert!(g_mult_h(&one, &one).unwrap().poly().is_zero());
        // x1/(x2-x1) + x2/(x1-x2) = -1
        assert_eq!(g_mult_h(&x(&e1, 0), &one).unwrap().poly(), &Poly::constant(2, int(-1)));
    }

    #[test]
    fn shuffle_product_rejects_non_invariant() {
        let jordan = Arc::new(Quiver::jordan());
        let c2 = ctx(&jordan, &[2]);
        let c1 = ctx(&jordan, &[1]);
        assert_eq!(g_mult_h(&x(&c2, 0), &CohElement::one(&c1)).unwrap_err(), Error::NotInvariant);
    }

    #[test]
    fn truncated_shuffle_product_agrees_with_exact() {
        let empty = Arc::new(Quiver::one_vertex(0));
        let c1 = ctx(&empty, &[1]);
        let c2 = ctx(&empty, &[2]);
        let f = CohElement::exact(&c1, Poly::var(1, 0).pow(3).add(&Poly::one(1))).unwrap();
        let g = CohElement::exact(&c2, Poly::var(2, 0).mul(&Poly::var(2, 1)).add(&Poly::var(2, 0)).add(&Poly::var(2, 1)))
            .unwrap();
        let exact = g_mult_h(&f, &g).unwrap();
        let approx = g_mult_h(&CohElement::from_series(&f.to_series(4)), &CohElement::from_series(&g.to_series(4)))
            .unwrap();
        // delta = 0 - 2
        assert_eq!(approx.order(), Some(2));
        assert_eq!(approx.poly(), &exact.poly().truncate(2));
        let too_short = CohElement::from_series(&f.to_series(1));
        assert!(matches!(
            g_mult_h(&too_short, &CohElement::from_series(&g.to_series(1))),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn frac_sign_normalization() {
        let fr = FracElement::new(Poly::one(2), &[LinearForm::difference(1, 0)]);
        assert_eq!(fr.numerator(), &Poly::constant(2, int(-1)));
        assert!(fr.denominator().contains_key(&LinearForm::difference(0, 1)));
        let sum = fr.add(&FracElement::new(Poly::one(2), &[LinearForm::difference(0, 1)]));
        assert_eq!(sum.into_poly(None).unwrap(), Poly::zero(2));
        let bad = FracElement::new(Poly::var(2, 0), &[LinearForm::difference(0, 1)]);
        assert!(matches!(bad.into_poly(None), Err(Error::NonzeroRemainder { .. })));
    }
}
