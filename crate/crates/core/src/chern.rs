//! The Chern character, the Chern-Todd comparison maps and the twisted
//! products `∘`, plus end-to-end checks that the comparison maps are algebra
//! morphisms.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::coha::{euler_arrows_h, euler_gauge_h, g_mult_h_upto, CohElement};
use crate::error::{Error, Result};
use crate::expr::format_monomial;
use crate::kha::{euler_gauge_r, g_mult_r, t_mult_r, LaurentElement};
use crate::poly::{Exponents, Poly, Rational};
use crate::quiver::{is_invariant, Block, BlockSplit, DimVector, Quiver, VarContext};
use crate::series::Series;
use crate::todd::{embed_first, embed_second, td_m_g, td_m_t, twist, TwistFlavor};

/// Calls `visit` on every exponent vector in `n` variables of total degree
/// at most `order`.
fn for_each_monomial(n: usize, order: u32, visit: &mut dyn FnMut(&[i32])) {
    fn rec(k: usize, left: u32, exps: &mut Vec<i32>, visit: &mut dyn FnMut(&[i32])) {
        if k == exps.len() {
            visit(exps);
            return;
        }
        for e in 0..=left {
            exps[k] = e as i32;
            rec(k + 1, left - e, exps, visit);
        }
        exps[k] = 0;
    }
    rec(0, order, &mut vec![0; n], visit);
}

/// `sum_m c_m m^alpha` in machine integers, `None` on overflow.
fn power_sum_small(terms: &[(&Exponents, BigInt)], alpha: &[i32]) -> Option<i128> {
    let mut sum: i128 = 0;
    for (m, c) in terms {
        let mut p: i128 = i128::try_from(c).ok()?;
        for (&mk, &ak) in m.iter().zip(alpha) {
            if ak == 0 {
                continue;
            }
            if mk == 0 {
                p = 0;
                break;
            }
            p = p.checked_mul((mk as i128).checked_pow(ak as u32)?)?;
        }
        sum = sum.checked_add(p)?;
    }
    Some(sum)
}

fn power_sum_big(terms: &[(&Exponents, BigInt)], alpha: &[i32]) -> BigInt {
    let mut sum = BigInt::zero();
    for (m, c) in terms {
        let mut p = c.clone();
        for (&mk, &ak) in m.iter().zip(alpha) {
            if ak != 0 {
                p *= BigInt::from(mk).pow(ak as u32);
            }
        }
        sum += p;
    }
    sum
}

/// `z[i,a] -> exp(x[i,a])` on a Laurent polynomial of the given context.
///
/// Uses `ch(sum_m c_m z^m) = sum_alpha (sum_m c_m m^alpha) x^alpha / alpha!`
/// over a common denominator of the `c_m`.
pub fn ch_poly(ctx: &Arc<VarContext>, poly: &Poly, order: u32) -> Series {
    let n = ctx.nvars();
    let denom = poly.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let terms: Vec<(&Exponents, BigInt)> =
        poly.iter().map(|(m, c)| (m, (c * Rational::from_integer(denom.clone())).to_integer())).collect();
    let mut out = Poly::zero(n);
    if terms.is_empty() {
        return Series::zero(ctx, order);
    }
    for_each_monomial(n, order, &mut |alpha| {
        let sum = match power_sum_small(&terms, alpha) {
            Some(s) => BigInt::from(s),
            None => power_sum_big(&terms, alpha),
        };
        if sum.is_zero() {
            return;
        }
        let factorial: BigInt = alpha.iter().map(|&a| (1..=a as i64).map(BigInt::from).product::<BigInt>()).product();
        out.add_term(alpha.to_vec(), Rational::new(sum, &denom * factorial));
    });
    Series::from_poly(ctx, out, order).expect("polynomial")
}

pub fn ch(f: &LaurentElement, order: u32) -> Series {
    ch_poly(f.context(), f.poly(), order)
}

/// `ch(f) * Td_{M/T}^{1/2}`.
pub fn v_tilde(f: &LaurentElement, order: u32) -> Result<Series> {
    ch(f, order).mul(&td_m_t(f.context(), order)?.sqrt()?)
}

/// `ch(f) * Td_{M/G}^{1/2}`, no invariance requirement.
pub fn v_e(f: &LaurentElement, order: u32) -> Result<Series> {
    ch(f, order).mul(&td_m_g(f.context(), order)?.sqrt()?)
}

/// `Td_{M/G}^{1/2} ch(f)` on Weyl-invariant `f`.
pub fn v_map(f: &LaurentElement, order: u32) -> Result<Series> {
    if !is_invariant(f) {
        return Err(Error::NotInvariant);
    }
    v_e(f, order)
}

fn twisted_t_with(c12: &Series, c21_inv: &Series, f1: &Series, f2: &Series, order: u32) -> Result<Series> {
    let split = BlockSplit::from_contexts(f1.context(), f2.context())?;
    let g1 = embed_first(&split, &c12.mul(f1)?);
    let g2 = embed_second(&split, &c21_inv.mul(f2)?);
    g1.mul(&g2)?.truncate(order).mul_poly(&euler_arrows_h(&split))
}

/// `f1 ∘ f2 = c~^{g1}_{g2} f1 ·_{H~} (c~^{g2}_{g1})^{-1} f2`.
pub fn twisted_mult_t(f1: &Series, f2: &Series, order: u32) -> Result<Series> {
    let (g1, g2) = (f1.context().dim().clone(), f2.context().dim().clone());
    let c12 = twist(TwistFlavor::CTilde, &Block::whole(f1.context()), &g2, order)?;
    let c21 = twist(TwistFlavor::CTilde, &Block::whole(f2.context()), &g1, order)?.inverse()?;
    twisted_t_with(c12.series(), c21.series(), f1, f2, order)
}

/// Inputs are used through order `order + max(0, -delta)` where
/// `delta = #arrow pairs - #gauge pairs` is the degree shift of `·_H`.
fn g_input_order(split: &BlockSplit, order: u32) -> u32 {
    let delta = split.arrow_pair_count() - split.gauge_pair_count();
    order + (-delta).max(0) as u32
}

fn twisted_g_with(c12: &Series, c21_inv: &Series, f1: &CohElement, f2: &CohElement, order: u32) -> Result<Series> {
    let g1 = CohElement::from_series(&c12.mul(&f1.to_series(c12.order()))?);
    let g2 = CohElement::from_series(&c21_inv.mul(&f2.to_series(c21_inv.order()))?);
    let prod = g_mult_h_upto(&g1, &g2, Some(order))?;
    let available = prod.order().expect("truncated inputs give a truncated product");
    if available < order {
        return Err(Error::InsufficientPrecision { available: available as i64, needed: order as i64 });
    }
    Ok(prod.to_series(order))
}

/// `f1 ∘ f2 = c^{g1}_{g2} f1 ·_H (c^{g2}_{g1})^{-1} f2` through degree
/// `order`. Inputs must be Weyl-invariant and known to order
/// `order + max(0, -delta)`.
pub fn twisted_mult_g(f1: &CohElement, f2: &CohElement, order: u32) -> Result<Series> {
    let split = BlockSplit::from_contexts(f1.context(), f2.context())?;
    let wide = g_input_order(&split, order);
    let c12 = twist(TwistFlavor::C, &Block::whole(f1.context()), f2.context().dim(), wide)?;
    let c21 = twist(TwistFlavor::C, &Block::whole(f2.context()), f1.context().dim(), wide)?.inverse()?;
    twisted_g_with(c12.series(), c21.series(), f1, f2, order)
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub quiver: Quiver,
    pub gamma1: DimVector,
    pub gamma2: DimVector,
    pub degree: u32,
    pub seed: Option<u64>,
    pub lhs: Series,
    pub rhs: Series,
    pub pass: bool,
    pub mismatch: Option<Exponents>,
}

impl ComparisonReport {
    fn new(split: &BlockSplit, degree: u32, lhs: Series, rhs: Series) -> Result<Self> {
        let mismatch = lhs.first_difference(&rhs)?;
        Ok(ComparisonReport {
            quiver: (**split.quiver()).clone(),
            gamma1: split.first().dim().clone(),
            gamma2: split.second().dim().clone(),
            degree,
            seed: None,
            lhs,
            rhs,
            pass: mismatch.is_none(),
            mismatch,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// First differing monomial in the `x[i,a]` grammar.
    pub fn mismatch_monomial(&self) -> Option<String> {
        self.mismatch.as_ref().map(|e| format_monomial(self.lhs.context(), e, 'x'))
    }
}

fn contexts(quiver: &Arc<Quiver>, gamma1: &DimVector, gamma2: &DimVector) -> Result<BlockSplit> {
    BlockSplit::new(quiver, gamma1, gamma2)
}

fn check_inputs(split: &BlockSplit, f1: &LaurentElement, f2: &LaurentElement) -> Result<()> {
    if !split.first().same_as(f1.context()) || !split.second().same_as(f2.context()) {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

/// Precomputed Todd and twist data for repeated `v~` morphism checks on one
/// `(quiver, gamma1, gamma2, N)` configuration.
pub struct TildeCheck {
    split: BlockSplit,
    order: u32,
    sqrt_first: Series,
    sqrt_second: Series,
    sqrt_joint: Series,
    c12: Series,
    c21_inv: Series,
}

impl TildeCheck {
    pub fn new(quiver: &Arc<Quiver>, gamma1: &DimVector, gamma2: &DimVector, order: u32) -> Result<Self> {
        let split = contexts(quiver, gamma1, gamma2)?;
        Ok(TildeCheck {
            sqrt_first: td_m_t(split.first(), order)?.sqrt()?,
            sqrt_second: td_m_t(split.second(), order)?.sqrt()?,
            sqrt_joint: td_m_t(split.joint(), order)?.sqrt()?,
            c12: twist(TwistFlavor::CTilde, &Block::whole(split.first()), gamma2, order)?.series().clone(),
            c21_inv: twist(TwistFlavor::CTilde, &Block::whole(split.second()), gamma1, order)?.inverse()?.series().clone(),
            split,
            order,
        })
    }

    pub fn split(&self) -> &BlockSplit {
        &self.split
    }

    /// `v~(f1 ·_{R~} f2)` against `v~(f1) ∘ v~(f2)`.
    pub fn run(&self, f1: &LaurentElement, f2: &LaurentElement) -> Result<ComparisonReport> {
        check_inputs(&self.split, f1, f2)?;
        let n = self.order;
        let prod = t_mult_r(f1, f2)?;
        let lhs = ch(&prod, n).mul(&self.sqrt_joint)?;
        let v1 = ch(f1, n).mul(&self.sqrt_first)?;
        let v2 = ch(f2, n).mul(&self.sqrt_second)?;
        let rhs = twisted_t_with(&self.c12, &self.c21_inv, &v1, &v2, n)?;
        ComparisonReport::new(&self.split, n, lhs, rhs)
    }
}

/// Precomputed data for the `v_e` morphism check. The `e`-normalized
/// products divide by the gauge Euler classes; both sides are compared
/// cross-multiplied,
/// `v_e(f1 ·_{R~} f2) e^H = (c f1' ·_{H~} c^{-1} f2') ch(e^R)`,
/// at order `N + #gauge pairs`, which certifies the quotients through `N`.
pub struct ECheck {
    split: BlockSplit,
    order: u32,
    wide: u32,
    sqrt_first: Series,
    sqrt_second: Series,
    sqrt_joint: Series,
    c12: Series,
    c21_inv: Series,
    e_h: Poly,
    ch_e_r: Series,
}

impl ECheck {
    pub fn new(quiver: &Arc<Quiver>, gamma1: &DimVector, gamma2: &DimVector, order: u32) -> Result<Self> {
        let split = contexts(quiver, gamma1, gamma2)?;
        let wide = order + split.gauge_pair_count() as u32;
        Ok(ECheck {
            sqrt_first: td_m_g(split.first(), wide)?.sqrt()?,
            sqrt_second: td_m_g(split.second(), wide)?.sqrt()?,
            sqrt_joint: td_m_g(split.joint(), wide)?.sqrt()?,
            c12: twist(TwistFlavor::C, &Block::whole(split.first()), gamma2, wide)?.series().clone(),
            c21_inv: twist(TwistFlavor::C, &Block::whole(split.second()), gamma1, wide)?.inverse()?.series().clone(),
            e_h: euler_gauge_h(&split),
            ch_e_r: ch_poly(split.joint(), &euler_gauge_r(&split), wide),
            split,
            order,
            wide,
        })
    }

    pub fn split(&self) -> &BlockSplit {
        &self.split
    }

    pub fn run(&self, f1: &LaurentElement, f2: &LaurentElement) -> Result<ComparisonReport> {
        check_inputs(&self.split, f1, f2)?;
        let m = self.wide;
        let prod = t_mult_r(f1, f2)?;
        let lhs = ch(&prod, m).mul(&self.sqrt_joint)?.mul_poly(&self.e_h)?;
        let v1 = ch(f1, m).mul(&self.sqrt_first)?;
        let v2 = ch(f2, m).mul(&self.sqrt_second)?;
        let rhs = twisted_t_with(&self.c12, &self.c21_inv, &v1, &v2, m)?.mul(&self.ch_e_r)?;
        ComparisonReport::new(&self.split, self.order, lhs, rhs)
    }
}

/// Precomputed data for the check that `v` is an algebra morphism
/// `(R, ·_R) -> (H^, ∘)`.
pub struct MorphismCheck {
    split: BlockSplit,
    order: u32,
    sqrt_first: Series,
    sqrt_second: Series,
    sqrt_joint: Series,
    c12: Series,
    c21_inv: Series,
}

impl MorphismCheck {
    pub fn new(quiver: &Arc<Quiver>, gamma1: &DimVector, gamma2: &DimVector, order: u32) -> Result<Self> {
        let split = contexts(quiver, gamma1, gamma2)?;
        let wide = g_input_order(&split, order);
        Ok(MorphismCheck {
            sqrt_first: td_m_g(split.first(), wide)?.sqrt()?,
            sqrt_second: td_m_g(split.second(), wide)?.sqrt()?,
            sqrt_joint: td_m_g(split.joint(), order)?.sqrt()?,
            c12: twist(TwistFlavor::C, &Block::whole(split.first()), gamma2, wide)?.series().clone(),
            c21_inv: twist(TwistFlavor::C, &Block::whole(split.second()), gamma1, wide)?.inverse()?.series().clone(),
            split,
            order,
        })
    }

    pub fn split(&self) -> &BlockSplit {
        &self.split
    }

    /// `v(f1 ·_R f2)` against `v(f1) ∘ v(f2)` for invariant inputs.
    pub fn run(&self, f1: &LaurentElement, f2: &LaurentElement) -> Result<ComparisonReport> {
        check_inputs(&self.split, f1, f2)?;
        if !is_invariant(f1) || !is_invariant(f2) {
            return Err(Error::NotInvariant);
        }
        let n = self.order;
        let prod = g_mult_r(f1, f2)?;
        let lhs = ch(&prod, n).mul(&self.sqrt_joint)?;
        let wide = self.sqrt_first.order();
        let v1 = CohElement::from_series(&ch(f1, wide).mul(&self.sqrt_first)?);
        let v2 = CohElement::from_series(&ch(f2, wide).mul(&self.sqrt_second)?);
        let rhs = twisted_g_with(&self.c12, &self.c21_inv, &v1, &v2, n)?;
        ComparisonReport::new(&self.split, n, lhs, rhs)
    }
}

pub fn verify_tilde_morphism(
    quiver: &Arc<Quiver>,
    gamma1: &DimVector,
    gamma2: &DimVector,
    f1: &LaurentElement,
    f2: &LaurentElement,
    order: u32,
) -> Result<ComparisonReport> {
    TildeCheck::new(quiver, gamma1, gamma2, order)?.run(f1, f2)
}

pub fn verify_e_morphism(
    quiver: &Arc<Quiver>,
    gamma1: &DimVector,
    gamma2: &DimVector,
    f1: &LaurentElement,
    f2: &LaurentElement,
    order: u32,
) -> Result<ComparisonReport> {
    ECheck::new(quiver, gamma1, gamma2, order)?.run(f1, f2)
}

pub fn verify_morphism(
    quiver: &Arc<Quiver>,
    gamma1: &DimVector,
    gamma2: &DimVector,
    f1: &LaurentElement,
    f2: &LaurentElement,
    order: u32,
) -> Result<ComparisonReport> {
    MorphismCheck::new(quiver, gamma1, gamma2, order)?.run(f1, f2)
}
