//! Truncated multivariate power series over the rationals.
//!
//! A [`Series`] stands for an element of the completion `prod_n H^n` known
//! modulo monomials of total degree above its order `N`. Binary operations on
//! series of different orders work at the smaller order.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{graded_cmp, int, total_degree, Exponents, LinearForm, Poly, Rational};
use crate::quiver::{AlphabetElement, VarContext};

#[derive(Clone, Debug)]
pub struct Series {
    ctx: Arc<VarContext>,
    order: u32,
    poly: Poly,
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.order == other.order && self.poly == other.poly
    }
}

impl Series {
    pub fn zero(ctx: &Arc<VarContext>, order: u32) -> Self {
        Series { ctx: ctx.clone(), order, poly: Poly::zero(ctx.nvars()) }
    }

    pub fn one(ctx: &Arc<VarContext>, order: u32) -> Self {
        Self::constant(ctx, Rational::one(), order)
    }

    pub fn constant(ctx: &Arc<VarContext>, c: Rational, order: u32) -> Self {
        Series { ctx: ctx.clone(), order, poly: Poly::constant(ctx.nvars(), c) }
    }

    /// Truncate a polynomial to a series. Negative exponents are rejected.
    pub fn from_poly(ctx: &Arc<VarContext>, poly: Poly, order: u32) -> Result<Self> {
        if poly.nvars() != ctx.nvars() {
            return Err(Error::ContextMismatch);
        }
        if !poly.is_polynomial() {
            return Err(Error::NegativeExponent);
        }
        Ok(Series { ctx: ctx.clone(), order, poly: poly.truncate(order as i64) })
    }

    pub fn var(ctx: &Arc<VarContext>, k: usize, order: u32) -> Self {
        Series { ctx: ctx.clone(), order, poly: Poly::var(ctx.nvars(), k).truncate(order as i64) }
    }

    pub fn linear(ctx: &Arc<VarContext>, form: &LinearForm, order: u32) -> Self {
        Series { ctx: ctx.clone(), order, poly: form.to_poly(ctx.nvars()).truncate(order as i64) }
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn coeff(&self, exps: &[i32]) -> Rational {
        self.poly.coeff(exps)
    }

    pub fn constant_term(&self) -> Rational {
        self.poly.constant_term()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn truncate(&self, order: u32) -> Series {
        let order = order.min(self.order);
        Series { ctx: self.ctx.clone(), order, poly: self.poly.truncate(order as i64) }
    }

    fn check(&self, other: &Series) -> Result<u32> {
        if !self.ctx.same_as(&other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.order.min(other.order))
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        let order = self.check(other)?;
        Ok(Series { ctx: self.ctx.clone(), order, poly: self.poly.add(&other.poly).truncate(order as i64) })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        Series { ctx: self.ctx.clone(), order: self.order, poly: self.poly.neg() }
    }

    pub fn scale(&self, s: &Rational) -> Series {
        Series { ctx: self.ctx.clone(), order: self.order, poly: self.poly.scale(s) }
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        let order = self.check(other)?;
        Ok(Series { ctx: self.ctx.clone(), order, poly: self.poly.mul_truncated(&other.poly, order as i64) })
    }

    /// Multiply by an exact polynomial (for instance an Euler class).
    pub fn mul_poly(&self, p: &Poly) -> Result<Series> {
        if p.nvars() != self.ctx.nvars() {
            return Err(Error::ContextMismatch);
        }
        Ok(Series { ctx: self.ctx.clone(), order: self.order, poly: self.poly.mul_truncated(p, self.order as i64) })
    }

    /// Homogeneous components of degree `0..=order`.
    fn components(&self) -> Vec<Poly> {
        let mut comps = vec![Poly::zero(self.ctx.nvars()); self.order as usize + 1];
        for (e, c) in self.poly.iter() {
            comps[total_degree(e) as usize].add_term(e.clone(), c.clone());
        }
        comps
    }

    fn from_components(&self, comps: Vec<Poly>) -> Series {
        let mut poly = Poly::zero(self.ctx.nvars());
        for c in comps {
            for (e, v) in c.into_terms() {
                poly.add_term(e, v);
            }
        }
        Series { ctx: self.ctx.clone(), order: self.order, poly }
    }

    /// Multiplicative inverse, solved one homogeneous degree at a time:
    /// `b_d = -a_0^{-1} sum_{k=1}^{d} a_k b_{d-k}`.
    pub fn invert(&self) -> Result<Series> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let a = self.components();
        let n = self.ctx.nvars();
        let mut b: Vec<Poly> = Vec::with_capacity(a.len());
        b.push(Poly::constant(n, inv0.clone()));
        for d in 1..a.len() {
            let mut acc = Poly::zero(n);
            for k in 1..=d {
                if a[k].is_zero() || b[d - k].is_zero() {
                    continue;
                }
                acc = acc.add(&a[k].mul(&b[d - k]));
            }
            b.push(acc.scale(&-inv0.clone()));
        }
        Ok(self.from_components(b))
    }

    /// `sum_{k=0}^{N} a^k / k!`, for `a` with zero constant term.
    pub fn exp(&self) -> Result<Series> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let one = Series::one(&self.ctx, self.order);
        let mut acc = one.clone();
        for k in (1..=self.order).rev() {
            acc = one.add(&self.mul(&acc)?.scale(&int(k as i64).recip()))?;
        }
        Ok(acc)
    }

    /// The unique square root with constant term 1, by Newton iteration
    /// `y <- (y + a / y) / 2` with doubling precision.
    pub fn sqrt(&self) -> Result<Series> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let mut y = Series::one(&self.ctx, self.order);
        // y is exact through degree `known`
        let mut known: u32 = 0;
        while known < self.order {
            let prec = (2 * known + 1).min(self.order);
            let a = self.truncate(prec);
            // y is only known through `known`; Newton supplies the rest
            let y_p = Series { ctx: self.ctx.clone(), order: prec, poly: y.poly.truncate(prec as i64) };
            let ratio = a.mul(&y_p.invert()?)?;
            y = y_p.add(&ratio)?.scale(&half);
            known = prec;
        }
        Ok(Series { order: self.order, ..y })
    }

    /// Integer power; negative exponents go through [`Series::invert`].
    pub fn pow(&self, e: i64) -> Result<Series> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut result = Series::one(&self.ctx, self.order);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(result)
    }

    /// First monomial (in graded order) where two series differ, compared
    /// through the smaller order.
    pub fn first_difference(&self, other: &Series) -> Result<Option<Exponents>> {
        let order = self.check(other)? as i64;
        let diff = self.poly.truncate(order).sub(&other.poly.truncate(order));
        Ok(diff.iter().map(|(e, _)| e.clone()).min_by(|a, b| graded_cmp(a, b)))
    }

    /// Exact agreement of all monomials of degree at most the smaller order.
    pub fn agrees_with(&self, other: &Series) -> Result<bool> {
        Ok(self.first_difference(other)?.is_none())
    }
}

impl AlphabetElement for Series {
    fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }
    fn poly(&self) -> &Poly {
        &self.poly
    }
    fn rebuild(&self, ctx: Arc<VarContext>, poly: Poly) -> Self {
        Series { ctx, order: self.order, poly: poly.truncate(self.order as i64) }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::expr::format_poly(&self.ctx, &self.poly, 'x'))
    }
}

/// `exp` of a linear form with integer or rational coefficients, expanded in
/// closed form: the coefficient of `x^e` is `prod_k c_k^{e_k} / e_k!`.
pub fn exp_linear(ctx: &Arc<VarContext>, form: &LinearForm, order: u32) -> Series {
    let n = ctx.nvars();
    let vars: Vec<(usize, Rational)> = form.terms().to_vec();
    // powers c^e / e! for each variable of the form
    let tables: Vec<Vec<Rational>> = vars
        .iter()
        .map(|(_, c)| {
            let mut t = vec![Rational::one()];
            for e in 1..=order {
                let prev = t.last().unwrap().clone();
                t.push(prev * c / int(e as i64));
            }
            t
        })
        .collect();
    let mut poly = Poly::zero(n);
    let mut exps = vec![0u32; vars.len()];
    fn walk(
        idx: usize,
        left: u32,
        exps: &mut Vec<u32>,
        vars: &[(usize, Rational)],
        tables: &[Vec<Rational>],
        n: usize,
        out: &mut Poly,
    ) {
        if idx == vars.len() {
            let mut e = vec![0i32; n];
            let mut c = Rational::one();
            for (j, &k) in exps.iter().enumerate() {
                e[vars[j].0] = k as i32;
                c *= &tables[j][k as usize];
            }
            out.add_term(e, c);
            return;
        }
        for k in 0..=left {
            exps[idx] = k;
            walk(idx + 1, left - k, exps, vars, tables, n, out);
        }
        exps[idx] = 0;
    }
    walk(0, order, &mut exps, &vars, &tables, n, &mut poly);
    Series { ctx: ctx.clone(), order, poly }
}

/// `[t / (1 - e^{-t})]^exponent` for a nonzero linear form `t`, computed as
/// the inverse of `sum_k (-1)^k t^k / (k+1)!` raised to `exponent`.
pub fn todd_factor(ctx: &Arc<VarContext>, form: &LinearForm, exponent: i64, order: u32) -> Result<Series> {
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    if exponent == 0 {
        return Ok(Series::one(ctx, order));
    }
    let t = Series::linear(ctx, form, order);
    let mut power = Series::one(ctx, order);
    let mut factorial = BigInt::one();
    let mut denominator_series = Series::zero(ctx, order);
    for k in 0..=order {
        factorial *= BigInt::from(k + 1);
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        denominator_series = denominator_series.add(&power.scale(&Rational::new(sign, factorial.clone())))?;
        power = power.mul(&t)?;
    }
    denominator_series.invert()?.pow(exponent)
}
