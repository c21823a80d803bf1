//! Seeded random inputs for the verification suites. Every generator takes
//! an explicit RNG; [`rng_for`] derives one from `(seed, trial)` so trials
//! are reproducible independently of scheduling.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{Poly, Rational};
use crate::quiver::{orbit_sum, DimVector, Permutation, VarContext};
use crate::series::Series;

pub fn rng_for(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ trial)
}

/// Nonzero rational `p/q` with `|p| <= 5`, `1 <= q <= 4`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let mut p = 0;
    while p == 0 {
        p = rng.random_range(-5i64..=5);
    }
    Rational::new(BigInt::from(p), BigInt::from(rng.random_range(1i64..=4)))
}

/// Laurent polynomial with up to `max_terms` terms, exponents in `[-2, 2]`.
pub fn laurent<R: Rng>(rng: &mut R, ctx: &VarContext, max_terms: usize) -> Poly {
    let n = ctx.nvars();
    let count = rng.random_range(1..=max_terms.max(1));
    Poly::from_terms(
        n,
        (0..count).map(|_| ((0..n).map(|_| rng.random_range(-2i32..=2)).collect(), small_rational(rng))),
    )
}

/// Polynomial of total degree at most `max_degree`.
pub fn polynomial<R: Rng>(rng: &mut R, ctx: &VarContext, max_terms: usize, max_degree: u32) -> Poly {
    let n = ctx.nvars();
    let count = rng.random_range(1..=max_terms.max(1));
    Poly::from_terms(
        n,
        (0..count).map(|_| {
            let mut exps = vec![0i32; n];
            if n > 0 {
                let deg = rng.random_range(0..=max_degree);
                for _ in 0..deg {
                    exps[rng.random_range(0..n)] += 1;
                }
            }
            (exps, small_rational(rng))
        }),
    )
}

/// Weyl-invariant Laurent polynomial: a sum of orbit sums of 1 or 2 random
/// monomials with exponents in `[-2, 2]`.
pub fn invariant_laurent<R: Rng>(rng: &mut R, ctx: &VarContext) -> Poly {
    let n = ctx.nvars();
    let mut out = Poly::zero(n);
    for _ in 0..rng.random_range(1..=2) {
        let exps: Vec<i32> = (0..n).map(|_| rng.random_range(-2i32..=2)).collect();
        out = out.add(&orbit_sum(ctx, &exps, &small_rational(rng)));
    }
    if out.is_zero() {
        out = Poly::one(n);
    }
    out
}

/// Weyl-invariant polynomial of degree at most `max_degree`.
pub fn invariant_polynomial<R: Rng>(rng: &mut R, ctx: &VarContext, max_degree: u32) -> Poly {
    let base = polynomial(rng, ctx, 2, max_degree);
    let mut out = Poly::zero(ctx.nvars());
    for (e, c) in base.iter() {
        out = out.add(&orbit_sum(ctx, e, c));
    }
    out
}

/// Unit series `1 + (a few small terms of degree 1..=order)`.
pub fn unit_series<R: Rng>(rng: &mut R, ctx: &Arc<VarContext>, order: u32, max_terms: usize) -> Series {
    let n = ctx.nvars();
    let mut p = Poly::one(n);
    if n > 0 && order > 0 {
        for _ in 0..rng.random_range(1..=max_terms.max(1)) {
            let mut exps = vec![0i32; n];
            for _ in 0..rng.random_range(1..=order) {
                exps[rng.random_range(0..n)] += 1;
            }
            p.add_term(exps, small_rational(rng));
        }
    }
    Series::from_poly(ctx, p, order).expect("polynomial")
}

/// Uniform element of `S_gamma`.
pub fn permutation<R: Rng>(rng: &mut R, dim: &DimVector) -> Permutation {
    let images = dim
        .entries()
        .iter()
        .map(|&d| {
            let mut v: Vec<usize> = (0..d as usize).collect();
            for i in (1..v.len()).rev() {
                v.swap(i, rng.random_range(0..=i));
            }
            v
        })
        .collect();
    Permutation::new(dim, images).expect("valid permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{is_invariant, Quiver};
    use crate::kha::LaurentElement;

    #[test]
    fn deterministic_and_invariant() {
        let ctx = VarContext::new(Arc::new(Quiver::jordan()), DimVector::new(vec![3])).unwrap();
        let a = invariant_laurent(&mut rng_for(7, 3), &ctx);
        let b = invariant_laurent(&mut rng_for(7, 3), &ctx);
        assert_eq!(a, b);
        assert!(is_invariant(&LaurentElement::new(&ctx, a).unwrap()));
        let s = unit_series(&mut rng_for(1, 1), &ctx, 4, 3);
        assert_eq!(s.constant_term(), Rational::from_integer(1.into()));
        let p = permutation(&mut rng_for(2, 0), ctx.dim());
        assert_eq!(p.images()[0].len(), 3);
    }
}
