//! Exact shuffle-algebra models of the cohomological and K-theoretic Hall
//! algebras of a symmetric quiver, and the Chern-Todd comparison map between
//! them.
//!
//! All arithmetic is over exact rationals. Cohomological classes live in
//! truncated power series in the Chern roots `x[i,a]`; K-theory classes are
//! Laurent polynomials in `z[i,a]`; [`chern::ch`] is the only bridge.
//!
//! ```
//! use std::sync::Arc;
//! use khacoha::{g_mult_h, CohElement, DimVector, Quiver, VarContext};
//!
//! let q = Arc::new(Quiver::jordan());
//! let ctx = VarContext::new(q, DimVector::new(vec![1])).unwrap();
//! let one = CohElement::one(&ctx);
//! assert_eq!(g_mult_h(&one, &one).unwrap().to_string(), "2");
//! ```

pub mod chern;
pub mod cli;
pub mod coha;
pub mod error;
pub mod expr;
pub mod gen;
pub mod kha;
pub mod poly;
pub mod quiver;
pub mod series;
pub mod todd;
pub mod verify;

pub use chern::{ch, twisted_mult_g, twisted_mult_t, v_e, v_map, v_tilde, ComparisonReport};
pub use coha::{g_mult_h, t_mult_h, CohElement};
pub use error::{Error, Result};
pub use expr::{format_poly, parse_expr, Expr};
pub use kha::{g_mult_r, t_mult_r, LaurentElement};
pub use poly::{LinearForm, Poly, Rational};
pub use quiver::{BlockSplit, DimVector, Permutation, Quiver, VarContext};
pub use series::Series;
pub use todd::{check_todd_identities, twist, TwistFactor, TwistFlavor};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quivers.md")]
    mod quivers {}
    #[doc = include_str!("../../../book/src/shuffle.md")]
    mod shuffle {}
    #[doc = include_str!("../../../book/src/todd.md")]
    mod todd {}
    #[doc = include_str!("../../../book/src/comparison.md")]
    mod comparison {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
