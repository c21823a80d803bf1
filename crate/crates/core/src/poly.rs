//! Sparse multivariate Laurent polynomials over the rationals.
//!
//! This is the shared arithmetic kernel behind truncated series, KHA and CoHA
//! elements. Exponents are signed so the same type carries Laurent
//! polynomials; the wrappers in the other modules enforce non-negativity where
//! it matters.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;
pub type Exponents = Vec<i32>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn total_degree(exps: &[i32]) -> i64 {
    exps.iter().map(|&e| e as i64).sum()
}

/// Canonical monomial order: total degree first, then lexicographic exponent
/// vector. Printing and mismatch reports use this order.
pub fn graded_cmp(a: &[i32], b: &[i32]) -> std::cmp::Ordering {
    total_degree(a).cmp(&total_degree(b)).then_with(|| a.cmp(b))
}

fn by_degree(v: Vec<(&Exponents, BigInt)>) -> Vec<(i64, &Exponents, BigInt)> {
    let mut v: Vec<_> = v.into_iter().map(|(e, c)| (total_degree(e), e, c)).collect();
    v.sort_by_key(|t| t.0);
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(nvars, vec![0; nvars], c)
    }

    pub fn term(nvars: usize, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { nvars, terms }
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[k] = 1;
        Self::term(nvars, exps, Rational::one())
    }

    pub fn from_terms<I>(nvars: usize, iter: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Poly::zero(nvars);
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Exponents, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    /// Terms in the canonical graded order.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| graded_cmp(a.0, b.0));
        v
    }

    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| total_degree(e)).min()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.mul_impl(other, None)
    }

    /// Product with every monomial of total degree above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &Poly, max_degree: i64) -> Poly {
        self.mul_impl(other, Some(max_degree))
    }

    /// Common denominator and the integer numerators over it.
    fn integer_form(&self) -> (BigInt, Vec<(&Exponents, BigInt)>) {
        let denom = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self.terms.iter().map(|(e, c)| (e, c.numer() * (&denom / c.denom()))).collect();
        (denom, nums)
    }

    fn mul_impl(&self, other: &Poly, max_degree: Option<i64>) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        let (da, na) = self.integer_form();
        let (db, nb) = other.integer_form();
        let limit = max_degree.unwrap_or(i64::MAX);
        let (a, b) = (by_degree(na), by_degree(nb));
        let denom = da * db;
        let small = |v: &[(i64, &Exponents, BigInt)]| -> Option<Vec<i64>> { v.iter().map(|t| i64::try_from(&t.2).ok()).collect() };
        if let (Some(sa), Some(sb)) = (small(&a), small(&b)) {
            if let Some(acc) = Self::accumulate_small(&a, &sa, &b, &sb, limit) {
                return Poly {
                    nvars: self.nvars,
                    terms: acc.into_iter().filter(|(_, c)| *c != 0).map(|(e, c)| (e, Rational::new(BigInt::from(c), denom.clone()))).collect(),
                };
            }
        }
        let mut acc: HashMap<Exponents, BigInt> = HashMap::new();
        let mut key = vec![0i32; self.nvars];
        for (da, ea, ca) in &a {
            if da.saturating_add(b[0].0) > limit {
                break;
            }
            for (db, eb, cb) in &b {
                if da + db > limit {
                    break;
                }
                for ((k, x), y) in key.iter_mut().zip(ea.iter()).zip(eb.iter()) {
                    *k = x + y;
                }
                let prod = ca * cb;
                match acc.get_mut(key.as_slice()) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(key.clone(), prod);
                    }
                }
            }
        }
        Poly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e, Rational::new(c, denom.clone()))).collect(),
        }
    }

    /// Machine-integer product of integer numerators; `None` on overflow.
    fn accumulate_small(
        a: &[(i64, &Exponents, BigInt)],
        sa: &[i64],
        b: &[(i64, &Exponents, BigInt)],
        sb: &[i64],
        limit: i64,
    ) -> Option<HashMap<Exponents, i128>> {
        let n = a[0].1.len();
        let mut acc: HashMap<Exponents, i128> = HashMap::new();
        let mut key = vec![0i32; n];
        for ((da, ea, _), &ca) in a.iter().zip(sa) {
            if da.saturating_add(b[0].0) > limit {
                break;
            }
            for ((db, eb, _), &cb) in b.iter().zip(sb) {
                if da + db > limit {
                    break;
                }
                for ((k, x), y) in key.iter_mut().zip(ea.iter()).zip(eb.iter()) {
                    *k = x + y;
                }
                let prod = ca as i128 * cb as i128;
                match acc.get_mut(key.as_slice()) {
                    Some(v) => *v = v.checked_add(prod)?,
                    None => {
                        acc.insert(key.clone(), prod);
                    }
                }
            }
        }
        Some(acc)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one(self.nvars);
        for _ in 0..k {
            result = result.mul(self);
        }
        result
    }

    pub fn truncate(&self, max_degree: i64) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous(&self, degree: i64) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Rename variable `k` to `mapping[k]` in a ring with `nvars` variables.
    /// `mapping` must be injective.
    pub fn remap(&self, nvars: usize, mapping: &[usize]) -> Poly {
        assert_eq!(mapping.len(), self.nvars);
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut out = vec![0; nvars];
                    for (k, &x) in e.iter().enumerate() {
                        out[mapping[k]] += x;
                    }
                    (out, c.clone())
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, shift: &[i32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum of all exponent vectors (zero vector for the
    /// zero polynomial).
    pub fn min_exponents(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut m = first.clone();
        for e in it {
            for (a, &b) in m.iter_mut().zip(e) {
                *a = (*a).min(b);
            }
        }
        m
    }

    /// Exact division by a nonzero linear form. On failure the nonzero
    /// remainder is returned as the error value. Laurent inputs are shifted
    /// into the polynomial ring first; monomials are units so this does not
    /// change divisibility.
    pub fn div_linear(&self, form: &LinearForm) -> std::result::Result<Poly, Poly> {
        assert!(!form.is_zero(), "division by the zero form");
        if self.is_zero() {
            return Ok(self.clone());
        }
        let shift = self.min_exponents();
        if shift.iter().any(|&s| s < 0) {
            let neg: Vec<i32> = shift.iter().map(|&s| -s.min(0)).collect();
            let pos: Vec<i32> = shift.iter().map(|&s| s.min(0)).collect();
            return self.mul_monomial(&neg).div_linear(form).map(|q| q.mul_monomial(&pos));
        }
        // form = lead * x_v + rest
        let (v, lead) = form.terms.last().cloned().expect("nonzero form");
        let rest = LinearForm { terms: form.terms[..form.terms.len() - 1].to_vec() }.to_poly(self.nvars);
        let mut slices: BTreeMap<i32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut stripped = e.clone();
            let k = std::mem::replace(&mut stripped[v], 0);
            slices.entry(k).or_insert_with(|| Poly::zero(self.nvars)).add_term(stripped, c.clone());
        }
        let top = *slices.keys().next_back().unwrap();
        let inv_lead = lead.recip();
        let mut quotient = Poly::zero(self.nvars);
        let mut carry = Poly::zero(self.nvars); // Q_k from the previous step
        for k in (0..=top).rev() {
            let pk = slices.remove(&k).unwrap_or_else(|| Poly::zero(self.nvars));
            let reduced = pk.sub(&rest.mul(&carry));
            if k == 0 {
                if reduced.is_zero() {
                    return Ok(quotient);
                }
                return Err(reduced);
            }
            let qk = reduced.scale(&inv_lead);
            for (e, c) in qk.terms.iter() {
                let mut ex = e.clone();
                ex[v] = k - 1;
                quotient.add_term(ex, c.clone());
            }
            carry = qk;
        }
        unreachable!()
    }
}

/// A linear form `sum_k c_k x_k` with no constant term, stored sparsely by
/// increasing variable index with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    terms: Vec<(usize, Rational)>,
}

impl LinearForm {
    pub fn new<I>(iter: I) -> Self
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (k, c) in iter {
            *map.entry(k).or_insert_with(Rational::zero) += c;
        }
        LinearForm { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn zero() -> Self {
        LinearForm { terms: Vec::new() }
    }

    /// `x_a - x_b`.
    pub fn difference(a: usize, b: usize) -> Self {
        Self::new([(a, Rational::one()), (b, -Rational::one())])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(usize, Rational)] {
        &self.terms
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.terms
            .iter()
            .find(|(j, _)| *j == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        LinearForm::new(self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn scale(&self, s: &Rational) -> LinearForm {
        LinearForm::new(self.terms.iter().map(|(k, c)| (*k, c * s)))
    }

    pub fn neg(&self) -> LinearForm {
        self.scale(&-Rational::one())
    }

    pub fn remap(&self, mapping: &[usize]) -> LinearForm {
        LinearForm::new(self.terms.iter().map(|(k, c)| (mapping[*k], c.clone())))
    }

    pub fn to_poly(&self, nvars: usize) -> Poly {
        Poly::from_terms(
            nvars,
            self.terms.iter().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[*k] = 1;
                (e, c.clone())
            }),
        )
    }

    /// Sign-normalized copy: first nonzero coefficient in variable order is
    /// positive. The flag reports whether the form was negated.
    pub fn normalized(&self) -> (LinearForm, bool) {
        match self.terms.first() {
            Some((_, c)) if c.is_negative() => (self.neg(), true),
            _ => (self.clone(), false),
        }
    }

    /// Integer coefficients for exponential evaluation, if all are integral.
    pub fn as_integers(&self) -> Option<Vec<(usize, BigInt)>> {
        self.terms
            .iter()
            .map(|(k, c)| c.is_integer().then(|| (*k, c.to_integer())))
            .collect()
    }
}
