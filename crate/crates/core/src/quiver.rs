//! Quivers, dimension vectors and the variable bookkeeping around them:
//! alphabets `x[i,a]` / `z[i,a]`, block splittings of a joint alphabet,
//! shuffles, and the action of the Weyl group `S_gamma = prod_i S_{gamma^i}`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{LinearForm, Poly, Rational};

/// Symmetric quiver, stored as its arrow-count matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    arrows: Vec<Vec<u32>>,
}

impl Quiver {
    pub fn new(arrows: Vec<Vec<u32>>) -> Result<Self> {
        let n = arrows.len();
        if n == 0 {
            return Err(Error::QuiverSyntax { line: 1, message: "quiver needs at least one vertex".into() });
        }
        for (i, row) in arrows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::QuiverSyntax {
                    line: i + 2,
                    message: format!("row {} has {} entries, expected {}", i + 1, row.len(), n),
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if arrows[i][j] != arrows[j][i] {
                    return Err(Error::NotSymmetric {
                        i: i + 1,
                        j: j + 1,
                        aij: arrows[i][j],
                        aji: arrows[j][i],
                    });
                }
            }
        }
        Ok(Quiver { arrows })
    }

    /// One vertex carrying `loops` loops.
    pub fn one_vertex(loops: u32) -> Self {
        Quiver { arrows: vec![vec![loops]] }
    }

    pub fn jordan() -> Self {
        Self::one_vertex(1)
    }

    /// Parse the text format: the vertex count on the first line, then one
    /// row of the arrow matrix per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (first_no, first) = lines
            .next()
            .ok_or_else(|| Error::QuiverSyntax { line: 1, message: "empty quiver file".into() })?;
        let n: usize = first.trim().parse().map_err(|_| Error::QuiverSyntax {
            line: first_no + 1,
            message: format!("expected vertex count, found {:?}", first.trim()),
        })?;
        let mut rows = Vec::with_capacity(n);
        for (no, line) in lines {
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>().map_err(|_| Error::QuiverSyntax {
                        line: no + 1,
                        message: format!("expected non-negative integer, found {tok:?}"),
                    })
                })
                .collect::<Result<Vec<u32>>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::QuiverSyntax {
                line: first_no + 1,
                message: format!("declared {} vertices but found {} matrix rows", n, rows.len()),
            });
        }
        Quiver::new(rows)
    }

    pub fn vertex_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self, i: usize, j: usize) -> u32 {
        self.arrows[i][j]
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.arrows
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.arrows.len())?;
        for row in &self.arrows {
            let cells: Vec<String> = row.iter().map(|a| a.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    /// Parse a comma-separated list such as `1,0,2`.
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        s.split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| format!("invalid dimension entry {t:?}")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(DimVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&g| g == 0)
    }

    pub fn checked_add(&self, other: &DimVector) -> Result<DimVector> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: other.len() });
        }
        Ok(DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", cells.join(","))
    }
}

/// The ordered alphabet `(i, a)`, `1 <= a <= gamma^i`, of a quiver and
/// dimension vector. Variable indices are 0-based and lexicographic in
/// `(vertex, slot)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarContext {
    quiver: Arc<Quiver>,
    dim: DimVector,
    offsets: Vec<usize>,
}

impl VarContext {
    pub fn new(quiver: Arc<Quiver>, dim: DimVector) -> Result<Arc<Self>> {
        if dim.len() != quiver.vertex_count() {
            return Err(Error::LengthMismatch { expected: quiver.vertex_count(), found: dim.len() });
        }
        let mut offsets = Vec::with_capacity(dim.len() + 1);
        let mut acc = 0;
        for &g in dim.entries() {
            offsets.push(acc);
            acc += g as usize;
        }
        offsets.push(acc);
        Ok(Arc::new(VarContext { quiver, dim, offsets }))
    }

    /// `n` plain variables: one vertex without loops and dimension `n`.
    pub fn anonymous(n: usize) -> Arc<Self> {
        Self::new(Arc::new(Quiver::one_vertex(0)), DimVector::new(vec![n as u32])).unwrap()
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn nvars(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Index of variable `(vertex, slot)`, both 0-based.
    pub fn var(&self, vertex: usize, slot: usize) -> usize {
        debug_assert!(slot < self.dim.get(vertex) as usize);
        self.offsets[vertex] + slot
    }

    pub fn vertex_vars(&self, vertex: usize) -> std::ops::Range<usize> {
        self.offsets[vertex]..self.offsets[vertex + 1]
    }

    /// `(vertex, slot)` of a variable index, both 0-based.
    pub fn slot_of(&self, k: usize) -> (usize, usize) {
        let v = self.offsets.partition_point(|&o| o <= k) - 1;
        (v, k - self.offsets[v])
    }

    /// Printed name, 1-based, e.g. `x[1,2]`.
    pub fn var_name(&self, k: usize, letter: char) -> String {
        let (v, s) = self.slot_of(k);
        format!("{letter}[{},{}]", v + 1, s + 1)
    }

    pub fn same_as(&self, other: &VarContext) -> bool {
        std::ptr::eq(self, other) || self == other
    }
}

/// A set of variable slots inside a context, grouped by vertex. Used for the
/// primed and double-primed halves of a joint alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    ctx: Arc<VarContext>,
    slots: Vec<Vec<usize>>,
}

impl Block {
    pub fn whole(ctx: &Arc<VarContext>) -> Self {
        let slots = (0..ctx.dim().len()).map(|i| ctx.vertex_vars(i).collect()).collect();
        Block { ctx: ctx.clone(), slots }
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    /// Variable indices at vertex `i`.
    pub fn vars(&self, i: usize) -> &[usize] {
        &self.slots[i]
    }

    pub fn dim(&self) -> DimVector {
        DimVector::new(self.slots.iter().map(|s| s.len() as u32).collect())
    }

    /// `x_{gamma^i} = sum_a x[i,a]` over the block's slots at vertex `i`.
    pub fn vertex_sum(&self, i: usize) -> LinearForm {
        LinearForm::new(self.slots[i].iter().map(|&k| (k, Rational::from_integer(1.into()))))
    }
}

/// Embedding of the `gamma1` alphabet (x') and the `gamma2` alphabet (x'')
/// into the alphabet of `gamma1 + gamma2`: `x'[i,a] = x[i,a]` and
/// `x''[i,a] = x[i, gamma1^i + a]`.
#[derive(Clone, Debug)]
pub struct BlockSplit {
    first: Arc<VarContext>,
    second: Arc<VarContext>,
    joint: Arc<VarContext>,
    first_map: Vec<usize>,
    second_map: Vec<usize>,
    reversed: bool,
}

impl BlockSplit {
    pub fn new(quiver: &Arc<Quiver>, gamma1: &DimVector, gamma2: &DimVector) -> Result<Self> {
        let first = VarContext::new(quiver.clone(), gamma1.clone())?;
        let second = VarContext::new(quiver.clone(), gamma2.clone())?;
        Self::from_contexts(&first, &second)
    }

    pub fn from_contexts(first: &Arc<VarContext>, second: &Arc<VarContext>) -> Result<Self> {
        if first.quiver() != second.quiver() {
            return Err(Error::QuiverMismatch);
        }
        let joint_dim = first.dim().checked_add(second.dim())?;
        let joint = VarContext::new(first.quiver().clone(), joint_dim)?;
        let n = first.dim().len();
        let mut first_map = Vec::with_capacity(first.nvars());
        let mut second_map = Vec::with_capacity(second.nvars());
        for i in 0..n {
            let g1 = first.dim().get(i) as usize;
            for a in 0..g1 {
                first_map.push(joint.var(i, a));
            }
            for a in 0..second.dim().get(i) as usize {
                second_map.push(joint.var(i, g1 + a));
            }
        }
        Ok(BlockSplit {
            first: first.clone(),
            second: second.clone(),
            joint,
            first_map,
            second_map,
            reversed: false,
        })
    }

    /// Same joint alphabet with the roles of the two blocks exchanged, so
    /// block-product formulas written for `(gamma1, gamma2)` evaluate at
    /// `(gamma2, gamma1)(x'', x')`.
    pub fn reversed(&self) -> Self {
        BlockSplit {
            first: self.second.clone(),
            second: self.first.clone(),
            joint: self.joint.clone(),
            first_map: self.second_map.clone(),
            second_map: self.first_map.clone(),
            reversed: !self.reversed,
        }
    }

    pub fn joint(&self) -> &Arc<VarContext> {
        &self.joint
    }

    pub fn first(&self) -> &Arc<VarContext> {
        &self.first
    }

    pub fn second(&self) -> &Arc<VarContext> {
        &self.second
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.joint.quiver()
    }

    /// Joint-alphabet indices of the first block's variables.
    pub fn first_map(&self) -> &[usize] {
        &self.first_map
    }

    pub fn second_map(&self) -> &[usize] {
        &self.second_map
    }

    pub fn first_block(&self) -> Block {
        self.block(&self.first, &self.first_map)
    }

    pub fn second_block(&self) -> Block {
        self.block(&self.second, &self.second_map)
    }

    fn block(&self, ctx: &VarContext, map: &[usize]) -> Block {
        let slots = (0..ctx.dim().len()).map(|i| ctx.vertex_vars(i).map(|k| map[k]).collect()).collect();
        Block { ctx: self.joint.clone(), slots }
    }

    pub fn embed_first(&self, p: &Poly) -> Poly {
        p.remap(self.joint.nvars(), &self.first_map)
    }

    pub fn embed_second(&self, p: &Poly) -> Poly {
        p.remap(self.joint.nvars(), &self.second_map)
    }

    /// Number of arrow pairs `sum_{i,j} a_ij gamma1^i gamma2^j`.
    pub fn arrow_pair_count(&self) -> i64 {
        let q = self.quiver();
        let (d1, d2) = (self.first.dim(), self.second.dim());
        let n = q.vertex_count();
        let mut s = 0i64;
        for i in 0..n {
            for j in 0..n {
                s += q.arrows(i, j) as i64 * d1.get(i) as i64 * d2.get(j) as i64;
            }
        }
        s
    }

    /// Number of gauge pairs `sum_i gamma1^i gamma2^i`.
    pub fn gauge_pair_count(&self) -> i64 {
        let (d1, d2) = (self.first.dim(), self.second.dim());
        (0..d1.len()).map(|i| d1.get(i) as i64 * d2.get(i) as i64).sum()
    }
}

/// A per-vertex permutation `sigma_i` of slots. Acting on an element it sends
/// `x[i,a]` to `x[i, sigma_i(a)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<Vec<usize>>,
}

impl Permutation {
    pub fn identity(dim: &DimVector) -> Self {
        Permutation { images: dim.entries().iter().map(|&g| (0..g as usize).collect()).collect() }
    }

    pub fn new(dim: &DimVector, images: Vec<Vec<usize>>) -> Result<Self> {
        if images.len() != dim.len() {
            return Err(Error::LengthMismatch { expected: dim.len(), found: images.len() });
        }
        for (i, img) in images.iter().enumerate() {
            let g = dim.get(i) as usize;
            let mut seen = vec![false; g];
            if img.len() != g {
                return Err(Error::InvalidPermutation(format!("vertex {} expects {} images", i + 1, g)));
            }
            for &a in img {
                if a >= g || std::mem::replace(&mut seen[a], true) {
                    return Err(Error::InvalidPermutation(format!("vertex {} images are not a bijection", i + 1)));
                }
            }
        }
        Ok(Permutation { images })
    }

    /// Build from a map on variable indices; rejects maps that send a
    /// variable to another vertex.
    pub fn from_global(ctx: &VarContext, map: &[usize]) -> Result<Self> {
        let n = ctx.dim().len();
        let mut images = vec![Vec::new(); n];
        for (k, &target) in map.iter().enumerate() {
            let (v, _) = ctx.slot_of(k);
            let (tv, ts) = ctx.slot_of(target);
            if tv != v {
                return Err(Error::CrossVertexPermutation { vertex: v + 1, from: k });
            }
            images[v].push(ts);
        }
        Permutation::new(ctx.dim(), images)
    }

    /// Transposition of slots `a` and `a+1` at `vertex`.
    pub fn adjacent_transposition(dim: &DimVector, vertex: usize, a: usize) -> Self {
        let mut p = Self::identity(dim);
        p.images[vertex].swap(a, a + 1);
        p
    }

    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .zip(&other.images)
                .map(|(s, o)| o.iter().map(|&a| s[a]).collect())
                .collect(),
        }
    }

    pub fn global_map(&self, ctx: &VarContext) -> Vec<usize> {
        let mut map = Vec::with_capacity(ctx.nvars());
        for (i, img) in self.images.iter().enumerate() {
            for &a in img {
                map.push(ctx.var(i, a));
            }
        }
        map
    }

    /// All of `S_gamma`.
    pub fn all(dim: &DimVector) -> Vec<Permutation> {
        let per_vertex: Vec<Vec<Vec<usize>>> =
            dim.entries().iter().map(|&g| permutations_of(g as usize)).collect();
        let mut out = vec![Vec::new()];
        for choices in per_vertex {
            let mut next = Vec::with_capacity(out.len() * choices.len());
            for prefix in &out {
                for c in &choices {
                    let mut p: Vec<Vec<usize>> = prefix.clone();
                    p.push(c.clone());
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(|images| Permutation { images }).collect()
    }
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations_of(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..n {
            if n - a < k - cur.len() {
                break;
            }
            cur.push(a);
            go(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// A `(gamma1, gamma2)` shuffle: at each vertex the set of joint slots
/// receiving the first block, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shuffle {
    subsets: Vec<Vec<usize>>,
    totals: Vec<usize>,
}

impl Shuffle {
    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// The order-preserving permutation sending block 1 onto the subset and
    /// block 2 onto its complement.
    pub fn permutation(&self) -> Permutation {
        let images = self
            .subsets
            .iter()
            .zip(&self.totals)
            .map(|(s, &t)| {
                let mut img = s.clone();
                img.extend((0..t).filter(|a| !s.contains(a)));
                img
            })
            .collect();
        Permutation { images }
    }
}

/// All `(gamma1, gamma2)` shuffles; there are `prod_i C(gamma^i, gamma1^i)`.
pub fn enumerate_shuffles(gamma1: &DimVector, gamma2: &DimVector) -> Result<Vec<Shuffle>> {
    let total = gamma1.checked_add(gamma2)?;
    let per_vertex: Vec<Vec<Vec<usize>>> = (0..total.len())
        .map(|i| combinations(total.get(i) as usize, gamma1.get(i) as usize))
        .collect();
    let totals: Vec<usize> = total.entries().iter().map(|&g| g as usize).collect();
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for choices in per_vertex {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for c in &choices {
                let mut p = prefix.clone();
                p.push(c.clone());
                next.push(p);
            }
        }
        out = next;
    }
    Ok(out.into_iter().map(|subsets| Shuffle { subsets, totals: totals.clone() }).collect())
}

/// Elements that are polynomials in the alphabet of a context.
pub trait AlphabetElement: Sized {
    fn context(&self) -> &Arc<VarContext>;
    fn poly(&self) -> &Poly;
    /// Same kind of element, new context and polynomial.
    fn rebuild(&self, ctx: Arc<VarContext>, poly: Poly) -> Self;
}

pub fn act_permutation<T: AlphabetElement>(sigma: &Permutation, f: &T) -> Result<T> {
    let ctx = f.context();
    Permutation::new(ctx.dim(), sigma.images.clone())?;
    let map = sigma.global_map(ctx);
    Ok(f.rebuild(ctx.clone(), f.poly().remap(ctx.nvars(), &map)))
}

/// Invariance under every adjacent transposition at every vertex; these
/// generate `S_gamma`.
pub fn is_invariant<T: AlphabetElement>(f: &T) -> bool {
    let ctx = f.context();
    let dim = ctx.dim();
    for i in 0..dim.len() {
        for a in 0..(dim.get(i) as usize).saturating_sub(1) {
            let map = Permutation::adjacent_transposition(dim, i, a).global_map(ctx);
            if f.poly().remap(ctx.nvars(), &map) != *f.poly() {
                return false;
            }
        }
    }
    true
}

/// Rewrite `f1` in the x' slots and `f2` in the x'' slots of the joint
/// alphabet.
pub fn split_relabel<T: AlphabetElement>(f1: &T, f2: &T) -> Result<(T, T)> {
    let split = BlockSplit::from_contexts(f1.context(), f2.context())?;
    let joint = split.joint().clone();
    Ok((
        f1.rebuild(joint.clone(), split.embed_first(f1.poly())),
        f2.rebuild(joint, split.embed_second(f2.poly())),
    ))
}

/// Plain sum over `S_gamma`, without the `1/|S_gamma|` normalization.
pub fn symmetrize<T: AlphabetElement>(f: &T) -> T {
    let ctx = f.context();
    let mut acc = Poly::zero(ctx.nvars());
    for sigma in Permutation::all(ctx.dim()) {
        acc = acc.add(&f.poly().remap(ctx.nvars(), &sigma.global_map(ctx)));
    }
    f.rebuild(ctx.clone(), acc)
}

/// Sum of the distinct `S_gamma` images of one monomial.
pub fn orbit_sum(ctx: &VarContext, exps: &[i32], coeff: &Rational) -> Poly {
    let mut seen = std::collections::BTreeSet::new();
    for sigma in Permutation::all(ctx.dim()) {
        let map = sigma.global_map(ctx);
        let mut image = vec![0; exps.len()];
        for (k, &e) in exps.iter().enumerate() {
            image[map[k]] = e;
        }
        seen.insert(image);
    }
    Poly::from_terms(ctx.nvars(), seen.into_iter().map(|e| (e, coeff.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector::new(v.to_vec())
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(enumerate_shuffles(&dv(&[1]), &dv(&[1])).unwrap().len(), 2);
        assert_eq!(enumerate_shuffles(&dv(&[2]), &dv(&[1])).unwrap().len(), 3);
        let s = enumerate_shuffles(&dv(&[1, 1]), &dv(&[1, 0])).unwrap();
        assert_eq!(s.len(), 2);
        // vertex 1 has two choices, vertex 2 only one
        let firsts: Vec<_> = s.iter().map(|sh| sh.subsets()[0].clone()).collect();
        assert_eq!(firsts, vec![vec![0], vec![1]]);
        assert!(s.iter().all(|sh| sh.subsets()[1] == vec![0]));
    }

    #[test]
    fn shuffle_length_mismatch() {
        assert!(matches!(
            enumerate_shuffles(&dv(&[1]), &dv(&[1, 0])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn shuffle_permutations_are_block_increasing() {
        for sh in enumerate_shuffles(&dv(&[2, 1]), &dv(&[2, 2])).unwrap() {
            let p = sh.permutation();
            for (i, img) in p.images().iter().enumerate() {
                let g1 = [2, 1][i];
                assert!(img[..g1].windows(2).all(|w| w[0] < w[1]));
                assert!(img[g1..].windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn non_symmetric_quiver_names_entry() {
        let err = Quiver::parse("2\n0 1\n2 0\n").unwrap_err();
        assert_eq!(err, Error::NotSymmetric { i: 1, j: 2, aij: 1, aji: 2 });
        assert!(err.to_string().contains("(1,2)"));
    }

    #[test]
    fn quiver_round_trip() {
        let q = Quiver::new(vec![vec![2, 1], vec![1, 0]]).unwrap();
        assert_eq!(Quiver::parse(&q.to_string()).unwrap(), q);
        assert!(Quiver::parse("2\n0 1\n").is_err());
        assert!(Quiver::parse("1\nx\n").is_err());
    }

    #[test]
    fn context_indexing() {
        let q = Arc::new(Quiver::new(vec![vec![0, 1], vec![1, 0]]).unwrap());
        let ctx = VarContext::new(q, dv(&[2, 3])).unwrap();
        assert_eq!(ctx.nvars(), 5);
        assert_eq!(ctx.var(1, 0), 2);
        assert_eq!(ctx.slot_of(4), (1, 2));
        assert_eq!(ctx.var_name(2, 'x'), "x[2,1]");
    }

    #[test]
    fn split_places_second_block_after_first() {
        let q = Arc::new(Quiver::new(vec![vec![0, 1], vec![1, 0]]).unwrap());
        let split = BlockSplit::new(&q, &dv(&[1, 1]), &dv(&[0, 1])).unwrap();
        // joint alphabet: x[1,1], x[2,1], x[2,2]
        assert_eq!(split.first_map(), &[0, 1]);
        assert_eq!(split.second_map(), &[2]);
    }

    #[test]
    fn from_global_rejects_cross_vertex() {
        let q = Arc::new(Quiver::new(vec![vec![0, 0], vec![0, 0]]).unwrap());
        let ctx = VarContext::new(q, dv(&[1, 1])).unwrap();
        assert!(matches!(
            Permutation::from_global(&ctx, &[1, 0]),
            Err(Error::CrossVertexPermutation { .. })
        ));
        assert!(Permutation::from_global(&ctx, &[0, 1]).is_ok());
    }

    #[test]
    fn composition_order() {
        let d = dv(&[3]);
        let s = Permutation::new(&d, vec![vec![1, 2, 0]]).unwrap();
        let t = Permutation::new(&d, vec![vec![0, 2, 1]]).unwrap();
        // (s ∘ t)(1) = s(t(1)) = s(2) = 0
        assert_eq!(s.compose(&t).images()[0], vec![1, 0, 2]);
        assert_eq!(Permutation::all(&d).len(), 6);
    }
}
