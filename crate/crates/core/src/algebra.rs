//! Formal linear combinations of isomorphism classes and the quotient algebra.
//!
//! Coefficients count labeled objects: the product of two classes is the sum
//! over every graph on the disjoint union of their vertex sets that restricts
//! to the two factors, so `•·•·•` expands to `K3 + 3 P2 + 3 P2^c + I3`.
//! Two combinations are equal in the quotient by the relations `G = •·G`
//! exactly when their expansions to a common uniform order agree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::canon::{canonical_form, CanonicalGraph};
use crate::error::{input, Error, Result};
use crate::graph::{binomial, subsets, Graph, Label};

/// Uniformity and label count shared by all terms of a combination.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Signature {
    pub r: usize,
    /// Size of the label set `{0, .., labels-1}`.
    pub labels: u32,
}

impl Signature {
    pub fn new(r: usize, labels: u32) -> Result<Self> {
        if r == 0 || labels == 0 {
            return input("uniformity and label count must be positive");
        }
        Ok(Signature { r, labels })
    }

    pub fn unlabeled(r: usize) -> Self {
        Signature { r, labels: 1 }
    }

    pub fn admits(&self, g: &Graph) -> bool {
        g.r() == self.r && g.labels().iter().all(|&l| l < self.labels)
    }

    pub(crate) fn expect(&self, other: &Signature) -> Result<()> {
        if self != other {
            return Err(Error::Mismatch(format!(
                "(r={}, {} labels) against (r={}, {} labels)",
                self.r, self.labels, other.r, other.labels
            )));
        }
        Ok(())
    }
}

/// Finitely supported rational combination of isomorphism classes.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb {
    sig: Signature,
    terms: BTreeMap<CanonicalGraph, BigRational>,
}

/// Integer as an exact rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `a/b` as an exact rational.
pub fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub(crate) fn rpow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow(x.clone(), e)
}

impl LinComb {
    pub fn zero(sig: Signature) -> Self {
        LinComb { sig, terms: BTreeMap::new() }
    }

    /// The empty graph, unit of the product.
    pub fn unit(sig: Signature) -> Self {
        Self::single(sig, Graph::empty(sig.r))
    }

    /// A single vertex carrying `label`.
    pub fn point(sig: Signature, label: Label) -> Result<Self> {
        Self::graph_in(sig, &Graph::independent(sig.r, 1, label))
    }

    /// A single graph over the smallest label set containing its labels.
    pub fn graph(g: &Graph) -> Self {
        let sig = Signature { r: g.r(), labels: g.label_bound() };
        Self::single(sig, g.clone())
    }

    pub fn graph_in(sig: Signature, g: &Graph) -> Result<Self> {
        if !sig.admits(g) {
            return Err(Error::Mismatch(format!(
                "{} does not fit r={} with {} labels",
                g, sig.r, sig.labels
            )));
        }
        Ok(Self::single(sig, g.clone()))
    }

    fn single(sig: Signature, g: Graph) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(CanonicalGraph::of(&g), BigRational::one());
        LinComb { sig, terms }
    }

    pub fn from_terms<I>(sig: Signature, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Graph, BigRational)>,
    {
        let mut out = Self::zero(sig);
        for (g, c) in terms {
            if !sig.admits(&g) {
                return Err(Error::Mismatch(format!("{} does not fit the signature", g)));
            }
            out.add_term(CanonicalGraph::of(&g), c);
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, g: CanonicalGraph, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
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

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn r(&self) -> usize {
        self.sig.r
    }

    pub fn label_count(&self) -> u32 {
        self.sig.labels
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical-key order.
    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalGraph, &BigRational)> {
        self.terms.iter()
    }

    /// Coefficient of the class of `g` (zero if absent).
    pub fn coefficient(&self, g: &Graph) -> BigRational {
        self.terms
            .get(&CanonicalGraph::of(g))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, c| a + c)
    }

    pub fn max_order(&self) -> Option<usize> {
        self.terms.keys().map(|g| g.order()).max()
    }

    /// The common order of all terms, if there is one.
    pub fn uniform_order(&self) -> Option<usize> {
        let mut orders = self.terms.keys().map(|g| g.order());
        let first = orders.next()?;
        orders.all(|n| n == first).then_some(first)
    }

    pub fn add(&self, other: &LinComb) -> Result<LinComb> {
        self.sig.expect(&other.sig)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinComb) -> Result<LinComb> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> LinComb {
        if c.is_zero() {
            return Self::zero(self.sig);
        }
        LinComb {
            sig: self.sig,
            terms: self.terms.iter().map(|(g, x)| (g.clone(), x * c)).collect(),
        }
    }

    /// `self + c·∅`.
    pub fn add_constant(&self, c: &BigRational) -> LinComb {
        let mut out = self.clone();
        out.add_term(CanonicalGraph::of(&Graph::empty(self.sig.r)), c.clone());
        out
    }

    pub fn pow(&self, e: usize) -> LinComb {
        let mut acc = Self::unit(self.sig);
        for _ in 0..e {
            acc = product(&acc, self).expect("same signature");
        }
        acc
    }

    /// Reads the text format `<rational>*graph{...} (+|-) ...` (or `0`).
    pub fn parse(s: &str, sig: Signature) -> Result<LinComb> {
        let mut out = Self::zero(sig);
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        let mut rest = s;
        let mut first = true;
        while !rest.trim().is_empty() {
            rest = rest.trim_start();
            let mut negative = false;
            if let Some(t) = rest.strip_prefix('-') {
                negative = true;
                rest = t;
            } else if let Some(t) = rest.strip_prefix('+') {
                if first {
                    return Err(Error::Parse("leading '+'".into()));
                }
                rest = t;
            } else if !first {
                return Err(Error::Parse(format!("expected '+' or '-' before {:?}", rest)));
            }
            rest = rest.trim_start();
            let start = rest
                .find("graph{")
                .ok_or_else(|| Error::Parse(format!("missing graph in {:?}", rest)))?;
            let coeff_text = rest[..start].trim();
            let coeff = if coeff_text.is_empty() {
                BigRational::one()
            } else {
                let c = coeff_text
                    .strip_suffix('*')
                    .ok_or_else(|| Error::Parse(format!("expected '*' after {:?}", coeff_text)))?;
                parse_rational(c.trim())?
            };
            let end = rest[start..]
                .find('}')
                .ok_or_else(|| Error::Parse("unterminated graph".into()))?
                + start
                + 1;
            let g: Graph = rest[start..end].parse()?;
            if !sig.admits(&g) {
                return Err(Error::Parse(format!("{} does not fit the signature", g)));
            }
            out.add_term(CanonicalGraph::of(&g), if negative { -coeff } else { coeff });
            rest = &rest[end..];
            first = false;
        }
        Ok(out)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational {:?}", s));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{}*{}", c.abs(), g)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Counts canonical forms of a stream of graphs.
pub(crate) fn tally(graphs: impl Iterator<Item = Graph>) -> FxHashMap<Graph, u64> {
    let mut counts = FxHashMap::default();
    for g in graphs {
        *counts.entry(canonical_form(&g)).or_insert(0) += 1;
    }
    counts
}

pub(crate) fn merge_counts(mut a: FxHashMap<Graph, u64>, b: FxHashMap<Graph, u64>) -> FxHashMap<Graph, u64> {
    if a.len() < b.len() {
        return merge_counts(b, a);
    }
    for (g, n) in b {
        *a.entry(g).or_insert(0) += n;
    }
    a
}

const MAX_FREE_SLOTS: usize = 30;

fn slot_guard(slots: usize, what: &str) -> Result<()> {
    if slots > MAX_FREE_SLOTS {
        return Err(Error::Resource(format!(
            "{} needs 2^{} completions (limit 2^{})",
            what, slots, MAX_FREE_SLOTS
        )));
    }
    Ok(())
}

/// Class counts of the product of two concrete graphs.
fn graph_product(a: &Graph, b: &Graph) -> Result<FxHashMap<Graph, u64>> {
    let r = a.r();
    let (na, nb) = (a.order(), b.order());
    let n = na + nb;
    let shift = na as u32;
    let cross: Vec<Vec<u32>> = subsets(n, r)
        .filter(|s| s[0] < shift && s[r - 1] >= shift)
        .collect();
    slot_guard(cross.len(), "product")?;
    let mut labels = a.labels().to_vec();
    labels.extend_from_slice(b.labels());
    let mut base: Vec<u32> = a.flat_edges().to_vec();
    base.extend(b.flat_edges().iter().map(|&v| v + shift));
    let build = |mask: u64| {
        let mut flat = base.clone();
        for (i, s) in cross.iter().enumerate() {
            if mask >> i & 1 == 1 {
                flat.extend_from_slice(s);
            }
        }
        Graph::from_flat(r, n, labels.clone(), flat)
    };
    let total = 1u64 << cross.len();
    Ok(if total >= 4096 {
        (0..total)
            .into_par_iter()
            .fold(FxHashMap::default, |mut acc, m| {
                *acc.entry(canonical_form(&build(m))).or_insert(0) += 1;
                acc
            })
            .reduce(FxHashMap::default, merge_counts)
    } else {
        tally((0..total).map(build))
    })
}

/// Bilinear product of combinations.
pub fn product(f: &LinComb, g: &LinComb) -> Result<LinComb> {
    f.sig.expect(&g.sig)?;
    let mut out = LinComb::zero(f.sig);
    for (a, ca) in &f.terms {
        for (b, cb) in &g.terms {
            let counts = graph_product(a, b)?;
            let c = ca * cb;
            for (h, k) in counts {
                out.add_term(
                    CanonicalGraph::assume_canonical(h),
                    &c * BigRational::from_integer(BigInt::from(k)),
                );
            }
        }
    }
    Ok(out)
}

/// Sum of all supergraphs of `g` on its own vertex set, as class counts.
fn nind_graph(g: &Graph) -> Result<FxHashMap<Graph, u64>> {
    let free: Vec<Vec<u32>> = subsets(g.order(), g.r()).filter(|s| !g.has_edge(s)).collect();
    slot_guard(free.len(), "nind")?;
    let build = |mask: u64| {
        let mut flat = g.flat_edges().to_vec();
        for (i, s) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                flat.extend_from_slice(s);
            }
        }
        Graph::from_flat(g.r(), g.order(), g.labels().to_vec(), flat)
    };
    let total = 1u64 << free.len();
    Ok(if total >= 4096 {
        (0..total)
            .into_par_iter()
            .fold(FxHashMap::default, |mut acc, m| {
                *acc.entry(canonical_form(&build(m))).or_insert(0) += 1;
                acc
            })
            .reduce(FxHashMap::default, merge_counts)
    } else {
        tally((0..total).map(build))
    })
}

/// Linear extension of the non-induced lift: each class becomes the sum of
/// all graphs containing it on the same vertex set.
pub fn nind(f: &LinComb) -> Result<LinComb> {
    let mut out = LinComb::zero(f.sig);
    for (g, c) in &f.terms {
        for (h, k) in nind_graph(g)? {
            out.add_term(
                CanonicalGraph::assume_canonical(h),
                c * BigRational::from_integer(BigInt::from(k)),
            );
        }
    }
    Ok(out)
}

/// A combination all of whose terms have the same order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniformRep {
    order: usize,
    comb: LinComb,
}

impl UniformRep {
    pub fn new(comb: LinComb, order: usize) -> Result<Self> {
        if comb.terms().any(|(g, _)| g.order() != order) {
            return input(format!("not every term has order {}", order));
        }
        Ok(UniformRep { order, comb })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn comb(&self) -> &LinComb {
        &self.comb
    }

    pub fn into_comb(self) -> LinComb {
        self.comb
    }
}

/// All one-vertex extensions of `g` (every attachment pattern and label).
fn extensions(g: &Graph, labels: u32) -> Result<FxHashMap<Graph, u64>> {
    let n = g.order();
    let r = g.r();
    let slots: Vec<Vec<u32>> = subsets(n, r - 1)
        .map(|mut s| {
            s.push(n as u32);
            s
        })
        .collect();
    slot_guard(slots.len(), "one-vertex extension")?;
    let mut counts = FxHashMap::default();
    for label in 0..labels {
        let mut lab = g.labels().to_vec();
        lab.push(label);
        for mask in 0..1u64 << slots.len() {
            let mut flat = g.flat_edges().to_vec();
            for (i, s) in slots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    flat.extend_from_slice(s);
                }
            }
            let h = Graph::from_flat(r, n + 1, lab.clone(), flat);
            *counts.entry(canonical_form(&h)).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

/// Expands `f` to its representative of uniform order `n`, multiplying every
/// term of order `v` by `•^(n-v)`.
pub fn lift(f: &LinComb, n: usize) -> Result<UniformRep> {
    let sig = f.sig;
    if let Some(m) = f.max_order() {
        if m > n {
            return input(format!("cannot lift a term of order {} to order {}", m, n));
        }
    }
    let min = f.terms.keys().map(|g| g.order()).min().unwrap_or(n);
    let mut level = LinComb::zero(sig);
    for v in min..=n {
        if v > min {
            let terms: Vec<(&CanonicalGraph, &BigRational)> = level.terms.iter().collect();
            let parts: Vec<Result<Vec<(Graph, BigRational)>>> = terms
                .par_iter()
                .map(|(g, c)| {
                    Ok(extensions(g, sig.labels)?
                        .into_iter()
                        .map(|(h, k)| (h, *c * BigRational::from_integer(BigInt::from(k))))
                        .collect())
                })
                .collect();
            let mut next = LinComb::zero(sig);
            for part in parts {
                for (h, c) in part? {
                    next.add_term(CanonicalGraph::assume_canonical(h), c);
                }
            }
            level = next;
        }
        for (g, c) in f.terms.range(..).filter(|(g, _)| g.order() == v) {
            level.add_term(g.clone(), c.clone());
        }
    }
    Ok(UniformRep { order: n, comb: level })
}

/// Equality in the quotient algebra.
///
/// The combinations are compared at the largest order occurring in either.
/// With more than one label the comparison is repeated one order higher and a
/// disagreement is reported as an error instead of being resolved silently.
pub fn alg_equal(f: &LinComb, g: &LinComb) -> Result<bool> {
    f.sig.expect(&g.sig)?;
    let d = f.sub(g)?;
    if d.is_zero() {
        return Ok(true);
    }
    let n = d.max_order().unwrap_or(0).max(f.max_order().unwrap_or(0)).max(g.max_order().unwrap_or(0));
    let here = lift(&d, n)?.comb.is_zero();
    if f.sig.labels > 1 {
        let above = lift(&d, n + 1)?.comb.is_zero();
        if here != above {
            return Err(Error::AmbiguousRepresentative(n, n + 1));
        }
    }
    Ok(here)
}

/// Outcome of a finite-order positivity check.
#[derive(Clone, Debug)]
pub struct PositivityCertificate {
    pub holds: bool,
    pub representative: UniformRep,
    /// Classes with negative coefficient in the representative.
    pub negative: Vec<(CanonicalGraph, BigRational)>,
}

/// Whether `f + ε·∅` has only nonnegative coefficients at uniform order `n`.
///
/// A positive answer certifies positivity; a negative one at a single order
/// proves nothing.
pub fn coeff_positive_at(f: &LinComb, n: usize, eps: &BigRational) -> Result<PositivityCertificate> {
    if eps.is_negative() {
        return input("epsilon must be nonnegative");
    }
    let rep = lift(&f.add_constant(eps), n)?;
    let negative: Vec<(CanonicalGraph, BigRational)> = rep
        .comb
        .terms()
        .filter(|(_, c)| c.is_negative())
        .map(|(g, c)| (g.clone(), c.clone()))
        .collect();
    Ok(PositivityCertificate { holds: negative.is_empty(), representative: rep, negative })
}

fn check_probability(p: &BigRational) -> Result<()> {
    if p.is_negative() || p > &BigRational::one() {
        return input(format!("{} is not in [0, 1]", p));
    }
    Ok(())
}

/// Limit density of `f` in a `p`-quasi-random sequence whose vertex labels are
/// uniform over the label set.
pub fn eval_quasirandom(f: &LinComb, p: &BigRational) -> Result<BigRational> {
    let k = f.sig.labels as i64;
    let weights = vec![frac(1, k); k as usize];
    eval_with_labels(f, p, &weights)
}

/// Limit density of `f` in a `p`-quasi-random sequence whose vertex labels are
/// drawn independently with the given probabilities.
pub fn eval_with_labels(f: &LinComb, p: &BigRational, weights: &[BigRational]) -> Result<BigRational> {
    check_probability(p)?;
    if weights.len() != f.sig.labels as usize {
        return input(format!("{} label weights for {} labels", weights.len(), f.sig.labels));
    }
    for w in weights {
        check_probability(w)?;
    }
    let q = BigRational::one() - p;
    let mut total = BigRational::zero();
    for (g, c) in &f.terms {
        let e = g.size();
        let slots = binomial(g.order(), g.r()) as usize;
        let mut term = c * rpow(p, e) * rpow(&q, slots - e);
        for &l in g.labels() {
            term *= &weights[l as usize];
        }
        total += term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u2() -> Signature {
        Signature::unlabeled(2)
    }

    fn g(n: usize, edges: &[[u32; 2]]) -> Graph {
        Graph::unlabeled(2, n, edges.iter()).unwrap()
    }

    fn goodman_unit() -> LinComb {
        let p2 = Graph::path(2);
        LinComb::from_terms(
            u2(),
            [
                (Graph::complete(2, 3), rat(1)),
                (p2.clone(), rat(3)),
                (crate::graph::complement(&p2), rat(3)),
                (Graph::independent(2, 3, 0), rat(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_points_make_an_edge_or_not() {
        let pt = LinComb::point(u2(), 0).unwrap();
        let want = LinComb::from_terms(u2(), [(Graph::complete(2, 2), rat(1)), (Graph::independent(2, 2, 0), rat(1))])
            .unwrap();
        assert_eq!(product(&pt, &pt).unwrap(), want);
        assert_eq!(pt.pow(3), goodman_unit());
    }

    #[test]
    fn product_of_edges_has_mass_sixteen() {
        let k2 = LinComb::graph(&Graph::complete(2, 2));
        assert_eq!(product(&k2, &k2).unwrap().mass(), rat(16));
    }

    #[test]
    fn nind_examples() {
        let k2 = LinComb::graph(&Graph::complete(2, 2));
        assert_eq!(nind(&k2).unwrap(), k2);
        let p2 = LinComb::graph(&Graph::path(2));
        let want = p2.add(&LinComb::graph(&Graph::complete(2, 3))).unwrap();
        assert_eq!(nind(&p2).unwrap(), want);
        let k4 = LinComb::graph(&Graph::complete(2, 4));
        assert_eq!(nind(&k4).unwrap(), k4);
    }

    #[test]
    fn lift_of_unit_is_goodman_identity() {
        let rep = lift(&LinComb::unit(u2()), 3).unwrap();
        assert_eq!(rep.order(), 3);
        assert_eq!(rep.comb(), &goodman_unit());
    }

    #[test]
    fn lift_of_edge_counts_extensions() {
        // A third vertex joins K2 in four ways: no edge, one of two edges, both.
        let k2 = LinComb::graph(&Graph::complete(2, 2));
        assert_eq!(lift(&k2, 2).unwrap().comb(), &k2);
        let rep = lift(&k2, 3).unwrap();
        assert_eq!(rep.comb().coefficient(&Graph::complete(2, 3)), rat(1));
        assert_eq!(rep.comb().coefficient(&Graph::path(2)), rat(2));
        assert_eq!(rep.comb().coefficient(&g(3, &[[0, 1]])), rat(1));
        assert!(lift(&lift(&k2, 3).unwrap().into_comb(), 2).is_err());
    }

    #[test]
    fn quotient_equality() {
        let k2 = LinComb::graph(&Graph::complete(2, 2));
        let pt = LinComb::point(u2(), 0).unwrap();
        assert!(alg_equal(&k2, &product(&k2, &pt).unwrap()).unwrap());
        assert!(!alg_equal(&k2, &LinComb::graph(&Graph::independent(2, 2, 0))).unwrap());
        assert!(alg_equal(&LinComb::unit(u2()), &goodman_unit()).unwrap());
        let labeled = LinComb::unit(Signature::new(2, 2).unwrap());
        assert!(alg_equal(&k2, &labeled).is_err());
    }

    #[test]
    fn goodman_representative_has_negative_terms() {
        let f = LinComb::graph(&Graph::complete(2, 3))
            .add(&LinComb::graph(&Graph::independent(2, 3, 0)))
            .unwrap()
            .add_constant(&frac(-1, 4));
        let cert = coeff_positive_at(&f, 3, &rat(0)).unwrap();
        assert!(!cert.holds);
        let rep = cert.representative.comb();
        let p2 = Graph::path(2);
        assert_eq!(rep.coefficient(&Graph::complete(2, 3)), frac(3, 4));
        assert_eq!(rep.coefficient(&p2), frac(-3, 4));
        assert_eq!(rep.coefficient(&crate::graph::complement(&p2)), frac(-3, 4));
        assert_eq!(rep.coefficient(&Graph::independent(2, 3, 0)), frac(3, 4));
        assert_eq!(cert.negative.len(), 2);
        // Adding a quarter cancels the constant and leaves only K3 + I3.
        assert!(coeff_positive_at(&f, 3, &frac(1, 4)).unwrap().holds);
    }

    #[test]
    fn negative_edge_is_never_certified() {
        let minus = LinComb::graph(&Graph::complete(2, 2)).scale(&rat(-1));
        for n in 2..=6 {
            assert!(!coeff_positive_at(&minus, n, &rat(0)).unwrap().holds);
        }
    }

    #[test]
    fn quasirandom_values() {
        let p = frac(1, 3);
        let k2 = LinComb::graph(&Graph::complete(2, 2));
        assert_eq!(eval_quasirandom(&k2, &p).unwrap(), p);
        let c4 = LinComb::graph(&Graph::cycle(4));
        assert_eq!(eval_quasirandom(&nind(&c4).unwrap(), &p).unwrap(), rpow(&p, 4));
        assert_eq!(eval_quasirandom(&LinComb::unit(u2()), &p).unwrap(), rat(1));
        assert!(eval_quasirandom(&k2, &rat(2)).is_err());
    }

    #[test]
    fn labeled_evaluation_uses_label_weights() {
        let sig = Signature::new(2, 2).unwrap();
        let g = Graph::new(2, 2, vec![0, 1], [[0u32, 1]]).unwrap();
        let f = LinComb::graph_in(sig, &g).unwrap();
        // Two orderings of the two labels, each with probability w0·w1.
        let w = [frac(1, 3), frac(2, 3)];
        assert_eq!(eval_with_labels(&f, &frac(1, 2), &w).unwrap(), frac(1, 9));
        assert_eq!(eval_quasirandom(&lift(&LinComb::unit(sig), 2).unwrap().into_comb(), &frac(1, 5)).unwrap(), rat(1));
    }

    #[test]
    fn text_round_trip() {
        let f = goodman_unit().sub(&LinComb::graph(&Graph::complete(2, 2)).scale(&frac(5, 7))).unwrap();
        let text = f.to_string();
        assert_eq!(LinComb::parse(&text, u2()).unwrap(), f);
        assert_eq!(LinComb::parse("0", u2()).unwrap(), LinComb::zero(u2()));
        assert_eq!(
            LinComb::parse("-1/2*graph{r=2;n=2;l=;e=(0 1)}", u2()).unwrap(),
            LinComb::graph(&Graph::complete(2, 2)).scale(&frac(-1, 2))
        );
        assert!(LinComb::parse("2*graph{r=3;n=0;l=;e=}", u2()).is_err());
        assert!(LinComb::parse("2 graph{r=2;n=0;l=;e=}", u2()).is_err());
    }
}
