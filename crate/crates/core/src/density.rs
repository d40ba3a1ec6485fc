//! Exact densities of one graph in another.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::LinComb;
use crate::construct::blowup;
use crate::error::{input, Error, Result};
use crate::graph::{subsets, Graph};

/// Default cap on `v(H)·n_max` for [`blowup_density_curve`].
pub const DEFAULT_BLOWUP_CAP: usize = 24;

/// An exact probability.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DensityValue(BigRational);

impl DensityValue {
    pub fn new(value: BigRational) -> Result<Self> {
        if value < BigRational::zero() || value > BigRational::one() {
            return input(format!("{} is not a density", value));
        }
        Ok(DensityValue(value))
    }

    fn ratio(count: u128, total: u128) -> Self {
        DensityValue(BigRational::new(BigInt::from(count), BigInt::from(total)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for DensityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn same_uniformity(a: &Graph, b: &Graph) -> Result<()> {
    if a.r() != b.r() {
        return Err(Error::Mismatch(format!("uniformities {} and {}", a.r(), b.r())));
    }
    Ok(())
}

/// For each vertex `v` of `g`, the edges and non-edges whose largest member is `v`,
/// so a partial map can be checked as soon as `v` is placed.
fn closing_sets(g: &Graph) -> Vec<Vec<(Vec<u32>, bool)>> {
    let mut out = vec![Vec::new(); g.order()];
    for s in subsets(g.order(), g.r()) {
        let last = *s.last().expect("r is positive") as usize;
        let present = g.has_edge(&s);
        out[last].push((s, present));
    }
    out
}

/// Counts maps `φ: V_F → V_H` (optionally injective) that preserve labels and
/// satisfy `accept(φ(e), e ∈ E_F)` for every r-subset `e` closed by each vertex.
fn count_maps<A>(f: &Graph, h: &Graph, injective: bool, sets: &[Vec<(Vec<u32>, bool)>], accept: A) -> u128
where
    A: Fn(&[u32], bool) -> bool + Sync,
{
    fn go<A: Fn(&[u32], bool) -> bool>(
        v: usize,
        phi: &mut Vec<u32>,
        f: &Graph,
        h: &Graph,
        injective: bool,
        sets: &[Vec<(Vec<u32>, bool)>],
        accept: &A,
        image: &mut Vec<u32>,
    ) -> u128 {
        if v == f.order() {
            return 1;
        }
        let mut total = 0;
        for x in 0..h.order() as u32 {
            if h.label(x as usize) != f.label(v) || (injective && phi.contains(&x)) {
                continue;
            }
            phi.push(x);
            let ok = sets[v].iter().all(|(s, present)| {
                image.clear();
                image.extend(s.iter().map(|&u| phi[u as usize]));
                accept(image, *present)
            });
            if ok {
                total += go(v + 1, phi, f, h, injective, sets, accept, image);
            }
            phi.pop();
        }
        total
    }
    if f.order() == 0 {
        return 1;
    }
    (0..h.order() as u32)
        .into_par_iter()
        .filter(|&x| h.label(x as usize) == f.label(0))
        .map(|x| {
            let mut phi = vec![x];
            let mut image = Vec::new();
            if sets[0].iter().all(|(s, present)| {
                image.clear();
                image.extend(s.iter().map(|&u| phi[u as usize]));
                accept(&image, *present)
            }) {
                go(1, &mut phi, f, h, injective, sets, &accept, &mut image)
            } else {
                0
            }
        })
        .sum()
}

/// Whether an image tuple is an edge of `h` (false if it repeats a vertex).
fn image_is_edge(h: &Graph, image: &[u32]) -> bool {
    let mut e = image.to_vec();
    e.sort_unstable();
    e.windows(2).all(|w| w[0] < w[1]) && h.has_edge(&e)
}

fn falling(n: usize, k: usize) -> u128 {
    (0..k).map(|i| (n - i) as u128).product()
}

/// Probability that a uniformly random injection `V_G ↪ V_H` induces exactly `G`.
pub fn inj_density(g: &Graph, h: &Graph) -> Result<DensityValue> {
    same_uniformity(g, h)?;
    if g.order() > h.order() {
        return Ok(DensityValue::ratio(0, 1));
    }
    let sets = closing_sets(g);
    let count = count_maps(g, h, true, &sets, |image, present| image_is_edge(h, image) == present);
    Ok(DensityValue::ratio(count, falling(h.order(), g.order())))
}

/// Probability that a uniformly random map `V_G → V_H` is a homomorphism:
/// labels are preserved and every edge is mapped injectively onto an edge.
pub fn hom_density(g: &Graph, h: &Graph) -> Result<DensityValue> {
    same_uniformity(g, h)?;
    if h.order() == 0 {
        if g.order() == 0 {
            return Ok(DensityValue::ratio(1, 1));
        }
        return input("homomorphism density into the empty graph");
    }
    let mut sets = closing_sets(g);
    for list in &mut sets {
        list.retain(|(_, present)| *present);
    }
    let count = count_maps(g, h, false, &sets, |image, _| image_is_edge(h, image));
    Ok(DensityValue::ratio(count, (h.order() as u128).pow(g.order() as u32)))
}

/// Limit of `inj(F, H^(n))` over the n-fold blow-ups of `H`: the probability
/// that a uniform map `φ: V_F → V_H` satisfies `e ∈ E_F ⇔ φ(e) ∈ E_H` (with
/// `φ` injective on `e`) for every r-subset `e`.
pub fn limit_inj_blowup(f: &Graph, h: &Graph) -> Result<DensityValue> {
    same_uniformity(f, h)?;
    if h.order() == 0 {
        if f.order() == 0 {
            return Ok(DensityValue::ratio(1, 1));
        }
        return input("blow-up limit of the empty graph");
    }
    let sets = closing_sets(f);
    let count = count_maps(f, h, false, &sets, |image, present| image_is_edge(h, image) == present);
    Ok(DensityValue::ratio(count, (h.order() as u128).pow(f.order() as u32)))
}

fn linear<D>(f: &LinComb, h: &Graph, density: D) -> Result<BigRational>
where
    D: Fn(&Graph, &Graph) -> Result<DensityValue>,
{
    let mut total = BigRational::zero();
    for (g, c) in f.terms() {
        total += c * density(g, h)?.into_inner();
    }
    Ok(total)
}

/// Coefficient-weighted [`inj_density`].
pub fn inj_density_of(f: &LinComb, h: &Graph) -> Result<BigRational> {
    linear(f, h, inj_density)
}

/// Coefficient-weighted [`hom_density`].
pub fn hom_density_of(f: &LinComb, h: &Graph) -> Result<BigRational> {
    linear(f, h, hom_density)
}

/// Coefficient-weighted [`limit_inj_blowup`].
pub fn limit_inj_blowup_of(f: &LinComb, h: &Graph) -> Result<BigRational> {
    linear(f, h, limit_inj_blowup)
}

/// `inj(F, blowup(H, n))` for `n = 1..=n_max`.
pub fn blowup_density_curve(f: &Graph, h: &Graph, n_max: usize, cap: usize) -> Result<Vec<DensityValue>> {
    if n_max == 0 {
        return input("the curve needs at least one blow-up factor");
    }
    if h.order().saturating_mul(n_max) > cap {
        return Err(Error::Resource(format!(
            "blow-ups up to {} vertices exceed the cap of {}",
            h.order() * n_max,
            cap
        )));
    }
    (1..=n_max).map(|n| inj_density(f, &blowup(h, n)?)).collect()
}
