//! Brute-force oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use graph_algebra::{canonical_form, subsets, Graph, Label};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ratio(a: u128, b: u128) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub fn random_graph(rng: &mut impl Rng, r: usize, n: usize, labels: u32) -> Graph {
    let edges: Vec<Vec<u32>> = subsets(n, r).filter(|_| rng.gen_bool(0.5)).collect();
    let ls: Vec<Label> = (0..n).map(|_| rng.gen_range(0..labels)).collect();
    Graph::new(r, n, ls, edges).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<u32> {
    let mut p: Vec<u32> = (0..n as u32).collect();
    p.shuffle(rng);
    p
}

/// All k-permutations of `[n]` as vectors.
pub fn arrangements(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn go(n: usize, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..n as u32 {
            if !cur.contains(&x) {
                cur.push(x);
                go(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), &mut out);
    out
}

/// All maps `[k] → [n]`.
pub fn maps(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|m| (0..n as u32).map(move |x| [m.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

fn image_edge(phi: &[u32], e: &[u32]) -> Vec<u32> {
    let mut img: Vec<u32> = e.iter().map(|&v| phi[v as usize]).collect();
    img.sort_unstable();
    img
}

fn injective(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

/// Whether `phi` maps `g` onto exactly the induced copy in `h`.
pub fn induces(g: &Graph, h: &Graph, phi: &[u32]) -> bool {
    (0..g.order()).all(|v| g.label(v) == h.label(phi[v] as usize))
        && subsets(g.order(), g.r()).all(|e| g.has_edge(&e) == h.has_edge(&image_edge(phi, &e)))
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.r() == b.r()
        && a.order() == b.order()
        && a.size() == b.size()
        && arrangements(a.order(), a.order()).iter().any(|p| induces(a, b, p))
}

pub fn inj_density(g: &Graph, h: &Graph) -> BigRational {
    if g.order() > h.order() {
        return ratio(0, 1);
    }
    let all = arrangements(h.order(), g.order());
    let hits = all.iter().filter(|p| induces(g, h, p)).count();
    ratio(hits as u128, all.len() as u128)
}

/// Non-induced: every edge of `g` lands on an edge of `h`.
pub fn sub_density(g: &Graph, h: &Graph) -> BigRational {
    if g.order() > h.order() {
        return ratio(0, 1);
    }
    let all = arrangements(h.order(), g.order());
    let hits = all
        .iter()
        .filter(|p| (0..g.order()).all(|v| g.label(v) == h.label(p[v] as usize)) && g.edges().all(|e| h.has_edge(&image_edge(p, e))))
        .count();
    ratio(hits as u128, all.len() as u128)
}

pub fn hom_density(g: &Graph, h: &Graph) -> BigRational {
    let all = maps(h.order(), g.order());
    let hits = all
        .iter()
        .filter(|p| {
            (0..g.order()).all(|v| g.label(v) == h.label(p[v] as usize))
                && g.edges().all(|e| {
                    let img = image_edge(p, e);
                    injective(&img) && h.has_edge(&img)
                })
        })
        .count();
    ratio(hits as u128, all.len() as u128)
}

/// `t(C4, H) = tr(A^4) / n^4`.
pub fn c4_hom_density(h: &Graph) -> BigRational {
    let n = h.order();
    let mut a = vec![vec![0u128; n]; n];
    for e in h.edges() {
        a[e[0] as usize][e[1] as usize] = 1;
        a[e[1] as usize][e[0] as usize] = 1;
    }
    let mul = |x: &Vec<Vec<u128>>, y: &Vec<Vec<u128>>| -> Vec<Vec<u128>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect()).collect()
    };
    let a2 = mul(&a, &a);
    let a4 = mul(&a2, &a2);
    ratio((0..n).map(|i| a4[i][i]).sum(), (n as u128).pow(4))
}

/// Probability that a random injection of `V_a ⊔ V_b` into `h` induces `a`
/// on the first part and `b` on the second.
pub fn pair_density(a: &Graph, b: &Graph, h: &Graph) -> BigRational {
    let k = a.order() + b.order();
    if k > h.order() {
        return ratio(0, 1);
    }
    let all = arrangements(h.order(), k);
    let hits = all
        .iter()
        .filter(|p| induces(a, h, &p[..a.order()]) && induces(b, h, &p[a.order()..]))
        .count();
    ratio(hits as u128, all.len() as u128)
}

/// Every isomorphism class of graphs on `n` vertices with the given uniformity.
pub fn all_graphs(r: usize, n: usize) -> Vec<Graph> {
    let slots: Vec<Vec<u32>> = subsets(n, r).collect();
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u64..1 << slots.len() {
        let edges: Vec<Vec<u32>> = slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| s.clone()).collect();
        seen.insert(canonical_form(&Graph::unlabeled(r, n, edges).unwrap()));
    }
    seen.into_iter().collect()
}

/// The 3-cube on bit-string vertices.
pub fn cube() -> Graph {
    let edges: Vec<[u32; 2]> = (0..8u32)
        .flat_map(|v| (0..3).map(move |b| [v, v ^ (1 << b)]))
        .filter(|e| e[0] < e[1])
        .collect();
    Graph::unlabeled(2, 8, edges).unwrap()
}
