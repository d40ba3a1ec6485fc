//! Canonical representatives of isomorphism classes.
//!
//! The search is individualization-refinement: vertices are first split by
//! (color, label), the partition is refined until equitable, and every
//! remaining tie is broken by trying each vertex of the first non-singleton
//! cell. Leaves are discrete partitions; the canonical form is the relabeling
//! whose sorted edge list is lexicographically smallest among all leaves.
//! Subtrees that are images of an explored subtree under an automorphism
//! already found are skipped.

use std::ops::Deref;

use crate::graph::{Graph, Label};

/// A graph that is the canonical representative of its isomorphism class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalGraph(Graph);

impl CanonicalGraph {
    pub fn of(g: &Graph) -> Self {
        CanonicalGraph(canonical_form(g))
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }

    /// Wraps a graph already known to be canonical.
    pub(crate) fn assume_canonical(g: Graph) -> Self {
        debug_assert_eq!(canonical_form(&g), g);
        CanonicalGraph(g)
    }
}

impl Deref for CanonicalGraph {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.0
    }
}

impl std::fmt::Display for CanonicalGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Canonical form together with the size of the automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonized {
    pub form: CanonicalGraph,
    pub automorphisms: u64,
}

/// Canonical representative and automorphism count of `g`.
pub fn canonical(g: &Graph) -> Canonized {
    Canonized {
        form: CanonicalGraph::of(g),
        automorphisms: automorphism_count(g),
    }
}

/// Canonical representative of the class of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    let s = Structure::new(g);
    let leaf = s.search(&vec![0; g.order()]);
    s.materialize(&leaf)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.r() == b.r()
        && a.order() == b.order()
        && a.size() == b.size()
        && canonical_form(a) == canonical_form(b)
}

/// Number of label-preserving automorphisms of `g`.
///
/// Computed along a stabilizer chain: the orbit of each chosen vertex under
/// the pointwise stabilizer of the previously chosen ones is found by
/// comparing canonical forms of the individualized graphs.
pub fn automorphism_count(g: &Graph) -> u64 {
    let s = Structure::new(g);
    let n = g.order();
    let mut extra = vec![0u32; n];
    let mut total: u64 = 1;
    let mut scratch = s.scratch();
    for step in 1..=n as u32 {
        let mut colors = s.initial_colors(&extra);
        s.refine(&mut colors, &mut scratch);
        let Some(c) = s.target_color(&colors, &mut scratch) else { break };
        let cell: Vec<u32> = (0..n as u32).filter(|&v| colors[v as usize] == c).collect();
        let v = cell[0];
        let key_of = |w: u32| {
            let mut e = extra.clone();
            e[w as usize] = step;
            s.search(&e).key
        };
        let reference = key_of(v);
        let orbit = 1 + cell[1..].iter().filter(|&&w| key_of(w) == reference).count() as u64;
        total *= orbit;
        extra[v as usize] = step;
    }
    total
}

struct Leaf {
    /// `position[v]` is the index of vertex `v` in the canonical order.
    position: Vec<u32>,
    key: Vec<u128>,
}

struct Structure<'a> {
    g: &'a Graph,
    n: usize,
    r: usize,
    /// For each vertex, the other members of every incident edge, `r - 1`
    /// entries per edge, stored flat between `offsets[v]` and `offsets[v + 1]`.
    others: Vec<u32>,
    offsets: Vec<usize>,
}

/// Buffers reused across refinement rounds.
struct Scratch {
    sig: Vec<u64>,
    order: Vec<u32>,
    fresh: Vec<u32>,
    size: Vec<u32>,
}

impl<'a> Structure<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.order();
        let r = g.r();
        assert!(
            (n.max(2) as f64).log2() * r as f64 <= 127.0,
            "graph too large to canonicalize: {} vertices at uniformity {}",
            n,
            r
        );
        let mut degree = vec![0usize; n + 1];
        for &v in g.flat_edges() {
            degree[v as usize + 1] += 1;
        }
        let mut offsets = degree;
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        for o in offsets.iter_mut() {
            *o *= r - 1;
        }
        let mut fill = offsets.clone();
        let mut others = vec![0u32; offsets[n]];
        for e in g.edges() {
            for &v in e {
                for &x in e {
                    if x != v {
                        others[fill[v as usize]] = x;
                        fill[v as usize] += 1;
                    }
                }
            }
        }
        Structure { g, n, r, others, offsets }
    }

    fn scratch(&self) -> Scratch {
        Scratch {
            sig: vec![0; self.n],
            order: (0..self.n as u32).collect(),
            fresh: vec![0; self.n],
            size: vec![0; self.n],
        }
    }

    /// Cells ordered by (extra color, label); color = start index of the cell.
    fn initial_colors(&self, extra: &[u32]) -> Vec<u32> {
        let key = |v: usize| -> (u32, Label) { (extra[v], self.g.label(v)) };
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| key(v));
        let mut colors = vec![0u32; self.n];
        for (i, &v) in order.iter().enumerate() {
            colors[v] = if i > 0 && key(order[i - 1]) == key(v) {
                colors[order[i - 1]]
            } else {
                i as u32
            };
        }
        colors
    }

    /// Splits cells by the multiset of colors seen along incident edges until stable.
    ///
    /// Multisets are compared through an order-independent 64-bit hash. The
    /// hash is a function of the colored graph alone, so the refinement stays
    /// isomorphism invariant even if two different multisets collide; a
    /// collision only makes the partition coarser.
    fn refine(&self, colors: &mut [u32], s: &mut Scratch) {
        let n = self.n;
        if n <= 1 {
            return;
        }
        let w = self.r - 1;
        let mut cells = count_cells(colors, &mut s.size);
        while cells < n {
            for v in 0..n {
                let others = &self.others[self.offsets[v]..self.offsets[v + 1]];
                s.sig[v] = if w == 1 {
                    others
                        .iter()
                        .fold(0u64, |acc, &x| acc.wrapping_add(mix(colors[x as usize] as u64)))
                } else {
                    others.chunks_exact(w).fold(0u64, |acc, chunk| {
                        let inner = chunk
                            .iter()
                            .fold(0u64, |a, &x| a.wrapping_add(mix(colors[x as usize] as u64 ^ 0x9e37_79b9)));
                        acc.wrapping_add(mix(inner))
                    })
                };
            }
            let sig = &s.sig;
            let key = |v: u32| (colors[v as usize], sig[v as usize]);
            s.order.sort_unstable_by_key(|&v| key(v));
            let mut new_cells = 1;
            s.fresh[s.order[0] as usize] = 0;
            for i in 1..n {
                let (p, v) = (s.order[i - 1], s.order[i]);
                s.fresh[v as usize] = if key(p) == key(v) {
                    s.fresh[p as usize]
                } else {
                    new_cells += 1;
                    i as u32
                };
            }
            colors.copy_from_slice(&s.fresh);
            if new_cells == cells {
                return;
            }
            cells = new_cells;
        }
    }

    /// Color of the first non-singleton cell, if any.
    fn target_color(&self, colors: &[u32], s: &mut Scratch) -> Option<u32> {
        s.size.iter_mut().for_each(|x| *x = 0);
        for &c in colors {
            s.size[c as usize] += 1;
        }
        s.size.iter().position(|&k| k > 1).map(|c| c as u32)
    }

    fn leaf_key(&self, position: &[u32]) -> Vec<u128> {
        let base = self.n as u128;
        let mut key: Vec<u128> = if self.r == 2 {
            self.g
                .flat_edges()
                .chunks_exact(2)
                .map(|e| {
                    let (a, b) = (position[e[0] as usize], position[e[1] as usize]);
                    let (a, b) = if a < b { (a, b) } else { (b, a) };
                    a as u128 * base + b as u128
                })
                .collect()
        } else {
            let mut mapped: Vec<u32> = Vec::with_capacity(self.r);
            self.g
                .edges()
                .map(|e| {
                    mapped.clear();
                    mapped.extend(e.iter().map(|&v| position[v as usize]));
                    mapped.sort_unstable();
                    mapped.iter().fold(0u128, |acc, &c| acc * base + c as u128)
                })
                .collect()
        };
        key.sort_unstable();
        key
    }

    fn search(&self, extra: &[u32]) -> Leaf {
        let mut state = SearchState { best: None, automorphisms: Vec::new() };
        let colors = self.initial_colors(extra);
        let mut scratch = self.scratch();
        let mut prefix = Vec::new();
        self.descend(colors, &mut prefix, &mut state, &mut scratch);
        state.best.expect("search tree has at least one leaf")
    }

    fn descend(&self, mut colors: Vec<u32>, prefix: &mut Vec<u32>, state: &mut SearchState, s: &mut Scratch) {
        self.refine(&mut colors, s);
        let Some(c) = self.target_color(&colors, s) else {
            let key = self.leaf_key(&colors);
            match &state.best {
                Some(best) if best.key < key => {}
                Some(best) if best.key == key => {
                    let mut at = vec![0u32; self.n];
                    for (v, &p) in best.position.iter().enumerate() {
                        at[p as usize] = v as u32;
                    }
                    let auto: Vec<u32> = colors.iter().map(|&p| at[p as usize]).collect();
                    if auto.iter().enumerate().any(|(i, &x)| i as u32 != x) {
                        state.automorphisms.push(auto);
                    }
                }
                _ => state.best = Some(Leaf { position: colors, key }),
            }
            return;
        };
        let cell: Vec<u32> = (0..self.n as u32).filter(|&v| colors[v as usize] == c).collect();
        let mut tried: Vec<u32> = Vec::new();
        for &w in &cell {
            if !tried.is_empty() && self.equivalent_to_tried(w, &tried, prefix, state) {
                continue;
            }
            let mut child = colors.clone();
            for &x in &cell {
                if x != w {
                    child[x as usize] = c + 1;
                }
            }
            prefix.push(w);
            self.descend(child, prefix, state, s);
            prefix.pop();
            tried.push(w);
        }
    }

    /// Whether some known automorphism fixing `prefix` pointwise links `w` to a tried vertex.
    fn equivalent_to_tried(&self, w: u32, tried: &[u32], prefix: &[u32], state: &SearchState) -> bool {
        let mut gens = state
            .automorphisms
            .iter()
            .filter(|a| prefix.iter().all(|&p| a[p as usize] == p))
            .peekable();
        if gens.peek().is_none() {
            return false;
        }
        let mut parent: Vec<u32> = (0..self.n as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                let up = parent[parent[x as usize] as usize];
                parent[x as usize] = up;
                x = up;
            }
            x
        }
        for a in gens {
            for (v, &img) in a.iter().enumerate() {
                let (x, y) = (find(&mut parent, v as u32), find(&mut parent, img));
                if x != y {
                    parent[x as usize] = y;
                }
            }
        }
        let root = find(&mut parent, w);
        tried.iter().any(|&t| find(&mut parent, t) == root)
    }

    fn materialize(&self, leaf: &Leaf) -> Graph {
        let mut labels = vec![0; self.n];
        for (v, &p) in leaf.position.iter().enumerate() {
            labels[p as usize] = self.g.label(v);
        }
        let base = self.n as u128;
        let mut edges = Vec::with_capacity(leaf.key.len() * self.r);
        let mut digits = vec![0u32; self.r];
        for &code in &leaf.key {
            let mut c = code;
            for d in digits.iter_mut().rev() {
                *d = (c % base) as u32;
                c /= base;
            }
            edges.extend_from_slice(&digits);
        }
        Graph::from_parts_unchecked(self.r, self.n, labels, edges)
    }
}

struct SearchState {
    best: Option<Leaf>,
    automorphisms: Vec<Vec<u32>>,
}

fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn count_cells(colors: &[u32], seen: &mut [u32]) -> usize {
    seen.iter_mut().for_each(|x| *x = 0);
    let mut k = 0;
    for &c in colors {
        if seen[c as usize] == 0 {
            seen[c as usize] = 1;
            k += 1;
        }
    }
    k
}
