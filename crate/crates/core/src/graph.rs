//! Concrete labeled r-uniform hypergraphs on dense vertex sets `0..n`.
//!
//! A [`Graph`] stores its edges as strictly increasing `r`-tuples, sorted
//! lexicographically and deduplicated, so two graphs on the same vertex set
//! are equal exactly when their derived `Eq` says so. Isomorphism classes are
//! handled by [`crate::canon`].

use std::fmt;
use std::str::FromStr;

use crate::error::{input, Error, Result};

/// Vertex label drawn from a label set `{0, .., k-1}`.
pub type Label = u32;

/// An r-uniform vertex-labeled hypergraph on vertices `0..n`.
///
/// Field order matters: the derived `Ord` compares uniformity, order, the
/// label sequence and then the sorted edge list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    r: usize,
    n: usize,
    labels: Vec<Label>,
    /// Flattened edge list, `r` entries per edge.
    edges: Vec<u32>,
}

impl Graph {
    /// Builds a graph, normalizing the orientation and order of the edges.
    ///
    /// An empty `labels` vector means every vertex carries label 0.
    pub fn new<E, I>(r: usize, n: usize, labels: Vec<Label>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[u32]>,
    {
        if r == 0 {
            return input("uniformity must be positive");
        }
        let labels = if labels.is_empty() { vec![0; n] } else { labels };
        if labels.len() != n {
            return input(format!("{} labels given for {} vertices", labels.len(), n));
        }
        let mut list: Vec<Vec<u32>> = Vec::new();
        for e in edges {
            let mut e = e.as_ref().to_vec();
            if e.len() != r {
                return input(format!("edge {:?} does not have {} vertices", e, r));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return input(format!("edge {:?} repeats a vertex", e));
            }
            if e.iter().any(|&v| v as usize >= n) {
                return input(format!("edge {:?} leaves the vertex set 0..{}", e, n));
            }
            list.push(e);
        }
        list.sort_unstable();
        list.dedup();
        Ok(Graph {
            r,
            n,
            labels,
            edges: list.concat(),
        })
    }

    /// Unlabeled graph (all labels 0).
    pub fn unlabeled<E, I>(r: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[u32]>,
    {
        Self::new(r, n, Vec::new(), edges)
    }

    /// Assembles a graph from parts already in normal form.
    pub(crate) fn from_parts_unchecked(r: usize, n: usize, labels: Vec<Label>, edges: Vec<u32>) -> Self {
        debug_assert_eq!(labels.len(), n);
        debug_assert_eq!(edges.len() % r, 0);
        debug_assert!(edges.chunks_exact(r).all(|e| e.windows(2).all(|w| w[0] < w[1])));
        debug_assert!(edges
            .chunks_exact(r)
            .zip(edges.chunks_exact(r).skip(1))
            .all(|(a, b)| a < b));
        Graph { r, n, labels, edges }
    }

    /// Assembles a graph from a flat edge list whose edges may be unsorted.
    pub(crate) fn from_flat(r: usize, n: usize, labels: Vec<Label>, mut flat: Vec<u32>) -> Self {
        for e in flat.chunks_exact_mut(r) {
            e.sort_unstable();
        }
        let mut list: Vec<&[u32]> = flat.chunks_exact(r).collect();
        list.sort_unstable();
        list.dedup();
        let edges = list.concat();
        Self::from_parts_unchecked(r, n, labels, edges)
    }

    /// The empty graph with no vertices.
    pub fn empty(r: usize) -> Self {
        Graph { r, n: 0, labels: Vec::new(), edges: Vec::new() }
    }

    /// `n` isolated vertices carrying the given label.
    pub fn independent(r: usize, n: usize, label: Label) -> Self {
        Graph { r, n, labels: vec![label; n], edges: Vec::new() }
    }

    /// Complete r-uniform graph on `n` unlabeled vertices.
    pub fn complete(r: usize, n: usize) -> Self {
        let edges: Vec<u32> = subsets(n, r).flatten().collect();
        Graph { r, n, labels: vec![0; n], edges }
    }

    /// Path with `k` edges (so `k + 1` vertices), 2-uniform.
    pub fn path(k: usize) -> Self {
        let edges: Vec<[u32; 2]> = (0..k as u32).map(|i| [i, i + 1]).collect();
        Self::unlabeled(2, k + 1, edges).expect("path is well formed")
    }

    /// Cycle of length `k >= 3`, 2-uniform.
    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3, "cycles need at least three vertices");
        let k32 = k as u32;
        let edges: Vec<[u32; 2]> = (0..k32).map(|i| [i, (i + 1) % k32]).collect();
        Self::unlabeled(2, k, edges).expect("cycle is well formed")
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a as u32 {
            for v in a as u32..(a + b) as u32 {
                edges.push([u, v]);
            }
        }
        Self::unlabeled(2, a + b, edges).expect("complete bipartite graph is well formed")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len() / self.r
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Label {
        self.labels[v]
    }

    /// Largest label plus one (1 for graphs without vertices).
    pub fn label_bound(&self) -> u32 {
        self.labels.iter().max().map_or(1, |&l| l + 1)
    }

    pub fn edges(&self) -> std::slice::ChunksExact<'_, u32> {
        self.edges.chunks_exact(self.r)
    }

    pub(crate) fn flat_edges(&self) -> &[u32] {
        &self.edges
    }

    /// Membership test for a strictly increasing `r`-tuple.
    pub fn has_edge(&self, e: &[u32]) -> bool {
        debug_assert_eq!(e.len(), self.r);
        let m = self.size();
        let (mut lo, mut hi) = (0, m);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let c = &self.edges[mid * self.r..(mid + 1) * self.r];
            match c.cmp(e) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges().filter(|e| e.contains(&v)).count()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        let mut seen = vec![false; self.n];
        for &v in &self.edges {
            seen[v as usize] = true;
        }
        seen.iter().any(|s| !s)
    }

    /// Copy of the graph with every label replaced through `f`.
    pub fn relabeled(&self, f: impl Fn(Label) -> Label) -> Graph {
        Graph {
            labels: self.labels.iter().map(|&l| f(l)).collect(),
            ..self.clone()
        }
    }

    /// The same edges with a new label sequence.
    pub fn with_labels(&self, labels: Vec<Label>) -> Result<Graph> {
        if labels.len() != self.n {
            return input(format!("{} labels given for {} vertices", labels.len(), self.n));
        }
        Ok(Graph { labels, ..self.clone() })
    }

    /// The graph obtained by renaming vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[u32]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut labels = vec![0; self.n];
        for (v, &p) in perm.iter().enumerate() {
            labels[p as usize] = self.labels[v];
        }
        let mut list: Vec<Vec<u32>> = self
            .edges()
            .map(|e| {
                let mut m: Vec<u32> = e.iter().map(|&v| perm[v as usize]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        list.sort_unstable();
        Graph { r: self.r, n: self.n, labels, edges: list.concat() }
    }

    /// Disjoint union, with `other`'s vertices shifted past this graph's.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        if self.r != other.r {
            return Err(Error::Mismatch(format!("uniformities {} and {}", self.r, other.r)));
        }
        let shift = self.n as u32;
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&v| v + shift));
        Ok(Graph { r: self.r, n: self.n + other.n, labels, edges })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Injective map `0..m -> 0..n`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Injection {
    target: usize,
    image: Vec<u32>,
}

impl Injection {
    pub fn new(image: Vec<u32>, target: usize) -> Result<Self> {
        let mut seen = vec![false; target];
        for &x in &image {
            let x = x as usize;
            if x >= target {
                return input(format!("image entry {} outside 0..{}", x, target));
            }
            if std::mem::replace(&mut seen[x], true) {
                return input(format!("image entry {} repeated", x));
            }
        }
        Ok(Injection { target, image })
    }

    pub fn identity(n: usize) -> Self {
        Injection { target: n, image: (0..n as u32).collect() }
    }

    pub fn source(&self) -> usize {
        self.image.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.image[i as usize]
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Injection) -> Result<Injection> {
        if inner.target != self.source() {
            return input(format!(
                "cannot compose: inner target {} differs from outer source {}",
                inner.target,
                self.source()
            ));
        }
        Ok(Injection {
            target: self.target,
            image: inner.image.iter().map(|&i| self.image[i as usize]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.image.len() && self.image.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }
}

/// Subgraph of `g` induced along `alpha`: vertex `i` of the result is `alpha(i)`.
pub fn induced(g: &Graph, alpha: &Injection) -> Result<Graph> {
    if alpha.target() != g.order() {
        return input(format!(
            "injection targets {} vertices but the graph has {}",
            alpha.target(),
            g.order()
        ));
    }
    Ok(induced_unchecked(g, alpha.image()))
}

/// Induced subgraph along an image sequence known to be a valid injection into `g`.
pub(crate) fn induced_unchecked(g: &Graph, image: &[u32]) -> Graph {
    let mut preimage = vec![u32::MAX; g.order()];
    for (i, &x) in image.iter().enumerate() {
        preimage[x as usize] = i as u32;
    }
    let r = g.r();
    let mut list: Vec<u32> = Vec::new();
    let mut buf = vec![0u32; r];
    let mut count = 0;
    'edges: for e in g.edges() {
        for (slot, &v) in buf.iter_mut().zip(e) {
            let p = preimage[v as usize];
            if p == u32::MAX {
                continue 'edges;
            }
            *slot = p;
        }
        buf.sort_unstable();
        list.extend_from_slice(&buf);
        count += 1;
    }
    if count > 1 {
        let mut chunks: Vec<&[u32]> = list.chunks_exact(r).collect();
        chunks.sort_unstable();
        list = chunks.concat();
    }
    let labels = image.iter().map(|&x| g.label(x as usize)).collect();
    Graph::from_parts_unchecked(r, image.len(), labels, list)
}

/// `f ⊆ g`: same vertex set, same labels, and every edge of `f` is an edge of `g`.
pub fn contains(f: &Graph, g: &Graph) -> bool {
    f.r == g.r && f.n == g.n && f.labels == g.labels && f.edges().all(|e| g.has_edge(e))
}

/// Complement with respect to all r-subsets; labels are kept.
pub fn complement(g: &Graph) -> Graph {
    let edges: Vec<u32> = subsets(g.order(), g.r())
        .filter(|s| !g.has_edge(s))
        .flatten()
        .collect();
    Graph::from_parts_unchecked(g.r, g.n, g.labels.clone(), edges)
}

/// All `k`-subsets of `0..n` as strictly increasing vectors, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<u32>> {
    let mut cur: Option<Vec<u32>> = if k <= n { Some((0..k as u32).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if (c[i] as usize) < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn permutations(k: usize) -> Vec<Vec<u32>> {
    let mut p: Vec<u32> = (0..k as u32).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Binomial coefficient as `u128`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph{{r={};n={};l=", self.r, self.n)?;
        if self.labels.iter().any(|&l| l != 0) {
            for (i, l) in self.labels.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", l)?;
            }
        }
        f.write_str(";e=")?;
        for e in self.edges() {
            f.write_str("(")?;
            for (i, v) in e.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", v)?;
            }
            f.write_str(")")?;
        }
        f.write_str("}")
    }
}

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

fn parse_uint(s: &str, what: &str) -> Result<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return parse_err(format!("{} is not a non-negative integer: {:?}", what, s));
    }
    s.parse::<u32>().map_err(|e| Error::Parse(format!("{}: {}", what, e)))
}

impl FromStr for Graph {
    type Err = Error;

    /// Parses `graph{r=<int>;n=<int>;l=<labels>;e=(..)(..)}`.
    ///
    /// The grammar is strict: edge entries must be strictly increasing and
    /// the edge list sorted without repeats, as the printer emits it.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix("graph{")
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected graph{{...}}, got {:?}", s)))?;
        let mut parts = body.splitn(4, ';');
        let mut field = |key: &str| -> Result<&str> {
            let p = parts.next().ok_or_else(|| Error::Parse(format!("missing field {}", key)))?;
            p.strip_prefix(key)
                .and_then(|p| p.strip_prefix('='))
                .ok_or_else(|| Error::Parse(format!("expected {}=..., got {:?}", key, p)))
        };
        let r = parse_uint(field("r")?, "r")? as usize;
        let n = parse_uint(field("n")?, "n")? as usize;
        let l = field("l")?;
        let e = field("e")?;
        if r == 0 {
            return parse_err("uniformity must be positive");
        }
        let labels: Vec<Label> = if l.is_empty() {
            vec![0; n]
        } else {
            let ls = l
                .split(',')
                .map(|x| parse_uint(x, "label"))
                .collect::<Result<Vec<_>>>()?;
            if ls.len() != n {
                return parse_err(format!("{} labels for {} vertices", ls.len(), n));
            }
            ls
        };
        let mut flat: Vec<u32> = Vec::new();
        let mut rest = e;
        let mut prev: Option<Vec<u32>> = None;
        while !rest.is_empty() {
            let inner_end = rest
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unterminated edge in {:?}", e)))?;
            let inner = rest[..inner_end]
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {:?}", rest)))?;
            let verts = inner
                .split(' ')
                .map(|x| parse_uint(x, "vertex"))
                .collect::<Result<Vec<_>>>()?;
            if verts.len() != r {
                return parse_err(format!("edge ({}) does not have {} entries", inner, r));
            }
            if verts.windows(2).any(|w| w[0] >= w[1]) {
                return parse_err(format!("edge ({}) is not strictly increasing", inner));
            }
            if verts.iter().any(|&v| v as usize >= n) {
                return parse_err(format!("edge ({}) leaves the vertex set 0..{}", inner, n));
            }
            if let Some(p) = &prev {
                if *p >= verts {
                    return parse_err(format!("edges not sorted at ({})", inner));
                }
            }
            flat.extend_from_slice(&verts);
            prev = Some(verts);
            rest = &rest[inner_end + 1..];
        }
        Ok(Graph::from_parts_unchecked(r, n, labels, flat))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> Graph {
        Graph::path(2)
    }

    #[test]
    fn induced_identity_is_identity() {
        let k3 = Graph::complete(2, 3);
        assert_eq!(induced(&k3, &Injection::identity(3)).unwrap(), k3);
    }

    #[test]
    fn induced_on_path_endpoints_is_edgeless() {
        let alpha = Injection::new(vec![0, 2], 3).unwrap();
        assert_eq!(induced(&p2(), &alpha).unwrap(), Graph::independent(2, 2, 0));
    }

    #[test]
    fn induced_rejects_wrong_target() {
        let alpha = Injection::new(vec![0, 1], 4).unwrap();
        assert!(matches!(induced(&p2(), &alpha), Err(Error::Input(_))));
    }

    #[test]
    fn injection_validation() {
        assert!(Injection::new(vec![0, 0], 2).is_err());
        assert!(Injection::new(vec![3], 3).is_err());
        assert!(Injection::new(vec![2, 0], 3).is_ok());
    }

    #[test]
    fn containment() {
        let k3 = Graph::complete(2, 3);
        assert!(contains(&p2(), &k3));
        assert!(!contains(&k3, &p2()));
        assert!(contains(&k3, &k3));
        let relabeled = p2().with_labels(vec![0, 1, 0]).unwrap();
        assert!(!contains(&relabeled, &k3));
    }

    #[test]
    fn complements() {
        let i3 = Graph::independent(2, 3, 0);
        assert_eq!(complement(&i3), Graph::complete(2, 3));
        let pc = complement(&p2());
        assert_eq!(pc.size(), 1);
        assert!(pc.has_edge(&[0, 2]));
        assert_eq!(complement(&pc), p2());
        let h = Graph::unlabeled(3, 5, [[0, 1, 2], [1, 3, 4]]).unwrap();
        assert_eq!(complement(&complement(&h)), h);
        assert_eq!(complement(&h).size(), 8);
    }

    #[test]
    fn new_normalizes_and_validates() {
        let g = Graph::unlabeled(2, 3, [[2, 1], [1, 0], [0, 1]]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![&[0, 1][..], &[1, 2][..]]);
        assert!(Graph::unlabeled(2, 2, [[0, 0]]).is_err());
        assert!(Graph::unlabeled(2, 2, [[0, 2]]).is_err());
        assert!(Graph::unlabeled(3, 3, [[0, 1]]).is_err());
        assert!(Graph::new(2, 2, vec![0], Vec::<[u32; 2]>::new()).is_err());
        // fewer vertices than the uniformity: valid, necessarily edgeless
        assert_eq!(Graph::complete(3, 2).size(), 0);
    }

    #[test]
    fn text_format_matches_grammar() {
        let c4 = Graph::cycle(4);
        assert_eq!(c4.to_string(), "graph{r=2;n=4;l=;e=(0 1)(0 3)(1 2)(2 3)}");
        assert_eq!("graph{r=2;n=4;l=;e=(0 1)(0 3)(1 2)(2 3)}".parse::<Graph>().unwrap(), c4);
        let lab = Graph::new(3, 4, vec![0, 1, 1, 0], [[0, 2, 3]]).unwrap();
        assert_eq!(lab.to_string(), "graph{r=3;n=4;l=0,1,1,0;e=(0 2 3)}");
        assert_eq!(lab.to_string().parse::<Graph>().unwrap(), lab);
        assert_eq!(Graph::empty(2).to_string(), "graph{r=2;n=0;l=;e=}");
    }

    #[test]
    fn text_format_rejects_noncanonical_input() {
        for bad in [
            "graph{r=2;n=3;l=;e=(1 0)}",
            "graph{r=2;n=3;l=;e=(1 2)(0 1)}",
            "graph{r=2;n=3;l=;e=(0 1)(0 1)}",
            "graph{r=2;n=3;l=0,0;e=}",
            "graph{r=2;n=2;l=;e=(0 2)}",
            "graph{r=0;n=2;l=;e=}",
            "graph{r=2;n=2;l=;e=(0 1}",
            "grph{r=2;n=2;l=;e=}",
        ] {
            assert!(bad.parse::<Graph>().is_err(), "{} should be rejected", bad);
        }
    }

    #[test]
    fn subsets_are_lexicographic() {
        let s: Vec<Vec<u32>> = subsets(4, 2).collect();
        assert_eq!(s, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(3, 0).count(), 1);
        assert_eq!(subsets(2, 3).count(), 0);
        assert_eq!(subsets(7, 3).count() as u128, binomial(7, 3));
    }

    #[test]
    fn injection_composition() {
        let a = Injection::new(vec![2, 0], 3).unwrap();
        let b = Injection::new(vec![1, 3, 0], 4).unwrap();
        let ba = b.compose(&a).unwrap();
        assert_eq!(ba.image(), &[0, 1]);
        assert!(a.compose(&b).is_err());
    }
}
