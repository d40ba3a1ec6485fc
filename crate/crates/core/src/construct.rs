//! Graph constructions: blow-ups, generalized subdivisions, box products,
//! loose and even hypergraph expansions, and the dump-label embedding.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{LinComb, Signature, UniformRep};
use crate::canon::CanonicalGraph;
use crate::error::{input, Error, Result};
use crate::functor::DownwardFunctor;
use crate::graph::{induced_unchecked, permutations, subsets, Graph, Label};
use crate::transform::{Operator, UpwardTransformation, VertexRule};

/// Replaces every vertex by `m` copies; copies of adjacent vertices span
/// complete r-partite edges, copies of one vertex are independent.
pub fn blowup(g: &Graph, m: usize) -> Result<Graph> {
    if m == 0 {
        return input("blow-up factor must be at least 1");
    }
    let r = g.r();
    let mut flat = Vec::new();
    for e in g.edges() {
        for choice in 0..m.pow(r as u32) {
            let mut c = choice;
            for &v in e {
                flat.push(v * m as u32 + (c % m) as u32);
                c /= m;
            }
        }
    }
    Ok(Graph::from_flat(r, g.order() * m, vec![0; g.order() * m], flat))
}

/// Cartesian product: `(u,v) ~ (u',v')` iff `u = u'` and `v ~ v'`, or `v = v'`
/// and `u ~ u'`. Vertex `(u,v)` is numbered `u·v_F + v`.
pub fn box_product(g: &Graph, f: &Graph) -> Result<Graph> {
    if g.r() != 2 || f.r() != 2 {
        return input("box products are defined for 2-uniform graphs");
    }
    let nf = f.order() as u32;
    let mut edges = Vec::new();
    for u in 0..g.order() as u32 {
        for e in f.edges() {
            edges.push([u * nf + e[0], u * nf + e[1]]);
        }
    }
    for e in g.edges() {
        for v in 0..nf {
            edges.push([e[0] * nf + v, e[1] * nf + v]);
        }
    }
    Graph::unlabeled(2, g.order() * f.order(), edges)
}

/// Pads every edge with `r - 2` private vertices. Edge `t` (in sorted order)
/// owns vertices `n + t(r-2) .. n + (t+1)(r-2)`.
pub fn loose_expansion(g: &Graph, r: usize) -> Result<Graph> {
    if g.r() != 2 || r < 3 {
        return input("loose expansions take a 2-uniform graph to uniformity r >= 3");
    }
    let n = g.order();
    let pad = r - 2;
    let edges: Vec<Vec<u32>> = g
        .edges()
        .enumerate()
        .map(|(t, e)| {
            let mut x = e.to_vec();
            x.extend((0..pad).map(|s| (n + t * pad + s) as u32));
            x
        })
        .collect();
    Graph::unlabeled(r, n + g.size() * pad, edges)
}

/// Replaces every vertex by `r/2` copies and every edge `{u,v}` by the
/// r-set of all copies of `u` and `v`.
pub fn even_expansion(g: &Graph, r: usize) -> Result<Graph> {
    if g.r() != 2 || r < 2 || r % 2 == 1 {
        return input("even expansions take a 2-uniform graph to an even uniformity");
    }
    let h = (r / 2) as u32;
    let edges: Vec<Vec<u32>> = g
        .edges()
        .map(|e| (0..h).map(|i| e[0] * h + i).chain((0..h).map(|i| e[1] * h + i)).collect())
        .collect();
    Graph::unlabeled(r, g.order() * h as usize, edges)
}

/// Whether for every permutation `σ` of the sets there is an automorphism of
/// `f` sending the i-th vertex of set `j` to the i-th vertex of set `σ(j)`.
/// Sets must be disjoint and of equal size; a set spanning an edge makes the
/// answer `false`.
pub fn check_symmetry(f: &Graph, sets: &[Vec<u32>]) -> Result<bool> {
    let n = f.order();
    let mut owner = vec![None; n];
    let width = sets.first().map_or(0, |s| s.len());
    for (j, set) in sets.iter().enumerate() {
        if set.len() != width {
            return input("symmetry sets must have equal sizes");
        }
        for &v in set {
            if v as usize >= n {
                return input(format!("vertex {} is not in the graph", v));
            }
            if owner[v as usize].replace(j).is_some() {
                return input(format!("vertex {} lies in two symmetry sets", v));
            }
        }
    }
    for set in sets {
        let mut sorted = set.clone();
        sorted.sort_unstable();
        if induced_unchecked(f, &sorted).size() > 0 {
            return Ok(false);
        }
    }
    for sigma in permutations(sets.len()) {
        let mut partial: Vec<Option<u32>> = vec![None; n];
        for (j, set) in sets.iter().enumerate() {
            for (i, &v) in set.iter().enumerate() {
                partial[v as usize] = Some(sets[sigma[j] as usize][i]);
            }
        }
        if !extends_to_automorphism(f, partial) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Backtracking search for an automorphism of `f` agreeing with `partial`.
fn extends_to_automorphism(f: &Graph, mut partial: Vec<Option<u32>>) -> bool {
    let n = f.order();
    let mut used = vec![false; n];
    for &t in partial.iter().flatten() {
        used[t as usize] = true;
    }
    let consistent = |partial: &[Option<u32>], v: usize| -> bool {
        // every r-set through v whose members are all placed keeps its status
        subsets(n, f.r()).all(|s| {
            if !s.contains(&(v as u32)) {
                return true;
            }
            let mut image = Vec::with_capacity(s.len());
            for &x in &s {
                match partial[x as usize] {
                    Some(y) => image.push(y),
                    None => return true,
                }
            }
            image.sort_unstable();
            f.has_edge(&s) == f.has_edge(&image)
        })
    };
    let fixed: Vec<usize> = (0..n).filter(|&v| partial[v].is_some()).collect();
    for &v in &fixed {
        if f.label(v) != f.label(partial[v].unwrap() as usize) || !consistent(&partial, v) {
            return false;
        }
    }
    let free: Vec<usize> = (0..n).filter(|&v| partial[v].is_none()).collect();
    fn go(
        k: usize,
        free: &[usize],
        f: &Graph,
        partial: &mut Vec<Option<u32>>,
        used: &mut Vec<bool>,
        consistent: &dyn Fn(&[Option<u32>], usize) -> bool,
    ) -> bool {
        let Some(&v) = free.get(k) else { return true };
        for t in 0..f.order() {
            if used[t] || f.label(t) != f.label(v) || f.degree(t as u32) != f.degree(v as u32) {
                continue;
            }
            partial[v] = Some(t as u32);
            used[t] = true;
            if consistent(partial, v) && go(k + 1, free, f, partial, used, consistent) {
                return true;
            }
            partial[v] = None;
            used[t] = false;
        }
        false
    }
    go(0, &free, f, &mut partial, &mut used, &consistent)
}

/// Data of a generalized subdivision: a vertex gadget on `m` vertices and an
/// edge gadget on `r'·m + s'` vertices, where vertices `j·m .. (j+1)·m` form
/// the attachment set `S_j` of the j-th endpoint and the last `s'` vertices are
/// private to the edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubdivisionScheme {
    arity: usize,
    m: usize,
    vertex_gadget: Graph,
    edge_gadget: Graph,
}

impl SubdivisionScheme {
    /// Validates the gadgets: matching uniformities, edgeless attachment sets,
    /// and symmetry of the edge gadget with respect to them.
    pub fn new(vertex_gadget: Graph, edge_gadget: Graph, arity: usize) -> Result<Self> {
        let m = vertex_gadget.order();
        if arity < 2 {
            return input("subdivided graphs must have uniformity at least 2");
        }
        if vertex_gadget.r() != edge_gadget.r() {
            return input("vertex and edge gadgets have different uniformities");
        }
        if edge_gadget.order() < arity * m {
            return input(format!(
                "edge gadget has {} vertices, fewer than {} attachment vertices",
                edge_gadget.order(),
                arity * m
            ));
        }
        let scheme = SubdivisionScheme { arity, m, vertex_gadget, edge_gadget };
        if !check_symmetry(&scheme.edge_gadget, &scheme.attachment_sets())? {
            return input(format!(
                "edge gadget {} is not symmetric with edgeless attachment sets",
                scheme.edge_gadget
            ));
        }
        Ok(scheme)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Uniformity of the gadgets and of subdivided graphs.
    pub fn r(&self) -> usize {
        self.edge_gadget.r()
    }

    /// Size of each attachment set.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of private vertices per edge.
    pub fn extra(&self) -> usize {
        self.edge_gadget.order() - self.arity * self.m
    }

    pub fn vertex_gadget(&self) -> &Graph {
        &self.vertex_gadget
    }

    pub fn edge_gadget(&self) -> &Graph {
        &self.edge_gadget
    }

    pub fn attachment_sets(&self) -> Vec<Vec<u32>> {
        (0..self.arity)
            .map(|j| ((j * self.m) as u32..((j + 1) * self.m) as u32).collect())
            .collect()
    }

    /// `F_v = I_m`, `F_e = K_{m,m}` between the two attachment sets.
    pub fn blowup(m: usize) -> Result<Self> {
        let edges: Vec<[u32; 2]> = (0..m as u32)
            .flat_map(|i| (0..m as u32).map(move |k| [i, m as u32 + k]))
            .collect();
        Self::new(Graph::independent(2, m, 0), Graph::unlabeled(2, 2 * m, edges)?, 2)
    }

    /// Every edge becomes a path with `k` edges.
    pub fn path(k: usize) -> Result<Self> {
        if k == 0 {
            return input("paths need at least one edge");
        }
        let mut chain: Vec<u32> = vec![0];
        chain.extend(2..(k + 1) as u32);
        chain.push(1);
        let edges: Vec<[u32; 2]> = chain.windows(2).map(|w| [w[0], w[1]]).collect();
        Self::new(Graph::independent(2, 1, 0), Graph::unlabeled(2, k + 1, edges)?, 2)
    }

    /// Every edge becomes a triangle through one private vertex.
    pub fn triangle() -> Result<Self> {
        Self::new(Graph::independent(2, 1, 0), Graph::complete(2, 3), 2)
    }

    /// `F_v = K2` and two parallel edges: subdividing gives `G □ K2` when `G`
    /// has no isolated vertices.
    pub fn parallel() -> Result<Self> {
        Self::new(Graph::complete(2, 2), Graph::unlabeled(2, 4, [[0, 2], [1, 3]])?, 2)
    }

    /// `F_v = K2` and two crossing edges.
    pub fn crossing() -> Result<Self> {
        Self::new(Graph::complete(2, 2), Graph::unlabeled(2, 4, [[0, 3], [1, 2]])?, 2)
    }

    /// A single r-edge through `m` copies of each endpoint and `r - 2m`
    /// private vertices.
    pub fn mixed(r: usize, m: usize) -> Result<Self> {
        if m == 0 || 2 * m > r {
            return input(format!("cannot split uniformity {} as 2·{} plus padding", r, m));
        }
        let edge: Vec<u32> = (0..r as u32).collect();
        Self::new(Graph::independent(r, m, 0), Graph::unlabeled(r, r, [edge])?, 2)
    }

    /// The scheme behind [`loose_expansion`].
    pub fn loose(r: usize) -> Result<Self> {
        Self::mixed(r, 1)
    }

    /// The scheme behind [`even_expansion`].
    pub fn even(r: usize) -> Result<Self> {
        if r % 2 == 1 {
            return input("even expansions need an even uniformity");
        }
        Self::mixed(r, r / 2)
    }

    /// The subdivision of `g`. Vertex `(v, i)` is numbered `v·m + i`; the
    /// private vertices of edge `t` (in sorted edge order) follow all blocks.
    /// The j-th smallest endpoint of an edge receives attachment set `S_j`.
    pub fn subdivide(&self, g: &Graph) -> Result<Graph> {
        if g.r() != self.arity {
            return input(format!(
                "scheme subdivides {}-uniform graphs, got uniformity {}",
                self.arity,
                g.r()
            ));
        }
        let (m, extra) = (self.m as u32, self.extra() as u32);
        let base = g.order() as u32 * m;
        let total = base as usize + g.size() * extra as usize;
        let mut flat = Vec::new();
        for v in 0..g.order() as u32 {
            flat.extend(self.vertex_gadget.flat_edges().iter().map(|&x| v * m + x));
        }
        let attach = self.arity as u32 * m;
        for (t, e) in g.edges().enumerate() {
            let place = |x: u32| {
                if x < attach {
                    e[(x / m) as usize] * m + x % m
                } else {
                    base + t as u32 * extra + (x - attach)
                }
            };
            flat.extend(self.edge_gadget.flat_edges().iter().map(|&x| place(x)));
        }
        Ok(Graph::from_flat(self.r(), total, vec![0; total], flat))
    }

    /// `id × const(m) ⊔ η^(r') × const(s')`.
    pub fn functor(&self) -> DownwardFunctor {
        DownwardFunctor::union(
            DownwardFunctor::product(DownwardFunctor::Subsets(1), DownwardFunctor::Const(self.m)),
            DownwardFunctor::product(DownwardFunctor::Subsets(self.arity), DownwardFunctor::Const(self.extra())),
        )
    }

    /// The operator with `⟦nind(G)⟧ = nind(sub(G))` for graphs `G` without
    /// isolated vertices: an r'-set becomes an edge iff the edge gadget, with a
    /// copy of the vertex gadget on every attachment set, is present.
    ///
    /// Fails if the gadget's symmetries move private vertices, since the
    /// functor fixes them.
    pub fn operator(&self) -> Result<Operator> {
        let mut template = self.edge_gadget.flat_edges().to_vec();
        for j in 0..self.arity as u32 {
            template.extend(self.vertex_gadget.flat_edges().iter().map(|&x| j * self.m as u32 + x));
        }
        let n = self.edge_gadget.order();
        let template = Graph::from_flat(self.r(), n, vec![0; n], template);
        let tau = UpwardTransformation::new(
            self.functor(),
            Signature::unlabeled(self.arity),
            Signature::unlabeled(self.r()),
            template,
            vec![],
            0,
        )?;
        Ok(Operator::new(tau))
    }

    /// The operator on graphs labeled `{0, ℓ = 1}` with
    /// `⟦nind(G)↑⟧ = nind(sub(G))` for every `G`: an r'-set becomes an edge iff
    /// the edge gadget is present, and a vertex gets label 0 iff its block
    /// contains the vertex gadget, label `ℓ` otherwise.
    pub fn dump_operator(&self) -> Result<Operator> {
        let tau = UpwardTransformation::new(
            self.functor(),
            Signature::new(self.arity, 2)?,
            Signature::unlabeled(self.r()),
            self.edge_gadget.clone(),
            vec![VertexRule { label: 0, template: self.vertex_gadget.clone() }],
            1,
        )?;
        Ok(Operator::new(tau))
    }
}

impl SubdivisionScheme {
    /// Like [`SubdivisionScheme::new`], but with attachment sets given as
    /// explicit vertex lists of the edge gadget, which is renumbered so the
    /// sets come first in order.
    pub fn with_sets(vertex_gadget: Graph, edge_gadget: Graph, sets: &[Vec<u32>]) -> Result<Self> {
        let n = edge_gadget.order();
        let mut order: Vec<u32> = sets.iter().flatten().copied().collect();
        if order.iter().any(|&v| v as usize >= n) {
            return input("attachment set vertex outside the edge gadget");
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if std::mem::replace(&mut seen[v as usize], true) {
                return input(format!("vertex {} lies in two attachment sets", v));
            }
        }
        if sets.iter().any(|s| s.len() != vertex_gadget.order()) {
            return input(format!("attachment sets must have {} vertices, like the vertex gadget", vertex_gadget.order()));
        }
        order.extend((0..n as u32).filter(|&v| !seen[v as usize]));
        let mut perm = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            perm[old as usize] = new as u32;
        }
        Self::new(vertex_gadget, edge_gadget.permuted(&perm), sets.len())
    }
}

impl fmt::Display for SubdivisionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.vertex_gadget)?;
        writeln!(f, "{}", self.edge_gadget)?;
        for set in self.attachment_sets() {
            let items: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            writeln!(f, "sets={}", items.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for SubdivisionScheme {
    type Err = Error;

    /// Reads the vertex gadget and the edge gadget as two graph lines,
    /// followed by one `sets=<v>,<v>,..` line per attachment set. Blank lines
    /// and lines starting with `#` are skipped.
    fn from_str(s: &str) -> Result<Self> {
        let mut graphs = Vec::new();
        let mut sets = Vec::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            if let Some(list) = line.strip_prefix("sets=") {
                let set = list
                    .split(',')
                    .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("invalid vertex {:?}", x))))
                    .collect::<Result<Vec<u32>>>()?;
                sets.push(set);
            } else {
                graphs.push(line.parse::<Graph>()?);
            }
        }
        let [vertex, edge]: [Graph; 2] = graphs
            .try_into()
            .map_err(|g: Vec<Graph>| Error::Parse(format!("expected two gadget graphs, found {}", g.len())))?;
        Self::with_sets(vertex, edge, &sets)
    }
}

/// A uniform-order combination together with its embedding into the algebra
/// with one extra label `dump`.
#[derive(Clone, Debug)]
pub struct LabeledLift {
    pub source: UniformRep,
    pub lifted: LinComb,
    pub dump: Label,
}

/// The natural embedding into the label set extended by one label, applied
/// term by term to whatever representative is given.
pub fn embed_labels(f: &LinComb) -> LinComb {
    let sig = f.signature();
    let wider = Signature { r: sig.r, labels: sig.labels + 1 };
    let mut out = LinComb::zero(wider);
    for (g, c) in f.terms() {
        out.add_term(CanonicalGraph::of(g), c.clone());
    }
    out
}

/// Embeds a uniform-order representative into the algebra with a dump label.
/// Positive elements stay positive this way, which fails for mixed orders.
pub fn lift_labels(f: &LinComb) -> Result<LabeledLift> {
    let Some(order) = f.uniform_order().or(f.is_zero().then_some(0)) else {
        return Err(Error::Input(
            "the dump-label embedding needs a representative of uniform order".into(),
        ));
    };
    Ok(LabeledLift {
        source: UniformRep::new(f.clone(), order)?,
        lifted: embed_labels(f),
        dump: f.label_count(),
    })
}

/// The subgraph induced by the vertices not labeled `dump`.
pub fn drop_labels(h: &Graph, dump: Label) -> Graph {
    let keep: Vec<u32> = (0..h.order() as u32).filter(|&v| h.label(v as usize) != dump).collect();
    induced_unchecked(h, &keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{alg_equal, frac, nind, rat};
    use crate::canon::is_isomorphic;
    use crate::density::inj_density;

    fn q3() -> Graph {
        Graph::unlabeled(
            2,
            8,
            [[0, 1], [1, 3], [3, 2], [2, 0], [4, 5], [5, 7], [7, 6], [6, 4], [0, 4], [1, 5], [2, 6], [3, 7]],
        )
        .unwrap()
    }

    #[test]
    fn blowups() {
        let k2 = Graph::complete(2, 2);
        assert!(is_isomorphic(&blowup(&k2, 2).unwrap(), &Graph::cycle(4)));
        let c5 = Graph::cycle(5);
        assert_eq!(blowup(&c5, 1).unwrap(), c5);
        let b = blowup(&Graph::path(2), 2).unwrap();
        assert_eq!((b.order(), b.size()), (6, 8));
        assert!(blowup(&k2, 0).is_err());
        assert_eq!(blowup(&Graph::complete(3, 3), 2).unwrap().size(), 8);
    }

    #[test]
    fn box_products() {
        let k2 = Graph::complete(2, 2);
        assert!(is_isomorphic(&box_product(&k2, &k2).unwrap(), &Graph::cycle(4)));
        let cube = box_product(&Graph::cycle(4), &k2).unwrap();
        assert_eq!((cube.order(), cube.size()), (8, 12));
        assert!(is_isomorphic(&cube, &q3()));
    }

    #[test]
    fn expansions() {
        let k2 = Graph::complete(2, 2);
        assert_eq!(loose_expansion(&k2, 3).unwrap(), Graph::complete(3, 3));
        let lp = loose_expansion(&Graph::path(2), 3).unwrap();
        assert_eq!((lp.order(), lp.size()), (5, 2));
        let e: Vec<&[u32]> = lp.edges().collect();
        assert_eq!(e[0].iter().filter(|v| e[1].contains(v)).count(), 1);
        let lt = loose_expansion(&Graph::cycle(3), 3).unwrap();
        assert_eq!((lt.order(), lt.size()), (6, 3));
        assert!(loose_expansion(&k2, 2).is_err());
        assert_eq!(even_expansion(&k2, 4).unwrap(), Graph::complete(4, 4));
        assert_eq!(even_expansion(&k2, 2).unwrap(), k2);
        let ep = even_expansion(&Graph::path(2), 4).unwrap();
        let e: Vec<&[u32]> = ep.edges().collect();
        assert_eq!((ep.order(), e.len()), (6, 2));
        assert_eq!(e[0].iter().filter(|v| e[1].contains(v)).count(), 2);
        assert!(even_expansion(&k2, 3).is_err());
    }

    #[test]
    fn symmetry_of_gadgets() {
        let crossing = Graph::unlabeled(2, 4, [[0, 3], [1, 2]]).unwrap();
        assert!(check_symmetry(&crossing, &[vec![0, 1], vec![2, 3]]).unwrap());
        let parallel = Graph::unlabeled(2, 4, [[0, 2], [1, 3]]).unwrap();
        assert!(check_symmetry(&parallel, &[vec![0, 1], vec![2, 3]]).unwrap());
        let pendant = Graph::unlabeled(2, 3, [[0, 2]]).unwrap();
        assert!(!check_symmetry(&pendant, &[vec![0], vec![1]]).unwrap());
        assert!(check_symmetry(&parallel, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(!check_symmetry(&Graph::complete(2, 4), &[vec![0, 1], vec![2, 3]]).unwrap());
    }

    #[test]
    fn invalid_gadgets_are_rejected() {
        assert!(SubdivisionScheme::new(Graph::independent(2, 1, 0), Graph::unlabeled(2, 3, [[0, 2]]).unwrap(), 2).is_err());
        assert!(SubdivisionScheme::new(Graph::independent(2, 2, 0), Graph::complete(2, 4), 2).is_err());
    }

    #[test]
    fn classical_subdivisions() {
        let p2 = SubdivisionScheme::path(2).unwrap();
        assert!(is_isomorphic(&p2.subdivide(&Graph::cycle(3)).unwrap(), &Graph::cycle(6)));
        assert!(is_isomorphic(&p2.subdivide(&Graph::cycle(4)).unwrap(), &Graph::cycle(8)));
        let p3 = SubdivisionScheme::path(3).unwrap();
        assert!(is_isomorphic(&p3.subdivide(&Graph::cycle(6)).unwrap(), &Graph::cycle(18)));
        let k3 = SubdivisionScheme::triangle().unwrap();
        assert!(is_isomorphic(&k3.subdivide(&Graph::complete(2, 2)).unwrap(), &Graph::complete(2, 3)));
        let b = SubdivisionScheme::blowup(2).unwrap();
        assert!(is_isomorphic(&b.subdivide(&Graph::complete(2, 2)).unwrap(), &Graph::cycle(4)));
        assert!(b.subdivide(&Graph::complete(3, 3)).is_err());
    }

    #[test]
    fn gadget_subdivisions_match_direct_constructions() {
        let par = SubdivisionScheme::parallel().unwrap();
        let k2 = Graph::complete(2, 2);
        for g in [k2.clone(), Graph::path(2), Graph::cycle(4), Graph::cycle(5)] {
            let sub = par.subdivide(&g).unwrap();
            assert!(is_isomorphic(&sub, &box_product(&g, &k2).unwrap()), "{}", g);
            assert_eq!(sub.size(), 2 * g.size() + g.order());
        }
        let m5 = SubdivisionScheme::crossing().unwrap().subdivide(&Graph::cycle(5)).unwrap();
        assert_eq!((m5.order(), m5.size()), (10, 15));
        assert!((0..10).all(|v| m5.degree(v) == 3));
        for r in 3..=5 {
            let loose = SubdivisionScheme::loose(r).unwrap();
            for g in [k2.clone(), Graph::path(2), Graph::cycle(3)] {
                assert_eq!(loose.subdivide(&g).unwrap(), loose_expansion(&g, r).unwrap());
            }
        }
        let even = SubdivisionScheme::even(4).unwrap();
        assert!(is_isomorphic(&even.subdivide(&Graph::path(3)).unwrap(), &even_expansion(&Graph::path(3), 4).unwrap()));
    }

    #[test]
    fn scheme_operator_swaps_with_nind() {
        let scheme = SubdivisionScheme::path(2).unwrap();
        let op = scheme.operator().unwrap();
        let g = Graph::path(2);
        let left = op.apply(&nind(&LinComb::graph(&g)).unwrap()).unwrap();
        let right = nind(&LinComb::graph(&scheme.subdivide(&g).unwrap())).unwrap();
        assert!(alg_equal(&left, &right).unwrap());
        assert!(op.transformation().check_well_defined().unwrap());
    }

    #[test]
    fn long_paths_have_no_fixed_template() {
        // The reversal of the private vertices is needed for symmetry, but the
        // functor fixes them.
        assert!(SubdivisionScheme::path(3).unwrap().operator().is_err());
    }

    #[test]
    fn scheme_text_round_trips() {
        for scheme in [SubdivisionScheme::crossing().unwrap(), SubdivisionScheme::path(3).unwrap(), SubdivisionScheme::loose(4).unwrap()] {
            let text = scheme.to_string();
            assert_eq!(text.parse::<SubdivisionScheme>().unwrap(), scheme);
        }
        let text = "# parallel edges, listed out of order\ngraph{r=2;n=2;l=;e=(0 1)}\ngraph{r=2;n=4;l=;e=(0 1)(2 3)}\nsets=0,2\nsets=1,3\n";
        assert_eq!(text.parse::<SubdivisionScheme>().unwrap(), SubdivisionScheme::parallel().unwrap());
        assert!("graph{r=2;n=1;l=;e=}\nsets=0\n".parse::<SubdivisionScheme>().is_err());
        assert!("graph{r=2;n=1;l=;e=}\ngraph{r=2;n=2;l=;e=(0 1)}\nsets=0\nsets=0\n".parse::<SubdivisionScheme>().is_err());
    }

    #[test]
    fn dump_labels() {
        let k2 = LinComb::graph(&Graph::complete(2, 2));
        let lifted = lift_labels(&k2).unwrap();
        assert_eq!(lifted.dump, 1);
        assert_eq!(lifted.lifted.label_count(), 2);
        assert_eq!(lifted.lifted.coefficient(&Graph::complete(2, 2)), rat(1));
        let mixed = LinComb::graph(&Graph::complete(2, 3)).add_constant(&frac(-1, 4));
        assert!(lift_labels(&mixed).is_err());

        let h = Graph::new(2, 4, vec![1, 0, 1, 0], [[0u32, 1], [1, 3], [2, 3]]).unwrap();
        assert_eq!(drop_labels(&h, 1), Graph::complete(2, 2));
        assert_eq!(drop_labels(&Graph::independent(2, 3, 1), 1), Graph::empty(2));
        let g = Graph::path(3);
        assert_eq!(drop_labels(&g, 1), g);
    }

    #[test]
    fn dropping_the_dump_label_keeps_injection_counts() {
        // Injections of an unlabeled graph avoid dump vertices, so the count in
        // H equals the count in H with those vertices removed.
        let h = Graph::new(2, 6, vec![0, 1, 0, 0, 1, 0], [[0u32, 2], [2, 3], [0, 1], [3, 5], [4, 5], [1, 4]]).unwrap();
        let low = drop_labels(&h, 1);
        for g in [Graph::complete(2, 2), Graph::path(2), Graph::independent(2, 2, 0)] {
            let falling = |n: i64, k: i64| (0..k).map(|i| n - i).product::<i64>();
            let count_h = inj_density(&g, &h).unwrap().into_inner() * rat(falling(6, g.order() as i64));
            let count_low = inj_density(&g, &low).unwrap().into_inner() * rat(falling(4, g.order() as i64));
            assert_eq!(count_h, count_low);
        }
    }
}
