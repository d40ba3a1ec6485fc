//! Upward transformations given by template containment, and the operators
//! they induce between graph algebras.
//!
//! A transformation `τ` turns a graph `H` on `η(V)` into a graph on `V`: an
//! r'-set `e ⊆ V` is an edge iff the edge template, placed on `η(e)`, is
//! contained in `H`; a vertex `v` receives the label of the first vertex rule
//! whose template is contained in `H` on `η({v})`, or the default label.
//! The operator sends a graph `G` to the sum of all `H` with `τ(H) = G`.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{alg_equal, merge_counts, nind, product, LinComb, Signature};
use crate::canon::{canonical_form, CanonicalGraph};
use crate::error::{input as invalid, Error, Result};
use crate::functor::{DownwardFunctor, Element};
use crate::graph::{induced, permutations, subsets, Graph, Injection, Label};

/// Default cap on the number of graphs enumerated for a single term.
pub const DEFAULT_BUDGET: u128 = 1 << 20;

/// Largest group of interacting slots whose assignments are enumerated directly.
const MAX_COMPONENT: usize = 28;

/// A vertex receives `label` when `template` (a graph on `η([1])`) is contained.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexRule {
    pub label: Label,
    pub template: Graph,
}

#[derive(Clone, Debug)]
pub struct UpwardTransformation {
    functor: DownwardFunctor,
    /// Graphs on `V`: the operator's argument.
    input: Signature,
    /// Graphs on `η(V)`: the operator's result.
    output: Signature,
    edge_template: Graph,
    vertex_rules: Vec<VertexRule>,
    default_label: Label,
}

fn order_of(eta: &DownwardFunctor, n: usize) -> Result<usize> {
    let size = eta.size(n);
    if size > 64 {
        return Err(Error::Resource(format!("{} has {} elements on {} points", eta, size, n)));
    }
    Ok(size as usize)
}

fn increasing(image: &[u32], target: usize) -> Injection {
    Injection::new(image.to_vec(), target).expect("subsets are injective")
}

/// Image of an injection under `η`, using precomputed element lists.
fn map_elements(source: &[Element], target: &[Element], alpha: &Injection) -> Vec<u32> {
    source
        .iter()
        .map(|x| {
            let y = x.map(alpha);
            target.binary_search(&y).expect("functor image lies in the target set") as u32
        })
        .collect()
}

impl UpwardTransformation {
    /// Validates the rule data and checks that the edge template is invariant
    /// under `η(σ)` for every permutation `σ` of `[r']`, which is what makes
    /// the induced map commute with relabelings.
    pub fn new(
        functor: DownwardFunctor,
        input: Signature,
        output: Signature,
        edge_template: Graph,
        vertex_rules: Vec<VertexRule>,
        default_label: Label,
    ) -> Result<Self> {
        let rp = input.r;
        let edge_order = order_of(&functor, rp)?;
        if edge_template.r() != output.r || edge_template.order() != edge_order {
            return invalid(format!(
                "edge template must be {}-uniform on {} vertices, got {}",
                output.r, edge_order, edge_template
            ));
        }
        let vertex_order = order_of(&functor, 1)?;
        let mut seen = Vec::new();
        for rule in &vertex_rules {
            if rule.template.r() != output.r || rule.template.order() != vertex_order {
                return invalid(format!(
                    "vertex template must be {}-uniform on {} vertices, got {}",
                    output.r, vertex_order, rule.template
                ));
            }
            if rule.label >= input.labels || rule.label == default_label || seen.contains(&rule.label) {
                return invalid(format!("vertex rule label {} is out of range or repeated", rule.label));
            }
            seen.push(rule.label);
        }
        if default_label >= input.labels {
            return invalid(format!("default label {} is out of range", default_label));
        }
        let strip = |g: &Graph| g.with_labels(vec![0; g.order()]).expect("same order");
        let tau = UpwardTransformation {
            edge_template: strip(&edge_template),
            vertex_rules: vertex_rules
                .into_iter()
                .map(|r| VertexRule { label: r.label, template: strip(&r.template) })
                .collect(),
            functor,
            input,
            output,
            default_label,
        };
        let set = tau.functor.apply_set(rp);
        for sigma in permutations(rp) {
            let alpha = Injection::new(sigma, rp).expect("permutation");
            let image = map_elements(&set, &set, &alpha);
            if tau.edge_template.permuted(&image) != tau.edge_template {
                return invalid(format!(
                    "edge template {} is not invariant under the permutation {:?} of the r'-set",
                    tau.edge_template,
                    alpha.image()
                ));
            }
        }
        Ok(tau)
    }

    pub fn functor(&self) -> &DownwardFunctor {
        &self.functor
    }

    pub fn input(&self) -> Signature {
        self.input
    }

    pub fn output(&self) -> Signature {
        self.output
    }

    pub fn edge_template(&self) -> &Graph {
        &self.edge_template
    }

    pub fn vertex_rules(&self) -> &[VertexRule] {
        &self.vertex_rules
    }

    pub fn default_label(&self) -> Label {
        self.default_label
    }

    /// `τ(H)` for a graph `H` on `η([n])`.
    pub fn apply(&self, h: &Graph, n: usize) -> Result<Graph> {
        let size = order_of(&self.functor, n)?;
        if h.order() != size || h.r() != self.output.r {
            return invalid(format!(
                "expected a {}-uniform graph on the {} elements of {} over [{}], got {}",
                self.output.r, size, self.functor, n, h
            ));
        }
        let layout = Layout::new(self, n)?;
        let present = |set: &[u32]| set.iter().all(|&s| h.has_edge(layout.slot(s)));
        let edges: Vec<Vec<u32>> = subsets(n, self.input.r)
            .zip(&layout.edge_sets)
            .filter(|(_, set)| present(set))
            .map(|(e, _)| e)
            .collect();
        let labels = layout
            .rule_sets
            .iter()
            .map(|rules| {
                rules
                    .iter()
                    .position(|set| present(set))
                    .map_or(self.default_label, |i| self.vertex_rules[i].label)
            })
            .collect();
        Graph::new(self.input.r, n, labels, edges)
    }

    /// Exhaustive check that `τ` commutes with every permutation of `[r']`:
    /// `τ(H ∘ η(σ)) = τ(H) ∘ σ` for every graph `H` on `η([r'])`.
    pub fn check_well_defined(&self) -> Result<bool> {
        let rp = self.input.r;
        let size = order_of(&self.functor, rp)?;
        let slots: Vec<Vec<u32>> = subsets(size, self.output.r).collect();
        if slots.len() > 20 {
            return Err(Error::Resource(format!("{} slots on eta([r'])", slots.len())));
        }
        let perms: Vec<Injection> = permutations(rp)
            .into_iter()
            .map(|p| Injection::new(p, rp).expect("permutation"))
            .collect();
        let lifted: Vec<Injection> = perms.iter().map(|s| self.functor.apply_injection(s)).collect();
        for mask in 0..1u32 << slots.len() {
            let edges = slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| s);
            let h = Graph::unlabeled(self.output.r, size, edges)?;
            let t = self.apply(&h, rp)?;
            for (sigma, eta_sigma) in perms.iter().zip(&lifted) {
                if self.apply(&induced(&h, eta_sigma)?, rp)? != induced(&t, sigma)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Slot structure of `η([n])` for one order `n`.
struct Layout {
    size: usize,
    r: usize,
    /// All r-subsets of `η([n])`, flattened, in lexicographic order.
    slots: Vec<u32>,
    /// For each r'-subset of `[n]` (lexicographic), the slots of its template.
    edge_sets: Vec<Vec<u32>>,
    /// For each vertex, the slots of each vertex rule's template.
    rule_sets: Vec<Vec<Vec<u32>>>,
}

impl Layout {
    fn new(tau: &UpwardTransformation, n: usize) -> Result<Self> {
        let eta = &tau.functor;
        let size = order_of(eta, n)?;
        let r = tau.output.r;
        let mut slots = Vec::new();
        let mut index: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
        for (i, s) in subsets(size, r).enumerate() {
            slots.extend_from_slice(&s);
            index.insert(s, i as u32);
        }
        let target = eta.apply_set(n);
        let place = |template: &Graph, image: &[u32]| -> Vec<u32> {
            let mut set: Vec<u32> = template
                .edges()
                .map(|e| {
                    let mut m: Vec<u32> = e.iter().map(|&v| image[v as usize]).collect();
                    m.sort_unstable();
                    index[&m]
                })
                .collect();
            set.sort_unstable();
            set
        };
        let rp = tau.input.r;
        let edge_source = eta.apply_set(rp);
        let edge_sets = subsets(n, rp)
            .map(|e| place(&tau.edge_template, &map_elements(&edge_source, &target, &increasing(&e, n))))
            .collect();
        let vertex_source = eta.apply_set(1);
        let rule_sets = (0..n as u32)
            .map(|v| {
                let image = map_elements(&vertex_source, &target, &increasing(&[v], n));
                tau.vertex_rules.iter().map(|rule| place(&rule.template, &image)).collect()
            })
            .collect();
        Ok(Layout { size, r, slots, edge_sets, rule_sets })
    }

    fn slot_count(&self) -> usize {
        self.slots.len() / self.r
    }

    fn slot(&self, i: u32) -> &[u32] {
        let i = i as usize;
        &self.slots[i * self.r..(i + 1) * self.r]
    }

    fn graph(&self, present: &[bool], labels: Vec<Label>) -> Graph {
        let mut edges = Vec::new();
        for (i, &p) in present.iter().enumerate() {
            if p {
                edges.extend_from_slice(self.slot(i as u32));
            }
        }
        Graph::from_parts_unchecked(self.r, self.size, labels, edges)
    }
}

/// The preimage set of one graph as a product of independent choices.
struct Preimage {
    forced: Vec<bool>,
    /// Interacting groups of free slots with their admissible assignments.
    groups: Vec<(Vec<u32>, Vec<u64>)>,
    /// Free slots not touched by any constraint.
    loose: Vec<u32>,
}

impl Preimage {
    fn structures(&self) -> u128 {
        self.groups
            .iter()
            .fold(1u128 << self.loose.len(), |acc, (_, valid)| acc.saturating_mul(valid.len() as u128))
    }

    fn free_slots(&self) -> usize {
        self.loose.len() + self.groups.iter().map(|(s, _)| s.len()).sum::<usize>()
    }

    fn fill(&self, mut index: u128, present: &mut Vec<bool>) {
        present.clear();
        present.extend_from_slice(&self.forced);
        for (slots, valid) in &self.groups {
            let k = valid.len() as u128;
            let mask = valid[(index % k) as usize];
            index /= k;
            for (b, &s) in slots.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    present[s as usize] = true;
                }
            }
        }
        for &s in &self.loose {
            if index & 1 == 1 {
                present[s as usize] = true;
            }
            index >>= 1;
        }
    }
}

/// `τ` together with an enumeration budget.
#[derive(Clone, Debug)]
pub struct Operator {
    tau: UpwardTransformation,
    budget: u128,
}

impl Operator {
    pub fn new(tau: UpwardTransformation) -> Self {
        Operator { tau, budget: DEFAULT_BUDGET }
    }

    /// The 2-uniform operator on `η = id × const(s)` keeping an edge iff it is
    /// present in all `s` layers, so that `⟦nind(G)⟧ = nind(G)^s`.
    pub fn tensor(s: usize) -> Result<Self> {
        let eta = DownwardFunctor::product(DownwardFunctor::Subsets(1), DownwardFunctor::Const(s));
        let edges: Vec<[u32; 2]> = (0..s as u32).map(|i| [i, s as u32 + i]).collect();
        let template = Graph::unlabeled(2, 2 * s, edges)?;
        let sig = Signature::unlabeled(2);
        Ok(Operator::new(UpwardTransformation::new(eta, sig, sig, template, vec![], 0)?))
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> u128 {
        self.budget
    }

    pub fn transformation(&self) -> &UpwardTransformation {
        &self.tau
    }

    fn check_term(&self, g: &Graph) -> Result<()> {
        if !self.tau.input.admits(g) {
            return Err(Error::Mismatch(format!(
                "{} is not a graph of the operator's domain (r={}, {} labels)",
                g, self.tau.input.r, self.tau.input.labels
            )));
        }
        Ok(())
    }

    /// The constraint system describing `{H : τ(H) = g}`, or `None` if it is empty.
    fn preimage(&self, layout: &Layout, g: &Graph) -> Result<Option<Preimage>> {
        let mut forced = vec![false; layout.slot_count()];
        let mut absent: Vec<&[u32]> = Vec::new();
        for (e, set) in subsets(g.order(), g.r()).zip(&layout.edge_sets) {
            if g.has_edge(&e) {
                set.iter().for_each(|&s| forced[s as usize] = true);
            } else {
                absent.push(set);
            }
        }
        for (v, rules) in layout.rule_sets.iter().enumerate() {
            let label = g.label(v);
            let hit = self.tau.vertex_rules.iter().position(|r| r.label == label);
            if hit.is_none() && label != self.tau.default_label {
                return Ok(None);
            }
            let before = hit.unwrap_or(rules.len());
            absent.extend(rules[..before].iter().map(|s| s.as_slice()));
            if let Some(j) = hit {
                rules[j].iter().for_each(|&s| forced[s as usize] = true);
            }
        }
        let mut reduced: Vec<Vec<u32>> = Vec::new();
        for set in absent {
            let rest: Vec<u32> = set.iter().copied().filter(|&s| !forced[s as usize]).collect();
            if rest.is_empty() {
                return Ok(None);
            }
            reduced.push(rest);
        }
        reduced.sort();
        reduced.dedup();

        let slots = layout.slot_count();
        let mut parent: Vec<u32> = (0..slots as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        let mut constrained = vec![false; slots];
        for set in &reduced {
            for &s in set {
                constrained[s as usize] = true;
                let (a, b) = (find(&mut parent, set[0]), find(&mut parent, s));
                parent[a as usize] = b;
            }
        }
        let mut members: FxHashMap<u32, Vec<u32>> = FxHashMap::default();
        let mut loose = Vec::new();
        for s in 0..slots as u32 {
            if forced[s as usize] {
                continue;
            }
            if constrained[s as usize] {
                members.entry(find(&mut parent, s)).or_default().push(s);
            } else {
                loose.push(s);
            }
        }
        let mut groups: Vec<(Vec<u32>, Vec<u64>)> = Vec::new();
        let mut roots: Vec<u32> = members.keys().copied().collect();
        roots.sort_unstable();
        for root in roots {
            let group = members.remove(&root).expect("root present");
            if group.len() > MAX_COMPONENT {
                return Err(Error::Budget {
                    free_slots: group.len(),
                    completions: 1u128 << group.len(),
                    budget: self.budget,
                });
            }
            let local: Vec<u64> = reduced
                .iter()
                .filter(|set| find(&mut parent, set[0]) == root)
                .map(|set| {
                    set.iter()
                        .map(|s| 1u64 << group.binary_search(s).expect("member of group"))
                        .fold(0, |a, b| a | b)
                })
                .collect();
            let valid: Vec<u64> = (0..1u64 << group.len())
                .filter(|m| local.iter().all(|&c| m & c != c))
                .collect();
            groups.push((group, valid));
        }
        Ok(Some(Preimage { forced, groups, loose }))
    }

    /// Number of graphs enumerated when applying the operator to `g`.
    pub fn completions(&self, g: &Graph) -> Result<u128> {
        self.check_term(g)?;
        let layout = Layout::new(&self.tau, g.order())?;
        let labelings = (self.tau.output.labels as u128).saturating_pow(layout.size as u32);
        Ok(self
            .preimage(&layout, g)?
            .map_or(0, |p| p.structures().saturating_mul(labelings)))
    }

    /// `⟦g⟧` as class counts.
    fn apply_counts(&self, g: &Graph) -> Result<FxHashMap<Graph, u64>> {
        self.check_term(g)?;
        let layout = Layout::new(&self.tau, g.order())?;
        let Some(pre) = self.preimage(&layout, g)? else {
            return Ok(FxHashMap::default());
        };
        let k = self.tau.output.labels;
        let labelings = (k as u128).saturating_pow(layout.size as u32);
        let structures = pre.structures();
        let total = structures.saturating_mul(labelings);
        if total > self.budget {
            return Err(Error::Budget { free_slots: pre.free_slots(), completions: total, budget: self.budget });
        }
        let labels_of = |mut i: u128| -> Vec<Label> {
            (0..layout.size)
                .map(|_| {
                    let l = (i % k as u128) as Label;
                    i /= k as u128;
                    l
                })
                .collect()
        };
        let one = |acc: &mut FxHashMap<Graph, u64>, present: &mut Vec<bool>, i: u128| {
            pre.fill(i % structures, present);
            let h = layout.graph(present, labels_of(i / structures));
            *acc.entry(canonical_form(&h)).or_insert(0) += 1;
        };
        let total = total as u64;
        Ok(if total >= 4096 {
            (0..total)
                .into_par_iter()
                .fold(
                    || (FxHashMap::default(), Vec::new()),
                    |(mut acc, mut present), i| {
                        one(&mut acc, &mut present, i as u128);
                        (acc, present)
                    },
                )
                .map(|(acc, _)| acc)
                .reduce(FxHashMap::default, merge_counts)
        } else {
            let mut acc = FxHashMap::default();
            let mut present = Vec::new();
            for i in 0..total {
                one(&mut acc, &mut present, i as u128);
            }
            acc
        })
    }

    /// `⟦g⟧ = Σ { H : τ(H) = g }`.
    pub fn apply_graph(&self, g: &Graph) -> Result<LinComb> {
        let mut out = LinComb::zero(self.tau.output);
        for (h, n) in self.apply_counts(g)? {
            out.add_term(CanonicalGraph::assume_canonical(h), BigRational::from_integer(BigInt::from(n)));
        }
        Ok(out)
    }

    /// Linear extension of [`Operator::apply_graph`].
    pub fn apply(&self, f: &LinComb) -> Result<LinComb> {
        self.tau.input.expect(&f.signature())?;
        let mut out = LinComb::zero(self.tau.output);
        for (g, c) in f.terms() {
            for (h, n) in self.apply_counts(g)? {
                out.add_term(CanonicalGraph::assume_canonical(h), c * BigRational::from_integer(BigInt::from(n)));
            }
        }
        Ok(out)
    }

    /// The graph on `η(V_g)` consisting of exactly the slots forced by `g`'s
    /// edges and by the first vertex rule at every vertex.
    pub fn forced_graph(&self, g: &Graph) -> Result<Graph> {
        self.check_term(g)?;
        let layout = Layout::new(&self.tau, g.order())?;
        let mut present = vec![false; layout.slot_count()];
        for (e, set) in subsets(g.order(), g.r()).zip(&layout.edge_sets) {
            if g.has_edge(&e) {
                set.iter().for_each(|&s| present[s as usize] = true);
            }
        }
        if !self.tau.vertex_rules.is_empty() {
            for rules in &layout.rule_sets {
                rules[0].iter().for_each(|&s| present[s as usize] = true);
            }
        }
        Ok(layout.graph(&present, vec![0; layout.size]))
    }

    /// `⟦nind(g)⟧`.
    ///
    /// When every constraint `g` imposes is a containment (unlabeled results,
    /// and every vertex of `g` carrying the label of the first vertex rule or,
    /// without rules, the default label), the preimages of all supergraphs of
    /// `g` are exactly the supergraphs of the forced graph, so the result is
    /// `nind` of that graph. Otherwise the sum is enumerated.
    pub fn apply_nind(&self, g: &Graph) -> Result<LinComb> {
        self.check_term(g)?;
        let wanted = self
            .tau
            .vertex_rules
            .first()
            .map_or(self.tau.default_label, |r| r.label);
        if self.tau.output.labels == 1 && g.labels().iter().all(|&l| l == wanted) {
            let forced = self.forced_graph(g)?;
            return nind(&LinComb::graph_in(self.tau.output, &forced)?);
        }
        self.apply(&nind(&LinComb::graph_in(self.tau.input, g)?)?)
    }
}

/// Whether `⟦f·g⟧ = ⟦f⟧·⟦g⟧` in the quotient algebra.
pub fn check_multiplicative(op: &Operator, f: &LinComb, g: &LinComb) -> Result<bool> {
    let left = op.apply(&product(f, g)?)?;
    let right = product(&op.apply(f)?, &op.apply(g)?)?;
    alg_equal(&left, &right)
}
