//! Scripted checks of the identities behind the subdivision, box-product,
//! hypergraph and tensor-power arguments, plus the Möbius ladder bound.
//!
//! Identities are checked exactly. Inequalities are only checked for
//! consistency at quasi-random points, where the chains collapse to equalities.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{alg_equal, eval_quasirandom, eval_with_labels, frac, lift, nind, product, rat, LinComb, Signature};
use crate::canon::is_isomorphic;
use crate::construct::{box_product, embed_labels, even_expansion, lift_labels, loose_expansion, SubdivisionScheme};
use crate::error::{input, Error, Result};
use crate::graph::{complement, Graph};
use crate::transform::{check_multiplicative, Operator};

/// Default quasi-random sample points.
pub fn default_samples() -> Vec<BigRational> {
    vec![frac(1, 4), frac(1, 2), frac(3, 4), rat(1)]
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckKind {
    ExactIdentity,
    /// An inequality evaluated where it must hold with equality; never a proof.
    EvaluationConsistency,
    ConstructionEquality,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::ExactIdentity => "exact-identity",
            CheckKind::EvaluationConsistency => "evaluation-consistency",
            CheckKind::ConstructionEquality => "construction-equality",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Step {
    pub description: String,
    /// Name of the identity or construction the step belongs to.
    pub anchor: &'static str,
    pub kind: CheckKind,
    pub passed: bool,
    pub witness: String,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub theorem: String,
    pub steps: Vec<Step>,
    /// Conclusions taken as given rather than checked.
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl TheoremReport {
    fn new(theorem: impl Into<String>) -> Self {
        TheoremReport { theorem: theorem.into(), steps: Vec::new(), notes: Vec::new(), elapsed: Duration::ZERO }
    }

    fn step(&mut self, anchor: &'static str, kind: CheckKind, description: impl Into<String>, passed: bool, witness: impl Into<String>) {
        self.steps.push(Step { description: description.into(), anchor, kind, passed, witness: witness.into() });
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.passed)
    }

    /// One `step<TAB>kind<TAB>pass|fail<TAB>witness` line per step. Contains
    /// no timing, so equal inputs give byte-identical output.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let clean = |t: &str| t.replace(['\t', '\n'], " ");
            let _ = writeln!(
                out,
                "{}: {}\t{}\t{}\t{}",
                s.anchor,
                clean(&s.description),
                s.kind,
                if s.passed { "pass" } else { "fail" },
                clean(&s.witness)
            );
        }
        out
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{}\n", self.theorem);
        for s in &self.steps {
            let _ = writeln!(
                out,
                "  [{}] {} ({}): {}\n         {}",
                if s.passed { "pass" } else { "FAIL" },
                s.description,
                s.kind,
                s.anchor,
                s.witness
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {}", n);
        }
        let _ = writeln!(
            out,
            "verdict: {} ({} steps, {:.3}s)",
            if self.passed() { "pass" } else { "fail" },
            self.steps.len(),
            self.elapsed.as_secs_f64()
        );
        out
    }
}

fn timed(f: impl FnOnce(&mut TheoremReport) -> Result<()>, theorem: String) -> Result<TheoremReport> {
    let start = Instant::now();
    let mut report = TheoremReport::new(theorem);
    f(&mut report)?;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// `op(f)` by enumeration, or `None` if that exceeds the budget.
fn enumerate(op: &Operator, f: &LinComb) -> Result<Option<LinComb>> {
    match op.apply(f) {
        Ok(x) => Ok(Some(x)),
        Err(Error::Budget { .. }) | Err(Error::Resource(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Whether every term of `f` stays within the operator's budget.
fn affordable(op: &Operator, f: &LinComb) -> Result<bool> {
    for (h, _) in f.terms() {
        match op.completions(h) {
            Ok(c) if c <= op.budget() => {}
            Ok(_) | Err(Error::Budget { .. }) | Err(Error::Resource(_)) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

fn describe(f: &LinComb) -> String {
    match f.max_order() {
        Some(n) => format!("{} terms up to order {}", f.len(), n),
        None => "zero".into(),
    }
}

fn exact(report: &mut TheoremReport, anchor: &'static str, description: &str, left: &LinComb, right: &LinComb) -> Result<bool> {
    let ok = alg_equal(left, right)?;
    report.step(anchor, CheckKind::ExactIdentity, description, ok, format!("lhs {}; rhs {}", describe(left), describe(right)));
    Ok(ok)
}

/// Exact `⟦nind(g)⟧ = nind(target)` by enumeration when affordable, otherwise
/// the closed-form graph of the operator compared with `target` up to isolated
/// vertices, which carry no information in the algebra.
fn swap_identity(
    report: &mut TheoremReport,
    anchor: &'static str,
    op: &Operator,
    g: &Graph,
    g_lifted: &LinComb,
    target: &Graph,
) -> Result<Option<LinComb>> {
    let description = format!("[[nind({})]] = nind({})", g, target);
    if let Some(image) = enumerate(op, &nind(g_lifted)?)? {
        let right = nind(&LinComb::graph(target))?;
        exact(report, anchor, &description, &image, &right)?;
        return Ok(Some(image));
    }
    let forced = op.forced_graph(g)?;
    let padding = forced.order().saturating_sub(target.order());
    let padded = target.disjoint_union(&Graph::independent(target.r(), padding, 0))?;
    let ok = forced.order() >= target.order() && is_isomorphic(&forced, &padded);
    report.step(
        anchor,
        CheckKind::ConstructionEquality,
        format!("{} (closed form; enumeration exceeds budget {})", description, op.budget()),
        ok,
        format!("forced graph {} vs target plus {} isolated vertices", forced, padding),
    );
    Ok(None)
}

fn multiplicativity(report: &mut TheoremReport, op: &Operator) -> Result<()> {
    let sig = op.transformation().input();
    let edge = nind(&LinComb::graph_in(sig, &Graph::complete(sig.r, sig.r))?)?;
    let point = LinComb::point(sig, op.transformation().vertex_rules().first().map_or(0, |r| r.label))?;
    let pairs = [("nind(K)·nind(K)", &edge, &edge), ("nind(K)·•", &edge, &point), ("•·•", &point, &point)];
    for (name, f, g) in pairs {
        if !affordable(op, &product(f, g)?)? {
            continue;
        }
        let ok = check_multiplicative(op, f, g)?;
        report.step(
            "multiplicativity",
            CheckKind::ExactIdentity,
            format!("[[f·g]] = [[f]]·[[g]] for {}", name),
            ok,
            format!("largest pair within budget {}", op.budget()),
        );
        return Ok(());
    }
    report.step("multiplicativity", CheckKind::ExactIdentity, "[[f·g]] = [[f]]·[[g]]", false, "no sample pair fits the budget");
    Ok(())
}

/// `⟦nind(g)⟧ = nind(g)^s` for the operator copying each edge into `s` layers.
pub fn verify_tensor_power(g: &Graph, s: usize, budget: u128) -> Result<TheoremReport> {
    if g.r() != 2 {
        return input("the tensor operator acts on 2-uniform graphs");
    }
    timed(
        |report| {
            let op = Operator::tensor(s)?.with_budget(budget);
            let base = nind(&LinComb::graph(g))?;
            let image = op.apply(&base)?;
            let power = base.pow(s);
            exact(report, "tensor power", &format!("[[nind({})]] = nind({})^{}", g, g, s), &image, &power)?;
            let closed = op.apply_nind(g)?;
            exact(report, "tensor power", "closed form agrees with enumeration", &closed, &image)?;
            Ok(())
        },
        format!("tensor power: G = {}, s = {}", g, s),
    )
}

/// The chain `nind(sub(G)) = ⟦nind(G)⟧ ≥ ⟦nind(K2)⟧^{e_G} = nind(F)^{e_G}` for a
/// subdivision scheme with an independent vertex gadget.
pub fn verify_gensubdivision(
    scheme: &SubdivisionScheme,
    g: &Graph,
    samples: &[BigRational],
    budget: u128,
) -> Result<TheoremReport> {
    if g.has_isolated_vertex() {
        return input(format!("{} has an isolated vertex", g));
    }
    let sub = scheme.subdivide(g)?;
    timed(
        |report| {
            let f = scheme.subdivide(&Graph::complete(scheme.arity(), scheme.arity()))?;
            let e_gadget = scheme.edge_gadget().size();
            let e_vertex = scheme.vertex_gadget().size();
            let expected = g.size() * e_gadget + g.order() * e_vertex;
            report.step(
                "subdivision",
                CheckKind::ConstructionEquality,
                "edge count of the subdivision",
                sub.size() == expected,
                format!("e_sub = {}, e_G·e_F + v_G·e_Fv = {}", sub.size(), expected),
            );
            let op = scheme.operator()?.with_budget(budget);
            let sig = Signature::unlabeled(scheme.arity());
            let k = Graph::complete(scheme.arity(), scheme.arity());
            let edge_image = swap_identity(report, "operator swap", &op, &k, &LinComb::graph_in(sig, &k)?, &f)?;
            swap_identity(report, "operator swap", &op, g, &LinComb::graph(g), &sub)?;
            multiplicativity(report, &op)?;
            if let Some(image) = edge_image {
                for p in samples {
                    let per_edge = eval_quasirandom(&image, p)?;
                    let left = p.pow(sub.size() as i32);
                    let right = per_edge.pow(g.size() as i32) * p.pow((g.order() * e_vertex) as i32);
                    report.step(
                        "subdivision chain",
                        CheckKind::EvaluationConsistency,
                        format!("chain endpoints at p = {}", p),
                        left == right,
                        format!("p^e_sub = {}, [[nind(K)]]^e_G = {}", left, right),
                    );
                }
            }
            Ok(())
        },
        format!("generalized subdivision: G = {}, sub(G) = {}", g, sub),
    )
}

/// The box-product chain through the parallel-edge gadget with a dump label.
pub fn verify_box(g: &Graph, samples: &[BigRational], budget: u128) -> Result<TheoremReport> {
    if g.r() != 2 {
        return input("box products take 2-uniform graphs");
    }
    let scheme = SubdivisionScheme::parallel()?;
    let sub = scheme.subdivide(g)?;
    timed(
        |report| {
            let direct = box_product(g, &Graph::complete(2, 2))?;
            report.step(
                "box product",
                CheckKind::ConstructionEquality,
                "sub(K2, M; G) = G □ K2",
                is_isomorphic(&sub, &direct),
                format!("{} vs {}", sub, direct),
            );
            report.step(
                "box product",
                CheckKind::ConstructionEquality,
                "edge count 2e_G + v_G",
                sub.size() == 2 * g.size() + g.order(),
                format!("{} = 2·{} + {}", sub.size(), g.size(), g.order()),
            );
            let op = scheme.dump_operator()?.with_budget(budget);
            let sig = op.transformation().input();
            let point = op.apply(&LinComb::point(sig, 0)?)?;
            exact(report, "dump label", "[[•↑]] = K2", &point, &LinComb::graph(&Graph::complete(2, 2)))?;
            let k2 = Graph::complete(2, 2);
            let k2_up = LinComb::graph_in(sig, &k2)?;
            let edge_image = swap_identity(report, "swap with labels", &op, &k2, &k2_up, &Graph::cycle(4))?;
            swap_identity(report, "swap with labels", &op, g, &LinComb::graph_in(sig, g)?, &sub)?;
            let extra = 2 * g.size() as i64 - g.order() as i64;
            if extra >= 0 {
                let dots = LinComb::point(Signature::unlabeled(2), 0)?.pow(extra as usize);
                let up = embed_labels(&product(&nind(&LinComb::graph(g))?, &dots)?);
                if let Some(image) = enumerate(&op, &up)? {
                    let right = product(&nind(&LinComb::graph(&sub))?, &LinComb::graph(&k2).pow(extra as usize))?;
                    exact(report, "swap with labels", &format!("[[(nind(G)·•^{})↑]] = nind(sub(G))·K2^{}", extra, extra), &image, &right)?;
                } else {
                    report.note(format!("[[(nind(G)·•^{})↑]] exceeds the budget and was not enumerated", extra));
                }
            }
            if let Some(image) = edge_image {
                for p in samples {
                    let c4 = eval_quasirandom(&image, p)?;
                    let left = p.pow((sub.size() as i64 + extra) as i32);
                    let right = c4.pow(g.size() as i32);
                    report.step(
                        "box chain",
                        CheckKind::EvaluationConsistency,
                        format!("chain endpoints at p = {}", p),
                        left == right && right == p.pow(4 * g.size() as i32),
                        format!("nind(sub)·K2^(2e-v) = {}, nind(C4)^e_G = {}", left, right),
                    );
                }
            }
            Ok(())
        },
        format!("box product: G = {}, sub(G) = {}", g, sub),
    )
}

/// The r-uniform chain for the scheme padding each edge with `m` copies of
/// its endpoints and `r - 2m` private vertices.
pub fn verify_hypergraph(g: &Graph, r: usize, m: usize, budget: u128) -> Result<TheoremReport> {
    if g.r() != 2 {
        return input(format!("expected a 2-uniform graph, got uniformity {}", g.r()));
    }
    let scheme = SubdivisionScheme::mixed(r, m)?;
    let sub = scheme.subdivide(g)?;
    timed(
        |report| {
            if m == 1 && r >= 3 {
                let direct = loose_expansion(g, r)?;
                report.step(
                    "hypergraph expansion",
                    CheckKind::ConstructionEquality,
                    "loose expansion matches the subdivision",
                    is_isomorphic(&direct, &sub),
                    format!("{} vs {}", direct, sub),
                );
            }
            if 2 * m == r {
                let direct = even_expansion(g, r)?;
                report.step(
                    "hypergraph expansion",
                    CheckKind::ConstructionEquality,
                    "even expansion matches the subdivision",
                    is_isomorphic(&direct, &sub),
                    format!("{} vs {}", direct, sub),
                );
            }
            report.step(
                "hypergraph expansion",
                CheckKind::ConstructionEquality,
                "one r-edge per edge",
                sub.size() == g.size() && sub.order() == g.order() * m + g.size() * (r - 2 * m),
                format!("{} vertices, {} edges", sub.order(), sub.size()),
            );
            let op = scheme.operator()?.with_budget(budget);
            let k2 = Graph::complete(2, 2);
            swap_identity(report, "operator swap", &op, &k2, &LinComb::graph(&k2), &Graph::complete(r, r))?;
            if !g.has_isolated_vertex() {
                swap_identity(report, "operator swap", &op, g, &LinComb::graph(g), &sub)?;
            }
            multiplicativity(report, &op)?;
            Ok(())
        },
        format!("hypergraph expansion: G = {}, r = {}, m = {}", g, r, m),
    )
}

/// Goodman's bound and the dump-label embedding of its uniform representative.
pub fn verify_goodman_lift(samples: &[BigRational]) -> Result<TheoremReport> {
    timed(
        |report| {
            let u2 = Signature::unlabeled(2);
            let k3 = Graph::complete(2, 3);
            let p2 = Graph::path(2);
            let classes = [k3.clone(), p2.clone(), complement(&p2), Graph::independent(2, 3, 0)];
            let unit = lift(&LinComb::unit(u2), 3)?.into_comb();
            let expected = LinComb::from_terms(u2, classes.iter().cloned().zip([rat(1), rat(3), rat(3), rat(1)]))?;
            report.step(
                "unit expansion",
                CheckKind::ExactIdentity,
                "∅ = K3 + 3 P2 + 3 P2^c + I3",
                unit == expected,
                format!("{}", unit),
            );
            let goodman = LinComb::graph(&k3).add(&LinComb::graph(&classes[3]))?.add_constant(&frac(-1, 4));
            let rep = lift(&goodman, 3)?;
            let want = [frac(3, 4), frac(-3, 4), frac(-3, 4), frac(3, 4)];
            let got: Vec<BigRational> = classes.iter().map(|c| rep.comb().coefficient(c)).collect();
            report.step(
                "uniform representative",
                CheckKind::ExactIdentity,
                "K3 + I3 - 1/4 at order 3",
                got == want,
                format!("{}", rep.comb()),
            );
            let rejected = lift_labels(&goodman).is_err();
            let lifted = lift_labels(rep.comb());
            report.step(
                "dump label",
                CheckKind::ConstructionEquality,
                "embedding rejects mixed orders and accepts the uniform representative",
                rejected && lifted.is_ok(),
                format!("mixed rejected: {}, uniform accepted: {}", rejected, lifted.is_ok()),
            );
            let lifted = lifted?;
            let dump_only = vec![BigRational::zero(), BigRational::one()];
            let naive = eval_with_labels(&embed_labels(&goodman), &frac(1, 2), &dump_only)?;
            report.step(
                "dump label",
                CheckKind::EvaluationConsistency,
                "naive embedding is negative on hosts labeled only with the dump label",
                naive.is_negative(),
                format!("value {}", naive),
            );
            let uniform = eval_with_labels(&lifted.lifted, &frac(1, 2), &dump_only)?;
            report.step(
                "dump label",
                CheckKind::EvaluationConsistency,
                "uniform embedding vanishes on the same hosts",
                uniform.is_zero(),
                format!("value {}", uniform),
            );
            for p in samples {
                let mut values = Vec::new();
                for w in [frac(1, 4), frac(1, 2), rat(1)] {
                    let weights = vec![w.clone(), BigRational::one() - &w];
                    values.push(eval_with_labels(&lifted.lifted, p, &weights)?);
                }
                report.step(
                    "dump label",
                    CheckKind::EvaluationConsistency,
                    format!("embedded element nonnegative at p = {} for label-0 mass 1/4, 1/2, 1", p),
                    values.iter().all(|v| !v.is_negative()),
                    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "),
                );
            }
            Ok(())
        },
        "Goodman bound and the dump-label embedding".into(),
    )
}

/// The constructions behind the path- and triangle-subdivision forcing pairs.
pub fn verify_forcing_pair_operator(k: usize, budget: u128) -> Result<TheoremReport> {
    if k < 2 {
        return input("path subdivisions need k >= 2");
    }
    timed(
        |report| {
            let path = SubdivisionScheme::path(k)?;
            for t in [2, 3] {
                let sub = path.subdivide(&Graph::cycle(2 * t))?;
                report.step(
                    "path subdivision",
                    CheckKind::ConstructionEquality,
                    format!("P{}-subdivision of C{} is C{}", k, 2 * t, 2 * k * t),
                    is_isomorphic(&sub, &Graph::cycle(2 * k * t)),
                    format!("{}", sub),
                );
            }
            let triangle = SubdivisionScheme::triangle()?;
            let k2 = Graph::complete(2, 2);
            let sub = triangle.subdivide(&k2)?;
            report.step(
                "triangle subdivision",
                CheckKind::ConstructionEquality,
                "K3-subdivision of K2 is K3",
                is_isomorphic(&sub, &Graph::complete(2, 3)),
                format!("{}", sub),
            );
            let op = triangle.operator()?.with_budget(budget);
            swap_identity(report, "operator swap", &op, &k2, &LinComb::graph(&k2), &Graph::complete(2, 3))?;
            match path.operator() {
                Ok(op) => {
                    let op = op.with_budget(budget);
                    swap_identity(report, "operator swap", &op, &k2, &LinComb::graph(&k2), &Graph::path(k))?;
                }
                Err(_) => report.note(format!(
                    "the P{} gadget has no template fixed by the functor, so only constructions are checked",
                    k
                )),
            }
            report.note("that these pairs are forcing is taken from known results, not checked");
            Ok(())
        },
        format!("forcing pairs under path and triangle subdivisions, k = {}", k),
    )
}

/// Polynomial in the edge density with exact coefficients, keyed by exponent.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BoundPolynomial {
    terms: BTreeMap<u32, BigRational>,
}

impl BoundPolynomial {
    pub fn new(terms: impl IntoIterator<Item = (u32, BigRational)>) -> Self {
        let mut out = BoundPolynomial::default();
        for (e, c) in terms {
            out.add(e, c);
        }
        out
    }

    fn add(&mut self, e: u32, c: BigRational) {
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coefficient(&self, e: u32) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `(exponent, coefficient)` pairs, highest exponent first.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.terms.iter().rev().map(|(&e, c)| (e, c))
    }

    pub fn eval(&self, p: &BigRational) -> BigRational {
        self.terms.iter().map(|(&e, c)| c * p.pow(e as i32)).sum()
    }
}

impl fmt::Display for BoundPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i > 0 {
                write!(f, " {} ", sign)?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let a = c.abs();
            if !a.is_one() || e == 0 {
                write!(f, "{}", a)?;
            }
            match e {
                0 => {}
                1 => f.write_str("p")?,
                _ => write!(f, "p^{}", e)?,
            }
        }
        Ok(())
    }
}

/// Minimum density of labeled five-cycles at edge density `p = 1 - 1/k`,
/// read as a bound for all `p` (which is not known to hold).
pub fn five_cycle_bound() -> BoundPolynomial {
    BoundPolynomial::new([(4, rat(4)), (3, rat(-6)), (2, rat(4)), (1, rat(-1))])
}

/// Transfers `nind(H) ≥ Σ c_j K2^j` through a subdivision operator with a
/// dump label: every term is padded with vertices to a common order, an edge
/// power `K2^j` becomes `image_of_edge^j` and each padding vertex becomes
/// `K2^{image_of_vertex}`; the padding of `H` itself is divided out.
///
/// Negative coefficients do not transfer inequalities, so the result is a
/// formal substitution, matching how the bound is stated.
pub fn transfer_bound(bound: &BoundPolynomial, host_order: usize, image_of_edge: u32, image_of_vertex: u32) -> Result<BoundPolynomial> {
    let order = bound.terms().map(|(j, _)| 2 * j as usize).max().unwrap_or(0).max(host_order);
    let shift = image_of_vertex as usize * (order - host_order);
    let mut out = BoundPolynomial::default();
    for (j, c) in bound.terms() {
        let padded = order - 2 * j as usize;
        let e = image_of_edge as usize * j as usize + image_of_vertex as usize * padded;
        if e < shift {
            return input("the transferred bound has a negative exponent");
        }
        out.add((e - shift) as u32, c.clone());
    }
    Ok(out)
}

/// `K_{5,5}` minus a Hamilton cycle, built directly.
pub fn mobius_ladder() -> Graph {
    let edges: Vec<[u32; 2]> = (0..5u32)
        .flat_map(|i| (0..5u32).filter(move |&j| j != i && (j + 1) % 5 != i).map(move |j| [i, 5 + j]))
        .collect();
    Graph::unlabeled(2, 10, edges).expect("valid edges")
}

#[derive(Clone, Debug)]
pub struct M5Bound {
    pub polynomial: BoundPolynomial,
    /// Exponent of the bound it is compared with.
    pub baseline: u32,
    /// Bisection bracket around the crossover, `hi - lo < 10^-6`.
    pub bracket: (BigRational, BigRational),
}

impl M5Bound {
    pub fn crossover(&self) -> f64 {
        ((&self.bracket.0 + &self.bracket.1) / rat(2)).to_f64().unwrap_or(f64::NAN)
    }

    /// `g(p) - p^baseline`.
    pub fn advantage(&self, p: &BigRational) -> BigRational {
        self.polynomial.eval(p) - p.pow(self.baseline as i32)
    }
}

/// The Möbius ladder bound obtained from the five-cycle bound through the
/// crossing gadget, and the point beyond which it beats `K2^17`.
pub fn m5_bound() -> Result<M5Bound> {
    let scheme = SubdivisionScheme::crossing()?;
    let edge_image = scheme.subdivide(&Graph::complete(2, 2))?.size() as u32;
    let vertex_image = scheme.vertex_gadget().size() as u32;
    let polynomial = transfer_bound(&five_cycle_bound(), 5, edge_image, vertex_image)?;
    let mut bound = M5Bound { polynomial, baseline: 17, bracket: (frac(74, 100), frac(75, 100)) };
    let (mut lo, mut hi) = bound.bracket.clone();
    if bound.advantage(&lo).is_positive() || !bound.advantage(&hi).is_positive() {
        return Err(Error::Input("the crossover is not bracketed by [0.74, 0.75]".into()));
    }
    let tolerance = frac(1, 1_000_000);
    while &hi - &lo >= tolerance {
        let mid = (&lo + &hi) / rat(2);
        if bound.advantage(&mid).is_positive() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    bound.bracket = (lo, hi);
    Ok(bound)
}

/// The Möbius ladder pipeline: construction, the operator identities used by
/// the transfer, the derived polynomial and its crossover with `p^17`.
pub fn verify_m5(budget: u128) -> Result<TheoremReport> {
    timed(
        |report| {
            let scheme = SubdivisionScheme::crossing()?;
            let m5 = scheme.subdivide(&Graph::cycle(5))?;
            let regular = (0..10).all(|v| m5.degree(v) == 3);
            report.step(
                "Möbius ladder",
                CheckKind::ConstructionEquality,
                "crossing subdivision of C5 is K_{5,5} minus C10",
                m5.order() == 10 && m5.size() == 15 && regular && is_isomorphic(&m5, &mobius_ladder()),
                format!("{}", m5),
            );
            let op = scheme.dump_operator()?.with_budget(budget);
            let sig = op.transformation().input();
            let point = op.apply(&LinComb::point(sig, 0)?)?;
            exact(report, "dump label", "[[•↑]] = K2", &point, &LinComb::graph(&Graph::complete(2, 2)))?;
            let k2 = Graph::complete(2, 2);
            swap_identity(report, "swap with labels", &op, &k2, &LinComb::graph_in(sig, &k2)?, &Graph::cycle(4))?;
            let bound = m5_bound()?;
            let want = [(13, 4), (11, -6), (9, 4), (7, -1)];
            let ok = bound.polynomial.terms().count() == 4
                && want.iter().all(|&(e, c)| bound.polynomial.coefficient(e) == rat(c));
            report.step("Möbius ladder bound", CheckKind::ExactIdentity, "derived bound polynomial", ok, format!("{}", bound.polynomial));
            report.step(
                "Möbius ladder bound",
                CheckKind::ExactIdentity,
                "g(1) = 1",
                bound.polynomial.eval(&rat(1)).is_one(),
                format!("{}", bound.polynomial.eval(&rat(1))),
            );
            let (lo, hi) = &bound.bracket;
            report.step(
                "Möbius ladder bound",
                CheckKind::EvaluationConsistency,
                "crossover with p^17",
                bound.advantage(lo).is_negative() && bound.advantage(hi).is_positive(),
                format!("{:.6} in [{:.7}, {:.7}]", bound.crossover(), lo.to_f64().unwrap_or(0.0), hi.to_f64().unwrap_or(0.0)),
            );
            report.note("the five-cycle bound is assumed for all p, which is not known to hold; the result is conditional");
            Ok(())
        },
        "Möbius ladder bound".into(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::DEFAULT_BUDGET;

    fn assert_passes(report: &TheoremReport) {
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn tensor_power_reports() {
        for g in [Graph::complete(2, 2), Graph::path(2), Graph::empty(2)] {
            assert_passes(&verify_tensor_power(&g, 2, DEFAULT_BUDGET).unwrap());
        }
    }

    #[test]
    fn bound_polynomial() {
        let b = m5_bound().unwrap();
        assert_eq!(b.polynomial.to_string(), "4p^13 - 6p^11 + 4p^9 - p^7");
        assert!((b.crossover() - 0.74142).abs() < 1e-4, "{}", b.crossover());
        assert!(&b.bracket.1 - &b.bracket.0 < frac(1, 1_000_000));
        assert!(b.advantage(&rat(1)).is_zero());
        assert_eq!(five_cycle_bound().to_string(), "4p^4 - 6p^3 + 4p^2 - p");
        assert_eq!(BoundPolynomial::default().to_string(), "0");
    }

    #[test]
    fn transfer_exponents() {
        // Each K2 power gains three edges per edge and loses two padding vertices.
        let t = transfer_bound(&BoundPolynomial::new([(2, rat(1))]), 4, 4, 1).unwrap();
        assert_eq!(t, BoundPolynomial::new([(8, rat(1))]));
    }

    #[test]
    fn ladder() {
        let m = mobius_ladder();
        assert_eq!(m.size(), 15);
        assert!(!is_isomorphic(&m, &Graph::complete_bipartite(3, 3)));
    }

    #[test]
    fn chain_reports() {
        let t0 = Instant::now();
        let ps = default_samples();
        let k2 = Graph::complete(2, 2);
        let blow = SubdivisionScheme::blowup(2).unwrap();
        assert_passes(&verify_gensubdivision(&blow, &k2, &ps, DEFAULT_BUDGET).unwrap());
        let p2 = SubdivisionScheme::path(2).unwrap();
        assert_passes(&verify_gensubdivision(&p2, &Graph::path(2), &ps, DEFAULT_BUDGET).unwrap());
        assert_passes(&verify_gensubdivision(&p2, &Graph::cycle(4), &ps, DEFAULT_BUDGET).unwrap());
        assert!(verify_gensubdivision(&p2, &Graph::new(2, 3, vec![0; 3], [[0u32, 1]]).unwrap(), &ps, DEFAULT_BUDGET).is_err());
        for g in [k2.clone(), Graph::path(2), Graph::cycle(4)] {
            assert_passes(&verify_box(&g, &ps, DEFAULT_BUDGET).unwrap());
        }
        assert_passes(&verify_hypergraph(&Graph::path(2), 3, 1, DEFAULT_BUDGET).unwrap());
        assert_passes(&verify_hypergraph(&k2, 4, 2, DEFAULT_BUDGET).unwrap());
        assert_passes(&verify_hypergraph(&Graph::cycle(3), 3, 1, DEFAULT_BUDGET).unwrap());
        assert_passes(&verify_goodman_lift(&ps).unwrap());
        assert_passes(&verify_forcing_pair_operator(2, DEFAULT_BUDGET).unwrap());
        assert_passes(&verify_forcing_pair_operator(3, DEFAULT_BUDGET).unwrap());
        assert_passes(&verify_m5(DEFAULT_BUDGET).unwrap());
        eprintln!("{:?}", t0.elapsed());
    }

    #[test]
    fn machine_lines() {
        let r = verify_tensor_power(&Graph::complete(2, 2), 2, DEFAULT_BUDGET).unwrap();
        let text = r.render_machine();
        assert_eq!(text.lines().count(), r.steps.len());
        for line in text.lines() {
            let fields: Vec<&str> = line.split('\t').collect();
            assert_eq!(fields.len(), 4);
            assert_eq!(fields[2], "pass");
        }
    }
}
