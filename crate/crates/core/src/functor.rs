//! Downward functors: set-valued expressions built from k-subsets, constant
//! sets, disjoint unions and products, acting on finite sets `[n]` and on
//! injections between them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{binomial, subsets, Injection};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum DownwardFunctor {
    /// `M ↦ M^(k)`, the k-element subsets.
    Subsets(usize),
    /// `M ↦ S` for a fixed set `S = {0, .., s-1}`; injections go to the identity.
    Const(usize),
    /// Disjoint union; elements of the left operand come first.
    Union(Box<DownwardFunctor>, Box<DownwardFunctor>),
    Product(Box<DownwardFunctor>, Box<DownwardFunctor>),
}

/// An element of `η([n])`. The derived order is the canonical order of `η([n])`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Element {
    Subset(Vec<u32>),
    Const(u32),
    Left(Box<Element>),
    Right(Box<Element>),
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    pub(crate) fn map(&self, alpha: &Injection) -> Element {
        match self {
            Element::Subset(s) => {
                let mut t: Vec<u32> = s.iter().map(|&x| alpha.apply(x)).collect();
                t.sort_unstable();
                Element::Subset(t)
            }
            Element::Const(c) => Element::Const(*c),
            Element::Left(x) => Element::Left(Box::new(x.map(alpha))),
            Element::Right(x) => Element::Right(Box::new(x.map(alpha))),
            Element::Pair(a, b) => Element::Pair(Box::new(a.map(alpha)), Box::new(b.map(alpha))),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Subset(s) => {
                f.write_str("{")?;
                for (i, x) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", x)?;
                }
                f.write_str("}")
            }
            Element::Const(c) => write!(f, "c{}", c),
            Element::Left(x) => write!(f, "L{}", x),
            Element::Right(x) => write!(f, "R{}", x),
            Element::Pair(a, b) => write!(f, "({},{})", a, b),
        }
    }
}

impl DownwardFunctor {
    pub fn union(a: DownwardFunctor, b: DownwardFunctor) -> Self {
        DownwardFunctor::Union(Box::new(a), Box::new(b))
    }

    pub fn product(a: DownwardFunctor, b: DownwardFunctor) -> Self {
        DownwardFunctor::Product(Box::new(a), Box::new(b))
    }

    /// `|η([n])|`.
    pub fn size(&self, n: usize) -> u128 {
        match self {
            DownwardFunctor::Subsets(k) => binomial(n, *k),
            DownwardFunctor::Const(s) => *s as u128,
            DownwardFunctor::Union(a, b) => a.size(n) + b.size(n),
            DownwardFunctor::Product(a, b) => a.size(n) * b.size(n),
        }
    }

    /// Whether a constant set occurs anywhere in the expression.
    pub fn has_constant(&self) -> bool {
        match self {
            DownwardFunctor::Subsets(_) => false,
            DownwardFunctor::Const(_) => true,
            DownwardFunctor::Union(a, b) | DownwardFunctor::Product(a, b) => a.has_constant() || b.has_constant(),
        }
    }

    /// The elements of `η([n])` in canonical order.
    pub fn apply_set(&self, n: usize) -> Vec<Element> {
        match self {
            DownwardFunctor::Subsets(k) => subsets(n, *k).map(Element::Subset).collect(),
            DownwardFunctor::Const(s) => (0..*s as u32).map(Element::Const).collect(),
            DownwardFunctor::Union(a, b) => a
                .apply_set(n)
                .into_iter()
                .map(|x| Element::Left(Box::new(x)))
                .chain(b.apply_set(n).into_iter().map(|x| Element::Right(Box::new(x))))
                .collect(),
            DownwardFunctor::Product(a, b) => {
                let right = b.apply_set(n);
                a.apply_set(n)
                    .into_iter()
                    .flat_map(|x| {
                        right
                            .iter()
                            .map(move |y| Element::Pair(Box::new(x.clone()), Box::new(y.clone())))
                    })
                    .collect()
            }
        }
    }

    /// `η(α)` as an injection between the ordered sets `η([m])` and `η([n])`.
    pub fn apply_injection(&self, alpha: &Injection) -> Injection {
        let source = self.apply_set(alpha.source());
        let target = self.apply_set(alpha.target());
        let image = source
            .iter()
            .map(|x| {
                let y = x.map(alpha);
                target.binary_search(&y).expect("functor image lies in the target set") as u32
            })
            .collect();
        Injection::new(image, target.len()).expect("functors map injections to injections")
    }
}

impl fmt::Display for DownwardFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DownwardFunctor::Subsets(k) => write!(f, "sub({})", k),
            DownwardFunctor::Const(s) => write!(f, "const({})", s),
            DownwardFunctor::Union(a, b) => write!(f, "u({},{})", a, b),
            DownwardFunctor::Product(a, b) => write!(f, "x({},{})", a, b),
        }
    }
}

impl FromStr for DownwardFunctor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (eta, rest) = parse_expr(&compact)?;
        if !rest.is_empty() {
            return Err(Error::Parse(format!("trailing input {:?}", rest)));
        }
        Ok(eta)
    }
}

fn parse_expr(s: &str) -> Result<(DownwardFunctor, &str)> {
    let err = || Error::Parse(format!("expected functor at {:?}", s));
    let open = s.find('(').ok_or_else(err)?;
    let (head, body) = (&s[..open], &s[open + 1..]);
    match head {
        "sub" | "const" => {
            let close = body.find(')').ok_or_else(err)?;
            let k: usize = body[..close]
                .parse()
                .map_err(|_| Error::Parse(format!("invalid size {:?}", &body[..close])))?;
            let eta = if head == "sub" {
                DownwardFunctor::Subsets(k)
            } else {
                DownwardFunctor::Const(k)
            };
            Ok((eta, &body[close + 1..]))
        }
        "u" | "x" => {
            let (a, rest) = parse_expr(body)?;
            let rest = rest.strip_prefix(',').ok_or_else(err)?;
            let (b, rest) = parse_expr(rest)?;
            let rest = rest.strip_prefix(')').ok_or_else(err)?;
            let eta = if head == "u" {
                DownwardFunctor::union(a, b)
            } else {
                DownwardFunctor::product(a, b)
            };
            Ok((eta, rest))
        }
        _ => Err(err()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use DownwardFunctor::*;

    #[test]
    fn set_sizes() {
        assert_eq!(
            Subsets(2).apply_set(3),
            vec![Element::Subset(vec![0, 1]), Element::Subset(vec![0, 2]), Element::Subset(vec![1, 2])]
        );
        let u = DownwardFunctor::union(Subsets(1), Const(2));
        assert_eq!(u.apply_set(2).len(), 4);
        let x = DownwardFunctor::product(Subsets(1), Const(2));
        assert_eq!(x.apply_set(3).len(), 6);
        for eta in [u, x] {
            for n in 0..5 {
                assert_eq!(eta.apply_set(n).len() as u128, eta.size(n));
                let set = eta.apply_set(n);
                assert!(set.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn pairs_are_ordered_by_vertex_then_copy() {
        let x = DownwardFunctor::product(Subsets(1), Const(2));
        let set = x.apply_set(2);
        let pair = |v: u32, i: u32| Element::Pair(Box::new(Element::Subset(vec![v])), Box::new(Element::Const(i)));
        assert_eq!(set, vec![pair(0, 0), pair(0, 1), pair(1, 0), pair(1, 1)]);
    }

    #[test]
    fn injections_map_subsets_pointwise() {
        let alpha = Injection::new(vec![0, 2], 3).unwrap();
        let img = Subsets(2).apply_injection(&alpha);
        // {0,1} is sent to {0,2}, the second 2-subset of [3].
        assert_eq!(img.image(), &[1]);
        assert!(Const(3).apply_injection(&alpha).is_identity());
        let eta: DownwardFunctor = "u(x(sub(1),const(2)),x(sub(2),const(1)))".parse().unwrap();
        assert!(eta.apply_injection(&Injection::identity(4)).is_identity());
    }

    #[test]
    fn expression_syntax_round_trips() {
        for text in ["sub(1)", "const(3)", "u(x(sub(1),const(2)),x(sub(2),const(1)))", "x(u(sub(0),sub(3)),const(0))"] {
            let eta: DownwardFunctor = text.parse().unwrap();
            assert_eq!(eta.to_string(), text);
        }
        assert_eq!("x( sub(1) , const(2) )".parse::<DownwardFunctor>().unwrap().to_string(), "x(sub(1),const(2))");
        for bad in ["", "sub", "sub(a)", "u(sub(1))", "x(sub(1),sub(2)", "sub(1)x", "pow(2)"] {
            assert!(bad.parse::<DownwardFunctor>().is_err(), "{}", bad);
        }
    }

    #[test]
    fn constants_are_detected() {
        assert!(!DownwardFunctor::product(Subsets(1), Subsets(2)).has_constant());
        assert!(DownwardFunctor::union(Subsets(1), Const(0)).has_constant());
    }
}
