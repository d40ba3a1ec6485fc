//! Exact computation in algebras of labeled r-uniform hypergraphs.

pub mod algebra;
pub mod canon;
pub mod construct;
pub mod density;
pub mod error;
pub mod functor;
pub mod graph;
pub mod harness;
pub mod transform;

pub use algebra::{
    alg_equal, coeff_positive_at, parse_rational, eval_quasirandom, eval_with_labels, frac, lift, nind, product, rat, LinComb,
    PositivityCertificate, Signature, UniformRep,
};
pub use canon::{automorphism_count, canonical, canonical_form, is_isomorphic, CanonicalGraph};
pub use construct::{
    blowup, box_product, check_symmetry, drop_labels, embed_labels, even_expansion, lift_labels, loose_expansion,
    LabeledLift, SubdivisionScheme,
};
pub use density::{
    blowup_density_curve, hom_density, hom_density_of, inj_density, inj_density_of, limit_inj_blowup,
    limit_inj_blowup_of, DensityValue, DEFAULT_BLOWUP_CAP,
};
pub use error::{Error, Result};
pub use functor::{DownwardFunctor, Element};
pub use graph::{binomial, complement, contains, induced, subsets, Graph, Injection, Label};
pub use transform::{check_multiplicative, Operator, UpwardTransformation, VertexRule, DEFAULT_BUDGET};
