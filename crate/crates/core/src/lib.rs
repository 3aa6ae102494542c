//! Free metabelian Lie algebras, their embedding into a Poisson algebra, and
//! invariants of `SL_2`-actions on them.

pub mod catalog;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod metabelian;
pub mod parse;
pub mod poly;
pub mod series;
pub mod sl2;

pub use catalog::{catalog, verify_catalog, CatalogEntry, CatalogReport, CheckResult};
pub use error::{Error, Result};
pub use invariants::{
    decide_finite_generation, discriminant, infinite_family_witness, pi, GenerationVerdict,
    VerdictReason, WitnessFamily,
};
pub use metabelian::{
    CommutatorWord, LieExpansion, LieExpr, Metabelian, PoissonElement, WreathElement,
};
pub use poly::{Monomial, Poly, Rational, Var};
pub use series::{MultiplicityTable, Target, TruncatedSeries};
pub use sl2::{is_annihilated, is_invariant, Derivation, LinearAction, ModuleSpec, Representation};
