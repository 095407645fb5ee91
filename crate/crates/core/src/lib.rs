//! Exact set-function classification, self-bounding certification and
//! concentration bounds for functions of independent Bernoulli variables.

pub mod bounds;
pub mod classify;
pub mod corpus;
pub mod dist;
pub mod error;
pub mod rational;
pub mod selfbound;
pub mod setfn;
pub mod subset;

pub use bounds::{BoundSpec, BoundValue, Deviation, Side, TailQuery, UpperForm};
pub use classify::{classify, ClassReport, Verdict, XosOutcome};
pub use dist::{BernoulliProduct, Distribution, Moments, TailRow, TailTable};
pub use error::{Error, Result};
pub use rational::{Exact, Rational};
pub use selfbound::{CertificationResult, MinimalA, SelfBoundingParams, SelfBoundingWitness};
pub use setfn::{
    FunctionFile, Generated, GeneratorSpec, GroundSet, SetFunction, SymmetricSetFunction,
};
pub use subset::Subset;
