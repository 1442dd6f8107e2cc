//! Exact structure-constant toolkit for n-ary Hom-algebras, Rota-Baxter
//! operators and weighted derivations over the rationals and prime fields.

pub mod algebra;
pub mod axioms;
pub mod bundle;
pub mod catalog;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod field;
pub mod matrix;
pub mod par;
pub mod report;
pub mod search;

pub use algebra::{Arg, HomAlgebra, LinearFunctional, OperatorKind, StructureTensor, WeightedOperator};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use matrix::Matrix;
pub use report::{AxiomReport, Violation};
