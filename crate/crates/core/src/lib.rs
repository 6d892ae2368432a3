//! Exact computations around Koszul duality for simplicial restricted Lie
//! algebras over finite fields.

pub mod binom;
pub mod error;
pub mod field;
pub mod freelie;
pub mod hopf;
pub mod koszul;
pub mod lambda;
pub mod linalg;
pub mod steenrod;
pub mod twisted;

pub use error::{Error, Result};
pub use field::{FieldElement, FrobeniusField};
pub use freelie::{LieOperad, SimplicialVectorSpace};
pub use hopf::{RestrictedLie, UrPresentation};
pub use koszul::{ExtChart, ExtEntry, Flavor, KoszulComplex};
pub use lambda::{LambdaElement, LambdaMonomial};
pub use steenrod::{SteenrodAlgebra, SteenrodElement};
pub use twisted::{FPModule, TwistedPoly};
