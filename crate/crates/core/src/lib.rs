//! Spherical codes from the degree-2 spherical-harmonic embedding.
//!
//! The pipeline takes an equinorm integer point set on `S^d` (the E8 roots by
//! default), maps every antipodal pair `{x, -x}` to the normalized kernel
//! element `G_x` of the degree-2 harmonic space, and certifies the resulting
//! antipodal code: its coherence, the matching lower bound, frame tightness
//! and design strength, all in exact rational arithmetic.
//!
//! Matrix, polynomial and certification routines are generic over
//! [`exact::Scalar`]; the aliases below fix the exact instantiation used for
//! certificates and the `f64` one used for numerical export.

pub mod analyzer;
pub mod cli;
pub mod codes;
pub mod embedding;
pub mod error;
pub mod exact;
pub mod harmonics;
pub mod lattice;

pub use error::{Error, Result};
pub use exact::{rat, Rational, Scalar};

pub type ExactSymMatrix = exact::SymMatrix<Rational>;
pub type ExactGegenbauer = harmonics::GegenbauerPoly<Rational>;
pub type ExactEmbeddedPoint = embedding::EmbeddedPoint<Rational>;
pub type ExactEmbeddedCode = embedding::EmbeddedCode<Rational>;
pub type ExactGram = codes::GramView<Rational>;

pub type FloatSymMatrix = exact::SymMatrix<f64>;
pub type FloatGegenbauer = harmonics::GegenbauerPoly<f64>;
pub type FloatEmbeddedCode = embedding::EmbeddedCode<f64>;
pub type FloatGram = codes::GramView<f64>;
