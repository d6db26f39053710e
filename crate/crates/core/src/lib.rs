//! Symbolic and randomized-exact computation in decorated SL₂ character
//! algebras of group actions, and in the mixed trace algebras of 2×2
//! matrices and vectors.

pub mod charalg;
pub mod curves;
pub mod demos;
pub mod error;
pub mod field;
pub mod gen;
pub mod groupact;
pub mod linalg2;
pub mod oracle;
pub mod parse;
pub mod rep;
pub mod suite;
pub mod tracealg;
pub mod twisted;

pub use charalg::{CharAlgebra, CharPoly, Monomial, RelId, Symbol};
pub use curves::{CurveSpec, Site, SurfaceSpec};
pub use error::{Error, ParseError, Result};
pub use field::{Field, FieldChoice, Fp, PrimeField, Rationals, Scalar};
pub use groupact::{act, GenSym, MarkedPoint, Presentation, Word};
pub use linalg2::{omega, outer, sample_sl2, Mat2, Vec2};
pub use oracle::{OracleConfig, Verdict};
pub use rep::{parse_rep_library, sample_rep, Rep, ValidationReport, Violation};
pub use suite::{SuiteConfig, SuiteReport};
pub use tracealg::{ConExpr, InvExpr, TgExpr, TgWord, TraceWord};
pub use twisted::CentralExtSpec;
