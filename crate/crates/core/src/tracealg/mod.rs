//! Mixed invariants and concomitants of 2×2 matrices and vectors, the ν
//! substitution, relation schemas, and the tensor algebra 𝒯_G M².

mod expr;
pub mod nu;
pub mod schema;
pub mod tgm2;

pub use expr::{iota_word, tr_word, ConExpr, InvExpr, Letter, Point, TraceWord};
pub use nu::{grid_point, nu_con, nu_inv};
pub use schema::{relation_schema, SchemaArgs, SchemaExpr, SchemaId, SchemaInstance};
pub use tgm2::{chi_map, tau, tau_word, verify_tau_chi, TgExpr, TgLetter, TgTracePoly, TgWord};
