//! Exact computation of projection groupoids of line configurations in
//! `P^3` and `P^4` over number fields.

pub mod configs;
pub mod d4_model;
pub mod error;
pub mod field;
pub mod groupoid;
pub mod groups;
pub mod linalg;
pub mod p4ext;
mod poly;
pub mod projective;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, FieldElement};
pub use groupoid::{
    enumerate_generators, Configuration, GroupoidAnalysis, InvarianceReport, OrbitResult,
    SimpleMorphism, TreeOrder,
};
pub use groups::{generate_closure, stabilizer, GroupLabel, GroupOrder, GroupResult};
pub use projective::{
    element_order, lines_skew, mobius_from_triples, projection_matrix, wedge4, ElementOrder,
    Morphism, ParamLine, PglMap, ProjPoint,
};
