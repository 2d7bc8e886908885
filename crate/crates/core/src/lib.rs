pub mod canon;
pub mod complexes;
pub mod config;
pub mod error;
pub mod families;
pub mod hochster;
pub mod linalg;
pub mod massey;
pub mod nestohedra;
pub mod poly_ring;
pub mod tor_algebra;
pub mod vertex_set;

pub use complexes::SimplicialComplex;
pub use error::{Error, Result};
pub use linalg::{Field, FieldSpec, PrimeField, Rationals};
pub use vertex_set::VertexSet;
pub use config::Config;
