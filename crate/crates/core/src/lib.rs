//! Bending deformations of surface-group representations through SL(2)
//! triples, with exact Weyl-group properness tests.

pub mod algebra;
pub mod bending;
pub mod error;
pub mod fuchsian;
pub mod isotypic;
pub mod linalg;
pub mod projections;
pub mod properness;
pub mod rational;
pub mod report;
pub mod roots;
pub mod sl2;
pub mod tolerance;

pub use algebra::{make_algebra, Classification, ElementRef, Family, LieAlgebraSpace, SubspaceOfG};
pub use error::{Error, Result};
pub use tolerance::Tolerances;
