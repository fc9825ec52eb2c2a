//! Tangent space bounds for points `t^lambda` of the affine Grassmannian of a
//! classical group, and the abelian-type criterion under which the curve
//! bounds and the Finkelberg-Mirkovic bounds coincide.
//!
//! ```
//! use schubert_tangent::{k_alpha, HalfIntVector, RootDatum, Series};
//!
//! # fn main() -> schubert_tangent::Result<()> {
//! let d4 = RootDatum::from_parts(Series::D, 4)?;
//! let mu: HalfIntVector = "3,3,3,0".parse()?;
//! let lambda: HalfIntVector = "1,1,1,0".parse()?;
//! let neg_alpha3 = d4.negative_of(d4.simple_root_index(2));
//! assert_eq!(k_alpha(&d4, &lambda, &mu, neg_alpha3)?, 2);
//! # Ok(())
//! # }
//! ```

pub mod abelian_type;
pub mod cli;
pub mod error;
pub mod grid;
pub mod oracle;
pub mod root_datum;
pub mod tangent_bounds;
pub mod vector;
pub mod weyl_modules;

pub use error::{Error, Result};
pub use root_datum::{ClassicalType, Root, RootDatum, Series};
pub use tangent_bounds::{
    cartan_cur, k_alpha, l_alpha, l_h, phi_cur, phi_fm_bound, tangent_dimension_cur, BoundTable, CartanProfile, PhiSet,
};
pub use vector::{HalfIntVector, Rational};
pub use weyl_modules::{CartanElement, Characteristic, SearchSet};
