//! Max-plus Martin boundary calculus.
//!
//! The finite part works with a one-step kernel on a labeled state set:
//! eigenvalue normalization, Kleene star, Martin kernel and minimal boundary,
//! spectral measures, extremality and path machinery. The [`lq`] module
//! treats the linear-quadratic Lax-Oleinik semigroup on `R^n` analytically.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cycle;
pub mod error;
pub mod io;
pub mod lq;
pub mod martin;
pub mod matrix;
pub mod path;
pub mod star;
pub mod value;

pub use cycle::{max_cycle_mean, normalize};
pub use error::{Error, Result};
pub use martin::{
    h_pairing, is_extremal, is_harmonic, is_superharmonic, martin_kernel, minimal_martin_space,
    mu, natural_kernel, recurrence_classes, represent, spectral_measure, MartinObject,
    MinimalSpace, Partition,
};
pub use matrix::{apply, KernelMatrix, Matrix, MaxPlusFunction};
pub use path::{
    downhill_path, geodesic_limit, is_almost_geodesic, is_almost_optimal, j_functional,
    path_reward, DiscretePath,
};
pub use star::{kleene_star, StarMatrix};
pub use value::{oplus, otimes, MaxPlusValue};
