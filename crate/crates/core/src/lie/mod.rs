//! Root systems, Weyl groups, the translation lattice `M` and alcove
//! combinatorics, all in exact rational arithmetic.

pub mod affine;
pub mod lattice;
pub mod linalg;
pub mod root_system;
pub mod weight;
pub mod weyl;

pub use affine::{
    affine_wall, alcove_reduce, alcove_sample, in_closed_alcove, in_open_alcove, tile_translate, translate_affine_root,
    in_weyl_alcove_interior,
    AffineRoot, AffineWeylElement,
};
pub use lattice::{lattice_m, LatticeM};
pub use root_system::{build_root_datum, Root, RootDatum, Series, SimpleType, WEYL_GROUP_CAP};
pub use weight::{Weight, Q};
pub use weyl::{weyl_group, WeylElement, WeylGroup};
