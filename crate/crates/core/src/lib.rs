//! Polyhedral fans coarsening the braid arrangement fan `B(n)`, described
//! through preposet labels, and their strong factorization: a sequence of
//! smooth star subdivisions taking any complete smooth coarsening to `B(n)`.
//!
//! Elements of `[n]` are 1-based throughout.

pub mod error;
pub mod factorize;
pub mod fan;
pub mod fixtures;
pub mod io;
pub mod oracle;
mod perm;
pub mod preposet;
pub mod quotient_lattice;

pub use error::{Error, Result};
pub use factorize::{
    factor_to_braid, find_center, is_admissible, strong_factorize, subdivide_at_center,
    FactorOptions, FactorizationTrace, Orientation, Step, SubdivisionCenter,
};
pub use fan::{
    braid_fan, braid_fan_bounded, cones_containing, is_complete_coarsening, is_smooth,
    preposet_of_rays, rays_of, star_subdivide_rays, Cone, Coverage, Fan, DEFAULT_MAX_N,
};
pub use oracle::{validate_fan, verify_step, FailureKind, ValidationReport};
pub use preposet::{Preposet, Properties, Relation};
pub use quotient_lattice::{is_unimodular_extendable, sum_vectors, LatticeVector};
