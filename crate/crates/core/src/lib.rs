//! Exact spectral data and moduli dimension counts for special Lagrangian
//! cones and for SL m-folds with conical singularities modelled on them.
//!
//! All quantities are computed in exact integer or rational arithmetic.

pub mod cone;
pub mod error;
pub mod io;
pub mod lattice;
pub mod moduli;
pub mod spectrum;
pub mod verify;

pub use cone::{check_lower_bounds, stability_index, BoundCheck, ConeDescriptor, StabilityReport};
pub use error::{Error, Result};
pub use io::{ModuliConfig, SpectrumFile};
pub use lattice::{hl_eigenvalue, hl_eigenvectors, hl_spectrum, EnumerationLimits, LatticeVector};
pub use moduli::{
    dim_e, dim_i, dim_k, dim_o, dim_o_multi_end, expected_dim_family, expected_dim_moduli, fredholm_index,
    mclean_dims, moduli_report, stability_index_in_family, Component, FamilyCase, FamilyReport, FredholmResult,
    ModuliReport, MultiEndCone, SingularConfig, SingularPoint, TopologyData,
};
pub use spectrum::{parse_rational, rate_eigenvalue, round_sphere_spectrum, Branch, GrowthRate, LinkSpectrum, RateSup, SpectrumEntry};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
