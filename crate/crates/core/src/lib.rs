//! Exact computations on the H4 configuration of 60 points in P³ over Q(√5):
//! incidence tables, exact covers, grids, and certificates that a general
//! projection of the configuration is a (6,10) complete intersection in P².

pub mod config;
pub mod coverings;
pub mod field;
pub mod forms;
pub mod geproci;
pub mod linalg;
pub mod projective;
pub mod tables;

pub use config::{build_h4, H4Configuration, PointSet};
pub use coverings::{
    enumerate_coverings, enumerate_grids, verify_covering, CoverCertificate, GridLines, GRID_COUNT,
};
pub use field::{FieldElement, Rational};
pub use forms::{divides, gcd_forms, plane_curve_is_smooth, vanishing_space, FormBasis, HomForm};
pub use geproci::{
    refute_half_grid, verify_geproci, verify_grid, verify_half_grid, verify_not_half_grid, Check,
    GeprociCertificate, GeprociError, GridCertificate, HalfGridCertificate, HalfGridSubset,
    Projection, Refutation,
};
pub use projective::{PlanePoint, ProjLine, ProjMatrix, ProjPlane, ProjPoint};
