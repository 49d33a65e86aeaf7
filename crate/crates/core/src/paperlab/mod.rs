//! Block-matrix rings `R(n, q)`, null rings, their distinguished ideals,
//! verification records and small classification scans.

mod families;
mod rnq;
mod scan;
mod verify;

pub use families::{ring_families, FamilyParams, Matrix, Null, RingFamily, Rnq, RnqOpposite};
pub use rnq::{
    build_null_ring, build_rnq, canonical_cover, covering_formula, covers_ring, gaussian_count,
    RnqContext,
};
pub use scan::{
    find_isomorphism, fingerprint, fingerprint_scan, random_algebra, random_algebras, Fingerprint,
    ScanClass, ScanMode, ScanReport, MAX_EXHAUSTIVE_TABLES,
};
pub use verify::{
    records_csv, verify_main_grid, verify_main_theorem, verify_two_sided_grid,
    verify_two_sided_theorem, Theorem, VerificationRecord,
};
