//! Finite, possibly nonunital, algebras over prime fields given by structure
//! constants: Jacobson radicals, ideal lattices, exact minimal covers by
//! proper left, right or two-sided ideals, and the block-matrix rings
//! `R(n, q)` whose left covering number is `(q^(n+1) - 1) / (q - 1)`.

pub mod cover;
pub mod error;
pub mod exchange;
pub mod gf;
pub mod guards;
pub mod ideals;
pub mod linalg;
pub mod paperlab;
pub mod radical;
pub mod registry;
pub mod ring;

pub use cover::{
    cover_solvers, covering_number, covering_number_with, forced_ideals, is_eta_elementary,
    minimal_cover, Certificate, CoverResult, CoverSolver, ElementaryReport, Eta,
};
pub use error::{Error, Result};
pub use gf::{make_field, FieldElement, FieldSpec};
pub use guards::Guards;
pub use ideals::{
    enumerate_ideals, ideal_closure, ideal_membership, maximal_ideals, IdealBasis, IdealLattice,
    Side,
};
pub use radical::{
    jacobson_radical, radical_dorroh_oracle, radical_methods, wedderburn_complement, Decomposition,
};
pub use registry::Registry;
pub use ring::{make_ring, matrix_algebra, RingElement, RingPresentation};
