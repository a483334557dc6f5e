//! Exact computational homological algebra for twisted tensor products of
//! graded algebras and quantum complete intersections.

pub mod algebra;
pub mod cohomology;
pub mod error;
pub mod fg;
pub mod radical;
pub mod field;
pub mod grading;
pub mod hom;
pub mod lattice;
pub mod linalg;
pub mod module;
pub mod resolution;
pub mod total;
pub mod config;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, FieldElement, Order, UnitDescriptor};
pub use grading::{Degree, Side, Twist};
pub use lattice::{LatticeIndex, Sublattice};
pub use algebra::{enveloping, qci_construct, twisted_tensor_algebra, GradedAlgebra, QciSpec, TwistedProduct};
pub use module::{bimodule_tensor, module_tensor, GradedModule};
pub use hom::{endomorphism_algebra, graded_hom, HomTable};
pub use resolution::{minimal_resolution, periodic_bimodule_resolution, periodic_module_resolution, FreeModule, Resolution};
pub use total::{twisted_total_resolution, TensorKind};
pub use cohomology::{
    ext_kunneth_check, extring_presentation_check, hochschild_kunneth_check, hochschild_table, qci_total_resolution,
    CohomologyClass, ExtEngine, ExtTable,
};
pub use fg::{clique_c, complexity_estimate, fg_check, repdim_bounds, ComplexityEstimate, FgReport, RepdimBounds};
pub use radical::{gldim, primitive_idempotents, projective_dimension, radical, GlobalDimension};
pub use config::{parse_config, Config, Input};
pub use verify::{run_suite, suite_names, SuiteInput, SuiteReport, SUITES};
