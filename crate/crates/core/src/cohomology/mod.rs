//! Ext and Hochschild cohomology, Yoneda products and product comparisons.

pub mod ext;
pub mod hochschild;
pub mod kunneth;
pub mod qci;

pub use ext::{CohomologyClass, ExtEngine, ExtTable};
pub use hochschild::{
    hh_graded_commutativity, hochschild_engine, hochschild_kunneth_check, hochschild_table, HhKunnethReport,
    HH_DIM_GUARD,
};
pub use kunneth::{ext_kunneth_check, module_resolution, ExtKunnethReport, KunnethEngines};
pub use qci::{extring_presentation_check, qci_minimal_resolution, qci_total_resolution, ExtringReport};
