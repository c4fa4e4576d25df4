//! One-parameter degenerations: limits in the second blow-up, their
//! classification into four types and the limiting tree bundles.

pub mod chart;
pub mod descriptor;
pub mod family;

pub use chart::{
    check_decomposition, check_elementary, elementary_transform_matrix, proper_transform_matrix, BlowupChart,
    ElementaryChart, LinExpr, PointChart, SubstRule, SymMatrix, Term,
};
pub use descriptor::{
    classify_family, classify_with_limit, exceptional_conic_type1, tree_bundle_descriptor, Component,
    ComponentDatum, DegenerationType, ExceptionalConic, TreeBundleDescriptor,
};
pub use family::{beilinson_family, limit_lift, saturate_rows, FamilyLimit, PencilFamily};
