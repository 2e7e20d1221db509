//! Decorated trees: shapes, `(j,i)` labels and the index rule, homogeneity,
//! closed-form coefficients, and a brute-force expansion to test them against.

mod coeff;
mod expand;
mod shape;

pub use coeff::{coeff_10, coeff_20, coeff_210, coeff_211, coeff_40};
pub use expand::{
    canonical_labels, expand_layer, expand_layer_ordered, expand_rhs, labelled_layer, labelled_rhs,
    multiplicity_of, DecoratedTree, LabelledTree,
};
pub use shape::{rule_allows, EdgeLabel, Homogeneity, TreeShape};
