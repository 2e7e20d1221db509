//! Renormalisation constants: the Wick (`1/ε`) structure per layer and the
//! exact `log ε` coefficients of the tall and wide graphs.

mod constants;
mod export;
mod graphs;
mod mollifier;
mod wick;

pub use constants::{c2_log, c3_log, c3_log_symmetrized, layer_constants, LayerConstants, LogConstant, MAX_LAYER};
pub use export::{decimal_12, ConstantsDocument, LayerRecord, WickEntry, DOCUMENT_VERSION};
pub use graphs::{tall_tree_log, tall_tree_log_with, wide_tree_log, wide_tree_log_with};
pub use mollifier::{c_eps_k, MollifierSpec, Profile, SUPPORT_HALF_WIDTH};
pub use wick::{t_coefficient, wick_structure, wick_structure_unresummed, WickStructure};
