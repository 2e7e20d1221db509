use serde::Serialize;

use super::constants::{LayerConstants, LogConstant};

pub const DOCUMENT_VERSION: u32 = 1;

/// Renders `v` with 12 significant digits.
pub fn decimal_12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    if (-5..12).contains(&magnitude) {
        let decimals = (11 - magnitude).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.11e}")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WickEntry {
    pub k: usize,
    pub coeff: String,
}

/// Approximate renderings; the fractions are authoritative.
#[derive(Debug, Clone, Serialize)]
pub struct Approximate {
    pub c2_log: String,
    pub c3_log: String,
    pub sum: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LayerRecord {
    pub layer: usize,
    pub wick: Vec<WickEntry>,
    pub c2_log: LogConstant,
    pub c3_log: LogConstant,
    pub sum: LogConstant,
    pub unit: &'static str,
    pub approx: Approximate,
}

impl From<&LayerConstants> for LayerRecord {
    fn from(c: &LayerConstants) -> Self {
        let sum = c.log_total();
        Self {
            layer: c.layer(),
            wick: c
                .wick
                .coefficients
                .iter()
                .map(|(&k, v)| WickEntry { k, coeff: v.to_string() })
                .collect(),
            approx: Approximate {
                c2_log: decimal_12(c.c2.to_f64()),
                c3_log: decimal_12(c.c3.to_f64()),
                sum: decimal_12(sum.to_f64()),
            },
            c2_log: c.c2.clone(),
            c3_log: c.c3.clone(),
            sum,
            unit: LogConstant::UNIT,
        }
    }
}

/// The versioned constants document. `generated_at` is the only field that
/// changes between runs with the same input.
#[derive(Debug, Clone, Serialize)]
pub struct ConstantsDocument {
    pub version: u32,
    pub generated_at: String,
    pub unit: &'static str,
    pub layers: Vec<LayerRecord>,
}

impl ConstantsDocument {
    pub fn new(generated_at: impl Into<String>, layers: &[LayerConstants]) -> Self {
        Self {
            version: DOCUMENT_VERSION,
            generated_at: generated_at.into(),
            unit: LogConstant::UNIT,
            layers: layers.iter().map(LayerRecord::from).collect(),
        }
    }
}
