use std::path::Path;

use mkpz_core::renorm::{decimal_12, layer_constants, ConstantsDocument, LayerConstants, MAX_LAYER};

use crate::Failure;

pub const DEFAULT_MAX_LAYER: usize = 6;

/// `"A..B"` (inclusive) or `"N"`.
pub fn parse_layers(spec: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("--layers expects A..B or N, got {spec:?}"));
    let (a, b) = match spec.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let n = spec.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if a == 0 {
        return Err(Failure::Usage("layers start at 1".into()));
    }
    if b < a {
        return Err(Failure::Usage(format!("empty layer range {spec}")));
    }
    Ok((a, b))
}

pub fn run(layers: &str, out: &Path, max_layer: usize) -> Result<(), Failure> {
    let (first, last) = parse_layers(layers)?;
    if last > max_layer {
        return Err(Failure::Usage(format!(
            "layer {last} exceeds the compute budget {max_layer}; raise it with --max-layer (cost grows like n^8)"
        )));
    }
    if last > MAX_LAYER {
        return Err(Failure::Usage(format!(
            "layer {last} is beyond {MAX_LAYER}, the largest supported layer"
        )));
    }
    let constants: Vec<LayerConstants> = (first..=last).map(layer_constants).collect();
    print_table(&constants);
    let doc = ConstantsDocument::new(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true), &constants);
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::Failed(e.to_string()))?;
    std::fs::write(out, text + "\n").map_err(|e| Failure::Failed(format!("cannot write {}: {e}", out.display())))?;
    println!("wrote {}", out.display());
    Ok(())
}

fn print_table(rows: &[LayerConstants]) {
    println!("log constants in units of 1/(4 sqrt(3) pi) log(eps); decimals are approximate");
    println!("{:>5}  {:>34}  {:>34}  {:>34}", "layer", "c2", "c3", "c2 + c3");
    for c in rows {
        let sum = c.log_total();
        let cell = |q: String, v: f64| format!("{q} ({})", decimal_12(v));
        println!(
            "{:>5}  {:>34}  {:>34}  {:>34}",
            c.layer(),
            cell(c.c2.to_string(), c.c2.to_f64()),
            cell(c.c3.to_string(), c.c3.to_f64()),
            cell(sum.to_string(), sum.to_f64()),
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layer_ranges() {
        assert_eq!(parse_layers("1..4").unwrap(), (1, 4));
        assert_eq!(parse_layers("3").unwrap(), (3, 3));
        assert!(matches!(parse_layers("0..2"), Err(Failure::Usage(_))));
        assert!(matches!(parse_layers("4..2"), Err(Failure::Usage(_))));
        assert!(matches!(parse_layers("a..b"), Err(Failure::Usage(_))));
    }
}
