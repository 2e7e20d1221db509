use std::io::Write;

use super::scheme::Trajectory;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Writes `time,layer,index,value` rows, layers numbered from 1.
pub fn write_trajectory_csv<F: Real, W: Write>(traj: &Trajectory<F>, out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Io(format!("csv output failed: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["time", "layer", "index", "value"]).map_err(io)?;
    for snap in &traj.snapshots {
        for (l, field) in snap.fields.iter().enumerate() {
            for (k, v) in field.iter().enumerate() {
                w.write_record([
                    snap.time.to_string(),
                    (l + 1).to_string(),
                    k.to_string(),
                    v.to_string(),
                ])
                .map_err(io)?;
            }
        }
    }
    w.flush().map_err(|e| Error::Io(format!("csv output failed: {e}")))?;
    Ok(())
}
