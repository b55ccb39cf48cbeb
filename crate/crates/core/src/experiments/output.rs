use std::io::Write;

use super::{OutputFormat, SweepRecord};
use crate::error::{QsdError, Result};

pub const CSV_HEADER: &str = "experiment,fn,backend,z_re,z_im,h,theta,phi,est_re,est_im,ref_re,ref_im,rel_err,status";

/// Writes all rows. Floats use the shortest round-trip representation;
/// in JSON-lines, NaN becomes `null`.
pub fn write_records<W: Write>(records: &[SweepRecord], format: OutputFormat, out: W) -> Result<()> {
    let io = |e: std::io::Error| QsdError::EvaluationFailure(format!("write failed: {e}"));
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if records.is_empty() {
                w.write_record(CSV_HEADER.split(',')).map_err(|e| QsdError::EvaluationFailure(format!("write failed: {e}")))?;
            }
            for r in records {
                w.serialize(r).map_err(|e| QsdError::EvaluationFailure(format!("write failed: {e}")))?;
            }
            w.flush().map_err(io)?;
        }
        OutputFormat::JsonLines => {
            let mut out = std::io::BufWriter::new(out);
            for r in records {
                serde_json::to_writer(&mut out, r).map_err(|e| QsdError::EvaluationFailure(format!("write failed: {e}")))?;
                out.write_all(b"\n").map_err(io)?;
            }
            out.flush().map_err(io)?;
        }
    }
    Ok(())
}
