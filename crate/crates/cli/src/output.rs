//! Output plumbing: JSON to a file or stdout, with non-finite estimates
//! encoded as explicit sentinel strings (JSON has no ±inf).

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

pub type AnyError = Box<dyn std::error::Error>;

pub fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), AnyError> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => fs::write(path, text + "\n")?,
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}")?;
        }
    }
    Ok(())
}

pub fn write_text(out: Option<&Path>, text: &str) -> Result<(), AnyError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

pub fn read_file(path: &Path) -> Result<String, AnyError> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()).into())
}

/// Finite estimate, or a sentinel string for ±inf (non-existence is a
/// result, not a failure; the process still exits 0).
#[derive(Serialize)]
pub struct EstimateJson {
    pub estimate: Option<f64>,
    pub sentinel: Option<String>,
    pub std_error: Option<f64>,
    pub ci: Option<(f64, f64)>,
    pub iterations: usize,
    pub residual: f64,
}

impl From<&tensor_ising::EstimateReport> for EstimateJson {
    fn from(r: &tensor_ising::EstimateReport) -> Self {
        let (estimate, sentinel) = if r.estimate.is_finite() {
            (Some(r.estimate), None)
        } else {
            let s = if r.estimate > 0.0 { "+inf" } else { "-inf" };
            (None, Some(s.to_string()))
        };
        EstimateJson {
            estimate,
            sentinel,
            std_error: r.std_error,
            ci: r.ci,
            iterations: r.iterations,
            residual: r.residual,
        }
    }
}
