pub mod estimate;
pub mod gof;
pub mod mc;
pub mod phase;
pub mod sample;
pub mod threshold;

use std::path::Path;

use crate::output::AnyError;
use tensor_ising::tensor::{DenseCw, Model, SparseTensor, SpinVector};

/// Load a hyperedge model file.
pub fn load_model_file(path: &Path) -> Result<SparseTensor, AnyError> {
    let text = crate::output::read_file(path)?;
    SparseTensor::parse(&text).map_err(|e| format!("{}: {e}", path.display()).into())
}

/// Load one or more spin rows from a whitespace-separated ±1 file.
pub fn load_spin_rows(path: &Path) -> Result<Vec<SpinVector>, AnyError> {
    let text = crate::output::read_file(path)?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        rows.push(
            SpinVector::parse_line(line, lineno + 1)
                .map_err(|e| format!("{}: {e}", path.display()))?,
        );
    }
    if rows.is_empty() {
        return Err(format!("{}: no spin rows found", path.display()).into());
    }
    Ok(rows)
}

pub fn dense_cw_model(p: u32, n: usize) -> Result<Model, AnyError> {
    Ok(Model::Cw(DenseCw::new(p, n)?))
}
