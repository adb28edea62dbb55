//! Feasibility-region scan with optional CSV point-cloud export.

use std::path::Path;

use kuramoto_sync::{feasibility_scan, FeasibilityRegion};
// Scans at acceptance resolution (1e-4) touch 1e8 grid cells; the region
// type keeps its marks bit-packed so this stays at tens of megabytes.

use crate::error::HarnessError;

pub fn run_region_scan(
    mu_tilde: f64,
    grid_step: f64,
    csv_path: Option<&Path>,
) -> Result<FeasibilityRegion, HarnessError> {
    if !(0.0..=1.0).contains(&mu_tilde) {
        return Err(HarnessError::Config(format!("mu_tilde must lie in [0, 1], got {mu_tilde}")));
    }
    if grid_step.is_nan() || grid_step <= 0.0 || grid_step > 0.5 {
        return Err(HarnessError::Config(format!(
            "grid_step must lie in (0, 0.5], got {grid_step}"
        )));
    }
    let region = feasibility_scan(mu_tilde, grid_step);
    if let Some(path) = csv_path {
        let f = std::fs::File::create(path)?;
        region.write_point_cloud_csv(std::io::BufWriter::new(f))?;
    }
    Ok(region)
}
