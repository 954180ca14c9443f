//! The full invariant report for one matrix.

use serde_json::{json, Value};

use super::classical::{
    bowen_franks, dimension_module, finite_field_fixed_count, semimodule_presentation, spectrum_away_from_zero, zeta_poly,
};
use crate::algebra::ZMatrix;
use crate::error::Result;
use crate::format::render_matrix_rows;
use crate::weighted::{checked_fixed_count, WeightedModel};

/// Extra inputs for [`invariant_report`].
#[derive(Default)]
pub struct ReportOptions {
    pub models: Vec<WeightedModel>,
    /// `(p, λ)` pairs for finite-field counts.
    pub fields: Vec<(u64, u64)>,
}

/// Every invariant of `m` with canonical string renderings. Identical inputs give identical JSON.
pub fn invariant_report(m: &ZMatrix, options: &ReportOptions) -> Result<Value> {
    let m = m.to_natural()?;
    m.require_square()?;
    let module = dimension_module(&m)?;
    let mut fixed = Vec::new();
    for model in &options.models {
        fixed.push(json!({
            "monoid": model.monoid().name(),
            "hom": model.hom().label(),
            "count": checked_fixed_count(&m, model)?.to_string(),
        }));
    }
    let mut fields = Vec::new();
    for &(p, lambda) in &options.fields {
        fields.push(json!({ "p": p, "lambda": lambda, "count": finite_field_fixed_count(&m, p, lambda)?.to_string() }));
    }
    Ok(json!({
        "schema": 1,
        "matrix": render_matrix_rows(&m.to_poly()),
        "bowen_franks": bowen_franks(&m)?.to_string(),
        "zeta": zeta_poly(&m)?.to_string(),
        "spectrum": spectrum_away_from_zero(&m)?.render_descending(),
        "fitting": module.fitting_invariant.render_ascending(),
        "dimension_module_at_1": module.specialize_at_one().to_string(),
        "semimodule": semimodule_presentation(&m)?.to_string(),
        "fixed_counts": fixed,
        "finite_field_counts": fields,
    }))
}

/// Plain-text rendering of a report, one `name: value` line each.
pub fn render_report_text(report: &Value) -> String {
    let mut out = String::new();
    for key in ["bowen_franks", "zeta", "spectrum", "fitting", "semimodule"] {
        let label = if key == "zeta" { "zeta denominator" } else { key };
        out.push_str(&format!("{label}: {}\n", report[key].as_str().unwrap_or_default()));
    }
    for f in report["fixed_counts"].as_array().into_iter().flatten() {
        out.push_str(&format!(
            "fixed points over {} (h = {}): {}\n",
            f["monoid"].as_str().unwrap_or_default(),
            f["hom"].as_str().unwrap_or_default(),
            f["count"].as_str().unwrap_or_default()
        ));
    }
    for f in report["finite_field_counts"].as_array().into_iter().flatten() {
        out.push_str(&format!("solutions over F_{} (lambda = {}): {}\n", f["p"], f["lambda"], f["count"].as_str().unwrap_or_default()));
    }
    out
}
