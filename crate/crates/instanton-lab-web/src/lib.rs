//! wasm-bindgen bindings behind `www/index.html`. Every function returns JSON;
//! failures come back as `{"error": "..."}`.

use instanton_lab::classify::{classify_flag_lines, classify_segre_lines};
use instanton_lab::cohomology::{build_table, parse_bundle, BundleFamily, VarietyEntry, Window};
use instanton_lab::instanton::check_instanton;
use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

fn error(msg: impl ToString) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn table(variety: &str, bundle: &str, tmin: i64, tmax: i64) -> Result<instanton_lab::CohomologyTable, String> {
    if tmin > tmax {
        return Err(format!("window {tmin}:{tmax} is empty"));
    }
    let entry = VarietyEntry::parse(variety).map_err(|e| e.to_string())?;
    let summands = parse_bundle(&entry, bundle).map_err(|e| e.to_string())?;
    build_table(&entry, &BundleFamily::sum(summands), Window::new(tmin, tmax)).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn cohomology_table(variety: &str, bundle: &str, tmin: i32, tmax: i32) -> String {
    match table(variety, bundle, tmin as i64, tmax as i64) {
        Ok(t) => serde_json::to_string(&t).expect("table serializes"),
        Err(e) => error(e),
    }
}

#[wasm_bindgen]
pub fn check(variety: &str, bundle: &str) -> String {
    let n = match VarietyEntry::parse(variety) {
        Ok(e) => e.dim() as i64,
        Err(e) => return error(e),
    };
    let t = match table(variety, bundle, -n - 1, 1) {
        Ok(t) => t,
        Err(e) => return error(e),
    };
    match check_instanton(&t) {
        Ok(v) => json!({ "table": t, "verdict": v }).to_string(),
        Err(e) => error(e),
    }
}

/// `kind` is `flag` or `segre`.
#[wasm_bindgen]
pub fn classify(kind: &str, search_box: i32, defect: u8) -> String {
    let r = match kind {
        "flag" => classify_flag_lines(search_box as i64, defect),
        "segre" => classify_segre_lines(search_box as i64, defect),
        _ => return error(format!("unknown classification {kind}")),
    };
    match r {
        Ok(r) => serde_json::to_string(&r).expect("report serializes"),
        Err(e) => error(e),
    }
}
