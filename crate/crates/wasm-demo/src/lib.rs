//! Browser bindings: the element-count table, k(GV) for a group given by
//! generator matrices, and one inequality chain at a chosen field.

use kgv_core::brute_force::{kgv_count, GeneratorFile, KgvMethod};
use kgv_core::element_counts::section3_table;
use kgv_core::kgv_bounds::printed_chain;
use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest group the page will close under multiplication.
const PAGE_CLOSURE_CAP: usize = 200_000;

/// The element-count table as CSV.
#[wasm_bindgen]
pub fn count_table_csv() -> Result<String, String> {
    Ok(section3_table().map_err(|e| e.to_string())?.to_csv())
}

/// `{"order", "kG", "kGV"}` for a generator file's JSON text.
#[wasm_bindgen]
pub fn kgv_from_generators(text: &str) -> Result<String, String> {
    let file = GeneratorFile::parse(text).map_err(|e| e.to_string())?;
    let group = file.group(PAGE_CLOSURE_CAP).map_err(|e| e.to_string())?;
    let kgv = kgv_count(&group, KgvMethod::Lgt).map_err(|e| e.to_string())?;
    Ok(json!({"order": group.order(), "kG": group.class_count(), "kGV": kgv}).to_string())
}

/// The printed chain for `(a, r)` evaluated at `|K| = qk`.
#[wasm_bindgen]
pub fn chain_report(a: u32, r: u32, qk: u32) -> Result<String, String> {
    let chain = printed_chain(a, r as u64).map_err(|e| e.to_string())?;
    let report = chain.evaluate(qk as u64, None).map_err(|e| e.to_string())?;
    Ok(report.to_json())
}
