//! Browser bindings. Every entry point takes JSON text and returns a JSON
//! report `{"status": "pass" | "fail" | "error", ...}`.

use std::path::Path;

use oplab::json::{parse, parse_category, RawGraph};
use oplab::pairing::pairing;
use oplab::presheaf::PresheafSpace;
use oplab::quantale::{validate_quantale, RawQuantale};
use oplab::report::SuiteReport;
use oplab::suites::{density_suite, yoneda_suite};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const INPUT: &str = "<input>";

fn finished(checks: &SuiteReport, result: Value) -> Value {
    let status = if checks.passed() { "pass" } else { "fail" };
    json!({ "status": status, "checks": checks.checks, "result": result })
}

fn render(outcome: Result<Value, String>) -> String {
    let v = outcome.unwrap_or_else(|e| json!({ "status": "error", "error": e }));
    serde_json::to_string_pretty(&v).unwrap()
}

pub fn check_quantale(text: &str) -> Result<Value, String> {
    let raw: RawQuantale = parse(Path::new(INPUT), text).map_err(|e| e.to_string())?;
    let report = validate_quantale(&raw);
    Ok(finished(&report, json!({ "elements": raw.elements.len() })))
}

/// Lists the presheaves on a category enriched in itself and runs the
/// Yoneda and density suites over them.
pub fn presheaves(text: &str) -> Result<Value, String> {
    let c = parse_category(Path::new(INPUT), text).map_err(|e| e.to_string())?;
    let space = PresheafSpace::over_self(c).map_err(|e| e.to_string())?;
    let all = space.enumerate().map_err(|e| e.to_string())?;
    let mut report = yoneda_suite(&space).map_err(|e| e.to_string())?;
    report.extend(density_suite(&space).map_err(|e| e.to_string())?);
    let listed: Vec<String> = all.iter().map(|f| space.describe(f)).collect();
    Ok(finished(&report, json!({ "count": all.len(), "presheaves": listed })))
}

pub fn pair(left: &str, right: &str) -> Result<Value, String> {
    let graph = |text: &str| -> Result<_, String> {
        let raw: RawGraph = parse(Path::new(INPUT), text).map_err(|e| e.to_string())?;
        raw.to_graph().map_err(|e| e.to_string())
    };
    let g = pairing(&graph(left)?, &graph(right)?).map_err(|e| e.to_string())?;
    Ok(json!({
        "status": "pass",
        "checks": [],
        "result": RawGraph::from_graph(&g),
    }))
}

#[wasm_bindgen(js_name = checkQuantale)]
pub fn check_quantale_js(text: &str) -> String {
    render(check_quantale(text))
}

#[wasm_bindgen(js_name = presheaves)]
pub fn presheaves_js(text: &str) -> String {
    render(presheaves(text))
}

#[wasm_bindgen(js_name = pair)]
pub fn pair_js(left: &str, right: &str) -> String {
    render(pair(left, right))
}
