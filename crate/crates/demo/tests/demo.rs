use oplab_demo::{check_quantale, pair, presheaves};

const BOOLEAN: &str = r#"{"elements": ["0", "1"], "leq": [[true, true], [false, true]],
    "tensor": [["0", "0"], ["0", "1"]], "unit": "1"}"#;

#[test]
fn quantale_passes_and_fails() {
    assert_eq!(check_quantale(BOOLEAN).unwrap()["status"], "pass");
    let broken = BOOLEAN.replace(r#"["0", "1"]],"#, r#"["1", "1"]],"#);
    let v = check_quantale(&broken).unwrap();
    assert_eq!(v["status"], "fail");
    assert!(check_quantale("{").is_err());
}

#[test]
fn arrow_category_has_three_presheaves() {
    let arrow = r#"{"quantale": "builtin:boolean", "objects": ["x", "y"],
        "hom": {"x,x": "1", "x,y": "1", "y,x": "0", "y,y": "1"}}"#;
    let v = presheaves(arrow).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["result"]["count"], 3);
}

#[test]
fn file_references_need_a_file_system() {
    let c = r#"{"quantale": "missing.json", "objects": ["x"], "hom": {"x,x": "1"}}"#;
    assert!(presheaves(c).is_err());
}

#[test]
fn pairing_concatenates_through_the_basepoint() {
    let left = r#"{"labels": ["a", "b"], "pointed": true, "edges": [["a", "b"], ["b", "*"]]}"#;
    let right = r#"{"labels": ["c", "d"], "pointed": true, "edges": [["*", "c"], ["c", "d"]]}"#;
    let v = pair(left, right).unwrap();
    let edges = v["result"]["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 3);
    assert_eq!(edges[1], serde_json::json!(["b", "c"]));
}

#[test]
fn js_entry_points_report_errors_as_json() {
    let out: serde_json::Value = serde_json::from_str(&oplab_demo::pair_js("[]", "{}")).unwrap();
    assert_eq!(out["status"], "error");
}
