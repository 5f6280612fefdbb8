use kgv_wasm_demo::{chain_report, count_table_csv, kgv_from_generators};

#[test]
fn table_has_the_sp45_entry() {
    let csv = count_table_csv().unwrap();
    assert!(csv.lines().any(|l| l.starts_with("\"Sp(4,5)\"") && l.contains("651 (651)")));
}

#[test]
fn agl23_from_generators() {
    let out = kgv_from_generators(r#"{"p": 3, "n": 2, "generators": [[[2,0],[0,1]], [[1,1],[0,1]], [[0,1],[1,0]]]}"#).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kGV"], 11);
    assert_eq!(v["order"], 48);
    assert!(kgv_from_generators("not json").is_err());
}

#[test]
fn chain_at_threshold() {
    let v: serde_json::Value = serde_json::from_str(&chain_report(3, 3, 13).unwrap()).unwrap();
    assert_eq!(v["verdict"], true);
    assert!(chain_report(9, 2, 3).is_err());
}
