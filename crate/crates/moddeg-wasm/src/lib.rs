//! Thin browser surface over the report layer. Every entry point returns a
//! JSON string; failures come back as `{"error": "..."}` so the page never
//! has to unwind a foreign exception.

use moddeg::report;
use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

fn encode(result: moddeg::Result<serde_json::Value>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Degrees, Mahler coefficients, base periods, and sensitivity of one
/// function over comma-separated moduli.
#[wasm_bindgen]
pub fn analyze(spec: &str, mods: &str) -> String {
    let parsed: Result<Vec<u64>, _> =
        mods.split(',').map(|s| s.trim().parse::<u64>()).collect();
    match parsed {
        Err(_) => json!({ "error": "moduli must be comma-separated integers" }).to_string(),
        Ok(list) if list.is_empty() => json!({ "error": "need at least one modulus" }).to_string(),
        Ok(list) => encode(report::analyze_value(spec, &list)),
    }
}

/// CSV of the weight-residue coefficient matrix for `p^t`.
#[wasm_bindgen]
pub fn matrix_csv(p: u64, t: u32) -> String {
    match report::matrix_csv(p, t) {
        Ok(csv) => csv,
        Err(e) => format!("error: {e}"),
    }
}

/// Diophantine index search and, when feasible, the verified low-degree
/// witness for the modulus `m` with auxiliary prime `q`.
#[wasm_bindgen]
pub fn construct(m: u64, q: u64, eps_num: u64, eps_den: u64, l_max: u64) -> String {
    if eps_num == 0 || eps_den == 0 || eps_num >= eps_den {
        return json!({ "error": "eps must satisfy 0 < num/den < 1" }).to_string();
    }
    encode(report::construct_value(m, q, (eps_num, eps_den), l_max, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_shapes_and_errors() {
        let v: serde_json::Value = serde_json::from_str(&analyze("s:011", "5")).unwrap();
        assert_eq!(v["mods"][0]["mahler"], json!([0, 1, 4, 0, 2]));
        let v: serde_json::Value = serde_json::from_str(&analyze("s:011", "")).unwrap();
        assert!(v["error"].is_string());
        let v: serde_json::Value = serde_json::from_str(&analyze("bogus", "5")).unwrap();
        assert!(v["error"].as_str().unwrap().contains("parse error"));
    }

    #[test]
    fn matrix_and_construct_pass_through() {
        assert_eq!(matrix_csv(2, 1), "# A_{2^1} mod 2\n1,0\n1,1\n");
        assert!(matrix_csv(4, 1).starts_with("error:"));
        let v: serde_json::Value =
            serde_json::from_str(&construct(6, 5, 9, 10, 4)).unwrap();
        assert_eq!(v["witness"]["degree_bound"], 8);
        let v: serde_json::Value = serde_json::from_str(&construct(6, 5, 10, 10, 4)).unwrap();
        assert!(v["error"].is_string());
    }
}
