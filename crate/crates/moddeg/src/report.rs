//! Assembly of the JSON and CSV payloads shared by the command-line tool and
//! the browser bindings. Everything here is deterministic: JSON objects
//! serialize with sorted keys, and list orders follow the input.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::boolfn::{parse_function, Function, SymmetricProfile, TruthTable};
use crate::extremal::{self, KroneckerSolution};
use crate::mahler;
use crate::polyrep;
use crate::zmod::{self, Modulus};
use crate::{Error, Result};

/// Degree over the integers read off the weight profile: the largest
/// `j <= n` whose forward difference at 0 is nonzero. Exact, so the
/// differences are taken in big integers.
fn integer_degree(f: &SymmetricProfile) -> usize {
    let n = f.arity();
    let mut diffs: Vec<BigInt> = f.values().iter().map(|&v| BigInt::from(v)).collect();
    for j in 1..=n {
        for i in (j..=n).rev() {
            diffs[i] = &diffs[i] - &diffs[i - 1];
        }
    }
    (0..=n).rev().find(|&j| !diffs[j].is_zero()).unwrap_or(0)
}

/// Sensitivity of a symmetric function: at weight `w`, each of the `n - w`
/// zero positions is sensitive iff the profile changes at `w + 1`, and each
/// of the `w` one positions iff it changes at `w - 1`.
fn profile_sensitivity(f: &SymmetricProfile) -> usize {
    let n = f.arity();
    let v = f.values();
    (0..=n)
        .map(|w| {
            let up = if w < n && v[w + 1] != v[w] { n - w } else { 0 };
            let down = if w > 0 && v[w - 1] != v[w] { w } else { 0 };
            up + down
        })
        .max()
        .unwrap_or(0)
}

fn modulus_entry(f: &SymmetricProfile, m: u64) -> Result<Value> {
    let modulus = Modulus::new(m)?;
    let expansion = mahler::mahler_expand(f, m)?;
    let mut periods = Vec::new();
    for &(p, _) in modulus.factors() {
        periods.push(json!({ "p": p, "pi": extremal::base_period(f, p)? }));
    }
    Ok(json!({
        "m": m,
        "degree": expansion.degree(),
        "mahler": expansion.coeffs(),
        "base_periods": periods,
    }))
}

fn analyze_profile(spec: &str, f: &SymmetricProfile, mods: &[u64]) -> Result<Value> {
    let entries: Vec<Value> = mods.iter().map(|&m| modulus_entry(f, m)).collect::<Result<_>>()?;
    // Variables are numbered 1..=n, matching TruthTable::dumb_bits.
    let dumb: Vec<usize> = if f.is_trivial() { (1..=f.arity()).collect() } else { Vec::new() };
    Ok(json!({
        "input": spec,
        "kind": "profile",
        "n": f.arity(),
        "profile": f.to_string(),
        "degree": integer_degree(f),
        "sensitivity": profile_sensitivity(f),
        "dumb_bits": dumb,
        "mods": entries,
    }))
}

fn analyze_table(spec: &str, t: &TruthTable, mods: &[u64]) -> Result<Value> {
    let profile = t.symmetric_profile().ok();
    let mut entries = Vec::with_capacity(mods.len());
    for &m in mods {
        match &profile {
            Some(f) => entries.push(modulus_entry(f, m)?),
            None => entries.push(json!({
                "m": m,
                "degree": polyrep::degree_mod(t, m)?,
                "mahler": Value::Null,
                "base_periods": Value::Null,
            })),
        }
    }
    Ok(json!({
        "input": spec,
        "kind": "table",
        "n": t.arity(),
        "profile": profile.map(|f| f.to_string()),
        "degree": polyrep::degree(t),
        "sensitivity": t.sensitivity(),
        "dumb_bits": t.dumb_bits(),
        "mods": entries,
    }))
}

/// Full analysis of one parsed function: degree over the integers, degree
/// and Mahler coefficients per requested modulus, least base-p periods per
/// prime factor, sensitivity, and ignored variables.
pub fn analyze_value(spec: &str, mods: &[u64]) -> Result<Value> {
    match parse_function(spec)? {
        Function::Profile(f) => analyze_profile(spec, &f, mods),
        Function::Table(t) => analyze_table(spec, &t, mods),
    }
}

fn constructible(sol: &KroneckerSolution) -> bool {
    (sol.aux_prime() as u128)
        .checked_pow(sol.index() as u32)
        .is_some_and(|w| 2 * w <= u128::from(extremal::MAX_CONSTRUCT_ARITY))
}

/// Runs the Diophantine index search and, when possible, builds the verified
/// low-degree witness: for `pick = Some(l)` the solution at index `l` (an
/// error if the search rejected it), otherwise the first solution small
/// enough to construct.
pub fn construct_value(
    m: u64,
    q: u64,
    eps: (u64, u64),
    l_max: u64,
    pick: Option<u64>,
) -> Result<Value> {
    let modulus = Modulus::new(m)?;
    let sols = extremal::kronecker_search(&modulus, q, eps, l_max)?;
    let chosen = match pick {
        Some(l) => Some(sols.iter().find(|s| s.index() == l).ok_or_else(|| {
            Error::CheckFailed(format!("index {l} was not accepted by the search"))
        })?),
        None => sols.iter().find(|s| constructible(s)),
    };
    let witness = match chosen {
        Some(sol) => Some(extremal::construct_low_degree(sol)?.to_json()),
        None => None,
    };
    Ok(json!({
        "m": m,
        "q": q,
        "eps": { "num": eps.0, "den": eps.1 },
        "l_max": l_max,
        "solutions": sols.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
        "witness": witness,
    }))
}

/// CSV of the mod-p coefficient matrix of the weight-residue indicators.
pub fn matrix_csv(p: u64, t: u32) -> Result<String> {
    Ok(mahler::coeff_matrix(p, t)?.to_csv())
}

/// CSV of the signed binomial matrix with entry `(i, j) = C(-j, i)`, the
/// square whose determinant is always a unit.
pub fn c_matrix_csv(size: usize) -> Result<String> {
    if size == 0 || size > mahler::MAX_DET_SIZE {
        return Err(Error::CapExceeded { value: size as u64, cap: mahler::MAX_DET_SIZE as u64 });
    }
    let mut out = String::new();
    for i in 0..size {
        let row: Vec<String> = (0..size)
            .map(|j| zmod::generalized_binom(-(j as i64), i as u64).to_string())
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analysis_of_the_two_bit_or() {
        let v = analyze_value("s:011", &[5]).unwrap();
        assert_eq!(v["kind"], "profile");
        assert_eq!(v["degree"], 2);
        assert_eq!(v["sensitivity"], 2);
        assert_eq!(v["dumb_bits"].as_array().unwrap().len(), 0);
        let m = &v["mods"][0];
        assert_eq!(m["degree"], 2);
        assert_eq!(m["mahler"], json!([0, 1, 4, 0, 2]));
        assert_eq!(m["base_periods"], json!([{ "p": 5, "pi": 5 }]));
    }

    #[test]
    fn analysis_of_parity_profile() {
        let v = analyze_value("parity(4)", &[2, 3]).unwrap();
        assert_eq!(v["degree"], 4);
        assert_eq!(v["mods"][0]["degree"], 1);
        assert_eq!(v["mods"][0]["mahler"], json!([0, 1, 0, 0, 0]));
        assert_eq!(v["mods"][0]["base_periods"][0]["pi"], 2);
        assert_eq!(v["mods"][1]["degree"], 4);
        assert_eq!(v["mods"][1]["base_periods"][0]["pi"], 9);
    }

    #[test]
    fn analysis_of_tables() {
        let v = analyze_value("2:E", &[5]).unwrap();
        assert_eq!(v["kind"], "table");
        assert_eq!(v["degree"], 2);
        assert_eq!(v["profile"], "s:011");
        assert_eq!(v["mods"][0]["degree"], 2);
        assert_eq!(v["mods"][0]["mahler"], json!([0, 1, 4, 0, 2]));

        // f = x0 and not x1 is not symmetric; modular data degrades gracefully
        let v = analyze_value("2:2", &[3]).unwrap();
        assert_eq!(v["profile"], Value::Null);
        assert_eq!(v["degree"], 2);
        assert_eq!(v["mods"][0]["degree"], 2);
        assert_eq!(v["mods"][0]["mahler"], Value::Null);
        assert_eq!(v["sensitivity"], 2);
    }

    #[test]
    fn integer_degree_matches_the_table_path() {
        for n in 1..=6usize {
            for mask in 0..1u64 << (n + 1) {
                let f = SymmetricProfile::from_mask(n, mask);
                let t = f.to_table().unwrap();
                assert_eq!(integer_degree(&f), polyrep::degree(&t), "n={n} mask={mask:#b}");
            }
        }
    }

    #[test]
    fn construct_report_contains_a_witness() {
        let v = construct_value(6, 5, (999, 1000), 3, None).unwrap();
        assert!(!v["solutions"].as_array().unwrap().is_empty());
        assert_eq!(v["witness"]["n"], 10);
        assert_eq!(v["witness"]["degree_bound"], 8);
        let picked = construct_value(6, 5, (999, 1000), 3, Some(1)).unwrap();
        assert_eq!(picked["witness"]["l"], 1);
        assert!(matches!(
            construct_value(6, 5, (1, 1000), 3, Some(2)),
            Err(Error::CheckFailed(_))
        ));
    }

    #[test]
    fn matrix_csv_shapes() {
        let a = matrix_csv(2, 1).unwrap();
        assert_eq!(a, "# A_{2^1} mod 2\n1,0\n1,1\n");
        let c = c_matrix_csv(3).unwrap();
        assert_eq!(c, "1,1,1\n0,-1,-2\n0,1,3\n");
        assert!(matches!(c_matrix_csv(0), Err(Error::CapExceeded { .. })));
    }
}
