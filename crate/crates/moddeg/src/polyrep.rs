//! The unique multilinear polynomial of a Boolean function and the degree
//! measures deg(f) and deg_m(f).
//!
//! Coefficients are stored densely, indexed by variable-subset bitmask, and
//! computed with the in-place subset Moebius (finite difference) transform in
//! O(n 2^n) exact integer steps.

use serde_json::{json, Value};

use crate::boolfn::TruthTable;
use crate::zmod::Modulus;
use crate::{Error, Result};

/// A multilinear polynomial, over `Z` or over `Z_m` when `modulus` is set.
/// `coeffs[s]` is the coefficient of the monomial on variable subset `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    n: usize,
    modulus: Option<u64>,
    coeffs: Vec<i64>,
}

/// Exact integer coefficients of the unique multilinear polynomial agreeing
/// with `f` on `{0,1}^n`. Coefficient magnitudes stay below `2^n`.
pub fn multilinear_coeffs(f: &TruthTable) -> MultilinearPoly {
    let n = f.arity();
    let size = 1usize << n;
    let mut c: Vec<i64> = (0..size).map(|x| i64::from(f.value_at(x as u32))).collect();
    for i in 0..n {
        let bit = 1usize << i;
        for mask in 0..size {
            if mask & bit != 0 {
                c[mask] -= c[mask ^ bit];
            }
        }
    }
    MultilinearPoly { n, modulus: None, coeffs: c }
}

impl MultilinearPoly {
    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn coeff(&self, subset: u32) -> i64 {
        self.coeffs[subset as usize]
    }

    /// The same polynomial with every coefficient reduced to `[0, m)`.
    pub fn reduce_mod(&self, m: u64) -> Result<MultilinearPoly> {
        if m < 2 {
            return Err(Error::BadModulus(m));
        }
        let coeffs = self.coeffs.iter().map(|&c| c.rem_euclid(m as i64)).collect();
        Ok(MultilinearPoly { n: self.n, modulus: Some(m), coeffs })
    }

    /// Largest subset size with a nonzero coefficient; 0 for constants.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(s, _)| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Value at the input with little-endian encoding `x`: the sum of the
    /// coefficients over all subsets of `x`.
    pub fn evaluate_index(&self, x: u32) -> i64 {
        let x = x as usize;
        debug_assert!(x < self.coeffs.len());
        let mut acc = self.coeffs[0];
        let mut s = x;
        while s != 0 {
            acc += self.coeffs[s];
            s = (s - 1) & x;
        }
        match self.modulus {
            Some(m) => acc.rem_euclid(m as i64),
            None => acc,
        }
    }

    pub fn evaluate(&self, x: &[bool]) -> Result<i64> {
        if x.len() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, got: x.len() });
        }
        let idx = x.iter().enumerate().fold(0u32, |a, (i, &b)| a | (u32::from(b) << i));
        Ok(self.evaluate_index(idx))
    }

    /// Serialization shape used by the command line and the browser demo:
    /// `{"n", "mod", "terms": [{"vars", "coef"}]}` with zero terms omitted and
    /// terms sorted by (degree, variable list).
    pub fn to_json(&self) -> Value {
        let mut terms: Vec<(Vec<usize>, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(s, &c)| ((1..=self.n).filter(|i| s >> (i - 1) & 1 == 1).collect(), c))
            .collect();
        terms.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        json!({
            "n": self.n,
            "mod": self.modulus,
            "terms": terms
                .into_iter()
                .map(|(vars, coef)| json!({"vars": vars, "coef": coef}))
                .collect::<Vec<_>>(),
        })
    }
}

/// deg(f) over the integers.
pub fn degree(f: &TruthTable) -> usize {
    multilinear_coeffs(f).degree()
}

/// deg_m(f): degree after reducing the integer coefficients mod `m`.
pub fn degree_mod(f: &TruthTable, m: u64) -> Result<usize> {
    Ok(multilinear_coeffs(f).reduce_mod(m)?.degree())
}

/// deg_m(f) as the maximum of the degrees modulo the prime power components.
/// Agrees with [`degree_mod`] because the components are pairwise coprime.
pub fn degree_via_crt(f: &TruthTable, m: &Modulus) -> usize {
    m.prime_powers()
        .map(|pe| degree_mod(f, pe).expect("prime power is a valid modulus"))
        .max()
        .expect("modulus has at least one factor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::SymmetricProfile;

    fn or2() -> TruthTable {
        TruthTable::from_fn(2, |x| x != 0).unwrap()
    }

    #[test]
    fn or2_coefficients() {
        let p = multilinear_coeffs(&or2());
        assert_eq!(p.coeff(0b00), 0);
        assert_eq!(p.coeff(0b01), 1);
        assert_eq!(p.coeff(0b10), 1);
        assert_eq!(p.coeff(0b11), -1);
    }

    #[test]
    fn constant_and_parity_coefficients() {
        let one = multilinear_coeffs(&TruthTable::from_fn(2, |_| true).unwrap());
        assert_eq!(one.coeff(0), 1);
        assert!((1..4).all(|s| one.coeff(s) == 0));
        assert_eq!(one.degree(), 0);

        let p2 = multilinear_coeffs(
            &SymmetricProfile::parity(2).unwrap().to_table().unwrap(),
        );
        assert_eq!((p2.coeff(1), p2.coeff(2), p2.coeff(3)), (1, 1, -2));
    }

    #[test]
    fn reduce_examples() {
        let p = multilinear_coeffs(&or2()).reduce_mod(5).unwrap();
        assert_eq!((p.coeff(1), p.coeff(2), p.coeff(3)), (1, 1, 4));
        let p2 = multilinear_coeffs(
            &SymmetricProfile::parity(2).unwrap().to_table().unwrap(),
        )
        .reduce_mod(2)
        .unwrap();
        assert_eq!((p2.coeff(1), p2.coeff(2), p2.coeff(3)), (1, 1, 0));
        let zero = multilinear_coeffs(&TruthTable::from_fn(2, |_| false).unwrap());
        assert!(zero.reduce_mod(7).unwrap().coeffs.iter().all(|&c| c == 0));
        assert!(zero.reduce_mod(1).is_err());
    }

    #[test]
    fn parity_degrees() {
        for n in 1..=10 {
            let f = SymmetricProfile::parity(n).unwrap().to_table().unwrap();
            assert_eq!(degree_mod(&f, 2).unwrap(), 1);
            assert_eq!(degree_mod(&f, 3).unwrap(), n);
            assert_eq!(degree(&f), n);
        }
        assert_eq!(degree_mod(&or2(), 5).unwrap(), 2);
    }

    #[test]
    fn crt_examples() {
        let p3 = SymmetricProfile::parity(3).unwrap().to_table().unwrap();
        assert_eq!(degree_via_crt(&p3, &Modulus::new(6).unwrap()), 3);
        assert_eq!(degree_mod(&p3, 6).unwrap(), 3);
        let c = TruthTable::from_fn(3, |_| true).unwrap();
        for m in 2..=12 {
            assert_eq!(degree_via_crt(&c, &Modulus::new(m).unwrap()), 0);
        }
    }

    #[test]
    fn evaluate_examples() {
        let p = multilinear_coeffs(&or2());
        assert_eq!(p.evaluate(&[true, true]).unwrap(), 1);
        assert_eq!(p.evaluate(&[false, false]).unwrap(), 0);
        assert_eq!(p.evaluate_index(0), p.coeff(0));
        assert!(p.evaluate(&[true]).is_err());
    }

    #[test]
    fn round_trip_exhaustive_small() {
        for n in 0..=3usize {
            for code in 0u64..1 << (1 << n) {
                let f = TruthTable::from_fn(n, |x| code >> x & 1 == 1).unwrap();
                let p = multilinear_coeffs(&f);
                for x in 0..1u32 << n {
                    assert_eq!(p.evaluate_index(x), i64::from(f.value_at(x)));
                }
            }
        }
    }

    #[test]
    fn coefficients_injective_small() {
        use std::collections::HashSet;
        for n in 0..=3usize {
            let mut seen = HashSet::new();
            for code in 0u64..1 << (1 << n) {
                let f = TruthTable::from_fn(n, |x| code >> x & 1 == 1).unwrap();
                assert!(seen.insert(multilinear_coeffs(&f).coeffs));
            }
        }
    }

    #[test]
    fn json_shape_is_sorted_and_sparse() {
        let v = multilinear_coeffs(&or2()).reduce_mod(5).unwrap().to_json();
        assert_eq!(
            v,
            serde_json::json!({
                "n": 2,
                "mod": 5,
                "terms": [
                    {"vars": [1], "coef": 1},
                    {"vars": [2], "coef": 1},
                    {"vars": [1, 2], "coef": 4},
                ],
            })
        );
    }
}
