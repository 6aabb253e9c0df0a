// Independent oracles for the integration suites. Everything here is written
// from the defining formulas, deliberately ignoring the crate's own transforms
// so that agreement is evidence rather than tautology.
#![allow(dead_code)]

use moddeg::boolfn::{SymmetricProfile, TruthTable};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_table(rng: &mut ChaCha8Rng, n: usize) -> TruthTable {
    TruthTable::from_fn(n, |_| rng.gen_bool(0.5)).unwrap()
}

pub fn random_nondegenerate_table(rng: &mut ChaCha8Rng, n: usize) -> TruthTable {
    loop {
        let f = random_table(rng, n);
        if f.is_nondegenerate() {
            return f;
        }
    }
}

/// Multilinear coefficients straight from the interpolation product: the
/// coefficient of the monomial with support `s` is
/// `sum over subsets t of s of (-1)^(|s|-|t|) f(t)`. Exponential in n, which
/// is the point: no shared machinery with the in-place transform.
pub fn interpolation_coeffs(f: &TruthTable) -> Vec<i64> {
    let n = f.arity();
    (0..1u32 << n)
        .map(|s| {
            let mut acc = 0i64;
            let mut t = s;
            loop {
                let sign = if (s.count_ones() - t.count_ones()) % 2 == 0 { 1 } else { -1 };
                acc += sign * i64::from(f.value_at(t));
                if t == 0 {
                    break;
                }
                t = (t.wrapping_sub(1)) & s;
            }
            acc
        })
        .collect()
}

/// Pascal triangle with exact big integers, rows 0..=d.
pub fn pascal(d: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(d + 1);
    for l in 0..=d {
        let mut row = vec![BigInt::from(1); l + 1];
        for i in 1..l {
            row[i] = &rows[l - 1][i - 1] + &rows[l - 1][i];
        }
        rows.push(row);
    }
    rows
}

/// Mahler coefficients by the direct alternating sum
/// `alpha_l = sum_i (-1)^(l-i) C(l,i) F(i) mod m` on the zero-padded value
/// vector of length `max(n, m-1) + 1`.
pub fn newton_mahler(f: &SymmetricProfile, m: u64) -> Vec<u64> {
    let n = f.arity();
    let d = n.max(m as usize - 1);
    let rows = pascal(d);
    let mm = BigInt::from(m);
    (0..=d)
        .map(|l| {
            let mut acc = BigInt::zero();
            for i in 0..=l {
                let term = &rows[l][i] * i64::from(if i <= n { f.value(i) } else { 0 });
                if (l - i) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            let mut r = acc % &mm;
            if r.is_negative() {
                r += &mm;
            }
            r.to_u64().unwrap()
        })
        .collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Rank-deficiency test by plain Gaussian elimination over F_p.
pub fn invertible_mod_p(mut mat: Vec<Vec<u64>>, p: u64) -> bool {
    let n = mat.len();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| mat[r][col] % p != 0) else {
            return false;
        };
        mat.swap(col, pivot);
        let inv = pow_mod(mat[col][col] % p, p - 2, p);
        for j in col..n {
            mat[col][j] = mat[col][j] % p * inv % p;
        }
        for r in 0..n {
            if r != col && mat[r][col] % p != 0 {
                let factor = mat[r][col] % p;
                for j in col..n {
                    mat[r][j] = (mat[r][j] + (p - factor) * mat[col][j]) % p;
                }
            }
        }
    }
    true
}

/// All symmetric profiles on n bits except the two constants, ascending by
/// value-vector integer (bit w of the integer = F(w)).
pub fn nontrivial_profiles(n: usize) -> impl Iterator<Item = SymmetricProfile> {
    let top = (1u64 << (n + 1)) - 1;
    (1..top).map(move |mask| SymmetricProfile::from_mask(n, mask))
}

/// Every symmetric profile on n bits, constants included.
pub fn all_profiles(n: usize) -> impl Iterator<Item = SymmetricProfile> {
    (0..1u64 << (n + 1)).map(move |mask| SymmetricProfile::from_mask(n, mask))
}
