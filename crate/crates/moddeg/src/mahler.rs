//! Mahler expansions of symmetric functions over `Z_m` and the binomial
//! coefficient matrices of weight-modular functions.
//!
//! The expansion writes the weight profile F as sum_j alpha_j C(t, j) mod m.
//! Coefficients are forward finite differences of the zero-padded profile,
//! which solves the (unit-diagonal, triangular) defining system exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::boolfn::SymmetricProfile;
use crate::zmod::{euler_phi, generalized_binom, generalized_binom_mod, is_prime, lucas_binom, pow_mod};
use crate::{Error, Result};

/// Guard against accidental huge allocations; all suites stay far below.
const MAX_EXPANSION: u64 = 1 << 20;
/// Side cap for the mod-p coefficient matrices.
pub const MAX_MATRIX_SIDE: u64 = 256;
/// Size cap for exact integer determinants.
pub const MAX_DET_SIZE: usize = 64;

/// Mahler coefficients `alpha_0..alpha_d` of a weight profile over `Z_m`,
/// with `d = max(n, m-1)`. For `n < t <= d` the profile is padded with zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MahlerExpansion {
    modulus: u64,
    n: usize,
    alpha: Vec<u64>,
}

impl MahlerExpansion {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn source_arity(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> usize {
        self.alpha.len() - 1
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.alpha
    }

    /// Degree read off the coefficients: the largest `l <= n` with
    /// `alpha_l != 0`. Indices above the arity never count, even when the
    /// padded vector is longer.
    pub fn degree(&self) -> usize {
        (0..=self.n.min(self.alpha.len() - 1)).rev().find(|&l| self.alpha[l] != 0).unwrap_or(0)
    }

    /// Re-evaluates the defining system: the expansion must reproduce the
    /// profile on 0..=n and vanish on the padded range.
    pub fn satisfies_profile(&self, f: &SymmetricProfile) -> bool {
        if f.arity() != self.n {
            return false;
        }
        let m = self.modulus;
        let d = self.alpha.len() - 1;
        // row[j] = C(t, j) mod m, updated by the Pascal recurrence per t.
        let mut row = vec![0u64; d + 1];
        row[0] = 1 % m;
        for t in 0..=d {
            if t > 0 {
                for j in (1..=t.min(d)).rev() {
                    row[j] = (row[j] + row[j - 1]) % m;
                }
            }
            let lhs: u64 = self
                .alpha
                .iter()
                .zip(&row)
                .fold(0u128, |acc, (&a, &c)| (acc + a as u128 * c as u128) % m as u128)
                as u64;
            let expect = if t <= f.arity() { u64::from(f.value(t)) % m } else { 0 };
            if lhs != expect {
                return false;
            }
        }
        true
    }
}

/// The unique Mahler expansion of `f` over `Z_m`.
pub fn mahler_expand(f: &SymmetricProfile, m: u64) -> Result<MahlerExpansion> {
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    let n = f.arity();
    let d = (n as u64).max(m - 1);
    if d + 1 > MAX_EXPANSION {
        return Err(Error::CapExceeded { value: d + 1, cap: MAX_EXPANSION });
    }
    let d = d as usize;
    let mut v: Vec<u64> = (0..=d)
        .map(|t| if t <= n { u64::from(f.value(t)) % m } else { 0 })
        .collect();
    // In-place forward differences: after round j, v[j] = (Delta^j F)(0).
    for j in 1..=d {
        for i in (j..=d).rev() {
            v[i] = (v[i] + m - v[i - 1]) % m;
        }
    }
    Ok(MahlerExpansion { modulus: m, n, alpha: v })
}

/// deg_m(f) for a symmetric function, via its Mahler coefficients.
pub fn mahler_degree(f: &SymmetricProfile, m: u64) -> Result<usize> {
    Ok(mahler_expand(f, m)?.degree())
}

/// Degree of the weight-mod-`p^t` indicators over `Z_{p^k}`:
/// `(k-1) phi(p^t) + p^t - 1`, independent of the residue.
pub fn mod_degree(p: u64, t: u32, k: u32) -> Result<u64> {
    if t < 1 || k < 1 {
        return Err(Error::BadParameter("mod_degree needs t >= 1 and k >= 1".into()));
    }
    Ok((k as u64 - 1) * euler_phi(p, t)? + p.pow(t) - 1)
}

/// Mahler coefficients of the indicator of `|x| = a (mod p^t)` over `Z_{p^k}`.
///
/// Before returning, the vector is cross-checked against the residue-0
/// coefficients through the binomial shift identity
/// `alpha_l^(a) = sum_i C(-a, i) alpha_(i+l)^(0)` for `l <= d` with
/// `d = (k-1) phi(p^t) + p^t - 1` (the identity is a statement about the
/// coefficients up to the common degree, not about the padded tail), and in
/// particular `alpha_d^(a) = alpha_d^(0)`. A mismatch is a fatal
/// [`Error::CheckFailed`].
pub fn mod_mahler_coeffs(a: u64, p: u64, t: u32, k: u32, n: usize) -> Result<Vec<u64>> {
    let d = mod_degree(p, t, k)?;
    let pt = p.pow(t);
    if a >= pt {
        return Err(Error::BadParameter(format!("residue {a} out of range for modulus {pt}")));
    }
    if (n as u64) < d {
        return Err(Error::BadParameter(format!("need n >= {d}, got {n}")));
    }
    let m = p.pow(k);
    let alpha_a = mahler_expand(&SymmetricProfile::mod_fn(n, a, pt)?, m)?.alpha;
    let alpha_0 = mahler_expand(&SymmetricProfile::mod_fn(n, 0, pt)?, m)?.alpha;
    let d = d as usize;
    let shift: Vec<u64> = (0..=d as u64)
        .map(|i| generalized_binom_mod(-(a as i64), i, m).map(|r| r.value()))
        .collect::<Result<_>>()?;
    for l in 0..=d {
        let rhs = (0..=d - l).fold(0u128, |acc, i| {
            (acc + shift[i] as u128 * alpha_0[i + l] as u128) % m as u128
        }) as u64;
        if alpha_a[l] != rhs {
            return Err(Error::CheckFailed(format!(
                "shift identity failed at l={l} for residue {a} mod {pt} over Z_{m}"
            )));
        }
    }
    if alpha_a[d] != alpha_0[d] {
        return Err(Error::CheckFailed("top coefficients differ across residues".into()));
    }
    Ok(alpha_a)
}

/// The `p^t x p^t` matrix over `F_p` whose column `j` holds the Mahler
/// coefficients of the indicator of `|x| = j (mod p^t)`:
/// entry `(i, j) = C(p^t-1-j, p^t-1-i) mod p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffMatrix {
    p: u64,
    t: u32,
    size: usize,
    entries: Vec<u64>,
}

impl CoeffMatrix {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn power(&self) -> u32 {
        self.t
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.size + j]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.size).map(|i| self.get(i, j)).collect()
    }

    /// Row-major CSV with a leading comment line naming the matrix.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# A_{{{}^{}}} mod {}\n", self.p, self.t, self.p);
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn coeff_matrix(p: u64, t: u32) -> Result<CoeffMatrix> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if t < 1 {
        return Err(Error::BadParameter("coeff_matrix needs t >= 1".into()));
    }
    let size = p.pow(t);
    if size > MAX_MATRIX_SIDE {
        return Err(Error::CapExceeded { value: size, cap: MAX_MATRIX_SIDE });
    }
    let size = size as usize;
    let top = (size - 1) as u64;
    let mut entries = vec![0u64; size * size];
    for i in 0..size {
        for j in 0..size {
            entries[i * size + j] = lucas_binom(top - j as u64, top - i as u64, p)?.value();
        }
    }
    Ok(CoeffMatrix { p, t, size, entries })
}

/// Checks that the matrix for `p^t` is the `t`-fold tensor power of the one
/// for `p`, entrywise mod `p`. Returns the first mismatching entry if any.
pub fn tensor_check(p: u64, t: u32) -> Result<(bool, Option<(usize, usize)>)> {
    if t < 2 {
        return Err(Error::BadParameter("tensor_check needs t >= 2".into()));
    }
    let big = coeff_matrix(p, t)?;
    let base = coeff_matrix(p, 1)?;
    let side = base.size();
    for i in 0..big.size() {
        for j in 0..big.size() {
            let mut want = 1u64;
            let (mut iv, mut jv) = (i, j);
            for _ in 0..t {
                want = want * base.get(iv % side, jv % side) % p;
                iv /= side;
                jv /= side;
            }
            if big.get(i, j) != want {
                return Ok((false, Some((i, j))));
            }
        }
    }
    Ok((true, None))
}

/// True iff the matrix is invertible over `F_p` (Gaussian elimination with
/// exact residue arithmetic).
fn invertible_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> bool {
    let n = m.len();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] % p != 0) else {
            return false;
        };
        m.swap(col, piv);
        let inv = pow_mod(m[col][col] as u128, p - 2, p as u128) as u64;
        for r in col + 1..n {
            let factor = m[r][col] % p * inv % p;
            for c in col..n {
                let sub = factor as u128 * m[col][c] as u128 % p as u128;
                m[r][c] = ((m[r][c] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
    }
    true
}

/// Exact determinant of the `size x size` matrix with entry
/// `(i, j) = C(-j, i)`. Fraction-free (Bareiss) elimination over `BigInt`;
/// the result is always +1 or -1.
pub fn binom_det(size: usize) -> Result<BigInt> {
    if size < 1 {
        return Err(Error::BadParameter("determinant needs size >= 1".into()));
    }
    if size > MAX_DET_SIZE {
        return Err(Error::CapExceeded { value: size as u64, cap: MAX_DET_SIZE as u64 });
    }
    let n = size;
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| generalized_binom(-(j as i64), i as u64)).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign < 0 { -det } else { det })
}

/// Invertibility over `F_p` of the square matrix with entry
/// `(r, c) = C(a_c, j + r)`, for distinct residues `a_c >= j` and
/// `j + len(a) - 1 < p`. Always true under these preconditions.
pub fn binom_submatrix_invertible(p: u64, j: u64, a_list: &[u64]) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let k = a_list.len();
    if k == 0 {
        return Err(Error::BadParameter("need at least one residue".into()));
    }
    let mut sorted = a_list.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return Err(Error::BadParameter("residues must be distinct".into()));
    }
    if a_list.iter().any(|&a| a < j || a >= p) {
        return Err(Error::BadParameter("residues must lie in [j, p)".into()));
    }
    if j + k as u64 - 1 >= p {
        return Err(Error::BadParameter(format!("need j + len - 1 < p, got {} >= {p}", j + k as u64 - 1)));
    }
    let mat: Vec<Vec<u64>> = (0..k)
        .map(|r| {
            a_list
                .iter()
                .map(|&a| lucas_binom(a, j + r as u64, p).map(|x| x.value()))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    Ok(invertible_mod_p(mat, p))
}

/// An index `l` in `[n/2 + 1, n]` where the coefficient-matrix image
/// `A_p * v` is nonzero mod `p`. Exists whenever `v` is a 0/1 vector of
/// length `p`, not constant on `0..=n`, and `n < p - 1`; a missing witness
/// is reported as [`Error::CheckFailed`].
pub fn mid_coeff_witness(p: u64, n: usize, v: &[u8]) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if v.len() != p as usize || v.iter().any(|&b| b > 1) {
        return Err(Error::BadParameter(format!("v must be a 0/1 vector of length {p}")));
    }
    if n as u64 >= p - 1 {
        return Err(Error::BadParameter("need n < p - 1".into()));
    }
    if n < 1 || v[..=n].iter().all(|&b| b == v[0]) {
        return Err(Error::BadParameter("v must take both values on 0..=n".into()));
    }
    let a = coeff_matrix(p, 1)?;
    for l in n / 2 + 1..=n {
        let dot = (0..p as usize).fold(0u64, |acc, j| (acc + a.get(l, j) * u64::from(v[j])) % p);
        if dot != 0 {
            return Ok(l);
        }
    }
    Err(Error::CheckFailed(format!("no nonzero image coordinate in [{}, {n}]", n / 2 + 1)))
}

/// Degree and divisibility consequences of periodicity: a `p^t`-periodic
/// profile must satisfy `deg_{p^k} <= (k-1) phi(p^t) + p^t - 1`, and its
/// Mahler coefficients over `Z_{p^k}` must obey `p^j | alpha_l` whenever
/// `j phi(p^t) + p^t <= l <= n`. Returns whether both hold, so `false`
/// flags a genuine violation. Only the intrinsic range `l <= n` is
/// checked: coefficients above the arity depend on the zero-padding choice
/// rather than on the function (a padded 5-bit constant has `alpha_6 = -1`
/// over `Z_9`), so no divisibility claim survives there.
pub fn periodic_divisibility(f: &SymmetricProfile, p: u64, t: u32, k: u32) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if t < 1 || k < 1 {
        return Err(Error::BadParameter("need t >= 1 and k >= 1".into()));
    }
    let pt = p.pow(t);
    if !f.is_periodic(pt) {
        return Err(Error::BadParameter(format!("profile is not {pt}-periodic")));
    }
    let phi = euler_phi(p, t)?;
    let exp = mahler_expand(f, p.pow(k))?;
    if (exp.degree() as u64) > (k as u64 - 1) * phi + pt - 1 {
        return Ok(false);
    }
    let upto = exp.alpha.len().min(f.arity() + 1);
    for j in 1..=k {
        let pj = p.pow(j);
        let from = (j as u64 * phi + pt) as usize;
        for l in from..upto {
            if exp.alpha[l] % pj != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
