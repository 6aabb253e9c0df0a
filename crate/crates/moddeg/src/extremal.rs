//! Periodicity analysis, exhaustive verification suites over symmetric
//! profiles, a Diophantine construction of low composite-degree functions,
//! and a search for symmetric restrictions of arbitrary truth tables.
//!
//! Every suite enumerates its whole parameter space and returns a
//! [`VerificationReport`] whose `pass` flag summarizes the asserted bound.
//! Enumeration order is ascending profile mask; parallel runs split the mask
//! range into contiguous chunks and merge in chunk order, so reports are
//! byte-identical regardless of the worker count.

use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};

use crate::boolfn::{Restriction, SymmetricProfile, TruthTable};
use crate::mahler;
use crate::zmod::{self, Modulus};
use crate::{Error, Result};

/// Cap for suites that enumerate all `2^(n+1)` symmetric profiles once.
pub const MAX_SCAN_ARITY: usize = 20;
/// Cap for suites that run several expansions per profile.
pub const MAX_HEAVY_SCAN_ARITY: usize = 18;
/// Cap for the exhaustive truth-table suite (`2^(2^n)` tables).
pub const MAX_TABLE_SCAN_ARITY: usize = 4;
/// Largest index scanned by the Diophantine search.
pub const MAX_KRONECKER_L: u64 = 1_000_000;
/// Profile size cap for the constructed low-degree witness.
pub const MAX_CONSTRUCT_ARITY: u64 = 4096;
/// Arity cap for the symmetric-restriction search.
pub const MAX_EMBED_ARITY: usize = 14;

const WITNESS_CAP: usize = 8;
const EMBED_EXHAUSTIVE_ARITY: usize = 8;
const EMBED_STARTS: usize = 16;

/// All genuine periods of a profile plus its least base-power period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodReport {
    pub n: usize,
    pub base: u64,
    /// Every period `l <= n`, ascending. Larger `l` are vacuously periods.
    pub periods: Vec<usize>,
    /// Least power of `base` that is a period, possibly a vacuous one
    /// exceeding `n`.
    pub base_period: u64,
}

/// Least power of `base` (including `base^0 = 1`) that is a period of `f`.
/// Any value above the arity is vacuously a period, so the result is at most
/// the first power exceeding `n`.
pub fn base_period(f: &SymmetricProfile, base: u64) -> Result<u64> {
    if base < 2 {
        return Err(Error::BadModulus(base));
    }
    let n = f.arity() as u64;
    let mut pw = 1u64;
    loop {
        if pw > n || f.is_periodic(pw) {
            return Ok(pw);
        }
        pw *= base;
    }
}

/// Collects every period of `f` up to its arity together with the least
/// `base`-power period.
pub fn period_report(f: &SymmetricProfile, base: u64) -> Result<PeriodReport> {
    let n = f.arity();
    Ok(PeriodReport {
        n,
        base,
        periods: (1..=n).filter(|&l| f.is_periodic(l as u64)).collect(),
        base_period: base_period(f, base)?,
    })
}

/// Checks the coprime-periods collapse on one profile: if `f` is both
/// `a`-periodic and `b`-periodic with `gcd(a,b) = 1` and `n >= a+b-2`, it
/// must be constant. Returns whether the implication holds for `f`.
pub fn coprime_periods_check(f: &SymmetricProfile, a: u64, b: u64) -> Result<bool> {
    if a == 0 || b == 0 || a.gcd(&b) != 1 {
        return Err(Error::BadParameter(format!("periods {a} and {b} must be positive and coprime")));
    }
    if (f.arity() as u64) + 2 < a + b {
        return Err(Error::BadParameter(format!("need arity >= {}", a + b - 2)));
    }
    Ok(!(f.is_periodic(a) && f.is_periodic(b)) || f.is_trivial())
}

/// Outcome of one exhaustive verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema_version: String,
    pub claim: String,
    pub params: Value,
    pub examined: u64,
    pub min_observed: i64,
    pub bound: i64,
    pub witnesses: Vec<String>,
    pub pass: bool,
}

impl VerificationReport {
    fn new(
        claim: &str,
        params: Value,
        examined: u64,
        min_observed: i64,
        bound: i64,
        witnesses: Vec<String>,
        pass: bool,
    ) -> Self {
        VerificationReport {
            schema_version: "1".into(),
            claim: claim.into(),
            params,
            examined,
            min_observed,
            bound,
            witnesses,
            pass,
        }
    }

    /// Suites that count counterexamples rather than minimize encode the
    /// violation count as a negative `min_observed` against a zero bound, so
    /// `pass == (min_observed >= bound)` holds for every suite.
    fn from_violations(claim: &str, params: Value, scan: ViolationScan) -> Self {
        VerificationReport::new(
            claim,
            params,
            scan.examined,
            -(scan.violations as i64),
            0,
            scan.witnesses,
            scan.violations == 0,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Splits `0..total` into at most `jobs` contiguous chunks, folds each chunk
/// on its own thread, and returns the per-chunk results in range order.
fn par_fold<T, F>(total: u64, jobs: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    let jobs = jobs.clamp(1, 64).min(total.max(1) as usize);
    if jobs <= 1 {
        return vec![work(0..total)];
    }
    let chunk = total / jobs as u64;
    let rem = total % jobs as u64;
    let mut bounds = vec![0u64];
    for i in 0..jobs as u64 {
        bounds.push(bounds[i as usize] + chunk + u64::from(i < rem));
    }
    let work = &work;
    std::thread::scope(|scope| {
        let handles: Vec<_> = bounds
            .windows(2)
            .map(|w| {
                let (lo, hi) = (w[0], w[1]);
                scope.spawn(move || work(lo..hi))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    })
}

/// Running minimum plus the first few items attaining it. `tight` remembers
/// whether any minimizer also satisfied a suite-specific side predicate.
#[derive(Debug, Clone, Default)]
struct MinScan {
    examined: u64,
    min: Option<i64>,
    witnesses: Vec<String>,
    tight: bool,
}

impl MinScan {
    fn observe(&mut self, value: i64, side: bool, witness: impl FnOnce() -> String) {
        self.examined += 1;
        if self.min.is_none_or(|m| value < m) {
            self.min = Some(value);
            self.witnesses.clear();
            self.witnesses.push(witness());
            self.tight = side;
        } else if self.min == Some(value) {
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(witness());
            }
            self.tight |= side;
        }
    }

    /// Order-sensitive merge: `self` must cover the range preceding `other`,
    /// which makes the kept witnesses identical to a sequential scan.
    fn merge(mut self, other: MinScan) -> MinScan {
        self.examined += other.examined;
        let (Some(a), Some(b)) = (self.min, other.min) else {
            if other.min.is_some() {
                return MinScan { examined: self.examined, ..other };
            }
            return self;
        };
        if b < a {
            return MinScan { examined: self.examined, ..other };
        }
        if b == a {
            for w in other.witnesses {
                if self.witnesses.len() < WITNESS_CAP {
                    self.witnesses.push(w);
                }
            }
            self.tight |= other.tight;
        }
        self
    }
}

/// Counterexample counter with the first few offending items.
#[derive(Debug, Clone, Default)]
struct ViolationScan {
    examined: u64,
    violations: u64,
    witnesses: Vec<String>,
}

impl ViolationScan {
    fn observe(&mut self, violated: bool, witness: impl FnOnce() -> String) {
        self.examined += 1;
        if violated {
            self.violations += 1;
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(witness());
            }
        }
    }

    fn merge(mut self, other: ViolationScan) -> ViolationScan {
        self.examined += other.examined;
        self.violations += other.violations;
        for w in other.witnesses {
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(w);
            }
        }
        self
    }
}

/// Enumerates every non-trivial profile mask on `n+1` points: the two
/// constants are the all-zero and all-one masks, everything else counts.
fn scan_min<F>(n: usize, jobs: usize, eval: F) -> MinScan
where
    F: Fn(u64, &mut Vec<u64>) -> (i64, bool) + Sync,
{
    let total = (1u64 << (n + 1)) - 2;
    par_fold(total, jobs, |range| {
        let mut scan = MinScan::default();
        let mut buf = Vec::new();
        for off in range {
            let mask = off + 1;
            let (value, side) = eval(mask, &mut buf);
            scan.observe(value, side, || SymmetricProfile::from_mask(n, mask).to_string());
        }
        scan
    })
    .into_iter()
    .fold(MinScan::default(), MinScan::merge)
}

fn scan_violations<F>(n: usize, jobs: usize, eval: F) -> ViolationScan
where
    F: Fn(u64, &mut Vec<u64>) -> bool + Sync,
{
    let total = (1u64 << (n + 1)) - 2;
    par_fold(total, jobs, |range| {
        let mut scan = ViolationScan::default();
        let mut buf = Vec::new();
        for off in range {
            let mask = off + 1;
            let violated = eval(mask, &mut buf);
            scan.observe(violated, || SymmetricProfile::from_mask(n, mask).to_string());
        }
        scan
    })
    .into_iter()
    .fold(ViolationScan::default(), ViolationScan::merge)
}

/// Profile periodicity straight off the mask bits.
fn mask_periodic(n: usize, mask: u64, l: usize) -> bool {
    l >= 1 && (l..=n).all(|i| (mask >> i ^ mask >> (i - l)) & 1 == 0)
}

/// Least base-power period read off the mask bits; vacuous powers above `n`
/// qualify, mirroring [`base_period`].
fn mask_base_period(n: usize, mask: u64, base: u64) -> u64 {
    let mut pw = 1u64;
    loop {
        if pw > n as u64 || mask_periodic(n, mask, pw as usize) {
            return pw;
        }
        pw *= base;
    }
}

/// Degree over `Z_m` read off the first `n+1` profile values. The forward
/// difference at index `j <= n` never touches the zero padding the full
/// expansion would append, so the truncated tableau yields the same
/// `alpha_0..alpha_n` and hence the same degree.
fn degree_from_mask(n: usize, mask: u64, m: u64, buf: &mut Vec<u64>) -> usize {
    buf.clear();
    buf.extend((0..=n).map(|i| mask >> i & 1));
    for j in 1..=n {
        for i in (j..=n).rev() {
            buf[i] = if buf[i] >= buf[i - 1] { buf[i] - buf[i - 1] } else { m - (buf[i - 1] - buf[i]) };
        }
    }
    (0..=n).rev().find(|&j| buf[j] % m != 0).unwrap_or(0)
}

fn check_scan_arity(n: usize, cap: usize) -> Result<()> {
    if n == 0 || n > cap {
        return Err(Error::CapExceeded { value: n as u64, cap: cap as u64 });
    }
    Ok(())
}

fn checked_prime_power(p: u64, k: u32) -> Result<u64> {
    if !zmod::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::BadParameter("exponent must be at least 1".into()));
    }
    p.checked_pow(k)
        .ok_or_else(|| Error::BadParameter(format!("{p}^{k} overflows a machine word")))
}

/// Smallest arity from which the exhaustive minimum-degree claim is asserted
/// for modulus `p^k`: `(k-1) phi(p^mu) + p^mu - 1` where `mu` is the least
/// exponent with `p^mu >= (p-1)k`, clamped to `mu >= 1`. That choice of `mu`
/// is forced: any degree up to `(p-1)k - 1` must stay at most `p^mu - 1` for
/// the low-degree periodicity step to apply. Rounding `mu` down to
/// `p^mu = (p-1)k - 1` (possible when that value is a prime power) admits
/// counterexamples; NAE on 3 bits has degree `2` over `Z_8`, below
/// `(p-1)k = 3`, yet is not `2`-periodic. Undefined for `(p-1)k < 2`.
pub fn threshold_n(p: u64, k: u32) -> Result<u64> {
    if !zmod::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::BadParameter("need k >= 1".into()));
    }
    let target = (p - 1)
        .checked_mul(u64::from(k))
        .ok_or_else(|| Error::BadParameter("(p-1)k overflows".into()))?;
    if target < 2 {
        return Err(Error::BadParameter(format!(
            "threshold is undefined for p={p}, k={k}: (p-1)k must be at least 2"
        )));
    }
    let mut mu = 1u32;
    let mut pw = p;
    while pw < target {
        pw = pw
            .checked_mul(p)
            .ok_or_else(|| Error::BadParameter("p^mu overflows".into()))?;
        mu += 1;
    }
    mahler::mod_degree(p, mu, k)
}

/// Exhaustive minimum of `deg_{p^k}` over all non-trivial symmetric profiles
/// on `n` bits. From the threshold arity on, asserts the minimum equals
/// `(p-1)k` and that some `p`-periodic profile attains it; below the
/// threshold (or where the threshold formula is undefined) the scan is
/// observational and always passes.
pub fn verify_pk_bound(p: u64, k: u32, n: usize, jobs: usize) -> Result<VerificationReport> {
    let m = checked_prime_power(p, k)?;
    check_scan_arity(n, MAX_SCAN_ARITY)?;
    let threshold = match threshold_n(p, k) {
        Ok(t) => Some(t),
        Err(Error::BadParameter(_)) => None,
        Err(e) => return Err(e),
    };
    let asserted = threshold.is_some_and(|t| n as u64 >= t);
    let scan = scan_min(n, jobs, |mask, buf| {
        let deg = degree_from_mask(n, mask, m, buf) as i64;
        (deg, mask_periodic(n, mask, p as usize))
    });
    let min = scan.min.expect("non-trivial profiles exist for n >= 1");
    let bound = if asserted { ((p - 1) * u64::from(k)) as i64 } else { 0 };
    let pass = if asserted { min == bound && scan.tight } else { true };
    Ok(VerificationReport::new(
        "pk_bound",
        json!({
            "p": p,
            "k": k,
            "n": n,
            "modulus": m,
            "threshold": threshold,
            "asserted": asserted,
            "min_attained_by_p_periodic": scan.tight,
        }),
        scan.examined,
        min,
        bound,
        scan.witnesses,
        pass,
    ))
}

/// Exhaustive check that low degree forces periodicity, plus the degree
/// floor for profiles whose least `p`-power period is exactly `p^t`:
/// `deg_{p^k} <= p^t - 1` implies `p^t`-periodicity, and a profile with
/// least period `p^t` on `n >= (k-1) phi(p^t) + p^t - 1` bits has
/// `deg_{p^k} >= (k-2) phi(p^t) + p^t`.
pub fn verify_lowdeg(p: u64, k: u32, t: u32, n: usize, jobs: usize) -> Result<VerificationReport> {
    let m = checked_prime_power(p, k)?;
    let pt = checked_prime_power(p, t)?;
    check_scan_arity(n, MAX_HEAVY_SCAN_ARITY)?;
    let phi = zmod::euler_phi(p, t)?;
    let floor_arity = mahler::mod_degree(p, t, k)?;
    let floor_degree = (i64::from(k) - 2) * phi as i64 + pt as i64;
    let scan = scan_violations(n, jobs, |mask, buf| {
        let deg = degree_from_mask(n, mask, m, buf);
        if deg as u64 <= pt - 1 && !mask_periodic(n, mask, pt as usize) {
            return true;
        }
        mask_base_period(n, mask, p) == pt && n as u64 >= floor_arity && (deg as i64) < floor_degree
    });
    Ok(VerificationReport::from_violations(
        "lowdeg",
        json!({
            "p": p,
            "k": k,
            "t": t,
            "n": n,
            "modulus": m,
            "period": pt,
            "floor_arity": floor_arity,
            "floor_degree": floor_degree,
        }),
        scan,
    ))
}

/// Exact form of the period-degree alternative for prime `p`:
/// `2(p-1) deg_p(f) >= min{ n(p-1), 2(p-1)^2 pi_p(f) / p }`.
fn period_degree_holds(n: usize, p: u64, deg: usize, pi: u64) -> bool {
    let p = u128::from(p);
    let lhs = 2 * (p - 1) * deg as u128;
    let rhs = (n as u128 * (p - 1)).min(2 * (p - 1) * (p - 1) * u128::from(pi) / p);
    lhs >= rhs
}

/// Exhaustive minimum of `deg_{pq}` over non-trivial symmetric profiles,
/// asserted against the rational floor `n(p-1)(q-1) / (2(p-1)(q-1) + (p-1)
/// + (q-1))`, together with the period-degree alternative for both primes.
pub fn verify_pq_bound(p: u64, q: u64, n: usize, jobs: usize) -> Result<VerificationReport> {
    if !zmod::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !zmod::is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if p == q {
        return Err(Error::BadParameter("need two distinct primes".into()));
    }
    check_scan_arity(n, MAX_HEAVY_SCAN_ARITY)?;
    let m = p
        .checked_mul(q)
        .ok_or_else(|| Error::BadParameter("pq overflows a machine word".into()))?;
    let num = n as u128 * (p as u128 - 1) * (q as u128 - 1);
    let den = 2 * (p as u128 - 1) * (q as u128 - 1) + (p as u128 - 1) + (q as u128 - 1);
    let bound = num.div_ceil(den) as i64;
    let scan = scan_min(n, jobs, |mask, buf| (degree_from_mask(n, mask, m, buf) as i64, false));
    let alternative = scan_violations(n, jobs, |mask, buf| {
        [p, q].into_iter().any(|r| {
            let deg = degree_from_mask(n, mask, r, buf);
            !period_degree_holds(n, r, deg, mask_base_period(n, mask, r))
        })
    });
    let min = scan.min.expect("non-trivial profiles exist for n >= 1");
    Ok(VerificationReport::new(
        "pq_bound",
        json!({
            "p": p,
            "q": q,
            "n": n,
            "modulus": m,
            "rational_bound": { "num": num as u64, "den": den as u64 },
            "period_degree_violations": alternative.violations,
        }),
        scan.examined,
        min,
        bound,
        scan.witnesses,
        min >= bound && alternative.violations == 0,
    ))
}

/// Standalone exhaustive check of the period-degree alternative for one
/// prime over all non-trivial symmetric profiles on `n` bits.
pub fn verify_period_degree(p: u64, n: usize, jobs: usize) -> Result<VerificationReport> {
    if !zmod::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_scan_arity(n, MAX_HEAVY_SCAN_ARITY)?;
    let scan = scan_violations(n, jobs, |mask, buf| {
        let deg = degree_from_mask(n, mask, p, buf);
        !period_degree_holds(n, p, deg, mask_base_period(n, mask, p))
    });
    Ok(VerificationReport::from_violations(
        "period_degree",
        json!({ "p": p, "n": n }),
        scan,
    ))
}

/// Exhaustive check that coprime periods `a, b` with `a + b - 2 <= n` force
/// constancy: counts non-trivial profiles periodic in both.
pub fn verify_periodicity(n: usize, jobs: usize) -> Result<VerificationReport> {
    check_scan_arity(n, MAX_SCAN_ARITY)?;
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .filter(|&(a, b)| a.gcd(&b) == 1 && a + b <= n + 2)
        .collect();
    let scan = scan_violations(n, jobs, |mask, _| {
        pairs.iter().any(|&(a, b)| mask_periodic(n, mask, a) && mask_periodic(n, mask, b))
    });
    Ok(VerificationReport::from_violations(
        "periodicity",
        json!({ "n": n, "pairs": pairs.len() }),
        scan,
    ))
}

/// Fixed-grid matrix identities: tensor factorization of the coefficient
/// matrices, unimodularity of the signed binomial matrix, invertibility of
/// every admissible binomial submatrix, and existence of an upper-half
/// nonzero coordinate for every admissible 0/1 vector.
pub fn verify_matrices() -> Result<VerificationReport> {
    let mut scan = ViolationScan::default();
    let tensor_grid = [(2u64, 2u32), (2, 3), (3, 2), (3, 3), (5, 2), (5, 3)];
    for (p, t) in tensor_grid {
        let (ok, witness) = mahler::tensor_check(p, t)?;
        scan.observe(!ok, || format!("tensor({p},{t}) mismatch at {witness:?}"));
    }
    for size in 1..=20 {
        let det = mahler::binom_det(size)?;
        let unimodular = det == BigInt::one() || det == -BigInt::one();
        scan.observe(!unimodular, || format!("det(C_{size}) = {det}"));
    }
    let submatrix_primes = [2u64, 3, 5, 7, 11];
    for p in submatrix_primes {
        for j in 0..p {
            let pool: Vec<u64> = (j..p).collect();
            for pick in 1u64..1 << pool.len() {
                let a_list: Vec<u64> = pool
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| pick >> i & 1 == 1)
                    .map(|(_, &a)| a)
                    .collect();
                let ok = mahler::binom_submatrix_invertible(p, j, &a_list)?;
                scan.observe(!ok, || format!("submatrix(p={p}, j={j}, a={a_list:?})"));
            }
        }
    }
    let witness_primes = [5u64, 7, 11];
    for p in witness_primes {
        for n in 1..p as usize - 1 {
            for pick in 0u64..1 << p {
                let v: Vec<u8> = (0..p as usize).map(|i| (pick >> i & 1) as u8).collect();
                if v[..=n].iter().all(|&b| b == v[0]) {
                    continue;
                }
                let found = match mahler::mid_coeff_witness(p, n, &v) {
                    Ok(_) => true,
                    Err(Error::CheckFailed(_)) => false,
                    Err(e) => return Err(e),
                };
                scan.observe(!found, || format!("midcoeff(p={p}, n={n}, v={v:?})"));
            }
        }
    }
    Ok(VerificationReport::from_violations(
        "matrices",
        json!({
            "tensor_grid": tensor_grid.iter().map(|&(p, t)| json!([p, t])).collect::<Vec<_>>(),
            "det_sizes": 20,
            "submatrix_primes": submatrix_primes,
            "witness_primes": witness_primes,
        }),
        scan,
    ))
}

/// Per-profile outcome of the cross-modulus degree relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationChecks {
    pub p: u64,
    pub q: u64,
    pub deg_p: usize,
    pub deg_q: usize,
    /// `deg_q * ceil(log2 p) * deg_p * p^(2 deg_p) >= n`
    pub product_pq: bool,
    /// same with the roles of `p` and `q` swapped
    pub product_qp: bool,
    /// `p deg_p + q deg_q > n`
    pub linear: bool,
}

impl RelationChecks {
    pub fn all_hold(&self) -> bool {
        self.product_pq && self.product_qp && self.linear
    }
}

fn ceil_log2(p: u64) -> u64 {
    u64::from(64 - (p - 1).leading_zeros())
}

/// `deg_q * ceil(log2 p) * deg_p * p^(2 deg_p) >= n` in exact arithmetic.
fn product_relation_holds(n: usize, p: u64, deg_p: usize, deg_q: usize) -> bool {
    let lhs = BigInt::from(deg_q) * ceil_log2(p) * deg_p * BigInt::from(p).pow(2 * deg_p as u32);
    lhs >= BigInt::from(n)
}

fn linear_relation_holds(n: usize, p: u64, deg_p: usize, q: u64, deg_q: usize) -> bool {
    u128::from(p) * deg_p as u128 + u128::from(q) * deg_q as u128 > n as u128
}

/// Evaluates the product and linear inequalities relating `deg_p` and
/// `deg_q` on one non-trivial symmetric profile.
pub fn relation_checks(p: u64, q: u64, f: &SymmetricProfile) -> Result<RelationChecks> {
    if !zmod::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !zmod::is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if p == q {
        return Err(Error::BadParameter("need two distinct primes".into()));
    }
    if f.is_trivial() {
        return Err(Error::Degenerate);
    }
    let n = f.arity();
    let deg_p = mahler::mahler_degree(f, p)?;
    let deg_q = mahler::mahler_degree(f, q)?;
    Ok(RelationChecks {
        p,
        q,
        deg_p,
        deg_q,
        product_pq: product_relation_holds(n, p, deg_p, deg_q),
        product_qp: product_relation_holds(n, q, deg_q, deg_p),
        linear: linear_relation_holds(n, p, deg_p, q, deg_q),
    })
}

/// Exhaustive sweep of [`relation_checks`] over all non-trivial symmetric
/// profiles on `n` bits.
pub fn verify_relations(p: u64, q: u64, n: usize, jobs: usize) -> Result<VerificationReport> {
    if !zmod::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !zmod::is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if p == q {
        return Err(Error::BadParameter("need two distinct primes".into()));
    }
    check_scan_arity(n, MAX_HEAVY_SCAN_ARITY)?;
    let scan = scan_violations(n, jobs, |mask, buf| {
        let deg_p = degree_from_mask(n, mask, p, buf);
        let deg_q = degree_from_mask(n, mask, q, buf);
        !(product_relation_holds(n, p, deg_p, deg_q)
            && product_relation_holds(n, q, deg_q, deg_p)
            && linear_relation_holds(n, p, deg_p, q, deg_q))
    });
    Ok(VerificationReport::from_violations(
        "relations",
        json!({ "p": p, "q": q, "n": n }),
        scan,
    ))
}

/// Sensitivity floor `s >= (log2 n - log2 log2 n + 1) / 2`, decided exactly:
/// the inequality is equivalent to `n^(2^(2s-1)) >= 2^n`.
fn sensitivity_floor_holds(n: usize, s: usize) -> bool {
    if s == 0 {
        return false;
    }
    let e = 2 * s as u32 - 1;
    if e >= 32 || 1u64 << e >= n as u64 {
        // n^(2^e) >= n^n >= 2^n for n >= 2
        return true;
    }
    BigInt::from(n).pow(1 << e) >= BigInt::one() << n
}

/// Checks the sensitivity floor on one non-degenerate truth table.
pub fn simon_check(f: &TruthTable) -> Result<bool> {
    if f.arity() < 2 {
        return Err(Error::BadParameter("need at least 2 variables".into()));
    }
    if !f.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    Ok(sensitivity_floor_holds(f.arity(), f.sensitivity()))
}

/// Exhaustive sensitivity-floor sweep over every non-degenerate truth table
/// on `n` variables.
pub fn verify_simon(n: usize, jobs: usize) -> Result<VerificationReport> {
    if n < 2 || n > MAX_TABLE_SCAN_ARITY {
        return Err(Error::CapExceeded { value: n as u64, cap: MAX_TABLE_SCAN_ARITY as u64 });
    }
    let total = 1u64 << (1 << n);
    let parts = par_fold(total, jobs, |range| {
        let mut scan = ViolationScan::default();
        for mask in range {
            let f = TruthTable::from_fn(n, |x| mask >> x & 1 == 1).expect("arity within cap");
            if !f.is_nondegenerate() {
                continue;
            }
            let ok = sensitivity_floor_holds(n, f.sensitivity());
            scan.observe(!ok, || f.to_string());
        }
        scan
    });
    let scan = parts.into_iter().fold(ViolationScan::default(), ViolationScan::merge);
    Ok(VerificationReport::from_violations("simon", json!({ "n": n }), scan))
}

/// Degree of the weight-residue indicator over its natural grid: for each
/// `(p, t, k)` with `d = (k-1) phi(p^t) + p^t - 1 <= 30`, the degree of
/// `MOD^{a, p^t}` over `Z_{p^k}` on `d` bits must equal `d` for every
/// residue `a`.
pub fn verify_mod_degree() -> Result<VerificationReport> {
    let mut scan = ViolationScan::default();
    for p in [2u64, 3, 5] {
        for t in 1..=2u32 {
            for k in 1..=3u32 {
                let d = mahler::mod_degree(p, t, k)?;
                if d > 30 {
                    continue;
                }
                let n = d as usize;
                let pt = p.pow(t);
                let m = p.pow(k);
                for a in 0..pt {
                    let f = SymmetricProfile::mod_fn(n, a, pt)?;
                    let deg = mahler::mahler_degree(&f, m)? as u64;
                    scan.observe(deg != d, || format!("mod({n},{a},{pt}) over Z_{m}: deg {deg} != {d}"));
                }
            }
        }
    }
    Ok(VerificationReport::from_violations(
        "mod_degree",
        json!({ "p_list": [2, 3, 5], "t_max": 2, "k_max": 3, "degree_cap": 30 }),
        scan,
    ))
}

/// Observational minimum of `deg_m` over all non-trivial symmetric profiles;
/// no bound is asserted.
pub fn min_degree_scan(m: u64, n: usize, jobs: usize) -> Result<VerificationReport> {
    let modulus = Modulus::new(m)?;
    check_scan_arity(n, MAX_SCAN_ARITY)?;
    let scan = scan_min(n, jobs, |mask, buf| (degree_from_mask(n, mask, m, buf) as i64, false));
    let min = scan.min.expect("non-trivial profiles exist for n >= 1");
    Ok(VerificationReport::new(
        "min_degree",
        json!({ "m": modulus.value(), "n": n }),
        scan.examined,
        min,
        0,
        scan.witnesses,
        true,
    ))
}

/// One accepted placement of the Diophantine search: for every prime factor
/// `p_i` of `m`, the least power `p_i^{r_i}` above `q^l` stays below
/// `p_i^eps * q^l`.
#[derive(Debug, Clone)]
pub struct KroneckerSolution {
    m: u64,
    q: u64,
    eps: (u64, u64),
    l: u64,
    exponents: Vec<(u64, u64)>,
    ratios: Vec<(BigInt, BigInt)>,
}

impl KroneckerSolution {
    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn aux_prime(&self) -> u64 {
        self.q
    }

    pub fn eps(&self) -> (u64, u64) {
        self.eps
    }

    pub fn index(&self) -> u64 {
        self.l
    }

    /// `(p_i, r_i)` per prime factor of `m`, ascending in `p_i`.
    pub fn exponents(&self) -> &[(u64, u64)] {
        &self.exponents
    }

    /// The exact ratios `p_i^{r_i} / q^l`, already in lowest terms since the
    /// numerator and denominator are powers of distinct primes.
    pub fn ratios(&self) -> &[(BigInt, BigInt)] {
        &self.ratios
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "q": self.q,
            "eps": { "num": self.eps.0, "den": self.eps.1 },
            "l": self.l,
            "exponents": self.exponents.iter().map(|&(p, r)| json!({ "p": p, "r": r })).collect::<Vec<_>>(),
            "ratios": self.ratios
                .iter()
                .map(|(num, den)| json!({ "num": num.to_string(), "den": den.to_string() }))
                .collect::<Vec<_>>(),
        })
    }
}

/// Exact acceptance test for one candidate index: computes the minimal
/// `r_i` with `p_i^{r_i} > q^l` and keeps the candidate iff
/// `p_i^{b r_i} < p_i^a * q^{b l}` for every factor, i.e. every ratio lies
/// in `(1, p_i^{a/b})`.
fn certify_candidate(
    primes: &[u64],
    m: u64,
    q: u64,
    eps: (u64, u64),
    logs: &[f64],
    l: u64,
) -> Result<Option<KroneckerSolution>> {
    let (a, b) = eps;
    let ql = BigInt::from(q).pow(l as u32);
    let qlb = ql.pow(b as u32);
    let mut exponents = Vec::with_capacity(primes.len());
    let mut ratios = Vec::with_capacity(primes.len());
    for (&p, &log) in primes.iter().zip(logs) {
        let seed = ((l as f64 * log).ceil() as i64).max(1) as u64;
        let mut r = seed;
        let mut pr = BigInt::from(p).pow(r as u32);
        while pr <= ql {
            pr *= p;
            r += 1;
        }
        while r > 1 {
            let down = &pr / p;
            if down > ql {
                pr = down;
                r -= 1;
            } else {
                break;
            }
        }
        let quality = pr.pow(b as u32) < BigInt::from(p).pow(a as u32) * &qlb;
        if !quality {
            return Ok(None);
        }
        exponents.push((p, r));
        ratios.push((pr, ql.clone()));
    }
    Ok(Some(KroneckerSolution { m, q, eps, l, exponents, ratios }))
}

/// Scans `l = 1..=l_max` for indices where every prime factor of `m` admits
/// a power in `(q^l, p_i^eps * q^l)`. A double-precision fractional-part
/// filter proposes candidates (with enough slack to never drop a true
/// solution at these magnitudes); acceptance is decided purely by exact
/// big-integer comparisons.
pub fn kronecker_search(
    m: &Modulus,
    q: u64,
    eps: (u64, u64),
    l_max: u64,
) -> Result<Vec<KroneckerSolution>> {
    if !m.is_square_free() {
        return Err(Error::BadModulus(m.value()));
    }
    if !zmod::is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if m.value() % q == 0 {
        return Err(Error::BadParameter("the auxiliary prime must not divide m".into()));
    }
    let g = eps.0.gcd(&eps.1);
    let (a, b) = if g > 0 { (eps.0 / g, eps.1 / g) } else { eps };
    if a == 0 || a >= b {
        return Err(Error::BadParameter("eps must be a rational in (0, 1)".into()));
    }
    if l_max == 0 || l_max > MAX_KRONECKER_L {
        return Err(Error::CapExceeded { value: l_max, cap: MAX_KRONECKER_L });
    }
    if l_max.saturating_mul(b) > 10_000_000 {
        return Err(Error::BadParameter(
            "l_max times the reduced eps denominator must stay within 10^7".into(),
        ));
    }
    let primes: Vec<u64> = m.factors().iter().map(|&(p, _)| p).collect();
    let logs: Vec<f64> = primes.iter().map(|&p| (q as f64).ln() / (p as f64).ln()).collect();
    let eps_f = a as f64 / b as f64;
    let mut out = Vec::new();
    for l in 1..=l_max {
        let plausible = logs.iter().all(|&log| (log * l as f64).fract() > 1.0 - eps_f - 1e-9);
        if !plausible {
            continue;
        }
        if let Some(sol) = certify_candidate(&primes, m.value(), q, (a, b), &logs, l)? {
            out.push(sol);
        }
    }
    Ok(out)
}

/// The constructed low-degree witness together with its verified
/// certificate.
#[derive(Debug, Clone)]
pub struct LowDegreeWitness {
    pub profile: SymmetricProfile,
    pub modulus: u64,
    pub q: u64,
    pub l: u64,
    /// Hamming weight the profile singles out: `q^l`.
    pub weight: u64,
    /// Verified period `p_i^{r_i}` per prime factor.
    pub periods: Vec<(u64, u64)>,
    /// `max_i p_i^{r_i} - 1`, an upper bound on `deg_m`.
    pub degree_bound: u64,
    /// Brute-forced `deg_m` when the profile is small enough to expand.
    pub brute_degree: Option<usize>,
}

impl LowDegreeWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.profile.arity(),
            "m": self.modulus,
            "q": self.q,
            "l": self.l,
            "weight": self.weight,
            "periods": self.periods.iter().map(|&(p, pw)| json!({ "p": p, "power": pw })).collect::<Vec<_>>(),
            "degree_bound": self.degree_bound,
            "brute_degree": self.brute_degree,
            "profile": self.profile.to_string(),
        })
    }
}

/// Builds the exact-weight indicator `EXACT(q^l)` on `n = 2 q^l` bits and
/// certifies its degree: each `p_i^{r_i}` exceeds the weight, so the profile
/// is `p_i^{r_i}`-periodic, which caps `deg_{p_i}` at `p_i^{r_i} - 1` and
/// hence `deg_m` at the largest such cap. For small `n` the degree is also
/// brute-forced and compared against the certificate.
pub fn construct_low_degree(sol: &KroneckerSolution) -> Result<LowDegreeWitness> {
    let weight = (sol.q as u128)
        .checked_pow(sol.l as u32)
        .filter(|&w| 2 * w <= u128::from(MAX_CONSTRUCT_ARITY))
        .ok_or(Error::CapExceeded { value: u64::MAX, cap: MAX_CONSTRUCT_ARITY })?
        as u64;
    let n = (2 * weight) as usize;
    let profile = SymmetricProfile::exact(n, weight as usize)?;
    let mut periods = Vec::with_capacity(sol.exponents.len());
    let mut degree_bound = 0u64;
    for &(p, r) in &sol.exponents {
        let pw = p.pow(r as u32);
        if pw <= weight {
            return Err(Error::BadParameter(format!(
                "{p}^{r} does not exceed the weight {weight}; the construction needs every prime power above q^l"
            )));
        }
        if !profile.is_periodic(pw) {
            return Err(Error::CheckFailed(format!("EXACT({weight}) is not {pw}-periodic")));
        }
        if !mahler::periodic_divisibility(&profile, p, r as u32, 1)? {
            return Err(Error::CheckFailed(format!(
                "periodicity does not cap deg_{p} of EXACT({weight}) at {}",
                pw - 1
            )));
        }
        periods.push((p, pw));
        degree_bound = degree_bound.max(pw - 1);
    }
    let brute_degree = if n <= 512 {
        let deg = mahler::mahler_degree(&profile, sol.m)?;
        if deg as u64 > degree_bound {
            return Err(Error::CheckFailed(format!(
                "brute-forced deg_{} = {deg} exceeds the certificate bound {degree_bound}",
                sol.m
            )));
        }
        Some(deg)
    } else {
        None
    };
    Ok(LowDegreeWitness {
        profile,
        modulus: sol.m,
        q: sol.q,
        l: sol.l,
        weight,
        periods,
        degree_bound,
        brute_degree,
    })
}

/// A restriction of a truth table to a kept variable set that turned out
/// symmetric and non-trivial. Indices are 1-based, matching `Restriction`,
/// so the pair can be fed back into `Restriction::new` verbatim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    /// Kept variable indices, ascending.
    pub kept: Vec<usize>,
    /// Fixed values for the remaining variables.
    pub assignment: Vec<(usize, bool)>,
    pub profile: SymmetricProfile,
}

/// `kept` and `assignment` arrive as 0-based bit positions from the search
/// loops and are shifted to the 1-based variable numbering here.
fn build_embedding(f: &TruthTable, kept: Vec<usize>, assignment: Vec<(usize, bool)>) -> Result<Option<Embedding>> {
    let kept: Vec<usize> = kept.into_iter().map(|i| i + 1).collect();
    let assignment: Vec<(usize, bool)> = assignment.into_iter().map(|(i, v)| (i + 1, v)).collect();
    let r = Restriction::new(f.arity(), &kept, &assignment)?;
    let g = f.restrict(&r)?;
    match g.symmetric_profile() {
        Ok(profile) if !profile.is_trivial() => Ok(Some(Embedding { kept, assignment, profile })),
        _ => Ok(None),
    }
}

/// Exhaustive search over every kept set and assignment, largest kept set
/// first; ties resolved by ascending set mask, then ascending assignment.
fn embed_exhaustive(f: &TruthTable) -> Result<Option<Embedding>> {
    let n = f.arity();
    for size in (1..=n).rev() {
        for kept_mask in 0u32..1 << n {
            if kept_mask.count_ones() as usize != size {
                continue;
            }
            let kept: Vec<usize> = (0..n).filter(|&i| kept_mask >> i & 1 == 1).collect();
            let others: Vec<usize> = (0..n).filter(|&i| kept_mask >> i & 1 == 0).collect();
            for pick in 0u32..1 << others.len() {
                let assignment: Vec<(usize, bool)> =
                    others.iter().enumerate().map(|(i, &v)| (v, pick >> i & 1 == 1)).collect();
                if let Some(found) = build_embedding(f, kept.clone(), assignment)? {
                    return Ok(Some(found));
                }
            }
        }
    }
    Ok(None)
}

/// First same-weight pair of inputs with different values among the points
/// reachable from `x` by clearing bits of `s`, scanning submasks of `s` in
/// the standard descending order. `None` means every layer is constant.
fn layer_mismatch(f: &TruthTable, x: u32, s: u32) -> Option<(u32, u32)> {
    let mut first: Vec<Option<(u32, bool)>> = vec![None; s.count_ones() as usize + 1];
    let base = x & !s;
    let mut sub = s;
    loop {
        let input = base | sub;
        let value = f.value_at(input);
        let w = sub.count_ones() as usize;
        match first[w] {
            None => first[w] = Some((input, value)),
            Some((seen, v)) => {
                if v != value {
                    return Some((seen, input));
                }
            }
        }
        if sub == 0 {
            return None;
        }
        sub = (sub - 1) & s;
    }
}

/// Shrinks a sensitive-ones set until every down-layer is constant. The
/// lowest sensitive bit is never removed, so the loop ends with a set on
/// which the restriction is symmetric and (thanks to that protected
/// sensitive bit) non-constant.
fn descend(f: &TruthTable, x: u32, mut s: u32) -> u32 {
    let anchor = 1u32 << s.trailing_zeros();
    while let Some((u, w)) = layer_mismatch(f, x, s) {
        let removable = (u ^ w) & s & !anchor;
        debug_assert!(removable != 0, "same-weight witnesses differ in two kept positions");
        s &= !(1 << removable.trailing_zeros());
    }
    s
}

/// Greedy multi-start search for larger kept sets: start from the inputs
/// with the most sensitive one-bits and shrink until symmetric.
fn embed_greedy(f: &TruthTable) -> Result<Option<Embedding>> {
    let n = f.arity();
    let mut starts: Vec<(u32, u32)> = Vec::new();
    for x in 0..1u32 << n {
        let fx = f.value_at(x);
        let mut s = 0u32;
        for i in 0..n {
            if x >> i & 1 == 1 && f.value_at(x ^ (1 << i)) != fx {
                s |= 1 << i;
            }
        }
        if s != 0 {
            starts.push((x, s));
        }
    }
    starts.sort_by(|(xa, sa), (xb, sb)| {
        sb.count_ones().cmp(&sa.count_ones()).then(xa.cmp(xb))
    });
    starts.truncate(EMBED_STARTS);
    let mut best: Option<Embedding> = None;
    for &(x, s0) in &starts {
        let s = descend(f, x, s0);
        if best.as_ref().is_some_and(|b| b.kept.len() >= s.count_ones() as usize) {
            continue;
        }
        let kept: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
        let assignment: Vec<(usize, bool)> =
            (0..n).filter(|&i| s >> i & 1 == 0).map(|i| (i, x >> i & 1 == 1)).collect();
        if let Some(found) = build_embedding(f, kept, assignment)? {
            best = Some(found);
        }
    }
    Ok(best)
}

/// Finds a kept variable set `S` and an assignment to the rest such that the
/// restriction of `f` is symmetric and non-trivial, preferring large `S`.
/// Exhaustive for small arities, greedy multi-start beyond; any sensitive
/// bit already yields `|S| = 1`, so a non-degenerate input always embeds.
pub fn embed_symmetric_search(f: &TruthTable) -> Result<Embedding> {
    let n = f.arity();
    if n > MAX_EMBED_ARITY {
        return Err(Error::CapExceeded { value: n as u64, cap: MAX_EMBED_ARITY as u64 });
    }
    if !f.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let found = if n <= EMBED_EXHAUSTIVE_ARITY { embed_exhaustive(f)? } else { embed_greedy(f)? };
    found.ok_or_else(|| {
        Error::CheckFailed("no symmetric restriction found for a non-degenerate input".into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::parse_function;

    fn profile(spec: &str) -> SymmetricProfile {
        parse_function(spec).unwrap().to_profile().unwrap()
    }

    #[test]
    fn periods_of_the_not_all_equal_profiles() {
        let nae3 = profile("nae(3)");
        assert!(nae3.is_periodic(3));
        assert_eq!(base_period(&nae3, 3).unwrap(), 3);
        let nae4 = profile("nae(4)");
        assert!(!nae4.is_periodic(3));
        assert_eq!(base_period(&nae4, 3).unwrap(), 9);
        assert!(nae4.is_periodic(5), "periods above the arity hold vacuously");
        let constant = SymmetricProfile::constant(4, 1).unwrap();
        assert_eq!(base_period(&constant, 3).unwrap(), 1);
    }

    #[test]
    fn period_report_lists_all_periods() {
        let r = period_report(&profile("parity(6)"), 2).unwrap();
        assert_eq!(r.periods, vec![2, 4, 6]);
        assert_eq!(r.base_period, 2);
        let r = period_report(&profile("nae(4)"), 3).unwrap();
        assert_eq!(r.periods, vec![4], "0,1,1,1,0 repeats after four steps but not three");
        assert_eq!(r.base_period, 9);
    }

    #[test]
    fn coprime_periods_force_constancy() {
        for n in [4usize, 6] {
            let pairs: &[(u64, u64)] = if n == 4 { &[(2, 3)] } else { &[(2, 3), (3, 5)] };
            for &(a, b) in pairs {
                for mask in 0..1u64 << (n + 1) {
                    let f = SymmetricProfile::from_mask(n, mask);
                    assert!(
                        coprime_periods_check(&f, a, b).unwrap(),
                        "n={n} a={a} b={b} mask={mask:#b}"
                    );
                }
            }
        }
        let short = SymmetricProfile::from_mask(2, 0b101);
        assert!(matches!(coprime_periods_check(&short, 2, 3), Err(Error::BadParameter(_))));
        assert!(matches!(coprime_periods_check(&short, 2, 4), Err(Error::BadParameter(_))));
    }

    #[test]
    fn threshold_formula_values() {
        assert_eq!(threshold_n(2, 2).unwrap(), 2);
        assert_eq!(threshold_n(3, 1).unwrap(), 2);
        assert_eq!(threshold_n(5, 1).unwrap(), 4);
        assert_eq!(threshold_n(2, 4).unwrap(), 9);
        // boundary cases where (p-1)k - 1 is a prime power: mu must round up
        assert_eq!(threshold_n(2, 3).unwrap(), 7);
        assert_eq!(threshold_n(3, 2).unwrap(), 14);
        assert!(matches!(threshold_n(2, 1), Err(Error::BadParameter(_))));
        assert!(matches!(threshold_n(4, 1), Err(Error::NotPrime(4))));
    }

    #[test]
    fn truncated_degree_matches_the_full_expansion() {
        for n in 1..=7usize {
            for m in [2u64, 3, 4, 5, 6, 8, 9, 12] {
                let mut buf = Vec::new();
                for mask in 0..1u64 << (n + 1) {
                    let f = SymmetricProfile::from_mask(n, mask);
                    assert_eq!(
                        degree_from_mask(n, mask, m, &mut buf),
                        mahler::mahler_degree(&f, m).unwrap(),
                        "n={n} m={m} mask={mask:#b}"
                    );
                }
            }
        }
    }

    #[test]
    fn minimum_degree_at_the_threshold_arity() {
        let r = verify_pk_bound(2, 2, 3, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.min_observed, 2);
        assert!(r.witnesses.contains(&"s:0101".to_string()), "parity on 3 bits attains it: {:?}", r.witnesses);

        let r = verify_pk_bound(3, 1, 2, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.min_observed, 2);

        let r = verify_pk_bound(2, 3, 7, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.min_observed, 3);
        assert!(r.params["asserted"] == serde_json::json!(true) && r.bound == 3);
    }

    #[test]
    fn pk_bound_below_threshold_is_observational() {
        // NAE on 3 bits has degree 2 over Z_8, under (p-1)k = 3; the suite
        // must not assert the bound before the threshold arity.
        let r = verify_pk_bound(2, 3, 3, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.bound, 0);
        assert_eq!(r.min_observed, 2);
        assert_eq!(r.params["asserted"], serde_json::json!(false));
        assert_eq!(r.witnesses, vec!["s:0110".to_string(), "s:1001".to_string()]);

        let r = verify_pk_bound(2, 4, 5, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.bound, 0);
        assert_eq!(r.params["asserted"], serde_json::json!(false));
        let r = verify_pk_bound(2, 1, 4, 1).unwrap();
        assert!(r.pass);
        assert!(r.params["threshold"].is_null());
        assert_eq!(r.min_observed, 1, "parity has degree 1 mod 2");
    }

    #[test]
    fn pk_bound_scan_is_parallel_deterministic() {
        let lhs = verify_pk_bound(2, 2, 8, 1).unwrap();
        let rhs = verify_pk_bound(2, 2, 8, 5).unwrap();
        assert_eq!(lhs.to_json(), rhs.to_json());
    }

    #[test]
    fn low_degree_forces_periodicity() {
        for (p, k, t, n) in [(2, 1, 1, 6), (3, 1, 1, 8), (2, 2, 2, 7), (2, 1, 2, 8)] {
            let r = verify_lowdeg(p, k, t, n, 2).unwrap();
            assert!(r.pass, "p={p} k={k} t={t} n={n}: {:?}", r.witnesses);
            assert_eq!(r.min_observed, 0);
        }
    }

    #[test]
    fn composite_degree_floor_holds_exhaustively() {
        let r = verify_pq_bound(2, 3, 7, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.bound, 2);
        assert!(r.min_observed >= 2);
        let r = verify_pq_bound(2, 3, 14, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.bound, 4);
        // The true minimum is 8: EXACT(7) is 8- and 9-periodic, so its mod-2
        // and mod-3 degrees are at most 7 and 8, and nothing beats it.
        assert_eq!(r.min_observed, 8);
        let r = verify_pq_bound(3, 5, 10, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.bound, 4, "ceil(10 * 8 / 22)");
    }

    #[test]
    fn period_degree_alternative_holds_exhaustively() {
        for p in [2u64, 3] {
            let r = verify_period_degree(p, 10, 2).unwrap();
            assert!(r.pass, "p={p}: {:?}", r.witnesses);
        }
    }

    #[test]
    fn periodicity_suite_passes() {
        let r = verify_periodicity(8, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.examined, (1 << 9) - 2);
    }

    #[test]
    fn matrix_suite_passes() {
        let r = verify_matrices().unwrap();
        assert!(r.pass, "{:?}", r.witnesses);
        assert_eq!(r.min_observed, 0);
    }

    #[test]
    fn relation_checks_on_known_profiles() {
        let checks = relation_checks(2, 3, &profile("parity(8)")).unwrap();
        assert_eq!((checks.deg_p, checks.deg_q), (1, 8));
        assert!(checks.all_hold(), "2*1 + 3*8 = 26 > 8");
        let checks = relation_checks(3, 2, &profile("mod(6,0,3)")).unwrap();
        assert!(checks.all_hold());
        assert!(matches!(
            relation_checks(2, 3, &SymmetricProfile::constant(4, 0).unwrap()),
            Err(Error::Degenerate)
        ));
    }

    #[test]
    fn relations_hold_exhaustively_at_small_arity() {
        let r = verify_relations(2, 3, 9, 2).unwrap();
        assert!(r.pass, "{:?}", r.witnesses);
    }

    #[test]
    fn sensitivity_floor_on_small_tables() {
        let or8 = TruthTable::from_fn(8, |x| x != 0).unwrap();
        assert!(simon_check(&or8).unwrap());
        let and = TruthTable::from_fn(4, |x| x == 0b1111).unwrap();
        assert!(simon_check(&and).unwrap());
        let degenerate = TruthTable::from_fn(3, |x| x & 1 == 1).unwrap();
        assert!(matches!(simon_check(&degenerate), Err(Error::Degenerate)));
        for n in 2..=3 {
            let r = verify_simon(n, 2).unwrap();
            assert!(r.pass, "n={n}: {:?}", r.witnesses);
        }
    }

    #[test]
    fn weight_residue_degrees_match_the_formula() {
        let r = verify_mod_degree().unwrap();
        assert!(r.pass, "{:?}", r.witnesses);
        assert!(r.examined > 0);
    }

    #[test]
    fn observational_minimum_scan() {
        let r = min_degree_scan(6, 6, 1).unwrap();
        assert!(r.pass);
        assert!(r.min_observed >= 2, "the composite floor gives ceil(6/3.5) = 2");
    }

    #[test]
    fn diophantine_search_certifies_exactly() {
        let m = Modulus::new(6).unwrap();
        let sols = kronecker_search(&m, 5, (999, 1000), 5).unwrap();
        let first = sols.iter().find(|s| s.index() == 1).expect("l = 1 qualifies at loose eps");
        assert_eq!(first.exponents(), &[(2, 3), (3, 2)]);
        let ratios: Vec<(String, String)> = first
            .ratios()
            .iter()
            .map(|(n, d)| (n.to_string(), d.to_string()))
            .collect();
        assert_eq!(ratios, vec![("8".into(), "5".into()), ("9".into(), "5".into())]);

        let tight = kronecker_search(&m, 5, (3, 10), 200).unwrap();
        for sol in &tight {
            for (&(p, r), (num, den)) in sol.exponents().iter().zip(sol.ratios()) {
                // ratio in (1, p^(3/10)): num^10 < p^3 * den^10 and num > den
                assert!(num > den);
                assert!(
                    num.pow(10) < BigInt::from(p).pow(3) * den.pow(10),
                    "l={} p={p} r={r}",
                    sol.index()
                );
            }
        }
    }

    #[test]
    fn rejected_search_parameters() {
        let m = Modulus::new(12).unwrap();
        assert!(matches!(kronecker_search(&m, 5, (1, 2), 10), Err(Error::BadModulus(12))));
        let m = Modulus::new(6).unwrap();
        assert!(matches!(kronecker_search(&m, 3, (1, 2), 10), Err(Error::BadParameter(_))));
        assert!(matches!(kronecker_search(&m, 5, (2, 2), 10), Err(Error::BadParameter(_))));
        assert!(matches!(kronecker_search(&m, 5, (1, 2), 0), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn constructed_witness_is_certified() {
        let m = Modulus::new(6).unwrap();
        let sols = kronecker_search(&m, 5, (999, 1000), 1).unwrap();
        let w = construct_low_degree(&sols[0]).unwrap();
        assert_eq!(w.profile.arity(), 10);
        assert_eq!(w.weight, 5);
        assert_eq!(w.periods, vec![(2, 8), (3, 9)]);
        assert_eq!(w.degree_bound, 8);
        let brute = w.brute_degree.expect("n = 10 is small enough to expand");
        assert!(brute <= 8);
        assert_eq!(brute, mahler::mahler_degree(&w.profile, 6).unwrap());
    }

    #[test]
    fn construction_rejects_degenerate_exponents() {
        let sol = KroneckerSolution {
            m: 6,
            q: 5,
            eps: (1, 2),
            l: 1,
            exponents: vec![(2, 2), (3, 2)],
            ratios: vec![(BigInt::from(4), BigInt::from(5)), (BigInt::from(9), BigInt::from(5))],
        };
        assert!(matches!(construct_low_degree(&sol), Err(Error::BadParameter(_))));
    }

    #[test]
    fn embedding_finds_the_full_set_on_symmetric_inputs() {
        let and4 = TruthTable::from_fn(4, |x| x == 0b1111).unwrap();
        let e = embed_symmetric_search(&and4).unwrap();
        assert_eq!(e.kept, vec![1, 2, 3, 4]);
        assert!(e.assignment.is_empty());
        assert_eq!(e.profile.values(), &[0, 0, 0, 0, 1]);
    }

    #[test]
    fn embedding_on_a_mixed_function() {
        // x1 xor (x2 and x3)
        let f = TruthTable::from_fn(3, |x| (x & 1 == 1) ^ (x & 0b110 == 0b110)).unwrap();
        let e = embed_symmetric_search(&f).unwrap();
        assert!(e.kept.len() >= 2, "kept {:?}", e.kept);
        let r = Restriction::new(3, &e.kept, &e.assignment).unwrap();
        let g = f.restrict(&r).unwrap();
        assert_eq!(g.symmetric_profile().unwrap(), e.profile);
    }

    #[test]
    fn embedding_rejects_degenerate_tables() {
        let f = TruthTable::from_fn(3, |x| x & 1 == 1).unwrap();
        assert!(matches!(embed_symmetric_search(&f), Err(Error::Degenerate)));
    }

    #[test]
    fn greedy_embedding_matches_the_contract_above_the_exhaustive_cap() {
        // mod-3 weight indicator on 9 bits is symmetric, so the greedy path
        // should keep a large set and re-verification must succeed.
        let f = profile("mod(9,0,3)").to_table().unwrap();
        let e = embed_symmetric_search(&f).unwrap();
        assert!(!e.profile.is_trivial());
        assert!(e.kept.len() >= 5, "kept {:?}", e.kept);
        let r = Restriction::new(9, &e.kept, &e.assignment).unwrap();
        assert_eq!(f.restrict(&r).unwrap().symmetric_profile().unwrap(), e.profile);
    }

    #[test]
    fn report_json_shape() {
        let r = verify_pk_bound(2, 2, 3, 1).unwrap();
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["claim"], "pk_bound");
        assert_eq!(v["pass"], true);
        assert!(v["witnesses"].as_array().unwrap().iter().all(|w| w.as_str().unwrap().starts_with("s:")));
    }
}
