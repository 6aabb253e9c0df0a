//! Boolean functions as truth tables and symmetric weight profiles.
//!
//! Variables are indexed 1..n. A table index x is read little-endian: bit
//! i-1 of x is the value of variable x_i. This is the single bit-order
//! convention used everywhere in the crate, including the `n:HEX` text form.

use std::fmt;

use crate::{Error, Result};

/// Truth tables are capped here; exhaustive suites stay far below this.
pub const MAX_ARITY: usize = 24;

/// A Boolean function on `n` variables as a packed `2^n`-bit table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    bits: Vec<u64>,
}

impl TruthTable {
    /// Builds a table by evaluating `f` on every input index.
    pub fn from_fn(n: usize, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        if n > MAX_ARITY {
            return Err(Error::CapExceeded { value: n as u64, cap: MAX_ARITY as u64 });
        }
        let size = 1usize << n;
        let mut bits = vec![0u64; size.div_ceil(64).max(1)];
        for x in 0..size as u32 {
            if f(x) {
                bits[(x >> 6) as usize] |= 1 << (x & 63);
            }
        }
        Ok(TruthTable { n, bits })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    /// Value at the input whose little-endian encoding is `x`.
    pub fn value_at(&self, x: u32) -> bool {
        debug_assert!((x as usize) < (1usize << self.n));
        self.bits[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    /// Table lookup with an explicit bit string, `x[i]` = variable `x_{i+1}`.
    pub fn evaluate(&self, x: &[bool]) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, got: x.len() });
        }
        let idx = x.iter().enumerate().fold(0u32, |a, (i, &b)| a | (u32::from(b) << i));
        Ok(self.value_at(idx))
    }

    /// The weight profile if the function is symmetric, otherwise a pair of
    /// equal-weight inputs on which it differs.
    pub fn symmetric_profile(&self) -> std::result::Result<SymmetricProfile, (u32, u32)> {
        let size = 1u32 << self.n;
        let mut first: Vec<Option<u32>> = vec![None; self.n + 1];
        for x in 0..size {
            let w = x.count_ones() as usize;
            match first[w] {
                None => first[w] = Some(x),
                Some(r) => {
                    if self.value_at(r) != self.value_at(x) {
                        return Err((r, x));
                    }
                }
            }
        }
        let values = (0..=self.n)
            .map(|w| u8::from(self.value_at(first[w].expect("every weight occurs"))))
            .collect();
        Ok(SymmetricProfile { values })
    }

    /// Indices `t` with `f(x) = f(x ^ e_t)` for every `x`; empty iff the
    /// function is non-degenerate.
    pub fn dumb_bits(&self) -> Vec<usize> {
        let size = 1u32 << self.n;
        (1..=self.n)
            .filter(|&t| {
                let bit = 1u32 << (t - 1);
                (0..size).all(|x| self.value_at(x) == self.value_at(x ^ bit))
            })
            .collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.dumb_bits().is_empty()
    }

    /// Maximum over inputs of the number of output-flipping single-bit flips.
    pub fn sensitivity(&self) -> usize {
        let size = 1u32 << self.n;
        (0..size)
            .map(|x| {
                (0..self.n)
                    .filter(|&i| self.value_at(x) != self.value_at(x ^ (1 << i)))
                    .count()
            })
            .max()
            .unwrap_or(0)
    }

    /// Fixes the variables outside `r.kept()` and renumbers the kept ones in
    /// ascending order.
    pub fn restrict(&self, r: &Restriction) -> Result<TruthTable> {
        if r.n != self.n {
            return Err(Error::BadRestriction(format!(
                "restriction is for arity {}, function has arity {}",
                r.n, self.n
            )));
        }
        let mut base = 0u32;
        for &(i, v) in &r.assignment {
            if v {
                base |= 1 << (i - 1);
            }
        }
        TruthTable::from_fn(r.kept.len(), |y| {
            let mut x = base;
            for (j, &i) in r.kept.iter().enumerate() {
                if y >> j & 1 == 1 {
                    x |= 1 << (i - 1);
                }
            }
            self.value_at(x)
        })
    }
}

// Text form `n:HEX`: the 2^n table bits little-endian, written as one
// most-significant-digit-first hex integer of exactly ceil(2^n/4) digits.
impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (1usize << self.n).div_ceil(4);
        write!(f, "{}:", self.n)?;
        for d in (0..digits).rev() {
            let mut nib = 0u8;
            for b in 0..4 {
                let idx = d * 4 + b;
                if idx < (1 << self.n) && self.value_at(idx as u32) {
                    nib |= 1 << b;
                }
            }
            write!(f, "{nib:X}")?;
        }
        Ok(())
    }
}

/// A symmetric function recorded by Hamming weight: `values[w]` is the output
/// on any input of weight `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricProfile {
    values: Vec<u8>,
}

impl SymmetricProfile {
    pub fn new(values: Vec<u8>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::BadParameter("profile needs arity >= 1".into()));
        }
        if values.iter().any(|&v| v > 1) {
            return Err(Error::BadParameter("profile entries must be 0 or 1".into()));
        }
        Ok(SymmetricProfile { values })
    }

    /// Profile from the low `n+1` bits of `mask`, bit `w` = value at weight `w`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        SymmetricProfile { values: (0..=n).map(|w| (mask >> w & 1) as u8).collect() }
    }

    pub fn arity(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, weight: usize) -> u8 {
        self.values[weight]
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// True iff values agree at every pair of weights `a = b (mod l)`.
    pub fn is_periodic(&self, l: u64) -> bool {
        if l == 0 {
            return false;
        }
        let l = l as usize;
        (0..self.values.len()).all(|a| a < l || self.values[a] == self.values[a - l])
    }

    pub fn to_table(&self) -> Result<TruthTable> {
        let n = self.arity();
        TruthTable::from_fn(n, |x| self.values[x.count_ones() as usize] == 1)
    }

    pub fn constant(n: usize, value: u8) -> Result<Self> {
        SymmetricProfile::new(vec![value; n + 1])
    }

    /// XOR of all variables: weight parity.
    pub fn parity(n: usize) -> Result<Self> {
        SymmetricProfile::new((0..=n as u64).map(|w| (w & 1) as u8).collect())
    }

    /// Not-all-equal: 1 unless the input is all zeros or all ones.
    pub fn nae(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadParameter("nae needs n >= 2".into()));
        }
        SymmetricProfile::new((0..=n).map(|w| u8::from(w != 0 && w != n)).collect())
    }

    /// Indicator of `|x| = c (mod m)`. Requires `n >= m - 1` so that every
    /// residue class is inhabited.
    pub fn mod_fn(n: usize, c: u64, m: u64) -> Result<Self> {
        if m == 0 || c >= m {
            return Err(Error::BadParameter(format!("mod residue {c} out of range for modulus {m}")));
        }
        if (n as u64) + 1 < m {
            return Err(Error::BadParameter(format!("mod(n={n}, m={m}) needs n >= m-1")));
        }
        SymmetricProfile::new((0..=n as u64).map(|w| u8::from(w % m == c)).collect())
    }

    /// Indicator of `|x| = w`.
    pub fn exact(n: usize, w: usize) -> Result<Self> {
        if w > n {
            return Err(Error::BadParameter(format!("exact weight {w} exceeds arity {n}")));
        }
        SymmetricProfile::new((0..=n).map(|v| u8::from(v == w)).collect())
    }
}

// Text form `s:BITSTRING`, index 0 = weight 0.
impl fmt::Display for SymmetricProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s:")?;
        for &v in &self.values {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Which variables survive a restriction and what the rest are pinned to.
/// `kept` and the assignment domain partition 1..=n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    n: usize,
    kept: Vec<usize>,
    assignment: Vec<(usize, bool)>,
}

impl Restriction {
    pub fn new(n: usize, kept: &[usize], assignment: &[(usize, bool)]) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut mark = |i: usize| -> Result<()> {
            if i == 0 || i > n {
                return Err(Error::BadRestriction(format!("variable index {i} out of 1..={n}")));
            }
            if seen[i] {
                return Err(Error::BadRestriction(format!("variable {i} mentioned twice")));
            }
            seen[i] = true;
            Ok(())
        };
        for &i in kept {
            mark(i)?;
        }
        for &(i, _) in assignment {
            mark(i)?;
        }
        if kept.len() + assignment.len() != n {
            return Err(Error::BadRestriction(format!(
                "kept ({}) plus assigned ({}) must cover all {n} variables",
                kept.len(),
                assignment.len()
            )));
        }
        let mut kept = kept.to_vec();
        kept.sort_unstable();
        let mut assignment = assignment.to_vec();
        assignment.sort_unstable_by_key(|&(i, _)| i);
        Ok(Restriction { n, kept, assignment })
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn assignment(&self) -> &[(usize, bool)] {
        &self.assignment
    }
}

/// A parsed function: either a raw table or a symmetric profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Function {
    Table(TruthTable),
    Profile(SymmetricProfile),
}

impl Function {
    pub fn arity(&self) -> usize {
        match self {
            Function::Table(t) => t.arity(),
            Function::Profile(p) => p.arity(),
        }
    }

    pub fn to_table(&self) -> Result<TruthTable> {
        match self {
            Function::Table(t) => Ok(t.clone()),
            Function::Profile(p) => p.to_table(),
        }
    }

    /// The weight profile, or an error naming an equal-weight witness pair if
    /// the table is not symmetric.
    pub fn to_profile(&self) -> Result<SymmetricProfile> {
        match self {
            Function::Table(t) => t.symmetric_profile().map_err(|(x, y)| {
                Error::BadParameter(format!(
                    "not symmetric: inputs {x:#b} and {y:#b} have equal weight but differ"
                ))
            }),
            Function::Profile(p) => Ok(p.clone()),
        }
    }
}

/// Parses `n:HEX`, `s:BITSTRING`, or a builder call `parity(n)`, `nae(n)`,
/// `mod(n,c,m)`, `exact(n,w)`. Errors carry the byte offset of the problem.
pub fn parse_function(spec: &str) -> Result<Function> {
    let bytes = spec.as_bytes();
    if let Some(rest) = spec.strip_prefix("s:") {
        return parse_profile_body(rest).map(Function::Profile);
    }
    if let Some(colon) = spec.find(':') {
        if spec[..colon].bytes().all(|b| b.is_ascii_digit()) && colon > 0 {
            return parse_table_spec(spec, colon).map(Function::Table);
        }
    }
    if let Some(open) = spec.find('(') {
        let name = &spec[..open];
        if !spec.ends_with(')') {
            return Err(Error::Parse { pos: bytes.len(), msg: "expected closing ')'".into() });
        }
        let args: Vec<&str> = match &spec[open + 1..spec.len() - 1] {
            "" => vec![],
            inner => inner.split(',').collect(),
        };
        let num = |idx: usize| -> Result<u64> {
            let a = args[idx].trim();
            a.parse::<u64>().map_err(|_| Error::Parse {
                pos: open + 1,
                msg: format!("argument {} of {name} is not a number: {a:?}", idx + 1),
            })
        };
        let want = |count: usize, shape: &str| -> Result<()> {
            if args.len() != count {
                return Err(Error::Parse { pos: open, msg: format!("expected {shape}") });
            }
            Ok(())
        };
        let profile = match name {
            "parity" => {
                want(1, "parity(n)")?;
                SymmetricProfile::parity(num(0)? as usize)?
            }
            "nae" => {
                want(1, "nae(n)")?;
                SymmetricProfile::nae(num(0)? as usize)?
            }
            "mod" => {
                want(3, "mod(n,c,m)")?;
                SymmetricProfile::mod_fn(num(0)? as usize, num(1)?, num(2)?)?
            }
            "exact" => {
                want(2, "exact(n,w)")?;
                SymmetricProfile::exact(num(0)? as usize, num(1)? as usize)?
            }
            other => {
                return Err(Error::Parse { pos: 0, msg: format!("unknown builder {other:?}") })
            }
        };
        return Ok(Function::Profile(profile));
    }
    Err(Error::Parse {
        pos: 0,
        msg: "expected n:HEX, s:BITSTRING, or parity/nae/mod/exact(...)".into(),
    })
}

fn parse_profile_body(body: &str) -> Result<SymmetricProfile> {
    if body.len() < 2 {
        return Err(Error::Parse { pos: 2, msg: "profile needs at least 2 bits".into() });
    }
    let mut values = Vec::with_capacity(body.len());
    for (i, b) in body.bytes().enumerate() {
        match b {
            b'0' => values.push(0),
            b'1' => values.push(1),
            _ => {
                return Err(Error::Parse {
                    pos: 2 + i,
                    msg: format!("expected 0 or 1, found {:?}", b as char),
                })
            }
        }
    }
    SymmetricProfile::new(values)
}

fn parse_table_spec(spec: &str, colon: usize) -> Result<TruthTable> {
    let n: usize = spec[..colon]
        .parse()
        .map_err(|_| Error::Parse { pos: 0, msg: "bad arity".into() })?;
    if n > MAX_ARITY {
        return Err(Error::Parse { pos: 0, msg: format!("arity {n} exceeds cap {MAX_ARITY}") });
    }
    let hex = &spec[colon + 1..];
    let digits = (1usize << n).div_ceil(4);
    if hex.len() != digits {
        return Err(Error::Parse {
            pos: colon + 1,
            msg: format!("expected exactly {digits} hex digits for arity {n}, found {}", hex.len()),
        });
    }
    let mut nibbles = Vec::with_capacity(digits);
    for (i, b) in hex.bytes().enumerate() {
        let v = (b as char).to_digit(16).ok_or(Error::Parse {
            pos: colon + 1 + i,
            msg: format!("invalid hex digit {:?}", b as char),
        })?;
        nibbles.push(v as u8);
    }
    nibbles.reverse(); // nibble d now covers table bits 4d..4d+3
    let table = TruthTable::from_fn(n, |x| nibbles[(x / 4) as usize] >> (x % 4) & 1 == 1)?;
    // For n <= 1 the top bits of the single digit must be clear.
    if (1 << n) % 4 != 0 && nibbles[digits - 1] >> ((1 << n) % 4) != 0 {
        return Err(Error::Parse {
            pos: colon + 1,
            msg: format!("hex value has bits above 2^{n}"),
        });
    }
    Ok(table)
}
