//! Explicit truth tables and the function families built from them.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};

/// Largest arity for which the multilinear degree is computed.
pub const MAX_DEGREE_ARITY: usize = 16;
/// Largest arity accepted for explicit tables.
pub const MAX_TABLE_ARITY: usize = 24;

/// A Boolean function `{0,1}^n -> {0,1}` stored by basis index.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruthTable {
    n: usize,
    values: Vec<bool>,
}

impl TruthTable {
    pub fn new(n: usize, values: Vec<bool>) -> Result<Self> {
        check_table_arity(n)?;
        if values.len() != 1 << n {
            return Err(Error::TableArityMismatch(format!(
                "{} values for arity {n}",
                values.len()
            )));
        }
        Ok(Self { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(&BitString) -> bool) -> Result<Self> {
        check_table_arity(n)?;
        let values = (0..1usize << n)
            .map(|i| f(&BitString::from_index(i, n)))
            .collect();
        Self::new(n, values)
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, vec![false; 1 << n.min(MAX_TABLE_ARITY)])
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn eval(&self, x: &BitString) -> bool {
        assert_eq!(x.len(), self.n);
        self.values[x.index()]
    }

    pub fn eval_index(&self, index: usize) -> bool {
        self.values[index]
    }

    /// Satisfying inputs in ascending basis order.
    pub fn satisfying(&self) -> Vec<BitString> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(|(i, _)| BitString::from_index(i, self.n))
            .collect()
    }

    pub fn satisfying_count(&self) -> usize {
        self.values.iter().filter(|&&v| v).count()
    }

    /// The unique satisfying input, if there is exactly one.
    pub fn unique_target(&self) -> Option<BitString> {
        match self.satisfying_count() {
            1 => self.satisfying().pop(),
            _ => None,
        }
    }

    pub fn complement(&self) -> TruthTable {
        TruthTable {
            n: self.n,
            values: self.values.iter().map(|v| !v).collect(),
        }
    }

    /// `s` such that `f(x) = <s, x>` when `f` is linear over GF(2).
    ///
    /// Small tables are checked on every pair `f(x ^ y) = f(x) ^ f(y)`;
    /// larger ones are reconstructed from the unit vectors and compared
    /// against the whole table.
    pub fn hidden_string(&self) -> Option<BitString> {
        let n = self.n;
        let len = self.values.len();
        if self.values[0] {
            return None;
        }
        if n <= 6 {
            for x in 0..len {
                for y in x + 1..len {
                    if self.values[x ^ y] != (self.values[x] ^ self.values[y]) {
                        return None;
                    }
                }
            }
        }
        let s = BitString::from_fn_bits(n, |i| self.values[1 << (n - 1 - i)]);
        if n > 6 && *self != hidden_string_function(&s) {
            return None;
        }
        Some(s)
    }
}

impl BitString {
    pub(crate) fn from_fn_bits(n: usize, f: impl Fn(usize) -> bool) -> BitString {
        BitString::new((0..n).map(f).collect()).expect("n >= 1")
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({}: ", self.n)?;
        for &v in &self.values {
            f.write_str(if v { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

/// Errors unless `1 <= n <= MAX_TABLE_ARITY`; too many inputs is a
/// resource error.
pub fn check_table_arity(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "table arity must be at least 1".into(),
        ));
    }
    if n > MAX_TABLE_ARITY {
        return Err(Error::DimensionLimit {
            n,
            limit: MAX_TABLE_ARITY,
        });
    }
    Ok(())
}

/// `f_s(x) = <s, x> mod 2`. Panics if `s` is longer than [`MAX_TABLE_ARITY`].
pub fn hidden_string_function(s: &BitString) -> TruthTable {
    TruthTable::from_fn(s.len(), |x| s.dot(x)).expect("valid arity")
}

/// The function that is one exactly at `target`. Panics if `target` is
/// longer than [`MAX_TABLE_ARITY`].
pub fn point_function(target: &BitString) -> TruthTable {
    TruthTable::from_fn(target.len(), |x| x == target).expect("valid arity")
}

/// Fixes the listed positions to constants; the result ranges over the
/// remaining positions in their original order.
pub fn restrict(f: &TruthTable, fixed: &[(usize, bool)]) -> Result<TruthTable> {
    let n = f.arity();
    let mut is_fixed = vec![None; n];
    for &(pos, bit) in fixed {
        if pos >= n || is_fixed[pos].is_some() {
            return Err(Error::InvalidArgument(format!(
                "bad fixed position {pos} for arity {n}"
            )));
        }
        is_fixed[pos] = Some(bit);
    }
    let free: Vec<usize> = (0..n).filter(|&p| is_fixed[p].is_none()).collect();
    if free.is_empty() {
        return Err(Error::EmptySubfunction);
    }
    let base = is_fixed
        .iter()
        .enumerate()
        .filter(|(_, b)| **b == Some(true))
        .fold(0usize, |acc, (p, _)| acc | 1 << (n - 1 - p));
    let k = free.len();
    let values = (0..1usize << k)
        .map(|m| {
            let idx = free
                .iter()
                .enumerate()
                .filter(|(j, _)| m >> (k - 1 - j) & 1 == 1)
                .fold(base, |acc, (_, &p)| acc | 1 << (n - 1 - p));
            f.values[idx]
        })
        .collect();
    TruthTable::new(k, values)
}

/// Pointwise OR of equal-arity tables.
pub fn or_combine(tables: &[TruthTable]) -> Result<TruthTable> {
    let first = tables
        .first()
        .ok_or_else(|| Error::InvalidArgument("OR of an empty list".into()))?;
    let mut values = first.values.clone();
    for t in &tables[1..] {
        if t.n != first.n {
            return Err(Error::TableArityMismatch(format!(
                "arity {} vs {}",
                t.n, first.n
            )));
        }
        values.iter_mut().zip(&t.values).for_each(|(a, b)| *a |= b);
    }
    TruthTable::new(first.n, values)
}

/// Where the odd leftover bit lands when an `n`-bit search is split into
/// `floor(n/2)` parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PartLayout {
    /// Two-bit parts first; the last part takes the remaining 2 or 3 bits.
    #[default]
    TrailingRemainder,
    /// The first part takes 2 or 3 bits; the rest are two-bit parts.
    LeadingRemainder,
}

impl FromStr for PartLayout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trailing" => Ok(Self::TrailingRemainder),
            "leading" => Ok(Self::LeadingRemainder),
            _ => Err(Error::InvalidArgument(format!(
                "unknown part layout `{s}` (trailing|leading)"
            ))),
        }
    }
}

/// Bit positions owned by each part of an `n`-bit search, `n >= 2`.
pub fn part_ranges(n: usize, layout: PartLayout) -> Vec<Range<usize>> {
    assert!(n >= 2);
    let parts = n / 2;
    let wide = n - 2 * (parts - 1);
    let sizes = (0..parts).map(|i| match layout {
        PartLayout::TrailingRemainder if i == parts - 1 => wide,
        PartLayout::LeadingRemainder if i == 0 => wide,
        _ => 2,
    });
    let mut start = 0;
    sizes
        .map(|len| {
            let r = start..start + len;
            start += len;
            r
        })
        .collect()
}

/// `g_i(m) = OR` of `f` over every setting of the bits outside part `i`,
/// with `m` placed on part `i`'s positions.
pub fn dega_subfunction(f: &TruthTable, i: usize, layout: PartLayout) -> Result<TruthTable> {
    let n = f.arity();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "search needs at least 2 bits, got {n}"
        )));
    }
    let ranges = part_ranges(n, layout);
    let range = ranges.get(i).ok_or(Error::InvalidPartIndex {
        index: i,
        parts: ranges.len(),
    })?;
    let width = range.len();
    let shift = n - range.end;
    let mask = (1usize << width) - 1;
    let mut values = vec![false; 1 << width];
    for (x, &v) in f.values.iter().enumerate() {
        if v {
            values[(x >> shift) & mask] = true;
        }
    }
    TruthTable::new(width, values)
}

/// Degree of the unique real multilinear polynomial agreeing with `f`.
///
/// The coefficients come from the Moebius (inclusion-exclusion) transform
/// over the subset lattice. The zero function has degree 0.
pub fn multilinear_degree(f: &TruthTable) -> Result<usize> {
    let n = f.arity();
    if n > MAX_DEGREE_ARITY {
        return Err(Error::DegreeLimit {
            n,
            limit: MAX_DEGREE_ARITY,
        });
    }
    // Subset S of positions <-> basis index with those bits set.
    let mut coeffs: Vec<i64> = f.values.iter().map(|&v| v as i64).collect();
    for bit in 0..n {
        let m = 1usize << bit;
        for s in 0..coeffs.len() {
            if s & m != 0 {
                coeffs[s] -= coeffs[s ^ m];
            }
        }
    }
    Ok(coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(s, _)| s.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// Truth table input accepted by the command line.
///
/// ```text
/// arity 2
/// 0100
/// ```
/// or a one-line `target <bits>` / `hidden <bits>` shorthand.
pub fn parse_table(text: &str) -> Result<TruthTable> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let perr = |line: usize, column: usize, message: String| Error::Parse {
        line,
        column,
        message,
    };
    let Some(&(line, head)) = lines.first() else {
        return Err(perr(1, 1, "empty truth table".into()));
    };
    let mut parts = head.split_whitespace();
    let keyword = parts.next().unwrap_or("");
    let arg = parts.next();
    if parts.next().is_some() {
        return Err(perr(line, 1, "trailing tokens".into()));
    }
    let arg_col = head.find(arg.unwrap_or("")).unwrap_or(0) + 1;
    let bits = |s: Option<&str>| -> Result<BitString> {
        s.ok_or_else(|| {
            perr(
                line,
                head.len() + 1,
                format!("`{keyword}` needs an argument"),
            )
        })?
        .parse()
        .map_err(|_| perr(line, arg_col, "expected a bit string".into()))
    };
    let checked = |b: BitString| -> Result<BitString> {
        check_table_arity(b.len())?;
        Ok(b)
    };
    let table = match keyword {
        "target" => point_function(&checked(bits(arg)?)?),
        "hidden" => hidden_string_function(&checked(bits(arg)?)?),
        "arity" => {
            let n: usize = arg
                .and_then(|a| a.parse().ok())
                .filter(|n| (1..=MAX_TABLE_ARITY).contains(n))
                .ok_or_else(|| perr(line, arg_col, "expected arity 1..=24".into()))?;
            let &(vline, vtext) = lines
                .get(1)
                .ok_or_else(|| perr(line + 1, 1, "missing value line".into()))?;
            let mut values = Vec::with_capacity(1 << n);
            for (col, ch) in vtext.chars().enumerate() {
                match ch {
                    '0' => values.push(false),
                    '1' => values.push(true),
                    _ => return Err(perr(vline, col + 1, format!("unexpected `{ch}`"))),
                }
            }
            if values.len() != 1 << n {
                return Err(perr(
                    vline,
                    1,
                    format!("expected {} values, found {}", 1 << n, values.len()),
                ));
            }
            if let Some(&(extra, _)) = lines.get(2) {
                return Err(perr(extra, 1, "unexpected content after values".into()));
            }
            return TruthTable::new(n, values);
        }
        _ => return Err(perr(line, 1, format!("unknown table form `{keyword}`"))),
    };
    if let Some(&(extra, _)) = lines.get(1) {
        return Err(perr(extra, 1, "unexpected content after shorthand".into()));
    }
    Ok(table)
}
