//! Base-phi expansions of the naturals.
//!
//! An expansion is stored as its support: the strictly decreasing list of
//! digit positions `i` with `d_i = 1`. Two independent constructions are
//! provided. [`expand_greedy`] repeatedly removes the largest power of phi
//! that fits, deciding each step with an exact sign test in `Z[phi]`.
//! [`expand_recursive`] never searches; it assembles the expansion from the
//! Lucas-interval decomposition of `N` (closed forms for Lucas numbers, a
//! disjoint union on even intervals and prefix/suffix surgery on odd ones).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{phi_pow, phi_pow_i128, sign_i128, GoldenInt};

/// Largest accepted natural, `2^63 - 1`. Functions taking `N` panic above it.
pub const MAX_N: u64 = i64::MAX as u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("empty digit word")]
    Empty,
    #[error("digit word contains adjacent ones at position {0}")]
    AdjacentOnes(i32),
    #[error("digit word contains more than one radix point")]
    MultiplePoints,
    #[error("unexpected character {0:?} in digit word")]
    ForeignCharacter(char),
    #[error("support positions must be strictly decreasing")]
    NotDecreasing,
    #[error("{0} exceeds the supported maximum 2^63-1")]
    OutOfRange(u64),
    #[error("{0} does not lie in an odd Lucas interval with index at least 5")]
    NotInSplitInterval(u64),
    #[error("Lucas index must be at least 1")]
    ZeroLucasIndex,
    #[error("interval 0 has no common digit bounds")]
    DegenerateInterval,
    #[error("word does not start with {expected:?}")]
    PrefixMismatch { expected: String },
    #[error("word does not end with {expected:?}")]
    SuffixMismatch { expected: String },
    #[error("stripped prefix and suffix overlap")]
    Overlap,
    #[error("supports overlap or touch at position {0}")]
    NotDisjoint(i32),
}

/// Rejects `N` above [`MAX_N`].
pub fn check_n(n: u64) -> Result<u64, CodecError> {
    if n > MAX_N {
        Err(CodecError::OutOfRange(n))
    } else {
        Ok(n)
    }
}

/// The base-phi expansion `beta(N)` as its set of one-positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PhiExpansion {
    support: Vec<i32>,
}

/// True iff the candidate support, read as a set, has no two consecutive
/// positions (and no repeats).
pub fn validate(support: &[i32]) -> bool {
    let mut sorted = support.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted.windows(2).all(|w| w[0] - w[1] >= 2)
}

impl PhiExpansion {
    /// Builds an expansion from a strictly decreasing support.
    pub fn from_support(support: Vec<i32>) -> Result<Self, CodecError> {
        for w in support.windows(2) {
            if w[0] <= w[1] {
                return Err(CodecError::NotDecreasing);
            }
            if w[0] == w[1] + 1 {
                return Err(CodecError::AdjacentOnes(w[0]));
            }
        }
        Ok(PhiExpansion { support })
    }

    pub fn empty() -> Self {
        PhiExpansion::default()
    }

    pub fn support(&self) -> &[i32] {
        &self.support
    }

    pub fn into_support(self) -> Vec<i32> {
        self.support
    }

    pub fn digit_sum(&self) -> u32 {
        self.support.len() as u32
    }

    /// Leftmost one-position `L(N)`.
    pub fn leftmost(&self) -> Option<i32> {
        self.support.first().copied()
    }

    /// Rightmost one-position `R(N)`.
    pub fn rightmost(&self) -> Option<i32> {
        self.support.last().copied()
    }

    pub fn digit(&self, position: i32) -> bool {
        self.support.binary_search_by(|p| position.cmp(p)).is_ok()
    }

    /// Disjoint union of two supports; fails if they share or touch a position.
    pub fn union(&self, other: &PhiExpansion) -> Result<PhiExpansion, CodecError> {
        let mut merged: Vec<i32> = self
            .support
            .iter()
            .chain(other.support.iter())
            .copied()
            .collect();
        merged.sort_unstable_by(|a, b| b.cmp(a));
        for w in merged.windows(2) {
            if w[0] - w[1] < 2 {
                return Err(CodecError::NotDisjoint(w[1]));
            }
        }
        Ok(PhiExpansion { support: merged })
    }

    /// Highest and lowest printed positions; the printed word always covers
    /// position 0.
    fn extent(&self) -> (i32, i32) {
        let top = self.leftmost().map_or(0, |p| p.max(0));
        let bottom = self.rightmost().map_or(0, |p| p.min(0));
        (top, bottom)
    }

    pub fn to_word(&self) -> DigitWord {
        let (top, bottom) = self.extent();
        let render = |range: &mut dyn Iterator<Item = i32>| -> String {
            range
                .map(|i| if self.digit(i) { '1' } else { '0' })
                .collect()
        };
        DigitWord {
            integer_part: render(&mut (0..=top).rev()),
            fractional_part: render(&mut (bottom..0).rev()),
        }
    }

    pub fn from_word(word: &DigitWord) -> Result<Self, CodecError> {
        let int = word.integer_part.as_bytes();
        let frac = word.fractional_part.as_bytes();
        let mut support = Vec::new();
        let positions = (0..int.len() as i32)
            .rev()
            .zip(int.iter())
            .chain((1..=frac.len() as i32).map(|i| -i).zip(frac.iter()));
        for (pos, &c) in positions {
            match c {
                b'1' => {
                    if support.last() == Some(&(pos + 1)) {
                        return Err(CodecError::AdjacentOnes(pos + 1));
                    }
                    support.push(pos);
                }
                b'0' => {}
                _ => return Err(CodecError::ForeignCharacter(c as char)),
            }
        }
        Ok(PhiExpansion { support })
    }

    /// Value `sum phi^i` over the support.
    pub fn evaluate(&self) -> GoldenInt {
        self.support
            .iter()
            .fold(GoldenInt::zero(), |acc, &i| acc + phi_pow(i as i64))
    }
}

pub fn evaluate(e: &PhiExpansion) -> GoldenInt {
    e.evaluate()
}

/// Printed form of an expansion: integer part, radix point, fractional part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitWord {
    pub integer_part: String,
    pub fractional_part: String,
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.integer_part)?;
        if !self.fractional_part.is_empty() {
            write!(f, ".{}", self.fractional_part)?;
        }
        Ok(())
    }
}

/// Parses `integer.fraction`. Accepts `.` or `·` as radix point and tolerates
/// redundant leading and trailing zeros.
impl FromStr for DigitWord {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(CodecError::Empty);
        }
        let mut int = String::new();
        let mut frac = String::new();
        let mut seen_point = false;
        for c in s.chars() {
            match c {
                '0' | '1' if seen_point => frac.push(c),
                '0' | '1' => int.push(c),
                '.' | '·' if seen_point => return Err(CodecError::MultiplePoints),
                '.' | '·' => seen_point = true,
                _ => return Err(CodecError::ForeignCharacter(c)),
            }
        }
        if int.is_empty() && frac.is_empty() {
            return Err(CodecError::Empty);
        }
        let raw = DigitWord {
            integer_part: int,
            fractional_part: frac,
        };
        // round trip through the support to validate and normalize
        Ok(PhiExpansion::from_word(&raw)?.to_word())
    }
}

impl fmt::Display for PhiExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

impl FromStr for PhiExpansion {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PhiExpansion::from_word(&s.parse::<DigitWord>()?)
    }
}

pub fn format(e: &PhiExpansion) -> String {
    e.to_string()
}

pub fn parse(text: &str) -> Result<PhiExpansion, CodecError> {
    text.parse()
}

/// Replaces a mandatory prefix and suffix of the digit word, keeping the
/// radix point attached to position 0.
///
/// This is word surgery in the free group: `np (sp)^-1 w (ss)^-1 ns`. A
/// mismatch means a recursion rule was applied outside its range.
pub fn surgery(
    w: &DigitWord,
    strip_prefix: &str,
    new_prefix: &str,
    strip_suffix: &str,
    new_suffix: &str,
) -> Result<DigitWord, CodecError> {
    let e = PhiExpansion::from_word(w)?;
    Ok(splice(&e, strip_prefix, new_prefix, strip_suffix, new_suffix)?.to_word())
}

fn splice(
    e: &PhiExpansion,
    strip_prefix: &str,
    new_prefix: &str,
    strip_suffix: &str,
    new_suffix: &str,
) -> Result<PhiExpansion, CodecError> {
    let (top, bottom) = e.extent();
    let (sp, np) = (strip_prefix.as_bytes(), new_prefix.as_bytes());
    let (ss, ns) = (strip_suffix.as_bytes(), new_suffix.as_bytes());
    let width = (top - bottom + 1) as usize;
    if sp.len() + ss.len() > width {
        return Err(CodecError::Overlap);
    }
    let bit = |c: u8| c == b'1';
    let prefix_ok = sp
        .iter()
        .enumerate()
        .all(|(j, &c)| e.digit(top - j as i32) == bit(c));
    if !prefix_ok {
        return Err(CodecError::PrefixMismatch {
            expected: strip_prefix.to_string(),
        });
    }
    let suffix_ok = ss
        .iter()
        .rev()
        .enumerate()
        .all(|(j, &c)| e.digit(bottom + j as i32) == bit(c));
    if !suffix_ok {
        return Err(CodecError::SuffixMismatch {
            expected: strip_suffix.to_string(),
        });
    }

    // kept positions: bottom + |ss| ..= top - |sp|
    let keep_hi = top - sp.len() as i32;
    let keep_lo = bottom + ss.len() as i32;
    let mut support: Vec<i32> = Vec::with_capacity(e.support.len() + 4);
    for (j, &c) in np.iter().enumerate() {
        if bit(c) {
            support.push(keep_hi + np.len() as i32 - j as i32);
        }
    }
    support.extend(
        e.support
            .iter()
            .copied()
            .filter(|&p| p <= keep_hi && p >= keep_lo),
    );
    for (j, &c) in ns.iter().enumerate() {
        if bit(c) {
            support.push(keep_lo - 1 - j as i32);
        }
    }
    PhiExpansion::from_support(support)
}

/// One of the Lucas intervals `Lambda_j` partitioning the naturals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LucasInterval {
    pub j: u32,
    pub lo: u64,
    pub hi: u64,
}

impl LucasInterval {
    /// Number of naturals in the interval.
    pub fn size(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, n: u64) -> bool {
        self.lo <= n && n <= self.hi
    }

    /// `Lambda_j`: `[0,1]`, `[L_2n, L_2n+1]` for `j = 2n`,
    /// `[L_2n+1 + 1, L_2n+2 - 1]` for `j = 2n+1`.
    pub fn new(j: u32) -> Self {
        let (lo, hi) = if j == 0 {
            (0, 1)
        } else if j.is_multiple_of(2) {
            (lucas_u128(j), lucas_u128(j + 1))
        } else {
            (lucas_u128(j) + 1, lucas_u128(j + 1) - 1)
        };
        LucasInterval {
            j,
            lo: u64::try_from(lo).expect("interval start fits u64"),
            hi: u64::try_from(hi).expect("interval end fits u64"),
        }
    }
}

impl fmt::Display for LucasInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lambda_{} = [{}, {}]", self.j, self.lo, self.hi)
    }
}

const LUCAS_TABLE_LEN: usize = 100;

fn lucas_table() -> &'static [u128] {
    static TABLE: OnceLock<Vec<u128>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![2u128, 1];
        while t.len() < LUCAS_TABLE_LEN {
            let n = t.len();
            t.push(t[n - 1] + t[n - 2]);
        }
        t
    })
}

/// `L_m` as a machine word, for `m < 100`.
pub fn lucas_u128(m: u32) -> u128 {
    lucas_table()[m as usize]
}

fn lucas_u64(m: u32) -> u64 {
    lucas_u128(m) as u64
}

fn interval_starts() -> &'static [u64] {
    static STARTS: OnceLock<Vec<u64>> = OnceLock::new();
    STARTS.get_or_init(|| {
        (0..(LUCAS_TABLE_LEN as u32 - 8))
            .map(|j| LucasInterval::new(j).lo)
            .collect()
    })
}

/// The Lucas interval containing `n`.
pub fn interval_of(n: u64) -> LucasInterval {
    assert!(n <= MAX_N, "{n} exceeds MAX_N");
    let starts = interval_starts();
    let j = starts.partition_point(|&lo| lo <= n) - 1;
    LucasInterval::new(j as u32)
}

/// Leftmost and rightmost digit positions shared by every `N` in
/// `Lambda_j`: `(2n, -2n)` for `j = 2n` and `(2n+1, -(2n+2))` for
/// `j = 2n+1`. `Lambda_0` has no common bounds (`beta(0)` is empty,
/// `beta(1)` is the single position 0).
pub fn interval_bounds(j: u32) -> Result<(i32, i32), CodecError> {
    if j == 0 {
        return Err(CodecError::DegenerateInterval);
    }
    let j = j as i32;
    if j % 2 == 0 {
        Ok((j, -j))
    } else {
        Ok((j, -(j + 1)))
    }
}

/// Closed-form expansion of `L_m`: `10^2n . 0^(2n-1)1` for `m = 2n` and
/// `1(01)^n . (01)^n` for `m = 2n+1`.
pub fn lucas_expansion(m: u32) -> Result<PhiExpansion, CodecError> {
    if m == 0 {
        return Err(CodecError::ZeroLucasIndex);
    }
    let n = (m / 2) as i32;
    let support = if m.is_multiple_of(2) {
        vec![2 * n, -2 * n]
    } else {
        (-n..=n).rev().map(|i| 2 * i).collect()
    };
    PhiExpansion::from_support(support)
}

/// Greedy expansion: take the largest `phi^i <= remainder`, subtract, repeat.
pub fn expand_greedy(n: u64) -> PhiExpansion {
    assert!(n <= MAX_N, "{n} exceeds MAX_N");
    let mut support = Vec::new();
    if greedy_machine(n, |i| support.push(i)).is_none() {
        support = greedy_big(n);
    }
    PhiExpansion { support }
}

// Largest power of phi not exceeding n >= 1; phi^i <= n iff sign(n - phi^i) >= 0.
fn top_position(fits: impl Fn(i64) -> Option<bool>) -> Option<i64> {
    let mut i = 0;
    while fits(i + 1)? {
        i += 1;
    }
    Some(i)
}

// Reports each chosen position to `take`; `None` if a value left i128.
fn greedy_machine(n: u64, mut take: impl FnMut(i32)) -> Option<()> {
    if n == 0 {
        return Some(());
    }
    let n = n as i128;
    let fits = |i: i64| -> Option<bool> {
        let (a, b) = phi_pow_i128(i)?;
        Some(sign_i128(n.checked_sub(a)?, -b)? != Ordering::Less)
    };
    let mut i = top_position(fits)?;
    let (mut ra, mut rb) = (n, 0i128);
    while (ra, rb) != (0, 0) {
        let (a, b) = phi_pow_i128(i)?;
        let (da, db) = (ra.checked_sub(a)?, rb.checked_sub(b)?);
        if sign_i128(da, db)? == Ordering::Less {
            i -= 1;
        } else {
            take(i as i32);
            (ra, rb) = (da, db);
            i -= 2;
        }
    }
    Some(())
}

fn greedy_big(n: u64) -> Vec<i32> {
    if n == 0 {
        return Vec::new();
    }
    let target = GoldenInt::from_int(n);
    let fits = |i: i64| Some((&target - &phi_pow(i)).sign() != Ordering::Less);
    let mut i = top_position(fits).expect("exact comparison never fails");
    let mut rem = target;
    let mut support = Vec::new();
    while !rem.is_zero() {
        let d = &rem - &phi_pow(i);
        if d.sign() == Ordering::Less {
            i -= 1;
        } else {
            support.push(i as i32);
            rem = d;
            i -= 2;
        }
    }
    support
}

/// `s_beta(N)`, the number of ones in `beta(N)`.
pub fn sum_digits(n: u64) -> u32 {
    assert!(n <= MAX_N, "{n} exceeds MAX_N");
    let mut count = 0;
    match greedy_machine(n, |_| count += 1) {
        Some(()) => count,
        None => greedy_big(n).len() as u32,
    }
}

/// `T(N) = s_beta(N) mod 2`.
pub fn tsd(n: u64) -> u8 {
    (sum_digits(n) % 2) as u8
}

/// Position of an odd-interval number within the three-way split of
/// `Lambda_{2n+1}` (`n >= 2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Subinterval {
    /// `N = L_{2n+1} + k`, `1 <= k <= L_{2n-2} - 1`.
    I { n: u32, k: u64 },
    /// `N = L_{2n+1} + L_{2n-2} + k`, `0 <= k <= L_{2n-3}`.
    J { n: u32, k: u64 },
    /// `N = L_{2n+1} + L_{2n-1} + k`, `1 <= k <= L_{2n-2} - 1`.
    K { n: u32, k: u64 },
}

impl Subinterval {
    /// The number this classification describes.
    pub fn value(&self) -> u64 {
        match *self {
            Subinterval::I { n, k } => lucas_u64(2 * n + 1) + k,
            Subinterval::J { n, k } => lucas_u64(2 * n + 1) + lucas_u64(2 * n - 2) + k,
            Subinterval::K { n, k } => lucas_u64(2 * n + 1) + lucas_u64(2 * n - 1) + k,
        }
    }

    /// The number whose expansion the surgery rewrites.
    pub fn source(&self) -> u64 {
        match *self {
            Subinterval::I { n, k } | Subinterval::K { n, k } => lucas_u64(2 * n - 1) + k,
            Subinterval::J { n, k } => lucas_u64(2 * n - 2) + k,
        }
    }

    /// `(strip_prefix, new_prefix, strip_suffix, new_suffix)` mapping
    /// `beta(source)` to `beta(value)`.
    pub fn surgery_words(&self) -> (&'static str, &'static str, &'static str, &'static str) {
        match self {
            Subinterval::I { .. } => ("10", "1000", "01", "1001"),
            Subinterval::J { .. } => ("10", "10010", "01", "001001"),
            Subinterval::K { .. } => ("", "10", "01", "0001"),
        }
    }
}

/// Classifies `n` into `I_m`, `J_m` or `K_m` of its odd Lucas interval
/// `Lambda_{2m+1}`, `m >= 2`.
pub fn subinterval_of(n: u64) -> Result<Subinterval, CodecError> {
    let iv = interval_of(n);
    if iv.j.is_multiple_of(2) || iv.j < 5 {
        return Err(CodecError::NotInSplitInterval(n));
    }
    let m = (iv.j - 1) / 2;
    let base = lucas_u64(2 * m + 1);
    let off = n - base;
    Ok(if off < lucas_u64(2 * m - 2) {
        Subinterval::I { n: m, k: off }
    } else if off <= lucas_u64(2 * m - 1) {
        Subinterval::J {
            n: m,
            k: off - lucas_u64(2 * m - 2),
        }
    } else {
        Subinterval::K {
            n: m,
            k: off - lucas_u64(2 * m - 1),
        }
    })
}

const BASE_EXPANSIONS: [&[i32]; 7] = [
    &[],
    &[0],
    &[1, -2],
    &[2, -2],
    &[2, 0, -2],
    &[3, -1, -4],
    &[3, 1, -4],
];

/// Expansion assembled from the Lucas-interval recursion, without search.
pub fn expand_recursive(n: u64) -> PhiExpansion {
    try_expand_recursive(n).expect("recursion rules apply on their whole range")
}

/// As [`expand_recursive`], surfacing any misapplied rule as an error.
pub fn try_expand_recursive(n: u64) -> Result<PhiExpansion, CodecError> {
    check_n(n)?;
    if let Some(base) = BASE_EXPANSIONS.get(n as usize) {
        return Ok(PhiExpansion {
            support: base.to_vec(),
        });
    }
    let iv = interval_of(n);
    if iv.j.is_multiple_of(2) {
        let head = lucas_expansion(iv.j)?;
        let tail = try_expand_recursive(n - iv.lo)?;
        return head.union(&tail);
    }
    let sub = subinterval_of(n)?;
    let source = try_expand_recursive(sub.source())?;
    let (sp, np, ss, ns) = sub.surgery_words();
    splice(&source, sp, np, ss, ns)
}

/// The word `T(Lambda_j)`.
pub fn tsd_interval(j: u32) -> Vec<u8> {
    let iv = LucasInterval::new(j);
    crate::par::map_range(iv.lo..iv.hi + 1, tsd)
}

/// `T(lo), ..., T(hi)`.
pub fn tsd_range(lo: u64, hi: u64) -> Vec<u8> {
    crate::par::map_range(lo..hi + 1, tsd)
}

/// One line of machine-readable output describing `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionRecord {
    #[serde(rename = "N")]
    pub n: u64,
    pub word: String,
    pub support: Vec<i32>,
    pub s_beta: u32,
    #[serde(rename = "T")]
    pub t: u8,
    pub interval: u32,
}

impl ExpansionRecord {
    pub fn new(n: u64, e: &PhiExpansion) -> Self {
        ExpansionRecord {
            n,
            word: e.to_string(),
            support: e.support.clone(),
            s_beta: e.digit_sum(),
            t: (e.digit_sum() % 2) as u8,
            interval: interval_of(n).j,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sup(n: u64) -> Vec<i32> {
        expand_greedy(n).into_support()
    }

    fn exp(s: &[i32]) -> PhiExpansion {
        PhiExpansion::from_support(s.to_vec()).unwrap()
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(sup(0), Vec::<i32>::new());
        assert_eq!(expand_greedy(0).to_string(), "0");
        assert_eq!(sup(7), vec![4, -4]);
        assert_eq!(expand_greedy(7).to_string(), "10000.0001");
        assert_eq!(sup(16), vec![5, 3, -1, -6]);
        assert_eq!(expand_greedy(16).to_string(), "101000.100001");
    }

    #[test]
    fn greedy_big_agrees_with_machine_path() {
        for n in (0..500).chain([10_000_019, 1 << 40, MAX_N / 3]) {
            let mut support = Vec::new();
            assert!(greedy_machine(n, |i| support.push(i)).is_some());
            assert_eq!(support, greedy_big(n), "n={n}");
            assert_eq!(sum_digits(n), support.len() as u32);
        }
        // high positions overflow the i128 squares, forcing the big path
        assert!(greedy_machine(MAX_N, |_| ()).is_none());
        assert_eq!(sum_digits(MAX_N), greedy_big(MAX_N).len() as u32);
        let e = expand_greedy(MAX_N);
        assert_eq!(e.evaluate(), GoldenInt::from_int(MAX_N));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(exp(&[]).evaluate(), GoldenInt::zero());
        assert_eq!(exp(&[1, -2]).evaluate(), GoldenInt::from_int(2));
        assert_eq!(exp(&[3, -1, -4]).evaluate(), GoldenInt::from_int(5));
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&[4, -4]));
        assert!(!validate(&[2, 1]));
        assert!(validate(&[]));
        assert!(!validate(&[1, 3, 2]));
        assert!(!validate(&[3, 3]));
        assert_eq!(
            PhiExpansion::from_support(vec![-1, 2]),
            Err(CodecError::NotDecreasing)
        );
    }

    #[test]
    fn digit_sums() {
        assert_eq!((sum_digits(9), tsd(9)), (4, 0));
        assert_eq!((sum_digits(11), tsd(11)), (5, 1));
        assert_eq!((sum_digits(0), tsd(0)), (0, 0));
    }

    #[test]
    fn intervals() {
        let iv = |n| {
            let i = interval_of(n);
            (i.j, i.lo, i.hi)
        };
        assert_eq!(iv(0), (0, 0, 1));
        assert_eq!(iv(1), (0, 0, 1));
        assert_eq!(iv(2), (1, 2, 2));
        assert_eq!(iv(9), (4, 7, 11));
        assert_eq!(iv(12), (5, 12, 17));
        assert_eq!(iv(18), (6, 18, 29));
        assert_eq!(interval_of(MAX_N).j, 90);
        for j in 0..90 {
            assert_eq!(LucasInterval::new(j).hi + 1, LucasInterval::new(j + 1).lo);
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(interval_bounds(4), Ok((4, -4)));
        assert_eq!(interval_bounds(5), Ok((5, -6)));
        assert_eq!(interval_bounds(1), Ok((1, -2)));
        assert_eq!(interval_bounds(0), Err(CodecError::DegenerateInterval));
    }

    #[test]
    fn lucas_closed_forms() {
        assert_eq!(lucas_expansion(2).unwrap().support(), &[2, -2]);
        assert_eq!(lucas_expansion(3).unwrap().support(), &[2, 0, -2]);
        assert_eq!(lucas_expansion(1).unwrap().support(), &[0]);
        let six = lucas_expansion(6).unwrap();
        assert_eq!(six.support(), &[6, -6]);
        assert_eq!(six.evaluate(), GoldenInt::from_int(18));
        assert_eq!(lucas_expansion(0), Err(CodecError::ZeroLucasIndex));
    }

    #[test]
    fn subintervals() {
        assert_eq!(subinterval_of(12), Ok(Subinterval::I { n: 2, k: 1 }));
        assert_eq!(subinterval_of(13), Ok(Subinterval::I { n: 2, k: 2 }));
        assert_eq!(subinterval_of(14), Ok(Subinterval::J { n: 2, k: 0 }));
        assert_eq!(subinterval_of(15), Ok(Subinterval::J { n: 2, k: 1 }));
        assert_eq!(subinterval_of(16), Ok(Subinterval::K { n: 2, k: 1 }));
        assert_eq!(subinterval_of(17), Ok(Subinterval::K { n: 2, k: 2 }));
        for n in [0, 2, 5, 6, 9, 18] {
            assert_eq!(subinterval_of(n), Err(CodecError::NotInSplitInterval(n)));
        }
        for n in 12..=2000 {
            if let Ok(s) = subinterval_of(n) {
                assert_eq!(s.value(), n);
            }
        }
    }

    #[test]
    fn surgery_examples() {
        let w: DigitWord = "1000.1001".parse().unwrap();
        let out = surgery(&w, "10", "1000", "01", "1001").unwrap();
        assert_eq!(out.to_string(), "100000.101001");
        assert_eq!(out, expand_greedy(12).to_word());

        let w: DigitWord = "10.01".parse().unwrap();
        assert_eq!(surgery(&w, "10", "10", "01", "01").unwrap(), w);

        // J_2 with k = 1: source beta(L_2 + 1) = beta(4), target beta(15)
        let w = expand_greedy(4).to_word();
        let out = surgery(&w, "10", "10010", "01", "001001").unwrap();
        assert_eq!(out.to_string(), "100101.001001");
        assert_eq!(out, expand_greedy(15).to_word());

        let w = expand_greedy(7).to_word();
        assert!(matches!(
            surgery(&w, "11", "1", "01", "01"),
            Err(CodecError::PrefixMismatch { .. })
        ));
        assert!(matches!(
            surgery(&w, "10", "10", "11", "01"),
            Err(CodecError::SuffixMismatch { .. })
        ));
        assert_eq!(
            surgery(&"1".parse().unwrap(), "1", "", "1", ""),
            Err(CodecError::Overlap)
        );
    }

    #[test]
    fn recursive_examples() {
        assert_eq!(expand_recursive(8).support(), &[4, 0, -4]);
        assert_eq!(expand_recursive(12).support(), &[5, -1, -3, -6]);
        assert_eq!(expand_recursive(6).support(), &[3, 1, -4]);
        for n in 0..5000 {
            assert_eq!(expand_recursive(n), expand_greedy(n), "n={n}");
        }
        assert_eq!(
            try_expand_recursive(MAX_N + 1),
            Err(CodecError::OutOfRange(MAX_N + 1))
        );
    }

    #[test]
    fn tsd_words() {
        assert_eq!(tsd_interval(0), vec![0, 1]);
        assert_eq!(tsd_interval(2), vec![0, 1]);
        assert_eq!(tsd_interval(3), vec![1, 1]);
        assert_eq!(tsd_interval(5), vec![0, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn text_format() {
        assert_eq!(format(&exp(&[1, -2])), "10.01");
        assert_eq!(parse("10.01").unwrap().support(), &[1, -2]);
        assert_eq!(parse("10·01").unwrap().support(), &[1, -2]);
        assert_eq!(parse("0010.0100").unwrap().to_string(), "10.01");
        assert_eq!(parse("11.0"), Err(CodecError::AdjacentOnes(1)));
        assert_eq!(parse("1.1"), Err(CodecError::AdjacentOnes(0)));
        assert_eq!(parse("1.0.1"), Err(CodecError::MultiplePoints));
        assert_eq!(parse("102"), Err(CodecError::ForeignCharacter('2')));
        assert_eq!(parse(""), Err(CodecError::Empty));
        assert_eq!(parse("0").unwrap(), PhiExpansion::empty());
        assert_eq!(parse("1").unwrap().support(), &[0]);
        assert_eq!(parse(".01").unwrap().support(), &[-2]);
        assert_eq!(exp(&[-2]).to_string(), "0.01");
        assert_eq!(exp(&[3]).to_string(), "1000");
    }

    #[test]
    fn records() {
        let r = ExpansionRecord::new(11, &expand_greedy(11));
        assert_eq!(r.word, "10101.0101");
        assert_eq!((r.s_beta, r.t, r.interval), (5, 1, 4));
    }
}
