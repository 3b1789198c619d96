//! Exact arithmetic in the ring `Z[phi]` and the field `Q(sqrt 5)`.
//!
//! Every decision taken elsewhere in the crate (greedy digit choice,
//! positivity of an eigenvector, frequency comparisons) goes through the
//! exact sign tests in this module. Floating point is only ever used to
//! print approximations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// An element `a + b*phi` of `Z[phi]`, with `phi = (1 + sqrt 5) / 2`.
///
/// The representation is unique because `phi` is irrational, so equality is
/// componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GoldenInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl GoldenInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        GoldenInt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Self {
        GoldenInt::new(0, 0)
    }

    pub fn one() -> Self {
        GoldenInt::new(1, 0)
    }

    pub fn phi() -> Self {
        GoldenInt::new(0, 1)
    }

    /// An ordinary integer `n`, i.e. `n + 0*phi`.
    pub fn from_int(n: impl Into<BigInt>) -> Self {
        GoldenInt::new(n, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Sign of the real number `a + b*phi`, decided with integers only.
    pub fn sign(&self) -> Ordering {
        let s: BigInt = &self.a * 2 + &self.b;
        let t = &self.b;
        sign_of_half_sum(&s, t, |x| x * x, |x| x * x * 5)
    }

    /// The image of this element in `Q(sqrt 5)`.
    pub fn to_quad(&self) -> QuadRat {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let b = BigRational::from_integer(self.b.clone());
        QuadRat::new(
            BigRational::from_integer(self.a.clone()) + &b * &half,
            b * half,
        )
    }
}

/// Sign of `(s + t*sqrt 5) / 2` given closures for `s^2` and `5 t^2`.
fn sign_of_half_sum<T, S, F>(s: &T, t: &T, square: S, five_square: F) -> Ordering
where
    T: Signed,
    S: Fn(&T) -> T,
    F: Fn(&T) -> T,
    T: Ord,
{
    match (s.signum_ord(), t.signum_ord()) {
        (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
        (x, y) if x != Ordering::Less && y != Ordering::Less => Ordering::Greater,
        (x, y) if x != Ordering::Greater && y != Ordering::Greater => Ordering::Less,
        // t > 0 > s: positive iff 5t^2 > s^2.
        (Ordering::Less, _) => five_square(t).cmp(&square(s)),
        // s > 0 > t: positive iff s^2 > 5t^2.
        _ => square(s).cmp(&five_square(t)),
    }
}

trait SignumOrd {
    fn signum_ord(&self) -> Ordering;
}

impl<T: Signed> SignumOrd for T {
    fn signum_ord(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

/// Machine-word version of [`GoldenInt::sign`]; `None` when an intermediate
/// product would overflow.
pub(crate) fn sign_i128(a: i128, b: i128) -> Option<Ordering> {
    let s = a.checked_mul(2)?.checked_add(b)?;
    let ss = s.checked_mul(s)?;
    let tt5 = b.checked_mul(b)?.checked_mul(5)?;
    Some(sign_of_half_sum(&s, &b, |_| ss, |_| tt5))
}

impl Add for &GoldenInt {
    type Output = GoldenInt;
    fn add(self, rhs: &GoldenInt) -> GoldenInt {
        GoldenInt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &GoldenInt {
    type Output = GoldenInt;
    fn sub(self, rhs: &GoldenInt) -> GoldenInt {
        GoldenInt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &GoldenInt {
    type Output = GoldenInt;
    // (a + b phi)(c + d phi) = (ac + bd) + (ad + bc + bd) phi
    fn mul(self, rhs: &GoldenInt) -> GoldenInt {
        let bd = &self.b * &rhs.b;
        GoldenInt {
            a: &self.a * &rhs.a + &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a + bd,
        }
    }
}

impl Neg for &GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(GoldenInt, Add, add);
forward_owned_binop!(GoldenInt, Sub, sub);
forward_owned_binop!(GoldenInt, Mul, mul);

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        -&self
    }
}

pub fn golden_add(x: &GoldenInt, y: &GoldenInt) -> GoldenInt {
    x + y
}

pub fn golden_mul(x: &GoldenInt, y: &GoldenInt) -> GoldenInt {
    x * y
}

pub fn golden_neg(x: &GoldenInt) -> GoldenInt {
    -x
}

/// Sign of `x` as `-1`, `0` or `+1`.
pub fn golden_sign(x: &GoldenInt) -> i8 {
    match x.sign() {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{} - {}*phi", self.a, -&self.b)
        } else {
            write!(f, "{} + {}*phi", self.a, self.b)
        }
    }
}

/// Fibonacci number with signed index, `F(-n) = (-1)^(n+1) F(n)`.
pub fn fib(n: i64) -> BigInt {
    let m = n.unsigned_abs();
    let (mut x, mut y) = (BigInt::zero(), BigInt::one());
    for _ in 0..m {
        let next = &x + &y;
        x = std::mem::replace(&mut y, next);
    }
    if n < 0 && m.is_multiple_of(2) {
        -x
    } else {
        x
    }
}

/// Lucas number `L_n` (`L_0 = 2`, `L_1 = 1`).
pub fn lucas(n: u32) -> BigInt {
    let (mut x, mut y) = (BigInt::from(2), BigInt::one());
    for _ in 0..n {
        let next = &x + &y;
        x = std::mem::replace(&mut y, next);
    }
    x
}

const POW_CACHE_RADIUS: i64 = 256;

fn pow_cache() -> &'static [GoldenInt] {
    static CACHE: OnceLock<Vec<GoldenInt>> = OnceLock::new();
    CACHE.get_or_init(|| {
        (-POW_CACHE_RADIUS..=POW_CACHE_RADIUS)
            .map(phi_pow_uncached)
            .collect()
    })
}

fn phi_pow_uncached(i: i64) -> GoldenInt {
    GoldenInt {
        a: fib(i - 1),
        b: fib(i),
    }
}

/// `phi^i = F(i-1) + F(i)*phi`, for any integer `i`.
pub fn phi_pow(i: i64) -> GoldenInt {
    if i.abs() <= POW_CACHE_RADIUS {
        pow_cache()[(i + POW_CACHE_RADIUS) as usize].clone()
    } else {
        phi_pow_uncached(i)
    }
}

/// `phi^i` as a pair of machine words, if it fits.
pub(crate) fn phi_pow_i128(i: i64) -> Option<(i128, i128)> {
    static CACHE: OnceLock<Vec<Option<(i128, i128)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        pow_cache()
            .iter()
            .map(|g| Some((g.a.to_i128()?, g.b.to_i128()?)))
            .collect()
    });
    if i.abs() <= POW_CACHE_RADIUS {
        cache[(i + POW_CACHE_RADIUS) as usize]
    } else {
        None
    }
}

/// An element `p + q*sqrt 5` of `Q(sqrt 5)`; both coefficients are kept in
/// lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadRat {
    pub p: BigRational,
    pub q: BigRational,
}

impl QuadRat {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        QuadRat { p, q }
    }

    /// `pn/pd + (qn/qd)*sqrt 5`. Panics on a zero denominator.
    pub fn from_fracs(pn: i64, pd: i64, qn: i64, qd: i64) -> Self {
        QuadRat::new(
            BigRational::new(pn.into(), pd.into()),
            BigRational::new(qn.into(), qd.into()),
        )
    }

    pub fn from_int(n: i64) -> Self {
        QuadRat::from_fracs(n, 1, 0, 1)
    }

    pub fn from_rational(r: BigRational) -> Self {
        QuadRat::new(r, BigRational::zero())
    }

    pub fn zero() -> Self {
        QuadRat::from_int(0)
    }

    pub fn one() -> Self {
        QuadRat::from_int(1)
    }

    pub fn sqrt5() -> Self {
        QuadRat::from_fracs(0, 1, 1, 1)
    }

    /// `phi^2 = (3 + sqrt 5) / 2`.
    pub fn phi_squared() -> Self {
        QuadRat::from_fracs(3, 2, 1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// Galois conjugate `p - q*sqrt 5`.
    pub fn conjugate(&self) -> Self {
        QuadRat::new(self.p.clone(), -&self.q)
    }

    /// Field norm `p^2 - 5 q^2`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - &self.q * &self.q * BigRational::from_integer(5.into())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadRat::new(&self.p / &n, -&self.q / &n))
    }

    pub fn signum(&self) -> Ordering {
        let five = BigRational::from_integer(5.into());
        sign_of_half_sum(&self.p, &self.q, |x| x * x, |x| x * x * &five)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        self.p.to_f64().unwrap_or(f64::NAN) + self.q.to_f64().unwrap_or(f64::NAN) * 5f64.sqrt()
    }
}

impl PartialOrd for QuadRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadRat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl Add for &QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: &QuadRat) -> QuadRat {
        QuadRat::new(&self.p + &rhs.p, &self.q + &rhs.q)
    }
}

impl Sub for &QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: &QuadRat) -> QuadRat {
        QuadRat::new(&self.p - &rhs.p, &self.q - &rhs.q)
    }
}

impl Mul for &QuadRat {
    type Output = QuadRat;
    fn mul(self, rhs: &QuadRat) -> QuadRat {
        let five = BigRational::from_integer(5.into());
        QuadRat::new(
            &self.p * &rhs.p + &self.q * &rhs.q * five,
            &self.p * &rhs.q + &self.q * &rhs.p,
        )
    }
}

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat::new(-&self.p, -&self.q)
    }
}

forward_owned_binop!(QuadRat, Add, add);
forward_owned_binop!(QuadRat, Sub, sub);
forward_owned_binop!(QuadRat, Mul, mul);

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        -&self
    }
}

impl std::iter::Sum for QuadRat {
    fn sum<I: Iterator<Item = QuadRat>>(iter: I) -> QuadRat {
        iter.fold(QuadRat::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a QuadRat> for QuadRat {
    fn sum<I: Iterator<Item = &'a QuadRat>>(iter: I) -> QuadRat {
        iter.fold(QuadRat::zero(), |acc, x| acc + x)
    }
}

fn write_frac(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders as `p + q*sqrt(5)`, omitting a zero part, e.g.
/// `1/4 - 1/20*sqrt(5)`, `1/10*sqrt(5)`, `1/2`.
impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => write_frac(f, &self.p),
            (true, false) => {
                write_frac(f, &self.q)?;
                f.write_str("*sqrt(5)")
            }
            (false, false) => {
                write_frac(f, &self.p)?;
                if self.q.is_negative() {
                    f.write_str(" - ")?;
                } else {
                    f.write_str(" + ")?;
                }
                write_frac(f, &self.q.abs())?;
                f.write_str("*sqrt(5)")
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseQuadError {
    #[error("empty expression")]
    Empty,
    #[error("malformed term `{0}`")]
    BadTerm(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Accepts sums of rational and `*sqrt(5)` terms in any order, e.g.
/// `1/5*sqrt(5) - 2/5` or `3/2 + 1/2*sqrt(5)`. `√5` is accepted for `sqrt(5)`.
impl FromStr for QuadRat {
    type Err = ParseQuadError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s
            .replace("√5", "*sqrt(5)")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        if compact.is_empty() {
            return Err(ParseQuadError::Empty);
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in compact.char_indices() {
            if (c == '+' || c == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut out = QuadRat::zero();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let (coef, radical) = if let Some(c) = body.strip_suffix("sqrt(5)") {
                (c.strip_suffix('*').unwrap_or(c), true)
            } else {
                (body, false)
            };
            let mut value = if coef.is_empty() {
                if !radical {
                    return Err(ParseQuadError::BadTerm(term.to_string()));
                }
                BigRational::one()
            } else {
                parse_fraction(coef).map_err(|e| match e {
                    ParseQuadError::ZeroDenominator(_) => {
                        ParseQuadError::ZeroDenominator(term.to_string())
                    }
                    _ => ParseQuadError::BadTerm(term.to_string()),
                })?
            };
            if neg {
                value = -value;
            }
            if radical {
                out.q += value;
            } else {
                out.p += value;
            }
        }
        Ok(out)
    }
}

fn parse_fraction(s: &str) -> Result<BigRational, ParseQuadError> {
    let bad = || ParseQuadError::BadTerm(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ParseQuadError::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(n, d))
}

/// A basis of the nullspace of the square matrix `m`, by exact Gauss-Jordan
/// elimination over `Q(sqrt 5)`.
///
/// Pivots are taken as the first nonzero entry scanning columns left to
/// right, so the output is reproducible. Each basis vector has a `1` at its
/// free column and zeros at the other free columns.
pub fn quad_nullspace(m: &[Vec<QuadRat>]) -> Vec<Vec<QuadRat>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<QuadRat>> = m.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = a[r][c].inv().expect("pivot is nonzero");
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }

    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![QuadRat::zero(); cols];
            v[fc] = QuadRat::one();
            for (pr, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -&a[pr][fc];
            }
            v
        })
        .collect()
}

/// `m * v` over `Q(sqrt 5)`.
pub fn mat_vec(m: &[Vec<QuadRat>], v: &[QuadRat]) -> Vec<QuadRat> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}
