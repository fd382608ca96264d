//! Exact scalars and the special-number families.
//!
//! Integer-valued families live in memoized [`TriangleCache`]s that grow a
//! row at a time from their recurrences. The Lah triangle is filled from its
//! closed form `L(n, k) = (n!/k!) C(n-1, k-1)` instead.

mod poly;
mod triangle;

use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use poly::Polynomial;
pub use triangle::{TriangleCache, TriangleKind};

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;
/// Normalized arbitrary-precision fraction (denominator positive, lowest terms).
pub type ExactRational = BigRational;

static STIRLING1_SIGNED: TriangleCache = TriangleCache::new(TriangleKind::StirlingSigned);
static STIRLING1_UNSIGNED: TriangleCache = TriangleCache::new(TriangleKind::StirlingUnsigned);
static STIRLING2: TriangleCache = TriangleCache::new(TriangleKind::Stirling2);
static LAH: TriangleCache = TriangleCache::new(TriangleKind::Lah);
static BINOMIAL: TriangleCache = TriangleCache::new(TriangleKind::Binomial);

static FACTORIALS: RwLock<Vec<BigInt>> = RwLock::new(Vec::new());
static BELL: RwLock<Vec<BigInt>> = RwLock::new(Vec::new());

/// The shared cache for one family.
pub fn triangle(kind: TriangleKind) -> &'static TriangleCache {
    match kind {
        TriangleKind::StirlingSigned => &STIRLING1_SIGNED,
        TriangleKind::StirlingUnsigned => &STIRLING1_UNSIGNED,
        TriangleKind::Stirling2 => &STIRLING2,
        TriangleKind::Lah => &LAH,
        TriangleKind::Binomial => &BINOMIAL,
    }
}

pub fn rat(v: i64) -> ExactRational {
    ExactRational::from_integer(v.into())
}

pub fn ratio(num: i64, den: i64) -> ExactRational {
    ExactRational::new(num.into(), den.into())
}

pub fn int_to_rat(v: BigInt) -> ExactRational {
    ExactRational::from_integer(v)
}

/// `(-1)^e` as a rational.
pub fn sign(e: usize) -> ExactRational {
    if e.is_multiple_of(2) {
        ExactRational::one()
    } else {
        -ExactRational::one()
    }
}

/// `x^e` with `0^0 = 1`.
pub fn pow(x: &ExactRational, e: usize) -> ExactRational {
    num_traits::pow(x.clone(), e)
}

/// Parses `"num/den"` or a bare integer. Whitespace around the parts is
/// ignored; a zero denominator is an error.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let err = || Error::ParseRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(ExactRational::new(num, den))
}

/// Canonical text form: `"n"` for integers, `"num/den"` otherwise.
pub fn format_rational(x: &ExactRational) -> String {
    x.to_string()
}

pub fn factorial(n: usize) -> BigInt {
    {
        let f = FACTORIALS.read().expect("factorial lock poisoned");
        if let Some(v) = f.get(n) {
            return v.clone();
        }
    }
    let mut f = FACTORIALS.write().expect("factorial lock poisoned");
    if f.is_empty() {
        f.push(BigInt::one());
    }
    while f.len() <= n {
        let next = f.last().unwrap() * BigInt::from(f.len());
        f.push(next);
    }
    f[n].clone()
}

/// Stirling number of the second kind `S(n, k)`.
pub fn stirling2(n: usize, k: usize) -> ExactInt {
    STIRLING2.get(n, k)
}

/// Signed Stirling number of the first kind `s(n, k)`.
pub fn stirling1_signed(n: usize, k: usize) -> ExactInt {
    STIRLING1_SIGNED.get(n, k)
}

/// Unsigned Stirling number of the first kind, `(-1)^(n-k) s(n, k)`.
pub fn stirling1_unsigned(n: usize, k: usize) -> ExactInt {
    STIRLING1_UNSIGNED.get(n, k)
}

pub fn lah(n: usize, k: usize) -> ExactInt {
    LAH.get(n, k)
}

pub fn binom_int(n: usize, k: usize) -> ExactInt {
    BINOMIAL.get(n, k)
}

/// Generalized binomial coefficient `x (x-1) ... (x-n+1) / n!`.
pub fn binom_gen(x: &ExactRational, n: usize) -> ExactRational {
    let mut acc = ExactRational::one();
    for i in 0..n {
        acc *= x - rat(i as i64);
        if acc.is_zero() {
            return acc;
        }
    }
    acc / int_to_rat(factorial(n))
}

/// Bell number `b_n`, from the Bell (Aitken) triangle.
pub fn bell(n: usize) -> ExactInt {
    {
        let b = BELL.read().expect("bell lock poisoned");
        if let Some(v) = b.get(n) {
            return v.clone();
        }
    }
    let mut b = BELL.write().expect("bell lock poisoned");
    if b.len() <= n {
        let target = (n + 1).max(2 * b.len());
        *b = bell_triangle(target);
    }
    b[n].clone()
}

// First `count` Bell numbers. Each row of the triangle starts with the last
// entry of the previous row; the row's first entry is the next Bell number.
fn bell_triangle(count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    let mut row = vec![BigInt::one()];
    while out.len() < count {
        out.push(row[0].clone());
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for v in &row {
            let last = next.last().unwrap().clone();
            next.push(last + v);
        }
        row = next;
    }
    out
}

/// Exponential (Touchard) polynomial `phi_n(x) = sum_k S(n, k) x^k`.
pub fn exp_poly(n: usize) -> Polynomial {
    exp_poly_from(&Recurrences, n)
}

pub fn exp_poly_eval(n: usize, x: &ExactRational) -> ExactRational {
    exp_poly(n).eval(x)
}

pub(crate) fn exp_poly_from(src: &dyn NumberSource, n: usize) -> Polynomial {
    Polynomial::new((0..=n).map(|k| int_to_rat(src.stirling2(n, k))).collect())
}

/// Generalized Laguerre polynomial `L_n^(q)(x)` for integer `q >= -1`:
/// `sum_i (-1)^i C(n+q, n-i) x^i / i!`.
pub fn laguerre(n: usize, q: i64, x: &ExactRational) -> Result<ExactRational> {
    if q < -1 {
        return Err(Error::LaguerreOrder(q));
    }
    let upper = rat(n as i64 + q);
    let mut sum = ExactRational::zero();
    let mut x_pow = ExactRational::one();
    for i in 0..=n {
        let term = binom_gen(&upper, n - i) * &x_pow / int_to_rat(factorial(i));
        sum += sign(i) * term;
        x_pow *= x;
    }
    Ok(sum)
}

/// A provider of the integer families. Identity evaluators read every
/// triangle through this trait, so a second provider built from generating
/// functions can replace the recurrences wholesale.
pub trait NumberSource: Sync {
    fn stirling1(&self, n: usize, k: usize) -> ExactInt;
    fn stirling1_unsigned(&self, n: usize, k: usize) -> ExactInt;
    fn stirling2(&self, n: usize, k: usize) -> ExactInt;
    fn lah(&self, n: usize, k: usize) -> ExactInt;
    fn binom(&self, n: usize, k: usize) -> ExactInt;
    fn bell(&self, n: usize) -> ExactInt;
}

/// The memoized recurrence tables above.
#[derive(Debug, Clone, Copy, Default)]
pub struct Recurrences;

impl NumberSource for Recurrences {
    fn stirling1(&self, n: usize, k: usize) -> ExactInt {
        stirling1_signed(n, k)
    }
    fn stirling1_unsigned(&self, n: usize, k: usize) -> ExactInt {
        stirling1_unsigned(n, k)
    }
    fn stirling2(&self, n: usize, k: usize) -> ExactInt {
        stirling2(n, k)
    }
    fn lah(&self, n: usize, k: usize) -> ExactInt {
        lah(n, k)
    }
    fn binom(&self, n: usize, k: usize) -> ExactInt {
        binom_int(n, k)
    }
    fn bell(&self, n: usize) -> ExactInt {
        bell(n)
    }
}

/// True when `x` is strictly between 0 and 1.
pub fn in_unit_interval(x: &ExactRational) -> bool {
    x.is_positive() && x < &ExactRational::one()
}
