//! Truncated power series over exact rationals.
//!
//! A [`Series`] stores raw coefficients `c_0..=c_N`. The flavor tag only
//! changes the *sequence view*: for an exponential generating function the
//! sequence term is `a_n = n! c_n`, for an ordinary one it is `c_n` itself.
//! All arithmetic is exact through the stored order; binary operations
//! truncate to the smaller of the two orders.

pub mod oracle;
mod transform;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{binom_gen, factorial, int_to_rat, pow, rat, sign, ExactRational};

pub use transform::{apply_transform, compose_path, dual_path_check, TransformKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "EGF")]
    Egf,
    #[serde(rename = "OGF")]
    Ogf,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Egf => write!(f, "EGF"),
            Flavor::Ogf => write!(f, "OGF"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    flavor: Flavor,
    coeffs: Vec<ExactRational>,
}

impl Series {
    /// Builds a series from its sequence view. Only the first `order + 1`
    /// terms are used.
    pub fn new(flavor: Flavor, order: usize, sequence: &[ExactRational]) -> Result<Self> {
        if sequence.len() < order + 1 {
            return Err(Error::LengthMismatch {
                need: order + 1,
                got: sequence.len(),
            });
        }
        let coeffs = match flavor {
            Flavor::Ogf => sequence[..=order].to_vec(),
            Flavor::Egf => sequence[..=order]
                .iter()
                .enumerate()
                .map(|(n, a)| a / int_to_rat(factorial(n)))
                .collect(),
        };
        Ok(Series { flavor, coeffs })
    }

    /// Builds a series from raw power-series coefficients.
    ///
    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(flavor: Flavor, coeffs: Vec<ExactRational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series holds at least the constant term"
        );
        Series { flavor, coeffs }
    }

    pub fn from_fn(flavor: Flavor, order: usize, f: impl FnMut(usize) -> ExactRational) -> Self {
        Series {
            flavor,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(flavor: Flavor, order: usize) -> Self {
        Series::from_fn(flavor, order, |_| ExactRational::zero())
    }

    pub fn constant(flavor: Flavor, order: usize, c: ExactRational) -> Self {
        let mut s = Series::zero(flavor, order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(flavor: Flavor, order: usize) -> Self {
        Series::constant(flavor, order, ExactRational::one())
    }

    /// The series `t`.
    pub fn var(flavor: Flavor, order: usize) -> Self {
        Series::from_fn(flavor, order, |n| {
            if n == 1 {
                ExactRational::one()
            } else {
                ExactRational::zero()
            }
        })
    }

    /// `1 / (1 - lambda t)`.
    pub fn geometric(flavor: Flavor, lambda: &ExactRational, order: usize) -> Self {
        Series::from_fn(flavor, order, |n| pow(lambda, n))
    }

    /// `e^(lambda t)`.
    pub fn exp_linear(flavor: Flavor, lambda: &ExactRational, order: usize) -> Self {
        Series::from_fn(flavor, order, |n| pow(lambda, n) / int_to_rat(factorial(n)))
    }

    /// `e^t - 1`.
    pub fn expm1(flavor: Flavor, order: usize) -> Self {
        let mut s = Series::exp_linear(flavor, &ExactRational::one(), order);
        s.coeffs[0] = ExactRational::zero();
        s
    }

    /// `ln(1 + t)`.
    pub fn ln1p(flavor: Flavor, order: usize) -> Self {
        Series::from_fn(flavor, order, |n| {
            if n == 0 {
                ExactRational::zero()
            } else {
                sign(n - 1) / rat(n as i64)
            }
        })
    }

    /// `ln(1 + t) / t`.
    pub fn ln1p_over_t(flavor: Flavor, order: usize) -> Self {
        Series::from_fn(flavor, order, |n| sign(n) / rat(n as i64 + 1))
    }

    /// `(1 + t)^mu` from generalized binomial coefficients.
    pub fn binomial_power(flavor: Flavor, mu: &ExactRational, order: usize) -> Self {
        Series::from_fn(flavor, order, |n| binom_gen(mu, n))
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// Raw coefficient of `t^n`; zero past the order.
    pub fn coeff(&self, n: usize) -> ExactRational {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    /// Sequence-view term `a_n`.
    pub fn term(&self, n: usize) -> ExactRational {
        match self.flavor {
            Flavor::Ogf => self.coeff(n),
            Flavor::Egf => self.coeff(n) * int_to_rat(factorial(n)),
        }
    }

    pub fn sequence(&self) -> Vec<ExactRational> {
        (0..=self.order()).map(|n| self.term(n)).collect()
    }

    /// Same raw coefficients, reinterpreted under another flavor.
    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = flavor;
        self
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        Series {
            flavor: self.flavor,
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    fn check_flavor(&self, other: &Series) -> Result<()> {
        if self.flavor != other.flavor {
            return Err(Error::FlavorMismatch {
                expected: self.flavor,
                found: other.flavor,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_flavor(other)?;
        let order = self.order().min(other.order());
        Ok(Series::from_fn(self.flavor, order, |n| {
            &self.coeffs[n] + &other.coeffs[n]
        }))
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_flavor(other)?;
        let order = self.order().min(other.order());
        Ok(Series::from_fn(self.flavor, order, |n| {
            &self.coeffs[n] - &other.coeffs[n]
        }))
    }

    pub fn scale(&self, c: &ExactRational) -> Series {
        Series {
            flavor: self.flavor,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Series {
        self.scale(&-ExactRational::one())
    }

    /// Multiplies by `t^p`, keeping the order.
    pub fn shift(&self, p: usize) -> Series {
        Series::from_fn(self.flavor, self.order(), |n| {
            if n < p {
                ExactRational::zero()
            } else {
                self.coeffs[n - p].clone()
            }
        })
    }

    /// Cauchy product through the smaller order.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_flavor(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let lead_a = self.coeffs.iter().position(|c| !c.is_zero());
        let lead_b = other.coeffs.iter().position(|c| !c.is_zero());
        let mut out = vec![ExactRational::zero(); order + 1];
        if let (Some(la), Some(lb)) = (lead_a, lead_b) {
            for (i, a) in self.coeffs.iter().enumerate().take(order + 1).skip(la) {
                if a.is_zero() {
                    continue;
                }
                for j in lb..=order - i {
                    let b = &other.coeffs[j];
                    if !b.is_zero() {
                        out[i + j] += a * b;
                    }
                }
            }
        }
        Series {
            flavor: self.flavor,
            coeffs: out,
        }
    }

    /// `f^p` by repeated squaring; `f^0 = 1`.
    pub fn pow(&self, p: usize) -> Series {
        let mut result = Series::one(self.flavor, self.order());
        let mut base = self.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    fn require_zero_constant(&self) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroConstantTerm)
        }
    }

    /// `exp(f)` for `f(0) = 0`, via `n g_n = sum_{k=1}^n k f_k g_{n-k}`.
    pub fn exp(&self) -> Result<Series> {
        self.require_zero_constant()?;
        let order = self.order();
        let mut g = vec![ExactRational::zero(); order + 1];
        g[0] = ExactRational::one();
        for n in 1..=order {
            let mut acc = ExactRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += rat(k as i64) * &self.coeffs[k] * &g[n - k];
                }
            }
            g[n] = acc / rat(n as i64);
        }
        Ok(Series {
            flavor: self.flavor,
            coeffs: g,
        })
    }

    /// `ln(1 + f)` for `f(0) = 0`, via `(1 + f) h' = f'`.
    pub fn log1p(&self) -> Result<Series> {
        self.require_zero_constant()?;
        let order = self.order();
        let mut h = vec![ExactRational::zero(); order + 1];
        for n in 1..=order {
            let mut acc = rat(n as i64) * &self.coeffs[n];
            for (k, hk) in h.iter().enumerate().take(n).skip(1) {
                if !self.coeffs[n - k].is_zero() {
                    acc -= rat(k as i64) * hk * &self.coeffs[n - k];
                }
            }
            h[n] = acc / rat(n as i64);
        }
        Ok(Series {
            flavor: self.flavor,
            coeffs: h,
        })
    }

    /// `f(g(t))` for `g(0) = 0`, by Horner's rule. The result keeps the outer
    /// series' flavor and has the smaller of the two orders.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        inner.require_zero_constant()?;
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order).with_flavor(self.flavor);
        let mut acc = Series::constant(self.flavor, order, self.coeffs[order].clone());
        for c in self.coeffs[..order].iter().rev() {
            acc = acc.mul_unchecked(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }
}

/// Column generating functions of the four integer families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GfKind {
    /// `(e^x - 1)^p / p!`
    Stirling2,
    /// `ln^p(1 + x) / p!`
    Stirling1,
    /// `(x / (1 - x))^p / p!`
    Lah,
    /// `x^p e^x / p!`
    BinomCol,
}

/// The exponential generating function of column `p` of a family,
/// truncated at `order`. Built purely from series algebra.
pub fn kernel_gf(kind: GfKind, p: usize, order: usize) -> Series {
    let inv_pf = ExactRational::one() / int_to_rat(factorial(p));
    let f = Flavor::Egf;
    let raw = match kind {
        GfKind::Stirling2 => Series::expm1(f, order).pow(p),
        GfKind::Stirling1 => Series::ln1p(f, order).pow(p),
        GfKind::Lah => Series::geometric(f, &ExactRational::one(), order)
            .shift(1)
            .pow(p),
        GfKind::BinomCol => Series::exp_linear(f, &ExactRational::one(), order).shift(p),
    };
    raw.scale(&inv_pf)
}

/// `(1 - (1 - t)^mu)^p / p!` as an exponential generating function.
pub fn todorov_gf(mu: &ExactRational, p: usize, order: usize) -> Series {
    let f = Flavor::Egf;
    let one_minus = Series::binomial_power(f, mu, order)
        .compose(&Series::var(f, order).neg())
        .expect("-t has zero constant term");
    let base = Series::one(f, order).sub(&one_minus).expect("same flavor");
    base.pow(p)
        .scale(&(ExactRational::one() / int_to_rat(factorial(p))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{bell, ratio, stirling1_signed, stirling2};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<ExactRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn new_from_sequence() {
        let e = Series::new(Flavor::Egf, 3, &ints(&[1, 1, 1, 1])).unwrap();
        assert_eq!(e, Series::exp_linear(Flavor::Egf, &rat(1), 3));
        let one = Series::new(Flavor::Ogf, 2, &ints(&[1, 0, 0])).unwrap();
        assert_eq!(one, Series::one(Flavor::Ogf, 2));
        let seq: Vec<_> = (0..=4)
            .map(|n| int_to_rat(stirling1_signed(n, 2)))
            .collect();
        let s = Series::new(Flavor::Egf, 4, &seq).unwrap();
        assert_eq!(s, kernel_gf(GfKind::Stirling1, 2, 4));
        assert_eq!(
            Series::new(Flavor::Egf, 4, &ints(&[1, 2])),
            Err(Error::LengthMismatch { need: 5, got: 2 })
        );
    }

    #[test]
    fn mul_identity_and_shift() {
        let g = Series::ln1p(Flavor::Egf, 6);
        assert_eq!(Series::one(Flavor::Egf, 6).mul(&g).unwrap(), g);
        let geo = Series::geometric(Flavor::Ogf, &rat(1), 6);
        let t2 = Series::var(Flavor::Ogf, 6).pow(2);
        assert_eq!(t2.mul(&geo).unwrap(), geo.shift(2));
        assert!(g.mul(&geo).is_err());
    }

    #[test]
    fn one_plus_t_times_log() {
        // (1 + t) ln(1 + t): t^n coefficient is (-1)^n / (n (n - 1)) for n >= 2
        let f = Flavor::Ogf;
        let one_plus_t = Series::one(f, 6).add(&Series::var(f, 6)).unwrap();
        let prod = one_plus_t.mul(&Series::ln1p(f, 6)).unwrap();
        assert_eq!(prod.coeff(0), rat(0));
        assert_eq!(prod.coeff(1), rat(1));
        for n in 2..=6usize {
            let expect = sign(n) / rat((n * (n - 1)) as i64);
            assert_eq!(prod.coeff(n), expect);
        }
    }

    #[test]
    fn mul_truncates_to_smaller_order() {
        let a = Series::expm1(Flavor::Egf, 8);
        let b = Series::expm1(Flavor::Egf, 5);
        assert_eq!(a.mul(&b).unwrap().order(), 5);
    }

    #[test]
    fn pow_columns() {
        assert_eq!(
            Series::ln1p(Flavor::Egf, 5).pow(0),
            Series::one(Flavor::Egf, 5)
        );
        let s2 = kernel_gf(GfKind::Stirling2, 2, 7);
        for n in 0..=7 {
            assert_eq!(s2.term(n), int_to_rat(stirling2(n, 2)));
        }
        let lah2 = kernel_gf(GfKind::Lah, 2, 7);
        for n in 0..=7 {
            assert_eq!(lah2.term(n), int_to_rat(crate::kernel::lah(n, 2)));
        }
    }

    #[test]
    fn exp_examples() {
        assert_eq!(
            Series::zero(Flavor::Egf, 4).exp().unwrap(),
            Series::one(Flavor::Egf, 4)
        );
        let b = Series::expm1(Flavor::Egf, 12).exp().unwrap();
        for n in 0..=12 {
            assert_eq!(b.term(n), int_to_rat(bell(n)));
        }
        let x = Series::geometric(Flavor::Ogf, &rat(1), 5).shift(1);
        assert_eq!(x.exp().unwrap().coeff(2), ratio(3, 2));
        assert_eq!(
            Series::one(Flavor::Egf, 3).exp(),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn log1p_examples() {
        let z = Series::zero(Flavor::Egf, 4);
        assert_eq!(z.log1p().unwrap(), z);
        let l = Series::var(Flavor::Egf, 9).log1p().unwrap();
        for n in 0..=9 {
            assert_eq!(l.term(n), int_to_rat(stirling1_signed(n, 1)));
        }
        let back = Series::expm1(Flavor::Egf, 10).log1p().unwrap();
        assert_eq!(back, Series::var(Flavor::Egf, 10));
        assert!(Series::one(Flavor::Egf, 3).log1p().is_err());
    }

    #[test]
    fn compose_examples() {
        let f = Series::ln1p(Flavor::Egf, 7);
        assert_eq!(f.compose(&Series::var(Flavor::Egf, 7)).unwrap(), f);

        // e^t at mu (e^t - 1) is the EGF of phi_n(mu)
        let mu = ratio(2, 3);
        let e = Series::exp_linear(Flavor::Egf, &rat(1), 9);
        let inner = Series::expm1(Flavor::Egf, 9).scale(&mu);
        let phi = e.compose(&inner).unwrap();
        for n in 0..=9 {
            assert_eq!(phi.term(n), crate::kernel::exp_poly_eval(n, &mu));
        }

        // ln^2(1+t)/2! at t/(1-t) gives (-1)^n s(n,2)
        let outer = kernel_gf(GfKind::Stirling1, 2, 8);
        let inner = Series::geometric(Flavor::Egf, &rat(1), 8).shift(1);
        let out = outer.compose(&inner).unwrap();
        for n in 0..=8 {
            assert_eq!(out.term(n), sign(n) * int_to_rat(stirling1_signed(n, 2)));
        }
        assert!(f.compose(&Series::one(Flavor::Egf, 7)).is_err());
    }

    #[test]
    fn kernel_gf_examples() {
        assert_eq!(
            kernel_gf(GfKind::Stirling2, 0, 6),
            Series::one(Flavor::Egf, 6)
        );
        assert_eq!(kernel_gf(GfKind::Stirling2, 2, 5).term(3), rat(3));
        assert_eq!(kernel_gf(GfKind::BinomCol, 1, 4).term(3), rat(3));
    }

    #[test]
    fn todorov_first_column() {
        let s = todorov_gf(&ratio(1, 2), 1, 4);
        assert_eq!(
            s.sequence(),
            vec![rat(0), ratio(1, 2), ratio(1, 4), ratio(3, 8), ratio(15, 16)]
        );
        let t = todorov_gf(&rat(1), 1, 3);
        assert_eq!(t.sequence(), ints(&[0, 1, 0, 0]));
    }

    fn small_series(flavor: Flavor) -> impl Strategy<Value = Series> {
        (
            1usize..14,
            proptest::collection::vec((-9i64..10, 1i64..5), 14),
        )
            .prop_map(move |(order, raw)| {
                Series::from_fn(flavor, order, |n| {
                    if n == 0 {
                        rat(0)
                    } else {
                        ratio(raw[n].0, raw[n].1)
                    }
                })
            })
    }

    proptest! {
        #[test]
        fn exp_log_inverse(f in small_series(Flavor::Egf)) {
            let e = f.exp().unwrap();
            let back = e.sub(&Series::one(Flavor::Egf, f.order())).unwrap().log1p().unwrap();
            prop_assert_eq!(&back, &f);
            let l = f.log1p().unwrap().exp().unwrap();
            prop_assert_eq!(l.sub(&Series::one(Flavor::Egf, f.order())).unwrap(), f);
        }

        #[test]
        fn mul_commutes(a in small_series(Flavor::Ogf), b in small_series(Flavor::Ogf)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }

        #[test]
        fn pow_is_repeated_mul(a in small_series(Flavor::Ogf), p in 0usize..6) {
            let mut expect = Series::one(Flavor::Ogf, a.order());
            for _ in 0..p {
                expect = expect.mul(&a).unwrap();
            }
            prop_assert_eq!(a.pow(p), expect);
        }
    }
}
