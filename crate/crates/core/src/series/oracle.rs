//! Number families recovered from their generating functions alone.
//!
//! Nothing here touches the recurrence triangles in `kernel`; every value
//! is read off a series built from closed-form kernels with mul, pow, exp,
//! log and compose. This is the independent side for cross-checking the
//! triangles and for re-running identity checks without any recurrence.

use num_bigint::BigInt;
use num_traits::One;

use super::{Flavor, Series};
use crate::error::{Error, Result};
use crate::kernel::{rat, ExactInt, ExactRational, NumberSource};

/// Triangles for `n, k <= n_max`, every entry extracted as `n! [t^n]` of a
/// column generating function. Lookups past `n_max` panic.
#[derive(Debug, Clone)]
pub struct GfTables {
    n_max: usize,
    stirling1: Vec<Vec<BigInt>>,
    stirling1_unsigned: Vec<Vec<BigInt>>,
    stirling2: Vec<Vec<BigInt>>,
    lah: Vec<Vec<BigInt>>,
    binom: Vec<Vec<BigInt>>,
    bell: Vec<BigInt>,
}

fn to_int(x: ExactRational) -> BigInt {
    assert!(
        x.is_integer(),
        "generating function produced non-integer {x}"
    );
    x.to_integer()
}

// Row-major triangle from columns (base^p / p!) for p = 0..=n_max.
fn columns_to_rows(base: &Series, n_max: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = (0..=n_max).map(|n| Vec::with_capacity(n + 1)).collect();
    let mut col = Series::one(Flavor::Egf, n_max);
    for p in 0..=n_max {
        if p > 0 {
            col = col
                .mul(base)
                .expect("egf")
                .scale(&(ExactRational::one() / rat(p as i64)));
        }
        for (n, row) in rows.iter_mut().enumerate().skip(p) {
            row.push(to_int(col.term(n)));
        }
    }
    rows
}

impl GfTables {
    pub fn build(n_max: usize) -> Self {
        let f = Flavor::Egf;
        let t = Series::var(f, n_max);
        let expm1 = Series::expm1(f, n_max);
        let ln1p = Series::ln1p(f, n_max);
        // -ln(1 - t)
        let neg_ln1m = ln1p.compose(&t.neg()).expect("zero constant").neg();
        let lah_base = Series::geometric(f, &ExactRational::one(), n_max).shift(1);
        let exp = Series::exp_linear(f, &ExactRational::one(), n_max);

        let binom = (0..=n_max)
            .map(|n| {
                (0..=n)
                    .map(|k| {
                        // x^k e^x / k!
                        let col = exp.shift(k).scale(
                            &(ExactRational::one()
                                / ExactRational::from_integer(crate::kernel::factorial(k))),
                        );
                        to_int(col.term(n))
                    })
                    .collect()
            })
            .collect();
        let bell_gf = expm1.exp().expect("zero constant");

        GfTables {
            n_max,
            stirling1: columns_to_rows(&ln1p, n_max),
            stirling1_unsigned: columns_to_rows(&neg_ln1m, n_max),
            stirling2: columns_to_rows(&expm1, n_max),
            lah: columns_to_rows(&lah_base, n_max),
            binom,
            bell: (0..=n_max).map(|n| to_int(bell_gf.term(n))).collect(),
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn lookup(&self, table: &[Vec<BigInt>], n: usize, k: usize) -> BigInt {
        assert!(
            n <= self.n_max,
            "GfTables built to n = {}, asked for {n}",
            self.n_max
        );
        table[n].get(k).cloned().unwrap_or_default()
    }
}

impl NumberSource for GfTables {
    fn stirling1(&self, n: usize, k: usize) -> ExactInt {
        self.lookup(&self.stirling1, n, k)
    }
    fn stirling1_unsigned(&self, n: usize, k: usize) -> ExactInt {
        self.lookup(&self.stirling1_unsigned, n, k)
    }
    fn stirling2(&self, n: usize, k: usize) -> ExactInt {
        self.lookup(&self.stirling2, n, k)
    }
    fn lah(&self, n: usize, k: usize) -> ExactInt {
        self.lookup(&self.lah, n, k)
    }
    fn binom(&self, n: usize, k: usize) -> ExactInt {
        self.lookup(&self.binom, n, k)
    }
    fn bell(&self, n: usize) -> ExactInt {
        assert!(
            n <= self.n_max,
            "GfTables built to n = {}, asked for {n}",
            self.n_max
        );
        self.bell[n].clone()
    }
}

/// `(1 - t)^(-q-1) exp(-x t / (1 - t))` as an ordinary generating function;
/// the `t^n` coefficient is the Laguerre polynomial `L_n^(q)(x)`.
pub fn laguerre_gf(q: i64, x: &ExactRational, order: usize) -> Result<Series> {
    if q < -1 {
        return Err(Error::LaguerreOrder(q));
    }
    let f = Flavor::Ogf;
    let t = Series::var(f, order);
    let prefactor = Series::binomial_power(f, &rat(-q - 1), order).compose(&t.neg())?;
    let arg = Series::geometric(f, &ExactRational::one(), order)
        .mul(&t)?
        .scale(&-x.clone());
    prefactor.mul(&arg.exp()?)
}
