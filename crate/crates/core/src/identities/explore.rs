//! Convolutions with no known closed form. Values come from direct
//! summation over the triangles; where a generating function for the
//! column is available it is expanded independently as a second column.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::kernel::{
    binom_int, int_to_rat, lah, pow, stirling1_signed, stirling2, ExactRational, Polynomial,
};
use crate::series::{kernel_gf, Flavor, GfKind, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[allow(non_camel_case_types)]
pub enum ExploreId {
    /// `sum_k C(n,k) s(k,p)`
    X_BINOM_S1,
    /// `sum_k C(n,k) S(k,p) mu^k`
    X_BINOM_S2_MU,
    /// `sum_k C(n,k) L(k,p) lambda^(n-k)`
    X_BINOM_LAH,
    /// `sum_k S(n,k) L(k,p)`
    X_S2_LAH,
    /// `sum_k L(n,k) S(k,p)`
    X_LAH_S2,
    /// `sum_k s(n,k) L(k,p)`
    X_S1_LAH,
    /// `f_{n,p}(z) = sum_k S(n,k) s(k,p) z^k`
    X_POLY_F,
}

impl ExploreId {
    pub const ALL: &'static [ExploreId] = &[
        ExploreId::X_BINOM_S1,
        ExploreId::X_BINOM_S2_MU,
        ExploreId::X_BINOM_LAH,
        ExploreId::X_S2_LAH,
        ExploreId::X_LAH_S2,
        ExploreId::X_S1_LAH,
        ExploreId::X_POLY_F,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExploreId::X_BINOM_S1 => "X_BINOM_S1",
            ExploreId::X_BINOM_S2_MU => "X_BINOM_S2_MU",
            ExploreId::X_BINOM_LAH => "X_BINOM_LAH",
            ExploreId::X_S2_LAH => "X_S2_LAH",
            ExploreId::X_LAH_S2 => "X_LAH_S2",
            ExploreId::X_S1_LAH => "X_S1_LAH",
            ExploreId::X_POLY_F => "X_POLY_F",
        }
    }
}

impl fmt::Display for ExploreId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExploreId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.to_ascii_uppercase();
        ExploreId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == up)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown exploration `{s}`")))
    }
}

/// Scalars for the parameterized explorations; each defaults to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploreParams {
    pub mu: ExactRational,
    pub lambda: ExactRational,
    pub z: ExactRational,
}

impl Default for ExploreParams {
    fn default() -> Self {
        ExploreParams {
            mu: ExactRational::one(),
            lambda: ExactRational::one(),
            z: ExactRational::one(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploreRow {
    pub n: usize,
    pub value: ExactRational,
    /// `n! [t^n]` of the column generating function.
    pub oracle: ExactRational,
    /// Coefficients in `z`, for `X_POLY_F` only.
    pub poly: Option<Polynomial>,
}

impl ExploreRow {
    pub fn agrees(&self) -> bool {
        self.value == self.oracle
    }
}

fn column_gf(id: ExploreId, p: usize, order: usize, params: &ExploreParams) -> Result<Series> {
    let f = Flavor::Egf;
    let t = Series::var(f, order);
    let one = Series::one(f, order);
    let e = Series::exp_linear(f, &ExactRational::one(), order);
    let inv_pf = ExactRational::one() / int_to_rat(crate::kernel::factorial(p));
    let gf = match id {
        ExploreId::X_BINOM_S1 => kernel_gf(GfKind::Stirling1, p, order).mul(&e)?,
        ExploreId::X_BINOM_S2_MU => Series::exp_linear(f, &params.mu, order)
            .sub(&one)?
            .pow(p)
            .scale(&inv_pf)
            .mul(&e)?,
        ExploreId::X_BINOM_LAH => {
            kernel_gf(GfKind::Lah, p, order).mul(&Series::exp_linear(f, &params.lambda, order))?
        }
        // (u / (1 - u))^p / p! at u = e^t - 1, i.e. ((e^t - 1)/(2 - e^t))^p / p!
        ExploreId::X_S2_LAH => {
            kernel_gf(GfKind::Lah, p, order).compose(&Series::expm1(f, order))?
        }
        ExploreId::X_LAH_S2 => {
            let inner = Series::geometric(f, &ExactRational::one(), order).mul(&t)?;
            kernel_gf(GfKind::Stirling2, p, order).compose(&inner)?
        }
        ExploreId::X_S1_LAH => kernel_gf(GfKind::Lah, p, order).compose(&Series::ln1p(f, order))?,
        ExploreId::X_POLY_F => {
            let inner = Series::expm1(f, order).scale(&params.z);
            kernel_gf(GfKind::Stirling1, p, order).compose(&inner)?
        }
    };
    Ok(gf)
}

fn direct(id: ExploreId, n: usize, p: usize, params: &ExploreParams) -> ExactRational {
    let r = |v| int_to_rat(v);
    let ks = 0..=n;
    match id {
        ExploreId::X_BINOM_S1 => ks
            .map(|k| r(binom_int(n, k) * stirling1_signed(k, p)))
            .sum(),
        ExploreId::X_BINOM_S2_MU => ks
            .map(|k| r(binom_int(n, k) * stirling2(k, p)) * pow(&params.mu, k))
            .sum(),
        ExploreId::X_BINOM_LAH => ks
            .map(|k| r(binom_int(n, k) * lah(k, p)) * pow(&params.lambda, n - k))
            .sum(),
        ExploreId::X_S2_LAH => ks.map(|k| r(stirling2(n, k) * lah(k, p))).sum(),
        ExploreId::X_LAH_S2 => ks.map(|k| r(lah(n, k) * stirling2(k, p))).sum(),
        ExploreId::X_S1_LAH => ks.map(|k| r(stirling1_signed(n, k) * lah(k, p))).sum(),
        ExploreId::X_POLY_F => f_poly(n, p).eval(&params.z),
    }
}

fn f_poly(n: usize, p: usize) -> Polynomial {
    Polynomial::new(
        (0..=n)
            .map(|k| int_to_rat(stirling2(n, k) * stirling1_signed(k, p)))
            .collect(),
    )
}

/// Rows `n = p..=n_max` of an exploratory convolution.
pub fn explore(
    id: ExploreId,
    n_max: usize,
    p: usize,
    params: &ExploreParams,
) -> Result<Vec<ExploreRow>> {
    if n_max < p {
        return Err(Error::InvalidParameter(format!(
            "n_max = {n_max} is below p = {p}"
        )));
    }
    let gf = column_gf(id, p, n_max, params)?;
    Ok((p..=n_max)
        .map(|n| ExploreRow {
            n,
            value: direct(id, n, p, params),
            oracle: gf.term(n),
            poly: (id == ExploreId::X_POLY_F).then(|| f_poly(n, p)),
        })
        .collect())
}
