//! Registry of convolution identities, each checked by evaluating its two
//! sides independently and comparing them exactly.
//!
//! Sides follow the displayed statement: `lhs` is what stands left of the
//! equals sign. Integer families are always read through a
//! [`NumberSource`], so the whole registry can be re-run against tables
//! recovered from generating functions instead of recurrences.

mod explore;
mod registry;

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::{
    binom_gen, factorial, in_unit_interval, int_to_rat, laguerre, pow, rat, sign, ExactRational,
    NumberSource, Recurrences,
};
use crate::series::{Flavor, Series};

pub use explore::{explore, ExploreId, ExploreParams, ExploreRow};
pub use registry::{IdentityId, Param, Verdict};

/// One parameterized occurrence of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityInstance {
    pub id: IdentityId,
    pub n: usize,
    pub p: usize,
    pub mu: Option<ExactRational>,
    pub z: Option<ExactRational>,
}

impl IdentityInstance {
    pub fn new(id: IdentityId, n: usize, p: usize) -> Self {
        IdentityInstance {
            id,
            n,
            p,
            mu: None,
            z: None,
        }
    }

    pub fn with_mu(mut self, mu: ExactRational) -> Self {
        self.mu = Some(mu);
        self
    }

    pub fn with_z(mut self, z: ExactRational) -> Self {
        self.z = Some(z);
        self
    }

    fn mu(&self) -> Result<&ExactRational> {
        self.mu.as_ref().ok_or(Error::MissingParameter {
            id: self.id.name(),
            param: "mu",
        })
    }

    fn z(&self) -> Result<&ExactRational> {
        self.z.as_ref().ok_or(Error::MissingParameter {
            id: self.id.name(),
            param: "z",
        })
    }

    fn validate(&self) -> Result<()> {
        match self.id.param() {
            Param::Mu => {
                let mu = self.mu()?;
                if !self.id.admits_param(mu) {
                    return Err(Error::InvalidParameter(format!(
                        "{} needs 0 < mu < 1, got {mu}",
                        self.id
                    )));
                }
            }
            Param::Z => {
                self.z()?;
            }
            Param::None => {}
        }
        if !self.id.admits(self.n, self.p) {
            return Err(Error::InvalidParameter(format!(
                "{} is not defined at (n, p) = ({}, {})",
                self.id, self.n, self.p
            )));
        }
        Ok(())
    }
}

/// Both sides of one instance and the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub instance: IdentityInstance,
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub pass: bool,
    pub note: String,
}

struct Eval<'a> {
    src: &'a dyn NumberSource,
}

impl Eval<'_> {
    fn s1(&self, n: usize, k: usize) -> ExactRational {
        int_to_rat(self.src.stirling1(n, k))
    }

    fn s1u(&self, n: usize, k: usize) -> ExactRational {
        int_to_rat(self.src.stirling1_unsigned(n, k))
    }

    fn s2(&self, n: usize, k: usize) -> ExactRational {
        int_to_rat(self.src.stirling2(n, k))
    }

    fn lah(&self, n: usize, k: usize) -> ExactRational {
        int_to_rat(self.src.lah(n, k))
    }

    fn c(&self, n: usize, k: usize) -> ExactRational {
        int_to_rat(self.src.binom(n, k))
    }

    fn bell(&self, n: usize) -> ExactRational {
        int_to_rat(self.src.bell(n))
    }

    fn fact(&self, n: usize) -> ExactRational {
        int_to_rat(factorial(n))
    }

    fn phi(&self, n: usize, x: &ExactRational) -> ExactRational {
        crate::kernel::exp_poly_from(self.src, n).eval(x)
    }

    // s(n - d, p), zero when n < d
    fn s1_back(&self, n: usize, d: usize, p: usize) -> ExactRational {
        n.checked_sub(d)
            .map(|m| self.s1(m, p))
            .unwrap_or_else(ExactRational::zero)
    }

    // sum_k s(n,k) S(k,p) x^k
    fn s1_s2_poly(&self, n: usize, p: usize, x: &ExactRational) -> ExactRational {
        (p..=n)
            .map(|k| self.s1(n, k) * self.s2(k, p) * pow(x, k))
            .sum()
    }

    // (-1)^p n!/p! sum_j C(p,j) (-1)^j C(zj, n), with generalized binomials
    fn todorov_sum(&self, n: usize, p: usize, z: &ExactRational) -> ExactRational {
        let inner: ExactRational = (0..=p)
            .map(|j| sign(j) * self.c(p, j) * binom_gen(&(z * rat(j as i64)), n))
            .sum();
        sign(p) * self.fact(n) / self.fact(p) * inner
    }

    fn eq18_sum(&self, n: usize, p: usize) -> ExactRational {
        if n == 0 {
            return ExactRational::zero();
        }
        let sum: ExactRational = (0..n)
            .map(|k| sign(k) / rat((n - k) as i64) * self.s1(k + 1, p) / self.fact(k + 1))
            .sum();
        sign(n - 1) * sum
    }

    fn lhs(&self, inst: &IdentityInstance) -> Result<ExactRational> {
        use IdentityId::*;
        let (n, p) = (inst.n, inst.p);
        let v = match inst.id {
            EQ12 => (0..=n).map(|k| self.c(n, k) * self.s2(k, p)).sum(),
            EQ13 => (0..=n)
                .map(|k| self.s1(n, k) * sign(k) * self.c(k, p))
                .sum(),
            EQ14 => (0..=n).map(|k| self.s1(n, k) * self.c(k, p)).sum(),
            EQ15 => {
                let mu = inst.mu()?;
                (0..=n)
                    .map(|k| self.s1(n, k) * self.c(k, p) * pow(mu, k))
                    .sum()
            }
            EQ15_MU2 => (0..=n)
                .map(|k| self.s1(n, k) * self.c(k, p) * pow(&rat(2), k))
                .sum(),
            EQ17 => (0..=n)
                .map(|k| self.c(n, k) * self.s1(k + 1, p) / self.fact(k + 1))
                .sum(),
            EQ18 => rat(p as i64 + 1) * self.s1(n + 1, p + 1) / self.fact(n + 1),
            EQ19 | EQ20 => self.s1(n + 1, p + 1),
            EQ21 => (0..=n)
                .map(|k| self.c(n, k) * self.s1(k, p) / self.fact(k))
                .sum(),
            EQ22 => {
                let mu = inst.mu()?;
                (0..=n)
                    .map(|k| self.s2(n, k) * self.c(k, p) * pow(mu, k))
                    .sum()
            }
            EQ23 => (0..=n).map(|k| self.s2(n, k) * self.c(k, p)).sum(),
            EQ23_P0 => (0..=n).map(|k| self.s2(n, k)).sum(),
            EQ23_P1 => (0..=n).map(|k| self.s2(n, k) * rat(k as i64)).sum(),
            PHI_REC => self.phi(n + 1, inst.mu()?),
            EQ25 => {
                let mu = inst.mu()?;
                (p..=n)
                    .map(|k| self.lah(n, k) * self.c(k, p) * pow(mu, k))
                    .sum()
            }
            EQ26 => {
                let mu = inst.mu()?;
                (0..=n).map(|k| self.lah(n, k) * pow(mu, k)).sum()
            }
            EQ27 => (p..=n)
                .map(|k| self.c(n, k) * self.lah(k, p) * sign(k) / self.fact(k))
                .sum(),
            EQ27_BINOM => (p..=n)
                .map(|k| self.c(n, k) * self.c(k - 1, p - 1) * sign(k))
                .sum(),
            EQ28 => self.lah(n, p),
            EQ29 | EQ30_PRINTED | EQ30_CORRECTED => (p..=n)
                .map(|k| self.s2(n, k) * self.lah(k, p) * sign(k))
                .sum(),
            EQ31_PRINTED | EQ31_CORRECTED => self.s2(n, p),
            EQ32 => (p..=n).map(|k| self.lah(n, k) * self.s1(k, p)).sum(),
            EQ33_ORTHO => (0..=n).map(|k| self.s2(n, k) * self.s1(k, p)).sum(),
            EQ33_ORTHO_DUAL => (0..=n).map(|k| self.s1(n, k) * self.s2(k, p)).sum(),
            EQ34 => self.s1_s2_poly(n, p, inst.z()?),
            EQ34_Z1 => self.todorov_sum(n, p, &rat(1)),
            EQ34_ZM1 => self.todorov_sum(n, p, &rat(-1)),
            EQ35 => self.s1_s2_poly(n, p, inst.mu()?),
            EQ37_POS => sign(n - p) * self.s1_s2_poly(n, p, inst.mu()?),
            EQ37_CEX => sign(n - p) * self.s1_s2_poly(n, p, &rat(3)),
            EQ38_EXPANSION => {
                let mu = inst.mu()?;
                let f = Flavor::Egf;
                let one_minus =
                    Series::binomial_power(f, mu, n).compose(&Series::var(f, n).neg())?;
                Series::one(f, n).sub(&one_minus)?.term(n)
            }
            EQ38_UNSIGNED_POS => {
                let mu = inst.mu()?;
                (p..=n)
                    .map(|k| sign(k + p) * self.s1u(n, k) * self.s2(k, p) * pow(mu, k))
                    .sum()
            }
        };
        Ok(v)
    }

    fn rhs(&self, inst: &IdentityInstance) -> Result<ExactRational> {
        use IdentityId::*;
        let (n, p) = (inst.n, inst.p);
        let delta = || {
            if n == p {
                ExactRational::one()
            } else {
                ExactRational::zero()
            }
        };
        let v = match inst.id {
            EQ12 => self.s2(n + 1, p + 1),
            EQ13 => sign(p) * self.s1(n + 1, p + 1),
            EQ14 => self.s1(n, p) + rat(n as i64) * self.s1_back(n, 1, p),
            EQ15 => {
                let mu = inst.mu()?;
                let sum: ExactRational = (0..=n)
                    .map(|k| self.c(n, k) * binom_gen(mu, k) * self.s1(n - k, p) * self.fact(k))
                    .sum();
                pow(mu, p) * sum
            }
            EQ15_MU2 => {
                let nn = rat(n as i64);
                pow(&rat(2), p)
                    * (self.s1(n, p)
                        + rat(2) * &nn * self.s1_back(n, 1, p)
                        + &nn * (&nn - rat(1)) * self.s1_back(n, 2, p))
            }
            EQ17 => sign(p + n + 1) * self.s1(n + 1, p) / self.fact(n + 1),
            EQ18 => self.eq18_sum(n, p),
            EQ19 => self.fact(n + 1) / rat(p as i64 + 1) * self.eq18_sum(n, p),
            EQ20 => (0..=n)
                .map(|k| self.c(n, k) * sign(n - k) * self.s1(k, p) * self.fact(n - k))
                .sum(),
            EQ21 => sign(n + p) * self.s1(n + 1, p + 1) / self.fact(n),
            EQ22 => {
                let mu = inst.mu()?;
                let sum: ExactRational = (0..=n)
                    .map(|k| self.c(n, k) * self.s2(k, p) * self.phi(n - k, mu))
                    .sum();
                pow(mu, p) * sum
            }
            EQ23 => (0..=n)
                .map(|k| self.c(n, k) * self.s2(k, p) * self.bell(n - k))
                .sum(),
            EQ23_P0 => self.bell(n),
            EQ23_P1 => self.bell(n + 1) - self.bell(n),
            PHI_REC => {
                let mu = inst.mu()?;
                let sum: ExactRational = (0..=n).map(|k| self.c(n, k) * self.phi(k, mu)).sum();
                mu * sum
            }
            EQ25 => {
                let mu = inst.mu()?;
                pow(mu, p) * self.fact(n) / self.fact(p)
                    * laguerre(n - p, p as i64 - 1, &-mu.clone())?
            }
            EQ26 => self.fact(n) * laguerre(n, -1, &-inst.mu()?.clone())?,
            EQ27 => sign(p) / self.fact(p),
            EQ27_BINOM => sign(p),
            EQ28 => (0..=n)
                .map(|k| sign(n - k) * self.s1(n, k) * self.s2(k, p))
                .sum(),
            EQ29 => sign(n) * self.s2(n, p),
            EQ30_PRINTED => {
                let pr = rat(p as i64);
                let sum: ExactRational = (p..=n)
                    .map(|k| self.s2(n, k) * pow(&pr, n - k) * sign(n - k))
                    .sum();
                sign(p) * sum
            }
            EQ30_CORRECTED => {
                let pr = rat(p as i64);
                let sum: ExactRational = (p..=n)
                    .map(|k| self.c(n, k) * self.s2(k, p) * pow(&pr, n - k) * sign(n - k))
                    .sum();
                sign(p) * sum
            }
            EQ31_PRINTED => {
                let pr = rat(p as i64);
                let sum: ExactRational = (p..=n)
                    .map(|k| self.s2(n, k) * pow(&pr, n - k) * sign(k))
                    .sum();
                sign(p) * sum
            }
            EQ31_CORRECTED => {
                let pr = rat(p as i64);
                let sum: ExactRational = (p..=n)
                    .map(|k| self.c(n, k) * self.s2(k, p) * pow(&pr, n - k) * sign(k))
                    .sum();
                sign(p) * sum
            }
            EQ32 => sign(n + p) * self.s1(n, p),
            EQ33_ORTHO | EQ33_ORTHO_DUAL | EQ34_Z1 => delta(),
            EQ34 => self.todorov_sum(n, p, inst.z()?),
            EQ34_ZM1 => sign(n) * self.lah(n, p),
            EQ35 => binomial_power_column(inst.mu()?, p, n).term(n),
            EQ37_POS | EQ38_UNSIGNED_POS => ExactRational::zero(),
            EQ37_CEX => rat(-324),
            EQ38_EXPANSION => {
                let mu = inst.mu()?;
                (1..n).fold(mu.clone(), |acc, i| acc * (rat(i as i64) - mu))
            }
        };
        Ok(v)
    }
}

// ((1+t)^mu - 1)^p / p! as an EGF, memoized per (mu, p) at the largest
// order requested so far. Truncation commutes with every step, so a longer
// cached series answers shorter requests exactly.
fn binomial_power_column(mu: &ExactRational, p: usize, order: usize) -> Series {
    static CACHE: Mutex<Option<HashMap<(ExactRational, usize), Series>>> = Mutex::new(None);
    let key = (mu.clone(), p);
    if let Some(s) = CACHE
        .lock()
        .expect("series cache poisoned")
        .get_or_insert_with(HashMap::new)
        .get(&key)
    {
        if s.order() >= order {
            return s.truncate(order);
        }
    }
    let f = Flavor::Egf;
    let base = Series::binomial_power(f, mu, order)
        .sub(&Series::one(f, order))
        .expect("same flavor");
    let col = base
        .pow(p)
        .scale(&(ExactRational::one() / int_to_rat(factorial(p))));
    let mut guard = CACHE.lock().expect("series cache poisoned");
    let map = guard.get_or_insert_with(HashMap::new);
    match map.get(&key) {
        Some(s) if s.order() >= order => {}
        _ => {
            map.insert(key, col.clone());
        }
    }
    col
}

pub fn evaluate_lhs(inst: &IdentityInstance) -> Result<ExactRational> {
    evaluate_lhs_with(&Recurrences, inst)
}

pub fn evaluate_rhs(inst: &IdentityInstance) -> Result<ExactRational> {
    evaluate_rhs_with(&Recurrences, inst)
}

pub fn evaluate_lhs_with(src: &dyn NumberSource, inst: &IdentityInstance) -> Result<ExactRational> {
    inst.validate()?;
    Eval { src }.lhs(inst)
}

pub fn evaluate_rhs_with(src: &dyn NumberSource, inst: &IdentityInstance) -> Result<ExactRational> {
    inst.validate()?;
    Eval { src }.rhs(inst)
}

pub fn check_instance(inst: &IdentityInstance) -> Result<CheckReport> {
    check_instance_with(&Recurrences, inst)
}

pub fn check_instance_with(src: &dyn NumberSource, inst: &IdentityInstance) -> Result<CheckReport> {
    let lhs = evaluate_lhs_with(src, inst)?;
    let rhs = evaluate_rhs_with(src, inst)?;
    let (pass, note) = match inst.id {
        IdentityId::EQ37_POS | IdentityId::EQ38_UNSIGNED_POS => {
            (lhs.is_positive(), "lhs > 0 required".to_string())
        }
        IdentityId::EQ38_EXPANSION => {
            let mu = inst.mu()?;
            if in_unit_interval(mu) {
                (
                    lhs == rhs && lhs.is_positive(),
                    "lhs = rhs > 0 required".to_string(),
                )
            } else {
                (lhs == rhs, String::new())
            }
        }
        IdentityId::EQ30_PRINTED | IdentityId::EQ31_PRINTED => {
            (lhs == rhs, "printed form, expected to fail".to_string())
        }
        _ => (lhs == rhs, String::new()),
    };
    Ok(CheckReport {
        instance: inst.clone(),
        lhs,
        rhs,
        pass,
        note,
    })
}

/// All in-domain instances with `0 <= p <= n <= n_max`, ordered by
/// `(n, p, parameter)` with parameters in the order given.
pub fn grid_instances(
    id: IdentityId,
    n_max: usize,
    mu_set: &[ExactRational],
    z_set: &[ExactRational],
) -> Vec<IdentityInstance> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        for p in 0..=n {
            if !id.admits(n, p) {
                continue;
            }
            let base = IdentityInstance::new(id, n, p);
            match id.param() {
                Param::None => out.push(base),
                Param::Mu => out.extend(
                    mu_set
                        .iter()
                        .filter(|m| id.admits_param(m))
                        .map(|m| base.clone().with_mu(m.clone())),
                ),
                Param::Z => out.extend(z_set.iter().map(|z| base.clone().with_z(z.clone()))),
            }
        }
    }
    out
}

/// Checks every grid instance in parallel; the result order is the
/// deterministic order of [`grid_instances`].
pub fn check_grid(
    id: IdentityId,
    n_max: usize,
    mu_set: &[ExactRational],
    z_set: &[ExactRational],
) -> Result<Vec<CheckReport>> {
    grid_instances(id, n_max, mu_set, z_set)
        .par_iter()
        .map(check_instance)
        .collect()
}

/// Same sweep against an arbitrary number source.
pub fn check_grid_with(
    src: &dyn NumberSource,
    id: IdentityId,
    n_max: usize,
    mu_set: &[ExactRational],
    z_set: &[ExactRational],
) -> Result<Vec<CheckReport>> {
    grid_instances(id, n_max, mu_set, z_set)
        .par_iter()
        .map(|inst| check_instance_with(src, inst))
        .collect()
}

/// Whether a sweep shows the verdict the registry expects for `id`.
pub fn expectation_met(id: IdentityId, reports: &[CheckReport]) -> bool {
    match id.expected() {
        Verdict::Holds => reports.iter().all(|r| r.pass),
        Verdict::KnownFalse => {
            reports.iter().any(|r| !r.pass) || reports.iter().all(|r| r.instance.n < 2)
        }
    }
}

/// Sign of `(-1)^(n-p) sum_k s(n,k) S(k,p) mu^k` for every `p <= n <= n_max`.
///
/// Column `p = 0` vanishes below the diagonal for every `mu`, and for
/// `mu = 1` the sum must vanish whenever `n > p`; otherwise a report
/// passes when the value is strictly positive, so for `mu > 1` failures
/// mark where positivity breaks down.
pub fn positivity_scan(n_max: usize, mu: &ExactRational) -> Result<Vec<CheckReport>> {
    if !mu.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "mu must be positive, got {mu}"
        )));
    }
    let ev = Eval { src: &Recurrences };
    let unit = mu.is_one();
    let pairs: Vec<(usize, usize)> = (0..=n_max)
        .flat_map(|n| (0..=n).map(move |p| (n, p)))
        .collect();
    Ok(pairs
        .par_iter()
        .map(|&(n, p)| {
            let lhs = sign(n - p) * ev.s1_s2_poly(n, p, mu);
            let (pass, note) = if p == 0 && n > 0 {
                (lhs.is_zero(), "lhs = 0 required in column p = 0")
            } else if unit && n > p {
                (lhs.is_zero(), "lhs = 0 required at mu = 1")
            } else {
                (lhs.is_positive(), "lhs > 0 required")
            };
            CheckReport {
                instance: IdentityInstance::new(IdentityId::EQ37_POS, n, p).with_mu(mu.clone()),
                lhs,
                rhs: ExactRational::zero(),
                pass,
                note: note.to_string(),
            }
        })
        .collect())
}
