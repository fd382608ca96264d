use num_traits::{One, Zero};

use super::{Flavor, Series};
use crate::error::{Error, Result};
use crate::kernel::{
    binom_int, int_to_rat, lah, rat, sign, stirling1_signed, stirling2, ExactInt, ExactRational,
};

/// The series transformations. Each one maps an input sequence `a_k` to
/// `b_n = sum_k w(n, k) a_k` for a fixed weight, and each has a functional
/// form (a substitution or a product with a known kernel) on the
/// generating-function side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformKind {
    /// `f((mu/lambda)(e^(lambda t) - 1))`; weight `S(n,k) lambda^(n-k) mu^k`.
    Stirling2 {
        lambda: ExactRational,
        mu: ExactRational,
    },
    /// `f((mu/lambda) ln(1 + lambda t))`; weight `s(n,k) lambda^(n-k) mu^k`.
    Stirling1 {
        lambda: ExactRational,
        mu: ExactRational,
    },
    /// `f(mu t / (1 - lambda t))`; weight `L(n,k) lambda^(n-k) mu^k`.
    Lah {
        lambda: ExactRational,
        mu: ExactRational,
    },
    /// `e^(lambda t) f(t)`; weight `C(n,k) lambda^(n-k)`.
    Binomial { lambda: ExactRational },
    /// Euler's transformation on an ordinary generating function,
    /// `f(mu t / (1 - lambda t)) / (1 - lambda t)`; weight `C(n,k) lambda^(n-k) mu^k`.
    EulerOgf {
        lambda: ExactRational,
        mu: ExactRational,
    },
    /// `f(t) / (1 - lambda t)` on an OGF; weight `lambda^(n-k)`.
    GeomSum { lambda: ExactRational },
    /// `f(t) ln(1 + t) / t` on an OGF; weight `(-1)^(n-k) / (n-k+1)`.
    LogDivide,
}

impl TransformKind {
    /// The flavor the input (and output) series must carry.
    pub fn flavor(&self) -> Flavor {
        match self {
            TransformKind::Stirling2 { .. }
            | TransformKind::Stirling1 { .. }
            | TransformKind::Lah { .. }
            | TransformKind::Binomial { .. } => Flavor::Egf,
            TransformKind::EulerOgf { .. }
            | TransformKind::GeomSum { .. }
            | TransformKind::LogDivide => Flavor::Ogf,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TransformKind::Stirling2 { .. } => "stirling2",
            TransformKind::Stirling1 { .. } => "stirling1",
            TransformKind::Lah { .. } => "lah",
            TransformKind::Binomial { .. } => "binomial",
            TransformKind::EulerOgf { .. } => "euler",
            TransformKind::GeomSum { .. } => "geomsum",
            TransformKind::LogDivide => "logdivide",
        }
    }

    fn check_input(&self, a: &Series) -> Result<()> {
        if a.flavor() != self.flavor() {
            return Err(Error::FlavorMismatch {
                expected: self.flavor(),
                found: a.flavor(),
            });
        }
        Ok(())
    }
}

fn powers(x: &ExactRational, upto: usize) -> Vec<ExactRational> {
    let mut out = Vec::with_capacity(upto + 1);
    let mut acc = ExactRational::one();
    for _ in 0..=upto {
        out.push(acc.clone());
        acc *= x;
    }
    out
}

fn triangle_sum(
    a: &[ExactRational],
    weight: impl Fn(usize, usize) -> ExactInt,
    lambda: &ExactRational,
    mu: &ExactRational,
) -> Vec<ExactRational> {
    let order = a.len() - 1;
    let lp = powers(lambda, order);
    let mp = powers(mu, order);
    (0..=order)
        .map(|n| {
            (0..=n)
                .filter(|&k| !a[k].is_zero())
                .map(|k| int_to_rat(weight(n, k)) * &lp[n - k] * &mp[k] * &a[k])
                .sum()
        })
        .collect()
}

/// Direct path: evaluates the coefficient sum term by term from the
/// number triangles. With `lambda = 0`, `lambda^(n-k)` follows `0^0 = 1`.
pub fn apply_transform(kind: &TransformKind, a: &Series) -> Result<Series> {
    kind.check_input(a)?;
    let seq = a.sequence();
    let one = ExactRational::one();
    let out = match kind {
        TransformKind::Stirling2 { lambda, mu } => triangle_sum(&seq, stirling2, lambda, mu),
        TransformKind::Stirling1 { lambda, mu } => triangle_sum(&seq, stirling1_signed, lambda, mu),
        TransformKind::Lah { lambda, mu } => triangle_sum(&seq, lah, lambda, mu),
        TransformKind::Binomial { lambda } => triangle_sum(&seq, binom_int, lambda, &one),
        TransformKind::EulerOgf { lambda, mu } => triangle_sum(&seq, binom_int, lambda, mu),
        TransformKind::GeomSum { lambda } => {
            triangle_sum(&seq, |_, _| ExactInt::one(), lambda, &one)
        }
        TransformKind::LogDivide => (0..seq.len())
            .map(|n| {
                (0..=n)
                    .map(|k| sign(n - k) * &seq[k] / rat((n - k + 1) as i64))
                    .sum()
            })
            .collect(),
    };
    Series::new(a.flavor(), a.order(), &out)
}

/// Composition path: builds the generating-function side of the transform
/// with series algebra only. Stirling kinds need `lambda != 0`.
pub fn compose_path(kind: &TransformKind, a: &Series) -> Result<Series> {
    kind.check_input(a)?;
    let f = a.flavor();
    let order = a.order();
    let t = Series::var(f, order);
    match kind {
        TransformKind::Stirling2 { lambda, mu } => {
            if lambda.is_zero() {
                return Err(Error::ZeroLambda);
            }
            let inner = Series::exp_linear(f, lambda, order)
                .sub(&Series::one(f, order))?
                .scale(&(mu / lambda));
            a.compose(&inner)
        }
        TransformKind::Stirling1 { lambda, mu } => {
            if lambda.is_zero() {
                return Err(Error::ZeroLambda);
            }
            let inner = Series::ln1p(f, order)
                .compose(&t.scale(lambda))?
                .scale(&(mu / lambda));
            a.compose(&inner)
        }
        TransformKind::Lah { lambda, mu } => {
            let inner = Series::geometric(f, lambda, order).mul(&t.scale(mu))?;
            a.compose(&inner)
        }
        TransformKind::Binomial { lambda } => Series::exp_linear(f, lambda, order).mul(a),
        TransformKind::EulerOgf { lambda, mu } => {
            let geo = Series::geometric(f, lambda, order);
            let inner = geo.mul(&t.scale(mu))?;
            geo.mul(&a.compose(&inner)?)
        }
        TransformKind::GeomSum { lambda } => Series::geometric(f, lambda, order).mul(a),
        TransformKind::LogDivide => Series::ln1p_over_t(f, order).mul(a),
    }
}

/// True iff the direct coefficient sums and the composition path agree
/// exactly through the full order.
pub fn dual_path_check(kind: &TransformKind, a: &Series) -> Result<bool> {
    Ok(apply_transform(kind, a)? == compose_path(kind, a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{bell, ratio};
    use proptest::prelude::*;

    fn seq(flavor: Flavor, terms: Vec<ExactRational>) -> Series {
        let order = terms.len() - 1;
        Series::new(flavor, order, &terms).unwrap()
    }

    #[test]
    fn binomial_of_delta_is_all_ones() {
        let mut terms = vec![rat(0); 8];
        terms[0] = rat(1);
        let a = seq(Flavor::Egf, terms);
        let b = apply_transform(&TransformKind::Binomial { lambda: rat(1) }, &a).unwrap();
        assert_eq!(b.sequence(), vec![rat(1); 8]);
    }

    #[test]
    fn stirling2_of_ones_is_bell() {
        let a = seq(Flavor::Egf, vec![rat(1); 12]);
        let kind = TransformKind::Stirling2 {
            lambda: rat(1),
            mu: rat(1),
        };
        let b = apply_transform(&kind, &a).unwrap();
        for n in 0..12 {
            assert_eq!(b.term(n), int_to_rat(bell(n)));
        }
        assert!(dual_path_check(&kind, &a).unwrap());
    }

    #[test]
    fn lah_on_stirling1_column() {
        let p = 2;
        let a = seq(
            Flavor::Egf,
            (0..=8)
                .map(|k| int_to_rat(stirling1_signed(k, p)))
                .collect(),
        );
        let kind = TransformKind::Lah {
            lambda: rat(1),
            mu: rat(1),
        };
        let b = apply_transform(&kind, &a).unwrap();
        for n in 0..=8 {
            assert_eq!(b.term(n), sign(n + p) * int_to_rat(stirling1_signed(n, p)));
        }
    }

    #[test]
    fn euler_on_signed_column_matches_composition() {
        let p = 2;
        let terms = (0..=12)
            .map(|n| {
                sign(n) * int_to_rat(stirling1_signed(n, p))
                    / int_to_rat(crate::kernel::factorial(n))
            })
            .collect();
        let a = seq(Flavor::Ogf, terms);
        let kind = TransformKind::EulerOgf {
            lambda: rat(1),
            mu: rat(1),
        };
        assert!(dual_path_check(&kind, &a).unwrap());
    }

    #[test]
    fn zero_input_passes_everywhere() {
        let kinds = [
            TransformKind::Stirling2 {
                lambda: rat(2),
                mu: rat(3),
            },
            TransformKind::Stirling1 {
                lambda: rat(-1),
                mu: rat(1),
            },
            TransformKind::Lah {
                lambda: rat(1),
                mu: rat(1),
            },
            TransformKind::Binomial { lambda: rat(1) },
            TransformKind::EulerOgf {
                lambda: rat(1),
                mu: rat(2),
            },
            TransformKind::GeomSum { lambda: rat(3) },
            TransformKind::LogDivide,
        ];
        for k in &kinds {
            let a = Series::zero(k.flavor(), 6);
            assert!(dual_path_check(k, &a).unwrap(), "{}", k.name());
        }
    }

    #[test]
    fn lambda_zero() {
        let a = seq(Flavor::Egf, vec![rat(1), rat(2), rat(3), rat(4)]);
        let kind = TransformKind::Stirling2 {
            lambda: rat(0),
            mu: rat(2),
        };
        // only k = n survives: b_n = mu^n a_n
        let b = apply_transform(&kind, &a).unwrap();
        assert_eq!(b.sequence(), vec![rat(1), rat(4), rat(12), rat(32)]);
        assert_eq!(compose_path(&kind, &a), Err(Error::ZeroLambda));
        let id = apply_transform(&TransformKind::Binomial { lambda: rat(0) }, &a).unwrap();
        assert_eq!(id, a);
    }

    #[test]
    fn flavor_checked() {
        let a = Series::one(Flavor::Ogf, 3);
        let err = apply_transform(&TransformKind::Binomial { lambda: rat(1) }, &a);
        assert!(matches!(err, Err(Error::FlavorMismatch { .. })));
    }

    #[test]
    fn geomsum_of_delta_is_all_ones() {
        let mut terms = vec![rat(0); 6];
        terms[0] = rat(1);
        let a = seq(Flavor::Ogf, terms);
        let b = apply_transform(&TransformKind::GeomSum { lambda: rat(1) }, &a).unwrap();
        assert_eq!(b.sequence(), vec![rat(1); 6]);
    }

    #[test]
    fn stirling_transforms_are_mutually_inverse() {
        let unit = |k: &str| match k {
            "s2" => TransformKind::Stirling2 {
                lambda: rat(1),
                mu: rat(1),
            },
            _ => TransformKind::Stirling1 {
                lambda: rat(1),
                mu: rat(1),
            },
        };
        let a = seq(
            Flavor::Egf,
            (0..=25)
                .map(|n| ratio(n as i64 * n as i64 - 7, (n % 4 + 1) as i64))
                .collect(),
        );
        let there = apply_transform(&unit("s2"), &a).unwrap();
        let back = apply_transform(&unit("s1"), &there).unwrap();
        assert_eq!(back, a);
    }

    proptest! {
        #[test]
        fn dual_paths_agree(
            raw in proptest::collection::vec(-5i64..6, 1..10),
            l in (-3i64..4).prop_filter("nonzero", |v| *v != 0),
            ld in 1i64..3,
            m in -3i64..4,
            md in 1i64..3,
        ) {
            let lambda = ratio(l, ld);
            let mu = ratio(m, md);
            let kinds = [
                TransformKind::Stirling2 { lambda: lambda.clone(), mu: mu.clone() },
                TransformKind::Stirling1 { lambda: lambda.clone(), mu: mu.clone() },
                TransformKind::Lah { lambda: lambda.clone(), mu: mu.clone() },
                TransformKind::Binomial { lambda: lambda.clone() },
                TransformKind::EulerOgf { lambda: lambda.clone(), mu: mu.clone() },
                TransformKind::GeomSum { lambda: lambda.clone() },
                TransformKind::LogDivide,
            ];
            let terms: Vec<_> = raw.iter().map(|&v| rat(v)).collect();
            for k in &kinds {
                let a = seq(k.flavor(), terms.clone());
                prop_assert!(dual_path_check(k, &a).unwrap(), "{}", k.name());
            }
        }
    }
}
