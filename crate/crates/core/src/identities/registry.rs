use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::kernel::{in_unit_interval, ExactRational};

/// Which extra scalar an identity is parameterized by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    None,
    Mu,
    Z,
}

macro_rules! identity_ids {
    ($($variant:ident => $name:literal, $param:ident, $formula:literal;)*) => {
        /// Every identity in the registry.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        #[allow(non_camel_case_types)]
        pub enum IdentityId {
            $($variant,)*
        }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $name,)*
                }
            }

            pub fn param(self) -> Param {
                match self {
                    $(IdentityId::$variant => Param::$param,)*
                }
            }

            /// The statement, in plain text.
            pub fn formula(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $formula,)*
                }
            }
        }

        impl FromStr for IdentityId {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self, Error> {
                match s.to_ascii_uppercase().as_str() {
                    $($name => Ok(IdentityId::$variant),)*
                    _ => Err(Error::InvalidParameter(format!("unknown identity `{s}`"))),
                }
            }
        }
    };
}

identity_ids! {
    EQ12 => "EQ12", None, "sum_k C(n,k) S(k,p) = S(n+1,p+1)";
    EQ13 => "EQ13", None, "sum_k s(n,k) (-1)^k C(k,p) = (-1)^p s(n+1,p+1)";
    EQ14 => "EQ14", None, "sum_k s(n,k) C(k,p) = s(n,p) + n s(n-1,p)";
    EQ15 => "EQ15", Mu, "sum_k s(n,k) C(k,p) mu^k = mu^p sum_k C(n,k) C(mu,k) s(n-k,p) k!";
    EQ15_MU2 => "EQ15_MU2", None, "sum_k s(n,k) C(k,p) 2^k = 2^p [s(n,p) + 2n s(n-1,p) + n(n-1) s(n-2,p)]";
    EQ17 => "EQ17", None, "sum_k C(n,k) s(k+1,p)/(k+1)! = (-1)^(p-1) (-1)^n s(n+1,p)/(n+1)!";
    EQ18 => "EQ18", None, "(p+1) s(n+1,p+1)/(n+1)! = (-1)^(n-1) sum_{k<n} (-1)^k/(n-k) s(k+1,p)/(k+1)!";
    EQ19 => "EQ19", None, "s(n+1,p+1) = (-1)^(n-1) (n+1)!/(p+1) sum_{k<n} (-1)^k/(n-k) s(k+1,p)/(k+1)!";
    EQ20 => "EQ20", None, "s(n+1,p+1) = sum_k C(n,k) (-1)^(n-k) s(k,p) (n-k)!";
    EQ21 => "EQ21", None, "sum_k C(n,k) s(k,p)/k! = (-1)^(n-p) s(n+1,p+1)/n!";
    EQ22 => "EQ22", Mu, "sum_k S(n,k) C(k,p) mu^k = mu^p sum_k C(n,k) S(k,p) phi_(n-k)(mu)";
    EQ23 => "EQ23", None, "sum_k S(n,k) C(k,p) = sum_k C(n,k) S(k,p) b_(n-k)";
    EQ23_P0 => "EQ23_P0", None, "sum_k S(n,k) = b_n";
    EQ23_P1 => "EQ23_P1", None, "sum_k S(n,k) k = b_(n+1) - b_n";
    PHI_REC => "PHI_REC", Mu, "phi_(n+1)(mu) = mu sum_k C(n,k) phi_k(mu)";
    EQ25 => "EQ25", Mu, "sum_k L(n,k) C(k,p) mu^k = mu^p n!/p! Laguerre_(n-p)^(p-1)(-mu)";
    EQ26 => "EQ26", Mu, "sum_k L(n,k) mu^k = n! Laguerre_n^(-1)(-mu)";
    EQ27 => "EQ27", None, "sum_k C(n,k) L(k,p) (-1)^k/k! = (-1)^p/p!";
    EQ27_BINOM => "EQ27_BINOM", None, "sum_k C(n,k) C(k-1,p-1) (-1)^k = (-1)^p";
    EQ28 => "EQ28", None, "L(n,p) = sum_k (-1)^(n-k) s(n,k) S(k,p)";
    EQ29 => "EQ29", None, "sum_k S(n,k) L(k,p) (-1)^k = (-1)^n S(n,p)";
    EQ30_PRINTED => "EQ30_PRINTED", None, "sum_k S(n,k) L(k,p) (-1)^k = (-1)^p sum_k S(n,k) p^(n-k) (-1)^(n-k)  [as printed]";
    EQ30_CORRECTED => "EQ30_CORRECTED", None, "sum_k S(n,k) L(k,p) (-1)^k = (-1)^p sum_k C(n,k) S(k,p) p^(n-k) (-1)^(n-k)";
    EQ31_PRINTED => "EQ31_PRINTED", None, "S(n,p) = (-1)^p sum_k S(n,k) p^(n-k) (-1)^k  [as printed]";
    EQ31_CORRECTED => "EQ31_CORRECTED", None, "S(n,p) = (-1)^p sum_k C(n,k) S(k,p) p^(n-k) (-1)^k";
    EQ32 => "EQ32", None, "sum_k L(n,k) s(k,p) = (-1)^(n+p) s(n,p)";
    EQ33_ORTHO => "EQ33_ORTHO", None, "sum_k S(n,k) s(k,p) = [n = p]";
    EQ33_ORTHO_DUAL => "EQ33_ORTHO_DUAL", None, "sum_k s(n,k) S(k,p) = [n = p]";
    EQ34 => "EQ34", Z, "sum_k s(n,k) S(k,p) z^k = (-1)^p n!/p! sum_j C(p,j) (-1)^j C(zj,n)";
    EQ34_Z1 => "EQ34_Z1", None, "(-1)^p n!/p! sum_j C(p,j) (-1)^j C(j,n) = [n = p]";
    EQ34_ZM1 => "EQ34_ZM1", None, "(-1)^p n!/p! sum_j C(p,j) (-1)^j C(-j,n) = (-1)^n L(n,p)";
    EQ35 => "EQ35", Mu, "sum_k s(n,k) S(k,p) mu^k = n! [t^n] ((1+t)^mu - 1)^p / p!";
    EQ37_POS => "EQ37_POS", Mu, "(-1)^(n-p) sum_k s(n,k) S(k,p) mu^k > 0 for 0 < mu < 1";
    EQ37_CEX => "EQ37_CEX", None, "(-1)^(4-3) sum_k s(4,k) S(k,3) 3^k = -324";
    EQ38_EXPANSION => "EQ38_EXPANSION", Mu, "n! [t^n] (1 - (1-t)^mu) = mu (1-mu)(2-mu)...(n-1-mu), positive for 0 < mu < 1";
    EQ38_UNSIGNED_POS => "EQ38_UNSIGNED_POS", Mu, "sum_k (-1)^(k+p) |s(n,k)| S(k,p) mu^k > 0 for 0 < mu < 1, n > p > 0";
}

/// What a grid sweep of an identity is expected to show.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Every instance passes.
    Holds,
    /// The statement is known to be wrong; at least one instance in any
    /// grid reaching `n >= 2` fails.
    KnownFalse,
}

impl IdentityId {
    pub fn expected(self) -> Verdict {
        match self {
            IdentityId::EQ30_PRINTED | IdentityId::EQ31_PRINTED => Verdict::KnownFalse,
            _ => Verdict::Holds,
        }
    }

    /// Sign checks rather than equalities.
    pub fn is_positivity(self) -> bool {
        matches!(self, IdentityId::EQ37_POS | IdentityId::EQ38_UNSIGNED_POS)
    }

    /// Whether `(n, p)` is inside the identity's domain. Grid sweeps
    /// additionally require `p <= n`.
    pub fn admits(self, n: usize, p: usize) -> bool {
        use IdentityId::*;
        match self {
            // ln^0(1+t)/t is not a power series, so these start at p = 1
            EQ18 | EQ19 => p >= 1 && p <= n,
            EQ27_BINOM => p >= 1 && p <= n,
            EQ23_P0 | EQ26 | PHI_REC => p == 0,
            EQ23_P1 | EQ38_EXPANSION => p == 1 && n >= 1,
            EQ37_CEX => n == 4 && p == 3,
            // the p = 0 column of (1 - (1-t)^mu)^p / p! is the constant 1
            EQ37_POS => p <= n && (p >= 1 || n == 0),
            EQ38_UNSIGNED_POS => p >= 1 && n > p,
            EQ33_ORTHO | EQ33_ORTHO_DUAL => true,
            _ => p <= n,
        }
    }

    /// Whether the scalar parameter value is inside the identity's domain.
    pub fn admits_param(self, x: &ExactRational) -> bool {
        match self {
            IdentityId::EQ37_POS | IdentityId::EQ38_UNSIGNED_POS => in_unit_interval(x),
            _ => true,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
