use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::factorial;

/// Which number family a [`TriangleCache`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleKind {
    /// Signed Stirling numbers of the first kind, `s(n, k)`.
    StirlingSigned,
    /// Unsigned Stirling numbers of the first kind (cycle numbers).
    StirlingUnsigned,
    /// Stirling numbers of the second kind, `S(n, k)`.
    Stirling2,
    /// Lah numbers `L(n, k)`.
    Lah,
    /// Pascal's triangle.
    Binomial,
}

/// A lower-triangular table of one number family, grown a whole row at a
/// time on demand. Rows are never evicted.
///
/// Growth happens under the write lock, so every entry is computed exactly
/// once no matter how many threads race on a missing row.
#[derive(Debug)]
pub struct TriangleCache {
    kind: TriangleKind,
    rows: RwLock<Vec<Arc<Vec<BigInt>>>>,
}

impl TriangleCache {
    pub const fn new(kind: TriangleKind) -> Self {
        TriangleCache {
            kind,
            rows: RwLock::new(Vec::new()),
        }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    /// Number of rows materialized so far.
    pub fn len(&self) -> usize {
        self.rows.read().expect("triangle lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row `n`, holding the entries for `k = 0..=n`.
    pub fn row(&self, n: usize) -> Arc<Vec<BigInt>> {
        {
            let rows = self.rows.read().expect("triangle lock poisoned");
            if let Some(row) = rows.get(n) {
                return Arc::clone(row);
            }
        }
        let mut rows = self.rows.write().expect("triangle lock poisoned");
        while rows.len() <= n {
            let next = self.next_row(rows.len(), rows.last().map(|r| r.as_slice()));
            rows.push(Arc::new(next));
        }
        Arc::clone(&rows[n])
    }

    /// Entry `(n, k)`; zero when `k > n`.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        self.row(n)[k].clone()
    }

    fn next_row(&self, n: usize, prev: Option<&[BigInt]>) -> Vec<BigInt> {
        let prev = match prev {
            None => return vec![BigInt::one()],
            Some(p) => p,
        };
        debug_assert_eq!(prev.len(), n);
        // prev is row n-1 with entries 0..n-1; entries past the end are zero.
        let at = |k: usize| -> BigInt { prev.get(k).cloned().unwrap_or_else(BigInt::zero) };
        let m = BigInt::from(n - 1);
        match self.kind {
            TriangleKind::Stirling2 => (0..=n)
                .map(|k| {
                    let left = if k == 0 { BigInt::zero() } else { at(k - 1) };
                    left + BigInt::from(k) * at(k)
                })
                .collect(),
            TriangleKind::StirlingSigned => (0..=n)
                .map(|k| {
                    let left = if k == 0 { BigInt::zero() } else { at(k - 1) };
                    left - &m * at(k)
                })
                .collect(),
            TriangleKind::StirlingUnsigned => (0..=n)
                .map(|k| {
                    let left = if k == 0 { BigInt::zero() } else { at(k - 1) };
                    left + &m * at(k)
                })
                .collect(),
            TriangleKind::Binomial => (0..=n)
                .map(|k| {
                    let left = if k == 0 { BigInt::zero() } else { at(k - 1) };
                    left + at(k)
                })
                .collect(),
            TriangleKind::Lah => lah_row(n),
        }
    }
}

// L(n, k) = (n! / k!) C(n-1, k-1), with L(0, 0) = 1 and L(n, 0) = 0 for n > 0.
fn lah_row(n: usize) -> Vec<BigInt> {
    if n == 0 {
        return vec![BigInt::one()];
    }
    let nf = factorial(n);
    let mut row = Vec::with_capacity(n + 1);
    row.push(BigInt::zero());
    for k in 1..=n {
        row.push(&nf / factorial(k) * super::binom_int(n - 1, k - 1));
    }
    row
}
