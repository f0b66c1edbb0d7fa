//! Exact big-integer counting of linear and plane partitions.
//!
//! - [`p1d`]: p(n), linear partitions, via dynamic programming
//! - [`p1d_atmost`]: linear partitions into at most N parts
//! - [`sigma2`]: divisor-square sum powering the plane recurrence
//! - [`p2d`]: plane partitions, via the logarithmic-derivative recurrence
//!   n p(n) = sum_{j=1..n} sigma2(j) p(n-j) of MacMahon's product
//! - [`p2d_atmost`]: plane partitions into at most N parts, by exhaustive
//!   generation (no product formula by part count is known)
//!
//! Every count is an arbitrary-precision [`BigCount`]; the plane sequence
//! grows super-polynomially and would silently wrap a fixed-width integer
//! around n = 60.

use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::plane;

/// Arbitrary-precision nonnegative partition count.
pub type BigCount = BigUint;

/// A counting problem: the integer `n` being partitioned and an optional cap
/// on the number of nonzero parts. `max_parts: None` means unrestricted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RestrictionSpec {
    pub n: u64,
    pub max_parts: Option<u64>,
}

impl RestrictionSpec {
    /// Builds a spec, rejecting a bounded cap of zero parts.
    pub fn new(n: u64, max_parts: Option<u64>) -> Result<Self> {
        if max_parts == Some(0) {
            return Err(Error::InvalidArgument(
                "max_parts must be at least 1 when bounded".into(),
            ));
        }
        Ok(Self { n, max_parts })
    }

    pub fn unrestricted(n: u64) -> Self {
        Self { n, max_parts: None }
    }

    pub fn at_most(n: u64, max_parts: u64) -> Result<Self> {
        Self::new(n, Some(max_parts))
    }
}

/// Number of linear partitions of `n`. `p1d(0) = 1` (the empty partition).
pub fn p1d(n: u64) -> BigCount {
    bounded_parts_count(n, n)
}

/// Number of linear partitions of `spec.n` into at most `spec.max_parts`
/// nonzero parts. Equals [`p1d`] once the cap reaches `n`.
pub fn p1d_atmost(spec: RestrictionSpec) -> BigCount {
    match spec.max_parts {
        None => p1d(spec.n),
        Some(cap) => bounded_parts_count(spec.n, cap),
    }
}

/// Partitions of `n` into at most `cap` parts, equivalently (by conjugation)
/// partitions of `n` into parts of size at most `cap`.
fn bounded_parts_count(n: u64, cap: u64) -> BigCount {
    let n = n as usize;
    let cap = cap.min(n as u64) as usize;
    let mut dp = vec![BigUint::zero(); n + 1];
    dp[0] = BigUint::one();
    for size in 1..=cap {
        for m in size..=n {
            let (lo, hi) = dp.split_at_mut(m);
            hi[0] += &lo[m - size];
        }
    }
    dp[n].clone()
}

/// Sum of the squares of the divisors of `k`.
///
/// # Panics
///
/// Panics if `k == 0`.
pub fn sigma2(k: u64) -> BigCount {
    assert!(k >= 1, "sigma2 is defined for k >= 1");
    let mut sum: u128 = 0;
    let mut d = 1u64;
    while d * d <= k {
        if k.is_multiple_of(d) {
            sum += u128::from(d) * u128::from(d);
            let e = k / d;
            if e != d {
                sum += u128::from(e) * u128::from(e);
            }
        }
        d += 1;
    }
    BigUint::from(sum)
}

static P2D_MEMO: Mutex<Vec<BigUint>> = Mutex::new(Vec::new());

/// Number of unrestricted plane partitions of `n`. `p2d(0) = 1`.
///
/// Computed by the recurrence n p(n) = sum_{j=1..n} sigma2(j) p(n-j), the
/// logarithmic derivative of the generating product prod (1-x^k)^{-k}.
/// Values are memoized process-wide; each entry is computed once and then
/// only cloned out.
pub fn p2d(n: u64) -> BigCount {
    let n = n as usize;
    let mut memo = P2D_MEMO.lock().unwrap();
    if memo.is_empty() {
        memo.push(BigUint::one());
    }
    while memo.len() <= n {
        let m = memo.len();
        let mut acc = BigUint::zero();
        for j in 1..=m {
            acc += sigma2(j as u64) * &memo[m - j];
        }
        memo.push(acc / m);
    }
    memo[n].clone()
}

/// Number of plane partitions of `spec.n` with at most `spec.max_parts`
/// nonzero entries, using the default generator ceiling.
///
/// Falls back to [`p2d`] whenever the cap is at least `n`; otherwise the
/// count is obtained from an exhaustive generation pass, which fails with
/// [`Error::CeilingExceeded`] above the ceiling.
pub fn p2d_atmost(spec: RestrictionSpec) -> Result<BigCount> {
    p2d_atmost_with_ceiling(spec, plane::DEFAULT_CEILING)
}

/// [`p2d_atmost`] with an explicit generator ceiling.
pub fn p2d_atmost_with_ceiling(spec: RestrictionSpec, ceiling: u64) -> Result<BigCount> {
    match spec.max_parts {
        None => Ok(p2d(spec.n)),
        Some(cap) if cap >= spec.n => Ok(p2d(spec.n)),
        Some(cap) => {
            let hist = plane::count_by_parts_with_ceiling(spec.n, ceiling)?;
            let mut total = BigUint::zero();
            for h in hist.iter().take(cap as usize + 1) {
                total += h;
            }
            Ok(total)
        }
    }
}
