//! Canonical partition function of N bosonic harmonic oscillators and its
//! finite-N correction factor.
//!
//! Everything is a function of the Boltzmann factor x = e^{-beta} (the
//! oscillator quantum is the unit of energy). The recurrence
//!
//!   Z_N(x) = (1/N) sum_{k=1..N} B_k(x) Z_{N-k}(x),   Z_0 = 1,
//!
//! with B_k(x) = (1 - x^k)^{-D} and B_0 = 0, is evaluated both in linear
//! space (compensated summation, overflow-checked) and in log space, which
//! stays in range for any x < 1. In one dimension the closed form
//! Z_N = prod_{k<=N} (1 - x^k)^{-1} provides an independent check.
//!
//! The correction factor y_N(x) = Z_N(x) / Z_inf(x) tends to 1 as N grows;
//! [`y1d_closed`] and [`y2d_closed`] expose the closed-form approximations
//! of it used by the restricted-partition estimates. Which flavor is
//! appropriate depends on the regime (x small versus x near 1), so all of
//! them are exposed and the caller chooses.

use crate::error::{Error, Result};

/// Spatial dimension of the oscillators. Only one and two dimensions carry
/// the partition-counting interpretation, so nothing else is representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    One,
    Two,
}

impl Dimension {
    pub fn from_value(d: u8) -> Result<Self> {
        match d {
            1 => Ok(Dimension::One),
            2 => Ok(Dimension::Two),
            _ => Err(Error::InvalidArgument(format!(
                "dimension must be 1 or 2, got {d}"
            ))),
        }
    }

    pub fn value(self) -> u8 {
        match self {
            Dimension::One => 1,
            Dimension::Two => 2,
        }
    }

    /// Degeneracy of the k-th level: 1 in one dimension, k in two.
    fn level_weight(self, k: usize) -> f64 {
        match self {
            Dimension::One => 1.0,
            Dimension::Two => k as f64,
        }
    }
}

/// Evaluation point: Boltzmann factor x strictly inside (0, 1) plus the
/// dimension. The inverse temperature beta = -ln x is always derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorPoint {
    x: f64,
    dim: Dimension,
}

impl OscillatorPoint {
    pub fn new(x: f64, dim: Dimension) -> Result<Self> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "x must satisfy 0 < x < 1 strictly, got {x}"
            )));
        }
        Ok(Self { x, dim })
    }

    pub fn x(self) -> f64 {
        self.x
    }

    pub fn dim(self) -> Dimension {
        self.dim
    }

    pub fn beta(self) -> f64 {
        -self.x.ln()
    }
}

/// Z_N(x) for N = 0..=n_max, as produced by [`zn_recurrence`].
#[derive(Debug, Clone)]
pub struct ZSequence {
    point: OscillatorPoint,
    values: Vec<f64>,
}

impl ZSequence {
    pub fn point(&self) -> OscillatorPoint {
        self.point
    }

    /// `values()[n]` is Z_n(x); entry 0 is exactly 1.
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Compensated (Kahan) accumulator for sums of many positive terms.
#[derive(Default)]
struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    fn add(&mut self, term: f64) {
        let y = term - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

/// Cycle term B_k(x) = (1 - x^k)^{-D}, with B_0 defined as 0 so the
/// recurrence can start its sum at k = 0.
pub fn b_k(point: OscillatorPoint, k: u32) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let xk = point.x().powi(k as i32);
    (1.0 - xk).powi(-i32::from(point.dim().value()))
}

/// Evaluates the recurrence in linear space up to `n_max`.
///
/// Fails with [`Error::Overflow`] (reporting the offending N) if a value
/// leaves the f64 range; [`zn_ln_recurrence`] has no such limit.
pub fn zn_recurrence(point: OscillatorPoint, n_max: usize) -> Result<ZSequence> {
    assert!(n_max >= 1, "n_max must be at least 1");
    let b: Vec<f64> = (0..=n_max).map(|k| b_k(point, k as u32)).collect();
    let mut values = vec![0.0; n_max + 1];
    values[0] = 1.0;
    for n in 1..=n_max {
        let mut sum = KahanSum::default();
        for k in 1..=n {
            sum.add(b[k] * values[n - k]);
        }
        let v = sum.value() / n as f64;
        if !v.is_finite() {
            return Err(Error::Overflow { n });
        }
        values[n] = v;
    }
    Ok(ZSequence { point, values })
}

/// ln Z_N(x) for N = 0..=n_max, by the same recurrence rewritten around the
/// previous value: every exponential has a nonpositive argument, so this
/// never overflows however large Z_N gets.
pub fn zn_ln_recurrence(point: OscillatorPoint, n_max: usize) -> Vec<f64> {
    let b: Vec<f64> = (0..=n_max).map(|k| b_k(point, k as u32)).collect();
    let mut ln: Vec<f64> = vec![0.0; n_max + 1];
    for n in 1..=n_max {
        let base = ln[n - 1];
        let mut sum = KahanSum::default();
        for k in 1..=n {
            sum.add(b[k] * (ln[n - k] - base).exp());
        }
        ln[n] = base + (sum.value() / n as f64).ln();
    }
    ln
}

/// One-dimensional closed form Z_N = prod_{k=1..N} (1 - x^k)^{-1}; returns 1
/// for N = 0. Errs if the point is not one-dimensional.
pub fn zn_1d_closed(point: OscillatorPoint, n: usize) -> Result<f64> {
    if point.dim() != Dimension::One {
        return Err(Error::DimensionMismatch {
            required: 1,
            actual: point.dim().value(),
        });
    }
    let x = point.x();
    let mut xk = 1.0;
    let mut product = 1.0;
    for _ in 1..=n {
        xk *= x;
        product /= 1.0 - xk;
    }
    Ok(product)
}

/// Term cap for the infinite-system series.
pub const Z_INF_MAX_TERMS: usize = 1_000_000;

/// ln Z_inf(x) = -sum_{k>=1} w_k ln(1 - x^k), with level weight w_k = 1 in
/// one dimension and w_k = k in two (where the sum is the log of MacMahon's
/// product).
///
/// Terms are added until a geometric bound on the remaining tail drops
/// below `tol` relative to the partial sum; if that does not happen within
/// [`Z_INF_MAX_TERMS`] terms (x extremely close to 1), the evaluation fails
/// with [`Error::Convergence`].
pub fn z_inf(point: OscillatorPoint, tol: f64) -> Result<f64> {
    assert!(tol > 0.0, "tol must be positive");
    let x = point.x();
    let geom = x / (1.0 - x);
    let mut xk = 1.0;
    let mut sum = KahanSum::default();
    for k in 1..=Z_INF_MAX_TERMS {
        xk *= x;
        let term = -point.dim().level_weight(k) * (-xk).ln_1p();
        sum.add(term);
        // Tail bound: terms shrink at least like x^j, with the level weight
        // growing by (k+j)/k per step in two dimensions.
        let weight_growth = match point.dim() {
            Dimension::One => 1.0,
            Dimension::Two => 1.0 + 1.0 / (k as f64 * (1.0 - x)),
        };
        let tail = term * geom * weight_growth;
        if tail < tol * sum.value().max(f64::MIN_POSITIVE) {
            return Ok(sum.value());
        }
    }
    Err(Error::Convergence {
        x,
        terms: Z_INF_MAX_TERMS,
    })
}

/// Finite-N correction factor y_N(x) = Z_N(x) / Z_inf(x), evaluated in log
/// space. The ratio is mathematically in (0, 1] and clamped there against
/// float rounding; it tends to 1 as N grows.
pub fn y_n_numeric(point: OscillatorPoint, n: usize, tol: f64) -> Result<f64> {
    assert!(n >= 1, "n must be at least 1");
    let ln_zn = zn_ln_recurrence(point, n);
    let ln_zinf = z_inf(point, tol)?;
    Ok((ln_zn[n] - ln_zinf).exp().min(1.0))
}

/// Closed-form approximations of the one-dimensional correction factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Y1dFlavor {
    /// 1 - x^{N+1}: leading order of the inverse transform.
    Leading,
    /// exp(-x^{N+1}): exponential resummation, accurate at small x.
    ExpSmallX,
    /// exp(-x^N / (1-x)): the variant used near x -> 1, where the whole
    /// geometric tail of the omitted levels contributes.
    ExpNearOne,
}

/// Selected closed form of y_N in one dimension.
pub fn y1d_closed(x: f64, n: u32, flavor: Y1dFlavor) -> f64 {
    match flavor {
        Y1dFlavor::Leading => 1.0 - x.powi(n as i32 + 1),
        Y1dFlavor::ExpSmallX => (-x.powi(n as i32 + 1)).exp(),
        Y1dFlavor::ExpNearOne => (-x.powi(n as i32) / (1.0 - x)).exp(),
    }
}

/// Closed-form approximations of the two-dimensional correction factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Y2dFlavor {
    /// (N+1) x^{N+2} - (N+2) x^{N+1} + 1: the full inverse transform. Its
    /// value approaches 0 as x -> 1, outside the approximation's regime.
    Full,
    /// 1 - N x^N: the large-N, small-x reduction.
    Leading,
}

/// Selected closed form of y_N in two dimensions.
pub fn y2d_closed(x: f64, n: u32, flavor: Y2dFlavor) -> f64 {
    let m = f64::from(n);
    match flavor {
        Y2dFlavor::Full => {
            (m + 1.0) * x.powi(n as i32 + 2) - (m + 2.0) * x.powi(n as i32 + 1) + 1.0
        }
        Y2dFlavor::Leading => 1.0 - m * x.powi(n as i32),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn point(x: f64, d: u8) -> OscillatorPoint {
        OscillatorPoint::new(x, Dimension::from_value(d).unwrap()).unwrap()
    }

    #[test]
    fn point_rejects_boundary_values() {
        assert!(OscillatorPoint::new(0.0, Dimension::One).is_err());
        assert!(OscillatorPoint::new(1.0, Dimension::One).is_err());
        assert!(OscillatorPoint::new(-0.2, Dimension::Two).is_err());
        assert!(OscillatorPoint::new(f64::NAN, Dimension::One).is_err());
        assert!(OscillatorPoint::new(0.5, Dimension::Two).is_ok());
    }

    #[test]
    fn dimension_round_trip() {
        assert_eq!(Dimension::from_value(1).unwrap().value(), 1);
        assert_eq!(Dimension::from_value(2).unwrap().value(), 2);
        assert!(Dimension::from_value(3).is_err());
    }

    #[test]
    fn b_k_examples() {
        assert_eq!(b_k(point(0.5, 1), 0), 0.0);
        assert!((b_k(point(0.5, 1), 1) - 2.0).abs() < 1e-15);
        assert!((b_k(point(0.5, 2), 1) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn recurrence_hand_unrolled() {
        let seq = zn_recurrence(point(0.5, 1), 2).unwrap();
        let v = seq.values();
        assert_eq!(v[0], 1.0);
        assert!((v[1] - 2.0).abs() < 1e-14);
        assert!((v[2] - 8.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn recurrence_ground_state_limit() {
        let seq = zn_recurrence(point(1e-12, 2), 3).unwrap();
        for &v in seq.values() {
            assert!((v - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn recurrence_matches_closed_form_to_1e10() {
        for &x in &[0.1, 0.5, 0.9] {
            let p = point(x, 1);
            let seq = zn_recurrence(p, 100).unwrap();
            for n in 0..=100 {
                let closed = zn_1d_closed(p, n).unwrap();
                let rel = (seq.values()[n] / closed - 1.0).abs();
                assert!(rel < 1e-10, "x = {x}, N = {n}, rel = {rel:e}");
            }
        }
    }

    #[test]
    fn ln_recurrence_agrees_with_linear() {
        for &(x, d) in &[(0.5, 1), (0.9, 1), (0.5, 2), (0.9, 2)] {
            let p = point(x, d);
            let lin = zn_recurrence(p, 60).unwrap();
            let ln = zn_ln_recurrence(p, 60);
            for (n, ln_z) in ln.iter().enumerate() {
                let rel = (ln_z.exp() / lin.values()[n] - 1.0).abs();
                assert!(rel < 1e-11, "x = {x}, D = {d}, N = {n}");
            }
        }
    }

    #[test]
    fn sequence_positive_and_nondecreasing() {
        // Z_{N+1} >= Z_N exactly; in f64 the increments underflow the
        // mantissa once x^{N+1} drops below machine precision, so allow a
        // few ulps of wobble.
        for &(x, d) in &[(0.1, 1), (0.5, 1), (0.9, 1), (0.1, 2), (0.5, 2), (0.9, 2)] {
            let seq = zn_recurrence(point(x, d), 80).unwrap();
            for w in seq.values().windows(2) {
                assert!(w[0] > 0.0);
                assert!(w[1] >= w[0] * (1.0 - 1e-13), "x = {x}, D = {d}");
            }
        }
    }

    #[test]
    fn closed_form_empty_product_and_dimension_guard() {
        assert_eq!(zn_1d_closed(point(0.3, 1), 0).unwrap(), 1.0);
        assert!((zn_1d_closed(point(0.5, 1), 2).unwrap() - 8.0 / 3.0).abs() < 1e-14);
        assert!(matches!(
            zn_1d_closed(point(0.5, 2), 3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn z_inf_against_direct_sums() {
        // Direct oracle sums, frozen: -sum ln(1-0.5^k) and -sum k ln(1-0.5^k).
        let one = z_inf(point(0.5, 1), 1e-14).unwrap();
        assert!((one - 1.2420620948124146).abs() < 1e-12);
        let two = z_inf(point(0.5, 2), 1e-14).unwrap();
        assert!((two - 2.3057929199450222).abs() < 1e-12);
    }

    #[test]
    fn z_inf_empty_system_limit() {
        let v = z_inf(point(1e-15, 2), 1e-14).unwrap();
        assert!(v.abs() < 1e-14);
    }

    #[test]
    fn linear_recurrence_overflows_where_log_recurrence_survives() {
        let p = point(0.99, 2);
        let err = zn_recurrence(p, 2000).unwrap_err();
        let overflow_at = match err {
            Error::Overflow { n } => n,
            other => panic!("expected overflow, got {other:?}"),
        };
        assert!(overflow_at > 1 && overflow_at <= 2000);
        let ln = zn_ln_recurrence(p, 2000);
        assert!(ln.iter().all(|v| v.is_finite()));
        // Just below the reported N the linear values are still finite and
        // the two routes agree.
        let lin = zn_recurrence(p, overflow_at - 1).unwrap();
        let n_check = overflow_at - 1;
        let rel = (ln[n_check].exp() / lin.values()[n_check] - 1.0).abs();
        assert!(rel < 1e-9, "rel = {rel:e} at N = {n_check}");
    }

    #[test]
    fn z_inf_reports_nonconvergence_near_one() {
        let p = point(1.0 - 1e-9, 2);
        assert!(matches!(z_inf(p, 1e-14), Err(Error::Convergence { .. })));
    }

    #[test]
    fn y_reaches_limit_by_n_40() {
        let y = y_n_numeric(point(0.5, 1), 40, 1e-14).unwrap();
        assert!((y - 1.0).abs() < 1e-11);
    }

    #[test]
    fn y_matches_exact_tail_product() {
        // y_3(0.5) = prod_{k>=4} (1 - 0.5^k), summed directly as the oracle.
        let y = y_n_numeric(point(0.5, 1), 3, 1e-14).unwrap();
        assert!((y - 0.8801160993115503).abs() < 1e-12, "y = {y}");
    }

    #[test]
    fn y_two_dimensional_is_monotone_toward_one() {
        let p = point(0.9, 2);
        let ln_zn = zn_ln_recurrence(p, 80);
        let ln_zinf = z_inf(p, 1e-13).unwrap();
        let mut prev = 0.0;
        for (n, ln_z) in ln_zn.iter().enumerate().skip(1) {
            let y = (ln_z - ln_zinf).exp();
            assert!(y > 0.0 && y <= 1.0);
            assert!(y >= prev, "N = {n}");
            prev = y;
        }
        assert!(prev < 1.0);
        assert!(prev > y_n_numeric(p, 10, 1e-13).unwrap());
    }

    #[test]
    fn y_log_tail_bound_where_resolvable() {
        // |ln y_N + x^{N+1}/(1-x)| <= x^{2(N+1)}/(1-x^2): the first omitted
        // term of the tail expansion dominates the rest. ln y_N comes out
        // of a cancellation of two O(1) logs, so the comparison is only
        // meaningful where the bound sits above the ~1e-15 float floor;
        // that excludes (x, N) = (0.3, 20), where the bound is 1.2e-22.
        for &x in &[0.3f64, 0.6, 0.9] {
            for &n in &[5usize, 10, 20] {
                let bound = x.powi(2 * (n as i32 + 1)) / (1.0 - x * x);
                if bound < 1e-13 {
                    continue;
                }
                let y = y_n_numeric(point(x, 1), n, 1e-15).unwrap();
                let lhs = (y.ln() + x.powi(n as i32 + 1) / (1.0 - x)).abs();
                assert!(lhs <= bound, "x = {x}, N = {n}: {lhs:e} > {bound:e}");
            }
        }
    }

    #[test]
    fn y1d_closed_examples() {
        assert!((y1d_closed(0.5, 3, Y1dFlavor::Leading) - 0.9375).abs() < 1e-15);
        assert!((y1d_closed(0.5, 3, Y1dFlavor::ExpNearOne) - (-0.25f64).exp()).abs() < 1e-15);
        for flavor in [
            Y1dFlavor::Leading,
            Y1dFlavor::ExpSmallX,
            Y1dFlavor::ExpNearOne,
        ] {
            assert!((y1d_closed(0.5, 200, flavor) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn y1d_leading_tracks_numeric_factor() {
        // Gap between the leading closed form and the numeric ratio is
        // x^{N+2}/(1-x) to first order; tested where that gap is well above
        // the float resolution of the log-space ratio.
        for &(x, n) in &[(0.1, 10usize), (0.2, 10), (0.2, 14), (0.3, 10), (0.3, 20)] {
            let numeric = y_n_numeric(point(x, 1), n, 1e-15).unwrap();
            let leading = y1d_closed(x, n as u32, Y1dFlavor::Leading);
            let bound = 2.0 * x.powi(n as i32 + 2) / (1.0 - x);
            assert!(
                (leading - numeric).abs() < bound,
                "x = {x}, N = {n}: {:e} vs {bound:e}",
                (leading - numeric).abs()
            );
        }
    }

    #[test]
    fn y2d_closed_examples() {
        assert!((y2d_closed(0.5, 2, Y2dFlavor::Full) - 0.6875).abs() < 1e-15);
        let lead = y2d_closed(0.1, 10, Y2dFlavor::Leading);
        assert!((lead - (1.0 - 1e-9)).abs() < 1e-16);
        for flavor in [Y2dFlavor::Full, Y2dFlavor::Leading] {
            assert!((y2d_closed(1e-12, 7, flavor) - 1.0).abs() < 1e-11);
        }
    }

    #[test]
    fn y2d_flavors_agree_where_both_apply() {
        // The gap between the two flavors is N x^N minus smaller
        // corrections; checked where N x^N is resolvable in f64.
        for &(x, n) in &[
            (0.1, 10u32),
            (0.2, 10),
            (0.2, 15),
            (0.25, 10),
            (0.25, 15),
            (0.25, 20),
            (0.3, 10),
            (0.3, 15),
            (0.3, 20),
        ] {
            let full = y2d_closed(x, n, Y2dFlavor::Full);
            let leading = y2d_closed(x, n, Y2dFlavor::Leading);
            let gap = full - leading;
            assert!(gap > 0.0, "x = {x}, N = {n}");
            assert!(gap < f64::from(n) * x.powi(n as i32), "x = {x}, N = {n}");
        }
        // Toward the upper end of x the coarser bound 3 (N+2) x^{N+1} holds.
        for &x in &[0.25, 0.3] {
            for &n in &[10u32, 15, 20] {
                let gap = y2d_closed(x, n, Y2dFlavor::Full) - y2d_closed(x, n, Y2dFlavor::Leading);
                assert!(gap.abs() <= 3.0 * f64::from(n + 2) * x.powi(n as i32 + 1));
            }
        }
    }

    proptest! {
        #[test]
        fn prop_sequence_monotone(x in 0.01f64..0.95, d in 1u8..=2, n_max in 2usize..40) {
            let seq = zn_recurrence(point(x, d), n_max).unwrap();
            for w in seq.values().windows(2) {
                prop_assert!(w[1] >= w[0] * (1.0 - 1e-13) && w[0] > 0.0);
            }
        }

        #[test]
        fn prop_y_in_unit_interval_and_closed_form_agrees(x in 0.01f64..0.92, n in 1usize..60) {
            let p = point(x, 1);
            let y = y_n_numeric(p, n, 1e-13).unwrap();
            prop_assert!(y > 0.0 && y <= 1.0);
            let closed = zn_1d_closed(p, n).unwrap();
            let rec = zn_recurrence(p, n).unwrap();
            prop_assert!((rec.values()[n] / closed - 1.0).abs() < 1e-9);
        }
    }
}
