//! Closed-form bounds on empty-box volumes and on the work of the
//! approximation.

use num_bigint::BigUint;
use serde::Serialize;

use crate::approx::derive_params;
use crate::error::{Error, Result};
use crate::pointgen::PrimeList;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Quantity {
    #[serde(rename = "A_d")]
    Ad,
    #[serde(rename = "A_prime_d")]
    APrimeD,
    #[serde(rename = "restricted_count")]
    RestrictedCount,
    #[serde(rename = "canonical_count")]
    CanonicalCount,
    #[serde(rename = "placement_count")]
    PlacementCount,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub quantity: Quantity,
    pub n: usize,
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub lower: f64,
    pub upper: f64,
    /// Exact integer values of the bounds, for counts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_exact: Option<String>,
    pub formulas: Vec<String>,
    pub degenerate: bool,
}

impl BoundReport {
    fn new(quantity: Quantity, n: usize, d: usize, lower: f64, upper: f64, formulas: &[&str]) -> Self {
        Self {
            quantity,
            n,
            d,
            epsilon: None,
            lower,
            upper,
            lower_exact: None,
            upper_exact: None,
            formulas: formulas.iter().map(|s| s.to_string()).collect(),
            degenerate: false,
        }
    }
}

fn check_d(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    Ok(())
}

/// Bounds on the largest empty box volume guaranteed among any `n` points
/// in the unit `d`-cube.
pub fn bounds_ad(n: usize, d: usize) -> Result<BoundReport> {
    check_d(d)?;
    if n == 0 {
        return Ok(BoundReport::new(Quantity::Ad, n, d, 1.0, 1.0, &["no points: the whole cube"]));
    }
    let nf = n as f64;
    let lower = (1.0 / (nf + 1.0)).max(1.25 / (nf + 5.0));
    let (upper, f) = if d == 2 {
        (4.0 / nf, "upper = 4/n (van der Corput)")
    } else {
        let primes = PrimeList::first(d - 1);
        let c = 2f64.powi(d as i32 - 1) * primes.product() as f64;
        (c / nf, "upper = 2^(d-1) * p_1 * ... * p_(d-1) / n (Halton-Hammersley)")
    };
    Ok(BoundReport::new(Quantity::Ad, n, d, lower, upper, &["lower = max(1/(n+1), (5/4)/(n+5))", f]))
}

/// Largest `r` with `r^d <= n`.
pub fn iroot(n: u64, d: u32) -> u64 {
    if d == 1 || n < 2 {
        return n;
    }
    let fits = |r: u64| r.checked_pow(d).is_some_and(|p| p <= n);
    let mut r = (n as f64).powf(1.0 / d as f64).round() as u64;
    while r > 0 && !fits(r) {
        r -= 1;
    }
    while fits(r + 1) {
        r += 1;
    }
    r
}

/// Bounds on the largest empty hypercube volume guaranteed among any `n`
/// points in the unit `d`-cube.
pub fn bounds_aprime(n: usize, d: usize) -> Result<BoundReport> {
    check_d(d)?;
    let r = iroot(n as u64, d as u32);
    let root = if r.checked_pow(d as u32) == Some(n as u64) {
        r as f64
    } else {
        (n as f64).powf(1.0 / d as f64)
    };
    let lower = (root + 1.0).powi(-(d as i32));
    let upper = ((r + 1) as f64).powi(-(d as i32));
    Ok(BoundReport::new(
        Quantity::APrimeD,
        n,
        d,
        lower,
        upper,
        &["lower = (n^(1/d) + 1)^(-d)", "upper = (floor(n^(1/d)) + 1)^(-d)"],
    ))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn to_f64(x: &BigUint) -> f64 {
    x.to_string().parse().unwrap_or(f64::INFINITY)
}

/// Bounds on the number of maximal empty boxes of `n` points with distinct
/// coordinates: at least `(floor(n/d)+1)^d` for the worst configuration and
/// at most `C(n,d) C(2d,d)` for any.
pub fn restricted_count_bounds(n: usize, d: usize) -> Result<BoundReport> {
    check_d(d)?;
    let lower = BigUint::from(n / d + 1).pow(d as u32);
    let upper = binomial(n as u64, d as u64) * binomial(2 * d as u64, d as u64);
    let mut r = BoundReport::new(
        Quantity::RestrictedCount,
        n,
        d,
        to_f64(&lower),
        to_f64(&upper),
        &["lower = (floor(n/d) + 1)^d", "upper = C(n,d) * C(2d,d)"],
    );
    r.degenerate = n < d;
    r.lower_exact = Some(lower.to_string());
    r.upper_exact = Some(upper.to_string());
    Ok(r)
}

/// Work bounds of the box approximation for `n` points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgorithmCountBounds {
    pub n: usize,
    pub d: usize,
    pub epsilon: f64,
    pub k: usize,
    pub m: usize,
    /// `C(k+d, d)`, the exact bound on large canonical boxes.
    pub canonical_exact: String,
    pub canonical_exact_f64: f64,
    /// `(2e/eps)^d log2^d n`, only in the regime `n >= 12, d >= 3`.
    pub canonical_closed_form: Option<f64>,
    /// Anchors of the largest canonical grid, `ceil(m a^(k+1))^d`.
    pub placement_per_grid_exact: f64,
    /// `12 (2d/eps)^d n`, only in the regime `n >= 12, d >= 3`.
    pub placement_closed_form: Option<f64>,
    pub in_regime: bool,
}

impl AlgorithmCountBounds {
    pub fn reports(&self) -> [BoundReport; 2] {
        let mut canon = BoundReport::new(
            Quantity::CanonicalCount,
            self.n,
            self.d,
            0.0,
            self.canonical_closed_form
                .map_or(self.canonical_exact_f64, |c| c.min(self.canonical_exact_f64)),
            &["exact = C(k+d, d)", "closed form = (2e/eps)^d * log2(n)^d"],
        );
        canon.epsilon = Some(self.epsilon);
        canon.upper_exact = Some(self.canonical_exact.clone());
        canon.degenerate = !self.in_regime;
        let mut place = BoundReport::new(
            Quantity::PlacementCount,
            self.n,
            self.d,
            0.0,
            self.placement_closed_form
                .map_or(self.placement_per_grid_exact, |c| c.min(self.placement_per_grid_exact)),
            &["per grid = ceil(m a^(k+1))^d", "closed form = 12 (2d/eps)^d n"],
        );
        place.epsilon = Some(self.epsilon);
        place.degenerate = !self.in_regime;
        [canon, place]
    }
}

pub fn algorithm_count_bounds(n: usize, d: usize, epsilon: f64) -> Result<AlgorithmCountBounds> {
    check_d(d)?;
    let params = derive_params(n, d, epsilon, 0, false)?;
    let canonical = binomial((params.k + d) as u64, d as u64);
    let in_regime = n >= 12 && d >= 3;
    let df = d as i32;
    let per_axis = (params.m as f64 * params.a.powi(params.k as i32 + 1)).ceil();
    Ok(AlgorithmCountBounds {
        n,
        d,
        epsilon,
        k: params.k,
        m: params.m,
        canonical_exact_f64: to_f64(&canonical),
        canonical_exact: canonical.to_string(),
        canonical_closed_form: in_regime
            .then(|| (2.0 * std::f64::consts::E / epsilon).powi(df) * (n as f64).log2().powi(df)),
        placement_per_grid_exact: per_axis.powi(df),
        placement_closed_form: in_regime.then(|| 12.0 * (2.0 * d as f64 / epsilon).powi(df) * n as f64),
        in_regime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ad_examples() {
        let r = bounds_ad(15, 2).unwrap();
        assert_eq!(r.lower, 0.0625);
        assert_eq!(r.upper, 4.0 / 15.0);
        assert_eq!(bounds_ad(100, 2).unwrap().upper, 0.04);
        assert_eq!(bounds_ad(100, 3).unwrap().upper, 0.24);
        let r = bounds_ad(0, 3).unwrap();
        assert_eq!((r.lower, r.upper), (1.0, 1.0));
    }

    #[test]
    fn aprime_examples() {
        let r = bounds_aprime(9, 2).unwrap();
        assert_eq!((r.lower, r.upper), (1.0 / 16.0, 1.0 / 16.0));
        let r = bounds_aprime(8, 3).unwrap();
        assert_eq!((r.lower, r.upper), (1.0 / 27.0, 1.0 / 27.0));
        let r = bounds_aprime(10, 2).unwrap();
        assert!((r.lower - 1.0 / (10f64.sqrt() + 1.0).powi(2)).abs() < 1e-15);
        assert!((r.lower - 0.057721).abs() < 1e-6);
        assert_eq!(r.upper, 1.0 / 16.0);
    }

    #[test]
    fn integer_roots() {
        for d in 1..=6u32 {
            for n in 0..5000u64 {
                let r = iroot(n, d);
                assert!(r.pow(d) <= n && (r + 1).pow(d) > n);
            }
        }
        assert_eq!(iroot(u64::MAX, 2), u32::MAX as u64);
    }

    #[test]
    fn restricted_examples() {
        let r = restricted_count_bounds(4, 2).unwrap();
        assert_eq!((r.lower, r.upper), (9.0, 36.0));
        let r = restricted_count_bounds(7, 2).unwrap();
        assert_eq!((r.lower, r.upper), (16.0, 126.0));
        for d in 2..=6 {
            let r = restricted_count_bounds(d, d).unwrap();
            assert_eq!(r.lower, 2f64.powi(d as i32));
            assert_eq!(r.upper_exact.unwrap(), binomial(2 * d as u64, d as u64).to_string());
        }
        assert!(restricted_count_bounds(1, 2).unwrap().degenerate);
    }

    #[test]
    fn big_binomials_are_exact() {
        assert_eq!(binomial(64, 16).to_string(), "488526937079580");
        assert_eq!(binomial(64, 32).to_string(), "1832624140942590534");
        let r = restricted_count_bounds(64, 16).unwrap();
        assert_eq!(
            r.upper_exact.unwrap(),
            (binomial(64, 16) * binomial(32, 16)).to_string()
        );
    }

    #[test]
    fn algorithm_examples() {
        let b = algorithm_count_bounds(100, 3, 0.5).unwrap();
        let c = b.canonical_closed_form.unwrap();
        assert!((c - 3.78e5).abs() / 3.78e5 < 0.01, "{c}");
        assert_eq!(b.placement_closed_form.unwrap(), 2_073_600.0);
        assert_eq!(b.canonical_exact, binomial(b.k as u64 + 3, 3).to_string());
        let b = algorithm_count_bounds(5, 3, 0.5).unwrap();
        assert!(!b.in_regime && b.canonical_closed_form.is_none() && b.placement_closed_form.is_none());
    }
}
