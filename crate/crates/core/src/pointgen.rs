//! Point-set constructions: low-discrepancy sets, the restricted-box
//! lower-bound construction, interior grids, tight small configurations and
//! seeded uniform samples.

use std::fmt;
use std::str::FromStr;

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::PointSet;

/// The first `m` primes in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeList {
    primes: Vec<u64>,
}

impl PrimeList {
    /// Generates the first `m` primes by trial division against the primes
    /// already found.
    pub fn first(m: usize) -> Self {
        let mut primes: Vec<u64> = Vec::with_capacity(m);
        let mut candidate = 2u64;
        while primes.len() < m {
            if primes
                .iter()
                .take_while(|&&p| p * p <= candidate)
                .all(|&p| !candidate.is_multiple_of(p))
            {
                primes.push(candidate);
            }
            candidate += 1;
        }
        Self { primes }
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.primes
    }

    pub fn product(&self) -> u128 {
        self.primes.iter().map(|&p| p as u128).product()
    }
}

/// Mirrors the base-`base` digits of `k` across the radix point.
///
/// The digits are accumulated as an exact fraction `num / base^len` and
/// converted to a float once.
pub fn radical_inverse(mut k: u64, base: u64) -> f64 {
    debug_assert!(base >= 2);
    let base = base as u128;
    let mut num: u128 = 0;
    let mut den: u128 = 1;
    while k > 0 {
        let digit = (k as u128) % base;
        num = num * base + digit;
        den *= base;
        k /= base as u64;
    }
    num as f64 / den as f64
}

/// The planar van der Corput set: `(k/n, radical_inverse_2(k))`, `k = 0..n`.
pub fn van_der_corput(n: usize) -> PointSet {
    let coords = (0..n)
        .flat_map(|k| [k as f64 / n as f64, radical_inverse(k as u64, 2)])
        .collect();
    PointSet::from_flat(2, coords).expect("finite coordinates")
}

/// The Halton-Hammersley set in `d >= 2` dimensions: coordinate 0 is `k/n`
/// and coordinate `i` is the radical inverse of `k` in the `i`-th prime.
pub fn halton_hammersley(n: usize, d: usize) -> Result<PointSet> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let primes = PrimeList::first(d - 1);
    let mut coords = Vec::with_capacity(n * d);
    for k in 0..n {
        coords.push(k as f64 / n as f64);
        coords.extend(primes.as_slice().iter().map(|&p| radical_inverse(k as u64, p)));
    }
    PointSet::from_flat(d, coords)
}

/// Points `k e_i - (n_i + 1 - k) e_j`, `k = 1..=n_i`, for the cyclic axis
/// groups `{+e_i, -e_{i+1 mod d}}`. The output has at least
/// `prod (n_i - 1)` maximal empty boxes in `R^d`; `d = counts.len()`.
pub fn restricted_lb_construction(counts: &[usize]) -> Result<PointSet> {
    let d = counts.len();
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if let Some(&bad) = counts.iter().find(|&&c| c < 2) {
        return Err(Error::InvalidArgument(format!(
            "every group needs at least 2 points, got {bad}"
        )));
    }
    let mut coords = Vec::with_capacity(counts.iter().sum::<usize>() * d);
    for (i, &ni) in counts.iter().enumerate() {
        let j = (i + 1) % d;
        for k in 1..=ni {
            let mut p = vec![0.0; d];
            p[i] = k as f64;
            p[j] = -((ni + 1 - k) as f64);
            coords.extend(p);
        }
    }
    PointSet::from_flat(d, coords)
}

/// Default margin for [`embed_in_unit_cube`]: `1 / (2 (n + 1))`.
pub fn default_margin(n: usize) -> f64 {
    1.0 / (2.0 * (n as f64 + 1.0))
}

/// Maps `[min_i, max_i]` affinely onto `[margin, 1 - margin]` on every axis.
pub fn embed_in_unit_cube(points: &PointSet, margin: f64) -> Result<PointSet> {
    if !(margin > 0.0 && margin < 0.5) {
        return Err(Error::InvalidArgument(format!(
            "margin must lie in (0, 0.5), got {margin}"
        )));
    }
    let (lo, hi) = points
        .bounds()
        .ok_or_else(|| Error::InvalidArgument("cannot embed an empty point set".into()))?;
    if let Some(axis) = (0..points.dim()).find(|&i| hi[i] <= lo[i]) {
        return Err(Error::DegenerateRegion { axis });
    }
    let span = 1.0 - 2.0 * margin;
    let coords = points
        .iter()
        .flat_map(|p| {
            let (lo, hi) = (&lo, &hi);
            p.iter()
                .enumerate()
                .map(move |(i, &x)| margin + span * (x - lo[i]) / (hi[i] - lo[i]))
        })
        .collect();
    PointSet::from_flat(points.dim(), coords)
}

/// The `k^d` interior vertices `j / (k+1)`, `j = 1..=k`, of the uniform
/// `(k+1)^d` grid on the unit cube, in lexicographic order.
pub fn grid_vertices(k: usize, d: usize) -> Result<PointSet> {
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    let total = k.checked_pow(d as u32).ok_or_else(|| {
        Error::InvalidArgument(format!("k^d overflows for k={k}, d={d}"))
    })?;
    let step = (k + 1) as f64;
    let mut coords = Vec::with_capacity(total * d);
    let mut idx = vec![1usize; d];
    for _ in 0..total {
        coords.extend(idx.iter().map(|&j| j as f64 / step));
        for axis in (0..d).rev() {
            if idx[axis] < k {
                idx[axis] += 1;
                break;
            }
            idx[axis] = 1;
        }
    }
    PointSet::from_flat(d, coords)
}

/// Small configurations whose optimum is known in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TightConfig {
    /// `{(xi, 1-xi), (1-xi, xi)}` with `xi = (3 - sqrt 5) / 2`; optimum `xi`.
    TwoPointXi,
    /// `{(1/4,1/2), (1/2,1/4), (1/2,3/4), (3/4,1/2)}`; optimum `1/4`.
    FourPointQuarter,
}

impl TightConfig {
    pub const ALL: [TightConfig; 2] = [TightConfig::TwoPointXi, TightConfig::FourPointQuarter];

    pub fn name(self) -> &'static str {
        match self {
            TightConfig::TwoPointXi => "two_point_xi",
            TightConfig::FourPointQuarter => "four_point_quarter",
        }
    }
}

impl fmt::Display for TightConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TightConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TightConfig::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownConfig(s.to_string()))
    }
}

/// `(3 - sqrt 5) / 2`, the root in (0,1) of `(1-x)^2 = x`.
pub fn xi() -> f64 {
    (3.0 - 5f64.sqrt()) / 2.0
}

pub fn known_tight_config(config: TightConfig) -> PointSet {
    let pts = match config {
        TightConfig::TwoPointXi => {
            let x = xi();
            vec![vec![x, 1.0 - x], vec![1.0 - x, x]]
        }
        TightConfig::FourPointQuarter => vec![
            vec![0.25, 0.5],
            vec![0.5, 0.25],
            vec![0.5, 0.75],
            vec![0.75, 0.5],
        ],
    };
    PointSet::new(2, pts).expect("valid configuration")
}

/// `n` i.i.d. uniform points in the open cube `(0,1)^d`.
///
/// Generator: ChaCha8 seeded with `seed` through `seed_from_u64`; each
/// coordinate is one `Open01` draw, points emitted in order.
pub fn uniform_random(n: usize, d: usize, seed: u64) -> Result<PointSet> {
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n * d).map(|_| rng.sample::<f64, _>(Open01)).collect();
    PointSet::from_flat(d, coords)
}
