use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Which search the parameters were derived for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Box,
    Cube,
}

/// Parameter bundle of the approximation: `delta = eps/(2d)`,
/// `m = ceil(1/delta)`, `a = 1/(1-delta)`, the ladder size `k` and the
/// ladder `X_i = a^(i-k-1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxParams {
    pub mode: Mode,
    pub n: usize,
    pub d: usize,
    pub epsilon: f64,
    pub epsilon_effective: f64,
    pub delta: f64,
    pub m: usize,
    pub a: f64,
    pub k: usize,
    pub ladder: Vec<f64>,
    pub seed: u64,
    pub jitter: bool,
}

impl ApproxParams {
    /// Side length of exponent `y`.
    pub fn side(&self, y: usize) -> f64 {
        self.ladder[y]
    }

    /// Canonical grid cell length for exponent `y`.
    pub fn cell(&self, y: usize) -> f64 {
        self.ladder[y] / self.m as f64
    }

    /// Smallest admissible exponent sum, `dk - k - d`.
    pub fn min_sum(&self) -> i64 {
        (self.d * self.k) as i64 - self.k as i64 - self.d as i64
    }

    /// Largest exponent whose side could fit in an interval of length
    /// `len`, with a little slack for rounding.
    pub(crate) fn top_exponent_fitting(&self, len: f64) -> Option<usize> {
        self.ladder.partition_point(|&x| x <= len * (1.0 + 1e-9)).checked_sub(1)
    }
}

/// Parameters for the box search; `k` satisfies `a^(k-1) <= n+1 < a^k`.
pub fn derive_params(n: usize, d: usize, epsilon: f64, seed: u64, jitter: bool) -> Result<ApproxParams> {
    derive(Mode::Box, n, d, epsilon, seed, jitter, (n + 1) as f64)
}

/// Parameters for the hypercube search; `k` satisfies
/// `a^(k-1) <= n^(1/d)+1 < a^k`.
pub fn derive_cube_params(n: usize, d: usize, epsilon: f64, seed: u64, jitter: bool) -> Result<ApproxParams> {
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    derive(Mode::Cube, n, d, epsilon, seed, jitter, nth_root(n, d) + 1.0)
}

fn nth_root(n: usize, d: usize) -> f64 {
    let r = (n as f64).powf(1.0 / d as f64);
    let rounded = r.round();
    if (rounded as u128).checked_pow(d as u32) == Some(n as u128) {
        rounded
    } else {
        r
    }
}

fn derive(mode: Mode, n: usize, d: usize, epsilon: f64, seed: u64, jitter: bool, target: f64) -> Result<ApproxParams> {
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    let epsilon_effective = if jitter {
        let lo = (1.0 - 1.0 / (2 * d) as f64) * epsilon;
        ChaCha8Rng::seed_from_u64(seed).gen_range(lo..=epsilon)
    } else {
        epsilon
    };
    let delta = epsilon_effective / (2 * d) as f64;
    let m = (1.0 / delta).ceil() as usize;
    let a = 1.0 / (1.0 - delta);

    let mut k = ((target.ln() / a.ln()).floor() as i64 + 1).max(1) as i32;
    while k > 1 && a.powi(k - 1) > target {
        k -= 1;
    }
    while a.powi(k) <= target {
        k += 1;
    }
    let k = k as usize;
    let ladder = (0..k).map(|i| a.powi(i as i32 - k as i32 - 1)).collect();
    Ok(ApproxParams {
        mode,
        n,
        d,
        epsilon,
        epsilon_effective,
        delta,
        m,
        a,
        k,
        ladder,
        seed,
        jitter,
    })
}

/// Exponent tuples in `{0..k-1}^d` with sum at least `dk - k - d`, in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct LargeExponents {
    k: usize,
    min_sum: i64,
    next: Option<Vec<usize>>,
}

impl Iterator for LargeExponents {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.next.take()?;
        let mut cur = out.clone();
        self.next = loop {
            // odometer step, last axis fastest
            let Some(pos) = cur.iter().rposition(|&y| y + 1 < self.k) else {
                break None;
            };
            cur[pos] += 1;
            for y in &mut cur[pos + 1..] {
                *y = 0;
            }
            let s: usize = cur.iter().sum();
            let deficit = self.min_sum - s as i64;
            if deficit <= 0 {
                break Some(cur);
            }
            // jump: raise the trailing coordinates just enough
            let mut need = deficit as usize;
            for y in cur[pos + 1..].iter_mut().rev() {
                let add = need.min(self.k - 1 - *y);
                *y += add;
                need -= add;
            }
            if need == 0 {
                break Some(cur);
            }
            for y in &mut cur[pos + 1..] {
                *y = self.k - 1;
            }
        };
        Some(out)
    }
}

pub fn enumerate_large_exponents(params: &ApproxParams) -> LargeExponents {
    large_exponents(params.k, params.d)
}

pub fn large_exponents(k: usize, d: usize) -> LargeExponents {
    let min_sum = (d * k) as i64 - k as i64 - d as i64;
    let mut first = vec![0usize; d];
    let mut need = min_sum.max(0) as usize;
    for y in first.iter_mut().rev() {
        let add = need.min(k - 1);
        *y = add;
        need -= add;
    }
    LargeExponents {
        k,
        min_sum,
        next: if need == 0 && k > 0 { Some(first) } else { None },
    }
}

/// Number of large exponent tuples, by counting sums.
pub fn count_large_exponents(k: usize, d: usize) -> u128 {
    let max = d * (k - 1);
    let mut ways = vec![0u128; max + 1];
    ways[0] = 1;
    for _ in 0..d {
        let mut next = vec![0u128; max + 1];
        for (s, &w) in ways.iter().enumerate().filter(|(_, &w)| w > 0) {
            for y in 0..k {
                if s + y <= max {
                    next[s + y] += w;
                }
            }
        }
        ways = next;
    }
    let min_sum = ((d * k) as i64 - k as i64 - d as i64).max(0) as usize;
    ways[min_sum.min(max + 1)..].iter().sum()
}

/// Tuples in `{0..k-1}^d` with sum exactly `s`, lexicographic.
pub(crate) fn level_tuples(d: usize, k: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, k: usize, s: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let rest = d - prefix.len();
        if rest == 1 {
            if s < k {
                prefix.push(s);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        let lo = s.saturating_sub((rest - 1) * (k - 1));
        for y in lo..=s.min(k - 1) {
            prefix.push(y);
            rec(d, k, s - y, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 && k > 0 && s <= d * (k - 1) {
        rec(d, k, s, &mut Vec::with_capacity(d), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derive_n15_d3() {
        let p = derive_params(15, 3, 0.5, 0, false).unwrap();
        assert_eq!(p.delta, 0.5 / 6.0);
        assert_eq!(p.m, 12);
        assert!((p.a - 12.0 / 11.0).abs() < 1e-15);
        assert_eq!(p.k, 32);
        assert!(p.a.powi(31) <= 16.0 && 16.0 < p.a.powi(32));
    }

    #[test]
    fn derive_empty_instance() {
        assert_eq!(derive_params(0, 2, 0.5, 0, false).unwrap().k, 1);
        assert_eq!(derive_cube_params(0, 2, 0.5, 0, false).unwrap().k, 1);
    }

    #[test]
    fn derive_cube_n15_d3() {
        let p = derive_cube_params(15, 3, 0.5, 0, false).unwrap();
        assert_eq!(p.k, 15);
        assert_eq!(p.mode, Mode::Cube);
    }

    #[test]
    fn jitter_range_and_determinism() {
        for seed in 0..50 {
            let p = derive_params(10, 3, 0.5, seed, true).unwrap();
            assert!((5.0 / 12.0..=0.5).contains(&p.epsilon_effective));
            assert_eq!(p, derive_params(10, 3, 0.5, seed, true).unwrap());
        }
        let a = derive_params(10, 3, 0.5, 1, true).unwrap();
        let b = derive_params(10, 3, 0.5, 2, true).unwrap();
        assert_ne!(a.epsilon_effective, b.epsilon_effective);
    }

    #[test]
    fn rejects_bad_epsilon() {
        for e in [0.0, 1.0, -0.5, f64::NAN, 2.0] {
            assert!(matches!(derive_params(3, 2, e, 0, false), Err(Error::InvalidEpsilon(_))));
        }
    }

    #[test]
    fn ladder_is_increasing_and_inside_unit_interval() {
        let p = derive_params(100, 3, 0.25, 0, false).unwrap();
        assert_eq!(p.ladder.len(), p.k);
        assert!(p.ladder.windows(2).all(|w| w[0] < w[1]));
        assert!(p.ladder[0] > 0.0 && p.ladder[p.k - 1] < 1.0);
        assert!(p.a > 1.0 && p.a <= 1.2);
    }

    #[test]
    fn exponent_examples() {
        let v: Vec<_> = large_exponents(3, 2).collect();
        assert_eq!(v.len(), 8);
        assert!(!v.contains(&vec![0, 0]));
        let v: Vec<_> = large_exponents(2, 3).collect();
        assert_eq!(v.len(), 7);
        assert!(!v.contains(&vec![0, 0, 0]));
        let v: Vec<_> = large_exponents(1, 4).collect();
        assert_eq!(v, vec![vec![0; 4]]);
    }

    #[test]
    fn exponents_match_filter_and_count() {
        for d in 1..=4 {
            for k in 1..=7 {
                let got: Vec<_> = large_exponents(k, d).collect();
                let min = (d * k) as i64 - k as i64 - d as i64;
                let mut want = Vec::new();
                let mut cur = vec![0usize; d];
                'outer: loop {
                    if cur.iter().sum::<usize>() as i64 >= min {
                        want.push(cur.clone());
                    }
                    for pos in (0..d).rev() {
                        if cur[pos] + 1 < k {
                            cur[pos] += 1;
                            cur[pos + 1..].iter_mut().for_each(|y| *y = 0);
                            continue 'outer;
                        }
                    }
                    break;
                }
                assert_eq!(got, want, "k={k} d={d}");
                assert_eq!(count_large_exponents(k, d), want.len() as u128);
                let mut by_level: Vec<_> = (0..=d * (k - 1))
                    .rev()
                    .filter(|&s| s as i64 >= min)
                    .flat_map(|s| level_tuples(d, k, s))
                    .collect();
                assert_eq!(by_level.len(), want.len());
                by_level.sort();
                assert_eq!(by_level, want);
            }
        }
    }
}
