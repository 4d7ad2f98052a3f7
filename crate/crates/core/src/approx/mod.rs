//! The (1-eps)-approximation for the maximum empty box and hypercube.
//!
//! Candidate boxes have side lengths from a geometric ladder and are placed
//! only at anchors of a grid whose cells are the sides divided by `m`. Two
//! interchangeable engines decide which placements are empty:
//!
//! * [`Strategy::Grid`] counts points per grid window through corner counts,
//!   visiting canonical boxes in decreasing volume and stopping at the first
//!   volume level that has an empty placement.
//! * [`Strategy::Sweep`] enumerates the maximal empty boxes of the input once
//!   and reads off, for each, the canonical boxes and anchors it can host.
//!
//! Both return the same box: maximum volume, then smallest exponent tuple,
//! then smallest anchor.

mod cube;
mod params;
mod sweep;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{OpenBox, PointSet};
use crate::gridcount::{all_box_counts, cell_counts, corner_counts, floor_index, GridSpec};

pub use cube::approx_max_empty_cube;
pub use params::{
    count_large_exponents, derive_cube_params, derive_params, enumerate_large_exponents, large_exponents, ApproxParams,
    LargeExponents, Mode,
};

/// Engine used to find empty placements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Grid when the estimated dense work is small, Sweep otherwise.
    #[default]
    Auto,
    Grid,
    /// Grid over every large canonical box, without volume pruning.
    Exhaustive,
    Sweep,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "grid" => Ok(Self::Grid),
            "exhaustive" => Ok(Self::Exhaustive),
            "sweep" => Ok(Self::Sweep),
            _ => Err(Error::InvalidArgument(format!("unknown strategy `{s}`"))),
        }
    }
}

/// Dense-work estimate above which `Auto` switches to the sweep.
pub const AUTO_GRID_BUDGET: f64 = 5e7;

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxOptions {
    pub epsilon: f64,
    pub seed: u64,
    pub jitter: bool,
    pub strategy: Strategy,
    pub threads: Option<usize>,
}

impl ApproxOptions {
    pub fn new(epsilon: f64) -> Self {
        Self {
            epsilon,
            seed: 0,
            jitter: true,
            strategy: Strategy::Auto,
            threads: None,
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn jitter(mut self, jitter: bool) -> Self {
        self.jitter = jitter;
        self
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchStats {
    /// Canonical boxes examined. For the sweep, the distinct large tuples
    /// some maximal box can host.
    pub canonical_boxes_enumerated: u64,
    /// Grid anchors evaluated, or maximal boxes examined by the sweep.
    pub placements_tested: u64,
    /// Largest number of anchors of a single canonical grid (grid engines).
    pub max_placements_per_box: u64,
    /// Largest canonical grid built, in cells (grid engines).
    pub max_grid_cells: u64,
    pub strategy: Strategy,
    pub seed: u64,
    pub epsilon_effective: f64,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub best_box: OpenBox,
    pub volume: f64,
    pub exponents: Vec<usize>,
    pub anchor: Vec<u64>,
    pub params: ApproxParams,
    pub stats: SearchStats,
}

/// Outcome of scanning one canonical grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalSearch {
    /// Smallest empty anchor and its box.
    pub placement: Option<(Vec<u64>, OpenBox)>,
    pub placements_tested: u64,
    pub grid_cells: u64,
}

/// Largest anchor index `j` with `(j + m) * c <= 1`, if any.
fn last_anchor(c: f64, m: usize) -> Option<u64> {
    floor_index(1.0, c).checked_sub(m as u64)
}

/// Box of the canonical tuple `y` at grid anchor `anchor`.
pub(crate) fn placement_box(params: &ApproxParams, y: &[usize], anchor: &[u64]) -> OpenBox {
    let m = params.m as u64;
    let mut lo = Vec::with_capacity(y.len());
    let mut hi = Vec::with_capacity(y.len());
    for (&yi, &j) in y.iter().zip(anchor) {
        let c = params.cell(yi);
        lo.push(j as f64 * c);
        hi.push((j + m) as f64 * c);
    }
    if params.mode == Mode::Cube {
        // equal sides, shrunk to the tightest window so the box stays inside it
        let s = lo.iter().zip(&hi).map(|(l, h)| h - l).fold(f64::INFINITY, f64::min);
        for (h, l) in hi.iter_mut().zip(&lo) {
            *h = l + s;
        }
    }
    OpenBox::new(lo, hi).expect("canonical boxes are nondegenerate")
}

/// Scans the canonical grid of exponent tuple `y`: counts points in every
/// `m x ... x m` window and returns the lexicographically smallest anchor of
/// an empty window whose box fits in the unit cube.
pub fn search_canonical_box(points: &PointSet, y: &[usize], params: &ApproxParams) -> Result<CanonicalSearch> {
    if y.len() != params.d || points.dim() != params.d {
        return Err(Error::DimensionMismatch {
            expected: params.d,
            found: if y.len() != params.d { y.len() } else { points.dim() },
        });
    }
    if let Some(&bad) = y.iter().find(|&&yi| yi >= params.k) {
        return Err(Error::InvalidArgument(format!("exponent {bad} outside 0..{}", params.k)));
    }
    let points = points.interior_of_unit_cube();
    let cells: Vec<f64> = y.iter().map(|&yi| params.cell(yi)).collect();
    let last: Option<Vec<u64>> = cells.iter().map(|&c| last_anchor(c, params.m)).collect();
    let grid = GridSpec::new(cells)?;
    let grid_cells = grid.total_cells();
    let Some(last) = last else {
        return Ok(CanonicalSearch {
            placement: None,
            placements_tested: 0,
            grid_cells,
        });
    };
    let placements_tested = last.iter().map(|&j| j + 1).product();
    let corner = corner_counts(&cell_counts(&points, &grid)?)?;
    let windows = all_box_counts(&corner, &vec![params.m; params.d])?;

    // lexicographic scan over anchors 0..=last
    let mut idx = vec![0usize; params.d];
    let placement = loop {
        if windows.get(&idx) == 0 {
            let anchor: Vec<u64> = idx.iter().map(|&j| j as u64).collect();
            let bx = placement_box(params, y, &anchor);
            break Some((anchor, bx));
        }
        let Some(pos) = (0..params.d).rposition(|i| (idx[i] as u64) < last[i]) else {
            break None;
        };
        idx[pos] += 1;
        idx[pos + 1..].iter_mut().for_each(|j| *j = 0);
    };
    Ok(CanonicalSearch {
        placement,
        placements_tested,
        grid_cells,
    })
}

/// Runs `f` on a pool with `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

pub(crate) struct Found {
    pub(crate) exponents: Vec<usize>,
    pub(crate) anchor: Vec<u64>,
    pub(crate) bx: OpenBox,
}

struct GridTally {
    found: Option<Found>,
    canonical: u64,
    placements: u64,
    max_per_box: u64,
    max_cells: u64,
}

impl GridTally {
    fn new() -> Self {
        Self {
            found: None,
            canonical: 0,
            placements: 0,
            max_per_box: 0,
            max_cells: 0,
        }
    }

    fn add(&mut self, y: &[usize], r: CanonicalSearch) {
        self.canonical += 1;
        self.placements += r.placements_tested;
        self.max_per_box = self.max_per_box.max(r.placements_tested);
        self.max_cells = self.max_cells.max(r.grid_cells);
        let sum = |t: &[usize]| t.iter().sum::<usize>();
        // strictly larger volume only, so the first tuple of a level wins
        if self.found.as_ref().is_none_or(|f| sum(y) > sum(&f.exponents)) {
            if let Some((anchor, bx)) = r.placement {
                self.found = Some(Found {
                    exponents: y.to_vec(),
                    anchor,
                    bx,
                });
            }
        }
    }
}

/// Searches tuples in the given order; with `prune`, stops after the first
/// group containing an empty placement. Groups are searched in parallel in
/// chunks, and only results up to the first hit are tallied.
fn grid_search(points: &PointSet, params: &ApproxParams, groups: &[Vec<Vec<usize>>], prune: bool) -> Result<GridTally> {
    let mut tally = GridTally::new();
    let chunk = 4 * rayon::current_num_threads();
    for group in groups {
        for tuples in group.chunks(chunk) {
            let results: Vec<Result<CanonicalSearch>> =
                tuples.par_iter().map(|y| search_canonical_box(points, y, params)).collect();
            for (y, r) in tuples.iter().zip(results) {
                tally.add(y, r?);
                if prune && tally.found.is_some() {
                    return Ok(tally);
                }
            }
        }
    }
    Ok(tally)
}

/// Estimated dense-grid work: tuples times the cells of the largest grid.
fn grid_work_estimate(params: &ApproxParams) -> f64 {
    let cells_per_axis = (params.m as f64 * params.a.powi(params.k as i32 + 1)).ceil() + 1.0;
    let tuples = match params.mode {
        Mode::Box => count_large_exponents(params.k, params.d) as f64,
        Mode::Cube => params.k as f64,
    };
    tuples * cells_per_axis.powi(params.d as i32)
}

pub(crate) fn resolve_strategy(strategy: Strategy, params: &ApproxParams) -> Strategy {
    match strategy {
        Strategy::Auto if grid_work_estimate(params) <= AUTO_GRID_BUDGET => Strategy::Grid,
        Strategy::Auto => Strategy::Sweep,
        s => s,
    }
}

fn finish(found: Option<Found>, params: ApproxParams, stats: SearchStats) -> Result<SearchResult> {
    let found = found.ok_or(Error::NoPlacement)?;
    Ok(SearchResult {
        volume: found.bx.volume(),
        best_box: found.bx,
        exponents: found.exponents,
        anchor: found.anchor,
        params,
        stats,
    })
}

/// Approximate maximum empty box in the unit cube: its volume is at least
/// `(1 - eps)` times the optimum. Points on the cube boundary are ignored.
pub fn approx_max_empty_box(points: &PointSet, opts: &ApproxOptions) -> Result<SearchResult> {
    let start = Instant::now();
    points.check_in_unit_cube()?;
    let points = points.interior_of_unit_cube();
    let params = derive_params(points.len(), points.dim(), opts.epsilon, opts.seed, opts.jitter)?;
    let strategy = resolve_strategy(opts.strategy, &params);
    let (found, canonical, placements, max_per_box, max_cells) = with_threads(opts.threads, || -> Result<_> {
        match strategy {
            Strategy::Sweep => {
                let s = sweep::box_search(&points, &params)?;
                Ok((s.found, s.tuples.len() as u64, s.boxes, 0, 0))
            }
            _ => {
                let top = params.d * (params.k - 1);
                let bottom = params.min_sum().max(0) as usize;
                let groups: Vec<Vec<Vec<usize>>> = if strategy == Strategy::Exhaustive {
                    vec![enumerate_large_exponents(&params).collect()]
                } else {
                    (bottom..=top).rev().map(|s| params::level_tuples(params.d, params.k, s)).collect()
                };
                let t = grid_search(&points, &params, &groups, strategy != Strategy::Exhaustive)?;
                Ok((t.found, t.canonical, t.placements, t.max_per_box, t.max_cells))
            }
        }
    })??;
    let stats = SearchStats {
        canonical_boxes_enumerated: canonical,
        placements_tested: placements,
        max_placements_per_box: max_per_box,
        max_grid_cells: max_cells,
        strategy,
        seed: opts.seed,
        epsilon_effective: params.epsilon_effective,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    finish(found, params, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointgen::{known_tight_config, xi, TightConfig};

    fn opts(eps: f64) -> ApproxOptions {
        ApproxOptions::new(eps).jitter(false)
    }

    #[test]
    fn empty_instance() {
        for s in [Strategy::Grid, Strategy::Sweep, Strategy::Exhaustive] {
            let r = approx_max_empty_box(&PointSet::empty(2), &opts(0.5).strategy(s)).unwrap();
            assert!(r.volume >= 0.5, "{s:?} {}", r.volume);
        }
    }

    #[test]
    fn single_center_point() {
        let p = PointSet::new(2, vec![vec![0.5, 0.5]]).unwrap();
        let r = approx_max_empty_box(&p, &ApproxOptions::new(0.25)).unwrap();
        assert!(r.volume >= 0.375 && r.volume <= 0.5);
        assert!(r.best_box.is_empty_of(&p).unwrap());
    }

    #[test]
    fn two_point_xi() {
        let p = known_tight_config(TightConfig::TwoPointXi);
        let r = approx_max_empty_box(&p, &ApproxOptions::new(0.1)).unwrap();
        assert!(r.volume >= 0.9 * xi());
        assert!(r.volume <= xi() + 1e-12);
    }

    #[test]
    fn search_on_empty_set_anchors_at_origin() {
        let params = derive_params(3, 2, 0.5, 0, false).unwrap();
        let r = search_canonical_box(&PointSet::empty(2), &[1, 2], &params).unwrap();
        let (anchor, bx) = r.placement.unwrap();
        assert_eq!(anchor, vec![0, 0]);
        assert_eq!(bx.lo(), &[0.0, 0.0]);
    }

    #[test]
    fn search_with_center_point_finds_quadrant() {
        let params = derive_params(1, 2, 0.5, 0, false).unwrap();
        let p = PointSet::new(2, vec![vec![0.5, 0.5]]).unwrap();
        let y = (0..params.k).rev().find(|&y| params.side(y) < 0.5).unwrap();
        let r = search_canonical_box(&p, &[y, y], &params).unwrap();
        assert!(r.placement.unwrap().1.is_empty_of(&p).unwrap());
    }

    #[test]
    fn search_on_saturated_grid_finds_nothing() {
        let params = derive_params(400, 2, 0.5, 0, false).unwrap();
        let pts: Vec<Vec<f64>> = (1..40)
            .flat_map(|i| (1..40).map(move |j| vec![i as f64 / 40.0, j as f64 / 40.0]))
            .collect();
        let p = PointSet::new(2, pts).unwrap();
        let y = params.k - 1;
        let r = search_canonical_box(&p, &[y, y], &params).unwrap();
        assert!(r.placement.is_none());
        assert!(r.placements_tested > 0);
    }

    #[test]
    fn boundary_points_are_ignored() {
        let p = PointSet::new(2, vec![vec![0.0, 0.5], vec![1.0, 1.0]]).unwrap();
        let r = approx_max_empty_box(&p, &opts(0.5)).unwrap();
        assert_eq!(r.params.n, 0);
        assert!(r.volume >= 0.5);
    }
}
