use std::time::Instant;

use super::{
    derive_cube_params, finish, grid_search, resolve_strategy, sweep, with_threads, ApproxOptions, SearchResult,
    SearchStats, Strategy,
};
use crate::error::Result;
use crate::geometry::PointSet;

/// Approximate maximum empty hypercube in the unit cube: its volume is at
/// least `(1 - eps)` times the optimum. Only the `k` hypercubes of the
/// ladder are tried, largest first.
pub fn approx_max_empty_cube(points: &PointSet, opts: &ApproxOptions) -> Result<SearchResult> {
    let start = Instant::now();
    points.check_in_unit_cube()?;
    let points = points.interior_of_unit_cube();
    let params = derive_cube_params(points.len(), points.dim(), opts.epsilon, opts.seed, opts.jitter)?;
    let strategy = resolve_strategy(opts.strategy, &params);
    let (found, canonical, placements, max_per_box, max_cells) = with_threads(opts.threads, || -> Result<_> {
        match strategy {
            Strategy::Sweep => {
                let s = sweep::cube_search(&points, &params)?;
                Ok((s.found, s.tuples.len() as u64, s.boxes, 0, 0))
            }
            _ => {
                let ladder: Vec<Vec<usize>> = (0..params.k).rev().map(|y| vec![y; params.d]).collect();
                let groups: Vec<Vec<Vec<usize>>> = if strategy == Strategy::Exhaustive {
                    vec![ladder]
                } else {
                    ladder.into_iter().map(|y| vec![y]).collect()
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
