//! Guaranteed empty volumes and work bounds for a few sizes.

use maxempty::bounds::{algorithm_count_bounds, bounds_ad, bounds_aprime, restricted_count_bounds};

fn main() -> maxempty::Result<()> {
    println!("{:>6} {:>2} {:>12} {:>12} {:>12} {:>12}", "n", "d", "box lo", "box hi", "cube lo", "cube hi");
    for d in [2, 3, 4] {
        for n in [10, 100, 1000] {
            let b = bounds_ad(n, d)?;
            let c = bounds_aprime(n, d)?;
            println!("{n:>6} {d:>2} {:>12.3e} {:>12.3e} {:>12.3e} {:>12.3e}", b.lower, b.upper, c.lower, c.upper);
        }
    }
    let r = restricted_count_bounds(12, 3)?;
    println!("maximal empty boxes of 12 points in 3D: between {} and {}", r.lower_exact.unwrap(), r.upper_exact.unwrap());
    let w = algorithm_count_bounds(1000, 3, 0.25)?;
    println!(
        "n = 1000, d = 3, eps = 0.25: k = {}, at most {} canonical boxes, at most {:.3e} placements per grid",
        w.k,
        w.canonical_exact,
        w.placement_closed_form.unwrap_or(w.placement_per_grid_exact)
    );
    Ok(())
}
