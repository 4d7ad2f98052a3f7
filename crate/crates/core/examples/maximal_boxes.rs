//! Enumerate all maximal empty boxes, here for the construction that forces
//! many of them.

use maxempty::bounds::restricted_count_bounds;
use maxempty::maximal::maximal_empty_boxes;
use maxempty::pointgen::{default_margin, embed_in_unit_cube, restricted_lb_construction};
use maxempty::OpenBox;

fn main() -> maxempty::Result<()> {
    for counts in [vec![3, 4], vec![6, 6], vec![20, 20], vec![3, 3, 3], vec![6, 6, 6]] {
        let n: usize = counts.iter().sum();
        let d = counts.len();
        let points = embed_in_unit_cube(&restricted_lb_construction(&counts)?, default_margin(n))?;
        let boxes = maximal_empty_boxes(&points, &OpenBox::unit(d))?;
        let b = restricted_count_bounds(n, d)?;
        let largest = boxes.iter().map(OpenBox::volume).fold(0.0, f64::max);
        println!(
            "{counts:?}: {} maximal boxes (bounds {} to {}), largest {largest:.4}",
            boxes.len(),
            b.lower,
            b.upper
        );
    }
    Ok(())
}
