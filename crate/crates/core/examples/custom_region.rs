//! Points in an arbitrary axis-parallel region: normalize, solve in the
//! unit cube, map the answer back.

use maxempty::approx::{approx_max_empty_box, ApproxOptions};
use maxempty::{normalize_to_unit, OpenBox, PointSet};

fn main() -> maxempty::Result<()> {
    // parking lot in metres, with parked cars as points
    let region = OpenBox::new(vec![0.0, 0.0], vec![120.0, 45.0])?;
    let cars = PointSet::new(
        2,
        vec![
            vec![10.0, 5.0],
            vec![35.0, 20.0],
            vec![60.0, 40.0],
            vec![80.0, 12.0],
            vec![95.0, 30.0],
            vec![20.0, 35.0],
        ],
    )?;
    let (unit, transform) = normalize_to_unit(&cars, &region)?;
    let r = approx_max_empty_box(&unit, &ApproxOptions::new(0.05))?;
    let lot = transform.invert_box(&r.best_box)?;
    println!("largest free rectangle: {:?} to {:?}", lot.lo(), lot.hi());
    println!("area {:.1} m^2 of {:.1}", lot.volume(), region.volume());
    Ok(())
}
