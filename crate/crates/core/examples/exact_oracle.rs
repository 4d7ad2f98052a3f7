//! Brute-force optima and their certificates.

use maxempty::oracle::{exact_max_empty_box, exact_max_empty_cube, is_maximal_empty, ScaleGuard};
use maxempty::pointgen::uniform_random;
use maxempty::{Error, OpenBox};

fn main() -> maxempty::Result<()> {
    let points = uniform_random(8, 3, 1)?;
    let (bx, v) = exact_max_empty_box(&points, ScaleGuard::default())?;
    println!("largest empty box: {v:.6}, maximal: {}", is_maximal_empty(&bx, &points, &OpenBox::unit(3))?);
    let (cube, c) = exact_max_empty_cube(&points, ScaleGuard::default())?;
    println!("largest empty cube: {c:.6}, side {:.6}", cube.side(0));

    let big = uniform_random(40, 3, 1)?;
    match exact_max_empty_box(&big, ScaleGuard::default()) {
        Err(e @ Error::ScaleGuard { .. }) => println!("40 points: {e}"),
        other => println!("40 points: {other:?}"),
    }
    Ok(())
}
