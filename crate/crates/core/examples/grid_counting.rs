//! Bucket points into a grid and count every fixed-size window in one pass.

use maxempty::gridcount::{all_box_counts, cell_counts, corner_counts, GridSpec};
use maxempty::pointgen::uniform_random;

fn main() -> maxempty::Result<()> {
    let points = uniform_random(30, 2, 3)?;
    let grid = GridSpec::new(vec![0.125, 0.125])?;
    let windows = all_box_counts(&corner_counts(&cell_counts(&points, &grid)?)?, &[3, 3])?;
    let shape = windows.shape();
    println!("points per 3x3 window (rows are the second axis, top down):");
    for j in (0..shape[1]).rev() {
        let row: Vec<String> = (0..shape[0]).map(|i| format!("{:>2}", windows.get(&[i, j]))).collect();
        println!("  {}", row.join(" "));
    }
    let empty = windows.values().iter().filter(|&&c| c == 0).count();
    println!("{empty} of {} windows are empty", windows.len());
    Ok(())
}
