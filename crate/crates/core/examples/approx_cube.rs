//! Approximate the largest empty hypercube.

use maxempty::approx::{approx_max_empty_cube, ApproxOptions};
use maxempty::oracle::{exact_max_empty_cube, ScaleGuard};
use maxempty::pointgen::{grid_vertices, uniform_random};

fn main() -> maxempty::Result<()> {
    // the k x k interior grid leaves no empty square wider than 1/(k+1)
    for k in 1..=4 {
        let points = grid_vertices(k, 2)?;
        let r = approx_max_empty_cube(&points, &ApproxOptions::new(0.1))?;
        println!("grid k = {k}: side {:.4}, optimum {:.4}", r.best_box.side(0), 1.0 / (k + 1) as f64);
    }

    let points = uniform_random(12, 3, 7)?;
    let (_, exact) = exact_max_empty_cube(&points, ScaleGuard::default())?;
    for eps in [0.5, 0.25, 0.1] {
        let r = approx_max_empty_cube(&points, &ApproxOptions::new(eps))?;
        println!("random 3D, eps = {eps}: {:.6} of optimum {exact:.6}", r.volume);
    }
    Ok(())
}
