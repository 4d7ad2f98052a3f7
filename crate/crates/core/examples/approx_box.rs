//! Approximate the largest empty box among random points and compare with
//! the exact optimum where the brute-force oracle can still run.
//!
//! Usage: `cargo run --release --example approx_box -- [n] [d] [eps]`

use std::time::Instant;

use maxempty::approx::{approx_max_empty_box, ApproxOptions};
use maxempty::oracle::{exact_max_empty_box, ScaleGuard};
use maxempty::pointgen::uniform_random;

fn main() -> maxempty::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().and_then(|s| s.parse().ok()).unwrap_or(500);
    let d = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let eps = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.2);

    let points = uniform_random(n, d, 42)?;
    let start = Instant::now();
    let r = approx_max_empty_box(&points, &ApproxOptions::new(eps))?;
    println!("n = {n}, d = {d}, eps = {eps} (effective {:.4})", r.params.epsilon_effective);
    println!("box lo {:?}", r.best_box.lo());
    println!("    hi {:?}", r.best_box.hi());
    println!("volume {:.6} (n * volume = {:.3})", r.volume, r.volume * n as f64);
    println!(
        "{} strategy, k = {}, {} canonical boxes, {:.1} ms",
        format!("{:?}", r.stats.strategy).to_lowercase(),
        r.params.k,
        r.stats.canonical_boxes_enumerated,
        start.elapsed().as_secs_f64() * 1e3
    );

    let small = uniform_random(10, d, 42)?;
    let (_, exact) = exact_max_empty_box(&small, ScaleGuard::default())?;
    let approx = approx_max_empty_box(&small, &ApproxOptions::new(eps))?.volume;
    println!("on 10 points: approx {approx:.6} vs exact {exact:.6} (ratio {:.4})", approx / exact);
    Ok(())
}
