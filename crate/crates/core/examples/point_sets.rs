//! Low-discrepancy and extremal point sets, with their largest empty boxes.

use maxempty::oracle::{exact_max_empty_box, exact_max_empty_rect_2d, ScaleGuard};
use maxempty::pointgen::{halton_hammersley, known_tight_config, van_der_corput, TightConfig};

fn main() -> maxempty::Result<()> {
    println!("van der Corput, largest empty rectangle times n (stays below 4):");
    for n in [4, 16, 64, 256] {
        let (_, area) = exact_max_empty_rect_2d(&van_der_corput(n))?;
        println!("  n = {n:>3}: {:.4}", area * n as f64);
    }

    println!("Halton-Hammersley in 3D, largest empty box times n (stays below 24):");
    for n in [6, 9, 12] {
        let (_, v) = exact_max_empty_box(&halton_hammersley(n, 3)?, ScaleGuard::default())?;
        println!("  n = {n:>3}: {:.4}", v * n as f64);
    }

    for config in TightConfig::ALL {
        let (bx, v) = exact_max_empty_box(&known_tight_config(config), ScaleGuard::default())?;
        println!("{}: volume {v:.10}, box {:?} x {:?}", config.name(), bx.lo(), bx.hi());
    }
    Ok(())
}
