use maxempty::approx::{approx_max_empty_box, approx_max_empty_cube, ApproxOptions, SearchResult, Strategy};
use maxempty::pointgen::{halton_hammersley, uniform_random};
use maxempty::PointSet;
use proptest::prelude::*;

fn key(r: &SearchResult) -> (Vec<usize>, Vec<u64>, Vec<f64>, Vec<f64>) {
    (r.exponents.clone(), r.anchor.clone(), r.best_box.lo().to_vec(), r.best_box.hi().to_vec())
}

fn all_agree(p: &PointSet, eps: f64, seed: u64, jitter: bool) {
    let base = ApproxOptions::new(eps).seed(seed).jitter(jitter);
    let run = |s| approx_max_empty_box(p, &base.clone().strategy(s)).unwrap();
    let grid = run(Strategy::Grid);
    assert_eq!(key(&grid), key(&run(Strategy::Sweep)));
    assert_eq!(key(&grid), key(&run(Strategy::Exhaustive)));
    let run = |s| approx_max_empty_cube(p, &base.clone().strategy(s)).unwrap();
    let grid = run(Strategy::Grid);
    assert_eq!(key(&grid), key(&run(Strategy::Sweep)));
    assert_eq!(key(&grid), key(&run(Strategy::Exhaustive)));
}

#[test]
fn engines_agree_on_random_instances() {
    for d in 2..=3 {
        for n in [0, 1, 4, 8] {
            for seed in 0..4 {
                let p = uniform_random(n, d, 100 + seed).unwrap();
                all_agree(&p, 0.5, seed, true);
                all_agree(&p, 0.5, seed, false);
            }
        }
    }
}

#[test]
fn engines_agree_on_aligned_points() {
    // lattice points sit on many canonical grid hyperplanes
    let pts: Vec<Vec<f64>> = (1..4).flat_map(|i| (1..4).map(move |j| vec![i as f64 / 4.0, j as f64 / 4.0])).collect();
    let p = PointSet::new(2, pts).unwrap();
    for eps in [0.3, 0.5, 0.7] {
        all_agree(&p, eps, 0, false);
    }
    all_agree(&halton_hammersley(8, 3).unwrap(), 0.5, 0, false);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn engines_agree_2d(coords in prop::collection::vec((0.01f64..0.99, 0.01f64..0.99), 0..10), eps in 0.3f64..0.9, seed in 0u64..1000) {
        let p = PointSet::new(2, coords.into_iter().map(|(x, y)| vec![x, y]).collect()).unwrap();
        all_agree(&p, eps, seed, true);
    }
}
