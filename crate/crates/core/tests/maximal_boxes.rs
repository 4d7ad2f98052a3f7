use maxempty::maximal::maximal_empty_boxes;
use maxempty::oracle::{enumerate_restricted_boxes, ScaleGuard};
use maxempty::pointgen::{embed_in_unit_cube, default_margin, restricted_lb_construction, uniform_random};
use maxempty::{OpenBox, PointSet};
use proptest::prelude::*;

fn agree(p: &PointSet, region: &OpenBox) {
    let sweep = maximal_empty_boxes(p, region).unwrap();
    let brute = enumerate_restricted_boxes(p, region, ScaleGuard::forced()).unwrap();
    assert_eq!(sweep, brute);
}

#[test]
fn random_instances_match_brute_force() {
    for d in 1..=3 {
        for n in [0, 1, 2, 5, 9] {
            for seed in 0..8 {
                agree(&uniform_random(n, d, seed).unwrap(), &OpenBox::unit(d));
            }
        }
    }
}

#[test]
fn lower_bound_constructions_match() {
    for counts in [vec![2, 2], vec![3, 3], vec![3, 4], vec![2, 2, 2]] {
        let raw = restricted_lb_construction(&counts).unwrap();
        let n: usize = counts.iter().sum();
        let p = embed_in_unit_cube(&raw, default_margin(n)).unwrap();
        agree(&p, &OpenBox::unit(counts.len()));
    }
}

#[test]
fn four_dimensional_instances_match() {
    for seed in 0..4 {
        agree(&uniform_random(5, 4, seed).unwrap(), &OpenBox::unit(4));
    }
}

fn coarse_points(d: usize) -> impl Strategy<Value = PointSet> {
    // values on a coarse lattice force shared coordinates
    prop::collection::vec(prop::collection::vec(1u8..8, d), 0..8)
        .prop_map(move |v| {
            let pts = v.into_iter().map(|p| p.into_iter().map(|x| x as f64 / 8.0).collect()).collect();
            PointSet::new(d, pts).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sweep_matches_brute_force_with_ties_2d(p in coarse_points(2)) {
        agree(&p, &OpenBox::unit(2));
    }

    #[test]
    fn sweep_matches_brute_force_with_ties_3d(p in coarse_points(3)) {
        agree(&p, &OpenBox::unit(3));
    }
}
