use maxempty::gridcount::{all_box_counts, box_count, cell_counts, corner_counts, floor_index, GridSpec};
use maxempty::pointgen::uniform_random;
use maxempty::PointSet;
use proptest::prelude::*;

fn naive(points: &PointSet, cells: &[f64], lower: &[usize], sizes: &[usize]) -> u64 {
    points
        .iter()
        .filter(|p| {
            (0..cells.len()).all(|i| {
                lower[i] as f64 * cells[i] <= p[i] && p[i] < (lower[i] + sizes[i]) as f64 * cells[i]
            })
        })
        .count() as u64
}

fn indices(shape: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &s in shape {
        out = out
            .into_iter()
            .flat_map(|p| (0..s).map(move |j| [p.clone(), vec![j]].concat()))
            .collect();
    }
    out
}

fn instance() -> impl Strategy<Value = (PointSet, Vec<f64>, Vec<usize>)> {
    (2usize..=4, 0usize..=50, any::<u64>())
        .prop_flat_map(|(d, n, seed)| {
            let limit = [0.0, 0.0, 30.0, 10.0, 6.0][d];
            (Just(uniform_random(n, d, seed).unwrap()), prop::collection::vec(1.0f64..limit, d))
        })
        .prop_flat_map(|(pts, inv)| {
            let cells: Vec<f64> = inv.iter().map(|x| 1.0 / x).collect();
            let extents = GridSpec::new(cells.clone()).unwrap().extents().to_vec();
            let sizes = extents.iter().map(|&e| 1..=e).collect::<Vec<_>>();
            (Just(pts), Just(cells), sizes)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn windows_match_naive_counts((pts, cells, sizes) in instance()) {
        let grid = GridSpec::new(cells.clone()).unwrap();
        let corner = corner_counts(&cell_counts(&pts, &grid).unwrap()).unwrap();
        let windows = all_box_counts(&corner, &sizes).unwrap();
        for idx in indices(windows.shape()) {
            let want = naive(&pts, &cells, &idx, &sizes);
            prop_assert_eq!(windows.get(&idx), want);
            prop_assert_eq!(box_count(&corner, &idx, &sizes).unwrap(), want);
        }
    }

    #[test]
    fn corner_counts_are_monotone((pts, cells, _s) in instance()) {
        let grid = GridSpec::new(cells).unwrap();
        let cellc = cell_counts(&pts, &grid).unwrap();
        prop_assert_eq!(cellc.values().iter().sum::<u64>(), pts.len() as u64);
        let corner = corner_counts(&cellc).unwrap();
        let shape = corner.shape().to_vec();
        for idx in indices(&shape) {
            for axis in 0..shape.len() {
                if idx[axis] + 1 < shape[axis] {
                    let mut next = idx.clone();
                    next[axis] += 1;
                    prop_assert!(corner.get(&idx) <= corner.get(&next));
                }
            }
        }
        let top: Vec<usize> = shape.iter().map(|s| s - 1).collect();
        prop_assert_eq!(corner.get(&top), pts.len() as u64);
    }

    #[test]
    fn floor_index_brackets(x in 0.0f64..1.0, inv in 1.0f64..1000.0) {
        let c = 1.0 / inv;
        let j = floor_index(x, c);
        prop_assert!(j as f64 * c <= x);
        prop_assert!(x < (j + 1) as f64 * c);
    }
}

#[test]
fn grid_extents_cover_the_cube() {
    for inv in [1.0, 2.0, 3.0, 7.5, 10.0, 12.0 / 11.0] {
        let g = GridSpec::new(vec![1.0 / inv; 2]).unwrap();
        let e = g.extents()[0];
        assert_eq!(e, inv.ceil() as usize);
        assert_eq!(g.total_cells(), (e * e) as u64);
    }
    assert!(GridSpec::new(vec![0.0, 0.5]).is_err());
}
