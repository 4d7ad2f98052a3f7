use maxempty::pointgen::uniform_random;
use maxempty::{normalize_to_unit, AffineTransform, OpenBox, PointSet};
use proptest::prelude::*;

fn region(d: usize) -> impl Strategy<Value = OpenBox> {
    (prop::collection::vec(-1e3f64..1e3, d), prop::collection::vec(1e-2f64..1e3, d))
        .prop_map(|(lo, w)| {
            let hi = lo.iter().zip(&w).map(|(l, w)| l + w).collect();
            OpenBox::new(lo, hi).unwrap()
        })
}

fn unit_box(d: usize) -> impl Strategy<Value = OpenBox> {
    (prop::collection::vec(0.0f64..0.9, d), prop::collection::vec(0.01f64..0.1, d))
        .prop_map(|(lo, w)| {
            let hi = lo.iter().zip(&w).map(|(l, w)| l + w).collect();
            OpenBox::new(lo, hi).unwrap()
        })
}

proptest! {
    #[test]
    fn inverse_volume_scales_with_region((r, b) in (1usize..=4).prop_flat_map(|d| (region(d), unit_box(d)))) {
        let t = AffineTransform::onto_unit(&r);
        let back = t.invert_box(&b).unwrap();
        let want = b.volume() * r.volume();
        prop_assert!((back.volume() - want).abs() <= 1e-10 * want);
        prop_assert!(back.volume() > 0.0);
    }

    #[test]
    fn round_trip_is_identity(r in (1usize..=4).prop_flat_map(region), seed in any::<u64>()) {
        let t = AffineTransform::onto_unit(&r);
        let d = r.dim();
        for p in uniform_random(20, d, seed).unwrap().iter() {
            let q = t.invert(p);
            let back = t.apply(&q);
            for i in 0..d {
                prop_assert!((back[i] - p[i]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn emptiness_is_scale_invariant((r, b) in (1usize..=3).prop_flat_map(|d| (region(d), unit_box(d))), seed in any::<u64>()) {
        let d = r.dim();
        let t = AffineTransform::onto_unit(&r);
        let unit_pts = uniform_random(30, d, seed).unwrap();
        let raw = PointSet::new(d, unit_pts.iter().map(|p| t.invert(p)).collect()).unwrap();
        let (norm, t2) = normalize_to_unit(&raw, &r).unwrap();
        let back = t2.invert_box(&b).unwrap();
        for (p, q) in norm.iter().zip(raw.iter()) {
            // skip points on the rounding edge of a face
            let margin = (0..d).all(|i| (p[i] - b.lo()[i]).abs() > 1e-9 && (p[i] - b.hi()[i]).abs() > 1e-9);
            if margin {
                prop_assert_eq!(b.contains_point_strict(p).unwrap(), back.contains_point_strict(q).unwrap());
            }
        }
    }
}

#[test]
fn invalid_boxes_and_points_are_rejected() {
    assert!(OpenBox::new(vec![0.5], vec![0.5]).is_err());
    assert!(OpenBox::new(vec![0.0, 0.0], vec![1.0]).is_err());
    assert!(OpenBox::new(vec![0.0], vec![f64::INFINITY]).is_err());
    assert!(PointSet::new(2, vec![vec![0.1]]).is_err());
    assert!(PointSet::new(1, vec![vec![f64::NAN]]).is_err());
    assert!(PointSet::new(0, vec![]).is_err());
    let r = OpenBox::new(vec![0.0, 0.0], vec![2.0, 2.0]).unwrap();
    let outside = PointSet::new(2, vec![vec![3.0, 1.0]]).unwrap();
    assert!(normalize_to_unit(&outside, &r).is_err());
}

#[test]
fn unit_box_volume() {
    assert_eq!(OpenBox::unit(2).volume(), 1.0);
    let b = OpenBox::new(vec![0.25, 0.5], vec![0.75, 1.0]).unwrap();
    assert_eq!(b.volume(), 0.25);
}
