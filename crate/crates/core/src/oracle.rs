//! Exact brute-force references for small inputs.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{OpenBox, PointSet};
use crate::maximal::cmp_boxes;

/// Sorted, deduplicated candidate face coordinates per axis: the region
/// bounds plus every point coordinate that lies within them.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateCoordinateSets {
    axes: Vec<Vec<f64>>,
}

impl CandidateCoordinateSets {
    pub fn new(points: &PointSet, region: &OpenBox) -> Result<Self> {
        check_dim(points, region.dim())?;
        let axes = (0..region.dim())
            .map(|i| {
                let (lo, hi) = (region.lo()[i], region.hi()[i]);
                let mut v: Vec<f64> = points.iter().map(|p| p[i]).filter(|&x| lo <= x && x <= hi).collect();
                v.push(lo);
                v.push(hi);
                v.sort_by(f64::total_cmp);
                v.dedup();
                v
            })
            .collect();
        Ok(Self { axes })
    }

    pub fn unit(points: &PointSet) -> Result<Self> {
        Self::new(points, &OpenBox::unit(points.dim()))
    }

    pub fn axis(&self, i: usize) -> &[f64] {
        &self.axes[i]
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }
}

/// Size limits for the brute-force routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScaleGuard {
    pub force: bool,
}

impl ScaleGuard {
    pub fn forced() -> Self {
        Self { force: true }
    }

    /// Largest `n` accepted without forcing.
    pub fn limit(d: usize) -> usize {
        match d {
            0..=3 => 12,
            4 => 6,
            _ => 3,
        }
    }

    pub fn check(&self, n: usize, d: usize) -> Result<()> {
        let limit = Self::limit(d);
        if n > limit && !self.force {
            return Err(Error::ScaleGuard { n, d, limit });
        }
        Ok(())
    }

    /// Rough number of elementary steps of the full enumeration,
    /// `(n+2)^(2d) * n`.
    pub fn cost_estimate(n: usize, d: usize) -> f64 {
        ((n + 2) as f64).powi(2 * d as i32) * (n.max(1) as f64)
    }
}

fn check_dim(points: &PointSet, d: usize) -> Result<()> {
    if points.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: points.dim(),
        });
    }
    Ok(())
}

#[derive(Clone)]
struct Best {
    bx: OpenBox,
    score: f64,
}

/// Higher score wins, then the lexicographically smaller box.
fn better(a: Best, b: Best) -> Best {
    match a.score.total_cmp(&b.score) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if cmp_boxes(&a.bx, &b.bx) != Ordering::Greater {
                a
            } else {
                b
            }
        }
    }
}

fn pick(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (Some(a), Some(b)) => Some(better(a, b)),
        (a, b) => a.or(b),
    }
}

/// Visits every empty box whose faces lie on candidate coordinates, pruning
/// on the points still strictly inside the partial box.
/// Scores an empty box given by its corners.
type Visit<'v> = dyn Fn(&[f64], &[f64]) -> Option<Best> + Sync + 'v;

struct Enumerator<'a> {
    d: usize,
    cands: &'a CandidateCoordinateSets,
}

impl Enumerator<'_> {
    fn pairs(&self, axis: usize) -> Vec<(f64, f64)> {
        let c = self.cands.axis(axis);
        let mut out = Vec::new();
        for (i, &lo) in c.iter().enumerate() {
            for &hi in &c[i + 1..] {
                out.push((lo, hi));
            }
        }
        out
    }

    fn run(&self, points: &PointSet, visit: &Visit<'_>) -> Option<Best> {
        let all: Vec<&[f64]> = points.iter().collect();
        self.pairs(0)
            .into_par_iter()
            .map(|(lo, hi)| {
                let inside: Vec<&[f64]> = all.iter().copied().filter(|p| lo < p[0] && p[0] < hi).collect();
                let mut blo = vec![lo; self.d];
                let mut bhi = vec![hi; self.d];
                self.rec(1, &inside, &mut blo, &mut bhi, visit)
            })
            .reduce(|| None, pick)
    }

    fn rec(
        &self,
        axis: usize,
        inside: &[&[f64]],
        blo: &mut Vec<f64>,
        bhi: &mut Vec<f64>,
        visit: &Visit<'_>,
    ) -> Option<Best> {
        if axis == self.d {
            return if inside.is_empty() { visit(blo, bhi) } else { None };
        }
        let c = self.cands.axis(axis);
        let mut best = None;
        for (i, &lo) in c.iter().enumerate() {
            for &hi in &c[i + 1..] {
                let next: Vec<&[f64]> = inside.iter().copied().filter(|p| lo < p[axis] && p[axis] < hi).collect();
                // widening hi only adds points
                if axis + 1 == self.d && !next.is_empty() {
                    break;
                }
                blo[axis] = lo;
                bhi[axis] = hi;
                best = pick(best, self.rec(axis + 1, &next, blo, bhi, visit));
            }
        }
        best
    }
}

fn volume_of(lo: &[f64], hi: &[f64]) -> f64 {
    lo.iter().zip(hi).map(|(l, h)| h - l).product()
}

/// Maximum-volume empty box in the unit cube by exhaustive enumeration of
/// candidate faces. Ties go to the lexicographically smallest `(lo, hi)`.
pub fn exact_max_empty_box(points: &PointSet, guard: ScaleGuard) -> Result<(OpenBox, f64)> {
    points.check_in_unit_cube()?;
    guard.check(points.len(), points.dim())?;
    let cands = CandidateCoordinateSets::unit(points)?;
    let en = Enumerator {
        d: points.dim(),
        cands: &cands,
    };
    let best = en
        .run(points, &|lo, hi| {
            Some(Best {
                bx: OpenBox::new(lo.to_vec(), hi.to_vec()).ok()?,
                score: volume_of(lo, hi),
            })
        })
        .expect("the unit cube minus points always has an empty box");
    let v = best.bx.volume();
    Ok((best.bx, v))
}

/// Maximum-area empty rectangle in the unit square, `O(n^3)`.
pub fn exact_max_empty_rect_2d(points: &PointSet) -> Result<(OpenBox, f64)> {
    if points.dim() != 2 {
        return Err(Error::InvalidDimension(points.dim()));
    }
    points.check_in_unit_cube()?;
    let cands = CandidateCoordinateSets::unit(points)?;
    let mut by_y: Vec<&[f64]> = points.iter().collect();
    by_y.sort_by(|p, q| p[1].total_cmp(&q[1]));
    let xs = cands.axis(0);
    let best = (0..xs.len())
        .into_par_iter()
        .map(|i| {
            let mut best: Option<Best> = None;
            for &xr in &xs[i + 1..] {
                let xl = xs[i];
                let mut prev = 0.0;
                let mut gap = (0.0, 0.0, f64::NEG_INFINITY);
                let ys = by_y
                    .iter()
                    .filter(|p| xl < p[0] && p[0] < xr)
                    .map(|p| p[1])
                    .chain(std::iter::once(1.0));
                for y in ys {
                    if y > prev && y - prev > gap.2 {
                        gap = (prev, y, y - prev);
                    }
                    prev = prev.max(y);
                }
                let bx = OpenBox::new(vec![xl, gap.0], vec![xr, gap.1]).expect("positive gap");
                let cand = Best {
                    score: bx.volume(),
                    bx,
                };
                best = pick(best, Some(cand));
            }
            best
        })
        .reduce(|| None, pick)
        .expect("at least one strip");
    let v = best.bx.volume();
    Ok((best.bx, v))
}

/// Whether `bx` is empty and cannot be enlarged: every face lies on the
/// region boundary or carries a point strictly inside the face.
pub fn is_maximal_empty(bx: &OpenBox, points: &PointSet, region: &OpenBox) -> Result<bool> {
    let d = bx.dim();
    if region.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: region.dim(),
        });
    }
    check_dim(points, d)?;
    if !bx.is_empty_of(points)? {
        return Ok(false);
    }
    let on_face = |p: &[f64], axis: usize, x: f64| {
        p[axis] == x && (0..d).all(|j| j == axis || (bx.lo()[j] < p[j] && p[j] < bx.hi()[j]))
    };
    for axis in 0..d {
        for (x, edge) in [(bx.lo()[axis], region.lo()[axis]), (bx.hi()[axis], region.hi()[axis])] {
            if x != edge && !points.iter().any(|p| on_face(p, axis, x)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All maximal empty boxes inside `region`, sorted and deduplicated.
pub fn enumerate_restricted_boxes(points: &PointSet, region: &OpenBox, guard: ScaleGuard) -> Result<Vec<OpenBox>> {
    check_dim(points, region.dim())?;
    guard.check(points.len(), points.dim())?;
    let cands = CandidateCoordinateSets::new(points, region)?;
    let d = region.dim();
    let all: Vec<&[f64]> = points.iter().collect();
    let en = Enumerator { d, cands: &cands };
    let pairs = en.pairs(0);
    let mut boxes: Vec<OpenBox> = pairs
        .into_par_iter()
        .flat_map_iter(|(lo, hi)| {
            let inside: Vec<&[f64]> = all.iter().copied().filter(|p| lo < p[0] && p[0] < hi).collect();
            let found = std::sync::Mutex::new(Vec::new());
            let mut blo = vec![lo; d];
            let mut bhi = vec![hi; d];
            en.rec(1, &inside, &mut blo, &mut bhi, &|l, h| {
                let bx = OpenBox::new(l.to_vec(), h.to_vec()).ok()?;
                if is_maximal_empty(&bx, points, region).unwrap_or(false) {
                    found.lock().unwrap().push(bx);
                }
                None
            });
            found.into_inner().unwrap()
        })
        .collect();
    boxes.sort_by(cmp_boxes);
    boxes.dedup();
    Ok(boxes)
}

/// Largest empty hypercube in the unit cube, anchored at the lower corner of
/// the maximal box realizing it.
pub fn exact_max_empty_cube(points: &PointSet, guard: ScaleGuard) -> Result<(OpenBox, f64)> {
    points.check_in_unit_cube()?;
    let d = points.dim();
    let boxes = enumerate_restricted_boxes(points, &OpenBox::unit(d), guard)?;
    let best = boxes
        .into_iter()
        .map(|b| {
            let s = b.sides().into_iter().fold(f64::INFINITY, f64::min);
            let lo = b.lo().to_vec();
            let hi = lo.iter().map(|x| x + s).collect();
            Best {
                bx: OpenBox::new(lo, hi).expect("positive side"),
                score: s,
            }
        })
        .reduce(better)
        .expect("at least one maximal box");
    let v = best.bx.volume();
    Ok((best.bx, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointgen::{grid_vertices, known_tight_config, uniform_random, van_der_corput, xi, TightConfig};

    fn pts(d: usize, v: Vec<Vec<f64>>) -> PointSet {
        PointSet::new(d, v).unwrap()
    }

    #[test]
    fn empty_instance() {
        let (b, v) = exact_max_empty_box(&PointSet::empty(2), ScaleGuard::default()).unwrap();
        assert_eq!(b, OpenBox::unit(2));
        assert_eq!(v, 1.0);
        let (_, v) = exact_max_empty_cube(&PointSet::empty(2), ScaleGuard::default()).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn tight_configurations() {
        let (_, v) = exact_max_empty_box(&known_tight_config(TightConfig::TwoPointXi), ScaleGuard::default()).unwrap();
        assert!((v - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((v - xi()).abs() < 1e-12);
        let (_, v) =
            exact_max_empty_box(&known_tight_config(TightConfig::FourPointQuarter), ScaleGuard::default()).unwrap();
        assert!((v - 0.25).abs() < 1e-12);
    }

    #[test]
    fn single_center_point() {
        let p = pts(2, vec![vec![0.5, 0.5]]);
        assert_eq!(exact_max_empty_rect_2d(&p).unwrap().1, 0.5);
        assert_eq!(exact_max_empty_box(&p, ScaleGuard::default()).unwrap().1, 0.5);
        let (b, v) = exact_max_empty_cube(&p, ScaleGuard::default()).unwrap();
        assert_eq!(v, 0.25);
        assert_eq!(b.sides(), vec![0.5, 0.5]);
    }

    #[test]
    fn van_der_corput_16() {
        let (_, v) = exact_max_empty_rect_2d(&van_der_corput(16)).unwrap();
        assert!(v < 0.25);
    }

    #[test]
    fn planar_oracles_agree() {
        for seed in 0..100 {
            let n = (seed % 12 + 1) as usize;
            let p = uniform_random(n, 2, seed).unwrap();
            let (_, a) = exact_max_empty_rect_2d(&p).unwrap();
            let (_, b) = exact_max_empty_box(&p, ScaleGuard::default()).unwrap();
            assert!((a - b).abs() < 1e-12, "seed {seed}: {a} vs {b}");
        }
    }

    #[test]
    fn maximality_examples() {
        let p = pts(2, vec![vec![0.75, 0.5]]);
        let half = OpenBox::new(vec![0.0, 0.0], vec![0.5, 1.0]).unwrap();
        assert!(!is_maximal_empty(&half, &p, &OpenBox::unit(2)).unwrap());
        assert!(is_maximal_empty(&OpenBox::unit(3), &PointSet::empty(3), &OpenBox::unit(3)).unwrap());
    }

    #[test]
    fn restricted_of_empty_set() {
        let boxes = enumerate_restricted_boxes(&PointSet::empty(2), &OpenBox::unit(2), ScaleGuard::default()).unwrap();
        assert_eq!(boxes, vec![OpenBox::unit(2)]);
    }

    #[test]
    fn grid_vertices_cube() {
        let (_, v) = exact_max_empty_cube(&grid_vertices(3, 2).unwrap(), ScaleGuard::default()).unwrap();
        assert!((v - 1.0 / 16.0).abs() < 1e-12);
    }

    #[test]
    fn guard_refuses_and_force_overrides() {
        let p = uniform_random(13, 2, 1).unwrap();
        assert!(matches!(
            exact_max_empty_box(&p, ScaleGuard::default()),
            Err(Error::ScaleGuard { n: 13, d: 2, limit: 12 })
        ));
        assert!(exact_max_empty_box(&p, ScaleGuard::forced()).is_ok());
    }

    #[test]
    fn result_is_maximal() {
        for seed in 0..30 {
            let p = uniform_random(6, 3, seed).unwrap();
            let (b, _) = exact_max_empty_box(&p, ScaleGuard::default()).unwrap();
            assert!(is_maximal_empty(&b, &p, &OpenBox::unit(3)).unwrap());
        }
    }
}
