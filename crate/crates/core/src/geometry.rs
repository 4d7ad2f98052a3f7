//! Points, open boxes and the per-axis affine map onto the unit hypercube.
//!
//! Boxes are open: a point on a face is never inside. All comparisons are
//! exact floating-point comparisons.

use serde::Serialize;

use crate::error::{Error, Result};

/// A multiset of points in `R^d`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    /// Builds a point set from coordinate vectors. Every vector must have
    /// length `dim` and finite entries.
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(dim));
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(dim, coords)
    }

    /// Builds a point set from a flat row-major coordinate buffer.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(dim));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: coords.len() % dim,
            });
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite {
                point: pos / dim,
                coord: pos % dim,
            });
        }
        Ok(Self { dim, coords })
    }

    pub fn empty(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self {
            dim,
            coords: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }

    pub fn to_vecs(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }

    /// Keeps the points for which `keep` returns true, in order.
    pub fn filter(&self, mut keep: impl FnMut(&[f64]) -> bool) -> Self {
        let coords = self
            .iter()
            .filter(|p| keep(p))
            .flatten()
            .copied()
            .collect();
        Self {
            dim: self.dim,
            coords,
        }
    }

    /// Removes exact duplicates, keeping first occurrences.
    pub fn dedup(&self) -> Self {
        let mut coords: Vec<f64> = Vec::with_capacity(self.coords.len());
        for p in self.iter() {
            if !coords.chunks_exact(self.dim).any(|q| q == p) {
                coords.extend_from_slice(p);
            }
        }
        Self {
            dim: self.dim,
            coords,
        }
    }

    /// Points with every coordinate strictly inside (0, 1).
    pub fn interior_of_unit_cube(&self) -> Self {
        self.filter(|p| p.iter().all(|&x| x > 0.0 && x < 1.0))
    }

    /// Checks that all points lie in the closed unit cube.
    pub fn check_in_unit_cube(&self) -> Result<()> {
        match self
            .iter()
            .position(|p| p.iter().any(|&x| !(0.0..=1.0).contains(&x)))
        {
            Some(index) => Err(Error::PointOutsideRegion { index }),
            None => Ok(()),
        }
    }

    /// Axis-aligned bounding box as `(min, max)` per axis; `None` when empty.
    pub fn bounds(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let mut it = self.iter();
        let first = it.next()?;
        let mut lo = first.to_vec();
        let mut hi = first.to_vec();
        for p in it {
            for i in 0..self.dim {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        Some((lo, hi))
    }
}

/// An open axis-parallel box `(lo_0, hi_0) x ... x (lo_{d-1}, hi_{d-1})`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpenBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl OpenBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        if lo.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        for axis in 0..lo.len() {
            if !lo[axis].is_finite() || !hi[axis].is_finite() {
                return Err(Error::NonFinite {
                    point: 0,
                    coord: axis,
                });
            }
            if lo[axis] >= hi[axis] {
                return Err(Error::InvalidBox { axis });
            }
        }
        Ok(Self { lo, hi })
    }

    /// The open unit hypercube `(0,1)^d`.
    pub fn unit(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self {
            lo: vec![0.0; dim],
            hi: vec![1.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn side(&self, axis: usize) -> f64 {
        self.hi[axis] - self.lo[axis]
    }

    pub fn sides(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.side(i)).collect()
    }

    /// Product of the side lengths.
    pub fn volume(&self) -> f64 {
        (0..self.dim()).map(|i| self.side(i)).product()
    }

    /// Strict containment: `lo[i] < p[i] < hi[i]` on every axis.
    pub fn contains_point_strict(&self, p: &[f64]) -> Result<bool> {
        if p.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.len(),
            });
        }
        Ok(self.contains_unchecked(p))
    }

    pub(crate) fn contains_unchecked(&self, p: &[f64]) -> bool {
        p.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(&x, (&l, &h))| l < x && x < h)
    }

    /// True when no point of `points` lies strictly inside.
    pub fn is_empty_of(&self, points: &PointSet) -> Result<bool> {
        if points.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: points.dim(),
            });
        }
        Ok(!points.iter().any(|p| self.contains_unchecked(p)))
    }

    /// Closed containment of `other` inside `self`.
    pub fn contains_box(&self, other: &OpenBox) -> bool {
        self.dim() == other.dim()
            && (0..self.dim()).all(|i| self.lo[i] <= other.lo[i] && other.hi[i] <= self.hi[i])
    }
}

/// Per-axis map `x -> (x - offset) / extent` onto the unit hypercube.
///
/// `scale()` reports `1 / extent`. Dividing by the extent (rather than
/// multiplying by its reciprocal) sends the region's faces exactly to 0 and 1.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineTransform {
    offset: Vec<f64>,
    extent: Vec<f64>,
}

impl AffineTransform {
    /// The map sending `region` onto the unit cube.
    pub fn onto_unit(region: &OpenBox) -> Self {
        Self {
            offset: region.lo().to_vec(),
            extent: region.sides(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            offset: vec![0.0; dim],
            extent: vec![1.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    pub fn offset(&self) -> &[f64] {
        &self.offset
    }

    pub fn scale(&self) -> Vec<f64> {
        self.extent.iter().map(|e| 1.0 / e).collect()
    }

    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        p.iter()
            .zip(self.offset.iter().zip(&self.extent))
            .map(|(&x, (&o, &e))| (x - o) / e)
            .collect()
    }

    pub fn invert(&self, p: &[f64]) -> Vec<f64> {
        p.iter()
            .zip(self.offset.iter().zip(&self.extent))
            .map(|(&u, (&o, &e))| u * e + o)
            .collect()
    }

    /// Maps a unit-cube box back to input units.
    pub fn invert_box(&self, b: &OpenBox) -> Result<OpenBox> {
        OpenBox::new(self.invert(b.lo()), self.invert(b.hi()))
    }

    pub fn apply_box(&self, b: &OpenBox) -> Result<OpenBox> {
        OpenBox::new(self.apply(b.lo()), self.apply(b.hi()))
    }

    /// Volume of the region: the factor by which `invert_box` scales volume.
    pub fn volume_factor(&self) -> f64 {
        self.extent.iter().product()
    }
}

/// Maps `points` from `region` onto the unit cube.
///
/// Points must lie in the closure of `region`. Points whose image is not
/// strictly inside `(0,1)^d` are dropped: a point on the boundary of the
/// region never lies inside any box contained in it.
pub fn normalize_to_unit(points: &PointSet, region: &OpenBox) -> Result<(PointSet, AffineTransform)> {
    let d = region.dim();
    if points.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: points.dim(),
        });
    }
    for axis in 0..d {
        if !(region.side(axis).is_finite() && region.side(axis) > 0.0) {
            return Err(Error::DegenerateRegion { axis });
        }
    }
    for (index, p) in points.iter().enumerate() {
        if p.iter()
            .enumerate()
            .any(|(i, &x)| x < region.lo()[i] || x > region.hi()[i])
        {
            return Err(Error::PointOutsideRegion { index });
        }
    }
    let transform = AffineTransform::onto_unit(region);
    let mut coords = Vec::with_capacity(points.as_flat().len());
    for p in points.iter() {
        let u = transform.apply(p);
        if u.iter().all(|&x| x > 0.0 && x < 1.0) {
            coords.extend(u);
        }
    }
    Ok((PointSet::from_flat(d, coords)?, transform))
}
