//! Grid bucketing and d-dimensional prefix ("corner") counts.
//!
//! A grid with cell lengths `x_1..x_d` is anchored at the origin of the unit
//! cube; cell `j` on axis `i` is the half-open interval `[j x_i, (j+1) x_i)`,
//! and the last cell on each axis may be clipped by the cube. Corner counts
//! are built with the inclusion-exclusion recurrence over the `2^d` lower
//! neighbours, and any block of cells is then counted in `2^d` reads.

use crate::error::{Error, Result};
use crate::geometry::PointSet;

/// Dense tensors above this many cells are refused.
pub const MAX_CELLS: u64 = 1 << 31;

/// Largest `j >= 0` with `(j as f64) * cell <= x`, for `x >= 0`.
///
/// The result agrees exactly with grid coordinates computed as `j * cell`,
/// which is what keeps window counts consistent with float box bounds.
pub fn floor_index(x: f64, cell: f64) -> u64 {
    debug_assert!(x >= 0.0 && cell > 0.0);
    let mut j = (x / cell).floor().max(0.0) as u64;
    while j > 0 && j as f64 * cell > x {
        j -= 1;
    }
    while (j + 1) as f64 * cell <= x {
        j += 1;
    }
    j
}

/// Cell lengths and the number of (possibly clipped) cells per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    cell_lengths: Vec<f64>,
    extents: Vec<usize>,
}

impl GridSpec {
    pub fn new(cell_lengths: Vec<f64>) -> Result<Self> {
        if cell_lengths.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        let mut extents = Vec::with_capacity(cell_lengths.len());
        for &c in &cell_lengths {
            if !(c.is_finite() && c > 0.0) {
                return Err(Error::InvalidArgument(format!("cell length must be positive, got {c}")));
            }
            // smallest E with E * c >= 1
            let mut e = (1.0 / c).ceil().max(1.0) as u64;
            while e > 1 && (e - 1) as f64 * c >= 1.0 {
                e -= 1;
            }
            while (e as f64) * c < 1.0 {
                e += 1;
            }
            extents.push(usize::try_from(e).map_err(|_| {
                Error::InvalidArgument(format!("grid extent {e} does not fit in memory"))
            })?);
        }
        Ok(Self {
            cell_lengths,
            extents,
        })
    }

    pub fn dim(&self) -> usize {
        self.cell_lengths.len()
    }

    pub fn cell_lengths(&self) -> &[f64] {
        &self.cell_lengths
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    /// `M(G)`, the number of cells with nonempty interior (saturating).
    pub fn total_cells(&self) -> u64 {
        self.extents
            .iter()
            .try_fold(1u64, |acc, &e| acc.checked_mul(e as u64))
            .unwrap_or(u64::MAX)
    }

    /// Cell index of coordinate `x` on `axis`, clamped into the last cell.
    pub fn cell_index(&self, axis: usize, x: f64) -> usize {
        let j = floor_index(x, self.cell_lengths[axis]);
        (j as usize).min(self.extents[axis] - 1)
    }

    /// Coordinate of grid line `j` on `axis`.
    pub fn grid_coord(&self, axis: usize, j: usize) -> f64 {
        j as f64 * self.cell_lengths[axis]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorKind {
    /// Points per cell.
    Cell,
    /// Points in the prefix block from cell 0 to the indexed cell.
    Corner,
    /// Points in a fixed-size block anchored at the indexed cell.
    Window,
}

/// Dense row-major tensor of counts (last axis fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct CountTensor {
    shape: Vec<usize>,
    values: Vec<u64>,
    kind: TensorKind,
}

impl CountTensor {
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn kind(&self) -> TensorKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.shape.len());
        idx.iter()
            .zip(&self.shape)
            .fold(0, |acc, (&i, &s)| {
                debug_assert!(i < s);
                acc * s + i
            })
    }

    pub fn get(&self, idx: &[usize]) -> u64 {
        self.values[self.flat_index(idx)]
    }

    fn strides(&self) -> Vec<usize> {
        strides(&self.shape)
    }
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut st = vec![1usize; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        st[i] = st[i + 1] * shape[i + 1];
    }
    st
}

/// Operation counters for the complexity checks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub points_visited: u64,
    pub tensor_reads: u64,
}

/// Per-cell point counts.
pub fn cell_counts(points: &PointSet, grid: &GridSpec) -> Result<CountTensor> {
    cell_counts_counted(points, grid, &mut OpCounts::default())
}

pub fn cell_counts_counted(points: &PointSet, grid: &GridSpec, ops: &mut OpCounts) -> Result<CountTensor> {
    let d = grid.dim();
    if points.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: points.dim(),
        });
    }
    points.check_in_unit_cube()?;
    let total = grid.total_cells();
    if total > MAX_CELLS {
        return Err(Error::InvalidArgument(format!("grid has {total} cells")));
    }
    let shape = grid.extents().to_vec();
    let st = strides(&shape);
    let mut values = vec![0u64; total as usize];
    for p in points.iter() {
        ops.points_visited += 1;
        let flat: usize = (0..d).map(|i| grid.cell_index(i, p[i]) * st[i]).sum();
        values[flat] += 1;
    }
    Ok(CountTensor {
        shape,
        values,
        kind: TensorKind::Cell,
    })
}

/// Corner counts `N(i) = n(i) + sum_{b != 0} (-1)^{|b|+1} N(i - b)`, with
/// `N = 0` at any negative index.
pub fn corner_counts(cells: &CountTensor) -> Result<CountTensor> {
    corner_counts_counted(cells, &mut OpCounts::default())
}

pub fn corner_counts_counted(cells: &CountTensor, ops: &mut OpCounts) -> Result<CountTensor> {
    if cells.kind != TensorKind::Cell {
        return Err(Error::InvalidArgument("corner counts need a cell tensor".into()));
    }
    let d = cells.shape.len();
    let st = cells.strides();
    let masks = 1usize << d;
    let offsets: Vec<usize> = (0..masks)
        .map(|b| (0..d).filter(|k| b >> k & 1 == 1).map(|k| st[k]).sum())
        .collect();
    let mut out = vec![0i64; cells.values.len()];
    let mut idx = vec![0usize; d];
    // bit k set iff idx[k] > 0
    let mut nonzero = 0usize;
    for flat in 0..cells.values.len() {
        let mut acc = cells.values[flat] as i64;
        let mut sub = nonzero;
        while sub != 0 {
            let v = out[flat - offsets[sub]];
            ops.tensor_reads += 1;
            if sub.count_ones() % 2 == 1 {
                acc += v;
            } else {
                acc -= v;
            }
            sub = (sub - 1) & nonzero;
        }
        out[flat] = acc;
        // advance the multi-index
        for k in (0..d).rev() {
            idx[k] += 1;
            if idx[k] < cells.shape[k] {
                nonzero |= 1 << k;
                break;
            }
            idx[k] = 0;
            nonzero &= !(1 << k);
        }
    }
    Ok(CountTensor {
        shape: cells.shape.clone(),
        values: out.into_iter().map(|v| v as u64).collect(),
        kind: TensorKind::Corner,
    })
}

/// Points in the block of `sizes` cells whose lowest cell is `lower`.
pub fn box_count(corner: &CountTensor, lower: &[usize], sizes: &[usize]) -> Result<u64> {
    let d = corner.shape.len();
    if corner.kind != TensorKind::Corner {
        return Err(Error::InvalidArgument("box counts need a corner tensor".into()));
    }
    if lower.len() != d || sizes.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: if lower.len() != d { lower.len() } else { sizes.len() },
        });
    }
    let fits = (0..d).all(|i| sizes[i] >= 1 && lower[i] + sizes[i] <= corner.shape[i]);
    if !fits {
        return Err(Error::WindowOutOfRange {
            lower: lower.to_vec(),
            sizes: sizes.to_vec(),
            shape: corner.shape.clone(),
        });
    }
    let upper: Vec<usize> = (0..d).map(|i| lower[i] + sizes[i] - 1).collect();
    let mut acc = 0i64;
    let mut at = vec![0usize; d];
    'masks: for b in 0..1usize << d {
        for i in 0..d {
            if b >> i & 1 == 1 {
                if upper[i] < sizes[i] {
                    continue 'masks;
                }
                at[i] = upper[i] - sizes[i];
            } else {
                at[i] = upper[i];
            }
        }
        let v = corner.get(&at) as i64;
        if b.count_ones() % 2 == 0 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    Ok(acc as u64)
}

/// Window counts `Q(i)` for every anchor `i` whose block of `sizes` cells
/// fits in the tensor. The result has shape `extent - size + 1` per axis.
pub fn all_box_counts(corner: &CountTensor, sizes: &[usize]) -> Result<CountTensor> {
    all_box_counts_counted(corner, sizes, &mut OpCounts::default())
}

pub fn all_box_counts_counted(corner: &CountTensor, sizes: &[usize], ops: &mut OpCounts) -> Result<CountTensor> {
    let d = corner.shape.len();
    if corner.kind != TensorKind::Corner {
        return Err(Error::InvalidArgument("window counts need a corner tensor".into()));
    }
    if sizes.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: sizes.len(),
        });
    }
    if sizes.contains(&0) {
        return Err(Error::InvalidArgument("window sizes must be at least 1".into()));
    }
    let shape: Vec<usize> = (0..d)
        .map(|i| (corner.shape[i] + 1).saturating_sub(sizes[i]))
        .collect();
    let total: usize = shape.iter().product();
    let mut values = Vec::with_capacity(total);
    if total > 0 {
        let st = corner.strides();
        let masks = 1usize << d;
        let offsets: Vec<usize> = (0..masks)
            .map(|b| (0..d).filter(|k| b >> k & 1 == 1).map(|k| sizes[k] * st[k]).sum())
            .collect();
        let top: usize = (0..d).map(|k| (sizes[k] - 1) * st[k]).sum();
        let mut idx = vec![0usize; d];
        let mut nonzero = 0usize;
        for _ in 0..total {
            let upper: usize = (0..d).map(|k| idx[k] * st[k]).sum::<usize>() + top;
            let mut acc = corner.values[upper] as i64;
            ops.tensor_reads += 1;
            let mut sub = nonzero;
            while sub != 0 {
                let v = corner.values[upper - offsets[sub]] as i64;
                ops.tensor_reads += 1;
                if sub.count_ones() % 2 == 1 {
                    acc -= v;
                } else {
                    acc += v;
                }
                sub = (sub - 1) & nonzero;
            }
            values.push(acc as u64);
            for k in (0..d).rev() {
                idx[k] += 1;
                if idx[k] < shape[k] {
                    nonzero |= 1 << k;
                    break;
                }
                idx[k] = 0;
                nonzero &= !(1 << k);
            }
        }
    }
    Ok(CountTensor {
        shape,
        values,
        kind: TensorKind::Window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_points() -> (PointSet, GridSpec) {
        let pts = PointSet::new(2, vec![vec![0.25, 0.25], vec![0.75, 0.75]]).unwrap();
        (pts, GridSpec::new(vec![0.5, 0.5]).unwrap())
    }

    #[test]
    fn floor_index_is_consistent_with_products() {
        for &c in &[0.1, 1.0 / 3.0, 0.07, 1e-3] {
            for k in 0..200u64 {
                let x = k as f64 * c;
                if x > 1.0 {
                    break;
                }
                assert_eq!(floor_index(x, c), k);
                if k > 0 {
                    let below = f64::from_bits(x.to_bits() - 1);
                    assert_eq!(floor_index(below, c), k - 1);
                }
            }
        }
    }

    #[test]
    fn extents() {
        assert_eq!(GridSpec::new(vec![0.5, 0.3]).unwrap().extents(), &[2, 4]);
        assert_eq!(GridSpec::new(vec![0.1]).unwrap().extents(), &[10]);
        assert_eq!(GridSpec::new(vec![2.0]).unwrap().extents(), &[1]);
        assert!(GridSpec::new(vec![0.0]).is_err());
    }

    #[test]
    fn cell_count_examples() {
        let (pts, grid) = two_points();
        let n = cell_counts(&pts, &grid).unwrap();
        assert_eq!(n.values(), &[1, 0, 0, 1]);
        let empty = cell_counts(&PointSet::empty(2), &grid).unwrap();
        assert!(empty.values().iter().all(|&v| v == 0));
        let center = PointSet::new(2, vec![vec![0.5, 0.5]]).unwrap();
        assert_eq!(cell_counts(&center, &grid).unwrap().get(&[1, 1]), 1);
        let outside = PointSet::new(2, vec![vec![1.5, 0.5]]).unwrap();
        assert!(cell_counts(&outside, &grid).is_err());
    }

    #[test]
    fn corner_count_examples() {
        let (pts, grid) = two_points();
        let n = cell_counts(&pts, &grid).unwrap();
        let c = corner_counts(&n).unwrap();
        assert_eq!(c.get(&[1, 1]), 2);
        assert_eq!(c.get(&[0, 0]), 1);
        assert_eq!(c.get(&[0, 1]), 1);
        assert_eq!(c.get(&[1, 0]), 1);

        let zero = cell_counts(&PointSet::empty(3), &GridSpec::new(vec![0.5; 3]).unwrap()).unwrap();
        assert!(corner_counts(&zero).unwrap().values().iter().all(|&v| v == 0));

        let single = GridSpec::new(vec![1.0, 1.0]).unwrap();
        let n = cell_counts(&pts, &single).unwrap();
        assert_eq!(corner_counts(&n).unwrap().values(), n.values());
        assert!(corner_counts(&corner_counts(&n).unwrap()).is_err());
    }

    #[test]
    fn box_count_examples() {
        let (pts, grid) = two_points();
        let c = corner_counts(&cell_counts(&pts, &grid).unwrap()).unwrap();
        assert_eq!(box_count(&c, &[0, 1], &[1, 1]).unwrap(), 0);
        assert_eq!(box_count(&c, &[1, 1], &[1, 1]).unwrap(), 1);
        assert_eq!(box_count(&c, &[0, 0], &[2, 2]).unwrap(), 2);
        assert!(matches!(
            box_count(&c, &[1, 1], &[2, 1]),
            Err(Error::WindowOutOfRange { .. })
        ));
    }

    #[test]
    fn all_box_count_examples() {
        let pts = PointSet::new(2, vec![vec![0.1, 0.2], vec![0.6, 0.9], vec![0.3, 0.35]]).unwrap();
        let grid = GridSpec::new(vec![0.25, 0.2]).unwrap();
        let n = cell_counts(&pts, &grid).unwrap();
        let c = corner_counts(&n).unwrap();
        let q = all_box_counts(&c, &[1, 1]).unwrap();
        assert_eq!(q.values(), n.values());
        let full = all_box_counts(&c, grid.extents()).unwrap();
        assert_eq!(full.values(), &[3]);
        let too_big = all_box_counts(&c, &[5, 1]).unwrap();
        assert!(too_big.is_empty());
    }

    #[test]
    fn operation_counts() {
        let pts = PointSet::new(3, vec![vec![0.1, 0.2, 0.3], vec![0.9, 0.9, 0.9]]).unwrap();
        let grid = GridSpec::new(vec![0.3, 0.25, 0.2]).unwrap();
        let mut ops = OpCounts::default();
        let n = cell_counts_counted(&pts, &grid, &mut ops).unwrap();
        assert_eq!(ops.points_visited, 2);
        let mut ops = OpCounts::default();
        corner_counts_counted(&n, &mut ops).unwrap();
        assert!(ops.tensor_reads <= 7 * grid.total_cells());
    }
}
