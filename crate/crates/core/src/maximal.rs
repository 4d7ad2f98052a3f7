//! Enumeration of maximal empty boxes by nested plane sweeps.
//!
//! A box is maximal when each of its `2d` faces either lies on the region
//! boundary or contains a point whose other coordinates are strictly inside
//! the box. The sweep fixes the faces axis by axis: a lower face (region or
//! blocking point), then every upper face above it, recursing on the points
//! strictly inside the resulting slab. Blocking points impose "must contain"
//! intervals on later axes, which prunes slabs early. The last two axes are
//! swept incrementally.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{OpenBox, PointSet};

/// A flat list of boxes, `lo[0..d]` followed by `hi[0..d]` per box.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BoxList {
    dim: usize,
    data: Vec<f64>,
}

impl BoxList {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        if self.dim == 0 {
            0
        } else {
            self.data.len() / (2 * self.dim)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> (&[f64], &[f64]) {
        let b = &self.data[2 * self.dim * i..2 * self.dim * (i + 1)];
        b.split_at(self.dim)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], &[f64])> + '_ {
        self.data.chunks_exact(2 * self.dim).map(move |b| b.split_at(self.dim))
    }

    pub fn chunks(&self, boxes_per_chunk: usize) -> impl Iterator<Item = BoxListRef<'_>> + '_ {
        self.data
            .chunks(2 * self.dim * boxes_per_chunk.max(1))
            .map(move |data| BoxListRef { dim: self.dim, data })
    }

    pub fn to_boxes(&self) -> Vec<OpenBox> {
        self.iter()
            .map(|(lo, hi)| OpenBox::new(lo.to_vec(), hi.to_vec()).expect("maximal boxes are nondegenerate"))
            .collect()
    }
}

/// A borrowed run of boxes from a [`BoxList`].
#[derive(Debug, Clone, Copy)]
pub struct BoxListRef<'a> {
    dim: usize,
    data: &'a [f64],
}

impl<'a> BoxListRef<'a> {
    pub fn iter(&self) -> impl Iterator<Item = (&'a [f64], &'a [f64])> + 'a {
        let dim = self.dim;
        self.data.chunks_exact(2 * dim).map(move |b| b.split_at(dim))
    }
}

/// All maximal empty boxes inside `region`, sorted lexicographically by
/// `(lo, hi)` and deduplicated.
pub fn maximal_empty_boxes(points: &PointSet, region: &OpenBox) -> Result<Vec<OpenBox>> {
    let raw = maximal_empty_boxes_raw(points, region)?;
    let mut boxes = raw.to_boxes();
    boxes.sort_by(cmp_boxes);
    boxes.dedup();
    Ok(boxes)
}

pub(crate) fn cmp_boxes(a: &OpenBox, b: &OpenBox) -> std::cmp::Ordering {
    cmp_slices(a.lo(), b.lo()).then_with(|| cmp_slices(a.hi(), b.hi()))
}

pub(crate) fn cmp_slices(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Maximal empty boxes in sweep order. A box may appear more than once when
/// several points share a face coordinate; with distinct coordinates per
/// axis every box appears exactly once.
pub fn maximal_empty_boxes_raw(points: &PointSet, region: &OpenBox) -> Result<BoxList> {
    let d = region.dim();
    if points.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: points.dim(),
        });
    }
    // points on or outside the region boundary never block a face
    let inside = points.filter(|p| region.contains_unchecked(p));
    let sweep = Sweep {
        d,
        coords: inside.as_flat(),
        rlo: region.lo(),
        rhi: region.hi(),
    };
    let mut order: Vec<u32> = (0..inside.len() as u32).collect();
    order.sort_by(|&x, &y| sweep.p(x)[0].total_cmp(&sweep.p(y)[0]));

    if d == 1 {
        let mut st = State::new(d);
        let mut out = Vec::new();
        sweep.last_axis(&order, &mut st, &mut out);
        return Ok(BoxList { dim: d, data: out });
    }

    if d == 2 {
        let mut st = State::new(d);
        let mut out = Vec::new();
        sweep.lower_face(0, &order, None, &mut st, &mut out);
        sweep.planar_blocked(&order, &mut out);
        return Ok(BoxList { dim: d, data: out });
    }

    let candidates: Vec<Option<u32>> = std::iter::once(None).chain(order.iter().copied().map(Some)).collect();
    let parts: Vec<Vec<f64>> = candidates
        .par_iter()
        .map(|&blocker| {
            let mut st = State::new(d);
            let mut out = Vec::new();
            sweep.lower_face(0, &order, blocker, &mut st, &mut out);
            out
        })
        .collect();
    Ok(BoxList {
        dim: d,
        data: parts.concat(),
    })
}

struct Sweep<'a> {
    d: usize,
    coords: &'a [f64],
    rlo: &'a [f64],
    rhi: &'a [f64],
}

/// Per-axis "must contain" intervals: the box needs `lo < must_lo` and
/// `hi > must_hi`. Unconstrained axes hold `(+inf, -inf)`.
struct State {
    must_lo: Vec<f64>,
    must_hi: Vec<f64>,
    cur_lo: Vec<f64>,
    cur_hi: Vec<f64>,
}

impl State {
    fn new(d: usize) -> Self {
        Self {
            must_lo: vec![f64::INFINITY; d],
            must_hi: vec![f64::NEG_INFINITY; d],
            cur_lo: vec![0.0; d],
            cur_hi: vec![0.0; d],
        }
    }

    fn push(&mut self, p: &[f64], from: usize) -> Vec<(f64, f64)> {
        let saved = (from..p.len()).map(|j| (self.must_lo[j], self.must_hi[j])).collect();
        for (j, &x) in p.iter().enumerate().skip(from) {
            self.must_lo[j] = self.must_lo[j].min(x);
            self.must_hi[j] = self.must_hi[j].max(x);
        }
        saved
    }

    fn pop(&mut self, saved: Vec<(f64, f64)>, from: usize) {
        for (off, (lo, hi)) in saved.into_iter().enumerate() {
            self.must_lo[from + off] = lo;
            self.must_hi[from + off] = hi;
        }
    }
}

impl<'a> Sweep<'a> {
    fn p(&self, i: u32) -> &'a [f64] {
        let i = i as usize;
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    fn inside_must(&self, p: &[f64], from: usize, st: &State) -> bool {
        (from..self.d).all(|j| st.must_lo[j] <= p[j] && p[j] <= st.must_hi[j])
    }

    fn emit(&self, st: &State, out: &mut Vec<f64>) {
        out.extend_from_slice(&st.cur_lo);
        out.extend_from_slice(&st.cur_hi);
    }

    fn axis(&self, a: usize, active: &[u32], st: &mut State, out: &mut Vec<f64>) {
        if active.iter().any(|&i| self.inside_must(self.p(i), a, st)) {
            return;
        }
        if a == self.d {
            self.emit(st, out);
            return;
        }
        let mut order = active.to_vec();
        order.sort_by(|&x, &y| self.p(x)[a].total_cmp(&self.p(y)[a]));
        if a == self.d - 1 {
            self.last_axis(&order, st, out);
            return;
        }
        self.lower_face(a, &order, None, st, out);
        for &b in &order {
            if self.p(b)[a] >= st.must_lo[a] {
                break;
            }
            self.lower_face(a, &order, Some(b), st, out);
        }
    }

    /// Fixes the lower face on axis `a` (region face or blocking point) and
    /// sweeps the upper face. `order` is sorted by coordinate `a`.
    fn lower_face(&self, a: usize, order: &[u32], blocker: Option<u32>, st: &mut State, out: &mut Vec<f64>) {
        let lower = blocker.map_or(self.rlo[a], |b| self.p(b)[a]);
        if lower >= st.must_lo[a] {
            return;
        }
        let saved = blocker.map(|b| st.push(self.p(b), a + 1));
        let start = order.partition_point(|&i| self.p(i)[a] <= lower);
        let above = &order[start..];
        if a + 2 == self.d {
            self.sweep_last_two(a, lower, above, st, out);
        } else {
            self.sweep_upper(a, lower, above, st, out);
        }
        if let Some(saved) = saved {
            st.pop(saved, a + 1);
        }
    }

    fn sweep_upper(&self, a: usize, lower: f64, above: &[u32], st: &mut State, out: &mut Vec<f64>) {
        let mut slab: Vec<u32> = Vec::new();
        let mut g = 0;
        while g < above.len() {
            let v = self.p(above[g])[a];
            let e = g + above[g..].partition_point(|&i| self.p(i)[a] == v);
            if v > st.must_hi[a] {
                for &q in &above[g..e] {
                    let saved = st.push(self.p(q), a + 1);
                    st.cur_lo[a] = lower;
                    st.cur_hi[a] = v;
                    self.axis(a + 1, &slab, st, out);
                    st.pop(saved, a + 1);
                }
            }
            let mut blocked = false;
            for &q in &above[g..e] {
                blocked |= self.inside_must(self.p(q), a + 1, st);
                slab.push(q);
            }
            if blocked {
                return;
            }
            g = e;
        }
        st.cur_lo[a] = lower;
        st.cur_hi[a] = self.rhi[a];
        self.axis(a + 1, &slab, st, out);
    }

    /// Upper-face sweep on axis `a = d - 2`, tracking the admissible gap on
    /// the last axis incrementally.
    fn sweep_last_two(&self, a: usize, lower: f64, above: &[u32], st: &mut State, out: &mut Vec<f64>) {
        let b = a + 1;
        st.cur_lo[a] = lower;
        let (mlo, mhi) = (st.must_lo[b], st.must_hi[b]);
        if mlo <= mhi {
            let (mut glo, mut ghi) = (self.rlo[b], self.rhi[b]);
            let mut g = 0;
            while g < above.len() {
                let v = self.p(above[g])[a];
                let e = g + above[g..].partition_point(|&i| self.p(i)[a] == v);
                if v > st.must_hi[a] {
                    for &q in &above[g..e] {
                        let qb = self.p(q)[b];
                        if glo < qb && qb < ghi {
                            st.cur_hi[a] = v;
                            st.cur_lo[b] = glo;
                            st.cur_hi[b] = ghi;
                            self.emit(st, out);
                        }
                    }
                }
                for &q in &above[g..e] {
                    let x = self.p(q)[b];
                    if x < mlo {
                        glo = glo.max(x);
                    } else if x > mhi {
                        ghi = ghi.min(x);
                    } else {
                        return;
                    }
                }
                g = e;
            }
            st.cur_hi[a] = self.rhi[a];
            st.cur_lo[b] = glo;
            st.cur_hi[b] = ghi;
            self.emit(st, out);
        } else {
            // no constraint on the last axis yet: keep the slab's last-axis
            // coordinates sorted
            let mut ys: Vec<f64> = Vec::new();
            let mut g = 0;
            while g < above.len() {
                let v = self.p(above[g])[a];
                let e = g + above[g..].partition_point(|&i| self.p(i)[a] == v);
                if v > st.must_hi[a] {
                    for &q in &above[g..e] {
                        let qb = self.p(q)[b];
                        let pos = ys.partition_point(|&y| y < qb);
                        if pos < ys.len() && ys[pos] == qb {
                            continue;
                        }
                        st.cur_hi[a] = v;
                        st.cur_lo[b] = if pos > 0 { ys[pos - 1] } else { self.rlo[b] };
                        st.cur_hi[b] = ys.get(pos).copied().unwrap_or(self.rhi[b]);
                        self.emit(st, out);
                    }
                }
                for &q in &above[g..e] {
                    let x = self.p(q)[b];
                    let pos = ys.partition_point(|&y| y < x);
                    ys.insert(pos, x);
                }
                g = e;
            }
            st.cur_hi[a] = self.rhi[a];
            ys.dedup();
            let mut prev = self.rlo[b];
            for &y in ys.iter().chain(std::iter::once(&self.rhi[b])) {
                st.cur_lo[b] = prev;
                st.cur_hi[b] = y;
                self.emit(st, out);
                prev = y;
            }
        }
    }

    /// Planar boxes whose left face is blocked by a point, in time
    /// proportional to the output up to a log factor. Left faces are taken
    /// right to left; a min-tree over y-ranks holds the x of every point to
    /// the right, so the next point able to stop the right face is one query.
    fn planar_blocked(&self, order: &[u32], out: &mut Vec<f64>) {
        let mut by_y: Vec<u32> = order.to_vec();
        by_y.sort_by(|&x, &y| self.p(x)[1].total_cmp(&self.p(y)[1]));
        let ys: Vec<f64> = by_y.iter().map(|&i| self.p(i)[1]).collect();
        let mut rank = vec![0usize; order.len()];
        for (r, &i) in by_y.iter().enumerate() {
            rank[i as usize] = r;
        }
        let mut tree = MinTree::new(order.len());
        let mut g = order.len();
        while g > 0 {
            let v = self.p(order[g - 1])[0];
            let start = order[..g].partition_point(|&i| self.p(i)[0] < v);
            for &b in &order[start..g] {
                let py = self.p(b)[1];
                let (mut glo, mut ghi) = (self.rlo[1], self.rhi[1]);
                loop {
                    let lo = ys.partition_point(|&y| y <= glo);
                    let hi = ys.partition_point(|&y| y < ghi);
                    let Some(x) = tree.min(lo, hi) else {
                        out.extend_from_slice(&[v, glo, self.rhi[0], ghi]);
                        break;
                    };
                    let from = order.partition_point(|&i| self.p(i)[0] < x);
                    let to = order.partition_point(|&i| self.p(i)[0] <= x);
                    let group = order[from..to].iter().map(|&i| self.p(i)[1]).filter(|&y| glo < y && y < ghi);
                    let (mut nlo, mut nhi) = (glo, ghi);
                    let mut stopped = false;
                    for y in group {
                        out.extend_from_slice(&[v, glo, x, ghi]);
                        if y < py {
                            nlo = nlo.max(y);
                        } else if y > py {
                            nhi = nhi.min(y);
                        } else {
                            stopped = true;
                        }
                    }
                    if stopped {
                        break;
                    }
                    glo = nlo;
                    ghi = nhi;
                }
            }
            for &i in &order[start..g] {
                tree.set(rank[i as usize], v);
            }
            g = start;
        }
    }

    /// Maximal intervals on the last axis; `order` sorted by that axis.
    fn last_axis(&self, order: &[u32], st: &mut State, out: &mut Vec<f64>) {
        let a = self.d - 1;
        let (mlo, mhi) = (st.must_lo[a], st.must_hi[a]);
        if mlo <= mhi {
            let below = order.partition_point(|&i| self.p(i)[a] < mlo);
            st.cur_lo[a] = if below > 0 { self.p(order[below - 1])[a] } else { self.rlo[a] };
            let after = order.partition_point(|&i| self.p(i)[a] <= mhi);
            st.cur_hi[a] = order.get(after).map_or(self.rhi[a], |&i| self.p(i)[a]);
            self.emit(st, out);
        } else {
            let mut prev = self.rlo[a];
            for &i in order {
                let y = self.p(i)[a];
                if y > prev {
                    st.cur_lo[a] = prev;
                    st.cur_hi[a] = y;
                    self.emit(st, out);
                    prev = y;
                }
            }
            st.cur_lo[a] = prev;
            st.cur_hi[a] = self.rhi[a];
            self.emit(st, out);
        }
    }
}

/// Range minimum over a fixed number of slots, all `+inf` initially.
struct MinTree {
    size: usize,
    t: Vec<f64>,
}

impl MinTree {
    fn new(n: usize) -> Self {
        let size = n.next_power_of_two().max(1);
        Self {
            size,
            t: vec![f64::INFINITY; 2 * size],
        }
    }

    fn set(&mut self, i: usize, x: f64) {
        let mut i = i + self.size;
        self.t[i] = x;
        while i > 1 {
            i /= 2;
            self.t[i] = self.t[2 * i].min(self.t[2 * i + 1]);
        }
    }

    /// Minimum over slots `lo..hi`, `None` when empty or all `+inf`.
    fn min(&self, lo: usize, hi: usize) -> Option<f64> {
        let (mut l, mut r) = (lo + self.size, hi + self.size);
        let mut best = f64::INFINITY;
        while l < r {
            if l & 1 == 1 {
                best = best.min(self.t[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                best = best.min(self.t[r]);
            }
            l /= 2;
            r /= 2;
        }
        best.is_finite().then_some(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointgen::uniform_random;

    #[test]
    fn empty_set_gives_region() {
        for d in 1..=4 {
            let boxes = maximal_empty_boxes(&PointSet::empty(d), &OpenBox::unit(d)).unwrap();
            assert_eq!(boxes, vec![OpenBox::unit(d)]);
        }
    }

    #[test]
    fn single_center_point() {
        let p = PointSet::new(2, vec![vec![0.5, 0.5]]).unwrap();
        let boxes = maximal_empty_boxes(&p, &OpenBox::unit(2)).unwrap();
        assert_eq!(boxes.len(), 4);
        assert!(boxes.iter().all(|b| b.volume() == 0.5));
        let p = PointSet::new(3, vec![vec![0.5, 0.5, 0.5]]).unwrap();
        assert_eq!(maximal_empty_boxes(&p, &OpenBox::unit(3)).unwrap().len(), 6);
    }

    #[test]
    fn one_dimensional_gaps() {
        let p = PointSet::new(1, vec![vec![0.5], vec![0.25], vec![0.5]]).unwrap();
        let boxes = maximal_empty_boxes(&p, &OpenBox::unit(1)).unwrap();
        let spans: Vec<(f64, f64)> = boxes.iter().map(|b| (b.lo()[0], b.hi()[0])).collect();
        assert_eq!(spans, vec![(0.0, 0.25), (0.25, 0.5), (0.5, 1.0)]);
    }

    #[test]
    fn boxes_are_empty() {
        for seed in 0..20 {
            let p = uniform_random(15, 3, seed).unwrap();
            for b in maximal_empty_boxes(&p, &OpenBox::unit(3)).unwrap() {
                assert!(b.is_empty_of(&p).unwrap());
            }
        }
    }
}
