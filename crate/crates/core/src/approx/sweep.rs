//! Placement search through the maximal empty boxes of the input.
//!
//! A half-open window `[jc, (j+m)c)` is free of interior points exactly when
//! some maximal empty box `(L, H)` has `L < jc` (or `L = jc = 0`) and
//! `(j+m)c <= H` on every axis. So the smallest admissible anchor of a box on
//! an axis is `floor_index(L, c) + 1` (or 0 on the cube face), and a
//! canonical tuple fits a maximal box iff that anchor fits on every axis.

use std::collections::HashSet;

use rayon::prelude::*;

use super::{placement_box, ApproxParams, Found};
use crate::error::Result;
use crate::geometry::{OpenBox, PointSet};
use crate::gridcount::floor_index;
use crate::maximal::{maximal_empty_boxes_raw, BoxList, BoxListRef};

const CHUNK: usize = 4096;

pub(crate) struct SweepOutcome {
    pub(crate) found: Option<Found>,
    pub(crate) tuples: HashSet<Vec<usize>>,
    pub(crate) boxes: u64,
}

fn axis_anchor(lo: f64, hi: f64, c: f64, m: usize) -> Option<u64> {
    let j = if lo == 0.0 { 0 } else { floor_index(lo, c) + 1 };
    (((j + m as u64) as f64) * c <= hi).then_some(j)
}

fn fits(params: &ApproxParams, lo: f64, hi: f64, y: usize) -> bool {
    axis_anchor(lo, hi, params.cell(y), params.m).is_some()
}

/// Largest exponent placeable on one axis of a maximal box.
fn axis_top(params: &ApproxParams, lo: f64, hi: f64) -> Option<usize> {
    let start = params.top_exponent_fitting(hi - lo)?;
    (0..=start).rev().find(|&y| fits(params, lo, hi, y))
}

/// Prefers the larger exponent sum, then the smaller tuple.
fn better(a: Option<(usize, Vec<usize>)>, b: Option<(usize, Vec<usize>)>) -> Option<(usize, Vec<usize>)> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a }),
        (a, b) => a.or(b),
    }
}

type Partial = (Option<(usize, Vec<usize>)>, HashSet<Vec<usize>>);

fn merge(mut a: Partial, b: Partial) -> Partial {
    a.1.extend(b.1);
    (better(a.0, b.0), a.1)
}

fn scan(boxes: &BoxList, per_chunk: impl Fn(BoxListRef<'_>) -> Partial + Sync + Send) -> Partial {
    let chunks: Vec<BoxListRef<'_>> = boxes.chunks(CHUNK).collect();
    chunks
        .into_par_iter()
        .map(per_chunk)
        .reduce(|| (None, HashSet::new()), merge)
}

/// Lexicographically smallest anchor of tuple `y` over all maximal boxes.
fn smallest_anchor(boxes: &BoxList, params: &ApproxParams, y: &[usize]) -> Option<Vec<u64>> {
    let chunks: Vec<BoxListRef<'_>> = boxes.chunks(CHUNK).collect();
    chunks
        .into_par_iter()
        .filter_map(|chunk| {
            chunk
                .iter()
                .filter_map(|(lo, hi)| {
                    y.iter()
                        .enumerate()
                        .map(|(i, &yi)| axis_anchor(lo[i], hi[i], params.cell(yi), params.m))
                        .collect::<Option<Vec<u64>>>()
                })
                .min()
        })
        .min()
}

fn outcome(boxes: &BoxList, params: &ApproxParams, partial: Partial) -> SweepOutcome {
    let found = partial.0.map(|(_, y)| {
        let anchor = smallest_anchor(boxes, params, &y).expect("tuple came from a hosting box");
        Found {
            bx: placement_box(params, &y, &anchor),
            exponents: y,
            anchor,
        }
    });
    SweepOutcome {
        found,
        tuples: partial.1,
        boxes: boxes.len() as u64,
    }
}

pub(crate) fn box_search(points: &PointSet, params: &ApproxParams) -> Result<SweepOutcome> {
    let boxes = maximal_empty_boxes_raw(points, &OpenBox::unit(params.d))?;
    let min_sum = params.min_sum();
    let partial = scan(&boxes, |chunk| {
        let mut best = None;
        let mut seen = HashSet::new();
        for (lo, hi) in chunk.iter() {
            let Some(t) = (0..params.d).map(|i| axis_top(params, lo[i], hi[i])).collect::<Option<Vec<usize>>>() else {
                continue;
            };
            let s: usize = t.iter().sum();
            if (s as i64) < min_sum {
                continue;
            }
            if !seen.contains(&t) {
                seen.insert(t.clone());
            }
            best = better(best, Some((s, t)));
        }
        (best, seen)
    });
    Ok(outcome(&boxes, params, partial))
}

pub(crate) fn cube_search(points: &PointSet, params: &ApproxParams) -> Result<SweepOutcome> {
    let boxes = maximal_empty_boxes_raw(points, &OpenBox::unit(params.d))?;
    let partial = scan(&boxes, |chunk| {
        let mut best = None;
        let mut seen = HashSet::new();
        for (lo, hi) in chunk.iter() {
            let len = (0..params.d).map(|i| hi[i] - lo[i]).fold(f64::INFINITY, f64::min);
            let Some(start) = params.top_exponent_fitting(len) else {
                continue;
            };
            let Some(y) = (0..=start).rev().find(|&y| (0..params.d).all(|i| fits(params, lo[i], hi[i], y))) else {
                continue;
            };
            let t = vec![y; params.d];
            if !seen.contains(&t) {
                seen.insert(t.clone());
            }
            best = better(best, Some((y * params.d, t)));
        }
        (best, seen)
    });
    Ok(outcome(&boxes, params, partial))
}
