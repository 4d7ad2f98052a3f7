//! Acceptance checks, shared by the `verify` command and the acceptance
//! test target. Each criterion yields one pass/fail line.

use std::collections::HashMap;
use std::time::Instant;

use serde::Serialize;

use crate::approx::{approx_max_empty_box, approx_max_empty_cube, ApproxOptions, SearchResult, Strategy};
use crate::bounds::{algorithm_count_bounds, binomial, bounds_aprime, restricted_count_bounds};
use crate::cli::{execute, strip_wall_clock};
use crate::error::Result;
use crate::geometry::{OpenBox, PointSet};
use crate::gridcount::{all_box_counts, cell_counts, corner_counts, floor_index, GridSpec};
use crate::oracle::{
    enumerate_restricted_boxes, exact_max_empty_box, exact_max_empty_cube, exact_max_empty_rect_2d, is_maximal_empty,
    ScaleGuard,
};
use crate::pointgen::{
    default_margin, embed_in_unit_cube, grid_vertices, halton_hammersley, known_tight_config,
    restricted_lb_construction, uniform_random, van_der_corput, TightConfig,
};

/// Absolute slack on volume comparisons.
pub const TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    /// Random instances per `(d, n, eps)`.
    pub instances: usize,
    pub dims: Vec<usize>,
    pub sizes: Vec<usize>,
    pub epsilons: Vec<f64>,
    /// Halton sizes checked through the approximation.
    pub halton_approx_sizes: Vec<usize>,
    /// Point counts of the scaling check.
    pub scaling_sizes: Vec<usize>,
}

impl VerifyConfig {
    pub fn full() -> Self {
        Self {
            instances: 50,
            dims: vec![2, 3],
            sizes: vec![4, 8, 12],
            epsilons: vec![0.1, 0.25, 0.5],
            halton_approx_sizes: vec![64, 216],
            scaling_sizes: vec![1000, 2000, 4000],
        }
    }

    pub fn quick() -> Self {
        Self {
            instances: 4,
            halton_approx_sizes: vec![64],
            scaling_sizes: vec![250, 500, 1000],
            ..Self::full()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: f64,
}

/// Reported measurements that are not pass/fail criteria.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SoftOutcome {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub schema: u32,
    pub command: String,
    pub passed: bool,
    pub criteria: Vec<CriterionOutcome>,
    pub soft: Vec<SoftOutcome>,
}

impl Summary {
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self.criteria.iter().map(criterion_line).collect();
        out.extend(self.soft.iter().map(|s| {
            format!("soft [{}] {}: {}", if s.ok { "ok" } else { "note" }, s.name, s.detail)
        }));
        out
    }
}

pub fn criterion_line(c: &CriterionOutcome) -> String {
    format!(
        "criterion {:>2} [{}] {}: {} ({:.1} s)",
        c.id,
        if c.passed { "PASS" } else { "FAIL" },
        c.name,
        c.detail,
        c.elapsed_ms / 1e3
    )
}

/// Seed of the `i`-th random instance with `n` points in `d` dimensions.
pub fn instance_seed(d: usize, n: usize, i: usize) -> u64 {
    ((d as u64 * 1000 + n as u64) * 1000) + i as u64
}

/// Exact optima of the random instances, computed once.
#[derive(Default)]
pub struct Context {
    exact_box: HashMap<(usize, usize, usize), f64>,
    exact_cube: HashMap<(usize, usize, usize), f64>,
    /// `(n, V_exact)` for every instance where an exact box volume is known.
    pub exact_volumes: Vec<(usize, f64, String)>,
    /// `(k, d, canonical_boxes_enumerated)` of every box run of criterion 1.
    pub box_runs: Vec<(usize, usize, u64)>,
}

impl Context {
    fn instance(d: usize, n: usize, i: usize) -> PointSet {
        uniform_random(n, d, instance_seed(d, n, i)).expect("valid dimension")
    }

    fn exact_box(&mut self, d: usize, n: usize, i: usize) -> Result<f64> {
        if let Some(&v) = self.exact_box.get(&(d, n, i)) {
            return Ok(v);
        }
        let (_, v) = exact_max_empty_box(&Self::instance(d, n, i), ScaleGuard::default())?;
        self.exact_box.insert((d, n, i), v);
        self.exact_volumes.push((n, v, format!("uniform d={d} n={n} #{i}")));
        Ok(v)
    }

    fn exact_cube(&mut self, d: usize, n: usize, i: usize) -> Result<f64> {
        if let Some(&v) = self.exact_cube.get(&(d, n, i)) {
            return Ok(v);
        }
        let (_, v) = exact_max_empty_cube(&Self::instance(d, n, i), ScaleGuard::default())?;
        self.exact_cube.insert((d, n, i), v);
        Ok(v)
    }
}

fn timed(id: u32, name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> CriterionOutcome {
    let start = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionOutcome {
        id,
        name: name.to_string(),
        passed,
        detail,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn guarantee(ctx: &mut Context, cfg: &VerifyConfig, cube: bool) -> Result<(bool, String)> {
    let mut runs = 0;
    let mut failures = Vec::new();
    let mut worst = f64::INFINITY;
    for &d in &cfg.dims {
        for &n in &cfg.sizes {
            for i in 0..cfg.instances {
                let exact = if cube { ctx.exact_cube(d, n, i)? } else { ctx.exact_box(d, n, i)? };
                let pts = Context::instance(d, n, i);
                for &eps in &cfg.epsilons {
                    let opts = ApproxOptions::new(eps).seed((i % 5) as u64);
                    let r = if cube {
                        approx_max_empty_cube(&pts, &opts)?
                    } else {
                        approx_max_empty_box(&pts, &opts)?
                    };
                    if !cube {
                        ctx.box_runs.push((r.params.k, d, r.stats.canonical_boxes_enumerated));
                    }
                    runs += 1;
                    worst = worst.min(r.volume / exact / (1.0 - eps));
                    let empty = r.best_box.is_empty_of(&pts)?;
                    if !(r.volume >= (1.0 - eps) * exact - TOL && r.volume <= exact + TOL && empty) {
                        failures.push(format!("d={d} n={n} #{i} eps={eps}: {} vs exact {exact}", r.volume));
                    }
                }
            }
        }
    }
    let detail = format!(
        "{runs} runs, {} violations, min volume/((1-eps) exact) = {worst:.4}{}",
        failures.len(),
        failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
    );
    Ok((failures.is_empty(), detail))
}

fn van_der_corput_bound(ctx: &mut Context) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [8, 16, 32, 64, 128] {
        let (_, v) = exact_max_empty_rect_2d(&van_der_corput(n))?;
        ok &= v < 4.0 / n as f64;
        ctx.exact_volumes.push((n, v, format!("van der Corput n={n}")));
        parts.push(format!("n={n}: {:.4}*n", v * n as f64));
    }
    Ok((ok, format!("{} (bound 4)", parts.join(", "))))
}

fn halton_bound(ctx: &mut Context, cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [8, 10, 12] {
        let (_, v) = exact_max_empty_box(&halton_hammersley(n, 3)?, ScaleGuard::default())?;
        ok &= v < 24.0 / n as f64;
        ctx.exact_volumes.push((n, v, format!("Halton d=3 n={n}")));
        parts.push(format!("n={n}: exact {:.3}*n", v * n as f64));
    }
    let eps = 0.1;
    for &n in &cfg.halton_approx_sizes {
        let r = approx_max_empty_box(&halton_hammersley(n, 3)?, &ApproxOptions::new(eps))?;
        let upper = r.volume / (1.0 - eps);
        ok &= upper < 24.0 / n as f64;
        // the approximation certifies V_exact >= V_approx
        ctx.exact_volumes.push((n, r.volume, format!("Halton d=3 n={n} (approx, lower certificate)")));
        parts.push(format!("n={n}: approx/(1-eps) {:.3}*n", upper * n as f64));
    }
    Ok((ok, format!("{} (bound 24)", parts.join(", "))))
}

fn tight_configs() -> Result<(bool, String)> {
    let (_, a) = exact_max_empty_box(&known_tight_config(TightConfig::TwoPointXi), ScaleGuard::default())?;
    let (_, b) = exact_max_empty_box(&known_tight_config(TightConfig::FourPointQuarter), ScaleGuard::default())?;
    let xi = (3.0 - 5f64.sqrt()) / 2.0;
    let ok = (a - xi).abs() <= TOL && (b - 0.25).abs() <= TOL;
    Ok((ok, format!("two_point_xi {a:.15}, four_point_quarter {b:.15}")))
}

fn trivial_lower_bound(ctx: &Context) -> (bool, String) {
    let bad: Vec<&String> = ctx
        .exact_volumes
        .iter()
        .filter(|(n, v, _)| *v < 1.0 / (*n as f64 + 1.0))
        .map(|(_, _, name)| name)
        .collect();
    let min = ctx
        .exact_volumes
        .iter()
        .map(|(n, v, _)| v * (*n as f64 + 1.0))
        .fold(f64::INFINITY, f64::min);
    (
        bad.is_empty() && !ctx.exact_volumes.is_empty(),
        format!(
            "{} instances, min V*(n+1) = {min:.4}{}",
            ctx.exact_volumes.len(),
            bad.first().map(|b| format!("; first violation: {b}")).unwrap_or_default()
        ),
    )
}

fn hypercube_bounds() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for k in 1..=3 {
        let (_, v) = exact_max_empty_cube(&grid_vertices(k, 2)?, ScaleGuard::default())?;
        let want = 1.0 / ((k + 1) * (k + 1)) as f64;
        ok &= (v - want).abs() <= TOL;
        parts.push(format!("k={k}: {v}"));
    }
    let b = bounds_aprime(9, 2)?;
    ok &= b.lower == 1.0 / 16.0 && b.upper == 1.0 / 16.0;
    parts.push(format!("A'(9,2) in [{}, {}]", b.lower, b.upper));
    Ok((ok, parts.join(", ")))
}

fn restricted_sandwich() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for counts in [vec![2, 2], vec![3, 3], vec![2, 2, 2]] {
        let d = counts.len();
        let n: usize = counts.iter().sum();
        let pts = embed_in_unit_cube(&restricted_lb_construction(&counts)?, default_margin(n))?;
        let count = enumerate_restricted_boxes(&pts, &OpenBox::unit(d), ScaleGuard::default())?.len();
        let b = restricted_count_bounds(n, d)?;
        let inside = b.lower <= count as f64 && count as f64 <= b.upper;
        ok &= inside;
        parts.push(format!("{counts:?}: {} <= {count} <= {}", b.lower, b.upper));
    }
    let raw = restricted_lb_construction(&[3, 4])?;
    let region = OpenBox::new(vec![-5.0, -5.0], vec![5.0, 5.0])?;
    let fig = OpenBox::new(vec![-3.0, -3.0], vec![2.0, 3.0])?;
    let maximal = is_maximal_empty(&fig, &raw, &region)?;
    ok &= maximal;
    parts.push(format!("(-3,2)x(-3,3) maximal: {maximal}"));
    Ok((ok, parts.join(", ")))
}

/// Points with `j c <= p < (j + s) c` on every axis, counted directly.
fn naive_window_count(points: &PointSet, cells: &[f64], lower: &[usize], sizes: &[usize]) -> u64 {
    points
        .iter()
        .filter(|p| {
            (0..cells.len()).all(|i| {
                let lo = lower[i] as f64 * cells[i];
                let hi = (lower[i] + sizes[i]) as f64 * cells[i];
                lo <= p[i] && p[i] < hi
            })
        })
        .count() as u64
}

fn counting_equivalence(instances: usize) -> Result<(bool, String)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    for t in 0..instances {
        let d = 2 + t % 3;
        let n = rng.gen_range(0..=50);
        let pts = uniform_random(n, d, rng.gen())?;
        let max_cells = [0, 0, 40, 14, 7][d];
        let cells: Vec<f64> = (0..d).map(|_| 1.0 / rng.gen_range(1.0..max_cells as f64)).collect();
        let grid = GridSpec::new(cells.clone())?;
        let sizes: Vec<usize> = grid.extents().iter().map(|&e| rng.gen_range(1..=e)).collect();
        let windows = all_box_counts(&corner_counts(&cell_counts(&pts, &grid)?)?, &sizes)?;
        let shape = windows.shape().to_vec();
        let mut idx = vec![0usize; d];
        'scan: loop {
            checked += 1;
            if windows.get(&idx) != naive_window_count(&pts, &cells, &idx, &sizes) {
                mismatches += 1;
            }
            for axis in (0..d).rev() {
                idx[axis] += 1;
                if idx[axis] < shape[axis] {
                    continue 'scan;
                }
                idx[axis] = 0;
            }
            break;
        }
        debug_assert!(pts.iter().all(|p| (0..d).all(|i| (floor_index(p[i], cells[i]) as usize) < grid.extents()[i])));
    }
    Ok((
        mismatches == 0,
        format!("{instances} instances, {checked} windows, {mismatches} mismatches"),
    ))
}

fn stats_bounds(ctx: &Context) -> Result<(bool, String)> {
    let mut ok = !ctx.box_runs.is_empty();
    let mut worst: f64 = 0.0;
    for &(k, d, canonical) in &ctx.box_runs {
        let bound = binomial((k + d) as u64, d as u64);
        let bound: f64 = bound.to_string().parse().unwrap_or(f64::INFINITY);
        ok &= (canonical as f64) <= bound;
        worst = worst.max(canonical as f64 / bound);
    }
    let (n, d, eps) = (100, 3, 0.5);
    let pts = uniform_random(n, d, instance_seed(d, n, 0))?;
    let r: SearchResult = approx_max_empty_box(&pts, &ApproxOptions::new(eps).strategy(Strategy::Grid))?;
    let b = algorithm_count_bounds(n, d, eps)?;
    let canon_cf = b.canonical_closed_form.unwrap_or(f64::INFINITY);
    let place_cf = b.placement_closed_form.unwrap_or(f64::INFINITY);
    let exact_c: f64 = binomial((r.params.k + d) as u64, d as u64).to_string().parse().unwrap_or(f64::INFINITY);
    ok &= (r.stats.canonical_boxes_enumerated as f64) <= canon_cf.min(exact_c);
    ok &= (r.stats.max_placements_per_box as f64) <= place_cf;
    Ok((
        ok,
        format!(
            "{} runs, max canonical/C(k+d,d) = {worst:.3}; n=100 d=3 eps=0.5: canonical {} <= {:.0}, per-grid placements {} <= {:.0}",
            ctx.box_runs.len(),
            r.stats.canonical_boxes_enumerated,
            canon_cf.min(exact_c),
            r.stats.max_placements_per_box,
            place_cf
        ),
    ))
}

fn determinism() -> Result<(bool, String)> {
    let pts = uniform_random(60, 3, 11)?;
    let mut csv = String::from("x,y,z\n");
    for p in pts.iter() {
        csv += &format!("{:?},{:?},{:?}\n", p[0], p[1], p[2]);
    }
    let path = std::env::temp_dir().join(format!("maxempty-determinism-{}.csv", std::process::id()));
    std::fs::write(&path, csv).map_err(|e| crate::Error::Io(e.to_string()))?;
    let file = path.to_string_lossy().to_string();
    let run = |threads: &str| {
        execute([
            "maxempty", "approx-box", "--input", &file, "--epsilon", "0.25", "--seed", "7", "--threads", threads,
        ])
    };
    let (a, b) = (run("1"), run("3"));
    let _ = std::fs::remove_file(&path);
    if a.code != 0 || b.code != 0 {
        return Ok((false, format!("exit codes {} and {}: {}{}", a.code, b.code, a.stderr, b.stderr)));
    }
    let same = strip_wall_clock(&a.stdout)? == strip_wall_clock(&b.stdout)?;
    // also byte-level: lines other than wall-clock ones must match exactly
    let keep = |s: &str| -> Vec<String> {
        s.lines()
            .filter(|l| !l.contains("\"duration_ms\"") && !l.contains("\"elapsed_ms\""))
            .map(String::from)
            .collect()
    };
    let bytes = keep(&a.stdout) == keep(&b.stdout);
    Ok((same && bytes, format!("threads 1 vs 3: reports identical = {}", same && bytes)))
}

fn scaling(cfg: &VerifyConfig) -> Result<SoftOutcome> {
    let mut times = Vec::new();
    for &n in &cfg.scaling_sizes {
        let pts = uniform_random(n, 2, n as u64)?;
        let mut best = f64::INFINITY;
        for _ in 0..3 {
            let start = Instant::now();
            approx_max_empty_box(&pts, &ApproxOptions::new(0.25))?;
            best = best.min(start.elapsed().as_secs_f64());
        }
        times.push(best);
    }
    let ratios: Vec<f64> = times.windows(2).map(|w| w[1] / w[0]).collect();
    Ok(SoftOutcome {
        name: "near-linear scaling, d=2, eps=0.25".into(),
        ok: ratios.iter().all(|&r| r < 4.0),
        detail: format!(
            "n={:?}: {} ms; doubling ratios {:?}",
            cfg.scaling_sizes,
            times.iter().map(|t| format!("{:.1}", t * 1e3)).collect::<Vec<_>>().join(" / "),
            ratios.iter().map(|r| (r * 100.0).round() / 100.0).collect::<Vec<_>>()
        ),
    })
}

fn monotonicity(cfg: &VerifyConfig) -> Result<SoftOutcome> {
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for &d in &cfg.dims {
        for &n in &cfg.sizes {
            for i in 0..cfg.instances {
                let pts = Context::instance(d, n, i);
                let mut prev: Option<(f64, f64)> = None;
                let mut eps: Vec<f64> = cfg.epsilons.clone();
                eps.sort_by(|a, b| b.total_cmp(a));
                for e in eps {
                    let v = approx_max_empty_box(&pts, &ApproxOptions::new(e).jitter(false))?.volume;
                    if let Some((pe, pv)) = prev {
                        checked += 1;
                        if v < pv - TOL {
                            counterexamples.push(format!("d={d} n={n} #{i}: eps {pe} -> {pv}, eps {e} -> {v}"));
                        }
                    }
                    prev = Some((e, v));
                }
            }
        }
    }
    Ok(SoftOutcome {
        name: "volume monotone in eps (jitter off)".into(),
        ok: counterexamples.is_empty(),
        detail: format!(
            "{checked} comparisons, {} counterexamples{}",
            counterexamples.len(),
            counterexamples.first().map(|c| format!("; first: {c}")).unwrap_or_default()
        ),
    })
}

/// Runs criterion `id` (1 to 11) in isolation.
pub fn run_one(id: u32, cfg: &VerifyConfig) -> CriterionOutcome {
    let mut ctx = Context::default();
    match id {
        1..=6 | 10 => {
            let all = run_criteria(cfg, &mut ctx);
            all.into_iter().find(|c| c.id == id).expect("known criterion")
        }
        _ => run_independent(id, cfg),
    }
}

fn run_independent(id: u32, cfg: &VerifyConfig) -> CriterionOutcome {
    match id {
        7 => timed(7, "hypercube bounds", hypercube_bounds),
        8 => timed(8, "restricted-count sandwich", restricted_sandwich),
        9 => timed(9, "counting machinery equals naive counts", || {
            counting_equivalence(if cfg.instances >= 50 { 200 } else { 40 })
        }),
        11 => timed(11, "determinism across thread counts", determinism),
        _ => CriterionOutcome {
            id,
            name: "unknown".into(),
            passed: false,
            detail: "no such criterion".into(),
            elapsed_ms: 0.0,
        },
    }
}

fn run_criteria(cfg: &VerifyConfig, ctx: &mut Context) -> Vec<CriterionOutcome> {
    vec![
        timed(1, "approximation guarantee (box)", || guarantee(ctx, cfg, false)),
        timed(2, "approximation guarantee (hypercube)", || guarantee(ctx, cfg, true)),
        timed(3, "van der Corput bound 4/n", || van_der_corput_bound(ctx)),
        timed(4, "Halton-Hammersley bound 24/n", || halton_bound(ctx, cfg)),
        timed(5, "tight configurations", tight_configs),
        timed(6, "trivial lower bound 1/(n+1)", || Ok(trivial_lower_bound(ctx))),
        timed(10, "stats within counting bounds", || stats_bounds(ctx)),
    ]
}

/// Runs every criterion and the soft checks.
pub fn run_all(cfg: &VerifyConfig) -> Summary {
    let mut ctx = Context::default();
    let mut criteria = run_criteria(cfg, &mut ctx);
    for id in [7, 8, 9, 11] {
        criteria.push(run_independent(id, cfg));
    }
    criteria.sort_by_key(|c| c.id);
    let soft = [scaling(cfg), monotonicity(cfg)]
        .into_iter()
        .map(|s| {
            s.unwrap_or_else(|e| SoftOutcome {
                name: "soft check".into(),
                ok: false,
                detail: format!("error: {e}"),
            })
        })
        .collect();
    Summary {
        schema: crate::cli::SCHEMA,
        command: "verify".into(),
        passed: criteria.iter().all(|c| c.passed),
        criteria,
        soft,
    }
}
