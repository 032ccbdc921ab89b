//! Seeded minimization over weights and configurations.
//!
//! The inner problem (best constant for a fixed configuration) minimizes the
//! nonsmooth ratio `I1/I2` over the unit sphere of weight vectors with a
//! multi-start projected subgradient descent followed by a compass-search
//! polish. The outer problems walk configuration space with simulated
//! annealing, calling the inner solver at every step. Every stochastic piece
//! draws from a substream derived from `(seed, restart index)`, so results
//! are identical across runs and thread counts; merging picks the smallest
//! value with ties broken by restart index.
//!
//! Search results are evidence, not certificates: a strictly positive best
//! value is consistent with the inequality but proves nothing, and a zero
//! would only be a candidate counterexample to re-examine at higher
//! precision.

use crate::error::{Error, Result};
use crate::forms::{
    eval_forms_kernel, ratio_subgradient_kernel, soft_ratio_gradient_kernel, Kernel,
};
use crate::geometry::{normalize_config, PointConfig, SphereConfig};
use crate::rng::{Halton, Rng};
use crate::scalar::{dot, norm, normalized, Real};
use crate::systems::{sphere_spectrum, sphere_system};

const SALT_MIN_U: u64 = 0x4d49_4e55;
const SALT_MIN_CRIT: u64 = 0x4d43_5249;
const SALT_MIN_AUG: u64 = 0x4d41_5547;
const SALT_EST_C: u64 = 0x4553_5443;
const SALT_SIGMA: u64 = 0x5349_474d;
const SALT_STRESS: u64 = 0x5354_5253;

/// Outcome of a unit-sphere minimization.
#[derive(Debug, Clone)]
pub struct MinimizeOutcome<S> {
    pub point: Vec<S>,
    pub value: S,
    /// Strictly improving `(iteration, best-so-far)` events across restarts.
    pub history: Vec<(usize, S)>,
    /// Descent iterations actually executed, summed over restarts.
    pub iterations: usize,
}

/// Inner-solver budget used inside the outer annealing walks.
const INNER_RESTARTS: usize = 2;
const INNER_MAX_ITERS: usize = 200;
/// Compass polish: initial and final poll radius.
const POLISH_H0: f64 = 0.1;
const POLISH_H_MIN: f64 = 1e-9;
const POLISH_MAX_ROUNDS: usize = 600;
/// Rejection-sampling attempt cap for feasible configurations.
const SAMPLE_ATTEMPTS: usize = 100_000;

/// Temperature schedule for the annealing walks.
#[derive(Debug, Clone, Copy)]
pub struct AnnealingSchedule<S> {
    pub initial_temperature: S,
    /// Multiplicative decay per step, in `(0, 1)`.
    pub decay: S,
}

/// Options shared by all searches.
///
/// `threads` controls execution only; reports are identical for any value.
#[derive(Debug, Clone)]
pub struct SearchOptions<S> {
    pub seed: u64,
    pub restarts: usize,
    pub max_iters: usize,
    pub step_init: S,
    /// Distinctness floor: minimum pairwise distance (chord, on spheres).
    pub min_separation: S,
    /// Diameter cap for configurations in the normalized gauge.
    pub max_diameter: S,
    pub annealing: AnnealingSchedule<S>,
    /// Convergence threshold on objective change.
    pub tolerance: S,
    /// Smooth-max temperature for the ratio descent direction; `None`
    /// (default) steps with the exact sup's active-index subgradient.
    /// Reported values always use the exact sup either way.
    pub soft_sup: Option<S>,
    pub threads: usize,
}

impl<S: Real> Default for SearchOptions<S> {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            restarts: 8,
            max_iters: 500,
            step_init: S::of(0.3),
            min_separation: S::of(0.05),
            max_diameter: S::of(20.0),
            annealing: AnnealingSchedule {
                initial_temperature: S::of(0.5),
                decay: S::of(0.95),
            },
            tolerance: S::of(1e-12),
            soft_sup: None,
            threads: 1,
        }
    }
}

impl<S: Real> SearchOptions<S> {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidOptions("restarts must be at least 1"));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidOptions("max_iters must be at least 1"));
        }
        if !(self.step_init > S::zero()) {
            return Err(Error::InvalidOptions("step_init must be positive"));
        }
        if !(self.min_separation > S::zero()) {
            return Err(Error::InvalidOptions("min_separation must be positive"));
        }
        if !(self.min_separation < self.max_diameter) {
            return Err(Error::InvalidOptions(
                "min_separation must be below max_diameter",
            ));
        }
        let d = self.annealing.decay;
        if !(d > S::zero() && d < S::one()) {
            return Err(Error::InvalidOptions("annealing decay must lie in (0, 1)"));
        }
        if !(self.annealing.initial_temperature > S::zero()) {
            return Err(Error::InvalidOptions(
                "initial temperature must be positive",
            ));
        }
        if self.tolerance < S::zero() {
            return Err(Error::InvalidOptions("tolerance must be nonnegative"));
        }
        if let Some(t) = self.soft_sup {
            if !(t > S::zero()) {
                return Err(Error::InvalidOptions(
                    "soft_sup temperature must be positive",
                ));
            }
        }
        if self.threads == 0 {
            return Err(Error::InvalidOptions("threads must be at least 1"));
        }
        Ok(())
    }

    fn inner(&self, seed: u64) -> Self {
        SearchOptions {
            seed,
            restarts: INNER_RESTARTS,
            max_iters: INNER_MAX_ITERS,
            step_init: S::of(0.3),
            threads: 1,
            ..self.clone()
        }
    }
}

/// Which objective a report minimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveKind {
    MinRatio,
    MinSigma,
}

impl ObjectiveKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ObjectiveKind::MinRatio => "min-ratio",
            ObjectiveKind::MinSigma => "min-sigma",
        }
    }
}

/// Configuration kind carried by a report.
#[derive(Debug, Clone)]
pub enum SearchConfig<S> {
    Euclidean(PointConfig<S>),
    Sphere(SphereConfig<S>),
}

/// Outcome of a seeded search with provenance for reproduction.
#[derive(Debug, Clone)]
pub struct SearchReport<S> {
    pub seed: u64,
    pub objective_kind: ObjectiveKind,
    pub best_value: S,
    pub best_config: SearchConfig<S>,
    pub best_weights: Option<Vec<S>>,
    pub iterations_used: usize,
    /// Strictly improving `(iteration, best-so-far)` events.
    pub history: Vec<(usize, S)>,
}

// ---------------------------------------------------------------------------
// Unit-sphere minimization engine
// ---------------------------------------------------------------------------

struct DescentOutcome<S> {
    point: Vec<S>,
    value: S,
    events: Vec<(usize, S)>,
    iterations: usize,
}

/// Projected subgradient descent on the unit sphere with normalized
/// directions and a geometric step decay fixed by the iteration budget.
fn descend_on_sphere<S: Real>(
    f: &dyn Fn(&[S]) -> S,
    g: &dyn Fn(&[S]) -> Vec<S>,
    start: Vec<S>,
    max_iters: usize,
    step_init: S,
    tolerance: S,
) -> DescentOutcome<S> {
    let mut u = start;
    let mut best = f(&u);
    let mut best_u = u.clone();
    let mut events = vec![(0usize, best)];
    let step_floor = S::of(1e-10);
    let decay = (step_floor / step_init)
        .powf(S::one() / S::from_usize(max_iters.max(2) - 1).unwrap())
        .min(S::one());
    let mut step = step_init;
    let mut stall = 0usize;
    let mut executed = 0usize;

    for iter in 1..=max_iters {
        executed = iter;
        let grad = g(&u);
        let radial = dot(&grad, &u);
        let tangent: Vec<S> = grad
            .iter()
            .zip(u.iter())
            .map(|(&gk, &uk)| gk - radial * uk)
            .collect();
        let tnorm = norm(&tangent);
        if !(tnorm > S::zero()) || !tnorm.is_finite() {
            break;
        }
        let moved: Vec<S> = u
            .iter()
            .zip(tangent.iter())
            .map(|(&uk, &tk)| uk - step * tk / tnorm)
            .collect();
        match normalized(&moved) {
            Some(next) => u = next,
            None => break,
        }
        let val = f(&u);
        if val.is_finite() && val < best - tolerance * (S::one() + best.abs()) {
            best = val;
            best_u = u.clone();
            events.push((iter, val));
            stall = 0;
        } else {
            stall += 1;
            if val.is_finite() && val < best {
                best = val;
                best_u = u.clone();
            }
        }
        step = step * decay;
        if stall > 150 {
            break;
        }
    }
    DescentOutcome {
        point: best_u,
        value: best,
        events,
        iterations: executed,
    }
}

/// Compass search on the unit sphere: poll axis perturbations, keep the best
/// improvement of each round, halve the radius on failure.
fn compass_polish<S: Real>(f: &dyn Fn(&[S]) -> S, start: Vec<S>, value: S) -> (Vec<S>, S) {
    let dim = start.len();
    let mut u = start;
    let mut best = value;
    let mut h = S::of(POLISH_H0);
    let h_min = S::of(POLISH_H_MIN);
    let half = S::of(0.5);
    for _ in 0..POLISH_MAX_ROUNDS {
        if h < h_min {
            break;
        }
        let mut round_best = best;
        let mut round_u: Option<Vec<S>> = None;
        for k in 0..dim {
            for &sgn in &[S::one(), -S::one()] {
                let mut cand = u.clone();
                cand[k] = cand[k] + sgn * h;
                let Some(cand) = normalized(&cand) else {
                    continue;
                };
                let val = f(&cand);
                if val.is_finite() && val < round_best {
                    round_best = val;
                    round_u = Some(cand);
                }
            }
        }
        match round_u {
            Some(next) => {
                u = next;
                best = round_best;
            }
            None => h = h * half,
        }
    }
    (u, best)
}

/// Run `count` independent jobs over `threads` workers with a deterministic
/// index-ordered result; job `i` must depend only on `i`.
fn run_indexed<T: Send, F>(count: usize, threads: usize, job: F) -> Vec<T>
where
    F: Fn(usize) -> T + Sync,
{
    let threads = threads.max(1).min(count.max(1));
    if threads <= 1 || count <= 1 {
        return (0..count).map(job).collect();
    }
    let mut slots: Vec<Option<T>> = (0..count).map(|_| None).collect();
    let job = &job;
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in 0..threads {
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                let mut i = t;
                while i < count {
                    out.push((i, job(i)));
                    i += threads;
                }
                out
            }));
        }
        for h in handles {
            for (i, val) in h.join().expect("search worker panicked") {
                slots[i] = Some(val);
            }
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("all jobs complete"))
        .collect()
}

struct RestartResult<S> {
    point: Vec<S>,
    value: S,
    events: Vec<(usize, S)>,
    iterations: usize,
}

/// Multi-start descent + polish over the unit sphere in `R^dim`.
fn multi_start_on_sphere<S: Real>(
    dim: usize,
    opts: &SearchOptions<S>,
    salt: u64,
    f: &(dyn Fn(&[S]) -> S + Sync),
    g: &(dyn Fn(&[S]) -> Vec<S> + Sync),
) -> Result<MinimizeOutcome<S>> {
    let results: Vec<RestartResult<S>> = run_indexed(opts.restarts, opts.threads, |r| {
        let mut rng = Rng::substream(opts.seed, &[salt, r as u64]);
        // Screen a small batch and descend from its best member; the ratio
        // landscape grows extra basins with the dimension.
        let screen = 16 * dim;
        let mut start = rng.unit_vector(dim);
        let mut start_val = f(&start);
        for _ in 1..screen {
            let cand = rng.unit_vector(dim);
            let val = f(&cand);
            if val.is_finite() && val < start_val {
                start = cand;
                start_val = val;
            }
        }
        let out = descend_on_sphere(f, g, start, opts.max_iters, opts.step_init, opts.tolerance);
        let iterations = out.iterations;
        let (point, value) = compass_polish(f, out.point, out.value);
        let mut events = out.events;
        if value < out.value {
            events.push((opts.max_iters + 1, value));
        }
        RestartResult {
            point,
            value,
            events,
            iterations,
        }
    });

    let mut best: Option<usize> = None;
    for (r, res) in results.iter().enumerate() {
        if !res.value.is_finite() {
            continue;
        }
        match best {
            None => best = Some(r),
            Some(b) if res.value < results[b].value => best = Some(r),
            _ => {}
        }
    }
    let Some(winner) = best else {
        return Err(Error::ConvergenceFailure);
    };
    let history = merge_histories(results.iter().map(|r| r.events.as_slice()));
    let iterations = results.iter().map(|r| r.iterations).sum();
    let res = &results[winner];
    Ok(MinimizeOutcome {
        point: res.point.clone(),
        value: res.value,
        history,
        iterations,
    })
}

/// Merge per-restart improvement traces into the global strictly-improving
/// best-so-far trace, ordered by iteration with restart index as tiebreak.
fn merge_histories<'a, S: Real>(chains: impl Iterator<Item = &'a [(usize, S)]>) -> Vec<(usize, S)> {
    let mut all: Vec<(usize, usize, S)> = Vec::new();
    for (c, events) in chains.enumerate() {
        for &(it, v) in events {
            all.push((it, c, v));
        }
    }
    all.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut out: Vec<(usize, S)> = Vec::new();
    for (it, _, v) in all {
        if out.last().is_none_or(|&(_, best)| v < best) {
            out.push((it, v));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Inner minimizations for a fixed configuration
// ---------------------------------------------------------------------------

/// Smallest ratio `I1/I2` over unit weight vectors found by multi-start
/// projected subgradient descent with a compass polish.
pub fn min_ratio_over_u<S: Real>(
    config: &PointConfig<S>,
    opts: &SearchOptions<S>,
) -> Result<(Vec<S>, S)> {
    let out = min_ratio_over_u_with_history(config, opts)?;
    Ok((out.point, out.value))
}

/// As [`min_ratio_over_u`], also returning the improvement history.
pub fn min_ratio_over_u_with_history<S: Real>(
    config: &PointConfig<S>,
    opts: &SearchOptions<S>,
) -> Result<MinimizeOutcome<S>> {
    opts.validate()?;
    let kernel = Kernel::new(config);
    let f = move |u: &[S]| eval_forms_kernel(&kernel, u).ratio;
    let kernel_g = Kernel::new(config);
    let soft = opts.soft_sup;
    let g = move |u: &[S]| match soft {
        Some(temp) => soft_ratio_gradient_kernel(&kernel_g, u, temp),
        None => ratio_subgradient_kernel(&kernel_g, u),
    };
    multi_start_on_sphere(config.p(), opts, SALT_MIN_U, &f, &g)
}

/// Minimum of a function over `samples` low-discrepancy unit vectors,
/// polishing the ten best candidates by compass search. Returns the best
/// point and value; an upper bound on the true infimum. Panics for
/// `dim > 8` (the Halton base table ends there).
pub fn brute_force_min_on_sphere<S: Real>(
    dim: usize,
    samples: usize,
    f: &dyn Fn(&[S]) -> S,
) -> (Vec<S>, S) {
    const KEEP: usize = 10;
    let mut halton = Halton::new(dim);
    let mut top: Vec<(S, Vec<S>)> = Vec::with_capacity(KEEP + 1);
    for _ in 0..samples.max(1) {
        let u: Vec<S> = halton.next_unit_vector();
        let val = f(&u);
        if !val.is_finite() {
            continue;
        }
        if top.len() < KEEP || val < top.last().expect("nonempty").0 {
            let pos = top.partition_point(|(v, _)| *v <= val);
            top.insert(pos, (val, u));
            if top.len() > KEEP {
                top.pop();
            }
        }
    }
    if top.is_empty() {
        let mut fallback = vec![S::zero(); dim];
        fallback[0] = S::one();
        return (fallback, S::infinity());
    }
    let mut best_u = top[0].1.clone();
    let mut best = top[0].0;
    for (val, u) in top {
        let (pu, pv) = compass_polish(f, u, val);
        if pv < best {
            best = pv;
            best_u = pu;
        }
    }
    (best_u, best)
}

/// Brute-force oracle for the ratio minimum (quasi-random sampling plus
/// polish, no gradients). Capped at `p ≤ 5`.
pub fn brute_force_min_ratio<S: Real>(config: &PointConfig<S>, samples: usize) -> Result<S> {
    if config.p() > 5 {
        return Err(Error::TooManyPoints {
            found: config.p(),
            max: 5,
        });
    }
    let kernel = Kernel::new(config);
    let f = move |u: &[S]| eval_forms_kernel(&kernel, u).ratio;
    let (_, value) = brute_force_min_on_sphere(config.p(), samples, &f);
    Ok(value)
}

/// Minimize the combined squared critical residual `|r1(u)|² + |r2(u)|²`
/// over unit `u`. A zero would witness a non-zero critical solution.
pub fn min_critical_residual<S: Real>(
    config: &PointConfig<S>,
    opts: &SearchOptions<S>,
) -> Result<(Vec<S>, S)> {
    opts.validate()?;
    let p = config.p();
    let kernel = Kernel::new(config);
    let kernel_g = Kernel::new(config);

    let f = move |u: &[S]| critical_objective(&kernel, u);
    let g = move |u: &[S]| {
        let two = S::of(2.0);
        let r1 = kernel_g.au(u);
        let mut grad = kernel_g.au(&r1);
        for gk in grad.iter_mut() {
            *gk = two * *gk;
        }
        let sums: Vec<Vec<S>> = (0..p).map(|i| kernel_g.gradient_sum(i, u)).collect();
        for k in 0..p {
            // d/du_k of Σ_i |u_i s_i(u)|².
            let mut acc = u[k] * dot(&sums[k], &sums[k]);
            for i in 0..p {
                if i == k {
                    continue;
                }
                let w = kernel_g.direction_weight(i, k);
                acc = acc + u[i] * u[i] * dot(&sums[i], w);
            }
            grad[k] = grad[k] + two * acc;
        }
        grad
    };
    let out = multi_start_on_sphere(p, opts, SALT_MIN_CRIT, &f, &g)?;
    Ok((out.point, out.value))
}

/// Threshold below which a minimized critical residual counts as a
/// numerical non-zero solution: `(rel_tol · ‖A‖_F)²`, squared because the
/// objective is the squared residual. Pass
/// `crate::systems::NULL_DECISION_REL_TOL` for the default.
pub fn critical_residual_threshold<S: Real>(config: &PointConfig<S>, rel_tol: S) -> S {
    let a = crate::forms::interaction_matrix(config);
    let t = rel_tol * a.frobenius_norm();
    t * t
}

fn critical_objective<S: Real>(kernel: &Kernel<S>, u: &[S]) -> S {
    let r1 = kernel.au(u);
    let mut acc = dot(&r1, &r1);
    for i in 0..u.len() {
        let s = kernel.gradient_sum(i, u);
        acc = acc + u[i] * u[i] * dot(&s, &s);
    }
    acc
}

/// Minimize the augmented quotient over unit `(u, ũ_p)`; estimates the
/// inductive infimum where the `p`-th point sits at infinity.
pub fn min_augmented_ratio<S: Real>(
    points: &[Vec<S>],
    opts: &SearchOptions<S>,
) -> Result<(Vec<S>, S)> {
    opts.validate()?;
    let config = PointConfig::new(points.to_vec())?;
    let n = config.p();
    let kernel = Kernel::new(&config);
    let kernel_g = Kernel::new(&config);

    let f = move |z: &[S]| augmented_objective(&kernel, z);
    let g = move |z: &[S]| augmented_subgradient(&kernel_g, z);
    let out = multi_start_on_sphere(n + 1, opts, SALT_MIN_AUG, &f, &g)?;
    Ok((out.point, out.value))
}

fn augmented_objective<S: Real>(kernel: &Kernel<S>, z: &[S]) -> S {
    let n = kernel.p();
    let (u, up) = (&z[..n], z[n]);
    let rows = kernel.au(u);
    let two = S::of(2.0);
    let mut numerator = S::zero();
    for &r in &rows {
        let row = r + up;
        numerator = numerator + row * row;
    }
    let mut sup = S::zero();
    for i in 0..n {
        let s = kernel.gradient_sum(i, u);
        let t = (u[i] * norm(&s)).abs();
        if t > sup {
            sup = t;
        }
    }
    let denom = kernel.i2(u) + up * up;
    (numerator + two * sup) / denom
}

fn augmented_subgradient<S: Real>(kernel: &Kernel<S>, z: &[S]) -> Vec<S> {
    let n = kernel.p();
    let (u, up) = (&z[..n], z[n]);
    let two = S::of(2.0);

    let l = kernel.au(u);
    let rows: Vec<S> = l.iter().map(|&x| x + up).collect();
    let mut numerator = S::zero();
    let mut rows_sum = S::zero();
    for &r in &rows {
        numerator = numerator + r * r;
        rows_sum = rows_sum + r;
    }

    let sums: Vec<Vec<S>> = (0..n).map(|i| kernel.gradient_sum(i, u)).collect();
    let mut sup = S::neg_infinity();
    let mut active = 0usize;
    for (i, s) in sums.iter().enumerate() {
        let t = (u[i] * norm(s)).abs();
        if t > sup {
            sup = t;
            active = i;
        }
    }
    let numerator = numerator + two * sup;
    let denom = kernel.i2(u) + up * up;

    // ∇ numerator.
    let a_rows = kernel.au(&rows);
    let mut grad_n: Vec<S> = a_rows.iter().map(|&x| two * x).collect();
    let ga: Vec<S> = sums[active].iter().map(|&c| u[active] * c).collect();
    let ga_norm = norm(&ga);
    if ga_norm > S::zero() {
        let dir: Vec<S> = ga.iter().map(|&c| c / ga_norm).collect();
        grad_n[active] = grad_n[active] + two * dot(&dir, &sums[active]);
        for j in 0..n {
            if j == active {
                continue;
            }
            let w = kernel.direction_weight(active, j);
            grad_n[j] = grad_n[j] + two * u[active] * dot(&dir, w);
        }
    }
    grad_n.push(two * rows_sum);

    // ∇ denominator.
    let mut grad_d = kernel.i2_gradient(u);
    grad_d.push(two * up);

    let inv = S::one() / denom;
    (0..=n)
        .map(|k| (grad_n[k] - numerator * inv * grad_d[k]) * inv)
        .collect()
}

// ---------------------------------------------------------------------------
// Outer searches over configurations
// ---------------------------------------------------------------------------

struct ChainResult<S> {
    best_value: S,
    best_config: PointConfig<S>,
    best_weights: Vec<S>,
    events: Vec<(usize, S)>,
}

/// Annealing estimate of the best constant over all configurations of `p`
/// points in `R^m` (empirical lower evidence, never a certified constant).
pub fn min_ratio_over_configs<S: Real>(
    p: usize,
    m: usize,
    opts: &SearchOptions<S>,
) -> Result<SearchReport<S>> {
    opts.validate()?;
    if p < 2 {
        return Err(Error::TooFewPoints { found: p, min: 2 });
    }
    if m < 1 || m > p - 1 {
        return Err(Error::InvalidDimension { p, m });
    }
    if opts.min_separation > S::one() {
        return Err(Error::InvalidOptions(
            "min_separation above 1 is infeasible in the normalized gauge",
        ));
    }
    if opts.max_diameter < S::one() {
        return Err(Error::InvalidOptions(
            "max_diameter below 1 is infeasible in the normalized gauge",
        ));
    }

    let chains: Vec<Result<ChainResult<S>>> = run_indexed(opts.restarts, opts.threads, |c| {
        ratio_chain(p, m, opts, c as u64)
    });
    let mut collected = Vec::with_capacity(chains.len());
    for chain in chains {
        collected.push(chain?);
    }
    let winner = collected
        .iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| {
            a.best_value
                .partial_cmp(&b.best_value)
                .unwrap()
                .then(ia.cmp(ib))
        })
        .map(|(i, _)| i)
        .ok_or(Error::ConvergenceFailure)?;
    let history = merge_histories(collected.iter().map(|c| c.events.as_slice()));
    let best = &collected[winner];
    Ok(SearchReport {
        seed: opts.seed,
        objective_kind: ObjectiveKind::MinRatio,
        best_value: best.best_value,
        best_config: SearchConfig::Euclidean(best.best_config.clone()),
        best_weights: Some(best.best_weights.clone()),
        iterations_used: opts.restarts * opts.max_iters,
        history,
    })
}

fn ratio_chain<S: Real>(
    p: usize,
    m: usize,
    opts: &SearchOptions<S>,
    chain: u64,
) -> Result<ChainResult<S>> {
    let mut rng = Rng::substream(opts.seed, &[SALT_EST_C, chain]);
    let mut state = sample_feasible_config(&mut rng, p, m, opts)?;
    let inner = opts.inner(rng.next_u64());
    let (mut u_cur, mut f_cur) = min_ratio_over_u(&state, &inner)?;

    let mut best_value = f_cur;
    let mut best_config = state.clone();
    let mut best_weights = u_cur.clone();
    let mut events = vec![(0usize, f_cur)];

    let mut temp = opts.annealing.initial_temperature;
    for t in 1..=opts.max_iters {
        let sigma = opts.step_init * temp;
        let proposal = perturb_config(&mut rng, &state, sigma);
        let inner = opts.inner(rng.next_u64());
        if let Some(candidate) = proposal.and_then(|c| feasible_normalized(&c, opts)) {
            let (u_new, f_new) = min_ratio_over_u(&candidate, &inner)?;
            let delta = f_new - f_cur;
            let accept = delta < S::zero() || {
                let threshold = (-delta / temp).exp();
                rng.unit::<S>() < threshold
            };
            if accept {
                state = candidate;
                u_cur = u_new;
                f_cur = f_new;
                if f_cur < best_value {
                    best_value = f_cur;
                    best_config = state.clone();
                    best_weights = u_cur.clone();
                    events.push((t, f_cur));
                }
            }
        }
        temp = temp * opts.annealing.decay;
    }
    Ok(ChainResult {
        best_value,
        best_config,
        best_weights,
        events,
    })
}

fn sample_feasible_config<S: Real>(
    rng: &mut Rng,
    p: usize,
    m: usize,
    opts: &SearchOptions<S>,
) -> Result<PointConfig<S>> {
    let span = opts.max_diameter.min(S::of(4.0));
    for _ in 0..SAMPLE_ATTEMPTS {
        let points: Vec<Vec<S>> = (0..p)
            .map(|_| (0..m).map(|_| rng.range(-span, span)).collect())
            .collect();
        let Ok(cfg) = PointConfig::new(points) else {
            continue;
        };
        if let Some(cfg) = feasible_normalized(&cfg, opts) {
            return Ok(cfg);
        }
    }
    Err(Error::ConvergenceFailure)
}

/// Normalize and keep only configurations meeting the separation floor and
/// diameter cap.
fn feasible_normalized<S: Real>(
    config: &PointConfig<S>,
    opts: &SearchOptions<S>,
) -> Option<PointConfig<S>> {
    let normalized = normalize_config(config);
    if normalized.diameter() > opts.max_diameter {
        return None;
    }
    if normalized.min_separation() < opts.min_separation {
        return None;
    }
    Some(normalized)
}

fn perturb_config<S: Real>(
    rng: &mut Rng,
    config: &PointConfig<S>,
    sigma: S,
) -> Option<PointConfig<S>> {
    let points: Vec<Vec<S>> = config
        .points()
        .iter()
        .map(|pt| pt.iter().map(|&x| x + sigma * rng.normal()).collect())
        .collect();
    PointConfig::new(points).ok()
}

struct SigmaChainResult<S> {
    best_value: S,
    best_config: SphereConfig<S>,
    best_weights: Vec<S>,
    events: Vec<(usize, S)>,
}

/// Annealing search for sphere configurations with small `sigma_min` of the
/// sphere system (near-null hunting).
pub fn min_sigma_over_configs<S: Real>(
    p: usize,
    m: usize,
    opts: &SearchOptions<S>,
) -> Result<SearchReport<S>> {
    opts.validate()?;
    if p < 2 {
        return Err(Error::TooFewPoints { found: p, min: 2 });
    }
    if m < 1 {
        return Err(Error::InvalidOptions(
            "sphere dimension m must be at least 1",
        ));
    }
    if opts.min_separation >= S::of(2.0) {
        return Err(Error::InvalidOptions(
            "min_separation must be below 2 (the sphere diameter)",
        ));
    }

    let chains: Vec<Result<SigmaChainResult<S>>> = run_indexed(opts.restarts, opts.threads, |c| {
        sigma_chain(p, m, opts, c as u64)
    });
    let mut collected = Vec::with_capacity(chains.len());
    for chain in chains {
        collected.push(chain?);
    }
    let winner = collected
        .iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| {
            a.best_value
                .partial_cmp(&b.best_value)
                .unwrap()
                .then(ia.cmp(ib))
        })
        .map(|(i, _)| i)
        .ok_or(Error::ConvergenceFailure)?;
    let history = merge_histories(collected.iter().map(|c| c.events.as_slice()));
    let best = &collected[winner];
    Ok(SearchReport {
        seed: opts.seed,
        objective_kind: ObjectiveKind::MinSigma,
        best_value: best.best_value,
        best_config: SearchConfig::Sphere(best.best_config.clone()),
        best_weights: Some(best.best_weights.clone()),
        iterations_used: opts.restarts * opts.max_iters,
        history,
    })
}

fn sigma_chain<S: Real>(
    p: usize,
    m: usize,
    opts: &SearchOptions<S>,
    chain: u64,
) -> Result<SigmaChainResult<S>> {
    let mut rng = Rng::substream(opts.seed, &[SALT_SIGMA, chain]);
    let mut state = sample_sphere_config(&mut rng, p, m, opts)?;
    let mut spec = sphere_spectrum(&sphere_system(&state));
    let mut f_cur = spec.sigma_min;
    // The spectrum is cheap; screen a few starting configurations.
    for _ in 1..8 {
        let cand = sample_sphere_config(&mut rng, p, m, opts)?;
        let cand_spec = sphere_spectrum(&sphere_system(&cand));
        if cand_spec.sigma_min < f_cur {
            state = cand;
            spec = cand_spec;
            f_cur = spec.sigma_min;
        }
    }

    let mut best_value = f_cur;
    let mut best_config = state.clone();
    let mut best_weights = spec.null_candidate.clone();
    let mut events = vec![(0usize, f_cur)];

    let mut temp = opts.annealing.initial_temperature;
    for t in 1..=opts.max_iters {
        let sigma = opts.step_init * temp;
        if let Some(candidate) = perturb_sphere(&mut rng, &state, sigma, opts) {
            let cand_spec = sphere_spectrum(&sphere_system(&candidate));
            let f_new = cand_spec.sigma_min;
            let delta = f_new - f_cur;
            let accept = delta < S::zero() || {
                let threshold = (-delta / temp).exp();
                rng.unit::<S>() < threshold
            };
            if accept {
                state = candidate;
                f_cur = f_new;
                spec = cand_spec;
                if f_cur < best_value {
                    best_value = f_cur;
                    best_config = state.clone();
                    best_weights = spec.null_candidate.clone();
                    events.push((t, f_cur));
                }
            }
        }
        temp = temp * opts.annealing.decay;
    }
    Ok(SigmaChainResult {
        best_value,
        best_config,
        best_weights,
        events,
    })
}

fn sample_sphere_config<S: Real>(
    rng: &mut Rng,
    p: usize,
    m: usize,
    opts: &SearchOptions<S>,
) -> Result<SphereConfig<S>> {
    for _ in 0..SAMPLE_ATTEMPTS {
        let points: Vec<Vec<S>> = (0..p).map(|_| rng.unit_vector(m + 1)).collect();
        let Ok(cfg) = SphereConfig::new(points) else {
            continue;
        };
        if cfg.min_chord() >= opts.min_separation {
            return Ok(cfg);
        }
    }
    Err(Error::ConvergenceFailure)
}

fn perturb_sphere<S: Real>(
    rng: &mut Rng,
    config: &SphereConfig<S>,
    sigma: S,
    opts: &SearchOptions<S>,
) -> Option<SphereConfig<S>> {
    let mut points = Vec::with_capacity(config.p());
    for pt in config.points() {
        let moved: Vec<S> = pt.iter().map(|&x| x + sigma * rng.normal()).collect();
        points.push(normalized(&moved)?);
    }
    let cfg = SphereConfig::new(points).ok()?;
    if cfg.min_chord() < opts.min_separation {
        return None;
    }
    Some(cfg)
}

/// One row per separation: the far-cluster scenario with a seeded unit-scale
/// cluster of `p − 2` points and two points receding along the first axis.
pub fn cluster_far_stress<S: Real>(
    p: usize,
    m: usize,
    separations: &[S],
    opts: &SearchOptions<S>,
) -> Result<Vec<(S, S)>> {
    opts.validate()?;
    if p < 4 {
        return Err(Error::TooFewPoints { found: p, min: 4 });
    }
    if separations.is_empty() {
        return Err(Error::InvalidSeparations(
            "at least one separation required",
        ));
    }
    let two = S::of(2.0);
    for w in separations.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::InvalidSeparations(
                "separations must be strictly increasing",
            ));
        }
    }
    if separations.iter().any(|&s| s < two) {
        return Err(Error::InvalidSeparations("separations must be at least 2"));
    }

    // Cluster shape fixed by the seed, shared across separations.
    let mut rng = Rng::substream(opts.seed, &[SALT_STRESS]);
    let cluster = sample_cluster(&mut rng, p - 2, m)?;

    let mut rows = Vec::with_capacity(separations.len());
    for (idx, &sep) in separations.iter().enumerate() {
        let mut points = cluster.clone();
        for k in 0..2 {
            let mut far = vec![S::zero(); m];
            far[0] = sep + S::from_usize(k).unwrap();
            points.push(far);
        }
        let config = PointConfig::new(points)?;
        let inner =
            opts.inner(Rng::substream(opts.seed, &[SALT_STRESS, idx as u64 + 1]).next_u64());
        let (_, value) = min_ratio_over_u(&config, &inner)?;
        if !(value > S::zero()) {
            return Err(Error::ConvergenceFailure);
        }
        rows.push((sep, value));
    }
    Ok(rows)
}

/// Cluster points inside the unit ball with a fixed mutual separation floor.
fn sample_cluster<S: Real>(rng: &mut Rng, count: usize, m: usize) -> Result<Vec<Vec<S>>> {
    let floor = S::of(0.2);
    'outer: for _ in 0..SAMPLE_ATTEMPTS {
        let mut points: Vec<Vec<S>> = Vec::with_capacity(count);
        for _ in 0..count {
            let mut attempts = 0;
            loop {
                let cand: Vec<S> = (0..m).map(|_| rng.range(-S::one(), S::one())).collect();
                if norm(&cand) <= S::one()
                    && points
                        .iter()
                        .all(|p| crate::scalar::dist(p, &cand) >= floor)
                {
                    points.push(cand);
                    break;
                }
                attempts += 1;
                if attempts > 1000 {
                    continue 'outer;
                }
            }
        }
        return Ok(points);
    }
    Err(Error::ConvergenceFailure)
}
