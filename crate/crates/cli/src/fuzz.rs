//! Randomized verification of both reflection functors.
//!
//! Each trial draws a quiver with a sink and one with a source, samples a
//! representation from the matching subcategory on each, and runs every
//! check. Failing inputs are minimized by dropping bars and then by moving
//! bar endpoints to simpler coordinates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use quiver_reflect::barcode::decompose;
use quiver_reflect::linalg::Field;
use quiver_reflect::quiver::{Coord, Orientation, OrientedQuiver, ReflectedOrientation};
use quiver_reflect::reflection::{
    in_overline_rep, in_underline_rep, reflect_dims_minus, reflect_dims_plus, reflect_minus, reflect_minus_unchecked,
    reflect_plus, reflect_plus_unchecked, sample_overline, sample_underline, verify_lemma_squares, Convention,
    DimProfile, ReflectionContext, ReflectionError, Side,
};
use quiver_reflect::representation::random::rng_from_seed;
use quiver_reflect::representation::{Bar, Budget, Endpoint, Rep};

use crate::document::Document;

/// Distinct minimized failures kept in a report.
pub const MAX_REPORTED: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Containment,
    DimensionFormula,
    PointwiseDims,
    LemmaSquares,
    RoundTrip,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Containment,
        Check::DimensionFormula,
        Check::PointwiseDims,
        Check::LemmaSquares,
        Check::RoundTrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Containment => "containment",
            Check::DimensionFormula => "dimension-formula",
            Check::PointwiseDims => "pointwise-dims",
            Check::LemmaSquares => "lemma-squares",
            Check::RoundTrip => "round-trip",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn side_name(side: Side) -> &'static str {
    match side {
        Side::Plus => "plus",
        Side::Minus => "minus",
    }
}

/// `side.check`, the key used in report tallies.
pub fn check_key(side: Side, check: Check) -> String {
    format!("{}.{}", side_name(side), check.name())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub trials: usize,
    pub seed: u64,
    pub budget: Budget,
    pub field: Field,
    pub convention: Convention,
    pub orientation: ReflectedOrientation,
    pub record_timing: bool,
}

impl Default for FuzzConfig {
    fn default() -> FuzzConfig {
        FuzzConfig {
            trials: 100,
            seed: 0,
            budget: Budget::default(),
            field: Field::default(),
            convention: Convention::Symmetric,
            orientation: ReflectedOrientation::Flipped,
            record_timing: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub runs: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FailureRecord {
    pub check: String,
    pub side: String,
    pub trial: usize,
    /// Breakpoint index of the sink or source.
    pub at: usize,
    pub diagnostic: String,
    /// The minimized input as a rep document.
    pub input: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzReport {
    pub trials: usize,
    pub seed: u64,
    pub config: Value,
    /// Trials where the sampler produced a representation, per side.
    pub sampled: BTreeMap<String, usize>,
    pub checks: BTreeMap<String, Tally>,
    /// Number of distinct minimized failures found.
    pub distinct_failures: usize,
    pub failures: Vec<FailureRecord>,
    /// Milliseconds spent per check; only recorded on request.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<BTreeMap<String, f64>>,
}

impl FuzzReport {
    pub fn tally(&self, side: Side, check: Check) -> Tally {
        self.checks.get(&check_key(side, check)).copied().unwrap_or_default()
    }

    pub fn total_failures(&self) -> usize {
        self.checks.values().map(|t| t.failures).sum()
    }

    pub fn to_document(&self) -> Document {
        Document::Report(serde_json::to_value(self).expect("reports serialize"))
    }
}

/// SplitMix64 finalizer, so that neighboring trials get unrelated seeds.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn trial_seed(seed: u64, trial: usize, side: Side) -> u64 {
    let lane = match side {
        Side::Plus => 0,
        Side::Minus => 1,
    };
    mix(seed ^ mix((trial as u64) << 1 | lane))
}

/// Three to five half-integer breakpoints in `[-4, 8]` with a sink (or
/// source) at the returned index.
pub fn random_window_quiver<R: Rng>(rng: &mut R, side: Side, max_cuts: usize) -> (OrientedQuiver, usize) {
    let n = rng.gen_range(3..=max_cuts.clamp(3, 5));
    let mut pool: Vec<i64> = (-8..=16).collect();
    let mut picks: Vec<i64> = (0..n).map(|_| pool.swap_remove(rng.gen_range(0..pool.len()))).collect();
    picks.sort();
    let breakpoints: Vec<Coord> = picks.into_iter().map(|h| Coord::new(h, 2).expect("nonzero")).collect();
    let mut segments: Vec<Orientation> = (0..=n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Orientation::Ascending
            } else {
                Orientation::Descending
            }
        })
        .collect();
    let k = rng.gen_range(1..n - 1);
    let (left, right) = match side {
        Side::Plus => (Orientation::Ascending, Orientation::Descending),
        Side::Minus => (Orientation::Descending, Orientation::Ascending),
    };
    segments[k] = left;
    segments[k + 1] = right;
    (
        OrientedQuiver::new(breakpoints, segments).expect("sorted distinct breakpoints"),
        k,
    )
}

fn context(q: &OrientedQuiver, k: usize, side: Side, cfg: &FuzzConfig) -> Result<ReflectionContext, ReflectionError> {
    ReflectionContext::with(q, k, side, cfg.convention, cfg.orientation)
}

/// The context that undoes `ctx`, at the same index of the reflected quiver.
pub fn inverse_context(
    ctx: &ReflectionContext,
    cfg_orientation: ReflectedOrientation,
) -> Result<ReflectionContext, ReflectionError> {
    let side = match ctx.side() {
        Side::Plus => Side::Minus,
        Side::Minus => Side::Plus,
    };
    ReflectionContext::with(ctx.reflected_quiver(), ctx.k(), side, ctx.convention(), cfg_orientation)
}

fn profile(v: &Rep, ctx: &ReflectionContext) -> Result<DimProfile, ReflectionError> {
    match ctx.side() {
        Side::Plus => reflect_dims_plus(v, ctx),
        Side::Minus => reflect_dims_minus(v, ctx),
    }
}

fn reflect_unchecked(v: &Rep, ctx: &ReflectionContext) -> Result<Rep, ReflectionError> {
    match ctx.side() {
        Side::Plus => reflect_plus_unchecked(v, ctx),
        Side::Minus => reflect_minus_unchecked(v, ctx),
    }
}

fn reflect_checked(v: &Rep, ctx: &ReflectionContext) -> Result<Rep, ReflectionError> {
    match ctx.side() {
        Side::Plus => reflect_plus(v, ctx),
        Side::Minus => reflect_minus(v, ctx),
    }
}

/// Whether `v` is in the subcategory the functor of `ctx` starts from.
pub fn in_domain(v: &Rep, ctx: &ReflectionContext) -> Result<bool, ReflectionError> {
    Ok(match ctx.side() {
        Side::Plus => in_overline_rep(v, ctx.k())?.holds,
        Side::Minus => in_underline_rep(v, ctx.k())?.holds,
    })
}

/// Whether the reflected `w` is in the subcategory the functor should land in.
fn in_codomain(w: &Rep, ctx: &ReflectionContext) -> Result<bool, ReflectionError> {
    Ok(match ctx.side() {
        Side::Plus => in_underline_rep(w, ctx.k())?.holds,
        Side::Minus => in_overline_rep(w, ctx.k())?.holds,
    })
}

/// Runs one check on `v`, an input in the domain of `ctx`.
pub fn run_check(
    check: Check,
    v: &Rep,
    ctx: &ReflectionContext,
    orientation: ReflectedOrientation,
) -> Result<(), String> {
    match check {
        Check::Containment => {
            let w = reflect_unchecked(v, ctx).map_err(|e| e.to_string())?;
            match in_codomain(&w, ctx) {
                Ok(true) => Ok(()),
                Ok(false) => Err("image is not in the target subcategory".to_string()),
                Err(e) => Err(e.to_string()),
            }
        }
        Check::DimensionFormula => {
            let w = reflect_unchecked(v, ctx).map_err(|e| e.to_string())?;
            let (a, b, c) = ctx.window();
            let expected = (v.dim_at(a) + v.dim_at(c)).checked_sub(v.dim_at(b));
            let at = ctx.mirrored_center();
            let found = w.dim_at(at);
            if expected == Some(found) {
                Ok(())
            } else {
                Err(format!(
                    "dimension at {at} is {found}, expected {} + {} - {}",
                    v.dim_at(a),
                    v.dim_at(c),
                    v.dim_at(b)
                ))
            }
        }
        Check::PointwiseDims => {
            let w = reflect_unchecked(v, ctx).map_err(|e| e.to_string())?;
            let p = profile(v, ctx).map_err(|e| e.to_string())?;
            let part = p.partition().merge(w.partition());
            for i in 0..part.cell_count() {
                let x = part.sample(i);
                if p.dim_at(x) != w.dim_at(x) {
                    return Err(format!("at {x}: pointwise {}, assembled {}", p.dim_at(x), w.dim_at(x)));
                }
            }
            Ok(())
        }
        Check::LemmaSquares => {
            let report = verify_lemma_squares(v, ctx).map_err(|e| e.to_string())?;
            let first = report.failures().next().map(|s| {
                format!(
                    "{} square at {} (cell {}): {}",
                    s.part,
                    s.at,
                    s.cell,
                    s.outcome.as_ref().err().expect("failure")
                )
            });
            first.map_or(Ok(()), Err)
        }
        Check::RoundTrip => {
            let back = inverse_context(ctx, orientation).map_err(|e| e.to_string())?;
            let w = reflect_checked(v, ctx).map_err(|e| e.to_string())?;
            let u = reflect_checked(&w, &back).map_err(|e| e.to_string())?;
            let expected = decompose(v).map_err(|e| e.to_string())?;
            let found = decompose(&u).map_err(|e| e.to_string())?;
            if expected == found {
                Ok(())
            } else {
                Err(format!("{expected} came back as {found}"))
            }
        }
    }
}

struct Sampled {
    trial: usize,
    ctx: ReflectionContext,
    rep: Rep,
}

struct TrialOutcome {
    sample: Option<Sampled>,
    results: Vec<(Check, Result<(), String>, Duration)>,
}

fn run_trial(cfg: &FuzzConfig, trial: usize, side: Side) -> TrialOutcome {
    let seed = trial_seed(cfg.seed, trial, side);
    let mut rng = rng_from_seed(seed);
    let (q, k) = random_window_quiver(&mut rng, side, cfg.budget.max_cuts);
    let ctx = context(&q, k, side, cfg).expect("the window was forced to be a sink or source");
    let sampled = match side {
        Side::Plus => sample_overline(&q, k, cfg.budget, seed, cfg.field),
        Side::Minus => sample_underline(&q, k, cfg.budget, seed, cfg.field),
    };
    let rep = match sampled {
        Ok(Some(rep)) => rep,
        _ => {
            return TrialOutcome {
                sample: None,
                results: Vec::new(),
            }
        }
    };
    let results = Check::ALL
        .iter()
        .map(|&check| {
            let start = Instant::now();
            let r = run_check(check, &rep, &ctx, cfg.orientation);
            (check, r, start.elapsed())
        })
        .collect();
    TrialOutcome {
        sample: Some(Sampled { trial, ctx, rep }),
        results,
    }
}

fn still_fails(check: Check, v: &Rep, ctx: &ReflectionContext, orientation: ReflectedOrientation) -> bool {
    matches!(in_domain(v, ctx), Ok(true)) && run_check(check, v, ctx, orientation).is_err()
}

/// Complexity of a coordinate: denominator, then distance from zero.
fn weight(x: Coord) -> (i64, i64) {
    (x.denom(), x.numer().abs())
}

fn endpoint_candidates(end: Endpoint, anchors: &[Coord]) -> Vec<Endpoint> {
    let Some(x) = end.coord() else { return Vec::new() };
    let mut out = Vec::new();
    if !end.is_closed() {
        out.push(Endpoint::Closed(x));
    }
    for &y in anchors {
        if weight(y) < weight(x) {
            out.push(Endpoint::Closed(y));
            out.push(Endpoint::Open(y));
        }
    }
    out
}

/// Shrinks a failing input: first drop bars while the check still fails,
/// then move endpoints to simpler anchor coordinates or close them.
pub fn minimize(check: Check, v: &Rep, ctx: &ReflectionContext, orientation: ReflectedOrientation) -> Rep {
    let q = ctx.quiver();
    let field = v.field();
    let Ok(barcode) = decompose(v) else { return v.clone() };
    let mut bars = barcode.to_vec();
    let build = |bars: &[Bar]| Rep::from_bars(q, bars, field);
    if !still_fails(check, &build(&bars), ctx, orientation) {
        return v.clone();
    }
    let mut i = 0;
    while i < bars.len() {
        let mut fewer = bars.clone();
        fewer.remove(i);
        if still_fails(check, &build(&fewer), ctx, orientation) {
            bars = fewer;
        } else {
            i += 1;
        }
    }
    let (a, b, c) = ctx.window();
    let mut anchors: BTreeSet<Coord> = q.breakpoints().iter().copied().collect();
    anchors.extend([a, b, c, ctx.mirrored_center()]);
    for x in bars.iter().flat_map(Bar::endpoints).collect::<Vec<_>>() {
        anchors.insert(Coord::int(x.numer().div_euclid(x.denom())));
        anchors.insert(Coord::int(-(-x.numer()).div_euclid(x.denom())));
    }
    let anchors: Vec<Coord> = anchors.into_iter().collect();
    let mut changed = true;
    while changed {
        changed = false;
        'bars: for i in 0..bars.len() {
            let bar = bars[i];
            for lo in endpoint_candidates(bar.lo(), &anchors) {
                if let Ok(nb) = Bar::new(lo, bar.hi()) {
                    let mut next = bars.clone();
                    next[i] = nb;
                    if still_fails(check, &build(&next), ctx, orientation) {
                        bars = next;
                        changed = true;
                        break 'bars;
                    }
                }
            }
            for hi in endpoint_candidates(bar.hi(), &anchors) {
                if let Ok(nb) = Bar::new(bar.lo(), hi) {
                    let mut next = bars.clone();
                    next[i] = nb;
                    if still_fails(check, &build(&next), ctx, orientation) {
                        bars = next;
                        changed = true;
                        break 'bars;
                    }
                }
            }
        }
    }
    bars.sort();
    build(&bars)
}

fn config_value(cfg: &FuzzConfig) -> Value {
    serde_json::json!({
        "max_bars": cfg.budget.max_bars,
        "max_cuts": cfg.budget.max_cuts,
        "max_dim": cfg.budget.max_dim,
        "field": match cfg.field {
            Field::Prime(p) => serde_json::json!({ "p": p }),
            Field::Rationals => serde_json::json!("Q"),
        },
        "s_prime_value": match cfg.convention {
            Convention::Symmetric => "symmetric",
            Convention::PaperB => "paper-b",
        },
        "reflected_orientation": match cfg.orientation {
            ReflectedOrientation::Flipped => "source",
            ReflectedOrientation::Preserved => "sink",
        },
    })
}

/// Runs `cfg.trials` trials on each side. Deterministic in the seed and
/// configuration; timing is only recorded when asked for.
pub fn fuzz_campaign(cfg: &FuzzConfig) -> FuzzReport {
    let jobs: Vec<(usize, Side)> = (0..cfg.trials)
        .flat_map(|t| [(t, Side::Plus), (t, Side::Minus)])
        .collect();
    let outcomes: Vec<(Side, TrialOutcome)> = jobs
        .par_iter()
        .map(|&(t, side)| (side, run_trial(cfg, t, side)))
        .collect();

    let mut sampled: BTreeMap<String, usize> = [("plus".to_string(), 0), ("minus".to_string(), 0)].into();
    let mut checks: BTreeMap<String, Tally> = BTreeMap::new();
    for side in [Side::Plus, Side::Minus] {
        for check in Check::ALL {
            checks.insert(check_key(side, check), Tally::default());
        }
    }
    let mut timing: BTreeMap<String, f64> = BTreeMap::new();
    let mut failing: Vec<(Check, &Sampled, String)> = Vec::new();
    for (side, outcome) in &outcomes {
        let Some(sample) = &outcome.sample else { continue };
        *sampled.get_mut(side_name(*side)).expect("both sides present") += 1;
        for (check, result, elapsed) in &outcome.results {
            let key = check_key(*side, *check);
            let tally = checks.get_mut(&key).expect("all keys present");
            tally.runs += 1;
            *timing.entry(key).or_default() += elapsed.as_secs_f64() * 1e3;
            if let Err(diagnostic) = result {
                tally.failures += 1;
                failing.push((*check, sample, diagnostic.clone()));
            }
        }
    }

    // Minimize in bounded batches, in trial order, until enough distinct
    // failures are found.
    let mut seen: BTreeSet<(String, String, String)> = BTreeSet::new();
    let mut failures = Vec::new();
    for batch in failing.chunks(4 * MAX_REPORTED) {
        if failures.len() >= MAX_REPORTED {
            break;
        }
        let minimized: Vec<(Rep, String)> = batch
            .par_iter()
            .map(|(check, s, diagnostic)| {
                let m = minimize(*check, &s.rep, &s.ctx, cfg.orientation);
                let diag = run_check(*check, &m, &s.ctx, cfg.orientation)
                    .err()
                    .unwrap_or_else(|| diagnostic.clone());
                (m, diag)
            })
            .collect();
        for ((check, s, _), (m, diagnostic)) in batch.iter().zip(minimized) {
            let side = side_name(s.ctx.side()).to_string();
            let bars = decompose(&m).map(|b| b.to_string()).unwrap_or_default();
            let key = (check_key(s.ctx.side(), *check), s.ctx.quiver().to_string(), bars);
            if failures.len() < MAX_REPORTED && seen.insert(key) {
                failures.push(FailureRecord {
                    check: check.name().to_string(),
                    side,
                    trial: s.trial,
                    at: s.ctx.k(),
                    diagnostic,
                    input: Document::Rep(m.clone()).to_value(),
                });
            }
        }
    }

    FuzzReport {
        trials: cfg.trials,
        seed: cfg.seed,
        config: config_value(cfg),
        sampled,
        checks,
        distinct_failures: seen.len(),
        failures,
        timing: cfg.record_timing.then_some(timing),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(trials: usize) -> FuzzConfig {
        FuzzConfig {
            trials,
            seed: 7,
            budget: Budget {
                max_bars: 3,
                max_cuts: 6,
                max_dim: 2,
            },
            ..FuzzConfig::default()
        }
    }

    #[test]
    fn zero_trials_give_an_empty_report() {
        let r = fuzz_campaign(&small(0));
        assert_eq!(r.total_failures(), 0);
        assert!(r.failures.is_empty());
        assert!(r.checks.values().all(|t| t.runs == 0));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&fuzz_campaign(&small(12))).unwrap();
        let b = serde_json::to_string(&fuzz_campaign(&small(12))).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn generated_quivers_have_the_requested_point() {
        let mut rng = rng_from_seed(3);
        for side in [Side::Plus, Side::Minus] {
            for _ in 0..50 {
                let (q, k) = random_window_quiver(&mut rng, side, 8);
                assert!(
                    ReflectionContext::with(&q, k, side, Convention::Symmetric, ReflectedOrientation::Flipped).is_ok()
                );
            }
        }
    }

    #[test]
    fn minimization_keeps_the_failure() {
        let r = fuzz_campaign(&small(40));
        for f in &r.failures {
            let Ok(Document::Rep(v)) = crate::document::parse(&f.input.to_string()) else {
                panic!("rep document")
            };
            let side = if f.side == "plus" { Side::Plus } else { Side::Minus };
            let ctx = ReflectionContext::with(
                v.quiver(),
                f.at,
                side,
                Convention::Symmetric,
                ReflectedOrientation::Flipped,
            )
            .unwrap();
            let check = Check::ALL.into_iter().find(|c| c.name() == f.check).unwrap();
            assert!(in_domain(&v, &ctx).unwrap());
            assert!(run_check(check, &v, &ctx, ReflectedOrientation::Flipped).is_err());
        }
    }
}
