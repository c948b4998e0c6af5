//! Backtracking search for three skew Goethals-Seidel seeds whose arrays form
//! a skew, complete-cover `DW(4n; w, w, w)` with `3w = 4n - 1`.
//!
//! The twelve first rows are filled quad by quad (`a1 b1 c1 d1 a2 ...`), each
//! row position by position, trying `0, +1, -1`. Pruning rules:
//!
//! * `a` rows are skew: `a[0] = 0` and `a[n-j]` mirrors `a[j]`.
//! * every quad spends exactly `w` nonzeros (budget).
//! * a position already used by an earlier quad stays zero (disjoint), and the
//!   last quad must cover every position left free (cover).
//! * on completing a row, the power spectra of the finished rows of the quad
//!   may not exceed `w` at any frequency; the last row must bring the summed
//!   periodic autocorrelation to `w` at shift 0 and to 0 elsewhere, and while
//!   it is being filled the remaining gap at each shift must still be closable.
//!
//! Symmetry reduction (optional): each row's first nonzero is `+1`, and for
//! each of `b`, `c`, `d` the quad-1 row is either zero or nonzero at position 0.
//! Both are realised by negating single rows and rotating a row type across all
//! three quads, which preserve every constraint.

mod checkpoint;
mod engine;

pub use checkpoint::Checkpoint;

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::construct::{gs_assemble, DwCollection, GsQuadSeed};
use crate::error::{Error, Result};
use engine::{Engine, Limits, RunEnd};

/// `s ↦ Σ_j row[j] row[(j + s) mod n]`.
pub fn autocorrelation_profile(row: &[i8]) -> Vec<i64> {
    let n = row.len();
    (0..n)
        .map(|s| (0..n).map(|j| row[j] as i64 * row[(j + s) % n] as i64).sum())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraints {
    pub skew_a: bool,
    pub disjoint: bool,
    pub complete_cover: bool,
}

impl Default for Constraints {
    fn default() -> Self {
        Self { skew_a: true, disjoint: true, complete_cover: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub node_limit: u64,
    pub time_limit: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Self { node_limit: 100_000_000, time_limit: Duration::from_secs(600) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchProblem {
    pub n: usize,
    pub w: usize,
    pub constraints: Constraints,
    pub budget: Budget,
    pub rng_seed: u64,
}

impl SearchProblem {
    /// Block order `n`; the weight is derived as `(4n - 1) / 3`.
    pub fn new(n: usize) -> Result<Self> {
        let p = Self {
            n,
            w: (4 * n).saturating_sub(1) / 3,
            constraints: Constraints::default(),
            budget: Budget::default(),
            rng_seed: 0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_budget(mut self, node_limit: u64, time_limit: Duration) -> Self {
        self.budget = Budget { node_limit, time_limit };
        self
    }

    pub fn with_rng_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n == 0 || n % 2 == 0 {
            return Err(Error::InvalidProblem(format!("block order n must be odd, got {n}")));
        }
        if (4 * n - 1) % 3 != 0 {
            return Err(Error::InvalidProblem(format!(
                "order 4n = {} is not 4 mod 12, so (4n - 1)/3 is not an integer",
                4 * n
            )));
        }
        if self.w * 3 != 4 * n - 1 {
            return Err(Error::InvalidProblem(format!("weight must be {}, got {}", (4 * n - 1) / 3, self.w)));
        }
        if n > 127 {
            return Err(Error::InvalidProblem(format!("block order {n} is beyond the supported range")));
        }
        let c = self.constraints;
        if !(c.skew_a && c.disjoint && c.complete_cover) {
            return Err(Error::InvalidProblem(
                "only the skew, disjoint, complete-cover variant is supported".into(),
            ));
        }
        Ok(())
    }

    /// Identity of the search tree: everything except the budget.
    pub(crate) fn tree_hash(&self, opts: &SearchOptions) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(b"dwm-search-v1");
        h.update((self.n as u64).to_le_bytes());
        h.update((self.w as u64).to_le_bytes());
        h.update(self.rng_seed.to_le_bytes());
        h.update([opts.pruning as u8, opts.symmetry as u8]);
        h.finalize().into()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub pruning: bool,
    pub symmetry: bool,
    /// Worker threads; 1 is the determinism reference.
    pub threads: usize,
    /// Emit a progress report every this many nodes (0 disables).
    pub progress_every: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { pruning: true, symmetry: true, threads: 1, progress_every: 0 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneCounts {
    pub budget: u64,
    pub disjoint: u64,
    pub cover: u64,
    pub symmetry: u64,
    pub spectral: u64,
    pub shift_gap: u64,
    pub gram: u64,
}

impl PruneCounts {
    pub(crate) fn as_array(&self) -> [u64; 7] {
        [self.budget, self.disjoint, self.cover, self.symmetry, self.spectral, self.shift_gap, self.gram]
    }

    pub(crate) fn from_array(a: [u64; 7]) -> Self {
        Self {
            budget: a[0],
            disjoint: a[1],
            cover: a[2],
            symmetry: a[3],
            spectral: a[4],
            shift_gap: a[5],
            gram: a[6],
        }
    }

    fn add(&mut self, o: &PruneCounts) {
        let a = self.as_array();
        let b = o.as_array();
        *self = Self::from_array(std::array::from_fn(|i| a[i] + b[i]));
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
    pub prunes: PruneCounts,
    pub solutions: u64,
    /// Nodes visited per depth.
    pub depth_histogram: Vec<u64>,
    /// Whether symmetry reduction was active; completeness is modulo it.
    pub symmetry_reduced: bool,
}

impl SearchStats {
    fn merge(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.prunes.add(&o.prunes);
        self.solutions += o.solutions;
        if self.depth_histogram.len() < o.depth_histogram.len() {
            self.depth_histogram.resize(o.depth_histogram.len(), 0);
        }
        for (a, b) in self.depth_histogram.iter_mut().zip(&o.depth_histogram) {
            *a += b;
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub seeds: [GsQuadSeed; 3],
    pub stats: SearchStats,
}

impl SearchResult {
    /// Assembles and certifies the triple.
    pub fn collection(&self) -> Result<DwCollection> {
        let w = self.seeds[0].weight();
        let ms = self.seeds.iter().map(gs_assemble).collect::<Result<Vec<_>>>()?;
        DwCollection::certify(ms, vec![w; 3])
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(SearchResult),
    Exhausted(SearchStats),
    /// The budget ran out. A checkpoint is available in single-threaded mode.
    BudgetExceeded { stats: SearchStats, checkpoint: Option<Checkpoint> },
}

/// Progress snapshot handed to the progress callback.
#[derive(Clone, Debug)]
pub struct Progress<'a> {
    pub nodes: u64,
    pub elapsed: Duration,
    pub depth: usize,
    pub depth_histogram: &'a [u64],
}

impl Progress<'_> {
    pub fn line(&self) -> String {
        let secs = self.elapsed.as_secs_f64().max(1e-9);
        let hist: Vec<String> = self.depth_histogram.iter().map(|c| c.to_string()).collect();
        format!(
            "nodes={} nodes/sec={:.0} depth={} hist=[{}]",
            self.nodes,
            self.nodes as f64 / secs,
            self.depth,
            hist.join(",")
        )
    }
}

pub type ProgressFn<'a> = &'a mut dyn FnMut(&Progress<'_>);

/// Finds one triple with the default options.
pub fn search_dw_triple(problem: &SearchProblem) -> Result<SearchOutcome> {
    search_with(problem, &SearchOptions::default(), None)
}

pub fn search_with(
    problem: &SearchProblem,
    opts: &SearchOptions,
    progress: Option<ProgressFn<'_>>,
) -> Result<SearchOutcome> {
    problem.validate()?;
    if opts.threads > 1 {
        return search_parallel(problem, opts);
    }
    let mut engine = Engine::new(problem, opts);
    engine.start();
    run_single(problem, opts, engine, progress)
}

/// Continues a search from a checkpoint blob produced for the same problem.
pub fn resume(
    problem: &SearchProblem,
    opts: &SearchOptions,
    blob: &[u8],
    progress: Option<ProgressFn<'_>>,
) -> Result<SearchOutcome> {
    problem.validate()?;
    let ckpt = Checkpoint::from_bytes(blob)?;
    let expected = problem.tree_hash(opts);
    if ckpt.problem_hash != expected {
        return Err(Error::StaleCheckpoint { expected: hex::encode(expected), found: hex::encode(ckpt.problem_hash) });
    }
    let mut engine = Engine::new(problem, opts);
    engine.restore(&ckpt)?;
    run_single(problem, opts, engine, progress)
}

fn run_single(
    problem: &SearchProblem,
    opts: &SearchOptions,
    mut engine: Engine,
    progress: Option<ProgressFn<'_>>,
) -> Result<SearchOutcome> {
    let started = Instant::now();
    let limits = Limits {
        node_limit: problem.budget.node_limit,
        deadline: started.checked_add(problem.budget.time_limit),
        shared: None,
        cancel: None,
        progress_every: opts.progress_every,
    };
    let end = engine.run(&limits, false, progress);
    let mut stats = engine.stats().clone();
    stats.elapsed += started.elapsed();
    Ok(match end {
        RunEnd::Found(seeds) => SearchOutcome::Found(SearchResult { seeds: *seeds, stats }),
        RunEnd::Exhausted => SearchOutcome::Exhausted(stats),
        RunEnd::Budget => {
            let mut ckpt = engine.checkpoint(problem.tree_hash(opts));
            ckpt.elapsed = stats.elapsed;
            SearchOutcome::BudgetExceeded { stats, checkpoint: Some(ckpt) }
        }
        RunEnd::Cancelled => unreachable!("no cancellation source in single-threaded mode"),
    })
}

/// Enumerates every solution (modulo symmetry when enabled), in DFS order.
pub fn enumerate_all(problem: &SearchProblem, opts: &SearchOptions) -> Result<(Vec<[GsQuadSeed; 3]>, SearchStats)> {
    problem.validate()?;
    let mut engine = Engine::new(problem, opts);
    engine.start();
    let limits = Limits {
        node_limit: problem.budget.node_limit,
        deadline: Instant::now().checked_add(problem.budget.time_limit),
        shared: None,
        cancel: None,
        progress_every: 0,
    };
    match engine.run(&limits, true, None) {
        RunEnd::Exhausted => {}
        RunEnd::Budget => {
            return Err(Error::InvalidProblem("budget exhausted before the enumeration finished".into()))
        }
        _ => unreachable!("collect mode only ends by exhaustion or budget"),
    }
    let stats = engine.stats().clone();
    Ok((engine.take_solutions(), stats))
}

fn search_parallel(problem: &SearchProblem, opts: &SearchOptions) -> Result<SearchOutcome> {
    let started = Instant::now();
    let deadline = started.checked_add(problem.budget.time_limit);
    let (units, split_stats) = Engine::split(problem, opts, opts.threads * 16);
    let used = AtomicU64::new(split_stats.nodes);
    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let found: Mutex<Vec<(usize, [GsQuadSeed; 3])>> = Mutex::new(Vec::new());
    let totals: Mutex<SearchStats> = Mutex::new(split_stats);
    let budget_hit = AtomicUsize::new(usize::MAX);

    std::thread::scope(|scope| {
        for _ in 0..opts.threads {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::SeqCst);
                if idx >= units.len() || idx > best.load(Ordering::SeqCst) {
                    break;
                }
                let mut engine = Engine::new(problem, opts);
                if engine.enter_unit(&units[idx]).is_err() {
                    continue;
                }
                let cancel = || best.load(Ordering::Relaxed) < idx;
                let limits = Limits {
                    node_limit: problem.budget.node_limit,
                    deadline,
                    shared: Some(&used),
                    cancel: Some(&cancel),
                    progress_every: 0,
                };
                let end = engine.run(&limits, false, None);
                totals.lock().expect("stats lock").merge(engine.stats());
                match end {
                    RunEnd::Found(seeds) => {
                        best.fetch_min(idx, Ordering::SeqCst);
                        found.lock().expect("result lock").push((idx, *seeds));
                    }
                    RunEnd::Budget => {
                        budget_hit.fetch_min(idx, Ordering::SeqCst);
                    }
                    RunEnd::Exhausted | RunEnd::Cancelled => {}
                }
            });
        }
    });

    let mut stats = totals.into_inner().expect("stats lock");
    stats.elapsed = started.elapsed();
    stats.symmetry_reduced = opts.symmetry;
    let mut found = found.into_inner().expect("result lock");
    found.sort_by_key(|(i, _)| *i);
    let first_budget = budget_hit.load(Ordering::SeqCst);
    match found.into_iter().next() {
        Some((idx, seeds)) if idx < first_budget => Ok(SearchOutcome::Found(SearchResult { seeds, stats })),
        _ if first_budget != usize::MAX => Ok(SearchOutcome::BudgetExceeded { stats, checkpoint: None }),
        _ => Ok(SearchOutcome::Exhausted(stats)),
    }
}

/// How a supplied triple fares against the search rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HintReport {
    pub accepted: bool,
    /// Depth reached before a rule rejected the path (the full depth when accepted).
    pub depth: usize,
    pub rejected_by: Option<String>,
}

/// Walks the search tree along the path spelled out by `seeds` with pruning
/// on and symmetry reduction off, reporting the first rule that would cut it.
pub fn check_hint(problem: &SearchProblem, seeds: &[GsQuadSeed; 3]) -> Result<HintReport> {
    let opts = SearchOptions { symmetry: false, ..SearchOptions::default() };
    check_hint_with(problem, seeds, &opts)
}

/// As [`check_hint`], under explicit options.
pub fn check_hint_with(problem: &SearchProblem, seeds: &[GsQuadSeed; 3], opts: &SearchOptions) -> Result<HintReport> {
    problem.validate()?;
    if seeds.iter().any(|s| s.n() != problem.n) {
        return Err(Error::ParamMismatch(format!("hint seeds must have block order {}", problem.n)));
    }
    let mut engine = Engine::new(problem, opts);
    Ok(engine.follow(seeds))
}
