use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Checkpoint, HintReport, Progress, ProgressFn, SearchOptions, SearchProblem, SearchStats};
use crate::construct::{gs_assemble, GsQuadSeed};
use crate::error::{Error, Result};
use crate::verify::certify_dw;

const FREE: u8 = u8::MAX;
const CANONICAL: [i8; 3] = [0, 1, -1];
const SPECTRAL_TOL: f64 = 1e-7;
/// Nodes between clock, shared-budget and cancellation checks.
const POLL: u64 = 1024;

#[derive(Clone, Copy, Debug)]
struct Cell {
    quad: usize,
    ty: usize,
    pos: usize,
    /// Skew `a` cell: also writes `-v` at `n - pos`.
    mirror: bool,
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    choices: [i8; 3],
    len: u8,
    next: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    Budget,
    Disjoint,
    Cover,
    Symmetry,
    Spectral,
    ShiftGap,
    Gram,
    Skew,
}

impl Rule {
    fn name(self) -> &'static str {
        match self {
            Rule::Budget => "budget",
            Rule::Disjoint => "disjoint",
            Rule::Cover => "cover",
            Rule::Symmetry => "symmetry",
            Rule::Spectral => "spectral",
            Rule::ShiftGap => "shift_gap",
            Rule::Gram => "gram",
            Rule::Skew => "skew",
        }
    }
}

pub(crate) struct Limits<'a> {
    pub node_limit: u64,
    pub deadline: Option<Instant>,
    pub shared: Option<&'a AtomicU64>,
    pub cancel: Option<&'a dyn Fn() -> bool>,
    pub progress_every: u64,
}

pub(crate) enum RunEnd {
    Found(Box<[GsQuadSeed; 3]>),
    Exhausted,
    Budget,
    Cancelled,
}

pub(crate) struct Engine {
    n: usize,
    w: usize,
    half: usize,
    pruning: bool,
    symmetry: bool,
    cells: Vec<Cell>,
    row_end: Vec<bool>,
    quad_start: [usize; 4],
    value_order: Vec<[i8; 3]>,
    /// `(quad * 4 + ty) * n + pos`.
    rows: Vec<i8>,
    /// `ty * n + pos` -> owning quad.
    owner: Vec<u8>,
    weight: [usize; 3],
    nonzero: [usize; 12],
    /// Per quad, free capacity strictly after each of its cells; valid while
    /// the quad is on the DFS stack.
    cap_after: [Vec<usize>; 3],
    paf_row: Vec<i64>,
    psd_row: Vec<f64>,
    cos: Vec<f64>,
    sin: Vec<f64>,
    frames: Vec<Frame>,
    floor: usize,
    cut: usize,
    prefixes: Vec<Vec<u8>>,
    stats: SearchStats,
    run_start_nodes: u64,
    flushed: u64,
    solutions: Vec<[GsQuadSeed; 3]>,
}

impl Engine {
    pub fn new(problem: &SearchProblem, opts: &SearchOptions) -> Self {
        let n = problem.n;
        let half = n / 2;
        let mut cells = Vec::new();
        let mut quad_start = [0; 4];
        for quad in 0..3 {
            quad_start[quad] = cells.len();
            for ty in 0..4 {
                if ty == 0 && opts.pruning {
                    cells.extend((1..=half).map(|pos| Cell { quad, ty, pos, mirror: true }));
                } else {
                    cells.extend((0..n).map(|pos| Cell { quad, ty, pos, mirror: false }));
                }
            }
        }
        quad_start[3] = cells.len();
        let row_end = (0..cells.len())
            .map(|d| {
                d + 1 == cells.len() || (cells[d + 1].quad, cells[d + 1].ty) != (cells[d].quad, cells[d].ty)
            })
            .collect();
        let value_order = if problem.rng_seed == 0 {
            vec![CANONICAL; cells.len()]
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(problem.rng_seed);
            (0..cells.len())
                .map(|_| {
                    let mut o = CANONICAL;
                    o.shuffle(&mut rng);
                    o
                })
                .collect()
        };
        let tau = std::f64::consts::TAU;
        let angle = |k: usize, j: usize| tau * ((k * j) % n) as f64 / n as f64;
        let cos = (0..n * n).map(|i| angle(i / n, i % n).cos()).collect();
        let sin = (0..n * n).map(|i| angle(i / n, i % n).sin()).collect();
        let total = cells.len();
        Self {
            n,
            w: problem.w,
            half,
            pruning: opts.pruning,
            symmetry: opts.symmetry,
            cells,
            row_end,
            quad_start,
            value_order,
            rows: vec![0; 12 * n],
            owner: vec![FREE; 4 * n],
            weight: [0; 3],
            nonzero: [0; 12],
            cap_after: Default::default(),
            paf_row: vec![0; 12 * n],
            psd_row: vec![0.0; 12 * n],
            cos,
            sin,
            frames: Vec::with_capacity(total),
            floor: 0,
            cut: usize::MAX,
            prefixes: Vec::new(),
            stats: SearchStats {
                depth_histogram: vec![0; total],
                symmetry_reduced: opts.symmetry,
                ..SearchStats::default()
            },
            run_start_nodes: 0,
            flushed: 0,
            solutions: Vec::new(),
        }
    }

    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    pub fn take_solutions(&mut self) -> Vec<[GsQuadSeed; 3]> {
        std::mem::take(&mut self.solutions)
    }

    fn total(&self) -> usize {
        self.cells.len()
    }

    fn depth(&self) -> usize {
        self.frames.len() - 1
    }

    pub fn start(&mut self) {
        self.frames.clear();
        if self.total() > 0 {
            self.push_frame(0);
        }
    }

    fn cell_weight(&self, c: &Cell) -> usize {
        if c.mirror {
            2
        } else {
            1
        }
    }

    fn push_frame(&mut self, d: usize) {
        let c = self.cells[d];
        if self.quad_start[c.quad] == d {
            self.recompute_capacity(c.quad);
        }
        let row = c.quad * 4 + c.ty;
        let mut choices = [0i8; 3];
        let mut len = 0;
        for &v in &self.value_order[d] {
            if self.pruning {
                let o = self.owner[c.ty * self.n + c.pos];
                if o != FREE && o as usize != c.quad {
                    if v != 0 {
                        self.stats.prunes.disjoint += 1;
                        continue;
                    }
                } else if c.quad == 2 && v == 0 {
                    self.stats.prunes.cover += 1;
                    continue;
                }
            }
            if self.symmetry {
                let sign_fixed = v == -1 && self.nonzero[row] == 0;
                let rotation_fixed =
                    c.quad == 0 && c.ty > 0 && c.pos > 0 && v != 0 && self.rows[row * self.n] == 0;
                if sign_fixed || rotation_fixed {
                    self.stats.prunes.symmetry += 1;
                    continue;
                }
            }
            choices[len] = v;
            len += 1;
        }
        self.frames.push(Frame { choices, len: len as u8, next: 0 });
    }

    fn recompute_capacity(&mut self, quad: usize) {
        let (lo, hi) = (self.quad_start[quad], self.quad_start[quad + 1]);
        self.cap_after[quad] = vec![0; hi - lo];
        let mut acc = 0;
        for d in (lo..hi).rev() {
            self.cap_after[quad][d - lo] = acc;
            let c = self.cells[d];
            if self.owner[c.ty * self.n + c.pos] == FREE {
                acc += self.cell_weight(&c);
            }
        }
    }

    fn apply(&mut self, d: usize, v: i8) {
        let c = self.cells[d];
        let n = self.n;
        let row = c.quad * 4 + c.ty;
        self.rows[row * n + c.pos] = v;
        if c.mirror {
            self.rows[row * n + n - c.pos] = -v;
        }
        if v != 0 {
            let wt = self.cell_weight(&c);
            self.weight[c.quad] += wt;
            self.nonzero[row] += wt;
            if self.pruning {
                self.owner[c.ty * n + c.pos] = c.quad as u8;
                if c.mirror {
                    self.owner[c.ty * n + n - c.pos] = c.quad as u8;
                }
            }
        }
    }

    fn undo(&mut self, d: usize) {
        let f = self.frames[d];
        let v = f.choices[f.next as usize - 1];
        let c = self.cells[d];
        let n = self.n;
        let row = c.quad * 4 + c.ty;
        self.rows[row * n + c.pos] = 0;
        if c.mirror {
            self.rows[row * n + n - c.pos] = 0;
        }
        if v != 0 {
            let wt = self.cell_weight(&c);
            self.weight[c.quad] -= wt;
            self.nonzero[row] -= wt;
            if self.pruning {
                self.owner[c.ty * n + c.pos] = FREE;
                if c.mirror {
                    self.owner[c.ty * n + n - c.pos] = FREE;
                }
            }
        }
    }

    fn accept(&mut self, d: usize) -> std::result::Result<(), Rule> {
        if !self.pruning {
            return Ok(());
        }
        let c = self.cells[d];
        let q = c.quad;
        if self.weight[q] > self.w || self.w - self.weight[q] > self.cap_after[q][d - self.quad_start[q]] {
            return Err(Rule::Budget);
        }
        if self.row_end[d] {
            self.finish_row(q * 4 + c.ty);
            if c.ty == 3 {
                return self.gram_exact(q);
            }
            self.spectral_ok(q, c.ty)?;
            if c.ty == 2 {
                self.gap_ok(q, None)?;
            }
        } else if c.ty == 3 {
            self.gap_ok(q, Some(c.pos))?;
        }
        Ok(())
    }

    fn finish_row(&mut self, row: usize) {
        let n = self.n;
        let x = &self.rows[row * n..(row + 1) * n];
        for s in 0..n {
            self.paf_row[row * n + s] = (0..n).map(|j| x[j] as i64 * x[(j + s) % n] as i64).sum();
        }
        for k in 1..n {
            let (mut re, mut im) = (0.0, 0.0);
            for (j, &v) in x.iter().enumerate() {
                if v != 0 {
                    re += v as f64 * self.cos[k * n + j];
                    im += v as f64 * self.sin[k * n + j];
                }
            }
            self.psd_row[row * n + k] = re * re + im * im;
        }
    }

    /// Summed power spectrum of the finished rows of `quad` stays within `w`.
    fn spectral_ok(&self, quad: usize, upto: usize) -> std::result::Result<(), Rule> {
        let n = self.n;
        let dc: i64 = (0..=upto)
            .map(|t| {
                let s: i64 = self.rows[(quad * 4 + t) * n..(quad * 4 + t + 1) * n].iter().map(|&v| v as i64).sum();
                s * s
            })
            .sum();
        if dc > self.w as i64 {
            return Err(Rule::Spectral);
        }
        for k in 1..n {
            let p: f64 = (0..=upto).map(|t| self.psd_row[(quad * 4 + t) * n + k]).sum();
            if p > self.w as f64 + SPECTRAL_TOL {
                return Err(Rule::Spectral);
            }
        }
        Ok(())
    }

    /// Row `d` of `quad`, assigned through `pos`, can still close every shift.
    fn gap_ok(&self, quad: usize, pos: Option<usize>) -> std::result::Result<(), Rule> {
        let n = self.n;
        let r = (self.w - self.weight[quad]) as i64;
        let base = quad * 4;
        let target = |s: usize| -(0..3).map(|t| self.paf_row[(base + t) * n + s]).sum::<i64>();
        if pos.is_none() {
            // Σ_s PAF_d(s) = (Σ d)^2 with |Σ d| <= r of matching parity.
            let total = r + 2 * (1..=self.half).map(target).sum::<i64>();
            let root = (total.max(0) as f64).sqrt().round() as i64;
            if total < 0 || root * root != total || root > r || (r - root) % 2 != 0 {
                return Err(Rule::ShiftGap);
            }
        }
        let drow = &self.rows[(base + 3) * n..(base + 4) * n];
        let assigned = |i: usize| pos.is_some_and(|p| i <= p);
        for s in 1..=self.half {
            let mut partial = 0i64;
            let mut live = 0i64;
            for i in 0..n {
                let j = (i + s) % n;
                let (ai, aj) = (assigned(i), assigned(j));
                if ai && aj {
                    partial += drow[i] as i64 * drow[j] as i64;
                } else if !((ai && drow[i] == 0) || (aj && drow[j] == 0)) {
                    live += 1;
                }
            }
            if (target(s) - partial).abs() > live.min(2 * r) {
                return Err(Rule::ShiftGap);
            }
        }
        Ok(())
    }

    fn gram_exact(&self, quad: usize) -> std::result::Result<(), Rule> {
        let n = self.n;
        for s in 0..n {
            let sum: i64 = (0..4).map(|t| self.paf_row[(quad * 4 + t) * n + s]).sum();
            if sum != if s == 0 { self.w as i64 } else { 0 } {
                return Err(Rule::Gram);
            }
        }
        Ok(())
    }

    fn count_prune(&mut self, rule: Rule) {
        let p = &mut self.stats.prunes;
        match rule {
            Rule::Budget => p.budget += 1,
            Rule::Disjoint => p.disjoint += 1,
            Rule::Cover => p.cover += 1,
            Rule::Symmetry => p.symmetry += 1,
            Rule::Spectral => p.spectral += 1,
            Rule::ShiftGap => p.shift_gap += 1,
            Rule::Gram | Rule::Skew => p.gram += 1,
        }
    }

    fn current_seeds(&self) -> [GsQuadSeed; 3] {
        let n = self.n;
        std::array::from_fn(|q| {
            let row = |t: usize| self.rows[(q * 4 + t) * n..(q * 4 + t + 1) * n].to_vec();
            GsQuadSeed::new(row(0), row(1), row(2), row(3)).expect("engine rows are ternary")
        })
    }

    /// Full check of a complete assignment, independent of the pruning state.
    fn leaf_is_solution(&self) -> Option<[GsQuadSeed; 3]> {
        let n = self.n;
        for t in 0..4 {
            for j in 0..n {
                let used: usize = (0..3).filter(|q| self.rows[(q * 4 + t) * n + j] != 0).count();
                if used != usize::from(t != 0 || j != 0) {
                    return None;
                }
            }
        }
        let seeds = self.current_seeds();
        let mut matrices = Vec::with_capacity(3);
        for s in &seeds {
            if s.weight() != self.w {
                return None;
            }
            matrices.push(gs_assemble(s).ok()?);
        }
        certify_dw(&matrices, &[self.w; 3]).ok()?.passed().then_some(seeds)
    }

    fn poll(&mut self, limits: &Limits<'_>, progress: &mut Option<ProgressFn<'_>>, started: Instant) -> Option<RunEnd> {
        let run_nodes = self.stats.nodes - self.run_start_nodes;
        if limits.shared.is_none() && run_nodes >= limits.node_limit {
            return Some(RunEnd::Budget);
        }
        if limits.progress_every > 0 && run_nodes > 0 && run_nodes % limits.progress_every == 0 {
            if let Some(cb) = progress.as_mut() {
                cb(&Progress {
                    nodes: self.stats.nodes,
                    elapsed: self.stats.elapsed + started.elapsed(),
                    depth: self.depth(),
                    depth_histogram: &self.stats.depth_histogram,
                });
            }
        }
        if run_nodes % POLL != 0 {
            return None;
        }
        if let Some(shared) = limits.shared {
            let delta = self.stats.nodes - self.flushed;
            self.flushed = self.stats.nodes;
            if shared.fetch_add(delta, Ordering::Relaxed) + delta >= limits.node_limit {
                return Some(RunEnd::Budget);
            }
        }
        if limits.deadline.is_some_and(|t| Instant::now() >= t) {
            return Some(RunEnd::Budget);
        }
        if limits.cancel.is_some_and(|c| c()) {
            return Some(RunEnd::Cancelled);
        }
        None
    }

    pub fn run(&mut self, limits: &Limits<'_>, collect: bool, mut progress: Option<ProgressFn<'_>>) -> RunEnd {
        let started = Instant::now();
        self.run_start_nodes = self.stats.nodes;
        self.flushed = self.stats.nodes;
        if self.frames.is_empty() {
            return RunEnd::Exhausted;
        }
        loop {
            let d = self.depth();
            let f = self.frames[d];
            if f.next >= f.len {
                self.frames.pop();
                if d == self.floor {
                    return RunEnd::Exhausted;
                }
                self.undo(d - 1);
                continue;
            }
            if let Some(end) = self.poll(limits, &mut progress, started) {
                return end;
            }
            let v = f.choices[f.next as usize];
            self.frames[d].next += 1;
            self.stats.nodes += 1;
            self.stats.depth_histogram[d] += 1;
            self.apply(d, v);
            if let Err(rule) = self.accept(d) {
                self.count_prune(rule);
                self.undo(d);
                continue;
            }
            if d + 1 == self.cut {
                self.prefixes.push(self.frames.iter().map(|f| f.next - 1).collect());
                self.undo(d);
                continue;
            }
            if d + 1 == self.total() {
                let hit = self.leaf_is_solution();
                self.undo(d);
                if let Some(seeds) = hit {
                    self.stats.solutions += 1;
                    if !collect {
                        return RunEnd::Found(Box::new(seeds));
                    }
                    self.solutions.push(seeds);
                }
                continue;
            }
            self.push_frame(d + 1);
        }
    }

    /// Re-applies recorded choice indices from depth 0.
    fn replay(&mut self, path: &[u8]) -> Result<()> {
        self.start();
        for (d, &idx) in path.iter().enumerate() {
            if d + 1 >= self.total() {
                return Err(Error::BadCheckpoint("path is longer than the search tree".into()));
            }
            let f = self.frames[d];
            if idx >= f.len {
                return Err(Error::BadCheckpoint(format!("choice {idx} out of range at depth {d}")));
            }
            self.frames[d].next = idx + 1;
            self.apply(d, f.choices[idx as usize]);
            if self.accept(d).is_err() {
                return Err(Error::BadCheckpoint(format!("recorded choice is pruned at depth {d}")));
            }
            self.push_frame(d + 1);
        }
        Ok(())
    }

    pub fn checkpoint(&self, problem_hash: [u8; 32]) -> Checkpoint {
        let d = self.depth();
        Checkpoint {
            problem_hash,
            nodes: self.stats.nodes,
            prunes: self.stats.prunes.clone(),
            solutions: self.stats.solutions,
            depth_histogram: self.stats.depth_histogram.clone(),
            elapsed: self.stats.elapsed,
            path: self.frames[..d].iter().map(|f| f.next - 1).collect(),
            next: self.frames[d].next,
        }
    }

    pub fn restore(&mut self, ckpt: &Checkpoint) -> Result<()> {
        if ckpt.depth_histogram.len() != self.total() {
            return Err(Error::BadCheckpoint("depth histogram does not match the search tree".into()));
        }
        self.replay(&ckpt.path)?;
        let d = self.depth();
        if ckpt.next > self.frames[d].len {
            return Err(Error::BadCheckpoint(format!("next choice {} out of range", ckpt.next)));
        }
        self.frames[d].next = ckpt.next;
        self.stats.nodes = ckpt.nodes;
        self.stats.prunes = ckpt.prunes.clone();
        self.stats.solutions = ckpt.solutions;
        self.stats.depth_histogram = ckpt.depth_histogram.clone();
        self.stats.elapsed = ckpt.elapsed;
        Ok(())
    }

    /// Positions the engine at the root of one parallel work unit.
    pub fn enter_unit(&mut self, path: &[u8]) -> Result<()> {
        self.replay(path)?;
        self.frames.pop();
        self.stats = SearchStats {
            depth_histogram: vec![0; self.total()],
            symmetry_reduced: self.symmetry,
            ..SearchStats::default()
        };
        self.push_frame(path.len());
        self.floor = path.len();
        Ok(())
    }

    /// Enumerates the live prefixes at the shallowest depth yielding at least
    /// `target` of them; their subtrees partition the remaining search.
    pub fn split(problem: &SearchProblem, opts: &SearchOptions, target: usize) -> (Vec<Vec<u8>>, SearchStats) {
        let unlimited = Limits { node_limit: u64::MAX, deadline: None, shared: None, cancel: None, progress_every: 0 };
        let mut last = (vec![Vec::new()], Engine::new(problem, opts).stats.clone());
        let total = Engine::new(problem, opts).total();
        for cut in 1..total {
            let mut e = Engine::new(problem, opts);
            e.cut = cut;
            e.start();
            e.run(&unlimited, true, None);
            let enough = e.prefixes.len() >= target;
            last = (std::mem::take(&mut e.prefixes), e.stats.clone());
            if enough || last.0.is_empty() {
                break;
            }
        }
        last
    }

    /// Walks the path spelled by `seeds`, stopping at the first rule that cuts it.
    pub fn follow(&mut self, seeds: &[GsQuadSeed; 3]) -> HintReport {
        let reject = |depth: usize, rule: Rule| HintReport {
            accepted: false,
            depth,
            rejected_by: Some(rule.name().to_string()),
        };
        if seeds.iter().any(|s| !s.a_is_skew()) {
            return reject(0, Rule::Skew);
        }
        self.start();
        for d in 0..self.total() {
            let c = self.cells[d];
            let v = seeds[c.quad].rows()[c.ty][c.pos];
            let f = self.frames[d];
            let Some(idx) = f.choices[..f.len as usize].iter().position(|&x| x == v) else {
                let o = self.owner[c.ty * self.n + c.pos];
                let rule = if o != FREE && o as usize != c.quad {
                    Rule::Disjoint
                } else if c.quad == 2 && v == 0 {
                    Rule::Cover
                } else {
                    Rule::Symmetry
                };
                return reject(d, rule);
            };
            self.frames[d].next = idx as u8 + 1;
            self.apply(d, v);
            if let Err(rule) = self.accept(d) {
                return reject(d, rule);
            }
            if d + 1 < self.total() {
                self.push_frame(d + 1);
            }
        }
        if self.leaf_is_solution().is_none() {
            return reject(self.total(), Rule::Gram);
        }
        HintReport { accepted: true, depth: self.total(), rejected_by: None }
    }
}
