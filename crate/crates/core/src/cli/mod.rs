//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a search
//! ends without a solution, 2 on usage, input or parse errors.

mod grid;
mod manifest;

pub use grid::SignGridFile;
pub use manifest::{hash_file, sha256_hex, RunManifest};

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::construct::{base_pair, family, pair_family, embedded_dw, DwCollection, Family, PairFamily, Embedded};
use crate::error::{Error, Result};
use crate::scheme::{
    build_relations, certify_scheme, check_product_formulas, check_split_identity, closed_form_l1,
    coclique_bound_check, intersection_matrix_l1, intersection_tensor, normalize_hadamard, sylvester_hadamard,
    SchemeParams,
};
use crate::search::{self, Checkpoint, SearchOptions, SearchOutcome, SearchProblem};
use crate::spectra::{certify_eigenmatrices, closed_form_p, compare, eigenmatrices_from_l1};
use crate::verify::{certify_dw, check_pair_conditions, is_antiamicable_family, is_hadamard, Certificate, Check};
use manifest::OutputSink;

pub const THREADS_ENV: &str = "DWM_THREADS";

const FAMILIES: &str =
    "dw28 | dw52 | powers2:n=<n>,m=<m> | f7:m=<m> | f10:m=<m> (needs --base) | f13:m=<m> | pairs:m=<m> | sylvester:2^<t>";

#[derive(Parser, Debug)]
#[command(name = "dwm", version, about = "Skew disjoint weighing matrices and their association schemes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a named family member and certify it.
    Construct(ConstructArgs),
    /// Check a sign-grid file against an expected structure.
    Verify(VerifyArgs),
    /// Search for a skew DW(4n; [(4n-1)/3]^3) from circulant seeds.
    Search(SearchArgs),
    /// Build the association scheme for (k, m, l) and compare its spectra.
    Scheme(SchemeArgs),
    /// Rerun a manifest and compare output hashes.
    Replay(ReplayArgs),
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// One of: dw28, dw52, powers2:n=N,m=M, f7:m=M, f10:m=M, f13:m=M, pairs:m=M, sylvester:2^T.
    pub spec: String,
    #[arg(long, default_value = "dwm-out")]
    pub out: PathBuf,
    /// Sign-grid file holding a skew DW(40;13,13,13), for f10.
    #[arg(long)]
    pub base: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Dw,
    Od,
    Hadamard,
    Pairs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value = "dw")]
    pub expect: Expect,
    /// Comma-separated weights; defaults to the header, then to row 0 counts.
    #[arg(long)]
    pub weights: Option<String>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Circulant block order; must be odd with 4n = 4 mod 12.
    #[arg(long)]
    pub n: usize,
    /// Node budget; accepts forms like 1e8.
    #[arg(long, default_value = "1e8", value_parser = parse_budget)]
    pub budget: u64,
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = 600)]
    pub time_limit: u64,
    /// Value-order shuffle seed; 0 keeps the fixed order.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Where to write the checkpoint when the budget runs out.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    #[arg(long)]
    pub resume: Option<PathBuf>,
    /// Worker threads; overridden by DWM_THREADS.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long)]
    pub no_pruning: bool,
    #[arg(long)]
    pub no_symmetry: bool,
    /// Report progress on stderr every this many nodes.
    #[arg(long, default_value_t = 0, value_parser = parse_budget)]
    pub progress: u64,
    #[arg(long, default_value = "dwm-out")]
    pub out: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SchemeArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub l: usize,
    /// builtin, builtin:dw28, builtin:dw52, builtin:base or a sign-grid file.
    #[arg(long, default_value = "builtin")]
    pub dw: String,
    /// sylvester or a sign-grid file.
    #[arg(long, default_value = "sylvester")]
    pub hadamard: String,
    #[arg(long, default_value = "dwm-out")]
    pub out: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    #[arg(long, default_value = "dwm-replay")]
    pub out: PathBuf,
}

fn parse_budget(s: &str) -> std::result::Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if !(f.is_finite() && f >= 0.0 && f.fract() == 0.0 && f <= u64::MAX as f64) {
        return Err(format!("{s:?} is not a non-negative integer"));
    }
    Ok(f as u64)
}

/// Failures that end a command.
enum Fail {
    /// Exit 2.
    Usage(String),
    Input(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Input(e)
    }
}

type Outcome = std::result::Result<bool, Fail>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let recorded = recorded_args(&argv);
    let result = match cli.command {
        Command::Construct(a) => cmd_construct(&a, recorded),
        Command::Verify(a) => cmd_verify(&a),
        Command::Search(a) => cmd_search(&a, recorded),
        Command::Scheme(a) => cmd_scheme(&a, recorded),
        Command::Replay(a) => cmd_replay(&a),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Fail::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(Fail::Input(e)) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Arguments after the subcommand, minus `--out` and `--threads`.
fn recorded_args(argv: &[OsString]) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = argv.iter().skip(2).map(|a| a.to_string_lossy().into_owned());
    while let Some(a) = it.next() {
        if a == "--out" || a == "--threads" {
            it.next();
        } else if !(a.starts_with("--out=") || a.starts_with("--threads=")) {
            out.push(a);
        }
    }
    out
}

fn file_stem(spec: &str) -> String {
    spec.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

fn print_report(cert: &Certificate) {
    print!("{}", cert.report());
}

fn finish(mut sink_manifest: RunManifest, out: &Path, started: Instant) -> Result<()> {
    sink_manifest.wall_time_ms = started.elapsed().as_millis() as u64;
    sink_manifest.write(out)
}

fn dw_grid(dw: &DwCollection) -> SignGridFile {
    let ws: Vec<String> = dw.weights().iter().map(ToString::to_string).collect();
    SignGridFile::new("dw", dw.matrices().to_vec()).with("weights", ws.join(","))
}

fn pair_grid(fam: &PairFamily) -> SignGridFile {
    let kind = match fam.kind() {
        crate::construct::PairKind::HK => "pairs-hk",
        crate::construct::PairKind::LM => "pairs-lm",
    };
    let ms = fam.pairs().iter().flat_map(|p| [p.hadamard.clone(), p.perm.clone()]).collect();
    SignGridFile::new(kind, ms).with("m", fam.m())
}

fn read_dw_file(path: &Path) -> Result<DwCollection> {
    let f = SignGridFile::read(path)?;
    let weights = match f.weights()? {
        Some(w) => w,
        None => f.matrices.iter().map(|m| m.row(0).iter().filter(|&&v| v != 0).count()).collect(),
    };
    DwCollection::certify(f.matrices, weights)
}

fn sylvester_spec(s: &str) -> Option<usize> {
    let rest = s.strip_prefix("sylvester:")?;
    let t: u32 = rest.strip_prefix("2^")?.parse().ok()?;
    1usize.checked_shl(t).filter(|&o| o >= 2 && t < 16)
}

fn cmd_construct(a: &ConstructArgs, recorded: Vec<String>) -> Outcome {
    let started = Instant::now();
    let mut manifest = RunManifest::new("construct", recorded);
    manifest.param("spec", &a.spec);
    let stem = file_stem(&a.spec);
    let mut grids: Vec<(String, SignGridFile)> = Vec::new();
    let cert = if let Some(order) = sylvester_spec(&a.spec) {
        let h = sylvester_hadamard(order)?;
        let cert = is_hadamard(&h);
        grids.push((stem.clone(), SignGridFile::new("hadamard", vec![h])));
        cert
    } else if let Some(m) = a.spec.strip_prefix("pairs:m=") {
        let m: u32 = m.parse().ok().filter(|&m| (1..=8).contains(&m)).ok_or_else(|| {
            Fail::Usage(format!("pairs needs 1 <= m <= 8, got {m:?}; valid families: {FAMILIES}"))
        })?;
        let (hk, lm) = pair_family(m);
        let mut cert = check_pair_conditions(&hk);
        cert.extend(check_pair_conditions(&lm));
        grids.push((format!("{stem}_hk"), pair_grid(&hk)));
        grids.push((format!("{stem}_lm"), pair_grid(&lm)));
        cert
    } else {
        let dw = match a.spec.as_str() {
            "dw28" => embedded_dw(Embedded::Dw28),
            "dw52" => embedded_dw(Embedded::Dw52),
            spec => {
                let fam: Family =
                    spec.parse().map_err(|_| Fail::Usage(format!("unknown family {spec:?}; valid families: {FAMILIES}")))?;
                let base = match &a.base {
                    Some(p) => {
                        manifest.input(p)?;
                        Some(read_dw_file(p)?)
                    }
                    None => None,
                };
                family(fam, base.as_ref())?
            }
        };
        let cert = dw.certificate();
        grids.push((stem.clone(), dw_grid(&dw)));
        manifest.param("notation", dw.notation());
        cert
    };
    let mut sink = OutputSink::new(&a.out, &mut manifest)?;
    for (name, g) in &grids {
        sink.put(&format!("{name}.grid"), g.to_text())?;
        if a.json {
            sink.put(&format!("{name}.json"), format!("{:#}\n", g.to_json()))?;
        }
    }
    sink.put(&format!("{stem}.cert.txt"), cert.report())?;
    print_report(&cert);
    finish(manifest, &a.out, started)?;
    Ok(cert.passed())
}

fn parse_weights(s: &str) -> std::result::Result<Vec<usize>, Fail> {
    s.split(',').map(|w| w.trim().parse().map_err(|_| Fail::Usage(format!("bad weight list {s:?}")))).collect()
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let f = SignGridFile::read(&a.file)?;
    let cert = match a.expect {
        Expect::Dw | Expect::Od => {
            let weights = match (&a.weights, f.weights()?) {
                (Some(w), _) => parse_weights(w)?,
                (None, Some(w)) => w,
                (None, None) => f.matrices.iter().map(|m| m.row(0).iter().filter(|&&v| v != 0).count()).collect(),
            };
            let mut cert = certify_dw(&f.matrices, &weights)?;
            if a.expect == Expect::Od {
                cert.extend(is_antiamicable_family(&f.matrices)?);
            }
            cert
        }
        Expect::Hadamard => {
            let mut cert = Certificate::for_matrices(&f.matrices);
            for (i, h) in f.matrices.iter().enumerate() {
                for c in is_hadamard(h).checks {
                    cert.push(Check { name: format!("{}[{i}]", c.name), ..c });
                }
            }
            cert
        }
        Expect::Pairs => {
            if f.matrices.len() % 2 != 0 {
                return Err(Fail::Input(Error::ShapeMismatch(format!(
                    "pair files hold H, K blocks alternately; found {} blocks",
                    f.matrices.len()
                ))));
            }
            let order = f.matrices[0].order();
            if !order.is_power_of_two() || order < 2 {
                return Err(Fail::Input(Error::ShapeMismatch(format!("pair order {order} is not a power of two"))));
            }
            let kind = match f.kind() {
                Some("pairs-lm") => crate::construct::PairKind::LM,
                Some("pairs-hk") => crate::construct::PairKind::HK,
                _ if f.matrices[1].is_symmetric() => crate::construct::PairKind::LM,
                _ => crate::construct::PairKind::HK,
            };
            let pairs = f
                .matrices
                .chunks(2)
                .map(|c| crate::construct::Pair { hadamard: c[0].clone(), perm: c[1].clone() })
                .collect();
            check_pair_conditions(&PairFamily::from_parts(order.trailing_zeros(), kind, pairs))
        }
    };
    print_report(&cert);
    Ok(cert.passed())
}

fn seed_text(seeds: &[crate::construct::GsQuadSeed; 3]) -> String {
    let mut out = String::new();
    for (i, s) in seeds.iter().enumerate() {
        for (name, row) in ["a", "b", "c", "d"].iter().zip(s.rows()) {
            let signs: String = row.iter().map(|&v| match v { 1 => '+', -1 => '-', _ => '0' }).collect();
            writeln!(out, "{name}{} {signs}", i + 1).unwrap();
        }
    }
    out
}

fn cmd_search(a: &SearchArgs, mut recorded: Vec<String>) -> Outcome {
    let started = Instant::now();
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().ok().filter(|&t: &usize| t > 0).ok_or_else(|| {
            Fail::Usage(format!("{THREADS_ENV}={v:?} is not a positive integer"))
        })?,
        Err(_) => a.threads.max(1),
    };
    let problem = SearchProblem::new(a.n)
        .map_err(|e| Fail::Usage(e.to_string()))?
        .with_budget(a.budget, Duration::from_secs(a.time_limit))
        .with_rng_seed(a.seed);
    if threads > 1 && (a.checkpoint.is_some() || a.resume.is_some()) {
        return Err(Fail::Usage("checkpoints are single-threaded; use --threads 1".into()));
    }
    let opts = SearchOptions {
        pruning: !a.no_pruning,
        symmetry: !a.no_symmetry,
        threads,
        progress_every: a.progress,
    };
    recorded.extend(["--threads".to_string(), threads.to_string()]);
    let mut manifest = RunManifest::new("search", recorded);
    manifest.rng_seed = a.seed;
    manifest.param("n", a.n);
    manifest.param("w", problem.w);
    manifest.param("budget", a.budget);
    manifest.param("threads", threads);
    let mut report = |p: &search::Progress<'_>| eprintln!("{}", p.line());
    let progress: Option<search::ProgressFn<'_>> = (a.progress > 0).then_some(&mut report as _);
    let outcome = match &a.resume {
        Some(path) => {
            manifest.input(path)?;
            search::resume(&problem, &opts, &std::fs::read(path).map_err(Error::from)?, progress)?
        }
        None => search::search_with(&problem, &opts, progress)?,
    };
    let mut sink = OutputSink::new(&a.out, &mut manifest)?;
    let (passed, stats) = match outcome {
        SearchOutcome::Found(res) => {
            let dw = res.collection()?;
            let cert = dw.certificate();
            sink.put("seeds.txt", seed_text(&res.seeds))?;
            sink.put("dw.grid", dw_grid(&dw).to_text())?;
            if a.json {
                sink.put("dw.json", format!("{:#}\n", dw_grid(&dw).to_json()))?;
            }
            sink.put("cert.txt", cert.report())?;
            sink.manifest().param("notation", dw.notation());
            println!("found {}", dw.notation());
            print!("{}", seed_text(&res.seeds));
            print_report(&cert);
            (cert.passed(), res.stats)
        }
        SearchOutcome::Exhausted(stats) => {
            println!("search space exhausted: no solution for n={}", a.n);
            (false, stats)
        }
        SearchOutcome::BudgetExceeded { stats, checkpoint } => {
            println!("budget exhausted after {} nodes", stats.nodes);
            if let Some(ckpt) = checkpoint {
                let path = a.checkpoint.clone().unwrap_or_else(|| a.out.join("search.ckpt"));
                write_checkpoint(&path, &ckpt)?;
                println!("checkpoint written to {}", path.display());
            }
            (false, stats)
        }
    };
    let stats_json = json!({
        "nodes": stats.nodes,
        "solutions": stats.solutions,
        "prunes": stats.prunes,
        "depth_histogram": stats.depth_histogram,
        "symmetry_reduced": stats.symmetry_reduced,
    });
    sink.put("stats.json", format!("{stats_json:#}\n"))?;
    println!("nodes={} elapsed_ms={}", stats.nodes, stats.elapsed.as_millis());
    finish(manifest, &a.out, started)?;
    Ok(passed)
}

fn write_checkpoint(path: &Path, ckpt: &Checkpoint) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, ckpt.to_bytes())?;
    Ok(())
}

fn builtin_dw(name: &str, k: usize, m: usize) -> std::result::Result<DwCollection, Fail> {
    let pick = match name {
        "builtin" => match (k, m) {
            (1, 1) => "base",
            (3, 9) => "dw28",
            (3, 17) => "dw52",
            _ => {
                return Err(Fail::Usage(format!(
                    "no builtin DW(km+1; [m]^k) for k={k}, m={m}; builtins are (1,1), (3,9), (3,17); pass --dw <file>"
                )))
            }
        },
        other => other.strip_prefix("builtin:").unwrap_or(""),
    };
    Ok(match pick {
        "base" => DwCollection::certify(vec![base_pair().1], vec![1])?,
        "dw28" => embedded_dw(Embedded::Dw28),
        "dw52" => embedded_dw(Embedded::Dw52),
        _ => return Err(Fail::Usage(format!("unknown builtin {name:?}; use builtin:base, builtin:dw28 or builtin:dw52"))),
    })
}

fn cmd_scheme(a: &SchemeArgs, recorded: Vec<String>) -> Outcome {
    let started = Instant::now();
    let (k, m, l) = (a.k, a.m, a.l);
    if k == 0 || m == 0 || l == 0 {
        return Err(Fail::Usage("k, m and l must be positive".into()));
    }
    let mut manifest = RunManifest::new("scheme", recorded);
    for (key, v) in [("k", k), ("m", m), ("l", l)] {
        manifest.param(key, v);
    }
    let dw = if a.dw.starts_with("builtin") {
        builtin_dw(&a.dw, k, m)?
    } else {
        let p = Path::new(&a.dw);
        manifest.input(p)?;
        read_dw_file(p)?
    };
    let order = k * l + 1;
    let hadamard = if a.hadamard == "sylvester" {
        if !order.is_power_of_two() {
            return Err(Fail::Usage(format!(
                "kl+1 = {order} is not a power of two, so no Sylvester Hadamard matrix exists; pass --hadamard <file>"
            )));
        }
        sylvester_hadamard(order)?
    } else {
        let p = Path::new(&a.hadamard);
        manifest.input(p)?;
        let f = SignGridFile::read(p)?;
        normalize_hadamard(&f.matrices[0])
    };
    let params = SchemeParams::new(k, m, l, dw, hadamard).map_err(|e| match e {
        Error::ParamMismatch(msg) => Fail::Usage(msg),
        other => Fail::Input(other),
    })?;
    let rel = build_relations(&params)?;
    let mut report = certify_scheme(&rel);
    report.extend(check_split_identity(params.dw()));
    let mut sink = OutputSink::new(&a.out, &mut manifest)?;
    sink.put("relations.grid", SignGridFile::new("relations", rel.relations().to_vec()).with("classes", rel.d()).to_text())?;
    if !report.passed() {
        sink.put("report.txt", report.report())?;
        print_report(&report);
        finish(manifest, &a.out, started)?;
        return Ok(false);
    }
    report.extend(check_product_formulas(&rel));
    report.extend(coclique_bound_check(&rel)?);
    let tensor = intersection_tensor(&rel)?;
    let l1 = intersection_matrix_l1(&rel)?;
    let l1_text = int_rows(&l1);
    sink.put("l1.txt", &l1_text)?;
    let d = rel.d();
    let p: Vec<Vec<Vec<i64>>> =
        (0..=d).map(|i| (0..=d).map(|j| (0..=d).map(|h| tensor.get(i, j, h)).collect()).collect()).collect();
    sink.put("tensor.json", format!("{:#}\n", json!({ "classes": d, "p": p })))?;
    report.push(match closed_form_l1(k, m, l) {
        Ok(closed) => Check::noted("l1_closed_form", closed == l1, "computed L1 vs closed form"),
        Err(e) => Check::noted("l1_closed_form", false, e.to_string()),
    });
    let closed = closed_form_p(k as u64, m as u64, l as u64);
    sink.put("eigen_closed.txt", closed.to_text())?;
    match eigenmatrices_from_l1(&l1, &rel) {
        Ok(e) => {
            sink.put("eigen_computed.txt", e.to_text())?;
            if a.json {
                sink.put("eigen.json", format!("{:#}\n", json!({ "computed": e.to_json(), "closed_form": closed.to_json() })))?;
            }
            report.extend(certify_eigenmatrices(&e, &rel)?);
            report.extend(compare(&e, &closed)?);
        }
        Err(err @ Error::UnexpectedSpectrum { .. }) => report.push(Check::noted("spectrum", false, err.to_string())),
        Err(err) => return Err(err.into()),
    }
    sink.put("report.txt", report.report())?;
    println!("{}-class scheme on {} vertices", d, rel.vertices());
    print_report(&report);
    finish(manifest, &a.out, started)?;
    Ok(report.passed())
}

fn int_rows(m: &crate::matcore::IntMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.order() {
        let row: Vec<String> = (0..m.order()).map(|c| m.get(r, c).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn cmd_replay(a: &ReplayArgs) -> Outcome {
    let recorded = RunManifest::read(&a.manifest)?;
    let changed = recorded.changed_inputs();
    if !changed.is_empty() {
        return Err(Fail::Usage(format!("inputs changed since the recorded run: {}", changed.join(", "))));
    }
    let mut argv: Vec<OsString> = vec!["dwm".into(), recorded.command.clone().into()];
    argv.extend(recorded.args.iter().map(OsString::from));
    argv.extend(["--out".into(), a.out.clone().into_os_string()]);
    let cli = Cli::try_parse_from(&argv).map_err(|e| Fail::Usage(format!("manifest arguments do not parse: {e}")))?;
    let rerun = match cli.command {
        Command::Construct(c) => cmd_construct(&c, recorded.args.clone()),
        Command::Search(s) => cmd_search(&s, strip_threads(&recorded.args)),
        Command::Scheme(s) => cmd_scheme(&s, recorded.args.clone()),
        Command::Verify(_) | Command::Replay(_) => {
            return Err(Fail::Usage(format!("{} runs do not record manifests", recorded.command)))
        }
    };
    if let Err(Fail::Usage(msg)) = rerun {
        return Err(Fail::Usage(msg));
    }
    let fresh = RunManifest::read(&a.out.join(manifest::FILE_NAME))?;
    let mut cert = Certificate::new(format!("replay of {}", a.manifest.display()));
    for (name, hash) in &recorded.outputs {
        let now = fresh.outputs.get(name);
        cert.push(Check::noted(format!("output[{name}]"), now == Some(hash), now.map_or("missing", |h| h.as_str())));
    }
    for name in fresh.outputs.keys().filter(|n| !recorded.outputs.contains_key(*n)) {
        cert.push(Check::noted(format!("output[{name}]"), false, "not in the recorded run"));
    }
    print_report(&cert);
    Ok(cert.passed())
}

/// Recorded search arguments end with `--threads N`; drop it so the
/// re-parse does not see it twice.
fn strip_threads(args: &[String]) -> Vec<String> {
    recorded_args(&std::iter::repeat_n(OsString::new(), 2).chain(args.iter().map(OsString::from)).collect::<Vec<_>>())
}
