//! Searches for three disjoint skew Goethals-Seidel seeds of block order 7.

use std::time::Duration;

use dwm::search::{search_with, SearchOptions, SearchOutcome, SearchProblem};

fn main() -> dwm::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let problem = SearchProblem::new(n)?.with_budget(100_000_000, Duration::from_secs(600));
    let opts = SearchOptions { progress_every: 10_000_000, ..SearchOptions::default() };
    let mut report = |p: &dwm::search::Progress<'_>| eprintln!("{}", p.line());
    match search_with(&problem, &opts, Some(&mut report))? {
        SearchOutcome::Found(result) => {
            for (i, seed) in result.seeds.iter().enumerate() {
                println!("quad {}: {:?}", i + 1, seed.rows());
            }
            let dw = result.collection()?;
            println!("{} certified: {}", dw.notation(), dw.is_fully_certified());
            println!("nodes: {} in {:?}", result.stats.nodes, result.stats.elapsed);
            println!("prunes: {:?}", result.stats.prunes);
        }
        SearchOutcome::Exhausted(stats) => println!("no solution; {} nodes", stats.nodes),
        SearchOutcome::BudgetExceeded { stats, .. } => println!("budget exhausted after {} nodes", stats.nodes),
    }
    Ok(())
}
