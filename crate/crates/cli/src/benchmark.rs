//! `benchmark`: every goal under every algorithm, as two text tables and a
//! JSON document.

use std::fs;
use std::io::Write;
use std::path::Path;

use foon_core::{tree_stats, Algorithm, RetrievalStats};
use serde::{Deserialize, Serialize};

use crate::commands::{failure_message, solve_all, warn_missing_profile};
use crate::inputs::Problem;
use crate::{Failure, EXIT_OK, EXIT_UNREACHABLE};

const MISSING: &str = "—";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum AlgorithmOutcome {
    Solved(RetrievalStats),
    Failed { algorithm: Algorithm, error: String },
}

impl AlgorithmOutcome {
    fn stats(&self) -> Option<&RetrievalStats> {
        match self {
            AlgorithmOutcome::Solved(stats) => Some(stats),
            AlgorithmOutcome::Failed { .. } => None,
        }
    }
}

/// One goal evaluated by IDS, H1 and H2, in that order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchmarkRow {
    pub goal: String,
    pub results: Vec<AlgorithmOutcome>,
}

fn table(title: &str, rows: &[BenchmarkRow], metric: fn(&RetrievalStats) -> usize) -> String {
    let mut grid = vec![std::iter::once("goal".to_owned())
        .chain(Algorithm::ALL.iter().map(|a| a.short_name().to_owned()))
        .collect::<Vec<_>>()];
    for row in rows {
        let cells = row.results.iter().map(|r| match r.stats() {
            Some(stats) => metric(stats).to_string(),
            None => MISSING.to_owned(),
        });
        grid.push(std::iter::once(row.goal.clone()).chain(cells).collect());
    }
    let widths: Vec<usize> = (0..grid[0].len())
        .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = format!("{title}\n");
    for row in &grid {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            let pad = " ".repeat(widths[c] - cell.chars().count());
            if c == 0 {
                line.push_str(cell);
                line.push_str(&pad);
            } else {
                line.push_str("  ");
                line.push_str(&pad);
                line.push_str(cell);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Output-line and unit-count tables, separated by a blank line.
pub fn render_tables(rows: &[BenchmarkRow]) -> String {
    format!(
        "{}\n{}",
        table("Output lines", rows, |s| s.output_lines),
        table("Functional units", rows, |s| s.unit_count)
    )
}

pub(crate) fn benchmark(
    problem: &Problem,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    warn_missing_profile(problem, stderr);
    let jobs: Vec<_> = (0..problem.goals.len())
        .flat_map(|g| Algorithm::ALL.map(|a| (g, a)))
        .collect();
    let mut results = solve_all(problem, &jobs).into_iter();
    let mut code = EXIT_OK;
    let mut rows = Vec::new();
    for goal in &problem.goals {
        let mut row = BenchmarkRow {
            goal: goal.label.clone(),
            results: Vec::new(),
        };
        for algorithm in Algorithm::ALL {
            let outcome = match results.next().expect("one result per job") {
                Ok(tree) => AlgorithmOutcome::Solved(tree_stats(&tree)),
                Err(error) => {
                    let message = failure_message(&error);
                    let _ = writeln!(stderr, "{algorithm}: {message}");
                    code = EXIT_UNREACHABLE;
                    AlgorithmOutcome::Failed {
                        algorithm,
                        error: message,
                    }
                }
            };
            row.results.push(outcome);
        }
        rows.push(row);
    }
    let _ = stdout.write_all(render_tables(&rows).as_bytes());
    if let Some(dir) = out {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::io(format!("cannot create {}: {e}", dir.display())))?;
        let path = dir.join("benchmark.json");
        let mut document = serde_json::to_string_pretty(&rows).expect("rows serialize");
        document.push('\n');
        fs::write(&path, document)
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(code)
}
