//! `validate`, `merge` and `retrieve`.

use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use foon_core::{
    export_dot, export_tree_document, merge as merge_networks, object_key, parse_foon, retrieve,
    serialize_foon, tree_stats, Algorithm, FunctionalUnit, RetrievalConfig, RetrievalError,
    TaskTree,
};
use rayon::prelude::*;

use crate::inputs::{read, read_networks, Problem};
use crate::{Failure, Format, EXIT_OK, EXIT_PARSE, EXIT_UNREACHABLE};

const STACK_SIZE: usize = 64 << 20;

pub(crate) fn plural(count: usize, noun: &str) -> String {
    if count == 1 {
        format!("1 {noun}")
    } else {
        format!("{count} {noun}s")
    }
}

fn summary(units: &[FunctionalUnit]) -> String {
    let objects: BTreeSet<String> = units
        .iter()
        .flat_map(|u| u.inputs().iter().chain(u.outputs()))
        .map(object_key)
        .collect();
    let motions: BTreeSet<&str> = units.iter().map(|u| u.motion().label()).collect();
    format!(
        "{}, {}, {}",
        plural(units.len(), "unit"),
        plural(objects.len(), "object"),
        plural(motions.len(), "motion")
    )
}

pub(crate) fn validate(
    paths: &[PathBuf],
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let mut code = EXIT_OK;
    for path in paths {
        let (units, diagnostics) = parse_foon(&read(path)?);
        for d in &diagnostics {
            let _ = writeln!(stderr, "{}: {d}", path.display());
        }
        if diagnostics.iter().any(|d| d.is_error()) {
            code = EXIT_PARSE;
        }
        let _ = writeln!(stdout, "{}: {}", path.display(), summary(&units));
    }
    Ok(code)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))
}

pub(crate) fn merge(
    paths: &[PathBuf],
    out: &Path,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let networks = read_networks(paths, stderr)?;
    let total: usize = networks.iter().map(|n| n.len()).sum();
    let merged = merge_networks(&networks);
    write_file(out, &serialize_foon(merged.units()))?;
    let _ = writeln!(
        stdout,
        "{} written to {}, {} removed",
        plural(merged.len(), "unit"),
        out.display(),
        plural(total - merged.len(), "duplicate")
    );
    Ok(EXIT_OK)
}

/// Lowercases `label` and replaces every non-alphanumeric character with `-`.
pub fn slugify(label: &str) -> String {
    label
        .chars()
        .flat_map(char::to_lowercase)
        .map(|c| if c.is_alphanumeric() { c } else { '-' })
        .collect()
}

/// One slug per label, in order; repeats get `-2`, `-3`, ...
pub(crate) fn unique_slugs<'a>(labels: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let mut used = HashSet::new();
    labels
        .into_iter()
        .map(|label| {
            let base = slugify(label);
            let mut slug = base.clone();
            let mut n = 1;
            while !used.insert(slug.clone()) {
                n += 1;
                slug = format!("{base}-{n}");
            }
            slug
        })
        .collect()
}

pub(crate) fn config(problem: &Problem, algorithm: Algorithm) -> RetrievalConfig {
    let mut config = RetrievalConfig::new(algorithm);
    if let Some(profile) = &problem.profile {
        config = config.with_profile(profile.clone());
    }
    if let (Algorithm::Ids, Some(depth)) = (algorithm, problem.max_depth) {
        config = config.with_max_depth(depth);
    }
    config
}

/// Runs every (goal, algorithm) job concurrently; results keep job order.
pub(crate) fn solve_all(
    problem: &Problem,
    jobs: &[(usize, Algorithm)],
) -> Vec<Result<TaskTree, RetrievalError>> {
    let solve = |&(goal, algorithm): &(usize, Algorithm)| {
        retrieve(
            &problem.network,
            &problem.goals[goal],
            &problem.kitchen,
            &config(problem, algorithm),
        )
    };
    match rayon::ThreadPoolBuilder::new()
        .stack_size(STACK_SIZE)
        .build()
    {
        Ok(pool) => pool.install(|| jobs.par_iter().map(solve).collect()),
        Err(_) => jobs.iter().map(solve).collect(),
    }
}

pub(crate) fn failure_message(error: &RetrievalError) -> String {
    match error {
        RetrievalError::GoalNotFound(label) => {
            format!("unreachable goal: {label} (goal not found in network)")
        }
        other => other.to_string(),
    }
}

pub(crate) fn warn_missing_profile(problem: &Problem, stderr: &mut dyn Write) {
    if problem.profile.is_none() {
        let _ = writeln!(
            stderr,
            "warning: no --motions given; gbfs-h1 scores every motion {}",
            foon_core::io::DEFAULT_MOTION_PROBABILITY
        );
    }
}

fn render(tree: &TaskTree, format: Format) -> String {
    match format {
        Format::Foon => serialize_foon(&tree.units),
        Format::Json => export_tree_document(tree),
        Format::Dot => export_dot(&tree.units),
    }
}

pub(crate) fn retrieve_goals(
    problem: &Problem,
    algorithm: Algorithm,
    format: Format,
    out: &Path,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    if algorithm == Algorithm::GbfsH1 {
        warn_missing_profile(problem, stderr);
    }
    if algorithm != Algorithm::Ids && problem.max_depth.is_some() {
        let _ = writeln!(stderr, "warning: --max-depth applies only to ids; ignored");
    }
    fs::create_dir_all(out)
        .map_err(|e| Failure::io(format!("cannot create {}: {e}", out.display())))?;

    let slugs = unique_slugs(problem.goals.iter().map(|g| g.label.as_str()));
    let jobs: Vec<_> = (0..problem.goals.len()).map(|g| (g, algorithm)).collect();
    let mut code = EXIT_OK;
    for ((result, slug), goal) in solve_all(problem, &jobs)
        .iter()
        .zip(&slugs)
        .zip(&problem.goals)
    {
        match result {
            Ok(tree) => {
                let path = out.join(format!("{slug}.{}", format.extension()));
                write_file(&path, &render(tree, format))?;
                let stats = tree_stats(tree);
                let _ = writeln!(
                    stdout,
                    "{}: units={} objects={} motions={} lines={} -> {}",
                    goal.label,
                    stats.unit_count,
                    stats.distinct_object_count,
                    stats.motion_count,
                    stats.output_lines,
                    path.display()
                );
            }
            Err(error) => {
                let _ = writeln!(stderr, "{}", failure_message(error));
                code = EXIT_UNREACHABLE;
            }
        }
    }
    Ok(code)
}
