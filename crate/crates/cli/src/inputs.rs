//! Reading and checking the files shared by `retrieve` and `benchmark`.

use std::fs;
use std::io::Write;
use std::path::Path;

use foon_core::{
    merge, parse_foon, parse_goal_list, parse_kitchen, parse_motion_profile, EntryDiagnostic,
    Kitchen, MaxDepth, MotionProfile, Network, ObjectSpec, Severity,
};

use crate::{Failure, ProblemArgs};

pub(crate) struct Problem {
    pub network: Network,
    pub kitchen: Kitchen,
    pub goals: Vec<ObjectSpec>,
    pub profile: Option<MotionProfile>,
    pub max_depth: Option<MaxDepth>,
}

pub(crate) fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))
}

/// Parses FOON files, printing every diagnostic. Fails on the first I/O
/// error, or after all files when any file had a parse error.
pub(crate) fn read_networks(
    paths: &[impl AsRef<Path>],
    stderr: &mut dyn Write,
) -> Result<Vec<Network>, Failure> {
    let mut networks = Vec::new();
    let mut errors = 0;
    for path in paths {
        let path = path.as_ref();
        let (units, diagnostics) = parse_foon(&read(path)?);
        for d in &diagnostics {
            let _ = writeln!(stderr, "{}: {d}", path.display());
        }
        errors += diagnostics.iter().filter(|d| d.is_error()).count();
        networks.push(Network::from_units(units));
    }
    if errors > 0 {
        return Err(Failure::parse(format!("{errors} malformed block(s)")));
    }
    Ok(networks)
}

fn report_entries(
    path: &Path,
    diagnostics: &[EntryDiagnostic],
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    for d in diagnostics {
        let _ = writeln!(stderr, "{}: {d}", path.display());
    }
    if diagnostics.iter().any(|d| d.severity == Severity::Error) {
        return Err(Failure::parse(format!(
            "invalid entries in {}",
            path.display()
        )));
    }
    Ok(())
}

pub(crate) fn load(args: &ProblemArgs, stderr: &mut dyn Write) -> Result<Problem, Failure> {
    let network = merge(&read_networks(&args.foon, stderr)?);

    let kitchen_text = read(&args.kitchen)?;
    let utensils_text = read(&args.utensils)?;
    let (kitchen, diagnostics) = parse_kitchen(&kitchen_text, &utensils_text)
        .map_err(|e| Failure::parse(format!("{}: {e}", args.kitchen.display())))?;
    report_entries(&args.kitchen, &diagnostics, stderr)?;

    let (goals, diagnostics) = parse_goal_list(&read(&args.goals)?)
        .map_err(|e| Failure::parse(format!("{}: {e}", args.goals.display())))?;
    report_entries(&args.goals, &diagnostics, stderr)?;

    let profile = match &args.motions {
        None => None,
        Some(path) => Some(
            parse_motion_profile(&read(path)?)
                .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?,
        ),
    };
    let max_depth = args.max_depth.map(|d| {
        MaxDepth::limit(usize::try_from(d).unwrap_or(usize::MAX)).expect("clap enforces >= 1")
    });

    Ok(Problem {
        network,
        kitchen,
        goals,
        profile,
        max_depth,
    })
}
