//! Line-oriented FOON text format.
//!
//! ```text
//! //
//! O cutting board
//! S contains {sweet potato}
//! O knife
//! M cut
//! O sweet potato
//! S chopped
//! S in [cutting board]
//! //
//! ```
//!
//! Objects before the `M` line are inputs, objects after it are outputs.
//! A delimiter line is shared between consecutive units.

use std::fmt;

use crate::model::{FunctionalUnit, MotionNode, ObjectNode, StateTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    /// 1-based line number in the parsed text.
    pub line: usize,
    pub severity: Severity,
    pub message: String,
}

impl ParseDiagnostic {
    fn error(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            severity: Severity::Error,
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "line {}: {}: {}", self.line, level, self.message)
    }
}

const DELIMITER: &str = "//";

/// Parses FOON text into units, skipping malformed blocks.
///
/// Never panics; every problem becomes a diagnostic.
pub fn parse_foon(text: &str) -> (Vec<FunctionalUnit>, Vec<ParseDiagnostic>) {
    let mut units = Vec::new();
    let mut diagnostics = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    let mut seen_delimiter = false;

    let mut flush = |block: &mut Vec<(usize, &str)>, diagnostics: &mut Vec<ParseDiagnostic>| {
        if block.is_empty() {
            return;
        }
        match parse_block(block) {
            Ok(unit) => units.push(unit),
            Err(diagnostic) => diagnostics.push(diagnostic),
        }
        block.clear();
    };

    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line == DELIMITER {
            if !seen_delimiter && !block.is_empty() {
                diagnostics.push(ParseDiagnostic {
                    line: block[0].0,
                    severity: Severity::Warning,
                    message: "unit is not preceded by a \"//\" delimiter".into(),
                });
            }
            seen_delimiter = true;
            flush(&mut block, &mut diagnostics);
        } else if !line.is_empty() {
            block.push((index + 1, line));
        }
    }
    if !seen_delimiter && !block.is_empty() {
        diagnostics.push(ParseDiagnostic {
            line: block[0].0,
            severity: Severity::Warning,
            message: "unit is not preceded by a \"//\" delimiter".into(),
        });
    }
    flush(&mut block, &mut diagnostics);
    diagnostics.sort_by_key(|d| d.line);
    (units, diagnostics)
}

struct PendingObject {
    label: String,
    states: Vec<StateTag>,
}

fn parse_block(lines: &[(usize, &str)]) -> Result<FunctionalUnit, ParseDiagnostic> {
    let mut inputs: Vec<PendingObject> = Vec::new();
    let mut outputs: Vec<PendingObject> = Vec::new();
    let mut motion: Option<(usize, MotionNode)> = None;

    for &(number, line) in lines {
        let (marker, payload) = split_marker(line);
        match marker {
            "O" | "M" | "S" if payload.is_empty() => {
                return Err(ParseDiagnostic::error(
                    number,
                    format!("\"{marker}\" line has no payload"),
                ));
            }
            "O" => {
                let side = if motion.is_some() {
                    &mut outputs
                } else {
                    &mut inputs
                };
                side.push(PendingObject {
                    label: payload.to_owned(),
                    states: Vec::new(),
                });
            }
            "S" => {
                let side = if motion.is_some() {
                    &mut outputs
                } else {
                    &mut inputs
                };
                // a state right after M has no object to attach to
                let target = match side.last_mut() {
                    Some(object) => object,
                    None => {
                        return Err(ParseDiagnostic::error(
                            number,
                            "state line \"S\" before any object line \"O\"",
                        ))
                    }
                };
                target
                    .states
                    .push(parse_state(payload).map_err(|m| ParseDiagnostic::error(number, m))?);
            }
            "M" => {
                if motion.is_some() {
                    return Err(ParseDiagnostic::error(
                        number,
                        "functional unit has more than one motion line \"M\"",
                    ));
                }
                let node = MotionNode::new(payload)
                    .map_err(|e| ParseDiagnostic::error(number, e.to_string()))?;
                motion = Some((number, node));
            }
            _ => return Err(unrecognized(number, line)),
        }
    }

    let first_line = lines.first().map_or(1, |l| l.0);
    let Some((motion_line, motion)) = motion else {
        return Err(ParseDiagnostic::error(
            first_line,
            "functional unit has no motion line \"M\"",
        ));
    };
    if inputs.is_empty() {
        return Err(ParseDiagnostic::error(
            motion_line,
            "functional unit has no input objects before \"M\"",
        ));
    }
    if outputs.is_empty() {
        return Err(ParseDiagnostic::error(
            motion_line,
            "functional unit has no output objects after \"M\"",
        ));
    }
    let build = |objects: Vec<PendingObject>| {
        objects
            .into_iter()
            .map(|o| ObjectNode::new(&o.label, o.states))
            .collect::<Result<Vec<_>, _>>()
    };
    let inputs = build(inputs).map_err(|e| ParseDiagnostic::error(first_line, e.to_string()))?;
    let outputs = build(outputs).map_err(|e| ParseDiagnostic::error(motion_line, e.to_string()))?;
    FunctionalUnit::new(inputs, motion, outputs)
        .map_err(|e| ParseDiagnostic::error(first_line, e.to_string()))
}

fn split_marker(line: &str) -> (&str, &str) {
    match line.find(char::is_whitespace) {
        Some(at) => (&line[..at], line[at..].trim()),
        None => (line, ""),
    }
}

fn unrecognized(number: usize, line: &str) -> ParseDiagnostic {
    let mut chars = line.chars();
    let first = chars.next();
    let id_prefixed =
        matches!(first, Some('O' | 'S' | 'M')) && chars.next().is_some_and(|c| c.is_ascii_digit());
    if id_prefixed {
        ParseDiagnostic::error(
            number,
            "ID-prefixed FOON lines (e.g. \"O123\") are not supported; use \"O <label>\"",
        )
    } else {
        let shown: String = line.chars().take(24).collect();
        ParseDiagnostic::error(number, format!("unrecognized line prefix in {shown:?}"))
    }
}

fn parse_state(payload: &str) -> Result<StateTag, String> {
    let split = payload.find(['{', '[', '}', ']']).unwrap_or(payload.len());
    let name = payload[..split].trim();
    let mut rest = payload[split..].trim_start();
    if name.is_empty() {
        return Err("state line has no name".into());
    }

    let mut ingredients: Option<Vec<&str>> = None;
    let mut container: Option<&str> = None;
    while let Some(open) = rest.chars().next() {
        let close = match open {
            '{' => '}',
            '[' => ']',
            other => return Err(format!("unexpected {other:?} in state {payload:?}")),
        };
        let body_end = rest[1..]
            .find(['{', '}', '[', ']'])
            .map(|i| i + 1)
            .filter(|&i| rest[i..].starts_with(close))
            .ok_or_else(|| format!("mismatched {open:?} in state {payload:?}"))?;
        let body = &rest[1..body_end];
        if open == '{' {
            if ingredients.is_some() {
                return Err(format!("repeated ingredient set in state {payload:?}"));
            }
            ingredients = Some(body.split(',').map(str::trim).collect());
        } else {
            if container.is_some() {
                return Err(format!("repeated container in state {payload:?}"));
            }
            container = Some(body.trim());
        }
        rest = rest[body_end + 1..].trim_start();
    }

    let tag = match (ingredients, container) {
        (Some(_), Some(_)) => {
            return Err(format!(
                "state {payload:?} has both an ingredient set and a container"
            ))
        }
        (Some(items), None) => StateTag::with_ingredients(name, items),
        (None, Some(c)) => StateTag::in_container(name, c),
        (None, None) => StateTag::plain(name),
    };
    tag.map_err(|e| e.to_string())
}

/// Canonical text for `units`: empty for no units, otherwise a leading
/// delimiter and one closing delimiter per unit, LF line endings.
pub fn serialize_foon(units: &[FunctionalUnit]) -> String {
    if units.is_empty() {
        return String::new();
    }
    let mut out = String::from("//\n");
    for unit in units {
        for object in unit.inputs() {
            write_object(&mut out, object);
        }
        out.push_str("M ");
        out.push_str(unit.motion().label());
        out.push('\n');
        for object in unit.outputs() {
            write_object(&mut out, object);
        }
        out.push_str("//\n");
    }
    out
}

fn write_object(out: &mut String, object: &ObjectNode) {
    out.push_str("O ");
    out.push_str(object.label());
    out.push('\n');
    for state in object.states() {
        out.push_str("S ");
        out.push_str(&state.to_string());
        out.push('\n');
    }
}
