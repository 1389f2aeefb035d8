//! Text formats for instances and plans.
//!
//! ```text
//! # P3 with an obstacle in the middle
//! vertices: 3
//! labels: s a t
//! arc: s a
//! arc: a t
//! robot: s
//! target: t
//! obstacle: a
//! ```
//!
//! Vertices are named by label or by index. Every vertex that is neither
//! the robot's nor listed as an obstacle holds a hole. Plans are one
//! `move <from> <to>` per line.

use std::fmt::Write as _;

use crate::config::{validate_instance, Configuration, Instance, Move, Plan};
use crate::error::ParseError;
use crate::graph::{Digraph, Vertex};

/// A parsed instance with display names for its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub inst: Instance,
    /// One name per vertex; indices when the file gave no labels.
    pub labels: Vec<String>,
}

impl InstanceFile {
    pub fn name(&self, v: Vertex) -> String {
        self.labels.get(v).cloned().unwrap_or_else(|| v.to_string())
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

/// Resolves a vertex token against labels first, then as an index.
fn resolve(token: &str, labels: &[String], n: usize, line: usize) -> Result<Vertex, ParseError> {
    if let Some(v) = labels.iter().position(|l| l == token) {
        return Ok(v);
    }
    match token.parse::<usize>() {
        Ok(v) if v < n => Ok(v),
        Ok(v) => Err(syntax(line, format!("vertex {v} out of range for {n} vertices"))),
        Err(_) => Err(syntax(line, format!("unknown vertex `{token}`"))),
    }
}

/// Meaningful lines as `(1-based number, key, value)`.
fn entries(text: &str) -> impl Iterator<Item = Result<(usize, &str, &str), ParseError>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            return None;
        }
        Some(match line.split_once(':') {
            Some((k, v)) => Ok((i + 1, k.trim(), v.trim())),
            None => Err(syntax(i + 1, format!("expected `key: value`, got `{line}`"))),
        })
    })
}

/// Parses and validates an instance file.
pub fn parse_instance_file(text: &str) -> Result<InstanceFile, ParseError> {
    let mut n: Option<usize> = None;
    let mut labels: Vec<String> = Vec::new();
    let mut arcs: Vec<(Vertex, Vertex, usize)> = Vec::new();
    let mut robot: Option<Vertex> = None;
    let mut target: Option<Vertex> = None;
    let mut obstacles: Vec<(Vertex, usize)> = Vec::new();
    for entry in entries(text) {
        let (line, key, value) = entry?;
        if key != "vertices" && n.is_none() {
            return Err(syntax(line, "`vertices:` must come first"));
        }
        let count = n.unwrap_or(0);
        let single = |value: &str| -> Result<Vertex, ParseError> {
            let mut toks = value.split_whitespace();
            match (toks.next(), toks.next()) {
                (Some(tok), None) => resolve(tok, &labels, count, line),
                _ => Err(syntax(line, format!("`{key}:` takes exactly one vertex"))),
            }
        };
        match key {
            "vertices" => {
                if n.is_some() {
                    return Err(syntax(line, "duplicate `vertices:` line"));
                }
                n = Some(value.parse().map_err(|_| syntax(line, format!("bad vertex count `{value}`")))?);
            }
            "labels" => {
                if !labels.is_empty() {
                    return Err(syntax(line, "duplicate `labels:` line"));
                }
                let given: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                if given.len() != count {
                    return Err(syntax(line, format!("{} labels for {count} vertices", given.len())));
                }
                for (i, l) in given.iter().enumerate() {
                    if given[..i].contains(l) {
                        return Err(syntax(line, format!("duplicate label `{l}`")));
                    }
                }
                labels = given;
            }
            "arc" => {
                let toks: Vec<&str> = value.split_whitespace().collect();
                let [u, v] = toks[..] else {
                    return Err(syntax(line, "`arc:` takes two vertices"));
                };
                arcs.push((resolve(u, &labels, count, line)?, resolve(v, &labels, count, line)?, line));
            }
            "robot" => {
                if robot.replace(single(value)?).is_some() {
                    return Err(syntax(line, "duplicate `robot:` line"));
                }
            }
            "target" => {
                if target.replace(single(value)?).is_some() {
                    return Err(syntax(line, "duplicate `target:` line"));
                }
            }
            "obstacle" => obstacles.push((single(value)?, line)),
            other => return Err(syntax(line, format!("unknown key `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| ParseError::Missing { message: "missing `vertices:` line".into() })?;
    let s = robot.ok_or_else(|| ParseError::Missing { message: "missing `robot:` line".into() })?;
    let t = target.ok_or_else(|| ParseError::Missing { message: "missing `target:` line".into() })?;
    let mut seen = std::collections::HashSet::with_capacity(arcs.len());
    for &(u, v, line) in &arcs {
        if u == v {
            return Err(syntax(line, format!("self-loop at {u}")));
        }
        if !seen.insert((u, v)) {
            return Err(syntax(line, format!("duplicate arc {u} -> {v}")));
        }
    }
    let mut occupied = vec![false; n];
    occupied[s] = true;
    for &(w, line) in &obstacles {
        if w == s {
            return Err(syntax(line, "obstacle on the robot's vertex"));
        }
        if occupied[w] {
            return Err(syntax(line, format!("vertex {w} listed twice")));
        }
        occupied[w] = true;
    }
    let d = Digraph::new(n, arcs.iter().map(|&(u, v, _)| (u, v)))
        .map_err(|e| ParseError::Missing { message: e.to_string() })?;
    let start = Configuration::new(n, s, (0..n).filter(|&v| !occupied[v]));
    let inst = Instance { d, s, t, start };
    let violations = validate_instance(&inst);
    if !violations.is_empty() {
        return Err(ParseError::Validation(violations));
    }
    if labels.is_empty() {
        labels = (0..n).map(|v| v.to_string()).collect();
    }
    Ok(InstanceFile { inst, labels })
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    parse_instance_file(text).map(|f| f.inst)
}

/// Canonical text form; `labels` are written when given.
pub fn serialize_instance(inst: &Instance, labels: Option<&[String]>) -> String {
    let name = |v: Vertex| labels.map_or_else(|| v.to_string(), |l| l[v].clone());
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}", inst.n());
    if let Some(l) = labels {
        let _ = writeln!(out, "labels: {}", l.join(" "));
    }
    for &(u, v) in inst.d.arcs() {
        let _ = writeln!(out, "arc: {} {}", name(u), name(v));
    }
    let _ = writeln!(out, "robot: {}", name(inst.start.robot()));
    let _ = writeln!(out, "target: {}", name(inst.t));
    for v in 0..inst.n() {
        if v != inst.start.robot() && !inst.start.is_hole(v) {
            let _ = writeln!(out, "obstacle: {}", name(v));
        }
    }
    out
}

/// Parses `move <from> <to>` lines; `#` starts a comment.
pub fn parse_plan(text: &str, labels: &[String]) -> Result<Plan, ParseError> {
    let n = labels.len();
    let mut moves = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let ["move", from, to] = toks[..] else {
            return Err(syntax(i + 1, format!("expected `move <from> <to>`, got `{line}`")));
        };
        moves.push(Move::new(resolve(from, labels, n, i + 1)?, resolve(to, labels, n, i + 1)?));
    }
    Ok(Plan::new(moves))
}

pub fn serialize_plan(plan: &Plan, labels: Option<&[String]>) -> String {
    let name = |v: Vertex| labels.map_or_else(|| v.to_string(), |l| l[v].clone());
    plan.moves.iter().map(|m| format!("move {} {}\n", name(m.from), name(m.to))).collect()
}
