//! Line-oriented job files.
//!
//! ```text
//! # one ring declaration, roles after a colon
//! ring t:param, y:divisor, x1, x2
//! ideal I = y^2 - t, x1
//! cmd critical-exponent I
//! ```
//!
//! Roles: `param` (base parameter), `divisor` (divisor coordinate), `y1`/`y2`
//! (node branches); unannotated variables are transverse directions. Blank
//! lines and `#` comments are ignored. The `cmd` name must match the invoked
//! subcommand.

use std::collections::BTreeMap;
use std::sync::Arc;

use flatlimit::parse::parse_polynomial;
use flatlimit::{Error, Ideal, Ring};

#[derive(Debug, Default, Clone, Copy)]
pub struct Roles {
    pub param: Option<usize>,
    pub divisor: Option<usize>,
    pub y1: Option<usize>,
    pub y2: Option<usize>,
}

#[derive(Debug)]
pub struct Job {
    pub ring: Arc<Ring>,
    pub roles: Roles,
    pub ideals: BTreeMap<String, Ideal>,
    pub command: String,
    pub args: Vec<String>,
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::SyntaxError { position: line, message: message.into() }
}

fn assign(slot: &mut Option<usize>, index: usize, role: &str, line: usize) -> Result<(), Error> {
    if slot.replace(index).is_some() {
        return Err(syntax(line, format!("role '{role}' declared twice")));
    }
    Ok(())
}

fn parse_ring(body: &str, line: usize) -> Result<(Arc<Ring>, Roles), Error> {
    let mut names = Vec::new();
    let mut roles = Roles::default();
    for entry in body.split(',') {
        let entry = entry.trim();
        if entry.is_empty() {
            return Err(syntax(line, "empty variable entry in ring declaration"));
        }
        let (name, role) = match entry.split_once(':') {
            None => (entry, None),
            Some((n, r)) => (n.trim(), Some(r.trim())),
        };
        let index = names.len();
        match role {
            None | Some("transverse") => {}
            Some("param") => assign(&mut roles.param, index, "param", line)?,
            Some("divisor") => assign(&mut roles.divisor, index, "divisor", line)?,
            Some("y1") => assign(&mut roles.y1, index, "y1", line)?,
            Some("y2") => assign(&mut roles.y2, index, "y2", line)?,
            Some(other) => return Err(syntax(line, format!("unknown role '{other}'"))),
        }
        names.push(name.to_string());
    }
    let ring = Ring::new(names).map_err(|e| match e {
        Error::InvalidRing { detail } => syntax(line, detail),
        other => other,
    })?;
    Ok((ring, roles))
}

/// Parse a complete job file.
pub fn parse_job(text: &str) -> Result<Job, Error> {
    let mut ring: Option<(Arc<Ring>, Roles)> = None;
    let mut ideals: BTreeMap<String, Ideal> = BTreeMap::new();
    let mut command: Option<(String, Vec<String>)> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (keyword, body) = match trimmed.split_once(char::is_whitespace) {
            Some((k, b)) => (k, b.trim()),
            None => (trimmed, ""),
        };
        match keyword {
            "ring" => {
                if ring.is_some() {
                    return Err(syntax(line, "more than one ring declaration"));
                }
                ring = Some(parse_ring(body, line)?);
            }
            "ideal" => {
                let Some((ring, _)) = &ring else {
                    return Err(syntax(line, "ideal declared before the ring"));
                };
                let Some((name, gens)) = body.split_once('=') else {
                    return Err(syntax(line, "expected 'ideal NAME = generators'"));
                };
                let name = name.trim();
                if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(syntax(line, format!("bad ideal name '{name}'")));
                }
                let mut parsed = Vec::new();
                for gen in gens.split(',') {
                    parsed.push(parse_polynomial(gen, ring)?);
                }
                if ideals.insert(name.to_string(), Ideal::new(ring, parsed)).is_some() {
                    return Err(syntax(line, format!("ideal '{name}' declared twice")));
                }
            }
            "cmd" => {
                if command.is_some() {
                    return Err(syntax(line, "more than one cmd line"));
                }
                let mut words = body.split_whitespace().map(str::to_string);
                let Some(name) = words.next() else {
                    return Err(syntax(line, "cmd line names no command"));
                };
                command = Some((name, words.collect()));
            }
            other => return Err(syntax(line, format!("unknown directive '{other}'"))),
        }
    }

    let (ring, roles) = ring.ok_or_else(|| syntax(0, "job file declares no ring"))?;
    let (command, args) = command.ok_or_else(|| syntax(0, "job file declares no cmd"))?;
    Ok(Job { ring, roles, ideals, command, args })
}

impl Job {
    pub fn ideal(&self, name: &str) -> Result<&Ideal, Error> {
        self.ideals
            .get(name)
            .ok_or_else(|| syntax(0, format!("ideal '{name}' is not declared")))
    }

    pub fn arg(&self, index: usize) -> Result<&str, Error> {
        self.args
            .get(index)
            .map(String::as_str)
            .ok_or_else(|| syntax(0, format!("cmd '{}' is missing argument {}", self.command, index + 1)))
    }

    pub fn role(&self, which: &str) -> Result<usize, Error> {
        let slot = match which {
            "param" => self.roles.param,
            "divisor" => self.roles.divisor,
            "y1" => self.roles.y1,
            "y2" => self.roles.y2,
            _ => None,
        };
        slot.ok_or_else(|| Error::InvalidRing {
            detail: format!("cmd '{}' needs a variable with role '{which}'", self.command),
        })
    }
}
