//! Variable rings. A ring is an ordered list of distinct variable names;
//! polynomials always carry the ring they live in. Earlier variables are more
//! significant for display and for the built-in orders.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ring {
    vars: Vec<String>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Result<Arc<Ring>, Error> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::InvalidRing { detail: format!("bad variable name `{v}`") });
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing { detail: format!("duplicate variable `{v}`") });
            }
        }
        Ok(Arc::new(Ring { vars }))
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The ring with the given variable positions removed.
    pub fn without(&self, drop: &[usize]) -> Arc<Ring> {
        let vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, v)| v.clone())
            .collect();
        Arc::new(Ring { vars })
    }

    /// The ring with an extra variable appended. The name is freshened with
    /// trailing underscores if it collides with an existing variable.
    pub fn appended(&self, name: &str) -> (Arc<Ring>, usize) {
        let mut name = name.to_string();
        while self.vars.contains(&name) {
            name.push('_');
        }
        let mut vars = self.vars.clone();
        vars.push(name);
        let idx = vars.len() - 1;
        (Arc::new(Ring { vars }), idx)
    }

    /// A fresh name based on `base`, distinct from every variable of the ring.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.vars.contains(&name) {
            name.push('_');
        }
        name
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.vars.join(", "))
    }
}
