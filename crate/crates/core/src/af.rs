//! Argumentation framework data model and input parsing.
//!
//! A framework is a finite, ordered set of named arguments together with an
//! attack relation. Arguments are addressed by dense 0-based indices
//! ([`Arg`]); subsets of arguments are bitsets ([`ArgSet`]). Frameworks are
//! immutable after construction and safe to share across threads.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

/// An argument, identified by its dense index within one framework.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arg(pub(crate) u32);

impl Arg {
    pub(crate) fn from_index(ix: usize) -> Arg {
        Arg(ix as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Supported input formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Tgf,
    Apx,
}

impl FromStr for Format {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "tgf" => Ok(Format::Tgf),
            "apx" => Ok(Format::Apx),
            _ => Err(()),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Tgf => "tgf",
            Format::Apx => "apx",
        })
    }
}

/// Input error with the 1-based line it was detected on.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// A set of arguments, stored as a bitset over the framework's index space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ArgSet {
    n: u32,
    words: Vec<u64>,
}

impl ArgSet {
    pub fn empty(n: usize) -> Self {
        ArgSet {
            n: n as u32,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = ArgSet::empty(n);
        for i in 0..n {
            s.insert(Arg(i as u32));
        }
        s
    }

    /// Builds a set from the low `n` bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut s = ArgSet::empty(n);
        for i in 0..n.min(64) {
            if mask >> i & 1 == 1 {
                s.insert(Arg(i as u32));
            }
        }
        s
    }

    /// Size of the index space this set ranges over (not the cardinality).
    pub fn universe(&self) -> usize {
        self.n as usize
    }

    pub fn insert(&mut self, a: Arg) {
        debug_assert!(a.0 < self.n);
        self.words[a.index() / 64] |= 1 << (a.index() % 64);
    }

    pub fn remove(&mut self, a: Arg) {
        debug_assert!(a.0 < self.n);
        self.words[a.index() / 64] &= !(1 << (a.index() % 64));
    }

    pub fn contains(&self, a: Arg) -> bool {
        a.0 < self.n && self.words[a.index() / 64] >> (a.index() % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ArgSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ArgSet) -> ArgSet {
        debug_assert_eq!(self.n, other.n);
        ArgSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = Arg> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros();
                    w &= w - 1;
                    Some(Arg(wi as u32 * 64 + bit))
                }
            })
        })
    }
}

impl fmt::Debug for ArgSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.0)).finish()
    }
}

/// A finite argumentation framework: arguments plus an attack relation, with
/// precomputed adjacency in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Af {
    names: Vec<String>,
    by_name: HashMap<String, Arg>,
    attacks: Vec<(Arg, Arg)>,
    attack_set: HashSet<(u32, u32)>,
    /// `attackers_of[a]` = all `b` with `(b, a)` in the attack relation.
    attackers_of: Vec<Vec<Arg>>,
    /// `attacked_by[a]` = all `b` with `(a, b)` in the attack relation.
    attacked_by: Vec<Vec<Arg>>,
}

fn valid_token(tok: &str) -> bool {
    !tok.is_empty() && tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Af {
    pub fn parse(text: &str, format: Format) -> Result<Af, ParseError> {
        match format {
            Format::Tgf => Self::parse_tgf(text),
            Format::Apx => Self::parse_apx(text),
        }
    }

    fn parse_tgf(text: &str) -> Result<Af, ParseError> {
        let mut b = Builder::default();
        let mut seen_separator = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if !seen_separator && line == "#" {
                seen_separator = true;
                continue;
            }
            let mut tokens = line.split_whitespace();
            if !seen_separator {
                let tok = tokens.next().expect("non-empty line");
                if tokens.next().is_some() {
                    return Err(ParseError::new(
                        line_no,
                        format!("expected one argument token per line, got `{line}`"),
                    ));
                }
                b.declare(tok, line_no)?;
            } else {
                let (src, tgt) = match (tokens.next(), tokens.next(), tokens.next()) {
                    (Some(s), Some(t), None) => (s, t),
                    _ => {
                        return Err(ParseError::new(
                            line_no,
                            format!("expected attack line `source target`, got `{line}`"),
                        ))
                    }
                };
                b.attack(src, tgt, line_no)?;
            }
        }
        Ok(b.finish())
    }

    fn parse_apx(text: &str) -> Result<Af, ParseError> {
        let mut b = Builder::default();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(body) = line.strip_prefix("arg(").and_then(|r| r.strip_suffix(").")) {
                b.declare(body, line_no)?;
            } else if let Some(body) = line.strip_prefix("att(").and_then(|r| r.strip_suffix(")."))
            {
                let (src, tgt) = body.split_once(',').ok_or_else(|| {
                    ParseError::new(line_no, format!("malformed attack fact `{line}`"))
                })?;
                b.attack(src, tgt, line_no)?;
            } else {
                return Err(ParseError::new(
                    line_no,
                    format!("expected `arg(x).` or `att(x,y).`, got `{line}`"),
                ));
            }
        }
        Ok(b.finish())
    }

    pub fn arg_count(&self) -> usize {
        self.names.len()
    }

    /// Arguments in declaration order.
    pub fn args(&self) -> impl Iterator<Item = Arg> {
        (0..self.names.len() as u32).map(Arg)
    }

    pub fn arg(&self, name: &str) -> Option<Arg> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, a: Arg) -> &str {
        &self.names[a.index()]
    }

    /// The attack relation, deduplicated, in first-appearance order.
    pub fn attacks(&self) -> &[(Arg, Arg)] {
        &self.attacks
    }

    pub fn has_attack(&self, src: Arg, tgt: Arg) -> bool {
        self.attack_set.contains(&(src.0, tgt.0))
    }

    pub fn attackers_of(&self, a: Arg) -> &[Arg] {
        &self.attackers_of[a.index()]
    }

    pub fn attacked_by(&self, a: Arg) -> &[Arg] {
        &self.attacked_by[a.index()]
    }

    /// All attackers of `a` as a set.
    pub fn attackers(&self, a: Arg) -> ArgSet {
        let mut s = ArgSet::empty(self.arg_count());
        for &b in self.attackers_of(a) {
            s.insert(b);
        }
        s
    }

    /// True iff some member of `s` attacks some member of `t`.
    pub fn set_attacks(&self, s: &ArgSet, t: &ArgSet) -> bool {
        s.iter()
            .any(|u| self.attacked_by(u).iter().any(|v| t.contains(*v)))
    }

    /// True iff some member of `s` attacks `a`.
    pub fn set_attacks_arg(&self, s: &ArgSet, a: Arg) -> bool {
        self.attackers_of(a).iter().any(|b| s.contains(*b))
    }

    /// True iff every attacker of `a` is attacked by some member of `s`.
    pub fn defends(&self, s: &ArgSet, a: Arg) -> bool {
        self.attackers_of(a)
            .iter()
            .all(|&b| self.set_attacks_arg(s, b))
    }

    pub fn to_tgf(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str(name);
            out.push('\n');
        }
        out.push_str("#\n");
        for &(u, v) in &self.attacks {
            out.push_str(self.name(u));
            out.push(' ');
            out.push_str(self.name(v));
            out.push('\n');
        }
        out
    }

    pub fn to_apx(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str(&format!("arg({name}).\n"));
        }
        for &(u, v) in &self.attacks {
            out.push_str(&format!("att({},{}).\n", self.name(u), self.name(v)));
        }
        out
    }

    /// Renders a set as `[a,c]` with members in declaration order.
    pub fn format_extension(&self, s: &ArgSet) -> String {
        let names: Vec<&str> = s.iter().map(|a| self.name(a)).collect();
        format!("[{}]", names.join(","))
    }
}

#[derive(Default)]
struct Builder {
    names: Vec<String>,
    by_name: HashMap<String, Arg>,
    attacks: Vec<(Arg, Arg)>,
    attack_set: HashSet<(u32, u32)>,
}

impl Builder {
    fn declare(&mut self, name: &str, line: usize) -> Result<(), ParseError> {
        if !valid_token(name) {
            return Err(ParseError::new(
                line,
                format!("invalid argument name `{name}`"),
            ));
        }
        if self.by_name.contains_key(name) {
            return Err(ParseError::new(
                line,
                format!("duplicate argument declaration `{name}`"),
            ));
        }
        let arg = Arg(self.names.len() as u32);
        self.names.push(name.to_string());
        self.by_name.insert(name.to_string(), arg);
        Ok(())
    }

    fn attack(&mut self, src: &str, tgt: &str, line: usize) -> Result<(), ParseError> {
        let lookup = |name: &str| {
            self.by_name
                .get(name)
                .copied()
                .ok_or_else(|| ParseError::new(line, format!("undeclared argument {name}")))
        };
        let (u, v) = (lookup(src)?, lookup(tgt)?);
        if self.attack_set.insert((u.0, v.0)) {
            self.attacks.push((u, v));
        }
        Ok(())
    }

    fn finish(self) -> Af {
        let n = self.names.len();
        let mut attackers_of = vec![Vec::new(); n];
        let mut attacked_by = vec![Vec::new(); n];
        for &(u, v) in &self.attacks {
            attackers_of[v.index()].push(u);
            attacked_by[u.index()].push(v);
        }
        Af {
            names: self.names,
            by_name: self.by_name,
            attacks: self.attacks,
            attack_set: self.attack_set,
            attackers_of,
            attacked_by,
        }
    }
}
