//! Incremental propositional satisfiability engine.
//!
//! A self-contained CDCL solver: two-watched-literal propagation, first-UIP
//! clause learning, VSIDS-style variable activity (decay 0.95 per conflict,
//! ties broken by lowest variable index), phase saving, and Luby restarts.
//! Clauses are permanent once added; assumptions are temporary per-call
//! decisions at levels `1..k`, so learned clauses are consequences of the
//! clause database alone and stay valid across calls. The default build is
//! deterministic: identical call sequences produce identical statuses and
//! models.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::ops::Not;

const VAR_DECAY: f64 = 0.95;
const RESTART_UNIT: u64 = 100;
const ACTIVITY_RESCALE: f64 = 1e100;

/// A propositional variable. Indices are 1-based and dense.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    pub fn from_index(ix: u32) -> Var {
        assert!(ix >= 1, "variable indices are 1-based");
        Var(ix)
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

/// A literal: a variable with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn positive(v: Var) -> Lit {
        Lit(v.0 << 1)
    }

    pub fn negative(v: Var) -> Lit {
        Lit(v.0 << 1 | 1)
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn to_dimacs(self) -> i32 {
        let v = (self.0 >> 1) as i32;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    pub fn from_dimacs(x: i32) -> Lit {
        assert!(x != 0, "DIMACS literal must be non-zero");
        let v = Var(x.unsigned_abs());
        if x > 0 {
            Lit::positive(v)
        } else {
            Lit::negative(v)
        }
    }

    fn code(self) -> usize {
        self.0 as usize
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Sat,
    Unsat,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SatError {
    #[error("literal references unregistered variable {0}")]
    UnregisteredVariable(u32),
    #[error("no model available: the last solve call did not return SAT")]
    NoModel,
}

/// Incremental CDCL solver. Single-threaded; distinct instances are
/// independent.
pub struct Solver {
    n_vars: u32,
    clauses: Vec<Vec<Lit>>,
    /// `watches[lit.code()]` = indices of clauses currently watching `lit`.
    watches: Vec<Vec<u32>>,
    assign: Vec<Option<bool>>,
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    activity: Vec<f64>,
    polarity: Vec<bool>,
    seen: Vec<bool>,
    /// Lazy max-heap over (activity bits, lowest-index-first) pairs. Stale
    /// entries are skipped at pop time by comparing against the current
    /// activity; every unassigned variable always has one fresh entry.
    order: BinaryHeap<(u64, Reverse<u32>)>,
    var_inc: f64,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    /// Cleared permanently once the database itself is unsatisfiable.
    ok: bool,
    model: Option<Vec<bool>>,
}

enum Decision {
    Branch(Lit),
    AssumptionConflict,
    Complete,
}

impl Default for Solver {
    fn default() -> Self {
        Self::new()
    }
}

impl Solver {
    pub fn new() -> Solver {
        Solver {
            n_vars: 0,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2],
            assign: vec![None],
            level: vec![0],
            reason: vec![None],
            activity: vec![0.0],
            polarity: vec![false],
            seen: vec![false],
            order: BinaryHeap::new(),
            var_inc: 1.0,
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            ok: true,
            model: None,
        }
    }

    /// Registers a fresh variable, one greater than the previous maximum.
    pub fn new_var(&mut self) -> Var {
        self.n_vars += 1;
        self.assign.push(None);
        self.level.push(0);
        self.reason.push(None);
        self.activity.push(0.0);
        self.polarity.push(false);
        self.seen.push(false);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        self.order.push((0f64.to_bits(), Reverse(self.n_vars)));
        Var(self.n_vars)
    }

    pub fn num_vars(&self) -> usize {
        self.n_vars as usize
    }

    fn lit_value(&self, l: Lit) -> Option<bool> {
        self.assign[l.var().0 as usize].map(|b| b == l.is_positive())
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    /// Adds a permanent clause. Duplicate literals are merged, tautologies
    /// are dropped, and literals already decided at the root are simplified
    /// away. The empty clause marks the database unsatisfiable.
    pub fn add_clause(&mut self, lits: &[Lit]) -> Result<(), SatError> {
        for l in lits {
            let v = l.var().0;
            if v == 0 || v > self.n_vars {
                return Err(SatError::UnregisteredVariable(v));
            }
        }
        if !self.ok {
            return Ok(());
        }
        debug_assert_eq!(self.decision_level(), 0);
        let mut c: Vec<Lit> = lits.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0].var() == w[1].var()) {
            return Ok(()); // tautology
        }
        if c.iter().any(|&l| self.lit_value(l) == Some(true)) {
            return Ok(()); // satisfied at the root, forever
        }
        c.retain(|&l| self.lit_value(l).is_none());
        match c.len() {
            0 => self.ok = false,
            1 => self.unchecked_enqueue(c[0], None),
            _ => {
                self.attach_clause(c);
            }
        }
        Ok(())
    }

    fn attach_clause(&mut self, lits: Vec<Lit>) -> u32 {
        debug_assert!(lits.len() >= 2);
        let idx = self.clauses.len() as u32;
        self.watches[lits[0].code()].push(idx);
        self.watches[lits[1].code()].push(idx);
        self.clauses.push(lits);
        idx
    }

    fn unchecked_enqueue(&mut self, l: Lit, reason: Option<u32>) {
        let v = l.var().0 as usize;
        debug_assert!(self.assign[v].is_none());
        self.assign[v] = Some(l.is_positive());
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn new_decision_level(&mut self) {
        self.trail_lim.push(self.trail.len());
    }

    fn cancel_until(&mut self, target: usize) {
        if self.decision_level() <= target {
            return;
        }
        let bound = self.trail_lim[target];
        for i in (bound..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var().0 as usize;
            self.polarity[v] = l.is_positive();
            self.assign[v] = None;
            self.reason[v] = None;
            self.order
                .push((self.activity[v].to_bits(), Reverse(v as u32)));
        }
        self.trail.truncate(bound);
        self.trail_lim.truncate(target);
        self.qhead = bound;
    }

    /// Propagates all enqueued assignments; returns a conflicting clause
    /// index if one arises.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = !p;
            let code = false_lit.code();
            let mut ws = std::mem::take(&mut self.watches[code]);
            let mut i = 0;
            let mut j = 0;
            let mut conflict = None;
            'clauses: while i < ws.len() {
                let ci = ws[i];
                i += 1;
                let cu = ci as usize;
                if self.clauses[cu][0] == false_lit {
                    self.clauses[cu].swap(0, 1);
                }
                debug_assert_eq!(self.clauses[cu][1], false_lit);
                let first = self.clauses[cu][0];
                if self.lit_value(first) == Some(true) {
                    ws[j] = ci;
                    j += 1;
                    continue;
                }
                for k in 2..self.clauses[cu].len() {
                    let lk = self.clauses[cu][k];
                    if self.lit_value(lk) != Some(false) {
                        self.clauses[cu].swap(1, k);
                        self.watches[lk.code()].push(ci);
                        continue 'clauses;
                    }
                }
                // unit or conflicting
                ws[j] = ci;
                j += 1;
                if self.lit_value(first) == Some(false) {
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                    self.qhead = self.trail.len();
                    conflict = Some(ci);
                    break;
                }
                self.unchecked_enqueue(first, Some(ci));
            }
            ws.truncate(j);
            self.watches[code] = ws;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > ACTIVITY_RESCALE {
            self.rescale_activities();
        } else {
            self.order
                .push((self.activity[v].to_bits(), Reverse(v as u32)));
        }
    }

    fn rescale_activities(&mut self) {
        for v in 1..=self.n_vars as usize {
            self.activity[v] *= 1.0 / ACTIVITY_RESCALE;
        }
        self.var_inc *= 1.0 / ACTIVITY_RESCALE;
        self.order.clear();
        for v in 1..=self.n_vars {
            if self.assign[v as usize].is_none() {
                self.order
                    .push((self.activity[v as usize].to_bits(), Reverse(v)));
            }
        }
    }

    /// First-UIP conflict analysis. Returns the learned clause (asserting
    /// literal first, a literal of the backjump level second) and the
    /// backjump level.
    fn analyze(&mut self, confl: u32) -> (Vec<Lit>, usize) {
        let current = self.decision_level() as u32;
        let mut path = 0usize;
        let mut rest: Vec<Lit> = Vec::new();
        let mut index = self.trail.len();
        let mut c = confl as usize;
        let mut p: Option<Lit> = None;
        loop {
            // reason clauses keep their implied literal at position 0
            let start = usize::from(p.is_some());
            for k in start..self.clauses[c].len() {
                let q = self.clauses[c][k];
                let v = q.var().0 as usize;
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump(v);
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        rest.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var().0 as usize] {
                    break;
                }
            }
            let lit = self.trail[index];
            let v = lit.var().0 as usize;
            self.seen[v] = false;
            path -= 1;
            p = Some(lit);
            if path == 0 {
                break;
            }
            c = self.reason[v].expect("implied literal has a reason") as usize;
        }
        for q in &rest {
            self.seen[q.var().0 as usize] = false;
        }
        let mut learnt = Vec::with_capacity(rest.len() + 1);
        learnt.push(!p.expect("conflict has a first UIP"));
        learnt.extend(rest);
        let backjump = if learnt.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var().0 as usize]
                    > self.level[learnt[max_i].var().0 as usize]
                {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            self.level[learnt[1].var().0 as usize] as usize
        };
        (learnt, backjump)
    }

    fn pick_branch_var(&mut self) -> Option<Var> {
        while let Some((bits, Reverse(v))) = self.order.pop() {
            let vu = v as usize;
            if self.assign[vu].is_none() && self.activity[vu].to_bits() == bits {
                return Some(Var(v));
            }
        }
        None
    }

    fn next_decision(&mut self, assumptions: &[Lit]) -> Decision {
        while self.decision_level() < assumptions.len() {
            let p = assumptions[self.decision_level()];
            match self.lit_value(p) {
                Some(true) => self.new_decision_level(),
                Some(false) => return Decision::AssumptionConflict,
                None => return Decision::Branch(p),
            }
        }
        match self.pick_branch_var() {
            Some(v) => {
                let vu = v.0 as usize;
                Decision::Branch(if self.polarity[vu] {
                    Lit::positive(v)
                } else {
                    Lit::negative(v)
                })
            }
            None => Decision::Complete,
        }
    }

    /// Decides satisfiability of the clause database under the given
    /// assumption literals. The database is not changed by assumptions;
    /// learned clauses are consequences of the database alone.
    pub fn solve(&mut self, assumptions: &[Lit]) -> SolveStatus {
        for l in assumptions {
            let v = l.var().0;
            assert!(
                v >= 1 && v <= self.n_vars,
                "assumption over unregistered variable {v}"
            );
        }
        self.model = None;
        if !self.ok {
            return SolveStatus::Unsat;
        }
        debug_assert_eq!(self.decision_level(), 0);
        let mut restarts: u64 = 0;
        let mut conflicts_left = RESTART_UNIT * luby(restarts);
        let status = loop {
            if let Some(confl) = self.propagate() {
                if self.decision_level() == 0 {
                    self.ok = false;
                    break SolveStatus::Unsat;
                }
                let (learnt, backjump) = self.analyze(confl);
                self.cancel_until(backjump);
                if learnt.len() == 1 {
                    self.unchecked_enqueue(learnt[0], None);
                } else {
                    let first = learnt[0];
                    let ci = self.attach_clause(learnt);
                    self.unchecked_enqueue(first, Some(ci));
                }
                self.var_inc /= VAR_DECAY;
                conflicts_left = conflicts_left.saturating_sub(1);
            } else {
                if conflicts_left == 0 && self.decision_level() > assumptions.len() {
                    self.cancel_until(0);
                    restarts += 1;
                    conflicts_left = RESTART_UNIT * luby(restarts);
                    continue;
                }
                match self.next_decision(assumptions) {
                    Decision::AssumptionConflict => break SolveStatus::Unsat,
                    Decision::Complete => {
                        debug_assert!(
                            (1..=self.n_vars as usize).all(|v| self.assign[v].is_some())
                        );
                        self.model = Some(
                            self.assign
                                .iter()
                                .map(|a| a.unwrap_or(false))
                                .collect(),
                        );
                        break SolveStatus::Sat;
                    }
                    Decision::Branch(p) => {
                        self.new_decision_level();
                        self.unchecked_enqueue(p, None);
                    }
                }
            }
        };
        self.cancel_until(0);
        status
    }

    /// The value of `v` in the model of the last successful solve call.
    pub fn value(&self, v: Var) -> Result<bool, SatError> {
        if v.0 == 0 || v.0 > self.n_vars {
            return Err(SatError::UnregisteredVariable(v.0));
        }
        match &self.model {
            Some(m) => Ok(m[v.0 as usize]),
            None => Err(SatError::NoModel),
        }
    }
}

/// Luby restart sequence 1,1,2,1,1,2,4,... for 0-based index `x`.
fn luby(mut x: u64) -> u64 {
    let (mut size, mut seq) = (1u64, 0u64);
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    1 << seq
}
