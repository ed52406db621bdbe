//! Task drivers for the four reasoning problems under five semantics.
//!
//! Grounded extensions come from the least fixpoint of the defense
//! operator; stable/complete queries go through their encodings; preferred
//! extensions are grown from admissible models by an incremental
//! maximization loop; skeptical preferred acceptance runs a
//! counterexample-driven refinement loop over the two-copy pair encoding
//! and never computes a preferred extension; the ideal extension is found
//! by a credulous screen followed by a shrinking fixpoint.

use std::fmt;
use std::str::FromStr;

use crate::af::{Af, Arg, ArgSet};
use crate::encodings::{self, Cnf, CopyTag};
use crate::sat::{Lit, SolveStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    CO,
    GR,
    ST,
    PR,
    ID,
}

impl Semantics {
    pub const ALL: [Semantics; 5] = [
        Semantics::CO,
        Semantics::GR,
        Semantics::ST,
        Semantics::PR,
        Semantics::ID,
    ];
}

impl FromStr for Semantics {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "CO" => Ok(Semantics::CO),
            "GR" => Ok(Semantics::GR),
            "ST" => Ok(Semantics::ST),
            "PR" => Ok(Semantics::PR),
            "ID" => Ok(Semantics::ID),
            _ => Err(()),
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::CO => "CO",
            Semantics::GR => "GR",
            Semantics::ST => "ST",
            Semantics::PR => "PR",
            Semantics::ID => "ID",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    /// Compute some extension.
    SE,
    /// Count all extensions.
    CE,
    /// Credulous acceptance: member of at least one extension.
    DC,
    /// Skeptical acceptance: member of all extensions.
    DS,
}

impl FromStr for Problem {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "SE" => Ok(Problem::SE),
            "CE" => Ok(Problem::CE),
            "DC" => Ok(Problem::DC),
            "DS" => Ok(Problem::DS),
            _ => Err(()),
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::SE => "SE",
            Problem::CE => "CE",
            Problem::DC => "DC",
            Problem::DS => "DS",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TaskError {
    #[error("problem {0} requires a query argument")]
    MissingQuery(Problem),
    #[error("problem {0} does not take a query argument")]
    UnexpectedQuery(Problem),
}

/// A well-formed task. `DC` collapses to `DS` for the uniquely-determined
/// semantics (grounded, ideal) at construction time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskSpec {
    pub problem: Problem,
    pub semantics: Semantics,
    pub query: Option<String>,
}

impl TaskSpec {
    pub fn new(
        problem: Problem,
        semantics: Semantics,
        query: Option<String>,
    ) -> Result<TaskSpec, TaskError> {
        match problem {
            Problem::DC | Problem::DS if query.is_none() => {
                return Err(TaskError::MissingQuery(problem))
            }
            Problem::SE | Problem::CE if query.is_some() => {
                return Err(TaskError::UnexpectedQuery(problem))
            }
            _ => {}
        }
        let problem = match (problem, semantics) {
            (Problem::DC, Semantics::GR | Semantics::ID) => Problem::DS,
            _ => problem,
        };
        Ok(TaskSpec {
            problem,
            semantics,
            query,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Extension(ArgSet),
    NoExtension,
    Count(u64),
    Verdict(bool),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReasonerError {
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
}

/// The unique grounded extension: least fixpoint of the defense operator.
pub fn grounded(af: &Af) -> ArgSet {
    let n = af.arg_count();
    let mut current = ArgSet::empty(n);
    loop {
        let mut next = ArgSet::empty(n);
        for a in af.args() {
            if af.defends(&current, a) {
                next.insert(a);
            }
        }
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Some extension of the given semantics, or `None` when none exists
/// (possible only for stable semantics).
pub fn some_extension(af: &Af, semantics: Semantics) -> Option<ArgSet> {
    match semantics {
        Semantics::GR | Semantics::CO => Some(grounded(af)),
        Semantics::ST => {
            let cnf = encodings::stable(af);
            let mut solver = cnf.solver();
            match solver.solve(&[]) {
                SolveStatus::Sat => Some(cnf.vars.project(CopyTag::X, &solver)),
                SolveStatus::Unsat => None,
            }
        }
        Semantics::PR => Some(maximize_admissible(af, &ArgSet::empty(af.arg_count()))),
        Semantics::ID => Some(ideal(af)),
    }
}

fn admissible_in(af: &Af, s: &ArgSet) -> bool {
    !af.set_attacks(s, s) && s.iter().all(|a| af.defends(s, a))
}

/// Grows an admissible seed into a preferred extension. One incremental
/// solver accumulates an improvement clause per round; the current set is
/// fixed with assumptions.
pub fn maximize_admissible(af: &Af, seed: &ArgSet) -> ArgSet {
    assert!(admissible_in(af, seed), "seed must be admissible");
    let cnf = encodings::admissible(af);
    let mut solver = cnf.solver();
    let mut current = seed.clone();
    loop {
        let improve: Vec<Lit> = af
            .args()
            .filter(|a| !current.contains(*a))
            .map(|a| cnf.vars.pos_in(CopyTag::X, a))
            .collect();
        solver
            .add_clause(&improve)
            .expect("encoding variables are registered");
        let assumptions: Vec<Lit> = current
            .iter()
            .map(|a| cnf.vars.pos_in(CopyTag::X, a))
            .collect();
        match solver.solve(&assumptions) {
            SolveStatus::Sat => current = cnf.vars.project(CopyTag::X, &solver),
            SolveStatus::Unsat => return current,
        }
    }
}

/// All distinct `in`-projections of the CNF's models, enumerated with
/// exact-projection blocking clauses.
pub fn enumerate_projections(cnf: &Cnf) -> Vec<ArgSet> {
    let mut solver = cnf.solver();
    let mut found = Vec::new();
    while solver.solve(&[]) == SolveStatus::Sat {
        let p = cnf.vars.project(CopyTag::X, &solver);
        let block: Vec<Lit> = af_blocking_clause(cnf, &p);
        found.push(p);
        solver
            .add_clause(&block)
            .expect("encoding variables are registered");
    }
    found
}

fn af_blocking_clause(cnf: &Cnf, projection: &ArgSet) -> Vec<Lit> {
    (0..cnf.vars.arg_count())
        .map(|i| {
            let a = Arg::from_index(i);
            if projection.contains(a) {
                cnf.vars.neg_in(CopyTag::X, a)
            } else {
                cnf.vars.pos_in(CopyTag::X, a)
            }
        })
        .collect()
}

/// Enumerates the preferred extensions: find an admissible set outside all
/// recorded "not a subset of E" constraints, maximize it, record, block.
pub fn enumerate_preferred(af: &Af) -> Vec<ArgSet> {
    let cnf = encodings::admissible(af);
    let mut solver = cnf.solver();
    let mut found: Vec<ArgSet> = Vec::new();
    loop {
        match solver.solve(&[]) {
            SolveStatus::Unsat => return found,
            SolveStatus::Sat => {
                let seed = cnf.vars.project(CopyTag::X, &solver);
                let extension = maximize_admissible(af, &seed);
                let not_subset: Vec<Lit> = af
                    .args()
                    .filter(|a| !extension.contains(*a))
                    .map(|a| cnf.vars.pos_in(CopyTag::X, a))
                    .collect();
                found.push(extension);
                solver
                    .add_clause(&not_subset)
                    .expect("encoding variables are registered");
            }
        }
    }
}

/// Number of extensions of the given semantics.
pub fn count_extensions(af: &Af, semantics: Semantics) -> u64 {
    match semantics {
        Semantics::GR | Semantics::ID => 1,
        Semantics::CO => enumerate_projections(&encodings::complete(af)).len() as u64,
        Semantics::ST => enumerate_projections(&encodings::stable(af)).len() as u64,
        Semantics::PR => enumerate_preferred(af).len() as u64,
    }
}

/// Membership in at least one extension. Complete and preferred semantics
/// collapse to an admissibility query: every admissible set extends to a
/// preferred (hence complete) extension.
pub fn credulous(af: &Af, semantics: Semantics, a: Arg) -> bool {
    match semantics {
        Semantics::GR => grounded(af).contains(a),
        Semantics::ID => ideal(af).contains(a),
        Semantics::ST => {
            let cnf = encodings::stable(af);
            let assumption = [cnf.vars.pos_in(CopyTag::X, a)];
            cnf.solver().solve(&assumption) == SolveStatus::Sat
        }
        Semantics::CO | Semantics::PR => {
            let cnf = encodings::admissible(af);
            let assumption = [cnf.vars.pos_in(CopyTag::X, a)];
            cnf.solver().solve(&assumption) == SolveStatus::Sat
        }
    }
}

/// Membership in all extensions. Skeptical-complete equals grounded
/// membership (grounded is the least complete extension); skeptical-stable
/// is vacuously true when no stable extension exists.
pub fn skeptical(af: &Af, semantics: Semantics, a: Arg) -> bool {
    match semantics {
        Semantics::GR | Semantics::CO => grounded(af).contains(a),
        Semantics::ID => ideal(af).contains(a),
        Semantics::ST => {
            let cnf = encodings::stable(af);
            let assumption = [cnf.vars.neg_in(CopyTag::X, a)];
            cnf.solver().solve(&assumption) == SolveStatus::Unsat
        }
        Semantics::PR => ds_preferred(af, a),
    }
}

/// Skeptical acceptance under preferred semantics by counterexample
/// search, without ever computing a preferred extension.
///
/// `a` is skeptically accepted iff some admissible set contains it and
/// every admissible attacker `Y` of an admissible set containing `a` can be
/// extended to an admissible superset of `Y ∪ {a}`. Candidate attackers
/// come from the two-copy pair encoding; each successful extendability
/// witness `Z` rules out every future candidate `Y' ⊆ Z` via a refinement
/// clause.
pub fn ds_preferred(af: &Af, a: Arg) -> bool {
    let adm = encodings::admissible(af);
    {
        let mut solver = adm.solver();
        let assumption = [adm.vars.pos_in(CopyTag::X, a)];
        if solver.solve(&assumption) == SolveStatus::Unsat {
            return false;
        }
    }
    let pair = encodings::counterexample_pair(af, a);
    let mut pair_solver = pair.solver();
    loop {
        match pair_solver.solve(&[]) {
            SolveStatus::Unsat => return true,
            SolveStatus::Sat => {
                let candidate = pair.vars.project(CopyTag::Y, &pair_solver);
                let mut probe = adm.solver();
                let mut assumptions: Vec<Lit> = candidate
                    .iter()
                    .map(|b| adm.vars.pos_in(CopyTag::X, b))
                    .collect();
                assumptions.push(adm.vars.pos_in(CopyTag::X, a));
                match probe.solve(&assumptions) {
                    SolveStatus::Unsat => return false,
                    SolveStatus::Sat => {
                        let witness = adm.vars.project(CopyTag::X, &probe);
                        let refine: Vec<Lit> = af
                            .args()
                            .filter(|b| !witness.contains(*b))
                            .map(|b| pair.vars.pos_in(CopyTag::Y, b))
                            .collect();
                        pair_solver
                            .add_clause(&refine)
                            .expect("encoding variables are registered");
                    }
                }
            }
        }
    }
}

/// The unique ideal extension.
///
/// Phase 1 screens every argument for credulous (admissible-level)
/// acceptance on one incremental solver. Phase 2 keeps the arguments none
/// of whose attackers are credulously accepted. Phase 3 shrinks that
/// candidate set to its largest admissible subset: repeatedly drop members
/// that are attacked or not defended by the current set.
pub fn ideal(af: &Af) -> ArgSet {
    let n = af.arg_count();
    let adm = encodings::admissible(af);
    let mut screen = adm.solver();
    let mut credulously_accepted = vec![false; n];
    for b in af.args() {
        let assumption = [adm.vars.pos_in(CopyTag::X, b)];
        credulously_accepted[b.index()] = screen.solve(&assumption) == SolveStatus::Sat;
    }
    let mut candidates = ArgSet::empty(n);
    for x in af.args() {
        if af
            .attackers_of(x)
            .iter()
            .all(|b| !credulously_accepted[b.index()])
        {
            candidates.insert(x);
        }
    }
    loop {
        let mut next = ArgSet::empty(n);
        for x in candidates.iter() {
            if !af.set_attacks_arg(&candidates, x) && af.defends(&candidates, x) {
                next.insert(x);
            }
        }
        if next == candidates {
            return candidates;
        }
        candidates = next;
    }
}

/// Answers a task, dispatching on (problem, semantics).
pub fn answer(af: &Af, task: &TaskSpec) -> Result<Answer, ReasonerError> {
    let query = match &task.query {
        Some(name) => Some(
            af.arg(name)
                .ok_or_else(|| ReasonerError::UnknownArgument(name.clone()))?,
        ),
        None => None,
    };
    Ok(match task.problem {
        Problem::SE => match some_extension(af, task.semantics) {
            Some(e) => Answer::Extension(e),
            None => Answer::NoExtension,
        },
        Problem::CE => Answer::Count(count_extensions(af, task.semantics)),
        Problem::DC => Answer::Verdict(credulous(
            af,
            task.semantics,
            query.expect("DC carries a query"),
        )),
        Problem::DS => Answer::Verdict(skeptical(
            af,
            task.semantics,
            query.expect("DS carries a query"),
        )),
    })
}

/// The first CNF the task driver would construct, for diagnostic DIMACS
/// dumps. `None` when the task is answered purely by fixpoint iteration.
pub fn base_encoding(af: &Af, task: &TaskSpec) -> Result<Option<Cnf>, ReasonerError> {
    let query = match &task.query {
        Some(name) => Some(
            af.arg(name)
                .ok_or_else(|| ReasonerError::UnknownArgument(name.clone()))?,
        ),
        None => None,
    };
    Ok(match (task.problem, task.semantics) {
        (_, Semantics::ST) => Some(encodings::stable(af)),
        (_, Semantics::GR) => None,
        (Problem::SE | Problem::DS, Semantics::CO) => None,
        (Problem::DC, Semantics::CO) => Some(encodings::admissible(af)),
        (Problem::CE, Semantics::CO) => Some(encodings::complete(af)),
        (_, Semantics::ID) => Some(encodings::admissible(af)),
        (Problem::DS, Semantics::PR) => Some(encodings::counterexample_pair(
            af,
            query.expect("DS carries a query"),
        )),
        (_, Semantics::PR) => Some(encodings::admissible(af)),
    })
}
