//! CNF encodings of argumentation semantics.
//!
//! Every encoding introduces one `in` variable per argument (per copy)
//! meaning "the argument is in the candidate set". Variable numbering is
//! fixed and documented: `in` variables of copy X in argument order, then
//! copy Y when present, then attack selectors in attack order, then `att`
//! auxiliaries in argument order. Clause emission order is deterministic.
//!
//! Conflict-freeness is the clause set {¬in_a ∨ ¬in_b | (a,b) ∈ R}. The
//! stable encoding adds, per argument, "in or attacked"; its reverse
//! direction (attacker in ⇒ target out) is already implied by
//! conflict-freeness and is not emitted. The admissible encoding adds one
//! defense clause per attack. The complete encoding names "b is defeated"
//! with a Tseitin auxiliary `att_b` (both directions emitted, so auxiliary
//! values are functionally determined by the `in` projection).

use std::collections::HashSet;
use std::io;

use crate::af::{Af, Arg, ArgSet};
use crate::sat::{Lit, Solver, Var};

/// Which copy of the argument variables a literal refers to. Single-copy
/// encodings only use [`CopyTag::X`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CopyTag {
    X,
    Y,
}

/// Bijection between arguments and `in` variables plus the registry of
/// auxiliary variables (selectors, `att` definitions).
#[derive(Debug, Clone)]
pub struct VarMap {
    n_args: u32,
    two_copies: bool,
    selector_base: u32,
    n_selectors: u32,
    /// Per argument, the `att` auxiliary variable index (0 = none).
    att_vars: Vec<u32>,
    var_count: u32,
    aux: Vec<(String, Var)>,
}

impl VarMap {
    fn new(af: &Af, two_copies: bool, selectors: bool, att_aux: bool) -> VarMap {
        let n = af.arg_count() as u32;
        let copies = if two_copies { 2 } else { 1 };
        let mut next = n * copies + 1;
        let mut aux = Vec::new();

        let mut selector_base = 0;
        let mut n_selectors = 0;
        if selectors {
            selector_base = next;
            n_selectors = af.attacks().len() as u32;
            for &(u, v) in af.attacks() {
                aux.push((format!("sel({},{})", af.name(u), af.name(v)), Var::from_index(next)));
                next += 1;
            }
        }

        let mut att_vars = vec![0; af.arg_count()];
        if att_aux {
            for b in af.args() {
                if !af.attacked_by(b).is_empty() {
                    att_vars[b.index()] = next;
                    aux.push((format!("att({})", af.name(b)), Var::from_index(next)));
                    next += 1;
                }
            }
        }

        VarMap {
            n_args: n,
            two_copies,
            selector_base,
            n_selectors,
            att_vars,
            var_count: next - 1,
            aux,
        }
    }

    pub fn arg_count(&self) -> usize {
        self.n_args as usize
    }

    pub fn var_count(&self) -> usize {
        self.var_count as usize
    }

    /// The `in` variable of `a` in the given copy.
    pub fn in_var(&self, copy: CopyTag, a: Arg) -> Var {
        let offset = match copy {
            CopyTag::X => 0,
            CopyTag::Y => {
                assert!(self.two_copies, "encoding has a single copy");
                self.n_args
            }
        };
        Var::from_index(offset + a.index() as u32 + 1)
    }

    pub fn pos_in(&self, copy: CopyTag, a: Arg) -> Lit {
        Lit::positive(self.in_var(copy, a))
    }

    pub fn neg_in(&self, copy: CopyTag, a: Arg) -> Lit {
        Lit::negative(self.in_var(copy, a))
    }

    /// Selector variable of the `idx`-th attack (attack order).
    pub fn selector(&self, idx: usize) -> Var {
        assert!((idx as u32) < self.n_selectors, "no such selector");
        Var::from_index(self.selector_base + idx as u32)
    }

    /// The `att` auxiliary of `b`, present iff `b` attacks something.
    pub fn att_var(&self, b: Arg) -> Option<Var> {
        match self.att_vars[b.index()] {
            0 => None,
            v => Some(Var::from_index(v)),
        }
    }

    /// Auxiliary variables with their purpose labels, in numbering order.
    pub fn aux_registry(&self) -> &[(String, Var)] {
        &self.aux
    }

    /// Reads the `in` variables of one copy out of a model.
    pub fn project(&self, copy: CopyTag, solver: &Solver) -> ArgSet {
        let mut s = ArgSet::empty(self.arg_count());
        for i in 0..self.n_args {
            let a = Arg::from_index(i as usize);
            if solver
                .value(self.in_var(copy, a))
                .expect("projection requires a model")
            {
                s.insert(a);
            }
        }
        s
    }
}

/// A clause set together with its variable map.
#[derive(Debug, Clone)]
pub struct Cnf {
    pub clauses: Vec<Vec<Lit>>,
    pub vars: VarMap,
}

impl Cnf {
    fn new(vars: VarMap) -> Cnf {
        Cnf {
            clauses: Vec::new(),
            vars,
        }
    }

    /// Pushes a clause, merging duplicate literals (first occurrence wins).
    fn push(&mut self, lits: Vec<Lit>) {
        let mut seen = HashSet::with_capacity(lits.len());
        let mut clause = lits;
        clause.retain(|l| seen.insert(*l));
        self.clauses.push(clause);
    }

    /// A fresh solver loaded with this clause set.
    pub fn solver(&self) -> Solver {
        let mut s = Solver::new();
        for _ in 0..self.vars.var_count() {
            s.new_var();
        }
        for c in &self.clauses {
            s.add_clause(c).expect("all encoding variables are registered");
        }
        s
    }

    /// Writes the clause set in DIMACS CNF.
    pub fn write_dimacs<W: io::Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "p cnf {} {}", self.vars.var_count(), self.clauses.len())?;
        for c in &self.clauses {
            for l in c {
                write!(w, "{} ", l.to_dimacs())?;
            }
            writeln!(w, "0")?;
        }
        Ok(())
    }
}

fn emit_conflict_free(af: &Af, cnf: &mut Cnf, copy: CopyTag) {
    for &(a, b) in af.attacks() {
        cnf.push(vec![cnf.vars.neg_in(copy, a), cnf.vars.neg_in(copy, b)]);
    }
}

fn emit_defense(af: &Af, cnf: &mut Cnf, copy: CopyTag) {
    for &(b, a) in af.attacks() {
        let mut clause = vec![cnf.vars.neg_in(copy, a)];
        clause.extend(af.attackers_of(b).iter().map(|&c| cnf.vars.pos_in(copy, c)));
        cnf.push(clause);
    }
}

/// Models are exactly the conflict-free sets.
pub fn conflict_free(af: &Af) -> Cnf {
    let mut cnf = Cnf::new(VarMap::new(af, false, false, false));
    emit_conflict_free(af, &mut cnf, CopyTag::X);
    cnf
}

/// Models project to exactly the stable extensions: conflict-freeness plus,
/// per argument, "in the set or attacked by it".
pub fn stable(af: &Af) -> Cnf {
    let mut cnf = Cnf::new(VarMap::new(af, false, false, false));
    emit_conflict_free(af, &mut cnf, CopyTag::X);
    for a in af.args() {
        let mut clause = vec![cnf.vars.pos_in(CopyTag::X, a)];
        clause.extend(
            af.attackers_of(a)
                .iter()
                .map(|&b| cnf.vars.pos_in(CopyTag::X, b)),
        );
        cnf.push(clause);
    }
    cnf
}

/// Models project to exactly the admissible sets: conflict-freeness plus
/// one defense clause per attack.
pub fn admissible(af: &Af) -> Cnf {
    let mut cnf = Cnf::new(VarMap::new(af, false, false, false));
    emit_conflict_free(af, &mut cnf, CopyTag::X);
    emit_defense(af, &mut cnf, CopyTag::X);
    cnf
}

/// Models project to exactly the complete extensions. Auxiliaries
/// `att_b ⇔ ⋁ in_c` over the attackers `c` of `b` are introduced for every
/// `b` with an outgoing attack; the completeness clause per argument `a` is
/// `in_a ∨ ⋁ ¬att_b` over the attackers `b` of `a`. Each projection extends
/// to exactly one total model.
pub fn complete(af: &Af) -> Cnf {
    let mut cnf = Cnf::new(VarMap::new(af, false, false, true));
    emit_conflict_free(af, &mut cnf, CopyTag::X);
    emit_defense(af, &mut cnf, CopyTag::X);
    for b in af.args() {
        let Some(att) = cnf.vars.att_var(b) else {
            continue;
        };
        let mut def = vec![Lit::negative(att)];
        def.extend(
            af.attackers_of(b)
                .iter()
                .map(|&c| cnf.vars.pos_in(CopyTag::X, c)),
        );
        cnf.push(def);
        for &c in af.attackers_of(b) {
            cnf.push(vec![cnf.vars.neg_in(CopyTag::X, c), Lit::positive(att)]);
        }
    }
    for a in af.args() {
        let mut clause = vec![cnf.vars.pos_in(CopyTag::X, a)];
        for &b in af.attackers_of(a) {
            let att = cnf.vars.att_var(b).expect("attacker has an att variable");
            clause.push(Lit::negative(att));
        }
        cnf.push(clause);
    }
    cnf
}

/// Two-copy encoding whose models are exactly the pairs (S, S') of
/// admissible sets with `a ∈ S` and S' attacking S. Copy X holds S, copy Y
/// holds S'; one selector per attack couples the copies, and at least one
/// selector must fire.
pub fn counterexample_pair(af: &Af, a: Arg) -> Cnf {
    let mut cnf = Cnf::new(VarMap::new(af, true, true, false));
    emit_conflict_free(af, &mut cnf, CopyTag::X);
    emit_defense(af, &mut cnf, CopyTag::X);
    cnf.push(vec![cnf.vars.pos_in(CopyTag::X, a)]);
    emit_conflict_free(af, &mut cnf, CopyTag::Y);
    emit_defense(af, &mut cnf, CopyTag::Y);
    for (idx, &(u, v)) in af.attacks().iter().enumerate() {
        let s = Lit::positive(cnf.vars.selector(idx));
        cnf.push(vec![!s, cnf.vars.pos_in(CopyTag::Y, u)]);
        cnf.push(vec![!s, cnf.vars.pos_in(CopyTag::X, v)]);
    }
    let any_attack = (0..af.attacks().len())
        .map(|idx| Lit::positive(cnf.vars.selector(idx)))
        .collect();
    cnf.push(any_attack);
    cnf
}
