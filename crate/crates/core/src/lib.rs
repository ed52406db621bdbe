//! SAT-based solver for abstract argumentation frameworks.
//!
//! Answers extension-computation (`SE`), extension-counting (`CE`),
//! credulous-acceptance (`DC`) and skeptical-acceptance (`DS`) queries under
//! complete, grounded, stable, preferred, and ideal semantics. Queries
//! against the stable, complete, and admissible families are reduced to
//! incremental propositional satisfiability over the in-crate CDCL engine
//! in [`sat`]; grounded and ideal extensions are computed by fixpoint
//! iteration, the latter on top of admissibility-level SAT queries.
//!
//! Module map:
//! * [`af`] — framework data model, TGF/APX parsing, relational queries
//! * [`sat`] — incremental CDCL engine with assumption-based solving
//! * [`encodings`] — CNF encodings over a documented variable layout
//! * [`reasoner`] — task drivers (fixpoints, enumeration, CEGAR)
//! * [`oracle`] — brute-force reference semantics for differential testing
//! * [`cli`] — competition-style command line front end

pub mod af;
pub mod cli;
pub mod encodings;
pub mod oracle;
pub mod reasoner;
pub mod sat;
