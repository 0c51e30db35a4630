//! Well-founded semantics for propositional disjunctive logic programs,
//! computed three independent ways:
//!
//! - [`argumentation`]: the least admissible hypothesis and what it supports
//!   (WFDS);
//! - [`residual`]: bottom-up saturation into conditional facts followed by
//!   strong reduction, with the semantics read off the strong residual
//!   program (D-WFS*);
//! - [`unfounded`]: the least fixpoint of "derive what is certain, falsify
//!   the greatest unfounded set" (U-WFS).
//!
//! The three agree on every program, and [`harness`] checks that, together
//! with agreement with the classical well-founded model on normal programs
//! and with minimal-model reasoning on positive ones.
//!
//! ```
//! use dwfs::{parse_program, render_state, semantics, Semantics};
//!
//! let program = parse_program("b | l :- not p.  l | p.").unwrap();
//! let state = semantics(&program, Semantics::DwfsStar).unwrap();
//! assert_eq!(render_state(program.symbols(), &state), "l | p\nnot b\n");
//! ```

pub mod argumentation;
pub mod error;
pub mod fixpoint;
pub mod harness;
pub mod parser;
pub mod residual;
pub mod syntax;
pub mod transforms;
pub mod unfounded;

use std::fmt;
use std::str::FromStr;

pub use argumentation::DerivationEngine;
pub use error::{Error, Result};
pub use parser::{parse_program, render_program, render_state, SourceSpan, StateJson};
pub use syntax::{
    canonicalize, subsumes, Atom, AtomSet, Disjunction, DisjunctionSet, Hypothesis, ModelState,
    Program, PureDisjunction, Rule, Symbols, Truth,
};

/// Size limits for the exponential parts of the computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest base over which attacker hypotheses are enumerated.
    pub enumeration: usize,
    /// Largest atom set the unfounded-set and model oracles enumerate.
    pub oracle: usize,
    /// Largest number of conditional facts the fixpoint transformation may hold.
    pub lft_capacity: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 16,
            oracle: 14,
            lft_capacity: 1_000_000,
        }
    }
}

impl Limits {
    /// Applies one override to every enumeration bound.
    pub fn with_oracle_bound(bound: usize) -> Self {
        Limits {
            enumeration: bound,
            oracle: bound,
            ..Limits::default()
        }
    }
}

/// The semantics this crate computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semantics {
    Wfds,
    WfdsRaw,
    DwfsStar,
    DwfsClassic,
    Uwfs,
}

impl Semantics {
    /// The semantics that must coincide on every program.
    pub const EQUIVALENT: [Semantics; 4] = [
        Semantics::Wfds,
        Semantics::WfdsRaw,
        Semantics::DwfsStar,
        Semantics::Uwfs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Semantics::Wfds => "wfds",
            Semantics::WfdsRaw => "wfds-raw",
            Semantics::DwfsStar => "dwfs-star",
            Semantics::DwfsClassic => "dwfs-classic",
            Semantics::Uwfs => "uwfs",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        [
            Semantics::Wfds,
            Semantics::WfdsRaw,
            Semantics::DwfsStar,
            Semantics::DwfsClassic,
            Semantics::Uwfs,
        ]
        .into_iter()
        .find(|m| m.name() == s)
        .ok_or_else(|| format!("unknown semantics `{s}`"))
    }
}

pub fn semantics(p: &Program, which: Semantics) -> Result<ModelState> {
    semantics_with(p, which, &Limits::default())
}

pub fn semantics_with(p: &Program, which: Semantics, limits: &Limits) -> Result<ModelState> {
    match which {
        Semantics::Wfds => argumentation::wfds_with(p, DerivationEngine::Canonical, limits),
        Semantics::WfdsRaw => argumentation::wfds_with(p, DerivationEngine::Raw, limits),
        Semantics::DwfsStar => residual::dwfs_star_with(p, limits),
        Semantics::DwfsClassic => residual::dwfs_classic_with(p, limits),
        Semantics::Uwfs => unfounded::uwfs_with(p, limits),
    }
}
