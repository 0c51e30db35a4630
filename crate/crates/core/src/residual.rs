//! Bottom-up evaluation into conditional facts and the strong residual program.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::syntax::{AtomSet, Disjunction, ModelState, Program, Rule};
use crate::transforms::{is_plain_implication, is_s_implication};
use crate::Limits;

/// A rule without positive body atoms: `a1 | ... | an :- not c1, ..., not ct`.
pub type ConditionalFact = Rule;

/// A set of conditional facts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NegativeProgram {
    facts: BTreeSet<ConditionalFact>,
}

impl NegativeProgram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Keeps the negative rules of `rules`.
    pub fn from_rules<'a>(rules: impl IntoIterator<Item = &'a Rule>) -> Self {
        NegativeProgram {
            facts: rules
                .into_iter()
                .filter(|r| r.is_negative())
                .cloned()
                .collect(),
        }
    }

    pub fn facts(&self) -> &BTreeSet<ConditionalFact> {
        &self.facts
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn head_atoms(&self) -> AtomSet {
        self.facts.iter().flat_map(|r| r.head().iter()).collect()
    }

    pub fn literal_count(&self) -> usize {
        self.facts.iter().map(Rule::literal_count).sum()
    }

    /// The facts as a program over the symbols and base of `like`.
    pub fn to_program(&self, like: &Program) -> Program {
        like.derive(self.facts.iter().cloned())
    }
}

impl FromIterator<ConditionalFact> for NegativeProgram {
    fn from_iter<I: IntoIterator<Item = ConditionalFact>>(iter: I) -> Self {
        NegativeProgram::from_rules(&iter.into_iter().collect::<Vec<_>>())
    }
}

/// One application of T_P^G: every rule of `p` with each positive body atom
/// `b` resolved against a fact of `j` whose head contains `b`.
pub fn tpg_step(p: &Program, j: &NegativeProgram) -> NegativeProgram {
    tpg_step_rules(p.rules(), j)
}

fn tpg_step_rules<'a>(
    rules: impl IntoIterator<Item = &'a Rule>,
    j: &NegativeProgram,
) -> NegativeProgram {
    let mut out = BTreeSet::new();
    for r in rules {
        let mut partial: BTreeSet<(AtomSet, AtomSet)> =
            BTreeSet::from([(r.head().clone(), r.neg().clone())]);
        for b in r.pos() {
            let premises: Vec<&Rule> = j.facts.iter().filter(|c| c.head().contains(b)).collect();
            partial = partial
                .iter()
                .flat_map(|(head, neg)| {
                    premises
                        .iter()
                        .map(move |c| (head.union(&c.head().without(b)), neg.union(c.neg())))
                })
                .collect();
            if partial.is_empty() {
                break;
            }
        }
        out.extend(partial.into_iter().map(|(head, neg)| {
            Rule::new(head, AtomSet::new(), neg).expect("rule heads are nonempty")
        }));
    }
    NegativeProgram { facts: out }
}

/// The least fixpoint transformation Lft(P) = T_P^G up to omega.
pub fn lft(p: &Program) -> Result<NegativeProgram> {
    lft_with(p, &Limits::default())
}

pub fn lft_with(p: &Program, limits: &Limits) -> Result<NegativeProgram> {
    let mut acc = NegativeProgram::new();
    loop {
        let step = tpg_step(p, &acc);
        let before = acc.len();
        acc.facts.extend(step.facts);
        if acc.len() > limits.lft_capacity {
            return Err(Error::Capacity {
                what: "least fixpoint transformation",
                limit: limits.lft_capacity,
            });
        }
        if acc.len() == before {
            return Ok(acc);
        }
    }
}

/// Lft(P) as a program over the base of `p`.
pub fn lft_program(p: &Program, limits: &Limits) -> Result<Program> {
    Ok(lft_with(p, limits)?.to_program(p))
}

/// R*: drop s-implied facts, then drop negative literals over atoms no
/// fact of `n` defines.
pub fn strong_reduction(n: &NegativeProgram) -> NegativeProgram {
    reduce(n, |r, n| n.facts.iter().any(|s| is_s_implication(r, s)))
}

/// The baseline reduction: drop facts that plainly imply another or whose
/// negative body is refuted by an unconditional fact, then drop negative
/// literals over undefined atoms.
pub fn classic_reduction(n: &NegativeProgram) -> NegativeProgram {
    reduce(n, |r, n| {
        n.facts
            .iter()
            .any(|s| is_plain_implication(r, s) || (s.is_fact() && s.head().is_subset(r.neg())))
    })
}

fn reduce(
    n: &NegativeProgram,
    removed: impl Fn(&Rule, &NegativeProgram) -> bool,
) -> NegativeProgram {
    let heads = n.head_atoms();
    n.facts
        .iter()
        .filter(|r| !removed(r, n))
        .map(|r| r.with_neg(r.neg().intersection(&heads)))
        .collect()
}

/// `n, reduce(n), reduce(reduce(n)), ...` up to and including the fixpoint.
fn reduction_chain(
    n: NegativeProgram,
    reduce: fn(&NegativeProgram) -> NegativeProgram,
) -> Vec<NegativeProgram> {
    let mut chain = vec![n];
    loop {
        let next = reduce(chain.last().expect("chain is nonempty"));
        if &next == chain.last().expect("chain is nonempty") {
            return chain;
        }
        chain.push(next);
    }
}

/// Lft(P) followed by every R* pass, ending at res*(P).
pub fn strong_residual_chain(p: &Program, limits: &Limits) -> Result<Vec<NegativeProgram>> {
    Ok(reduction_chain(lft_with(p, limits)?, strong_reduction))
}

/// res*(P), the fixpoint of R* above Lft(P).
pub fn strong_residual(p: &Program) -> Result<NegativeProgram> {
    strong_residual_with(p, &Limits::default())
}

pub fn strong_residual_with(p: &Program, limits: &Limits) -> Result<NegativeProgram> {
    Ok(strong_residual_chain(p, limits)?
        .pop()
        .expect("chain is nonempty"))
}

/// The fixpoint of the baseline reduction above Lft(P).
pub fn classic_residual_with(p: &Program, limits: &Limits) -> Result<NegativeProgram> {
    Ok(reduction_chain(lft_with(p, limits)?, classic_reduction)
        .pop()
        .expect("chain is nonempty"))
}

/// Unconditional facts are true, atoms without a defining fact are false.
pub fn read_off(p: &Program, residual: &NegativeProgram) -> ModelState {
    let pos: Vec<Disjunction> = residual
        .facts
        .iter()
        .filter(|r| r.is_fact())
        .map(Rule::head_disjunction)
        .collect();
    ModelState::from_parts(&pos, p.base().difference(&residual.head_atoms()))
}

pub fn dwfs_star(p: &Program) -> Result<ModelState> {
    dwfs_star_with(p, &Limits::default())
}

pub fn dwfs_star_with(p: &Program, limits: &Limits) -> Result<ModelState> {
    Ok(read_off(p, &strong_residual_with(p, limits)?))
}

pub fn dwfs_classic(p: &Program) -> Result<ModelState> {
    dwfs_classic_with(p, &Limits::default())
}

pub fn dwfs_classic_with(p: &Program, limits: &Limits) -> Result<ModelState> {
    Ok(read_off(p, &classic_residual_with(p, limits)?))
}
