//! Argumentation-based well-founded semantics (WFDS).
//!
//! A hypothesis supports a positive disjunction when the disjunction, widened
//! by atoms the hypothesis assumes false, is derivable from the reduct of the
//! program. Hypotheses attack each other by supporting what the other
//! assumes false. The well-founded hypothesis is the least fixpoint of "every
//! attacker is counterattacked", and the semantics adds everything it
//! supports.

use std::fmt;

use crate::error::{Error, Result};
use crate::fixpoint::{tps_lfp_rules, BitIndex};
use crate::syntax::{
    canonicalize, named, Atom, AtomSet, Disjunction, DisjunctionSet, Hypothesis, ModelState,
    Program, Rule, Symbols,
};
use crate::Limits;

/// Which derivation set of the reduct a hypothesis may cancel against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum DerivationEngine {
    /// The canonical least model state of the reduct.
    #[default]
    Canonical,
    /// The full hyperresolution fixpoint of the reduct, without subsumption.
    Raw,
}

impl fmt::Display for DerivationEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DerivationEngine::Canonical => "canonical",
            DerivationEngine::Raw => "raw",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttackClause {
    /// Every atom of one (possibly disjunctive) assumption is supported.
    Condition1,
    /// A disjunction of literally assumed atoms is supported.
    Condition2,
}

/// Evidence that one hypothesis attacks another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackWitness {
    pub clause: AttackClause,
    /// The assumption's atoms (condition 1) or the attacked atoms (condition 2).
    pub atoms: AtomSet,
    /// The supported disjunctions: one unit per atom for condition 1, a
    /// single disjunction for condition 2.
    pub derived: Vec<Disjunction>,
}

impl AttackWitness {
    /// Re-checks the witness from scratch.
    pub fn verify(
        &self,
        p: &Program,
        delta: &Hypothesis,
        target: &Hypothesis,
        engine: DerivationEngine,
    ) -> bool {
        let in_target = match self.clause {
            AttackClause::Condition1 => target.assumptions().any(|a| a == self.atoms),
            AttackClause::Condition2 => self.atoms.is_subset(target.literals()),
        };
        in_target
            && !self.atoms.is_empty()
            && self.derived.iter().all(|d| derives(p, delta, d, engine))
    }

    pub fn describe(&self, symbols: &Symbols) -> String {
        let derived: Vec<String> = self
            .derived
            .iter()
            .map(|d| named(symbols, d).to_string())
            .collect();
        format!(
            "{:?} on {} deriving [{}]",
            self.clause,
            named(symbols, &self.atoms),
            derived.join("; ")
        )
    }
}

/// Rules whose negative body is assumed false by `delta`, with the negative
/// body dropped. Only literal assumptions count.
pub fn reduct(p: &Program, delta: &Hypothesis) -> Program {
    p.derive(reduct_rules(p, delta.literals()))
}

fn reduct_rules(p: &Program, literals: &AtomSet) -> Vec<Rule> {
    p.rules()
        .iter()
        .filter(|r| r.neg().is_subset(literals))
        .map(|r| r.with_neg(AtomSet::new()))
        .collect()
}

/// The set a hypothesis cancels against: `can(ms)` or the raw fixpoint of
/// the reduct.
pub fn support_set(p: &Program, literals: &AtomSet, engine: DerivationEngine) -> DisjunctionSet {
    let rules = reduct_rules(p, literals);
    let raw = tps_lfp_rules(&rules);
    match engine {
        DerivationEngine::Raw => raw,
        DerivationEngine::Canonical => canonicalize(&raw),
    }
}

fn supported_by(support: &DisjunctionSet, literals: &AtomSet, a: &Disjunction) -> bool {
    support.iter().any(|b| {
        a.atoms().is_subset(b.atoms()) && b.atoms().difference(a.atoms()).is_subset(literals)
    })
}

/// `delta |- a`: some member of the support set is `a` widened by atoms
/// that `delta` assumes false.
pub fn derives(p: &Program, delta: &Hypothesis, a: &Disjunction, engine: DerivationEngine) -> bool {
    let support = support_set(p, delta.literals(), engine);
    supported_by(&support, delta.literals(), a)
}

fn cancel(support: &DisjunctionSet, literals: &AtomSet) -> DisjunctionSet {
    let mut out = Vec::new();
    for b in support {
        match Disjunction::new(b.atoms().difference(literals)) {
            Some(rest) => out.push(rest),
            // everything cancels: each single atom is still supported
            None => out.extend(b.atoms().iter().map(Disjunction::unit)),
        }
    }
    canonicalize(&out)
}

/// Canonical core of everything `delta` supports.
pub fn cons(p: &Program, delta: &Hypothesis, engine: DerivationEngine) -> DisjunctionSet {
    cancel(&support_set(p, delta.literals(), engine), delta.literals())
}

fn attack_in(
    support: &DisjunctionSet,
    literals: &AtomSet,
    target: &Hypothesis,
) -> Option<AttackWitness> {
    let tl = target.literals();
    let clause2 = support
        .iter()
        .find(|b| !b.atoms().is_disjoint(tl) && b.atoms().difference(tl).is_subset(literals));
    if let Some(b) = clause2 {
        let atoms = b.atoms().intersection(tl);
        let derived = vec![Disjunction::new(atoms.clone()).expect("nonempty intersection")];
        return Some(AttackWitness {
            clause: AttackClause::Condition2,
            atoms,
            derived,
        });
    }
    target.disjunctive().iter().find_map(|beta| {
        let units: Vec<Disjunction> = beta.iter().map(Disjunction::unit).collect();
        units
            .iter()
            .all(|u| supported_by(support, literals, u))
            .then(|| AttackWitness {
                clause: AttackClause::Condition1,
                atoms: beta.clone(),
                derived: units,
            })
    })
}

/// `delta` attacks `target` when it supports every atom of one of its
/// assumptions, or a disjunction of atoms `target` assumes false.
pub fn attacks(
    p: &Program,
    delta: &Hypothesis,
    target: &Hypothesis,
    engine: DerivationEngine,
) -> Option<AttackWitness> {
    let support = support_set(p, delta.literals(), engine);
    attack_in(&support, delta.literals(), target)
}

pub fn self_consistent(p: &Program, delta: &Hypothesis) -> bool {
    attacks(p, delta, delta, DerivationEngine::Canonical).is_none()
}

/// Every literal hypothesis over the base, with the units it supports.
///
/// Attackers of a single assumption `not a` are exactly the hypotheses
/// supporting `a`; disjunctive assumptions never take part in a derivation,
/// so literal hypotheses cover all attackers.
struct AttackerSpace {
    index: BitIndex,
    /// `supported[mask]`: atoms (as a mask) the hypothesis `mask` supports.
    supported: Vec<u64>,
    engine: DerivationEngine,
}

impl AttackerSpace {
    fn new(p: &Program, engine: DerivationEngine, limits: &Limits) -> Result<Self> {
        let index = BitIndex::new(p.base(), "attacker enumeration", limits.enumeration)?;
        let supported = (0..1u64 << index.len())
            .map(|mask| {
                let literals = index.set(mask);
                support_set(p, &literals, engine)
                    .iter()
                    .map(|b| {
                        let b = index.mask(b.atoms());
                        let rest = b & !mask;
                        match rest.count_ones() {
                            0 => b,
                            1 => rest,
                            _ => 0,
                        }
                    })
                    .fold(0, |acc, m| acc | m)
            })
            .collect();
        Ok(AttackerSpace {
            index,
            supported,
            engine,
        })
    }

    /// Atoms admissible with respect to a hypothesis with these literals.
    fn admissible(&self, p: &Program, literals: &AtomSet) -> AtomSet {
        let support: Vec<u64> = support_set(p, literals, self.engine)
            .iter()
            .map(|b| self.index.mask(b.atoms()))
            .collect();
        let assumed = self.index.mask(literals);
        let mut not_admissible = 0u64;
        for (target, &supported) in self.supported.iter().enumerate() {
            let target = target as u64;
            if supported & !not_admissible == 0 {
                continue;
            }
            let counterattacked = support
                .iter()
                .any(|&b| b & target != 0 && b & !target & !assumed == 0);
            if !counterattacked {
                not_admissible |= supported;
            }
        }
        let all = (1u64 << self.index.len()) - 1;
        self.index.set(all & !not_admissible)
    }
}

/// `not a` is admissible wrt `delta` when `delta` attacks every hypothesis
/// that supports `a`.
pub fn admissible(
    p: &Program,
    delta: &Hypothesis,
    a: Atom,
    engine: DerivationEngine,
) -> Result<bool> {
    admissible_with(p, delta, a, engine, &Limits::default())
}

pub fn admissible_with(
    p: &Program,
    delta: &Hypothesis,
    a: Atom,
    engine: DerivationEngine,
    limits: &Limits,
) -> Result<bool> {
    let index = BitIndex::new(p.base(), "attacker enumeration", limits.enumeration)?;
    let goal = Disjunction::unit(a);
    let delta_support = support_set(p, delta.literals(), engine);
    for mask in 0..1u64 << index.len() {
        let attacker = Hypothesis::from_literals(index.set(mask));
        if derives(p, &attacker, &goal, engine)
            && attack_in(&delta_support, delta.literals(), &attacker).is_none()
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The chain of literal cores `D0 = {}, D(k+1) = A_P(Dk)` up to its fixpoint.
pub fn wfdh_chain(p: &Program, engine: DerivationEngine, limits: &Limits) -> Result<Vec<AtomSet>> {
    let space = AttackerSpace::new(p, engine, limits)?;
    let mut chain = vec![AtomSet::new()];
    // a monotone chain over a finite base grows at most |base| times
    for _ in 0..=p.base().len() {
        let current = chain.last().expect("nonempty chain");
        let next = space.admissible(p, current);
        if &next == current {
            return Ok(chain);
        }
        chain.push(next);
    }
    Err(Error::Capacity {
        what: "admissibility iteration",
        limit: p.base().len() + 1,
    })
}

/// The well-founded disjunctive hypothesis, as its literal core.
pub fn wfdh(p: &Program, engine: DerivationEngine) -> Result<Hypothesis> {
    wfdh_with(p, engine, &Limits::default())
}

pub fn wfdh_with(p: &Program, engine: DerivationEngine, limits: &Limits) -> Result<Hypothesis> {
    let chain = wfdh_chain(p, engine, limits)?;
    Ok(Hypothesis::from_literals(
        chain.into_iter().last().unwrap_or_default(),
    ))
}

/// WFDS: the well-founded hypothesis plus everything it supports.
pub fn wfds(p: &Program, engine: DerivationEngine) -> Result<ModelState> {
    wfds_with(p, engine, &Limits::default())
}

pub fn wfds_with(p: &Program, engine: DerivationEngine, limits: &Limits) -> Result<ModelState> {
    let delta = wfdh_with(p, engine, limits)?;
    let pos = cons(p, &delta, engine);
    Ok(ModelState::from_parts(&pos, delta.literals().clone()))
}
