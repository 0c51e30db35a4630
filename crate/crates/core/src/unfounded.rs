//! Unfounded sets and the well-founded operator built from them.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::fixpoint::BitIndex;
use crate::syntax::{Atom, AtomSet, Disjunction, DisjunctionSet, ModelState, Program, Rule, Truth};
use crate::Limits;

/// `x` is unfounded wrt `s` when no rule with a head atom in `x` can still
/// support it: the rule has a positive body atom in `x`, or its body is false
/// in `s` once the head atoms outside `x` are shifted into it as negative
/// literals, or every hyperresolvent of the rule against `s` is false in that
/// shifted sense.
///
/// A head outside `x` already satisfied by `s` and a plainly false body are
/// special cases of the shifted condition; the resolvents catch positive
/// bodies that only disjunctions of `s` can satisfy, as in `c :- a, b` with
/// `a | b` known. Tautologies and rules implied by another rule of `p`
/// (ignoring that rule's negative literals already true in `s`) support
/// nothing.
pub fn is_unfounded(p: &Program, s: &ModelState, x: &AtomSet) -> bool {
    let blocking = Blocking::new(p, s);
    p.rules()
        .iter()
        .filter(|r| !r.head().is_disjoint(x))
        .all(|r| blocking.blocked(r, x, x))
}

struct Blocking<'a> {
    s: &'a ModelState,
    premises: BTreeMap<Atom, Vec<AtomSet>>,
    redundant: BTreeSet<&'a Rule>,
}

impl<'a> Blocking<'a> {
    fn new(p: &'a Program, s: &'a ModelState) -> Self {
        // `q` implies `r` once the literals `not b` with `b` false in `s` are
        // dropped from `q`; of rules implying each other the least is kept
        let implies = |q: &Rule, r: &Rule| {
            q.head().is_subset(r.head())
                && q.pos().is_subset(r.pos())
                && q.neg().difference(s.false_atoms()).is_subset(r.neg())
        };
        let redundant = p
            .rules()
            .iter()
            .filter(|r| {
                p.rules()
                    .iter()
                    .any(|q| q != *r && implies(q, r) && (q < *r || !implies(r, q)))
            })
            .collect();
        let mut premises: BTreeMap<Atom, Vec<AtomSet>> = BTreeMap::new();
        for d in s.pos() {
            for b in d.atoms() {
                premises.entry(b).or_default().push(d.atoms().without(b));
            }
        }
        Blocking {
            s,
            premises,
            redundant,
        }
    }

    /// `r` has a positive atom in `inside`, or is false with every head or
    /// resolvent atom outside `kept` shifted into the body.
    fn blocked(&self, r: &Rule, inside: &AtomSet, kept: &AtomSet) -> bool {
        if self.redundant.contains(r) || !r.pos().is_disjoint(r.head()) {
            return true;
        }
        if !r.pos().is_disjoint(inside) || self.shifted_false(r, r.pos(), r.head(), kept) {
            return true;
        }
        if r.pos().is_empty() || !r.pos().iter().all(|b| self.premises.contains_key(&b)) {
            return false;
        }
        let empty = AtomSet::new();
        crate::fixpoint::hyperresolve(r.head(), r.pos(), &self.premises)
            .iter()
            .all(|h| self.shifted_false(r, &empty, h, kept))
    }

    fn shifted_false(&self, r: &Rule, pos: &AtomSet, head: &AtomSet, kept: &AtomSet) -> bool {
        let neg = r.neg().union(&head.difference(kept));
        let shifted = Rule::new(r.head().clone(), pos.clone(), neg).expect("head is nonempty");
        self.s.body_status(&shifted) == Truth::False
    }
}

/// The greatest unfounded set of `p` wrt `s`; `Ok(None)` when the unfounded
/// sets have no greatest element.
///
/// Elimination from below yields an unfounded set, elimination with
/// optimistic conditions a superset of every unfounded set. When the two
/// meet the answer is exact; otherwise the subsets between are enumerated
/// up to the oracle bound.
pub fn greatest_unfounded(p: &Program, s: &ModelState) -> Result<Option<AtomSet>> {
    greatest_unfounded_with(p, s, &Limits::default())
}

pub fn greatest_unfounded_with(
    p: &Program,
    s: &ModelState,
    limits: &Limits,
) -> Result<Option<AtomSet>> {
    let defining = defining_rules(p);
    let blocking = Blocking::new(p, s);
    let lower = eliminate(
        p.base().difference(&s.true_atoms()),
        &defining,
        |r, _, x| blocking.blocked(r, x, x),
    );
    // shifting fewer atoms only makes the body harder to falsify
    let upper = eliminate(p.base().clone(), &defining, |r, a, x| {
        blocking.blocked(r, x, &AtomSet::singleton(a))
    });
    debug_assert!(lower.is_subset(&upper));
    if lower == upper {
        return Ok(Some(lower));
    }
    if upper.len() > limits.oracle {
        return Err(Error::UnfoundedUndecided {
            candidates: upper.len(),
            bound: limits.oracle,
        });
    }
    let union = union_of_unfounded(p, s, &upper, limits.oracle)?;
    Ok(is_unfounded(p, s, &union).then_some(union))
}

fn defining_rules(p: &Program) -> BTreeMap<Atom, Vec<&Rule>> {
    let mut index: BTreeMap<Atom, Vec<&Rule>> = BTreeMap::new();
    for r in p.rules() {
        for a in r.head() {
            index.entry(a).or_default().push(r);
        }
    }
    index
}

/// Removes atoms with a defining rule that `blocked` rejects, until stable.
fn eliminate(
    mut x: AtomSet,
    defining: &BTreeMap<Atom, Vec<&Rule>>,
    blocked: impl Fn(&Rule, Atom, &AtomSet) -> bool,
) -> AtomSet {
    loop {
        let failing: Vec<Atom> = x
            .iter()
            .filter(|&a| {
                defining
                    .get(&a)
                    .is_some_and(|rules| rules.iter().any(|r| !blocked(r, a, &x)))
            })
            .collect();
        if failing.is_empty() {
            return x;
        }
        // one atom at a time: the lower conditions are not monotone in x
        x.remove(failing[0]);
    }
}

/// Union of all unfounded subsets of `within`, by enumeration.
pub fn union_of_unfounded(
    p: &Program,
    s: &ModelState,
    within: &AtomSet,
    bound: usize,
) -> Result<AtomSet> {
    let index = BitIndex::new(within, "unfounded set oracle", bound)?;
    let mut union = 0u64;
    for mask in 0..1u64 << index.len() {
        if mask & !union != 0 && is_unfounded(p, s, &index.set(mask)) {
            union |= mask;
        }
    }
    Ok(index.set(union))
}

/// Disjunctions that become certain given `s`: rules whose negative body
/// is false in `s`, hyperresolved on their positive atoms against members
/// of `s`, with the atoms false in `s` dropped from the result.
pub fn t_operator(p: &Program, s: &ModelState) -> DisjunctionSet {
    let mut by_atom: BTreeMap<Atom, Vec<AtomSet>> = BTreeMap::new();
    for d in s.pos() {
        for b in d.atoms() {
            by_atom.entry(b).or_default().push(d.atoms().without(b));
        }
    }
    let derived: Vec<Disjunction> = p
        .rules()
        .iter()
        .filter(|r| r.neg().iter().all(|c| s.is_false(c)))
        .flat_map(|r| crate::fixpoint::hyperresolve(r.head(), r.pos(), &by_atom))
        .filter_map(|d| Disjunction::new(d.difference(s.false_atoms())))
        .collect();
    crate::syntax::canonicalize(&derived)
}

/// One accumulating step `s + T_P(s) + not U_P(s)`.
pub fn w_operator(p: &Program, s: &ModelState) -> Result<ModelState> {
    w_operator_with(p, s, &Limits::default())
}

pub fn w_operator_with(p: &Program, s: &ModelState, limits: &Limits) -> Result<ModelState> {
    let unfounded = greatest_unfounded_with(p, s, limits)?.ok_or(Error::NoGreatestUnfounded)?;
    let derived = t_operator(p, s);
    Ok(ModelState::from_parts(
        s.pos().iter().chain(&derived),
        s.false_atoms().union(&unfounded),
    ))
}

/// `W_0 = {}, W_1, ...` up to and including the least fixpoint.
pub fn w_sequence(p: &Program, limits: &Limits) -> Result<Vec<ModelState>> {
    let mut seq = vec![ModelState::new()];
    loop {
        let next = w_operator_with(p, seq.last().expect("sequence is nonempty"), limits)?;
        if &next == seq.last().expect("sequence is nonempty") {
            return Ok(seq);
        }
        seq.push(next);
    }
}

pub fn uwfs(p: &Program) -> Result<ModelState> {
    uwfs_with(p, &Limits::default())
}

/// U-WFS: the least fixpoint of `W_P` over the conditional facts of `p`.
///
/// Unfounded sets only look one rule deep, so a positive body atom defined
/// through negation (`f :- c, d.  d :- not c.`) hides what unfolding
/// reveals; running on the least fixpoint transformation removes positive
/// bodies altogether.
pub fn uwfs_with(p: &Program, limits: &Limits) -> Result<ModelState> {
    let q = crate::residual::lft_program(p, limits)?;
    Ok(w_sequence(&q, limits)?.pop().expect("sequence is nonempty"))
}
