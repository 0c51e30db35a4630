//! The elementary program transformations and the s-implication test.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::parser::render_rule;
use crate::syntax::{AtomSet, ModelState, Program, PureDisjunction, Rule, Symbols};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TransformKind {
    Unfolding,
    ElimTautology,
    ElimSImplication,
    PositiveReduction,
    NegativeReduction,
}

impl TransformKind {
    pub const ALL: [TransformKind; 5] = [
        TransformKind::Unfolding,
        TransformKind::ElimTautology,
        TransformKind::ElimSImplication,
        TransformKind::PositiveReduction,
        TransformKind::NegativeReduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TransformKind::Unfolding => "unfolding",
            TransformKind::ElimTautology => "elim-tautology",
            TransformKind::ElimSImplication => "elim-s-implication",
            TransformKind::PositiveReduction => "positive-reduction",
            TransformKind::NegativeReduction => "negative-reduction",
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One application of a transformation: `(p - removed) + added`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransformStep {
    pub kind: TransformKind,
    pub removed: BTreeSet<Rule>,
    pub added: BTreeSet<Rule>,
}

impl TransformStep {
    fn new(
        kind: TransformKind,
        removed: impl IntoIterator<Item = Rule>,
        added: impl IntoIterator<Item = Rule>,
    ) -> Self {
        TransformStep {
            kind,
            removed: removed.into_iter().collect(),
            added: added.into_iter().collect(),
        }
    }

    /// `kind: -removed ... / +added ...` in program syntax.
    pub fn render(&self, symbols: &Symbols) -> String {
        let mut out = format!("{}:", self.kind);
        for r in &self.removed {
            out.push_str(" -");
            out.push_str(&render_rule(symbols, r));
        }
        out.push_str(" /");
        for r in &self.added {
            out.push_str(" +");
            out.push_str(&render_rule(symbols, r));
        }
        out
    }
}

/// True iff `weaker` is an s-implication of `stronger`: they differ and,
/// after moving some negative body atoms `C` of `weaker` into its head,
/// `stronger`'s head is contained in the widened head while `stronger`'s
/// bodies are contained in what remains of `weaker`'s bodies.
///
/// With `C` empty this is plain implication. A nonempty `C` is only moved
/// against a fact: against a rule with a body the move can cancel the whole
/// stronger head, and `b :- not a, not b` would be dropped beside
/// `a :- not b` although the well-founded model leaves both undefined.
pub fn is_s_implication(weaker: &Rule, stronger: &Rule) -> bool {
    if weaker == stronger {
        return false;
    }
    // the least C that can work; a larger C only shrinks the remaining body
    let moved = stronger.head().difference(weaker.head());
    moved.is_subset(weaker.neg())
        && stronger.pos().is_subset(weaker.pos())
        && stronger.neg().is_subset(weaker.neg())
        && stronger.neg().is_disjoint(&moved)
        && (moved.is_empty() || stronger.is_fact())
}

/// Brass and Dix's implication: head and body both included, `C` empty.
pub fn is_plain_implication(weaker: &Rule, stronger: &Rule) -> bool {
    weaker != stronger
        && stronger.head().is_subset(weaker.head())
        && stronger.pos().is_subset(weaker.pos())
        && stronger.neg().is_subset(weaker.neg())
}

/// Resolvents of `rule` on its body atom `b` against every rule defining `b`.
pub fn unfold(p: &Program, rule: &Rule, b: crate::syntax::Atom) -> BTreeSet<Rule> {
    let rest = rule.pos().without(b);
    p.rules()
        .iter()
        .filter(|def| def.head().contains(b))
        .map(|def| {
            Rule::new(
                rule.head().union(&def.head().without(b)),
                rest.union(def.pos()),
                rule.neg().union(def.neg()),
            )
            .expect("head of the unfolded rule is kept")
        })
        .collect()
}

/// Every single application of `kind` to `p`, in rule and atom id order.
pub fn applicable(p: &Program, kind: TransformKind) -> Vec<TransformStep> {
    let rules = p.rules();
    let mut steps: Vec<TransformStep> = match kind {
        TransformKind::Unfolding => rules
            .iter()
            .flat_map(|r| {
                r.pos()
                    .iter()
                    .map(move |b| TransformStep::new(kind, [r.clone()], unfold(p, r, b)))
            })
            .collect(),
        TransformKind::ElimTautology => rules
            .iter()
            .filter(|r| !r.head().is_disjoint(r.pos()))
            .map(|r| TransformStep::new(kind, [r.clone()], []))
            .collect(),
        TransformKind::ElimSImplication => rules
            .iter()
            .filter(|r| rules.iter().any(|s| is_s_implication(r, s)))
            .map(|r| TransformStep::new(kind, [r.clone()], []))
            .collect(),
        TransformKind::PositiveReduction => {
            let heads = p.head_atoms();
            rules
                .iter()
                .flat_map(|r| {
                    r.neg()
                        .iter()
                        .filter(|c| !heads.contains(*c))
                        .map(move |c| {
                            TransformStep::new(kind, [r.clone()], [r.with_neg(r.neg().without(c))])
                        })
                })
                .collect()
        }
        TransformKind::NegativeReduction => {
            let facts: Vec<&Rule> = rules.iter().filter(|r| r.is_fact()).collect();
            rules
                .iter()
                .filter(|r| facts.iter().any(|f| f.head().is_subset(r.neg())))
                .map(|r| TransformStep::new(kind, [r.clone()], []))
                .collect()
        }
    };
    let mut seen = BTreeSet::new();
    steps.retain(|s| seen.insert(s.clone()));
    steps
}

/// Applies a step previously returned by [`applicable`].
pub fn apply(p: &Program, step: &TransformStep) -> Result<Program> {
    if step.removed.is_empty() && step.added.is_empty() {
        return Ok(p.clone());
    }
    if !applicable(p, step.kind).contains(step) {
        return Err(Error::StaleStep);
    }
    Ok(apply_unchecked(p, step))
}

fn apply_unchecked(p: &Program, step: &TransformStep) -> Program {
    let rules = p
        .rules()
        .iter()
        .filter(|r| !step.removed.contains(*r))
        .chain(step.added.iter())
        .cloned();
    p.derive(rules)
}

/// Checks the structural conditions every BD-semantics meets: closure under
/// super-disjunctions, truth of facts, falsity of atoms without a defining
/// rule.
pub fn bd_semantics_axioms(s: &ModelState, p: &Program) -> bool {
    let closed = s.pos().iter().all(|d| {
        p.base()
            .iter()
            .all(|x| s.satisfies_positive(&d.atoms().with(x)))
    }) && s.false_atoms().iter().all(|a| {
        p.base().iter().all(|x| {
            s.satisfies(&PureDisjunction::Negative(
                crate::syntax::Disjunction::new(AtomSet::from_iter([a, x])).expect("nonempty"),
            ))
        })
    });
    let facts_true = p
        .rules()
        .iter()
        .filter(|r| r.is_fact())
        .all(|r| s.satisfies_positive(r.head()));
    let heads = p.head_atoms();
    let undefined_false = p
        .base()
        .iter()
        .filter(|a| !heads.contains(*a))
        .all(|a| s.is_false(a));
    closed && facts_true && undefined_false
}

/// Rewrites `p` by transformations until none applies, preferring
/// shrinking ones over unfolding. Returns the steps taken and the result,
/// or `None` in place of the result when `max_steps` runs out.
pub fn normalize(p: &Program, max_steps: usize) -> (Vec<TransformStep>, Option<Program>) {
    const ORDER: [TransformKind; 5] = [
        TransformKind::ElimTautology,
        TransformKind::NegativeReduction,
        TransformKind::ElimSImplication,
        TransformKind::PositiveReduction,
        TransformKind::Unfolding,
    ];
    let mut current = p.clone();
    let mut steps = Vec::new();
    while steps.len() < max_steps {
        let next = ORDER
            .iter()
            .find_map(|&k| applicable(&current, k).into_iter().next());
        match next {
            Some(step) => {
                current = apply_unchecked(&current, &step);
                steps.push(step);
            }
            None => return (steps, Some(current)),
        }
    }
    (steps, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_program, render_program};

    fn rule(text: &str) -> (Program, Rule) {
        let p = parse_program(text).unwrap();
        let r = p.rules().iter().next().unwrap().clone();
        (p, r)
    }

    fn pair(text: &str) -> (Rule, Rule) {
        // both rules parsed against one symbol table, in source order
        let p = parse_program(text).unwrap();
        let lines: Vec<&str> = text.split_inclusive('.').collect();
        let find = |src: &str| {
            let q = crate::parser::parse_program_with(src, (**p.symbols()).clone()).unwrap();
            q.rules().iter().next().unwrap().clone()
        };
        (find(lines[0]), find(lines[1]))
    }

    #[test]
    fn s_implication_examples() {
        let (r1, r2) = pair("b | l :- not p. l | p.");
        assert!(is_s_implication(&r1, &r2));
        assert!(!is_s_implication(&r2, &r1));
        let (r1, r3) = pair("b | l :- not p. l :- not p.");
        assert!(is_s_implication(&r1, &r3));
        assert!(is_plain_implication(&r1, &r3));
        assert!(!is_plain_implication(&r1, &r2));
        let (_, r) = rule("a :- b.");
        assert!(!is_s_implication(&r, &r));
    }

    #[test]
    fn moved_atoms_must_leave_the_body() {
        // moving p into the head leaves nothing for `l :- not p` to match
        let (r1, r2) = pair("b | l :- not p. l | p :- not p.");
        assert!(!is_s_implication(&r1, &r2));
    }

    const CHAIN: &str = "p | p1 | p2.
        p1 | p2 :- q.
        p3 :- p, q, not p4.
        p3 | p4.
        w | q :- w, not p.
        q.";

    /// `text` parsed against the symbols and base of `p`.
    fn like(p: &Program, text: &str) -> Program {
        let q = crate::parser::parse_program_with(text, (**p.symbols()).clone()).unwrap();
        p.derive(q.rules().iter().cloned())
    }

    #[test]
    fn worked_transformation_chain() {
        let p = parse_program(CHAIN).unwrap();
        let sym = p.symbols().clone();
        let q = sym.lookup("q").unwrap();

        // the tautology w | q :- w, not p also defines q, so it goes first;
        // unfolding against it would only add further tautologies
        let taut = applicable(&p, TransformKind::ElimTautology);
        assert_eq!(taut.len(), 1);
        assert_eq!(
            taut[0].render(&sym),
            "elim-tautology: -q | w :- w, not p. /"
        );
        let p0 = apply(&p, &taut[0]).unwrap();

        // unfold q in r2, then in r3
        let mut p1 = p0.clone();
        for _ in 0..2 {
            let step = applicable(&p1, TransformKind::Unfolding)
                .into_iter()
                .find(|s| {
                    s.removed.iter().any(|r| r.pos().contains(q))
                        && s.added.iter().all(|r| !r.pos().contains(q))
                })
                .unwrap();
            p1 = apply(&p1, &step).unwrap();
        }
        assert_eq!(
            p1,
            like(&p, "p | p1 | p2. p1 | p2. p3 :- p, not p4. p3 | p4. q.")
        );

        // s-implications r1 then r3
        let simp = applicable(&p1, TransformKind::ElimSImplication);
        assert_eq!(simp.len(), 2);
        let p2 = apply(&p1, &simp[0]).unwrap();
        let simp = applicable(&p2, TransformKind::ElimSImplication);
        assert_eq!(simp.len(), 1);
        let p3 = apply(&p2, &simp[0]).unwrap();
        assert_eq!(p3, like(&p, "p1 | p2. p3 | p4. q."));
        assert!(applicable(&p3, TransformKind::PositiveReduction).is_empty());
        assert_eq!(p3.base().len(), p.base().len());
    }

    #[test]
    fn unfolding_resolves_against_every_definition() {
        let p = parse_program(CHAIN).unwrap();
        let q = p.symbols().lookup("q").unwrap();
        let step = applicable(&p, TransformKind::Unfolding)
            .into_iter()
            .find(|s| {
                s.removed
                    .iter()
                    .any(|r| r.head().len() == 2 && r.pos().contains(q))
            })
            .unwrap();
        assert_eq!(step.added.len(), 2);
        assert_eq!(
            step.render(p.symbols()),
            "unfolding: -p1 | p2 :- q. / +p1 | p2. +p1 | p2 | w :- w, not p."
        );
    }

    #[test]
    fn travel_by_s_implication() {
        let p = parse_program("b | l :- not p. l | p.").unwrap();
        let steps = applicable(&p, TransformKind::ElimSImplication);
        assert_eq!(steps.len(), 1);
        assert_eq!(render_program(&apply(&p, &steps[0]).unwrap()), "l | p.\n");
    }

    #[test]
    fn stale_and_empty_steps() {
        let p = parse_program("a :- b. b.").unwrap();
        let empty = TransformStep::new(TransformKind::Unfolding, [], []);
        assert_eq!(apply(&p, &empty).unwrap(), p);
        let other = parse_program("x :- y, y.").unwrap();
        let foreign = applicable(&other, TransformKind::Unfolding);
        let q = parse_program("z :- not w.").unwrap();
        let stale = TransformStep::new(TransformKind::ElimTautology, q.rules().iter().cloned(), []);
        assert_eq!(apply(&p, &stale), Err(Error::StaleStep));
        assert!(foreign.iter().all(|s| s.added.is_empty()));
    }

    #[test]
    fn positive_and_negative_reduction() {
        let p = parse_program("a :- not b. c :- not d, not a. d.").unwrap();
        let pos = applicable(&p, TransformKind::PositiveReduction);
        assert_eq!(pos.len(), 1);
        assert_eq!(
            pos[0].render(p.symbols()),
            "positive-reduction: -a :- not b. / +a."
        );
        let neg = applicable(&p, TransformKind::NegativeReduction);
        assert_eq!(neg.len(), 1);
        assert_eq!(
            neg[0].render(p.symbols()),
            "negative-reduction: -c :- not a, not d. /"
        );
        // negative reduction is an s-implication against the fact
        let fact = p.rules().iter().find(|r| r.is_fact()).unwrap();
        for r in &neg[0].removed {
            assert!(is_s_implication(r, fact));
        }
    }

    #[test]
    fn bd_axioms() {
        let p = parse_program("a.").unwrap();
        assert!(!bd_semantics_axioms(&ModelState::new(), &p));
        let p = parse_program("a :- not x.").unwrap();
        let x = p.symbols().lookup("x").unwrap();
        let s = ModelState::from_parts(&[], AtomSet::singleton(x));
        assert!(bd_semantics_axioms(&s, &p));
    }

    #[test]
    fn normalize_reaches_irreducible_program() {
        let p = parse_program(CHAIN).unwrap();
        let (steps, result) = normalize(&p, 1000);
        assert!(!steps.is_empty());
        assert_eq!(result.unwrap(), like(&p, "p1 | p2. p3 | p4. q."));
    }
}
