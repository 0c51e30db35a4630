//! Least model states of positive programs via hyperresolution.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::parser::render_rule;
use crate::syntax::{canonicalize, Atom, AtomSet, Disjunction, DisjunctionSet, Program, Rule};

/// Default bound on the number of atoms the truth-table oracle enumerates.
pub const DEFAULT_ENTAILMENT_BOUND: usize = 20;

pub(crate) fn require_positive(p: &Program) -> Result<()> {
    match p.rules().iter().find(|r| !r.is_positive()) {
        Some(r) => Err(Error::NotPositive {
            rule: render_rule(p.symbols(), r),
        }),
        None => Ok(()),
    }
}

/// For every atom, the remainders `D - {b}` of the members `D` containing it.
fn resolvents_by_atom<'a, I>(members: I) -> BTreeMap<Atom, Vec<AtomSet>>
where
    I: IntoIterator<Item = &'a Disjunction>,
{
    let mut index: BTreeMap<Atom, Vec<AtomSet>> = BTreeMap::new();
    for d in members {
        for b in d.atoms() {
            index.entry(b).or_default().push(d.atoms().without(b));
        }
    }
    index
}

/// Hyperresolution of one rule against indexed premises: every
/// `head | A1 | ... | Am` with `b_i | A_i` a premise for each body atom.
///
/// Body atoms are resolved one at a time; the intermediate heads are
/// deduplicated, which yields the same set as resolving all at once.
pub(crate) fn hyperresolve(
    head: &AtomSet,
    body: &AtomSet,
    premises: &BTreeMap<Atom, Vec<AtomSet>>,
) -> BTreeSet<AtomSet> {
    let mut partial: BTreeSet<AtomSet> = BTreeSet::from([head.clone()]);
    for b in body {
        let Some(rests) = premises.get(&b) else {
            return BTreeSet::new();
        };
        partial = partial
            .iter()
            .flat_map(|h| rests.iter().map(move |rest| h.union(rest)))
            .collect();
    }
    partial
}

/// One application of the immediate consequence operator T_P^S.
pub fn tps_step(p: &Program, j: &DisjunctionSet) -> Result<DisjunctionSet> {
    require_positive(p)?;
    Ok(tps_step_unchecked(p.rules(), j))
}

fn tps_step_unchecked<'a, R>(rules: R, j: &DisjunctionSet) -> DisjunctionSet
where
    R: IntoIterator<Item = &'a Rule>,
{
    let premises = resolvents_by_atom(j);
    rules
        .into_iter()
        .flat_map(|r| hyperresolve(r.head(), r.pos(), &premises))
        .filter_map(Disjunction::new)
        .collect()
}

/// T_P^S iterated from the empty set until nothing new is derived.
///
/// Negative bodies are ignored, so callers pass the positive part of a
/// program (a reduct); [`tps_lfp`] checks that precondition.
pub(crate) fn tps_lfp_rules<'a, R>(rules: R) -> DisjunctionSet
where
    R: IntoIterator<Item = &'a Rule> + Clone,
{
    let mut acc = DisjunctionSet::new();
    loop {
        let step = tps_step_unchecked(rules.clone(), &acc);
        let before = acc.len();
        acc.extend(step);
        if acc.len() == before {
            return acc;
        }
    }
}

/// T_P^S up to omega, without subsumption deletion.
pub fn tps_lfp(p: &Program) -> Result<DisjunctionSet> {
    require_positive(p)?;
    Ok(tps_lfp_rules(p.rules()))
}

/// The canonical least model state `can(ms(P))`.
pub fn least_model_state(p: &Program) -> Result<DisjunctionSet> {
    Ok(canonicalize(&tps_lfp(p)?))
}

/// Bit positions for a bounded set of atoms, used by the enumeration oracles.
pub(crate) struct BitIndex {
    atoms: Vec<Atom>,
}

impl BitIndex {
    pub(crate) fn new(atoms: &AtomSet, what: &'static str, bound: usize) -> Result<Self> {
        if atoms.len() > bound || atoms.len() >= 64 {
            return Err(Error::TooLarge {
                what,
                atoms: atoms.len(),
                bound,
            });
        }
        Ok(BitIndex {
            atoms: atoms.iter().collect(),
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.atoms.len()
    }

    pub(crate) fn mask(&self, set: &AtomSet) -> u64 {
        set.iter()
            .filter_map(|a| self.atoms.binary_search(&a).ok())
            .fold(0, |m, i| m | (1 << i))
    }

    pub(crate) fn set(&self, mask: u64) -> AtomSet {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| *a)
            .collect()
    }
}

/// Classical models of a positive program over `index`, as bitmasks.
pub(crate) fn classical_models(p: &Program, index: &BitIndex) -> Vec<u64> {
    let rules: Vec<(u64, u64)> = p
        .rules()
        .iter()
        .map(|r| (index.mask(r.head()), index.mask(r.pos())))
        .collect();
    (0..1u64 << index.len())
        .filter(|m| {
            rules
                .iter()
                .all(|&(head, pos)| pos & !m != 0 || head & m != 0)
        })
        .collect()
}

/// Truth-table oracle for `P |= a`, reading rules as material implications.
pub fn entails_classical(p: &Program, a: &Disjunction) -> Result<bool> {
    entails_classical_bounded(p, a, DEFAULT_ENTAILMENT_BOUND)
}

pub fn entails_classical_bounded(p: &Program, a: &Disjunction, bound: usize) -> Result<bool> {
    require_positive(p)?;
    let atoms = p.base().union(a.atoms());
    let index = BitIndex::new(&atoms, "classical entailment oracle", bound)?;
    let goal = index.mask(a.atoms());
    Ok(classical_models(p, &index)
        .into_iter()
        .all(|m| m & goal != 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_program;
    use crate::syntax::{named, Symbols};

    fn names(s: &Symbols, ds: &DisjunctionSet) -> Vec<String> {
        ds.iter().map(|d| named(s, d).to_string()).collect()
    }

    fn dis(p: &Program, atoms: &[&str]) -> Disjunction {
        Disjunction::new(
            atoms
                .iter()
                .map(|n| p.symbols().lookup(n).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn hyperresolution_step() {
        let p = parse_program("a :- b. b | c | d.").unwrap();
        let j: DisjunctionSet = [dis(&p, &["b", "c", "d"])].into_iter().collect();
        let step = tps_step(&p, &j).unwrap();
        assert_eq!(names(p.symbols(), &step), ["a | c | d", "b | c | d"]);

        let p = parse_program("g.").unwrap();
        assert_eq!(
            names(p.symbols(), &tps_step(&p, &DisjunctionSet::new()).unwrap()),
            ["g"]
        );

        let p = parse_program("a :- a.").unwrap();
        assert!(tps_step(&p, &DisjunctionSet::new()).unwrap().is_empty());
    }

    #[test]
    fn raw_and_canonical_fixpoints_differ() {
        let p = parse_program("a. a | b.").unwrap();
        assert_eq!(names(p.symbols(), &tps_lfp(&p).unwrap()), ["a", "a | b"]);
        assert_eq!(names(p.symbols(), &least_model_state(&p).unwrap()), ["a"]);
        let empty = parse_program("").unwrap();
        assert!(tps_lfp(&empty).unwrap().is_empty());
        assert!(least_model_state(&empty).unwrap().is_empty());
    }

    #[test]
    fn reduct_of_supporting_hypothesis_example() {
        // reduct of the second argumentation example under {not e, not d, not f}
        let p = parse_program("a | b :- c. c | e :- g. g.").unwrap();
        let lfp = tps_lfp(&p).unwrap();
        for d in [&["g"][..], &["c", "e"], &["a", "b", "e"]] {
            assert!(lfp.contains(&dis(&p, d)));
        }
        assert_eq!(
            names(p.symbols(), &least_model_state(&p).unwrap()),
            ["a | b | e", "c | e", "g"]
        );
    }

    #[test]
    fn least_model_state_of_reduct() {
        let p = parse_program("a :- b. b | c | d.").unwrap();
        assert_eq!(
            names(p.symbols(), &least_model_state(&p).unwrap()),
            ["a | c | d", "b | c | d"]
        );
    }

    #[test]
    fn entailment_oracle() {
        let p = parse_program("a :- b. b | c | d.").unwrap();
        assert!(entails_classical(&p, &dis(&p, &["a", "c", "d"])).unwrap());
        assert!(!entails_classical(&p, &dis(&p, &["b"])).unwrap());
        let p = parse_program("a.").unwrap();
        assert!(entails_classical(&p, &dis(&p, &["a"])).unwrap());
    }

    #[test]
    fn negative_programs_are_rejected() {
        let p = parse_program("a :- not b.").unwrap();
        assert!(matches!(tps_lfp(&p), Err(Error::NotPositive { .. })));
        assert!(matches!(
            entails_classical(&p, &dis(&p, &["a"])),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn oracle_bound() {
        let text: String = (0..5).map(|i| format!("x{i}.")).collect();
        let p = parse_program(&text).unwrap();
        let goal = dis(&p, &["x0"]);
        assert!(matches!(
            entails_classical_bounded(&p, &goal, 4),
            Err(Error::TooLarge {
                atoms: 5,
                bound: 4,
                ..
            })
        ));
    }
}
