//! Atoms, rules, programs and model states.
//!
//! Every set in this module is kept sorted by atom id, which is the order in
//! which atoms were first seen in the source text. All iteration, rendering
//! and tie-breaking follows that order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

/// An interned propositional atom. The id indexes into [`Symbols`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(u32);

impl Atom {
    pub fn new(id: u32) -> Self {
        Atom(id)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Bijective mapping between atom names and dense ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Symbols {
    names: Vec<String>,
    index: HashMap<String, Atom>,
}

impl Symbols {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the atom for `name`, allocating the next id on first sight.
    pub fn intern(&mut self, name: &str) -> Atom {
        if let Some(&atom) = self.index.get(name) {
            return atom;
        }
        let atom = Atom(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), atom);
        atom
    }

    pub fn lookup(&self, name: &str) -> Option<Atom> {
        self.index.get(name).copied()
    }

    pub fn name(&self, atom: Atom) -> &str {
        &self.names[atom.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        (0..self.names.len() as u32).map(Atom)
    }
}

/// A duplicate-free set of atoms, stored as a sorted vector.
///
/// The sets handled here are small (a rule head, a body, a disjunction), so a
/// sorted vector with merge-based set operations beats a tree.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet(Vec<Atom>);

impl AtomSet {
    pub fn new() -> Self {
        AtomSet(Vec::new())
    }

    pub fn singleton(atom: Atom) -> Self {
        AtomSet(vec![atom])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Atom> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Atom] {
        &self.0
    }

    pub fn contains(&self, atom: Atom) -> bool {
        self.0.binary_search(&atom).is_ok()
    }

    pub fn insert(&mut self, atom: Atom) -> bool {
        match self.0.binary_search(&atom) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, atom);
                true
            }
        }
    }

    pub fn remove(&mut self, atom: Atom) -> bool {
        match self.0.binary_search(&atom) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut theirs = other.0.iter();
        'outer: for a in &self.0 {
            for b in theirs.by_ref() {
                if a == b {
                    continue 'outer;
                }
                if b > a {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &AtomSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        AtomSet(out)
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        AtomSet(
            self.0
                .iter()
                .copied()
                .filter(|a| other.contains(*a))
                .collect(),
        )
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        AtomSet(
            self.0
                .iter()
                .copied()
                .filter(|a| !other.contains(*a))
                .collect(),
        )
    }

    pub fn without(&self, atom: Atom) -> AtomSet {
        AtomSet(self.0.iter().copied().filter(|a| *a != atom).collect())
    }

    pub fn with(&self, atom: Atom) -> AtomSet {
        let mut out = self.clone();
        out.insert(atom);
        out
    }
}

impl FromIterator<Atom> for AtomSet {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        let mut atoms: Vec<Atom> = iter.into_iter().collect();
        atoms.sort_unstable();
        atoms.dedup();
        AtomSet(atoms)
    }
}

impl<'a> IntoIterator for &'a AtomSet {
    type Item = Atom;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Atom>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl Extend<Atom> for AtomSet {
    fn extend<I: IntoIterator<Item = Atom>>(&mut self, iter: I) {
        self.0.extend(iter);
        self.0.sort_unstable();
        self.0.dedup();
    }
}

/// A nonempty positive disjunction `a1 | ... | an`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Disjunction(AtomSet);

impl Disjunction {
    /// Returns `None` for the empty set; empty disjunctions never exist.
    pub fn new(atoms: AtomSet) -> Option<Self> {
        (!atoms.is_empty()).then_some(Disjunction(atoms))
    }

    pub fn unit(atom: Atom) -> Self {
        Disjunction(AtomSet::singleton(atom))
    }

    pub fn atoms(&self) -> &AtomSet {
        &self.0
    }

    pub fn into_atoms(self) -> AtomSet {
        self.0
    }

    // never empty, so no `is_empty`
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.len() == 1
    }

    /// The single atom of a unit disjunction.
    pub fn as_unit(&self) -> Option<Atom> {
        self.is_unit().then(|| self.0.as_slice()[0])
    }

    pub fn contains(&self, atom: Atom) -> bool {
        self.0.contains(atom)
    }
}

pub type DisjunctionSet = BTreeSet<Disjunction>;

/// True iff `a` is a sub-disjunction of `b`.
pub fn subsumes(a: &Disjunction, b: &Disjunction) -> bool {
    a.atoms().is_subset(b.atoms())
}

/// Keeps the members of `ds` that have no strict sub-disjunction in `ds`.
pub fn canonicalize<'a, I>(ds: I) -> DisjunctionSet
where
    I: IntoIterator<Item = &'a Disjunction>,
{
    let mut sorted: Vec<&Disjunction> = ds.into_iter().collect();
    sorted.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sorted.dedup();
    let mut kept: Vec<&Disjunction> = Vec::new();
    for d in sorted {
        if !kept.iter().any(|k| subsumes(k, d)) {
            kept.push(d);
        }
    }
    kept.into_iter().cloned().collect()
}

/// A pure disjunction: all positive or all default-negated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PureDisjunction {
    Positive(Disjunction),
    /// `not a1 | ... | not an`; nonempty.
    Negative(Disjunction),
}

/// A rule `head :- pos, not neg.`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    head: AtomSet,
    pos: AtomSet,
    neg: AtomSet,
}

impl Rule {
    /// Returns `None` when the head is empty.
    pub fn new(head: AtomSet, pos: AtomSet, neg: AtomSet) -> Option<Self> {
        (!head.is_empty()).then_some(Rule { head, pos, neg })
    }

    pub fn fact(head: AtomSet) -> Option<Self> {
        Self::new(head, AtomSet::new(), AtomSet::new())
    }

    pub fn head(&self) -> &AtomSet {
        &self.head
    }

    pub fn pos(&self) -> &AtomSet {
        &self.pos
    }

    pub fn neg(&self) -> &AtomSet {
        &self.neg
    }

    pub fn is_positive(&self) -> bool {
        self.neg.is_empty()
    }

    /// A conditional fact: no positive body atoms.
    pub fn is_negative(&self) -> bool {
        self.pos.is_empty()
    }

    pub fn is_fact(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn head_disjunction(&self) -> Disjunction {
        Disjunction(self.head.clone())
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.head
            .iter()
            .chain(self.pos.iter())
            .chain(self.neg.iter())
    }

    pub fn literal_count(&self) -> usize {
        self.head.len() + self.pos.len() + self.neg.len()
    }

    pub(crate) fn with_neg(&self, neg: AtomSet) -> Rule {
        Rule {
            head: self.head.clone(),
            pos: self.pos.clone(),
            neg,
        }
    }
}

/// A finite set of rules over a shared symbol table.
///
/// `base` records every atom the program is about. Transformations may drop
/// all occurrences of an atom from the rules; the atom stays in the base and
/// is then false under every semantics.
#[derive(Clone, Debug)]
pub struct Program {
    symbols: Arc<Symbols>,
    rules: BTreeSet<Rule>,
    base: AtomSet,
}

impl Program {
    /// Builds a program whose base is exactly the atoms occurring in `rules`.
    pub fn new(symbols: Arc<Symbols>, rules: impl IntoIterator<Item = Rule>) -> Self {
        let rules: BTreeSet<Rule> = rules.into_iter().collect();
        let base = rules.iter().flat_map(Rule::atoms).collect();
        Program {
            symbols,
            rules,
            base,
        }
    }

    /// Builds a program over an explicit base, extended by the atoms of `rules`.
    pub fn with_base(
        symbols: Arc<Symbols>,
        base: AtomSet,
        rules: impl IntoIterator<Item = Rule>,
    ) -> Self {
        let mut program = Program::new(symbols, rules);
        program.base = program.base.union(&base);
        program
    }

    /// A program over the same symbols and base with different rules.
    pub fn derive(&self, rules: impl IntoIterator<Item = Rule>) -> Program {
        Program::with_base(self.symbols.clone(), self.base.clone(), rules)
    }

    pub fn symbols(&self) -> &Arc<Symbols> {
        &self.symbols
    }

    pub fn rules(&self) -> &BTreeSet<Rule> {
        &self.rules
    }

    pub fn base(&self) -> &AtomSet {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn name(&self, atom: Atom) -> &str {
        self.symbols.name(atom)
    }

    /// All atoms occurring in some rule head.
    pub fn head_atoms(&self) -> AtomSet {
        self.rules.iter().flat_map(|r| r.head().iter()).collect()
    }

    pub fn is_positive(&self) -> bool {
        self.rules.iter().all(Rule::is_positive)
    }

    pub fn is_normal(&self) -> bool {
        self.rules.iter().all(|r| r.head().len() == 1)
    }

    pub fn is_negative(&self) -> bool {
        self.rules.iter().all(Rule::is_negative)
    }

    fn named(&self) -> (BTreeSet<[Vec<&str>; 3]>, BTreeSet<&str>) {
        let names = |s: &AtomSet| -> Vec<&str> {
            let mut v: Vec<&str> = s.iter().map(|a| self.name(a)).collect();
            v.sort_unstable();
            v
        };
        let rules = self
            .rules
            .iter()
            .map(|r| [names(r.head()), names(r.pos()), names(r.neg())])
            .collect();
        let base = self.base.iter().map(|a| self.name(a)).collect();
        (rules, base)
    }
}

/// Programs are equal when they have the same rules and base by atom name,
/// so a program re-parsed from its rendering compares equal even if the
/// atom ids were assigned in a different order.
impl PartialEq for Program {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.symbols, &other.symbols) || self.symbols == other.symbols {
            self.rules == other.rules && self.base == other.base
        } else {
            self.named() == other.named()
        }
    }
}

impl Eq for Program {}

/// A hypothesis: literal assumptions `not a` and disjunctive assumptions
/// `not a1 | ... | not am` with m >= 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hypothesis {
    literals: AtomSet,
    disjunctive: BTreeSet<AtomSet>,
}

impl Hypothesis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_literals(literals: AtomSet) -> Self {
        Hypothesis {
            literals,
            disjunctive: BTreeSet::new(),
        }
    }

    /// Adds an assumption; a one-atom assumption becomes a literal one.
    pub fn assume(&mut self, atoms: AtomSet) {
        match atoms.len() {
            0 => {}
            1 => {
                self.literals.insert(atoms.as_slice()[0]);
            }
            _ => {
                self.disjunctive.insert(atoms);
            }
        }
    }

    pub fn literals(&self) -> &AtomSet {
        &self.literals
    }

    pub fn disjunctive(&self) -> &BTreeSet<AtomSet> {
        &self.disjunctive
    }

    pub fn literal_part(&self) -> Hypothesis {
        Hypothesis::from_literals(self.literals.clone())
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty() && self.disjunctive.is_empty()
    }

    /// Every assumption as its atom set, literal ones first.
    pub fn assumptions(&self) -> impl Iterator<Item = AtomSet> + '_ {
        self.literals
            .iter()
            .map(AtomSet::singleton)
            .chain(self.disjunctive.iter().cloned())
    }

    pub fn is_subset(&self, other: &Hypothesis) -> bool {
        self.literals.is_subset(&other.literals) && self.disjunctive.is_subset(&other.disjunctive)
    }
}

/// Three-valued status of a rule body in a model state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Undefined,
}

/// The canonical core of a model state: minimal positive disjunctions and
/// false atoms. The full state, closed under super-disjunctions, is
/// described by [`ModelState::satisfies`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModelState {
    pos: DisjunctionSet,
    false_atoms: AtomSet,
}

impl ModelState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Canonicalizes `pos`.
    pub fn from_parts<'a>(
        pos: impl IntoIterator<Item = &'a Disjunction>,
        false_atoms: AtomSet,
    ) -> Self {
        ModelState {
            pos: canonicalize(pos),
            false_atoms,
        }
    }

    pub fn pos(&self) -> &DisjunctionSet {
        &self.pos
    }

    pub fn false_atoms(&self) -> &AtomSet {
        &self.false_atoms
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty() && self.false_atoms.is_empty()
    }

    pub fn is_false(&self, atom: Atom) -> bool {
        self.false_atoms.contains(atom)
    }

    /// Atoms occurring as unit disjunctions.
    pub fn true_atoms(&self) -> AtomSet {
        self.pos.iter().filter_map(Disjunction::as_unit).collect()
    }

    pub fn is_true(&self, atom: Atom) -> bool {
        self.pos.contains(&Disjunction::unit(atom))
    }

    /// True iff some member of the positive core is a sub-disjunction of `d`.
    pub fn satisfies_positive(&self, d: &AtomSet) -> bool {
        self.pos.iter().any(|m| m.atoms().is_subset(d))
    }

    pub fn satisfies(&self, d: &PureDisjunction) -> bool {
        match d {
            PureDisjunction::Positive(d) => self.satisfies_positive(d.atoms()),
            PureDisjunction::Negative(d) => !d.atoms().is_disjoint(&self.false_atoms),
        }
    }

    /// A state is inconsistent when a positive disjunction has all its atoms
    /// false, or a false atom is also true.
    pub fn is_consistent(&self) -> bool {
        self.pos
            .iter()
            .all(|d| !d.atoms().is_subset(&self.false_atoms))
            && self.false_atoms.iter().all(|a| !self.is_true(a))
    }

    /// Three-valued status of the body of `rule`.
    pub fn body_status(&self, rule: &Rule) -> Truth {
        let falsified = rule.pos().iter().any(|b| self.is_false(b))
            || rule.neg().iter().any(|c| self.is_true(c))
            || self.pos.iter().any(|d| d.atoms().is_subset(rule.neg()));
        if falsified {
            return Truth::False;
        }
        let verified = rule.pos().iter().all(|b| self.is_true(b))
            && rule.neg().iter().all(|c| self.is_false(c));
        if verified {
            Truth::True
        } else {
            Truth::Undefined
        }
    }

    /// Pointwise inclusion of the closed states.
    pub fn is_weaker_than(&self, other: &ModelState) -> bool {
        self.false_atoms.is_subset(&other.false_atoms)
            && self.pos.iter().all(|d| other.satisfies_positive(d.atoms()))
    }

    /// A pure disjunction satisfied by exactly one of the two states, if any.
    ///
    /// Both states are canonical, so a difference in the closures always
    /// shows up on a member of one core.
    pub fn first_difference(&self, other: &ModelState) -> Option<PureDisjunction> {
        let one_sided = |a: &ModelState, b: &ModelState| {
            a.pos
                .iter()
                .find(|d| !b.satisfies_positive(d.atoms()))
                .map(|d| PureDisjunction::Positive(d.clone()))
                .or_else(|| {
                    a.false_atoms
                        .iter()
                        .find(|x| !b.is_false(*x))
                        .map(|x| PureDisjunction::Negative(Disjunction::unit(x)))
                })
        };
        one_sided(self, other).or_else(|| one_sided(other, self))
    }
}

/// Display adaptor resolving atom ids through a symbol table.
pub struct Named<'a, T: ?Sized> {
    pub(crate) symbols: &'a Symbols,
    pub(crate) value: &'a T,
}

pub fn named<'a, T: ?Sized>(symbols: &'a Symbols, value: &'a T) -> Named<'a, T> {
    Named { symbols, value }
}

fn write_atoms(
    f: &mut fmt::Formatter<'_>,
    symbols: &Symbols,
    atoms: &AtomSet,
    sep: &str,
) -> fmt::Result {
    for (i, a) in atoms.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        f.write_str(symbols.name(a))?;
    }
    Ok(())
}

impl fmt::Display for Named<'_, Rule> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rule = self.value;
        write_atoms(f, self.symbols, rule.head(), " | ")?;
        if !rule.pos().is_empty() || !rule.neg().is_empty() {
            f.write_str(" :- ")?;
            let pos = rule.pos().iter().map(|a| (false, a));
            let neg = rule.neg().iter().map(|a| (true, a));
            for (i, (negated, a)) in pos.chain(neg).enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                if negated {
                    f.write_str("not ")?;
                }
                f.write_str(self.symbols.name(a))?;
            }
        }
        f.write_str(".")
    }
}

impl fmt::Display for Named<'_, Disjunction> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_atoms(f, self.symbols, self.value.atoms(), " | ")
    }
}

impl fmt::Display for Named<'_, AtomSet> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        write_atoms(f, self.symbols, self.value, ", ")?;
        f.write_str("}")
    }
}

impl fmt::Display for Named<'_, PureDisjunction> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            PureDisjunction::Positive(d) => write!(f, "{}", named(self.symbols, d)),
            PureDisjunction::Negative(d) => {
                for (i, a) in d.atoms().iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    write!(f, "not {}", self.symbols.name(a))?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{}", named(&self.symbols, rule))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[u32]) -> AtomSet {
        ids.iter().map(|&i| Atom(i)).collect()
    }

    fn dis(ids: &[u32]) -> Disjunction {
        Disjunction::new(set(ids)).unwrap()
    }

    fn rule(head: &[u32], pos: &[u32], neg: &[u32]) -> Rule {
        Rule::new(set(head), set(pos), set(neg)).unwrap()
    }

    #[test]
    fn atom_set_operations() {
        let a = set(&[3, 1, 2, 1]);
        assert_eq!(a.as_slice(), &[Atom(1), Atom(2), Atom(3)]);
        assert!(set(&[1, 3]).is_subset(&a));
        assert!(!set(&[0, 1]).is_subset(&a));
        assert!(set(&[]).is_subset(&a));
        assert!(set(&[0, 4]).is_disjoint(&a));
        assert_eq!(a.union(&set(&[0, 3])), set(&[0, 1, 2, 3]));
        assert_eq!(a.difference(&set(&[2])), set(&[1, 3]));
        assert_eq!(a.intersection(&set(&[2, 5])), set(&[2]));
    }

    #[test]
    fn subsumption() {
        // l | p vs itself, a vs a | b | c, a | b vs a
        assert!(subsumes(&dis(&[0, 1]), &dis(&[0, 1])));
        assert!(subsumes(&dis(&[0]), &dis(&[0, 1, 2])));
        assert!(!subsumes(&dis(&[0, 1]), &dis(&[0])));
    }

    #[test]
    fn canonical_form() {
        let ds = [dis(&[0]), dis(&[0, 1])];
        assert_eq!(canonicalize(&ds), [dis(&[0])].into_iter().collect());
        assert!(canonicalize(&[]).is_empty());
        let ds = [dis(&[0, 1]), dis(&[1, 0])];
        assert_eq!(canonicalize(&ds).len(), 1);
    }

    #[test]
    fn satisfaction_uses_closure() {
        // S = {a, b | c} satisfies a | b | c
        let s = ModelState::from_parts(&[dis(&[0]), dis(&[1, 2])], AtomSet::new());
        assert!(s.satisfies(&PureDisjunction::Positive(dis(&[0, 1, 2]))));
        let s = ModelState::from_parts(&[], set(&[2]));
        assert!(s.satisfies(&PureDisjunction::Negative(dis(&[2, 5]))));
        assert!(!ModelState::new().satisfies(&PureDisjunction::Positive(dis(&[0]))));
    }

    #[test]
    fn consistency() {
        let s = ModelState::from_parts(&[dis(&[0, 1])], set(&[0, 1]));
        assert!(!s.is_consistent());
        // {a | b, d, not c}
        let s = ModelState::from_parts(&[dis(&[0, 1]), dis(&[3])], set(&[2]));
        assert!(s.is_consistent());
        assert!(ModelState::new().is_consistent());
        let s = ModelState::from_parts(&[dis(&[0])], set(&[0]));
        assert!(!s.is_consistent());
    }

    #[test]
    fn body_status_cases() {
        // S = {a | b}, c :- not a, not b.
        let s = ModelState::from_parts(&[dis(&[0, 1])], AtomSet::new());
        assert_eq!(s.body_status(&rule(&[2], &[], &[0, 1])), Truth::False);
        assert_eq!(s.body_status(&rule(&[2], &[], &[])), Truth::True);
        assert_eq!(
            ModelState::new().body_status(&rule(&[2], &[], &[3])),
            Truth::Undefined
        );
        let s = ModelState::from_parts(&[dis(&[0])], set(&[1]));
        assert_eq!(s.body_status(&rule(&[2], &[0], &[1])), Truth::True);
        assert_eq!(s.body_status(&rule(&[2], &[1], &[])), Truth::False);
        assert_eq!(s.body_status(&rule(&[2], &[], &[0])), Truth::False);
    }

    #[test]
    fn rules_need_a_head() {
        assert!(Rule::new(set(&[]), set(&[0]), set(&[])).is_none());
        assert!(Disjunction::new(AtomSet::new()).is_none());
    }

    #[test]
    fn program_equality_is_by_name() {
        let mut s1 = Symbols::new();
        let (a1, b1) = (s1.intern("a"), s1.intern("b"));
        let mut s2 = Symbols::new();
        let (b2, a2) = (s2.intern("b"), s2.intern("a"));
        let p1 = Program::new(
            Arc::new(s1),
            [Rule::new(
                [a1].into_iter().collect(),
                [b1].into_iter().collect(),
                AtomSet::new(),
            )
            .unwrap()],
        );
        let p2 = Program::new(
            Arc::new(s2),
            [Rule::new(
                [a2].into_iter().collect(),
                [b2].into_iter().collect(),
                AtomSet::new(),
            )
            .unwrap()],
        );
        assert_eq!(p1, p2);
    }

    /// All model states over `n` atoms whose positive core uses disjunctions
    /// of the given atoms, bounded for exhaustive checks.
    fn small_states(n: u32) -> Vec<ModelState> {
        let atoms: Vec<u32> = (0..n).collect();
        let subsets: Vec<AtomSet> = (1u32..(1 << n))
            .map(|m| {
                atoms
                    .iter()
                    .copied()
                    .filter(|i| m & (1 << i) != 0)
                    .map(Atom)
                    .collect()
            })
            .collect();
        let mut states = Vec::new();
        // cores built from up to two disjunctions, all false-atom sets
        for f in 0u32..(1 << n) {
            let false_atoms: AtomSet = atoms
                .iter()
                .copied()
                .filter(|i| f & (1 << i) != 0)
                .map(Atom)
                .collect();
            states.push(ModelState::from_parts(&[], false_atoms.clone()));
            for (i, x) in subsets.iter().enumerate() {
                let dx = Disjunction::new(x.clone()).unwrap();
                states.push(ModelState::from_parts([&dx], false_atoms.clone()));
                for y in &subsets[i + 1..] {
                    let dy = Disjunction::new(y.clone()).unwrap();
                    states.push(ModelState::from_parts([&dx, &dy], false_atoms.clone()));
                }
            }
        }
        states
    }

    fn small_rules(n: u32) -> Vec<Rule> {
        let mut rules = Vec::new();
        for pos in 0u32..(1 << n) {
            for neg in 0u32..(1 << n) {
                let to_set = |m: u32| {
                    (0..n)
                        .filter(|i| m & (1 << i) != 0)
                        .map(Atom)
                        .collect::<AtomSet>()
                };
                rules.push(
                    Rule::new(AtomSet::singleton(Atom(0)), to_set(pos), to_set(neg)).unwrap(),
                );
            }
        }
        rules
    }

    #[test]
    fn body_status_exclusive_on_consistent_states() {
        // Exhaustive over 3 atoms: a body judged true must not be falsifiable.
        let states = small_states(3);
        let rules = small_rules(3);
        for s in states.iter().filter(|s| s.is_consistent()) {
            for r in &rules {
                let falsified = r.pos().iter().any(|b| s.is_false(b))
                    || r.neg().iter().any(|c| s.is_true(c))
                    || s.pos().iter().any(|d| d.atoms().is_subset(r.neg()));
                let verified =
                    r.pos().iter().all(|b| s.is_true(b)) && r.neg().iter().all(|c| s.is_false(c));
                assert!(!(falsified && verified), "{s:?} {r:?}");
            }
        }
    }

    #[test]
    fn canonical_form_is_idempotent_antichain() {
        for s in small_states(3) {
            let again = canonicalize(s.pos());
            assert_eq!(&again, s.pos());
            for a in s.pos() {
                for b in s.pos() {
                    assert!(a == b || !subsumes(a, b));
                }
            }
        }
    }
}
