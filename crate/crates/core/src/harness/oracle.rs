//! Reference implementations sharing nothing with the semantics but the
//! core types.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fixpoint::{classical_models, require_positive, BitIndex};
use crate::parser::render_rule;
use crate::syntax::{AtomSet, Disjunction, ModelState, Program, Rule};

/// Subset-minimal classical models of a positive program.
pub fn minimal_models(p: &Program, bound: usize) -> Result<BTreeSet<AtomSet>> {
    require_positive(p)?;
    let index = BitIndex::new(p.base(), "minimal model oracle", bound)?;
    let mut models = classical_models(p, &index);
    models.sort_by_key(|m| m.count_ones());
    let mut minimal: Vec<u64> = Vec::new();
    for m in models {
        if minimal.iter().all(|&n| n & !m != 0) {
            minimal.push(m);
        }
    }
    Ok(minimal.into_iter().map(|m| index.set(m)).collect())
}

/// Atoms false in every minimal model.
pub fn gcwa_negatives(p: &Program, bound: usize) -> Result<AtomSet> {
    let occurring: AtomSet = minimal_models(p, bound)?
        .iter()
        .flat_map(|m| m.iter())
        .collect();
    Ok(p.base().difference(&occurring))
}

/// The well-founded model of a normal program by the alternating fixpoint.
pub fn normal_wfs(p: &Program) -> Result<ModelState> {
    if let Some(r) = p.rules().iter().find(|r| r.head().len() != 1) {
        return Err(Error::NotNormal {
            rule: render_rule(p.symbols(), r),
        });
    }
    let gamma = |assumed: &AtomSet| -> AtomSet {
        let rules: Vec<&Rule> = p
            .rules()
            .iter()
            .filter(|r| r.neg().is_disjoint(assumed))
            .collect();
        let mut model = AtomSet::new();
        loop {
            let before = model.len();
            for r in &rules {
                if r.pos().is_subset(&model) {
                    model.extend(r.head().iter());
                }
            }
            if model.len() == before {
                return model;
            }
        }
    };
    let mut truths = AtomSet::new();
    loop {
        let next = gamma(&gamma(&truths));
        if next == truths {
            break;
        }
        truths = next;
    }
    let possible = gamma(&truths);
    let pos: Vec<Disjunction> = truths.iter().map(Disjunction::unit).collect();
    Ok(ModelState::from_parts(&pos, p.base().difference(&possible)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_program, render_state};

    fn sets(p: &Program, models: &BTreeSet<AtomSet>) -> Vec<String> {
        models
            .iter()
            .map(|m| crate::syntax::named(p.symbols(), m).to_string())
            .collect()
    }

    #[test]
    fn minimal_model_examples() {
        let p = parse_program("a | b.").unwrap();
        assert_eq!(sets(&p, &minimal_models(&p, 14).unwrap()), ["{a}", "{b}"]);
        let p = parse_program("a :- b. b | c | d.").unwrap();
        let mut got = sets(&p, &minimal_models(&p, 14).unwrap());
        got.sort();
        assert_eq!(got, ["{a, b}", "{c}", "{d}"]);
        let p = parse_program("").unwrap();
        assert_eq!(sets(&p, &minimal_models(&p, 14).unwrap()), ["{}"]);
    }

    #[test]
    fn gcwa_examples() {
        let p = parse_program("a | b.").unwrap();
        assert!(gcwa_negatives(&p, 14).unwrap().is_empty());
        let q = parse_program("a. b :- b.").unwrap();
        let b = q.symbols().lookup("b").unwrap();
        assert_eq!(gcwa_negatives(&q, 14).unwrap(), AtomSet::singleton(b));
        let p = parse_program("p | p1 | p2. p1 | p2. p3 | p4. q. w | q :- w.").unwrap();
        let got = crate::syntax::named(p.symbols(), &gcwa_negatives(&p, 14).unwrap()).to_string();
        assert_eq!(got, "{p, w}");
    }

    #[test]
    fn normal_wfs_examples() {
        let p = parse_program("a :- not b. c :- not c.").unwrap();
        assert_eq!(
            render_state(p.symbols(), &normal_wfs(&p).unwrap()),
            "a\nnot b\n"
        );
        let p = parse_program("c :- not d. d :- not c.").unwrap();
        assert!(normal_wfs(&p).unwrap().is_empty());
        let p = parse_program("a. b :- not a. c :- c.").unwrap();
        assert_eq!(
            render_state(p.symbols(), &normal_wfs(&p).unwrap()),
            "a\nnot b\nnot c\n"
        );
        let p = parse_program("a | b.").unwrap();
        assert!(matches!(normal_wfs(&p), Err(Error::NotNormal { .. })));
    }
}
