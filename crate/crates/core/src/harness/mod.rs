//! Random programs, reference oracles and cross-checking of the semantics.

mod generate;
mod oracle;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use generate::{atom_symbols, random_facts, random_program, GeneratorConfig};
pub use oracle::{gcwa_negatives, minimal_models, normal_wfs};

use crate::error::Error;
use crate::parser::{render_program, StateJson};
use crate::syntax::{named, ModelState, Program, PureDisjunction, Rule};
use crate::{semantics_with, Limits, Semantics};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub left: Semantics,
    pub right: Semantics,
    /// Satisfied by exactly one of the two states.
    pub witness: PureDisjunction,
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub program: Program,
    pub states: BTreeMap<Semantics, Result<ModelState, Error>>,
    pub equal: bool,
    pub first_divergence: Option<Divergence>,
}

impl EquivalenceReport {
    /// The common state when every semantics was computed and all agree.
    pub fn common_state(&self) -> Option<&ModelState> {
        if !self.equal {
            return None;
        }
        let mut states = self.states.values();
        let first = states.next()?.as_ref().ok()?;
        states.all(Result::is_ok).then_some(first)
    }

    pub fn capacity_errors(&self) -> usize {
        self.states
            .values()
            .filter(|s| s.as_ref().is_err_and(Error::is_capacity))
            .count()
    }

    pub fn to_json(&self) -> ReportJson {
        let symbols = self.program.symbols();
        ReportJson {
            program: render_program(&self.program),
            equal: self.equal,
            states: self
                .states
                .iter()
                .map(|(m, s)| {
                    let entry = match s {
                        Ok(s) => StateEntry::State(StateJson::new(symbols, self.program.base(), s)),
                        Err(e) => StateEntry::Error {
                            error: e.to_string(),
                        },
                    };
                    (m.name().to_owned(), entry)
                })
                .collect(),
            first_divergence: self.first_divergence.as_ref().map(|d| DivergenceJson {
                left: d.left.name().to_owned(),
                right: d.right.name().to_owned(),
                witness: named(symbols, &d.witness).to_string(),
            }),
        }
    }

    /// Human-readable summary: the common state, or every state and the divergence.
    pub fn render(&self) -> String {
        let symbols = self.program.symbols();
        let mut out = String::new();
        for (m, s) in &self.states {
            out.push_str(&format!("[{m}]\n"));
            match s {
                Ok(s) => out.push_str(&crate::parser::render_state(symbols, s)),
                Err(e) => out.push_str(&format!("error: {e}\n")),
            }
        }
        match &self.first_divergence {
            None => out.push_str(if self.equal {
                "equal: yes\n"
            } else {
                "equal: undecided\n"
            }),
            Some(d) => out.push_str(&format!(
                "equal: no ({} and {} differ on {})\n",
                d.left,
                d.right,
                named(symbols, &d.witness)
            )),
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub program: String,
    pub equal: bool,
    pub states: BTreeMap<String, StateEntry>,
    pub first_divergence: Option<DivergenceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateEntry {
    State(StateJson),
    Error { error: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivergenceJson {
    pub left: String,
    pub right: String,
    pub witness: String,
}

/// Computes every semantics that must coincide and compares them pairwise.
///
/// Semantics that fail are recorded and left out of the comparison; `equal`
/// then requires at least two computed states.
pub fn check_equivalence(p: &Program, limits: &Limits) -> EquivalenceReport {
    let states: BTreeMap<Semantics, Result<ModelState, Error>> = Semantics::EQUIVALENT
        .iter()
        .map(|&m| (m, semantics_with(p, m, limits)))
        .collect();
    let computed: Vec<(Semantics, &ModelState)> = states
        .iter()
        .filter_map(|(m, s)| s.as_ref().ok().map(|s| (*m, s)))
        .collect();
    let first_divergence = computed.iter().enumerate().find_map(|(i, (l, ls))| {
        computed[i + 1..].iter().find_map(|(r, rs)| {
            ls.first_difference(rs).map(|witness| Divergence {
                left: *l,
                right: *r,
                witness,
            })
        })
    });
    let non_capacity_error = states
        .values()
        .any(|s| s.as_ref().is_err_and(|e| !e.is_capacity()));
    EquivalenceReport {
        program: p.clone(),
        equal: first_divergence.is_none() && !non_capacity_error && computed.len() >= 2,
        states,
        first_divergence,
    }
}

/// True when the report shows a disagreement or an unexpected failure.
pub fn is_failure(report: &EquivalenceReport) -> bool {
    report.first_divergence.is_some()
        || report
            .states
            .values()
            .any(|s| s.as_ref().is_err_and(|e| !e.is_capacity()))
}

/// Removes rules, then single body literals and head atoms, while `fails`
/// keeps holding.
pub fn shrink(p: &Program, fails: impl Fn(&Program) -> bool) -> Program {
    let mut current = p.clone();
    loop {
        let smaller = candidates(&current).find(|q| fails(q));
        match smaller {
            Some(q) => current = q,
            None => return current,
        }
    }
}

fn candidates(p: &Program) -> impl Iterator<Item = Program> + '_ {
    let rules: Vec<Rule> = p.rules().iter().cloned().collect();
    let without_rule = (0..rules.len()).map({
        let rules = rules.clone();
        move |i| {
            rules
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, r)| r.clone())
                .collect::<Vec<_>>()
        }
    });
    let weakened = rules
        .clone()
        .into_iter()
        .enumerate()
        .flat_map(move |(i, r)| {
            let rules = rules.clone();
            literal_drops(&r).into_iter().map(move |smaller| {
                let mut out = rules.clone();
                out[i] = smaller.clone();
                out
            })
        });
    // shrunken programs keep only the atoms they mention
    without_rule
        .chain(weakened)
        .map(move |rules| Program::new(p.symbols().clone(), rules))
}

fn literal_drops(r: &Rule) -> Vec<Rule> {
    let mut out = Vec::new();
    for a in r.head() {
        if let Some(smaller) = Rule::new(r.head().without(a), r.pos().clone(), r.neg().clone()) {
            out.push(smaller);
        }
    }
    for a in r.pos() {
        out.extend(Rule::new(
            r.head().clone(),
            r.pos().without(a),
            r.neg().clone(),
        ));
    }
    for a in r.neg() {
        out.push(r.with_neg(r.neg().without(a)));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub count: usize,
    pub generator: GeneratorConfig,
}

#[derive(Clone, Debug, Default)]
pub struct FuzzSummary {
    pub runs: usize,
    pub equal: usize,
    /// Programs on which some semantics hit a size limit.
    pub capacity: usize,
    /// Shrunk failing reports, in run order.
    pub failures: Vec<EquivalenceReport>,
}

/// The program of run `i`: the first two runs are the empty program and a
/// program of facts, the rest are drawn with seed `seed + i`.
pub fn fuzz_program(cfg: &FuzzConfig, i: usize) -> Program {
    let generator = cfg
        .generator
        .with_seed(cfg.generator.seed.wrapping_add(i as u64));
    match i {
        0 => Program::new(std::sync::Arc::new(atom_symbols(0)), []),
        1 => random_facts(&generator),
        _ => random_program(&generator),
    }
}

/// Runs `check_equivalence` on `cfg.count` programs in parallel; failing
/// programs are shrunk before their report is taken. Reports are in run
/// order.
pub fn fuzz_reports(cfg: &FuzzConfig, limits: &Limits) -> Vec<EquivalenceReport> {
    (0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let report = check_equivalence(&fuzz_program(cfg, i), limits);
            if is_failure(&report) {
                let small = shrink(&report.program, |q| {
                    is_failure(&check_equivalence(q, limits))
                });
                check_equivalence(&small, limits)
            } else {
                report
            }
        })
        .collect()
}

pub fn fuzz(cfg: &FuzzConfig, limits: &Limits) -> FuzzSummary {
    FuzzSummary::from_reports(fuzz_reports(cfg, limits))
}

impl FuzzSummary {
    pub fn from_reports(reports: impl IntoIterator<Item = EquivalenceReport>) -> Self {
        let mut summary = FuzzSummary::default();
        for report in reports {
            summary.runs += 1;
            if report.equal {
                summary.equal += 1;
            }
            if report.capacity_errors() > 0 {
                summary.capacity += 1;
            }
            if is_failure(&report) {
                summary.failures.push(report);
            }
        }
        summary
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_program, render_state};

    #[test]
    fn equivalence_on_paper_examples() {
        for (text, want) in [
            (
                "a | b. c :- d, not a, not b. d. e :- not e.",
                "a | b\nd\nnot c\n",
            ),
            ("b | l :- not p. l | p.", "l | p\nnot b\n"),
            ("a | b. c :- not a, not b.", "a | b\nnot c\n"),
        ] {
            let p = parse_program(text).unwrap();
            let report = check_equivalence(&p, &Limits::default());
            assert!(report.equal, "{}", report.render());
            let state = report.common_state().unwrap();
            assert_eq!(crate::parser::render_state(p.symbols(), state), want);
        }
    }

    #[test]
    fn report_json_round_trip() {
        let p = parse_program("b | l :- not p. l | p.").unwrap();
        let json = check_equivalence(&p, &Limits::default()).to_json();
        let line = serde_json::to_string(&json).unwrap();
        assert!(!line.contains('\n'));
        let back: ReportJson = serde_json::from_str(&line).unwrap();
        assert_eq!(back, json);
        let StateEntry::State(s) = &back.states["wfds"] else {
            panic!("wfds failed")
        };
        assert_eq!(s.false_atoms, ["b"]);
    }

    #[test]
    fn shrinking_keeps_the_property() {
        let p = parse_program("a | b :- c, not d. e. f :- not e. c.").unwrap();
        let has_disjunction = |q: &Program| q.rules().iter().any(|r| r.head().len() > 1);
        let small = shrink(&p, has_disjunction);
        assert_eq!(render_program(&small), "a | b.\n");
    }

    #[test]
    fn small_fuzz_run() {
        let cfg = FuzzConfig {
            count: 40,
            generator: GeneratorConfig {
                seed: 11,
                num_atoms: 4,
                num_rules: 5,
                ..Default::default()
            },
        };
        let reports = fuzz_reports(&cfg, &Limits::default());
        assert_eq!(reports.len(), 40);
        for r in &reports {
            let star = r.states[&Semantics::DwfsStar].as_ref().unwrap();
            let uwfs = r.states[&Semantics::Uwfs].as_ref().unwrap();
            assert_eq!(star, uwfs, "{}{}", render_program(&r.program), r.render());
        }
        let summary = FuzzSummary::from_reports(reports);
        assert_eq!(summary.runs, 40);
        // failures come back shrunk: no single rule can be dropped
        for f in &summary.failures {
            assert!(candidates(&f.program)
                .take(f.program.len())
                .all(|q| !is_failure(&check_equivalence(&q, &Limits::default()))));
        }
    }

    #[test]
    fn engines_part_ways_on_self_attacking_hypotheses() {
        // {not c, not d} derives c and, through the non-minimal c | d, also d
        let p = parse_program("c :- not d. c | d :- c.").unwrap();
        let report = check_equivalence(&p, &Limits::default());
        let render = |m: Semantics| render_state(p.symbols(), report.states[&m].as_ref().unwrap());
        assert_eq!(render(Semantics::Wfds), "c\nnot d\n");
        assert_eq!(render(Semantics::DwfsStar), "c\nnot d\n");
        assert_eq!(render(Semantics::WfdsRaw), "");

        // under {not b}, b subsumes a | b in the canonical set
        let p = parse_program("a | b. b :- not b.").unwrap();
        let report = check_equivalence(&p, &Limits::default());
        let render = |m: Semantics| render_state(p.symbols(), report.states[&m].as_ref().unwrap());
        assert_eq!(render(Semantics::Wfds), "b\nnot a\n");
        assert_eq!(render(Semantics::WfdsRaw), "a | b\n");
        assert_eq!(render(Semantics::DwfsStar), "a | b\n");
        assert_eq!(render(Semantics::Uwfs), "a | b\n");
    }
}
