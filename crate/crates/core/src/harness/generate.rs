use std::sync::Arc;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::syntax::{Atom, AtomSet, Program, Rule, Symbols};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub num_atoms: usize,
    pub num_rules: usize,
    pub max_head: usize,
    pub max_pos_body: usize,
    pub max_neg_body: usize,
    /// Chance that a rule has a negative body at all.
    pub neg_probability: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            num_atoms: 6,
            num_rules: 8,
            max_head: 3,
            max_pos_body: 3,
            max_neg_body: 3,
            neg_probability: 0.4,
        }
    }
}

impl GeneratorConfig {
    pub fn with_seed(&self, seed: u64) -> Self {
        GeneratorConfig {
            seed,
            ..self.clone()
        }
    }

    /// Single-atom heads.
    pub fn normal(&self) -> Self {
        GeneratorConfig {
            max_head: 1,
            ..self.clone()
        }
    }

    /// No negative bodies.
    pub fn positive(&self) -> Self {
        GeneratorConfig {
            neg_probability: 0.0,
            max_neg_body: 0,
            ..self.clone()
        }
    }
}

/// Atom names `a`, `b`, ... then `x26`, `x27`, ...
pub fn atom_symbols(n: usize) -> Symbols {
    let mut symbols = Symbols::new();
    for i in 0..n {
        let name = match u8::try_from(i) {
            Ok(i) if i < 26 => char::from(b'a' + i).to_string(),
            _ => format!("x{i}"),
        };
        symbols.intern(&name);
    }
    symbols
}

/// A program drawn from `cfg`; equal configurations give equal programs.
pub fn random_program(cfg: &GeneratorConfig) -> Program {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let symbols = atom_symbols(cfg.num_atoms);
    let atoms: Vec<Atom> = symbols.atoms().collect();
    let rules: Vec<Rule> = if atoms.is_empty() {
        Vec::new()
    } else {
        (0..cfg.num_rules)
            .map(|_| random_rule(&mut rng, cfg, &atoms))
            .collect()
    };
    Program::new(Arc::new(symbols), rules)
}

/// A program of `num_rules` random disjunctive facts.
pub fn random_facts(cfg: &GeneratorConfig) -> Program {
    random_program(&GeneratorConfig {
        max_pos_body: 0,
        max_neg_body: 0,
        neg_probability: 0.0,
        ..cfg.clone()
    })
}

fn random_rule(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig, atoms: &[Atom]) -> Rule {
    // heads of one atom are the common case, three the rare one
    let head_len = match rng.random_range(0..20) {
        0..10 => 1,
        10..17 => 2,
        _ => 3,
    }
    .min(cfg.max_head.max(1))
    .min(atoms.len());
    let pos_len = rng.random_range(0..=cfg.max_pos_body.min(atoms.len()));
    let neg_len = if cfg.max_neg_body > 0 && rng.random_bool(cfg.neg_probability) {
        rng.random_range(1..=cfg.max_neg_body.min(atoms.len()))
    } else {
        0
    };
    let head = sample(rng, atoms, head_len);
    let pos = sample(rng, atoms, pos_len);
    let neg = sample(rng, atoms, neg_len);
    Rule::new(head, pos, neg).expect("head has at least one atom")
}

fn sample(rng: &mut ChaCha8Rng, atoms: &[Atom], k: usize) -> AtomSet {
    let mut out = AtomSet::new();
    while out.len() < k {
        out.insert(atoms[rng.random_range(0..atoms.len())]);
    }
    out
}
