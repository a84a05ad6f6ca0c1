//! Parallel execution of compiled rules: acceptance, generation of surface
//! forms, and rejection tracing.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Pair, Symbol};
use crate::compile::{compile_rule, detect_conflicts, Conflict, Labels, RuleAutomaton};
use crate::error::{Error, Result};
use crate::fsa::Label;
use crate::rules::parse_rule_set;

/// An alphabet with its compiled rule set.
#[derive(Debug, Clone)]
pub struct Grammar {
    pub alphabet: Alphabet,
    pub rules: Vec<RuleAutomaton>,
    labels: Labels,
    insertions: Vec<(usize, Pair)>,
}

/// A compile-time diagnostic that does not stop compilation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub rule: String,
    pub context: usize,
}

impl Grammar {
    pub fn new(alphabet: Alphabet, rules: Vec<RuleAutomaton>) -> Self {
        let labels = Labels::new(&alphabet);
        let insertions = alphabet.pairs_for(Symbol::ZERO).collect();
        Grammar {
            alphabet,
            rules,
            labels,
            insertions,
        }
    }

    /// Parses both sources and compiles every rule.
    pub fn compile(alphabet_text: &str, rules_text: &str) -> Result<Grammar> {
        let alphabet = Alphabet::parse(alphabet_text)?;
        let set = parse_rule_set(rules_text, &alphabet)?;
        let compiled = set
            .rules
            .iter()
            .map(|r| compile_rule(r, &alphabet))
            .collect();
        Ok(Grammar::new(alphabet, compiled))
    }

    pub fn warnings(&self) -> Vec<Warning> {
        self.rules
            .iter()
            .flat_map(|r| {
                r.vacuous.iter().map(|&c| Warning {
                    rule: r.name().into(),
                    context: c,
                })
            })
            .collect()
    }

    pub fn conflicts(&self) -> Vec<Conflict> {
        detect_conflicts(&self.rules, &self.alphabet)
    }

    /// Same grammar restricted to the first `n` rules.
    pub fn with_rules(&self, rules: Vec<RuleAutomaton>) -> Grammar {
        Grammar::new(self.alphabet.clone(), rules)
    }

    fn label(&self, p: Pair) -> Result<Label> {
        self.alphabet
            .pair_id(p)
            .map(|i| i as Label)
            .ok_or_else(|| Error::InfeasiblePair {
                at: None,
                pair: self.alphabet.pair_text(p),
            })
    }

    /// True iff every rule accepts the pair string.
    pub fn accepts(&self, pairs: &[Pair]) -> Result<bool> {
        let labels: Vec<Label> = pairs
            .iter()
            .map(|&p| self.label(p))
            .collect::<Result<_>>()?;
        let b = self.labels.boundary();
        Ok(self.rules.iter().all(|r| {
            let s = labels
                .iter()
                .fold(r.step(r.start(), b), |s, &l| r.step(s, l));
            r.is_accepting(r.step(s, b))
        }))
    }

    /// All surface words for a lexical symbol string.
    pub fn generate(&self, lexical: &[Symbol]) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.search(lexical, &mut |pairs| {
            let surface: Vec<Symbol> = pairs.iter().map(|p| p.surface).collect();
            out.insert(self.alphabet.render(&surface));
        });
        out
    }

    /// Accepted pair strings for a lexical symbol string.
    pub fn generate_pairs(&self, lexical: &[Symbol]) -> Vec<Vec<Pair>> {
        let mut out = Vec::new();
        self.search(lexical, &mut |pairs| out.push(pairs.to_vec()));
        out
    }

    /// Tokenizes and generates.
    pub fn generate_surface(&self, lexical: &str) -> Result<BTreeSet<String>> {
        let symbols = self.alphabet.tokenize(lexical)?;
        Ok(self.generate(&symbols))
    }

    fn start_states(&self) -> Vec<u32> {
        let b = self.labels.boundary();
        self.rules.iter().map(|r| r.step(r.start(), b)).collect()
    }

    fn search(&self, lexical: &[Symbol], emit: &mut dyn FnMut(&[Pair])) {
        let mut path = Vec::with_capacity(lexical.len() * 2);
        let states = self.start_states();
        if states.iter().zip(&self.rules).all(|(&s, r)| r.is_live(s)) {
            self.dfs(lexical, 0, false, &states, &mut path, emit);
        }
    }

    fn advance(&self, states: &[u32], label: Label) -> Option<Vec<u32>> {
        let mut next = Vec::with_capacity(states.len());
        for (r, &s) in self.rules.iter().zip(states) {
            let t = r.step(s, label);
            if !r.is_live(t) {
                return None;
            }
            next.push(t);
        }
        Some(next)
    }

    fn dfs(
        &self,
        lexical: &[Symbol],
        pos: usize,
        inserted: bool,
        states: &[u32],
        path: &mut Vec<Pair>,
        emit: &mut dyn FnMut(&[Pair]),
    ) {
        if !inserted {
            for &(id, pair) in &self.insertions {
                if let Some(next) = self.advance(states, id as Label) {
                    path.push(pair);
                    self.dfs(lexical, pos, true, &next, path, emit);
                    path.pop();
                }
            }
        }
        if pos == lexical.len() {
            let b = self.labels.boundary();
            if self
                .rules
                .iter()
                .zip(states)
                .all(|(r, &s)| r.is_accepting(r.step(s, b)))
            {
                emit(path);
            }
            return;
        }
        for (id, pair) in self.alphabet.pairs_for(lexical[pos]) {
            if let Some(next) = self.advance(states, id as Label) {
                path.push(pair);
                self.dfs(lexical, pos + 1, false, &next, path, emit);
                path.pop();
            }
        }
    }

    /// Explains why candidate pair strings fail. With `surface` set only
    /// candidates realizing that surface are examined (one insertion per
    /// gap at most); otherwise candidates without insertions are listed
    /// together with every accepted pair string, up to `limit`.
    pub fn trace(&self, lexical: &[Symbol], surface: Option<&str>, limit: usize) -> Trace {
        let target: Option<Vec<char>> = surface.map(|s| {
            crate::alphabet::normalize(s)
                .chars()
                .flat_map(char::to_lowercase)
                .collect()
        });
        let mut candidates: Vec<Vec<Pair>> = Vec::new();
        let mut truncated = false;
        let mut path = Vec::new();
        self.enumerate(
            lexical,
            0,
            false,
            target.as_deref(),
            0,
            &mut path,
            &mut candidates,
            limit,
            &mut truncated,
        );
        if target.is_none() {
            for accepted in self.generate_pairs(lexical) {
                if !candidates.contains(&accepted) {
                    candidates.push(accepted);
                }
            }
        }
        let mut items = Vec::new();
        for pairs in candidates {
            let verdict = self.first_rejection(&pairs);
            let surface_ids: Vec<Symbol> = pairs.iter().map(|p| p.surface).collect();
            items.push(TraceItem {
                surface: self.alphabet.render(&surface_ids),
                pairs,
                verdict,
            });
        }
        Trace { items, truncated }
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        lexical: &[Symbol],
        pos: usize,
        inserted: bool,
        target: Option<&[char]>,
        matched: usize,
        path: &mut Vec<Pair>,
        out: &mut Vec<Vec<Pair>>,
        limit: usize,
        truncated: &mut bool,
    ) {
        if out.len() >= limit {
            *truncated = true;
            return;
        }
        // advance over the surface text a pair contributes
        let consume = |pair: Pair| -> Option<usize> {
            let Some(t) = target else {
                return Some(matched);
            };
            if pair.surface.is_zero() {
                return Some(matched);
            }
            let text: Vec<char> = self.alphabet.text(pair.surface).chars().collect();
            (t.len() >= matched + text.len() && t[matched..matched + text.len()] == text[..])
                .then_some(matched + text.len())
        };
        if !inserted && target.is_some() {
            for &(_, pair) in &self.insertions {
                if let Some(m) = consume(pair) {
                    path.push(pair);
                    self.enumerate(lexical, pos, true, target, m, path, out, limit, truncated);
                    path.pop();
                }
            }
        }
        if pos == lexical.len() {
            if target.is_none_or(|t| matched == t.len()) {
                out.push(path.clone());
            }
            return;
        }
        for (_, pair) in self.alphabet.pairs_for(lexical[pos]) {
            if let Some(m) = consume(pair) {
                path.push(pair);
                self.enumerate(
                    lexical,
                    pos + 1,
                    false,
                    target,
                    m,
                    path,
                    out,
                    limit,
                    truncated,
                );
                path.pop();
            }
        }
    }

    /// The rule that rejects `pairs` at the smallest position (ties go to
    /// rule order), or `None` when every rule accepts.
    pub fn first_rejection(&self, pairs: &[Pair]) -> Option<Rejection> {
        let labels: Vec<Label> = pairs
            .iter()
            .map(|&p| self.label(p).expect("feasible"))
            .collect();
        let b = self.labels.boundary();
        let mut best: Option<Rejection> = None;
        for (ri, r) in self.rules.iter().enumerate() {
            let s = labels
                .iter()
                .fold(r.step(r.start(), b), |s, &l| r.step(s, l));
            if r.is_accepting(r.step(s, b)) {
                continue;
            }
            let position = (0..=labels.len())
                .find(|&i| {
                    let marked = core::iter::once(b)
                        .chain(labels[..i].iter().copied())
                        .chain(core::iter::once(self.labels.diamond()))
                        .chain(labels[i..].iter().copied())
                        .chain(core::iter::once(b));
                    r.violations.accepts(marked)
                })
                .unwrap_or(labels.len());
            if best.as_ref().is_none_or(|x| position < x.position) {
                best = Some(Rejection {
                    rule: ri,
                    rule_name: r.name().into(),
                    position,
                });
            }
        }
        best
    }

    pub fn render_pairs(&self, pairs: &[Pair]) -> String {
        let parts: Vec<String> = pairs.iter().map(|&p| self.alphabet.pair_text(p)).collect();
        parts.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub rule: usize,
    pub rule_name: String,
    /// Index into the pair string; equal to its length for the final gap.
    pub position: usize,
}

#[derive(Debug, Clone)]
pub struct TraceItem {
    pub surface: String,
    pub pairs: Vec<Pair>,
    pub verdict: Option<Rejection>,
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub items: Vec<TraceItem>,
    pub truncated: bool,
}
