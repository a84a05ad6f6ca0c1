//! Rule compilation to automata and coercion-conflict detection.
//!
//! Labels are feasible-pair ids, then the word boundary `#`, then a
//! diamond used only during compilation to mark the position a context
//! talks about. For a rule with center `c`, every context `L _ R` becomes
//! the marked language `Σ* L ◇ Σ R Σ*`; the rule's violations are marked
//! strings (restriction: a marked `c` outside every context; coercion: a
//! marked same-lexical pair other than `c` inside some context), and the
//! rule automaton is the complement of their projection with `◇` erased.
//! Coercion of an epenthesis center `0:x` marks the gap instead of a pair.

use alloc::string::String;
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Pair, Symbol};
use crate::fsa::{Dfa, Frag, Label, Nfa};
use crate::rules::{ContextRegex, Operator, TwoLevelRule};

/// Label layout shared by every automaton compiled against one alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Labels {
    pub pairs: usize,
}

impl Labels {
    pub fn new(alphabet: &Alphabet) -> Self {
        Labels {
            pairs: alphabet.pairs().len(),
        }
    }

    pub fn boundary(self) -> Label {
        self.pairs as Label
    }

    pub fn diamond(self) -> Label {
        self.pairs as Label + 1
    }

    /// Size of the label space of rule automata.
    pub fn plain(self) -> usize {
        self.pairs + 1
    }

    /// Size of the label space of marked automata.
    pub fn marked(self) -> usize {
        self.pairs + 2
    }
}

/// A compiled rule.
#[derive(Debug, Clone)]
pub struct RuleAutomaton {
    pub rule: TwoLevelRule,
    /// Accepts exactly the framed pair strings `# … #` satisfying the rule.
    pub dfa: Dfa,
    /// Marked strings pinpointing a violation (used by trace).
    pub violations: Dfa,
    /// Per context, the marked language `Σ* L ◇ Σ R Σ*` (gap form for
    /// epenthesis coercion), restricted to framed strings.
    pub contexts: Vec<Dfa>,
    /// Indices of contexts that can never match.
    pub vacuous: Vec<usize>,
    live: Vec<bool>,
}

impl RuleAutomaton {
    pub fn name(&self) -> &str {
        &self.rule.name
    }

    pub fn start(&self) -> u32 {
        self.dfa.start()
    }

    #[inline]
    pub fn step(&self, state: u32, label: Label) -> u32 {
        self.dfa.step(state, label)
    }

    /// Whether acceptance is still reachable from `state`.
    #[inline]
    pub fn is_live(&self, state: u32) -> bool {
        self.live[state as usize]
    }

    pub fn is_accepting(&self, state: u32) -> bool {
        self.dfa.is_accepting(state)
    }

    /// Whether the rule treats its center as an insertion slot.
    pub fn is_gap_rule(&self) -> bool {
        self.rule.center.lexical.is_zero()
    }
}

fn regex_frag(nfa: &mut Nfa, re: &ContextRegex, alphabet: &Alphabet, labels: Labels) -> Frag {
    match re {
        ContextRegex::Pair(p) => {
            let ids: Vec<Label> = alphabet
                .pairs()
                .iter()
                .enumerate()
                .filter(|(_, pair)| p.matches(**pair))
                .map(|(i, _)| i as Label)
                .collect();
            nfa.symbol_set(ids)
        }
        ContextRegex::Boundary => nfa.symbol_set([labels.boundary()]),
        ContextRegex::Seq(items) => {
            let mut cur = nfa.epsilon();
            for item in items {
                let f = regex_frag(nfa, item, alphabet, labels);
                cur = nfa.concat(cur, f);
            }
            cur
        }
        ContextRegex::Alt(items) => {
            let parts: Vec<Frag> = items
                .iter()
                .map(|i| regex_frag(nfa, i, alphabet, labels))
                .collect();
            nfa.union(&parts)
        }
        ContextRegex::Optional(inner) => {
            let f = regex_frag(nfa, inner, alphabet, labels);
            nfa.optional(f)
        }
        ContextRegex::Star(inner) => {
            let f = regex_frag(nfa, inner, alphabet, labels);
            nfa.star(f)
        }
        ContextRegex::Plus(inner) => {
            let f = regex_frag(nfa, inner, alphabet, labels);
            nfa.plus(f)
        }
    }
}

fn sigma_star(nfa: &mut Nfa, labels: Labels) -> Frag {
    let any = nfa.symbol_set(0..=labels.boundary());
    nfa.star(any)
}

fn pairs_where(alphabet: &Alphabet, f: impl Fn(Pair) -> bool) -> Vec<Label> {
    alphabet
        .pairs()
        .iter()
        .enumerate()
        .filter(|(_, p)| f(**p))
        .map(|(i, _)| i as Label)
        .collect()
}

/// `# (pairs | ◇)* #`, diamond at most once.
fn framed_marked(labels: Labels) -> Dfa {
    let mut nfa = Nfa::new();
    let open = nfa.symbol_set([labels.boundary()]);
    let p1 = nfa.symbol_set(0..labels.pairs as Label);
    let before = nfa.star(p1);
    let d = nfa.symbol_set([labels.diamond()]);
    let d = nfa.optional(d);
    let p2 = nfa.symbol_set(0..labels.pairs as Label);
    let after = nfa.star(p2);
    let close = nfa.symbol_set([labels.boundary()]);
    let mut f = nfa.concat(open, before);
    f = nfa.concat(f, d);
    f = nfa.concat(f, after);
    f = nfa.concat(f, close);
    nfa.finish(f);
    Dfa::determinize(&nfa, labels.marked()).minimize()
}

/// `# pairs* #` over the plain label space.
pub fn framed(labels: Labels) -> Dfa {
    let mut nfa = Nfa::new();
    let open = nfa.symbol_set([labels.boundary()]);
    let p = nfa.symbol_set(0..labels.pairs as Label);
    let body = nfa.star(p);
    let close = nfa.symbol_set([labels.boundary()]);
    let f = nfa.concat(open, body);
    let f = nfa.concat(f, close);
    nfa.finish(f);
    Dfa::determinize(&nfa, labels.plain()).minimize()
}

/// `Σ* ◇ X Σ*` for a set of pair labels.
fn marked_at(labels: Labels, center: &[Label]) -> Dfa {
    let mut nfa = Nfa::new();
    let pre = sigma_star(&mut nfa, labels);
    let d = nfa.symbol_set([labels.diamond()]);
    let x = nfa.symbol_set(center.iter().copied());
    let post = sigma_star(&mut nfa, labels);
    let mut f = nfa.concat(pre, d);
    f = nfa.concat(f, x);
    f = nfa.concat(f, post);
    nfa.finish(f);
    Dfa::determinize(&nfa, labels.marked()).minimize()
}

fn context_language(
    left: &ContextRegex,
    right: &ContextRegex,
    gap: bool,
    alphabet: &Alphabet,
    labels: Labels,
    frame: &Dfa,
) -> Dfa {
    let mut nfa = Nfa::new();
    let pre = sigma_star(&mut nfa, labels);
    let l = regex_frag(&mut nfa, left, alphabet, labels);
    let d = nfa.symbol_set([labels.diamond()]);
    let mut f = nfa.concat(pre, l);
    f = nfa.concat(f, d);
    if !gap {
        let any = nfa.symbol_set(0..labels.pairs as Label);
        f = nfa.concat(f, any);
    }
    let r = regex_frag(&mut nfa, right, alphabet, labels);
    let post = sigma_star(&mut nfa, labels);
    f = nfa.concat(f, r);
    f = nfa.concat(f, post);
    nfa.finish(f);
    Dfa::determinize(&nfa, labels.marked())
        .minimize()
        .intersect(frame)
        .minimize()
}

fn union_all(dfas: &[Dfa], labels: usize) -> Dfa {
    let mut acc = Dfa::universal(labels).complement();
    for d in dfas {
        acc = acc.union(d).minimize();
    }
    acc
}

/// Compiles one rule. Vacuous contexts are reported, not rejected.
pub fn compile_rule(rule: &TwoLevelRule, alphabet: &Alphabet) -> RuleAutomaton {
    let labels = Labels::new(alphabet);
    let frame = framed_marked(labels);
    let center = rule.center;
    let gap_coercion = center.lexical.is_zero();
    let restricted = context_set(rule, false, alphabet, labels, &frame);
    let contexts = if gap_coercion && rule.operator.coerces() {
        context_set(rule, true, alphabet, labels, &frame)
    } else {
        restricted.clone()
    };
    let vacuous = contexts
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_empty())
        .map(|(i, _)| i)
        .collect();

    let center_label = alphabet.pair_id(center).expect("center is feasible") as Label;
    let marked_center = marked_at(labels, &[center_label])
        .intersect(&frame)
        .minimize();
    let mut bad = Dfa::universal(labels.marked()).complement();
    if rule.operator.restricts() {
        let inside = union_all(&restricted, labels.marked());
        bad = bad
            .union(&marked_center.intersect(&inside.complement()))
            .minimize();
    }
    if rule.operator.coerces() {
        let inside = union_all(&contexts, labels.marked());
        let violating = if gap_coercion {
            inside
        } else {
            let others = pairs_where(alphabet, |p| {
                p.lexical == center.lexical && p.surface != center.surface
            });
            marked_at(labels, &others).intersect(&inside)
        };
        bad = bad.union(&violating).minimize();
    }
    if rule.operator == Operator::Exclusion {
        let inside = union_all(&restricted, labels.marked());
        bad = bad.union(&marked_center.intersect(&inside)).minimize();
    }
    let diamond = labels.diamond();
    let (erased, n) = bad.relabel(
        labels.plain(),
        |l| if l == diamond { None } else { Some(l) },
    );
    let dfa = Dfa::determinize(&erased, n)
        .complement()
        .intersect(&framed(labels))
        .minimize();
    let live = dfa.live_states();
    RuleAutomaton {
        rule: rule.clone(),
        dfa,
        violations: bad,
        contexts,
        vacuous,
        live,
    }
}

fn context_set(
    rule: &TwoLevelRule,
    gap: bool,
    alphabet: &Alphabet,
    labels: Labels,
    frame: &Dfa,
) -> Vec<Dfa> {
    rule.contexts
        .iter()
        .map(|c| context_language(&c.left, &c.right, gap, alphabet, labels, frame))
        .collect()
}

/// Two coercing rules demanding different surfaces for the same lexical
/// symbol in overlapping contexts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conflict {
    pub first: String,
    pub second: String,
    pub first_context: usize,
    pub second_context: usize,
    /// Shortest pair string where both contexts hold, rendered `LEFT _ RIGHT`.
    pub witness: String,
}

/// Reports every pair of coercing rules that clash, with one witness per
/// rule pair (the lowest-numbered clashing contexts).
pub fn detect_conflicts(rules: &[RuleAutomaton], alphabet: &Alphabet) -> Vec<Conflict> {
    let labels = Labels::new(alphabet);
    let mut out = Vec::new();
    for (i, a) in rules.iter().enumerate() {
        for b in &rules[i + 1..] {
            let (ra, rb) = (&a.rule, &b.rule);
            if !ra.operator.coerces() || !rb.operator.coerces() {
                continue;
            }
            if ra.center.lexical != rb.center.lexical || ra.center.surface == rb.center.surface {
                continue;
            }
            let lexical = ra.center.lexical;
            let center = if lexical.is_zero() {
                None
            } else {
                let ids = pairs_where(alphabet, |p| p.lexical == lexical);
                Some(marked_at(labels, &ids))
            };
            'ctx: for (ka, ca) in a.contexts.iter().enumerate() {
                for (kb, cb) in b.contexts.iter().enumerate() {
                    let mut both = ca.intersect(cb);
                    if let Some(c) = &center {
                        both = both.intersect(c);
                    }
                    if let Some(w) = both.shortest() {
                        out.push(Conflict {
                            first: ra.name.clone(),
                            second: rb.name.clone(),
                            first_context: ka,
                            second_context: kb,
                            witness: render_witness(&w, center.is_some(), alphabet, labels),
                        });
                        break 'ctx;
                    }
                }
            }
        }
    }
    out
}

fn render_witness(w: &[Label], skip_center: bool, alphabet: &Alphabet, labels: Labels) -> String {
    let inner = &w[1..w.len() - 1];
    let mut parts: Vec<String> = Vec::new();
    let mut skip = false;
    for &l in inner {
        if skip {
            skip = false;
            continue;
        }
        if l == labels.diamond() {
            parts.push("_".into());
            skip = skip_center;
        } else if l == labels.boundary() {
            parts.push("#".into());
        } else {
            let p = alphabet.pairs()[l as usize];
            let bare = p.is_identity()
                || (p.surface == Symbol::ZERO && alphabet.marker(p.lexical).is_some());
            parts.push(if bare {
                alphabet.text(p.lexical).into()
            } else {
                alphabet.pair_text(p)
            });
        }
    }
    parts.join(" ")
}
