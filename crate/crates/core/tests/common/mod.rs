//! Random small two-level grammars and a brute-force reference
//! implementation of rule semantics, written directly over pair strings.

#![allow(dead_code)]

use std::collections::BTreeSet;

use czmorph_core::Grammar;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type P = (String, String);

const LETTER_POOL: &[&str] = &["a", "e", "i", "o", "k", "c", "t", "s", "h", "n", "d", "r"];
const MARKER_POOL: &[&str] = &["^N1", "^E2", "^1P0", "^2P1", "^A1"];

#[derive(Debug, Clone)]
pub enum Atom {
    Exact(String, String),
    Lex(String),
    Surf(String),
    SetLex(usize),
    SetSurf(usize),
    Boundary,
    Opt(Box<Atom>),
    Alt(Vec<Atom>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Bi,
    Restrict,
    Coerce,
    Exclude,
}

#[derive(Debug, Clone)]
pub struct Rule {
    pub center: P,
    pub op: Op,
    pub contexts: Vec<(Vec<Atom>, Vec<Atom>)>,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub letters: Vec<String>,
    pub markers: Vec<String>,
    /// Declared pairs besides letter identities and marker deletions.
    pub extra: Vec<P>,
    pub sets: Vec<Vec<String>>,
    pub rules: Vec<Rule>,
}

fn pick<'a, R: Rng>(rng: &mut R, v: &'a [String]) -> &'a String {
    v.choose(rng).unwrap()
}

impl Instance {
    pub fn random<R: Rng>(rng: &mut R) -> Instance {
        let n_letters = rng.gen_range(2..=6);
        let letters: Vec<String> = LETTER_POOL
            .choose_multiple(rng, n_letters)
            .map(|s| s.to_string())
            .collect();
        let markers: Vec<String> = MARKER_POOL
            .choose_multiple(rng, 2)
            .map(|s| s.to_string())
            .collect();
        let mut extra = BTreeSet::new();
        for _ in 0..rng.gen_range(1..=4) {
            let a = pick(rng, &letters).clone();
            let b = pick(rng, &letters).clone();
            match rng.gen_range(0..4) {
                0 => extra.insert((a, "0".into())),
                1 if a != b => extra.insert((a, b)),
                _ => false,
            };
        }
        if rng.gen_bool(0.5) {
            extra.insert(("0".into(), pick(rng, &letters).clone()));
        }
        let mut inst = Instance {
            letters,
            markers,
            extra: extra.into_iter().collect(),
            sets: Vec::new(),
            rules: Vec::new(),
        };
        for _ in 0..2 {
            let k = rng.gen_range(1..=inst.letters.len().min(3));
            let mut set: Vec<String> = inst.letters.choose_multiple(rng, k).cloned().collect();
            set.sort();
            inst.sets.push(set);
        }
        let n_rules = rng.gen_range(1..=4);
        for _ in 0..n_rules {
            let r = inst.random_rule(rng);
            inst.rules.push(r);
        }
        inst
    }

    /// Every feasible pair whose lexical side occurs in this instance.
    pub fn pairs(&self) -> Vec<P> {
        let mut out: Vec<P> = self
            .letters
            .iter()
            .map(|l| (l.clone(), l.clone()))
            .collect();
        out.extend(self.markers.iter().map(|m| (m.clone(), "0".to_string())));
        out.extend(self.extra.iter().cloned());
        out
    }

    fn random_rule<R: Rng>(&self, rng: &mut R) -> Rule {
        let centers: Vec<P> = if self.extra.is_empty() || rng.gen_bool(0.15) {
            self.pairs()
        } else {
            self.extra.clone()
        };
        let center = centers.choose(rng).unwrap().clone();
        let op = [Op::Bi, Op::Bi, Op::Restrict, Op::Coerce, Op::Exclude][rng.gen_range(0..5)];
        let contexts = (0..rng.gen_range(1..=2))
            .map(|_| (self.random_side(rng, true), self.random_side(rng, false)))
            .collect();
        Rule {
            center,
            op,
            contexts,
        }
    }

    fn random_side<R: Rng>(&self, rng: &mut R, left: bool) -> Vec<Atom> {
        let n = rng.gen_range(0..=2);
        let mut side: Vec<Atom> = (0..n).map(|_| self.random_atom(rng, 2)).collect();
        // a boundary is only useful at the outer edge of a context
        if rng.gen_bool(0.15) {
            if left {
                side.insert(0, Atom::Boundary);
            } else {
                side.push(Atom::Boundary);
            }
        }
        side
    }

    fn random_atom<R: Rng>(&self, rng: &mut R, depth: u32) -> Atom {
        let pairs = self.pairs();
        let lexicals: Vec<String> = self.letters.iter().chain(&self.markers).cloned().collect();
        match rng.gen_range(0..if depth > 0 { 9 } else { 7 }) {
            0 | 1 => {
                let (l, s) = pairs.choose(rng).unwrap().clone();
                Atom::Exact(l, s)
            }
            2 => Atom::Lex(pick(rng, &lexicals).clone()),
            3 => Atom::Surf(pick(rng, &self.letters).clone()),
            4 => Atom::SetLex(rng.gen_range(0..self.sets.len())),
            5 => Atom::SetSurf(rng.gen_range(0..self.sets.len())),
            6 => Atom::Lex(pick(rng, &self.letters).clone()),
            7 => Atom::Opt(Box::new(self.random_atom(rng, depth - 1))),
            _ => Atom::Alt((0..2).map(|_| self.random_atom(rng, depth - 1)).collect()),
        }
    }

    pub fn alphabet_text(&self) -> String {
        let mut out = String::from("Alphabet\n");
        for m in &self.markers {
            out += &format!("{m}:0 ");
        }
        for (l, s) in &self.extra {
            out += &format!("{l}:{s} ");
        }
        out += "\nSets\n";
        for (i, set) in self.sets.iter().enumerate() {
            out += &format!("S{i} = {} ;\n", set.join(" "));
        }
        out
    }

    pub fn rules_text(&self) -> String {
        let mut out = String::new();
        for (i, r) in self.rules.iter().enumerate() {
            let op = match r.op {
                Op::Bi => "<=>",
                Op::Restrict => "=>",
                Op::Coerce => "<=",
                Op::Exclude => "/<=",
            };
            out += &format!("\"r{i}\"\n{}:{} {op} ", r.center.0, r.center.1);
            let ctx: Vec<String> = r
                .contexts
                .iter()
                .map(|(l, rt)| format!("{} _ {} ;", render_side(l), render_side(rt)))
                .collect();
            out += &ctx.join("\n    ");
            out += "\n";
        }
        out
    }

    pub fn random_input<R: Rng>(&self, rng: &mut R) -> Vec<String> {
        let n = rng.gen_range(0..=6);
        (0..n)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    pick(rng, &self.markers).clone()
                } else {
                    pick(rng, &self.letters).clone()
                }
            })
            .collect()
    }

    fn matches(&self, atom: &Atom, p: &P) -> bool {
        match atom {
            Atom::Exact(l, s) => p.0 == *l && p.1 == *s,
            Atom::Lex(l) => p.0 == *l,
            Atom::Surf(s) => p.1 == *s,
            Atom::SetLex(i) => self.sets[*i].contains(&p.0),
            Atom::SetSurf(i) => self.sets[*i].contains(&p.1),
            _ => unreachable!(),
        }
    }

    /// End positions reachable by matching `seq` from `start` in `w`,
    /// where `None` stands for the word boundary.
    fn ends(&self, seq: &[Atom], start: usize, w: &[Option<P>]) -> BTreeSet<usize> {
        let Some((first, rest)) = seq.split_first() else {
            return BTreeSet::from([start]);
        };
        let mut out = BTreeSet::new();
        for mid in self.atom_ends(first, start, w) {
            out.extend(self.ends(rest, mid, w));
        }
        out
    }

    fn atom_ends(&self, atom: &Atom, start: usize, w: &[Option<P>]) -> BTreeSet<usize> {
        match atom {
            Atom::Boundary => match w.get(start) {
                Some(None) => BTreeSet::from([start + 1]),
                _ => BTreeSet::new(),
            },
            Atom::Opt(inner) => {
                let mut s = self.atom_ends(inner, start, w);
                s.insert(start);
                s
            }
            Atom::Alt(items) => items
                .iter()
                .flat_map(|a| self.atom_ends(a, start, w))
                .collect(),
            _ => match w.get(start) {
                Some(Some(p)) if self.matches(atom, p) => BTreeSet::from([start + 1]),
                _ => BTreeSet::new(),
            },
        }
    }

    /// Does the context hold around the span `[at, after)` of the framed
    /// string? A gap has `at == after`.
    fn context_holds(
        &self,
        left: &[Atom],
        right: &[Atom],
        at: usize,
        after: usize,
        w: &[Option<P>],
    ) -> bool {
        let left_ok = (0..=at).any(|k| self.ends(left, k, w).contains(&at));
        left_ok && !self.ends(right, after, w).is_empty()
    }

    /// Checks a pair string against one rule.
    pub fn rule_accepts(&self, rule: &Rule, pairs: &[P]) -> bool {
        let mut w: Vec<Option<P>> = vec![None];
        w.extend(pairs.iter().cloned().map(Some));
        w.push(None);
        let any_context = |at: usize, after: usize| {
            rule.contexts
                .iter()
                .any(|(l, r)| self.context_holds(l, r, at, after, &w))
        };
        let gap_center = rule.center.0 == "0";
        for (i, p) in pairs.iter().enumerate().map(|(k, p)| (k + 1, p)) {
            let is_center = *p == rule.center;
            match rule.op {
                Op::Bi | Op::Restrict if is_center && !any_context(i, i + 1) => return false,
                Op::Exclude if is_center && any_context(i, i + 1) => return false,
                _ => {}
            }
            if matches!(rule.op, Op::Bi | Op::Coerce)
                && !gap_center
                && p.0 == rule.center.0
                && !is_center
                && any_context(i, i + 1)
            {
                return false;
            }
        }
        if gap_center && matches!(rule.op, Op::Bi | Op::Coerce) {
            // every gap between the boundaries where the context holds must be filled
            for g in 1..w.len() {
                if any_context(g, g) {
                    return false;
                }
            }
        }
        true
    }

    /// Surface words for a lexical string: enumerate every pair string with
    /// at most one insertion per gap, keep those all rules accept.
    pub fn oracle(&self, lexical: &[String]) -> BTreeSet<String> {
        let pairs = self.pairs();
        let inserts: Vec<P> = pairs.iter().filter(|p| p.0 == "0").cloned().collect();
        let mut out = BTreeSet::new();
        let mut path = Vec::new();
        self.enumerate(lexical, 0, &pairs, &inserts, &mut path, &mut out);
        out
    }

    fn enumerate(
        &self,
        lexical: &[String],
        pos: usize,
        pairs: &[P],
        inserts: &[P],
        path: &mut Vec<P>,
        out: &mut BTreeSet<String>,
    ) {
        let mut gap_options: Vec<Option<&P>> = vec![None];
        gap_options.extend(inserts.iter().map(Some));
        for ins in gap_options {
            if let Some(p) = ins {
                path.push(p.clone());
            }
            if pos == lexical.len() {
                if self.rules.iter().all(|r| self.rule_accepts(r, path)) {
                    out.insert(
                        path.iter()
                            .filter(|p| p.1 != "0")
                            .map(|p| p.1.as_str())
                            .collect(),
                    );
                }
            } else {
                for p in pairs.iter().filter(|p| p.0 == lexical[pos]) {
                    path.push(p.clone());
                    self.enumerate(lexical, pos + 1, pairs, inserts, path, out);
                    path.pop();
                }
            }
            if ins.is_some() {
                path.pop();
            }
        }
    }
}

fn render_atom(a: &Atom, sets_hint: &str) -> String {
    match a {
        Atom::Exact(l, s) => format!("{l}:{s}"),
        Atom::Lex(l) => format!("{l}:"),
        Atom::Surf(s) => format!(":{s}"),
        Atom::SetLex(i) => format!("S{i}{sets_hint}"),
        Atom::SetSurf(i) => format!(":S{i}"),
        Atom::Boundary => "#".into(),
        Atom::Opt(inner) => format!("( {} )", render_atom(inner, sets_hint)),
        Atom::Alt(items) => {
            let parts: Vec<String> = items.iter().map(|i| render_atom(i, sets_hint)).collect();
            format!("[ {} ]", parts.join(" | "))
        }
    }
}

fn render_side(side: &[Atom]) -> String {
    side.iter()
        .map(|a| render_atom(a, ":"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs `n` random grammars with three inputs each; returns the number of
/// inputs checked and the mismatches as readable reports.
pub fn compare_with_oracle(seed: u64, n: usize) -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let mut checked = 0;
    for _ in 0..n {
        let inst = Instance::random(&mut rng);
        let (alpha, rules) = (inst.alphabet_text(), inst.rules_text());
        let g = match Grammar::compile(&alpha, &rules) {
            Ok(g) => g,
            Err(e) => {
                bad.push(format!("compile error {e}\n{alpha}\n{rules}"));
                continue;
            }
        };
        for _ in 0..3 {
            let input = inst.random_input(&mut rng);
            let got = g.generate_surface(&input.concat()).unwrap();
            let want = inst.oracle(&input);
            checked += 1;
            if got != want {
                bad.push(format!(
                    "{alpha}\n{rules}\ninput {:?}: engine {got:?}, oracle {want:?}",
                    input.concat()
                ));
            }
        }
    }
    (checked, bad)
}
