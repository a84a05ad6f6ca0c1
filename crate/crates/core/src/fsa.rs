//! Small finite-state toolkit over dense integer labels: Thompson NFAs,
//! subset construction, boolean operations and minimization.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

pub type Label = u32;

/// Nondeterministic automaton with epsilon moves.
#[derive(Debug, Clone, Default)]
pub struct Nfa {
    edges: Vec<Vec<(Label, usize)>>,
    eps: Vec<Vec<usize>>,
    pub start: usize,
    finals: Vec<bool>,
}

/// A sub-automaton with one entry and one exit state inside an [`Nfa`].
#[derive(Debug, Clone, Copy)]
pub struct Frag {
    pub start: usize,
    pub end: usize,
}

impl Nfa {
    pub fn new() -> Self {
        Nfa::default()
    }

    pub fn add_state(&mut self) -> usize {
        self.edges.push(Vec::new());
        self.eps.push(Vec::new());
        self.finals.push(false);
        self.edges.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, label: Label, to: usize) {
        self.edges[from].push((label, to));
    }

    pub fn add_eps(&mut self, from: usize, to: usize) {
        self.eps[from].push(to);
    }

    pub fn set_final(&mut self, s: usize) {
        self.finals[s] = true;
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// One step over any of `labels`.
    pub fn symbol_set(&mut self, labels: impl IntoIterator<Item = Label>) -> Frag {
        let start = self.add_state();
        let end = self.add_state();
        for l in labels {
            self.add_edge(start, l, end);
        }
        Frag { start, end }
    }

    pub fn epsilon(&mut self) -> Frag {
        let start = self.add_state();
        let end = self.add_state();
        self.add_eps(start, end);
        Frag { start, end }
    }

    pub fn concat(&mut self, a: Frag, b: Frag) -> Frag {
        self.add_eps(a.end, b.start);
        Frag {
            start: a.start,
            end: b.end,
        }
    }

    pub fn union(&mut self, parts: &[Frag]) -> Frag {
        let start = self.add_state();
        let end = self.add_state();
        for p in parts {
            self.add_eps(start, p.start);
            self.add_eps(p.end, end);
        }
        Frag { start, end }
    }

    pub fn optional(&mut self, a: Frag) -> Frag {
        let e = self.epsilon();
        self.union(&[a, e])
    }

    pub fn star(&mut self, a: Frag) -> Frag {
        let start = self.add_state();
        let end = self.add_state();
        self.add_eps(start, a.start);
        self.add_eps(start, end);
        self.add_eps(a.end, a.start);
        self.add_eps(a.end, end);
        Frag { start, end }
    }

    pub fn plus(&mut self, a: Frag) -> Frag {
        let start = self.add_state();
        let end = self.add_state();
        self.add_eps(start, a.start);
        self.add_eps(a.end, a.start);
        self.add_eps(a.end, end);
        Frag { start, end }
    }

    /// Makes `frag` the whole automaton.
    pub fn finish(&mut self, frag: Frag) {
        self.start = frag.start;
        self.finals.iter_mut().for_each(|f| *f = false);
        self.finals[frag.end] = true;
    }

    fn closure(&self, seed: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<usize> = seed.into_iter().collect();
        while let Some(s) = stack.pop() {
            if seen.insert(s) {
                stack.extend(self.eps[s].iter().copied());
            }
        }
        seen.into_iter().collect()
    }
}

/// Complete deterministic automaton: every state has a transition on every
/// label (rejection goes through an explicit sink).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    labels: usize,
    trans: Vec<u32>,
    accept: Vec<bool>,
    start: u32,
}

impl Dfa {
    /// Subset construction.
    pub fn determinize(nfa: &Nfa, labels: usize) -> Dfa {
        let mut ids: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let mut trans = Vec::new();
        let mut accept = Vec::new();
        let first = nfa.closure([nfa.start]);
        ids.insert(first.clone(), 0);
        sets.push(first);
        let mut i = 0;
        while i < sets.len() {
            let set = sets[i].clone();
            accept.push(set.iter().any(|&s| nfa.finals[s]));
            let mut moves: BTreeMap<Label, BTreeSet<usize>> = BTreeMap::new();
            for &s in &set {
                for &(l, t) in &nfa.edges[s] {
                    moves.entry(l).or_default().insert(t);
                }
            }
            let row = trans.len();
            trans.resize(row + labels, u32::MAX);
            for l in 0..labels as Label {
                let target = match moves.get(&l) {
                    Some(t) => nfa.closure(t.iter().copied()),
                    None => Vec::new(),
                };
                let next = ids.len() as u32;
                let id = *ids.entry(target.clone()).or_insert_with(|| {
                    sets.push(target);
                    next
                });
                trans[row + l as usize] = id;
            }
            i += 1;
        }
        Dfa {
            labels,
            trans,
            accept,
            start: 0,
        }
    }

    /// Automaton accepting every string over the labels.
    pub fn universal(labels: usize) -> Dfa {
        Dfa {
            labels,
            trans: vec![0; labels],
            accept: vec![true],
            start: 0,
        }
    }

    pub fn labels(&self) -> usize {
        self.labels
    }

    pub fn states(&self) -> usize {
        self.accept.len()
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    #[inline]
    pub fn step(&self, state: u32, label: Label) -> u32 {
        self.trans[state as usize * self.labels + label as usize]
    }

    pub fn is_accepting(&self, state: u32) -> bool {
        self.accept[state as usize]
    }

    pub fn run(&self, input: impl IntoIterator<Item = Label>) -> u32 {
        input.into_iter().fold(self.start, |s, l| self.step(s, l))
    }

    pub fn accepts(&self, input: impl IntoIterator<Item = Label>) -> bool {
        self.is_accepting(self.run(input))
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        d.accept.iter_mut().for_each(|a| *a = !*a);
        d
    }

    fn product(&self, other: &Dfa, keep: impl Fn(bool, bool) -> bool) -> Dfa {
        assert_eq!(self.labels, other.labels, "label spaces differ");
        let labels = self.labels;
        let mut ids: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        let mut queue = vec![(self.start, other.start)];
        ids.insert((self.start, other.start), 0);
        let mut trans = Vec::new();
        let mut accept = Vec::new();
        let mut i = 0;
        while i < queue.len() {
            let (a, b) = queue[i];
            accept.push(keep(self.is_accepting(a), other.is_accepting(b)));
            for l in 0..labels as Label {
                let t = (self.step(a, l), other.step(b, l));
                let next = ids.len() as u32;
                let id = *ids.entry(t).or_insert_with(|| {
                    queue.push(t);
                    next
                });
                trans.push(id);
            }
            i += 1;
        }
        Dfa {
            labels,
            trans,
            accept,
            start: 0,
        }
    }

    pub fn intersect(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a || b)
    }

    /// Minimal equivalent automaton (Moore refinement over reachable states).
    pub fn minimize(&self) -> Dfa {
        let reach = self.reachable();
        let order: Vec<u32> = (0..self.states() as u32)
            .filter(|s| reach[*s as usize])
            .collect();
        let mut class: Vec<u32> = vec![0; self.states()];
        for &s in &order {
            class[s as usize] = self.accept[s as usize] as u32;
        }
        let mut count = {
            let mut seen: BTreeSet<u32> = BTreeSet::new();
            order.iter().for_each(|&s| {
                seen.insert(class[s as usize]);
            });
            seen.len()
        };
        loop {
            let mut sigs: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
            let mut next = vec![0u32; self.states()];
            for &s in &order {
                let mut sig = Vec::with_capacity(self.labels + 1);
                sig.push(class[s as usize]);
                for l in 0..self.labels as Label {
                    sig.push(class[self.step(s, l) as usize]);
                }
                let n = sigs.len() as u32;
                next[s as usize] = *sigs.entry(sig).or_insert(n);
            }
            let new_count = sigs.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // renumber so the start state is 0 and numbering follows BFS order
        let mut renum: BTreeMap<u32, u32> = BTreeMap::new();
        let mut queue = VecDeque::from([self.start]);
        let mut reps: Vec<u32> = Vec::new();
        renum.insert(class[self.start as usize], 0);
        reps.push(self.start);
        let mut visited = vec![false; self.states()];
        visited[self.start as usize] = true;
        while let Some(s) = queue.pop_front() {
            for l in 0..self.labels as Label {
                let t = self.step(s, l);
                if !visited[t as usize] {
                    visited[t as usize] = true;
                    queue.push_back(t);
                }
                let c = class[t as usize];
                if let alloc::collections::btree_map::Entry::Vacant(e) = renum.entry(c) {
                    e.insert(reps.len() as u32);
                    reps.push(t);
                }
            }
        }
        let mut trans = Vec::with_capacity(reps.len() * self.labels);
        let mut accept = Vec::with_capacity(reps.len());
        for &r in &reps {
            accept.push(self.accept[r as usize]);
            for l in 0..self.labels as Label {
                trans.push(renum[&class[self.step(r, l) as usize]]);
            }
        }
        Dfa {
            labels: self.labels,
            trans,
            accept,
            start: 0,
        }
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.states()];
        let mut stack = vec![self.start];
        seen[self.start as usize] = true;
        while let Some(s) = stack.pop() {
            for l in 0..self.labels as Label {
                let t = self.step(s, l);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.states();
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
        for s in 0..n as u32 {
            for l in 0..self.labels as Label {
                rev[self.step(s, l) as usize].push(s);
            }
        }
        let mut live = self.accept.clone();
        let mut stack: Vec<u32> = (0..n as u32).filter(|&s| live[s as usize]).collect();
        while let Some(s) = stack.pop() {
            for &p in &rev[s as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    pub fn is_empty(&self) -> bool {
        self.shortest().is_none()
    }

    /// A shortest accepted string, smallest labels first.
    pub fn shortest(&self) -> Option<Vec<Label>> {
        let mut prev: Vec<Option<(u32, Label)>> = vec![None; self.states()];
        let mut seen = vec![false; self.states()];
        let mut queue = VecDeque::from([self.start]);
        seen[self.start as usize] = true;
        while let Some(s) = queue.pop_front() {
            if self.is_accepting(s) {
                let mut out = Vec::new();
                let mut cur = s;
                while let Some((p, l)) = prev[cur as usize] {
                    out.push(l);
                    cur = p;
                }
                out.reverse();
                return Some(out);
            }
            for l in 0..self.labels as Label {
                let t = self.step(s, l);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    prev[t as usize] = Some((s, l));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Same language?
    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.product(other, |a, b| a != b).is_empty()
    }

    /// Relabels into an NFA over `labels` labels; `map` returning `None`
    /// turns the transition into an epsilon move.
    pub fn relabel(&self, labels: usize, map: impl Fn(Label) -> Option<Label>) -> (Nfa, usize) {
        let mut nfa = Nfa::new();
        for _ in 0..self.states() {
            nfa.add_state();
        }
        for s in 0..self.states() {
            if self.accept[s] {
                nfa.set_final(s);
            }
            for l in 0..self.labels as Label {
                let t = self.step(s as u32, l) as usize;
                match map(l) {
                    Some(m) => nfa.add_edge(s, m, t),
                    None => nfa.add_eps(s, t),
                }
            }
        }
        nfa.start = self.start as usize;
        (nfa, labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // language over {0,1}: strings containing "01"
    fn contains_01() -> Dfa {
        let mut n = Nfa::new();
        let any1 = n.symbol_set([0, 1]);
        let any = n.star(any1);
        let zero = n.symbol_set([0]);
        let one = n.symbol_set([1]);
        let any2 = n.symbol_set([0, 1]);
        let tail = n.star(any2);
        let a = n.concat(any, zero);
        let b = n.concat(a, one);
        let c = n.concat(b, tail);
        n.finish(c);
        Dfa::determinize(&n, 2)
    }

    fn brute(s: &[Label]) -> bool {
        s.windows(2).any(|w| w == [0, 1])
    }

    fn all_strings(max: usize) -> Vec<Vec<Label>> {
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..max {
            let mut next = Vec::new();
            for s in &frontier {
                for l in 0..2 {
                    let mut t: Vec<Label> = s.clone();
                    t.push(l);
                    next.push(t);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    #[test]
    fn determinize_matches_brute_force() {
        let d = contains_01();
        for s in all_strings(7) {
            assert_eq!(d.accepts(s.iter().copied()), brute(&s), "{s:?}");
        }
    }

    #[test]
    fn minimize_preserves_language_and_shrinks() {
        let d = contains_01();
        let m = d.minimize();
        assert!(m.equivalent(&d));
        assert_eq!(m.states(), 3);
        assert_eq!(m.minimize(), m);
    }

    #[test]
    fn complement_and_products() {
        let d = contains_01();
        let c = d.complement();
        assert!(d.intersect(&c).is_empty());
        assert!(d.union(&c).equivalent(&Dfa::universal(2)));
        assert_eq!(d.shortest(), Some(vec![0, 1]));
    }

    #[test]
    fn relabel_erases() {
        // erase label 1 from "contains 01": result accepts any string with a 0
        let d = contains_01();
        let (n, labels) = d.relabel(2, |l| if l == 1 { None } else { Some(l) });
        let e = Dfa::determinize(&n, labels);
        assert!(e.accepts([0]));
        assert!(!e.accepts([]));
        let live = e.live_states();
        assert!(live[e.start() as usize]);
    }
}
