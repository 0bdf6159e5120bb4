//! Finite automata over the doubled alphabet `A ∪ A⁻¹`.
//!
//! A [`WordAutomaton`] is an ε-free NFA. When its `reduced` flag is set, every
//! accepted word is freely reduced, so the automaton describes a subset of
//! the free group exactly (one word per element). Boolean operations on such
//! automata are the boolean operations on the rational subsets they denote.

mod expression;
mod ops;

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freegroup::{Alphabet, Letter, ReducedWord, Word};

pub use expression::RationalExpression;
pub use ops::{
    accepts, benois_reduce, benois_reduce_with_stats, combine, compare, complement_reduced, concat,
    difference_reduced, intersect_reduced, is_empty, is_subset, is_universal, minimize, star, union,
    BenoisStats, CombineOp, Relation,
};
pub use expression::{compile_expression, extract_expression};

/// An ε-free nondeterministic automaton over `A ∪ A⁻¹`.
#[derive(Clone, Debug)]
pub struct WordAutomaton {
    alphabet: Alphabet,
    num_states: usize,
    edges: Vec<(usize, Letter, usize)>,
    initials: Vec<usize>,
    finals: Vec<usize>,
    reduced: bool,
}

impl WordAutomaton {
    /// Builds an automaton, validating state indices and edge labels.
    ///
    /// The `reduced` flag is taken on trust here; [`Self::verify_reduced_flag`]
    /// checks it.
    pub fn new(
        alphabet: Alphabet,
        num_states: usize,
        edges: Vec<(usize, Letter, usize)>,
        initials: Vec<usize>,
        finals: Vec<usize>,
        reduced: bool,
    ) -> Result<Self> {
        for &(p, l, q) in &edges {
            if p >= num_states || q >= num_states {
                return Err(Error::Parse(format!("edge ({p}, {q}) outside {num_states} states")));
            }
            alphabet.check(&[l])?;
        }
        if let Some(s) = initials.iter().chain(&finals).find(|&&s| s >= num_states) {
            return Err(Error::Parse(format!("state {s} outside {num_states} states")));
        }
        Ok(Self::from_parts(alphabet, num_states, edges, initials, finals, reduced))
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        num_states: usize,
        mut edges: Vec<(usize, Letter, usize)>,
        mut initials: Vec<usize>,
        mut finals: Vec<usize>,
        reduced: bool,
    ) -> Self {
        edges.sort_unstable();
        edges.dedup();
        initials.sort_unstable();
        initials.dedup();
        finals.sort_unstable();
        finals.dedup();
        WordAutomaton { alphabet, num_states, edges, initials, finals, reduced }
    }

    /// The automaton accepting nothing.
    pub fn empty(alphabet: &Alphabet) -> Self {
        Self::from_parts(alphabet.clone(), 0, vec![], vec![], vec![], true)
    }

    /// The automaton accepting only the empty word.
    pub fn epsilon(alphabet: &Alphabet) -> Self {
        Self::from_parts(alphabet.clone(), 1, vec![], vec![0], vec![0], true)
    }

    /// The reduced-word filter: accepts exactly the freely reduced words.
    ///
    /// State 0 is the start state, state `1 + x` remembers that the last
    /// letter read was `x`; reading `x⁻¹` from there is forbidden.
    pub fn all_reduced(alphabet: &Alphabet) -> Self {
        let width = alphabet.width();
        let mut edges = Vec::new();
        for s in 0..=width {
            for x in alphabet.letters() {
                if s != 1 + x.inverse().index() {
                    edges.push((s, x, 1 + x.index()));
                }
            }
        }
        Self::from_parts(alphabet.clone(), width + 1, edges, vec![0], (0..=width).collect(), true)
    }

    /// Accepts exactly the given words (taken literally).
    pub fn from_words(alphabet: &Alphabet, words: &[Word]) -> Result<Self> {
        let mut edges = Vec::new();
        let mut finals = Vec::new();
        let mut n = 1;
        for w in words {
            alphabet.check(w.letters())?;
            let mut cur = 0;
            for &l in w.letters() {
                edges.push((cur, l, n));
                cur = n;
                n += 1;
            }
            finals.push(cur);
        }
        let reduced = words.iter().all(|w| ReducedWord::is_reduced(w.letters()));
        Ok(Self::from_parts(alphabet.clone(), n, edges, vec![0], finals, reduced).trim())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn edges(&self) -> &[(usize, Letter, usize)] {
        &self.edges
    }

    pub fn initials(&self) -> &[usize] {
        &self.initials
    }

    pub fn finals(&self) -> &[usize] {
        &self.finals
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub(crate) fn with_reduced_flag(mut self, reduced: bool) -> Self {
        self.reduced = reduced;
        self
    }

    /// `delta[state][letter]` as successor lists.
    pub(crate) fn delta(&self) -> Vec<Vec<Vec<usize>>> {
        let mut d = vec![vec![Vec::new(); self.alphabet.width()]; self.num_states];
        for &(p, l, q) in &self.edges {
            d[p][l.index()].push(q);
        }
        d
    }

    pub(crate) fn final_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.num_states];
        for &f in &self.finals {
            m[f] = true;
        }
        m
    }

    /// Restricts to states that are both reachable and co-reachable.
    pub fn trim(&self) -> Self {
        let n = self.num_states;
        let mut fwd = vec![Vec::new(); n];
        let mut bwd = vec![Vec::new(); n];
        for &(p, _, q) in &self.edges {
            fwd[p].push(q);
            bwd[q].push(p);
        }
        let reach = |start: &[usize], adj: &[Vec<usize>]| {
            let mut seen = vec![false; n];
            let mut queue: VecDeque<usize> = start.iter().copied().collect();
            for &s in start {
                seen[s] = true;
            }
            while let Some(p) = queue.pop_front() {
                for &q in &adj[p] {
                    if !seen[q] {
                        seen[q] = true;
                        queue.push_back(q);
                    }
                }
            }
            seen
        };
        let acc = reach(&self.initials, &fwd);
        let coacc = reach(&self.finals, &bwd);
        let mut renumber = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if acc[s] && coacc[s] {
                renumber[s] = next;
                next += 1;
            }
        }
        let keep = |s: usize| renumber[s] != usize::MAX;
        let edges = self
            .edges
            .iter()
            .filter(|&&(p, _, q)| keep(p) && keep(q))
            .map(|&(p, l, q)| (renumber[p], l, renumber[q]))
            .collect();
        let initials = self.initials.iter().filter(|&&s| keep(s)).map(|&s| renumber[s]).collect();
        let finals = self.finals.iter().filter(|&&s| keep(s)).map(|&s| renumber[s]).collect();
        Self::from_parts(self.alphabet.clone(), next, edges, initials, finals, self.reduced)
    }

    /// Checks the `reduced` flag: no accepted word contains a cancelling pair.
    pub fn verify_reduced_flag(&self) -> bool {
        // Walk pairs (state, last letter) and look for a forbidden step that
        // still leads to a final state.
        let t = self.trim();
        let d = t.delta();
        let width = t.alphabet.width();
        let mut seen = vec![vec![false; width + 1]; t.num_states];
        let mut queue = VecDeque::new();
        for &s in &t.initials {
            seen[s][0] = true;
            queue.push_back((s, 0usize));
        }
        while let Some((p, last)) = queue.pop_front() {
            for x in t.alphabet.letters() {
                for &q in &d[p][x.index()] {
                    if last == 1 + x.inverse().index() {
                        return false;
                    }
                    if !seen[q][1 + x.index()] {
                        seen[q][1 + x.index()] = true;
                        queue.push_back((q, 1 + x.index()));
                    }
                }
            }
        }
        true
    }

    /// Lists every accepted word of length at most `max_len`, sorted.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let d = self.delta();
        let fin = self.final_mask();
        let mut out = std::collections::BTreeSet::new();
        let mut layer: Vec<(Vec<Letter>, Vec<usize>)> = vec![(vec![], self.initials.clone())];
        for len in 0..=max_len {
            let mut next = Vec::new();
            for (w, states) in &layer {
                if states.iter().any(|&s| fin[s]) {
                    out.insert(Word(w.clone()));
                }
                if len == max_len {
                    continue;
                }
                for x in self.alphabet.letters() {
                    let mut succ: Vec<usize> =
                        states.iter().flat_map(|&s| d[s][x.index()].iter().copied()).collect();
                    succ.sort_unstable();
                    succ.dedup();
                    if !succ.is_empty() {
                        let mut w2 = w.clone();
                        w2.push(x);
                        next.push((w2, succ));
                    }
                }
            }
            layer = next;
        }
        out.into_iter().collect()
    }

    pub fn to_json(&self) -> String {
        let dto = AutomatonJson {
            alphabet: self.alphabet.names().iter().map(|c| c.to_string()).collect(),
            states: self.num_states,
            initials: self.initials.clone(),
            finals: self.finals.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(p, l, q)| (p, self.alphabet.letter_char(l).to_string(), q))
                .collect(),
            reduced: self.reduced,
        };
        serde_json::to_string(&dto).expect("automaton serializes")
    }

    /// Reads the JSON format written by [`Self::to_json`]. A claimed
    /// `reduced` flag is verified.
    pub fn from_json(s: &str) -> Result<Self> {
        let dto: AutomatonJson = serde_json::from_str(s)?;
        let alphabet = alphabet_from_names(&dto.alphabet)?;
        let edges = dto
            .edges
            .iter()
            .map(|(p, label, q)| Ok((*p, single_letter(&alphabet, label)?, *q)))
            .collect::<Result<Vec<_>>>()?;
        let a = Self::new(alphabet, dto.states, edges, dto.initials, dto.finals, dto.reduced)?;
        if a.reduced && !a.verify_reduced_flag() {
            return Err(Error::Parse("automaton flagged reduced accepts an unreduced word".into()));
        }
        Ok(a)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
        for &f in &self.finals {
            let _ = writeln!(out, "  {f} [shape=doublecircle];");
        }
        for &i in &self.initials {
            let _ = writeln!(out, "  start{i} [shape=point];\n  start{i} -> {i};");
        }
        for &(p, l, q) in &self.edges {
            let _ = writeln!(out, "  {p} -> {q} [label=\"{}\"];", self.alphabet.letter_char(l));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct AutomatonJson {
    alphabet: Vec<String>,
    states: usize,
    initials: Vec<usize>,
    finals: Vec<usize>,
    edges: Vec<(usize, String, usize)>,
    reduced: bool,
}

pub(crate) fn alphabet_from_names(names: &[String]) -> Result<Alphabet> {
    let chars = names
        .iter()
        .map(|n| {
            let mut it = n.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(Error::InvalidAlphabet(format!("generator name {n:?} must be one letter"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Alphabet::new(chars)
}

pub(crate) fn single_letter(alphabet: &Alphabet, label: &str) -> Result<Letter> {
    let mut it = label.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => alphabet.letter_from_char(c),
        _ => Err(Error::Parse(format!("edge label {label:?} must be one letter"))),
    }
}
