use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::ops::EpsNfa;
use super::WordAutomaton;
use crate::error::{Error, Result};
use crate::freegroup::{Alphabet, ReducedWord};

/// Rational expression over the free group.
///
/// Literals are reduced words; the expression denotes the subset of `F(A)`
/// obtained by evaluating union, product and generated submonoid. The smart
/// constructors simplify freely (adjacent literals are multiplied in the
/// group), which preserves the denoted subset but not the literal language.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RationalExpression {
    Empty,
    Literal(ReducedWord),
    Union(Vec<RationalExpression>),
    Concat(Vec<RationalExpression>),
    Star(Box<RationalExpression>),
}

use RationalExpression as Rx;

impl RationalExpression {
    pub fn empty() -> Self {
        Rx::Empty
    }

    pub fn epsilon() -> Self {
        Rx::Literal(ReducedWord::identity())
    }

    pub fn literal(w: ReducedWord) -> Self {
        Rx::Literal(w)
    }

    pub fn is_epsilon(&self) -> bool {
        matches!(self, Rx::Literal(w) if w.is_empty())
    }

    pub fn union(a: Self, b: Self) -> Self {
        let mut parts = Vec::new();
        for e in [a, b] {
            match e {
                Rx::Empty => {}
                Rx::Union(v) => parts.extend(v),
                other => parts.push(other),
            }
        }
        let mut unique: Vec<Rx> = Vec::with_capacity(parts.len());
        for p in parts {
            if !unique.contains(&p) {
                unique.push(p);
            }
        }
        match unique.len() {
            0 => Rx::Empty,
            1 => unique.pop().unwrap(),
            _ => Rx::Union(unique),
        }
    }

    pub fn concat(a: Self, b: Self) -> Self {
        if matches!(a, Rx::Empty) || matches!(b, Rx::Empty) {
            return Rx::Empty;
        }
        let mut parts: Vec<Rx> = Vec::new();
        for e in [a, b] {
            let items = match e {
                Rx::Concat(v) => v,
                other => vec![other],
            };
            for item in items {
                match (parts.last_mut(), item) {
                    (_, x) if x.is_epsilon() => {}
                    (Some(Rx::Literal(u)), Rx::Literal(v)) => *u = u.mul(&v),
                    (_, x) => parts.push(x),
                }
            }
        }
        parts.retain(|p| !p.is_epsilon());
        match parts.len() {
            0 => Rx::epsilon(),
            1 => parts.pop().unwrap(),
            _ => Rx::Concat(parts),
        }
    }

    pub fn star(a: Self) -> Self {
        match a {
            Rx::Empty => Rx::epsilon(),
            x if x.is_epsilon() => x,
            s @ Rx::Star(_) => s,
            other => Rx::Star(Box::new(other)),
        }
    }

    pub fn union_all<I: IntoIterator<Item = Rx>>(items: I) -> Self {
        items.into_iter().fold(Rx::Empty, Rx::union)
    }

    pub fn concat_all<I: IntoIterator<Item = Rx>>(items: I) -> Self {
        items.into_iter().fold(Rx::epsilon(), Rx::concat)
    }

    /// Number of nodes in the expression tree.
    pub fn size(&self) -> usize {
        match self {
            Rx::Empty | Rx::Literal(_) => 1,
            Rx::Union(v) | Rx::Concat(v) => 1 + v.iter().map(Rx::size).sum::<usize>(),
            Rx::Star(e) => 1 + e.size(),
        }
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self {
            Rx::Empty => Ok(()),
            Rx::Literal(w) => alphabet.check(w.letters()),
            Rx::Union(v) | Rx::Concat(v) => v.iter().try_for_each(|e| e.check_alphabet(alphabet)),
            Rx::Star(e) => e.check_alphabet(alphabet),
        }
    }

    /// Parses the textual grammar: letters, juxtaposition, `|`, `*`,
    /// parentheses, `1` (empty word), `0` (empty set).
    pub fn parse(s: &str, alphabet: &Alphabet) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { chars: &chars, pos: 0, alphabet };
        let e = p.union()?;
        if p.pos != chars.len() {
            return Err(Error::Parse(format!("unexpected {:?} at offset {}", chars[p.pos], p.pos)));
        }
        Ok(e)
    }

    /// Renders in the grammar accepted by [`Self::parse`].
    pub fn display(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        self.write(alphabet, 0, &mut out);
        out
    }

    // Precedence: 0 = union context, 1 = concat context, 2 = star operand.
    fn write(&self, alphabet: &Alphabet, prec: u8, out: &mut String) {
        match self {
            Rx::Empty => out.push('0'),
            Rx::Literal(w) if w.is_empty() => out.push('1'),
            Rx::Literal(w) => {
                let s = alphabet.format(w.letters());
                if prec == 2 && w.len() > 1 {
                    let _ = write!(out, "({s})");
                } else {
                    out.push_str(&s);
                }
            }
            Rx::Union(v) => {
                if prec > 0 {
                    out.push('(');
                }
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        out.push('|');
                    }
                    e.write(alphabet, 0, out);
                }
                if prec > 0 {
                    out.push(')');
                }
            }
            Rx::Concat(v) => {
                if prec == 2 {
                    out.push('(');
                }
                for e in v {
                    e.write(alphabet, 1, out);
                }
                if prec == 2 {
                    out.push(')');
                }
            }
            Rx::Star(e) => {
                e.write(alphabet, 2, out);
                out.push('*');
            }
        }
    }
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn union(&mut self) -> Result<Rx> {
        let mut e = self.concat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            e = Rx::union(e, self.concat()?);
        }
        Ok(e)
    }

    fn concat(&mut self) -> Result<Rx> {
        let mut e = None;
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let f = self.factor()?;
            e = Some(match e {
                None => f,
                Some(prev) => Rx::concat(prev, f),
            });
        }
        e.ok_or_else(|| Error::Parse(format!("empty operand at offset {}", self.pos)))
    }

    fn factor(&mut self) -> Result<Rx> {
        let mut e = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            e = Rx::star(e);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Rx> {
        let c = self.peek().ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match c {
            '(' => {
                let e = self.union()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse(format!("expected ')' at offset {}", self.pos)));
                }
                self.pos += 1;
                Ok(e)
            }
            '1' => Ok(Rx::epsilon()),
            '0' => Ok(Rx::Empty),
            c => {
                let l = self.alphabet.letter_from_char(c)?;
                Ok(Rx::Literal(ReducedWord::from_letters([l])))
            }
        }
    }
}

/// Thompson-style construction; the result's π-image is the denoted subset.
pub fn compile_expression(e: &RationalExpression, alphabet: &Alphabet) -> Result<WordAutomaton> {
    e.check_alphabet(alphabet)?;
    fn build(e: &Rx, nfa: &mut EpsNfa) -> (usize, usize) {
        match e {
            Rx::Empty => (nfa.add_state(), nfa.add_state()),
            Rx::Literal(w) => {
                let start = nfa.add_state();
                let mut cur = start;
                for &l in w.letters() {
                    let next = nfa.add_state();
                    nfa.edges.push((cur, Some(l), next));
                    cur = next;
                }
                (start, cur)
            }
            Rx::Union(v) => {
                let (s, t) = (nfa.add_state(), nfa.add_state());
                for sub in v {
                    let (a, b) = build(sub, nfa);
                    nfa.edges.push((s, None, a));
                    nfa.edges.push((b, None, t));
                }
                (s, t)
            }
            Rx::Concat(v) => {
                let s = nfa.add_state();
                let mut cur = s;
                for sub in v {
                    let (a, b) = build(sub, nfa);
                    nfa.edges.push((cur, None, a));
                    cur = b;
                }
                (s, cur)
            }
            Rx::Star(sub) => {
                let hub = nfa.add_state();
                let (a, b) = build(sub, nfa);
                nfa.edges.push((hub, None, a));
                nfa.edges.push((b, None, hub));
                (hub, hub)
            }
        }
    }
    let mut nfa = EpsNfa::new();
    let (s, t) = build(e, &mut nfa);
    nfa.initials = vec![s];
    nfa.finals = vec![t];
    let literal_only = match e {
        Rx::Empty | Rx::Literal(_) => true,
        Rx::Union(v) => v.iter().all(|x| matches!(x, Rx::Literal(_))),
        _ => false,
    };
    Ok(nfa.into_automaton(alphabet, literal_only))
}

/// State elimination, removing the state of lowest current degree first.
pub fn extract_expression(a: &WordAutomaton) -> RationalExpression {
    let a = a.trim();
    let n = a.num_states();
    let (src, dst) = (n, n + 1);
    let mut out: Vec<BTreeMap<usize, Rx>> = vec![BTreeMap::new(); n + 2];
    let mut inc: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n + 2];
    let add = |out: &mut Vec<BTreeMap<usize, Rx>>, inc: &mut Vec<BTreeSet<usize>>, p: usize, q: usize, e: Rx| {
        let slot = out[p].entry(q).or_insert(Rx::Empty);
        *slot = Rx::union(std::mem::replace(slot, Rx::Empty), e);
        inc[q].insert(p);
    };
    for &i in a.initials() {
        add(&mut out, &mut inc, src, i, Rx::epsilon());
    }
    for &f in a.finals() {
        add(&mut out, &mut inc, f, dst, Rx::epsilon());
    }
    for &(p, l, q) in a.edges() {
        add(&mut out, &mut inc, p, q, Rx::Literal(ReducedWord::from_letters([l])));
    }
    let mut remaining: BTreeSet<usize> = (0..n).collect();
    while let Some(&k) = remaining
        .iter()
        .min_by_key(|&&k| (out[k].len() + inc[k].len(), k))
    {
        remaining.remove(&k);
        let loop_expr = out[k].remove(&k).map(Rx::star).unwrap_or_else(Rx::epsilon);
        inc[k].remove(&k);
        let preds: Vec<usize> = inc[k].iter().copied().collect();
        let succs: Vec<(usize, Rx)> = std::mem::take(&mut out[k]).into_iter().collect();
        for &p in &preds {
            let into = out[p].remove(&k).expect("incoming edge recorded");
            for (q, from) in &succs {
                let e = Rx::concat_all([into.clone(), loop_expr.clone(), from.clone()]);
                add(&mut out, &mut inc, p, *q, e);
            }
        }
        for (q, _) in &succs {
            inc[*q].remove(&k);
        }
        inc[k].clear();
    }
    out[src].remove(&dst).unwrap_or(Rx::Empty)
}
