//! Finite unions of translated subgroup products `g·H₁⋯Hₙ`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::automata::{self, RationalExpression, WordAutomaton};
use crate::error::{Limits, Result};
use crate::freegroup::{Alphabet, Letter, ReducedWord};
use crate::stallings::{JoinPart, Subgroup};

/// One term `g·H₁⋯Hₙ`; with no factors it denotes `{g}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Term {
    pub g: ReducedWord,
    pub factors: Vec<Subgroup>,
}

impl Term {
    pub fn new(g: ReducedWord, factors: Vec<Subgroup>) -> Self {
        let mut t = Term { g, factors };
        t.normalize();
        t
    }

    pub fn singleton(g: ReducedWord) -> Self {
        Term { g, factors: Vec::new() }
    }

    /// Drops trivial factors, absorbs adjacent factors contained in a
    /// neighbour, and absorbs `g` into `H₁` when `g ∈ H₁`.
    fn normalize(&mut self) {
        self.factors.retain(|h| !h.is_trivial());
        let mut out: Vec<Subgroup> = Vec::with_capacity(self.factors.len());
        for h in self.factors.drain(..) {
            match out.last() {
                Some(prev) if prev.contains(&h).unwrap_or(false) => {}
                Some(prev) if h.contains(prev).unwrap_or(false) => {
                    out.pop();
                    // The enlarged factor may now absorb its new left neighbour.
                    while matches!(out.last(), Some(p) if h.contains(p).unwrap_or(false)) {
                        out.pop();
                    }
                    out.push(h);
                }
                _ => out.push(h),
            }
        }
        self.factors = out;
        if let Some(h) = self.factors.first() {
            if !self.g.is_empty() && h.member(&self.g).unwrap_or(false) {
                self.g = ReducedWord::identity();
            }
        }
    }

    /// `self · other`, moving the translation of `other` to the front.
    pub fn mul(&self, other: &Term) -> Result<Term> {
        let f = &other.g;
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        for h in &self.factors {
            factors.push(h.conjugate(f)?);
        }
        factors.extend(other.factors.iter().cloned());
        Ok(Term::new(self.g.mul(f), factors))
    }

    /// Generators of the subgroup generated by the set this term denotes:
    /// `g` together with `g·b·g⁻¹` for every basis element `b` of every factor.
    fn subgroup_generators(&self) -> Vec<ReducedWord> {
        let ginv = self.g.inverse();
        let mut gens = vec![self.g.clone()];
        for h in &self.factors {
            gens.extend(h.basis().iter().map(|b| ginv.conjugate(b)));
        }
        gens
    }
}

/// A finite set of terms; the empty set denotes `∅`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClosureNormalForm {
    alphabet: Alphabet,
    terms: BTreeSet<Term>,
}

impl ClosureNormalForm {
    pub fn empty(alphabet: &Alphabet) -> Self {
        ClosureNormalForm { alphabet: alphabet.clone(), terms: BTreeSet::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = Term>>(alphabet: &Alphabet, terms: I) -> Self {
        ClosureNormalForm { alphabet: alphabet.clone(), terms: terms.into_iter().collect() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        ClosureNormalForm { alphabet: self.alphabet.clone(), terms }
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        let mut terms = BTreeSet::new();
        for s in &self.terms {
            for t in &other.terms {
                terms.insert(s.mul(t)?);
            }
        }
        Ok(ClosureNormalForm { alphabet: self.alphabet.clone(), terms })
    }

    /// The subgroup generated by the denoted set, as a single term.
    pub fn star(&self) -> Result<Self> {
        let gens: Vec<JoinPart> =
            self.terms.iter().flat_map(Term::subgroup_generators).map(JoinPart::Word).collect();
        let s = if gens.is_empty() { Subgroup::trivial(&self.alphabet) } else { Subgroup::join(&self.alphabet, &gens)? };
        let term = Term::new(ReducedWord::identity(), vec![s]);
        Ok(Self::from_terms(&self.alphabet, [term]))
    }

    pub fn to_json(&self) -> String {
        let dto = NormalFormJson {
            alphabet: self.alphabet.names().iter().map(|c| c.to_string()).collect(),
            terms: self
                .terms
                .iter()
                .map(|t| TermJson {
                    g: self.alphabet.display(t.g.letters()),
                    factors: t
                        .factors
                        .iter()
                        .map(|h| h.basis().iter().map(|b| self.alphabet.display(b.letters())).collect())
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string(&dto).expect("normal form serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let dto: NormalFormJson = serde_json::from_str(s)?;
        let alphabet = automata::alphabet_from_names(&dto.alphabet)?;
        let mut terms = BTreeSet::new();
        for t in dto.terms {
            let g = alphabet.parse_reduced(&t.g)?;
            let mut factors = Vec::new();
            for gens in t.factors {
                let words = gens.iter().map(|w| alphabet.parse_reduced(w)).collect::<Result<Vec<_>>>()?;
                factors.push(Subgroup::fold(&alphabet, &words)?);
            }
            terms.insert(Term::new(g, factors));
        }
        Ok(ClosureNormalForm { alphabet, terms })
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let a = &self.alphabet;
        let term = |t: &Term| {
            let mut s = a.display(t.g.letters());
            for h in &t.factors {
                let gens: Vec<String> = h.basis().iter().map(|b| a.display(b.letters())).collect();
                s.push_str(&format!("·<{}>", gens.join(",")));
            }
            s
        };
        self.terms.iter().map(term).collect::<Vec<_>>().join(" ∪ ")
    }
}

#[derive(Serialize, Deserialize)]
struct NormalFormJson {
    alphabet: Vec<String>,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    g: String,
    factors: Vec<Vec<String>>,
}

/// Closure of a rational subset in the profinite topology, by structural
/// recursion on the expression.
pub fn pro_g_closure(e: &RationalExpression, alphabet: &Alphabet) -> Result<ClosureNormalForm> {
    e.check_alphabet(alphabet)?;
    closure_rec(e, alphabet)
}

fn closure_rec(e: &RationalExpression, alphabet: &Alphabet) -> Result<ClosureNormalForm> {
    use RationalExpression as Rx;
    Ok(match e {
        Rx::Empty => ClosureNormalForm::empty(alphabet),
        Rx::Literal(w) => ClosureNormalForm::from_terms(alphabet, [Term::singleton(w.clone())]),
        Rx::Union(items) => {
            let mut acc = ClosureNormalForm::empty(alphabet);
            for item in items {
                acc = acc.union(&closure_rec(item, alphabet)?);
            }
            acc
        }
        Rx::Concat(items) => {
            let mut acc = ClosureNormalForm::from_terms(alphabet, [Term::singleton(ReducedWord::identity())]);
            for item in items {
                acc = acc.concat(&closure_rec(item, alphabet)?)?;
                if acc.is_empty() {
                    break;
                }
            }
            acc
        }
        Rx::Star(inner) => closure_rec(inner, alphabet)?.star()?,
    })
}

/// Reduced words of the union of the terms.
pub fn nf_to_automaton(nf: &ClosureNormalForm, limits: &Limits) -> Result<WordAutomaton> {
    let alphabet = nf.alphabet();
    let mut acc = WordAutomaton::empty(alphabet);
    for t in nf.terms() {
        let mut a = WordAutomaton::from_words(alphabet, &[t.g.clone().into_word()])?;
        for h in &t.factors {
            a = automata::concat(&a, &h.automaton())?;
        }
        acc = automata::union(&acc, &a)?;
    }
    let reduced = automata::benois_reduce(&acc, limits)?;
    automata::minimize(&reduced, limits)
}

/// Normal form of the profinite closure of the language of an automaton,
/// read off its strongly connected components: the labels of the paths
/// from `s` to `e` inside one component lie in `w·H_e`, with `w` any such
/// path and `H_e` the subgroup carried by the component based at `e`.
pub fn pro_g_closure_automaton(a: &WordAutomaton) -> Result<ClosureNormalForm> {
    let alphabet = a.alphabet().clone();
    let a = a.trim();
    let n = a.num_states();
    let mut out: Vec<Vec<(Letter, usize)>> = vec![Vec::new(); n];
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(p, l, q) in a.edges() {
        out[p].push((l, q));
        rev[q].push(p);
    }
    let (comp, order) = components(&out, &rev);
    let mut finals = vec![false; n];
    for &f in a.finals() {
        finals[f] = true;
    }

    // Spanning tree words from the root of each component, reading edges in
    // either direction, and the generators of the component subgroup.
    let mut tree: Vec<Option<ReducedWord>> = vec![None; n];
    let mut carried: Vec<Subgroup> = vec![Subgroup::trivial(&alphabet); n];
    for members in &order {
        let root = members[0];
        tree[root] = Some(ReducedWord::identity());
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let tu = tree[u].clone().expect("visited");
            let back = rev[u].iter().map(|&p| (p, None));
            let forward = out[u].iter().map(|&(l, q)| (q, Some(l)));
            for (v, l) in forward.chain(back) {
                if comp[v] != comp[u] || tree[v].is_some() {
                    continue;
                }
                let step = match l {
                    Some(l) => ReducedWord::from_letters([l]),
                    None => {
                        let l = out[v].iter().find(|&&(_, t)| t == u).expect("reverse edge").0;
                        ReducedWord::from_letters([l.inverse()])
                    }
                };
                tree[v] = Some(tu.mul(&step));
                queue.push_back(v);
            }
        }
        let t = |x: usize| tree[x].as_ref().expect("spanned");
        let mut gens: Vec<ReducedWord> = Vec::new();
        for &u in members {
            for &(l, v) in &out[u] {
                if comp[v] != comp[u] {
                    continue;
                }
                let g = t(u).mul(&ReducedWord::from_letters([l])).mul(&t(v).inverse());
                if !g.is_empty() {
                    gens.push(g);
                }
            }
        }
        let h = if gens.is_empty() { Subgroup::trivial(&alphabet) } else { Subgroup::fold(&alphabet, &gens)? };
        for &e in members {
            carried[e] = h.conjugate(t(e))?;
        }
    }

    // `from[s]`: closure of the language read from `s`, built from the
    // last component backwards.
    let mut from: Vec<Option<ClosureNormalForm>> = vec![None; n];
    let unit = ClosureNormalForm::from_terms(&alphabet, [Term::singleton(ReducedWord::identity())]);
    for members in order.iter().rev() {
        let mut tails: Vec<(usize, ClosureNormalForm)> = Vec::with_capacity(members.len());
        for &e in members {
            let mut tail = if finals[e] { unit.clone() } else { ClosureNormalForm::empty(&alphabet) };
            for &(l, q) in &out[e] {
                if comp[q] != comp[e] {
                    let step = ClosureNormalForm::from_terms(&alphabet, [Term::singleton(ReducedWord::from_letters([l]))]);
                    tail = tail.union(&step.concat(from[q].as_ref().expect("later component"))?);
                }
            }
            tails.push((e, tail));
        }
        for &s in members {
            let ts = tree[s].as_ref().expect("spanned").inverse();
            let mut acc = ClosureNormalForm::empty(&alphabet);
            for (e, tail) in &tails {
                let w = ts.mul(tree[*e].as_ref().expect("spanned"));
                let head = ClosureNormalForm::from_terms(&alphabet, [Term::new(w, vec![carried[*e].clone()])]);
                acc = acc.union(&head.concat(tail)?);
            }
            from[s] = Some(acc);
        }
    }
    let mut nf = ClosureNormalForm::empty(&alphabet);
    for &i in a.initials() {
        nf = nf.union(from[i].as_ref().expect("every state is visited"));
    }
    Ok(nf)
}

/// Strongly connected components (Kosaraju): the component of every state
/// and the components' members in topological order.
fn components(out: &[Vec<(Letter, usize)>], rev: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = out.len();
    let mut seen = vec![false; n];
    let mut finish = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![(start, 0usize)];
        while let Some((u, i)) = stack.pop() {
            if let Some(&(_, v)) = out[u].get(i) {
                stack.push((u, i + 1));
                if !seen[v] {
                    seen[v] = true;
                    stack.push((v, 0));
                }
            } else {
                finish.push(u);
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut order = Vec::new();
    for &root in finish.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        let id = order.len();
        comp[root] = id;
        let mut members = vec![root];
        let mut i = 0;
        while i < members.len() {
            for &p in &rev[members[i]] {
                if comp[p] == usize::MAX {
                    comp[p] = id;
                    members.push(p);
                }
            }
            i += 1;
        }
        order.push(members);
    }
    (comp, order)
}
