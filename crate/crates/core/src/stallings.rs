//! Stallings subgroup graphs of finitely generated subgroups of `F(A)`.
//!
//! A [`Subgroup`] stores its folded, cored inverse automaton in canonical
//! form: vertices are numbered breadth-first from the base (vertex 0),
//! exploring letters in index order. Deterministic inverse automata are
//! rigid under that traversal, so two subgroups are equal exactly when their
//! stored graphs are identical.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::automata::{self, WordAutomaton};
use crate::error::{Error, Limits, Result};
use crate::freegroup::{Alphabet, Letter, ReducedWord};

/// A folded, cored, based inverse automaton with base vertex 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct StallingsGraph {
    width: usize,
    targets: Vec<Option<u32>>,
}

impl StallingsGraph {
    pub fn num_vertices(&self) -> usize {
        self.targets.len() / self.width
    }

    pub fn target(&self, v: usize, l: Letter) -> Option<usize> {
        self.targets[v * self.width + l.index()].map(|t| t as usize)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.targets[v * self.width..(v + 1) * self.width].iter().filter(|t| t.is_some()).count()
    }

    /// Positive edges `(source, letter, target)`.
    pub fn positive_edges(&self) -> impl Iterator<Item = (usize, Letter, usize)> + '_ {
        (0..self.num_vertices()).flat_map(move |v| {
            (0..self.width / 2).filter_map(move |g| {
                let l = Letter::new(g, false);
                self.target(v, l).map(|t| (v, l, t))
            })
        })
    }

    /// Every transition is defined (the graph is a coset graph).
    pub fn is_complete(&self) -> bool {
        self.targets.iter().all(Option::is_some)
    }

    /// Follows `letters` from `start`; `None` if the path leaves the graph.
    pub fn read(&self, start: usize, letters: &[Letter]) -> Option<usize> {
        letters.iter().try_fold(start, |v, &l| self.target(v, l))
    }
}

/// Union-find folding of an arbitrary labelled graph.
struct Folder {
    width: usize,
    parent: Vec<usize>,
    out: Vec<Vec<Option<usize>>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new(width: usize) -> Self {
        Folder { width, parent: Vec::new(), out: Vec::new(), pending: Vec::new() }
    }

    fn from_graph(g: &StallingsGraph) -> Self {
        let mut f = Folder::new(g.width);
        for _ in 0..g.num_vertices() {
            f.add_vertex();
        }
        for v in 0..g.num_vertices() {
            for l in 0..g.width {
                f.out[v][l] = g.targets[v * g.width + l].map(|t| t as usize);
            }
        }
        f
    }

    fn add_vertex(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.out.push(vec![None; self.width]);
        self.parent.len() - 1
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn set_half(&mut self, p: usize, l: Letter, q: usize) {
        let p = self.find(p);
        match self.out[p][l.index()] {
            Some(t) => self.pending.push((t, q)),
            None => self.out[p][l.index()] = Some(q),
        }
    }

    fn add_edge(&mut self, p: usize, l: Letter, q: usize) {
        self.set_half(p, l, q);
        self.set_half(q, l.inverse(), p);
    }

    /// Adds a closed path at `base` spelling `w`.
    fn add_loop(&mut self, base: usize, w: &[Letter]) {
        if w.is_empty() {
            return;
        }
        let mut cur = base;
        for (i, &l) in w.iter().enumerate() {
            let next = if i + 1 == w.len() { base } else { self.add_vertex() };
            self.add_edge(cur, l, next);
            cur = next;
        }
    }

    fn merge(&mut self, u: usize, v: usize) {
        self.pending.push((u, v));
    }

    fn run(&mut self) {
        self.run_with(&mut |_| 0);
    }

    /// Processes pending merges; `choose(n)` picks which of the `n` pending
    /// pairs goes next (counted from the end) and, by parity, which vertex
    /// survives.
    fn run_with(&mut self, choose: &mut dyn FnMut(usize) -> usize) {
        while !self.pending.is_empty() {
            let n = self.pending.len();
            let c = choose(n);
            let (u, v) = self.pending.swap_remove(n - 1 - c / 2 % n);
            let (u, v) = (self.find(u), self.find(v));
            if u == v {
                continue;
            }
            let (keep, gone) = if c.is_multiple_of(2) { (u.min(v), u.max(v)) } else { (u.max(v), u.min(v)) };
            self.parent[gone] = keep;
            let row = std::mem::take(&mut self.out[gone]);
            for (l, t) in row.into_iter().enumerate() {
                if let Some(t) = t {
                    match self.out[keep][l] {
                        Some(s) => self.pending.push((s, t)),
                        None => self.out[keep][l] = Some(t),
                    }
                }
            }
        }
    }

    fn finish(mut self, base: usize) -> StallingsGraph {
        self.run();
        self.canonical(base)
    }

    fn canonical(&mut self, base: usize) -> StallingsGraph {
        let n = self.parent.len();
        let mut targets = vec![None; n * self.width];
        for v in 0..n {
            if self.find(v) != v {
                continue;
            }
            for l in 0..self.width {
                if let Some(t) = self.out[v][l] {
                    targets[v * self.width + l] = Some(self.find(t));
                }
            }
        }
        let base = self.find(base);
        core_and_canonicalize(self.width, n, targets, base)
    }
}

/// Prunes degree-one non-base vertices to a fixpoint and renumbers
/// breadth-first from the base.
fn core_and_canonicalize(width: usize, n: usize, mut targets: Vec<Option<usize>>, base: usize) -> StallingsGraph {
    let mut degree: Vec<usize> =
        (0..n).map(|v| targets[v * width..(v + 1) * width].iter().filter(|t| t.is_some()).count()).collect();
    let mut removed = vec![false; n];
    let mut queue: Vec<usize> = (0..n).filter(|&v| v != base && degree[v] == 1).collect();
    while let Some(v) = queue.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for l in 0..width {
            if let Some(t) = targets[v * width + l].take() {
                targets[t * width + (l ^ 1)] = None;
                degree[t] -= 1;
                if t != base && degree[t] == 1 {
                    queue.push(t);
                }
            }
        }
    }
    let mut number = vec![usize::MAX; n];
    let mut order = vec![base];
    number[base] = 0;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for l in 0..width {
            if let Some(t) = targets[v * width + l] {
                if number[t] == usize::MAX {
                    number[t] = order.len();
                    order.push(t);
                }
            }
        }
        i += 1;
    }
    let mut out = vec![None; order.len() * width];
    for (new, &old) in order.iter().enumerate() {
        for l in 0..width {
            out[new * width + l] = targets[old * width + l].map(|t| number[t] as u32);
        }
    }
    StallingsGraph { width, targets: out }
}

/// Index of a subgroup in the ambient free group.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubgroupIndex {
    Finite(usize),
    Infinite,
}

/// Summary returned by [`Subgroup::report`].
#[derive(Clone, Debug)]
pub struct SubgroupReport {
    pub basis: Vec<ReducedWord>,
    pub rank: usize,
    pub index: SubgroupIndex,
    pub language: WordAutomaton,
}

/// An element of the list given to [`Subgroup::join`].
#[derive(Clone, Debug)]
pub enum JoinPart {
    Subgroup(Subgroup),
    Word(ReducedWord),
}

/// BFS spanning tree of a subgroup graph and the basis it induces.
struct SpanningTree {
    /// Reduced label of the tree path from the base to each vertex.
    prefix: Vec<ReducedWord>,
    /// Positive non-tree edges, in basis order.
    extra: Vec<(usize, Letter, usize)>,
    /// Basis coordinate of a positive non-tree edge `(vertex, letter)`.
    coordinate: HashMap<(usize, Letter), usize>,
}

/// A finitely generated subgroup of `F(A)`, held as its Stallings graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subgroup {
    alphabet: Alphabet,
    graph: StallingsGraph,
}

impl Subgroup {
    /// Folds the bouquet of generator loops into `𝒜(⟨generators⟩)`.
    pub fn fold(alphabet: &Alphabet, generators: &[ReducedWord]) -> Result<Self> {
        for g in generators {
            alphabet.check(g.letters())?;
        }
        let mut f = Folder::new(alphabet.width());
        let base = f.add_vertex();
        for g in generators {
            f.add_loop(base, g.letters());
        }
        Ok(Subgroup { alphabet: alphabet.clone(), graph: f.finish(base) })
    }

    /// Folds with a caller-chosen schedule: generators are added in the given
    /// order and `choose` drives the order of identifications. The result does
    /// not depend on the schedule.
    pub fn fold_with_schedule(
        alphabet: &Alphabet,
        generators: &[ReducedWord],
        choose: &mut dyn FnMut(usize) -> usize,
    ) -> Result<Self> {
        for g in generators {
            alphabet.check(g.letters())?;
        }
        let mut f = Folder::new(alphabet.width());
        let base = f.add_vertex();
        for g in generators {
            f.add_loop(base, g.letters());
            if choose(2) == 0 {
                f.run_with(choose);
            }
        }
        f.run_with(choose);
        Ok(Subgroup { alphabet: alphabet.clone(), graph: f.canonical(base) })
    }

    /// Parses a comma-separated generator list, e.g. `"aa,b"`.
    pub fn parse(alphabet: &Alphabet, generators: &str) -> Result<Self> {
        Self::fold(alphabet, &alphabet.parse_word_list(generators)?)
    }

    pub fn trivial(alphabet: &Alphabet) -> Self {
        Self::fold(alphabet, &[]).expect("no generators")
    }

    /// The whole free group (the bouquet of all generators).
    pub fn whole(alphabet: &Alphabet) -> Self {
        let gens: Vec<ReducedWord> =
            alphabet.positive_letters().map(|l| ReducedWord::from_letters([l])).collect();
        Self::fold(alphabet, &gens).expect("generators in alphabet")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn graph(&self) -> &StallingsGraph {
        &self.graph
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn is_trivial(&self) -> bool {
        self.graph.num_vertices() == 1 && self.graph.degree(0) == 0
    }

    pub fn is_whole(&self) -> bool {
        self.graph.num_vertices() == 1 && self.graph.is_complete()
    }

    /// Whether the reduced word `w` labels a closed path at the base.
    pub fn member(&self, w: &ReducedWord) -> Result<bool> {
        self.alphabet.check(w.letters())?;
        Ok(self.graph.read(0, w.letters()) == Some(0))
    }

    fn spanning_tree(&self) -> SpanningTree {
        let g = &self.graph;
        let n = g.num_vertices();
        let mut parent: Vec<Option<(usize, Letter)>> = vec![None; n];
        let mut prefix = vec![ReducedWord::identity(); n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for l in self.alphabet.letters() {
                if let Some(t) = g.target(v, l) {
                    if !seen[t] {
                        seen[t] = true;
                        parent[t] = Some((v, l));
                        prefix[t] = prefix[v].mul(&ReducedWord::from_letters([l]));
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut extra = Vec::new();
        let mut coordinate = HashMap::new();
        for (p, l, q) in g.positive_edges() {
            let is_tree = parent[q] == Some((p, l)) || parent[p] == Some((q, l.inverse()));
            if !is_tree {
                coordinate.insert((p, l), extra.len());
                extra.push((p, l, q));
            }
        }
        SpanningTree { prefix, extra, coordinate }
    }

    /// Free basis: one element per positive edge outside a BFS spanning tree.
    pub fn basis(&self) -> Vec<ReducedWord> {
        let tree = self.spanning_tree();
        tree.extra
            .iter()
            .map(|&(p, l, q)| {
                tree.prefix[p].mul(&ReducedWord::from_letters([l])).mul(&tree.prefix[q].inverse())
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let edges = self.graph.positive_edges().count();
        edges + 1 - self.graph.num_vertices()
    }

    pub fn index(&self) -> SubgroupIndex {
        if self.graph.is_complete() {
            SubgroupIndex::Finite(self.graph.num_vertices())
        } else {
            SubgroupIndex::Infinite
        }
    }

    /// Coordinates of `w ∈ self` in the basis of [`Self::basis`], i.e. the
    /// image of `w` in the abelianization of this subgroup. `None` when `w`
    /// is not a member.
    pub fn coordinates(&self, w: &ReducedWord) -> Option<Vec<i64>> {
        let tree = self.spanning_tree();
        let mut coords = vec![0i64; tree.extra.len()];
        let mut v = 0;
        for &l in w.letters() {
            let t = self.graph.target(v, l)?;
            if l.is_inverse() {
                if let Some(&i) = tree.coordinate.get(&(t, l.inverse())) {
                    coords[i] -= 1;
                }
            } else if let Some(&i) = tree.coordinate.get(&(v, l)) {
                coords[i] += 1;
            }
            v = t;
        }
        (v == 0).then_some(coords)
    }

    /// The graph as an (unreduced) automaton with the base initial and final.
    pub fn automaton(&self) -> WordAutomaton {
        let g = &self.graph;
        let edges = (0..g.num_vertices())
            .flat_map(|v| self.alphabet.letters().filter_map(move |l| g.target(v, l).map(|t| (v, l, t))))
            .collect();
        WordAutomaton::new(self.alphabet.clone(), g.num_vertices(), edges, vec![0], vec![0], false)
            .expect("graph indices are valid")
    }

    /// Reduced words of the subgroup, as a Benois-reduced automaton.
    pub fn language(&self, limits: &Limits) -> Result<WordAutomaton> {
        automata::benois_reduce(&self.automaton(), limits)
    }

    pub fn report(&self, limits: &Limits) -> Result<SubgroupReport> {
        let basis = self.basis();
        Ok(SubgroupReport {
            rank: basis.len(),
            basis,
            index: self.index(),
            language: self.language(limits)?,
        })
    }

    /// `self ∩ other` via the product graph.
    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.alphabet.ensure_same(&other.alphabet)?;
        let width = self.alphabet.width();
        let mut index: HashMap<(usize, usize), usize> = HashMap::from([((0, 0), 0)]);
        let mut order = vec![(0usize, 0usize)];
        let mut targets: Vec<Option<usize>> = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (p, q) = order[i];
            for l in self.alphabet.letters() {
                let t = match (self.graph.target(p, l), other.graph.target(q, l)) {
                    (Some(p2), Some(q2)) => {
                        let next = order.len();
                        let id = *index.entry((p2, q2)).or_insert_with(|| {
                            order.push((p2, q2));
                            next
                        });
                        Some(id)
                    }
                    _ => None,
                };
                targets.push(t);
            }
            i += 1;
        }
        let graph = core_and_canonicalize(width, order.len(), targets, 0);
        Ok(Subgroup { alphabet: self.alphabet.clone(), graph })
    }

    /// Splits off the hanging path at the base: returns `(x, C)` with
    /// `self = x·C·x⁻¹` and the base of `C` not of degree one.
    pub fn strip_stem(&self) -> (ReducedWord, Subgroup) {
        let mut x = Vec::new();
        let mut c = self.clone();
        while c.graph.num_vertices() > 1 && c.graph.degree(0) == 1 {
            let l = (0..c.graph.width)
                .map(Letter::from_index)
                .find(|&l| c.graph.target(0, l).is_some())
                .expect("degree one");
            x.push(l);
            c = c.conjugate(&ReducedWord::from_letters([l])).expect("letter of the alphabet");
        }
        (ReducedWord::from_letters(x), c)
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate(&self, g: &ReducedWord) -> Result<Subgroup> {
        self.alphabet.check(g.letters())?;
        if g.is_empty() {
            return Ok(self.clone());
        }
        let gens: Vec<ReducedWord> = self.basis().iter().map(|h| g.conjugate(h)).collect();
        Self::fold(&self.alphabet, &gens)
    }

    /// The subgroup generated by all the given subgroups and elements.
    pub fn join(alphabet: &Alphabet, parts: &[JoinPart]) -> Result<Subgroup> {
        if parts.is_empty() {
            return Err(Error::Precondition("join of an empty list".into()));
        }
        let mut gens = Vec::new();
        for part in parts {
            match part {
                JoinPart::Subgroup(h) => {
                    alphabet.ensure_same(&h.alphabet)?;
                    gens.extend(h.basis());
                }
                JoinPart::Word(w) => gens.push(w.clone()),
            }
        }
        Self::fold(alphabet, &gens)
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Subgroup) -> Result<bool> {
        self.alphabet.ensure_same(&other.alphabet)?;
        for b in other.basis() {
            if !self.member(&b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Identifies two vertices and refolds.
    pub fn merge_vertices(&self, u: usize, v: usize) -> Subgroup {
        let mut f = Folder::from_graph(&self.graph);
        f.merge(u, v);
        Subgroup { alphabet: self.alphabet.clone(), graph: f.finish(0) }
    }

    /// All subgroups whose Stallings graph is a quotient of this one,
    /// including `self`, in breadth-first discovery order.
    pub fn overgroups(&self, limits: &Limits) -> Result<Vec<Subgroup>> {
        Ok(OvergroupLattice::build(self, limits)?.nodes)
    }

    pub fn to_json(&self) -> String {
        let dto = GraphJson {
            alphabet: self.alphabet.names().iter().map(|c| c.to_string()).collect(),
            vertices: self.graph.num_vertices(),
            base: 0,
            edges: self
                .graph
                .positive_edges()
                .map(|(p, l, q)| (p, self.alphabet.letter_char(l).to_string(), q))
                .collect(),
        };
        serde_json::to_string(&dto).expect("graph serializes")
    }

    /// Reads `{"alphabet":[..],"base":b,"edges":[[p,"a",q],..]}`; the graph
    /// is folded and cored, so any labelled graph is accepted.
    pub fn from_json(s: &str) -> Result<Self> {
        let dto: GraphJson = serde_json::from_str(s)?;
        let alphabet = automata::alphabet_from_names(&dto.alphabet)?;
        let needed = dto.edges.iter().map(|(p, _, q)| p.max(q) + 1).max().unwrap_or(0);
        let n = dto.vertices.max(needed).max(dto.base + 1);
        let mut f = Folder::new(alphabet.width());
        for _ in 0..n {
            f.add_vertex();
        }
        for (p, label, q) in &dto.edges {
            let l = automata::single_letter(&alphabet, label)?;
            f.add_edge(*p, l, *q);
        }
        Ok(Subgroup { graph: f.finish(dto.base), alphabet })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph stallings {\n  node [shape=circle];\n  0 [shape=doublecircle];\n");
        for (p, l, q) in self.graph.positive_edges() {
            let _ = writeln!(out, "  {p} -> {q} [label=\"{}\"];", self.alphabet.letter_char(l));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    alphabet: Vec<String>,
    #[serde(default)]
    vertices: usize,
    base: usize,
    edges: Vec<(usize, String, usize)>,
}

/// The overgroups of a subgroup together with the single-merge relation.
#[derive(Clone, Debug)]
pub struct OvergroupLattice {
    /// `nodes[0]` is the subgroup the lattice was built from.
    pub nodes: Vec<Subgroup>,
    /// `covers[i]`: nodes obtained from `nodes[i]` by merging one vertex pair.
    pub covers: Vec<Vec<usize>>,
}

impl OvergroupLattice {
    /// Breadth-first exploration of single vertex-pair merges, memoized on
    /// canonical graphs. Every quotient arises from a sequence of pairwise
    /// merges, so the explored set is the full set of overgroups.
    pub fn build(h: &Subgroup, limits: &Limits) -> Result<Self> {
        let mut index: HashMap<StallingsGraph, usize> = HashMap::from([(h.graph.clone(), 0)]);
        let mut nodes = vec![h.clone()];
        let mut covers = Vec::new();
        let mut i = 0;
        while i < nodes.len() {
            let cur = nodes[i].clone();
            let n = cur.num_vertices();
            let mut succ = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    let merged = cur.merge_vertices(u, v);
                    let next = nodes.len();
                    let id = *index.entry(merged.graph.clone()).or_insert(next);
                    if id == next {
                        nodes.push(merged);
                        if nodes.len() > limits.max_overgroups {
                            return Err(Error::ResourceCap { what: "overgroups", limit: limits.max_overgroups });
                        }
                    }
                    if !succ.contains(&id) {
                        succ.push(id);
                    }
                }
            }
            covers.push(succ);
            i += 1;
        }
        Ok(OvergroupLattice { nodes, covers })
    }

    /// Indices of the overgroups of `nodes[i]` (including `i`).
    pub fn reachable_from(&self, i: usize) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![i];
        seen[i] = true;
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            out.push(v);
            for &w in &self.covers[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    fn sg(s: &str) -> Subgroup {
        Subgroup::parse(&ab(), s).unwrap()
    }

    fn w(s: &str) -> ReducedWord {
        ab().parse_reduced(s).unwrap()
    }

    #[test]
    fn fold_examples() {
        let t = Subgroup::fold(&ab(), &[]).unwrap();
        assert_eq!(t.num_vertices(), 1);
        assert_eq!(t.graph().positive_edges().count(), 0);

        let h = sg("aa,b");
        let a = Letter::new(0, false);
        let b = Letter::new(1, false);
        assert_eq!(h.num_vertices(), 2);
        assert_eq!(h.graph().target(0, a), Some(1));
        assert_eq!(h.graph().target(1, a), Some(0));
        assert_eq!(h.graph().target(0, b), Some(0));
        assert_eq!(h.graph().target(1, b), None);

        let d = sg("a,a");
        assert_eq!(d.num_vertices(), 1);
        assert_eq!(d.graph().positive_edges().count(), 1);
    }

    #[test]
    fn member_examples() {
        let h = sg("aa,b");
        assert!(h.member(&w("aa")).unwrap());
        assert!(!h.member(&w("a")).unwrap());
        assert!(h.member(&w("")).unwrap());
        assert!(sg("ab").member(&w("")).unwrap());
    }

    #[test]
    fn report_examples() {
        let lim = Limits::default();
        let t = Subgroup::trivial(&ab()).report(&lim).unwrap();
        assert!(t.basis.is_empty());
        assert_eq!(t.index, SubgroupIndex::Infinite);

        let h = sg("aa,b").report(&lim).unwrap();
        assert_eq!(h.rank, 2);
        // The vertex reached by `a` has no `b`-edge, so the index is infinite.
        assert_eq!(h.index, SubgroupIndex::Infinite);
        assert_eq!(sg("aa,b,aBA").index(), SubgroupIndex::Finite(2));

        let a = sg("a").report(&lim).unwrap();
        assert_eq!(a.rank, 1);
        assert_eq!(a.index, SubgroupIndex::Infinite);
    }

    #[test]
    fn intersect_examples() {
        let h = sg("aa,b");
        assert_eq!(h.intersect(&h).unwrap(), h);
        assert!(sg("a").intersect(&sg("b")).unwrap().is_trivial());
        let hk = h.intersect(&sg("a,bbb")).unwrap();
        assert!(hk.member(&w("aa")).unwrap());
        assert!(!hk.member(&w("b")).unwrap());
        assert!(hk.member(&w("bbb")).unwrap());
    }

    #[test]
    fn conjugate_examples() {
        let h = sg("aa,b");
        assert_eq!(h.conjugate(&w("")).unwrap(), h);
        assert!(sg("a").conjugate(&w("b")).unwrap().member(&w("Bab")).unwrap());
        let g = w("abA");
        assert_eq!(h.conjugate(&g).unwrap().conjugate(&g.inverse()).unwrap(), h);
    }

    #[test]
    fn join_examples() {
        let a = ab();
        let j = Subgroup::join(&a, &[JoinPart::Subgroup(sg("a")), JoinPart::Word(w("b"))]).unwrap();
        assert!(j.is_whole());
        assert_eq!(Subgroup::join(&a, &[JoinPart::Subgroup(sg("aa,b"))]).unwrap(), sg("aa,b"));
        let j = Subgroup::join(&a, &[JoinPart::Subgroup(sg("aa")), JoinPart::Subgroup(sg("aaa"))]).unwrap();
        assert_eq!(j, sg("a"));
        assert!(Subgroup::join(&a, &[]).is_err());
    }

    #[test]
    fn contains_examples() {
        let f = Subgroup::whole(&ab());
        assert!(f.contains(&sg("abAB,bab")).unwrap());
        assert!(sg("aa,b").contains(&sg("aaaa")).unwrap());
        assert!(!sg("aa,b").contains(&sg("a")).unwrap());
    }

    #[test]
    fn overgroup_examples() {
        let lim = Limits::default();
        let o = sg("aa,b").overgroups(&lim).unwrap();
        assert_eq!(o.len(), 2);
        assert_eq!(o[0], sg("aa,b"));
        assert!(o[1].is_whole());
        assert_eq!(sg("a").overgroups(&lim).unwrap(), vec![sg("a")]);
        let t = Subgroup::trivial(&ab());
        assert_eq!(t.overgroups(&lim).unwrap(), vec![t.clone()]);
    }

    #[test]
    fn overgroups_of_cyclic_subgroup_are_divisor_subgroups() {
        // Overgroups of <a^6> in F(a) are <a^d> for d | 6.
        let a = Alphabet::parse("a").unwrap();
        let h = Subgroup::parse(&a, "aaaaaa").unwrap();
        let mut got: Vec<usize> = h.overgroups(&Limits::default()).unwrap().iter().map(|s| s.num_vertices()).collect();
        got.sort_unstable();
        assert_eq!(got, vec![1, 2, 3, 6]);
    }

    #[test]
    fn coordinates_follow_basis() {
        let h = sg("aa,b");
        let basis = h.basis();
        for (i, b) in basis.iter().enumerate() {
            let c = h.coordinates(b).unwrap();
            let expected: Vec<i64> = (0..basis.len()).map(|j| i64::from(i == j)).collect();
            assert_eq!(c, expected);
        }
        assert_eq!(h.coordinates(&w("a")), None);
    }

    #[test]
    fn json_round_trip() {
        let h = sg("aa,bab,Ab");
        assert_eq!(Subgroup::from_json(&h.to_json()).unwrap(), h);
        assert!(h.to_dot().contains("->"));
    }

    #[test]
    fn alphabet_mismatch_is_detected() {
        let other = Subgroup::parse(&Alphabet::parse("abc").unwrap(), "a").unwrap();
        assert!(sg("a").intersect(&other).is_err());
        assert!(sg("a").contains(&other).is_err());
    }
}
