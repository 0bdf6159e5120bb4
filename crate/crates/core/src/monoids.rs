//! Finite monoids given by multiplication tables, Green's J-relation, block
//! groups, and the `G_nil`-kernel with the membership tests it decides.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::automata::{self, WordAutomaton};
use crate::closures::Closures;
use crate::error::{Error, Limits, Result};
use crate::freegroup::{Alphabet, Letter};

/// A bare multiplication table with identity; elements are `0..size`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonoidTable {
    size: usize,
    table: Vec<usize>,
    identity: usize,
    names: Option<Vec<String>>,
}

impl MonoidTable {
    /// Validates closure, the identity law and associativity.
    pub fn new(size: usize, table: Vec<usize>, identity: usize, names: Option<Vec<String>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidMonoid("empty monoid".into()));
        }
        if table.len() != size * size {
            return Err(Error::InvalidMonoid(format!("table must be {size}×{size}")));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= size) {
            return Err(Error::InvalidMonoid(format!("entry {bad} out of range")));
        }
        if identity >= size {
            return Err(Error::InvalidMonoid(format!("identity {identity} out of range")));
        }
        if let Some(n) = &names {
            if n.len() != size {
                return Err(Error::InvalidMonoid("names must list every element".into()));
            }
        }
        let m = MonoidTable { size, table, identity, names };
        for x in 0..size {
            if m.mul(identity, x) != x || m.mul(x, identity) != x {
                return Err(Error::InvalidMonoid(format!("identity law fails at {}", m.name(x))));
            }
        }
        for x in 0..size {
            for y in 0..size {
                let xy = m.mul(x, y);
                for z in 0..size {
                    if m.mul(xy, z) != m.mul(x, m.mul(y, z)) {
                        return Err(Error::InvalidMonoid(format!(
                            "not associative at ({}, {}, {})",
                            m.name(x),
                            m.name(y),
                            m.name(z)
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<usize>], identity: usize, names: Option<Vec<String>>) -> Result<Self> {
        Self::new(rows.len(), rows.concat(), identity, names)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn product_of(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    /// Submonoid generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> ElementSubset {
        let mut seen = vec![false; self.size];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        ElementSubset(seen)
    }

    /// Two-sided inverse of `x`, if it is a unit.
    pub fn unit_inverse(&self, x: usize) -> Option<usize> {
        (0..self.size).find(|&y| self.mul(x, y) == self.identity && self.mul(y, x) == self.identity)
    }

    pub fn is_group(&self) -> bool {
        (0..self.size).all(|x| self.unit_inverse(x).is_some())
    }

    /// Nilpotency class of a group table via the lower central series;
    /// `None` if the series stabilizes above the trivial subgroup.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let inv: Vec<usize> = (0..self.size).map(|x| self.unit_inverse(x).expect("group")).collect();
        let mut gamma = ElementSubset::full(self.size);
        let mut class = 0;
        while gamma.len() > 1 {
            let mut comms = Vec::new();
            for x in gamma.iter() {
                for y in 0..self.size {
                    comms.push(self.product_of(&[inv[x], inv[y], x, y]));
                }
            }
            comms.sort_unstable();
            comms.dedup();
            let next = self.generated(&comms);
            if next == gamma {
                return None;
            }
            gamma = next;
            class += 1;
        }
        Some(class)
    }

    /// Restriction of the table to a submonoid.
    pub fn restrict(&self, sub: &ElementSubset) -> Result<MonoidTable> {
        let elems: Vec<usize> = sub.iter().collect();
        let pos: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut table = Vec::with_capacity(elems.len() * elems.len());
        for &x in &elems {
            for &y in &elems {
                let z = self.mul(x, y);
                table.push(*pos.get(&z).ok_or_else(|| Error::Precondition("subset is not a submonoid".into()))?);
            }
        }
        let identity = *pos.get(&self.identity).ok_or_else(|| Error::Precondition("subset misses the identity".into()))?;
        let names = Some(elems.iter().map(|&x| self.name(x)).collect());
        MonoidTable::new(elems.len(), table, identity, names)
    }

    /// Componentwise product; element `(m, n)` has index `m·|N| + n`.
    pub fn direct_product(&self, other: &MonoidTable, limits: &Limits) -> Result<MonoidTable> {
        let size = self.size * other.size;
        if size > limits.max_monoid_size {
            return Err(Error::ResourceCap { what: "monoid size", limit: limits.max_monoid_size });
        }
        let mut table = Vec::with_capacity(size * size);
        for (x1, x2) in (0..self.size).flat_map(|a| (0..other.size).map(move |b| (a, b))) {
            for (y1, y2) in (0..self.size).flat_map(|a| (0..other.size).map(move |b| (a, b))) {
                table.push(self.mul(x1, y1) * other.size + other.mul(x2, y2));
            }
        }
        let names = (0..self.size)
            .flat_map(|a| (0..other.size).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", self.name(a), other.name(b)))
            .collect();
        Ok(MonoidTable { size, table, identity: self.identity * other.size + other.identity, names: Some(names) })
    }
}

/// A subset of the elements of a monoid.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElementSubset(Vec<bool>);

impl ElementSubset {
    pub fn empty(size: usize) -> Self {
        ElementSubset(vec![false; size])
    }

    pub fn full(size: usize) -> Self {
        ElementSubset(vec![true; size])
    }

    pub fn from_elements(size: usize, elems: &[usize]) -> Self {
        let mut s = Self::empty(size);
        for &x in elems {
            s.0[x] = true;
        }
        s
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0[x]
    }

    pub fn insert(&mut self, x: usize) {
        self.0[x] = true;
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn len(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// A finite monoid with a generating map from an alphabet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteMonoid {
    table: MonoidTable,
    alphabet: Alphabet,
    generators: Vec<usize>,
}

impl FiniteMonoid {
    /// `generators[i]` is the image of the i-th letter; they must generate.
    pub fn new(table: MonoidTable, alphabet: Alphabet, generators: Vec<usize>) -> Result<Self> {
        if generators.len() != alphabet.rank() {
            return Err(Error::InvalidMonoid("one generator image per letter is required".into()));
        }
        if let Some(&bad) = generators.iter().find(|&&g| g >= table.size) {
            return Err(Error::InvalidMonoid(format!("generator image {bad} out of range")));
        }
        let reached = table.generated(&generators);
        if reached.len() != table.size {
            let missing = (0..table.size).find(|&x| !reached.contains(x)).expect("some element missing");
            return Err(Error::InvalidMonoid(format!("generators do not generate {}", table.name(missing))));
        }
        Ok(FiniteMonoid { table, alphabet, generators })
    }

    /// Uses every non-identity element as a generator, named `a`, `b`, ….
    pub fn with_all_generators(table: MonoidTable) -> Result<Self> {
        let gens: Vec<usize> = (0..table.size).filter(|&x| x != table.identity).collect();
        if gens.len() > 26 {
            return Err(Error::InvalidMonoid("too many elements to synthesize generator names".into()));
        }
        if gens.is_empty() {
            // The trivial monoid still needs a nonempty alphabet.
            let identity = table.identity;
            return FiniteMonoid::new(table, Alphabet::standard(1)?, vec![identity]);
        }
        FiniteMonoid::new(table, Alphabet::standard(gens.len())?, gens)
    }

    pub fn table(&self) -> &MonoidTable {
        &self.table
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn size(&self) -> usize {
        self.table.size
    }

    pub fn identity(&self) -> usize {
        self.table.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table.mul(x, y)
    }

    pub fn name(&self, x: usize) -> String {
        self.table.name(x)
    }

    /// Looks up an element by name, or by index when unnamed.
    pub fn element(&self, name: &str) -> Result<usize> {
        (0..self.size())
            .find(|&x| self.name(x) == name)
            .ok_or_else(|| Error::Parse(format!("unknown element {name:?}")))
    }

    /// `[u]_M` for a word over the positive letters.
    pub fn evaluate(&self, letters: &[Letter]) -> Result<usize> {
        self.alphabet.check(letters)?;
        let mut x = self.identity();
        for l in letters {
            if l.is_inverse() {
                return Err(Error::Precondition("monoid words use positive letters only".into()));
            }
            x = self.mul(x, self.generators[l.generator()]);
        }
        Ok(x)
    }

    /// `M × N`, generated by `(g, 1)` and `(1, h)`.
    pub fn direct_product(&self, other: &FiniteMonoid, limits: &Limits) -> Result<FiniteMonoid> {
        let table = self.table.direct_product(&other.table, limits)?;
        let n = other.size();
        let mut gens: Vec<usize> = self.generators.iter().map(|&g| g * n + other.identity()).collect();
        gens.extend(other.generators.iter().map(|&h| self.identity() * n + h));
        let alphabet = Alphabet::standard(gens.len())?;
        FiniteMonoid::new(table, alphabet, gens)
    }

    pub fn to_json(&self) -> String {
        let dto = MonoidJson {
            size: self.size(),
            identity: self.identity(),
            table: self.table.rows(),
            generators: Some(
                self.alphabet
                    .names()
                    .iter()
                    .zip(&self.generators)
                    .map(|(c, &g)| (c.to_string(), g))
                    .collect(),
            ),
            names: self.table.names.clone(),
        };
        serde_json::to_string(&dto).expect("monoid serializes")
    }

    /// Reads `{"size","identity","table","generators"?,"names"?}`.
    pub fn from_json(s: &str) -> Result<Self> {
        let dto: MonoidJson = serde_json::from_str(s)?;
        load_monoid(dto)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct MonoidJson {
    pub size: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

fn load_monoid(dto: MonoidJson) -> Result<FiniteMonoid> {
    if dto.table.len() != dto.size || dto.table.iter().any(|r| r.len() != dto.size) {
        return Err(Error::InvalidMonoid(format!("table must be {0}×{0}", dto.size)));
    }
    let table = MonoidTable::new(dto.size, dto.table.concat(), dto.identity, dto.names)?;
    match dto.generators {
        None => FiniteMonoid::with_all_generators(table),
        Some(map) => {
            let mut chars = Vec::new();
            for k in map.keys() {
                let mut it = k.chars();
                match (it.next(), it.next()) {
                    (Some(c), None) => chars.push(c),
                    _ => return Err(Error::InvalidAlphabet(format!("generator name {k:?} is not a single letter"))),
                }
            }
            let alphabet = Alphabet::new(chars)?;
            FiniteMonoid::new(table, alphabet, map.into_values().collect())
        }
    }
}

/// Green's J-classes, regularity and inverses.
#[derive(Clone, Debug)]
pub struct StructureReport {
    pub j_classes: Vec<Vec<usize>>,
    pub is_j_trivial: bool,
    pub regulars: ElementSubset,
    /// The generalized inverse of each element that has exactly one.
    pub inverse_map: Vec<Option<usize>>,
    pub is_block_group: bool,
    pub is_group: bool,
    pub is_nilpotent_group: bool,
}

/// All `b` with `aba = a` and `bab = b`.
pub fn generalized_inverses(m: &MonoidTable, a: usize) -> Vec<usize> {
    (0..m.size).filter(|&b| m.product_of(&[a, b, a]) == a && m.product_of(&[b, a, b]) == b).collect()
}

pub fn analyze_table(m: &MonoidTable) -> StructureReport {
    let n = m.size;
    let ideals: Vec<Vec<bool>> = (0..n)
        .map(|x| {
            let mut ideal = vec![false; n];
            for s in 0..n {
                let sx = m.mul(s, x);
                for t in 0..n {
                    ideal[m.mul(sx, t)] = true;
                }
            }
            ideal
        })
        .collect();
    let mut classes: BTreeMap<&Vec<bool>, Vec<usize>> = BTreeMap::new();
    for (x, ideal) in ideals.iter().enumerate() {
        classes.entry(ideal).or_default().push(x);
    }
    let mut j_classes: Vec<Vec<usize>> = classes.into_values().collect();
    j_classes.sort();
    let inverses: Vec<Vec<usize>> = (0..n).map(|a| generalized_inverses(m, a)).collect();
    let regulars = ElementSubset(inverses.iter().map(|i| !i.is_empty()).collect());
    let inverse_map = inverses.iter().map(|i| if i.len() == 1 { Some(i[0]) } else { None }).collect();
    let is_group = m.is_group();
    StructureReport {
        is_j_trivial: j_classes.iter().all(|c| c.len() == 1),
        j_classes,
        regulars,
        inverse_map,
        is_block_group: inverses.iter().all(|i| i.len() <= 1),
        is_group,
        is_nilpotent_group: is_group && m.nilpotency_class().is_some(),
    }
}

pub fn analyze_structure(m: &FiniteMonoid) -> StructureReport {
    analyze_table(&m.table)
}

/// Deterministic automaton over the positive letters accepting the words
/// whose value in `m` is `target`.
pub fn cayley_language(m: &FiniteMonoid, target: usize) -> Result<WordAutomaton> {
    if target >= m.size() {
        return Err(Error::Precondition(format!("element {target} out of range")));
    }
    let mut edges = Vec::new();
    for x in 0..m.size() {
        for (i, &g) in m.generators.iter().enumerate() {
            edges.push((x, Letter::new(i, false), m.mul(x, g)));
        }
    }
    let a = WordAutomaton::new(m.alphabet.clone(), m.size(), edges, vec![m.identity()], vec![target], true)?;
    Ok(a.trim())
}

/// Whether `1` lies in the pro-nilpotent closure of `L_{m₁}⋯L_{m_k}`.
pub fn liftable(engine: &Closures, m: &FiniteMonoid, tuple: &[usize]) -> Result<bool> {
    if tuple.is_empty() {
        return Err(Error::Precondition("liftable needs a nonempty tuple".into()));
    }
    let mut lang = WordAutomaton::epsilon(&m.alphabet);
    for &x in tuple {
        lang = automata::concat(&lang, &cayley_language(m, x)?)?;
    }
    let closure = engine.nil_closure_automaton(&lang)?;
    automata::accepts(&closure, &crate::freegroup::Word(Vec::new()))
}

/// `K_{G_nil}(M)`: the elements `m` with `(m)` liftable.
pub fn gnil_kernel(engine: &Closures, m: &FiniteMonoid) -> Result<ElementSubset> {
    let mut k = ElementSubset::empty(m.size());
    for x in 0..m.size() {
        if liftable(engine, m, &[x])? {
            k.insert(x);
        }
    }
    Ok(k)
}

fn unique_inverse(m: &FiniteMonoid, x: usize) -> Result<usize> {
    match generalized_inverses(&m.table, x).as_slice() {
        [y] => Ok(*y),
        [] => Err(Error::Precondition(format!("{} is not regular", m.name(x)))),
        _ => Err(Error::Precondition(format!("{} has several generalized inverses", m.name(x)))),
    }
}

/// Whether `{α, β}` is `G_nil`-pointlike, i.e. `(α, β′)` is liftable.
pub fn pointlike_pair(engine: &Closures, m: &FiniteMonoid, alpha: usize, beta: usize) -> Result<bool> {
    unique_inverse(m, alpha)?;
    let beta_inv = unique_inverse(m, beta)?;
    liftable(engine, m, &[alpha, beta_inv])
}

/// Evidence accompanying a [`JStarReport`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Certificate {
    /// All checks passed.
    None,
    /// `element` has several generalized inverses, so `M` is not a block group.
    NotBlockGroup { element: usize, inverses: Vec<usize> },
    /// A pointlike pair with `αα′ββ′ ≠ αβ′`.
    FailingPair { alpha: usize, beta: usize },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JStarReport {
    pub member: bool,
    pub certificate: Certificate,
}

/// Membership of `M` in `J ∗ G_nil`.
pub fn in_j_star_gnil(engine: &Closures, m: &FiniteMonoid) -> Result<JStarReport> {
    let t = &m.table;
    for x in 0..m.size() {
        let inv = generalized_inverses(t, x);
        if inv.len() > 1 {
            return Ok(JStarReport { member: false, certificate: Certificate::NotBlockGroup { element: x, inverses: inv } });
        }
    }
    let report = analyze_table(t);
    let inv = |x: usize| report.inverse_map[x].expect("regular element of a block group");
    let regulars = report.regulars.to_vec();
    for &beta in &regulars {
        for &alpha in &regulars {
            let lhs = t.product_of(&[alpha, inv(alpha), beta, inv(beta)]);
            let rhs = t.mul(alpha, inv(beta));
            if lhs != rhs && pointlike_pair(engine, m, alpha, beta)? {
                return Ok(JStarReport { member: false, certificate: Certificate::FailingPair { alpha, beta } });
            }
        }
    }
    Ok(JStarReport { member: true, certificate: Certificate::None })
}

/// Membership of `M` in `J ⓜ G_nil`: J-triviality of the `G_nil`-kernel.
pub fn in_j_malcev_gnil(engine: &Closures, m: &FiniteMonoid) -> Result<bool> {
    let k = gnil_kernel(engine, m)?;
    Ok(analyze_table(&m.table.restrict(&k)?).is_j_trivial)
}

/// Small monoids used as fixtures and examples.
pub mod standard {
    use super::*;

    fn named(n: &[&str]) -> Option<Vec<String>> {
        Some(n.iter().map(|s| s.to_string()).collect())
    }

    fn build(rows: &[Vec<usize>], identity: usize, names: &[&str], gens: &[usize]) -> FiniteMonoid {
        let table = MonoidTable::from_rows(rows, identity, named(names)).expect("valid table");
        FiniteMonoid::new(table, Alphabet::standard(gens.len()).expect("rank"), gens.to_vec()).expect("generates")
    }

    pub fn trivial() -> FiniteMonoid {
        build(&[vec![0]], 0, &["1"], &[0])
    }

    /// `{1, 0}` generated by `a ↦ 0`.
    pub fn u1() -> FiniteMonoid {
        build(&[vec![0, 1], vec![1, 1]], 0, &["1", "0"], &[1])
    }

    /// `Z/n` generated by `a ↦ 1`.
    pub fn cyclic(n: usize) -> FiniteMonoid {
        let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        let names: Vec<String> = (0..n).map(|x| x.to_string()).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        build(&rows, 0, &names, &[1 % n])
    }

    /// `S₃` generated by `a ↦ (123)` and `b ↦ (12)`.
    pub fn s3() -> FiniteMonoid {
        // Permutations of {1,2,3} as image tuples; composition applies the left factor first.
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [2, 1, 0], [0, 2, 1]];
        let names = ["e", "(123)", "(132)", "(12)", "(13)", "(23)"];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("permutation");
        let rows: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| perms.iter().map(|q| idx([q[p[0]], q[p[1]], q[p[2]]])).collect())
            .collect();
        build(&rows, 0, &names, &[1, 3])
    }

    /// `{1, r₁, r₂}` with `x·r = r` for `r ∈ {r₁, r₂}`.
    pub fn right_zero() -> FiniteMonoid {
        build(&[vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 2]], 0, &["1", "r1", "r2"], &[1, 2])
    }

    /// The Brandt monoid `B₂¹` generated by `a = e₁₂` and `b = e₂₁`.
    pub fn brandt() -> FiniteMonoid {
        // Elements: 1, e12, e21, e11, e22, 0 as 2×2 matrix units.
        let unit = |i: usize, j: usize| 1 + [(0, 1), (1, 0), (0, 0), (1, 1)].iter().position(|&p| p == (i, j)).unwrap();
        let coords = [(0, 1), (1, 0), (0, 0), (1, 1)];
        let mul = |x: usize, y: usize| -> usize {
            match (x, y) {
                (0, y) => y,
                (x, 0) => x,
                (5, _) | (_, 5) => 5,
                (x, y) => {
                    let (i, j) = coords[x - 1];
                    let (k, l) = coords[y - 1];
                    if j == k { unit(i, l) } else { 5 }
                }
            }
        };
        let rows: Vec<Vec<usize>> = (0..6).map(|x| (0..6).map(|y| mul(x, y)).collect()).collect();
        build(&rows, 0, &["1", "e12", "e21", "e11", "e22", "0"], &[1, 2])
    }

    /// Every fixture monoid with its name.
    pub fn corpus() -> Vec<(&'static str, FiniteMonoid)> {
        vec![
            ("trivial", trivial()),
            ("u1", u1()),
            ("z2", cyclic(2)),
            ("z4", cyclic(4)),
            ("z6", cyclic(6)),
            ("s3", s3()),
            ("right_zero", right_zero()),
            ("b2", brandt()),
        ]
    }
}
