//! Closures of subgroups, subgroup products and rational subsets of a free
//! group in the pro-p, pro-nilpotent and profinite topologies.
//!
//! [`Closures`] carries the resource limits and memoizes overgroup lattices,
//! prime spectra and product closures, which the monoid algorithms request
//! many times over.

mod normal_form;
mod primes;
mod pseudonorm;
mod smith;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::automata::{self, RationalExpression, WordAutomaton};
use crate::error::{Error, Limits, Result};
use crate::freegroup::{Alphabet, ReducedWord};
use crate::stallings::{OvergroupLattice, Subgroup};

pub use normal_form::{nf_to_automaton, pro_g_closure, pro_g_closure_automaton, ClosureNormalForm, Term};
pub use primes::{is_prime, prime_divisors, PrimeSet};
pub use pseudonorm::{distance, pseudonorm, DyadicNorm, Pseudonorm};
pub use smith::{smith_normal_form, ElementaryDivisors, IntegerMatrix};

/// Primes `p` such that `k` is dense in `l` for the pro-p topology.
///
/// `k` is p-dense in `l` iff it maps onto `l/[l,l]lᵖ`, i.e. iff the
/// abelianized coordinates of a basis of `k` span `(Z/p)^rank(l)`.
pub fn dense_primes(k: &Subgroup, l: &Subgroup) -> Result<PrimeSet> {
    if !l.contains(k)? {
        return Err(Error::Precondition("dense_primes requires K ⊆ L".into()));
    }
    Ok(dense_primes_unchecked(k, l))
}

fn dense_primes_unchecked(k: &Subgroup, l: &Subgroup) -> PrimeSet {
    let cols = l.rank();
    if cols == 0 {
        return PrimeSet::all();
    }
    let rows: Vec<Vec<i64>> =
        k.basis().iter().map(|b| l.coordinates(b).expect("K ⊆ L")).collect();
    let snf = smith_normal_form(&IntegerMatrix::from_rows(cols, &rows));
    if snf.rank() < cols {
        return PrimeSet::none();
    }
    let last = snf.last().expect("full rank").magnitude().clone();
    PrimeSet::all_except(prime_divisors(&last))
}

/// Overgroup lattice of a subgroup with the prime spectrum of every node.
///
/// The lattice is built on the stem-free core `C` of `H = x·C·x⁻¹`;
/// `nodes` holds its nodes conjugated back, so `nodes[0] = H`.
#[derive(Debug)]
pub struct LatticeInfo {
    pub lattice: OvergroupLattice,
    pub stem: ReducedWord,
    pub nodes: Vec<Subgroup>,
    /// `reach[i]`: indices of the overgroups of node `i`.
    pub reach: Vec<Vec<usize>>,
    /// `primes[i]`: primes for which node `i` is closed.
    pub primes: Vec<PrimeSet>,
}

impl LatticeInfo {
    fn build(h: &Subgroup, limits: &Limits) -> Result<Self> {
        let lattice = OvergroupLattice::build(h, limits)?;
        let n = lattice.nodes.len();
        let reach: Vec<Vec<usize>> = (0..n).map(|i| lattice.reachable_from(i)).collect();
        let primes = (0..n)
            .map(|i| {
                let dense = reach[i]
                    .iter()
                    .filter(|&&j| j != i)
                    .fold(PrimeSet::none(), |acc, &j| {
                        acc.union(&dense_primes_unchecked(&lattice.nodes[i], &lattice.nodes[j]))
                    });
                dense.complement()
            })
            .collect();
        let nodes = lattice.nodes.clone();
        Ok(LatticeInfo { lattice, stem: ReducedWord::identity(), nodes, reach, primes })
    }

    fn with_stem(&self, stem: ReducedWord) -> Result<Self> {
        let back = stem.inverse();
        let nodes = self.lattice.nodes.iter().map(|n| n.conjugate(&back)).collect::<Result<Vec<_>>>()?;
        Ok(LatticeInfo { lattice: self.lattice.clone(), stem, nodes, reach: self.reach.clone(), primes: self.primes.clone() })
    }

    /// Whether node `j` contains node `i`.
    pub fn contains(&self, j: usize, i: usize) -> bool {
        self.reach[i].binary_search(&j).is_ok()
    }
}

/// One overgroup index per factor.
pub type Tuple = Vec<usize>;

#[derive(Default)]
struct Cache {
    lattices: HashMap<Subgroup, Arc<LatticeInfo>>,
    products: HashMap<Vec<Subgroup>, WordAutomaton>,
    languages: HashMap<Subgroup, WordAutomaton>,
}

/// Closure computations sharing limits and memo tables.
pub struct Closures {
    limits: Limits,
    cache: Mutex<Cache>,
}

impl Default for Closures {
    fn default() -> Self {
        Self::new(Limits::default())
    }
}

impl Closures {
    pub fn new(limits: Limits) -> Self {
        Closures { limits, cache: Mutex::new(Cache::default()) }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    fn cache(&self) -> std::sync::MutexGuard<'_, Cache> {
        self.cache.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn lattice(&self, h: &Subgroup) -> Result<Arc<LatticeInfo>> {
        if let Some(info) = self.cache().lattices.get(h) {
            return Ok(info.clone());
        }
        let (stem, core) = h.strip_stem();
        let info = if stem.is_empty() {
            Arc::new(LatticeInfo::build(h, &self.limits)?)
        } else {
            Arc::new(self.lattice(&core)?.with_stem(stem)?)
        };
        self.cache().lattices.insert(h.clone(), info.clone());
        Ok(info)
    }

    /// Minimal reduced automaton of the subgroup's elements.
    pub fn language(&self, h: &Subgroup) -> Result<WordAutomaton> {
        if let Some(a) = self.cache().languages.get(h) {
            return Ok(a.clone());
        }
        let a = automata::minimize(&h.language(&self.limits)?, &self.limits)?;
        self.cache().languages.insert(h.clone(), a.clone());
        Ok(a)
    }

    /// `ℙ(k)`: the primes `p` for which `k` is p-closed.
    pub fn primes_closed(&self, k: &Subgroup) -> Result<PrimeSet> {
        Ok(self.lattice(k)?.primes[0].clone())
    }

    /// The largest overgroup of `k` in which `k` is p-dense.
    pub fn p_closure(&self, k: &Subgroup, p: u64) -> Result<Subgroup> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        let info = self.lattice(k)?;
        let nodes = &info.nodes;
        let candidates: Vec<usize> =
            (0..nodes.len()).filter(|&j| dense_primes_unchecked(k, &nodes[j]).contains(p)).collect();
        let top = candidates
            .iter()
            .copied()
            .find(|&c| candidates.iter().all(|&j| info.contains(c, j)))
            .ok_or_else(|| Error::Internal(format!("p-dense overgroups of K have no maximum for p = {p}")))?;
        Ok(nodes[top].clone())
    }

    fn product_language(&self, factors: &[Subgroup]) -> Result<WordAutomaton> {
        let first = factors.first().ok_or_else(|| Error::Precondition("empty factor list".into()))?;
        let mut acc = self.language(first)?;
        for h in &factors[1..] {
            acc = automata::concat(&acc, &self.language(h)?)?;
        }
        let reduced = automata::benois_reduce(&acc, &self.limits)?;
        automata::minimize(&reduced, &self.limits)
    }

    /// Reduced words of `Cl_p(H₁)⋯Cl_p(Hₙ)`.
    pub fn p_closure_product(&self, hs: &[Subgroup], p: u64) -> Result<WordAutomaton> {
        if hs.is_empty() {
            return Err(Error::Precondition("empty factor list".into()));
        }
        let closed = hs.iter().map(|h| self.p_closure(h, p)).collect::<Result<Vec<_>>>()?;
        self.product_language(&closed)
    }

    /// Intersection of the overgroups of `h` that are p-closed for some prime.
    pub fn nil_closure_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        let info = self.lattice(h)?;
        let mut acc: Option<Subgroup> = None;
        for (s, primes) in info.nodes.iter().zip(&info.primes) {
            if primes.is_empty() {
                continue;
            }
            acc = Some(match acc {
                None => s.clone(),
                Some(a) => a.intersect(s)?,
            });
        }
        acc.ok_or_else(|| Error::Internal("no overgroup is closed for any prime".into()))
    }

    /// Tuples `(S₁,…,Sₙ)` of overgroups with `ℙ(S₁) ∩ ⋯ ∩ ℙ(Sₙ) ≠ ∅`, as
    /// node indices into the lattices, restricted to the componentwise
    /// minimal ones (the product is monotone in each factor, so the others
    /// do not change the intersection).
    pub fn product_candidates(&self, hs: &[Subgroup]) -> Result<(Vec<Arc<LatticeInfo>>, Vec<Tuple>)> {
        let infos = hs.iter().map(|h| self.lattice(h)).collect::<Result<Vec<_>>>()?;
        let all = Self::all_candidates(&infos);
        let minimal: Vec<Vec<usize>> = all
            .iter()
            .filter(|t| {
                !all.iter().any(|u| u != *t && u.iter().zip(t.iter()).enumerate().all(|(i, (&ui, &ti))| infos[i].contains(ti, ui)))
            })
            .cloned()
            .collect();
        Ok((infos, minimal))
    }

    /// Every tuple of the candidate set, by depth-first search pruned on an
    /// empty running prime intersection.
    pub fn all_candidates(infos: &[Arc<LatticeInfo>]) -> Vec<Vec<usize>> {
        fn dfs(infos: &[Arc<LatticeInfo>], running: PrimeSet, tuple: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let i = tuple.len();
            if i == infos.len() {
                out.push(tuple.clone());
                return;
            }
            for (j, primes) in infos[i].primes.iter().enumerate() {
                let next = running.intersect(primes);
                if next.is_empty() {
                    continue;
                }
                tuple.push(j);
                dfs(infos, next, tuple, out);
                tuple.pop();
            }
        }
        let mut out = Vec::new();
        dfs(infos, PrimeSet::all(), &mut Vec::new(), &mut out);
        out
    }

    /// Reduced words of the pro-nilpotent closure of `H₁⋯Hₙ`.
    pub fn nil_closure_product(&self, hs: &[Subgroup]) -> Result<WordAutomaton> {
        if hs.is_empty() {
            return Err(Error::Precondition("empty factor list".into()));
        }
        if let Some(a) = self.cache().products.get(hs) {
            return Ok(a.clone());
        }
        let (infos, tuples) = self.product_candidates(hs)?;
        self.intersect_tuples(hs, &infos, &tuples)
    }

    /// Same as [`Self::nil_closure_product`] but intersecting over every
    /// candidate tuple, without the minimality reduction.
    pub fn nil_closure_product_full(&self, hs: &[Subgroup]) -> Result<WordAutomaton> {
        if hs.is_empty() {
            return Err(Error::Precondition("empty factor list".into()));
        }
        let infos = hs.iter().map(|h| self.lattice(h)).collect::<Result<Vec<_>>>()?;
        let tuples = Self::all_candidates(&infos);
        let alphabet = hs[0].alphabet();
        let mut acc = WordAutomaton::all_reduced(alphabet);
        for t in &tuples {
            let factors: Vec<Subgroup> = t.iter().enumerate().map(|(i, &j)| infos[i].nodes[j].clone()).collect();
            acc = automata::intersect_reduced(&acc, &self.product_language(&factors)?, &self.limits)?;
            acc = automata::minimize(&acc, &self.limits)?;
        }
        Ok(acc)
    }

    fn intersect_tuples(&self, hs: &[Subgroup], infos: &[Arc<LatticeInfo>], tuples: &[Vec<usize>]) -> Result<WordAutomaton> {
        let mut acc: Option<WordAutomaton> = None;
        for t in tuples {
            let factors: Vec<Subgroup> = t.iter().enumerate().map(|(i, &j)| infos[i].nodes[j].clone()).collect();
            let lang = self.product_language(&factors)?;
            acc = Some(match acc {
                None => lang,
                Some(a) => automata::minimize(&automata::intersect_reduced(&a, &lang, &self.limits)?, &self.limits)?,
            });
        }
        let result = acc.ok_or_else(|| Error::Internal("empty candidate set".into()))?;
        self.cache().products.insert(hs.to_vec(), result.clone());
        Ok(result)
    }

    /// Reduced words of the pro-nilpotent closure of a rational subset.
    pub fn nil_closure_rational(&self, e: &RationalExpression, alphabet: &Alphabet) -> Result<WordAutomaton> {
        let nf = pro_g_closure(e, alphabet)?;
        self.nil_closure_of_normal_form(&nf)
    }

    /// As [`Self::nil_closure_rational`], starting from an automaton.
    pub fn nil_closure_automaton(&self, a: &WordAutomaton) -> Result<WordAutomaton> {
        self.nil_closure_of_normal_form(&pro_g_closure_automaton(a)?)
    }

    pub fn nil_closure_of_normal_form(&self, nf: &ClosureNormalForm) -> Result<WordAutomaton> {
        let alphabet = nf.alphabet();
        let mut acc = WordAutomaton::empty(alphabet);
        for t in nf.terms() {
            let g = WordAutomaton::from_words(alphabet, &[t.g.clone().into_word()])?;
            let part = if t.factors.is_empty() { g } else { automata::concat(&g, &self.nil_closure_product(&t.factors)?)? };
            let part = automata::benois_reduce(&part, &self.limits)?;
            acc = automata::minimize(&automata::union(&acc, &part)?, &self.limits)?;
        }
        Ok(acc)
    }

    /// Whether `H₁ ∪ ⋯ ∪ Hₙ` is dense in the pro-p topology.
    pub fn union_p_dense(&self, hs: &[Subgroup], p: u64) -> Result<bool> {
        let first = hs.first().ok_or_else(|| Error::Precondition("empty subgroup list".into()))?;
        let mut acc = WordAutomaton::empty(first.alphabet());
        for h in hs {
            acc = automata::union(&acc, &self.language(&self.p_closure(h, p)?)?)?;
        }
        automata::is_universal(&acc, &self.limits)
    }

    /// Reduced words of a subgroup product, `H₁⋯Hₙ` itself.
    pub fn product(&self, hs: &[Subgroup]) -> Result<WordAutomaton> {
        self.product_language(hs)
    }

    /// `g·L` for a reduced automaton `L`.
    pub fn translate(&self, g: &ReducedWord, a: &WordAutomaton) -> Result<WordAutomaton> {
        let lit = WordAutomaton::from_words(a.alphabet(), &[g.clone().into_word()])?;
        let reduced = automata::benois_reduce(&automata::concat(&lit, a)?, &self.limits)?;
        automata::minimize(&reduced, &self.limits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Relation;
    use crate::freegroup::reduced_words_up_to;

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    fn sg(s: &str) -> Subgroup {
        Subgroup::parse(&ab(), s).unwrap()
    }

    fn eng() -> Closures {
        Closures::default()
    }

    #[test]
    fn dense_primes_examples() {
        let f = Subgroup::whole(&ab());
        assert_eq!(dense_primes(&sg("aa,b"), &f).unwrap(), PrimeSet::all_except([2]));
        assert_eq!(dense_primes(&sg("a,bbb"), &f).unwrap(), PrimeSet::all_except([3]));
        let h = sg("aa,bab");
        assert!(dense_primes(&h, &h).unwrap().is_all());
        assert!(dense_primes(&sg("a"), &f).unwrap().is_empty());
        assert!(dense_primes(&f, &sg("a")).is_err());
    }

    #[test]
    fn primes_closed_examples() {
        let e = eng();
        assert_eq!(e.primes_closed(&sg("aa,b")).unwrap(), PrimeSet::finite([2]));
        assert_eq!(e.primes_closed(&sg("a,bbb")).unwrap(), PrimeSet::finite([3]));
        assert!(e.primes_closed(&sg("a")).unwrap().is_all());
    }

    #[test]
    fn p_closure_examples() {
        let e = eng();
        let h = sg("aa,b");
        assert_eq!(e.p_closure(&h, 2).unwrap(), h);
        assert!(e.p_closure(&h, 3).unwrap().is_whole());
        let t = Subgroup::trivial(&ab());
        assert_eq!(e.p_closure(&t, 5).unwrap(), t);
        assert!(e.p_closure(&h, 4).is_err());
    }

    #[test]
    fn p_closure_in_rank_one() {
        // In Z, Cl_p(nZ) = p^v(n) Z.
        let a = Alphabet::parse("a").unwrap();
        let e = eng();
        let h = Subgroup::parse(&a, "aaaaaaaaaaaa").unwrap();
        assert_eq!(e.p_closure(&h, 2).unwrap(), Subgroup::parse(&a, "aaaa").unwrap());
        assert_eq!(e.p_closure(&h, 3).unwrap(), Subgroup::parse(&a, "aaa").unwrap());
        assert!(e.p_closure(&h, 5).unwrap().is_whole());
        assert_eq!(e.nil_closure_subgroup(&h).unwrap(), h);
    }

    #[test]
    fn p_closure_product_examples() {
        let e = eng();
        let lim = Limits::default();
        let hk = [sg("aa,b"), sg("a,bbb")];
        assert!(automata::is_universal(&e.p_closure_product(&hk, 5).unwrap(), &lim).unwrap());
        let h = sg("aa,b");
        let one = e.p_closure_product(std::slice::from_ref(&h), 2).unwrap();
        assert_eq!(automata::compare(&one, &e.language(&h).unwrap(), &lim).unwrap(), Relation::Equal);
        let ab_prod = e.p_closure_product(&[sg("a"), sg("b")], 3).unwrap();
        assert_eq!(automata::compare(&ab_prod, &e.product(&[sg("a"), sg("b")]).unwrap(), &lim).unwrap(), Relation::Equal);
    }

    #[test]
    fn nil_closure_subgroup_examples() {
        let e = eng();
        assert_eq!(e.nil_closure_subgroup(&sg("aa,b")).unwrap(), sg("aa,b"));
        let f = Subgroup::whole(&ab());
        assert_eq!(e.nil_closure_subgroup(&f).unwrap(), f);
        let a = Alphabet::parse("a").unwrap();
        let h = Subgroup::parse(&a, "aa").unwrap();
        assert_eq!(e.nil_closure_subgroup(&h).unwrap(), h);
    }

    #[test]
    fn nil_closure_product_examples() {
        let e = eng();
        let lim = Limits::default();
        let hk = [sg("aa,b"), sg("a,bbb")];
        assert!(automata::is_universal(&e.nil_closure_product(&hk).unwrap(), &lim).unwrap());
        let h = sg("aa,b");
        let one = e.nil_closure_product(std::slice::from_ref(&h)).unwrap();
        let sub = e.language(&e.nil_closure_subgroup(&h).unwrap()).unwrap();
        assert_eq!(automata::compare(&one, &sub, &lim).unwrap(), Relation::Equal);
        let prod = e.nil_closure_product(&[sg("a"), sg("b")]).unwrap();
        let a = ab();
        for w in reduced_words_up_to(&a, 5) {
            let s = a.format(w.letters());
            let t = s.trim_start_matches(['a', 'A']);
            let expected = t.chars().all(|c| c == 'b' || c == 'B');
            assert_eq!(automata::accepts(&prod, &w.into_word()).unwrap(), expected, "{s}");
        }
        assert!(e.nil_closure_product(&[]).is_err());
    }

    #[test]
    fn minimal_tuples_agree_with_full_candidate_set() {
        let e = eng();
        let lim = Limits::default();
        for hs in [vec![sg("aa,b"), sg("a,bbb")], vec![sg("aa"), sg("bb")], vec![sg("aab"), sg("b")]] {
            let fast = e.nil_closure_product(&hs).unwrap();
            let full = e.nil_closure_product_full(&hs).unwrap();
            assert_eq!(automata::compare(&fast, &full, &lim).unwrap(), Relation::Equal);
        }
    }

    #[test]
    fn nil_closure_rational_examples() {
        let a = ab();
        let e = eng();
        let lim = Limits::default();
        let expr = RationalExpression::parse("(aa|b)*|(a|bbb)*", &a).unwrap();
        let c = e.nil_closure_rational(&expr, &a).unwrap();
        let u = automata::union(&e.language(&sg("aa,b")).unwrap(), &e.language(&sg("a,bbb")).unwrap()).unwrap();
        assert_eq!(automata::compare(&c, &u, &lim).unwrap(), Relation::Equal);
        assert!(!automata::accepts(&c, &a.parse_word("ab").unwrap()).unwrap());

        let one = Alphabet::parse("a").unwrap();
        let c = e.nil_closure_rational(&RationalExpression::parse("aa*", &one).unwrap(), &one).unwrap();
        assert!(automata::accepts(&c, &one.parse_word("").unwrap()).unwrap());
        assert!(automata::accepts(&c, &one.parse_word("AAA").unwrap()).unwrap());

        let c = e.nil_closure_rational(&RationalExpression::empty(), &a).unwrap();
        assert!(automata::is_empty(&c));
    }

    #[test]
    fn union_p_dense_examples() {
        let e = eng();
        let hk = [sg("aa,b"), sg("a,bbb")];
        for p in [2, 3, 5, 7] {
            assert!(e.union_p_dense(&hk, p).unwrap());
        }
        assert!(!e.union_p_dense(&[sg("aa,b")], 2).unwrap());
        assert!(e.union_p_dense(&[Subgroup::whole(&ab())], 11).unwrap());
    }
}
