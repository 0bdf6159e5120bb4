//! Brute-force backend: a catalog of small nilpotent groups, enumeration of
//! homomorphisms from `F(A)`, and images of rational languages.
//!
//! `w` lies in the pro-nilpotent closure of `L` only if `φ(w) ∈ φ(L)` for
//! every homomorphism `φ` onto a finite nilpotent group. Checking this over a
//! finite catalog gives an upper approximation of the closure.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::automata::WordAutomaton;
use crate::error::{Error, Limits, Result};
use crate::freegroup::{Alphabet, Letter, ReducedWord};
use crate::monoids::{ElementSubset, MonoidTable};

/// A finite group given by its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    name: String,
    table: MonoidTable,
    inverses: Vec<usize>,
    nilpotency_class: Option<usize>,
}

impl FiniteGroupTable {
    pub fn new(name: impl Into<String>, table: MonoidTable) -> Result<Self> {
        let inverses = (0..table.size())
            .map(|x| table.unit_inverse(x).ok_or_else(|| Error::InvalidMonoid(format!("{} is not invertible", table.name(x)))))
            .collect::<Result<Vec<_>>>()?;
        let nilpotency_class = table.nilpotency_class();
        Ok(FiniteGroupTable { name: name.into(), table, inverses, nilpotency_class })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        let table = MonoidTable::from_rows(&rows, 0, None).expect("cyclic table");
        Self::new(format!("Z/{n}"), table).expect("group")
    }

    /// The quaternion group `±{1, i, j, k}`; element `2u + s` is `(-1)^s·u`.
    pub fn quaternion() -> Self {
        // Unit products as (sign, unit) with units 1, i, j, k = 0..4.
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let rows: Vec<Vec<usize>> = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (s, u) = UNIT[x / 2][y / 2];
                        2 * u + (s + x % 2 + y % 2) % 2
                    })
                    .collect()
            })
            .collect();
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
        Self::new("Q8", MonoidTable::from_rows(&rows, 0, Some(names)).expect("quaternion table")).expect("group")
    }

    /// The dihedral group of order 8; element `2k + f` is `s^f r^k`.
    pub fn dihedral4() -> Self {
        let rows: Vec<Vec<usize>> = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (k1, f1) = (x / 2, x % 2);
                        let (k2, f2) = (y / 2, y % 2);
                        let k = if f2 == 1 { (4 + k2 - k1) % 4 } else { (k1 + k2) % 4 };
                        2 * k + (f1 ^ f2)
                    })
                    .collect()
            })
            .collect();
        Self::new("D4", MonoidTable::from_rows(&rows, 0, None).expect("dihedral table")).expect("group")
    }

    pub fn product(&self, other: &Self, limits: &Limits) -> Result<Self> {
        let table = self.table.direct_product(&other.table, limits)?;
        Self::new(format!("{}×{}", self.name, other.name), table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &MonoidTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.size()
    }

    pub fn identity(&self) -> usize {
        self.table.identity()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table.mul(x, y)
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverses[x]
    }

    pub fn nilpotency_class(&self) -> Option<usize> {
        self.nilpotency_class
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class.is_some()
    }

    /// Subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> ElementSubset {
        self.table.generated(gens)
    }

    /// Every subgroup, as joins of cyclic subgroups.
    pub fn subgroups(&self) -> Vec<ElementSubset> {
        let n = self.order();
        let cyclic: Vec<ElementSubset> = (0..n).map(|x| self.generated(&[x])).collect();
        let mut seen: HashSet<ElementSubset> = cyclic.iter().cloned().collect();
        let mut queue: VecDeque<ElementSubset> = seen.iter().cloned().collect();
        while let Some(s) = queue.pop_front() {
            for c in &cyclic {
                let mut gens = s.to_vec();
                gens.extend(c.iter());
                let j = self.generated(&gens);
                if seen.insert(j.clone()) {
                    queue.push_back(j);
                }
            }
        }
        let mut out: Vec<ElementSubset> = seen.into_iter().collect();
        out.sort_by_key(|s| (s.len(), s.to_vec()));
        out
    }

    pub fn is_normal(&self, s: &ElementSubset) -> bool {
        (0..self.order()).all(|g| s.iter().all(|x| s.contains(self.mul(self.mul(self.inverse(g), x), g))))
    }

    /// `G/N` for a normal subgroup `N`.
    pub fn quotient(&self, n: &ElementSubset) -> Result<FiniteGroupTable> {
        let size = self.order();
        let mut coset = vec![usize::MAX; size];
        let mut reps = Vec::new();
        for g in 0..size {
            if coset[g] == usize::MAX {
                for x in n.iter() {
                    coset[self.mul(g, x)] = reps.len();
                }
                reps.push(g);
            }
        }
        let rows: Vec<Vec<usize>> =
            reps.iter().map(|&x| reps.iter().map(|&y| coset[self.mul(x, y)]).collect()).collect();
        let table = MonoidTable::from_rows(&rows, coset[self.identity()], None)?;
        FiniteGroupTable::new(format!("{}/N", self.name), table)
    }

    /// Smallest normal subgroup with nilpotent quotient, by brute force over
    /// the subgroup lattice.
    pub fn nilpotent_residual(&self) -> ElementSubset {
        let mut acc = ElementSubset::full(self.order());
        for s in self.subgroups() {
            if self.is_normal(&s) && self.quotient(&s).expect("normal").is_nilpotent() {
                acc = ElementSubset::from_elements(self.order(), &acc.iter().filter(|&x| s.contains(x)).collect::<Vec<_>>());
            }
        }
        acc
    }
}

/// A homomorphism `F(A) → G`, given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    pub images: Vec<usize>,
}

impl Homomorphism {
    pub fn letter(&self, g: &FiniteGroupTable, l: Letter) -> usize {
        let x = self.images[l.generator()];
        if l.is_inverse() {
            g.inverse(x)
        } else {
            x
        }
    }

    pub fn apply(&self, g: &FiniteGroupTable, letters: &[Letter]) -> usize {
        letters.iter().fold(g.identity(), |acc, &l| g.mul(acc, self.letter(g, l)))
    }

    /// Size of the image subgroup.
    pub fn image_order(&self, g: &FiniteGroupTable) -> usize {
        g.generated(&self.images).len()
    }
}

/// All homomorphisms `F(alphabet) → g`.
pub fn enum_homs(alphabet: &Alphabet, g: &FiniteGroupTable, limits: &Limits) -> Result<Vec<Homomorphism>> {
    let rank = alphabet.rank();
    let count = (0..rank).try_fold(1usize, |acc, _| acc.checked_mul(g.order()).filter(|&c| c <= limits.max_homs));
    let count = count.ok_or(Error::ResourceCap { what: "homomorphisms", limit: limits.max_homs })?;
    Ok((0..count)
        .map(|mut k| {
            let images = (0..rank)
                .map(|_| {
                    let x = k % g.order();
                    k /= g.order();
                    x
                })
                .collect();
            Homomorphism { images }
        })
        .collect())
}

/// `φ(L)`, by a fixpoint over pairs (state, group element).
pub fn image_of_language(a: &WordAutomaton, g: &FiniteGroupTable, phi: &Homomorphism) -> BTreeSet<usize> {
    let n = g.order();
    let mut seen = vec![false; a.num_states() * n];
    let mut queue = VecDeque::new();
    for &q in a.initials() {
        if !seen[q * n + g.identity()] {
            seen[q * n + g.identity()] = true;
            queue.push_back((q, g.identity()));
        }
    }
    let mut out_edges = vec![Vec::new(); a.num_states()];
    for &(p, l, q) in a.edges() {
        out_edges[p].push((phi.letter(g, l), q));
    }
    while let Some((q, x)) = queue.pop_front() {
        for &(y, r) in &out_edges[q] {
            let z = g.mul(x, y);
            if !seen[r * n + z] {
                seen[r * n + z] = true;
                queue.push_back((r, z));
            }
        }
    }
    let seen = &seen;
    a.finals().iter().flat_map(|&f| (0..n).filter(move |&x| seen[f * n + x])).collect()
}

/// A list of finite nilpotent groups.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    pub groups: Vec<FiniteGroupTable>,
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn push(&mut self, g: FiniteGroupTable) {
        self.groups.push(g);
    }

    pub fn to_json(&self) -> String {
        let dto: Vec<GroupJson> = self
            .groups
            .iter()
            .map(|g| GroupJson {
                name: g.name.clone(),
                size: g.order(),
                identity: g.identity(),
                table: g.table.rows(),
                names: g.table.names().map(<[String]>::to_vec),
                nilpotency_class: g.nilpotency_class,
            })
            .collect();
        serde_json::to_string_pretty(&dto).expect("catalog serializes")
    }

    /// Reads a catalog file; every member must be a nilpotent group.
    pub fn from_json(s: &str) -> Result<Self> {
        let dto: Vec<GroupJson> = serde_json::from_str(s)?;
        let mut groups = Vec::new();
        for g in dto {
            if g.table.len() != g.size || g.table.iter().any(|r| r.len() != g.size) {
                return Err(Error::InvalidMonoid(format!("{}: table must be {1}×{1}", g.name, g.size)));
            }
            let table = MonoidTable::from_rows(&g.table, g.identity, g.names)?;
            let group = FiniteGroupTable::new(g.name, table)?;
            if !group.is_nilpotent() {
                return Err(Error::InvalidMonoid(format!("{} is not nilpotent", group.name)));
            }
            if g.nilpotency_class.is_some_and(|c| Some(c) != group.nilpotency_class) {
                return Err(Error::InvalidMonoid(format!("{}: wrong nilpotency class", group.name)));
            }
            groups.push(group);
        }
        Ok(Catalog { groups })
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    name: String,
    size: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
    #[serde(default)]
    nilpotency_class: Option<usize>,
}

/// Trivial group, cyclic groups, `Q₈` and `D₄`, and direct products of
/// these with order at most `max_order`. Not exhaustive beyond order 16, and
/// isomorphic duplicates are kept.
pub fn nilpotent_catalog(max_order: usize) -> Catalog {
    let mut base: Vec<FiniteGroupTable> = (2..=max_order).map(FiniteGroupTable::cyclic).collect();
    if max_order >= 8 {
        base.push(FiniteGroupTable::quaternion());
        base.push(FiniteGroupTable::dihedral4());
    }
    let mut catalog = Catalog { groups: vec![FiniteGroupTable::trivial()] };
    catalog.groups.extend(base.iter().cloned());
    // Multisets of at least two base factors, as nondecreasing index tuples.
    fn extend(base: &[FiniteGroupTable], start: usize, acc: &FiniteGroupTable, depth: usize, max: usize, out: &mut Vec<FiniteGroupTable>) {
        for i in start..base.len() {
            if acc.order() * base[i].order() > max {
                continue;
            }
            let next = acc.product(&base[i], &Limits::default()).expect("within cap");
            if depth >= 1 {
                out.push(next.clone());
            }
            extend(base, i, &next, depth + 1, max, out);
        }
    }
    let mut products = Vec::new();
    for (i, g) in base.iter().enumerate() {
        extend(&base, i, g, 1, max_order, &mut products);
    }
    catalog.groups.extend(products);
    catalog
}

/// Images `φ(L)` for every homomorphism into every catalog group.
pub struct ImageTable {
    alphabet: Alphabet,
    entries: Vec<(usize, Homomorphism, BTreeSet<usize>)>,
    catalog: Catalog,
}

impl ImageTable {
    pub fn new(a: &WordAutomaton, catalog: &Catalog, limits: &Limits) -> Result<Self> {
        let mut entries = Vec::new();
        for (gi, g) in catalog.groups.iter().enumerate() {
            for phi in enum_homs(a.alphabet(), g, limits)? {
                let image = image_of_language(a, g, &phi);
                entries.push((gi, phi, image));
            }
        }
        Ok(ImageTable { alphabet: a.alphabet().clone(), entries, catalog: catalog.clone() })
    }

    /// Whether `φ(w) ∈ φ(L)` for every recorded `φ`.
    pub fn check(&self, w: &ReducedWord) -> Result<bool> {
        Ok(self.separating(w)?.is_none())
    }

    /// A group index and homomorphism with `φ(w) ∉ φ(L)`, if any.
    pub fn separating(&self, w: &ReducedWord) -> Result<Option<(usize, Homomorphism)>> {
        self.alphabet.check(w.letters())?;
        for (gi, phi, image) in &self.entries {
            let g = &self.catalog.groups[*gi];
            if !image.contains(&phi.apply(g, w.letters())) {
                return Ok(Some((*gi, phi.clone())));
            }
        }
        Ok(None)
    }
}

/// Whether no catalog homomorphism separates `w` from `L`.
pub fn approx_closure_check(a: &WordAutomaton, w: &ReducedWord, catalog: &Catalog, limits: &Limits) -> Result<bool> {
    a.alphabet().check(w.letters())?;
    for g in &catalog.groups {
        for phi in enum_homs(a.alphabet(), g, limits)? {
            if !image_of_language(a, g, &phi).contains(&phi.apply(g, w.letters())) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stallings::Subgroup;

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    #[test]
    fn catalog_examples() {
        let c1 = nilpotent_catalog(1);
        assert_eq!(c1.len(), 1);
        assert_eq!(c1.groups[0].order(), 1);
        let c6 = nilpotent_catalog(6);
        assert!(c6.groups.iter().any(|g| g.name() == "Z/6"));
        assert!(c6.groups.iter().any(|g| g.name() == "Z/2×Z/3"));
        let c8 = nilpotent_catalog(8);
        for name in ["Q8", "D4"] {
            let g = c8.groups.iter().find(|g| g.name() == name).unwrap();
            assert_eq!(g.nilpotency_class(), Some(2));
        }
        let c16 = nilpotent_catalog(16);
        assert!(c16.groups.iter().all(FiniteGroupTable::is_nilpotent));
        assert!(c16.groups.iter().all(|g| g.order() <= 16));
        assert!(c16.groups.iter().any(|g| g.name() == "Z/2×Z/2×Z/2×Z/2"));
    }

    #[test]
    fn quaternion_and_dihedral_are_nonabelian() {
        for g in [FiniteGroupTable::quaternion(), FiniteGroupTable::dihedral4()] {
            assert!((0..8).any(|x| (0..8).any(|y| g.mul(x, y) != g.mul(y, x))));
        }
        let q = FiniteGroupTable::quaternion();
        assert_eq!((0..8).filter(|&x| q.mul(x, x) == 0).count(), 2);
        let d = FiniteGroupTable::dihedral4();
        assert_eq!((0..8).filter(|&x| d.mul(x, x) == 0).count(), 6);
    }

    #[test]
    fn catalog_json_round_trip() {
        let c = nilpotent_catalog(8);
        assert_eq!(Catalog::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn hom_counts() {
        let lim = Limits::default();
        assert_eq!(enum_homs(&ab(), &FiniteGroupTable::cyclic(2), &lim).unwrap().len(), 4);
        assert_eq!(enum_homs(&Alphabet::parse("a").unwrap(), &FiniteGroupTable::trivial(), &lim).unwrap().len(), 1);
        let z66 = FiniteGroupTable::cyclic(6).product(&FiniteGroupTable::cyclic(6), &lim).unwrap();
        assert_eq!(enum_homs(&ab(), &z66, &lim).unwrap().len(), 36 * 36);
        let tight = Limits { max_homs: 10, ..lim };
        assert!(enum_homs(&ab(), &z66, &tight).unwrap_err().is_resource_cap());
    }

    #[test]
    fn image_examples() {
        let lim = Limits::default();
        let z2 = FiniteGroupTable::cyclic(2);
        let phi = Homomorphism { images: vec![1, 0] };
        let h = Subgroup::parse(&ab(), "aa,b").unwrap().language(&lim).unwrap();
        assert_eq!(image_of_language(&h, &z2, &phi), BTreeSet::from([0]));
        assert!(image_of_language(&WordAutomaton::empty(&ab()), &z2, &phi).is_empty());
        assert_eq!(image_of_language(&WordAutomaton::all_reduced(&ab()), &z2, &phi), BTreeSet::from([0, 1]));
    }

    #[test]
    fn approx_check_examples() {
        let lim = Limits::default();
        let a = ab();
        let mut cat = nilpotent_catalog(6);
        cat.push(FiniteGroupTable::cyclic(6).product(&FiniteGroupTable::cyclic(6), &lim).unwrap());
        let h = Subgroup::parse(&a, "aa,b").unwrap().language(&lim).unwrap();
        let k = Subgroup::parse(&a, "a,bbb").unwrap().language(&lim).unwrap();
        let hk = crate::automata::union(&h, &k).unwrap();
        assert!(!approx_closure_check(&hk, &a.parse_reduced("ab").unwrap(), &cat, &lim).unwrap());
        assert!(approx_closure_check(&hk, &a.parse_reduced("aab").unwrap(), &cat, &lim).unwrap());

        let one = Alphabet::parse("a").unwrap();
        let plus = crate::automata::compile_expression(
            &crate::automata::RationalExpression::parse("aa*", &one).unwrap(),
            &one,
        )
        .unwrap();
        assert!(approx_closure_check(&plus, &ReducedWord::identity(), &nilpotent_catalog(8), &lim).unwrap());
    }

    #[test]
    fn residuals() {
        let s3 = FiniteGroupTable::new("S3", crate::monoids::standard::s3().table().clone()).unwrap();
        assert_eq!(s3.subgroups().len(), 6);
        assert_eq!(s3.nilpotent_residual().to_vec(), vec![0, 1, 2]);
        let z4 = FiniteGroupTable::cyclic(4);
        assert_eq!(z4.nilpotent_residual().to_vec(), vec![0]);
        assert!(!s3.is_nilpotent());
    }
}
