//! Fixtures, random generators and brute-force oracles shared by the
//! integration tests.
#![allow(dead_code)]

use nilclose::automata::RationalExpression;
use nilclose::freegroup::{reduced_words_of_length, Letter};
use nilclose::stallings::Subgroup;
use nilclose::{Alphabet, ReducedWord};
use rand::Rng;

pub fn ab() -> Alphabet {
    Alphabet::parse("ab").unwrap()
}

pub fn sg(s: &str) -> Subgroup {
    Subgroup::parse(&ab(), s).unwrap()
}

pub fn word(s: &str) -> ReducedWord {
    ab().parse_reduced(s).unwrap()
}

/// `H = ⟨a², b⟩`.
pub fn h() -> Subgroup {
    sg("aa,b")
}

/// `K = ⟨a, b³⟩`.
pub fn k() -> Subgroup {
    sg("a,bbb")
}

pub fn random_reduced<R: Rng>(rng: &mut R, alphabet: &Alphabet, min_len: usize, max_len: usize) -> ReducedWord {
    let len = rng.gen_range(min_len..=max_len);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::from_index(rng.gen_range(0..alphabet.width()));
        if letters.last().is_some_and(|&p| p == l.inverse()) {
            continue;
        }
        letters.push(l);
    }
    ReducedWord::from_letters(letters)
}

/// A subgroup with 1 or 2 nontrivial generators of length 1..=max_len.
pub fn random_subgroup<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_rank: usize, max_len: usize) -> (Vec<ReducedWord>, Subgroup) {
    let n = rng.gen_range(1..=max_rank);
    let gens: Vec<ReducedWord> = (0..n).map(|_| random_reduced(rng, alphabet, 1, max_len)).collect();
    let h = Subgroup::fold(alphabet, &gens).unwrap();
    (gens, h)
}

/// `(g₁ | g₂ | …)*`, an expression for the subgroup generated by the `gᵢ`
/// (inverses included).
pub fn subgroup_expression(gens: &[ReducedWord]) -> RationalExpression {
    let lits = gens
        .iter()
        .flat_map(|g| [RationalExpression::literal(g.clone()), RationalExpression::literal(g.inverse())]);
    RationalExpression::star(RationalExpression::union_all(lits))
}

/// Random expression of depth at most `depth`.
pub fn random_expression<R: Rng>(rng: &mut R, alphabet: &Alphabet, depth: usize) -> RationalExpression {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => RationalExpression::epsilon(),
            _ => {
                let len = rng.gen_range(1..=3);
                // Literals are reduced; cancellation comes from concatenation and star.
                let letters: Vec<Letter> = (0..len).map(|_| Letter::from_index(rng.gen_range(0..alphabet.width()))).collect();
                RationalExpression::literal(ReducedWord::from_letters(letters))
            }
        };
    }
    match rng.gen_range(0..3) {
        0 => RationalExpression::union(random_expression(rng, alphabet, depth - 1), random_expression(rng, alphabet, depth - 1)),
        1 => RationalExpression::concat(random_expression(rng, alphabet, depth - 1), random_expression(rng, alphabet, depth - 1)),
        _ => RationalExpression::star(random_expression(rng, alphabet, depth - 1)),
    }
}

/// Elements of `⟨gens⟩` obtained as products of at most `max_factors`
/// generators and inverses, by brute force.
pub fn brute_force_elements(gens: &[ReducedWord], max_factors: usize) -> Vec<ReducedWord> {
    let mut symbols: Vec<ReducedWord> = gens.to_vec();
    symbols.extend(gens.iter().map(ReducedWord::inverse));
    let mut layer = vec![ReducedWord::identity()];
    let mut all = layer.clone();
    for _ in 0..max_factors {
        let next: Vec<ReducedWord> = layer.iter().flat_map(|w| symbols.iter().map(move |s| w.mul(s))).collect();
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort();
    all.dedup();
    all
}

/// All reduced words of length at most `n`.
pub fn reduced_up_to(alphabet: &Alphabet, n: usize) -> Vec<ReducedWord> {
    (0..=n).flat_map(|l| reduced_words_of_length(alphabet, l)).collect()
}

/// Rank of an integer matrix modulo a prime `p`, by Gaussian elimination.
pub fn rank_mod_p(rows: &[Vec<i64>], cols: usize, p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = (1..p).find(|&x| x * m[rank][c] % p == 1).unwrap();
        for j in 0..cols {
            m[rank][j] = m[rank][j] * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for j in 0..cols {
                    m[r][j] = (m[r][j] - f * m[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Exponent sums of a word, one per generator.
pub fn exponent_sums(alphabet: &Alphabet, w: &ReducedWord) -> Vec<i64> {
    let mut v = vec![0; alphabet.rank()];
    for l in w.letters() {
        v[l.generator()] += if l.is_inverse() { -1 } else { 1 };
    }
    v
}
