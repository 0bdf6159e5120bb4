//! Alphabets, words over `A ∪ A⁻¹` and free reduction.
//!
//! Text syntax: a lowercase letter is a generator, the same letter in
//! uppercase is its inverse. Whitespace is ignored; `1` denotes the empty
//! word.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A signed letter: generator index plus an inverse bit.
///
/// Encoded as `2 * generator + inverse`, so the letters of an alphabet of
/// rank `k` are exactly the indices `0..2k` and inversion flips the low bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn from_index(index: usize) -> Self {
        Letter(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

/// A finite ordered set of generator names.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    names: Arc<[char]>,
}

impl Alphabet {
    /// Builds an alphabet from distinct lowercase ASCII letters.
    pub fn new<I: IntoIterator<Item = char>>(names: I) -> Result<Self> {
        let names: Vec<char> = names.into_iter().collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must be nonempty".into()));
        }
        for (i, &c) in names.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(Error::InvalidAlphabet(format!(
                    "generator {c:?} is not a lowercase ASCII letter"
                )));
            }
            if names[..i].contains(&c) {
                return Err(Error::InvalidAlphabet(format!("duplicate generator {c:?}")));
            }
        }
        Ok(Alphabet { names: names.into() })
    }

    /// Parses an alphabet written as a string of generator names, e.g. `"ab"`.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.chars().filter(|c| !c.is_whitespace() && *c != ','))
    }

    /// The first `rank` letters of `a..z`.
    pub fn standard(rank: usize) -> Result<Self> {
        if rank > 26 {
            return Err(Error::InvalidAlphabet(format!("rank {rank} exceeds 26")));
        }
        Self::new((0..rank).map(|i| (b'a' + i as u8) as char))
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// Number of signed letters, `2 * rank`.
    pub fn width(&self) -> usize {
        2 * self.names.len()
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    /// All signed letters in index order `a, A, b, B, ...`.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.width()).map(Letter::from_index)
    }

    pub fn positive_letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.rank()).map(|g| Letter::new(g, false))
    }

    pub fn letter_char(&self, letter: Letter) -> char {
        let c = self.names[letter.generator()];
        if letter.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn letter_from_char(&self, c: char) -> Result<Letter> {
        let lower = c.to_ascii_lowercase();
        match self.names.iter().position(|&n| n == lower) {
            Some(g) if c.is_ascii_alphabetic() => Ok(Letter::new(g, c.is_ascii_uppercase())),
            _ => Err(Error::AlphabetMismatch(format!(
                "letter {c:?} is not in alphabet {self}"
            ))),
        }
    }

    /// Parses a word in the text syntax. `""` and `"1"` are the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let trimmed = s.trim();
        if trimmed == "1" || trimmed == "ε" {
            return Ok(Word::default());
        }
        trimmed
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| self.letter_from_char(c))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn parse_reduced(&self, s: &str) -> Result<ReducedWord> {
        Ok(self.parse_word(s)?.reduce())
    }

    /// Parses a comma-separated list of words, e.g. `"aa,b"`.
    pub fn parse_word_list(&self, s: &str) -> Result<Vec<ReducedWord>> {
        if s.trim().is_empty() {
            return Ok(Vec::new());
        }
        s.split(',').map(|part| self.parse_reduced(part)).collect()
    }

    /// Fails unless every letter belongs to this alphabet.
    pub fn check(&self, letters: &[Letter]) -> Result<()> {
        match letters.iter().find(|l| l.index() >= self.width()) {
            Some(l) => Err(Error::AlphabetMismatch(format!(
                "letter index {} outside alphabet {self}",
                l.index()
            ))),
            None => Ok(()),
        }
    }

    pub fn format(&self, letters: &[Letter]) -> String {
        letters.iter().map(|&l| self.letter_char(l)).collect()
    }

    /// Formats a word, writing the empty word as `1`.
    pub fn display(&self, letters: &[Letter]) -> String {
        if letters.is_empty() {
            "1".to_string()
        } else {
            self.format(letters)
        }
    }

    pub fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!("{self} vs {other}")))
        }
    }

    pub fn multiply(&self, u: &ReducedWord, v: &ReducedWord) -> Result<ReducedWord> {
        self.check(u.letters())?;
        self.check(v.letters())?;
        Ok(u.mul(v))
    }

    pub fn invert(&self, u: &ReducedWord) -> Result<ReducedWord> {
        self.check(u.letters())?;
        Ok(u.inverse())
    }

    pub fn group_op(&self, op: GroupOp, u: &ReducedWord, v: Option<&ReducedWord>) -> Result<ReducedWord> {
        match (op, v) {
            (GroupOp::Multiply, Some(v)) => self.multiply(u, v),
            (GroupOp::Invert, None) => self.invert(u),
            (GroupOp::Multiply, None) => Err(Error::Precondition("multiply needs two operands".into())),
            (GroupOp::Invert, Some(_)) => Err(Error::Precondition("invert takes one operand".into())),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.names.iter().collect();
        write!(f, "{{{s}}}")
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({self})")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupOp {
    Multiply,
    Invert,
}

/// An arbitrary word over `A ∪ A⁻¹`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reduce(&self) -> ReducedWord {
        ReducedWord::from_letters(self.0.iter().copied())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ReducedWord(Vec<Letter>);

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord(Vec::new())
    }

    /// Freely reduces a letter sequence with a single stack pass.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        ReducedWord(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &ReducedWord) -> ReducedWord {
        let mut common = 0;
        while common < self.len().min(other.len())
            && self.0[self.len() - 1 - common] == other.0[common].inverse()
        {
            common += 1;
        }
        let mut out = Vec::with_capacity(self.len() + other.len() - 2 * common);
        out.extend_from_slice(&self.0[..self.len() - common]);
        out.extend_from_slice(&other.0[common..]);
        ReducedWord(out)
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `self⁻¹ · h · self`.
    pub fn conjugate(&self, h: &ReducedWord) -> ReducedWord {
        self.inverse().mul(h).mul(self)
    }

    pub fn into_word(self) -> Word {
        Word(self.0)
    }

    pub fn is_reduced(letters: &[Letter]) -> bool {
        letters.windows(2).all(|w| w[0] != w[1].inverse())
    }
}

/// Every reduced word over `alphabet` of length exactly `len`.
pub fn reduced_words_of_length(alphabet: &Alphabet, len: usize) -> Vec<ReducedWord> {
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.width());
        for w in &layer {
            for l in alphabet.letters() {
                if w.last() != Some(&l.inverse()) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    layer.into_iter().map(ReducedWord).collect()
}

/// Every reduced word of length at most `max_len`, shortest first.
pub fn reduced_words_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<ReducedWord> {
    (0..=max_len)
        .flat_map(|n| reduced_words_of_length(alphabet, n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    #[test]
    fn reduce_examples() {
        let a = ab();
        assert_eq!(a.format(a.parse_reduced("aAb").unwrap().letters()), "b");
        assert!(a.parse_reduced("").unwrap().is_empty());
        assert_eq!(a.format(a.parse_reduced("abBa").unwrap().letters()), "aa");
    }

    #[test]
    fn group_op_examples() {
        let a = ab();
        let w = |s| a.parse_reduced(s).unwrap();
        assert!(a.multiply(&w("a"), &w("A")).unwrap().is_empty());
        assert_eq!(a.format(a.invert(&w("aB")).unwrap().letters()), "bA");
        assert_eq!(a.format(a.multiply(&w("ab"), &w("Ba")).unwrap().letters()), "aa");
        assert!(a.group_op(GroupOp::Multiply, &w("a"), None).is_err());
    }

    #[test]
    fn unknown_letter_is_rejected() {
        assert!(matches!(ab().parse_word("ac"), Err(Error::AlphabetMismatch(_))));
        let big = Alphabet::parse("abc").unwrap().parse_reduced("c").unwrap();
        assert!(ab().invert(&big).is_err());
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::parse("").is_err());
        assert!(Alphabet::parse("aa").is_err());
        assert!(Alphabet::parse("aB").is_err());
        assert_eq!(Alphabet::standard(3).unwrap(), Alphabet::parse("abc").unwrap());
    }

    #[test]
    fn reduced_word_counts() {
        // 1 + 4 * 3^(n-1) reduced words of each positive length over rank 2.
        let a = ab();
        let counts: Vec<usize> = (0..5).map(|n| reduced_words_of_length(&a, n).len()).collect();
        assert_eq!(counts, vec![1, 4, 12, 36, 108]);
    }

    fn word_strategy() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((0usize..4).prop_map(Letter::from_index), 0..24)
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_parity_preserving(w in word_strategy()) {
            let r = Word(w.clone()).reduce();
            prop_assert!(ReducedWord::is_reduced(r.letters()));
            prop_assert_eq!(r.clone().into_word().reduce(), r.clone());
            prop_assert!(r.len() <= w.len());
            prop_assert_eq!((w.len() - r.len()) % 2, 0);
        }

        #[test]
        fn product_with_inverse_is_identity(w in word_strategy()) {
            let u = Word(w).reduce();
            prop_assert!(u.mul(&u.inverse()).is_empty());
            prop_assert!(u.inverse().mul(&u).is_empty());
        }

        #[test]
        fn mul_agrees_with_concatenate_then_reduce(u in word_strategy(), v in word_strategy()) {
            let (ru, rv) = (Word(u.clone()).reduce(), Word(v.clone()).reduce());
            let joined: Vec<Letter> = u.into_iter().chain(v).collect();
            prop_assert_eq!(ru.mul(&rv), Word(joined).reduce());
        }
    }
}
