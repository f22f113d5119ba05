//! Alphabets and finite words.
//!
//! Letters are stored as indices into an [`Alphabet`]; the alphabet order
//! fixes the row/column order of incidence matrices.

use std::borrow::Borrow;
use std::fmt;
use std::ops::Deref;

use crate::error::ParseError;

/// Index of a letter in its alphabet.
pub type Letter = u8;

/// Largest supported alphabet; letter sets are stored as 64-bit masks.
pub const MAX_LETTERS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: Vec<char>) -> Result<Self, ParseError> {
        if letters.len() < 2 {
            return Err(ParseError::AlphabetTooSmall(letters.len()));
        }
        if letters.len() > MAX_LETTERS {
            return Err(ParseError::AlphabetTooLarge {
                found: letters.len(),
                max: MAX_LETTERS,
            });
        }
        for (i, c) in letters.iter().enumerate() {
            if letters[..i].contains(c) {
                return Err(ParseError::DuplicateLetter(*c));
            }
        }
        Ok(Alphabet { letters })
    }

    pub fn from_str_letters(s: &str) -> Result<Self, ParseError> {
        Self::new(s.chars().collect())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn symbol(&self, letter: Letter) -> char {
        self.letters[letter as usize]
    }

    pub fn index_of(&self, c: char) -> Option<Letter> {
        self.letters.iter().position(|&x| x == c).map(|i| i as Letter)
    }

    /// Reads a word written with this alphabet's symbols.
    pub fn parse_word(&self, s: &str) -> Result<Word, ParseError> {
        s.chars()
            .map(|c| self.index_of(c).ok_or(ParseError::UnknownLetter(c)))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn render(&self, w: &[Letter]) -> String {
        w.iter().map(|&l| self.symbol(l)).collect()
    }

    /// Renders the empty word as `ε`.
    pub fn render_display(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            "ε".to_string()
        } else {
            self.render(w)
        }
    }

    pub fn all_letters(&self) -> LetterSet {
        LetterSet::full(self.len())
    }
}

/// A finite word as a sequence of letter indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn letter_set(&self) -> LetterSet {
        letter_set_of(&self.0)
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

/// Set of letters as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LetterSet(pub u64);

impl LetterSet {
    pub fn full(m: usize) -> Self {
        if m >= 64 {
            LetterSet(u64::MAX)
        } else {
            LetterSet((1u64 << m) - 1)
        }
    }

    pub fn insert(&mut self, l: Letter) {
        self.0 |= 1u64 << l;
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.0 & (1u64 << l) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..64u8).filter(move |&l| self.contains(l))
    }

    /// The single member, if there is exactly one.
    pub fn unique(&self) -> Option<Letter> {
        if self.len() == 1 {
            Some(self.0.trailing_zeros() as Letter)
        } else {
            None
        }
    }
}

pub fn letter_set_of(w: &[Letter]) -> LetterSet {
    let mut s = LetterSet::default();
    for &l in w {
        s.insert(l);
    }
    s
}

/// A word paired with its alphabet for display.
pub struct Rendered<'a>(pub &'a Alphabet, pub &'a [Letter]);

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render_display(self.1))
    }
}

/// Number of indices at which `w` occurs in `v`, overlaps included.
///
/// The empty word occurs at every index `0..=|v|`.
pub fn occurrences(w: &[Letter], v: &[Letter]) -> usize {
    if w.len() > v.len() {
        return 0;
    }
    if w.is_empty() {
        return v.len() + 1;
    }
    v.windows(w.len()).filter(|win| *win == w).count()
}
