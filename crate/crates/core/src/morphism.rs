//! Substitutions, their fixed points and incidence matrices.

use std::fmt;
use std::path::Path;

use crate::error::{ParseError, WordError};
use crate::word::{Alphabet, Letter, Word};

/// Applications of the substitution allowed while growing a fixed-point prefix.
pub const FIXED_POINT_ITERATION_CAP: usize = 64;

/// A non-erasing substitution on a finite alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    alphabet: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self, ParseError> {
        if images.len() != alphabet.len() {
            let missing = alphabet.letters()[images.len().min(alphabet.len())];
            return Err(ParseError::MissingRule(missing));
        }
        for (i, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(ParseError::ErasingRule(alphabet.symbol(i as Letter)));
            }
            if let Some(&bad) = img.iter().find(|&&l| l as usize >= alphabet.len()) {
                return Err(ParseError::Syntax {
                    line: 0,
                    message: format!("image uses letter index {bad} outside the alphabet"),
                });
            }
        }
        Ok(Morphism { alphabet, images })
    }

    /// Builds a morphism from `(letter, image)` string pairs; the alphabet is
    /// the list of rule heads in order.
    pub fn from_rules(rules: &[(char, &str)]) -> Result<Self, ParseError> {
        let alphabet = Alphabet::new(rules.iter().map(|(c, _)| *c).collect())?;
        let images = rules
            .iter()
            .map(|(_, img)| alphabet.parse_word(img))
            .collect::<Result<Vec<_>, _>>()?;
        Morphism::new(alphabet, images)
    }

    /// Parses the `<letter> -> <image>` text format. Blank lines and `#`
    /// comments are ignored; the alphabet is the set of rule heads in order.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut heads: Vec<char> = Vec::new();
        let mut raw: Vec<(usize, String)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = match line.find('#') {
                Some(i) => &line[..i],
                None => line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| ParseError::Syntax {
                line: lineno + 1,
                message: "expected `<letter> -> <image>`".into(),
            })?;
            let lhs = lhs.trim();
            let mut chars = lhs.chars();
            let head = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => {
                    return Err(ParseError::Syntax {
                        line: lineno + 1,
                        message: format!("rule head {lhs:?} must be a single letter"),
                    })
                }
            };
            if heads.contains(&head) {
                return Err(ParseError::DuplicateRule(head));
            }
            let rhs: String = rhs.chars().filter(|c| !c.is_whitespace()).collect();
            if rhs.is_empty() {
                return Err(ParseError::ErasingRule(head));
            }
            heads.push(head);
            raw.push((lineno + 1, rhs));
        }
        let alphabet = Alphabet::new(heads)?;
        let images = raw
            .iter()
            .map(|(_, img)| alphabet.parse_word(img))
            .collect::<Result<Vec<_>, _>>()?;
        Morphism::new(alphabet, images)
    }

    pub fn from_file(path: &Path) -> Result<Self, ParseError> {
        let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let images = (0..alphabet.len()).map(|i| Word(vec![i as Letter])).collect();
        Morphism { alphabet, images }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, letter: Letter) -> &Word {
        &self.images[letter as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn min_image_len(&self) -> usize {
        self.images.iter().map(|w| w.len()).min().unwrap_or(0)
    }

    /// Image of `w`: the concatenation of the images of its letters.
    pub fn apply(&self, w: &[Letter]) -> Result<Word, WordError> {
        let mut out = Vec::with_capacity(w.len() * self.max_image_len());
        for &l in w {
            let img = self
                .images
                .get(l as usize)
                .ok_or(WordError::SymbolOutsideAlphabet(l as usize))?;
            out.extend_from_slice(img);
        }
        Ok(Word(out))
    }

    /// `outer ∘ inner`: the image of `a` is `outer(inner(a))`.
    pub fn compose(outer: &Morphism, inner: &Morphism) -> Result<Morphism, WordError> {
        if outer.alphabet != inner.alphabet {
            return Err(WordError::AlphabetMismatch);
        }
        let images = inner
            .images
            .iter()
            .map(|img| outer.apply(img))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Morphism {
            alphabet: outer.alphabet.clone(),
            images,
        })
    }

    pub fn power(&self, k: usize) -> Morphism {
        let mut acc = Morphism::identity(self.alphabet.clone());
        for _ in 0..k {
            acc = Morphism::compose(self, &acc).expect("same alphabet");
        }
        acc
    }

    /// Smallest `t ≥ 1` such that every image of `φ^t` has length at least 2,
    /// together with that power. `None` if the lengths never grow (some letter
    /// is trapped in a cycle of length-1 images).
    pub fn expanding_power(&self) -> Option<(usize, Morphism)> {
        let m = self.alphabet.len();
        let mut pow = self.clone();
        for t in 1..=m + 1 {
            if pow.min_image_len() >= 2 {
                return Some((t, pow));
            }
            pow = Morphism::compose(self, &pow).expect("same alphabet");
        }
        None
    }

    pub fn is_prolongable(&self, seed: Letter) -> bool {
        let img = self.image(seed);
        img.len() >= 2 && img[0] == seed
    }

    /// A prefix of the fixed point starting with `seed`, of length at least
    /// `min_len`, obtained as an iterate `φ^k(seed)`.
    pub fn fixed_point_prefix(&self, seed: Letter, min_len: usize) -> Result<Word, WordError> {
        if seed as usize >= self.alphabet.len() {
            return Err(WordError::SymbolOutsideAlphabet(seed as usize));
        }
        if !self.is_prolongable(seed) {
            return Err(WordError::NotProlongable(self.alphabet.symbol(seed)));
        }
        let mut w = self.image(seed).clone();
        for _ in 1..FIXED_POINT_ITERATION_CAP {
            if w.len() >= min_len {
                return Ok(w);
            }
            w = self.apply(&w)?;
        }
        if w.len() >= min_len {
            Ok(w)
        } else {
            Err(WordError::IterationCap {
                min_len,
                cap: FIXED_POINT_ITERATION_CAP,
            })
        }
    }

    /// Exactly `len` letters of the fixed point.
    pub fn fixed_point_exact(&self, seed: Letter, len: usize) -> Result<Word, WordError> {
        let mut w = self.fixed_point_prefix(seed, len)?;
        w.0.truncate(len);
        Ok(w)
    }

    /// Incidence matrix: entry `(i, j)` counts letter `i` in the image of letter `j`.
    pub fn incidence_matrix(&self) -> IntegerMatrix {
        let m = self.alphabet.len();
        let mut mat = IntegerMatrix::zeros(m);
        for (j, img) in self.images.iter().enumerate() {
            for &l in img.iter() {
                mat.entries[l as usize * m + j] += 1;
            }
        }
        mat
    }

    /// True iff some power `k ≤ (m-1)² + 1` of the incidence matrix is
    /// entrywise positive.
    pub fn is_primitive(&self) -> bool {
        self.incidence_matrix().is_primitive()
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, img) in self.images.iter().enumerate() {
            writeln!(
                f,
                "{} -> {}",
                self.alphabet.symbol(i as Letter),
                self.alphabet.render(img)
            )?;
        }
        Ok(())
    }
}

/// Square matrix of nonnegative integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    dim: usize,
    entries: Vec<u64>,
}

impl IntegerMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntegerMatrix {
            dim,
            entries: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        IntegerMatrix {
            dim,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn column_sum(&self, j: usize) -> u64 {
        (0..self.dim).map(|i| self.get(i, j)).sum()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = IntegerMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Wielandt: a primitive `m × m` matrix has a positive power at exponent
    /// `(m-1)² + 1`, so only the zero pattern needs tracking.
    pub fn is_primitive(&self) -> bool {
        let n = self.dim;
        if n == 0 {
            return false;
        }
        let base: Vec<bool> = self.entries.iter().map(|&x| x > 0).collect();
        let mut cur = base.clone();
        let cap = (n - 1) * (n - 1) + 1;
        for _ in 0..cap {
            if cur.iter().all(|&b| b) {
                return true;
            }
            let mut next = vec![false; n * n];
            for i in 0..n {
                for k in 0..n {
                    if !cur[i * n + k] {
                        continue;
                    }
                    for j in 0..n {
                        if base[k * n + j] {
                            next[i * n + j] = true;
                        }
                    }
                }
            }
            cur = next;
        }
        cur.iter().all(|&b| b)
    }
}
