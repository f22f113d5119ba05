//! Factor language of a fixed point up to a length cap.
//!
//! Factor sets are read off iterates `ψ^k(seed)` of the expanding power `ψ`
//! of the substitution (every image of length at least 2). When the factor
//! sets of all lengths `≤ N` agree for `ψ^k(seed)` and `ψ^{k+1}(seed)`, they
//! agree for every later iterate: a window of length `≤ N` in `ψ(x)` lies in
//! the image of a factor of `x` of length `≤ N`. So equality of two
//! consecutive iterates certifies `L_n(u)` for every `n ≤ N`.

use std::collections::{HashMap, HashSet};

use crate::error::{LanguageError, WordError};
use crate::morphism::Morphism;
use crate::word::{occurrences, Alphabet, Letter, LetterSet, Word};

/// Default cap on iterations of the expanding power while stabilizing.
pub const STABILIZATION_CAP: usize = 40;

#[derive(Clone, Debug)]
pub struct ExtensionRecord {
    pub factor: Word,
    pub left: LetterSet,
    pub right: LetterSet,
}

impl ExtensionRecord {
    pub fn is_left_special(&self) -> bool {
        self.left.len() >= 2
    }
    pub fn is_right_special(&self) -> bool {
        self.right.len() >= 2
    }
    pub fn is_bispecial(&self) -> bool {
        self.is_left_special() && self.is_right_special()
    }
    pub fn is_special(&self) -> bool {
        self.is_left_special() || self.is_right_special()
    }
}

#[derive(Clone, Debug, Default)]
struct Level {
    factors: Vec<Word>,
    ext: HashMap<Word, (LetterSet, LetterSet)>,
}

/// Left special, right special and bispecial factors of one length, each sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecialFactors {
    pub left: Vec<Word>,
    pub right: Vec<Word>,
    pub bispecial: Vec<Word>,
}

/// `L_n(u)` for all `n ≤ n_max + 1`, with extension sets for `n ≤ n_max`.
#[derive(Clone, Debug)]
pub struct LanguageIndex {
    alphabet: Alphabet,
    n_max: usize,
    levels: Vec<Level>,
    prefix: Word,
    stabilized: bool,
    iterations: usize,
}

impl LanguageIndex {
    pub fn build(m: &Morphism, seed: Letter, n_max: usize) -> Result<Self, LanguageError> {
        Self::build_with_cap(m, seed, n_max, STABILIZATION_CAP)
    }

    pub fn build_with_cap(
        m: &Morphism,
        seed: Letter,
        n_max: usize,
        cap: usize,
    ) -> Result<Self, LanguageError> {
        if !m.is_primitive() {
            return Err(WordError::NotPrimitive.into());
        }
        if seed as usize >= m.alphabet().len() {
            return Err(WordError::SymbolOutsideAlphabet(seed as usize).into());
        }
        if !m.is_prolongable(seed) {
            return Err(WordError::NotProlongable(m.alphabet().symbol(seed)).into());
        }
        let (_, psi) = m.expanding_power().ok_or(WordError::NotPrimitive)?;
        let top = n_max + 1;
        let mut current = Word(vec![seed]);
        let mut set = windows(&current, top);
        for k in 0..cap {
            let next = psi.apply(&current)?;
            let next_set = windows(&next, top);
            // equal sets of length `top` give equal sets of every shorter length
            if next_set == set && !set.is_empty() {
                // keep one further iterate as a recurrence witness
                let prefix = psi.apply(&next)?;
                let levels = make_levels(set, top);
                return Ok(LanguageIndex {
                    alphabet: m.alphabet().clone(),
                    n_max,
                    levels,
                    prefix,
                    stabilized: true,
                    iterations: k + 1,
                });
            }
            current = next;
            set = next_set;
        }
        Err(LanguageError::NotStabilized(cap))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Largest length with a known factor set (`n_max + 1`).
    pub fn max_len(&self) -> usize {
        self.n_max + 1
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn is_stabilized(&self) -> bool {
        self.stabilized
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    fn check_len(&self, n: usize, max: usize) -> Result<(), LanguageError> {
        if n > max {
            Err(LanguageError::OutOfRange { n, max })
        } else {
            Ok(())
        }
    }

    /// `L_n(u)`, sorted.
    pub fn factors(&self, n: usize) -> Result<&[Word], LanguageError> {
        self.check_len(n, self.max_len())?;
        Ok(&self.levels[n].factors)
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        w.len() <= self.max_len() && self.levels[w.len()].ext.contains_key(w)
    }

    pub fn extensions(&self, w: &[Letter]) -> Result<ExtensionRecord, LanguageError> {
        self.check_len(w.len(), self.n_max)?;
        let (left, right) = self.levels[w.len()]
            .ext
            .get(w)
            .copied()
            .ok_or_else(|| LanguageError::NotAFactor(self.alphabet.render_display(w)))?;
        Ok(ExtensionRecord {
            factor: Word::from(w),
            left,
            right,
        })
    }

    pub fn special_factors(&self, n: usize) -> Result<SpecialFactors, LanguageError> {
        self.check_len(n, self.n_max)?;
        let mut out = SpecialFactors::default();
        for w in &self.levels[n].factors {
            let (l, r) = self.levels[n].ext[w];
            if l.len() >= 2 {
                out.left.push(w.clone());
            }
            if r.len() >= 2 {
                out.right.push(w.clone());
            }
            if l.len() >= 2 && r.len() >= 2 {
                out.bispecial.push(w.clone());
            }
        }
        Ok(out)
    }

    /// `C(n)`.
    pub fn complexity(&self, n: usize) -> Result<usize, LanguageError> {
        Ok(self.factors(n)?.len())
    }

    /// `(C(n), ΔC(n))` with `ΔC(n) = C(n+1) − C(n)`.
    pub fn complexity_delta(&self, n: usize) -> Result<(usize, usize), LanguageError> {
        self.check_len(n, self.n_max)?;
        let c = self.levels[n].factors.len();
        let c1 = self.levels[n + 1].factors.len();
        Ok((c, c1 - c))
    }

    /// The two sums `Σ(#Rext − 1)` and `Σ(#Lext − 1)` over `L_n`.
    pub fn extension_sums(&self, n: usize) -> Result<(usize, usize), LanguageError> {
        self.check_len(n, self.n_max)?;
        let (mut r, mut l) = (0, 0);
        for (left, right) in self.levels[n].ext.values() {
            r += right.len() - 1;
            l += left.len() - 1;
        }
        Ok((r, l))
    }
}

fn windows(w: &[Letter], n: usize) -> HashSet<Word> {
    if n > w.len() {
        return HashSet::new();
    }
    w.windows(n).map(Word::from).collect()
}

fn make_levels(top_set: HashSet<Word>, top: usize) -> Vec<Level> {
    let mut sets: Vec<HashSet<Word>> = vec![HashSet::new(); top + 1];
    sets[top] = top_set;
    for n in (0..top).rev() {
        let shorter: HashSet<Word> = sets[n + 1]
            .iter()
            .flat_map(|w| [Word::from(&w[..n]), Word::from(&w[1..])])
            .collect();
        sets[n] = shorter;
    }
    let mut levels: Vec<Level> = sets
        .into_iter()
        .map(|s| {
            let mut factors: Vec<Word> = s.into_iter().collect();
            factors.sort();
            let ext = factors
                .iter()
                .map(|f| (f.clone(), (LetterSet::default(), LetterSet::default())))
                .collect();
            Level { factors, ext }
        })
        .collect();
    for n in 0..top {
        let (lower, upper) = levels.split_at_mut(n + 1);
        let cur = &mut lower[n];
        for e in &upper[0].factors {
            let first = e[0];
            let last = e[e.len() - 1];
            if let Some(x) = cur.ext.get_mut(&e[..e.len() - 1]) {
                x.1.insert(last);
            }
            if let Some(x) = cur.ext.get_mut(&e[1..]) {
                x.0.insert(first);
            }
        }
    }
    levels
}

/// Number of occurrences of `w` in `v` (overlapping).
pub fn count_occurrences(w: &[Letter], v: &[Letter]) -> usize {
    occurrences(w, v)
}
