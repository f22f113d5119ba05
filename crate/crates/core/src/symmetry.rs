//! Symmetries of a language: letter permutations extended to words either
//! morphically or antimorphically, the finite groups they generate, and the
//! palindromic quantities attached to antimorphisms.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::Path;

use crate::error::{ParseError, SymmetryError};
use crate::language::LanguageIndex;
use crate::word::{letter_set_of, Alphabet, Letter, LetterSet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Morphic,
    Antimorphic,
}

impl Orientation {
    fn compose(self, other: Orientation) -> Orientation {
        if self == other {
            Orientation::Morphic
        } else {
            Orientation::Antimorphic
        }
    }
}

/// A letter permutation acting on words; antimorphic symmetries reverse the
/// word before permuting. Ordering is orientation first, then the
/// permutation in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symmetry {
    orientation: Orientation,
    perm: Vec<Letter>,
}

impl Symmetry {
    pub fn new(perm: Vec<Letter>, orientation: Orientation) -> Result<Self, ParseError> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            match seen.get_mut(p as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(ParseError::NotABijection(format!("{perm:?}"))),
            }
        }
        Ok(Symmetry { orientation, perm })
    }

    pub fn identity(m: usize) -> Self {
        Symmetry {
            orientation: Orientation::Morphic,
            perm: (0..m as Letter).collect(),
        }
    }

    /// Mirror image `R`.
    pub fn reversal(m: usize) -> Self {
        Symmetry {
            orientation: Orientation::Antimorphic,
            perm: (0..m as Letter).collect(),
        }
    }

    pub fn perm(&self) -> &[Letter] {
        &self.perm
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn is_antimorphic(&self) -> bool {
        self.orientation == Orientation::Antimorphic
    }

    pub fn is_identity(&self) -> bool {
        !self.is_antimorphic() && self.perm_is_identity()
    }

    pub fn is_reversal(&self) -> bool {
        self.is_antimorphic() && self.perm_is_identity()
    }

    fn perm_is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    pub fn apply(&self, w: &[Letter]) -> Word {
        let map = |&a: &Letter| self.perm[a as usize];
        match self.orientation {
            Orientation::Morphic => Word(w.iter().map(map).collect()),
            Orientation::Antimorphic => Word(w.iter().rev().map(map).collect()),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Symmetry) -> Symmetry {
        Symmetry {
            orientation: self.orientation.compose(other.orientation),
            perm: other.perm.iter().map(|&b| self.perm[b as usize]).collect(),
        }
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Whether the permutations agree on every letter of `letters`.
    fn agrees_on(&self, other: &Symmetry, letters: LetterSet) -> bool {
        letters.iter().all(|a| self.perm[a as usize] == other.perm[a as usize])
    }

    /// Generator-file line, e.g. `perm: 0->1,1->0; orientation: antimorphism`.
    pub fn describe(&self, alphabet: &Alphabet) -> String {
        let perm: Vec<String> = self
            .perm
            .iter()
            .enumerate()
            .map(|(i, &p)| format!("{}->{}", alphabet.symbol(i as Letter), alphabet.symbol(p)))
            .collect();
        let o = match self.orientation {
            Orientation::Morphic => "morphism",
            Orientation::Antimorphic => "antimorphism",
        };
        format!("perm: {}; orientation: {o}", perm.join(","))
    }

    /// Short name: `Id`, `R`, or `morph[...]` / `anti[...]` with the images
    /// of the letters in alphabet order.
    pub fn notation(&self, alphabet: &Alphabet) -> String {
        if self.is_identity() {
            return "Id".to_string();
        }
        if self.is_reversal() {
            return "R".to_string();
        }
        let images = alphabet.render(&self.perm);
        match self.orientation {
            Orientation::Morphic => format!("morph[{images}]"),
            Orientation::Antimorphic => format!("anti[{images}]"),
        }
    }
}

/// Parses generators, one per line:
/// `perm: 0->1,1->0,2->2,3->3; orientation: antimorphism`.
/// Unlisted letters are fixed. Blank lines and `#` comments are ignored.
pub fn parse_generators(text: &str, alphabet: &Alphabet) -> Result<Vec<Symmetry>, ParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: &str| ParseError::Syntax {
            line: line_no,
            message: message.to_string(),
        };
        let mut perm: Vec<Option<Letter>> = vec![None; alphabet.len()];
        let mut orientation = None;
        for part in line.split(';') {
            let (key, value) = part
                .split_once(':')
                .ok_or_else(|| syntax("expected `key: value`"))?;
            match key.trim() {
                "perm" => {
                    for pair in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                        let (from, to) = pair
                            .split_once("->")
                            .ok_or_else(|| syntax("expected `a->b` in permutation"))?;
                        let from = single_letter(from.trim(), alphabet, line_no)?;
                        let to = single_letter(to.trim(), alphabet, line_no)?;
                        if perm[from as usize].replace(to).is_some() {
                            return Err(ParseError::NotABijection(format!(
                                "letter {:?} mapped twice",
                                alphabet.symbol(from)
                            )));
                        }
                    }
                }
                "orientation" => {
                    orientation = Some(match value.trim() {
                        "morphism" | "morphic" => Orientation::Morphic,
                        "antimorphism" | "antimorphic" => Orientation::Antimorphic,
                        other => return Err(syntax(&format!("unknown orientation {other:?}"))),
                    })
                }
                other => return Err(syntax(&format!("unknown key {other:?}"))),
            }
        }
        let orientation = orientation.ok_or_else(|| syntax("missing orientation"))?;
        let perm: Vec<Letter> = perm
            .iter()
            .enumerate()
            .map(|(i, p)| p.unwrap_or(i as Letter))
            .collect();
        out.push(Symmetry::new(perm, orientation)?);
    }
    Ok(out)
}

pub fn read_generators(path: &Path, alphabet: &Alphabet) -> Result<Vec<Symmetry>, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_generators(&text, alphabet)
}

fn single_letter(s: &str, alphabet: &Alphabet, line: usize) -> Result<Letter, ParseError> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => alphabet.index_of(c).ok_or(ParseError::UnknownLetter(c)),
        _ => Err(ParseError::Syntax {
            line,
            message: format!("expected a single letter, found {s:?}"),
        }),
    }
}

/// A finite group of symmetries, elements in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    elements: Vec<Symmetry>,
}

impl SymmetryGroup {
    /// Smallest composition-closed set containing the generators and `Id`.
    pub fn closure(generators: &[Symmetry], m: usize) -> Self {
        let mut seen: BTreeSet<Symmetry> = BTreeSet::new();
        let mut queue = VecDeque::new();
        let id = Symmetry::identity(m);
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        SymmetryGroup {
            elements: seen.into_iter().collect(),
        }
    }

    /// `{Id, R}`.
    pub fn reversal_group(m: usize) -> Self {
        Self::closure(&[Symmetry::reversal(m)], m)
    }

    pub fn elements(&self) -> &[Symmetry] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = &Symmetry> {
        self.elements.iter().filter(|s| !s.is_antimorphic())
    }

    pub fn antimorphisms(&self) -> impl Iterator<Item = &Symmetry> {
        self.elements.iter().filter(|s| s.is_antimorphic())
    }

    /// `G⁽²⁾`: the involutive antimorphisms.
    pub fn involutive_antimorphisms(&self) -> Vec<&Symmetry> {
        self.antimorphisms().filter(|s| s.is_involution()).collect()
    }

    pub fn has_antimorphism(&self) -> bool {
        self.antimorphisms().next().is_some()
    }

    pub fn contains_reversal(&self) -> bool {
        self.elements.iter().any(Symmetry::is_reversal)
    }

    pub fn contains(&self, s: &Symmetry) -> bool {
        self.elements.binary_search(s).is_ok()
    }
}

/// First factor and group element witnessing `Ψ(L_n) ≠ L_n` for some
/// `n ≤ n_max`.
pub fn invariance_violation(l: &LanguageIndex, g: &SymmetryGroup) -> Option<(Symmetry, Word)> {
    for n in 1..=l.n_max() {
        let factors = l.factors(n).expect("within range");
        for s in g.elements() {
            for w in factors {
                if !l.contains(&s.apply(w)) {
                    return Some((s.clone(), w.clone()));
                }
            }
        }
    }
    None
}

/// Whether every element of `g` maps `L_n` onto itself for all `n ≤ n_max`.
pub fn check_invariance(l: &LanguageIndex, g: &SymmetryGroup) -> bool {
    invariance_violation(l, g).is_none()
}

/// `P_θ(n)`, the number of θ-palindromes in `L_n`.
pub fn theta_palindromic_complexity(
    l: &LanguageIndex,
    theta: &Symmetry,
    n: usize,
) -> Result<usize, SymmetryError> {
    if !theta.is_antimorphic() {
        return Err(SymmetryError::NotAntimorphic);
    }
    let factors = l.factors(n)?;
    Ok(factors.iter().filter(|w| theta.apply(w) == **w).count())
}

/// Smallest `N ≥ 1` such that every factor of length `N` contains every letter.
pub fn uniform_recurrence_n(l: &LanguageIndex) -> Result<usize, SymmetryError> {
    let all = l.alphabet().all_letters();
    (1..=l.n_max())
        .find(|&n| {
            l.factors(n)
                .expect("within range")
                .iter()
                .all(|w| letter_set_of(w) == all)
        })
        .ok_or(SymmetryError::NoUniformRecurrenceLength(l.n_max()))
}

/// Smallest `N` such that distinct antimorphisms of `g` (and distinct
/// morphisms of `g`) disagree on every factor of every length `n ≥ N` up to
/// the horizon.
///
/// Agreement on a word means agreement of the permutations on its letters,
/// which passes to subwords, so the admissible lengths are upward closed.
pub fn separation_n(l: &LanguageIndex, g: &SymmetryGroup) -> Result<usize, SymmetryError> {
    let morph: Vec<&Symmetry> = g.morphisms().collect();
    let anti: Vec<&Symmetry> = g.antimorphisms().collect();
    let separated = |letters: LetterSet| {
        [&morph, &anti].iter().all(|class| {
            class.iter().enumerate().all(|(i, a)| {
                class[i + 1..].iter().all(|b| !a.agrees_on(b, letters))
            })
        })
    };
    let mut seen: HashSet<LetterSet> = HashSet::new();
    let mut best = None;
    for n in (0..=l.n_max()).rev() {
        seen.clear();
        let ok = l.factors(n)?.iter().all(|w| {
            let s = letter_set_of(w);
            !seen.insert(s) || separated(s)
        });
        if !ok {
            break;
        }
        best = Some(n);
    }
    best.ok_or(SymmetryError::NoUniformRecurrenceLength(l.n_max()))
}

/// Which threshold `N` gates the palindromic inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Gate {
    /// Every factor of length `N` contains every letter.
    #[default]
    UniformRecurrence,
    /// The weaker separation condition on distinct symmetries.
    Separation,
    /// Evaluate regardless of `N`.
    Forced,
}

pub fn threshold(l: &LanguageIndex, g: &SymmetryGroup, gate: Gate) -> Result<usize, SymmetryError> {
    match gate {
        Gate::UniformRecurrence => uniform_recurrence_n(l),
        Gate::Separation => separation_n(l, g),
        Gate::Forced => Ok(0),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PalindromeCheck {
    pub n: usize,
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
}

/// `Σ_{θ∈G⁽²⁾} (P_θ(n) + P_θ(n+1)) ≤ ΔC(n) + #G`.
pub fn palindrome_bound_check(
    l: &LanguageIndex,
    g: &SymmetryGroup,
    n: usize,
    gate: Gate,
) -> Result<PalindromeCheck, SymmetryError> {
    if !g.has_antimorphism() {
        return Err(SymmetryError::NoAntimorphism);
    }
    let t = threshold(l, g, gate)?;
    if n < t {
        return Err(SymmetryError::BelowThreshold { n, threshold: t });
    }
    let (_, delta) = l.complexity_delta(n)?;
    let mut lhs = 0;
    for theta in g.involutive_antimorphisms() {
        lhs += theta_palindromic_complexity(l, theta, n)?;
        lhs += theta_palindromic_complexity(l, theta, n + 1)?;
    }
    let rhs = delta + g.order();
    Ok(PalindromeCheck {
        n,
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}

/// Palindromic counts of one involutive antimorphism.
#[derive(Clone, Debug)]
pub struct ThetaRow {
    pub theta: Symmetry,
    /// `P_θ(n)` for `n = 0..=n_max`.
    pub counts: Vec<usize>,
    /// θ-palindromic bispecial factors of each length.
    pub bispecial: Vec<Vec<Word>>,
}

#[derive(Clone, Debug)]
pub struct PalindromeReport {
    pub rows: Vec<ThetaRow>,
}

impl PalindromeReport {
    pub fn build(l: &LanguageIndex, g: &SymmetryGroup) -> Result<Self, SymmetryError> {
        let mut rows = Vec::new();
        for theta in g.involutive_antimorphisms() {
            let mut counts = Vec::new();
            let mut bispecial = Vec::new();
            for n in 0..=l.n_max() {
                counts.push(theta_palindromic_complexity(l, theta, n)?);
                let bs = l.special_factors(n)?.bispecial;
                bispecial.push(bs.into_iter().filter(|w| theta.apply(w) == *w).collect());
            }
            rows.push(ThetaRow {
                theta: theta.clone(),
                counts,
                bispecial,
            });
        }
        Ok(PalindromeReport { rows })
    }

    /// `Σ_θ #{θ-palindromic BS factors of length n}`.
    pub fn bispecial_palindrome_sum(&self, n: usize) -> usize {
        self.rows.iter().map(|r| r.bispecial[n].len()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::Morphism;

    fn example() -> Morphism {
        Morphism::from_rules(&[('0', "0130"), ('1', "1021"), ('2', "102"), ('3', "013")]).unwrap()
    }

    fn theta1() -> Symmetry {
        Symmetry::new(vec![1, 0, 2, 3], Orientation::Antimorphic).unwrap()
    }

    fn theta2() -> Symmetry {
        Symmetry::new(vec![0, 1, 3, 2], Orientation::Antimorphic).unwrap()
    }

    fn example_group() -> SymmetryGroup {
        SymmetryGroup::closure(&[theta1(), theta2()], 4)
    }

    #[test]
    fn action_on_words() {
        let a = Alphabet::from_str_letters("0123").unwrap();
        let w = a.parse_word("01301").unwrap();
        assert_eq!(theta1().apply(&w), w);
        assert_eq!(a.render(&theta2().apply(&w)), "10210");
        let b = Alphabet::from_str_letters("abc").unwrap();
        assert_eq!(b.render(&Symmetry::reversal(3).apply(&b.parse_word("abc").unwrap())), "cba");
    }

    #[test]
    fn closure_of_example_generators() {
        let g = example_group();
        assert_eq!(g.order(), 4);
        assert!(g.contains(&Symmetry::identity(4)));
        assert!(g.contains(&theta1().compose(&theta2())));
        assert_eq!(g.involutive_antimorphisms(), vec![&theta2(), &theta1()]);
        assert_eq!(SymmetryGroup::reversal_group(2).order(), 2);
        let psi = Symmetry::new(vec![1, 0], Orientation::Morphic).unwrap();
        let tm = SymmetryGroup::closure(&[Symmetry::reversal(2), psi], 2);
        assert_eq!(tm.order(), 4);
        assert_eq!(tm.involutive_antimorphisms().len(), 2);
    }

    #[test]
    fn orientation_algebra() {
        let g = example_group();
        let t = theta1();
        for s in g.elements() {
            assert_ne!(t.compose(s).is_antimorphic(), s.is_antimorphic());
        }
        assert!(!t.compose(&theta2()).is_antimorphic());
    }

    #[test]
    fn parses_generator_lines() {
        let a = Alphabet::from_str_letters("0123").unwrap();
        let text = "# example\nperm: 0->1,1->0,2->2,3->3; orientation: antimorphism\nperm: 2->3,3->2; orientation: antimorphism\n";
        let gens = parse_generators(text, &a).unwrap();
        assert_eq!(gens, vec![theta1(), theta2()]);
        assert_eq!(theta1().describe(&a), "perm: 0->1,1->0,2->2,3->3; orientation: antimorphism");
        assert!(matches!(
            parse_generators("perm: 0->1,1->1; orientation: morphism", &a),
            Err(ParseError::NotABijection(_))
        ));
        assert!(matches!(
            parse_generators("perm: 0->1; orientation: sideways", &a),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_generators("perm: 0->9; orientation: morphism", &a),
            Err(ParseError::UnknownLetter('9'))
        ));
    }

    #[test]
    fn invariance_of_example_language() {
        let l = LanguageIndex::build(&example(), 0, 12).unwrap();
        assert!(check_invariance(&l, &example_group()));
        let r = SymmetryGroup::reversal_group(4);
        assert!(!check_invariance(&l, &r));
        let fib = Morphism::from_rules(&[('0', "01"), ('1', "0")]).unwrap();
        let l = LanguageIndex::build(&fib, 0, 12).unwrap();
        assert!(check_invariance(&l, &SymmetryGroup::reversal_group(2)));
    }

    #[test]
    fn palindromic_counts() {
        let l = LanguageIndex::build(&example(), 0, 12).unwrap();
        assert_eq!(theta_palindromic_complexity(&l, &theta1(), 1).unwrap(), 2);
        assert_eq!(theta_palindromic_complexity(&l, &theta2(), 1).unwrap(), 2);
        assert_eq!(theta_palindromic_complexity(&l, &theta1(), 0).unwrap(), 1);
        assert_eq!(
            theta_palindromic_complexity(&l, &Symmetry::identity(4), 1),
            Err(SymmetryError::NotAntimorphic)
        );
    }

    #[test]
    fn thresholds() {
        let tm = Morphism::from_rules(&[('0', "01"), ('1', "10")]).unwrap();
        let l = LanguageIndex::build(&tm, 0, 10).unwrap();
        assert_eq!(uniform_recurrence_n(&l).unwrap(), 3);
        let fib = Morphism::from_rules(&[('0', "01"), ('1', "0")]).unwrap();
        let l = LanguageIndex::build(&fib, 0, 10).unwrap();
        assert_eq!(uniform_recurrence_n(&l).unwrap(), 3);
        assert_eq!(separation_n(&l, &SymmetryGroup::reversal_group(2)).unwrap(), 0);
    }

    #[test]
    fn palindrome_inequality_on_example() {
        let l = LanguageIndex::build(&example(), 0, 14).unwrap();
        let g = example_group();
        let n0 = uniform_recurrence_n(&l).unwrap();
        let c = palindrome_bound_check(&l, &g, n0.max(10), Gate::UniformRecurrence).unwrap();
        assert_eq!(c.rhs, 6);
        assert!(c.holds);
        assert!(matches!(
            palindrome_bound_check(&l, &g, 1, Gate::UniformRecurrence),
            Err(SymmetryError::BelowThreshold { n: 1, .. })
        ));
        assert!(palindrome_bound_check(&l, &g, 1, Gate::Forced).is_ok());
    }
}
