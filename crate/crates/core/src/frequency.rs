//! Factor frequencies.
//!
//! Letters get the normalized Perron eigenvector. Factors of length 2 solve a
//! small linear system built from their interpretations. Longer factors
//! follow `ρ(v) = Λ⁻¹ Σ_{s ∈ I(v)} ρ(a(s))` where `Λ` is the Perron root of
//! the working morphism (the expanding power of the input), whose ancestors
//! are strictly shorter than `v` once `|v| ≥ 3`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{FrequencyError, LanguageError};
use crate::language::LanguageIndex;
use crate::morphism::Morphism;
use crate::number::{solve_linear, FrequencyValue, NumberField, DEFAULT_TOLERANCE, NEAR_SPLIT};
use crate::spectral::{perron_data_with_tolerance, Mode, SpectralData};
use crate::word::{Letter, Word};

/// `(b₀…b_m, i, j)`: erasing `i` letters on the left and `j` on the right of
/// `φ(b₀…b_m)` gives the interpreted factor, with `i < |φ(b₀)|` and
/// `j < |φ(b_m)|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interpretation {
    pub ancestor: Word,
    pub left_cut: usize,
    pub right_cut: usize,
}

impl Interpretation {
    /// `φ(ancestor)` with the cuts removed.
    pub fn reconstruct(&self, m: &Morphism) -> Word {
        let image: Vec<Letter> = self
            .ancestor
            .iter()
            .flat_map(|&b| m.image(b).iter().copied())
            .collect();
        Word::from(&image[self.left_cut..image.len() - self.right_cut])
    }
}

/// All interpretations of `v` under `m` whose ancestors are factors in `l`.
pub fn interpretations(
    m: &Morphism,
    l: &LanguageIndex,
    v: &[Letter],
) -> Result<Vec<Interpretation>, FrequencyError> {
    if v.is_empty() || !l.contains(v) {
        return Err(LanguageError::NotAFactor(l.alphabet().render_display(v)).into());
    }
    let mut out = Vec::new();
    let mut ancestor = Word::empty();
    for b0 in 0..m.alphabet().len() as Letter {
        let img = m.image(b0);
        for i in 0..img.len() {
            let tail = &img[i..];
            ancestor.0.clear();
            ancestor.push(b0);
            if tail.len() >= v.len() {
                if tail.starts_with(v) {
                    out.push(Interpretation {
                        ancestor: ancestor.clone(),
                        left_cut: i,
                        right_cut: tail.len() - v.len(),
                    });
                }
            } else if v.starts_with(tail) {
                extend(m, l, v, &mut ancestor, i, tail.len(), &mut out)?;
            }
        }
    }
    Ok(out)
}

fn extend(
    m: &Morphism,
    l: &LanguageIndex,
    v: &[Letter],
    ancestor: &mut Word,
    left_cut: usize,
    pos: usize,
    out: &mut Vec<Interpretation>,
) -> Result<(), FrequencyError> {
    if ancestor.len() + 1 > l.max_len() {
        return Err(FrequencyError::NonShrinkingAncestors(
            l.alphabet().render_display(v),
        ));
    }
    for b in 0..m.alphabet().len() as Letter {
        ancestor.push(b);
        if l.contains(ancestor) {
            let img = m.image(b);
            let rest = &v[pos..];
            if img.len() >= rest.len() {
                if img.starts_with(rest) {
                    out.push(Interpretation {
                        ancestor: ancestor.clone(),
                        left_cut,
                        right_cut: img.len() - rest.len(),
                    });
                }
            } else if rest.starts_with(img) {
                extend(m, l, v, ancestor, left_cut, pos + img.len(), out)?;
            }
        }
        ancestor.0.pop();
    }
    Ok(())
}

/// Frequencies of all factors of lengths `0..=max_len`, each level sorted.
#[derive(Clone, Debug)]
pub struct FrequencyMap {
    levels: Vec<Vec<(Word, FrequencyValue)>>,
}

impl FrequencyMap {
    pub fn from_levels(levels: Vec<Vec<(Word, FrequencyValue)>>) -> Self {
        let mut levels = levels;
        for level in &mut levels {
            level.sort_by(|a, b| a.0.cmp(&b.0));
        }
        FrequencyMap { levels }
    }

    pub fn max_len(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &[(Word, FrequencyValue)] {
        self.levels.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn get(&self, w: &[Letter]) -> Option<&FrequencyValue> {
        let level = self.levels.get(w.len())?;
        level
            .binary_search_by(|(x, _)| x.as_slice().cmp(w))
            .ok()
            .map(|i| &level[i].1)
    }

    /// Replaces one value; used to build negative controls.
    pub fn set(&mut self, w: &[Letter], value: FrequencyValue) -> bool {
        let Some(level) = self.levels.get_mut(w.len()) else {
            return false;
        };
        match level.binary_search_by(|(x, _)| x.as_slice().cmp(w)) {
            Ok(i) => {
                level[i].1 = value;
                true
            }
            Err(_) => false,
        }
    }
}

/// Frequency computation for one fixed point.
///
/// Holds a memo table, so queries take `&mut self`; independent engines give
/// identical results.
pub struct FrequencyEngine<'a> {
    lang: &'a LanguageIndex,
    working: Morphism,
    power: usize,
    spectral: SpectralData,
    inv_lambda_power: FrequencyValue,
    memo: HashMap<Word, FrequencyValue>,
    empirical_base: bool,
}

impl<'a> FrequencyEngine<'a> {
    pub fn new(m: &Morphism, lang: &'a LanguageIndex, mode: Mode) -> Result<Self, FrequencyError> {
        Self::with_tolerance(m, lang, mode, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(
        m: &Morphism,
        lang: &'a LanguageIndex,
        mode: Mode,
        tolerance: f64,
    ) -> Result<Self, FrequencyError> {
        let spectral = perron_data_with_tolerance(m, mode, tolerance)?;
        let (power, working) = m
            .expanding_power()
            .ok_or(crate::error::WordError::NotPrimitive)?;
        let lambda_power = (1..power).fold(spectral.eigenvalue.clone(), |acc, _| {
            acc.mul(&spectral.eigenvalue)
        });
        let inv_lambda_power = lambda_power
            .inv()
            .ok_or(crate::error::WordError::NotPrimitive)?;
        let mut engine = FrequencyEngine {
            lang,
            working,
            power,
            spectral,
            inv_lambda_power,
            memo: HashMap::new(),
            empirical_base: false,
        };
        engine.seed_base(tolerance)?;
        Ok(engine)
    }

    pub fn language(&self) -> &LanguageIndex {
        self.lang
    }

    pub fn spectral(&self) -> &SpectralData {
        &self.spectral
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.spectral.field.as_ref()
    }

    pub fn mode(&self) -> Mode {
        if self.spectral.eigenvalue.is_exact() {
            Mode::Exact
        } else {
            Mode::Approx
        }
    }

    /// The working morphism `φ^t` and its exponent `t`.
    pub fn working_morphism(&self) -> (&Morphism, usize) {
        (&self.working, self.power)
    }

    /// Whether the length-2 frequencies came from the empirical fallback.
    pub fn used_empirical_base(&self) -> bool {
        self.empirical_base
    }

    fn seed_base(&mut self, tolerance: f64) -> Result<(), FrequencyError> {
        let base = self.base_frequencies();
        let map = match base {
            Ok(map) => map,
            Err(FrequencyError::SingularBaseSystem) => {
                // continue in approximate arithmetic from counted values
                let approx = |x: &FrequencyValue| FrequencyValue::approx(x.to_f64(), tolerance);
                self.spectral.eigenvalue = approx(&self.spectral.eigenvalue);
                self.spectral.eigenvector = self.spectral.eigenvector.iter().map(approx).collect();
                self.spectral.field = None;
                self.inv_lambda_power = approx(&self.inv_lambda_power);
                self.empirical_base = true;
                self.empirical_base_frequencies(tolerance)
            }
            Err(e) => return Err(e),
        };
        self.memo.extend(map);
        Ok(())
    }

    /// Frequencies of letters and of factors of length 2.
    pub fn base_frequencies(&self) -> Result<HashMap<Word, FrequencyValue>, FrequencyError> {
        let l = self.lang;
        let letters = &self.spectral.eigenvector;
        let zero = letters[0].zero_like();
        let mut out: HashMap<Word, FrequencyValue> = HashMap::new();
        out.insert(Word::empty(), zero.one_like());
        for (a, x) in letters.iter().enumerate() {
            out.insert(Word(vec![a as Letter]), x.clone());
        }
        let pairs = l.factors(2)?;
        let index: HashMap<&Word, usize> = pairs.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let n = pairs.len();
        let mut a = vec![vec![zero.clone(); n]; n];
        let mut b = vec![zero.clone(); n];
        for (r, v) in pairs.iter().enumerate() {
            a[r][r] = zero.one_like();
            for s in interpretations(&self.working, l, v)? {
                match s.ancestor.len() {
                    1 => b[r] = b[r].add(&letters[s.ancestor[0] as usize].mul(&self.inv_lambda_power)),
                    2 => {
                        let c = index[&s.ancestor];
                        a[r][c] = a[r][c].sub(&self.inv_lambda_power);
                    }
                    _ => {
                        return Err(FrequencyError::NonShrinkingAncestors(
                            l.alphabet().render_display(v),
                        ))
                    }
                }
            }
        }
        let x = solve_linear(a, b).ok_or(FrequencyError::SingularBaseSystem)?;
        for (w, value) in pairs.iter().zip(x) {
            out.insert(w.clone(), value);
        }
        Ok(out)
    }

    fn empirical_base_frequencies(&self, tolerance: f64) -> HashMap<Word, FrequencyValue> {
        let prefix = self.lang.prefix();
        let mut out = HashMap::new();
        out.insert(Word::empty(), FrequencyValue::approx(1.0, tolerance));
        for n in 1..=2 {
            let counts = window_counts(prefix, n);
            let total = (prefix.len() + 1 - n) as f64;
            for w in self.lang.factors(n).expect("indexed") {
                let c = counts.get(w.as_slice()).copied().unwrap_or(0);
                out.insert(w.clone(), FrequencyValue::approx(c as f64 / total, tolerance));
            }
        }
        out
    }

    /// `Λ⁻¹ Σ_{s ∈ I(v)} ρ(a(s))`, evaluated without consulting the memo for
    /// `v` itself.
    pub fn frid_sum(&mut self, v: &[Letter]) -> Result<FrequencyValue, FrequencyError> {
        let mut sum = self.inv_lambda_power.zero_like();
        for s in interpretations(&self.working, self.lang, v)? {
            if s.ancestor.len() >= v.len() && v.len() > 2 {
                return Err(FrequencyError::NonShrinkingAncestors(
                    self.lang.alphabet().render_display(v),
                ));
            }
            let r = self.frequency(&s.ancestor)?;
            sum = sum.add(&r);
        }
        Ok(sum.mul(&self.inv_lambda_power))
    }

    /// `ρ(v)` by the interpretation recursion, memoized.
    pub fn frequency(&mut self, v: &[Letter]) -> Result<FrequencyValue, FrequencyError> {
        if let Some(x) = self.memo.get(v) {
            return Ok(x.clone());
        }
        if !self.lang.contains(v) {
            return Err(LanguageError::NotAFactor(self.lang.alphabet().render_display(v)).into());
        }
        let x = self.frid_sum(v)?;
        self.memo.insert(Word::from(v), x.clone());
        Ok(x)
    }

    /// Frequencies of every factor of length `0..=n+1`. A factor whose
    /// length-`k−1` prefix has a unique right extension (or suffix a unique
    /// left extension) copies that frequency; the rest use the recursion.
    pub fn frequency_map(&mut self, n: usize) -> Result<FrequencyMap, FrequencyError> {
        let l = self.lang;
        if n > l.n_max() {
            return Err(LanguageError::OutOfRange { n, max: l.n_max() }.into());
        }
        let mut levels = Vec::with_capacity(n + 2);
        for k in 0..=n + 1 {
            let mut level = Vec::new();
            for w in l.factors(k)? {
                let value = if k <= 2 {
                    self.frequency(w)?
                } else if let Some(x) = self.copied_value(w) {
                    x
                } else {
                    self.frequency(w)?
                };
                level.push((w.clone(), value));
            }
            levels.push(level);
        }
        Ok(FrequencyMap { levels })
    }

    fn copied_value(&mut self, w: &[Letter]) -> Option<FrequencyValue> {
        let k = w.len();
        let prefix = &w[..k - 1];
        let suffix = &w[1..];
        let l = self.lang;
        let from = if l.extensions(prefix).ok()?.right.len() == 1 {
            prefix
        } else if l.extensions(suffix).ok()?.left.len() == 1 {
            suffix
        } else {
            return None;
        };
        let x = self.memo.get(from)?.clone();
        self.memo.insert(Word::from(w), x.clone());
        Some(x)
    }
}

/// Distinct frequency values, ascending by real value.
#[derive(Clone, Debug)]
pub struct DistinctValues {
    pub values: Vec<FrequencyValue>,
    /// Two approximate values were unequal yet within [`NEAR_SPLIT`].
    pub near_split: bool,
}

impl DistinctValues {
    pub fn count(&self) -> usize {
        self.values.len()
    }
}

/// `{ρ(e) | e ∈ L_{n+1}}`.
pub fn distinct_frequencies(fm: &FrequencyMap, n: usize) -> DistinctValues {
    distinct_values(fm.level(n + 1).iter().map(|(_, x)| x))
}

/// Deduplicates by field equality (exact) or by relative tolerance
/// (approximate, clustering neighbours after sorting).
pub fn distinct_values<'v>(values: impl IntoIterator<Item = &'v FrequencyValue>) -> DistinctValues {
    let mut sorted: Vec<&FrequencyValue> = values.into_iter().collect();
    sorted.sort_by(|a, b| a.to_f64().total_cmp(&b.to_f64()));
    let mut out: Vec<FrequencyValue> = Vec::new();
    let mut near_split = false;
    if sorted.first().map(|x| x.is_exact()).unwrap_or(true) {
        let mut seen = HashSet::new();
        for x in sorted {
            if seen.insert(x.as_exact().expect("exact values").clone()) {
                out.push(x.clone());
            }
        }
    } else {
        for x in sorted {
            match out.last() {
                Some(last) if last.same_value(x) => {}
                Some(last) => {
                    let (a, b) = (last.to_f64(), x.to_f64());
                    if (b - a).abs() <= NEAR_SPLIT * a.abs().max(b.abs()) {
                        near_split = true;
                    }
                    out.push(x.clone());
                }
                None => out.push(x.clone()),
            }
        }
    }
    DistinctValues {
        values: out,
        near_split,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A vertex where Kirchhoff's law fails.
#[derive(Clone, Debug)]
pub struct KirchhoffWitness {
    pub factor: Word,
    pub side: Side,
    pub expected: FrequencyValue,
    pub found: FrequencyValue,
}

/// First `w ∈ L_n` with `ρ(w) ≠ Σ_{a ∈ Lext} ρ(aw)` or `ρ(w) ≠ Σ_{a ∈ Rext} ρ(wa)`.
pub fn kirchhoff_violation(
    fm: &FrequencyMap,
    l: &LanguageIndex,
    n: usize,
) -> Result<Option<KirchhoffWitness>, FrequencyError> {
    for (w, rho) in fm.level(n) {
        let ext = l.extensions(w)?;
        for (side, letters) in [(Side::Left, ext.left), (Side::Right, ext.right)] {
            let mut sum = rho.zero_like();
            for a in letters.iter() {
                let e = match side {
                    Side::Left => Word(vec![a]).concat(w),
                    Side::Right => {
                        let mut e = w.clone();
                        e.push(a);
                        e
                    }
                };
                let x = fm
                    .get(&e)
                    .ok_or_else(|| LanguageError::NotAFactor(l.alphabet().render_display(&e)))?;
                sum = sum.add(x);
            }
            if !sum.same_value(rho) {
                return Ok(Some(KirchhoffWitness {
                    factor: w.clone(),
                    side,
                    expected: rho.clone(),
                    found: sum,
                }));
            }
        }
    }
    Ok(None)
}

pub fn kirchhoff_check(fm: &FrequencyMap, l: &LanguageIndex, n: usize) -> Result<bool, FrequencyError> {
    Ok(kirchhoff_violation(fm, l, n)?.is_none())
}

/// Occurrence counts of all windows of length `n` in `w`.
pub fn window_counts(w: &[Letter], n: usize) -> HashMap<&[Letter], usize> {
    let mut counts = HashMap::new();
    if n == 0 || n > w.len() {
        return counts;
    }
    for x in w.windows(n) {
        *counts.entry(x).or_insert(0) += 1;
    }
    counts
}

/// `occurrences / windows` for every factor of length `n` of `l`, counted in
/// `prefix`.
pub fn empirical_frequencies(prefix: &[Letter], l: &LanguageIndex, n: usize) -> Vec<(Word, f64)> {
    if n == 0 {
        return vec![(Word::empty(), 1.0)];
    }
    let counts = window_counts(prefix, n);
    let total = prefix.len().saturating_sub(n - 1).max(1) as f64;
    l.factors(n)
        .map(|fs| {
            fs.iter()
                .map(|w| {
                    let c = counts.get(w.as_slice()).copied().unwrap_or(0);
                    (w.clone(), c as f64 / total)
                })
                .collect()
        })
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::AlgebraicNumber;

    fn example() -> Morphism {
        Morphism::from_rules(&[('0', "0130"), ('1', "1021"), ('2', "102"), ('3', "013")]).unwrap()
    }

    fn parse(l: &LanguageIndex, s: &str) -> Word {
        l.alphabet().parse_word(s).unwrap()
    }

    /// `λ` and `√3 = λ − 2` in the example's field.
    fn lambda_and_sqrt3(e: &FrequencyEngine) -> (AlgebraicNumber, AlgebraicNumber) {
        let k = e.field().unwrap();
        let lam = AlgebraicNumber::generator(k);
        let s = lam.sub(&AlgebraicNumber::from_integer(k, 2));
        (lam, s)
    }

    #[test]
    fn interpretations_of_bispecial_images() {
        let m = example();
        let l = LanguageIndex::build(&m, 0, 14).unwrap();
        let a = l.alphabet().clone();
        // w = 1 ends in 1: v = φ(1)01301
        let v = parse(&l, "102101301");
        let got: Vec<(String, usize, usize)> = interpretations(&m, &l, &v)
            .unwrap()
            .into_iter()
            .map(|s| (a.render(&s.ancestor), s.left_cut, s.right_cut))
            .collect();
        let mut want = vec![
            ("101".to_string(), 0, 3),
            ("102".to_string(), 0, 2),
            ("130".to_string(), 0, 2),
        ];
        want.sort();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, want);
        // w = 0 ends in 0: v = φ(0)10210
        let v = parse(&l, "013010210");
        let mut got: Vec<(String, usize, usize)> = interpretations(&m, &l, &v)
            .unwrap()
            .into_iter()
            .map(|s| (a.render(&s.ancestor), s.left_cut, s.right_cut))
            .collect();
        got.sort();
        assert_eq!(
            got,
            vec![
                ("010".to_string(), 0, 3),
                ("013".to_string(), 0, 2),
                ("021".to_string(), 0, 2)
            ]
        );
        for s in interpretations(&m, &l, &v).unwrap() {
            assert_eq!(s.reconstruct(&m), v);
        }
    }

    #[test]
    fn full_image_has_trivial_interpretation() {
        let m = example();
        let l = LanguageIndex::build(&m, 0, 8).unwrap();
        let v = parse(&l, "0130");
        let all = interpretations(&m, &l, &v).unwrap();
        assert!(all.contains(&Interpretation {
            ancestor: Word(vec![0]),
            left_cut: 0,
            right_cut: 0
        }));
    }

    #[test]
    fn example_closed_forms() {
        let m = example();
        let l = LanguageIndex::build(&m, 0, 10).unwrap();
        let mut e = FrequencyEngine::new(&m, &l, Mode::Exact).unwrap();
        let (lam, s3) = lambda_and_sqrt3(&e);
        let k = e.field().unwrap().clone();
        let two_lam = lam.scale(&num_rational::BigRational::from_integer(2.into()));
        let one = AlgebraicNumber::one(&k);
        let check = |e: &mut FrequencyEngine, w: &str, want: AlgebraicNumber| {
            let got = e.frequency(&parse(&l, w)).unwrap();
            assert_eq!(got.as_exact().unwrap(), &want, "ρ({w})");
        };
        check(&mut e, "01", s3.div(&two_lam).unwrap());
        check(&mut e, "130", one.div(&two_lam).unwrap());
        check(&mut e, "010", s3.sub(&one).div(&two_lam).unwrap());
        check(&mut e, "01301", one.div(&two_lam).unwrap());
        check(&mut e, "01301301", one.div(&two_lam.mul(&lam)).unwrap());
    }

    #[test]
    fn frequency_map_level_two_values() {
        let m = example();
        let l = LanguageIndex::build(&m, 0, 6).unwrap();
        let mut e = FrequencyEngine::new(&m, &l, Mode::Exact).unwrap();
        let fm = e.frequency_map(1).unwrap();
        let (lam, s3) = lambda_and_sqrt3(&e);
        let two_lam = lam.add(&lam);
        let a = s3.div(&two_lam).unwrap();
        let b = AlgebraicNumber::one(e.field().unwrap()).div(&two_lam).unwrap();
        for (w, x) in fm.level(2) {
            let want = match l.alphabet().render(w).as_str() {
                "01" | "10" => &a,
                _ => &b,
            };
            assert_eq!(x.as_exact().unwrap(), want);
        }
        assert_eq!(distinct_frequencies(&fm, 1).count(), 2);
        assert_eq!(fm.get(&[]).unwrap().to_string(), "1");
    }

    #[test]
    fn kirchhoff_and_normalization() {
        let m = example();
        let l = LanguageIndex::build(&m, 0, 8).unwrap();
        let mut e = FrequencyEngine::new(&m, &l, Mode::Exact).unwrap();
        let mut fm = e.frequency_map(7).unwrap();
        for n in 0..=7 {
            assert!(kirchhoff_check(&fm, &l, n).unwrap(), "level {n}");
            let total = fm
                .level(n)
                .iter()
                .fold(fm.level(n)[0].1.zero_like(), |acc, (_, x)| acc.add(x));
            assert_eq!(total.to_string(), "1");
        }
        let w = parse(&l, "02");
        let bad = fm.get(&w).unwrap().add(fm.get(&w).unwrap());
        assert!(fm.set(&w, bad));
        let witness = kirchhoff_violation(&fm, &l, 1).unwrap().unwrap();
        assert!(witness.factor == parse(&l, "0") || witness.factor == parse(&l, "2"));
    }

    #[test]
    fn fibonacci_and_thue_morse() {
        let fib = Morphism::from_rules(&[('0', "01"), ('1', "0")]).unwrap();
        let l = LanguageIndex::build(&fib, 0, 6).unwrap();
        let mut e = FrequencyEngine::new(&fib, &l, Mode::Exact).unwrap();
        assert_eq!(e.working_morphism().1, 2);
        let fm = e.frequency_map(3).unwrap();
        assert!(kirchhoff_check(&fm, &l, 3).unwrap());
        let w01 = fm.get(&[0, 1]).unwrap();
        assert!(w01.same_value(fm.get(&[1, 0]).unwrap()));

        let tm = Morphism::from_rules(&[('0', "01"), ('1', "10")]).unwrap();
        let l = LanguageIndex::build(&tm, 0, 6).unwrap();
        let mut e = FrequencyEngine::new(&tm, &l, Mode::Exact).unwrap();
        assert_eq!(e.frequency(&[0]).unwrap().to_string(), "1/2");
        assert_eq!(e.frequency(&[0, 0]).unwrap().to_string(), "1/6");
    }

    #[test]
    fn approx_mode_matches_exact() {
        let m = example();
        let l = LanguageIndex::build(&m, 0, 8).unwrap();
        let mut ex = FrequencyEngine::new(&m, &l, Mode::Exact).unwrap();
        let mut ap = FrequencyEngine::new(&m, &l, Mode::Approx).unwrap();
        let a = ex.frequency_map(7).unwrap();
        let b = ap.frequency_map(7).unwrap();
        for n in 0..=8 {
            for ((w, x), (w2, y)) in a.level(n).iter().zip(b.level(n)) {
                assert_eq!(w, w2);
                assert!((x.to_f64() - y.to_f64()).abs() < 1e-12);
            }
        }
        let d = distinct_frequencies(&b, 3);
        assert_eq!(d.count(), 3);
        assert!(!d.near_split);
    }

    #[test]
    fn empirical_counts() {
        let m = example();
        let l = LanguageIndex::build(&m, 0, 4).unwrap();
        let p = m.fixed_point_prefix(0, 100_000).unwrap();
        let est = empirical_frequencies(&p, &l, 1);
        assert!((est[0].1 - (3f64.sqrt() - 1.0) / 2.0).abs() < 1e-3);
        assert_eq!(empirical_frequencies(&p, &l, 0), vec![(Word::empty(), 1.0)]);
    }
}
