//! Upper bounds on the number of distinct frequencies of factors of length
//! `n + 1`, each with an explicit check of its hypotheses.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;

use crate::error::{BoundError, SymmetryError};
use crate::frequency::{distinct_frequencies, DistinctValues, FrequencyMap};
use crate::language::LanguageIndex;
use crate::number::{AlgebraicNumber, NumberField};
use crate::symmetry::{check_invariance, threshold, Gate, SymmetryGroup};
use crate::word::Word;

/// `3ΔC(n)`.
pub fn boshernitzan_bound(l: &LanguageIndex, n: usize) -> Result<usize, BoundError> {
    let (_, d) = l.complexity_delta(n)?;
    if d == 0 {
        return Err(BoundError::Periodic(n));
    }
    Ok(3 * d)
}

/// Bispecial census at length `n`: `X`, `Y` (fixed by some antimorphism of
/// the group, each factor once) and `Y_R` (ordinary palindromes).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BispecialCensus {
    pub x: usize,
    pub y: usize,
    pub y_reversal: usize,
}

pub fn bispecial_census(l: &LanguageIndex, g: &SymmetryGroup, n: usize) -> Result<BispecialCensus, BoundError> {
    let bs = l.special_factors(n)?.bispecial;
    let y = bs
        .iter()
        .filter(|w| g.antimorphisms().any(|t| t.apply(w) == **w))
        .count();
    let y_reversal = bs.iter().filter(|w| w.reversed() == **w).count();
    Ok(BispecialCensus {
        x: bs.len(),
        y,
        y_reversal,
    })
}

/// `2ΔC(n) + 1 − X/2 − Y_R/2`.
pub fn reversal_bound(l: &LanguageIndex, g: &SymmetryGroup, n: usize) -> Result<Rational64, BoundError> {
    if !g.contains_reversal() {
        return Err(BoundError::ReversalMissing);
    }
    let (_, d) = l.complexity_delta(n)?;
    let c = bispecial_census(l, g, n)?;
    Ok(Rational64::from_integer(2 * d as i64 + 1)
        - Rational64::new(c.x as i64 + c.y_reversal as i64, 2))
}

/// `(4ΔC(n) + #G − X − Y) / #G`.
pub fn group_bound(l: &LanguageIndex, g: &SymmetryGroup, n: usize) -> Result<Rational64, BoundError> {
    if !g.has_antimorphism() {
        return Err(SymmetryError::NoAntimorphism.into());
    }
    let (_, d) = l.complexity_delta(n)?;
    let c = bispecial_census(l, g, n)?;
    let order = g.order() as i64;
    Ok(Rational64::new(
        4 * d as i64 + order - c.x as i64 - c.y as i64,
        order,
    ))
}

/// `(4/#G) ΔC(n) + 1`.
pub fn simplified_bound(l: &LanguageIndex, g: &SymmetryGroup, n: usize) -> Result<Rational64, BoundError> {
    if !g.has_antimorphism() {
        return Err(SymmetryError::NoAntimorphism.into());
    }
    let (_, d) = l.complexity_delta(n)?;
    Ok(Rational64::new(4 * d as i64, g.order() as i64) + 1)
}

/// A hypothesis that failed for a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unmet {
    Periodic,
    NoReversal,
    NoAntimorphism,
    NotInvariant,
    BelowThreshold { threshold: usize },
    NoThreshold,
}

impl fmt::Display for Unmet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unmet::Periodic => write!(f, "periodic at this order"),
            Unmet::NoReversal => write!(f, "reversal not in group"),
            Unmet::NoAntimorphism => write!(f, "no antimorphism in group"),
            Unmet::NotInvariant => write!(f, "language not invariant"),
            Unmet::BelowThreshold { threshold } => write!(f, "n below N = {threshold}"),
            Unmet::NoThreshold => write!(f, "no admissible N within the horizon"),
        }
    }
}

/// A bound value with its applicability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEntry {
    /// `None` when the formula itself is undefined (e.g. no reversal).
    pub value: Option<Rational64>,
    pub unmet: Vec<Unmet>,
}

impl BoundEntry {
    pub fn applicable(&self) -> bool {
        self.unmet.is_empty() && self.value.is_some()
    }

    pub fn holds(&self, distinct: usize) -> Option<bool> {
        self.value
            .map(|v| Rational64::from_integer(distinct as i64) <= v)
    }

    pub fn attained(&self, distinct: usize) -> bool {
        self.value == Some(Rational64::from_integer(distinct as i64))
    }

    /// Attained where every unmet hypothesis is the threshold on `n`; orders
    /// below `N` are reported for information only.
    pub fn attained_informational(&self, distinct: usize) -> bool {
        self.attained(distinct)
            && self.unmet.iter().all(|u| matches!(u, Unmet::BelowThreshold { .. }))
    }

    /// An applicable bound that fails.
    pub fn violated(&self, distinct: usize) -> bool {
        self.applicable() && self.holds(distinct) == Some(false)
    }

    pub fn verdict(&self, distinct: usize) -> String {
        match (self.applicable(), self.holds(distinct)) {
            (_, None) => "undefined".to_string(),
            (true, Some(true)) if self.attained(distinct) => "attained".to_string(),
            (true, Some(true)) => "holds".to_string(),
            (true, Some(false)) => "violated".to_string(),
            (false, _) => {
                let why: Vec<String> = self.unmet.iter().map(|u| u.to_string()).collect();
                format!("not applicable: {}", why.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub n: usize,
    pub complexity: usize,
    pub delta_c: usize,
    pub census: BispecialCensus,
    pub distinct: DistinctValues,
    pub boshernitzan: BoundEntry,
    pub reversal: BoundEntry,
    pub group: BoundEntry,
    pub simplified: BoundEntry,
}

impl BoundReport {
    pub fn distinct_count(&self) -> usize {
        self.distinct.count()
    }

    pub fn entries(&self) -> [(&'static str, &BoundEntry); 4] {
        [
            ("boshernitzan", &self.boshernitzan),
            ("reversal", &self.reversal),
            ("group", &self.group),
            ("simplified", &self.simplified),
        ]
    }

    pub fn any_violation(&self) -> bool {
        let d = self.distinct_count();
        self.entries().iter().any(|(_, e)| e.violated(d))
    }
}

/// Per-word data shared by all orders.
pub struct BoundContext<'a> {
    lang: &'a LanguageIndex,
    group: &'a SymmetryGroup,
    invariant: bool,
    threshold: Option<usize>,
}

impl<'a> BoundContext<'a> {
    pub fn new(lang: &'a LanguageIndex, group: &'a SymmetryGroup, gate: Gate) -> Self {
        BoundContext {
            lang,
            group,
            invariant: check_invariance(lang, group),
            threshold: threshold(lang, group, gate).ok(),
        }
    }

    pub fn invariant(&self) -> bool {
        self.invariant
    }

    pub fn threshold(&self) -> Option<usize> {
        self.threshold
    }

    pub fn evaluate(&self, fm: &FrequencyMap, n: usize) -> Result<BoundReport, BoundError> {
        let (l, g) = (self.lang, self.group);
        let (complexity, delta_c) = l.complexity_delta(n)?;
        let census = bispecial_census(l, g, n)?;
        let distinct = distinct_frequencies(fm, n);
        let aperiodic = delta_c >= 1;

        let boshernitzan = BoundEntry {
            value: Some(Rational64::from_integer(3 * delta_c as i64)),
            unmet: if aperiodic { vec![] } else { vec![Unmet::Periodic] },
        };

        let mut unmet = Vec::new();
        if !self.invariant {
            unmet.push(Unmet::NotInvariant);
        }
        let reversal = match reversal_bound(l, g, n) {
            Ok(v) => BoundEntry {
                value: Some(v),
                unmet: unmet.clone(),
            },
            Err(BoundError::ReversalMissing) => BoundEntry {
                value: None,
                unmet: vec![Unmet::NoReversal],
            },
            Err(e) => return Err(e),
        };

        match self.threshold {
            Some(t) if n < t => unmet.push(Unmet::BelowThreshold { threshold: t }),
            Some(_) => {}
            None => unmet.push(Unmet::NoThreshold),
        }
        let (group, simplified) = if g.has_antimorphism() {
            let mut group_unmet = unmet.clone();
            if !aperiodic {
                group_unmet.insert(0, Unmet::Periodic);
            }
            (
                BoundEntry {
                    value: Some(group_bound(l, g, n)?),
                    unmet: group_unmet,
                },
                BoundEntry {
                    value: Some(simplified_bound(l, g, n)?),
                    unmet,
                },
            )
        } else {
            let none = BoundEntry {
                value: None,
                unmet: vec![Unmet::NoAntimorphism],
            };
            (none.clone(), none)
        };

        Ok(BoundReport {
            n,
            complexity,
            delta_c,
            census,
            distinct,
            boshernitzan,
            reversal,
            group,
            simplified,
        })
    }
}

/// The closed-form families for the frequency sets of the four-letter
/// example word, over `λ = 2 + √3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `{1/(2λ^{k+1}), √3/(2λ^{k+1})}`
    OneA,
    /// `{1/(2λ^{k+1}), (√3−1)/(2λ^{k+1})}`
    OneB,
    /// `{(√3−1)/(2λ^{k+1}), 1/(2λ^{k+2})}`
    OneC,
    /// `{(√3−1)/(2λ^k), 1/(2λ^{k+1}), √3/(2λ^{k+1})}`
    TwoA,
    /// `{√3/(2λ^{k+1}), 1/(2λ^{k+1}), (√3−1)/(2λ^{k+1})}`
    TwoB,
    /// `{1/(2λ^{k+1}), (√3−1)/(2λ^{k+1}), 1/(2λ^{k+2})}`
    TwoC,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::OneA,
        Family::OneB,
        Family::OneC,
        Family::TwoA,
        Family::TwoB,
        Family::TwoC,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::OneA => "1a",
            Family::OneB => "1b",
            Family::OneC => "1c",
            Family::TwoA => "2a",
            Family::TwoB => "2b",
            Family::TwoC => "2c",
        }
    }

    /// Members of the family at scale `k`.
    pub fn members(self, field: &std::sync::Arc<NumberField>, k: u32) -> Vec<AlgebraicNumber> {
        let lam = AlgebraicNumber::generator(field);
        let one = AlgebraicNumber::one(field);
        let s3 = lam.sub(&AlgebraicNumber::from_integer(field, 2));
        let two = AlgebraicNumber::from_integer(field, 2);
        let over = |num: &AlgebraicNumber, e: u32| num.div(&two.mul(&lam.pow(e))).expect("nonzero");
        let a = |e| over(&one, e);
        let b = |e| over(&s3, e);
        let c = |e| over(&s3.sub(&one), e);
        match self {
            Family::OneA => vec![a(k + 1), b(k + 1)],
            Family::OneB => vec![a(k + 1), c(k + 1)],
            Family::OneC => vec![c(k + 1), a(k + 2)],
            Family::TwoA => vec![c(k), a(k + 1), b(k + 1)],
            Family::TwoB => vec![b(k + 1), a(k + 1), c(k + 1)],
            Family::TwoC => vec![a(k + 1), c(k + 1), a(k + 2)],
        }
    }
}

/// Finds the first family (in declaration order, smallest `k`) whose member
/// set equals the distinct values. The field must be `Q(2 + √3)`.
pub fn frequency_set_forms(
    values: &DistinctValues,
    field: &std::sync::Arc<NumberField>,
) -> Result<(Family, u32), BoundError> {
    let expected = [BigInt::from(1), BigInt::from(-4), BigInt::from(1)];
    if field.minimal_polynomial() != expected {
        return Err(BoundError::NoFamily);
    }
    let got: HashSet<AlgebraicNumber> = values
        .values
        .iter()
        .map(|x| x.as_exact().cloned().ok_or(BoundError::NoFamily))
        .collect::<Result<_, _>>()?;
    let smallest = values
        .values
        .iter()
        .map(|x| x.to_f64())
        .fold(f64::INFINITY, f64::min);
    let lam = field.embedding();
    let mut k = 0u32;
    // members shrink like λ^{-k}; stop once every candidate is far below the data
    while 0.5 * lam.powi(-(k as i32) - 1) >= smallest * 1e-3 && k < 256 {
        for f in Family::ALL {
            let members: HashSet<AlgebraicNumber> = f.members(field, k).into_iter().collect();
            if members == got {
                return Ok((f, k));
            }
        }
        k += 1;
    }
    Err(BoundError::NoFamily)
}

/// Bispecial factors of the example word generated from those of length at
/// most 5 by `w ↦ φ(w) p_{w_n}`, `p_0 = p_2 = 10210`, `p_1 = p_3 = 01301`,
/// up to length `max_len`.
pub fn example_bispecial_orbit(phi: &crate::morphism::Morphism, max_len: usize) -> Vec<Word> {
    let p_even = Word(vec![1, 0, 2, 1, 0]);
    let p_odd = Word(vec![0, 1, 3, 0, 1]);
    let step = |w: &Word| -> Word {
        let p = match w[w.len() - 1] {
            0 | 2 => &p_even,
            _ => &p_odd,
        };
        phi.apply(w).expect("letters in alphabet").concat(p)
    };
    let mut out = Vec::new();
    let mut frontier: Vec<Word> = [&[0u8][..], &[1], &[0, 1], &[1, 0], &[0, 1, 3, 0, 1], &[1, 0, 2, 1, 0]]
        .iter()
        .map(|w| Word::from(*w))
        .collect();
    while !frontier.is_empty() {
        frontier.retain(|w| w.len() <= max_len);
        let next = frontier.iter().map(step).collect();
        out.append(&mut frontier);
        frontier = next;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frequency::FrequencyEngine;
    use crate::morphism::Morphism;
    use crate::spectral::Mode;
    use crate::symmetry::{Orientation, Symmetry};

    fn example() -> Morphism {
        Morphism::from_rules(&[('0', "0130"), ('1', "1021"), ('2', "102"), ('3', "013")]).unwrap()
    }

    fn example_group() -> SymmetryGroup {
        let t1 = Symmetry::new(vec![1, 0, 2, 3], Orientation::Antimorphic).unwrap();
        let t2 = Symmetry::new(vec![0, 1, 3, 2], Orientation::Antimorphic).unwrap();
        SymmetryGroup::closure(&[t1, t2], 4)
    }

    #[test]
    fn example_bounds_at_small_orders() {
        let m = example();
        let l = LanguageIndex::build(&m, 0, 14).unwrap();
        let g = example_group();
        assert_eq!(boshernitzan_bound(&l, 3).unwrap(), 6);
        assert_eq!(group_bound(&l, &g, 3).unwrap(), Rational64::from_integer(3));
        assert_eq!(group_bound(&l, &g, 5).unwrap(), Rational64::from_integer(2));
        assert_eq!(
            reversal_bound(&l, &g, 3),
            Err(BoundError::ReversalMissing)
        );
        let ctx = BoundContext::new(&l, &g, Gate::UniformRecurrence);
        assert!(ctx.invariant());
        let mut e = FrequencyEngine::new(&m, &l, Mode::Exact).unwrap();
        let fm = e.frequency_map(13).unwrap();
        for n in 1..=13 {
            let r = ctx.evaluate(&fm, n).unwrap();
            assert!(r.group.attained(r.distinct_count()), "n = {n}");
            assert!(!r.any_violation());
        }
        let r = ctx.evaluate(&fm, 1).unwrap();
        assert!(!r.group.applicable());
    }

    #[test]
    fn fibonacci_reversal_bound() {
        let fib = Morphism::from_rules(&[('0', "01"), ('1', "0")]).unwrap();
        let l = LanguageIndex::build(&fib, 0, 12).unwrap();
        let g = SymmetryGroup::reversal_group(2);
        // n = 1: the bispecial factor 0 is a palindrome
        assert_eq!(reversal_bound(&l, &g, 1).unwrap(), Rational64::from_integer(2));
        // n = 4 has no bispecial factor
        assert!(l.special_factors(4).unwrap().bispecial.is_empty());
        assert_eq!(reversal_bound(&l, &g, 4).unwrap(), Rational64::from_integer(3));
        assert_eq!(group_bound(&l, &g, 4).unwrap(), reversal_bound(&l, &g, 4).unwrap());
    }

    #[test]
    fn periodic_word_is_gated() {
        let p = Morphism::from_rules(&[('0', "01"), ('1', "01")]).unwrap();
        let l = LanguageIndex::build(&p, 0, 6).unwrap();
        assert_eq!(boshernitzan_bound(&l, 3), Err(BoundError::Periodic(3)));
        let g = SymmetryGroup::reversal_group(2);
        let ctx = BoundContext::new(&l, &g, Gate::UniformRecurrence);
        let mut e = FrequencyEngine::new(&p, &l, Mode::Exact).unwrap();
        let fm = e.frequency_map(5).unwrap();
        let r = ctx.evaluate(&fm, 3).unwrap();
        assert!(!r.boshernitzan.applicable());
        assert!(!r.group.applicable());
        assert!(!r.any_violation());
    }

    #[test]
    fn families_and_orbit() {
        let m = example();
        let l = LanguageIndex::build(&m, 0, 6).unwrap();
        let mut e = FrequencyEngine::new(&m, &l, Mode::Exact).unwrap();
        let fm = e.frequency_map(5).unwrap();
        let k = e.field().unwrap().clone();
        let f1 = frequency_set_forms(&distinct_frequencies(&fm, 1), &k).unwrap();
        assert_eq!(f1, (Family::OneA, 0));
        let f3 = frequency_set_forms(&distinct_frequencies(&fm, 3), &k).unwrap();
        assert_eq!(f3.0.tag().chars().next(), Some('2'));
        let orbit = example_bispecial_orbit(&m, 30);
        let lens: Vec<usize> = orbit.iter().map(|w| w.len()).collect();
        assert_eq!(lens, vec![1, 1, 2, 2, 5, 5, 9, 9, 13, 13, 24, 24]);
    }
}
