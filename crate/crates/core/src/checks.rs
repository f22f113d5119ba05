//! The invariant battery run by `wordsym verify`.

use crate::bounds::BoundContext;
use crate::error::FrequencyError;
use crate::frequency::{
    distinct_values, empirical_frequencies, kirchhoff_violation, FrequencyEngine, FrequencyMap,
};
use crate::language::LanguageIndex;
use crate::morphism::Morphism;
use crate::rauzy::{edge_count_identities, RauzyGraph};
use crate::symmetry::{check_invariance, palindrome_bound_check, threshold, Gate, SymmetryGroup};
use crate::word::Word;

/// Longest factors compared against empirical counts.
pub const EMPIRICAL_MAX_LEN: usize = 12;
/// Allowed gap between exact and counted frequencies.
pub const EMPIRICAL_TOLERANCE: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

fn outcome(name: &'static str, failure: Option<String>, ok: &str) -> Check {
    match failure {
        None => Check {
            name,
            status: Status::Pass,
            detail: ok.to_string(),
        },
        Some(detail) => Check {
            name,
            status: Status::Fail,
            detail,
        },
    }
}

fn skip(name: &'static str, why: &str) -> Check {
    Check {
        name,
        status: Status::Skip,
        detail: why.to_string(),
    }
}

pub struct Battery<'a> {
    pub morphism: &'a Morphism,
    pub lang: &'a LanguageIndex,
    pub group: &'a SymmetryGroup,
    pub gate: Gate,
    pub prefix_floor: usize,
}

impl Battery<'_> {
    pub fn run(&self, engine: &mut FrequencyEngine, fm: &FrequencyMap) -> Result<Vec<Check>, FrequencyError> {
        let l = self.lang;
        let n_max = l.n_max();
        let a = l.alphabet();
        let mut out = Vec::new();

        let mut fail = None;
        for n in 0..=n_max {
            let (_, d) = l.complexity_delta(n)?;
            let (r, le) = l.extension_sums(n)?;
            if r != d || le != d {
                fail = Some(format!("n = {n}: sums {r}, {le} against ΔC = {d}"));
                break;
            }
        }
        out.push(outcome("complexity_sums", fail, "extension sums equal ΔC(n)"));

        let mut fail = None;
        for n in 0..=n_max {
            let (_, d) = l.complexity_delta(n)?;
            let sf = l.special_factors(n)?;
            if sf.left.len() > d || sf.right.len() > d {
                fail = Some(format!("n = {n}: #LS {} #RS {} ΔC {d}", sf.left.len(), sf.right.len()));
                break;
            }
        }
        out.push(outcome("special_counts", fail, "#LS, #RS ≤ ΔC(n)"));

        let mut fail = None;
        'closure: for n in 0..=n_max {
            for w in l.factors(n + 1)? {
                if !l.contains(&w[1..]) || !l.contains(&w[..n]) {
                    fail = Some(format!("{} has a missing prefix or suffix", a.render(w)));
                    break 'closure;
                }
            }
        }
        out.push(outcome("downward_closure", fail, "prefixes and suffixes are factors"));

        let mut fail = None;
        'rec: for n in 1..=n_max {
            let counts = crate::frequency::window_counts(l.prefix(), n);
            for w in l.factors(n)? {
                if counts.get(w.as_slice()).copied().unwrap_or(0) < 2 {
                    fail = Some(format!("{} occurs fewer than twice", a.render(w)));
                    break 'rec;
                }
            }
        }
        out.push(outcome("recurrence_witness", fail, "every factor occurs twice in the prefix"));

        let invariant = check_invariance(l, self.group);
        out.push(outcome(
            "group_invariance",
            (!invariant).then(|| "some element maps a factor outside the language".to_string()),
            &format!("invariant up to length {n_max}"),
        ));

        let mut fail = None;
        for n in 0..=n_max {
            if let Some(w) = kirchhoff_violation(fm, l, n)? {
                fail = Some(format!(
                    "{} ({:?}): {} against {}",
                    a.render_display(&w.factor),
                    w.side,
                    w.found,
                    w.expected
                ));
                break;
            }
        }
        out.push(outcome("kirchhoff", fail, "incoming and outgoing sums match"));

        let mut fail = None;
        for n in 0..=fm.max_len() {
            let level = fm.level(n);
            let total = level
                .iter()
                .skip(1)
                .fold(level[0].1.clone(), |acc, (_, x)| acc.add(x));
            if !total.same_value(&total.one_like()) {
                fail = Some(format!("n = {n}: sum {total}"));
                break;
            }
        }
        out.push(outcome("normalization", fail, "frequencies of each length sum to 1"));

        if invariant {
            let mut fail = None;
            'sym: for n in 1..=fm.max_len() {
                for (w, x) in fm.level(n) {
                    for s in self.group.elements() {
                        let y = fm.get(&s.apply(w));
                        if !y.map(|y| y.same_value(x)).unwrap_or(false) {
                            fail = Some(format!("{} under {}", a.render(w), s.notation(a)));
                            break 'sym;
                        }
                    }
                }
            }
            out.push(outcome("symmetry_preserves_frequency", fail, "ρ(Ψ(w)) = ρ(w)"));
        } else {
            out.push(skip("symmetry_preserves_frequency", "language not invariant"));
        }

        let mut fail = None;
        'frid: for n in 3..=fm.max_len() {
            for (w, x) in fm.level(n) {
                let y = engine.frid_sum(w)?;
                if !y.same_value(x) {
                    fail = Some(format!("{}: {} against {}", a.render(w), y, x));
                    break 'frid;
                }
            }
        }
        out.push(outcome("interpretation_recursion", fail, "map agrees with the recursion"));

        let mut fail = None;
        let mut skipped = 0;
        for n in 1..n_max {
            if l.complexity_delta(n)?.1 == 0 {
                skipped += 1;
                continue;
            }
            let g = RauzyGraph::build(l, n).and_then(|g| g.with_labels(fm));
            let result = g.and_then(|g| {
                let r = g.reduce(l)?;
                Ok((g, r))
            });
            let (g, r) = match result {
                Ok(x) => x,
                Err(e) => {
                    fail = Some(format!("n = {n}: {e}"));
                    break;
                }
            };
            match edge_count_identities(&r, l) {
                Ok(c) if c.all_hold() => {}
                Ok(c) => {
                    fail = Some(format!("n = {n}: {c:?}"));
                    break;
                }
                Err(e) => {
                    fail = Some(format!("n = {n}: {e}"));
                    break;
                }
            }
            let full = distinct_values(g.labels().unwrap_or(&[]));
            let reduced = distinct_values(r.labels());
            let same = full.count() == reduced.count()
                && full.values.iter().zip(&reduced.values).all(|(x, y)| x.same_value(y));
            if !same {
                fail = Some(format!("n = {n}: label sets differ"));
                break;
            }
            let mut windows: Vec<Word> = r
                .edges()
                .iter()
                .flat_map(|e| e.word.windows(n + 1).map(Word::from).collect::<Vec<_>>())
                .collect();
            windows.sort();
            if windows.as_slice() != g.edges() {
                fail = Some(format!("n = {n}: simple paths do not partition the edges"));
                break;
            }
        }
        let ok = if skipped > 0 {
            format!("edge identities, label sets and contraction ({skipped} periodic orders skipped)")
        } else {
            "edge identities, label sets and contraction".to_string()
        };
        out.push(outcome("rauzy_graphs", fail, &ok));

        if self.group.has_antimorphism() && invariant {
            match threshold(l, self.group, self.gate) {
                Ok(t) => {
                    let mut fail = None;
                    for n in t.max(1)..=n_max {
                        match palindrome_bound_check(l, self.group, n, Gate::Forced) {
                            Ok(c) if c.holds => {}
                            Ok(c) => {
                                fail = Some(format!("n = {n}: {} > {}", c.lhs, c.rhs));
                                break;
                            }
                            Err(e) => {
                                fail = Some(format!("n = {n}: {e}"));
                                break;
                            }
                        }
                    }
                    out.push(outcome("palindromic_inequality", fail, &format!("holds for {t} ≤ n ≤ {n_max}")));
                }
                Err(e) => out.push(skip("palindromic_inequality", &e.to_string())),
            }
        } else {
            out.push(skip("palindromic_inequality", "no antimorphism or language not invariant"));
        }

        let ctx = BoundContext::new(l, self.group, self.gate);
        let mut fail = None;
        for n in 1..=n_max {
            match ctx.evaluate(fm, n) {
                Ok(r) if r.any_violation() => {
                    fail = Some(format!("n = {n}: an applicable bound is exceeded"));
                    break;
                }
                Ok(_) => {}
                Err(e) => {
                    fail = Some(format!("n = {n}: {e}"));
                    break;
                }
            }
        }
        out.push(outcome("frequency_bounds", fail, "no applicable bound exceeded"));

        let seed = l.prefix()[0];
        let prefix = self.morphism.fixed_point_exact(seed, self.prefix_floor)?;
        let top = EMPIRICAL_MAX_LEN.min(fm.max_len());
        let mut fail = None;
        let mut worst = 0.0f64;
        'emp: for n in 1..=top {
            for (w, est) in empirical_frequencies(&prefix, l, n) {
                let x = fm.get(&w).map(|x| x.to_f64()).unwrap_or(f64::NAN);
                let gap = (x - est).abs();
                worst = worst.max(gap);
                if gap.is_nan() || gap > EMPIRICAL_TOLERANCE {
                    fail = Some(format!("{}: {x} against {est}", a.render(&w)));
                    break 'emp;
                }
            }
        }
        out.push(outcome(
            "empirical_agreement",
            fail,
            &format!("max gap {worst:.2e} over lengths ≤ {top}, prefix {}", prefix.len()),
        ));

        let sp = engine.spectral();
        let mat = self.morphism.incidence_matrix();
        let mut fail = None;
        for i in 0..mat.dim() {
            let mut lhs = sp.eigenvalue.zero_like();
            for (j, x) in sp.eigenvector.iter().enumerate() {
                lhs = lhs.add(&x.from_integer_like(mat.get(i, j) as i64).mul(x));
            }
            let rhs = sp.eigenvalue.mul(&sp.eigenvector[i]);
            if !lhs.same_value(&rhs) {
                fail = Some(format!("row {i}: {lhs} against {rhs}"));
                break;
            }
        }
        out.push(outcome("perron_eigenvector", fail, &format!("M·x = λx with λ = {}", sp.eigenvalue)));

        Ok(out)
    }
}
