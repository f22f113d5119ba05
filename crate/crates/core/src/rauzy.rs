//! Rauzy graphs `Γ_n` and their reductions `Γ̃_n`.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use crate::error::{GraphError, LanguageError};
use crate::frequency::FrequencyMap;
use crate::language::LanguageIndex;
use crate::number::FrequencyValue;
use crate::symmetry::{PalindromeReport, SymmetryGroup};
use crate::word::{Alphabet, Word};

/// `Γ_n`: vertices `L_n`, edges `L_{n+1}` from prefix to suffix.
#[derive(Clone, Debug)]
pub struct RauzyGraph {
    n: usize,
    vertices: Vec<Word>,
    edges: Vec<Word>,
    labels: Option<Vec<FrequencyValue>>,
}

impl RauzyGraph {
    pub fn build(l: &LanguageIndex, n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::ZeroOrder);
        }
        if n > l.n_max() {
            return Err(LanguageError::OutOfRange { n, max: l.n_max() }.into());
        }
        Ok(RauzyGraph {
            n,
            vertices: l.factors(n)?.to_vec(),
            edges: l.factors(n + 1)?.to_vec(),
            labels: None,
        })
    }

    /// Attaches `ρ(e)` to every edge.
    pub fn with_labels(mut self, fm: &FrequencyMap) -> Result<Self, GraphError> {
        let labels = self
            .edges
            .iter()
            .map(|e| {
                fm.get(e)
                    .cloned()
                    .ok_or_else(|| LanguageError::OutOfRange { n: e.len(), max: fm.max_len() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Word] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[FrequencyValue]> {
        self.labels.as_deref()
    }

    pub fn in_degree(&self, w: &[u8]) -> usize {
        self.edges.iter().filter(|e| &e[1..] == w).count()
    }

    pub fn out_degree(&self, w: &[u8]) -> usize {
        self.edges.iter().filter(|e| &e[..self.n] == w).count()
    }

    /// Contracts every vertex that is neither left nor right special.
    pub fn reduce(&self, l: &LanguageIndex) -> Result<ReducedRauzyGraph, GraphError> {
        let n = self.n;
        let sf = l.special_factors(n)?;
        let mut vertices: Vec<Word> = sf.left.iter().chain(&sf.right).cloned().collect();
        vertices.sort();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(GraphError::NoSpecialFactors(n));
        }
        let special: HashSet<&Word> = vertices.iter().collect();
        let label_of = |e: &[u8]| -> Option<FrequencyValue> {
            let labels = self.labels.as_ref()?;
            let i = self.edges.binary_search_by(|x| x.as_slice().cmp(e)).ok()?;
            Some(labels[i].clone())
        };
        let cap = self.vertices.len() + 1;
        let mut edges = Vec::new();
        for v in &vertices {
            for a in l.extensions(v)?.right.iter() {
                let mut path = v.clone();
                path.push(a);
                let mut steps = 0;
                loop {
                    let tail = &path[path.len() - n..];
                    if special.contains(&Word::from(tail)) {
                        break;
                    }
                    steps += 1;
                    if steps > cap {
                        return Err(GraphError::UnterminatedPath(l.alphabet().render(v)));
                    }
                    let next = l
                        .extensions(tail)?
                        .right
                        .unique()
                        .ok_or_else(|| GraphError::UnterminatedPath(l.alphabet().render(v)))?;
                    path.push(next);
                }
                let label = label_of(&path[..n + 1]);
                edges.push(SimplePath { word: path, label });
            }
        }
        edges.sort_by(|a, b| a.word.cmp(&b.word));
        Ok(ReducedRauzyGraph { n, vertices, edges })
    }

    pub fn to_dot(&self, alphabet: &Alphabet, with_labels: bool) -> String {
        let edges: Vec<(String, String, Option<String>)> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let label = with_labels
                    .then(|| self.labels.as_ref().map(|ls| ls[i].to_string()))
                    .flatten();
                (
                    alphabet.render(&e[..self.n]),
                    alphabet.render(&e[1..]),
                    label,
                )
            })
            .collect();
        let vertices: Vec<String> = self.vertices.iter().map(|v| alphabet.render(v)).collect();
        dot(&format!("rauzy_{}", self.n), &vertices, &edges)
    }
}

/// An edge of `Γ̃_n`: a factor whose length-`n` prefix and suffix are
/// special while no interior window of length `n` is.
#[derive(Clone, Debug)]
pub struct SimplePath {
    pub word: Word,
    /// `ρ` of the path; every `(n+1)`-window along it has this frequency.
    pub label: Option<FrequencyValue>,
}

impl SimplePath {
    pub fn start(&self, n: usize) -> &[u8] {
        &self.word[..n]
    }

    pub fn end(&self, n: usize) -> &[u8] {
        &self.word[self.word.len() - n..]
    }
}

/// `Γ̃_n`: vertices `LS ∪ RS`, edges the simple paths.
#[derive(Clone, Debug)]
pub struct ReducedRauzyGraph {
    n: usize,
    vertices: Vec<Word>,
    edges: Vec<SimplePath>,
}

impl ReducedRauzyGraph {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn edges(&self) -> &[SimplePath] {
        &self.edges
    }

    pub fn contains_edge(&self, w: &[u8]) -> bool {
        self.edges
            .binary_search_by(|e| e.word.as_slice().cmp(w))
            .is_ok()
    }

    pub fn labels(&self) -> Vec<&FrequencyValue> {
        self.edges.iter().filter_map(|e| e.label.as_ref()).collect()
    }

    pub fn to_dot(&self, alphabet: &Alphabet, with_labels: bool) -> String {
        let n = self.n;
        let edges: Vec<(String, String, Option<String>)> = self
            .edges
            .iter()
            .map(|e| {
                let label = with_labels.then(|| e.label.as_ref().map(|x| x.to_string())).flatten();
                (alphabet.render(e.start(n)), alphabet.render(e.end(n)), label)
            })
            .collect();
        let vertices: Vec<String> = self.vertices.iter().map(|v| alphabet.render(v)).collect();
        dot(&format!("reduced_rauzy_{n}"), &vertices, &edges)
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn dot(name: &str, vertices: &[String], edges: &[(String, String, Option<String>)]) -> String {
    let mut vertices = vertices.to_vec();
    vertices.sort();
    let mut edges = edges.to_vec();
    edges.sort();
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    for v in &vertices {
        writeln!(out, "  {};", quote(v)).unwrap();
    }
    for (from, to, label) in &edges {
        match label {
            Some(l) => writeln!(out, "  {} -> {} [label={}];", quote(from), quote(to), quote(l)).unwrap(),
            None => writeln!(out, "  {} -> {};", quote(from), quote(to)).unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

/// Edge counts of `Γ̃_n` against the special-factor censuses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCounts {
    pub n: usize,
    pub edges: usize,
    pub delta_c: usize,
    pub ls: usize,
    pub rs: usize,
    pub bs: usize,
    /// `Σ_{w ∈ RS} #Rext(w) + #{LS not RS}`.
    pub out_degree_sum: usize,
    /// `ΔC(n) + #RS + #LS − #BS`.
    pub special_sum: usize,
    /// `3ΔC(n) − X`.
    pub upper_bound: usize,
}

impl EdgeCounts {
    pub fn out_degree_identity(&self) -> bool {
        self.edges == self.out_degree_sum
    }
    pub fn special_identity(&self) -> bool {
        self.edges == self.special_sum
    }
    pub fn within_bound(&self) -> bool {
        self.edges <= self.upper_bound
    }
    pub fn all_hold(&self) -> bool {
        self.out_degree_identity() && self.special_identity() && self.within_bound()
    }
}

pub fn edge_count_identities(g: &ReducedRauzyGraph, l: &LanguageIndex) -> Result<EdgeCounts, GraphError> {
    let n = g.n;
    let sf = l.special_factors(n)?;
    let (_, delta_c) = l.complexity_delta(n)?;
    let rs: HashSet<&Word> = sf.right.iter().collect();
    let mut out_degree_sum = 0;
    for w in &sf.right {
        out_degree_sum += l.extensions(w)?.right.len();
    }
    out_degree_sum += sf.left.iter().filter(|w| !rs.contains(w)).count();
    let (ls, rsn, bs) = (sf.left.len(), sf.right.len(), sf.bispecial.len());
    Ok(EdgeCounts {
        n,
        edges: g.edges.len(),
        delta_c,
        ls,
        rs: rsn,
        bs,
        out_degree_sum,
        special_sum: delta_c + rsn + ls - bs,
        upper_bound: (3 * delta_c).saturating_sub(bs),
    })
}

/// Edges of `Γ̃_n` split by the action of a symmetry group.
#[derive(Clone, Debug)]
pub struct EdgeClasses {
    /// Edges fixed by some antimorphism of the group.
    pub a: usize,
    pub b: usize,
    /// Orbits as sorted edge words, each with whether it is θ-fixed.
    pub orbits: Vec<(Vec<Word>, bool)>,
    /// Orbit sizes meet `≥ k` (fixed) and `≥ 2k` (otherwise), `#G = 2k`;
    /// `None` when some vertex misses a letter.
    pub orbit_sizes_ok: Option<bool>,
    /// Every orbit carries a single label.
    pub labels_constant: bool,
}

pub fn classify_edges(g: &ReducedRauzyGraph, group: &SymmetryGroup, alphabet: &Alphabet) -> Result<EdgeClasses, GraphError> {
    let mut orbit_of: BTreeMap<Word, usize> = BTreeMap::new();
    let mut orbits: Vec<(Vec<Word>, bool)> = Vec::new();
    let (mut a, mut b) = (0, 0);
    for e in &g.edges {
        let fixed = group.antimorphisms().any(|t| t.apply(&e.word) == e.word);
        if fixed {
            a += 1;
        } else {
            b += 1;
        }
        if orbit_of.contains_key(&e.word) {
            continue;
        }
        let mut orbit = Vec::new();
        for s in group.elements() {
            let img = s.apply(&e.word);
            if !g.contains_edge(&img) {
                return Err(GraphError::NotInvariant {
                    edge: alphabet.render(&e.word),
                });
            }
            orbit.push(img);
        }
        orbit.sort();
        orbit.dedup();
        let id = orbits.len();
        for w in &orbit {
            orbit_of.insert(w.clone(), id);
        }
        orbits.push((orbit, fixed));
    }
    let all = alphabet.all_letters();
    let full = g
        .vertices
        .iter()
        .all(|v| crate::word::letter_set_of(v) == all);
    let k = group.order() / 2;
    let orbit_sizes_ok = full.then(|| {
        orbits
            .iter()
            .all(|(o, fixed)| o.len() >= if *fixed { k } else { 2 * k })
    });
    let label_of = |w: &Word| {
        g.edges
            .binary_search_by(|e| e.word.cmp(w))
            .ok()
            .and_then(|i| g.edges[i].label.clone())
    };
    let labels_constant = orbits.iter().all(|(o, _)| {
        let first = label_of(&o[0]);
        o.iter().all(|w| match (&first, label_of(w)) {
            (Some(x), Some(y)) => x.same_value(&y),
            (None, None) => true,
            _ => false,
        })
    });
    orbits.sort();
    Ok(EdgeClasses {
        a,
        b,
        orbits,
        orbit_sizes_ok,
        labels_constant,
    })
}

/// `A` against `Σ_θ (P_θ(n) + P_θ(n+1)) − Σ_θ #{θ-palindromic BS of length n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedEdgeCensus {
    pub a: usize,
    pub palindromes: usize,
    pub bispecial_palindromes: usize,
    pub predicted: usize,
}

impl FixedEdgeCensus {
    pub fn holds(&self) -> bool {
        self.a == self.predicted
    }
}

pub fn theta_fixed_edge_census(
    g: &ReducedRauzyGraph,
    group: &SymmetryGroup,
    report: &PalindromeReport,
) -> FixedEdgeCensus {
    let n = g.n;
    let a = g
        .edges
        .iter()
        .filter(|e| group.antimorphisms().any(|t| t.apply(&e.word) == e.word))
        .count();
    let palindromes: usize = report
        .rows
        .iter()
        .map(|r| r.counts[n] + r.counts.get(n + 1).copied().unwrap_or(0))
        .sum();
    let bispecial_palindromes = report.bispecial_palindrome_sum(n);
    FixedEdgeCensus {
        a,
        palindromes,
        bispecial_palindromes,
        predicted: palindromes.saturating_sub(bispecial_palindromes),
    }
}
