//! Monodromy factorizations: finite words of non-identity permutations of a
//! common degree, acted on by Hurwitz moves and simultaneous conjugation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::perm::{CycleType, PermError, Permutation};

/// Default cap on the order of a generated subgroup (8!).
pub const DEFAULT_ORDER_CAP: u64 = 40320;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter {position} has degree {found}, expected {expected}")]
    DegreeMismatch { position: usize, expected: usize, found: usize },
    #[error("move index {index} out of range for a word of length {len} (valid: 1..={max})", max = len.saturating_sub(1))]
    IndexOutOfRange { index: usize, len: usize },
    #[error("letter {position} ({letter}) is not a transposition")]
    NotTransposition { position: usize, letter: String },
    #[error("generated subgroup has order greater than the cap {cap}")]
    OrderCapExceeded { cap: u64 },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

/// A word `x_{g_1} ⋯ x_{g_n}` with no identity letters.
///
/// The derived order compares the degree, then letters lexicographically
/// under the permutation order, a proper prefix being smaller.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    degree: usize,
    letters: Vec<Permutation>,
}

impl Word {
    /// Builds a word, dropping identity letters.
    pub fn new(degree: usize, letters: Vec<Permutation>) -> Result<Self, WordError> {
        if degree == 0 || degree > 255 {
            return Err(PermError::UnsupportedDegree(degree).into());
        }
        for (k, p) in letters.iter().enumerate() {
            if p.degree() != degree {
                return Err(WordError::DegreeMismatch { position: k + 1, expected: degree, found: p.degree() });
            }
        }
        Ok(Word { degree, letters: letters.into_iter().filter(|p| !p.is_identity()).collect() })
    }

    pub fn empty(degree: usize) -> Self {
        Word { degree, letters: Vec::new() }
    }

    /// Letters given as cycle strings, e.g. `Word::from_strs(3, &["(1 2)", "(2 3)"])`.
    pub fn from_strs(degree: usize, letters: &[&str]) -> Result<Self, WordError> {
        let perms = letters.iter().map(|s| Permutation::parse(s, degree)).collect::<Result<Vec<_>, _>>()?;
        Word::new(degree, perms)
    }

    pub(crate) fn from_letters_unchecked(degree: usize, letters: Vec<Permutation>) -> Self {
        debug_assert!(letters.iter().all(|p| p.degree() == degree && !p.is_identity()));
        Word { degree, letters }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn letters(&self) -> &[Permutation] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        if self.degree != other.degree {
            return Err(WordError::DegreeMismatch { position: 1, expected: self.degree, found: other.degree });
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(Word { degree: self.degree, letters })
    }

    /// `self` repeated `n` times.
    pub fn power(&self, n: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            letters.extend(self.letters.iter().cloned());
        }
        Word { degree: self.degree, letters }
    }

    /// Left-to-right product of the letters.
    pub fn product(&self) -> Permutation {
        self.letters
            .iter()
            .fold(Permutation::identity(self.degree), |acc, p| acc.then(p))
    }

    pub fn factorization_type(&self) -> TypeVector {
        let mut counts = BTreeMap::new();
        for p in &self.letters {
            *counts.entry(p.cycle_type()).or_insert(0) += 1;
        }
        TypeVector { counts }
    }

    /// Applies the move at the 1-based position `i`, acting on letters `i` and `i+1`.
    pub fn hurwitz_move(&self, i: usize, direction: Direction) -> Result<Word, WordError> {
        if i == 0 || i >= self.len() {
            return Err(WordError::IndexOutOfRange { index: i, len: self.len() });
        }
        let mut letters = self.letters.clone();
        let (a, b) = (&self.letters[i - 1], &self.letters[i]);
        match direction {
            Direction::Forward => {
                letters[i - 1] = b.conjugate_by(&a.inverse());
                letters[i] = a.clone();
            }
            Direction::Inverse => {
                letters[i - 1] = b.clone();
                letters[i] = a.conjugate_by(b);
            }
        }
        Ok(Word { degree: self.degree, letters })
    }

    /// Conjugates every letter by `g` (`x ↦ g⁻¹ x g`).
    pub fn simultaneous_conjugate(&self, g: &Permutation) -> Result<Word, WordError> {
        if g.degree() != self.degree {
            return Err(WordError::DegreeMismatch { position: 0, expected: self.degree, found: g.degree() });
        }
        Ok(Word { degree: self.degree, letters: self.letters.iter().map(|p| p.conjugate_by(g)).collect() })
    }

    /// Orbits of the subgroup generated by the letters on `{1..d}`, each sorted, listed by smallest point.
    pub fn orbit_partition(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        for p in &self.letters {
            for i in 0..self.degree {
                uf.union(i, p.image0(i));
            }
        }
        uf.classes().into_iter().map(|c| c.into_iter().map(|i| i + 1).collect()).collect()
    }

    pub fn generated_subgroup(&self, order_cap: u64) -> Result<SubgroupInfo, WordError> {
        let elements = group_closure(self.degree, &self.letters, order_cap)?;
        let order = elements.len() as u64;
        let orbit_partition = self.orbit_partition();
        let transitive = orbit_partition.len() == 1;
        let d = self.degree as u64;
        let factorial: u64 = (1..=d).product();
        let tag = if order == 1 {
            SubgroupTag::Trivial
        } else if order == factorial {
            SubgroupTag::FullSymmetric
        } else if d >= 3 && order * 2 == factorial && self.letters.iter().all(Permutation::is_even) {
            SubgroupTag::Alternating
        } else {
            SubgroupTag::Other
        };
        Ok(SubgroupInfo { order, transitive, tag, orbit_partition })
    }

    pub fn transposition_graph(&self) -> Result<TranspositionGraph, WordError> {
        let mut edges = Vec::with_capacity(self.len());
        for (k, p) in self.letters.iter().enumerate() {
            match p.as_transposition() {
                Some(e) => edges.push(e),
                None => return Err(WordError::NotTransposition { position: k + 1, letter: p.to_string() }),
            }
        }
        let mut vertices: Vec<usize> = edges.iter().flat_map(|&(i, j)| [i, j]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        Ok(TranspositionGraph { degree: self.degree, vertices, edges })
    }

    /// Moves the leftmost `n_g` copies of `g` (where `n_g` is the order of `g`) to the
    /// front, one at a time, conjugating the letters each copy passes by `g`.
    /// Returns `(x_g^{n_g}, rest)`, or `None` when `g` occurs fewer than `n_g` times.
    pub fn extract_central_power(&self, g: &Permutation) -> Option<(Word, Word)> {
        if g.degree() != self.degree || g.is_identity() {
            return None;
        }
        let n = g.order() as usize;
        let positions: Vec<usize> = self
            .letters
            .iter()
            .enumerate()
            .filter(|(_, p)| *p == g)
            .map(|(k, _)| k)
            .take(n)
            .collect();
        if positions.len() < n {
            return None;
        }
        let mut letters = self.letters.clone();
        for (target, &pos) in positions.iter().enumerate() {
            for k in (target..pos).rev() {
                letters[k + 1] = letters[k].conjugate_by(g);
                letters[k] = g.clone();
            }
        }
        let rest = letters.split_off(n);
        Some((Word { degree: self.degree, letters }, Word { degree: self.degree, letters: rest }))
    }

    /// Parses `d: letter | letter | …`; `d:` alone is the empty word.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let colon = text
            .find(':')
            .ok_or_else(|| WordError::Parse { column: 1, message: "expected 'DEGREE:' prefix".into() })?;
        let head = &text[..colon];
        let degree: usize = head.trim().parse().map_err(|_| WordError::Parse {
            column: 1,
            message: format!("invalid degree {:?}", head.trim()),
        })?;
        if degree == 0 || degree > 255 {
            return Err(WordError::Parse { column: 1, message: format!("degree {degree} outside 1..=255") });
        }
        let body = &text[colon + 1..];
        let mut letters = Vec::new();
        if !body.trim().is_empty() {
            let mut offset = colon + 1;
            for segment in body.split('|') {
                if segment.trim().is_empty() {
                    return Err(WordError::Parse { column: offset + 1, message: "empty letter between '|'".into() });
                }
                let perm = Permutation::parse(segment, degree).map_err(|e| match e {
                    PermError::Parse { column, message } => WordError::Parse { column: column + offset, message },
                    other => WordError::Parse {
                        column: offset + segment.len() - segment.trim_start().len() + 1,
                        message: other.to_string(),
                    },
                })?;
                letters.push(perm);
                offset += segment.len() + 1;
            }
        }
        Word::new(degree, letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.degree)?;
        for (k, p) in self.letters.iter().enumerate() {
            if k == 0 {
                write!(f, " {p}")?;
            } else {
                write!(f, " | {p}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// The multiset of letter cycle types, `τ(s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TypeVector {
    counts: BTreeMap<CycleType, usize>,
}

impl TypeVector {
    pub fn new() -> Self {
        TypeVector::default()
    }

    pub fn from_counts(pairs: impl IntoIterator<Item = (CycleType, usize)>) -> Result<Self, WordError> {
        let mut counts = BTreeMap::new();
        for (t, n) in pairs {
            if t.is_identity() {
                return Err(WordError::Parse { column: 1, message: "identity type [] cannot label a letter".into() });
            }
            if n > 0 {
                *counts.entry(t).or_insert(0) += n;
            }
        }
        Ok(TypeVector { counts })
    }

    pub fn counts(&self) -> &BTreeMap<CycleType, usize> {
        &self.counts
    }

    pub fn count(&self, t: &CycleType) -> usize {
        self.counts.get(t).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Parses the type-spec grammar: whitespace-separated `[k1,k2,...]xCOUNT` terms.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let mut pairs = Vec::new();
        let mut offset = 0usize;
        for token in text.split_whitespace() {
            let column = text[offset..].find(token).map(|p| p + offset).unwrap_or(offset) + 1;
            offset = column - 1 + token.len();
            let close = token
                .find(']')
                .ok_or_else(|| WordError::Parse { column, message: format!("term {token:?} lacks ']'") })?;
            let ty = CycleType::parse(&token[..=close])
                .map_err(|e| WordError::Parse { column, message: e.to_string() })?;
            let rest = &token[close + 1..];
            let count = if rest.is_empty() {
                1
            } else {
                let digits = rest.strip_prefix('x').ok_or_else(|| WordError::Parse {
                    column: column + close + 1,
                    message: format!("expected 'x' after type in {token:?}"),
                })?;
                digits.parse::<usize>().map_err(|_| WordError::Parse {
                    column: column + close + 2,
                    message: format!("invalid count {digits:?}"),
                })?
            };
            pairs.push((ty, count));
        }
        TypeVector::from_counts(pairs)
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (t, n) in self.counts.iter().rev() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{t}x{n}")?;
        }
        Ok(())
    }
}

impl Serialize for TypeVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupTag {
    Trivial,
    FullSymmetric,
    Alternating,
    Other,
}

impl fmt::Display for SubgroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubgroupTag::Trivial => "trivial",
            SubgroupTag::FullSymmetric => "full_symmetric",
            SubgroupTag::Alternating => "alternating",
            SubgroupTag::Other => "other",
        })
    }
}

impl FromStr for SubgroupTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "trivial" => Ok(SubgroupTag::Trivial),
            "full_symmetric" | "full" | "symmetric" => Ok(SubgroupTag::FullSymmetric),
            "alternating" => Ok(SubgroupTag::Alternating),
            "other" => Ok(SubgroupTag::Other),
            _ => Err(format!("unknown subgroup tag {s:?} (trivial|full_symmetric|alternating|other)")),
        }
    }
}

/// The subgroup `G_s` generated by the letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupInfo {
    pub order: u64,
    pub transitive: bool,
    pub tag: SubgroupTag,
    pub orbit_partition: Vec<Vec<usize>>,
}

/// Multigraph with one numbered edge per transposition letter; isolated vertices omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranspositionGraph {
    pub degree: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl TranspositionGraph {
    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        for &(i, j) in &self.edges {
            uf.union(i - 1, j - 1);
        }
        uf.classes()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| c.into_iter().map(|i| i + 1).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected with exactly `|V| − 1` edges (the empty graph counts as a tree).
    pub fn is_forest_of_trees(&self) -> bool {
        self.edges.len() + self.components().len() == self.vertices.len()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.is_forest_of_trees()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Classes as sorted lists ordered by smallest member.
    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        by_root.into_values().collect()
    }
}

/// All elements of the group generated by `gens`, erroring once more than `cap` are found.
pub fn group_closure(degree: usize, gens: &[Permutation], cap: u64) -> Result<Vec<Permutation>, WordError> {
    let id = Permutation::identity(degree);
    let mut seen: FxHashSet<Permutation> = FxHashSet::default();
    seen.insert(id.clone());
    let mut elements = vec![id];
    let mut gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    gens.sort();
    gens.dedup();
    let mut cursor = 0;
    while cursor < elements.len() {
        let x = elements[cursor].clone();
        cursor += 1;
        for g in &gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if elements.len() as u64 >= cap {
                    return Err(WordError::OrderCapExceeded { cap });
                }
                elements.push(y);
            }
        }
    }
    Ok(elements)
}
