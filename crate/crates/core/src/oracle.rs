//! Brute-force ground truth: breadth-first enumeration of Hurwitz orbits,
//! exact equivalence decisions and orbit counting under simultaneous conjugation.
//!
//! Words are interned over a sorted alphabet whose index order equals the
//! permutation order, so comparing index slices compares words.

use std::collections::BTreeMap;
use std::hash::BuildHasherDefault;

use indexmap::IndexSet;
use rustc_hash::{FxHashMap, FxHasher};
use serde::Serialize;
use thiserror::Error;

use crate::perm::{CycleType, Permutation};
use crate::word::{SubgroupTag, TypeVector, UnionFind, Word, WordError, DEFAULT_ORDER_CAP};

type FxIndexSet<T> = IndexSet<T, BuildHasherDefault<FxHasher>>;
type Key = Box<[u16]>;

/// Dense move tables are used up to this many letters.
const DENSE_LIMIT: usize = 1024;
const NONE: u16 = u16::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget of {max_states} states exhausted; result inconclusive")]
    Inconclusive { max_states: usize },
    #[error("alphabet of {0} letters is too large to index")]
    AlphabetTooLarge(usize),
    #[error("invalid constraints: {0}")]
    InvalidConstraints(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchLimits {
    pub max_states: usize,
}

impl SearchLimits {
    pub const DEFAULT_MAX_STATES: usize = 5_000_000;

    pub fn new(max_states: usize) -> Self {
        SearchLimits { max_states: max_states.max(1) }
    }
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_states: Self::DEFAULT_MAX_STATES }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitResult {
    pub canonical: Word,
    pub size: usize,
    pub exhausted: bool,
    pub states_explored: usize,
}

/// A sorted, conjugation-closed letter set with lazily filled move tables.
pub(crate) struct Alphabet {
    degree: usize,
    letters: Vec<Permutation>,
    index: FxHashMap<Permutation, u16>,
    dense: Option<(Vec<u16>, Vec<u16>)>,
    sparse_fwd: FxHashMap<(u16, u16), u16>,
    sparse_inv: FxHashMap<(u16, u16), u16>,
}

impl Alphabet {
    /// `letters` must be closed under mutual conjugation.
    pub(crate) fn new(degree: usize, mut letters: Vec<Permutation>) -> Result<Self, OracleError> {
        letters.sort();
        letters.dedup();
        if letters.len() >= NONE as usize {
            return Err(OracleError::AlphabetTooLarge(letters.len()));
        }
        let index = letters.iter().enumerate().map(|(k, p)| (p.clone(), k as u16)).collect();
        let n = letters.len();
        let dense = (n <= DENSE_LIMIT).then(|| (vec![NONE; n * n], vec![NONE; n * n]));
        Ok(Alphabet { degree, letters, index, dense, sparse_fwd: FxHashMap::default(), sparse_inv: FxHashMap::default() })
    }

    /// Closure of `seed` under conjugation by its own members.
    pub(crate) fn closure_of(degree: usize, seed: &[Permutation]) -> Result<Self, OracleError> {
        let mut set: FxIndexSet<Permutation> = seed.iter().filter(|p| !p.is_identity()).cloned().collect();
        let mut cursor = 0;
        while cursor < set.len() {
            let a = set[cursor].clone();
            cursor += 1;
            let mut k = 0;
            while k < set.len() {
                let b = set[k].clone();
                k += 1;
                set.insert(a.conjugate_by(&b));
                set.insert(b.conjugate_by(&a));
            }
        }
        Alphabet::new(degree, set.into_iter().collect())
    }

    /// Every permutation of the given cycle types.
    pub(crate) fn classes(degree: usize, types: &[CycleType], even_only: bool) -> Result<Self, OracleError> {
        let letters = Permutation::all(degree)
            .into_iter()
            .filter(|p| !p.is_identity() && types.contains(&p.cycle_type()) && (!even_only || p.is_even()))
            .collect();
        Alphabet::new(degree, letters)
    }

    pub(crate) fn len(&self) -> usize {
        self.letters.len()
    }

    pub(crate) fn letter(&self, k: u16) -> &Permutation {
        &self.letters[k as usize]
    }

    pub(crate) fn letters(&self) -> &[Permutation] {
        &self.letters
    }

    pub(crate) fn lookup(&self, p: &Permutation) -> Option<u16> {
        self.index.get(p).copied()
    }

    pub(crate) fn encode(&self, w: &Word) -> Option<Key> {
        w.letters().iter().map(|p| self.lookup(p)).collect()
    }

    pub(crate) fn decode(&self, key: &[u16]) -> Word {
        Word::from_letters_unchecked(self.degree, key.iter().map(|&k| self.letters[k as usize].clone()).collect())
    }

    fn must(&self, p: &Permutation) -> u16 {
        self.lookup(p).expect("alphabet is not closed under conjugation")
    }

    /// Index of `a b a⁻¹`, the new left letter of a forward move.
    fn forward(&mut self, a: u16, b: u16) -> u16 {
        let n = self.letters.len();
        if let Some((fwd, _)) = &self.dense {
            let v = fwd[a as usize * n + b as usize];
            if v != NONE {
                return v;
            }
        } else if let Some(&v) = self.sparse_fwd.get(&(a, b)) {
            return v;
        }
        let pa = &self.letters[a as usize];
        let v = self.must(&self.letters[b as usize].conjugate_by(&pa.inverse()));
        match &mut self.dense {
            Some((fwd, _)) => fwd[a as usize * n + b as usize] = v,
            None => {
                self.sparse_fwd.insert((a, b), v);
            }
        }
        v
    }

    /// Index of `b⁻¹ a b`, the new right letter of an inverse move.
    fn inverse(&mut self, a: u16, b: u16) -> u16 {
        let n = self.letters.len();
        if let Some((_, inv)) = &self.dense {
            let v = inv[a as usize * n + b as usize];
            if v != NONE {
                return v;
            }
        } else if let Some(&v) = self.sparse_inv.get(&(a, b)) {
            return v;
        }
        let v = self.must(&self.letters[a as usize].conjugate_by(&self.letters[b as usize]));
        match &mut self.dense {
            Some((_, inv)) => inv[a as usize * n + b as usize] = v,
            None => {
                self.sparse_inv.insert((a, b), v);
            }
        }
        v
    }

    /// Calls `f` on every word one move away from `w`.
    fn neighbours(&mut self, w: &[u16], buf: &mut Vec<u16>, mut f: impl FnMut(&[u16])) {
        for i in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[i], w[i + 1]);
            buf.clear();
            buf.extend_from_slice(w);
            buf[i] = self.forward(a, b);
            buf[i + 1] = a;
            f(buf);
            buf[i] = b;
            buf[i + 1] = self.inverse(a, b);
            f(buf);
        }
    }
}

/// Breadth-first orbit from `start`. Returns the visited set and whether it was completed.
fn bfs(alpha: &mut Alphabet, start: Key, max_states: usize) -> (FxIndexSet<Key>, bool) {
    let mut seen: FxIndexSet<Key> = FxIndexSet::default();
    seen.insert(start);
    let mut cursor = 0;
    let mut buf = Vec::new();
    while cursor < seen.len() {
        let cur = seen[cursor].clone();
        cursor += 1;
        alpha.neighbours(&cur, &mut buf, |nb| {
            if seen.len() < max_states || seen.contains(nb) {
                seen.insert(nb.into());
            }
        });
        if seen.len() >= max_states && cursor < seen.len() {
            return (seen, false);
        }
    }
    (seen, true)
}

/// Enumerates the Hurwitz orbit of `w`.
pub fn hurwitz_orbit(w: &Word, limits: SearchLimits) -> Result<OrbitResult, OracleError> {
    let mut alpha = Alphabet::closure_of(w.degree(), w.letters())?;
    let start = alpha.encode(w).expect("letters lie in their own closure");
    let (seen, exhausted) = bfs(&mut alpha, start, limits.max_states);
    let min = seen.iter().min().expect("orbit contains its start");
    Ok(OrbitResult { canonical: alpha.decode(min), size: seen.len(), exhausted, states_explored: seen.len() })
}

/// The orbit as a sorted list of words.
pub fn orbit_words(w: &Word, limits: SearchLimits) -> Result<Vec<Word>, OracleError> {
    let mut alpha = Alphabet::closure_of(w.degree(), w.letters())?;
    let start = alpha.encode(w).expect("letters lie in their own closure");
    let (seen, exhausted) = bfs(&mut alpha, start, limits.max_states);
    if !exhausted {
        return Err(OracleError::Inconclusive { max_states: limits.max_states });
    }
    let mut keys: Vec<&Key> = seen.iter().collect();
    keys.sort();
    Ok(keys.into_iter().map(|k| alpha.decode(k)).collect())
}

/// Decides Hurwitz equivalence. Move-invariant prefilters reject cheaply; otherwise a
/// bidirectional search runs until the frontiers meet or one side closes.
pub fn hurwitz_equivalent(w1: &Word, w2: &Word, limits: SearchLimits) -> Result<bool, OracleError> {
    if w1 == w2 {
        return Ok(true);
    }
    if w1.degree() != w2.degree()
        || w1.len() != w2.len()
        || w1.product() != w2.product()
        || w1.factorization_type() != w2.factorization_type()
        || w1.orbit_partition() != w2.orbit_partition()
    {
        return Ok(false);
    }
    let g1 = w1.generated_subgroup(u64::MAX)?;
    let g2 = w2.generated_subgroup(u64::MAX)?;
    if g1.order != g2.order {
        return Ok(false);
    }
    let mut alpha = Alphabet::closure_of(w1.degree(), w1.letters())?;
    let (Some(k1), Some(k2)) = (alpha.encode(w1), alpha.encode(w2)) else {
        return Ok(false);
    };

    let mut sides: [FxIndexSet<Key>; 2] = [FxIndexSet::default(), FxIndexSet::default()];
    sides[0].insert(k1);
    sides[1].insert(k2);
    let mut cursors = [0usize, 0usize];
    let mut buf = Vec::new();
    loop {
        let open0 = cursors[0] < sides[0].len();
        let open1 = cursors[1] < sides[1].len();
        if !open0 || !open1 {
            return Ok(false);
        }
        let s = if sides[0].len() <= sides[1].len() { 0 } else { 1 };
        let layer_end = sides[s].len();
        while cursors[s] < layer_end {
            let cur = sides[s][cursors[s]].clone();
            cursors[s] += 1;
            let mut met = false;
            let (this, other) = if s == 0 {
                let (a, b) = sides.split_at_mut(1);
                (&mut a[0], &b[0])
            } else {
                let (a, b) = sides.split_at_mut(1);
                (&mut b[0], &a[0])
            };
            alpha.neighbours(&cur, &mut buf, |nb| {
                if other.contains(nb) {
                    met = true;
                }
                this.insert(nb.into());
            });
            if met {
                return Ok(true);
            }
            if sides[0].len() + sides[1].len() > limits.max_states {
                return Err(OracleError::Inconclusive { max_states: limits.max_states });
            }
        }
    }
}

/// Product requirement on enumerated words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductConstraint {
    Exact(Permutation),
    OfType(CycleType),
    /// The product lies in the alternating group.
    Even,
}

/// Requirement on the generated subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaloisFilter {
    Tag(SubgroupTag),
    Order(u64),
}

/// Stratum description for enumerations. Every field is a move invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraints {
    pub degree: usize,
    pub length: usize,
    /// Exact multiset of letter types.
    pub types: Option<TypeVector>,
    /// Allowed letter types when `types` is absent; all non-identity types otherwise.
    pub letter_types: Option<Vec<CycleType>>,
    /// Explicit letter set, closed under mutual conjugation; overrides the type-based alphabet.
    pub alphabet: Option<Vec<Permutation>>,
    pub product: Option<ProductConstraint>,
    pub galois: Option<GaloisFilter>,
    pub transitive: Option<bool>,
}

impl Constraints {
    pub fn new(degree: usize, length: usize) -> Self {
        Constraints {
            degree,
            length,
            types: None,
            letter_types: None,
            alphabet: None,
            product: None,
            galois: None,
            transitive: None,
        }
    }

    pub fn with_types(mut self, types: TypeVector) -> Self {
        self.types = Some(types);
        self
    }

    pub fn with_letter_types(mut self, types: Vec<CycleType>) -> Self {
        self.letter_types = Some(types);
        self
    }

    pub fn with_alphabet(mut self, letters: Vec<Permutation>) -> Self {
        self.alphabet = Some(letters);
        self
    }

    pub fn with_product(mut self, product: ProductConstraint) -> Self {
        self.product = Some(product);
        self
    }

    pub fn identity_product(self) -> Self {
        let d = self.degree;
        self.with_product(ProductConstraint::Exact(Permutation::identity(d)))
    }

    pub fn with_galois(mut self, galois: GaloisFilter) -> Self {
        self.galois = Some(galois);
        self
    }

    pub fn with_transitive(mut self, transitive: bool) -> Self {
        self.transitive = Some(transitive);
        self
    }

    fn validate(&self) -> Result<(), OracleError> {
        if self.degree == 0 || self.degree > 8 {
            return Err(OracleError::InvalidConstraints(format!("degree {} outside 1..=8", self.degree)));
        }
        if let Some(tv) = &self.types {
            if tv.total() != self.length {
                return Err(OracleError::InvalidConstraints(format!(
                    "type vector has {} letters but length is {}",
                    tv.total(),
                    self.length
                )));
            }
            for t in tv.counts().keys() {
                if t.support_size() > self.degree {
                    return Err(OracleError::InvalidConstraints(format!("type {t} does not fit degree {}", self.degree)));
                }
            }
        }
        if let Some(ProductConstraint::Exact(p)) = &self.product {
            if p.degree() != self.degree {
                return Err(OracleError::InvalidConstraints("product has the wrong degree".into()));
            }
        }
        Ok(())
    }

    fn matches_galois(&self, w: &Word) -> Result<bool, OracleError> {
        if let Some(t) = self.transitive {
            if (w.orbit_partition().len() == 1) != t {
                return Ok(false);
            }
        }
        Ok(match &self.galois {
            None => true,
            Some(GaloisFilter::Tag(tag)) => w.generated_subgroup(DEFAULT_ORDER_CAP)?.tag == *tag,
            Some(GaloisFilter::Order(n)) => w.generated_subgroup(DEFAULT_ORDER_CAP)?.order == *n,
        })
    }
}

/// One Hurwitz orbit of an enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    pub canonical: Word,
    pub size: usize,
}

/// Result of partitioning a stratum into Hurwitz orbits.
pub struct Enumeration {
    alphabet: Alphabet,
    words: FxIndexSet<Key>,
    orbit_of: Vec<u32>,
    /// Orbits passing every filter, sorted by canonical word.
    pub orbits: Vec<OrbitSummary>,
    orbit_index: FxHashMap<u32, usize>,
    constraints: Constraints,
}

impl Enumeration {
    /// Number of words in the stratum that pass all filters.
    pub fn word_count(&self) -> usize {
        self.orbits.iter().map(|o| o.size).sum()
    }

    /// Index into `orbits` of the orbit containing `w`, if it is in the stratum.
    pub fn orbit_of(&self, w: &Word) -> Option<usize> {
        let key = self.alphabet.encode(w)?;
        let pos = self.words.get_index_of(&key)?;
        self.orbit_index.get(&self.orbit_of[pos]).copied()
    }

    pub fn constraints(&self) -> &Constraints {
        &self.constraints
    }

    /// Every word of the stratum with the index of its orbit.
    pub fn members(&self) -> Vec<(Word, usize)> {
        self.words
            .iter()
            .zip(&self.orbit_of)
            .filter_map(|(key, id)| self.orbit_index.get(id).map(|&k| (self.alphabet.decode(key), k)))
            .collect()
    }

    /// Fuses orbits related by simultaneous conjugation by any of `conjugators`
    /// (conjugates leaving the stratum are ignored). Returns a class id per orbit.
    pub fn fuse_by_conjugation(&self, conjugators: &[Permutation]) -> Vec<usize> {
        let mut uf = UnionFind::new(self.orbits.len());
        for (k, orbit) in self.orbits.iter().enumerate() {
            for g in conjugators {
                let Ok(c) = orbit.canonical.simultaneous_conjugate(g) else { continue };
                if let Some(j) = self.orbit_of(&c) {
                    uf.union(k, j);
                }
            }
        }
        let mut ids = BTreeMap::new();
        (0..self.orbits.len())
            .map(|k| {
                let r = uf.find(k);
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect()
    }
}

/// Partitions every word of the stratum into Hurwitz orbits.
pub fn enumerate(constraints: &Constraints, limits: SearchLimits) -> Result<Enumeration, OracleError> {
    constraints.validate()?;
    let d = constraints.degree;
    let even_only = matches!(constraints.galois, Some(GaloisFilter::Tag(SubgroupTag::Alternating)));
    let mut alphabet = match &constraints.alphabet {
        Some(letters) => {
            let a = Alphabet::closure_of(d, letters)?;
            if a.len() != letters.iter().filter(|p| !p.is_identity()).count() {
                return Err(OracleError::InvalidConstraints("explicit alphabet is not closed under conjugation".into()));
            }
            a
        }
        None => {
            let types: Vec<CycleType> = match (&constraints.types, &constraints.letter_types) {
                (Some(tv), _) => tv.counts().keys().cloned().collect(),
                (None, Some(ts)) => ts.clone(),
                (None, None) => CycleType::all(d).into_iter().filter(|t| !t.is_identity()).collect(),
            };
            Alphabet::classes(d, &types, even_only)?
        }
    };

    let n = alphabet.len();
    let length = constraints.length;
    let letter_type: Vec<usize> = {
        let keys: Vec<CycleType> = match &constraints.types {
            Some(tv) => tv.counts().keys().cloned().collect(),
            None => Vec::new(),
        };
        alphabet
            .letters()
            .iter()
            .map(|p| keys.iter().position(|t| *t == p.cycle_type()).unwrap_or(usize::MAX))
            .collect()
    };
    let mut remaining: Vec<usize> = constraints
        .types
        .as_ref()
        .map(|tv| tv.counts().values().copied().collect())
        .unwrap_or_default();
    let use_counts = constraints.types.is_some();

    let targets: Option<Vec<Permutation>> = match &constraints.product {
        Some(ProductConstraint::Exact(p)) => Some(vec![p.clone()]),
        Some(ProductConstraint::OfType(t)) => {
            Some(Permutation::all(d).into_iter().filter(|p| p.cycle_type() == *t).collect())
        }
        _ => None,
    };
    let require_even = matches!(constraints.product, Some(ProductConstraint::Even));

    let mut words: FxIndexSet<Key> = FxIndexSet::default();
    let mut orbit_of: Vec<u32> = Vec::new();
    let mut accepted: Vec<(u32, Key, usize)> = Vec::new();
    let mut next_orbit = 0u32;
    let mut current = vec![0u16; length];
    let mut prefix = vec![Permutation::identity(d); length + 1];
    let mut buf = Vec::new();
    let mut failure: Option<OracleError> = None;

    // Handles a complete candidate word.
    let mut visit = |word: &[u16], alphabet: &mut Alphabet, words: &mut FxIndexSet<Key>, orbit_of: &mut Vec<u32>| -> Result<(), OracleError> {
        if words.contains(word) {
            return Ok(());
        }
        let decoded = alphabet.decode(word);
        let keep = constraints.matches_galois(&decoded)?;
        let id = next_orbit;
        next_orbit += 1;
        let start = words.len();
        words.insert(word.into());
        orbit_of.push(id);
        let mut min = start;
        let mut cursor = start;
        while cursor < words.len() {
            let cur = words[cursor].clone();
            cursor += 1;
            alphabet.neighbours(&cur, &mut buf, |nb| {
                if words.insert(nb.into()) {
                    orbit_of.push(id);
                }
            });
            if words.len() > limits.max_states {
                return Err(OracleError::Inconclusive { max_states: limits.max_states });
            }
        }
        for k in start..words.len() {
            if words[k] < words[min] {
                min = k;
            }
        }
        if keep {
            accepted.push((id, words[min].clone(), words.len() - start));
        }
        Ok(())
    };

    if length == 0 {
        let ok = match &targets {
            Some(ts) => ts.iter().any(Permutation::is_identity),
            None => true,
        };
        if ok {
            visit(&[], &mut alphabet, &mut words, &mut orbit_of)?;
        }
    } else if n > 0 {
        // Iterative depth-first generation with the last letter forced when the product is fixed.
        let mut pos = 0usize;
        let mut choice = vec![0usize; length];
        'outer: loop {
            if pos == length - 1 && targets.is_some() {
                let inv = prefix[pos].inverse();
                for t in targets.as_ref().unwrap() {
                    let last = inv.then(t);
                    if last.is_identity() {
                        continue;
                    }
                    let Some(k) = alphabet.lookup(&last) else { continue };
                    let lt = letter_type[k as usize];
                    if use_counts && (lt == usize::MAX || remaining[lt] == 0) {
                        continue;
                    }
                    current[pos] = k;
                    if let Err(e) = visit(&current, &mut alphabet, &mut words, &mut orbit_of) {
                        failure = Some(e);
                        break 'outer;
                    }
                }
                if pos == 0 {
                    break;
                }
                pos -= 1;
                let lt = letter_type[current[pos] as usize];
                if use_counts {
                    remaining[lt] += 1;
                }
                choice[pos] += 1;
                continue;
            }
            let mut advanced = false;
            while choice[pos] < n {
                let k = choice[pos] as u16;
                let lt = letter_type[k as usize];
                if use_counts && (lt == usize::MAX || remaining[lt] == 0) {
                    choice[pos] += 1;
                    continue;
                }
                current[pos] = k;
                if pos == length - 1 {
                    let p = prefix[pos].then(alphabet.letter(k));
                    if !require_even || p.is_even() {
                        if let Err(e) = visit(&current, &mut alphabet, &mut words, &mut orbit_of) {
                            failure = Some(e);
                            break 'outer;
                        }
                    }
                    choice[pos] += 1;
                    continue;
                }
                if use_counts {
                    remaining[lt] -= 1;
                }
                prefix[pos + 1] = prefix[pos].then(alphabet.letter(k));
                pos += 1;
                choice[pos] = 0;
                advanced = true;
                break;
            }
            if advanced {
                continue;
            }
            if pos == 0 {
                break;
            }
            pos -= 1;
            let lt = letter_type[current[pos] as usize];
            if use_counts {
                remaining[lt] += 1;
            }
            choice[pos] += 1;
        }
    }
    if let Some(e) = failure {
        return Err(e);
    }

    accepted.sort_by(|a, b| a.1.cmp(&b.1));
    let mut orbit_index = FxHashMap::default();
    let mut orbits = Vec::with_capacity(accepted.len());
    for (k, (id, key, size)) in accepted.into_iter().enumerate() {
        orbit_index.insert(id, k);
        orbits.push(OrbitSummary { canonical: alphabet.decode(&key), size });
    }
    Ok(Enumeration { alphabet, words, orbit_of, orbits, orbit_index, constraints: constraints.clone() })
}

/// Canonical representatives of the Hurwitz orbits of a stratum, in increasing order.
pub fn enumerate_elements(constraints: &Constraints, limits: SearchLimits) -> Result<Vec<Word>, OracleError> {
    Ok(enumerate(constraints, limits)?.orbits.into_iter().map(|o| o.canonical).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugationCount {
    pub count: usize,
    /// Smallest canonical word of each fused class, in increasing order.
    pub representatives: Vec<Word>,
    /// Number of Hurwitz orbits before fusion.
    pub hurwitz_orbits: usize,
}

/// Counts Hurwitz orbits of the stratum up to simultaneous conjugation by all of `S_d`.
pub fn orbit_count_mod_conjugation(constraints: &Constraints, limits: SearchLimits) -> Result<ConjugationCount, OracleError> {
    let e = enumerate(constraints, limits)?;
    let all = Permutation::all(constraints.degree);
    Ok(fused_count(&e, &all))
}

/// Fuses an enumeration by the given conjugators.
pub fn fused_count(e: &Enumeration, conjugators: &[Permutation]) -> ConjugationCount {
    let ids = e.fuse_by_conjugation(conjugators);
    let count = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut reps: Vec<Option<Word>> = vec![None; count];
    for (k, &c) in ids.iter().enumerate() {
        if reps[c].is_none() {
            reps[c] = Some(e.orbits[k].canonical.clone());
        }
    }
    let mut representatives: Vec<Word> = reps.into_iter().flatten().collect();
    representatives.sort();
    ConjugationCount { count, representatives, hurwitz_orbits: e.orbits.len() }
}
