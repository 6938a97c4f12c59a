//! Degree 3: the seven generators of the identity-product semigroup, exact
//! normal forms, representatives up to simultaneous conjugation, and
//! component counts for degree-3 coverings.
//!
//! Classification reads move invariants (generated subgroup, product, and the
//! counts of transpositions, `(1 2 3)` and `(1 3 2)` letters) and emits the
//! matching family; the emitted word is equivalent to the input.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::oracle::{self, Constraints, GaloisFilter, OracleError, ProductConstraint, SearchLimits};
use crate::perm::{CycleType, Permutation};
use crate::word::{SubgroupTag, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sigma3Error {
    #[error("expected a degree-3 word, got degree {0}")]
    WrongDegree(usize),
    #[error("inconsistent constraints: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Word(#[from] WordError),
}

fn p3(s: &str) -> Permutation {
    Permutation::parse(s, 3).expect("literal permutation")
}

fn rep(parts: &[(&str, usize)]) -> Word {
    let mut letters = Vec::new();
    for &(s, n) in parts {
        for _ in 0..n {
            letters.push(p3(s));
        }
    }
    Word::new(3, letters).expect("degree-3 letters")
}

/// `s_1 … s_7`, indexed from 0.
pub fn sigma3_generators() -> [Word; 7] {
    [
        rep(&[("(1 2)", 2)]),
        rep(&[("(2 3)", 2)]),
        rep(&[("(1 3)", 2)]),
        rep(&[("(1 2 3)", 1), ("(1 3 2)", 1)]),
        rep(&[("(1 2 3)", 1), ("(1 2)", 1), ("(2 3)", 1)]),
        rep(&[("(1 2 3)", 3)]),
        rep(&[("(1 3 2)", 3)]),
    ]
}

fn gen_power(i: usize, n: usize) -> Word {
    sigma3_generators()[i - 1].power(n)
}

fn cat(parts: &[Word]) -> Word {
    parts.iter().fold(Word::empty(3), |acc, w| acc.concat(w).expect("same degree"))
}

/// Normal-form families. The first six are exact identity-product elements;
/// the rest are representatives up to simultaneous conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "family", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Sigma3Family {
    /// The empty word.
    Unit,
    /// `s_i^n`, `i ∈ {1,2,3}`, `n ≥ 1`.
    SIPower { i: usize, n: usize },
    /// `s_4^a · s_6^m · s_7^n`, `0 ≤ a ≤ 2`, `a + m + n > 0`.
    S4S6S7 { a: usize, m: usize, n: usize },
    /// `s_1^n · s_2`, `n ≥ 1`.
    S1nS2 { n: usize },
    /// `s_1^n · s_6^m`, `n, m ≥ 1`.
    S1nS6m { n: usize, m: usize },
    /// `s_1^n · s_5 · s_6^m`.
    S1nS5S6m { n: usize, m: usize },
    /// `s_1^n · s_4 · s_6^m`.
    S1nS4S6m { n: usize, m: usize },
    /// `x_{(1 2)}^{2k+1}`.
    X12Odd { k: usize },
    /// `x_{(1 2 3)}^n · x_{(1 3 2)}^m`, `n > m`.
    X123nX132m { n: usize, m: usize },
    /// `x_{(1 2)}^n · x_{(2 3)}`, `n ≥ 1`.
    X12nX23 { n: usize },
    /// `x_{(1 2)}^n · x_{(1 2 3)}^{3m} · x_{(1 3 2)}^a`, `a ≠ 0` when `n` is even.
    X12nX123X132 { n: usize, m: usize, a: usize },
    /// `x_{(1 2)}^n · x_{(1 2 3)}^{3m−1} · x_{(1 3 2)}`, `n` even, `m ≥ 1`: the
    /// class with a 3-cycle product and `3m` three-cycle letters, which the
    /// previous family cannot express.
    X12nX123X132Balanced { n: usize, m: usize },
}

impl Sigma3Family {
    pub fn is_exact(&self) -> bool {
        matches!(
            self,
            Sigma3Family::Unit
                | Sigma3Family::SIPower { .. }
                | Sigma3Family::S4S6S7 { .. }
                | Sigma3Family::S1nS2 { .. }
                | Sigma3Family::S1nS6m { .. }
                | Sigma3Family::S1nS5S6m { .. }
                | Sigma3Family::S1nS4S6m { .. }
        )
    }

    /// Whether the family appears in the published list of representatives.
    pub fn is_listed(&self) -> bool {
        !matches!(self, Sigma3Family::X12nX123X132Balanced { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Sigma3Family::Unit => "UNIT",
            Sigma3Family::SIPower { .. } => "S_I_POWER",
            Sigma3Family::S4S6S7 { .. } => "S4_S6_S7",
            Sigma3Family::S1nS2 { .. } => "S1N_S2",
            Sigma3Family::S1nS6m { .. } => "S1N_S6M",
            Sigma3Family::S1nS5S6m { .. } => "S1N_S5_S6M",
            Sigma3Family::S1nS4S6m { .. } => "S1N_S4_S6M",
            Sigma3Family::X12Odd { .. } => "X12_ODD",
            Sigma3Family::X123nX132m { .. } => "X123N_X132M",
            Sigma3Family::X12nX23 { .. } => "X12N_X23",
            Sigma3Family::X12nX123X132 { .. } => "X12N_X123_3M_X132_A",
            Sigma3Family::X12nX123X132Balanced { .. } => "X12N_X123_3M1_X132",
        }
    }

    /// The family's word.
    pub fn word(&self) -> Word {
        match *self {
            Sigma3Family::Unit => Word::empty(3),
            Sigma3Family::SIPower { i, n } => gen_power(i, n),
            Sigma3Family::S4S6S7 { a, m, n } => cat(&[gen_power(4, a), gen_power(6, m), gen_power(7, n)]),
            Sigma3Family::S1nS2 { n } => cat(&[gen_power(1, n), gen_power(2, 1)]),
            Sigma3Family::S1nS6m { n, m } => cat(&[gen_power(1, n), gen_power(6, m)]),
            Sigma3Family::S1nS5S6m { n, m } => cat(&[gen_power(1, n), gen_power(5, 1), gen_power(6, m)]),
            Sigma3Family::S1nS4S6m { n, m } => cat(&[gen_power(1, n), gen_power(4, 1), gen_power(6, m)]),
            Sigma3Family::X12Odd { k } => rep(&[("(1 2)", 2 * k + 1)]),
            Sigma3Family::X123nX132m { n, m } => rep(&[("(1 2 3)", n), ("(1 3 2)", m)]),
            Sigma3Family::X12nX23 { n } => rep(&[("(1 2)", n), ("(2 3)", 1)]),
            Sigma3Family::X12nX123X132 { n, m, a } => rep(&[("(1 2)", n), ("(1 2 3)", 3 * m), ("(1 3 2)", a)]),
            Sigma3Family::X12nX123X132Balanced { n, m } => {
                rep(&[("(1 2)", n), ("(1 2 3)", 3 * m - 1), ("(1 3 2)", 1)])
            }
        }
    }

    /// Label identifying the class up to simultaneous conjugation: exact forms
    /// swapped by conjugation are brought to one representative.
    pub fn conjugacy_label(&self) -> Sigma3Family {
        match *self {
            Sigma3Family::SIPower { n, .. } => Sigma3Family::SIPower { i: 1, n },
            Sigma3Family::S4S6S7 { a, m, n } => Sigma3Family::S4S6S7 { a, m: m.max(n), n: m.min(n) },
            other => other,
        }
    }
}

impl fmt::Display for Sigma3Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Sigma3Family::Unit => write!(f, "UNIT"),
            Sigma3Family::SIPower { i, n } => write!(f, "S_I_POWER(i={i}, n={n})"),
            Sigma3Family::S4S6S7 { a, m, n } => write!(f, "S4_S6_S7(a={a}, m={m}, n={n})"),
            Sigma3Family::S1nS2 { n } => write!(f, "S1N_S2(n={n})"),
            Sigma3Family::S1nS6m { n, m } => write!(f, "S1N_S6M(n={n}, m={m})"),
            Sigma3Family::S1nS5S6m { n, m } => write!(f, "S1N_S5_S6M(n={n}, m={m})"),
            Sigma3Family::S1nS4S6m { n, m } => write!(f, "S1N_S4_S6M(n={n}, m={m})"),
            Sigma3Family::X12Odd { k } => write!(f, "X12_ODD(k={k})"),
            Sigma3Family::X123nX132m { n, m } => write!(f, "X123N_X132M(n={n}, m={m})"),
            Sigma3Family::X12nX23 { n } => write!(f, "X12N_X23(n={n})"),
            Sigma3Family::X12nX123X132 { n, m, a } => write!(f, "X12N_X123_3M_X132_A(n={n}, m={m}, a={a})"),
            Sigma3Family::X12nX123X132Balanced { n, m } => write!(f, "X12N_X123_3M1_X132(n={n}, m={m})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sigma3NormalForm {
    pub family: Sigma3Family,
    /// True for exact identity-product elements; false for representatives up to conjugation.
    pub exact: bool,
    /// `g` such that conjugating the input by `g` gives a word equivalent to `representative`.
    #[serde(serialize_with = "ser_perm")]
    pub conjugator: Permutation,
    pub representative: Word,
}

fn ser_perm<S: serde::Serializer>(p: &Permutation, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(p)
}

/// Move-invariant counts of a degree-3 word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Counts {
    transpositions: usize,
    up: usize,
    down: usize,
}

fn counts(w: &Word) -> Counts {
    let up = p3("(1 2 3)");
    let mut c = Counts { transpositions: 0, up: 0, down: 0 };
    for p in w.letters() {
        if p.is_transposition() {
            c.transpositions += 1;
        } else if *p == up {
            c.up += 1;
        } else {
            c.down += 1;
        }
    }
    c
}

/// Some `g` with `g⁻¹ p g = q`.
fn conjugator_between(p: &Permutation, q: &Permutation) -> Permutation {
    Permutation::all(3)
        .into_iter()
        .find(|g| p.conjugate_by(g) == *q)
        .expect("conjugate permutations")
}

pub fn sigma3_normal_form(w: &Word) -> Result<Sigma3NormalForm, Sigma3Error> {
    if w.degree() != 3 {
        return Err(Sigma3Error::WrongDegree(w.degree()));
    }
    let id = Permutation::identity(3);
    if w.is_empty() {
        return Ok(Sigma3NormalForm { family: Sigma3Family::Unit, exact: true, conjugator: id, representative: Word::empty(3) });
    }
    let Counts { transpositions: t, up, down } = counts(w);
    let k = up + down;
    let order = w.generated_subgroup(6)?.order;
    let p = w.product();
    let family = if p.is_identity() {
        match order {
            2 => {
                let (a, b) = w.letters()[0].as_transposition().unwrap();
                let i = match (a, b) {
                    (1, 2) => 1,
                    (2, 3) => 2,
                    _ => 3,
                };
                Sigma3Family::SIPower { i, n: t / 2 }
            }
            3 => {
                let a = up % 3;
                Sigma3Family::S4S6S7 { a, m: (up - a) / 3, n: (down - a) / 3 }
            }
            _ => match k % 3 {
                _ if k == 0 => Sigma3Family::S1nS2 { n: t / 2 - 1 },
                0 => Sigma3Family::S1nS6m { n: t / 2, m: k / 3 },
                1 => Sigma3Family::S1nS5S6m { n: (t - 2) / 2, m: (k - 1) / 3 },
                _ => Sigma3Family::S1nS4S6m { n: t / 2, m: (k - 2) / 3 },
            },
        }
    } else {
        match order {
            2 => Sigma3Family::X12Odd { k: (t - 1) / 2 },
            3 => Sigma3Family::X123nX132m { n: up.max(down), m: up.min(down) },
            _ if k == 0 => Sigma3Family::X12nX23 { n: t - 1 },
            _ if t % 2 == 0 && k % 3 == 0 => Sigma3Family::X12nX123X132Balanced { n: t, m: k / 3 },
            _ => Sigma3Family::X12nX123X132 { n: t, m: k / 3, a: k % 3 },
        }
    };
    let representative = family.word();
    let exact = family.is_exact();
    let conjugator = if exact {
        id
    } else if let Sigma3Family::X123nX132m { .. } = family {
        if up > down { id } else { p3("(1 2)") }
    } else {
        conjugator_between(&p, &representative.product())
    };
    debug_assert_eq!(representative.len(), w.len());
    Ok(Sigma3NormalForm { family, exact, conjugator, representative })
}

/// Monodromy group filter for degree-3 counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Deg3Galois {
    Trivial,
    S2,
    A3,
    S3,
}

impl Deg3Galois {
    fn order(self) -> u64 {
        match self {
            Deg3Galois::Trivial => 1,
            Deg3Galois::S2 => 2,
            Deg3Galois::A3 => 3,
            Deg3Galois::S3 => 6,
        }
    }

    pub fn filter(self) -> GaloisFilter {
        match self {
            Deg3Galois::A3 => GaloisFilter::Tag(SubgroupTag::Alternating),
            Deg3Galois::S3 => GaloisFilter::Tag(SubgroupTag::FullSymmetric),
            other => GaloisFilter::Order(other.order()),
        }
    }
}

impl std::str::FromStr for Deg3Galois {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "trivial" => Ok(Deg3Galois::Trivial),
            "s2" | "S2" => Ok(Deg3Galois::S2),
            "a3" | "A3" | "alternating" => Ok(Deg3Galois::A3),
            "s3" | "S3" | "full" | "full_symmetric" => Ok(Deg3Galois::S3),
            _ => Err(format!("unknown degree-3 Galois group {s:?} (trivial|s2|a3|s3)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Disc,
    Line,
}

impl std::str::FromStr for Space {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "disc" | "disk" => Ok(Space::Disc),
            "line" => Ok(Space::Line),
            _ => Err(format!("unknown space {s:?} (disc|line)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deg3Count {
    /// Reported count: the oracle value when the cross-check ran, else the classification count.
    pub count: usize,
    pub classification: usize,
    pub oracle: Option<usize>,
    /// The published closed form, where one applies.
    pub formula: Option<usize>,
    pub formula_matches: Option<bool>,
    pub discrepancy: bool,
}

/// Every family label of length `b`.
fn labels_of_length(b: usize) -> Vec<Sigma3Family> {
    let mut out = Vec::new();
    if b == 0 {
        out.push(Sigma3Family::Unit);
        return out;
    }
    if b % 2 == 0 {
        for i in 1..=3 {
            out.push(Sigma3Family::SIPower { i, n: b / 2 });
        }
    }
    for a in 0..=2 {
        if 2 * a > b || (b - 2 * a) % 3 != 0 {
            continue;
        }
        let s = (b - 2 * a) / 3;
        for m in 0..=s {
            if a + s > 0 {
                out.push(Sigma3Family::S4S6S7 { a, m, n: s - m });
            }
        }
    }
    if b % 2 == 0 && b >= 4 {
        out.push(Sigma3Family::S1nS2 { n: b / 2 - 1 });
    }
    for n in 1..=b / 2 {
        for m in 1..=b / 3 {
            if 2 * n + 3 * m == b {
                out.push(Sigma3Family::S1nS6m { n, m });
            }
        }
    }
    for n in 0..=b / 2 {
        for m in 0..=b / 3 {
            if 2 * n + 3 + 3 * m == b {
                out.push(Sigma3Family::S1nS5S6m { n, m });
            }
            // n = 0 gives s4 s6^m, already listed among s4^a s6^m s7^n.
            if n >= 1 && 2 * n + 2 + 3 * m == b {
                out.push(Sigma3Family::S1nS4S6m { n, m });
            }
        }
    }
    if b % 2 == 1 {
        out.push(Sigma3Family::X12Odd { k: (b - 1) / 2 });
    }
    for m in 0..=b / 2 {
        let n = b - m;
        if n > m && (n - m) % 3 != 0 {
            out.push(Sigma3Family::X123nX132m { n, m });
        }
    }
    if b >= 2 {
        out.push(Sigma3Family::X12nX23 { n: b - 1 });
    }
    for n in 1..b {
        let k = b - n;
        let (m, a) = (k / 3, k % 3);
        if n % 2 == 0 && a == 0 {
            out.push(Sigma3Family::X12nX123X132Balanced { n, m });
        } else {
            out.push(Sigma3Family::X12nX123X132 { n, m, a });
        }
    }
    out
}

/// Counts conjugation classes of degree-3 words of length `b` with the given
/// global monodromy type (`None` = identity) and monodromy group. With
/// `oracle_limits`, the count is also computed by exhaustive enumeration and
/// the oracle value is reported.
pub fn count_components_deg3(
    b: usize,
    global: Option<&CycleType>,
    galois: Deg3Galois,
    space: Space,
    oracle_limits: Option<SearchLimits>,
) -> Result<Deg3Count, Sigma3Error> {
    let global = global.filter(|t| !t.is_identity());
    if let Some(t) = global {
        if space == Space::Line {
            return Err(Sigma3Error::Inconsistent("the line requires identity global monodromy".into()));
        }
        if t.support_size() > 3 {
            return Err(Sigma3Error::Inconsistent(format!("type {t} does not fit degree 3")));
        }
        let parts = t.parts();
        match galois {
            Deg3Galois::A3 if parts != [3] => {
                return Err(Sigma3Error::Inconsistent(format!("alternating monodromy cannot have global type {t}")));
            }
            Deg3Galois::S2 if parts != [2] => {
                return Err(Sigma3Error::Inconsistent(format!("monodromy S2 cannot have global type {t}")));
            }
            Deg3Galois::Trivial => {
                return Err(Sigma3Error::Inconsistent("trivial monodromy forces identity global monodromy".into()));
            }
            _ => {}
        }
    }
    if galois == Deg3Galois::Trivial && b > 0 {
        return Err(Sigma3Error::Inconsistent("trivial monodromy admits only the empty word".into()));
    }

    let mut classes = BTreeSet::new();
    for label in labels_of_length(b) {
        let w = label.word();
        let p = w.product();
        let matches_global = match global {
            None => p.is_identity(),
            Some(t) => p.cycle_type() == *t,
        };
        if matches_global && w.generated_subgroup(6)?.order == galois.order() {
            classes.insert(label.conjugacy_label());
        }
    }
    let classification = classes.len();

    let formula = match (galois, global) {
        (Deg3Galois::A3, None) => Some(b / 6 + 1),
        (Deg3Galois::A3, Some(_)) => Some(b.div_ceil(3)),
        _ => None,
    };

    let oracle_count = match oracle_limits {
        Some(limits) => {
            let mut c = Constraints::new(3, b).with_galois(galois.filter());
            c = match global {
                None => c.identity_product(),
                Some(t) => c.with_product(ProductConstraint::OfType(t.clone())),
            };
            Some(oracle::orbit_count_mod_conjugation(&c, limits)?.count)
        }
        None => None,
    };
    let count = oracle_count.unwrap_or(classification);
    let formula_matches = formula.map(|f| f == count);
    let discrepancy = oracle_count.is_some_and(|o| o != classification) || formula_matches == Some(false);
    Ok(Deg3Count { count, classification, oracle: oracle_count, formula, formula_matches, discrepancy })
}
