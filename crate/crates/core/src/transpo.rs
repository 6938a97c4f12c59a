//! Transposition calculus: Hurwitz elements, regeneration, splitting a
//! transposition word into a minimal part and a product of squares, the
//! normal form of identity-product transposition words, and the stable
//! canonical form of words with many transposition letters.

use serde::Serialize;
use thiserror::Error;

use crate::perm::Permutation;
use crate::word::{UnionFind, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranspoError {
    #[error("degree {0} is too small (need d >= 2)")]
    DegreeTooSmall(usize),
    #[error("letter {position} ({letter}) is not a transposition")]
    NotTransposition { position: usize, letter: String },
    #[error("product is {0}, expected the identity")]
    NonIdentityProduct(String),
    #[error("condition (i) fails: generated subgroup has order {order}, not the full symmetric group of order {full}")]
    SubgroupNotFull { order: u64, full: u64 },
    #[error("condition (ii) fails: product is {0}, not the identity")]
    ProductNotIdentity(String),
    #[error("only {k} transposition letters; at least 3(d-1) = {needed} are required")]
    TooFewTranspositions { k: usize, needed: usize },
    #[error("parity violation: k - l_t(sigma) = {0} is odd")]
    Parity(i64),
    #[error(transparent)]
    Word(#[from] WordError),
}

fn tr(d: usize, i: usize, j: usize) -> Permutation {
    Permutation::transposition(d, i, j).expect("distinct points in range")
}

/// `h_{d,g}`: `g + 1` copies of `(1 2)²`, then `(2 3)², …, (d−1 d)²`.
pub fn hurwitz_element(d: usize, g: usize) -> Result<Word, TranspoError> {
    if d < 2 {
        return Err(TranspoError::DegreeTooSmall(d));
    }
    let mut letters = Vec::with_capacity(2 * (g + d - 1));
    for _ in 0..2 * (g + 1) {
        letters.push(tr(d, 1, 2));
    }
    for i in 2..d {
        letters.push(tr(d, i, i + 1));
        letters.push(tr(d, i, i + 1));
    }
    Ok(Word::from_letters_unchecked(d, letters))
}

/// Minimal transposition factorization of `p`: each cycle `(i_1 … i_k)` written
/// from its smallest point becomes `(i_k i_{k−1}) … (i_2 i_1)`; cycles are emitted
/// in decreasing length, ties by smallest point.
pub fn regenerate(p: &Permutation) -> Word {
    let d = p.degree();
    let mut letters = Vec::with_capacity(p.transposition_length());
    for cycle in p.ordered_cycles() {
        for j in (1..cycle.len()).rev() {
            letters.push(tr(d, cycle[j], cycle[j - 1]));
        }
    }
    Word::from_letters_unchecked(d, letters)
}

/// Applies [`regenerate`] letter by letter.
pub fn regenerate_word(w: &Word) -> Word {
    let letters = w.letters().iter().flat_map(|p| regenerate(p).letters().to_vec()).collect();
    Word::from_letters_unchecked(w.degree(), letters)
}

fn require_transpositions(w: &Word) -> Result<(), TranspoError> {
    for (k, p) in w.letters().iter().enumerate() {
        if !p.is_transposition() {
            return Err(TranspoError::NotTransposition { position: k + 1, letter: p.to_string() });
        }
    }
    Ok(())
}

/// Per connected component `M = {m_1 < … < m_j}` of the transposition graph, the
/// element `s_{(m_1 m_2)}^k · s_{(m_2 m_3)} ⋯ s_{(m_{j−1} m_j)}` with `s_{(a b)} = (a b)²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IdentityTranspositionNormalForm {
    pub degree: usize,
    /// `(M, k)` sorted by smallest element of `M`.
    pub components: Vec<(Vec<usize>, usize)>,
}

impl IdentityTranspositionNormalForm {
    pub fn to_word(&self) -> Word {
        let d = self.degree;
        let mut letters = Vec::new();
        for (m, k) in &self.components {
            for _ in 0..2 * k {
                letters.push(tr(d, m[0], m[1]));
            }
            for pair in m[1..].windows(2) {
                letters.push(tr(d, pair[0], pair[1]));
                letters.push(tr(d, pair[0], pair[1]));
            }
        }
        Word::from_letters_unchecked(d, letters)
    }

    pub fn len(&self) -> usize {
        self.components.iter().map(|(m, k)| 2 * (k + m.len() - 2)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl std::fmt::Display for IdentityTranspositionNormalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.components.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(m, k)| {
                let pts: Vec<String> = m.iter().map(|p| p.to_string()).collect();
                format!("{{{}}}^{}", pts.join(","), k)
            })
            .collect();
        write!(f, "{}", parts.join(" · "))
    }
}

pub fn reduce_identity_transpositions(w: &Word) -> Result<IdentityTranspositionNormalForm, TranspoError> {
    require_transpositions(w)?;
    let p = w.product();
    if !p.is_identity() {
        return Err(TranspoError::NonIdentityProduct(p.to_string()));
    }
    let d = w.degree();
    let mut uf = UnionFind::new(d);
    let edges: Vec<(usize, usize)> = w.letters().iter().map(|t| t.as_transposition().unwrap()).collect();
    for &(i, j) in &edges {
        uf.union(i - 1, j - 1);
    }
    let mut components = Vec::new();
    for class in uf.classes() {
        if class.len() < 2 {
            continue;
        }
        let root = uf.find(class[0]);
        let letters = edges.iter().filter(|&&(i, _)| uf.find(i - 1) == root).count();
        let j = class.len();
        debug_assert!(letters % 2 == 0 && letters >= 2 * (j - 1));
        components.push((class.into_iter().map(|i| i + 1).collect(), letters / 2 + 2 - j));
    }
    Ok(IdentityTranspositionNormalForm { degree: d, components })
}

// Move primitives on a letter vector; `i` is the 0-based left position.
fn forward(ls: &mut [Permutation], i: usize) {
    let (a, b) = (ls[i].clone(), ls[i + 1].clone());
    ls[i] = b.conjugate_by(&a.inverse());
    ls[i + 1] = a;
}

fn inverse(ls: &mut [Permutation], i: usize) {
    let (a, b) = (ls[i].clone(), ls[i + 1].clone());
    ls[i] = b.clone();
    ls[i + 1] = a.conjugate_by(&b);
}

fn product_of(d: usize, ls: &[Permutation]) -> Permutation {
    ls.iter().fold(Permutation::identity(d), |acc, p| acc.then(p))
}

/// Rewrites a minimal transposition word by moves so its last letter is `(s c(s))`,
/// where `c` is its product and `c(s) ≠ s`.
fn make_last(d: usize, ls: &mut [Permutation], s: usize) {
    let n = ls.len();
    debug_assert!(n > 0);
    let z = product_of(d, &ls[..n - 1]).apply(s);
    if z == s {
        return;
    }
    make_last(d, &mut ls[..n - 1], s);
    let e = ls[n - 1].as_transposition().unwrap();
    if e.0 == z || e.1 == z {
        inverse(ls, n - 2);
    } else {
        forward(ls, n - 2);
    }
}

/// Rewrites a minimal transposition word so its last letter is `(a b)`,
/// for `a ≠ b` in one cycle of its product.
fn make_last_pair(d: usize, ls: &mut [Permutation], a: usize, b: usize) {
    let c = product_of(d, ls);
    if c.apply(a) == b {
        make_last(d, ls, a);
        return;
    }
    if c.apply(b) == a {
        make_last(d, ls, b);
        return;
    }
    make_last(d, ls, a);
    let n = ls.len();
    let a2 = c.apply(a);
    make_last_pair(d, &mut ls[..n - 1], a2, b);
    inverse(ls, n - 2);
}

/// Moves a minimal transposition word into exactly `regenerate(product)`.
fn canonicalize_minimal(d: usize, ls: &mut [Permutation]) {
    let target = regenerate(&product_of(d, ls));
    debug_assert_eq!(target.len(), ls.len());
    let mut end = ls.len();
    while end > 0 {
        let (x, y) = target.letters()[end - 1].as_transposition().unwrap();
        let c = product_of(d, &ls[..end]);
        let s = if c.apply(x) == y { x } else { y };
        make_last(d, &mut ls[..end], s);
        debug_assert_eq!(ls[end - 1], target.letters()[end - 1]);
        end -= 1;
    }
}

/// Splits a transposition word `w` into `(tilde, bar)` with `tilde = regenerate(product(w))`,
/// `bar` a product of squares, and `tilde ++ bar` Hurwitz-equivalent to `w`.
pub fn split_tilde_bar(w: &Word) -> Result<(Word, Word), TranspoError> {
    require_transpositions(w)?;
    let d = w.degree();
    let mut minimal: Vec<Permutation> = Vec::new();
    let mut bar: Vec<Permutation> = Vec::new();
    for t in w.letters() {
        let (a, b) = t.as_transposition().unwrap();
        let c = product_of(d, &minimal);
        let same_cycle = {
            let mut x = c.apply(a);
            let mut found = x == b;
            while x != a && !found {
                x = c.apply(x);
                found = x == b;
            }
            found
        };
        if !same_cycle {
            minimal.push(t.clone());
            continue;
        }
        // minimal · t ≡ minimal' · t · t; the square then slides past everything
        // to its right without changing those letters.
        make_last_pair(d, &mut minimal, a, b);
        let last = minimal.pop().unwrap();
        debug_assert_eq!(&last, t);
        bar.push(last.clone());
        bar.push(last);
    }
    canonicalize_minimal(d, &mut minimal);
    debug_assert_eq!((w.len() - minimal.len()) % 2, 0);
    Ok((Word::from_letters_unchecked(d, minimal), Word::from_letters_unchecked(d, bar)))
}

/// Genus `g = ln(w)/2 − d + 1` of a transposition word with identity product and full
/// generated subgroup; such a word is Hurwitz-equivalent to `h_{d,g}`.
pub fn clebsch_hurwitz(w: &Word) -> Result<usize, TranspoError> {
    require_transpositions(w)?;
    let d = w.degree();
    let full: u64 = (1..=d as u64).product();
    let info = w.generated_subgroup(full)?;
    if info.order != full || d < 2 {
        return Err(TranspoError::SubgroupNotFull { order: info.order, full });
    }
    let p = w.product();
    if !p.is_identity() {
        return Err(TranspoError::ProductNotIdentity(p.to_string()));
    }
    Ok(w.len() / 2 + 1 - d)
}

/// `x_{σ_{1,0}} ⋯ x_{σ_{m,0}} · r(x_σ) · h_{d,g}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableCanonicalForm {
    pub degree: usize,
    #[serde(serialize_with = "ser_perms")]
    pub cycle_parts: Vec<Permutation>,
    #[serde(serialize_with = "ser_perm")]
    pub residual: Permutation,
    pub genus: usize,
}

fn ser_perms<S: serde::Serializer>(ps: &[Permutation], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ps.iter().map(|p| p.to_string()))
}

fn ser_perm<S: serde::Serializer>(p: &Permutation, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(p)
}

impl StableCanonicalForm {
    pub fn reconstruct(&self) -> Word {
        let d = self.degree;
        let mut letters = self.cycle_parts.clone();
        letters.extend(regenerate(&self.residual).letters().iter().cloned());
        letters.extend(hurwitz_element(d, self.genus).expect("degree >= 2").letters().iter().cloned());
        Word::from_letters_unchecked(d, letters)
    }
}

pub fn stable_canonical_form(w: &Word) -> Result<StableCanonicalForm, TranspoError> {
    let d = w.degree();
    if d < 2 {
        return Err(TranspoError::DegreeTooSmall(d));
    }
    let k = w.letters().iter().filter(|p| p.is_transposition()).count();
    let needed = 3 * (d - 1);
    if k < needed {
        return Err(TranspoError::TooFewTranspositions { k, needed });
    }
    let full: u64 = (1..=d as u64).product();
    let info = w.generated_subgroup(full)?;
    if info.order != full {
        return Err(TranspoError::SubgroupNotFull { order: info.order, full });
    }
    let cycle_parts: Vec<Permutation> = w
        .letters()
        .iter()
        .filter(|p| !p.is_transposition())
        .map(|p| p.cycle_type().canonical_representative(d).expect("type of a degree-d letter fits"))
        .collect();
    let head = product_of(d, &cycle_parts);
    let residual = head.inverse().then(&w.product());
    let diff = k as i64 - residual.transposition_length() as i64;
    if diff % 2 != 0 {
        return Err(TranspoError::Parity(diff));
    }
    let genus = (diff / 2 + 1 - d as i64) as usize;
    Ok(StableCanonicalForm { degree: d, cycle_parts, residual, genus })
}

/// Both sides of the named rewrite rules among transposition words, instantiated
/// on an ordered list of distinct points. Each pair is Hurwitz-equivalent.
pub mod rewrites {
    use super::tr;
    use crate::word::Word;

    fn word(d: usize, pairs: &[(usize, usize)]) -> Word {
        Word::new(d, pairs.iter().map(|&(a, b)| tr(d, a, b)).collect()).expect("valid letters")
    }

    fn path(j: &[usize]) -> Vec<(usize, usize)> {
        j.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Inserting a pendant edge `(j_i j_{k+1})` into the path `j_1 … j_k`.
    /// `j` has `k + 1` points, `1 ≤ i < k`.
    pub fn pendant_insertion(d: usize, j: &[usize], i: usize) -> (Word, Word) {
        let k = j.len() - 1;
        let mut lhs = path(&j[..k]);
        lhs.push((j[i - 1], j[k]));
        let mut rhs = path(&j[..i]);
        rhs.push((j[i - 1], j[k]));
        rhs.push((j[k], j[i]));
        rhs.extend(path(&j[i..k]));
        (word(d, &lhs), word(d, &rhs))
    }

    /// A chord `(j_i j_k)` closing the path `j_1 … j_k` becomes a square. `1 ≤ i < k`.
    pub fn chord_to_square(d: usize, j: &[usize], i: usize) -> (Word, Word) {
        let k = j.len();
        let mut lhs = path(j);
        lhs.push((j[i - 1], j[k - 1]));
        let mut rhs = path(&j[..i]);
        rhs.extend(path(&j[i..]));
        rhs.push((j[i - 1], j[i]));
        rhs.push((j[i - 1], j[i]));
        (word(d, &lhs), word(d, &rhs))
    }

    /// Squares slide along and across edges of a triangle `{a, b, c}`:
    /// every equality among `s_ab·x_bc`, `x_bc·s_ac`, `s_ac·x_bc`, `x_bc·s_ab`
    /// and among `s_ab·s_bc`, `s_ab·s_ac`, `s_bc·s_ac`.
    pub fn square_slides(d: usize, a: usize, b: usize, c: usize) -> Vec<(Word, Word)> {
        let chain = [
            word(d, &[(a, b), (a, b), (b, c)]),
            word(d, &[(b, c), (a, c), (a, c)]),
            word(d, &[(a, c), (a, c), (b, c)]),
            word(d, &[(b, c), (a, b), (a, b)]),
        ];
        let squares = [
            word(d, &[(a, b), (a, b), (b, c), (b, c)]),
            word(d, &[(a, b), (a, b), (a, c), (a, c)]),
            word(d, &[(b, c), (b, c), (a, c), (a, c)]),
        ];
        let mut out = Vec::new();
        for k in 1..chain.len() {
            out.push((chain[0].clone(), chain[k].clone()));
        }
        for k in 1..squares.len() {
            out.push((squares[0].clone(), squares[k].clone()));
        }
        out
    }

    /// Disjoint squares commute.
    pub fn disjoint_squares(d: usize, a: usize, b: usize, c: usize, e: usize) -> (Word, Word) {
        (word(d, &[(a, b), (a, b), (c, e), (c, e)]), word(d, &[(c, e), (c, e), (a, b), (a, b)]))
    }

    /// In front of a path, a square on its first edge may be replaced by a square on
    /// any pair of its points. `1 ≤ i < l ≤ k`.
    pub fn square_exchange(d: usize, j: &[usize], i: usize, l: usize) -> (Word, Word) {
        let mut lhs = vec![(j[0], j[1]), (j[0], j[1])];
        lhs.extend(path(j));
        let mut rhs = vec![(j[i - 1], j[l - 1]), (j[i - 1], j[l - 1])];
        rhs.extend(path(j));
        (word(d, &lhs), word(d, &rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{hurwitz_equivalent, SearchLimits};

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn p(d: usize, s: &str) -> Permutation {
        Permutation::parse(s, d).unwrap()
    }

    fn equiv(a: &Word, b: &Word) -> bool {
        hurwitz_equivalent(a, b, SearchLimits::default()).unwrap()
    }

    #[test]
    fn hurwitz_elements() {
        assert_eq!(hurwitz_element(3, 0).unwrap(), w("3: (1 2) | (1 2) | (2 3) | (2 3)"));
        assert_eq!(hurwitz_element(2, 1).unwrap(), w("2: (1 2) | (1 2) | (1 2) | (1 2)"));
        assert_eq!(hurwitz_element(4, 2).unwrap().len(), 10);
        assert!(hurwitz_element(1, 0).is_err());
        assert!(hurwitz_element(5, 3).unwrap().product().is_identity());
    }

    #[test]
    fn regeneration() {
        assert_eq!(regenerate(&p(3, "(1 2 3)")), w("3: (2 3) | (1 2)"));
        assert!(regenerate(&Permutation::identity(4)).is_empty());
        let x = p(5, "(1 2)(3 4 5)");
        assert_eq!(regenerate(&x), w("5: (4 5) | (3 4) | (1 2)"));
        assert_eq!(regenerate(&x).product(), x);
        assert!(regenerate(&p(6, "(1 5 3 6)")).transposition_graph().unwrap().is_tree());
    }

    #[test]
    fn identity_normal_forms() {
        let nf = reduce_identity_transpositions(&w("3: (1 2) | (1 2) | (1 3) | (1 3)")).unwrap();
        assert_eq!(nf.components, vec![(vec![1, 2, 3], 1)]);
        assert_eq!(nf.to_word(), hurwitz_element(3, 0).unwrap());
        let nf = reduce_identity_transpositions(&w("4: (1 2) | (1 2) | (3 4) | (3 4)")).unwrap();
        assert_eq!(nf.components, vec![(vec![1, 2], 1), (vec![3, 4], 1)]);
        let nf = reduce_identity_transpositions(&hurwitz_element(4, 1).unwrap()).unwrap();
        assert_eq!(nf.components, vec![(vec![1, 2, 3, 4], 2)]);
        assert_eq!(nf.len(), 8);
        assert!(reduce_identity_transpositions(&w("3: (1 2) | (2 3)")).is_err());
        assert!(reduce_identity_transpositions(&w("3: (1 2 3) | (1 3 2)")).is_err());
    }

    #[test]
    fn splits() {
        let (t, b) = split_tilde_bar(&w("2: (1 2) | (1 2) | (1 2)")).unwrap();
        assert_eq!((t, b), (w("2: (1 2)"), w("2: (1 2) | (1 2)")));
        let x = w("3: (1 2) | (2 3)");
        let (t, b) = split_tilde_bar(&x).unwrap();
        assert!(b.is_empty());
        assert_eq!(t, regenerate(&x.product()));
        assert!(equiv(&t, &x));
        let x = w("3: (1 2) | (2 3) | (1 3)");
        let (t, b) = split_tilde_bar(&x).unwrap();
        assert_eq!((t.len(), b.len()), (1, 2));
        assert!(b.product().is_identity());
        assert!(equiv(&t.concat(&b).unwrap(), &x));
    }

    #[test]
    fn splits_longer_words() {
        let x = w("5: (1 2) | (3 4) | (2 3) | (1 4) | (4 5) | (2 5) | (1 3) | (1 2)");
        let (t, b) = split_tilde_bar(&x).unwrap();
        assert_eq!(t, regenerate(&x.product()));
        assert!(equiv(&t.concat(&b).unwrap(), &x));
    }

    #[test]
    fn clebsch_hurwitz_genus() {
        assert_eq!(clebsch_hurwitz(&hurwitz_element(3, 0).unwrap()).unwrap(), 0);
        assert_eq!(clebsch_hurwitz(&w("2: (1 2) | (1 2)")).unwrap(), 0);
        assert!(matches!(clebsch_hurwitz(&w("3: (1 2) | (1 2)")), Err(TranspoError::SubgroupNotFull { .. })));
        assert!(matches!(clebsch_hurwitz(&w("3: (1 2) | (2 3)")), Err(TranspoError::ProductNotIdentity(_))));
    }

    #[test]
    fn stable_forms() {
        let h = hurwitz_element(3, 0).unwrap();
        let x = w("3: (1 3 2) | (2 3) | (1 2)").concat(&h).unwrap().concat(&h).unwrap();
        let f = stable_canonical_form(&x).unwrap();
        assert_eq!(f.cycle_parts, vec![p(3, "(1 2 3)")]);
        assert_eq!(f.residual, p(3, "(1 3 2)"));
        assert_eq!(f.genus, 2);
        let f = stable_canonical_form(&hurwitz_element(3, 2).unwrap()).unwrap();
        assert!(f.cycle_parts.is_empty() && f.residual.is_identity());
        assert_eq!(f.genus, 2);
        let five = w("3: (1 2) | (1 2) | (2 3) | (2 3) | (1 3)");
        assert!(matches!(stable_canonical_form(&five), Err(TranspoError::TooFewTranspositions { k: 5, needed: 6 })));
    }

    #[test]
    fn rewrite_rules_hold() {
        for i in 1..3 {
            let (l, r) = rewrites::pendant_insertion(5, &[2, 4, 1, 5], i);
            assert_eq!(l.product(), r.product());
            assert!(equiv(&l, &r), "pendant {i}");
        }
        for i in 1..4 {
            let (l, r) = rewrites::chord_to_square(5, &[3, 1, 5, 2], i);
            assert!(equiv(&l, &r), "chord {i}");
        }
        for (l, r) in rewrites::square_slides(4, 2, 4, 1) {
            assert!(equiv(&l, &r));
        }
        let (l, r) = rewrites::disjoint_squares(4, 1, 3, 2, 4);
        assert!(equiv(&l, &r));
        let (l, r) = rewrites::square_exchange(4, &[4, 2, 3, 1], 2, 4);
        assert!(equiv(&l, &r));
    }
}
