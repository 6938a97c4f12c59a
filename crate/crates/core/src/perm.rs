//! Permutations of `{1..d}` acting on the right.
//!
//! Products compose left to right: `p.then(&q)` (also `&p * &q`) sends a
//! point `i` to `q(p(i))`. With this convention a cycle factors into
//! transpositions as `(i_1 … i_k) = (i_k i_{k-1}) … (i_2 i_1)`.
//!
//! Points are 1-based in every public API and in the text grammar; the
//! image table is stored 0-based.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("image table is not a bijection of 1..={degree}")]
    NotABijection { degree: usize },
    #[error("degree {0} is not supported (must be 1..=255)")]
    UnsupportedDegree(usize),
    #[error("cycle type {ty} does not fit in degree {degree}")]
    TypeTooLarge { ty: CycleType, degree: usize },
    #[error("invalid cycle type: {0}")]
    InvalidCycleType(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

fn parse_err(column: usize, message: impl Into<String>) -> PermError {
    PermError::Parse { column: column + 1, message: message.into() }
}

/// The cycle type `[k_1, …, k_m]` of a permutation: lengths of the
/// nontrivial cycles, non-increasing. The identity has the empty type.
///
/// The derived ordering is lexicographic on the parts, which coincides with
/// comparing positionwise with missing parts read as 0 (every part is ≥ 2).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PermError> {
        if let Some(bad) = parts.iter().find(|&&k| k < 2) {
            return Err(PermError::InvalidCycleType(format!("part {bad} is smaller than 2")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType(parts))
    }

    pub fn identity() -> Self {
        CycleType(Vec::new())
    }

    pub fn transposition() -> Self {
        CycleType(vec![2])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of points moved by a permutation of this type.
    pub fn support_size(&self) -> usize {
        self.0.iter().sum()
    }

    /// `Σ k_i − m`, the minimal number of transpositions with a product of this type.
    pub fn transposition_length(&self) -> usize {
        self.0.iter().map(|k| k - 1).sum()
    }

    /// `(1 … k_1)(k_1+1 … k_1+k_2)…` in degree `degree`.
    pub fn canonical_representative(&self, degree: usize) -> Result<Permutation, PermError> {
        if self.support_size() > degree {
            return Err(PermError::TypeTooLarge { ty: self.clone(), degree });
        }
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut start = 0usize;
        for &k in &self.0 {
            for j in 0..k {
                images[start + j] = (start + (j + 1) % k) as u8;
            }
            start += k;
        }
        Permutation::from_zero_based(images)
    }

    /// Every cycle type realisable in degree `degree`, identity included,
    /// in increasing order.
    pub fn all(degree: usize) -> Vec<CycleType> {
        fn rec(remaining: usize, max_part: usize, acc: &mut Vec<usize>, out: &mut Vec<CycleType>) {
            out.push(CycleType(acc.clone()));
            for k in (2..=max_part.min(remaining)).rev() {
                acc.push(k);
                rec(remaining - k, k, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(degree, degree, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Parses `[3,2]`, `[3, 2]` or `[]`.
    pub fn parse(text: &str) -> Result<Self, PermError> {
        let trimmed = text.trim();
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| parse_err(0, format!("cycle type must look like [k1,k2,...], got {trimmed:?}")))?;
        let mut parts = Vec::new();
        for piece in inner.split(|c: char| c == ',' || c.is_whitespace()) {
            if piece.is_empty() {
                continue;
            }
            let k: usize = piece
                .parse()
                .map_err(|_| parse_err(0, format!("bad cycle length {piece:?}")))?;
            parts.push(k);
        }
        CycleType::new(parts)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "]")
    }
}

/// A permutation of `{1..d}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!((1..=255).contains(&degree), "degree must be in 1..=255");
        Permutation { images: (0..degree as u8).collect() }
    }

    /// Builds from a 1-based image table: `images[i - 1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        let mut zero = Vec::with_capacity(degree);
        for &p in images {
            if p == 0 || p > degree {
                return Err(PermError::PointOutOfRange { point: p, degree });
            }
            zero.push((p - 1) as u8);
        }
        Self::from_zero_based(zero)
    }

    pub(crate) fn from_zero_based(images: Vec<u8>) -> Result<Self, PermError> {
        let degree = images.len();
        if degree == 0 || degree > 255 {
            return Err(PermError::UnsupportedDegree(degree));
        }
        let mut seen = vec![false; degree];
        for &p in &images {
            let p = p as usize;
            if p >= degree || seen[p] {
                return Err(PermError::NotABijection { degree });
            }
            seen[p] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from disjoint cycles given with 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        if degree == 0 || degree > 255 {
            return Err(PermError::UnsupportedDegree(degree));
        }
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if used[p - 1] {
                    return Err(PermError::NotABijection { degree });
                }
                used[p - 1] = true;
            }
            for (j, &p) in cycle.iter().enumerate() {
                images[p - 1] = (cycle[(j + 1) % cycle.len()] - 1) as u8;
            }
        }
        Ok(Permutation { images })
    }

    /// The transposition `(i j)`, 1-based.
    pub fn transposition(degree: usize, i: usize, j: usize) -> Result<Self, PermError> {
        if i == j {
            return Err(PermError::NotABijection { degree });
        }
        Self::from_cycles(degree, &[vec![i, j]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub(crate) fn image0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// 1-based image table.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&p| p as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// Left-to-right product: first `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in composition");
        Permutation { images: self.images.iter().map(|&p| other.images[p as usize]).collect() }
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.then(other))
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p as usize] = i as u8;
        }
        Permutation { images }
    }

    /// `g⁻¹ · self · g`: the permutation obtained by relabelling every point `i` as `g(i)`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        assert_eq!(self.degree(), g.degree(), "degree mismatch in conjugation");
        let mut images = vec![0u8; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[p as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            exp >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its smallest point, listed by smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Nontrivial cycles in decreasing length, ties broken by smallest point.
    /// This is the cycle order used by [`Permutation::cmp`] and by regeneration.
    pub fn ordered_cycles(&self) -> Vec<Vec<usize>> {
        let mut cycles = self.cycles();
        cycles.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        cycles
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn transposition_length(&self) -> usize {
        self.cycle_type().transposition_length()
    }

    /// The two moved points `(i, j)` with `i < j`, if this is a transposition.
    pub fn as_transposition(&self) -> Option<(usize, usize)> {
        let moved: Vec<usize> = (0..self.degree()).filter(|&i| self.images[i] as usize != i).collect();
        match moved.as_slice() {
            &[i, j] => Some((i + 1, j + 1)),
            _ => None,
        }
    }

    pub fn is_transposition(&self) -> bool {
        self.as_transposition().is_some()
    }

    pub fn is_even(&self) -> bool {
        self.transposition_length() % 2 == 0
    }

    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        self.cycles().iter().fold(1u64, |acc, c| {
            let k = c.len() as u64;
            acc / gcd(acc, k) * k
        })
    }

    /// Sort key realising the total order: the cycle type (zero-terminated)
    /// followed by the ordered cycles written from their smallest point.
    pub fn order_key(&self) -> Vec<u8> {
        let ty = self.cycle_type();
        let mut key: Vec<u8> = ty.parts().iter().map(|&k| k as u8).collect();
        key.push(0);
        for cycle in self.ordered_cycles() {
            key.extend(cycle.iter().map(|&p| p as u8));
        }
        key
    }

    /// Degree-checked comparison under the type order extended cycle by cycle.
    pub fn compare(&self, other: &Permutation) -> Result<Ordering, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.cmp(other))
    }

    /// Parses the cycle grammar `(1 2 3)(4 5)`; `()` (or an empty string) is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self, PermError> {
        let cycles = parse_cycles(text)?;
        Self::from_cycles(degree, &cycles)
    }

    /// Every permutation of degree `degree` in increasing order.
    pub fn all(degree: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<u8> = (0..degree as u8).collect();
        heap_permutations(degree, &mut current, &mut out);
        out.sort();
        out
    }
}

fn heap_permutations(k: usize, a: &mut Vec<u8>, out: &mut Vec<Permutation>) {
    if k <= 1 {
        out.push(Permutation { images: a.clone() });
        return;
    }
    heap_permutations(k - 1, a, out);
    for i in 0..k - 1 {
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
        heap_permutations(k - 1, a, out);
    }
}

/// Parses disjoint cycles `(1 2 3)(4 5)` into 1-based point lists.
/// Commas are accepted as separators. Repeated points are rejected.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, PermError> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut cycles = Vec::new();
    let mut used = std::collections::BTreeSet::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && (bytes[*pos] as char).is_whitespace() {
            *pos += 1;
        }
    };
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] != b'(' {
            return Err(parse_err(pos, format!("expected '(' but found {:?}", bytes[pos] as char)));
        }
        pos += 1;
        let mut cycle = Vec::new();
        loop {
            while pos < bytes.len() && ((bytes[pos] as char).is_whitespace() || bytes[pos] == b',') {
                pos += 1;
            }
            if pos >= bytes.len() {
                return Err(parse_err(pos, "unterminated cycle, expected ')'"));
            }
            if bytes[pos] == b')' {
                pos += 1;
                break;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(parse_err(pos, format!("expected a point number, found {:?}", bytes[pos] as char)));
            }
            let point: usize = text[start..pos]
                .parse()
                .map_err(|_| parse_err(start, "point number out of range"))?;
            if point == 0 {
                return Err(parse_err(start, "points are 1-based"));
            }
            if !used.insert(point) {
                return Err(parse_err(start, format!("point {point} repeated")));
            }
            cycle.push(point);
        }
        match cycle.len() {
            0 => {}
            1 => {}
            _ => cycles.push(cycle),
        }
    }
    Ok(cycles)
}

impl Ord for Permutation {
    /// Degree first, then the cycle type, then the ordered cycles compared
    /// lexicographically as sequences written from their smallest point.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.order_key().cmp(&other.order_key()))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, s: &str) -> Permutation {
        Permutation::parse(s, d).unwrap()
    }

    #[test]
    fn compose_left_to_right() {
        assert_eq!(p(3, "(1 2)").then(&p(3, "(2 3)")), p(3, "(1 3 2)"));
        assert_eq!(p(3, "(1 2 3)").then(&p(3, "(1 3 2)")), Permutation::identity(3));
        let q = p(4, "(1 4)(2 3)");
        assert_eq!(q.then(&Permutation::identity(4)), q);
        assert!(matches!(p(3, "(1 2)").compose(&p(4, "(1 2)")), Err(PermError::DegreeMismatch { .. })));
    }

    #[test]
    fn cycle_factorisation_convention() {
        // (i_1 … i_k) = (i_k i_{k-1}) … (i_2 i_1)
        let c = p(5, "(2 5 3 4)");
        let prod = p(5, "(4 3)").then(&p(5, "(3 5)")).then(&p(5, "(5 2)"));
        assert_eq!(prod, c);
    }

    #[test]
    fn cycle_types() {
        assert_eq!(p(5, "(1 2 3)(4 5)").cycle_type().parts(), &[3, 2]);
        assert!(Permutation::identity(4).cycle_type().is_identity());
        assert_eq!(p(2, "(1 2)").cycle_type(), CycleType::transposition());
    }

    #[test]
    fn transposition_lengths() {
        assert_eq!(CycleType::new(vec![3, 2]).unwrap().transposition_length(), 3);
        assert_eq!(CycleType::identity().transposition_length(), 0);
        for d in 2..8 {
            assert_eq!(CycleType::new(vec![d]).unwrap().transposition_length(), d - 1);
        }
    }

    #[test]
    fn canonical_representatives() {
        let t = CycleType::new(vec![2, 3]).unwrap();
        assert_eq!(t.canonical_representative(5).unwrap(), p(5, "(1 2 3)(4 5)"));
        assert_eq!(CycleType::identity().canonical_representative(3).unwrap(), Permutation::identity(3));
        assert_eq!(CycleType::transposition().canonical_representative(4).unwrap(), p(4, "(1 2)"));
        assert!(matches!(
            CycleType::new(vec![3, 2]).unwrap().canonical_representative(4),
            Err(PermError::TypeTooLarge { .. })
        ));
    }

    #[test]
    fn type_order() {
        let t3 = CycleType::new(vec![3]).unwrap();
        let t22 = CycleType::new(vec![2, 2]).unwrap();
        assert_eq!(t3.cmp(&t22), Ordering::Greater);
        assert_eq!(CycleType::transposition().cmp(&CycleType::transposition()), Ordering::Equal);
        assert!(CycleType::new(vec![3, 2]).unwrap() > t3);
        assert!(CycleType::identity() < CycleType::transposition());
    }

    #[test]
    fn transpositions_fully_ordered() {
        let all: Vec<Permutation> = Permutation::all(3).into_iter().filter(|q| q.is_transposition()).collect();
        assert_eq!(all, vec![p(3, "(1 2)"), p(3, "(1 3)"), p(3, "(2 3)")]);
        assert_eq!(p(3, "(1 3)").compare(&p(3, "(1 2)")).unwrap(), Ordering::Greater);
    }

    #[test]
    fn parse_and_display() {
        let q = p(6, "(4 5)(1 2 3)");
        assert_eq!(q.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p(3, "()").to_string(), "()");
        assert_eq!(p(3, " ( 1 , 2 ) ").to_string(), "(1 2)");
        let err = Permutation::parse("(1 2)(2 3)", 3).unwrap_err();
        assert!(matches!(err, PermError::Parse { column: 7, .. }), "{err}");
        assert!(Permutation::parse("(1 4)", 3).is_err());
        assert!(Permutation::parse("(1 x)", 3).is_err());
    }

    #[test]
    fn all_permutations() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(CycleType::all(4).len(), 5);
        assert_eq!(CycleType::all(6).len(), 11);
    }

    #[test]
    fn conjugation_relabels_points() {
        assert_eq!(p(3, "(1 2 3)").conjugate_by(&p(3, "(1 2)")), p(3, "(1 3 2)"));
        let x = p(5, "(1 2 5)(3 4)");
        let g = p(5, "(1 3 5 2)");
        assert_eq!(x.conjugate_by(&g), g.inverse().then(&x).then(&g));
    }
}
