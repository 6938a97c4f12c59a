//! Component counts for Hurwitz spaces of degree-`d` coverings, and Galois
//! coverings through the right-regular (Cayley) embedding of a finite group.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracle::{self, Constraints, GaloisFilter, OracleError, ProductConstraint, SearchLimits};
use crate::perm::{CycleType, Permutation};
use crate::sigma3::Space;
use crate::word::{group_closure, TypeVector, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HurwitzError {
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("group of order {0} is too large for this computation")]
    TooLarge(usize),
    #[error("invalid stratum: {0}")]
    InvalidStratum(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A finite group given by its multiplication table over indices `0..order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct GroupTable {
    order: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    order: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<RawTable> for GroupTable {
    type Error = HurwitzError;

    fn try_from(raw: RawTable) -> Result<Self, Self::Error> {
        GroupTable::new(raw.order, raw.identity, raw.table)
    }
}

impl From<GroupTable> for RawTable {
    fn from(g: GroupTable) -> Self {
        RawTable { order: g.order, identity: g.identity, table: g.table }
    }
}

impl GroupTable {
    /// Validates shape, closure, identity, inverses and associativity.
    pub fn new(order: usize, identity: usize, table: Vec<Vec<usize>>) -> Result<Self, HurwitzError> {
        let bad = |m: String| Err(HurwitzError::InvalidTable(m));
        if order == 0 {
            return bad("order must be positive".into());
        }
        if order > 255 {
            return Err(HurwitzError::TooLarge(order));
        }
        if table.len() != order || table.iter().any(|r| r.len() != order) {
            return bad(format!("shape: table must be {order}x{order}"));
        }
        if identity >= order {
            return bad(format!("identity: index {identity} out of range"));
        }
        for (a, row) in table.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if c >= order {
                    return bad(format!("closure: {a}*{b} = {c} is out of range"));
                }
            }
        }
        for a in 0..order {
            if table[identity][a] != a || table[a][identity] != a {
                return bad(format!("identity: {identity} is not neutral for {a}"));
            }
        }
        for a in 0..order {
            let has_inverse = (0..order).any(|b| table[a][b] == identity && table[b][a] == identity);
            if !has_inverse {
                return bad(format!("inverses: element {a} has no two-sided inverse"));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("associativity: ({a}*{b})*{c} != {a}*({b}*{c})"));
                    }
                }
            }
        }
        Ok(GroupTable { order, identity, table })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable { order: n, identity: 0, table }
    }

    /// Direct product, elements indexed `a * |h| + b`.
    pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Self {
        let (n, m) = (g.order, h.order);
        let table = (0..n * m)
            .map(|x| (0..n * m).map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m)).collect())
            .collect();
        GroupTable { order: n * m, identity: g.identity * m + h.identity, table }
    }

    /// The group of the given permutations (closed under composition), indexed in the given order.
    pub fn from_permutations(elements: &[Permutation]) -> Result<Self, HurwitzError> {
        let index: BTreeMap<&Permutation, usize> = elements.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let mut table = Vec::with_capacity(elements.len());
        for a in elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in elements {
                let c = a.then(b);
                row.push(*index.get(&c).ok_or_else(|| HurwitzError::InvalidTable("closure: not closed".into()))?);
            }
            table.push(row);
        }
        let identity = elements
            .iter()
            .position(Permutation::is_identity)
            .ok_or_else(|| HurwitzError::InvalidTable("identity: missing".into()))?;
        GroupTable::new(elements.len(), identity, table)
    }

    pub fn symmetric(d: usize) -> Self {
        GroupTable::from_permutations(&Permutation::all(d)).expect("symmetric group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order).find(|&b| self.table[a][b] == self.identity).expect("validated table")
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    /// All automorphisms as image tables, found by backtracking over bijections fixing the identity.
    pub fn automorphisms(&self) -> Result<Vec<Vec<usize>>, HurwitzError> {
        if self.order > 10 {
            return Err(HurwitzError::TooLarge(self.order));
        }
        let n = self.order;
        let mut out = Vec::new();
        let mut f = vec![usize::MAX; n];
        let mut used = vec![false; n];
        f[self.identity] = self.identity;
        used[self.identity] = true;
        let order: Vec<usize> = (0..n).filter(|&x| x != self.identity).collect();
        self.extend_automorphism(&order, 0, &mut f, &mut used, &mut out);
        Ok(out)
    }

    fn extend_automorphism(&self, order: &[usize], k: usize, f: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if k == order.len() {
            out.push(f.clone());
            return;
        }
        let x = order[k];
        for y in 0..self.order {
            if used[y] {
                continue;
            }
            f[x] = y;
            used[y] = true;
            if self.consistent(f, x) {
                self.extend_automorphism(order, k + 1, f, used, out);
            }
            used[y] = false;
            f[x] = usize::MAX;
        }
    }

    /// Checks `f(ab) = f(a)f(b)` wherever all three values are assigned and `x` is involved.
    fn consistent(&self, f: &[usize], x: usize) -> bool {
        for a in 0..self.order {
            if f[a] == usize::MAX {
                continue;
            }
            for (p, q) in [(a, x), (x, a)] {
                let c = self.mul(p, q);
                if f[c] != usize::MAX && f[c] != self.mul(f[p], f[q]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Right-regular representation: `σ_g` sends point `x + 1` to `(x·g) + 1`.
pub fn cayley_embed(g: &GroupTable) -> Vec<Permutation> {
    (0..g.order)
        .map(|h| {
            let images: Vec<usize> = (0..g.order).map(|x| g.mul(x, h) + 1).collect();
            Permutation::from_images(&images).expect("rows of a group table are bijections")
        })
        .collect()
}

/// Permutation of the group's elements induced by an image table.
fn as_permutation(images: impl Iterator<Item = usize>) -> Permutation {
    let v: Vec<usize> = images.map(|x| x + 1).collect();
    Permutation::from_images(&v).expect("bijection")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CayleyReport {
    pub group_order: usize,
    pub center_order: usize,
    pub centralizer_order: usize,
    pub aut_order: usize,
    pub automorphisms_realized: usize,
    pub amalgam_order: usize,
    pub expected_amalgam_order: usize,
    pub normalizer_order: usize,
    pub expected_normalizer_order: usize,
    pub kernel_order: usize,
    pub pass: bool,
}

/// Computes the centralizer of the Cayley image as left multiplications, realizes
/// every automorphism by the permutation `x ↦ f(x)`, and checks the orders of the
/// generated groups.
pub fn cayley_structure_check(g: &GroupTable) -> Result<CayleyReport, HurwitzError> {
    let n = g.order;
    if n > 8 {
        return Err(HurwitzError::TooLarge(n));
    }
    let image = cayley_embed(g);

    // A permutation commuting with every σ_g is determined by where it sends the
    // identity: it must be x ↦ h·x.
    let centralizer: Vec<Permutation> = (0..n)
        .map(|h| as_permutation((0..n).map(|x| g.mul(h, x))))
        .filter(|c| image.iter().all(|s| c.then(s) == s.then(c)))
        .collect();

    let auts = g.automorphisms()?;
    let sigma_f: Vec<Permutation> = auts.iter().map(|f| as_permutation(f.iter().copied())).collect();
    let automorphisms_realized = auts
        .iter()
        .zip(&sigma_f)
        .filter(|(f, sf)| (0..n).all(|h| image[h].conjugate_by(sf) == image[f[h]]))
        .count();

    let center_order = g.center().len();
    let mut gens = image.clone();
    gens.extend(centralizer.iter().cloned());
    let amalgam_order = group_closure(n, &gens, 40320)?.len();

    let mut ngens = centralizer.clone();
    ngens.extend(sigma_f.iter().cloned());
    let normalizer = group_closure(n, &ngens, 40320)?;
    let kernel_order = normalizer
        .iter()
        .filter(|x| image.iter().all(|s| s.conjugate_by(x) == *s))
        .count();

    let expected_amalgam_order = n * n / center_order;
    let expected_normalizer_order = n * auts.len();
    let pass = centralizer.len() == n
        && automorphisms_realized == auts.len()
        && amalgam_order == expected_amalgam_order
        && normalizer.len() == expected_normalizer_order
        && kernel_order == centralizer.len();
    Ok(CayleyReport {
        group_order: n,
        center_order,
        centralizer_order: centralizer.len(),
        aut_order: auts.len(),
        automorphisms_realized,
        amalgam_order,
        expected_amalgam_order,
        normalizer_order: normalizer.len(),
        expected_normalizer_order,
        kernel_order,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisComponents {
    pub count: usize,
    pub representatives: Vec<Word>,
    pub hurwitz_orbits: usize,
}

fn galois_enumeration(g: &GroupTable, b: usize, limits: SearchLimits) -> Result<(oracle::Enumeration, Vec<Permutation>), HurwitzError> {
    if g.order > 8 {
        return Err(HurwitzError::TooLarge(g.order));
    }
    let image = cayley_embed(g);
    let letters: Vec<Permutation> = image.iter().filter(|p| !p.is_identity()).cloned().collect();
    let c = Constraints::new(g.order, b)
        .with_alphabet(letters)
        .identity_product()
        .with_galois(GaloisFilter::Order(g.order as u64));
    Ok((oracle::enumerate(&c, limits)?, image))
}

/// Words over `G \ {1}` (inside the Cayley image) of length `b`, identity product and
/// generating `G`, up to moves and the action of `Aut(G)`.
pub fn galois_components(g: &GroupTable, b: usize, limits: SearchLimits) -> Result<GaloisComponents, HurwitzError> {
    let (e, _) = galois_enumeration(g, b, limits)?;
    let sigma_f: Vec<Permutation> = g.automorphisms()?.into_iter().map(|f| as_permutation(f.into_iter())).collect();
    let fused = oracle::fused_count(&e, &sigma_f);
    Ok(GaloisComponents { count: fused.count, representatives: fused.representatives, hurwitz_orbits: fused.hurwitz_orbits })
}

/// The same stratum fused by conjugation with every permutation of `S_N` that keeps
/// the word inside the Cayley image.
pub fn galois_components_symmetric_fusion(g: &GroupTable, b: usize, limits: SearchLimits) -> Result<GaloisComponents, HurwitzError> {
    let (e, _) = galois_enumeration(g, b, limits)?;
    let fused = oracle::fused_count(&e, &Permutation::all(g.order));
    Ok(GaloisComponents { count: fused.count, representatives: fused.representatives, hurwitz_orbits: fused.hurwitz_orbits })
}

/// A stratum of degree-`d` words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub degree: usize,
    pub length: usize,
    pub types: Option<TypeVector>,
    pub letter_types: Option<Vec<CycleType>>,
    pub product: Option<ProductConstraint>,
    pub galois: Option<GaloisFilter>,
    pub transitive: Option<bool>,
    pub space: Space,
    /// Count marked components (no conjugation fusion).
    pub marked: bool,
}

impl Stratum {
    pub fn new(degree: usize, length: usize) -> Self {
        Stratum {
            degree,
            length,
            types: None,
            letter_types: None,
            product: None,
            galois: None,
            transitive: None,
            space: Space::Disc,
            marked: false,
        }
    }

    pub fn constraints(&self) -> Constraints {
        Constraints {
            degree: self.degree,
            length: self.length,
            types: self.types.clone(),
            letter_types: self.letter_types.clone(),
            alphabet: None,
            product: self.product.clone(),
            galois: self.galois.clone(),
            transitive: self.transitive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub degree: usize,
    pub length: usize,
    pub count: usize,
    pub hurwitz_orbits: usize,
    pub representatives: Vec<Word>,
    pub exhausted: bool,
}

pub fn count_components(stratum: &Stratum, limits: SearchLimits) -> Result<ComponentReport, HurwitzError> {
    if stratum.space == Space::Line {
        let ok = match &stratum.product {
            Some(ProductConstraint::Exact(p)) => p.is_identity(),
            Some(ProductConstraint::OfType(t)) => t.is_identity(),
            _ => false,
        };
        if !ok {
            return Err(HurwitzError::InvalidStratum("the line requires identity product".into()));
        }
    }
    let e = oracle::enumerate(&stratum.constraints(), limits)?;
    let (count, representatives) = if stratum.marked {
        (e.orbits.len(), e.orbits.iter().map(|o| o.canonical.clone()).collect())
    } else {
        let fused = oracle::fused_count(&e, &Permutation::all(stratum.degree));
        (fused.count, fused.representatives)
    };
    Ok(ComponentReport {
        degree: stratum.degree,
        length: stratum.length,
        count,
        hurwitz_orbits: e.orbits.len(),
        representatives,
        exhausted: true,
    })
}

/// Cycle types of `c · t` for a `d`-cycle `c` and a transposition `t`, with their inverses'
/// types being the admissible middle letters of an identity-product triple.
pub fn middle_types(d: usize) -> Vec<CycleType> {
    (1..=d / 2)
        .map(|a| CycleType::new([a, d - a].into_iter().filter(|&k| k >= 2).collect()).expect("parts >= 2"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleCount {
    pub degree: usize,
    /// `(middle type, component count)`.
    pub per_type: Vec<(String, usize)>,
    pub total: usize,
}

/// Components of identity-product triples (transposition, middle, `d`-cycle),
/// summed over every middle cycle type.
pub fn transposition_middle_cycle_components(d: usize, limits: SearchLimits) -> Result<TripleCount, HurwitzError> {
    let mut per_type = Vec::new();
    let mut total = 0;
    for t in CycleType::all(d).into_iter().filter(|t| !t.is_identity()) {
        let tv = TypeVector::from_counts([
            (CycleType::transposition(), 1),
            (t.clone(), 1),
            (CycleType::new(vec![d]).expect("d >= 2"), 1),
        ])?;
        let mut s = Stratum::new(d, 3);
        s.types = Some(tv);
        s.product = Some(ProductConstraint::Exact(Permutation::identity(d)));
        s.space = Space::Line;
        let r = count_components(&s, limits)?;
        if r.count > 0 {
            per_type.push((t.to_string(), r.count));
            total += r.count;
        }
    }
    Ok(TripleCount { degree: d, per_type, total })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_validation_names_axiom() {
        let err = GroupTable::new(2, 0, vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(err.to_string().contains("inverses"), "{err}");
        let err = GroupTable::new(2, 1, vec![vec![0, 1], vec![1, 0]]).unwrap_err();
        assert!(err.to_string().contains("identity"), "{err}");
        let err = GroupTable::new(2, 0, vec![vec![0, 1]]).unwrap_err();
        assert!(err.to_string().contains("shape"), "{err}");
        let json = r#"{"order":3,"identity":0,"table":[[0,1,2],[1,2,0],[2,0,1]]}"#;
        let g: GroupTable = serde_json::from_str(json).unwrap();
        assert_eq!(g, GroupTable::cyclic(3));
        assert!(serde_json::from_str::<GroupTable>(r#"{"order":2,"identity":0,"table":[[0,1],[1,1]]}"#).is_err());
    }

    #[test]
    fn cayley_images() {
        let c3 = cayley_embed(&GroupTable::cyclic(3));
        let strs: Vec<String> = c3.iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["()", "(1 2 3)", "(1 3 2)"]);
        let s3 = GroupTable::symmetric(3);
        let img = cayley_embed(&s3);
        assert!(img[s3.identity()].is_identity());
        for (k, p) in img.iter().enumerate() {
            if k != s3.identity() {
                assert!((1..=6).all(|i| p.apply(i) != i));
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        let k4 = GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2));
        assert_eq!(k4.automorphisms().unwrap().len(), 6);
        assert_eq!(GroupTable::cyclic(4).automorphisms().unwrap().len(), 2);
        assert_eq!(GroupTable::symmetric(3).automorphisms().unwrap().len(), 6);
    }

    #[test]
    fn structure_checks() {
        let k4 = GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2));
        let r = cayley_structure_check(&k4).unwrap();
        assert_eq!((r.centralizer_order, r.aut_order, r.automorphisms_realized), (4, 6, 6));
        assert!(r.pass);
        let r = cayley_structure_check(&GroupTable::symmetric(3)).unwrap();
        assert_eq!((r.centralizer_order, r.amalgam_order), (6, 36));
        assert!(r.pass);
        let r = cayley_structure_check(&GroupTable::cyclic(3)).unwrap();
        assert_eq!(r.amalgam_order, 3);
    }

    #[test]
    fn galois_examples() {
        let lim = SearchLimits::default();
        assert_eq!(galois_components(&GroupTable::cyclic(2), 2, lim).unwrap().count, 1);
        assert_eq!(galois_components(&GroupTable::cyclic(3), 3, lim).unwrap().count, 1);
    }

    #[test]
    fn component_examples() {
        let lim = SearchLimits::default();
        let mut s = Stratum::new(3, 6);
        s.letter_types = Some(vec![CycleType::new(vec![3]).unwrap()]);
        s.product = Some(ProductConstraint::Exact(Permutation::identity(3)));
        s.space = Space::Line;
        assert_eq!(count_components(&s, lim).unwrap().count, 2);
        let mut s = Stratum::new(2, 2);
        s.product = Some(ProductConstraint::Exact(Permutation::identity(2)));
        s.space = Space::Line;
        assert_eq!(count_components(&s, lim).unwrap().count, 1);
        let t = transposition_middle_cycle_components(4, lim).unwrap();
        assert_eq!(t.total, 2);
        assert_eq!(middle_types(5).len(), 2);
        let mut bad = Stratum::new(3, 2);
        bad.space = Space::Line;
        assert!(count_components(&bad, lim).is_err());
    }
}
