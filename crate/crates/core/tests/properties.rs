use std::collections::BTreeSet;

use proptest::prelude::*;

use hurwitz_core::hurwitz::{count_components, Stratum};
use hurwitz_core::npsemi;
use hurwitz_core::oracle::{hurwitz_equivalent, hurwitz_orbit, ProductConstraint, SearchLimits};
use hurwitz_core::sigma3::{sigma3_normal_form, Space};
use hurwitz_core::transpo::{hurwitz_element, regenerate, rewrites};
use hurwitz_core::word::{group_closure, Direction, TypeVector, Word, DEFAULT_ORDER_CAP};
use hurwitz_core::{CycleType, Permutation};

fn lim() -> SearchLimits {
    SearchLimits::default()
}

fn perm(d: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=d).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn non_identity(d: usize) -> impl Strategy<Value = Permutation> {
    perm(d).prop_filter("non-identity", |p| !p.is_identity())
}

fn word(d: usize, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Word> {
    prop::collection::vec(non_identity(d), len).prop_map(move |ls| Word::new(d, ls).unwrap())
}

fn sized_word(max_d: usize, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Word> {
    (2..=max_d).prop_flat_map(move |d| word(d, len.clone()))
}

fn transposition(d: usize) -> impl Strategy<Value = Permutation> {
    (1..=d, 1..=d)
        .prop_filter("distinct", |(i, j)| i != j)
        .prop_map(move |(i, j)| Permutation::transposition(d, i, j).unwrap())
}

fn equiv(a: &Word, b: &Word) -> bool {
    hurwitz_equivalent(a, b, lim()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn composition_is_associative_with_neutral_identity(
        (a, b, c) in (1usize..=8).prop_flat_map(|d| (perm(d), perm(d), perm(d)))
    ) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        let e = Permutation::identity(a.degree());
        prop_assert_eq!(a.then(&e), a.clone());
        prop_assert_eq!(e.then(&a), a.clone());
        prop_assert!(a.then(&a.inverse()).is_identity());
    }

    #[test]
    fn conjugation_preserves_cycle_type((p, g) in (1usize..=8).prop_flat_map(|d| (perm(d), perm(d)))) {
        prop_assert_eq!(p.conjugate_by(&g).cycle_type(), p.cycle_type());
        let rep = p.cycle_type().canonical_representative(p.degree()).unwrap();
        prop_assert_eq!(rep.cycle_type(), p.cycle_type());
    }

    #[test]
    fn permutation_text_round_trips(p in (1usize..=8).prop_flat_map(perm)) {
        prop_assert_eq!(Permutation::parse(&p.to_string(), p.degree()).unwrap(), p);
    }

    #[test]
    fn moves_preserve_invariants(w in sized_word(6, 2..=8), i in 0usize..7, fwd in any::<bool>()) {
        let i = 1 + i % (w.len() - 1);
        let dir = if fwd { Direction::Forward } else { Direction::Inverse };
        let v = w.hurwitz_move(i, dir).unwrap();
        prop_assert_eq!(v.product(), w.product());
        prop_assert_eq!(v.factorization_type(), w.factorization_type());
        let (sw, sv) = (w.generated_subgroup(DEFAULT_ORDER_CAP).unwrap(), v.generated_subgroup(DEFAULT_ORDER_CAP).unwrap());
        prop_assert_eq!(sw, sv);
        let back = v.hurwitz_move(i, if fwd { Direction::Inverse } else { Direction::Forward }).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn moves_preserve_graph_vertices(
        w in (2usize..=6).prop_flat_map(|d| prop::collection::vec(transposition(d), 2..=8).prop_map(move |ls| Word::new(d, ls).unwrap())),
        i in 0usize..7,
    ) {
        let i = 1 + i % (w.len() - 1);
        let v = w.hurwitz_move(i, Direction::Forward).unwrap();
        prop_assert_eq!(v.transposition_graph().unwrap().vertices, w.transposition_graph().unwrap().vertices);
    }

    #[test]
    fn braid_relations_hold(w in sized_word(5, 3..=8), i in 0usize..6, k in 0usize..7) {
        let f = Direction::Forward;
        let i = 1 + i % (w.len() - 2);
        let m = |w: &Word, idx: usize| w.hurwitz_move(idx, f).unwrap();
        prop_assert_eq!(m(&m(&m(&w, i), i + 1), i), m(&m(&m(&w, i + 1), i), i + 1));
        let k = 1 + k % (w.len() - 1);
        if k.abs_diff(i) >= 2 {
            prop_assert_eq!(m(&m(&w, i), k), m(&m(&w, k), i));
        }
    }

    #[test]
    fn conjugation_commutes_with_moves((w, g) in (2usize..=5).prop_flat_map(|d| (word(d, 2..=6), perm(d))), i in 0usize..5) {
        let i = 1 + i % (w.len() - 1);
        let a = w.simultaneous_conjugate(&g).unwrap().hurwitz_move(i, Direction::Forward).unwrap();
        let b = w.hurwitz_move(i, Direction::Forward).unwrap().simultaneous_conjugate(&g).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn word_text_round_trips(w in sized_word(6, 0..=6)) {
        prop_assert_eq!(Word::parse(&w.to_string()).unwrap(), w.clone());
        let json = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<Word>(&json).unwrap(), w);
    }

    #[test]
    fn regenerate_has_minimal_length(p in (1usize..=6).prop_flat_map(perm)) {
        let r = regenerate(&p);
        prop_assert_eq!(r.len(), p.transposition_length());
        prop_assert_eq!(r.product(), p);
        prop_assert!(r.letters().iter().all(|l| l.is_transposition()));
    }

    #[test]
    fn origins_match_brute_force(
        gens in (1usize..=4).prop_flat_map(|m| prop::collection::vec(prop::collection::vec(0u64..=6, m), 1..=6))
    ) {
        let o = npsemi::origins(&gens).unwrap();
        prop_assert!(o.is_antichain());
        prop_assert_eq!(npsemi::origins(&o.origins()).unwrap(), o.clone());
        let m = gens[0].len();
        let mut pts = vec![vec![]];
        for _ in 0..m {
            pts = pts.into_iter().flat_map(|p: Vec<u64>| (0..=7).map(move |c| { let mut q = p.clone(); q.push(c); q })).collect();
        }
        for p in pts {
            let brute = gens.iter().any(|g| npsemi::dominated_by(g, &p));
            prop_assert_eq!(o.member(&p).unwrap(), brute);
        }
    }

    #[test]
    fn ascending_chains_stabilize(
        seq in (1usize..=4).prop_flat_map(|m| prop::collection::vec(prop::collection::vec(0u64..=6, m), 1..=16))
    ) {
        let mut prev: Option<npsemi::OriginSet> = None;
        for k in 1..=seq.len() {
            let cur = npsemi::origins(&seq[..k]).unwrap();
            if let Some(p) = &prev {
                prop_assert!(p.origins().iter().all(|x| cur.member(x).unwrap()));
            }
            prev = Some(cur);
        }
        prop_assert_eq!(prev.unwrap(), npsemi::origins(&seq).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exchange_with_conjugation((u, v) in (2usize..=4).prop_flat_map(|d| (word(d, 1..=3), word(d, 1..=4)))) {
        let lhs = u.concat(&v).unwrap();
        let rhs = v.concat(&u.simultaneous_conjugate(&v.product()).unwrap()).unwrap();
        prop_assert!(equiv(&lhs, &rhs));
    }

    #[test]
    fn identity_product_words_are_central((u, v) in (2usize..=4).prop_flat_map(|d| (word(d, 1..=3), word(d, 1..=3)))) {
        let last = u.product().inverse();
        let u = u.concat(&Word::new(u.degree(), vec![last]).unwrap()).unwrap();
        prop_assert!(u.product().is_identity());
        prop_assert!(equiv(&u.concat(&v).unwrap(), &v.concat(&u).unwrap()));
    }

    #[test]
    fn orbit_enumeration_is_deterministic(w in sized_word(4, 1..=5)) {
        let a = hurwitz_orbit(&w, lim()).unwrap();
        let b = hurwitz_orbit(&w, lim()).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.exhausted);
        prop_assert!(a.canonical <= w);
    }

    #[test]
    fn central_power_extraction(w in sized_word(4, 1..=6), pick in 0usize..6, extra in 0usize..6) {
        let g = w.letters()[pick % w.len()].clone();
        let n = g.order() as usize;
        let mut letters = w.letters().to_vec();
        letters.extend(std::iter::repeat(g.clone()).take(n.saturating_sub(1)));
        let shift = extra % letters.len();
        letters.rotate_left(shift);
        let w = Word::new(w.degree(), letters).unwrap();
        let (prefix, rest) = w.extract_central_power(&g).expect("at least n copies");
        prop_assert!(prefix.product().is_identity());
        prop_assert_eq!(prefix.len(), n);
        prop_assert!(equiv(&prefix.concat(&rest).unwrap(), &w));
    }

    #[test]
    fn full_cycle_factorizations_are_unique(d in 2usize..=5, ls in prop::collection::vec((1usize..=5, 1usize..=5), 1..=4)) {
        // Transposition words whose product is a single cycle on all touched points have a tree graph.
        let letters: Vec<Permutation> = ls.iter()
            .filter(|(i, j)| i != j && *i <= d && *j <= d)
            .map(|&(i, j)| Permutation::transposition(d, i, j).unwrap())
            .collect();
        let w = Word::new(d, letters).unwrap();
        let p = w.product();
        let cyclic = p.cycles().len() == 1;
        prop_assume!(cyclic && w.len() == p.transposition_length());
        prop_assert!(equiv(&w, &regenerate(&p)));
    }

    #[test]
    fn hurwitz_elements_are_central(v in word(3, 1..=4), g in 0usize..=1) {
        let h = hurwitz_element(3, g).unwrap();
        prop_assert!(equiv(&h.concat(&v).unwrap(), &v.concat(&h).unwrap()));
    }

    #[test]
    fn stabilizer_merges_same_type_same_product(a in word(3, 1..=3), gs in prop::collection::vec(perm(3), 3)) {
        // b conjugates all but the last letter of a; the last letter restores the product.
        let n = a.len();
        let mut letters: Vec<Permutation> = a.letters()[..n - 1].iter().zip(&gs).map(|(x, g)| x.conjugate_by(g)).collect();
        let prefix = Word::new(3, letters.clone()).unwrap().product();
        letters.push(prefix.inverse().then(&a.product()));
        let b = Word::new(3, letters).unwrap();
        prop_assert_eq!(a.product(), b.product());
        prop_assume!(a.factorization_type() == b.factorization_type());
        let h = hurwitz_element(3, 1).unwrap();
        prop_assert!(equiv(&h.concat(&a).unwrap(), &h.concat(&b).unwrap()));
    }

    #[test]
    fn rewrites_are_equivalences(pts in Just((1..=6usize).collect::<Vec<_>>()).prop_shuffle(), k in 2usize..=4, i in 0usize..4, l in 0usize..4) {
        let d = 6;
        let i = 1 + i % (k - 1);
        let (a, b) = rewrites::pendant_insertion(d, &pts[..=k], i);
        prop_assert!(equiv(&a, &b));
        let path = &pts[..k];
        let (a, b) = rewrites::chord_to_square(d, path, i);
        prop_assert!(equiv(&a, &b));
        for (a, b) in rewrites::square_slides(d, pts[0], pts[1], pts[2]) {
            prop_assert!(equiv(&a, &b));
        }
        let (a, b) = rewrites::disjoint_squares(d, pts[0], pts[1], pts[2], pts[3]);
        prop_assert!(equiv(&a, &b));
        let l = i + 1 + l % (k - i);
        let (a, b) = rewrites::square_exchange(d, path, i, l);
        prop_assert!(equiv(&a, &b));
    }

    #[test]
    fn sigma3_representative_is_equivalent_after_conjugation(w in word(3, 0..=8)) {
        let nf = sigma3_normal_form(&w).unwrap();
        let moved = w.simultaneous_conjugate(&nf.conjugator).unwrap();
        prop_assert!(equiv(&moved, &nf.representative));
        if w.product().is_identity() {
            prop_assert!(nf.exact);
            prop_assert!(equiv(&w, &nf.representative));
        }
    }

    #[test]
    fn concatenation_descends_to_orbits((u, v, i, j) in (word(3, 2..=4), word(3, 2..=4), 1usize..=3, 1usize..=3)) {
        let close = |w: &Word| {
            let last = w.product().inverse();
            w.concat(&Word::new(3, vec![last]).unwrap()).unwrap()
        };
        let (u, v) = (close(&u), close(&v));
        let u2 = u.hurwitz_move(1 + (i - 1) % (u.len() - 1), Direction::Forward).unwrap();
        let v2 = v.hurwitz_move(1 + (j - 1) % (v.len() - 1), Direction::Inverse).unwrap();
        prop_assert!(equiv(&u.concat(&v).unwrap(), &u2.concat(&v2).unwrap()));
    }
}

#[test]
fn compare_is_a_strict_total_order() {
    for d in 1..=4 {
        let all = Permutation::all(d);
        for a in &all {
            for b in &all {
                let ab = a.compare(b).unwrap();
                assert_eq!(ab, b.compare(a).unwrap().reverse());
                assert_eq!(ab == std::cmp::Ordering::Equal, a == b);
                for c in &all {
                    if ab.is_lt() && b.compare(c).unwrap().is_lt() {
                        assert!(a.compare(c).unwrap().is_lt());
                    }
                }
            }
        }
    }
}

#[test]
fn transposition_length_is_minimal() {
    for d in 1..=4 {
        let ts: Vec<Permutation> = Permutation::all(d).into_iter().filter(|p| p.is_transposition()).collect();
        let mut best = std::collections::BTreeMap::new();
        let mut frontier = vec![Permutation::identity(d)];
        best.insert(Permutation::identity(d), 0usize);
        let mut k = 0;
        while !frontier.is_empty() {
            k += 1;
            let mut next = Vec::new();
            for p in &frontier {
                for t in &ts {
                    let q = p.then(t);
                    if !best.contains_key(&q) {
                        best.insert(q.clone(), k);
                        next.push(q);
                    }
                }
            }
            frontier = next;
        }
        for (p, k) in best {
            assert_eq!(p.transposition_length(), k, "{p}");
        }
    }
}

#[test]
fn marked_components_refine_unmarked() {
    let cases: Vec<(usize, usize, Option<Vec<CycleType>>)> = vec![
        (3, 4, None),
        (3, 5, None),
        (4, 4, Some(vec![CycleType::transposition()])),
        (4, 3, None),
    ];
    for (d, b, letters) in cases {
        let mut s = Stratum::new(d, b);
        s.letter_types = letters;
        let fused = count_components(&s, lim()).unwrap().count;
        s.marked = true;
        let marked = count_components(&s, lim()).unwrap().count;
        let fact: usize = (1..=d).product();
        assert!(marked >= fused && marked <= fact * fused, "d={d} b={b}: {marked} vs {fused}");
    }
}

#[test]
fn many_transpositions_give_one_component() {
    // More than 3(d-1) = 6 transpositions at degree 3 with full monodromy.
    let t = CycleType::transposition();
    let c3 = CycleType::new(vec![3]).unwrap();
    for tv in [vec![(t.clone(), 8)], vec![(t.clone(), 7), (c3.clone(), 1)], vec![(t.clone(), 8), (c3.clone(), 1)], vec![(t.clone(), 7), (c3.clone(), 2)]] {
        let tv = TypeVector::from_counts(tv).unwrap();
        for product in [Permutation::identity(3)] {
            let mut s = Stratum::new(3, tv.total());
            s.types = Some(tv.clone());
            s.product = Some(ProductConstraint::Exact(product));
            s.galois = Some(hurwitz_core::oracle::GaloisFilter::Tag(hurwitz_core::SubgroupTag::FullSymmetric));
            s.space = Space::Line;
            let r = count_components(&s, lim()).unwrap();
            assert!(r.count <= 1, "{tv}: {}", r.count);
            let expected = usize::from(r.hurwitz_orbits > 0);
            assert_eq!(r.count, expected, "{tv}");
        }
    }
}

#[test]
fn full_monodromy_orbit_counts_are_bounded() {
    // Hurwitz orbits (no conjugation) per type vector with identity product and full group, b <= 9.
    let t = CycleType::transposition();
    let c3 = CycleType::new(vec![3]).unwrap();
    let mut observed = BTreeSet::new();
    for b in 2..=9usize {
        for k3 in 0..=b {
            let k2 = b - k3;
            let mut pairs = Vec::new();
            if k2 > 0 {
                pairs.push((t.clone(), k2));
            }
            if k3 > 0 {
                pairs.push((c3.clone(), k3));
            }
            let mut s = Stratum::new(3, b);
            s.types = Some(TypeVector::from_counts(pairs).unwrap());
            s.product = Some(ProductConstraint::Exact(Permutation::identity(3)));
            s.galois = Some(hurwitz_core::oracle::GaloisFilter::Tag(hurwitz_core::SubgroupTag::FullSymmetric));
            s.marked = true;
            observed.insert(count_components(&s, lim()).unwrap().count);
        }
    }
    // Observed bound: every such stratum is a single orbit (or empty).
    assert_eq!(observed, BTreeSet::from([0, 1]));
}

#[test]
fn generated_subgroup_closure_is_exact() {
    let gens = [Permutation::parse("(1 2)", 4).unwrap(), Permutation::parse("(1 2 3 4)", 4).unwrap()];
    assert_eq!(group_closure(4, &gens, DEFAULT_ORDER_CAP).unwrap().len(), 24);
}
