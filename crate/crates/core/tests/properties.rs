//! Randomized invariants of the complexes, the Koszul DGA and the polytope ring.

use num_rational::BigRational;
use proptest::prelude::*;
use toric_core::families::Family;
use toric_core::hochster::betti_entry;
use toric_core::linalg::Field;
use toric_core::massey::{find_triple, massey_product, Strategy as Method};
use toric_core::poly_ring::{Registry, RingElement};
use toric_core::tor_algebra::{Bidegree, Dga, DgaElement};
use toric_core::{FieldSpec, PrimeField, Rationals, SimplicialComplex, VertexSet};

fn complex_from(m: usize, faces: &[u64]) -> SimplicialComplex {
    let labels: Vec<String> = (1..=m).map(|i| format!("v{i}")).collect();
    let mut sets: Vec<VertexSet> = faces.iter().map(|&f| VertexSet::from_bits(f & ((1 << m) - 1))).collect();
    sets.extend((0..m).map(VertexSet::singleton));
    SimplicialComplex::new(labels, sets).unwrap()
}

fn complexes(max_m: usize) -> impl Strategy<Value = SimplicialComplex> {
    (3..=max_m).prop_flat_map(|m| prop::collection::vec(1u64..1 << m, 1..8).prop_map(move |f| complex_from(m, &f)))
}

/// A random element of one bidegree, chosen by `seed`.
fn element(dga: &Dga<'_, Rationals>, seed: u64) -> DgaElement<Rationals> {
    let k = dga.complex();
    let j = VertexSet::from_bits(seed & ((1 << k.num_vertices()) - 1));
    let i = (seed >> 20) as usize % (j.len() + 1);
    let b = Bidegree::new(i, j);
    let f = dga.field();
    let mut x = DgaElement::zero(b);
    for (n, s) in dga.basis(b).into_iter().enumerate() {
        let c = ((seed >> (24 + n % 30)) % 5) as i64 - 2;
        let t = dga.monomial(s, j.difference(&s), f.from_i64(c)).unwrap();
        x = x.add(f, &t);
    }
    x
}

fn same(a: &DgaElement<Rationals>, b: &DgaElement<Rationals>) -> bool {
    a.terms == b.terms
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn differential_squares_to_zero(k in complexes(7), seed in any::<u64>()) {
        let dga = Dga::new(&k, Rationals);
        let x = element(&dga, seed);
        prop_assert!(dga.differential(&dga.differential(&x)).is_zero());
    }

    #[test]
    fn leibniz_and_commutativity(k in complexes(7), s1 in any::<u64>(), s2 in any::<u64>()) {
        let dga = Dga::new(&k, Rationals);
        let f = dga.field();
        let x = element(&dga, s1);
        let y = element(&dga, s2);
        let lhs = dga.differential(&dga.product(&x, &y));
        let rhs = dga.product(&dga.differential(&x), &y).add(f, &dga.product(&x.bar(f), &dga.differential(&y)));
        prop_assert!(same(&lhs, &rhs));
        let xy = dga.product(&x, &y);
        let mut yx = dga.product(&y, &x);
        if x.total_degree() * y.total_degree() % 2 == 1 {
            yx = yx.neg(f);
        }
        prop_assert!(same(&xy, &yx));
    }

    #[test]
    fn hochster_matches_dga_ranks(k in complexes(8), field in prop::sample::select(vec![FieldSpec::Rational, FieldSpec::Prime(2)])) {
        for j in k.vertex_set().subsets() {
            for i in 0..=j.len() {
                let b = Bidegree::new(i, j);
                let dim = match field {
                    FieldSpec::Rational => Dga::new(&k, Rationals).component(b).cohomology_dim(),
                    FieldSpec::Prime(p) => Dga::new(&k, PrimeField::new(p).unwrap()).component(b).cohomology_dim(),
                };
                prop_assert_eq!(dim, betti_entry(&k, i, &j, field));
            }
        }
    }

    #[test]
    fn canonical_form_ignores_labels(k in complexes(8), keys in prop::collection::vec(any::<u32>(), 8)) {
        let m = k.num_vertices();
        let mut perm: Vec<usize> = (0..m).collect();
        perm.sort_by_key(|&i| (keys[i], i));
        let p = k.permuted(&perm);
        prop_assert_eq!(p.canonical_form().certificate, k.canonical_form().certificate);
        prop_assert!(p.is_isomorphic(&k));
        prop_assert!(k.multiwedge(&vec![1; m]).unwrap().is_isomorphic(&k));
    }

    #[test]
    fn vanishing_strictness_implies_a_single_value(k in complexes(7), picks in prop::collection::vec(any::<u16>(), 3)) {
        let dga = Dga::new(&k, PrimeField::new(2).unwrap());
        let adj = k.adjacency();
        let m = k.num_vertices();
        let mut classes = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                if !adj[a].contains(b) {
                    classes.push(dga.monomial(VertexSet::singleton(b), VertexSet::singleton(a), 1).unwrap());
                }
            }
        }
        prop_assume!(!classes.is_empty());
        let a: Vec<_> = picks.iter().map(|&p| classes[p as usize % classes.len()].clone()).collect();
        let v = massey_product(&dga, &a, Method::Vanishing, 16).unwrap();
        if v.defined && v.strict.is_strict() {
            let e = massey_product(&dga, &a, Method::ExhaustiveGf2, 16).unwrap();
            prop_assert!(e.defined);
            prop_assert_eq!(e.value_count, Some(1));
            prop_assert_eq!(e.nontrivial, v.nontrivial);
        }
    }

    #[test]
    fn exhaustive_values_survive_relabeling(seed in any::<u64>()) {
        let k = Family::Associahedron.complex(3).unwrap();
        let m = k.num_vertices();
        let mut perm: Vec<usize> = (0..m).collect();
        perm.sort_by_key(|&i| (seed.rotate_left(7 * i as u32) ^ i as u64, i));
        let p = k.permuted(&perm);
        let (g1, g2) = (Dga::new(&k, PrimeField::new(2).unwrap()), Dga::new(&p, PrimeField::new(2).unwrap()));
        let (a, _) = find_triple(&g1, Method::ExhaustiveGf2, 16, 3).unwrap().unwrap();
        let b: Vec<_> = a.iter().map(|x| g2.from_json(&g1.to_json(x)).unwrap()).collect();
        let r1 = massey_product(&g1, &a, Method::ExhaustiveGf2, 16).unwrap();
        let r2 = massey_product(&g2, &b, Method::ExhaustiveGf2, 16).unwrap();
        prop_assert_eq!((r1.defined, r1.value_count, r1.nontrivial), (r2.defined, r2.value_count, r2.nontrivial));
        // representatives depend on the basis order, so compare classes
        let f = g2.field();
        let lift = |t: &Vec<toric_core::tor_algebra::TermJson>| (!t.is_empty()).then(|| g2.from_json(t).unwrap());
        let cohomologous = |x: &Option<DgaElement<PrimeField>>, y: &Option<DgaElement<PrimeField>>| match (x, y) {
            (None, None) => true,
            (Some(x), None) | (None, Some(x)) => g2.is_coboundary(x),
            (Some(x), Some(y)) => g2.is_coboundary(&x.sub(f, y)),
        };
        let v1: Vec<_> = r1.values.iter().map(lift).collect();
        let v2: Vec<_> = r2.values.iter().map(lift).collect();
        for x in &v1 {
            prop_assert!(v2.iter().any(|y| cohomologous(x, y)));
        }
    }
}

fn ring_corpus(reg: &Registry) -> Vec<RingElement> {
    let mut out = Vec::new();
    for f in [Family::Simplex, Family::Cube, Family::Permutohedron, Family::Stellahedron, Family::PMas, Family::PGamma] {
        for n in f.min_dim().max(1)..=4 {
            out.push(reg.family_element(f, n).unwrap());
        }
    }
    out
}

#[test]
fn dehn_sommerville_for_interned_classes() {
    let reg = Registry::new();
    for e in ring_corpus(&reg) {
        reg.boundary(&e);
    }
    assert!(reg.len() > 10);
    for c in reg.classes() {
        assert!(reg.h_polynomial(&RingElement::monomial(vec![c.id])).is_symmetric(), "{}", c.name());
    }
}

#[test]
fn f_and_h_are_ring_homomorphisms() {
    let reg = Registry::new();
    let corpus = ring_corpus(&reg);
    let two = BigRational::from_integer(2.into());
    for (i, a) in corpus.iter().enumerate() {
        for b in corpus.iter().skip(i).step_by(3) {
            assert_eq!(reg.f_polynomial(&a.mul(b)), reg.f_polynomial(a).mul(&reg.f_polynomial(b)));
            assert_eq!(reg.f_polynomial(&a.add(&b.scale(&two))), reg.f_polynomial(a).add(&reg.f_polynomial(b).scale(&two)));
            assert_eq!(reg.h_polynomial(&a.mul(b)), reg.h_polynomial(a).mul(&reg.h_polynomial(b)));
        }
    }
}
