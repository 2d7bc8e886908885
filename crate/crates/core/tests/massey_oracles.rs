//! Brute-force cross-checks of the Massey enumeration over GF(2).

use std::collections::BTreeSet;

use toric_core::families::Family;
use toric_core::massey::{find_triple, massey_product, q_classes, ungraded_indeterminacy, Strategy};
use toric_core::tor_algebra::{Bidegree, Dga, DgaElement};
use toric_core::{PrimeField, SimplicialComplex, VertexSet};

type G = PrimeField;
type Elem = DgaElement<G>;

fn add(dga: &Dga<'_, G>, a: &Elem, b: &Elem) -> Elem {
    a.add(dga.field(), b)
}

/// Every element `p + Σ ε_i z_i` over GF(2).
fn affine_span(dga: &Dga<'_, G>, p: &Elem, basis: &[Elem]) -> Vec<Elem> {
    assert!(basis.len() <= 12, "oracle too large");
    (0u32..1 << basis.len())
        .map(|mask| basis.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(p.clone(), |acc, (_, z)| add(dga, &acc, z)))
        .collect()
}

/// Value set of `⟨a1, a2, a3⟩` from all homogeneous defining systems, as normal forms.
/// Signs are irrelevant in characteristic two.
fn triple_values(dga: &Dga<'_, G>, a: &[Elem]) -> Option<BTreeSet<Vec<u64>>> {
    let c13 = dga.coboundary_solve(&dga.product(&a[0], &a[1]))?;
    let c24 = dga.coboundary_solve(&dga.product(&a[1], &a[2]))?;
    assert_eq!(dga.differential(&c13).terms, dga.product(&a[0], &a[1]).terms);
    let z13 = dga.class_space(c13.bideg).0;
    let z24 = dga.class_space(c24.bideg).0;
    let mut out = BTreeSet::new();
    for x in affine_span(dga, &c13, &z13) {
        for y in affine_span(dga, &c24, &z24) {
            let v = add(dga, &dga.product(&a[0], &y), &dga.product(&x, &a[2]));
            assert!(dga.is_cocycle(&v));
            out.insert(zero_as_empty(dga.normal_form(&v)));
        }
    }
    Some(out)
}

fn zero_as_empty(v: Vec<u64>) -> Vec<u64> {
    if v.iter().all(|&c| c == 0) {
        Vec::new()
    } else {
        v
    }
}

fn reported_values(dga: &Dga<'_, G>, a: &[Elem]) -> Option<BTreeSet<Vec<u64>>> {
    let r = massey_product(dga, a, Strategy::ExhaustiveGf2, 16).unwrap();
    r.defined.then(|| {
        r.values.iter().map(|t| if t.is_empty() { Vec::new() } else { zero_as_empty(dga.normal_form(&dga.from_json(t).unwrap())) }).collect()
    })
}

/// `a1·H^{deg c24} + H^{deg c13}·a3` over every multidegree, not only the homogeneous slots.
fn full_indeterminacy_vanishes(dga: &Dga<'_, G>, a: &[Elem]) -> bool {
    let k = dga.complex();
    let d13 = a[0].total_degree() + a[1].total_degree() - 1;
    let d24 = a[1].total_degree() + a[2].total_degree() - 1;
    for j in k.vertex_set().subsets() {
        for i in 0..=j.len() {
            let b = Bidegree::new(i, j);
            let td = b.total_degree();
            if td != d13 && td != d24 {
                continue;
            }
            for z in dga.cohomology_basis(b) {
                if td == d24 && !j.intersects(&a[0].bideg.j) && !dga.is_coboundary(&dga.product(&a[0], &z)) {
                    return false;
                }
                if td == d13 && !j.intersects(&a[2].bideg.j) && !dga.is_coboundary(&dga.product(&z, &a[2])) {
                    return false;
                }
            }
        }
    }
    true
}

fn degree_three_classes(dga: &Dga<'_, G>) -> Vec<Elem> {
    let k = dga.complex();
    let adj = k.adjacency();
    let m = k.num_vertices();
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if !adj[a].contains(b) {
                out.push(dga.monomial(VertexSet::singleton(b), VertexSet::singleton(a), 1).unwrap());
            }
        }
    }
    out
}

fn cycle(m: usize) -> SimplicialComplex {
    let labels: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
    let faces: Vec<Vec<String>> = (0..m).map(|i| vec![labels[i].clone(), labels[(i + 1) % m].clone()]).collect();
    SimplicialComplex::from_label_faces(&labels, &faces).unwrap()
}

#[test]
fn enumeration_matches_all_cocycles() {
    for (name, k) in [("Q3", Family::Q.complex(3).unwrap()), ("As3", Family::Associahedron.complex(3).unwrap())] {
        let dga = Dga::new(&k, G::new(2).unwrap());
        let mut checked = 0;
        let classes = degree_three_classes(&dga);
        for x in &classes {
            for y in &classes {
                for z in &classes {
                    if x.bideg.j.intersects(&y.bideg.j) || y.bideg.j.intersects(&z.bideg.j) || x.bideg.j.intersects(&z.bideg.j) {
                        continue;
                    }
                    let a = [x.clone(), y.clone(), z.clone()];
                    assert_eq!(triple_values(&dga, &a), reported_values(&dga, &a), "{name}");
                    checked += 1;
                    if checked >= 400 {
                        break;
                    }
                }
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn homogeneous_strictness_versus_full_indeterminacy() {
    let q = Family::Q.complex(3).unwrap();
    let dga = Dga::new(&q, G::new(2).unwrap());
    let a = q_classes(&dga, 3).unwrap();
    let vals = triple_values(&dga, &a).unwrap();
    assert_eq!(vals.len(), 1);
    // the multigraded slots see a single value, the full indeterminacy does not vanish
    assert!(!full_indeterminacy_vanishes(&dga, &a));
    let w = ungraded_indeterminacy(&dga, &a).unwrap().expect("witness");
    assert!(dga.is_cocycle(&w.z) && !dga.is_coboundary(&w.product));
    for f in [Family::Associahedron, Family::Cyclohedron, Family::Stellahedron, Family::Permutohedron] {
        let k = f.complex(3).unwrap();
        let dga = Dga::new(&k, G::new(2).unwrap());
        let (a, _) = find_triple(&dga, Strategy::ExhaustiveGf2, 16, 3).unwrap().unwrap();
        assert_eq!(triple_values(&dga, &a).unwrap().len(), 1, "{f}");
        assert_eq!(full_indeterminacy_vanishes(&dga, &a), ungraded_indeterminacy(&dga, &a).unwrap().is_none(), "{f}");
    }
}

#[test]
fn small_complexes_have_no_strict_nontrivial_triples() {
    // m <= 6: every triple of degree-3 classes either is undefined or contains zero
    for k in [cycle(4), cycle(5), cycle(6), Family::Cube.complex(3).unwrap()] {
        let dga = Dga::new(&k, G::new(2).unwrap());
        let classes = degree_three_classes(&dga);
        for x in &classes {
            for y in &classes {
                for z in &classes {
                    if x.bideg.j.intersects(&y.bideg.j) || y.bideg.j.intersects(&z.bideg.j) || x.bideg.j.intersects(&z.bideg.j) {
                        continue;
                    }
                    let a = [x.clone(), y.clone(), z.clone()];
                    let Some(vals) = triple_values(&dga, &a) else { continue };
                    let contains_zero = vals.contains(&Vec::new());
                    let r = massey_product(&dga, &a, Strategy::ExhaustiveGf2, 16).unwrap();
                    assert_eq!(r.contains_zero, Some(contains_zero));
                    assert!(contains_zero);
                }
            }
        }
    }
}
