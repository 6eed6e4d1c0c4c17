use std::collections::BTreeMap;
use std::sync::Arc;

use super::*;
use crate::report::Status;
use crate::trianglecat::{graded_lines_tensor, point, IsoMorphism, TriFunctorData, TriangPresentation};

fn e(v: &[i64]) -> Elem {
    Elem(v.to_vec())
}

#[test]
fn discrete_integers_are_a_ring() {
    let r = CategoricalRingData::discrete_integers();
    let rep = validate_categorical_ring(&r);
    assert_eq!(rep.status, Status::Valid, "{rep}");
    let b = pi1_bimodule(&r).unwrap();
    assert!(b.group.is_trivial());
    assert_eq!(pi0_ring(&r).table, vec![vec![e(&[1])]]);
}

#[test]
fn integers_with_sign() {
    let r = CategoricalRingData::integers_with_sign();
    let rep = validate_categorical_ring(&r);
    assert_eq!(rep.status, Status::Valid, "{rep}");
    let b = pi1_bimodule(&r).unwrap();
    assert_eq!(b.left, vec![vec![e(&[1])]]);
    assert_eq!(b.right, vec![vec![e(&[1])]]);
    // parity scaling
    for x in -3..=3 {
        assert_eq!(r.act_left(&e(&[x]), &e(&[1])), e(&[x.rem_euclid(2)]));
    }
}

#[test]
fn zero_cells_break_multiexactness() {
    let mut r = CategoricalRingData::integers_with_sign();
    r.mult.cells[0] = CellFn::zero(r.base.b());
    let rep = validate_categorical_ring(&r);
    assert_eq!(rep.failed_checks().into_iter().collect::<Vec<_>>(), vec!["multiexact/biexact-square".to_string()]);
}

#[test]
fn non_associative_table_names_the_triple() {
    // (Z/2)³ with unit e0, e1² = e2, e2·e1 = e1
    let base = PicardPresentation::discrete(FgAbelianGroup::new(vec![2, 2, 2]).unwrap());
    let z = e(&[0, 0, 0]);
    let g = |i: usize| base.a().generator(i);
    let mut table = vec![vec![z.clone(); 3]; 3];
    for i in 0..3 {
        table[0][i] = g(i);
        table[i][0] = g(i);
    }
    table[1][1] = g(2);
    table[2][1] = g(1);
    let empty = vec![vec![]; 3];
    let unit = g(0);
    let r = CategoricalRingData::from_tables("bad", base, table, unit, empty.clone(), empty);
    let rep = validate_categorical_ring(&r);
    assert_eq!(rep.status, Status::Invalid);
    let locs: Vec<&str> = rep.failures().filter(|i| i.check == "associativity").map(|i| i.location.as_str()).collect();
    assert!(locs.contains(&"(e1, e1, e1)"), "{rep}");
    assert!(!rep.failed_checks().contains("unit"));
}

#[test]
fn tampered_action_is_a_sigma_mismatch() {
    let mut r = CategoricalRingData::integers_with_sign();
    r.right_act[0][0] = e(&[0]);
    assert!(matches!(pi1_bimodule(&r), Err(Error::SigmaMismatch(_))));
    let rep = validate_categorical_ring(&r);
    assert!(rep.failed_checks().contains("sigma-agreement"), "{rep}");
}

#[test]
fn bimodule_axioms_fail_for_inconsistent_tables() {
    // Z/2 ring acting on Z/2 by zero on the left: unit must act as identity
    let base = PicardPresentation::cyclic(2, 2, 0).unwrap();
    let r = CategoricalRingData::from_tables("z2", base, vec![vec![e(&[1])]], e(&[1]), vec![vec![e(&[0])]], vec![vec![e(&[1])]]);
    let rep = validate_categorical_ring(&r);
    assert!(rep.failed_checks().contains("unit-action"), "{rep}");
}

#[test]
fn k0_of_point_is_zero() {
    let p = Arc::new(point());
    let tensor = TriFunctorData::zero(vec![p.clone(), p.clone()], p.clone()).unwrap();
    let k0 = compute_k0_ring(&p, &tensor).unwrap();
    assert!(k0.group.is_trivial());
    assert_eq!(k0.report.status, Status::Valid, "{}", k0.report);
}

#[test]
fn k0_of_graded_lines_is_the_integers() {
    let (_, tensor) = graded_lines_tensor(2);
    let t = tensor.sources[0].clone();
    let k0 = compute_k0_ring(&t, &tensor).unwrap();
    assert_eq!(k0.group, FgAbelianGroup::integers());
    assert_eq!(k0.product, vec![vec![e(&[1])]]);
    assert_eq!(k0.unit, Some(e(&[1])));
    assert!(k0.determined);
    for o in &t.objects {
        let d = crate::trianglecat::parse_dims(o).unwrap();
        assert_eq!(k0.class_of(o), Some(&e(&[crate::trianglecat::euler(d)])));
    }
    assert_eq!(k0.report.status, Status::Valid, "{}", k0.report);
    assert!(k0.report.items.iter().any(|i| i.check == "euler" && i.verdict == crate::report::Verdict::Pass));
}

/// Objects `0, a, b`, no triangles, `a` a unit and `b² = a`.
fn bare(order: &[&str]) -> (Arc<TriangPresentation>, TriFunctorData) {
    let t = Arc::new(TriangPresentation {
        id: "bare".into(),
        objects: order.iter().map(|s| s.to_string()).collect(),
        zero: "0".into(),
        shift: order.iter().map(|s| (s.to_string(), s.to_string())).collect(),
        isos: order.iter().map(|s| IsoMorphism { id: format!("id{s}"), source: s.to_string(), target: s.to_string() }).collect(),
        identities: order.iter().map(|s| (s.to_string(), format!("id{s}"))).collect(),
        ..Default::default()
    });
    let table = [("a", "a", "a"), ("a", "b", "b"), ("b", "a", "b"), ("b", "b", "a")];
    let mut objects: BTreeMap<Vec<String>, String> = BTreeMap::new();
    for x in order {
        objects.insert(vec!["0".into(), x.to_string()], "0".into());
        objects.insert(vec![x.to_string(), "0".into()], "0".into());
    }
    for (x, y, z) in table {
        objects.insert(vec![x.into(), y.into()], z.into());
    }
    let f = TriFunctorData {
        id: "mult".into(),
        sources: vec![t.clone(), t.clone()],
        target: t.clone(),
        objects,
        isos: BTreeMap::new(),
        triangles: BTreeMap::new(),
        verdier: BTreeMap::new(),
        battery: None,
        pair_battery: None,
        anticommutativity_attested: true,
    };
    (t, f)
}

#[test]
fn k0_without_triangles_is_free_with_the_given_table() {
    let (t, f) = bare(&["0", "a", "b"]);
    let k0 = compute_k0_ring(&t, &f).unwrap();
    assert_eq!(k0.group.canonical(), FgAbelianGroup::new(vec![0, 0]).unwrap());
    let c = |o: &str| k0.class_of(o).unwrap().clone();
    assert_eq!(k0.multiply(&c("b"), &c("b")), c("a"));
    assert_eq!(k0.multiply(&c("a"), &c("b")), c("b"));
    assert_eq!(k0.unit, Some(c("a")));
    assert!(k0.determined);
}

#[test]
fn k0_group_ignores_generator_order() {
    let g1 = compute_k0_ring(&bare(&["0", "a", "b"]).0, &bare(&["0", "a", "b"]).1).unwrap().group;
    let g2 = compute_k0_ring(&bare(&["b", "0", "a"]).0, &bare(&["b", "0", "a"]).1).unwrap().group;
    assert!(g1.is_isomorphic(&g2));
}

#[test]
fn product_that_ignores_a_relation() {
    // declare a = b through an iso, then let the tensor tell them apart
    let (t, mut f) = bare(&["0", "a", "b"]);
    let mut t2 = (*t).clone();
    t2.isos.push(IsoMorphism { id: "s".into(), source: "a".into(), target: "b".into() });
    let t2 = Arc::new(t2);
    f.sources = vec![t2.clone(), t2.clone()];
    f.target = t2.clone();
    f.objects.insert(vec!["b".into(), "b".into()], "0".into());
    assert!(matches!(compute_k0_ring(&t2, &f), Err(Error::ProductNotWellDefined(_))));
}
