use std::sync::Arc;

use super::*;
use crate::algebra::Elem;
use crate::report::Status;
use crate::trianglecat::graded_lines;

#[test]
fn zero_determinant_is_valid_both_ways() {
    let g = Arc::new(graded_lines(2));
    let d = DeterminantData::zero(vec![g], PicardPresentation::z_with_sign());
    let r = validate_determinant(&d).unwrap();
    assert_eq!(r.status, Status::Valid, "{r}");
    let c = validate_cubical_determinant(&d).unwrap();
    assert_eq!(c.status, Status::Valid, "{c}");
}

#[test]
fn euler_determinant_exists() {
    let g = Arc::new(graded_lines(2));
    let d = euler_determinant(vec![g]).unwrap();
    let r = validate_determinant(&d).unwrap();
    assert_eq!(r.status, Status::Valid, "{r}");
    let c = validate_cubical_determinant(&d).unwrap();
    assert_eq!(c.status, Status::Valid, "{c}");
}

#[test]
fn random_instances_agree() {
    use rand::SeedableRng;
    let g = Arc::new(graded_lines(2));
    let template = DeterminantData::zero(vec![g.clone()], PicardPresentation::z_with_sign());
    let cb = CubicalBattery::new(&template.sources).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let inst = random_instances(&template, 200, &mut rng).unwrap();
    let mut splits = vec![];
    for x in &inst {
        let r = cubical::cross_check_with(&cb, &x.data);
        if x.kind == InstanceKind::Repaired {
            assert!(validate_multideterminant(&x.data).unwrap().is_valid());
        }
        if r.status != Status::Valid {
            splits.push(r.to_string());
        }
    }
    assert!(splits.is_empty(), "{}", splits.join("\n"));
}

#[test]
fn tensor_composite() {
    let (target, f) = crate::trianglecat::graded_lines_tensor(2);
    let e = euler_determinant(vec![target.clone()]).unwrap();
    assert!(validate_determinant(&e).unwrap().is_valid());
    let c = compose_with_multiexact(&e, &f).unwrap();
    let r = validate_multideterminant(&c).unwrap();
    assert!(r.is_valid(), "{r}");
    let q = validate_cubical_determinant(&c).unwrap();
    assert!(q.is_valid(), "{q}");
}

#[test]
fn random_composites() {
    use rand::SeedableRng;
    let (target, f) = crate::trianglecat::graded_lines_tensor(2);
    let template = DeterminantData::zero(vec![target.clone()], PicardPresentation::z_with_sign());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let inst = random_instances(&template, 30, &mut rng).unwrap();
    let mut bad = vec![];
    for x in inst.iter().filter(|x| x.kind == InstanceKind::Repaired) {
        let c = compose_with_multiexact(&x.data, &f).unwrap();
        let r = validate_multideterminant(&c).unwrap();
        if !r.is_valid() {
            bad.push(r.to_string());
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn bideterminant_full_battery() {
    let g = Arc::new(graded_lines(2));
    let d = euler_determinant(vec![g.clone(), g.clone()]).unwrap();
    let r = validate_multideterminant(&d).unwrap();
    assert!(r.is_valid(), "{r}");
    let c = validate_cubical_determinant(&d).unwrap();
    assert!(c.is_valid(), "{c}");
}

fn product_euler(corrected: bool) -> DeterminantData {
    product_euler_determinant(Arc::new(graded_lines(2)), corrected).unwrap()
}

#[test]
fn naive_product_euler_fails_two_triangles_only() {
    let d = product_euler(false);
    let r = validate_multideterminant(&d).unwrap();
    assert_eq!(r.status, Status::Invalid);
    assert_eq!(r.failed_checks().into_iter().collect::<Vec<_>>(), vec!["two-triangles".to_string()], "{r}");
    let odd = |x: &str| crate::trianglecat::euler(crate::trianglecat::parse_dims(x).unwrap()) % 2 != 0;
    let g = &d.sources[0];
    for item in r.failures() {
        let ids: Vec<&str> = item.location.split(" ⊗ ").collect();
        let (a, b) = (g.triangle(ids[0]).unwrap(), g.triangle(ids[1]).unwrap());
        assert!(odd(&a.x) && odd(&a.z) && odd(&b.x) && odd(&b.z), "{}", item.location);
    }
    let fixed = product_euler(true);
    let r = validate_multideterminant(&fixed).unwrap();
    assert_eq!(r.status, Status::Valid, "{r}");
}

fn graded() -> Arc<crate::trianglecat::TriangPresentation> {
    Arc::new(graded_lines(2))
}

fn chi(x: &str) -> i64 {
    crate::trianglecat::euler(crate::trianglecat::parse_dims(x).unwrap())
}

#[test]
fn zero_additivity_fails_exactly_at_odd_pairs() {
    let g = graded();
    let mut d = DeterminantData::zero(vec![g.clone()], PicardPresentation::z_with_sign());
    for (t, v) in d.obj.iter_mut() {
        *v = Elem(vec![chi(&t[0])]);
    }
    let r = validate_determinant(&d).unwrap();
    assert_eq!(r.failed_checks().into_iter().collect::<Vec<_>>(), vec!["commutativity".to_string()]);
    let flagged: std::collections::BTreeSet<String> = r.failures().map(|i| i.location.clone()).collect();
    let expected: std::collections::BTreeSet<String> =
        g.sums.iter().filter(|s| chi(&s.x) * chi(&s.y) % 2 != 0).map(|s| format!("{} ⊕ {}", s.x, s.y)).collect();
    assert_eq!(flagged, expected);
    assert!(!expected.is_empty());
    assert!(validate_determinant(&euler_determinant(vec![g]).unwrap()).unwrap().is_valid());
}

/// Net coefficient of `v` in `e`, mod 2.
fn net(e: &Equation, v: &Var) -> i64 {
    let c = e.lhs.iter().filter(|x| *x == v).count() as i64 - e.rhs.iter().filter(|x| *x == v).count() as i64;
    c.rem_euclid(2)
}

#[test]
fn one_perturbed_entry_breaks_exactly_its_equations() {
    let d = euler_determinant(vec![graded()]).unwrap();
    let eqs = axiom_equations(&d);
    for key in d.tri.keys().step_by(7) {
        let mut bad = d.clone();
        let v = bad.tri.get_mut(key).unwrap();
        *v = Elem(vec![(v.0[0] + 1) % 2]);
        let r = validate_determinant(&bad).unwrap();
        let var = Var::Tri(key.0, key.1.clone());
        let expected: std::collections::BTreeSet<(String, String)> =
            eqs.iter().filter(|e| net(e, &var) != 0).map(|e| (e.check.to_string(), e.location.clone())).collect();
        let got: std::collections::BTreeSet<(String, String)> = r.failures().map(|i| (i.check.clone(), i.location.clone())).collect();
        assert_eq!(got, expected, "{key:?}");
    }
}

#[test]
fn triangle_function_defect_names_the_pair() {
    let mut d = product_euler(true);
    let key = (0usize, vec!["sw([0,1],[1,0])".to_string(), "[0,1]".to_string()]);
    let v = d.iso.get_mut(&key).unwrap();
    *v = Elem(vec![(v.0[0] + 1) % 2]);
    let r = validate_multideterminant(&d).unwrap();
    assert!(r.failed_checks().contains("triangle-function"));
    assert!(r.failures().any(|i| i.check == "triangle-function" && i.location.starts_with("sw([0,1],[1,0]) ⊗ ")));
}

#[test]
fn zero_lemma_violation() {
    let mut d = DeterminantData::zero(vec![graded()], PicardPresentation::z_with_sign());
    d.obj.insert(vec!["[0,0]".into()], Elem(vec![1]));
    let r = validate_cubical_determinant(&d).unwrap();
    assert!(r.failed_checks().contains("zero-lemma"), "{r}");
}

#[test]
fn cross_check_verdicts() {
    let d = DeterminantData::zero(vec![graded()], PicardPresentation::z_with_sign());
    let r = cross_check_definitions(&d);
    assert_eq!(r.status, Status::Valid);
    assert!(r.items.iter().any(|i| i.detail == "consistent-pass"));
    // drop the sum entries: the axiomatic side loses commutativity while
    // the listed commutativity 2-cubes still constrain the cubical side
    let mut g = graded_lines(2);
    g.sums.clear();
    let mut d = DeterminantData::zero(vec![Arc::new(g)], PicardPresentation::z_with_sign());
    for (t, v) in d.obj.iter_mut() {
        *v = Elem(vec![chi(&t[0])]);
    }
    let r = cross_check_definitions(&d);
    assert_eq!(r.status, Status::Invalid, "{r}");
    let item = r.failures().next().unwrap();
    assert!(item.detail.contains("only the cubical side fails") && item.detail.contains("2-cube"), "{}", item.detail);
}

#[test]
fn sums() {
    let g = graded();
    let e = euler_determinant(vec![g.clone()]).unwrap();
    let z = DeterminantData::zero(vec![g.clone()], PicardPresentation::z_with_sign());
    let s = sum_determinants(&e, &z).unwrap();
    assert_eq!((s.obj.clone(), s.iso.clone(), s.tri.clone()), (e.obj.clone(), e.iso.clone(), e.tri.clone()));
    let ee = sum_determinants(&e, &e).unwrap();
    assert!(ee.obj.iter().all(|(t, v)| v.0[0] == 2 * chi(&t[0])));
    assert!(validate_determinant(&ee).unwrap().is_valid());
    let other = DeterminantData::zero(vec![g], PicardPresentation::z2_with_sign());
    assert!(matches!(sum_determinants(&e, &other), Err(crate::error::Error::MismatchedSignature(_))));
}

#[test]
fn compositions() {
    let g = graded();
    let e = euler_determinant(vec![g.clone()]).unwrap();
    let id = crate::trianglecat::TriFunctorData::identity(g.clone());
    let c = compose_with_multiexact(&e, &id).unwrap();
    assert_eq!((c.obj.clone(), c.tri.clone()), (e.obj.clone(), e.tri.clone()));
    assert!(c.iso.iter().all(|(k, v)| e.iso.get(k).is_none_or(|w| w == v)));

    let (target, f) = crate::trianglecat::graded_lines_tensor(2);
    let et = euler_determinant(vec![target.clone()]).unwrap();
    let c = compose_with_multiexact(&et, &f).unwrap();
    assert!(validate_multideterminant(&c).unwrap().is_valid());
    let independent = product_euler(true);
    assert!(c.obj.iter().all(|(t, v)| independent.obj[t] == *v));

    let mut broken = f.clone();
    let key = broken.verdier.keys().next().unwrap().clone();
    broken.verdier.remove(&key);
    assert!(matches!(compose_with_multiexact(&et, &broken), Err(crate::error::Error::VerdierAdmissionMissing(_))));
}

#[test]
fn morphisms() {
    let e = euler_determinant(vec![graded()]).unwrap();
    let zero_theta: std::collections::BTreeMap<_, _> = e.obj.keys().map(|t| (t.clone(), Elem(vec![0]))).collect();
    let one_theta: std::collections::BTreeMap<_, _> = e.obj.keys().map(|t| (t.clone(), Elem(vec![1]))).collect();
    let m = DetMorphismData { d1: e.clone(), d2: e.clone(), theta: zero_theta };
    assert_eq!(check_det_morphism(&m).unwrap().status, Status::Valid);
    let tw = twist(&e, &one_theta);
    assert!(validate_determinant(&tw).unwrap().is_valid());
    let m = DetMorphismData { d1: e.clone(), d2: tw, theta: one_theta.clone() };
    assert_eq!(check_det_morphism(&m).unwrap().status, Status::Valid);
    // θ ≡ 1 from d to itself: b + tri = tri + 2b fails on every triangle in Z/2
    let m = DetMorphismData { d1: e.clone(), d2: e.clone(), theta: one_theta };
    let r = check_det_morphism(&m).unwrap();
    assert_eq!(r.failures().filter(|i| i.check == "det-morphism").count(), e.tri.len());
    assert!(!r.failed_checks().contains("naturality"));
    let mut other = e.clone();
    other.obj.insert(vec!["[1,0]".into()], Elem(vec![5]));
    let m = DetMorphismData { d1: e, d2: other, theta: Default::default() };
    assert!(matches!(check_det_morphism(&m), Err(crate::error::Error::ObjMismatch(_))));
}

#[test]
fn factorizations() {
    let g = graded();
    let e = euler_determinant(vec![g.clone()]).unwrap();
    let f = crate::picard::PicardFunctorData::identity(&e.target);
    let zero: std::collections::BTreeMap<_, _> = e.obj.keys().map(|t| (t.clone(), Elem(vec![0]))).collect();
    let ones: std::collections::BTreeMap<_, _> = e.obj.keys().map(|t| (t.clone(), Elem(vec![1]))).collect();
    assert_eq!(check_universal_factorization(&e, &e, &f, &zero).unwrap().status, Status::Valid);
    let tw = twist(&e, &ones);
    assert_eq!(check_universal_factorization(&e, &tw, &f, &ones).unwrap().status, Status::Valid);
    let mut bent = ones.clone();
    bent.insert(vec!["[1,1]".into()], Elem(vec![0]));
    let r = check_universal_factorization(&e, &tw, &f, &bent).unwrap();
    for item in r.failures() {
        let id = &item.location;
        let touches = match g.triangle(id) {
            Some(t) => t.objects().contains(&"[1,1]"),
            None => g.iso(id).is_some_and(|i| i.source == "[1,1]" || i.target == "[1,1]"),
        };
        assert!(touches, "{id}");
    }
    let expected = g.triangles.iter().filter(|t| {
        // α enters as α(y) − α(z) − α(x); a net count of 0 mod 2 cancels
        let n = [&t.x, &t.y, &t.z].iter().filter(|o| o.as_str() == "[1,1]").count();
        n % 2 == 1
    });
    assert_eq!(r.failures().filter(|i| i.check == "factorization").count(), expected.count());
}
