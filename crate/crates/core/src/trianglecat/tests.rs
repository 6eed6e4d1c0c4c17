use super::*;
use crate::report::Status;

#[test]
fn builtins_validate() {
    let p = point();
    assert_eq!(validate_presentation(&p).status, Status::Valid, "{}", validate_presentation(&p));
    let g = graded_lines(2);
    let r = validate_presentation(&g);
    assert_eq!(r.status, Status::Valid, "{r}");
    assert_eq!(g.objects.len(), 9);
}

#[test]
fn every_listed_certificate_checks() {
    let g = graded_lines(2);
    for d in &g.nine_diagrams {
        let r = check_verdier(&g, &d.id).unwrap();
        assert_eq!(r.status, Status::Valid, "{r}");
    }
}

#[test]
fn octahedra_become_certified_2cubes() {
    let mut g = graded_lines(2);
    let ids: Vec<String> = g.octahedra.iter().map(|o| o.id.clone()).collect();
    for id in ids {
        let d = octahedron_to_2cube(&mut g, &id).unwrap();
        let r = check_verdier(&g, &d).unwrap();
        assert_eq!(r.status, Status::Valid, "{r}");
        let diag = g.nine_diagram(&d).unwrap();
        let o = g.octahedron(&id).unwrap();
        assert_eq!(diag.rows[0], o.d1);
        assert_eq!(diag.rows[1], o.d2);
    }
    assert_eq!(validate_presentation(&g).status, Status::Valid);
}

#[test]
fn zero_octahedron_gives_zero_grid() {
    let mut p = point();
    let d = octahedron_to_2cube(&mut p, "zero").unwrap();
    let diag = p.nine_diagram(&d).unwrap().clone();
    assert!(diag.rows.iter().chain(&diag.cols).all(|t| t == "000"));
    assert!(check_verdier(&p, &d).unwrap().is_valid());
}

#[test]
fn degenerate_cubes_are_certified() {
    let mut g = graded_lines(2);
    let tris: Vec<String> = g.triangles.iter().map(|t| t.id.clone()).collect();
    for t in &tris {
        for (dir, beta) in [(1, -1), (1, 1), (2, -1), (2, 1)] {
            let d = degenerate_2cube(&mut g, t, dir, beta).unwrap();
            let r = check_verdier(&g, &d).unwrap();
            assert_eq!(r.status, Status::Valid, "{t} {dir} {beta}: {r}");
        }
    }
    assert_eq!(validate_presentation(&g).status, Status::Valid);
}

#[test]
fn seeded_presentation_defects() {
    let g = graded_lines(2);
    let mutate = |f: &dyn Fn(&mut TriangPresentation)| {
        let mut h = g.clone();
        f(&mut h);
        validate_presentation(&h).failed_checks()
    };
    // octahedron whose d4 has the wrong z′
    let d = mutate(&|h| {
        let o = h.octahedra.iter().position(|o| o.id.starts_with("A(")).unwrap();
        let other = h.triangles.iter().find(|t| t.id.starts_with("cone(")).unwrap().id.clone();
        h.octahedra[o].d4 = other;
    });
    assert!(d.contains("octahedron"), "{d:?}");
    let d = mutate(&|h| h.isos[3].target = "[2,2]".into());
    assert!(d.contains("composition") || d.contains("identities"), "{d:?}");
    let d = mutate(&|h| {
        let c = h.compositions.iter().position(|c| c.first.starts_with("sw")).unwrap();
        h.compositions[c].result = "id[0,1]".into();
    });
    assert!(d.contains("composition") || d.contains("inverses"), "{d:?}");
    let d = mutate(&|h| h.triangle_isos[0].iy = "nope".into());
    assert_eq!(d.into_iter().collect::<Vec<_>>(), vec!["triangle-iso".to_string()]);
    let d = mutate(&|h| {
        let a = h.certificates[3].a.clone();
        h.certificates[3].a = if a == "[0,1]" { "[1,0]".into() } else { "[0,1]".into() };
    });
    assert_eq!(d.into_iter().collect::<Vec<_>>(), vec!["verdier".to_string()]);
}

#[test]
fn verdier_is_monotone() {
    let g = graded_lines(2);
    let mut h = g.clone();
    h.objects.push("extra".into());
    h.shift.insert("extra".into(), "extra".into());
    h.triangles.push(Triangle { id: "junk".into(), x: "extra".into(), y: "extra".into(), z: "[0,0]".into(), f: None, g: None, h: None });
    for d in &g.nine_diagrams {
        assert!(check_verdier(&h, &d.id).unwrap().is_valid());
    }
}

#[test]
fn missing_certificate_is_an_error() {
    let mut g = graded_lines(2);
    let d = g.nine_diagrams[0].id.clone();
    g.certificates.retain(|c| c.diagram != d);
    assert!(matches!(check_verdier(&g, &d), Err(crate::Error::MissingCertificate(_))));
}

#[test]
fn functor_examples() {
    use std::sync::Arc;
    let g = Arc::new(graded_lines(2));
    let id = TriFunctorData::identity(g.clone());
    assert_eq!(check_multiexact_tri_functor(&id).status, Status::Valid);
    assert!(check_functor_verdier_admission(&id).is_valid());

    let p = Arc::new(point());
    let z = TriFunctorData::zero(vec![g.clone(), g.clone()], p).unwrap();
    assert_eq!(check_multiexact_tri_functor(&z).status, Status::Valid);
    assert_eq!(check_functor_verdier_admission(&z).status, Status::Valid);

    let (_, t) = graded_lines_tensor(2);
    let r = check_multiexact_tri_functor(&t);
    assert_eq!(r.status, Status::Valid, "{r}");
    assert!(r.items.iter().any(|i| i.verdict == crate::report::Verdict::Untestable));
    let r = check_functor_verdier_admission(&t);
    assert_eq!(r.status, Status::Valid, "{r}");

    let mut broken = t.clone();
    let k = broken.verdier.keys().next().unwrap().clone();
    broken.verdier.remove(&k);
    let r = check_functor_verdier_admission(&broken);
    assert_eq!(r.status, Status::Invalid);
    assert!(r.failures().any(|i| i.location.contains(&k.tuple[0])));
}
