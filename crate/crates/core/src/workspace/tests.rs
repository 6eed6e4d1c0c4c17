use super::*;
use crate::fixtures;

#[test]
fn empty_file_set() {
    let ws = load_workspace::<&str>(&[]).unwrap();
    assert!(ws.presentations.is_empty() && ws.determinants.is_empty());
    assert_eq!(ws, Workspace::empty());
}

#[test]
fn graded_lines_round_trip() {
    let ws = Workspace::from_file(fixtures::graded_lines_workspace()).unwrap();
    assert_eq!(ws.presentations.len(), 1);
    assert_eq!(ws.determinants.len(), 1);
    let text = ws.emit();
    let back = load_workspace_str(&text).unwrap();
    assert_eq!(back, ws);
    assert_eq!(back.emit(), text);
}

#[test]
fn every_fixture_round_trips() {
    for (name, f) in fixtures::all().unwrap() {
        let ws = Workspace::from_file(f).unwrap_or_else(|e| panic!("{name}: {e}"));
        let back = load_workspace_str(&ws.emit()).unwrap();
        assert_eq!(back, ws, "{name}");
    }
}

#[test]
fn dangling_triangle_reference() {
    let mut f = fixtures::two_squares_workspace().unwrap();
    f.presentations[0].octahedra[0].d3 = "no-such-triangle".into();
    match Workspace::from_file(f) {
        Err(Error::UnresolvedReference(m)) => assert!(m.contains("no-such-triangle"), "{m}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn dangling_determinant_entry() {
    let mut f = fixtures::graded_lines_workspace();
    f.determinants[0].tri[0].tuple = vec!["ghost".into()];
    assert!(matches!(Workspace::from_file(f), Err(Error::UnresolvedReference(m)) if m.contains("ghost")));
}

#[test]
fn duplicate_ids() {
    let mut f = fixtures::graded_lines_workspace();
    let d = f.determinants[0].clone();
    f.determinants.push(d);
    assert!(matches!(Workspace::from_file(f), Err(Error::DuplicateId(_))));
    let a = fixtures::rings_workspace();
    let ws = Workspace::from_file(a.clone()).unwrap();
    let again = ws.clone().merge(a.clone()).unwrap();
    assert_eq!(again, ws);
    let mut clash = a;
    clash.picard[0].pi1 = FgAbelianGroup::cyclic(2);
    assert!(matches!(ws.merge(clash), Err(Error::DuplicateId(_))));
}

#[test]
fn parse_errors_carry_positions() {
    let text = "{\n  \"multidet_schema\": 1,\n  \"picard\": [ { \"id\": 3 } ]\n}";
    match load_workspace_str(text) {
        Err(Error::Parse(m)) => assert!(m.starts_with("<input>:3:"), "{m}"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(load_workspace_str("{\"multidet_schema\": 2}"), Err(Error::Parse(_))));
    assert!(matches!(load_workspace_str("{\"multidet_schema\": 1, \"extra\": []}"), Err(Error::Parse(_))));
}

#[test]
fn resolved_rings_and_cells() {
    let ws = Workspace::from_file(fixtures::rings_workspace()).unwrap();
    for r in ws.catrings.values() {
        let rep = crate::catring::validate_categorical_ring(r);
        assert!(rep.is_valid(), "{rep}");
    }
}
