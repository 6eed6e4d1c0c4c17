use super::*;

#[test]
fn defects_hit_their_target() {
    for d in defect_catalogue() {
        assert!((d.run)(false).unwrap().is_valid(), "{}", d.name);
        let failed = (d.run)(true).unwrap().failed_checks();
        assert_eq!(failed.into_iter().collect::<Vec<_>>(), vec![d.target.to_string()], "{}", d.name);
    }
}

#[test]
fn fixtures_and_k0() {
    let r = run(&Options { only: [8, 9].into(), ..Default::default() });
    assert!(r.is_valid(), "{r}");
    assert_eq!(r.items.len(), 4);
}

#[test]
fn h0_oracle_on_small_groups() {
    assert!(h0_oracle(&FgAbelianGroup::cyclic(6)).unwrap().is_isomorphic(&FgAbelianGroup::cyclic(6)));
    assert!(h0_oracle(&FgAbelianGroup::trivial()).unwrap().is_trivial());
}

#[test]
#[ignore]
fn timings() {
    for (k, _) in CRITERIA {
        let t = std::time::Instant::now();
        let r = run(&Options { only: [k].into(), ..Default::default() });
        eprintln!("{k}: {:?}\n{r}", t.elapsed());
    }
}
