use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use multidet::algebra::{smith_normal_form, ChainComplexZ, Elem, FgAbelianGroup, IntMatrix};
use multidet::catring::{compute_k0_ring, pi1_bimodule, validate_categorical_ring, CategoricalRingData};
use multidet::cubes::{add_cubes, check_higher_coherence, degeneracy, face, random_cube, validate_cube};
use multidet::determinant::{random_instances, sum_determinants, validate_determinant, DeterminantData, InstanceKind};
use multidet::picard::{interchange_paths, validate_picard, PicardPresentation};
use multidet::trianglecat::{
    check_verdier, graded_lines, graded_lines_tensor, octahedron_to_2cube, validate_presentation, IsoMorphism,
    TriangPresentation,
};
use multidet::workspace::{load_workspace_str, WorkspaceFile};
use multidet::{Report, ReportItem, Status};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(proptest::collection::vec(-5i64..=5, cols), rows)
        .prop_map(move |r| if rows == 0 { IntMatrix::zeros(0, cols) } else { IntMatrix::from_rows(&r).unwrap() })
}

fn any_matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..=8, 0usize..=8).prop_flat_map(|(r, c)| matrix(r, c))
}

/// Small Picard presentations that pass validation.
fn picard() -> impl Strategy<Value = PicardPresentation> {
    (prop_oneof![Just(0u64), 2u64..=4], 1u64..=4, 0i64..4)
        .prop_filter_map("invalid presentation", |(m, k, s)| {
            let p = PicardPresentation::cyclic(m, k, s).ok()?;
            validate_picard(&p).is_valid().then_some(p)
        })
}

fn homology(c: &ChainComplexZ) -> Vec<FgAbelianGroup> {
    (0..c.levels().len()).map(|k| c.homology_at(k).unwrap()).collect()
}

fn same_groups(a: &[FgAbelianGroup], b: &[FgAbelianGroup]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.is_isomorphic(y))
}

fn permute_columns(m: &IntMatrix, perm: &[usize]) -> IntMatrix {
    let d = m.to_dense();
    let rows: Vec<Vec<BigInt>> = d.iter().map(|row| perm.iter().map(|&j| row[j].clone()).collect()).collect();
    IntMatrix::from_dense(&rows, perm.len())
}

fn permute_rows(m: &IntMatrix, perm: &[usize]) -> IntMatrix {
    let d = m.to_dense();
    IntMatrix::from_dense(&perm.iter().map(|&i| d[i].clone()).collect::<Vec<_>>(), m.cols())
}

fn valid_determinants(template: &DeterminantData, count: usize, seed: u64) -> Vec<DeterminantData> {
    let mut r = rng(seed);
    let mut out = vec![];
    while out.len() < count {
        let batch = random_instances(template, 8, &mut r).unwrap();
        out.extend(batch.into_iter().filter(|x| x.kind == InstanceKind::Repaired).map(|x| x.data));
    }
    out.truncate(count);
    out
}

fn graded() -> Arc<TriangPresentation> {
    Arc::new(graded_lines(2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_is_a_unimodular_diagonalisation(m in any_matrix()) {
        let s = smith_normal_form(&m).unwrap();
        prop_assert!(s.u.is_unimodular());
        prop_assert!(s.v.is_unimodular());
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|x| x > &BigInt::from(0)));
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]) == BigInt::from(0)));
    }

    #[test]
    fn homology_ignores_generator_order(a in (1usize..=4, 1usize..=3).prop_flat_map(|(n, k)| matrix(n, k)), seed in any::<u64>()) {
        // C2 = Z^k → C1 = Z^2k → C0 = Z^n with ∂1 = [A A], ∂2 = [I; −I]
        let (n, k) = (a.rows(), a.cols());
        let d = a.to_dense();
        let d1: Vec<Vec<BigInt>> = d.iter().map(|row| row.iter().chain(row).cloned().collect()).collect();
        let d1 = IntMatrix::from_dense(&d1, 2 * k);
        let d2 = IntMatrix::from_triplets(2 * k, k, (0..k).flat_map(|i| [(i, i, 1), (k + i, i, -1)])).unwrap();
        let c = ChainComplexZ::new(vec![n, 2 * k, k], vec![d1.clone(), d2.clone()]).unwrap();
        let mut perm: Vec<usize> = (0..2 * k).collect();
        perm.shuffle(&mut rng(seed));
        let c2 = ChainComplexZ::new(vec![n, 2 * k, k], vec![permute_columns(&d1, &perm), permute_rows(&d2, &perm)]).unwrap();
        prop_assert!(same_groups(&homology(&c), &homology(&c2)));
    }

    #[test]
    fn complexes_with_nonzero_square_are_rejected(a in matrix(2, 3), b in matrix(3, 2)) {
        let nonzero = !a.mul(&b).unwrap().is_zero();
        let c = ChainComplexZ::new(vec![2, 3, 2], vec![a, b]);
        prop_assert_eq!(c.is_err(), nonzero);
    }

    #[test]
    fn k_invariant_has_order_two(p in picard(), x in -6i64..=6) {
        let a = p.a().reduce(Elem(vec![x]));
        let k = p.k_invariant(&a);
        prop_assert!(p.b().is_zero(&p.b().scale(2, &k)));
    }

    #[test]
    fn interchange_paths_agree(p in picard(), xs in proptest::array::uniform8(-4i64..=4)) {
        let v = xs.map(|x| p.a().reduce(Elem(vec![x])));
        let (l, r) = interchange_paths(&p, &v);
        prop_assert_eq!(l, r);
    }

    #[test]
    fn commutassoc_is_trivial_on_zero(p in picard(), xs in proptest::array::uniform4(-4i64..=4)) {
        let [a, b, c, d] = xs.map(|x| p.a().reduce(Elem(vec![x])));
        let z = p.a().zero();
        prop_assert!(p.b().is_zero(&p.commutassoc(&a, &z, &c, &d)));
        prop_assert!(p.b().is_zero(&p.commutassoc(&a, &b, &z, &d)));
    }

    #[test]
    fn report_status_tracks_failures(verdicts in proptest::collection::vec(0u8..4, 0..12)) {
        let mut r = Report::new("prop");
        for (k, v) in verdicts.iter().enumerate() {
            let loc = k.to_string();
            r.push(match v {
                0 => ReportItem::pass("c", loc, ""),
                1 => ReportItem::fail("c", loc, ""),
                2 => ReportItem::note("c", loc, ""),
                _ => ReportItem::untestable("c", loc, ""),
            });
        }
        let r = r.finish();
        let fails = verdicts.contains(&1);
        prop_assert_eq!(r.status == Status::Invalid, fails);
        prop_assert_eq!(r.is_valid(), !fails);
        prop_assert_eq!(r.status.exit_code(), i32::from(fails));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cube_operations_stay_valid(p in picard(), n in 1usize..=3, seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_cube(&p, n, &mut r, 3);
        let t = random_cube(&p, n, &mut r, 3);
        prop_assert!(validate_cube(&p, &s).is_valid());
        for j in 0..n {
            for alpha in [-1, 0, 1] {
                let f = face(&s, j, alpha).unwrap();
                prop_assert!(validate_cube(&p, &f).is_valid(), "face {} {}", j, alpha);
            }
        }
        for j in 0..=n {
            for beta in [-1, 1] {
                let d = degeneracy(&p, &s, j, beta).unwrap();
                prop_assert!(validate_cube(&p, &d).is_valid(), "degeneracy {} {}", j, beta);
            }
        }
        prop_assert!(validate_cube(&p, &add_cubes(&p, &s, &t).unwrap()).is_valid());
    }

    #[test]
    fn random_cubes_are_coherent(p in picard(), n in 2usize..=3, seed in any::<u64>()) {
        let s = random_cube(&p, n, &mut rng(seed), 3);
        let rep = check_higher_coherence(&p, &s).unwrap();
        prop_assert!(rep.is_valid(), "{}", rep);
    }

    #[test]
    fn octahedra_become_verdier_squares(pick in any::<prop::sample::Index>()) {
        let mut t = graded_lines(2);
        prop_assume!(!t.octahedra.is_empty());
        let o = t.octahedra[pick.index(t.octahedra.len())].id.clone();
        let diagram = octahedron_to_2cube(&mut t, &o).unwrap();
        prop_assert!(validate_presentation(&t).is_valid());
        let rep = check_verdier(&t, &diagram).unwrap();
        prop_assert!(rep.is_valid(), "{}", rep);

        // unrelated additions keep the verdict
        t.objects.push("extra".into());
        t.shift.insert("extra".into(), "extra".into());
        t.isos.push(IsoMorphism { id: "id-extra".into(), source: "extra".into(), target: "extra".into() });
        t.identities.insert("extra".into(), "id-extra".into());
        prop_assert!(check_verdier(&t, &diagram).unwrap().is_valid());
    }

    #[test]
    fn broken_presentations_are_rejected(pick in any::<prop::sample::Index>(), which in 0u8..3) {
        let mut t = graded_lines(2);
        let check = match which {
            0 => {
                let k = pick.index(t.triangles.len());
                t.triangles[k].y = "nowhere".into();
                "triangle-objects"
            }
            1 => {
                let k = pick.index(t.isos.len());
                t.isos[k].target = "nowhere".into();
                "iso-endpoints"
            }
            _ => {
                prop_assume!(!t.compositions.is_empty());
                let k = pick.index(t.compositions.len());
                t.compositions[k].first = "no-such-iso".into();
                "composition"
            }
        };
        let rep = validate_presentation(&t);
        prop_assert!(rep.failed_checks().contains(check), "{}", rep);
    }

    #[test]
    fn sums_of_valid_determinants_are_valid(seed in any::<u64>()) {
        let template = DeterminantData::zero(vec![graded()], PicardPresentation::z_with_sign());
        let ds = valid_determinants(&template, 2, seed);
        prop_assert!(validate_determinant(&ds[0]).unwrap().is_valid());
        let s = sum_determinants(&ds[0], &ds[1]).unwrap();
        prop_assert!(validate_determinant(&s).unwrap().is_valid());
    }

    #[test]
    fn valid_determinants_vanish_on_zero(seed in any::<u64>()) {
        let t = graded();
        let template = DeterminantData::zero(vec![t.clone()], PicardPresentation::z_with_sign());
        let d = &valid_determinants(&template, 1, seed)[0];
        let v = &d.obj[&vec![t.zero.clone()]];
        prop_assert!(d.target.a().is_zero(v));
    }

    #[test]
    fn determinants_round_trip_through_json(seed in any::<u64>()) {
        let template = DeterminantData::zero(vec![graded()], PicardPresentation::z_with_sign());
        let inst = random_instances(&template, 3, &mut rng(seed)).unwrap();
        let mut f = WorkspaceFile::new();
        f.add_picard("Z-sign", &PicardPresentation::z_with_sign());
        f.add_presentation(&graded_lines(2));
        for (k, x) in inst.iter().enumerate() {
            let mut d = x.data.clone();
            d.id = format!("d{k}");
            f.add_determinant(&d, "Z-sign");
        }
        let text = serde_json::to_string(&f).unwrap();
        let once = load_workspace_str(&text).unwrap().emit();
        let twice = load_workspace_str(&once).unwrap().emit();
        prop_assert_eq!(&once, &twice);
        let ws = load_workspace_str(&once).unwrap();
        for (k, x) in inst.iter().enumerate() {
            prop_assert_eq!(&ws.determinants[&format!("d{k}")].obj, &x.data.obj);
        }
    }

    #[test]
    fn integer_ring_actions_are_a_bimodule(x in -5i64..=5, y in -5i64..=5, b in 0i64..2) {
        let r = CategoricalRingData::integers_with_sign();
        pi1_bimodule(&r).unwrap();
        let (x, y, b) = (Elem(vec![x]), Elem(vec![y]), Elem(vec![b]));
        let xy = r.multiply(&x, &y);
        prop_assert_eq!(r.act_left(&x, &r.act_left(&y, &b)), r.act_left(&xy, &b));
        prop_assert_eq!(r.act_right(&r.act_right(&b, &x), &y), r.act_right(&b, &xy));
        prop_assert_eq!(r.act_left(&x, &r.act_right(&b, &y)), r.act_right(&r.act_left(&x, &b), &y));
        prop_assert_eq!(r.act_left(&r.unit, &b), b.clone());
        prop_assert_eq!(r.act_right(&b, &r.unit), b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn cyclic_group_rings_validate(m in 2u64..=3, k in 1usize..=2) {
        // (Z/m)[C_k] on a discrete base
        let base = PicardPresentation::discrete(FgAbelianGroup::new(vec![m; k]).unwrap());
        let g = |i: usize| base.a().generator(i);
        let table = (0..k).map(|i| (0..k).map(|j| g((i + j) % k)).collect()).collect();
        let empty = vec![vec![]; k];
        let r = CategoricalRingData::from_tables("group-ring", base.clone(), table, g(0), empty.clone(), empty);
        let rep = validate_categorical_ring(&r);
        prop_assert!(rep.is_valid(), "{}", rep);
    }

    #[test]
    fn k0_ignores_object_order(seed in any::<u64>()) {
        let (target, tensor) = graded_lines_tensor(2);
        let base = compute_k0_ring(&target, &tensor).unwrap();

        let mut t = (*target).clone();
        t.objects.shuffle(&mut rng(seed));
        let t = Arc::new(t);
        let mut shuffled = tensor.clone();
        shuffled.sources = vec![t.clone(), t.clone()];
        shuffled.target = t.clone();
        let k0 = compute_k0_ring(&t, &shuffled).unwrap();
        prop_assert!(k0.group.is_isomorphic(&base.group));
        prop_assert_eq!(k0.report.status, base.report.status);
        // classes agree up to the identification of the two groups
        let euler: BTreeMap<&String, i64> = base.classes.keys().map(|o| (o, base.classes[o].0.iter().sum())).collect();
        let again: BTreeMap<&String, i64> = k0.classes.keys().map(|o| (o, k0.classes[o].0.iter().sum())).collect();
        prop_assert_eq!(euler.len(), again.len());
        prop_assert!(euler.iter().all(|(o, v)| again[o].abs() == v.abs()));
    }
}
