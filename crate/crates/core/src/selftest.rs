//! The acceptance suite over the bundled fixtures.
//!
//! Every criterion reports one item `criterion-k`; the seeded-defect
//! catalogue adds one item per mutation under `criterion-10`. Reports carry
//! no timing so that runs with equal seeds are byte-identical.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{invariant_factors, Elem, FgAbelianGroup, IntMatrix};
use crate::catring::{compute_k0_ring, validate_categorical_ring, CategoricalRingData};
use crate::cubes::{add_cubes, check_cubical_relations, check_higher_coherence, cube_count, random_cube, validate_cube, Cube};
use crate::determinant::{
    compose_with_multiexact, cross_check_definitions, random_instances, sum_determinants, validate_determinant,
    validate_multideterminant, DeterminantData, InstanceKind,
};
use crate::error::{Error, Result};
use crate::picard::{check_multiexact_picard_functor, validate_picard, CellFn, PicardFunctorData, PicardPresentation};
use crate::qcomplex::{check_degenerate_span, generic_boundary_square, q_homology, streaming_square_check, DiscreteBase, QComplex};
use crate::report::{Report, ReportItem};
use crate::trianglecat::{
    check_functor_verdier_admission, check_multiexact_tri_functor, check_verdier, euler, parse_dims, validate_presentation,
    TriFunctorData, TriangPresentation,
};
use crate::workspace::{load_workspace_str, Workspace};

pub const DEFAULT_SEED: u64 = 42;

const GRADED_LINES: &str = include_str!("../../../fixtures/graded_lines.json");
const GRADED_LINES_TENSOR: &str = include_str!("../../../fixtures/graded_lines_tensor.json");
const TWO_SQUARES: &str = include_str!("../../../fixtures/two_squares.json");
const RINGS: &str = include_str!("../../../fixtures/rings.json");
const CUBES: &str = include_str!("../../../fixtures/cubes.json");
const SEEDED_INVALID_DET: &str = include_str!("../../../fixtures/seeded_invalid_det.json");

/// Bundled fixture text by file stem.
pub fn bundled(stem: &str) -> Option<&'static str> {
    Some(match stem {
        "graded_lines" => GRADED_LINES,
        "graded_lines_tensor" => GRADED_LINES_TENSOR,
        "two_squares" => TWO_SQUARES,
        "rings" => RINGS,
        "cubes" => CUBES,
        "seeded_invalid_det" => SEEDED_INVALID_DET,
        _ => return None,
    })
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    /// Enumeration cap for Q-complex levels.
    pub cap: u64,
    /// Criteria to run; empty runs all.
    pub only: BTreeSet<u8>,
}

impl Default for Options {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, cap: crate::qcomplex::DEFAULT_CUBE_CAP, only: BTreeSet::new() }
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "q-complex soundness"),
    (2, "H0 identification"),
    (3, "cubical relations"),
    (4, "cube-sum closure"),
    (5, "higher coherence"),
    (6, "determinant equivalence"),
    (7, "determinant closure"),
    (8, "bundled Verdier fixtures"),
    (9, "K0 ring"),
    (10, "seeded-defect completeness"),
];

pub fn run(opts: &Options) -> Report {
    run_timed(opts).0
}

/// Also returns the wall time per criterion, kept out of the report.
pub fn run_timed(opts: &Options) -> (Report, Vec<(u8, std::time::Duration)>) {
    let mut report = Report::new("selftest");
    let mut times = vec![];
    for (k, name) in CRITERIA {
        if !opts.only.is_empty() && !opts.only.contains(&k) {
            continue;
        }
        let started = std::time::Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(k as u64));
        let check = format!("criterion-{k}");
        let outcome = match k {
            1 => criterion_1(opts.cap, &mut rng),
            2 => criterion_2(opts.cap),
            3 => criterion_3(&mut rng),
            4 => criterion_4(&mut rng),
            5 => criterion_5(&mut rng),
            6 => criterion_6(&mut rng),
            7 => criterion_7(&mut rng),
            8 => criterion_8(),
            9 => criterion_9(),
            _ => criterion_10(),
        };
        match outcome {
            Ok(items) => {
                for (ok, location, detail) in items {
                    let location = if location.is_empty() { name.to_string() } else { location };
                    report.push(if ok {
                        ReportItem::pass(&check, location, detail)
                    } else {
                        ReportItem::fail(&check, location, detail)
                    });
                }
            }
            Err(e) => report.push(ReportItem::fail(&check, name, format!("error: {e}"))),
        }
        times.push((k, started.elapsed()));
    }
    (report.finish(), times)
}

/// `(holds, location, detail)`; an empty location means the criterion itself.
type Outcome = Result<Vec<(bool, String, String)>>;

fn single(ok: bool, detail: String) -> Outcome {
    Ok(vec![(ok, String::new(), detail)])
}

fn four_groups() -> Vec<FgAbelianGroup> {
    [vec![2], vec![3], vec![4], vec![2, 2]].into_iter().map(|f| FgAbelianGroup::new(f).expect("finite")).collect()
}

fn criterion_1(cap: u64, rng: &mut ChaCha8Rng) -> Outcome {
    let mut bad = vec![];
    let mut notes = vec![];
    for a in four_groups() {
        let q = QComplex::build(&a, 3, cap, false)?;
        for (n, ok) in q.check_square_zero() {
            if !ok {
                bad.push(format!("{a}: ∂∂ ≠ 0 at level {n}"));
            }
        }
        let base = DiscreteBase::new(a.clone())?;
        let mut degenerate = 0;
        for n in 1..=4 {
            let (checked, off) = check_degenerate_span(&base, n, cap)?;
            degenerate += checked;
            if !off.is_empty() {
                bad.push(format!("{a}: {} degenerate {n}-cubes leave the span", off.len()));
            }
        }
        let (sampled, off, _) = streaming_square_check(&base, 4, 2000, rng);
        if !off.is_empty() {
            bad.push(format!("{a}: {} sampled 4-cubes with ∂∂ ≠ 0", off.len()));
        }
        notes.push(format!("{a}: matrices to level 3, {degenerate} degenerate cubes, {sampled} sampled 4-cubes"));
    }
    let z2 = FgAbelianGroup::cyclic(2);
    let q = QComplex::build(&z2, 4, cap, false)?;
    if !q.check_square_zero().iter().all(|(_, ok)| *ok) {
        bad.push("Z/2: ∂₃∂₄ ≠ 0".into());
    }
    notes.push(format!("Z/2 level 4 matrix with {} columns", q.levels[4].len()));
    if !generic_boundary_square(4).is_empty() {
        bad.push("generic 4-cube: ∂∂ ≠ 0".into());
    }
    let ok = bad.is_empty();
    single(ok, if ok { notes.join("; ") } else { bad.join("; ") })
}

/// `Z[A] / ⟨[x] + [z] - [x+z], [0]⟩`, computed directly.
pub fn h0_oracle(a: &FgAbelianGroup) -> Result<FgAbelianGroup> {
    let els = a.elements().ok_or_else(|| Error::InvalidGroup(format!("{a} is infinite")))?;
    let n = els.len();
    let idx = |x: &Elem| a.index_of(x).expect("element of A");
    let mut triplets = vec![];
    let mut col = 0;
    for x in &els {
        for z in &els {
            for (row, sign) in [(idx(x), 1), (idx(z), 1), (idx(&a.add(x, z)), -1)] {
                triplets.push((row, col, sign));
            }
            col += 1;
        }
    }
    triplets.push((idx(&a.zero()), col, 1));
    let m = IntMatrix::from_triplets(n, col + 1, triplets)?;
    let f = invariant_factors(&m)?;
    let mut factors: Vec<u64> = f.iter().filter_map(|d| d.to_u64()).filter(|&d| d != 1).collect();
    factors.extend(std::iter::repeat_n(0, n - f.len()));
    FgAbelianGroup::new(factors)
}

fn criterion_2(cap: u64) -> Outcome {
    let mut out = vec![];
    for a in four_groups() {
        let h = q_homology(&a, 0, cap)?;
        let o = h0_oracle(&a)?;
        out.push((h.is_isomorphic(&a) && o.is_isomorphic(&h), a.to_string(), format!("H0 = {h}, oracle {o}")));
    }
    Ok(out)
}

fn criterion_3(rng: &mut ChaCha8Rng) -> Outcome {
    let mut out = vec![];
    for m in [2, 3] {
        let p = PicardPresentation::discrete(FgAbelianGroup::cyclic(m));
        let budget = cube_count(&p, 3).and_then(|c| c.to_usize()).unwrap_or(usize::MAX);
        let r = check_cubical_relations(&p, budget, rng)?;
        out.push((r.is_valid(), format!("discrete Z/{m}"), relation_detail(&r)));
    }
    let r = check_cubical_relations(&PicardPresentation::z2_with_sign(), 1000, rng)?;
    out.push((r.is_valid(), "(Z/2, Z/2, xy)".into(), relation_detail(&r)));
    Ok(out)
}

fn relation_detail(r: &Report) -> String {
    let fails = r.failures().count();
    let supply: Vec<String> = r.items.iter().filter(|i| i.check == "supply").map(|i| format!("{} {}", i.location, i.detail)).collect();
    format!("{fails} violations; {}", supply.join(", "))
}

fn criterion_4(rng: &mut ChaCha8Rng) -> Outcome {
    let p = PicardPresentation::z_with_sign();
    let mut bad = 0;
    for _ in 0..500 {
        let s = random_cube(&p, 2, rng, 3);
        let t = random_cube(&p, 2, rng, 3);
        if !validate_cube(&p, &s).is_valid() || !validate_cube(&p, &t).is_valid() {
            return Err(Error::Invalid("random cube does not validate".into()));
        }
        if !validate_cube(&p, &add_cubes(&p, &s, &t)?).is_valid() {
            bad += 1;
        }
    }
    single(bad == 0, format!("{bad} of 500 sums invalid"))
}

/// Adds one to a structure entry of a 3-cube, breaking one pentagon.
pub fn break_pentagon(p: &PicardPresentation, s: &Cube) -> Cube {
    let mut t = s.clone();
    let one = p.b().generator(0);
    t.structure[0][4] = p.b().add(&t.structure[0][4], &one);
    t
}

fn criterion_5(rng: &mut ChaCha8Rng) -> Outcome {
    let p = PicardPresentation::z2_with_sign();
    let mut mismatches = 0;
    let mut first = None;
    for _ in 0..100 {
        let s = random_cube(&p, 3, rng, 1);
        if !validate_cube(&p, &s).is_valid() {
            return Err(Error::Invalid("random cube does not validate".into()));
        }
        mismatches += check_higher_coherence(&p, &s)?.failures().count();
        first.get_or_insert(s);
    }
    let broken = break_pentagon(&p, first.as_ref().expect("100 cubes"));
    let caught = check_higher_coherence(&p, &broken)?.failures().count();
    Ok(vec![
        (mismatches == 0, "100 valid 3-cubes".into(), format!("{mismatches} mismatches")),
        (caught > 0, "broken pentagon".into(), format!("{caught} mismatches detected")),
    ])
}

fn workspace(stem: &str) -> Result<Workspace> {
    load_workspace_str(bundled(stem).expect("bundled fixture"))
}

fn graded_lines() -> Result<Arc<TriangPresentation>> {
    workspace("graded_lines")?
        .presentations
        .get("graded-lines")
        .cloned()
        .ok_or_else(|| Error::UnresolvedReference("graded-lines".into()))
}

fn tensor() -> Result<TriFunctorData> {
    let ws = workspace("graded_lines_tensor")?;
    ws.tri_functors.into_values().next().ok_or_else(|| Error::UnresolvedReference("tensor functor".into()))
}

fn criterion_6(rng: &mut ChaCha8Rng) -> Outcome {
    let template = DeterminantData::zero(vec![graded_lines()?], PicardPresentation::z_with_sign());
    let mut split = 0;
    let mut valid = 0;
    let instances = random_instances(&template, 200, rng)?;
    for x in &instances {
        let r = cross_check_definitions(&x.data);
        if !r.is_valid() {
            split += 1;
        }
        if validate_multideterminant(&x.data)?.is_valid() {
            valid += 1;
        }
    }
    single(split == 0, format!("{split} split verdicts over {} instances ({valid} valid)", instances.len()))
}

/// Valid random determinants: the repaired instances, drawn until `count`.
fn valid_determinants(template: &DeterminantData, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<DeterminantData>> {
    let mut out = vec![];
    while out.len() < count {
        let batch = random_instances(template, 2 * (count - out.len()) + 4, rng)?;
        out.extend(batch.into_iter().filter(|x| x.kind == InstanceKind::Repaired).map(|x| x.data));
    }
    out.truncate(count);
    Ok(out)
}

fn criterion_7(rng: &mut ChaCha8Rng) -> Outcome {
    const TRIALS: usize = 200;
    let template = DeterminantData::zero(vec![graded_lines()?], PicardPresentation::z_with_sign());
    let dets = valid_determinants(&template, 2 * TRIALS, rng)?;
    let mut bad_sums = 0;
    for pair in dets.chunks(2) {
        if !validate_determinant(&sum_determinants(&pair[0], &pair[1])?)?.is_valid() {
            bad_sums += 1;
        }
    }
    let f = tensor()?;
    let admitted = check_functor_verdier_admission(&f).is_valid() && check_multiexact_tri_functor(&f).is_valid();
    let template = DeterminantData::zero(vec![f.target.clone()], PicardPresentation::z_with_sign());
    let mut bad_comps = 0;
    for d in valid_determinants(&template, TRIALS, rng)? {
        if !validate_multideterminant(&compose_with_multiexact(&d, &f)?)?.is_valid() {
            bad_comps += 1;
        }
    }
    Ok(vec![
        (bad_sums == 0, "sums".into(), format!("{bad_sums} of {TRIALS} sums invalid")),
        (admitted && bad_comps == 0, "compositions".into(), format!("{bad_comps} of {TRIALS} composites invalid; tensor admitted: {admitted}")),
    ])
}

fn criterion_8() -> Outcome {
    let ws = workspace("two_squares")?;
    let t = ws.presentations.get("two-squares").ok_or_else(|| Error::UnresolvedReference("two-squares".into()))?;
    let mut out = vec![];
    let p = validate_presentation(t);
    out.push((p.is_valid(), "presentation".into(), format!("{}", p.status)));
    if t.nine_diagrams.len() != 2 {
        return Err(Error::Invalid(format!("expected two diagrams, found {}", t.nine_diagrams.len())));
    }
    for d in &t.nine_diagrams {
        let r = check_verdier(t, &d.id)?;
        let detail = match r.failures().next() {
            Some(f) => format!("{}: {}", f.location, f.detail),
            None => format!("certificate checks ({} items)", r.items.len()),
        };
        out.push((r.is_valid(), d.id.clone(), detail));
    }
    Ok(out)
}

/// Invariant factors of `Z^objects / ⟨[x] - [y] + [z], [a] - [b] for isos, [0]⟩`.
fn k0_group_oracle(t: &TriangPresentation) -> Result<FgAbelianGroup> {
    let n = t.objects.len();
    let row = |x: &str| t.objects.iter().position(|o| o == x).expect("listed object");
    let mut triplets = vec![];
    let mut col = 0;
    for tri in &t.triangles {
        triplets.push((row(&tri.x), col, 1));
        triplets.push((row(&tri.y), col, -1));
        triplets.push((row(&tri.z), col, 1));
        col += 1;
    }
    for f in &t.isos {
        triplets.push((row(&f.source), col, 1));
        triplets.push((row(&f.target), col, -1));
        col += 1;
    }
    triplets.push((row(&t.zero), col, 1));
    let f = invariant_factors(&IntMatrix::from_triplets(n, col + 1, triplets)?)?;
    let mut factors: Vec<u64> = f.iter().filter_map(|d| d.to_u64()).filter(|&d| d != 1).collect();
    factors.extend(std::iter::repeat_n(0, n - f.len()));
    FgAbelianGroup::new(factors)
}

fn criterion_9() -> Outcome {
    let f = tensor()?;
    let t = f.sources[0].clone();
    let k0 = compute_k0_ring(&t, &f)?;
    let oracle = k0_group_oracle(&t)?;
    let is_z = k0.group == FgAbelianGroup::integers();
    let mut bad = vec![];
    if !k0.group.is_isomorphic(&oracle) {
        bad.push(format!("group {} but oracle {oracle}", k0.group));
    }
    if is_z {
        let z = |k: i64| Elem(vec![k]);
        for x in -3..=3 {
            for y in -3..=3 {
                if k0.multiply(&z(x), &z(y)) != z(x * y) {
                    bad.push(format!("{x}·{y}"));
                }
            }
        }
        for (tuple, img) in &f.objects {
            let (Some(a), Some(b), Some(c)) = (k0.class_of(&tuple[0]), k0.class_of(&tuple[1]), k0.class_of(img)) else {
                continue;
            };
            if k0.multiply(a, b) != *c {
                bad.push(format!("[{}]·[{}] ≠ [{img}]", tuple[0], tuple[1]));
            }
        }
        for o in &t.objects {
            let chi = parse_dims(o).map(euler);
            if chi.map(z).as_ref() != k0.class_of(o) {
                bad.push(format!("class of {o} is not its Euler characteristic"));
            }
        }
    } else {
        bad.push(format!("additive group {}", k0.group));
    }
    if !k0.report.is_valid() {
        bad.push("K0 report invalid".into());
    }
    let ok = bad.is_empty();
    single(
        ok,
        if ok {
            format!("K0 = {} (oracle {oracle}), product = integer multiplication, unit {:?}", k0.group, k0.unit.map(|u| u.0))
        } else {
            bad.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
    )
}

/// A single-defect mutation: the check run on the intact and on the mutated
/// data, and the one check id expected to fail.
pub struct Defect {
    pub name: &'static str,
    pub target: &'static str,
    pub run: fn(bool) -> Result<Report>,
}

pub fn defect_catalogue() -> Vec<Defect> {
    vec![
        Defect { name: "symmetry not antisymmetric", target: "antisymmetry", run: defect_antisymmetry },
        Defect { name: "symmetry ignores generator order", target: "order-compatibility", run: defect_order },
        Defect { name: "1-cube with wrong middle vertex", target: "sum-constraint", run: defect_sum_constraint },
        Defect { name: "square with a bad structure iso", target: "pentagon", run: defect_pentagon },
        Defect { name: "3-cube with a broken pentagon", target: "decomposition", run: defect_decomposition },
        Defect { name: "sum with its triangles swapped", target: "sums", run: defect_shift },
        Defect { name: "Verdier certificate with swapped octahedra", target: "verdier", run: defect_verdier },
        Defect { name: "tensor without a triangle image", target: "triangle-image", run: defect_triangle_image },
        Defect { name: "tensor without a Verdier structure", target: "verdier-admission", run: defect_admission },
        Defect { name: "product functor with zero cells", target: "biexact-square", run: defect_biexact },
        Defect { name: "Euler determinant with an altered cone", target: "octahedron", run: defect_det },
        Defect { name: "bideterminant without the swap correction", target: "two-triangles", run: defect_multidet },
        Defect { name: "non-associative multiplication table", target: "associativity", run: defect_associativity },
        Defect { name: "unit acting by zero", target: "unit-action", run: defect_unit_action },
        Defect { name: "stored action disagreeing with the product", target: "sigma-agreement", run: defect_sigma },
    ]
}

fn criterion_10() -> Outcome {
    let mut out = vec![];
    for d in defect_catalogue() {
            let intact = (d.run)(false)?;
        let mutated = (d.run)(true)?;
        let failed = mutated.failed_checks();
        let exact = failed.len() == 1 && failed.contains(d.target);
        let ok = intact.is_valid() && exact;
        let detail = if !intact.is_valid() {
            format!("false positive on intact data: {:?}", intact.failed_checks())
        } else if exact {
            format!("caught by {}", d.target)
        } else {
            format!("expected {} alone, failed {:?}", d.target, failed)
        };
        out.push((ok, d.name.to_string(), detail));
    }
    Ok(out)
}

fn defect_antisymmetry(mutate: bool) -> Result<Report> {
    let a = FgAbelianGroup::new(vec![2, 2])?;
    let b = FgAbelianGroup::cyclic(2);
    let e = |k| Elem(vec![k]);
    let mut sym = vec![vec![e(0), e(1)], vec![e(1), e(0)]];
    if mutate {
        sym[1][0] = e(0);
    }
    Ok(validate_picard(&PicardPresentation { pi0: a, pi1: b, symmetry: sym }))
}

fn defect_order(mutate: bool) -> Result<Report> {
    let a = FgAbelianGroup::new(vec![if mutate { 3 } else { 2 }])?;
    Ok(validate_picard(&PicardPresentation { pi0: a, pi1: FgAbelianGroup::cyclic(2), symmetry: vec![vec![Elem(vec![1])]] }))
}

fn defect_sum_constraint(mutate: bool) -> Result<Report> {
    let p = PicardPresentation::z_with_sign();
    let e = |k| Elem(vec![k]);
    Ok(validate_cube(&p, &Cube::one(e(2), e(if mutate { 6 } else { 5 }), e(3), e(1))))
}

fn defect_pentagon(mutate: bool) -> Result<Report> {
    let ws = workspace("cubes")?;
    let (p, s) = &ws.cubes[if mutate { "broken-square" } else { "square" }];
    Ok(validate_cube(p, s))
}

fn defect_decomposition(mutate: bool) -> Result<Report> {
    let p = PicardPresentation::z2_with_sign();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let s = random_cube(&p, 3, &mut rng, 1);
    check_higher_coherence(&p, &if mutate { break_pentagon(&p, &s) } else { s })
}

fn defect_shift(mutate: bool) -> Result<Report> {
    let mut t = (*graded_lines()?).clone();
    if mutate {
        let s = t.sums.iter_mut().find(|s| s.x != s.y).expect("a sum of distinct objects");
        std::mem::swap(&mut s.delta1, &mut s.delta2);
    }
    Ok(validate_presentation(&t))
}

fn defect_verdier(mutate: bool) -> Result<Report> {
    let ws = workspace("two_squares")?;
    let mut t = (*ws.presentations["two-squares"]).clone();
    let diagram = crate::fixtures::COMM_DIAGRAM;
    if mutate {
        let c = t.certificates.iter_mut().find(|c| c.diagram == diagram).expect("certificate");
        std::mem::swap(&mut c.v1, &mut c.v3);
    }
    check_verdier(&t, diagram)
}

fn defect_triangle_image(mutate: bool) -> Result<Report> {
    let mut f = tensor()?;
    if mutate {
        let key = f.triangles.keys().next().expect("triangle images").clone();
        f.triangles.remove(&key);
    }
    Ok(check_multiexact_tri_functor(&f))
}

fn defect_admission(mutate: bool) -> Result<Report> {
    let mut f = tensor()?;
    if mutate {
        let key = f.verdier.keys().next().expect("Verdier structures").clone();
        f.verdier.remove(&key);
    }
    Ok(check_functor_verdier_admission(&f))
}

fn defect_biexact(mutate: bool) -> Result<Report> {
    let mut f = PicardFunctorData::integer_product();
    if mutate {
        f.cells[0] = CellFn::zero(f.target.b());
    }
    check_multiexact_picard_functor(&f, Some(2))
}

fn defect_det(mutate: bool) -> Result<Report> {
    let ws = workspace(if mutate { "seeded_invalid_det" } else { "graded_lines" })?;
    let d = ws.determinants.into_values().next().ok_or_else(|| Error::UnresolvedReference("determinant".into()))?;
    validate_determinant(&d)
}

fn defect_multidet(mutate: bool) -> Result<Report> {
    validate_multideterminant(&crate::determinant::product_euler_determinant(graded_lines()?, !mutate)?)
}

fn z2_cubed_ring(mutate: bool) -> Result<CategoricalRingData> {
    let base = PicardPresentation::discrete(FgAbelianGroup::new(vec![2, 2, 2])?);
    let g = |i: usize| base.a().generator(i);
    let z = base.a().zero();
    let mut table = vec![vec![z.clone(); 3]; 3];
    for i in 0..3 {
        table[0][i] = g(i);
        table[i][0] = g(i);
    }
    table[1][1] = g(2);
    if mutate {
        table[2][1] = g(1);
    }
    let unit = g(0);
    let empty = vec![vec![]; 3];
    Ok(CategoricalRingData::from_tables("z2-cubed", base, table, unit, empty.clone(), empty))
}

fn defect_associativity(mutate: bool) -> Result<Report> {
    Ok(validate_categorical_ring(&z2_cubed_ring(mutate)?))
}

fn defect_unit_action(mutate: bool) -> Result<Report> {
    let base = PicardPresentation::cyclic(2, 2, 0)?;
    let e = |k| Elem(vec![k]);
    let left = vec![vec![e(if mutate { 0 } else { 1 })]];
    Ok(validate_categorical_ring(&CategoricalRingData::from_tables("z2", base, vec![vec![e(1)]], e(1), left, vec![vec![e(1)]])))
}

fn defect_sigma(mutate: bool) -> Result<Report> {
    let mut r = CategoricalRingData::integers_with_sign();
    if mutate {
        r.right_act[0][0] = Elem(vec![0]);
    }
    Ok(validate_categorical_ring(&r))
}

#[cfg(test)]
mod tests;
