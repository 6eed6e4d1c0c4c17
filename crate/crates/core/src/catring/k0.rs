//! `K₀` of a presentation as a ring, with the product induced by a tensor
//! functor on object classes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{smith_normal_form, Elem, FgAbelianGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::report::{Report, ReportItem};
use crate::trianglecat::{check_functor_verdier_admission, euler, parse_dims, TriFunctorData, TriangPresentation};

#[derive(Clone, Debug, Serialize)]
pub struct K0RingPresentation {
    pub presentation: String,
    pub generators: Vec<String>,
    /// Labelled relation rows over `generators`.
    pub relations: Vec<(String, Vec<i64>)>,
    pub group: FgAbelianGroup,
    pub classes: BTreeMap<String, Elem>,
    /// Products of basis elements of `group`.
    pub product: Vec<Vec<Elem>>,
    /// Whether the listed tensor values determine the product.
    pub determined: bool,
    pub unit: Option<Elem>,
    pub report: Report,
}

impl K0RingPresentation {
    pub fn class_of(&self, object: &str) -> Option<&Elem> {
        self.classes.get(object)
    }

    pub fn multiply(&self, x: &Elem, y: &Elem) -> Elem {
        let g = &self.group;
        let mut acc = g.zero();
        for (k, row) in self.product.iter().enumerate() {
            for (l, v) in row.iter().enumerate() {
                let c = x.0[k] * y.0[l];
                if c != 0 {
                    acc = g.add(&acc, &g.scale(c, v));
                }
            }
        }
        acc
    }
}

fn big_rows(rows: &[Vec<i64>]) -> Result<IntMatrix> {
    IntMatrix::from_rows(rows)
}

/// Solves `Σ_j rows[i][j]·x_j ≡ rhs[i]` modulo `moduli[i]` (`0` for an
/// exact equation) over the integers. Returns a solution and whether the
/// coefficient matrix has full column rank.
fn solve_int(rows: &[Vec<i64>], moduli: &[u64], rhs: &[i64], ncols: usize) -> Result<Option<(Vec<i64>, bool)>> {
    if rows.is_empty() {
        return Ok(Some((vec![0; ncols], ncols == 0)));
    }
    let slack: Vec<usize> = (0..rows.len()).filter(|&i| moduli[i] > 0).collect();
    let aug: Vec<Vec<i64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend(slack.iter().map(|&s| if s == i { moduli[i] as i64 } else { 0 }));
            r
        })
        .collect();
    let m = big_rows(&aug)?;
    let snf = smith_normal_form(&m)?;
    let b = IntMatrix::from_rows(&rhs.iter().map(|&v| vec![v]).collect::<Vec<_>>())?;
    let c = snf.u.mul(&b)?;
    let cols = m.cols();
    let mut y = vec![BigInt::zero(); cols];
    for i in 0..rows.len() {
        let ci = c.get(i, 0);
        let di = if i < cols { snf.d.get(i, i) } else { BigInt::zero() };
        if di.is_zero() {
            if !ci.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = ci.div_rem(&di);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
    }
    let ycol = IntMatrix::from_rows(&y.iter().map(|v| vec![v.clone()]).collect::<Vec<_>>())?;
    let x = snf.v.mul(&ycol)?;
    let out = (0..ncols)
        .map(|j| x.get(j, 0).to_i64().ok_or_else(|| Error::ResourceLimit("solution entry too large".into())))
        .collect::<Result<_>>()?;
    let full = smith_normal_form(&big_rows(rows)?)?.rank() == ncols;
    Ok(Some((out, full)))
}

/// `K₀(T)` with the product `[a]·[b] = [a ⊗ b]` induced by `tensor`.
///
/// The additive group is read off the Smith normal form of the relation
/// matrix (`[y] − [x] − [z]` per listed triangle, `[a] − [b]` per iso,
/// `[0]`). The product is checked on every relation times every generator
/// and then solved for on the basis from all listed tensor values.
pub fn compute_k0_ring(t: &TriangPresentation, tensor: &TriFunctorData) -> Result<K0RingPresentation> {
    if tensor.arity() != 2 || tensor.sources.iter().any(|s| s.id != t.id || s.objects != t.objects) {
        return Err(Error::MismatchedSignature(format!("{} is not a functor {} × {} → {}", tensor.id, t.id, t.id, t.id)));
    }
    let pos: BTreeMap<&str, usize> = t.objects.iter().enumerate().map(|(k, o)| (o.as_str(), k)).collect();
    if let Some(o) = tensor.objects.values().find(|o| !pos.contains_key(o.as_str())) {
        return Err(Error::MismatchedSignature(format!("tensor value {o} is not an object of {}", t.id)));
    }
    let admission = check_functor_verdier_admission(tensor);
    if !admission.is_valid() {
        let first = admission.failures().next().map(|i| format!("{}: {}", i.location, i.detail)).unwrap_or_default();
        return Err(Error::VerdierAdmissionMissing(first));
    }
    let mut report = Report::new("k0-ring");
    report.absorb("admission", admission);

    let n = t.objects.len();
    let mut relations: Vec<(String, Vec<i64>)> = vec![];
    let mut row = |label: String, entries: &[(&str, i64)]| {
        let mut r = vec![0i64; n];
        for (o, c) in entries {
            r[pos[o]] += c;
        }
        relations.push((label, r));
    };
    for tri in &t.triangles {
        row(tri.id.clone(), &[(&tri.y, 1), (&tri.x, -1), (&tri.z, -1)]);
    }
    for f in &t.isos {
        row(f.id.clone(), &[(&f.source, 1), (&f.target, -1)]);
    }
    row("zero".into(), &[(&t.zero, 1)]);

    // columns are relations, rows are generators
    let m = IntMatrix::from_triplets(
        n,
        relations.len(),
        relations.iter().enumerate().flat_map(|(j, (_, r))| r.iter().enumerate().filter(|(_, c)| **c != 0).map(move |(i, c)| (i, j, *c))),
    )?;
    let snf = smith_normal_form(&m)?;
    let rank = snf.rank();
    let mut kept = vec![];
    let mut factors = vec![];
    for i in 0..n {
        let d = if i < rank { snf.d.get(i, i).abs() } else { BigInt::zero() };
        if d != BigInt::from(1) {
            kept.push(i);
            factors.push(d.to_u64().ok_or_else(|| Error::ResourceLimit(format!("torsion coefficient {d} too large")))?);
        }
    }
    let group = FgAbelianGroup::new(factors.clone())?;
    let mut coords: Vec<Vec<i64>> = kept
        .iter()
        .map(|&i| (0..n).map(|o| snf.u.get(i, o).to_i64().ok_or_else(|| Error::ResourceLimit("class coordinate too large".into()))).collect())
        .collect::<Result<_>>()?;
    // free coordinates: the first object with a nonzero entry is positive
    for (k, row) in coords.iter_mut().enumerate() {
        if factors[k] == 0 && row.iter().find(|v| **v != 0).is_some_and(|v| *v < 0) {
            row.iter_mut().for_each(|v| *v = -*v);
        }
    }
    let classes: BTreeMap<String, Elem> =
        t.objects.iter().enumerate().map(|(o, name)| (name.clone(), group.reduce(Elem(coords.iter().map(|r| r[o]).collect())))).collect();
    report.push(ReportItem::pass("additive-group", t.id.as_str(), format!("K₀ = {group} from {} relations on {n} generators", relations.len())));

    let tensor_of = |a: &str, b: &str| tensor.object(&[a.to_string(), b.to_string()]).map(|p| &classes[p]);
    // relation × generator, both sides
    let (mut checked, mut outside) = (0usize, 0usize);
    for (label, r) in &relations {
        for w in &t.objects {
            for side in 0..2 {
                let mut acc = group.zero();
                let mut complete = true;
                for (o, &c) in r.iter().enumerate().filter(|(_, c)| **c != 0) {
                    let (x, y) = if side == 0 { (t.objects[o].as_str(), w.as_str()) } else { (w.as_str(), t.objects[o].as_str()) };
                    match tensor_of(x, y) {
                        Some(v) => acc = group.add(&acc, &group.scale(c, v)),
                        None => complete = false,
                    }
                }
                if !complete {
                    outside += 1;
                    continue;
                }
                checked += 1;
                if !group.is_zero(&acc) {
                    let what = if side == 0 { format!("({label}) ⊗ {w}") } else { format!("{w} ⊗ ({label})") };
                    return Err(Error::ProductNotWellDefined(format!("{what} reduces to {acc}, not 0")));
                }
            }
        }
    }
    report.push(ReportItem::pass("relation-product", "relations × generators", format!("{checked} products reduce to 0")));
    if outside > 0 {
        report.push(ReportItem::untestable("relation-product", "relations × generators", format!("{outside} products leave the tensor table")));
    }

    // structure constants c[k][l] ∈ K₀, solved coordinate by coordinate
    let r = kept.len();
    let mut pairs = vec![];
    for a in &t.objects {
        for b in &t.objects {
            if let Some(p) = tensor_of(a, b) {
                pairs.push((&classes[a], &classes[b], p.clone()));
            }
        }
    }
    let mut product = vec![vec![group.zero(); r]; r];
    let mut determined = true;
    for mc in 0..r {
        let mut rows = vec![];
        let mut rhs = vec![];
        let mut moduli = vec![];
        for (x, y, p) in &pairs {
            rows.push((0..r * r).map(|kl| x.0[kl / r] * y.0[kl % r]).collect::<Vec<_>>());
            rhs.push(p.0[mc]);
            moduli.push(factors[mc]);
        }
        for k in 0..r {
            if factors[k] == 0 {
                continue;
            }
            for l in 0..r {
                for kl in [k * r + l, l * r + k] {
                    let mut row = vec![0; r * r];
                    row[kl] = factors[k] as i64;
                    rows.push(row);
                    rhs.push(0);
                    moduli.push(factors[mc]);
                }
            }
        }
        let Some((x, full)) = solve_int(&rows, &moduli, &rhs, r * r)? else {
            return Err(Error::ProductNotWellDefined(format!(
                "the listed tensor values admit no bilinear product on K₀ (coordinate {mc})"
            )));
        };
        determined &= full;
        for kl in 0..r * r {
            product[kl / r][kl % r].0[mc] = x[kl];
        }
    }
    for row in product.iter_mut() {
        for v in row.iter_mut() {
            *v = group.reduce(v.clone());
        }
    }
    report.push(ReportItem::pass("product", "tensor table", format!("bilinear on K₀, consistent with {} listed products", pairs.len())));
    if !determined {
        report.push(ReportItem::note("product", "tensor table", "listed products do not determine the product; one solution shown"));
    }

    let mut k0 = K0RingPresentation {
        presentation: t.id.clone(),
        generators: t.objects.clone(),
        relations,
        group: group.clone(),
        classes,
        product,
        determined,
        unit: None,
        report: Report::new("k0-ring"),
    };
    let basis: Vec<Elem> = (0..r).map(|k| group.generator(k)).collect();
    k0.unit = t
        .objects
        .iter()
        .map(|o| k0.classes[o].clone())
        .find(|u| basis.iter().all(|e| k0.multiply(u, e) == *e && k0.multiply(e, u) == *e));
    match &k0.unit {
        Some(u) => report.push(ReportItem::pass("unit", "objects", format!("class {u}"))),
        None if r == 0 => report.push(ReportItem::pass("unit", "objects", "zero ring")),
        None => report.push(ReportItem::note("unit", "objects", "no object class is a unit")),
    }
    euler_comparison(t, &k0, &mut report)?;
    k0.report = report.finish();
    Ok(k0)
}

/// When objects are dimension vectors: `χ` factors through `K₀`, is
/// multiplicative on the basis and surjective onto `Z`.
fn euler_comparison(t: &TriangPresentation, k0: &K0RingPresentation, report: &mut Report) -> Result<()> {
    let Some(chis) = t.objects.iter().map(|o| parse_dims(o).map(euler)).collect::<Option<Vec<i64>>>() else {
        return Ok(());
    };
    let g = &k0.group;
    let r = g.ngens();
    let rows: Vec<Vec<i64>> = t
        .objects
        .iter()
        .map(|o| (0..r).map(|k| if g.factors()[k] == 0 { k0.classes[o].0[k] } else { 0 }).collect())
        .collect();
    let Some((chi, _)) = solve_int(&rows, &vec![0; rows.len()], &chis, r)? else {
        report.push(ReportItem::fail("euler", t.id.as_str(), "χ does not factor through K₀"));
        return Ok(());
    };
    let chi_of = |e: &Elem| e.0.iter().zip(&chi).map(|(a, b)| a * b).sum::<i64>();
    for k in 0..r {
        for l in 0..r {
            let (e, f) = (g.generator(k), g.generator(l));
            let lhs = chi_of(&k0.multiply(&e, &f));
            if lhs != chi[k] * chi[l] {
                report.push(ReportItem::fail("euler", format!("e{k}·e{l}"), format!("χ(e{k}·e{l}) = {lhs} ≠ {}", chi[k] * chi[l])));
            }
        }
    }
    let gcd = chi.iter().fold(0i64, |acc, c| acc.gcd(c));
    if r > 0 && gcd != 1 {
        report.push(ReportItem::fail("euler", "basis", format!("χ has image {gcd}Z")));
    }
    report.push(ReportItem::pass("euler", "basis", format!("χ on the basis is {chi:?}")));
    Ok(())
}
