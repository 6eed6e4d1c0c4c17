//! Bundled presentations.
//!
//! `graded-lines` models finite-dimensional Z/2-graded vector spaces of
//! dimension at most `cap` in each degree, with `Σ` the parity swap. Its
//! battery consists of split triangles, trivial triangles, cones `x → 0 → Σx`,
//! triangles on the swap automorphisms, associativity octahedra and the
//! commutativity 2-cube of every listed sum.

use std::collections::BTreeMap;

use crate::error::Result;

use super::presentation::{Composition, IsoMorphism, SumEntry, Triangle, TriangleIso, TriangPresentation};
use super::verdier::{commutativity_2cube, ensure_octahedron, ensure_triangle, trivial_left, trivial_right};

/// Only the zero object, the triangle `0 → 0 → 0` and the all-zero
/// nine-diagram.
pub fn point() -> TriangPresentation {
    let mut t = TriangPresentation {
        id: "point".into(),
        objects: vec!["0".into()],
        zero: "0".into(),
        shift: BTreeMap::from([("0".into(), "0".into())]),
        isos: vec![IsoMorphism { id: "id0".into(), source: "0".into(), target: "0".into() }],
        identities: BTreeMap::from([("0".into(), "id0".into())]),
        inverses: BTreeMap::from([("id0".into(), "id0".into())]),
        compositions: vec![Composition { first: "id0".into(), second: "id0".into(), result: "id0".into() }],
        triangles: vec![Triangle {
            id: "000".into(),
            x: "0".into(),
            y: "0".into(),
            z: "0".into(),
            f: None,
            g: None,
            h: None,
        }],
        sums: vec![SumEntry { x: "0".into(), y: "0".into(), sum: "0".into(), delta1: "000".into(), delta2: "000".into() }],
        ..Default::default()
    };
    ensure_octahedron(&mut t, "zero".into(), ["000"; 4]);
    commutativity_2cube(&mut t, 0).expect("point sums resolve");
    t
}

/// Dimension vector `[d₋₁, d₀]`.
pub type Dims = [u8; 2];

pub fn dims_name(v: Dims) -> String {
    format!("[{},{}]", v[0], v[1])
}

pub fn parse_dims(s: &str) -> Option<Dims> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    let (a, b) = inner.split_once(',')?;
    Some([a.trim().parse().ok()?, b.trim().parse().ok()?])
}

/// Euler characteristic `d₀ − d₋₁`.
pub fn euler(v: Dims) -> i64 {
    v[1] as i64 - v[0] as i64
}

pub fn dims_shift(v: Dims) -> Dims {
    [v[1], v[0]]
}

pub fn dims_add(a: Dims, b: Dims) -> Dims {
    [a[0] + b[0], a[1] + b[1]]
}

/// Graded tensor product (degrees add mod 2).
pub fn dims_tensor(a: Dims, b: Dims) -> Dims {
    [a[0] * b[1] + a[1] * b[0], a[0] * b[0] + a[1] * b[1]]
}

fn within(v: Dims, cap: u8) -> bool {
    v[0] <= cap && v[1] <= cap
}

fn nonzero(v: Dims) -> bool {
    v != [0, 0]
}

pub fn all_dims(cap: u8) -> Vec<Dims> {
    (0..=cap).flat_map(|a| (0..=cap).map(move |b| [a, b])).collect()
}

/// Swap automorphism of `x ⊕ y` exchanging the summands.
pub fn swap_name(x: Dims, y: Dims) -> String {
    format!("sw({},{})", dims_name(x), dims_name(y))
}

pub fn identity_name(x: Dims) -> String {
    format!("id{}", dims_name(x))
}

/// The triangles of the graded-lines family, keyed by how they are built.
/// Ids are canonical: trivial instances collapse onto `triv0`/`triv1`.
pub struct GradedLines {
    pub cap: u8,
    pub t: TriangPresentation,
}

impl GradedLines {
    /// `x → x⊕y → y`.
    pub fn split1(&mut self, x: Dims, y: Dims) -> String {
        let s = dims_add(x, y);
        if !nonzero(y) {
            { let w = trivial_right(&self.t, &dims_name(x)); return ensure_triangle(&mut self.t, w); }
        }
        if !nonzero(x) {
            { let w = trivial_left(&self.t, &dims_name(y)); return ensure_triangle(&mut self.t, w); }
        }
        let (xn, yn) = (dims_name(x), dims_name(y));
        ensure_triangle(
            &mut self.t,
            Triangle {
                id: format!("D1({xn},{yn})"),
                x: xn.clone(),
                y: dims_name(s),
                z: yn.clone(),
                f: Some(format!("i1({xn},{yn})")),
                g: Some(format!("p2({xn},{yn})")),
                h: Some("0".into()),
            },
        )
    }

    /// `y → x⊕y → x`.
    pub fn split2(&mut self, x: Dims, y: Dims) -> String {
        let s = dims_add(x, y);
        if !nonzero(x) {
            { let w = trivial_right(&self.t, &dims_name(y)); return ensure_triangle(&mut self.t, w); }
        }
        if !nonzero(y) {
            { let w = trivial_left(&self.t, &dims_name(x)); return ensure_triangle(&mut self.t, w); }
        }
        let (xn, yn) = (dims_name(x), dims_name(y));
        ensure_triangle(
            &mut self.t,
            Triangle {
                id: format!("D2({xn},{yn})"),
                x: yn.clone(),
                y: dims_name(s),
                z: xn.clone(),
                f: Some(format!("i2({xn},{yn})")),
                g: Some(format!("p1({xn},{yn})")),
                h: Some("0".into()),
            },
        )
    }

    /// `x → 0 → Σx`, the rotation of `x = x → 0`.
    pub fn cone(&mut self, x: Dims) -> String {
        let triv = trivial_right(&self.t, &dims_name(x));
        let rot = super::presentation::rotate(&self.t, &triv).expect("Σ is total");
        ensure_triangle(&mut self.t, Triangle { id: format!("cone({})", dims_name(x)), ..rot })
    }

    /// `u →f u → 0` for the swap of `x ⊕ y`.
    pub fn swap_triangle(&mut self, x: Dims, y: Dims) -> String {
        let u = dims_name(dims_add(x, y));
        if !nonzero(x) || !nonzero(y) {
            { let w = trivial_right(&self.t, &u); return ensure_triangle(&mut self.t, w); }
        }
        let f = swap_name(x, y);
        ensure_triangle(
            &mut self.t,
            Triangle {
                id: format!("T({f})"),
                x: u.clone(),
                y: u,
                z: dims_name([0, 0]),
                f: Some(f),
                g: Some("0".into()),
                h: Some("0".into()),
            },
        )
    }

    /// The rotation `x⊕y → y → Σx` of `split1(x, y)`.
    pub fn rotated_split1(&mut self, x: Dims, y: Dims) -> String {
        let d = self.split1(x, y);
        let tri = self.t.triangle(&d).cloned().expect("just ensured");
        let rot = super::presentation::rotate(&self.t, &tri).expect("Σ is total");
        ensure_triangle(&mut self.t, rot)
    }

    /// Swap iso of `x ⊕ y`, or the identity when a summand is zero.
    pub fn swap_iso(&self, x: Dims, y: Dims) -> String {
        if nonzero(x) && nonzero(y) {
            swap_name(x, y)
        } else {
            identity_name(dims_add(x, y))
        }
    }
}

/// The graded-lines presentation with dimensions at most `cap` per degree.
pub fn graded_lines(cap: u8) -> TriangPresentation {
    graded_lines_family(cap).t
}

pub fn graded_lines_family(cap: u8) -> GradedLines {
    let dims = all_dims(cap);
    let zero = [0u8, 0];
    let mut t = TriangPresentation {
        id: "graded-lines".into(),
        objects: dims.iter().map(|&v| dims_name(v)).collect(),
        zero: dims_name(zero),
        shift: dims.iter().map(|&v| (dims_name(v), dims_name(dims_shift(v)))).collect(),
        ..Default::default()
    };
    for &v in &dims {
        let (n, id) = (dims_name(v), identity_name(v));
        t.isos.push(IsoMorphism { id: id.clone(), source: n.clone(), target: n.clone() });
        t.identities.insert(n, id.clone());
        t.inverses.insert(id.clone(), id.clone());
        t.compositions.push(Composition { first: id.clone(), second: id.clone(), result: id });
    }
    let pairs: Vec<(Dims, Dims)> = dims
        .iter()
        .flat_map(|&x| dims.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| within(dims_add(x, y), cap))
        .collect();
    for &(x, y) in pairs.iter().filter(|(x, y)| nonzero(*x) && nonzero(*y)) {
        let s = dims_add(x, y);
        let (f, finv, id) = (swap_name(x, y), swap_name(y, x), identity_name(s));
        t.isos.push(IsoMorphism { id: f.clone(), source: dims_name(s), target: dims_name(s) });
        t.inverses.insert(f.clone(), finv.clone());
        t.compositions.push(Composition { first: f.clone(), second: finv, result: id.clone() });
        t.compositions.push(Composition { first: f.clone(), second: id.clone(), result: f.clone() });
        t.compositions.push(Composition { first: id, second: f.clone(), result: f });
    }
    let mut g = GradedLines { cap, t };
    for &(x, y) in &pairs {
        let d1 = g.split1(x, y);
        let d2 = g.split2(x, y);
        g.t.sums.push(SumEntry { x: dims_name(x), y: dims_name(y), sum: dims_name(dims_add(x, y)), delta1: d1, delta2: d2 });
    }
    for &x in &dims {
        g.cone(x);
    }
    for &(x, y) in pairs.iter().filter(|(x, y)| nonzero(*x) && nonzero(*y)) {
        let s = dims_add(x, y);
        let f = swap_name(x, y);
        let tf = g.swap_triangle(x, y);
        let triv = g.split1(s, zero);
        g.t.triangle_isos.push(TriangleIso {
            id: format!("N({f})"),
            source: triv,
            target: tf,
            ix: identity_name(s),
            iy: f.clone(),
            iz: identity_name(zero),
        });
        let d1 = g.split1(x, y);
        let d2 = g.split2(y, x);
        g.t.triangle_isos.push(TriangleIso {
            id: format!("S({f})"),
            source: d1,
            target: d2,
            ix: identity_name(x),
            iy: f,
            iz: identity_name(y),
        });
    }
    // associativity octahedra for x ⊕ y ⊕ z in both summand orders
    for &a in &dims {
        for &b in &dims {
            for &c in &dims {
                if !within(dims_add(dims_add(a, b), c), cap) {
                    continue;
                }
                let (ab, bc) = (dims_add(a, b), dims_add(b, c));
                let o = [g.split1(a, b), g.split1(a, bc), g.split1(ab, c), g.split1(b, c)];
                let name = format!("A({},{},{})", dims_name(a), dims_name(b), dims_name(c));
                ensure_octahedron(&mut g.t, name, [&o[0], &o[1], &o[2], &o[3]]);
                let o = [g.split2(b, c), g.split2(ab, c), g.split2(a, bc), g.split2(a, b)];
                let name = format!("B({},{},{})", dims_name(a), dims_name(b), dims_name(c));
                ensure_octahedron(&mut g.t, name, [&o[0], &o[1], &o[2], &o[3]]);
            }
        }
    }
    for k in 0..g.t.sums.len() {
        commutativity_2cube(&mut g.t, k).expect("graded-lines sums resolve");
    }
    g
}

/// Validates and returns a builtin by name.
pub fn builtin(name: &str) -> Result<TriangPresentation> {
    match name {
        "point" => Ok(point()),
        "graded-lines" => Ok(graded_lines(2)),
        _ => Err(crate::error::Error::UnresolvedReference(format!("no builtin presentation {name}"))),
    }
}
