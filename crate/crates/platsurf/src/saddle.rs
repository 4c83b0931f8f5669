//! Closed saddle connections on the unfolded dodecahedron.
//!
//! The unfolding covers the double pentagon `Pi_5` with 60 sheets. A sheet
//! is a top pentagon `P` and a bottom pentagon `-P` glued along edge 4;
//! top edge `a` (for `a < 4`) is glued to bottom edge `a` of sheet `x_a(i)`.
//! The Veech group of `Pi_5` acts on such monodromy quadruples, and the
//! vertex cycle of a sheet decides whether lifts of the horizontal saddle
//! connections of `Pi_5` are closed.
//!
//! The module also contains an exact separatrix tracer, the Rosen-type
//! reduction of holonomy vectors and the search for shortest closed
//! representatives of each class.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{phi, Nf};
use crate::flatsurface::{EdgeRef, TranslationSurface};
use crate::orbit::{class_words, equivalence_classes, inverse_word, OrbitTable};
use crate::planar::{generator_r, generator_t, regular_pentagon, word_matrix, Mat2, Vec2};
use crate::platonic::{is_transitive, monodromy_generators, Permutation, Solid};

/// The two horizontal saddle connections of `Pi_5` up to the hyperelliptic
/// involution: the long diagonal of length `2 phi` and the short edge of
/// length 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SaddleKind {
    Long,
    Short,
}

impl SaddleKind {
    /// Holonomy of the horizontal representative: `(2 phi, 0)` or `(2, 0)`.
    pub fn horizontal_holonomy(self) -> Vec2 {
        match self {
            SaddleKind::Long => Vec2::new(phi().add_ref(&phi()), Nf::zero()),
            SaddleKind::Short => Vec2::from_ints(2, 0),
        }
    }

    /// Position in the vertex cycle, modulo 8, of the far endpoint.
    fn cycle_offset(self) -> usize {
        match self {
            SaddleKind::Long => 2,
            SaddleKind::Short => 3,
        }
    }
}

impl std::str::FromStr for SaddleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SaddleKind> {
        match s {
            "long" => Ok(SaddleKind::Long),
            "short" => Ok(SaddleKind::Short),
            _ => Err(Error::Parse(format!("unknown saddle kind {s:?}"))),
        }
    }
}

/// Monodromy permutations `x_0 .. x_3` of a cover of `Pi_5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyQuadruple {
    x: [Permutation; 4],
}

/// Product in the order used by the permutation listings: `a` acts first.
fn prod(a: &Permutation, b: &Permutation) -> Permutation {
    a.then(b)
}

impl MonodromyQuadruple {
    /// Validates that the permutations act transitively on a common set.
    pub fn new(x: [Permutation; 4]) -> Result<MonodromyQuadruple> {
        let n = x[0].len();
        if x.iter().any(|p| p.len() != n) {
            return Err(Error::InvalidPermutation("quadruple of unequal degrees".into()));
        }
        if !is_transitive(&x) {
            return Err(Error::InvalidPermutation("quadruple is not transitive".into()));
        }
        Ok(MonodromyQuadruple { x })
    }

    /// The quadruple of the unfolded dodecahedron.
    pub fn dodecahedron() -> Result<MonodromyQuadruple> {
        let g = monodromy_generators(Solid::Dodecahedron)?;
        let x: [Permutation; 4] = g
            .try_into()
            .map_err(|_| Error::Inconsistent("dodecahedron needs four monodromy permutations".into()))?;
        MonodromyQuadruple::new(x)
    }

    /// The permutations.
    pub fn x(&self) -> &[Permutation; 4] {
        &self.x
    }

    /// Number of sheets.
    pub fn degree(&self) -> usize {
        self.x[0].len()
    }

    /// Label of the top pentagon of a sheet in [`Self::to_surface`].
    pub fn top_label(sheet: usize) -> usize {
        2 * sheet
    }

    /// Label of the bottom pentagon of a sheet in [`Self::to_surface`].
    pub fn bottom_label(sheet: usize) -> usize {
        2 * sheet + 1
    }

    /// The glued surface: sheet `i` has top pentagon `2i` and bottom `2i+1`.
    pub fn to_surface(&self) -> Result<TranslationSurface> {
        let n = self.degree();
        let p = regular_pentagon();
        let mut polygons = Vec::with_capacity(2 * n);
        for _ in 0..n {
            polygons.push(p.clone());
            polygons.push(p.negate());
        }
        let mut pairs = Vec::with_capacity(5 * n);
        for i in 0..n {
            for a in 0..5 {
                let j = if a == 4 { i } else { self.x[a].apply(i) };
                pairs.push((EdgeRef::new(Self::top_label(i), a), EdgeRef::new(Self::bottom_label(j), a)));
            }
        }
        TranslationSurface::from_pairs(polygons, &pairs, 0)
    }

    /// Quadruple of the image of the surface under `R^-1`.
    pub fn gam_r(&self) -> MonodromyQuadruple {
        let x = &self.x;
        MonodromyQuadruple {
            x: [prod(&x[2], &x[3].inverse()), x[2].clone(), prod(&x[2], &x[0].inverse()), prod(&x[2], &x[1].inverse())],
        }
    }

    /// Quadruple of the image of the surface under `T^-1`.
    pub fn gam_t(&self) -> MonodromyQuadruple {
        let x = &self.x;
        let x12 = prod(&x[1], &x[2]);
        MonodromyQuadruple {
            x: [prod(&x[0], &x[1].inverse()), x[1].clone(), prod(&prod(&x12, &x[3].inverse()), &x[2]), x12],
        }
    }

    /// Replays a word over `R, T`, rightmost letter first, with
    /// [`Self::gam_r`] and [`Self::gam_t`]. Starting from the quadruple of
    /// `S`, the result is the quadruple of `phi(w)(S)` where `phi` inverts
    /// each letter; for a `J`-invariant `S` this is `J w(S)`.
    pub fn replay(&self, word: &str) -> Result<MonodromyQuadruple> {
        let mut q = self.clone();
        for c in word.chars().rev() {
            q = match c {
                'R' => q.gam_r(),
                'T' => q.gam_t(),
                _ => return Err(Error::Parse(format!("bad letter {c:?} in word"))),
            };
        }
        Ok(q)
    }

    /// Sheets met by turning counter-clockwise around the vertex `v_0` of
    /// sheet `n` (the left end of the horizontal edge of its top pentagon).
    ///
    /// The eight steps of one round visit the corners: top 0 and bottom 4
    /// (one sheet), top 3, bottom 2, top 1, bottom 0 and top 4 (one sheet),
    /// bottom 3, top 2, bottom 1.
    pub fn vert_cycle(&self, n: usize) -> Result<Vec<usize>> {
        let m = self.degree();
        if n >= m {
            return Err(Error::InvalidInput(format!("sheet {n} out of range")));
        }
        let x = &self.x;
        let inv: Vec<Permutation> = x.iter().map(Permutation::inverse).collect();
        let steps: [&Permutation; 8] = [&inv[3], &x[2], &inv[1], &x[0], &x[3], &inv[2], &x[1], &inv[0]];
        let mut cycle = vec![n];
        let mut cur = n;
        // Each round covers 10 of the pentagon corners at the vertex; a
        // cover of degree m has at most 10 m corners.
        for _ in 0..m {
            for (k, p) in steps.iter().enumerate() {
                cur = p.apply(cur);
                if k == 7 && cur == n {
                    return Ok(cycle);
                }
                cycle.push(cur);
            }
        }
        Err(Error::NoTermination(m))
    }
}

/// Positions `i` congruent to the far endpoint offset modulo 8 where the
/// vertex cycle returns to its starting sheet, given as pairs `(0, i)`.
/// Nonempty exactly when the lift of the saddle connection starting on the
/// first sheet is closed.
pub fn vert_to_self(kind: SaddleKind, vert: &[usize]) -> Vec<(usize, usize)> {
    let off = kind.cycle_offset();
    (0..vert.len()).filter(|&i| i % 8 == off && vert[i] == vert[0]).map(|i| (0, i)).collect()
}

/// Whether the lift of the horizontal saddle connection of the given kind
/// starting on `sheet` is closed, decided from the vertex classes of the
/// glued surface. The long one runs between bottom corners 4 and 2, the
/// short one between top corners 0 and 1.
pub fn lift_is_closed(q: &MonodromyQuadruple, kind: SaddleKind, sheet: usize) -> Result<bool> {
    let cls = q.to_surface()?.vertex_classes();
    Ok(match kind {
        SaddleKind::Long => {
            let b = MonodromyQuadruple::bottom_label(sheet);
            cls[b][4] == cls[b][2]
        }
        SaddleKind::Short => {
            let t = MonodromyQuadruple::top_label(sheet);
            cls[t][0] == cls[t][1]
        }
    })
}

/// Class words whose replayed quadruple has a closed lift of the given
/// saddle connection on sheet 0, as pairs `(class index, word)`.
pub fn closed_classes(table: &OrbitTable, kind: SaddleKind) -> Result<Vec<(usize, String)>> {
    let base = MonodromyQuadruple::dodecahedron()?;
    let words = class_words(table)?;
    let hits = words
        .par_iter()
        .enumerate()
        .map(|(c, w)| -> Result<Option<(usize, String)>> {
            let q = base.replay(w)?;
            let vert = q.vert_cycle(0)?;
            Ok((!vert_to_self(kind, &vert).is_empty()).then(|| (c, w.clone())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(hits.into_iter().flatten().collect())
}

// ---------------------------------------------------------------------------
// Directions and sectors

/// `(cos(k pi/5), sin(k pi/5))` for `k` in `0..10`, exactly.
pub fn unit_direction(k: usize) -> Vec2 {
    let mut v = Vec2::from_ints(1, 0);
    let r = generator_r();
    for _ in 0..k % 10 {
        v = r.act(&v);
    }
    v
}

/// Whether `arg(v)` lies in `[k0 pi/5, k1 pi/5)` for `0 <= k0 < k1 <= 10`.
pub fn arg_in(v: &Vec2, k0: usize, k1: usize) -> bool {
    use std::cmp::Ordering::*;
    if v.is_zero() {
        return false;
    }
    let lo = unit_direction(k0);
    let ge_lo = k0 == 0 || v.cmp_angle(&lo) != Less;
    let lt_hi = k1 >= 10 || v.cmp_angle(&unit_direction(k1)) == Less;
    ge_lo && lt_hi
}

/// Whether `u` lies in the half-open corner sector from `a`
/// counter-clockwise to `b`, where the angle from `a` to `b` is below `pi`.
fn in_sector(a: &Vec2, b: &Vec2, u: &Vec2) -> bool {
    let ca = a.cross(u).sign();
    (ca > 0 || (ca == 0 && a.dot(u).sign() > 0)) && u.cross(b).sign() > 0
}

/// Whether `u` lies in the closed sector from `a` counter-clockwise to `d`,
/// where the angle from `a` to `d` is below `pi`.
fn in_closed_sector(a: &Vec2, d: &Vec2, u: &Vec2) -> bool {
    let ca = a.cross(u).sign();
    let cd = u.cross(d).sign();
    (ca > 0 || (ca == 0 && a.dot(u).sign() > 0)) && (cd > 0 || (cd == 0 && u.dot(d).sign() > 0))
}

/// Sector of corner `i` of a polygon: from edge `i` to the reverse of edge
/// `i - 1`.
fn corner_sector(s: &TranslationSurface, label: usize, i: usize) -> (Vec2, Vec2) {
    let p = s.polygon(label);
    let n = p.len();
    (p.edge(i), p.edge((i + n - 1) % n).neg())
}

/// First corner counter-clockwise from `(label, i)` around the same vertex
/// whose sector contains the direction `dir`.
pub fn corner_for_direction(s: &TranslationSurface, label: usize, i: usize, dir: &Vec2) -> Result<(usize, usize)> {
    let (mut l, mut k) = (label, i);
    loop {
        let (a, b) = corner_sector(s, l, k);
        if in_sector(&a, &b, dir) {
            return Ok((l, k));
        }
        (l, k) = s.next_corner_ccw(l, k);
        if (l, k) == (label, i) {
            return Err(Error::InvalidInput("direction not found around vertex".into()));
        }
    }
}

// ---------------------------------------------------------------------------
// Tracing

/// A straight segment inside one polygon, in that polygon's coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceSegment {
    pub label: usize,
    pub start: (f64, f64),
    pub end: (f64, f64),
}

/// Result of following a separatrix.
#[derive(Clone, Debug)]
pub struct Trace {
    /// Starting corner `(label, vertex)`.
    pub start: (usize, usize),
    /// Corner where a singularity was hit, approached from inside `label`.
    pub end: Option<(usize, usize)>,
    /// Exact holonomy of the saddle connection, if one was found.
    pub holonomy: Option<Vec2>,
    /// Number of polygon interiors crossed.
    pub crossings: usize,
    /// Whether the end singularity equals the start singularity.
    pub closed: Option<bool>,
    pub segments: Vec<TraceSegment>,
}

impl Trace {
    /// Exact squared length of the saddle connection.
    pub fn length2(&self) -> Option<Nf> {
        self.holonomy.as_ref().map(Vec2::norm2)
    }
}

/// Follows the straight ray leaving corner `(label, corner)` in direction
/// `dir` until it hits a vertex or has crossed `max_crossings` polygons.
///
/// Polygons are laid out along the fixed line through the start point, so
/// every decision is an exact sign test and no division is needed.
pub fn trace_separatrix(
    s: &TranslationSurface,
    start: (usize, usize),
    dir: &Vec2,
    max_crossings: usize,
) -> Result<Trace> {
    let (label, corner) = start;
    if label >= s.num_polygons() || corner >= s.polygon(label).len() {
        return Err(Error::InvalidInput(format!("no corner {start:?}")));
    }
    if dir.is_zero() {
        return Err(Error::InvalidInput("zero direction".into()));
    }
    let (a, b) = corner_sector(s, label, corner);
    if !in_sector(&a, &b, dir) {
        return Err(Error::InvalidInput("direction does not point into the starting corner".into()));
    }
    let origin = s.polygon(label).vertex(corner).clone();
    let (dx, dy) = dir.to_f64();
    let (ox, oy) = origin.to_f64();
    let mut cur = label;
    let mut offset = Vec2::zero();
    let mut entry_t = 0.0f64;
    let mut segments = Vec::new();
    let mut crossings = 0;
    let mut first = true;
    let param = |p: &Vec2| -> f64 {
        let (x, y) = p.to_f64();
        ((x - ox) * dx + (y - oy) * dy) / (dx * dx + dy * dy)
    };
    loop {
        let poly = s.polygon(cur);
        let n = poly.len();
        let rel: Vec<Vec2> = poly.vertices().iter().map(|v| v.add(&offset).sub(&origin)).collect();
        let side: Vec<i32> = rel.iter().map(|r| dir.cross(r).sign()).collect();
        let local = |t: f64| -> (f64, f64) {
            let (px, py) = offset.to_f64();
            (ox + t * dx - px, oy + t * dy - py)
        };
        // A vertex straight ahead on the line ends the trace.
        if let Some(k) = (0..n).find(|&k| side[k] == 0 && dir.dot(&rel[k]).sign() > 0) {
            let along_edge = first && (k == (corner + 1) % n);
            if !along_edge {
                crossings += 1;
            }
            let hol = rel[k].clone();
            let exit_t = param(&hol.add(&origin));
            segments.push(TraceSegment { label: cur, start: local(entry_t), end: local(exit_t) });
            let cls = s.vertex_classes();
            let closed = cls[label][corner] == cls[cur][k];
            return Ok(Trace {
                start,
                end: Some((cur, k)),
                holonomy: Some(hol),
                crossings,
                closed: Some(closed),
                segments,
            });
        }
        let j = (0..n)
            .find(|&j| side[j] < 0 && side[(j + 1) % n] > 0)
            .ok_or_else(|| Error::Inconsistent(format!("trace lost inside polygon {cur}")))?;
        crossings += 1;
        // Float position of the exit point for rendering only.
        let (p, q) = (rel[j].to_f64(), rel[(j + 1) % n].to_f64());
        let (ex, ey) = (q.0 - p.0, q.1 - p.1);
        let den = dx * ey - dy * ex;
        let exit_t = if den != 0.0 { (p.0 * ey - p.1 * ex) / den } else { entry_t };
        segments.push(TraceSegment { label: cur, start: local(entry_t), end: local(exit_t) });
        entry_t = exit_t;
        if crossings >= max_crossings {
            return Ok(Trace { start, end: None, holonomy: None, crossings, closed: None, segments });
        }
        let e = s.opposite(EdgeRef::new(cur, j));
        let target = s.polygon(e.label);
        let w = target.vertex((e.edge + 1) % target.len());
        offset = offset.add(poly.vertex(j)).sub(w);
        cur = e.label;
        first = false;
    }
}

/// Whether the traced saddle connection alone bounds a cylinder on its
/// left: turning clockwise by `pi` from the arriving segment at the end
/// singularity leads back to the starting ray.
pub fn bounds_cylinder_on_left(s: &TranslationSurface, trace: &Trace) -> Result<bool> {
    let (Some((mut l, mut k)), Some(v)) = (trace.end, trace.holonomy.as_ref()) else {
        return Err(Error::InvalidInput("trace did not reach a singularity".into()));
    };
    let mut d = v.neg();
    let total = s.polygons().iter().map(|p| p.len()).sum::<usize>();
    for _ in 0..=total {
        let (a, _) = corner_sector(s, l, k);
        if in_closed_sector(&a, &d, v) {
            return Ok((l, k) == trace.start);
        }
        (l, k) = s.next_corner_cw(l, k);
        d = corner_sector(s, l, k).1;
    }
    Err(Error::NoTermination(total))
}

/// The double pentagon: top pentagon 0 and bottom pentagon 1 glued edge to
/// edge.
pub fn double_pentagon() -> TranslationSurface {
    let p = regular_pentagon();
    let q = p.negate();
    let pairs: Vec<_> = (0..5).map(|i| (EdgeRef::new(0, i), EdgeRef::new(1, i))).collect();
    TranslationSurface::from_pairs(vec![p, q], &pairs, 0).expect("double pentagon is a valid surface")
}

// ---------------------------------------------------------------------------
// Reduction and combinatorial length

/// Output of [`rosen_reduce`].
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    /// Word over `r = R^-1`, `t = T^-1` with `word_matrix(word) v = terminal`.
    pub word: String,
    pub terminal: Vec2,
    pub kind: SaddleKind,
}

/// Default bound on reduction steps.
pub const REDUCTION_STEPS: usize = 100_000;

/// Applies `v -> T^-1 v` when `arg v` is in `[0, pi/5)` and `v -> R^-1 v`
/// otherwise until `v` is horizontal, which for a saddle connection
/// holonomy of `Pi_5` with `arg v` in `[0, 4 pi/5)` happens at `(2, 0)` or
/// `(2 phi, 0)`.
pub fn rosen_reduce(v: &Vec2, max_steps: usize) -> Result<Reduction> {
    if !arg_in(v, 0, 4) {
        return Err(Error::InvalidInput("holonomy must have argument in [0, 4 pi/5)".into()));
    }
    let rinv = generator_r().inverse()?;
    let tinv = generator_t().inverse()?;
    let mut cur = v.clone();
    let mut steps = Vec::new();
    for _ in 0..max_steps {
        if cur.y.is_zero() {
            let kind = if cur == SaddleKind::Long.horizontal_holonomy() {
                SaddleKind::Long
            } else if cur == SaddleKind::Short.horizontal_holonomy() {
                SaddleKind::Short
            } else {
                return Err(Error::InvalidInput(format!("reduction ended at {cur:?}, not a saddle holonomy")));
            };
            let word = steps.iter().rev().collect();
            return Ok(Reduction { word, terminal: cur, kind });
        }
        if arg_in(&cur, 0, 1) {
            cur = tinv.act(&cur);
            steps.push('t');
        } else {
            cur = rinv.act(&cur);
            steps.push('r');
        }
    }
    Err(Error::NoTermination(max_steps))
}

fn integer_coeff(x: &Nf, i: usize) -> Result<i64> {
    let c = x.coeff(i);
    if !c.is_integer() {
        return Err(Error::InvalidInput(format!("coefficient {c} is not an integer")));
    }
    i64::try_from(c.to_integer()).map_err(|_| Error::InvalidInput("coefficient too large".into()))
}

/// Number of pentagon interiors crossed by a long saddle connection of
/// `Pi_5` with holonomy `v = (a + b s^2, c s + d s^3)` that bounds a
/// cylinder on its left, for `arg v` in `[0, 3 pi/5)`.
pub fn combinatorial_length(v: &Vec2) -> Result<i64> {
    if integer_coeff(&v.x, 1)? != 0 || integer_coeff(&v.x, 3)? != 0 || integer_coeff(&v.y, 0)? != 0 || integer_coeff(&v.y, 2)? != 0 {
        return Err(Error::InvalidInput("holonomy is not of the form (a + b s^2, c s + d s^3)".into()));
    }
    let (a, b) = (integer_coeff(&v.x, 0)?, integer_coeff(&v.x, 2)?);
    let (c, d) = (integer_coeff(&v.y, 1)?, integer_coeff(&v.y, 3)?);
    if arg_in(v, 0, 1) {
        Ok(-b - c - 4 * d)
    } else if arg_in(v, 1, 2) {
        Ok(a + 3 * b - d - 1)
    } else if arg_in(v, 2, 3) {
        Ok(2 * c + 6 * d - 1)
    } else {
        Err(Error::InvalidInput("holonomy argument outside [0, 3 pi/5)".into()))
    }
}

// ---------------------------------------------------------------------------
// Classification

/// One class of closed saddle connections.
#[derive(Clone, Debug, Serialize)]
pub struct SaddleClassRecord {
    /// One-based id, classes sorted by length.
    pub id: usize,
    /// Minimal word of the coset.
    pub word: String,
    /// Rotation exponent in `R^k w^-1 (2 phi, 0)`.
    pub k: usize,
    #[serde(skip)]
    pub holonomy: Vec2,
    pub length: f64,
    pub approx: (f64, f64),
    /// Index of the `<t, j>` class in [`equivalence_classes`] order.
    pub class_index: usize,
}

impl SaddleClassRecord {
    /// Holonomy coordinates as `[x, y]` coefficient strings.
    pub fn holonomy_strings(&self) -> [String; 2] {
        [self.holonomy.x.to_poly_string(), self.holonomy.y.to_poly_string()]
    }
}

/// Among `R^k w^-1 (2 phi, 0)`, the vector with the least `k` whose
/// argument lies in `[0, 3 pi/5)` and whose separatrix from the left end of
/// the horizontal edge of the top pentagon of `Pi_5` is a saddle connection
/// with that holonomy bounding a cylinder on its left.
pub fn normalize_holonomy(word: &str) -> Result<(usize, Vec2)> {
    let pi5 = double_pentagon();
    let base = word_matrix(&inverse_word(word))?.act(&SaddleKind::Long.horizontal_holonomy());
    let r = generator_r();
    let mut v = base;
    for k in 0..10 {
        if arg_in(&v, 0, 3) {
            let tr = trace_separatrix(&pi5, (0, 0), &v, 1_000_000)?;
            if tr.holonomy.as_ref() == Some(&v) && bounds_cylinder_on_left(&pi5, &tr)? {
                return Ok((k, v));
            }
        }
        v = r.act(&v);
    }
    Err(Error::Inconsistent(format!("no normalized holonomy for word {word}")))
}

/// The classes of closed saddle connections: the long-closed class words
/// with normalized holonomies, sorted by length.
pub fn classify_closed_saddles(table: &OrbitTable) -> Result<Vec<SaddleClassRecord>> {
    let hits = closed_classes(table, SaddleKind::Long)?;
    let mut records = hits
        .par_iter()
        .map(|(c, w)| -> Result<SaddleClassRecord> {
            let (k, v) = normalize_holonomy(w)?;
            Ok(SaddleClassRecord {
                id: 0,
                word: w.clone(),
                k,
                length: v.length_f64(),
                approx: v.to_f64(),
                holonomy: v,
                class_index: *c,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| a.holonomy.norm2().cmp(&b.holonomy.norm2()).then_with(|| a.class_index.cmp(&b.class_index)));
    for (i, r) in records.iter_mut().enumerate() {
        r.id = i + 1;
    }
    Ok(records)
}

// ---------------------------------------------------------------------------
// Enumeration of saddle connections on Pi_5

/// A saddle connection holonomy of `Pi_5` with `M` such that
/// `v = word_matrix(M) (horizontal holonomy of kind)`.
#[derive(Clone, Debug)]
pub struct HolonomyNode {
    pub v: Vec2,
    pub word: String,
    pub kind: SaddleKind,
}

/// All saddle connection holonomies of `Pi_5` with argument in
/// `[0, 4 pi/5)` and length below `bound`, found by inverting the reduction
/// of [`rosen_reduce`] from the two horizontal holonomies. A step of the
/// reduction never lengthens a vector, so pruning at the bound is exact.
pub fn saddle_holonomy_tree(bound: &Nf) -> Result<Vec<HolonomyNode>> {
    if bound.sign() <= 0 {
        return Err(Error::InvalidInput("length bound must be positive".into()));
    }
    let b2 = bound.mul_ref(bound);
    let r = generator_r();
    let t = generator_t();
    let mut out = Vec::new();
    let mut stack: Vec<HolonomyNode> = [SaddleKind::Short, SaddleKind::Long]
        .into_iter()
        .map(|kind| HolonomyNode { v: kind.horizontal_holonomy(), word: String::new(), kind })
        .filter(|n| n.v.norm2() < b2)
        .collect();
    while let Some(node) = stack.pop() {
        if !node.v.y.is_zero() {
            let tv = t.act(&node.v);
            if arg_in(&tv, 0, 1) && tv.norm2() < b2 {
                stack.push(HolonomyNode { v: tv, word: format!("T{}", node.word), kind: node.kind });
            }
        }
        let rv = r.act(&node.v);
        if arg_in(&rv, 1, 4) {
            stack.push(HolonomyNode { v: rv, word: format!("R{}", node.word), kind: node.kind });
        }
        out.push(node);
    }
    Ok(out)
}

/// Saddle connection holonomies of `Pi_5` up to rotation: those with
/// argument in `[0, 3 pi/5)` and length below `bound`.
pub fn enumerate_saddle_connections(bound: &Nf) -> Result<Vec<Vec2>> {
    Ok(saddle_holonomy_tree(bound)?.into_iter().filter(|n| arg_in(&n.v, 0, 3)).map(|n| n.v).collect())
}

/// A shortest closed representative of one class.
#[derive(Clone, Debug)]
pub struct ShortestRecord {
    pub class_index: usize,
    /// `M` with `v = M (2 phi, 0)`; the reduction word is its inverse.
    pub word: String,
    pub holonomy: Vec2,
    pub length: f64,
    /// Number of normalized holonomies of the minimal length in the class.
    pub ties: usize,
}

/// Shortest closed saddle connection of every long-closed class, among all
/// holonomies below `bound`, normalized as in [`normalize_holonomy`].
/// Classes without a representative below the bound are absent.
pub fn shortest_representatives(table: &OrbitTable, bound: &Nf) -> Result<BTreeMap<usize, ShortestRecord>> {
    let closed: HashMap<usize, String> = closed_classes(table, SaddleKind::Long)?.into_iter().collect();
    let classes = equivalence_classes(table)?;
    let mut class_of = vec![0; table.len()];
    for (c, members) in classes.iter().enumerate() {
        for &i in members {
            class_of[i] = c;
        }
    }
    let nodes = saddle_holonomy_tree(bound)?;
    let mut best: HashMap<usize, (Nf, Vec<HolonomyNode>)> = HashMap::new();
    for node in nodes {
        if node.kind != SaddleKind::Long || !arg_in(&node.v, 0, 3) {
            continue;
        }
        let c = class_of[table.index_of_word(&inverse_word(&node.word))?];
        if !closed.contains_key(&c) {
            continue;
        }
        let l2 = node.v.norm2();
        match best.get_mut(&c) {
            Some((m, list)) if *m == l2 => list.push(node),
            Some((m, list)) if l2 < *m => {
                *m = l2;
                *list = vec![node];
            }
            Some(_) => {}
            None => {
                best.insert(c, (l2, vec![node]));
            }
        }
    }
    let pi5 = double_pentagon();
    let mut out = BTreeMap::new();
    for (c, (_, mut list)) in best {
        list.sort_by(|a, b| a.v.cmp_angle(&b.v));
        let mut normalized = Vec::new();
        for node in list {
            let tr = trace_separatrix(&pi5, (0, 0), &node.v, 1_000_000)?;
            if tr.holonomy.as_ref() == Some(&node.v) && bounds_cylinder_on_left(&pi5, &tr)? {
                normalized.push(node);
            }
        }
        let ties = normalized.len();
        let first = normalized
            .into_iter()
            .next()
            .ok_or_else(|| Error::Inconsistent(format!("class {c} has no normalized shortest representative")))?;
        out.insert(
            c,
            ShortestRecord { class_index: c, length: first.v.length_f64(), word: first.word, holonomy: first.v, ties },
        );
    }
    Ok(out)
}

/// `R^k`, exactly.
pub fn rotation(k: usize) -> Mat2 {
    generator_r().pow((k % 10) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::platonic::build_unfolding;

    fn nf(c: [i64; 4]) -> Nf {
        Nf::from_ints(c, 1)
    }

    #[test]
    fn quadruple_glues_to_the_unfolding() {
        let q = MonodromyQuadruple::dodecahedron().unwrap();
        let d = build_unfolding(Solid::Dodecahedron).unwrap().surface;
        assert_eq!(q.to_surface().unwrap().canonicalize(), d.canonicalize());
    }

    #[test]
    fn gam_t_fixes_x1_and_stays_transitive() {
        let q = MonodromyQuadruple::dodecahedron().unwrap();
        let t = q.gam_t();
        assert_eq!(t.x()[1], q.x()[1]);
        assert!(is_transitive(t.x()));
        assert!(is_transitive(q.gam_r().x()));
    }

    #[test]
    fn vert_cycle_has_24_sheets() {
        let q = MonodromyQuadruple::dodecahedron().unwrap();
        for n in [0, 17, 59] {
            let v = q.vert_cycle(n).unwrap();
            assert_eq!(v.len(), 24);
            assert_eq!(v[0], n);
        }
        let v = q.vert_cycle(0).unwrap();
        assert!(vert_to_self(SaddleKind::Long, &v).is_empty());
        assert!(!lift_is_closed(&q, SaddleKind::Long, 0).unwrap());
    }

    #[test]
    fn sigma0_on_the_double_pentagon() {
        let s = double_pentagon();
        // From the left end of the top horizontal edge the long horizontal
        // diagonal runs left through the bottom pentagon.
        let v = SaddleKind::Long.horizontal_holonomy();
        let start = corner_for_direction(&s, 0, 0, &v.neg()).unwrap();
        let tr = trace_separatrix(&s, start, &v.neg(), 100).unwrap();
        assert_eq!(tr.holonomy, Some(v.neg()));
        assert_eq!(tr.crossings, 1);
        assert_eq!(tr.closed, Some(true));
        // Along the horizontal edge: short, no interior crossed.
        let tr = trace_separatrix(&s, (0, 0), &SaddleKind::Short.horizontal_holonomy(), 100).unwrap();
        assert_eq!(tr.holonomy, Some(Vec2::from_ints(2, 0)));
        assert_eq!(tr.crossings, 0);
    }

    #[test]
    fn reduction_of_terminal_vectors() {
        let long = SaddleKind::Long.horizontal_holonomy();
        let r = rosen_reduce(&long, 10).unwrap();
        assert_eq!((r.word.as_str(), r.kind), ("", SaddleKind::Long));
        let r = rosen_reduce(&Vec2::from_ints(2, 0), 10).unwrap();
        assert_eq!((r.word.as_str(), r.kind), ("", SaddleKind::Short));
        assert!(rosen_reduce(&Vec2::from_ints(3, 0), 10).is_err());
        assert!(rosen_reduce(&Vec2::from_ints(-1, -1), 10).is_err());
    }

    #[test]
    fn reduction_word_maps_back() {
        let v = Vec2::new(nf([12, 0, -3, 0]), nf([0, 19, 0, -5]));
        let red = rosen_reduce(&v, 1000).unwrap();
        assert_eq!(red.kind, SaddleKind::Long);
        assert_eq!(word_matrix(&red.word).unwrap().act(&v), red.terminal);
    }

    #[test]
    fn combinatorial_length_examples() {
        assert_eq!(combinatorial_length(&SaddleKind::Long.horizontal_holonomy()).unwrap(), 2);
        let v = Vec2::new(nf([12, 0, -3, 0]), nf([0, 19, 0, -5]));
        assert_eq!(combinatorial_length(&v).unwrap(), 7);
        assert!(combinatorial_length(&Vec2::from_ints(-1, 1)).is_err());
    }

    #[test]
    fn directions() {
        assert!(arg_in(&Vec2::from_ints(1, 0), 0, 1));
        assert!(arg_in(&unit_direction(1), 1, 2));
        assert!(!arg_in(&unit_direction(1), 0, 1));
        assert!(arg_in(&Vec2::from_ints(-1, 1), 3, 4));
        assert_eq!(rotation(10), Mat2::identity());
        assert_eq!(unit_direction(5), Vec2::from_ints(-1, 0));
    }

    #[test]
    fn small_tree() {
        let nodes = saddle_holonomy_tree(&Nf::from_int(4)).unwrap();
        // (2, 0), (2 phi, 0) and their rotations by pi/5, 2pi/5, 3pi/5.
        assert_eq!(nodes.len(), 8);
        for n in &nodes {
            assert_eq!(word_matrix(&n.word).unwrap().act(&n.kind.horizontal_holonomy()), n.v);
            let red = rosen_reduce(&n.v, 100).unwrap();
            assert_eq!(red.kind, n.kind);
        }
    }
}
