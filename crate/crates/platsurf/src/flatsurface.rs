//! Translation surfaces presented as convex polygons glued by translations,
//! the affine action, Delaunay decompositions and canonical forms.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Nf;
use crate::planar::{ConvexPolygon, Mat2, Vec2};

/// An edge `(label, edge_index)` of a surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    pub label: usize,
    pub edge: usize,
}

impl EdgeRef {
    /// Creates an edge reference.
    pub fn new(label: usize, edge: usize) -> EdgeRef {
        EdgeRef { label, edge }
    }
}

/// A translation surface: polygons labeled `0..n`, a fixed-point-free
/// gluing involution on edges and a base label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationSurface {
    polygons: Vec<ConvexPolygon>,
    gluing: Vec<Vec<EdgeRef>>,
    base_label: usize,
}

impl TranslationSurface {
    /// Validates and builds a surface.
    pub fn new(polygons: Vec<ConvexPolygon>, gluing: Vec<Vec<EdgeRef>>, base_label: usize) -> Result<Self> {
        let s = TranslationSurface { polygons, gluing, base_label };
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn new_unchecked(polygons: Vec<ConvexPolygon>, gluing: Vec<Vec<EdgeRef>>, base_label: usize) -> Self {
        TranslationSurface { polygons, gluing, base_label }
    }

    /// Builds a surface from a list of glued edge pairs.
    pub fn from_pairs(polygons: Vec<ConvexPolygon>, pairs: &[(EdgeRef, EdgeRef)], base_label: usize) -> Result<Self> {
        let sentinel = EdgeRef::new(usize::MAX, usize::MAX);
        let mut gluing: Vec<Vec<EdgeRef>> = polygons.iter().map(|p| vec![sentinel; p.len()]).collect();
        for &(a, b) in pairs {
            for e in [a, b] {
                if e.label >= polygons.len() || e.edge >= polygons[e.label].len() {
                    return Err(Error::InvalidSurface(format!("edge {e:?} out of range")));
                }
            }
            if gluing[a.label][a.edge] != sentinel || gluing[b.label][b.edge] != sentinel {
                return Err(Error::InvalidSurface(format!("edge glued twice in {a:?} <-> {b:?}")));
            }
            gluing[a.label][a.edge] = b;
            gluing[b.label][b.edge] = a;
        }
        TranslationSurface::new(polygons, gluing, base_label)
    }

    fn validate(&self) -> Result<()> {
        let n = self.polygons.len();
        if n == 0 || self.gluing.len() != n || self.base_label >= n {
            return Err(Error::InvalidSurface("bad label set or base label".into()));
        }
        for (i, p) in self.polygons.iter().enumerate() {
            if self.gluing[i].len() != p.len() {
                return Err(Error::InvalidSurface(format!("polygon {i} has wrong gluing arity")));
            }
            for (j, &e) in self.gluing[i].iter().enumerate() {
                if e.label >= n || e.edge >= self.polygons[e.label].len() {
                    return Err(Error::InvalidSurface(format!("edge ({i},{j}) glued to missing edge {e:?}")));
                }
                if e == EdgeRef::new(i, j) {
                    return Err(Error::InvalidSurface(format!("edge ({i},{j}) glued to itself")));
                }
                if self.gluing[e.label][e.edge] != EdgeRef::new(i, j) {
                    return Err(Error::InvalidSurface(format!("gluing is not an involution at ({i},{j})")));
                }
                if self.polygons[e.label].edge(e.edge) != p.edge(j).neg() {
                    return Err(Error::InvalidSurface(format!("edge ({i},{j}) is not a translate of {e:?}")));
                }
            }
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.base_label]);
        seen[self.base_label] = true;
        let mut count = 1;
        while let Some(i) = queue.pop_front() {
            for e in &self.gluing[i] {
                if !seen[e.label] {
                    seen[e.label] = true;
                    count += 1;
                    queue.push_back(e.label);
                }
            }
        }
        if count != n {
            return Err(Error::InvalidSurface("surface is not connected".into()));
        }
        Ok(())
    }

    /// Number of polygons.
    pub fn num_polygons(&self) -> usize {
        self.polygons.len()
    }

    /// Polygon with the given label.
    pub fn polygon(&self, label: usize) -> &ConvexPolygon {
        &self.polygons[label]
    }

    /// All polygons in label order.
    pub fn polygons(&self) -> &[ConvexPolygon] {
        &self.polygons
    }

    /// The edge glued to `e`.
    pub fn opposite(&self, e: EdgeRef) -> EdgeRef {
        self.gluing[e.label][e.edge]
    }

    /// Gluing table indexed by label then edge.
    pub fn gluing(&self) -> &[Vec<EdgeRef>] {
        &self.gluing
    }

    /// The base label.
    pub fn base_label(&self) -> usize {
        self.base_label
    }

    /// Same surface with a different base label.
    pub fn with_base_label(&self, base_label: usize) -> Result<Self> {
        if base_label >= self.polygons.len() {
            return Err(Error::InvalidSurface(format!("no polygon {base_label}")));
        }
        let mut s = self.clone();
        s.base_label = base_label;
        Ok(s)
    }

    /// Exact total area times two.
    pub fn twice_area(&self) -> Nf {
        self.polygons.iter().fold(Nf::zero(), |acc, p| acc + p.twice_area())
    }

    /// Image under a matrix with positive determinant; gluings unchanged.
    pub fn apply_matrix(&self, m: &Mat2) -> Result<Self> {
        if m.det().sign() <= 0 {
            return Err(Error::NonPositiveDeterminant);
        }
        Ok(TranslationSurface {
            polygons: self.polygons.iter().map(|p| p.transform(m)).collect(),
            gluing: self.gluing.clone(),
            base_label: self.base_label,
        })
    }

    /// Image under any invertible matrix. For negative determinant each
    /// polygon's vertex order is reversed, so new edge `j` is the image of
    /// old edge `n - 1 - j`.
    pub fn apply_gl2(&self, m: &Mat2) -> Result<Self> {
        match m.det().sign() {
            1 => self.apply_matrix(m),
            0 => Err(Error::NonPositiveDeterminant),
            _ => {
                let polygons = self
                    .polygons
                    .iter()
                    .map(|p| {
                        let n = p.len();
                        ConvexPolygon::new_unchecked((0..n).map(|j| m.act(p.vertex((n - j) % n))).collect())
                    })
                    .collect();
                let gluing = self
                    .gluing
                    .iter()
                    .map(|g| {
                        let n = g.len();
                        (0..n)
                            .map(|j| {
                                let e = g[n - 1 - j];
                                EdgeRef::new(e.label, self.polygons[e.label].len() - 1 - e.edge)
                            })
                            .collect()
                    })
                    .collect();
                Ok(TranslationSurface { polygons, gluing, base_label: self.base_label })
            }
        }
    }

    /// Relabels polygons: `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.polygons.len();
        let mut inv = vec![usize::MAX; n];
        if perm.len() != n {
            return Err(Error::InvalidInput("relabeling has wrong length".into()));
        }
        for (old, &new) in perm.iter().enumerate() {
            if new >= n || inv[new] != usize::MAX {
                return Err(Error::InvalidInput("relabeling is not a bijection".into()));
            }
            inv[new] = old;
        }
        let polygons = inv.iter().map(|&old| self.polygons[old].clone()).collect();
        let gluing = inv
            .iter()
            .map(|&old| self.gluing[old].iter().map(|e| EdgeRef::new(perm[e.label], e.edge)).collect())
            .collect();
        Ok(TranslationSurface { polygons, gluing, base_label: perm[self.base_label] })
    }

    /// Replaces every polygon by its standard representative, re-indexing
    /// edges accordingly.
    pub fn standardized(&self) -> Self {
        let mut offsets = Vec::with_capacity(self.polygons.len());
        let mut polygons = Vec::with_capacity(self.polygons.len());
        for p in &self.polygons {
            let (q, k) = standardize(p);
            polygons.push(q);
            offsets.push(k);
        }
        let gluing = (0..self.polygons.len())
            .map(|i| {
                let n = self.polygons[i].len();
                (0..n)
                    .map(|j| {
                        let e = self.gluing[i][(j + offsets[i]) % n];
                        let m = self.polygons[e.label].len();
                        EdgeRef::new(e.label, (e.edge + m - offsets[e.label]) % m)
                    })
                    .collect()
            })
            .collect();
        TranslationSurface { polygons, gluing, base_label: self.base_label }
    }

    /// The Delaunay decomposition, with cocircular triangles merged into
    /// maximal convex cells and every cell standardized.
    pub fn delaunay(&self) -> Self {
        let mut tri = Triangulation::fan(self);
        tri.make_delaunay();
        tri.merge_cells().standardized()
    }

    /// Whether the polygons form a Delaunay decomposition: after fan
    /// triangulating every cell, no edge has the opposite vertex strictly
    /// inside the circumcircle of a triangle. Local Delaunay at every edge
    /// implies that every circumdisk is empty.
    pub fn is_delaunay(&self) -> bool {
        let tri = Triangulation::fan(self);
        (0..tri.edges.len()).all(|t| (0..3).all(|i| tri.incircle(t, i) >= 0))
    }

    /// Breadth first indexing from `base` (Appendix-style queue order, edges
    /// scanned in index order). Returns the surface relabeled so that the
    /// base is 0 and the enumeration is the identity.
    pub fn breadth_first_index(&self, base: usize) -> Result<Self> {
        if base >= self.polygons.len() {
            return Err(Error::InvalidSurface(format!("no polygon {base}")));
        }
        let order = bfs_order(&self.gluing, base);
        if order.len() != self.polygons.len() {
            return Err(Error::InvalidSurface("surface is not connected".into()));
        }
        let mut perm = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        self.relabel(&perm)
    }

    /// Canonical form of the surface; equal surfaces have identical forms.
    pub fn canonicalize(&self) -> CanonicalForm {
        canonicalize_standard_delaunay(&self.delaunay()).0
    }

    /// Translation automorphisms, as bijections of the Delaunay cells of
    /// the canonical form (`result[k][m]` is the image of cell `m`).
    pub fn translation_automorphisms(&self) -> Vec<Vec<usize>> {
        let d = self.delaunay();
        let (_, minimizers) = canonicalize_standard_delaunay(&d);
        let orders: Vec<Vec<usize>> = minimizers.iter().map(|&b| bfs_order(&d.gluing, b)).collect();
        // Express in the labels of the first minimizer's indexing.
        let mut pos0 = vec![0; orders[0].len()];
        for (m, &old) in orders[0].iter().enumerate() {
            pos0[old] = m;
        }
        orders.iter().map(|ord| ord.iter().map(|&old| pos0[old]).collect()).collect()
    }

    /// Vertex classes: `classes[label][i]` is the singularity id of vertex
    /// `i` of polygon `label`. Ids are numbered in order of first corner.
    pub fn vertex_classes(&self) -> Vec<Vec<usize>> {
        let mut cls: Vec<Vec<usize>> = self.polygons.iter().map(|p| vec![usize::MAX; p.len()]).collect();
        let mut next = 0;
        for l in 0..self.polygons.len() {
            for i in 0..self.polygons[l].len() {
                if cls[l][i] != usize::MAX {
                    continue;
                }
                let (mut pl, mut pi) = (l, i);
                while cls[pl][pi] == usize::MAX {
                    cls[pl][pi] = next;
                    (pl, pi) = self.next_corner_ccw(pl, pi);
                }
                next += 1;
            }
        }
        cls
    }

    /// Corner reached by rotating counter-clockwise around the vertex at
    /// corner `(label, i)`: across edge `i - 1` into the glued polygon.
    pub fn next_corner_ccw(&self, label: usize, i: usize) -> (usize, usize) {
        let n = self.polygons[label].len();
        let e = self.gluing[label][(i + n - 1) % n];
        (e.label, e.edge)
    }

    /// Corner reached by rotating clockwise around the vertex at corner
    /// `(label, i)`: across edge `i`.
    pub fn next_corner_cw(&self, label: usize, i: usize) -> (usize, usize) {
        let e = self.gluing[label][i];
        let m = self.polygons[e.label].len();
        (e.label, (e.edge + 1) % m)
    }

    /// Total cone angle of each singularity, in units of `2 pi`.
    pub fn cone_angles(&self) -> Vec<usize> {
        let cls = self.vertex_classes();
        let k = cls.iter().flatten().copied().max().map_or(0, |m| m + 1);
        let mut turns = vec![0usize; k];
        let east = Vec2::from_ints(1, 0);
        for (l, p) in self.polygons.iter().enumerate() {
            let n = p.len();
            for i in 0..n {
                let a = p.edge(i);
                let b = p.edge((i + n - 1) % n).neg();
                // The corner sweeps [angle(a), angle(b)) counter-clockwise.
                let a0 = a.cmp_angle(&east) == Ordering::Equal;
                let b0 = b.cmp_angle(&east) == Ordering::Equal;
                if a0 || (b.cmp_angle(&a) == Ordering::Less && !b0) {
                    turns[cls[l][i]] += 1;
                }
            }
        }
        turns
    }

    /// Genus from the Euler characteristic of the glued complex.
    pub fn genus(&self) -> usize {
        let v = self.cone_angles().len() as i64;
        let e = self.polygons.iter().map(|p| p.len()).sum::<usize>() as i64 / 2;
        let f = self.polygons.len() as i64;
        ((2 - (v - e + f)) / 2) as usize
    }

    /// Serializes to the surface JSON format.
    pub fn to_json(&self) -> SurfaceJson {
        let field = if self.polygons.iter().all(|p| p.vertices().iter().all(|v| v.x.is_rational() && v.y.is_rational())) {
            "rational"
        } else {
            FIELD_NAME
        };
        let coeffs = |x: &Nf| -> Vec<String> { x.to_coeff_string().split(',').map(str::to_string).collect() };
        let mut gluings = Vec::new();
        for (i, g) in self.gluing.iter().enumerate() {
            for (j, e) in g.iter().enumerate() {
                if (i, j) < (e.label, e.edge) {
                    gluings.push([[i, j], [e.label, e.edge]]);
                }
            }
        }
        SurfaceJson {
            field: field.to_string(),
            base_label: self.base_label,
            polygons: self
                .polygons
                .iter()
                .enumerate()
                .map(|(label, p)| PolygonJson {
                    label,
                    vertices: p.vertices().iter().map(|v| [coeffs(&v.x), coeffs(&v.y)]).collect(),
                })
                .collect(),
            gluings,
        }
    }

    /// Parses the surface JSON format.
    pub fn from_json(j: &SurfaceJson) -> Result<Self> {
        if j.field != FIELD_NAME && j.field != "rational" {
            return Err(Error::Parse(format!("unknown field {:?}", j.field)));
        }
        let mut polys: Vec<Option<ConvexPolygon>> = vec![None; j.polygons.len()];
        for p in &j.polygons {
            if p.label >= polys.len() || polys[p.label].is_some() {
                return Err(Error::Parse(format!("bad polygon label {}", p.label)));
            }
            let mut vs = Vec::with_capacity(p.vertices.len());
            for [x, y] in &p.vertices {
                let parse = |c: &Vec<String>| -> Result<Nf> {
                    if c.len() != 4 {
                        return Err(Error::Parse("coordinates need 4 coefficients".into()));
                    }
                    c.join(",").parse()
                };
                vs.push(Vec2::new(parse(x)?, parse(y)?));
            }
            polys[p.label] = Some(ConvexPolygon::new(vs)?);
        }
        let polygons: Vec<ConvexPolygon> = polys.into_iter().map(|p| p.expect("labels are a permutation")).collect();
        let pairs: Vec<(EdgeRef, EdgeRef)> = j
            .gluings
            .iter()
            .map(|[[a, b], [c, d]]| (EdgeRef::new(*a, *b), EdgeRef::new(*c, *d)))
            .collect();
        TranslationSurface::from_pairs(polygons, &pairs, j.base_label)
    }

    /// JSON text of the surface.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("surface JSON is serializable")
    }

    /// Parses JSON text.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: SurfaceJson = serde_json::from_str(s)?;
        TranslationSurface::from_json(&j)
    }
}

/// Name of the number field in surface files.
pub const FIELD_NAME: &str = "x^4-5x^2+5";

/// Serialized surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceJson {
    pub field: String,
    pub base_label: usize,
    pub polygons: Vec<PolygonJson>,
    pub gluings: Vec<[[usize; 2]; 2]>,
}

/// Serialized polygon: each vertex is `[x, y]` with four coefficient strings
/// per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub label: usize,
    pub vertices: Vec<[Vec<String>; 2]>,
}

/// Standard representative of a polygon and the rotation offset `k`: vertex
/// `j` of the result is vertex `j + k` of the input, translated.
pub fn standardize(p: &ConvexPolygon) -> (ConvexPolygon, usize) {
    let vs = p.vertices();
    let mut k = 0;
    for i in 1..vs.len() {
        let c = vs[i].y.cmp(&vs[k].y).then_with(|| vs[i].x.cmp(&vs[k].x));
        if c == Ordering::Less {
            k = i;
        }
    }
    let o = vs[k].neg();
    (p.rotate_labels(k).translate(&o), k)
}

/// Total order on standard polygons: fewer sides first, then the coordinate
/// string lexicographically.
pub fn polygon_cmp(p: &ConvexPolygon, q: &ConvexPolygon) -> Ordering {
    p.len().cmp(&q.len()).then_with(|| {
        for (a, b) in p.vertices().iter().zip(q.vertices()) {
            let c = a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y));
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}

/// `P < Q` in the polygon order.
pub fn polygon_less(p: &ConvexPolygon, q: &ConvexPolygon) -> bool {
    polygon_cmp(p, q) == Ordering::Less
}

fn bfs_order(gluing: &[Vec<EdgeRef>], base: usize) -> Vec<usize> {
    let mut seen = vec![false; gluing.len()];
    let mut order = Vec::with_capacity(gluing.len());
    seen[base] = true;
    order.push(base);
    let mut head = 0;
    while head < order.len() {
        let i = order[head];
        head += 1;
        for e in &gluing[i] {
            if !seen[e.label] {
                seen[e.label] = true;
                order.push(e.label);
            }
        }
    }
    order
}

/// Canonical form of a translation surface: cells in canonical order, each a
/// standard polygon drawn from a sorted list of shapes, plus gluings.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    shapes: Vec<ConvexPolygon>,
    cells: Vec<u32>,
    gluing: Vec<Vec<(u32, u8)>>,
    digest: u64,
}

impl CanonicalForm {
    /// Hash of the full structure.
    pub fn digest(&self) -> u64 {
        self.digest
    }

    /// Number of Delaunay cells.
    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    /// The canonically indexed surface.
    pub fn surface(&self) -> TranslationSurface {
        let polygons = self.cells.iter().map(|&c| self.shapes[c as usize].clone()).collect();
        let gluing = self
            .gluing
            .iter()
            .map(|g| g.iter().map(|&(l, e)| EdgeRef::new(l as usize, e as usize)).collect())
            .collect();
        TranslationSurface::new_unchecked(polygons, gluing, 0)
    }

    /// Image under a matrix, as a (non-canonical) surface.
    pub fn apply_matrix(&self, m: &Mat2) -> Result<TranslationSurface> {
        self.surface().apply_matrix(m)
    }

    /// Compares two canonical forms in the surface order.
    pub fn cmp_order(&self, other: &CanonicalForm) -> Ordering {
        let n = self.cells.len().cmp(&other.cells.len());
        if n != Ordering::Equal {
            return n;
        }
        for (a, b) in self.cells.iter().zip(&other.cells) {
            let c = polygon_cmp(&self.shapes[*a as usize], &other.shapes[*b as usize]);
            if c != Ordering::Equal {
                return c;
            }
        }
        self.gluing.cmp(&other.gluing)
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.digest == other.digest && self.cells == other.cells && self.gluing == other.gluing && self.shapes == other.shapes
    }
}

impl Eq for CanonicalForm {}

impl Hash for CanonicalForm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.digest.hash(state);
    }
}

/// Canonicalizes a surface already in standardized Delaunay form. Returns
/// the canonical form and every minimizing base cell in increasing order.
fn canonicalize_standard_delaunay(d: &TranslationSurface) -> (CanonicalForm, Vec<usize>) {
    // Rank distinct shapes.
    let mut shape_id: HashMap<&ConvexPolygon, usize> = HashMap::new();
    let mut shapes: Vec<&ConvexPolygon> = Vec::new();
    let raw: Vec<usize> = d
        .polygons
        .iter()
        .map(|p| {
            *shape_id.entry(p).or_insert_with(|| {
                shapes.push(p);
                shapes.len() - 1
            })
        })
        .collect();
    let mut sorted: Vec<usize> = (0..shapes.len()).collect();
    sorted.sort_by(|&a, &b| polygon_cmp(shapes[a], shapes[b]));
    let mut rank_of = vec![0u32; shapes.len()];
    for (r, &s) in sorted.iter().enumerate() {
        rank_of[s] = r as u32;
    }
    let rank: Vec<u32> = raw.iter().map(|&s| rank_of[s]).collect();

    let n = d.polygons.len();
    let mut best: Option<(Vec<u32>, Vec<Vec<(u32, u8)>>)> = None;
    let mut minimizers = Vec::new();
    let mut pos = vec![0u32; n];
    for base in (0..n).filter(|&b| rank[b] == 0) {
        let order = bfs_order(&d.gluing, base);
        for (m, &old) in order.iter().enumerate() {
            pos[old] = m as u32;
        }
        let ranks: Vec<u32> = order.iter().map(|&o| rank[o]).collect();
        let glue: Vec<Vec<(u32, u8)>> = order
            .iter()
            .map(|&o| d.gluing[o].iter().map(|e| (pos[e.label], e.edge as u8)).collect())
            .collect();
        let cand = (ranks, glue);
        match &best {
            None => {
                best = Some(cand);
                minimizers.push(base);
            }
            Some(b) => match cand.cmp(b) {
                Ordering::Less => {
                    best = Some(cand);
                    minimizers.clear();
                    minimizers.push(base);
                }
                Ordering::Equal => minimizers.push(base),
                Ordering::Greater => {}
            },
        }
    }
    let (cells, gluing) = best.expect("surface has a polygon of minimal rank");
    let shapes: Vec<ConvexPolygon> = sorted.iter().map(|&s| shapes[s].clone()).collect();
    let mut h = DefaultHasher::new();
    shapes.hash(&mut h);
    cells.hash(&mut h);
    gluing.hash(&mut h);
    let digest = h.finish();
    (CanonicalForm { shapes, cells, gluing, digest }, minimizers)
}

/// A triangulated translation surface stored by edge vectors.
struct Triangulation {
    edges: Vec<[Vec2; 3]>,
    glue: Vec<[(u32, u8); 3]>,
}

impl Triangulation {
    fn fan(s: &TranslationSurface) -> Triangulation {
        let mut edges = Vec::new();
        let mut glue = Vec::new();
        let mut first = Vec::with_capacity(s.polygons.len());
        for p in &s.polygons {
            first.push(edges.len());
            let n = p.len();
            let v0 = p.vertex(0);
            for k in 1..n - 1 {
                let (vk, vk1) = (p.vertex(k), p.vertex(k + 1));
                edges.push([vk.sub(v0), vk1.sub(vk), v0.sub(vk1)]);
                glue.push([(u32::MAX, 0u8); 3]);
            }
        }
        let slot = |l: usize, j: usize| -> (u32, u8) {
            let n = s.polygons[l].len();
            let f = first[l];
            if j == 0 {
                (f as u32, 0)
            } else if j <= n - 2 {
                ((f + j - 1) as u32, 1)
            } else {
                ((f + n - 3) as u32, 2)
            }
        };
        for (l, p) in s.polygons.iter().enumerate() {
            let f = first[l];
            for k in 0..p.len() - 3 {
                glue[f + k][2] = ((f + k + 1) as u32, 0);
                glue[f + k + 1][0] = ((f + k) as u32, 2);
            }
            for j in 0..p.len() {
                let (t, i) = slot(l, j);
                let e = s.gluing[l][j];
                glue[t as usize][i as usize] = slot(e.label, e.edge);
            }
        }
        Triangulation { edges, glue }
    }

    /// Sign of the in-circle determinant for edge `(t, i)`: negative when the
    /// far vertex of the neighbouring triangle lies strictly inside the
    /// circumcircle of `t`.
    fn incircle(&self, t: usize, i: usize) -> i32 {
        let (tp, ip) = self.glue[t][i];
        let e = &self.edges[t];
        let b = &e[i];
        let c = e[(i + 2) % 3].neg();
        let d = &self.edges[tp as usize][(ip as usize + 1) % 3];
        let (bn, cn, dn) = (b.norm2(), c.norm2(), d.norm2());
        let det = &b.x * &(&c.y * &dn - &cn * &d.y) - &b.y * &(&c.x * &dn - &cn * &d.x) + &bn * &c.cross(d);
        det.sign()
    }

    fn flip(&mut self, t: usize, i: usize) {
        let (tp, ip) = self.glue[t][i];
        let (tp, ip) = (tp as usize, ip as usize);
        let (i1, i2, ip1, ip2) = ((i + 1) % 3, (i + 2) % 3, (ip + 1) % 3, (ip + 2) % 3);
        let et = self.edges[t].clone();
        let ep = self.edges[tp].clone();
        let d = ep[ip1].clone();
        let c = et[i2].neg();
        let cd = c.sub(&d);
        let olds = [(t, i1), (t, i2), (tp, ip1), (tp, ip2)];
        let news = [(tp, 1u8), (t, 2u8), (t, 0u8), (tp, 0u8)];
        let partners: Vec<(u32, u8)> = olds.iter().map(|&(a, b)| self.glue[a][b]).collect();
        let map = |p: (u32, u8)| -> (u32, u8) {
            for (k, &(a, b)) in olds.iter().enumerate() {
                if (a as u32, b as u8) == p {
                    return (news[k].0 as u32, news[k].1);
                }
            }
            p
        };
        self.edges[t] = [d.clone(), cd.clone(), et[i2].clone()];
        self.edges[tp] = [ep[ip2].clone(), et[i1].clone(), cd.neg()];
        self.glue[t] = [map(partners[2]), (tp as u32, 2), map(partners[1])];
        self.glue[tp] = [map(partners[3]), map(partners[0]), (t as u32, 1)];
        for k in 0..4 {
            let p = partners[k];
            if !olds.iter().any(|&(a, b)| (a as u32, b as u8) == p) {
                self.glue[p.0 as usize][p.1 as usize] = (news[k].0 as u32, news[k].1);
            }
        }
    }

    fn make_delaunay(&mut self) {
        let mut stack: Vec<(usize, usize)> = (0..self.edges.len()).flat_map(|t| (0..3).map(move |i| (t, i))).collect();
        while let Some((t, i)) = stack.pop() {
            if self.incircle(t, i) < 0 {
                let tp = self.glue[t][i].0 as usize;
                self.flip(t, i);
                stack.extend([(t, 0), (t, 2), (tp, 0), (tp, 1)]);
            }
        }
    }

    fn merge_cells(&self) -> TranslationSurface {
        let nt = self.edges.len();
        let mut merged = vec![[false; 3]; nt];
        let mut parent: Vec<usize> = (0..nt).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for t in 0..nt {
            for i in 0..3 {
                let (tp, _) = self.glue[t][i];
                if (tp as usize) > t && self.incircle(t, i) == 0 {
                    let (tp, ip) = self.glue[t][i];
                    merged[t][i] = true;
                    merged[tp as usize][ip as usize] = true;
                    let (a, b) = (find(&mut parent, t), find(&mut parent, tp as usize));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut cell_of_root: HashMap<usize, usize> = HashMap::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for t in 0..nt {
            let r = find(&mut parent, t);
            let c = *cell_of_root.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[c].push(t);
        }
        // Position of each boundary edge as (cell, index).
        let mut edge_pos = vec![[(usize::MAX, usize::MAX); 3]; nt];
        let mut polygons = Vec::with_capacity(groups.len());
        for (c, g) in groups.iter().enumerate() {
            let mut origin: HashMap<usize, Vec2> = HashMap::new();
            origin.insert(g[0], Vec2::zero());
            let mut queue = VecDeque::from([g[0]]);
            let mut boundary: HashMap<Vec2, (usize, usize)> = HashMap::new();
            while let Some(t) = queue.pop_front() {
                let mut p = origin[&t].clone();
                for i in 0..3 {
                    let end = p.add(&self.edges[t][i]);
                    if merged[t][i] {
                        let (tp, ip) = self.glue[t][i];
                        let tp = tp as usize;
                        if let std::collections::hash_map::Entry::Vacant(v) = origin.entry(tp) {
                            let mut o = end.clone();
                            for k in 0..ip as usize {
                                o = o.sub(&self.edges[tp][k]);
                            }
                            v.insert(o);
                            queue.push_back(tp);
                        }
                    } else {
                        boundary.insert(p.clone(), (t, i));
                    }
                    p = end;
                }
            }
            let start = boundary.keys().min_by(|a, b| a.cmp_lex(b)).expect("cell has a boundary").clone();
            let mut verts = Vec::with_capacity(boundary.len());
            let mut p = start.clone();
            loop {
                let (t, i) = boundary[&p];
                edge_pos[t][i] = (c, verts.len());
                verts.push(p.clone());
                p = p.add(&self.edges[t][i]);
                if p == start {
                    break;
                }
            }
            debug_assert_eq!(verts.len(), boundary.len());
            polygons.push(ConvexPolygon::new_unchecked(verts));
        }
        let mut gluing: Vec<Vec<EdgeRef>> = polygons.iter().map(|p| vec![EdgeRef::new(0, 0); p.len()]).collect();
        for t in 0..nt {
            for i in 0..3 {
                if !merged[t][i] {
                    let (c, k) = edge_pos[t][i];
                    let (tp, ip) = self.glue[t][i];
                    let (c2, k2) = edge_pos[tp as usize][ip as usize];
                    gluing[c][k] = EdgeRef::new(c2, k2);
                }
            }
        }
        TranslationSurface::new_unchecked(polygons, gluing, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{generator_r, generator_t, regular_pentagon, unit_square};

    pub(crate) fn double_pentagon() -> TranslationSurface {
        let top = regular_pentagon();
        let bot = top.negate();
        let pairs: Vec<_> = (0..5).map(|k| (EdgeRef::new(0, k), EdgeRef::new(1, k))).collect();
        TranslationSurface::from_pairs(vec![top, bot], &pairs, 0).unwrap()
    }

    fn square_torus() -> TranslationSurface {
        let pairs = [(EdgeRef::new(0, 0), EdgeRef::new(0, 2)), (EdgeRef::new(0, 1), EdgeRef::new(0, 3))];
        TranslationSurface::from_pairs(vec![unit_square()], &pairs, 0).unwrap()
    }

    fn two_square_cylinder() -> TranslationSurface {
        let sq = unit_square();
        let pairs = [
            (EdgeRef::new(0, 1), EdgeRef::new(1, 3)),
            (EdgeRef::new(1, 1), EdgeRef::new(0, 3)),
            (EdgeRef::new(0, 0), EdgeRef::new(0, 2)),
            (EdgeRef::new(1, 0), EdgeRef::new(1, 2)),
        ];
        TranslationSurface::from_pairs(vec![sq.clone(), sq], &pairs, 0).unwrap()
    }

    #[test]
    fn standardize_bottom_pentagon() {
        let bot = regular_pentagon().negate();
        let (q, k) = standardize(&bot);
        assert_eq!(k, 3);
        assert_eq!(q.vertex(0), &Vec2::zero());
        for v in &q.vertices()[1..] {
            assert!(v.is_upper());
        }
        let (top, k0) = standardize(&regular_pentagon());
        assert_eq!(k0, 0);
        assert_eq!(top, regular_pentagon());
        let sq = unit_square().translate(&Vec2::from_ints(1, 1));
        assert_eq!(standardize(&sq).0, unit_square());
    }

    #[test]
    fn polygon_order() {
        let tri = ConvexPolygon::new(vec![Vec2::from_ints(0, 0), Vec2::from_ints(1, 0), Vec2::from_ints(0, 1)]).unwrap();
        assert!(polygon_less(&tri, &regular_pentagon()));
        assert!(!polygon_less(&tri, &tri));
        let bot = standardize(&regular_pentagon().negate()).0;
        // Vertex 1 of the standardized bottom pentagon is (2 - s^2 + ..)
        // with x below 2, so it sorts before the top pentagon.
        let first_x = bot.vertex(1).x.cmp(&regular_pentagon().vertex(1).x);
        assert_eq!(polygon_less(&bot, &regular_pentagon()), first_x == Ordering::Less);
    }

    #[test]
    fn delaunay_of_double_pentagon_is_itself() {
        let d = double_pentagon().delaunay();
        assert_eq!(d.num_polygons(), 2);
        assert!(d.polygons().iter().all(|p| p.len() == 5));
        assert_eq!(d.twice_area(), double_pentagon().twice_area());
        let dd = d.delaunay();
        assert_eq!(dd.canonicalize(), d.canonicalize());
    }

    #[test]
    fn delaunay_certificate() {
        let sheared = square_torus().apply_matrix(&Mat2::from_ints(1, 3, 0, 1)).unwrap();
        assert!(!sheared.is_delaunay());
        assert!(sheared.delaunay().is_delaunay());
        assert!(double_pentagon().is_delaunay());
        assert!(two_square_cylinder().is_delaunay());
    }

    #[test]
    fn delaunay_of_square_torus_is_the_square() {
        let d = square_torus().delaunay();
        assert_eq!(d.num_polygons(), 1);
        assert_eq!(d.polygon(0), &unit_square());
    }

    #[test]
    fn veech_elements_fix_double_pentagon() {
        let s = double_pentagon();
        let c = s.canonicalize();
        assert_eq!(s.apply_matrix(&generator_r()).unwrap().canonicalize(), c);
        assert_eq!(s.apply_matrix(&generator_t()).unwrap().canonicalize(), c);
        let shear = Mat2::from_ints(1, 1, 0, 1);
        assert_ne!(s.apply_matrix(&shear).unwrap().canonicalize(), c);
        assert!(s.apply_matrix(&Mat2::from_ints(1, 0, 0, -1)).is_err());
        let j = s.apply_gl2(&Mat2::from_ints(1, 0, 0, -1)).unwrap();
        assert!(TranslationSurface::new(j.polygons().to_vec(), j.gluing().to_vec(), 0).is_ok());
        assert_eq!(j.canonicalize(), c);
    }

    #[test]
    fn breadth_first_indexing() {
        let s = double_pentagon();
        let b = s.breadth_first_index(0).unwrap();
        assert_eq!(b.polygon(0), &regular_pentagon());
        assert_eq!(b.breadth_first_index(0).unwrap(), b);
        let b1 = s.breadth_first_index(1).unwrap();
        assert_eq!(b1.polygon(1), &regular_pentagon());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(double_pentagon().translation_automorphisms().len(), 1);
        assert_eq!(two_square_cylinder().translation_automorphisms().len(), 2);
    }

    #[test]
    fn cone_angles_and_genus() {
        let s = double_pentagon();
        assert_eq!(s.cone_angles(), vec![3]);
        assert_eq!(s.genus(), 2);
        assert_eq!(square_torus().cone_angles(), vec![1]);
        assert_eq!(square_torus().genus(), 1);
    }

    #[test]
    fn json_round_trip() {
        let s = double_pentagon();
        let text = s.to_json_string();
        assert_eq!(TranslationSurface::from_json_str(&text).unwrap(), s);
        assert_eq!(square_torus().to_json().field, "rational");
    }

    #[test]
    fn validation_rejects_bad_gluing() {
        let sq = unit_square();
        let pairs = [(EdgeRef::new(0, 0), EdgeRef::new(0, 1)), (EdgeRef::new(0, 2), EdgeRef::new(0, 3))];
        assert!(TranslationSurface::from_pairs(vec![sq], &pairs, 0).is_err());
    }
}
