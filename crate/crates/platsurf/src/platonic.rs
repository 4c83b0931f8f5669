//! The five Platonic solids: the `(sheet, poly)` coordinate system on their
//! unfoldings, sheet labels, monodromy permutations of the coverings of
//! `Pi_n`, and the unfoldings as translation surfaces.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flatsurface::{EdgeRef, TranslationSurface};
use crate::origami::Origami;
use crate::planar::{regular_pentagon, unit_square, ConvexPolygon, Vec2};

/// A permutation of `{0, .., m-1}` stored by images.
///
/// Composition follows `(p * q)(x) = p(q(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Identity on `m` points.
    pub fn identity(m: usize) -> Permutation {
        Permutation { images: (0..m).collect() }
    }

    /// Builds from an image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `m` points from disjoint cycles.
    pub fn from_cycles(m: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut used = vec![false; m];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x >= m || used[x] {
                    return Err(Error::InvalidPermutation(format!("cycle {c:?} repeats or exceeds {m}")));
                }
                used[x] = true;
                images[x] = c[(k + 1) % c.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Builds from 1-based images.
    pub fn from_one_based(images: &[usize]) -> Result<Permutation> {
        if images.iter().any(|&x| x == 0) {
            return Err(Error::InvalidPermutation("1-based image 0".into()));
        }
        Permutation::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// 1-based image array.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.images.len()
    }

    /// True on zero points.
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of a point.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// Image array.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    /// `self * q`, i.e. `x -> self(q(x))`.
    pub fn compose(&self, q: &Permutation) -> Permutation {
        Permutation { images: q.images.iter().map(|&y| self.images[y]).collect() }
    }

    /// `q * self`, i.e. apply `self` first, then `q`.
    pub fn then(&self, q: &Permutation) -> Permutation {
        q.compose(self)
    }

    /// `p^e` for an integer exponent.
    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut r = Permutation::identity(self.len());
        for _ in 0..e.unsigned_abs() {
            r = base.compose(&r);
        }
        r
    }

    /// `q p q^-1`.
    pub fn conjugate_by(&self, q: &Permutation) -> Permutation {
        q.compose(self).compose(&q.inverse())
    }

    /// True for the identity.
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Disjoint cycles including fixed points, each starting at its least
    /// element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }

    /// Cycle type as a map from cycle length to multiplicity.
    pub fn cycle_type(&self) -> BTreeMap<usize, usize> {
        let mut t = BTreeMap::new();
        for c in self.cycles() {
            *t.entry(c.len()).or_insert(0) += 1;
        }
        t
    }

    /// Number of cycles (fixed points included).
    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    /// Fixed points.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.images[i] == i).collect()
    }

    /// Order of the permutation.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        let parts: Vec<String> = cs
            .iter()
            .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Order of the group generated by permutations of a common set, by
/// closure. Fails when the group exceeds `cap` elements.
pub fn group_order(gens: &[Permutation], cap: usize) -> Result<usize> {
    let m = gens.first().map_or(0, |g| g.len());
    let id = Permutation::identity(m);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose(&p);
            if seen.insert(q.clone()) {
                if seen.len() > cap {
                    return Err(Error::OrbitCapExceeded(cap));
                }
                queue.push_back(q);
            }
        }
    }
    Ok(seen.len())
}

/// True when the permutations generate a transitive group.
pub fn is_transitive(gens: &[Permutation]) -> bool {
    let m = gens.first().map_or(0, |g| g.len());
    if m == 0 {
        return true;
    }
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for g in gens {
            for y in [g.apply(x), g.inverse().apply(x)] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
    }
    count == m
}

/// The five Platonic solids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Solid {
    Tetrahedron,
    Octahedron,
    Cube,
    Icosahedron,
    Dodecahedron,
}

impl Solid {
    /// All solids in table order.
    pub const ALL: [Solid; 5] = [Solid::Tetrahedron, Solid::Octahedron, Solid::Cube, Solid::Icosahedron, Solid::Dodecahedron];

    /// Lower-case name.
    pub fn name(self) -> &'static str {
        match self {
            Solid::Tetrahedron => "tetrahedron",
            Solid::Octahedron => "octahedron",
            Solid::Cube => "cube",
            Solid::Icosahedron => "icosahedron",
            Solid::Dodecahedron => "dodecahedron",
        }
    }

    /// Order `k` of the `k`-differential, which equals the number of sheets
    /// (rotated copies of a net) in the unfolding.
    pub fn k(self) -> usize {
        match self {
            Solid::Tetrahedron => 2,
            Solid::Octahedron => 3,
            Solid::Cube => 4,
            Solid::Icosahedron => 6,
            Solid::Dodecahedron => 10,
        }
    }

    /// Number of faces.
    pub fn faces(self) -> usize {
        match self {
            Solid::Tetrahedron => 4,
            Solid::Octahedron => 8,
            Solid::Cube => 6,
            Solid::Icosahedron => 20,
            Solid::Dodecahedron => 12,
        }
    }

    /// Sides per face.
    pub fn face_sides(self) -> usize {
        match self {
            Solid::Cube => 4,
            Solid::Dodecahedron => 5,
            _ => 3,
        }
    }

    /// Number of vertices of the solid (= simple poles of the differential).
    pub fn vertices(self) -> usize {
        2 * self.k()
    }

    /// Whether the `(sheet, poly)` adjacency listing exists for this solid.
    pub fn has_adjacency(self) -> bool {
        matches!(self, Solid::Cube | Solid::Icosahedron | Solid::Dodecahedron)
    }
}

impl fmt::Display for Solid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Solid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Solid> {
        match s.to_ascii_lowercase().as_str() {
            "tetrahedron" | "tetra" => Ok(Solid::Tetrahedron),
            "octahedron" | "octa" => Ok(Solid::Octahedron),
            "cube" | "hexahedron" => Ok(Solid::Cube),
            "icosahedron" | "icosa" => Ok(Solid::Icosahedron),
            "dodecahedron" | "dodeca" | "dodec" => Ok(Solid::Dodecahedron),
            _ => Err(Error::Parse(format!("unknown solid {s:?}"))),
        }
    }
}

/// Coordinates `(sheet, poly)` of a face copy in an unfolding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceCoord {
    pub sheet: usize,
    pub poly: usize,
}

impl FaceCoord {
    /// Creates a coordinate.
    pub fn new(sheet: usize, poly: usize) -> FaceCoord {
        FaceCoord { sheet, poly }
    }
}

const CUBE_BASE: [[(i64, usize); 4]; 6] = [
    [(-1, 4), (0, 1), (1, 5), (0, 3)],
    [(0, 4), (0, 2), (0, 5), (0, 0)],
    [(1, 4), (0, 3), (-1, 5), (0, 1)],
    [(2, 4), (0, 0), (2, 5), (0, 2)],
    [(2, 3), (-1, 2), (0, 1), (1, 0)],
    [(0, 1), (1, 2), (2, 3), (3, 0)],
];

const ICOSA_BASE: [[(i64, usize); 3]; 20] = [
    [(0, 19), (0, 3), (0, 1)],
    [(0, 18), (0, 8), (0, 0)],
    [(0, 17), (0, 5), (0, 3)],
    [(0, 16), (0, 0), (0, 2)],
    [(0, 15), (0, 7), (0, 5)],
    [(0, 14), (0, 2), (0, 4)],
    [(0, 13), (0, 9), (0, 7)],
    [(0, 12), (0, 4), (0, 6)],
    [(0, 11), (0, 1), (0, 9)],
    [(0, 10), (0, 6), (0, 8)],
    [(0, 9), (-1, 18), (1, 12)],
    [(0, 8), (-1, 13), (1, 19)],
    [(0, 7), (-1, 10), (1, 14)],
    [(0, 6), (-1, 15), (1, 11)],
    [(0, 5), (-1, 12), (1, 16)],
    [(0, 4), (-1, 17), (1, 13)],
    [(0, 3), (-1, 14), (1, 18)],
    [(0, 2), (-1, 19), (1, 15)],
    [(0, 1), (-1, 16), (1, 10)],
    [(0, 0), (-1, 11), (1, 17)],
];

const DODECA_BASE: [[(i64, usize); 5]; 12] = [
    [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)],
    [(0, 0), (1, 5), (4, 10), (-4, 9), (-1, 2)],
    [(-1, 3), (0, 0), (1, 1), (-2, 9), (0, 8)],
    [(4, 7), (-1, 4), (0, 0), (1, 2), (2, 8)],
    [(-4, 7), (-2, 11), (-1, 5), (0, 0), (1, 3)],
    [(1, 4), (0, 11), (2, 10), (-1, 1), (0, 0)],
    [(0, 7), (0, 8), (0, 9), (0, 10), (0, 11)],
    [(0, 6), (1, 11), (4, 4), (-4, 3), (-1, 8)],
    [(-1, 9), (0, 6), (1, 7), (-2, 3), (0, 2)],
    [(4, 1), (-1, 10), (0, 6), (1, 8), (2, 2)],
    [(-4, 1), (-2, 5), (-1, 11), (0, 6), (1, 9)],
    [(1, 10), (0, 5), (2, 4), (-1, 7), (0, 6)],
];

/// Faces adjacent to `coord` across edges `0, 1, ..` (edge 0 is the
/// horizontal edge, or the lower horizontal edge for squares; indices run
/// counter-clockwise). The base listing is re-indexed by `(k - i) mod 4` for
/// the cube, `(k - i) mod 3` for the icosahedron and `(k + 2i) mod 5` for the
/// dodecahedron, where `i` is the sheet.
pub fn build_adj(solid: Solid, coord: FaceCoord) -> Result<Vec<FaceCoord>> {
    let k = solid.k();
    if !solid.has_adjacency() {
        return Err(Error::InvalidInput(format!("no adjacency listing for the {solid}")));
    }
    if coord.sheet >= k || coord.poly >= solid.faces() {
        return Err(Error::InvalidCoord(coord.sheet as i64, coord.poly as i64));
    }
    let i = coord.sheet as i64;
    let n = solid.face_sides() as i64;
    let row: Vec<(i64, usize)> = match solid {
        Solid::Cube => CUBE_BASE[coord.poly].to_vec(),
        Solid::Icosahedron => ICOSA_BASE[coord.poly].to_vec(),
        _ => DODECA_BASE[coord.poly].to_vec(),
    };
    let shift = |e: i64| -> usize {
        match solid {
            Solid::Dodecahedron => (e + 2 * i).rem_euclid(n) as usize,
            _ => (e - i).rem_euclid(n) as usize,
        }
    };
    Ok((0..n)
        .map(|e| {
            let (ds, p) = row[shift(e)];
            FaceCoord::new((i + ds).rem_euclid(k as i64) as usize, p)
        })
        .collect())
}

/// Edge of the neighbouring face glued to edge `e`: opposite edges for
/// squares, the same index for triangles and pentagons (top meets bottom).
pub fn glued_edge(solid: Solid, e: usize) -> usize {
    match solid {
        Solid::Cube => (e + 2) % 4,
        _ => e,
    }
}

/// Edge along which a top polygon is paired with its bottom partner to form
/// one sheet of the covering of `Pi_n` (edge 0 for triangles, 4 for
/// pentagons).
pub fn pairing_edge(solid: Solid) -> Option<usize> {
    match solid {
        Solid::Icosahedron => Some(0),
        Solid::Dodecahedron => Some(4),
        _ => None,
    }
}

/// Top faces (those with a horizontal bottom edge) in listing order.
pub fn top_faces(solid: Solid) -> Result<Vec<FaceCoord>> {
    let prod = |sheets: Vec<usize>, polys: Vec<usize>| -> Vec<FaceCoord> {
        sheets.iter().flat_map(|&s| polys.iter().map(move |&p| FaceCoord::new(s, p))).collect()
    };
    match solid {
        Solid::Cube => Ok(prod((0..4).collect(), (0..6).collect())),
        Solid::Icosahedron => {
            let mut v = prod(vec![1, 3, 5], (1..20).step_by(2).collect());
            v.extend(prod(vec![0, 2, 4], (0..20).step_by(2).collect()));
            Ok(v)
        }
        Solid::Dodecahedron => {
            let mut v = prod(vec![1, 3, 5, 7, 9], vec![7, 8, 9, 10, 11, 0]);
            v.extend(prod(vec![0, 2, 4, 6, 8], (1..7).collect()));
            Ok(v)
        }
        _ => Err(Error::InvalidInput(format!("no sheet listing for the {solid}"))),
    }
}

/// Covering sheets in listing order: each entry is the top face and, for
/// the double-polygon bases, its bottom partner.
pub fn sheet_labels(solid: Solid) -> Result<Vec<(FaceCoord, Option<FaceCoord>)>> {
    let tops = top_faces(solid)?;
    match pairing_edge(solid) {
        None => Ok(tops.into_iter().map(|t| (t, None)).collect()),
        Some(e) => tops.into_iter().map(|t| Ok((t, Some(build_adj(solid, t)?[e])))).collect(),
    }
}

/// Permutation of sheets obtained by crossing edge `edge` of the top face.
pub fn monodromy_perm(solid: Solid, edge: usize) -> Result<Permutation> {
    match solid {
        Solid::Tetrahedron | Solid::Octahedron => {
            let o = fixed_origami(solid);
            match edge {
                0 => Ok(o.r().clone()),
                1 => Ok(o.u().clone()),
                _ => Err(Error::InvalidInput(format!("edge {edge} out of range"))),
            }
        }
        _ => {
            if edge >= solid.face_sides() {
                return Err(Error::InvalidInput(format!("edge {edge} out of range")));
            }
            let sheets = sheet_labels(solid)?;
            let targets: Vec<FaceCoord> = sheets.iter().map(|(t, b)| b.unwrap_or(*t)).collect();
            let mut images = Vec::with_capacity(sheets.len());
            for (t, _) in &sheets {
                let nb = build_adj(solid, *t)?[edge];
                let idx = targets
                    .iter()
                    .position(|&x| x == nb)
                    .ok_or_else(|| Error::Inconsistent(format!("{nb:?} is not a sheet partner")))?;
                images.push(idx);
            }
            Permutation::from_images(images)
        }
    }
}

/// The monodromy generators used for each solid: the two cube permutations
/// for edges 0 and 1, the icosahedron permutations for edges 1 and 2, the
/// dodecahedron permutations `x_0 .. x_3`, and the listed origami pairs for
/// the tetrahedron and octahedron.
pub fn monodromy_generators(solid: Solid) -> Result<Vec<Permutation>> {
    let edges: Vec<usize> = match solid {
        Solid::Tetrahedron | Solid::Octahedron | Solid::Cube => vec![0, 1],
        Solid::Icosahedron => vec![1, 2],
        Solid::Dodecahedron => vec![0, 1, 2, 3],
    };
    edges.into_iter().map(|e| monodromy_perm(solid, e)).collect()
}

/// Order of the monodromy group.
pub fn monodromy_group_order(solid: Solid) -> Result<usize> {
    group_order(&monodromy_generators(solid)?, 100_000)
}

/// Square-tiled surface of the arithmetic solids (the triangle-tiled ones
/// after pairing triangles into squares).
pub fn origami_of(solid: Solid) -> Result<Origami> {
    match solid {
        Solid::Tetrahedron | Solid::Octahedron => Ok(fixed_origami(solid)),
        Solid::Cube | Solid::Icosahedron => {
            let g = monodromy_generators(solid)?;
            Origami::new(g[0].clone(), g[1].clone())
        }
        Solid::Dodecahedron => Err(Error::InvalidInput("the dodecahedron is not square-tiled".into())),
    }
}

fn fixed_origami(solid: Solid) -> Origami {
    let (m, a, b): (usize, Vec<Vec<usize>>, Vec<Vec<usize>>) = match solid {
        // The torus with its four 2-torsion points marked: a 2x2 grid.
        Solid::Tetrahedron => (4, vec![vec![0, 1], vec![2, 3]], vec![vec![0, 2], vec![1, 3]]),
        _ => (
            12,
            vec![vec![0, 7, 6], vec![1, 3, 4], vec![2, 11, 5], vec![8, 10, 9]],
            vec![vec![0, 11, 9], vec![1, 7, 10], vec![2, 3, 8], vec![4, 5, 6]],
        ),
    };
    let r = Permutation::from_cycles(m, &a).expect("listed cycles are valid");
    let u = Permutation::from_cycles(m, &b).expect("listed cycles are valid");
    Origami::new(r, u).expect("listed origami is transitive")
}

/// An unfolding together with the face coordinate of each polygon label.
#[derive(Clone, Debug)]
pub struct Unfolding {
    pub solid: Solid,
    pub surface: TranslationSurface,
    pub coords: Vec<FaceCoord>,
}

/// Builds the unfolding of a solid as a translation surface.
///
/// The dodecahedron uses top and bottom regular pentagons of side 2 glued
/// per [`build_adj`], with base label `(0, 0)`; the cube uses unit squares.
/// Triangle faces are drawn after the shear taking the equilateral
/// triangle to `(0,0), (1,0), (0,1)`, so all coordinates are rational. The
/// octahedron and tetrahedron are built from their listed square-tiled
/// forms, the tetrahedron being a torus with four marked points.
pub fn build_unfolding(solid: Solid) -> Result<Unfolding> {
    match solid {
        Solid::Tetrahedron | Solid::Octahedron => {
            let o = fixed_origami(solid);
            let surface = o.to_surface();
            let coords = (0..o.degree()).map(|i| FaceCoord::new(0, i)).collect();
            Ok(Unfolding { solid, surface, coords })
        }
        _ => {
            let k = solid.k();
            let f = solid.faces();
            let top_set: HashSet<FaceCoord> = top_faces(solid)?.into_iter().collect();
            let (top, bottom) = match solid {
                Solid::Cube => (unit_square(), unit_square()),
                Solid::Icosahedron => {
                    let t = ConvexPolygon::new(vec![Vec2::from_ints(0, 0), Vec2::from_ints(1, 0), Vec2::from_ints(0, 1)])?;
                    let b = t.negate();
                    (t, b)
                }
                _ => (regular_pentagon(), regular_pentagon().negate()),
            };
            let mut polygons = Vec::with_capacity(k * f);
            let mut coords = Vec::with_capacity(k * f);
            for sheet in 0..k {
                for poly in 0..f {
                    let c = FaceCoord::new(sheet, poly);
                    polygons.push(if top_set.contains(&c) { top.clone() } else { bottom.clone() });
                    coords.push(c);
                }
            }
            let mut pairs = Vec::new();
            for c in &coords {
                let adj = build_adj(solid, *c)?;
                for (e, nb) in adj.iter().enumerate() {
                    let a = EdgeRef::new(c.sheet * f + c.poly, e);
                    let b = EdgeRef::new(nb.sheet * f + nb.poly, glued_edge(solid, e));
                    if a < b {
                        pairs.push((a, b));
                    }
                }
            }
            let surface = TranslationSurface::from_pairs(polygons, &pairs, 0)?;
            Ok(Unfolding { solid, surface, coords })
        }
    }
}

/// Covering of `Pi_n` by an unfolding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covering {
    /// For each polygon label: `(sheet index, cell)` with cell 0 the top
    /// polygon of `Pi_n` and 1 the bottom one.
    pub cell_of_face: Vec<(usize, usize)>,
    /// Number of sheets.
    pub degree: usize,
}

/// Map from unfolding faces to cells of `Pi_n`, for the solids with an
/// adjacency listing.
pub fn covering_to_pi_n(unfolding: &Unfolding) -> Result<Covering> {
    let solid = unfolding.solid;
    let sheets = sheet_labels(solid)?;
    let f = solid.faces();
    let mut cell_of_face = vec![(usize::MAX, 0); unfolding.coords.len()];
    for (idx, (t, b)) in sheets.iter().enumerate() {
        cell_of_face[t.sheet * f + t.poly] = (idx, 0);
        if let Some(b) = b {
            cell_of_face[b.sheet * f + b.poly] = (idx, 1);
        }
    }
    if cell_of_face.iter().any(|c| c.0 == usize::MAX) {
        return Err(Error::Inconsistent("some face lies in no sheet".into()));
    }
    Ok(Covering { cell_of_face, degree: sheets.len() })
}

/// Stratum and genus data of an unfolding computed from its glued complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnfoldingData {
    /// Zero orders of the abelian differential (cone angle `2 pi (m + 1)`).
    pub zero_orders: Vec<usize>,
    pub genus: usize,
}

impl UnfoldingData {
    /// Stratum in exponential notation, e.g. `H(8^20)`.
    pub fn stratum_string(&self) -> String {
        stratum_string(&self.zero_orders)
    }
}

/// Formats zero orders as `H(a^m, b^n)` in decreasing order.
pub fn stratum_string(orders: &[usize]) -> String {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &o in orders {
        *counts.entry(o).or_insert(0) += 1;
    }
    let parts: Vec<String> = counts.iter().rev().map(|(o, c)| if *c == 1 { o.to_string() } else { format!("{o}^{c}") }).collect();
    format!("H({})", parts.join(", "))
}

/// Cone-angle and genus data of a built unfolding.
pub fn unfolding_data(u: &Unfolding) -> UnfoldingData {
    let mut zero_orders: Vec<usize> = u.surface.cone_angles().into_iter().map(|t| t - 1).collect();
    zero_orders.sort_unstable_by(|a, b| b.cmp(a));
    UnfoldingData { zero_orders, genus: u.surface.genus() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycles_of(p: &Permutation) -> Vec<Vec<usize>> {
        p.cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        let q = Permutation::from_cycles(5, &[vec![2, 3]]).unwrap();
        assert_eq!(p.compose(&q).apply(3), 0);
        assert_eq!(p.then(&q).apply(1), 3);
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.order(), 3);
        assert_eq!(p.pow(3), Permutation::identity(5));
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.cycle_type(), BTreeMap::from([(1, 2), (3, 1)]));
        assert_eq!(p.to_string(), "[(0, 1, 2), (3), (4)]");
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert_eq!(Permutation::from_one_based(&p.to_one_based()).unwrap(), p);
    }

    #[test]
    fn cube_adjacency() {
        let adj = build_adj(Solid::Cube, FaceCoord::new(0, 0)).unwrap();
        let want: Vec<FaceCoord> = [(3, 4), (0, 1), (1, 5), (0, 3)].iter().map(|&(s, p)| FaceCoord::new(s, p)).collect();
        assert_eq!(adj, want);
    }

    #[test]
    fn dodecahedron_face_zero() {
        // Sheet 0 reproduces the base listing; other sheets rotate it by 2i.
        for i in 0..10 {
            let adj = build_adj(Solid::Dodecahedron, FaceCoord::new(i, 0)).unwrap();
            let polys: Vec<usize> = adj.iter().map(|c| c.poly).collect();
            let want: Vec<usize> = (0..5).map(|k| 1 + (k + 2 * i) % 5).collect();
            assert_eq!(polys, want);
        }
    }

    #[test]
    fn adjacency_is_an_involution() {
        for solid in [Solid::Cube, Solid::Icosahedron, Solid::Dodecahedron] {
            for sheet in 0..solid.k() {
                for poly in 0..solid.faces() {
                    let c = FaceCoord::new(sheet, poly);
                    for (e, nb) in build_adj(solid, c).unwrap().into_iter().enumerate() {
                        assert_eq!(build_adj(solid, nb).unwrap()[glued_edge(solid, e)], c);
                    }
                }
            }
        }
        assert!(build_adj(Solid::Cube, FaceCoord::new(4, 0)).is_err());
    }

    #[test]
    fn listed_cube_permutations() {
        let p0 = monodromy_perm(Solid::Cube, 0).unwrap();
        let p1 = monodromy_perm(Solid::Cube, 1).unwrap();
        let c0 = vec![vec![0, 22, 14, 11], vec![1, 4, 15, 5], vec![2, 10, 12, 23], vec![3, 16, 13, 17], vec![6, 9, 8, 7], vec![18, 19, 20, 21]];
        let c1 = vec![vec![0, 1, 2, 3], vec![4, 20, 17, 6], vec![5, 8, 16, 18], vec![7, 10, 21, 11], vec![9, 22, 19, 23], vec![12, 15, 14, 13]];
        assert_eq!(cycles_of(&p0), c0);
        assert_eq!(cycles_of(&p1), c1);
    }

    #[test]
    fn listed_icosahedron_permutations() {
        let p1 = monodromy_perm(Solid::Icosahedron, 1).unwrap();
        let p2 = monodromy_perm(Solid::Icosahedron, 2).unwrap();
        assert_eq!(cycles_of(&p1)[0], vec![0, 45, 13, 17, 9]);
        assert_eq!(cycles_of(&p1)[11], vec![40, 44, 43, 42, 41]);
        assert_eq!(cycles_of(&p2)[0], vec![0, 4, 3, 2, 1]);
        assert_eq!(cycles_of(&p2)[6], vec![10, 19, 27, 23, 55]);
    }

    #[test]
    fn sheet_counts() {
        assert_eq!(sheet_labels(Solid::Dodecahedron).unwrap().len(), 60);
        assert_eq!(sheet_labels(Solid::Cube).unwrap().len(), 24);
        assert_eq!(sheet_labels(Solid::Icosahedron).unwrap().len(), 60);
    }

    #[test]
    fn group_orders() {
        assert_eq!(monodromy_group_order(Solid::Octahedron).unwrap(), 12);
        assert_eq!(monodromy_group_order(Solid::Cube).unwrap(), 24);
        assert_eq!(monodromy_group_order(Solid::Icosahedron).unwrap(), 60);
        assert_eq!(monodromy_group_order(Solid::Dodecahedron).unwrap(), 60);
        for s in Solid::ALL {
            assert!(is_transitive(&monodromy_generators(s).unwrap()));
        }
    }

    #[test]
    fn unfolding_strata() {
        for solid in Solid::ALL {
            let u = build_unfolding(solid).unwrap();
            let d = unfolding_data(&u);
            let k = solid.k();
            assert_eq!(d.genus, (k - 1) * (k - 1), "{solid}");
            assert_eq!(d.zero_orders, vec![k - 2; 2 * k], "{solid}");
        }
    }

    #[test]
    fn coverings() {
        let u = build_unfolding(Solid::Dodecahedron).unwrap();
        let c = covering_to_pi_n(&u).unwrap();
        assert_eq!(c.degree, 60);
        let tops = c.cell_of_face.iter().filter(|x| x.1 == 0).count();
        assert_eq!(tops, 60);
        // Faces in the same sheet are glued along the pairing edge.
        for (label, &(sheet, cell)) in c.cell_of_face.iter().enumerate() {
            if cell == 0 {
                let e = u.surface.opposite(EdgeRef::new(label, 4));
                assert_eq!(c.cell_of_face[e.label], (sheet, 1));
            }
        }
        let cube = covering_to_pi_n(&build_unfolding(Solid::Cube).unwrap()).unwrap();
        assert_eq!(cube.degree, 24);
    }
}
