//! Exact planar linear algebra over `F`: vectors, 2x2 matrices, convex
//! polygons, the regular pentagon of side 2 and the matrices `R`, `T`, `J`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{cos_pi_5, sin_pi_5, two_cot_pi_5, Nf};

/// A vector in `F^2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vec2 {
    pub x: Nf,
    pub y: Nf,
}

impl Vec2 {
    /// Creates a vector.
    pub fn new(x: Nf, y: Nf) -> Vec2 {
        Vec2 { x, y }
    }

    /// The zero vector.
    pub fn zero() -> Vec2 {
        Vec2::new(Nf::zero(), Nf::zero())
    }

    /// Vector with integer coordinates.
    pub fn from_ints(x: i64, y: i64) -> Vec2 {
        Vec2::new(Nf::from_int(x), Nf::from_int(y))
    }

    /// Sum.
    pub fn add(&self, o: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &o.x, &self.y + &o.y)
    }

    /// Difference.
    pub fn sub(&self, o: &Vec2) -> Vec2 {
        Vec2::new(&self.x - &o.x, &self.y - &o.y)
    }

    /// Negation.
    pub fn neg(&self) -> Vec2 {
        Vec2::new(-&self.x, -&self.y)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Nf) -> Vec2 {
        Vec2::new(&self.x * c, &self.y * c)
    }

    /// Cross product `x1 y2 - y1 x2`.
    pub fn cross(&self, o: &Vec2) -> Nf {
        &self.x * &o.y - &self.y * &o.x
    }

    /// Dot product.
    pub fn dot(&self, o: &Vec2) -> Nf {
        &self.x * &o.x + &self.y * &o.y
    }

    /// Squared Euclidean norm.
    pub fn norm2(&self) -> Nf {
        self.dot(self)
    }

    /// True for the zero vector.
    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Floating approximation.
    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    /// Euclidean length as a float.
    pub fn length_f64(&self) -> f64 {
        let (x, y) = self.to_f64();
        x.hypot(y)
    }

    /// Lexicographic comparison of `(x, y)` in the real embedding.
    pub fn cmp_lex(&self, o: &Vec2) -> Ordering {
        self.x.cmp(&o.x).then_with(|| self.y.cmp(&o.y))
    }

    /// True when the vector lies in the open upper half plane or on the
    /// positive x-axis, i.e. its angle is in `[0, pi)` and it is nonzero.
    pub fn is_upper(&self) -> bool {
        let sy = self.y.sign();
        sy > 0 || (sy == 0 && self.x.sign() > 0)
    }

    /// Compares the angles in `[0, 2 pi)` of two nonzero vectors exactly.
    pub fn cmp_angle(&self, o: &Vec2) -> Ordering {
        let (ua, ub) = (self.is_upper(), o.is_upper());
        if ua != ub {
            return if ua { Ordering::Less } else { Ordering::Greater };
        }
        // Same half plane: a before b iff cross(a, b) > 0.
        match self.cross(o).sign() {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Debug for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x.to_poly_string(), self.y.to_poly_string())
    }
}

/// A 2x2 matrix `[[a, b], [c, d]]` over `F`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Nf,
    pub b: Nf,
    pub c: Nf,
    pub d: Nf,
}

impl Mat2 {
    /// Creates a matrix from its rows.
    pub fn new(a: Nf, b: Nf, c: Nf, d: Nf) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    /// Matrix with integer entries.
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    /// Identity.
    pub fn identity() -> Mat2 {
        Mat2::from_ints(1, 0, 0, 1)
    }

    /// Matrix product `self * o`.
    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    /// Action on a vector.
    pub fn act(&self, v: &Vec2) -> Vec2 {
        Vec2::new(&self.a * &v.x + &self.b * &v.y, &self.c * &v.x + &self.d * &v.y)
    }

    /// Determinant.
    pub fn det(&self) -> Nf {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Inverse matrix.
    pub fn inverse(&self) -> Result<Mat2> {
        let inv = self.det().inv()?;
        Ok(Mat2::new(&self.d * &inv, -(&self.b * &inv), -(&self.c * &inv), &self.a * &inv))
    }

    /// Negation.
    pub fn neg(&self) -> Mat2 {
        Mat2::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    /// Integer power (nonnegative).
    pub fn pow(&self, e: u32) -> Mat2 {
        let mut r = Mat2::identity();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Floating approximation, row-major.
    pub fn to_f64(&self) -> [f64; 4] {
        [self.a.to_f64(), self.b.to_f64(), self.c.to_f64(), self.d.to_f64()]
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.a.to_poly_string(),
            self.b.to_poly_string(),
            self.c.to_poly_string(),
            self.d.to_poly_string()
        )
    }
}

/// Rotation by `pi/5`.
pub fn generator_r() -> Mat2 {
    let c = cos_pi_5();
    let s = sin_pi_5();
    Mat2::new(c.clone(), -&s, s, c)
}

/// Parabolic `[[1, 2 cot(pi/5)], [0, 1]]`.
pub fn generator_t() -> Mat2 {
    Mat2::new(Nf::one(), two_cot_pi_5(), Nf::zero(), Nf::one())
}

/// Reflection `diag(1, -1)`.
pub fn generator_j() -> Mat2 {
    Mat2::from_ints(1, 0, 0, -1)
}

/// Looks up a generator or its inverse by letter: `R`, `T`, `J`, and the
/// lowercase letters `r`, `t` for `R^-1`, `T^-1`.
pub fn generator_by_letter(letter: char) -> Option<Mat2> {
    match letter {
        'R' => Some(generator_r()),
        'T' => Some(generator_t()),
        'J' => Some(generator_j()),
        'r' => generator_r().inverse().ok(),
        't' => generator_t().inverse().ok(),
        _ => None,
    }
}

/// Matrix of a word over `{R, T}` (and `r`, `t`, `J`), read as a product
/// left to right, so `"RT"` is `R * T`.
pub fn word_matrix(word: &str) -> Result<Mat2> {
    let mut m = Mat2::identity();
    for ch in word.chars() {
        let g = generator_by_letter(ch).ok_or_else(|| Error::Parse(format!("bad letter {ch:?} in word {word:?}")))?;
        m = m.mul(&g);
    }
    Ok(m)
}

/// A strictly convex polygon with vertices listed counter-clockwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
}

impl ConvexPolygon {
    /// Validates strict convexity and counter-clockwise orientation.
    pub fn new(vertices: Vec<Vec2>) -> Result<ConvexPolygon> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!("{n} vertices")));
        }
        for i in 0..n {
            let e0 = vertices[(i + 1) % n].sub(&vertices[i]);
            let e1 = vertices[(i + 2) % n].sub(&vertices[(i + 1) % n]);
            if e0.cross(&e1).sign() <= 0 {
                return Err(Error::InvalidPolygon(format!("not strictly convex at vertex {}", (i + 1) % n)));
            }
        }
        // Strict left turns everywhere plus a total turning of 2 pi: check that
        // the edge directions wind exactly once.
        let mut descents = 0;
        for i in 0..n {
            let e0 = vertices[(i + 1) % n].sub(&vertices[i]);
            let e1 = vertices[(i + 2) % n].sub(&vertices[(i + 1) % n]);
            if e0.cmp_angle(&e1) == Ordering::Greater {
                descents += 1;
            }
        }
        if descents != 1 {
            return Err(Error::InvalidPolygon("edges wind more than once".into()));
        }
        Ok(ConvexPolygon { vertices })
    }

    /// Constructs without validation; the caller guarantees convexity.
    pub(crate) fn new_unchecked(vertices: Vec<Vec2>) -> ConvexPolygon {
        ConvexPolygon { vertices }
    }

    /// Polygon from its edge vectors, with vertex 0 at the origin.
    pub fn from_edges(edges: &[Vec2]) -> Result<ConvexPolygon> {
        let mut v = Vec::with_capacity(edges.len());
        let mut p = Vec2::zero();
        for e in edges {
            v.push(p.clone());
            p = p.add(e);
        }
        if !p.is_zero() {
            return Err(Error::InvalidPolygon("edges do not close up".into()));
        }
        ConvexPolygon::new(v)
    }

    /// Vertices in counter-clockwise order.
    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// Number of vertices (and edges).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Polygons always have at least three vertices.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Vertex `i` (indices taken cyclically).
    pub fn vertex(&self, i: usize) -> &Vec2 {
        &self.vertices[i % self.vertices.len()]
    }

    /// Edge vector `v_{i+1} - v_i`.
    pub fn edge(&self, i: usize) -> Vec2 {
        let n = self.len();
        self.vertices[(i + 1) % n].sub(&self.vertices[i % n])
    }

    /// All edge vectors.
    pub fn edges(&self) -> Vec<Vec2> {
        (0..self.len()).map(|i| self.edge(i)).collect()
    }

    /// Twice the signed area (shoelace formula), exact.
    pub fn twice_area(&self) -> Nf {
        let n = self.len();
        let mut acc = Nf::zero();
        for i in 0..n {
            acc = acc + self.vertices[i].cross(&self.vertices[(i + 1) % n]);
        }
        acc
    }

    /// Image under a matrix with positive determinant.
    pub fn transform(&self, m: &Mat2) -> ConvexPolygon {
        ConvexPolygon::new_unchecked(self.vertices.iter().map(|v| m.act(v)).collect())
    }

    /// Translate by a vector.
    pub fn translate(&self, t: &Vec2) -> ConvexPolygon {
        ConvexPolygon::new_unchecked(self.vertices.iter().map(|v| v.add(t)).collect())
    }

    /// Point reflection through the origin.
    pub fn negate(&self) -> ConvexPolygon {
        ConvexPolygon::new_unchecked(self.vertices.iter().map(|v| v.neg()).collect())
    }

    /// Cyclically relabels so that old vertex `k` becomes vertex 0.
    pub fn rotate_labels(&self, k: usize) -> ConvexPolygon {
        let n = self.len();
        ConvexPolygon::new_unchecked((0..n).map(|i| self.vertices[(i + k) % n].clone()).collect())
    }
}

impl fmt::Debug for ConvexPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.vertices.iter()).finish()
    }
}

/// The regular pentagon with side 2, `v0 = (0,0)`, `v1 = (2,0)`,
/// counter-clockwise.
pub fn regular_pentagon() -> ConvexPolygon {
    let v = |x: [i64; 4], y: [i64; 4]| Vec2::new(Nf::from_ints(x, 1), Nf::from_ints(y, 1));
    // 2cos(2pi/5) = 2 - s^2 and 2sin(2pi/5) = 3s - s^3; the apex sits at
    // (1, 2sin(2pi/5) + 2sin(pi/5)).
    ConvexPolygon::new_unchecked(vec![
        v([0, 0, 0, 0], [0, 0, 0, 0]),
        v([2, 0, 0, 0], [0, 0, 0, 0]),
        v([4, 0, -1, 0], [0, 3, 0, -1]),
        v([1, 0, 0, 0], [0, 4, 0, -1]),
        v([-2, 0, 1, 0], [0, 3, 0, -1]),
    ])
}

/// The unit square.
pub fn unit_square() -> ConvexPolygon {
    ConvexPolygon::new_unchecked(vec![
        Vec2::from_ints(0, 0),
        Vec2::from_ints(1, 0),
        Vec2::from_ints(1, 1),
        Vec2::from_ints(0, 1),
    ])
}

/// The shear `M = [[1, -1/sqrt3], [0, 2/sqrt3]]` sending the double triangle
/// to the unit square, realized combinatorially.
///
/// In coordinates with respect to the triangular lattice basis `(1, 0)`,
/// `(1/2, sqrt3/2)` the map `M` is the identity onto the square lattice, so
/// the upward triangle with lattice vertices `(0,0), (1,0), (0,1)` and the
/// downward triangle `(1,0), (1,1), (0,1)` together become the unit square.
/// This function returns, for an upward triangle edge index, the index of the
/// unit square edge it becomes (or `None` for the diagonal that is erased).
pub fn shear_m_up_triangle_edge(edge: usize) -> Option<usize> {
    match edge % 3 {
        0 => Some(0),
        1 => None,
        _ => Some(3),
    }
}

/// Companion of [`shear_m_up_triangle_edge`] for the downward triangle, whose
/// edge 0 is the top horizontal edge (directed right to left).
pub fn shear_m_down_triangle_edge(edge: usize) -> Option<usize> {
    match edge % 3 {
        0 => Some(2),
        1 => None,
        _ => Some(1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_relations() {
        let r = generator_r();
        let t = generator_t();
        let j = generator_j();
        let id = Mat2::identity();
        let minus = id.neg();
        assert_eq!(r.pow(5), minus);
        let rti = r.mul(&t.inverse().unwrap());
        assert_eq!(rti.mul(&rti), minus);
        assert_eq!(j.mul(&j), id);
        assert_eq!(j.mul(&r).mul(&j), r.inverse().unwrap());
        assert_eq!(j.mul(&t).mul(&j), t.inverse().unwrap());
    }

    #[test]
    fn generator_entries() {
        assert!((generator_t().b.to_f64() - 2.752763840942347).abs() < 1e-5);
        assert!((generator_r().a.to_f64() - 0.8090169943749475).abs() < 1e-5);
        let v = Vec2::from_ints(3, -4);
        assert_eq!(Mat2::identity().act(&v), v);
    }

    #[test]
    fn pentagon_geometry() {
        let p = regular_pentagon();
        assert!(ConvexPolygon::new(p.vertices().to_vec()).is_ok());
        for e in p.edges() {
            assert_eq!(e.norm2(), Nf::from_int(4));
        }
        let (x, y) = p.vertex(2).to_f64();
        assert!((x - 2.61803).abs() < 1e-5 && (y - 1.90211).abs() < 1e-5);
        // Rotation by 2pi/5 about the centroid permutes the vertices.
        let n = Nf::from_int(5);
        let mut cx = Nf::zero();
        let mut cy = Nf::zero();
        for v in p.vertices() {
            cx = cx + &v.x;
            cy = cy + &v.y;
        }
        let c = Vec2::new(cx.div_ref(&n).unwrap(), cy.div_ref(&n).unwrap());
        let rot = generator_r().pow(2);
        for i in 0..5 {
            let img = rot.act(&p.vertex(i).sub(&c)).add(&c);
            assert_eq!(&img, p.vertex(i + 1));
        }
    }

    #[test]
    fn convexity_validation() {
        let sq = unit_square();
        assert!(ConvexPolygon::new(sq.vertices().to_vec()).is_ok());
        let mut cw = sq.vertices().to_vec();
        cw.reverse();
        assert!(ConvexPolygon::new(cw).is_err());
        let flat = vec![Vec2::from_ints(0, 0), Vec2::from_ints(1, 0), Vec2::from_ints(2, 0)];
        assert!(ConvexPolygon::new(flat).is_err());
        // A pentagram ordering turns left everywhere but winds twice.
        let p = regular_pentagon();
        let star: Vec<Vec2> = (0..5).map(|i| p.vertex(2 * i).clone()).collect();
        assert!(ConvexPolygon::new(star).is_err());
    }

    #[test]
    fn words() {
        assert_eq!(word_matrix("").unwrap(), Mat2::identity());
        assert_eq!(word_matrix("RT").unwrap(), generator_r().mul(&generator_t()));
        assert_eq!(word_matrix("Rr").unwrap(), Mat2::identity());
        assert!(word_matrix("X").is_err());
    }

    #[test]
    fn shear_pairs_triangles_into_square() {
        let up: Vec<_> = (0..3).filter_map(shear_m_up_triangle_edge).collect();
        let down: Vec<_> = (0..3).filter_map(shear_m_down_triangle_edge).collect();
        let mut all: Vec<_> = up.into_iter().chain(down).collect();
        all.sort();
        assert_eq!(all, vec![0, 1, 2, 3]);
    }
}
