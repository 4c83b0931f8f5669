//! Square-tiled surfaces (origamis): the `SL(2, Z)` action, Veech group
//! data from the orbit, horizontal cylinder diagrams and the blocking check
//! for closed saddle connections.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flatsurface::{EdgeRef, TranslationSurface};
use crate::planar::unit_square;
use crate::platonic::{is_transitive, Permutation};

/// An origami on `m` squares: `r(i)` is the square to the right of `i` and
/// `u(i)` the square above it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Origami {
    r: Permutation,
    u: Permutation,
}

/// How products of permutations are formed in the generator action.
///
/// `Geometric` uses `(p * q)(x) = p(q(x))` in the formulas
/// `T(r, u) = (r, u * r^-1)` and `S(r, u) = (u^-1, r)`, which is the action
/// obtained by shearing and re-cutting squares. `Reversed` uses the
/// opposite product in the same formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Geometric,
    Reversed,
}

impl Origami {
    /// Builds an origami, requiring a transitive pair.
    pub fn new(r: Permutation, u: Permutation) -> Result<Origami> {
        if r.len() != u.len() || r.is_empty() {
            return Err(Error::InvalidPermutation("origami permutations differ in size".into()));
        }
        if !is_transitive(&[r.clone(), u.clone()]) {
            return Err(Error::InvalidInput("origami is not connected".into()));
        }
        Ok(Origami { r, u })
    }

    /// Right-neighbour permutation.
    pub fn r(&self) -> &Permutation {
        &self.r
    }

    /// Up-neighbour permutation.
    pub fn u(&self) -> &Permutation {
        &self.u
    }

    /// Number of squares.
    pub fn degree(&self) -> usize {
        self.r.len()
    }

    /// The surface made of unit squares, square `i` having label `i`.
    pub fn to_surface(&self) -> TranslationSurface {
        let m = self.degree();
        let mut pairs = Vec::with_capacity(2 * m);
        for i in 0..m {
            pairs.push((EdgeRef::new(i, 1), EdgeRef::new(self.r.apply(i), 3)));
            pairs.push((EdgeRef::new(i, 2), EdgeRef::new(self.u.apply(i), 0)));
        }
        TranslationSurface::from_pairs(vec![unit_square(); m], &pairs, 0).expect("origami gluings are consistent")
    }

    fn product(conv: Convention, p: &Permutation, q: &Permutation) -> Permutation {
        match conv {
            Convention::Geometric => p.compose(q),
            Convention::Reversed => q.compose(p),
        }
    }

    /// Image under `T = [[1, 1], [0, 1]]`.
    pub fn act_t(&self, conv: Convention) -> Origami {
        Origami { r: self.r.clone(), u: Self::product(conv, &self.u, &self.r.inverse()) }
    }

    /// Image under `T^-1`.
    pub fn act_t_inv(&self, conv: Convention) -> Origami {
        Origami { r: self.r.clone(), u: Self::product(conv, &self.u, &self.r) }
    }

    /// Image under the rotation `S = [[0, -1], [1, 0]]`.
    pub fn act_s(&self, _conv: Convention) -> Origami {
        Origami { r: self.u.inverse(), u: self.r.clone() }
    }

    /// Image under `S^-1`.
    pub fn act_s_inv(&self, _conv: Convention) -> Origami {
        Origami { r: self.u.clone(), u: self.r.inverse() }
    }

    /// Image under the rotation by `pi`.
    pub fn rotate_pi(&self) -> Origami {
        Origami { r: self.r.inverse(), u: self.u.inverse() }
    }

    /// Applies a word over `S`, `T`, `s = S^-1`, `t = T^-1`; the word is a
    /// matrix product, so its last letter acts first.
    pub fn act_word(&self, word: &str, conv: Convention) -> Result<Origami> {
        let mut o = self.clone();
        for ch in word.chars().rev() {
            o = match ch {
                'S' => o.act_s(conv),
                's' => o.act_s_inv(conv),
                'T' => o.act_t(conv),
                't' => o.act_t_inv(conv),
                _ => return Err(Error::Parse(format!("bad letter {ch:?} in {word:?}"))),
            };
        }
        Ok(o)
    }

    /// Relabeling-invariant normal form: the lexicographically least image
    /// pair over breadth-first relabelings from every start square
    /// (following `r` then `u`).
    pub fn normal_form(&self) -> Origami {
        let m = self.degree();
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        let mut pos = vec![usize::MAX; m];
        let mut order = Vec::with_capacity(m);
        for start in 0..m {
            pos.iter_mut().for_each(|p| *p = usize::MAX);
            order.clear();
            pos[start] = 0;
            order.push(start);
            let mut head = 0;
            while head < order.len() {
                let x = order[head];
                head += 1;
                for y in [self.r.apply(x), self.u.apply(x)] {
                    if pos[y] == usize::MAX {
                        pos[y] = order.len();
                        order.push(y);
                    }
                }
            }
            let r: Vec<usize> = order.iter().map(|&x| pos[self.r.apply(x)]).collect();
            let u: Vec<usize> = order.iter().map(|&x| pos[self.u.apply(x)]).collect();
            let cand = (r, u);
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
        let (r, u) = best.expect("origami has squares");
        Origami { r: Permutation::from_images(r).expect("relabeling"), u: Permutation::from_images(u).expect("relabeling") }
    }

    /// Normal form up to the rotation by `pi`, i.e. for the projective
    /// action.
    pub fn projective_normal_form(&self) -> Origami {
        let a = self.normal_form();
        let b = self.rotate_pi().normal_form();
        a.min(b)
    }

    /// Singularity id of the bottom-left corner of every square.
    pub fn corner_classes(&self) -> Vec<usize> {
        let m = self.degree();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..m {
            // The top-right corner of i is the bottom-left corner of both
            // r(u(i)) and u(r(i)).
            let a = self.r.apply(self.u.apply(i));
            let b = self.u.apply(self.r.apply(i));
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        }
        let mut ids = HashMap::new();
        (0..m)
            .map(|i| {
                let root = find(&mut parent, i);
                let n = ids.len();
                *ids.entry(root).or_insert(n)
            })
            .collect()
    }

    /// Horizontal cylinders (height-one strips, one per cycle of `r`).
    pub fn horizontal_cylinders(&self) -> Vec<Cylinder> {
        let cls = self.corner_classes();
        self.r
            .cycles()
            .into_iter()
            .map(|c| Cylinder {
                bottom: c.iter().map(|&i| cls[i]).collect(),
                top: c.iter().map(|&i| cls[self.u.apply(i)]).collect(),
                squares: c,
            })
            .collect()
    }
}

/// A horizontal cylinder: its squares in order, and the singularity ids of
/// the bottom-left corners along its bottom and top boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cylinder {
    pub squares: Vec<usize>,
    pub bottom: Vec<usize>,
    pub top: Vec<usize>,
}

impl Cylinder {
    /// Circumference in square widths.
    pub fn circumference(&self) -> usize {
        self.squares.len()
    }

    /// Height (always one for strips).
    pub fn height(&self) -> usize {
        1
    }

    /// True when some singularity appears on both boundaries.
    pub fn shares_singularity(&self) -> bool {
        self.bottom.iter().any(|b| self.top.contains(b))
    }

    /// True when two consecutive corners of a boundary coincide, i.e. a
    /// horizontal unit segment joins a singularity to itself.
    pub fn has_closed_boundary_segment(&self) -> bool {
        let n = self.bottom.len();
        (0..n).any(|k| self.bottom[k] == self.bottom[(k + 1) % n] || self.top[k] == self.top[(k + 1) % n])
    }
}

/// Horizontal cylinders of `w(O)` where `w` is a word over `S, T, s, t`.
pub fn cylinder_diagram(o: &Origami, direction_word: &str, conv: Convention) -> Result<Vec<Cylinder>> {
    Ok(o.act_word(direction_word, conv)?.horizontal_cylinders())
}

/// Orbit of an origami under `PSL(2, Z)` with the action of `S` and `T`.
#[derive(Clone, Debug)]
pub struct Sl2zOrbit {
    pub elements: Vec<Origami>,
    /// A word mapping the base origami to each element.
    pub words: Vec<String>,
    pub s: Permutation,
    pub t: Permutation,
}

/// Enumerates the orbit of projective normal forms.
pub fn sl2z_orbit(o: &Origami, conv: Convention) -> Sl2zOrbit {
    let base = o.projective_normal_form();
    let mut index: HashMap<Origami, usize> = HashMap::from([(base.clone(), 0)]);
    let mut elements = vec![base];
    let mut words = vec![String::new()];
    let mut s_img = Vec::new();
    let mut t_img = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let mut edges = Vec::new();
    while let Some(i) = queue.pop_front() {
        let e = elements[i].clone();
        for (letter, img) in [('S', e.act_s(conv)), ('T', e.act_t(conv))] {
            let nf = img.projective_normal_form();
            let j = match index.get(&nf) {
                Some(&j) => j,
                None => {
                    let j = elements.len();
                    index.insert(nf.clone(), j);
                    elements.push(nf);
                    words.push(format!("{letter}{}", words[i]));
                    queue.push_back(j);
                    j
                }
            };
            edges.push((letter, i, j));
        }
    }
    s_img.resize(elements.len(), 0);
    t_img.resize(elements.len(), 0);
    for (letter, i, j) in edges {
        if letter == 'S' {
            s_img[i] = j;
        } else {
            t_img[i] = j;
        }
    }
    Sl2zOrbit {
        elements,
        words,
        s: Permutation::from_images(s_img).expect("S acts bijectively"),
        t: Permutation::from_images(t_img).expect("T acts bijectively"),
    }
}

/// Veech group data of an origami relative to `SL(2, Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VeechData {
    pub index: usize,
    /// Cusp widths, one per cycle of `T`, ordered by the least orbit index
    /// in each cycle.
    pub cusp_widths: Vec<usize>,
    pub nu2: usize,
    pub nu3: usize,
    pub genus: usize,
}

impl VeechData {
    /// Number of cusps.
    pub fn cusps(&self) -> usize {
        self.cusp_widths.len()
    }
}

/// Computes index, cusp widths, elliptic points and genus from the orbit.
pub fn veech_data(o: &Origami, conv: Convention) -> Result<VeechData> {
    let orb = sl2z_orbit(o, conv);
    veech_data_from_orbit(&orb)
}

/// Veech data from a computed orbit.
pub fn veech_data_from_orbit(orb: &Sl2zOrbit) -> Result<VeechData> {
    let index = orb.elements.len();
    let cusp_widths: Vec<usize> = orb.t.cycles().iter().map(|c| c.len()).collect();
    let nu2 = orb.s.fixed_points().len();
    let st = orb.t.then(&orb.s);
    let nu3 = st.fixed_points().len();
    // 12 g = 12 + index - 3 nu2 - 4 nu3 - 6 cusps.
    let twelve_g = 12 + index as i64 - 3 * nu2 as i64 - 4 * nu3 as i64 - 6 * cusp_widths.len() as i64;
    if twelve_g < 0 || twelve_g % 12 != 0 {
        return Err(Error::Inconsistent(format!("non-integral genus 12g = {twelve_g}")));
    }
    Ok(VeechData { index, cusp_widths, nu2, nu3, genus: (twelve_g / 12) as usize })
}

/// Per-cusp result of the blocking check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspCheck {
    /// Word taking the base origami to the cusp representative; the cusp
    /// direction on the base surface is the preimage of the horizontal.
    pub word: String,
    pub width: usize,
    pub cylinder_lengths: Vec<usize>,
    pub blocked: bool,
}

/// Checks every cusp direction (one orbit representative per cycle of `T`)
/// for a saddle connection joining a singularity to itself. Returns one
/// entry per cusp.
pub fn blocking_report(o: &Origami, conv: Convention) -> Vec<CuspCheck> {
    let orb = sl2z_orbit(o, conv);
    orb.t
        .cycles()
        .iter()
        .map(|c| {
            let rep = c[0];
            let cyl = orb.elements[rep].horizontal_cylinders();
            let blocked = cyl.iter().all(|y| !y.shares_singularity() && !y.has_closed_boundary_segment());
            let mut cylinder_lengths: Vec<usize> = cyl.iter().map(|y| y.circumference()).collect();
            cylinder_lengths.sort_unstable();
            CuspCheck { word: orb.words[rep].clone(), width: c.len(), cylinder_lengths, blocked }
        })
        .collect()
}

/// True when no cusp direction carries a closed saddle connection.
pub fn blocking_check(o: &Origami, conv: Convention) -> bool {
    blocking_report(o, conv).iter().all(|c| c.blocked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus(m: usize) -> Origami {
        let r = Permutation::from_cycles(m, &[(0..m).collect()]).unwrap();
        Origami::new(r, Permutation::identity(m)).unwrap()
    }

    #[test]
    fn generator_relations() {
        let o = Origami::new(
            Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap(),
            Permutation::from_cycles(4, &[vec![0, 3]]).unwrap(),
        )
        .unwrap();
        for conv in [Convention::Geometric, Convention::Reversed] {
            let s4 = o.act_s(conv).act_s(conv).act_s(conv).act_s(conv);
            assert_eq!(s4.normal_form(), o.normal_form());
            assert_eq!(o.act_t(conv).act_t_inv(conv), o);
            assert_eq!(o.act_s(conv).act_s_inv(conv), o);
            // (S T)^3 = S^2 = -I projectively.
            let mut x = o.clone();
            for _ in 0..3 {
                x = x.act_t(conv).act_s(conv);
            }
            assert_eq!(x.projective_normal_form(), o.projective_normal_form());
        }
    }

    #[test]
    fn normal_form_is_relabeling_invariant() {
        let o = Origami::new(
            Permutation::from_cycles(5, &[vec![0, 1, 2], vec![3, 4]]).unwrap(),
            Permutation::from_cycles(5, &[vec![0, 3]]).unwrap(),
        )
        .unwrap();
        let q = Permutation::from_cycles(5, &[vec![0, 4, 2], vec![1, 3]]).unwrap();
        let relabeled = Origami::new(o.r().conjugate_by(&q), o.u().conjugate_by(&q)).unwrap();
        assert_eq!(relabeled.normal_form(), o.normal_form());
        assert_eq!(o.normal_form().normal_form(), o.normal_form());
    }

    #[test]
    fn one_square_torus() {
        let d = veech_data(&torus(1), Convention::Geometric).unwrap();
        assert_eq!(d, VeechData { index: 1, cusp_widths: vec![1], nu2: 1, nu3: 1, genus: 0 });
    }

    #[test]
    fn two_square_torus_has_index_three() {
        let d = veech_data(&torus(2), Convention::Geometric).unwrap();
        assert_eq!(d.index, 3);
        assert_eq!(d.cusps(), 2);
    }

    #[test]
    fn corner_classes_of_torus() {
        assert_eq!(torus(3).corner_classes(), vec![0, 1, 2]);
        let surf = torus(3).to_surface();
        assert_eq!(surf.cone_angles(), vec![1, 1, 1]);
    }
}
