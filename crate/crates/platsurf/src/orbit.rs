//! Orbit enumeration of a cover surface under generators of a lattice Veech
//! group: coset words, generator permutations, the reflection action, Veech
//! group generators and `<t, j>` equivalence classes.
//!
//! Indices are zero-based internally; JSON output and reports use one-based
//! indices so they line up with printed tables.

use std::cmp::Ordering;
use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flatsurface::{CanonicalForm, TranslationSurface};
use crate::planar::{generator_by_letter, generator_j, generator_r, generator_t, word_matrix, Mat2};
use crate::platonic::Permutation;

/// Default bound on the number of orbit elements.
pub const DEFAULT_CAP: usize = 100_000;

/// Word order: shorter first, then lexicographic read from the right with
/// `R < T`.
pub fn word_cmp(a: &str, b: &str) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.bytes().rev().cmp(b.bytes().rev()))
}

/// Inverse of a word over `R, T, r, t`: letters reversed and case swapped,
/// so `word_matrix(inverse_word(w)) = word_matrix(w)^-1`.
pub fn inverse_word(w: &str) -> String {
    w.chars()
        .rev()
        .map(|c| if c.is_ascii_uppercase() { c.to_ascii_lowercase() } else { c.to_ascii_uppercase() })
        .collect()
}

/// Applies a word to a surface letter by letter, rightmost letter first,
/// canonicalizing after each step.
pub fn act_word(surface: &CanonicalForm, word: &str) -> Result<CanonicalForm> {
    let mut cur = surface.clone();
    for c in word.chars().rev() {
        let m = generator_by_letter(c).ok_or_else(|| Error::Parse(format!("bad letter {c:?} in word")))?;
        cur = cur.surface().apply_gl2(&m)?.canonicalize();
    }
    Ok(cur)
}

/// A named generator.
#[derive(Clone, Debug)]
pub struct Generator {
    pub letter: char,
    pub matrix: Mat2,
}

impl Generator {
    /// Generator for one of the letters understood by [`generator_by_letter`].
    pub fn from_letter(letter: char) -> Result<Generator> {
        let matrix = generator_by_letter(letter).ok_or_else(|| Error::Parse(format!("unknown generator {letter:?}")))?;
        Ok(Generator { letter, matrix })
    }

    /// The generators `R` and `T` of the Veech group of the double pentagon.
    pub fn rt() -> Vec<Generator> {
        vec![Generator { letter: 'R', matrix: generator_r() }, Generator { letter: 'T', matrix: generator_t() }]
    }
}

/// The enumerated orbit.
#[derive(Clone, Debug)]
pub struct OrbitTable {
    /// Generator letters in the order used for the enumeration.
    pub letters: Vec<char>,
    /// Minimal word of each element; `words[0]` is empty.
    pub words: Vec<String>,
    /// Canonical forms; empty if the table was loaded from JSON.
    pub surfaces: Vec<CanonicalForm>,
    /// Action of each generator, in the order of `letters`.
    pub perms: Vec<Permutation>,
    /// Action of the reflection `J`, once computed.
    pub j: Option<Permutation>,
}

impl OrbitTable {
    /// Orbit size.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    /// True for an empty table, which enumeration never produces.
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Permutation of the generator with the given letter.
    pub fn perm(&self, letter: char) -> Result<&Permutation> {
        self.letters
            .iter()
            .position(|&c| c == letter)
            .map(|i| &self.perms[i])
            .ok_or_else(|| Error::InvalidInput(format!("orbit has no generator {letter:?}")))
    }

    /// The `R` action.
    pub fn r(&self) -> Result<&Permutation> {
        self.perm('R')
    }

    /// The `T` action.
    pub fn t(&self) -> Result<&Permutation> {
        self.perm('T')
    }

    /// Index reached from element 0 by the word, read right to left through
    /// the generator permutations. Lowercase letters use inverses.
    pub fn index_of_word(&self, word: &str) -> Result<usize> {
        let inverses: Vec<Permutation> = self.perms.iter().map(Permutation::inverse).collect();
        let mut index = 0;
        for c in word.chars().rev() {
            let up = c.to_ascii_uppercase();
            let k = self
                .letters
                .iter()
                .position(|&l| l == up)
                .ok_or_else(|| Error::Parse(format!("bad letter {c:?} in word")))?;
            index = if c.is_ascii_uppercase() { self.perms[k].apply(index) } else { inverses[k].apply(index) };
        }
        Ok(index)
    }

    /// Serializable form with one-based permutations.
    pub fn to_json(&self) -> OrbitJson {
        let perm = |c: char| self.perm(c).ok().map(Permutation::to_one_based);
        OrbitJson {
            n: self.len(),
            words: self.words.clone(),
            r: perm('R'),
            t: perm('T'),
            j: self.j.as_ref().map(Permutation::to_one_based),
        }
    }

    /// Loads a table from its JSON form (without surfaces).
    pub fn from_json(j: &OrbitJson) -> Result<OrbitTable> {
        if j.words.len() != j.n {
            return Err(Error::InvalidInput(format!("orbit lists {} words for N = {}", j.words.len(), j.n)));
        }
        let load = |v: &Vec<usize>| -> Result<Permutation> {
            if v.len() != j.n {
                return Err(Error::InvalidInput(format!("permutation of length {} for N = {}", v.len(), j.n)));
            }
            Permutation::from_one_based(v)
        };
        let mut letters = Vec::new();
        let mut perms = Vec::new();
        for (c, p) in [('R', &j.r), ('T', &j.t)] {
            if let Some(p) = p {
                letters.push(c);
                perms.push(load(p)?);
            }
        }
        let jp = j.j.as_ref().map(load).transpose()?;
        Ok(OrbitTable { letters, words: j.words.clone(), surfaces: Vec::new(), perms, j: jp })
    }

    /// JSON text.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("orbit serialization cannot fail")
    }

    /// Parses JSON text.
    pub fn from_json_str(s: &str) -> Result<OrbitTable> {
        OrbitTable::from_json(&serde_json::from_str(s)?)
    }
}

/// On-disk orbit format. Permutations are one-line image arrays, one-based.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub words: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<Vec<usize>>,
}

/// Breadth-first enumeration of the orbit of `surface` under `generators`.
///
/// Each level is canonicalized in parallel; new surfaces are then numbered
/// in (parent index, generator order), so the result does not depend on the
/// thread count and words come out minimal and sorted by [`word_cmp`].
pub fn enumerate_orbit(surface: &TranslationSurface, generators: &[Generator], cap: usize) -> Result<OrbitTable> {
    if generators.is_empty() {
        return Err(Error::InvalidInput("no generators".into()));
    }
    for g in generators {
        if g.matrix.det().sign() <= 0 {
            return Err(Error::NonPositiveDeterminant);
        }
    }
    let start = surface.canonicalize();
    let mut index: HashMap<CanonicalForm, usize> = HashMap::from([(start.clone(), 0)]);
    let mut surfaces = vec![start];
    let mut words = vec![String::new()];
    let mut action: Vec<Vec<usize>> = vec![Vec::new(); generators.len()];
    let mut leaves = vec![0usize];
    while !leaves.is_empty() {
        let images: Vec<Vec<CanonicalForm>> = leaves
            .par_iter()
            .map(|&leaf| {
                let s = surfaces[leaf].surface();
                generators
                    .iter()
                    .map(|g| s.apply_matrix(&g.matrix).map(|x| x.canonicalize()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut next = Vec::new();
        for (&leaf, imgs) in leaves.iter().zip(images) {
            for (k, img) in imgs.into_iter().enumerate() {
                let target = match index.get(&img) {
                    Some(&i) => i,
                    None => {
                        let i = surfaces.len();
                        if i >= cap {
                            return Err(Error::OrbitCapExceeded(cap));
                        }
                        index.insert(img.clone(), i);
                        surfaces.push(img);
                        words.push(format!("{}{}", generators[k].letter, words[leaf]));
                        next.push(i);
                        i
                    }
                };
                if action[k].len() <= leaf {
                    action[k].resize(leaf + 1, usize::MAX);
                }
                action[k][leaf] = target;
            }
        }
        leaves = next;
    }
    let perms = action.into_iter().map(Permutation::from_images).collect::<Result<Vec<_>>>()?;
    Ok(OrbitTable { letters: generators.iter().map(|g| g.letter).collect(), words, surfaces, perms, j: None })
}

/// Checks that `J` preserves the surface up to cut-and-paste, which is what
/// makes the reflection act on the orbit.
pub fn j_invariance_certificate(surface: &TranslationSurface) -> Result<bool> {
    Ok(surface.apply_gl2(&generator_j())?.canonicalize() == surface.canonicalize())
}

/// The action of `J` on an `{R, T}` orbit of a `J`-invariant surface.
///
/// Since `J R J = R^-1` and `J T J = T^-1`, the image of `w(S)` under `J` is
/// `w'(S)` where `w'` inverts every letter; it is found by replaying the word
/// through the inverse permutations.
pub fn compute_j(table: &OrbitTable) -> Result<Permutation> {
    let rinv = table.r()?.inverse();
    let tinv = table.t()?.inverse();
    let images = table
        .words
        .iter()
        .map(|w| {
            w.chars().rev().try_fold(0usize, |index, c| match c {
                'R' => Ok(rinv.apply(index)),
                'T' => Ok(tinv.apply(index)),
                _ => Err(Error::Parse(format!("bad letter {c:?} in orbit word"))),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let j = Permutation::from_images(images)?;
    if !j.compose(&j).is_identity() {
        return Err(Error::Inconsistent("computed j is not an involution".into()));
    }
    Ok(j)
}

/// Classes of the orbit under `<t, j>`, each given as its sorted member list.
/// Classes are ordered by their least index, whose word is the class word.
pub fn equivalence_classes(table: &OrbitTable) -> Result<Vec<Vec<usize>>> {
    let t = table.t()?;
    let j = table.j.as_ref().ok_or_else(|| Error::InvalidInput("orbit table has no j".into()))?;
    Ok(classes_of(table.len(), &[t, j]))
}

/// Orbits of the group generated by `gens` on `0..n`, by least element.
pub fn classes_of(n: usize, gens: &[&Permutation]) -> Vec<Vec<usize>> {
    let mut class = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if class[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        class[start] = id;
        let mut members = vec![start];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            k += 1;
            for g in gens {
                let y = g.apply(x);
                if class[y] == usize::MAX {
                    class[y] = id;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Class words: the word of the least index of each class.
pub fn class_words(table: &OrbitTable) -> Result<Vec<String>> {
    Ok(equivalence_classes(table)?.iter().map(|c| table.words[c[0]].clone()).collect())
}

/// A Veech group generator `C_{m(i)}^-1 M C_i` with its word.
#[derive(Clone, Debug)]
pub struct VeechGenerator {
    pub index: usize,
    pub letter: char,
    pub word: String,
    pub matrix: Mat2,
}

/// Generators of the Veech group of the orbit's base surface, one for each
/// pair of orbit element and generator.
pub fn veech_generators(table: &OrbitTable) -> Result<Vec<VeechGenerator>> {
    let mut out = Vec::with_capacity(table.len() * table.letters.len());
    let mats: Vec<Mat2> = table.words.iter().map(|w| word_matrix(w)).collect::<Result<_>>()?;
    for (k, &letter) in table.letters.iter().enumerate() {
        let m = generator_by_letter(letter).ok_or_else(|| Error::Parse(format!("bad letter {letter:?}")))?;
        for i in 0..table.len() {
            let target = table.perms[k].apply(i);
            let word = format!("{}{}{}", inverse_word(&table.words[target]), letter, table.words[i]);
            let matrix = mats[target].inverse()?.mul(&m).mul(&mats[i]);
            out.push(VeechGenerator { index: i, letter, word, matrix });
        }
    }
    Ok(out)
}

/// Whether `g` stabilizes the base surface, checked by acting letter by
/// letter along its word.
pub fn stabilizes(base: &CanonicalForm, g: &VeechGenerator) -> Result<bool> {
    Ok(&act_word(base, &g.word)? == base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{regular_pentagon, unit_square};
    use crate::flatsurface::EdgeRef;

    fn double_pentagon() -> TranslationSurface {
        let p = regular_pentagon();
        let q = p.negate();
        let pairs: Vec<_> = (0..5).map(|i| (EdgeRef::new(0, i), EdgeRef::new(1, i))).collect();
        TranslationSurface::from_pairs(vec![p, q], &pairs, 0).unwrap()
    }

    #[test]
    fn word_order() {
        assert_eq!(word_cmp("TRR", "RTR"), Ordering::Less);
        assert_eq!(word_cmp("T", "RR"), Ordering::Less);
        assert_eq!(word_cmp("", "R"), Ordering::Less);
        assert_eq!(inverse_word("RRT"), "trr");
    }

    #[test]
    fn double_pentagon_orbit_is_a_point() {
        let s = double_pentagon();
        let table = enumerate_orbit(&s, &Generator::rt(), DEFAULT_CAP).unwrap();
        assert_eq!(table.len(), 1);
        assert!(j_invariance_certificate(&s).unwrap());
        let mut table = table;
        table.j = Some(compute_j(&table).unwrap());
        assert_eq!(equivalence_classes(&table).unwrap(), vec![vec![0]]);
        let gens = veech_generators(&table).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].matrix, generator_r());
        assert_eq!(gens[1].matrix, generator_t());
    }

    #[test]
    fn square_torus_orbit_under_r_and_t() {
        // R and T are not in SL(2, Z), so the square torus has an infinite
        // orbit; the cap must trip.
        let sq = unit_square();
        let s = TranslationSurface::from_pairs(
            vec![sq],
            &[(EdgeRef::new(0, 0), EdgeRef::new(0, 2)), (EdgeRef::new(0, 1), EdgeRef::new(0, 3))],
            0,
        )
        .unwrap();
        assert!(matches!(enumerate_orbit(&s, &Generator::rt(), 30), Err(Error::OrbitCapExceeded(30))));
    }

    #[test]
    fn json_roundtrip() {
        let t = OrbitTable {
            letters: vec!['R', 'T'],
            words: vec!["".into(), "T".into()],
            surfaces: vec![],
            perms: vec![Permutation::identity(2), Permutation::from_images(vec![1, 0]).unwrap()],
            j: Some(Permutation::identity(2)),
        };
        let s = t.to_json_string();
        assert!(s.contains("\"t\":[2,1]"));
        let back = OrbitTable::from_json_str(&s).unwrap();
        assert_eq!(back.words, t.words);
        assert_eq!(back.perms, t.perms);
        assert_eq!(back.j, t.j);
        assert_eq!(back.index_of_word("T").unwrap(), 1);
        assert_eq!(back.index_of_word("tT").unwrap(), 0);
    }
}
