//! Shared steps of the command line pipelines.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use platsurf::flatsurface::TranslationSurface;
use platsurf::orbit::{compute_j, enumerate_orbit, equivalence_classes, Generator, OrbitTable};
use platsurf::planar::regular_pentagon;
use platsurf::platonic::{build_unfolding, Solid};

/// The unfolded dodecahedron.
pub fn dodecahedron_surface() -> Result<TranslationSurface> {
    Ok(build_unfolding(Solid::Dodecahedron)?.surface)
}

/// Corner 0 of the first top pentagon: the left end of its horizontal edge.
pub fn top_corner(s: &TranslationSurface) -> Result<(usize, usize)> {
    let p = regular_pentagon();
    (0..s.num_polygons())
        .find(|&l| s.polygon(l) == &p)
        .map(|l| (l, 0))
        .context("surface has no upright regular pentagon")
}

/// Enumerates the `{R, T}` orbit of the unfolded dodecahedron and attaches
/// the action of `J`.
pub fn compute_orbit(cap: usize) -> Result<OrbitTable> {
    let mut table = enumerate_orbit(&dodecahedron_surface()?, &Generator::rt(), cap)?;
    table.j = Some(compute_j(&table)?);
    Ok(table)
}

/// Reads an orbit file, filling in `J` when it is missing.
pub fn load_orbit(path: &Path) -> Result<OrbitTable> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut table = OrbitTable::from_json_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if table.j.is_none() {
        table.j = Some(compute_j(&table)?);
    }
    Ok(table)
}

/// Writes an orbit file.
pub fn save_orbit(table: &OrbitTable, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, table.to_json_string()).with_context(|| format!("writing {}", path.display()))
}

/// Loads the orbit from `cache` if the file exists, otherwise computes and
/// stores it there. Returns the table and whether it came from the cache.
pub fn cached_orbit(cache: Option<&Path>, cap: usize) -> Result<(OrbitTable, bool)> {
    if let Some(path) = cache {
        if path.exists() {
            return Ok((load_orbit(path)?, true));
        }
    }
    let table = compute_orbit(cap)?;
    if let Some(path) = cache {
        save_orbit(&table, path)?;
    }
    Ok((table, false))
}

/// The `<t, j>` classes together with the class of every orbit element.
pub struct ClassIndex {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ClassIndex {
    pub fn new(table: &OrbitTable) -> Result<ClassIndex> {
        let classes = equivalence_classes(table)?;
        let mut class_of = vec![usize::MAX; table.len()];
        for (c, members) in classes.iter().enumerate() {
            for &i in members {
                class_of[i] = c;
            }
        }
        Ok(ClassIndex { classes, class_of })
    }

    /// Class of `w(D)` for a word read right to left; lowercase letters are
    /// inverses.
    pub fn class_of_word(&self, table: &OrbitTable, word: &str) -> Result<usize> {
        Ok(self.class_of[table.index_of_word(word)?])
    }
}

/// `x` with `digits` significant digits.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Checks a requested float precision.
pub fn check_precision(digits: usize) -> Result<usize> {
    if digits < 6 {
        bail!("precision must be at least 6 significant digits, got {digits}");
    }
    Ok(digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(16.2385942, 6), "16.2386");
        assert_eq!(sig(1374.1118, 6), "1374.11");
        assert_eq!(sig(0.0, 6), "0");
        assert!(check_precision(5).is_err());
    }

    #[test]
    fn top_corner_of_dodecahedron() {
        let s = dodecahedron_surface().unwrap();
        let (l, k) = top_corner(&s).unwrap();
        assert_eq!(k, 0);
        assert_eq!(s.polygon(l), &regular_pentagon());
    }
}
