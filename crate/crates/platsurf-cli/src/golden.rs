//! Reference tables shipped with the crate.
//!
//! Exact coordinates are stored as four space separated integers, the
//! coefficients of `1, s, s^2, s^3`.

use anyhow::{bail, Context, Result};
use platsurf::exactnum::Nf;
use platsurf::planar::Vec2;
use serde::Deserialize;

pub const STRATA_CSV: &str = include_str!("../data/strata.csv");
pub const ARITHMETIC_CURVES_CSV: &str = include_str!("../data/arithmetic_curves.csv");
pub const CLASS_REPRESENTATIVES_CSV: &str = include_str!("../data/class_representatives.csv");
pub const SHORTEST_REPRESENTATIVES_CSV: &str = include_str!("../data/shortest_representatives.csv");

/// Strata of a solid and its unfolding.
#[derive(Clone, Debug, Deserialize)]
pub struct StrataRow {
    pub solid: String,
    pub k: usize,
    pub k_stratum: String,
    pub unfolding_stratum: String,
    pub genus: usize,
}

/// Teichmüller curve data of an arithmetic solid.
#[derive(Clone, Debug, Deserialize)]
pub struct VeechRow {
    pub solid: String,
    pub index: usize,
    pub cusps: usize,
    pub cusp_widths: String,
    pub nu2: usize,
    pub nu3: usize,
    pub genus: usize,
}

impl VeechRow {
    /// Cusp widths sorted in decreasing order.
    pub fn widths_sorted(&self) -> Result<Vec<usize>> {
        let mut w = self
            .cusp_widths
            .split_whitespace()
            .map(|x| x.parse::<usize>().with_context(|| format!("bad cusp width {x:?}")))
            .collect::<Result<Vec<_>>>()?;
        w.sort_unstable_by(|a, b| b.cmp(a));
        Ok(w)
    }
}

#[derive(Deserialize)]
struct RawSaddleRow {
    id: usize,
    word: String,
    x: String,
    y: String,
    length: f64,
    approx_x: f64,
    approx_y: f64,
}

/// A printed closed saddle connection.
#[derive(Clone, Debug)]
pub struct SaddleRow {
    pub id: usize,
    pub word: String,
    pub holonomy: Vec2,
    pub length: f64,
    pub approx: (f64, f64),
}

fn parse_coeffs(text: &str) -> Result<Nf> {
    let c = text
        .split_whitespace()
        .map(|x| x.parse::<i64>().with_context(|| format!("bad coefficient {x:?}")))
        .collect::<Result<Vec<_>>>()?;
    if c.len() != 4 {
        bail!("expected 4 coefficients in {text:?}");
    }
    Ok(Nf::from_ints([c[0], c[1], c[2], c[3]], 1))
}

fn read<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<Vec<T>, _>>()
        .context("malformed golden table")
}

/// Strata of the solids and their unfoldings.
pub fn strata() -> Result<Vec<StrataRow>> {
    read(STRATA_CSV)
}

/// Teichmüller curves of the arithmetic solids.
pub fn arithmetic_curves() -> Result<Vec<VeechRow>> {
    read(ARITHMETIC_CURVES_CSV)
}

fn saddle_rows(text: &str) -> Result<Vec<SaddleRow>> {
    read::<RawSaddleRow>(text)?
        .into_iter()
        .map(|r| {
            Ok(SaddleRow {
                id: r.id,
                word: r.word,
                holonomy: Vec2::new(parse_coeffs(&r.x)?, parse_coeffs(&r.y)?),
                length: r.length,
                approx: (r.approx_x, r.approx_y),
            })
        })
        .collect()
}

/// Class representatives: word `w` and holonomy `R^k w^-1 (2 phi, 0)`.
pub fn class_representatives() -> Result<Vec<SaddleRow>> {
    saddle_rows(CLASS_REPRESENTATIVES_CSV)
}

/// Shortest representatives: word `M` with holonomy `R^k M (2 phi, 0)`.
pub fn shortest_representatives() -> Result<Vec<SaddleRow>> {
    saddle_rows(SHORTEST_REPRESENTATIVES_CSV)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_parse() {
        assert_eq!(strata().unwrap().len(), 5);
        assert_eq!(arithmetic_curves().unwrap()[2].widths_sorted().unwrap(), vec![4, 3, 2]);
        let t3 = class_representatives().unwrap();
        assert_eq!(t3.len(), 31);
        assert_eq!(t3[0].holonomy.x, Nf::from_ints([12, 0, -3, 0], 1));
        assert_eq!(shortest_representatives().unwrap().len(), 17);
    }

    #[test]
    fn approximations_agree_with_exact_values() {
        for row in class_representatives().unwrap().iter().chain(&shortest_representatives().unwrap()) {
            let (x, y) = row.holonomy.to_f64();
            assert!((row.holonomy.length_f64() - row.length).abs() <= 5e-3 * row.length.max(1.0), "row {}", row.id);
            assert!((x - row.approx.0).abs() < 1e-3 * x.abs().max(1.0), "row {}", row.id);
            assert!((y - row.approx.1).abs() < 1e-3 * y.abs().max(1.0), "row {}", row.id);
        }
    }
}
