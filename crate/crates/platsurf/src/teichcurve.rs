//! Topology of Teichmüller curves of covers of the double pentagon and the
//! strata of the canonical covers of the Platonic solids.
//!
//! The base curve `H / PV(Pi_5)` is a sphere with one cusp, one cone point of
//! order 2 and one of order 5, with hyperbolic area `3 pi / 5`. A cover of
//! degree `N` is described by the action of `R` and `T` on its `N` sheets.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::platonic::Permutation;

/// A cone point class: `count` points of angle `2 pi / order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConePoints {
    pub angle: String,
    pub order: usize,
    pub count: usize,
}

/// Genus, cusps and cone points of a hyperbolic orbifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveTopology {
    pub genus: usize,
    pub cusps: usize,
    pub cone_points: Vec<ConePoints>,
}

impl CurveTopology {
    /// Number of cone points of the given order.
    pub fn cone_count(&self, order: usize) -> usize {
        self.cone_points.iter().filter(|c| c.order == order).map(|c| c.count).sum()
    }
}

fn angle_name(order: usize) -> String {
    match order {
        2 => "pi".to_string(),
        _ => format!("2pi/{order}"),
    }
}

/// Counts fixed points of `p`, requiring every other cycle to have length
/// `order`.
fn fixed_points_of_order(p: &Permutation, order: usize, name: &str) -> Result<usize> {
    let mut fixed = 0;
    for (len, count) in p.cycle_type() {
        if len == 1 {
            fixed = count;
        } else if len != order {
            return Err(Error::Inconsistent(format!("{name} has a cycle of length {len}; expected 1 or {order}")));
        }
    }
    Ok(fixed)
}

/// Topology of the cover of `H / PV(Pi_5)` given by the actions `r`, `t` of
/// `R` and `T` on the cosets.
///
/// Cusps are the cycles of `t`, cone points of angle `2 pi / 5` the fixed
/// points of `r` and cone points of angle `pi` the fixed points of `r t^-1`.
/// The genus comes from the area `N * 3 pi / 5` through Gauss-Bonnet, which
/// reads `20 g = 20 + 3 N - 10 c - 5 n_2 - 8 n_5`, and is cross-checked
/// with Riemann-Hurwitz for the branched cover of the sphere.
pub fn topology_over_pi5(r: &Permutation, t: &Permutation) -> Result<CurveTopology> {
    let n = r.len();
    if n == 0 || t.len() != n {
        return Err(Error::InvalidInput("r and t must act on the same nonempty set".into()));
    }
    let rt = r.compose(&t.inverse());
    let n5 = fixed_points_of_order(r, 5, "r")?;
    let n2 = fixed_points_of_order(&rt, 2, "r t^-1")?;
    let cusps = t.num_cycles();
    let twenty_g = 20 + 3 * n as i64 - 10 * cusps as i64 - 5 * n2 as i64 - 8 * n5 as i64;
    if twenty_g < 0 || twenty_g % 20 != 0 {
        return Err(Error::Inconsistent(format!("Gauss-Bonnet gives non-integral genus {twenty_g}/20")));
    }
    let genus = (twenty_g / 20) as usize;
    let euler = r.num_cycles() as i64 + rt.num_cycles() as i64 + cusps as i64 - n as i64;
    if euler != 2 - 2 * genus as i64 {
        return Err(Error::Inconsistent(format!(
            "Riemann-Hurwitz gives Euler characteristic {euler}, Gauss-Bonnet gives genus {genus}"
        )));
    }
    Ok(CurveTopology {
        genus,
        cusps,
        cone_points: vec![
            ConePoints { angle: angle_name(2), order: 2, count: n2 },
            ConePoints { angle: angle_name(5), order: 5, count: n5 },
        ],
    })
}

/// Stratum `H((k-2)^(2k))` and genus `(k-1)^2` of the canonical `k`-cover
/// of a Platonic solid, returned as the list of zero orders and the genus.
pub fn stratum_of_k_cover(k: usize) -> Result<(Vec<usize>, usize)> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("k = {k} must be at least 2")));
    }
    Ok((vec![k - 2; 2 * k], (k - 1) * (k - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::platonic::stratum_string;

    #[test]
    fn base_curve() {
        let id = Permutation::identity(1);
        let c = topology_over_pi5(&id, &id).unwrap();
        assert_eq!((c.genus, c.cusps, c.cone_count(2), c.cone_count(5)), (0, 1, 1, 1));
    }

    #[test]
    fn bad_cycle_structure_is_rejected() {
        let r = Permutation::from_images(vec![1, 0]).unwrap();
        let t = Permutation::identity(2);
        assert!(matches!(topology_over_pi5(&r, &t), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn strata() {
        let (z, g) = stratum_of_k_cover(10).unwrap();
        assert_eq!((stratum_string(&z), g), ("H(8^20)".to_string(), 81));
        let (z, g) = stratum_of_k_cover(4).unwrap();
        assert_eq!((stratum_string(&z), g), ("H(2^8)".to_string(), 9));
        let (z, g) = stratum_of_k_cover(2).unwrap();
        assert_eq!((stratum_string(&z), g), ("H(0^4)".to_string(), 1));
        assert!(stratum_of_k_cover(1).is_err());
    }
}
