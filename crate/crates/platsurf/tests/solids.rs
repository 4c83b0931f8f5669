//! End-to-end checks of the unfoldings of the five solids.

use platsurf::flatsurface::TranslationSurface;
use platsurf::planar::generator_r;
use platsurf::platonic::{build_unfolding, monodromy_generators, unfolding_data, Solid};
use platsurf::teichcurve::stratum_of_k_cover;

const SOLIDS: [Solid; 5] = [Solid::Tetrahedron, Solid::Octahedron, Solid::Cube, Solid::Icosahedron, Solid::Dodecahedron];

#[test]
fn zero_orders_satisfy_gauss_bonnet() {
    for solid in SOLIDS {
        let u = build_unfolding(solid).unwrap();
        let data = unfolding_data(&u);
        let total: usize = data.zero_orders.iter().sum();
        assert_eq!(total + 2, 2 * data.genus, "{solid}");
        assert_eq!(u.surface.genus(), data.genus, "{solid}");
    }
}

#[test]
fn unfolding_matches_the_k_cover() {
    // One zero per vertex of the solid, and the genus of the k-cover.
    for solid in SOLIDS {
        let data = unfolding_data(&build_unfolding(solid).unwrap());
        let (orders, genus) = stratum_of_k_cover(solid.k()).unwrap();
        assert_eq!(data.genus, genus, "{solid}");
        assert_eq!(data.zero_orders.len(), solid.vertices(), "{solid}");
        assert_eq!(orders.len(), 2 * solid.k(), "{solid}");
    }
}

#[test]
fn surfaces_round_trip_through_json() {
    for solid in SOLIDS {
        let s = build_unfolding(solid).unwrap().surface;
        let back = TranslationSurface::from_json_str(&s.to_json_string()).unwrap();
        assert_eq!(back.canonicalize(), s.canonicalize(), "{solid}");
    }
}

#[test]
fn dodecahedron_has_rotational_symmetry() {
    let s = build_unfolding(Solid::Dodecahedron).unwrap().surface;
    let c = s.canonicalize();
    assert_eq!(s.apply_matrix(&generator_r()).unwrap().canonicalize(), c);
    assert!(s.delaunay().is_delaunay());
}

#[test]
fn monodromy_generators_act_on_sheets() {
    for solid in SOLIDS {
        let gens = monodromy_generators(solid).unwrap();
        assert!(!gens.is_empty(), "{solid}");
        assert!(gens.iter().all(|g| g.len() == gens[0].len()), "{solid}");
    }
}
