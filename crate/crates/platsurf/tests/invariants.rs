//! Property tests for the number field, permutations and surface normal forms.

use platsurf::exactnum::{phi, Nf};
use platsurf::flatsurface::TranslationSurface;
use platsurf::origami::Origami;
use platsurf::planar::{generator_r, generator_t, word_matrix, Mat2};
use platsurf::platonic::Permutation;
use platsurf::saddle::double_pentagon;
use proptest::prelude::*;

fn nf() -> impl Strategy<Value = Nf> {
    (prop::array::uniform4(-20i64..=20), 1i64..=6).prop_map(|(c, den)| Nf::from_ints(c, den))
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perm_pair() -> impl Strategy<Value = (Permutation, Permutation)> {
    (1usize..=8).prop_flat_map(|n| (permutation(n), permutation(n)))
}

fn word() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!['R', 'T', 'r', 't']), 0..6).prop_map(|v| v.into_iter().collect())
}

/// Sheared origamis and images of the double pentagon.
fn surface() -> impl Strategy<Value = TranslationSurface> {
    let origami = (perm_pair(), -3i64..=3, -3i64..=3).prop_filter_map("disconnected", |((r, u), a, b)| {
        let o = Origami::new(r, u).ok()?;
        let m = Mat2::from_ints(1, a, 0, 1).mul(&Mat2::from_ints(1, 0, b, 1));
        o.to_surface().apply_matrix(&m).ok()
    });
    let pentagon = word().prop_map(|w| {
        let m = word_matrix(&w).unwrap().mul(&generator_t().inverse().unwrap());
        double_pentagon().apply_matrix(&m).unwrap()
    });
    prop_oneof![origami, pentagon]
}

/// A surface with a random relabeling `perm[old] = new` of its polygons.
fn relabeled_surface() -> impl Strategy<Value = (TranslationSurface, Vec<usize>)> {
    surface().prop_flat_map(|s| {
        let labels = Just((0..s.num_polygons()).collect::<Vec<_>>()).prop_shuffle();
        (Just(s), labels)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_ring_axioms(a in nf(), b in nf(), c in nf()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Nf::zero());
    }

    #[test]
    fn nonzero_elements_invert(a in nf()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a * &a.inv().unwrap(), Nf::one());
    }

    #[test]
    fn order_matches_floating_point(a in nf(), b in nf()) {
        let (x, y) = (a.to_f64(), b.to_f64());
        if (x - y).abs() > 1e-9 {
            prop_assert_eq!(a < b, x < y);
        }
        prop_assert_eq!(a.sign() == 0, a.is_zero());
    }

    #[test]
    fn coefficient_strings_round_trip(a in nf()) {
        prop_assert_eq!(a.to_coeff_string().parse::<Nf>().unwrap(), a);
    }

    #[test]
    fn permutation_group_laws((p, q) in perm_pair(), e in -5i64..=5) {
        let n = p.len();
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert_eq!(p.pow(e).compose(&p.pow(-e)), Permutation::identity(n));
        prop_assert_eq!(p.cycle_type().iter().map(|(l, c)| l * c).sum::<usize>(), n);
        prop_assert!(p.pow(p.order() as i64).is_identity());
        // Conjugation preserves cycle type.
        prop_assert_eq!(p.conjugate_by(&q).cycle_type(), p.cycle_type());
    }

    #[test]
    fn words_match_their_matrices(w in word()) {
        let m = word_matrix(&w).unwrap();
        prop_assert_eq!(m.det(), Nf::one());
        let inv = word_matrix(&platsurf::orbit::inverse_word(&w)).unwrap();
        prop_assert_eq!(m.mul(&inv), Mat2::identity());
    }

    #[test]
    fn canonical_form_is_a_normal_form((s, perm) in relabeled_surface()) {
        let c = s.canonicalize();
        prop_assert_eq!(&c.surface().canonicalize(), &c);
        prop_assert_eq!(&s.relabel(&perm).unwrap().canonicalize(), &c);
    }

    #[test]
    fn delaunay_has_empty_circumdisks(s in surface()) {
        let d = s.delaunay();
        prop_assert!(d.is_delaunay());
        prop_assert_eq!(d.twice_area(), s.twice_area());
        prop_assert_eq!(d.genus(), s.genus());
    }

    #[test]
    fn area_and_genus_are_affine_invariant(s in surface(), k in 0u32..10) {
        let m = generator_r().pow(k);
        let image = s.apply_matrix(&m).unwrap();
        prop_assert_eq!(image.twice_area(), s.twice_area());
        prop_assert_eq!(image.genus(), s.genus());
    }
}

#[test]
fn golden_ratio_identities() {
    let p = phi();
    assert_eq!(&p * &p, &p + &Nf::one());
    assert_eq!(Nf::s().pow(4) - Nf::from_int(5) * Nf::s().pow(2) + Nf::from_int(5), Nf::zero());
}
