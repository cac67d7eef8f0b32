//! Cross-cutting properties: generator-order invariance of reduced bases,
//! order-independence of Hilbert data, Bézout counts, and seed stability.

use cascade_core::detmat::{build_generic, minor_ideal, IdealData};
use cascade_core::field::{CoeffField, SplitMix64, DEFAULT_PRIME};
use cascade_core::groebner::{distinct_point_count, groebner, hilbert_data, GbConfig};
use cascade_core::monomial::MonomialOrder;
use cascade_core::poly::{make_ring, random_form, simple_ring};

#[test]
fn reduced_basis_ignores_generator_order_and_scaling() {
    let ring = simple_ring(&["x", "y", "z", "w"], MonomialOrder::GrevLex);
    let m = build_generic(2, 3, &ring, SplitMix64::derive(5, 0x11).next_u64());
    let ideal = minor_ideal(&m, 2).unwrap();
    let gb = groebner(&ideal, &GbConfig::default());
    gb.require_complete().unwrap();

    let mut gens = ideal.generators.clone();
    gens.reverse();
    let scaled: Vec<_> = gens.iter().map(|g| g.scale(7)).collect();
    let shuffled = IdealData::new(&ring, scaled, "same ideal, reordered and rescaled");
    let gb2 = groebner(&shuffled, &GbConfig::default());
    gb2.require_complete().unwrap();

    let key = |b: &[cascade_core::poly::Polynomial]| -> Vec<String> {
        let mut v: Vec<String> = b.iter().map(|p| format!("{p}")).collect();
        v.sort();
        v
    };
    assert_eq!(key(&gb.basis), key(&gb2.basis));
}

#[test]
fn hilbert_data_is_order_independent() {
    for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
        let ring = make_ring(
            &["x", "y", "z", "w"],
            &[1; 4],
            order,
            CoeffField::Prime(DEFAULT_PRIME),
        )
        .unwrap();
        let m = build_generic(2, 3, &ring, SplitMix64::derive(9, 0x12).next_u64());
        let ideal = minor_ideal(&m, 2).unwrap();
        let gb = groebner(&ideal, &GbConfig::default());
        let h = hilbert_data(&gb).unwrap();
        // the twisted cubic: a curve of degree 3
        assert_eq!((h.dim, h.degree), (1, 3), "order {order:?}");
    }
}

#[test]
fn bezout_count_for_a_generic_345_intersection() {
    let ring = simple_ring(&["x", "y", "z", "w"], MonomialOrder::GrevLex);
    let gens: Vec<_> = [3u32, 4, 5]
        .iter()
        .enumerate()
        .map(|(i, &d)| random_form(&ring, d, SplitMix64::derive(2, 0x80 + i as u64).next_u64()).unwrap())
        .collect();
    let ideal = IdealData::new(&ring, gens, "generic (3,4,5) intersection");
    let gb = groebner(&ideal, &GbConfig::default());
    let h = hilbert_data(&gb).unwrap();
    assert_eq!((h.dim, h.degree), (0, 60));
    let pc = distinct_point_count(&ideal, 2, &GbConfig::default()).unwrap();
    assert_eq!(pc.length, 60);
    assert!(pc.distinct <= pc.length);
}

#[test]
fn random_forms_are_seed_stable_and_tag_sensitive() {
    let ring = simple_ring(&["x", "y", "z"], MonomialOrder::GrevLex);
    let a = random_form(&ring, 2, SplitMix64::derive(4, 0x1).next_u64()).unwrap();
    let b = random_form(&ring, 2, SplitMix64::derive(4, 0x1).next_u64()).unwrap();
    let c = random_form(&ring, 2, SplitMix64::derive(4, 0x2).next_u64()).unwrap();
    assert_eq!(format!("{a}"), format!("{b}"));
    assert_ne!(format!("{a}"), format!("{c}"));
}
