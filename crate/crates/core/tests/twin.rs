use mod18root::twin::discriminate_any;
use mod18root::{
    discriminate, residue_class_of, sqrt_certify, twin_type, Discrimination, DomainError, Natural,
    ResidueClass, TwinType,
};

fn n(v: u64) -> Natural {
    Natural::from(v)
}

/// The first twelve twin-prime pairs with their classes and types.
const PAIRS: [(u64, u8, u8, TwinType); 12] = [
    (5, 5, 7, TwinType::A),
    (11, 11, 13, TwinType::B),
    (17, 17, 1, TwinType::C),
    (29, 11, 13, TwinType::B),
    (41, 5, 7, TwinType::A),
    (59, 5, 7, TwinType::A),
    (71, 17, 1, TwinType::C),
    (101, 11, 13, TwinType::B),
    (107, 17, 1, TwinType::C),
    (137, 11, 13, TwinType::B),
    (149, 5, 7, TwinType::A),
    (179, 17, 1, TwinType::C),
];

#[test]
fn first_twelve_twin_pairs() {
    for (q, lo, hi, ty) in PAIRS {
        assert_eq!(residue_class_of(&n(q)).unwrap().value(), lo, "{q}");
        assert_eq!(residue_class_of(&n(q + 2)).unwrap().value(), hi, "{}", q + 2);
        assert_eq!(twin_type(&n(q), &n(q + 2)), Ok(ty));
        let (clo, chi) = ty.classes();
        assert_eq!((clo.value(), chi.value()), (lo, hi));
        let product = n(q * (q + 2));
        assert_eq!(residue_class_of(&product).unwrap().value(), 17);
        assert_eq!(discriminate(&product), Ok(Discrimination::TwinProductCandidate));
    }
}

#[test]
fn every_aligned_pair_product_is_class_17() {
    for q in (5u64..=10_000).filter(|q| q % 2 == 1 && q % 3 != 0 && (q + 2) % 3 != 0) {
        assert_eq!((q * (q + 2)) % 18, 17);
        let ty = twin_type(&n(q), &n(q + 2)).unwrap();
        assert_eq!(ty.classes().0.value() as u64, q % 18);
    }
}

#[test]
fn misaligned_and_misspaced_pairs_are_rejected() {
    // 7 + 2 = 9 is a multiple of 3.
    assert!(matches!(twin_type(&n(7), &n(9)), Err(DomainError::NotTwinAligned { class: 7, .. })));
    assert!(matches!(twin_type(&n(5), &n(11)), Err(DomainError::NotTwinSpaced { .. })));
    assert!(twin_type(&n(4), &n(6)).is_err());
}

#[test]
fn twin_candidates_and_squares_never_overlap() {
    for v in (1u64..200_000).filter(|v| v % 2 == 1 && v % 3 != 0) {
        let d = discriminate(&n(v)).unwrap();
        let square = sqrt_certify(&n(v)).unwrap().is_exact();
        if square {
            assert!(matches!(d, Discrimination::SquareCandidate { .. }), "{v}");
        }
        match d {
            Discrimination::TwinProductCandidate => assert_eq!(v % 18, 17),
            Discrimination::SquareCandidate { class, ref a_values } => {
                assert!(matches!(class.value(), 1 | 7 | 13));
                assert_eq!(a_values.len(), 2);
            }
            Discrimination::Neither { class } => assert!(matches!(class.value(), 5 | 11)),
        }
    }
}

#[test]
fn discriminate_strips_small_factors() {
    assert_eq!(discriminate_any(&n(35 * 12)), Ok(Discrimination::TwinProductCandidate));
    assert!(discriminate(&n(12)).is_err());
    let d = discriminate_any(&n(1429822969 * 4)).unwrap();
    assert_eq!(
        d,
        Discrimination::SquareCandidate {
            class: ResidueClass::new(7).unwrap(),
            a_values: vec![ResidueClass::new(5).unwrap(), ResidueClass::new(13).unwrap()],
        }
    );
}
