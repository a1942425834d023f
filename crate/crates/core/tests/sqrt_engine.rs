use mod18root::certificate::Setup;
use mod18root::oracle::{isqrt_oracle, zeroless_base9};
use mod18root::sqrt::{run_branch, select_digit, setup};
use mod18root::{
    sqrt_certify, BranchOutcome, Natural, Rejection, ResidueClass, Step, Verdict,
};
use proptest::prelude::*;

fn n(v: u64) -> Natural {
    Natural::from(v)
}

fn class(v: u8) -> ResidueClass {
    ResidueClass::new(v).unwrap()
}

#[test]
fn setup_values() {
    let Setup::Ready(b) = setup(&n(1429822969), class(13)) else { panic!() };
    assert_eq!(b.n0(), &n(39717300));
    let Setup::Ready(b) = setup(&n(1429822969), class(5)) else { panic!() };
    assert_eq!(b.n0(), &n(39717304));
    // 19 is in [1] but 19 - 1 = 18 is not a multiple of 36.
    assert!(matches!(setup(&n(19), class(1)), Setup::Gate { remainder: 18 }));
    assert!(matches!(setup(&n(289), class(17)), Setup::Trivial));
    assert!(matches!(setup(&n(19), class(17)), Setup::Below));
}

#[test]
fn digit_lookup_is_unique() {
    assert_eq!(select_digit(3, class(13)), 3);
    assert_eq!(select_digit(7, class(5)), 5);
    assert_eq!(select_digit(0, class(1)), 9);
    for a in ResidueClass::ALL {
        for target in 0u8..9 {
            let hits: Vec<u8> =
                (1u8..=9).filter(|&b| (a.value() as u32 * b as u32) % 9 == target as u32).collect();
            assert_eq!(hits, [select_digit(target, a)]);
        }
    }
}

/// Rows of the worked square example as `(i, b_{i+1}, p_i, frac_i, f_i)`.
fn rows_of(n0: u64, a: u8) -> (Vec<(u32, u8, u64, String, u64)>, Step) {
    let Setup::Ready(mut branch) = setup(&n(n0), class(a)) else { panic!() };
    loop {
        let step = branch.step();
        if step != Step::Continue {
            let rows = branch
                .rows()
                .iter()
                .map(|r| (r.i, r.b_next, r.p_i.to_u64().unwrap(), r.frac_i.to_string(), r.f_i.to_u64().unwrap()))
                .collect();
            return (rows, step);
        }
    }
}

#[test]
fn worked_square_branch_equal() {
    let (rows, step) = rows_of(1429822969, 13);
    let expected = [
        (0, 3, 3, "4413029", 9),
        (1, 8, 75, "490324", 624),
        (2, 7, 642, "54401", 5019),
        (3, 2, 2100, "5484", 5484),
    ];
    assert_eq!(rows.len(), expected.len());
    for (got, want) in rows.iter().zip(expected) {
        assert_eq!((got.0, got.1, got.2, got.3.as_str(), got.4), want);
    }
    assert_eq!(step, Step::Equal(n(37813)));
}

#[test]
fn worked_square_branch_fail() {
    let (rows, step) = rows_of(1429822969, 5);
    let expected = [
        (0, 5, 5, "4413031", 25),
        (1, 9, 86, "490329", 819),
        (2, 9, 815, "54385", 8109),
        (3, 5, 4460, "5139", 26375),
    ];
    for (got, want) in rows.iter().zip(expected) {
        assert_eq!((got.0, got.1, got.2, got.3.as_str(), got.4), want);
    }
    match step {
        Step::Fail(res) => assert_eq!(res.to_string(), "-21236"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn smallest_nontrivial_square() {
    let (rows, step) = rows_of(361, 1);
    assert_eq!(rows, [(0, 1, 1, "1".to_string(), 1)]);
    assert_eq!(step, Step::Equal(n(19)));
}

#[test]
fn certify_examples() {
    let cert = sqrt_certify(&n(1429822969)).unwrap();
    assert_eq!(cert.root(), Some(&n(37813)));
    let outcomes: Vec<_> = cert.branches.iter().map(|b| (b.a.value(), b.outcome)).collect();
    assert_eq!(outcomes, [(5, BranchOutcome::Fail), (13, BranchOutcome::Equal)]);

    let cert = sqrt_certify(&n(512346251)).unwrap();
    assert_eq!(cert.verdict, Verdict::NotExact(Rejection::ClassExcluded));
    assert!(cert.branches.is_empty());

    let cert = sqrt_certify(&n(12996)).unwrap();
    assert_eq!(cert.root(), Some(&n(114)));

    let cert = sqrt_certify(&n(2 * 361)).unwrap();
    assert_eq!(cert.verdict, Verdict::NotExact(Rejection::Infeasible));

    assert_eq!(sqrt_certify(&n(1)).unwrap().root(), Some(&n(1)));
    assert_eq!(sqrt_certify(&n(4)).unwrap().root(), Some(&n(2)));
    assert!(sqrt_certify(&Natural::zero()).is_err());
}

#[test]
fn branch_order_does_not_matter() {
    for v in [1429822969u64, 361, 1_000_001, 982_451_653 * 3 + 2, 37813 * 37813 + 36] {
        let cert = sqrt_certify(&n(v)).unwrap();
        let core = &cert.normalization.core;
        let reversed: Vec<_> = cert
            .candidates
            .a_values
            .iter()
            .rev()
            .map(|&a| run_branch(core, a).unwrap())
            .collect();
        let forward: Vec<_> = cert.branches.iter().rev().cloned().collect();
        assert_eq!(forward, reversed);

        let threaded: Vec<_> = std::thread::scope(|s| {
            let handles: Vec<_> = cert
                .candidates
                .a_values
                .iter()
                .map(|&a| s.spawn(move || run_branch(core, a).unwrap()))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert_eq!(threaded, cert.branches);
    }
}

#[test]
fn frac_falls_along_every_branch() {
    for v in (1u64..300_000).step_by(7).chain([1429822969]) {
        let cert = sqrt_certify(&n(v)).unwrap();
        for b in &cert.branches {
            for w in b.rows.windows(2) {
                let (prev, next) = (&w[0], &w[1]);
                assert!(next.frac_i.magnitude() < prev.frac_i.magnitude() || next.frac_i.is_negative());
            }
            for r in &b.rows {
                // f_i = b(p_{i-1} + p_i) >= p_i >= 9^i
                assert!(r.f_i >= r.p_i && r.p_i >= Natural::one().shift9(r.i), "n = {v}");
            }
        }
    }
}

#[test]
fn f_is_not_monotone() {
    // A large digit followed by a small one makes f drop.
    let cert = sqrt_certify(&n(11677)).unwrap();
    let b = cert.branches.iter().find(|b| b.a == class(7)).unwrap();
    let f: Vec<u64> = b.rows.iter().map(|r| r.f_i.to_u64().unwrap()).collect();
    assert_eq!(f, [25, 19]);
}

#[test]
fn negative_frac_terminates_branch() {
    // Find a branch where N_i < a·b_{i+1} and check the recorded residual.
    let mut seen = false;
    for v in (1u64..200_000).filter(|v| v % 2 == 1 && v % 3 != 0) {
        let cert = sqrt_certify(&n(v)).unwrap();
        for b in &cert.branches {
            if let Some(last) = b.rows.last() {
                if last.frac_i.is_negative() {
                    seen = true;
                    assert_eq!(b.outcome, BranchOutcome::Fail);
                    let res = b.residual.as_ref().unwrap();
                    assert!(res.is_negative());
                    assert_eq!(
                        res.magnitude(),
                        &last.frac_i.magnitude().add(&last.f_i)
                    );
                }
            }
        }
    }
    assert!(seen, "no branch hit a negative frac");
}

proptest! {
    #[test]
    fn random_big_inputs_match_oracle(limbs in prop::collection::vec(any::<u64>(), 1..8)) {
        let v = Natural::from_u64_limbs(limbs);
        prop_assume!(!v.is_zero());
        let cert = sqrt_certify(&v).unwrap();
        let (r, exact) = isqrt_oracle(&v);
        prop_assert_eq!(cert.is_exact(), exact);
        if exact {
            prop_assert_eq!(cert.root(), Some(&r));
        }
    }

    #[test]
    fn random_big_squares_recover_root(limbs in prop::collection::vec(any::<u64>(), 1..12)) {
        let r = Natural::from_u64_limbs(limbs);
        prop_assume!(!r.is_zero());
        let sq = r.pow(2);
        let cert = sqrt_certify(&sq).unwrap();
        prop_assert_eq!(cert.root(), Some(&r));
        // Neighbours of a square are never squares (r ≥ 2).
        if r > Natural::one() {
            prop_assert!(!sqrt_certify(&sq.add_small(1)).unwrap().is_exact());
            prop_assert!(!sqrt_certify(&sq.sub_checked(&Natural::one()).unwrap()).unwrap().is_exact());
        }
    }

    #[test]
    fn winning_branch_digits_are_zeroless_base9(p in 1u64..u64::MAX / 64, ai in 0usize..6) {
        let a = ResidueClass::ALL[ai];
        let root = Natural::from(p).mul_small(18).add_small(a.value() as u64);
        let cert = sqrt_certify(&root.pow(2)).unwrap();
        let win = cert.winning_branch().unwrap();
        prop_assert_eq!(win.a, a);
        let digits: Vec<u8> = win.rows.iter().map(|r| r.b_next).collect();
        prop_assert_eq!(digits, zeroless_base9(&Natural::from(p)).unwrap());
    }
}
