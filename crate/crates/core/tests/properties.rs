use orthopath::bijection::{dyck_to_slh, expand_horizontals, slh_to_motzkin, GammaSpec};
use orthopath::lecturehall::{
    from_staircase, level0_bottom, partial_weight_sum, se_enumerate, se_weight, to_staircase, LambdaWeights, Parity,
    SePath, SlhPoint, SlhVertex,
};
use orthopath::motzkin::{self, MotzkinPath, Step};
use orthopath::orthopoly::{lin_coeff, mixed_moment, transfer_power, RecurrenceSpec};
use orthopath::quantum::{self, QhoState};
use orthopath::{Indet, Poly, Rat, DEFAULT_ENUM_CAP};
use proptest::prelude::*;

/// A Dyck prefix built from a bit string: 1 = up, 0 = down when possible.
fn dyck_from_bits(bits: &[bool]) -> MotzkinPath {
    let mut h = 0usize;
    let steps = bits
        .iter()
        .map(|&up| {
            if up || h == 0 {
                h += 1;
                Step::U
            } else {
                h -= 1;
                Step::D
            }
        })
        .collect();
    MotzkinPath::new(0, steps).unwrap()
}

fn motzkin_from_codes(codes: &[u8]) -> MotzkinPath {
    let mut h = 0usize;
    let steps = codes
        .iter()
        .map(|&c| match (c % 3, h) {
            (0, _) => {
                h += 1;
                Step::U
            }
            (2, h0) if h0 > 0 => {
                h -= 1;
                Step::D
            }
            _ => Step::H,
        })
        .collect();
    MotzkinPath::new(0, steps).unwrap()
}

fn parity_of(p: &MotzkinPath) -> Parity {
    if p.len().is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

proptest! {
    #[test]
    fn bijection_preserves_weight(bits in prop::collection::vec(any::<bool>(), 0..16)) {
        let p = dyck_from_bits(&bits);
        let parity = parity_of(&p);
        let spec = RecurrenceSpec::symbolic_lambda();
        let q = dyck_to_slh(&p, parity).unwrap();
        prop_assert_eq!(se_weight(&LambdaWeights::new(spec.clone(), parity), &q), motzkin::weight(&spec, &p));
        prop_assert_eq!(slh_to_motzkin(&q, parity).unwrap(), p);
    }

    #[test]
    fn slh_paths_round_trip_through_text_and_staircase(bits in prop::collection::vec(any::<bool>(), 0..14)) {
        let p = dyck_from_bits(&bits);
        let q = dyck_to_slh(&p, parity_of(&p)).unwrap();
        prop_assert_eq!(q.to_string().parse::<SePath>().unwrap(), q.clone());
        prop_assert_eq!(from_staircase(&to_staircase(&q)).unwrap(), q);
    }

    #[test]
    fn expansion_sum_is_motzkin_weight(codes in prop::collection::vec(0u8..3, 0..8)) {
        let p = motzkin_from_codes(&codes);
        let g = GammaSpec::symbolic();
        let total: Poly = expand_horizontals(&g, &p).into_iter().map(|(_, w)| w).sum();
        prop_assert_eq!(total, motzkin::weight(&g.induced_spec(), &p));
    }

    #[test]
    fn motzkin_text_round_trip(codes in prop::collection::vec(0u8..3, 0..12), start in 0usize..3) {
        let p = motzkin_from_codes(&codes);
        let shifted = MotzkinPath::new(start, p.steps().to_vec()).unwrap();
        prop_assert_eq!(shifted.to_string().parse::<MotzkinPath>().unwrap(), shifted);
    }

    #[test]
    fn transfer_power_matches_recurrence(n in 0usize..7, m in 0usize..4, k in 0usize..4) {
        let spec = RecurrenceSpec::symbolic();
        let t = transfer_power(&spec, n, n + m.max(k) + 1);
        prop_assert_eq!(t.entry(k, m).unwrap().clone(), lin_coeff(&spec, n, m, k));
    }

    #[test]
    fn qho_moments_are_symmetric_and_positive(m in 0usize..6, n in 0usize..9) {
        let v = quantum::qho_moment(QhoState::new(m), n, orthopath::orthopoly::Route::Integral).unwrap();
        if n % 2 == 1 {
            prop_assert_eq!(v, Rat::from_integer(0.into()));
        } else {
            prop_assert!(v > Rat::from_integer(0.into()));
            prop_assert_eq!(v, quantum::qho_moment(QhoState::new(m), n, orthopath::orthopoly::Route::Recurrence).unwrap());
        }
    }

    #[test]
    fn slh_coordinates_round_trip(t in 0u8..2, i in 0usize..12, j in 0usize..12) {
        prop_assume!(j <= i);
        let v = SlhVertex::new(t, i, j).unwrap();
        prop_assert_eq!(SlhPoint::from_coords(i, &v.y()).unwrap(), SlhPoint::Vertex(v));
    }
}

#[test]
fn printed_odd_h_identity_fails_at_the_first_cell() {
    // h^{w_o}_{0,0} is the empty path.
    let spec = RecurrenceSpec::symbolic_lambda();
    let wo = LambdaWeights::odd(spec.clone());
    let h = orthopath::lecturehall::h_by_enumeration(&wo, 0, 0, DEFAULT_ENUM_CAP).unwrap();
    assert!(h.is_one());
    assert!(lin_coeff(&spec, 1, 1, 1).is_zero());
    assert!(lin_coeff(&spec, 0, 1, 1).is_one());
}

#[test]
fn laguerre_path_sum_matches_closed_form() {
    let alpha = Poly::var(Indet::Alpha);
    let g = GammaSpec::laguerre(alpha.clone());
    let spec = RecurrenceSpec::laguerre_symbolic();
    for n in 0..=5 {
        for k in 0..=n {
            let sum = partial_weight_sum(&g.weights(), SlhPoint::Top(k), level0_bottom(n), DEFAULT_ENUM_CAP).unwrap();
            assert_eq!(sum, quantum::laguerre_mixed_closed(n, k, &alpha));
            assert_eq!(sum, mixed_moment(&spec, n, k));
        }
    }
}

#[test]
fn size_guard_trips() {
    let err = se_enumerate(SlhPoint::Top(0), level0_bottom(8), 10).unwrap_err();
    assert!(matches!(err, orthopath::Error::SizeGuard { .. }));
    let err = motzkin::enumerate(0, 0, 12, motzkin::EnumOptions::default().with_cap(5)).unwrap_err();
    assert!(matches!(err, orthopath::Error::SizeGuard { .. }));
}

#[test]
fn ladder_counts_below_the_diagonal() {
    // For m < n some balanced words annihilate |m>; the counts are printed, not asserted
    // beyond being at most C(2n,n).
    for n in 1..=5usize {
        let full = (1..=n).fold(1usize, |acc, i| acc * (n + i) / i);
        let counts: Vec<usize> = (0..n)
            .map(|m| quantum::ladder_expansion(m, 2 * n).iter().filter(|(_, v)| *v != Rat::from_integer(0.into())).count())
            .collect();
        println!("n={n}: C(2n,n)={full}, nonzero words for m=0..{}: {counts:?}", n - 1);
        assert!(counts.iter().all(|&c| c <= full));
    }
}
