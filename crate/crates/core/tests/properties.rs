use multiseg::combinatorics::{
    balanced_peel, hom_pi_lamina, is_sigma_reduced, matching_condition, sigma_decompose, sigma_decompose_ordered,
    star_balanced_right, BasicRep, MatchingGraph,
};
use multiseg::harness::{random_balanced, random_ladder, random_regular};
use multiseg::linalg::{Field, Matrix};
use multiseg::multiseg::{
    balanced_witness, balanced_witness_naive, index_sets, is_balanced, is_ladder, quiver_dims, structure_tests,
    Multisegment, Segment,
};
use multiseg::pp::{hom_ext_at, sample_generic, Engine};
use multiseg::quiver::{hom_ext_by_solve, multisegment_from_ranks, normal_form, rank_profile, Degree, GradedMap};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn multisegment_on(n: usize, max_segments: usize) -> impl Strategy<Value = Multisegment> {
    prop::collection::vec((1..=n, 0..n), 0..=max_segments).prop_map(move |v| {
        Multisegment::new(n, v.into_iter().map(|(a, l)| Segment::of(a, (a + l).min(n)))).unwrap()
    })
}

fn multisegment(max_n: usize, max_segments: usize) -> impl Strategy<Value = Multisegment> {
    (1..=max_n).prop_flat_map(move |n| multisegment_on(n, max_segments))
}

fn pair(max_n: usize, max_segments: usize) -> impl Strategy<Value = (Multisegment, Multisegment)> {
    (1..=max_n).prop_flat_map(move |n| (multisegment_on(n, max_segments), multisegment_on(n, max_segments)))
}

fn seeded<T: std::fmt::Debug>(f: impl Fn(&mut ChaCha8Rng) -> T) -> impl Strategy<Value = T> {
    any::<u64>().prop_map(move |s| f(&mut ChaCha8Rng::seed_from_u64(s)))
}

fn engine() -> Engine {
    Engine::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_order_has_no_forward_precedence(m in multisegment(8, 8)) {
        let s = m.segments();
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                prop_assert!(!s[i].precedes(s[j]));
            }
        }
    }

    #[test]
    fn dual_is_an_involution_reversing_grdim(m in multisegment(9, 8)) {
        prop_assert_eq!(m.dual().dual(), m.clone());
        prop_assert_eq!(m.dual().grdim(), m.grdim().reversed());
    }

    #[test]
    fn text_round_trip(m in multisegment(9, 8)) {
        prop_assert_eq!(Multisegment::parse(&m.to_string(), m.n()).unwrap(), m);
    }

    #[test]
    fn quiver_dims_by_both_counts((m, n) in pair(8, 5)) {
        let (hom, ext) = quiver_dims(&m, &n);
        prop_assert_eq!(hom, index_sets(&m, &n).v.len());
        let linked = m.segments().iter()
            .flat_map(|a| n.segments().iter().map(move |b| a.precedes(*b)))
            .filter(|&p| p)
            .count();
        prop_assert_eq!(ext, linked);
    }

    #[test]
    fn quiver_dims_match_solves((m, n) in pair(5, 3)) {
        let f = Field::default();
        prop_assert_eq!(quiver_dims(&m, &n), hom_ext_by_solve(&normal_form(&m, f), &normal_form(&n, f)));
    }

    #[test]
    fn orbit_round_trip(m in multisegment(8, 8)) {
        let back = multisegment_from_ranks(&rank_profile(&normal_form(&m, Field::default()))).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn generic_raising_map_lies_in_the_open_orbit(m in multisegment(6, 6), seed in any::<u64>()) {
        let s = m.segments();
        let unlinked = s.iter().all(|a| s.iter().all(|b| !a.precedes(*b)));
        prop_assume!(unlinked);
        let f = Field::default();
        let d = m.grdim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let blocks = (0..m.n().saturating_sub(1))
            .map(|i| Matrix::random(f, d.at(i + 2), d.at(i + 1), &mut rng))
            .collect();
        let t = GradedMap::from_blocks(d, Degree::Raise, blocks);
        prop_assert_eq!(multisegment_from_ranks(&rank_profile(&t)).unwrap(), m);
    }

    #[test]
    fn short_ladders_are_balanced(m in seeded(|r| random_ladder(r, 8, 3))) {
        prop_assert!(is_ladder(&m));
        prop_assert_eq!(is_balanced(&m).unwrap(), true);
    }

    #[test]
    fn balanced_search_agrees_with_subset_scan(m in seeded(|r| random_regular(r, 8, 8))) {
        let fast = balanced_witness(&m).unwrap();
        let naive = balanced_witness_naive(&m);
        prop_assert_eq!(fast.is_none(), naive.is_none());
        if let Some(w) = fast {
            prop_assert!(w.is_valid());
        }
    }

    #[test]
    fn single_segment_flags(n in 1usize..9, a in 1usize..9, l in 0usize..8) {
        prop_assume!(a <= n);
        let m = Multisegment::single(n, Segment::of(a, (a + l).min(n)));
        let flags = structure_tests(&m);
        prop_assert!(flags.regular && flags.ladder && flags.balanced == Some(true) && !flags.split);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn star_is_additive_with_units((m, n) in pair(6, 4)) {
        let e = engine();
        let s = e.star(&m, &n).unwrap().value;
        prop_assert_eq!(s.grdim(), &m.grdim() + &n.grdim());
        let zero = Multisegment::empty(m.n());
        prop_assert_eq!(e.star(&zero, &m).unwrap().value, m.clone());
        prop_assert_eq!(e.star(&m, &zero).unwrap().value, m);
    }

    #[test]
    fn star_respects_duality((m, n) in pair(6, 4)) {
        let e = engine();
        prop_assert_eq!(e.star(&m, &n).unwrap().value.dual(), e.star(&n.dual(), &m.dual()).unwrap().value);
    }

    #[test]
    fn strong_commutation_splits_both_ways((m, n) in pair(6, 3)) {
        let e = engine();
        if e.strongly_commute(&m, &n).unwrap().value {
            let sum = m.sum(&n);
            prop_assert_eq!(e.star(&m, &n).unwrap().value, sum.clone());
            prop_assert_eq!(e.star(&n, &m).unwrap().value, sum);
        }
    }

    #[test]
    fn unlinked_shift_forces_hom_vanishing((m, n) in pair(6, 4)) {
        let blocked = m.segments().iter().all(|d| n.segments().iter().all(|g| !d.precedes_shifted(*g)));
        prop_assume!(blocked);
        prop_assert_eq!(engine().hom_pi(&n, &m).unwrap().value, 0);
    }

    #[test]
    fn generic_values_are_minimal((m, n) in pair(5, 3), seed in any::<u64>()) {
        let f = Field::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample_generic(&m, f, &mut rng);
        let y = sample_generic(&n, f, &mut rng);
        let (hom_at, ext_at) = hom_ext_at(&x.module, &y.module);
        let e = engine();
        prop_assert!(hom_at >= e.hom_pi(&m, &n).unwrap().value);
        prop_assert!(ext_at >= e.ext1_pi(&m, &n).unwrap().value);
        let one = e.with_trials(1);
        prop_assert!(e.hom_pi(&m, &n).unwrap().value <= one.hom_pi(&m, &n).unwrap().value);
        prop_assert!(e.ext1_pi(&m, &n).unwrap().value <= one.ext1_pi(&m, &n).unwrap().value);
    }

    #[test]
    fn t_matrix_corank_is_hom((m, n) in pair(6, 4)) {
        let e = engine();
        prop_assert_eq!(e.hom_pi_via_t_matrix(&m, &n).unwrap().value, e.hom_pi(&m, &n).unwrap().value);
    }

    #[test]
    fn matching_bounds_t_matrix_rank((m, n) in pair(6, 4)) {
        let hom = engine().hom_pi(&m, &n).unwrap().value;
        let v = index_sets(&m, &n).v.len();
        let rank = v - hom;
        let matched = MatchingGraph::new(&m, &n).max_matching();
        prop_assert!(matched >= rank);
        if is_ladder(&m) || is_ladder(&n) {
            prop_assert_eq!(matched, rank);
            prop_assert_eq!(hom_pi_lamina(&m, &n).unwrap(), hom);
        }
    }

    #[test]
    fn matching_criterion_with_a_ladder(lad in seeded(|r| random_ladder(r, 6, 3)), seed in any::<u64>(), left in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let other = multiseg::harness::random_multisegment(&mut rng, lad.n(), 3);
        let (m, n) = if left { (lad, other) } else { (other, lad) };
        let split = engine().star(&m, &n).unwrap().value == m.sum(&n);
        prop_assert_eq!(matching_condition(&n, &m).unwrap().holds, split);
    }

    #[test]
    fn mw_is_an_involution(m in multisegment(8, 6)) {
        let e = engine();
        let t = e.mw(&m).unwrap().value;
        prop_assert_eq!(t.grdim(), m.grdim());
        prop_assert_eq!(e.mw(&t).unwrap().value, m);
    }

    #[test]
    fn peel_recomposes(m in seeded(|r| random_balanced(r, 7, 5))) {
        prop_assume!(!m.is_empty());
        let e = engine();
        let p = balanced_peel(&m).unwrap();
        prop_assert_eq!(e.star(&p.sigma.q_parameter(m.n()), &p.rest).unwrap().value, m.clone());
        prop_assert!(is_balanced(&p.rest).unwrap());
        prop_assert!(is_sigma_reduced(&e, &p.rest, p.sigma).unwrap());
    }

    #[test]
    fn sigma_decomposition_recomposes(m in multisegment(6, 4), a in 1usize..7, l in 0usize..6, z in any::<bool>()) {
        let n = m.n();
        prop_assume!(a <= n);
        let seg = Segment::of(a, (a + l).min(n));
        let sigma = if z { BasicRep::z(seg) } else { BasicRep::l(seg) };
        let e = engine();
        let d = sigma_decompose(&e, &m, sigma).unwrap();
        prop_assert!(d.pieces.iter().all(|p| d.subcomponents.contains(p)));
        prop_assert!(is_sigma_reduced(&e, &d.reduced_part, sigma).unwrap());
        prop_assert_eq!(e.star(&d.saturated_part, &d.reduced_part).unwrap().value, m.clone());
        let other = sigma_decompose_ordered(&e, &m, sigma, false).unwrap();
        prop_assert_eq!(other.saturated_part, d.saturated_part);
        prop_assert_eq!(other.reduced_part, d.reduced_part);
    }

    #[test]
    fn right_balanced_recipe(m in seeded(|r| random_balanced(r, 6, 4)), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = multiseg::harness::random_multisegment(&mut rng, m.n(), 3);
        let e = engine();
        prop_assert_eq!(star_balanced_right(&e, &n, &m).unwrap(), e.star(&n, &m).unwrap().value);
    }
}

#[test]
fn hom_vanishing_on_all_segment_pairs() {
    let e = engine();
    for n in 1..=5 {
        for a in multiseg::harness::all_segments(n) {
            for b in multiseg::harness::all_segments(n) {
                let (m, x) = (Multisegment::single(n, a), Multisegment::single(n, b));
                if !a.precedes_shifted(b) {
                    assert_eq!(e.hom_pi(&x, &m).unwrap().value, 0, "{b} -> {a} on {n} sites");
                }
            }
        }
    }
}
