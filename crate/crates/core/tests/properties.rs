mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nonlocal_core::classical::{finish_report, merge, search_range, search_space_size};
use nonlocal_core::extraction::ExtractionRoute;
use nonlocal_core::povm::RefinedLabel;
use nonlocal_core::sampling::{random_winning_bundle, StrategyShape};
use nonlocal_core::{
    classical_value, closed_form_probability, extract_classical, fold_promise,
    has_classical_winning_strategy, local_support_feasible, vanishing_characterization, Game,
    PromiseGame, Rank1Element, SupportTable, VanishingKind,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_game() -> impl Strategy<Value = Game> {
    (
        prop::collection::vec(1usize..=3, 2),
        prop::collection::vec(1usize..=3, 2),
    )
        .prop_flat_map(|(inputs, outputs)| {
            let n = inputs.iter().product::<usize>() * outputs.iter().product::<usize>();
            prop::collection::vec(any::<bool>(), n)
                .prop_map(move |t| Game::from_table(&inputs, &outputs, t).unwrap())
        })
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classical_value_is_relabeling_invariant(g in small_game(), seed in any::<u64>()) {
        let perm_in: Vec<Vec<usize>> = g.input_sizes().iter().enumerate()
            .map(|(p, &n)| shuffled(n, seed ^ p as u64)).collect();
        let perm_out: Vec<Vec<usize>> = g.output_sizes().iter().enumerate()
            .map(|(p, &n)| shuffled(n, seed.rotate_left(17) ^ p as u64)).collect();
        let relabeled = Game::from_fn(g.input_sizes(), g.output_sizes(), |x, a| {
            let x2: Vec<usize> = x.iter().enumerate().map(|(p, &v)| perm_in[p][v]).collect();
            let a2: Vec<usize> = a.iter().enumerate().map(|(p, &v)| perm_out[p][v]).collect();
            g.is_winning(&x2, &a2).unwrap()
        }).unwrap();
        prop_assert_eq!(classical_value(&g).unwrap().best, classical_value(&relabeled).unwrap().best);
    }

    #[test]
    fn best_response_search_matches_brute_force(g in small_game()) {
        let report = classical_value(&g).unwrap();
        prop_assert_eq!(report.strategies_searched, search_space_size(&g));
        prop_assert_eq!(report.witness.wins(&g).unwrap(), report.best_wins);
        // Full lexicographic enumeration, first optimum kept.
        let (ni, no) = (g.input_sizes().to_vec(), g.output_sizes().to_vec());
        let mut best: Option<(u64, Vec<Vec<usize>>)> = None;
        let per = |n_in: usize, n_out: usize| (n_out as u64).pow(n_in as u32);
        for a in 0..per(ni[0], no[0]) {
            for b in 0..per(ni[1], no[1]) {
                let table = |mut k: u64, n_in: usize, n_out: usize| {
                    let mut t = vec![0; n_in];
                    for slot in t.iter_mut().rev() {
                        *slot = (k % n_out as u64) as usize;
                        k /= n_out as u64;
                    }
                    t
                };
                let tables = vec![table(a, ni[0], no[0]), table(b, ni[1], no[1])];
                let s = nonlocal_core::DeterministicStrategy::new(tables.clone());
                let w = s.wins(&g).unwrap();
                if best.as_ref().is_none_or(|(bw, _)| w > *bw) {
                    best = Some((w, tables));
                }
            }
        }
        let (bw, bt) = best.unwrap();
        prop_assert_eq!(report.best_wins, bw);
        prop_assert_eq!(report.witness.tables(), &bt[..]);
    }

    #[test]
    fn split_search_is_independent_of_cut(g in small_game(), cut in 0.0f64..1.0) {
        let n = nonlocal_core::classical::leading_space_size(&g);
        let k = ((n as f64) * cut) as u64;
        let parts = [search_range(&g, 0..k), search_range(&g, k..n)];
        let merged = parts.into_iter().flatten().reduce(merge).unwrap();
        prop_assert_eq!(finish_report(&g, merged), classical_value(&g).unwrap());
    }

    #[test]
    fn fold_promise_keeps_promise_rows(g in small_game(), keep in prop::collection::vec(any::<bool>(), 9)) {
        let promise: Vec<bool> = (0..g.joint_input_count()).map(|i| keep[i % keep.len()]).collect();
        prop_assume!(promise.iter().any(|&p| p));
        let pg = PromiseGame::new(g.clone(), promise.clone()).unwrap();
        let folded = fold_promise(&pg);
        for (i, &p) in promise.iter().enumerate() {
            if p {
                prop_assert_eq!(folded.row(i), g.row(i));
            } else {
                prop_assert!(folded.row(i).iter().all(|&w| w));
            }
        }
    }

    #[test]
    fn feasible_support_is_classically_winnable(
        inputs in prop::collection::vec(1usize..=2, 2),
        outputs in prop::collection::vec(1usize..=2, 2),
        bits in prop::collection::vec(any::<bool>(), 16),
    ) {
        let n_out: usize = outputs.iter().product();
        let n_in: usize = inputs.iter().product();
        let mut possible: Vec<bool> = (0..n_in * n_out).map(|k| bits[k % bits.len()]).collect();
        for i in 0..n_in {
            if !possible[i * n_out..(i + 1) * n_out].iter().any(|&p| p) {
                possible[i * n_out] = true;
            }
        }
        let t = SupportTable::new(&inputs, &outputs, possible).unwrap();
        if local_support_feasible(&t).unwrap().is_feasible() {
            prop_assert!(has_classical_winning_strategy(&t.to_game()).unwrap());
        }
    }
}

fn el(gamma: f64, theta: f64, phi: f64) -> Rank1Element {
    Rank1Element::new(gamma, theta, phi, RefinedLabel::new(0, 0)).unwrap()
}

#[test]
fn vanishing_characterization_matches_probability() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (mut vanishing, mut generic) = (0, 0);
    for k in 0..3000 {
        let alpha: f64 = rng.gen_range(0.2..0.98);
        let beta = (1.0 - alpha * alpha).sqrt();
        let (ga, gb) = (rng.gen_range(0.05..=1.0), rng.gen_range(0.05..=1.0));
        let (ea, eb) = match k % 3 {
            0 => (
                el(ga, rng.gen_range(0.0..=FRAC_PI_2), rng.gen_range(0.0..TAU)),
                el(gb, rng.gen_range(0.0..=FRAC_PI_2), rng.gen_range(0.0..TAU)),
            ),
            1 => {
                // North pole against south pole, in either order.
                let (n, s) = (el(ga, 0.0, 0.0), el(gb, FRAC_PI_2, PI));
                if rng.gen_bool(0.5) {
                    (n, s)
                } else {
                    (s, n)
                }
            }
            _ => {
                // α cosθ cosθ' = β sinθ sinθ' and φ + φ' = π or 3π.
                let theta: f64 = rng.gen_range(0.05..FRAC_PI_2 - 0.05);
                let theta_b = (alpha / (beta * theta.tan())).atan();
                let phi: f64 = rng.gen_range(0.0..TAU);
                let phi_b = if phi <= PI { PI - phi } else { 3.0 * PI - phi };
                (el(ga, theta, phi), el(gb, theta_b, phi_b))
            }
        };
        let w = vanishing_characterization(alpha, beta, &ea, &eb);
        let p = closed_form_probability(alpha, beta, &ea, &eb);
        assert_eq!(w.vanishes(), p <= 1e-12, "draw {k}: {w:?}, p = {p:e}");
        if w.vanishes() {
            vanishing += 1;
        } else {
            generic += 1;
        }
    }
    assert!(vanishing >= 1000 && generic >= 900);
}

#[test]
fn extraction_picks_avoid_both_exclusions() {
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(10_000 + seed);
        let dims = if seed % 2 == 0 { (2, 2) } else { (2, 3) };
        let shape = StrategyShape::random(&mut rng, dims);
        let b = random_winning_bundle(&mut rng, shape);
        let e = extract_classical(&b.strategy, &b.game).unwrap();
        assert_eq!(e.route, ExtractionRoute::Hemisphere);
        assert!(
            e.strategy.wins_every_instance(&b.game).unwrap(),
            "seed {seed}"
        );
        assert!(
            has_classical_winning_strategy(&b.game).unwrap(),
            "seed {seed}"
        );
        for pa in &e.alice_picks {
            for pb in &e.bob_picks {
                assert!(pa.element.theta < FRAC_PI_2 && pb.element.theta < FRAC_PI_2);
                let west_phi = if pb.element.phi == 0.0 {
                    TAU
                } else {
                    pb.element.phi
                };
                let sum = pa.element.phi + west_phi;
                assert!(sum > PI && sum < 3.0 * PI, "seed {seed}: φ sum {sum}");
            }
        }
        assert!(e
            .pair_witnesses()
            .iter()
            .all(|w| w.kind == VanishingKind::NonVanishing));
        assert!(e.min_pair_probability().unwrap() > 1e-12);
    }
}

#[test]
fn two_by_five_strategies_extract() {
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(20_000 + seed);
        let shape = StrategyShape::random(&mut rng, (2, 5));
        let b = random_winning_bundle(&mut rng, shape);
        let e = extract_classical(&b.strategy, &b.game).unwrap();
        assert!(
            e.strategy.wins_every_instance(&b.game).unwrap(),
            "seed {seed}"
        );
    }
}
