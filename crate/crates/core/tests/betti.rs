mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_permutations, paper_corpus};
use cwlin::resolution::linearity::first_syzygy_degrees;
use cwlin::{
    counterexample_graph, cover_ideal, find_linear_quotient_order, has_linear_resolution,
    is_componentwise_linear, knt_closed_form, koszul_betti, taylor_strand_betti, CoverMethod,
    FieldChoice, Limits, Monomial, MonomialIdeal, OrderStrategy,
};

const GF2: FieldChoice = FieldChoice::PrimeField(2);

fn random_ideal(rng: &mut ChaCha8Rng) -> MonomialIdeal {
    let nvars = rng.gen_range(1..=4);
    let count = rng.gen_range(1..=6);
    let gens = (0..count).map(|_| Monomial::new((0..nvars).map(|_| rng.gen_range(0..=3)).collect::<Vec<u32>>()));
    MonomialIdeal::minimalize(nvars, gens).unwrap()
}

fn seeded_ideals() -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    (0..50).map(|_| random_ideal(&mut rng)).collect()
}

fn i4(t: u32) -> MonomialIdeal {
    cover_ideal(&counterexample_graph(), t, CoverMethod::TCovers).unwrap()
}

#[test]
fn engines_agree_on_seeded_random_ideals() {
    for (k, ideal) in seeded_ideals().iter().enumerate() {
        for field in [FieldChoice::Rationals, GF2] {
            let taylor = taylor_strand_betti(ideal, field).unwrap();
            let koszul = koszul_betti(ideal, field).unwrap();
            assert_eq!(taylor, koszul, "ideal #{k}: {ideal}");
        }
    }
}

#[test]
fn engines_agree_on_paper_corpus() {
    let mut compared = 0;
    for (label, ideal) in paper_corpus() {
        if ideal.len() > 14 {
            continue;
        }
        let taylor = taylor_strand_betti(&ideal, FieldChoice::Rationals).unwrap();
        assert_eq!(taylor, koszul_betti(&ideal, FieldChoice::Rationals).unwrap(), "{label}");
        compared += 1;
    }
    assert!(compared >= 20);
}

#[test]
fn rationals_and_gf2_agree_on_paper_corpus() {
    for (label, ideal) in paper_corpus() {
        let q = koszul_betti(&ideal, FieldChoice::Rationals).unwrap();
        let p = koszul_betti(&ideal, GF2).unwrap();
        assert_eq!(q.multigraded(), p.multigraded(), "{label}");
    }
}

#[test]
fn betti_tables_are_permutation_equivariant() {
    for ideal in seeded_ideals().iter().filter(|i| i.nvars() >= 3).take(12) {
        let table = koszul_betti(ideal, FieldChoice::Rationals).unwrap();
        for perm in all_permutations(ideal.nvars()) {
            let moved = koszul_betti(&ideal.permute(&perm), FieldChoice::Rationals).unwrap();
            assert_eq!(moved, table.permute(&perm), "{ideal} under {perm:?}");
        }
    }
}

#[test]
fn first_syzygies_sit_at_pair_lcms() {
    for (label, ideal) in paper_corpus().into_iter().chain(seeded_ideals().into_iter().map(|i| (i.to_string(), i))) {
        let table = koszul_betti(&ideal, FieldChoice::Rationals).unwrap();
        let gens = ideal.generators();
        let mut beta1 = 0;
        for ((i, a), r) in table.multigraded() {
            if *i == 1 {
                beta1 += r;
                let is_pair_lcm = gens
                    .iter()
                    .enumerate()
                    .any(|(k, f)| gens[k + 1..].iter().any(|g| f.lcm(g) == *a));
                assert!(is_pair_lcm, "{label}: beta_1 at {a}");
            }
        }
        let pairs = first_syzygy_degrees(&ideal);
        assert!(beta1 <= pairs.len(), "{label}");
        if let Some(&lowest) = pairs.first() {
            let j_min = table.coarse().keys().filter(|(i, _)| *i == 1).map(|&(_, j)| j).min();
            assert!(j_min.is_none_or(|j| j >= lowest), "{label}");
        }
    }
}

#[test]
fn first_syzygy_bound_is_attained_on_failing_components() {
    for t in [2, 3] {
        let c = i4(t).component(2 * t).unwrap();
        assert_eq!(c.len(), 2);
        let table = taylor_strand_betti(&c, FieldChoice::Rationals).unwrap();
        let beta1: Vec<_> = table.coarse().into_iter().filter(|((i, _), _)| *i == 1).collect();
        assert_eq!(beta1, vec![((1, 2 * t + 2), 1)]);
        assert_eq!(first_syzygy_degrees(&c), vec![2 * t + 2]);
    }
}

#[test]
fn componentwise_linearity_verdicts() {
    for n in 3..=4 {
        for t in 1..=3 {
            let r = is_componentwise_linear(&knt_closed_form(n, t).unwrap(), FieldChoice::Rationals).unwrap();
            assert!(r.overall, "K_{n}^({t})");
        }
    }
    assert!(is_componentwise_linear(&i4(1), FieldChoice::Rationals).unwrap().overall);
    for t in [2, 3] {
        let r = is_componentwise_linear(&i4(t), FieldChoice::Rationals).unwrap();
        assert!(!r.overall);
        assert_eq!(r.failing_degree(), Some(2 * t));
        let table = koszul_betti(&i4(t).component(2 * t).unwrap(), FieldChoice::Rationals).unwrap();
        assert_eq!(table.coarse_get(1, 2 * t + 1), 0);
        assert!(table.coarse().iter().any(|(&(i, j), _)| i == 1 && j >= 2 * t + 2));
    }
}

#[test]
fn certificates_are_sound() {
    let limits = Limits::default();
    let mut certified = 0;
    for (label, ideal) in paper_corpus() {
        if ideal.equigenerated_degree().is_none() {
            continue;
        }
        for strategy in [OrderStrategy::Deglex, OrderStrategy::Backtracking] {
            if strategy == OrderStrategy::Backtracking && ideal.len() > limits.backtracking_generators {
                continue;
            }
            if find_linear_quotient_order(&ideal, strategy, &limits).unwrap().is_some() {
                certified += 1;
                assert!(has_linear_resolution(&ideal, FieldChoice::Rationals).unwrap().is_linear(), "{label}");
            }
        }
    }
    assert!(certified >= 10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generator_histogram_is_beta_zero(seed in any::<u64>()) {
        let ideal = random_ideal(&mut ChaCha8Rng::seed_from_u64(seed));
        let table = koszul_betti(&ideal, FieldChoice::Rationals).unwrap();
        let row0: Vec<(u32, usize)> = table
            .coarse()
            .into_iter()
            .filter(|((i, _), _)| *i == 0)
            .map(|((_, j), r)| (j, r))
            .collect();
        prop_assert_eq!(row0, ideal.degree_histogram());
    }

    #[test]
    fn random_engines_agree_mod_three(seed in any::<u64>()) {
        let ideal = random_ideal(&mut ChaCha8Rng::seed_from_u64(seed));
        let field = FieldChoice::PrimeField(3);
        prop_assert_eq!(taylor_strand_betti(&ideal, field).unwrap(), koszul_betti(&ideal, field).unwrap());
    }
}
