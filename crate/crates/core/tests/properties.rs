use proptest::prelude::*;

use randteam_core::discrete::{
    minimax_joint, payoff_matrix, pure_saddle, solo_mixed_cost, team_optimum_pure,
    MixedTeamStrategy, PayoffKernel, PayoffMatrix, TeamGame,
};
use randteam_core::env::{FiniteEnv, ObsEntry, ObservationMap};
use randteam_core::linalg::Matrix;
use randteam_core::lqg_team::{
    assemble_quadratic, independent_randomness_report, problem123, solve_team, LqgTeamSpec,
    Randomness,
};
use randteam_core::oracle::brute_force_optimum;
use randteam_core::zero_sum::{solve_saddle, validate_game, ZsLqgSpec, ZsRandomness};
use randteam_core::{Scalar, Side};

/// Two minimizers over a two-coordinate environment with the given
/// alphabet sizes; DM `i` sees coordinate `i` and picks one of two actions.
fn finite_team(sizes: (u32, u32), weights: &[u32], payoffs: &[i32]) -> TeamGame {
    let total: u32 = weights.iter().sum();
    let mut outcomes = Vec::new();
    for a in 0..sizes.0 {
        for b in 0..sizes.1 {
            let w = weights[(a * sizes.1 + b) as usize];
            outcomes.push((vec![a, b], Scalar::ratio(w as i128, total as i128).unwrap()));
        }
    }
    let k = outcomes.len();
    let env = FiniteEnv::new(2, outcomes).unwrap();
    let maps = ObservationMap::new(
        vec![
            ObsEntry::CoordinateSelect(vec![0]),
            ObsEntry::CoordinateSelect(vec![1]),
        ],
        2,
    )
    .unwrap();
    let kernel = PayoffKernel::per_outcome(
        vec![2, 2],
        k,
        payoffs.iter().map(|&x| Scalar::integer(x as i64)).collect(),
    )
    .unwrap();
    TeamGame::new(env, &maps, vec![0, 1], vec![], kernel).unwrap()
}

fn team_instance(max_side: u32) -> impl Strategy<Value = TeamGame> {
    (1..=max_side, 1..=max_side).prop_flat_map(|sizes| {
        let k = (sizes.0 * sizes.1) as usize;
        (
            proptest::collection::vec(0u32..6, k).prop_map(|mut w| {
                w[0] += 1;
                w
            }),
            proptest::collection::vec(-20i32..=20, 4 * k),
        )
            .prop_map(move |(w, p)| finite_team(sizes, &w, &p))
    })
}

fn distribution(len: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0u32..10, len).prop_map(|mut w| {
        w[0] += 1;
        let s: u32 = w.iter().sum();
        w.into_iter().map(|x| x as f64 / s as f64).collect()
    })
}

fn truncate(p: &[f64], len: usize) -> Vec<f64> {
    let mut q = p[..len].to_vec();
    if q.iter().all(|&x| x == 0.0) {
        q[0] = 1.0;
    }
    let total: f64 = q.iter().sum();
    q.iter_mut().for_each(|x| *x /= total);
    q
}

fn pd_matrix(n: usize, floor: f64) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-1.5f64..1.5, n * n).prop_map(move |v| {
        let l = Matrix::from_vec(n, n, v).unwrap();
        let mut a = l.mul(&l.transpose()).unwrap();
        for i in 0..n {
            a[(i, i)] += floor;
        }
        a
    })
}

fn lqg_spec() -> impl Strategy<Value = LqgTeamSpec> {
    (2usize..=3).prop_flat_map(|n| {
        (
            pd_matrix(n, 0.5),
            pd_matrix(n, 0.2),
            proptest::collection::vec(-2.0f64..2.0, n * n),
        )
            .prop_map(move |(b, sigma, s)| {
                LqgTeamSpec::diagonal(b, Matrix::from_vec(n, n, s).unwrap(), sigma)
            })
    })
}

fn matrix(max_side: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1..=max_side, 1..=max_side).prop_flat_map(|(r, c)| {
        proptest::collection::vec(
            proptest::collection::vec((-10i32..=10).prop_map(|x| x as f64 / 2.0), c),
            r,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn private_and_common_mixing_never_beat_the_pure_optimum(
        g in team_instance(2),
        d0 in distribution(4),
        d1 in distribution(4),
        joint in distribution(16),
    ) {
        let m = payoff_matrix(&g).unwrap();
        let (profile, best) = team_optimum_pure(&g).unwrap();
        let best = best.value();
        let r0 = g.rules(0).len();
        let r1 = g.rules(1).len();
        let private = MixedTeamStrategy::product(Side::Minimizer, vec![truncate(&d0, r0), truncate(&d1, r1)]).unwrap();
        prop_assert!(solo_mixed_cost(&m, &private).unwrap() >= best - 1e-12);
        let n = m.nrows();
        let common = MixedTeamStrategy::joint(Side::Minimizer, truncate(&joint, n)).unwrap();
        prop_assert!(solo_mixed_cost(&m, &common).unwrap() >= best - 1e-12);
        let vertex = MixedTeamStrategy::point(Side::Minimizer, profile[0] + r0 * profile[1], n).unwrap();
        prop_assert_eq!(solo_mixed_cost(&m, &vertex).unwrap(), best);
        prop_assert!((brute_force_optimum(&g).unwrap() - best).abs() <= 1e-12);
    }

    #[test]
    fn independent_randomness_is_redundant(
        spec in lqg_spec(),
        variances in proptest::collection::vec(0.0f64..3.0, 3),
        gains in proptest::collection::vec(-2.0f64..2.0, 3),
        common in pd_matrix(2, 0.0),
        use_common in any::<bool>(),
    ) {
        let n = spec.decisions();
        let randomness = if use_common {
            Randomness::CommonIndep { cov: common }
        } else {
            Randomness::PrivateIndep { variances: variances[..n].to_vec() }
        };
        let spec = spec.with_randomness(randomness);
        let report = independent_randomness_report(&spec).unwrap();
        prop_assert!(report.c_star.iter().all(|c| c.abs() <= 1e-10));
        prop_assert!((report.j_total - report.j_base).abs() <= 1e-10 * (1.0 + report.j_base.abs()));
        prop_assert!(report.block_min_eigenvalue >= -1e-10);

        let q = assemble_quadratic(&spec).unwrap();
        let mut theta = solve_team(&spec.clone().with_randomness(Randomness::None)).unwrap().policy.theta;
        let k_obs = theta.len();
        theta.extend(gains.iter().cycle().take(q.dim() - k_obs));
        prop_assert!(q.value(&theta) >= report.j_base - 1e-9 * (1.0 + report.j_base.abs()));
    }

    #[test]
    fn independent_signal_leaves_the_saddle_unchanged(
        r11 in -0.6f64..0.6,
        r12 in -0.6f64..0.6,
        q12 in -0.6f64..0.6,
        sigma in pd_matrix(3, 0.3),
        variance in 0.1f64..4.0,
    ) {
        let base = ZsLqgSpec::new(r11, r12, q12, sigma);
        prop_assume!(validate_game(&base).is_valid());
        let plain = solve_saddle(&base).unwrap();
        let noisy = solve_saddle(&base.clone().with_randomness(ZsRandomness::IndependentCommon { variance })).unwrap();
        prop_assert!(noisy.betas().iter().all(|b| b.abs() <= 1e-10));
        prop_assert!((noisy.value - plain.value).abs() <= 1e-9 * (1.0 + plain.value.abs()));
    }

    #[test]
    fn mixing_over_a_pure_saddle_changes_nothing(rows in matrix(6)) {
        let m = PayoffMatrix::from_rows(&rows).unwrap();
        if let Some(s) = pure_saddle(&m) {
            prop_assert!((minimax_joint(&m).unwrap().value - s.value).abs() <= 1e-9);
        }
    }

    #[test]
    fn coarsening_never_helps(g in team_instance(3), dm in 0usize..2, a in 0usize..3, b in 0usize..3) {
        let k = g.alphabet_size(dm);
        prop_assume!(k >= 2);
        let coarse = g.coarsen(dm, a % k, b % k).unwrap();
        prop_assert!(brute_force_optimum(&coarse).unwrap() >= brute_force_optimum(&g).unwrap() - 1e-12);
    }

    #[test]
    fn more_strategies_favor_their_owner(rows in matrix(5), extra in proptest::collection::vec(-5.0f64..5.0, 6)) {
        let m = PayoffMatrix::from_rows(&rows).unwrap();
        let v = minimax_joint(&m).unwrap().value;
        let nc = rows[0].len();
        let mut more_rows = rows.clone();
        more_rows.push(extra.iter().cycle().take(nc).cloned().collect());
        let grown = PayoffMatrix::from_rows(&more_rows).unwrap();
        prop_assert!(minimax_joint(&grown).unwrap().value <= v + 1e-9);
        let more_cols: Vec<Vec<f64>> = rows.iter().zip(extra.iter().cycle()).map(|(r, &x)| {
            let mut r = r.clone();
            r.push(x);
            r
        }).collect();
        let grown = PayoffMatrix::from_rows(&more_cols).unwrap();
        prop_assert!(minimax_joint(&grown).unwrap().value >= v - 1e-9);
    }

    #[test]
    fn swap_invariant_mixing_bound(
        b in pd_matrix(2, 0.3),
        variance in 0.2f64..3.0,
        corr in -0.9f64..0.9,
        s in proptest::collection::vec(-2.0f64..2.0, 2),
    ) {
        let sigma = Matrix::from_rows(&[[variance, corr * variance], [corr * variance, variance]]).unwrap();
        let s = Matrix::from_rows(&[[s[0], s[0]], [s[1], s[1]]]).unwrap();
        let base = LqgTeamSpec::diagonal(b, s, sigma);
        for k in 1..=9 {
            let p = problem123(&base, k as f64 / 10.0).unwrap();
            prop_assert!(p.symmetric);
            prop_assert!(p.bound_holds, "{:?}", p);
            prop_assert!((p.j1 - p.j2).abs() <= 1e-9);
        }
    }
}
