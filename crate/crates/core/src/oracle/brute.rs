use alloc::vec;

use crate::discrete::TeamGame;
use crate::error::{Error, Result};

pub const BRUTE_FORCE_CAP: u128 = 1_000_000;

/// Minimum expected cost over every full rule profile of a game without a
/// maximizing team, summed in `f64` straight from the environment and the
/// kernel.
pub fn brute_force_optimum(game: &TeamGame) -> Result<f64> {
    if !game.maximizers().is_empty() {
        return Err(Error::InvalidStructure(
            "brute force needs a single minimizing team".into(),
        ));
    }
    let n = game.decision_makers();
    let counts: alloc::vec::Vec<usize> = (0..n).map(|dm| game.rules(dm).len()).collect();
    let total = counts
        .iter()
        .fold(1u128, |a, &c| a.saturating_mul(c as u128));
    if total > BRUTE_FORCE_CAP {
        return Err(Error::CapExceeded {
            context: "brute-force profiles",
            count: total,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let outcomes = game.env().outcomes();
    let mut profile = vec![0usize; n];
    let mut actions = vec![0usize; n];
    let mut best = f64::INFINITY;
    loop {
        let mut cost = 0.0;
        for (o, (_, p)) in outcomes.iter().enumerate() {
            let p = p.value();
            if p == 0.0 {
                continue;
            }
            for dm in 0..n {
                actions[dm] = game.rules(dm)[profile[dm]].act(game.symbol(dm, o));
            }
            cost += p * game.kernel().payoff(o, &actions)?.value();
        }
        best = best.min(cost);
        let mut dm = 0;
        loop {
            if dm == n {
                return Ok(best);
            }
            profile[dm] += 1;
            if profile[dm] < counts[dm] {
                break;
            }
            profile[dm] = 0;
            dm += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::{team_optimum_pure, PayoffKernel};
    use crate::env::{FiniteEnv, ObsEntry, ObservationMap};
    use crate::Scalar;
    use alloc::vec::Vec;

    fn toy(payoffs: Vec<i64>) -> TeamGame {
        let env = FiniteEnv::point_mass(vec![0]);
        let maps = ObservationMap::new(vec![ObsEntry::Null, ObsEntry::Null], 1).unwrap();
        let kernel = PayoffKernel::new(
            vec![2, 2],
            payoffs.into_iter().map(Scalar::integer).collect(),
        )
        .unwrap();
        TeamGame::new(env, &maps, vec![0, 1], vec![], kernel).unwrap()
    }

    #[test]
    fn four_profiles() {
        let g = toy(vec![5, -3, 7, 2]);
        assert_eq!(brute_force_optimum(&g).unwrap(), -3.0);
        assert_eq!(team_optimum_pure(&g).unwrap().1.value(), -3.0);
    }

    #[test]
    fn constant_kernel() {
        assert_eq!(brute_force_optimum(&toy(vec![4; 4])).unwrap(), 4.0);
    }
}
