use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::matrix::PayoffMatrix;
use super::rules::{enumerate_rules, PureRule, DEFAULT_CAP};
use crate::env::{observe, FiniteEnv, ObservationMap, Signal};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Payoff as a function of the joint action (and optionally the outcome).
///
/// Joint actions are flattened mixed-radix with decision maker 0 most
/// significant.
#[derive(Clone, Debug, PartialEq)]
pub struct PayoffKernel {
    action_counts: Vec<usize>,
    per_outcome: Option<usize>,
    payoffs: Vec<Scalar>,
}

impl PayoffKernel {
    /// Outcome-independent kernel.
    pub fn new(action_counts: Vec<usize>, payoffs: Vec<Scalar>) -> Result<Self> {
        let profiles = Self::profile_count(&action_counts)?;
        Self::check(profiles, &payoffs)?;
        Ok(PayoffKernel {
            action_counts,
            per_outcome: None,
            payoffs,
        })
    }

    /// One block of `∏ action_counts` payoffs per environment outcome, in the
    /// order the environment lists them.
    pub fn per_outcome(
        action_counts: Vec<usize>,
        outcomes: usize,
        payoffs: Vec<Scalar>,
    ) -> Result<Self> {
        let profiles = Self::profile_count(&action_counts)?;
        Self::check(profiles * outcomes, &payoffs)?;
        Ok(PayoffKernel {
            action_counts,
            per_outcome: Some(outcomes),
            payoffs,
        })
    }

    fn profile_count(action_counts: &[usize]) -> Result<usize> {
        if action_counts.contains(&0) {
            return Err(Error::InvalidStructure(
                "a decision maker has no actions".into(),
            ));
        }
        action_counts
            .iter()
            .try_fold(1usize, |acc, &c| acc.checked_mul(c))
            .ok_or(Error::CapExceeded {
                context: "joint actions",
                count: u128::MAX,
                cap: usize::MAX as u128,
            })
    }

    fn check(expected: usize, payoffs: &[Scalar]) -> Result<()> {
        if payoffs.len() != expected {
            return Err(Error::DimensionMismatch {
                context: "payoff table",
                expected,
                found: payoffs.len(),
            });
        }
        if payoffs.iter().any(|p| !p.value().is_finite()) {
            return Err(Error::NonFinite {
                context: "payoff table",
            });
        }
        Ok(())
    }

    pub fn action_counts(&self) -> &[usize] {
        &self.action_counts
    }

    pub fn decision_makers(&self) -> usize {
        self.action_counts.len()
    }

    pub fn payoff(&self, outcome: usize, actions: &[usize]) -> Result<Scalar> {
        let mut idx = 0usize;
        if actions.len() != self.action_counts.len() {
            return Err(Error::DimensionMismatch {
                context: "joint action",
                expected: self.action_counts.len(),
                found: actions.len(),
            });
        }
        for (&a, &c) in actions.iter().zip(&self.action_counts) {
            if a >= c {
                return Err(Error::IndexOutOfBounds {
                    context: "action",
                    index: a,
                    len: c,
                });
            }
            idx = idx * c + a;
        }
        if let Some(n) = self.per_outcome {
            if outcome >= n {
                return Err(Error::IndexOutOfBounds {
                    context: "kernel outcome",
                    index: outcome,
                    len: n,
                });
            }
            idx += outcome * (self.payoffs.len() / n);
        }
        Ok(self.payoffs[idx])
    }
}

/// A finite game between a minimizing and a maximizing team (either may be
/// empty), each decision maker choosing a pure rule from its list.
#[derive(Clone, Debug)]
pub struct TeamGame {
    env: FiniteEnv,
    minimizers: Vec<usize>,
    maximizers: Vec<usize>,
    kernel: PayoffKernel,
    /// `symbols[dm][outcome]`: index of the observation in the DM's alphabet.
    symbols: Vec<Vec<usize>>,
    alphabet_sizes: Vec<usize>,
    rules: Vec<Vec<PureRule>>,
    cap: usize,
}

/// Rule index per decision maker.
pub type RuleProfile = Vec<usize>;

impl TeamGame {
    /// Builds the game with every decision maker's full lexicographic rule
    /// set. Observation alphabets range over all listed outcomes.
    pub fn new(
        env: FiniteEnv,
        maps: &ObservationMap,
        minimizers: Vec<usize>,
        maximizers: Vec<usize>,
        kernel: PayoffKernel,
    ) -> Result<Self> {
        let n = kernel.decision_makers();
        if maps.len() != n {
            return Err(Error::DimensionMismatch {
                context: "observation map entries",
                expected: n,
                found: maps.len(),
            });
        }
        let mut seen = vec![false; n];
        for &dm in minimizers.iter().chain(&maximizers) {
            if dm >= n {
                return Err(Error::IndexOutOfBounds {
                    context: "team member",
                    index: dm,
                    len: n,
                });
            }
            if seen[dm] {
                return Err(Error::InvalidStructure(format!(
                    "decision maker {dm} is listed twice"
                )));
            }
            seen[dm] = true;
        }
        if let Some(dm) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidStructure(format!(
                "decision maker {dm} belongs to no team"
            )));
        }
        if let Some(k) = kernel.per_outcome {
            if k != env.outcomes().len() {
                return Err(Error::DimensionMismatch {
                    context: "kernel outcomes",
                    expected: env.outcomes().len(),
                    found: k,
                });
            }
        }
        let mut symbols = Vec::with_capacity(n);
        let mut alphabet_sizes = Vec::with_capacity(n);
        for dm in 0..n {
            let signals: Vec<Signal> = env
                .outcomes()
                .iter()
                .map(|(o, _)| observe(o, maps, dm))
                .collect::<Result<_>>()?;
            let mut alphabet = signals.clone();
            alphabet.sort();
            alphabet.dedup();
            symbols.push(
                signals
                    .iter()
                    .map(|s| alphabet.binary_search(s).unwrap_or(0))
                    .collect(),
            );
            alphabet_sizes.push(alphabet.len());
        }
        let mut game = TeamGame {
            env,
            minimizers,
            maximizers,
            kernel,
            symbols,
            alphabet_sizes,
            rules: Vec::new(),
            cap: DEFAULT_CAP,
        };
        game.rules = (0..n)
            .map(|dm| {
                enumerate_rules(
                    game.alphabet_sizes[dm],
                    game.kernel.action_counts[dm],
                    game.cap,
                )
            })
            .collect::<Result<_>>()?;
        Ok(game)
    }

    /// Replaces one decision maker's rule list (for a custom order or a
    /// restricted strategy set).
    pub fn with_rules(mut self, dm: usize, rules: Vec<PureRule>) -> Result<Self> {
        let n = self.decision_makers();
        if dm >= n {
            return Err(Error::IndexOutOfBounds {
                context: "decision maker",
                index: dm,
                len: n,
            });
        }
        if rules.is_empty() {
            return Err(Error::InvalidStructure(format!(
                "decision maker {dm} has no rules"
            )));
        }
        for r in &rules {
            if r.alphabet() != self.alphabet_sizes[dm] {
                return Err(Error::DimensionMismatch {
                    context: "rule table",
                    expected: self.alphabet_sizes[dm],
                    found: r.alphabet(),
                });
            }
            if let Some(&a) = r
                .table()
                .iter()
                .find(|&&a| a >= self.kernel.action_counts[dm])
            {
                return Err(Error::IndexOutOfBounds {
                    context: "rule action",
                    index: a,
                    len: self.kernel.action_counts[dm],
                });
            }
        }
        self.rules[dm] = rules;
        Ok(self)
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// Merges observation symbols `a` and `b` of decision maker `dm` into
    /// one. The DM's rule set becomes the full rule set over the smaller
    /// alphabet.
    pub fn coarsen(&self, dm: usize, a: usize, b: usize) -> Result<TeamGame> {
        let n = self.decision_makers();
        if dm >= n {
            return Err(Error::IndexOutOfBounds {
                context: "decision maker",
                index: dm,
                len: n,
            });
        }
        let k = self.alphabet_sizes[dm];
        for s in [a, b] {
            if s >= k {
                return Err(Error::IndexOutOfBounds {
                    context: "observation symbol",
                    index: s,
                    len: k,
                });
            }
        }
        if a == b {
            return Ok(self.clone());
        }
        let (keep, drop) = (a.min(b), a.max(b));
        let mut g = self.clone();
        for s in g.symbols[dm].iter_mut() {
            if *s == drop {
                *s = keep;
            } else if *s > drop {
                *s -= 1;
            }
        }
        g.alphabet_sizes[dm] = k - 1;
        g.rules[dm] = enumerate_rules(k - 1, g.kernel.action_counts[dm], g.cap)?;
        Ok(g)
    }

    pub fn env(&self) -> &FiniteEnv {
        &self.env
    }

    pub fn kernel(&self) -> &PayoffKernel {
        &self.kernel
    }

    pub fn decision_makers(&self) -> usize {
        self.kernel.decision_makers()
    }

    pub fn minimizers(&self) -> &[usize] {
        &self.minimizers
    }

    pub fn maximizers(&self) -> &[usize] {
        &self.maximizers
    }

    pub fn rules(&self, dm: usize) -> &[PureRule] {
        &self.rules[dm]
    }

    pub fn alphabet_size(&self, dm: usize) -> usize {
        self.alphabet_sizes[dm]
    }

    /// Observation symbol index of `dm` under outcome number `outcome`.
    pub fn symbol(&self, dm: usize, outcome: usize) -> usize {
        self.symbols[dm][outcome]
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Rule counts of a team's members, in member order.
    pub fn radix(&self, team: &[usize]) -> Vec<usize> {
        team.iter().map(|&dm| self.rules[dm].len()).collect()
    }

    fn team_size(&self, team: &[usize]) -> Result<usize> {
        let count = team.iter().fold(1u128, |acc, &dm| {
            acc.saturating_mul(self.rules[dm].len() as u128)
        });
        if count > self.cap as u128 {
            return Err(Error::CapExceeded {
                context: "team rule profiles",
                count,
                cap: self.cap as u128,
            });
        }
        Ok(count as usize)
    }

    /// Joint action chosen by a full profile under outcome number `outcome`.
    pub fn actions(&self, profile: &[usize], outcome: usize) -> Vec<usize> {
        profile
            .iter()
            .enumerate()
            .map(|(dm, &r)| self.rules[dm][r].act(self.symbols[dm][outcome]))
            .collect()
    }

    fn check_profile(&self, profile: &[usize]) -> Result<()> {
        let n = self.decision_makers();
        if profile.len() != n {
            return Err(Error::DimensionMismatch {
                context: "rule profile",
                expected: n,
                found: profile.len(),
            });
        }
        for (dm, &r) in profile.iter().enumerate() {
            if r >= self.rules[dm].len() {
                return Err(Error::IndexOutOfBounds {
                    context: "rule index",
                    index: r,
                    len: self.rules[dm].len(),
                });
            }
        }
        Ok(())
    }

    /// Full profile from a minimizer-team index and a maximizer-team index.
    /// Team indices are mixed-radix with the first listed member fastest.
    pub fn compose_profile(&self, row: usize, col: usize) -> RuleProfile {
        let mut profile = vec![0; self.decision_makers()];
        for (team, mut idx) in [(&self.minimizers, row), (&self.maximizers, col)] {
            for &dm in team.iter() {
                let k = self.rules[dm].len();
                profile[dm] = idx % k;
                idx /= k;
            }
        }
        profile
    }
}

/// `Σ_ξ P(ξ) κ(actions(ξ), ξ)` over the positive-probability outcomes.
pub fn expected_payoff(game: &TeamGame, profile: &[usize]) -> Result<Scalar> {
    game.check_profile(profile)?;
    let mut total = Scalar::zero();
    for (o, (_, p)) in game.env.outcomes().iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let actions = game.actions(profile, o);
        total = total + *p * game.kernel.payoff(o, &actions)?;
    }
    Ok(total)
}

/// Expected payoff over every (minimizer profile, maximizer profile) pair.
/// An empty team contributes a single trivial profile.
pub fn payoff_matrix(game: &TeamGame) -> Result<PayoffMatrix> {
    let nrows = game.team_size(&game.minimizers)?;
    let ncols = game.team_size(&game.maximizers)?;
    let mut entries = Vec::with_capacity(nrows * ncols);
    for r in 0..nrows {
        for c in 0..ncols {
            entries.push(expected_payoff(game, &game.compose_profile(r, c))?);
        }
    }
    PayoffMatrix::from_scalars(nrows, ncols, entries)
        .map(|m| m.with_radix(game.radix(&game.minimizers), game.radix(&game.maximizers)))
}

/// Exhaustive minimum of a single minimizing team; ties go to the lowest
/// team index.
pub fn team_optimum_pure(game: &TeamGame) -> Result<(RuleProfile, Scalar)> {
    if !game.maximizers.is_empty() {
        return Err(Error::InvalidStructure(
            "team optimum needs a game without a maximizing team".into(),
        ));
    }
    let nrows = game.team_size(&game.minimizers)?;
    let mut best: Option<(usize, Scalar)> = None;
    for r in 0..nrows {
        let v = expected_payoff(game, &game.compose_profile(r, 0))?;
        if best.as_ref().map_or(true, |(_, b)| v.compare(b).is_lt()) {
            best = Some((r, v));
        }
    }
    let (r, v) = best.ok_or_else(|| Error::InvalidStructure("no rule profiles".into()))?;
    Ok((game.compose_profile(r, 0), v))
}
