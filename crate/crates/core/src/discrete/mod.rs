//! Finite team games over enumerated pure decision rules.
//!
//! Rows of every [`PayoffMatrix`] belong to the minimizing team and columns
//! to the maximizing team. A team's rule profile is numbered mixed-radix
//! with its first listed member varying fastest.

mod game;
mod lp;
mod matrix;
mod rules;

pub use game::{
    expected_payoff, payoff_matrix, team_optimum_pure, PayoffKernel, RuleProfile, TeamGame,
};
pub use lp::{minimax_joint, MinimaxSolution, LP_MAX_SIDE};
pub use matrix::{
    best_response, mixed_payoff, pure_saddle, response_payoffs, security_levels, MixedTeamStrategy,
    PayoffMatrix, Saddle, SecurityLevels, StrategyKind,
};
pub use rules::{binary_rules_identity_first, enumerate_rules, PureRule, DEFAULT_CAP};

/// Expected cost of a mixed strategy of a lone minimizing team, i.e. the
/// strategy's weighted average over the single column of `m`.
pub fn solo_mixed_cost(m: &PayoffMatrix, s: &MixedTeamStrategy) -> crate::Result<f64> {
    if m.ncols() != 1 {
        return Err(crate::Error::InvalidStructure(
            "expected a single-column matrix".into(),
        ));
    }
    let p = s.profile_distribution(m.row_radix())?;
    if p.len() != m.nrows() {
        return Err(crate::Error::DimensionMismatch {
            context: "solo strategy",
            expected: m.nrows(),
            found: p.len(),
        });
    }
    Ok(p.iter().enumerate().map(|(r, x)| x * m.get(r, 0)).sum())
}
