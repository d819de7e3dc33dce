//! Solvers for static stochastic team decision problems and team-vs-team
//! zero-sum games, with a focus on what externally provided randomness is
//! worth to a team.
//!
//! The crate is `no_std` (it needs `alloc`) and contains no IO. Everything
//! here is a pure function of its inputs:
//!
//! - [`env`]: finite and zero-mean Gaussian environments, and the
//!   information maps that turn an environment draw into each decision
//!   maker's observation.
//! - [`discrete`]: finite team games over enumerated pure decision rules,
//!   expected-payoff matrices, security levels, saddle points, private and
//!   common (joint) randomization, and matrix-game minimax by simplex.
//! - [`lqg_team`]: the static LQG team, solved through the stationarity
//!   system of its trace-form cost, including independent and
//!   environment-dependent randomness.
//! - [`zero_sum`]: the LQG team-vs-team zero-sum game with second-order
//!   saddle certificates.
//! - [`oracle`]: independent ground truth (Monte-Carlo with a counter-based
//!   generator, exhaustive enumeration, nested grid refinement).
//! - [`instances`]: the worked instances (binary-chain game, two-DM LQG team,
//!   three-DM zero-sum game) as ready-made constructors.
//!
//! ```
//! use randteam_core::{discrete, instances};
//!
//! let game = instances::binary_chain_game_exact(1, 4, 1, 3, 2, 3).unwrap();
//! let matrix = discrete::payoff_matrix(&game).unwrap();
//! let levels = discrete::security_levels(&matrix).unwrap();
//! assert_eq!((levels.lower, levels.upper), (0.25, 1.0));
//! assert!(discrete::pure_saddle(&matrix).is_none());
//! ```

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod discrete;
pub mod env;
pub mod error;
pub mod instances;
pub mod linalg;
pub mod lqg_team;
pub mod oracle;
pub mod quadratic;
pub mod scalar;
pub mod zero_sum;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};

/// Which side of a zero-sum game a team plays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Minimizer,
    Maximizer,
}

impl Side {
    pub fn opponent(self) -> Side {
        match self {
            Side::Minimizer => Side::Maximizer,
            Side::Maximizer => Side::Minimizer,
        }
    }
}
