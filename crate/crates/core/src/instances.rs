//! Ready-made worked instances.

use alloc::vec;
use alloc::vec::Vec;

use crate::discrete::{binary_rules_identity_first, PayoffKernel, TeamGame};
use crate::env::{binary_chain_env, ObsEntry, ObservationMap};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::lqg_team::LqgTeamSpec;
use crate::scalar::Scalar;
use crate::zero_sum::{ZsLqgSpec, ZsRandomness};

/// `κ(u, v₁v₂)` with action 0 = L and 1 = R, flattened `u`-major:
/// against L the minimizers pay 20, 0, 1, 30 for LL, LR, RL, RR; against R
/// they pay 20, 1, 0, 30.
pub fn binary_chain_kernel() -> PayoffKernel {
    let table = [20, 0, 1, 30, 20, 1, 0, 30];
    PayoffKernel::new(
        vec![2, 2, 2],
        table.iter().map(|&x| Scalar::integer(x)).collect(),
    )
    .expect("fixed shape")
}

/// Decision 0 maximizes after seeing `μ₁`; decisions 1 and 2 minimize after
/// seeing `s₁` and `s₂`. Every decision maker's rules are ordered identity,
/// swap, constant L, constant R.
pub fn binary_chain_game(p1: Scalar, p: Scalar, q: Scalar) -> Result<TeamGame> {
    let env = binary_chain_env(p1, p, q)?;
    let maps = ObservationMap::new(
        vec![
            ObsEntry::CoordinateSelect(vec![0]),
            ObsEntry::CoordinateSelect(vec![1]),
            ObsEntry::CoordinateSelect(vec![2]),
        ],
        3,
    )?;
    let mut game = TeamGame::new(env, &maps, vec![1, 2], vec![0], binary_chain_kernel())?;
    for dm in 0..3 {
        game = game.with_rules(dm, binary_rules_identity_first())?;
    }
    Ok(game)
}

/// [`binary_chain_game`] with rational parameters `p1n/p1d`, `pn/pd`, `qn/qd`.
pub fn binary_chain_game_exact(
    p1n: i128,
    p1d: i128,
    pn: i128,
    pd: i128,
    qn: i128,
    qd: i128,
) -> Result<TeamGame> {
    binary_chain_game(
        Scalar::ratio(p1n, p1d)?,
        Scalar::ratio(pn, pd)?,
        Scalar::ratio(qn, qd)?,
    )
}

/// Row labels of the binary-chain payoff matrix, `"d1^i d2^j"` with rule
/// numbers from 1 and the first minimizer fastest.
pub fn binary_chain_row_labels() -> Vec<alloc::string::String> {
    let mut out = Vec::with_capacity(16);
    for j in 1..=4 {
        for i in 1..=4 {
            out.push(alloc::format!("d1^{i} d2^{j}"));
        }
    }
    out
}

pub fn two_dm_curvature() -> Matrix {
    Matrix::from_rows(&[[2.0, -1.0], [-1.0, 1.0]]).expect("fixed shape")
}

pub fn two_dm_covariance() -> Matrix {
    Matrix::from_rows(&[[1.0, 0.25], [0.25, 1.0]]).expect("fixed shape")
}

/// The two-DM LQG team, each decision seeing its own coordinate, `S = I`.
pub fn two_dm_team() -> LqgTeamSpec {
    LqgTeamSpec::diagonal(two_dm_curvature(), Matrix::identity(2), two_dm_covariance())
}

/// Mixing weights `(φ₁₁, φ₁₂, φ₂₁, φ₂₂)` of the five reference rows:
/// none, DM 1 only, both equal, and two asymmetric mixes.
pub const TWO_DM_MIXINGS: [[f64; 4]; 5] = [
    [0.0, 0.0, 0.0, 0.0],
    [0.25, 0.75, 0.0, 0.0],
    [0.5, 0.5, 0.5, 0.5],
    [2.0 / 3.0, 1.0 / 3.0, 0.75, 0.25],
    [1.0 / 3.0, 2.0 / 3.0, 0.25, 0.75],
];

pub fn zs_covariance() -> Matrix {
    Matrix::from_rows(&[[2.0, 0.25, 0.25], [0.25, 1.0, 0.5], [0.25, 0.5, 1.0]])
        .expect("fixed shape")
}

/// Coupling case 1 is `(r₁₁, r₁₂, q₁₂) = (1/4, 1/4, 1/2)`, case 2 is
/// `(1/4, 1/2, 1/2)`.
pub fn zs_case(case: u8) -> Option<ZsLqgSpec> {
    let (r11, r12, q12) = match case {
        1 => (0.25, 0.25, 0.5),
        2 => (0.25, 0.5, 0.5),
        _ => return None,
    };
    Some(ZsLqgSpec::new(r11, r12, q12, zs_covariance()))
}

pub const MOLE: ZsRandomness = ZsRandomness::Mole { phi11: 0.5 };
pub const CONSULTANT: ZsRandomness = ZsRandomness::Consultant {
    phi21: 0.5,
    phi22: 0.5,
};
