//! `solve` and `mc-check` over a configuration file.

use randteam_core::discrete::{
    best_response, expected_payoff, minimax_joint, payoff_matrix, pure_saddle, security_levels,
    MixedTeamStrategy, PayoffMatrix,
};
use randteam_core::instances::{binary_chain_game, binary_chain_row_labels};
use randteam_core::linalg::Matrix;
use randteam_core::lqg_team::{
    independent_randomness_report, model, paper_faithful_table1, solve_team, LqgTeamSpec,
    Randomness,
};
use randteam_core::oracle::{FiniteProfileSampler, GaussianQuadraticSampler};
use randteam_core::zero_sum::{solve_saddle, validate_game, verify_saddle};
use randteam_core::Side;

use crate::config::{DiscreteConfig, ExperimentConfig, LqgTeamConfig, Mode, ZsConfig};
use crate::error::{Result, RunError};
use crate::parallel::par_mc_estimate;
use crate::report::{CompatRecord, Report, Status};
use crate::reproduce::{coefficient_label, Settings};

/// Applies a config's own settings where the command line left a default.
pub fn effective(settings: &Settings, config: &ExperimentConfig, explicit: &Explicit) -> Settings {
    let o = config.overrides();
    let mut s = settings.clone();
    if !explicit.seed {
        s.seed = o.seed.unwrap_or(s.seed);
    }
    if !explicit.samples {
        s.samples = o.samples.unwrap_or(s.samples);
    }
    if !explicit.tol {
        s.tol = o.tolerance.unwrap_or(s.tol);
    }
    if !explicit.mode {
        s.mode = o.mode.unwrap_or(s.mode);
    }
    s
}

/// Which settings were given on the command line.
#[derive(Clone, Copy, Debug, Default)]
pub struct Explicit {
    pub seed: bool,
    pub samples: bool,
    pub tol: bool,
    pub mode: bool,
}

pub fn solve(config: &ExperimentConfig, settings: &Settings) -> Result<Report> {
    match config {
        ExperimentConfig::Discrete(c) => solve_discrete(c),
        ExperimentConfig::LqgTeam(c) => solve_lqg(c, settings.mode),
        ExperimentConfig::LqgZerosum(c) => solve_zs(c, settings),
        ExperimentConfig::McCheck(c) => mc_check(&c.target, settings),
    }
}

fn discrete_matrix(c: &DiscreteConfig) -> Result<(PayoffMatrix, Vec<String>, String)> {
    if let Some(p) = c.chain_params()? {
        let game = binary_chain_game(p[0], p[1], p[2])?;
        return Ok((
            payoff_matrix(&game)?,
            binary_chain_row_labels(),
            format!("p1={},p={},q={}", p[0], p[1], p[2]),
        ));
    }
    let rows = c
        .matrix_rows()?
        .ok_or_else(|| RunError::Config("discrete: missing matrix".into()))?;
    let m = PayoffMatrix::from_rows(&rows)?;
    let labels = (1..=m.nrows()).map(|r| format!("row {r}")).collect();
    Ok((
        m,
        labels,
        format!(
            "{}x{} matrix",
            rows.len(),
            rows.first().map_or(0, |r| r.len())
        ),
    ))
}

fn solve_discrete(c: &DiscreteConfig) -> Result<Report> {
    let (m, labels, params) = discrete_matrix(c)?;
    let mut report = Report::new("Matrix game");
    let l = security_levels(&m)?;
    report.push(CompatRecord::unreferenced("lower", &params, l.lower));
    report.push(CompatRecord::unreferenced("upper", &params, l.upper));
    match pure_saddle(&m) {
        Some(s) => {
            report.push(CompatRecord::unreferenced("saddle", &params, s.value));
            report.notes.push(format!(
                "pure saddle at {} against column {}",
                labels[s.row],
                s.col + 1
            ));
        }
        None => report.notes.push("no pure saddle".into()),
    }
    let mm = minimax_joint(&m)?;
    report.push(CompatRecord::unreferenced(
        "joint-mixing-value",
        &params,
        mm.value,
    ));
    for (r, p) in mm.minimizer.iter().enumerate().filter(|(_, p)| **p > 1e-12) {
        report.push(CompatRecord::unreferenced(
            format!("minimizer/{}", labels[r]),
            &params,
            *p,
        ));
    }
    for (col, p) in mm.maximizer.iter().enumerate().filter(|(_, p)| **p > 1e-12) {
        report.push(CompatRecord::unreferenced(
            format!("maximizer/col{}", col + 1),
            &params,
            *p,
        ));
    }
    if let Some(a) = c.mixture()? {
        let (row, v) = best_response(&m, &MixedTeamStrategy::joint(Side::Maximizer, a)?)?;
        report.push(CompatRecord::unreferenced("best-response", &params, v));
        report
            .notes
            .push(format!("best reply to the given mixture: {}", labels[row]));
    }
    Ok(report)
}

fn lqg_spec(c: &LqgTeamConfig) -> Result<LqgTeamSpec> {
    let (b, s, sigma) = c.matrices()?;
    let mut spec = LqgTeamSpec::diagonal(b, s, sigma);
    if let Some(st) = &c.structure {
        spec.structure = st.clone();
    }
    if let Some(r) = &c.randomness {
        spec.randomness = r.build()?;
    }
    spec.validate()?;
    Ok(spec)
}

/// `φ` of a two-DM spec shaped like the typeset example.
fn typeset_phi(spec: &LqgTeamSpec) -> Result<[f64; 4]> {
    let shaped = |phi: &Vec<Vec<f64>>, access: &Vec<Vec<usize>>| {
        phi.len() == 2 && phi.iter().all(|r| r.len() == 2) && *access == vec![vec![0], vec![1]]
    };
    match &spec.randomness {
        Randomness::Dependent { phi, access } if shaped(phi, access) && spec.structure == vec![vec![0], vec![1]] => {
            Ok([phi[0][0], phi[0][1], phi[1][0], phi[1][1]])
        }
        Randomness::None if spec.decisions() == 2 && spec.structure == vec![vec![0], vec![1]] => Ok([0.0; 4]),
        _ => Err(RunError::Config(
            "mode paper-faithful needs two decisions on their own coordinates with one mixed signal each".into(),
        )),
    }
}

fn solve_lqg(c: &LqgTeamConfig, mode: Mode) -> Result<Report> {
    let spec = lqg_spec(c)?;
    let mut report = Report::new("Static LQG team");
    match mode {
        Mode::PaperFaithful => {
            let phi = typeset_phi(&spec)?;
            let sol = paper_faithful_table1(phi, &spec.sigma, &spec.b, &spec.s)
                .map_err(|e| RunError::Config(format!("mode paper-faithful: {e}")))?;
            for (c, t) in sol.policy.coefficients.iter().zip(&sol.policy.theta) {
                report.push(CompatRecord::unreferenced(
                    coefficient_label(c),
                    "typeset system",
                    *t,
                ));
            }
            report.push(CompatRecord::unreferenced(
                "value",
                "typeset system",
                sol.value,
            ));
        }
        Mode::Corrected => {
            let sol = solve_team(&spec)?;
            for (c, t) in sol.policy.coefficients.iter().zip(&sol.policy.theta) {
                report.push(CompatRecord::unreferenced(
                    coefficient_label(c),
                    "corrected",
                    *t,
                ));
            }
            report.push(CompatRecord::unreferenced("value", "corrected", sol.value));
            report
                .notes
                .push(format!("stationarity residual {:.1e}", sol.residual));
            if matches!(
                spec.randomness,
                Randomness::PrivateIndep { .. } | Randomness::CommonIndep { .. }
            ) {
                let ind = independent_randomness_report(&spec)?;
                report.notes.push(format!(
                    "independent randomness: optimal gains all zero, value without it {:.6}, randomness block minimum eigenvalue {:.3e}",
                    ind.j_base, ind.block_min_eigenvalue
                ));
            }
        }
    }
    Ok(report)
}

fn solve_zs(c: &ZsConfig, settings: &Settings) -> Result<Report> {
    let spec = c.spec()?;
    let warnings = validate_game(&spec).into_result()?;
    let sol = solve_saddle(&spec)?;
    let mut report = Report::new("LQG team-vs-team zero-sum game");
    for (c, t) in sol.coefficients.iter().zip(&sol.theta) {
        report.push(CompatRecord::unreferenced(
            coefficient_label(c),
            "saddle",
            *t,
        ));
    }
    report.push(CompatRecord::unreferenced("value", "saddle", sol.value));
    report.push(CompatRecord::unreferenced(
        "certificate/max-curvature",
        "saddle",
        sol.certificate.max_curvature,
    ));
    report.push(CompatRecord::unreferenced(
        "certificate/min-block-eigenvalue",
        "saddle",
        sol.certificate.min_block_eigenvalue,
    ));
    match verify_saddle(&spec, &sol, 10_000, settings.seed)? {
        Ok(()) => report
            .notes
            .push("10^4 random unilateral deviations improve neither side".into()),
        Err(cx) => report.notes.push(format!(
            "{:?} deviation reaches {:.6} against {:.6}",
            cx.deviating, cx.value, cx.reference
        )),
    }
    report.notes.extend(warnings);
    Ok(report)
}

fn mc_record(case: String, params: &str, mean: f64, stderr: f64, exact: f64) -> CompatRecord {
    let diff = (mean - exact).abs();
    let status = if diff <= 4.0 * stderr + 1e-12 * (1.0 + exact.abs()) {
        Status::Match
    } else {
        Status::Mismatch
    };
    CompatRecord {
        case,
        param_set: params.into(),
        value: mean,
        paper_value: Some(exact),
        abs_diff: Some(diff),
        status,
    }
}

/// Sampled cost against the analytic value. A record matches when the two
/// are within four standard errors.
pub fn mc_check(config: &ExperimentConfig, settings: &Settings) -> Result<Report> {
    let (n, seed) = (settings.samples, settings.seed);
    let params = format!("n={n},seed={seed}");
    let mut report = Report::new("Monte-Carlo agreement");
    match config {
        ExperimentConfig::Discrete(c) => {
            let p = c.chain_params()?.ok_or_else(|| {
                RunError::Config("mc-check: a bare matrix has no environment to sample".into())
            })?;
            let game = binary_chain_game(p[0], p[1], p[2])?;
            let labels = binary_chain_row_labels();
            let m = payoff_matrix(&game)?;
            for r in 0..m.nrows() {
                for col in 0..m.ncols() {
                    let profile = game.compose_profile(r, col);
                    let exact = expected_payoff(&game, &profile)?.value();
                    let est =
                        par_mc_estimate(&FiniteProfileSampler::new(&game, &profile)?, n, seed)?;
                    report.push(mc_record(
                        format!("mc/{}/g^{}", labels[r], col + 1),
                        &params,
                        est.mean,
                        est.stderr,
                        exact,
                    ));
                }
            }
        }
        ExperimentConfig::LqgTeam(c) => {
            if settings.mode == Mode::PaperFaithful {
                return Err(RunError::Config(
                    "mc-check: the typeset system has no sampling model".into(),
                ));
            }
            let spec = lqg_spec(c)?;
            let sol = solve_team(&spec)?;
            let est = par_mc_estimate(
                &GaussianQuadraticSampler::for_team(&model(&spec)?, &sol.policy.theta)?,
                n,
                seed,
            )?;
            report.push(mc_record(
                "mc/value".into(),
                &params,
                est.mean,
                est.stderr,
                sol.value,
            ));
        }
        ExperimentConfig::LqgZerosum(c) => {
            let spec = c.spec()?;
            let sol = solve_saddle(&spec)?;
            let est = par_mc_estimate(
                &GaussianQuadraticSampler::for_saddle(&spec, &sol.theta)?,
                n,
                seed,
            )?;
            report.push(mc_record(
                "mc/value".into(),
                &params,
                est.mean,
                est.stderr,
                sol.value,
            ));
        }
        ExperimentConfig::McCheck(c) => return mc_check(&c.target, settings),
    }
    report.notes.push("value is the sample mean and paper_value the analytic expectation; match means within 4 standard errors".into());
    Ok(report)
}

/// Sampled cost of a fixed gain matrix, used by the acceptance suite.
pub fn sampled_quadratic(
    b: Matrix,
    s: Matrix,
    cov_z: &Matrix,
    gain: Matrix,
    n: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    let est = par_mc_estimate(&GaussianQuadraticSampler::new(b, s, cov_z, gain)?, n, seed)?;
    Ok((est.mean, est.stderr))
}
