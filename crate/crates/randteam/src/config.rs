//! Experiment configuration files.
//!
//! A config is one JSON document with a `kind` tag. Every number may be
//! written as a JSON number or as a string; strings such as `"1/4"` or
//! `"0.25"` are parsed exactly.

use serde::{Deserialize, Serialize};

use randteam_core::linalg::Matrix;
use randteam_core::lqg_team::Randomness;
use randteam_core::zero_sum::ZsRandomness;
use randteam_core::Scalar;

use crate::error::{Result, RunError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Moments derived from the covariance and mixing weights.
    #[default]
    Corrected,
    /// The typeset system of the two-DM mixing example.
    PaperFaithful,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Number(f64),
    Text(String),
}

impl Num {
    pub fn scalar(&self, name: &str) -> Result<Scalar> {
        match self {
            Num::Number(x) if x.is_finite() => Ok(Scalar::from(*x)),
            Num::Number(x) => Err(RunError::Config(format!("{name}: non-finite number {x}"))),
            Num::Text(s) => Scalar::parse(s).map_err(|e| RunError::Config(format!("{name}: {e}"))),
        }
    }

    pub fn value(&self, name: &str) -> Result<f64> {
        Ok(self.scalar(name)?.value())
    }
}

fn vector(v: &[Num], name: &str) -> Result<Vec<f64>> {
    v.iter().map(|x| x.value(name)).collect()
}

fn matrix(rows: &[Vec<Num>], name: &str) -> Result<Matrix> {
    let rows: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| vector(r, name))
        .collect::<Result<_>>()?;
    Matrix::from_rows(&rows).map_err(|e| RunError::Config(format!("{name}: {e}")))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExperimentConfig {
    Discrete(DiscreteConfig),
    LqgTeam(LqgTeamConfig),
    LqgZerosum(ZsConfig),
    McCheck(McCheckConfig),
}

/// Run settings a config may carry; command-line flags take precedence.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub tolerance: Option<f64>,
    pub mode: Option<Mode>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: ExperimentConfig = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn overrides(&self) -> Overrides {
        macro_rules! grab {
            ($c:expr) => {
                Overrides {
                    seed: $c.seed,
                    samples: $c.samples,
                    tolerance: $c.tolerance,
                    mode: $c.mode,
                }
            };
        }
        match self {
            ExperimentConfig::Discrete(c) => grab!(c),
            ExperimentConfig::LqgTeam(c) => grab!(c),
            ExperimentConfig::LqgZerosum(c) => grab!(c),
            ExperimentConfig::McCheck(c) => grab!(c),
        }
    }

    /// Shape checks that need no solving.
    pub fn validate(&self) -> Result<()> {
        match self {
            ExperimentConfig::Discrete(c) => {
                if c.matrix.is_none() && (c.p1.is_none() || c.p.is_none() || c.q.is_none()) {
                    return Err(RunError::Config(
                        "discrete: give either `matrix` or all of `p1`, `p`, `q`".into(),
                    ));
                }
                if c.matrix.is_some() && (c.p1.is_some() || c.p.is_some() || c.q.is_some()) {
                    return Err(RunError::Config(
                        "discrete: `matrix` excludes `p1`, `p`, `q`".into(),
                    ));
                }
                if c.mode == Some(Mode::PaperFaithful) {
                    return Err(RunError::Config(
                        "discrete: mode paper-faithful is not defined for this kind".into(),
                    ));
                }
                c.chain_params()?;
                c.matrix_rows()?;
                c.mixture()?;
            }
            ExperimentConfig::LqgTeam(c) => {
                c.matrices()?;
                c.randomness.as_ref().map(|r| r.build()).transpose()?;
            }
            ExperimentConfig::LqgZerosum(c) => {
                if c.mode == Some(Mode::PaperFaithful) {
                    return Err(RunError::Config(
                        "lqg-zerosum: mode paper-faithful is not defined for this kind".into(),
                    ));
                }
                c.spec()?;
            }
            ExperimentConfig::McCheck(c) => {
                if matches!(*c.target, ExperimentConfig::McCheck(_)) {
                    return Err(RunError::Config(
                        "mc-check: the target cannot itself be mc-check".into(),
                    ));
                }
                c.target.validate()?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscreteConfig {
    /// Binary-chain parameters.
    pub p1: Option<Num>,
    pub p: Option<Num>,
    pub q: Option<Num>,
    /// Or an explicit payoff matrix (rows minimize).
    pub matrix: Option<Vec<Vec<Num>>>,
    /// Optional maximizer mixture to best-respond to.
    pub maximizer_mixture: Option<Vec<Num>>,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub tolerance: Option<f64>,
    pub mode: Option<Mode>,
}

impl DiscreteConfig {
    pub fn chain_params(&self) -> Result<Option<[Scalar; 3]>> {
        match (&self.p1, &self.p, &self.q) {
            (Some(a), Some(b), Some(c)) => {
                Ok(Some([a.scalar("p1")?, b.scalar("p")?, c.scalar("q")?]))
            }
            _ => Ok(None),
        }
    }

    pub fn matrix_rows(&self) -> Result<Option<Vec<Vec<f64>>>> {
        self.matrix
            .as_ref()
            .map(|m| m.iter().map(|r| vector(r, "matrix")).collect())
            .transpose()
    }

    pub fn mixture(&self) -> Result<Option<Vec<f64>>> {
        self.maximizer_mixture
            .as_ref()
            .map(|v| vector(v, "maximizer_mixture"))
            .transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RandomnessConfig {
    None,
    Private {
        variances: Vec<Num>,
    },
    Common {
        cov: Vec<Vec<Num>>,
    },
    Dependent {
        phi: Vec<Vec<Num>>,
        access: Vec<Vec<usize>>,
    },
}

impl RandomnessConfig {
    pub fn build(&self) -> Result<Randomness> {
        Ok(match self {
            RandomnessConfig::None => Randomness::None,
            RandomnessConfig::Private { variances } => Randomness::PrivateIndep {
                variances: vector(variances, "variances")?,
            },
            RandomnessConfig::Common { cov } => Randomness::CommonIndep {
                cov: matrix(cov, "cov")?,
            },
            RandomnessConfig::Dependent { phi, access } => Randomness::Dependent {
                phi: phi
                    .iter()
                    .map(|r| vector(r, "phi"))
                    .collect::<Result<_>>()?,
                access: access.clone(),
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LqgTeamConfig {
    pub b: Vec<Vec<Num>>,
    pub s: Vec<Vec<Num>>,
    pub sigma: Vec<Vec<Num>>,
    /// Observed coordinates per decision; defaults to its own index.
    pub structure: Option<Vec<Vec<usize>>>,
    pub randomness: Option<RandomnessConfig>,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub tolerance: Option<f64>,
    pub mode: Option<Mode>,
}

impl LqgTeamConfig {
    pub fn matrices(&self) -> Result<(Matrix, Matrix, Matrix)> {
        Ok((
            matrix(&self.b, "b")?,
            matrix(&self.s, "s")?,
            matrix(&self.sigma, "sigma")?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ZsRandomnessConfig {
    None,
    Independent { variance: Num },
    Mole { phi11: Num },
    Consultant { phi21: Num, phi22: Num },
    Dependent { phi: [Num; 3] },
}

impl ZsRandomnessConfig {
    pub fn build(&self) -> Result<ZsRandomness> {
        Ok(match self {
            ZsRandomnessConfig::None => ZsRandomness::None,
            ZsRandomnessConfig::Independent { variance } => ZsRandomness::IndependentCommon {
                variance: variance.value("variance")?,
            },
            ZsRandomnessConfig::Mole { phi11 } => ZsRandomness::Mole {
                phi11: phi11.value("phi11")?,
            },
            ZsRandomnessConfig::Consultant { phi21, phi22 } => ZsRandomness::Consultant {
                phi21: phi21.value("phi21")?,
                phi22: phi22.value("phi22")?,
            },
            ZsRandomnessConfig::Dependent { phi } => ZsRandomness::Dependent([
                phi[0].value("phi")?,
                phi[1].value("phi")?,
                phi[2].value("phi")?,
            ]),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZsConfig {
    pub r11: Num,
    pub r12: Num,
    pub q12: Num,
    /// Defaults to the covariance of the worked instance.
    pub sigma: Option<Vec<Vec<Num>>>,
    pub randomness: Option<ZsRandomnessConfig>,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub tolerance: Option<f64>,
    pub mode: Option<Mode>,
}

impl ZsConfig {
    pub fn spec(&self) -> Result<randteam_core::zero_sum::ZsLqgSpec> {
        let sigma = match &self.sigma {
            Some(s) => matrix(s, "sigma")?,
            None => randteam_core::instances::zs_covariance(),
        };
        let randomness = self
            .randomness
            .as_ref()
            .map(|r| r.build())
            .transpose()?
            .unwrap_or(ZsRandomness::None);
        Ok(randteam_core::zero_sum::ZsLqgSpec::new(
            self.r11.value("r11")?,
            self.r12.value("r12")?,
            self.q12.value("q12")?,
            sigma,
        )
        .with_randomness(randomness))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McCheckConfig {
    pub target: Box<ExperimentConfig>,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub tolerance: Option<f64>,
    pub mode: Option<Mode>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_parse_exactly() {
        let c = ExperimentConfig::from_json(
            r#"{"kind": "discrete", "p1": "1/4", "p": "1/3", "q": 0.5}"#,
        )
        .unwrap();
        let ExperimentConfig::Discrete(d) = c else {
            panic!()
        };
        let [p1, p, q] = d.chain_params().unwrap().unwrap();
        assert_eq!(p1.as_exact(), Some(randteam_core::Rational::new(1, 4)));
        assert_eq!(p.as_exact(), Some(randteam_core::Rational::new(1, 3)));
        assert_eq!(q.value(), 0.5);
    }

    #[test]
    fn rejects_bad_configs() {
        for text in [
            r#"{"kind": "discrete", "p1": "1/4"}"#,
            r#"{"kind": "discrete", "p1": "x", "p": "1/3", "q": "1/2"}"#,
            r#"{"kind": "lqg-zerosum", "r11": 0.25, "r12": 0.25, "q12": 0.5, "mode": "paper-faithful"}"#,
            r#"{"kind": "lqg-team"}"#,
            r#"{"kind": "nope"}"#,
            r#"{"kind": "discrete", "p1": "1/4", "p": "1/3", "q": "2/3", "bogus": 1}"#,
            r#"{"kind": "mc-check", "target": {"kind": "mc-check", "target": {"kind": "discrete"}}}"#,
        ] {
            let e = ExperimentConfig::from_json(text);
            assert!(matches!(e, Err(RunError::Config(_))), "{text}");
        }
    }

    #[test]
    fn zero_sum_spec() {
        let c = ExperimentConfig::from_json(
            r#"{"kind": "lqg-zerosum", "r11": "1/4", "r12": "1/4", "q12": "1/2",
                "randomness": {"kind": "mole", "phi11": "1/2"}, "seed": 3}"#,
        )
        .unwrap();
        assert_eq!(c.overrides().seed, Some(3));
        let ExperimentConfig::LqgZerosum(z) = c else {
            panic!()
        };
        assert_eq!(
            z.spec().unwrap().randomness,
            ZsRandomness::Mole { phi11: 0.5 }
        );
    }
}
