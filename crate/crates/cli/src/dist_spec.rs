//! `name:params` distribution specs: `normal:MU,SIGMA`, `laplace:MU,B`,
//! `alaplace:MU,B,KAPPA`.

use std::fmt;
use std::str::FromStr;

use smoothq::{Distribution, Family};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistSpec(pub Distribution);

impl DistSpec {
    pub fn distribution(&self) -> &Distribution {
        &self.0
    }
}

impl FromStr for DistSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| CliError::Usage(format!("bad distribution spec {s:?}: {why}"));
        let (name, params) = s.split_once(':').ok_or_else(|| bad("expected name:params"))?;
        let values = params
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad("parameters must be numbers")))
            .collect::<Result<Vec<_>, _>>()?;
        let family = match (name.trim().to_ascii_lowercase().as_str(), values.as_slice()) {
            ("normal", &[mu, sigma]) => Family::Normal { mu, sigma },
            ("laplace", &[mu, b]) => Family::Laplace { mu, b },
            ("alaplace", &[mu, b, kappa]) => Family::AsymmetricLaplace { mu, b, kappa },
            ("normal" | "laplace", _) => return Err(bad("expected 2 parameters")),
            ("alaplace", _) => return Err(bad("expected 3 parameters")),
            _ => return Err(bad("unknown family (normal, laplace, alaplace)")),
        };
        Distribution::new(family)
            .map(DistSpec)
            .map_err(|e| bad(&e.to_string()))
    }
}

impl fmt::Display for DistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.family() {
            Family::Normal { mu, sigma } => write!(f, "normal:{mu},{sigma}"),
            Family::Laplace { mu, b } => write!(f, "laplace:{mu},{b}"),
            Family::AsymmetricLaplace { mu, b, kappa } => write!(f, "alaplace:{mu},{b},{kappa}"),
        }
    }
}
