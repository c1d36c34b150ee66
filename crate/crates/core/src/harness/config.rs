use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Named property sets runnable from the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    OperatorLaws,
    SymbolLaws,
    OracleEquivalence,
    Ideal,
    Inverse,
    ExactSequence,
    FiltrationLemma,
    GlCase,
    Morphism,
    All,
}

impl Suite {
    /// Every concrete suite, in execution order for `all`.
    pub const CONCRETE: [Suite; 9] = [
        Suite::OperatorLaws,
        Suite::SymbolLaws,
        Suite::OracleEquivalence,
        Suite::Ideal,
        Suite::Inverse,
        Suite::ExactSequence,
        Suite::FiltrationLemma,
        Suite::GlCase,
        Suite::Morphism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OperatorLaws => "operator-laws",
            Suite::SymbolLaws => "symbol-laws",
            Suite::OracleEquivalence => "oracle-equivalence",
            Suite::Ideal => "ideal",
            Suite::Inverse => "inverse",
            Suite::ExactSequence => "exact-sequence",
            Suite::FiltrationLemma => "filtration-lemma",
            Suite::GlCase => "gl-case",
            Suite::Morphism => "morphism",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::CONCRETE
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|suite| suite.name() == s)
            .copied()
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Base dimension `m`.
    pub base_dim: usize,
    /// Bundle rank `n`.
    pub rank: usize,
    pub max_xdeg: u32,
    pub max_order: u32,
    pub trials: usize,
    pub seed: u64,
    /// Random morphisms drawn by the morphism suite.
    pub specs: usize,
    /// Random pairs checked per morphism.
    pub pairs: usize,
    /// Highest degree covered by the exact-sequence basis check.
    pub max_exact_degree: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            base_dim: 2,
            rank: 2,
            max_xdeg: 2,
            max_order: 3,
            trials: 200,
            seed: 0,
            specs: 50,
            pairs: 50,
            max_exact_degree: 4,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.base_dim < 1 {
            return Err(Error::Config("base dimension must be at least 1".into()));
        }
        if self.rank < 2 {
            return Err(Error::Config("rank must be at least 2".into()));
        }
        if self.trials < 1 || self.specs < 1 || self.pairs < 1 {
            return Err(Error::Config("trial counts must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::CONCRETE {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn validation() {
        assert!(SuiteConfig::default().validate().is_ok());
        let bad = SuiteConfig { rank: 1, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = SuiteConfig { base_dim: 0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = SuiteConfig { trials: 0, ..Default::default() };
        assert!(bad.validate().is_err());
    }
}
