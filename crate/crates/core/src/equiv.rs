//! Right and contact equivalence.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::grading::GrMode;
use crate::localalg;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equivalence {
    Right,
    #[default]
    Contact,
}

impl Equivalence {
    /// The expected-valuation graded mode matching this equivalence.
    pub fn graded_mode(self) -> GrMode {
        match self {
            Equivalence::Right => GrMode::A,
            Equivalence::Contact => GrMode::AC,
        }
    }

    /// `μ(f)` for right, `τ(f)` for contact equivalence.
    pub fn invariant(self, f: &Poly) -> Result<ExtNat> {
        match self {
            Equivalence::Right => localalg::milnor(f),
            Equivalence::Contact => localalg::tjurina(f),
        }
    }

    pub fn invariant_name(self) -> &'static str {
        match self {
            Equivalence::Right => "mu",
            Equivalence::Contact => "tau",
        }
    }
}

impl std::str::FromStr for Equivalence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "right" => Ok(Equivalence::Right),
            "contact" => Ok(Equivalence::Contact),
            _ => Err(Error::InvalidArgument(format!("mode must be right or contact, got {s:?}"))),
        }
    }
}
