use std::fmt;
use std::str::FromStr;

use orthopath::bijection::GammaSpec;
use orthopath::orthopoly::RecurrenceSpec;
use orthopath::{Indet, Poly, Rat};

/// Family selector: `hermite`, `symbolic`, `symbolic-lambda`,
/// `laguerre:alpha` or `laguerre:<p/q>`.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Hermite,
    Symbolic,
    SymbolicLambda,
    Laguerre(Poly),
}

impl Family {
    pub fn spec(&self) -> RecurrenceSpec {
        match self {
            Family::Hermite => RecurrenceSpec::hermite(),
            Family::Symbolic => RecurrenceSpec::symbolic(),
            Family::SymbolicLambda => RecurrenceSpec::symbolic_lambda(),
            Family::Laguerre(a) => RecurrenceSpec::laguerre(a.clone()),
        }
    }

    /// Families with b ≡ 0. The fully symbolic family is read as its b = 0
    /// specialization.
    pub fn b_zero(&self) -> Option<Family> {
        match self {
            Family::Hermite | Family::SymbolicLambda => Some(self.clone()),
            Family::Symbolic => Some(Family::SymbolicLambda),
            Family::Laguerre(_) => None,
        }
    }

    /// A γ decomposition together with the family it induces.
    pub fn gamma(&self) -> Option<(RecurrenceSpec, GammaSpec)> {
        match self {
            Family::Laguerre(a) => Some((self.spec(), GammaSpec::laguerre(a.clone()))),
            Family::Symbolic => {
                let g = GammaSpec::symbolic();
                Some((g.induced_spec(), g))
            }
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Hermite => f.write_str("hermite"),
            Family::Symbolic => f.write_str("symbolic"),
            Family::SymbolicLambda => f.write_str("symbolic-lambda"),
            Family::Laguerre(a) => write!(f, "laguerre:{a}"),
        }
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "hermite" => Ok(Family::Hermite),
            "symbolic" => Ok(Family::Symbolic),
            "symbolic-lambda" => Ok(Family::SymbolicLambda),
            "laguerre:alpha" => Ok(Family::Laguerre(Poly::var(Indet::Alpha))),
            other => {
                let alpha = other
                    .strip_prefix("laguerre:")
                    .ok_or_else(|| format!("unknown family `{other}`"))?;
                let value: Rat = alpha.parse().map_err(|_| format!("bad Laguerre parameter `{alpha}`"))?;
                Ok(Family::Laguerre(Poly::constant(value)))
            }
        }
    }
}
