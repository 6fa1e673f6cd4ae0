use alloc::string::String;
use core::fmt;

/// Errors surfaced by exact representation and character computations.
///
/// `TheoremViolation` is a distinguished class: it reports that a verified
/// mathematical identity failed on concrete data, not that an input was
/// malformed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A rational function could not be brought to monic/coprime normal form.
    InvalidRationalFunction(&'static str),
    /// No rational function of numerator/denominator degree at most `max_deg`
    /// matches the supplied expansion coefficients.
    PadeFailure { max_deg: usize },
    /// An operator needed a full rational eigenvalue decomposition but its
    /// spectrum does not lie in the rationals.
    NonRationalSpectrum,
    /// Generator matrices do not respect the weight grading induced by `H_0`.
    UngradedModule,
    /// Raw generator matrices violate a defining constraint.
    InvalidModule(&'static str),
    /// The seed subspace of a quotient is not stable under the action.
    SubspaceNotInvariant,
    /// The module has no generating highest-weight vector.
    NotHighestWeight,
    /// A harvested eigenvalue sequence does not come from any polynomial.
    InconsistentEigenvalues(String),
    /// A character ratio that should divide exactly does not.
    InexactCharacterDivision(&'static str),
    /// A character term restricts to a non-integer weight.
    NonIntegerWeight,
    /// A proved identity failed on concrete data.
    TheoremViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidRationalFunction(why) => {
                write!(f, "invalid rational function: {}", why)
            }
            Error::PadeFailure { max_deg } => write!(
                f,
                "no rational function of degree <= {} matches the series",
                max_deg
            ),
            Error::NonRationalSpectrum => write!(f, "operator spectrum is not rational"),
            Error::UngradedModule => {
                write!(f, "generator matrices do not respect the H_0 weight grading")
            }
            Error::InvalidModule(why) => write!(f, "invalid module data: {}", why),
            Error::SubspaceNotInvariant => write!(f, "subspace is not invariant under the action"),
            Error::NotHighestWeight => write!(f, "module is not a highest-weight module"),
            Error::InconsistentEigenvalues(why) => {
                write!(f, "inconsistent eigenvalue sequence: {}", why)
            }
            Error::InexactCharacterDivision(why) => {
                write!(f, "inexact character division: {}", why)
            }
            Error::NonIntegerWeight => write!(f, "character term has a non-integer weight"),
            Error::TheoremViolation(why) => write!(f, "theorem violation: {}", why),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
