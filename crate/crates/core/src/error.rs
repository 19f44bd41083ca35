use thiserror::Error;

/// Errors raised while validating or constructing structures.
///
/// Witnesses are rendered as strings naming the offending objects and
/// morphisms, so that failures can be reported verbatim by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("missing composite for composable pair ({g} . {f})")]
    MissingComposite { g: String, f: String },

    #[error("category law violated: {law} (witness: {witness})")]
    LawViolation { law: String, witness: String },

    #[error("endpoint mismatch: {detail}")]
    EndpointMismatch { detail: String },

    #[error("not a functor: {law} fails (witness: {witness})")]
    NotAFunctor { law: String, witness: String },

    #[error("axiom ({axiom}) violated (witness: {witness})")]
    AxiomViolation { axiom: u8, witness: String },

    #[error("object assignments of get and put disagree (witness: {witness})")]
    ObjectMismatch { witness: String },

    #[error("PutGet law violated (witness: {witness})")]
    PutGetViolation { witness: String },

    #[error("anchor tables disagree: {detail}")]
    AnchorMismatch { detail: String },

    #[error("span has the wrong shape: {detail}")]
    ShapeError { detail: String },

    #[error("precondition violated: {detail}")]
    PreconditionViolated { detail: String },

    #[error("pushout not saturated at bound {bound} ({} normal-form words so far)", word_counts.iter().sum::<usize>())]
    NotSaturated { bound: usize, word_counts: Vec<usize> },

    #[error("L does not apply at bound {bound}: pushout not saturated")]
    LInapplicableAtBound { bound: usize, word_counts: Vec<usize> },

    #[error("generation failed: {detail}")]
    GenerationFailed { detail: String },

    #[error("malformed document: {detail}")]
    Document { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn law(law: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::LawViolation { law: law.into(), witness: witness.into() }
    }

    pub fn axiom(axiom: u8, witness: impl Into<String>) -> Self {
        Error::AxiomViolation { axiom, witness: witness.into() }
    }

    pub fn precondition(detail: impl Into<String>) -> Self {
        Error::PreconditionViolated { detail: detail.into() }
    }

    pub fn shape(detail: impl Into<String>) -> Self {
        Error::ShapeError { detail: detail.into() }
    }
}
