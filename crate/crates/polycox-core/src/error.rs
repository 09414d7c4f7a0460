use thiserror::Error;

/// Every failure the engine can report.
///
/// The variants are coarse on purpose: the command-line front end maps them
/// onto a handful of exit codes, and tests match on the variant only.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: unknown generator, bad JSON shape, ill-formed rule.
    #[error("input error: {0}")]
    Input(String),

    /// A rewriting step does not apply where it claims to.
    #[error("step error: {0}")]
    Step(String),

    /// Two paths were composed whose boundaries do not meet.
    #[error("composition error: {0}")]
    Composition(String),

    /// Normalization did not finish within the step budget.
    #[error("step budget of {0} exceeded while normalizing (the system may not terminate)")]
    StepBudget(usize),

    /// Completion produced too many rules or processed too many branchings.
    #[error("completion diverged: {0}")]
    Divergence(String),

    /// The termination order cannot orient a new rule.
    #[error("cannot orient {0} against {1} with the given order")]
    Orientation(String, String),

    /// A rule of the input is not decreasing for the declared order.
    #[error("termination check failed for rules: {0:?}")]
    Termination(Vec<String>),

    /// A 3-cell needed for a branching is missing, or a sphere does not close.
    #[error("coherence error: {0}")]
    Coherence(String),

    /// A Garside 3-cell matched none of the known families.
    #[error("classification error: {0}")]
    Classification(String),

    /// The recursive projection did not ground.
    #[error("cycle detected while projecting: {0}")]
    Cycle(String),

    /// A collapsible part failed validation.
    #[error("invalid collapsible part: {}", .0.join("; "))]
    InvalidPart(Vec<String>),

    /// Coset enumeration hit its cap without closing.
    #[error("coset enumeration did not close within {0} cosets (group infinite or too large)")]
    InfiniteOrUnknown(usize),

    /// A complement was requested for a non-divisor.
    #[error("divisibility error: {0}")]
    Divisibility(String),

    /// A precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
