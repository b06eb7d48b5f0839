use thiserror::Error;

use crate::category::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("undeclared name `{0}`")]
    UndeclaredName(String),

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("category axioms violated ({} violations)", .0.violations.len())]
    InvalidCategory(ValidationReport),

    #[error("not an inverse category: `{morphism}` has {count} generalized inverses")]
    NotInverseCategory { morphism: String, count: usize },

    #[error("supplied inverse map disagrees with the computed one at `{0}`")]
    InverseMismatch(String),

    #[error("morphisms `{0}` and `{1}` are not parallel")]
    NotParallel(String, String),

    #[error("size cap exceeded for {what}: estimate {estimate} > cap {cap}")]
    SizeCapExceeded {
        what: &'static str,
        estimate: usize,
        cap: usize,
    },

    #[error("not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("not an order ideal: {0}")]
    NotIdeal(String),

    #[error("action is not global: {0}")]
    NotGlobal(String),

    #[error("invalid action ({} violations)", .0.violations.len())]
    InvalidAction(ValidationReport),

    #[error("not a functor: {0}")]
    NotAFunctor(String),

    #[error("`{0}` and `{1}` are not composable")]
    NotComposable(String, String),

    #[error("`{0}` is not idempotent")]
    NotIdempotent(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("not a subcategory: {0}")]
    NotASubcategory(String),

    #[error("dimension mismatch: {morphisms} morphisms but blocks account for {blocks}")]
    DimensionMismatch { morphisms: usize, blocks: usize },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UndeclaredName(_) => "UNDECLARED_NAME",
            Error::DuplicateName(_) => "DUPLICATE_NAME",
            Error::InvalidCategory(_) => "INVALID_CATEGORY",
            Error::NotInverseCategory { .. } => "NOT_INVERSE_CATEGORY",
            Error::InverseMismatch(_) => "INVERSE_MISMATCH",
            Error::NotParallel(..) => "NOT_PARALLEL",
            Error::SizeCapExceeded { .. } => "SIZE_CAP_EXCEEDED",
            Error::NotAPartialOrder(_) => "NOT_A_PARTIAL_ORDER",
            Error::NotIdeal(_) => "NOT_IDEAL",
            Error::NotGlobal(_) => "NOT_GLOBAL",
            Error::InvalidAction(_) => "INVALID_ACTION",
            Error::NotAFunctor(_) => "NOT_A_FUNCTOR",
            Error::NotComposable(..) => "NOT_COMPOSABLE",
            Error::NotIdempotent(_) => "NOT_IDEMPOTENT",
            Error::PreconditionFailed(_) => "PRECONDITION_FAILED",
            Error::NotASubcategory(_) => "NOT_A_SUBCATEGORY",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::NotAGroup(_) => "NOT_A_GROUP",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::Io(_) => "IO_ERROR",
        }
    }
}

/// Size caps applied before any enumeration starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Cap on enumerated elements (Bernoulli points, expansion arrows, ...).
    pub max_elements: usize,
    /// Cap on the number of points of a poset whose ideals are enumerated.
    pub max_poset: usize,
    /// Cap on group order for isomorphism testing.
    pub max_group: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 1 << 16,
            max_poset: 8,
            max_group: 64,
        }
    }
}

impl Limits {
    pub fn with_max_elements(mut self, n: usize) -> Self {
        self.max_elements = n;
        self
    }

    pub(crate) fn check(&self, what: &'static str, estimate: usize, cap: usize) -> Result<()> {
        if estimate > cap {
            Err(Error::SizeCapExceeded {
                what,
                estimate,
                cap,
            })
        } else {
            Ok(())
        }
    }
}
