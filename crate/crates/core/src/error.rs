use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Mathematical outcomes (a monomial that evaluates to zero, an unbalanced
/// tree) are values, not errors. Errors are reserved for malformed input
/// and violated preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("invalid label set: {0}")]
    Label(String),

    #[error("cuts live over different label sets")]
    MismatchedLabelSets,

    #[error("monomial is not a tree monomial: {0} and {1} cross")]
    NotATreeMonomial(String, String),

    #[error("the empty monomial over {0} labels has no loaded tree (needs exactly 3)")]
    EmptyMonomialBadN(usize),

    #[error("a single vertex with {0} labels has no monomial (needs exactly 3)")]
    NoCorrespondingMonomial(usize),

    #[error("invalid loaded tree: {0}")]
    InvalidTree(String),

    #[error("not proper: {0}")]
    NotProper(String),

    #[error("quadruple labels must be distinct, got {0:?}")]
    DuplicateLabels([u32; 4]),

    #[error("quadruple {0:?} is not proper for cut {1}")]
    ImproperQuadruple([u32; 4], String),

    #[error("factor {cut} has exponent {exponent}, reduction needs at least 2")]
    ExponentTooLow { cut: String, exponent: u32 },

    #[error("invalid vertex-split choice: {0}")]
    InvalidChoice(String),

    #[error("edge {edge} has multiplicity {multiplicity}, expected a single edge")]
    NotSingleEdge { edge: usize, multiplicity: u32 },

    #[error("edge {edge} has multiplicity 1, expected a multi-edge")]
    NotMultiEdge { edge: usize },

    #[error("star cuts need at least 3 vertices, tree has {0}")]
    TooSmall(usize),

    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no such {kind} {id}")]
    NoSuchElement { kind: &'static str, id: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
