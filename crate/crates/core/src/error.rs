use thiserror::Error;

use crate::network::ValidationReport;
use crate::taxa::Taxon;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaxonError {
    #[error("taxon name is empty")]
    Empty,
    #[error("taxon name {name:?} contains reserved character {ch:?}")]
    ReservedChar { name: String, ch: char },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("arc ({0}, {1}) references a vertex that does not exist")]
    UnknownVertex(usize, usize),
    #[error("label on vertex {0} which does not exist")]
    UnknownLabelledVertex(usize),
    #[error("taxon set is empty")]
    EmptyTaxa,
    #[error("taxon {0} is not a leaf of the network")]
    UnknownTaxon(Taxon),
    #[error("invalid network: {0}")]
    Invalid(ValidationReport),
    #[error("network has {found} leaves, expected {expected}")]
    LeafCount { expected: String, found: usize },
    #[error("no catalog entry matches the network")]
    Unclassifiable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmallNetError {
    #[error("{shape} takes {expected} taxa, got {found}")]
    Arity {
        shape: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("taxon {0} appears twice")]
    RepeatedTaxon(Taxon),
    #[error("taxon {0} is not in the declared taxa set")]
    Undeclared(Taxon),
    #[error("unknown small-net shape {0:?}")]
    UnknownShape(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{0} is not a binet")]
    NotABinet(String),
    #[error("{0} is not a tiny-cycle small net")]
    NotTinyCycle(String),
    #[error("input network {index} is invalid: {report}")]
    InvalidInput {
        index: usize,
        report: ValidationReport,
    },
    #[error("input network {0} has fewer than two leaves")]
    TooFewLeaves(usize),
    #[error("taxa set has {found} taxa, limit is {limit}")]
    TooManyTaxa { found: usize, limit: usize },
    #[error("the taxa set is empty")]
    EmptyTaxa,
    #[error("guess budget must be at least 1")]
    ZeroBudget,
    #[error("invalid decomposition: {0}")]
    InvalidGuess(String),
    #[error(transparent)]
    SmallNet(#[from] SmallNetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HardnessError {
    #[error("universe is empty")]
    EmptyUniverse,
    #[error("element {0:?} is listed twice in the universe")]
    DuplicateElement(String),
    #[error("triple {0} does not have three distinct universe elements")]
    BadTriple(usize),
    #[error("instance has no triples")]
    NoTriples,
    #[error("generated taxon name {0:?} collides with another")]
    NameCollision(String),
    #[error("element name {0:?} is not usable as a taxon prefix")]
    BadElementName(String),
    #[error("universe has {found} elements, limit is {limit}")]
    TooLarge { found: usize, limit: usize },
    #[error("network does not display the reduced trinet set")]
    NotDisplayed,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Error from one of the text formats, with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}
