use crate::system::CanonicalTriple;
use crate::tournament::Vortex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("triple ({0}, {1}, {2}) has duplicate entries")]
    DuplicateTriplePoints(usize, usize, usize),

    #[error("point {point} out of range for a ground set of {n} points")]
    PointOutOfRange { point: usize, n: usize },

    #[error("conflicting assignment for triple {triple}: the data contradicts antisymmetry")]
    ConflictingAssignment { triple: CanonicalTriple },

    #[error("points {0}, {1}, {2} are collinear")]
    CollinearTriple(usize, usize, usize),

    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),

    #[error("system is incomplete ({unassigned} triples unassigned)")]
    IncompleteSystem { unassigned: usize },

    #[error("assigned triple {triple} does not contain the apex point {apex}")]
    NonApexSystem { triple: CanonicalTriple, apex: usize },

    #[error("arcs {{{0}, {1}}} and {{{2}, {3}}} share a vertex")]
    OverlappingArcs(usize, usize, usize, usize),

    #[error("arc {0} -> {1} present in both directions")]
    TwoCycle(usize, usize),

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("ground set of {n} points too large for exhaustive enumeration (max {max})")]
    GroundSetTooLarge { n: usize, max: usize },

    #[error("{count} unassigned triples exceed the brute-force limit of {max}")]
    TooManyFreeTriples { count: usize, max: usize },

    #[error("tournament is not vortex-free: {0}")]
    NotVortexFree(Vortex),

    #[error("no completion found for a vortex-free tournament lift")]
    LiftFailed,

    #[error("search inconclusive: decision limit of {limit} reached")]
    Inconclusive { limit: u64 },

    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("malformed DIMACS: {0}")]
    MalformedDimacs(String),
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Error {
        Error::AtLine {
            line,
            source: Box::new(self),
        }
    }
}
