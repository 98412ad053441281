use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("term syntax error at byte {position}: {message}")]
    TermSyntax { position: usize, message: String },

    #[error("graph syntax error on line {line}: {message}")]
    GraphSyntax { line: usize, message: String },

    #[error("invalid DFS tree: {0}")]
    InvalidTree(String),

    #[error("invalid zag sequence: {0}")]
    InvalidZag(String),

    #[error("invalid Dyck path: {0}")]
    InvalidDyck(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("enumerating size {n} needs {count} trees, above the cap of {cap}")]
    TreeBudget { n: usize, count: String, cap: u64 },

    #[error("homomorphism set exceeds the cap of {cap} maps")]
    HomBudget { cap: u64 },

    #[error("term-table oracle needs {work} evaluations, above the cap of {cap}")]
    OracleBudget { work: String, cap: u64 },

    #[error("spectrum stopped after n = {completed}: {source}")]
    SpectrumIncomplete {
        completed: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("bracketings have different sizes ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("edge relation is not symmetric: ({from}, {to}) has no reverse edge")]
    Asymmetric { from: String, to: String },

    #[error("component {0} is a trivial strongly connected component")]
    TrivialComponent(usize),

    #[error("tree pair parameters are undefined for identical trees")]
    IdenticalTrees,

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("graph is antiassociative; no nontrivial bracketing identity holds")]
    Antiassociative,

    #[error("not a two-vertex graph from the ten isomorphism classes: {0}")]
    UnknownTwoVertexCase(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for any of the explosion guards, including a spectrum cut short by one.
    pub fn is_budget(&self) -> bool {
        match self {
            Error::TreeBudget { .. } | Error::HomBudget { .. } | Error::OracleBudget { .. } => true,
            Error::SpectrumIncomplete { source, .. } => source.is_budget(),
            _ => false,
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::TermSyntax { .. } | Error::GraphSyntax { .. } | Error::InvalidZag(_) | Error::InvalidDyck(_)
        )
    }
}
