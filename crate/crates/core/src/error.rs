use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("team is empty")]
    EmptyTeam,

    #[error("degenerate params: d1 = {d1} does not reduce diam(G) = {diameter}")]
    DegenerateParams { d1: u32, diameter: u32 },

    #[error("no extension achieves target diameter {d1}: {reason}")]
    NoExtension { d1: u32, reason: String },

    #[error("repair failed: no removable member restores the team conditions")]
    RepairFailed { stuck: Vec<usize> },

    #[error("no l-HC team: {0}")]
    Infeasible(String),

    #[error("oracle cap exceeded: n = {n} > cap = {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("unsatisfiable generator parameters: {0}")]
    Unsatisfiable(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable identifier used in the CLI error envelope.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Disconnected { .. } => "disconnected",
            Error::EmptyTeam => "empty_team",
            Error::DegenerateParams { .. } => "degenerate_params",
            Error::NoExtension { .. } => "no_extension",
            Error::RepairFailed { .. } => "repair_failed",
            Error::Infeasible(_) => "infeasible",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Unsatisfiable(_) => "unsatisfiable",
            Error::Internal(_) => "internal",
            Error::Io(_) => "io",
        }
    }

    /// Process exit status: 1 usage/parse, 2 infeasible, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoExtension { .. } | Error::RepairFailed { .. } | Error::Infeasible(_) => 2,
            Error::Internal(_) => 3,
            _ => 1,
        }
    }
}
