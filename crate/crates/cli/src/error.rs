use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] vdw_core::Error),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("i/o: {0}")]
    Io(String),

    #[error("malformed table: {0}")]
    Table(String),

    #[error("{0} kernel self-test check(s) failed")]
    SelfTest(usize),
}

impl CliError {
    /// 2: configuration and usage, 3: accuracy, 4: internal consistency.
    pub fn exit_code(&self) -> u8 {
        use vdw_core::Error as E;
        match self {
            Self::Core(e) => match e {
                E::Config(_) | E::Domain(_) | E::BranchData { .. } | E::Fit(_) | E::DegenerateDirection => 2,
                E::Accuracy { .. } | E::Numeric(_) | E::TableRange { .. } => 3,
                E::Consistency { .. } => 4,
            },
            Self::Config(_) | Self::Usage(_) | Self::Io(_) | Self::Table(_) => 2,
            Self::SelfTest(_) => 4,
        }
    }
}
