use thiserror::Error;

/// Exit status for malformed or inconsistent input.
pub const EXIT_INVALID: u8 = 2;
/// Exit status when a computation's hypotheses do not hold.
pub const EXIT_PRECONDITION: u8 = 3;
/// Exit status when a check ran and failed.
pub const EXIT_VERDICT: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{input}: {source}")]
    Core {
        input: String,
        #[source]
        source: abelchi_core::Error,
    },
}

impl CliError {
    pub fn core(input: &str, source: abelchi_core::Error) -> Self {
        CliError::Core {
            input: input.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        use abelchi_core::Error as E;
        match self {
            CliError::Io { .. } => EXIT_INVALID,
            CliError::Core { source, .. } => match source {
                E::PrecondViolation(_)
                | E::AbsNotStabilized
                | E::DenVanishesAtZero
                | E::NonPeriodicDelta
                | E::NoConvergence
                | E::Uncertifiable(_) => EXIT_PRECONDITION,
                _ => EXIT_INVALID,
            },
        }
    }
}
