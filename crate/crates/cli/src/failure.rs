use std::fmt;

/// Exit statuses, also listed in the README.
pub const EXIT_INFEASIBLE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_ORACLE_LIMIT: u8 = 3;
pub const EXIT_INTERNAL: u8 = 70;

#[derive(Debug)]
pub enum Failure {
    /// Infeasible solution or a violated precondition.
    Infeasible(String),
    /// Bad flags, unreadable or malformed input.
    Usage(String),
    OracleLimit(String),
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Infeasible(_) => EXIT_INFEASIBLE,
            Failure::Usage(_) => EXIT_USAGE,
            Failure::OracleLimit(_) => EXIT_ORACLE_LIMIT,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Infeasible(m) | Failure::Usage(m) | Failure::OracleLimit(m) | Failure::Internal(m) => {
                f.write_str(m)
            }
        }
    }
}

impl From<tf2m::ParseError> for Failure {
    fn from(e: tf2m::ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<tf2m::ConfigError> for Failure {
    fn from(e: tf2m::ConfigError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<tf2m::SpecError> for Failure {
    fn from(e: tf2m::SpecError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<tf2m::ReportError> for Failure {
    fn from(e: tf2m::ReportError) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<tf2m::WitnessError> for Failure {
    fn from(e: tf2m::WitnessError) -> Self {
        if e.is_contract() {
            Failure::Infeasible(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}
