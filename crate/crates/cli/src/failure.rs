use amoeba_core::algebra::AlgebraError;
use amoeba_core::basis::BasisError;
use amoeba_core::io::{ErrorDocument, IoError};
use amoeba_core::line::LineError;
use amoeba_core::sampling::SamplingError;
use amoeba_core::semialg::SemialgError;

/// Exit status 2 for unreadable or malformed input, 1 for domain errors.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Domain { kind: &'static str, message: String },
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Domain { .. } => 1,
        }
    }

    pub fn document(&self) -> ErrorDocument {
        match self {
            Failure::Input(m) => ErrorDocument::new("input", m),
            Failure::Domain { kind, message } => ErrorDocument::new(*kind, message),
        }
    }

    pub fn input(msg: impl std::fmt::Display) -> Self {
        Failure::Input(msg.to_string())
    }
}

macro_rules! domain {
    ($($ty:ty => $kind:literal),* $(,)?) => {$(
        impl From<$ty> for Failure {
            fn from(e: $ty) -> Self {
                Failure::Domain { kind: $kind, message: e.to_string() }
            }
        }
    )*};
}

domain! {
    AlgebraError => "algebra",
    LineError => "line",
    SemialgError => "semialg",
    SamplingError => "sampling",
    BasisError => "basis",
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::input(e)
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::NotPlanar(_) => Failure::Domain { kind: "io", message: e.to_string() },
            other => Failure::input(other),
        }
    }
}
