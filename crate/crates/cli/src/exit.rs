//! Process exit codes. Usage errors exit with 2 (from clap).

use phz_core::Error;

pub const OK: u8 = 0;
/// A check ran and at least one assertion failed or was undecided.
pub const FAILED: u8 = 1;
pub const UNKNOWN_GROUP: u8 = 3;
/// Bad prime, bad number, or other malformed input.
pub const MALFORMED: u8 = 4;
pub const CAP_EXCEEDED: u8 = 5;
pub const CORPUS_INTEGRITY: u8 = 6;
pub const PRECONDITION: u8 = 7;
pub const SCHEMA: u8 = 8;
pub const IO: u8 = 9;
/// Arithmetic, orthogonality or internal inconsistency.
pub const INTERNAL: u8 = 10;

pub fn code_for(e: &Error) -> u8 {
    match e {
        Error::UnknownGroup(_) => UNKNOWN_GROUP,
        Error::MalformedInput(_) => MALFORMED,
        Error::ResourceExceeded { .. } => CAP_EXCEEDED,
        Error::CorpusIntegrity { .. } => CORPUS_INTEGRITY,
        Error::Precondition(_) => PRECONDITION,
        Error::Schema(_) => SCHEMA,
        Error::Io(_) => IO,
        Error::Arithmetic(_) | Error::NonIntegral(_) | Error::Orthogonality(_) | Error::Internal(_) => INTERNAL,
    }
}

pub fn kind(e: &Error) -> &'static str {
    match e {
        Error::UnknownGroup(_) => "unknown_group",
        Error::MalformedInput(_) => "malformed_input",
        Error::ResourceExceeded { .. } => "cap_exceeded",
        Error::CorpusIntegrity { .. } => "corpus_integrity",
        Error::Precondition(_) => "precondition",
        Error::Schema(_) => "schema",
        Error::Io(_) => "io",
        Error::Arithmetic(_) => "arithmetic",
        Error::NonIntegral(_) => "non_integral",
        Error::Orthogonality(_) => "orthogonality",
        Error::Internal(_) => "internal",
    }
}
