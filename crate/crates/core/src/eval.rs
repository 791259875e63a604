//! Sandboxed execution and scoring of migrated test suites.

use serde::{Deserialize, Serialize};

/// Why a migrated suite failed, bucketed into the six recurring failure
/// shapes. Buckets are checked in a fixed precedence order; runs that fit
/// none of them are recorded as unclassifiable rather than forced into a
/// bucket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ErrorCategory {
    AssertionError,
    StructuralMismatch,
    MissingFixtures,
    TypeError,
    SignatureDrift,
    SyntaxError,
}

impl ErrorCategory {
    pub const ALL: [ErrorCategory; 6] = [
        ErrorCategory::AssertionError,
        ErrorCategory::StructuralMismatch,
        ErrorCategory::MissingFixtures,
        ErrorCategory::TypeError,
        ErrorCategory::SignatureDrift,
        ErrorCategory::SyntaxError,
    ];
}

impl std::fmt::Display for ErrorCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ErrorCategory::AssertionError => "AssertionError",
            ErrorCategory::StructuralMismatch => "StructuralMismatch",
            ErrorCategory::MissingFixtures => "MissingFixtures",
            ErrorCategory::TypeError => "TypeError",
            ErrorCategory::SignatureDrift => "SignatureDrift",
            ErrorCategory::SyntaxError => "SyntaxError",
        };
        f.write_str(name)
    }
}
