use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Verified,
    Failed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Failed => "failed",
        }
    }
}

/// Where a residual first turned out nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Failure {
    /// Family index of the failing instance.
    pub n: Option<usize>,
    pub t_order: Option<usize>,
    pub eta_order: Option<usize>,
    /// Power of `x` carrying the first nonzero residual coefficient.
    pub x_degree: Option<usize>,
    /// Rendered residual (coefficient or polynomial).
    pub residual: String,
}

/// Outcome of checking one identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: String,
    pub status: Status,
    /// Truncation order, or the largest index checked.
    pub order: usize,
    pub first_failure: Option<Failure>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn verified(identity: impl Into<String>, order: usize) -> Self {
        VerificationReport {
            identity: identity.into(),
            status: Status::Verified,
            order,
            first_failure: None,
            notes: Vec::new(),
        }
    }

    pub fn failed(identity: impl Into<String>, order: usize, failure: Failure) -> Self {
        VerificationReport {
            identity: identity.into(),
            status: Status::Failed,
            order,
            first_failure: Some(failure),
            notes: Vec::new(),
        }
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}
