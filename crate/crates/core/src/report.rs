//! Rows of verification reports.

use crate::error::Result;

/// One named identity with its failure detail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl Check {
    pub fn new(id: impl Into<String>, residual: Option<String>) -> Self {
        Check { id: id.into(), passed: residual.is_none(), detail: residual }
    }

    pub fn from_result(id: impl Into<String>, r: Result<()>) -> Self {
        Check::new(id, r.err().map(|e| e.to_string()))
    }
}


/// `None` when `ok`, otherwise the rendered value as the counterexample.
pub fn residual<T: std::fmt::Display>(ok: bool, value: &T) -> Option<String> {
    (!ok).then(|| value.to_string())
}
