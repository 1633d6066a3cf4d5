use std::fmt;
use std::sync::Arc;

use super::PolyError;

/// Shared handle to the coordinate ring every polynomial lives in.
pub type Ring = Arc<RingContext>;

/// Ordered list of coordinate names `x_1, ..., x_N` of `(C^N, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    variables: Vec<String>,
}

impl RingContext {
    pub fn new<I, S>(variables: I) -> Result<Ring, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        if variables.is_empty() {
            return Err(PolyError::EmptyRing);
        }
        for (i, name) in variables.iter().enumerate() {
            if !is_identifier(name) {
                return Err(PolyError::InvalidVariable(name.clone()));
            }
            if variables[..i].contains(name) {
                return Err(PolyError::DuplicateVariable(name.clone()));
            }
        }
        Ok(Arc::new(RingContext { variables }))
    }

    /// Ring with variables `x1, ..., xn`.
    pub fn numbered(n: usize) -> Ring {
        RingContext::new((1..=n).map(|i| format!("x{i}"))).expect("n >= 1")
    }

    pub fn dimension(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.variables.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
