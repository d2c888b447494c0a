//! Short inline identifiers for named parameters (edge weights, series variables).

use std::fmt;

pub const MAX_NAME_LEN: usize = 15;

/// An inline ASCII identifier of at most 15 bytes.
///
/// Kept inline (no heap) so that [`crate::symbolic::Variable`] stays `Copy`
/// and cheap to compare inside monomial arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name {
    len: u8,
    bytes: [u8; MAX_NAME_LEN],
}

impl Name {
    /// Parse an identifier: `[A-Za-z][A-Za-z0-9_]*`, at most 15 bytes.
    pub fn new(s: &str) -> Result<Self, NameError> {
        let b = s.as_bytes();
        if b.is_empty() {
            return Err(NameError::Empty);
        }
        if b.len() > MAX_NAME_LEN {
            return Err(NameError::TooLong(s.to_owned()));
        }
        if !b[0].is_ascii_alphabetic() {
            return Err(NameError::BadChar(s.to_owned()));
        }
        if !b.iter().all(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            return Err(NameError::BadChar(s.to_owned()));
        }
        let mut bytes = [0u8; MAX_NAME_LEN];
        bytes[..b.len()].copy_from_slice(b);
        Ok(Name {
            len: b.len() as u8,
            bytes,
        })
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.bytes[..self.len as usize]).unwrap()
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_str())
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum NameError {
    #[error("empty identifier")]
    Empty,
    #[error("identifier too long (max 15 bytes): {0}")]
    TooLong(String),
    #[error("identifier must match [A-Za-z][A-Za-z0-9_]*: {0}")]
    BadChar(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let n = Name::new("t1").unwrap();
        assert_eq!(n.as_str(), "t1");
        assert!(Name::new("").is_err());
        assert!(Name::new("1t").is_err());
        assert!(Name::new("a_very_long_name_x").is_err());
    }
}
