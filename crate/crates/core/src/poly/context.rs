use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered, immutable list of coordinate names shared by every polynomial
/// built over it. Cloning is cheap.
#[derive(Clone)]
pub struct VarContext {
    names: Arc<[String]>,
}

impl VarContext {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("`{n}` is not a valid variable name"),
                });
            }
            if names[..i].contains(n) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        Ok(VarContext {
            names: names.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))
    }

    pub(crate) fn check_same(&self, other: &VarContext) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for VarContext {}

impl fmt::Debug for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarContext({})", self.names.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(matches!(
            VarContext::new(["x", "x"]),
            Err(Error::DuplicateVariable(_))
        ));
        assert!(VarContext::new(["1x"]).is_err());
        let ctx = VarContext::new(["x1", "x_2"]).unwrap();
        assert_eq!(ctx.index_of("x_2"), Some(1));
        assert!(ctx.require("z").is_err());
    }

    #[test]
    fn equality_is_by_names() {
        let a = VarContext::new(["x", "y"]).unwrap();
        let b = VarContext::new(["x", "y"]).unwrap();
        let c = VarContext::new(["y", "x"]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
