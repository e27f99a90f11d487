use std::sync::Arc;

use crate::expr::BUILTINS;
use crate::Error;

/// Ordered coordinate names plus the opaque function names allowed in
/// expressions. Tensors share a chart through an `Arc`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    coords: Vec<String>,
    opaque: Vec<String>,
}

/// Blades are bitmasks, which caps the dimension.
pub const MAX_DIM: usize = 64;

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Chart {
    pub fn new<S: Into<String>>(coords: impl IntoIterator<Item = S>) -> Result<Arc<Chart>, Error> {
        Self::with_opaque(coords, std::iter::empty::<String>())
    }

    pub fn with_opaque<S: Into<String>, T: Into<String>>(
        coords: impl IntoIterator<Item = S>,
        opaque: impl IntoIterator<Item = T>,
    ) -> Result<Arc<Chart>, Error> {
        let coords: Vec<String> = coords.into_iter().map(Into::into).collect();
        let opaque: Vec<String> = opaque.into_iter().map(Into::into).collect();
        if coords.is_empty() {
            return Err(Error::Chart("at least one coordinate is required".into()));
        }
        if coords.len() > MAX_DIM {
            return Err(Error::Chart(format!("dimension {} exceeds {MAX_DIM}", coords.len())));
        }
        let mut seen = std::collections::HashSet::new();
        for name in coords.iter().chain(opaque.iter()) {
            if !valid_ident(name) {
                return Err(Error::Chart(format!("`{name}` is not a valid identifier")));
            }
            if BUILTINS.contains(&name.as_str()) {
                return Err(Error::Chart(format!("`{name}` is reserved")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::Chart(format!("name `{name}` declared twice")));
            }
        }
        Ok(Arc::new(Chart { coords, opaque }))
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn opaque(&self) -> &[String] {
        &self.opaque
    }

    pub fn coord_name(&self, i: usize) -> &str {
        &self.coords[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }

    pub fn is_opaque(&self, name: &str) -> bool {
        self.opaque.iter().any(|c| c == name)
    }
}

pub fn same_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_charts() {
        assert!(Chart::new(Vec::<String>::new()).is_err());
        assert!(Chart::new(["x", "x"]).is_err());
        assert!(Chart::new(["1x"]).is_err());
        assert!(Chart::with_opaque(["x"], ["sin"]).is_err());
        assert!(Chart::with_opaque(["x"], ["x"]).is_err());
    }

    #[test]
    fn lookup() {
        let c = Chart::with_opaque(["x", "y"], ["f"]).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.index_of("y"), Some(1));
        assert!(c.is_opaque("f"));
        assert!(!c.is_opaque("x"));
    }
}
