use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::TaxonError;

/// Characters that may never appear in a taxon name. They are the structural
/// characters of the small-net and extended Newick grammars.
pub const RESERVED_CHARS: &[char] = &['(', ')', ',', ';', '#'];

/// A leaf label.
///
/// Cheap to clone; names are interned behind an `Arc`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Taxon(Arc<str>);

/// A finite set of taxa, iterated in name order.
pub type TaxaSet = BTreeSet<Taxon>;

impl Taxon {
    pub fn new(name: &str) -> Result<Self, TaxonError> {
        if name.is_empty() {
            return Err(TaxonError::Empty);
        }
        if let Some(c) = name
            .chars()
            .find(|c| c.is_whitespace() || RESERVED_CHARS.contains(c))
        {
            return Err(TaxonError::ReservedChar {
                name: name.to_string(),
                ch: c,
            });
        }
        Ok(Taxon(Arc::from(name)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for Taxon {
    type Err = TaxonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Taxon::new(s)
    }
}

impl fmt::Display for Taxon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Taxon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl AsRef<str> for Taxon {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Builds a taxa set from names, panicking on invalid names. Intended for
/// tests and literals.
pub fn taxa<I, S>(names: I) -> TaxaSet
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    names
        .into_iter()
        .map(|n| Taxon::new(n.as_ref()).expect("valid taxon name"))
        .collect()
}

/// Shorthand for a single taxon literal.
pub fn taxon(name: &str) -> Taxon {
    Taxon::new(name).expect("valid taxon name")
}

pub(crate) fn format_set(set: &TaxaSet) -> String {
    let names: Vec<&str> = set.iter().map(Taxon::as_str).collect();
    format!("{{{}}}", names.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_reserved_and_whitespace() {
        assert!(Taxon::new("").is_err());
        assert!(Taxon::new("a b").is_err());
        assert!(Taxon::new("a,b").is_err());
        assert!(Taxon::new("x;").is_err());
        assert!(Taxon::new("(x").is_err());
        assert!(Taxon::new("x#H1").is_err());
        assert!(Taxon::new("u_1p").is_ok());
    }

    #[test]
    fn ordering_is_by_name() {
        let s = taxa(["c", "a", "b"]);
        let v: Vec<_> = s.iter().map(|t| t.as_str()).collect();
        assert_eq!(v, ["a", "b", "c"]);
        assert_eq!(format_set(&s), "{a,b,c}");
    }
}
