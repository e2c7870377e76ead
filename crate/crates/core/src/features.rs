//! Flat attribute-value sets with atomic values.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// A flat feature structure: attribute names mapped to atomic values.
///
/// Entries are kept sorted by attribute, so equality, ordering and the
/// textual form are all canonical.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FeatureSet {
    entries: BTreeMap<String, String>,
}

/// Two sets disagree on the value of one attribute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clash {
    pub attribute: String,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Clash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "feature clash on `{}`: {} vs {}",
            self.attribute, self.left, self.right
        )
    }
}

/// Rejected attribute or value text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidFeature(pub String);

impl fmt::Display for InvalidFeature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid feature text `{}`", self.0)
    }
}

fn well_formed(s: &str) -> bool {
    !s.is_empty()
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '=' | ',' | '{' | '}'))
}

impl FeatureSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a set from `(attribute, value)` pairs. Later duplicates of an
    /// attribute overwrite earlier ones.
    pub fn from_pairs<'a, I>(pairs: I) -> Result<Self, InvalidFeature>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut set = Self::new();
        for (k, v) in pairs {
            set.insert(k, v)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, attribute: &str, value: &str) -> Result<(), InvalidFeature> {
        if !well_formed(attribute) {
            return Err(InvalidFeature(attribute.to_string()));
        }
        if !well_formed(value) {
            return Err(InvalidFeature(value.to_string()));
        }
        self.entries.insert(attribute.to_string(), value.to_string());
        Ok(())
    }

    pub fn get(&self, attribute: &str) -> Option<&str> {
        self.entries.get(attribute).map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// True when `unify` would succeed, without allocating the result.
    pub fn compatible(&self, other: &FeatureSet) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .entries
            .iter()
            .all(|(k, v)| large.entries.get(k).map_or(true, |w| w == v))
    }

    /// Flat unification: the union of both sets, or the first clashing
    /// attribute.
    pub fn unify(&self, other: &FeatureSet) -> Result<FeatureSet, Clash> {
        let mut out = self.clone();
        for (k, v) in &other.entries {
            match out.entries.get(k) {
                Some(w) if w != v => {
                    return Err(Clash {
                        attribute: k.clone(),
                        left: w.clone(),
                        right: v.clone(),
                    })
                }
                Some(_) => {}
                None => {
                    out.entries.insert(k.clone(), v.clone());
                }
            }
        }
        Ok(out)
    }

    /// Attributes in sorted order.
    pub fn attributes(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }
}

/// Free-function form of [`FeatureSet::unify`].
pub fn unify(a: &FeatureSet, b: &FeatureSet) -> Result<FeatureSet, Clash> {
    a.unify(b)
}

impl fmt::Display for FeatureSet {
    /// `{k=v,k2=v2}`; the empty set prints as `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}={}", k, v)?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(pairs: &[(&str, &str)]) -> FeatureSet {
        FeatureSet::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn empty_is_identity() {
        let acc = fs(&[("case", "acc")]);
        assert_eq!(acc.unify(&FeatureSet::new()).unwrap(), acc);
    }

    #[test]
    fn atomic_clash_fails() {
        let err = fs(&[("case", "acc")])
            .unify(&fs(&[("case", "nom")]))
            .unwrap_err();
        assert_eq!(err.attribute, "case");
    }

    #[test]
    fn overlap_is_idempotent() {
        let a = fs(&[("case", "acc"), ("fin", "no")]);
        assert_eq!(a.unify(&fs(&[("fin", "no")])).unwrap(), a);
    }

    #[test]
    fn rejects_whitespace_and_empty() {
        let mut s = FeatureSet::new();
        assert!(s.insert("ca se", "acc").is_err());
        assert!(s.insert("case", "").is_err());
        assert!(s.insert("", "x").is_err());
    }

    #[test]
    fn display_is_sorted() {
        assert_eq!(fs(&[("b", "2"), ("a", "1")]).to_string(), "{a=1,b=2}");
    }
}
