//! Name-keyed registries for the interchangeable strategy families.
//!
//! Three families are pluggable: edge cost models ([`crate::sim::EdgeCost`]),
//! random graph ensembles ([`crate::graph::Ensemble`]) and local refiners
//! ([`crate::optimize::LocalSearch`]). Each family module exposes a
//! `builtin_*` constructor returning a fresh registry with the shipped
//! strategies, plus a shared read-only instance used by name lookups.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

pub struct Registry<T: ?Sized> {
    family: &'static str,
    entries: BTreeMap<&'static str, Box<T>>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(family: &'static str) -> Self {
        Self {
            family,
            entries: BTreeMap::new(),
        }
    }

    /// Registers `entry` under `name`. Names are unique within a registry.
    pub fn register(&mut self, name: &'static str, entry: Box<T>) -> Result<()> {
        if self.entries.contains_key(name) {
            return Err(Error::invalid(format!(
                "{} '{}' is already registered",
                self.family, name
            )));
        }
        self.entries.insert(name, entry);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                registry: self.family,
                name: name.to_string(),
                available: self.names().collect::<Vec<_>>().join(", "),
            })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn family(&self) -> &'static str {
        self.family
    }
}

impl<T: ?Sized> fmt::Debug for Registry<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Registry")
            .field("family", &self.family)
            .field("entries", &self.entries.keys().collect::<Vec<_>>())
            .finish()
    }
}
