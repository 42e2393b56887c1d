//! Event alphabets partitioned into observable and unobservable events.

use crate::error::CoreError;

/// An ordered event alphabet. Every event carries an observability flag,
/// so the observable and unobservable events partition the alphabet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    names: Vec<String>,
    observable: Vec<bool>,
}

impl Alphabet {
    /// Builds an alphabet from `(name, observable)` pairs.
    ///
    /// Names must be unique and nonempty; order is preserved and is the
    /// order engines iterate events in.
    pub fn new<S: Into<String>>(events: Vec<(S, bool)>) -> Result<Alphabet, CoreError> {
        let mut names = Vec::with_capacity(events.len());
        let mut observable = Vec::with_capacity(events.len());
        for (name, obs) in events {
            let name = name.into();
            if name.is_empty() {
                return Err(CoreError::InvalidAlphabet("empty event name".into()));
            }
            if names.contains(&name) {
                return Err(CoreError::InvalidAlphabet(format!(
                    "duplicate event name {name:?}"
                )));
            }
            names.push(name);
            observable.push(obs);
        }
        Ok(Alphabet { names, observable })
    }

    /// All events observable.
    pub fn all_observable<S: Into<String>>(names: Vec<S>) -> Result<Alphabet, CoreError> {
        Alphabet::new(names.into_iter().map(|n| (n, true)).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, event: usize) -> &str {
        &self.names[event]
    }

    pub fn is_observable(&self, event: usize) -> bool {
        self.observable[event]
    }

    /// Event id for `name`, matching by name as instance files do.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn events(&self) -> impl Iterator<Item = (usize, &str, bool)> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| (i, n.as_str(), self.observable[i]))
    }

    pub fn observable_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&e| self.observable[e])
    }

    pub fn unobservable_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&e| !self.observable[e])
    }

    pub fn has_unobservable(&self) -> bool {
        self.observable.iter().any(|&o| !o)
    }

    /// The observable events only, in the original order, all flagged
    /// observable. This is the alphabet of a projected automaton.
    pub fn observable_only(&self) -> Alphabet {
        let mut names = Vec::new();
        for e in self.observable_ids() {
            names.push(self.names[e].clone());
        }
        Alphabet {
            observable: vec![true; names.len()],
            names,
        }
    }
}
