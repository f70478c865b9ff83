use std::collections::HashMap;
use std::sync::RwLock;

use super::BigCount;

/// Memo of known values `f_k(n)`, keyed by `(k, n)`.
///
/// Safe to share between threads: lookups take a read lock, inserts a write
/// lock. Two threads racing on the same key both compute it and store the
/// same value.
#[derive(Debug, Default)]
pub struct CountTable {
    entries: RwLock<HashMap<(usize, usize), BigCount>>,
}

impl CountTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, k: usize, n: usize) -> Option<BigCount> {
        self.entries
            .read()
            .expect("count table poisoned")
            .get(&(k, n))
            .cloned()
    }

    pub fn contains(&self, k: usize, n: usize) -> bool {
        self.entries
            .read()
            .expect("count table poisoned")
            .contains_key(&(k, n))
    }

    pub fn insert(&self, k: usize, n: usize, value: BigCount) {
        self.entries
            .write()
            .expect("count table poisoned")
            .insert((k, n), value);
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("count table poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.entries.write().expect("count table poisoned").clear();
    }

    /// Sorted snapshot of every stored entry.
    pub fn snapshot(&self) -> Vec<((usize, usize), BigCount)> {
        let mut all: Vec<_> = self
            .entries
            .read()
            .expect("count table poisoned")
            .iter()
            .map(|(key, v)| (*key, v.clone()))
            .collect();
        all.sort_by_key(|(key, _)| *key);
        all
    }
}
