use crate::error::{Error, Result};

/// Weak composition `(n_1, ..., n_k)`: ordered nonnegative parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub(crate) fn check_total(&self, n: usize) -> Result<()> {
        let actual = self.total();
        if actual != n {
            return Err(Error::PartSumMismatch {
                expected: n,
                actual,
            });
        }
        Ok(())
    }
}

impl From<Vec<usize>> for Composition {
    fn from(parts: Vec<usize>) -> Self {
        Composition { parts }
    }
}

/// Streaming iterator over the weak compositions of `n` into `k` parts.
///
/// Order is colexicographic on the stars-and-bars encoding: the last part
/// runs from `n` down to 0, ties broken the same way by the preceding parts.
/// For `(n, k) = (2, 2)` that is `(0,2), (1,1), (2,0)`.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Vec<usize>,
    done: bool,
}

impl Compositions {
    pub fn new(n: usize, k: usize) -> Self {
        let mut current = vec![0; k];
        let done = match current.last_mut() {
            Some(last) => {
                *last = n;
                false
            }
            // Zero parts compose only zero.
            None => n != 0,
        };
        Compositions { current, done }
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.done {
            return None;
        }
        let item = Composition::new(self.current.clone());

        let a = &mut self.current;
        match (1..a.len()).find(|&i| a[i] > 0) {
            Some(i) => {
                let carried: usize = a[..i].iter().sum();
                a[..i].fill(0);
                a[i] -= 1;
                a[i - 1] = carried + 1;
            }
            None => self.done = true,
        }
        Some(item)
    }
}

pub fn compositions(n: usize, k: usize) -> Compositions {
    Compositions::new(n, k)
}
