//! Words over `{1, ..., k}`: signatures, abelian-square detection, factor
//! scanning, exhaustive enumeration and Monte Carlo sampling.
//!
//! Letters are plain integers `1..=k`. Text is mapped onto letters by
//! [`Word::from_symbols`], which numbers distinct symbols in order of first
//! occurrence.

use std::collections::HashMap;
use std::hash::Hash;
use std::ops::Add;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting::BigCount;
use crate::error::{Error, Result};

/// Alphabet `{1, ..., k}` with `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet(usize);

impl Alphabet {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("alphabet size must be at least 1"));
        }
        Ok(Alphabet(k))
    }

    pub fn size(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    symbols: Vec<u32>,
    alphabet: Alphabet,
}

impl Word {
    /// Builds a word, checking every letter lies in `1..=k`.
    pub fn new(symbols: Vec<u32>, alphabet: Alphabet) -> Result<Self> {
        let k = alphabet.size();
        if let Some(&letter) = symbols.iter().find(|&&s| s == 0 || s as usize > k) {
            return Err(Error::LetterOutOfRange { letter, k });
        }
        Ok(Word { symbols, alphabet })
    }

    /// Maps arbitrary symbols to letters by order of first occurrence and
    /// returns the word together with the symbol assigned to each letter
    /// (`legend[i]` is letter `i + 1`). The alphabet is the set of symbols
    /// seen, or `{1}` for empty input.
    pub fn from_symbols<T, I>(symbols: I) -> (Word, Vec<T>)
    where
        T: Eq + Hash + Copy,
        I: IntoIterator<Item = T>,
    {
        let mut index: HashMap<T, u32> = HashMap::new();
        let mut legend = Vec::new();
        let letters = symbols
            .into_iter()
            .map(|s| {
                *index.entry(s).or_insert_with(|| {
                    legend.push(s);
                    legend.len() as u32
                })
            })
            .collect();
        let alphabet = Alphabet(legend.len().max(1));
        (
            Word {
                symbols: letters,
                alphabet,
            },
            legend,
        )
    }

    /// Maps symbols through a declared alphabet: `declared[i]` becomes letter
    /// `i + 1`. Symbols outside `declared` are rejected.
    pub fn from_declared<T: Eq + Hash + Copy + std::fmt::Debug>(
        symbols: impl IntoIterator<Item = T>,
        declared: &[T],
    ) -> Result<Word> {
        let alphabet = Alphabet::new(declared.len())?;
        let index: HashMap<T, u32> = declared
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, i as u32 + 1))
            .collect();
        let letters = symbols
            .into_iter()
            .enumerate()
            .map(|(pos, s)| {
                index.get(&s).copied().ok_or_else(|| {
                    Error::invalid(format!(
                        "symbol {s:?} at position {pos} is not in the declared alphabet"
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word {
            symbols: letters,
            alphabet,
        })
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Letters `1..=9` printed as digits; larger alphabets use `.` separators.
    pub fn display_letters(&self) -> String {
        if self.alphabet.size() <= 9 {
            self.symbols
                .iter()
                .map(|&s| char::from_digit(s, 10).unwrap_or('?'))
                .collect()
        } else {
            self.symbols
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

/// Parikh vector: `counts[i]` is the number of occurrences of letter `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    counts: Vec<usize>,
}

impl Signature {
    pub fn from_counts(counts: Vec<usize>) -> Self {
        Signature { counts }
    }

    fn of_letters(letters: &[u32], k: usize) -> Self {
        let mut counts = vec![0; k];
        for &s in letters {
            counts[s as usize - 1] += 1;
        }
        Signature { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Length of any word with this signature.
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Componentwise sum; the signature of a concatenation.
impl Add for &Signature {
    type Output = Signature;

    fn add(self, rhs: &Signature) -> Signature {
        assert_eq!(
            self.counts.len(),
            rhs.counts.len(),
            "signatures over different alphabets"
        );
        Signature {
            counts: self
                .counts
                .iter()
                .zip(&rhs.counts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

pub fn signature(w: &Word) -> Signature {
    Signature::of_letters(&w.symbols, w.alphabet.size())
}

/// True iff `w` has even length at least 2 and both halves share a signature.
pub fn is_abelian_square(w: &Word) -> bool {
    let len = w.len();
    if len == 0 || len % 2 == 1 {
        return false;
    }
    let (x, y) = w.symbols.split_at(len / 2);
    let k = w.alphabet.size();
    Signature::of_letters(x, k) == Signature::of_letters(y, k)
}

/// Every `(start, half)` with `min_half <= half <= max_half` such that
/// `w[start .. start + 2 * half]` is an abelian square, ordered by start and
/// then half-length. `max_half = None` means unbounded.
///
/// Cumulative letter counts are stored for every prefix, so each candidate
/// factor costs `O(k)`.
pub fn scan_factors(
    w: &Word,
    min_half: usize,
    max_half: Option<usize>,
) -> Result<Vec<(usize, usize)>> {
    if min_half == 0 {
        return Err(Error::invalid("minimum half-length must be at least 1"));
    }
    if let Some(max) = max_half {
        if max < min_half {
            return Err(Error::invalid(format!(
                "maximum half-length {max} is below the minimum {min_half}"
            )));
        }
    }

    let k = w.alphabet.size();
    let len = w.len();
    let mut prefix = vec![0u32; (len + 1) * k];
    for (i, &s) in w.symbols.iter().enumerate() {
        let (done, rest) = prefix.split_at_mut((i + 1) * k);
        rest[..k].copy_from_slice(&done[i * k..]);
        rest[s as usize - 1] += 1;
    }
    let row = |i: usize| &prefix[i * k..(i + 1) * k];

    let mut found = Vec::new();
    for start in 0..len {
        let longest = (len - start) / 2;
        let upper = max_half.map_or(longest, |m| m.min(longest));
        for half in min_half..=upper {
            let (a, b, c) = (row(start), row(start + half), row(start + 2 * half));
            let balanced = (0..k).all(|i| 2 * u64::from(b[i]) == u64::from(a[i]) + u64::from(c[i]));
            if balanced {
                found.push((start, half));
            }
        }
    }
    Ok(found)
}

/// Bound on the number of strings an exhaustive routine may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub limit: u128,
    pub force: bool,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            limit: 1 << 31,
            force: false,
        }
    }
}

impl SizeGuard {
    pub fn forced() -> Self {
        SizeGuard {
            force: true,
            ..SizeGuard::default()
        }
    }

    /// Returns `k^len` if it is within the limit (or the guard is forced).
    pub fn check(&self, k: usize, len: usize) -> Result<u128> {
        let space = u32::try_from(len)
            .ok()
            .and_then(|e| (k as u128).checked_pow(e));
        match space {
            Some(space) if space <= self.limit || self.force => Ok(space),
            _ => Err(Error::SizeGuard {
                k,
                len,
                space: space.map_or_else(|| format!("{k}^{len}"), |s| s.to_string()),
                limit: self.limit,
            }),
        }
    }
}

/// Lexicographic iterator over all abelian squares of length `2n`.
///
/// Walks the first half `x` in lexicographic order and, for each `x`, every
/// distinct rearrangement of `x` as the second half, also in lexicographic
/// order.
#[derive(Debug, Clone)]
pub struct AbelianSquares {
    alphabet: Alphabet,
    first: Vec<u32>,
    second: Vec<u32>,
    done: bool,
}

impl Iterator for AbelianSquares {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let mut symbols = Vec::with_capacity(2 * self.first.len());
        symbols.extend_from_slice(&self.first);
        symbols.extend_from_slice(&self.second);
        let item = Word {
            symbols,
            alphabet: self.alphabet,
        };

        if !next_permutation(&mut self.second) {
            if increment(&mut self.first, self.alphabet.size() as u32) {
                self.second.copy_from_slice(&self.first);
                self.second.sort_unstable();
            } else {
                self.done = true;
            }
        }
        Some(item)
    }
}

/// Next lexicographic permutation of a multiset, in place. Returns false
/// (leaving the slice untouched) when already at the last permutation.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(pivot) = v.windows(2).rposition(|p| p[0] < p[1]) else {
        return false;
    };
    let swap = v
        .iter()
        .rposition(|&x| x > v[pivot])
        .expect("pivot has a successor");
    v.swap(pivot, swap);
    v[pivot + 1..].reverse();
    true
}

/// Odometer step over `{1..=k}^n`. Returns false after the last word.
fn increment(digits: &mut [u32], k: u32) -> bool {
    for d in digits.iter_mut().rev() {
        if *d < k {
            *d += 1;
            return true;
        }
        *d = 1;
    }
    false
}

/// All abelian squares of length `2n` over `1..=k`, each once, in
/// lexicographic order. Requires `n >= 1`; `k^(2n)` must pass `guard`.
pub fn enumerate_abelian_squares(k: usize, n: usize, guard: SizeGuard) -> Result<AbelianSquares> {
    let alphabet = Alphabet::new(k)?;
    if n == 0 {
        return Err(Error::invalid("half-length must be at least 1"));
    }
    guard.check(k, 2 * n)?;
    Ok(AbelianSquares {
        alphabet,
        first: vec![1; n],
        second: vec![1; n],
        done: false,
    })
}

/// Counts abelian squares of length `2n` by testing every one of the `k^(2n)`
/// strings. Independent of the counting formulas; `n = 0` gives 1.
pub fn brute_force_count(k: usize, n: usize, guard: SizeGuard) -> Result<BigCount> {
    Alphabet::new(k)?;
    if n == 0 {
        return Ok(BigCount::from(1u32));
    }
    guard.check(k, 2 * n)?;
    let halves = u32::try_from(n)
        .ok()
        .and_then(|e| k.checked_pow(e))
        .ok_or_else(|| Error::invalid("too many half-words to address"))?;

    // Signature of every string of length n, in odometer order.
    let mut sigs = vec![0u32; halves * k];
    let mut digits = vec![1u32; n];
    for h in 0..halves {
        let sig = &mut sigs[h * k..(h + 1) * k];
        for &d in &digits {
            sig[d as usize - 1] += 1;
        }
        increment(&mut digits, k as u32);
    }

    let mut hits: u128 = 0;
    for x in sigs.chunks_exact(k) {
        for y in sigs.chunks_exact(k) {
            if x == y {
                hits += 1;
            }
        }
    }
    Ok(BigCount::from(hits))
}

/// Outcome of [`sample_abelian_fraction`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats {
    pub trials: u64,
    pub hits: u64,
    pub fraction: f64,
    /// `sqrt(p(1 - p) / trials)` at the observed fraction.
    pub std_error: f64,
}

/// Draws `trials` uniform strings of length `2n` over `1..=k` and counts the
/// abelian squares among them.
///
/// The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
/// `SeedableRng::seed_from_u64(seed)`; letters are drawn with
/// `Rng::random_range`. Equal arguments reproduce equal results.
pub fn sample_abelian_fraction(k: usize, n: usize, trials: u64, seed: u64) -> Result<SampleStats> {
    Alphabet::new(k)?;
    if n == 0 {
        return Err(Error::invalid("half-length must be at least 1"));
    }
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut balance = vec![0i64; k];
    let mut hits = 0u64;
    for _ in 0..trials {
        balance.fill(0);
        for _ in 0..n {
            balance[rng.random_range(0..k)] += 1;
        }
        for _ in 0..n {
            balance[rng.random_range(0..k)] -= 1;
        }
        if balance.iter().all(|&b| b == 0) {
            hits += 1;
        }
    }
    let fraction = hits as f64 / trials as f64;
    Ok(SampleStats {
        trials,
        hits,
        fraction,
        std_error: (fraction * (1.0 - fraction) / trials as f64).sqrt(),
    })
}
