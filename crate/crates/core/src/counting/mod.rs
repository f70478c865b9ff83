//! Exact values of `f_k(n)`, the number of abelian squares of length `2n`
//! over `k` letters.
//!
//! Three independent formulas are provided:
//!
//! * [`count_recurrence`]: `f_k(n) = sum_j C(n,j)^2 f_{k-1}(j)`, peeling off
//!   one letter at a time.
//! * [`count_split`]: `f_{k1+k2}(n) = sum_i C(n,i)^2 f_{k1}(i) f_{k2}(n-i)`,
//!   halving the alphabet recursively.
//! * [`count_multinomial`]: the sum of squared multinomial coefficients over
//!   all signatures of the first half.
//!
//! plus [`count_binary`] (`C(2n, n)`) for two letters. Everything is exact;
//! `f_k(0) = 1` for the empty word.

mod bigcount;
mod compositions;
mod table;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub use bigcount::BigCount;
pub use compositions::{compositions, Composition, Compositions};
pub use table::CountTable;

use crate::error::{Error, Result};

/// Published values of `f_k(n)` for `k = 2..=6` (rows) and `n = 0..=7`.
pub const REFERENCE_TABLE: [[u64; 8]; 5] = [
    [1, 2, 6, 20, 70, 252, 924, 3432],
    [1, 3, 15, 93, 639, 4653, 35169, 272835],
    [1, 4, 28, 256, 2716, 31504, 387136, 4951552],
    [1, 5, 45, 545, 7885, 127905, 2241225, 41467725],
    [1, 6, 66, 996, 18306, 384156, 8848236, 218040696],
];

/// Exact `C(n, j)`; zero when `j > n`.
pub fn binomial(n: usize, j: usize) -> BigCount {
    BigCount::from(binomial_big(n, j))
}

fn binomial_big(n: usize, j: usize) -> BigUint {
    if j > n {
        return BigUint::zero();
    }
    let j = j.min(n - j);
    let mut acc = BigUint::one();
    for i in 0..j {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, 0), ..., C(n, n)`.
fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigUint::one();
    for j in 0..=n {
        row.push(c.clone());
        if j < n {
            c *= n - j;
            c /= j + 1;
        }
    }
    row
}

/// Exact `n! / (n_1! ... n_k!)`, as a product of binomials.
pub fn multinomial(n: usize, parts: &Composition) -> Result<BigCount> {
    parts.check_total(n)?;
    let mut remaining = n;
    let mut acc = BigUint::one();
    for &p in parts.parts() {
        acc *= binomial_big(remaining, p);
        remaining -= p;
    }
    Ok(BigCount::from(acc))
}

/// `f_2(n) = C(2n, n)`.
pub fn count_binary(n: usize) -> BigCount {
    binomial(2 * n, n)
}

fn check_alphabet(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("alphabet size must be at least 1"));
    }
    Ok(())
}

/// `f_k(n)` by removing one letter at a time:
/// `f_k(n) = sum_{j=0..n} C(n,j)^2 f_{k-1}(j)` with `f_1 = 1`.
///
/// Every intermediate `f_{k'}(j)` with `k' <= k`, `j <= n` ends up in `table`.
pub fn count_recurrence(k: usize, n: usize, table: &CountTable) -> Result<BigCount> {
    check_alphabet(k)?;
    if k == 1 || n == 0 {
        return Ok(BigCount::one());
    }
    if let Some(v) = table.get(k, n) {
        return Ok(v);
    }

    // rows[level - 1][j] = f_level(j)
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one(); n + 1]];
    rows.extend((2..=k).map(|_| {
        let mut row = Vec::with_capacity(n + 1);
        row.push(BigUint::one());
        row
    }));

    for j in 1..=n {
        let mut squares: Option<Vec<BigUint>> = None;
        for level in 2..=k {
            let value = match table.get(level, j) {
                Some(v) => v.into_biguint(),
                None => {
                    let sq = squares.get_or_insert_with(|| {
                        binomial_row(j).into_iter().map(|c| &c * &c).collect()
                    });
                    let below = &rows[level - 2];
                    let value: BigUint = sq.iter().zip(&below[..=j]).map(|(c2, f)| c2 * f).sum();
                    table.insert(level, j, BigCount::from(value.clone()));
                    value
                }
            };
            rows[level - 1].push(value);
        }
    }
    Ok(BigCount::from(rows[k - 1][n].clone()))
}

/// `f_k(0..=n)` computed by recursive alphabet splitting, memoized in `table`.
fn split_row(k: usize, n: usize, table: &CountTable) -> Vec<BigUint> {
    if k == 1 {
        return vec![BigUint::one(); n + 1];
    }
    let k1 = k / 2;
    let k2 = k - k1;
    let mut low: Option<(Vec<BigUint>, Vec<BigUint>)> = None;
    (0..=n)
        .map(|j| {
            if j == 0 {
                return BigUint::one();
            }
            if let Some(v) = table.get(k, j) {
                return v.into_biguint();
            }
            let (r1, r2) =
                low.get_or_insert_with(|| (split_row(k1, n, table), split_row(k2, n, table)));
            let value = split_sum(j, r1, r2);
            table.insert(k, j, BigCount::from(value.clone()));
            value
        })
        .collect()
}

/// `sum_i C(n,i)^2 a[i] b[n-i]`.
fn split_sum(n: usize, a: &[BigUint], b: &[BigUint]) -> BigUint {
    binomial_row(n)
        .iter()
        .enumerate()
        .map(|(i, c)| c * c * &a[i] * &b[n - i])
        .sum()
}

/// `f_{k1+k2}(n)` from the alphabet split
/// `sum_i C(n,i)^2 f_{k1}(i) f_{k2}(n-i)`.
///
/// The sub-alphabet rows are themselves obtained by splitting, down to single
/// letters, so this route never touches [`count_recurrence`]. Values already
/// in `table` are reused; the outer sum is always evaluated.
pub fn count_split(k1: usize, k2: usize, n: usize, table: &CountTable) -> Result<BigCount> {
    if k1 == 0 || k2 == 0 {
        return Err(Error::invalid(
            "both parts of an alphabet split must be nonempty",
        ));
    }
    let a = split_row(k1, n, table);
    let b = split_row(k2, n, table);
    let value = BigCount::from(split_sum(n, &a, &b));
    table.insert(k1 + k2, n, value.clone());
    Ok(value)
}

/// `f_k(n)` as the sum of `multinomial(n; c)^2` over every weak composition
/// `c` of `n` into `k` parts.
///
/// Compositions are streamed, never collected. When `k^n < 2^128` every
/// multinomial fits in a `u128` and the squares are accumulated in 256-bit
/// fixed width; otherwise the sum runs over [`compositions`] with big
/// integers.
pub fn count_multinomial(k: usize, n: usize) -> Result<BigCount> {
    check_alphabet(k)?;
    if fits_u128(k, n) {
        Ok(wide::multinomial_square_sum(k, n))
    } else {
        multinomial_square_sum_big(k, n)
    }
}

fn fits_u128(k: usize, n: usize) -> bool {
    u32::try_from(n)
        .ok()
        .and_then(|e| (k as u128).checked_pow(e))
        .is_some()
}

fn multinomial_square_sum_big(k: usize, n: usize) -> Result<BigCount> {
    let mut total = BigUint::zero();
    for c in compositions(n, k) {
        let m = multinomial(n, &c)?.into_biguint();
        total += &m * &m;
    }
    Ok(BigCount::from(total))
}

mod wide {
    //! Fixed-width path for `count_multinomial`.

    use super::BigCount;
    use num_bigint::BigUint;

    /// Little-endian 256-bit accumulator.
    #[derive(Default)]
    struct Acc256([u64; 4]);

    impl Acc256 {
        fn add_at(&mut self, limb: usize, value: u128) {
            let mut carry = value;
            for slot in &mut self.0[limb..] {
                if carry == 0 {
                    return;
                }
                let sum = u128::from(*slot) + (carry & u128::from(u64::MAX));
                *slot = sum as u64;
                carry = (carry >> 64) + (sum >> 64);
            }
            assert_eq!(carry, 0, "256-bit accumulator overflow");
        }

        fn add_square(&mut self, x: u128) {
            let hi = x >> 64;
            let lo = x & u128::from(u64::MAX);
            self.add_at(0, lo * lo);
            self.add_at(1, hi * lo);
            self.add_at(1, hi * lo);
            self.add_at(2, hi * hi);
        }

        fn into_count(self) -> BigCount {
            let bytes: Vec<u8> = self.0.iter().flat_map(|l| l.to_le_bytes()).collect();
            BigCount::from(BigUint::from_bytes_le(&bytes))
        }
    }

    /// Caller guarantees `k^n < 2^128`, so `n <= 127` whenever `k >= 2` and
    /// every partial product of binomials (itself a multinomial) fits.
    pub(super) fn multinomial_square_sum(k: usize, n: usize) -> BigCount {
        if k == 1 {
            return BigCount::one();
        }
        let mut pascal: Vec<Vec<u128>> = Vec::with_capacity(n + 1);
        for r in 0..=n {
            let mut row = vec![1u128; r + 1];
            for j in 1..r {
                row[j] = pascal[r - 1][j - 1] + pascal[r - 1][j];
            }
            pascal.push(row);
        }
        let mut acc = Acc256::default();
        visit(&pascal, k - 1, n, 1, &mut acc);
        acc.into_count()
    }

    /// Chooses the next part; `free` parts remain before the last, which is
    /// forced to take whatever is left.
    fn visit(pascal: &[Vec<u128>], free: usize, remaining: usize, product: u128, acc: &mut Acc256) {
        if free == 1 {
            for &c in &pascal[remaining] {
                acc.add_square(product * c);
            }
            return;
        }
        for (part, &c) in pascal[remaining].iter().enumerate() {
            visit(pascal, free - 1, remaining - part, product * c, acc);
        }
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn accumulator_carries() {
            let x = u128::MAX >> 1;
            let mut acc = Acc256::default();
            for _ in 0..3 {
                acc.add_square(x);
            }
            let m = BigUint::from(x);
            assert_eq!(acc.into_count(), BigCount::from(&m * &m * 3u32));
        }
    }
}

/// Counting strategy for [`Counter::count`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Recurrence, optionally cross-checked.
    Auto,
    Recurrence,
    /// Split with `k1 = floor(k/2)`, `k2 = ceil(k/2)`.
    Split,
    Multinomial,
    /// `C(2n, n)`; two letters only.
    Binary,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Auto,
        Method::Recurrence,
        Method::Split,
        Method::Multinomial,
        Method::Binary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Recurrence => "recurrence",
            Method::Split => "split",
            Method::Multinomial => "multinomial",
            Method::Binary => "binary",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown counting method `{s}`")))
    }
}

/// Counting session: owns the memo table and the verification policy.
#[derive(Debug, Default)]
pub struct Counter {
    table: CountTable,
    verify: bool,
}

impl Counter {
    pub fn new() -> Self {
        Self::default()
    }

    /// With `verify`, [`Method::Auto`] recomputes every answer by a second
    /// formula on a cold table and fails on disagreement.
    pub fn verifying(verify: bool) -> Self {
        Counter {
            table: CountTable::new(),
            verify,
        }
    }

    pub fn table(&self) -> &CountTable {
        &self.table
    }

    pub fn verify(&self) -> bool {
        self.verify
    }

    pub fn count(&self, k: usize, n: usize, method: Method) -> Result<BigCount> {
        check_alphabet(k)?;
        match method {
            Method::Recurrence => count_recurrence(k, n, &self.table),
            Method::Multinomial => count_multinomial(k, n),
            Method::Binary if k == 2 => Ok(count_binary(n)),
            Method::Binary => Err(Error::MethodNotApplicable {
                method: "binary",
                k,
            }),
            Method::Split if k >= 2 => count_split(k / 2, k - k / 2, n, &self.table),
            Method::Split => Err(Error::MethodNotApplicable { method: "split", k }),
            Method::Auto => {
                let value = count_recurrence(k, n, &self.table)?;
                if self.verify {
                    let (alt, alt_value) = self.cross_check(k, n)?;
                    if alt_value != value {
                        return Err(Error::VerificationMismatch {
                            k,
                            n,
                            first: "recurrence",
                            first_value: value.to_string(),
                            second: alt.name(),
                            second_value: alt_value.to_string(),
                        });
                    }
                }
                Ok(value)
            }
        }
    }

    /// Second opinion for `auto`: multinomial when the composition count is
    /// small, otherwise split on a fresh table.
    fn cross_check(&self, k: usize, n: usize) -> Result<(Method, BigCount)> {
        let terms = binomial_big(n + k - 1, k - 1);
        if k < 2 || (fits_u128(k, n) && terms <= BigUint::from(1_000_000u32)) {
            return Ok((Method::Multinomial, count_multinomial(k, n)?));
        }
        let cold = CountTable::new();
        Ok((Method::Split, count_split(k / 2, k - k / 2, n, &cold)?))
    }
}
