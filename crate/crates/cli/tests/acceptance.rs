//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p absq-cli --test acceptance`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use absq_cli::run;
use absq_core::counting::REFERENCE_TABLE;
use absq_core::{
    brute_force_count, count_binary, count_multinomial, count_recurrence, count_split, gaussian_1d,
    gaussian_multi, is_abelian_square, log_asymptotic, log_probability, nested_gaussian_integral,
    quadrature_1d, ratio_report, s_ml_reduction_check, s_ml_reduction_values,
    sample_abelian_fraction, scan_factors, telescoping_product, Alphabet, CountTable, Counter,
    Envelope, SizeGuard, Word,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn timed(limit: Duration, check: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = check()?;
    let elapsed = start.elapsed();
    if elapsed > limit {
        return Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"));
    }
    Ok(format!("{detail}; {elapsed:.2?}"))
}

fn table_reproduction() -> Outcome {
    timed(Duration::from_secs(1), || {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(["absq", "table", "--format", "csv"], &mut out, &mut err);
        if code != 0 {
            return Err(format!("exit {code}: {}", String::from_utf8_lossy(&err)));
        }
        let mut reader = csv::Reader::from_reader(out.as_slice());
        let rows: Vec<csv::StringRecord> = reader
            .records()
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        if rows.len() != 5 {
            return Err(format!("{} rows", rows.len()));
        }
        let mut matched = 0;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != 9 || row[0] != (i + 2).to_string() {
                return Err(format!("malformed row {row:?}"));
            }
            for (n, expected) in REFERENCE_TABLE[i].iter().enumerate() {
                if row[n + 1] != expected.to_string() {
                    return Err(format!("k={} n={n}: {} != {expected}", i + 2, &row[n + 1]));
                }
                matched += 1;
            }
        }
        Ok(format!("{matched}/40 cells exact"))
    })
}

fn formula_agreement() -> Outcome {
    timed(Duration::from_secs(60), || {
        let recurrence_table = CountTable::new();
        let split_table = CountTable::new();
        let cells: Vec<(usize, usize)> = (1..=8)
            .flat_map(|k| (0..=40).map(move |n| (k, n)))
            .collect();
        let comparisons: usize = cells
            .par_iter()
            .map(|&(k, n)| -> Result<usize, String> {
                let r = count_recurrence(k, n, &recurrence_table).map_err(|e| e.to_string())?;
                let mut others = vec![(
                    "multinomial".to_string(),
                    count_multinomial(k, n).map_err(|e| e.to_string())?,
                )];
                for k1 in 1..k {
                    let s = count_split(k1, k - k1, n, &split_table).map_err(|e| e.to_string())?;
                    others.push((format!("split({k1}+{})", k - k1), s));
                }
                if k == 2 {
                    others.push(("binomial".into(), count_binary(n)));
                }
                for (name, v) in &others {
                    if *v != r {
                        return Err(format!("k={k} n={n}: recurrence {r} != {name} {v}"));
                    }
                }
                Ok(others.len())
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
        Ok(format!(
            "{} cells, {comparisons} exact comparisons",
            cells.len()
        ))
    })
}

fn brute_force_oracle() -> Outcome {
    timed(Duration::from_secs(120), || {
        const LIMIT: u128 = 1 << 20;
        let mut cells = Vec::new();
        for k in 2usize..=1 << 10 {
            let mut n = 0;
            while (k as u128).pow(2 * n as u32) <= LIMIT {
                cells.push((k, n));
                n += 1;
            }
        }
        let guard = SizeGuard {
            limit: LIMIT,
            force: false,
        };
        let table = CountTable::new();
        cells
            .par_iter()
            .try_for_each(|&(k, n)| -> Result<(), String> {
                let brute = brute_force_count(k, n, guard).map_err(|e| e.to_string())?;
                let formula = count_recurrence(k, n, &table).map_err(|e| e.to_string())?;
                if brute != formula {
                    return Err(format!(
                        "k={k} n={n}: enumeration {brute} != formula {formula}"
                    ));
                }
                Ok(())
            })?;
        let largest = |k: usize| {
            cells
                .iter()
                .filter(|c| c.0 == k)
                .map(|c| c.1)
                .max()
                .unwrap_or(0)
        };
        Ok(format!(
            "{} cells (k=2 n<={}, k=3 n<={}, k=4 n<={}, k=6 n<={})",
            cells.len(),
            largest(2),
            largest(3),
            largest(4),
            largest(6)
        ))
    })
}

fn gaussian_1d_closed_form(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a = rng.random_range(0.1..=10.0);
        let b = rng.random_range(-3.0..=3.0);
        let c = rng.random_range(-3.0..=3.0);
        let q = move |x: f64| a * x * x + b * x + c;
        let closed = gaussian_1d(a, b, c).map_err(|e| e.to_string())?;
        let env = Envelope::of_quadratic_exponent(q).map_err(|e| e.to_string())?;
        let numeric = quadrature_1d(|x| (-q(x)).exp(), env, 1e-10).map_err(|e| e.to_string())?;
        let err = (closed - numeric).abs();
        if err > 1e-8 {
            return Err(format!(
                "a={a} b={b} c={c}: |{closed} - {numeric}| = {err:e}"
            ));
        }
        worst = worst.max(err);
    }
    Ok(format!("100 triples, max abs error {worst:.1e} <= 1e-8"))
}

fn form_reduction(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    for m in 1..=4usize {
        for l in 1..=m {
            for _ in 0..20 {
                let x: Vec<f64> = (0..m - l).map(|_| rng.random_range(-2.0..=2.0)).collect();
                let (numeric, closed) =
                    s_ml_reduction_values(m, l, &x, 1e-8).map_err(|e| e.to_string())?;
                let err = (numeric - closed).abs();
                let passed = s_ml_reduction_check(m, l, &x, 1e-8).map_err(|e| e.to_string())?;
                if !passed || err > 1e-8 {
                    return Err(format!("m={m} l={l} x={x:?}: error {err:e}"));
                }
                worst = worst.max(err);
                checks += 1;
            }
        }
    }
    Ok(format!(
        "{checks} reductions at tol 1e-8, max abs error {worst:.1e}"
    ))
}

fn gaussian_multi_closed_form() -> Outcome {
    let mut parts = Vec::new();
    for m in 1..=3usize {
        let numeric = nested_gaussian_integral(m, 1.0, 1e-7).map_err(|e| e.to_string())?;
        let closed = gaussian_multi(m);
        let err = (numeric - closed).abs();
        if err > 1e-6 {
            return Err(format!(
                "m={m}: nested {numeric} vs {closed}, error {err:e}"
            ));
        }
        parts.push(format!("m={m} err {err:.1e}"));
    }
    let mut worst: f64 = 0.0;
    for m in 1..=12usize {
        let closed = gaussian_multi(m);
        let rel = ((telescoping_product(m) - closed) / closed).abs();
        if rel > 1e-12 {
            return Err(format!("telescoping m={m}: relative error {rel:e}"));
        }
        worst = worst.max(rel);
    }
    Ok(format!(
        "{}; telescoping m<=12 max rel error {worst:.1e}",
        parts.join(", ")
    ))
}

fn convergence() -> Outcome {
    timed(Duration::from_secs(60), || {
        let counter = Counter::new();
        let mut parts = Vec::new();
        for k in [2usize, 3, 4] {
            let rows = ratio_report(&counter, k, &[10, 100, 1000]).map_err(|e| e.to_string())?;
            let dev: Vec<f64> = rows.iter().map(|r| (r.ratio - 1.0).abs()).collect();
            if !(dev[0] > dev[1] && dev[1] > dev[2]) {
                return Err(format!("k={k}: deviations not strictly decreasing {dev:?}"));
            }
            if dev[2] >= 0.01 {
                return Err(format!("k={k}: |ratio - 1| = {} at n=1000", dev[2]));
            }
            parts.push(format!(
                "k={k} |r-1| {:.1e}>{:.1e}>{:.1e}",
                dev[0], dev[1], dev[2]
            ));
        }
        Ok(parts.join(", "))
    })
}

fn probability() -> Outcome {
    const SEED: u64 = 0x00c0_ffee;
    let mut parts = Vec::new();
    for (k, n) in [(2usize, 2usize), (2, 5), (3, 5)] {
        let stats = sample_abelian_fraction(k, n, 100_000, SEED).map_err(|e| e.to_string())?;
        let exact = count_recurrence(k, n, &CountTable::new()).map_err(|e| e.to_string())?;
        let p = (exact.ln() - 2.0 * n as f64 * (k as f64).ln()).exp();
        let z = (stats.fraction - p).abs() / stats.std_error;
        if !(z <= 4.0) {
            return Err(format!(
                "k={k} n={n}: fraction {} vs {p}, {z:.2} standard errors",
                stats.fraction
            ));
        }
        parts.push(format!("({k},{n}) {z:.2} se"));
    }
    let mut worst: f64 = 0.0;
    for k in 2..=10usize {
        for n in [1u64, 2, 5, 10, 100, 1000, 1_000_000] {
            let estimate = log_asymptotic(k, n).map_err(|e| e.to_string())?.ln();
            let lhs = log_probability(k, n).map_err(|e| e.to_string())?.ln();
            let rhs = estimate - 2.0 * n as f64 * (k as f64).ln();
            let rel = (lhs - rhs).abs() / estimate.abs().max(1.0);
            if rel > 1e-12 {
                return Err(format!("log identity k={k} n={n}: {lhs} vs {rhs}"));
            }
            worst = worst.max(rel);
        }
    }
    Ok(format!(
        "{}; log identity max rel error {worst:.1e}",
        parts.join(", ")
    ))
}

/// Every `(start, half)` with equal letter multisets on both halves, by
/// sorting each candidate's halves.
fn quadratic_oracle(w: &[u32]) -> BTreeSet<(usize, usize)> {
    let mut found = BTreeSet::new();
    for start in 0..w.len() {
        for half in 1..=(w.len() - start) / 2 {
            let mut left = w[start..start + half].to_vec();
            let mut right = w[start + half..start + 2 * half].to_vec();
            left.sort_unstable();
            right.sort_unstable();
            if left == right {
                found.insert((start, half));
            }
        }
    }
    found
}

fn detection() -> Outcome {
    for text in ["reappear", "intestines", "murmur", "hotshots"] {
        let (w, _) = Word::from_symbols(text.bytes());
        if !is_abelian_square(&w) {
            return Err(format!("{text} not recognised"));
        }
    }
    let (w, _) = Word::from_symbols("reappears".bytes());
    if is_abelian_square(&w) {
        return Err("odd-length word accepted".into());
    }
    let words: Vec<(usize, u32)> = (0..=14usize)
        .flat_map(|len| (0..1u32 << len).map(move |bits| (len, bits)))
        .collect();
    words
        .par_iter()
        .try_for_each(|&(len, bits)| -> Result<(), String> {
            let symbols: Vec<u32> = (0..len).map(|i| 1 + ((bits >> i) & 1)).collect();
            let w = Word::new(
                symbols.clone(),
                Alphabet::new(2).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let fast: BTreeSet<(usize, usize)> = scan_factors(&w, 1, None)
                .map_err(|e| e.to_string())?
                .into_iter()
                .collect();
            if fast != quadratic_oracle(&symbols) {
                return Err(format!(
                    "scan disagrees with oracle on {}",
                    w.display_letters()
                ));
            }
            Ok(())
        })?;
    Ok(format!(
        "4 example words; scan = oracle on {} binary words of length <= 14",
        words.len()
    ))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "table reproduction", table_reproduction()),
        (2, "formula agreement, k <= 8, n <= 40", formula_agreement()),
        (
            3,
            "brute-force oracle, k^(2n) <= 2^20",
            brute_force_oracle(),
        ),
        (
            4,
            "one-dimensional Gaussian integral",
            gaussian_1d_closed_form(&mut rng),
        ),
        (5, "quadratic form reduction", form_reduction(&mut rng)),
        (
            6,
            "multidimensional Gaussian integral",
            gaussian_multi_closed_form(),
        ),
        (7, "convergence of exact / estimate", convergence()),
        (8, "abelian-square probability", probability()),
        (9, "detection and scanning", detection()),
    ];
    let mut failed = 0;
    for (id, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("[PASS] criterion {id}: {name} ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {id}: {name} ({detail})");
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
