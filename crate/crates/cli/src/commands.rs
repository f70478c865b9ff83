use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;

use absq_core::counting::REFERENCE_TABLE;
use absq_core::{
    brute_force_count, count_binary, count_multinomial, count_recurrence, count_split,
    enumerate_abelian_squares, log_asymptotic, log_probability, ratio_report,
    sample_abelian_fraction, scan_factors, BigCount, CountTable, Counter, LogValue, Method,
    SizeGuard, Word,
};
use rayon::prelude::*;

use crate::output::OutputRecord;
use crate::{
    row, AsymArgs, CheckArgs, CliError, Command, CountArgs, EnumArgs, RatioArgs, SampleArgs,
    ScanArgs, TableArgs,
};

type CmdResult = Result<OutputRecord, CliError>;

pub fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Count(a) => count(&a),
        Command::Table(a) => table(&a),
        Command::Asym(a) => asym(&a),
        Command::Ratio(a) => ratio(&a),
        Command::Check(a) => check(&a),
        Command::Scan(a) => scan(&a),
        Command::Enum(a) => enumerate(&a),
        Command::Sample(a) => sample(&a),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Whether the recurrence up to `n` is cheap enough to run alongside an
/// estimate (about `k n^2` big-integer products).
fn exact_affordable(k: usize, n: u64) -> bool {
    (k as u128)
        .saturating_sub(1)
        .saturating_mul(u128::from(n) * u128::from(n))
        <= 4_000_000
}

/// Decimal for moderate values, `m.mmmmmmeN` beyond `1e15`.
fn format_magnitude(v: LogValue) -> String {
    if v.ln() < 34.5 {
        format!("{:.4}", v.exp())
    } else {
        let l10 = v.log10();
        let exponent = l10.floor();
        format!("{:.6}e{}", 10f64.powf(l10 - exponent), exponent as i64)
    }
}

pub fn count(a: &CountArgs) -> CmdResult {
    let method: Method = a.method.parse()?;
    let counter = Counter::new();
    let value = counter.count(a.k, a.n, method)?;

    let mut rec = OutputRecord::new("count")
        .param("k", a.k)
        .param("n", a.n)
        .param("method", method)
        .param("verify", a.verify);
    let mut r = row!("k" => a.k, "n" => a.n, "method" => method, "value" => &value);
    let mut plain = format!("{value}\n");

    let mut failed = false;
    if a.verify {
        let alt = if method != Method::Multinomial {
            Method::Multinomial
        } else if a.k >= 2 {
            Method::Split
        } else {
            Method::Recurrence
        };
        let mut check = Counter::new().count(a.k, a.n, alt)?;
        if a.inject_fault {
            check = BigCount::from(check.into_biguint() + 1u32);
        }
        failed = check != value;
        r.insert("check_method".into(), alt.to_string());
        r.insert("check_value".into(), check.to_string());
        r.insert("status".into(), if failed { "FAIL" } else { "pass" }.into());
        if failed {
            writeln!(plain, "verification FAILED: {alt} gives {check}").unwrap();
        }
    }
    rec.results.push(r);
    rec.plain = Some(plain);
    if failed {
        return Err(CliError::Verification(Box::new(rec)));
    }
    Ok(rec)
}

pub fn table(a: &TableArgs) -> CmdResult {
    if a.k_max < 2 {
        return Err(usage("--k-max must be at least 2"));
    }
    let counter = Counter::new();
    let rows: Vec<Vec<BigCount>> = (2..=a.k_max)
        .into_par_iter()
        .map(|k| {
            (0..=a.n_max)
                .map(|n| counter.count(k, n, Method::Recurrence))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;

    let mut rec = OutputRecord::new("table")
        .param("k_max", a.k_max)
        .param("n_max", a.n_max);
    rec.csv_corner = Some("k\\n".into());

    let mut grid: Vec<Vec<String>> = vec![std::iter::once("k\\n".to_string())
        .chain((0..=a.n_max).map(|n| n.to_string()))
        .collect()];
    for (i, values) in rows.iter().enumerate() {
        let k = i + 2;
        let mut r = row!("k" => k);
        for (n, v) in values.iter().enumerate() {
            r.insert(n.to_string(), v.to_string());
        }
        rec.results.push(r);
        grid.push(
            std::iter::once(k.to_string())
                .chain(values.iter().map(BigCount::to_string))
                .collect(),
        );
    }
    rec.plain = Some(render_grid(&grid));
    Ok(rec)
}

fn render_grid(grid: &[Vec<String>]) -> String {
    let cols = grid[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| grid.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for r in grid {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:>w$}"))
            .collect();
        writeln!(s, "{}", cells.join(" ")).unwrap();
    }
    s
}

pub fn asym(a: &AsymArgs) -> CmdResult {
    let estimate = log_asymptotic(a.k, a.n)?;
    let probability = log_probability(a.k, a.n)?;
    let mut rec = OutputRecord::new("asym")
        .param("k", a.k)
        .param("n", a.n)
        .param("log", a.log);

    let mut r = row!("k" => a.k, "n" => a.n, "log_estimate" => estimate.ln());
    if !a.log {
        r.insert("estimate".into(), format_magnitude(estimate));
    }
    r.insert("log_probability".into(), probability.ln().to_string());
    if !a.log {
        r.insert("probability".into(), probability.exp().to_string());
    }
    if exact_affordable(a.k, a.n) {
        let row = &ratio_report(&Counter::new(), a.k, &[a.n])?[0];
        if a.log {
            r.insert("log_exact".into(), row.exact.ln().to_string());
        } else {
            r.insert("exact".into(), row.exact.to_string());
        }
        r.insert("ratio".into(), row.ratio.to_string());
    }
    rec.results.push(r);
    Ok(rec)
}

pub fn ratio(a: &RatioArgs) -> CmdResult {
    if let Some(&n) = a.n.iter().find(|&&n| !exact_affordable(a.k, n)) {
        return Err(usage(format!("n = {n} is too large for an exact count")));
    }
    let rows = ratio_report(&Counter::new(), a.k, &a.n)?;
    let mut rec = OutputRecord::new("ratio").param("k", a.k).param(
        "n",
        a.n.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
    );
    for row in rows {
        rec.results.push(row!(
            "n" => row.n,
            "log_estimate" => row.estimate.ln(),
            "ratio" => row.ratio,
            "deviation" => (row.ratio - 1.0).abs(),
            "exact" => row.exact,
        ));
    }
    Ok(rec)
}

struct Comparison {
    k: usize,
    n: usize,
    name: String,
    expected: BigCount,
    actual: BigCount,
}

/// Strings enumerated by `check` per cell at most.
const CHECK_BRUTE_FORCE_LIMIT: u128 = 1 << 20;

pub fn check(a: &CheckArgs) -> CmdResult {
    if a.k_max == 0 {
        return Err(usage("--k-max must be at least 1"));
    }
    let recurrence_table = CountTable::new();
    let split_table = CountTable::new();
    let cells: Vec<(usize, usize)> = (1..=a.k_max)
        .flat_map(|k| (0..=a.n_max).map(move |n| (k, n)))
        .collect();

    let per_cell: Vec<Vec<Comparison>> = cells
        .par_iter()
        .map(|&(k, n)| -> Result<Vec<Comparison>, absq_core::Error> {
            let rec = count_recurrence(k, n, &recurrence_table)?;
            let cmp = |name: String, actual: BigCount| Comparison {
                k,
                n,
                name,
                expected: rec.clone(),
                actual,
            };
            let mut out = Vec::new();

            let mut multi = count_multinomial(k, n)?;
            if a.inject_fault {
                multi = BigCount::from(multi.into_biguint() + 1u32);
            }
            out.push(cmp("recurrence=multinomial".into(), multi));
            for k1 in 1..k {
                let split = count_split(k1, k - k1, n, &split_table)?;
                out.push(cmp(format!("recurrence=split({k1}+{})", k - k1), split));
            }
            if k == 2 {
                out.push(cmp("recurrence=central_binomial".into(), count_binary(n)));
            }
            let guard = SizeGuard {
                limit: CHECK_BRUTE_FORCE_LIMIT,
                force: false,
            };
            if guard.check(k, 2 * n).is_ok() {
                out.push(cmp(
                    "recurrence=brute_force".into(),
                    brute_force_count(k, n, guard)?,
                ));
            }
            if (2..=6).contains(&k) && n <= 7 {
                out.push(cmp(
                    "recurrence=published_table".into(),
                    BigCount::from(REFERENCE_TABLE[k - 2][n]),
                ));
            }
            Ok(out)
        })
        .collect::<Result<_, _>>()?;

    let mut rec = OutputRecord::new("check")
        .param("k_max", a.k_max)
        .param("n_max", a.n_max);
    let mut failures = 0usize;
    let mut by_kind: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for c in per_cell.into_iter().flatten() {
        let ok = c.expected == c.actual;
        if !ok {
            failures += 1;
        }
        let kind = c.name.split('(').next().unwrap_or(&c.name).to_string();
        let entry = by_kind.entry(kind).or_default();
        entry.0 += 1;
        entry.1 += usize::from(!ok);
        rec.results.push(row!(
            "k" => c.k,
            "n" => c.n,
            "check" => c.name,
            "expected" => c.expected,
            "actual" => c.actual,
            "status" => if ok { "pass" } else { "FAIL" },
        ));
    }
    for (kind, (total, failed)) in by_kind {
        rec.summary
            .push(row!("check" => kind, "comparisons" => total, "failures" => failed));
    }
    rec.summary.push(row!(
        "check" => "all",
        "comparisons" => rec.results.len(),
        "failures" => failures,
    ));
    if failures > 0 {
        return Err(CliError::Verification(Box::new(rec)));
    }
    Ok(rec)
}

pub fn scan(a: &ScanArgs) -> CmdResult {
    let bytes = fs::read(&a.file)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", a.file.display())))?;
    let word = match &a.alphabet {
        Some(declared) => Word::from_declared(bytes.iter().copied(), declared.as_bytes())?,
        None => Word::from_symbols(bytes.iter().copied()).0,
    };
    let found = scan_factors(&word, a.min_len, a.max_len)?;

    let mut rec = OutputRecord::new("scan")
        .param("file", a.file.display())
        .param("length", bytes.len())
        .param("alphabet_size", word.alphabet().size())
        .param("min_len", a.min_len)
        .param(
            "max_len",
            a.max_len
                .map_or_else(|| "unbounded".to_string(), |m| m.to_string()),
        );
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for &(start, half) in &found {
        *histogram.entry(half).or_default() += 1;
        let text = String::from_utf8_lossy(&bytes[start..start + 2 * half]);
        rec.results.push(row!(
            "start" => start,
            "half_length" => half,
            "factor" => text.escape_debug(),
        ));
    }
    for (half, count) in histogram {
        rec.summary
            .push(row!("half_length" => half, "count" => count));
    }
    rec.summary
        .push(row!("half_length" => "total", "count" => found.len()));
    Ok(rec)
}

pub fn enumerate(a: &EnumArgs) -> CmdResult {
    let guard = if a.force {
        SizeGuard::forced()
    } else {
        SizeGuard::default()
    };
    let mut rec = OutputRecord::new("enum").param("k", a.k).param("n", a.n);
    let mut plain = String::new();
    for w in enumerate_abelian_squares(a.k, a.n, guard)? {
        let text = w.display_letters();
        writeln!(plain, "{text}").unwrap();
        rec.results.push(row!("word" => text));
    }
    let count = rec.results.len();
    rec = rec.param("count", count);
    rec.plain = Some(plain);
    Ok(rec)
}

pub fn sample(a: &SampleArgs) -> CmdResult {
    let stats = sample_abelian_fraction(a.k, a.n, a.trials, a.seed)?;
    let mut rec = OutputRecord::new("sample")
        .param("k", a.k)
        .param("n", a.n)
        .param("trials", a.trials)
        .param("seed", a.seed)
        .param("rng", "ChaCha8");
    let mut r = row!(
        "hits" => stats.hits,
        "trials" => stats.trials,
        "fraction" => stats.fraction,
        "std_error" => stats.std_error,
    );
    let n = a.n as u64;
    if exact_affordable(a.k, n) {
        let exact = Counter::new().count(a.k, a.n, Method::Recurrence)?;
        let p = (exact.ln() - 2.0 * n as f64 * (a.k as f64).ln()).exp();
        r.insert("exact_probability".into(), p.to_string());
        if stats.std_error > 0.0 {
            r.insert(
                "z".into(),
                ((stats.fraction - p) / stats.std_error).to_string(),
            );
        }
    }
    if a.k >= 2 {
        r.insert(
            "asymptotic_probability".into(),
            log_probability(a.k, n)?.exp().to_string(),
        );
    }
    rec.results.push(r);
    Ok(rec)
}
