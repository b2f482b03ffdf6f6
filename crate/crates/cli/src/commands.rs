use std::io::Write;

use serde::Serialize;
use totient_lab::bench::MethodStatus;
use totient_lab::farey::{exclusion_terms, ENUMERATION_LIMIT};
use totient_lab::{
    bench_totient_methods, coprime_numerators, count_by_enumeration, count_by_exclusion,
    count_by_totient_sum, cumulative_counts, factorize, farey_iter, group_by_coefficient,
    integrated_series_coefficients, numbers_with_prime_support, totient, totient_sieve_with,
    Convention, ExactRational, Factorization, SieveMode,
};

use crate::args::{Cli, Command, CountMethod, Format};
use crate::CliError;

type Out<'a> = &'a mut dyn Write;

pub fn run(cli: &Cli, out: Out) -> Result<(), CliError> {
    let convention = Convention::from(cli.convention);
    let mode = match cli.threads {
        Some(n) if n > 1 => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            SieveMode::Parallel
        }
        _ => SieveMode::Sequential,
    };
    let fmt = cli.format;
    match &cli.command {
        Command::Totient { n, verbose } => cmd_totient(*n, *verbose, convention, fmt, out),
        Command::Table { max_n } => cmd_table(*max_n, convention, mode, fmt, out),
        Command::Count { d, method, verbose } => cmd_count(*d, *method, *verbose, fmt, out),
        Command::Farey { d } => cmd_farey(*d, fmt, out),
        Command::Series { max_n, grouped } => cmd_series(*max_n, *grouped, fmt, out),
        Command::Bench { max_n } => cmd_bench(*max_n, convention, mode, fmt, out),
        Command::Factorize { n } => cmd_factorize(*n, fmt, out),
        Command::Numerators { d } => cmd_numerators(*d, fmt, out),
        Command::Support { primes, limit } => cmd_support(primes, *limit, convention, fmt, out),
        Command::Cumulative { checkpoints } => cmd_cumulative(checkpoints, fmt, out),
    }
}

fn json<T: Serialize + ?Sized>(out: Out, value: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Streams `[a,b,...]` followed by a newline.
fn json_array<T: Serialize>(out: Out, items: impl IntoIterator<Item = T>) -> Result<(), CliError> {
    write!(out, "[")?;
    for (i, item) in items.into_iter().enumerate() {
        if i > 0 {
            write!(out, ",")?;
        }
        serde_json::to_writer(&mut *out, &item)?;
    }
    writeln!(out, "]")?;
    Ok(())
}

fn factorization_string(f: &Factorization) -> String {
    if f.is_one() {
        return "1".into();
    }
    f.factors()
        .iter()
        .map(|pp| match pp.exponent {
            1 => pp.prime.to_string(),
            e => format!("{}^{e}", pp.prime),
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

#[derive(Serialize)]
struct TotientRow {
    n: u64,
    phi: u64,
}

fn cmd_totient(
    n: u64,
    verbose: bool,
    convention: Convention,
    fmt: Format,
    out: Out,
) -> Result<(), CliError> {
    let phi = totient(n, convention)?;
    let f = factorize(n)?;
    let primes: Vec<u64> = f.primes().collect();
    match fmt {
        Format::Plain if verbose => {
            writeln!(out, "n = {n}")?;
            writeln!(out, "factorization = {}", factorization_string(&f))?;
            if primes.is_empty() {
                writeln!(out, "distinct primes = (none)")?;
                writeln!(
                    out,
                    "phi = {phi} ({} convention at n = 1)",
                    convention.name()
                )?;
            } else {
                writeln!(out, "distinct primes = {}", join(&primes, ", "))?;
                let ratios = join(primes.iter().map(|&p| format!("({}/{p})", p - 1)), " * ");
                writeln!(out, "phi = {n} * {ratios} = {phi}")?;
            }
        }
        Format::Plain => writeln!(out, "{phi}")?,
        Format::Csv if verbose => {
            writeln!(out, "n,phi,primes")?;
            writeln!(out, "{n},{phi},{}", join(&primes, ";"))?;
        }
        Format::Csv => {
            writeln!(out, "n,phi")?;
            writeln!(out, "{n},{phi}")?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Verbose<'a> {
                n: u64,
                convention: Convention,
                phi: u64,
                factorization: &'a [totient_lab::PrimePower],
                primes: &'a [u64],
            }
            #[derive(Serialize)]
            struct Brief {
                n: u64,
                convention: Convention,
                phi: u64,
            }
            if verbose {
                json(
                    out,
                    &Verbose {
                        n,
                        convention,
                        phi,
                        factorization: f.factors(),
                        primes: &primes,
                    },
                )?;
            } else {
                json(out, &Brief { n, convention, phi })?;
            }
        }
    }
    Ok(())
}

fn cmd_table(
    max_n: u64,
    convention: Convention,
    mode: SieveMode,
    fmt: Format,
    out: Out,
) -> Result<(), CliError> {
    let table = totient_sieve_with(max_n, convention, mode)?;
    match fmt {
        Format::Plain => {
            let w = max_n.to_string().len();
            writeln!(out, "{:>w$}  phi", "n")?;
            for (n, phi) in table.iter() {
                writeln!(out, "{n:>w$}  {phi}")?;
            }
        }
        Format::Csv => {
            writeln!(out, "n,phi")?;
            for (n, phi) in table.iter() {
                writeln!(out, "{n},{phi}")?;
            }
        }
        Format::Json => json_array(out, table.iter().map(|(n, phi)| TotientRow { n, phi }))?,
    }
    Ok(())
}

#[derive(Default, Serialize)]
struct CountOutput {
    max_denominator: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    total_unreduced: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    excluded: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count_by_exclusion: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count_by_totient_sum: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count_by_enumeration: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
}

fn cell(v: Option<u64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn cmd_count(
    d: u64,
    method: CountMethod,
    verbose: bool,
    fmt: Format,
    out: Out,
) -> Result<(), CliError> {
    let mut report = CountOutput {
        max_denominator: d,
        ..Default::default()
    };
    match method {
        CountMethod::Sum => report.count_by_totient_sum = Some(count_by_totient_sum(d)?),
        CountMethod::Enumerate => report.count_by_enumeration = Some(count_by_enumeration(d)?),
        CountMethod::Exclusion | CountMethod::All => {
            if method == CountMethod::All && d > ENUMERATION_LIMIT {
                return Err(CliError::Usage(format!(
                    "--method all includes enumeration, which is limited to D <= {ENUMERATION_LIMIT}"
                )));
            }
            let mut r = count_by_exclusion(d)?;
            report.total_unreduced = Some(r.total_unreduced);
            report.excluded = Some(r.excluded);
            report.count_by_exclusion = Some(r.count_by_exclusion);
            if method == CountMethod::All {
                r = r.with_enumeration()?;
                report.count_by_totient_sum = Some(r.count_by_totient_sum);
                report.count_by_enumeration = r.count_by_enumeration;
                report.agree = Some(r.is_consistent());
            }
        }
    }

    match fmt {
        Format::Plain => {
            writeln!(out, "max denominator: {d}")?;
            if let Some(v) = report.total_unreduced {
                writeln!(out, "total unreduced: {v}")?;
            }
            if verbose && report.excluded.is_some() {
                let table = totient_sieve_with(d, Convention::Euler, SieveMode::Sequential)?;
                for t in exclusion_terms(d, &table)? {
                    writeln!(
                        out,
                        "  k={:<4} floor(D/k)={:<4} phi(k)={:<4} excluded {}",
                        t.k, t.quotient, t.totient, t.excluded
                    )?;
                }
            }
            if let Some(v) = report.excluded {
                writeln!(out, "excluded: {v}")?;
            }
            if let Some(v) = report.count_by_exclusion {
                writeln!(out, "count (exclusion): {v}")?;
            }
            if let Some(v) = report.count_by_totient_sum {
                writeln!(out, "count (totient sum): {v}")?;
            }
            if let Some(v) = report.count_by_enumeration {
                writeln!(out, "count (enumeration): {v}")?;
            }
            match report.agree {
                Some(true) => writeln!(out, "all methods agree")?,
                Some(false) => writeln!(out, "methods DISAGREE")?,
                None => {}
            }
        }
        Format::Csv => {
            writeln!(
                out,
                "max_denominator,total_unreduced,excluded,count_by_exclusion,count_by_totient_sum,count_by_enumeration"
            )?;
            writeln!(
                out,
                "{d},{},{},{},{},{}",
                cell(report.total_unreduced),
                cell(report.excluded),
                cell(report.count_by_exclusion),
                cell(report.count_by_totient_sum),
                cell(report.count_by_enumeration)
            )?;
        }
        Format::Json => json(out, &report)?,
    }

    if report.agree == Some(false) {
        return Err(CliError::CrossCheck(format!(
            "fraction counts for D={d} disagree"
        )));
    }
    Ok(())
}

fn cmd_farey(d: u64, fmt: Format, out: Out) -> Result<(), CliError> {
    let fractions = farey_iter(d)?;
    match fmt {
        Format::Plain => {
            let mut count = 0u64;
            for f in fractions {
                writeln!(out, "{f}")?;
                count += 1;
            }
            writeln!(out, "count: {count}")?;
        }
        Format::Csv => {
            writeln!(out, "numerator,denominator")?;
            for f in fractions {
                writeln!(out, "{},{}", f.numerator(), f.denominator())?;
            }
        }
        Format::Json => {
            write!(out, "{{\"max_denominator\":{d},\"fractions\":")?;
            let mut count = 0u64;
            write!(out, "[")?;
            for f in fractions {
                if count > 0 {
                    write!(out, ",")?;
                }
                serde_json::to_writer(&mut *out, &f)?;
                count += 1;
            }
            writeln!(out, "],\"count\":{count}}}")?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SeriesRow {
    n: u64,
    phi: u64,
    phi_over_n: ExactRational,
}

fn cmd_series(max_n: u64, grouped: bool, fmt: Format, out: Out) -> Result<(), CliError> {
    if grouped {
        let groups = group_by_coefficient(max_n)?;
        match fmt {
            Format::Plain => {
                for g in &groups {
                    writeln!(
                        out,
                        "radical {}  coefficient {}  members {}",
                        g.radical,
                        g.coefficient,
                        join(&g.members, " ")
                    )?;
                }
            }
            Format::Csv => {
                writeln!(out, "radical,coefficient,members")?;
                for g in &groups {
                    writeln!(
                        out,
                        "{},{},{}",
                        g.radical,
                        g.coefficient,
                        join(&g.members, ";")
                    )?;
                }
            }
            Format::Json => json(out, &groups)?,
        }
        return Ok(());
    }

    let ratios = integrated_series_coefficients(max_n)?;
    // phi = n * (phi/n), exact since phi/n is phi(n)/n reduced
    let rows = ratios.into_iter().zip(2u64..).map(|(r, n)| SeriesRow {
        n,
        phi: n / r.denom() * r.numer(),
        phi_over_n: r,
    });
    match fmt {
        Format::Plain => {
            let w = max_n.to_string().len();
            writeln!(out, "{:>w$}  {:>w$}  phi/n", "n", "phi")?;
            for row in rows {
                writeln!(out, "{:>w$}  {:>w$}  {}", row.n, row.phi, row.phi_over_n)?;
            }
        }
        Format::Csv => {
            writeln!(out, "n,phi,phi_over_n")?;
            for row in rows {
                writeln!(out, "{},{},{}", row.n, row.phi, row.phi_over_n)?;
            }
        }
        Format::Json => json_array(out, rows)?,
    }
    Ok(())
}

fn cmd_bench(
    max_n: u64,
    convention: Convention,
    mode: SieveMode,
    fmt: Format,
    out: Out,
) -> Result<(), CliError> {
    let report = bench_totient_methods(max_n, convention, mode)?;
    let agree = report.checksums_agree();

    #[derive(Serialize)]
    struct Row {
        method: &'static str,
        status: &'static str,
        elapsed_ms: Option<f64>,
        checksum: Option<u64>,
        limit: u64,
    }
    let rows: Vec<Row> = report
        .methods
        .iter()
        .map(|m| {
            let (status, elapsed_ms, checksum) = match m.status {
                MethodStatus::Ran { elapsed, checksum } => {
                    ("ran", Some(elapsed.as_secs_f64() * 1e3), Some(checksum))
                }
                MethodStatus::Skipped { .. } => ("skipped", None, None),
            };
            Row {
                method: m.method.name(),
                status,
                elapsed_ms,
                checksum,
                limit: m.method.limit(),
            }
        })
        .collect();

    match fmt {
        Format::Plain => {
            writeln!(out, "max_n = {max_n} ({} convention)", convention.name())?;
            for r in &rows {
                match (r.elapsed_ms, r.checksum) {
                    (Some(ms), Some(sum)) => {
                        writeln!(out, "{:<20} {:>12.3} ms  checksum {sum}", r.method, ms)?
                    }
                    _ => writeln!(out, "{:<20} skipped (limit {})", r.method, r.limit)?,
                }
            }
            writeln!(
                out,
                "checksums {}",
                if agree { "agree" } else { "DISAGREE" }
            )?;
        }
        Format::Csv => {
            writeln!(out, "method,status,elapsed_ms,checksum,limit")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.method,
                    r.status,
                    r.elapsed_ms
                        .map(|ms| format!("{ms:.3}"))
                        .unwrap_or_default(),
                    cell(r.checksum),
                    r.limit
                )?;
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                max_n: u64,
                convention: Convention,
                methods: &'a [Row],
                checksums_agree: bool,
            }
            json(
                out,
                &Report {
                    max_n,
                    convention,
                    methods: &rows,
                    checksums_agree: agree,
                },
            )?;
        }
    }
    if !agree {
        return Err(CliError::CrossCheck(format!(
            "bench checksums disagree at max_n={max_n}"
        )));
    }
    Ok(())
}

fn cmd_factorize(n: u64, fmt: Format, out: Out) -> Result<(), CliError> {
    let f = factorize(n)?;
    match fmt {
        Format::Plain => writeln!(out, "{n} = {}", factorization_string(&f))?,
        Format::Csv => {
            writeln!(out, "prime,exponent")?;
            for pp in f.factors() {
                writeln!(out, "{},{}", pp.prime, pp.exponent)?;
            }
        }
        Format::Json => json(out, &f)?,
    }
    Ok(())
}

fn cmd_numerators(d: u64, fmt: Format, out: Out) -> Result<(), CliError> {
    let nums = coprime_numerators(d)?;
    match fmt {
        Format::Plain => writeln!(out, "{}", join(&nums, " "))?,
        Format::Csv => {
            writeln!(out, "numerator")?;
            for k in &nums {
                writeln!(out, "{k}")?;
            }
        }
        Format::Json => json(out, &nums)?,
    }
    Ok(())
}

fn cmd_support(
    primes: &[u64],
    limit: u64,
    convention: Convention,
    fmt: Format,
    out: Out,
) -> Result<(), CliError> {
    let rows = numbers_with_prime_support(primes, limit)?
        .into_iter()
        .map(|n| {
            Ok(TotientRow {
                n,
                phi: totient(n, convention)?,
            })
        })
        .collect::<Result<Vec<_>, totient_lab::Error>>()?;
    match fmt {
        Format::Plain => {
            for r in &rows {
                writeln!(out, "{}  phi {}", r.n, r.phi)?;
            }
        }
        Format::Csv => {
            writeln!(out, "n,phi")?;
            for r in &rows {
                writeln!(out, "{},{}", r.n, r.phi)?;
            }
        }
        Format::Json => json(out, &rows)?,
    }
    Ok(())
}

fn cmd_cumulative(checkpoints: &[u64], fmt: Format, out: Out) -> Result<(), CliError> {
    let rows = cumulative_counts(checkpoints)?;
    match fmt {
        Format::Plain => {
            writeln!(out, "max denom.  num. fract.")?;
            for r in &rows {
                writeln!(out, "{:>10}  {:>11}", r.max_denominator, r.fraction_count)?;
            }
        }
        Format::Csv => {
            writeln!(out, "max_denominator,fraction_count")?;
            for r in &rows {
                writeln!(out, "{},{}", r.max_denominator, r.fraction_count)?;
            }
        }
        Format::Json => json(out, &rows)?,
    }
    Ok(())
}
