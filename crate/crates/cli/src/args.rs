use clap::{Parser, Subcommand, ValueEnum};
use totient_lab::Convention;

/// Euler's totient, reduced-fraction counts and totient series coefficients.
#[derive(Debug, Parser)]
#[command(name = "totient-lab", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Value of the totient at n = 1: modern (1) or euler (0).
    #[arg(long, global = true, value_enum, default_value_t = ConventionArg::Modern)]
    pub convention: ConventionArg,

    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    /// Worker threads for table construction; more than 1 enables the parallel sieve.
    #[arg(long, global = true, value_parser = parse_threads)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Totient of a single number by the product formula.
    Totient {
        #[arg(value_parser = parse_decimal)]
        n: u64,
        /// Show the factorization and the product-formula derivation.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Totient table for 1..=max_n.
    Table {
        #[arg(value_parser = parse_decimal)]
        max_n: u64,
    },
    /// Count reduced fractions in (0, 1) with denominator at most D.
    Count {
        #[arg(value_parser = parse_decimal)]
        d: u64,
        #[arg(long, value_enum, default_value_t = CountMethod::Sum)]
        method: CountMethod,
        /// List the terms of the exclusion sum.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Farey sequence of order D, endpoints excluded.
    Farey {
        #[arg(value_parser = parse_decimal)]
        d: u64,
    },
    /// Coefficients φ(n) and φ(n)/n of the totient series.
    Series {
        #[arg(value_parser = parse_decimal)]
        max_n: u64,
        /// Group exponents sharing a coefficient by radical.
        #[arg(long)]
        grouped: bool,
    },
    /// Time the totient methods over 1..=max_n and compare checksums.
    Bench {
        #[arg(value_parser = parse_decimal)]
        max_n: u64,
    },
    /// Prime-power factorization by trial division.
    Factorize {
        #[arg(value_parser = parse_decimal)]
        n: u64,
    },
    /// Numerators below D that are prime to D.
    Numerators {
        #[arg(value_parser = parse_decimal)]
        d: u64,
    },
    /// Numbers up to a limit whose prime divisors are exactly the given primes.
    Support {
        /// Comma-separated primes, e.g. 2,3.
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse_decimal)]
        primes: Vec<u64>,
        #[arg(value_parser = parse_decimal)]
        limit: u64,
    },
    /// Cumulative fraction counts at ascending maximum denominators.
    Cumulative {
        #[arg(required = true, value_parser = parse_decimal)]
        checkpoints: Vec<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Modern,
    Euler,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Modern => Convention::Modern,
            ConventionArg::Euler => Convention::Euler,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountMethod {
    Sum,
    Exclusion,
    Enumerate,
    All,
}

/// Plain decimal digits only: no sign, padding, or radix prefix.
pub fn parse_decimal(s: &str) -> Result<u64, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("`{s}` is not a decimal integer"));
    }
    s.parse::<u64>()
        .map_err(|_| format!("`{s}` exceeds the 64-bit ceiling {}", u64::MAX))
}

fn parse_threads(s: &str) -> Result<usize, String> {
    match parse_decimal(s)? {
        0 => Err("thread count must be at least 1".into()),
        n => usize::try_from(n).map_err(|_| format!("`{s}` is too many threads")),
    }
}
