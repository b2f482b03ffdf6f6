use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use totient_lab::{
    count_by_exclusion, cumulative_counts, farey_sequence, group_by_coefficient,
    integrated_series_coefficients, totient_sieve, Convention,
};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_totient-lab"))
        .args(args)
        .output()
        .expect("failed to execute totient-lab")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout is not UTF-8")
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    std::fs::read_to_string(path).unwrap()
}

fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(text.as_bytes())
        .records()
        .collect::<Result<_, _>>()
        .expect("invalid CSV")
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("invalid JSON")
}

#[test]
fn golden_files() {
    assert_eq!(
        stdout(&["table", "100", "--convention", "euler", "--format", "csv"]),
        golden("table100.csv")
    );
    assert_eq!(
        stdout(&["farey", "10", "--format", "csv"]),
        golden("farey10.csv")
    );
}

#[test]
fn cumulative_counts_against_golden_files() {
    let got = csv_rows(&stdout(&[
        "cumulative",
        "10",
        "20",
        "30",
        "40",
        "50",
        "60",
        "70",
        "80",
        "90",
        "100",
        "--format",
        "csv",
    ]));
    let got: Vec<(u64, u64)> = got
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect();

    // running sums of the golden totient table
    let phis: Vec<u64> = csv_rows(&golden("table100.csv"))
        .iter()
        .map(|r| r[1].parse().unwrap())
        .collect();
    for &(d, count) in &got {
        assert_eq!(count, phis[1..d as usize].iter().sum::<u64>(), "D={d}");
    }

    // The published cumulative table carries +10 at D=80 and D=90 relative
    // to its own totient table; every other row must match it exactly.
    let published = csv_rows(&golden("cumulative.csv"));
    for (row, &(d, count)) in published.iter().zip(&got) {
        let want: u64 = row[1].parse().unwrap();
        assert_eq!(row[0].parse::<u64>().unwrap(), d);
        match d {
            80 | 90 => assert_eq!(count + 10, want, "D={d}"),
            _ => assert_eq!(count, want, "D={d}"),
        }
    }
}

#[test]
fn totient_command() {
    let verbose = stdout(&["totient", "9450", "--verbose"]);
    assert!(verbose.contains("distinct primes = 2, 3, 5, 7"));
    assert!(verbose.contains("= 2160"));
    assert_eq!(stdout(&["totient", "1", "--convention", "euler"]), "0\n");
    assert_eq!(stdout(&["totient", "1"]), "1\n");

    let v = json(&stdout(&[
        "totient",
        "9450",
        "--verbose",
        "--format",
        "json",
    ]));
    assert_eq!(v["phi"], 2160);
    assert_eq!(v["primes"], serde_json::json!([2, 3, 5, 7]));
    assert_eq!(
        v["factorization"][1],
        serde_json::json!({"prime": 3, "exponent": 3})
    );
}

#[test]
fn usage_and_domain_errors_exit_two() {
    let cases: [&[&str]; 9] = [
        &["totient", "0"],
        &["totient", "+5"],
        &["totient", "0x10"],
        &["totient", " 5"],
        &["totient", "18446744073709551616"],
        &["count", "1"],
        &["count", "10001", "--method", "enumerate"],
        &["farey", "100001"],
        &["no-such-command"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?} printed no diagnostic");
        assert!(out.stdout.is_empty(), "{args:?} printed to stdout");
    }
    let out = run(&["totient", "0"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("domain error"));
}

#[test]
fn table_command() {
    let plain = stdout(&["table", "12", "--convention", "euler"]);
    let phis: Vec<u64> = plain
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(phis, vec![0, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    assert_eq!(
        csv_rows(&stdout(&["table", "1", "--format", "csv"])).len(),
        1
    );
}

#[test]
fn count_command() {
    let all = stdout(&["count", "20", "--method", "all"]);
    for line in [
        "total unreduced: 190",
        "excluded: 63",
        "count (exclusion): 127",
        "count (totient sum): 127",
        "count (enumeration): 127",
        "all methods agree",
    ] {
        assert!(all.contains(line), "missing {line:?} in {all}");
    }
    let v = json(&stdout(&[
        "count", "100", "--method", "sum", "--format", "json",
    ]));
    assert_eq!(v["count_by_totient_sum"], 3043);
    assert!(v.get("excluded").is_none());
    let v = json(&stdout(&[
        "count",
        "2",
        "--method",
        "exclusion",
        "--format",
        "json",
    ]));
    assert_eq!(v["count_by_exclusion"], 1);
    assert_eq!(v["excluded"], 0);
}

#[test]
fn farey_command() {
    let plain = stdout(&["farey", "5"]);
    let lines: Vec<&str> = plain.lines().collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[8], "4/5");
    assert_eq!(lines[9], "count: 9");
    assert_eq!(
        csv_rows(&stdout(&["farey", "10", "--format", "csv"])).len(),
        31
    );
    assert_eq!(stdout(&["farey", "2"]), "1/2\ncount: 1\n");
}

#[test]
fn series_command() {
    let rows = csv_rows(&stdout(&["series", "10", "--format", "csv"]));
    let ratios: Vec<&str> = rows.iter().map(|r| r.get(2).unwrap()).collect();
    assert_eq!(
        ratios,
        ["1/2", "2/3", "1/2", "4/5", "1/3", "6/7", "1/2", "2/3", "2/5"]
    );

    let groups = json(&stdout(&["series", "64", "--grouped", "--format", "json"]));
    let two = &groups[0];
    assert_eq!(two["radical"], 2);
    assert_eq!(two["coefficient"], serde_json::json!({"num": 1, "den": 2}));
    assert_eq!(two["members"], serde_json::json!([2, 4, 8, 16, 32, 64]));

    assert_eq!(
        csv_rows(&stdout(&["series", "2", "--format", "csv"])).len(),
        1
    );
}

#[test]
fn bench_command() {
    let v = json(&stdout(&["bench", "10000", "--format", "json"]));
    assert_eq!(v["checksums_agree"], true);
    let methods = v["methods"].as_array().unwrap();
    assert_eq!(methods.len(), 3);
    assert!(methods
        .iter()
        .all(|m| m["status"] == "ran" && m["checksum"] == 30_397_486));

    let v = json(&stdout(&["bench", "1", "--format", "json"]));
    assert!(v["methods"]
        .as_array()
        .unwrap()
        .iter()
        .all(|m| m["checksum"] == 1));
}

#[test]
fn bench_skips_oracle_at_ten_million() {
    let rows = csv_rows(&stdout(&["bench", "10000000", "--format", "csv"]));
    assert_eq!(&rows[0][0], "bruteforce-oracle");
    assert_eq!(&rows[0][1], "skipped");
    assert_eq!(&rows[1][1], "ran");
    assert_eq!(&rows[2][1], "ran");
    assert_eq!(&rows[1][3], &rows[2][3]);
}

#[test]
fn threads_flag_gives_identical_table() {
    let seq = stdout(&["table", "1000", "--format", "csv"]);
    let par = stdout(&["table", "1000", "--format", "csv", "--threads", "4"]);
    assert_eq!(seq, par);
    assert_eq!(
        run(&["table", "10", "--threads", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn small_subcommands() {
    assert_eq!(stdout(&["factorize", "360"]), "360 = 2^3 * 3^2 * 5\n");
    assert_eq!(stdout(&["numerators", "24"]), "1 5 7 11 13 17 19 23\n");
    let rows = csv_rows(&stdout(&[
        "support", "--primes", "2,3", "100", "--format", "csv",
    ]));
    let ns: Vec<&str> = rows.iter().map(|r| r.get(0).unwrap()).collect();
    assert_eq!(ns, ["6", "12", "18", "24", "36", "48", "54", "72", "96"]);
    assert_eq!(
        run(&["support", "--primes", "2,4", "100"]).status.code(),
        Some(2)
    );
}

#[test]
fn csv_and_json_round_trip() {
    let table = totient_sieve(1000, Convention::Euler).unwrap();
    let rows = csv_rows(&stdout(&[
        "table",
        "1000",
        "--convention",
        "euler",
        "--format",
        "csv",
    ]));
    let parsed: Vec<(u64, u64)> = rows
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect();
    assert_eq!(parsed, table.iter().collect::<Vec<_>>());
    let v = json(&stdout(&[
        "table",
        "1000",
        "--convention",
        "euler",
        "--format",
        "json",
    ]));
    let parsed: Vec<(u64, u64)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["n"].as_u64().unwrap(), e["phi"].as_u64().unwrap()))
        .collect();
    assert_eq!(parsed, table.iter().collect::<Vec<_>>());

    let seq = farey_sequence(1000).unwrap();
    let rows = csv_rows(&stdout(&["farey", "1000", "--format", "csv"]));
    assert_eq!(rows.len(), seq.len());
    assert!(rows.iter().zip(&seq).all(|(r, f)| {
        r[0].parse::<u64>().unwrap() == f.numerator()
            && r[1].parse::<u64>().unwrap() == f.denominator()
    }));
    let v = json(&stdout(&["farey", "200", "--format", "json"]));
    assert_eq!(
        v["count"].as_u64().unwrap() as usize,
        farey_sequence(200).unwrap().len()
    );
    assert_eq!(
        v["fractions"][0],
        serde_json::json!({"numerator": 1, "denominator": 200})
    );

    let coeffs = integrated_series_coefficients(1000).unwrap();
    let v = json(&stdout(&["series", "1000", "--format", "json"]));
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), coeffs.len());
    for (e, c) in arr.iter().zip(&coeffs) {
        assert_eq!(e["phi_over_n"]["num"].as_u64().unwrap(), c.numer());
        assert_eq!(e["phi_over_n"]["den"].as_u64().unwrap(), c.denom());
        let n = e["n"].as_u64().unwrap();
        assert_eq!(e["phi"].as_u64().unwrap(), table.get(n).unwrap());
    }

    let groups = group_by_coefficient(1000).unwrap();
    let v: Value = json(&stdout(&[
        "series",
        "1000",
        "--grouped",
        "--format",
        "json",
    ]));
    assert_eq!(v, serde_json::to_value(&groups).unwrap());

    let report = count_by_exclusion(1000).unwrap();
    let rows = csv_rows(&stdout(&[
        "count", "1000", "--method", "all", "--format", "csv",
    ]));
    assert_eq!(rows[0][2].parse::<u64>().unwrap(), report.excluded);
    assert_eq!(
        rows[0][3].parse::<u64>().unwrap(),
        report.count_by_exclusion
    );
    assert_eq!(
        rows[0][5].parse::<u64>().unwrap(),
        report.count_by_totient_sum
    );

    let cps = cumulative_counts(&[250, 500, 1000]).unwrap();
    let v = json(&stdout(&[
        "cumulative",
        "250",
        "500",
        "1000",
        "--format",
        "json",
    ]));
    assert_eq!(v, serde_json::to_value(&cps).unwrap());
}

#[test]
fn machine_formats_are_deterministic() {
    let commands: [&[&str]; 6] = [
        &["table", "500", "--format", "json"],
        &["farey", "50", "--format", "csv"],
        &["series", "300", "--grouped", "--format", "json"],
        &["series", "300", "--format", "csv"],
        &["count", "300", "--method", "all", "--format", "json"],
        &["totient", "9450", "--verbose", "--format", "json"],
    ];
    for args in commands {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}
