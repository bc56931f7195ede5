use std::process::{Command, Output};

use pisano_core::report::{CensusEntry, Counterexample, ScanRange, SweepParams, SweepReport};

fn pisano(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pisano"))
        .args(args)
        .env_remove("PISANO_JOBS")
        .output()
        .expect("run pisano")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn profile_examples() {
    let o = pisano(&["profile", "--k", "1", "--mod", "10"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "period=60 rank=15 order=4 residue=7 preperiod=0\n"
    );
    let o = pisano(&["profile", "--k", "1", "--mod", "1"]);
    assert!(stdout(&o).starts_with("period=1 rank=1 order=1 "));
    let o = pisano(&["profile", "--a", "2", "--b", "-1", "--mod", "7"]);
    assert!(stdout(&o).contains(" order=1 "));
    let o = pisano(&["profile", "--a", "1", "--b", "0", "--mod", "6"]);
    assert_eq!(
        stdout(&o),
        "period=1 rank=none order=0 residue=none preperiod=1\n"
    );
}

#[test]
fn profile_usage_errors() {
    for args in [
        &["profile", "--k", "1", "--a", "1", "--b", "1", "--mod", "5"][..],
        &["profile", "--a", "1", "--mod", "5"],
        &["profile", "--mod", "5"],
        &["profile", "--k", "1"],
        &["profile", "--k", "1", "--mod", "0"],
        &["profile", "--k", "1", "--mod", "4294967296"],
        &["profile", "--k", "1", "--mod", "5", "--format", "bfile"],
    ] {
        let o = pisano(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn oeis_examples() {
    let plain = |id: &str, max: &str| {
        stdout(&pisano(&[
            "oeis", "--id", id, "--max", max, "--format", "plain",
        ]))
    };
    assert_eq!(plain("A053029", "40"), "5 10 13 17 25 26 34 37\n");
    assert_eq!(plain("A053030", "9"), "3 6 7 8 9\n");
    assert_eq!(plain("A053031", "4"), "1 2 4\n");
    let o = pisano(&["oeis", "--id", "A053031", "--max", "20"]);
    assert_eq!(stdout(&o), "1 1\n2 2\n3 4\n4 11\n5 19\n");
    assert_eq!(
        code(&pisano(&["oeis", "--id", "A000045", "--max", "20"])),
        2
    );
}

#[test]
fn verify_exit_codes() {
    assert_eq!(
        code(&pisano(&[
            "verify",
            "--suite",
            "powers-of-two",
            "--kmax",
            "16"
        ])),
        0
    );
    assert_eq!(
        code(&pisano(&[
            "verify",
            "--suite",
            "main-theorem",
            "--max",
            "2000",
            "--kmax",
            "5"
        ])),
        0
    );
    assert_eq!(
        code(&pisano(&["verify", "--suite", "williams", "--max", "1000"])),
        0
    );
    assert_eq!(code(&pisano(&["verify", "--suite", "carmichael"])), 0);
    assert_eq!(
        code(&pisano(&[
            "verify",
            "--suite",
            "negativemult",
            "--kmax",
            "4",
            "--max",
            "30"
        ])),
        1
    );
    assert_eq!(
        code(&pisano(&[
            "verify",
            "--suite",
            "finite-orders",
            "--case",
            "iv",
            "--max",
            "300"
        ])),
        0
    );
    assert_eq!(
        code(&pisano(&[
            "verify",
            "--suite",
            "finite-orders",
            "--case",
            "vi"
        ])),
        2
    );
    assert_eq!(
        code(&pisano(&["verify", "--suite", "williams", "--case", "i"])),
        2
    );
    assert_eq!(code(&pisano(&["verify", "--suite", "no-such-suite"])), 2);
}

#[test]
fn exit_codes_stable_across_formats() {
    for format in ["plain", "json", "csv"] {
        let ok = pisano(&[
            "verify", "--suite", "williams", "--max", "500", "--format", format,
        ]);
        assert_eq!(code(&ok), 0, "{format}");
        let bad = pisano(&[
            "verify",
            "--suite",
            "negativemult",
            "--kmax",
            "4",
            "--max",
            "30",
            "--format",
            format,
        ]);
        assert_eq!(code(&bad), 1, "{format}");
    }
}

#[test]
fn census_examples() {
    let o = pisano(&[
        "census", "--a", "3", "--b", "5", "--max", "99", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let r: SweepReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.census_values().len(), 20);
    let o = pisano(&[
        "census", "--a", "1", "--b", "1", "--max", "500", "--format", "json",
    ]);
    let r: SweepReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.census_values(), vec![1, 2, 4]);
    assert_eq!(
        code(&pisano(&[
            "census", "--a", "3", "--b", "4", "--max", "20001"
        ])),
        2
    );
}

#[test]
fn wss_examples() {
    assert_eq!(
        stdout(&pisano(&["wss", "--k", "1", "--pmax", "10000"])),
        "\n"
    );
    assert_eq!(stdout(&pisano(&["wss", "--k", "1", "--pmax", "2"])), "\n");
    assert_eq!(
        stdout(&pisano(&["wss", "--k", "2", "--pmax", "100"])),
        "13 31\n"
    );
    assert_eq!(code(&pisano(&["wss", "--k", "1", "--pmax", "100000"])), 2);
}

fn csv_report(text: &str) -> SweepReport {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut report: Option<SweepReport> = None;
    let mut counterexamples = Vec::new();
    let mut census = std::collections::BTreeMap::new();
    for row in rdr.records() {
        let row = row.unwrap();
        match &row[0] {
            "summary" => {
                let params: SweepParams = serde_json::from_str(&row[2]).unwrap();
                let status = serde_json::from_str(&format!("\"{}\"", &row[5])).unwrap();
                report = Some(SweepReport {
                    claim: row[1].to_string(),
                    params,
                    range: ScanRange {
                        lo: row[3].parse().unwrap(),
                        hi: row[4].parse().unwrap(),
                    },
                    status,
                    counterexamples: Vec::new(),
                    census: None,
                });
            }
            "counterexample" => counterexamples.push(Counterexample {
                inputs: row[6]
                    .split(';')
                    .map(|kv| {
                        let (k, v) = kv.split_once('=').unwrap();
                        (k.to_string(), v.parse().unwrap())
                    })
                    .collect(),
                expected: row[7].to_string(),
                actual: row[8].to_string(),
            }),
            "census" => {
                census.insert(
                    row[9].parse::<u64>().unwrap(),
                    CensusEntry {
                        first: row[10].parse().unwrap(),
                        count: row[11].parse().unwrap(),
                    },
                );
            }
            other => panic!("unknown record {other}"),
        }
    }
    let mut report = report.unwrap();
    report.counterexamples = counterexamples;
    if !census.is_empty() {
        report.census = Some(census);
    }
    report
}

#[test]
fn json_and_csv_carry_the_same_report() {
    let commands: [&[&str]; 3] = [
        &[
            "verify",
            "--suite",
            "negativemult",
            "--kmax",
            "4",
            "--max",
            "30",
        ],
        &["verify", "--suite", "williams", "--max", "300"],
        &["census", "--a", "3", "--b", "5", "--max", "150"],
    ];
    for cmd in commands {
        let json = pisano(&[cmd, &["--format", "json"]].concat());
        let csv = pisano(&[cmd, &["--format", "csv"]].concat());
        let from_json: SweepReport = serde_json::from_str(&stdout(&json)).unwrap();
        assert_eq!(from_json, csv_report(&stdout(&csv)), "{cmd:?}");
    }
}

#[test]
fn json_and_csv_profiles_agree() {
    let json = stdout(&pisano(&[
        "profile", "--a", "3", "--b", "4", "--mod", "8", "--format", "json",
    ]));
    let csv = stdout(&pisano(&[
        "profile", "--a", "3", "--b", "4", "--mod", "8", "--format", "csv",
    ]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let mut rdr = csv::Reader::from_reader(csv.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    let row = rdr.records().next().unwrap().unwrap();
    let obj = v.as_object().unwrap();
    assert_eq!(obj.len(), headers.len());
    for (h, cell) in headers.iter().zip(row.iter()) {
        let expected = match &obj[h] {
            serde_json::Value::Null => String::new(),
            x => x.to_string(),
        };
        assert_eq!(cell, expected, "{h}");
    }
    assert_eq!(v["period"], 2);
    assert_eq!(v["order"], 0);
    assert_eq!(v["preperiod"], 2);
}

#[test]
fn json_and_csv_sequences_agree() {
    let json = stdout(&pisano(&[
        "oeis", "--id", "A053029", "--max", "100", "--format", "json",
    ]));
    let csv = stdout(&pisano(&[
        "oeis", "--id", "A053029", "--max", "100", "--format", "csv",
    ]));
    let v: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    let rows: Vec<(usize, u64)> = csv::Reader::from_reader(csv.as_bytes())
        .deserialize()
        .map(|r| r.unwrap())
        .collect();
    assert_eq!(v.len(), rows.len());
    for (obj, (n, value)) in v.iter().zip(rows) {
        assert_eq!(obj["n"], n);
        assert_eq!(obj["value"], value);
    }
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let args = [
        "verify",
        "--suite",
        "lcm-tables",
        "--kmax",
        "3",
        "--max",
        "60",
        "--format",
        "json",
    ];
    let one = pisano(&[&["--jobs", "1"][..], &args].concat());
    let four = pisano(&[&["--jobs", "4"][..], &args].concat());
    let default = pisano(&args);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, default.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_pisano"))
        .args(args)
        .env("PISANO_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(env.stdout, one.stdout);
    assert_eq!(code(&pisano(&[&["--jobs", "0"][..], &args].concat())), 2);
}

#[test]
fn progress_goes_to_stderr() {
    let o = pisano(&["verify", "--suite", "carmichael", "--format", "json"]);
    let r: SweepReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.claim, "carmichael");
    assert!(String::from_utf8_lossy(&o.stderr).contains("carmichael"));
}
