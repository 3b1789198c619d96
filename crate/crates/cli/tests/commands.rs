use std::process::{Command, Output};

fn goldbase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goldbase"))
        .args(args)
        .env_remove("GOLDBASE_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = goldbase(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    goldbase(args).status.code().unwrap()
}

#[test]
fn expand() {
    assert_eq!(stdout(&["expand", "7"]), "10000.0001\n");
    assert_eq!(stdout(&["expand", "0"]), "0\n");
    assert_eq!(
        stdout(&["expand", "12", "--algorithm", "both"]),
        "greedy: 100000.101001\nrecursive: 100000.101001\nMATCH\n"
    );
    assert_eq!(
        stdout(&["expand", "16", "--format", "support"]),
        "{5,3,-1,-6}\n"
    );
    assert_eq!(
        stdout(&["expand", "11", "--format", "record"]),
        "N=11 word=10101.0101 support={4,2,0,-2,-4} s_beta=5 T=1 interval=4\n"
    );
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["--json", "expand", "5"])).unwrap();
    assert_eq!(json["word"], "1000.1001");
    assert_eq!(json["T"], 1);
    assert_eq!(json["support"], serde_json::json!([3, -1, -4]));
}

#[test]
fn malformed_input_is_a_usage_error() {
    assert_eq!(code(&["expand", "abc"]), 2);
    assert_eq!(code(&["expand", "-3"]), 2);
    assert_eq!(code(&["expand", "9223372036854775808"]), 2);
    assert_eq!(code(&["expand", "7", "--algorithm", "fast"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&[]), 2);
}

#[test]
fn seq() {
    assert_eq!(
        stdout(&["seq", "--kind", "s", "--from", "0", "--to", "10"])
            .split_whitespace()
            .collect::<Vec<_>>()
            .join(" "),
        "0 1 2 2 3 3 3 2 3 4 4"
    );
    assert_eq!(
        stdout(&["seq", "--kind", "T", "--from", "0", "--to", "28", "--source", "morphic"]),
        "01001110100100010001001110100\n"
    );
    assert_eq!(
        stdout(&["seq", "--kind", "T", "--from", "0", "--to", "0"]),
        "0\n"
    );
    assert_eq!(
        stdout(&["seq", "--kind", "digits", "--from", "5", "--to", "6"]),
        "1000.1001\n1010.0001\n"
    );
}

#[test]
fn seq_sources_agree() {
    for (from, to) in [("0", "0"), ("12", "17"), ("0", "5000"), ("99990", "200000")] {
        let direct = stdout(&["seq", "--kind", "T", "--from", from, "--to", to]);
        let morphic = stdout(&[
            "seq", "--kind", "T", "--from", from, "--to", to, "--source", "morphic",
        ]);
        assert_eq!(direct, morphic, "range {from}..={to}");
    }
}

#[test]
fn seq_rejects_bad_requests() {
    assert_eq!(code(&["seq", "--kind", "T", "--from", "5", "--to", "4"]), 2);
    assert_eq!(
        code(&["seq", "--kind", "s", "--to", "4", "--source", "morphic"]),
        2
    );
    assert_eq!(
        code(&["seq", "--kind", "digits", "--to", "4", "--source", "morphic"]),
        2
    );
    assert_eq!(code(&["seq", "--kind", "x", "--to", "4"]), 2);
    assert_eq!(code(&["seq", "--kind", "T"]), 2);
}

#[test]
fn verify_suites() {
    let out = stdout(&["verify", "--suite", "proposition", "--max-n", "2"]);
    assert!(out.ends_with("suite proposition: PASS\n"), "{out}");

    let out = stdout(&["verify", "--suite", "frequencies", "--prefix-len", "100000"]);
    assert!(out.contains("00: 1/10*sqrt(5)"), "{out}");

    let out = stdout(&["verify", "--suite", "lemmas", "--max-n", "1"]);
    assert!(out.contains("EXCLUDED lemma-odd [n=1..1]"), "{out}");
    assert!(out.contains("PASS     lemma-even [n=1..1]"), "{out}");

    let out = stdout(&[
        "verify",
        "--suite",
        "theorem-prefix",
        "--prefix-len",
        "20000",
    ]);
    assert!(out.contains("PASS     theorem-prefix [N<20000]"), "{out}");

    let out = stdout(&["--json", "verify", "--suite", "proposition", "--max-n", "3"]);
    let last: serde_json::Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert_eq!(last["status"], "pass");
}

#[test]
fn verify_reads_max_n_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_goldbase"))
        .args(["verify", "--suite", "proposition"])
        .env("GOLDBASE_MAX_N", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("proposition [n=1..3]"));
}

#[test]
fn verify_rejects_bad_parameters() {
    assert_eq!(code(&["verify", "--max-n", "0"]), 2);
    assert_eq!(code(&["verify", "--max-n", "x"]), 2);
    assert_eq!(code(&["verify", "--suite", "everything"]), 2);
}

#[test]
fn freq() {
    assert_eq!(stdout(&["freq", "--block-length", "1"]), "0: 1/2, 1: 1/2\n");
    assert_eq!(
        stdout(&["freq", "--block-length", "2"]),
        "00: 1/10*sqrt(5), 01: 1/2 - 1/10*sqrt(5), 10: 1/2 - 1/10*sqrt(5), 11: 1/10*sqrt(5)\n"
    );
    let out = stdout(&["freq", "--block-length", "2", "--empirical", "1000000"]);
    assert_eq!(out.matches("below 1/100: yes").count(), 4, "{out}");
    assert_eq!(code(&["freq", "--block-length", "3"]), 2);
}

#[test]
fn factors() {
    let out = stdout(&["factors", "--length", "1"]);
    assert_eq!(out.lines().next(), Some("{0,1}"));
    let out = stdout(&["factors", "--length", "3", "--probe", "000"]);
    assert!(out.contains("000: found, first position 12"), "{out}");
    let out = stdout(&["factors", "--length", "5", "--probe", "00000"]);
    assert!(
        out.contains("00000: not found up to stabilization"),
        "{out}"
    );
    assert_eq!(code(&["factors", "--length", "3", "--probe", "0000"]), 2);
    assert_eq!(code(&["factors", "--length", "3", "--probe", "0a0"]), 2);
    assert_eq!(code(&["factors", "--length", "0"]), 2);
    assert_eq!(code(&["factors", "--length", "21"]), 2);
}

fn checksum_line(out: &str) -> &str {
    out.lines().find(|l| l.starts_with("checksum:")).unwrap()
}

#[test]
fn bench_checksums_match() {
    let direct = stdout(&["bench", "--count", "1000", "--source", "direct"]);
    let morphic = stdout(&["bench", "--count", "1000", "--source", "morphic"]);
    assert_eq!(checksum_line(&direct), checksum_line(&morphic));
    // FNV-1a of the single byte 0
    let one = stdout(&["bench", "--count", "1", "--source", "direct"]);
    assert_eq!(checksum_line(&one), "checksum: af63bd4c8601b7df");
    assert_eq!(code(&["bench", "--count", "0"]), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "expand",
            "123456789",
            "--algorithm",
            "both",
            "--format",
            "record",
        ][..],
        &["seq", "--kind", "s", "--from", "100", "--to", "400"],
        &["verify", "--suite", "lemmas", "--max-n", "4"],
        &[
            "--json",
            "freq",
            "--block-length",
            "2",
            "--empirical",
            "5000",
        ],
        &["factors", "--length", "6", "--probe", "010010"],
    ] {
        assert_eq!(goldbase(args).stdout, goldbase(args).stdout, "{args:?}");
    }
}
