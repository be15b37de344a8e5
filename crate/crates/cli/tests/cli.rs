use std::process::Command;

use critset_cli::run;

fn exec(args: &[&str]) -> (Result<(), critset_cli::CliError>, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["critset"];
    argv.extend_from_slice(args);
    let r = run(argv, &mut out, &mut err);
    (r, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (r, out, _) = exec(args);
    r.unwrap_or_else(|e| panic!("{args:?} failed: {e}"));
    out
}

#[test]
fn params_examples() {
    assert!(ok(&["params", "cycle:5"]).contains("uscs,oscs,ulcs,olcs: 3,3,4,4"));
    assert!(ok(&["params", "latin:2"]).contains("1,1,1,1"));
    assert!(ok(&["params", "complete:4"]).contains("3,3,3,3"));
    let csv = ok(&["--format", "csv", "params", "cycle:7"]);
    assert_eq!(csv.lines().nth(1), Some("FhCKG,7,7,3,4,5,4,6,"));
}

#[test]
fn params_json_has_witnesses() {
    let out = ok(&["--format", "json", "params", "cycle:5"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["olcs"], 4);
    assert_eq!(v["witnesses"]["olcs"]["set"].as_array().unwrap().len(), 4);
}

#[test]
fn table_rows() {
    let t4 = ok(&["--format", "csv", "table", "4"]);
    assert_eq!(t4.lines().count(), 12);
    assert!(t4.contains("C~,4,6,4,3,3,3,3,3"));
    assert!(t4.contains("C],4,4,2,1,1,1,1,1"));
    let t3 = ok(&["--format", "csv", "table", "3"]);
    assert!(t3.contains("Bw,3,3,3,2,2,2,2,2"));
    let t5 = ok(&["--format", "json", "table", "5", "--nonbipartite"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&t5).unwrap();
    assert_eq!(rows.len(), 21);
    for r in rows {
        assert!(r["olcs"].as_u64().unwrap() <= 4);
        assert!(r["uscs"].as_u64() <= r["oscs"].as_u64() && r["ulcs"].as_u64() <= r["olcs"].as_u64());
    }
}

#[test]
fn table_size_limit() {
    let (r, _, _) = exec(&["table", "8"]);
    assert_eq!(r.unwrap_err().code, 2);
}

#[test]
fn atlas_counts() {
    assert_eq!(ok(&["atlas", "5"]).lines().count(), 34);
    assert_eq!(ok(&["atlas", "4", "--up-to"]).lines().count(), 1 + 1 + 2 + 4 + 11);
}

#[test]
fn scan_checks() {
    let dir = tempfile::tempdir().unwrap();
    let atlas6 = dir.path().join("atlas6.g6");
    std::fs::write(&atlas6, ok(&["atlas", "6", "--up-to"])).unwrap();
    let report = ok(&["scan", atlas6.to_str().unwrap(), "--check", "converse"]);
    assert!(report.contains("counterexamples: 0"), "{report}");
    assert!(ok(&["scan", atlas6.to_str().unwrap(), "--check", "prop1"]).contains("counterexamples: 0"));

    let atlas4 = dir.path().join("atlas4.g6");
    std::fs::write(&atlas4, ok(&["atlas", "4", "--up-to"])).unwrap();
    let out = ok(&["--format", "json", "scan", atlas4.to_str().unwrap(), "--check", "uniform"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["graphs"], 19);
    // The paw is the one graph on <= 4 vertices that is not critically uniform.
    assert_eq!(v["counterexamples"], serde_json::json!(["CN"]));

    let empty = dir.path().join("empty.g6");
    std::fs::write(&empty, "").unwrap();
    assert!(ok(&["scan", empty.to_str().unwrap(), "--check", "prop1"]).contains("graphs: 0"));

    let mixed = dir.path().join("mixed.g6");
    std::fs::write(&mixed, "A_\n!!bad\n\nBw\n").unwrap();
    let out = ok(&["--format", "json", "scan", mixed.to_str().unwrap(), "--check", "prop1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["graphs"], 2);
    assert_eq!(v["errors"][0]["line"], 2);
}

#[test]
fn sudoku_commands() {
    assert!(ok(&["sudoku", "gen", "3"]).starts_with("Sud_3: 81 vertices, 810 edges, 20-regular"));
    let a = ok(&["--seed", "7", "sudoku", "trials", "3", "--count", "20"]);
    let b = ok(&["--seed", "7", "--jobs", "1", "sudoku", "trials", "3", "--count", "20"]);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 21);
    assert!(a.starts_with("trial,board_seed,process_seed,size\n"));

    let mnc = ok(&["sudoku", "mnc", "2", "--symmetry"]);
    assert!(mnc.starts_with("minimum clues: 4"));
    let puzzle: String =
        mnc.lines().skip_while(|l| !l.starts_with("witness")).skip(1).map(|l| format!("{l}\n")).collect();
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("witness.txt");
    std::fs::write(&file, &puzzle).unwrap();
    assert_eq!(ok(&["sudoku", "certify", file.to_str().unwrap()]).trim(), "fair: exactly one completion");

    std::fs::write(&file, ". . . .\n. . . .\n. . . .\n. . . .\n").unwrap();
    assert!(ok(&["sudoku", "certify", file.to_str().unwrap()]).starts_with("unfair: at least 2"));
    assert!(ok(&["--cap-extensions", "1000", "sudoku", "certify", file.to_str().unwrap()]).contains("288 completions"));
    std::fs::write(&file, "1 1 . .\n. . . .\n. . . .\n. . . .\n").unwrap();
    assert!(ok(&["sudoku", "certify", file.to_str().unwrap()]).contains("no completion"));
    std::fs::write(&file, "1 2 3\n").unwrap();
    assert_eq!(exec(&["sudoku", "certify", file.to_str().unwrap()]).0.unwrap_err().code, 1);

    assert_eq!(exec(&["sudoku", "mnc", "3"]).0.unwrap_err().code, 1);
}

#[test]
fn reduce_commands() {
    assert!(ok(&["reduce", "ulcs", "complete:3"]).starts_with("ulcs instance: 27 vertices, 45 edges, k = 9"));
    assert!(ok(&["reduce", "olcs", "path:3"]).starts_with("olcs instance: 13 vertices, 17 edges, k = 8"));
    let v = ok(&["reduce", "ulcs", "complete:2", "--verify"]);
    assert!(v.contains("exact: ulcs(G)=4, k=6"), "{v}");
    assert!(v.contains("consistent"));

    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("k3");
    ok(&["reduce", "olcs", "complete:3", "--out", base.to_str().unwrap()]);
    let g6 = std::fs::read_to_string(dir.path().join("k3.g6")).unwrap();
    assert_eq!(critset::parse_graph6(g6.trim()).unwrap().vertex_count(), 33);
    let roles: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("k3.roles.json")).unwrap()).unwrap();
    assert_eq!(roles["k"], 26);
    assert_eq!(roles["roles"].as_array().unwrap().len(), 33);
}

#[test]
fn input_errors() {
    assert_eq!(exec(&["params", "g6:!!"]).0.unwrap_err().code, 1);
    assert_eq!(exec(&["params", "nope:3"]).0.unwrap_err().code, 1);
    assert_eq!(exec(&["params", "sudoku:3"]).0.unwrap_err().code, 2);
    assert_eq!(exec(&["--max-vertices", "4", "params", "cycle:5"]).0.unwrap_err().code, 2);
    assert_eq!(exec(&["bogus"]).0.unwrap_err().code, 1);
    let (r, out, _) = exec(&["--help"]);
    assert!(r.is_ok() && out.contains("params"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_critset");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["params", "cycle:4"]), Some(0));
    assert_eq!(code(&["params", "nope:1"]), Some(1));
    assert_eq!(code(&["params", "sudoku:3"]), Some(2));
}
