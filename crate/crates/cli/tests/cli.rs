use std::io::Write;
use std::process::{Command, Output, Stdio};

use subrep_core::{Finder, Oracle, RationalDelta, Word};

const W1: &str = "ababababcababababab";

fn subrep(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_subrep"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn lines(o: &Output) -> Vec<String> {
    String::from_utf8(o.stdout.clone()).unwrap().lines().map(str::to_string).collect()
}

#[test]
fn find_tsv_and_json() {
    let o = subrep(&["find", "--delta", "0.5"], &format!("{W1}\n"));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        lines(&o),
        ["1\t17\t9\t1.888889", "1\t19\t11\t1.727273", "3\t15\t7\t1.857143", "5\t13\t5\t1.800000", "7\t11\t3\t1.666667"]
    );
    let j = subrep(&["find", "--delta", "1/2", "--format", "json"], W1);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    let triples: Vec<String> =
        v.as_array().unwrap().iter().map(|r| format!("{}\t{}\t{}", r["beg"], r["end"], r["period"])).collect();
    let tsv: Vec<String> = lines(&o).iter().map(|l| l.rsplit_once('\t').unwrap().0.to_string()).collect();
    assert_eq!(triples, tsv);
    assert_eq!(v[2]["exponent_num"], 13);
    assert_eq!(v[2]["exponent_den"], 7);
}

#[test]
fn find_errors_and_edge_cases() {
    let o = subrep(&["find", "--delta", "1.5"], W1);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(subrep(&["find", "--delta", "0"], W1).status.code(), Some(2));
    assert_eq!(subrep(&["find"], W1).status.code(), Some(2));

    let o = subrep(&["find", "--delta", "0.5"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());

    let o = subrep(&["find", "--delta", "0.5", "/definitely/not/here"], "");
    assert_eq!(o.status.code(), Some(1));
    let o = subrep(&["find", "--delta", "0.5", "--ints"], "1 2 x");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn file_and_integer_input() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "0 1 0 1 0 1 0 1 2 0 1 0 1 0 1 0 1 0 1").unwrap();
    let path = f.path().to_str().unwrap();
    let from_file = subrep(&["find", "--delta", "1/2", "--ints", path], "");
    let from_stdin = subrep(&["find", "--delta", "1/2"], W1);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, from_stdin.stdout);
}

#[test]
fn runs_command() {
    let o = subrep(&["runs"], "ababaabaaababab\n");
    assert_eq!(
        lines(&o),
        [
            "1\t5\t2\t2.500000",
            "3\t9\t3\t2.333333",
            "5\t6\t1\t2.000000",
            "5\t12\t4\t2.000000",
            "8\t10\t1\t3.000000",
            "10\t15\t2\t3.000000"
        ]
    );
    let o = subrep(&["runs"], "abc");
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn repeats_command() {
    let delta = RationalDelta::new(1, 2).unwrap();
    let w = Word::from(W1);
    let n = w.len() as u32;
    let want: Vec<String> = Oracle::default()
        .brute_max_repeats(&w, 1..=n - 1)
        .unwrap()
        .into_iter()
        .filter(|r| r.is_gapped() && delta.alpha_gapped(r.period, r.copy))
        .map(|r| format!("{}\t{}\t{}\t{}\t1", r.beg, r.period, r.copy, r.end()))
        .collect();
    assert_eq!(lines(&subrep(&["repeats", "--delta", "0.5"], W1)), want);
    assert_eq!(lines(&subrep(&["repeats", "--alpha", "2"], W1)), want);
    assert_eq!(Finder::new(&w).unwrap().gapped_repeats(&delta).len(), want.len());
    assert_eq!(subrep(&["repeats", "--alpha", "0.5"], W1).status.code(), Some(2));
    assert_eq!(subrep(&["repeats"], W1).status.code(), Some(2));
}

#[test]
fn verify_command() {
    let o = subrep(&["verify", "--mode", "exhaustive", "--sigma", "2", "--max-n", "10", "--delta", "1/2,1/3"], "");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));

    let args = ["verify", "--mode", "random", "--count", "100", "--max-n", "256", "--seed", "1"];
    let a = subrep(&args, "");
    let b = subrep(&args, "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let o = subrep(&["verify", "--max-n", "8", "--inject-fault"], "");
    assert_eq!(o.status.code(), Some(3));
    let report = String::from_utf8(o.stdout).unwrap();
    assert!(report.contains("minimal failing word \"0 1 0\" (n=3) delta 1/2"), "{report}");
}

#[test]
fn bench_command() {
    let o = subrep(&["bench", "--len", "0"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o).len(), 1);

    let o = subrep(&["bench", "--len", "2^10,3000", "--gen", "fibonacci"], "");
    let rows = lines(&o);
    let header: Vec<&str> = rows[0].split(',').collect();
    let col = header.iter().position(|&h| h == "runs_lt_n").unwrap();
    assert_eq!(rows.len(), 3);
    for row in &rows[1..] {
        assert_eq!(row.split(',').nth(col), Some("true"));
    }
}

#[test]
fn output_is_deterministic() {
    let input = "abaababaabaababaababaabaababaabaab";
    for args in [["find", "--delta", "1/3"], ["runs", "--format", "json"]] {
        assert_eq!(subrep(&args, input).stdout, subrep(&args, input).stdout);
    }
}
