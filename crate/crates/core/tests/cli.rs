use std::process::{Command, Output};

use stieltjes_core::cli::{OutputRecord, CSV_HEADER};

fn hyp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stieltjes-hyp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const SMALL: [&str; 4] = ["--terms", "400", "--bits", "128"];

#[test]
fn json_record() {
    let o = hyp(&[&["stieltjes", "--k", "1"][..], &SMALL].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    let rec: OutputRecord = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(rec.quantity, "gamma_1");
    assert_eq!((rec.k, rec.a.as_str()), (1, "1"));
    assert_eq!((rec.terms_used, rec.precision_bits, rec.wall_time_ms), (400, 128, 0));
    assert_eq!(rec.method, "hybrid/asymptotic-tail");
    assert!((rec.value.parse::<f64>().unwrap() + 0.0728158454836767).abs() < 1e-15);
    assert!(rec.error_estimate.parse::<f64>().unwrap() < 1e-30);
    assert_eq!(rec.to_json(), lines[0]);
}

#[test]
fn csv_record_and_half_shift() {
    let o = hyp(&[&["stieltjes", "--k", "1", "--a", "1/2", "--format", "csv"][..], &SMALL].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    let cells: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cells.len(), CSV_HEADER.split(',').count());
    assert_eq!(cells[2], "1/2");
    assert!((cells[3].parse::<f64>().unwrap() + 1.353459680804942).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    let o = hyp(&["stieltjes", "--k", "99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("J_MAX"));

    assert_eq!(hyp(&["stieltjes", "--k", "2", "--a", "1/2"]).status.code(), Some(2));
    assert_eq!(hyp(&["stieltjes", "--k", "1", "--a", "3"]).status.code(), Some(2));
    assert_eq!(hyp(&["stieltjes", "--k", "1", "--accel", "magic"]).status.code(), Some(2));
    assert_eq!(hyp(&["stieltjes", "--k", "1", "--bits", "8"]).status.code(), Some(2));
    assert_eq!(hyp(&["stieltjes", "--k", "1", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(hyp(&["stieltjes"]).status.code(), Some(2));
    assert_eq!(hyp(&["table", "--max-k", "7"]).status.code(), Some(2));
    assert_eq!(hyp(&["--threads", "0", "stieltjes", "--k", "0"]).status.code(), Some(2));
    assert_eq!(hyp(&["--help"]).status.code(), Some(0));

    let o = hyp(&[&["stieltjes", "--k", "1", "--tol", "1e-100"][..], &SMALL].concat());
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).is_empty());
    let o = hyp(&[&["stieltjes", "--k", "1", "--tol", "1e-20"][..], &SMALL].concat());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_reports() {
    let o = hyp(&["verify", "--suite", "lemma1", "--bits", "128", "--tol", "1e-20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("lemma1")).all(|l| l.ends_with("pass")));
    assert!(text.contains("4 checks, 4 passed, 0 failed"));

    let o = hyp(&["verify", "--suite", "lemma1", "--bits", "128", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("4 checks, 0 passed, 4 failed"));
    let failures: Vec<serde_json::Value> = text
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(failures.len(), 4);
    assert!(failures.iter().all(|f| f["failure"] == "ToleranceNotMet" && f["suite"] == "lemma1"));

    assert_eq!(hyp(&["verify", "--suite", "lemma6"]).status.code(), Some(2));
    assert_eq!(hyp(&["verify", "--suite", "lemma1", "--tol", "-1"]).status.code(), Some(2));
}

#[test]
fn table_matches_single_runs() {
    let base = ["--terms", "300", "--bits", "128", "--format", "csv"];
    let o = hyp(&[&["table", "--max-k", "3"][..], &base].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0], CSV_HEADER);
    for k in 0..=3 {
        let ks = k.to_string();
        let single = hyp(&[&["stieltjes", "--k", &ks][..], &base].concat());
        assert_eq!(stdout(&single).lines().nth(1).unwrap(), rows[k + 1]);
    }

    let o = hyp(&[&["table", "--max-k", "1", "--diagnostics"][..], &base].concat());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], format!("{CSV_HEADER},n,summand_slope"));
    let slopes: Vec<f64> = rows[1..].iter().map(|r| r.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert!((slopes[0] + 2.0).abs() < 0.05 && (slopes[1] + 4.0).abs() < 0.05, "{slopes:?}");

    let o = hyp(&["table", "--max-k", "1", "--terms", "300", "--bits", "128", "--diagnostics"]);
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["n"], "300");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["table", "--max-k", "2", "--terms", "500", "--bits", "160"];
    let a = hyp(&args);
    let b = hyp(&[&["--threads", "1"][..], &args].concat());
    let c = hyp(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn timing_flag_reports_wall_time() {
    let o = hyp(&["stieltjes", "--k", "2", "--terms", "3000", "--timing"]);
    let rec: OutputRecord = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(rec.wall_time_ms > 0);
}
