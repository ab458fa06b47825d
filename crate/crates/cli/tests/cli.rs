use std::process::Command as Process;

use akr_cli::{parse_csv, parse_json, run_cli, Cell, Payload, RunConfig};
use proptest::prelude::*;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn akr(args: &str) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("akr").chain(args.split_whitespace());
    let code = run_cli(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn float(cell: &Cell) -> f64 {
    match cell {
        Cell::Float(v) => *v,
        Cell::Int(v) => *v as f64,
        other => panic!("expected a number, got {other:?}"),
    }
}

fn column<'a>(p: &'a Payload, name: &str) -> Vec<&'a Cell> {
    p.rows
        .iter()
        .map(|r| &r.iter().find(|(k, _)| k == name).expect("column present").1)
        .collect()
}

fn summary<'a>(p: &'a Payload, key: &str) -> &'a Cell {
    &p.summary.iter().find(|(k, _)| k == key).expect("summary key present").1
}

#[test]
fn nodes_example() {
    let r = akr("nodes --n 4 --j 2");
    assert_eq!(r.code, 0, "{}", r.stderr);
    let p = parse_csv(&r.stdout).unwrap();
    let want = [0.0, 0.0, 0.408_248_3, 0.707_106_8, 1.0];
    let ks: Vec<_> = column(&p, "k").into_iter().cloned().collect();
    assert_eq!(ks, (0..=4).map(Cell::Int).collect::<Vec<_>>());
    for (t, w) in column(&p, "t").into_iter().zip(want) {
        assert!((float(t) - w).abs() < 5e-8, "{t:?} vs {w}");
    }
    assert_eq!(float(column(&p, "t")[0]), 0.0);
    assert_eq!(float(column(&p, "t")[4]), 1.0);
}

#[test]
fn lemma_example_is_identically_zero() {
    let r = akr("lemma --x 1.0 --n0 64 --doublings 4");
    assert_eq!(r.code, 0, "{}", r.stderr);
    let p = parse_csv(&r.stdout).unwrap();
    assert_eq!(p.rows.len(), 5);
    assert!(column(&p, "value").into_iter().all(|v| float(v) == 0.0));
    assert_eq!(summary(&p, "verdict"), &Cell::Text("PASS".into()));
}

#[test]
fn residual_example_reaches_minus_quarter_e() {
    let r = akr("residual --kind akr-2d --fn exp-sum --point 0.5 0.5 --n0 64 --doublings 7");
    assert_eq!(r.code, 0, "{}", r.stderr);
    let p = parse_csv(&r.stdout).unwrap();
    let target = -0.25 * std::f64::consts::E;
    let limit = float(summary(&p, "limit_estimate"));
    assert!(((limit - target) / target).abs() < 1e-2);
    assert!((float(summary(&p, "target")) - target).abs() < 1e-6);
    assert_eq!(summary(&p, "verdict"), &Cell::Text("PASS".into()));
    let rates = column(&p, "rate_estimate");
    assert_eq!(rates[0], &Cell::Empty);
    assert_eq!(column(&p, "diff")[0], &Cell::Empty);
    assert!((float(rates[rates.len() - 1]) - 1.0).abs() < 0.05);
}

#[test]
fn csv_and_json_payloads_match() {
    for args in [
        "residual --kind akr-1d --fn e3 --x 0.3 --n0 32 --doublings 5",
        "residual --kind akr-minus-bernstein-2d --fn runge-2d --point 0.25 0.75 --n0 16 --doublings 4",
        "decompose --fn sinpix-cospiy --point 0.3 0.6 --n0 8 --doublings 3",
        "nodes --n 9 --j 3",
        "eval --kind bernstein-2d --fn exp-sum --n 10 --point 0 1",
    ] {
        let csv = akr(args);
        let json = akr(&format!("{args} --format json"));
        assert_eq!(csv.code, json.code, "{args}");
        let a = parse_csv(&csv.stdout).unwrap();
        let b = parse_json(&json.stdout).unwrap();
        assert_eq!(a, b, "{args}");
        assert!(!a.rows.is_empty());
    }
}

#[test]
fn json_document_shape() {
    let r = akr("lemma --x 0.4 --n0 32 --doublings 3 --format json");
    let doc: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let keys: Vec<_> = doc.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["command", "config", "rows", "summary"]);
    assert_eq!(doc["command"], "lemma");
    for key in ["limit_estimate", "rate_estimate", "verdict"] {
        assert!(doc["summary"].get(key).is_some(), "{key}");
    }
}

#[test]
fn floats_carry_17_significant_digits() {
    let r = akr("eval --kind akr-1d --fn e2 --n 7 --x 0.3");
    let line = r.stdout.lines().nth(1).unwrap();
    let value = line.split(',').nth(1).unwrap();
    let mantissa = value.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{value}");
}

#[test]
fn exit_codes() {
    assert_eq!(akr("nodes --j 2").code, 2);
    assert_eq!(akr("nodes --n 4 --j 1").code, 2);
    assert_eq!(akr("residual --kind akr-2d --point 0 0.5").code, 2);
    assert_eq!(akr("residual --fn no-such-thing").code, 2);
    assert_eq!(akr("lemma --doublings 2").code, 2);
    assert_eq!(akr("frobnicate").code, 2);
    assert_eq!(akr("--help").code, 0);
    // j = 3 has no asserted limit, so the run succeeds without a verdict.
    let r = akr("residual --kind akr-1d --fn e2 --j 3 --x 0.5 --n0 16 --doublings 3");
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("UNASSERTED"));
    // An absurd tolerance fails the verdict.
    let r = akr("residual --kind akr-1d --fn e2 --x 0.5 --n0 16 --doublings 3 --tolerance 1e-300");
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("FAIL"));
}

#[test]
fn json_mode_errors_are_machine_readable() {
    for (args, kind) in [
        ("residual --fn e1 --format json", "invalid-arguments"),
        ("residual --format json --bogus", "invalid-arguments"),
    ] {
        let r = akr(args);
        assert_eq!(r.code, 2);
        assert!(r.stdout.is_empty());
        let doc: serde_json::Value = serde_json::from_str(r.stderr.trim()).unwrap();
        assert_eq!(doc["error"]["kind"], kind, "{args}");
        assert!(doc["error"]["message"].as_str().is_some_and(|m| !m.is_empty()));
    }
}

#[test]
fn out_writes_a_file() {
    let path = std::env::temp_dir().join(format!("akr-cli-out-{}.csv", std::process::id()));
    let r = akr(&format!("nodes --n 3 --j 2 --out {}", path.display()));
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(parse_csv(&text).unwrap().rows.len(), 4);
}

#[test]
fn dry_run_prints_the_resolved_config() {
    let r = akr("residual --dry-run");
    assert_eq!(r.code, 0);
    let cfg: RunConfig = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(cfg.fn_name.as_deref(), Some("exp-sum"));
    assert_eq!(cfg.point, [0.5, 0.5]);
    let again = akr(&format!("akr {} --dry-run", cfg.to_args().join(" ")).replacen("akr ", "", 1));
    assert_eq!(serde_json::from_str::<RunConfig>(&again.stdout).unwrap(), cfg);
}

#[test]
fn parallel_output_matches_sequential() {
    let args = ["akr", "residual", "--kind", "akr-2d", "--fn", "runge-2d", "--n0", "16", "--doublings", "4"];
    let (config, _) = RunConfig::try_parse_from(args).unwrap();
    let one = akr_cli::run(&config, 1).unwrap().report.payload();
    let four = akr_cli::run(&config, 4).unwrap().report.payload();
    assert_eq!(one, four);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_akr");
    let ok = Process::new(bin).args(["nodes", "--n", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Process::new(bin).args(["nodes"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn verify_exits_zero_iff_every_criterion_passes() {
    let r = akr("verify");
    let p = parse_csv(&r.stdout).unwrap();
    assert_eq!(p.rows.len(), 8);
    let all = column(&p, "passed").iter().all(|c| **c == Cell::Bool(true));
    assert_eq!(r.code == 0, all);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

fn kind_strategy() -> impl Strategy<Value = (&'static str, &'static str, usize)> {
    prop_oneof![
        Just(("akr-1d", "e2", 1)),
        Just(("bernstein-1d", "e3", 1)),
        Just(("akr-2d", "exp-sum", 2)),
        Just(("bernstein-2d", "runge-2d", 2)),
        Just(("akr-minus-bernstein-2d", "monomial(2,1)", 2)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dry_run_round_trips(
        (kind, name, dims) in kind_strategy(),
        coords in prop::collection::vec(1e-6f64..=1.0, 2),
        n0 in 3usize..200,
        doublings in 3u32..10,
        tolerance in 1e-9f64..1.0,
        json in any::<bool>(),
    ) {
        let mut argv: Vec<String> = ["akr", "residual", "--kind", kind, "--fn", name]
            .iter().map(|s| s.to_string()).collect();
        argv.push("--point".into());
        argv.extend(coords[..dims].iter().map(|c| format!("{c:?}")));
        argv.extend(["--n0".into(), n0.to_string(), "--doublings".into(), doublings.to_string()]);
        argv.extend(["--tolerance".into(), format!("{tolerance:?}")]);
        if json {
            argv.extend(["--format".into(), "json".into()]);
        }
        let (cfg, _) = RunConfig::try_parse_from(&argv).unwrap();
        let mut back = vec!["akr".to_string()];
        back.extend(cfg.to_args());
        let (again, _) = RunConfig::try_parse_from(&back).unwrap();
        prop_assert_eq!(&again, &cfg);

        let mut out = Vec::new();
        argv.push("--dry-run".into());
        prop_assert_eq!(run_cli(argv, &mut out, &mut Vec::new()), 0);
        let printed: RunConfig = serde_json::from_slice(&out).unwrap();
        prop_assert_eq!(printed, cfg);
    }
}
