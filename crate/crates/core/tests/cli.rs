use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_xi-criteria"));
    c.env_remove("RH_PRECISION_BITS");
    c
}

fn zeros_file() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/zeros.txt"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn coeffs_prints_exact_rationals() {
    let o = run(&["coeffs", "--n", "2", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,k,A_kn,F_k\n2,0,8,64\n2,1,8,32\n2,2,1,\n");
    let o = run(&["coeffs", "--n", "1", "--a", "0.5"]);
    assert_eq!(stdout(&o), "n,k,A_kn,F_k\n1,0,8,32\n1,1,1,\n");
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["sum", "--n", "1", "--a", "2", "--max-zeros", "0"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["sum", "--a", "2"]).status.code(), Some(1));
    assert_eq!(run(&["coeffs", "--n", "2", "--a", "1/20"]).status.code(), Some(1));
    assert_eq!(run(&["coeffs", "--n", "2", "--a", "x/y"]).status.code(), Some(1));
    let missing = run(&["sum", "--n", "1", "--zeros-file", "/nonexistent/zeros.txt"]);
    assert_eq!(missing.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("ms.txt");
    std::fs::write(&bad, "0.5 5 1\n0.5 oops 1\n").unwrap();
    let o = run(&["multiset", bad.to_str().unwrap(), "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":2:"));

    let unsorted = dir.path().join("z.txt");
    std::fs::write(&unsorted, "14.134725142\n21.022039639\n20.0\n").unwrap();
    let o = run(&["sum", "--n", "1", "--zeros-file", unsorted.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_fits_a_single_law() {
    let z = zeros_file();
    let o = run(&[
        "verify",
        "--n-range",
        "1..4",
        "--a",
        "2",
        "--zeros-file",
        z.to_str().unwrap(),
        "--max-zeros",
        "100000",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(
        &header[..9],
        &[
            "kind",
            "n",
            "a",
            "sigma",
            "zeros_used",
            "T",
            "value",
            "error_bound",
            "verdict"
        ]
    );
    let ratio_col = header.iter().position(|h| *h == "ratio").unwrap();
    let law_col = header.iter().position(|h| *h == "law").unwrap();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4);
    for (i, r) in rows.iter().enumerate() {
        let n = (i + 1) as f64;
        let ratio: f64 = r[ratio_col].parse().unwrap();
        assert!((ratio * 2.0 * n - 1.0).abs() < 2e-3, "n = {n}: ratio {ratio}");
        assert_eq!(r[law_col], "1/(2n)");
        assert_eq!(r[8], "NONNEGATIVE_WITHIN_ERROR");
    }
}

#[test]
fn output_is_deterministic_and_honours_precision() {
    let z = zeros_file();
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &str| {
        vec![
            "sum".to_string(),
            "--n-range".into(),
            "1..3".into(),
            "--zeros-file".into(),
            z.to_str().unwrap().into(),
            "--max-zeros".into(),
            "5000".into(),
            "--format".into(),
            "json".into(),
            "--output".into(),
            out.into(),
        ]
    };
    let p1 = dir.path().join("a.json");
    let p2 = dir.path().join("b.json");
    assert_eq!(bin().args(args(p1.to_str().unwrap())).status().unwrap().code(), Some(0));
    assert_eq!(bin().args(args(p2.to_str().unwrap())).status().unwrap().code(), Some(0));
    let a = std::fs::read(&p1).unwrap();
    assert_eq!(a, std::fs::read(&p2).unwrap());

    let first: serde_json::Value = serde_json::from_slice(a.split(|b| *b == b'\n').next().unwrap()).unwrap();
    assert_eq!(first["meta"]["precision_bits"], 256);
    assert_eq!(first["kind"], "MODIFIED_SUM");
    // 256 bits -> 64 significant digits
    let value = first["value"].as_str().unwrap();
    let digits = value
        .split('e')
        .next()
        .unwrap()
        .chars()
        .filter(|c| c.is_ascii_digit())
        .count();
    assert_eq!(digits, 64, "{value}");

    let o = bin()
        .env("RH_PRECISION_BITS", "128")
        .args(["deriv", "--n", "1", "--format", "json"])
        .output()
        .unwrap();
    let row: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(row["meta"]["precision_bits"], 128);
    assert_eq!(row["meta"]["nodes"], 64);
}

#[test]
fn multiset_file_and_other_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ms.txt");
    std::fs::write(&f, "# off-line quadruple\n0.9 5 1\n0.1 -5 1\n0.9 -5 1\n0.1 5 1\n").unwrap();
    let o = run(&["multiset", f.to_str().unwrap(), "--n-range", "1..200", "--a", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.split(',').nth(8) == Some("NEGATIVE")));

    let z = zeros_file();
    let zs = z.to_str().unwrap();
    for args in [
        vec!["voros", "--n", "2", "--zeros-file", zs, "--max-zeros", "1000"],
        vec!["lambda", "--n-range", "1..2", "--zeros-file", zs, "--max-zeros", "1000"],
        vec![
            "genli",
            "--n",
            "1",
            "--a",
            "0.4",
            "--zeros-file",
            zs,
            "--max-zeros",
            "1000",
        ],
        vec!["pustylnikov", "--n", "2"],
        vec!["arith", "--a", "2", "--checkpoints", "100,1000"],
        vec!["arith", "--a", "1/2", "--checkpoints", "100,1000"],
    ] {
        let o = run(&args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(stdout(&o).lines().count() >= 2, "{args:?}");
    }
    let probe = stdout(&run(&["arith", "--a", "0.5", "--checkpoints", "100,1000"]));
    assert!(probe.starts_with("a,N,partial,reference,abs_error,exploratory\n"));
    assert!(probe.lines().skip(1).all(|l| l.ends_with(",true")));
}
