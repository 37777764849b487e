use std::fs;
use std::process::{Command, Output};

fn spinscatter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinscatter"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn sweep_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nested/run.csv");
    let res = spinscatter(&[
        "sweep",
        "--model",
        "zpnr",
        "--k-steps",
        "50",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let stdout = String::from_utf8(res.stdout).unwrap();
    assert!(stdout.contains("zpnr m=2 U'=10 initial=udd mode=weighted: 50 points (0 nan)"));
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().next(), Some("k0,E,R,T,neg_R,neg_T,neg_total"));
    assert_eq!(csv.lines().count(), 51);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("run.csv");
    fs::write(
        &cfg,
        format!(
            "model = chain\nm = 5\nk_steps = 20\noutput = {}\n",
            out.display()
        ),
    )
    .unwrap();
    let res = spinscatter(&["sweep", "--config", cfg.to_str().unwrap(), "--m", "1"]);
    assert!(res.status.success());
    let stdout = String::from_utf8(res.stdout).unwrap();
    assert!(stdout.starts_with("chain m=1 "), "{stdout}");
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 21);
}

#[test]
fn invalid_configuration_exits_with_2() {
    for args in [
        &["sweep", "--model", "graphene"][..],
        &["sweep", "--k-min", "2", "--k-max", "1"],
        &["sweep", "--initial", "uxd"],
        &["sweep", "--combine-mode", "max"],
        &["sweep", "--config", "/nonexistent/run.cfg"],
        &["figure", "fig9"],
        &["verify", "everything"],
    ] {
        let res = spinscatter(args);
        assert_eq!(res.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&res.stderr).starts_with("error: invalid configuration"));
    }
}

#[test]
fn verify_greens_passes() {
    let res = spinscatter(&["--threads", "2", "verify", "greens"]);
    assert_eq!(res.status.code(), Some(0));
    let stdout = String::from_utf8(res.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS")).count(), 2);
    assert!(stdout.contains("all 2 checks passed"));
}
