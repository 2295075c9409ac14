use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_prodbasis"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn construct_from_covector_file() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.txt");
    fs::write(&w, "shape 2 2; Q; 1 0 0 1\n").unwrap();
    let o = run(
        &[
            "construct",
            "--shape",
            "2x2",
            "--field",
            "Q",
            "--covector",
            w.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("vectors shape 2 2; Q; count 3"));
    assert_eq!(out.lines().filter(|l| l.starts_with("vec ")).count(), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("ok=true rank=3 expected=3"));
}

#[test]
fn construct_precondition_and_force() {
    let o = run(&["construct", "--shape", "2x2x2", "--field", "GF2"], None);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    let o = run(
        &["construct", "--shape", "2x2x2", "--field", "GF2", "--force"],
        None,
    );
    assert_eq!(code(&o), 0);
    let o = run(
        &[
            "construct",
            "--shape",
            "2x2x3",
            "--field",
            "GF3",
            "--seed",
            "4",
        ],
        None,
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("count 11"));
}

#[test]
fn construct_general_codimension() {
    let o = run(
        &[
            "construct",
            "--shape",
            "3x3",
            "--field",
            "Q",
            "--random-codim",
            "2",
            "--seed",
            "1",
        ],
        None,
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("count 5"));
    let o = run(
        &[
            "construct",
            "--shape",
            "2x3",
            "--field",
            "Q",
            "--random-codim",
            "3",
        ],
        None,
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn completion_failure_exit_code() {
    let args = [
        "construct",
        "--shape",
        "3x3x3",
        "--field",
        "GF2",
        "--random-codim",
        "2",
        "--force",
        "--seed",
        "3",
    ];
    let o = run(&args, None);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("completion not found"));
}

#[test]
fn witness_piped_into_enumerate() {
    let w = run(&["witness", "--shape", "2x2", "--field", "GF2"], None);
    assert_eq!(code(&w), 0);
    let o = run(&["enumerate"], Some(&stdout(&w)));
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("verdict NO_PRODUCT_BASIS\nproduct-span rank 1\ndim 2\n"));
}

#[test]
fn enumerate_budget_and_parse_errors() {
    let w = run(&["witness", "--shape", "3x3", "--field", "GF3"], None);
    let o = run(&["enumerate", "--budget", "10"], Some(&stdout(&w)));
    assert_eq!(code(&o), 4);
    let o = run(&["enumerate"], Some("not a subspace\n"));
    assert_eq!(code(&o), 5);
    let o = run(&["witness", "--shape", "2x2", "--field", "GF4"], None);
    assert_eq!(code(&o), 5);
    let o = run(&["witness", "--shape", "2by2", "--field", "Q"], None);
    assert_eq!(code(&o), 5);
}

#[test]
fn verify_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let l = dir.path().join("l.txt");
    let w = run(
        &[
            "witness",
            "--shape",
            "2x2",
            "--field",
            "Q",
            "--out",
            l.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code(&w), 0);
    let good = "vec shape 2 2; Q; 1 0 0 1\nvec shape 2 2; Q; 0 1 0 0\n";
    let o = run(&["verify", "--subspace", l.to_str().unwrap()], Some(good));
    // e₁₁ + e₂₂ is not a product vector.
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("failure 0 not_product"));
    let outside = "vec shape 2 2; Q; 0 1 0 0\nvec shape 2 2; Q; 0 0 1 0\n";
    let o = run(
        &["verify", "--subspace", l.to_str().unwrap()],
        Some(outside),
    );
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("failure 1 not_member"));

    let covector = dir.path().join("w.txt");
    fs::write(&covector, "shape 2 3; GF(5); 1 2 3 4 0 1\n").unwrap();
    let basis = dir.path().join("b.txt");
    let c = run(
        &[
            "construct",
            "--shape",
            "2x3",
            "--field",
            "GF5",
            "--covector",
            covector.to_str().unwrap(),
            "--out",
            basis.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code(&c), 0);
    let hyperplane = dir.path().join("h.txt");
    fs::write(
        &hyperplane,
        "subspace shape 2 3; GF(5); dim 5\ncogen shape 2 3; GF(5); 1 2 3 4 0 1\n",
    )
    .unwrap();
    let o = run(
        &[
            "verify",
            "--subspace",
            hyperplane.to_str().unwrap(),
            "--candidates",
            basis.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("ok=true rank=5 expected=5"));
}

#[test]
fn sweep_and_gpt_demo() {
    let o = run(&["sweep", "--shape", "2x2", "--field", "GF3"], None);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("40 classes, 40 with product basis"));
    let o = run(&["gpt-demo", "--shape", "2x2"], None);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o)
        .starts_with("det=-4/81, inertia=(3,1,0), verdict=NOT_SEPARABLE\nsym 4 4 Q shape 2 2\n"));
    let o = run(&["sweep", "--shape", "2x2", "--field", "Q"], None);
    assert_eq!(code(&o), 2);
}

#[test]
fn outputs_are_byte_identical_for_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for i in 0..2 {
        let a = dir.path().join(format!("construct{i}.txt"));
        let o = run(
            &[
                "construct",
                "--shape",
                "2x3x2",
                "--field",
                "Q",
                "--seed",
                "17",
                "--out",
                a.to_str().unwrap(),
            ],
            None,
        );
        assert_eq!(code(&o), 0);
        let b = dir.path().join(format!("sweep{i}.txt"));
        let mut args = vec![
            "sweep",
            "--shape",
            "2x3",
            "--field",
            "GF2",
            "--seed",
            "17",
            "--out",
            b.to_str().unwrap(),
        ];
        if i == 1 {
            args.push("--sequential");
        }
        assert_eq!(code(&run(&args, None)), 0);
        files.push((fs::read(a).unwrap(), fs::read(b).unwrap()));
    }
    assert_eq!(files[0], files[1]);
    let o = run(
        &[
            "construct",
            "--shape",
            "2x3x2",
            "--field",
            "Q",
            "--seed",
            "18",
        ],
        None,
    );
    assert_ne!(o.stdout, files[0].0);
}

#[test]
fn failed_runs_leave_no_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.txt");
    let o = run(
        &[
            "construct",
            "--shape",
            "2x2x2",
            "--field",
            "GF2",
            "--out",
            out.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code(&o), 2);
    assert!(!out.exists());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}
