use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn qbasis<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_qbasis")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write_circuit(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn simulate_bell_with_dd() {
    let o = qbasis(
        ["simulate", "--backend", "dd"]
            .map(Into::into)
            .into_iter()
            .chain([fixture("bell.qcf").into_os_string(), "--full".into()]),
    );
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "00 0.70710678118654757 0\n01 0 0\n10 0 0\n11 0.70710678118654757 0\n");
    assert!(stderr(&o).is_empty());
}

#[test]
fn sparse_dump_skips_zero_rows() {
    let o = qbasis(["simulate".as_ref(), "--backend".as_ref(), "dense".as_ref(), fixture("bell.qcf").as_os_str()]);
    assert_eq!(stdout(&o), "00 0.70710678118654757 0\n11 0.70710678118654757 0\n");
}

fn parse_dump(text: &str) -> Vec<(String, f64, f64)> {
    text.lines()
        .map(|l| {
            let f: Vec<&str> = l.split(' ').collect();
            (f[0].to_owned(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect()
}

#[test]
fn backends_agree_on_fixtures() {
    for name in ["bell.qcf", "bell_padded.qcf", "ghz3.qcf", "mixed.qcf"] {
        let dumps: Vec<_> = ["dense", "dd", "tn"]
            .iter()
            .map(|b| {
                let o = qbasis([
                    "simulate".as_ref(),
                    "--backend".as_ref(),
                    b.as_ref(),
                    "--full".as_ref(),
                    fixture(name).as_os_str(),
                ]);
                assert_eq!(code(&o), 0, "{name} {b}");
                parse_dump(&stdout(&o))
            })
            .collect();
        for other in &dumps[1..] {
            assert_eq!(other.len(), dumps[0].len());
            for (a, b) in dumps[0].iter().zip(other) {
                assert_eq!(a.0, b.0);
                assert!((a.1 - b.1).abs() < 1e-12 && (a.2 - b.2).abs() < 1e-12, "{name}: {a:?} vs {b:?}");
            }
        }
    }
}

#[test]
fn amplitude_queries() {
    for backend in ["dense", "dd", "tn"] {
        let o = qbasis([
            "amplitude".as_ref(),
            "--backend".as_ref(),
            backend.as_ref(),
            "--basis".as_ref(),
            "11".as_ref(),
            fixture("bell.qcf").as_os_str(),
        ]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o), "11 0.70710678118654757 0\n", "{backend}");
    }
    let o = qbasis([
        "amplitude".as_ref(),
        "--backend".as_ref(),
        "tn".as_ref(),
        "--basis".as_ref(),
        "101".as_ref(),
        fixture("bell.qcf").as_os_str(),
    ]);
    assert_eq!(code(&o), 64);
    assert!(stdout(&o).is_empty());
    let o = qbasis([
        "amplitude".as_ref(),
        "--backend".as_ref(),
        "zx".as_ref(),
        "--basis".as_ref(),
        "11".as_ref(),
        fixture("bell.qcf").as_os_str(),
    ]);
    assert_eq!(code(&o), 64);
}

fn verify(method: &str, a: &Path, b: &Path) -> Output {
    qbasis(["verify".as_ref(), "--method".as_ref(), method.as_ref(), a.as_os_str(), b.as_os_str()])
}

#[test]
fn verify_verdicts_and_exit_codes() {
    let (bell, padded, no_cx) = (fixture("bell.qcf"), fixture("bell_padded.qcf"), fixture("bell_no_cx.qcf"));
    let o = verify("dd", &bell, &bell);
    assert_eq!((code(&o), stdout(&o)), (0, "verdict=equivalent method=dd\n".to_owned()));
    for m in ["dense", "dd", "zx"] {
        let o = verify(m, &bell, &padded);
        assert_eq!((code(&o), stdout(&o)), (0, format!("verdict=equivalent method={m}\n")));
    }
    let o = verify("dense", &bell, &no_cx);
    assert_eq!(code(&o), 1);
    let line = stdout(&o);
    assert!(
        line == "verdict=not_equivalent method=dense witness=10\n"
            || line == "verdict=not_equivalent method=dense witness=11\n",
        "{line}"
    );
    let o = verify("zx", &bell, &no_cx);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).ends_with(" fallback=dense\n"));

    let o = verify("tn", &bell, &bell);
    assert_eq!(code(&o), 64);
    let o = verify("dd", &bell, &fixture("ghz3.qcf"));
    assert_eq!(code(&o), 64);
    assert!(stderr(&o).contains("widths differ"));
}

#[test]
fn verify_inconclusive_without_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_circuit(&dir, "a.qcf", "qubits 11\nt 0\n");
    let b = write_circuit(&dir, "b.qcf", "qubits 11\nx 0\n");
    let o = verify("zx", &a, &b);
    assert_eq!((code(&o), stdout(&o)), (2, "verdict=inconclusive method=zx\n".to_owned()));
}

#[test]
fn sampling_is_seeded_and_sorted() {
    let run = |backend: &str| {
        qbasis([
            "sample".as_ref(),
            "--shots".as_ref(),
            "10000".as_ref(),
            "--seed".as_ref(),
            "11".as_ref(),
            "--backend".as_ref(),
            backend.as_ref(),
            fixture("ghz3.qcf").as_os_str(),
        ])
    };
    let o = run("dense");
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).is_empty());
    let lines: Vec<(String, usize)> = stdout(&o)
        .lines()
        .map(|l| {
            let (b, c) = l.split_once(' ').unwrap();
            (b.to_owned(), c.parse().unwrap())
        })
        .collect();
    assert_eq!(lines.iter().map(|l| l.0.as_str()).collect::<Vec<_>>(), ["000", "111"]);
    assert_eq!(lines.iter().map(|l| l.1).sum::<usize>(), 10000);
    assert!(lines.iter().all(|l| (4850..=5150).contains(&l.1)));
    assert_eq!(run("dense").stdout, o.stdout);

    let via_dd = run("dd");
    assert_eq!(via_dd.stdout, o.stdout);
    assert!(stderr(&via_dd).starts_with("note: "));

    let zero = qbasis([
        "sample".as_ref(),
        "--shots".as_ref(),
        "0".as_ref(),
        "--seed".as_ref(),
        "1".as_ref(),
        fixture("bell.qcf").as_os_str(),
    ]);
    assert_eq!(code(&zero), 64);
}

#[test]
fn stats_per_backend() {
    let expected = [
        ("dense", "qubits=2 amplitudes=4 gates=2"),
        ("dd", "nodes=3 root_weight=0.70710678118654757,0"),
        ("tn", "tensors=4 steps=3 flops=24 max_intermediate=16"),
    ];
    for (backend, line) in expected {
        let o = qbasis(["stats".as_ref(), "--backend".as_ref(), backend.as_ref(), fixture("bell.qcf").as_os_str()]);
        assert_eq!((code(&o), stdout(&o)), (0, format!("{line}\n")));
    }
    let o = qbasis(["stats".as_ref(), "--backend".as_ref(), "zx".as_ref(), fixture("bell_padded.qcf").as_os_str()]);
    let line = stdout(&o);
    assert!(line.starts_with("spiders_before=3 spiders_after="), "{line}");
}

#[test]
fn output_is_reproducible() {
    let args = |verb: &str| -> Vec<std::ffi::OsString> {
        match verb {
            "simulate" => {
                vec!["simulate".into(), "--backend".into(), "tn".into(), "--full".into(), fixture("mixed.qcf").into()]
            }
            "stats" => vec!["stats".into(), "--backend".into(), "zx".into(), fixture("mixed.qcf").into()],
            _ => vec![
                "sample".into(),
                "--shots".into(),
                "500".into(),
                "--seed".into(),
                "3".into(),
                fixture("mixed.qcf").into(),
            ],
        }
    };
    for verb in ["simulate", "stats", "sample"] {
        let (a, b) = (qbasis(args(verb)), qbasis(args(verb)));
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{verb}");
    }
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&qbasis(Vec::<String>::new())), 64);
    assert_eq!(code(&qbasis(["teleport"])), 64);
    assert_eq!(code(&qbasis(["simulate", "--backend", "qpu", "x.qcf"])), 64);
    assert_eq!(code(&qbasis(["simulate", "--backend", "dense"])), 64);

    let missing = qbasis(["simulate", "--backend", "dense", "/nonexistent/circuit.qcf"]);
    assert_eq!(code(&missing), 64);
    assert!(stderr(&missing).starts_with("error: cannot read"));

    let bad = write_circuit(&dir, "bad.qcf", "qubits 2\nh 1\nfoo 0\n");
    let o = qbasis(["simulate".as_ref(), "--backend".as_ref(), "dd".as_ref(), bad.as_os_str()]);
    assert_eq!(code(&o), 65);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());

    let wide = write_circuit(&dir, "wide.qcf", "qubits 25\nh 0\n");
    let o = qbasis(["simulate".as_ref(), "--backend".as_ref(), "dense".as_ref(), wide.as_os_str()]);
    assert_eq!(code(&o), 70);
    let o = qbasis(["simulate".as_ref(), "--backend".as_ref(), "tn".as_ref(), wide.as_os_str()]);
    assert_eq!(code(&o), 70);
    let o = qbasis(["stats".as_ref(), "--backend".as_ref(), "dd".as_ref(), wide.as_os_str()]);
    assert_eq!((code(&o), stdout(&o)), (0, "nodes=25 root_weight=0.70710678118654757,0\n".to_owned()));
}

#[test]
fn help_and_version_succeed() {
    let o = qbasis(["--help"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("simulate"));
    assert_eq!(code(&qbasis(["--version"])), 0);
}
