use std::fs;
use std::path::Path;
use std::process::Command;

use passage::cli::{EXIT_ABORT, EXIT_CONFIG, EXIT_MISMATCH, EXIT_OK};

fn passage(args: &[&str], cwd: &Path) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_passage"))
        .args(args)
        .current_dir(cwd)
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap(), text)
}

#[test]
fn compute_and_verify_pure_nim() {
    let d = tempfile::tempdir().unwrap();
    let (code, text) = passage(&["compute", "--game", "nim", "--mode", "pure", "--levels", "64", "--out", "pn"], d.path());
    assert_eq!(code, EXIT_OK, "{text}");
    assert!(text.contains("64 levels"));
    for oracle in ["bouton", "closed-form"] {
        let (code, text) = passage(&["verify", "--run", "pn", "--oracle", oracle], d.path());
        assert_eq!(code, EXIT_OK, "{text}");
        assert!(text.contains(" 0 mismatches"));
    }
    let (code, _) = passage(&["verify", "--run", "pn", "--oracle", "brute", "--bound", "24"], d.path());
    assert_eq!(code, EXIT_OK);
}

#[test]
fn corrupted_sheet_lists_coordinates() {
    let d = tempfile::tempdir().unwrap();
    passage(&["compute", "--game", "nim", "--mode", "pure", "--levels", "8", "--out", "r"], d.path());
    let path = d.path().join("r/l_000003.sht");
    let mut bytes = fs::read(&path).unwrap();
    // row 0 starts right after the 20-byte header; set bit z = 1 ([3,0,1] is not a P)
    bytes[20] |= 0b10;
    fs::write(&path, bytes).unwrap();
    let (code, text) = passage(&["verify", "--run", "r", "--oracle", "bouton"], d.path());
    assert_eq!(code, EXIT_MISMATCH, "{text}");
    assert!(text.contains("checksum mismatch"));
    assert!(text.contains("l[3,0,1]"), "{text}");
}

#[test]
fn empty_variant_file_reproduces_pure_run() {
    let d = tempfile::tempdir().unwrap();
    fs::write(d.path().join("empty.csv"), "x,y,z\n").unwrap();
    passage(&["compute", "--game", "nim", "--mode", "pure", "--levels", "50", "--out", "p"], d.path());
    let (code, text) = passage(
        &["compute", "--game", "nim", "--mode", "generic", "--levels", "50", "--variant-file", "empty.csv", "--out", "g"],
        d.path(),
    );
    assert_eq!(code, EXIT_OK, "{text}");
    for x in [0, 17, 49] {
        let p = fs::read(d.path().join(format!("p/l_{x:06}.sht"))).unwrap();
        let g = fs::read(d.path().join(format!("g/lt_{x:06}.sht"))).unwrap();
        assert_eq!(p[20..], g[20..]);
    }
}

#[test]
fn forced_overflow_exits_three() {
    let d = tempfile::tempdir().unwrap();
    let (code, text) = passage(&["compute", "--game", "chomp", "--mode", "pass", "--levels", "10", "--width", "8", "--out", "c"], d.path());
    assert_eq!(code, EXIT_ABORT, "{text}");
    assert!(text.contains("aborted at level"));
    let (code, text) = passage(&["info", "--run", "c"], d.path());
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("status overflow"));
}

#[test]
fn configuration_errors_exit_four() {
    let d = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["compute", "--game", "nim", "--mode", "pure", "--levels", "5", "--per-column-sigma", "1", "--out", "x"],
        &["compute", "--game", "hex", "--mode", "pure", "--levels", "5", "--out", "x"],
        &["verify", "--run", "missing", "--oracle", "bouton"],
        &["render", "--run", "missing", "--level", "0", "--out", "a.pgm"],
        &["experiment", "scale", "--run", "missing", "--level", "3"],
    ];
    for args in cases {
        let (code, text) = passage(args, d.path());
        assert_eq!(code, EXIT_CONFIG, "{args:?}: {text}");
    }
}

#[test]
fn equivalence_check() {
    let d = tempfile::tempdir().unwrap();
    let (code, text) = passage(&["verify", "--equivalence", "pass-generic", "--game", "chomp", "--levels", "200"], d.path());
    assert_eq!(code, EXIT_OK, "{text}");
    assert!(text.contains("0 mismatches"));
}

#[test]
fn experiments_write_csv() {
    let d = tempfile::tempdir().unwrap();
    passage(&["compute", "--game", "nim", "--mode", "pass", "--levels", "40", "--out", "np"], d.path());
    let (code, text) = passage(&["experiment", "overlap", "--run", "np", "--csv", "o.csv"], d.path());
    assert_eq!(code, EXIT_OK, "{text}");
    let csv = fs::read_to_string(d.path().join("o.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "x,value");
    assert_eq!(lines.len(), 41);
    for line in &lines[1..] {
        let v: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((0.0..=1.0).contains(&v));
        assert_eq!(line.split(',').nth(1).unwrap().split('.').nth(1).unwrap().len(), 6);
    }
    assert!(!csv.contains('\r'));

    let (code, text) = passage(
        &["experiment", "sensitivity", "--game", "nim", "--perturb-level", "50", "--levels", "100", "--csv", "s.csv"],
        d.path(),
    );
    assert_eq!(code, EXIT_OK, "{text}");
    let csv = fs::read_to_string(d.path().join("s.csv")).unwrap();
    for line in csv.lines().skip(1).take(50) {
        assert!(line.ends_with(",0.000000"), "{line}");
    }
    let again = passage(
        &["experiment", "sensitivity", "--game", "nim", "--perturb-level", "50", "--levels", "100", "--csv", "s2.csv"],
        d.path(),
    );
    assert_eq!(again.0, EXIT_OK);
    assert_eq!(csv, fs::read_to_string(d.path().join("s2.csv")).unwrap());
}

#[test]
fn scale_experiment_prints_correlation() {
    let d = tempfile::tempdir().unwrap();
    passage(
        &["compute", "--game", "nim", "--mode", "pure", "--levels", "101", "--height", "416", "--width", "512", "--emit", "w", "--out", "pn"],
        d.path(),
    );
    let (code, text) = passage(&["experiment", "scale", "--run", "pn", "--level", "50"], d.path());
    assert_eq!(code, EXIT_OK, "{text}");
    let value: f64 = text.trim().rsplit(' ').next().unwrap().parse().unwrap();
    assert!(value >= 0.9, "{text}");
}

#[test]
fn render_composes_losers_over_winners() {
    let d = tempfile::tempdir().unwrap();
    passage(&["compute", "--game", "nim", "--mode", "pure", "--levels", "86", "--out", "pn"], d.path());
    let (code, text) = passage(&["render", "--run", "pn", "--level", "85", "--compose", "winners,losers", "--out", "w85.pgm"], d.path());
    assert_eq!(code, EXIT_OK, "{text}");
    let img = fs::read(d.path().join("w85.pgm")).unwrap();
    let header = b"P5\n408 204\n255\n";
    assert!(img.starts_with(header));
    let px = &img[header.len()..];
    let (w, h) = (408usize, 204usize);
    for y in 0..h {
        for z in 0..w {
            let v = px[(h - 1 - y) * w + z];
            let want = if 85 ^ y == z {
                0
            } else if (y ^ z) < 85 {
                128
            } else {
                255
            };
            assert_eq!(v, want, "({y},{z})");
        }
    }
    let (code, _) = passage(&["render", "--run", "pn", "--level", "0", "--out", "w0.pgm"], d.path());
    assert_eq!(code, EXIT_OK);
    let img = fs::read(d.path().join("w0.pgm")).unwrap();
    assert!(img[header.len()..].iter().all(|&p| p == 255));
}
