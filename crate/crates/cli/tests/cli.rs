use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn sr(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_sr"))
        .args(args)
        .env_remove("ATK_DEGREE_BOUND")
        .output()
        .expect("run sr");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("exit code"),
    )
}

#[test]
fn blochcmp_golden() {
    let (out, _, code) = sr(&["blochcmp", "--input", &data("xy.sr"), "--hom", "phi"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "sequence Z in Q[x, y]\n\
         f1 = x\n\
         f2 = y\n\
         tau(phi) = (dy) / (f1*f2)^1 * delta[f1^f2]\n\
         mu(phi) = (dy) / (f1*f2)^1 * delta[f1^f2]\n\
         VERDICT: exact\n"
    );
    let (out, _, code) = sr(&["blochcmp", "--input", &data("swap.sr")]);
    assert_eq!(code, 0);
    assert!(out.contains("tau(phi) = (-x*dx + 2*y^2*dy) / (f1*f2)^1 * delta[f1^f2]\n"), "{out}");
    assert!(out.ends_with("VERDICT: exact\n"));
}

#[test]
fn ch_golden() {
    let (out, _, code) = sr(&["ch", "--input", &data("xy.sr"), "--seq", "Z", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "sequence Z in Q[x, y]\n\
         f1 = x\n\
         f2 = y\n\
         ch2 = (dx^dy) / (f1*f2)^1 * delta[f1^f2]\n\
         omega * df = (dx^dy) / (f1*f2)^1 * delta[f1^f2]\n\
         VERDICT: exact\n"
    );
}

#[test]
fn atk_golden() {
    let (out, _, code) = sr(&["atk", "--input", &data("xy.sr"), "--power", "1"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "complex K_Z {\n  deg -2: [g1_2@2];\n  deg -1: [g1@1, g2@1];\n  deg 0: [e@0];\n  \
         d(-2) = [[-y, x]];\n  d(-1) = [[x], [y]];\n}\n\
         map At1: K_Z -> K_Z degree 1 form 1 {\n  at(-2) = [[dy, -dx]];\n  at(-1) = [[-dx], [-dy]];\n}\n\
         cocycle: yes\n"
    );
}

#[test]
fn other_commands_succeed() {
    let two = data("two_seqs.sr");
    let cases: Vec<Vec<&str>> = vec![
        vec!["semireg", "--input", &two, "--hom", "h", "--k", "2"],
        vec!["obstruct", "--input", &two, "--seq", "B"],
        vec!["obstruct", "--input", &two, "--seq", "A", "--derivation", "x: 1"],
        vec!["sff", "--preset", "euler"],
        vec!["sff", "--preset", "hypersurface:x*y - z^3"],
        vec!["iclosure", "--ideal", "x^3,y^3", "--test", "x^2*y"],
        vec!["curvdim", "--ideal", "x^2"],
        vec!["dimcheck", "--ideal", "x^2,x*y,y^3"],
    ];
    for args in cases {
        let (out, err, code) = sr(&args);
        assert_eq!(code, 0, "{args:?}\n{out}{err}");
        assert!(!out.contains("FAIL"), "{args:?}\n{out}");
    }
    let (out, _, _) = sr(&["iclosure", "--ideal", "x^3,y^3", "--test", "x^2"]);
    assert!(out.contains("NO\nseparator: c = [1/2, 1/2], threshold 3/2"), "{out}");
    let (out, _, _) = sr(&["sff", "--preset", "euler"]);
    assert!(out.ends_with("sigma = -id: VERDICT: exact\n"), "{out}");
}

#[test]
fn exit_code_matrix() {
    let two = data("two_seqs.sr");
    let missing = data("does_not_exist.sr");
    let arity = data("arity.sr");
    let bad_seq = data("bad_seq.sr");
    let no_ring = data("no_ring.sr");
    let not_regular = data("not_regular.sr");
    let undeclared = data("undeclared.sr");
    let xy = data("xy.sr");
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["bogus"], "unknown command"),
        (vec![], ""),
        (vec!["blochcmp"], "needs --input"),
        (vec!["blochcmp", "--input", &missing], "cannot read"),
        (vec!["blochcmp", "--input", &bad_seq], "line 2, column 5"),
        (vec!["blochcmp", "--input", &no_ring], "line 1, column 1"),
        (vec!["blochcmp", "--input", &undeclared], "undeclared sequence"),
        (vec!["blochcmp", "--input", &arity], "cannot be regular"),
        (vec!["blochcmp", "--input", &not_regular], "not regular"),
        (vec!["blochcmp", "--input", &xy, "--hom", "nope"], "undeclared"),
        (vec!["ch", "--input", &xy, "--seq", "W"], "undeclared"),
        (vec!["ch", "--input", &xy, "--k", "-1"], "nonnegative"),
        (vec!["atk", "--input", &two], "--seq is required"),
        (vec!["atk", "--input", &xy, "--power", "x"], "invalid value"),
        (vec!["obstruct", "--input", &xy, "--derivation", "w: 1"], "unknown variable"),
        (vec!["sff"], "--preset"),
        (vec!["sff", "--preset", "cubic"], "unknown preset"),
        (vec!["sff", "--preset", "hypersurface:x^"], "parse error"),
        (vec!["iclosure", "--ideal", "x^2"], "--test"),
        (vec!["iclosure", "--ideal", "x^2", "--test", "x+y"], ""),
        (vec!["curvdim"], "--ideal"),
        (vec!["dimcheck", "--ideal", "x^2,,y"], ""),
    ];
    for (args, needle) in cases {
        let (out, err, code) = sr(&args);
        assert_eq!(code, 2, "{args:?}\nstdout: {out}\nstderr: {err}");
        assert!(out.is_empty(), "{args:?}: errors go to stderr");
        assert!(err.contains(needle), "{args:?}: {err}");
    }
}

#[test]
fn deterministic_output() {
    let two = data("two_seqs.sr");
    for args in [
        vec!["blochcmp", "--input", two.as_str(), "--hom", "h"],
        vec!["selftest", "--seed", "7"],
    ] {
        let a = sr(&args);
        let b = sr(&args);
        assert_eq!(a.2, 0, "{}", a.0);
        assert_eq!(a.0, b.0);
    }
}
