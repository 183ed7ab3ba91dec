use std::process::{Command, Output};

fn shrubs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shrubs")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = shrubs(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_321() {
    assert_eq!(stdout(&["count", "--pattern", "321", "--n", "3"]), "866\n");
    assert_eq!(
        stdout(&["count", "--pattern", "321", "--n", "3", "--format", "json"]),
        "{\"k\":2,\"n\":3,\"patterns\":[\"321\"],\"count\":\"866\"}\n"
    );
    assert_eq!(stdout(&["count", "--pattern", "321", "--n", "3", "--brute-force"]), "866\n");
}

#[test]
fn count_methods_agree() {
    for p in ["123", "132", "213", "312", "231", "321"] {
        let closed = stdout(&["count", "--pattern", p, "--n", "1..4"]);
        let brute = stdout(&["count", "--pattern", p, "--n", "1..4", "--brute-force"]);
        assert_eq!(closed, brute, "{p}");
    }
    assert_eq!(stdout(&["count", "--n", "2"]), "80\n");
    assert_eq!(
        stdout(&["count", "--patterns", "213,312", "--n", "1..3", "--format", "bfile"]),
        "1 2\n2 2\n3 2\n"
    );
    assert_eq!(
        stdout(&["count", "--patterns", "132,321", "--n", "4", "--format", "csv"]),
        "k,n,patterns,count\n2,4,132;321,19\n"
    );
}

#[test]
fn bijection_231() {
    let args = ["bijection", "--pattern", "231", "--direction", "to-perm", "--input", "EENENEEEEEENNENNENEN"];
    assert_eq!(stdout(&args), "1(12)(11)2354687(10)9\n");
    let back = ["bijection", "--pattern", "231", "--direction", "to-path", "--input", "1(12)(11)2354687(10)9"];
    assert_eq!(stdout(&back), "EENENEEEEEENNENNENEN\n");
}

#[test]
fn bijection_up_down_paths() {
    let to_213 = ["bijection", "--pattern", "213", "--direction", "to-perm", "--input", "BDABDDDDDDADDBDDD"];
    assert_eq!(stdout(&to_213), "7(15)(14)89(10)(11)(13)(12)156243\n");
    let from_312 = [
        "bijection",
        "--pattern",
        "312",
        "--direction",
        "to-path",
        "--input",
        "2 5 4 3 6 7 8 10 9 1 12 13 11 15 14",
    ];
    assert_eq!(stdout(&from_312), "BDABDDDDDDADDBDDD\n");
}

#[test]
fn bijection_wedge_paths() {
    let args = ["bijection", "--pattern", "123", "--direction", "to-perm", "--input", "EENNNN"];
    assert_eq!(stdout(&args), "265143\n");
    let args = ["bijection", "--pattern", "132", "--direction", "to-path", "--input", "345678129"];
    assert_eq!(stdout(&args), "ENNEENNNNNNN\n");
}

#[test]
fn exit_codes() {
    assert_eq!(shrubs(&["count", "--pattern", "999", "--n", "3"]).status.code(), Some(2));
    assert_eq!(shrubs(&["count", "--n", "3", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(shrubs(&["frobnicate"]).status.code(), Some(2));
    let bad = shrubs(&["bijection", "--pattern", "231", "--direction", "to-perm", "--input", "NNEEE"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
    let outside = shrubs(&["bijection", "--pattern", "213", "--direction", "to-path", "--input", "243156"]);
    assert_eq!(outside.status.code(), Some(1));
}

#[test]
fn formula_json() {
    assert_eq!(
        stdout(&["formula", "duchon", "--n", "2"]),
        "{\"formula\":\"duchon\",\"params\":{\"n\":2},\"value\":\"23\"}\n"
    );
    assert_eq!(stdout(&["formula", "schroder", "--l", "3", "--m", "2", "--format", "plain"]), "14\n");
}

#[test]
fn av321_commands() {
    assert_eq!(stdout(&["av321", "series", "--terms", "3", "--bfile"]), "0 1\n1 2\n2 37\n");
    assert_eq!(stdout(&["av321", "verify-minpoly", "--order", "60"]), "holds through order 60\n");
    assert_eq!(stdout(&["av321", "growth-rate", "--digits", "5"]), "39.88873\n");
}

#[test]
fn oeis_check_offline() {
    let dir = std::env::temp_dir().join(format!("shrubs-cli-cache-{}", std::process::id()));
    let cache = dir.to_str().unwrap();
    let out = stdout(&["oeis-check", "--id", "A257995", "--terms", "50", "--offline", "--cache-dir", cache]);
    assert!(out.starts_with("A257995: agrees over 50 terms"), "{out}");
    let cold = shrubs(&["oeis-check", "--id", "A001764", "--cache-dir", cache]);
    if !cfg!(feature = "fetch") {
        assert_eq!(cold.status.code(), Some(1));
        assert!(String::from_utf8_lossy(&cold.stderr).contains("A001764.txt"));
    }
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn paths_commands() {
    assert_eq!(
        stdout(&["paths", "generate", "--bound", "below:2", "--to", "2,4"]),
        "EENNNN\nENENNN\nENNENN\n"
    );
    assert_eq!(
        stdout(&["paths", "generate", "--alphabet", "ABD", "--bound", "above", "--to", "12,0", "--count"]),
        "134\n"
    );
    assert_eq!(stdout(&["paths", "check", "--bound", "below:2/3", "--to", "3,2", "--path", "EENEN"]), "true\n");
    assert_eq!(shrubs(&["paths", "check", "--bound", "below:2/3", "--to", "3,2", "--path", "ENEEN"]).status.code(), Some(1));
    assert_eq!(stdout(&["paths", "transform", "--alphabet", "ENX", "--slope", "3", "--path", "EXNN"]), "ABDD\n");
}

#[test]
fn enumerate_lists_forests() {
    assert_eq!(stdout(&["enumerate", "--pattern", "231", "--n", "1"]), "k=2 n=1 patterns=231 count=2\n1 2 3\n1 3 2\n");
    let json = stdout(&["enumerate", "--patterns", "213,312", "--n", "2", "--format", "json"]);
    assert_eq!(json, "{\"k\":2,\"n\":2,\"patterns\":[\"213\",\"312\"],\"count\":\"2\",\"forests\":[\"1 2 3 4 5 6\",\"1 2 3 4 6 5\"]}\n");
}

#[test]
fn jobs_flag_is_accepted() {
    assert_eq!(stdout(&["--jobs", "2", "count", "--pattern", "312", "--n", "3", "--brute-force"]), "134\n");
}
