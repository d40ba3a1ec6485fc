use std::process::{Command, Output};

fn galg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galg")).args(args).output().expect("galg runs")
}

fn stdout(args: &[&str]) -> String {
    let out = galg(args);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn densities_print_exact_and_decimal_values() {
    assert_eq!(stdout(&["density", "inj", "K2", "P2"]), "2/3 ≈ 0.666666666667\n");
    assert_eq!(stdout(&["density", "hom", "C4", "K3"]), "2/9 ≈ 0.222222222222\n");
    assert_eq!(stdout(&["density", "limit", "graph{r=2;n=2;l=;e=(0 1)}", "K2"]), "1/2 ≈ 0.500000000000\n");
    let curve = stdout(&["density", "curve", "K2", "K2", "--n-max", "3"]);
    assert_eq!(curve.lines().nth(1).unwrap(), "2\t2/3 ≈ 0.666666666667");
}

#[test]
fn constructions_write_graph_text() {
    assert_eq!(stdout(&["construct", "blowup", "K2", "--m", "2"]).trim(), "graph{r=2;n=4;l=;e=(0 2)(0 3)(1 2)(1 3)}");
    assert_eq!(stdout(&["construct", "loose", "K2", "--r", "3"]).trim(), "graph{r=3;n=3;l=;e=(0 1 2)}");
    assert_eq!(stdout(&["construct", "even", "K2", "--r", "4"]).trim(), "graph{r=4;n=4;l=;e=(0 1 2 3)}");
    let cube = stdout(&["construct", "box", "C4", "K2"]);
    assert_eq!(cube.matches('(').count(), 12);
    let ladder = stdout(&["construct", "subdivide", "C5", "--scheme", "crossing"]);
    assert!(ladder.starts_with("graph{r=2;n=10;"));
}

#[test]
fn scheme_files_are_read() {
    let dir = std::env::temp_dir().join(format!("galg-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("parallel.scheme");
    std::fs::write(&path, "graph{r=2;n=2;l=;e=(0 1)}\ngraph{r=2;n=4;l=;e=(0 2)(1 3)}\nsets=0,1\nsets=2,3\n").unwrap();
    let from_file = stdout(&["construct", "subdivide", "P2", "--scheme", path.to_str().unwrap()]);
    assert_eq!(from_file, stdout(&["construct", "subdivide", "P2", "--scheme", "parallel"]));
    let graph = dir.join("k2.graph");
    std::fs::write(&graph, "graph{r=2;n=2;l=;e=(0 1)}\n").unwrap();
    let out = stdout(&["verify", "gensub", "--graph", graph.to_str().unwrap(), "--scheme", "blowup:2", "--format", "machine"]);
    assert!(out.lines().all(|l| l.split('\t').nth(2) == Some("pass")), "{}", out);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn canonical_forms() {
    assert_eq!(stdout(&["canon", "C4"]), "graph{r=2;n=4;l=;e=(0 2)(0 3)(1 2)(1 3)}\nautomorphisms\t8\n");
}

#[test]
fn verification_reports() {
    let machine = stdout(&["verify", "m5", "--format", "machine"]);
    for line in machine.lines() {
        let fields: Vec<&str> = line.split('\t').collect();
        assert_eq!(fields.len(), 4, "{}", line);
        assert_eq!(fields[2], "pass");
    }
    assert!(machine.contains("4p^13 - 6p^11 + 4p^9 - p^7"));
    assert_eq!(machine, stdout(&["verify", "m5", "--format", "machine"]));
    for args in [
        &["verify", "tensor", "--graph", "P2"][..],
        &["verify", "box", "--graph", "K2", "--p", "1/3,2/3"],
        &["verify", "hyper", "--graph", "P2", "--r", "3", "--m", "1"],
        &["verify", "goodman"],
        &["verify", "forcingpair", "--k", "3"],
    ] {
        let text = stdout(args);
        assert!(text.trim_end().lines().last().unwrap().starts_with("verdict: pass"), "{}", text);
    }
}

#[test]
fn errors_exit_with_status_two() {
    for args in [
        &["verify", "gensub", "--graph", "K2"][..],
        &["density", "inj", "K2", "graph{r=3;n=3;l=;e=(0 1 2)}"],
        &["construct", "subdivide", "K2", "--scheme", "nonsense"],
        &["density", "inj", "K2", "graph{r=2;n=2;e=}"],
    ] {
        let out = galg(args);
        assert_eq!(out.status.code(), Some(2), "{:?}", args);
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}
