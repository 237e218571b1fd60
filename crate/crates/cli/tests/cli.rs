use std::process::{Command, Output};

use zminor_core::CensusFile;

fn zminor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zminor")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(out: &'a str, name: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(name)?.strip_prefix(": "))
        .unwrap_or_else(|| panic!("no `{name}` in\n{out}"))
}

#[test]
fn classify_examples() {
    let k5 = zminor(&["classify", "--n", "5", "--edges", "1-2,1-3,1-4,1-5,2-3,2-4,2-5,3-4,3-5,4-5"]);
    assert!(k5.status.success());
    assert!(field(&stdout(&k5), "orbit").ends_with("(O9)"));

    let point = zminor(&["classify", "--n", "4", "--point", "[1:0:0:0:0:1:0:0:0:0:1:0:0:0:0:1]"]);
    assert!(point.status.success());
    assert!(field(&stdout(&point), "orbit").ends_with("(O17)"));

    let gens = zminor(&["classify", "--n", "5", "--generators", "ZXIII,XZIII,IIZII,IIIZI,IIIIZ"]);
    assert!(gens.status.success());
    let out = stdout(&gens);
    assert!(field(&out, "orbit").ends_with("(O2)"));
    assert_eq!(field(&out, "verified"), "yes");
}

#[test]
fn point_orders_agree() {
    let graded = zminor(&["classify", "--n", "3", "--point", "[1:1:0:0:0:0:0:0]"]);
    // graded-lex index 1 is {1}, which is bitmask index 1 as well
    let bitmask = zminor(&["classify", "--n", "3", "--point", "[1:1:0:0:0:0:0:0]", "--order", "bitmask"]);
    assert_eq!(stdout(&graded), stdout(&bitmask));
    // {3} sits at graded-lex 3 and bitmask 4
    let a = zminor(&["classify", "--n", "3", "--point", "[1:0:0:1:0:0:0:0]"]);
    let b = zminor(&["classify", "--n", "3", "--point", "[1:0:0:0:1:0:0:0]", "--order", "bitmask"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn exit_codes() {
    assert_eq!(zminor(&["classify", "--n", "4"]).status.code(), Some(2));
    assert_eq!(zminor(&["orbits", "--n", "0"]).status.code(), Some(2));
    assert_eq!(zminor(&["orbits", "--n", "9"]).status.code(), Some(2));
    assert_eq!(zminor(&["verify", "--n", "3"]).status.code(), Some(2));
    assert_eq!(zminor(&["classify", "--n", "3", "--edges", "1-7"]).status.code(), Some(2));
    // z_∅ = 1 and vanishing 1- and 2-minors force S = 0, so z_123 must be 0
    let off = zminor(&["classify", "--n", "3", "--point", "[1:0:0:0:0:0:0:1]"]);
    assert_eq!(off.status.code(), Some(3));
    let bad_group = zminor(&["classify", "--n", "2", "--generators", "XI,ZI"]);
    assert_eq!(bad_group.status.code(), Some(3));
}

#[test]
fn verify_commands() {
    let four = zminor(&["verify", "--n", "4"]);
    assert!(four.status.success());
    assert!(stdout(&four).contains("PASS: 0 discrepancies, 0 documented notes"));
    let five = zminor(&["verify", "--n", "5", "--paper-tables"]);
    assert!(five.status.success());
    assert!(stdout(&five).contains("PASS: 0 discrepancies, 3 documented notes"));
}

#[test]
fn json_census_round_trips() {
    let out = zminor(&["orbits", "--n", "4", "--format", "json"]);
    assert!(out.status.success());
    let file: CensusFile = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(file.n, 4);
    assert_eq!(file.total_points, 2295);
    let mut sizes: Vec<u64> = file.orbits.iter().map(|o| o.size).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [81, 108, 162, 324, 648, 972]);
    assert_eq!(serde_json::to_string_pretty(&file).unwrap() + "\n", stdout(&out));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let one = zminor(&["--threads", "1", "orbits", "--n", "5"]);
    let many = zminor(&["--threads", "4", "orbits", "--n", "5"]);
    assert!(one.status.success() && many.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn map_agrees_with_classify_inputs() {
    let out = stdout(&zminor(&["map", "--n", "3", "--edges", "1-2,2-3", "--convention", "minor-table"]));
    let minors = field(&out, "principal minors (graded-lex)");
    assert_eq!(minors, field(&out, "lagrangian point (graded-lex)"));
    assert_eq!(minors, "[1:0:0:0:1:0:1:0]");
    let standard = stdout(&zminor(&["map", "--n", "3", "--edges", "1-2,2-3"]));
    assert!(standard.contains("generators: XZI,ZXZ,IZX"));
}

#[test]
fn dot_files_are_written() {
    let dir = std::env::temp_dir().join(format!("zminor-dot-{}", std::process::id()));
    assert!(zminor(&["orbits", "--n", "3", "--dot", dir.to_str().unwrap()]).status.success());
    let count = std::fs::read_dir(&dir).unwrap().count();
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(count, 3);
}

#[test]
fn enumerate_and_states() {
    assert_eq!(stdout(&zminor(&["enumerate", "--n", "3", "--count"])), "135\n");
    assert_eq!(stdout(&zminor(&["enumerate", "--n", "2"])).lines().count(), 15);
    let states = stdout(&zminor(&["states", "--n", "2"]));
    assert!(states.contains("distinct state rays: 60"));
    assert!(states.contains("2^n * |Z_n| = 60"));
}
