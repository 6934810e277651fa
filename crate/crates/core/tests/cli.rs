use std::process::Command;

fn orbits(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_orbits")).args(args).output().unwrap()
}

fn temp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("orbits-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn count_c4() {
    let input = temp("c4.in", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let out = input.with_file_name("c4.node");
    let r = orbits(&["count", "node", "4", input.to_str().unwrap(), out.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&r.stderr).contains("total"));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "2 2 1 0 0 0 0 0 1 0 0 0 0 0 0\n".repeat(4));

    let out = input.with_file_name("c4.edge");
    let r = orbits(&["count", "edge", "4", input.to_str().unwrap(), out.to_str().unwrap(), "--threads", "2"]);
    assert_eq!(r.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<_> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| *r == rows[0]));
}

#[test]
fn crlf_input_and_internal_numbering() {
    let input = temp("tri.in", "3 3\r\n0 1\r\n0 2\r\n1 2\r\n");
    let out = input.with_file_name("tri.out");
    let r = orbits(&["count", "node", "5", input.to_str().unwrap(), out.to_str().unwrap(), "--numbering", "internal"]);
    assert_eq!(r.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().all(|l| l.split(' ').count() == 73));
}

#[test]
fn exit_codes() {
    assert_eq!(orbits(&["count", "node", "9", "a", "b"]).status.code(), Some(1));
    assert_eq!(orbits(&["equations", "node", "3"]).status.code(), Some(1));
    let bad = temp("loop.in", "2 1\n0 0\n");
    let r = orbits(&["count", "node", "4", bad.to_str().unwrap(), "/dev/null"]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("line 2"));
    let big = temp("big.in", "50 0\n");
    assert_eq!(orbits(&["verify", "node", "4", big.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn equations_dump() {
    let r = orbits(&["equations", "node", "5"]);
    assert_eq!(r.status.code(), Some(0));
    let text = String::from_utf8(r.stdout).unwrap();
    let lines: Vec<_> = text.lines().filter(|l| l.starts_with("orbit ")).collect();
    assert_eq!(lines.len(), 58);
    let o59 = lines.iter().find(|l| l.starts_with("orbit 59:")).unwrap();
    assert!(o59.contains("1*o59 + 4*o65 + 2*o68 + 6*o70 ="), "{o59}");
    let r = orbits(&["equations", "edge", "4"]);
    assert!(String::from_utf8(r.stdout).unwrap().contains("edge orbit"));
}

#[test]
fn verify_generated_corpus() {
    let r = orbits(&["verify", "edge", "4", "--graphs", "10", "--seed", "3"]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    assert!(String::from_utf8(r.stdout).unwrap().starts_with("ok:"));
}

#[test]
fn bench_csv() {
    let r = orbits(&["bench", "--nodes", "80", "--edges", "200,400", "--k", "4", "--seeds", "1,2", "--threads", "1"]);
    assert_eq!(r.status.code(), Some(0));
    let text = String::from_utf8(r.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,m,seed,k,mode,t_table_ms,t_clique_ms,t_rows_ms,t_total_ms,subgraphs_k1,subgraphs_k2,clique_visits,table_entries")
    );
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 8);
    assert_eq!(text.lines().filter(|l| l.starts_with("# slope")).count(), 2);
}
