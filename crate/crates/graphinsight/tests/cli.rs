use std::path::Path;
use std::process::Command;

fn run(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_graphinsight")).args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn generate_describe_eval_score_report() {
    let dir = tempfile::tempdir().unwrap();
    let bench = dir.path().join("bench");
    let out = run(&["generate", "--out", p(&bench), "--graphs", "3", "--nodes", "10..20", "--seed", "9"]);
    assert!(out.starts_with("3 graphs, 60 tasks"), "{out}");

    let layout = dir.path().join("layout.json");
    let rag = dir.path().join("rag.json");
    let text =
        run(&["describe", "--bench", p(&bench), "--graph-id", "1", "--layout-out", p(&layout), "--rag-out", p(&rag)]);
    assert!(text.starts_with("This is an undirected graph with the following edges:"));
    let layout: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&layout).unwrap()).unwrap();
    assert_eq!(layout["alpha"], 4.5);
    assert!(std::fs::read_to_string(&rag).unwrap().contains("\"gamma\": 80"));

    let results = dir.path().join("results.jsonl");
    let report = dir.path().join("report.json");
    let table = run(&[
        "eval",
        "--bench",
        p(&bench),
        "--method",
        "raw,bfs,graphinsight",
        "--simulator-psi",
        "1,1,1",
        "--out",
        p(&results),
        "--report",
        p(&report),
    ]);
    let header = table.lines().next().unwrap();
    assert!(header.contains("raw") && header.contains("graphinsight"), "{table}");
    let overall = table.lines().find(|l| l.starts_with("Overall")).unwrap();
    assert_eq!(overall.split_whitespace().skip(1).collect::<Vec<_>>(), ["1.0000"; 3]);
    assert_eq!(std::fs::read_to_string(&results).unwrap().lines().count(), 180);

    let rescored = dir.path().join("rescored.jsonl");
    let again = run(&["score", "--bench", p(&bench), "--results", p(&results), "--out", p(&rescored)]);
    assert_eq!(again, table);
    assert_eq!(std::fs::read(&rescored).unwrap(), std::fs::read(&results).unwrap());
    assert_eq!(run(&["report", p(&results)]), table);
}

#[test]
fn bad_method_fails() {
    let out = Command::new(env!("CARGO_BIN_EXE_graphinsight"))
        .args(["describe", "--bench", "/nonexistent", "--method", "nope"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}
