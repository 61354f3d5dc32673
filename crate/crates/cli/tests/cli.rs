use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn rainbow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rainbow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = rainbow(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn json(p: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(Path::new(p)).unwrap()).unwrap()
}

#[test]
fn generate_colour_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "g.txt");
    let c = path(&dir, "c.json");
    ok(&[
        "generate",
        "--model",
        "simple-regular",
        "--n",
        "12",
        "--r",
        "6",
        "--seed",
        "4",
        "--out",
        &g,
    ]);
    ok(&[
        "color-edges",
        "--input",
        &g,
        "--method",
        "mindeg",
        "--out",
        &c,
    ]);
    let colouring = json(&c);
    assert_eq!(colouring["kind"], "edge");
    assert_eq!(colouring["colors"].as_array().unwrap().len(), 36);

    for mode in ["certificate", "exact", "sample"] {
        let report: Value = serde_json::from_str(&ok(&[
            "verify",
            "--graph",
            &g,
            "--colouring",
            &c,
            "--mode",
            mode,
        ]))
        .unwrap();
        assert_eq!(report["verdict"], true, "mode {mode}");
    }
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "c4.txt");
    fs::write(&g, "4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let good = path(&dir, "good.json");
    let bad = path(&dir, "bad.json");
    fs::write(&good, r#"{"kind":"edge","colors":[[0,1,0],[1,2,1],[2,3,0],[0,3,1]],"certificate":null,"bound":null}"#).unwrap();
    fs::write(&bad, r#"{"kind":"edge","colors":[[0,1,0],[1,2,0],[2,3,0],[0,3,0]],"certificate":null,"bound":null}"#).unwrap();

    let pass = rainbow(&[
        "verify",
        "--graph",
        &g,
        "--colouring",
        &good,
        "--mode",
        "exact",
    ]);
    assert_eq!(pass.status.code(), Some(0));
    let fail = rainbow(&[
        "verify",
        "--graph",
        &g,
        "--colouring",
        &bad,
        "--mode",
        "exact",
    ]);
    assert_eq!(fail.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&fail.stdout).unwrap();
    assert_eq!(report["verdict"], false);
    assert!(report["witness"]["pair"].is_array());

    // certificate mode needs a certificate: an input error, not a verdict
    let missing = rainbow(&[
        "verify",
        "--graph",
        &g,
        "--colouring",
        &good,
        "--mode",
        "certificate",
    ]);
    assert_eq!(missing.status.code(), Some(2));
    let absent = rainbow(&[
        "verify",
        "--graph",
        &path(&dir, "nope.txt"),
        "--colouring",
        &good,
    ]);
    assert_eq!(absent.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&absent.stderr).contains("nope.txt"));
}

#[test]
fn lemma1_from_generated_oplus_record() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "g.txt");
    let record = path(&dir, "record.json");
    let c = path(&dir, "c.json");
    ok(&[
        "generate", "--model", "oplus", "--n", "41", "--r", "6", "--seed", "2", "--out", &g,
        "--json", &record,
    ]);
    assert_eq!(json(&record)["decomposition"]["kind"], "three-cycles");
    ok(&[
        "color-edges",
        "--input",
        &g,
        "--method",
        "lemma1",
        "--split",
        &record,
        "--out",
        &c,
    ]);
    let report = &json(&c)["report"];
    assert!(report["colours_used"].as_u64() <= report["bound"].as_u64());
    ok(&["verify", "--graph", &g, "--colouring", &c]);

    let missing = rainbow(&["color-edges", "--input", &g, "--method", "lemma1"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn regular_and_expander_methods() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "g.txt");
    let c = path(&dir, "c.json");
    ok(&[
        "color-edges",
        "--method",
        "regular",
        "--n",
        "200",
        "--r",
        "5",
        "--seed",
        "1",
        "--graph-out",
        &g,
        "--out",
        &c,
    ]);
    ok(&[
        "verify",
        "--graph",
        &g,
        "--colouring",
        &c,
        "--mode",
        "certificate",
    ]);

    let k = path(&dir, "k10.txt");
    let mut text = String::from("10 45\n");
    for u in 0..10 {
        for v in u + 1..10 {
            text.push_str(&format!("{u} {v}\n"));
        }
    }
    fs::write(&k, text).unwrap();
    let kc = path(&dir, "kc.json");
    let dot = path(&dir, "k.dot");
    ok(&[
        "color-edges",
        "--input",
        &k,
        "--method",
        "expander",
        "--out",
        &kc,
        "--dot",
        &dot,
    ]);
    ok(&[
        "verify",
        "--graph",
        &k,
        "--colouring",
        &kc,
        "--mode",
        "exact",
    ]);
    assert!(fs::read_to_string(&dot).unwrap().contains("label"));
}

#[test]
fn vertex_colouring_pipeline() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "g.txt");
    let c = path(&dir, "c.json");
    ok(&[
        "color-vertices",
        "--n",
        "120",
        "--r",
        "28",
        "--seed",
        "3",
        "--graph-out",
        &g,
        "--out",
        &c,
    ]);
    let file = json(&c);
    assert_eq!(file["kind"], "vertex");
    assert!(file["report"]["colours_used"].as_u64() <= file["report"]["bound"].as_u64());
    ok(&["verify", "--graph", &g, "--colouring", &c]);

    // the same graph read back gives a colouring that also verifies
    let c2 = path(&dir, "c2.json");
    ok(&["color-vertices", "--input", &g, "--seed", "9", "--out", &c2]);
    ok(&["verify", "--graph", &g, "--colouring", &c2]);

    let too_small = rainbow(&["color-vertices", "--n", "60", "--r", "10"]);
    assert_eq!(too_small.status.code(), Some(2));
}

#[test]
fn generate_is_seeded() {
    for model in [
        vec!["--model", "pairing", "--r", "3"],
        vec!["--model", "hamcycle"],
        vec!["--model", "matching", "--m", "5"],
        vec!["--model", "theorem5"],
    ] {
        let args = |seed: &'static str| {
            let mut a = vec!["generate", "--n", "40", "--seed", seed];
            a.extend(&model);
            a
        };
        let a = ok(&args("5"));
        assert_eq!(a, ok(&args("5")), "{model:?}");
        assert_ne!(a, ok(&args("6")), "{model:?}");
    }
}

#[test]
fn experiment_report_and_replay() {
    let dir = TempDir::new().unwrap();
    let config = path(&dir, "exp.json");
    let csv = path(&dir, "out.csv");
    fs::write(
        &config,
        r#"{"id":"smoke","kind":"regular-edge","n":[64,128],"r":[5],"trials":2,"seed":7,"verify":{"mode":"certificate"}}"#,
    )
    .unwrap();
    ok(&["experiment", "--config", &config, "--out", &csv]);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("# rainbow results v1\n"));
    assert_eq!(text.lines().count(), 2 + 4);
    let sidecar = json(&format!("{csv}.json"));
    assert!(sidecar["total_wall_ms"].is_number());

    // rerunning gives the same bytes
    let csv2 = path(&dir, "again.csv");
    ok(&["experiment", "--config", &config, "--out", &csv2]);
    assert_eq!(text, fs::read_to_string(&csv2).unwrap());

    let summary = path(&dir, "summary.json");
    ok(&["report", "--in", &csv, "--out", &summary]);
    assert_eq!(json(&summary)["summary"].as_array().unwrap().len(), 2);

    // the replay column recomputes its row
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let replay_col = headers.iter().position(|h| h == "replay").unwrap();
    let colours_col = headers.iter().position(|h| h == "colours_used").unwrap();
    let row = reader.records().next().unwrap().unwrap();
    let replay: Vec<&str> = row[replay_col].split_whitespace().skip(1).collect();
    let again = ok(&replay);
    let mut replayed = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(again.as_bytes());
    let row2 = replayed.records().next().unwrap().unwrap();
    assert_eq!(&row2[colours_col], &row[colours_col]);
}

#[test]
fn bad_config_is_rejected() {
    let dir = TempDir::new().unwrap();
    let config = path(&dir, "exp.json");
    fs::write(
        &config,
        r#"{"id":"x","kind":"min-degree","n":[],"r":[6],"trials":1,"seed":1}"#,
    )
    .unwrap();
    let out = rainbow(&[
        "experiment",
        "--config",
        &config,
        "--out",
        &path(&dir, "o.csv"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty n-list"));
}
