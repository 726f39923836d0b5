use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rtqa_core::eval::context_id;
use serde_json::{json, Value};
use tempfile::TempDir;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn rtqa_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rtqa"));
    cmd.args(args).env_remove("RTQA_CONFIG").env("RUST_LOG", "info");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn rtqa(args: &[&str]) -> Output {
    rtqa_env(args, &[])
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn ok(o: Output) -> Output {
    assert!(o.status.success(), "exit {:?}: {}", o.status.code(), stderr(&o));
    o
}

struct Work {
    dir: TempDir,
}

impl Work {
    fn new() -> Self {
        Work { dir: TempDir::new().unwrap() }
    }

    fn p(&self, name: &str) -> String {
        self.dir.path().join(name).to_string_lossy().into_owned()
    }

    fn write(&self, name: &str, body: &str) -> String {
        fs::write(self.dir.path().join(name), body).unwrap();
        self.p(name)
    }

    /// Store, heuristic annotations and index of the mini-corpus.
    fn mini(&self) {
        ok(rtqa(&["ingest", "--corpus", &data("mini_corpus.jsonl"), "--out", &self.p("store.jsonl")]));
        ok(rtqa(&[
            "annotate",
            "--store",
            &self.p("store.jsonl"),
            "--heuristic",
            "--gazetteer",
            &data("gazetteer.json"),
            "--out",
            &self.p("ann.jsonl"),
        ]));
        ok(rtqa(&["index", "--store", &self.p("store.jsonl"), "--out", &self.p("index.jsonl")]));
    }

    fn generate_args(&self, tag: &str) -> Vec<String> {
        [
            "generate",
            "--store",
            &self.p("store.jsonl"),
            "--annotations",
            &self.p("ann.jsonl"),
            "--out-train",
            &self.p(&format!("{tag}-train.json")),
            "--out-val",
            &self.p(&format!("{tag}-val.json")),
        ]
        .map(String::from)
        .to_vec()
    }

    fn json(&self, name: &str) -> Value {
        serde_json::from_str(&fs::read_to_string(self.p(name)).unwrap()).unwrap()
    }
}

fn run(args: &[String], env: &[(&str, &str)]) -> Output {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    rtqa_env(&refs, env)
}

fn qids(v: &Value) -> Vec<String> {
    v["data"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|a| a["paragraphs"].as_array().unwrap().iter())
        .flat_map(|p| p["qas"].as_array().unwrap().iter())
        .map(|q| q["id"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn usage_errors_exit_1() {
    let o = rtqa(&["generate", "--store", "s", "--annotations", "a", "--variant", "HOW_B_A", "--out-train", "t", "--out-val", "v"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    for name in ["CLOZE", "A_WH_B", "WH_A_B", "WH_B_A", "B_A_NO_WH", "WH_B_A_NO_QMARK", "WH_SIMPLE_B_A", "WHAT_B_A"] {
        assert!(err.contains(name), "{err}");
    }
    assert_eq!(rtqa(&["ingest"]).status.code(), Some(1));
    assert_eq!(rtqa(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(rtqa(&["--help"]).status.code(), Some(0));
    assert_eq!(rtqa(&["generate", "--mode", "sideways"]).status.code(), Some(1));
}

#[test]
fn data_errors_exit_2_without_partial_output() {
    let w = Work::new();
    let corpus = w.write(
        "corpus.jsonl",
        "{\"doc_id\":\"a\",\"title\":\"A\",\"paragraphs\":[\"One. Two.\"]}\n{\"doc_id\": 5}\n",
    );
    let o = rtqa(&["ingest", "--corpus", &corpus, "--out", &w.p("store.jsonl")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":2:"), "{}", stderr(&o));
    assert!(!Path::new(&w.p("store.jsonl")).exists());

    let dup = w.write("dup.jsonl", "{\"doc_id\":\"a\",\"paragraphs\":[\"X.\"]}\n{\"doc_id\":\"a\",\"paragraphs\":[\"Y.\"]}\n");
    let o = rtqa(&["ingest", "--corpus", &dup, "--out", &w.p("store.jsonl")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`a`") || stderr(&o).contains("\"a\""), "{}", stderr(&o));

    let o = rtqa(&["index", "--store", &w.p("missing.jsonl"), "--out", &w.p("i.jsonl")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn external_annotations_are_validated() {
    let w = Work::new();
    let corpus = w.write(
        "corpus.jsonl",
        "{\"doc_id\":\"d\",\"title\":\"T\",\"paragraphs\":[\"Zoë lives in Paris. She likes Rome.\"]}\n",
    );
    ok(rtqa(&["ingest", "--corpus", &corpus, "--out", &w.p("store.jsonl")]));
    let good = w.write(
        "bridge.jsonl",
        concat!(
            "{\"kind\":\"header\",\"format\":\"rtqa-annotations\",\"model\":\"any\"}\n",
            "{\"sent_id\":\"d:0:1\",\"entities\":[{\"surface\":\"Rome\",\"start\":10,\"end\":14,\"label\":\"GPE\"}]}\n",
            "{\"sent_id\":\"d:0:0\",\"entities\":[{\"surface\":\"Paris\",\"start\":13,\"end\":18,\"label\":\"GPE\"},",
            "{\"surface\":\"Zoë\",\"start\":0,\"end\":3,\"label\":\"PERSON\"}]}\n",
        ),
    );
    ok(rtqa(&["annotate", "--store", &w.p("store.jsonl"), "--annotations", &good, "--out", &w.p("ann.jsonl")]));
    let written = fs::read_to_string(w.p("ann.jsonl")).unwrap();
    assert_eq!(
        written,
        concat!(
            "{\"sent_id\":\"d:0:0\",\"entities\":[{\"surface\":\"Zoë\",\"start\":0,\"end\":3,\"label\":\"PERSON\"},",
            "{\"surface\":\"Paris\",\"start\":13,\"end\":18,\"label\":\"GPE\"}]}\n",
            "{\"sent_id\":\"d:0:1\",\"entities\":[{\"surface\":\"Rome\",\"start\":10,\"end\":14,\"label\":\"GPE\"}]}\n",
        )
    );

    let shifted = w.write(
        "bad.jsonl",
        "{\"sent_id\":\"d:0:0\",\"entities\":[{\"surface\":\"Paris\",\"start\":14,\"end\":19,\"label\":\"GPE\"}]}\n",
    );
    let o = rtqa(&["annotate", "--store", &w.p("store.jsonl"), "--annotations", &shifted, "--out", &w.p("bad-out.jsonl")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!Path::new(&w.p("bad-out.jsonl")).exists());
}

#[test]
fn config_file_and_flag_precedence() {
    let w = Work::new();
    w.mini();
    let cfg = w.write("run.toml", "variant = \"CLOZE\"\nuse_retrieved = false\ntarget_size = 40\nvalidation_size = 5\n");

    let mut args = w.generate_args("cfg");
    args.extend(["--config".into(), cfg.clone()]);
    ok(run(&args, &[]));
    let ids = qids(&w.json("cfg-train.json"));
    assert_eq!(ids.len(), 35);
    assert!(ids.iter().all(|q| q.starts_with("CLOZE:")));

    let mut args = w.generate_args("flag");
    args.extend(["--config".into(), cfg.clone(), "--variant".into(), "WHAT_B_A".into(), "--val-size".into(), "0".into()]);
    ok(run(&args, &[]));
    let ids = qids(&w.json("flag-train.json"));
    assert_eq!(ids.len(), 40);
    assert!(ids.iter().all(|q| q.starts_with("WHAT_B_A:")));

    let o = run(&w.generate_args("env"), &[("RTQA_CONFIG", cfg.as_str())]);
    ok(o);
    assert_eq!(fs::read(w.p("env-train.json")).unwrap(), fs::read(w.p("cfg-train.json")).unwrap());

    let bad = w.write("bad.toml", "varient = \"CLOZE\"\n");
    let mut args = w.generate_args("bad");
    args.extend(["--config".into(), bad]);
    assert_eq!(run(&args, &[]).status.code(), Some(1));

    let bad_value = w.write("bad2.toml", "mode = \"sideways\"\n");
    let mut args = w.generate_args("bad2");
    args.extend(["--config".into(), bad_value]);
    assert_eq!(run(&args, &[]).status.code(), Some(1));
}

#[test]
fn generate_defaults_index_and_clamping() {
    let w = Work::new();
    w.mini();
    let mut with_index = w.generate_args("a");
    with_index.extend(["--index".into(), w.p("index.jsonl"), "--size".into(), "120".into(), "--val-size".into(), "20".into()]);
    ok(run(&with_index, &[]));
    let mut without = w.generate_args("b");
    without.extend(["--size".into(), "120".into(), "--val-size".into(), "20".into()]);
    ok(run(&without, &[]));
    assert_eq!(fs::read(w.p("a-train.json")).unwrap(), fs::read(w.p("b-train.json")).unwrap());
    assert_eq!(qids(&w.json("a-val.json")).len(), 20);

    // more validation than the corpus can supply
    let mut clamped = w.generate_args("c");
    clamped.extend(["--mode".into(), "both".into(), "--val-size".into(), "5000".into(), "--size".into(), "6000".into()]);
    let o = ok(run(&clamped, &[]));
    assert!(stderr(&o).contains("validation size reduced"), "{}", stderr(&o));
    assert!(qids(&w.json("c-train.json")).is_empty());

    let mut invalid = w.generate_args("d");
    invalid.extend(["--size".into(), "5".into(), "--val-size".into(), "6".into()]);
    assert_eq!(run(&invalid, &[]).status.code(), Some(1));
}

#[test]
fn evaluate_reports_missing_predictions() {
    let w = Work::new();
    let gold = json!({"version": "1.1", "data": [{"title": "t", "paragraphs": [{"context": "Paris is big.", "qas": [
        {"id": "1", "question": "Which city?", "answers": [{"text": "Paris", "answer_start": 0}]},
        {"id": "2", "question": "How big?", "answers": [{"text": "big", "answer_start": 9}]}
    ]}]}]});
    let gold = w.write("gold.json", &gold.to_string());
    let pred = w.write("pred.json", "{\"1\": \"paris\", \"zzz\": \"x\"}");
    let o = ok(rtqa(&["evaluate", "--gold", &gold, "--pred", &pred, "--report", &w.p("r.json")]));
    assert!(stderr(&o).contains("1 of 2 questions have no prediction"));
    let stdout: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(stdout, json!({"exact_match": 50.0, "f1": 50.0, "n": 2}));
    assert_eq!(w.json("r.json"), stdout);
}

/// Eight questions, five of which have an answer that is an entity of its
/// context. Entities are annotated by hand.
#[test]
fn ner_subset_keeps_entity_answers() {
    let w = Work::new();
    let c1 = "Marie Curie worked in Paris. She won two prizes.";
    let c2 = "The Danube flows east. It passes Vienna and Budapest quickly.";
    let gold = json!({"version": "1.1", "data": [
        {"title": "a", "paragraphs": [{"context": c1, "qas": [
            {"id": "1", "question": "Who worked?", "answers": [{"text": "Marie Curie", "answer_start": 0}]},
            {"id": "2", "question": "Where?", "answers": [{"text": "in Paris", "answer_start": 19}, {"text": "paris", "answer_start": 22}]},
            {"id": "3", "question": "What did she win?", "answers": [{"text": "two prizes", "answer_start": 37}]},
            {"id": "4", "question": "How many?", "answers": [{"text": "two", "answer_start": 37}]}
        ]}]},
        {"title": "b", "paragraphs": [{"context": c2, "qas": [
            {"id": "5", "question": "Which way?", "answers": [{"text": "east", "answer_start": 17}]},
            {"id": "6", "question": "What river?", "answers": [{"text": "Danube", "answer_start": 4}]},
            {"id": "7", "question": "Which city?", "answers": [{"text": "Budapest", "answer_start": 44}]},
            {"id": "8", "question": "How?", "answers": [{"text": "quickly", "answer_start": 53}]}
        ]}]}
    ]});
    let gold = w.write("gold.json", &gold.to_string());
    ok(rtqa(&["contexts", "--gold", &gold, "--out", &w.p("ctx.jsonl")]));
    let store = fs::read_to_string(w.p("ctx.jsonl")).unwrap();
    let (k1, k2) = (context_id(c1), context_id(c2));
    assert!(store.contains(&format!("\"sent_id\":\"{k2}:0:1\"")));

    let ann = [
        json!({"sent_id": format!("{k1}:0:0"), "entities": [
            {"surface": "Marie Curie", "start": 0, "end": 11, "label": "PERSON"},
            {"surface": "Paris", "start": 22, "end": 27, "label": "GPE"}]}),
        json!({"sent_id": format!("{k1}:0:1"), "entities": [{"surface": "two", "start": 8, "end": 11, "label": "CARDINAL"}]}),
        json!({"sent_id": format!("{k2}:0:0"), "entities": [{"surface": "Danube", "start": 4, "end": 10, "label": "LOC"}]}),
        json!({"sent_id": format!("{k2}:0:1"), "entities": [
            {"surface": "Vienna", "start": 10, "end": 16, "label": "GPE"},
            {"surface": "Budapest", "start": 21, "end": 29, "label": "GPE"}]}),
    ]
    .iter()
    .map(|v| format!("{v}\n"))
    .collect::<String>();
    let ann = w.write("ann.jsonl", &ann);
    // the hand annotations must be valid against the exported store
    ok(rtqa(&["annotate", "--store", &w.p("ctx.jsonl"), "--annotations", &ann, "--out", &w.p("checked.jsonl")]));

    ok(rtqa(&["ner-subset", "--gold", &gold, "--annotations", &ann, "--out", &w.p("sub.json")]));
    assert_eq!(qids(&w.json("sub.json")), ["1", "2", "4", "6", "7"]);
    ok(rtqa(&["ner-subset", "--gold", &w.p("sub.json"), "--annotations", &ann, "--out", &w.p("sub2.json")]));
    assert_eq!(fs::read(w.p("sub.json")).unwrap(), fs::read(w.p("sub2.json")).unwrap());

    let partial = w.write("partial.jsonl", &fs::read_to_string(&ann).unwrap().lines().take(2).map(|l| format!("{l}\n")).collect::<String>());
    let o = rtqa(&["ner-subset", "--gold", &gold, "--annotations", &partial, "--out", &w.p("sub3.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(&k2));
}

#[test]
fn stats_subsample_and_priors() {
    let w = Work::new();
    w.mini();
    let mut args = w.generate_args("g");
    args.extend(["--variant".into(), "WH_SIMPLE_B_A".into(), "--size".into(), "200".into(), "--val-size".into(), "0".into()]);
    ok(run(&args, &[]));

    let o = ok(rtqa(&["stats", "--train", &w.p("g-train.json")]));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.starts_with("questions\t200\n"), "{out}");
    assert!(out.contains("variant\tWH_SIMPLE_B_A\t200\n"));
    let label_total: usize = out
        .lines()
        .filter(|l| l.starts_with("label\t"))
        .map(|l| l.rsplit('\t').next().unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(label_total, 200);

    ok(rtqa(&["subsample", "--input", &w.p("g-train.json"), "--n", "5", "--seed", "3", "--out", &w.p("s.json")]));
    let s = w.json("s.json");
    let paras = s["data"][0]["paragraphs"].as_array().unwrap();
    assert_eq!(paras.len(), 5);
    assert!(paras.iter().all(|p| p["qas"].as_array().unwrap().len() == 1));

    // fit priors from the generated questions and feed them back in
    ok(rtqa(&[
        "wh-priors",
        "--train",
        &w.p("g-train.json"),
        "--gazetteer",
        &data("gazetteer.json"),
        "--top-n",
        "3",
        "--out",
        &w.p("priors.json"),
    ]));
    let priors = w.json("priors.json");
    assert!(priors["*"].as_array().is_some_and(|l| !l.is_empty()));
    let mut args = w.generate_args("p");
    args.extend(["--wh-priors".into(), w.p("priors.json"), "--size".into(), "30".into(), "--val-size".into(), "0".into()]);
    ok(run(&args, &[]));
}

#[test]
fn outputs_land_where_asked() {
    let w = Work::new();
    w.mini();
    let nested: PathBuf = w.dir.path().join("out");
    fs::create_dir(&nested).unwrap();
    let train = nested.join("train.json");
    let mut args = w.generate_args("x");
    args[6] = train.to_string_lossy().into_owned();
    args.extend(["--size".into(), "10".into(), "--val-size".into(), "2".into()]);
    ok(run(&args, &[]));
    assert_eq!(qids(&serde_json::from_str(&fs::read_to_string(&train).unwrap()).unwrap()).len(), 8);
    // no temporary files left next to the outputs
    assert_eq!(fs::read_dir(&nested).unwrap().count(), 1);
}
