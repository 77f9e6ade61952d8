use std::path::PathBuf;
use std::process::Command;

use ordcopies::cli::run;
use ordcopies::Ordinal;
use tempfile::TempDir;

const FULL_DIM2: &str = r#"{"dim":2,"prefix":[],"cycle":[{"dim":1,"prefix":[],"cycle":[1]}]}"#;

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, body: &str) -> String {
        let path: PathBuf = self.0.path().join(name);
        std::fs::write(&path, body).unwrap();
        path.to_string_lossy().into_owned()
    }
}

fn out(args: &[&str]) -> (i32, String) {
    let r = run(args.iter().copied());
    (r.exit_code, r.stdout.trim_end().to_string())
}

#[test]
fn binary_prints_and_exits() {
    let bin = env!("CARGO_BIN_EXE_ordcopies");
    let ok = Command::new(bin)
        .args(["ord", "add", "w+1", "w"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "w*2\n");
    assert!(ok.stderr.is_empty());

    let bad = Command::new(bin)
        .args(["ord", "add", "w^(", "1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());

    let domain = Command::new(bin).args(["factorize", "7"]).output().unwrap();
    assert_eq!(domain.status.code(), Some(1));
}

#[test]
fn ordinal_commands() {
    assert_eq!(out(&["ord", "add", "w+1", "w"]), (0, "w*2".into()));
    assert_eq!(
        out(&["ord", "add", "w^2*3", "w^2+w"]),
        (0, "w^(2)*4+w".into())
    );
    assert_eq!(out(&["ord", "mul", "2", "w"]), (0, "w".into()));
    assert_eq!(out(&["ord", "mul", "w^2", "w"]), (0, "w^(3)".into()));
    assert_eq!(out(&["ord", "pow", "w", "w"]), (0, "w^(w)".into()));
    assert_eq!(out(&["ord", "pow", "w", "0"]), (0, "1".into()));
    assert_eq!(out(&["ord", "cmp", "0", "w"]), (0, "LT".into()));
    assert_eq!(
        out(&["ord", "cmp", "w^3*2+w", "w^(3)*2 + w"]),
        (0, "EQ".into())
    );
    assert_eq!(
        out(&["ord", "classify", "w^2"]),
        (0, "indecomposable: true\ngamma: w^(2)\nr: 0".into())
    );
    assert_eq!(
        out(&["ord", "classify", "5"]),
        (0, "indecomposable: false\ngamma: 1\nr: 4".into())
    );
    assert_eq!(out(&["ord", "add", "w + w^2", "1"]).0, 2);
}

#[test]
fn printed_ordinals_reparse() {
    for args in [
        ["add", "w^(w+2)*3+w^5*2+4", "w^5"],
        ["mul", "w+1", "w*2+3"],
        ["pow", "w+1", "3"],
        ["pow", "2", "w^2+1"],
    ] {
        let r = run(["ord"].into_iter().chain(args));
        let printed = r.stdout.trim_end();
        let back: Ordinal = printed.parse().unwrap();
        assert_eq!(back.to_string(), printed);
    }
}

#[test]
fn set_commands() {
    let files = Files::new();
    let full = files.put("full_dim2.json", FULL_DIM2);
    assert_eq!(out(&["set", "type", "--file", &full]), (0, "w^(2)".into()));
    assert_eq!(out(&["set", "ideal", "--file", &full]), (0, "false".into()));
    assert_eq!(
        out(&["set", "member", "--file", &full, "3,5"]),
        (0, "true".into())
    );
    assert_eq!(
        out(&["set", "select", "--file", &full, "w*2+3"]),
        (0, "[2,3]".into())
    );
    assert_eq!(
        out(&["set", "copy", "--file", &full, "w^2"]),
        (0, "true".into())
    );
    assert_eq!(out(&["set", "copy", "--file", &full, "w^3"]).0, 1);

    let evens = files.put("evens.json", r#"{"dim":1,"prefix":[],"cycle":[1,0]}"#);
    assert_eq!(
        out(&["set", "select", "--file", &evens, "7"]),
        (0, "[14]".into())
    );
    assert_eq!(
        out(&["set", "member", "--file", &evens, "3"]),
        (0, "false".into())
    );
    assert_eq!(out(&["set", "member", "--file", &evens, "3,1"]).0, 1);

    let finite = files.put("finite.json", r#"{"dim":1,"prefix":[0,1,1],"cycle":[0]}"#);
    assert_eq!(out(&["set", "type", "--file", &finite]), (0, "2".into()));
    assert_eq!(
        out(&["set", "ideal", "--file", &finite]),
        (0, "true".into())
    );
    assert_eq!(out(&["set", "select", "--file", &finite, "2"]).0, 1);

    let broken = files.put("broken.json", r#"{"dim":2,"prefix":[],"cycle":[1]}"#);
    assert_eq!(out(&["set", "type", "--file", &broken]).0, 2);
    assert_eq!(
        out(&["set", "type", "--file", "/nonexistent/set.json"]).0,
        2
    );
}

#[test]
fn layer_commands() {
    let files = Files::new();
    let full = files.put("full.json", r#"{"prefix":[],"tail":"full"}"#);
    let prefix_only = files.put(
        "prefix.json",
        r#"{"prefix":[{"dim":1,"prefix":[],"cycle":[1]}],"tail":"empty"}"#,
    );
    let evens = files.put(
        "evens.json",
        r#"{"kind":"periodic","prefix":[],"cycle":[1,0]}"#,
    );
    let all = files.put("all.json", r#"{"kind":"cofinite","exceptions":[]}"#);

    assert_eq!(
        out(&["layer", "sset", "--file", &full, "2"]),
        (0, r#"{"kind":"cofinite","exceptions":[0,1]}"#.into())
    );
    assert_eq!(
        out(&["layer", "supp", "--file", &prefix_only]),
        (0, r#"{"kind":"finite","exceptions":[0]}"#.into())
    );
    assert_eq!(
        out(&["layer", "ideal", "--file", &full]),
        (0, "false".into())
    );
    assert_eq!(
        out(&["layer", "ideal", "--file", &prefix_only]),
        (0, "true".into())
    );
    assert_eq!(
        out(&["layer", "type", "--file", &full]),
        (0, "w^(w)".into())
    );
    assert_eq!(
        out(&["layer", "type", "--file", &prefix_only]),
        (0, "w".into())
    );
    assert_eq!(
        out(&["layer", "subset", "--file", &full, "--other", &prefix_only]),
        (0, "false".into())
    );
    assert_eq!(
        out(&["layer", "subset", "--file", &prefix_only, "--other", &full]),
        (0, "true".into())
    );
    assert_eq!(
        out(&[
            "layer",
            "reduction",
            "--file",
            &full,
            "--nat",
            &evens,
            "--m-max",
            "10"
        ]),
        (0, "true".into())
    );
    assert_eq!(
        out(&[
            "layer",
            "reduction",
            "--file",
            &prefix_only,
            "--nat",
            &all,
            "--m-max",
            "1"
        ])
        .0,
        1
    );

    let list = files.put("list.json", r#"[{"prefix":[],"tail":"full"}]"#);
    assert_eq!(
        out(&["layer", "fusion", "--file", &list, "--nat", &evens]),
        (0, r#"{"prefix":[],"tail":[1,0]}"#.into())
    );
}

#[test]
fn caps_come_from_the_environment() {
    let files = Files::new();
    let deep = files.put(
        "deep.json",
        r#"{"dim":5,"prefix":[],"cycle":[{"dim":4,"prefix":[],"cycle":[{"dim":3,"prefix":[],"cycle":[{"dim":2,"prefix":[],"cycle":[{"dim":1,"prefix":[],"cycle":[1]}]}]}]}]}"#,
    );
    let bin = env!("CARGO_BIN_EXE_ordcopies");
    let capped = Command::new(bin)
        .args(["set", "type", "--file", &deep])
        .env_remove("ORDCOPIES_NMAX")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
    let raised = Command::new(bin)
        .args(["set", "type", "--file", &deep])
        .env("ORDCOPIES_NMAX", "5")
        .output()
        .unwrap();
    assert_eq!(raised.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&raised.stdout), "w^(5)\n");
}

#[test]
fn poset_commands() {
    let files = Files::new();
    let chain = files.put("chain.txt", "2\n1 1\n0 1\n");
    let anti = files.put("anti.txt", "2\n10\n01\n");
    assert_eq!(
        out(&["poset", "sep", "--file", &chain]),
        (0, "false".into())
    );
    assert_eq!(out(&["poset", "sep", "--file", &anti]), (0, "true".into()));
    assert_eq!(
        out(&["poset", "sm", "--file", &chain]),
        (0, "2\n1 1\n1 1".into())
    );
    assert_eq!(out(&["poset", "sq", "--file", &chain]), (0, "1\n1".into()));
    let product = run(["poset", "product", "--file", &chain, "--other", &anti]).stdout;
    let product = files.put("product.txt", &product);
    let quotient = run(["poset", "sq", "--file", &product]).stdout;
    let quotient = files.put("quotient.txt", &quotient);
    let (code, map) = out(&["poset", "iso", "--file", &quotient, "--other", &anti]);
    assert_eq!(code, 0);
    assert_ne!(map, "none");
    assert_eq!(
        out(&["poset", "iso", "--file", &chain, "--other", &anti]),
        (0, "none".into())
    );

    let cyclic = files.put("bad.txt", "2\n1 0\n1 2\n");
    assert_eq!(out(&["poset", "sq", "--file", &cyclic]).0, 2);
    let big = files.put("big.txt", &ordcopies::FinPoset::antichain(11).to_text());
    assert_eq!(out(&["poset", "iso", "--file", &big, "--other", &big]).0, 1);
}

#[test]
fn factorize_command() {
    assert_eq!(out(&["factorize", "w^(2)"]), (0, "(rp(P(w)/fin))^+".into()));
    assert_eq!(out(&["factorize", "w*3"]), (0, "((P(w)/fin)^+)^3".into()));
    assert_eq!(out(&["factorize", "w+5"]), out(&["factorize", "w"]));
    let (code, text) = out(&["factorize", "w^(w+2)*3+w^5*2+4"]);
    assert_eq!(code, 0);
    assert_eq!(
        text,
        "((rp^2(P(w^(w))/I_(w^(w))))^+)^3 x ((rp^4(P(w)/fin))^+)^2"
    );
    let (code, json) = out(&["factorize", "w", "--format", "json"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["kind"], "PositivePart");
    assert_eq!(out(&["factorize", "w", "--format", "yaml"]).0, 2);
    assert_eq!(
        out(&["factorize", "w", "--iterate"]),
        (0, "(P(w)/fin)^+".into())
    );
    let (_, iterated) = out(&["factorize", "w*2", "--iterate"]);
    assert!(iterated.contains(ordcopies::factor::PI_LABEL));
}

#[test]
fn verify_command() {
    let r = run(["verify", "--suite", "cofinal-sum", "--sequential"]);
    assert_eq!(r.exit_code, 0, "{}", r.stdout);
    assert!(r.stdout.starts_with("PASS cofinal-sum (200 cases"));
    assert_eq!(run(["verify", "--suite", "missing"]).exit_code, 2);
}
