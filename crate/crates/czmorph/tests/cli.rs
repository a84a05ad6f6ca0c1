use std::fs;
use std::process::Command;

use serde_json::Value;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn czmorph_with(args: &[&str], stdin: &str) -> Outcome {
    let mut argv = vec!["czmorph"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = czmorph::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn czmorph(args: &[&str]) -> Outcome {
    czmorph_with(args, "")
}

fn json_with(args: &[&str], stdin: &str) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let o = czmorph_with(&a, stdin);
    assert_eq!(o.code, 0, "{}", o.err);
    serde_json::from_str(&o.out).unwrap()
}

fn json(args: &[&str]) -> Value {
    json_with(args, "")
}

const SMALL_LEXICON: &str =
    "ENDINGS a\nNomSg\nDatSg ^2P1 ě\nPARADIGMS\nfem : a\nENTRIES\nmatka fem matka\n";

#[test]
fn generate_prints_surface_forms() {
    let o = czmorph(&["generate", "korek", "InstrSg"]);
    assert_eq!((o.code, o.out.as_str()), (0, "korkem\n"));
    assert_eq!(
        json(&["generate", "Matka", "DatSg"])["forms"],
        serde_json::json!(["matce"])
    );
}

#[test]
fn generate_rejects_unknown_lemma_and_tag() {
    let o = czmorph(&["generate", "xyz", "NomSg"]);
    assert_eq!(o.code, 3);
    assert!(o.err.contains("unknown lemma `xyz`"), "{}", o.err);
    let o = czmorph(&["generate", "korek", "Nope"]);
    assert_eq!(o.code, 3);
    assert!(o.err.contains("unknown tag `Nope`"), "{}", o.err);
}

#[test]
fn trace_names_the_rule_rejecting_unsyncopated_form() {
    let v = json(&["trace", "korek^2P0^E1em", "korekem"]);
    let candidates = v["candidates"].as_array().unwrap();
    assert!(!candidates.is_empty());
    assert!(candidates
        .iter()
        .all(|c| c["accepted"] == false && c["surface"] == "korekem"));
    // the candidate without insertions keeps the stem e, which must delete
    let plain = candidates
        .iter()
        .find(|c| !c["pairs"].as_str().unwrap().contains("0:e"))
        .unwrap();
    assert_eq!(plain["rule"], "Deletion of e");
    assert_eq!(plain["position"], 3);
    let o = czmorph(&["trace", "korek^2P0^E1em", "korekem"]);
    assert!(o
        .out
        .lines()
        .any(|l| l.starts_with("rejected korekem: rule \"Deletion of e\" at position 3")));
}

#[test]
fn trace_shows_accepted_pair_string() {
    let v = json(&["trace", "korek^2P0^E1em", "korkem"]);
    let accepted: Vec<&Value> = v["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["accepted"] == true)
        .collect();
    assert_eq!(accepted.len(), 1);
    assert_eq!(
        accepted[0]["pairs"],
        "k:k o:o r:r e:0 k:k ^2P0:0 ^E1:0 e:e m:m"
    );
    assert!(accepted[0]["rule"].is_null());
}

#[test]
fn analyze_reads_arguments_and_stdin() {
    let o = czmorph(&["analyze", "matce", "zzz"]);
    assert_eq!(
        o.out,
        "matce\tmatka\tfem-a-hard\tDatSg\nmatce\tmatka\tfem-a-hard\tLocSg\nzzz\t?\n"
    );
    let o = czmorph_with(&["analyze"], "Úřednic\n");
    assert_eq!(o.out, "Úřednic\túředník\tmasc-ik\tFem.GenPl\n");
    let o = czmorph_with(&["analyze"], "");
    assert_eq!((o.code, o.out.as_str(), o.err.as_str()), (0, "", ""));
}

#[test]
fn json_and_text_carry_the_same_analyses() {
    let words = "matce lidé Bože zzz";
    let v = json_with(&["analyze"], words);
    let mut from_json = Vec::new();
    for w in v.as_array().unwrap() {
        let word = w["word"].as_str().unwrap();
        let analyses = w["analyses"].as_array().unwrap();
        if analyses.is_empty() {
            from_json.push(format!("{word}\t?"));
        }
        for a in analyses {
            let mark = if a["exception"] == true {
                "\texception"
            } else {
                ""
            };
            from_json.push(format!(
                "{word}\t{}\t{}\t{}{mark}",
                a["lemma"].as_str().unwrap(),
                a["paradigm"].as_str().unwrap(),
                a["tag"].as_str().unwrap()
            ));
        }
    }
    let text = czmorph_with(&["analyze"], words).out;
    assert_eq!(text.lines().collect::<Vec<_>>(), from_json);
}

#[test]
fn json_output_is_reproducible() {
    for args in [
        &["--json", "expand", "pes"][..],
        &["--json", "analyze", "matce", "psa"],
        &["--json", "trace", "matka^2P1ě"],
        &["--json", "conflicts"],
    ] {
        let a = czmorph(args);
        let b = czmorph(args);
        assert_eq!(a.code, 0, "{args:?}: {}", a.err);
        assert_eq!(a.out, b.out, "{args:?}");
    }
}

#[test]
fn expand_lists_lexical_strings_and_exceptions() {
    let o = czmorph(&["expand", "matka"]);
    assert!(
        o.out
            .lines()
            .any(|l| l == "fem-a-hard\tGenPl\tmat^E2ka^N1\tmatek"),
        "{}",
        o.out
    );
    let v = json(&["expand", "člověk"]);
    let nom_pl = v["forms"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["tag"] == "NomPl")
        .unwrap();
    assert!(nom_pl["lexical"].is_null());
    assert_eq!(nom_pl["surfaces"], serde_json::json!(["lidé"]));
    assert_eq!(czmorph(&["expand", "nic"]).code, 3);
}

#[test]
fn conflicts_on_bundled_and_clashing_rules() {
    let o = czmorph(&["conflicts"]);
    assert_eq!((o.code, o.out.as_str()), (0, "no conflicts\n"));
    let dir = tempfile::tempdir().unwrap();
    let (alpha, rules) = (dir.path().join("a"), dir.path().join("r"));
    fs::write(&alpha, "Alphabet\na:0 a:e ^N1:0\n").unwrap();
    fs::write(
        &rules,
        "\"drop\"\na:0 <=> _ ^N1: ;\n\"raise\"\na:e <= _ ^N1: ;\n",
    )
    .unwrap();
    let o = czmorph(&[
        "--alphabet",
        alpha.to_str().unwrap(),
        "--rules",
        rules.to_str().unwrap(),
        "conflicts",
    ]);
    assert_eq!(o.code, 3);
    assert!(
        o.out
            .contains("\"drop\" (context 1) and \"raise\" (context 1) clash"),
        "{}",
        o.out
    );
}

#[test]
fn compiled_index_is_used_and_checked() {
    let dir = tempfile::tempdir().unwrap();
    let index = dir.path().join("forms.idx");
    let lexicon = dir.path().join("small.lexicon");
    fs::write(&lexicon, SMALL_LEXICON).unwrap();
    let (idx, lex) = (index.to_str().unwrap(), lexicon.to_str().unwrap());
    let o = czmorph(&["--index", idx, "--lexicon", lex, "compile"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let text = fs::read_to_string(&index).unwrap();
    assert!(text.starts_with("czmorph-index 1\nalphabet-sha256 "));
    assert!(
        text.ends_with("pairs 2\nmatce\tmatka\tfem\tDatSg\tG\nmatka\tmatka\tfem\tNomSg\tG\n"),
        "{text}"
    );

    let o = czmorph(&["--index", idx, "--lexicon", lex, "analyze", "matce"]);
    assert_eq!(o.out, "matce\tmatka\tfem\tDatSg\n");
    // same index against the bundled lexicon: the hash no longer matches
    let o = czmorph(&["--index", idx, "analyze", "matce"]);
    assert_eq!(o.code, 3);
    assert!(o.err.contains("stale"), "{}", o.err);

    fs::write(&index, text.replace("pairs 2", "pairs 3")).unwrap();
    let o = czmorph(&["--index", idx, "--lexicon", lex, "analyze", "matce"]);
    assert_eq!(o.code, 3);
    assert!(o.err.contains("announces 3 pairs"), "{}", o.err);
}

#[test]
fn coverage_of_files_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.txt");
    fs::write(&corpus, "Matce, matce! zzz\nqqq\n").unwrap();
    let v = json(&["coverage", corpus.to_str().unwrap()]);
    assert_eq!(
        (v["tokens"].as_u64(), v["analyzed"].as_u64()),
        (Some(4), Some(2))
    );
    assert_eq!(v["ratio"], 0.5);
    assert_eq!(v["empty"], false);
    let v = json_with(&["coverage", "-"], "");
    assert_eq!(
        (
            v["tokens"].as_u64(),
            v["ratio"].as_f64(),
            v["empty"].as_bool()
        ),
        (Some(0), Some(0.0), Some(true))
    );
    let o = czmorph(&["coverage", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(o.code, 2);
}

#[test]
fn errors_map_to_exit_codes() {
    assert_eq!(czmorph(&["frobnicate"]).code, 1);
    assert_eq!(czmorph(&["generate", "korek"]).code, 1);
    let o = czmorph(&["compile"]);
    assert_eq!(o.code, 1);
    assert!(o.err.contains("--index"));
    assert_eq!(
        czmorph(&["--rules", "/nonexistent/rules", "conflicts"]).code,
        2
    );
    assert_eq!(czmorph(&["--help"]).code, 0);

    let dir = tempfile::tempdir().unwrap();
    let rules = dir.path().join("bad.rules");
    fs::write(
        &rules,
        "\"ok\"\na:0 <=> _ ^N1: ;\n\"broken\"\na:0 <=> _ ^N1: \n",
    )
    .unwrap();
    let o = czmorph(&["--rules", rules.to_str().unwrap(), "conflicts"]);
    assert_eq!(o.code, 3);
    let prefix = format!("czmorph: {}:", rules.display());
    assert!(o.err.starts_with(&prefix), "{}", o.err);
}

#[test]
fn environment_variables_override_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let lexicon = dir.path().join("small.lexicon");
    fs::write(&lexicon, SMALL_LEXICON).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_czmorph"))
        .args(["analyze", "matce", "psa"])
        .env("CZMORPH_LEXICON", &lexicon)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "matce\tmatka\tfem\tDatSg\npsa\t?\n"
    );
}
