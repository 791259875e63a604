//! Regenerates the derived corpus artifacts: ground-truth after files,
//! the difficulty/evidence fields in each meta.json, the per-file
//! checksum manifest, and the fixture-repo manifest.
//!
//!     cargo run -p uni2py-core --example regen_corpus
//!
//! Hand-written inputs (before.py, the id/project/target/signals/notes
//! meta fields, fault files) are never overwritten. The tool fails when a
//! case leaves residuals or its recorded signals disagree with the
//! detector, so drift shows up here instead of in CI.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use serde::Deserialize;

use uni2py_core::classify::classify_case;
use uni2py_core::corpus::{self, CaseMeta};
use uni2py_core::detect;
use uni2py_core::source_model::{parse_module, SourceFile};
use uni2py_core::text::sha256_hex;
use uni2py_core::transpile::{migrate_module, MappingTable, MigrateOptions};

#[derive(Deserialize)]
struct MetaStub {
    id: String,
    project: String,
    target: String,
    signals: Vec<detect::SignalKind>,
    notes: String,
}

fn main() -> ExitCode {
    let root = corpus::bundled_root();
    let cases_dir = root.join("cases");
    let table = MappingTable::builtin();
    let opts = MigrateOptions::default();

    let mut ids: Vec<_> = fs::read_dir(&cases_dir)
        .expect("cases directory")
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_dir())
        .collect();
    ids.sort();

    let mut failures = 0usize;
    let mut simple = 0usize;
    let mut complex = 0usize;

    for dir in &ids {
        let id = dir.file_name().unwrap().to_string_lossy().into_owned();
        let before = fs::read_to_string(dir.join("before.py")).expect("before.py");
        let stub: MetaStub = serde_json::from_str(
            &fs::read_to_string(dir.join("meta.json")).expect("meta.json"),
        )
        .unwrap_or_else(|e| panic!("{id}: meta.json: {e}"));
        assert_eq!(stub.id, id, "{id}: meta id mismatch");

        let file = SourceFile::new(dir.join("before.py"), before.clone());
        let out = match migrate_module(&file, &table, &opts) {
            Ok(out) => out,
            Err(e) => {
                eprintln!("{id}: migration failed: {e}");
                failures += 1;
                continue;
            }
        };
        if !out.residuals.is_empty() {
            eprintln!("{id}: {} residuals:", out.residuals.len());
            for r in &out.residuals {
                eprintln!("{id}:   {}:{} {}", r.span.start_line, r.span.start_col, r.detail);
            }
            failures += 1;
            continue;
        }
        fs::write(dir.join("after.py"), &out.text).expect("write after.py");

        let module = parse_module(&file).expect("before parses");
        let (difficulty, evidence) = classify_case(&file, &module, Some(&out.text));
        match difficulty {
            uni2py_core::classify::Difficulty::Simple => simple += 1,
            uni2py_core::classify::Difficulty::Complex => complex += 1,
        }

        let found: Vec<_> = detect::file_signals(&before, &out.text, &stub.target)
            .iter()
            .map(|s| s.kind)
            .collect();
        if found != stub.signals {
            eprintln!(
                "{id}: recorded signals {:?} but change fires {:?}",
                stub.signals, found
            );
            failures += 1;
        }

        let meta = CaseMeta {
            id: stub.id,
            project: stub.project,
            target: stub.target,
            difficulty,
            evidence,
            signals: stub.signals,
            notes: stub.notes,
        };
        let mut text = serde_json::to_string_pretty(&meta).unwrap();
        text.push('\n');
        fs::write(dir.join("meta.json"), text).expect("write meta.json");
        println!("{id}: {difficulty}");
    }

    let mut checksums = BTreeMap::new();
    collect(&cases_dir, &root, &mut checksums);
    let mut manifest = String::new();
    for (path, sha) in &checksums {
        manifest.push_str(&serde_json::json!({"path": path, "sha256": sha}).to_string());
        manifest.push('\n');
    }
    fs::write(root.join("manifest.jsonl"), manifest).expect("write manifest.jsonl");

    let repo_dir = tempfile::tempdir().expect("tempdir");
    let repo_manifest =
        corpus::build_fixture_repo(&repo_dir.path().join("repo")).expect("fixture repo");
    let mut text = serde_json::to_string_pretty(&repo_manifest).unwrap();
    text.push('\n');
    fs::write(root.join("repo_manifest.json"), text).expect("write repo_manifest.json");

    println!(
        "{} cases ({simple} simple / {complex} complex), {} checksums, {} planted commits",
        ids.len(),
        checksums.len(),
        repo_manifest.commits.len()
    );
    if failures > 0 {
        eprintln!("{failures} case(s) failed");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}

fn collect(dir: &Path, root: &Path, out: &mut BTreeMap<String, String>) {
    for entry in fs::read_dir(dir).expect("read dir") {
        let path = entry.expect("dir entry").path();
        if path.is_dir() {
            collect(&path, root, out);
        } else {
            let rel = path
                .strip_prefix(root)
                .unwrap()
                .to_string_lossy()
                .replace('\\', "/");
            out.insert(rel, sha256_hex(&fs::read(&path).expect("read file")));
        }
    }
}
