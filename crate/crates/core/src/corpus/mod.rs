//! Bundled migration corpus: 40 unittest cases with reviewed pytest
//! ground truths, the small runnable project they execute against, seeded
//! fault variants for the error taxonomy, and a synthetic git history
//! builder for the detection rules.
//!
//! Loading validates everything that can be checked statically: parses,
//! checksums, the case count and difficulty split, and agreement between
//! each case's recorded metadata and what the classifier and detector
//! recompute from its sources.

mod fixture_repo;

pub use fixture_repo::{
    build_fixture_repo, load_repo_manifest, CommitRole, PlantedCommit, RepoManifest,
};

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classify::classify_case;
use crate::classify::{ComplexityEvidence, Difficulty};
use crate::detect::{self, SignalKind};
use crate::eval::ErrorCategory;
use crate::source_model::{parse_module, ParseFailure, SourceFile};
use crate::text::sha256_hex;

pub const CASE_COUNT: usize = 40;
pub const SIMPLE_COUNT: usize = 30;
pub const COMPLEX_COUNT: usize = 10;

/// Per-case record stored in `cases/<id>/meta.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseMeta {
    pub id: String,
    /// Which part of the bundled project the case tests.
    pub project: String,
    /// Where the module lives when run against the project,
    /// e.g. `tests/test_cart_totals.py`.
    pub target: String,
    pub difficulty: Difficulty,
    pub evidence: ComplexityEvidence,
    /// Detection signals the before/after change is expected to fire.
    pub signals: Vec<SignalKind>,
    pub notes: String,
}

#[derive(Debug, Clone)]
pub struct MigrationCase {
    pub meta: CaseMeta,
    pub before: String,
    pub ground_truth_after: Option<String>,
    pub dir: PathBuf,
}

impl MigrationCase {
    pub fn id(&self) -> &str {
        &self.meta.id
    }

    pub fn before_file(&self) -> SourceFile {
        SourceFile::new(self.dir.join("before.py"), self.before.clone())
    }

    pub fn after_file(&self) -> Option<SourceFile> {
        self.ground_truth_after
            .as_ref()
            .map(|text| SourceFile::new(self.dir.join("after.py"), text.clone()))
    }
}

/// A deliberately broken variant of one case's after file, wired to land
/// in exactly one error bucket when evaluated.
#[derive(Debug, Clone)]
pub struct SeededFault {
    pub case: String,
    pub category: ErrorCategory,
    pub file: String,
    pub text: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct FaultEntry {
    case: String,
    category: ErrorCategory,
    file: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("corpus manifest: {0}")]
    Manifest(String),
    #[error("case {case}: {source}")]
    Parse { case: String, source: ParseFailure },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Root of the corpus checked into this repository.
pub fn bundled_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// The runnable project the cases execute against.
pub fn project_root(corpus_root: &Path) -> PathBuf {
    corpus_root.join("project")
}

/// Reads and parses every case under `<root>/cases`, without whole-corpus
/// validation. Most callers want [`load_corpus`].
pub fn load_cases(root: &Path) -> Result<Vec<MigrationCase>, CorpusError> {
    let cases_dir = root.join("cases");
    if !cases_dir.is_dir() {
        return Err(CorpusError::Manifest(format!(
            "missing cases directory under {}",
            root.display()
        )));
    }
    let mut ids: Vec<PathBuf> = fs::read_dir(&cases_dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_dir())
        .collect();
    ids.sort();

    let mut cases = Vec::new();
    for dir in ids {
        let id = dir
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let meta_path = dir.join("meta.json");
        let meta_text = fs::read_to_string(&meta_path).map_err(|e| {
            CorpusError::Manifest(format!("case {id}: cannot read meta.json: {e}"))
        })?;
        let meta: CaseMeta = serde_json::from_str(&meta_text)
            .map_err(|e| CorpusError::Manifest(format!("case {id}: bad meta.json: {e}")))?;
        if meta.id != id {
            return Err(CorpusError::Manifest(format!(
                "case {id}: meta.json carries id {:?}",
                meta.id
            )));
        }
        let before = fs::read_to_string(dir.join("before.py")).map_err(|e| {
            CorpusError::Manifest(format!("case {id}: cannot read before.py: {e}"))
        })?;
        let after_path = dir.join("after.py");
        let ground_truth_after = if after_path.exists() {
            Some(fs::read_to_string(&after_path)?)
        } else {
            None
        };

        let case = MigrationCase { meta, before, ground_truth_after, dir };
        parse_module(&case.before_file())
            .map_err(|source| CorpusError::Parse { case: id.clone(), source })?;
        if let Some(after) = case.after_file() {
            parse_module(&after)
                .map_err(|source| CorpusError::Parse { case: id.clone(), source })?;
        }
        cases.push(case);
    }
    Ok(cases)
}

/// Checks every file under `<root>/cases` against `<root>/manifest.jsonl`.
pub fn verify_checksums(root: &Path) -> Result<(), CorpusError> {
    let manifest_path = root.join("manifest.jsonl");
    let text = fs::read_to_string(&manifest_path).map_err(|e| {
        CorpusError::Manifest(format!("cannot read {}: {e}", manifest_path.display()))
    })?;

    #[derive(Deserialize)]
    struct Line {
        path: String,
        sha256: String,
    }

    let mut listed = std::collections::BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let entry: Line = serde_json::from_str(line).map_err(|e| {
            CorpusError::Manifest(format!("manifest.jsonl line {}: {e}", n + 1))
        })?;
        listed.insert(entry.path, entry.sha256);
    }

    let mut actual = std::collections::BTreeMap::new();
    collect_case_files(&root.join("cases"), root, &mut actual)?;

    for (path, sha) in &actual {
        match listed.get(path) {
            None => {
                return Err(CorpusError::Manifest(format!(
                    "{path} is not listed in manifest.jsonl"
                )))
            }
            Some(expected) if expected != sha => {
                return Err(CorpusError::Manifest(format!(
                    "{path} drifted: sha256 {sha} != recorded {expected}"
                )))
            }
            Some(_) => {}
        }
    }
    for path in listed.keys() {
        if !actual.contains_key(path) {
            return Err(CorpusError::Manifest(format!(
                "{path} is listed in manifest.jsonl but missing"
            )));
        }
    }
    Ok(())
}

fn collect_case_files(
    dir: &Path,
    root: &Path,
    out: &mut std::collections::BTreeMap<String, String>,
) -> Result<(), CorpusError> {
    if !dir.is_dir() {
        return Ok(());
    }
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_dir() {
            collect_case_files(&path, root, out)?;
        } else {
            let rel = path
                .strip_prefix(root)
                .unwrap_or(&path)
                .to_string_lossy()
                .replace('\\', "/");
            out.insert(rel, sha256_hex(&fs::read(&path)?));
        }
    }
    Ok(())
}

/// Loads the corpus and validates its invariants: checksums hold, exactly
/// [`CASE_COUNT`] cases split [`SIMPLE_COUNT`]/[`COMPLEX_COUNT`], every
/// file parses, and each case's recorded difficulty, evidence, and
/// expected signals match what the classifier and detector recompute.
pub fn load_corpus(root: &Path) -> Result<Vec<MigrationCase>, CorpusError> {
    let cases = load_cases(root)?;
    if cases.is_empty() {
        return Err(CorpusError::Manifest(format!(
            "no cases under {}",
            root.display()
        )));
    }
    verify_checksums(root)?;
    if cases.len() != CASE_COUNT {
        return Err(CorpusError::Manifest(format!(
            "expected {CASE_COUNT} cases, found {}",
            cases.len()
        )));
    }
    let simple = cases
        .iter()
        .filter(|c| c.meta.difficulty == Difficulty::Simple)
        .count();
    let complex = cases.len() - simple;
    if simple != SIMPLE_COUNT || complex != COMPLEX_COUNT {
        return Err(CorpusError::Manifest(format!(
            "expected a {SIMPLE_COUNT}/{COMPLEX_COUNT} simple/complex split, found {simple}/{complex}"
        )));
    }
    for case in &cases {
        validate_case(case)?;
    }
    Ok(cases)
}

fn validate_case(case: &MigrationCase) -> Result<(), CorpusError> {
    let id = case.id();
    if !case.meta.target.ends_with(".py") || case.meta.target.starts_with('/') {
        return Err(CorpusError::Manifest(format!(
            "case {id}: target {:?} must be a relative .py path",
            case.meta.target
        )));
    }

    let file = case.before_file();
    let module = parse_module(&file)
        .map_err(|source| CorpusError::Parse { case: id.to_string(), source })?;
    let (difficulty, evidence) =
        classify_case(&file, &module, case.ground_truth_after.as_deref());
    if difficulty != case.meta.difficulty {
        return Err(CorpusError::Manifest(format!(
            "case {id}: recorded difficulty {} but classifier says {difficulty}",
            case.meta.difficulty
        )));
    }
    if evidence != case.meta.evidence {
        return Err(CorpusError::Manifest(format!(
            "case {id}: recorded evidence disagrees with classifier: {evidence:?}"
        )));
    }

    if let Some(after) = &case.ground_truth_after {
        let found: Vec<SignalKind> =
            detect::file_signals(&case.before, after, &case.meta.target)
                .iter()
                .map(|s| s.kind)
                .collect();
        if found != case.meta.signals {
            return Err(CorpusError::Manifest(format!(
                "case {id}: recorded signals {:?} but change fires {found:?}",
                case.meta.signals
            )));
        }
    }
    Ok(())
}

/// Loads the seeded faults and checks that every error category is
/// represented and every fault references an existing case.
pub fn load_faults(root: &Path) -> Result<Vec<SeededFault>, CorpusError> {
    let dir = root.join("faults");
    let manifest_path = dir.join("manifest.json");
    let text = fs::read_to_string(&manifest_path).map_err(|e| {
        CorpusError::Manifest(format!("cannot read {}: {e}", manifest_path.display()))
    })?;
    let entries: Vec<FaultEntry> = serde_json::from_str(&text)
        .map_err(|e| CorpusError::Manifest(format!("faults/manifest.json: {e}")))?;

    let mut faults = Vec::new();
    for entry in entries {
        if !root.join("cases").join(&entry.case).is_dir() {
            return Err(CorpusError::Manifest(format!(
                "fault {} references unknown case {}",
                entry.file, entry.case
            )));
        }
        let fault_text = fs::read_to_string(dir.join(&entry.file)).map_err(|e| {
            CorpusError::Manifest(format!("cannot read fault file {}: {e}", entry.file))
        })?;
        faults.push(SeededFault {
            case: entry.case,
            category: entry.category,
            file: entry.file,
            text: fault_text,
        });
    }
    for category in ErrorCategory::ALL {
        if !faults.iter().any(|f| f.category == category) {
            return Err(CorpusError::Manifest(format!(
                "no seeded fault covers {category}"
            )));
        }
    }
    Ok(faults)
}
