//! Finds unittest-to-pytest migration commits in git history.
//!
//! Detection is line-based over unified diffs: five removed/added pattern
//! pairs, each matched against a diff line after stripping its leading
//! whitespace, anchored at the start of the stripped text. A commit is a
//! migration commit when at least one rule fires in some changed file.
//! Commits touching more than [`MAX_FILES_CHANGED`] files are still
//! reported but flagged ineligible for isolated extraction.

use std::collections::BTreeSet;
use std::io::{self, Write};
use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use similar::{ChangeTag, TextDiff};

use crate::source_model::{parse_module, ParseFailure, SourceFile, SourceSpan};

/// Commits changing more than this many files are kept out of isolated
/// extraction; bulk rewrites are too noisy to mine mechanically.
pub const MAX_FILES_CHANGED: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignalKind {
    AssertMigration,
    FixtureMigration,
    ImportMigration,
    SkipMigration,
    ExpectedFailureMigration,
}

impl SignalKind {
    /// All rules, in rule order. Reports list signals in this order.
    pub const ALL: [SignalKind; 5] = [
        SignalKind::AssertMigration,
        SignalKind::FixtureMigration,
        SignalKind::ImportMigration,
        SignalKind::SkipMigration,
        SignalKind::ExpectedFailureMigration,
    ];

    fn index(self) -> usize {
        SignalKind::ALL.iter().position(|k| *k == self).unwrap()
    }

    /// Pattern for the unittest side of this rule, applied to a removed
    /// line after the leading whitespace strip.
    pub fn removed_pattern(self) -> &'static Regex {
        static PATTERNS: OnceLock<Vec<Regex>> = OnceLock::new();
        &PATTERNS.get_or_init(|| {
            [
                r"^self\.assert[A-Za-z]*\(",
                r"^def (setUp|tearDown|setUpClass|tearDownClass)\(",
                r"^(import unittest|from unittest)",
                r"^@unittest\.skip(If|Unless)?\b",
                r"^@unittest\.expectedFailure",
            ]
            .iter()
            .map(|p| Regex::new(p).expect("removed pattern"))
            .collect()
        })[self.index()]
    }

    /// Pattern for the pytest side of this rule, applied to an added line
    /// after the leading whitespace strip.
    pub fn added_pattern(self) -> &'static Regex {
        static PATTERNS: OnceLock<Vec<Regex>> = OnceLock::new();
        &PATTERNS.get_or_init(|| {
            [
                r"^assert\b",
                r"^@pytest\.fixture",
                r"^import pytest",
                r"^@pytest\.mark\.skip(if)?\b",
                r"^@pytest\.mark\.xfail",
            ]
            .iter()
            .map(|p| Regex::new(p).expect("added pattern"))
            .collect()
        })[self.index()]
    }
}

impl std::fmt::Display for SignalKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SignalKind::AssertMigration => "assert_migration",
            SignalKind::FixtureMigration => "fixture_migration",
            SignalKind::ImportMigration => "import_migration",
            SignalKind::SkipMigration => "skip_migration",
            SignalKind::ExpectedFailureMigration => "expected_failure_migration",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineKind {
    Added,
    Removed,
}

/// One changed line from a unified diff, without its +/- marker. Added
/// lines carry new-file line numbers, removed lines old-file numbers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiffLine {
    pub kind: LineKind,
    pub text: String,
    pub file: String,
    pub line: usize,
}

/// All changed lines of one commit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CommitDiff {
    pub commit: String,
    pub author_date: String,
    pub files_changed: usize,
    pub lines: Vec<DiffLine>,
}

/// One fired rule with the first removed/added line pair that fired it.
/// `file` and `line` locate the added evidence line.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MigrationSignal {
    pub kind: SignalKind,
    pub removed: String,
    pub added: String,
    pub file: String,
    pub line: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MigrationCommitReport {
    pub commit: String,
    pub signals: Vec<MigrationSignal>,
    pub files_changed: usize,
    pub eligible: bool,
}

impl MigrationCommitReport {
    pub fn is_migration(&self) -> bool {
        !self.signals.is_empty()
    }
}

/// A per-file migration candidate cut out of a commit.
#[derive(Debug, Clone)]
pub struct IsolatedMigration {
    pub file: String,
    pub before_snippet: String,
    pub before_span: SourceSpan,
    pub after_snippet: String,
    pub after_span: SourceSpan,
    pub signals: Vec<MigrationSignal>,
    /// True when the changed region contains lines that are not part of
    /// the migration vocabulary; such candidates need manual review.
    pub tangled: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum DetectError {
    #[error("repository error: {0}")]
    Repo(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Parse(#[from] ParseFailure),
}

fn stripped(line: &str) -> &str {
    line.trim_start()
}

/// Applies the five rules to one commit diff. Rules are evaluated
/// independently, per file: a rule fires when one file both removes a line
/// matching its unittest pattern and adds a line matching its pytest
/// pattern. The report cites the first such pair in diff order.
pub fn scan_diff(diff: &CommitDiff) -> MigrationCommitReport {
    scan_diff_with(diff, MAX_FILES_CHANGED)
}

pub fn scan_diff_with(diff: &CommitDiff, max_files_changed: usize) -> MigrationCommitReport {
    let mut files: Vec<&str> = Vec::new();
    for line in &diff.lines {
        if !files.contains(&line.file.as_str()) {
            files.push(&line.file);
        }
    }
    let mut signals = Vec::new();
    for kind in SignalKind::ALL {
        let fired = files.iter().find_map(|file| {
            let removed = diff.lines.iter().find(|l| {
                l.kind == LineKind::Removed
                    && l.file == *file
                    && kind.removed_pattern().is_match(stripped(&l.text))
            })?;
            let added = diff.lines.iter().find(|l| {
                l.kind == LineKind::Added
                    && l.file == *file
                    && kind.added_pattern().is_match(stripped(&l.text))
            })?;
            Some(MigrationSignal {
                kind,
                removed: stripped(&removed.text).to_string(),
                added: stripped(&added.text).to_string(),
                file: file.to_string(),
                line: added.line,
            })
        });
        signals.extend(fired);
    }
    MigrationCommitReport {
        commit: diff.commit.clone(),
        signals,
        files_changed: diff.files_changed,
        eligible: diff.files_changed <= max_files_changed,
    }
}

/// Parses standard unified-diff text into changed lines. Hunk headers give
/// the line numbering; `files_changed` counts the distinct paths that have
/// changed lines.
pub fn parse_unified_diff(commit: &str, author_date: &str, text: &str) -> CommitDiff {
    let mut lines = Vec::new();
    let mut old_path = String::new();
    let mut new_path = String::new();
    let mut old_line = 0usize;
    let mut new_line = 0usize;
    for raw in text.lines() {
        if let Some(rest) = raw.strip_prefix("--- ") {
            old_path = clean_diff_path(rest);
        } else if let Some(rest) = raw.strip_prefix("+++ ") {
            new_path = clean_diff_path(rest);
        } else if let Some(rest) = raw.strip_prefix("@@") {
            if let Some((o, n)) = parse_hunk_header(rest) {
                old_line = o;
                new_line = n;
            }
        } else if raw.starts_with("+") {
            lines.push(DiffLine {
                kind: LineKind::Added,
                text: raw[1..].to_string(),
                file: pick_path(&new_path, &old_path),
                line: new_line,
            });
            new_line += 1;
        } else if raw.starts_with("-") {
            lines.push(DiffLine {
                kind: LineKind::Removed,
                text: raw[1..].to_string(),
                file: pick_path(&new_path, &old_path),
                line: old_line,
            });
            old_line += 1;
        } else if raw.starts_with("\\") {
            // "\ No newline at end of file"
        } else {
            old_line += 1;
            new_line += 1;
        }
    }
    let files: BTreeSet<&str> = lines.iter().map(|l| l.file.as_str()).collect();
    CommitDiff {
        commit: commit.to_string(),
        author_date: author_date.to_string(),
        files_changed: files.len(),
        lines,
    }
}

fn clean_diff_path(rest: &str) -> String {
    let path = rest.split('\t').next().unwrap_or(rest);
    for prefix in ["a/", "b/"] {
        if let Some(p) = path.strip_prefix(prefix) {
            return p.to_string();
        }
    }
    path.to_string()
}

fn pick_path(new_path: &str, old_path: &str) -> String {
    if new_path.is_empty() || new_path == "/dev/null" {
        old_path.to_string()
    } else {
        new_path.to_string()
    }
}

/// Parses " -12,3 +14,2 @@ ..." into the two starting line numbers. A
/// zero-length side ("-12,0") starts at the line after the header number.
fn parse_hunk_header(rest: &str) -> Option<(usize, usize)> {
    let mut old_start = None;
    let mut new_start = None;
    for field in rest.split_whitespace() {
        let (sign, nums) = match field.split_at_checked(1)? {
            ("-", nums) => ('-', nums),
            ("+", nums) => ('+', nums),
            _ => continue,
        };
        let mut parts = nums.split(',');
        let start: usize = parts.next()?.parse().ok()?;
        let count: usize = match parts.next() {
            Some(c) => c.parse().ok()?,
            None => 1,
        };
        let effective = if count == 0 { start + 1 } else { start };
        match sign {
            '-' => old_start = Some(effective),
            _ => new_start = Some(effective),
        }
        if old_start.is_some() && new_start.is_some() {
            break;
        }
    }
    Some((old_start?, new_start?))
}

fn run_git(repo: &Path, args: &[&str]) -> Result<String, DetectError> {
    let output = Command::new("git")
        .arg("-C")
        .arg(repo)
        .args(args)
        .output()
        .map_err(|e| DetectError::Repo(format!("failed to run git: {e}")))?;
    if !output.status.success() {
        return Err(DetectError::Repo(format!(
            "git {} failed: {}",
            args.first().unwrap_or(&""),
            String::from_utf8_lossy(&output.stderr).trim()
        )));
    }
    Ok(String::from_utf8_lossy(&output.stdout).into_owned())
}

/// Walks the repository history oldest-first and reports every commit
/// where at least one rule fires. Commits changing more than
/// `max_files_changed` files keep their report but are not eligible for
/// isolated extraction.
pub fn scan_history(
    repo: &Path,
    max_files_changed: usize,
) -> Result<Vec<MigrationCommitReport>, DetectError> {
    if run_git(repo, &["rev-parse", "--verify", "HEAD"]).is_err() {
        // No commits yet (or not a repo at all; let rev-parse decide).
        run_git(repo, &["rev-parse", "--git-dir"])?;
        return Ok(Vec::new());
    }
    let list = run_git(repo, &["rev-list", "--reverse", "HEAD"])?;
    let mut reports = Vec::new();
    for sha in list.split_whitespace() {
        let date = run_git(repo, &["show", "-s", "--format=%aI", sha])?;
        let patch = run_git(
            repo,
            &["show", sha, "--format=", "--unified=0", "--no-color", "--no-renames"],
        )?;
        let diff = parse_unified_diff(sha, date.trim(), &patch);
        let report = scan_diff_with(&diff, max_files_changed);
        if report.is_migration() {
            reports.push(report);
        }
    }
    Ok(reports)
}

/// Cuts the changed region of one signaled file into a migration
/// candidate. The candidate is tangled unless every removed line matches
/// some rule's unittest pattern (or is blank/comment) and every added line
/// matches some rule's pytest pattern, a plain `assert`, a fixture body,
/// or is blank/comment.
pub fn extract_isolated(
    report: &MigrationCommitReport,
    before_file: &SourceFile,
    after_file: &SourceFile,
) -> Result<Vec<IsolatedMigration>, DetectError> {
    parse_module(before_file)?;
    parse_module(after_file)?;

    let file = after_file.path().display().to_string();
    let lines = changed_lines(before_file.text(), after_file.text(), &file);
    if lines.is_empty() {
        return Ok(Vec::new());
    }

    let file_diff = CommitDiff {
        commit: report.commit.clone(),
        author_date: String::new(),
        files_changed: 1,
        lines: lines.clone(),
    };
    let signals = scan_diff(&file_diff).signals;
    if signals.is_empty() {
        return Ok(Vec::new());
    }

    let removed: Vec<&DiffLine> =
        lines.iter().filter(|l| l.kind == LineKind::Removed).collect();
    let added: Vec<&DiffLine> = lines.iter().filter(|l| l.kind == LineKind::Added).collect();

    let removed_ok = removed.iter().all(|l| {
        let s = stripped(&l.text);
        s.is_empty()
            || s.starts_with('#')
            || SignalKind::ALL.iter().any(|k| k.removed_pattern().is_match(s))
    });
    let fixture_body = fixture_body_lines(&added);
    let added_ok = added.iter().all(|l| {
        let s = stripped(&l.text);
        s.is_empty()
            || s.starts_with('#')
            || SignalKind::ALL.iter().any(|k| k.added_pattern().is_match(s))
            || fixture_body.contains(&l.line)
    });

    Ok(vec![IsolatedMigration {
        file,
        before_snippet: region_text(before_file.text(), &removed),
        before_span: region_span(before_file, &removed),
        after_snippet: region_text(after_file.text(), &added),
        after_span: region_span(after_file, &added),
        signals,
        tangled: !(removed_ok && added_ok),
    }])
}

/// Changed lines between two versions of one file, in the same shape the
/// unified-diff parser produces.
fn changed_lines(before_text: &str, after_text: &str, file: &str) -> Vec<DiffLine> {
    let diff = TextDiff::from_lines(before_text, after_text);
    let mut lines = Vec::new();
    for change in diff.iter_all_changes() {
        let (kind, line) = match change.tag() {
            ChangeTag::Delete => (LineKind::Removed, change.old_index().unwrap() + 1),
            ChangeTag::Insert => (LineKind::Added, change.new_index().unwrap() + 1),
            ChangeTag::Equal => continue,
        };
        lines.push(DiffLine {
            kind,
            text: change.value().trim_end_matches('\n').to_string(),
            file: file.to_string(),
            line,
        });
    }
    lines
}

/// Signals fired by the change from one version of a file to another.
pub fn file_signals(before_text: &str, after_text: &str, file: &str) -> Vec<MigrationSignal> {
    let lines = changed_lines(before_text, after_text, file);
    let diff = CommitDiff {
        commit: String::new(),
        author_date: String::new(),
        files_changed: 1,
        lines,
    };
    scan_diff(&diff).signals
}

/// Line numbers of added lines that sit inside an added fixture
/// definition: the `def` line after an added `@pytest.fixture` decorator
/// plus every following added line indented deeper than that `def`.
fn fixture_body_lines(added: &[&DiffLine]) -> BTreeSet<usize> {
    let mut body = BTreeSet::new();
    let mut i = 0;
    while i < added.len() {
        let s = stripped(&added[i].text);
        if !s.starts_with("@pytest.fixture") {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        // Allow stacked decorators between the fixture marker and the def.
        while j < added.len() && stripped(&added[j].text).starts_with('@') {
            body.insert(added[j].line);
            j += 1;
        }
        if j < added.len() && stripped(&added[j].text).starts_with("def ") {
            let def_indent = indent_width(&added[j].text);
            body.insert(added[j].line);
            j += 1;
            while j < added.len() {
                let text = &added[j].text;
                let blank = stripped(text).is_empty();
                if !blank && indent_width(text) <= def_indent {
                    break;
                }
                body.insert(added[j].line);
                j += 1;
            }
        }
        i = j;
    }
    body
}

fn indent_width(line: &str) -> usize {
    line.len() - line.trim_start().len()
}

/// Byte span covering the first through last cited line, or an empty span
/// at the file start when no lines are cited.
fn region_span(file: &SourceFile, cited: &[&DiffLine]) -> SourceSpan {
    let first = cited.iter().map(|l| l.line).min();
    let last = cited.iter().map(|l| l.line).max();
    let (first, last) = match (first, last) {
        (Some(f), Some(l)) => (f, l),
        _ => return file.span(0, 0),
    };
    let offsets = line_offsets(file.text());
    let start = offsets[first - 1].0;
    let end = offsets[last - 1].1;
    file.span(start, end)
}

fn region_text(text: &str, cited: &[&DiffLine]) -> String {
    let first = cited.iter().map(|l| l.line).min();
    let last = cited.iter().map(|l| l.line).max();
    match (first, last) {
        (Some(f), Some(l)) => {
            let offsets = line_offsets(text);
            text[offsets[f - 1].0..offsets[l - 1].1].to_string()
        }
        _ => String::new(),
    }
}

/// (start, end) byte offsets of each line, end excluding the newline.
fn line_offsets(text: &str) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, b) in text.bytes().enumerate() {
        if b == b'\n' {
            let end = if i > start && text.as_bytes()[i - 1] == b'\r' { i - 1 } else { i };
            out.push((start, end));
            start = i + 1;
        }
    }
    if start < text.len() {
        out.push((start, text.len()));
    }
    out
}

/// Serializes reports as JSONL, one report per line.
pub fn write_reports<W: Write>(reports: &[MigrationCommitReport], mut w: W) -> io::Result<()> {
    for report in reports {
        serde_json::to_writer(&mut w, report)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diff(lines: Vec<(LineKind, &str, &str, usize)>) -> CommitDiff {
        let files: BTreeSet<&str> = lines.iter().map(|l| l.1).collect();
        CommitDiff {
            commit: "0000000".into(),
            author_date: "2024-01-01T00:00:00Z".into(),
            files_changed: files.len(),
            lines: lines
                .into_iter()
                .map(|(kind, file, text, line)| DiffLine {
                    kind,
                    text: text.to_string(),
                    file: file.to_string(),
                    line,
                })
                .collect(),
        }
    }

    fn kinds(report: &MigrationCommitReport) -> Vec<SignalKind> {
        report.signals.iter().map(|s| s.kind).collect()
    }

    #[test]
    fn assert_rule_fires_on_pairs() {
        let d = diff(vec![
            (LineKind::Removed, "tests/test_a.py", "        self.assertEqual(a, b)", 10),
            (LineKind::Added, "tests/test_a.py", "    assert a == b", 9),
        ]);
        let report = scan_diff(&d);
        assert_eq!(kinds(&report), vec![SignalKind::AssertMigration]);
        let s = &report.signals[0];
        assert_eq!(s.removed, "self.assertEqual(a, b)");
        assert_eq!(s.added, "assert a == b");
        assert_eq!(s.line, 9);
        assert!(report.eligible);
    }

    #[test]
    fn empty_diff_is_not_a_migration() {
        let report = scan_diff(&diff(vec![]));
        assert!(!report.is_migration());
        assert!(report.signals.is_empty());
    }

    #[test]
    fn each_rule_fires_alone() {
        let table: Vec<(&str, &str, SignalKind)> = vec![
            ("self.assertTrue(x)", "assert x", SignalKind::AssertMigration),
            ("def setUp(self):", "@pytest.fixture", SignalKind::FixtureMigration),
            ("import unittest", "import pytest", SignalKind::ImportMigration),
            ("@unittest.skipIf(cond, \"r\")", "@pytest.mark.skipif(cond, reason=\"r\")", SignalKind::SkipMigration),
            ("@unittest.expectedFailure", "@pytest.mark.xfail", SignalKind::ExpectedFailureMigration),
        ];
        for (removed, added, kind) in table {
            let d = diff(vec![
                (LineKind::Removed, "t.py", removed, 1),
                (LineKind::Added, "t.py", added, 1),
            ]);
            assert_eq!(kinds(&scan_diff(&d)), vec![kind], "rule for {removed:?}");
        }
    }

    #[test]
    fn rules_fire_independently_and_in_rule_order() {
        let mut lines = vec![
            (LineKind::Removed, "t.py", "import unittest", 1),
            (LineKind::Added, "t.py", "import pytest", 1),
            (LineKind::Removed, "t.py", "@unittest.expectedFailure", 4),
            (LineKind::Added, "t.py", "@pytest.mark.xfail", 4),
            (LineKind::Removed, "t.py", "def setUp(self):", 6),
            (LineKind::Added, "t.py", "@pytest.fixture", 6),
            (LineKind::Removed, "t.py", "self.assertIn(a, b)", 9),
            (LineKind::Added, "t.py", "assert a in b", 9),
            (LineKind::Removed, "t.py", "@unittest.skip(\"slow\")", 12),
            (LineKind::Added, "t.py", "@pytest.mark.skip(reason=\"slow\")", 12),
        ];
        let report = scan_diff(&diff(lines.clone()));
        assert_eq!(kinds(&report), SignalKind::ALL.to_vec());

        // Dropping one rule's evidence drops exactly that signal.
        lines.retain(|l| !l.2.contains("skip"));
        let report = scan_diff(&diff(lines));
        assert_eq!(
            kinds(&report),
            vec![
                SignalKind::AssertMigration,
                SignalKind::FixtureMigration,
                SignalKind::ImportMigration,
                SignalKind::ExpectedFailureMigration,
            ]
        );
    }

    #[test]
    fn extra_lines_never_remove_signals() {
        let base = vec![
            (LineKind::Removed, "t.py", "self.assertTrue(x)", 3),
            (LineKind::Added, "t.py", "assert x", 3),
        ];
        let before = kinds(&scan_diff(&diff(base.clone())));
        let mut grown = base;
        grown.push((LineKind::Added, "t.py", "value = compute()", 8));
        grown.push((LineKind::Removed, "other.py", "print(x)", 1));
        let after = kinds(&scan_diff(&diff(grown)));
        assert!(before.iter().all(|k| after.contains(k)));
    }

    #[test]
    fn rule_needs_both_sides_in_one_file() {
        let d = diff(vec![
            (LineKind::Removed, "a.py", "self.assertTrue(x)", 1),
            (LineKind::Added, "b.py", "assert x", 1),
        ]);
        assert!(!scan_diff(&d).is_migration());
    }

    #[test]
    fn patterns_anchor_at_statement_head() {
        let d = diff(vec![
            (LineKind::Removed, "t.py", "        with self.assertRaises(ValueError):", 5),
            (LineKind::Added, "t.py", "        with pytest.raises(ValueError):", 5),
        ]);
        assert!(!scan_diff(&d).is_migration());

        let d = diff(vec![
            (LineKind::Removed, "t.py", "self.assertTrue(x)", 1),
            (LineKind::Added, "t.py", "value = 1  # assert later", 1),
        ]);
        assert!(!scan_diff(&d).is_migration());
    }

    #[test]
    fn five_file_boundary_is_exact() {
        let mk = |n: usize| {
            let mut lines = Vec::new();
            for i in 0..n {
                let file = format!("tests/test_{i}.py");
                lines.push(DiffLine {
                    kind: LineKind::Removed,
                    text: "self.assertTrue(x)".into(),
                    file: file.clone(),
                    line: 1,
                });
                lines.push(DiffLine {
                    kind: LineKind::Added,
                    text: "assert x".into(),
                    file,
                    line: 1,
                });
            }
            CommitDiff {
                commit: "0000000".into(),
                author_date: String::new(),
                files_changed: n,
                lines,
            }
        };
        assert!(scan_diff(&mk(5)).eligible);
        assert!(!scan_diff(&mk(6)).eligible);
    }

    #[test]
    fn unified_diff_parsing_tracks_numbers_and_files() {
        let text = "\
diff --git a/tests/test_a.py b/tests/test_a.py
--- a/tests/test_a.py
+++ b/tests/test_a.py
@@ -3,2 +3,1 @@ class TestA:
-import unittest
-import os
+import pytest
@@ -10,0 +11,1 @@ class TestA:
+assert x
diff --git a/tests/test_b.py b/tests/test_b.py
--- a/tests/test_b.py
+++ b/tests/test_b.py
@@ -1,1 +0,0 @@
-print(1)
";
        let d = parse_unified_diff("c1", "", text);
        assert_eq!(d.files_changed, 2);
        let added: Vec<(&str, usize)> = d
            .lines
            .iter()
            .filter(|l| l.kind == LineKind::Added)
            .map(|l| (l.text.as_str(), l.line))
            .collect();
        assert_eq!(added, vec![("import pytest", 3), ("assert x", 11)]);
        let removed: Vec<(&str, usize)> = d
            .lines
            .iter()
            .filter(|l| l.kind == LineKind::Removed)
            .map(|l| (l.text.as_str(), l.line))
            .collect();
        assert_eq!(removed, vec![("import unittest", 3), ("import os", 4), ("print(1)", 1)]);
    }

    #[test]
    fn clean_assert_swap_is_untangled() {
        let before = SourceFile::new(
            "tests/test_sums.py",
            "\
import unittest

class TestSums(unittest.TestCase):
    def test_add(self):
        self.assertEqual(1 + 1, 2)
        self.assertTrue(bool(1))
",
        );
        let after = SourceFile::new(
            "tests/test_sums.py",
            "\
import pytest

class TestSums(unittest.TestCase):
    def test_add(self):
        assert 1 + 1 == 2
        assert bool(1)
",
        );
        let report = MigrationCommitReport {
            commit: "c1".into(),
            signals: Vec::new(),
            files_changed: 1,
            eligible: true,
        };
        let found = extract_isolated(&report, &before, &after).unwrap();
        assert_eq!(found.len(), 1);
        let cand = &found[0];
        assert!(!cand.tangled, "pure swap should be clean: {cand:?}");
        assert!(kinds_of(cand).contains(&SignalKind::AssertMigration));
        assert!(kinds_of(cand).contains(&SignalKind::ImportMigration));
        assert!(cand.before_snippet.contains("self.assertEqual"));
        assert!(cand.after_snippet.contains("assert 1 + 1 == 2"));
    }

    fn kinds_of(c: &IsolatedMigration) -> Vec<SignalKind> {
        c.signals.iter().map(|s| s.kind).collect()
    }

    #[test]
    fn unrelated_rename_marks_candidate_tangled() {
        let before = SourceFile::new(
            "tests/test_sums.py",
            "\
import unittest

def helper_total(xs):
    return sum(xs)

class TestSums(unittest.TestCase):
    def test_add(self):
        self.assertEqual(helper_total([1]), 1)
",
        );
        let after = SourceFile::new(
            "tests/test_sums.py",
            "\
import pytest

def grand_total(xs):
    return sum(xs)

class TestSums(unittest.TestCase):
    def test_add(self):
        assert grand_total([1]) == 1
",
        );
        let report = MigrationCommitReport {
            commit: "c2".into(),
            signals: Vec::new(),
            files_changed: 1,
            eligible: true,
        };
        let found = extract_isolated(&report, &before, &after).unwrap();
        assert_eq!(found.len(), 1);
        assert!(found[0].tangled);
    }

    #[test]
    fn added_fixture_bodies_are_migration_vocabulary() {
        let before = SourceFile::new(
            "tests/test_cart.py",
            "\
import unittest

class TestCart(unittest.TestCase):
    def test_total(self):
        self.assertEqual(make_cart().total(), 6)
",
        );
        let after = SourceFile::new(
            "tests/test_cart.py",
            "\
import pytest

@pytest.fixture
def cart():
    return make_cart()

class TestCart(unittest.TestCase):
    def test_total(self):
        assert make_cart().total() == 6
",
        );
        let report = MigrationCommitReport {
            commit: "c3".into(),
            signals: Vec::new(),
            files_changed: 1,
            eligible: true,
        };
        let found = extract_isolated(&report, &before, &after).unwrap();
        assert_eq!(found.len(), 1);
        assert!(!found[0].tangled, "added fixture def and body are expected: {:?}", found[0]);
        assert!(kinds_of(&found[0]).contains(&SignalKind::AssertMigration));
    }

    #[test]
    fn setup_conversion_fires_rule_two_but_needs_review() {
        let before = SourceFile::new(
            "tests/test_cart.py",
            "\
import unittest

class TestCart(unittest.TestCase):
    def setUp(self):
        self.cart = make_cart()

    def test_total(self):
        self.assertEqual(self.cart.total(), 6)
",
        );
        let after = SourceFile::new(
            "tests/test_cart.py",
            "\
import pytest

class TestCart:
    @pytest.fixture(autouse=True)
    def _setup(self):
        self.cart = make_cart()

    def test_total(self):
        assert self.cart.total() == 6
",
        );
        let report = MigrationCommitReport {
            commit: "c3".into(),
            signals: Vec::new(),
            files_changed: 1,
            eligible: true,
        };
        let found = extract_isolated(&report, &before, &after).unwrap();
        assert_eq!(found.len(), 1);
        assert!(kinds_of(&found[0]).contains(&SignalKind::FixtureMigration));
        // The moved setUp body and reshaped class header leave the
        // vocabulary, so the candidate is routed to manual review.
        assert!(found[0].tangled);
    }

    #[test]
    fn identical_files_yield_no_candidates() {
        let f = SourceFile::new("t.py", "import unittest\n");
        let report = MigrationCommitReport {
            commit: "c4".into(),
            signals: Vec::new(),
            files_changed: 1,
            eligible: true,
        };
        assert!(extract_isolated(&report, &f, &f).unwrap().is_empty());
    }

    #[test]
    fn reports_serialize_one_per_line() {
        let d = diff(vec![
            (LineKind::Removed, "t.py", "import unittest", 1),
            (LineKind::Added, "t.py", "import pytest", 1),
        ]);
        let reports = vec![scan_diff(&d), scan_diff(&d)];
        let mut buf = Vec::new();
        write_reports(&reports, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        let value: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(value["commit"], "0000000");
        assert_eq!(value["signals"][0]["kind"], "import_migration");
        assert_eq!(value["files_changed"], 1);
        assert_eq!(value["eligible"], true);
    }
}
