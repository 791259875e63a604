//! Rule-based migration of a unittest module to pytest.
//!
//! The entry point is [`migrate_module`]: parse, rewrite every `TestCase`
//! class, drop the runner guard, then settle imports by scanning the
//! rewritten body for which bindings actually survive. The output is the
//! original text with a minimal set of byte-span edits applied, so
//! untouched code keeps its exact formatting.

pub mod fixtures;
pub mod map;
pub mod rewrite;

use serde::{Deserialize, Serialize};

use crate::source_model::{
    parse_module, EditSet, ImportStatement, OtherKind, ParseFailure, SourceFile, TestModule,
};
use crate::text;

pub use map::{
    map_assertion, map_decorator, MapEntry, MappingTable, Residual, ResidualKind, Rewrite,
    RewriteKind, TableError,
};
pub use rewrite::{rewrite_class, ClassRewrite};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Style {
    /// Dissolve classes into module-level functions with named fixtures
    /// where that is safe; keep the class otherwise.
    Functions,
    /// Always keep classes, converting lifecycle hooks to autouse fixtures.
    Classes,
}

#[derive(Debug, Clone)]
pub struct MigrateOptions {
    pub style: Style,
    /// Render approximate-equality checks with `pytest.approx` instead of
    /// the literal `round()` translation.
    pub idiomatic_approx: bool,
}

impl Default for MigrateOptions {
    fn default() -> Self {
        MigrateOptions { style: Style::Functions, idiomatic_approx: false }
    }
}

#[derive(Debug, Default, Clone, Serialize, Deserialize)]
pub struct MigrationStats {
    pub classes_demoted: usize,
    pub classes_kept: usize,
    pub fixtures_created: usize,
    pub assertions_rewritten: usize,
    pub decorators_rewritten: usize,
    pub guards_removed: usize,
    pub imports_removed: usize,
    pub imports_added: usize,
}

#[derive(Debug, Clone)]
pub struct MigrationOutput {
    pub text: String,
    pub changed: bool,
    pub residuals: Vec<Residual>,
    pub stats: MigrationStats,
}

#[derive(Debug, thiserror::Error)]
pub enum MigrateError {
    #[error(transparent)]
    Parse(#[from] ParseFailure),
    #[error("internal rewrite error in {path}: {message}")]
    Internal { path: String, message: String },
    #[error("rewritten {path} no longer parses: {message}")]
    InvalidOutput { path: String, message: String },
}

pub fn migrate_module(
    file: &SourceFile,
    table: &MappingTable,
    opts: &MigrateOptions,
) -> Result<MigrationOutput, MigrateError> {
    let module = parse_module(file)?;
    let src = file.text();
    let path = file.path().display().to_string();
    let mut edits = EditSet::new();
    let mut residuals: Vec<Residual> = Vec::new();
    let mut stats = MigrationStats::default();
    let mut needs_pytest = false;
    let mut needs_re = false;

    for class in &module.classes {
        if !class.is_testcase {
            continue;
        }
        let rw = rewrite_class(src, &module, class, table, opts);
        for (s, e, t) in rw.edits {
            edits.replace_range(s, e, t);
        }
        residuals.extend(rw.residuals);
        needs_pytest |= rw.needs_pytest;
        needs_re |= rw.needs_re;
        stats.assertions_rewritten += rw.assertions_rewritten;
        stats.decorators_rewritten += rw.decorators_rewritten;
        stats.fixtures_created += rw.fixtures_created;
        if rw.demoted {
            stats.classes_demoted += 1;
        } else {
            stats.classes_kept += 1;
        }
    }

    for func in &module.functions {
        for dec in &func.decorators {
            match map_decorator(dec, src, &[]) {
                Some(Ok(rw)) => {
                    stats.decorators_rewritten += 1;
                    needs_pytest = true;
                    for (s, e, t) in rw.edits {
                        edits.replace_range(s, e, t);
                    }
                }
                Some(Err(residual)) => residuals.push(residual),
                None => {}
            }
        }
    }

    for region in &module.other {
        if region.kind == OtherKind::RunnerGuard {
            let (s, e) = rewrite::expand_deletion(src, region.span);
            edits.replace_range(s, e, "");
            stats.guards_removed += 1;
        }
    }

    if edits.is_empty() {
        return Ok(MigrationOutput { text: src.to_string(), changed: false, residuals, stats });
    }

    // Import decisions look at the module as it will be, not as it was:
    // apply the body edits over a copy with the import statements blanked
    // out, then scan that for surviving bindings.
    let intermediate = {
        let mut masked = String::from(src);
        for imp in &module.imports {
            let blank: String = src[imp.span.start..imp.span.end]
                .chars()
                .map(|c| if c == '\n' { "\n".to_string() } else { " ".repeat(c.len_utf8()) })
                .collect();
            masked.replace_range(imp.span.start..imp.span.end, &blank);
        }
        edits.apply(&masked).map_err(|e| MigrateError::Internal {
            path: path.clone(),
            message: format!("overlapping edits at bytes {}..{}", e.second_start, e.second_end),
        })?
    };
    for (s, e, t) in
        plan_import_edits(src, &module, &intermediate, needs_pytest, needs_re, &mut stats)
    {
        edits.replace_range(s, e, t);
    }

    let mut out = file.emit(&edits).map_err(|e| MigrateError::Internal {
        path: path.clone(),
        message: format!("overlapping edits at bytes {}..{}", e.second_start, e.second_end),
    })?;
    tidy_edges(&mut out, file.newline().as_str());

    let reparsed = SourceFile::new(file.path().to_path_buf(), out.clone());
    if let Err(failure) = parse_module(&reparsed) {
        return Err(MigrateError::InvalidOutput { path, message: failure.to_string() });
    }

    let changed = out != src;
    Ok(MigrationOutput { text: out, changed, residuals, stats })
}

/// Decide which unittest imports to prune and what to add, as edits in
/// original coordinates. `intermediate` is the rewritten body used for
/// binding liveness checks.
fn plan_import_edits(
    src: &str,
    module: &TestModule,
    intermediate: &str,
    needs_pytest: bool,
    needs_re: bool,
    stats: &mut MigrationStats,
) -> Vec<(usize, usize, String)> {
    let mut out: Vec<(usize, usize, String)> = Vec::new();
    let has_plain_mock_import = module
        .imports
        .iter()
        .any(|i| i.module.is_none() && i.names.iter().any(|n| n.name.starts_with("unittest.mock")));
    for imp in &module.imports {
        if let Some(m) = &imp.module {
            if m != "unittest" {
                continue;
            }
        } else if !imp
            .names
            .iter()
            .any(|n| n.name == "unittest" || n.name.starts_with("unittest."))
        {
            continue;
        }
        let mut kept: Vec<String> = Vec::new();
        let mut dropped = 0usize;
        for n in &imp.names {
            let rendered = match &n.alias {
                Some(a) => format!("{} as {}", n.name, a),
                None => n.name.clone(),
            };
            let unittest_name = imp.module.is_some()
                || n.name == "unittest"
                || n.name.starts_with("unittest.");
            // `unittest.mock` imports are never pruned: mock usage is out
            // of scope for the rewrite and must keep working.
            let keep = if !unittest_name {
                true
            } else if imp.module.is_none() && n.name.starts_with("unittest.mock") {
                true
            } else {
                let binding = match (&imp.module, &n.alias) {
                    (_, Some(a)) => a.clone(),
                    (None, None) => n.name.split('.').next().unwrap_or(&n.name).to_string(),
                    (Some(_), None) => n.name.clone(),
                };
                // A bare `import unittest` next to `import unittest.mock`
                // is redundant once only `unittest.mock.*` references
                // remain.
                if binding == "unittest" && n.alias.is_none() && has_plain_mock_import {
                    unittest_live_beyond_mock(intermediate)
                } else {
                    text::code_contains_token(intermediate, &binding)
                }
            };
            if keep {
                kept.push(rendered);
            } else {
                dropped += 1;
            }
        }
        if dropped == 0 {
            continue;
        }
        stats.imports_removed += dropped;
        if kept.is_empty() {
            let (s, e) = import_line_deletion(src, imp);
            out.push((s, e, String::new()));
        } else {
            let textual = match &imp.module {
                Some(m) => format!("from {} import {}", m, kept.join(", ")),
                None => format!("import {}", kept.join(", ")),
            };
            out.push((imp.span.start, imp.span.end, textual));
        }
    }

    let mut additions: Vec<&str> = Vec::new();
    if needs_re && !module.imports_module("re") {
        additions.push("import re");
    }
    if needs_pytest && !module.imports_module("pytest") {
        additions.push("import pytest");
    }
    if !additions.is_empty() {
        stats.imports_added += additions.len();
        let mut block: String = additions.iter().map(|a| format!("{}\n", a)).collect();
        let mut anchor = match module.imports.last() {
            Some(last) => text::line_end(src, last.span.end.saturating_sub(1)),
            None => match &module.docstring {
                Some(d) => {
                    block.insert(0, '\n');
                    text::line_end(src, d.end.saturating_sub(1))
                }
                None => {
                    block.push('\n');
                    0
                }
            },
        };
        for (s, e, t) in &out {
            if t.is_empty() && *s <= anchor && anchor < *e {
                anchor = *e;
            }
        }
        out.push((anchor, anchor, block));
    }
    out
}

/// True when a `unittest` token (outside strings and comments) reaches
/// anything other than `unittest.mock`.
fn unittest_live_beyond_mock(intermediate: &str) -> bool {
    let masked = text::mask_non_code(intermediate);
    let re = regex::Regex::new(r"\bunittest\b").unwrap();
    let live = re.find_iter(&masked).any(|m| !masked[m.end()..].starts_with(".mock"));
    live
}

/// Line range removing an import statement. When the line sits alone
/// between blank lines, one preceding blank line goes with it so the gap
/// does not double.
fn import_line_deletion(src: &str, imp: &ImportStatement) -> (usize, usize) {
    let start = text::line_start(src, imp.span.start);
    let end = text::line_end(src, imp.span.end.saturating_sub(1));
    let next_blank = {
        let rest = &src[end.min(src.len())..];
        rest.is_empty() || rest.lines().next().map(|l| l.trim().is_empty()).unwrap_or(true)
    };
    if start > 0 && next_blank {
        let prev_start = text::line_start(src, start - 1);
        if src[prev_start..start].trim().is_empty() {
            return (prev_start, end);
        }
    }
    (start, end)
}

/// Normalize the file's edges after editing: no leading blank lines, and
/// exactly one trailing newline.
fn tidy_edges(out: &mut String, nl: &str) {
    while out.starts_with(nl) {
        out.replace_range(0..nl.len(), "");
    }
    let trimmed = out.trim_end().len();
    out.truncate(trimmed);
    if !out.is_empty() {
        out.push_str(nl);
    }
}

/// Human-readable list of unittest leftovers in a migrated file: assertion
/// calls, lifecycle definitions, and live references to `unittest` or
/// `TestCase` (references reaching only `unittest.mock` are fine).
pub fn unittest_residue(textual: &str) -> Vec<String> {
    use regex::Regex;
    let masked = text::mask_non_code(textual);
    let line_of = |pos: usize| masked[..pos].matches('\n').count() + 1;
    let mut found: Vec<(usize, String)> = Vec::new();

    let simple: [(&str, &str); 3] = [
        (r"\bself\s*\.\s*assert[A-Za-z]*\s*\(", "unittest-style assertion call"),
        (
            r"\bdef\s+(setUp|tearDown|setUpClass|tearDownClass)\s*\(",
            "unittest lifecycle method",
        ),
        (r"\b(TestCase|IsolatedAsyncioTestCase)\b", "TestCase reference"),
    ];
    for (pattern, label) in simple {
        let re = Regex::new(pattern).unwrap();
        for m in re.find_iter(&masked) {
            found.push((m.start(), format!("line {}: {}", line_of(m.start()), label)));
        }
    }

    let re_unittest = Regex::new(r"\bunittest\b").unwrap();
    for m in re_unittest.find_iter(&masked) {
        if masked[m.end()..].starts_with(".mock") {
            continue;
        }
        let ls = text::line_start(&masked, m.start());
        let le = text::line_end(&masked, m.start());
        let line_text = masked[ls..le].trim();
        if let Some(names) = line_text.strip_prefix("from unittest import ") {
            if names
                .split(',')
                .all(|n| n.trim() == "mock" || n.trim().starts_with("mock as "))
            {
                continue;
            }
        }
        found.push((
            m.start(),
            format!("line {}: unittest reference", line_of(m.start())),
        ));
    }

    found.sort();
    found.dedup();
    found.into_iter().map(|(_, msg)| msg).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn migrate(src: &str, style: Style) -> MigrationOutput {
        let file = SourceFile::new(PathBuf::from("test_mod.py"), src);
        let table = MappingTable::builtin();
        let opts = MigrateOptions { style, idiomatic_approx: false };
        migrate_module(&file, &table, &opts).expect("migration")
    }

    const CART: &str = r#""""Cart tests."""

import unittest

from minishop.cart import Cart


class TestCart(unittest.TestCase):
    def setUp(self):
        self.cart = Cart()

    def tearDown(self):
        self.cart.clear()

    def test_add(self):
        self.cart.add("apple", 2)
        self.assertEqual(self.cart.count(), 2)

    def test_empty(self):
        self.assertTrue(self.cart.empty())


if __name__ == "__main__":
    unittest.main()
"#;

    #[test]
    fn demotes_to_functions() {
        let out = migrate(CART, Style::Functions);
        let expected = r#""""Cart tests."""

from minishop.cart import Cart
import pytest


@pytest.fixture
def cart():
    cart = Cart()
    yield cart
    cart.clear()


def test_add(cart):
    cart.add("apple", 2)
    assert cart.count() == 2


def test_empty(cart):
    assert cart.empty()
"#;
        assert_eq!(out.text, expected);
        assert!(out.changed);
        assert!(out.residuals.is_empty());
        assert_eq!(out.stats.classes_demoted, 1);
        assert_eq!(out.stats.fixtures_created, 1);
        assert_eq!(out.stats.assertions_rewritten, 2);
        assert_eq!(out.stats.guards_removed, 1);
        assert_eq!(out.stats.imports_removed, 1);
        assert_eq!(out.stats.imports_added, 1);
        assert!(unittest_residue(&out.text).is_empty());
    }

    #[test]
    fn keeps_class_with_state_fixture() {
        let out = migrate(CART, Style::Classes);
        let expected = r#""""Cart tests."""

from minishop.cart import Cart
import pytest


class TestCart:
    @pytest.fixture(autouse=True)
    def _setup(self):
        self.cart = Cart()
        yield
        self.cart.clear()

    def test_add(self):
        self.cart.add("apple", 2)
        assert self.cart.count() == 2

    def test_empty(self):
        assert self.cart.empty()
"#;
        assert_eq!(out.text, expected);
        assert_eq!(out.stats.classes_kept, 1);
        assert_eq!(out.stats.fixtures_created, 1);
        assert!(unittest_residue(&out.text).is_empty());
    }

    #[test]
    fn migration_is_idempotent() {
        for style in [Style::Functions, Style::Classes] {
            let once = migrate(CART, style);
            let twice = migrate(&once.text, style);
            assert!(!twice.changed, "second pass changed the output");
            assert_eq!(once.text, twice.text);
        }
    }

    #[test]
    fn non_unittest_module_is_untouched() {
        let src = "import os\n\n\ndef test_cwd(tmp_path):\n    assert os.path.isdir(tmp_path)\n";
        let out = migrate(src, Style::Functions);
        assert!(!out.changed);
        assert_eq!(out.text, src);
    }

    #[test]
    fn exception_result_renamed() {
        let src = r#"import unittest


class TestErrors(unittest.TestCase):
    def test_raises(self):
        with self.assertRaises(ValueError) as cm:
            int("x")
        self.assertIn("invalid literal", str(cm.exception))
"#;
        let out = migrate(src, Style::Functions);
        let expected = r#"import pytest


def test_raises():
    with pytest.raises(ValueError) as cm:
        int("x")
    assert "invalid literal" in str(cm.value)
"#;
        assert_eq!(out.text, expected);
    }

    #[test]
    fn helper_method_forces_kept_class() {
        let src = r#"import unittest


class TestTotals(unittest.TestCase):
    def setUp(self):
        self.values = [1, 2, 3]

    def total(self):
        return sum(self.values)

    def test_total(self):
        self.assertEqual(self.total(), 6)
"#;
        let out = migrate(src, Style::Functions);
        assert_eq!(out.stats.classes_demoted, 0);
        assert_eq!(out.stats.classes_kept, 1);
        assert!(out.text.contains("class TestTotals:"));
        assert!(out.text.contains("@pytest.fixture(autouse=True)"));
        assert!(out.text.contains("    def _setup(self):\n        self.values = [1, 2, 3]"));
        assert!(out.text.contains("assert self.total() == 6"));
        assert!(!out.text.contains("yield"));
        assert!(unittest_residue(&out.text).is_empty());
    }

    #[test]
    fn class_level_state_uses_request_cls() {
        let src = r#"import unittest


class TestPool(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.pool = {"size": 4}

    @classmethod
    def tearDownClass(cls):
        cls.pool.clear()

    def test_size(self):
        self.assertEqual(self.pool["size"], 4)
"#;
        let out = migrate(src, Style::Classes);
        assert!(out.text.contains("@pytest.fixture(scope=\"class\", autouse=True)"));
        assert!(out.text.contains("def _class_setup(self, request):"));
        assert!(out.text.contains("request.cls.pool = {\"size\": 4}"));
        assert!(out.text.contains("yield\n        request.cls.pool.clear()"));
        assert!(!out.text.contains("setUpClass"));
        assert!(unittest_residue(&out.text).is_empty());
    }

    #[test]
    fn testcase_api_flagged() {
        let src = r#"import unittest


class TestCleanup(unittest.TestCase):
    def test_cleanup(self):
        self.addCleanup(print, "done")
        self.assertTrue(True)
"#;
        let out = migrate(src, Style::Classes);
        assert!(out
            .residuals
            .iter()
            .any(|r| r.kind == ResidualKind::UnknownMethod && r.detail.contains("addCleanup")));
        assert!(out.text.contains("self.addCleanup"));
    }

    #[test]
    fn residue_scanner_reports_leftovers() {
        let clean = "import pytest\n\n\ndef test_x():\n    assert 1\n";
        assert!(unittest_residue(clean).is_empty());

        let mocky = "from unittest import mock\n\n\ndef test_x():\n    assert mock.Mock()\n";
        assert!(unittest_residue(mocky).is_empty());

        let dirty = "import unittest\n\n\nclass T(unittest.TestCase):\n    def setUp(self):\n        pass\n\n    def test_x(self):\n        self.assertTrue(1)\n";
        let residue = unittest_residue(dirty);
        assert!(residue.iter().any(|r| r.contains("assertion call")));
        assert!(residue.iter().any(|r| r.contains("lifecycle method")));
        assert!(residue.iter().any(|r| r.contains("TestCase reference")));
        assert!(residue.iter().any(|r| r.contains("unittest reference")));

        let in_string = "x = \"unittest.TestCase\"\n# unittest comment\n";
        assert!(unittest_residue(in_string).is_empty());
    }

    #[test]
    fn mock_import_survives() {
        let src = r#"import unittest
import unittest.mock


class TestMocked(unittest.TestCase):
    def test_patch(self):
        with unittest.mock.patch("os.getcwd", return_value="/"):
            self.assertTrue(True)
"#;
        let out = migrate(src, Style::Functions);
        assert!(out.text.contains("import unittest.mock"));
        assert!(out.text.contains("with unittest.mock.patch"));
        assert!(unittest_residue(&out.text).is_empty());
    }

    #[test]
    fn decorators_and_guard_handled() {
        let src = r#"import sys
import unittest


class TestPlatform(unittest.TestCase):
    @unittest.skipIf(sys.platform == "win32", "posix only")
    def test_sep(self):
        self.assertEqual("/", "/")


@unittest.skip("not ready")
def test_future():
    pass


if __name__ == "__main__":
    unittest.main()
"#;
        let out = migrate(src, Style::Functions);
        assert!(out
            .text
            .contains("@pytest.mark.skipif(sys.platform == \"win32\", reason=\"posix only\")"));
        assert!(out.text.contains("@pytest.mark.skip(reason=\"not ready\")"));
        assert!(!out.text.contains("__main__"));
        assert!(out.text.contains("import sys"));
        assert!(unittest_residue(&out.text).is_empty());
    }
}
