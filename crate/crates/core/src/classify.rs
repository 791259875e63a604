//! Labels a migration case Simple or Complex.
//!
//! A case is Complex when at least one evidence flag fires; otherwise it is
//! Simple. The flags are machine-checkable so a label can always be traced
//! back to the construct that caused it.

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::source_model::{BodyKind, LifecycleKind, SourceFile, TestClass, TestModule};
use crate::text::mask_non_code;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Difficulty {
    Simple,
    Complex,
}

impl std::fmt::Display for Difficulty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Difficulty::Simple => write!(f, "simple"),
            Difficulty::Complex => write!(f, "complex"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityEvidence {
    pub has_lifecycle: bool,
    pub uses_mocks: bool,
    pub is_async: bool,
    pub does_io_or_network: bool,
    pub assertion_logic_change: bool,
    pub fixture_needed: bool,
}

impl ComplexityEvidence {
    pub fn any(&self) -> bool {
        self.has_lifecycle
            || self.uses_mocks
            || self.is_async
            || self.does_io_or_network
            || self.assertion_logic_change
            || self.fixture_needed
    }
}

/// Identifiers whose call or attribute use marks a test as touching I/O or
/// the network. Dotted entries ("Path.read") match a `Path` token followed
/// by a `.read*(...)` call on the same expression.
pub const DEFAULT_IO_IDENTIFIERS: [&str; 8] = [
    "open",
    "socket",
    "subprocess",
    "requests",
    "urllib",
    "http",
    "Path.read",
    "Path.write",
];

pub fn classify_case(
    file: &SourceFile,
    module: &TestModule,
    ground_truth_after: Option<&str>,
) -> (Difficulty, ComplexityEvidence) {
    classify_case_with(file, module, ground_truth_after, &DEFAULT_IO_IDENTIFIERS)
}

pub fn classify_case_with(
    file: &SourceFile,
    module: &TestModule,
    ground_truth_after: Option<&str>,
    io_identifiers: &[&str],
) -> (Difficulty, ComplexityEvidence) {
    let testcases = || module.classes.iter().filter(|c| c.is_testcase);

    let evidence = ComplexityEvidence {
        has_lifecycle: testcases().any(|c| c.methods.iter().any(|m| m.lifecycle.is_some())),
        uses_mocks: module.imports_module("unittest.mock") || module.imports_module("mock"),
        is_async: module.functions.iter().any(|f| f.is_async && f.is_test())
            || testcases().any(|c| c.methods.iter().any(|m| m.is_async)),
        does_io_or_network: touches_io(file.text(), io_identifiers),
        assertion_logic_change: ground_truth_after
            .map(|after| operands_changed(file, module, after))
            .unwrap_or(false),
        fixture_needed: testcases().any(setup_state_consumed),
    };
    let difficulty = if evidence.any() {
        Difficulty::Complex
    } else {
        Difficulty::Simple
    };
    (difficulty, evidence)
}

/// True when some test consumes an attribute assigned in setUp/setUpClass.
fn setup_state_consumed(class: &TestClass) -> bool {
    let mut assigned = Vec::new();
    for m in &class.methods {
        if m.lifecycle == Some(LifecycleKind::SetUp) || m.lifecycle == Some(LifecycleKind::SetUpClass) {
            for stmt in &m.body {
                if let BodyKind::AttrAssign { attr, .. } = &stmt.kind {
                    assigned.push(attr.clone());
                }
            }
        }
    }
    class.methods.iter().filter(|m| m.is_test()).any(|m| {
        m.self_refs
            .iter()
            .any(|r| !r.is_store && assigned.iter().any(|a| a == &r.attr))
    })
}

fn touches_io(src: &str, identifiers: &[&str]) -> bool {
    let masked = mask_non_code(src);
    identifiers.iter().any(|ident| {
        let pattern = match ident.split_once('.') {
            None => format!(r"\b{}\s*[(.]", regex::escape(ident)),
            Some((head, tail)) => format!(
                r#"\b{}\b[\w()\[\]"'. ]*\.{}\w*\s*\("#,
                regex::escape(head),
                regex::escape(tail)
            ),
        };
        Regex::new(&pattern).expect("io identifier pattern").is_match(&masked)
    })
}

/// Approximation of "adjustments to assertion logic": an assertion operand
/// from the before text that no longer occurs anywhere in the after text
/// counts as a logic change. The first two positional arguments are
/// compared; trailing message arguments are not operands. Texts are
/// whitespace-normalized and matched at word boundaries so `total()` is not
/// found inside `test_total():`.
///
/// Two mechanical renames are tolerated: dropping `self.` prefixes
/// (demoting a class renames `self.cart` to a `cart` parameter) and
/// `.exception` to `.value` (the raises context manager exposes the caught
/// exception under a different attribute).
fn operands_changed(file: &SourceFile, module: &TestModule, after: &str) -> bool {
    let self_prefix = Regex::new(r"\bself\.").expect("self prefix pattern");
    let exception_attr = Regex::new(r"\.exception\b").expect("exception attr pattern");
    let after_norm = normalize_ws(after);
    module.find_assertions().iter().any(|call| {
        call.args.iter().take(2).any(|arg| {
            let operand = normalize_ws(&file.text()[arg.span.start..arg.span.end]);
            if operand.is_empty() {
                return false;
            }
            let mut candidates = vec![operand];
            let demoted = self_prefix.replace_all(&candidates[0], "").into_owned();
            if !candidates.contains(&demoted) {
                candidates.push(demoted);
            }
            for i in 0..2.min(candidates.len()) {
                let renamed = exception_attr.replace_all(&candidates[i], ".value").into_owned();
                if !candidates.contains(&renamed) {
                    candidates.push(renamed);
                }
            }
            !candidates.iter().any(|c| operand_pattern(c).is_match(&after_norm))
        })
    })
}

fn is_word(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Collapse whitespace runs to one space, and drop them entirely when either
/// neighbour is punctuation, so `a  ==  b` and `a == b` normalize alike.
fn normalize_ws(s: &str) -> String {
    let chars: Vec<char> = s.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            let mut j = i;
            while j < chars.len() && chars[j].is_whitespace() {
                j += 1;
            }
            if let (Some(p), Some(n)) = (out.chars().last(), chars.get(j)) {
                if is_word(p) && is_word(*n) {
                    out.push(' ');
                }
            }
            i = j;
        } else {
            out.push(chars[i]);
            i += 1;
        }
    }
    out
}

fn operand_pattern(operand: &str) -> Regex {
    let mut pat = String::new();
    if operand.chars().next().map(is_word).unwrap_or(false) {
        pat.push_str(r"\b");
    }
    pat.push_str(&regex::escape(operand));
    if operand.chars().last().map(is_word).unwrap_or(false) {
        pat.push_str(r"\b");
    }
    Regex::new(&pat).expect("operand pattern")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source_model::parse_module;

    fn classify(src: &str, after: Option<&str>) -> (Difficulty, ComplexityEvidence) {
        let file = SourceFile::new("case.py", src.to_string());
        let module = parse_module(&file).unwrap();
        classify_case(&file, &module, after)
    }

    #[test]
    fn plain_assertions_are_simple() {
        let src = "\
import unittest

class TestMath(unittest.TestCase):
    def test_add(self):
        self.assertEqual(1 + 1, 2)
";
        let (d, e) = classify(src, None);
        assert_eq!(d, Difficulty::Simple);
        assert!(!e.any());
    }

    #[test]
    fn empty_module_is_simple() {
        let (d, e) = classify("", None);
        assert_eq!(d, Difficulty::Simple);
        assert!(!e.any());
    }

    #[test]
    fn setup_consumed_by_test_is_complex() {
        let src = "\
import unittest

class TestCart(unittest.TestCase):
    def setUp(self):
        self.cart = []

    def test_empty(self):
        self.assertEqual(self.cart, [])
";
        let (d, e) = classify(src, None);
        assert_eq!(d, Difficulty::Complex);
        assert!(e.has_lifecycle);
        assert!(e.fixture_needed);
        assert!(!e.uses_mocks);
    }

    #[test]
    fn lifecycle_without_consumed_state_still_flags() {
        let src = "\
import unittest

class TestSeed(unittest.TestCase):
    def setUp(self):
        reset_registry()

    def test_empty(self):
        self.assertTrue(registry_empty())
";
        let (_, e) = classify(src, None);
        assert!(e.has_lifecycle);
        assert!(!e.fixture_needed);
    }

    #[test]
    fn mock_imports_flag() {
        for imp in ["from unittest import mock", "from unittest.mock import patch", "import mock"] {
            let src = format!(
                "import unittest\n{}\n\nclass TestX(unittest.TestCase):\n    def test_x(self):\n        self.assertTrue(True)\n",
                imp
            );
            let (d, e) = classify(&src, None);
            assert_eq!(d, Difficulty::Complex, "{}", imp);
            assert!(e.uses_mocks, "{}", imp);
        }
    }

    #[test]
    fn async_tests_flag() {
        let src = "\
import unittest

class TestFetch(unittest.IsolatedAsyncioTestCase):
    async def test_fetch(self):
        self.assertTrue(True)
";
        let (_, e) = classify(src, None);
        assert!(e.is_async);
    }

    #[test]
    fn io_identifiers_flag() {
        let open_call = "\
import unittest

class TestDump(unittest.TestCase):
    def test_dump(self):
        with open(\"out.txt\") as fh:
            self.assertEqual(fh.read(), \"\")
";
        let (_, e) = classify(open_call, None);
        assert!(e.does_io_or_network);

        let path_call = "\
import unittest
from pathlib import Path

class TestDump(unittest.TestCase):
    def test_dump(self):
        self.assertEqual(Path(\"out.txt\").read_text(), \"\")
";
        let (_, e) = classify(path_call, None);
        assert!(e.does_io_or_network);

        let mention_only = "\
import unittest

class TestDoc(unittest.TestCase):
    def test_doc(self):
        self.assertIn(\"open\", \"reopened\")
";
        let (_, e) = classify(mention_only, None);
        assert!(!e.does_io_or_network, "identifier inside a string literal");
    }

    #[test]
    fn operand_change_needs_ground_truth() {
        let src = "\
import unittest

class TestTotal(unittest.TestCase):
    def test_total(self):
        self.assertEqual(total(), 6)
";
        let preserved = "def test_total():\n    assert total() == 6\n";
        let (d, e) = classify(src, Some(preserved));
        assert_eq!(d, Difficulty::Simple);
        assert!(!e.assertion_logic_change);

        let reshaped = "def test_total():\n    assert total == 6\n";
        let (d, e) = classify(src, Some(reshaped));
        assert_eq!(d, Difficulty::Complex);
        assert!(e.assertion_logic_change);

        let (_, e) = classify(src, None);
        assert!(!e.assertion_logic_change, "no after, no flag");
    }

    #[test]
    fn demoted_self_attributes_are_not_logic_changes() {
        let src = "\
import unittest

class TestCart(unittest.TestCase):
    def setUp(self):
        self.cart = make_cart()

    def test_total(self):
        self.assertEqual(self.cart.total(), 6)
";
        let demoted = "\
import pytest

@pytest.fixture
def cart():
    return make_cart()

def test_total(cart):
    assert cart.total() == 6
";
        let (_, e) = classify(src, Some(demoted));
        assert!(!e.assertion_logic_change);

        let reshaped = "def test_total(cart):\n    assert cart.total() == 7\n";
        let (_, e) = classify(src, Some(reshaped));
        assert!(e.assertion_logic_change);
    }

    #[test]
    fn raises_context_attribute_rename_is_not_a_logic_change() {
        let src = "\
import unittest

class TestErrors(unittest.TestCase):
    def test_message(self):
        with self.assertRaises(ValueError) as caught:
            explode()
        self.assertIn(\"boom\", str(caught.exception))
";
        let renamed = "\
def test_message():
    with pytest.raises(ValueError) as caught:
        explode()
    assert \"boom\" in str(caught.value)
";
        let (_, e) = classify(src, Some(renamed));
        assert!(!e.assertion_logic_change);

        let reshaped = "\
def test_message():
    with pytest.raises(ValueError) as caught:
        explode()
    assert \"bang\" in str(caught.value)
";
        let (_, e) = classify(src, Some(reshaped));
        assert!(e.assertion_logic_change);
    }
}
