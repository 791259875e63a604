//! Builds a deterministic git repository with planted migration commits,
//! one per detection rule, plus a six-file bulk conversion and ordinary
//! noise commits. The returned manifest is the oracle for detection
//! tests; author, committer, and dates are pinned so two builds produce
//! byte-identical histories.

use std::fs;
use std::io;
use std::path::Path;
use std::process::Command;

use serde::{Deserialize, Serialize};

use super::CorpusError;
use crate::detect::SignalKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommitRole {
    /// Planted migration commit, eligible for isolated extraction.
    Migration,
    /// Planted migration touching more than the file limit.
    BulkMigration,
    /// Ordinary development work; fires no rule.
    Noise,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedCommit {
    pub subject: String,
    pub role: CommitRole,
    pub signals: Vec<SignalKind>,
    pub files_changed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepoManifest {
    pub commits: Vec<PlantedCommit>,
}

impl RepoManifest {
    pub fn migrations(&self) -> impl Iterator<Item = &PlantedCommit> {
        self.commits.iter().filter(|c| c.role == CommitRole::Migration)
    }

    pub fn bulk(&self) -> impl Iterator<Item = &PlantedCommit> {
        self.commits.iter().filter(|c| c.role == CommitRole::BulkMigration)
    }

    pub fn noise(&self) -> impl Iterator<Item = &PlantedCommit> {
        self.commits.iter().filter(|c| c.role == CommitRole::Noise)
    }
}

pub fn load_repo_manifest(path: &Path) -> Result<RepoManifest, CorpusError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CorpusError::Manifest(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CorpusError::Manifest(format!("{}: {e}", path.display())))
}

struct Step {
    subject: &'static str,
    role: CommitRole,
    signals: &'static [SignalKind],
    writes: &'static [(&'static str, &'static str)],
}

const SHOP_V1: &str = "\
\"\"\"Inventory helpers for the shopfloor examples.\"\"\"

STOCK = {
    \"pen\": 12,
    \"pad\": 4,
}


def stock_count(name):
    return STOCK.get(name, 0)


def reorder(name, threshold):
    return stock_count(name) <= threshold


def restock_total(names):
    return sum(stock_count(n) for n in names)


def reorder_latency_ms():
    return 7
";

const SHOP_V2: &str = "\
\"\"\"Inventory helpers for the shopfloor examples.\"\"\"

STOCK = {
    \"pen\": 12,
    \"pad\": 4,
    \"ink\": 9,
}


def stock_count(name):
    return STOCK.get(name, 0)


def reorder(name, threshold):
    return stock_count(name) <= threshold


def restock_total(names):
    return sum(stock_count(n) for n in names)


def reorder_latency_ms():
    return 7


def lowest_stock():
    return min(STOCK, key=STOCK.get)
";

const README: &str = "\
# shopfloor

Small inventory helpers and the test suites that exercise them.
";

const CHANGELOG: &str = "\
# Changes

- 0.2: the stock table gained ink and a lowest-stock probe.
- 0.1: first cut of the shopfloor helpers.
";

const ALPHA_V1: &str = "\
import unittest

from src.shop import stock_count, reorder


class TestInventory(unittest.TestCase):
    def test_stock_count(self):
        self.assertEqual(stock_count(\"pen\"), 12)

    def test_reorder_threshold(self):
        self.assertTrue(reorder(\"pad\", 6))
";

const ALPHA_V2: &str = "\
import unittest

from src.shop import stock_count, reorder


class TestInventory(unittest.TestCase):
    def test_stock_count(self):
        assert stock_count(\"pen\") == 12

    def test_reorder_threshold(self):
        assert reorder(\"pad\", 6)
";

const BETA_V1: &str = "\
import unittest

from src.shop import stock_count


class TestStockLevels(unittest.TestCase):
    def setUp(self):
        self.names = [\"pen\", \"pad\"]

    def test_known_names_have_stock(self):
        for name in self.names:
            self.assertGreater(stock_count(name), 0)
";

const BETA_V2: &str = "\
import unittest

import pytest

from src.shop import stock_count


class TestStockLevels(unittest.TestCase):
    @pytest.fixture(autouse=True)
    def _setup(self):
        self.names = [\"pen\", \"pad\"]

    def test_known_names_have_stock(self):
        for name in self.names:
            self.assertGreater(stock_count(name), 0)
";

const GAMMA_V1: &str = "\
import unittest

from src.shop import restock_total


def test_restock_total():
    assert restock_total([\"pen\", \"pad\"]) == 16
";

const GAMMA_V2: &str = "\
import pytest

from src.shop import restock_total


def test_restock_total():
    assert restock_total([\"pen\", \"pad\"]) == pytest.approx(16)
";

const GAMMA_V3: &str = "\
import pytest

from src.shop import restock_total


def test_restock_total():
    assert restock_total([\"pen\", \"pad\", \"ink\"]) == pytest.approx(25)
";

const DELTA_V1: &str = "\
import os
import unittest

from src.shop import stock_count


class TestPlatformPaths(unittest.TestCase):
    @unittest.skipIf(os.name == \"nt\", \"posix cache layout only\")
    def test_cache_path_stock(self):
        self.assertEqual(stock_count(\"pen\"), 12)
";

const DELTA_V2: &str = "\
import os
import unittest

import pytest

from src.shop import stock_count


class TestPlatformPaths(unittest.TestCase):
    @pytest.mark.skipif(os.name == \"nt\", reason=\"posix cache layout only\")
    def test_cache_path_stock(self):
        self.assertEqual(stock_count(\"pen\"), 12)
";

const EPSILON_V1: &str = "\
import unittest

from src.shop import reorder_latency_ms


class TestReorderTiming(unittest.TestCase):
    @unittest.expectedFailure
    def test_reorder_latency_budget(self):
        self.assertLess(reorder_latency_ms(), 5)
";

const EPSILON_V2: &str = "\
import unittest

import pytest

from src.shop import reorder_latency_ms


class TestReorderTiming(unittest.TestCase):
    @pytest.mark.xfail
    def test_reorder_latency_budget(self):
        self.assertLess(reorder_latency_ms(), 5)
";

macro_rules! bulk_before {
    ($class:literal, $test:literal, $name:literal, $count:literal) => {
        concat!(
            "import unittest\n\nfrom src.shop import stock_count\n\n\nclass ",
            $class,
            "(unittest.TestCase):\n    def ",
            $test,
            "(self):\n        self.assertEqual(stock_count(\"",
            $name,
            "\"), ",
            $count,
            ")\n"
        )
    };
}

macro_rules! bulk_after {
    ($class:literal, $test:literal, $name:literal, $count:literal) => {
        concat!(
            "import unittest\n\nfrom src.shop import stock_count\n\n\nclass ",
            $class,
            "(unittest.TestCase):\n    def ",
            $test,
            "(self):\n        assert stock_count(\"",
            $name,
            "\") == ",
            $count,
            "\n"
        )
    };
}

const STEPS: &[Step] = &[
    Step {
        subject: "add shop inventory helpers",
        role: CommitRole::Noise,
        signals: &[],
        writes: &[("README.md", README), ("src/shop.py", SHOP_V1)],
    },
    Step {
        subject: "add inventory test suites",
        role: CommitRole::Noise,
        signals: &[],
        writes: &[
            ("tests/test_alpha.py", ALPHA_V1),
            ("tests/test_beta.py", BETA_V1),
            ("tests/test_gamma.py", GAMMA_V1),
            ("tests/test_delta.py", DELTA_V1),
            ("tests/test_epsilon.py", EPSILON_V1),
            ("tests/test_bulk_a.py", bulk_before!("TestBulkA", "test_pen_stock", "pen", "12")),
            ("tests/test_bulk_b.py", bulk_before!("TestBulkB", "test_pad_stock", "pad", "4")),
            ("tests/test_bulk_c.py", bulk_before!("TestBulkC", "test_clip_stock", "clip", "0")),
            ("tests/test_bulk_d.py", bulk_before!("TestBulkD", "test_tape_stock", "tape", "0")),
            ("tests/test_bulk_e.py", bulk_before!("TestBulkE", "test_glue_stock", "glue", "0")),
            ("tests/test_bulk_f.py", bulk_before!("TestBulkF", "test_wax_stock", "wax", "0")),
        ],
    },
    Step {
        subject: "convert test_alpha assertions to plain asserts",
        role: CommitRole::Migration,
        signals: &[SignalKind::AssertMigration],
        writes: &[("tests/test_alpha.py", ALPHA_V2)],
    },
    Step {
        subject: "convert test_beta setup to a fixture",
        role: CommitRole::Migration,
        signals: &[SignalKind::FixtureMigration],
        writes: &[("tests/test_beta.py", BETA_V2)],
    },
    Step {
        subject: "add ink to the stock table",
        role: CommitRole::Noise,
        signals: &[],
        writes: &[("src/shop.py", SHOP_V2)],
    },
    Step {
        subject: "swap leftover unittest import for pytest in test_gamma",
        role: CommitRole::Migration,
        signals: &[SignalKind::ImportMigration],
        writes: &[("tests/test_gamma.py", GAMMA_V2)],
    },
    Step {
        subject: "start a changelog",
        role: CommitRole::Noise,
        signals: &[],
        writes: &[("CHANGELOG.md", CHANGELOG)],
    },
    Step {
        subject: "use pytest skipif in test_delta",
        role: CommitRole::Migration,
        signals: &[SignalKind::SkipMigration],
        writes: &[("tests/test_delta.py", DELTA_V2)],
    },
    Step {
        subject: "mark latency budget test as xfail",
        role: CommitRole::Migration,
        signals: &[SignalKind::ExpectedFailureMigration],
        writes: &[("tests/test_epsilon.py", EPSILON_V2)],
    },
    Step {
        subject: "convert bulk suites to plain asserts",
        role: CommitRole::BulkMigration,
        signals: &[SignalKind::AssertMigration],
        writes: &[
            ("tests/test_bulk_a.py", bulk_after!("TestBulkA", "test_pen_stock", "pen", "12")),
            ("tests/test_bulk_b.py", bulk_after!("TestBulkB", "test_pad_stock", "pad", "4")),
            ("tests/test_bulk_c.py", bulk_after!("TestBulkC", "test_clip_stock", "clip", "0")),
            ("tests/test_bulk_d.py", bulk_after!("TestBulkD", "test_tape_stock", "tape", "0")),
            ("tests/test_bulk_e.py", bulk_after!("TestBulkE", "test_glue_stock", "glue", "0")),
            ("tests/test_bulk_f.py", bulk_after!("TestBulkF", "test_wax_stock", "wax", "0")),
        ],
    },
    Step {
        subject: "track the grown stock table in test_gamma",
        role: CommitRole::Noise,
        signals: &[],
        writes: &[("tests/test_gamma.py", GAMMA_V3)],
    },
];

fn git(repo: &Path, step: usize, args: &[&str]) -> Result<(), CorpusError> {
    let stamp = format!("2021-04-07T09:{:02}:00 +0000", step);
    let output = Command::new("git")
        .arg("-C")
        .arg(repo)
        .args(args)
        .env("GIT_AUTHOR_NAME", "Shopfloor Maintainers")
        .env("GIT_AUTHOR_EMAIL", "dev@shopfloor.example")
        .env("GIT_COMMITTER_NAME", "Shopfloor Maintainers")
        .env("GIT_COMMITTER_EMAIL", "dev@shopfloor.example")
        .env("GIT_AUTHOR_DATE", &stamp)
        .env("GIT_COMMITTER_DATE", &stamp)
        .env("GIT_CONFIG_GLOBAL", "/dev/null")
        .env("GIT_CONFIG_SYSTEM", "/dev/null")
        .output()
        .map_err(CorpusError::Io)?;
    if !output.status.success() {
        return Err(CorpusError::Manifest(format!(
            "git {} failed in {}: {}",
            args.first().unwrap_or(&""),
            repo.display(),
            String::from_utf8_lossy(&output.stderr).trim()
        )));
    }
    Ok(())
}

/// Builds the synthetic repository at `path` (which must be empty or
/// absent) and returns the manifest describing every planted commit, in
/// history order.
pub fn build_fixture_repo(path: &Path) -> Result<RepoManifest, CorpusError> {
    if path.exists() {
        if fs::read_dir(path)?.next().is_some() {
            return Err(CorpusError::Io(io::Error::new(
                io::ErrorKind::AlreadyExists,
                format!("{} is not empty", path.display()),
            )));
        }
    } else {
        fs::create_dir_all(path)?;
    }

    git(path, 0, &["-c", "init.defaultBranch=main", "init", "-q"])?;
    let mut commits = Vec::new();
    for (i, step) in STEPS.iter().enumerate() {
        for (rel, content) in step.writes {
            let file = path.join(rel);
            if let Some(parent) = file.parent() {
                fs::create_dir_all(parent)?;
            }
            fs::write(file, content)?;
        }
        git(path, i, &["add", "-A"])?;
        git(path, i, &["-c", "commit.gpgsign=false", "commit", "-q", "-m", step.subject])?;
        commits.push(PlantedCommit {
            subject: step.subject.to_string(),
            role: step.role,
            signals: step.signals.to_vec(),
            files_changed: step.writes.len(),
        });
    }
    Ok(RepoManifest { commits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{scan_history, MAX_FILES_CHANGED};
    use std::collections::BTreeMap;

    fn subjects_by_sha(repo: &Path) -> BTreeMap<String, String> {
        let out = Command::new("git")
            .args(["-C"])
            .arg(repo)
            .args(["log", "--format=%H%x09%s"])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout)
            .unwrap()
            .lines()
            .filter_map(|l| {
                let (sha, subject) = l.split_once('\t')?;
                Some((sha.to_string(), subject.to_string()))
            })
            .collect()
    }

    #[test]
    fn planted_commits_are_detected_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = build_fixture_repo(dir.path()).unwrap();
        assert_eq!(manifest.migrations().count(), 5);
        assert_eq!(manifest.bulk().count(), 1);
        assert!(manifest.noise().count() >= 3);

        let reports = scan_history(dir.path(), MAX_FILES_CHANGED).unwrap();
        let subjects = subjects_by_sha(dir.path());
        assert_eq!(reports.len(), 6, "five isolated migrations plus the bulk sweep");

        for report in &reports {
            let subject = &subjects[&report.commit];
            let planted = manifest
                .commits
                .iter()
                .find(|c| &c.subject == subject)
                .unwrap_or_else(|| panic!("unplanted commit reported: {subject}"));
            assert_ne!(planted.role, CommitRole::Noise, "{subject}");
            let kinds: Vec<_> = report.signals.iter().map(|s| s.kind).collect();
            assert_eq!(kinds, planted.signals, "{subject}");
            assert_eq!(report.files_changed, planted.files_changed, "{subject}");
            assert_eq!(report.eligible, planted.role == CommitRole::Migration, "{subject}");
        }
        for noise in manifest.noise() {
            assert!(
                !reports
                    .iter()
                    .any(|r| subjects[&r.commit] == noise.subject),
                "noise commit reported: {}",
                noise.subject
            );
        }
    }

    #[test]
    fn rebuilds_are_identical() {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let ma = build_fixture_repo(a.path()).unwrap();
        let mb = build_fixture_repo(b.path()).unwrap();
        assert_eq!(ma, mb);

        let shas = |p: &Path| {
            let out = Command::new("git")
                .arg("-C")
                .arg(p)
                .args(["rev-list", "HEAD"])
                .output()
                .unwrap();
            assert!(out.status.success());
            String::from_utf8(out.stdout).unwrap()
        };
        assert_eq!(shas(a.path()), shas(b.path()));
    }

    #[test]
    fn building_into_a_nonempty_dir_is_an_io_error() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("keep.txt"), "data").unwrap();
        match build_fixture_repo(dir.path()) {
            Err(CorpusError::Io(e)) => assert_eq!(e.kind(), io::ErrorKind::AlreadyExists),
            other => panic!("expected io error, got {other:?}"),
        }
    }

    #[test]
    fn scanning_an_empty_repository_yields_nothing() {
        let dir = tempfile::tempdir().unwrap();
        git(dir.path(), 0, &["init", "-q"]).unwrap();
        let reports = scan_history(dir.path(), MAX_FILES_CHANGED).unwrap();
        assert!(reports.is_empty());
    }

    #[test]
    fn checked_in_manifest_matches_the_builder() {
        let dir = tempfile::tempdir().unwrap();
        let built = build_fixture_repo(dir.path()).unwrap();
        let recorded = load_repo_manifest(&super::super::bundled_root().join("repo_manifest.json")).unwrap();
        assert_eq!(built, recorded);
    }
}
