//! Runs the Python outcome-equivalence check over every entry in the
//! bundled assertion mapping table. See tests/data/verify_mappings.py.

use std::path::Path;
use std::process::Command;

#[test]
fn mapped_forms_preserve_outcomes() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let script = root.join("tests/data/verify_mappings.py");
    let table = root.join("data/assert_mappings.json");
    let out = Command::new("python3")
        .arg(&script)
        .arg(&table)
        .env("PYTEST_DISABLE_PLUGIN_AUTOLOAD", "1")
        .output()
        .expect("failed to spawn python3");
    let stdout = String::from_utf8_lossy(&out.stdout);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        out.status.success(),
        "outcome divergence between unittest methods and pytest forms\nstdout:\n{stdout}\nstderr:\n{stderr}"
    );

    let summary = stdout
        .lines()
        .find(|l| l.starts_with("verified "))
        .unwrap_or_else(|| panic!("no summary line in output: {stdout}"));
    let pairs: usize = summary
        .split_whitespace()
        .nth(1)
        .and_then(|n| n.parse().ok())
        .unwrap_or_else(|| panic!("unparsable summary: {summary}"));
    assert!(pairs > 3000, "suspiciously small grid: {summary}");
    assert!(
        summary.contains("31 mappings"),
        "entry count changed without updating this check: {summary}"
    );
}
