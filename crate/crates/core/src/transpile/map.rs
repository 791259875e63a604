//! Assertion and decorator mapping.
//!
//! The method-by-method rewrite rules live in `data/assert_mappings.json`
//! so they can be audited and overridden without recompiling; this module
//! loads the table and renders individual call sites into plain `assert`
//! statements (or `pytest.raises` / `pytest.warns` blocks).

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::source_model::{AssertionCall, AssertionUsage, SourceSpan};
use crate::text;

pub const BUILTIN_TABLE: &str = include_str!("../../data/assert_mappings.json");

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RewriteKind {
    Compare { op: String },
    Truthy { negate: bool },
    NoneCheck { negate: bool },
    IsInstance { negate: bool },
    Almost { negate: bool },
    SortedCompare,
    Regex { negate: bool },
    Raises { match_arg: bool },
    Warns { match_arg: bool },
    FailCall,
    SkipCall,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapEntry {
    pub method: String,
    pub rewrite: RewriteKind,
    /// Human-auditable pytest shape, also used as the execution template by
    /// the behaviour oracle.
    pub pytest_form: String,
    /// Positional index at which an optional message argument may appear.
    pub msg_pos: Option<usize>,
    /// Input domain the behaviour oracle exercises for this entry.
    pub oracle_domain: String,
}

#[derive(Debug, Clone)]
pub struct MappingTable {
    pub version: u32,
    entries: HashMap<String, MapEntry>,
    order: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("mapping table: {0}")]
    Format(#[from] serde_json::Error),
    #[error("mapping table: {0}")]
    Io(#[from] std::io::Error),
    #[error("mapping table: duplicate entry for {0}")]
    Duplicate(String),
}

#[derive(Deserialize)]
struct TableFile {
    version: u32,
    entries: Vec<MapEntry>,
}

impl MappingTable {
    pub fn builtin() -> MappingTable {
        MappingTable::from_json(BUILTIN_TABLE).expect("bundled mapping table is valid")
    }

    pub fn from_json(json: &str) -> Result<MappingTable, TableError> {
        let file: TableFile = serde_json::from_str(json)?;
        let mut entries = HashMap::new();
        let mut order = Vec::new();
        for entry in file.entries {
            let name = entry.method.clone();
            if entries.insert(name.clone(), entry).is_some() {
                return Err(TableError::Duplicate(name));
            }
            order.push(name);
        }
        Ok(MappingTable { version: file.version, entries, order })
    }

    pub fn load(path: &Path) -> Result<MappingTable, TableError> {
        MappingTable::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, method: &str) -> Option<&MapEntry> {
        self.entries.get(method)
    }

    pub fn entries(&self) -> impl Iterator<Item = &MapEntry> {
        self.order.iter().map(|m| &self.entries[m])
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Why a call site could not be rewritten.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualKind {
    UnknownMethod,
    EmbeddedUsage,
    SplatArguments,
    BadArity,
    PlacesAndDelta,
    ContextResultUsed,
    AmbiguousTeardown,
    ClassScopeReview,
    UnsafeStatement,
}

/// One spot the engine left for a human, with the original source location.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Residual {
    pub kind: ResidualKind,
    pub span: SourceSpan,
    pub detail: String,
}

/// A successful call-site rewrite: text replacements in absolute file
/// coordinates, plus the imports the new text relies on.
#[derive(Debug, Clone)]
pub struct Rewrite {
    pub edits: Vec<(usize, usize, String)>,
    pub needs_pytest: bool,
    pub needs_re: bool,
}

impl Rewrite {
    fn single(start: usize, end: usize, replacement: String) -> Rewrite {
        Rewrite { edits: vec![(start, end, replacement)], needs_pytest: false, needs_re: false }
    }
}

pub type MapResult = Result<Rewrite, Residual>;

/// Minimum binding strength an expression needs before it can be spliced
/// into a given template slot without parentheses.
mod slot {
    /// Operand of a comparison (`==`, `in`, `is`, ...).
    pub const COMPARISON: u8 = 5;
    /// Operand of `not`.
    pub const NEGATED: u8 = 3;
    /// Operand of binary `-` inside `round(a - b, n)` / `abs(a - b)`.
    pub const ARITHMETIC: u8 = 9;
    /// Plain argument position inside a call, or the head of an `assert`.
    pub const ANY: u8 = 1;
    /// A value being called: `f` in `f(...)`.
    pub const CALLEE: u8 = 14;
}

fn fully_parenthesized(s: &str) -> bool {
    let t = s.trim();
    t.starts_with('(') && text::find_balanced(t, 0) == Some(t.len() - 1)
}

/// Render an argument: slice its span, apply any pending in-span renames,
/// and parenthesize when the expression binds too loosely for the slot.
fn render(src: &str, arg_span: SourceSpan, prec: u8, min_prec: u8, subs: &[(usize, usize, String)]) -> String {
    let mut out = String::new();
    let mut cursor = arg_span.start;
    let mut applicable: Vec<&(usize, usize, String)> = subs
        .iter()
        .filter(|(s, e, _)| *s >= arg_span.start && *e <= arg_span.end)
        .collect();
    applicable.sort_by_key(|(s, _, _)| *s);
    for (s, e, replacement) in applicable {
        out.push_str(&src[cursor..*s]);
        out.push_str(replacement);
        cursor = *e;
    }
    out.push_str(&src[cursor..arg_span.end]);
    if prec < min_prec && !fully_parenthesized(&out) {
        format!("({})", out)
    } else {
        out
    }
}

struct CallView<'a> {
    src: &'a str,
    call: &'a AssertionCall,
    entry: &'a MapEntry,
    subs: &'a [(usize, usize, String)],
}

impl<'a> CallView<'a> {
    fn residual(&self, kind: ResidualKind, detail: impl Into<String>) -> Residual {
        Residual { kind, span: self.call.call_span, detail: detail.into() }
    }

    fn arg(&self, i: usize, min_prec: u8) -> String {
        let a = &self.call.args[i];
        render(self.src, a.span, a.precedence, min_prec, self.subs)
    }

    fn kwarg(&self, name: &str, min_prec: u8) -> Option<String> {
        self.call.keywords.iter().find(|k| k.name.as_deref() == Some(name)).map(|k| {
            render(self.src, k.value_span, k.precedence, min_prec, self.subs)
        })
    }

    /// Message operand: the positional slot after the principals, or `msg=`.
    fn message(&self, principals: usize) -> Option<String> {
        if let Some(m) = self.kwarg("msg", slot::ANY) {
            return Some(m);
        }
        let pos = self.entry.msg_pos?;
        if self.call.args.len() > pos && pos >= principals {
            let a = &self.call.args[pos];
            return Some(render(self.src, a.span, a.precedence, slot::ANY, self.subs));
        }
        None
    }

    /// Reject unknown keywords and positional overflow before rewriting.
    fn check_shape(&self, principals: usize, allowed_kw: &[&str]) -> Result<(), Residual> {
        if self.call.has_splat {
            return Err(self.residual(ResidualKind::SplatArguments, "star arguments cannot be mapped"));
        }
        if self.call.args.len() < principals {
            return Err(self.residual(
                ResidualKind::BadArity,
                format!("{} expects at least {} arguments", self.call.method, principals),
            ));
        }
        let max = self.entry.msg_pos.map(|p| p + 1).unwrap_or(principals);
        if self.call.args.len() > max {
            return Err(self.residual(
                ResidualKind::BadArity,
                format!("{} called with {} positional arguments", self.call.method, self.call.args.len()),
            ));
        }
        for kw in &self.call.keywords {
            let name = kw.name.as_deref().unwrap_or("**");
            if name != "msg" && !allowed_kw.contains(&name) {
                return Err(self.residual(
                    ResidualKind::BadArity,
                    format!("unsupported keyword {} for {}", name, self.call.method),
                ));
            }
        }
        Ok(())
    }

    fn assert_stmt(&self, condition: String, msg: Option<String>) -> String {
        match msg {
            Some(m) => format!("assert {}, {}", condition, m),
            None => format!("assert {}", condition),
        }
    }
}

/// Rewrite one assertion (or `fail`/`skipTest`) call site. `subs` carries
/// self-attribute renames that overlap the call's argument spans; they are
/// folded into the rendered text so callers never double-edit.
pub fn map_assertion(
    table: &MappingTable,
    src: &str,
    call: &AssertionCall,
    subs: &[(usize, usize, String)],
    idiomatic_approx: bool,
) -> MapResult {
    let Some(entry) = table.get(&call.method) else {
        return Err(Residual {
            kind: ResidualKind::UnknownMethod,
            span: call.call_span,
            detail: format!("no mapping for {}", call.method),
        });
    };
    let view = CallView { src, call, entry, subs };

    let is_cm_kind = matches!(entry.rewrite, RewriteKind::Raises { .. } | RewriteKind::Warns { .. });
    match call.usage {
        AssertionUsage::Embedded => {
            return Err(view.residual(
                ResidualKind::EmbeddedUsage,
                format!("{} used inside a larger expression", call.method),
            ));
        }
        AssertionUsage::WithItem { .. } if !is_cm_kind => {
            return Err(view.residual(
                ResidualKind::EmbeddedUsage,
                format!("{} is not a context manager", call.method),
            ));
        }
        _ => {}
    }

    let mut rewrite = match &entry.rewrite {
        RewriteKind::Compare { op } => {
            view.check_shape(2, &[])?;
            let cond = format!("{} {} {}", view.arg(0, slot::COMPARISON), op, view.arg(1, slot::COMPARISON));
            Rewrite::single(call.stmt_span.start, call.stmt_span.end, view.assert_stmt(cond, view.message(2)))
        }
        RewriteKind::Truthy { negate } => {
            view.check_shape(1, &[])?;
            let cond = if *negate {
                format!("not {}", view.arg(0, slot::NEGATED))
            } else {
                view.arg(0, slot::ANY)
            };
            Rewrite::single(call.stmt_span.start, call.stmt_span.end, view.assert_stmt(cond, view.message(1)))
        }
        RewriteKind::NoneCheck { negate } => {
            view.check_shape(1, &[])?;
            let op = if *negate { "is not None" } else { "is None" };
            let cond = format!("{} {}", view.arg(0, slot::COMPARISON), op);
            Rewrite::single(call.stmt_span.start, call.stmt_span.end, view.assert_stmt(cond, view.message(1)))
        }
        RewriteKind::IsInstance { negate } => {
            view.check_shape(2, &[])?;
            let base = format!("isinstance({}, {})", view.arg(0, slot::ANY), view.arg(1, slot::ANY));
            let cond = if *negate { format!("not {}", base) } else { base };
            Rewrite::single(call.stmt_span.start, call.stmt_span.end, view.assert_stmt(cond, view.message(2)))
        }
        RewriteKind::Almost { negate } => map_almost(&view, *negate, idiomatic_approx)?,
        RewriteKind::SortedCompare => {
            view.check_shape(2, &[])?;
            let cond = format!("sorted({}) == sorted({})", view.arg(0, slot::ANY), view.arg(1, slot::ANY));
            Rewrite::single(call.stmt_span.start, call.stmt_span.end, view.assert_stmt(cond, view.message(2)))
        }
        RewriteKind::Regex { negate } => {
            view.check_shape(2, &[])?;
            let base = format!("re.search({}, {})", view.arg(1, slot::ANY), view.arg(0, slot::ANY));
            let cond = if *negate { format!("not {}", base) } else { base };
            let mut r = Rewrite::single(call.stmt_span.start, call.stmt_span.end, view.assert_stmt(cond, view.message(2)));
            r.needs_re = true;
            r
        }
        RewriteKind::Raises { match_arg } => map_context_manager(&view, "pytest.raises", *match_arg)?,
        RewriteKind::Warns { match_arg } => map_context_manager(&view, "pytest.warns", *match_arg)?,
        RewriteKind::FailCall => {
            view.check_shape(0, &[])?;
            let msg = if call.args.is_empty() {
                String::new()
            } else {
                view.arg(0, slot::ANY)
            };
            Rewrite::single(call.stmt_span.start, call.stmt_span.end, format!("pytest.fail({})", msg))
        }
        RewriteKind::SkipCall => {
            view.check_shape(1, &[])?;
            Rewrite::single(
                call.stmt_span.start,
                call.stmt_span.end,
                format!("pytest.skip({})", view.arg(0, slot::ANY)),
            )
        }
    };
    rewrite.needs_pytest = rewrite.needs_pytest
        || rewrite.edits.iter().any(|(_, _, t)| t.contains("pytest."));
    Ok(rewrite)
}

fn map_almost(view: &CallView, negate: bool, idiomatic: bool) -> MapResult {
    let call = view.call;
    view.check_shape(2, &["places", "delta"])?;
    // Signature: (first, second, places=None, msg=None, delta=None).
    let places_pos = if call.args.len() > 2 { Some(view.arg(2, slot::ANY)) } else { None };
    let places = view.kwarg("places", slot::ANY).or(places_pos);
    let delta = view.kwarg("delta", slot::COMPARISON);
    if places.is_some() && delta.is_some() {
        return Err(view.residual(
            ResidualKind::PlacesAndDelta,
            "specify places or delta, not both",
        ));
    }
    let msg = view.message(2);
    let a = view.arg(0, slot::ARITHMETIC);
    let b = view.arg(1, slot::ARITHMETIC);
    let cond = if idiomatic {
        let target = match (&places, &delta) {
            (_, Some(d)) => format!("pytest.approx({}, abs={})", view.arg(1, slot::ANY), d),
            (Some(p), _) => format!("pytest.approx({}, abs=0.5 * 10 ** -{})", view.arg(1, slot::ANY), p),
            (None, None) => format!("pytest.approx({}, abs=0.5 * 10 ** -7)", view.arg(1, slot::ANY)),
        };
        let op = if negate { "!=" } else { "==" };
        format!("{} {} {}", view.arg(0, slot::COMPARISON), op, target)
    } else {
        match delta {
            Some(d) => {
                let op = if negate { ">" } else { "<=" };
                format!("abs({} - {}) {} {}", a, b, op, d)
            }
            None => {
                let op = if negate { "!=" } else { "==" };
                format!("round({} - {}, {}) {} 0", a, b, places.as_deref().unwrap_or("7"), op)
            }
        }
    };
    Ok(Rewrite::single(call.stmt_span.start, call.stmt_span.end, view.assert_stmt(cond, msg)))
}

/// `assertRaises`/`assertWarns` in both forms. The `with` form swaps the
/// context expression in place; the call form becomes a two-line `with`
/// block invoking the callable.
fn map_context_manager(view: &CallView, target: &str, match_arg: bool) -> MapResult {
    let call = view.call;
    if call.has_splat {
        return Err(view.residual(ResidualKind::SplatArguments, "star arguments cannot be mapped"));
    }
    let principals = if match_arg { 2 } else { 1 };
    if call.args.len() < principals {
        return Err(view.residual(
            ResidualKind::BadArity,
            format!("{} expects at least {} arguments", call.method, principals),
        ));
    }
    let exc = view.arg(0, slot::ANY);
    let head = if match_arg {
        format!("{}({}, match={})", target, exc, view.arg(1, slot::ANY))
    } else {
        format!("{}({})", target, exc)
    };

    match &call.usage {
        AssertionUsage::WithItem { as_name, .. } => {
            for kw in &call.keywords {
                if kw.name.as_deref() != Some("msg") {
                    return Err(view.residual(
                        ResidualKind::BadArity,
                        format!("unsupported keyword for {} context form", call.method),
                    ));
                }
            }
            if call.args.len() > principals {
                return Err(view.residual(
                    ResidualKind::BadArity,
                    format!("{} context form takes {} arguments", call.method, principals),
                ));
            }
            if target.ends_with("warns") && as_name.is_some() {
                return Err(view.residual(
                    ResidualKind::ContextResultUsed,
                    "captured warning object has a different shape under pytest.warns",
                ));
            }
            Ok(Rewrite::single(call.call_span.start, call.call_span.end, head))
        }
        AssertionUsage::ExprStatement => {
            if call.args.len() == principals {
                return Err(view.residual(
                    ResidualKind::BadArity,
                    format!("{} statement form needs a callable", call.method),
                ));
            }
            let callee = view.arg(principals, slot::CALLEE);
            let mut passed: Vec<String> = (principals + 1..call.args.len())
                .map(|i| view.arg(i, slot::ANY))
                .collect();
            for kw in &call.keywords {
                let name = kw.name.clone().unwrap_or_default();
                let value = render(view.src, kw.value_span, kw.precedence, slot::ANY, view.subs);
                passed.push(format!("{}={}", name, value));
            }
            let inner_indent = format!("{}    ", call.indent);
            let body = format!("{}({})", callee, passed.join(", "));
            Ok(Rewrite::single(
                call.stmt_span.start,
                call.stmt_span.end,
                format!("with {}:\n{}{}", head, inner_indent, body),
            ))
        }
        AssertionUsage::Embedded => unreachable!("embedded usage rejected before kind dispatch"),
    }
}

/// Rewrite a `unittest` decorator line into its pytest marker. Returns
/// `None` for decorators the migration does not touch.
pub fn map_decorator(
    dec: &crate::source_model::Decorator,
    src: &str,
    subs: &[(usize, usize, String)],
) -> Option<MapResult> {
    let replacement = |text: String| {
        Ok(Rewrite::single(dec.line_span.start, dec.span.end, text))
    };
    let arg = |i: usize, min_prec: u8| {
        let a = &dec.args[i];
        render(src, a.span, a.precedence, min_prec, subs)
    };
    let reason_kw = |name: &str| {
        dec.keywords
            .iter()
            .find(|k| k.name.as_deref() == Some(name))
            .map(|k| render(src, k.value_span, k.precedence, slot::ANY, subs))
    };
    match dec.dotted.as_str() {
        "unittest.skip" => Some(match (dec.is_call, dec.args.len()) {
            (false, _) => replacement("@pytest.mark.skip".to_string()),
            (true, 0) => replacement("@pytest.mark.skip()".to_string()),
            (true, 1) => {
                replacement(format!("@pytest.mark.skip(reason={})", arg(0, slot::ANY)))
            }
            _ => Err(Residual {
                kind: ResidualKind::BadArity,
                span: dec.span,
                detail: "skip takes one reason".to_string(),
            }),
        }),
        "unittest.skipIf" | "unittest.skipUnless" => {
            let unless = dec.dotted.ends_with("Unless");
            if !dec.is_call || dec.args.is_empty() {
                return Some(Err(Residual {
                    kind: ResidualKind::BadArity,
                    span: dec.span,
                    detail: format!("{} needs a condition", dec.dotted),
                }));
            }
            let cond = if unless {
                format!("not {}", arg(0, slot::NEGATED))
            } else {
                arg(0, slot::ANY)
            };
            let reason = reason_kw("reason").or_else(|| {
                if dec.args.len() > 1 {
                    Some(arg(1, slot::ANY))
                } else {
                    None
                }
            });
            Some(match reason {
                Some(r) => replacement(format!("@pytest.mark.skipif({}, reason={})", cond, r)),
                None => replacement(format!("@pytest.mark.skipif({})", cond)),
            })
        }
        "unittest.expectedFailure" => Some(replacement("@pytest.mark.xfail".to_string())),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source_model::{parse_module, SourceFile};

    fn first_assertion(body: &str) -> (SourceFile, AssertionCall) {
        let src = format!(
            "import unittest\n\nclass TestX(unittest.TestCase):\n    def test_a(self):\n{}\n",
            body
        );
        let file = SourceFile::new("t.py", src);
        let m = parse_module(&file).unwrap();
        let method = &m.classes[0].methods[0];
        let call = method
            .assertions
            .first()
            .or_else(|| method.control_calls.first())
            .expect("no assertion found")
            .clone();
        (file, call)
    }

    fn rewrite(body: &str) -> String {
        rewrite_opts(body, false)
    }

    fn rewrite_opts(body: &str, idiomatic: bool) -> String {
        let table = MappingTable::builtin();
        let (file, call) = first_assertion(body);
        let out = map_assertion(&table, file.text(), &call, &[], idiomatic).unwrap();
        assert_eq!(out.edits.len(), 1);
        out.edits[0].2.clone()
    }

    fn residual_of(body: &str) -> ResidualKind {
        let table = MappingTable::builtin();
        let (file, call) = first_assertion(body);
        map_assertion(&table, file.text(), &call, &[], false).unwrap_err().kind
    }

    #[test]
    fn builtin_table_loads() {
        let table = MappingTable::builtin();
        assert_eq!(table.version, 1);
        assert_eq!(table.len(), 31);
        assert!(table.get("assertEqual").is_some());
        assert!(table.get("fail").is_some());
    }

    #[test]
    fn simple_comparisons() {
        assert_eq!(rewrite("        self.assertEqual(a, b)"), "assert a == b");
        assert_eq!(rewrite("        self.assertNotEqual(a, b)"), "assert a != b");
        assert_eq!(rewrite("        self.assertIs(a, b)"), "assert a is b");
        assert_eq!(rewrite("        self.assertIn(a, items)"), "assert a in items");
        assert_eq!(rewrite("        self.assertGreater(a, 0)"), "assert a > 0");
        assert_eq!(rewrite("        self.assertLessEqual(a, 9)"), "assert a <= 9");
    }

    #[test]
    fn unary_forms() {
        assert_eq!(rewrite("        self.assertTrue(flag)"), "assert flag");
        assert_eq!(rewrite("        self.assertFalse(flag)"), "assert not flag");
        assert_eq!(rewrite("        self.assertIsNone(x)"), "assert x is None");
        assert_eq!(rewrite("        self.assertIsNotNone(x)"), "assert x is not None");
    }

    #[test]
    fn message_operand() {
        assert_eq!(rewrite("        self.assertEqual(a, b, \"oops\")"), "assert a == b, \"oops\"");
        assert_eq!(rewrite("        self.assertEqual(a, b, msg=\"oops\")"), "assert a == b, \"oops\"");
        assert_eq!(rewrite("        self.assertTrue(a, \"oops\")"), "assert a, \"oops\"");
    }

    #[test]
    fn precedence_wrapping() {
        assert_eq!(rewrite("        self.assertEqual(a or b, c)"), "assert (a or b) == c");
        assert_eq!(rewrite("        self.assertEqual(a == b, c)"), "assert (a == b) == c");
        assert_eq!(rewrite("        self.assertFalse(a or b)"), "assert not (a or b)");
        assert_eq!(rewrite("        self.assertFalse(a == b)"), "assert not a == b");
        assert_eq!(rewrite("        self.assertIsNone(a == b)"), "assert (a == b) is None");
        assert_eq!(rewrite("        self.assertTrue(a == b)"), "assert a == b");
        assert_eq!(
            rewrite("        self.assertAlmostEqual(a or b, c)"),
            "assert round((a or b) - c, 7) == 0"
        );
        assert_eq!(
            rewrite("        self.assertEqual((a or b), c)"),
            "assert (a or b) == c"
        );
    }

    #[test]
    fn almost_equal_forms() {
        assert_eq!(rewrite("        self.assertAlmostEqual(a, b)"), "assert round(a - b, 7) == 0");
        assert_eq!(
            rewrite("        self.assertAlmostEqual(a, b, places=2)"),
            "assert round(a - b, 2) == 0"
        );
        assert_eq!(
            rewrite("        self.assertAlmostEqual(a, b, 3)"),
            "assert round(a - b, 3) == 0"
        );
        assert_eq!(
            rewrite("        self.assertAlmostEqual(a, b, delta=0.5)"),
            "assert abs(a - b) <= 0.5"
        );
        assert_eq!(
            rewrite("        self.assertNotAlmostEqual(a, b, delta=0.5)"),
            "assert abs(a - b) > 0.5"
        );
        assert_eq!(
            rewrite("        self.assertNotAlmostEqual(a, b)"),
            "assert round(a - b, 7) != 0"
        );
        assert_eq!(
            rewrite_opts("        self.assertAlmostEqual(a, b, delta=0.5)", true),
            "assert a == pytest.approx(b, abs=0.5)"
        );
        assert_eq!(
            rewrite_opts("        self.assertAlmostEqual(a, b)", true),
            "assert a == pytest.approx(b, abs=0.5 * 10 ** -7)"
        );
        assert_eq!(residual_of("        self.assertAlmostEqual(a, b, places=2, delta=0.1)"), ResidualKind::PlacesAndDelta);
    }

    #[test]
    fn container_and_regex_forms() {
        assert_eq!(rewrite("        self.assertCountEqual(a, b)"), "assert sorted(a) == sorted(b)");
        assert_eq!(rewrite("        self.assertListEqual(a, b)"), "assert a == b");
        assert_eq!(rewrite("        self.assertDictEqual(a, b)"), "assert a == b");
        assert_eq!(rewrite("        self.assertIsInstance(x, int)"), "assert isinstance(x, int)");
        assert_eq!(
            rewrite("        self.assertNotIsInstance(x, (int, str))"),
            "assert not isinstance(x, (int, str))"
        );
        let table = MappingTable::builtin();
        let (file, call) = first_assertion("        self.assertRegex(text, r\"\\d+\")");
        let out = map_assertion(&table, file.text(), &call, &[], false).unwrap();
        assert_eq!(out.edits[0].2, "assert re.search(r\"\\d+\", text)");
        assert!(out.needs_re);
    }

    #[test]
    fn raises_with_form() {
        let table = MappingTable::builtin();
        let (file, call) = first_assertion(
            "        with self.assertRaises(ValueError):\n            boom()",
        );
        let out = map_assertion(&table, file.text(), &call, &[], false).unwrap();
        let (s, e, text) = &out.edits[0];
        assert_eq!(&file.text()[*s..*e], "self.assertRaises(ValueError)");
        assert_eq!(text, "pytest.raises(ValueError)");
        assert!(out.needs_pytest);
    }

    #[test]
    fn raises_call_form_becomes_with_block() {
        assert_eq!(
            rewrite("        self.assertRaises(ValueError, boom, 1, k=2)"),
            "with pytest.raises(ValueError):\n            boom(1, k=2)"
        );
        assert_eq!(
            rewrite("        self.assertRaisesRegex(ValueError, \"bad\", boom, 1)"),
            "with pytest.raises(ValueError, match=\"bad\"):\n            boom(1)"
        );
        assert_eq!(
            rewrite("        self.assertRaises(ValueError, lambda: boom(1))"),
            "with pytest.raises(ValueError):\n            (lambda: boom(1))()"
        );
    }

    #[test]
    fn warns_mapping() {
        assert_eq!(
            rewrite("        with self.assertWarns(DeprecationWarning):\n            old()"),
            "pytest.warns(DeprecationWarning)"
        );
        assert_eq!(
            residual_of("        with self.assertWarns(UserWarning) as w:\n            old()"),
            ResidualKind::ContextResultUsed
        );
    }

    #[test]
    fn control_calls() {
        assert_eq!(rewrite("        self.fail(\"nope\")"), "pytest.fail(\"nope\")");
        assert_eq!(rewrite("        self.fail()"), "pytest.fail()");
        assert_eq!(rewrite("        self.skipTest(\"later\")"), "pytest.skip(\"later\")");
    }

    #[test]
    fn residual_cases() {
        assert_eq!(residual_of("        x = self.assertEqual(a, b)"), ResidualKind::EmbeddedUsage);
        assert_eq!(residual_of("        self.assertEqual(*pair)"), ResidualKind::SplatArguments);
        assert_eq!(residual_of("        self.assertEqual(a)"), ResidualKind::BadArity);
        assert_eq!(residual_of("        self.assertEqual(a, b, m, extra)"), ResidualKind::BadArity);
        assert_eq!(residual_of("        self.assertDeepEqual(a, b)"), ResidualKind::UnknownMethod);
        assert_eq!(
            residual_of("        with self.assertEqual(a, b):\n            pass"),
            ResidualKind::EmbeddedUsage
        );
        assert_eq!(residual_of("        self.assertRaises(ValueError)"), ResidualKind::BadArity);
    }

    #[test]
    fn renders_match_pytest_form_templates() {
        let table = MappingTable::builtin();
        for (method, expected) in [
            ("assertEqual", "assert a == b"),
            ("assertNotEqual", "assert a != b"),
            ("assertIs", "assert a is b"),
            ("assertIsNot", "assert a is not b"),
            ("assertIn", "assert a in b"),
            ("assertNotIn", "assert a not in b"),
            ("assertGreater", "assert a > b"),
            ("assertGreaterEqual", "assert a >= b"),
            ("assertLess", "assert a < b"),
            ("assertLessEqual", "assert a <= b"),
            ("assertIsInstance", "assert isinstance(a, b)"),
            ("assertNotIsInstance", "assert not isinstance(a, b)"),
            ("assertCountEqual", "assert sorted(a) == sorted(b)"),
            ("assertListEqual", "assert a == b"),
            ("assertDictEqual", "assert a == b"),
            ("assertSetEqual", "assert a == b"),
            ("assertTupleEqual", "assert a == b"),
            ("assertRegex", "assert re.search(b, a)"),
            ("assertNotRegex", "assert not re.search(b, a)"),
        ] {
            let (file, call) = first_assertion(&format!("        self.{}(a, b)", method));
            let out = map_assertion(&table, file.text(), &call, &[], false).unwrap();
            assert_eq!(out.edits[0].2, expected, "template drift for {}", method);
            let form = &table.get(method).unwrap().pytest_form;
            let rendered = form.replace("{0}", "a").replace("{1}", "b");
            assert_eq!(out.edits[0].2, rendered, "pytest_form out of sync for {}", method);
        }
    }

    #[test]
    fn decorator_mapping() {
        let src = "import unittest\n\n@unittest.skip(\"slow\")\nclass TestX(unittest.TestCase):\n    @unittest.skipIf(os.name == \"nt\", \"windows\")\n    def test_a(self):\n        pass\n\n    @unittest.skipUnless(fast or cached, \"need speed\")\n    @unittest.expectedFailure\n    def test_b(self):\n        pass\n";
        let file = SourceFile::new("d.py", src);
        let m = parse_module(&file).unwrap();
        let class = &m.classes[0];
        let skip = map_decorator(&class.decorators[0], src, &[]).unwrap().unwrap();
        assert_eq!(skip.edits[0].2, "@pytest.mark.skip(reason=\"slow\")");
        let skipif = map_decorator(&class.methods[0].decorators[0], src, &[]).unwrap().unwrap();
        assert_eq!(
            skipif.edits[0].2,
            "@pytest.mark.skipif(os.name == \"nt\", reason=\"windows\")"
        );
        let skipunless = map_decorator(&class.methods[1].decorators[0], src, &[]).unwrap().unwrap();
        assert_eq!(
            skipunless.edits[0].2,
            "@pytest.mark.skipif(not (fast or cached), reason=\"need speed\")"
        );
        let xfail = map_decorator(&class.methods[1].decorators[1], src, &[]).unwrap().unwrap();
        assert_eq!(xfail.edits[0].2, "@pytest.mark.xfail");
        let plain = Decorator {
            dotted: "functools.cache".to_string(),
            is_call: false,
            args: vec![],
            keywords: vec![],
            span: class.decorators[0].span,
            line_span: class.decorators[0].line_span,
        };
        assert!(map_decorator(&plain, src, &[]).is_none());
    }

    use crate::source_model::Decorator;

    #[test]
    fn substitutions_rename_self_attrs_inside_args() {
        let table = MappingTable::builtin();
        let (file, call) = first_assertion("        self.assertEqual(self.cart.total(), self.rate)");
        let method_subs: Vec<(usize, usize, String)> = {
            let m = parse_module(&file).unwrap();
            m.classes[0].methods[0]
                .self_refs
                .iter()
                .map(|r| (r.span.start, r.span.end, r.attr.clone()))
                .collect()
        };
        let out = map_assertion(&table, file.text(), &call, &method_subs, false).unwrap();
        assert_eq!(out.edits[0].2, "assert cart.total() == rate");
    }
}
