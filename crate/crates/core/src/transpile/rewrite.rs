//! Whole-class rewriting.
//!
//! A `TestCase` class is rewritten in one of two shapes. When every method
//! is a test or lifecycle hook and all `self` state maps onto synthesized
//! fixtures, the class dissolves into module-level functions with named
//! fixtures. Otherwise the class is kept: its `unittest.TestCase` base is
//! dropped, lifecycle methods fold into an autouse fixture that assigns
//! the same `self` attributes, and assertion bodies are converted in
//! place. Edits stay anchored to original byte spans throughout.

use std::collections::{HashMap, HashSet};

use rustpython_parser::ast;
use rustpython_parser::Parse;

use crate::source_model::{
    AssertionUsage, EditSet, LifecycleKind, SourceSpan, TestClass, TestFunction, TestModule,
};
use crate::text;

use super::fixtures::{plan_fixtures, FixtureDef, FixturePlan};
use super::map::{map_assertion, map_decorator, MappingTable, Residual, ResidualKind};
use super::{MigrateOptions, Style};

const TESTCASE_ROOTS: [&str; 4] = [
    "unittest.TestCase",
    "unittest.case.TestCase",
    "unittest.IsolatedAsyncioTestCase",
    "unittest.async_case.IsolatedAsyncioTestCase",
];

/// Runtime TestCase machinery that survives as a method call and silently
/// breaks once the base class is gone.
const TESTCASE_APIS: [&str; 6] = [
    "addCleanup",
    "addClassCleanup",
    "doCleanups",
    "subTest",
    "enterContext",
    "addTypeEqualityFunc",
];

#[derive(Debug, Default)]
pub struct ClassRewrite {
    pub edits: Vec<(usize, usize, String)>,
    pub residuals: Vec<Residual>,
    pub needs_pytest: bool,
    pub needs_re: bool,
    pub demoted: bool,
    pub fixtures_created: usize,
    pub assertions_rewritten: usize,
    pub decorators_rewritten: usize,
}

pub fn rewrite_class(
    src: &str,
    module: &TestModule,
    class: &TestClass,
    table: &MappingTable,
    opts: &MigrateOptions,
) -> ClassRewrite {
    let plan = plan_fixtures(class);
    let consts = demotable_consts(src, class);
    let demote =
        opts.style == Style::Functions && can_demote(module, class, &plan, consts.as_deref());

    let mut cx = Rewriter {
        src,
        module,
        class,
        table,
        opts,
        plan: &plan,
        fixture_names: if demote {
            plan.fixtures.iter().filter(|f| !f.autouse).map(|f| f.name.clone()).collect()
        } else {
            Vec::new()
        },
        consts: if demote { consts.unwrap_or_default() } else { Vec::new() },
        demote,
        out: ClassRewrite { demoted: demote, ..ClassRewrite::default() },
    };
    if demote {
        cx.out.residuals.extend(plan.residuals.iter().cloned());
        cx.demote_class();
        cx.out.fixtures_created = plan.fixtures.len();
        if !plan.fixtures.is_empty() {
            cx.out.needs_pytest = true;
        }
    } else {
        cx.keep_class();
    }
    cx.out
}

/// Class attributes as (name, span) pairs, or `None` when any class-level
/// statement is not a plain single-name assignment.
fn demotable_consts(src: &str, class: &TestClass) -> Option<Vec<(String, SourceSpan)>> {
    let mut out = Vec::new();
    for span in &class.class_attrs {
        let snippet = text::reindent(span.slice(src), span.start_col - 1, 0);
        let parsed = ast::Suite::parse(&snippet, "<attr>").ok()?;
        let [ast::Stmt::Assign(assign)] = parsed.as_slice() else {
            return None;
        };
        let [ast::Expr::Name(name)] = assign.targets.as_slice() else {
            return None;
        };
        out.push((name.id.to_string(), *span));
    }
    Some(out)
}

fn can_demote(
    module: &TestModule,
    class: &TestClass,
    plan: &FixturePlan,
    consts: Option<&[(String, SourceSpan)]>,
) -> bool {
    let Some(consts) = consts else {
        return false;
    };
    if !class.decorators.is_empty() {
        return false;
    }
    if !plan.residuals.iter().all(|r| r.kind == ResidualKind::ClassScopeReview) {
        return false;
    }
    if plan.fixtures.iter().any(|f| f.autouse) {
        return false;
    }
    let fixture_names: HashSet<&str> = plan.fixtures.iter().map(|f| f.name.as_str()).collect();
    let const_names: HashSet<&str> = consts.iter().map(|(n, _)| n.as_str()).collect();
    if consts.iter().any(|(n, _)| fixture_names.contains(n.as_str())) {
        return false;
    }
    // Mixin and in-module bases would be lost, and subclasses would lose
    // their parent definition.
    if !class
        .bases
        .iter()
        .all(|b| TESTCASE_ROOTS[..2].contains(&module.resolve(b).as_str()))
    {
        return false;
    }
    if module
        .classes
        .iter()
        .any(|c| c.name != class.name && c.bases.iter().any(|b| *b == class.name))
    {
        return false;
    }
    for method in &class.methods {
        if method.lifecycle.is_none() && !method.is_test() {
            return false;
        }
        if method.lifecycle.is_some() {
            continue;
        }
        let mut stored: HashSet<&str> = HashSet::new();
        for r in &method.self_refs {
            if r.is_call {
                return false;
            }
            let known = fixture_names.contains(r.attr.as_str())
                || const_names.contains(r.attr.as_str())
                || stored.contains(r.attr.as_str());
            if r.is_store {
                stored.insert(r.attr.as_str());
            } else if !known {
                return false;
            }
        }
    }
    true
}

struct Rewriter<'a> {
    src: &'a str,
    module: &'a TestModule,
    class: &'a TestClass,
    table: &'a MappingTable,
    opts: &'a MigrateOptions,
    plan: &'a FixturePlan,
    fixture_names: Vec<String>,
    consts: Vec<(String, SourceSpan)>,
    demote: bool,
    out: ClassRewrite,
}

/// Per-method rewrite products, in absolute coordinates.
struct MethodEdits {
    edits: Vec<(usize, usize, String)>,
    fixture_params: Vec<String>,
}

impl<'a> Rewriter<'a> {
    /// Renames applying inside one method. Demoted classes rename
    /// `self.attr` to `attr` for fixture attributes, demoted constants and
    /// locally stored attributes; kept classes leave `self` state alone
    /// except in class-level lifecycle hooks, where `cls.attr` becomes
    /// `request.cls.attr`. Context-manager results rename `cm.exception`
    /// to `cm.value` whenever every conversion attempt for that name
    /// succeeds.
    fn method_subs(&mut self, method: &TestFunction) -> (Vec<(usize, usize, String)>, Vec<String>) {
        let mut subs = Vec::new();
        let mut stored: HashSet<String> = HashSet::new();
        let mut used_fixtures: Vec<String> = Vec::new();
        let in_lifecycle = method.lifecycle.is_some();
        let class_lifecycle = matches!(
            method.lifecycle,
            Some(LifecycleKind::SetUpClass | LifecycleKind::TearDownClass)
        );
        for r in &method.self_refs {
            let is_fixture = self.fixture_names.iter().any(|f| f == &r.attr);
            let replacement = if self.demote {
                let rename = if in_lifecycle {
                    !r.is_call
                } else {
                    is_fixture
                        || self.consts.iter().any(|(n, _)| n == &r.attr)
                        || stored.contains(&r.attr)
                };
                rename.then(|| r.attr.clone())
            } else if class_lifecycle && !r.is_call {
                Some(format!("request.cls.{}", r.attr))
            } else {
                None
            };
            if r.is_store {
                stored.insert(r.attr.clone());
            }
            if let Some(t) = replacement {
                subs.push((r.span.start, r.span.end, t));
            }
            if self.demote && is_fixture && !in_lifecycle && !used_fixtures.contains(&r.attr) {
                used_fixtures.push(r.attr.clone());
            }
        }

        let mut convert_ok: HashMap<String, (usize, usize)> = HashMap::new();
        for call in &method.assertions {
            if let AssertionUsage::WithItem { as_name: Some(name), .. } = &call.usage {
                let entry = convert_ok.entry(name.clone()).or_insert((0, 0));
                entry.1 += 1;
                if map_assertion(self.table, self.src, call, &[], self.opts.idiomatic_approx)
                    .is_ok()
                {
                    entry.0 += 1;
                }
            }
        }
        for (name, span) in &method.exception_refs {
            if convert_ok.get(name).map(|(ok, total)| *ok == *total && *total > 0).unwrap_or(false)
            {
                subs.push((span.start, span.end, format!("{}.value", name)));
            }
        }
        subs.sort_by_key(|(s, _, _)| *s);
        let order: HashMap<&str, usize> = self
            .fixture_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        used_fixtures.sort_by_key(|n| order[n.as_str()]);
        (subs, used_fixtures)
    }

    /// Map every assertion, control call, and decorator in a method.
    /// Returns absolute edits including standalone renames not covered by
    /// a mapped call.
    fn method_edits(&mut self, method: &TestFunction) -> MethodEdits {
        let (subs, fixture_params) = self.method_subs(method);
        let mut edits: Vec<(usize, usize, String)> = Vec::new();
        for call in method.assertions.iter().chain(&method.control_calls) {
            match map_assertion(self.table, self.src, call, &subs, self.opts.idiomatic_approx) {
                Ok(rw) => {
                    self.out.assertions_rewritten += 1;
                    self.out.needs_pytest |= rw.needs_pytest;
                    self.out.needs_re |= rw.needs_re;
                    edits.extend(rw.edits);
                }
                Err(residual) => self.out.residuals.push(residual),
            }
        }
        for dec in &method.decorators {
            match map_decorator(dec, self.src, &subs) {
                Some(Ok(rw)) => {
                    self.out.decorators_rewritten += 1;
                    self.out.needs_pytest = true;
                    edits.extend(rw.edits);
                }
                Some(Err(residual)) => self.out.residuals.push(residual),
                None => {}
            }
        }
        for (s, e, t) in &subs {
            if !edits.iter().any(|(es, ee, _)| es <= s && e <= ee) {
                edits.push((*s, *e, t.clone()));
            }
        }
        edits.sort_by_key(|(s, _, _)| *s);
        MethodEdits { edits, fixture_params }
    }

    fn stmt_text(
        &self,
        span: SourceSpan,
        edits: &[(usize, usize, String)],
        target_indent: usize,
    ) -> String {
        let body = apply_edits_in(self.src, span.start, span.end, edits);
        let from = text::indent_at(self.src, span.start).len();
        text::reindent(&body, from, target_indent)
    }

    /// Render one named fixture for the demoted form, at module level.
    fn render_fixture(&self, f: &FixtureDef, edits: &[(usize, usize, String)]) -> String {
        let marker = if f.class_scope {
            "@pytest.fixture(scope=\"module\")".to_string()
        } else {
            "@pytest.fixture".to_string()
        };
        let mut lines = vec![marker, format!("def {}({}):", f.name, f.deps.join(", "))];
        for span in &f.pre {
            lines.push(format!("    {}", self.stmt_text(*span, edits, 4)));
        }
        match &f.value_span {
            Some(value) => {
                let value_text = {
                    let rendered = apply_edits_in(self.src, value.start, value.end, edits);
                    let from = text::indent_at(self.src, value.start).len();
                    text::reindent(&rendered, from, 4)
                };
                if f.post.is_empty() && f.teardown.is_empty() {
                    lines.push(format!("    return {}", value_text));
                } else {
                    lines.push(format!("    {} = {}", f.name, value_text));
                    for span in &f.post {
                        lines.push(format!("    {}", self.stmt_text(*span, edits, 4)));
                    }
                    if f.teardown.is_empty() {
                        lines.push(format!("    return {}", f.name));
                    } else {
                        lines.push(format!("    yield {}", f.name));
                        for span in &f.teardown {
                            lines.push(format!("    {}", self.stmt_text(*span, edits, 4)));
                        }
                    }
                }
            }
            None => {
                if f.teardown.is_empty() {
                    if f.pre.is_empty() {
                        lines.push("    pass".to_string());
                    }
                } else {
                    lines.push("    yield".to_string());
                    for span in &f.teardown {
                        lines.push(format!("    {}", self.stmt_text(*span, edits, 4)));
                    }
                }
            }
        }
        lines.join("\n")
    }

    fn map_class_decorators(&mut self) {
        for dec in &self.class.decorators {
            match map_decorator(dec, self.src, &[]) {
                Some(Ok(rw)) => {
                    self.out.decorators_rewritten += 1;
                    self.out.needs_pytest = true;
                    self.out.edits.extend(rw.edits);
                }
                Some(Err(residual)) => self.out.residuals.push(residual),
                None => {}
            }
        }
    }

    fn keep_class(&mut self) {
        let class = self.class;
        self.rewrite_header();
        self.map_class_decorators();
        let find = |kind: LifecycleKind| class.methods.iter().find(|m| m.lifecycle == Some(kind));
        let pairs = [
            (LifecycleKind::SetUp, LifecycleKind::TearDown, false),
            (LifecycleKind::SetUpClass, LifecycleKind::TearDownClass, true),
        ];
        for (setup_kind, teardown_kind, class_scope) in pairs {
            let setup = find(setup_kind);
            let teardown = find(teardown_kind);
            let Some(anchor) = setup.or(teardown) else {
                continue;
            };
            let mut edits: Vec<(usize, usize, String)> = Vec::new();
            for method in [setup, teardown].into_iter().flatten() {
                let me = self.method_edits(method);
                edits.extend(me.edits);
            }
            let rendered = self.render_state_fixture(setup, teardown, class_scope, &edits);
            let indent = text::indent_at(self.src, anchor.span.start).len();
            self.out.edits.push((
                anchor.span.start,
                anchor.span.end,
                rendered[indent..].to_string(),
            ));
            if let (Some(_), Some(td)) = (setup, teardown) {
                let (s, e) = expand_deletion(self.src, td.span);
                self.out.edits.push((s, e, String::new()));
            }
            self.out.fixtures_created += 1;
            self.out.needs_pytest = true;
        }
        for method in &class.methods {
            if method.lifecycle.is_some() {
                continue;
            }
            let me = self.method_edits(method);
            self.out.edits.extend(me.edits);
        }
        self.flag_testcase_apis();
    }

    /// An autouse fixture that assigns the same `self`/`request.cls`
    /// attributes the lifecycle hooks did, body text preserved.
    fn render_state_fixture(
        &self,
        setup: Option<&TestFunction>,
        teardown: Option<&TestFunction>,
        class_scope: bool,
        edits: &[(usize, usize, String)],
    ) -> String {
        let anchor = setup.or(teardown).expect("at least one lifecycle hook");
        let indent = text::indent_at(self.src, anchor.span.start).len();
        let pad = " ".repeat(indent);
        let body_pad = " ".repeat(indent + 4);
        let marker = if class_scope {
            format!("{}@pytest.fixture(scope=\"class\", autouse=True)", pad)
        } else {
            format!("{}@pytest.fixture(autouse=True)", pad)
        };
        let name = self.free_name(if class_scope { "_class_setup" } else { "_setup" });
        let params = if class_scope { "self, request" } else { "self" };
        let mut lines = vec![marker, format!("{}def {}({}):", pad, name, params)];
        if let Some(m) = setup {
            let body = apply_edits_in(self.src, m.body_span.start, m.body_span.end, edits);
            let from = text::indent_at(self.src, m.body_span.start).len();
            lines.push(format!("{}{}", body_pad, text::reindent(&body, from, indent + 4)));
        }
        if let Some(m) = teardown {
            lines.push(format!("{}yield", body_pad));
            let body = apply_edits_in(self.src, m.body_span.start, m.body_span.end, edits);
            let from = text::indent_at(self.src, m.body_span.start).len();
            lines.push(format!("{}{}", body_pad, text::reindent(&body, from, indent + 4)));
        }
        lines.join("\n")
    }

    fn free_name(&self, base: &str) -> String {
        let used: HashSet<&str> = self.class.methods.iter().map(|m| m.name.as_str()).collect();
        if !used.contains(base) {
            return base.to_string();
        }
        let mut i = 2;
        loop {
            let candidate = format!("{}{}", base, i);
            if !used.contains(candidate.as_str()) {
                return candidate;
            }
            i += 1;
        }
    }

    fn flag_testcase_apis(&mut self) {
        for method in &self.class.methods {
            for r in &method.self_refs {
                if r.is_call && TESTCASE_APIS.contains(&r.attr.as_str()) {
                    self.out.residuals.push(Residual {
                        kind: ResidualKind::UnknownMethod,
                        span: r.span,
                        detail: format!(
                            "self.{} relies on TestCase machinery that is gone after migration",
                            r.attr
                        ),
                    });
                }
            }
        }
    }

    fn rewrite_header(&mut self) {
        let class = self.class;
        let kept: Vec<&str> = class
            .bases
            .iter()
            .filter(|b| !TESTCASE_ROOTS.contains(&self.module.resolve(b).as_str()))
            .map(|s| s.as_str())
            .collect();
        let header = if kept.is_empty() {
            format!("class {}:", class.name)
        } else {
            format!("class {}({}):", class.name, kept.join(", "))
        };
        self.out.edits.push((class.header_span.start, class.header_span.end, header));
    }

    fn demote_class(&mut self) {
        let class = self.class;
        let mut parts: Vec<String> = Vec::new();
        if !self.consts.is_empty() {
            let consts = self
                .consts
                .iter()
                .map(|(_, span)| self.stmt_text(*span, &[], 0))
                .collect::<Vec<_>>()
                .join("\n");
            parts.push(consts);
        }

        // Fixture bodies may contain assertion rewrites and renames from
        // the lifecycle methods they came from.
        let mut lifecycle_edits: Vec<(usize, usize, String)> = Vec::new();
        for method in &class.methods {
            if method.lifecycle.is_some() {
                let me = self.method_edits(method);
                lifecycle_edits.extend(me.edits);
            }
        }
        for f in &self.plan.fixtures {
            parts.push(self.render_fixture(f, &lifecycle_edits));
        }

        for method in &class.methods {
            if method.lifecycle.is_some() {
                continue;
            }
            let me = self.method_edits(method);
            let mut lines: Vec<String> = Vec::new();
            for dec in &method.decorators {
                let mapped = me
                    .edits
                    .iter()
                    .find(|(s, e, _)| *s == dec.line_span.start && *e == dec.span.end);
                match mapped {
                    Some((_, _, t)) => lines.push(t.clone()),
                    None => {
                        let raw = self.src[dec.line_span.start..dec.span.end].to_string();
                        let from = text::indent_at(self.src, dec.line_span.start).len();
                        lines.push(text::reindent(&raw, from, 0));
                    }
                }
            }
            let mut params: Vec<String> = me.fixture_params.clone();
            for p in method.params.iter().skip(1) {
                params.push(p.clone());
            }
            let prefix = if method.is_async { "async def" } else { "def" };
            lines.push(format!("{} {}({}):", prefix, method.name, params.join(", ")));
            let body_edits: Vec<(usize, usize, String)> = me
                .edits
                .iter()
                .filter(|(s, _, _)| *s >= method.body_span.start)
                .cloned()
                .collect();
            let body = apply_edits_in(
                self.src,
                method.body_span.start,
                method.body_span.end,
                &body_edits,
            );
            let from = text::indent_at(self.src, method.body_span.start).len();
            lines.push(format!("    {}", text::reindent(&body, from, 4)));
            parts.push(lines.join("\n"));
        }

        if parts.is_empty() {
            let (s, e) = expand_deletion(self.src, class.span);
            self.out.edits.push((s, e, String::new()));
        } else {
            self.out.edits.push((class.span.start, class.span.end, parts.join("\n\n\n")));
        }
    }
}

/// Apply the subset of `edits` that falls inside `[start, end)` to that
/// slice of `src`.
pub fn apply_edits_in(
    src: &str,
    start: usize,
    end: usize,
    edits: &[(usize, usize, String)],
) -> String {
    let mut set = EditSet::new();
    for (s, e, t) in edits {
        if *s >= start && *e <= end {
            set.replace_range(s - start, e - start, t.clone());
        }
    }
    set.apply(&src[start..end]).expect("class-local edits overlap")
}

/// Widen a deletion to swallow the line itself plus any blank lines
/// directly above, so removals do not leave double gaps.
pub fn expand_deletion(src: &str, span: SourceSpan) -> (usize, usize) {
    let mut start = text::line_start(src, span.start);
    while start > 0 {
        let prev_start = text::line_start(src, start - 1);
        if src[prev_start..start].trim().is_empty() {
            start = prev_start;
        } else {
            break;
        }
    }
    let end = text::line_end(src, span.end.saturating_sub(1).max(span.start));
    (start, end)
}
