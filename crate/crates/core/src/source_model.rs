//! Lossless structural model of a Python test file.
//!
//! Parsing produces a [`TestModule`] whose every element carries an exact
//! byte span into the original text. Nothing is pretty-printed back from the
//! syntax tree: rewrites are expressed as span replacements in an
//! [`EditSet`], and [`SourceFile::emit`] splices them into the original
//! bytes. Applying an empty edit set therefore reproduces the input
//! byte for byte.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io;
use std::path::{Path, PathBuf};

use rustpython_parser::ast;
use rustpython_parser::ast::Ranged;
use rustpython_parser::Parse;
use serde::{Deserialize, Serialize};

use crate::text::{self, LineIndex, NewlineStyle};

/// Byte span into a source file, with line/column endpoints for reporting.
/// Lines and columns are 1-based; columns count bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub start_line: usize,
    pub start_col: usize,
    pub end_line: usize,
    pub end_col: usize,
}

impl SourceSpan {
    pub fn slice<'a>(&self, source: &'a str) -> &'a str {
        &source[self.start..self.end]
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, other: &SourceSpan) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}..{}:{}", self.start_line, self.start_col, self.end_line, self.end_col)
    }
}

/// A source file held in memory together with its path and newline style.
#[derive(Debug, Clone)]
pub struct SourceFile {
    path: PathBuf,
    text: String,
    newline: NewlineStyle,
    index: LineIndex,
}

impl SourceFile {
    pub fn new(path: impl Into<PathBuf>, text: impl Into<String>) -> SourceFile {
        let text = text.into();
        let newline = NewlineStyle::detect(&text);
        let index = LineIndex::new(&text);
        SourceFile { path: path.into(), text, newline, index }
    }

    pub fn read(path: impl AsRef<Path>) -> io::Result<SourceFile> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Ok(SourceFile::new(path, text))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn newline(&self) -> NewlineStyle {
        self.newline
    }

    /// Build a span from byte offsets, resolving line/column endpoints.
    pub fn span(&self, start: usize, end: usize) -> SourceSpan {
        let (start_line, start_col) = self.index.line_col(start);
        let (end_line, end_col) = self.index.line_col(end);
        SourceSpan { start, end, start_line, start_col, end_line, end_col }
    }

    /// Apply an edit set to this file's text.
    pub fn emit(&self, edits: &EditSet) -> Result<String, OverlapError> {
        edits.apply(&self.text)
    }
}

/// Two edits claimed overlapping byte ranges.
#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
#[error("overlapping edits: bytes {first_start}..{first_end} and {second_start}..{second_end}")]
pub struct OverlapError {
    pub first_start: usize,
    pub first_end: usize,
    pub second_start: usize,
    pub second_end: usize,
}

#[derive(Debug, Clone)]
struct Edit {
    start: usize,
    end: usize,
    replacement: String,
    seq: usize,
}

/// An ordered collection of replacements and insertions against one file.
/// Ranges must not overlap; insertions (zero-width edits) may touch the
/// boundaries of other edits and preserve their insertion order when
/// several land on the same offset.
#[derive(Debug, Clone, Default)]
pub struct EditSet {
    edits: Vec<Edit>,
}

impl EditSet {
    pub fn new() -> EditSet {
        EditSet::default()
    }

    pub fn is_empty(&self) -> bool {
        self.edits.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edits.len()
    }

    pub fn replace(&mut self, span: &SourceSpan, replacement: impl Into<String>) {
        self.replace_range(span.start, span.end, replacement);
    }

    pub fn replace_range(&mut self, start: usize, end: usize, replacement: impl Into<String>) {
        let seq = self.edits.len();
        self.edits.push(Edit { start, end, replacement: replacement.into(), seq });
    }

    pub fn delete(&mut self, span: &SourceSpan) {
        self.replace_range(span.start, span.end, "");
    }

    pub fn insert(&mut self, offset: usize, textual: impl Into<String>) {
        self.replace_range(offset, offset, textual);
    }

    /// Splice the edits into `original`. Fails if any two edits overlap.
    pub fn apply(&self, original: &str) -> Result<String, OverlapError> {
        let mut sorted: Vec<&Edit> = self.edits.iter().collect();
        sorted.sort_by_key(|e| (e.start, e.end, e.seq));
        let mut out = String::with_capacity(original.len());
        let mut cursor = 0usize;
        let mut prev: Option<&Edit> = None;
        for edit in sorted {
            if edit.start < cursor {
                let p = prev.expect("cursor advanced without a previous edit");
                return Err(OverlapError {
                    first_start: p.start,
                    first_end: p.end,
                    second_start: edit.start,
                    second_end: edit.end,
                });
            }
            out.push_str(&original[cursor..edit.start]);
            out.push_str(&edit.replacement);
            cursor = edit.end;
            prev = Some(edit);
        }
        out.push_str(&original[cursor..]);
        Ok(out)
    }
}

/// Parsing failed; reported with 1-based line and column.
#[derive(Debug, Clone, thiserror::Error)]
#[error("{path}:{line}:{col}: {message}")]
pub struct ParseFailure {
    pub path: String,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// One `import` or `from ... import` statement.
#[derive(Debug, Clone)]
pub struct ImportStatement {
    pub span: SourceSpan,
    /// `Some` for `from X import ...`; dots are kept for relative imports.
    pub module: Option<String>,
    pub names: Vec<ImportedName>,
}

#[derive(Debug, Clone)]
pub struct ImportedName {
    pub name: String,
    pub alias: Option<String>,
    pub span: SourceSpan,
}

impl ImportStatement {
    /// Flattened (dotted name, alias, span) view; the span is the name's own
    /// span so partial removal from multi-name statements stays possible.
    pub fn entries(&self) -> impl Iterator<Item = (String, Option<&str>, SourceSpan)> + '_ {
        self.names.iter().map(move |n| {
            let dotted = match &self.module {
                Some(m) => format!("{}.{}", m, n.name),
                None => n.name.clone(),
            };
            (dotted, n.alias.as_deref(), n.span)
        })
    }
}

/// A decorator attached to a function or class.
#[derive(Debug, Clone)]
pub struct Decorator {
    /// Dotted path of the decorator expression (the callee when it is a
    /// call), resolved through import aliases where possible.
    pub dotted: String,
    pub is_call: bool,
    pub args: Vec<ArgInfo>,
    pub keywords: Vec<KwargInfo>,
    /// The decorator expression itself, without the `@`.
    pub span: SourceSpan,
    /// From the `@` through the end of the decorator's last line, including
    /// the trailing newline when present.
    pub line_span: SourceSpan,
}

/// A positional argument: its span plus enough shape information to decide
/// whether it needs parentheses when spliced into a new expression.
#[derive(Debug, Clone, Copy)]
pub struct ArgInfo {
    pub span: SourceSpan,
    /// Binding strength of the expression's top node; see
    /// [`precedence`](crate::source_model::expr_precedence).
    pub precedence: u8,
}

#[derive(Debug, Clone)]
pub struct KwargInfo {
    /// `None` for `**kwargs` splats.
    pub name: Option<String>,
    pub value_span: SourceSpan,
    pub precedence: u8,
}

/// How an assertion call is embedded in its statement.
#[derive(Debug, Clone)]
pub enum AssertionUsage {
    /// The call is itself an expression statement.
    ExprStatement,
    /// The call is a `with` item, e.g. `with self.assertRaises(E) as cm:`.
    WithItem {
        with_span: SourceSpan,
        as_name: Option<String>,
        body_span: SourceSpan,
        item_count: usize,
    },
    /// The call appears inside some larger expression or assignment.
    Embedded,
}

/// One `self.assert*` call site.
#[derive(Debug, Clone)]
pub struct AssertionCall {
    pub method: String,
    pub args: Vec<ArgInfo>,
    pub keywords: Vec<KwargInfo>,
    /// True when any positional argument is `*splat` or a keyword is `**splat`.
    pub has_splat: bool,
    /// The full call expression `self.assertX(...)`.
    pub call_span: SourceSpan,
    /// The innermost statement containing the call.
    pub stmt_span: SourceSpan,
    pub usage: AssertionUsage,
    /// Indentation of the statement's first line.
    pub indent: String,
    /// Name of the enclosing function.
    pub function: String,
}

/// A `self.<attr>` reference inside a method.
#[derive(Debug, Clone)]
pub struct SelfRef {
    pub attr: String,
    /// Span covering `self.<attr>`.
    pub span: SourceSpan,
    pub is_store: bool,
    /// True when the reference is the callee of a call.
    pub is_call: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LifecycleKind {
    SetUp,
    TearDown,
    SetUpClass,
    TearDownClass,
}

impl LifecycleKind {
    pub fn from_name(name: &str) -> Option<LifecycleKind> {
        match name {
            "setUp" => Some(LifecycleKind::SetUp),
            "tearDown" => Some(LifecycleKind::TearDown),
            "setUpClass" => Some(LifecycleKind::SetUpClass),
            "tearDownClass" => Some(LifecycleKind::TearDownClass),
            _ => None,
        }
    }
}

/// Statement kinds distinguished at the top level of a method body.
#[derive(Debug, Clone)]
pub enum BodyKind {
    /// `self.<attr> = <value>` with a single target.
    AttrAssign { attr: String, value_span: SourceSpan },
    /// An expression statement that is an assertion call; index into
    /// the owning function's `assertions`.
    Assertion(usize),
    /// Any other statement.
    Other,
}

#[derive(Debug, Clone)]
pub struct BodyStmt {
    pub span: SourceSpan,
    pub kind: BodyKind,
}

#[derive(Debug, Clone)]
pub struct TestFunction {
    pub name: String,
    /// Plain parameter names in declaration order, including `self`.
    pub params: Vec<String>,
    pub decorators: Vec<Decorator>,
    pub is_async: bool,
    pub lifecycle: Option<LifecycleKind>,
    /// Full span including decorators.
    pub span: SourceSpan,
    /// From the `def` (or `async`) keyword to the end of the body.
    pub def_span: SourceSpan,
    /// The text between the parameter list's parentheses.
    pub params_span: SourceSpan,
    /// From the first body statement to the end of the last.
    pub body_span: SourceSpan,
    pub docstring: Option<SourceSpan>,
    pub body: Vec<BodyStmt>,
    pub assertions: Vec<AssertionCall>,
    /// `self.fail(...)` and `self.skipTest(...)` call sites, captured with
    /// the same shape as assertions.
    pub control_calls: Vec<AssertionCall>,
    pub self_refs: Vec<SelfRef>,
    /// Spans of `<name>.exception` attribute accesses, keyed by `<name>`;
    /// used to rewrite `cm.exception` after `assertRaises` conversion.
    pub exception_refs: Vec<(String, SourceSpan)>,
}

impl TestFunction {
    pub fn is_test(&self) -> bool {
        self.name.starts_with("test")
    }
}

#[derive(Debug, Clone)]
pub struct TestClass {
    pub name: String,
    /// Base expressions as written.
    pub bases: Vec<String>,
    /// True when a base resolves to `unittest.TestCase` (directly, through
    /// an import alias, or through another class in the same module).
    pub is_testcase: bool,
    pub decorators: Vec<Decorator>,
    pub methods: Vec<TestFunction>,
    /// Class-level statements other than methods and the docstring.
    pub class_attrs: Vec<SourceSpan>,
    pub docstring: Option<SourceSpan>,
    /// Full span including decorators.
    pub span: SourceSpan,
    /// The `class Name(...):` header, from keyword to colon inclusive.
    pub header_span: SourceSpan,
    /// Offset where the class body begins.
    pub body_start: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OtherKind {
    /// `if __name__ == "__main__":` whose body only invokes `unittest.main()`.
    RunnerGuard,
    Statement,
}

#[derive(Debug, Clone)]
pub struct OtherRegion {
    pub span: SourceSpan,
    pub kind: OtherKind,
}

/// Structural description of one parsed test file.
#[derive(Debug, Clone)]
pub struct TestModule {
    pub path: PathBuf,
    pub docstring: Option<SourceSpan>,
    pub imports: Vec<ImportStatement>,
    pub classes: Vec<TestClass>,
    /// Top-level functions.
    pub functions: Vec<TestFunction>,
    pub other: Vec<OtherRegion>,
    /// Local name -> dotted path map built from the imports.
    aliases: HashMap<String, String>,
}

impl TestModule {
    /// Every assertion call in the module, across classes and functions.
    pub fn find_assertions(&self) -> Vec<&AssertionCall> {
        let mut out = Vec::new();
        for class in &self.classes {
            for method in &class.methods {
                out.extend(method.assertions.iter());
            }
        }
        for func in &self.functions {
            out.extend(func.assertions.iter());
        }
        out.sort_by_key(|a| a.call_span.start);
        out
    }

    /// Resolve a local dotted name through the module's import aliases:
    /// `ut.TestCase` becomes `unittest.TestCase` under `import unittest as ut`.
    pub fn resolve(&self, dotted: &str) -> String {
        let mut parts = dotted.splitn(2, '.');
        let head = parts.next().unwrap_or_default();
        let rest = parts.next();
        match (self.aliases.get(head), rest) {
            (Some(full), Some(rest)) => format!("{}.{}", full, rest),
            (Some(full), None) => full.clone(),
            (None, _) => dotted.to_string(),
        }
    }

    /// True when the module imports the given dotted module (plain or from).
    pub fn imports_module(&self, dotted: &str) -> bool {
        self.imports.iter().any(|stmt| {
            stmt.entries().any(|(name, _, _)| name == dotted || name.starts_with(&format!("{}.", dotted)))
                || stmt.module.as_deref() == Some(dotted)
        })
    }
}

fn off(size: ast::text_size::TextSize) -> usize {
    u32::from(size) as usize
}

/// Binding strength of an expression's top-most node, used to decide when a
/// spliced argument needs defensive parentheses. Higher binds tighter.
/// Expressions that are only legal in specific positions (lambdas,
/// conditionals, walrus, generator expressions, splats, `yield`) get 0 so
/// that every template slot wraps them.
pub fn expr_precedence(expr: &ast::Expr) -> u8 {
    match expr {
        ast::Expr::Lambda(_)
        | ast::Expr::IfExp(_)
        | ast::Expr::NamedExpr(_)
        | ast::Expr::GeneratorExp(_)
        | ast::Expr::Starred(_)
        | ast::Expr::Yield(_)
        | ast::Expr::YieldFrom(_) => 0,
        ast::Expr::BoolOp(b) => match b.op {
            ast::BoolOp::Or => 1,
            ast::BoolOp::And => 2,
        },
        ast::Expr::UnaryOp(u) if matches!(u.op, ast::UnaryOp::Not) => 3,
        ast::Expr::Compare(_) => 4,
        ast::Expr::BinOp(b) => match b.op {
            ast::Operator::BitOr => 5,
            ast::Operator::BitXor => 6,
            ast::Operator::BitAnd => 7,
            ast::Operator::LShift | ast::Operator::RShift => 8,
            ast::Operator::Add | ast::Operator::Sub => 9,
            ast::Operator::Pow => 12,
            _ => 10,
        },
        ast::Expr::UnaryOp(_) => 11,
        ast::Expr::Await(_) => 13,
        // Tuples are parenthesized in argument position, so their spans are
        // self-delimiting, but give them a low level so statement-level
        // splices keep the parentheses.
        ast::Expr::Tuple(_) => 0,
        _ => 14,
    }
}

/// Parse a source file into its structural model.
pub fn parse_module(file: &SourceFile) -> Result<TestModule, ParseFailure> {
    let path_str = file.path().display().to_string();
    let suite = ast::Suite::parse(file.text(), &path_str).map_err(|e| {
        let offset = off(e.offset);
        let s = file.span(offset.min(file.text().len()), offset.min(file.text().len()));
        ParseFailure {
            path: path_str.clone(),
            line: s.start_line,
            col: s.start_col,
            message: e.error.to_string(),
        }
    })?;

    let mut harvest = Harvest { file, aliases: HashMap::new() };
    harvest.collect_aliases(&suite);

    let mut module = TestModule {
        path: file.path().to_path_buf(),
        docstring: None,
        imports: Vec::new(),
        classes: Vec::new(),
        functions: Vec::new(),
        other: Vec::new(),
        aliases: harvest.aliases.clone(),
    };

    for (i, stmt) in suite.iter().enumerate() {
        match stmt {
            ast::Stmt::Import(imp) => module.imports.push(harvest.import_plain(imp)),
            ast::Stmt::ImportFrom(imp) => module.imports.push(harvest.import_from(imp)),
            ast::Stmt::ClassDef(class) => module.classes.push(harvest.class_def(class)),
            ast::Stmt::FunctionDef(_) | ast::Stmt::AsyncFunctionDef(_) => {
                module.functions.push(harvest.function_def(stmt));
            }
            ast::Stmt::Expr(e) if i == 0 && is_str_constant(&e.value) => {
                module.docstring = Some(harvest.span_of(stmt.range()));
            }
            _ => {
                let kind = if harvest.is_runner_guard(stmt) {
                    OtherKind::RunnerGuard
                } else {
                    OtherKind::Statement
                };
                module.other.push(OtherRegion { span: harvest.span_of(stmt.range()), kind });
            }
        }
    }

    resolve_testcase_bases(&mut module);
    Ok(module)
}

fn is_str_constant(expr: &ast::Expr) -> bool {
    matches!(expr, ast::Expr::Constant(c) if matches!(c.value, ast::Constant::Str(_)))
}

/// Mark classes inheriting `unittest.TestCase`, directly or through other
/// classes defined in the same module.
fn resolve_testcase_bases(module: &mut TestModule) {
    const ROOTS: [&str; 4] = [
        "unittest.TestCase",
        "unittest.case.TestCase",
        "unittest.IsolatedAsyncioTestCase",
        "unittest.async_case.IsolatedAsyncioTestCase",
    ];
    let mut known: HashSet<String> = HashSet::new();
    loop {
        let mut changed = false;
        for class in &mut module.classes {
            if class.is_testcase {
                continue;
            }
            let hit = class.bases.iter().any(|base| {
                let resolved = {
                    let mut parts = base.splitn(2, '.');
                    let head = parts.next().unwrap_or_default();
                    let rest = parts.next();
                    match (module.aliases.get(head), rest) {
                        (Some(full), Some(rest)) => format!("{}.{}", full, rest),
                        (Some(full), None) => full.clone(),
                        (None, _) => base.clone(),
                    }
                };
                ROOTS.contains(&resolved.as_str()) || known.contains(&resolved)
            });
            if hit {
                class.is_testcase = true;
                known.insert(class.name.clone());
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

struct Harvest<'a> {
    file: &'a SourceFile,
    aliases: HashMap<String, String>,
}

impl<'a> Harvest<'a> {
    fn span_of(&self, range: ast::text_size::TextRange) -> SourceSpan {
        self.file.span(off(range.start()), off(range.end()))
    }

    fn text(&self) -> &str {
        self.file.text()
    }

    fn collect_aliases(&mut self, suite: &[ast::Stmt]) {
        for stmt in suite {
            match stmt {
                ast::Stmt::Import(imp) => {
                    for alias in &imp.names {
                        let name = alias.name.to_string();
                        let local = alias
                            .asname
                            .as_ref()
                            .map(|a| a.to_string())
                            .unwrap_or_else(|| name.split('.').next().unwrap_or(&name).to_string());
                        let target = if alias.asname.is_some() {
                            name
                        } else {
                            name.split('.').next().unwrap_or(&name).to_string()
                        };
                        self.aliases.insert(local, target);
                    }
                }
                ast::Stmt::ImportFrom(imp) => {
                    let module = imp.module.as_ref().map(|m| m.to_string()).unwrap_or_default();
                    for alias in &imp.names {
                        let name = alias.name.to_string();
                        if name == "*" {
                            continue;
                        }
                        let local = alias.asname.as_ref().map(|a| a.to_string()).unwrap_or_else(|| name.clone());
                        let dotted = if module.is_empty() { name.clone() } else { format!("{}.{}", module, name) };
                        self.aliases.insert(local, dotted);
                    }
                }
                _ => {}
            }
        }
    }

    fn import_plain(&self, imp: &ast::StmtImport) -> ImportStatement {
        ImportStatement {
            span: self.span_of(imp.range()),
            module: None,
            names: imp
                .names
                .iter()
                .map(|a| ImportedName {
                    name: a.name.to_string(),
                    alias: a.asname.as_ref().map(|s| s.to_string()),
                    span: self.span_of(a.range()),
                })
                .collect(),
        }
    }

    fn import_from(&self, imp: &ast::StmtImportFrom) -> ImportStatement {
        let level = imp.level.map(|l| l.to_usize()).unwrap_or(0);
        let mut module = ".".repeat(level);
        if let Some(m) = &imp.module {
            module.push_str(m.as_str());
        }
        ImportStatement {
            span: self.span_of(imp.range()),
            module: Some(module),
            names: imp
                .names
                .iter()
                .map(|a| ImportedName {
                    name: a.name.to_string(),
                    alias: a.asname.as_ref().map(|s| s.to_string()),
                    span: self.span_of(a.range()),
                })
                .collect(),
        }
    }

    /// Dotted path of a name/attribute chain, `None` for anything else.
    fn dotted_path(&self, expr: &ast::Expr) -> Option<String> {
        match expr {
            ast::Expr::Name(n) => Some(n.id.to_string()),
            ast::Expr::Attribute(a) => {
                let base = self.dotted_path(&a.value)?;
                Some(format!("{}.{}", base, a.attr))
            }
            _ => None,
        }
    }

    fn resolve(&self, dotted: &str) -> String {
        let mut parts = dotted.splitn(2, '.');
        let head = parts.next().unwrap_or_default();
        let rest = parts.next();
        match (self.aliases.get(head), rest) {
            (Some(full), Some(rest)) => format!("{}.{}", full, rest),
            (Some(full), None) => full.clone(),
            (None, _) => dotted.to_string(),
        }
    }

    fn decorator(&self, expr: &ast::Expr) -> Decorator {
        let expr_span = self.span_of(expr.range());
        let (dotted, is_call, args, keywords) = match expr {
            ast::Expr::Call(call) => {
                let dotted = self.dotted_path(&call.func).unwrap_or_default();
                let args = call.args.iter().map(|a| self.arg_info(a)).collect();
                let keywords = call.keywords.iter().map(|k| self.kwarg_info(k)).collect();
                (dotted, true, args, keywords)
            }
            _ => (self.dotted_path(expr).unwrap_or_default(), false, Vec::new(), Vec::new()),
        };
        let dotted = self.resolve(&dotted);
        let at = self.text()[..expr_span.start]
            .rfind('@')
            .unwrap_or(expr_span.start.saturating_sub(1));
        let line_end = text::line_end(self.text(), expr_span.end.saturating_sub(1).max(expr_span.start));
        Decorator {
            dotted,
            is_call,
            args,
            keywords,
            span: expr_span,
            line_span: self.file.span(at, line_end),
        }
    }

    fn arg_info(&self, expr: &ast::Expr) -> ArgInfo {
        ArgInfo { span: self.span_of(expr.range()), precedence: expr_precedence(expr) }
    }

    fn kwarg_info(&self, kw: &ast::Keyword) -> KwargInfo {
        KwargInfo {
            name: kw.arg.as_ref().map(|a| a.to_string()),
            value_span: self.span_of(kw.value.range()),
            precedence: expr_precedence(&kw.value),
        }
    }

    fn class_def(&self, class: &ast::StmtClassDef) -> TestClass {
        let decorators: Vec<Decorator> = class.decorator_list.iter().map(|d| self.decorator(d)).collect();
        let kw_start = self.keyword_start(class.range(), &decorators);
        let full_start = decorators.first().map(|d| d.line_span.start).unwrap_or(kw_start);
        let end = off(class.range().end());
        let colon = self.header_colon(kw_start);
        let bases: Vec<String> = class.bases.iter().filter_map(|b| self.dotted_path(b)).collect();

        let mut methods = Vec::new();
        let mut class_attrs = Vec::new();
        let mut docstring = None;
        for (i, stmt) in class.body.iter().enumerate() {
            match stmt {
                ast::Stmt::FunctionDef(_) | ast::Stmt::AsyncFunctionDef(_) => {
                    methods.push(self.function_def(stmt));
                }
                ast::Stmt::Expr(e) if i == 0 && is_str_constant(&e.value) => {
                    docstring = Some(self.span_of(stmt.range()));
                }
                _ => class_attrs.push(self.span_of(stmt.range())),
            }
        }

        let body_start = class
            .body
            .first()
            .map(|s| self.stmt_full_start(s))
            .unwrap_or(colon + 1);

        TestClass {
            name: class.name.to_string(),
            bases,
            is_testcase: false,
            decorators,
            methods,
            class_attrs,
            docstring,
            span: self.file.span(full_start, end),
            header_span: self.file.span(kw_start, colon + 1),
            body_start,
        }
    }

    /// Start offset of a statement including any decorators.
    fn stmt_full_start(&self, stmt: &ast::Stmt) -> usize {
        let decorators = match stmt {
            ast::Stmt::FunctionDef(f) => &f.decorator_list,
            ast::Stmt::AsyncFunctionDef(f) => &f.decorator_list,
            ast::Stmt::ClassDef(c) => &c.decorator_list,
            _ => return off(stmt.range().start()),
        };
        let base = off(stmt.range().start());
        decorators
            .first()
            .map(|d| {
                let expr_start = off(d.range().start());
                self.text()[..expr_start].rfind('@').unwrap_or(expr_start)
            })
            .unwrap_or(base)
            .min(base)
    }

    /// Offset of the `def`/`async`/`class` keyword: either the node start
    /// (when the parser excludes decorators) or the first code after the
    /// last decorator line.
    fn keyword_start(&self, range: ast::text_size::TextRange, decorators: &[Decorator]) -> usize {
        let node_start = off(range.start());
        let Some(last) = decorators.last() else {
            return node_start;
        };
        if node_start > last.span.end {
            return node_start;
        }
        let mut i = last.line_span.end;
        let bytes = self.text().as_bytes();
        while i < bytes.len() {
            let line_end = text::line_end(self.text(), i);
            let line = &self.text()[i..line_end];
            if text::is_blank_or_comment(line) {
                i = line_end;
                continue;
            }
            let indent = line.len() - line.trim_start().len();
            return i + indent;
        }
        node_start
    }

    /// Offset of the header's terminating colon, scanning from the keyword
    /// with awareness of strings, comments and bracket nesting.
    fn header_colon(&self, kw_start: usize) -> usize {
        let bytes = self.text().as_bytes();
        let mut depth = 0usize;
        let mut i = kw_start;
        while i < bytes.len() {
            match bytes[i] {
                b'"' | b'\'' => {
                    i = text::skip_string(self.text(), i);
                    continue;
                }
                b'#' => {
                    i = text::line_end(self.text(), i);
                    continue;
                }
                b'(' | b'[' | b'{' => depth += 1,
                b')' | b']' | b'}' => depth = depth.saturating_sub(1),
                b':' if depth == 0 => return i,
                _ => {}
            }
            i += 1;
        }
        kw_start
    }

    fn function_def(&self, stmt: &ast::Stmt) -> TestFunction {
        let (name, args, body, decorator_list, is_async, range) = match stmt {
            ast::Stmt::FunctionDef(f) => (&f.name, &f.args, &f.body, &f.decorator_list, false, f.range()),
            ast::Stmt::AsyncFunctionDef(f) => (&f.name, &f.args, &f.body, &f.decorator_list, true, f.range()),
            _ => unreachable!("function_def called on a non-function statement"),
        };

        let decorators: Vec<Decorator> = decorator_list.iter().map(|d| self.decorator(d)).collect();
        let kw_start = self.keyword_start(range, &decorators);
        let full_start = decorators.first().map(|d| d.line_span.start).unwrap_or(kw_start);
        let end = off(range.end());

        let params = param_names(args);

        let open_paren = self.text()[kw_start..]
            .find('(')
            .map(|i| kw_start + i)
            .unwrap_or(kw_start);
        let close_paren = text::find_balanced(self.text(), open_paren).unwrap_or(open_paren);
        let params_span = self.file.span(open_paren + 1, close_paren);

        let body_start = body.first().map(|s| self.stmt_full_start(s)).unwrap_or(end);
        let body_end = body.last().map(|s| off(s.range().end())).unwrap_or(end);

        let docstring = match body.first() {
            Some(ast::Stmt::Expr(e)) if is_str_constant(&e.value) => Some(self.span_of(e.range())),
            _ => None,
        };

        let mut walker = FunctionWalk {
            harvest: self,
            assertions: Vec::new(),
            control_calls: Vec::new(),
            self_refs: Vec::new(),
            exception_refs: Vec::new(),
            function: name.to_string(),
        };
        let mut body_stmts = Vec::new();
        for s in body {
            let kind = walker.walk_stmt(s);
            body_stmts.push(BodyStmt { span: walker.harvest.span_of(s.range()), kind });
        }

        TestFunction {
            name: name.to_string(),
            params,
            decorators,
            is_async,
            lifecycle: LifecycleKind::from_name(name.as_str()),
            span: self.file.span(full_start, end),
            def_span: self.file.span(kw_start, end),
            params_span,
            body_span: self.file.span(body_start, body_end),
            docstring,
            body: body_stmts,
            assertions: walker.assertions,
            control_calls: walker.control_calls,
            self_refs: walker.self_refs,
            exception_refs: walker.exception_refs,
        }
    }

    fn is_runner_guard(&self, stmt: &ast::Stmt) -> bool {
        let ast::Stmt::If(ifstmt) = stmt else {
            return false;
        };
        if !ifstmt.orelse.is_empty() {
            return false;
        }
        let ast::Expr::Compare(cmp) = ifstmt.test.as_ref() else {
            return false;
        };
        let mentions_main = |e: &ast::Expr| match e {
            ast::Expr::Name(n) => n.id.as_str() == "__name__",
            ast::Expr::Constant(c) => matches!(&c.value, ast::Constant::Str(s) if s == "__main__"),
            _ => false,
        };
        let guard_ok = mentions_main(&cmp.left)
            && cmp.comparators.len() == 1
            && mentions_main(&cmp.comparators[0])
            && matches!(cmp.ops.as_slice(), [ast::CmpOp::Eq]);
        if !guard_ok {
            return false;
        }
        ifstmt.body.len() == 1
            && match &ifstmt.body[0] {
                ast::Stmt::Expr(e) => match e.value.as_ref() {
                    ast::Expr::Call(call) => self
                        .dotted_path(&call.func)
                        .map(|d| self.resolve(&d) == "unittest.main")
                        .unwrap_or(false),
                    _ => false,
                },
                _ => false,
            }
    }
}

fn param_names(args: &ast::Arguments) -> Vec<String> {
    let mut out = Vec::new();
    for a in &args.posonlyargs {
        out.push(a.def.arg.to_string());
    }
    for a in &args.args {
        out.push(a.def.arg.to_string());
    }
    if let Some(v) = &args.vararg {
        out.push(format!("*{}", v.arg));
    }
    for a in &args.kwonlyargs {
        out.push(a.def.arg.to_string());
    }
    if let Some(k) = &args.kwarg {
        out.push(format!("**{}", k.arg));
    }
    out
}

struct FunctionWalk<'h, 'a> {
    harvest: &'h Harvest<'a>,
    assertions: Vec<AssertionCall>,
    control_calls: Vec<AssertionCall>,
    self_refs: Vec<SelfRef>,
    exception_refs: Vec<(String, SourceSpan)>,
    function: String,
}

impl FunctionWalk<'_, '_> {
    /// Walk one statement, recording assertions and self references, and
    /// return its body kind for top-level classification.
    fn walk_stmt(&mut self, stmt: &ast::Stmt) -> BodyKind {
        let stmt_span = self.harvest.span_of(stmt.range());
        match stmt {
            ast::Stmt::Assign(assign) => {
                self.walk_expr(&assign.value, stmt_span, false);
                for target in &assign.targets {
                    self.walk_target(target);
                }
                if let [ast::Expr::Attribute(attr)] = assign.targets.as_slice() {
                    if is_self_name(&attr.value) {
                        return BodyKind::AttrAssign {
                            attr: attr.attr.to_string(),
                            value_span: self.harvest.span_of(assign.value.range()),
                        };
                    }
                }
                BodyKind::Other
            }
            ast::Stmt::AugAssign(assign) => {
                self.walk_expr(&assign.value, stmt_span, false);
                self.walk_target(&assign.target);
                BodyKind::Other
            }
            ast::Stmt::AnnAssign(assign) => {
                if let Some(v) = &assign.value {
                    self.walk_expr(v, stmt_span, false);
                }
                self.walk_target(&assign.target);
                BodyKind::Other
            }
            ast::Stmt::Expr(e) => {
                let before = self.assertions.len();
                self.walk_expr(&e.value, stmt_span, true);
                if self.assertions.len() == before + 1
                    && matches!(self.assertions[before].usage, AssertionUsage::ExprStatement)
                {
                    BodyKind::Assertion(before)
                } else {
                    BodyKind::Other
                }
            }
            ast::Stmt::With(w) => {
                self.walk_with(&w.items, &w.body, stmt_span);
                BodyKind::Other
            }
            ast::Stmt::AsyncWith(w) => {
                self.walk_with(&w.items, &w.body, stmt_span);
                BodyKind::Other
            }
            ast::Stmt::If(s) => {
                self.walk_expr(&s.test, stmt_span, false);
                self.walk_block(&s.body);
                self.walk_block(&s.orelse);
                BodyKind::Other
            }
            ast::Stmt::For(s) => {
                self.walk_expr(&s.iter, stmt_span, false);
                self.walk_target(&s.target);
                self.walk_block(&s.body);
                self.walk_block(&s.orelse);
                BodyKind::Other
            }
            ast::Stmt::AsyncFor(s) => {
                self.walk_expr(&s.iter, stmt_span, false);
                self.walk_target(&s.target);
                self.walk_block(&s.body);
                self.walk_block(&s.orelse);
                BodyKind::Other
            }
            ast::Stmt::While(s) => {
                self.walk_expr(&s.test, stmt_span, false);
                self.walk_block(&s.body);
                self.walk_block(&s.orelse);
                BodyKind::Other
            }
            ast::Stmt::Try(s) => {
                self.walk_block(&s.body);
                for handler in &s.handlers {
                    let ast::ExceptHandler::ExceptHandler(h) = handler;
                    self.walk_block(&h.body);
                }
                self.walk_block(&s.orelse);
                self.walk_block(&s.finalbody);
                BodyKind::Other
            }
            ast::Stmt::Return(r) => {
                if let Some(v) = &r.value {
                    self.walk_expr(v, stmt_span, false);
                }
                BodyKind::Other
            }
            ast::Stmt::Raise(r) => {
                if let Some(e) = &r.exc {
                    self.walk_expr(e, stmt_span, false);
                }
                if let Some(c) = &r.cause {
                    self.walk_expr(c, stmt_span, false);
                }
                BodyKind::Other
            }
            ast::Stmt::Assert(a) => {
                self.walk_expr(&a.test, stmt_span, false);
                if let Some(m) = &a.msg {
                    self.walk_expr(m, stmt_span, false);
                }
                BodyKind::Other
            }
            ast::Stmt::Delete(d) => {
                for t in &d.targets {
                    self.walk_target(t);
                }
                BodyKind::Other
            }
            _ => BodyKind::Other,
        }
    }

    fn walk_block(&mut self, stmts: &[ast::Stmt]) {
        for s in stmts {
            self.walk_stmt(s);
        }
    }

    fn walk_with(&mut self, items: &[ast::WithItem], body: &[ast::Stmt], with_span: SourceSpan) {
        let body_start = body.first().map(|s| off(s.range().start())).unwrap_or(with_span.end);
        let body_end = body.last().map(|s| off(s.range().end())).unwrap_or(with_span.end);
        let body_span = self.harvest.file.span(body_start, body_end);
        for item in items {
            let as_name = item.optional_vars.as_deref().and_then(|v| match v {
                ast::Expr::Name(n) => Some(n.id.to_string()),
                _ => None,
            });
            if let ast::Expr::Call(call) = &item.context_expr {
                if let Some((method, control)) = self_special_method(&call.func) {
                    self.record_assertion(
                        method,
                        call,
                        with_span,
                        AssertionUsage::WithItem {
                            with_span,
                            as_name: as_name.clone(),
                            body_span,
                            item_count: items.len(),
                        },
                        control,
                    );
                    for arg in &call.args {
                        self.walk_expr_inner(arg, with_span);
                    }
                    for kw in &call.keywords {
                        self.walk_expr_inner(&kw.value, with_span);
                    }
                    continue;
                }
            }
            self.walk_expr(&item.context_expr, with_span, false);
        }
        self.walk_block(body);
    }

    fn walk_target(&mut self, target: &ast::Expr) {
        match target {
            ast::Expr::Attribute(attr) if is_self_name(&attr.value) => {
                self.self_refs.push(SelfRef {
                    attr: attr.attr.to_string(),
                    span: self.harvest.span_of(attr.range()),
                    is_store: true,
                    is_call: false,
                });
            }
            ast::Expr::Tuple(t) => {
                for e in &t.elts {
                    self.walk_target(e);
                }
            }
            ast::Expr::List(l) => {
                for e in &l.elts {
                    self.walk_target(e);
                }
            }
            ast::Expr::Starred(s) => self.walk_target(&s.value),
            ast::Expr::Subscript(s) => {
                self.walk_expr_inner(&s.value, self.harvest.span_of(s.range()));
                self.walk_expr_inner(&s.slice, self.harvest.span_of(s.range()));
            }
            ast::Expr::Attribute(attr) => {
                self.walk_expr_inner(&attr.value, self.harvest.span_of(attr.range()));
            }
            _ => {}
        }
    }

    /// Walk an expression that forms (part of) a statement.
    fn walk_expr(&mut self, expr: &ast::Expr, stmt_span: SourceSpan, is_stmt_value: bool) {
        if let ast::Expr::Call(call) = expr {
            if let Some((method, control)) = self_special_method(&call.func) {
                let usage = if is_stmt_value {
                    AssertionUsage::ExprStatement
                } else {
                    AssertionUsage::Embedded
                };
                self.record_assertion(method, call, stmt_span, usage, control);
                for arg in &call.args {
                    self.walk_expr_inner(arg, stmt_span);
                }
                for kw in &call.keywords {
                    self.walk_expr_inner(&kw.value, stmt_span);
                }
                return;
            }
        }
        self.walk_expr_inner(expr, stmt_span);
    }

    /// Recursive expression walk: records self references, nested assertion
    /// calls (as embedded) and `<name>.exception` accesses.
    fn walk_expr_inner(&mut self, expr: &ast::Expr, stmt_span: SourceSpan) {
        match expr {
            ast::Expr::Attribute(attr) => {
                if is_self_name(&attr.value) {
                    self.self_refs.push(SelfRef {
                        attr: attr.attr.to_string(),
                        span: self.harvest.span_of(attr.range()),
                        is_store: false,
                        is_call: false,
                    });
                    return;
                }
                if attr.attr.as_str() == "exception" {
                    if let ast::Expr::Name(n) = attr.value.as_ref() {
                        self.exception_refs
                            .push((n.id.to_string(), self.harvest.span_of(attr.range())));
                    }
                }
                self.walk_expr_inner(&attr.value, stmt_span);
            }
            ast::Expr::Call(call) => {
                if let Some((method, control)) = self_special_method(&call.func) {
                    self.record_assertion(method, call, stmt_span, AssertionUsage::Embedded, control);
                } else if let ast::Expr::Attribute(attr) = call.func.as_ref() {
                    if is_self_name(&attr.value) {
                        self.self_refs.push(SelfRef {
                            attr: attr.attr.to_string(),
                            span: self.harvest.span_of(attr.range()),
                            is_store: false,
                            is_call: true,
                        });
                    } else {
                        self.walk_expr_inner(&call.func, stmt_span);
                    }
                } else {
                    self.walk_expr_inner(&call.func, stmt_span);
                }
                for arg in &call.args {
                    self.walk_expr_inner(arg, stmt_span);
                }
                for kw in &call.keywords {
                    self.walk_expr_inner(&kw.value, stmt_span);
                }
            }
            ast::Expr::BoolOp(e) => {
                for v in &e.values {
                    self.walk_expr_inner(v, stmt_span);
                }
            }
            ast::Expr::BinOp(e) => {
                self.walk_expr_inner(&e.left, stmt_span);
                self.walk_expr_inner(&e.right, stmt_span);
            }
            ast::Expr::UnaryOp(e) => self.walk_expr_inner(&e.operand, stmt_span),
            ast::Expr::Compare(e) => {
                self.walk_expr_inner(&e.left, stmt_span);
                for c in &e.comparators {
                    self.walk_expr_inner(c, stmt_span);
                }
            }
            ast::Expr::IfExp(e) => {
                self.walk_expr_inner(&e.test, stmt_span);
                self.walk_expr_inner(&e.body, stmt_span);
                self.walk_expr_inner(&e.orelse, stmt_span);
            }
            ast::Expr::Tuple(e) => {
                for v in &e.elts {
                    self.walk_expr_inner(v, stmt_span);
                }
            }
            ast::Expr::List(e) => {
                for v in &e.elts {
                    self.walk_expr_inner(v, stmt_span);
                }
            }
            ast::Expr::Set(e) => {
                for v in &e.elts {
                    self.walk_expr_inner(v, stmt_span);
                }
            }
            ast::Expr::Dict(e) => {
                for k in e.keys.iter().flatten() {
                    self.walk_expr_inner(k, stmt_span);
                }
                for v in &e.values {
                    self.walk_expr_inner(v, stmt_span);
                }
            }
            ast::Expr::Subscript(e) => {
                self.walk_expr_inner(&e.value, stmt_span);
                self.walk_expr_inner(&e.slice, stmt_span);
            }
            ast::Expr::Starred(e) => self.walk_expr_inner(&e.value, stmt_span),
            ast::Expr::Lambda(e) => self.walk_expr_inner(&e.body, stmt_span),
            ast::Expr::Await(e) => self.walk_expr_inner(&e.value, stmt_span),
            ast::Expr::Yield(e) => {
                if let Some(v) = &e.value {
                    self.walk_expr_inner(v, stmt_span);
                }
            }
            ast::Expr::YieldFrom(e) => self.walk_expr_inner(&e.value, stmt_span),
            ast::Expr::NamedExpr(e) => {
                self.walk_expr_inner(&e.target, stmt_span);
                self.walk_expr_inner(&e.value, stmt_span);
            }
            ast::Expr::FormattedValue(e) => self.walk_expr_inner(&e.value, stmt_span),
            ast::Expr::JoinedStr(e) => {
                for v in &e.values {
                    self.walk_expr_inner(v, stmt_span);
                }
            }
            ast::Expr::Slice(e) => {
                for part in [&e.lower, &e.upper, &e.step].into_iter().flatten() {
                    self.walk_expr_inner(part, stmt_span);
                }
            }
            ast::Expr::ListComp(e) => {
                self.walk_expr_inner(&e.elt, stmt_span);
                self.walk_comprehensions(&e.generators, stmt_span);
            }
            ast::Expr::SetComp(e) => {
                self.walk_expr_inner(&e.elt, stmt_span);
                self.walk_comprehensions(&e.generators, stmt_span);
            }
            ast::Expr::GeneratorExp(e) => {
                self.walk_expr_inner(&e.elt, stmt_span);
                self.walk_comprehensions(&e.generators, stmt_span);
            }
            ast::Expr::DictComp(e) => {
                self.walk_expr_inner(&e.key, stmt_span);
                self.walk_expr_inner(&e.value, stmt_span);
                self.walk_comprehensions(&e.generators, stmt_span);
            }
            _ => {}
        }
    }

    fn walk_comprehensions(&mut self, gens: &[ast::Comprehension], stmt_span: SourceSpan) {
        for g in gens {
            self.walk_expr_inner(&g.iter, stmt_span);
            for cond in &g.ifs {
                self.walk_expr_inner(cond, stmt_span);
            }
        }
    }

    fn record_assertion(
        &mut self,
        method: String,
        call: &ast::ExprCall,
        stmt_span: SourceSpan,
        usage: AssertionUsage,
        control: bool,
    ) {
        let has_splat = call.args.iter().any(|a| matches!(a, ast::Expr::Starred(_)))
            || call.keywords.iter().any(|k| k.arg.is_none());
        let call_span = self.harvest.span_of(call.range());
        let indent = text::indent_at(self.harvest.text(), stmt_span.start).to_string();
        let bucket = if control { &mut self.control_calls } else { &mut self.assertions };
        bucket.push(AssertionCall {
            method,
            args: call
                .args
                .iter()
                .filter(|a| !matches!(a, ast::Expr::Starred(_)))
                .map(|a| self.harvest.arg_info(a))
                .collect(),
            keywords: call.keywords.iter().map(|k| self.harvest.kwarg_info(k)).collect(),
            has_splat,
            call_span,
            stmt_span,
            usage,
            indent,
            function: self.function.clone(),
        });
    }
}

fn is_self_name(expr: &ast::Expr) -> bool {
    matches!(expr, ast::Expr::Name(n) if n.id.as_str() == "self" || n.id.as_str() == "cls")
}

/// Callee check for methods the migration cares about: any `self.assert*`
/// plus `self.fail` and `self.skipTest`. The bool is true for the latter
/// control-flow calls.
fn self_special_method(func: &ast::Expr) -> Option<(String, bool)> {
    let ast::Expr::Attribute(attr) = func else {
        return None;
    };
    if !is_self_name(&attr.value) {
        return None;
    }
    let name = attr.attr.as_str();
    if name.starts_with("assert") {
        Some((name.to_string(), false))
    } else if name == "fail" || name == "skipTest" {
        Some((name.to_string(), true))
    } else {
        None
    }
}
