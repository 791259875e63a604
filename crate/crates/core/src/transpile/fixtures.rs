//! Fixture synthesis from `setUp`/`tearDown` lifecycle methods.
//!
//! Every `self.<name> = <expr>` at the top level of `setUp` becomes a
//! fixture called `<name>`. Statements between assignments run inside the
//! fixture defined next; statements that only touch already-created
//! attributes attach to the fixture of the latest attribute they mention.
//! `tearDown` statements become the yield-teardown of the single fixture
//! they reference. `setUpClass` follows the same rules at class scope.
//!
//! Planning is purely structural: the output references source spans, and
//! rendering into text happens later, once assertion rewrites and attribute
//! renames for the whole class are known.

use std::collections::HashMap;

use crate::source_model::{BodyKind, LifecycleKind, SourceSpan, TestClass, TestFunction};

use super::map::{Residual, ResidualKind};

#[derive(Debug, Clone)]
pub struct FixtureDef {
    pub name: String,
    /// Other fixtures this one references, in first-use order.
    pub deps: Vec<String>,
    pub class_scope: bool,
    /// True for the synthetic side-effect fixture created when a lifecycle
    /// method assigns no attributes at all.
    pub autouse: bool,
    /// Statements that run before the value is built.
    pub pre: Vec<SourceSpan>,
    /// The `self.<name> = <expr>` right-hand side. `None` for autouse
    /// fixtures, which have no value.
    pub value_span: Option<SourceSpan>,
    /// Statements attached after the value is built.
    pub post: Vec<SourceSpan>,
    /// Teardown statements, run after the yield.
    pub teardown: Vec<SourceSpan>,
}

impl FixtureDef {
    pub fn has_teardown(&self) -> bool {
        !self.teardown.is_empty()
    }
}

#[derive(Debug, Clone, Default)]
pub struct FixturePlan {
    pub fixtures: Vec<FixtureDef>,
    pub residuals: Vec<Residual>,
}

impl FixturePlan {
    pub fn names(&self) -> Vec<&str> {
        self.fixtures.iter().map(|f| f.name.as_str()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&FixtureDef> {
        self.fixtures.iter().find(|f| f.name == name)
    }
}

/// Distinct attributes a statement span touches, in reference order.
fn attrs_in(method: &TestFunction, span: &SourceSpan) -> Vec<String> {
    let mut seen = Vec::new();
    for r in &method.self_refs {
        if span.contains(&r.span) && !seen.contains(&r.attr) {
            seen.push(r.attr.clone());
        }
    }
    seen
}

/// Build the fixture plan for one class from its lifecycle methods.
pub fn plan_fixtures(class: &TestClass) -> FixturePlan {
    let mut plan = FixturePlan::default();
    let find = |kind: LifecycleKind| class.methods.iter().find(|m| m.lifecycle == Some(kind));

    if let Some(setup) = find(LifecycleKind::SetUpClass) {
        synthesize(setup, true, &mut plan);
        if plan.fixtures.iter().any(|f| f.class_scope) {
            plan.residuals.push(Residual {
                kind: ResidualKind::ClassScopeReview,
                span: setup.def_span,
                detail: "class-scoped fixtures share state across tests; review the scope".to_string(),
            });
        }
    }
    if let Some(setup) = find(LifecycleKind::SetUp) {
        synthesize(setup, false, &mut plan);
    }
    if let Some(td) = find(LifecycleKind::TearDown) {
        attach_teardown(td, false, &mut plan);
    }
    if let Some(td) = find(LifecycleKind::TearDownClass) {
        attach_teardown(td, true, &mut plan);
    }
    plan
}

fn synthesize(setup: &TestFunction, class_scope: bool, plan: &mut FixturePlan) {
    let mut pending: Vec<SourceSpan> = Vec::new();
    let mut defined: HashMap<String, usize> = plan
        .fixtures
        .iter()
        .enumerate()
        .map(|(i, f)| (f.name.clone(), i))
        .collect();
    let start = plan.fixtures.len();

    for stmt in &setup.body {
        if setup.docstring.map(|d| d == stmt.span).unwrap_or(false) {
            continue;
        }
        match &stmt.kind {
            BodyKind::AttrAssign { attr, value_span } => {
                let mut deps = Vec::new();
                for pre in &pending {
                    for a in attrs_in(setup, pre) {
                        if defined.contains_key(&a) && !deps.contains(&a) {
                            deps.push(a);
                        }
                    }
                }
                for a in attrs_in(setup, value_span) {
                    if defined.contains_key(&a) {
                        if !deps.contains(&a) {
                            deps.push(a);
                        }
                    } else {
                        plan.residuals.push(Residual {
                            kind: ResidualKind::UnsafeStatement,
                            span: *value_span,
                            detail: format!("references attribute {} before it is assigned", a),
                        });
                    }
                }
                if defined.contains_key(attr) {
                    plan.residuals.push(Residual {
                        kind: ResidualKind::UnsafeStatement,
                        span: stmt.span,
                        detail: format!("attribute {} is assigned twice", attr),
                    });
                    pending.clear();
                    continue;
                }
                defined.insert(attr.clone(), plan.fixtures.len());
                plan.fixtures.push(FixtureDef {
                    name: attr.clone(),
                    deps,
                    class_scope,
                    autouse: false,
                    pre: std::mem::take(&mut pending),
                    value_span: Some(*value_span),
                    post: Vec::new(),
                    teardown: Vec::new(),
                });
            }
            _ => {
                let attrs = attrs_in(setup, &stmt.span);
                if attrs.is_empty() {
                    pending.push(stmt.span);
                    continue;
                }
                let all_defined = attrs.iter().all(|a| defined.contains_key(a));
                if !all_defined {
                    plan.residuals.push(Residual {
                        kind: ResidualKind::UnsafeStatement,
                        span: stmt.span,
                        detail: "statement uses attributes that are not plain assignments".to_string(),
                    });
                    continue;
                }
                let target = attrs.iter().map(|a| defined[a]).max().unwrap();
                for a in attrs {
                    if defined[&a] != target {
                        let dep_list = &mut plan.fixtures[target].deps;
                        if !dep_list.contains(&a) {
                            dep_list.push(a);
                        }
                    }
                }
                plan.fixtures[target].post.push(stmt.span);
            }
        }
    }

    if !pending.is_empty() {
        if plan.fixtures.len() > start {
            let last = plan.fixtures.len() - 1;
            plan.fixtures[last].post.extend(pending);
        } else {
            plan.fixtures.push(FixtureDef {
                name: autouse_name(setup),
                deps: Vec::new(),
                class_scope,
                autouse: true,
                pre: pending,
                value_span: None,
                post: Vec::new(),
                teardown: Vec::new(),
            });
        }
    }
}

fn autouse_name(setup: &TestFunction) -> String {
    match setup.lifecycle {
        Some(LifecycleKind::SetUpClass) => "_class_setup".to_string(),
        _ => "_setup".to_string(),
    }
}

fn attach_teardown(td: &TestFunction, class_scope: bool, plan: &mut FixturePlan) {
    for stmt in &td.body {
        if td.docstring.map(|d| d == stmt.span).unwrap_or(false) {
            continue;
        }
        let attrs = attrs_in(td, &stmt.span);
        let target = match attrs.as_slice() {
            [one] => plan
                .fixtures
                .iter_mut()
                .find(|f| f.name == *one && f.class_scope == class_scope),
            [] => plan
                .fixtures
                .iter_mut()
                .find(|f| f.autouse && f.class_scope == class_scope),
            _ => None,
        };
        match target {
            Some(fixture) => fixture.teardown.push(stmt.span),
            None => plan.residuals.push(Residual {
                kind: ResidualKind::AmbiguousTeardown,
                span: stmt.span,
                detail: match attrs.len() {
                    0 => "teardown statement references no fixture attribute".to_string(),
                    _ => format!("teardown statement touches several attributes: {}", attrs.join(", ")),
                },
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source_model::{parse_module, SourceFile};

    fn plan_for(body: &str) -> (SourceFile, FixturePlan) {
        let src = format!("import unittest\n\nclass TestX(unittest.TestCase):\n{}\n", body);
        let file = SourceFile::new("t.py", src);
        let m = parse_module(&file).unwrap();
        let plan = plan_fixtures(&m.classes[0]);
        (file, plan)
    }

    #[test]
    fn attr_assignments_become_fixtures_with_deps() {
        let (_, plan) = plan_for(
            "    def setUp(self):\n        self.catalog = load()\n        self.cart = Cart(self.catalog)\n        self.cart.freeze()\n",
        );
        assert_eq!(plan.names(), ["catalog", "cart"]);
        assert!(plan.residuals.is_empty());
        let cart = plan.get("cart").unwrap();
        assert_eq!(cart.deps, ["catalog"]);
        assert_eq!(cart.post.len(), 1);
    }

    #[test]
    fn pending_statements_attach_to_next_fixture() {
        let (file, plan) = plan_for(
            "    def setUp(self):\n        reset()\n        self.db = connect()\n",
        );
        let db = plan.get("db").unwrap();
        assert_eq!(db.pre.len(), 1);
        assert_eq!(db.pre[0].slice(file.text()), "reset()");
    }

    #[test]
    fn trailing_statements_attach_to_last_fixture() {
        let (_, plan) = plan_for(
            "    def setUp(self):\n        self.db = connect()\n        warm()\n",
        );
        assert_eq!(plan.get("db").unwrap().post.len(), 1);
    }

    #[test]
    fn side_effect_only_setup_becomes_autouse() {
        let (_, plan) = plan_for("    def setUp(self):\n        reset()\n        seed(4)\n");
        assert_eq!(plan.fixtures.len(), 1);
        let f = &plan.fixtures[0];
        assert!(f.autouse);
        assert_eq!(f.name, "_setup");
        assert_eq!(f.pre.len(), 2);
    }

    #[test]
    fn teardown_attaches_to_referenced_fixture() {
        let (file, plan) = plan_for(
            "    def setUp(self):\n        self.db = connect()\n\n    def tearDown(self):\n        self.db.close()\n",
        );
        let db = plan.get("db").unwrap();
        assert!(db.has_teardown());
        assert_eq!(db.teardown[0].slice(file.text()), "self.db.close()");
        assert!(plan.residuals.is_empty());
    }

    #[test]
    fn ambiguous_teardown_is_residual() {
        let (_, plan) = plan_for(
            "    def setUp(self):\n        self.a = A()\n        self.b = B()\n\n    def tearDown(self):\n        shutdown(self.a, self.b)\n        cleanup_files()\n",
        );
        assert_eq!(plan.residuals.len(), 2);
        assert!(plan.residuals.iter().all(|r| r.kind == ResidualKind::AmbiguousTeardown));
    }

    #[test]
    fn pure_teardown_pairs_with_autouse_setup() {
        let (_, plan) = plan_for(
            "    def setUp(self):\n        reset()\n\n    def tearDown(self):\n        restore()\n",
        );
        let f = &plan.fixtures[0];
        assert!(f.autouse);
        assert_eq!(f.teardown.len(), 1);
        assert!(plan.residuals.is_empty());
    }

    #[test]
    fn class_lifecycle_gets_class_scope_and_review_residual() {
        let (_, plan) = plan_for(
            "    @classmethod\n    def setUpClass(cls):\n        cls.pool = make_pool()\n\n    @classmethod\n    def tearDownClass(cls):\n        cls.pool.drain()\n",
        );
        let pool = plan.get("pool").unwrap();
        assert!(pool.class_scope);
        assert!(pool.has_teardown());
        assert_eq!(plan.residuals.len(), 1);
        assert_eq!(plan.residuals[0].kind, ResidualKind::ClassScopeReview);
    }

    #[test]
    fn forward_reference_is_residual() {
        let (_, plan) = plan_for(
            "    def setUp(self):\n        self.a = wrap(self.b)\n        self.b = B()\n",
        );
        assert!(plan
            .residuals
            .iter()
            .any(|r| r.kind == ResidualKind::UnsafeStatement && r.detail.contains("before it is assigned")));
    }

    #[test]
    fn mixed_scope_teardown_does_not_cross() {
        let (_, plan) = plan_for(
            "    @classmethod\n    def setUpClass(cls):\n        cls.pool = make_pool()\n\n    def setUp(self):\n        self.conn = self.pool.acquire()\n\n    def tearDown(self):\n        self.conn.release()\n",
        );
        assert_eq!(plan.names(), ["pool", "conn"]);
        let conn = plan.get("conn").unwrap();
        assert!(!conn.class_scope);
        assert!(conn.has_teardown());
        assert_eq!(conn.deps, ["pool"]);
    }
}
