"""Statement-coverage tracer with no third-party dependencies.

Runs a Python module (pytest, unittest, ...) under sys.settrace, records
which lines execute in files below --scope, and writes a JSON report with
exact statement counts per file. The wrapped run's exit code is preserved.

Usage:
    python3 tools/pycov.py --scope minishop --out cov.json --module pytest -- -q tests/test_x.py
"""

import argparse
import ast
import json
import os
import runpy
import sys
import threading


def statement_lines(path):
    """Line numbers that hold executable statements, docstrings excluded."""
    with open(path, "rb") as fh:
        tree = ast.parse(fh.read(), filename=path)
    lines = set()
    docstrings = set()
    for node in ast.walk(tree):
        if isinstance(node, (ast.Module, ast.ClassDef, ast.FunctionDef, ast.AsyncFunctionDef)):
            body = node.body
            if (
                body
                and isinstance(body[0], ast.Expr)
                and isinstance(body[0].value, ast.Constant)
                and isinstance(body[0].value.value, str)
            ):
                docstrings.add(id(body[0]))
        if isinstance(node, ast.stmt) and id(node) not in docstrings:
            lines.add(node.lineno)
    return lines


def scope_files(scope):
    for base, _dirs, names in os.walk(scope):
        if "__pycache__" in base:
            continue
        for name in sorted(names):
            if name.endswith(".py"):
                yield os.path.join(base, name)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--scope", required=True, help="directory whose files are measured")
    parser.add_argument("--out", required=True, help="JSON report path")
    parser.add_argument("--module", required=True, help="module to run as __main__")
    parser.add_argument("rest", nargs=argparse.REMAINDER, help="arguments for the module")
    args = parser.parse_args()

    scope = os.path.abspath(args.scope)
    prefix = scope + os.sep
    executed = {}

    def global_tracer(frame, event, arg):
        if event != "call":
            return None
        path = frame.f_code.co_filename
        if not (path.startswith(prefix) or path == scope):
            return None
        lines = executed.setdefault(path, set())

        def local_tracer(frame, event, arg):
            if event == "line":
                lines.add(frame.f_lineno)
            return local_tracer

        return local_tracer

    rest = args.rest
    if rest and rest[0] == "--":
        rest = rest[1:]
    sys.argv = [args.module] + rest

    threading.settrace(global_tracer)
    sys.settrace(global_tracer)
    exit_code = 0
    try:
        runpy.run_module(args.module, run_name="__main__", alter_sys=True)
    except SystemExit as exc:
        if isinstance(exc.code, int):
            exit_code = exc.code
        elif exc.code is not None:
            exit_code = 1
    finally:
        sys.settrace(None)
        threading.settrace(None)

    files = {}
    total_statements = 0
    total_executed = 0
    for path in scope_files(scope):
        statements = statement_lines(path)
        hit = executed.get(os.path.abspath(path), set()) & statements
        rel = os.path.relpath(path, os.path.dirname(scope))
        files[rel] = {
            "statements": len(statements),
            "executed": len(hit),
            "percent": round(100.0 * len(hit) / len(statements), 2) if statements else 100.0,
        }
        total_statements += len(statements)
        total_executed += len(hit)

    report = {
        "files": files,
        "totals": {
            "statements": total_statements,
            "executed": total_executed,
            "percent": round(100.0 * total_executed / total_statements, 2)
            if total_statements
            else 100.0,
        },
    }
    with open(args.out, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    sys.exit(exit_code)


if __name__ == "__main__":
    main()
