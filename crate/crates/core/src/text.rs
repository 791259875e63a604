//! Byte-level helpers for working with Python source text.
//!
//! Everything in the crate addresses source locations as byte offsets into
//! the original file, so the helpers here are deliberately low level: line
//! lookup tables, indentation extraction, and a string-literal-aware scanner
//! used when a byte position has to be found without re-parsing.

use serde::{Deserialize, Serialize};

/// Line ending convention of a source file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NewlineStyle {
    Lf,
    CrLf,
}

impl NewlineStyle {
    /// Detect the dominant line ending. A file with any bare `\n` is
    /// treated as LF; only files whose every newline is `\r\n` count as CRLF.
    pub fn detect(text: &str) -> NewlineStyle {
        let bytes = text.as_bytes();
        let mut saw_crlf = false;
        for (i, &b) in bytes.iter().enumerate() {
            if b == b'\n' {
                if i > 0 && bytes[i - 1] == b'\r' {
                    saw_crlf = true;
                } else {
                    return NewlineStyle::Lf;
                }
            }
        }
        if saw_crlf {
            NewlineStyle::CrLf
        } else {
            NewlineStyle::Lf
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            NewlineStyle::Lf => "\n",
            NewlineStyle::CrLf => "\r\n",
        }
    }
}

/// Offset-to-line/column lookup table. Lines and columns are 1-based;
/// columns count bytes, which matches how most editors report positions
/// in ASCII-dominated test files.
#[derive(Debug, Clone)]
pub struct LineIndex {
    line_starts: Vec<usize>,
}

impl LineIndex {
    pub fn new(text: &str) -> LineIndex {
        let mut line_starts = vec![0];
        for (i, b) in text.bytes().enumerate() {
            if b == b'\n' {
                line_starts.push(i + 1);
            }
        }
        LineIndex { line_starts }
    }

    pub fn line_col(&self, offset: usize) -> (usize, usize) {
        let line = match self.line_starts.binary_search(&offset) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        (line + 1, offset - self.line_starts[line] + 1)
    }

    pub fn line_count(&self) -> usize {
        self.line_starts.len()
    }
}

/// Offset of the first byte of the line containing `offset`.
pub fn line_start(text: &str, offset: usize) -> usize {
    text[..offset].rfind('\n').map(|i| i + 1).unwrap_or(0)
}

/// Offset one past the end of the line containing `offset`, including the
/// newline itself when present.
pub fn line_end(text: &str, offset: usize) -> usize {
    text[offset..]
        .find('\n')
        .map(|i| offset + i + 1)
        .unwrap_or(text.len())
}

/// Leading whitespace of the line containing `offset`.
pub fn indent_at(text: &str, offset: usize) -> &str {
    let start = line_start(text, offset);
    let rest = &text[start..];
    let width = rest
        .find(|c: char| c != ' ' && c != '\t')
        .unwrap_or(rest.len());
    &rest[..width]
}

/// True when the line holds nothing but whitespace or a comment.
pub fn is_blank_or_comment(line: &str) -> bool {
    let trimmed = line.trim();
    trimmed.is_empty() || trimmed.starts_with('#')
}

/// Consume a string literal starting at `start` (which must point at the
/// opening quote) and return the offset one past its closing quote.
/// Handles single and triple quoting and backslash escapes. Unterminated
/// literals end at the newline (single-quoted) or end of text.
pub fn skip_string(text: &str, start: usize) -> usize {
    let bytes = text.as_bytes();
    let quote = bytes[start];
    debug_assert!(quote == b'"' || quote == b'\'');
    let triple = bytes.len() >= start + 3 && bytes[start + 1] == quote && bytes[start + 2] == quote;
    let mut i = start + if triple { 3 } else { 1 };
    while i < bytes.len() {
        match bytes[i] {
            b'\\' => i += 2,
            b'\n' if !triple => return i,
            b if b == quote => {
                if !triple {
                    return i + 1;
                }
                if bytes.len() >= i + 3 && bytes[i + 1] == quote && bytes[i + 2] == quote {
                    return i + 3;
                }
                i += 1;
            }
            _ => i += 1,
        }
    }
    bytes.len()
}

/// Given the offset of an opening `(`, `[` or `{`, return the offset of the
/// matching closer, skipping over string literals and comments.
pub fn find_balanced(text: &str, open: usize) -> Option<usize> {
    let bytes = text.as_bytes();
    let (open_ch, close_ch) = match bytes[open] {
        b'(' => (b'(', b')'),
        b'[' => (b'[', b']'),
        b'{' => (b'{', b'}'),
        _ => return None,
    };
    let mut depth = 0usize;
    let mut i = open;
    while i < bytes.len() {
        match bytes[i] {
            b'"' | b'\'' => {
                i = skip_string(text, i);
                continue;
            }
            b'#' => {
                i = line_end(text, i);
                continue;
            }
            b if b == open_ch => depth += 1,
            b if b == close_ch => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
        i += 1;
    }
    None
}

/// Shift the indentation of every line after the first by `to - from`
/// spaces, leaving the interiors of triple-quoted strings untouched. The
/// first line is emitted as-is because statement slices start past their
/// own indentation.
pub fn reindent(snippet: &str, from: usize, to: usize) -> String {
    if from == to {
        return snippet.to_string();
    }
    let mut out = String::with_capacity(snippet.len());
    let mut i = 0usize;
    let bytes = snippet.as_bytes();
    let mut at_line_start = false;
    while i < bytes.len() {
        if at_line_start {
            at_line_start = false;
            let line_rest = &snippet[i..];
            let width = line_rest
                .find(|c: char| c != ' ')
                .unwrap_or(line_rest.len());
            let is_blank = line_rest[width..].starts_with('\n')
                || line_rest[width..].starts_with("\r\n")
                || width == line_rest.len();
            if !is_blank {
                let new_width = (width + to).saturating_sub(from);
                out.push_str(&" ".repeat(new_width));
                i += width;
                continue;
            }
        }
        match bytes[i] {
            b'"' | b'\'' => {
                let end = skip_string(snippet, i);
                out.push_str(&snippet[i..end]);
                i = end;
                continue;
            }
            b'#' => {
                let end = line_end(snippet, i);
                out.push_str(&snippet[i..end]);
                i = end;
                at_line_start = true;
                continue;
            }
            b'\n' => {
                out.push('\n');
                i += 1;
                at_line_start = true;
                continue;
            }
            _ => {}
        }
        out.push(snippet[i..].chars().next().unwrap());
        i += snippet[i..].chars().next().unwrap().len_utf8();
    }
    out
}

/// True when `token` appears as a standalone identifier outside strings and
/// comments. Identifier boundaries are non-word characters, and a leading
/// `.` disqualifies the match (attribute position).
pub fn code_contains_token(textual: &str, token: &str) -> bool {
    let bytes = textual.as_bytes();
    let is_word = |b: u8| b == b'_' || (b as char).is_ascii_alphanumeric();
    let mut i = 0usize;
    while i < bytes.len() {
        match bytes[i] {
            b'#' => i = line_end(textual, i),
            b'"' | b'\'' => i = skip_string(textual, i),
            _ => {
                if textual[i..].starts_with(token) {
                    let before_ok = i == 0 || (!is_word(bytes[i - 1]) && bytes[i - 1] != b'.');
                    let after = i + token.len();
                    let after_ok = after >= bytes.len() || !is_word(bytes[after]);
                    if before_ok && after_ok {
                        return true;
                    }
                }
                i += 1;
            }
        }
    }
    false
}

/// Copy of the text with string literals and comments blanked out
/// (newlines kept, byte offsets preserved), so regex scans only see code.
pub fn mask_non_code(textual: &str) -> String {
    let bytes = textual.as_bytes();
    let mut blanked: Vec<(usize, usize)> = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        match bytes[i] {
            b'#' => {
                let end = line_end(textual, i);
                blanked.push((i, end));
                i = end;
            }
            b'"' | b'\'' => {
                let end = skip_string(textual, i);
                blanked.push((i, end));
                i = end;
            }
            _ => i += 1,
        }
    }
    let mut out = String::with_capacity(textual.len());
    let mut range = 0usize;
    for (pos, ch) in textual.char_indices() {
        while range < blanked.len() && pos >= blanked[range].1 {
            range += 1;
        }
        let inside = range < blanked.len() && pos >= blanked[range].0 && pos < blanked[range].1;
        if inside && ch != '\n' {
            for _ in 0..ch.len_utf8() {
                out.push(' ');
            }
        } else {
            out.push(ch);
        }
    }
    out
}

/// SHA-256 of a byte string, hex encoded. Used for content fingerprints
/// throughout the pipeline.
pub fn sha256_hex(data: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(data);
    hex::encode(hasher.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newline_detection() {
        assert_eq!(NewlineStyle::detect("a\nb\n"), NewlineStyle::Lf);
        assert_eq!(NewlineStyle::detect("a\r\nb\r\n"), NewlineStyle::CrLf);
        assert_eq!(NewlineStyle::detect("a\r\nb\n"), NewlineStyle::Lf);
        assert_eq!(NewlineStyle::detect("no newline"), NewlineStyle::Lf);
    }

    #[test]
    fn line_index_positions() {
        let idx = LineIndex::new("ab\ncd\n");
        assert_eq!(idx.line_col(0), (1, 1));
        assert_eq!(idx.line_col(1), (1, 2));
        assert_eq!(idx.line_col(3), (2, 1));
        assert_eq!(idx.line_col(6), (3, 1));
    }

    #[test]
    fn balanced_skips_strings_and_comments() {
        let src = "f(a, \")\", # )\n    b(c))";
        assert_eq!(find_balanced(src, 1), Some(src.len() - 1));
        let nested = "f((1, 2), [3])";
        assert_eq!(find_balanced(nested, 1), Some(nested.len() - 1));
    }

    #[test]
    fn string_skipping() {
        let src = "'a\\'b' rest";
        assert_eq!(skip_string(src, 0), 6);
        let triple = "'''x ' y''' tail";
        assert_eq!(skip_string(triple, 0), 11);
    }

    #[test]
    fn indent_extraction() {
        let src = "def f():\n    x = 1\n";
        assert_eq!(indent_at(src, 13), "    ");
        assert_eq!(indent_at(src, 0), "");
    }

    #[test]
    fn reindent_shifts_continuation_lines() {
        let snippet = "x = f(\n        1,\n    )";
        assert_eq!(reindent(snippet, 8, 4), "x = f(\n    1,\n)");
        assert_eq!(reindent(snippet, 8, 8), snippet);
        let up = reindent("if x:\n    y()", 0, 4);
        assert_eq!(up, "if x:\n        y()");
    }

    #[test]
    fn reindent_preserves_multiline_strings() {
        let snippet = "x = \"\"\"\n        keep\n\"\"\"\ny = 1";
        let out = reindent(snippet, 8, 4);
        assert!(out.contains("\n        keep\n"));
        assert!(out.ends_with("y = 1"));
    }

    #[test]
    fn token_scan_respects_strings_and_boundaries() {
        assert!(code_contains_token("unittest.main()", "unittest"));
        assert!(!code_contains_token("\"unittest\"", "unittest"));
        assert!(!code_contains_token("# unittest", "unittest"));
        assert!(!code_contains_token("my_unittest.run()", "unittest"));
        assert!(!code_contains_token("mod.unittest", "unittest"));
        assert!(code_contains_token("x = ut\n", "ut"));
        assert!(!code_contains_token("x = utterly\n", "ut"));
    }
}
