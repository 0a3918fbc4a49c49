//! The on-disk coloring format.
//!
//! Line 1: n.  Line 2: n whitespace-separated colors in {1..k}.  Lines whose
//! first non-blank character is '#' are comments; blank lines are ignored; a
//! trailing newline is optional.  Parse errors carry 1-based line and column
//! so a bad token can be found in an editor.

use std::fmt;
use std::path::Path;

/// Parse failure with editor-friendly coordinates.
#[derive(Debug)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.column {
            Some(col) => write!(f, "line {}, column {}: {}", self.line, col, self.message),
            None => write!(f, "line {}: {}", self.line, self.message),
        }
    }
}

impl std::error::Error for ParseDiagnostic {}

fn diag(line: usize, column: Option<usize>, message: String) -> ParseDiagnostic {
    ParseDiagnostic { line, column, message }
}

/// Tokens of one line with their 1-based starting columns (in characters).
fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None; // (column, byte offset)
    for (col0, (byte, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((c, b)) = start.take() {
                tokens.push((c + 1, &line[b..byte]));
            }
        } else if start.is_none() {
            start = Some((col0, byte));
        }
    }
    if let Some((c, b)) = start {
        tokens.push((c + 1, &line[b..]));
    }
    tokens
}

/// Parses the format; colors must lie in 1..=max_color.
pub fn parse_coloring(text: &str, max_color: u8) -> Result<Vec<u8>, ParseDiagnostic> {
    let mut data_lines = Vec::new(); // (1-based line number, content)
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        data_lines.push((idx + 1, line));
    }

    match data_lines.len() {
        0 | 1 => {
            let last = text.lines().count().max(1);
            return Err(diag(
                last,
                None,
                format!("expected 2 data lines (n, then colors), found {}", data_lines.len()),
            ));
        }
        2 => {}
        more => {
            let (line, _) = data_lines[2];
            return Err(diag(
                line,
                None,
                format!("expected 2 data lines (n, then colors), found {more}"),
            ));
        }
    }

    let (n_line, n_text) = data_lines[0];
    let n_tokens = tokens_with_columns(n_text);
    if n_tokens.len() != 1 {
        let col = n_tokens.get(1).map(|&(c, _)| c);
        return Err(diag(n_line, col, "the first data line must hold n alone".into()));
    }
    let (n_col, n_token) = n_tokens[0];
    let n: usize = n_token.parse().map_err(|_| {
        diag(n_line, Some(n_col), format!("expected a positive integer for n, got '{n_token}'"))
    })?;
    if n == 0 {
        return Err(diag(n_line, Some(n_col), "n must be at least 1".into()));
    }

    let (c_line, c_text) = data_lines[1];
    let mut colors = Vec::with_capacity(n);
    for (col, token) in tokens_with_columns(c_text) {
        let color: u8 = token.parse().map_err(|_| {
            diag(c_line, Some(col), format!("color '{token}' is not an integer in 1..={max_color}"))
        })?;
        if color == 0 || color > max_color {
            return Err(diag(
                c_line,
                Some(col),
                format!("color {color} is outside 1..={max_color}"),
            ));
        }
        colors.push(color);
    }
    if colors.len() != n {
        return Err(diag(
            c_line,
            None,
            format!("expected {n} colors, found {}", colors.len()),
        ));
    }
    Ok(colors)
}

/// Reads and parses one coloring file; the error names the file and the
/// offending position.
pub fn read_coloring_file(path: &Path, max_color: u8) -> anyhow::Result<Vec<u8>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    parse_coloring(&text, max_color)
        .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

/// Writes the format back out; `read` of the result yields `colors` exactly.
pub fn write_coloring_file(path: &Path, colors: &[u8], comment: &str) -> anyhow::Result<()> {
    let mut text = format!("# {comment}\n{}\n", colors.len());
    let digits: Vec<String> = colors.iter().map(u8::to_string).collect();
    text.push_str(&digits.join(" "));
    text.push('\n');
    std::fs::write(path, text)
        .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))
}
