//! Graph file IO: graph6 line format, one graph per line. An optional
//! `>>graph6<<` marker may prefix the first line (glued or on its own line);
//! blank lines are skipped. Read errors name the file line that failed.

use std::fmt;
use std::fs;
use std::path::Path;

use turanlab_core::graph::Graph;
use turanlab_core::graph6::{parse_graph6, write_graph6, HEADER};

/// A graph6 line that did not parse, with its 1-based line number.
#[derive(Debug)]
pub struct ReadError {
    pub line: usize,
    pub source: turanlab_core::Error,
}

impl fmt::Display for ReadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.source)
    }
}

impl std::error::Error for ReadError {}

/// Parses graph6 text, one graph per non-blank line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, ReadError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let mut line = raw.trim();
        if idx == 0 {
            line = line.strip_prefix(HEADER).unwrap_or(line).trim_start();
        }
        if line.is_empty() {
            continue;
        }
        match parse_graph6(line) {
            Ok(g) => out.push(g),
            Err(source) => return Err(ReadError { line: idx + 1, source }),
        }
    }
    Ok(out)
}

/// Reads a graph6 file.
pub fn read_graph6_file(path: &Path) -> anyhow::Result<Vec<Graph>> {
    let text = fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    parse_graph6_lines(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

/// Renders graphs as graph6 lines (no marker), trailing newline included
/// when the list is non-empty.
pub fn render_graph6_lines(graphs: &[Graph]) -> String {
    let mut text = String::new();
    for g in graphs {
        text.push_str(&write_graph6(g));
        text.push('\n');
    }
    text
}

/// Writes a graph6 file, one line per graph.
pub fn write_graph6_file(path: &Path, graphs: &[Graph]) -> anyhow::Result<()> {
    fs::write(path, render_graph6_lines(graphs))
        .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_with_and_without_marker() {
        let graphs = vec![
            Graph::complete(3).unwrap(),
            Graph::empty(5).unwrap(),
            Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap(),
        ];
        let text = render_graph6_lines(&graphs);
        assert_eq!(parse_graph6_lines(&text).unwrap(), graphs);

        let marked = format!("{HEADER}\n{text}");
        assert_eq!(parse_graph6_lines(&marked).unwrap(), graphs);
        let glued = format!("{HEADER}{text}");
        assert_eq!(parse_graph6_lines(&glued).unwrap(), graphs);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_graph6_lines("Bw\n\nB\u{1}\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.to_string().starts_with("line 3:"));
    }

    #[test]
    fn file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("graphs.g6");
        let graphs = vec![Graph::complete(4).unwrap()];
        write_graph6_file(&path, &graphs).unwrap();
        assert_eq!(read_graph6_file(&path).unwrap(), graphs);
    }
}
