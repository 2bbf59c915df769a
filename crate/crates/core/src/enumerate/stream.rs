//! Lazily decoded graph6 line streams, optionally gzip-compressed.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use thiserror::Error;

use crate::graph::{parse_graph6, Graph, Graph6Error};

/// What to do with a line that fails to decode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ErrorPolicy {
    /// Record a diagnostic and continue.
    Skip,
    /// Yield the error and stop.
    #[default]
    Abort,
}

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: Graph6Error },
    #[error("line {line}: {source}")]
    Io { line: usize, source: io::Error },
}

impl StreamError {
    pub fn line(&self) -> usize {
        match self {
            StreamError::Parse { line, .. } | StreamError::Io { line, .. } => *line,
        }
    }
}

/// Iterator over graphs in a graph6 stream. Line numbers are 1-based. Blank
/// lines and a leading `>>graph6<<` marker are ignored.
pub struct Graph6Stream<R> {
    lines: io::Lines<R>,
    line_no: usize,
    policy: ErrorPolicy,
    diagnostics: Vec<StreamError>,
    done: bool,
}

pub fn read_graph6_stream<R: BufRead>(source: R, policy: ErrorPolicy) -> Graph6Stream<R> {
    Graph6Stream { lines: source.lines(), line_no: 0, policy, diagnostics: Vec::new(), done: false }
}

impl<R> Graph6Stream<R> {
    /// Errors skipped under [`ErrorPolicy::Skip`].
    pub fn diagnostics(&self) -> &[StreamError] {
        &self.diagnostics
    }

    pub fn take_diagnostics(&mut self) -> Vec<StreamError> {
        std::mem::take(&mut self.diagnostics)
    }
}

impl<R: BufRead> Iterator for Graph6Stream<R> {
    type Item = Result<Graph, StreamError>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            let raw = self.lines.next()?;
            self.line_no += 1;
            let line = self.line_no;
            let err = match raw {
                Err(source) => StreamError::Io { line, source },
                Ok(text) => {
                    let text = if line == 1 { text.strip_prefix(">>graph6<<").unwrap_or(&text) } else { &text };
                    let text = text.trim_end_matches(['\r', '\n']);
                    if text.trim().is_empty() {
                        continue;
                    }
                    match parse_graph6(text) {
                        Ok(g) => return Some(Ok(g)),
                        Err(source) => StreamError::Parse { line, source },
                    }
                }
            };
            match self.policy {
                ErrorPolicy::Skip => self.diagnostics.push(err),
                ErrorPolicy::Abort => {
                    self.done = true;
                    return Some(Err(err));
                }
            }
        }
        None
    }
}

/// Wraps a reader, transparently gunzipping when it starts with the gzip magic bytes.
pub fn maybe_gzip<R: Read + 'static>(reader: R) -> io::Result<Box<dyn BufRead>> {
    let mut buffered = BufReader::new(reader);
    let head = buffered.fill_buf()?;
    if head.starts_with(&[0x1f, 0x8b]) {
        Ok(Box::new(BufReader::new(MultiGzDecoder::new(buffered))))
    } else {
        Ok(Box::new(buffered))
    }
}

/// Opens a path (or standard input for `-`) as a graph6 line source.
pub fn open_graph6_source(path: &Path) -> io::Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        maybe_gzip(io::stdin())
    } else {
        maybe_gzip(File::open(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::{Cursor, Write};

    use flate2::write::GzEncoder;
    use flate2::Compression;

    #[test]
    fn two_lines() {
        let graphs: Vec<Graph> =
            read_graph6_stream(Cursor::new("Bw\nA_\n"), ErrorPolicy::Abort).map(Result::unwrap).collect();
        assert_eq!(graphs.len(), 2);
        assert_eq!((graphs[0].order(), graphs[0].size()), (3, 3));
        assert_eq!((graphs[1].order(), graphs[1].size()), (2, 1));
    }

    #[test]
    fn empty_input() {
        assert_eq!(read_graph6_stream(Cursor::new(""), ErrorPolicy::Abort).count(), 0);
    }

    #[test]
    fn skip_policy_records_diagnostic() {
        let mut s = read_graph6_stream(Cursor::new("Bw\nB!\n"), ErrorPolicy::Skip);
        let graphs: Vec<_> = s.by_ref().collect();
        assert_eq!(graphs.len(), 1);
        assert!(graphs[0].is_ok());
        assert_eq!(s.diagnostics().len(), 1);
        assert_eq!(s.diagnostics()[0].line(), 2);
    }

    #[test]
    fn abort_policy_stops() {
        let items: Vec<_> = read_graph6_stream(Cursor::new("Bw\nB!\nA_\n"), ErrorPolicy::Abort).collect();
        assert_eq!(items.len(), 2);
        assert!(matches!(items[1], Err(StreamError::Parse { line: 2, .. })));
    }

    #[test]
    fn header_and_blank_lines() {
        let n = read_graph6_stream(Cursor::new(">>graph6<<Bw\n\r\nA_\r\n"), ErrorPolicy::Abort)
            .map(Result::unwrap)
            .count();
        assert_eq!(n, 2);
    }

    #[test]
    fn gzip_detection() {
        let mut enc = GzEncoder::new(Vec::new(), Compression::default());
        enc.write_all(b"Bw\nA_\n").unwrap();
        let bytes = enc.finish().unwrap();
        let reader = maybe_gzip(Cursor::new(bytes)).unwrap();
        assert_eq!(read_graph6_stream(reader, ErrorPolicy::Abort).count(), 2);
        let plain = maybe_gzip(Cursor::new(b"Bw\n".to_vec())).unwrap();
        assert_eq!(read_graph6_stream(plain, ErrorPolicy::Abort).count(), 1);
    }
}
