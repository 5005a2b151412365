//! Line-oriented spec syntax: `[section]` or `[section name]` headers, body
//! lines, `#` comments. Values keep their source position for diagnostics.

use crate::error::CliError;

/// A piece of source text with the 1-based line and column of its first byte.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub text: String,
    pub line: usize,
    pub col: usize,
}

impl Located {
    pub fn error(&self, msg: impl Into<String>) -> CliError {
        CliError::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    /// Maps a byte offset reported by the expression parser to a position.
    pub fn error_at(&self, offset: usize, msg: impl Into<String>) -> CliError {
        let offset = offset.min(self.text.len());
        CliError::Parse {
            line: self.line,
            col: self.col + self.text[..offset].chars().count(),
            msg: msg.into(),
        }
    }

    /// Splits on `sep`, trimming pieces and tracking their columns.
    pub fn split(&self, sep: char) -> Vec<Located> {
        let mut out = Vec::new();
        let mut start = 0;
        for piece in self.text.split(sep) {
            let lead = piece.len() - piece.trim_start().len();
            out.push(Located {
                text: piece.trim().to_string(),
                line: self.line,
                col: self.col + self.text[..start + lead].chars().count(),
            });
            start += piece.len() + sep.len_utf8();
        }
        out
    }

    /// `key = value` with both sides trimmed; `None` without an `=`.
    pub fn key_value(&self) -> Option<(Located, Located)> {
        let eq = self.text.find('=')?;
        let key = self.sub(0, eq);
        let value = self.sub(eq + 1, self.text.len());
        Some((key, value))
    }

    fn sub(&self, from: usize, to: usize) -> Located {
        let raw = &self.text[from..to];
        let lead = raw.len() - raw.trim_start().len();
        Located {
            text: raw.trim().to_string(),
            line: self.line,
            col: self.col + self.text[..from + lead].chars().count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub kind: String,
    pub name: Option<Located>,
    pub header: Located,
    pub lines: Vec<Located>,
}

pub fn parse_sections(text: &str) -> Result<Vec<Section>, CliError> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let loc = Located {
            text: content.trim().to_string(),
            line,
            col: content[..lead].chars().count() + 1,
        };
        if loc.text.starts_with('[') && sections_header(&loc.text) {
            let inner = &loc.text[1..loc.text.len() - 1];
            let mut parts = inner.split_whitespace();
            let kind = parts
                .next()
                .ok_or_else(|| loc.error("empty section header"))?
                .to_string();
            let name = match parts.next() {
                Some(n) => Some(Located {
                    text: n.to_string(),
                    line,
                    col: loc.col + loc.text.find(n).unwrap_or(0),
                }),
                None => None,
            };
            if parts.next().is_some() {
                return Err(loc.error("section header takes at most one name"));
            }
            sections.push(Section {
                kind,
                name,
                header: loc,
                lines: Vec::new(),
            });
        } else {
            match sections.last_mut() {
                Some(s) => s.lines.push(loc),
                None => return Err(loc.error("content before the first section header")),
            }
        }
    }
    Ok(sections)
}

/// Headers are bracketed identifiers; `[e, f] = h` inside a `lie` section is a body line.
fn sections_header(s: &str) -> bool {
    s.ends_with(']') && !s.contains('=') && !s.contains(',')
}
