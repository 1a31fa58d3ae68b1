//! Source positions.

use std::fmt;
use std::sync::Arc;

/// A contiguous region of a source file.
///
/// `line` and `col` locate the first byte (both 1-based); `offset` and `len`
/// delimit the region in bytes so that span containment can be checked.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Span {
    pub file: Arc<str>,
    pub offset: u32,
    pub len: u32,
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub fn new(file: Arc<str>, offset: u32, len: u32, line: u32, col: u32) -> Self {
        Span { file, offset, len, line, col }
    }

    /// A zero-width placeholder used by tree equality helpers.
    pub fn synthetic() -> Self {
        Span { file: Arc::from(""), offset: 0, len: 0, line: 0, col: 0 }
    }

    pub fn end(&self) -> u32 {
        self.offset + self.len
    }

    /// Smallest span covering both `self` and `other` (same file assumed).
    pub fn to(&self, other: &Span) -> Span {
        let offset = self.offset.min(other.offset);
        let end = self.end().max(other.end());
        Span {
            file: self.file.clone(),
            offset,
            len: end - offset,
            line: self.line.min(other.line),
            col: if other.offset < self.offset { other.col } else { self.col },
        }
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.file == other.file && self.offset <= other.offset && other.end() <= self.end()
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.col)
    }
}
