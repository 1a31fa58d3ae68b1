//! Diagnostics: stable codes, severities and the one-line display format.

use std::fmt;

use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
    Note,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Error => write!(f, "error"),
            Severity::Warning => write!(f, "warning"),
            Severity::Note => write!(f, "note"),
        }
    }
}

/// Diagnostic codes used across the pipeline.
///
/// Lexer: E001-E004. Parser: E010-E011. Class table: E020-E025.
/// Attribution: E100-E141 plus W050 and N001.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    /// Unrecognized character.
    E001,
    /// Unterminated string literal.
    E002,
    /// Numeric literal out of range.
    E003,
    /// Unterminated block comment.
    E004,
    /// Unexpected token.
    E010,
    /// Unbalanced delimiter.
    E011,
    /// Duplicate class.
    E020,
    /// Unknown supertype.
    E021,
    /// Inheritance cycle.
    E022,
    /// Duplicate method signature.
    E023,
    /// Duplicate field.
    E024,
    /// Static method references a class type parameter.
    E025,
    /// Unknown name.
    E100,
    /// Type mismatch in a base construct.
    E101,
    /// Duplicate local variable.
    E102,
    /// Ambiguous method.
    E120,
    /// Operator not applicable.
    E130,
    /// compareTo found but does not return primitive int.
    E131,
    /// Incompatible assignment.
    E140,
    /// valueOf applicable but not static.
    E141,
    /// No entry point.
    E150,
    /// More than one entry point.
    E151,
    /// Both set and put applicable to an index write.
    W050,
    /// Value of an overloaded index-write expression is used.
    N001,
}

impl Code {
    pub fn severity(self) -> Severity {
        match self {
            Code::W050 => Severity::Warning,
            Code::N001 => Severity::Note,
            _ => Severity::Error,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Code::E001 => "E001",
            Code::E002 => "E002",
            Code::E003 => "E003",
            Code::E004 => "E004",
            Code::E010 => "E010",
            Code::E011 => "E011",
            Code::E020 => "E020",
            Code::E021 => "E021",
            Code::E022 => "E022",
            Code::E023 => "E023",
            Code::E024 => "E024",
            Code::E025 => "E025",
            Code::E100 => "E100",
            Code::E101 => "E101",
            Code::E102 => "E102",
            Code::E120 => "E120",
            Code::E130 => "E130",
            Code::E131 => "E131",
            Code::E140 => "E140",
            Code::E141 => "E141",
            Code::E150 => "E150",
            Code::E151 => "E151",
            Code::W050 => "W050",
            Code::N001 => "N001",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: Code,
    pub severity: Severity,
    pub span: Span,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: Code, span: Span, message: impl Into<String>) -> Self {
        Diagnostic { code, severity: code.severity(), span, message: message.into() }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}: {}[{}]: {}",
            self.span.file,
            self.span.line,
            self.span.col,
            self.severity,
            self.code.as_str(),
            self.message
        )
    }
}

/// Render one diagnostic as its canonical single line.
pub fn format_diagnostic(d: &Diagnostic) -> String {
    d.to_string()
}

/// Sort diagnostics by (file, line, col, code) so output is reproducible.
pub fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort_by(|a, b| {
        (a.span.file.as_ref(), a.span.line, a.span.col, a.code.as_str())
            .cmp(&(b.span.file.as_ref(), b.span.line, b.span.col, b.code.as_str()))
    });
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn at(file: &str, line: u32, col: u32) -> Span {
        Span::new(Arc::from(file), 0, 1, line, col)
    }

    #[test]
    fn formats_one_line_per_diagnostic() {
        let d = Diagnostic::new(
            Code::E130,
            at("comp.mj", 2, 10),
            "operator '+' not applicable to types BigInteger, BigInteger",
        );
        assert_eq!(
            format_diagnostic(&d),
            "comp.mj:2:10: error[E130]: operator '+' not applicable to types BigInteger, BigInteger"
        );
        let w = Diagnostic::new(Code::W050, at("a.mj", 1, 1), "both 'set' and 'put' applicable; 'set' chosen");
        assert_eq!(format_diagnostic(&w), "a.mj:1:1: warning[W050]: both 'set' and 'put' applicable; 'set' chosen");
    }

    #[test]
    fn sorts_by_file_line_col_code() {
        let mut ds = vec![
            Diagnostic::new(Code::E130, at("b.mj", 1, 1), "x"),
            Diagnostic::new(Code::E100, at("a.mj", 2, 5), "x"),
            Diagnostic::new(Code::E010, at("a.mj", 2, 5), "x"),
            Diagnostic::new(Code::E100, at("a.mj", 1, 9), "x"),
        ];
        sort_diagnostics(&mut ds);
        let order: Vec<_> = ds.iter().map(|d| (d.span.file.to_string(), d.span.line, d.code)).collect();
        assert_eq!(
            order,
            vec![
                ("a.mj".to_string(), 1, Code::E100),
                ("a.mj".to_string(), 2, Code::E010),
                ("a.mj".to_string(), 2, Code::E100),
                ("b.mj".to_string(), 1, Code::E130),
            ]
        );
    }
}
