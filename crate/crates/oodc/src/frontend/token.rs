//! Tokens produced by the lexer.

use std::fmt;

use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Keyword {
    Class,
    Interface,
    Extends,
    Implements,
    Public,
    Static,
    Native,
    New,
    Return,
    If,
    Else,
    While,
    This,
    True,
    False,
    Null,
    Void,
    Int,
    Long,
    Double,
    Boolean,
    Char,
}

impl Keyword {
    pub fn from_str(s: &str) -> Option<Keyword> {
        Some(match s {
            "class" => Keyword::Class,
            "interface" => Keyword::Interface,
            "extends" => Keyword::Extends,
            "implements" => Keyword::Implements,
            "public" => Keyword::Public,
            "static" => Keyword::Static,
            "native" => Keyword::Native,
            "new" => Keyword::New,
            "return" => Keyword::Return,
            "if" => Keyword::If,
            "else" => Keyword::Else,
            "while" => Keyword::While,
            "this" => Keyword::This,
            "true" => Keyword::True,
            "false" => Keyword::False,
            "null" => Keyword::Null,
            "void" => Keyword::Void,
            "int" => Keyword::Int,
            "long" => Keyword::Long,
            "double" => Keyword::Double,
            "boolean" => Keyword::Boolean,
            "char" => Keyword::Char,
            _ => return None,
        })
    }
}

/// Punctuation and operator symbols. Two-character symbols are lexed with
/// maximal munch, so `<=` is one token and never `<` `=`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sym {
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Dot,
    Assign,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Amp,
    Pipe,
    Caret,
    Shl,
    Shr,
    Lt,
    Le,
    Gt,
    Ge,
    EqEq,
    Ne,
    Tilde,
    Bang,
}

impl Sym {
    pub fn as_str(self) -> &'static str {
        match self {
            Sym::LParen => "(",
            Sym::RParen => ")",
            Sym::LBrace => "{",
            Sym::RBrace => "}",
            Sym::LBracket => "[",
            Sym::RBracket => "]",
            Sym::Semi => ";",
            Sym::Comma => ",",
            Sym::Dot => ".",
            Sym::Assign => "=",
            Sym::Plus => "+",
            Sym::Minus => "-",
            Sym::Star => "*",
            Sym::Slash => "/",
            Sym::Percent => "%",
            Sym::Amp => "&",
            Sym::Pipe => "|",
            Sym::Caret => "^",
            Sym::Shl => "<<",
            Sym::Shr => ">>",
            Sym::Lt => "<",
            Sym::Le => "<=",
            Sym::Gt => ">",
            Sym::Ge => ">=",
            Sym::EqEq => "==",
            Sym::Ne => "!=",
            Sym::Tilde => "~",
            Sym::Bang => "!",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Kw(Keyword),
    Ident,
    IntLit(i32),
    LongLit(i64),
    DoubleLit(f64),
    StrLit(String),
    Sym(Sym),
    Eof,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    /// The exact source text of the token (empty only for EOF).
    pub lexeme: String,
    pub span: Span,
}

impl Token {
    pub fn is_sym(&self, s: Sym) -> bool {
        matches!(self.kind, TokenKind::Sym(k) if k == s)
    }

    pub fn is_kw(&self, k: Keyword) -> bool {
        matches!(self.kind, TokenKind::Kw(kk) if kk == k)
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Kw(_) => write!(f, "keyword"),
            TokenKind::Ident => write!(f, "identifier"),
            TokenKind::IntLit(_) => write!(f, "int literal"),
            TokenKind::LongLit(_) => write!(f, "long literal"),
            TokenKind::DoubleLit(_) => write!(f, "double literal"),
            TokenKind::StrLit(_) => write!(f, "string literal"),
            TokenKind::Sym(s) => write!(f, "'{}'", s.as_str()),
            TokenKind::Eof => write!(f, "end of file"),
        }
    }
}
