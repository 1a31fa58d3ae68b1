//! Hand-written lexer for `.mj` sources.

use std::sync::Arc;

use crate::diag::{Code, Diagnostic};
use crate::span::Span;

use super::token::{Keyword, Sym, Token, TokenKind};

/// Tokenize `source`. On success the stream always ends with an EOF token.
pub fn tokenize(source: &str, file: &str) -> Result<Vec<Token>, Vec<Diagnostic>> {
    let mut lexer = Lexer::new(source, file);
    lexer.run();
    if lexer.diags.is_empty() {
        Ok(lexer.tokens)
    } else {
        Err(lexer.diags)
    }
}

struct Lexer<'s> {
    src: &'s str,
    bytes: &'s [u8],
    file: Arc<str>,
    pos: usize,
    line: u32,
    col: u32,
    tokens: Vec<Token>,
    diags: Vec<Diagnostic>,
}

impl<'s> Lexer<'s> {
    fn new(src: &'s str, file: &str) -> Self {
        Lexer {
            src,
            bytes: src.as_bytes(),
            file: Arc::from(file),
            pos: 0,
            line: 1,
            col: 1,
            tokens: Vec::new(),
            diags: Vec::new(),
        }
    }

    fn run(&mut self) {
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            match c {
                b' ' | b'\t' | b'\r' => self.bump(),
                b'\n' => self.bump(),
                b'/' if self.peek_at(1) == Some(b'/') => self.skip_line_comment(),
                b'/' if self.peek_at(1) == Some(b'*') => self.skip_block_comment(),
                b'0'..=b'9' => self.lex_number(),
                b'"' => self.lex_string(),
                c if c == b'_' || c.is_ascii_alphabetic() => self.lex_word(),
                _ => self.lex_symbol(),
            }
        }
        let eof_span = Span::new(self.file.clone(), self.pos as u32, 0, self.line, self.col);
        self.tokens.push(Token { kind: TokenKind::Eof, lexeme: String::new(), span: eof_span });
    }

    fn peek_at(&self, n: usize) -> Option<u8> {
        self.bytes.get(self.pos + n).copied()
    }

    fn bump(&mut self) {
        if self.bytes[self.pos] == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        self.pos += 1;
    }

    fn span_from(&self, start: usize, line: u32, col: u32) -> Span {
        Span::new(self.file.clone(), start as u32, (self.pos - start) as u32, line, col)
    }

    fn push(&mut self, kind: TokenKind, start: usize, line: u32, col: u32) {
        let span = self.span_from(start, line, col);
        let lexeme = self.src[start..self.pos].to_string();
        self.tokens.push(Token { kind, lexeme, span });
    }

    fn error(&mut self, code: Code, start: usize, line: u32, col: u32, msg: String) {
        let len = (self.pos - start).max(1);
        let span = Span::new(self.file.clone(), start as u32, len as u32, line, col);
        self.diags.push(Diagnostic::new(code, span, msg));
    }

    fn skip_line_comment(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
            self.bump();
        }
    }

    fn skip_block_comment(&mut self) {
        let (start, line, col) = (self.pos, self.line, self.col);
        self.bump();
        self.bump();
        loop {
            if self.pos >= self.bytes.len() {
                self.error(Code::E004, start, line, col, "unterminated block comment".to_string());
                return;
            }
            if self.bytes[self.pos] == b'*' && self.peek_at(1) == Some(b'/') {
                self.bump();
                self.bump();
                return;
            }
            self.bump();
        }
    }

    fn lex_word(&mut self) {
        let (start, line, col) = (self.pos, self.line, self.col);
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            if c == b'_' || c.is_ascii_alphanumeric() {
                self.bump();
            } else {
                break;
            }
        }
        let text = &self.src[start..self.pos];
        let kind = match Keyword::from_str(text) {
            Some(kw) => TokenKind::Kw(kw),
            None => TokenKind::Ident,
        };
        self.push(kind, start, line, col);
    }

    fn lex_number(&mut self) {
        let (start, line, col) = (self.pos, self.line, self.col);
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.bump();
        }
        // A '.' followed by a digit makes this a double literal.
        if self.pos < self.bytes.len()
            && self.bytes[self.pos] == b'.'
            && self.peek_at(1).is_some_and(|c| c.is_ascii_digit())
        {
            self.bump();
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.bump();
            }
            let text = &self.src[start..self.pos];
            match text.parse::<f64>() {
                Ok(v) => self.push(TokenKind::DoubleLit(v), start, line, col),
                Err(_) => self.error(Code::E003, start, line, col, format!("invalid double literal '{text}'")),
            }
            return;
        }
        if self.pos < self.bytes.len() && (self.bytes[self.pos] == b'L' || self.bytes[self.pos] == b'l') {
            self.bump();
            let text = &self.src[start..self.pos - 1];
            match text.parse::<i64>() {
                Ok(v) => self.push(TokenKind::LongLit(v), start, line, col),
                Err(_) => self.error(Code::E003, start, line, col, format!("long literal '{text}' out of range")),
            }
            return;
        }
        let text = &self.src[start..self.pos];
        match text.parse::<i32>() {
            Ok(v) => self.push(TokenKind::IntLit(v), start, line, col),
            Err(_) => self.error(Code::E003, start, line, col, format!("int literal '{text}' out of range")),
        }
    }

    fn lex_string(&mut self) {
        let (start, line, col) = (self.pos, self.line, self.col);
        self.bump();
        let mut value = String::new();
        loop {
            if self.pos >= self.bytes.len() || self.bytes[self.pos] == b'\n' {
                self.error(Code::E002, start, line, col, "unterminated string literal".to_string());
                return;
            }
            match self.bytes[self.pos] {
                b'"' => {
                    self.bump();
                    self.push(TokenKind::StrLit(value), start, line, col);
                    return;
                }
                b'\\' => {
                    self.bump();
                    if self.pos >= self.bytes.len() {
                        self.error(Code::E002, start, line, col, "unterminated string literal".to_string());
                        return;
                    }
                    let esc = self.bytes[self.pos];
                    match esc {
                        b'n' => value.push('\n'),
                        b't' => value.push('\t'),
                        b'r' => value.push('\r'),
                        b'\\' => value.push('\\'),
                        b'"' => value.push('"'),
                        b'\'' => value.push('\''),
                        other => {
                            let (el, ec) = (self.line, self.col);
                            self.error(
                                Code::E001,
                                self.pos - 1,
                                el,
                                ec - 1,
                                format!("unrecognized escape sequence '\\{}'", other as char),
                            );
                        }
                    }
                    self.bump();
                }
                _ => {
                    let c = self.src[self.pos..].chars().next().unwrap();
                    value.push(c);
                    for _ in 0..c.len_utf8() {
                        self.bump();
                    }
                }
            }
        }
    }

    fn lex_symbol(&mut self) {
        let (start, line, col) = (self.pos, self.line, self.col);
        let c = self.bytes[self.pos];
        let next = self.peek_at(1);
        // Maximal munch: try the two-character symbols first.
        let two = match (c, next) {
            (b'<', Some(b'<')) => Some(Sym::Shl),
            (b'>', Some(b'>')) => Some(Sym::Shr),
            (b'<', Some(b'=')) => Some(Sym::Le),
            (b'>', Some(b'=')) => Some(Sym::Ge),
            (b'=', Some(b'=')) => Some(Sym::EqEq),
            (b'!', Some(b'=')) => Some(Sym::Ne),
            _ => None,
        };
        if let Some(sym) = two {
            self.bump();
            self.bump();
            self.push(TokenKind::Sym(sym), start, line, col);
            return;
        }
        let one = match c {
            b'(' => Some(Sym::LParen),
            b')' => Some(Sym::RParen),
            b'{' => Some(Sym::LBrace),
            b'}' => Some(Sym::RBrace),
            b'[' => Some(Sym::LBracket),
            b']' => Some(Sym::RBracket),
            b';' => Some(Sym::Semi),
            b',' => Some(Sym::Comma),
            b'.' => Some(Sym::Dot),
            b'=' => Some(Sym::Assign),
            b'+' => Some(Sym::Plus),
            b'-' => Some(Sym::Minus),
            b'*' => Some(Sym::Star),
            b'/' => Some(Sym::Slash),
            b'%' => Some(Sym::Percent),
            b'&' => Some(Sym::Amp),
            b'|' => Some(Sym::Pipe),
            b'^' => Some(Sym::Caret),
            b'<' => Some(Sym::Lt),
            b'>' => Some(Sym::Gt),
            b'~' => Some(Sym::Tilde),
            b'!' => Some(Sym::Bang),
            _ => None,
        };
        match one {
            Some(sym) => {
                self.bump();
                self.push(TokenKind::Sym(sym), start, line, col);
            }
            None => {
                let ch = self.src[self.pos..].chars().next().unwrap();
                for _ in 0..ch.len_utf8() {
                    self.bump();
                }
                self.error(Code::E001, start, line, col, format!("unrecognized character '{ch}'"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::token::{Sym, TokenKind};

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src, "t.mj").unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn lexes_negated_sum_of_products() {
        let ks = kinds("-a + b*c");
        assert_eq!(
            ks,
            vec![
                TokenKind::Sym(Sym::Minus),
                TokenKind::Ident,
                TokenKind::Sym(Sym::Plus),
                TokenKind::Ident,
                TokenKind::Sym(Sym::Star),
                TokenKind::Ident,
                TokenKind::Eof,
            ]
        );
    }

    #[test]
    fn empty_input_is_just_eof() {
        assert_eq!(kinds(""), vec![TokenKind::Eof]);
    }

    #[test]
    fn le_is_a_single_token() {
        let ks = kinds("a <= b");
        assert_eq!(
            ks,
            vec![TokenKind::Ident, TokenKind::Sym(Sym::Le), TokenKind::Ident, TokenKind::Eof]
        );
    }

    /// Maximal-munch oracle: for every pair of operator characters, the lexer
    /// fuses them into one token exactly when the pair is a two-char symbol.
    #[test]
    fn maximal_munch_matches_pair_oracle() {
        let chars = ['<', '>', '=', '!', '+', '-', '*', '/', '%', '&', '|', '^', '~'];
        let fused = ["<<", ">>", "<=", ">=", "==", "!="];
        for a in chars {
            for b in chars {
                let src = format!("{a}{b}");
                // '//' and '/*' start comments, not operator pairs.
                if src == "//" || src == "/*" {
                    continue;
                }
                let toks = tokenize(&src, "t.mj").expect("operator pairs always lex");
                let expect_one = fused.contains(&src.as_str());
                let n = toks.len() - 1; // drop EOF
                if expect_one {
                    assert_eq!(n, 1, "{src} should lex as one token");
                    assert_eq!(toks[0].lexeme, src);
                } else {
                    assert_eq!(n, 2, "{src} should lex as two tokens");
                }
            }
        }
    }

    #[test]
    fn token_lexemes_reconstruct_source() {
        let src = "class A { // comment\n  int x; /* block */ double y;\n}\n";
        let toks = tokenize(src, "t.mj").unwrap();
        for t in &toks {
            let s = &src[t.span.offset as usize..t.span.end() as usize];
            assert_eq!(s, t.lexeme, "lexeme must be the exact source slice");
            if !matches!(t.kind, TokenKind::Eof) {
                assert!(t.span.len > 0, "only EOF may have an empty span");
            }
        }
    }

    #[test]
    fn literal_kinds() {
        let ks = kinds("1 42L 3.5 \"hi\\n\" true");
        assert_eq!(
            ks,
            vec![
                TokenKind::IntLit(1),
                TokenKind::LongLit(42),
                TokenKind::DoubleLit(3.5),
                TokenKind::StrLit("hi\n".to_string()),
                TokenKind::Kw(Keyword::True),
                TokenKind::Eof,
            ]
        );
    }

    #[test]
    fn unterminated_string_is_e002() {
        let err = tokenize("\"abc", "t.mj").unwrap_err();
        assert_eq!(err[0].code, Code::E002);
    }

    #[test]
    fn unrecognized_character_is_e001() {
        let err = tokenize("a # b", "t.mj").unwrap_err();
        assert_eq!(err[0].code, Code::E001);
        assert_eq!(err[0].span.col, 3);
    }

    #[test]
    fn int_literal_out_of_range_is_e003() {
        let err = tokenize("2147483648", "t.mj").unwrap_err();
        assert_eq!(err[0].code, Code::E003);
    }
}
