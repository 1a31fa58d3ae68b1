//! Recursive-descent parser with precedence climbing for expressions.
//!
//! Expression nesting follows the standard Java precedence table:
//! assignment < `|` < `^` < `&` < equality < relational < shift < additive
//! < multiplicative < unary < postfix. Assignment is right-associative, all
//! other binary operators are left-associative.

use crate::diag::{Code, Diagnostic};
use crate::span::Span;

use super::ast::*;
use super::token::{Keyword, Sym, Token, TokenKind};

type PResult<T> = Result<T, ()>;

/// Parse a token stream (ending in EOF) into a compilation unit.
pub fn parse_unit(tokens: Vec<Token>) -> Result<Unit, Vec<Diagnostic>> {
    let mut p = Parser::new(tokens);
    let unit = p.parse_unit();
    if p.diags.is_empty() {
        Ok(unit)
    } else {
        Err(p.diags)
    }
}

/// Parse a single expression; used by tests and debugging tools.
pub fn parse_expression(tokens: Vec<Token>) -> Result<Expr, Vec<Diagnostic>> {
    let mut p = Parser::new(tokens);
    match p.parse_expr() {
        Ok(e) if p.diags.is_empty() && p.peek().kind == TokenKind::Eof => Ok(e),
        Ok(_) | Err(()) => {
            if p.diags.is_empty() {
                let d = p.unexpected("end of file");
                p.diags.push(d);
            }
            Err(p.diags)
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    /// When `Some((i, tok))`, the `>>` at index `i` has had its first `>`
    /// consumed by a closing type-argument list; `tok` is the remaining `>`.
    pending_gt: Option<(usize, Token)>,
    /// Non-zero while speculating; suppresses diagnostic reporting.
    quiet: u32,
    diags: Vec<Diagnostic>,
}

#[derive(Clone)]
struct SavePoint {
    pos: usize,
    pending_gt: Option<(usize, Token)>,
}

impl Parser {
    fn new(tokens: Vec<Token>) -> Self {
        assert!(matches!(tokens.last().map(|t| &t.kind), Some(TokenKind::Eof)), "token stream must end with EOF");
        Parser { tokens, pos: 0, pending_gt: None, quiet: 0, diags: Vec::new() }
    }

    fn save(&self) -> SavePoint {
        SavePoint { pos: self.pos, pending_gt: self.pending_gt.clone() }
    }

    fn restore(&mut self, s: SavePoint) {
        self.pos = s.pos;
        self.pending_gt = s.pending_gt;
    }

    fn peek(&self) -> &Token {
        if let Some((i, t)) = &self.pending_gt {
            if *i == self.pos {
                return t;
            }
        }
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn advance(&mut self) -> Token {
        if let Some((i, t)) = &self.pending_gt {
            if *i == self.pos {
                let t = t.clone();
                self.pending_gt = None;
                self.pos += 1;
                return t;
            }
        }
        let t = self.tokens[self.pos.min(self.tokens.len() - 1)].clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn at_eof(&self) -> bool {
        self.peek().kind == TokenKind::Eof
    }

    fn report(&mut self, d: Diagnostic) {
        if self.quiet == 0 {
            self.diags.push(d);
        }
    }

    fn unexpected(&mut self, expected: &str) -> Diagnostic {
        let tok = self.peek();
        Diagnostic::new(
            Code::E010,
            tok.span.clone(),
            format!("unexpected {}; expected {}", tok.kind, expected),
        )
    }

    fn err_expected(&mut self, expected: &str) -> PResult<Token> {
        let d = self.unexpected(expected);
        self.report(d);
        Err(())
    }

    fn expect_sym(&mut self, s: Sym) -> PResult<Token> {
        if self.peek().is_sym(s) {
            Ok(self.advance())
        } else if self.at_eof() && matches!(s, Sym::RBrace | Sym::RParen | Sym::RBracket) {
            let tok_span = self.peek().span.clone();
            self.report(Diagnostic::new(
                Code::E011,
                tok_span,
                format!("unbalanced delimiter: expected '{}' before end of file", s.as_str()),
            ));
            Err(())
        } else {
            self.err_expected(&format!("'{}'", s.as_str())).map(|_| unreachable!())
        }
    }

    fn expect_kw(&mut self, k: Keyword, what: &str) -> PResult<Token> {
        if self.peek().is_kw(k) {
            Ok(self.advance())
        } else {
            self.err_expected(what).map(|_| unreachable!())
        }
    }

    fn expect_ident(&mut self) -> PResult<Token> {
        if self.peek().kind == TokenKind::Ident {
            Ok(self.advance())
        } else {
            self.err_expected("identifier").map(|_| unreachable!())
        }
    }

    /// Consume a `>` that closes a type-argument list, splitting a `>>`
    /// token contextually (`Map<String, List<Foo>>`).
    fn expect_type_close(&mut self) -> PResult<Span> {
        let tok = self.peek().clone();
        match tok.kind {
            TokenKind::Sym(Sym::Gt) => Ok(self.advance().span),
            TokenKind::Sym(Sym::Shr) => {
                let first = Span::new(tok.span.file.clone(), tok.span.offset, 1, tok.span.line, tok.span.col);
                let second = Span::new(tok.span.file.clone(), tok.span.offset + 1, 1, tok.span.line, tok.span.col + 1);
                self.pending_gt = Some((
                    self.pos,
                    Token { kind: TokenKind::Sym(Sym::Gt), lexeme: ">".to_string(), span: second },
                ));
                Ok(first)
            }
            _ => self.err_expected("'>'").map(|_| unreachable!()),
        }
    }

    // -- declarations -------------------------------------------------------

    fn parse_unit(&mut self) -> Unit {
        let mut decls = Vec::new();
        while !self.at_eof() {
            let start = self.save();
            match self.parse_decl() {
                Ok(d) => decls.push(d),
                Err(()) => {
                    // Recover at the next top-level declaration.
                    if self.save().pos == start.pos && !self.at_eof() {
                        self.advance();
                    }
                    while !self.at_eof()
                        && !self.peek().is_kw(Keyword::Class)
                        && !self.peek().is_kw(Keyword::Interface)
                        && !self.peek().is_kw(Keyword::Public)
                    {
                        self.advance();
                    }
                }
            }
        }
        Unit { decls }
    }

    fn parse_decl(&mut self) -> PResult<Decl> {
        // An optional `public` may prefix a top-level declaration.
        if self.peek().is_kw(Keyword::Public) {
            self.advance();
        }
        if self.peek().is_kw(Keyword::Class) {
            self.parse_class().map(Decl::Class)
        } else if self.peek().is_kw(Keyword::Interface) {
            self.parse_interface().map(Decl::Interface)
        } else {
            self.err_expected("'class' or 'interface'").map(|_| unreachable!())
        }
    }

    fn parse_type_params(&mut self) -> PResult<Vec<TypeParamDecl>> {
        let mut params = Vec::new();
        if !self.peek().is_sym(Sym::Lt) {
            return Ok(params);
        }
        self.advance();
        loop {
            let name_tok = self.expect_ident()?;
            let mut span = name_tok.span.clone();
            let bound = if self.peek().is_kw(Keyword::Extends) {
                self.advance();
                let b = self.parse_type_expr()?;
                span = span.to(&b.span);
                Some(b)
            } else {
                None
            };
            params.push(TypeParamDecl { name: name_tok.lexeme, bound, span });
            if self.peek().is_sym(Sym::Comma) {
                self.advance();
            } else {
                break;
            }
        }
        self.expect_type_close()?;
        // Type-parameter names must be unique within the declaration.
        for i in 1..params.len() {
            if params[..i].iter().any(|p| p.name == params[i].name) {
                let d = Diagnostic::new(
                    Code::E010,
                    params[i].span.clone(),
                    format!("duplicate type parameter '{}'", params[i].name),
                );
                self.report(d);
                return Err(());
            }
        }
        Ok(params)
    }

    fn parse_class(&mut self) -> PResult<ClassDecl> {
        let kw = self.expect_kw(Keyword::Class, "'class'")?;
        let name = self.expect_ident()?;
        let type_params = self.parse_type_params()?;
        let superclass = if self.peek().is_kw(Keyword::Extends) {
            self.advance();
            Some(self.parse_type_expr()?)
        } else {
            None
        };
        let mut interfaces = Vec::new();
        if self.peek().is_kw(Keyword::Implements) {
            self.advance();
            loop {
                interfaces.push(self.parse_type_expr()?);
                if self.peek().is_sym(Sym::Comma) {
                    self.advance();
                } else {
                    break;
                }
            }
        }
        self.expect_sym(Sym::LBrace)?;
        let mut members = Vec::new();
        while !self.peek().is_sym(Sym::RBrace) && !self.at_eof() {
            let start = self.pos;
            match self.parse_member(&name.lexeme) {
                Ok(ms) => members.extend(ms),
                Err(()) => {
                    if self.pos == start && !self.at_eof() {
                        self.advance();
                    }
                    self.sync_member();
                }
            }
        }
        let close = self.expect_sym(Sym::RBrace)?;
        Ok(ClassDecl {
            name: name.lexeme,
            type_params,
            superclass,
            interfaces,
            members,
            span: kw.span.to(&close.span),
        })
    }

    fn parse_interface(&mut self) -> PResult<InterfaceDecl> {
        let kw = self.expect_kw(Keyword::Interface, "'interface'")?;
        let name = self.expect_ident()?;
        let type_params = self.parse_type_params()?;
        self.expect_sym(Sym::LBrace)?;
        let mut methods = Vec::new();
        while !self.peek().is_sym(Sym::RBrace) && !self.at_eof() {
            let start = self.pos;
            match self.parse_interface_method() {
                Ok(m) => methods.push(m),
                Err(()) => {
                    if self.pos == start && !self.at_eof() {
                        self.advance();
                    }
                    self.sync_member();
                }
            }
        }
        let close = self.expect_sym(Sym::RBrace)?;
        Ok(InterfaceDecl { name: name.lexeme, type_params, methods, span: kw.span.to(&close.span) })
    }

    /// Skip to a plausible member boundary after an error.
    fn sync_member(&mut self) {
        let mut depth = 0usize;
        while !self.at_eof() {
            match self.peek().kind {
                TokenKind::Sym(Sym::Semi) if depth == 0 => {
                    self.advance();
                    return;
                }
                TokenKind::Sym(Sym::LBrace) => {
                    depth += 1;
                    self.advance();
                }
                TokenKind::Sym(Sym::RBrace) => {
                    if depth == 0 {
                        return;
                    }
                    depth -= 1;
                    self.advance();
                    if depth == 0 {
                        return;
                    }
                }
                _ => {
                    self.advance();
                }
            }
        }
    }

    fn parse_modifiers(&mut self) -> Modifiers {
        let mut m = Modifiers::default();
        loop {
            if self.peek().is_kw(Keyword::Public) {
                m.is_public = true;
                self.advance();
            } else if self.peek().is_kw(Keyword::Static) {
                m.is_static = true;
                self.advance();
            } else if self.peek().is_kw(Keyword::Native) {
                m.is_native = true;
                self.advance();
            } else {
                return m;
            }
        }
    }

    fn parse_member(&mut self, class_name: &str) -> PResult<Vec<Member>> {
        let start_span = self.peek().span.clone();
        let modifiers = self.parse_modifiers();

        // Constructor: the class name followed directly by '('.
        if self.peek().kind == TokenKind::Ident
            && self.peek().lexeme == class_name
            && self.tokens.get(self.pos + 1).is_some_and(|t| t.is_sym(Sym::LParen))
            && self.pending_gt.is_none()
        {
            let name = self.advance();
            let params = self.parse_params()?;
            let body = self.parse_block()?;
            let span = start_span.to(&body.span);
            let _ = name;
            return Ok(vec![Member::Ctor(CtorDecl { modifiers, params, body, span })]);
        }

        let type_params = if self.peek().is_sym(Sym::Lt) { self.parse_type_params()? } else { Vec::new() };
        let ret = self.parse_return_type()?;
        let name = self.expect_ident()?;

        if self.peek().is_sym(Sym::LParen) {
            let params = self.parse_params()?;
            let (body, end_span) = if self.peek().is_sym(Sym::Semi) {
                let semi = self.advance();
                if !modifiers.is_native {
                    let d = Diagnostic::new(
                        Code::E010,
                        semi.span.clone(),
                        "method without a body must be declared 'native'".to_string(),
                    );
                    self.report(d);
                    return Err(());
                }
                (None, semi.span)
            } else {
                let b = self.parse_block()?;
                let sp = b.span.clone();
                (Some(b), sp)
            };
            return Ok(vec![Member::Method(MethodDecl {
                modifiers,
                type_params,
                ret,
                name: name.lexeme,
                params,
                body,
                span: start_span.to(&end_span),
            })]);
        }

        // Field declaration, possibly with several declarators.
        if !type_params.is_empty() {
            let d = Diagnostic::new(Code::E010, name.span.clone(), "fields cannot declare type parameters".to_string());
            self.report(d);
            return Err(());
        }
        if matches!(ret.kind, TypeExprKind::Void) {
            let d = Diagnostic::new(Code::E010, ret.span.clone(), "fields cannot have type void".to_string());
            self.report(d);
            return Err(());
        }
        let mut fields = vec![Member::Field(FieldDecl {
            modifiers,
            ty: ret.clone(),
            name: name.lexeme,
            span: start_span.to(&name.span),
        })];
        while self.peek().is_sym(Sym::Comma) {
            self.advance();
            let n = self.expect_ident()?;
            fields.push(Member::Field(FieldDecl {
                modifiers,
                ty: ret.clone(),
                name: n.lexeme,
                span: ret.span.to(&n.span),
            }));
        }
        if self.peek().is_sym(Sym::Assign) {
            let d = Diagnostic::new(Code::E010, self.peek().span.clone(), "field initializers are not supported".to_string());
            self.report(d);
            return Err(());
        }
        self.expect_sym(Sym::Semi)?;
        Ok(fields)
    }

    fn parse_interface_method(&mut self) -> PResult<MethodDecl> {
        let start_span = self.peek().span.clone();
        let modifiers = self.parse_modifiers();
        if modifiers.is_static || modifiers.is_native {
            let d = Diagnostic::new(
                Code::E010,
                start_span.clone(),
                "interface methods are abstract instance signatures".to_string(),
            );
            self.report(d);
            return Err(());
        }
        let type_params = if self.peek().is_sym(Sym::Lt) { self.parse_type_params()? } else { Vec::new() };
        let ret = self.parse_return_type()?;
        let name = self.expect_ident()?;
        let params = self.parse_params()?;
        let semi = self.expect_sym(Sym::Semi)?;
        Ok(MethodDecl {
            modifiers,
            type_params,
            ret,
            name: name.lexeme,
            params,
            body: None,
            span: start_span.to(&semi.span),
        })
    }

    fn parse_params(&mut self) -> PResult<Vec<Param>> {
        self.expect_sym(Sym::LParen)?;
        let mut params = Vec::new();
        if !self.peek().is_sym(Sym::RParen) {
            loop {
                let ty = self.parse_type_expr()?;
                let name = self.expect_ident()?;
                params.push(Param { span: ty.span.to(&name.span), ty, name: name.lexeme });
                if self.peek().is_sym(Sym::Comma) {
                    self.advance();
                } else {
                    break;
                }
            }
        }
        self.expect_sym(Sym::RParen)?;
        Ok(params)
    }

    // -- types --------------------------------------------------------------

    fn parse_return_type(&mut self) -> PResult<TypeExpr> {
        if self.peek().is_kw(Keyword::Void) {
            let t = self.advance();
            return Ok(TypeExpr { kind: TypeExprKind::Void, span: t.span });
        }
        self.parse_type_expr()
    }

    fn prim_keyword(&self) -> Option<PrimKind> {
        match self.peek().kind {
            TokenKind::Kw(Keyword::Int) => Some(PrimKind::Int),
            TokenKind::Kw(Keyword::Long) => Some(PrimKind::Long),
            TokenKind::Kw(Keyword::Double) => Some(PrimKind::Double),
            TokenKind::Kw(Keyword::Boolean) => Some(PrimKind::Boolean),
            TokenKind::Kw(Keyword::Char) => Some(PrimKind::Char),
            _ => None,
        }
    }

    fn parse_type_expr(&mut self) -> PResult<TypeExpr> {
        let base = if let Some(p) = self.prim_keyword() {
            let t = self.advance();
            TypeExpr { kind: TypeExprKind::Prim(p), span: t.span }
        } else if self.peek().kind == TokenKind::Ident {
            let name = self.advance();
            let mut span = name.span.clone();
            let mut args = Vec::new();
            if self.peek().is_sym(Sym::Lt) {
                self.advance();
                loop {
                    args.push(self.parse_type_expr()?);
                    if self.peek().is_sym(Sym::Comma) {
                        self.advance();
                    } else {
                        break;
                    }
                }
                let close = self.expect_type_close()?;
                span = span.to(&close);
            }
            TypeExpr { kind: TypeExprKind::Named(name.lexeme, args), span }
        } else {
            return self.err_expected("a type").map(|_| unreachable!());
        };
        // One optional array suffix; the subset has no arrays of arrays.
        if self.peek().is_sym(Sym::LBracket) && self.tokens.get(self.pos + 1).is_some_and(|t| t.is_sym(Sym::RBracket)) {
            self.advance();
            let close = self.advance();
            let span = base.span.to(&close.span);
            return Ok(TypeExpr { kind: TypeExprKind::Array(Box::new(base)), span });
        }
        Ok(base)
    }

    // -- statements ---------------------------------------------------------

    fn parse_block(&mut self) -> PResult<Block> {
        let open = self.expect_sym(Sym::LBrace)?;
        let mut stmts = Vec::new();
        while !self.peek().is_sym(Sym::RBrace) && !self.at_eof() {
            let start = self.pos;
            match self.parse_stmt_into(&mut stmts) {
                Ok(()) => {}
                Err(()) => {
                    if self.pos == start && !self.at_eof() {
                        self.advance();
                    }
                    self.sync_stmt();
                }
            }
        }
        let close = self.expect_sym(Sym::RBrace)?;
        Ok(Block { stmts, span: open.span.to(&close.span) })
    }

    fn sync_stmt(&mut self) {
        let mut depth = 0usize;
        while !self.at_eof() {
            match self.peek().kind {
                TokenKind::Sym(Sym::Semi) if depth == 0 => {
                    self.advance();
                    return;
                }
                TokenKind::Sym(Sym::LBrace) => {
                    depth += 1;
                    self.advance();
                }
                TokenKind::Sym(Sym::RBrace) => {
                    if depth == 0 {
                        return;
                    }
                    depth -= 1;
                    self.advance();
                }
                _ => {
                    self.advance();
                }
            }
        }
    }

    fn parse_stmt(&mut self) -> PResult<Stmt> {
        let mut out = Vec::new();
        self.parse_stmt_into(&mut out)?;
        if out.len() == 1 {
            Ok(out.pop().unwrap())
        } else {
            // A multi-declarator local used where a single statement is
            // required (an unbraced if/while body); wrap in a block.
            let span = out
                .first()
                .map(|s| s.span().to(out.last().unwrap().span()))
                .unwrap_or_else(Span::synthetic);
            Ok(Stmt::Block(Block { stmts: out, span }))
        }
    }

    fn parse_stmt_into(&mut self, out: &mut Vec<Stmt>) -> PResult<()> {
        let tok = self.peek().clone();
        match tok.kind {
            TokenKind::Sym(Sym::LBrace) => {
                let b = self.parse_block()?;
                out.push(Stmt::Block(b));
                Ok(())
            }
            TokenKind::Kw(Keyword::If) => {
                let kw = self.advance();
                self.expect_sym(Sym::LParen)?;
                let cond = self.parse_expr()?;
                self.expect_sym(Sym::RParen)?;
                let then = Box::new(self.parse_stmt()?);
                let (els, end) = if self.peek().is_kw(Keyword::Else) {
                    self.advance();
                    let e = self.parse_stmt()?;
                    let sp = e.span().clone();
                    (Some(Box::new(e)), sp)
                } else {
                    (None, then.span().clone())
                };
                out.push(Stmt::If { cond, then, els, span: kw.span.to(&end) });
                Ok(())
            }
            TokenKind::Kw(Keyword::While) => {
                let kw = self.advance();
                self.expect_sym(Sym::LParen)?;
                let cond = self.parse_expr()?;
                self.expect_sym(Sym::RParen)?;
                let body = Box::new(self.parse_stmt()?);
                let span = kw.span.to(body.span());
                out.push(Stmt::While { cond, body, span });
                Ok(())
            }
            TokenKind::Kw(Keyword::Return) => {
                let kw = self.advance();
                let value = if self.peek().is_sym(Sym::Semi) { None } else { Some(self.parse_expr()?) };
                let semi = self.expect_sym(Sym::Semi)?;
                out.push(Stmt::Return { value, span: kw.span.to(&semi.span) });
                Ok(())
            }
            _ => {
                if let Some((ty, name)) = self.try_local_decl_prefix() {
                    return self.finish_local_decl(ty, name, out);
                }
                let e = self.parse_expr()?;
                self.expect_sym(Sym::Semi)?;
                out.push(Stmt::Expr(e));
                Ok(())
            }
        }
    }

    /// Speculatively parse `Type Ident`; on failure the cursor is restored
    /// and the statement is parsed as an expression instead.
    fn try_local_decl_prefix(&mut self) -> Option<(TypeExpr, Token)> {
        let could_start_type = self.prim_keyword().is_some() || self.peek().kind == TokenKind::Ident;
        if !could_start_type {
            return None;
        }
        let save = self.save();
        self.quiet += 1;
        let result = self.parse_type_expr().and_then(|ty| self.expect_ident().map(|n| (ty, n)));
        self.quiet -= 1;
        match result {
            Ok(v) => Some(v),
            Err(()) => {
                self.restore(save);
                None
            }
        }
    }

    fn finish_local_decl(&mut self, ty: TypeExpr, name: Token, out: &mut Vec<Stmt>) -> PResult<()> {
        let mut pending = vec![(name.lexeme.clone(), name.span.clone(), None::<Expr>)];
        loop {
            if self.peek().is_sym(Sym::Assign) {
                self.advance();
                let init = self.parse_expr()?;
                pending.last_mut().unwrap().2 = Some(init);
            }
            if self.peek().is_sym(Sym::Comma) {
                self.advance();
                let n = self.expect_ident()?;
                pending.push((n.lexeme, n.span, None));
            } else {
                break;
            }
        }
        let semi = self.expect_sym(Sym::Semi)?;
        for (n, nspan, init) in pending {
            let span = ty.span.to(&init.as_ref().map(|e| e.span.clone()).unwrap_or(nspan)).to(&semi.span);
            out.push(Stmt::Local { ty: ty.clone(), name: n, init, span });
        }
        Ok(())
    }

    // -- expressions --------------------------------------------------------

    fn parse_expr(&mut self) -> PResult<Expr> {
        let lhs = self.parse_binary(2)?;
        if !self.peek().is_sym(Sym::Assign) {
            return Ok(lhs);
        }
        self.advance();
        let value = self.parse_expr()?; // right-associative
        let span = lhs.span.to(&value.span);
        match lhs.kind {
            ExprKind::Name(_) | ExprKind::Field { .. } => Ok(Expr {
                kind: ExprKind::Assign { target: Box::new(lhs), value: Box::new(value) },
                span,
            }),
            ExprKind::IndexRead { coll, index } => Ok(Expr {
                kind: ExprKind::IndexWrite { coll, index, value: Box::new(value) },
                span,
            }),
            _ => {
                let d = Diagnostic::new(Code::E010, lhs.span.clone(), "invalid assignment target".to_string());
                self.report(d);
                Err(())
            }
        }
    }

    fn current_binop(&self) -> Option<BinaryOp> {
        match self.peek().kind {
            TokenKind::Sym(Sym::Plus) => Some(BinaryOp::Add),
            TokenKind::Sym(Sym::Minus) => Some(BinaryOp::Sub),
            TokenKind::Sym(Sym::Star) => Some(BinaryOp::Mul),
            TokenKind::Sym(Sym::Slash) => Some(BinaryOp::Div),
            TokenKind::Sym(Sym::Percent) => Some(BinaryOp::Rem),
            TokenKind::Sym(Sym::Amp) => Some(BinaryOp::And),
            TokenKind::Sym(Sym::Pipe) => Some(BinaryOp::Or),
            TokenKind::Sym(Sym::Caret) => Some(BinaryOp::Xor),
            TokenKind::Sym(Sym::Shl) => Some(BinaryOp::Shl),
            TokenKind::Sym(Sym::Shr) => Some(BinaryOp::Shr),
            TokenKind::Sym(Sym::Lt) => Some(BinaryOp::Lt),
            TokenKind::Sym(Sym::Le) => Some(BinaryOp::Le),
            TokenKind::Sym(Sym::Gt) => Some(BinaryOp::Gt),
            TokenKind::Sym(Sym::Ge) => Some(BinaryOp::Ge),
            TokenKind::Sym(Sym::EqEq) => Some(BinaryOp::Eq),
            TokenKind::Sym(Sym::Ne) => Some(BinaryOp::Ne),
            _ => None,
        }
    }

    fn parse_binary(&mut self, min_prec: u8) -> PResult<Expr> {
        let mut lhs = self.parse_unary()?;
        while let Some(op) = self.current_binop() {
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            let op_tok = self.advance();
            let rhs = self.parse_binary(prec + 1)?;
            let span = lhs.span.to(&rhs.span);
            lhs = Expr {
                kind: ExprKind::Binary { op, op_span: op_tok.span, lhs: Box::new(lhs), rhs: Box::new(rhs) },
                span,
            };
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> PResult<Expr> {
        let op = match self.peek().kind {
            TokenKind::Sym(Sym::Minus) => Some(UnaryOp::Neg),
            TokenKind::Sym(Sym::Tilde) => Some(UnaryOp::BitNot),
            TokenKind::Sym(Sym::Bang) => Some(UnaryOp::Not),
            _ => None,
        };
        if let Some(op) = op {
            let op_tok = self.advance();
            let operand = self.parse_unary()?;
            let span = op_tok.span.to(&operand.span);
            return Ok(Expr { kind: ExprKind::Unary { op, op_span: op_tok.span, expr: Box::new(operand) }, span });
        }
        self.parse_postfix()
    }

    fn parse_postfix(&mut self) -> PResult<Expr> {
        let mut expr = self.parse_primary()?;
        loop {
            if self.peek().is_sym(Sym::Dot) {
                self.advance();
                let name = self.expect_ident()?;
                if self.peek().is_sym(Sym::LParen) {
                    let (args, close) = self.parse_args()?;
                    let span = expr.span.to(&close);
                    expr = Expr {
                        kind: ExprKind::Call { recv: Some(Box::new(expr)), name: name.lexeme, args },
                        span,
                    };
                } else {
                    let span = expr.span.to(&name.span);
                    expr = Expr { kind: ExprKind::Field { recv: Box::new(expr), name: name.lexeme }, span };
                }
            } else if self.peek().is_sym(Sym::LBracket) {
                self.advance();
                let index = self.parse_expr()?;
                let close = self.expect_sym(Sym::RBracket)?;
                let span = expr.span.to(&close.span);
                expr = Expr {
                    kind: ExprKind::IndexRead { coll: Box::new(expr), index: Box::new(index) },
                    span,
                };
            } else {
                return Ok(expr);
            }
        }
    }

    fn parse_args(&mut self) -> PResult<(Vec<Expr>, Span)> {
        self.expect_sym(Sym::LParen)?;
        let mut args = Vec::new();
        if !self.peek().is_sym(Sym::RParen) {
            loop {
                args.push(self.parse_expr()?);
                if self.peek().is_sym(Sym::Comma) {
                    self.advance();
                } else {
                    break;
                }
            }
        }
        let close = self.expect_sym(Sym::RParen)?;
        Ok((args, close.span))
    }

    fn parse_primary(&mut self) -> PResult<Expr> {
        let tok = self.peek().clone();
        match tok.kind {
            TokenKind::IntLit(v) => {
                self.advance();
                Ok(Expr { kind: ExprKind::Lit(Lit::Int(v)), span: tok.span })
            }
            TokenKind::LongLit(v) => {
                self.advance();
                Ok(Expr { kind: ExprKind::Lit(Lit::Long(v)), span: tok.span })
            }
            TokenKind::DoubleLit(v) => {
                self.advance();
                Ok(Expr { kind: ExprKind::Lit(Lit::Double(v)), span: tok.span })
            }
            TokenKind::StrLit(ref s) => {
                let s = s.clone();
                self.advance();
                Ok(Expr { kind: ExprKind::Lit(Lit::Str(s)), span: tok.span })
            }
            TokenKind::Kw(Keyword::True) => {
                self.advance();
                Ok(Expr { kind: ExprKind::Lit(Lit::Bool(true)), span: tok.span })
            }
            TokenKind::Kw(Keyword::False) => {
                self.advance();
                Ok(Expr { kind: ExprKind::Lit(Lit::Bool(false)), span: tok.span })
            }
            TokenKind::Kw(Keyword::Null) => {
                self.advance();
                Ok(Expr { kind: ExprKind::Lit(Lit::Null), span: tok.span })
            }
            TokenKind::Kw(Keyword::This) => {
                self.advance();
                Ok(Expr { kind: ExprKind::Name("this".to_string()), span: tok.span })
            }
            TokenKind::Ident => {
                self.advance();
                if self.peek().is_sym(Sym::LParen) {
                    let (args, close) = self.parse_args()?;
                    let span = tok.span.to(&close);
                    Ok(Expr { kind: ExprKind::Call { recv: None, name: tok.lexeme, args }, span })
                } else {
                    Ok(Expr { kind: ExprKind::Name(tok.lexeme), span: tok.span })
                }
            }
            TokenKind::Sym(Sym::LParen) => {
                self.advance();
                let inner = self.parse_expr()?;
                let close = self.expect_sym(Sym::RParen)?;
                Ok(Expr { kind: ExprKind::Paren(Box::new(inner)), span: tok.span.to(&close.span) })
            }
            TokenKind::Kw(Keyword::New) => self.parse_new(),
            _ => self.err_expected("an expression").map(|_| unreachable!()),
        }
    }

    fn parse_new(&mut self) -> PResult<Expr> {
        let kw = self.expect_kw(Keyword::New, "'new'")?;
        if let Some(p) = self.prim_keyword() {
            let t = self.advance();
            let elem = TypeExpr { kind: TypeExprKind::Prim(p), span: t.span };
            self.expect_sym(Sym::LBracket)?;
            let len = self.parse_expr()?;
            let close = self.expect_sym(Sym::RBracket)?;
            let span = kw.span.to(&close.span);
            return Ok(Expr { kind: ExprKind::NewArray { elem, len: Box::new(len) }, span });
        }
        let name = self.expect_ident()?;
        let mut args_ty = Vec::new();
        let mut ty_span = name.span.clone();
        if self.peek().is_sym(Sym::Lt) {
            self.advance();
            loop {
                args_ty.push(self.parse_type_expr()?);
                if self.peek().is_sym(Sym::Comma) {
                    self.advance();
                } else {
                    break;
                }
            }
            let close = self.expect_type_close()?;
            ty_span = ty_span.to(&close);
        }
        let class = TypeExpr { kind: TypeExprKind::Named(name.lexeme, args_ty), span: ty_span };
        if self.peek().is_sym(Sym::LBracket) {
            if !matches!(&class.kind, TypeExprKind::Named(_, a) if a.is_empty()) {
                let d = Diagnostic::new(Code::E010, class.span.clone(), "generic array creation is not supported".to_string());
                self.report(d);
                return Err(());
            }
            self.advance();
            let len = self.parse_expr()?;
            let close = self.expect_sym(Sym::RBracket)?;
            let span = kw.span.to(&close.span);
            return Ok(Expr { kind: ExprKind::NewArray { elem: class, len: Box::new(len) }, span });
        }
        let (args, close) = self.parse_args()?;
        let span = kw.span.to(&close);
        Ok(Expr { kind: ExprKind::New { class, args }, span })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::lexer::tokenize;

    fn expr(src: &str) -> Expr {
        parse_expression(tokenize(src, "t.mj").unwrap()).unwrap()
    }

    fn unit(src: &str) -> Unit {
        parse_unit(tokenize(src, "t.mj").unwrap()).unwrap()
    }

    fn unit_err(src: &str) -> Vec<Diagnostic> {
        parse_unit(tokenize(src, "t.mj").unwrap()).unwrap_err()
    }

    /// Render the operator nesting of an expression, ignoring spans.
    fn shape(e: &Expr) -> String {
        match &e.kind {
            ExprKind::Lit(Lit::Int(v)) => v.to_string(),
            ExprKind::Name(n) => n.clone(),
            ExprKind::Unary { op, expr, .. } => format!("({}{})", op.as_str(), shape(expr)),
            ExprKind::Binary { op, lhs, rhs, .. } => {
                format!("({}{}{})", shape(lhs), op.as_str(), shape(rhs))
            }
            ExprKind::Paren(inner) => shape(inner),
            ExprKind::IndexRead { coll, index } => format!("{}[{}]", shape(coll), shape(index)),
            ExprKind::IndexWrite { coll, index, value } => {
                format!("{}[{}]={}", shape(coll), shape(index), shape(value))
            }
            ExprKind::Assign { target, value } => format!("({}={})", shape(target), shape(value)),
            ExprKind::Field { recv, name } => format!("{}.{}", shape(recv), name),
            ExprKind::Call { recv, name, args } => {
                let args: Vec<_> = args.iter().map(shape).collect();
                match recv {
                    Some(r) => format!("{}.{}({})", shape(r), name, args.join(",")),
                    None => format!("{}({})", name, args.join(",")),
                }
            }
            other => format!("{other:?}"),
        }
    }

    #[test]
    fn multiplication_nests_under_addition() {
        assert_eq!(shape(&expr("a+b*c")), "(a+(b*c))");
    }

    #[test]
    fn unary_binds_tighter_than_binary() {
        assert_eq!(shape(&expr("-a + b*c")), "((-a)+(b*c))");
    }

    #[test]
    fn subtraction_is_left_associative() {
        assert_eq!(shape(&expr("a - b - c")), "((a-b)-c)");
    }

    #[test]
    fn index_assignment_parses_as_index_write() {
        assert_eq!(shape(&expr("m[i] = v")), "m[i]=v");
    }

    #[test]
    fn assignment_is_right_associative() {
        assert_eq!(shape(&expr("a = b = c")), "(a=(b=c))");
    }

    #[test]
    fn full_precedence_ladder() {
        assert_eq!(shape(&expr("a | b ^ c & d == e < f << g + h * i")), "(a|(b^(c&(d==(e<(f<<(g+(h*i))))))))");
    }

    #[test]
    fn shift_vs_relational() {
        assert_eq!(shape(&expr("a << b < c")), "((a<<b)<c)");
    }

    #[test]
    fn parens_are_recorded() {
        let e = expr("(a + b) * c");
        assert_eq!(shape(&e), "((a+b)*c)");
        if let ExprKind::Binary { lhs, .. } = &e.kind {
            assert!(matches!(lhs.kind, ExprKind::Paren(_)));
        } else {
            panic!("expected binary");
        }
    }

    #[test]
    fn postfix_binds_tighter_than_unary() {
        assert_eq!(shape(&expr("-a.negate()")), "(-a.negate())");
        assert_eq!(shape(&expr("-a.b")), "(-a.b)");
    }

    #[test]
    fn nested_generic_arguments_split_shr() {
        let u = unit("class A { Map<String, List<Foo>> m; }");
        let Decl::Class(c) = &u.decls[0] else { panic!() };
        let Member::Field(f) = &c.members[0] else { panic!() };
        let TypeExprKind::Named(n, args) = &f.ty.kind else { panic!() };
        assert_eq!(n, "Map");
        assert_eq!(args.len(), 2);
        let TypeExprKind::Named(inner, inner_args) = &args[1].kind else { panic!() };
        assert_eq!(inner, "List");
        assert!(matches!(inner_args[0].kind, TypeExprKind::Named(ref f, _) if f == "Foo"));
    }

    #[test]
    fn triple_nested_generics() {
        let u = unit("class A { List<List<List<Foo>>> m; }");
        assert_eq!(u.decls.len(), 1);
    }

    #[test]
    fn local_declaration_vs_expression_statement() {
        let u = unit("class A { void f() { List<Integer> xs = new List<Integer>(); a = 1; } }");
        let Decl::Class(c) = &u.decls[0] else { panic!() };
        let Member::Method(m) = &c.members[0] else { panic!() };
        let stmts = &m.body.as_ref().unwrap().stmts;
        assert!(matches!(stmts[0], Stmt::Local { .. }));
        assert!(matches!(stmts[1], Stmt::Expr(_)));
    }

    #[test]
    fn multi_declarator_fields_split() {
        let u = unit("class P { double x, y; }");
        let Decl::Class(c) = &u.decls[0] else { panic!() };
        assert_eq!(c.members.len(), 2);
    }

    #[test]
    fn generic_method_declaration() {
        let u = unit("class A { static <TM, TA extends MyNumber<TA, TM>> TA comp(TA a, TA b, TM c) { return a; } }");
        let Decl::Class(c) = &u.decls[0] else { panic!() };
        let Member::Method(m) = &c.members[0] else { panic!() };
        assert_eq!(m.type_params.len(), 2);
        assert_eq!(m.type_params[1].name, "TA");
        assert!(m.type_params[1].bound.is_some());
        assert!(m.modifiers.is_static);
    }

    #[test]
    fn unexpected_token_is_e010() {
        let ds = unit_err("class A { void f() { return + ; } }");
        assert!(ds.iter().any(|d| d.code == Code::E010), "{ds:?}");
    }

    #[test]
    fn unbalanced_brace_is_e011() {
        let ds = unit_err("class A { void f() {");
        assert!(ds.iter().any(|d| d.code == Code::E011), "{ds:?}");
    }

    #[test]
    fn spans_are_nonempty_and_nested() {
        let u = unit("class A { int f(int a) { return -a + a*2; } }");
        for_each_expr(&u, &mut |e| {
            assert!(e.span.len > 0, "empty span on {:?}", e.kind);
            match &e.kind {
                ExprKind::Binary { lhs, rhs, .. } => {
                    assert!(e.span.contains(&lhs.span));
                    assert!(e.span.contains(&rhs.span));
                }
                ExprKind::Unary { expr, .. } => assert!(e.span.contains(&expr.span)),
                _ => {}
            }
        });
    }
}
