//! Abstract syntax tree for MJ compilation units.
//!
//! Nodes are position-annotated. Binary and unary nodes additionally record
//! the span of the operator token itself so diagnostics and synthesized
//! desugar nodes can point at the operator.

use std::fmt;

use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimKind {
    Int,
    Long,
    Double,
    Boolean,
    Char,
}

impl PrimKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PrimKind::Int => "int",
            PrimKind::Long => "long",
            PrimKind::Double => "double",
            PrimKind::Boolean => "boolean",
            PrimKind::Char => "char",
        }
    }
}

/// A type as written in source, before resolution against the class table.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeExpr {
    pub kind: TypeExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypeExprKind {
    Prim(PrimKind),
    Named(String, Vec<TypeExpr>),
    Array(Box<TypeExpr>),
    Void,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Lit {
    Int(i32),
    Long(i64),
    Double(f64),
    Str(String),
    Bool(bool),
    Null,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    /// `-`
    Neg,
    /// `~`
    BitNot,
    /// `!`
    Not,
}

impl UnaryOp {
    pub fn as_str(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::BitNot => "~",
            UnaryOp::Not => "!",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    And,
    Or,
    Xor,
    Shl,
    Shr,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl BinaryOp {
    pub fn as_str(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Rem => "%",
            BinaryOp::And => "&",
            BinaryOp::Or => "|",
            BinaryOp::Xor => "^",
            BinaryOp::Shl => "<<",
            BinaryOp::Shr => ">>",
            BinaryOp::Lt => "<",
            BinaryOp::Le => "<=",
            BinaryOp::Gt => ">",
            BinaryOp::Ge => ">=",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
        }
    }

    pub fn is_comparison(self) -> bool {
        matches!(self, BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge)
    }

    pub fn is_equality(self) -> bool {
        matches!(self, BinaryOp::Eq | BinaryOp::Ne)
    }

    /// Precedence level; higher binds tighter. Assignment (level 1) is
    /// handled separately by the parser and emitter.
    pub fn precedence(self) -> u8 {
        match self {
            BinaryOp::Or => 2,
            BinaryOp::Xor => 3,
            BinaryOp::And => 4,
            BinaryOp::Eq | BinaryOp::Ne => 5,
            BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge => 6,
            BinaryOp::Shl | BinaryOp::Shr => 7,
            BinaryOp::Add | BinaryOp::Sub => 8,
            BinaryOp::Mul | BinaryOp::Div | BinaryOp::Rem => 9,
        }
    }
}

impl fmt::Display for BinaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for UnaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Lit(Lit),
    /// A bare identifier or `this`.
    Name(String),
    Field {
        recv: Box<Expr>,
        name: String,
    },
    Call {
        recv: Option<Box<Expr>>,
        name: String,
        args: Vec<Expr>,
    },
    New {
        class: TypeExpr,
        args: Vec<Expr>,
    },
    NewArray {
        elem: TypeExpr,
        len: Box<Expr>,
    },
    Unary {
        op: UnaryOp,
        op_span: Span,
        expr: Box<Expr>,
    },
    Binary {
        op: BinaryOp,
        op_span: Span,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    IndexRead {
        coll: Box<Expr>,
        index: Box<Expr>,
    },
    IndexWrite {
        coll: Box<Expr>,
        index: Box<Expr>,
        value: Box<Expr>,
    },
    Assign {
        target: Box<Expr>,
        value: Box<Expr>,
    },
    Paren(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub stmts: Vec<Stmt>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    Local {
        ty: TypeExpr,
        name: String,
        init: Option<Expr>,
        span: Span,
    },
    Expr(Expr),
    If {
        cond: Expr,
        then: Box<Stmt>,
        els: Option<Box<Stmt>>,
        span: Span,
    },
    While {
        cond: Expr,
        body: Box<Stmt>,
        span: Span,
    },
    Return {
        value: Option<Expr>,
        span: Span,
    },
    Block(Block),
}

impl Stmt {
    pub fn span(&self) -> &Span {
        match self {
            Stmt::Local { span, .. }
            | Stmt::If { span, .. }
            | Stmt::While { span, .. }
            | Stmt::Return { span, .. } => span,
            Stmt::Expr(e) => &e.span,
            Stmt::Block(b) => &b.span,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Modifiers {
    pub is_public: bool,
    pub is_static: bool,
    pub is_native: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypeParamDecl {
    pub name: String,
    pub bound: Option<TypeExpr>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Param {
    pub ty: TypeExpr,
    pub name: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldDecl {
    pub modifiers: Modifiers,
    pub ty: TypeExpr,
    pub name: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodDecl {
    pub modifiers: Modifiers,
    pub type_params: Vec<TypeParamDecl>,
    /// Return type; `TypeExprKind::Void` for void methods.
    pub ret: TypeExpr,
    pub name: String,
    pub params: Vec<Param>,
    /// None for native and interface methods.
    pub body: Option<Block>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CtorDecl {
    pub modifiers: Modifiers,
    pub params: Vec<Param>,
    pub body: Block,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Member {
    Field(FieldDecl),
    Method(MethodDecl),
    Ctor(CtorDecl),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassDecl {
    pub name: String,
    pub type_params: Vec<TypeParamDecl>,
    pub superclass: Option<TypeExpr>,
    pub interfaces: Vec<TypeExpr>,
    pub members: Vec<Member>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceDecl {
    pub name: String,
    pub type_params: Vec<TypeParamDecl>,
    pub methods: Vec<MethodDecl>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decl {
    Class(ClassDecl),
    Interface(InterfaceDecl),
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Class(c) => &c.name,
            Decl::Interface(i) => &i.name,
        }
    }

    pub fn span(&self) -> &Span {
        match self {
            Decl::Class(c) => &c.span,
            Decl::Interface(i) => &i.span,
        }
    }
}

/// One parsed compilation unit (one `.mj` file).
#[derive(Debug, Clone, PartialEq)]
pub struct Unit {
    pub decls: Vec<Decl>,
}

// ---------------------------------------------------------------------------
// Structural equality helpers
// ---------------------------------------------------------------------------

/// Structural equality ignoring source positions.
pub fn units_eq_modulo_spans(a: &Unit, b: &Unit) -> bool {
    normalized(a, false) == normalized(b, false)
}

/// Structural equality ignoring source positions and grouping parentheses.
/// Emission may introduce parentheses that parse back as `Paren` nodes, so
/// round-trip properties compare modulo grouping.
pub fn units_eq_modulo_parens(a: &Unit, b: &Unit) -> bool {
    normalized(a, true) == normalized(b, true)
}

pub fn exprs_eq_modulo_spans(a: &Expr, b: &Expr) -> bool {
    let mut a = a.clone();
    let mut b = b.clone();
    norm_expr(&mut a, false);
    norm_expr(&mut b, false);
    a == b
}

fn normalized(u: &Unit, strip_parens: bool) -> Unit {
    let mut u = u.clone();
    for d in &mut u.decls {
        norm_decl(d, strip_parens);
    }
    u
}

fn norm_decl(d: &mut Decl, sp: bool) {
    match d {
        Decl::Class(c) => {
            c.span = Span::synthetic();
            for tp in &mut c.type_params {
                norm_type_param(tp);
            }
            if let Some(s) = &mut c.superclass {
                norm_type(s);
            }
            for i in &mut c.interfaces {
                norm_type(i);
            }
            for m in &mut c.members {
                match m {
                    Member::Field(f) => {
                        f.span = Span::synthetic();
                        norm_type(&mut f.ty);
                    }
                    Member::Method(m) => norm_method(m, sp),
                    Member::Ctor(c) => {
                        c.span = Span::synthetic();
                        for p in &mut c.params {
                            p.span = Span::synthetic();
                            norm_type(&mut p.ty);
                        }
                        norm_block(&mut c.body, sp);
                    }
                }
            }
        }
        Decl::Interface(i) => {
            i.span = Span::synthetic();
            for tp in &mut i.type_params {
                norm_type_param(tp);
            }
            for m in &mut i.methods {
                norm_method(m, sp);
            }
        }
    }
}

fn norm_type_param(tp: &mut TypeParamDecl) {
    tp.span = Span::synthetic();
    if let Some(b) = &mut tp.bound {
        norm_type(b);
    }
}

fn norm_method(m: &mut MethodDecl, sp: bool) {
    m.span = Span::synthetic();
    for tp in &mut m.type_params {
        norm_type_param(tp);
    }
    norm_type(&mut m.ret);
    for p in &mut m.params {
        p.span = Span::synthetic();
        norm_type(&mut p.ty);
    }
    if let Some(b) = &mut m.body {
        norm_block(b, sp);
    }
}

fn norm_type(t: &mut TypeExpr) {
    t.span = Span::synthetic();
    match &mut t.kind {
        TypeExprKind::Named(_, args) => {
            for a in args {
                norm_type(a);
            }
        }
        TypeExprKind::Array(e) => norm_type(e),
        TypeExprKind::Prim(_) | TypeExprKind::Void => {}
    }
}

fn norm_block(b: &mut Block, sp: bool) {
    b.span = Span::synthetic();
    for s in &mut b.stmts {
        norm_stmt(s, sp);
    }
}

fn norm_stmt(s: &mut Stmt, sp: bool) {
    match s {
        Stmt::Local { ty, init, span, .. } => {
            *span = Span::synthetic();
            norm_type(ty);
            if let Some(e) = init {
                norm_expr(e, sp);
            }
        }
        Stmt::Expr(e) => norm_expr(e, sp),
        Stmt::If { cond, then, els, span } => {
            *span = Span::synthetic();
            norm_expr(cond, sp);
            norm_stmt(then, sp);
            if let Some(e) = els {
                norm_stmt(e, sp);
            }
        }
        Stmt::While { cond, body, span } => {
            *span = Span::synthetic();
            norm_expr(cond, sp);
            norm_stmt(body, sp);
        }
        Stmt::Return { value, span } => {
            *span = Span::synthetic();
            if let Some(e) = value {
                norm_expr(e, sp);
            }
        }
        Stmt::Block(b) => norm_block(b, sp),
    }
}

fn norm_expr(e: &mut Expr, sp: bool) {
    if sp {
        while let ExprKind::Paren(inner) = &mut e.kind {
            let inner = std::mem::replace(
                inner.as_mut(),
                Expr { kind: ExprKind::Lit(Lit::Null), span: Span::synthetic() },
            );
            *e = inner;
        }
    }
    e.span = Span::synthetic();
    match &mut e.kind {
        ExprKind::Lit(_) | ExprKind::Name(_) => {}
        ExprKind::Field { recv, .. } => norm_expr(recv, sp),
        ExprKind::Call { recv, args, .. } => {
            if let Some(r) = recv {
                norm_expr(r, sp);
            }
            for a in args {
                norm_expr(a, sp);
            }
        }
        ExprKind::New { class, args } => {
            norm_type(class);
            for a in args {
                norm_expr(a, sp);
            }
        }
        ExprKind::NewArray { elem, len } => {
            norm_type(elem);
            norm_expr(len, sp);
        }
        ExprKind::Unary { op_span, expr, .. } => {
            *op_span = Span::synthetic();
            norm_expr(expr, sp);
        }
        ExprKind::Binary { op_span, lhs, rhs, .. } => {
            *op_span = Span::synthetic();
            norm_expr(lhs, sp);
            norm_expr(rhs, sp);
        }
        ExprKind::IndexRead { coll, index } => {
            norm_expr(coll, sp);
            norm_expr(index, sp);
        }
        ExprKind::IndexWrite { coll, index, value } => {
            norm_expr(coll, sp);
            norm_expr(index, sp);
            norm_expr(value, sp);
        }
        ExprKind::Assign { target, value } => {
            norm_expr(target, sp);
            norm_expr(value, sp);
        }
        ExprKind::Paren(inner) => norm_expr(inner, sp),
    }
}

/// Walk every expression in a unit, spanning declarations and bodies.
pub fn for_each_expr<'a>(unit: &'a Unit, f: &mut dyn FnMut(&'a Expr)) {
    fn in_stmt<'a>(s: &'a Stmt, f: &mut dyn FnMut(&'a Expr)) {
        match s {
            Stmt::Local { init, .. } => {
                if let Some(e) = init {
                    in_expr(e, f);
                }
            }
            Stmt::Expr(e) => in_expr(e, f),
            Stmt::If { cond, then, els, .. } => {
                in_expr(cond, f);
                in_stmt(then, f);
                if let Some(e) = els {
                    in_stmt(e, f);
                }
            }
            Stmt::While { cond, body, .. } => {
                in_expr(cond, f);
                in_stmt(body, f);
            }
            Stmt::Return { value, .. } => {
                if let Some(e) = value {
                    in_expr(e, f);
                }
            }
            Stmt::Block(b) => {
                for s in &b.stmts {
                    in_stmt(s, f);
                }
            }
        }
    }
    fn in_expr<'a>(e: &'a Expr, f: &mut dyn FnMut(&'a Expr)) {
        f(e);
        match &e.kind {
            ExprKind::Lit(_) | ExprKind::Name(_) => {}
            ExprKind::Field { recv, .. } => in_expr(recv, f),
            ExprKind::Call { recv, args, .. } => {
                if let Some(r) = recv {
                    in_expr(r, f);
                }
                for a in args {
                    in_expr(a, f);
                }
            }
            ExprKind::New { args, .. } => {
                for a in args {
                    in_expr(a, f);
                }
            }
            ExprKind::NewArray { len, .. } => in_expr(len, f),
            ExprKind::Unary { expr, .. } => in_expr(expr, f),
            ExprKind::Binary { lhs, rhs, .. } => {
                in_expr(lhs, f);
                in_expr(rhs, f);
            }
            ExprKind::IndexRead { coll, index } => {
                in_expr(coll, f);
                in_expr(index, f);
            }
            ExprKind::IndexWrite { coll, index, value } => {
                in_expr(coll, f);
                in_expr(index, f);
                in_expr(value, f);
            }
            ExprKind::Assign { target, value } => {
                in_expr(target, f);
                in_expr(value, f);
            }
            ExprKind::Paren(inner) => in_expr(inner, f),
        }
    }
    for d in &unit.decls {
        match d {
            Decl::Class(c) => {
                for m in &c.members {
                    match m {
                        Member::Method(m) => {
                            if let Some(b) = &m.body {
                                for s in &b.stmts {
                                    in_stmt(s, f);
                                }
                            }
                        }
                        Member::Ctor(c) => {
                            for s in &c.body.stmts {
                                in_stmt(s, f);
                            }
                        }
                        Member::Field(_) => {}
                    }
                }
            }
            Decl::Interface(_) => {}
        }
    }
}
