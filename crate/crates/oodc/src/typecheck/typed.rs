//! Type-attributed trees.
//!
//! Typed nodes mirror the surface AST one-to-one so that lowering a fully
//! `Builtin` tree reproduces the original program. Operator nodes carry an
//! [`OperatorResolution`] deciding between builtin semantics and a desugared
//! method call.

use crate::classmodel::{CtorSig, FieldSig, MethodSig, Type};
use crate::frontend::ast::{self, BinaryOp, Lit, TypeExpr, UnaryOp};
use crate::span::Span;

/// Type-checking mode: with the operator-overloading extension enabled, or
/// base rules only. The extension rules have the lowest priority either way;
/// disabling them reproduces the unextended language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mode {
    pub base_only: bool,
}

impl Mode {
    /// Overloading rules enabled (consulted only after base rules fail).
    pub fn extended() -> Mode {
        Mode { base_only: false }
    }

    /// Base rules only.
    pub fn base_only() -> Mode {
        Mode { base_only: true }
    }
}

/// The decision recorded on every operator node of an attributed tree.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorResolution {
    /// Base typing succeeded; the operator keeps its builtin meaning.
    Builtin,
    OverloadedBinary(MethodSig),
    OverloadedUnary(MethodSig),
    OverloadedCompare { method: MethodSig, relation: BinaryOp },
    OverloadedIndexRead(MethodSig),
    OverloadedIndexWrite(MethodSig),
    ValueOfConversion(MethodSig),
}

impl OperatorResolution {
    pub fn is_builtin(&self) -> bool {
        matches!(self, OperatorResolution::Builtin)
    }
}

/// What a bare name resolved to.
#[derive(Debug, Clone, PartialEq)]
pub enum Binding {
    Local,
    /// A field of the enclosing class accessed without an explicit receiver.
    ImplicitField(FieldSig),
    This,
    /// A class name used to qualify a static member.
    Class(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TExpr {
    pub kind: TExprKind,
    pub ty: Type,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TExprKind {
    Lit(Lit),
    Name {
        name: String,
        binding: Binding,
    },
    Field {
        recv: Box<TExpr>,
        name: String,
        field: FieldSig,
    },
    Call {
        recv: Option<Box<TExpr>>,
        name: String,
        args: Vec<TExpr>,
        target: MethodSig,
    },
    New {
        class: TypeExpr,
        args: Vec<TExpr>,
        ctor: CtorSig,
    },
    NewArray {
        elem: TypeExpr,
        elem_ty: Type,
        len: Box<TExpr>,
    },
    Unary {
        op: UnaryOp,
        op_span: Span,
        expr: Box<TExpr>,
        resolution: OperatorResolution,
    },
    Binary {
        op: BinaryOp,
        op_span: Span,
        lhs: Box<TExpr>,
        rhs: Box<TExpr>,
        resolution: OperatorResolution,
    },
    IndexRead {
        coll: Box<TExpr>,
        index: Box<TExpr>,
        resolution: OperatorResolution,
    },
    IndexWrite {
        coll: Box<TExpr>,
        index: Box<TExpr>,
        value: Box<TExpr>,
        resolution: OperatorResolution,
    },
    Assign {
        target: Box<TExpr>,
        value: Box<TExpr>,
        resolution: OperatorResolution,
    },
    Paren(Box<TExpr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TBlock {
    pub stmts: Vec<TStmt>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TStmt {
    Local {
        ty_expr: TypeExpr,
        ty: Type,
        name: String,
        init: Option<TExpr>,
        /// `Builtin` or `ValueOfConversion`.
        resolution: OperatorResolution,
        span: Span,
    },
    Expr(TExpr),
    If {
        cond: TExpr,
        then: Box<TStmt>,
        els: Option<Box<TStmt>>,
        span: Span,
    },
    While {
        cond: TExpr,
        body: Box<TStmt>,
        span: Span,
    },
    Return {
        value: Option<TExpr>,
        span: Span,
    },
    Block(TBlock),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypedMethod {
    pub decl: ast::MethodDecl,
    pub sig: MethodSig,
    pub body: Option<TBlock>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypedCtor {
    pub decl: ast::CtorDecl,
    pub sig: CtorSig,
    pub body: TBlock,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypedMember {
    Field(ast::FieldDecl),
    Method(TypedMethod),
    Ctor(TypedCtor),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypedClass {
    pub decl: ast::ClassDecl,
    pub members: Vec<TypedMember>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypedDecl {
    Class(TypedClass),
    Interface(ast::InterfaceDecl),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypedUnit {
    pub decls: Vec<TypedDecl>,
}

/// Visit every typed expression in the unit, depth-first.
pub fn for_each_texpr<'a>(unit: &'a TypedUnit, f: &mut dyn FnMut(&'a TExpr)) {
    fn in_stmt<'a>(s: &'a TStmt, f: &mut dyn FnMut(&'a TExpr)) {
        match s {
            TStmt::Local { init, .. } => {
                if let Some(e) = init {
                    in_expr(e, f);
                }
            }
            TStmt::Expr(e) => in_expr(e, f),
            TStmt::If { cond, then, els, .. } => {
                in_expr(cond, f);
                in_stmt(then, f);
                if let Some(e) = els {
                    in_stmt(e, f);
                }
            }
            TStmt::While { cond, body, .. } => {
                in_expr(cond, f);
                in_stmt(body, f);
            }
            TStmt::Return { value, .. } => {
                if let Some(e) = value {
                    in_expr(e, f);
                }
            }
            TStmt::Block(b) => {
                for s in &b.stmts {
                    in_stmt(s, f);
                }
            }
        }
    }
    fn in_expr<'a>(e: &'a TExpr, f: &mut dyn FnMut(&'a TExpr)) {
        f(e);
        match &e.kind {
            TExprKind::Lit(_) | TExprKind::Name { .. } => {}
            TExprKind::Field { recv, .. } => in_expr(recv, f),
            TExprKind::Call { recv, args, .. } => {
                if let Some(r) = recv {
                    in_expr(r, f);
                }
                for a in args {
                    in_expr(a, f);
                }
            }
            TExprKind::New { args, .. } => {
                for a in args {
                    in_expr(a, f);
                }
            }
            TExprKind::NewArray { len, .. } => in_expr(len, f),
            TExprKind::Unary { expr, .. } => in_expr(expr, f),
            TExprKind::Binary { lhs, rhs, .. } => {
                in_expr(lhs, f);
                in_expr(rhs, f);
            }
            TExprKind::IndexRead { coll, index, .. } => {
                in_expr(coll, f);
                in_expr(index, f);
            }
            TExprKind::IndexWrite { coll, index, value, .. } => {
                in_expr(coll, f);
                in_expr(index, f);
                in_expr(value, f);
            }
            TExprKind::Assign { target, value, .. } => {
                in_expr(target, f);
                in_expr(value, f);
            }
            TExprKind::Paren(inner) => in_expr(inner, f),
        }
    }
    for d in &unit.decls {
        if let TypedDecl::Class(c) = d {
            for m in &c.members {
                match m {
                    TypedMember::Method(m) => {
                        if let Some(b) = &m.body {
                            for s in &b.stmts {
                                in_stmt(s, f);
                            }
                        }
                    }
                    TypedMember::Ctor(c) => {
                        for s in &c.body.stmts {
                            in_stmt(s, f);
                        }
                    }
                    TypedMember::Field(_) => {}
                }
            }
        }
    }
}

/// The operator resolution of a typed node, if it is an operator node.
pub fn resolution_of(e: &TExpr) -> Option<&OperatorResolution> {
    match &e.kind {
        TExprKind::Unary { resolution, .. }
        | TExprKind::Binary { resolution, .. }
        | TExprKind::IndexRead { resolution, .. }
        | TExprKind::IndexWrite { resolution, .. }
        | TExprKind::Assign { resolution, .. } => Some(resolution),
        _ => None,
    }
}
