//! Global class table: construction from declarations plus subtyping,
//! member lookup, applicability and most-specific-method queries.

use std::collections::{HashMap, HashSet};

use crate::diag::{Code, Diagnostic};
use crate::frontend::ast::{self, TypeExpr, TypeExprKind, Unit};
use crate::span::Span;

use super::types::{mentions_any, prim_widens_to, subst, wrapper_of, Type, TypeVarScope};

#[derive(Debug, Clone, PartialEq)]
pub struct TypeParamSig {
    pub name: String,
    pub bound: Type,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldSig {
    pub name: String,
    pub ty: Type,
    pub declaring_class: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodSig {
    pub name: String,
    pub type_params: Vec<TypeParamSig>,
    pub params: Vec<Type>,
    pub ret: Type,
    pub is_static: bool,
    pub is_native: bool,
    pub declaring_class: String,
}

impl MethodSig {
    /// `Class.name`, the key used to bind native implementations.
    pub fn qualified_name(&self) -> String {
        format!("{}.{}", self.declaring_class, self.name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CtorSig {
    pub params: Vec<Type>,
    pub declaring_class: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    Class,
    Interface,
}

#[derive(Debug, Clone)]
pub struct ClassSig {
    pub name: String,
    pub kind: ClassKind,
    pub type_params: Vec<TypeParamSig>,
    /// `None` only for `Object`; interfaces get an implicit edge to Object.
    pub superclass: Option<Type>,
    pub interfaces: Vec<Type>,
    pub fields: Vec<FieldSig>,
    pub methods: Vec<MethodSig>,
    pub ctors: Vec<CtorSig>,
    pub is_stub: bool,
    pub span: Span,
}

/// Outcome of most-specific selection.
#[derive(Debug, Clone, PartialEq)]
pub enum MostSpecific {
    Resolved(MethodSig),
    Ambiguous,
}

/// Immutable after construction; all queries are read-only.
#[derive(Debug, Clone)]
pub struct ClassTable {
    classes: HashMap<String, ClassSig>,
    order: Vec<String>,
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

/// Build the class table from user units plus stub library units.
pub fn build_class_table(units: &[Unit], stubs: &[Unit]) -> Result<ClassTable, Vec<Diagnostic>> {
    let mut b = Builder::default();
    for u in stubs {
        b.enter_unit(u, true);
    }
    for u in units {
        b.enter_unit(u, false);
    }
    b.resolve_all();
    b.check_cycles();
    if b.diags.is_empty() {
        Ok(ClassTable { classes: b.classes, order: b.order })
    } else {
        Err(b.diags)
    }
}

#[derive(Default)]
struct Builder {
    decls: Vec<(ast::Decl, bool)>,
    arity: HashMap<String, usize>,
    classes: HashMap<String, ClassSig>,
    order: Vec<String>,
    diags: Vec<Diagnostic>,
}

impl Builder {
    fn enter_unit(&mut self, unit: &Unit, is_stub: bool) {
        for d in &unit.decls {
            let name = d.name().to_string();
            if self.arity.contains_key(&name) {
                self.diags.push(Diagnostic::new(
                    Code::E020,
                    d.span().clone(),
                    format!("duplicate class '{name}'"),
                ));
                continue;
            }
            let arity = match d {
                ast::Decl::Class(c) => c.type_params.len(),
                ast::Decl::Interface(i) => i.type_params.len(),
            };
            self.arity.insert(name, arity);
            self.decls.push((d.clone(), is_stub));
        }
    }

    fn resolve_type(&mut self, te: &TypeExpr, tyvars: &TypeVarScope) -> Result<Type, ()> {
        match resolve_type_with(te, tyvars, &|n| self.arity.get(n).copied()) {
            Ok(t) => Ok(t),
            Err(d) => {
                self.diags.push(d);
                Err(())
            }
        }
    }

    fn resolve_type_params(
        &mut self,
        decls: &[ast::TypeParamDecl],
        pre_declared: &TypeVarScope,
    ) -> (Vec<TypeParamSig>, TypeVarScope) {
        // Two passes: names become visible before their bounds are resolved,
        // so F-bounded parameters can mention each other.
        let mut scope = pre_declared.clone();
        for tp in decls {
            scope.insert(&tp.name, Type::object());
        }
        let mut sigs = Vec::new();
        for tp in decls {
            let bound = match &tp.bound {
                Some(b) => self.resolve_type(b, &scope).unwrap_or(Type::Error),
                None => Type::object(),
            };
            scope.insert(&tp.name, bound.clone());
            sigs.push(TypeParamSig { name: tp.name.clone(), bound });
        }
        (sigs, scope)
    }

    fn resolve_all(&mut self) {
        let decls = std::mem::take(&mut self.decls);
        for (decl, is_stub) in &decls {
            match decl {
                ast::Decl::Class(c) => self.resolve_class(c, *is_stub),
                ast::Decl::Interface(i) => self.resolve_interface(i, *is_stub),
            }
        }
    }

    fn resolve_class(&mut self, c: &ast::ClassDecl, is_stub: bool) {
        let (type_params, scope) = self.resolve_type_params(&c.type_params, &TypeVarScope::empty());
        let superclass = match &c.superclass {
            Some(te) => match self.resolve_supertype(te, &scope) {
                Some(t) => Some(t),
                None => Some(Type::object()),
            },
            None if c.name == "Object" => None,
            None => Some(Type::object()),
        };
        let mut interfaces = Vec::new();
        for te in &c.interfaces {
            if let Some(t) = self.resolve_supertype(te, &scope) {
                interfaces.push(t);
            }
        }

        let mut fields = Vec::new();
        let mut methods: Vec<MethodSig> = Vec::new();
        let mut ctors = Vec::new();
        for m in &c.members {
            match m {
                ast::Member::Field(f) => {
                    if fields.iter().any(|fs: &FieldSig| fs.name == f.name) {
                        self.diags.push(Diagnostic::new(
                            Code::E024,
                            f.span.clone(),
                            format!("duplicate field '{}'", f.name),
                        ));
                        continue;
                    }
                    let ty = self.resolve_type(&f.ty, &scope).unwrap_or(Type::Error);
                    fields.push(FieldSig { name: f.name.clone(), ty, declaring_class: c.name.clone() });
                }
                ast::Member::Method(md) => {
                    if let Some(sig) = self.resolve_method(md, &c.name, &scope, &type_params) {
                        if methods.iter().any(|m| same_erased(m, &sig, &scope)) {
                            self.diags.push(Diagnostic::new(
                                Code::E023,
                                md.span.clone(),
                                format!("duplicate method '{}' with the same erased parameter list", sig.name),
                            ));
                        } else {
                            methods.push(sig);
                        }
                    }
                }
                ast::Member::Ctor(ct) => {
                    let mut params = Vec::new();
                    for p in &ct.params {
                        params.push(self.resolve_type(&p.ty, &scope).unwrap_or(Type::Error));
                    }
                    let sig = CtorSig { params, declaring_class: c.name.clone() };
                    if ctors.iter().any(|e: &CtorSig| erased_params(&e.params, &scope) == erased_params(&sig.params, &scope)) {
                        self.diags.push(Diagnostic::new(
                            Code::E023,
                            ct.span.clone(),
                            "duplicate constructor with the same erased parameter list".to_string(),
                        ));
                    } else {
                        ctors.push(sig);
                    }
                }
            }
        }

        self.insert(ClassSig {
            name: c.name.clone(),
            kind: ClassKind::Class,
            type_params,
            superclass,
            interfaces,
            fields,
            methods,
            ctors,
            is_stub,
            span: c.span.clone(),
        });
    }

    fn resolve_interface(&mut self, i: &ast::InterfaceDecl, is_stub: bool) {
        let (type_params, scope) = self.resolve_type_params(&i.type_params, &TypeVarScope::empty());
        let mut methods: Vec<MethodSig> = Vec::new();
        for md in &i.methods {
            if let Some(sig) = self.resolve_method(md, &i.name, &scope, &type_params) {
                if methods.iter().any(|m| same_erased(m, &sig, &scope)) {
                    self.diags.push(Diagnostic::new(
                        Code::E023,
                        md.span.clone(),
                        format!("duplicate method '{}' with the same erased parameter list", sig.name),
                    ));
                } else {
                    methods.push(sig);
                }
            }
        }
        self.insert(ClassSig {
            name: i.name.clone(),
            kind: ClassKind::Interface,
            type_params,
            superclass: Some(Type::object()),
            interfaces: Vec::new(),
            fields: Vec::new(),
            methods,
            ctors: Vec::new(),
            is_stub,
            span: i.span.clone(),
        });
    }

    fn resolve_method(
        &mut self,
        md: &ast::MethodDecl,
        class_name: &str,
        class_scope: &TypeVarScope,
        class_params: &[TypeParamSig],
    ) -> Option<MethodSig> {
        let (type_params, scope) = self.resolve_type_params(&md.type_params, class_scope);
        let ret = match &md.ret.kind {
            TypeExprKind::Void => Type::Void,
            _ => self.resolve_type(&md.ret, &scope).unwrap_or(Type::Error),
        };
        let mut params = Vec::new();
        for p in &md.params {
            params.push(self.resolve_type(&p.ty, &scope).unwrap_or(Type::Error));
        }
        let sig = MethodSig {
            name: md.name.clone(),
            type_params,
            params,
            ret,
            is_static: md.modifiers.is_static,
            is_native: md.modifiers.is_native,
            declaring_class: class_name.to_string(),
        };
        if sig.is_static && !class_params.is_empty() {
            let class_vars: Vec<String> = class_params.iter().map(|p| p.name.clone()).collect();
            let own: HashSet<&String> = sig.type_params.iter().map(|p| &p.name).collect();
            let free: Vec<String> = class_vars.into_iter().filter(|v| !own.contains(v)).collect();
            let uses_class_var = sig.params.iter().chain(std::iter::once(&sig.ret)).any(|t| mentions_any(t, &free));
            if uses_class_var {
                self.diags.push(Diagnostic::new(
                    Code::E025,
                    md.span.clone(),
                    format!("static method '{}' references a class type parameter", sig.name),
                ));
                return None;
            }
        }
        Some(sig)
    }

    /// Resolve an extends/implements clause. Kind agreement is validated in
    /// `check_cycles` once every class is entered.
    fn resolve_supertype(&mut self, te: &TypeExpr, scope: &TypeVarScope) -> Option<Type> {
        let t = match resolve_type_with(te, scope, &|n| self.arity.get(n).copied()) {
            Ok(t) => t,
            Err(mut d) => {
                // Unknown names in a supertype clause are E021, not E100.
                if d.code == Code::E100 {
                    d = Diagnostic::new(Code::E021, d.span, d.message.replacen("unknown type", "unknown supertype", 1));
                }
                self.diags.push(d);
                return None;
            }
        };
        match &t {
            Type::Named(..) => Some(t),
            _ => {
                self.diags.push(Diagnostic::new(
                    Code::E021,
                    te.span.clone(),
                    format!("'{t}' is not a class or interface type"),
                ));
                None
            }
        }
    }

    fn insert(&mut self, sig: ClassSig) {
        self.order.push(sig.name.clone());
        self.classes.insert(sig.name.clone(), sig);
    }

    fn check_cycles(&mut self) {
        // Kind agreement between extends/implements and the declarations.
        let mut kind_diags = Vec::new();
        for name in &self.order {
            let sig = &self.classes[name];
            if let Some(Type::Named(sup, _)) = &sig.superclass {
                match self.classes.get(sup) {
                    Some(s) if s.kind == ClassKind::Interface => {
                        kind_diags.push(Diagnostic::new(
                            Code::E021,
                            sig.span.clone(),
                            format!("'{sup}' is an interface and cannot be extended by a class"),
                        ));
                    }
                    Some(_) => {}
                    None => {
                        kind_diags.push(Diagnostic::new(
                            Code::E021,
                            sig.span.clone(),
                            format!("unknown supertype '{sup}'"),
                        ));
                    }
                }
            }
            for i in &sig.interfaces {
                if let Type::Named(iname, _) = i {
                    if let Some(s) = self.classes.get(iname) {
                        if s.kind == ClassKind::Class {
                            kind_diags.push(Diagnostic::new(
                                Code::E021,
                                sig.span.clone(),
                                format!("'{iname}' is a class and cannot be implemented"),
                            ));
                        }
                    }
                }
            }
        }
        self.diags.extend(kind_diags);

        // Supertype cycles, by DFS coloring.
        let mut state: HashMap<String, u8> = HashMap::new(); // 1 = visiting, 2 = done
        let names: Vec<String> = self.order.clone();
        for name in names {
            self.visit_cycle(&name, &mut state);
        }
    }

    fn visit_cycle(&mut self, name: &str, state: &mut HashMap<String, u8>) {
        match state.get(name) {
            Some(2) => return,
            Some(1) => {
                let span = self.classes.get(name).map(|s| s.span.clone()).unwrap_or_else(Span::synthetic);
                self.diags.push(Diagnostic::new(
                    Code::E022,
                    span,
                    format!("inheritance cycle involving '{name}'"),
                ));
                return;
            }
            _ => {}
        }
        state.insert(name.to_string(), 1);
        let edges: Vec<String> = match self.classes.get(name) {
            Some(sig) => {
                let mut e = Vec::new();
                if let Some(Type::Named(s, _)) = &sig.superclass {
                    e.push(s.clone());
                }
                for i in &sig.interfaces {
                    if let Type::Named(n, _) = i {
                        e.push(n.clone());
                    }
                }
                e
            }
            None => Vec::new(),
        };
        for sup in edges {
            self.visit_cycle(&sup, state);
        }
        state.insert(name.to_string(), 2);
    }
}

/// Resolve a syntactic type against an arity lookup; used both while the
/// table is being built and afterwards through [`ClassTable::resolve_type`].
pub fn resolve_type_with(
    te: &TypeExpr,
    tyvars: &TypeVarScope,
    arity: &dyn Fn(&str) -> Option<usize>,
) -> Result<Type, Diagnostic> {
    match &te.kind {
        TypeExprKind::Prim(p) => Ok(Type::Prim(*p)),
        TypeExprKind::Void => Ok(Type::Void),
        TypeExprKind::Array(e) => Ok(Type::Array(Box::new(resolve_type_with(e, tyvars, arity)?))),
        TypeExprKind::Named(n, args) => {
            if tyvars.contains(n) {
                if args.is_empty() {
                    return Ok(Type::TypeVar(n.clone()));
                }
                return Err(Diagnostic::new(
                    Code::E101,
                    te.span.clone(),
                    format!("type variable '{n}' cannot take type arguments"),
                ));
            }
            let Some(expected) = arity(n) else {
                return Err(Diagnostic::new(Code::E100, te.span.clone(), format!("unknown type '{n}'")));
            };
            if args.len() != expected {
                return Err(Diagnostic::new(
                    Code::E101,
                    te.span.clone(),
                    format!("'{n}' expects {expected} type argument(s), found {}", args.len()),
                ));
            }
            let mut resolved = Vec::new();
            for a in args {
                let t = resolve_type_with(a, tyvars, arity)?;
                if !t.is_reference() {
                    return Err(Diagnostic::new(
                        Code::E101,
                        a.span.clone(),
                        format!("type argument must be a reference type, found '{t}'"),
                    ));
                }
                resolved.push(t);
            }
            Ok(Type::Named(n.clone(), resolved))
        }
    }
}

fn same_erased(a: &MethodSig, b: &MethodSig, scope: &TypeVarScope) -> bool {
    a.name == b.name && erased_sig(a, scope) == erased_sig(b, scope)
}

fn erased_params(params: &[Type], scope: &TypeVarScope) -> Vec<String> {
    params.iter().map(|p| erase(p, &[], scope)).collect()
}

/// Erasure key for a method: name plus erased parameter list.
pub fn erased_sig(m: &MethodSig, scope: &TypeVarScope) -> String {
    let params: Vec<String> = m.params.iter().map(|p| erase(p, &m.type_params, scope)).collect();
    format!("{}({})", m.name, params.join(","))
}

fn erase(ty: &Type, own_params: &[TypeParamSig], scope: &TypeVarScope) -> String {
    match ty {
        Type::Prim(p) => p.as_str().to_string(),
        Type::Named(n, _) => n.clone(),
        Type::Array(e) => format!("{}[]", erase(e, own_params, scope)),
        Type::TypeVar(v) => {
            if let Some(p) = own_params.iter().find(|p| &p.name == v) {
                erase(&p.bound.clone(), &[], scope)
            } else {
                erase(&scope.bound_of(v), &[], scope)
            }
        }
        Type::Null => "null".to_string(),
        Type::Void => "void".to_string(),
        Type::Error => "<error>".to_string(),
    }
}

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

impl ClassTable {
    pub fn get(&self, name: &str) -> Option<&ClassSig> {
        self.classes.get(name)
    }

    pub fn class_names(&self) -> impl Iterator<Item = &String> {
        self.order.iter()
    }

    pub fn resolve_type(&self, te: &TypeExpr, tyvars: &TypeVarScope) -> Result<Type, Diagnostic> {
        resolve_type_with(te, tyvars, &|n| self.classes.get(n).map(|c| c.type_params.len()))
    }

    /// Reflexive, transitive subtyping. Named types are invariant in their
    /// arguments; `null` is a subtype of every reference type; a type
    /// variable is a subtype of its bound and everything above it; numeric
    /// primitives follow the widening chain.
    pub fn is_subtype(&self, a: &Type, b: &Type, tyvars: &TypeVarScope) -> bool {
        if a == b || a.is_error() || b.is_error() {
            return true;
        }
        match (a, b) {
            (Type::Null, t) => t.is_reference(),
            (Type::Prim(pa), Type::Prim(pb)) => prim_widens_to(*pa, *pb),
            (Type::TypeVar(v), _) => self.is_subtype(&tyvars.bound_of(v), b, tyvars),
            (Type::Array(_), t) if *t == Type::object() => true,
            (Type::Named(..), Type::Named(target, _)) => {
                match self.supertype_instantiation(a, target, tyvars) {
                    Some(inst) => inst == *b,
                    None => false,
                }
            }
            _ => false,
        }
    }

    /// Assignability: identity, subtyping, or exact primitive<->wrapper
    /// boxing. Widening combined with boxing (int to Double) is rejected.
    pub fn is_assignable(&self, from: &Type, to: &Type, tyvars: &TypeVarScope) -> bool {
        if self.is_subtype(from, to, tyvars) {
            return true;
        }
        match (from, to) {
            (Type::Prim(p), Type::Named(w, args)) if args.is_empty() => wrapper_of(*p) == Some(w.as_str()),
            (Type::Named(w, args), Type::Prim(p)) if args.is_empty() => wrapper_of(*p) == Some(w.as_str()),
            _ => false,
        }
    }

    /// Walk the supertype closure of `from` looking for an instantiation of
    /// class `target`, substituting declared type arguments along the way.
    pub fn supertype_instantiation(&self, from: &Type, target: &str, tyvars: &TypeVarScope) -> Option<Type> {
        let start = self.as_named(from, tyvars)?;
        let mut work = vec![start];
        let mut seen: HashSet<String> = HashSet::new();
        while let Some(curr) = work.pop() {
            let Type::Named(name, args) = &curr else { continue };
            if name == target {
                return Some(curr.clone());
            }
            if !seen.insert(name.clone()) {
                continue;
            }
            let Some(sig) = self.classes.get(name) else { continue };
            let map = param_map(&sig.type_params, args);
            if let Some(sup) = &sig.superclass {
                work.push(subst(sup, &map));
            }
            for i in &sig.interfaces {
                work.push(subst(i, &map));
            }
        }
        None
    }

    /// View a receiver type as a named class: type variables go through
    /// their bound, arrays behave as `Object`.
    fn as_named(&self, ty: &Type, tyvars: &TypeVarScope) -> Option<Type> {
        match ty {
            Type::Named(..) => Some(ty.clone()),
            Type::TypeVar(v) => self.as_named(&tyvars.bound_of(v), tyvars),
            Type::Array(_) => Some(Type::object()),
            _ => None,
        }
    }

    /// All member methods visible on `recv`, most-derived first, with class
    /// type arguments substituted and overrides deduplicated by erased
    /// signature.
    pub fn visible_methods(&self, recv: &Type, tyvars: &TypeVarScope) -> Vec<MethodSig> {
        let mut out: Vec<MethodSig> = Vec::new();
        let mut seen: HashSet<String> = HashSet::new();
        let Some(start) = self.as_named(recv, tyvars) else { return out };
        self.collect_methods(&start, tyvars, &mut seen, &mut out, &mut HashSet::new());
        out
    }

    fn collect_methods(
        &self,
        curr: &Type,
        tyvars: &TypeVarScope,
        seen: &mut HashSet<String>,
        out: &mut Vec<MethodSig>,
        visited: &mut HashSet<String>,
    ) {
        let Type::Named(name, args) = curr else { return };
        if !visited.insert(name.clone()) {
            return;
        }
        let Some(sig) = self.classes.get(name) else { return };
        let map = param_map(&sig.type_params, args);
        for m in &sig.methods {
            let inst = subst_method(m, &map);
            let key = erased_sig(&inst, tyvars);
            if seen.insert(key) {
                out.push(inst);
            }
        }
        if let Some(sup) = &sig.superclass {
            self.collect_methods(&subst(sup, &map), tyvars, seen, out, visited);
        }
        for i in &sig.interfaces {
            self.collect_methods(&subst(i, &map), tyvars, seen, out, visited);
        }
    }

    /// Find a field by name through the hierarchy, substituted.
    pub fn find_field(&self, recv: &Type, name: &str, tyvars: &TypeVarScope) -> Option<FieldSig> {
        let mut curr = self.as_named(recv, tyvars)?;
        let mut guard = 0;
        loop {
            let Type::Named(cname, args) = &curr else { return None };
            let sig = self.classes.get(cname)?;
            let map = param_map(&sig.type_params, args);
            if let Some(f) = sig.fields.iter().find(|f| f.name == name) {
                return Some(FieldSig { name: f.name.clone(), ty: subst(&f.ty, &map), declaring_class: f.declaring_class.clone() });
            }
            curr = subst(sig.superclass.as_ref()?, &map);
            guard += 1;
            if guard > 1000 {
                return None;
            }
        }
    }

    /// All fields (own plus inherited) of a class, most-derived last.
    pub fn all_fields(&self, class_name: &str) -> Vec<FieldSig> {
        let mut chain = Vec::new();
        let mut curr = Some(class_name.to_string());
        let mut guard = 0;
        while let Some(name) = curr {
            let Some(sig) = self.classes.get(&name) else { break };
            chain.push(sig);
            curr = match &sig.superclass {
                Some(Type::Named(s, _)) => Some(s.clone()),
                _ => None,
            };
            guard += 1;
            if guard > 1000 {
                break;
            }
        }
        chain.iter().rev().flat_map(|sig| sig.fields.iter().cloned()).collect()
    }

    /// Methods named `name` applicable to `args`, searching the receiver's
    /// hierarchy (through the bound for type variables). Generic methods are
    /// instantiated by unification; the returned signatures are fully
    /// substituted. `want_static` filters by staticness when given.
    pub fn lookup_applicable(
        &self,
        recv: &Type,
        name: &str,
        args: &[Type],
        want_static: Option<bool>,
        tyvars: &TypeVarScope,
    ) -> Vec<MethodSig> {
        let mut out = Vec::new();
        for m in self.visible_methods(recv, tyvars) {
            if m.name != name || m.params.len() != args.len() {
                continue;
            }
            if let Some(ws) = want_static {
                if m.is_static != ws {
                    continue;
                }
            }
            if let Some(inst) = self.instantiate(&m, args, tyvars) {
                out.push(inst);
            }
        }
        out
    }

    /// Check applicability of one candidate, instantiating its type
    /// parameters by unification when it is generic.
    fn instantiate(&self, m: &MethodSig, args: &[Type], tyvars: &TypeVarScope) -> Option<MethodSig> {
        if m.type_params.is_empty() {
            let ok = m
                .params
                .iter()
                .zip(args)
                .all(|(p, a)| self.is_assignable(a, p, tyvars));
            return ok.then(|| m.clone());
        }
        let vars: Vec<String> = m.type_params.iter().map(|p| p.name.clone()).collect();
        let mut map: HashMap<String, Type> = HashMap::new();
        for (p, a) in m.params.iter().zip(args) {
            if !self.unify(p, a, &vars, &mut map, tyvars) {
                return None;
            }
        }
        // Every type parameter must be resolved.
        if !vars.iter().all(|v| map.contains_key(v)) {
            return None;
        }
        // Bounds hold after substitution.
        for tp in &m.type_params {
            let inferred = &map[&tp.name];
            let bound = subst(&tp.bound, &map);
            if !self.is_subtype(inferred, &bound, tyvars) {
                return None;
            }
        }
        let params: Vec<Type> = m.params.iter().map(|p| subst(p, &map)).collect();
        if !params.iter().zip(args).all(|(p, a)| self.is_assignable(a, p, tyvars)) {
            return None;
        }
        Some(MethodSig {
            name: m.name.clone(),
            type_params: Vec::new(),
            params,
            ret: subst(&m.ret, &map),
            is_static: m.is_static,
            is_native: m.is_native,
            declaring_class: m.declaring_class.clone(),
        })
    }

    /// First-order unification of a parameter type against an argument type.
    /// Binding a variable to a primitive boxes it (only at this leaf
    /// position); nested generic positions are invariant and never box.
    fn unify(
        &self,
        param: &Type,
        arg: &Type,
        vars: &[String],
        map: &mut HashMap<String, Type>,
        tyvars: &TypeVarScope,
    ) -> bool {
        match param {
            Type::TypeVar(v) if vars.iter().any(|x| x == v) => {
                let desired = match arg {
                    Type::Prim(p) => match wrapper_of(*p) {
                        Some(w) => Type::named(w),
                        None => return false,
                    },
                    Type::Null | Type::Void | Type::Error => return false,
                    other => other.clone(),
                };
                match map.get(v) {
                    Some(prev) => *prev == desired,
                    None => {
                        map.insert(v.clone(), desired);
                        true
                    }
                }
            }
            Type::Named(cname, pargs) if mentions_any(param, vars) => {
                let inst = match self.supertype_instantiation(arg, cname, tyvars) {
                    Some(i) => i,
                    None => return false,
                };
                let Type::Named(_, iargs) = inst else { return false };
                pargs.len() == iargs.len()
                    && pargs
                        .iter()
                        .zip(&iargs)
                        .all(|(p, a)| self.unify_invariant(p, a, vars, map, tyvars))
            }
            Type::Array(pe) => match arg {
                Type::Array(ae) => self.unify_invariant(pe, ae, vars, map, tyvars),
                _ => false,
            },
            _ => self.is_assignable(arg, param, tyvars),
        }
    }

    fn unify_invariant(
        &self,
        param: &Type,
        arg: &Type,
        vars: &[String],
        map: &mut HashMap<String, Type>,
        tyvars: &TypeVarScope,
    ) -> bool {
        match param {
            Type::TypeVar(v) if vars.iter().any(|x| x == v) => {
                if !arg.is_reference() {
                    return false;
                }
                match map.get(v) {
                    Some(prev) => prev == arg,
                    None => {
                        map.insert(v.clone(), arg.clone());
                        true
                    }
                }
            }
            Type::Named(pn, pargs) => match arg {
                Type::Named(an, aargs) if pn == an && pargs.len() == aargs.len() => pargs
                    .iter()
                    .zip(aargs)
                    .all(|(p, a)| self.unify_invariant(p, a, vars, map, tyvars)),
                _ => false,
            },
            Type::Array(pe) => match arg {
                Type::Array(ae) => self.unify_invariant(pe, ae, vars, map, tyvars),
                _ => false,
            },
            _ => param == arg,
        }
    }

    /// The unique candidate whose parameter tuple is pointwise a subtype of
    /// every other candidate's.
    pub fn most_specific(&self, candidates: &[MethodSig], tyvars: &TypeVarScope) -> MostSpecific {
        let dominates = |a: &MethodSig, b: &MethodSig| {
            a.params.len() == b.params.len()
                && a.params.iter().zip(&b.params).all(|(x, y)| self.is_subtype(x, y, tyvars))
        };
        let winners: Vec<&MethodSig> = candidates
            .iter()
            .filter(|c| candidates.iter().all(|o| dominates(c, o)))
            .collect();
        match winners.as_slice() {
            [one] => MostSpecific::Resolved((*one).clone()),
            _ => MostSpecific::Ambiguous,
        }
    }

    /// Applicable constructors of a class instantiation. A class with no
    /// declared constructor has an implicit no-argument one.
    pub fn applicable_ctors(&self, class_ty: &Type, args: &[Type], tyvars: &TypeVarScope) -> Vec<CtorSig> {
        let Type::Named(name, targs) = class_ty else { return Vec::new() };
        let Some(sig) = self.classes.get(name) else { return Vec::new() };
        let map = param_map(&sig.type_params, targs);
        if sig.ctors.is_empty() {
            return if args.is_empty() {
                vec![CtorSig { params: Vec::new(), declaring_class: name.clone() }]
            } else {
                Vec::new()
            };
        }
        sig.ctors
            .iter()
            .filter(|c| c.params.len() == args.len())
            .map(|c| CtorSig {
                params: c.params.iter().map(|p| subst(p, &map)).collect(),
                declaring_class: c.declaring_class.clone(),
            })
            .filter(|c| c.params.iter().zip(args).all(|(p, a)| self.is_assignable(a, p, tyvars)))
            .collect()
    }
}

fn param_map(params: &[TypeParamSig], args: &[Type]) -> HashMap<String, Type> {
    params
        .iter()
        .zip(args)
        .map(|(p, a)| (p.name.clone(), a.clone()))
        .collect()
}

/// Substitute class-level type arguments into a member signature, leaving
/// the method's own type parameters untouched.
fn subst_method(m: &MethodSig, map: &HashMap<String, Type>) -> MethodSig {
    let mut map = map.clone();
    for own in &m.type_params {
        map.remove(&own.name);
    }
    MethodSig {
        name: m.name.clone(),
        type_params: m
            .type_params
            .iter()
            .map(|p| TypeParamSig { name: p.name.clone(), bound: subst(&p.bound, &map) })
            .collect(),
        params: m.params.iter().map(|p| subst(p, &map)).collect(),
        ret: subst(&m.ret, &map),
        is_static: m.is_static,
        is_native: m.is_native,
        declaring_class: m.declaring_class.clone(),
    }
}
