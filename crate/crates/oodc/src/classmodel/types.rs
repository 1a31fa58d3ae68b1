//! Semantic types and type-variable scopes.

use std::collections::HashMap;
use std::fmt;

use crate::frontend::ast::PrimKind;

/// A resolved type. Type variables are identified by name; their upper
/// bounds live in the enclosing [`TypeVarScope`], which allows F-bounded
/// parameters such as `TA extends MyNumber<TA, TM>` to be represented
/// without infinite regress.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Type {
    Prim(PrimKind),
    Named(String, Vec<Type>),
    TypeVar(String),
    Array(Box<Type>),
    Null,
    Void,
    /// Internal recovery sentinel; compatible with everything so one error
    /// does not cascade. Never present in a successfully attributed tree.
    Error,
}

impl Type {
    pub fn named(name: &str) -> Type {
        Type::Named(name.to_string(), Vec::new())
    }

    pub fn object() -> Type {
        Type::named("Object")
    }

    pub fn string() -> Type {
        Type::named("String")
    }

    pub fn is_reference(&self) -> bool {
        matches!(self, Type::Named(..) | Type::TypeVar(_) | Type::Array(_) | Type::Null)
    }

    pub fn is_primitive(&self) -> bool {
        matches!(self, Type::Prim(_))
    }

    pub fn is_error(&self) -> bool {
        matches!(self, Type::Error)
    }

    pub fn is_string(&self) -> bool {
        matches!(self, Type::Named(n, args) if n == "String" && args.is_empty())
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Prim(p) => f.write_str(p.as_str()),
            Type::Named(n, args) => {
                f.write_str(n)?;
                if !args.is_empty() {
                    f.write_str("<")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(">")?;
                }
                Ok(())
            }
            Type::TypeVar(v) => f.write_str(v),
            Type::Array(e) => write!(f, "{e}[]"),
            Type::Null => f.write_str("null"),
            Type::Void => f.write_str("void"),
            Type::Error => f.write_str("<error>"),
        }
    }
}

/// Upper bounds for the type variables in scope. Lookup of a variable that
/// has no entry yields the root class `Object`.
#[derive(Debug, Clone, Default)]
pub struct TypeVarScope {
    bounds: HashMap<String, Type>,
}

impl TypeVarScope {
    pub fn empty() -> Self {
        TypeVarScope::default()
    }

    pub fn insert(&mut self, name: &str, bound: Type) {
        self.bounds.insert(name.to_string(), bound);
    }

    pub fn contains(&self, name: &str) -> bool {
        self.bounds.contains_key(name)
    }

    pub fn bound_of(&self, name: &str) -> Type {
        self.bounds.get(name).cloned().unwrap_or_else(Type::object)
    }
}

/// The wrapper class paired with a primitive, if any. The boxing table is
/// closed: int, long, double and boolean only.
pub fn wrapper_of(p: PrimKind) -> Option<&'static str> {
    match p {
        PrimKind::Int => Some("Integer"),
        PrimKind::Long => Some("Long"),
        PrimKind::Double => Some("Double"),
        PrimKind::Boolean => Some("Boolean"),
        PrimKind::Char => None,
    }
}

pub fn primitive_of(class_name: &str) -> Option<PrimKind> {
    match class_name {
        "Integer" => Some(PrimKind::Int),
        "Long" => Some(PrimKind::Long),
        "Double" => Some(PrimKind::Double),
        "Boolean" => Some(PrimKind::Boolean),
        _ => None,
    }
}

/// Widening among numeric primitives: char < int < long < double.
/// boolean widens to nothing.
pub fn prim_widens_to(a: PrimKind, b: PrimKind) -> bool {
    fn rank(p: PrimKind) -> Option<u8> {
        match p {
            PrimKind::Char => Some(0),
            PrimKind::Int => Some(1),
            PrimKind::Long => Some(2),
            PrimKind::Double => Some(3),
            PrimKind::Boolean => None,
        }
    }
    a == b || matches!((rank(a), rank(b)), (Some(ra), Some(rb)) if ra < rb)
}

/// Substitute type variables by name.
pub fn subst(ty: &Type, map: &HashMap<String, Type>) -> Type {
    match ty {
        Type::TypeVar(v) => map.get(v).cloned().unwrap_or_else(|| ty.clone()),
        Type::Named(n, args) => Type::Named(n.clone(), args.iter().map(|a| subst(a, map)).collect()),
        Type::Array(e) => Type::Array(Box::new(subst(e, map))),
        _ => ty.clone(),
    }
}

/// Does `ty` mention any variable from `vars`?
pub fn mentions_any(ty: &Type, vars: &[String]) -> bool {
    match ty {
        Type::TypeVar(v) => vars.iter().any(|x| x == v),
        Type::Named(_, args) => args.iter().any(|a| mentions_any(a, vars)),
        Type::Array(e) => mentions_any(e, vars),
        _ => false,
    }
}
