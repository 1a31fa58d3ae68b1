//! Class table, subtyping and method resolution.

pub mod stubs;
pub mod table;
pub mod types;

pub use table::{
    build_class_table, erased_sig, ClassKind, ClassSig, ClassTable, CtorSig, FieldSig, MethodSig,
    MostSpecific, TypeParamSig,
};
pub use types::{primitive_of, subst, wrapper_of, Type, TypeVarScope};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diag::Code;
    use crate::frontend::ast::PrimKind;
    use crate::frontend::parse_source;

    fn stub_units() -> Vec<crate::frontend::Unit> {
        stubs::BUILTIN_STUBS
            .iter()
            .map(|(name, text)| parse_source(text, name).expect("stubs parse"))
            .collect()
    }

    fn table_with(src: &str) -> ClassTable {
        let unit = parse_source(src, "t.mj").expect("source parses");
        build_class_table(&[unit], &stub_units()).expect("table builds")
    }

    fn stub_table() -> ClassTable {
        build_class_table(&[], &stub_units()).expect("stub table builds")
    }

    const POINT_SRC: &str = "
interface MyNumber<TA, TM> {
  TA add(TA o);
  TA negate();
  TA multiply(TM o);
}
class Point implements MyNumber<Point, Double> {
  double x, y;
  public Point(double x, double y) {
    this.x = x; this.y = y;
  }
  public Point add(Point o) { return new Point(x + o.x, y + o.y); }
  public Point multiply(Double o) { return new Point(x * o, y * o); }
  public Point negate() { return new Point(-x, -y); }
  public String toString() { return \"(\" + x + \",\" + y + \")\"; }
}";

    #[test]
    fn point_class_enters_the_table() {
        let t = table_with(POINT_SRC);
        let p = t.get("Point").expect("Point present");
        let names: Vec<_> = p.methods.iter().map(|m| (m.name.as_str(), m.params.clone(), m.ret.clone())).collect();
        assert!(names.contains(&("add", vec![Type::named("Point")], Type::named("Point"))));
        assert!(names.contains(&("multiply", vec![Type::named("Double")], Type::named("Point"))));
        assert!(names.contains(&("negate", vec![], Type::named("Point"))));
        assert!(names.contains(&("toString", vec![], Type::string())));
    }

    #[test]
    fn empty_units_leave_exactly_the_stub_classes() {
        let t = stub_table();
        let expected = [
            "Object", "String", "Integer", "Long", "Double", "Boolean", "BigInteger", "List", "Map", "Out",
        ];
        let mut names: Vec<_> = t.class_names().cloned().collect();
        names.sort();
        let mut want: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        want.sort();
        assert_eq!(names, want);
    }

    #[test]
    fn self_extending_class_is_a_cycle() {
        let unit = parse_source("class A extends A { }", "t.mj").unwrap();
        let err = build_class_table(&[unit], &stub_units()).unwrap_err();
        assert!(err.iter().any(|d| d.code == Code::E022), "{err:?}");
    }

    #[test]
    fn two_class_cycle_is_detected() {
        let unit = parse_source("class A extends B { } class B extends A { }", "t.mj").unwrap();
        let err = build_class_table(&[unit], &stub_units()).unwrap_err();
        assert!(err.iter().any(|d| d.code == Code::E022));
    }

    #[test]
    fn duplicate_class_is_rejected() {
        let unit = parse_source("class A { } class A { }", "t.mj").unwrap();
        let err = build_class_table(&[unit], &stub_units()).unwrap_err();
        assert!(err.iter().any(|d| d.code == Code::E020));
    }

    #[test]
    fn unknown_supertype_is_rejected() {
        let unit = parse_source("class A extends Missing { }", "t.mj").unwrap();
        let err = build_class_table(&[unit], &stub_units()).unwrap_err();
        assert!(err.iter().any(|d| d.code == Code::E021), "{err:?}");
    }

    #[test]
    fn point_is_subtype_of_its_interface_instantiation() {
        let t = table_with(POINT_SRC);
        let vars = TypeVarScope::empty();
        let point = Type::named("Point");
        let iface = Type::Named(
            "MyNumber".to_string(),
            vec![Type::named("Point"), Type::named("Double")],
        );
        assert!(t.is_subtype(&point, &iface, &vars));
        assert!(!t.is_subtype(&iface, &point, &vars));
    }

    #[test]
    fn subtyping_is_reflexive_on_type_variables() {
        let t = stub_table();
        let vars = TypeVarScope::empty();
        assert!(t.is_subtype(&Type::TypeVar("T".into()), &Type::TypeVar("T".into()), &vars));
    }

    /// Invariance oracle: enumerate instantiations of the generic stubs with
    /// depth <= 2 element types and verify no subtype edge exists between
    /// distinct instantiations of the same class.
    #[test]
    fn named_types_are_invariant_in_their_arguments() {
        let t = stub_table();
        let vars = TypeVarScope::empty();
        let leaves = [Type::named("Integer"), Type::named("Object"), Type::string(), Type::named("BigInteger")];
        let mut elems: Vec<Type> = leaves.to_vec();
        for l in &leaves {
            elems.push(Type::Named("List".to_string(), vec![l.clone()]));
        }
        for a in &elems {
            for b in &elems {
                let la = Type::Named("List".to_string(), vec![a.clone()]);
                let lb = Type::Named("List".to_string(), vec![b.clone()]);
                assert_eq!(t.is_subtype(&la, &lb, &vars), a == b, "List<{a}> vs List<{b}>");
            }
        }
        // The paper-level instance of the property.
        let li = Type::Named("List".to_string(), vec![Type::named("Integer")]);
        let lo = Type::Named("List".to_string(), vec![Type::object()]);
        assert!(!t.is_subtype(&li, &lo, &vars));
    }

    #[test]
    fn null_is_subtype_of_reference_types_only() {
        let t = stub_table();
        let vars = TypeVarScope::empty();
        assert!(t.is_subtype(&Type::Null, &Type::string(), &vars));
        assert!(t.is_subtype(&Type::Null, &Type::TypeVar("T".into()), &vars));
        assert!(!t.is_subtype(&Type::Null, &Type::Prim(PrimKind::Int), &vars));
    }

    #[test]
    fn numeric_primitives_follow_the_widening_chain() {
        let t = stub_table();
        let vars = TypeVarScope::empty();
        let int = Type::Prim(PrimKind::Int);
        let long = Type::Prim(PrimKind::Long);
        let double = Type::Prim(PrimKind::Double);
        assert!(t.is_subtype(&int, &long, &vars));
        assert!(t.is_subtype(&int, &double, &vars));
        assert!(t.is_subtype(&long, &double, &vars));
        assert!(!t.is_subtype(&long, &int, &vars));
        assert!(!t.is_subtype(&int, &Type::named("Double"), &vars));
    }

    #[test]
    fn boxing_is_exact_pairs_only() {
        let t = stub_table();
        let vars = TypeVarScope::empty();
        assert!(t.is_assignable(&Type::Prim(PrimKind::Double), &Type::named("Double"), &vars));
        assert!(t.is_assignable(&Type::named("Integer"), &Type::Prim(PrimKind::Int), &vars));
        // No widening-plus-boxing chain.
        assert!(!t.is_assignable(&Type::Prim(PrimKind::Int), &Type::named("Double"), &vars));
        assert!(!t.is_assignable(&Type::named("Integer"), &Type::Prim(PrimKind::Long), &vars));
    }

    /// Subtyping restricted to the stub-derived universe is a partial order:
    /// reflexive, transitive, antisymmetric up to equality.
    #[test]
    fn subtyping_is_a_partial_order() {
        let t = stub_table();
        let vars = TypeVarScope::empty();
        let mut tys: Vec<Type> = vec![
            Type::object(),
            Type::string(),
            Type::named("Integer"),
            Type::named("BigInteger"),
            Type::Null,
            Type::Prim(PrimKind::Int),
            Type::Prim(PrimKind::Long),
            Type::Prim(PrimKind::Double),
            Type::Prim(PrimKind::Boolean),
            Type::Array(Box::new(Type::Prim(PrimKind::Int))),
        ];
        for leaf in [Type::named("Integer"), Type::object(), Type::string()] {
            tys.push(Type::Named("List".to_string(), vec![leaf]));
        }
        for a in &tys {
            assert!(t.is_subtype(a, a, &vars), "reflexivity for {a}");
        }
        for a in &tys {
            for b in &tys {
                if t.is_subtype(a, b, &vars) && t.is_subtype(b, a, &vars) {
                    assert_eq!(a, b, "antisymmetry violated for {a}, {b}");
                }
                for c in &tys {
                    if t.is_subtype(a, b, &vars) && t.is_subtype(b, c, &vars) {
                        assert!(t.is_subtype(a, c, &vars), "transitivity violated for {a} <: {b} <: {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn lookup_add_on_biginteger() {
        let t = stub_table();
        let vars = TypeVarScope::empty();
        let big = Type::named("BigInteger");
        let found = t.lookup_applicable(&big, "add", &[big.clone()], None, &vars);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].name, "add");
        assert_eq!(found[0].ret, big);
    }

    #[test]
    fn lookup_add_with_string_argument_is_empty() {
        let t = stub_table();
        let vars = TypeVarScope::empty();
        let big = Type::named("BigInteger");
        let found = t.lookup_applicable(&big, "add", &[Type::string()], None, &vars);
        assert!(found.is_empty());
    }

    #[test]
    fn lookup_through_type_variable_bound() {
        // TA extends MyNumber<TA, TM>: add on a TA receiver accepts a TA
        // argument and returns TA.
        let t = table_with(POINT_SRC);
        let mut vars = TypeVarScope::empty();
        vars.insert("TM", Type::object());
        vars.insert(
            "TA",
            Type::Named("MyNumber".to_string(), vec![Type::TypeVar("TA".into()), Type::TypeVar("TM".into())]),
        );
        let ta = Type::TypeVar("TA".into());
        let found = t.lookup_applicable(&ta, "add", &[ta.clone()], None, &vars);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].params, vec![ta.clone()]);
        assert_eq!(found[0].ret, ta);
    }

    #[test]
    fn lookup_is_independent_of_declaration_order() {
        let a = table_with("class C { void f(Object o) { } void f(String s) { } }");
        let b = table_with("class C { void f(String s) { } void f(Object o) { } }");
        let vars = TypeVarScope::empty();
        let recv = Type::named("C");
        let mut ra: Vec<String> = a
            .lookup_applicable(&recv, "f", &[Type::string()], None, &vars)
            .iter()
            .map(|m| format!("{:?}", m.params))
            .collect();
        let mut rb: Vec<String> = b
            .lookup_applicable(&recv, "f", &[Type::string()], None, &vars)
            .iter()
            .map(|m| format!("{:?}", m.params))
            .collect();
        ra.sort();
        rb.sort();
        assert_eq!(ra, rb);
        assert_eq!(ra.len(), 2);
    }

    #[test]
    fn generic_method_instantiation_boxes_at_leaves() {
        // comp(TA, TA, TM) applied to (Point, Point, double) infers TA=Point
        // and TM=Double via boxing.
        let src = format!(
            "{POINT_SRC}\nclass Util {{ static <TM, TA extends MyNumber<TA, TM>> TA comp(TA a, TA b, TM c) {{ return a; }} }}"
        );
        let t = table_with(&src);
        let vars = TypeVarScope::empty();
        let point = Type::named("Point");
        let found = t.lookup_applicable(
            &Type::named("Util"),
            "comp",
            &[point.clone(), point.clone(), Type::Prim(PrimKind::Double)],
            Some(true),
            &vars,
        );
        assert_eq!(found.len(), 1, "{found:?}");
        assert_eq!(found[0].ret, point);
        assert_eq!(found[0].params, vec![point.clone(), point.clone(), Type::named("Double")]);
    }

    #[test]
    fn generic_instantiation_fails_on_conflicting_bindings() {
        let src = format!("{POINT_SRC}\nclass Util {{ static <T> T pick(T a, T b) {{ return a; }} }}");
        let t = table_with(&src);
        let vars = TypeVarScope::empty();
        let found = t.lookup_applicable(
            &Type::named("Util"),
            "pick",
            &[Type::named("Point"), Type::string()],
            Some(true),
            &vars,
        );
        assert!(found.is_empty(), "conflicting variable bindings must not be applicable");
    }

    #[test]
    fn most_specific_prefers_string_over_object() {
        let t = table_with("class C { void f(Object o) { } void f(String s) { } }");
        let vars = TypeVarScope::empty();
        let found = t.lookup_applicable(&Type::named("C"), "f", &[Type::string()], None, &vars);
        match t.most_specific(&found, &vars) {
            MostSpecific::Resolved(m) => assert_eq!(m.params, vec![Type::string()]),
            MostSpecific::Ambiguous => panic!("expected a unique most specific method"),
        }
    }

    #[test]
    fn most_specific_of_singleton_is_identity() {
        let t = stub_table();
        let vars = TypeVarScope::empty();
        let big = Type::named("BigInteger");
        let found = t.lookup_applicable(&big, "negate", &[], None, &vars);
        assert_eq!(found.len(), 1);
        let MostSpecific::Resolved(m) = t.most_specific(&found, &vars) else {
            panic!("singleton must resolve");
        };
        assert_eq!(m.name, "negate");
    }

    /// Brute-force pairwise-dominance oracle over every ordering of the
    /// candidate list: f(A,B) and f(B,A) with an argument (C,C), C <: A,
    /// C <: B, A and B unrelated, is ambiguous regardless of order.
    #[test]
    fn crossed_parameter_tuples_are_ambiguous() {
        let src = "
class A { }
class B { }
class C extends A { }
class D { void f(A x, Object y) { } void f(Object x, A y) { } }";
        let t = table_with(src);
        let vars = TypeVarScope::empty();
        let c = Type::named("C");
        let mut found = t.lookup_applicable(&Type::named("D"), "f", &[c.clone(), c.clone()], None, &vars);
        assert_eq!(found.len(), 2);

        // Oracle: a candidate is most specific iff it dominates all others.
        let dominates = |x: &MethodSig, y: &MethodSig| {
            x.params.iter().zip(&y.params).all(|(p, q)| t.is_subtype(p, q, &vars))
        };
        let oracle_winners: Vec<_> = found
            .iter()
            .filter(|c| found.iter().all(|o| dominates(c, o)))
            .collect();
        assert!(oracle_winners.len() != 1);
        assert_eq!(t.most_specific(&found, &vars), MostSpecific::Ambiguous);

        // Both orderings agree with the oracle.
        found.reverse();
        assert_eq!(t.most_specific(&found, &vars), MostSpecific::Ambiguous);
    }

    #[test]
    fn most_specific_result_is_a_member_of_the_input() {
        let t = table_with("class C { void f(Object o) { } void f(String s) { } }");
        let vars = TypeVarScope::empty();
        let found = t.lookup_applicable(&Type::named("C"), "f", &[Type::string()], None, &vars);
        if let MostSpecific::Resolved(m) = t.most_specific(&found, &vars) {
            assert!(found.contains(&m));
        }
    }

    #[test]
    fn static_filter_is_honored() {
        let t = stub_table();
        let vars = TypeVarScope::empty();
        let big = Type::named("BigInteger");
        let stat = t.lookup_applicable(&big, "valueOf", &[Type::Prim(PrimKind::Long)], Some(true), &vars);
        assert_eq!(stat.len(), 1);
        let inst = t.lookup_applicable(&big, "valueOf", &[Type::Prim(PrimKind::Long)], Some(false), &vars);
        assert!(inst.is_empty());
    }

    #[test]
    fn value_of_long_accepts_int_by_widening() {
        let t = stub_table();
        let vars = TypeVarScope::empty();
        let big = Type::named("BigInteger");
        let found = t.lookup_applicable(&big, "valueOf", &[Type::Prim(PrimKind::Int)], Some(true), &vars);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].ret, big);
    }

    #[test]
    fn string_declares_no_value_of() {
        let t = stub_table();
        let s = t.get("String").unwrap();
        assert!(s.methods.iter().all(|m| m.name != "valueOf"));
    }

    #[test]
    fn static_method_may_not_use_class_type_params() {
        let unit = parse_source("class Box<T> { static T broken(T x) { return x; } }", "t.mj").unwrap();
        let err = build_class_table(&[unit], &stub_units()).unwrap_err();
        assert!(err.iter().any(|d| d.code == Code::E025), "{err:?}");
    }

    #[test]
    fn inherited_methods_are_visible_and_overrides_win() {
        let t = table_with(
            "class Base { String toString() { return \"base\"; } int only() { return 1; } }
             class Derived extends Base { String toString() { return \"derived\"; } }",
        );
        let vars = TypeVarScope::empty();
        let ms = t.visible_methods(&Type::named("Derived"), &vars);
        let to_strings: Vec<_> = ms.iter().filter(|m| m.name == "toString").collect();
        assert_eq!(to_strings.len(), 1);
        assert_eq!(to_strings[0].declaring_class, "Derived");
        assert!(ms.iter().any(|m| m.name == "only"));
    }
}
