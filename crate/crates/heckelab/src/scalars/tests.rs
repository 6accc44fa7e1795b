use super::*;

fn sample(ctx: &FieldContext) -> Vec<Scalar> {
    let mut texts = vec!["0", "1", "-1", "2", "1/3", "q", "q^-1", "q^(1/3)", "zeta(3)", "(q+1)/(q-1)", "q - q^-1"];
    if ctx.has_param(Param::Z) {
        texts.extend(["z", "z^(1/2) + q", "(z - q^2)/(1 - z)"]);
    }
    texts.iter().map(|t| ctx.parse(t).unwrap()).collect()
}

fn field_axioms(ctx: &FieldContext) {
    let s = sample(ctx);
    for a in &s {
        for b in &s {
            assert!(ctx.eq(&ctx.add(a, b), &ctx.add(b, a)));
            assert!(ctx.eq(&ctx.mul(a, b), &ctx.mul(b, a)));
            for c in s.iter().take(6) {
                let lhs = ctx.mul(a, &ctx.add(b, c));
                let rhs = ctx.add(&ctx.mul(a, b), &ctx.mul(a, c));
                assert!(ctx.eq(&lhs, &rhs), "distributivity");
                let l2 = ctx.mul(&ctx.mul(a, b), c);
                let r2 = ctx.mul(a, &ctx.mul(b, c));
                assert!(ctx.eq(&l2, &r2), "associativity");
            }
        }
        assert!(ctx.eq(&ctx.sub(a, a), &ctx.zero()));
        if !a.is_zero() {
            assert!(ctx.is_one(&ctx.mul(a, &ctx.inv(a))));
        }
    }
}

#[test]
fn field_axioms_generic() {
    field_axioms(&FieldContext::generic(&[Param::Z]));
}

#[test]
fn field_axioms_root_of_unity() {
    field_axioms(&FieldContext::zeta(8, &[Param::Z]));
    field_axioms(&FieldContext::zeta(5, &[]));
}

#[test]
fn cyclotomic_order_follows_q_and_root_denominator() {
    assert_eq!(FieldSpec::new(QKind::Generic).cyclotomic_order(), 6);
    assert_eq!(FieldSpec::new(QKind::Zeta(8)).cyclotomic_order(), 48);
    assert_eq!(FieldSpec::new(QKind::Zeta(5)).cyclotomic_order(), 30);
    assert_eq!(FieldSpec::new(QKind::Zeta(4)).with_root_denominator(1).cyclotomic_order(), 12);
}

#[test]
fn q_is_the_requested_root_of_unity() {
    for n in [2u32, 4, 5, 6, 7, 8, 10, 12] {
        let ctx = FieldContext::zeta(n, &[]);
        assert_eq!(ctx.root_of_unity_order(&ctx.q()), Some(n as usize));
        // q^(1/D) has order nD
        let u = ctx.parse("q^(1/6)").unwrap();
        assert_eq!(ctx.root_of_unity_order(&u), Some(6 * n as usize));
    }
}

#[test]
fn quadratic_value_at_fourth_root() {
    let ctx = FieldContext::zeta(4, &[]);
    let d = ctx.q_diff();
    assert!(ctx.eq(&ctx.mul(&d, &d), &ctx.from_int(-4)));
}

#[test]
fn rational_function_cancellation() {
    let ctx = FieldContext::generic(&[]);
    let a = ctx.parse("(q^2 - 1)/(q - 1)").unwrap();
    assert_eq!(a, ctx.parse("q + 1").unwrap());
    assert!(a.denominator().is_one(ctx.field()));
    let b = ctx.parse("(q^4 - 1)/(q^3 - q^2 + q - 1)").unwrap();
    assert_eq!(b, ctx.parse("q + 1").unwrap());
}

#[test]
fn roots_of_monomials() {
    let ctx = FieldContext::generic(&[]);
    let roots = ctx.kth_root(&ctx.q_pow(2), 3).unwrap();
    assert_eq!(roots.len(), 3);
    for r in &roots {
        assert!(ctx.eq(&ctx.pow(r, 3), &ctx.q_pow(2)));
    }
    assert_eq!(roots[0], ctx.parse("q^(2/3)").unwrap());
    assert_eq!(ctx.kth_root(&ctx.parse("q + 1").unwrap(), 2), Err(ScalarError::NotMonomial));
    let one = ctx.kth_root(&ctx.one(), 2).unwrap();
    assert_eq!(one, vec![ctx.one(), ctx.from_int(-1)]);
}

#[test]
fn parse_errors() {
    let ctx = FieldContext::generic(&[]);
    assert!(matches!(ctx.parse("q^(1/5)"), Err(ScalarError::ExponentDenominator(5, 6))));
    assert!(matches!(ctx.parse("z"), Err(ScalarError::UnknownSymbol(_))));
    assert!(matches!(ctx.parse("zeta(5)"), Err(ScalarError::ZetaNotInField(5, 6))));
    assert!(matches!(ctx.parse("1/0"), Err(ScalarError::DivisionByZero)));
    assert!(matches!(ctx.parse("(q"), Err(ScalarError::Parse { .. })));
    assert!(matches!(ctx.parse("q q"), Err(ScalarError::Parse { .. })));
    assert!(matches!(ctx.parse(""), Err(ScalarError::Parse { .. })));
}

#[test]
fn oversized_field_rejected() {
    let spec = FieldSpec::new(QKind::Zeta(5000));
    assert!(matches!(FieldContext::new(spec), Err(ScalarError::OrderTooLarge(_))));
}

#[test]
fn render_round_trips() {
    for ctx in [FieldContext::generic(&[Param::Z, Param::W]), FieldContext::zeta(12, &[Param::Z, Param::W])] {
        for t in [
            "q^(1/3)",
            "z^-1",
            "-q^2 + 3*w",
            "(q + 1)/(q^2 - z)",
            "1/2*zeta(3) - q",
            "(zeta(6) + 1)*q^(-1/2)*z",
            "-zeta(6)^2",
        ] {
            let a = ctx.parse(t).unwrap();
            let shown = ctx.to_expr(&a);
            let back = ctx.parse(&shown).unwrap();
            assert!(ctx.eq(&a, &back), "{} -> {} -> {:?}", t, shown, back);
        }
    }
}

#[test]
fn substitution_specializes_parameters() {
    let ctx = FieldContext::zeta(6, &[Param::Z]);
    let a = ctx.parse("(z - 1)/(z + q)").unwrap();
    let f = ctx.field();
    // g_z = zeta_N^k gives z = zeta_N^{kD}
    let vals = [None, Some(f.zeta_pow(1)), None];
    let b = ctx.substitute(&a, &vals);
    let z = ctx.zeta_pow(ctx.root_denominator() as i64);
    let expect = ctx.div(&ctx.sub(&z, &ctx.one()), &ctx.add(&z, &ctx.q()));
    assert!(ctx.eq(&b, &expect));
    assert!(ctx.to_cyc(&b).is_some());
}
