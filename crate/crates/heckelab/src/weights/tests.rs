use super::*;
use crate::scalars::QKind;

fn ctx_generic() -> std::sync::Arc<FieldContext> {
    FieldContext::generic(&[Param::Z, Param::W])
}

fn alpha(ctx: &FieldContext, a: &[&str]) -> Vec<Scalar> {
    a.iter().map(|e| ctx.parse(e).unwrap()).collect()
}

#[test]
fn a2_lifts_cube_to_z2w() {
    let rs = RootSystem::new(RootKind::A2);
    let ctx = ctx_generic();
    let vals = alpha(&ctx, &["z", "w"]);
    let lifts: Vec<WeightPoint> = (0..3).map(|k| weight_from_simple_roots(&rs, &ctx, &vals, k).unwrap()).collect();
    let target = ctx.parse("z^2*w").unwrap();
    for (i, t) in lifts.iter().enumerate() {
        assert!(ctx.eq(&ctx.pow(&t.omega_values()[0], 3), &target));
        let back = t.alpha_values(&rs, &ctx);
        assert!(ctx.eq(&back[0], &vals[0]) && ctx.eq(&back[1], &vals[1]));
        for u in &lifts[..i] {
            assert!(!u.same(&ctx, t));
        }
    }
    assert!(matches!(weight_from_simple_roots(&rs, &ctx, &vals, 3), Err(WeightError::LiftOutOfRange(3, 3))));
}

#[test]
fn c2_and_g2_lifts() {
    let ctx = ctx_generic();
    let c2 = RootSystem::new(RootKind::C2);
    let vals = alpha(&ctx, &["z", "w"]);
    for k in 0..2 {
        let t = weight_from_simple_roots(&c2, &ctx, &vals, k).unwrap();
        assert!(ctx.eq(&ctx.pow(&t.omega_values()[0], 2), &ctx.parse("z^2*w").unwrap()));
        assert!(ctx.eq(&t.omega_values()[1], &ctx.parse("z*w").unwrap()));
    }
    let g2 = RootSystem::new(RootKind::G2);
    let t = weight_from_simple_roots(&g2, &ctx, &vals, 0).unwrap();
    assert!(ctx.eq(&t.omega_values()[0], &ctx.parse("z^2*w").unwrap()));
    assert!(ctx.eq(&t.omega_values()[1], &ctx.parse("z^3*w^2").unwrap()));
}

#[test]
fn weyl_action_on_weights() {
    let ctx = FieldContext::generic(&[Param::Z]);
    let a1 = RootSystem::new(RootKind::A1);
    let t = WeightPoint::from_omega_values(vec![ctx.param(Param::Z)]).unwrap();
    assert_eq!(weight_act(&a1, &ctx, 0, &t), t);
    let s = weight_act(&a1, &ctx, a1.simple(0), &t);
    assert!(ctx.eq(&s.omega_values()[0], &ctx.parse("z^-1").unwrap()));

    // C2: the two lifts of t_{-1,w} are exchanged by s1
    let c2 = RootSystem::new(RootKind::C2);
    let vals = alpha(&ctx, &["-1", "z"]);
    let t0 = weight_from_simple_roots(&c2, &ctx, &vals, 0).unwrap();
    let t1 = weight_from_simple_roots(&c2, &ctx, &vals, 1).unwrap();
    assert!(weight_act(&c2, &ctx, c2.simple(0), &t0).same(&ctx, &t1));
}

fn zp_of(kind: RootKind, ctx: &FieldContext, a: &[&str]) -> ZpSets {
    let rs = RootSystem::new(kind);
    let t = weight_from_simple_roots(&rs, ctx, &alpha(ctx, a), 0).unwrap();
    zp_sets(&rs, ctx, &t)
}

#[test]
fn zp_examples() {
    let ctx = ctx_generic();
    assert_eq!(zp_of(RootKind::A2, &ctx, &["1", "q^2"]), ZpSets { zero: vec![0], pole: vec![1, 2] });
    assert_eq!(zp_of(RootKind::C2, &ctx, &["q^2", "1"]), ZpSets { zero: vec![1], pole: vec![0, 2] });
    assert_eq!(zp_of(RootKind::G2, &ctx, &["z", "w"]), ZpSets::default());
}

#[test]
fn orbit_examples() {
    let ctx = ctx_generic();
    let a2 = RootSystem::new(RootKind::A2);
    let t = weight_from_simple_roots(&a2, &ctx, &alpha(&ctx, &["z", "w"]), 0).unwrap();
    assert_eq!(orbit_and_stabilizer(&a2, &ctx, &t).len(), 6);
    let t = weight_from_simple_roots(&a2, &ctx, &alpha(&ctx, &["1", "z"]), 0).unwrap();
    let o = orbit_and_stabilizer(&a2, &ctx, &t);
    assert_eq!((o.len(), o.stabilizer.len()), (3, 2));
    let names: Vec<String> = o.reps.iter().map(|&w| a2.element(w).name()).collect();
    assert_eq!(names, ["e", "s2", "s1s2"]);
    assert!(o.stabilizer_is_reflection_group);
    let c2 = RootSystem::new(RootKind::C2);
    let t = weight_from_simple_roots(&c2, &ctx, &alpha(&ctx, &["1", "1"]), 0).unwrap();
    assert_eq!(orbit_and_stabilizer(&c2, &ctx, &t).len(), 1);
}

#[test]
fn calibration_examples() {
    let ctx = ctx_generic();
    let a2 = RootSystem::new(RootKind::A2);
    let t = weight_from_simple_roots(&a2, &ctx, &alpha(&ctx, &["q^2", "z"]), 0).unwrap();
    let g = calibration_graph(&a2, &ctx, &orbit_and_stabilizer(&a2, &ctx, &t));
    let mut sizes: Vec<usize> = g.components.iter().map(|c| c.len()).collect();
    sizes.sort();
    assert_eq!(sizes, [3, 3]);

    let c2 = RootSystem::new(RootKind::C2);
    let t = weight_from_simple_roots(&c2, &ctx, &alpha(&ctx, &["-1", "q^2"]), 0).unwrap();
    let g = calibration_graph(&c2, &ctx, &orbit_and_stabilizer(&c2, &ctx, &t));
    let sizes: Vec<usize> = g.components.iter().map(|c| c.len()).collect();
    assert_eq!(sizes, [2, 2, 2, 2]);

    let g2 = RootSystem::new(RootKind::G2);
    let t = weight_from_simple_roots(&g2, &ctx, &alpha(&ctx, &["z", "w"]), 0).unwrap();
    let g = calibration_graph(&g2, &ctx, &orbit_and_stabilizer(&g2, &ctx, &t));
    assert_eq!(g.components.len(), 1);
}

#[test]
fn kato_examples() {
    let ctx = ctx_generic();
    let a2 = RootSystem::new(RootKind::A2);
    let c2 = RootSystem::new(RootKind::C2);
    let g2 = RootSystem::new(RootKind::G2);
    let w = |rs: &RootSystem, a: &[&str]| weight_from_simple_roots(rs, &ctx, &alpha(&ctx, a), 0).unwrap();
    assert!(kato_irreducible(&a2, &ctx, &w(&a2, &["1", "1"])));
    assert!(!kato_irreducible(&c2, &ctx, &w(&c2, &["q", "1"])));
    assert!(kato_irreducible(&g2, &ctx, &w(&g2, &["z", "w"])));
}

#[test]
fn inventory_sizes() {
    assert_eq!(inventory(RootKind::A1).len(), 5);
    assert_eq!(inventory(RootKind::A2).len(), 7);
    assert_eq!(inventory(RootKind::C2).len(), 13);
    assert_eq!(inventory(RootKind::G2).len(), 17);
}

#[test]
fn generic_zp_matches_inventory() {
    for kind in RootKind::ALL {
        let rs = RootSystem::new(kind);
        // generic symbolic q, and a concrete root of unity of large order
        for ctx in [ctx_generic(), FieldContext::new(crate::scalars::FieldSpec::new(QKind::Zeta(7)).with_params(&[Param::Z, Param::W])).unwrap()] {
            for e in classify_nongeneric(&rs, &ctx).unwrap() {
                assert_eq!(e.zp, e.generic_zp, "{} {}", kind, e.name);
                assert!(e.aliases.is_empty(), "{} {} aliases {:?}", kind, e.name, e.aliases);
            }
        }
    }
}

#[test]
fn regime_merges() {
    // A2 at q^2 = -1: t_{q^2,1} and t_{q^2,q^2} are in the orbit of t_{1,q^2}
    let rs = RootSystem::new(RootKind::A2);
    let ctx = FieldContext::zeta(4, &[Param::Z, Param::W]);
    let entries = classify_nongeneric(&rs, &ctx).unwrap();
    let get = |n: &str| entries.iter().find(|e| e.name == n).unwrap();
    assert_eq!(get("t_{q^2,1}").aliases, ["t_{1,q^2}"]);
    assert!(get("t_{q^2,q^2}").aliases.contains(&"t_{1,q^2}"));

    // G2 at q^2 = -1: t_{1,q} and t_{1,-q} share an orbit
    let g2 = RootSystem::new(RootKind::G2);
    let entries = classify_nongeneric(&g2, &ctx).unwrap();
    let e = entries.iter().find(|e| e.name == "t_{1,+-q}").unwrap();
    assert_eq!(e.merged_variants, 2);
}

#[test]
fn names_resolve() {
    let rs = RootSystem::new(RootKind::C2);
    let ctx = FieldContext::zeta(6, &[]);
    let a = parse_character(&rs, &ctx, "t_{q^{2},1}").unwrap();
    let b = parse_character(&rs, &ctx, "t{a1=q^2,a2=1;lift=0}").unwrap();
    assert!(a.same(&ctx, &b));
    assert!(find_family(RootKind::G2, "t_{1,\\pm q}").is_some());
    assert!(find_family(RootKind::G2, "t_{q^{2/3},1}").is_some());
    assert!(matches!(parse_character(&rs, &ctx, "t_{7,7}"), Err(WeightError::UnknownCharacter(_))));
    let c = parse_character(&rs, &ctx, "t{w1=q,w2=1}").unwrap();
    assert!(ctx.eq(&c.omega_values()[0], &ctx.q()));
}

#[test]
fn fuzz_nongeneric_weights_are_classified() {
    // α-values drawn from a grid of roots of unity at a generic-column q
    let cases = [(RootKind::A2, 5u32), (RootKind::C2, 5), (RootKind::G2, 7)];
    for (kind, n) in cases {
        let rs = RootSystem::new(kind);
        // grid over the roots of unity of Q(ζ_N0); the extra factor makes
        // every lift of a grid point expressible
        let k = rs.lift_count() as i64;
        let spec = crate::scalars::FieldSpec::new(QKind::Zeta(n)).with_params(&[Param::Z, Param::W]).with_extra_factor(k as u32);
        let ctx = FieldContext::new(spec).unwrap();
        let big = ctx.order() as i64 / k;
        let templates: Vec<Vec<Option<Scalar>>> = inventory(kind)
            .iter()
            .flat_map(|f| f.variants.clone())
            .map(|v| {
                v.iter()
                    .map(|slot| match slot {
                        Slot::Fixed(e) => Some(ctx.parse(e).unwrap()),
                        Slot::Free(_) => None,
                    })
                    .collect()
            })
            .collect();
        let mut checked = 0;
        let step = 1;
        for a in (0..big).step_by(step as usize) {
            for b in (0..big).step_by(step as usize) {
                let vals = vec![ctx.zeta_pow(k * a), ctx.zeta_pow(k * b)];
                let t = weight_from_simple_roots(&rs, &ctx, &vals, 0).unwrap();
                let zp = zp_sets(&rs, &ctx, &t);
                if zp.zero.is_empty() && zp.pole.is_empty() {
                    continue;
                }
                checked += 1;
                let hit = templates.iter().any(|tpl| template_matches(&rs, &ctx, tpl, &t));
                assert!(hit, "{} ({}, {}) not classified", kind, a, b);
            }
        }
        assert!(checked > 0);
    }
}

/// Free slots match anything (each family has at most one occurrence of a
/// given parameter, so no binding is needed).
fn template_matches(rs: &RootSystem, ctx: &FieldContext, tpl: &[Option<Scalar>], t: &WeightPoint) -> bool {
    (0..rs.order()).any(|w| {
        let vals = weight_act(rs, ctx, w, t).alpha_values(rs, ctx);
        tpl.iter().zip(&vals).all(|(slot, x)| match slot {
            Some(e) => ctx.eq(e, x),
            None => true,
        })
    })
}
