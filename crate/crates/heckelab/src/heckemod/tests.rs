use super::*;
use crate::rootdata::RootKind;
use crate::scalars::Param;

fn rs(kind: RootKind) -> Arc<RootSystem> {
    Arc::new(RootSystem::new(kind))
}

fn weight(rs: &RootSystem, ctx: &FieldContext, a: &[&str]) -> WeightPoint {
    let vals: Vec<Scalar> = a.iter().map(|e| ctx.parse(e).unwrap()).collect();
    weights::weight_from_simple_roots(rs, ctx, &vals, 0).unwrap()
}

#[test]
fn divided_difference_examples() {
    let a1 = RootSystem::new(RootKind::A1);
    assert_eq!(divided_difference(&a1, &[1, 0], 0), vec![([1, 0], 1)]);
    assert_eq!(divided_difference(&a1, &[0, 0], 0), vec![]);
    let mut dd = divided_difference(&a1, &a1.simple_root(0), 0);
    dd.sort();
    assert_eq!(dd, vec![([0, 0], 1), ([2, 0], 1)]);
}

#[test]
fn divided_difference_telescopes() {
    // dd·(1 − X^{−α}) = X^λ − X^{s_iλ} over a coordinate grid
    for kind in RootKind::ALL {
        let rs = RootSystem::new(kind);
        for i in 0..rs.rank() {
            let a = rs.simple_root(i);
            for l0 in -3..=3 {
                for l1 in -3..=3 {
                    let lam = if rs.rank() == 1 { [l0, 0] } else { [l0, l1] };
                    let mut acc: BTreeMap<Lat, i64> = BTreeMap::new();
                    for (mu, c) in divided_difference(&rs, &lam, i) {
                        *acc.entry(mu).or_default() += c;
                        *acc.entry([mu[0] - a[0], mu[1] - a[1]]).or_default() -= c;
                    }
                    *acc.entry(lam).or_default() -= 1;
                    *acc.entry(rs.act(rs.simple(i), &lam)).or_default() += 1;
                    assert!(acc.values().all(|&c| c == 0), "{} {:?} {}", kind, lam, i);
                }
            }
        }
    }
}

#[test]
fn normal_form_examples() {
    let ctx = FieldContext::generic(&[]);
    let a1 = RootSystem::new(RootKind::A1);
    let tt = normal_form(&a1, &ctx, &[Generator::T(0), Generator::T(0)]);
    let mut expect = AlgebraElement::zero();
    expect.add_term(&ctx, a1.simple(0), [0, 0], ctx.q_diff());
    expect.add_term(&ctx, 0, [0, 0], ctx.one());
    assert!(tt.same(&ctx, &expect));

    let xt = normal_form(&a1, &ctx, &[Generator::X([1, 0]), Generator::T(0)]);
    let mut expect = AlgebraElement::zero();
    expect.add_term(&ctx, a1.simple(0), [-1, 0], ctx.one());
    expect.add_term(&ctx, 0, [1, 0], ctx.q_diff());
    assert!(xt.same(&ctx, &expect));

    let inv = normal_form(&a1, &ctx, &[Generator::T(0), Generator::TInv(0)]);
    assert!(inv.same(&ctx, &AlgebraElement::one(&ctx)));

    for kind in [RootKind::A2, RootKind::C2, RootKind::G2] {
        let rs = RootSystem::new(kind);
        let m = rs.braid_exponent(0, 1);
        let w1: Vec<Generator> = (0..m).map(|k| Generator::T(k % 2)).collect();
        let w2: Vec<Generator> = (0..m).map(|k| Generator::T(1 - k % 2)).collect();
        assert!(normal_form(&rs, &ctx, &w1).same(&ctx, &normal_form(&rs, &ctx, &w2)));
    }
}

#[test]
fn a1_principal_series_matrices() {
    let ctx = FieldContext::generic(&[Param::Z]);
    let a1 = rs(RootKind::A1);
    let t = WeightPoint::from_omega_values(vec![ctx.param(Param::Z)]).unwrap();
    let m = principal_series(&a1, &ctx, &t);
    assert_eq!(m.labels(), ["e", "s1"]);
    let x = m.x(0);
    let z = ctx.param(Param::Z);
    assert!(ctx.eq(x.get(0, 0), &z));
    assert!(ctx.eq(x.get(0, 1), &ctx.mul(&ctx.q_diff(), &z)));
    assert!(x.get(1, 0).is_zero());
    assert!(ctx.eq(x.get(1, 1), &ctx.inv(&z)));
    assert!(verify_relations(&m).all_pass());
}

#[test]
fn principal_series_dimensions_and_relations() {
    let ctx = FieldContext::generic(&[Param::Z, Param::W]);
    for (kind, d) in [(RootKind::A2, 6), (RootKind::C2, 8), (RootKind::G2, 12)] {
        let r = rs(kind);
        let t = weight(&r, &ctx, &["z", "w"]);
        let m = principal_series(&r, &ctx, &t);
        assert_eq!(m.dim(), d);
        let rep = verify_relations(&m);
        assert!(rep.all_pass(), "{}: {:?}", kind, rep.failures());
    }
}

#[test]
fn perturbed_module_fails_quadratic() {
    let ctx = FieldContext::zeta(5, &[]);
    let r = rs(RootKind::A2);
    let m = principal_series(&r, &ctx, &weight(&r, &ctx, &["1", "q^2"]));
    let mut t = m.t_matrices().to_vec();
    let v = ctx.add(t[0].get(0, 0), &ctx.one());
    t[0].set(0, 0, v);
    let bad = ModuleRep::from_matrices(r.clone(), ctx.clone(), m.labels().to_vec(), t, m.x_matrices().to_vec(), Provenance::Explicit);
    let rep = verify_relations(&bad);
    let fails = rep.failures();
    assert!(fails.iter().any(|c| c.relation == "quadratic T1"));
}

#[test]
fn induced_examples() {
    let ctx = FieldContext::generic(&[Param::Z]);
    let a2 = rs(RootKind::A2);
    let t = weight(&a2, &ctx, &["q^2", "z"]);
    let m = induced_onedim(&a2, &ctx, &[0], &t, Sign::PlusQ).unwrap();
    assert_eq!(m.dim(), 3);
    assert!(verify_relations(&m).all_pass());
    assert!(matches!(induced_onedim(&a2, &ctx, &[0], &t, Sign::MinusQInv), Err(ModuleError::SignMismatch(1, _, _))));

    let c2 = rs(RootKind::C2);
    let t = weight(&c2, &ctx, &["1", "q^2"]);
    let m = induced_onedim(&c2, &ctx, &[1], &t, Sign::PlusQ).unwrap();
    assert_eq!(m.dim(), 4);
    assert!(verify_relations(&m).all_pass());
    let t = weight(&c2, &ctx, &["1", "q^-2"]);
    let m = induced_onedim(&c2, &ctx, &[1], &t, Sign::MinusQInv).unwrap();
    assert!(verify_relations(&m).all_pass());
}

#[test]
fn calibrated_examples() {
    let ctx = FieldContext::generic(&[Param::Z]);
    let a2 = rs(RootKind::A2);
    let t = weight(&a2, &ctx, &["q^2", "z"]);
    let orbit = weights::orbit_and_stabilizer(&a2, &ctx, &t);
    let g = weights::calibration_graph(&a2, &ctx, &orbit);
    for comp in &g.components {
        let m = calibrated_module(&a2, &ctx, &t, comp).unwrap();
        assert_eq!(m.dim(), 3);
        let rep = verify_relations(&m);
        assert!(rep.all_pass(), "{:?}", rep.failures());
    }
    assert!(matches!(calibrated_module(&a2, &ctx, &t, &[0]), Err(ModuleError::NotComponent)));

    let c2 = rs(RootKind::C2);
    let t = weight(&c2, &ctx, &["-1", "q^2"]);
    let orbit = weights::orbit_and_stabilizer(&c2, &ctx, &t);
    for comp in &weights::calibration_graph(&c2, &ctx, &orbit).components {
        let m = calibrated_module(&c2, &ctx, &t, comp).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(verify_relations(&m).all_pass());
    }
    let t = weight(&c2, &ctx, &["1", "z"]);
    assert!(matches!(calibrated_module(&c2, &ctx, &t, &[0]), Err(ModuleError::NotRegular)));
}

#[test]
fn g2_calibrated_at_twelfth_root() {
    let ctx = FieldContext::zeta(12, &[]);
    let g2 = rs(RootKind::G2);
    let t = weight(&g2, &ctx, &["q^2", "q^2"]);
    let orbit = weights::orbit_and_stabilizer(&g2, &ctx, &t);
    let mut dims = Vec::new();
    for comp in &weights::calibration_graph(&g2, &ctx, &orbit).components {
        let m = calibrated_module(&g2, &ctx, &t, comp).unwrap();
        assert!(verify_relations(&m).all_pass());
        dims.push(m.dim());
    }
    dims.sort();
    assert_eq!(dims, [1, 1, 2, 2, 3, 3]);
}

#[test]
fn clifford_examples() {
    let ctx = FieldContext::zeta(2, &[]);
    let a2 = rs(RootKind::A2);
    let t = weight(&a2, &ctx, &["1", "1"]);
    let irreps = wt_irreps(2, 3);
    let refl = irreps.iter().find(|r| r.dim == 2).unwrap();
    let m = clifford_module(&a2, &ctx, &t, refl).unwrap();
    assert_eq!(m.dim(), 2);
    assert!(verify_relations(&m).all_pass());

    let c2 = rs(RootKind::C2);
    let t = weight(&c2, &ctx, &["1", "1"]);
    let (gens, mm) = stabilizer_generators(&c2, &ctx, &t);
    let mut dims: Vec<usize> = wt_irreps(gens.len(), mm)
        .iter()
        .map(|r| {
            let m = clifford_module(&c2, &ctx, &t, r).unwrap();
            assert!(verify_relations(&m).all_pass());
            m.dim()
        })
        .collect();
    dims.sort();
    assert_eq!(dims, [1, 1, 1, 1, 2]);

    // G2 t_{1^(1/3),1}: the orbit has two weights and W_t is of type A2
    let g2 = rs(RootKind::G2);
    let t = weight(&g2, &ctx, &["zeta(3)", "1"]);
    let (gens, mm) = stabilizer_generators(&g2, &ctx, &t);
    assert_eq!((gens.len(), mm), (2, 3));
    let mut dims: Vec<usize> = wt_irreps(2, 3).iter().map(|r| clifford_module(&g2, &ctx, &t, r).unwrap().dim()).collect();
    dims.sort();
    assert_eq!(dims, [2, 2, 4]);

    let bad = WtIrrep { name: "bad".into(), dim: 1, gens: vec![int_mat(&[&[2]]), int_mat(&[&[1]])] };
    assert!(matches!(clifford_module(&g2, &ctx, &t, &bad), Err(ModuleError::BadIrrep(_))));
    let ctx5 = FieldContext::zeta(5, &[]);
    let t5 = weight(&g2, &ctx5, &["1", "1"]);
    assert!(matches!(clifford_module(&g2, &ctx5, &t5, &wt_irreps(2, 6)[0]), Err(ModuleError::QSquaredNotOne)));
}

#[test]
fn one_dimensional_counts() {
    let generic = FieldContext::generic(&[]);
    for (kind, n) in [(RootKind::A1, 4), (RootKind::A2, 6), (RootKind::C2, 8), (RootKind::G2, 4)] {
        let reps = one_dim_reps(&rs(kind), &generic).unwrap();
        assert_eq!(reps.len(), n, "{}", kind);
        for r in &reps {
            assert!(verify_relations(&r.module).all_pass());
        }
    }
    let i = FieldContext::zeta(4, &[]);
    assert_eq!(one_dim_reps(&rs(RootKind::G2), &i).unwrap().len(), 1);
}
