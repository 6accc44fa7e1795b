use super::*;
use crate::heckemod::{induced_onedim, Sign};
use crate::rootdata::RootKind;
use crate::scalars::{FieldContext, Param};

fn rs(kind: RootKind) -> Arc<RootSystem> {
    Arc::new(RootSystem::new(kind))
}

/// The specialized setting for an inventory family at `q = ζ_n`.
fn family_setting(kind: RootKind, name: &str, n: u32) -> Setting {
    let r = rs(kind);
    let fam = weights::find_family(kind, name).unwrap();
    let ctx = FieldContext::zeta(n, &fam.params());
    let t = fam.weight(&r, &ctx, 0, 0).unwrap();
    let sp = specialize(&r, &ctx, &t, &[]).unwrap();
    assert!(sp.certified);
    Setting::new(&r, &sp.ctx, &sp.weight).unwrap()
}

fn cell(kind: RootKind, name: &str, n: u32) -> (Vec<usize>, Decomposition) {
    let s = family_setting(kind, name, n);
    let m = s.principal_series().unwrap();
    let d = composition_factors(&s, &m).unwrap();
    assert_eq!(d.total_dim(), m.dim());
    (d.class_dims(), d)
}

#[test]
fn turns_reduce() {
    assert_eq!(Turn::new(6, 4), Turn { num: 1, den: 2 });
    assert_eq!(Turn::new(-1, 3), Turn { num: 2, den: 3 });
    assert_eq!(Turn::new(1, 3).add(Turn::new(1, 6)), Turn::new(1, 2));
    assert_eq!(Turn::new(1, 5).divide(6), Turn::new(1, 30));
    assert_eq!(Turn::new(2, 7).times(4), Turn::new(1, 7));
}

#[test]
fn specialization_is_certified_and_small() {
    let r = rs(RootKind::A2);
    let ctx = FieldContext::zeta(5, &[Param::Z, Param::W]);
    let fam = weights::find_family(RootKind::A2, "t_{z,w}").unwrap();
    let t = fam.weight(&r, &ctx, 0, 0).unwrap();
    let sp = specialize(&r, &ctx, &t, &[]).unwrap();
    assert!(sp.certified);
    assert!(sp.zp.zero.is_empty() && sp.zp.pole.is_empty());
    assert_eq!(weights::orbit_and_stabilizer(&r, &sp.ctx, &sp.weight).len(), 6);
    assert!(sp.ctx.order() <= 30 * 7);

    // an explicit non-generic choice is not certified
    let fam = weights::find_family(RootKind::A2, "t_{1,z}").unwrap();
    let ctx = FieldContext::zeta(5, &[Param::Z]);
    let t = fam.weight(&r, &ctx, 0, 0).unwrap();
    let sp = specialize(&r, &ctx, &t, &[(Param::Z, Turn::zero())]).unwrap();
    assert!(!sp.certified);
    assert!(matches!(specialize(&r, &FieldContext::generic(&[Param::Z]), &t, &[]), Err(DecompError::NeedsConcreteQ)));
}

#[test]
fn generalized_weight_space_examples() {
    let s = family_setting(RootKind::A2, "t_{1,z}", 5);
    let m = s.principal_series().unwrap();
    let mut dims: Vec<usize> = weight_dimensions(&s, &m).unwrap().into_iter().filter(|&d| d > 0).collect();
    dims.sort();
    assert_eq!(dims, [2, 2, 2]);

    let s = family_setting(RootKind::C2, "t_{1,1}", 5);
    assert_eq!(weight_dimensions(&s, &s.principal_series().unwrap()).unwrap(), [8]);

    // induced module at q = ζ_4 with t(X^{α_1}) = q²
    let r = rs(RootKind::C2);
    let ctx = FieldContext::zeta(4, &[]);
    let t = weights::find_family(RootKind::C2, "t_{q^2,1}").unwrap().weight(&r, &ctx, 0, 0).unwrap();
    let sp = specialize(&r, &ctx, &t, &[]).unwrap();
    let s = Setting::new(&r, &sp.ctx, &sp.weight).unwrap();
    let m = s.convert(&induced_onedim(&r, &sp.ctx, &[0], &sp.weight, Sign::PlusQ).unwrap()).unwrap();
    let dims = weight_dimensions(&s, &m).unwrap();
    let nonzero: Vec<(String, usize)> =
        dims.iter().enumerate().filter(|(_, &d)| d > 0).map(|(p, &d)| (s.labels[p].clone(), d)).collect();
    assert_eq!(nonzero, [("e".to_string(), 2), ("s1".to_string(), 2)]);
}

#[test]
fn eigen_versus_generalized() {
    let s = family_setting(RootKind::A2, "t_{1,1}", 5);
    let m = s.principal_series().unwrap();
    assert_eq!(eigen_weight_spaces(&s, &m)[0].len(), 1);
    assert_eq!(generalized_weight_spaces(&s, &m).unwrap()[0].len(), 6);
}

#[test]
fn tau_operators() {
    let s = family_setting(RootKind::A2, "t_{q^2,z}", 5);
    let m = s.principal_series().unwrap();
    let f = &**s.field();
    let q2 = s.ctx.q_pow(2);
    let qm2 = s.ctx.q_pow(-2);
    for p in 0..s.orbit.len() {
        for i in 0..2 {
            let v = s.orbit.weights[p].eval(&s.ctx, &s.rs.simple_root(i));
            let tau = tau_matrix(&s, &m, i, p).unwrap();
            let back = tau_matrix(&s, &m, i, tau.target).unwrap();
            let sq = linalg::mul(f, &back.matrix, &tau.matrix);
            if s.ctx.eq(&v, &q2) || s.ctx.eq(&v, &qm2) {
                assert!(linalg::is_zero(f, &sq), "tau^2 vanishes at a pole");
            } else {
                assert_eq!(linalg::rank(f, &tau.matrix), tau.matrix.cols());
            }
        }
    }
    let s = family_setting(RootKind::A2, "t_{1,z}", 5);
    let m = s.principal_series().unwrap();
    assert!(matches!(tau_matrix(&s, &m, 0, 0), Err(DecompError::TauUndefined(1))));
}

#[test]
fn closure_and_radical() {
    // irreducible A1 M(t_z): full matrix algebra
    let s = family_setting(RootKind::A1, "t_{z}", 5);
    let m = s.principal_series().unwrap();
    assert_eq!(algebra_closure(&m).len(), 4);
    assert!(radical(&m.field, &algebra_closure(&m)).is_empty());

    // A1 M(t_q): non-split extension of two characters
    let s = family_setting(RootKind::A1, "t_{q}", 5);
    let m = s.principal_series().unwrap();
    let alg = algebra_closure(&m);
    assert_eq!(alg.len(), 3);
    let j = radical(&m.field, &alg);
    assert_eq!(j.len(), 1);
    assert!(linalg::is_zero(&*m.field, &linalg::mul(&*m.field, &j[0], &j[0])));

    let filt = socle_filtration(&m);
    assert_eq!(filt.layer_dims(), [1, 1]);
    // the socle is spanned by T_1 v − q v
    let f = &*m.field;
    let soc = &filt.layers[0][0];
    let expect = [f.neg(s.q()), f.one()];
    assert!(f.equal(&f.mul(&soc[0], &expect[1]), &f.mul(&soc[1], &expect[0])));

    // at q = −1 the same character gives a semisimple module
    let s = family_setting(RootKind::A1, "t_{q}", 2);
    let m = s.principal_series().unwrap();
    assert_eq!(socle_filtration(&m).layer_dims(), [2]);
    let parts = split_semisimple(&s, &m).unwrap();
    assert_eq!(parts.iter().map(|p| p.len()).collect::<Vec<_>>(), [1, 1]);
}

#[test]
fn spin_examples() {
    let s = family_setting(RootKind::A2, "t_{z,w}", 5);
    let m = s.principal_series().unwrap();
    let f = &*m.field;
    let mut v = vec![f.zero(); 6];
    v[0] = f.one();
    assert_eq!(spin(&m, &v).len(), 6);
}

#[test]
fn composition_factor_examples() {
    assert_eq!(cell(RootKind::A2, "t_{q^2,q^2}", 5).0, [1, 1, 2, 2]);
    let (dims, d) = cell(RootKind::C2, "t_{1,q^2}", 4);
    assert_eq!(dims, [1, 1, 2, 2]);
    let ones: usize = d.factors.iter().filter(|f| f.dim == 1).map(|f| f.multiplicity).sum();
    assert_eq!(ones, 4);
    // at q¹⁰ = 1 the column's t_{q,1} is realized as t_{q^-4,1}, see the tables
    let r = rs(RootKind::G2);
    let ctx = FieldContext::zeta(10, &[]);
    let t = weights::parse_character(&r, &ctx, "t{a1=q^-4,a2=1}").unwrap();
    let sp = specialize(&r, &ctx, &t, &[]).unwrap();
    let s = Setting::new(&r, &sp.ctx, &sp.weight).unwrap();
    let d = composition_factors(&s, &s.principal_series().unwrap()).unwrap();
    assert_eq!(d.class_dims(), [1, 1, 5, 5]);
}

#[test]
fn clifford_regular_representation() {
    let (dims, d) = cell(RootKind::C2, "t_{1,1}", 2);
    assert_eq!(dims, [1, 1, 1, 1, 2]);
    let two = d.factors.iter().find(|f| f.dim == 2).unwrap();
    assert_eq!(two.multiplicity, 2);
    assert_eq!(cell(RootKind::A2, "t_{1,z}", 2).0, [3, 3]);
}

#[test]
fn tau_laws_hold_on_examples() {
    for (kind, name, n) in [
        (RootKind::A1, "t_{q}", 5),
        (RootKind::A2, "t_{1,1}", 5),
        (RootKind::A2, "t_{q^2,z}", 5),
        (RootKind::C2, "t_{1,q^2}", 4),
        (RootKind::G2, "t_{q^2,q^2}", 12),
    ] {
        let s = family_setting(kind, name, n);
        let m = s.principal_series().unwrap();
        let r = tau_laws(&s, &m).unwrap();
        assert!(r.checks > 0);
        assert!(r.all_pass(), "{kind} {name}: {:?}", r.failures);
    }
}

#[test]
fn tau_laws_detect_a_perturbed_t() {
    let s = family_setting(RootKind::A2, "t_{q^2,z}", 5);
    let mut m = s.principal_series().unwrap();
    let f = m.field.clone();
    let v = f.add(m.t[0].get(0, 1), &f.one());
    m.t[0].set(0, 1, v);
    match tau_laws(&s, &m) {
        Ok(r) => assert!(!r.all_pass()),
        Err(e) => assert!(matches!(e, DecompError::NotInvariant), "{e}"),
    }
}
