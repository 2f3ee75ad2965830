use super::series::Ser;
use super::theta::{theta_ser, ThetaArg};
use super::*;
use crate::exact::{chi_y_specialize, geometric_factor, rat_int, Cyclotomic, EExpr};
use crate::toric::{Fan2D, ToricPair};


fn r(n: i64) -> Rational {
    rat_int(n)
}

fn rq(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ylaurent(terms: &[(i64, Rational)]) -> LaurentPoly<Rational> {
    let mut p = LaurentPoly::zero_poly();
    for (c, e) in terms {
        p = &p + &LaurentPoly::term(r(*c), &[(Var::Y, e.clone())]);
    }
    p
}

fn ypoly(terms: &[(i64, Rational)]) -> EExpr {
    RatExpr::from_poly(ylaurent(terms))
}

fn p2_pair(coeffs: &[i64]) -> ToricPair {
    let fan = Fan2D::new(vec![[1, 0], [0, 1], [-1, -1]]).unwrap();
    ToricPair::new(fan, coeffs.iter().map(|&c| r(c)).collect()).unwrap()
}

fn p1p1_pair(coeffs: &[i64]) -> ToricPair {
    let fan = Fan2D::new(vec![[1, 0], [0, 1], [-1, 0], [0, -1]]).unwrap();
    ToricPair::new(fan, coeffs.iter().map(|&c| r(c)).collect()).unwrap()
}

fn f1_pair(coeffs: &[i64]) -> ToricPair {
    let fan = Fan2D::new(vec![[1, 0], [0, 1], [-1, 1], [0, -1]]).unwrap();
    ToricPair::new(fan, coeffs.iter().map(|&c| r(c)).collect()).unwrap()
}

/// Compares two internal series entry-by-entry through the smaller valid
/// order.
fn assert_ser_eq(a: &Ser<Rational>, b: &Ser<Rational>) {
    assert_eq!(a.scale, b.scale);
    let ord = a.ord_k.min(b.ord_k);
    for k in a.min_k.min(b.min_k)..=ord {
        let ca = a.get(k).to_ratexpr().unwrap();
        let cb = b.get(k).to_ratexpr().unwrap();
        assert_eq!(ca, cb, "coefficient of q^({k}/{}) differs", a.scale);
    }
}

#[test]
fn theta_q_prefactor_and_leading_ratio() {
    let t1 = theta_q(&r(1), 0, 3).unwrap();
    let expected = ypoly(&[(1, rq(1, 2)), (-1, rq(-1, 2))]);
    assert_eq!(t1.coefficient(&r(0)), expected);

    // θ̂(z)/θ̂(2z) at q⁰ → (y^{1/2} − y^{−1/2})/(y − y^{−1}).
    let t2 = theta_q(&r(2), 0, 3).unwrap();
    let ratio = t1
        .coefficient(&r(0))
        .div(&t2.coefficient(&r(0)))
        .unwrap();
    let expected = RatExpr::new(
        ylaurent(&[(1, rq(1, 2)), (-1, rq(-1, 2))]),
        ylaurent(&[(1, r(1)), (-1, r(-1))]),
    )
    .unwrap();
    assert_eq!(ratio, expected);

    // The equivariant character variable appears for nonzero weight.
    let tz = theta_q(&r(0), 1, 1).unwrap();
    let q0 = tz.coefficient(&r(0));
    assert!(q0.uses_var(Var::Z));
    assert!(!q0.uses_var(Var::Y));
}

#[test]
fn theta_oddness_at_every_order() {
    // Rational phases, with a genuine tau shift: compare θ̂(−u) and −θ̂(u).
    let scale = 4;
    let ord = 3 * scale;
    let arg = ThetaArg::sector(2, r(0), rq(1, 2), r(3), rq(1, 3));
    let plus: Ser<Rational> = theta_ser(&arg, scale, ord).unwrap();
    let minus: Ser<Rational> = theta_ser(&arg.neg(), scale, ord).unwrap();
    assert_ser_eq(&minus, &plus.neg());

    // Cyclotomic phases.
    let arg = ThetaArg::sector(1, rq(1, 3), rq(1, 2), r(1), r(0));
    let plus: Ser<Cyclotomic> = theta_ser(&arg, scale, ord).unwrap();
    let minus: Ser<Cyclotomic> = theta_ser(&arg.neg(), scale, ord).unwrap();
    let ord = plus.ord_k.min(minus.ord_k);
    for k in plus.min_k.min(minus.min_k)..=ord {
        assert_eq!(
            minus.get(k).to_ratexpr().unwrap(),
            plus.neg().get(k).to_ratexpr().unwrap(),
            "coefficient of q^({k}/{scale}) differs"
        );
    }
}

#[test]
fn divisor_factor_normalization() {
    // a = 0 is the constant 1 at every order.
    let f = divisor_factor(&r(0), 4).unwrap();
    assert!(f.is_one());

    // a = −1 has no finite factor.
    assert_eq!(
        divisor_factor(&r(-1), 2).unwrap_err(),
        EllipticError::MinusOneCoefficient
    );

    // The class-independent slot is 1 for every coefficient (theta oddness);
    // the linear slot is where the coefficient shows up.
    let f = divisor_factor(&r(1), 3).unwrap();
    assert_eq!(
        f.slots[0].entries(),
        &[(r(0), EExpr::one_expr())],
        "scalar slot of the a=1 factor"
    );
    assert!(!f.slots[1].is_zero());
}

#[test]
fn divisor_factor_q0_matches_geometric_factor() {
    // q⁰ of θ̂(z)/θ̂((a+1)z) equals y^{(a)/2}·(y−1)/(y^{a+1}−1), i.e. the
    // χ_y specialization of the geometric factor times the balancing
    // monomial y^{((a+1)−1)/2}.
    for a in [r(1), r(2), r(4), rq(1, 2), rq(-5, 2)] {
        let big_a = &a + r(1);
        let t1 = theta_q(&r(1), 0, 2).unwrap();
        let ta = theta_q(&big_a, 0, 2).unwrap();
        let lhs = t1
            .coefficient(&r(0))
            .div(&ta.coefficient(&r(0)))
            .unwrap();
        let shift = RatExpr::from_poly(LaurentPoly::term(
            r(1),
            &[(Var::Y, &a / r(2))],
        ));
        let rhs = &chi_y_specialize(&geometric_factor(&a).unwrap()).unwrap() * &shift;
        assert_eq!(lhs, rhs, "coefficient a = {a}");
    }
}

#[test]
fn smooth_pair_q0_oracles() {
    // Signed convention: q⁰ = y^{−1}·Hirzebruch χ_y.
    let s = ell_smooth_pair(&p2_pair(&[0, 0, 0]), 2).unwrap();
    let c0 = q0_chi_y(&s);
    assert_eq!(c0, ypoly(&[(1, r(-1)), (-1, r(0)), (1, r(1))]));
    assert_eq!(q0_signature(&c0).unwrap(), r(1));
    assert_eq!(
        q0_to_plain_chi_y(&c0).unwrap(),
        chi_y_specialize(&p2_pair(&[0, 0, 0]).fan().ambient_e()).unwrap()
    );

    let s = ell_smooth_pair(&p1p1_pair(&[0, 0, 0, 0]), 2).unwrap();
    let c0 = q0_chi_y(&s);
    assert_eq!(c0, ypoly(&[(1, r(-1)), (-2, r(0)), (1, r(1))]));
    assert_eq!(q0_signature(&c0).unwrap(), r(0));

    let s = ell_smooth_pair(&f1_pair(&[0, 0, 0, 0]), 2).unwrap();
    let c0 = q0_chi_y(&s);
    assert_eq!(
        q0_signed_chi_y_poly(&c0),
        ypoly(&[(1, r(0)), (-2, r(1)), (1, r(2))])
    );
    assert_eq!(
        q0_to_plain_chi_y(&c0).unwrap(),
        chi_y_specialize(&f1_pair(&[0, 0, 0, 0]).fan().ambient_e()).unwrap()
    );
}

#[test]
fn smooth_pair_vanishes_on_cy_pairs() {
    for pair in [
        p2_pair(&[0, 0, -3]),
        p1p1_pair(&[0, 0, -2, -2]),
        f1_pair(&[0, 1, 0, -3]),
    ] {
        assert!(pair.is_cy());
        let s = ell_smooth_pair(&pair, 3).unwrap();
        assert!(s.is_zero(), "nonzero genus for a CY pair: {s}");
    }
}

#[test]
fn local_model_closed_equals_perturbed() {
    use crate::stringy::Perturbation;

    // A Calabi–Yau local model (vanishing genus) and a non-CY variant of
    // the same fan (nonzero genus): the closed formula with −1-curve
    // factors must agree with the ε → 0 limit of the perturbed formula for
    // any null perturbation.
    let lm = ToricPair::local_model(2, &r(1), &r(-3)).unwrap();
    let mut pairs = vec![lm.clone()];
    {
        let mut coeffs = lm.coeffs().to_vec();
        let far = lm.fan().len() - 1; // away from E and its neighbors
        coeffs[far] += r(1);
        pairs.push(ToricPair::new(lm.fan().clone(), coeffs).unwrap());
    }
    for pair in pairs {
        let closed = ell_smooth_pair(&pair, 2).unwrap();
        let graph = pair.to_resolution_graph().unwrap();
        let b1 = Perturbation::null_for(&graph).unwrap().values().to_vec();
        let b2: Vec<Rational> = b1.iter().map(|x| x * r(3)).collect();
        let p1 = ell_smooth_pair_perturbed(&pair, &b1, 2).unwrap();
        let p2 = ell_smooth_pair_perturbed(&pair, &b2, 2).unwrap();
        assert_eq!(closed, p1, "closed vs first null perturbation");
        assert_eq!(closed, p2, "closed vs second null perturbation");
    }
}

#[test]
fn smooth_pair_rejects_inadmissible_input() {
    // Adjacent −1 coefficients.
    let pair = p1p1_pair(&[-1, -1, 0, 0]);
    assert!(matches!(
        ell_smooth_pair(&pair, 1),
        Err(EllipticError::NotAdmissible(_))
    ));

    // Neighbors of a −1 curve must have coefficients summing to −2.
    let pair = p1p1_pair(&[-1, 0, 0, 0]);
    assert!(matches!(
        ell_smooth_pair(&pair, 1),
        Err(EllipticError::NotAdmissible(_))
    ));

    // A −1 curve with nonnegative self-intersection has no local model.
    let lm = ToricPair::local_model(1, &r(0), &r(-2)).unwrap();
    let center = ToricPair::local_model_center();
    assert_eq!(lm.coeffs()[center], r(-1));
}

#[test]
fn equivariant_trivial_group_matches_smooth_pair() {
    for pair in [p2_pair(&[0, 0, 0]), p1p1_pair(&[0, 0, 0, 0])] {
        let smooth = ell_smooth_pair(&pair, 2).unwrap();
        let equiv = ell_toric_equivariant(&pair, &TorusSubgroup::trivial(), 2).unwrap();
        assert_eq!(smooth, equiv, "localization vs closed formula");
    }
}

#[test]
fn rigidity_small_cases() {
    let z2 = TorusSubgroup::cyclic(2, [1, 0]);
    assert_eq!(z2.order(), 2);
    let z3 = TorusSubgroup::cyclic(3, [1, 1]);
    assert_eq!(z3.order(), 3);

    let pair = p2_pair(&[0, 0, -3]);
    for group in [TorusSubgroup::trivial(), z2, z3] {
        let report = rigidity_check(&pair, &group, 1).unwrap();
        assert!(report.vanishes, "group of order {}", group.order());
        assert!(report.q0_vanishes);
    }

    // Non-CY control.
    assert_eq!(
        rigidity_check(&p1p1_pair(&[0, 0, 0, 0]), &TorusSubgroup::trivial(), 1).unwrap_err(),
        EllipticError::NotCalabiYau
    );
}

#[test]
fn minus_one_addend_is_neighbor_symmetric() {
    // m·θ̂(a₁z)θ̂((a₁+2)z)/θ̂((a₁+1)z)² is invariant under a₁ ↦ −2−a₁.
    let scale = 2;
    let ord = 3 * scale;
    for a1 in [r(1), r(-3), rq(1, 2), r(0)] {
        let other = r(-2) - &a1;
        let build = |a: &Rational| -> Ser<Rational> {
            let n1 = theta_ser(&ThetaArg::z(a.clone()), scale, ord).unwrap();
            let n2 = theta_ser(&ThetaArg::z(a + r(2)), scale, ord).unwrap();
            let d = theta_ser(&ThetaArg::z(a + r(1)), scale, ord)
                .unwrap()
                .inv()
                .unwrap();
            n1.mul(&n2).mul(&d.mul(&d))
        };
        assert_ser_eq(&build(&a1), &build(&other));
    }
}

#[test]
fn torus_subgroup_enumeration() {
    let g = TorusSubgroup::new(&[[rq(1, 2), r(0)], [r(0), rq(1, 2)]]);
    assert_eq!(g.order(), 4); // ℤ₂ × ℤ₂
    let g = TorusSubgroup::cyclic(6, [1, 5]);
    assert_eq!(g.order(), 6);
    assert_eq!(TorusSubgroup::trivial().order(), 1);
}

#[test]
fn qseries_basics() {
    let zero = QSeries::zero(3);
    assert!(zero.is_zero());
    assert_eq!(zero.coefficient(&r(1)), EExpr::zero_expr());

    let a = QSeries::from_entries(2, vec![(r(0), ypoly(&[(1, r(1))]))]);
    let b = QSeries::from_entries(3, vec![(r(0), ypoly(&[(-1, r(1))]))]);
    assert!(a.add(&b).is_zero());
    assert_eq!(a.scale(&r(-1)), b);
    // Validity order does not participate in equality.
    let c = QSeries::from_entries(7, vec![(r(0), ypoly(&[(1, r(1))]))]);
    assert_eq!(a, c);
    assert!(format!("{a}").contains("O(q^3)"));
}

#[test]
fn series_inverse_and_truncation() {
    // (1 − q)^{-1} = 1 + q + q² + …
    let one = Ser::<Rational>::one(1, 8);
    let q = Ser::monomial(1, 1, super::series::Frac::one(), 8);
    let inv = one.sub(&q).inv().unwrap();
    for k in 0..=8 {
        assert_eq!(inv.get(k).to_ratexpr().unwrap(), EExpr::one_expr());
    }

    // A negative leading exponent gains validity under inversion:
    // (q^{-1}(1 − q))^{-1} = q·(1 + q + …).
    let lead = Ser::monomial(1, -1, super::series::Frac::one(), 8);
    let s = lead.sub(&Ser::monomial(1, 0, super::series::Frac::one(), 8));
    let inv = s.inv().unwrap();
    assert!(inv.ord_k >= 10);
    assert!(inv.get(0).is_zero());
    for k in 1..=9 {
        assert_eq!(inv.get(k).to_ratexpr().unwrap(), EExpr::one_expr());
    }
}
