//! Module-level checks: rigidity zig-zags, the u element of the double and
//! its closed form, the canonical action through its three formulations, the
//! module-algebra laws, and the quantum-dimension computations.

use quasihopf::*;

fn z2_group() -> AlgebraPresentation {
    group_algebra(&GroupTable::cyclic(2)).unwrap()
}

fn dual_omega(n: usize, q: usize) -> AlgebraPresentation {
    dual_group_algebra_twisted(&GroupTable::cyclic(n), &cocycle_cyclic(n, q)).unwrap()
}

#[test]
fn trivial_module_quantum_dimension_is_one() {
    for h in [z2_group(), dual_omega(2, 1)] {
        let d = build_double(&h).unwrap();
        let pack = compute_pack(&d.inner).unwrap();
        let v = ModuleAction::trivial(&d.inner).unwrap();
        let dim = quantum_dimension(&d.inner, &pack, &d.r_matrix, &v).unwrap();
        assert_eq!(dim, Scalar::one());
    }
}

#[test]
fn zigzags_hold_for_regular_modules() {
    for h in [z2_group(), sweedler_h4(), dual_omega(2, 1)] {
        let v = ModuleAction::regular(&h).unwrap();
        // dual_ev_coev verifies both zig-zags internally
        dual_ev_coev(&h, &v).unwrap();
    }
}

#[test]
fn u_element_of_double_matches_closed_form() {
    for h in [z2_group(), sweedler_h4(), dual_omega(2, 1)] {
        let d = build_double(&h).unwrap();
        let ue = double_u_eta(&d).unwrap();
        assert_eq!(ue.u, double_u_closed_form(&d), "u in D({})", h.label);
        assert_eq!(
            ue.eta,
            double_eta_closed_form(&d),
            "eta in D({})",
            h.label
        );
    }
}

#[test]
fn cocommutative_group_algebra_has_trivial_u() {
    // with R = 1 (x) 1 on kG: u = 1 and eta = 1
    let h = group_algebra(&GroupTable::cyclic(3)).unwrap();
    let pack = compute_pack(&h).unwrap();
    let mut r = TensorElement::zero(3, 2);
    r.set(&[0, 0], Scalar::one());
    let ue = compute_u_eta(&h, &pack, &r).unwrap();
    assert_eq!(ue.u, h.unit);
    assert_eq!(ue.eta, h.unit);
}

#[test]
fn schrodinger_action_three_routes_agree() {
    for h in [z2_group(), sweedler_h4(), dual_omega(2, 1)] {
        let d = build_double(&h).unwrap();
        let fast = schrodinger_action(&d).unwrap();
        let direct = schrodinger_action_direct(&d).unwrap();
        let composed = schrodinger_action_via_coaction(&d).unwrap();
        for chi in 0..d.inner.dim {
            assert_eq!(
                fast.action[chi], direct.action[chi],
                "rewritten vs direct action at chi={chi} over {}",
                h.label
            );
            assert_eq!(
                fast.action[chi], composed.action[chi],
                "rewritten vs coaction-route action at chi={chi} over {}",
                h.label
            );
        }
    }
}

#[test]
fn schrodinger_restricts_to_adjoint_in_hopf_case() {
    for h in [z2_group(), sweedler_h4()] {
        let d = build_double(&h).unwrap();
        let act = schrodinger_action(&d).unwrap();
        for j in 0..h.dim {
            let m = act.apply_elem(&d.embed(&h.basis_elem(j))).unwrap();
            for l in 0..h.dim {
                let got: Vec<Scalar> = (0..h.dim).map(|r| m.get(r, l).clone()).collect();
                let adj = {
                    let t = h.coproduct_elem(&h.basis_elem(j));
                    let sp = SparseTensor::from_dense(&t);
                    let mut out = h.zero_elem();
                    for (&key, coeff) in &sp.entries {
                        let idx = sp.unflatten(key);
                        let v = h.mul_many(&[
                            &h.basis_elem(idx[0]),
                            &h.basis_elem(l),
                            &h.antipode_elem(&h.basis_elem(idx[1])),
                        ]);
                        out = h.add_elems(&out, &h.scale_elem(&v, coeff));
                    }
                    out
                };
                assert!(h.elems_equal(&got, &adj), "h={j}, m={l} over {}", h.label);
            }
        }
    }
}

#[test]
fn schrodinger_unit_acts_as_identity_on_unit_input() {
    for h in [z2_group(), dual_omega(2, 1)] {
        let d = build_double(&h).unwrap();
        let act = schrodinger_action(&d).unwrap();
        let m = act.apply_elem(&d.inner.unit).unwrap();
        assert_eq!(m, Matrix::identity(h.dim));
    }
}

#[test]
fn module_algebra_laws_hold() {
    for h in [z2_group(), dual_omega(2, 1), sweedler_h4()] {
        let d = build_double(&h).unwrap();
        let act = schrodinger_action(&d).unwrap();
        let report = module_algebra_report(&d, &act).unwrap();
        assert!(
            report.is_valid(),
            "module-algebra law fails over {}: {:?}",
            h.label,
            report.failures().collect::<Vec<_>>()
        );
    }
}

#[test]
fn left_coaction_two_forms_agree() {
    for h in [z2_group(), sweedler_h4(), dual_omega(2, 1)] {
        let pack = compute_pack(&h).unwrap();
        let a = yd_left_coaction(&h, &pack);
        let b = yd_left_coaction_alt(&h, &pack);
        assert!(a.equals(&b), "left coaction closed forms differ over {}", h.label);
    }
}

#[test]
fn quantum_dimension_values() {
    // regular module of the base, pulled back through the embedding, is not
    // needed; the three-way qdim agreement carries the values
    let cases: Vec<(AlgebraPresentation, i64)> = vec![
        (z2_group(), 2),
        (group_algebra(&GroupTable::cyclic(3)).unwrap(), 3),
        (sweedler_h4(), 0),
        (dual_omega(2, 1), 2),
    ];
    for (h, expect) in cases {
        let d = build_double(&h).unwrap();
        let triple = qdim_triple(&d).unwrap();
        assert!(triple.equal, "triple disagrees for {}", h.label);
        assert_eq!(
            triple.closed_form,
            Scalar::from_int(expect),
            "value for {}",
            h.label
        );
    }
}

#[test]
fn sweedler_closed_form_is_trace_of_s_squared() {
    // for a Hopf algebra (alpha = beta = 1) the closed form is Tr(S^{-2}) =
    // Tr(S^2); on the listed basis S^2 = diag(1, 1, -1, -1)
    let h = sweedler_h4();
    let s2 = h.antipode.mul(&h.antipode).unwrap();
    assert_eq!(s2.trace().unwrap(), Scalar::zero());
    assert_eq!(qdim_closed_form(&h).unwrap(), Scalar::zero());
}

#[test]
fn braiding_respects_quantum_dimension_paths() {
    // quantum_dimension itself asserts the two paths agree; exercise it on
    // the regular module of a twisted double
    let h = dual_omega(2, 1);
    let d = build_double(&h).unwrap();
    let pack = compute_pack(&d.inner).unwrap();
    let v = ModuleAction::regular(&d.inner).unwrap();
    let dim = quantum_dimension(&d.inner, &pack, &d.r_matrix, &v).unwrap();
    assert_eq!(dim, Scalar::from_int(2));
}
