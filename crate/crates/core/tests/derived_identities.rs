//! The identity suite across the whole gallery, plus opposite/co-opposite
//! constructions, gauge-element values in the Hopf case, and fault injection.

use quasihopf::*;

fn gallery_presentations() -> Vec<AlgebraPresentation> {
    vec![
        group_algebra(&GroupTable::cyclic(2)).unwrap(),
        group_algebra(&GroupTable::cyclic(3)).unwrap(),
        group_algebra(&GroupTable::cyclic(4)).unwrap(),
        group_algebra(&GroupTable::symmetric3()).unwrap(),
        sweedler_h4(),
        dual_group_algebra_twisted(&GroupTable::cyclic(2), &cocycle_cyclic(2, 1)).unwrap(),
        dual_group_algebra_twisted(&GroupTable::cyclic(3), &cocycle_cyclic(3, 1)).unwrap(),
    ]
}

#[test]
fn identity_suite_passes_on_every_gallery_presentation() {
    for h in gallery_presentations() {
        let report = h.validate();
        assert!(
            report.is_valid(),
            "axioms fail for {}: {:?}",
            h.label,
            report.failures().collect::<Vec<_>>()
        );
        let pack = compute_pack(&h).unwrap();
        let suite = identity_suite(&h, &pack);
        assert!(
            suite.is_valid(),
            "identity suite fails for {}: {:?}",
            h.label,
            suite.failures().collect::<Vec<_>>()
        );
    }
}

#[test]
fn hopf_case_gauge_elements_are_trivial() {
    let h = group_algebra(&GroupTable::cyclic(2)).unwrap();
    let pack = compute_pack(&h).unwrap();
    let unit2 = {
        let mut t = TensorElement::zero(2, 2);
        t.set(&[0, 0], Scalar::one());
        t
    };
    assert_eq!(pack.f, unit2);
    assert_eq!(pack.f_inv, unit2);
    assert_eq!(pack.gamma, unit2);
    assert_eq!(pack.delta, unit2);
    assert_eq!(pack.p_r, unit2);
    assert_eq!(pack.q_r, unit2);
    assert_eq!(pack.p_l, unit2);
    assert_eq!(pack.q_l, unit2);
    assert_eq!(pack.big_u, unit2);
    assert_eq!(pack.big_v, unit2);
}

#[test]
fn twist_conjugation_on_twisted_dual() {
    // f Delta(S(h)) f^{-1} = (S (x) S)(Delta^op(h)), checked through the
    // public iterated-coproduct surface
    let h = dual_group_algebra_twisted(&GroupTable::cyclic(2), &cocycle_cyclic(2, 1)).unwrap();
    let pack = compute_pack(&h).unwrap();
    for i in 0..h.dim {
        let lhs = {
            let mid = h.coproduct_elem(&h.antipode_elem(&h.basis_elem(i)));
            let f = SparseTensor::from_dense(&pack.f);
            let m = SparseTensor::from_dense(&mid);
            let fi = SparseTensor::from_dense(&pack.f_inv);
            // multiply leg by leg through the pipe
            let mut acc = SparseTensor::uniform(h.dim, 2);
            for (&ka, ca) in &f.entries {
                let a = f.unflatten(ka);
                for (&kb, cb) in &m.entries {
                    let b = m.unflatten(kb);
                    for (&kc, cc) in &fi.entries {
                        let c = fi.unflatten(kc);
                        let leg1 = h.mul_many(&[
                            &h.basis_elem(a[0]),
                            &h.basis_elem(b[0]),
                            &h.basis_elem(c[0]),
                        ]);
                        let leg2 = h.mul_many(&[
                            &h.basis_elem(a[1]),
                            &h.basis_elem(b[1]),
                            &h.basis_elem(c[1]),
                        ]);
                        let coeff = ca.checked_mul(cb).unwrap().checked_mul(cc).unwrap();
                        for (x, vx) in leg1.iter().enumerate() {
                            if vx.is_zero() {
                                continue;
                            }
                            for (y, vy) in leg2.iter().enumerate() {
                                if !vy.is_zero() {
                                    acc.add_at(
                                        &[x, y],
                                        coeff
                                            .checked_mul(vx)
                                            .unwrap()
                                            .checked_mul(vy)
                                            .unwrap(),
                                    );
                                }
                            }
                        }
                    }
                }
            }
            acc
        };
        let rhs = {
            let d = h.coproduct_elem(&h.basis_elem(i));
            let mut acc = SparseTensor::uniform(h.dim, 2);
            let sp = SparseTensor::from_dense(&d);
            for (&k, c) in &sp.entries {
                let idx = sp.unflatten(k);
                // swap legs, apply S to both
                let l1 = h.antipode_elem(&h.basis_elem(idx[1]));
                let l2 = h.antipode_elem(&h.basis_elem(idx[0]));
                for (x, vx) in l1.iter().enumerate() {
                    if vx.is_zero() {
                        continue;
                    }
                    for (y, vy) in l2.iter().enumerate() {
                        if !vy.is_zero() {
                            acc.add_at(
                                &[x, y],
                                c.checked_mul(vx).unwrap().checked_mul(vy).unwrap(),
                            );
                        }
                    }
                }
            }
            acc
        };
        assert!(lhs.equals(&rhs), "conjugation fails at basis {i}");
    }
}

#[test]
fn gamma_two_formulas_cross_check() {
    // compute_twist derives gamma from the four-leg contraction; the suite
    // re-derives it from the alternate three-leg form. Spot-check the row.
    for h in gallery_presentations() {
        let pack = compute_pack(&h).unwrap();
        let suite = identity_suite(&h, &pack);
        let row = suite.find("gamma-alternate-form").unwrap();
        assert!(row.passed, "{}", h.label);
        let row = suite.find("delta-alternate-form").unwrap();
        assert!(row.passed, "{}", h.label);
    }
}

#[test]
fn opposite_and_coopposite_validate() {
    for h in gallery_presentations() {
        let hop = op_cop(&h, OppositeKind::Op).unwrap();
        assert!(
            hop.validate().is_valid(),
            "opposite of {} fails validation",
            h.label
        );
        let hcop = op_cop(&h, OppositeKind::Cop).unwrap();
        assert!(
            hcop.validate().is_valid(),
            "co-opposite of {} fails validation",
            h.label
        );
        // double opposite returns the original data
        let hopop = hop.opposite().unwrap();
        assert_eq!(hopop.mult, h.mult);
        assert_eq!(hopop.phi, h.phi);
        assert!(h.elems_equal(&hopop.alpha, &h.alpha));
        assert!(h.elems_equal(&hopop.beta, &h.beta));
        assert_eq!(hopop.antipode, h.antipode);
    }
}

#[test]
fn opposite_of_abelian_group_algebra_is_itself() {
    let h = group_algebra(&GroupTable::cyclic(4)).unwrap();
    let hop = h.opposite().unwrap();
    assert_eq!(hop.mult, h.mult);
    assert_eq!(hop.comult, h.comult);
    assert_eq!(hop.phi, h.phi);
    assert_eq!(hop.antipode, h.antipode);
    assert!(h.elems_equal(&hop.alpha, &h.alpha));
}

#[test]
fn corrupted_alpha_breaks_antipode_rows() {
    let good = sweedler_h4();
    let mut alpha = good.alpha.clone();
    alpha[1] = Scalar::one(); // alpha = 1 + g instead of 1
    let bad = AlgebraPresentation::from_data(PresentationData {
        dim: good.dim,
        basis_labels: good.basis_labels.clone(),
        field: good.field,
        mult: good.mult.clone(),
        unit: good.unit.clone(),
        comult: good.comult.clone(),
        counit: good.counit.clone(),
        phi: good.phi.clone(),
        phi_inv: Some(good.phi_inv.clone()),
        antipode: good.antipode.clone(),
        alpha,
        beta: good.beta.clone(),
        label: "corrupted-alpha".into(),
    })
    .unwrap();
    let report = bad.validate();
    assert!(!report.is_valid());
    let row = report.find("antipode-left").unwrap();
    assert!(!row.passed);
    assert!(row.witness.is_some(), "failure must carry a witness");
}

#[test]
fn sbar_inverse_composes_to_identity() {
    let h = sweedler_h4();
    for i in 0..h.dim {
        let phi = h.dual_basis_elem(i);
        let round = h.sbar_inv(&h.sbar(&phi));
        assert_eq!(round.coords, phi.coords);
    }
}

#[test]
fn harpoons_satisfy_pairing_laws() {
    // <h -> phi, h'> = phi(h' h) and <phi <- h, h'> = phi(h h') on a
    // noncommutative example
    let h = group_algebra(&GroupTable::symmetric3()).unwrap();
    for g in 0..h.dim {
        for a in 0..h.dim {
            for b in 0..h.dim {
                let phi = h.dual_basis_elem(g);
                let left = h.harpoon_left(&h.basis_elem(a), &phi);
                let expect = h.pair(&phi, &h.mul_elems(&h.basis_elem(b), &h.basis_elem(a)));
                assert_eq!(left.coords[b], expect);
                let right = h.harpoon_right(&phi, &h.basis_elem(a));
                let expect = h.pair(&phi, &h.mul_elems(&h.basis_elem(a), &h.basis_elem(b)));
                assert_eq!(right.coords[b], expect);
            }
        }
    }
}

#[test]
fn dual_comult_and_convolution_are_dual_to_each_other() {
    let h = sweedler_h4();
    // <Delta^(phi), h (x) h'> = phi(h h') and convolution is its transpose
    for g in 0..h.dim {
        let phi = h.dual_basis_elem(g);
        let dc = h.dual_comult(&phi);
        for a in 0..h.dim {
            for b in 0..h.dim {
                let expect = h.pair(&phi, &h.mul_elems(&h.basis_elem(a), &h.basis_elem(b)));
                assert_eq!(dc.get(&[a, b]), &expect);
            }
        }
    }
    // convolution pairs against the coproduct
    for a in 0..h.dim {
        for b in 0..h.dim {
            let conv = h.convolve(&h.dual_basis_elem(a), &h.dual_basis_elem(b));
            for m in 0..h.dim {
                let split = h.coproduct_elem(&h.basis_elem(m));
                assert_eq!(&conv.coords[m], split.get(&[a, b]));
            }
        }
    }
}
