//! End-to-end checks of the quantum double construction against independent
//! formulations: the classical double product in the Hopf case, the reduced
//! R-matrix, counit sanity and the five-leg element's evaluation orders.

use quasihopf::*;

fn z2_group() -> AlgebraPresentation {
    group_algebra(&GroupTable::cyclic(2)).unwrap()
}

fn dual_omega_z2() -> AlgebraPresentation {
    dual_group_algebra_twisted(&GroupTable::cyclic(2), &cocycle_cyclic(2, 1)).unwrap()
}

/// Independent evaluation of the classical double product for honest Hopf
/// algebras: (phi bowtie h)(psi bowtie h') = phi (h_1 -> psi <- S^{-1}(h_3))
/// bowtie h_2 h'.
fn classical_double_product(
    h: &AlgebraPresentation,
    a: (&DualElement, &[Scalar]),
    b: (&DualElement, &[Scalar]),
) -> Vec<Scalar> {
    let n = h.dim;
    let (phi, ha) = a;
    let (psi, hb) = b;
    let mut out = vec![Scalar::zero(); n * n];
    let split = {
        let t = h.coproduct_iterated(ha, &[0, 0]);
        SparseTensor::from_dense(&t)
    };
    for (&key, coeff) in &split.entries {
        let idx = split.unflatten(key);
        let h1 = h.basis_elem(idx[0]);
        let h2 = h.basis_elem(idx[1]);
        let h3 = h.basis_elem(idx[2]);
        let psi_t = h.harpoon_right(&h.harpoon_left(&h1, psi), &h.antipode_inv_elem(&h3));
        let dual = h.convolve(phi, &psi_t);
        let alg = h.mul_elems(&h2, hb);
        for (m, dm) in dual.coords.iter().enumerate() {
            if dm.is_zero() {
                continue;
            }
            for (s, asv) in alg.iter().enumerate() {
                if !asv.is_zero() {
                    let i = pair_index(n, m, s);
                    out[i] = out[i]
                        .checked_add(&coeff.checked_mul(dm).unwrap().checked_mul(asv).unwrap())
                        .unwrap();
                }
            }
        }
    }
    out
}

#[test]
fn double_of_z2_matches_classical_product() {
    let h = z2_group();
    let d = build_double(&h).unwrap();
    assert_eq!(d.inner.dim, 4);
    assert!(d.inner.validate().is_valid());
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let a = (&h.dual_basis_elem(i), h.basis_elem(j));
                    let b = (&h.dual_basis_elem(k), h.basis_elem(l));
                    let fast = d.inner.mul_elems(
                        &d.make_element(a.0, &a.1),
                        &d.make_element(b.0, &b.1),
                    );
                    let classical = classical_double_product(&h, (a.0, &a.1), (b.0, &b.1));
                    let direct = double_multiply(&h, &d.omega, (a.0, &a.1), (b.0, &b.1)).unwrap();
                    assert_eq!(fast, classical, "structure constants vs classical");
                    assert_eq!(fast, direct, "structure constants vs five-leg formula");
                }
            }
        }
    }
}

#[test]
fn double_of_sweedler_matches_classical_product() {
    let h = sweedler_h4();
    let d = build_double(&h).unwrap();
    assert_eq!(d.inner.dim, 16);
    for i in 0..4 {
        for l in 0..4 {
            let a = (&h.dual_basis_elem(i), h.basis_elem(3 - i));
            let b = (&h.dual_basis_elem(l), h.basis_elem(l));
            let fast = d
                .inner
                .mul_elems(&d.make_element(a.0, &a.1), &d.make_element(b.0, &b.1));
            let classical = classical_double_product(&h, (a.0, &a.1), (b.0, &b.1));
            assert_eq!(fast, classical);
        }
    }
}

#[test]
fn twisted_double_agrees_with_direct_formula() {
    let h = dual_omega_z2();
    let d = build_double(&h).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let a = (&h.dual_basis_elem(i), h.basis_elem(j));
                    let b = (&h.dual_basis_elem(k), h.basis_elem(l));
                    let fast = d.inner.mul_elems(
                        &d.make_element(a.0, &a.1),
                        &d.make_element(b.0, &b.1),
                    );
                    let direct = double_multiply(&h, &d.omega, (a.0, &a.1), (b.0, &b.1)).unwrap();
                    assert_eq!(fast, direct);
                }
            }
        }
    }
}

#[test]
fn unit_and_embedding_laws() {
    for h in [z2_group(), sweedler_h4(), dual_omega_z2()] {
        let d = build_double(&h).unwrap();
        let unit = &d.inner.unit;
        // (eps bowtie 1)(phi bowtie h) = phi bowtie h both ways
        for idx in 0..d.inner.dim {
            let e = d.inner.basis_elem(idx);
            assert!(d.inner.elems_equal(&d.inner.mul_elems(unit, &e), &e));
            assert!(d.inner.elems_equal(&d.inner.mul_elems(&e, unit), &e));
        }
        // i_D is multiplicative and eps_D(eps bowtie 1) = 1
        for a in 0..h.dim {
            for b in 0..h.dim {
                let lhs = d.inner.mul_elems(
                    &d.embed(&h.basis_elem(a)),
                    &d.embed(&h.basis_elem(b)),
                );
                let rhs = d.embed(&h.mul_elems(&h.basis_elem(a), &h.basis_elem(b)));
                assert!(d.inner.elems_equal(&lhs, &rhs));
            }
        }
        assert_eq!(d.inner.counit_elem(unit), Scalar::one());
    }
}

#[test]
fn hopf_case_r_matrix_has_reduced_form() {
    let h = z2_group();
    let d = build_double(&h).unwrap();
    // R = sum_i (eps bowtie e_i) (x) (e^i bowtie 1)
    let n = h.dim;
    let mut expected = TensorElement::zero(n * n, 2);
    for i in 0..n {
        let first = d.embed(&h.basis_elem(i));
        let second = d.make_element(&h.dual_basis_elem(i), &h.unit);
        for (x, fx) in first.iter().enumerate() {
            if fx.is_zero() {
                continue;
            }
            for (y, sy) in second.iter().enumerate() {
                if !sy.is_zero() {
                    let cur = expected
                        .get(&[x, y])
                        .checked_add(&fx.checked_mul(sy).unwrap())
                        .unwrap();
                    expected.set(&[x, y], cur);
                }
            }
        }
    }
    assert_eq!(d.r_matrix, expected);
}

#[test]
fn omega_is_trivial_for_hopf_and_consistent_when_twisted() {
    let h = z2_group();
    let pack = compute_pack(&h).unwrap();
    let omega = build_omega(&h, &pack).unwrap();
    let mut expected = TensorElement::zero(2, 5);
    expected.set(&[0, 0, 0, 0, 0], Scalar::one());
    assert_eq!(omega.0, expected);

    // twisted case: compare the pipeline against a naive nested-loop
    // evaluation of the displayed five-leg formula
    let h = dual_omega_z2();
    let pack = compute_pack(&h).unwrap();
    let omega = build_omega(&h, &pack).unwrap();
    let naive = naive_omega(&h, &pack);
    assert_eq!(omega.0, naive);
}

/// Brute-force evaluation of the five-leg element, term by term.
fn naive_omega(h: &AlgebraPresentation, pack: &DerivedPack) -> TensorElement {
    let n = h.dim;
    let mut out = TensorElement::zero(n, 5);
    let phi = SparseTensor::from_dense(&h.phi);
    let phi_inv = SparseTensor::from_dense(&h.phi_inv);
    let f = SparseTensor::from_dense(&pack.f);
    for (&kx, cx) in &phi.entries {
        let x = phi.unflatten(kx);
        // Delta^2 of X^1 with the left-leaning bracketing
        let xsplit = SparseTensor::from_dense(
            &h.coproduct_iterated(&h.basis_elem(x[0]), &[0, 0]),
        );
        for (&ky, cy) in &phi_inv.entries {
            let y = phi_inv.unflatten(ky);
            for (&kz, cz) in &phi_inv.entries {
                let z = phi_inv.unflatten(kz);
                let zsplit = h.coproduct_elem(&h.basis_elem(z[1]));
                let zsplit = SparseTensor::from_dense(&zsplit);
                for (&kf, cf) in &f.entries {
                    let fi = f.unflatten(kf);
                    for (&ks, cs) in &xsplit.entries {
                        let s = xsplit.unflatten(ks);
                        for (&kt, ct) in &zsplit.entries {
                            let t = zsplit.unflatten(kt);
                            let coeff = cx
                                .checked_mul(cy)
                                .unwrap()
                                .checked_mul(cz)
                                .unwrap()
                                .checked_mul(cf)
                                .unwrap()
                                .checked_mul(cs)
                                .unwrap()
                                .checked_mul(ct)
                                .unwrap();
                            let leg1 = h.mul_many(&[
                                &h.basis_elem(s[0]),
                                &h.basis_elem(y[0]),
                                &h.basis_elem(z[0]),
                            ]);
                            let leg2 = h.mul_many(&[
                                &h.basis_elem(s[1]),
                                &h.basis_elem(y[1]),
                                &h.basis_elem(t[0]),
                            ]);
                            let leg3 = h.mul_many(&[
                                &h.basis_elem(s[2]),
                                &h.basis_elem(y[2]),
                                &h.basis_elem(t[1]),
                            ]);
                            let leg4 = h.antipode_inv_elem(&h.mul_many(&[
                                &h.basis_elem(fi[0]),
                                &h.basis_elem(x[1]),
                                &h.basis_elem(z[2]),
                            ]));
                            let leg5 = h.antipode_inv_elem(
                                &h.mul_elems(&h.basis_elem(fi[1]), &h.basis_elem(x[2])),
                            );
                            for (i1, v1) in leg1.iter().enumerate() {
                                if v1.is_zero() {
                                    continue;
                                }
                                for (i2, v2) in leg2.iter().enumerate() {
                                    if v2.is_zero() {
                                        continue;
                                    }
                                    for (i3, v3) in leg3.iter().enumerate() {
                                        if v3.is_zero() {
                                            continue;
                                        }
                                        for (i4, v4) in leg4.iter().enumerate() {
                                            if v4.is_zero() {
                                                continue;
                                            }
                                            for (i5, v5) in leg5.iter().enumerate() {
                                                if v5.is_zero() {
                                                    continue;
                                                }
                                                let c = coeff
                                                    .checked_mul(v1)
                                                    .unwrap()
                                                    .checked_mul(v2)
                                                    .unwrap()
                                                    .checked_mul(v3)
                                                    .unwrap()
                                                    .checked_mul(v4)
                                                    .unwrap()
                                                    .checked_mul(v5)
                                                    .unwrap();
                                                let cur = out
                                                    .get(&[i1, i2, i3, i4, i5])
                                                    .checked_add(&c)
                                                    .unwrap();
                                                out.set(&[i1, i2, i3, i4, i5], cur);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn double_r_matrix_fails_after_sign_flip() {
    let h = dual_omega_z2();
    let d = build_double(&h).unwrap();
    let mut r = d.r_matrix.clone();
    let nz = r
        .coords
        .iter()
        .position(|c| !c.is_zero())
        .expect("R has a nonzero coordinate");
    r.coords[nz] = r.coords[nz].neg();
    let report = verify_quasitriangular(&d.inner, &r).unwrap();
    assert!(!report.is_valid());
    let qt3 = report.find("intertwines-coproducts");
    let qt1 = report.find("quasi-coproduct-left");
    assert!(
        qt3.map(|c| !c.passed).unwrap_or(false) || qt1.map(|c| !c.passed).unwrap_or(false),
        "some coproduct axiom must fail with a witness"
    );
}
