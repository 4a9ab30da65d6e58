//! The quantum double D(H) = H* bowtie H as an explicit presentation of
//! dimension n^2, with its quasi-triangular structure.
//!
//! Basis order: e^i bowtie e_j sits at index i*n + j (dual index major).
//! This is normative for serialization.

use serde_json::{json, Value};

use crate::algebra::{
    compute_pack, presentation_to_json, AlgebraPresentation, DerivedPack, DualElement, Pipe,
    PresentationData, ValidationReport,
};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseTensor, TensorElement};
use crate::scalar::Scalar;

/// The five-leg gauge element entering the double multiplication.
#[derive(Debug, Clone)]
pub struct OmegaElement(pub TensorElement);

/// D(H) with its source presentation, cached gauge data and R-matrix.
#[derive(Debug, Clone)]
pub struct DoublePresentation {
    pub inner: AlgebraPresentation,
    pub source: AlgebraPresentation,
    pub source_pack: DerivedPack,
    pub omega: OmegaElement,
    pub r_matrix: TensorElement,
}

pub fn pair_index(n: usize, dual: usize, alg: usize) -> usize {
    dual * n + alg
}

pub fn split_index(n: usize, idx: usize) -> (usize, usize) {
    (idx / n, idx % n)
}

/// Assemble the five-leg element and cross-check the counit contraction of
/// its middle leg against the reduced closed form.
pub fn build_omega(h: &AlgebraPresentation, pack: &DerivedPack) -> Result<OmegaElement> {
    h.ensure_valid()?;
    let omega = crate::algebra::omega_pipe(h, pack);

    // contracting the middle leg with the counit must reproduce
    // X^1_1 x^1 (x) X^1_2 x^2 (x) S^{-1}(f^1 X^2 x^3) (x) S^{-1}(f^2 X^3)
    let contracted = h.counit_slot(&omega, 2);
    let reduced = Pipe::start()
        .outer(&h.phi_sparse(), &["X1", "X2", "X3"])
        .coproduct(h, "X1", ("X1a", "X1b"))
        .outer(&h.phi_inv_sparse(), &["x1", "x2", "x3"])
        .mul(h, "X1a", "x1", "O1")
        .mul(h, "X1b", "x2", "O2")
        .outer_dense(&pack.f, &["ff1", "ff2"])
        .mul_chain(h, &["ff1", "X2", "x3"], "O4")
        .antipode_inv(h, "O4")
        .mul(h, "ff2", "X3", "O5")
        .antipode_inv(h, "O5")
        .finish(&["O1", "O2", "O4", "O5"]);
    if !contracted.equals(&reduced) {
        return Err(Error::DoubleValidationFailure(
            "omega counit contraction disagrees with its reduced form".into(),
        ));
    }
    Ok(OmegaElement(omega.to_dense()))
}

/// Direct evaluation of the double product of phi bowtie h and psi bowtie h',
/// straight from the five-leg formula. Quadratic and slow; the structure
/// constants built by [`build_double`] are the fast path, and agreement of
/// the two is a test target.
pub fn double_multiply(
    h: &AlgebraPresentation,
    omega: &OmegaElement,
    a: (&DualElement, &[Scalar]),
    b: (&DualElement, &[Scalar]),
) -> Result<Vec<Scalar>> {
    let n = h.dim;
    let (phi, ha) = a;
    let (psi, hb) = b;
    for len in [phi.coords.len(), ha.len(), psi.coords.len(), hb.len()] {
        if len != n {
            return Err(Error::ShapeMismatch(
                "double factors must match the base dimension".into(),
            ));
        }
    }
    if omega.0.dim != n || omega.0.arity != 5 {
        return Err(Error::ShapeMismatch(
            "five-leg element has the wrong shape".into(),
        ));
    }
    let mut out = vec![Scalar::zero(); n * n];
    let om = SparseTensor::from_dense(&omega.0);
    // h_(1,1) (x) h_(1,2) (x) h_2
    let hsplit = {
        let t = h.coproduct_sparse(ha);
        h.coproduct_slot(&t, 0)
    };
    for (&okey, ocoeff) in &om.entries {
        let oi = om.unflatten(okey);
        let e = |i: usize| h.basis_elem(i);
        let phi_t = h.harpoon_right(&h.harpoon_left(&e(oi[0]), phi), &e(oi[4]));
        for (&hkey, hcoeff) in &hsplit.entries {
            let hi = hsplit.unflatten(hkey);
            let scale = ocoeff.checked_mul(hcoeff).expect("field");
            let left = h.mul_elems(&e(oi[1]), &e(hi[0]));
            let right = h.mul_elems(&h.antipode_inv_elem(&e(hi[2])), &e(oi[3]));
            let psi_t = h.harpoon_right(&h.harpoon_left(&left, psi), &right);
            let dual_part = h.convolve(&phi_t, &psi_t);
            let alg_part = h.mul_many(&[&e(oi[2]), &e(hi[1]), hb]);
            for (m, dm) in dual_part.coords.iter().enumerate() {
                if dm.is_zero() {
                    continue;
                }
                let w = scale.checked_mul(dm).expect("field");
                for (s, as_) in alg_part.iter().enumerate() {
                    if !as_.is_zero() {
                        let idx = pair_index(n, m, s);
                        out[idx] = out[idx]
                            .checked_add(&w.checked_mul(as_).expect("field"))
                            .expect("field");
                    }
                }
            }
        }
    }
    Ok(out)
}

fn rows_from_mult(t: &TensorElement) -> Vec<Vec<(usize, Scalar)>> {
    let n = t.dim;
    let mut rows = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = t.get(&[i, j, k]);
                if !c.is_zero() {
                    rows[i * n + j].push((k, c.clone()));
                }
            }
        }
    }
    rows
}

/// Multiplication structure constants of the double, as a tensor over n^2:
/// the product of e^i bowtie e_j and e^k bowtie e_l expands over
/// e^m bowtie e_s.
fn assemble_double_mult(h: &AlgebraPresentation, omega: &SparseTensor) -> TensorElement {
    let n = h.dim;
    Pipe::start()
        .outer(omega, &["O1", "O2", "O3", "O4", "O5"])
        .outer_identity(n, "m_in", "M")
        .coproduct(h, "M", ("M1", "M2"))
        .mul_chain(h, &["O5", "M1", "O1"], "i_out")
        .outer_identity(n, "j_in", "J")
        .coproduct(h, "J", ("J1", "J2"))
        .coproduct(h, "J1", ("J11", "J12"))
        .antipode_inv(h, "J2")
        .mul_chain(h, &["J2", "O4", "M2", "O2", "J11"], "k_out")
        .outer_identity(n, "l_in", "L")
        .mul_chain(h, &["O3", "J12", "L"], "s_out")
        .fuse("i_out", "j_in", "left")
        .fuse("k_out", "l_in", "right")
        .fuse("m_in", "s_out", "out")
        .finish(&["left", "right", "out"])
        .to_dense()
}

/// Comultiplication structure constants of the double.
fn assemble_double_comult(
    h: &AlgebraPresentation,
    pack: &DerivedPack,
    mult_rows: &[Vec<(usize, Scalar)>],
) -> TensorElement {
    let n = h.dim;
    let n2 = n * n;
    let phi = h.phi_sparse();
    let phi_inv = h.phi_inv_sparse();
    let p_r = SparseTensor::from_dense(&pack.p_r);
    // dual coproduct of the input functional: [i_in, u, v] with
    // coefficient <e^i, e_u e_v>
    let dual_comult = SparseTensor::from_dense(&h.mult).permute(&[2, 0, 1]);

    // second tensor leg: X^2_1 -> phi_1 <- S^{-1}(X^3) bowtie X^2_2 Y^3 x^3 h_2
    let second = Pipe::start()
        .outer(&phi, &["X1", "X2", "X3"])
        .coproduct(h, "X2", ("X2a", "X2b"))
        .antipode_inv(h, "X3")
        .outer_identity(h.dim, "k2", "K2")
        .mul_chain(h, &["X3", "K2", "X2a"], "E2")
        .finish(&["X1", "X2b", "E2", "k2"]);

    Pipe::start()
        .outer(&phi, &["Y1", "Y2", "Y3"])
        .outer(&p_r, &["p1", "p2"])
        .coproduct(h, "p1", ("p1a", "p1b"))
        .antipode_inv(h, "p2")
        .mul(h, "Y2", "p2", "R1")
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .mul(h, "p1a", "x1", "L1")
        .mul(h, "p1b", "x2", "A1a")
        .outer_identity(n, "k1", "K1")
        .mul_chain(h, &["R1", "K1", "L1"], "E1")
        .outer(&second, &["X1", "X2b", "E2", "k2"])
        .outer(&dual_comult, &["i_in", "u", "v"])
        .contract_pair("v", "E1")
        .contract_pair("u", "E2")
        .outer_identity(n, "j_in", "J")
        .coproduct(h, "J", ("J1", "J2"))
        .mul(h, "A1a", "J1", "A1")
        .mul_chain(h, &["X2b", "Y3", "x3", "J2"], "A2")
        .mul(h, "X1", "Y1", "G")
        .outer_coords(&h.counit, "eps_k")
        .fuse("eps_k", "G", "d_first")
        .fuse("k1", "A1", "d_second")
        .mul_raw(n2, mult_rows, "d_first", "d_second", "leg1")
        .fuse("k2", "A2", "leg2")
        .fuse("i_in", "j_in", "in")
        .finish(&["in", "leg1", "leg2"])
        .to_dense()
}

/// Antipode of the double as an n^2 x n^2 matrix.
fn assemble_double_antipode(
    h: &AlgebraPresentation,
    pack: &DerivedPack,
    mult_rows: &[Vec<(usize, Scalar)>],
) -> Matrix {
    let n = h.dim;
    let n2 = n * n;
    let f = SparseTensor::from_dense(&pack.f);
    let p_r = SparseTensor::from_dense(&pack.p_r);
    let big_u = SparseTensor::from_dense(&pack.big_u);
    let out = Pipe::start()
        .outer(&f, &["ff1", "ff2"])
        .outer(&p_r, &["p1", "p2"])
        .coproduct(h, "p1", ("p1a", "p1b"))
        .antipode_inv(h, "p2")
        .mul(h, "ff2", "p2", "R")
        .outer(&big_u, &["u1", "u2"])
        .mul(h, "p1a", "u1", "L")
        .outer_identity(n, "k_out", "K")
        .mul_chain(h, &["R", "K", "L"], "E")
        .antipode_inv(h, "E")
        .mul(h, "p1b", "u2", "A")
        .outer_identity(n, "j_in", "J")
        .antipode(h, "J")
        .mul(h, "J", "ff1", "GA")
        .outer_coords(&h.counit, "eps_k")
        .fuse("eps_k", "GA", "d_first")
        .fuse("k_out", "A", "d_second")
        .mul_raw(n2, mult_rows, "d_first", "d_second", "out")
        .fuse("E", "j_in", "in")
        .finish(&["out", "in"]);
    let mut m = Matrix::zero(n2, n2);
    for (&key, v) in &out.entries {
        let idx = out.unflatten(key);
        m.set(idx[0], idx[1], v.clone());
    }
    m
}

/// R-matrix of the double: sum over i of
/// (eps bowtie S^{-1}(p^2) e_i p^1_1) (x) (e^i bowtie p^1_2).
fn assemble_r_matrix(h: &AlgebraPresentation, pack: &DerivedPack) -> TensorElement {
    let p_r = SparseTensor::from_dense(&pack.p_r);
    Pipe::start()
        .outer(&p_r, &["p1", "p2"])
        .coproduct(h, "p1", ("p1a", "p1b"))
        .antipode_inv(h, "p2")
        .outer_identity(h.dim, "i_out", "I")
        .mul_chain(h, &["p2", "I", "p1a"], "M1")
        .outer_coords(&h.counit, "eps_k")
        .fuse("eps_k", "M1", "r1")
        .fuse("i_out", "p1b", "r2")
        .finish(&["r1", "r2"])
        .to_dense()
}

/// Embed a three-leg tensor of H through i_D (x) i_D (x) i_D.
fn embed_triple(h: &AlgebraPresentation, t: &TensorElement) -> TensorElement {
    let sp = SparseTensor::from_dense(t);
    Pipe::start()
        .outer(&sp, &["a", "b", "c"])
        .outer_coords(&h.counit, "ka")
        .outer_coords(&h.counit, "kb")
        .outer_coords(&h.counit, "kc")
        .fuse("ka", "a", "da")
        .fuse("kb", "b", "db")
        .fuse("kc", "c", "dc")
        .finish(&["da", "db", "dc"])
        .to_dense()
}

/// Construct D(H) and validate the result. The source is normalized first
/// so that eps(alpha) = eps(beta) = 1.
pub fn build_double(h: &AlgebraPresentation) -> Result<DoublePresentation> {
    h.ensure_valid()?;
    let source = h.normalize_antipode_scalars()?;
    source.ensure_valid()?;
    let n = source.dim;
    let n2 = n * n;
    let pack = compute_pack(&source)?;
    let omega = build_omega(&source, &pack)?;
    let omega_sp = SparseTensor::from_dense(&omega.0);

    let mult = assemble_double_mult(&source, &omega_sp);
    let mult_rows = rows_from_mult(&mult);
    let comult = assemble_double_comult(&source, &pack, &mult_rows);
    let antipode = assemble_double_antipode(&source, &pack, &mult_rows);

    // eps bowtie 1 with coordinates eps(e_k) unit_m
    let mut unit = vec![Scalar::zero(); n2];
    for k in 0..n {
        for m in 0..n {
            let v = source.counit[k]
                .checked_mul(&source.unit[m])
                .expect("field");
            unit[pair_index(n, k, m)] = v;
        }
    }
    // eps_D(phi bowtie h) = eps(h) phi(S^{-1}(alpha))
    let s_inv_alpha = source.antipode_inv_elem(&source.alpha);
    let mut counit = vec![Scalar::zero(); n2];
    for i in 0..n {
        for j in 0..n {
            counit[pair_index(n, i, j)] = s_inv_alpha[i]
                .checked_mul(&source.counit[j])
                .expect("field");
        }
    }
    let phi_d = embed_triple(&source, &source.phi);
    let phi_d_inv = embed_triple(&source, &source.phi_inv);
    let mut alpha = vec![Scalar::zero(); n2];
    let mut beta = vec![Scalar::zero(); n2];
    for k in 0..n {
        for m in 0..n {
            alpha[pair_index(n, k, m)] = source.counit[k]
                .checked_mul(&source.alpha[m])
                .expect("field");
            beta[pair_index(n, k, m)] = source.counit[k]
                .checked_mul(&source.beta[m])
                .expect("field");
        }
    }
    let basis_labels = (0..n2)
        .map(|idx| {
            let (i, j) = split_index(n, idx);
            format!("{}*|{}", source.basis_labels[i], source.basis_labels[j])
        })
        .collect();

    let inner = AlgebraPresentation::from_data(PresentationData {
        dim: n2,
        basis_labels,
        field: source.field,
        mult,
        unit,
        comult,
        counit,
        phi: phi_d,
        phi_inv: Some(phi_d_inv),
        antipode,
        alpha,
        beta,
        label: format!("D({})", source.label),
    })?;

    let report = inner.validate();
    if !report.is_valid() {
        let failures: Vec<String> = report
            .failures()
            .map(|c| format!("{} (witness {:?})", c.name, c.witness))
            .collect();
        return Err(Error::DoubleValidationFailure(failures.join("; ")));
    }

    let r_matrix = assemble_r_matrix(&source, &pack);
    let qt = verify_quasitriangular(&inner, &r_matrix)?;
    if !qt.is_valid() {
        let failures: Vec<String> = qt
            .failures()
            .map(|c| format!("{} (witness {:?})", c.name, c.witness))
            .collect();
        return Err(Error::DoubleValidationFailure(failures.join("; ")));
    }

    let double = DoublePresentation {
        inner,
        source,
        source_pack: pack,
        omega,
        r_matrix,
    };

    // the canonical embedding must be an injective algebra map carrying
    // the reassociator to the double's reassociator (true by construction)
    let mut embed_matrix = Matrix::zero(n2, n);
    for j in 0..n {
        let col = double.embed(&double.source.basis_elem(j));
        for r in 0..n2 {
            embed_matrix.set(r, j, col[r].clone());
        }
    }
    if !embed_matrix.kernel().is_empty() {
        return Err(Error::DoubleValidationFailure(
            "canonical embedding is not injective".into(),
        ));
    }
    for a in 0..n {
        for b in 0..n {
            let lhs = double.inner.mul_elems(
                &double.embed(&double.source.basis_elem(a)),
                &double.embed(&double.source.basis_elem(b)),
            );
            let rhs = double.embed(
                &double
                    .source
                    .mul_elems(&double.source.basis_elem(a), &double.source.basis_elem(b)),
            );
            if !double.inner.elems_equal(&lhs, &rhs) {
                return Err(Error::DoubleValidationFailure(format!(
                    "embedding fails to preserve the product at basis pair ({a}, {b})"
                )));
            }
        }
    }

    Ok(double)
}

impl DoublePresentation {
    /// i_D(h) = eps bowtie h.
    pub fn embed(&self, h_elem: &[Scalar]) -> Vec<Scalar> {
        let n = self.source.dim;
        let mut out = vec![Scalar::zero(); n * n];
        for k in 0..n {
            if self.source.counit[k].is_zero() {
                continue;
            }
            for m in 0..n {
                if !h_elem[m].is_zero() {
                    out[pair_index(n, k, m)] = self.source.counit[k]
                        .checked_mul(&h_elem[m])
                        .expect("field");
                }
            }
        }
        out
    }

    /// phi bowtie h as a coordinate vector over the double.
    pub fn make_element(&self, phi: &DualElement, h_elem: &[Scalar]) -> Vec<Scalar> {
        let n = self.source.dim;
        let mut out = vec![Scalar::zero(); n * n];
        for i in 0..n {
            if phi.coords[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !h_elem[j].is_zero() {
                    out[pair_index(n, i, j)] =
                        phi.coords[i].checked_mul(&h_elem[j]).expect("field");
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "double": presentation_to_json(&self.inner),
            "r_matrix": self.r_matrix.coords.iter()
                .map(crate::algebra::scalar_to_json).collect::<Vec<_>>(),
            "source": presentation_to_json(&self.source),
        })
    }
}

/// Check the quasi-triangularity axioms of an R-matrix, plus invertibility.
pub fn verify_quasitriangular(
    p: &AlgebraPresentation,
    r: &TensorElement,
) -> Result<ValidationReport> {
    if r.dim != p.dim || r.arity != 2 {
        return Err(Error::ShapeMismatch(
            "R-matrix must be a two-leg tensor over the presentation".into(),
        ));
    }
    let mut report = ValidationReport { checks: Vec::new() };
    let mut row = |name: &str, lhs: &SparseTensor, rhs: &SparseTensor| {
        let witness = lhs
            .first_difference(rhs)
            .map(|w| format!("coordinate {w:?}"));
        report.checks.push(crate::algebra::AxiomCheck {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        });
    };

    let r_sp = SparseTensor::from_dense(r);
    let phi = p.phi_sparse();
    let phi_inv = p.phi_inv_sparse();
    let unit1 = p.elem_sparse(&p.unit);
    let r13 = r_sp.outer(&unit1).permute(&[0, 2, 1]);
    let r23 = unit1.outer(&r_sp);
    let r12 = r_sp.outer(&unit1);

    // (Delta (x) id)(R) = Phi_312 R_13 Phi^{-1}_132 R_23 Phi
    let lhs = p.coproduct_slot(&r_sp, 0);
    let rhs = p.mul_tensor_chain(&[
        &phi.permute(&[1, 2, 0]),
        &r13,
        &phi_inv.permute(&[0, 2, 1]),
        &r23,
        &phi,
    ]);
    row("quasi-coproduct-left", &lhs, &rhs);

    // (id (x) Delta)(R) = Phi^{-1}_231 R_13 Phi_213 R_12 Phi^{-1}
    let lhs = p.coproduct_slot(&r_sp, 1);
    let rhs = p.mul_tensor_chain(&[
        &phi_inv.permute(&[2, 0, 1]),
        &r13,
        &phi.permute(&[1, 0, 2]),
        &r12,
        &phi_inv,
    ]);
    row("quasi-coproduct-right", &lhs, &rhs);

    // Delta^op(h) R = R Delta(h), for all basis h
    {
        let mut lhs_all = SparseTensor::uniform(p.dim, 3);
        let mut rhs_all = SparseTensor::uniform(p.dim, 3);
        for i in 0..p.dim {
            let d = p.coproduct_sparse(&p.basis_elem(i));
            let tag = p.elem_sparse(&p.basis_elem(i));
            lhs_all = lhs_all.add(&tag.outer(&p.mul_tensors(&d.permute(&[1, 0]), &r_sp)));
            rhs_all = rhs_all.add(&tag.outer(&p.mul_tensors(&r_sp, &d)));
        }
        row("intertwines-coproducts", &lhs_all, &rhs_all);
    }

    // counit normalization
    {
        let left = p.counit_slot(&r_sp, 0);
        let right = p.counit_slot(&r_sp, 1);
        row("counit-normalization-left", &left, &unit1);
        row("counit-normalization-right", &right, &unit1);
    }

    // invertibility, by solving for R^{-1} and checking both sides
    {
        let n = p.dim;
        let n2 = n * n;
        let mut lm = Matrix::zero(n2, n2);
        for (&key, coeff) in &r_sp.entries {
            let idx = r_sp.unflatten(key);
            for c0 in 0..n {
                for &(r0, ref m0) in &p.mult_rows[idx[0] * n + c0] {
                    let cm0 = coeff.checked_mul(m0)?;
                    for c1 in 0..n {
                        for &(r1, ref m1) in &p.mult_rows[idx[1] * n + c1] {
                            let v = cm0.checked_mul(m1)?;
                            let row_i = r0 * n + r1;
                            let col_i = c0 * n + c1;
                            let cur = lm.get(row_i, col_i).checked_add(&v)?;
                            lm.set(row_i, col_i, cur);
                        }
                    }
                }
            }
        }
        let unit2 = p.unit_tensor(2);
        let rhs_vec = unit2.to_dense().coords;
        let inv = lm.solve_linear(&rhs_vec)?;
        let passed = match inv {
            Some(x) => {
                let x_sp = SparseTensor::from_dense(&TensorElement::from_coords(n, 2, x));
                p.mul_tensors(&x_sp, &r_sp).equals(&unit2)
                    && p.mul_tensors(&r_sp, &x_sp).equals(&unit2)
            }
            None => false,
        };
        report.checks.push(crate::algebra::AxiomCheck {
            name: "r-invertible".to_string(),
            passed,
            witness: (!passed).then(|| "no two-sided inverse".to_string()),
        });
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn pair_index_layout() {
        assert_eq!(pair_index(4, 2, 3), 11);
        assert_eq!(split_index(4, 11), (2, 3));
    }

    #[test]
    fn trivial_r_matrix_on_group_algebra() {
        // cocommutative kG with R = 1 (x) 1 is quasi-triangular
        let g = gallery::group_algebra(&gallery::GroupTable::cyclic(3)).unwrap();
        let r = g
            .elem_sparse(&g.unit)
            .outer(&g.elem_sparse(&g.unit))
            .to_dense();
        let report = verify_quasitriangular(&g, &r).unwrap();
        assert!(
            report.is_valid(),
            "{:?}",
            report.failures().collect::<Vec<_>>()
        );
    }

    #[test]
    fn flipped_sign_breaks_intertwining() {
        let g = gallery::group_algebra(&gallery::GroupTable::cyclic(2)).unwrap();
        let mut r = g
            .elem_sparse(&g.unit)
            .outer(&g.elem_sparse(&g.unit))
            .to_dense();
        r.set(&[0, 0], Scalar::from_int(-1));
        let report = verify_quasitriangular(&g, &r).unwrap();
        assert!(!report.is_valid());
    }
}
