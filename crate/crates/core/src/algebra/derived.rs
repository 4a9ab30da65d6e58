//! Derived gauge data of a presentation: the twist f and its inverse, the
//! gamma/delta pair, the four canonical p/q elements, U and V, and the exact
//! identity suite relating them.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseTensor, TensorElement};
use crate::scalar::Scalar;

use super::validate::ValidationReport;
use super::{AlgebraPresentation, Pipe};

/// Everything derived from a presentation that later constructions consume.
#[derive(Debug, Clone)]
pub struct DerivedPack {
    pub f: TensorElement,
    pub f_inv: TensorElement,
    pub gamma: TensorElement,
    pub delta: TensorElement,
    pub p_r: TensorElement,
    pub q_r: TensorElement,
    pub p_l: TensorElement,
    pub q_l: TensorElement,
    pub big_u: TensorElement,
    pub big_v: TensorElement,
    pub s_inv: Matrix,
    /// Filled in quasi-triangular contexts only.
    pub u: Option<Vec<Scalar>>,
}

impl DerivedPack {
    /// Attach the u element once an R-matrix context provides it.
    pub fn with_u(mut self, u: Vec<Scalar>) -> Self {
        self.u = Some(u);
        self
    }
}

fn sp(t: &TensorElement) -> SparseTensor {
    SparseTensor::from_dense(t)
}

fn check(name: &str, ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidPresentation(format!(
            "derived identity {name} failed; the presentation is inconsistent"
        )))
    }
}

/// The twist making S a coalgebra antimorphism up to conjugation, together
/// with its inverse and the gamma/delta elements it is assembled from.
pub fn compute_twist(
    h: &AlgebraPresentation,
) -> Result<(TensorElement, TensorElement, TensorElement, TensorElement)> {
    h.ensure_valid()?;
    let phi = h.phi_sparse();
    let phi_inv = h.phi_inv_sparse();
    let unit1 = h.elem_sparse(&h.unit);

    // gamma = S(A^2) alpha A^3 (x) S(A^1) alpha A^4,
    // A = (Phi (x) 1)(Delta (x) id (x) id)(Phi^{-1})
    let a_tensor = h.mul_tensors(&phi.outer(&unit1), &h.coproduct_slot(&phi_inv, 0));
    let gamma = Pipe::start()
        .outer(&a_tensor, &["a1", "a2", "a3", "a4"])
        .antipode(h, "a1")
        .antipode(h, "a2")
        .outer_coords(&h.alpha, "al1")
        .outer_coords(&h.alpha, "al2")
        .mul_chain(h, &["a2", "al1", "a3"], "g1")
        .mul_chain(h, &["a1", "al2", "a4"], "g2")
        .finish(&["g1", "g2"]);

    // delta = B^1 beta S(B^4) (x) B^2 beta S(B^3),
    // B = (Delta (x) id (x) id)(Phi)(Phi^{-1} (x) 1)
    let b_tensor = h.mul_tensors(&h.coproduct_slot(&phi, 0), &phi_inv.outer(&unit1));
    let delta = Pipe::start()
        .outer(&b_tensor, &["b1", "b2", "b3", "b4"])
        .antipode(h, "b3")
        .antipode(h, "b4")
        .outer_coords(&h.beta, "be1")
        .outer_coords(&h.beta, "be2")
        .mul_chain(h, &["b1", "be1", "b4"], "d1")
        .mul_chain(h, &["b2", "be2", "b3"], "d2")
        .finish(&["d1", "d2"]);

    // f = (S (x) S)(Delta^op(x^1)) gamma Delta(x^2 beta S(x^3))
    let f = Pipe::start()
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .coproduct(h, "x1", ("x11", "x12"))
        .antipode(h, "x11")
        .antipode(h, "x12")
        .antipode(h, "x3")
        .outer_coords(&h.beta, "be")
        .mul_chain(h, &["x2", "be", "x3"], "arg")
        .coproduct(h, "arg", ("m1", "m2"))
        .outer(&gamma, &["g1", "g2"])
        .mul_chain(h, &["x12", "g1", "m1"], "f1")
        .mul_chain(h, &["x11", "g2", "m2"], "f2")
        .finish(&["f1", "f2"]);

    // f^{-1} = Delta(S(x^1) alpha x^2) delta (S (x) S)(Delta^op(x^3))
    let f_inv = Pipe::start()
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .antipode(h, "x1")
        .outer_coords(&h.alpha, "al")
        .mul_chain(h, &["x1", "al", "x2"], "arg")
        .coproduct(h, "arg", ("m1", "m2"))
        .coproduct(h, "x3", ("x31", "x32"))
        .antipode(h, "x31")
        .antipode(h, "x32")
        .outer(&delta, &["d1", "d2"])
        .mul_chain(h, &["m1", "d1", "x32"], "o1")
        .mul_chain(h, &["m2", "d2", "x31"], "o2")
        .finish(&["o1", "o2"]);

    // postconditions: f f^{-1} = 1 (x) 1, the antipode conjugation law,
    // compatibility with gamma/delta, and the counit contractions
    let unit2 = h.unit_tensor(2);
    check("twist-invertible", {
        h.mul_tensors(&f, &f_inv).equals(&unit2) && h.mul_tensors(&f_inv, &f).equals(&unit2)
    })?;
    for i in 0..h.dim {
        let e = h.basis_elem(i);
        let mid = h.coproduct_sparse(&h.antipode_elem(&e));
        let lhs = h.mul_tensor_chain(&[&f, &mid, &f_inv]);
        let rhs = {
            let t = h.coproduct_sparse(&e).permute(&[1, 0]);
            let t = h.apply_matrix_slot(&t, 0, &h.antipode);
            h.apply_matrix_slot(&t, 1, &h.antipode)
        };
        check("twist-conjugates-antipode", lhs.equals(&rhs))?;
    }
    check("twist-gamma-compat", {
        h.mul_tensors(&f, &h.coproduct_sparse(&h.alpha)).equals(&gamma)
    })?;
    check("twist-delta-compat", {
        h.mul_tensors(&h.coproduct_sparse(&h.beta), &f_inv).equals(&delta)
    })?;
    check("twist-counit", {
        h.counit_slot(&f, 0).equals(&unit1) && h.counit_slot(&f, 1).equals(&unit1)
    })?;
    // (1 (x) f)(id (x) Delta)(f) Phi (Delta (x) id)(f^{-1})(f^{-1} (x) 1)
    //   = S(X^3) (x) S(X^2) (x) S(X^1)
    let lhs = h.mul_tensor_chain(&[
        &unit1.outer(&f),
        &h.coproduct_slot(&f, 1),
        &phi,
        &h.coproduct_slot(&f_inv, 0),
        &f_inv.outer(&unit1),
    ]);
    let rhs = {
        let t = h.apply_matrix_slot(&phi, 0, &h.antipode);
        let t = h.apply_matrix_slot(&t, 1, &h.antipode);
        let t = h.apply_matrix_slot(&t, 2, &h.antipode);
        t.permute(&[2, 1, 0])
    };
    check("twist-reassociator-compat", lhs.equals(&rhs))?;
    // f^1 beta S(f^2) = S(alpha), g^1 S(g^2 alpha) = beta, S(beta f^1) f^2 = alpha
    let v1 = Pipe::start()
        .outer(&f, &["f1", "f2"])
        .antipode(h, "f2")
        .outer_coords(&h.beta, "be")
        .mul_chain(h, &["f1", "be", "f2"], "out")
        .finish_elem("out");
    check("twist-alpha-compat", h.elems_equal(&v1, &h.antipode_elem(&h.alpha)))?;
    let v2 = Pipe::start()
        .outer(&f_inv, &["g1", "g2"])
        .outer_coords(&h.alpha, "al")
        .mul(h, "g2", "al", "t")
        .antipode(h, "t")
        .mul(h, "g1", "t", "out")
        .finish_elem("out");
    check("twist-beta-compat", h.elems_equal(&v2, &h.beta))?;
    let v3 = Pipe::start()
        .outer(&f, &["f1", "f2"])
        .outer_coords(&h.beta, "be")
        .mul(h, "be", "f1", "t")
        .antipode(h, "t")
        .mul(h, "t", "f2", "out")
        .finish_elem("out");
    check("twist-alpha-recovery", h.elems_equal(&v3, &h.alpha))?;

    Ok((f.to_dense(), f_inv.to_dense(), gamma.to_dense(), delta.to_dense()))
}

/// The canonical p/q gauge elements plus U and V.
pub fn compute_pq(
    h: &AlgebraPresentation,
    f: &TensorElement,
    f_inv: &TensorElement,
) -> Result<(
    TensorElement,
    TensorElement,
    TensorElement,
    TensorElement,
    TensorElement,
    TensorElement,
)> {
    let phi = h.phi_sparse();
    let phi_inv = h.phi_inv_sparse();

    // p_R = x^1 (x) x^2 beta S(x^3)
    let p_r = Pipe::start()
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .antipode(h, "x3")
        .outer_coords(&h.beta, "be")
        .mul_chain(h, &["x2", "be", "x3"], "p2")
        .finish(&["x1", "p2"]);

    // q_R = X^1 (x) S^{-1}(alpha X^3) X^2
    let q_r = Pipe::start()
        .outer(&phi, &["y1", "y2", "y3"])
        .outer_coords(&h.alpha, "al")
        .mul(h, "al", "y3", "t")
        .antipode_inv(h, "t")
        .mul(h, "t", "y2", "q2")
        .finish(&["y1", "q2"]);

    // p_L = X^2 S^{-1}(X^1 beta) (x) X^3
    let p_l = Pipe::start()
        .outer(&phi, &["y1", "y2", "y3"])
        .outer_coords(&h.beta, "be")
        .mul(h, "y1", "be", "t")
        .antipode_inv(h, "t")
        .mul(h, "y2", "t", "p1")
        .finish(&["p1", "y3"]);

    // q_L = S(x^1) alpha x^2 (x) x^3
    let q_l = Pipe::start()
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .antipode(h, "x1")
        .outer_coords(&h.alpha, "al")
        .mul_chain(h, &["x1", "al", "x2"], "q1")
        .finish(&["q1", "x3"]);

    // U = g^1 S(q^2) (x) g^2 S(q^1)
    let big_u = Pipe::start()
        .outer_dense(f_inv, &["g1", "g2"])
        .outer(&q_r, &["qq1", "qq2"])
        .antipode(h, "qq1")
        .antipode(h, "qq2")
        .mul(h, "g1", "qq2", "u1")
        .mul(h, "g2", "qq1", "u2")
        .finish(&["u1", "u2"]);

    // V = S^{-1}(f^2 p^2) (x) S^{-1}(f^1 p^1)
    let big_v = Pipe::start()
        .outer_dense(f, &["f1", "f2"])
        .outer(&p_r, &["pp1", "pp2"])
        .mul(h, "f2", "pp2", "v1")
        .antipode_inv(h, "v1")
        .mul(h, "f1", "pp1", "v2")
        .antipode_inv(h, "v2")
        .finish(&["v1", "v2"]);

    // quick cancellation checks, the rest lives in the identity suite
    let unit2 = h.unit_tensor(2);
    let lhs = Pipe::start()
        .outer(&p_r, &["p1", "p2"])
        .coproduct(h, "p1", ("p11", "p12"))
        .antipode_inv(h, "p2")
        .outer(&q_r, &["q1", "q2"])
        .mul(h, "q1", "p11", "o1")
        .mul_chain(h, &["p2", "q2", "p12"], "o2")
        .finish(&["o1", "o2"]);
    check("q_r-p_r-left-cancel", lhs.equals(&unit2))?;
    let lhs = Pipe::start()
        .outer(&q_r, &["q1", "q2"])
        .coproduct(h, "q1", ("q11", "q12"))
        .antipode(h, "q2")
        .outer(&p_r, &["p1", "p2"])
        .mul(h, "q11", "p1", "o1")
        .mul_chain(h, &["q12", "p2", "q2"], "o2")
        .finish(&["o1", "o2"]);
    check("q_r-p_r-right-cancel", lhs.equals(&unit2))?;
    let lhs = Pipe::start()
        .outer(&p_l, &["p1", "p2"])
        .coproduct(h, "p2", ("p21", "p22"))
        .antipode(h, "p1")
        .outer(&q_l, &["t1", "t2"])
        .mul_chain(h, &["p1", "t1", "p21"], "o1")
        .mul(h, "t2", "p22", "o2")
        .finish(&["o1", "o2"]);
    check("q_l-p_l-cancel", lhs.equals(&unit2))?;

    Ok((
        p_r.to_dense(),
        q_r.to_dense(),
        p_l.to_dense(),
        q_l.to_dense(),
        big_u.to_dense(),
        big_v.to_dense(),
    ))
}

/// Full derived pack: twist plus the p/q family.
pub fn compute_pack(h: &AlgebraPresentation) -> Result<DerivedPack> {
    let (f, f_inv, gamma, delta) = compute_twist(h)?;
    let (p_r, q_r, p_l, q_l, big_u, big_v) = compute_pq(h, &f, &f_inv)?;
    Ok(DerivedPack {
        f,
        f_inv,
        gamma,
        delta,
        p_r,
        q_r,
        p_l,
        q_l,
        big_u,
        big_v,
        s_inv: h.antipode_inv.clone(),
        u: None,
    })
}

/// The five-leg element used by the double multiplication:
/// X^1_(1,1) y^1 x^1 (x) X^1_(1,2) y^2 x^2_1 (x) X^1_2 y^3 x^2_2
/// (x) S^{-1}(f^1 X^2 x^3) (x) S^{-1}(f^2 X^3).
pub(crate) fn omega_pipe(h: &AlgebraPresentation, pack: &DerivedPack) -> SparseTensor {
    let phi = h.phi_sparse();
    let phi_inv = h.phi_inv_sparse();
    Pipe::start()
        .outer(&phi, &["X1", "X2", "X3"])
        .coproduct(h, "X1", ("X1a", "X1b"))
        .coproduct(h, "X1a", ("X11", "X12"))
        .outer(&phi_inv, &["y1", "y2", "y3"])
        .mul(h, "X11", "y1", "O1a")
        .mul(h, "X12", "y2", "O2a")
        .mul(h, "X1b", "y3", "O3a")
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .coproduct(h, "x2", ("x2a", "x2b"))
        .mul(h, "O1a", "x1", "O1")
        .mul(h, "O2a", "x2a", "O2")
        .mul(h, "O3a", "x2b", "O3")
        .outer_dense(&pack.f, &["ff1", "ff2"])
        .mul_chain(h, &["ff1", "X2", "x3"], "O4")
        .antipode_inv(h, "O4")
        .mul(h, "ff2", "X3", "O5")
        .antipode_inv(h, "O5")
        .finish(&["O1", "O2", "O3", "O4", "O5"])
}

/// Evaluate the full relation suite between the pack elements. Failures are
/// report rows with witnesses, not errors.
pub fn identity_suite(h: &AlgebraPresentation, pack: &DerivedPack) -> ValidationReport {
    let mut report = ValidationReport { checks: Vec::new() };
    let phi = h.phi_sparse();
    let phi_inv = h.phi_inv_sparse();
    let unit1 = h.elem_sparse(&h.unit);
    let unit2 = h.unit_tensor(2);
    let f = sp(&pack.f);
    let f_inv = sp(&pack.f_inv);
    let gamma = sp(&pack.gamma);
    let delta = sp(&pack.delta);
    let p_r = sp(&pack.p_r);
    let q_r = sp(&pack.q_r);
    let p_l = sp(&pack.p_l);
    let q_l = sp(&pack.q_l);
    let big_u = sp(&pack.big_u);

    let mut row = |name: &str, lhs: &SparseTensor, rhs: &SparseTensor| {
        let witness = lhs
            .first_difference(rhs)
            .map(|w| format!("coordinate {w:?}"));
        report.checks.push(super::validate::AxiomCheck {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        });
    };

    // Delta(h_1) p_R (1 (x) S(h_2)) = p_R (h (x) 1), for all basis h
    {
        let mut lhs_all = SparseTensor::uniform(h.dim, 3);
        let mut rhs_all = SparseTensor::uniform(h.dim, 3);
        for i in 0..h.dim {
            let e = h.basis_elem(i);
            let lhs = Pipe::start()
                .outer_coords(&e, "h")
                .coproduct(h, "h", ("h1", "h2"))
                .coproduct(h, "h1", ("h11", "h12"))
                .antipode(h, "h2")
                .outer(&p_r, &["p1", "p2"])
                .mul(h, "h11", "p1", "o1")
                .mul_chain(h, &["h12", "p2", "h2"], "o2")
                .outer_coords(&h.basis_elem(i), "tag")
                .finish(&["tag", "o1", "o2"]);
            let rhs = Pipe::start()
                .outer(&p_r, &["p1", "p2"])
                .outer_coords(&e, "h")
                .mul(h, "p1", "h", "o1")
                .outer_coords(&h.basis_elem(i), "tag")
                .finish(&["tag", "o1", "p2"]);
            lhs_all = lhs_all.add(&lhs);
            rhs_all = rhs_all.add(&rhs);
        }
        row("p_r-intertwines-coproduct", &lhs_all, &rhs_all);
    }

    // (S(h_1) (x) 1) q_L Delta(h_2) = (1 (x) h) q_L, for all basis h
    {
        let mut lhs_all = SparseTensor::uniform(h.dim, 3);
        let mut rhs_all = SparseTensor::uniform(h.dim, 3);
        for i in 0..h.dim {
            let e = h.basis_elem(i);
            let lhs = Pipe::start()
                .outer_coords(&e, "h")
                .coproduct(h, "h", ("h1", "h2"))
                .coproduct(h, "h2", ("h21", "h22"))
                .antipode(h, "h1")
                .outer(&q_l, &["t1", "t2"])
                .mul_chain(h, &["h1", "t1", "h21"], "o1")
                .mul(h, "t2", "h22", "o2")
                .outer_coords(&h.basis_elem(i), "tag")
                .finish(&["tag", "o1", "o2"]);
            let rhs = Pipe::start()
                .outer(&q_l, &["t1", "t2"])
                .outer_coords(&e, "h")
                .mul(h, "h", "t2", "o2")
                .outer_coords(&h.basis_elem(i), "tag")
                .finish(&["tag", "t1", "o2"]);
            lhs_all = lhs_all.add(&lhs);
            rhs_all = rhs_all.add(&rhs);
        }
        row("q_l-intertwines-coproduct", &lhs_all, &rhs_all);
    }

    // (1 (x) S^{-1}(p^2)) q_R Delta(p^1) = 1 (x) 1
    let lhs = Pipe::start()
        .outer(&p_r, &["p1", "p2"])
        .coproduct(h, "p1", ("p11", "p12"))
        .antipode_inv(h, "p2")
        .outer(&q_r, &["q1", "q2"])
        .mul(h, "q1", "p11", "o1")
        .mul_chain(h, &["p2", "q2", "p12"], "o2")
        .finish(&["o1", "o2"]);
    row("q_r-p_r-left-cancel", &lhs, &unit2);

    // Delta(q^1) p_R (1 (x) S(q^2)) = 1 (x) 1
    let lhs = Pipe::start()
        .outer(&q_r, &["q1", "q2"])
        .coproduct(h, "q1", ("q11", "q12"))
        .antipode(h, "q2")
        .outer(&p_r, &["p1", "p2"])
        .mul(h, "q11", "p1", "o1")
        .mul_chain(h, &["q12", "p2", "q2"], "o2")
        .finish(&["o1", "o2"]);
    row("q_r-p_r-right-cancel", &lhs, &unit2);

    // (S(p_L^1) (x) 1) q_L Delta(p_L^2) = 1 (x) 1
    let lhs = Pipe::start()
        .outer(&p_l, &["p1", "p2"])
        .coproduct(h, "p2", ("p21", "p22"))
        .antipode(h, "p1")
        .outer(&q_l, &["t1", "t2"])
        .mul_chain(h, &["p1", "t1", "p21"], "o1")
        .mul(h, "t2", "p22", "o2")
        .finish(&["o1", "o2"]);
    row("q_l-p_l-cancel", &lhs, &unit2);

    // Phi (Delta (x) id)(p_R)(p_R (x) 1)
    //   = (id (x) Delta)(Delta(x^1) p_R)(1 (x) f^{-1})(1 (x) S(x^3) (x) S(x^2))
    let lhs = h.mul_tensor_chain(&[&phi, &h.coproduct_slot(&p_r, 0), &p_r.outer(&unit1)]);
    let rhs = Pipe::start()
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .outer(&p_r, &["p1", "p2"])
        .coproduct(h, "x1", ("x1a", "x1b"))
        .mul(h, "x1a", "p1", "w1")
        .mul(h, "x1b", "p2", "w2")
        .coproduct(h, "w2", ("w2a", "w2b"))
        .outer(&f_inv, &["g1", "g2"])
        .antipode(h, "x2")
        .antipode(h, "x3")
        .mul_chain(h, &["w2a", "g1", "x3"], "o2")
        .mul_chain(h, &["w2b", "g2", "x2"], "o3")
        .finish(&["w1", "o2", "o3"]);
    row("p_r-reassociator-compat", &lhs, &rhs);

    // (q_R (x) 1)(Delta (x) id)(q_R) Phi^{-1}
    //   = (1 (x) S^{-1}(f^2 X^3) (x) S^{-1}(f^1 X^2))(id (x) Delta)(q_R Delta(X^1))
    let lhs = h.mul_tensor_chain(&[&q_r.outer(&unit1), &h.coproduct_slot(&q_r, 0), &phi_inv]);
    let rhs = Pipe::start()
        .outer(&phi, &["X1", "X2", "X3"])
        .outer(&q_r, &["q1", "q2"])
        .coproduct(h, "X1", ("X1a", "X1b"))
        .mul(h, "q1", "X1a", "w1")
        .mul(h, "q2", "X1b", "w2")
        .coproduct(h, "w2", ("w2a", "w2b"))
        .outer(&f, &["ff1", "ff2"])
        .mul(h, "ff2", "X3", "s2")
        .antipode_inv(h, "s2")
        .mul(h, "ff1", "X2", "s3")
        .antipode_inv(h, "s3")
        .mul(h, "s2", "w2a", "o2")
        .mul(h, "s3", "w2b", "o3")
        .finish(&["w1", "o2", "o3"]);
    row("q_r-reassociator-compat", &lhs, &rhs);

    // (1 (x) q_L)(id (x) Delta)(q_L) Phi
    //   = (S(x^2) (x) S(x^1) (x) 1)(f (x) 1)(Delta (x) id)(q_L Delta(x^3))
    let lhs = h.mul_tensor_chain(&[&unit1.outer(&q_l), &h.coproduct_slot(&q_l, 1), &phi]);
    let rhs = Pipe::start()
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .outer(&q_l, &["t1", "t2"])
        .coproduct(h, "x3", ("x3a", "x3b"))
        .mul(h, "t1", "x3a", "w1")
        .mul(h, "t2", "x3b", "w2")
        .coproduct(h, "w1", ("w1a", "w1b"))
        .outer(&f, &["ff1", "ff2"])
        .antipode(h, "x1")
        .antipode(h, "x2")
        .mul_chain(h, &["x2", "ff1", "w1a"], "o1")
        .mul_chain(h, &["x1", "ff2", "w1b"], "o2")
        .finish(&["o1", "o2", "w2"]);
    row("q_l-reassociator-compat", &lhs, &rhs);

    // X^1 p^1_1 (x) X^2 p^1_2 (x) X^3 p^2 = x^1 (x) x^2_1 p^1 (x) x^2_2 p^2 S(x^3)
    let lhs = Pipe::start()
        .outer(&phi, &["X1", "X2", "X3"])
        .outer(&p_r, &["p1", "p2"])
        .coproduct(h, "p1", ("p1a", "p1b"))
        .mul(h, "X1", "p1a", "o1")
        .mul(h, "X2", "p1b", "o2")
        .mul(h, "X3", "p2", "o3")
        .finish(&["o1", "o2", "o3"]);
    let rhs = Pipe::start()
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .outer(&p_r, &["p1", "p2"])
        .coproduct(h, "x2", ("x2a", "x2b"))
        .antipode(h, "x3")
        .mul(h, "x2a", "p1", "o2")
        .mul_chain(h, &["x2b", "p2", "x3"], "o3")
        .finish(&["x1", "o2", "o3"]);
    row("reassociator-p_r-exchange", &lhs, &rhs);

    // qtilde^1 X^1 (x) qtilde^2_1 X^2 (x) qtilde^2_2 X^3
    //   = S(x^1) qtilde^1 x^2_1 (x) qtilde^2 x^2_2 (x) x^3
    let lhs = Pipe::start()
        .outer(&q_l, &["t1", "t2"])
        .coproduct(h, "t2", ("t2a", "t2b"))
        .outer(&phi, &["X1", "X2", "X3"])
        .mul(h, "t1", "X1", "o1")
        .mul(h, "t2a", "X2", "o2")
        .mul(h, "t2b", "X3", "o3")
        .finish(&["o1", "o2", "o3"]);
    let rhs = Pipe::start()
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .outer(&q_l, &["t1", "t2"])
        .coproduct(h, "x2", ("x2a", "x2b"))
        .antipode(h, "x1")
        .mul_chain(h, &["x1", "t1", "x2a"], "o1")
        .mul(h, "t2", "x2b", "o2")
        .finish(&["o1", "o2", "x3"]);
    row("reassociator-q_l-exchange", &lhs, &rhs);

    // f^{-1} = Delta(S(p^1)) U (p^2 (x) 1)
    let rhs = Pipe::start()
        .outer(&p_r, &["p1", "p2"])
        .antipode(h, "p1")
        .coproduct(h, "p1", ("a", "b"))
        .outer(&big_u, &["u1", "u2"])
        .mul_chain(h, &["a", "u1", "p2"], "o1")
        .mul(h, "b", "u2", "o2")
        .finish(&["o1", "o2"]);
    row("twist-inverse-from-p_r-u", &f_inv, &rhs);

    // Delta(S(h_1)) U (h_2 (x) 1) = U (1 (x) S(h)), for all basis h
    {
        let mut lhs_all = SparseTensor::uniform(h.dim, 3);
        let mut rhs_all = SparseTensor::uniform(h.dim, 3);
        for i in 0..h.dim {
            let e = h.basis_elem(i);
            let lhs = Pipe::start()
                .outer_coords(&e, "h")
                .coproduct(h, "h", ("h1", "h2"))
                .antipode(h, "h1")
                .coproduct(h, "h1", ("a", "b"))
                .outer(&big_u, &["u1", "u2"])
                .mul_chain(h, &["a", "u1", "h2"], "o1")
                .mul(h, "b", "u2", "o2")
                .outer_coords(&h.basis_elem(i), "tag")
                .finish(&["tag", "o1", "o2"]);
            let rhs = Pipe::start()
                .outer(&big_u, &["u1", "u2"])
                .outer_coords(&e, "h")
                .antipode(h, "h")
                .mul(h, "u2", "h", "o2")
                .outer_coords(&h.basis_elem(i), "tag")
                .finish(&["tag", "u1", "o2"]);
            lhs_all = lhs_all.add(&lhs);
            rhs_all = rhs_all.add(&rhs);
        }
        row("u-antipode-exchange", &lhs_all, &rhs_all);
    }

    // f^1_1 p^1 (x) f^1_2 p^2 S(f^2) = g^1 S(qtilde^2) (x) g^2 S(qtilde^1)
    let lhs = Pipe::start()
        .outer(&f, &["f1", "f2"])
        .coproduct(h, "f1", ("f1a", "f1b"))
        .antipode(h, "f2")
        .outer(&p_r, &["p1", "p2"])
        .mul(h, "f1a", "p1", "o1")
        .mul_chain(h, &["f1b", "p2", "f2"], "o2")
        .finish(&["o1", "o2"]);
    let rhs = Pipe::start()
        .outer(&f_inv, &["g1", "g2"])
        .outer(&q_l, &["t1", "t2"])
        .antipode(h, "t1")
        .antipode(h, "t2")
        .mul(h, "g1", "t2", "o1")
        .mul(h, "g2", "t1", "o2")
        .finish(&["o1", "o2"]);
    row("twist-p_r-vs-q_l", &lhs, &rhs);

    // gamma = S(x^1 X^2) alpha x^2 X^3_1 (x) S(X^1) alpha x^3 X^3_2
    let rhs = Pipe::start()
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .outer(&phi, &["X1", "X2", "X3"])
        .coproduct(h, "X3", ("X3a", "X3b"))
        .mul(h, "x1", "X2", "t")
        .antipode(h, "t")
        .antipode(h, "X1")
        .outer_coords(&h.alpha, "al1")
        .outer_coords(&h.alpha, "al2")
        .mul_chain(h, &["t", "al1", "x2", "X3a"], "o1")
        .mul_chain(h, &["X1", "al2", "x3", "X3b"], "o2")
        .finish(&["o1", "o2"]);
    row("gamma-alternate-form", &gamma, &rhs);

    // delta = x^1 beta S(x^3_2 X^3) (x) x^2 X^1 beta S(x^3_1 X^2)
    let rhs = Pipe::start()
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .outer(&phi, &["X1", "X2", "X3"])
        .coproduct(h, "x3", ("x3a", "x3b"))
        .mul(h, "x3b", "X3", "s")
        .antipode(h, "s")
        .mul(h, "x3a", "X2", "r")
        .antipode(h, "r")
        .outer_coords(&h.beta, "be1")
        .outer_coords(&h.beta, "be2")
        .mul_chain(h, &["x1", "be1", "s"], "o1")
        .mul_chain(h, &["x2", "X1", "be2", "r"], "o2")
        .finish(&["o1", "o2"]);
    row("delta-alternate-form", &delta, &rhs);

    // p_R = Delta(S(p_L^1)) U (p_L^2 (x) 1)
    let rhs = Pipe::start()
        .outer(&p_l, &["p1", "p2"])
        .antipode(h, "p1")
        .coproduct(h, "p1", ("a", "b"))
        .outer(&big_u, &["u1", "u2"])
        .mul_chain(h, &["a", "u1", "p2"], "o1")
        .mul(h, "b", "u2", "o2")
        .finish(&["o1", "o2"]);
    row("p_r-from-p_l-u", &p_r, &rhs);

    // Omega^1_1 delta^1 S^2(Omega^4) (x) Omega^1_(2,1) delta^2_1 g^1 S(Omega^3)
    //   (x) Omega^1_(2,2) delta^2_2 g^2 S(Omega^2) (x) Omega^5
    //   = X^1 p^1_1 P^1 S(f^1 p_L^1) (x) X^2 p^1_2 P^2 (x) X^3 p^2
    //     (x) S^{-1}(f^2 p_L^2)
    // merge eagerly: the naive outer-everything-first order materializes
    // hundreds of thousands of sparse entries on dense reassociators
    let omega = omega_pipe(h, pack);
    let s_squared = h.antipode.mul(&h.antipode).expect("square matrix");
    let lhs = Pipe::start()
        .outer(&omega, &["O1", "O2", "O3", "O4", "O5"])
        .coproduct(h, "O1", ("O1a", "O1b"))
        .coproduct(h, "O1b", ("O1b1", "O1b2"))
        .apply("O4", &s_squared)
        .antipode(h, "O3")
        .antipode(h, "O2")
        .outer(&delta, &["dd1", "dd2"])
        .mul(h, "O1a", "dd1", "o1a")
        .mul(h, "o1a", "O4", "o1")
        .coproduct(h, "dd2", ("dd2a", "dd2b"))
        .mul(h, "O1b1", "dd2a", "o2a")
        .mul(h, "O1b2", "dd2b", "o3a")
        .outer(&f_inv, &["g1", "g2"])
        .mul_chain(h, &["o2a", "g1", "O3"], "o2")
        .mul_chain(h, &["o3a", "g2", "O2"], "o3")
        .finish(&["o1", "o2", "o3", "O5"]);
    let rhs = Pipe::start()
        .outer(&phi, &["X1", "X2", "X3"])
        .outer(&p_r, &["p1", "p2"])
        .coproduct(h, "p1", ("p1a", "p1b"))
        .mul(h, "X3", "p2", "o3")
        .mul(h, "X1", "p1a", "o1a")
        .mul(h, "X2", "p1b", "o2a")
        .outer(&p_r, &["P1", "P2"])
        .mul(h, "o1a", "P1", "o1b")
        .mul(h, "o2a", "P2", "o2")
        .outer(&f, &["ff1", "ff2"])
        .outer(&p_l, &["pl1", "pl2"])
        .mul(h, "ff1", "pl1", "s")
        .antipode(h, "s")
        .mul(h, "o1b", "s", "o1")
        .mul(h, "ff2", "pl2", "o4")
        .antipode_inv(h, "o4")
        .finish(&["o1", "o2", "o3", "o4"]);
    row("omega-delta-contraction", &lhs, &rhs);

    // gamma^1 X^1 (x) f^1 gamma^2_1 X^2 (x) f^2 gamma^2_2 X^3
    //   = S(X^3) f^1 gamma^1_1 (x) S(X^2) f^2 gamma^1_2 (x) S(X^1) gamma^2
    let lhs = Pipe::start()
        .outer(&gamma, &["g1", "g2"])
        .coproduct(h, "g2", ("g2a", "g2b"))
        .outer(&phi, &["X1", "X2", "X3"])
        .outer(&f, &["ff1", "ff2"])
        .mul(h, "g1", "X1", "o1")
        .mul_chain(h, &["ff1", "g2a", "X2"], "o2")
        .mul_chain(h, &["ff2", "g2b", "X3"], "o3")
        .finish(&["o1", "o2", "o3"]);
    let rhs = Pipe::start()
        .outer(&gamma, &["g1", "g2"])
        .coproduct(h, "g1", ("g1a", "g1b"))
        .outer(&phi, &["X1", "X2", "X3"])
        .antipode(h, "X1")
        .antipode(h, "X2")
        .antipode(h, "X3")
        .outer(&f, &["ff1", "ff2"])
        .mul_chain(h, &["X3", "ff1", "g1a"], "o1")
        .mul_chain(h, &["X2", "ff2", "g1b"], "o2")
        .mul(h, "X1", "g2", "o3")
        .finish(&["o1", "o2", "o3"]);
    row("gamma-twist-reassociator-exchange", &lhs, &rhs);

    // q^1 x^1_1 (x) S^{-1}(x^2) q^2 x^1_2 (x) x^3
    //   = X^1 (x) S^{-1}(qtilde^1 X^3_1) X^2 (x) qtilde^2 X^3_2
    let lhs = Pipe::start()
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .outer(&q_r, &["q1", "q2"])
        .coproduct(h, "x1", ("x1a", "x1b"))
        .antipode_inv(h, "x2")
        .mul(h, "q1", "x1a", "o1")
        .mul_chain(h, &["x2", "q2", "x1b"], "o2")
        .finish(&["o1", "o2", "x3"]);
    let rhs = Pipe::start()
        .outer(&phi, &["X1", "X2", "X3"])
        .outer(&q_l, &["t1", "t2"])
        .coproduct(h, "X3", ("X3a", "X3b"))
        .mul(h, "t1", "X3a", "s")
        .antipode_inv(h, "s")
        .mul(h, "s", "X2", "o2")
        .mul(h, "t2", "X3b", "o3")
        .finish(&["X1", "o2", "o3"]);
    row("q_r-q_l-reassociator-exchange", &lhs, &rhs);

    // beta S(alpha) is invertible with inverse S(beta) alpha
    {
        let g_elem = h.mul_elems(&h.beta, &h.antipode_elem(&h.alpha));
        let g_inv = h.mul_elems(&h.antipode_elem(&h.beta), &h.alpha);
        let fwd = h.mul_elems(&g_elem, &g_inv);
        let bwd = h.mul_elems(&g_inv, &g_elem);
        let ok = h.elems_equal(&fwd, &h.unit) && h.elems_equal(&bwd, &h.unit);
        report.checks.push(super::validate::AxiomCheck {
            name: "trace-conjugator-invertible".to_string(),
            passed: ok,
            witness: (!ok).then(|| "beta S(alpha) failed to invert".to_string()),
        });
    }

    report
}
