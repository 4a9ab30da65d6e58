//! Left modules over a presentation, rigid-category data (dual, evaluation,
//! coevaluation, braiding), quantum dimensions and the canonical module
//! structure of the base algebra over its double.

use crate::algebra::{compute_pack, AlgebraPresentation, DerivedPack, Pipe};
use crate::double::{pair_index, DoublePresentation};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseTensor, TensorElement};
use crate::scalar::Scalar;

/// A left module given by one action matrix per algebra basis element.
#[derive(Debug, Clone)]
pub struct ModuleAction {
    pub vdim: usize,
    pub action: Vec<Matrix>,
    pub label: String,
}

impl ModuleAction {
    /// Build and verify: the action must respect products and send the unit
    /// to the identity.
    pub fn new(alg: &AlgebraPresentation, action: Vec<Matrix>, label: &str) -> Result<Self> {
        let vdim = action.first().map_or(0, |m| m.rows);
        let module = ModuleAction {
            vdim,
            action,
            label: label.to_string(),
        };
        module.verify(alg)?;
        Ok(module)
    }

    pub fn verify(&self, alg: &AlgebraPresentation) -> Result<()> {
        if self.action.len() != alg.dim
            || self
                .action
                .iter()
                .any(|m| m.rows != self.vdim || m.cols != self.vdim)
        {
            return Err(Error::InvalidModule(format!(
                "{}: action shape mismatch",
                self.label
            )));
        }
        if self.apply_elem(&alg.unit)? != Matrix::identity(self.vdim) {
            return Err(Error::InvalidModule(format!(
                "{}: unit does not act as identity",
                self.label
            )));
        }
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                let lhs = self.action[i].mul(&self.action[j])?;
                let rhs =
                    self.apply_elem(&alg.mul_elems(&alg.basis_elem(i), &alg.basis_elem(j)))?;
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "{}: action breaks at basis pair ({}, {})",
                        self.label, alg.basis_labels[i], alg.basis_labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Action matrix of a general element.
    pub fn apply_elem(&self, elem: &[Scalar]) -> Result<Matrix> {
        let mut out = Matrix::zero(self.vdim, self.vdim);
        for (i, c) in elem.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for r in 0..self.vdim {
                for s in 0..self.vdim {
                    let a = self.action[i].get(r, s);
                    if !a.is_zero() {
                        let v = out.get(r, s).checked_add(&a.checked_mul(c)?)?;
                        out.set(r, s, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The left regular module.
    pub fn regular(alg: &AlgebraPresentation) -> Result<ModuleAction> {
        let action = (0..alg.dim)
            .map(|i| alg.left_mult_matrix(&alg.basis_elem(i)))
            .collect();
        ModuleAction::new(alg, action, &format!("regular({})", alg.label))
    }

    /// The trivial one-dimensional module through the counit.
    pub fn trivial(alg: &AlgebraPresentation) -> Result<ModuleAction> {
        let action = (0..alg.dim)
            .map(|i| {
                let mut m = Matrix::zero(1, 1);
                m.set(0, 0, alg.counit[i].clone());
                m
            })
            .collect();
        ModuleAction::new(alg, action, "trivial")
    }
}

/// u (implementing S^2 as conjugation), its inverse, and eta whose trace is
/// the quantum dimension.
#[derive(Debug, Clone)]
pub struct UElements {
    pub u: Vec<Scalar>,
    pub u_inv: Vec<Scalar>,
    pub eta: Vec<Scalar>,
}

/// u = S(R^2 p^2) alpha R^1 p^1 and eta = S(R^2) alpha R^1 beta, with the
/// defining invariants checked exactly.
pub fn compute_u_eta(
    alg: &AlgebraPresentation,
    pack: &DerivedPack,
    r: &TensorElement,
) -> Result<UElements> {
    alg.ensure_valid()?;
    let r_sp = SparseTensor::from_dense(r);
    // cheap quasi-triangularity guards: the counit laws and the coproduct
    // intertwining; the full reassociator compatibilities are the caller's
    // responsibility (verify_quasitriangular)
    let unit1 = alg.elem_sparse(&alg.unit);
    if !alg.counit_slot(&r_sp, 0).equals(&unit1) || !alg.counit_slot(&r_sp, 1).equals(&unit1) {
        return Err(Error::NotQuasiTriangular(
            "R fails the counit normalization".into(),
        ));
    }
    for i in 0..alg.dim {
        let d = alg.coproduct_sparse(&alg.basis_elem(i));
        let lhs = alg.mul_tensors(&d.permute(&[1, 0]), &r_sp);
        let rhs = alg.mul_tensors(&r_sp, &d);
        if !lhs.equals(&rhs) {
            return Err(Error::NotQuasiTriangular(format!(
                "R fails to intertwine the coproducts at basis {}",
                alg.basis_labels[i]
            )));
        }
    }

    let u = Pipe::start()
        .outer(&r_sp, &["R1", "R2"])
        .outer_dense(&pack.p_r, &["p1", "p2"])
        .mul(alg, "R2", "p2", "A")
        .antipode(alg, "A")
        .outer_coords(&alg.alpha, "al")
        .mul(alg, "R1", "p1", "B")
        .mul_chain(alg, &["A", "al", "B"], "u")
        .finish_elem("u");

    let lm = alg.left_mult_matrix(&u);
    let u_inv = lm
        .solve_linear(&alg.unit)?
        .ok_or_else(|| Error::NotQuasiTriangular("u is not invertible".into()))?;
    if !alg.elems_equal(&alg.mul_elems(&u_inv, &u), &alg.unit) {
        return Err(Error::NotQuasiTriangular(
            "u has no two-sided inverse".into(),
        ));
    }

    // S^2(h) = u h u^{-1} on the basis
    for i in 0..alg.dim {
        let e = alg.basis_elem(i);
        let lhs = alg.antipode_elem(&alg.antipode_elem(&e));
        let rhs = alg.mul_many(&[&u, &e, &u_inv]);
        if !alg.elems_equal(&lhs, &rhs) {
            return Err(Error::NotQuasiTriangular(format!(
                "S^2 is not conjugation by u at basis {}",
                alg.basis_labels[i]
            )));
        }
    }

    // eta = S(R^2) alpha R^1 beta, and S(R^2) alpha R^1 = S(alpha) u
    let s_r2_alpha_r1 = Pipe::start()
        .outer(&r_sp, &["R1", "R2"])
        .antipode(alg, "R2")
        .outer_coords(&alg.alpha, "al")
        .mul_chain(alg, &["R2", "al", "R1"], "out")
        .finish_elem("out");
    let expect = alg.mul_elems(&alg.antipode_elem(&alg.alpha), &u);
    if !alg.elems_equal(&s_r2_alpha_r1, &expect) {
        return Err(Error::NotQuasiTriangular(
            "S(R^2) alpha R^1 disagrees with S(alpha) u".into(),
        ));
    }
    let eta = alg.mul_elems(&s_r2_alpha_r1, &alg.beta);
    let eta_from_u = alg.mul_many(&[&u, &alg.antipode_inv_elem(&alg.alpha), &alg.beta]);
    if !alg.elems_equal(&eta, &eta_from_u) {
        return Err(Error::NotQuasiTriangular(
            "eta disagrees with u S^{-1}(alpha) beta".into(),
        ));
    }

    Ok(UElements { u, u_inv, eta })
}

/// Left dual module with its evaluation and coevaluation, checked against
/// the rigidity zig-zags (with the associativity constraint inserted).
pub fn dual_ev_coev(
    alg: &AlgebraPresentation,
    v: &ModuleAction,
) -> Result<(ModuleAction, Matrix, Matrix)> {
    v.verify(alg)?;
    let d = v.vdim;
    // <h . phi, x> = <phi, S(h) . x>: the dual action is the transpose of
    // the antipode action
    let mut dual_action = Vec::with_capacity(alg.dim);
    for i in 0..alg.dim {
        let m = v.apply_elem(&alg.antipode_elem(&alg.basis_elem(i)))?;
        let mut t = Matrix::zero(d, d);
        for r in 0..d {
            for c in 0..d {
                t.set(r, c, m.get(c, r).clone());
            }
        }
        dual_action.push(t);
    }
    let dual = ModuleAction::new(alg, dual_action, &format!("dual({})", v.label))?;

    // ev(phi (x) x) = phi(alpha . x), coev(1) = sum beta . v_i (x) v^i
    let alpha_act = v.apply_elem(&alg.alpha)?;
    let beta_act = v.apply_elem(&alg.beta)?;
    let mut ev = Matrix::zero(1, d * d);
    for i in 0..d {
        for j in 0..d {
            ev.set(0, i * d + j, alpha_act.get(i, j).clone());
        }
    }
    let mut coev = Matrix::zero(d * d, 1);
    for j in 0..d {
        for i in 0..d {
            coev.set(j * d + i, 0, beta_act.get(j, i).clone());
        }
    }

    // zig-zags
    let assoc = associator(alg, v, &dual, v)?;
    let id_v = Matrix::identity(d);
    let z1 = kron(&id_v, &ev)
        .mul(&assoc)?
        .mul(&kron(&coev, &id_v))?;
    if z1 != id_v {
        return Err(Error::InvalidModule(format!(
            "{}: first rigidity zig-zag fails",
            v.label
        )));
    }
    let assoc_inv = associator_inv(alg, &dual, v, &dual)?;
    let z2 = kron(&ev, &id_v)
        .mul(&assoc_inv)?
        .mul(&kron(&id_v, &coev))?;
    if z2 != id_v {
        return Err(Error::InvalidModule(format!(
            "{}: second rigidity zig-zag fails",
            v.label
        )));
    }
    Ok((dual, ev, coev))
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zero(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.get(i, j);
            if aij.is_zero() {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    let bkl = b.get(k, l);
                    if !bkl.is_zero() {
                        out.set(
                            i * b.rows + k,
                            j * b.cols + l,
                            aij.checked_mul(bkl).expect("field"),
                        );
                    }
                }
            }
        }
    }
    out
}

/// Associativity constraint (U (x) V) (x) W -> U (x) (V (x) W): the action of
/// the reassociator legs on the three factors.
pub fn associator(
    alg: &AlgebraPresentation,
    u: &ModuleAction,
    v: &ModuleAction,
    w: &ModuleAction,
) -> Result<Matrix> {
    reassociator_action(&alg.phi, u, v, w)
}

pub fn associator_inv(
    alg: &AlgebraPresentation,
    u: &ModuleAction,
    v: &ModuleAction,
    w: &ModuleAction,
) -> Result<Matrix> {
    reassociator_action(&alg.phi_inv, u, v, w)
}

fn reassociator_action(
    phi: &TensorElement,
    u: &ModuleAction,
    v: &ModuleAction,
    w: &ModuleAction,
) -> Result<Matrix> {
    let dim = u.vdim * v.vdim * w.vdim;
    let mut out = Matrix::zero(dim, dim);
    let sp = SparseTensor::from_dense(phi);
    for (&key, coeff) in &sp.entries {
        let idx = sp.unflatten(key);
        let m = kron(&kron(&u.action[idx[0]], &v.action[idx[1]]), &w.action[idx[2]]);
        for r in 0..dim {
            for c in 0..dim {
                let x = m.get(r, c);
                if !x.is_zero() {
                    let acc = out.get(r, c).checked_add(&x.checked_mul(coeff)?)?;
                    out.set(r, c, acc);
                }
            }
        }
    }
    Ok(out)
}

/// Braiding V (x) W -> W (x) V from an R-matrix: v (x) w -> R^2 w (x) R^1 v.
pub fn braiding(
    _alg: &AlgebraPresentation,
    r: &TensorElement,
    v: &ModuleAction,
    w: &ModuleAction,
) -> Result<Matrix> {
    let out_dim = w.vdim * v.vdim;
    let in_dim = v.vdim * w.vdim;
    let mut out = Matrix::zero(out_dim, in_dim);
    let sp = SparseTensor::from_dense(r);
    for (&key, coeff) in &sp.entries {
        let idx = sp.unflatten(key);
        let rw = &w.action[idx[1]];
        let rv = &v.action[idx[0]];
        for wp in 0..w.vdim {
            for wi in 0..w.vdim {
                let a = rw.get(wp, wi);
                if a.is_zero() {
                    continue;
                }
                for vp in 0..v.vdim {
                    for vi in 0..v.vdim {
                        let b = rv.get(vp, vi);
                        if b.is_zero() {
                            continue;
                        }
                        let add = coeff.checked_mul(a)?.checked_mul(b)?;
                        let row = wp * v.vdim + vp;
                        let col = vi * w.vdim + wi;
                        let acc = out.get(row, col).checked_add(&add)?;
                        out.set(row, col, acc);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Quantum dimension of a module: the trace of eta's action, cross-checked
/// against the categorical composite ev . braiding . coev.
pub fn quantum_dimension(
    alg: &AlgebraPresentation,
    pack: &DerivedPack,
    r: &TensorElement,
    v: &ModuleAction,
) -> Result<Scalar> {
    let ue = compute_u_eta(alg, pack, r)?;
    let path_trace = v.apply_elem(&ue.eta)?.trace()?;

    let (dual, ev, coev) = dual_ev_coev(alg, v)?;
    let c = braiding(alg, r, v, &dual)?;
    let composite = ev.mul(&c)?.mul(&coev)?;
    let path_categorical = composite.get(0, 0).clone();
    if path_trace != path_categorical {
        return Err(Error::InvalidModule(format!(
            "{}: trace of eta and the categorical composite disagree",
            v.label
        )));
    }
    Ok(path_trace)
}

/// The adjoint action h |> h' = h_1 h' S(h_2) of basis pairs.
pub fn adjoint_action(alg: &AlgebraPresentation, j: usize, l: usize) -> Vec<Scalar> {
    let t = Pipe::start()
        .outer_coords(&alg.basis_elem(j), "h")
        .coproduct(alg, "h", ("h1", "h2"))
        .antipode(alg, "h2")
        .outer_coords(&alg.basis_elem(l), "m")
        .mul_chain(alg, &["h1", "m", "h2"], "out")
        .finish_elem("out");
    t
}

/// Structure constants of the multiplication carried into the module
/// category: a |> b = X^1 a S(x^1 X^2) alpha x^2 X^3_1 b S(x^3 X^3_2),
/// with unit beta. Returned as [a, b, out].
pub fn smash_mult_tensor(alg: &AlgebraPresentation) -> SparseTensor {
    let phi = alg.phi_sparse();
    let phi_inv = alg.phi_inv_sparse();
    Pipe::start()
        .outer(&phi, &["X1", "X2", "X3"])
        .coproduct(alg, "X3", ("X3a", "X3b"))
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .mul(alg, "x1", "X2", "M")
        .antipode(alg, "M")
        .mul(alg, "x3", "X3b", "N")
        .antipode(alg, "N")
        .outer_identity(alg.dim, "a_in", "A")
        .outer_identity(alg.dim, "b_in", "B")
        .outer_coords(&alg.alpha, "al")
        .mul_chain(alg, &["X1", "A", "M", "al", "x2", "X3a", "B", "N"], "out")
        .finish(&["a_in", "b_in", "out"])
}

/// Right coaction on the base algebra placing it in the double's module
/// category: h -> h_(0) (x) h_(1) with
/// h_(0) = x^1 qL^2 y^2_2 h_2 g^2 S(x^2 y^3_1) and
/// h_(1) = x^3 y^3_2 S^{-1}(qL^1 y^2_1 h_1 g^1) y^1. Returned as
/// [in, out0, out1].
pub fn yd_right_coaction(alg: &AlgebraPresentation, pack: &DerivedPack) -> SparseTensor {
    let phi_inv = alg.phi_inv_sparse();
    Pipe::start()
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .outer(&phi_inv, &["y1", "y2", "y3"])
        .coproduct(alg, "y2", ("y2a", "y2b"))
        .coproduct(alg, "y3", ("y3a", "y3b"))
        .outer_identity(alg.dim, "h_in", "H")
        .coproduct(alg, "H", ("H1", "H2"))
        .outer_dense(&pack.f_inv, &["g1", "g2"])
        .outer_dense(&pack.q_l, &["t1", "t2"])
        .mul(alg, "x2", "y3a", "n")
        .antipode(alg, "n")
        .mul_chain(alg, &["x1", "t2", "y2b", "H2", "g2", "n"], "out0")
        .mul_chain(alg, &["t1", "y2a", "H1", "g1"], "m")
        .antipode_inv(alg, "m")
        .mul_chain(alg, &["x3", "y3b", "m", "y1"], "out1")
        .finish(&["h_in", "out0", "out1"])
}

/// Left coaction h -> h_(-1) (x) h_(0) with
/// h_(-1) = X^1 Y^1_1 h_1 g^1 S(q^2 Y^2_2) Y^3 and
/// h_(0) = X^2 Y^1_2 h_2 g^2 S(X^3 q^1 Y^2_1). Returned as [in, out_m1, out_0].
pub fn yd_left_coaction(alg: &AlgebraPresentation, pack: &DerivedPack) -> SparseTensor {
    let phi = alg.phi_sparse();
    Pipe::start()
        .outer(&phi, &["X1", "X2", "X3"])
        .outer(&phi, &["Y1", "Y2", "Y3"])
        .coproduct(alg, "Y1", ("Y1a", "Y1b"))
        .coproduct(alg, "Y2", ("Y2a", "Y2b"))
        .outer_identity(alg.dim, "h_in", "H")
        .coproduct(alg, "H", ("H1", "H2"))
        .outer_dense(&pack.f_inv, &["g1", "g2"])
        .outer_dense(&pack.q_r, &["q1", "q2"])
        .mul(alg, "q2", "Y2b", "w")
        .antipode(alg, "w")
        .mul_chain(alg, &["X1", "Y1a", "H1", "g1", "w", "Y3"], "out_m1")
        .mul_chain(alg, &["X3", "q1", "Y2a"], "v")
        .antipode(alg, "v")
        .mul_chain(alg, &["X2", "Y1b", "H2", "g2", "v"], "out_0")
        .finish(&["h_in", "out_m1", "out_0"])
}

/// Alternate closed form of the left coaction:
/// (X^1 (x) X^2) Delta(Y^1 h S(Y^2)) U (Y^3 (x) S(X^3)).
pub fn yd_left_coaction_alt(alg: &AlgebraPresentation, pack: &DerivedPack) -> SparseTensor {
    let phi = alg.phi_sparse();
    Pipe::start()
        .outer(&phi, &["X1", "X2", "X3"])
        .outer(&phi, &["Y1", "Y2", "Y3"])
        .outer_identity(alg.dim, "h_in", "H")
        .antipode(alg, "Y2")
        .mul_chain(alg, &["Y1", "H", "Y2"], "arg")
        .coproduct(alg, "arg", ("a1", "a2"))
        .outer_dense(&pack.big_u, &["u1", "u2"])
        .antipode(alg, "X3")
        .mul_chain(alg, &["X1", "a1", "u1", "Y3"], "out_m1")
        .mul_chain(alg, &["X2", "a2", "u2", "X3"], "out_0")
        .finish(&["h_in", "out_m1", "out_0"])
}

/// The canonical action of the double on its base algebra, assembled from
/// the rewritten form
/// (phi bowtie h) |> h' = <phi, S^{-1}(qL^1 (Y^1_2 y^2 (h |> h') S(Y^2 y^3))_1 U^1 Y^3) Y^1_1 y^1>
///                        qL^2 (Y^1_2 y^2 (h |> h') S(Y^2 y^3))_2 U^2.
pub fn schrodinger_action(d: &DoublePresentation) -> Result<ModuleAction> {
    let kernel = schrodinger_kernel(&d.source, &d.source_pack);
    action_from_kernel(d, &kernel, "schrodinger")
}

/// Same action, assembled from the unrewritten formula. Slower; exists so
/// the two transcriptions can be compared exactly.
pub fn schrodinger_action_direct(d: &DoublePresentation) -> Result<ModuleAction> {
    let kernel = schrodinger_kernel_direct(&d.source, &d.source_pack);
    action_from_kernel(d, &kernel, "schrodinger-direct")
}

/// Kernel tensor [x, p, q]: with X the adjoint input, the action pairs the
/// functional against leg p and outputs leg q.
fn schrodinger_kernel(h: &AlgebraPresentation, pack: &DerivedPack) -> SparseTensor {
    let phi = h.phi_sparse();
    let phi_inv = h.phi_inv_sparse();
    Pipe::start()
        .outer(&phi, &["Y1", "Y2", "Y3"])
        .coproduct(h, "Y1", ("Y1a", "Y1b"))
        .outer(&phi_inv, &["y1", "y2", "y3"])
        .mul(h, "Y2", "y3", "W")
        .antipode(h, "W")
        .outer_identity(h.dim, "x_in", "X")
        .mul(h, "Y1b", "y2", "V")
        .mul_chain(h, &["V", "X", "W"], "E")
        .coproduct(h, "E", ("E1", "E2"))
        .outer_dense(&pack.big_u, &["u1", "u2"])
        .mul(h, "E1", "u1", "E1b")
        .mul(h, "E2", "u2", "E2b")
        .outer_dense(&pack.q_l, &["t1", "t2"])
        .mul_chain(h, &["t1", "E1b", "Y3"], "P0")
        .antipode_inv(h, "P0")
        .mul_chain(h, &["P0", "Y1a", "y1"], "P")
        .mul(h, "t2", "E2b", "Q")
        .finish(&["x_in", "P", "Q"])
}

/// Kernel straight from the unrewritten action formula
/// (phi bowtie h) |> h' = <phi, q^2 x^3 y^3_2 S^{-1}(qL^1 y^2_1 (h|>h')_1 g^1) y^1>
///   q^1_1 x^1 qL^2 y^2_2 (h|>h')_2 g^2 S(q^1_2 x^2 y^3_1).
pub(crate) fn schrodinger_kernel_direct(
    h: &AlgebraPresentation,
    pack: &DerivedPack,
) -> SparseTensor {
    let phi_inv = h.phi_inv_sparse();
    Pipe::start()
        .outer_dense(&pack.q_r, &["q1", "q2"])
        .coproduct(h, "q1", ("q1a", "q1b"))
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .outer(&phi_inv, &["y1", "y2", "y3"])
        .coproduct(h, "y2", ("y2a", "y2b"))
        .coproduct(h, "y3", ("y3a", "y3b"))
        .outer_identity(h.dim, "x_in", "X")
        .coproduct(h, "X", ("X1", "X2"))
        .outer_dense(&pack.f_inv, &["g1", "g2"])
        .outer_dense(&pack.q_l, &["t1", "t2"])
        .mul_chain(h, &["t1", "y2a", "X1", "g1"], "T")
        .antipode_inv(h, "T")
        .mul_chain(h, &["q2", "x3", "y3b", "T", "y1"], "P")
        .mul_chain(h, &["q1b", "x2", "y3a"], "N")
        .antipode(h, "N")
        .mul_chain(h, &["q1a", "x1", "t2", "y2b", "X2", "g2", "N"], "Q")
        .finish(&["x_in", "P", "Q"])
}

/// Same action through the coaction-and-transfer route:
/// (phi bowtie h) acts on m as <phi, q^2 (h |> m)_(1)> q^1 |> (h |> m)_(0).
pub fn schrodinger_action_via_coaction(d: &DoublePresentation) -> Result<ModuleAction> {
    let h = &d.source;
    let pack = &d.source_pack;
    let coact = yd_right_coaction(h, pack);
    // kernel [x, p, q] = sum over coaction legs of q^1 |> out0 tagged by the
    // pairing leg q^2 out1
    let q_r = SparseTensor::from_dense(&pack.q_r);
    let kernel = Pipe::start()
        .outer(&coact, &["x_in", "o0", "o1"])
        .outer(&q_r, &["q1", "q2"])
        .mul(h, "q2", "o1", "P")
        .coproduct(h, "q1", ("q1a", "q1b"))
        .antipode(h, "q1b")
        .mul_chain(h, &["q1a", "o0", "q1b"], "Q")
        .finish(&["x_in", "P", "Q"]);
    action_from_kernel(d, &kernel, "schrodinger-via-coaction")
}

pub(crate) fn action_from_kernel(
    d: &DoublePresentation,
    kernel: &SparseTensor,
    label: &str,
) -> Result<ModuleAction> {
    let h = &d.source;
    let n = h.dim;
    let n2 = n * n;
    // reorganize the kernel into per-(x, p) columns
    let mut by_x_p: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
    for (&key, coeff) in &kernel.entries {
        let idx = kernel.unflatten(key);
        by_x_p[idx[0] * n + idx[1]].push((idx[2], coeff.clone()));
    }
    let mut action = vec![Matrix::zero(n, n); n2];
    for j in 0..n {
        for l in 0..n {
            let adj = adjoint_action(h, j, l);
            for (x, cx) in adj.iter().enumerate() {
                if cx.is_zero() {
                    continue;
                }
                for i in 0..n {
                    for &(q, ref cq) in &by_x_p[x * n + i] {
                        let target = &mut action[pair_index(n, i, j)];
                        let v = target.get(q, l).checked_add(&cx.checked_mul(cq)?)?;
                        target.set(q, l, v);
                    }
                }
            }
        }
    }
    ModuleAction::new(&d.inner, action, label)
}

/// Module-algebra compatibility of the canonical action with the carried
/// multiplication: chi |> (a . b) = sum (chi_1 |> a) . (chi_2 |> b) and
/// chi |> beta = eps_D(chi) beta, for every double basis chi.
pub fn module_algebra_report(
    d: &DoublePresentation,
    act: &ModuleAction,
) -> Result<crate::algebra::ValidationReport> {
    let h = &d.source;
    let n = h.dim;
    let smash = smash_mult_tensor(h);
    let mut smash_rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
    for (&key, coeff) in &smash.entries {
        let idx = smash.unflatten(key);
        smash_rows[idx[0] * n + idx[1]].push((idx[2], coeff.clone()));
    }
    let smash_elems = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai.checked_mul(bj).expect("field");
                for &(k, ref m) in &smash_rows[i * n + j] {
                    out[k] = out[k]
                        .checked_add(&c.checked_mul(m).expect("field"))
                        .expect("field");
                }
            }
        }
        out
    };

    let mut report = crate::algebra::ValidationReport { checks: Vec::new() };
    let n2 = n * n;

    // unit law
    let mut witness = None;
    for chi in 0..n2 {
        let lhs = act.action[chi].apply(&h.beta)?;
        let rhs = h.scale_elem(&h.beta, &d.inner.counit[chi]);
        if !h.elems_equal(&lhs, &rhs) {
            witness = Some(d.inner.basis_labels[chi].clone());
            break;
        }
    }
    report.checks.push(crate::algebra::AxiomCheck {
        name: "module-algebra-unit".into(),
        passed: witness.is_none(),
        witness,
    });

    // multiplicativity against the coproduct of the double
    let mut witness = None;
    'outer: for chi in 0..n2 {
        let dchi = d.inner.coproduct_sparse(&d.inner.basis_elem(chi));
        for a in 0..n {
            for b in 0..n {
                let ea = h.basis_elem(a);
                let eb = h.basis_elem(b);
                let lhs = act.action[chi].apply(&smash_elems(&ea, &eb))?;
                let mut rhs = vec![Scalar::zero(); n];
                for (&key, coeff) in &dchi.entries {
                    let idx = dchi.unflatten(key);
                    let left = act.action[idx[0]].apply(&ea)?;
                    let right = act.action[idx[1]].apply(&eb)?;
                    let prod = smash_elems(&left, &right);
                    for (k, p) in prod.iter().enumerate() {
                        if !p.is_zero() {
                            rhs[k] = rhs[k].checked_add(&coeff.checked_mul(p)?)?;
                        }
                    }
                }
                if !h.elems_equal(&lhs, &rhs) {
                    witness = Some(format!(
                        "chi={}, a={}, b={}",
                        d.inner.basis_labels[chi], h.basis_labels[a], h.basis_labels[b]
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.checks.push(crate::algebra::AxiomCheck {
        name: "module-algebra-multiplicative".into(),
        passed: witness.is_none(),
        witness,
    });

    Ok(report)
}

/// Closed form of the double's u element: sum_i beta -> sbar^{-1}(e^i)
/// bowtie e_i, i.e. coordinates S^{-1}(e_k beta) at the dual leg.
pub fn double_u_closed_form(d: &DoublePresentation) -> Vec<Scalar> {
    let h = &d.source;
    let n = h.dim;
    let mut out = vec![Scalar::zero(); n * n];
    for k in 0..n {
        let v = h.antipode_inv_elem(&h.mul_elems(&h.basis_elem(k), &h.beta));
        for (i, vi) in v.iter().enumerate() {
            out[pair_index(n, k, i)] = vi.clone();
        }
    }
    out
}

/// Closed form of the double's eta element:
/// sum_i beta -> sbar^{-1}(e^i) bowtie e_i S^{-1}(alpha) beta.
pub fn double_eta_closed_form(d: &DoublePresentation) -> Vec<Scalar> {
    let h = &d.source;
    let n = h.dim;
    let tail = h.mul_elems(&h.antipode_inv_elem(&h.alpha), &h.beta);
    let mut out = vec![Scalar::zero(); n * n];
    for k in 0..n {
        let v = h.antipode_inv_elem(&h.mul_elems(&h.basis_elem(k), &h.beta));
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let prod = h.mul_elems(&h.basis_elem(i), &tail);
            for (m, pm) in prod.iter().enumerate() {
                if !pm.is_zero() {
                    let idx = pair_index(n, k, m);
                    out[idx] = out[idx]
                        .checked_add(&vi.checked_mul(pm).expect("field"))
                        .expect("field");
                }
            }
        }
    }
    out
}

/// Tr(h -> S^{-2}(S(beta) alpha h beta S(alpha))).
pub fn qdim_closed_form(h: &AlgebraPresentation) -> Result<Scalar> {
    h.ensure_valid()?;
    let left = h.mul_elems(&h.antipode_elem(&h.beta), &h.alpha);
    let right = h.mul_elems(&h.beta, &h.antipode_elem(&h.alpha));
    let mut endo = Matrix::zero(h.dim, h.dim);
    for j in 0..h.dim {
        let v = h.mul_many(&[&left, &h.basis_elem(j), &right]);
        let v = h.antipode_inv_elem(&h.antipode_inv_elem(&v));
        for r in 0..h.dim {
            endo.set(r, j, v[r].clone());
        }
    }
    endo.trace()
}

/// The u/eta data of the double itself.
pub fn double_u_eta(d: &DoublePresentation) -> Result<UElements> {
    let pack = compute_pack(&d.inner)?;
    compute_u_eta(&d.inner, &pack, &d.r_matrix)
}

/// Trace of eta acting through the canonical module structure on the base.
pub fn qdim_schrodinger(d: &DoublePresentation) -> Result<Scalar> {
    let ue = double_u_eta(d)?;
    let act = schrodinger_action(d)?;
    act.apply_elem(&ue.eta)?.trace()
}

/// Trace of left multiplication by eta on the double itself.
pub fn qdim_double_regular(d: &DoublePresentation) -> Result<Scalar> {
    let ue = double_u_eta(d)?;
    d.inner.left_mult_matrix(&ue.eta).trace()
}

/// The three quantum-dimension computations with their agreement flag.
#[derive(Debug, Clone)]
pub struct QdimReport {
    pub closed_form: Scalar,
    pub schrodinger: Scalar,
    pub double_regular: Scalar,
    pub equal: bool,
}

pub fn qdim_triple(d: &DoublePresentation) -> Result<QdimReport> {
    let closed_form = qdim_closed_form(&d.source)?;
    let ue = double_u_eta(d)?;
    let act = schrodinger_action(d)?;
    let schrodinger = act.apply_elem(&ue.eta)?.trace()?;
    let double_regular = d.inner.left_mult_matrix(&ue.eta).trace()?;
    let equal = closed_form == schrodinger && schrodinger == double_regular;
    Ok(QdimReport {
        closed_form,
        schrodinger,
        double_regular,
        equal,
    })
}
