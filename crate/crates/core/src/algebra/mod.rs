//! The quasi-Hopf algebra data model: structure-constant presentations,
//! element arithmetic, opposite/co-opposite constructions, validation and
//! the derived gauge elements.

mod calc;
mod derived;
mod json;
mod validate;

pub use calc::Pipe;
pub use derived::{compute_pack, compute_pq, compute_twist, identity_suite, DerivedPack};
pub(crate) use derived::omega_pipe;
pub use json::{parse_presentation, presentation_to_json, scalar_from_json, scalar_to_json};
pub use validate::{AxiomCheck, ValidationReport};

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseTensor, TensorElement};
use crate::scalar::{FieldContext, Scalar};

/// A linear functional on the algebra, in dual-basis coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct DualElement {
    pub coords: Vec<Scalar>,
}

impl DualElement {
    pub fn new(coords: Vec<Scalar>) -> Self {
        DualElement { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

/// Raw input for a presentation, before caches are built.
#[derive(Debug, Clone)]
pub struct PresentationData {
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub field: FieldContext,
    /// arity 3; `mult[i][j][k]` is the coefficient of `e_k` in `e_i e_j`.
    pub mult: TensorElement,
    pub unit: Vec<Scalar>,
    /// arity 3; `comult[i][j][k]` is the coefficient of `e_j (x) e_k` in `Delta(e_i)`.
    pub comult: TensorElement,
    pub counit: Vec<Scalar>,
    pub phi: TensorElement,
    /// Optional cached inverse of the reassociator; computed when absent.
    pub phi_inv: Option<TensorElement>,
    /// Column `c` holds the coordinates of `S(e_c)`.
    pub antipode: Matrix,
    pub alpha: Vec<Scalar>,
    pub beta: Vec<Scalar>,
    pub label: String,
}

/// A finite-dimensional quasi-Hopf algebra given by structure constants.
#[derive(Debug)]
pub struct AlgebraPresentation {
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub field: FieldContext,
    pub mult: TensorElement,
    pub unit: Vec<Scalar>,
    pub comult: TensorElement,
    pub counit: Vec<Scalar>,
    pub phi: TensorElement,
    pub phi_inv: TensorElement,
    pub antipode: Matrix,
    pub antipode_inv: Matrix,
    pub alpha: Vec<Scalar>,
    pub beta: Vec<Scalar>,
    pub label: String,

    // sparse row caches for the hot contraction loops
    pub(crate) mult_rows: Vec<Vec<(usize, Scalar)>>,
    pub(crate) comult_rows: Vec<Vec<(usize, usize, Scalar)>>,
    validity: OnceLock<bool>,
}

impl Clone for AlgebraPresentation {
    fn clone(&self) -> Self {
        AlgebraPresentation {
            dim: self.dim,
            basis_labels: self.basis_labels.clone(),
            field: self.field,
            mult: self.mult.clone(),
            unit: self.unit.clone(),
            comult: self.comult.clone(),
            counit: self.counit.clone(),
            phi: self.phi.clone(),
            phi_inv: self.phi_inv.clone(),
            antipode: self.antipode.clone(),
            antipode_inv: self.antipode_inv.clone(),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            label: self.label.clone(),
            mult_rows: self.mult_rows.clone(),
            comult_rows: self.comult_rows.clone(),
            validity: self.validity.clone(),
        }
    }
}

impl AlgebraPresentation {
    pub fn from_data(data: PresentationData) -> Result<Self> {
        let n = data.dim;
        if n == 0 {
            return Err(Error::ShapeMismatch("dimension must be positive".into()));
        }
        let shape_err = |what: &str| Error::ShapeMismatch(format!("{what} has wrong shape"));
        if data.basis_labels.len() != n {
            return Err(shape_err("basis_labels"));
        }
        for (name, t) in [
            ("mult", &data.mult),
            ("comult", &data.comult),
            ("phi", &data.phi),
        ] {
            if t.dim != n || t.arity != 3 {
                return Err(shape_err(name));
            }
        }
        for (name, v) in [
            ("unit", &data.unit),
            ("counit", &data.counit),
            ("alpha", &data.alpha),
            ("beta", &data.beta),
        ] {
            if v.len() != n {
                return Err(shape_err(name));
            }
        }
        if data.antipode.rows != n || data.antipode.cols != n {
            return Err(shape_err("antipode"));
        }

        let coerce_vec = |v: &[Scalar]| -> Result<Vec<Scalar>> {
            v.iter().map(|s| data.field.coerce(s)).collect()
        };
        let coerce_tensor = |t: &TensorElement| -> Result<TensorElement> {
            Ok(TensorElement {
                dim: t.dim,
                arity: t.arity,
                coords: coerce_vec(&t.coords)?,
                variance: t.variance.clone(),
            })
        };

        let mult = coerce_tensor(&data.mult)?;
        let comult = coerce_tensor(&data.comult)?;
        let phi = coerce_tensor(&data.phi)?;
        let unit = coerce_vec(&data.unit)?;
        let counit = coerce_vec(&data.counit)?;
        let alpha = coerce_vec(&data.alpha)?;
        let beta = coerce_vec(&data.beta)?;
        let antipode = Matrix {
            rows: n,
            cols: n,
            entries: coerce_vec(&data.antipode.entries)?,
        };
        let antipode_inv = antipode
            .inverse()
            .map_err(|_| Error::InvalidPresentation("antipode matrix is singular".into()))?;

        let mut mult_rows = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = mult.get(&[i, j, k]);
                    if !c.is_zero() {
                        mult_rows[i * n + j].push((k, c.clone()));
                    }
                }
            }
        }
        let mut comult_rows = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = comult.get(&[i, j, k]);
                    if !c.is_zero() {
                        comult_rows[i].push((j, k, c.clone()));
                    }
                }
            }
        }

        let mut alg = AlgebraPresentation {
            dim: n,
            basis_labels: data.basis_labels,
            field: data.field,
            mult,
            unit,
            comult,
            counit,
            phi,
            phi_inv: TensorElement::zero(n, 3),
            antipode,
            antipode_inv,
            alpha,
            beta,
            label: data.label,
            mult_rows,
            comult_rows,
            validity: OnceLock::new(),
        };

        let phi_inv = match data.phi_inv {
            Some(t) => coerce_tensor(&t)?,
            None => alg.invert_triple_tensor(&alg.phi)?,
        };
        // verify the (given or computed) inverse on both sides
        let phi_sp = SparseTensor::from_dense(&alg.phi);
        let inv_sp = SparseTensor::from_dense(&phi_inv);
        let unit3 = alg.unit_tensor(3);
        if !alg.mul_tensors(&phi_sp, &inv_sp).equals(&unit3)
            || !alg.mul_tensors(&inv_sp, &phi_sp).equals(&unit3)
        {
            return Err(Error::InvalidPresentation(
                "reassociator inverse does not multiply back to the unit".into(),
            ));
        }
        alg.phi_inv = phi_inv;
        Ok(alg)
    }

    /// Left multiplication matrix of an element: column `j` is `a * e_j`.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zero(n, n);
        for j in 0..n {
            let col = self.mul_elems(a, &self.basis_elem(j));
            for r in 0..n {
                if !col[r].is_zero() {
                    m.set(r, j, col[r].clone());
                }
            }
        }
        m
    }

    /// Right multiplication matrix: column `j` is `e_j * a`.
    pub fn right_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zero(n, n);
        for j in 0..n {
            let col = self.mul_elems(&self.basis_elem(j), a);
            for r in 0..n {
                if !col[r].is_zero() {
                    m.set(r, j, col[r].clone());
                }
            }
        }
        m
    }

    /// Invert an element of H^{otimes 3} by solving against its left
    /// multiplication operator. Only used for presentation-sized tensors.
    fn invert_triple_tensor(&self, t: &TensorElement) -> Result<TensorElement> {
        let n = self.dim;
        let n3 = n * n * n;
        let sp = SparseTensor::from_dense(t);
        let mut lm = Matrix::zero(n3, n3);
        for (&key, coeff) in &sp.entries {
            let idx = sp.unflatten(key);
            // expand coeff * (L_{idx0} (x) L_{idx1} (x) L_{idx2})
            for c0 in 0..n {
                for &(r0, ref m0) in &self.mult_rows[idx[0] * n + c0] {
                    let c_m0 = coeff.checked_mul(m0)?;
                    for c1 in 0..n {
                        for &(r1, ref m1) in &self.mult_rows[idx[1] * n + c1] {
                            let c_m01 = c_m0.checked_mul(m1)?;
                            for c2 in 0..n {
                                for &(r2, ref m2) in &self.mult_rows[idx[2] * n + c2] {
                                    let v = c_m01.checked_mul(m2)?;
                                    let row = (r0 * n + r1) * n + r2;
                                    let col = (c0 * n + c1) * n + c2;
                                    let cur = lm.get(row, col).checked_add(&v)?;
                                    lm.set(row, col, cur);
                                }
                            }
                        }
                    }
                }
            }
        }
        let rhs = self.unit_tensor(3).to_dense().coords;
        match lm.solve_linear(&rhs)? {
            Some(x) => Ok(TensorElement::from_coords(n, 3, x)),
            None => Err(Error::InvalidPresentation(
                "reassociator is not invertible".into(),
            )),
        }
    }

    pub fn basis_elem(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    pub fn dual_basis_elem(&self, i: usize) -> DualElement {
        DualElement::new(self.basis_elem(i))
    }

    pub fn zero_elem(&self) -> Vec<Scalar> {
        vec![Scalar::zero(); self.dim]
    }

    pub fn mul_elems(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        assert_eq!(a.len(), n, "element length mismatch");
        assert_eq!(b.len(), n, "element length mismatch");
        let mut out = vec![Scalar::zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai.checked_mul(bj).expect("field mismatch");
                for &(k, ref m) in &self.mult_rows[i * n + j] {
                    out[k] = out[k]
                        .checked_add(&ab.checked_mul(m).expect("field mismatch"))
                        .expect("field mismatch");
                }
            }
        }
        out
    }

    pub fn mul_many(&self, factors: &[&[Scalar]]) -> Vec<Scalar> {
        let mut acc = self.unit.clone();
        for f in factors {
            acc = self.mul_elems(&acc, f);
        }
        acc
    }

    pub fn scale_elem(&self, a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
        a.iter()
            .map(|x| x.checked_mul(s).expect("field mismatch"))
            .collect()
    }

    pub fn add_elems(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.checked_add(y).expect("field mismatch"))
            .collect()
    }

    pub fn sub_elems(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.checked_sub(y).expect("field mismatch"))
            .collect()
    }

    pub fn elems_equal(&self, a: &[Scalar], b: &[Scalar]) -> bool {
        a.iter().zip(b).all(|(x, y)| x == y)
    }

    pub fn counit_elem(&self, a: &[Scalar]) -> Scalar {
        assert_eq!(a.len(), self.dim, "element length mismatch");
        let mut out = Scalar::zero();
        for (i, ai) in a.iter().enumerate() {
            if !ai.is_zero() {
                out = out
                    .checked_add(&ai.checked_mul(&self.counit[i]).expect("field mismatch"))
                    .expect("field mismatch");
            }
        }
        out
    }

    pub fn antipode_elem(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.antipode.apply(a).expect("shape checked")
    }

    pub fn antipode_inv_elem(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.antipode_inv.apply(a).expect("shape checked")
    }

    /// Coproduct of an element as a dense arity-2 tensor.
    pub fn coproduct_elem(&self, a: &[Scalar]) -> TensorElement {
        self.coproduct_sparse(a).to_dense()
    }

    pub(crate) fn coproduct_sparse(&self, a: &[Scalar]) -> SparseTensor {
        assert_eq!(a.len(), self.dim, "element length mismatch");
        let mut out = SparseTensor::uniform(self.dim, 2);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for &(j, k, ref c) in &self.comult_rows[i] {
                out.add_at(&[j, k], ai.checked_mul(c).expect("field mismatch"));
            }
        }
        out
    }

    /// Iterated coproduct with explicit parenthesization: `pattern` lists, in
    /// order, the slot each successive coproduct is applied to. For example
    /// `[0, 0]` builds h_(1,1) (x) h_(1,2) (x) h_2 and `[0, 1]` builds
    /// h_1 (x) h_(2,1) (x) h_(2,2).
    pub fn coproduct_iterated(&self, a: &[Scalar], pattern: &[usize]) -> TensorElement {
        let mut t = self.elem_sparse(a);
        for &slot in pattern {
            t = self.coproduct_slot(&t, slot);
        }
        t.to_dense()
    }

    pub(crate) fn elem_sparse(&self, a: &[Scalar]) -> SparseTensor {
        let mut out = SparseTensor::uniform(self.dim, 1);
        for (i, ai) in a.iter().enumerate() {
            if !ai.is_zero() {
                out.add_at(&[i], ai.clone());
            }
        }
        out
    }

    pub(crate) fn unit_tensor(&self, arity: usize) -> SparseTensor {
        let mut t = self.elem_sparse(&self.unit);
        for _ in 1..arity {
            t = t.outer(&self.elem_sparse(&self.unit));
        }
        t
    }

    // -- dual-side operations --

    pub fn pair(&self, phi: &DualElement, a: &[Scalar]) -> Scalar {
        assert_eq!(a.len(), self.dim, "element length mismatch");
        assert_eq!(phi.coords.len(), self.dim, "functional length mismatch");
        let mut out = Scalar::zero();
        for (i, ai) in a.iter().enumerate() {
            if !ai.is_zero() && !phi.coords[i].is_zero() {
                out = out
                    .checked_add(&ai.checked_mul(&phi.coords[i]).expect("field mismatch"))
                    .expect("field mismatch");
            }
        }
        out
    }

    /// The counit as an element of the dual.
    pub fn counit_dual(&self) -> DualElement {
        DualElement::new(self.counit.clone())
    }

    /// Dual coproduct: the coefficient of e^j (x) e^k is phi(e_j e_k).
    pub fn dual_comult(&self, phi: &DualElement) -> TensorElement {
        let n = self.dim;
        let mut t = TensorElement::zero(n, 2);
        t.variance = vec![crate::linalg::Variance::Dual; 2];
        for j in 0..n {
            for k in 0..n {
                for &(m, ref c) in &self.mult_rows[j * n + k] {
                    if !phi.coords[m].is_zero() {
                        let v = t
                            .get(&[j, k])
                            .checked_add(&c.checked_mul(&phi.coords[m]).unwrap())
                            .unwrap();
                        t.set(&[j, k], v);
                    }
                }
            }
        }
        t
    }

    /// Convolution product on the dual: (phi psi)(h) = phi(h_1) psi(h_2).
    /// Quasi-associative only.
    pub fn convolve(&self, phi: &DualElement, psi: &DualElement) -> DualElement {
        let mut out = vec![Scalar::zero(); self.dim];
        for (m, slot) in out.iter_mut().enumerate() {
            for &(j, k, ref c) in &self.comult_rows[m] {
                if !phi.coords[j].is_zero() && !psi.coords[k].is_zero() {
                    let v = c
                        .checked_mul(&phi.coords[j])
                        .unwrap()
                        .checked_mul(&psi.coords[k])
                        .unwrap();
                    *slot = slot.checked_add(&v).unwrap();
                }
            }
        }
        DualElement::new(out)
    }

    /// The coalgebra antimorphism dual to S: (sbar phi)(h) = phi(S(h)).
    pub fn sbar(&self, phi: &DualElement) -> DualElement {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, slot) in out.iter_mut().enumerate() {
            // phi(S(e_i)) with S(e_i) in column i
            let mut acc = Scalar::zero();
            for k in 0..n {
                let m = self.antipode.get(k, i);
                if !m.is_zero() && !phi.coords[k].is_zero() {
                    acc = acc
                        .checked_add(&m.checked_mul(&phi.coords[k]).unwrap())
                        .unwrap();
                }
            }
            *slot = acc;
        }
        DualElement::new(out)
    }

    pub fn sbar_inv(&self, phi: &DualElement) -> DualElement {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = Scalar::zero();
            for k in 0..n {
                let m = self.antipode_inv.get(k, i);
                if !m.is_zero() && !phi.coords[k].is_zero() {
                    acc = acc
                        .checked_add(&m.checked_mul(&phi.coords[k]).unwrap())
                        .unwrap();
                }
            }
            *slot = acc;
        }
        DualElement::new(out)
    }

    /// Left harpoon: <h -> phi, h'> = phi(h' h).
    pub fn harpoon_left(&self, h: &[Scalar], phi: &DualElement) -> DualElement {
        let mut out = vec![Scalar::zero(); self.dim];
        for (k, slot) in out.iter_mut().enumerate() {
            let prod = self.mul_elems(&self.basis_elem(k), h);
            *slot = self.pair(phi, &prod);
        }
        DualElement::new(out)
    }

    /// Right harpoon: <phi <- h, h'> = phi(h h').
    pub fn harpoon_right(&self, phi: &DualElement, h: &[Scalar]) -> DualElement {
        let mut out = vec![Scalar::zero(); self.dim];
        for (k, slot) in out.iter_mut().enumerate() {
            let prod = self.mul_elems(h, &self.basis_elem(k));
            *slot = self.pair(phi, &prod);
        }
        DualElement::new(out)
    }

    // -- validation plumbing --

    pub fn validate(&self) -> ValidationReport {
        validate::validate_presentation(self)
    }

    pub fn is_valid(&self) -> bool {
        *self.validity.get_or_init(|| self.validate().is_valid())
    }

    pub fn ensure_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidPresentation(format!(
                "presentation {:?} fails axiom validation",
                self.label
            )))
        }
    }

    /// Rescale alpha and beta so both have counit 1. Requires
    /// eps(alpha) eps(beta) = 1.
    pub fn normalize_antipode_scalars(&self) -> Result<AlgebraPresentation> {
        let ea = self.counit_elem(&self.alpha);
        let eb = self.counit_elem(&self.beta);
        if ea.checked_mul(&eb)? != Scalar::one() {
            return Err(Error::InvalidPresentation(
                "eps(alpha) eps(beta) != 1, cannot normalize".into(),
            ));
        }
        if ea.is_one() {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        let ea_inv = ea.checked_inv()?;
        out.alpha = self.scale_elem(&self.alpha, &ea_inv);
        out.beta = self.scale_elem(&self.beta, &ea);
        out.validity = OnceLock::new();
        Ok(out)
    }

    /// The opposite-multiplication quasi-Hopf algebra.
    pub fn opposite(&self) -> Result<AlgebraPresentation> {
        self.ensure_valid()?;
        let mult_op = {
            let sp = SparseTensor::from_dense(&self.mult).permute(&[1, 0, 2]);
            sp.to_dense()
        };
        AlgebraPresentation::from_data(PresentationData {
            dim: self.dim,
            basis_labels: self.basis_labels.clone(),
            field: self.field,
            mult: mult_op,
            unit: self.unit.clone(),
            comult: self.comult.clone(),
            counit: self.counit.clone(),
            phi: self.phi_inv.clone(),
            phi_inv: Some(self.phi.clone()),
            antipode: self.antipode_inv.clone(),
            alpha: self.antipode_inv_elem(&self.beta),
            beta: self.antipode_inv_elem(&self.alpha),
            label: format!("{}^op", self.label),
        })
    }

    /// The opposite-comultiplication quasi-Hopf algebra.
    pub fn coopposite(&self) -> Result<AlgebraPresentation> {
        self.ensure_valid()?;
        let comult_cop = SparseTensor::from_dense(&self.comult)
            .permute(&[0, 2, 1])
            .to_dense();
        AlgebraPresentation::from_data(PresentationData {
            dim: self.dim,
            basis_labels: self.basis_labels.clone(),
            field: self.field,
            mult: self.mult.clone(),
            unit: self.unit.clone(),
            comult: comult_cop,
            counit: self.counit.clone(),
            phi: SparseTensor::from_dense(&self.phi_inv)
                .permute(&[2, 1, 0])
                .to_dense(),
            phi_inv: Some(
                SparseTensor::from_dense(&self.phi)
                    .permute(&[2, 1, 0])
                    .to_dense(),
            ),
            antipode: self.antipode_inv.clone(),
            alpha: self.antipode_inv_elem(&self.alpha),
            beta: self.antipode_inv_elem(&self.beta),
            label: format!("{}^cop", self.label),
        })
    }
}

/// Which opposite construction to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OppositeKind {
    Op,
    Cop,
}

pub fn op_cop(h: &AlgebraPresentation, which: OppositeKind) -> Result<AlgebraPresentation> {
    match which {
        OppositeKind::Op => h.opposite(),
        OppositeKind::Cop => h.coopposite(),
    }
}
