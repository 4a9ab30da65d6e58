//! Axiom validation for quasi-Hopf presentations. Every check is exact; a
//! failing check reports one witness basis tuple.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

use super::{AlgebraPresentation, Pipe};

#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn find(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &str, witness: Option<String>) {
        self.checks.push(AxiomCheck {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        });
    }
}

/// Sparse product of two basis elements as an index->coefficient map.
fn basis_product(h: &AlgebraPresentation, a: usize, b: usize) -> BTreeMap<usize, Scalar> {
    h.mult_rows[a * h.dim + b]
        .iter()
        .map(|&(k, ref c)| (k, c.clone()))
        .collect()
}

fn accumulate(
    target: &mut BTreeMap<usize, Scalar>,
    scale: &Scalar,
    row: &[(usize, Scalar)],
) {
    for &(k, ref c) in row {
        let v = scale.checked_mul(c).expect("field mismatch");
        match target.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !v.is_zero() {
                    e.insert(v);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().checked_add(&v).expect("field mismatch");
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

pub(crate) fn validate_presentation(h: &AlgebraPresentation) -> ValidationReport {
    let n = h.dim;
    let mut report = ValidationReport { checks: Vec::new() };
    let label = |i: usize| h.basis_labels[i].clone();

    // associativity of the multiplication on basis triples
    let mut witness = None;
    'assoc: for a in 0..n {
        for b in 0..n {
            let ab = basis_product(h, a, b);
            for c in 0..n {
                let mut lhs: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (&k, coeff) in &ab {
                    accumulate(&mut lhs, coeff, &h.mult_rows[k * n + c]);
                }
                let mut rhs: BTreeMap<usize, Scalar> = BTreeMap::new();
                for &(k, ref coeff) in &h.mult_rows[b * n + c] {
                    accumulate(&mut rhs, coeff, &h.mult_rows[a * n + k]);
                }
                if lhs != rhs {
                    witness = Some(format!("({}, {}, {})", label(a), label(b), label(c)));
                    break 'assoc;
                }
            }
        }
    }
    report.push("associativity", witness);

    // two-sided unit
    let mut witness = None;
    for i in 0..n {
        let e = h.basis_elem(i);
        if !h.elems_equal(&h.mul_elems(&h.unit, &e), &e)
            || !h.elems_equal(&h.mul_elems(&e, &h.unit), &e)
        {
            witness = Some(label(i));
            break;
        }
    }
    report.push("unit", witness);

    // Delta is an algebra map
    let mut witness = None;
    let unit2 = h.unit_tensor(2);
    if !h.coproduct_sparse(&h.unit).equals(&unit2) {
        witness = Some("1".to_string());
    } else {
        'comul: for a in 0..n {
            let da = h.coproduct_sparse(&h.basis_elem(a));
            for b in 0..n {
                let db = h.coproduct_sparse(&h.basis_elem(b));
                let rhs = h.mul_tensors(&da, &db);
                let lhs = h.coproduct_sparse(&h.mul_elems(&h.basis_elem(a), &h.basis_elem(b)));
                if !lhs.equals(&rhs) {
                    witness = Some(format!("({}, {})", label(a), label(b)));
                    break 'comul;
                }
            }
        }
    }
    report.push("comult-homomorphism", witness);

    // eps is an algebra map
    let mut witness = None;
    if h.counit_elem(&h.unit) != Scalar::one() {
        witness = Some("1".to_string());
    } else {
        'counit: for a in 0..n {
            for b in 0..n {
                let lhs = h.counit_elem(&h.mul_elems(&h.basis_elem(a), &h.basis_elem(b)));
                let rhs = h.counit[a].checked_mul(&h.counit[b]).expect("field");
                if lhs != rhs {
                    witness = Some(format!("({}, {})", label(a), label(b)));
                    break 'counit;
                }
            }
        }
    }
    report.push("counit-homomorphism", witness);

    // quasi-coassociativity: (id (x) Delta)Delta(h) = Phi (Delta (x) id)Delta(h) Phi^{-1}
    let phi = h.phi_sparse();
    let phi_inv = h.phi_inv_sparse();
    let mut witness = None;
    for i in 0..n {
        let e = h.basis_elem(i);
        let lhs = {
            let t = h.coproduct_sparse(&e);
            h.coproduct_slot(&t, 1)
        };
        let mid = {
            let t = h.coproduct_sparse(&e);
            h.coproduct_slot(&t, 0)
        };
        let rhs = h.mul_tensor_chain(&[&phi, &mid, &phi_inv]);
        if let Some(w) = lhs.first_difference(&rhs) {
            witness = Some(format!("h={}, slot {:?}", label(i), w));
            break;
        }
    }
    report.push("quasi-coassociativity", witness);

    // counit laws for the coproduct
    let mut witness = None;
    for i in 0..n {
        let e = h.basis_elem(i);
        let t = h.coproduct_sparse(&e);
        let right = h.counit_slot(&t, 1);
        let left = h.counit_slot(&t, 0);
        let expect = h.elem_sparse(&e);
        if !right.equals(&expect) || !left.equals(&expect) {
            witness = Some(label(i));
            break;
        }
    }
    report.push("counit-coproduct", witness);

    // pentagon for the reassociator
    let unit1 = h.elem_sparse(&h.unit);
    let lhs = {
        let one_phi = unit1.outer(&phi);
        let mid = h.coproduct_slot(&phi, 1);
        let phi_one = phi.outer(&unit1);
        h.mul_tensor_chain(&[&one_phi, &mid, &phi_one])
    };
    let rhs = {
        let a = h.coproduct_slot(&phi, 2);
        let b = h.coproduct_slot(&phi, 0);
        h.mul_tensors(&a, &b)
    };
    let witness = lhs
        .first_difference(&rhs)
        .map(|w| format!("coordinate {w:?}"));
    report.push("pentagon", witness);

    // counit contractions of the reassociator
    let witness = (!h.counit_slot(&phi, 1).equals(&unit2)).then(|| "middle".to_string());
    report.push("reassociator-counit-middle", witness);
    let witness = (!(h.counit_slot(&phi, 0).equals(&unit2) && h.counit_slot(&phi, 2).equals(&unit2)))
        .then(|| "outer".to_string());
    report.push("reassociator-counit-outer", witness);

    // antipode axioms: S(h_1) alpha h_2 = eps(h) alpha, h_1 beta S(h_2) = eps(h) beta
    let mut witness = None;
    for i in 0..n {
        let e = h.basis_elem(i);
        let got = Pipe::start()
            .outer_coords(&e, "h")
            .coproduct(h, "h", ("h1", "h2"))
            .antipode(h, "h1")
            .outer_coords(&h.alpha, "al")
            .mul_chain(h, &["h1", "al", "h2"], "out")
            .finish_elem("out");
        let expect = h.scale_elem(&h.alpha, &h.counit[i]);
        if !h.elems_equal(&got, &expect) {
            witness = Some(label(i));
            break;
        }
    }
    report.push("antipode-left", witness);

    let mut witness = None;
    for i in 0..n {
        let e = h.basis_elem(i);
        let got = Pipe::start()
            .outer_coords(&e, "h")
            .coproduct(h, "h", ("h1", "h2"))
            .antipode(h, "h2")
            .outer_coords(&h.beta, "be")
            .mul_chain(h, &["h1", "be", "h2"], "out")
            .finish_elem("out");
        let expect = h.scale_elem(&h.beta, &h.counit[i]);
        if !h.elems_equal(&got, &expect) {
            witness = Some(label(i));
            break;
        }
    }
    report.push("antipode-right", witness);

    // X^1 beta S(X^2) alpha X^3 = 1 and S(x^1) alpha x^2 beta S(x^3) = 1
    let first = Pipe::start()
        .outer(&phi, &["x1", "x2", "x3"])
        .antipode(h, "x2")
        .outer_coords(&h.beta, "be")
        .outer_coords(&h.alpha, "al")
        .mul_chain(h, &["x1", "be", "x2", "al", "x3"], "out")
        .finish_elem("out");
    let second = Pipe::start()
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .antipode(h, "x1")
        .antipode(h, "x3")
        .outer_coords(&h.alpha, "al")
        .outer_coords(&h.beta, "be")
        .mul_chain(h, &["x1", "al", "x2", "be", "x3"], "out")
        .finish_elem("out");
    let witness = if !h.elems_equal(&first, &h.unit) {
        Some("forward form".to_string())
    } else if !h.elems_equal(&second, &h.unit) {
        Some("inverse form".to_string())
    } else {
        None
    };
    report.push("antipode-zigzag", witness);

    // eps . S = eps
    let mut witness = None;
    for i in 0..n {
        if h.counit_elem(&h.antipode_elem(&h.basis_elem(i))) != h.counit[i] {
            witness = Some(label(i));
            break;
        }
    }
    report.push("counit-antipode", witness);

    // eps(alpha) eps(beta) = 1
    let ea = h.counit_elem(&h.alpha);
    let eb = h.counit_elem(&h.beta);
    let witness = (ea.checked_mul(&eb).expect("field") != Scalar::one())
        .then(|| format!("eps(alpha)={ea}, eps(beta)={eb}"));
    report.push("antipode-normalization", witness);

    // cached inverses really invert
    let unit3 = h.unit_tensor(3);
    let witness = (!(h.mul_tensors(&phi, &phi_inv).equals(&unit3)
        && h.mul_tensors(&phi_inv, &phi).equals(&unit3)))
    .then(|| "Phi * Phi^{-1} != 1".to_string());
    report.push("reassociator-invertible", witness);

    let id = crate::linalg::Matrix::identity(n);
    let witness = (h.antipode.mul(&h.antipode_inv).map(|m| m != id).unwrap_or(true))
        .then(|| "S * S^{-1} != id".to_string());
    report.push("antipode-invertible", witness);

    // S is an algebra anti-morphism
    let mut witness = None;
    if !h.elems_equal(&h.antipode_elem(&h.unit), &h.unit) {
        witness = Some("1".to_string());
    } else {
        'anti: for a in 0..n {
            for b in 0..n {
                let lhs = h.antipode_elem(&h.mul_elems(&h.basis_elem(a), &h.basis_elem(b)));
                let rhs = h.mul_elems(
                    &h.antipode_elem(&h.basis_elem(b)),
                    &h.antipode_elem(&h.basis_elem(a)),
                );
                if !h.elems_equal(&lhs, &rhs) {
                    witness = Some(format!("({}, {})", label(a), label(b)));
                    break 'anti;
                }
            }
        }
    }
    report.push("antipode-antihomomorphism", witness);

    report
}
