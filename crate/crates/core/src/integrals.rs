//! Left/right integrals, the distinguished group-like functional, left
//! cointegrals, the two projections onto the integral space, and the trace
//! formula tying them to the quantum dimension.

use crate::algebra::{compute_pack, AlgebraPresentation, DerivedPack, DualElement, Pipe};
use crate::double::DoublePresentation;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseTensor};
use crate::scalar::Scalar;

/// Everything the integral pipeline produces for one presentation.
#[derive(Debug, Clone)]
pub struct IntegralData {
    pub left_basis: Vec<Vec<Scalar>>,
    pub right_basis: Vec<Vec<Scalar>>,
    /// Distinguished group-like: t h = mu(h) t for left integrals t.
    pub mu: DualElement,
    /// Left cointegral, kernel generator scaled to leading coefficient 1.
    pub lambda: DualElement,
    /// Right integral scaled so lambda(S(r)) = 1.
    pub r: Vec<Scalar>,
    /// Left cointegral of the opposite algebra.
    pub lambda_op: DualElement,
}

/// Solve h t = eps(h) t and t h = eps(h) t on the basis; both solution spaces
/// must be one-dimensional. The distinguished group-like is read off from
/// right multiplication on the left generator.
pub fn solve_integrals(
    h: &AlgebraPresentation,
) -> Result<(Vec<Vec<Scalar>>, Vec<Vec<Scalar>>, DualElement)> {
    h.ensure_valid()?;
    let n = h.dim;
    let stack = |right_side: bool| -> Matrix {
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            let m = if right_side {
                h.right_mult_matrix(&h.basis_elem(i))
            } else {
                h.left_mult_matrix(&h.basis_elem(i))
            };
            for r in 0..n {
                let mut row = Vec::with_capacity(n);
                for c in 0..n {
                    let mut v = m.get(r, c).clone();
                    if r == c {
                        v = v.checked_sub(&h.counit[i]).expect("field");
                    }
                    row.push(v);
                }
                rows.push(row);
            }
        }
        Matrix::from_rows(rows)
    };
    let left = stack(false).kernel();
    if left.len() != 1 {
        return Err(Error::IntegralDimensionAnomaly(left.len()));
    }
    let right = stack(true).kernel();
    if right.len() != 1 {
        return Err(Error::IntegralDimensionAnomaly(right.len()));
    }

    let t = &left[0];
    let pivot = t
        .iter()
        .position(|c| !c.is_zero())
        .expect("kernel generator is nonzero");
    let mut mu = Vec::with_capacity(n);
    for i in 0..n {
        let ti = h.mul_elems(t, &h.basis_elem(i));
        let coeff = ti[pivot].checked_div(&t[pivot])?;
        if !h.elems_equal(&ti, &h.scale_elem(t, &coeff)) {
            return Err(Error::InvalidPresentation(format!(
                "right action on the left integral is not scalar at basis {}",
                h.basis_labels[i]
            )));
        }
        mu.push(coeff);
    }
    let mu = DualElement::new(mu);
    // mu must be an algebra map
    for i in 0..n {
        for j in 0..n {
            let prod = h.mul_elems(&h.basis_elem(i), &h.basis_elem(j));
            let lhs = h.pair(&mu, &prod);
            let rhs = mu.coords[i].checked_mul(&mu.coords[j])?;
            if lhs != rhs {
                return Err(Error::InvalidPresentation(
                    "distinguished group-like is not multiplicative".into(),
                ));
            }
        }
    }
    if h.pair(&mu, &h.unit) != Scalar::one() {
        return Err(Error::InvalidPresentation(
            "distinguished group-like does not send 1 to 1".into(),
        ));
    }
    Ok((left, right, mu))
}

/// Solve the cointegral equation
/// lambda(V^2 h_2 U^2) V^1 h_1 U^1 = mu(x^1) lambda(h S(x^2)) x^3 for all h,
/// as an n^2 x n linear system; the kernel must be one-dimensional. The
/// generator is scaled to leading coefficient 1.
pub fn solve_cointegral(
    h: &AlgebraPresentation,
    pack: &DerivedPack,
    mu: &DualElement,
) -> Result<DualElement> {
    h.ensure_valid()?;
    let n = h.dim;
    let big_u = SparseTensor::from_dense(&pack.big_u);
    let big_v = SparseTensor::from_dense(&pack.big_v);
    let phi_inv = h.phi_inv_sparse();

    // coefficient of lambda_k in component m of the equation for h = e_j:
    // lhs[j][k][m] - rhs[j][k][m]
    let mut rows = vec![vec![Scalar::zero(); n]; n * n];
    // lhs: [j_in, k, m] = sum V (x) U (x) Delta(e_j): k-leg V^2 (e_j)_2 U^2,
    // m-leg V^1 (e_j)_1 U^1
    let lhs = Pipe::start()
        .outer(&big_v, &["v1", "v2"])
        .outer(&big_u, &["u1", "u2"])
        .outer_identity(n, "j_in", "J")
        .coproduct(h, "J", ("J1", "J2"))
        .mul_chain(h, &["v2", "J2", "u2"], "k_leg")
        .mul_chain(h, &["v1", "J1", "u1"], "m_leg")
        .finish(&["j_in", "k_leg", "m_leg"]);
    for (&key, coeff) in &lhs.entries {
        let idx = lhs.unflatten(key);
        let row = &mut rows[idx[0] * n + idx[2]];
        row[idx[1]] = row[idx[1]].checked_add(coeff)?;
    }
    // rhs: mu(x^1) lambda(e_j S(x^2)) x^3
    let rhs = Pipe::start()
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .contract_dual(h, "x1", mu)
        .outer_identity(n, "j_in", "J")
        .antipode(h, "x2")
        .mul(h, "J", "x2", "k_leg")
        .finish(&["j_in", "k_leg", "x3"]);
    for (&key, coeff) in &rhs.entries {
        let idx = rhs.unflatten(key);
        let row = &mut rows[idx[0] * n + idx[2]];
        row[idx[1]] = row[idx[1]].checked_sub(coeff)?;
    }

    let system = Matrix::from_rows(rows);
    let kernel = system.kernel();
    if kernel.len() != 1 {
        return Err(Error::CointegralDimensionAnomaly(kernel.len()));
    }
    let gen = &kernel[0];
    let pivot = gen.iter().position(|c| !c.is_zero()).expect("nonzero");
    let scale = gen[pivot].checked_inv()?;
    Ok(DualElement::new(
        gen.iter()
            .map(|c| c.checked_mul(&scale).expect("field"))
            .collect(),
    ))
}

/// Scale the right integral so that lambda(S(r)) = 1.
pub fn normalize_pair(
    h: &AlgebraPresentation,
    lambda: &DualElement,
    right_generator: &[Scalar],
) -> Result<(DualElement, Vec<Scalar>)> {
    if lambda.is_zero() {
        return Err(Error::NormalizationImpossible(
            "cointegral is zero".into(),
        ));
    }
    if right_generator.iter().all(Scalar::is_zero) {
        return Err(Error::NormalizationImpossible(
            "right integral is zero".into(),
        ));
    }
    let pairing = h.pair(lambda, &h.antipode_elem(right_generator));
    if pairing.is_zero() {
        return Err(Error::NormalizationImpossible(
            "lambda(S(r)) vanishes on the generator".into(),
        ));
    }
    let inv = pairing.checked_inv()?;
    Ok((lambda.clone(), h.scale_elem(right_generator, &inv)))
}

/// Projection onto the left integrals:
/// P(x) = sum_i <e^i, beta S^2(q^2 (e_i)_2) x> q^1 (e_i)_1.
pub fn projection_p(h: &AlgebraPresentation, pack: &DerivedPack, x: &[Scalar]) -> Vec<Scalar> {
    let n = h.dim;
    let q_r = SparseTensor::from_dense(&pack.q_r);
    let s2 = h.antipode.mul(&h.antipode).expect("square");
    let kernel = Pipe::start()
        .outer(&q_r, &["q1", "q2"])
        .outer_identity(n, "i_in", "I")
        .coproduct(h, "I", ("I1", "I2"))
        .mul(h, "q2", "I2", "w")
        .apply("w", &s2)
        .outer_coords(&h.beta, "be")
        .mul(h, "be", "w", "w2")
        .mul(h, "q1", "I1", "out")
        .finish(&["i_in", "w2", "out"]);
    // value = sum over entries: <e^i, w2 * x> out
    let mut result = vec![Scalar::zero(); n];
    for (&key, coeff) in &kernel.entries {
        let idx = kernel.unflatten(key);
        let w2x = h.mul_elems(&h.basis_elem(idx[1]), x);
        let weight = w2x[idx[0]].clone();
        if weight.is_zero() {
            continue;
        }
        let c = coeff.checked_mul(&weight).expect("field");
        result[idx[2]] = result[idx[2]].checked_add(&c).expect("field");
    }
    result
}

/// The second projection (the same construction through the co-opposite):
/// Ptilde(x) = sum_i <e^i, S^{-1}(beta) S^{-2}(qL^1 (e_i)_1) x> qL^2 (e_i)_2.
pub fn projection_p_tilde(
    h: &AlgebraPresentation,
    pack: &DerivedPack,
    x: &[Scalar],
) -> Vec<Scalar> {
    let n = h.dim;
    let q_l = SparseTensor::from_dense(&pack.q_l);
    let s2_inv = h
        .antipode_inv
        .mul(&h.antipode_inv)
        .expect("square");
    let kernel = Pipe::start()
        .outer(&q_l, &["t1", "t2"])
        .outer_identity(n, "i_in", "I")
        .coproduct(h, "I", ("I1", "I2"))
        .mul(h, "t1", "I1", "w")
        .apply("w", &s2_inv)
        .outer_coords(&h.antipode_inv_elem(&h.beta), "be")
        .mul(h, "be", "w", "w2")
        .mul(h, "t2", "I2", "out")
        .finish(&["i_in", "w2", "out"]);
    let mut result = vec![Scalar::zero(); n];
    for (&key, coeff) in &kernel.entries {
        let idx = kernel.unflatten(key);
        let w2x = h.mul_elems(&h.basis_elem(idx[1]), x);
        let weight = w2x[idx[0]].clone();
        if weight.is_zero() {
            continue;
        }
        let c = coeff.checked_mul(&weight).expect("field");
        result[idx[2]] = result[idx[2]].checked_add(&c).expect("field");
    }
    result
}

/// Precomputed contraction for the trace formula: the weights of
/// lambda(chi(e_a) S-side e_b) with the group-like factor folded in.
pub struct TraceFormulaKernel {
    pairs: Vec<(usize, usize, Scalar)>,
}

/// Tr(chi) = mu(q^1_1 x^1) lambda(chi(q^2 x^3 r_2 p^2) S(q^1_2 x^2 r_1 p^1)).
/// Requires the normalized pairing lambda(S(r)) = 1.
pub fn trace_formula_kernel(
    h: &AlgebraPresentation,
    pack: &DerivedPack,
    lambda: &DualElement,
    r: &[Scalar],
    mu: &DualElement,
) -> Result<TraceFormulaKernel> {
    if h.pair(lambda, &h.antipode_elem(r)) != Scalar::one() {
        return Err(Error::NotNormalized(
            "the pair needs lambda(S(r)) = 1".into(),
        ));
    }
    let q_r = SparseTensor::from_dense(&pack.q_r);
    let p_r = SparseTensor::from_dense(&pack.p_r);
    let phi_inv = h.phi_inv_sparse();
    let t = Pipe::start()
        .outer(&q_r, &["q1", "q2"])
        .coproduct(h, "q1", ("q1a", "q1b"))
        .outer(&phi_inv, &["x1", "x2", "x3"])
        .mul(h, "q1a", "x1", "muarg")
        .contract_dual(h, "muarg", mu)
        .outer_coords(r, "r")
        .coproduct(h, "r", ("r1", "r2"))
        .outer(&p_r, &["p1", "p2"])
        .mul_chain(h, &["q2", "x3", "r2", "p2"], "arg1")
        .mul_chain(h, &["q1b", "x2", "r1", "p1"], "arg2")
        .antipode(h, "arg2")
        .finish(&["arg1", "arg2"]);
    let mut pairs = Vec::with_capacity(t.entries.len());
    for (&key, coeff) in &t.entries {
        let idx = t.unflatten(key);
        pairs.push((idx[0], idx[1], coeff.clone()));
    }
    Ok(TraceFormulaKernel { pairs })
}

impl TraceFormulaKernel {
    /// Evaluate the formula on one endomorphism.
    pub fn evaluate(
        &self,
        h: &AlgebraPresentation,
        lambda: &DualElement,
        chi: &Matrix,
    ) -> Result<Scalar> {
        if chi.rows != h.dim || chi.cols != h.dim {
            return Err(Error::ShapeMismatch(format!(
                "endomorphism must be {0}x{0}",
                h.dim
            )));
        }
        let mut total = Scalar::zero();
        for &(a, b, ref coeff) in &self.pairs {
            let chi_a: Vec<Scalar> = (0..h.dim).map(|r| chi.get(r, a).clone()).collect();
            let prod = h.mul_elems(&chi_a, &h.basis_elem(b));
            let v = h.pair(lambda, &prod);
            if !v.is_zero() {
                total = total.checked_add(&coeff.checked_mul(&v)?)?;
            }
        }
        Ok(total)
    }
}

/// One-call version of the trace formula.
pub fn trace_formula(
    h: &AlgebraPresentation,
    pack: &DerivedPack,
    lambda: &DualElement,
    r: &[Scalar],
    mu: &DualElement,
    chi: &Matrix,
) -> Result<Scalar> {
    trace_formula_kernel(h, pack, lambda, r, mu)?.evaluate(h, lambda, chi)
}

/// Bundle of the integral pipeline for one presentation.
pub fn compute_integral_data(h: &AlgebraPresentation, pack: &DerivedPack) -> Result<IntegralData> {
    let (left_basis, right_basis, mu) = solve_integrals(h)?;
    let lambda = solve_cointegral(h, pack, &mu)?;
    let (lambda, r) = normalize_pair(h, &lambda, &right_basis[0])?;
    let hop = h.opposite()?;
    let pack_op = compute_pack(&hop)?;
    let (_, _, mu_op) = solve_integrals(&hop)?;
    let lambda_op = solve_cointegral(&hop, &pack_op, &mu_op)?;
    Ok(IntegralData {
        left_basis,
        right_basis,
        mu,
        lambda,
        r,
        lambda_op,
    })
}

/// The three expressions for the representation-theoretic rank.
#[derive(Debug, Clone)]
pub struct RankReport {
    /// eps(r) lambda_op(S^{-1}(alpha) beta) with lambda_op(r) = 1.
    pub integral_scalar: Scalar,
    /// Tr(h -> S^{-2}(S(beta) alpha h beta S(alpha))).
    pub qdim_scalar: Scalar,
    /// eps_D(beta -> lambda_op bowtie r).
    pub double_counit_scalar: Scalar,
    pub all_equal: bool,
}

/// Rank through integrals: the left cointegral of the opposite algebra paired
/// against a right integral normalized to lambda_op(r) = 1.
pub fn rank_via_integrals(d: &DoublePresentation) -> Result<RankReport> {
    let h = &d.source;
    let hop = h.opposite()?;
    let pack_op = compute_pack(&hop)?;
    let (left_op, _, mu_op) = solve_integrals(&hop)?;
    let lambda_op = solve_cointegral(&hop, &pack_op, &mu_op)?;
    // left integrals of the opposite algebra are right integrals here
    let r0 = &left_op[0];
    let pairing = h.pair(&lambda_op, r0);
    if pairing.is_zero() {
        return Err(Error::NormalizationImpossible(
            "lambda_op(r) vanishes on the right integral".into(),
        ));
    }
    let r = h.scale_elem(r0, &pairing.checked_inv()?);

    let s_inv_alpha_beta = h.mul_elems(&h.antipode_inv_elem(&h.alpha), &h.beta);
    let integral_scalar = h
        .counit_elem(&r)
        .checked_mul(&h.pair(&lambda_op, &s_inv_alpha_beta))?;
    let qdim_scalar = crate::rep::qdim_closed_form(h)?;
    let beta_lambda = h.harpoon_left(&h.beta, &lambda_op);
    let z = d.make_element(&beta_lambda, &r);
    let double_counit_scalar = d.inner.counit_elem(&z);
    let all_equal = integral_scalar == qdim_scalar && qdim_scalar == double_counit_scalar;
    Ok(RankReport {
        integral_scalar,
        qdim_scalar,
        double_counit_scalar,
        all_equal,
    })
}

/// Probe (never asserted): is beta -> lambda bowtie r a left integral in the
/// double?
pub fn conjecture_probe(
    d: &DoublePresentation,
    lambda: &DualElement,
    r: &[Scalar],
) -> Result<bool> {
    let h = &d.source;
    let z = d.make_element(&h.harpoon_left(&h.beta, lambda), r);
    let n2 = d.inner.dim;
    for chi in 0..n2 {
        let lhs = d.inner.mul_elems(&d.inner.basis_elem(chi), &z);
        let rhs = d.inner.scale_elem(&z, &d.inner.counit[chi]);
        if !d.inner.elems_equal(&lhs, &rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Semisimplicity via the trace form: Tr(L_a L_b) is nondegenerate exactly
/// for semisimple algebras in characteristic zero.
pub fn is_semisimple(h: &AlgebraPresentation) -> Result<bool> {
    let n = h.dim;
    let mults: Vec<Matrix> = (0..n).map(|i| h.left_mult_matrix(&h.basis_elem(i))).collect();
    let mut gram = Matrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            gram.set(i, j, mults[i].mul(&mults[j])?.trace()?);
        }
    }
    Ok(gram.kernel().is_empty())
}

/// Deterministic small-integer endomorphism for seeded trials.
pub fn seeded_endomorphism(seed: u64, n: usize, trial: u64) -> Matrix {
    let mut state = seed
        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(trial.wrapping_mul(0xbf58_476d_1ce4_e5b9))
        .wrapping_add(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut m = Matrix::zero(n, n);
    for r in 0..n {
        for c in 0..n {
            let v = (next() % 9) as i64 - 4;
            m.set(r, c, Scalar::from_int(v));
        }
    }
    m
}
