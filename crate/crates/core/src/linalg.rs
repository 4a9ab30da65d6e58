//! Dense exact linear algebra over [`Scalar`]: matrices, multi-index tensors,
//! linear solve, kernel, trace and Kronecker products.
//!
//! Flat index convention for tensors: slot 0 is the most significant digit
//! (big-endian multi-index). This is normative for all file formats.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Per-slot variance of a tensor: H itself or its dual H*.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Primal,
    Dual,
}

/// An element of H^{otimes k} as a dense coordinate array over a fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorElement {
    pub dim: usize,
    pub arity: usize,
    pub coords: Vec<Scalar>,
    pub variance: Vec<Variance>,
}

impl TensorElement {
    pub fn zero(dim: usize, arity: usize) -> Self {
        assert!(dim >= 1 && arity >= 1);
        TensorElement {
            dim,
            arity,
            coords: vec![Scalar::zero(); dim.pow(arity as u32)],
            variance: vec![Variance::Primal; arity],
        }
    }

    pub fn from_coords(dim: usize, arity: usize, coords: Vec<Scalar>) -> Self {
        assert_eq!(coords.len(), dim.pow(arity as u32));
        TensorElement {
            dim,
            arity,
            coords,
            variance: vec![Variance::Primal; arity],
        }
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.arity);
        let mut f = 0;
        for &i in idx {
            debug_assert!(i < self.dim);
            f = f * self.dim + i;
        }
        f
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.coords[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Scalar) {
        let f = self.flat(idx);
        self.coords[f] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Kronecker product: arities add, variance lists concatenate.
    pub fn tensor_product(&self, other: &TensorElement) -> Result<TensorElement> {
        if self.dim != other.dim {
            return Err(Error::FieldMismatch(format!(
                "tensor dims {} and {}",
                self.dim, other.dim
            )));
        }
        let mut coords = Vec::with_capacity(self.coords.len() * other.coords.len());
        for a in &self.coords {
            if a.is_zero() {
                coords.extend(std::iter::repeat_with(Scalar::zero).take(other.coords.len()));
                continue;
            }
            for b in &other.coords {
                coords.push(if b.is_zero() {
                    Scalar::zero()
                } else {
                    a.checked_mul(b)?
                });
            }
        }
        let mut variance = self.variance.clone();
        variance.extend_from_slice(&other.variance);
        Ok(TensorElement {
            dim: self.dim,
            arity: self.arity + other.arity,
            coords,
            variance,
        })
    }
}

/// Internal sparse tensor used to assemble the structure-constant formulas;
/// the public API stays dense. Slots may have different dimensions (the
/// quantum double mixes base-algebra slots with double slots). Keys are
/// big-endian mixed-radix flat indices.
#[derive(Debug, Clone)]
pub struct SparseTensor {
    pub dims: Vec<usize>,
    pub entries: BTreeMap<u64, Scalar>,
}

impl SparseTensor {
    pub fn new(dims: Vec<usize>) -> Self {
        let mut cap = 1u64;
        for &d in &dims {
            cap = cap
                .checked_mul(d as u64)
                .expect("tensor index space exceeds u64");
        }
        SparseTensor {
            dims,
            entries: BTreeMap::new(),
        }
    }

    pub fn uniform(dim: usize, arity: usize) -> Self {
        Self::new(vec![dim; arity])
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn flatten(&self, idx: &[usize]) -> u64 {
        debug_assert_eq!(idx.len(), self.dims.len());
        let mut f = 0u64;
        for (&i, &d) in idx.iter().zip(&self.dims) {
            debug_assert!(i < d);
            f = f * d as u64 + i as u64;
        }
        f
    }

    pub fn unflatten(&self, mut flat: u64) -> Vec<usize> {
        let mut idx = vec![0usize; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            idx[k] = (flat % self.dims[k] as u64) as usize;
            flat /= self.dims[k] as u64;
        }
        idx
    }

    pub fn add_at(&mut self, idx: &[usize], value: Scalar) {
        if value.is_zero() {
            return;
        }
        let key = self.flatten(idx);
        self.add_flat(key, value);
    }

    pub fn add_flat(&mut self, key: u64, value: Scalar) {
        if value.is_zero() {
            return;
        }
        match self.entries.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().checked_add(&value).expect("field mismatch");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn from_dense(t: &TensorElement) -> Self {
        let mut s = SparseTensor::uniform(t.dim, t.arity);
        for (k, v) in t.coords.iter().enumerate() {
            if !v.is_zero() {
                s.entries.insert(k as u64, v.clone());
            }
        }
        s
    }

    /// Dense conversion; requires all slots to share one dimension.
    pub fn to_dense(&self) -> TensorElement {
        let dim = self.dims[0];
        assert!(self.dims.iter().all(|&d| d == dim));
        let mut t = TensorElement::zero(dim, self.dims.len());
        for (&k, v) in &self.entries {
            t.coords[k as usize] = v.clone();
        }
        t
    }

    /// Outer product; `other`'s slots follow `self`'s.
    pub fn outer(&self, other: &SparseTensor) -> SparseTensor {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut out = SparseTensor::new(dims);
        let mut shift = 1u64;
        for &d in &other.dims {
            shift *= d as u64;
        }
        for (&ka, va) in &self.entries {
            for (&kb, vb) in &other.entries {
                let v = va.checked_mul(vb).expect("field mismatch");
                out.add_flat(ka * shift + kb, v);
            }
        }
        out
    }

    /// Reorder slots: new slot j carries the index previously at `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> SparseTensor {
        assert_eq!(perm.len(), self.dims.len());
        let dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let mut out = SparseTensor::new(dims);
        for (&k, v) in &self.entries {
            let idx = self.unflatten(k);
            let new_idx: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            out.add_at(&new_idx, v.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> SparseTensor {
        let mut out = SparseTensor::new(self.dims.clone());
        if s.is_zero() {
            return out;
        }
        for (&k, v) in &self.entries {
            out.add_flat(k, v.checked_mul(s).expect("field mismatch"));
        }
        out
    }

    pub fn add(&self, other: &SparseTensor) -> SparseTensor {
        assert_eq!(self.dims, other.dims);
        let mut out = self.clone();
        for (&k, v) in &other.entries {
            out.add_flat(k, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparseTensor) -> SparseTensor {
        assert_eq!(self.dims, other.dims);
        let mut out = self.clone();
        for (&k, v) in &other.entries {
            out.add_flat(k, v.neg());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn equals(&self, other: &SparseTensor) -> bool {
        self.sub(other).is_zero()
    }

    /// First index tuple where the two tensors differ, as a witness.
    pub fn first_difference(&self, other: &SparseTensor) -> Option<Vec<usize>> {
        let d = self.sub(other);
        d.entries.keys().next().map(|&k| d.unflatten(k))
    }
}

/// A dense matrix over one field context, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "trace of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut t = Scalar::zero();
        for i in 0..self.rows {
            t = t.checked_add(self.get(i, i))?;
        }
        Ok(t)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).checked_add(&a.checked_mul(b)?)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product (vector as coordinates of an element).
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if self.cols != v.len() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix applied to length-{} vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Scalar::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for r in 0..self.rows {
                let a = self.get(r, c);
                if !a.is_zero() {
                    out[r] = out[r].checked_add(&a.checked_mul(x)?)?;
                }
            }
        }
        Ok(out)
    }

    fn rows_vec(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).clone()).collect())
            .collect()
    }

    /// Exact Gaussian elimination to reduced row-echelon form.
    /// Returns the reduced rows and the pivot column of each pivot row.
    fn rref(mut rows: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..ncols {
            let Some(pr) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pr);
            let inv = rows[rank][col].checked_inv().expect("pivot is nonzero");
            for c in col..ncols {
                if !rows[rank][c].is_zero() {
                    rows[rank][c] = rows[rank][c].checked_mul(&inv).unwrap();
                }
            }
            for r in 0..nrows {
                if r == rank || rows[r][col].is_zero() {
                    continue;
                }
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    if !rows[rank][c].is_zero() {
                        let t = factor.checked_mul(&rows[rank][c]).unwrap();
                        rows[r][c] = rows[r][c].checked_sub(&t).unwrap();
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == nrows {
                break;
            }
        }
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        Matrix::rref(self.rows_vec()).1.len()
    }

    /// One exact solution of A x = b, or None when the system is inconsistent.
    pub fn solve_linear(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "rhs length {} for {}x{} system",
                b.len(),
                self.rows,
                self.cols
            )));
        }
        let mut rows = self.rows_vec();
        for (r, row) in rows.iter_mut().enumerate() {
            row.push(b[r].clone());
        }
        let (rows, pivots) = Matrix::rref(rows);
        if pivots.contains(&self.cols) {
            return Ok(None); // pivot in the augmented column
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &col) in pivots.iter().enumerate() {
            x[col] = rows[r][self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Exact basis of the null space; empty for injective matrices.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (rows, pivots) = Matrix::rref(self.rows_vec());
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = rows[r][free].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse; errors when the matrix is singular or not square.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "inverse of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut rows = self.rows_vec();
        for (r, row) in rows.iter_mut().enumerate() {
            for c in 0..n {
                row.push(if r == c { Scalar::one() } else { Scalar::zero() });
            }
        }
        let (rows, pivots) = Matrix::rref(rows);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::ShapeMismatch("singular matrix".into()));
        }
        let mut out = Matrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, rows[r][n + c].clone());
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let a = Matrix::identity(3);
        let b = vec![s(4), s(-1), s(7)];
        assert_eq!(a.solve_linear(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn inconsistent_system_returns_none() {
        // x + y = 1, x + y = 2
        let a = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(1), s(1)]]);
        assert!(a.solve_linear(&[s(1), s(2)]).unwrap().is_none());
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        assert_eq!(Matrix::zero(3, 3).kernel().len(), 3);
        assert!(Matrix::identity(4).kernel().is_empty());
    }

    #[test]
    fn nilpotent_trace_is_zero() {
        let mut m = Matrix::zero(3, 3);
        m.set(0, 1, s(5));
        m.set(0, 2, s(-2));
        m.set(1, 2, s(9));
        assert_eq!(m.trace().unwrap(), Scalar::zero());
        assert_eq!(Matrix::identity(5).trace().unwrap(), s(5));
    }

    #[test]
    fn trace_shape_error() {
        assert!(Matrix::zero(2, 3).trace().is_err());
    }

    #[test]
    fn tensor_product_basics() {
        let mut e0 = TensorElement::zero(2, 1);
        e0.set(&[0], s(1));
        let mut v = TensorElement::zero(2, 1);
        v.set(&[0], s(1));
        v.set(&[1], s(1));
        let t = v.tensor_product(&e0).unwrap();
        assert_eq!(t.arity, 2);
        let nonzero: Vec<usize> = t
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect();
        assert_eq!(nonzero, vec![0, 2]); // (0,0) and (1,0)
    }

    #[test]
    fn sparse_round_trip_and_permute() {
        let mut t = TensorElement::zero(3, 3);
        t.set(&[0, 1, 2], s(5));
        t.set(&[2, 0, 1], s(-1));
        let sp = SparseTensor::from_dense(&t);
        assert_eq!(sp.to_dense(), t);
        let p = sp.permute(&[2, 0, 1]); // new j takes old perm[j]
        assert_eq!(p.to_dense().get(&[2, 0, 1]), &s(5));
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-5i64..=5, n * n).prop_map(move |vals| Matrix {
            rows: n,
            cols: n,
            entries: vals.into_iter().map(Scalar::from_int).collect(),
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn solve_verifies_by_substitution(m in arb_matrix(5), bv in proptest::collection::vec(-5i64..=5, 5)) {
            let b: Vec<Scalar> = bv.into_iter().map(Scalar::from_int).collect();
            if let Some(x) = m.solve_linear(&b).unwrap() {
                let ax = m.apply(&x).unwrap();
                prop_assert_eq!(ax, b);
            } else {
                // inconsistent: rank of augmented exceeds rank of A
                let mut aug_rows = Vec::new();
                for r in 0..m.rows {
                    let mut row: Vec<Scalar> = (0..m.cols).map(|c| m.get(r, c).clone()).collect();
                    row.push(b[r].clone());
                    aug_rows.push(row);
                }
                let aug = Matrix::from_rows(aug_rows);
                prop_assert!(aug.rank() > m.rank());
            }
        }

        #[test]
        fn rank_nullity_and_kernel_maps_to_zero(m in arb_matrix(5)) {
            let kern = m.kernel();
            prop_assert_eq!(m.rank() + kern.len(), m.cols);
            for v in &kern {
                let image = m.apply(v).unwrap();
                prop_assert!(image.iter().all(Scalar::is_zero));
            }
            if !kern.is_empty() {
                // kernel basis is linearly independent
                let km = Matrix::from_rows(kern);
                prop_assert_eq!(km.rank(), km.rows);
            }
        }

        #[test]
        fn trace_of_product_commutes(a in arb_matrix(4), b in arb_matrix(4)) {
            let ab = a.mul(&b).unwrap().trace().unwrap();
            let ba = b.mul(&a).unwrap().trace().unwrap();
            prop_assert_eq!(ab, ba);
        }

        #[test]
        fn tensor_product_is_bilinear(av in proptest::collection::vec(-3i64..=3, 3),
                                      bv in proptest::collection::vec(-3i64..=3, 3),
                                      cv in proptest::collection::vec(-3i64..=3, 3)) {
            let mk = |v: &[i64]| TensorElement::from_coords(3, 1, v.iter().map(|&x| Scalar::from_int(x)).collect());
            let (a, b, c) = (mk(&av), mk(&bv), mk(&cv));
            let sum = TensorElement::from_coords(3, 1,
                a.coords.iter().zip(&b.coords).map(|(x, y)| x.checked_add(y).unwrap()).collect());
            let lhs = sum.tensor_product(&c).unwrap();
            let ac = a.tensor_product(&c).unwrap();
            let bc = b.tensor_product(&c).unwrap();
            let rhs: Vec<Scalar> = ac.coords.iter().zip(&bc.coords)
                .map(|(x, y)| x.checked_add(y).unwrap()).collect();
            prop_assert_eq!(lhs.coords, rhs);
        }

        #[test]
        fn tensor_product_associates(av in proptest::collection::vec(-3i64..=3, 3),
                                     bv in proptest::collection::vec(-3i64..=3, 3),
                                     cv in proptest::collection::vec(-3i64..=3, 3)) {
            let mk = |v: Vec<i64>| TensorElement::from_coords(3, 1, v.into_iter().map(Scalar::from_int).collect());
            let (a, b, c) = (mk(av), mk(bv), mk(cv));
            let left = a.tensor_product(&b).unwrap().tensor_product(&c).unwrap();
            let right = a.tensor_product(&b.tensor_product(&c).unwrap()).unwrap();
            prop_assert_eq!(left.coords, right.coords);
        }
    }
}
