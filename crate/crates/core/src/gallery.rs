//! Constructors for the concrete algebras everything is tested on: group
//! algebras, dual group algebras twisted by a 3-cocycle, their doubles, and
//! the four-dimensional non-semisimple example.

use crate::algebra::{AlgebraPresentation, PresentationData};
use crate::double::{build_double, DoublePresentation};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, TensorElement};
use crate::scalar::{FieldContext, Scalar};

/// A finite group as an explicit multiplication table.
#[derive(Debug, Clone)]
pub struct GroupTable {
    pub order: usize,
    pub mult: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
    pub identity: usize,
    pub labels: Vec<String>,
}

impl GroupTable {
    /// Exhaustive group-axiom check.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        if self.mult.len() != n
            || self.mult.iter().any(|r| r.len() != n)
            || self.inverse.len() != n
            || self.identity >= n
        {
            return Err(Error::InvalidGroup("table shape".into()));
        }
        let e = self.identity;
        for a in 0..n {
            if self.mult[e][a] != a || self.mult[a][e] != a {
                return Err(Error::InvalidGroup(format!(
                    "identity fails at {}",
                    self.labels[a]
                )));
            }
            if self.mult[a][self.inverse[a]] != e || self.mult[self.inverse[a]][a] != e {
                return Err(Error::InvalidGroup(format!(
                    "inverse fails at {}",
                    self.labels[a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn cyclic(n: usize) -> GroupTable {
        assert!(n >= 1);
        let mult = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        GroupTable {
            order: n,
            mult,
            inverse: (0..n).map(|a| (n - a) % n).collect(),
            identity: 0,
            labels: (0..n)
                .map(|a| if a == 0 { "e".to_string() } else { format!("g{a}") })
                .collect(),
        }
    }

    /// The symmetric group on three letters, as permutations of {0, 1, 2}.
    pub fn symmetric3() -> GroupTable {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let labels = vec!["e", "(01)", "(02)", "(12)", "(012)", "(021)"];
        let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] {
            // (p q)(x) = p(q(x))
            [p[q[0]], p[q[1]], p[q[2]]]
        };
        let find = |target: &[usize; 3]| perms.iter().position(|p| p == target).unwrap();
        let mult: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| perms.iter().map(|q| find(&compose(p, q))).collect())
            .collect();
        let inverse = perms
            .iter()
            .map(|p| {
                let mut inv = [0usize; 3];
                for (x, &px) in p.iter().enumerate() {
                    inv[px] = x;
                }
                find(&inv)
            })
            .collect();
        GroupTable {
            order: 6,
            mult,
            inverse,
            identity: 0,
            labels: labels.into_iter().map(str::to_string).collect(),
        }
    }
}

/// A normalized 3-cocycle, stored as a flat n^3 array of nonzero scalars.
#[derive(Debug, Clone)]
pub struct ThreeCocycle {
    pub group: GroupTable,
    pub values: Vec<Scalar>,
}

impl ThreeCocycle {
    pub fn value(&self, a: usize, b: usize, c: usize) -> &Scalar {
        let n = self.group.order;
        &self.values[(a * n + b) * n + c]
    }

    /// Exhaustive cocycle-identity and normalization check.
    pub fn validate(&self) -> Result<()> {
        self.group.validate()?;
        let n = self.group.order;
        if self.values.len() != n * n * n {
            return Err(Error::CocycleInvalid("value array shape".into()));
        }
        if self.values.iter().any(Scalar::is_zero) {
            return Err(Error::CocycleInvalid("cocycle values must be nonzero".into()));
        }
        let e = self.group.identity;
        for a in 0..n {
            for b in 0..n {
                for (v, pos) in [
                    (self.value(e, a, b), "first"),
                    (self.value(a, e, b), "middle"),
                    (self.value(a, b, e), "last"),
                ] {
                    if !v.is_one() {
                        return Err(Error::CocycleInvalid(format!(
                            "normalization fails with unit in {pos} slot at ({}, {})",
                            self.group.labels[a], self.group.labels[b]
                        )));
                    }
                }
            }
        }
        // omega(a,b,cd) omega(ab,c,d) = omega(b,c,d) omega(a,bc,d) omega(a,b,c)
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs = self
                            .value(a, b, self.group.mult[c][d])
                            .checked_mul(self.value(self.group.mult[a][b], c, d))?;
                        let rhs = self
                            .value(b, c, d)
                            .checked_mul(self.value(a, self.group.mult[b][c], d))?
                            .checked_mul(self.value(a, b, c))?;
                        if lhs != rhs {
                            return Err(Error::CocycleInvalid(format!(
                                "({}, {}, {}, {})",
                                self.group.labels[a],
                                self.group.labels[b],
                                self.group.labels[c],
                                self.group.labels[d]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The ambient field needed to host the values.
    pub fn field(&self) -> FieldContext {
        for v in &self.values {
            if let Scalar::Cyclotomic(c) = v {
                if v.as_rational().is_none() {
                    return FieldContext::Cyclotomic(c.order);
                }
            }
        }
        FieldContext::Rational
    }
}

/// Load a cocycle from a flat n^3 JSON array of scalars (big-endian index
/// order); the exhaustive validity check runs before anything uses it.
pub fn cocycle_from_json(group: &GroupTable, v: &serde_json::Value) -> Result<ThreeCocycle> {
    let n = group.order;
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("cocycle must be a flat array".into()))?;
    if arr.len() != n * n * n {
        return Err(Error::Parse(format!(
            "cocycle over a group of order {n} needs {} values",
            n * n * n
        )));
    }
    let values: Result<Vec<Scalar>> = arr
        .iter()
        .map(crate::algebra::scalar_from_json)
        .collect();
    let cocycle = ThreeCocycle {
        group: group.clone(),
        values: values?,
    };
    cocycle.validate()?;
    Ok(cocycle)
}

/// The standard degree-q representative on a cyclic group:
/// omega(g^a, g^b, g^c) = zeta_n^(q a floor((b+c)/n)).
pub fn cocycle_cyclic(n: usize, q: usize) -> ThreeCocycle {
    assert!(n >= 1);
    let group = GroupTable::cyclic(n);
    let mut values = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let carry = (b + c) / n;
                let exponent = (q * a * carry) as i64;
                values.push(Scalar::root_of_unity(n as u32, exponent));
            }
        }
    }
    ThreeCocycle { group, values }
}

/// The group algebra kG with its standard Hopf structure (trivial
/// reassociator, alpha = beta = 1, S(g) = g^{-1}).
pub fn group_algebra(g: &GroupTable) -> Result<AlgebraPresentation> {
    g.validate()?;
    let n = g.order;
    let mut mult = TensorElement::zero(n, 3);
    let mut comult = TensorElement::zero(n, 3);
    let mut antipode = Matrix::zero(n, n);
    for a in 0..n {
        comult.set(&[a, a, a], Scalar::one());
        antipode.set(g.inverse[a], a, Scalar::one());
        for b in 0..n {
            mult.set(&[a, b, g.mult[a][b]], Scalar::one());
        }
    }
    let mut unit = vec![Scalar::zero(); n];
    unit[g.identity] = Scalar::one();
    let mut phi = TensorElement::zero(n, 3);
    phi.set(&[g.identity, g.identity, g.identity], Scalar::one());
    AlgebraPresentation::from_data(PresentationData {
        dim: n,
        basis_labels: g.labels.clone(),
        field: FieldContext::Rational,
        mult,
        unit: unit.clone(),
        comult,
        counit: vec![Scalar::one(); n],
        phi: phi.clone(),
        phi_inv: Some(phi),
        antipode,
        alpha: unit.clone(),
        beta: unit,
        label: format!("k[{}]", group_name(g)),
    })
}

fn group_name(g: &GroupTable) -> String {
    format!("G{}", g.order)
}

/// The dual group algebra on the function basis, twisted by a 3-cocycle:
/// pointwise product, convolution coproduct, Phi = omega^{-1}, alpha the
/// unit function and beta(g) = omega(g, g^{-1}, g).
pub fn dual_group_algebra_twisted(
    g: &GroupTable,
    omega: &ThreeCocycle,
) -> Result<AlgebraPresentation> {
    omega.validate()?;
    if omega.group.order != g.order || omega.group.mult != g.mult {
        return Err(Error::CocycleInvalid(
            "cocycle belongs to a different group".into(),
        ));
    }
    let n = g.order;
    let field = omega.field();
    let mut mult = TensorElement::zero(n, 3);
    let mut comult = TensorElement::zero(n, 3);
    let mut antipode = Matrix::zero(n, n);
    for a in 0..n {
        mult.set(&[a, a, a], Scalar::one());
        antipode.set(g.inverse[a], a, Scalar::one());
        for b in 0..n {
            comult.set(&[g.mult[a][b], a, b], Scalar::one());
        }
    }
    let mut counit = vec![Scalar::zero(); n];
    counit[g.identity] = Scalar::one();
    let mut phi = TensorElement::zero(n, 3);
    let mut phi_inv = TensorElement::zero(n, 3);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let w = omega.value(a, b, c);
                phi.set(&[a, b, c], w.checked_inv()?);
                phi_inv.set(&[a, b, c], w.clone());
            }
        }
    }
    let mut beta = Vec::with_capacity(n);
    for a in 0..n {
        beta.push(omega.value(a, g.inverse[a], a).clone());
    }
    AlgebraPresentation::from_data(PresentationData {
        dim: n,
        basis_labels: g.labels.iter().map(|l| format!("d[{l}]")).collect(),
        field,
        mult,
        unit: vec![Scalar::one(); n],
        comult,
        counit,
        phi,
        phi_inv: Some(phi_inv),
        antipode,
        alpha: vec![Scalar::one(); n],
        beta,
        label: format!("dual-omega[{}]", group_name(g)),
    })
}

/// Quantum double of the twisted dual group algebra.
pub fn dpr_double(g: &GroupTable, omega: &ThreeCocycle) -> Result<DoublePresentation> {
    let h = dual_group_algebra_twisted(g, omega)?;
    build_double(&h)
}

/// The four-dimensional non-semisimple Hopf algebra on {1, g, x, gx} with
/// g^2 = 1, x^2 = 0, xg = -gx.
pub fn sweedler_h4() -> AlgebraPresentation {
    let n = 4;
    let one = Scalar::one;
    let neg = || Scalar::from_int(-1);
    // indices: 0 = 1, 1 = g, 2 = x, 3 = gx
    let mut mult = TensorElement::zero(n, 3);
    let table: [(usize, usize, usize, i64); 12] = [
        (0, 0, 0, 1),
        (0, 1, 1, 1),
        (0, 2, 2, 1),
        (0, 3, 3, 1),
        (1, 0, 1, 1),
        (1, 1, 0, 1),
        (1, 2, 3, 1),
        (1, 3, 2, 1),
        (2, 0, 2, 1),
        (2, 1, 3, -1),
        (3, 0, 3, 1),
        (3, 1, 2, -1),
    ];
    for &(i, j, k, s) in &table {
        mult.set(&[i, j, k], Scalar::from_int(s));
    }
    let mut comult = TensorElement::zero(n, 3);
    comult.set(&[0, 0, 0], one());
    comult.set(&[1, 1, 1], one());
    comult.set(&[2, 2, 0], one()); // x (x) 1
    comult.set(&[2, 1, 2], one()); // g (x) x
    comult.set(&[3, 3, 1], one()); // gx (x) g
    comult.set(&[3, 0, 3], one()); // 1 (x) gx
    let counit = vec![one(), one(), Scalar::zero(), Scalar::zero()];
    let mut antipode = Matrix::zero(n, n);
    antipode.set(0, 0, one());
    antipode.set(1, 1, one());
    antipode.set(3, 2, neg()); // S(x) = -gx
    antipode.set(2, 3, one()); // S(gx) = x
    let mut unit = vec![Scalar::zero(); n];
    unit[0] = one();
    let mut phi = TensorElement::zero(n, 3);
    phi.set(&[0, 0, 0], one());
    AlgebraPresentation::from_data(PresentationData {
        dim: n,
        basis_labels: ["1", "g", "x", "gx"].iter().map(|s| s.to_string()).collect(),
        field: FieldContext::Rational,
        mult,
        unit: unit.clone(),
        comult,
        counit,
        phi: phi.clone(),
        phi_inv: Some(phi),
        antipode,
        alpha: unit.clone(),
        beta: unit,
        label: "sweedler-4".to_string(),
    })
    .expect("built-in presentation is well-shaped")
}

/// A named example: either a plain presentation or a prebuilt double.
pub enum GalleryItem {
    Presentation(AlgebraPresentation),
    Double(Box<DoublePresentation>),
}

/// Resolve CLI example names: "group:Zn", "group:S3", "dual-omega:Zn:q",
/// "dpr:Zn:q", "sweedler".
pub fn by_name(name: &str) -> Result<GalleryItem> {
    let parts: Vec<&str> = name.split(':').collect();
    let parse_z = |token: &str| -> Result<usize> {
        token
            .strip_prefix('Z')
            .and_then(|t| t.parse::<usize>().ok())
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Parse(format!("expected Z<n>, got {token:?}")))
    };
    match parts.as_slice() {
        ["sweedler"] => Ok(GalleryItem::Presentation(sweedler_h4())),
        ["group", "S3"] => Ok(GalleryItem::Presentation(group_algebra(
            &GroupTable::symmetric3(),
        )?)),
        ["group", z] => {
            let n = parse_z(z)?;
            Ok(GalleryItem::Presentation(group_algebra(
                &GroupTable::cyclic(n),
            )?))
        }
        ["dual-omega", z, q] => {
            let n = parse_z(z)?;
            let q: usize = q
                .parse()
                .map_err(|_| Error::Parse(format!("bad cocycle class {q:?}")))?;
            let omega = cocycle_cyclic(n, q);
            Ok(GalleryItem::Presentation(dual_group_algebra_twisted(
                &GroupTable::cyclic(n),
                &omega,
            )?))
        }
        ["dpr", z, q] => {
            let n = parse_z(z)?;
            let q: usize = q
                .parse()
                .map_err(|_| Error::Parse(format!("bad cocycle class {q:?}")))?;
            let omega = cocycle_cyclic(n, q);
            Ok(GalleryItem::Double(Box::new(dpr_double(
                &GroupTable::cyclic(n),
                &omega,
            )?)))
        }
        _ => Err(Error::Parse(format!("unknown example name {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_tables_validate() {
        GroupTable::cyclic(1).validate().unwrap();
        GroupTable::cyclic(4).validate().unwrap();
        GroupTable::symmetric3().validate().unwrap();
    }

    #[test]
    fn cyclic_cocycles_validate_exhaustively() {
        for (n, q) in [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (4, 1)] {
            cocycle_cyclic(n, q).validate().unwrap();
        }
    }

    #[test]
    fn z2_cocycle_values() {
        let w = cocycle_cyclic(2, 1);
        assert_eq!(w.value(1, 1, 1), &Scalar::from_int(-1));
        let mut nontrivial = 0;
        for v in &w.values {
            if !v.is_one() {
                nontrivial += 1;
            }
        }
        assert_eq!(nontrivial, 1);
    }

    #[test]
    fn trivial_class_gives_constant_one() {
        let w = cocycle_cyclic(5, 0);
        assert!(w.values.iter().all(Scalar::is_one));
    }

    #[test]
    fn z3_cocycle_uses_cube_roots() {
        let w = cocycle_cyclic(3, 1);
        assert_eq!(w.field(), FieldContext::Cyclotomic(3));
        assert_eq!(w.value(1, 2, 2), &Scalar::root_of_unity(3, 1));
    }

    #[test]
    fn broken_cocycle_is_rejected() {
        let mut w = cocycle_cyclic(2, 1);
        // breaking normalization
        w.values[1] = Scalar::from_int(-1);
        assert!(matches!(w.validate(), Err(Error::CocycleInvalid(_))));
    }

    #[test]
    fn gallery_presentations_validate() {
        for name in ["group:Z2", "group:Z3", "group:S3", "sweedler", "dual-omega:Z2:1"] {
            match by_name(name).unwrap() {
                GalleryItem::Presentation(p) => {
                    let report = p.validate();
                    assert!(
                        report.is_valid(),
                        "{name} failed: {:?}",
                        report.failures().collect::<Vec<_>>()
                    );
                }
                GalleryItem::Double(_) => panic!("expected plain presentation"),
            }
        }
    }

    #[test]
    fn twisted_dual_beta_matches_cocycle_diagonal() {
        let h = dual_group_algebra_twisted(&GroupTable::cyclic(2), &cocycle_cyclic(2, 1)).unwrap();
        assert_eq!(h.beta[0], Scalar::one());
        assert_eq!(h.beta[1], Scalar::from_int(-1));
    }

    #[test]
    fn corrupted_reassociator_breaks_pentagon() {
        let good = dual_group_algebra_twisted(&GroupTable::cyclic(2), &cocycle_cyclic(2, 1)).unwrap();
        let mut phi = good.phi.clone();
        // flipping the (g, g, g) entry would give the trivial cocycle, which
        // still satisfies the pentagon; flip (g, g, e) instead
        let flipped = phi.get(&[1, 1, 0]).neg();
        phi.set(&[1, 1, 0], flipped);
        let bad = AlgebraPresentation::from_data(PresentationData {
            dim: good.dim,
            basis_labels: good.basis_labels.clone(),
            field: good.field,
            mult: good.mult.clone(),
            unit: good.unit.clone(),
            comult: good.comult.clone(),
            counit: good.counit.clone(),
            phi,
            phi_inv: None,
            antipode: good.antipode.clone(),
            alpha: good.alpha.clone(),
            beta: good.beta.clone(),
            label: "corrupted".into(),
        })
        .unwrap();
        let report = bad.validate();
        assert!(!report.is_valid());
        let pentagon = report.find("pentagon").unwrap();
        assert!(!pentagon.passed);
        assert!(pentagon.witness.is_some());
    }
}
