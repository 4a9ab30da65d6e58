//! Exact field arithmetic: arbitrary-precision rationals and cyclotomic
//! extensions Q(zeta_n), with decidable equality.
//!
//! A [`Scalar`] is either a plain rational or a residue modulo the n-th
//! cyclotomic polynomial, stored as a coefficient vector of length phi(n)
//! over the power basis 1, zeta, ..., zeta^(phi(n)-1). Rationals embed into
//! any Q(zeta_n) implicitly; two distinct cyclotomic orders never unify
//! automatically (the caller fixes one ambient order per presentation).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut m = n;
    let mut result = n as u64;
    let mut p = 2u32;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result = result / p as u64 * (p as u64 - 1);
        }
        p += 1;
    }
    if m > 1 {
        result = result / m as u64 * (m as u64 - 1);
    }
    result as usize
}

fn divisors(n: u32) -> Vec<u32> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

// -- dense polynomial helpers over Q (little-endian coefficients) --

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Division with remainder; `b` must be nonzero. Returns (quotient, remainder).
fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem: Vec<Rat> = a.to_vec();
    poly_trim(&mut rem);
    let mut bb: Vec<Rat> = b.to_vec();
    poly_trim(&mut bb);
    let db = bb.len() - 1;
    let lead = bb[db].clone();
    assert!(!lead.is_zero(), "polynomial division by zero");
    if rem.len() - 1 < db || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![Rat::zero()], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    while rem.len() > 1 || !rem[0].is_zero() {
        let dr = rem.len() - 1;
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        let shift = dr - db;
        for k in 0..=db {
            if !bb[k].is_zero() {
                let t = &c * &bb[k];
                rem[shift + k] -= t;
            }
        }
        quot[shift] = c;
        poly_trim(&mut rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// Extended gcd: returns (g, s) with s*a == g (mod m), g a nonzero constant
/// when gcd(a, m) = 1.
fn poly_half_ext_gcd(a: &[Rat], m: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0: Vec<Rat> = m.to_vec();
    let mut r1: Vec<Rat> = a.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0 = vec![Rat::zero()];
    let mut s1 = vec![Rat::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let qs = poly_mul(&q, &s1);
        let mut s_new = s0.clone();
        s_new.resize(s_new.len().max(qs.len()), Rat::zero());
        for (k, c) in qs.iter().enumerate() {
            s_new[k] -= c;
        }
        poly_trim(&mut s_new);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s_new;
    }
    (r0, s0)
}

/// Monic cyclotomic polynomial Phi_n, computed by dividing x^n - 1 by
/// Phi_d for every proper divisor d. Cached per order.
fn cyclotomic_poly(n: u32) -> Arc<Vec<Rat>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Rat>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![-Rat::one(), Rat::one()]
    } else {
        let mut num = vec![Rat::zero(); n as usize + 1];
        num[0] = -Rat::one();
        num[n as usize] = Rat::one();
        let mut result = num;
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let phi_d = cyclotomic_poly(d);
            let (q, r) = poly_divmod(&result, &phi_d);
            debug_assert!(r.iter().all(|c| c.is_zero()));
            result = q;
        }
        result
    };
    let arc = Arc::new(poly);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

/// An element of the cyclotomic field Q(zeta_n): coefficients of length
/// phi(n) over the power basis of zeta_n.
#[derive(Debug, Clone)]
pub struct CyclotomicElement {
    pub order: u32,
    pub coeffs: Vec<Rat>,
}

impl CyclotomicElement {
    fn zero(order: u32) -> Self {
        CyclotomicElement {
            order,
            coeffs: vec![Rat::zero(); euler_phi(order)],
        }
    }

    fn from_rational(order: u32, r: Rat) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[0] = r;
        e
    }

    /// Reduce a polynomial of degree < order modulo Phi_n.
    fn reduce(order: u32, mut poly: Vec<Rat>) -> Self {
        let phi = euler_phi(order);
        let modulus = cyclotomic_poly(order);
        poly.resize((order as usize).max(phi), Rat::zero());
        for d in (phi..poly.len()).rev() {
            if poly[d].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[d], Rat::zero());
            for k in 0..phi {
                if !modulus[k].is_zero() {
                    let t = &c * &modulus[k];
                    poly[d - phi + k] -= t;
                }
            }
        }
        poly.truncate(phi);
        CyclotomicElement { order, coeffs: poly }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(r) when the element lies in Q.
    fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn mul(&self, other: &CyclotomicElement) -> CyclotomicElement {
        let n = self.order as usize;
        let mut acc = vec![Rat::zero(); n.max(self.coeffs.len())];
        for (i, ai) in self.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in other.coeffs.iter().enumerate() {
                if !bj.is_zero() {
                    acc[(i + j) % n] += ai * bj;
                }
            }
        }
        CyclotomicElement::reduce(self.order, acc)
    }

    fn inv(&self) -> Result<CyclotomicElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus = cyclotomic_poly(self.order);
        let (g, s) = poly_half_ext_gcd(&self.coeffs, &modulus);
        // Phi_n is irreducible over Q, so the gcd is a nonzero constant.
        debug_assert!(g.len() == 1 && !g[0].is_zero());
        let ginv = Rat::one() / &g[0];
        let scaled: Vec<Rat> = s.iter().map(|c| c * &ginv).collect();
        Ok(CyclotomicElement::reduce(self.order, scaled))
    }
}

/// An exact field element: a rational or an element of Q(zeta_n).
#[derive(Debug, Clone)]
pub enum Scalar {
    Rational(Rat),
    Cyclotomic(CyclotomicElement),
}

/// The ambient field of a presentation: Q or a fixed Q(zeta_n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldContext {
    Rational,
    Cyclotomic(u32),
}

impl FieldContext {
    pub fn describe(&self) -> String {
        match self {
            FieldContext::Rational => "Q".to_string(),
            FieldContext::Cyclotomic(n) => format!("Q(zeta_{n})"),
        }
    }

    /// Embed a scalar into this field. Rationals embed everywhere; a
    /// cyclotomic value must match the declared order (or be rational-valued).
    pub fn coerce(&self, s: &Scalar) -> Result<Scalar> {
        match (self, s) {
            (FieldContext::Rational, Scalar::Rational(_)) => Ok(s.clone()),
            (FieldContext::Rational, Scalar::Cyclotomic(c)) => match c.as_rational() {
                Some(r) => Ok(Scalar::Rational(r)),
                None => Err(Error::FieldMismatch(format!(
                    "cyclotomic value of order {} in a rational context",
                    c.order
                ))),
            },
            (FieldContext::Cyclotomic(n), Scalar::Rational(r)) => Ok(Scalar::Cyclotomic(
                CyclotomicElement::from_rational(*n, r.clone()),
            )),
            (FieldContext::Cyclotomic(n), Scalar::Cyclotomic(c)) => {
                if c.order == *n {
                    Ok(s.clone())
                } else if let Some(r) = c.as_rational() {
                    Ok(Scalar::Cyclotomic(CyclotomicElement::from_rational(*n, r)))
                } else {
                    Err(Error::FieldMismatch(format!(
                        "cyclotomic orders {} and {} are not unified automatically",
                        c.order, n
                    )))
                }
            }
        }
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rat::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rat::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::Rational(Rat::from_integer(BigInt::from(v)))
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        Scalar::Rational(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Cyclotomic(c) => c.as_rational().map_or(false, |r| r.is_one()),
        }
    }

    /// Some(r) when the value lies in Q (regardless of representation).
    pub fn as_rational(&self) -> Option<Rat> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Cyclotomic(c) => c.as_rational(),
        }
    }

    fn binop(
        &self,
        rhs: &Scalar,
        rat: impl Fn(&Rat, &Rat) -> Rat,
        cyc: impl Fn(&CyclotomicElement, &CyclotomicElement) -> CyclotomicElement,
    ) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(rat(a, b))),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => {
                if a.order == b.order {
                    Ok(Scalar::Cyclotomic(cyc(a, b)))
                } else {
                    Err(Error::FieldMismatch(format!(
                        "cyclotomic orders {} and {}",
                        a.order, b.order
                    )))
                }
            }
            (Scalar::Rational(a), Scalar::Cyclotomic(b)) => {
                let a = CyclotomicElement::from_rational(b.order, a.clone());
                Ok(Scalar::Cyclotomic(cyc(&a, b)))
            }
            (Scalar::Cyclotomic(a), Scalar::Rational(b)) => {
                let b = CyclotomicElement::from_rational(a.order, b.clone());
                Ok(Scalar::Cyclotomic(cyc(a, &b)))
            }
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binop(
            rhs,
            |a, b| a + b,
            |a, b| {
                let coeffs = a
                    .coeffs
                    .iter()
                    .zip(&b.coeffs)
                    .map(|(x, y)| x + y)
                    .collect();
                CyclotomicElement {
                    order: a.order,
                    coeffs,
                }
            },
        )
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binop(
            rhs,
            |a, b| a - b,
            |a, b| {
                let coeffs = a
                    .coeffs
                    .iter()
                    .zip(&b.coeffs)
                    .map(|(x, y)| x - y)
                    .collect();
                CyclotomicElement {
                    order: a.order,
                    coeffs,
                }
            },
        )
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        if self.is_zero() || rhs.is_zero() {
            // result stays in the common field; a plain zero is fine everywhere
            return self.binop(rhs, |_, _| Rat::zero(), |a, _| CyclotomicElement::zero(a.order));
        }
        self.binop(rhs, |a, b| a * b, |a, b| a.mul(b))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        let inv = rhs.checked_inv()?;
        self.checked_mul(&inv)
    }

    pub fn checked_inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Cyclotomic(c) => Ok(Scalar::Cyclotomic(c.inv()?)),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(CyclotomicElement {
                order: c.order,
                coeffs: c.coeffs.iter().map(|x| -x).collect(),
            }),
        }
    }

    /// zeta_n^k, as a rational for n in {1, 2} and a Cyclotomic(n) otherwise.
    pub fn root_of_unity(n: u32, k: i64) -> Scalar {
        assert!(n >= 1, "root_of_unity: order must be positive");
        let k = k.rem_euclid(n as i64) as usize;
        match n {
            1 => Scalar::one(),
            2 => {
                if k == 0 {
                    Scalar::one()
                } else {
                    Scalar::from_int(-1)
                }
            }
            _ => {
                let mut poly = vec![Rat::zero(); k + 1];
                poly[k] = Rat::one();
                Scalar::Cyclotomic(CyclotomicElement::reduce(n, poly))
            }
        }
    }

    /// Canonical text form: "p/q" for rational values (even when stored as
    /// cyclotomic), otherwise "order;c0,c1,..." for the power-basis coords.
    pub fn render(&self) -> String {
        match self.as_rational() {
            Some(r) => r.to_string(),
            None => match self {
                Scalar::Cyclotomic(c) => {
                    let coeffs: Vec<String> = c.coeffs.iter().map(|x| x.to_string()).collect();
                    format!("{};{}", c.order, coeffs.join(","))
                }
                Scalar::Rational(_) => unreachable!(),
            },
        }
    }

    /// Inverse of [`Scalar::render`].
    pub fn parse(text: &str) -> Result<Scalar> {
        let text = text.trim();
        if let Some((order, rest)) = text.split_once(';') {
            let order: u32 = order
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclotomic order in {text:?}")))?;
            if order == 0 {
                return Err(Error::Parse("cyclotomic order must be positive".into()));
            }
            let coeffs: Result<Vec<Rat>> = rest
                .split(',')
                .map(|p| {
                    Rat::from_str(p.trim())
                        .map_err(|_| Error::Parse(format!("bad rational {p:?}")))
                })
                .collect();
            let coeffs = coeffs?;
            if coeffs.len() != euler_phi(order) {
                return Err(Error::Parse(format!(
                    "cyclotomic order {} needs {} coefficients, got {}",
                    order,
                    euler_phi(order),
                    coeffs.len()
                )));
            }
            Ok(Scalar::Cyclotomic(CyclotomicElement { order, coeffs }))
        } else {
            Rat::from_str(text)
                .map(Scalar::Rational)
                .map_err(|_| Error::Parse(format!("bad rational {text:?}")))
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order == b.order => {
                a.coeffs == b.coeffs
            }
            // Across representations, equal iff both are the same rational.
            _ => match (self.as_rational(), other.as_rational()) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            },
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => {
                let c = match self {
                    Scalar::Cyclotomic(c) => c,
                    Scalar::Rational(_) => unreachable!(),
                };
                let mut parts = Vec::new();
                for (k, coeff) in c.coeffs.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let base = match k {
                        0 => "1".to_string(),
                        1 => format!("z{}", c.order),
                        _ => format!("z{}^{}", c.order, k),
                    };
                    if k == 0 {
                        parts.push(coeff.to_string());
                    } else if coeff.is_one() {
                        parts.push(base);
                    } else if (-coeff).is_one() {
                        parts.push(format!("-{base}"));
                    } else {
                        parts.push(format!("{coeff}*{base}"));
                    }
                }
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

macro_rules! scalar_binop_impl {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
    };
}

scalar_binop_impl!(Add, add, checked_add);
scalar_binop_impl!(Sub, sub, checked_sub);
scalar_binop_impl!(Mul, mul, checked_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zeta(n: u32, k: i64) -> Scalar {
        Scalar::root_of_unity(n, k)
    }

    #[test]
    fn rational_arithmetic() {
        let a = Scalar::from_fraction(1, 2);
        let b = Scalar::from_fraction(1, 3);
        assert_eq!(a.checked_add(&b).unwrap(), Scalar::from_fraction(5, 6));
    }

    #[test]
    fn cyclotomic_orders_reduce() {
        // zeta_3 * zeta_3^2 = 1
        let p = zeta(3, 1).checked_mul(&zeta(3, 2)).unwrap();
        assert_eq!(p, Scalar::one());
        assert_eq!(zeta(2, 1), Scalar::from_int(-1));
        assert_eq!(zeta(4, 2), Scalar::from_int(-1));
    }

    #[test]
    fn roots_are_primitive() {
        for n in [3u32, 4, 5, 6, 8, 12] {
            let z = zeta(n, 1);
            let mut pow = Scalar::one();
            for j in 1..n {
                pow = pow.checked_mul(&z).unwrap();
                assert_ne!(pow, Scalar::one(), "zeta_{n}^{j} must not be 1");
            }
            pow = pow.checked_mul(&z).unwrap();
            assert_eq!(pow, Scalar::one());
        }
    }

    #[test]
    fn root_exponent_wraps() {
        for k in -7i64..15 {
            assert_eq!(zeta(5, k), zeta(5, k.rem_euclid(5)));
        }
    }

    #[test]
    fn inverse_multiplies_back() {
        // inv(1 + zeta_3), checked by multiplying back
        let x = Scalar::one().checked_add(&zeta(3, 1)).unwrap();
        let inv = x.checked_inv().unwrap();
        assert_eq!(x.checked_mul(&inv).unwrap(), Scalar::one());

        let y = Scalar::from_int(2)
            .checked_add(&zeta(8, 3))
            .unwrap()
            .checked_sub(&zeta(8, 1))
            .unwrap();
        let yinv = y.checked_inv().unwrap();
        assert_eq!(y.checked_mul(&yinv).unwrap(), Scalar::one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(
            Scalar::zero().checked_inv(),
            Err(Error::DivisionByZero)
        ));
        let z = zeta(3, 1).checked_sub(&zeta(3, 1)).unwrap();
        assert!(matches!(z.checked_inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn mixed_orders_rejected() {
        let a = zeta(3, 1);
        let b = zeta(4, 1);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::FieldMismatch(_))
        ));
    }

    #[test]
    fn rational_embeds_into_cyclotomic() {
        let a = Scalar::from_fraction(3, 2);
        let b = zeta(3, 1);
        let s = a.checked_add(&b).unwrap();
        let back = s.checked_sub(&b).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn render_parse_round_trip() {
        let samples = vec![
            Scalar::from_int(0),
            Scalar::from_int(7),
            Scalar::from_fraction(-3, 4),
            zeta(3, 1),
            zeta(8, 3).checked_add(&Scalar::from_fraction(1, 2)).unwrap(),
            zeta(5, 2).checked_sub(&zeta(5, 4)).unwrap(),
        ];
        for s in samples {
            let text = s.render();
            let parsed = Scalar::parse(&text).unwrap();
            assert_eq!(parsed, s, "round trip through {text:?}");
        }
    }

    #[test]
    fn field_context_coercion() {
        let ctx = FieldContext::Cyclotomic(3);
        let r = ctx.coerce(&Scalar::from_fraction(2, 5)).unwrap();
        assert_eq!(r, Scalar::from_fraction(2, 5));
        assert!(ctx.coerce(&zeta(4, 1)).is_err());
        // a rational-valued cyclotomic of another order re-embeds
        assert_eq!(ctx.coerce(&zeta(4, 2)).unwrap(), Scalar::from_int(-1));
    }

    fn arb_rational() -> impl Strategy<Value = Scalar> {
        (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Scalar::from_fraction(n, d))
    }

    fn arb_scalar(order: u32) -> impl Strategy<Value = Scalar> {
        proptest::collection::vec(-6i64..=6, euler_phi(order)).prop_map(move |cs| {
            let mut acc = Scalar::zero();
            for (k, c) in cs.into_iter().enumerate() {
                if c != 0 {
                    let term = Scalar::from_int(c)
                        .checked_mul(&Scalar::root_of_unity(order, k as i64))
                        .unwrap();
                    acc = acc.checked_add(&term).unwrap();
                }
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            let ab_c = a.checked_add(&b).unwrap().checked_add(&c).unwrap();
            let a_bc = a.checked_add(&b.checked_add(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let lhs = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
            let rhs = a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            if !a.is_zero() {
                let inv = a.checked_inv().unwrap();
                prop_assert_eq!(a.checked_mul(&inv).unwrap(), Scalar::one());
            }
        }

        #[test]
        fn cyclotomic_field_axioms(a in arb_scalar(5), b in arb_scalar(5), c in arb_scalar(5)) {
            let ab_c = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
            let a_bc = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let lhs = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
            let rhs = a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            if !a.is_zero() {
                let inv = a.checked_inv().unwrap();
                prop_assert_eq!(a.checked_mul(&inv).unwrap(), Scalar::one());
            }
        }

        #[test]
        fn cyclotomic_round_trip(a in arb_scalar(8)) {
            prop_assert_eq!(Scalar::parse(&a.render()).unwrap(), a);
        }
    }
}
