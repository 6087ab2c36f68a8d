use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Rat;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `x^n - 1` by
/// `Φ_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_poly(n: u32) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "cyclotomic order must be positive".into(),
        ));
    }
    Ok((*cyclotomic_cached(n)).clone())
}

fn cyclotomic_cached(n: u32) -> Arc<IntPoly> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<IntPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    let mut xn = vec![BigInt::zero(); n as usize + 1];
    xn[0] = -BigInt::one();
    xn[n as usize] = BigInt::one();
    let mut p = IntPoly::new(xn);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        p = p
            .div_exact(&cyclotomic_cached(d))
            .expect("cyclotomic divisor is nonzero")
            .expect("x^n - 1 is divisible by every Φ_d with d | n");
    }
    let p = Arc::new(p);
    cache.write().unwrap().insert(n, p.clone());
    p
}

/// An element of Q(ζ_N), `Σ coeffs[i] ζ_N^i` with `coeffs.len() == φ(N)`.
///
/// Orders 1 and 2 give the rationals themselves (φ = 1).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "CycRepr")]
pub struct Cyc {
    order: u32,
    coeffs: Vec<Rat>,
}

impl Cyc {
    /// Builds an element from its power-basis coefficients.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rat>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter(
                "cyclotomic order must be positive".into(),
            ));
        }
        let phi = euler_phi(order);
        if coeffs.len() != phi {
            return Err(Error::Parse(format!(
                "order {order} element needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Cyc { order, coeffs })
    }

    pub fn zero(order: u32) -> Self {
        Cyc {
            order,
            coeffs: vec![Rat::zero(); euler_phi(order)],
        }
    }

    pub fn one(order: u32) -> Self {
        Cyc::from_rat(order, Rat::one())
    }

    /// Embeds a rational number into Q(ζ_N).
    pub fn from_rat(order: u32, q: Rat) -> Self {
        let mut c = Cyc::zero(order);
        c.coeffs[0] = q;
        c
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Cyc::from_rat(order, Rat::from_integer(n))
    }

    /// ζ_N^k, exponent taken mod N.
    pub fn zeta(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        Cyc::reduce(order, raw)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rat::is_zero)
    }

    /// Returns the rational value when the element lies in Q.
    pub fn as_rat(&self) -> Option<&Rat> {
        self.coeffs[1..]
            .iter()
            .all(Rat::is_zero)
            .then_some(&self.coeffs[0])
    }

    fn check_order(&self, other: &Cyc) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    /// Reduces a coefficient vector of arbitrary length modulo Φ_N.
    fn reduce(order: u32, mut raw: Vec<BigRational>) -> Cyc {
        let modulus = cyclotomic_cached(order);
        let m = modulus.coeffs();
        let phi = m.len() - 1;
        for top in (phi..raw.len()).rev() {
            if raw[top].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut raw[top]);
            for (j, mj) in m[..phi].iter().enumerate() {
                if !mj.is_zero() {
                    raw[top - phi + j] -= &c * BigRational::from_integer(mj.clone());
                }
            }
        }
        raw.resize(phi, BigRational::zero());
        Cyc {
            order,
            coeffs: raw.into_iter().map(Rat::from_big).collect(),
        }
    }

    pub fn try_add(&self, other: &Cyc) -> Result<Cyc> {
        self.check_order(other)?;
        Ok(Cyc {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Cyc) -> Result<Cyc> {
        self.check_order(other)?;
        Ok(Cyc {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Cyc) -> Result<Cyc> {
        self.check_order(other)?;
        let phi = self.coeffs.len();
        if phi == 1 {
            return Ok(Cyc {
                order: self.order,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        if let Some(q) = self.as_rat() {
            return Ok(other.scale(q));
        }
        if let Some(q) = other.as_rat() {
            return Ok(self.scale(q));
        }
        let mut raw = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a.as_big() * b.as_big();
                }
            }
        }
        Ok(Cyc::reduce(self.order, raw))
    }

    pub fn scale(&self, q: &Rat) -> Cyc {
        Cyc {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// `(a(x), Φ_N(x))` in Q[x].
    pub fn inv(&self) -> Result<Cyc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rat() {
            return Ok(Cyc::from_rat(self.order, q.inv()?));
        }
        let modulus: QPoly = cyclotomic_cached(self.order)
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let a: QPoly = self.coeffs.iter().map(|c| c.as_big().clone()).collect();
        // Invariant: s_i * a ≡ r_i (mod Φ_N).
        let (mut r0, mut r1) = (modulus, qtrim(a));
        let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = qdivrem(&r0, &r1);
            let s2 = qsub(&s0, &qmul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Φ_N is irreducible, so the last nonzero remainder is a unit.
        let c = r1[0].recip();
        let raw = s1.into_iter().map(|x| x * &c).collect();
        Ok(Cyc::reduce(self.order, raw))
    }

    pub fn try_div(&self, other: &Cyc) -> Result<Cyc> {
        self.try_mul(&other.inv()?)
    }

    /// Re-expresses the element in Q(ζ_M) via ζ_N ↦ ζ_M^{M/N}.
    pub fn promote(&self, target: u32) -> Result<Cyc> {
        if target == 0 || !target.is_multiple_of(self.order) {
            return Err(Error::NotDivisibleOrder {
                from: self.order,
                to: target,
            });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let step = (target / self.order) as usize;
        let mut raw = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.as_big().clone();
        }
        Ok(Cyc::reduce(target, raw))
    }
}

#[derive(Deserialize)]
struct CycRepr {
    order: u32,
    coeffs: Vec<Rat>,
}

impl TryFrom<CycRepr> for Cyc {
    type Error = Error;

    fn try_from(r: CycRepr) -> Result<Cyc> {
        Cyc::from_coeffs(r.order, r.coeffs)
    }
}

type QPoly = Vec<BigRational>;

fn qtrim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn qmul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qtrim(out)
}

fn qsub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    qtrim(out)
}

fn qdivrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut rem = a.clone();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = b[db].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= &c * y;
        }
        quot[k] = c;
    }
    (qtrim(quot), qtrim(rem))
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => c.to_string(),
                1 => format!("{c}*z{}", self.order),
                _ => format!("{c}*z{}^{i}", self.order),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc[{}]({self})", self.order)
    }
}

// Operator forms panic on order mismatch; use the `try_*` methods when the
// orders are not known to agree.
impl Add for &Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        self.try_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl Sub for &Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        self.try_sub(rhs).expect("cyclotomic order mismatch")
    }
}

impl Mul for &Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        self.try_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(p: i64, q: i64) -> Rat {
        Rat::new(BigInt::from(p), BigInt::from(q)).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1).unwrap(), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(3).unwrap(), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(6).unwrap(), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(
            cyclotomic_poly(12).unwrap(),
            IntPoly::from_i64(&[1, 0, -1, 0, 1])
        );
        assert!(cyclotomic_poly(0).is_err());
        for n in 1..=30 {
            let p = cyclotomic_poly(n).unwrap();
            assert!(p.is_monic(), "Φ_{n} monic");
            assert_eq!(p.degree().unwrap(), euler_phi(n), "deg Φ_{n}");
        }
    }

    #[test]
    fn totient() {
        let expect = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (n, &e) in (1..=12).zip(expect.iter()) {
            assert_eq!(euler_phi(n), e);
        }
    }

    #[test]
    fn roots_of_unity() {
        let i = Cyc::zeta(4, 1);
        assert_eq!(&i * &i, -&Cyc::one(4));
        let sum = &(&Cyc::zeta(3, 0) + &Cyc::zeta(3, 1)) + &Cyc::zeta(3, 2);
        assert!(sum.is_zero());
        assert_eq!(Cyc::zeta(3, 4), Cyc::zeta(3, 1));
        assert_eq!(Cyc::zeta(3, -1), Cyc::zeta(3, 2));
        assert!(Cyc::zeta(5, 0).is_one());
        assert_eq!(&Cyc::zeta(4, 1) * &Cyc::zeta(4, 3), Cyc::one(4));
    }

    #[test]
    fn inverses() {
        let x = Cyc::from_rat(7, rat(-3, 5));
        assert!((&x + &(-&x)).is_zero());
        assert_eq!(
            &Cyc::from_rat(1, rat(2, 3)) * &Cyc::from_rat(1, rat(3, 2)),
            Cyc::one(1)
        );
        assert_eq!(Cyc::zeta(3, 1).inv().unwrap(), Cyc::zeta(3, 2));
        assert_eq!(
            Cyc::from_int(3, 5).inv().unwrap(),
            Cyc::from_rat(3, rat(1, 5))
        );
        let one_plus = &Cyc::one(3) + &Cyc::zeta(3, 1);
        assert_eq!(one_plus.inv().unwrap(), -&Cyc::zeta(3, 1));
        assert_eq!(Cyc::zero(3).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        assert_eq!(
            Cyc::one(3).try_add(&Cyc::one(4)),
            Err(Error::OrderMismatch(3, 4))
        );
        assert!(Cyc::one(3).try_mul(&Cyc::one(6)).is_err());
    }

    #[test]
    fn promotion() {
        assert_eq!(Cyc::zeta(3, 1).promote(6).unwrap(), Cyc::zeta(6, 2));
        assert_eq!(
            Cyc::from_rat(1, rat(7, 2)).promote(12).unwrap(),
            Cyc::from_rat(12, rat(7, 2))
        );
        assert_eq!(
            Cyc::one(3).promote(4),
            Err(Error::NotDivisibleOrder { from: 3, to: 4 })
        );
        assert!(Cyc::from_coeffs(3, vec![Rat::one()]).is_err());
    }

    // Floating-point evaluation at exp(2πi/N), test-only.
    fn evaluate(c: &Cyc) -> (f64, f64) {
        let n = c.order() as f64;
        c.coeffs()
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (k, q)| {
                let v = q.numer().to_string().parse::<f64>().unwrap()
                    / q.denom().to_string().parse::<f64>().unwrap();
                let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
                (re + v * ang.cos(), im + v * ang.sin())
            })
    }

    fn arb_cyc(order: u32) -> impl Strategy<Value = Cyc> {
        proptest::collection::vec((-6i64..6, 1i64..4), euler_phi(order)).prop_map(move |v| {
            Cyc::from_coeffs(order, v.into_iter().map(|(p, q)| rat(p, q)).collect()).unwrap()
        })
    }

    fn arb_order_and_pair() -> impl Strategy<Value = (Cyc, Cyc, Cyc)> {
        prop_oneof![Just(1u32), Just(3), Just(4), Just(5), Just(8), Just(12)]
            .prop_flat_map(|n| (arb_cyc(n), arb_cyc(n), arb_cyc(n)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in arb_order_and_pair()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn promote_is_a_ring_homomorphism(
            (a, b, _) in prop_oneof![Just(1u32), Just(3), Just(4), Just(6)]
                .prop_flat_map(|n| (arb_cyc(n), arb_cyc(n), arb_cyc(n))),
            mult in 1u32..4,
        ) {
            let m = a.order() * mult;
            let pa = a.promote(m).unwrap();
            let pb = b.promote(m).unwrap();
            prop_assert_eq!((&a + &b).promote(m).unwrap(), &pa + &pb);
            prop_assert_eq!((&a * &b).promote(m).unwrap(), &pa * &pb);
            if a != b {
                prop_assert_ne!(pa.clone(), pb);
            }
            let (x, y) = evaluate(&a);
            let (u, v) = evaluate(&pa);
            prop_assert!((x - u).abs() < 1e-9 && (y - v).abs() < 1e-9);
        }
    }
}
