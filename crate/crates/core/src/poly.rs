//! Dense univariate polynomials over Z.
//!
//! Characteristic polynomials live here, together with the exact division
//! and integer-root routines the freeness searches rely on.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer polynomial, `coeffs[i]` is the coefficient of `t^i`. The
/// coefficient vector never has trailing zeros, so the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Characteristic polynomials are plain integer polynomials.
pub type CharPoly = IntPoly;

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// `t^n`
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        IntPoly { coeffs }
    }

    /// `Π (t - r)` over the given roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots.iter().fold(IntPoly::one(), |acc, &r| {
            acc.mul(&IntPoly::from_i64(&[-r, 1]))
        })
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                match other.coeffs.get(i) {
                    Some(b) => a + b,
                    None => a,
                }
            })
            .collect();
        IntPoly::new(coeffs)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }

    /// Long division in Z[t]. Returns `Ok(None)` when `divisor` does not
    /// divide `self` over the integers.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<Option<IntPoly>> {
        let lead = divisor.leading().ok_or(Error::ZeroDivisor)?;
        if self.is_zero() {
            return Ok(Some(IntPoly::zero()));
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dd {
            return Ok(None);
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Ok(None);
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
        Ok(Some(IntPoly::new(quot)))
    }

    /// True iff `self` divides `other` in Z[t].
    pub fn divides(&self, other: &IntPoly) -> Result<bool> {
        Ok(other.div_exact(self)?.is_some())
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_i64(&self, t: i64) -> BigInt {
        self.eval(&BigInt::from(t))
    }

    /// If the polynomial is `Π (t - b_i)` with every `b_i` a nonnegative
    /// integer, returns the sorted multiset of the `b_i`.
    pub fn nonnegative_integer_roots(&self) -> Result<Option<Vec<u64>>> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let mut rest = self.clone();
        let mut roots = Vec::new();
        // t^m factor
        let zeros = rest.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            rest.coeffs.drain(..zeros);
            roots.extend(std::iter::repeat_n(0, zeros));
        }
        if rest.degree() == Some(0) {
            return Ok(Some(roots));
        }
        // Cauchy bound on the modulus of any root of a monic polynomial.
        let bound = rest
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
            + 1u32;
        let Some(bound) = bound.to_u64() else {
            return Ok(None);
        };
        let mut b: u64 = 1;
        while b <= bound && rest.degree().unwrap_or(0) > 0 {
            // every positive integer root divides the constant term
            if !(&rest.coeffs[0] % b).is_zero() {
                b += 1;
                continue;
            }
            let linear = IntPoly::new(vec![-BigInt::from(b), BigInt::one()]);
            match rest.div_exact(&linear)? {
                Some(q) => {
                    rest = q;
                    roots.push(b);
                }
                None => b += 1,
            }
        }
        if rest.degree() == Some(0) {
            Ok(Some(roots))
        } else {
            Ok(None)
        }
    }

    /// Display as a product of linear factors, e.g. `t(t-1)^2`, when the
    /// polynomial splits over nonnegative integers.
    pub fn factored_display(&self) -> Option<String> {
        let roots = self.nonnegative_integer_roots().ok()??;
        if roots.is_empty() {
            return Some("1".to_string());
        }
        let mut out = String::new();
        let mut i = 0;
        while i < roots.len() {
            let r = roots[i];
            let mult = roots[i..].iter().take_while(|&&x| x == r).count();
            let base = if r == 0 {
                "t".to_string()
            } else {
                format!("(t-{r})")
            };
            out.push_str(&base);
            if mult > 1 {
                out.push_str(&format!("^{mult}"));
            }
            i += mult;
        }
        Some(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

// Coefficient arrays are serialized as JSON integers when they fit in i64
// and as decimal strings otherwise.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Int(i64),
            Str(String),
        }
        let raw = Vec::<Coeff>::deserialize(d)?;
        let mut coeffs = Vec::with_capacity(raw.len());
        for c in raw {
            coeffs.push(match c {
                Coeff::Int(v) => BigInt::from(v),
                Coeff::Str(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| serde::de::Error::custom(format!("bad coefficient {s:?}")))?,
            });
        }
        if coeffs.last().is_some_and(|c| c.is_zero()) {
            return Err(serde::de::Error::custom("trailing zero coefficient"));
        }
        Ok(IntPoly { coeffs })
    }
}
