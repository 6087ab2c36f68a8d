//! Constructors for the monomial arrangement families and the distinguished
//! flats used in their counterexamples.

use std::fmt;
use std::str::FromStr;

use crate::arrangement::{Arrangement, Flat};
use crate::error::{Error, Result};
use crate::exactnum::Cyc;

/// A named arrangement family with parameters, written on the command line
/// as e.g. `intermediate:r=3,l=4,k=1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Boolean {
        l: usize,
    },
    Braid {
        l: usize,
    },
    Intermediate {
        r: u32,
        l: usize,
        k: usize,
    },
    /// Reflection arrangement of G(r,1,ℓ).
    MonomialFull {
        r: u32,
        l: usize,
    },
    /// Reflection arrangement of G(r,p,ℓ).
    MonomialG {
        r: u32,
        p: u32,
        l: usize,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Arrangement> {
        match *self {
            FamilySpec::Boolean { l } => boolean(l),
            FamilySpec::Braid { l } => braid(l),
            FamilySpec::Intermediate { r, l, k } => intermediate(r, l, k),
            FamilySpec::MonomialFull { r, l } => intermediate(r, l, l),
            FamilySpec::MonomialG { r, p, l } => monomial_group(r, p, l),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let mut r = None;
        let mut p = None;
        let mut l = None;
        let mut k = None;
        for kv in params.split(',').filter(|x| !x.is_empty()) {
            let (key, value) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {kv:?}")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad value in {kv:?}")))?;
            let slot = match key.trim() {
                "r" => &mut r,
                "p" => &mut p,
                "l" => &mut l,
                "k" => &mut k,
                other => return Err(Error::Parse(format!("unknown parameter {other:?}"))),
            };
            *slot = Some(value);
        }
        let need = |v: Option<u64>, name: &str| {
            v.ok_or_else(|| Error::Parse(format!("missing parameter {name}")))
        };
        let spec = match name.trim() {
            "boolean" => FamilySpec::Boolean {
                l: need(l, "l")? as usize,
            },
            "braid" => FamilySpec::Braid {
                l: need(l, "l")? as usize,
            },
            "intermediate" => FamilySpec::Intermediate {
                r: need(r, "r")? as u32,
                l: need(l, "l")? as usize,
                k: need(k, "k")? as usize,
            },
            "monomial_full" => FamilySpec::MonomialFull {
                r: need(r, "r")? as u32,
                l: need(l, "l")? as usize,
            },
            "monomial_g" => FamilySpec::MonomialG {
                r: need(r, "r")? as u32,
                p: need(p, "p")? as u32,
                l: need(l, "l")? as usize,
            },
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        };
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Boolean { l } => write!(f, "boolean:l={l}"),
            FamilySpec::Braid { l } => write!(f, "braid:l={l}"),
            FamilySpec::Intermediate { r, l, k } => write!(f, "intermediate:r={r},l={l},k={k}"),
            FamilySpec::MonomialFull { r, l } => write!(f, "monomial_full:r={r},l={l}"),
            FamilySpec::MonomialG { r, p, l } => write!(f, "monomial_g:r={r},p={p},l={l}"),
        }
    }
}

fn unit(order: u32, dim: usize, i: usize) -> Vec<Cyc> {
    let mut v = vec![Cyc::zero(order); dim];
    v[i] = Cyc::one(order);
    v
}

/// The arrangement A^k_ℓ(r) with defining polynomial
/// `x_1 ⋯ x_k Π_{i<j, 0≤n<r} (x_i - ζ_r^n x_j)` over Q(ζ_r).
pub fn intermediate(r: u32, l: usize, k: usize) -> Result<Arrangement> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    if l < 2 {
        return Err(Error::InvalidParameter(format!(
            "l must be at least 2, got {l}"
        )));
    }
    if k > l {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds l = {l}")));
    }
    let mut normals: Vec<Vec<Cyc>> = (0..k).map(|i| unit(r, l, i)).collect();
    for i in 0..l {
        for j in i + 1..l {
            for n in 0..r {
                let mut v = unit(r, l, i);
                v[j] = -&Cyc::zeta(r, n as i64);
                normals.push(v);
            }
        }
    }
    Arrangement::new(r, l, normals)
}

/// Reflection arrangement of G(r,p,ℓ): the coordinate hyperplanes are
/// present exactly when p < r.
pub fn monomial_group(r: u32, p: u32, l: usize) -> Result<Arrangement> {
    if p == 0 || !r.is_multiple_of(p) {
        return Err(Error::InvalidParameter(format!(
            "p = {p} must divide r = {r}"
        )));
    }
    intermediate(r, l, if p == r { 0 } else { l })
}

/// `{ker(x_i - x_j) : i < j}`; empty when ℓ = 1.
pub fn braid(l: usize) -> Result<Arrangement> {
    match l {
        0 => Err(Error::InvalidParameter("l must be at least 1".into())),
        1 => Ok(Arrangement::empty(1)),
        _ => intermediate(1, l, 0),
    }
}

/// The coordinate hyperplanes `{ker x_i}`.
pub fn boolean(l: usize) -> Result<Arrangement> {
    if l == 0 {
        return Err(Error::InvalidParameter("l must be at least 1".into()));
    }
    Arrangement::new(1, l, (0..l).map(|i| unit(1, l, i)).collect())
}

/// For `a = A^1_ℓ(r)` with ℓ ≥ 4 and r ≥ 3, the flat cut out by all
/// `ker(x_i - ζ^n x_j)` with `2 ≤ i < j ≤ ℓ`, whose localization is a copy
/// of A^0_{ℓ-1}(r) in ℓ-space.
///
/// The parameters are read off the arrangement: r is its cyclotomic order
/// and ℓ its dimension.
pub fn example_localization_flat(a: &Arrangement) -> Result<Flat> {
    let r = a.order();
    let l = a.dim();
    if l < 4 || r < 3 {
        return Err(Error::InvalidParameter(format!(
            "needs A^1_l(r) with l >= 4 and r >= 3, got order {r} and dimension {l}"
        )));
    }
    if *a != intermediate(r, l, 1)? {
        return Err(Error::InvalidParameter(format!(
            "arrangement is not A^1_{l}({r})"
        )));
    }
    let mut members = Vec::new();
    for i in 1..l {
        for j in i + 1..l {
            for n in 0..r {
                let mut v = unit(r, l, i);
                v[j] = -&Cyc::zeta(r, n as i64);
                members.push(a.index_of(&v).expect("generator hyperplane is present"));
            }
        }
    }
    let flat = a.closure(&members)?;
    if flat.incidence().len() != members.len() {
        return Err(Error::NotAFlat(
            "closure picked up extra hyperplanes; construction is inconsistent".into(),
        ));
    }
    Ok(flat)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        assert_eq!(intermediate(3, 4, 1).unwrap().len(), 19);
        assert_eq!(intermediate(3, 3, 0).unwrap().len(), 9);
        for l in 2..6 {
            assert_eq!(braid(l).unwrap().len(), l * (l - 1) / 2);
            assert_eq!(boolean(l).unwrap().len(), l);
        }
        for r in 1..5u32 {
            for l in 2..5usize {
                for k in 0..=l {
                    let a = intermediate(r, l, k).unwrap();
                    assert_eq!(a.len(), k + r as usize * l * (l - 1) / 2);
                }
            }
        }
    }

    #[test]
    fn parameter_checks() {
        assert!(intermediate(3, 3, 5).is_err());
        assert!(intermediate(3, 1, 0).is_err());
        assert!(intermediate(0, 3, 0).is_err());
        assert!(boolean(0).is_err());
        assert!(monomial_group(4, 3, 3).is_err());
    }

    #[test]
    fn nested_and_named() {
        for k in 0..3 {
            let a = intermediate(3, 3, k).unwrap();
            let b = intermediate(3, 3, k + 1).unwrap();
            assert!(a.is_subarrangement_of(&b));
            assert!(!b.is_subarrangement_of(&a));
        }
        assert_eq!(braid(4).unwrap(), intermediate(1, 4, 0).unwrap());
        assert!(braid(1).unwrap().is_empty());
        assert!(braid(0).is_err());
        assert_eq!(
            monomial_group(3, 3, 3).unwrap(),
            intermediate(3, 3, 0).unwrap()
        );
        assert_eq!(
            monomial_group(4, 2, 3).unwrap(),
            intermediate(4, 3, 3).unwrap()
        );
        assert_eq!(
            monomial_group(3, 1, 3).unwrap(),
            intermediate(3, 3, 3).unwrap()
        );
    }

    #[test]
    fn spec_strings() {
        let s: FamilySpec = "intermediate:r=3,l=4,k=1".parse().unwrap();
        assert_eq!(s, FamilySpec::Intermediate { r: 3, l: 4, k: 1 });
        assert_eq!(s.to_string(), "intermediate:r=3,l=4,k=1");
        assert_eq!(
            "boolean:l=4"
                .parse::<FamilySpec>()
                .unwrap()
                .build()
                .unwrap()
                .len(),
            4
        );
        assert!("intermediate:r=3,l=3,k=5"
            .parse::<FamilySpec>()
            .unwrap()
            .build()
            .is_err());
        assert!("intermediate:r=3,l=3".parse::<FamilySpec>().is_err());
        assert!("cube:l=3".parse::<FamilySpec>().is_err());
        assert!("braid:l=x".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn example_flat_requires_the_right_arrangement() {
        assert!(example_localization_flat(&intermediate(3, 4, 0).unwrap()).is_err());
        assert!(example_localization_flat(&intermediate(3, 3, 1).unwrap()).is_err());
        assert!(example_localization_flat(&intermediate(2, 4, 1).unwrap()).is_err());
        let a = intermediate(3, 4, 1).unwrap();
        let x = example_localization_flat(&a).unwrap();
        assert_eq!(x.incidence().len(), 9);
        // x_2 = x_3 = x_4 = 0
        assert_eq!(x.dim(), 1);
    }
}
