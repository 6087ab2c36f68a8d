//! Central hyperplane arrangements over Q(ζ_N) and the constructions on
//! them: deletion, restriction, localization and products.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactnum::Cyc;
use crate::incidence::Incidence;
use crate::linalg::{normalize, Echelon};

/// A linear hyperplane `ker(α)`, stored by a normal vector whose first
/// nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vec<Cyc>,
}

impl Hyperplane {
    /// Normalizes `normal`; fails on the zero vector.
    pub fn new(normal: &[Cyc]) -> Result<Self> {
        let normal = normalize(normal)
            .ok_or_else(|| Error::InvalidParameter("zero normal vector".into()))?;
        Ok(Hyperplane { normal })
    }

    pub fn normal(&self) -> &[Cyc] {
        &self.normal
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.normal.iter().map(|c| format!("{c}")))
            .finish()
    }
}

/// A finite set of linear hyperplanes in an `dim`-dimensional space over
/// Q(ζ_order). Hyperplanes are kept deduplicated and sorted, so two
/// arrangements are equal iff they have the same hyperplanes in the same
/// coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Arrangement {
    order: u32,
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

/// An element of the intersection lattice.
///
/// `incidence` is the set of hyperplanes containing the subspace, and
/// `basis` is the reduced row-echelon basis of the span of their normals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Flat {
    incidence: Incidence,
    dim: usize,
    basis: Echelon,
}

impl Flat {
    pub(crate) fn from_parts(incidence: Incidence, basis: Echelon) -> Self {
        Flat {
            incidence,
            dim: basis.dim() - basis.rank(),
            basis,
        }
    }

    pub fn incidence(&self) -> &Incidence {
        &self.incidence
    }

    pub fn indices(&self) -> Vec<usize> {
        self.incidence.to_vec()
    }

    /// Dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.basis.rank()
    }

    pub fn basis(&self) -> &Echelon {
        &self.basis
    }
}

impl Arrangement {
    /// Builds an arrangement from arbitrary nonzero normals, all with
    /// entries of cyclotomic order `order`.
    pub fn new(order: u32, dim: usize, normals: Vec<Vec<Cyc>>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter("order must be positive".into()));
        }
        let mut hyperplanes = Vec::with_capacity(normals.len());
        for (row, v) in normals.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::BadRow {
                    row,
                    message: format!("expected {dim} entries, found {}", v.len()),
                });
            }
            if let Some(c) = v.iter().find(|c| c.order() != order) {
                return Err(Error::BadRow {
                    row,
                    message: format!(
                        "entry of order {} in an order {order} arrangement",
                        c.order()
                    ),
                });
            }
            let h = Hyperplane::new(v).map_err(|_| Error::BadRow {
                row,
                message: "zero normal vector".into(),
            })?;
            hyperplanes.push(h);
        }
        Ok(Arrangement::from_hyperplanes(order, dim, hyperplanes))
    }

    fn from_hyperplanes(order: u32, dim: usize, mut hyperplanes: Vec<Hyperplane>) -> Self {
        hyperplanes.sort();
        hyperplanes.dedup();
        Arrangement {
            order,
            dim,
            hyperplanes,
        }
    }

    /// The empty arrangement Φ_ℓ.
    pub fn empty(dim: usize) -> Self {
        Arrangement {
            order: 1,
            dim,
            hyperplanes: Vec::new(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, index: usize) -> Result<&Hyperplane> {
        self.hyperplanes.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.len(),
        })
    }

    /// Index of the hyperplane with the given (not necessarily normalized)
    /// normal.
    pub fn index_of(&self, normal: &[Cyc]) -> Option<usize> {
        let h = Hyperplane::new(normal).ok()?;
        self.hyperplanes.binary_search(&h).ok()
    }

    /// True iff every hyperplane of `self` is a hyperplane of `other`.
    pub fn is_subarrangement_of(&self, other: &Arrangement) -> bool {
        self.dim == other.dim
            && self
                .hyperplanes
                .iter()
                .all(|h| other.hyperplanes.binary_search(h).is_ok())
    }

    fn check_index(&self, index: usize) -> Result<()> {
        self.hyperplane(index).map(|_| ())
    }

    /// The ambient space V, the bottom of the lattice.
    pub fn ambient_flat(&self) -> Flat {
        Flat::from_parts(Incidence::with_capacity(self.len()), Echelon::new(self.dim))
    }

    /// The flat cut out by the given hyperplanes, with its incidence closed
    /// under linear dependence.
    pub fn closure(&self, indices: &[usize]) -> Result<Flat> {
        let mut basis = Echelon::new(self.dim);
        for &i in indices {
            basis.insert(self.hyperplane(i)?.normal());
        }
        let incidence = Incidence::from_indices(
            self.len(),
            self.hyperplanes
                .iter()
                .enumerate()
                .filter(|(_, h)| basis.contains(h.normal()))
                .map(|(i, _)| i),
        );
        Ok(Flat::from_parts(incidence, basis))
    }

    pub fn hyperplane_flat(&self, index: usize) -> Result<Flat> {
        self.closure(&[index])
    }

    /// Checks that `flat` is an element of this arrangement's lattice.
    pub fn validate_flat(&self, flat: &Flat) -> Result<()> {
        if let Some(m) = flat.incidence.last() {
            if m >= self.len() {
                return Err(Error::NotAFlat(format!(
                    "hyperplane index {m} out of range"
                )));
            }
        }
        if flat.basis.dim() != self.dim {
            return Err(Error::NotAFlat(format!(
                "basis lives in dimension {}, arrangement in {}",
                flat.basis.dim(),
                self.dim
            )));
        }
        let recomputed = self.closure(&flat.indices())?;
        if &recomputed != flat {
            return Err(Error::NotAFlat(format!(
                "incidence {:?} is not closed or does not match the basis",
                flat.incidence
            )));
        }
        Ok(())
    }

    /// The subarrangement A_X of hyperplanes containing X, in the same
    /// ambient space.
    pub fn localize(&self, flat: &Flat) -> Result<Arrangement> {
        self.validate_flat(flat)?;
        Ok(Arrangement {
            order: self.order,
            dim: self.dim,
            hyperplanes: flat
                .incidence
                .iter()
                .map(|i| self.hyperplanes[i].clone())
                .collect(),
        })
    }

    /// The restriction A^X, expressed in the coordinates of the
    /// reduced-echelon nullspace basis of X.
    pub fn restrict(&self, flat: &Flat) -> Result<Arrangement> {
        self.validate_flat(flat)?;
        Ok(self.restrict_unchecked(flat))
    }

    pub(crate) fn restrict_unchecked(&self, flat: &Flat) -> Arrangement {
        let free = flat.basis.free_columns();
        let restricted = self
            .hyperplanes
            .iter()
            .enumerate()
            .filter(|(i, _)| !flat.incidence.contains(*i))
            .map(|(_, h)| {
                let r = flat.basis.residue(h.normal());
                let form: Vec<Cyc> = free.iter().map(|&c| r[c].clone()).collect();
                Hyperplane::new(&form).expect("a non-incident hyperplane restricts to a hyperplane")
            })
            .collect();
        Arrangement::from_hyperplanes(self.order, free.len(), restricted)
    }

    /// A^H for the hyperplane with the given index.
    pub fn restrict_to_hyperplane(&self, index: usize) -> Result<Arrangement> {
        self.check_index(index)?;
        let normal = self.hyperplanes[index].normal();
        let p = normal
            .iter()
            .position(|c| !c.is_zero())
            .expect("normals are nonzero");
        let restricted = self
            .hyperplanes
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != index)
            .map(|(_, h)| {
                let g = h.normal();
                let f = &g[p];
                let form: Vec<Cyc> = (0..self.dim)
                    .filter(|&c| c != p)
                    .map(|c| {
                        if f.is_zero() {
                            g[c].clone()
                        } else {
                            &g[c] - &(f * &normal[c])
                        }
                    })
                    .collect();
                Hyperplane::new(&form).expect("distinct hyperplanes restrict to a hyperplane")
            })
            .collect();
        Ok(Arrangement::from_hyperplanes(
            self.order,
            self.dim - 1,
            restricted,
        ))
    }

    /// A' = A \ {H}.
    pub fn delete(&self, index: usize) -> Result<Arrangement> {
        if self.is_empty() {
            return Err(Error::EmptyArrangement);
        }
        self.check_index(index)?;
        let mut hyperplanes = self.hyperplanes.clone();
        hyperplanes.remove(index);
        Ok(Arrangement {
            order: self.order,
            dim: self.dim,
            hyperplanes,
        })
    }

    /// The triple (A, A', A'') with respect to the hyperplane at `index`.
    pub fn triple(&self, index: usize) -> Result<(Arrangement, Arrangement, Arrangement)> {
        let deletion = self.delete(index)?;
        let restriction = self.restrict_to_hyperplane(index)?;
        Ok((self.clone(), deletion, restriction))
    }

    /// Re-expresses all coefficients in Q(ζ_target).
    pub fn promote(&self, target: u32) -> Result<Arrangement> {
        let hyperplanes = self
            .hyperplanes
            .iter()
            .map(|h| {
                let normal = h
                    .normal
                    .iter()
                    .map(|c| c.promote(target))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Hyperplane { normal })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Arrangement::from_hyperplanes(target, self.dim, hyperplanes))
    }

    /// The product A1 × A2 in V1 ⊕ V2, over the field generated by both
    /// coefficient fields.
    pub fn product(&self, other: &Arrangement) -> Arrangement {
        let order = self.order.lcm(&other.order);
        let a = self.promote(order).expect("order divides the lcm");
        let b = other.promote(order).expect("order divides the lcm");
        let dim = a.dim + b.dim;
        let zero = Cyc::zero(order);
        let mut hyperplanes = Vec::with_capacity(a.len() + b.len());
        for h in &a.hyperplanes {
            let mut normal = h.normal.clone();
            normal.resize(dim, zero.clone());
            hyperplanes.push(Hyperplane { normal });
        }
        for h in &b.hyperplanes {
            let mut normal = vec![zero.clone(); a.dim];
            normal.extend(h.normal.iter().cloned());
            hyperplanes.push(Hyperplane { normal });
        }
        Arrangement::from_hyperplanes(order, dim, hyperplanes)
    }

    /// Compact canonical JSON; see [`crate::io`] for the file format.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ArrangementFile::from(self)).expect("arrangement serializes")
    }

    /// Short content hash of the canonical JSON, used to tie certificates
    /// to the arrangement they were produced for.
    pub fn snapshot_id(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        hex::encode(&digest[..8])
    }
}

#[derive(Serialize)]
pub(crate) struct ArrangementFile<'a> {
    pub order: u32,
    pub dim: usize,
    pub hyperplanes: Vec<&'a [Cyc]>,
}

impl<'a> From<&'a Arrangement> for ArrangementFile<'a> {
    fn from(a: &'a Arrangement) -> Self {
        ArrangementFile {
            order: a.order,
            dim: a.dim,
            hyperplanes: a.hyperplanes.iter().map(|h| h.normal.as_slice()).collect(),
        }
    }
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Arrangement(order={}, dim={}, ", self.order, self.dim)?;
        f.debug_list().entries(&self.hyperplanes).finish()?;
        write!(f, ")")
    }
}
