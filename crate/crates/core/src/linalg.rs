//! Exact Gaussian elimination over Q(ζ_N).

use serde::Serialize;

use crate::exactnum::Cyc;

/// Scales `v` so that its first nonzero entry is 1. Returns `None` for the
/// zero vector.
pub fn normalize(v: &[Cyc]) -> Option<Vec<Cyc>> {
    let lead = v.iter().find(|c| !c.is_zero())?;
    if lead.is_one() {
        return Some(v.to_vec());
    }
    let inv = lead.inv().expect("leading entry is nonzero");
    Some(
        v.iter()
            .map(|c| if c.is_zero() { c.clone() } else { c * &inv })
            .collect(),
    )
}

/// A subspace of the dual space held in reduced row-echelon form: every row
/// has a leading 1 at its pivot column and every other row is zero there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<Cyc>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(dim: usize, vectors: impl IntoIterator<Item = &'a [Cyc]>) -> Self {
        let mut e = Echelon::new(dim);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Cyc>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns without a pivot, in increasing order. These index the
    /// coordinates of the reduced-echelon nullspace basis.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// `v` minus its projection onto the row space along the pivot columns.
    /// The result vanishes at every pivot and is zero iff `v` lies in the
    /// span.
    pub fn residue(&self, v: &[Cyc]) -> Vec<Cyc> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Cyc]) -> bool {
        self.residue(v).iter().all(Cyc::is_zero)
    }

    /// Adds `v` to the span. Returns false if it was already contained.
    pub fn insert(&mut self, v: &[Cyc]) -> bool {
        let r = self.residue(v);
        match normalize(&r) {
            None => false,
            Some(row) => {
                self.insert_reduced(row);
                true
            }
        }
    }

    /// Inserts a row that already has zeros at every existing pivot and a
    /// leading 1.
    pub(crate) fn insert_reduced(&mut self, row: Vec<Cyc>) {
        let p = row
            .iter()
            .position(|c| !c.is_zero())
            .expect("row is nonzero");
        for other in self.rows.iter_mut() {
            if other[p].is_zero() {
                continue;
            }
            let f = other[p].clone();
            for (x, y) in other.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, row);
    }
}

/// Rank of a list of equal-length vectors.
pub fn rank(dim: usize, vectors: &[Vec<Cyc>]) -> usize {
    Echelon::from_vectors(dim, vectors.iter().map(Vec::as_slice)).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Cyc> {
        xs.iter().map(|&x| Cyc::from_int(1, x)).collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(3, &[]), 0);
        assert_eq!(rank(3, &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 0])]), 2);
        assert_eq!(rank(2, &[v(&[2, 4]), v(&[-1, -2])]), 1);
    }

    #[test]
    fn echelon_is_reduced() {
        let e = Echelon::from_vectors(
            3,
            [v(&[0, 2, 4]), v(&[3, 1, 0]), v(&[1, 1, 1])]
                .iter()
                .map(Vec::as_slice),
        );
        assert_eq!(e.rank(), 3);
        assert_eq!(e.pivots(), &[0, 1, 2]);
        assert_eq!(e.rows()[0], v(&[1, 0, 0]));
        assert_eq!(e.rows()[2], v(&[0, 0, 1]));
        assert!(e.free_columns().is_empty());
    }

    #[test]
    fn residue_vanishes_on_pivots() {
        let e = Echelon::from_vectors(3, [v(&[1, -1, 0])].iter().map(Vec::as_slice));
        let r = e.residue(&v(&[1, 0, -1]));
        assert_eq!(r, v(&[0, 1, -1]));
        assert!(e.contains(&v(&[-3, 3, 0])));
        assert_eq!(e.free_columns(), vec![1, 2]);
    }

    #[test]
    fn normalize_leading_one() {
        let z = Cyc::zeta(3, 1);
        let n = normalize(&[Cyc::zero(3), z.clone(), Cyc::one(3)]).unwrap();
        assert!(n[1].is_one());
        assert_eq!(n[2], z.inv().unwrap());
        assert!(normalize(&[Cyc::zero(3)]).is_none());
    }
}
