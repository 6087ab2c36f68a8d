//! Intersection lattices, Möbius numbers and characteristic polynomials.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::arrangement::{Arrangement, Flat};
use crate::exactnum::Cyc;
use crate::incidence::Incidence;
use crate::linalg::normalize;
use crate::poly::CharPoly;

/// The intersection lattice L(A) with its Möbius function.
///
/// Flats are sorted by codimension and then lexicographically by incidence;
/// the first flat is always the ambient space.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    flats: Vec<Flat>,
    mobius: Vec<i64>,
    level_starts: Vec<usize>,
    position: HashMap<Incidence, usize>,
}

impl Lattice {
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn mobius(&self) -> &[i64] {
        &self.mobius
    }

    /// The rank of the arrangement, i.e. the largest codimension of a flat.
    pub fn rank(&self) -> usize {
        self.level_starts.len() - 2
    }

    pub fn flats_of_codim(&self, codim: usize) -> &[Flat] {
        match (
            self.level_starts.get(codim),
            self.level_starts.get(codim + 1),
        ) {
            (Some(&a), Some(&b)) => &self.flats[a..b],
            _ => &[],
        }
    }

    /// Number of flats in each codimension, starting at 0.
    pub fn codim_counts(&self) -> Vec<usize> {
        self.level_starts.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn position(&self, flat: &Flat) -> Option<usize> {
        self.position.get(flat.incidence()).copied()
    }

    /// `Σ_X μ(X) t^{dim X}`
    pub fn char_poly(&self) -> CharPoly {
        let mut coeffs = vec![BigInt::from(0); self.dim + 1];
        for (flat, &mu) in self.flats.iter().zip(&self.mobius) {
            coeffs[flat.dim()] += mu;
        }
        CharPoly::new(coeffs)
    }
}

/// Enumerates L(A) level by level.
///
/// Above a flat X with echelon basis B, each non-incident hyperplane H
/// reduces to a residue modulo B; two hyperplanes generate the same cover
/// of X exactly when their residues are proportional. Grouping residues by
/// their normalized form therefore yields every cover of X together with its
/// complete incidence set in one pass.
pub fn build_lattice(a: &Arrangement) -> Lattice {
    let mut levels: Vec<Vec<Flat>> = vec![vec![a.ambient_flat()]];
    loop {
        let current = levels.last().expect("at least one level");
        let mut next: HashMap<Incidence, Flat> = HashMap::new();
        for x in current {
            let mut covers: HashMap<Vec<Cyc>, Vec<usize>> = HashMap::new();
            for (i, h) in a.hyperplanes().iter().enumerate() {
                if x.incidence().contains(i) {
                    continue;
                }
                let r = x.basis().residue(h.normal());
                let key = normalize(&r).expect("non-incident hyperplane has nonzero residue");
                covers.entry(key).or_default().push(i);
            }
            for (row, members) in covers {
                let mut incidence = x.incidence().clone();
                for &i in &members {
                    incidence.insert(i);
                }
                next.entry(incidence.clone()).or_insert_with(|| {
                    let mut basis = x.basis().clone();
                    basis.insert_reduced(row);
                    Flat::from_parts(incidence, basis)
                });
            }
        }
        if next.is_empty() {
            break;
        }
        let mut level: Vec<Flat> = next.into_values().collect();
        level.sort_by(|p, q| p.incidence().cmp(q.incidence()));
        levels.push(level);
    }

    let mut level_starts = vec![0];
    let mut flats = Vec::new();
    for level in levels {
        flats.extend(level);
        level_starts.push(flats.len());
    }

    // μ(V) = 1 and μ(X) = -Σ_{Y < X} μ(Y); Y < X iff incidence(Y) ⊊ incidence(X).
    let mut mobius = vec![0i64; flats.len()];
    mobius[0] = 1;
    for c in 1..level_starts.len() - 1 {
        let lower = level_starts[c];
        for xi in level_starts[c]..level_starts[c + 1] {
            let x = flats[xi].incidence();
            let s: i64 = (0..lower)
                .filter(|&yi| flats[yi].incidence().is_subset(x))
                .map(|yi| mobius[yi])
                .sum();
            mobius[xi] = -s;
        }
    }

    let position = flats
        .iter()
        .enumerate()
        .map(|(i, f)| (f.incidence().clone(), i))
        .collect();
    Lattice {
        dim: a.dim(),
        flats,
        mobius,
        level_starts,
        position,
    }
}

/// χ(A, t), monic of degree `dim A`.
pub fn char_poly(a: &Arrangement) -> CharPoly {
    build_lattice(a).char_poly()
}

/// Every flat of L(A), ordered by codimension and then by incidence.
pub fn all_flats(a: &Arrangement) -> Vec<Flat> {
    build_lattice(a).flats
}
