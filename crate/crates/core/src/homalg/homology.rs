use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::RingSpec;
use crate::simplicial::{alt_subcomplex, join_complex, SimplicialComplex};

use super::{smith_normal_form, Matrix};

/// `R^rank ⊕ ⊕_t R/t` over `Z`. Over `Z/m` the rank counts summands
/// isomorphic to `Z/m`, and the torsion lists the remaining cyclic factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(serialize_with = "crate::io::serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn trivial() -> Self {
        Self { rank: 0, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(format!("R^{}", self.rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("R/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Integer matrix of the augmented boundary `C_i → C_{i-1}`; `D_0` is the
/// augmentation row of ones.
pub fn boundary_matrix(x: &SimplicialComplex, i: usize) -> Matrix<BigInt> {
    let cols = x.faces(i);
    if i == 0 {
        let mut m = Matrix::zeros(1, cols.len());
        for j in 0..cols.len() {
            m.set(0, j, BigInt::one());
        }
        return m;
    }
    let mut m = Matrix::zeros(x.face_count(i - 1), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for r in 0..s.len() {
            let mut face = s.clone();
            face.remove(r);
            let row = x.face_position(&face).expect("faces of faces are faces");
            m.set(row, j, if r % 2 == 0 { BigInt::one() } else { -BigInt::one() });
        }
    }
    m
}

/// Integral invariant factors of `D_i`, with `D_i · D_{i+1} = 0` checked.
fn integral_homology(x: &SimplicialComplex) -> Result<Vec<HomologyGroup>> {
    let Some(dim) = x.dimension() else { return Ok(Vec::new()) };
    let mats: Vec<Matrix<BigInt>> = (0..=dim + 1).map(|i| boundary_matrix(x, i)).collect();
    for i in 0..=dim {
        if i < dim && !mats[i].checked_mul(&mats[i + 1])?.is_zero() {
            return Err(Error::Precondition(format!("D_{i} · D_{} is not zero", i + 1)));
        }
    }
    let factors: Vec<Vec<BigInt>> = mats
        .iter()
        .map(|m| if m.cols() == 0 { Vec::new() } else { smith_normal_form(m).invariant_factors() })
        .collect();
    Ok((0..=dim)
        .map(|i| HomologyGroup {
            rank: x.face_count(i) - factors[i].len() - factors[i + 1].len(),
            torsion: factors[i + 1].iter().filter(|t| !t.is_one()).cloned().collect(),
        })
        .collect())
}

/// Reduced homology `H̃_0, …, H̃_dim` over `ring`. Over `Z/m` this applies the
/// universal coefficient theorem to the integral groups.
pub fn reduced_homology(x: &SimplicialComplex, ring: &RingSpec) -> Result<Vec<HomologyGroup>> {
    let integral = integral_homology(x)?;
    let Some(m) = ring.modulus() else { return Ok(integral) };
    let mut out = Vec::with_capacity(integral.len());
    for i in 0..integral.len() {
        let mut cyclic: Vec<BigInt> = vec![m.clone(); integral[i].rank];
        cyclic.extend(integral[i].torsion.iter().map(|t| t.gcd(m)));
        if i > 0 {
            cyclic.extend(integral[i - 1].torsion.iter().map(|t| t.gcd(m)));
        }
        out.push(canonical_cyclic(cyclic, m));
    }
    Ok(out)
}

/// Normalizes a direct sum of cyclic groups `⊕ Z/c_j` (each `c_j | m`) into
/// invariant factors, counting copies of `Z/m` as rank.
fn canonical_cyclic(cyclic: Vec<BigInt>, m: &BigInt) -> HomologyGroup {
    let cyclic: Vec<BigInt> = cyclic.into_iter().filter(|c| !c.is_one()).collect();
    let n = cyclic.len();
    let mut diag = Matrix::zeros(n, n);
    for (i, c) in cyclic.into_iter().enumerate() {
        diag.set(i, i, c);
    }
    let factors = if n == 0 { Vec::new() } else { smith_normal_form(&diag).invariant_factors() };
    let rank = factors.iter().filter(|f| *f == m).count();
    let torsion = factors.into_iter().filter(|f| !f.is_one() && f != m && !f.is_zero()).collect();
    HomologyGroup { rank, torsion }
}

/// Reduced homology of `(Z_k)^{*m}_{alt≤d}` against that of `(Z_k)^{*(d+1)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetractReport {
    pub k: usize,
    pub m: usize,
    pub d: usize,
    pub alt: Vec<HomologyGroup>,
    pub join: Vec<HomologyGroup>,
    pub matches: bool,
}

pub fn homology_retract_check(k: usize, m: usize, d: usize) -> Result<RetractReport> {
    let (alt_complex, _) = alt_subcomplex(k, m, d)?;
    let (join, _) = join_complex(k, d + 1)?;
    let alt = reduced_homology(&alt_complex, &RingSpec::Integers)?;
    let join = reduced_homology(&join, &RingSpec::Integers)?;
    let trivial = HomologyGroup::trivial();
    let len = alt.len().max(join.len());
    let matches =
        (0..len).all(|i| alt.get(i).unwrap_or(&trivial) == join.get(i).unwrap_or(&trivial));
    Ok(RetractReport { k, m, d, alt, join, matches })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(rank: usize) -> HomologyGroup {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    #[test]
    fn square_and_k33() {
        let (sq, _) = join_complex(2, 2).unwrap();
        assert_eq!(reduced_homology(&sq, &RingSpec::Integers).unwrap(), vec![free(0), free(1)]);
        let (k33, _) = join_complex(3, 2).unwrap();
        assert_eq!(reduced_homology(&k33, &RingSpec::Integers).unwrap(), vec![free(0), free(4)]);
    }

    #[test]
    fn full_simplex_is_acyclic() {
        let x = SimplicialComplex::from_index_facets(4, vec![vec![0, 1, 2, 3]]).unwrap();
        let h = reduced_homology(&x, &RingSpec::Integers).unwrap();
        assert!(h.iter().all(HomologyGroup::is_trivial));
    }

    #[test]
    fn boundary_matrices_compose_to_zero() {
        let (x, _) = join_complex(3, 3).unwrap();
        for i in 0..3 {
            assert!((&boundary_matrix(&x, i) * &boundary_matrix(&x, i + 1)).is_zero());
        }
    }

    #[test]
    fn modular_reduction_of_torsion() {
        // Z/2 torsion in H_1 contributes to H_1 and H_2 over Z/2 and vanishes over Z/3
        let integral = [free(0), HomologyGroup { rank: 0, torsion: vec![BigInt::from(2)] }, free(0)];
        let m2 = BigInt::from(2);
        let z2: Vec<HomologyGroup> = (0..3)
            .map(|i| {
                let mut c = vec![m2.clone(); integral[i].rank];
                c.extend(integral[i].torsion.iter().map(|t| t.gcd(&m2)));
                if i > 0 {
                    c.extend(integral[i - 1].torsion.iter().map(|t| t.gcd(&m2)));
                }
                canonical_cyclic(c, &m2)
            })
            .collect();
        assert_eq!(z2, vec![free(0), free(1), free(1)]);
        let m6 = BigInt::from(6);
        let g = canonical_cyclic(vec![BigInt::from(2), BigInt::from(3), m6.clone()], &m6);
        assert_eq!(g, free(2));
    }

    #[test]
    fn retract_small_cases() {
        let r = homology_retract_check(2, 3, 1).unwrap();
        assert!(r.matches);
        let r = homology_retract_check(3, 3, 0).unwrap();
        assert!(r.matches);
        assert_eq!(r.join, vec![free(2)]);
    }
}
