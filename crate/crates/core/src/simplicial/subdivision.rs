//! Barycentric subdivision with its chain map and the induced group action.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::RingSpec;

use super::{GroupActionOnComplex, Simplex, SimplicialChain, SimplicialComplex};

/// `sd X` together with the face that each new vertex is the barycenter of.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    pub action: Option<GroupActionOnComplex>,
    /// `barycenter_of[v]` is the face of the original complex behind vertex `v`.
    pub barycenter_of: Vec<Simplex>,
    vertex_of: HashMap<Simplex, usize>,
}

/// Subdivides `x`; new vertices are ordered by (dimension, face order).
pub fn barycentric_subdivision(
    x: &SimplicialComplex,
    action: Option<&GroupActionOnComplex>,
) -> Result<Subdivision> {
    let dim = x.dimension().ok_or_else(|| Error::Domain("cannot subdivide the empty complex".into()))?;
    let mut barycenter_of = Vec::new();
    for d in 0..=dim {
        barycenter_of.extend(x.faces(d).iter().cloned());
    }
    let vertex_of: HashMap<Simplex, usize> =
        barycenter_of.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    let names = barycenter_of
        .iter()
        .map(|f| {
            let parts: Vec<&str> = f.iter().map(|&v| x.vertex_name(v)).collect();
            format!("b{{{}}}", parts.join(","))
        })
        .collect();

    let mut facets = Vec::new();
    for f in x.facets() {
        for_each_permutation(f.len(), |perm| {
            let mut face = Vec::with_capacity(f.len());
            let flag = perm
                .iter()
                .map(|&i| {
                    face.push(f[i]);
                    let mut sorted = face.clone();
                    sorted.sort_unstable();
                    vertex_of[&sorted]
                })
                .collect();
            facets.push(flag);
        });
    }
    let complex = SimplicialComplex::from_facets(names, facets)?;

    let action = match action {
        None => None,
        Some(a) => {
            let generator = barycenter_of
                .iter()
                .map(|f| vertex_of[&a.apply_simplex(1, f).0])
                .collect();
            Some(GroupActionOnComplex::new(&complex, a.k(), generator)?)
        }
    };
    Ok(Subdivision { complex, action, barycenter_of, vertex_of })
}

fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    // Heap's algorithm
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

impl Subdivision {
    pub fn barycenter(&self, face: &[usize]) -> Option<usize> {
        self.vertex_of.get(face).copied()
    }

    /// The subdivision chain map: `sd⟨v⟩ = ⟨b(v)⟩` and
    /// `sd(s) = (-1)^r · (sd(∂s) ⋆ b(s))` with the barycenter appended last.
    pub fn apply(&self, x: &SimplicialChain) -> Result<SimplicialChain> {
        let mut cache: HashMap<Simplex, SimplicialChain> = HashMap::new();
        let mut out = SimplicialChain::zero(x.ring().clone(), x.degree());
        for (s, c) in x.terms() {
            if !self.vertex_of.contains_key(s) {
                return Err(Error::Domain(format!("simplex {s:?} is not a face of the complex")));
            }
            for (t, a) in self.simplex_image(s, &mut cache).terms() {
                out.add_term(t.clone(), a * c);
            }
        }
        Ok(out)
    }

    fn simplex_image(
        &self,
        s: &[usize],
        cache: &mut HashMap<Simplex, SimplicialChain>,
    ) -> SimplicialChain {
        if let Some(c) = cache.get(s) {
            return c.clone();
        }
        let b = self.vertex_of[s];
        let r = s.len() - 1;
        let mut out = SimplicialChain::zero(RingSpec::Integers, r);
        if r == 0 {
            out.add_term(vec![b], BigInt::one());
        } else {
            let sign: BigInt = if r % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            for i in 0..s.len() {
                let mut face = s.to_vec();
                face.remove(i);
                let face_sign = if i % 2 == 0 { sign.clone() } else { -sign.clone() };
                for (t, a) in self.simplex_image(&face, cache).terms() {
                    // barycenters of proper faces precede b in the vertex order
                    let mut cone = t.clone();
                    cone.push(b);
                    out.add_term(cone, a * &face_sign);
                }
            }
        }
        cache.insert(s.to_vec(), out.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::join_complex;

    #[test]
    fn subdivided_triangle() {
        let x = SimplicialComplex::from_index_facets(3, vec![vec![0, 1, 2]]).unwrap();
        let sd = barycentric_subdivision(&x, None).unwrap();
        assert_eq!(sd.complex.num_vertices(), 7);
        assert_eq!(sd.complex.facets().len(), 6);
        assert_eq!(sd.complex.vertex_name(6), "b{0,1,2}");
    }

    #[test]
    fn edge_splits_into_two_half_edges() {
        let x = SimplicialComplex::from_index_facets(2, vec![vec![0, 1]]).unwrap();
        let sd = barycentric_subdivision(&x, None).unwrap();
        let e = SimplicialChain::simplex(RingSpec::Integers, &[0, 1]).unwrap();
        let img = sd.apply(&e).unwrap();
        // b(0)=0, b(1)=1, b(01)=2: sd⟨0,1⟩ = ⟨0,2⟩ - ⟨1,2⟩
        assert_eq!(img.coeff(&[0, 2]), BigInt::from(1));
        assert_eq!(img.coeff(&[1, 2]), BigInt::from(-1));
        assert_eq!(img.len(), 2);
    }

    #[test]
    fn commutes_with_boundary_on_triangle() {
        let x = SimplicialComplex::from_index_facets(3, vec![vec![0, 1, 2]]).unwrap();
        let sd = barycentric_subdivision(&x, None).unwrap();
        let t = SimplicialChain::simplex(RingSpec::Integers, &[0, 1, 2]).unwrap();
        let lhs = sd.apply(&t).unwrap().boundary().unwrap();
        let rhs = sd.apply(&t.boundary().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(sd.apply(&t).unwrap().len(), 6);
    }

    #[test]
    fn induced_action_commutes_with_sd() {
        let (x, a) = join_complex(3, 2).unwrap();
        let sd = barycentric_subdivision(&x, Some(&a)).unwrap();
        let a2 = sd.action.as_ref().unwrap();
        for e in x.faces(1) {
            let c = SimplicialChain::simplex(RingSpec::Integers, e).unwrap();
            let lhs = a2.apply_chain(1, &sd.apply(&c).unwrap());
            let rhs = sd.apply(&a.apply_chain(1, &c)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
