use crate::error::{Error, Result};

use super::{sort_with_sign, Simplex, SimplicialChain, SimplicialComplex};

/// A free simplicial `Z_k`-action given by the vertex permutation of its generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupActionOnComplex {
    k: usize,
    generator: Vec<usize>,
    // powers[j][v] = g^j v
    powers: Vec<Vec<usize>>,
}

impl GroupActionOnComplex {
    /// Validates that `generator` has order exactly `k`, is simplicial on
    /// `complex`, and moves every simplex under every non-trivial power.
    pub fn new(complex: &SimplicialComplex, k: usize, generator: Vec<usize>) -> Result<Self> {
        let action = Self::unchecked(k, generator)?;
        if action.generator.len() != complex.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "generator permutes {} vertices, complex has {}",
                action.generator.len(),
                complex.num_vertices()
            )));
        }
        for f in complex.facets() {
            let (image, _) = action.apply_simplex(1, f);
            if !complex.contains(&image) {
                return Err(Error::Domain(format!(
                    "action is not simplicial: facet {f:?} maps to non-face {image:?}"
                )));
            }
        }
        if let Some((j, s)) = action.fixed_simplex(complex) {
            return Err(Error::Domain(format!("action is not free: g^{j} fixes simplex {s:?}")));
        }
        Ok(action)
    }

    /// Builds the action checking only that `generator` is a permutation of
    /// order exactly `k`.
    pub(crate) fn unchecked(k: usize, generator: Vec<usize>) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("group order must be at least 2, got {k}")));
        }
        let n = generator.len();
        let mut seen = vec![false; n];
        for &v in &generator {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Domain("generator is not a permutation".into()));
            }
        }
        let identity: Vec<usize> = (0..n).collect();
        let mut powers = vec![identity.clone()];
        for j in 1..=k {
            let prev = &powers[j - 1];
            let next: Vec<usize> = prev.iter().map(|&v| generator[v]).collect();
            if j < k && next == identity && n > 0 {
                return Err(Error::Domain(format!("generator has order {j}, not {k}")));
            }
            if j == k {
                if next != identity {
                    return Err(Error::Domain(format!("generator does not have order {k}")));
                }
            } else {
                powers.push(next);
            }
        }
        Ok(Self { k, generator, powers })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &[usize] {
        &self.generator
    }

    pub fn apply_vertex(&self, j: usize, v: usize) -> usize {
        self.powers[j % self.k][v]
    }

    /// Image of a sorted simplex under `g^j`, re-sorted, with the sign of the
    /// sorting permutation.
    pub fn apply_simplex(&self, j: usize, s: &[usize]) -> (Simplex, i8) {
        let image: Vec<usize> = s.iter().map(|&v| self.apply_vertex(j, v)).collect();
        sort_with_sign(&image).expect("a permutation maps distinct vertices to distinct vertices")
    }

    /// `g^j · x`, R-linear and orientation-aware.
    pub fn apply_chain(&self, j: usize, x: &SimplicialChain) -> SimplicialChain {
        let mut out = SimplicialChain::zero(x.ring().clone(), x.degree());
        for (s, c) in x.terms() {
            let (image, sign) = self.apply_simplex(j, s);
            out.add_term(image, if sign < 0 { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Orbit representatives (smallest vertex of each orbit), ascending.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        let n = self.generator.len();
        (0..n).filter(|&v| (1..self.k).all(|j| self.apply_vertex(j, v) > v)).collect()
    }

    /// Position of `v` in its orbit relative to the representative: the `j`
    /// with `v = g^j rep`.
    pub fn orbit_position(&self, v: usize) -> (usize, usize) {
        (0..self.k)
            .map(|j| (self.apply_vertex(self.k - j, v), j % self.k))
            .min_by_key(|&(rep, _)| rep)
            .expect("k >= 2")
    }

    fn fixed_simplex(&self, complex: &SimplicialComplex) -> Option<(usize, Simplex)> {
        let dim = complex.dimension()?;
        for d in 0..=dim {
            for s in complex.faces(d) {
                for j in 1..self.k {
                    if self.apply_simplex(j, s).0 == *s {
                        return Some((j, s.clone()));
                    }
                }
            }
        }
        None
    }
}

/// True when `generator` defines a free simplicial `Z_k`-action on `complex`.
pub fn is_free_action(complex: &SimplicialComplex, k: usize, generator: &[usize]) -> bool {
    GroupActionOnComplex::new(complex, k, generator.to_vec()).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn square() -> SimplicialComplex {
        SimplicialComplex::from_index_facets(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]])
            .unwrap()
    }

    #[test]
    fn antipodal_square_is_free() {
        let a = GroupActionOnComplex::new(&square(), 2, vec![2, 3, 0, 1]).unwrap();
        assert_eq!(a.orbit_representatives(), vec![0, 1]);
        assert_eq!(a.orbit_position(3), (1, 1));
    }

    #[test]
    fn reflection_fixing_an_edge_is_not_free() {
        // swaps 0 <-> 1 and 2 <-> 3: edge {0,1} is fixed setwise
        let err = GroupActionOnComplex::new(&square(), 2, vec![1, 0, 3, 2]).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        assert!(!is_free_action(&square(), 2, &[1, 0, 3, 2]));
    }

    #[test]
    fn wrong_order_is_rejected() {
        assert!(GroupActionOnComplex::new(&square(), 4, vec![2, 3, 0, 1]).is_err());
    }

    #[test]
    fn k_fold_application_is_identity() {
        let x = square();
        let a = GroupActionOnComplex::new(&x, 4, vec![1, 2, 3, 0]).unwrap();
        let mut c = SimplicialChain::simplex(RingSpec::Integers, &[0, 3]).unwrap();
        let orig = c.clone();
        assert_eq!(a.apply_chain(0, &c), orig);
        for _ in 0..4 {
            c = a.apply_chain(1, &c);
        }
        assert_eq!(c, orig);
    }
}
