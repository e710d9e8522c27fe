use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;

use crate::ring::RingSpec;

use super::{Simplex, SimplicialChain, SimplicialComplex};

/// Ridge incidences and, when one exists, a coherent orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudomanifoldReport {
    pub dimension: Option<usize>,
    pub is_pure: bool,
    pub is_pseudomanifold: bool,
    /// Ridges lying in more than two facets.
    pub overfull_ridges: Vec<Simplex>,
    /// Ridges lying in exactly one facet; the facets of the boundary complex.
    /// In dimension 0 the only ridge is the empty simplex.
    pub boundary_ridges: Vec<Simplex>,
    pub orientable: bool,
    /// Orientation chain over `Z`, first facet of every component positive.
    pub orientation_chain: Option<SimplicialChain>,
}

impl PseudomanifoldReport {
    pub fn is_closed(&self) -> bool {
        self.is_pseudomanifold && self.boundary_ridges.is_empty()
    }
}

pub fn pseudomanifold_analysis(x: &SimplicialComplex) -> PseudomanifoldReport {
    let dimension = x.dimension();
    let is_pure = x.is_pure();
    let mut report = PseudomanifoldReport {
        dimension,
        is_pure,
        is_pseudomanifold: false,
        overfull_ridges: Vec::new(),
        boundary_ridges: Vec::new(),
        orientable: false,
        orientation_chain: None,
    };
    let Some(d) = dimension else { return report };
    if !is_pure {
        return report;
    }

    // ridge -> [(facet index, sign of the ridge in ∂facet)]
    let facets = x.facets();
    let mut incidence: BTreeMap<Simplex, Vec<(usize, i8)>> = BTreeMap::new();
    for (fi, f) in facets.iter().enumerate() {
        for i in 0..=d {
            let mut ridge = f.clone();
            ridge.remove(i);
            incidence.entry(ridge).or_default().push((fi, if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    for (ridge, inc) in &incidence {
        match inc.len() {
            1 => report.boundary_ridges.push(ridge.clone()),
            2 => {}
            _ => report.overfull_ridges.push(ridge.clone()),
        }
    }
    report.is_pseudomanifold = report.overfull_ridges.is_empty();
    if !report.is_pseudomanifold {
        return report;
    }

    let mut neighbours: Vec<Vec<(usize, i8)>> = vec![Vec::new(); facets.len()];
    for inc in incidence.values() {
        if let [(a, sa), (b, sb)] = inc[..] {
            // orientations agree when the shared ridge appears with opposite signs
            let rel = -sa * sb;
            neighbours[a].push((b, rel));
            neighbours[b].push((a, rel));
        }
    }
    let mut orientation = vec![0i8; facets.len()];
    for start in 0..facets.len() {
        if orientation[start] != 0 {
            continue;
        }
        orientation[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for &(b, rel) in &neighbours[a] {
                let want = orientation[a] * rel;
                if orientation[b] == 0 {
                    orientation[b] = want;
                    queue.push_back(b);
                } else if orientation[b] != want {
                    return report;
                }
            }
        }
    }
    report.orientable = true;
    let mut chain = SimplicialChain::zero(RingSpec::Integers, d);
    for (f, &o) in facets.iter().zip(&orientation) {
        chain.add_term(f.clone(), BigInt::from(o));
    }
    report.orientation_chain = Some(chain);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::join_complex;

    #[test]
    fn tetrahedron_boundary_is_closed_and_orientable() {
        let x = SimplicialComplex::from_index_facets(
            4,
            vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]],
        )
        .unwrap();
        let r = pseudomanifold_analysis(&x);
        assert!(r.is_closed() && r.orientable);
        let o = r.orientation_chain.unwrap();
        assert_eq!(o.len(), 4);
        assert!(o.boundary().unwrap().is_zero());
    }

    #[test]
    fn single_simplex_has_its_boundary() {
        let x = SimplicialComplex::from_index_facets(3, vec![vec![0, 1, 2]]).unwrap();
        let r = pseudomanifold_analysis(&x);
        assert!(r.is_pseudomanifold && r.orientable);
        assert_eq!(r.boundary_ridges.len(), 3);
    }

    #[test]
    fn octahedron() {
        let (x, _) = join_complex(2, 3).unwrap();
        let r = pseudomanifold_analysis(&x);
        assert!(r.is_closed() && r.orientable);
        assert!(r.orientation_chain.unwrap().boundary().unwrap().is_zero());
    }

    #[test]
    fn three_triangles_on_an_edge() {
        let x = SimplicialComplex::from_index_facets(
            5,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]],
        )
        .unwrap();
        let r = pseudomanifold_analysis(&x);
        assert!(!r.is_pseudomanifold);
        assert_eq!(r.overfull_ridges, vec![vec![0, 1]]);
    }

    #[test]
    fn two_points_form_a_zero_sphere() {
        let x = SimplicialComplex::from_index_facets(2, vec![vec![0], vec![1]]).unwrap();
        let r = pseudomanifold_analysis(&x);
        assert!(r.is_closed() && r.orientable);
        let o = r.orientation_chain.unwrap();
        assert_eq!(o.augmentation(), BigInt::from(0));
    }

    #[test]
    fn mixed_dimensions_are_not_pure() {
        let x = SimplicialComplex::from_index_facets(4, vec![vec![0, 1, 2], vec![2, 3]]).unwrap();
        assert!(!pseudomanifold_analysis(&x).is_pseudomanifold);
    }
}
