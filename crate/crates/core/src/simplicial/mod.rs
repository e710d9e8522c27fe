//! Finite ordered abstract simplicial complexes and their chains.
//!
//! Vertices are indexed `0..n` and the index order is the vertex order.
//! Simplices are always stored sorted; orientation information lives in chain
//! coefficients only.

mod action;
mod join;
mod pseudomanifold;
mod subdivision;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{GroupRingElement, RingSpec};

pub use action::{is_free_action, GroupActionOnComplex};
pub use join::{
    alt_facet_count, alt_subcomplex, join_chains, join_complex, join_vertex_index,
    join_vertex_name, k_gon_join_sphere, CopyLayout, JoinVertex, KGonSphere,
    DEFAULT_FACET_CAP,
};
pub use pseudomanifold::{pseudomanifold_analysis, PseudomanifoldReport};
pub use subdivision::{barycentric_subdivision, Subdivision};

/// A sorted list of distinct vertex indices.
pub type Simplex = Vec<usize>;

/// Sorts `vertices`, returning the sorted list and the sign of the sorting
/// permutation, or `None` when a vertex repeats.
pub fn sort_with_sign(vertices: &[usize]) -> Option<(Simplex, i8)> {
    let mut v = vertices.to_vec();
    let mut sign = 1i8;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    names: Vec<String>,
    facets: Vec<Simplex>,
    faces: Vec<Vec<Simplex>>,
    face_index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    /// Builds the downward closure of `facets` over vertices `0..names.len()`.
    ///
    /// Facets contained in other facets are dropped, and vertices that lie in
    /// no facet become isolated points.
    pub fn from_facets(names: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(Error::Format(format!("duplicate vertex id `{name}`")));
            }
        }
        let mut sorted: BTreeSet<Simplex> = BTreeSet::new();
        for f in facets {
            if f.is_empty() {
                return Err(Error::Format("empty facet".into()));
            }
            if let Some(&v) = f.iter().find(|&&v| v >= n) {
                return Err(Error::Format(format!("facet uses unknown vertex {v}")));
            }
            let mut s = f.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Format(format!("facet {f:?} repeats a vertex")));
            }
            sorted.insert(s);
        }
        let covered: BTreeSet<usize> = sorted.iter().flatten().copied().collect();
        for v in 0..n {
            if !covered.contains(&v) {
                sorted.insert(vec![v]);
            }
        }

        let by_size: Vec<&Simplex> = {
            let mut v: Vec<&Simplex> = sorted.iter().collect();
            v.sort_by_key(|s| std::cmp::Reverse(s.len()));
            v
        };
        let mut maximal: Vec<Simplex> = Vec::new();
        for s in by_size {
            if !maximal.iter().any(|m| m.len() > s.len() && is_subset(s, m)) {
                maximal.push(s.clone());
            }
        }
        maximal.sort();

        let dim = maximal.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut face_sets: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); dim];
        for f in &maximal {
            for_each_subset(f, |s| {
                face_sets[s.len() - 1].insert(s.to_vec());
            });
        }
        let faces: Vec<Vec<Simplex>> =
            face_sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let face_index = faces
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(Self { names, facets: maximal, faces, face_index })
    }

    /// Builds a complex from named vertices and facets given by name.
    pub fn from_named_facets(names: Vec<String>, facets: &[Vec<String>]) -> Result<Self> {
        let index: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let facets = facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|name| {
                        index
                            .get(name.as_str())
                            .copied()
                            .ok_or_else(|| Error::Format(format!("unknown vertex `{name}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_facets(names, facets)
    }

    /// Convenience constructor naming vertex `i` as `i`.
    pub fn from_index_facets(num_vertices: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_facets((0..num_vertices).map(|i| i.to_string()).collect(), facets)
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// Dimension of the complex; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    /// All `d`-dimensional faces, lexicographically sorted.
    pub fn faces(&self, d: usize) -> &[Simplex] {
        self.faces.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn face_count(&self, d: usize) -> usize {
        self.faces(d).len()
    }

    pub fn face_position(&self, s: &[usize]) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.face_index.get(s.len() - 1)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.face_position(s).is_some()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.faces(1).iter().map(|e| (e[0], e[1]))
    }

    pub fn is_pure(&self) -> bool {
        let d = self.faces.len();
        self.facets.iter().all(|f| f.len() == d)
    }

    /// Every simplex of `chain` is a face of this complex.
    pub fn check_chain(&self, chain: &SimplicialChain) -> Result<()> {
        for s in chain.terms.keys() {
            if !self.contains(s) {
                return Err(Error::Domain(format!("simplex {s:?} is not a face of the complex")));
            }
        }
        Ok(())
    }

    /// Sum of all `d`-faces with coefficient one.
    pub fn all_faces_chain(&self, d: usize, ring: &RingSpec) -> SimplicialChain {
        let mut c = SimplicialChain::zero(ring.clone(), d);
        for s in self.faces(d) {
            c.add_term(s.clone(), BigInt::one());
        }
        c
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

fn for_each_subset(s: &[usize], mut f: impl FnMut(&[usize])) {
    let n = s.len();
    let mut buf = Vec::with_capacity(n);
    for mask in 1u64..(1u64 << n) {
        buf.clear();
        for (i, &v) in s.iter().enumerate() {
            if mask >> i & 1 == 1 {
                buf.push(v);
            }
        }
        f(&buf);
    }
}

/// Element of `C_r(X; R)`: a sparse map from sorted `r`-simplices to ring values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialChain {
    ring: RingSpec,
    degree: usize,
    terms: BTreeMap<Simplex, BigInt>,
}

impl SimplicialChain {
    pub fn zero(ring: RingSpec, degree: usize) -> Self {
        Self { ring, degree, terms: BTreeMap::new() }
    }

    /// The elementary chain `⟨vertices⟩`, sign-adjusted if `vertices` is unsorted.
    pub fn simplex(ring: RingSpec, vertices: &[usize]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Domain("a simplex needs at least one vertex".into()));
        }
        let mut c = Self::zero(ring, vertices.len() - 1);
        c.add_oriented(vertices, &BigInt::one())?;
        Ok(c)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Simplex> {
        self.terms.keys()
    }

    pub fn coeff(&self, s: &[usize]) -> BigInt {
        self.terms.get(s).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Adds `coeff · s` for an already sorted simplex.
    pub fn add_term(&mut self, s: Simplex, coeff: BigInt) {
        debug_assert_eq!(s.len(), self.degree + 1);
        debug_assert!(s.windows(2).all(|w| w[0] < w[1]));
        match self.terms.entry(s) {
            Entry::Occupied(mut slot) => {
                let sum = self.ring.reduce(slot.get() + coeff);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
            Entry::Vacant(slot) => {
                let c = self.ring.reduce(coeff);
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
        }
    }

    /// Adds `coeff · ⟨vertices⟩` for an ordered vertex list; degenerate lists
    /// (repeated vertices) contribute nothing.
    pub fn add_oriented(&mut self, vertices: &[usize], coeff: &BigInt) -> Result<()> {
        if vertices.len() != self.degree + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} vertices in a chain of degree {}",
                vertices.len(),
                self.degree
            )));
        }
        if let Some((sorted, sign)) = sort_with_sign(vertices) {
            let c = if sign < 0 { -coeff.clone() } else { coeff.clone() };
            self.add_term(sorted, c);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), -c.clone());
        }
        Ok(out)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree || self.ring != other.ring {
            return Err(Error::DimensionMismatch(format!(
                "chains of degree {} over {} and degree {} over {}",
                self.degree, self.ring, other.degree, other.ring
            )));
        }
        Ok(())
    }

    /// The same coefficients read in another ring (reduced if modular).
    pub fn with_ring(&self, ring: RingSpec) -> Self {
        let mut out = Self::zero(ring, self.degree);
        for (s, a) in &self.terms {
            out.add_term(s.clone(), a.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.degree);
        for (s, a) in &self.terms {
            out.add_term(s.clone(), a * c);
        }
        out
    }

    /// Alternating face sum, extended linearly.
    pub fn boundary(&self) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::Degree("0-chains have no boundary".into()));
        }
        let mut out = Self::zero(self.ring.clone(), self.degree - 1);
        for (s, c) in &self.terms {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let c = if i % 2 == 0 { c.clone() } else { -c.clone() };
                out.add_term(face, c);
            }
        }
        Ok(out)
    }

    /// Sum of coefficients of a 0-chain.
    pub fn augmentation(&self) -> BigInt {
        self.ring.reduce(self.terms.values().sum())
    }

    /// Coefficient vector against the `d`-faces of `complex`.
    pub fn to_vector(&self, complex: &SimplicialComplex) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); complex.face_count(self.degree)];
        for (s, c) in &self.terms {
            let pos = complex
                .face_position(s)
                .ok_or_else(|| Error::Domain(format!("simplex {s:?} not in the complex")))?;
            v[pos] = c.clone();
        }
        Ok(v)
    }

    pub fn from_vector(
        complex: &SimplicialComplex,
        ring: RingSpec,
        degree: usize,
        values: &[BigInt],
    ) -> Self {
        let mut c = Self::zero(ring, degree);
        for (s, v) in complex.faces(degree).iter().zip(values) {
            c.add_term(s.clone(), v.clone());
        }
        c
    }

    /// Multiplies by a group-ring element through the given vertex action.
    pub fn act(&self, action: &GroupActionOnComplex, x: &GroupRingElement) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.degree);
        for (j, c) in x.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let moved = action.apply_chain(j, self);
            for (s, a) in moved.terms {
                out.add_term(s, a * c);
            }
        }
        out
    }
}
