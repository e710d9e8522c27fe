//! Join complexes `(Z_k)^{*m}`, their bounded-jump subcomplexes, joins of
//! `k`-gons, and the join of chains living on disjoint copies.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::RingSpec;

use super::{GroupActionOnComplex, SimplicialChain, SimplicialComplex};

/// Default bound on the number of facets a generator will enumerate.
pub const DEFAULT_FACET_CAP: u128 = 1_000_000;

/// Vertex `(g^sign, copy)` of a join complex; copies are numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JoinVertex {
    pub copy: usize,
    pub sign: usize,
}

/// Index of a join vertex; the order is lexicographic in `(copy, sign)`.
pub fn join_vertex_index(k: usize, v: JoinVertex) -> usize {
    (v.copy - 1) * k + v.sign
}

pub fn join_vertex_name(v: JoinVertex) -> String {
    format!("s{}c{}", v.sign, v.copy)
}

/// Groups vertex indices into copies of `per_copy` consecutive vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CopyLayout {
    pub per_copy: usize,
}

impl CopyLayout {
    pub fn copy_of(&self, v: usize) -> usize {
        v / self.per_copy
    }
}

fn check_cap(k: usize, m: usize) -> Result<u128> {
    let count = (k as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if count > DEFAULT_FACET_CAP {
        return Err(Error::ResourceLimit { requested: count, cap: DEFAULT_FACET_CAP });
    }
    Ok(count)
}

fn join_names(k: usize, m: usize) -> Vec<String> {
    (1..=m)
        .flat_map(|copy| (0..k).map(move |sign| join_vertex_name(JoinVertex { copy, sign })))
        .collect()
}

fn sign_shift_generator(k: usize, copies: usize) -> Vec<usize> {
    (0..copies * k).map(|v| v - v % k + (v % k + 1) % k).collect()
}

/// Iterates all sign sequences `(i_1, ..., i_m)` in lexicographic order.
fn sign_sequences(k: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (k as u64).pow(m as u32);
    (0..total).map(move |mut n| {
        let mut seq = vec![0; m];
        for slot in seq.iter_mut().rev() {
            *slot = (n % k as u64) as usize;
            n /= k as u64;
        }
        seq
    })
}

fn facet_of(k: usize, seq: &[usize]) -> Vec<usize> {
    seq.iter().enumerate().map(|(c, &s)| c * k + s).collect()
}

/// `(Z_k)^{*m}` with the action shifting every sign by one.
pub fn join_complex(k: usize, m: usize) -> Result<(SimplicialComplex, GroupActionOnComplex)> {
    if k < 2 || m < 1 {
        return Err(Error::Domain(format!("need k >= 2 and m >= 1, got k = {k}, m = {m}")));
    }
    check_cap(k, m)?;
    let facets = sign_sequences(k, m).map(|seq| facet_of(k, &seq)).collect();
    let complex = SimplicialComplex::from_facets(join_names(k, m), facets)?;
    let action = GroupActionOnComplex::new(&complex, k, sign_shift_generator(k, m))?;
    Ok((complex, action))
}

fn jumps(seq: &[usize]) -> usize {
    seq.windows(2).filter(|w| w[0] != w[1]).count()
}

/// The subcomplex of `(Z_k)^{*m}` generated by facets with at most `d` jumps.
pub fn alt_subcomplex(
    k: usize,
    m: usize,
    d: usize,
) -> Result<(SimplicialComplex, GroupActionOnComplex)> {
    if k < 2 || m < d + 1 {
        return Err(Error::Domain(format!("need k >= 2 and m >= d + 1, got k = {k}, m = {m}, d = {d}")));
    }
    check_cap(k, m)?;
    let facets =
        sign_sequences(k, m).filter(|seq| jumps(seq) <= d).map(|seq| facet_of(k, &seq)).collect();
    let complex = SimplicialComplex::from_facets(join_names(k, m), facets)?;
    let action = GroupActionOnComplex::new(&complex, k, sign_shift_generator(k, m))?;
    Ok((complex, action))
}

/// Closed-form facet count `sum_{j <= d} C(m-1, j) k (k-1)^j` of [`alt_subcomplex`].
pub fn alt_facet_count(k: usize, m: usize, d: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for j in 0..=d.min(m - 1) {
        total += binom * k as u128 * (k as u128 - 1).pow(j as u32);
        binom = binom * (m - 1 - j) as u128 / (j + 1) as u128;
    }
    total
}

/// Join of `m + 1` rotating `k`-gons with the marked vertices and edges used
/// to assemble generalized spheres.
#[derive(Clone, Debug)]
pub struct KGonSphere {
    pub complex: SimplicialComplex,
    pub action: GroupActionOnComplex,
    /// `u[i]` is vertex 0 of copy `m - i` (copies counted from 0).
    pub u: Vec<usize>,
    /// `w[i]` is the oriented edge from `u[i]` to `g u[i]`.
    pub w: Vec<SimplicialChain>,
    pub layout: CopyLayout,
}

pub fn k_gon_join_sphere(k: usize, m: usize, ring: &RingSpec) -> Result<KGonSphere> {
    if k <= 2 {
        return Err(Error::Domain(format!("a k-gon needs k > 2, got {k}")));
    }
    let copies = m + 1;
    check_cap(k, copies)?;
    let names = (0..copies)
        .flat_map(|c| (0..k).map(move |j| join_vertex_name(JoinVertex { copy: c + 1, sign: j })))
        .collect();
    let facets = sign_sequences(k, copies)
        .map(|seq| {
            seq.iter()
                .enumerate()
                .flat_map(|(c, &j)| [c * k + j, c * k + (j + 1) % k])
                .collect()
        })
        .collect();
    let complex = SimplicialComplex::from_facets(names, facets)?;
    let action = GroupActionOnComplex::new(&complex, k, sign_shift_generator(k, copies))?;
    let u: Vec<usize> = (0..=m).map(|i| (m - i) * k).collect();
    let w = u
        .iter()
        .map(|&v| SimplicialChain::simplex(ring.clone(), &[v, action.apply_vertex(1, v)]))
        .collect::<Result<Vec<_>>>()?;
    Ok(KGonSphere { complex, action, u, w, layout: CopyLayout { per_copy: k } })
}

/// `x ⋈ y`: concatenates vertex lists and applies the sign of the sorting
/// permutation. With this convention
/// `∂(x ⋈ y) = ∂x ⋈ y + (-1)^{deg x + 1} x ⋈ ∂y` (augmented in degree 0).
pub fn join_chains(
    x: &SimplicialChain,
    y: &SimplicialChain,
    layout: CopyLayout,
) -> Result<SimplicialChain> {
    if x.ring() != y.ring() {
        return Err(Error::DimensionMismatch("chains over different rings".into()));
    }
    let copies = |c: &SimplicialChain| -> BTreeSet<usize> {
        c.support().flatten().map(|&v| layout.copy_of(v)).collect()
    };
    let (cx, cy) = (copies(x), copies(y));
    if let Some(c) = cx.intersection(&cy).next() {
        return Err(Error::Domain(format!("both chains use copy {c}")));
    }
    let mut out = SimplicialChain::zero(x.ring().clone(), x.degree() + y.degree() + 1);
    let mut buf = Vec::with_capacity(out.degree() + 1);
    for (s, a) in x.terms() {
        for (t, b) in y.terms() {
            buf.clear();
            buf.extend_from_slice(s);
            buf.extend_from_slice(t);
            let coeff: BigInt = a * b;
            out.add_oriented(&buf, &coeff)?;
        }
    }
    Ok(out)
}
