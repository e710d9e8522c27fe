//! Every labelling of small simplices: the counting and algebraic sides of
//! the Stokes formula agree, and for `k = 2` the boundary side matches a
//! direct count of `+alternating` facets.

use num_bigint::BigInt;

use zk_stokes::labelling::{check_admissible, Label, Labelling};
use zk_stokes::ring::RingSpec;
use zk_stokes::simplicial::{SimplicialChain, SimplicialComplex};
use zk_stokes::stokes::stokes_sides;

/// All labellings of `n` vertices with signs in `Z_k` and colors `1..=colors`.
fn all_labellings(n: usize, k: usize, colors: u64) -> impl Iterator<Item = Labelling> {
    let per_vertex = k as u64 * colors;
    (0..per_vertex.pow(n as u32)).map(move |mut code| {
        let labels = (0..n)
            .map(|_| {
                let digit = code % per_vertex;
                code /= per_vertex;
                Label { sign: (digit % k as u64) as usize, color: digit / k as u64 + 1 }
            })
            .collect();
        Labelling::new(k, labels).unwrap()
    })
}

/// Signed number of boundary facets whose signs, read in increasing color,
/// are `0, 1, 0, …`; the sign is the orientation times the parity of the
/// color sort.
fn plus_alternating_boundary(x: &SimplicialChain, l: &Labelling) -> BigInt {
    let mut total = BigInt::from(0);
    for (face, c) in x.boundary().unwrap().terms() {
        let colors: Vec<u64> = face.iter().map(|&v| l.label(v).color).collect();
        let mut order: Vec<usize> = (0..face.len()).collect();
        order.sort_by_key(|&i| colors[i]);
        if order.windows(2).any(|w| colors[w[0]] == colors[w[1]]) {
            continue;
        }
        let signs: Vec<usize> = order.iter().map(|&i| l.label(face[i]).sign).collect();
        if signs.iter().enumerate().any(|(i, &s)| s != i % 2) {
            continue;
        }
        let inversions = (0..order.len())
            .flat_map(|i| (i + 1..order.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| order[i] > order[j])
            .count();
        total += if inversions % 2 == 0 { c.clone() } else { -c.clone() };
    }
    total
}

#[test]
fn all_labellings_of_small_simplices() {
    for k in 2..=3 {
        for r in 1..=3 {
            let vertices: Vec<usize> = (0..=r).collect();
            let x = SimplicialComplex::from_index_facets(r + 1, vec![vertices.clone()]).unwrap();
            let chain = SimplicialChain::simplex(RingSpec::Integers, &vertices).unwrap();
            let mut admissible = 0;
            let mut nonzero = 0;
            for l in all_labellings(r + 1, k, r as u64 + 1) {
                if !check_admissible(&x, &l).unwrap().is_empty() {
                    continue;
                }
                admissible += 1;
                let rep = stokes_sides(&chain, &l).unwrap();
                assert!(rep.equal, "k={k} r={r} {l:?}: {rep:?}");
                if k == 2 {
                    assert_eq!(rep.lhs_count, plus_alternating_boundary(&chain, &l), "{l:?}");
                }
                if rep.lhs_count != BigInt::from(0) {
                    nonzero += 1;
                }
            }
            assert!(admissible > 0 && nonzero > 0, "k={k} r={r}: degenerate fixture");
        }
    }
}

#[test]
fn modular_coefficients_agree_too() {
    let ring = RingSpec::modular(6).unwrap();
    let vertices = [0, 1, 2];
    let x = SimplicialComplex::from_index_facets(3, vec![vertices.to_vec()]).unwrap();
    let chain = SimplicialChain::simplex(ring, &vertices).unwrap().scale(&BigInt::from(5));
    for l in all_labellings(3, 3, 3) {
        if check_admissible(&x, &l).unwrap().is_empty() {
            let rep = stokes_sides(&chain, &l).unwrap();
            assert!(rep.equal, "{l:?}: {rep:?}");
        }
    }
}
