//! Randomized invariants. Each case draws a seed and builds its fixture from it.

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zk_stokes::acceptance::leibniz_trials;
use zk_stokes::labelling::{
    check_admissible, check_equivariant, h_ell, pullback, push_forward_to_join, random_labelling,
    tautological_labelling, LabellingMode,
};
use zk_stokes::resolution::{enumerate_words, verify_f_chain_map, BarWord, StandardChain};
use zk_stokes::ring::{GroupRingElement, RingSpec};
use zk_stokes::simplicial::{
    barycentric_subdivision, join_chains, join_complex, CopyLayout, SimplicialChain,
    SimplicialComplex,
};
use zk_stokes::Result;

const Z: RingSpec = RingSpec::Integers;

fn element(rng: &mut ChaCha8Rng, k: usize, ring: &RingSpec) -> GroupRingElement {
    let c = (0..k).map(|_| ring.reduce(BigInt::from(rng.gen_range(-5i64..=5)))).collect();
    GroupRingElement::from_coeffs(k, ring.clone(), c).unwrap()
}

fn ring(rng: &mut ChaCha8Rng) -> RingSpec {
    if rng.gen_bool(0.5) {
        Z
    } else {
        RingSpec::modular(rng.gen_range(2..=9)).unwrap()
    }
}

/// Random integer chain supported on the `d`-faces of `x`.
fn chain_on(rng: &mut ChaCha8Rng, x: &SimplicialComplex, d: usize, ring: &RingSpec) -> SimplicialChain {
    let mut c = SimplicialChain::zero(ring.clone(), d);
    for s in x.faces(d) {
        if rng.gen_bool(0.6) {
            c.add_term(s.clone(), BigInt::from(rng.gen_range(-3i64..=3)));
        }
    }
    c
}

/// A random complex: a handful of random facets on up to 7 vertices.
fn random_complex(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let n = rng.gen_range(3..=7);
    let facets = (0..rng.gen_range(1..=5))
        .map(|_| {
            let size = rng.gen_range(1..=n.min(4));
            let mut pool: Vec<usize> = (0..n).collect();
            (0..size).map(|_| pool.swap_remove(rng.gen_range(0..pool.len()))).collect()
        })
        .collect();
    SimplicialComplex::from_index_facets(n, facets).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn group_ring_is_a_commutative_ring(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(2..=7);
        let r = ring(&mut rng);
        let (a, b, c) = (element(&mut rng, k, &r), element(&mut rng, k, &r), element(&mut rng, k, &r));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&GroupRingElement::identity(k, r.clone()) * &a, a.clone());
        let sigma = GroupRingElement::sigma(k, r.clone());
        let tau = GroupRingElement::tau(k, r);
        prop_assert!((&(&sigma * &a) * &tau).is_zero());
    }

    #[test]
    fn boundary_commutes_with_the_action(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(2..=4);
        let (x, a) = join_complex(k, rng.gen_range(2..=3)).unwrap();
        let d = rng.gen_range(1..=x.dimension().unwrap());
        let c = chain_on(&mut rng, &x, d, &Z);
        let j = rng.gen_range(0..k);
        prop_assert_eq!(a.apply_chain(j, &c).boundary().unwrap(), a.apply_chain(j, &c.boundary().unwrap()));
        prop_assert_eq!(a.apply_chain(k, &c), c.clone());
        prop_assert_eq!(a.apply_chain(0, &c), c);
    }

    #[test]
    fn simplicial_boundary_squares_to_zero(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_complex(&mut rng);
        let r = ring(&mut rng);
        if let Some(dim) = x.dimension().filter(|&d| d >= 2) {
            let d = rng.gen_range(2..=dim);
            let c = chain_on(&mut rng, &x, d, &r);
            prop_assert!(c.boundary().unwrap().boundary().unwrap().is_zero());
        }
    }

    #[test]
    fn subdivision_is_a_chain_map(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tri = SimplicialComplex::from_index_facets(3, vec![vec![0, 1, 2]]).unwrap();
        let sd = barycentric_subdivision(&tri, None).unwrap();
        let d = rng.gen_range(1..=2);
        let c = chain_on(&mut rng, &tri, d, &Z);
        prop_assert_eq!(sd.apply(&c).unwrap().boundary().unwrap(), sd.apply(&c.boundary().unwrap()).unwrap());
    }

    #[test]
    fn h_ell_is_a_chain_map(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(2..=4);
        let x = random_complex(&mut rng);
        let colors = rng.gen_range(1..=5);
        let l = random_labelling(&x, k, colors, LabellingMode::Admissible, None, seed).unwrap();
        prop_assert!(check_admissible(&x, &l).unwrap().is_empty());
        if let Some(dim) = x.dimension().filter(|&d| d >= 1) {
            let d = rng.gen_range(1..=dim);
            let c = chain_on(&mut rng, &x, d, &Z);
            let lhs = h_ell(&c.boundary().unwrap(), &l).unwrap();
            let rhs = h_ell(&c, &l).unwrap().boundary().unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn h_ell_is_equivariant(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(2..=4);
        let m = rng.gen_range(2..=3);
        let (x, a) = join_complex(k, m).unwrap();
        let l = random_labelling(&x, k, m as u64 + 1, LabellingMode::EquivariantAdmissible, Some(&a), seed).unwrap();
        prop_assert!(check_equivariant(&l, &a).unwrap().is_empty());
        let d = rng.gen_range(0..m);
        let c = chain_on(&mut rng, &x, d, &Z);
        let j = rng.gen_range(0..k);
        let g = GroupRingElement::group(k, Z, j);
        prop_assert_eq!(h_ell(&a.apply_chain(j, &c), &l).unwrap(), h_ell(&c, &l).unwrap().scale(&g));
    }

    #[test]
    fn h_ell_factors_through_the_join(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(2..=4);
        let x = random_complex(&mut rng);
        let colors = rng.gen_range(1..=5);
        let l = random_labelling(&x, k, colors, LabellingMode::Admissible, None, seed).unwrap();
        let d = rng.gen_range(0..=x.dimension().unwrap());
        let c = chain_on(&mut rng, &x, d, &Z);
        let pushed = push_forward_to_join(&c, &l).unwrap();
        let taut = tautological_labelling(k, l.max_color() as usize);
        prop_assert_eq!(h_ell(&pushed, &taut).unwrap(), h_ell(&c, &l).unwrap());
    }

    #[test]
    fn random_labellings_are_reproducible(seed: u64) {
        let (x, a) = join_complex(3, 3).unwrap();
        let one = random_labelling(&x, 3, 4, LabellingMode::EquivariantAdmissible, Some(&a), seed).unwrap();
        let two = random_labelling(&x, 3, 4, LabellingMode::EquivariantAdmissible, Some(&a), seed).unwrap();
        prop_assert!(check_admissible(&x, &one).unwrap().is_empty());
        prop_assert!(check_equivariant(&one, &a).unwrap().is_empty());
        prop_assert_eq!(one, two);
    }
}

#[test]
fn bar_boundary_squares_to_zero_exhaustively() {
    for k in 2..=5 {
        for r in 2..=4 {
            for w in enumerate_words(k, r) {
                let c = StandardChain::from_word(w.clone(), Z);
                assert!(c.boundary().unwrap().boundary().unwrap().is_empty(), "k={k} {:?}", w.letters());
            }
        }
    }
}

#[test]
fn chain_map_verifier_counts() {
    let rep = verify_f_chain_map(2, 4, &Z, None).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.checked, 2 + 4 + 8 + 16);
    let rep = verify_f_chain_map(5, 4, &Z, None).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.checked, 780);
    let rep = verify_f_chain_map(4, 3, &RingSpec::modular(6).unwrap(), None).unwrap();
    assert!(rep.passed());
    assert!(verify_f_chain_map(6, 4, &Z, Some(100)).is_err());
}

#[test]
fn subdivision_commutes_with_the_action() {
    let (x, a) = join_complex(3, 2).unwrap();
    let sd = barycentric_subdivision(&x, Some(&a)).unwrap();
    let a2 = sd.action.clone().unwrap();
    for s in x.faces(1) {
        let c = SimplicialChain::simplex(Z, s).unwrap();
        for j in 0..3 {
            assert_eq!(sd.apply(&a.apply_chain(j, &c)).unwrap(), a2.apply_chain(j, &sd.apply(&c).unwrap()));
        }
    }
}

#[test]
fn pullback_along_an_equivariant_map_is_equivariant() {
    let (_, ax) = join_complex(2, 3).unwrap();
    let ay = ax.clone();
    let l = tautological_labelling(2, 3);
    // swap the first two copies
    let phi: Vec<usize> = (0..6).map(|v| match v / 2 { 0 => v + 2, 1 => v - 2, _ => v }).collect();
    let pulled = pullback(&l, &phi).unwrap();
    assert!(check_equivariant(&pulled, &ax).unwrap().is_empty());
    assert!(check_equivariant(&l, &ay).unwrap().is_empty());
}

#[test]
fn leibniz_rule_holds_for_the_join() {
    assert_eq!(leibniz_trials(join_chains, 500, 7).unwrap(), 0);
}

/// Negative control: a join with the opposite sign convention in odd degree.
#[test]
fn leibniz_check_catches_a_sign_bug() {
    let buggy = |x: &SimplicialChain, y: &SimplicialChain, l: CopyLayout| -> Result<SimplicialChain> {
        let c = join_chains(x, y, l)?;
        Ok(if x.degree() % 2 == 1 { c.scale(&BigInt::from(-1)) } else { c })
    };
    assert!(leibniz_trials(buggy, 500, 7).unwrap() > 0);
}

#[test]
fn bar_words_reject_bad_letters() {
    assert!(BarWord::new(3, vec![3]).is_err());
    assert!(BarWord::new(1, vec![]).is_err());
}
